use std::collections::{HashMap, VecDeque};

use super::{GeomError, Geometry, GrasPoint, ProjectiveMap, Shape};
use crate::linalg::Matrix;
use crate::rings::Value;

/// A bijection of the enumerated points, by index.
pub type Perm = Vec<u32>;

const MAX_POINTS: usize = 4096;

/// All points of a finite geometry, in canonical enumeration order, with the
/// transversality relation precomputed.
#[derive(Debug, Clone)]
pub struct PointTable {
    geometry: Geometry,
    points: Vec<GrasPoint>,
    index: HashMap<GrasPoint, u32>,
    trans: Vec<bool>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Canonical bases of rank `k`: identity on the pivot rows, non-units above
/// each pivot, anything below.
fn enumerate_rank(g: &Geometry, k: usize, out: &mut Vec<GrasPoint>) -> Result<(), GeomError> {
    let r = g.ring();
    let n = g.dim();
    let all = r.elements().ok_or_else(|| GeomError::Unsupported(format!("enumeration over {r}")))?;
    let nonunits: Vec<Value> = all.iter().filter(|v| !r.is_unit(v)).cloned().collect();
    for pivots in combinations(n, k) {
        // free slots: (row, col, choices)
        let mut slots: Vec<(usize, usize, &Vec<Value>)> = vec![];
        for (c, &pr) in pivots.iter().enumerate() {
            for row in 0..n {
                if pivots.contains(&row) {
                    continue;
                }
                slots.push((row, c, if row < pr { &nonunits } else { &all }));
            }
        }
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut m = Matrix::zeros(r, n, k);
            for (c, &pr) in pivots.iter().enumerate() {
                m.set(pr, c, r.one());
            }
            for (s, &(row, c, ch)) in slots.iter().enumerate() {
                m.set(row, c, ch[digits[s]].clone());
            }
            out.push(g.point_from_basis_unchecked(m));
            if out.len() > MAX_POINTS {
                return Err(GeomError::Unsupported("geometry too large to enumerate".into()));
            }
            let mut done = true;
            for i in (0..slots.len()).rev() {
                digits[i] += 1;
                if digits[i] < slots[i].2.len() {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    Ok(())
}

impl PointTable {
    pub fn new(geometry: &Geometry) -> Result<PointTable, GeomError> {
        if !geometry.ring().is_finite() {
            return Err(GeomError::Unsupported(format!("exhaustive enumeration over {}", geometry.ring())));
        }
        let n = geometry.dim();
        let ranks: Vec<usize> = match geometry.shape() {
            Shape::Full => (0..=n).collect(),
            Shape::Types(p, q) if p == q => vec![p],
            Shape::Types(p, q) => vec![p, q],
            Shape::ProjectiveLine => vec![1],
        };
        let mut points = vec![];
        for k in ranks {
            enumerate_rank(geometry, k, &mut points)?;
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let m = points.len();
        let mut trans = vec![false; m * m];
        for i in 0..m {
            for j in i..m {
                let t = geometry.transversal(&points[i], &points[j]);
                trans[i * m + j] = t;
                trans[j * m + i] = t;
            }
        }
        Ok(PointTable { geometry: geometry.clone(), points, index, trans })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn point(&self, i: u32) -> &GrasPoint {
        &self.points[i as usize]
    }
    pub fn points(&self) -> &[GrasPoint] {
        &self.points
    }
    pub fn index(&self, p: &GrasPoint) -> Option<u32> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn t(&self, i: u32, j: u32) -> bool {
        self.trans[i as usize * self.points.len() + j as usize]
    }

    /// Indices transversal to `a`, i.e. the chart domain `U_a`.
    pub fn chart(&self, a: u32) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.t(x, a)).collect()
    }

    pub fn label(&self, i: u32) -> String {
        self.geometry.label(self.point(i))
    }

    /// Point token: `inf`, an affine coordinate, or `#i` for an index.
    pub fn parse_index(&self, s: &str) -> Result<u32, GeomError> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix('#') {
            let i: u32 = n.parse().map_err(|_| GeomError::Parse(s.into(), "bad index".into()))?;
            if (i as usize) < self.len() {
                return Ok(i);
            }
            return Err(GeomError::Parse(s.into(), "index out of range".into()));
        }
        let p = self.geometry.parse_point(s)?;
        self.index(&p).ok_or_else(|| GeomError::Parse(s.into(), "not a point of this geometry".into()))
    }

    pub fn perm(&self, g: &ProjectiveMap) -> Perm {
        self.points.iter().map(|p| self.index[&g.apply(p)]).collect()
    }

    pub fn j_perm(&self, x: u32, a: u32, z: u32) -> Option<Perm> {
        if !(self.t(x, a) && self.t(z, a)) {
            return None;
        }
        let g = self.geometry.j_map(self.point(x), self.point(a), self.point(z)).ok()?;
        Some(self.perm(&g))
    }

    pub fn m_perm(&self, x: u32, a: u32, z: u32, b: u32) -> Option<Perm> {
        if !(self.t(x, a) && self.t(a, z) && self.t(z, b) && self.t(b, x)) {
            return None;
        }
        let g = self.geometry.m_map(self.point(x), self.point(a), self.point(z), self.point(b)).ok()?;
        Some(self.perm(&g))
    }

    /// Connected components of the transversality graph, labelled in order
    /// of first appearance.
    pub fn components(&self) -> Vec<u32> {
        let m = self.len();
        let mut label = vec![u32::MAX; m];
        let mut next = 0;
        for s in 0..m {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = next;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for v in 0..m {
                    if label[v] == u32::MAX && self.t(u as u32, v as u32) {
                        label[v] = next;
                        q.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Two-colouring of the transversality graph, if it is bipartite.
    pub fn splitting(&self) -> Option<Vec<bool>> {
        bipartition(self.len(), |i, j| self.t(i as u32, j as u32))
    }

    /// Pairs `(x, a)` with `x ⊤ a`, in enumeration order.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let m = self.len() as u32;
        (0..m).flat_map(|x| (0..m).map(move |a| (x, a))).filter(|&(x, a)| self.t(x, a)).collect()
    }

    /// Breadth-first chain of pairs joining `src` to `dst`, composed of
    /// Λ-steps. Neighbours are visited in enumeration order.
    pub fn transporter(&self, src: (u32, u32), dst: (u32, u32)) -> Result<ProjectiveMap, GeomError> {
        if !self.t(src.0, src.1) || !self.t(dst.0, dst.1) {
            return Err(GeomError::Domain("transporter endpoints must be transversal pairs".into()));
        }
        let mut parent: HashMap<(u32, u32), (u32, u32)> = HashMap::new();
        parent.insert(src, src);
        let mut q = VecDeque::from([src]);
        let m = self.len() as u32;
        while let Some((x, a)) = q.pop_front() {
            if (x, a) == dst {
                break;
            }
            for y in (0..m).filter(|&y| self.t(y, a)) {
                for b in (0..m).filter(|&b| self.t(y, b)) {
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry((y, b)) {
                        e.insert((x, a));
                        q.push_back((y, b));
                    }
                }
            }
        }
        if !parent.contains_key(&dst) {
            return Err(GeomError::NoChain);
        }
        let mut path = vec![dst];
        while *path.last().unwrap() != src {
            path.push(parent[path.last().unwrap()]);
        }
        path.reverse();
        let g = &self.geometry;
        let mut acc = ProjectiveMap::identity(g.ring(), g.dim());
        for w in path.windows(2) {
            let (x, a) = w[0];
            let (y, b) = w[1];
            let step = g.transport_step((self.point(x), self.point(a)), (self.point(y), self.point(b)))?;
            acc = step.compose(&acc);
        }
        Ok(acc)
    }

    pub fn dissociation(&self) -> Dissociation {
        Dissociation { base: self.len(), trans: self.trans.clone() }
    }
}

fn bipartition(m: usize, adj: impl Fn(usize, usize) -> bool) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; m];
    for s in 0..m {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let cu = color[u].unwrap();
            for v in 0..m {
                if !adj(u, v) {
                    continue;
                }
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        q.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Two tagged copies `X⁺ ⊔ X⁻` of a geometry, transversal only across copies.
/// Index `i < n` is `(+, i)`, index `n + i` is `(−, i)`.
#[derive(Debug, Clone)]
pub struct Dissociation {
    base: usize,
    trans: Vec<bool>,
}

impl Dissociation {
    pub fn len(&self) -> usize {
        2 * self.base
    }
    pub fn is_empty(&self) -> bool {
        self.base == 0
    }
    pub fn t(&self, i: usize, j: usize) -> bool {
        let (si, bi) = (i >= self.base, i % self.base);
        let (sj, bj) = (j >= self.base, j % self.base);
        si != sj && self.trans[bi * self.base + bj]
    }
    pub fn splitting(&self) -> Option<Vec<bool>> {
        bipartition(self.len(), |i, j| self.t(i, j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> PointTable {
        PointTable::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn point_counts() {
        for (s, n) in [("projline:Fp:2", 3), ("projline:Fp:7", 8), ("gras:Fp:2:3", 16), ("gras:Fp:2:4", 67), ("gras:Fp:3:1+1", 4), ("projline:Weil:Fp:3[e^2]", 12)] {
            assert_eq!(table(s).len(), n, "{s}");
        }
    }

    #[test]
    fn enumeration_order_and_canonical_form() {
        let t = table("projline:Fp:5");
        let labels: Vec<String> = (0..6).map(|i| t.label(i)).collect();
        assert_eq!(labels, ["inf", "1", "3", "2", "4", "0"]);
        let t = table("gras:Fp:3:2");
        for p in t.points() {
            assert_eq!(p.basis().canonical_span().unwrap(), *p.basis());
        }
    }

    #[test]
    fn components_and_splittings() {
        let t = table("gras:Fp:2:1+2");
        assert_eq!(t.len(), 14);
        assert!(t.splitting().is_some());
        let line = table("projline:Fp:3");
        assert!(line.splitting().is_none());
        assert!(line.components().iter().all(|&c| c == 0));
        let d = line.dissociation();
        assert_eq!(d.len(), 8);
        assert!(d.splitting().is_some());
        let full = table("gras:Fp:2:3");
        let c = full.components();
        // {0, W} form their own component
        assert_eq!(c[0], c[15]);
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn transporter_maps_pairs() {
        let t = table("projline:Fp:3");
        let pairs = t.pairs();
        for &s in &pairs {
            for &d in &pairs {
                let g = t.transporter(s, d).unwrap();
                assert_eq!(t.index(&g.apply(t.point(s.0))), Some(d.0));
                assert_eq!(t.index(&g.apply(t.point(s.1))), Some(d.1));
            }
        }
        assert!(t.transporter(pairs[0], pairs[0]).unwrap().is_identity());
        let g = table("gras:Fp:2:1+2");
        let x = 0;
        let a = g.chart(x)[0];
        let y = a;
        let b = g.chart(y).into_iter().find(|&b| b != x).unwrap();
        assert!(matches!(g.transporter((x, a), (y, b)), Err(GeomError::NoChain)));
    }
}
