//! Grassmannian geometries.
//!
//! A point is a direct summand of `W = R^n`, stored by its canonical basis.
//! Structure maps are induced by operators on `W` built from projectors:
//! `P^a_x` has image `x` and kernel `a`.

mod finite;
pub mod projline;

use std::fmt;
use std::str::FromStr;

use crate::linalg::{LinalgError, Matrix};
use crate::rings::{Ring, RingKind, Value};

pub use finite::{Dissociation, Perm, PointTable};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("domain violation: {0}")]
    Domain(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("no transversal chain joins the two pairs")]
    NoChain,
    #[error("g(o) is not transversal to o'")]
    NotInBigCell,
    #[error("not a polarity: {0}")]
    NotPolarity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse `{0}`: {1}")]
    Parse(String, String),
}

fn dom(msg: &str) -> GeomError {
    GeomError::Domain(msg.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// All submodules.
    Full,
    /// Points of rank p or q, p + q = n.
    Types(usize, usize),
    /// Rank-one points of a rank-two module.
    ProjectiveLine,
}

/// Grassmannian of `ring^n`, possibly restricted to two complementary ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Geometry {
    ring: Ring,
    n: usize,
    shape: Shape,
}

/// A point: canonical basis matrix of a direct summand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrasPoint {
    basis: Matrix,
}

impl fmt::Debug for GrasPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

impl GrasPoint {
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
    pub fn ring(&self) -> &Ring {
        self.basis.ring()
    }
}

/// Invertible operator on `W`, modulo units.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveMap {
    mat: Matrix,
}

impl fmt::Debug for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PMap{}", self.mat)
    }
}

fn normalize(m: Matrix) -> Matrix {
    let r = m.ring().clone();
    if matches!(r.kind(), RingKind::Integers) {
        if let Some(v) = m.data().iter().find(|v| !r.is_zero(v)) {
            if let Value::Int(x) = v {
                if x < &num_bigint::BigInt::from(0) {
                    return m.neg();
                }
            }
        }
        return m;
    }
    match m.data().iter().find(|v| r.is_unit(v)) {
        Some(u) => {
            let inv = r.inv(u).unwrap();
            m.scale(&inv)
        }
        None => m,
    }
}

impl ProjectiveMap {
    /// Wraps an invertible matrix.
    pub fn new(m: Matrix) -> Result<ProjectiveMap, GeomError> {
        if !m.is_invertible() {
            return Err(GeomError::Linalg(LinalgError::NotInvertible));
        }
        Ok(ProjectiveMap { mat: normalize(m) })
    }

    pub(crate) fn new_unchecked(m: Matrix) -> ProjectiveMap {
        ProjectiveMap { mat: normalize(m) }
    }

    pub fn identity(ring: &Ring, n: usize) -> ProjectiveMap {
        ProjectiveMap { mat: Matrix::identity(ring, n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjectiveMap) -> ProjectiveMap {
        ProjectiveMap::new_unchecked(self.mat.mul(&other.mat))
    }

    pub fn inverse(&self) -> ProjectiveMap {
        ProjectiveMap::new_unchecked(self.mat.invert().expect("projective map is invertible"))
    }

    pub fn pow(&self, e: i64) -> ProjectiveMap {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let n = self.mat.rows();
        let mut acc = ProjectiveMap::identity(self.mat.ring(), n);
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.mat == Matrix::identity(self.mat.ring(), self.mat.rows())
    }

    pub fn apply(&self, p: &GrasPoint) -> GrasPoint {
        GrasPoint { basis: self.mat.mul(&p.basis).canonical_span().expect("invertible image of a summand") }
    }
}

/// Image of a point under an arbitrary operator; fails if the image is not a
/// summand of the same rank.
pub fn apply_operator(op: &Matrix, p: &GrasPoint) -> Result<GrasPoint, GeomError> {
    let img = op.mul(&p.basis).canonical_span()?;
    if img.cols() != p.rank() {
        return Err(dom("operator drops rank on this point"));
    }
    Ok(GrasPoint { basis: img })
}

impl Geometry {
    pub fn new(ring: Ring, n: usize, shape: Shape) -> Result<Geometry, GeomError> {
        if n < 2 {
            return Err(dom("ambient rank must be at least 2"));
        }
        if let Shape::Types(p, q) = shape {
            if p + q != n {
                return Err(dom("type restriction needs p + q = n"));
            }
        }
        if let Shape::ProjectiveLine = shape {
            if n != 2 {
                return Err(dom("projective line lives in rank 2"));
            }
        }
        if !(ring.is_local_over_field() || matches!(ring.kind(), RingKind::Integers)) {
            return Err(GeomError::Unsupported(format!("Grassmannians over {ring}")));
        }
        Ok(Geometry { ring, n, shape })
    }

    pub fn full(ring: Ring, n: usize) -> Result<Geometry, GeomError> {
        Geometry::new(ring, n, Shape::Full)
    }

    pub fn types(ring: Ring, p: usize, q: usize) -> Result<Geometry, GeomError> {
        Geometry::new(ring, p + q, Shape::Types(p, q))
    }

    pub fn projective_line(ring: Ring) -> Result<Geometry, GeomError> {
        Geometry::new(ring, 2, Shape::ProjectiveLine)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn allows_rank(&self, k: usize) -> bool {
        match self.shape {
            Shape::Full => k <= self.n,
            Shape::Types(p, q) => k == p || k == q,
            Shape::ProjectiveLine => k == 1,
        }
    }

    /// The same construction over another ring (used for scalar extension).
    pub fn over(&self, ring: Ring) -> Result<Geometry, GeomError> {
        Geometry::new(ring, self.n, self.shape)
    }

    /// Point spanned by the columns of `m`.
    pub fn point(&self, m: &Matrix) -> Result<GrasPoint, GeomError> {
        if m.ring() != &self.ring || m.rows() != self.n {
            return Err(dom("basis matrix does not belong to this geometry"));
        }
        let basis = m.canonical_span()?;
        if !self.allows_rank(basis.cols()) {
            return Err(dom(&format!("rank {} is not part of this geometry", basis.cols())));
        }
        Ok(GrasPoint { basis })
    }

    /// Point spanned by the given column vectors, entries as integers.
    pub fn point_i64(&self, cols: &[&[i64]]) -> Result<GrasPoint, GeomError> {
        let cols: Vec<Vec<Value>> = cols.iter().map(|c| c.iter().map(|&v| self.ring.from_i64(v)).collect()).collect();
        self.point(&Matrix::from_columns(&self.ring, self.n, &cols))
    }

    pub fn zero_point(&self) -> GrasPoint {
        GrasPoint { basis: Matrix::zeros(&self.ring, self.n, 0) }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate_point(&self, idx: &[usize]) -> Result<GrasPoint, GeomError> {
        let cols: Vec<Vec<Value>> = idx
            .iter()
            .map(|&i| (0..self.n).map(|r| if r == i { self.ring.one() } else { self.ring.zero() }).collect())
            .collect();
        self.point(&Matrix::from_columns(&self.ring, self.n, &cols))
    }

    // ---- projective line charts ----

    /// `[y:1]` on the projective line.
    pub fn affine(&self, y: &Value) -> GrasPoint {
        self.point(&Matrix::column_vector(&self.ring, vec![y.clone(), self.ring.one()])).expect("affine point")
    }

    /// `[1:0]`.
    pub fn infinity(&self) -> GrasPoint {
        self.point(&Matrix::column_vector(&self.ring, vec![self.ring.one(), self.ring.zero()])).expect("point at infinity")
    }

    /// Affine coordinate `u/v` of `[u:v]`, if `v` is a unit.
    pub fn affine_coord(&self, p: &GrasPoint) -> Option<Value> {
        if self.n != 2 || p.rank() != 1 {
            return None;
        }
        let (u, v) = (p.basis.get(0, 0), p.basis.get(1, 0));
        self.ring.div(u, v)
    }

    /// Parses `inf` or an affine coordinate on a projective line, or a basis
    /// matrix `[a, b; c, d; ...]` with one row per ambient coordinate.
    pub fn parse_point(&self, s: &str) -> Result<GrasPoint, GeomError> {
        let s = s.trim();
        if s.starts_with('[') {
            let m = Matrix::parse_text(&self.ring, s).map_err(|e| GeomError::Parse(s.into(), e.to_string()))?;
            if m.rows() != self.n {
                return Err(GeomError::Parse(s.into(), format!("basis needs {} rows", self.n)));
            }
            return self.point(&m);
        }
        if self.n == 2 && s == "inf" {
            return Ok(self.infinity());
        }
        if self.n == 2 {
            let v = self.ring.parse_element(s).map_err(|e| GeomError::Parse(s.into(), e.to_string()))?;
            return Ok(self.affine(&v));
        }
        Err(GeomError::Parse(s.into(), "points of higher Grassmannians are given as basis matrices".into()))
    }

    /// Short human label: affine coordinate / `inf` on lines, basis otherwise.
    pub fn label(&self, p: &GrasPoint) -> String {
        if self.n == 2 && p.rank() == 1 {
            if let Some(y) = self.affine_coord(p) {
                return self.ring.format(&y);
            }
            if p.basis == self.infinity().basis {
                return "inf".into();
            }
        }
        format!("{}", p.basis)
    }

    // ---- transversality and projectors ----

    pub fn transversal(&self, x: &GrasPoint, a: &GrasPoint) -> bool {
        x.rank() + a.rank() == self.n && x.basis.hcat(&a.basis).is_invertible()
    }

    /// `P^a_x`: projector with image `x` and kernel `a`.
    pub fn projector(&self, x: &GrasPoint, a: &GrasPoint) -> Result<Matrix, GeomError> {
        if x.rank() + a.rank() != self.n {
            return Err(dom("projector needs complementary ranks"));
        }
        let b = x.basis.hcat(&a.basis);
        let binv = b.invert().map_err(|_| dom("projector needs x ⊤ a"))?;
        let k = x.rank();
        Ok(x.basis.mul(&binv.submatrix(0, k, 0, self.n)))
    }

    /// `P^a_x − P^z_a`, the operator of `J^{xz}_a`.
    pub fn j_operator(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint) -> Result<Matrix, GeomError> {
        if !self.transversal(x, a) || !self.transversal(z, a) {
            return Err(dom("J^{xz}_a needs x ⊤ a and z ⊤ a"));
        }
        Ok(self.projector(x, a)?.sub(&self.projector(a, z)?))
    }

    pub fn j_map(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        Ok(ProjectiveMap::new_unchecked(self.j_operator(x, a, z)?))
    }

    /// `J^{xz}_a(y)`.
    pub fn j(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint, y: &GrasPoint) -> Result<GrasPoint, GeomError> {
        Ok(self.j_map(x, a, z)?.apply(y))
    }

    /// `P^a_x − P^z_b`, the operator of `M^{xz}_{ab}`.
    pub fn m_operator(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint, b: &GrasPoint) -> Result<Matrix, GeomError> {
        if !(self.transversal(x, a) && self.transversal(a, z) && self.transversal(z, b) && self.transversal(b, x)) {
            return Err(dom("M^{xz}_{ab} needs a closed chain x ⊤ a ⊤ z ⊤ b ⊤ x"));
        }
        Ok(self.projector(x, a)?.sub(&self.projector(b, z)?))
    }

    /// `M^{xz}_{ab}` (upper pair `x,z`, lower pair `a,b`).
    pub fn m_map(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint, b: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        Ok(ProjectiveMap::new_unchecked(self.m_operator(x, a, z, b)?))
    }

    /// `P^a_y + r P^y_a`, the operator of the dilation `r^a_y`.
    pub fn scale_operator(&self, r: &Value, y: &GrasPoint, a: &GrasPoint) -> Result<Matrix, GeomError> {
        if !self.transversal(y, a) {
            return Err(dom("scaling needs y ⊤ a"));
        }
        Ok(self.projector(y, a)?.add(&self.projector(a, y)?.scale(r)))
    }

    /// `r^a_y(x)`; for non-invertible `r` the argument must lie in `U_a`.
    pub fn scale(&self, r: &Value, y: &GrasPoint, a: &GrasPoint, x: &GrasPoint) -> Result<GrasPoint, GeomError> {
        let op = self.scale_operator(r, y, a)?;
        if !self.ring.is_unit(r) && !self.transversal(x, a) {
            return Err(dom("scaling by a non-unit needs x ⊤ a"));
        }
        apply_operator(&op, x)
    }

    pub fn scale_map(&self, r: &Value, y: &GrasPoint, a: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        if !self.ring.is_unit(r) {
            return Err(dom("global scaling needs an invertible scalar"));
        }
        Ok(ProjectiveMap::new_unchecked(self.scale_operator(r, y, a)?))
    }

    /// Translation `L_a^{xz} = J_a^{xu} J_a^{uz}`, computed with `u = x` and
    /// checked against `u = z`.
    pub fn translation(&self, a: &GrasPoint, x: &GrasPoint, z: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        let via_x = self.j_map(x, a, x)?.compose(&self.j_map(x, a, z)?);
        let via_z = self.j_map(x, a, z)?.compose(&self.j_map(z, a, z)?);
        if via_x != via_z {
            return Err(dom("translation depends on the auxiliary point"));
        }
        Ok(via_x)
    }

    /// `J_a^{xu} J_a^{uz}` for an explicit auxiliary point.
    pub fn translation_via(&self, a: &GrasPoint, x: &GrasPoint, u: &GrasPoint, z: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        Ok(self.j_map(x, a, u)?.compose(&self.j_map(u, a, z)?))
    }

    /// `Λ = L^{ba}_y ∘ L^{yx}_a`, sending `(x,a)` to `(y,b)`; needs `y ⊤ a`.
    pub fn transport_step(&self, src: (&GrasPoint, &GrasPoint), dst: (&GrasPoint, &GrasPoint)) -> Result<ProjectiveMap, GeomError> {
        let (x, a) = src;
        let (y, b) = dst;
        Ok(self.translation(y, b, a)?.compose(&self.translation(a, y, x)?))
    }

    /// Bergman operator `B^{xa}_{yb} = L^{ab}_x L^{xy}_b L^{ba}_y L^{yx}_a`.
    pub fn bergman(&self, x: &GrasPoint, a: &GrasPoint, y: &GrasPoint, b: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        if !(self.transversal(a, x) && self.transversal(x, b) && self.transversal(b, y) && self.transversal(y, a)) {
            return Err(dom("Bergman operator needs a closed chain a ⊤ x ⊤ b ⊤ y ⊤ a"));
        }
        Ok(self
            .translation(x, a, b)?
            .compose(&self.translation(b, x, y)?)
            .compose(&self.translation(y, b, a)?)
            .compose(&self.translation(a, y, x)?))
    }

    /// Same operator written with inversions: `J^{ab}_x J^{xy}_b J^{ba}_y J^{yx}_a`.
    pub fn bergman_j(&self, x: &GrasPoint, a: &GrasPoint, y: &GrasPoint, b: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        Ok(self
            .j_map(a, x, b)?
            .compose(&self.j_map(x, b, y)?)
            .compose(&self.j_map(b, y, a)?)
            .compose(&self.j_map(y, a, x)?))
    }

    /// Denominator `D(g) = L_{o'}^{o,g(o)} ∘ g ∘ L_o^{g^{-1}(o'),o'}`.
    pub fn denominator(&self, g: &ProjectiveMap, o: &GrasPoint, o2: &GrasPoint) -> Result<ProjectiveMap, GeomError> {
        let go = g.apply(o);
        if !self.transversal(&go, o2) {
            return Err(GeomError::NotInBigCell);
        }
        let gi = g.inverse().apply(o2);
        Ok(self.translation(o2, o, &go)?.compose(g).compose(&self.translation(o, &gi, o2)?))
    }

    /// Triple decomposition `g = L_{o'}^{t,o} h L_o^{t',o'}` with `h = D(g)`.
    /// `t'` is the negative of `g^{-1}(o')` in the module `(U_o, o')`.
    pub fn triple_decomposition(
        &self,
        g: &ProjectiveMap,
        o: &GrasPoint,
        o2: &GrasPoint,
    ) -> Result<(GrasPoint, ProjectiveMap, GrasPoint), GeomError> {
        let h = self.denominator(g, o, o2)?;
        let t = g.apply(o);
        let minus_one = self.ring.from_i64(-1);
        let t2 = self.scale(&minus_one, o2, o, &g.inverse().apply(o2))?;
        let rebuilt = self.translation(o2, &t, o)?.compose(&h).compose(&self.translation(o, &t2, o2)?);
        if rebuilt != *g || h.apply(o) != *o || h.apply(o2) != *o2 {
            return Err(dom("triple decomposition failed to reassemble"));
        }
        Ok((t, h, t2))
    }

    /// Orthogonal complement with respect to the standard bilinear form.
    pub fn orthogonal(&self, x: &GrasPoint) -> Result<GrasPoint, GeomError> {
        let t = x.basis.transpose();
        // kernel of t: solve via complement construction over fields/local rings
        let k = x.rank();
        let n = self.n;
        if k == 0 {
            return self.point(&Matrix::identity(&self.ring, n));
        }
        // pick a complement c of x among coordinate subspaces, then the kernel
        // of t is the column span of [ -T_x^{-1} T_c ; I ] in suitably ordered coordinates
        let mut cols = vec![];
        for j in 0..n {
            let mut e = vec![self.ring.zero(); n];
            e[j] = self.ring.one();
            cols.push(e);
        }
        let mut kernel = vec![];
        let square = self.find_invertible_columns(&t, k)?;
        let sq: Vec<Vec<Value>> = square.iter().map(|&j| t.column(j)).collect();
        let tsq = Matrix::from_columns(&self.ring, k, &sq);
        let tinv = tsq.invert()?;
        for j in (0..n).filter(|j| !square.contains(j)) {
            let rhs = tinv.mul(&Matrix::column_vector(&self.ring, t.column(j)));
            let mut v = cols[j].clone();
            for (i, &s) in square.iter().enumerate() {
                v[s] = self.ring.neg(rhs.get(i, 0));
            }
            kernel.push(v);
        }
        self.point(&Matrix::from_columns(&self.ring, n, &kernel))
    }

    fn find_invertible_columns(&self, t: &Matrix, k: usize) -> Result<Vec<usize>, GeomError> {
        let n = t.cols();
        let mut chosen: Vec<usize> = vec![];
        fn rec(t: &Matrix, k: usize, start: usize, chosen: &mut Vec<usize>, ring: &Ring) -> bool {
            if chosen.len() == k {
                let cols: Vec<Vec<Value>> = chosen.iter().map(|&j| t.column(j)).collect();
                return Matrix::from_columns(ring, k, &cols).is_invertible();
            }
            for j in start..t.cols() {
                chosen.push(j);
                if rec(t, k, j + 1, chosen, ring) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        if rec(t, k, 0, &mut chosen, &self.ring) && chosen.len() == k && k <= n {
            Ok(chosen)
        } else {
            Err(dom("no invertible coordinate minor"))
        }
    }

    // ---- scalar extension ----

    /// Lift of a point along the canonical map from the base ring.
    pub fn lift(&self, p: &GrasPoint, src: &Ring) -> Result<GrasPoint, GeomError> {
        let m = p.basis.map(&self.ring, |v| self.ring.coerce(src, v).expect("coercible"));
        self.point(&m)
    }

    /// Entrywise base part of a point of a Weil-extended geometry.
    pub fn project_point(&self, p: &GrasPoint, base: &Geometry) -> Result<GrasPoint, GeomError> {
        let m = p.basis.map(&base.ring, |v| self.ring.project(v));
        base.point(&m)
    }

    pub fn project_map(&self, g: &ProjectiveMap, base: &Geometry) -> Result<ProjectiveMap, GeomError> {
        let m = g.mat.map(&base.ring, |v| self.ring.project(v));
        ProjectiveMap::new(m)
    }

    pub fn lift_map(&self, g: &ProjectiveMap, src: &Ring) -> ProjectiveMap {
        ProjectiveMap::new_unchecked(g.mat.map(&self.ring, |v| self.ring.coerce(src, v).expect("coercible")))
    }

    /// Random point of rank `k` with small entries (resampled until a summand).
    pub fn random_point<R: rand::Rng + ?Sized>(&self, rng: &mut R, k: usize) -> GrasPoint {
        loop {
            let data = (0..self.n * k).map(|_| self.ring.random(rng, 2)).collect();
            let m = Matrix::from_values(&self.ring, self.n, k, data);
            if let Ok(b) = m.canonical_span() {
                if b.cols() == k {
                    return GrasPoint { basis: b };
                }
            }
        }
    }

    /// Random point of an allowed rank.
    pub fn random_any<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> GrasPoint {
        let ranks: Vec<usize> = (0..=self.n).filter(|&k| self.allows_rank(k)).collect();
        let k = ranks[rng.gen_range(0..ranks.len())];
        self.random_point(rng, k)
    }

    pub fn point_from_basis_unchecked(&self, basis: Matrix) -> GrasPoint {
        GrasPoint { basis }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Full => write!(f, "gras:{}:{}", self.ring, self.n),
            Shape::Types(p, q) => write!(f, "gras:{}:{}+{}", self.ring, p, q),
            Shape::ProjectiveLine => write!(f, "projline:{}", self.ring),
        }
    }
}

impl FromStr for Geometry {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Geometry, GeomError> {
        let perr = |why: &str| GeomError::Parse(s.to_string(), why.to_string());
        if let Some(r) = s.strip_prefix("projline:") {
            let ring: Ring = r.parse().map_err(|e: crate::rings::RingError| perr(&e.to_string()))?;
            return Geometry::projective_line(ring);
        }
        if let Some(rest) = s.strip_prefix("gras:") {
            let (r, dims) = rest.rsplit_once(':').ok_or_else(|| perr("expected gras:<ring>:<dims>"))?;
            let ring: Ring = r.parse().map_err(|e: crate::rings::RingError| perr(&e.to_string()))?;
            if let Some((p, q)) = dims.split_once('+') {
                let p: usize = p.parse().map_err(|_| perr("bad rank"))?;
                let q: usize = q.parse().map_err(|_| perr("bad rank"))?;
                return Geometry::types(ring, p, q);
            }
            let n: usize = dims.parse().map_err(|_| perr("bad rank"))?;
            return Geometry::full(ring, n);
        }
        Err(perr("unknown geometry"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(s: &str) -> Geometry {
        format!("projline:{s}").parse().unwrap()
    }

    fn q(g: &Geometry, s: &str) -> GrasPoint {
        g.parse_point(s).unwrap()
    }

    #[test]
    fn parse_geometries() {
        for s in ["projline:Fp:5", "gras:Q:1+2", "gras:Fp:2:3", "gras:Weil:Q[e^2]:1+1"] {
            assert_eq!(s.parse::<Geometry>().unwrap().to_string(), s);
        }
        assert!("gras:Q:1+3".parse::<Geometry>().is_ok());
        assert!("gras:Zn:6:2".parse::<Geometry>().is_err());
    }

    #[test]
    fn transversality_basics() {
        let g = line("Q");
        let (inf, zero) = (g.infinity(), q(&g, "0"));
        assert!(g.transversal(&inf, &zero));
        assert!(!g.transversal(&inf, &inf));
        let f2: Geometry = "gras:Fp:2:3".parse().unwrap();
        let x = f2.point_i64(&[&[1, 0, 0]]).unwrap();
        let a = f2.point_i64(&[&[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(f2.transversal(&x, &a));
    }

    #[test]
    fn projectors() {
        let g = line("Q");
        let p = g.projector(&g.infinity(), &q(&g, "0")).unwrap();
        assert_eq!(p, Matrix::from_i64(g.ring(), &[&[1, 0], &[0, 0]]));
        let x = g.point_i64(&[&[1, 1]]).unwrap();
        let a = g.point_i64(&[&[0, 1]]).unwrap();
        assert_eq!(g.projector(&x, &a).unwrap(), Matrix::from_i64(g.ring(), &[&[1, 0], &[1, 0]]));
    }

    #[test]
    fn line_formulas() {
        let g = line("Q");
        let inf = g.infinity();
        assert_eq!(g.j(&q(&g, "1"), &inf, &q(&g, "5"), &q(&g, "2")).unwrap(), q(&g, "4"));
        assert_eq!(g.j(&q(&g, "0"), &q(&g, "2"), &inf, &q(&g, "4")).unwrap(), q(&g, "1"));
        assert_eq!(g.m_map(&q(&g, "0"), &q(&g, "2"), &inf, &q(&g, "3")).unwrap().apply(&q(&g, "6")), q(&g, "1"));
        assert_eq!(g.m_map(&q(&g, "1"), &inf, &q(&g, "3"), &q(&g, "2")).unwrap().apply(&q(&g, "4")), q(&g, "3/2"));
        assert_eq!(g.j(&q(&g, "1"), &q(&g, "2"), &q(&g, "3"), &q(&g, "0")).unwrap(), q(&g, "4"));
        let m1 = g.ring().from_i64(-1);
        assert_eq!(g.scale(&m1, &q(&g, "0"), &inf, &q(&g, "3")).unwrap(), q(&g, "-3"));
        let f5 = line("Fp:5");
        let two = f5.ring().from_i64(2);
        assert_eq!(f5.scale(&two, &q(&f5, "0"), &f5.infinity(), &q(&f5, "3")).unwrap(), q(&f5, "1"));
        let zero = f5.ring().zero();
        assert_eq!(f5.scale(&zero, &q(&f5, "0"), &f5.infinity(), &q(&f5, "3")).unwrap(), q(&f5, "0"));
    }

    #[test]
    fn translations_and_bergman() {
        let g = line("Q");
        let inf = g.infinity();
        let l = g.translation(&inf, &q(&g, "5"), &q(&g, "1")).unwrap();
        assert_eq!(l.apply(&q(&g, "2")), q(&g, "6"));
        assert!(g.translation(&inf, &q(&g, "3"), &q(&g, "3")).unwrap().is_identity());
        let (x, a) = (q(&g, "1"), q(&g, "3"));
        assert!(g.bergman(&x, &a, &x, &a).unwrap().is_identity());
        let (y, b) = (q(&g, "7"), q(&g, "-2"));
        let bb = g.bergman(&x, &a, &y, &b).unwrap();
        assert_eq!(bb, g.bergman_j(&x, &a, &y, &b).unwrap());
        assert_eq!(bb.inverse(), g.bergman(&a, &x, &b, &y).unwrap());
        assert_eq!(bb.apply(&x), x);
        assert_eq!(bb.apply(&a), a);
    }

    #[test]
    fn triple_decomposition_of_translations() {
        let g = line("Fp:7");
        let (o, o2) = (q(&g, "0"), g.infinity());
        let id = ProjectiveMap::identity(g.ring(), 2);
        let (t, h, t2) = g.triple_decomposition(&id, &o, &o2).unwrap();
        assert_eq!((t, h.is_identity(), t2), (o.clone(), true, o2.clone()));
        let v = q(&g, "3");
        let l = g.translation(&o2, &v, &o).unwrap();
        let (t, h, t2) = g.triple_decomposition(&l, &o, &o2).unwrap();
        assert_eq!((t, h.is_identity(), t2), (v, true, o2.clone()));
        let bad = g.j_map(&o2, &q(&g, "1"), &o).unwrap();
        assert_eq!(g.triple_decomposition(&bad, &o, &o2), Err(GeomError::NotInBigCell));
    }

    #[test]
    fn integer_points() {
        let g: Geometry = "projline:Z".parse().unwrap();
        let x = g.point_i64(&[&[2, 3]]).unwrap();
        let a = g.point_i64(&[&[1, 1]]).unwrap();
        assert!(g.transversal(&x, &a));
        assert!(!g.transversal(&x, &g.point_i64(&[&[0, 1]]).unwrap()));
        assert!(g.point_i64(&[&[2, 4]]).is_err());
        let p = g.projector(&x, &a).unwrap();
        assert_eq!(p.mul(&p), p);
    }
}
