//! Jordan and associative algebras attached to a transversal triple
//! `(o, o', e)`, and the Jordan triple system of a polarity.

use rand_chacha::ChaCha8Rng;

use super::chart::{extract_pair, BasePair};
use super::pair::{self, add, apply, check_pair_identities, format_vector, random_vector, PairMode, QuadraticJordanPair, Sign, Vector};
use super::TangentError;
use crate::geometry::{Geometry, GrasPoint, ProjectiveMap};
use crate::linalg::Matrix;
use crate::report::{witness, CheckRecord, Mode, Status};
use crate::rings::{Ring, Value};
use crate::sweep;

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

fn closed_triple(g: &Geometry, o: &GrasPoint, o2: &GrasPoint, e: &GrasPoint) -> Result<BasePair, TangentError> {
    if !(g.transversal(o, o2) && g.transversal(e, o) && g.transversal(e, o2)) {
        return Err(TangentError::Domain("triple (o, o', e) is not pairwise transversal".into()));
    }
    BasePair::new(g, o, o2)
}

fn all_vectors(r: &Ring, n: usize, cap: usize) -> Option<Vec<Vector>> {
    let els = r.elements()?;
    if (els.len() as f64).powi(n as i32) > cap as f64 {
        return None;
    }
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vector| els.iter().map(move |c| [v.clone(), vec![c.clone()]].concat())).collect();
    }
    Some(out)
}

/// Quadratic Jordan algebra on `V = U_{o'}` with `U_x = Q(x)Q(e)^{-1}` and
/// unit `e`.
#[derive(Debug, Clone)]
pub struct JordanAlgebra {
    base: BasePair,
    pair: QuadraticJordanPair,
    e: Vector,
    e_minus: Vector,
    qe_inv: Matrix,
}

pub fn jordan_algebra_from_triple(g: &Geometry, o: &GrasPoint, o2: &GrasPoint, e: &GrasPoint) -> Result<JordanAlgebra, TangentError> {
    let base = closed_triple(g, o, o2, e)?;
    let pair = extract_pair(&base)?;
    let coord = |s| base.coord(s, e).ok_or_else(|| TangentError::Domain("e outside the charts".into()));
    let (ev, em) = (coord(P)?, coord(M)?);
    let qe_inv = pair.q_op(P, &ev).invert().map_err(|_| TangentError::Domain("Q(e) is not invertible".into()))?;
    Ok(JordanAlgebra { base, pair, e: ev, e_minus: em, qe_inv })
}

impl JordanAlgebra {
    pub fn base(&self) -> &BasePair {
        &self.base
    }
    pub fn pair(&self) -> &QuadraticJordanPair {
        &self.pair
    }
    pub fn unit(&self) -> &Vector {
        &self.e
    }
    pub fn dim(&self) -> usize {
        self.e.len()
    }

    pub fn u_op(&self, x: &[Value]) -> Matrix {
        self.pair.q_op(P, x).mul(&self.qe_inv)
    }

    pub fn u(&self, x: &[Value], y: &[Value]) -> Vector {
        apply(&self.u_op(x), y)
    }

    /// `j(y) = Q(e)Q(y)^{-1}Q(e')y`, where `e'` is `e` read in `V^-`.
    pub fn inverse(&self, y: &[Value]) -> Option<Vector> {
        let qy_inv = self.pair.q_op(P, y).invert().ok()?;
        let t = self.pair.q(M, &self.e_minus, y);
        Some(self.pair.q(P, &self.e, &apply(&qy_inv, &t)))
    }

    pub fn is_invertible(&self, x: &[Value]) -> bool {
        self.u_op(x).is_invertible()
    }

    /// `J^{oo'}_e(y)` in the chart.
    pub fn geometric_inverse(&self, y: &[Value]) -> Option<Vector> {
        let b = &self.base;
        let j = b.geometry().j_map(b.o(), &b.point(P, &self.e), b.o2()).ok()?;
        b.coord(P, &j.apply(&b.point(P, y)))
    }

    /// Linear part of `Q_x = J^{oo'}_x J^{oo'}_e` on `V^+`.
    pub fn geometric_u(&self, x: &[Value]) -> Option<Matrix> {
        let b = &self.base;
        let g = b.geometry();
        let q = g.j_map(b.o(), &b.point(P, x), b.o2()).ok()?.compose(&g.j_map(b.o(), &b.point(P, &self.e), b.o2()).ok()?);
        b.linear_part(P, &q)
    }

    pub fn checks(&self, samples: u64, seed: u64) -> Vec<CheckRecord> {
        let r = self.pair.ring().clone();
        let n = self.dim();
        let fv = |v: &[Value]| format_vector(&r, v);
        let mut out = vec![CheckRecord::fact("unit", "U_e = id", self.u_op(&self.e) == Matrix::identity(&r, n), || {
            witness([("e", fv(&self.e))])
        })];
        out.push(sweep::random(
            "fundamental formula",
            "U_{U_x y} = U_x U_y U_x",
            samples,
            seed,
            &mut |rng| Some((random_vector(&r, rng, n), random_vector(&r, rng, n))),
            &|(x, y)| self.u_op(&self.u(x, y)) == self.u_op(x).mul(&self.u_op(y)).mul(&self.u_op(x)),
            &|(x, y)| witness([("x", fv(x)), ("y", fv(y))]),
        ));
        let invertible = |rng: &mut ChaCha8Rng| {
            let y = random_vector(&r, rng, n);
            self.is_invertible(&y).then_some(y)
        };
        out.push(sweep::random(
            "inverse",
            "j(y) = Q(e)Q(y)^{-1}Q(e)y = J^{oo'}_e(y), U_y j(y) = y",
            samples,
            seed,
            &mut |rng| invertible(rng),
            &|y| match (self.inverse(y), self.geometric_inverse(y)) {
                (Some(a), Some(g)) => a == g && self.u(y, &a) == *y,
                _ => false,
            },
            &|y| witness([("y", fv(y))]),
        ));
        out.push(sweep::random(
            "quadratic representation",
            "Q_x = J^{oo'}_x J^{oo'}_e equals U_x on V^x",
            samples,
            seed,
            &mut |rng| invertible(rng),
            &|x| self.geometric_u(x).is_some_and(|m| m == self.u_op(x)),
            &|x| witness([("x", fv(x))]),
        ));
        let b = &self.base;
        let same = |x: &Vector| self.is_invertible(x) == b.geometry().transversal(&b.point(P, x), b.o());
        let formula = "U_x invertible <=> x ∈ U_{oo'}";
        out.push(match all_vectors(&r, n, 1 << 12) {
            Some(xs) => {
                let mut rec = CheckRecord::new("invertible elements", formula, Mode::Exhaustive);
                for x in &xs {
                    rec.cases += 1;
                    if !same(x) {
                        rec = rec.fail_with(witness([("x", fv(x))]));
                        break;
                    }
                }
                rec
            }
            None => sweep::random(
                "invertible elements",
                formula,
                samples,
                seed,
                &mut |rng| Some(random_vector(&r, rng, n)),
                &same,
                &|x| witness([("x", fv(x))]),
            ),
        });
        out
    }
}

/// Bilinear product on `V = U_{o'}` read off from the group law
/// `m(x,z) = M^{o'o}_{xz}(e)` in the extension by `ε_1, ε_2`.
#[derive(Debug, Clone)]
pub struct AssociativeAlgebra {
    base: BasePair,
    e: Vector,
    table: Vec<Vec<Vector>>,
}

pub fn associative_algebra_from_triple(g: &Geometry, o: &GrasPoint, o2: &GrasPoint, e: &GrasPoint) -> Result<AssociativeAlgebra, TangentError> {
    let base = closed_triple(g, o, o2, e)?;
    let r = g.ring().clone();
    let ev = base.coord(P, e).ok_or_else(|| TangentError::Domain("e outside the chart".into()))?;
    let n = ev.len();
    let mut alg = AssociativeAlgebra { base, e: ev, table: vec![] };
    let tt = r.weil_extend(&[("e1", 1), ("e2", 1)])?;
    let tb = alg.base.over(&tt)?;
    for i in 0..n {
        let mut row = vec![];
        for j in 0..n {
            row.push(alg.tangent_product(&tt, &tb, &pair::unit(&r, n, i), &pair::unit(&r, n, j))?);
        }
        alg.table.push(row);
    }
    Ok(alg)
}

impl AssociativeAlgebra {
    pub fn base(&self) -> &BasePair {
        &self.base
    }
    pub fn unit(&self) -> &Vector {
        &self.e
    }
    pub fn dim(&self) -> usize {
        self.e.len()
    }
    /// `e_i e_j` for the unit vectors of the chart.
    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    fn ring(&self) -> &Ring {
        self.base.ring()
    }

    /// `ε_1ε_2`-part of `m(e + ε_1u, e + ε_2v)`.
    fn tangent_product(&self, tt: &Ring, tb: &BasePair, u: &[Value], v: &[Value]) -> Result<Vector, TangentError> {
        let r = self.ring();
        let lift = |w: &[Value], k: Option<usize>| -> Vector {
            w.iter()
                .map(|c| {
                    let c = tt.coerce(r, c).expect("coerce");
                    k.map_or(c.clone(), |k| tt.mul(&tt.generator(k), &c))
                })
                .collect()
        };
        let e = lift(&self.e, None);
        let x = tb.point(P, &add(tt, &e, &lift(u, Some(0))));
        let z = tb.point(P, &add(tt, &e, &lift(v, Some(1))));
        let m = tb.geometry().m_map(tb.o2(), &x, tb.o(), &z)?;
        let c = tb.coord(P, &m.apply(&tb.point(P, &e))).ok_or_else(|| TangentError::Domain("product left the chart".into()))?;
        Ok(c.iter().map(|w| tt.coefficient(w, &[1, 1])).collect())
    }

    /// Product in the tangent extension, without the table.
    pub fn direct_product(&self, u: &[Value], v: &[Value]) -> Result<Vector, TangentError> {
        let tt = self.ring().weil_extend(&[("e1", 1), ("e2", 1)])?;
        let tb = self.base.over(&tt)?;
        self.tangent_product(&tt, &tb, u, v)
    }

    pub fn mul(&self, u: &[Value], v: &[Value]) -> Vector {
        let r = self.ring();
        let n = self.dim();
        let mut out = vec![r.zero(); n];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let c = r.mul(ui, vj);
                if !r.is_zero(&c) {
                    out = add(r, &out, &pair::scale(r, &c, &self.table[i][j]));
                }
            }
        }
        out
    }

    fn group(&self, x: &[Value], z: &[Value], opposite: bool) -> Option<Vector> {
        let b = &self.base;
        let (xp, zp) = (b.point(P, x), b.point(P, z));
        let m = if opposite { b.geometry().m_map(b.o(), &xp, b.o2(), &zp) } else { b.geometry().m_map(b.o2(), &xp, b.o(), &zp) };
        b.coord(P, &m.ok()?.apply(&b.point(P, &self.e)))
    }

    pub fn checks(&self, samples: u64, seed: u64) -> Vec<CheckRecord> {
        let r = self.ring().clone();
        let n = self.dim();
        let fv = |v: &[Value]| format_vector(&r, v);
        let pair2 = |rng: &mut ChaCha8Rng| Some((random_vector(&r, rng, n), random_vector(&r, rng, n)));
        let w2 = |(u, v): &(Vector, Vector)| witness([("u", fv(u)), ("v", fv(v))]);
        let mut out = vec![];
        out.push(sweep::random(
            "bilinearity",
            "ε1ε2-part of m(e+ε1u, e+ε2v) = Σ u_i v_j e_i e_j",
            samples.min(64),
            seed,
            &mut |rng| pair2(rng),
            &|(u, v)| self.direct_product(u, v).is_ok_and(|p| p == self.mul(u, v)),
            &w2,
        ));
        out.push(sweep::random(
            "associativity",
            "(uv)w = u(vw)",
            samples,
            seed,
            &mut |rng| Some((random_vector(&r, rng, n), random_vector(&r, rng, n), random_vector(&r, rng, n))),
            &|(u, v, w)| self.mul(&self.mul(u, v), w) == self.mul(u, &self.mul(v, w)),
            &|(u, v, w)| witness([("u", fv(u)), ("v", fv(v)), ("w", fv(w))]),
        ));
        out.push(sweep::random(
            "unit",
            "ev = v = ve",
            samples,
            seed,
            &mut |rng| Some(random_vector(&r, rng, n)),
            &|v| self.mul(&self.e, v) == *v && self.mul(v, &self.e) == *v,
            &|v| witness([("v", fv(v))]),
        ));
        let in_group = |rng: &mut ChaCha8Rng| {
            let (x, z) = pair2(rng)?;
            let b = &self.base;
            let t = |v: &Vector| b.geometry().transversal(&b.point(P, v), b.o());
            (t(&x) && t(&z)).then_some((x, z))
        };
        out.push(sweep::random(
            "group law",
            "M^{o'o}_{xz}(e) = xz on U_{oo'}",
            samples,
            seed,
            &mut |rng| in_group(rng),
            &|(x, z)| self.group(x, z, false).is_some_and(|g| g == self.mul(x, z)),
            &w2,
        ));
        out.push(sweep::random(
            "opposite order",
            "M^{oo'}_{xz}(e) = zx on U_{oo'}",
            samples,
            seed,
            &mut |rng| in_group(rng),
            &|(x, z)| self.group(x, z, true).is_some_and(|g| g == self.mul(z, x)),
            &w2,
        ));
        out
    }
}

/// Quadratic Jordan triple system `Q(x)y = Q^+(x) p♯(y)` on `V = U_{o'}`,
/// where `o' = p(o)` and `p♯ : V^+ → V^-` is `p` read in the charts.
#[derive(Debug, Clone)]
pub struct TripleSystem {
    base: BasePair,
    pair: QuadraticJordanPair,
    p: ProjectiveMap,
    sharp: Matrix,
    flat: Matrix,
    jts: QuadraticJordanPair,
}

pub fn jts_from_polarity(g: &Geometry, p: &ProjectiveMap, o: &GrasPoint) -> Result<TripleSystem, TangentError> {
    if !p.compose(p).is_identity() {
        return Err(TangentError::Geometry(crate::geometry::GeomError::NotPolarity("p∘p is not the identity".into())));
    }
    let o2 = p.apply(o);
    if !g.transversal(o, &o2) {
        return Err(TangentError::Geometry(crate::geometry::GeomError::NotPolarity("o is isotropic: p(o) not ⊤ o".into())));
    }
    let base = BasePair::new(g, o, &o2)?;
    let pair = extract_pair(&base)?;
    let r = g.ring();
    let chart = |from: Sign| -> Result<Matrix, TangentError> {
        let n = pair.dim(from);
        let mut cols = vec![];
        for i in 0..n {
            let img = p.apply(&base.point(from, &pair::unit(r, n, i)));
            cols.push(base.coord(from.opp(), &img).ok_or_else(|| TangentError::Domain("p does not swap the charts".into()))?);
        }
        Ok(Matrix::from_columns(r, pair.dim(from.opp()), &cols))
    };
    let (sharp, flat) = (chart(P)?, chart(M)?);
    let q = |_: Sign, x: &[Value], y: &[Value]| -> Result<Vector, TangentError> { Ok(pair.q(P, x, &apply(&sharp, y))) };
    let n = pair.dim(P);
    let jts = QuadraticJordanPair::from_fn(r, [n, n], &q)?;
    Ok(TripleSystem { base, pair, p: p.clone(), sharp, flat, jts })
}

impl TripleSystem {
    pub fn base(&self) -> &BasePair {
        &self.base
    }
    /// The triple system as a pair with `V^+ = V^- = V` and equal `Q`.
    pub fn as_pair(&self) -> &QuadraticJordanPair {
        &self.jts
    }
    pub fn sharp(&self) -> &Matrix {
        &self.sharp
    }

    pub fn q(&self, x: &[Value], y: &[Value]) -> Vector {
        self.jts.q(P, x, y)
    }

    pub fn checks(&self, samples: u64, seed: u64) -> Vec<CheckRecord> {
        let r = self.pair.ring().clone();
        let [n, m] = self.pair.dims();
        let fv = |v: &[Value]| format_vector(&r, v);
        let mut out = vec![CheckRecord::fact("involution", "p∘p = id, p(o') = o, p♭ p♯ = id", self.p.compose(&self.p).is_identity()
            && self.p.apply(self.base.o2()) == *self.base.o()
            && self.flat.mul(&self.sharp) == Matrix::identity(&r, n), || witness([("p", format!("{:?}", self.p.matrix().to_strings()))]))];
        out.push(sweep::random(
            "intertwining",
            "p♯(Q^+(x)a) = Q^-(p♯x)(p♭a)",
            samples,
            seed,
            &mut |rng| Some((random_vector(&r, rng, n), random_vector(&r, rng, m))),
            &|(x, a)| apply(&self.sharp, &self.pair.q(P, x, a)) == self.pair.q(M, &apply(&self.sharp, x), &apply(&self.flat, a)),
            &|(x, a)| witness([("x", fv(x)), ("a", fv(a))]),
        ));
        let mut basis = CheckRecord::new("basis values", "Q(e_i)e_j = Q^+(e_i) p♯(e_j)", Mode::Exhaustive);
        'outer: for i in 0..n {
            for j in 0..n {
                basis.cases += 1;
                let (ei, ej) = (pair::unit(&r, n, i), pair::unit(&r, n, j));
                if self.q(&ei, &ej) != self.pair.q(P, &ei, &apply(&self.sharp, &ej)) {
                    basis = basis.fail_with(witness([("i", i.to_string()), ("j", j.to_string())]));
                    break 'outer;
                }
            }
        }
        out.push(basis);
        let mode = PairMode::Random { samples, seed };
        for mut rec in check_pair_identities(&self.jts, mode) {
            if rec.name.contains('-') && !rec.name.starts_with("LJ") {
                continue;
            }
            rec.name = format!("JTS {}", rec.name.replacen('+', "", 1));
            if rec.status == Status::Incomplete && rec.cases == 0 {
                rec.mode = Mode::Random;
            }
            out.push(rec);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn vals(r: &Ring, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| r.from_i64(x)).collect()
    }

    #[test]
    fn projective_line_algebras() {
        let g = Geometry::projective_line(q()).unwrap();
        let r = g.ring().clone();
        let (o, o2, e) = (g.affine(&r.zero()), g.infinity(), g.affine(&r.one()));
        let ja = jordan_algebra_from_triple(&g, &o, &o2, &e).unwrap();
        assert_eq!(ja.unit(), &vals(&r, &[1]));
        assert_eq!(ja.u(&vals(&r, &[3]), &vals(&r, &[2])), vals(&r, &[18]));
        assert_eq!(ja.inverse(&vals(&r, &[4])).unwrap(), vec![r.div(&r.one(), &r.from_i64(4)).unwrap()]);
        for rec in ja.checks(50, 1) {
            assert!(rec.passed(), "{rec:?}");
        }
        let aa = associative_algebra_from_triple(&g, &o, &o2, &e).unwrap();
        assert_eq!(aa.mul(&vals(&r, &[3]), &vals(&r, &[-5])), vals(&r, &[-15]));
        for rec in aa.checks(50, 1) {
            assert!(rec.passed(), "{rec:?}");
        }
    }

    fn diagonal(g: &Geometry) -> GrasPoint {
        g.point_i64(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]).unwrap()
    }

    #[test]
    fn matrix_algebras() {
        let g: Geometry = "gras:Q:2+2".parse().unwrap();
        let base = BasePair::standard(&g, 2).unwrap();
        let (o, o2) = (base.o().clone(), base.o2().clone());
        let aa = associative_algebra_from_triple(&g, &o, &o2, &diagonal(&g)).unwrap();
        let r = g.ring().clone();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (Matrix::from_values(&r, 2, 2, pair::unit(&r, 4, i)), Matrix::from_values(&r, 2, 2, pair::unit(&r, 4, j)));
                assert_eq!(aa.table()[i][j], a.mul(&b).data().to_vec());
            }
        }
        for rec in aa.checks(30, 2) {
            assert!(rec.passed(), "{rec:?}");
        }
        let g3: Geometry = "gras:Fp:3:2+2".parse().unwrap();
        let b3 = BasePair::standard(&g3, 2).unwrap();
        let ja = jordan_algebra_from_triple(&g3, b3.o(), b3.o2(), &diagonal(&g3)).unwrap();
        let r3 = g3.ring().clone();
        let x = vals(&r3, &[1, 2, 0, 1]);
        let y = vals(&r3, &[2, 1, 1, 1]);
        let (xm, ym) = (Matrix::from_values(&r3, 2, 2, x.clone()), Matrix::from_values(&r3, 2, 2, y.clone()));
        assert_eq!(ja.u(&x, &y), xm.mul(&ym).mul(&xm).data().to_vec());
        for rec in ja.checks(40, 3) {
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn polarity_of_the_line() {
        let g = Geometry::projective_line(q()).unwrap();
        let r = g.ring().clone();
        let p = ProjectiveMap::new(Matrix::from_i64(&r, &[&[0, 1], &[1, 0]])).unwrap();
        let ts = jts_from_polarity(&g, &p, &g.affine(&r.zero())).unwrap();
        assert_eq!(ts.q(&vals(&r, &[2]), &vals(&r, &[3])), vals(&r, &[-12]));
        for rec in ts.checks(40, 5) {
            assert!(rec.passed(), "{rec:?}");
        }
        assert!(jts_from_polarity(&g, &p, &g.affine(&r.one())).is_err());
        let not_inv = ProjectiveMap::new(Matrix::from_i64(&r, &[&[1, 1], &[0, 1]])).unwrap();
        assert!(jts_from_polarity(&g, &not_inv, &g.affine(&r.zero())).is_err());
    }
}
