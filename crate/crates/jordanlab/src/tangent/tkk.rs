//! The 3-graded Lie algebra of quadratic vector fields on `V^+`.
//!
//! An element is a triple `(v, h, a)` with `v ∈ V^+`, `h = (h^+, h^-)` and
//! `a ∈ V^-`, realized as the field `X(x) = v + h^+ x - Q(x)a`. Brackets use
//! the group-commutator convention `[X,Y] = dX·Y - dY·X`, under which the
//! Euler field `E = (1, -1)` has `[E,v] = v` and `[E,a] = -a`; the constant
//! fields form `g_1` and the quadratic ones `g_{-1}`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::chart::BasePair;
use super::pair::{add, apply, format_vector, random_vector, sub, QuadraticJordanPair, Sign, Vector};
use super::TangentError;
use crate::geometry::ProjectiveMap;
use crate::linalg::Matrix;
use crate::report::{witness, CheckRecord, Mode, Status, Witness};
use crate::rings::{Ring, Value};
use crate::sweep;

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

#[derive(Debug, Clone, PartialEq)]
pub struct TkkElement {
    pub v: Vector,
    pub h: [Matrix; 2],
    pub a: Vector,
}

impl TkkElement {
    pub fn zero(pair: &QuadraticJordanPair) -> Self {
        let r = pair.ring();
        let [n, m] = pair.dims();
        TkkElement { v: vec![r.zero(); n], h: [Matrix::zeros(r, n, n), Matrix::zeros(r, m, m)], a: vec![r.zero(); m] }
    }

    pub fn constant(pair: &QuadraticJordanPair, v: &[Value]) -> Self {
        TkkElement { v: v.to_vec(), ..Self::zero(pair) }
    }

    pub fn quadratic(pair: &QuadraticJordanPair, a: &[Value]) -> Self {
        TkkElement { a: a.to_vec(), ..Self::zero(pair) }
    }

    pub fn linear(pair: &QuadraticJordanPair, h: [Matrix; 2]) -> Self {
        TkkElement { h, ..Self::zero(pair) }
    }

    pub fn add(&self, o: &TkkElement) -> TkkElement {
        let r = self.h[0].ring();
        TkkElement { v: add(r, &self.v, &o.v), h: [self.h[0].add(&o.h[0]), self.h[1].add(&o.h[1])], a: add(r, &self.a, &o.a) }
    }

    pub fn scale(&self, s: &Value) -> TkkElement {
        let r = self.h[0].ring();
        TkkElement {
            v: self.v.iter().map(|c| r.mul(s, c)).collect(),
            h: [self.h[0].scale(s), self.h[1].scale(s)],
            a: self.a.iter().map(|c| r.mul(s, c)).collect(),
        }
    }

    /// Degrees with a nonzero component, among `1, 0, -1`.
    pub fn support(&self) -> Vec<i32> {
        let r = self.h[0].ring();
        let nz = |v: &[Value]| v.iter().any(|c| !r.is_zero(c));
        let mut out = vec![];
        if nz(&self.v) {
            out.push(1);
        }
        if !(self.h[0].is_zero() && self.h[1].is_zero()) {
            out.push(0);
        }
        if nz(&self.a) {
            out.push(-1);
        }
        out
    }

    fn describe(&self) -> String {
        let r = self.h[0].ring();
        format!(
            "v={} h+={:?} h-={:?} a={}",
            format_vector(r, &self.v),
            self.h[0].to_strings(),
            self.h[1].to_strings(),
            format_vector(r, &self.a)
        )
    }
}

/// `TKK(V^+, V^-)` for a quadratic Jordan pair.
#[derive(Debug, Clone)]
pub struct GradedLieAlgebra {
    pair: QuadraticJordanPair,
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).sub(&b.mul(a))
}

impl GradedLieAlgebra {
    pub fn new(pair: &QuadraticJordanPair) -> Self {
        GradedLieAlgebra { pair: pair.clone() }
    }

    pub fn pair(&self) -> &QuadraticJordanPair {
        &self.pair
    }

    fn ring(&self) -> &Ring {
        self.pair.ring()
    }

    pub fn euler(&self) -> TkkElement {
        let r = self.ring();
        let [n, m] = self.pair.dims();
        TkkElement::linear(&self.pair, [Matrix::identity(r, n), Matrix::identity(r, m).neg()])
    }

    /// `[x,a] = (D(x,a), -D(a,x))`.
    pub fn inner(&self, x: &[Value], a: &[Value]) -> [Matrix; 2] {
        [self.pair.d_op(P, x, a), self.pair.d_op(M, a, x).neg()]
    }

    /// The bracket table.
    pub fn bracket(&self, x: &TkkElement, y: &TkkElement) -> TkkElement {
        let r = self.ring();
        let v = sub(r, &apply(&x.h[0], &y.v), &apply(&y.h[0], &x.v));
        let a = sub(r, &apply(&x.h[1], &y.a), &apply(&y.h[1], &x.a));
        let [p1, m1] = self.inner(&x.v, &y.a);
        let [p2, m2] = self.inner(&y.v, &x.a);
        let h = [
            commutator(&x.h[0], &y.h[0]).add(&p1).sub(&p2),
            commutator(&x.h[1], &y.h[1]).add(&m1).sub(&m2),
        ];
        TkkElement { v, h, a }
    }

    /// `X(x) = v + h^+ x - Q(x)a`.
    pub fn field(&self, e: &TkkElement, x: &[Value]) -> Vector {
        let r = self.ring();
        sub(r, &add(r, &e.v, &apply(&e.h[0], x)), &self.pair.q(P, x, &e.a))
    }

    /// `dX(x)w = h^+ w - Q(x,w)a`.
    pub fn field_diff(&self, e: &TkkElement, x: &[Value], w: &[Value]) -> Vector {
        let r = self.ring();
        sub(r, &apply(&e.h[0], w), &self.pair.d(P, x, &e.a, w))
    }

    /// `[X,Y](x) = dX(x)Y(x) - dY(x)X(x)`.
    pub fn field_bracket(&self, e: &TkkElement, f: &TkkElement, x: &[Value]) -> Vector {
        let r = self.ring();
        sub(r, &self.field_diff(e, x, &self.field(f, x)), &self.field_diff(f, x, &self.field(e, x)))
    }

    /// Spanning set of `g_0`: `E` and the `[e_i, f_j]` on unit vectors.
    pub fn g0_spanning(&self) -> Vec<[Matrix; 2]> {
        let r = self.ring();
        let [n, m] = self.pair.dims();
        let mut out = vec![self.euler().h];
        for i in 0..n {
            for j in 0..m {
                out.push(self.inner(&super::pair::unit(r, n, i), &super::pair::unit(r, m, j)));
            }
        }
        out
    }

    /// `[dim g_1, dim g_0, dim g_{-1}]`; `g_0` is measured over fields only.
    pub fn dims(&self) -> [Option<usize>; 3] {
        let r = self.ring();
        let [n, m] = self.pair.dims();
        let g0 = r.is_field().then(|| {
            let rows: Vec<Vector> = self.g0_spanning().iter().map(|[p, q]| [p.data(), q.data()].concat()).collect();
            let mat = Matrix::from_values(r, rows.len(), n * n + m * m, rows.concat());
            mat.rank().ok()
        });
        [Some(n), g0.flatten(), Some(m)]
    }

    /// Random element with `h` in the span of `E` and two inner derivations.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> TkkElement {
        let r = self.ring();
        let [n, m] = self.pair.dims();
        let c = r.random(rng, 2);
        let mut h = self.euler().h.map(|x| x.scale(&c));
        for _ in 0..2 {
            let [p, q] = self.inner(&random_vector(r, rng, n), &random_vector(r, rng, m));
            h = [h[0].add(&p), h[1].add(&q)];
        }
        TkkElement { v: random_vector(r, rng, n), h, a: random_vector(r, rng, m) }
    }

    fn random_homogeneous(&self, rng: &mut ChaCha8Rng, deg: i32) -> TkkElement {
        let e = self.random_element(rng);
        let z = TkkElement::zero(&self.pair);
        match deg {
            1 => TkkElement { v: e.v, ..z },
            0 => TkkElement { h: e.h, ..z },
            _ => TkkElement { a: e.a, ..z },
        }
    }
}

fn has_six_torsion(r: &Ring) -> bool {
    let c = r.characteristic();
    c != 0 && (c % 2 == 0 || c % 3 == 0)
}

fn wit(items: &[(&str, &TkkElement)]) -> Witness {
    witness(items.iter().map(|(k, e)| (k.to_string(), e.describe())))
}

/// Grading and Euler checks always; the bracket table against fields,
/// Jacobi, `[g_{-1}, g_{-1}] = 0` and `{xaz} = D(x,a)z` without 6-torsion.
pub fn tkk_checks(alg: &GradedLieAlgebra, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let pair = alg.pair();
    let r = pair.ring().clone();
    let [n, m] = pair.dims();
    let mut out = vec![];

    out.push(sweep::random(
        "grading",
        "[g_i, g_j] ⊆ g_{i+j}, g_{±2} = 0",
        samples,
        seed,
        &mut |rng| {
            let (i, j) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
            Some((i, j, alg.random_homogeneous(rng, i), alg.random_homogeneous(rng, j)))
        },
        &|(i, j, x, y)| alg.bracket(x, y).support().iter().all(|&d| d == i + j),
        &|(_, _, x, y)| wit(&[("X", x), ("Y", y)]),
    ));

    let e = alg.euler();
    out.push(sweep::random(
        "euler",
        "[E, X] = i X for X ∈ g_i",
        samples,
        seed,
        &mut |rng| {
            let i = rng.gen_range(-1..=1);
            Some((i, alg.random_homogeneous(rng, i)))
        },
        &|(i, x)| alg.bracket(&e, x) == x.scale(&r.from_i64(*i as i64)),
        &|(_, x)| wit(&[("X", x)]),
    ));

    if has_six_torsion(&r) {
        let mut rec = CheckRecord::new("bracket table", "full table needs a ring without 6-torsion", Mode::Exhaustive);
        rec.status = Status::Incomplete;
        out.push(rec);
        return out;
    }

    out.push(sweep::random(
        "fields",
        "field of [X,Y] = dX·Y - dY·X",
        samples,
        seed,
        &mut |rng| Some((alg.random_element(rng), alg.random_element(rng), random_vector(&r, rng, n))),
        &|(x, y, p)| alg.field(&alg.bracket(x, y), p) == alg.field_bracket(x, y, p),
        &|(x, y, p)| {
            let mut w = wit(&[("X", x), ("Y", y)]);
            w.insert("x".into(), format_vector(&r, p).into());
            w
        },
    ));

    out.push(sweep::random(
        "jacobi",
        "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0",
        samples,
        seed,
        &mut |rng| Some((alg.random_element(rng), alg.random_element(rng), alg.random_element(rng))),
        &|(x, y, z)| {
            let s = alg.bracket(x, &alg.bracket(y, z)).add(&alg.bracket(y, &alg.bracket(z, x))).add(&alg.bracket(z, &alg.bracket(x, y)));
            s.support().is_empty()
        },
        &|(x, y, z)| wit(&[("X", x), ("Y", y), ("Z", z)]),
    ));

    out.push(quadratic_fields_commute(alg));

    out.push(sweep::random(
        "triple product",
        "[[x,a],z] = D(x,a)z",
        samples,
        seed,
        &mut |rng| Some((random_vector(&r, rng, n), random_vector(&r, rng, m), random_vector(&r, rng, n))),
        &|(x, a, z)| {
            let xa = alg.bracket(&TkkElement::constant(pair, x), &TkkElement::quadratic(pair, a));
            alg.bracket(&xa, &TkkElement::constant(pair, z)).v == pair.d(P, x, a, z)
        },
        &|(x, a, z)| witness([("x", format_vector(&r, x)), ("a", format_vector(&r, a)), ("z", format_vector(&r, z))]),
    ));
    out
}

/// The field bracket of two quadratic fields vanishes, with generic
/// polynomial arguments.
fn quadratic_fields_commute(alg: &GradedLieAlgebra) -> CheckRecord {
    let pair = alg.pair();
    let [n, m] = pair.dims();
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).chain((0..2 * m).map(|j| format!("a{j}"))).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let poly = Ring::polynomial(pair.ring(), &refs);
    let mut rec = CheckRecord::new("quadratic fields commute", "[Q(·)a, Q(·)b] = 0 as vector fields", Mode::Exhaustive);
    rec.cases = 1;
    let Ok(p) = pair.over(&poly) else {
        rec.status = Status::Incomplete;
        return rec;
    };
    let big = GradedLieAlgebra::new(&p);
    let x: Vector = (0..n).map(|i| poly.generator(i)).collect();
    let a: Vector = (0..m).map(|j| poly.generator(n + j)).collect();
    let b: Vector = (0..m).map(|j| poly.generator(n + m + j)).collect();
    let fb = big.field_bracket(&TkkElement::quadratic(&p, &a), &TkkElement::quadratic(&p, &b), &x);
    if fb.iter().any(|c| !poly.is_zero(c)) {
        rec = rec.fail_with(witness([("arguments", "generic")]));
    }
    rec
}

/// Generator whose flow is realized geometrically.
#[derive(Debug, Clone)]
enum Generator {
    Constant(Vector),
    Quadratic(Vector),
    Euler,
}

/// Geometric flows in the extension by `ε_1, ε_2` with `ε_i^2 = 0`: the
/// `ε_1 ε_2`-part of the group commutator of two flows is the bracket of
/// the fields.
pub struct Flows<'a> {
    alg: &'a GradedLieAlgebra,
    base: &'a BasePair,
    tt: Ring,
    tbase: BasePair,
}

impl<'a> Flows<'a> {
    pub fn new(alg: &'a GradedLieAlgebra, base: &'a BasePair) -> Result<Self, TangentError> {
        let tt = base.ring().weil_extend(&[("e1", 1), ("e2", 1)])?;
        let tbase = base.over(&tt)?;
        Ok(Flows { alg, base, tt, tbase })
    }

    fn lift(&self, v: &[Value], eps: Option<usize>) -> Vector {
        let r = self.base.ring();
        v.iter()
            .map(|c| {
                let c = self.tt.coerce(r, c).expect("coerce");
                match eps {
                    Some(i) => self.tt.mul(&self.tt.generator(i), &c),
                    None => c,
                }
            })
            .collect()
    }

    fn flow(&self, g: &Generator, i: usize) -> Result<ProjectiveMap, TangentError> {
        let b = &self.tbase;
        let geo = b.geometry();
        Ok(match g {
            Generator::Constant(v) => geo.translation(b.o2(), &b.point(P, &self.lift(v, Some(i))), b.o())?,
            Generator::Quadratic(a) => geo.translation(b.o(), b.o2(), &b.point(M, &self.lift(a, Some(i))))?,
            Generator::Euler => {
                let s = self.tt.add(&self.tt.one(), &self.tt.generator(i));
                geo.scale_map(&s, b.o(), b.o2())?
            }
        })
    }

    fn element(&self, g: &Generator) -> TkkElement {
        let p = self.alg.pair();
        match g {
            Generator::Constant(v) => TkkElement::constant(p, v),
            Generator::Quadratic(a) => TkkElement::quadratic(p, a),
            Generator::Euler => self.alg.euler(),
        }
    }

    /// `ε_1ε_2`-part of `φ ψ φ^{-1} ψ^{-1}(x)`, if the base part is `x` and
    /// the pure parts vanish.
    fn commutator_field(&self, g: &Generator, h: &Generator, x: &[Value]) -> Result<Option<Vector>, TangentError> {
        let phi = self.flow(g, 0)?;
        let psi = self.flow(h, 1)?;
        let c = phi.compose(&psi).compose(&phi.inverse()).compose(&psi.inverse());
        let img = c.apply(&self.tbase.point(P, &self.lift(x, None)));
        let Some(coord) = self.tbase.coord(P, &img) else { return Ok(None) };
        let r = self.base.ring();
        let part = |mono: &[u32]| -> Vector { coord.iter().map(|v| self.tt.coefficient(v, mono)).collect() };
        let zero = vec![r.zero(); x.len()];
        if part(&[0, 0]) != x || part(&[1, 0]) != zero || part(&[0, 1]) != zero {
            return Ok(None);
        }
        Ok(Some(part(&[1, 1])))
    }

    /// Commutators of flows against the table for every pair of generator
    /// kinds, on random arguments.
    pub fn checks(&self, samples: u64, seed: u64) -> Vec<CheckRecord> {
        let r = self.base.ring().clone();
        let [n, m] = self.alg.pair().dims();
        let kinds = ["constant", "quadratic", "euler"];
        let make = |k: usize, rng: &mut ChaCha8Rng| match k {
            0 => Generator::Constant(random_vector(&r, rng, n)),
            1 => Generator::Quadratic(random_vector(&r, rng, m)),
            _ => Generator::Euler,
        };
        let mut out = vec![];
        for i in 0..3 {
            for j in 0..3 {
                let name = format!("flow bracket {}/{}", kinds[i], kinds[j]);
                out.push(sweep::random(
                    &name,
                    "ε1ε2-part of φ ψ φ^{-1} ψ^{-1}(x) = [X,Y](x)",
                    samples,
                    seed,
                    &mut |rng| Some((make(i, rng), make(j, rng), random_vector(&r, rng, n))),
                    &|(g, h, x)| {
                        let table = self.alg.field(&self.alg.bracket(&self.element(g), &self.element(h)), x);
                        matches!(self.commutator_field(g, h, x), Ok(Some(f)) if f == table)
                    },
                    &|(g, h, x)| {
                        witness([
                            ("X", format!("{g:?}")),
                            ("Y", format!("{h:?}")),
                            ("x", format_vector(&r, x)),
                        ])
                    },
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::chart::extract_pair;
    use super::*;
    use crate::geometry::Geometry;

    #[test]
    fn scalar_algebra_is_three_dimensional() {
        let r = Ring::rationals();
        let alg = GradedLieAlgebra::new(&QuadraticJordanPair::scalar(&r));
        assert_eq!(alg.dims(), [Some(1), Some(1), Some(1)]);
        let p = alg.pair();
        let one = vec![r.one()];
        let e = alg.euler();
        assert_eq!(alg.bracket(&e, &TkkElement::constant(p, &one)), TkkElement::constant(p, &one));
        assert_eq!(alg.bracket(&e, &TkkElement::quadratic(p, &one)), TkkElement::quadratic(p, &[r.from_i64(-1)]));
        for rec in tkk_checks(&alg, 64, 1) {
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn matrix_algebra_checks() {
        let r = Ring::rationals();
        let alg = GradedLieAlgebra::new(&QuadraticJordanPair::matrix(&r, 1, 2));
        // sl_3: 2 + 4 + 2
        assert_eq!(alg.dims(), [Some(2), Some(4), Some(2)]);
        for rec in tkk_checks(&alg, 64, 2) {
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn torsion_runs_grading_only() {
        let r = Ring::prime_field(2).unwrap();
        let alg = GradedLieAlgebra::new(&QuadraticJordanPair::matrix(&r, 1, 2));
        let recs = tkk_checks(&alg, 32, 3);
        assert_eq!(recs.len(), 3);
        assert!(recs[0].passed() && recs[1].passed());
        assert_eq!(recs[2].status, Status::Incomplete);
    }

    #[test]
    fn flows_match_table() {
        for (desc, k) in [("projline:Q", 1), ("gras:Q:1+2", 1), ("gras:Fp:5:2+2", 2)] {
            let g: Geometry = desc.parse().unwrap();
            let base = BasePair::standard(&g, k).unwrap();
            let alg = GradedLieAlgebra::new(&extract_pair(&base).unwrap());
            for rec in Flows::new(&alg, &base).unwrap().checks(6, 4) {
                assert!(rec.passed(), "{desc}: {rec:?}");
            }
        }
    }
}
