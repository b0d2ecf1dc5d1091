//! Quadratic Jordan pairs stored by basis values and polarizations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TangentError;
use crate::linalg::Matrix;
use crate::report::{witness, CheckRecord, Mode, Status};
use crate::rings::{Ring, Value};
use crate::sweep;

pub type Vector = Vec<Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn idx(self) -> usize {
        self as usize
    }
    pub fn opp(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    fn sym(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// `Q^σ` as the matrices `Q(e_i)` and `Q(e_i,e_j)` (i < j), each mapping
/// `V^{-σ}` to `V^σ`. A `constant` term breaks homogeneity and exists only
/// to build negative controls.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadMap {
    pub diag: Vec<Matrix>,
    pub polar: Vec<Matrix>,
    pub constant: Option<Matrix>,
}

fn polar_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// A pair `(V^+, V^-)` of free modules with quadratic maps
/// `Q^±: V^± -> Hom(V^∓, V^±)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticJordanPair {
    ring: Ring,
    dims: [usize; 2],
    q: [QuadMap; 2],
}

// ---- vector helpers ----

pub fn zero(r: &Ring, n: usize) -> Vector {
    vec![r.zero(); n]
}
pub fn unit(r: &Ring, n: usize, i: usize) -> Vector {
    let mut v = zero(r, n);
    v[i] = r.one();
    v
}
pub fn add(r: &Ring, a: &[Value], b: &[Value]) -> Vector {
    a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect()
}
pub fn sub(r: &Ring, a: &[Value], b: &[Value]) -> Vector {
    a.iter().zip(b).map(|(x, y)| r.sub(x, y)).collect()
}
pub fn neg(r: &Ring, a: &[Value]) -> Vector {
    a.iter().map(|x| r.neg(x)).collect()
}
pub fn scale(r: &Ring, s: &Value, a: &[Value]) -> Vector {
    a.iter().map(|x| r.mul(s, x)).collect()
}
pub fn apply(m: &Matrix, v: &[Value]) -> Vector {
    let r = m.ring();
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(m.get(i, j), &v[j]))))
        .collect()
}
pub fn from_columns(r: &Ring, rows: usize, cols: &[Vector]) -> Matrix {
    Matrix::from_columns(r, rows, cols)
}
pub fn format_vector(r: &Ring, v: &[Value]) -> String {
    format!("[{}]", v.iter().map(|x| r.format(x)).collect::<Vec<_>>().join(", "))
}
pub fn random_vector<R: Rng + ?Sized>(r: &Ring, rng: &mut R, n: usize) -> Vector {
    (0..n).map(|_| r.random(rng, 2)).collect()
}

impl QuadraticJordanPair {
    pub fn new(ring: Ring, dims: [usize; 2], q: [QuadMap; 2]) -> Result<Self, TangentError> {
        for s in Sign::BOTH {
            let (n, m) = (dims[s.idx()], dims[s.opp().idx()]);
            let qm = &q[s.idx()];
            if qm.diag.len() != n || qm.polar.len() != n * n.saturating_sub(1) / 2 {
                return Err(TangentError::Dimension(format!("Q{} needs {n} basis values", s.sym())));
            }
            if qm.diag.iter().chain(&qm.polar).chain(&qm.constant).any(|a| a.rows() != n || a.cols() != m || a.ring() != &ring) {
                return Err(TangentError::Dimension(format!("Q{} values must be {n}x{m} matrices over {ring}", s.sym())));
            }
        }
        Ok(QuadraticJordanPair { ring, dims, q })
    }

    /// Populates the stored values by evaluating `f(σ, x, a) = Q^σ(x)a` at basis
    /// vectors and sums of two basis vectors.
    pub fn from_fn(ring: &Ring, dims: [usize; 2], f: &dyn Fn(Sign, &[Value], &[Value]) -> Result<Vector, TangentError>) -> Result<Self, TangentError> {
        let mut q: Vec<QuadMap> = vec![];
        for s in Sign::BOTH {
            let (n, m) = (dims[s.idx()], dims[s.opp().idx()]);
            let op = |x: &Vector| -> Result<Matrix, TangentError> {
                let cols = (0..m).map(|j| f(s, x, &unit(ring, m, j))).collect::<Result<Vec<_>, _>>()?;
                Ok(from_columns(ring, n, &cols))
            };
            let diag = (0..n).map(|i| op(&unit(ring, n, i))).collect::<Result<Vec<_>, _>>()?;
            let mut polar = vec![];
            for i in 0..n {
                for j in i + 1..n {
                    let sum = op(&add(ring, &unit(ring, n, i), &unit(ring, n, j)))?;
                    polar.push(sum.sub(&diag[i]).sub(&diag[j]));
                }
            }
            q.push(QuadMap { diag, polar, constant: None });
        }
        let minus = q.pop().unwrap();
        let plus = q.pop().unwrap();
        QuadraticJordanPair::new(ring.clone(), dims, [plus, minus])
    }

    /// `Q(x)a = x^2 a` on `(R, R)`.
    pub fn scalar(ring: &Ring) -> Self {
        QuadraticJordanPair::matrix(ring, 1, 1)
    }

    /// Rectangular matrices: `V^+ = M_{q×p}`, `V^- = M_{p×q}`, `Q(x)a = x·a·x`,
    /// flattened row by row.
    pub fn matrix(ring: &Ring, p: usize, q: usize) -> Self {
        let shape = |s: Sign| if s == Sign::Plus { (q, p) } else { (p, q) };
        let f = |s: Sign, x: &[Value], a: &[Value]| {
            let (r, c) = shape(s);
            let xm = Matrix::from_values(ring, r, c, x.to_vec());
            let am = Matrix::from_values(ring, c, r, a.to_vec());
            Ok(xm.mul(&am).mul(&xm).data().to_vec())
        };
        QuadraticJordanPair::from_fn(ring, [p * q, p * q], &f).expect("matrix pair")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }
    pub fn dim(&self, s: Sign) -> usize {
        self.dims[s.idx()]
    }
    pub fn quad_map(&self, s: Sign) -> &QuadMap {
        &self.q[s.idx()]
    }

    /// Scalar extension to a ring reachable from this one by coercion.
    pub fn over(&self, ring: &Ring) -> Result<Self, TangentError> {
        let lift = |m: &Matrix| -> Result<Matrix, TangentError> {
            let data = m
                .data()
                .iter()
                .map(|v| ring.coerce(&self.ring, v).ok_or_else(|| TangentError::Unsupported(format!("cannot extend {} to {ring}", self.ring))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_values(ring, m.rows(), m.cols(), data))
        };
        let mut q = vec![];
        for s in Sign::BOTH {
            let qm = &self.q[s.idx()];
            q.push(QuadMap {
                diag: qm.diag.iter().map(lift).collect::<Result<_, _>>()?,
                polar: qm.polar.iter().map(lift).collect::<Result<_, _>>()?,
                constant: qm.constant.as_ref().map(lift).transpose()?,
            });
        }
        let minus = q.pop().unwrap();
        let plus = q.pop().unwrap();
        QuadraticJordanPair::new(ring.clone(), self.dims, [plus, minus])
    }

    /// Replaces `Q^σ` by a map computed from the stored data; used for
    /// negative controls.
    pub fn with_quad_map(&self, s: Sign, qm: QuadMap) -> Result<Self, TangentError> {
        let mut q = self.q.clone();
        q[s.idx()] = qm;
        QuadraticJordanPair::new(self.ring.clone(), self.dims, q)
    }

    // ---- operators ----

    /// The matrix of `Q^σ(x): V^{-σ} -> V^σ`.
    pub fn q_op(&self, s: Sign, x: &[Value]) -> Matrix {
        let r = &self.ring;
        let qm = &self.q[s.idx()];
        let n = self.dim(s);
        let mut acc = qm.constant.clone().unwrap_or_else(|| Matrix::zeros(r, n, self.dim(s.opp())));
        for i in 0..n {
            if !r.is_zero(&x[i]) {
                acc = acc.add(&qm.diag[i].scale(&r.mul(&x[i], &x[i])));
            }
            for j in i + 1..n {
                let c = r.mul(&x[i], &x[j]);
                if !r.is_zero(&c) {
                    acc = acc.add(&qm.polar[polar_index(i, j, n)].scale(&c));
                }
            }
        }
        acc
    }

    /// `Q(x,z) = Q(x+z) - Q(x) - Q(z)`, expanded without division.
    pub fn q_polar_op(&self, s: Sign, x: &[Value], z: &[Value]) -> Matrix {
        let r = &self.ring;
        let qm = &self.q[s.idx()];
        let n = self.dim(s);
        let two = r.from_i64(2);
        let mut acc = match &qm.constant {
            Some(c) => c.neg(),
            None => Matrix::zeros(r, n, self.dim(s.opp())),
        };
        for i in 0..n {
            let c = r.mul(&two, &r.mul(&x[i], &z[i]));
            if !r.is_zero(&c) {
                acc = acc.add(&qm.diag[i].scale(&c));
            }
            for j in i + 1..n {
                let c = r.add(&r.mul(&x[i], &z[j]), &r.mul(&x[j], &z[i]));
                if !r.is_zero(&c) {
                    acc = acc.add(&qm.polar[polar_index(i, j, n)].scale(&c));
                }
            }
        }
        acc
    }

    pub fn q(&self, s: Sign, x: &[Value], a: &[Value]) -> Vector {
        apply(&self.q_op(s, x), a)
    }

    /// `{x a z} = D(x,a)z = Q(x,z)a`.
    pub fn d(&self, s: Sign, x: &[Value], a: &[Value], z: &[Value]) -> Vector {
        apply(&self.q_polar_op(s, x, z), a)
    }

    /// The matrix of `D(x,a)` on `V^σ`.
    pub fn d_op(&self, s: Sign, x: &[Value], a: &[Value]) -> Matrix {
        let n = self.dim(s);
        let cols: Vec<Vector> = (0..n).map(|j| self.d(s, x, a, &unit(&self.ring, n, j))).collect();
        from_columns(&self.ring, n, &cols)
    }

    /// `B(y,b) = 1 - D(y,b) + Q(y)Q(b)` on `V^σ`.
    pub fn bergman(&self, s: Sign, y: &[Value], b: &[Value]) -> Matrix {
        let n = self.dim(s);
        Matrix::identity(&self.ring, n).sub(&self.d_op(s, y, b)).add(&self.q_op(s, y).mul(&self.q_op(s.opp(), b)))
    }

    pub fn is_quasi_invertible(&self, s: Sign, x: &[Value], a: &[Value]) -> bool {
        self.bergman(s, x, a).is_invertible()
    }

    /// `x^a = B(x,a)^{-1}(x - Q(x)a)`.
    pub fn quasi_inverse(&self, s: Sign, x: &[Value], a: &[Value]) -> Result<Vector, TangentError> {
        let b = self.bergman(s, x, a).invert().map_err(|_| TangentError::NotQuasiInvertible)?;
        Ok(apply(&b, &sub(&self.ring, x, &self.q(s, x, a))))
    }

    /// `β(x,a) = (B(x,a), B(a,x)^{-1})`, acting on `V^σ` and `V^{-σ}`.
    pub fn beta(&self, s: Sign, x: &[Value], a: &[Value]) -> Result<(Matrix, Matrix), TangentError> {
        let bx = self.bergman(s, x, a);
        let ba = self.bergman(s.opp(), a, x).invert().map_err(|_| TangentError::NotQuasiInvertible)?;
        if !bx.is_invertible() {
            return Err(TangentError::NotQuasiInvertible);
        }
        Ok((bx, ba))
    }

    // ---- identities ----

    /// Which of JP1, JP2, JP3 hold at `(x, y)` with `x ∈ V^σ`, `y ∈ V^{-σ}`,
    /// as operator identities.
    pub fn jp_holds(&self, s: Sign, x: &[Value], y: &[Value]) -> [bool; 3] {
        let t = s.opp();
        let qx = self.q_op(s, x);
        let jp1 = self.d_op(s, x, y).mul(&qx) == qx.mul(&self.d_op(t, y, x));
        let qxy = self.q(s, x, y);
        let qyx = self.q(t, y, x);
        let jp2 = self.d_op(s, &qxy, y) == self.d_op(s, x, &qyx);
        let jp3 = self.q_op(s, &qxy) == qx.mul(&self.q_op(t, y)).mul(&qx);
        [jp1, jp2, jp3]
    }

    /// Linear pair identities at `(u,v,x,y,z)` with `u,x,z ∈ V^σ`, `v,y ∈ V^{-σ}`:
    /// symmetry `{xyz} = {zyx}` and the five-linear identity.
    pub fn linear_holds(&self, s: Sign, u: &[Value], v: &[Value], x: &[Value], y: &[Value], z: &[Value]) -> [bool; 2] {
        let r = &self.ring;
        let t = s.opp();
        let sym = self.d(s, x, y, z) == self.d(s, z, y, x);
        let lhs = self.d(s, u, v, &self.d(s, x, y, z));
        let rhs = add(
            r,
            &sub(r, &self.d(s, &self.d(s, u, v, x), y, z), &self.d(s, x, &self.d(t, v, u, y), z)),
            &self.d(s, x, y, &self.d(s, u, v, z)),
        );
        [sym, lhs == rhs]
    }

    // ---- serialization ----

    pub fn to_json(&self) -> PairJson {
        let enc = |qm: &QuadMap| QuadMapJson {
            diag: qm.diag.iter().map(Matrix::to_strings).collect(),
            polar: qm.polar.iter().map(Matrix::to_strings).collect(),
        };
        PairJson { ring: self.ring.to_string(), dims: self.dims, q_plus: enc(&self.q[0]), q_minus: enc(&self.q[1]) }
    }

    pub fn from_json(j: &PairJson) -> Result<Self, TangentError> {
        let ring = Ring::parse(&j.ring).map_err(|e| TangentError::Parse(e.to_string()))?;
        let dec = |qm: &QuadMapJson, s: Sign| -> Result<QuadMap, TangentError> {
            let (n, m) = (j.dims[s.idx()], j.dims[s.opp().idx()]);
            let parse = |rows: &Vec<Vec<String>>| -> Result<Matrix, TangentError> {
                if rows.is_empty() {
                    return Ok(Matrix::zeros(&ring, n, m));
                }
                Matrix::parse(&ring, rows).map_err(|e| TangentError::Parse(e.to_string()))
            };
            Ok(QuadMap {
                diag: qm.diag.iter().map(parse).collect::<Result<_, _>>()?,
                polar: qm.polar.iter().map(parse).collect::<Result<_, _>>()?,
                constant: None,
            })
        };
        QuadraticJordanPair::new(ring.clone(), j.dims, [dec(&j.q_plus, Sign::Plus)?, dec(&j.q_minus, Sign::Minus)?])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadMapJson {
    pub diag: Vec<Vec<Vec<String>>>,
    pub polar: Vec<Vec<Vec<String>>>,
}

/// JSON form: ring descriptor, ranks, and `Q^±` basis values and polarizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub ring: String,
    pub dims: [usize; 2],
    pub q_plus: QuadMapJson,
    pub q_minus: QuadMapJson,
}

// ---- identity suites ----

const JP: [(&str, &str); 3] = [
    ("JP1", "D(x,y)Q(x) = Q(x)D(y,x)"),
    ("JP2", "D(Q(x)y,y) = D(x,Q(y)x)"),
    ("JP3", "Q(Q(x)y) = Q(x)Q(y)Q(x)"),
];

/// How to choose the arguments of the identity suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Every pair of module elements over a finite ring.
    Exhaustive,
    /// Seeded random elements over the ring itself.
    Random { samples: u64, seed: u64 },
    /// Generic arguments with polynomial coordinates.
    Symbolic,
    /// Random arguments in the extension by `K[t]/(t^(k+1))`.
    Jets { order: u32, samples: u64, seed: u64 },
}

fn all_vectors(r: &Ring, n: usize, cap: u64) -> Option<Vec<Vector>> {
    let els = r.elements()?;
    let total = (els.len() as u64).checked_pow(n as u32)?;
    if total > cap {
        return None;
    }
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vector| els.iter().map(move |e| [v.clone(), vec![e.clone()]].concat())).collect();
    }
    Some(out)
}

fn has_six_torsion(r: &Ring) -> bool {
    let c = r.characteristic();
    c != 0 && (c % 2 == 0 || c % 3 == 0)
}

fn sign_label(name: &str, s: Sign) -> String {
    format!("{name}{}", s.sym())
}

/// JP1-JP3 for both signs, and the linear pair identities when the ring has
/// no 6-torsion.
pub fn check_pair_identities(pair: &QuadraticJordanPair, mode: PairMode) -> Vec<CheckRecord> {
    let mut out = vec![];
    for s in Sign::BOTH {
        for (k, (name, formula)) in JP.iter().enumerate() {
            out.push(check_jp(pair, s, k, &sign_label(name, s), formula, mode));
        }
    }
    if !has_six_torsion(pair.ring()) {
        for s in Sign::BOTH {
            out.extend(check_linear(pair, s, mode));
        }
    }
    out
}

fn mode_label(mode: PairMode) -> String {
    match mode {
        PairMode::Exhaustive => "exhaustive".into(),
        PairMode::Random { .. } => "random".into(),
        PairMode::Symbolic => "symbolic".into(),
        PairMode::Jets { order, .. } => format!("jets k={order}"),
    }
}

fn check_jp(pair: &QuadraticJordanPair, s: Sign, k: usize, name: &str, formula: &str, mode: PairMode) -> CheckRecord {
    let name = format!("{name} [{}]", mode_label(mode));
    let r = pair.ring();
    let (n, m) = (pair.dim(s), pair.dim(s.opp()));
    match mode {
        PairMode::Exhaustive => {
            let mut rec = CheckRecord::new(&name, formula, Mode::Exhaustive);
            let (Some(xs), Some(ys)) = (all_vectors(r, n, 1 << 12), all_vectors(r, m, 1 << 12)) else {
                rec.status = Status::Incomplete;
                return rec;
            };
            for x in &xs {
                for y in &ys {
                    rec.cases += 1;
                    if !pair.jp_holds(s, x, y)[k] {
                        return rec.fail_with(witness([("x", format_vector(r, x)), ("y", format_vector(r, y))]));
                    }
                }
            }
            rec
        }
        PairMode::Random { samples, seed } => sweep::random(
            &name,
            formula,
            samples,
            seed,
            &mut |rng| Some((random_vector(r, rng, n), random_vector(r, rng, m))),
            &|(x, y)| pair.jp_holds(s, x, y)[k],
            &|(x, y)| witness([("x", format_vector(r, x)), ("y", format_vector(r, y))]),
        ),
        PairMode::Symbolic => {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).chain((0..m).map(|j| format!("y{j}"))).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let poly = Ring::polynomial(r, &refs);
            let mut rec = CheckRecord::new(&name, formula, Mode::Exhaustive);
            rec.cases = 1;
            let Ok(p) = pair.over(&poly) else {
                rec.status = Status::Incomplete;
                return rec;
            };
            let x: Vector = (0..n).map(|i| poly.generator(i)).collect();
            let y: Vector = (0..m).map(|j| poly.generator(n + j)).collect();
            if !p.jp_holds(s, &x, &y)[k] {
                rec = rec.fail_with(witness([("x", "generic"), ("y", "generic")]));
            }
            rec
        }
        PairMode::Jets { order, samples, seed } => {
            let Ok(jr) = r.jets("t", order) else {
                let mut rec = CheckRecord::new(&name, formula, Mode::Random);
                rec.status = Status::Incomplete;
                return rec;
            };
            let p = pair.over(&jr).expect("jet extension");
            sweep::random(
                &name,
                formula,
                samples,
                seed,
                &mut |rng| Some((random_vector(&jr, rng, n), random_vector(&jr, rng, m))),
                &|(x, y)| p.jp_holds(s, x, y)[k],
                &|(x, y)| witness([("x", format_vector(&jr, x)), ("y", format_vector(&jr, y))]),
            )
        }
    }
}

fn check_linear(pair: &QuadraticJordanPair, s: Sign, mode: PairMode) -> Vec<CheckRecord> {
    let forms = [("{xyz} = {zyx}", "LJ1"), ("{uv{xyz}} = {{uvx}yz} - {x{vuy}z} + {xy{uvz}}", "LJ2")];
    let (n, m) = (pair.dim(s), pair.dim(s.opp()));
    // (ring, pair, five arguments) for one draw
    let mut out = vec![];
    for (k, (formula, short)) in forms.iter().enumerate() {
        let name = format!("{} [{}]", sign_label(short, s), mode_label(mode));
        let rec = match mode {
            PairMode::Symbolic => {
                let names: Vec<String> = ["u", "v", "x", "y", "z"]
                    .iter()
                    .enumerate()
                    .flat_map(|(w, p)| (0..if w % 2 == 0 { n } else { m }).map(move |i| format!("{p}{i}")))
                    .collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                let poly = Ring::polynomial(pair.ring(), &refs);
                let mut rec = CheckRecord::new(&name, formula, Mode::Exhaustive);
                rec.cases = 1;
                let p = pair.over(&poly).expect("polynomial extension");
                let mut next = 0;
                let mut gen = |len: usize| {
                    let v: Vector = (next..next + len).map(|i| poly.generator(i)).collect();
                    next += len;
                    v
                };
                let (u, v, x, y, z) = (gen(n), gen(m), gen(n), gen(m), gen(n));
                if !p.linear_holds(s, &u, &v, &x, &y, &z)[k] {
                    rec = rec.fail_with(witness([("arguments", "generic")]));
                }
                rec
            }
            _ => {
                let (ring, p) = match mode {
                    PairMode::Jets { order, .. } => {
                        let jr = pair.ring().jets("t", order).expect("jets");
                        (jr.clone(), pair.over(&jr).expect("jet extension"))
                    }
                    _ => (pair.ring().clone(), pair.clone()),
                };
                let (samples, seed) = match mode {
                    PairMode::Random { samples, seed } | PairMode::Jets { samples, seed, .. } => (samples, seed),
                    _ => (256, 0),
                };
                let mut rec = sweep::random(
                    &name,
                    formula,
                    samples,
                    seed,
                    &mut |rng| {
                        Some([
                            random_vector(&ring, rng, n),
                            random_vector(&ring, rng, m),
                            random_vector(&ring, rng, n),
                            random_vector(&ring, rng, m),
                            random_vector(&ring, rng, n),
                        ])
                    },
                    &|a| p.linear_holds(s, &a[0], &a[1], &a[2], &a[3], &a[4])[k],
                    &|a| witness(["u", "v", "x", "y", "z"].iter().zip(a).map(|(k, v)| (k.to_string(), format_vector(&ring, v)))),
                );
                if mode == PairMode::Exhaustive {
                    rec.mode = Mode::Random;
                }
                rec
            }
        };
        out.push(rec);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn scalar_pair_values() {
        let r = q();
        let p = QuadraticJordanPair::scalar(&r);
        let v = |n: i64| vec![r.from_i64(n)];
        assert_eq!(p.q(Sign::Plus, &v(3), &v(2)), v(18));
        // B(y,b) = (1 - yb)^2
        assert_eq!(p.bergman(Sign::Plus, &v(1), &v(1)).data()[0], r.zero());
        assert_eq!(p.bergman(Sign::Plus, &v(2), &v(3)).data()[0], r.from_i64(25));
        assert_eq!(p.quasi_inverse(Sign::Plus, &v(1), &v(2)).unwrap(), v(-1));
        assert_eq!(p.quasi_inverse(Sign::Plus, &v(5), &v(0)).unwrap(), v(5));
        assert!(matches!(p.quasi_inverse(Sign::Plus, &v(1), &v(1)), Err(TangentError::NotQuasiInvertible)));
        // {xyx} = 2Q(x)y
        assert_eq!(p.d(Sign::Plus, &v(3), &v(5), &v(3)), scale(&r, &r.from_i64(2), &p.q(Sign::Plus, &v(3), &v(5))));
    }

    #[test]
    fn matrix_pair_is_xax() {
        let r = Ring::prime_field(3).unwrap();
        let p = QuadraticJordanPair::matrix(&r, 1, 2);
        assert_eq!(p.dims(), [2, 2]);
        let x = vec![r.from_i64(1), r.from_i64(2)];
        let a = vec![r.from_i64(2), r.from_i64(1)];
        // x is 2x1, a is 1x2: xax = x (a·x) with a·x = 2 + 2 = 4 = 1
        assert_eq!(p.q(Sign::Plus, &x, &a), x);
    }

    #[test]
    fn identities_hold_and_negative_control_fails() {
        let f2 = Ring::prime_field(2).unwrap();
        let p = QuadraticJordanPair::matrix(&f2, 1, 2);
        assert!(check_pair_identities(&p, PairMode::Exhaustive).iter().all(CheckRecord::passed));
        let r = q();
        let s = QuadraticJordanPair::scalar(&r);
        assert!(check_pair_identities(&s, PairMode::Symbolic).iter().all(CheckRecord::passed));
        // Q(x)a := a is homogeneous of degree 0
        let bad = QuadMap { diag: vec![Matrix::zeros(&r, 1, 1)], polar: vec![], constant: Some(Matrix::identity(&r, 1)) };
        let broken = s.with_quad_map(Sign::Plus, bad).unwrap();
        let recs = check_pair_identities(&broken, PairMode::Random { samples: 50, seed: 1 });
        let jp3 = recs.iter().find(|r| r.name.starts_with("JP3+")).unwrap();
        assert_eq!(jp3.status, Status::Fail);
        assert!(jp3.witness.is_some());
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::parse("Fp:3").unwrap();
        let p = QuadraticJordanPair::matrix(&r, 2, 1);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back = QuadraticJordanPair::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
