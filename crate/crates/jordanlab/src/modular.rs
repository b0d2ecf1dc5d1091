//! Integer-matrix words, the modular group acting through inversions of a
//! transversal triple, the `ZP¹` orbit map, and idempotent quadruples.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::axioms::Backend;
use crate::geometry::{GeomError, Geometry, GrasPoint, ProjectiveMap};
use crate::linalg::Matrix;
use crate::report::{witness, CheckRecord, Mode, Witness};
use crate::rings::Ring;

pub type Mat2 = [[i64; 2]; 2];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ModularError {
    #[error("cannot parse word `{0}`: {1}")]
    Parse(String, String),
    #[error("matrix {0:?} is not in GL(2,Z)")]
    NotUnimodular(Mat2),
    #[error("points are not pairwise transversal: {0}")]
    NotTransversal(String),
    #[error("quadruple is not a chain a ⊤ x ⊤ b ⊤ y: {0}")]
    NotChain(String),
    #[error("quadruple is not an idempotent (first failing condition {0})")]
    NotIdempotent(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gen {
    S,
    T,
    F,
    I,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::S, Gen::T, Gen::F, Gen::I];

    pub fn matrix(self) -> Mat2 {
        match self {
            Gen::S => [[0, 1], [-1, 0]],
            Gen::T => [[1, 1], [0, 1]],
            Gen::F => [[0, 1], [1, 0]],
            Gen::I => [[1, 0], [0, -1]],
        }
    }

    fn letter(self) -> char {
        match self {
            Gen::S => 'S',
            Gen::T => 'T',
            Gen::F => 'F',
            Gen::I => 'I',
        }
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Inverse of a matrix of determinant ±1.
pub fn mat_inv(m: &Mat2) -> Mat2 {
    let d = det(m);
    [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]]
}

/// Equality in `PGL(2,Z)`, i.e. up to sign.
pub fn pgl_eq(a: &Mat2, b: &Mat2) -> bool {
    a == b || a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| *x == -*y)
}

/// Word in `S, T, F, I` with integer exponents; the empty word is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(Gen, i64)>);

impl Word {
    pub fn gen(g: Gen) -> Word {
        Word(vec![(g, 1)])
    }

    pub fn pow(g: Gen, e: i64) -> Word {
        Word(vec![(g, e)])
    }

    pub fn then(mut self, other: &Word) -> Word {
        self.0.extend(other.0.iter().copied());
        self
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    /// Product of the generator matrices, left to right.
    pub fn matrix(&self) -> Mat2 {
        let mut acc = [[1, 0], [0, 1]];
        for &(g, e) in &self.0 {
            let m = if e >= 0 { g.matrix() } else { mat_inv(&g.matrix()) };
            for _ in 0..e.unsigned_abs() {
                acc = mat_mul(&acc, &m);
            }
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &(g, e) in &self.0 {
            match e {
                1 => write!(f, "{}", g.letter())?,
                -1 => write!(f, "{}", g.letter().to_ascii_lowercase())?,
                _ => write!(f, "{}^{}", g.letter(), e)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ModularError;

    /// Letters `S T F I`, lower case for inverses, each optionally followed by
    /// `^k`; `1` is the empty word.
    fn from_str(s: &str) -> Result<Word, ModularError> {
        let err = |m: &str| ModularError::Parse(s.to_string(), m.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() || chars == ['1'] {
            return Ok(Word::default());
        }
        let mut out = vec![];
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let g = match c.to_ascii_uppercase() {
                'S' => Gen::S,
                'T' => Gen::T,
                'F' => Gen::F,
                'I' => Gen::I,
                _ => return Err(err(&format!("unexpected `{c}`"))),
            };
            let mut e: i64 = if c.is_ascii_lowercase() { -1 } else { 1 };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let k: i64 = chars[start..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent"))?;
                e *= k;
            }
            out.push((g, e));
        }
        Ok(Word(out))
    }
}

/// A word whose matrix equals `m` exactly, found by the Euclidean algorithm.
pub fn word_for(m: &Mat2) -> Result<Word, ModularError> {
    if det(m).abs() != 1 {
        return Err(ModularError::NotUnimodular(*m));
    }
    // ops applied on the left: ops[k]···ops[1]·m = upper triangular
    let mut ops: Vec<Word> = vec![];
    let mut cur = *m;
    let s = Word::gen(Gen::S);
    while cur[1][0] != 0 {
        if cur[0][0].abs() < cur[1][0].abs() {
            ops.push(s.clone());
            cur = mat_mul(&Gen::S.matrix(), &cur);
            continue;
        }
        let q = cur[0][0].div_euclid(cur[1][0]);
        let t = Word::pow(Gen::T, -q);
        cur = mat_mul(&t.matrix(), &cur);
        ops.push(t);
    }
    let (a, b, d) = (cur[0][0], cur[0][1], cur[1][1]);
    let mut tail = if a * d == 1 { Word::pow(Gen::T, b * a) } else { Word::pow(Gen::T, -a * b).then(&Word::gen(Gen::I)) };
    if a == -1 {
        tail = Word::pow(Gen::S, 2).then(&tail);
    }
    let w = reverse_blocks(&ops).then(&tail);
    debug_assert_eq!(w.matrix(), *m);
    Ok(simplify(w))
}

fn reverse_blocks(ops: &[Word]) -> Word {
    let mut w = Word::default();
    for op in ops {
        w = w.then(&op.inverse());
    }
    w
}

fn simplify(w: Word) -> Word {
    let mut out: Vec<(Gen, i64)> = vec![];
    for (g, e) in w.0 {
        if let Some(last) = out.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        if e != 0 {
            out.push((g, e));
        }
    }
    Word(out)
}

/// The image of an integer matrix in `PGL(W)` for a geometry over `ring`.
pub fn matrix_map(ring: &Ring, m: &Mat2) -> Result<ProjectiveMap, GeomError> {
    ProjectiveMap::new(Matrix::from_i64(ring, &[&m[0], &m[1]]))
}

/// Generator images of a representation of `GL(2,Z)` or `PGL(2,Z)`.
pub struct Representation<'b, B: Backend> {
    backend: &'b B,
    images: [B::F; 4],
}

impl<'b, B: Backend> Representation<'b, B> {
    pub fn image(&self, g: Gen) -> &B::F {
        &self.images[Gen::ALL.iter().position(|&h| h == g).unwrap()]
    }

    pub fn eval(&self, w: &Word) -> B::F {
        let b = self.backend;
        let mut acc = b.compose(&self.images[0], &b.inverse(&self.images[0]));
        for &(g, e) in &w.0 {
            let f = if e >= 0 { self.image(g).clone() } else { b.inverse(self.image(g)) };
            for _ in 0..e.unsigned_abs() {
                acc = b.compose(&acc, &f);
            }
        }
        acc
    }

    pub fn eval_matrix(&self, m: &Mat2) -> Result<B::F, ModularError> {
        Ok(self.eval(&word_for(m)?))
    }

    fn identity(&self) -> B::F {
        self.eval(&Word::default())
    }

    fn relation(&self, name: &str, w: &str) -> CheckRecord {
        let word: Word = w.parse().expect("relation word");
        let ok = self.backend.is_identity(&self.eval(&word));
        CheckRecord::fact(name, &format!("{w} = 1"), ok, || witness([("word", w)]))
    }
}

fn mapped<B: Backend>(_: &B, f: Option<B::F>, what: &str) -> Result<B::F, ModularError> {
    f.ok_or_else(|| ModularError::NotTransversal(what.to_string()))
}

/// Translation `L^{xz}_a = J^{xx}_a J^{xz}_a`.
pub fn translation<B: Backend>(b: &B, x: &B::P, a: &B::P, z: &B::P) -> Option<B::F> {
    Some(b.compose(&b.j(x, a, x)?, &b.j(x, a, z)?))
}

/// A pairwise transversal triple and the homomorphism
/// `[S] ↦ J^{bb}_a J^{ab}_c`, `[T] ↦ L^{ca}_b`, `[I] ↦ J^{bb}_a`.
pub struct ModularTriple<'b, B: Backend> {
    pub a: B::P,
    pub b: B::P,
    pub c: B::P,
    pub rep: Representation<'b, B>,
}

impl<'b, B: Backend> ModularTriple<'b, B> {
    pub fn new(be: &'b B, a: B::P, b: B::P, c: B::P) -> Result<Self, ModularError> {
        for (p, q, n) in [(&a, &b, "a,b"), (&b, &c, "b,c"), (&a, &c, "a,c")] {
            if !be.transversal(p, q) {
                return Err(ModularError::NotTransversal(n.into()));
            }
        }
        let jbb_a = mapped(be, be.j(&b, &a, &b), "J^{bb}_a")?;
        let jab_c = mapped(be, be.j(&a, &c, &b), "J^{ab}_c")?;
        let s = be.compose(&jbb_a, &jab_c);
        let t = mapped(be, be.j(&c, &b, &a).zip(be.j(&a, &b, &a)).map(|(f, g)| be.compose(&f, &g)), "L^{ca}_b")?;
        let f = be.compose(&s, &jbb_a);
        let rep = Representation { backend: be, images: [s, t, f, jbb_a] };
        Ok(ModularTriple { a, b, c, rep })
    }

    fn backend(&self) -> &B {
        self.rep.backend
    }

    fn jm(&self, x: &B::P, a: &B::P, z: &B::P) -> Option<B::F> {
        self.backend().j(x, a, z)
    }

    /// Presentation relations, with the extra ones of `PGL(2,Z)`.
    pub fn relations(&self) -> Vec<CheckRecord> {
        let r = &self.rep;
        vec![
            r.relation("[S]^2=1", "S^2"),
            r.relation("([S][T])^3=1", "STSTST"),
            r.relation("[I]^2=1", "I^2"),
            r.relation("([I][S])^2=1", "ISIS"),
            r.relation("([I][T])^2=1", "ITIT"),
            r.relation("[F]=[S][I]", "Fis"),
        ]
    }

    /// The six elements of `𝐒` with their permutations of `{1,2,3}`
    /// and matrices.
    pub fn s3_elements(&self) -> Option<Vec<(&'static str, [u8; 3], Mat2, B::F)>> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let be = self.backend();
        let j12 = self.jm(a, c, b)?;
        let j23 = self.jm(b, a, c)?;
        let j13 = self.jm(a, b, c)?;
        Some(vec![
            ("id", [1, 2, 3], [[1, 0], [0, 1]], self.rep.identity()),
            ("J^{ab}_c", [2, 1, 3], [[0, 1], [1, 0]], j12.clone()),
            ("J^{bc}_a", [1, 3, 2], [[1, 0], [1, -1]], j23.clone()),
            ("J^{ac}_b", [3, 2, 1], [[-1, 1], [0, 1]], j13),
            ("J^{ab}_c J^{bc}_a", [2, 3, 1], [[1, -1], [1, 0]], be.compose(&j12, &j23)),
            ("J^{bc}_a J^{ab}_c", [3, 1, 2], [[0, 1], [-1, 1]], be.compose(&j23, &j12)),
        ])
    }

    /// `𝐒 ≅ S₃`: multiplication table, matrix column, and the 3-cycle.
    pub fn s3_checks(&self) -> Vec<CheckRecord> {
        let be = self.backend();
        let Some(els) = self.s3_elements() else {
            return vec![CheckRecord::fact("S3-defined", "all elements of S are defined", false, Witness::new)];
        };
        let perm_mul = |p: &[u8; 3], q: &[u8; 3]| -> [u8; 3] { [p[q[0] as usize - 1], p[q[1] as usize - 1], p[q[2] as usize - 1]] };
        let mut table = CheckRecord::new("S3-table", "S -> S3 is a homomorphism", Mode::Exhaustive);
        'outer: for (ni, pi, _, fi) in &els {
            for (nj, pj, _, fj) in &els {
                table.cases += 1;
                let pk = perm_mul(pi, pj);
                let (nk, _, _, fk) = els.iter().find(|e| e.1 == pk).unwrap();
                if !be.map_eq(&be.compose(fi, fj), fk) {
                    table = table.fail_with(witness([("left", *ni), ("right", *nj), ("expected", *nk)]));
                    break 'outer;
                }
            }
        }
        let mut mats = CheckRecord::new("S3-matrices", "each element of S is the image of its matrix", Mode::Exhaustive);
        for (n, _, m, f) in &els {
            mats.cases += 1;
            let ok = self.rep.eval_matrix(m).map(|g| be.map_eq(&g, f)).unwrap_or(false);
            if !ok {
                mats = mats.fail_with(witness([("element", *n)]));
                break;
            }
        }
        let j12 = &els[1].3;
        let j13 = &els[3].3;
        let cyc = be.compose(j12, j13);
        let cube = be.compose(&be.compose(&cyc, &cyc), &cyc);
        let three = CheckRecord::fact("S3-3-cycle", "(J^{ab}_c J^{ac}_b)^3 = id", be.is_identity(&cube), Witness::new);
        let distinct = (0..6).all(|i| (0..i).all(|j| !be.map_eq(&els[i].3, &els[j].3)));
        let faithful = CheckRecord::fact("S3-faithful", "the six elements are distinct", distinct, Witness::new);
        vec![table, mats, three, faithful]
    }

    /// The six rows of the correspondence table, as (element, matrix).
    pub fn table_rows(&self) -> Option<Vec<(&'static str, Mat2, B::F)>> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let be = self.backend();
        let l = |x: &B::P, w: &B::P, z: &B::P| Some(be.compose(&be.j(x, w, z)?, &be.j(z, w, z)?));
        Some(vec![
            ("J^{aa}_b", [[-1, 0], [0, 1]], self.jm(a, b, a)?),
            ("J^{bb}_c", [[-1, 2], [0, 1]], self.jm(b, c, b)?),
            ("J^{cc}_a", [[-1, 0], [-2, 1]], self.jm(c, a, c)?),
            ("L^{ba}_c", [[2, -1], [1, 0]], l(b, c, a)?),
            ("L^{ca}_b", [[1, 1], [0, 1]], l(c, b, a)?),
            ("L^{bc}_a", [[1, 0], [-1, 1]], Some(be.compose(&be.j(b, a, b)?, &be.j(b, a, c)?))?),
        ])
    }

    pub fn table_checks(&self) -> Vec<CheckRecord> {
        let be = self.backend();
        let Some(rows) = self.table_rows() else {
            return vec![CheckRecord::fact("table-defined", "table rows are defined", false, Witness::new)];
        };
        let mut out: Vec<CheckRecord> = rows
            .iter()
            .map(|(n, m, f)| {
                let ok = self.rep.eval_matrix(m).map(|g| be.map_eq(&g, f)).unwrap_or(false);
                CheckRecord::fact(&format!("row {n}"), &format!("{n} = phi({m:?})"), ok, || witness([("row", *n)]))
            })
            .collect();
        out.push(self.printed_translation_row());
        out
    }

    /// The matrix `[[1,-1],[1,0]]` sometimes listed for `L^{ba}_c` moves
    /// `c`, so it cannot be a translation of `U_c`. Passes when that
    /// discrepancy is observed, with `c` and its image as witness.
    pub fn printed_translation_row(&self) -> CheckRecord {
        let be = self.backend();
        let printed = self.rep.eval_matrix(&[[1, -1], [1, 0]]).expect("unimodular");
        let img = be.apply(&printed, &self.c);
        let moved = img != self.c;
        let mut r = CheckRecord::fact("row L^{ba}_c printed", "phi([[1,-1],[1,0]]) moves c, unlike L^{ba}_c", moved, Witness::new);
        if moved {
            r.witness = Some(witness([("c", be.label(&self.c)), ("image", be.label(&img))]));
        }
        r
    }

    /// `J^{ca}_b` fixes `J^{aa}_c(b)`, and `J^{ac}_b = J^{ac}_{J^{aa}_c(b)}`.
    pub fn fixed_point_relations(&self) -> Vec<CheckRecord> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let be = self.backend();
        let p = self.jm(a, c, a).map(|f| be.apply(&f, b));
        let fp = p.as_ref().and_then(|p| Some(be.apply(&self.jm(c, b, a)?, p) == *p)).unwrap_or(false);
        let jp = p.as_ref().and_then(|p| Some(be.map_eq(&self.jm(a, b, c)?, &self.jm(a, p, c)?))).unwrap_or(false);
        vec![
            CheckRecord::fact("FP!", "J^{ca}_b(J^{aa}_c(b)) = J^{aa}_c(b)", fp, Witness::new),
            CheckRecord::fact("JP!", "J^{ac}_b = J^{ac}_{J^{aa}_c(b)}", jp, Witness::new),
        ]
    }

    pub fn all_checks(&self) -> Vec<CheckRecord> {
        let mut out = self.relations();
        out.extend(self.s3_checks());
        out.extend(self.table_checks());
        out.extend(self.fixed_point_relations());
        out
    }

    /// `Φ([p:q]) = φ(M)(a)` for any `M ∈ GL(2,Z)` with second column `(p,q)`.
    pub fn phi(&self, p: i64, q: i64) -> Result<B::P, ModularError> {
        let m = column_completion(p, q).ok_or(ModularError::NotUnimodular([[0, p], [0, q]]))?;
        Ok(self.backend().apply(&self.rep.eval_matrix(&m)?, &self.a))
    }
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A matrix of determinant 1 with second column `(p,q)`, for primitive `(p,q)`.
pub fn column_completion(p: i64, q: i64) -> Option<Mat2> {
    let (g, al, be) = egcd(p, q);
    let (al, be) = match g {
        1 => (al, be),
        -1 => (-al, -be),
        _ => return None,
    };
    // al p + be q = 1
    Some([[be, p], [-al, q]])
}

/// The subgeometry generated by a triple and its parametrization by `ZP¹`.
pub struct Orbit<P> {
    pub closure: Vec<P>,
    /// `([p:q], Φ([p:q]))` for primitive representatives up to the depth.
    pub images: Vec<((i64, i64), P)>,
    pub checks: Vec<CheckRecord>,
}

pub fn primitive_points(depth: i64) -> Vec<(i64, i64)> {
    let mut out = vec![];
    for p in -depth..=depth {
        for q in -depth..=depth {
            let first = if p != 0 { p } else { q };
            if first > 0 && egcd(p, q).0.abs() == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Closure of `{a,b,c}` under all defined inversions, then `Φ` on
/// `ZP¹` representatives with its equivariance checks.
pub fn orbit_map<B: Backend>(tri: &ModularTriple<'_, B>, depth: i64, cap: usize) -> Orbit<B::P> {
    let be = tri.backend();
    let mut set = vec![tri.a.clone(), tri.b.clone(), tri.c.clone()];
    let mut changed = true;
    while changed && set.len() <= cap {
        changed = false;
        let snapshot = set.clone();
        for x in &snapshot {
            for w in &snapshot {
                for z in &snapshot {
                    let Some(f) = be.j(x, w, z) else { continue };
                    for y in &snapshot {
                        let img = be.apply(&f, y);
                        if !set.contains(&img) {
                            set.push(img);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    let reps = primitive_points(depth);
    let mut images = vec![];
    let mut checks = vec![];
    let label = |p: &B::P| be.label(p);
    let base = [((0, 1), &tri.a), ((1, 0), &tri.b), ((1, 1), &tri.c)];
    let base_ok = base.iter().all(|&((p, q), want)| tri.phi(p, q).map(|v| v == *want).unwrap_or(false));
    checks.push(CheckRecord::fact("Phi-triple", "Phi(0)=a, Phi(inf)=b, Phi(1)=c", base_ok, Witness::new));
    let stab_ok = [[[1, 0], [1, 1]], [[1, 0], [0, -1]], [[-1, 0], [0, 1]]]
        .iter()
        .all(|m| tri.rep.eval_matrix(m).map(|f| be.apply(&f, &tri.a) == tri.a).unwrap_or(false));
    checks.push(CheckRecord::fact("Phi-stabilizer", "the stabilizer of [0:1] fixes a", stab_ok, Witness::new));
    let mut inside = CheckRecord::new("Phi-in-closure", "Phi(ZP^1) lies in <P>", Mode::Exhaustive);
    let mut equi = CheckRecord::new("Phi-equivariance", "Phi(g.v) = phi(g) Phi(v) for g in S,T,F,I", Mode::Exhaustive);
    for &(p, q) in &reps {
        let Ok(v) = tri.phi(p, q) else { continue };
        inside.cases += 1;
        if inside.witness.is_none() && !set.contains(&v) {
            inside = inside.fail_with(witness([("p", p.to_string()), ("q", q.to_string())]));
        }
        for g in Gen::ALL {
            let m = g.matrix();
            let (gp, gq) = (m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q);
            equi.cases += 1;
            let ok = tri.phi(gp, gq).map(|w| w == be.apply(tri.rep.image(g), &v)).unwrap_or(false);
            if !ok && equi.witness.is_none() {
                equi = equi.fail_with(witness([("p", p.to_string()), ("q", q.to_string()), ("g", format!("{g:?}")), ("image", label(&v))]));
            }
        }
        images.push(((p, q), v));
    }
    checks.push(inside);
    checks.push(equi);
    checks.extend(tri.fixed_point_relations());
    Orbit { closure: set, images, checks }
}

// ---- idempotents ----

/// A chain `a ⊤ x ⊤ b ⊤ y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadruple<P> {
    pub a: P,
    pub x: P,
    pub b: P,
    pub y: P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Idempotency {
    None,
    Idempotent,
    Strong,
}

impl fmt::Display for Idempotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Idempotency::None => "none",
            Idempotency::Idempotent => "idempotent",
            Idempotency::Strong => "strong",
        })
    }
}

/// The points `c = J^{aa}_x(b)`, `z = J^{yy}_b(x)`, `d = J^{xy}_b(a)`,
/// `w = J^{ab}_x(y)`.
pub struct DerivedPoints<P> {
    pub c: P,
    pub z: P,
    pub d: P,
    pub w: P,
}

fn chain<B: Backend>(be: &B, q: &Quadruple<B::P>) -> Result<(), ModularError> {
    for (p, r, n) in [(&q.a, &q.x, "a,x"), (&q.x, &q.b, "x,b"), (&q.b, &q.y, "b,y")] {
        if !be.transversal(p, r) {
            return Err(ModularError::NotChain(n.into()));
        }
    }
    Ok(())
}

struct Maps<F> {
    jaa_x: F,
    jxy_b: F,
    jbb_y: F,
    jyy_b: F,
    jab_x: F,
}

fn maps<B: Backend>(be: &B, q: &Quadruple<B::P>) -> Maps<B::F> {
    let (a, x, b, y) = (&q.a, &q.x, &q.b, &q.y);
    Maps {
        jaa_x: be.j(a, x, a).unwrap(),
        jxy_b: be.j(x, b, y).unwrap(),
        jbb_y: be.j(b, y, b).unwrap(),
        jyy_b: be.j(y, b, y).unwrap(),
        jab_x: be.j(a, x, b).unwrap(),
    }
}

pub fn derived_points<B: Backend>(be: &B, q: &Quadruple<B::P>) -> Result<DerivedPoints<B::P>, ModularError> {
    chain(be, q)?;
    let m = maps(be, q);
    Ok(DerivedPoints { c: be.apply(&m.jaa_x, &q.b), z: be.apply(&m.jyy_b, &q.x), d: be.apply(&m.jxy_b, &q.a), w: be.apply(&m.jab_x, &q.y) })
}

/// The eight fixed-point conditions, in order, with their outcomes.
pub fn idempotent_conditions<B: Backend>(be: &B, q: &Quadruple<B::P>) -> Result<Vec<(&'static str, bool)>, ModularError> {
    let dp = derived_points(be, q)?;
    let m = maps(be, q);
    let fixes = |f: &B::F, p: &B::P| be.apply(f, p) == *p;
    Ok(vec![
        ("J^{aa}_x(y) = y", fixes(&m.jaa_x, &q.y)),
        ("J^{xy}_b(c) = c", fixes(&m.jxy_b, &dp.c)),
        ("J^{aa}_x(d) = d", fixes(&m.jaa_x, &dp.d)),
        ("J^{xy}_b(w) = w", fixes(&m.jxy_b, &dp.w)),
        ("J^{bb}_y(a) = a", fixes(&m.jbb_y, &q.a)),
        ("J^{ab}_x(z) = z", fixes(&m.jab_x, &dp.z)),
        ("J^{yy}_b(w) = w", fixes(&m.jyy_b, &dp.w)),
        ("J^{ab}_x(d) = d", fixes(&m.jab_x, &dp.d)),
    ])
}

/// `J^{yx}_c = J^{ad}_w`, false when either side is undefined.
pub fn strong_condition<B: Backend>(be: &B, q: &Quadruple<B::P>) -> Result<bool, ModularError> {
    let dp = derived_points(be, q)?;
    Ok(match (be.j(&q.y, &dp.c, &q.x), be.j(&q.a, &dp.w, &dp.d)) {
        (Some(f), Some(g)) => be.map_eq(&f, &g),
        _ => false,
    })
}

pub fn is_idempotent<B: Backend>(be: &B, q: &Quadruple<B::P>) -> Result<(Idempotency, Vec<CheckRecord>), ModularError> {
    let conds = idempotent_conditions(be, q)?;
    let mut recs: Vec<CheckRecord> = conds.iter().map(|(n, ok)| CheckRecord::fact(n, n, *ok, Witness::new)).collect();
    if !conds.iter().all(|c| c.1) {
        return Ok((Idempotency::None, recs));
    }
    let strong = strong_condition(be, q)?;
    recs.push(CheckRecord::fact("strong", "J^{yx}_{J^{aa}_x(b)} = J^{a,J^{xy}_b(a)}_{J^{ab}_x(y)}", strong, Witness::new));
    Ok((if strong { Idempotency::Strong } else { Idempotency::Idempotent }, recs))
}

/// Generators `A = L^{ab}_x`, `B = L^{xy}_b`, `J = J^{bb}_x`, the central
/// elements `Z`, `Z′`, and the `GL(2,Z)` representation they define.
pub struct IdempotentRep<'b, B: Backend> {
    pub kind: Idempotency,
    pub a_gen: B::F,
    pub b_gen: B::F,
    pub j_gen: B::F,
    pub z: B::F,
    pub z_prime: B::F,
    pub rep: Representation<'b, B>,
    pub checks: Vec<CheckRecord>,
}

pub fn idempotent_rep<'b, B: Backend>(be: &'b B, q: &Quadruple<B::P>) -> Result<IdempotentRep<'b, B>, ModularError> {
    let conds = idempotent_conditions(be, q)?;
    if let Some((n, _)) = conds.iter().find(|c| !c.1) {
        return Err(ModularError::NotIdempotent((*n).to_string()));
    }
    let strong = strong_condition(be, q)?;
    let kind = if strong { Idempotency::Strong } else { Idempotency::Idempotent };
    let (a, x, b, y) = (&q.a, &q.x, &q.b, &q.y);
    let m = maps(be, q);
    let c = |f: &B::F, g: &B::F| be.compose(f, g);
    let pw = |f: &B::F, n: usize| (1..n).fold(f.clone(), |acc, _| c(&acc, f));
    let ag = translation(be, a, x, b).unwrap();
    let bg = translation(be, x, b, y).unwrap();
    let jg = be.j(b, x, b).unwrap();
    let z = pw(&c(&m.jxy_b, &m.jaa_x), 2);
    let zp = pw(&c(&ag, &bg), 3);
    let w = c(&c(&ag, &bg), &ag);
    let bwa = c(&c(&bg, &ag), &bg);
    let is_id = |f: &B::F| be.is_identity(f);
    let fixes_all = |f: &B::F| [a, x, b, y].iter().all(|p| be.apply(f, p) == **p);
    let central = |f: &B::F| [&ag, &bg, &jg].iter().all(|g| be.map_eq(&c(f, g), &c(g, f)));
    let fact = |n: &str, ok: bool| CheckRecord::fact(n, n, ok, Witness::new);
    let mut checks = vec![
        fact("(ABA)^4 = 1", is_id(&pw(&w, 4))),
        fact("J^2 = 1", is_id(&pw(&jg, 2))),
        fact("(JA)^2 = 1", is_id(&pw(&c(&jg, &ag), 2))),
        fact("(JB)^2 = 1", is_id(&pw(&c(&jg, &bg), 2))),
        fact("W^2 = Z", be.map_eq(&pw(&w, 2), &z)),
        fact("Z fixes a,x,b,y", fixes_all(&z)),
        fact("Z' fixes a,x,b,y", fixes_all(&zp)),
        fact("Z central", central(&z)),
        fact("Z' central", central(&zp)),
        fact("Z^2 = 1", is_id(&pw(&z, 2))),
        fact("Z'^2 = 1", is_id(&pw(&zp, 2))),
        fact("ABA = BAB iff strong", be.map_eq(&w, &bwa) == strong),
        fact("ZZ' = 1 iff strong", is_id(&c(&z, &zp)) == strong),
    ];
    // T ↦ B⁻¹, U = [[1,0],[1,1]] ↦ A, diag(−1,1) ↦ J; S = T U⁻¹ T, I = S² diag(−1,1), F = S³ I.
    let binv = be.inverse(&bg);
    let s = c(&c(&binv, &be.inverse(&ag)), &binv);
    let i = c(&pw(&s, 2), &jg);
    let f = c(&pw(&s, 3), &i);
    let rep = Representation { backend: be, images: [s, binv, f, i] };
    if strong {
        let l = |x0: &B::P, w0: &B::P, z0: &B::P| translation(be, x0, w0, z0);
        let lam = c(&ag, &bg);
        let jxy_jaa = c(&m.jxy_b, &m.jaa_x);
        let rows: Vec<(&str, Mat2, Option<B::F>)> = vec![
            ("J^{bb}_x", [[-1, 0], [0, 1]], Some(jg.clone())),
            ("J^{xy}_b", [[-1, 1], [0, 1]], Some(m.jxy_b.clone())),
            ("L^{yx}_b", [[1, 1], [0, 1]], l(y, b, x)),
            ("J^{bb}_y", [[-1, 2], [0, 1]], Some(m.jbb_y.clone())),
            ("L^{ab}_x", [[1, 0], [1, 1]], Some(ag.clone())),
            ("J^{ab}_x", [[-1, 0], [-1, 1]], Some(m.jab_x.clone())),
            ("J^{aa}_x", [[-1, 0], [-2, 1]], Some(m.jaa_x.clone())),
            ("Lambda", [[1, -1], [1, 0]], Some(lam.clone())),
            ("Lambda^3", [[-1, 0], [0, -1]], Some(pw(&lam, 3))),
            ("W", [[0, -1], [1, 0]], Some(w.clone())),
            ("J^{xy}_b J^{aa}_x", [[-1, 1], [-2, 1]], Some(jxy_jaa.clone())),
            ("(J^{xy}_b J^{aa}_x)^2", [[-1, 0], [0, -1]], Some(pw(&jxy_jaa, 2))),
        ];
        for (n, mat, f) in rows {
            let ok = f.map(|f| rep.eval_matrix(&mat).map(|g| be.map_eq(&g, &f)).unwrap_or(false)).unwrap_or(false);
            checks.push(CheckRecord::fact(&format!("row {n}"), &format!("{n} = psi({mat:?})"), ok, Witness::new));
        }
    }
    Ok(IdempotentRep { kind, a_gen: ag, b_gen: bg, j_gen: jg, z, z_prime: zp, rep, checks })
}

/// Counts of chains, idempotents and strong idempotents of a finite geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Census {
    pub chains: u64,
    pub idempotents: u64,
    pub strong: u64,
    /// First non-strong idempotent found, as labels `[a, x, b, y]`.
    pub non_strong_example: Option<[String; 4]>,
}

/// Exhaustive search for idempotents over all chains.
pub fn idempotent_census<B: Backend>(be: &B) -> Option<Census> {
    use rayon::prelude::*;
    let pts = be.enumerate()?;
    let parts: Vec<Census> = pts
        .par_iter()
        .map(|a| {
            let mut cen = Census::default();
            for x in pts.iter().filter(|x| be.transversal(a, x)) {
                for b in pts.iter().filter(|b| be.transversal(x, b)) {
                    for y in pts.iter().filter(|y| be.transversal(b, y)) {
                        cen.chains += 1;
                        let q = Quadruple { a: a.clone(), x: x.clone(), b: b.clone(), y: y.clone() };
                        if !idempotent_conditions(be, &q).map(|v| v.iter().all(|c| c.1)).unwrap_or(false) {
                            continue;
                        }
                        cen.idempotents += 1;
                        if strong_condition(be, &q).unwrap_or(false) {
                            cen.strong += 1;
                        } else if cen.non_strong_example.is_none() {
                            cen.non_strong_example = Some([be.label(a), be.label(x), be.label(b), be.label(y)]);
                        }
                    }
                }
            }
            cen
        })
        .collect();
    Some(parts.into_iter().fold(Census::default(), |mut acc, p| {
        acc.chains += p.chains;
        acc.idempotents += p.idempotents;
        acc.strong += p.strong;
        if acc.non_strong_example.is_none() {
            acc.non_strong_example = p.non_strong_example;
        }
        acc
    }))
}

/// `W = E ⊕ u ⊕ v ⊕ H` with `w` the diagonal of `u ⊕ v`, and the chain
/// `a = w ⊕ H`, `x = E ⊕ u`, `b = H ⊕ v`, `y = E ⊕ w`.
pub struct Peirce {
    pub geometry: Geometry,
    pub quadruple: Quadruple<GrasPoint>,
    dims: (usize, usize, usize),
}

pub fn peirce_example(ring: &Ring, e: usize, u: usize, v: usize, h: usize) -> Result<Peirce, ModularError> {
    if u != v || u == 0 {
        return Err(ModularError::Dimension(format!("u and v need equal positive rank, got {u} and {v}")));
    }
    let n = e + 2 * u + h;
    let geometry = Geometry::full(ring.clone(), n)?;
    let unit = |i: usize| (0..n).map(|r| ring.from_i64((r == i) as i64)).collect::<Vec<_>>();
    let diag = |i: usize| (0..n).map(|r| ring.from_i64((r == e + i || r == e + u + i) as i64)).collect::<Vec<_>>();
    let ee: Vec<_> = (0..e).map(unit).collect();
    let uu: Vec<_> = (0..u).map(|i| unit(e + i)).collect();
    let vv: Vec<_> = (0..u).map(|i| unit(e + u + i)).collect();
    let hh: Vec<_> = (0..h).map(|i| unit(e + 2 * u + i)).collect();
    let ww: Vec<_> = (0..u).map(diag).collect();
    let span = |parts: &[&Vec<Vec<crate::rings::Value>>]| -> Result<GrasPoint, GeomError> {
        let cols: Vec<Vec<crate::rings::Value>> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        geometry.point(&Matrix::from_columns(ring, n, &cols))
    };
    let quadruple = Quadruple { a: span(&[&ww, &hh])?, x: span(&[&ee, &uu])?, b: span(&[&hh, &vv])?, y: span(&[&ee, &ww])? };
    Ok(Peirce { geometry, quadruple, dims: (e, u, h) })
}

impl Peirce {
    fn block(&self, m: &Mat2, h_scalar: i64) -> ProjectiveMap {
        let (e, u, h) = self.dims;
        let r = self.geometry.ring();
        let n = e + 2 * u + h;
        let mut mat = Matrix::identity(r, n);
        for i in 0..u {
            mat.set(e + i, e + i, r.from_i64(m[0][0]));
            mat.set(e + i, e + u + i, r.from_i64(m[0][1]));
            mat.set(e + u + i, e + i, r.from_i64(m[1][0]));
            mat.set(e + u + i, e + u + i, r.from_i64(m[1][1]));
        }
        for i in e + 2 * u..n {
            mat.set(i, i, r.from_i64(h_scalar));
        }
        ProjectiveMap::new_unchecked(mat)
    }

    /// `diag(1_E, [[a·1, b·1],[c·1, d·1]], 1_H)`.
    pub fn embed(&self, m: &Mat2) -> ProjectiveMap {
        self.block(m, 1)
    }

    /// `diag(1_E, F m F, det(m)·1_H)`, the form the representation of the
    /// idempotent actually takes.
    pub fn realization(&self, m: &Mat2) -> ProjectiveMap {
        let f = Gen::F.matrix();
        self.block(&mat_mul(&mat_mul(&f, m), &f), det(m))
    }

    /// Generator images of the representation against the block forms.
    pub fn embedding_checks<B: Backend<F = ProjectiveMap>>(&self, rep: &Representation<'_, B>) -> Vec<CheckRecord> {
        let mut out = vec![];
        for g in Gen::ALL {
            let ok = rep.backend.map_eq(&self.realization(&g.matrix()), rep.image(g));
            out.push(CheckRecord::fact(&format!("realization {g:?}"), "psi(g) = diag(1, FgF, det g)", ok, Witness::new));
        }
        for g in Gen::ALL {
            let ok = rep.backend.map_eq(&self.embed(&g.matrix()), rep.image(g));
            out.push(CheckRecord::fact(&format!("block {g:?}"), "psi(g) = diag(1, g, 1)", ok, Witness::new));
        }
        out
    }

    /// Idempotency, the representation and its relations, the embedding,
    /// and how `Z` acts.
    pub fn checks(&self) -> Result<(Idempotency, Vec<CheckRecord>), ModularError> {
        let g = &self.geometry;
        let be = crate::axioms::GeometryBackend::new(g.clone());
        let q = &self.quadruple;
        let (kind, mut out) = is_idempotent(&be, q)?;
        out.push(CheckRecord::fact("a not transversal to y", "a and y are not transversal", !g.transversal(&q.a, &q.y), Witness::new));
        let rep = idempotent_rep(&be, q)?;
        out.extend(rep.checks.iter().cloned());
        out.extend(self.embedding_checks(&rep.rep));
        let gens = [rep.a_gen.clone(), rep.b_gen.clone(), rep.j_gen.clone()];
        let gens: Vec<ProjectiveMap> = gens.iter().flat_map(|f| [f.clone(), f.inverse()]).collect();
        let mut orbit = vec![q.a.clone(), q.x.clone(), q.b.clone(), q.y.clone()];
        let mut i = 0;
        while i < orbit.len() && orbit.len() < 256 {
            for f in &gens {
                let p = f.apply(&orbit[i]);
                if !orbit.contains(&p) {
                    orbit.push(p);
                }
            }
            i += 1;
        }
        let trivial = orbit.iter().all(|p| rep.z.apply(p) == *p);
        out.push(CheckRecord::fact("Z trivial on orbit", "Z fixes the orbit of a,x,b,y", trivial, || witness([("orbit size", orbit.len().to_string())])));
        let moved = match be.enumerate() {
            Some(pts) => pts.into_iter().find(|p| rep.z.apply(p) != *p),
            None => probe_points(g).into_iter().find(|p| rep.z.apply(p) != *p),
        };
        let mut rec = CheckRecord::fact("Z nontrivial on X", "Z moves some point of the Grassmannian", moved.is_some(), Witness::new);
        if let Some(p) = moved {
            rec.witness = Some(witness([("point", g.label(&p)), ("image", g.label(&rep.z.apply(&p)))]));
        }
        out.push(rec);
        Ok((kind, out))
    }
}

/// Spans of `e_i` and `e_i + e_j`, used to probe maps on infinite geometries.
fn probe_points(g: &Geometry) -> Vec<GrasPoint> {
    let n = g.dim();
    let r = g.ring();
    let mut out = vec![];
    for i in 0..n {
        for j in i..n {
            let col: Vec<_> = (0..n).map(|k| r.from_i64((k == i || k == j) as i64)).collect();
            if let Ok(p) = g.point(&Matrix::from_columns(r, n, &[col])) {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{GeometryBackend, TableBackend};

    #[test]
    fn words_parse_and_decompose() {
        let w: Word = "ST^3sI^-2".parse().unwrap();
        assert_eq!(w.to_string(), "ST^3sI^-2");
        assert_eq!("1".parse::<Word>().unwrap(), Word::default());
        assert!("SX".parse::<Word>().is_err());
        for m in [[[1, 0], [0, 1]], [[-1, 0], [0, -1]], [[2, 1], [1, 1]], [[0, -1], [1, 0]], [[5, 3], [3, 2]], [[-1, 2], [0, 1]], [[7, -4], [-2, 1]]] {
            assert_eq!(word_for(&m).unwrap().matrix(), m, "{m:?}");
        }
        assert!(word_for(&[[2, 0], [0, 1]]).is_err());
    }

    fn line(p: u64) -> GeometryBackend {
        GeometryBackend::new(format!("projline:Fp:{p}").parse().unwrap())
    }

    #[test]
    fn triple_on_projective_lines() {
        for p in [2, 3, 5, 7] {
            let be = line(p);
            let g = be.geometry().clone();
            let pt = |s: &str| g.parse_point(s).unwrap();
            let tri = ModularTriple::new(&be, pt("0"), pt("inf"), pt("1")).unwrap();
            let rs = tri.all_checks();
            let bad: Vec<_> = rs.iter().filter(|r| !r.passed()).map(|r| r.name.clone()).collect();
            // S3 is faithful whenever the line has at least 3 points
            assert!(bad.is_empty(), "p={p}: {bad:?}");
            let r = g.ring();
            for gen in Gen::ALL {
                assert_eq!(*tri.rep.image(gen), matrix_map(r, &gen.matrix()).unwrap(), "{gen:?}");
            }
            let t5 = tri.rep.eval(&"T^5".parse().unwrap());
            assert_eq!(be.is_identity(&t5), p == 5);
        }
    }

    #[test]
    fn orbit_covers_small_line() {
        let be = TableBackend::from_geometry(&"projline:Fp:3".parse().unwrap()).unwrap();
        let t = be.table();
        let tri = ModularTriple::new(&be, t.parse_index("0").unwrap(), t.parse_index("inf").unwrap(), t.parse_index("1").unwrap()).unwrap();
        let o = orbit_map(&tri, 4, 100);
        assert_eq!(o.closure.len(), 4);
        assert!(o.checks.iter().all(CheckRecord::passed), "{:?}", o.checks);
    }

    #[test]
    fn triple_quadruple_is_strong() {
        let be = line(5);
        let g = be.geometry().clone();
        let pt = |s: &str| g.parse_point(s).unwrap();
        let q = Quadruple { a: pt("0"), x: pt("1"), b: pt("inf"), y: pt("0") };
        assert_eq!(is_idempotent(&be, &q).unwrap().0, Idempotency::Strong);
        let rep = idempotent_rep(&be, &q).unwrap();
        assert!(rep.checks.iter().all(CheckRecord::passed), "{:?}", rep.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        let bad = Quadruple { a: pt("0"), x: pt("1"), b: pt("inf"), y: pt("2") };
        assert_eq!(is_idempotent(&be, &bad).unwrap().0, Idempotency::None);
        assert!(matches!(idempotent_rep(&be, &bad), Err(ModularError::NotIdempotent(_))));
    }

    #[test]
    fn peirce_block_example() {
        for (ring, z_moves) in [("Q", true), ("Fp:2", false)] {
            let pe = peirce_example(&Ring::parse(ring).unwrap(), 1, 1, 1, 1).unwrap();
            let (kind, recs) = pe.checks().unwrap();
            assert_eq!(kind, Idempotency::Strong);
            let get = |n: &str| recs.iter().find(|r| r.name == n).unwrap().passed();
            for n in ["(ABA)^4 = 1", "ABA = BAB iff strong", "Z fixes a,x,b,y", "Z^2 = 1", "Z trivial on orbit", "a not transversal to y"] {
                assert!(get(n), "{ring}: {n}");
            }
            for g in ["S", "T", "F", "I"] {
                assert!(get(&format!("realization {g}")), "{ring}: {g}");
            }
            // -1 is trivial in characteristic 2
            assert_eq!(get("Z nontrivial on X"), z_moves, "{ring}");
            assert!(!get("block T"));
        }
        let pe = peirce_example(&Ring::parse("Q").unwrap(), 1, 1, 1, 1).unwrap();
        let rot = pe.embed(&[[0, 1], [-1, 0]]);
        let r = pe.geometry.ring();
        assert_eq!(*rot.matrix(), Matrix::from_i64(r, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 0], &[0, 0, 0, 1]]).scale(&r.one()));
        assert!(peirce_example(&Ring::parse("Q").unwrap(), 1, 1, 2, 1).is_err());
    }
}
