//! Finite torsors, inversive actions, reflection spaces and symmetry actions,
//! given by explicit tables.

use serde::{Deserialize, Serialize};

use crate::report::{witness, CheckRecord, Status};
use crate::sweep;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TorsorError {
    #[error("table shape: {0}")]
    Shape(String),
    #[error("z-dependence of a translation at x={x}, v={v}, z={z}, z'={z2}")]
    ZDependence { x: u32, v: u32, z: u32, z2: u32 },
}

/// A finite ternary structure and/or its action on a second set.
///
/// `law[x][y][z] = (xyz)`; `reflection[x][y] = s_x(y)`;
/// `action[x][z]` is the permutation `M_{xz}` of the target;
/// `symmetry[x]` is the permutation `S_x` of the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct TernaryTable {
    pub carrier: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflection: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Torsor,
    CommutativeTorsor,
    InversiveAction,
    ReflectionSpace,
    SymmetryAction,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Kind, String> {
        Ok(match s {
            "torsor" => Kind::Torsor,
            "commutative-torsor" => Kind::CommutativeTorsor,
            "inversive-action" => Kind::InversiveAction,
            "reflection-space" => Kind::ReflectionSpace,
            "symmetry-action" => Kind::SymmetryAction,
            _ => return Err(format!("unknown structure kind `{s}`")),
        })
    }
}

fn compose(f: &[u32], g: &[u32]) -> Vec<u32> {
    g.iter().map(|&i| f[i as usize]).collect()
}

fn is_perm(p: &[u32], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&i| (i as usize) < n && !std::mem::replace(&mut seen[i as usize], true))
}

impl TernaryTable {
    /// Table of a ternary law given as a function.
    pub fn from_law(n: usize, f: impl Fn(u32, u32, u32) -> u32) -> TernaryTable {
        let n32 = n as u32;
        let law = (0..n32).map(|x| (0..n32).map(|y| (0..n32).map(|z| f(x, y, z)).collect()).collect()).collect();
        TernaryTable { carrier: n, law: Some(law), ..Default::default() }
    }

    /// `x - y + z` on `Z/n`.
    pub fn cyclic(n: usize) -> TernaryTable {
        let m = n as u32;
        TernaryTable::from_law(n, |x, y, z| (x + m - y + z) % m)
    }

    /// Group torsor `x y⁻¹ z` from a multiplication table and inverse map.
    pub fn group(mul: &[Vec<u32>], inv: &[u32]) -> TernaryTable {
        TernaryTable::from_law(inv.len(), |x, y, z| mul[mul[x as usize][inv[y as usize] as usize] as usize][z as usize])
    }

    /// Adds the regular inversive action `M_{xz} = m_{xz}`.
    pub fn with_regular_action(mut self) -> TernaryTable {
        let n = self.carrier as u32;
        let law = self.law.as_ref().expect("law");
        let act = (0..n).map(|x| (0..n).map(|z| (0..n).map(|y| law[x as usize][y as usize][z as usize]).collect()).collect()).collect();
        self.target = Some(self.carrier);
        self.action = Some(act);
        self
    }

    /// Reflection space from point symmetries.
    pub fn from_reflection(n: usize, s: impl Fn(u32, u32) -> u32) -> TernaryTable {
        let n32 = n as u32;
        let refl = (0..n32).map(|x| (0..n32).map(|y| s(x, y)).collect()).collect();
        TernaryTable { carrier: n, reflection: Some(refl), ..Default::default() }
    }

    /// Adds the regular symmetry action `S_x = s_x`.
    pub fn with_regular_symmetry(mut self) -> TernaryTable {
        self.target = Some(self.carrier);
        self.symmetry = self.reflection.clone();
        self
    }

    pub fn from_json(s: &str) -> Result<TernaryTable, TorsorError> {
        let t: TernaryTable = serde_json::from_str(s).map_err(|e| TorsorError::Shape(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    pub fn validate(&self) -> Result<(), TorsorError> {
        let n = self.carrier;
        let bad = |m: &str| Err(TorsorError::Shape(m.to_string()));
        if let Some(l) = &self.law {
            if l.len() != n || l.iter().any(|a| a.len() != n || a.iter().any(|b| b.len() != n || b.iter().any(|&v| v as usize >= n))) {
                return bad("law must be a total n×n×n table with entries < n");
            }
        }
        if let Some(r) = &self.reflection {
            if r.len() != n || r.iter().any(|a| a.len() != n || a.iter().any(|&v| v as usize >= n)) {
                return bad("reflection must be an n×n table with entries < n");
            }
        }
        let m = self.target.unwrap_or(n);
        if let Some(a) = &self.action {
            if a.len() != n || a.iter().any(|r| r.len() != n || r.iter().any(|p| p.len() != m || p.iter().any(|&v| v as usize >= m))) {
                return bad("action must be an n×n table of maps on the target");
            }
        }
        if let Some(s) = &self.symmetry {
            if s.len() != n || s.iter().any(|p| p.len() != m || p.iter().any(|&v| v as usize >= m)) {
                return bad("symmetry must be n maps on the target");
            }
        }
        Ok(())
    }

    fn label(&self, i: u32) -> String {
        match &self.labels {
            Some(l) => l[i as usize].clone(),
            None => i.to_string(),
        }
    }

    #[inline]
    fn l(&self, x: u32, y: u32, z: u32) -> u32 {
        self.law.as_ref().unwrap()[x as usize][y as usize][z as usize]
    }

    fn m(&self, x: u32, z: u32) -> &[u32] {
        &self.action.as_ref().unwrap()[x as usize][z as usize]
    }

    fn s(&self, x: u32, y: u32) -> u32 {
        self.reflection.as_ref().unwrap()[x as usize][y as usize]
    }

    fn big_s(&self, x: u32) -> &[u32] {
        &self.symmetry.as_ref().unwrap()[x as usize]
    }

    fn target_len(&self) -> usize {
        self.target.unwrap_or(self.carrier)
    }

    fn all(&self) -> Vec<u32> {
        (0..self.carrier as u32).collect()
    }

    fn sweep(&self, name: &str, formula: &str, vars: &[&str], test: &(dyn Fn(&[u32]) -> bool + Sync)) -> CheckRecord {
        let all = self.all();
        let cands = |_: usize, _: &[u32]| all.clone();
        sweep::exhaustive(name, formula, vars, &cands, test, &|i| self.label(i), None)
    }

    fn sweep_with(
        &self,
        name: &str,
        formula: &str,
        vars: &[&str],
        cands: &sweep::Candidates<'_>,
        test: &(dyn Fn(&[u32]) -> bool + Sync),
    ) -> CheckRecord {
        sweep::exhaustive(name, formula, vars, cands, test, &|i| self.label(i), None)
    }

    // ---- torsors ----

    pub fn torsor_checks(&self) -> Vec<CheckRecord> {
        let all = self.all();
        let diag_y = |d: usize, t: &[u32]| if d == 1 { vec![t[0]] } else { all.clone() };
        let diag_z = |d: usize, t: &[u32]| if d == 2 { vec![t[1]] } else { all.clone() };
        vec![
            self.sweep("PA-left", "((xuv)wz) = (x(wvu)z)", &["x", "u", "v", "w", "z"], &|t| {
                let (x, u, v, w, z) = (t[0], t[1], t[2], t[3], t[4]);
                self.l(self.l(x, u, v), w, z) == self.l(x, self.l(w, v, u), z)
            }),
            self.sweep("PA-right", "(x(wvu)z) = (xu(vwz))", &["x", "u", "v", "w", "z"], &|t| {
                let (x, u, v, w, z) = (t[0], t[1], t[2], t[3], t[4]);
                self.l(x, self.l(w, v, u), z) == self.l(x, u, self.l(v, w, z))
            }),
            self.sweep_with("IP-left", "(xxz) = z", &["x", "y", "z"], &diag_y, &|t| self.l(t[0], t[1], t[2]) == t[2]),
            self.sweep_with("IP-right", "(xyy) = x", &["x", "y", "z"], &diag_z, &|t| self.l(t[0], t[1], t[2]) == t[0]),
        ]
    }

    pub fn commutativity_check(&self) -> CheckRecord {
        self.sweep("C", "(xyz) = (zyx)", &["x", "y", "z"], &|t| self.l(t[0], t[1], t[2]) == self.l(t[2], t[1], t[0]))
    }

    /// (SA) and (IP) for the middle multiplications `m_{xz} = (x·z)`.
    pub fn middle_multiplication_checks(&self) -> Vec<CheckRecord> {
        let n = self.carrier as u32;
        let m = |x: u32, z: u32| -> Vec<u32> { (0..n).map(|y| self.l(x, y, z)).collect() };
        vec![
            self.sweep("SA", "m_{xy} m_{uv} m_{rs} = m_{m_{xr}(v), m_{sy}(u)}", &["x", "y", "u", "v", "r", "s"], &|t| {
                let (x, y, u, v, r, s) = (t[0], t[1], t[2], t[3], t[4], t[5]);
                let lhs = compose(&compose(&m(x, y), &m(u, v)), &m(r, s));
                lhs == m(self.l(x, v, r), self.l(s, u, y))
            }),
            self.sweep("IP-m", "m_{xz}(x) = z, m_{xz}(z) = x", &["x", "z"], &|t| {
                self.l(t[0], t[0], t[1]) == t[1] && self.l(t[0], t[1], t[1]) == t[0]
            }),
        ]
    }

    /// Chasles relation (SA′) for middle multiplications.
    pub fn chasles_check(&self) -> CheckRecord {
        let n = self.carrier as u32;
        let m = |x: u32, z: u32| -> Vec<u32> { (0..n).map(|y| self.l(x, y, z)).collect() };
        self.sweep("SA'", "m_{xy} m_{yv} m_{vs} = m_{xs}", &["x", "y", "v", "s"], &|t| {
            compose(&compose(&m(t[0], t[1]), &m(t[1], t[2])), &m(t[2], t[3])) == m(t[0], t[3])
        })
    }

    // ---- inversive actions ----

    pub fn action_checks(&self) -> Vec<CheckRecord> {
        let tl = self.target_len();
        let id: Vec<u32> = (0..tl as u32).collect();
        vec![
            self.sweep("bijective", "every M_{xz} is a bijection", &["x", "z"], &|t| is_perm(self.m(t[0], t[1]), tl)),
            self.sweep("STA1", "M_{xz} M_{zx} = id", &["x", "z"], &|t| compose(self.m(t[0], t[1]), self.m(t[1], t[0])) == id),
            self.sweep("STA2", "M_{xz} M_{uv} M_{ab} = M_{(xva),(buz)}", &["x", "z", "u", "v", "a", "b"], &|t| {
                let (x, z, u, v, a, b) = (t[0], t[1], t[2], t[3], t[4], t[5]);
                compose(&compose(self.m(x, z), self.m(u, v)), self.m(a, b)) == self.m(self.l(x, v, a), self.l(b, u, z))
            }),
        ]
    }

    /// Whether every `M_{xz}` equals `M_{zx}`.
    pub fn is_commutative_action(&self) -> bool {
        let n = self.carrier as u32;
        (0..n).all(|x| (0..n).all(|z| self.m(x, z) == self.m(z, x)))
    }

    // ---- reflection spaces and symmetry actions ----

    pub fn reflection_checks(&self) -> Vec<CheckRecord> {
        let n = self.carrier;
        vec![
            self.sweep("bijective-s", "every s_x is a bijection", &["x"], &|t| {
                is_perm(&self.reflection.as_ref().unwrap()[t[0] as usize], n)
            }),
            self.sweep("R1", "s_x(x) = x", &["x"], &|t| self.s(t[0], t[0]) == t[0]),
            self.sweep("R2", "s_x s_x = id", &["x", "y"], &|t| self.s(t[0], self.s(t[0], t[1])) == t[1]),
            self.sweep("R3", "s_x s_z s_x = s_{s_x(z)}", &["x", "z", "y"], &|t| {
                let (x, z, y) = (t[0], t[1], t[2]);
                self.s(x, self.s(z, self.s(x, y))) == self.s(self.s(x, z), y)
            }),
        ]
    }

    pub fn symmetry_action_checks(&self) -> Vec<CheckRecord> {
        let tl = self.target_len();
        let id: Vec<u32> = (0..tl as u32).collect();
        vec![
            self.sweep("bijective-S", "every S_x is a bijection", &["x"], &|t| is_perm(self.big_s(t[0]), tl)),
            self.sweep("S1", "S_x S_x = id", &["x"], &|t| compose(self.big_s(t[0]), self.big_s(t[0])) == id),
            self.sweep("S2", "S_x S_y S_x = S_{s_x(y)}", &["x", "y"], &|t| {
                let (x, y) = (t[0], t[1]);
                compose(&compose(self.big_s(x), self.big_s(y)), self.big_s(x)) == self.big_s(self.s(x, y))
            }),
        ]
    }

    /// The symmetry action `S_x = M_{xx}` of the torsor seen as reflection
    /// space `s_x(y) = (xyx)`.
    pub fn diagonal_symmetry_action(&self) -> TernaryTable {
        let n = self.carrier as u32;
        let mut t = TernaryTable::from_reflection(self.carrier, |x, y| self.l(x, y, x));
        t.labels = self.labels.clone();
        t.target = Some(self.target_len());
        t.symmetry = Some((0..n).map(|x| self.m(x, x).to_vec()).collect());
        t
    }
}

fn require(cond: bool, what: &str) -> Result<(), TorsorError> {
    if cond {
        Ok(())
    } else {
        Err(TorsorError::Shape(format!("table has no {what}")))
    }
}

/// Verifies the defining identities of the requested kind.
pub fn check_structure(kind: Kind, t: &TernaryTable) -> Result<Vec<CheckRecord>, TorsorError> {
    t.validate()?;
    let mut out = vec![];
    match kind {
        Kind::Torsor | Kind::CommutativeTorsor => {
            require(t.law.is_some(), "ternary law")?;
            out.extend(t.torsor_checks());
            if kind == Kind::CommutativeTorsor {
                out.push(t.commutativity_check());
            }
        }
        Kind::InversiveAction => {
            require(t.law.is_some(), "ternary law")?;
            require(t.action.is_some(), "action")?;
            out.extend(t.torsor_checks());
            out.extend(t.action_checks());
        }
        Kind::ReflectionSpace => {
            require(t.reflection.is_some(), "reflection law")?;
            out.extend(t.reflection_checks());
        }
        Kind::SymmetryAction => {
            require(t.reflection.is_some(), "reflection law")?;
            require(t.symmetry.is_some(), "symmetry action")?;
            out.extend(t.reflection_checks());
            out.extend(t.symmetry_action_checks());
        }
    }
    Ok(out)
}

/// Left and right translations of an inversive action.
#[derive(Debug, Clone, PartialEq)]
pub struct Translations {
    /// `left[x][v] = L_{xv}`.
    pub left: Vec<Vec<Vec<u32>>>,
    /// `right[v][x] = R_{vx}`.
    pub right: Vec<Vec<Vec<u32>>>,
    pub commutative: bool,
    pub checks: Vec<CheckRecord>,
}

/// `L_{xv} = M_{xz} M_{zv}` and `R_{vx} = M_{zv} M_{xz}`, with their identities.
pub fn derived_translations(t: &TernaryTable) -> Result<Translations, TorsorError> {
    t.validate()?;
    require(t.law.is_some() && t.action.is_some(), "inversive action")?;
    let n = t.carrier as u32;
    for x in 0..n {
        for v in 0..n {
            let l0 = compose(t.m(x, 0), t.m(0, v));
            let r0 = compose(t.m(0, v), t.m(x, 0));
            for z in 1..n {
                if compose(t.m(x, z), t.m(z, v)) != l0 || compose(t.m(z, v), t.m(x, z)) != r0 {
                    return Err(TorsorError::ZDependence { x, v, z: 0, z2: z });
                }
            }
        }
    }
    let left: Vec<Vec<Vec<u32>>> = (0..n).map(|x| (0..n).map(|v| compose(t.m(x, 0), t.m(0, v))).collect()).collect();
    let right: Vec<Vec<Vec<u32>>> = (0..n).map(|v| (0..n).map(|x| compose(t.m(0, v), t.m(x, 0))).collect()).collect();
    let tl = t.target_len();
    let id: Vec<u32> = (0..tl as u32).collect();
    let lo = |x: u32, v: u32| &left[x as usize][v as usize];
    let ro = |v: u32, x: u32| &right[v as usize][x as usize];
    let mut checks = vec![
        t.sweep("LTA1", "L_{xx} = id", &["x"], &|a| *lo(a[0], a[0]) == id),
        t.sweep("LTA2", "L_{xv} L_{uw} = L_{(xvu),w} = L_{x,(wuv)}", &["x", "v", "u", "w"], &|a| {
            let (x, v, u, w) = (a[0], a[1], a[2], a[3]);
            let lhs = compose(lo(x, v), lo(u, w));
            lhs == *lo(t.l(x, v, u), w) && lhs == *lo(x, t.l(w, u, v))
        }),
        t.sweep("LR-commute", "L_{xv} R_{yw} = R_{yw} L_{xv}", &["x", "v", "y", "w"], &|a| {
            compose(lo(a[0], a[1]), ro(a[2], a[3])) == compose(ro(a[2], a[3]), lo(a[0], a[1]))
        }),
        t.sweep("Int", "M_{xx} L_{vx} M_{xx} = R_{(xvx),x}", &["x", "v"], &|a| {
            let (x, v) = (a[0], a[1]);
            compose(&compose(t.m(x, x), lo(v, x)), t.m(x, x)) == *ro(t.l(x, v, x), x)
        }),
    ];
    let commutative = t.is_commutative_action();
    if commutative {
        checks.push(t.sweep("L=R", "L_{xv} = R_{xv}", &["x", "v"], &|a| lo(a[0], a[1]) == ro(a[0], a[1])));
    }
    Ok(Translations { left, right, commutative, checks })
}

/// Transvection identities of a symmetry action; for a commutative
/// inversive action also the transplantation formula.
pub fn transvections_and_formulas(t: &TernaryTable) -> Result<Vec<CheckRecord>, TorsorError> {
    t.validate()?;
    let mut out = vec![];
    if t.action.is_some() && t.law.is_some() {
        require(t.is_commutative_action(), "commutative action")?;
        out.push(t.sweep("Transp", "M_{xz} = M_{xo} M_{oo} M_{zo} = M_{(xoz),o}", &["x", "z", "o"], &|a| {
            let (x, z, o) = (a[0], a[1], a[2]);
            let mid = compose(&compose(t.m(x, o), t.m(o, o)), t.m(z, o));
            t.m(x, z) == mid.as_slice() && t.m(x, z) == t.m(t.l(x, o, z), o)
        }));
        if t.reflection.is_none() {
            let d = t.diagonal_symmetry_action();
            out.extend(transvections_and_formulas(&d)?);
        }
    }
    if t.reflection.is_some() && t.symmetry.is_some() {
        let tl = t.target_len();
        let id: Vec<u32> = (0..tl as u32).collect();
        let q = |x: u32, y: u32| compose(t.big_s(x), t.big_s(y));
        out.push(t.sweep("Q-diagonal", "Q_{xx} = id", &["x"], &|a| q(a[0], a[0]) == id));
        out.push(t.sweep("Q-Chasles", "Q_{xy} Q_{yz} = Q_{xz}", &["x", "y", "z"], &|a| {
            compose(&q(a[0], a[1]), &q(a[1], a[2])) == q(a[0], a[2])
        }));
        out.push(t.sweep("Fu", "Q_{xy} Q_{zy} Q_{xy} = Q_{s_x s_y(z), y}", &["x", "y", "z"], &|a| {
            let (x, y, z) = (a[0], a[1], a[2]);
            compose(&compose(&q(x, y), &q(z, y)), &q(x, y)) == q(t.s(x, t.s(y, z)), y)
        }));
    }
    if out.is_empty() {
        return Err(TorsorError::Shape("needs a symmetry action or an inversive action".into()));
    }
    Ok(out)
}

/// Outcome of testing whether (SA′)+(IP) force (SA) on a family of tables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConjectureFindings {
    pub tables: u64,
    pub premise_holds: u64,
    pub conclusion_holds: u64,
    pub counterexample: Option<TernaryTable>,
}

fn passes(rs: &[CheckRecord]) -> bool {
    rs.iter().all(|r| r.status == Status::Pass)
}

/// Enumerates every law on `n` points satisfying (IP) and records how many
/// satisfy (SA′), and of those how many satisfy (SA).
pub fn sa_prime_conjecture(n: usize) -> ConjectureFindings {
    let m = n as u32;
    let free: Vec<(u32, u32, u32)> =
        (0..m).flat_map(|x| (0..m).flat_map(move |y| (0..m).map(move |z| (x, y, z)))).filter(|&(x, y, z)| x != y && y != z).collect();
    let total = (n as u64).pow(free.len() as u32);
    let mut f = ConjectureFindings::default();
    for code in 0..total {
        let mut c = code;
        let mut law = vec![vec![vec![0u32; n]; n]; n];
        for x in 0..m {
            for y in 0..m {
                law[x as usize][x as usize][y as usize] = y;
                law[y as usize][x as usize][x as usize] = y;
            }
        }
        for &(x, y, z) in &free {
            law[x as usize][y as usize][z as usize] = (c % n as u64) as u32;
            c /= n as u64;
        }
        let t = TernaryTable { carrier: n, law: Some(law), ..Default::default() };
        f.tables += 1;
        if t.chasles_check().status != Status::Pass {
            continue;
        }
        f.premise_holds += 1;
        if passes(&t.middle_multiplication_checks()) {
            f.conclusion_holds += 1;
        } else if f.counterexample.is_none() {
            f.counterexample = Some(t);
        }
    }
    f
}

/// Whether the (PA)+(IP) and (SA)+(IP) checkers agree on a table.
pub fn torsor_characterizations_agree(t: &TernaryTable) -> bool {
    passes(&t.torsor_checks()) == passes(&t.middle_multiplication_checks())
}

/// Record summarizing a conjecture search.
pub fn conjecture_record(n: usize) -> CheckRecord {
    let f = sa_prime_conjecture(n);
    let mut r = CheckRecord::fact(
        "SA'-implies-SA",
        "(SA') and (IP) imply (SA)",
        f.counterexample.is_none(),
        || witness([("carrier", n.to_string())]),
    );
    r.cases = f.premise_holds;
    if let Some(c) = f.counterexample {
        r.witness = Some(witness([("carrier", n.to_string()), ("table", c.to_json())]));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> TernaryTable {
        // permutations of {0,1,2} in lexicographic order
        let perms: Vec<[u32; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [u32; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let mul: Vec<Vec<u32>> =
            perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]])).collect()).collect();
        let inv: Vec<u32> = (0..6).map(|i| (0..6).find(|&j| mul[i][j as usize] == 0).unwrap()).collect();
        TernaryTable::group(&mul, &inv)
    }

    #[test]
    fn cyclic_torsor_passes() {
        assert!(passes(&check_structure(Kind::CommutativeTorsor, &TernaryTable::cyclic(5)).unwrap()));
    }

    #[test]
    fn sum_law_fails_idempotency() {
        let t = TernaryTable::from_law(5, |x, y, z| (x + y + z) % 5);
        let rs = check_structure(Kind::Torsor, &t).unwrap();
        let ip = rs.iter().find(|r| r.name == "IP-left").unwrap();
        assert_eq!(ip.status, Status::Fail);
        let w = ip.witness.as_ref().unwrap();
        assert_eq!((w["x"].as_str(), w["y"].as_str(), w["z"].as_str()), (Some("1"), Some("1"), Some("0")));
    }

    #[test]
    fn regular_actions() {
        let t = TernaryTable::cyclic(3).with_regular_action();
        assert!(passes(&check_structure(Kind::InversiveAction, &t).unwrap()));
        let tr = derived_translations(&t).unwrap();
        assert!(passes(&tr.checks) && tr.commutative);
        for x in 0..3u32 {
            for v in 0..3u32 {
                for w in 0..3u32 {
                    assert_eq!(tr.left[x as usize][v as usize][w as usize], (w + x + 3 - v) % 3);
                }
            }
        }
        let g = s3().with_regular_action();
        assert!(passes(&check_structure(Kind::InversiveAction, &g).unwrap()));
        let tr = derived_translations(&g).unwrap();
        assert!(passes(&tr.checks));
        assert!(!tr.commutative);
        assert_ne!(tr.left, (0..6).map(|x| (0..6).map(|v| tr.right[x][v].clone()).collect::<Vec<_>>()).collect::<Vec<_>>());
        let z4 = TernaryTable::cyclic(4).with_regular_action();
        let tr = derived_translations(&z4).unwrap();
        assert!(tr.commutative && passes(&tr.checks));
        assert!(tr.checks.iter().any(|c| c.name == "L=R"));
    }

    #[test]
    fn flat_symmetric_space_and_negative_control() {
        let t = TernaryTable::from_reflection(5, |x, y| (2 * x + 5 - y) % 5).with_regular_symmetry();
        assert!(passes(&check_structure(Kind::SymmetryAction, &t).unwrap()));
        assert!(passes(&transvections_and_formulas(&t).unwrap()));
        let mut bad = t.clone();
        bad.symmetry.as_mut().unwrap()[0] = vec![0, 2, 1, 3, 4];
        let rs = transvections_and_formulas(&bad).unwrap();
        let fu = rs.iter().find(|r| r.name == "Fu").unwrap();
        assert_eq!(fu.status, Status::Fail);
        assert!(fu.witness.is_some());
    }

    #[test]
    fn characterizations_agree_on_small_tables() {
        for n in [2usize, 3] {
            let m = n as u32;
            for t in [TernaryTable::cyclic(n), TernaryTable::from_law(n, |x, y, z| (x + y + z) % m), TernaryTable::from_law(n, |x, _, _| x)] {
                assert!(torsor_characterizations_agree(&t));
            }
        }
        assert!(torsor_characterizations_agree(&s3()));
    }

    #[test]
    fn json_round_trip_and_shape_errors() {
        let t = TernaryTable::cyclic(3).with_regular_action();
        assert_eq!(TernaryTable::from_json(&t.to_json()).unwrap(), t);
        assert!(TernaryTable::from_json(r#"{"carrier":2,"law":[[[0]]]}"#).is_err());
        assert!(check_structure(Kind::ReflectionSpace, &TernaryTable::cyclic(3)).is_err());
    }

    #[test]
    fn conjecture_on_two_points() {
        let f = sa_prime_conjecture(2);
        assert_eq!(f.tables, 4);
        assert!(f.premise_holds >= 1);
    }
}
