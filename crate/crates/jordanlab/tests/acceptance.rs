//! The twelve acceptance criteria, one line each.
//!
//! Criteria listed in `UNATTAINABLE` print FAIL without failing the run;
//! every other failure exits non-zero.

use std::time::Instant;

use jordanlab::geometry::Geometry;
use jordanlab::linalg::Matrix;
use jordanlab::report::{CheckRecord, CheckReport, Mode, RunConfig};
use jordanlab::rings::{Ring, Value};
use jordanlab::run::run;
use jordanlab::tangent::{self, BasePair, Sign};
use serde_json::Value as Json;

/// Sub-claims known not to hold, with the reason.
const UNATTAINABLE: &[(u32, &str)] = &[(8, "over F2, Z = diag(1,-1,-1,1) is the identity since -1 = 1")];

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, detail: String::new() }
    }
    fn require(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what.into());
        }
    }
}

fn cfg(command: &str, geometry: &str, mode: Mode, samples: u64) -> RunConfig {
    RunConfig::new(command).with_geometry(geometry).with_mode(mode).with_samples(samples).with_seed(2024)
}

fn with(mut c: RunConfig, key: &str, v: &str) -> RunConfig {
    c.extra.insert(key.into(), Json::String(v.into()));
    c
}

fn go(c: &RunConfig) -> CheckReport {
    run(c).unwrap_or_else(|e| panic!("{}: {e}", c.command))
}

fn rec<'a>(r: &'a CheckReport, name: &str) -> Option<&'a CheckRecord> {
    r.check(name)
}

fn printed(name: &str) -> bool {
    name.contains("printed") || name.contains("+xz")
}

/// All non-printed records pass, each with at least `min` cases.
fn all_pass(o: &mut Outcome, label: &str, r: &CheckReport, min: u64) {
    o.require(!r.checks.is_empty(), format!("{label}: no checks"));
    for c in r.checks.iter().filter(|c| !printed(&c.name)) {
        o.require(c.passed(), format!("{label}: {} {:?}", c.name, c.status));
        o.require(c.cases >= min, format!("{label}: {} ran {} < {min} cases", c.name, c.cases));
    }
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    for q in [2, 3, 5, 7] {
        let g = format!("projline:Fp:{q}");
        let r = go(&cfg("axioms jordan", &g, Mode::Exhaustive, 0));
        o.require(r.checks.len() == 6, format!("{g}: {} identities", r.checks.len()));
        all_pass(&mut o, &g, &r, 1);
    }
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    let r = go(&cfg("axioms associative", "gras:Fp:2:3", Mode::Exhaustive, 0));
    o.require(r.checks.len() == 5, "five identities");
    all_pass(&mut o, "Gras(F2^3)", &r, 1);
    let r = go(&cfg("axioms associative", "gras:Fp:3:4", Mode::Random, 10_000));
    all_pass(&mut o, "Gras(F3^4)", &r, 10_000);
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    for (g, mode, min) in [("projline:Q", Mode::Random, 1000), ("projline:Fp:5", Mode::Exhaustive, 1)] {
        let r = go(&cfg("axioms intro", g, mode, 1000));
        o.require(r.checks.len() == 9, format!("{g}: {} records", r.checks.len()));
        for c in r.checks.iter().filter(|c| !printed(&c.name)) {
            let grid = c.name.starts_with("J^{xz}_a(a)");
            o.require(c.passed(), format!("{g}: {} {:?}", c.name, c.status));
            o.require(grid || c.cases >= min, format!("{g}: {} ran {} < {min} cases", c.name, c.cases));
        }
        let fp = rec(&r, "J^{xz}_a(a) = a, denominator with +xz");
        o.require(fp.is_some_and(|c| !c.passed() && c.witness.is_some()), format!("{g}: printed denominator not refuted"));
        let gen = rec(&r, "J^{xz}_a(y), denominator with +xz");
        o.require(gen.is_some_and(|c| !c.passed()), format!("{g}: printed generic J agrees"));
    }
    o
}

fn mat(r: &Ring, rows: usize, cols: usize, v: &[Value]) -> Matrix {
    Matrix::from_values(r, rows, cols, v.to_vec())
}

fn all_vectors(r: &Ring, n: usize) -> Vec<Vec<Value>> {
    let els = r.elements().unwrap();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<Value>| els.iter().map(move |e| [v.clone(), vec![e.clone()]].concat())).collect();
    }
    out
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    for p in [2, 3] {
        for (k, m) in [(1, 1), (1, 2), (2, 2)] {
            let g: Geometry = format!("gras:Fp:{p}:{k}+{m}").parse().unwrap();
            let r = g.ring().clone();
            let pair = tangent::extract_pair(&BasePair::standard(&g, k).unwrap()).unwrap();
            let xs = all_vectors(&r, k * m);
            let mut bad = None;
            'outer: for x in &xs {
                for a in &xs {
                    let (xm, am) = (mat(&r, m, k, x), mat(&r, k, m, a));
                    let plus = xm.mul(&am).mul(&xm);
                    let minus = am.mul(&xm).mul(&am);
                    if pair.q(Sign::Plus, x, a) != plus.data() || pair.q(Sign::Minus, a, x) != minus.data() {
                        bad = Some(format!("{g}: x={x:?} a={a:?}"));
                        break 'outer;
                    }
                }
            }
            o.require(bad.is_none(), bad.unwrap_or_default());
        }
    }
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    let r = go(&cfg("pair check", "gras:Fp:2:1+2", Mode::Exhaustive, 0));
    all_pass(&mut o, "F2 exhaustive", &r, 1);
    for g in ["projline:Q", "gras:Q:1+2"] {
        let r = go(&with(cfg("pair check", g, Mode::Random, 0), "symbolic", "true"));
        all_pass(&mut o, &format!("{g} symbolic"), &r, 1);
        for k in [2, 3] {
            let mut c = cfg("pair check", g, Mode::Random, 50);
            c.jets = Some(k);
            let r = go(&c);
            all_pass(&mut o, &format!("{g} jets k={k}"), &r, 50);
        }
    }
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    for g in ["gras:Q:1+2", "gras:Fp:7:1+2"] {
        let r = go(&cfg("pair formulas", g, Mode::Random, 1000));
        for name in ["compact J(y)", "step3 v", "step3 v'", "step3 J(y)", "step3 J(b)", "step3 h"] {
            let c = rec(&r, name);
            o.require(c.is_some_and(|c| c.passed() && c.cases >= 1000), format!("{g}: {name} {:?}", c.map(|c| (c.status, c.cases))));
        }
        all_pass(&mut o, g, &r, 1000);
    }
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    for g in ["projline:Fp:5", "projline:Fp:7"] {
        let r = go(&with(cfg("modular", g, Mode::Exhaustive, 0), "triple", "0,inf,1"));
        let rows = r.checks.iter().filter(|c| c.name.starts_with("row ") && !printed(&c.name)).count();
        o.require(rows == 6, format!("{g}: {rows} table rows"));
        for name in ["[S]^2=1", "([S][T])^3=1", "S3-table"] {
            o.require(rec(&r, name).is_some(), format!("{g}: missing {name}"));
        }
        all_pass(&mut o, g, &r, 1);
    }
    o
}

fn c8() -> Outcome {
    let mut o = Outcome::new();
    for ring in ["Fp:2", "Q"] {
        let mut c = RunConfig::new("peirce").with_mode(if ring == "Q" { Mode::Random } else { Mode::Exhaustive });
        c.ring = Some(ring.into());
        let r = go(&with(c, "blocks", "1,1,1,1"));
        let kind = r.result.as_ref().and_then(|j| j["idempotency"].as_str()).unwrap_or("");
        o.require(kind == "strong", format!("{ring}: idempotency {kind}"));
        for name in ["(ABA)^4 = 1", "ABA = BAB iff strong", "J^2 = 1", "(JA)^2 = 1", "(JB)^2 = 1", "Z fixes a,x,b,y", "Z^2 = 1"] {
            o.require(rec(&r, name).is_some_and(|c| c.passed()), format!("{ring}: {name}"));
        }
        if ring == "Fp:2" {
            o.require(rec(&r, "Z nontrivial on X").is_some_and(|c| c.passed()), "F2: Z acts trivially on every point of Gras(F2^4)");
        }
    }
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    for g in ["projline:Fp:3", "projline:Fp:5"] {
        let r = go(&cfg("axioms appendix", g, Mode::Exhaustive, 0));
        for name in ["U_a:Transp", "U_a:Fu", "U_ab:Fu"] {
            o.require(rec(&r, name).is_some(), format!("{g}: missing {name}"));
        }
        all_pass(&mut o, g, &r, 1);
    }
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    for (g, ring) in [("projline:Q", "Weil:Q[e^2]"), ("gras:Q:1+2", "Weil:Q[e^2]"), ("projline:Fp:5", "Weil:Fp:5[e^2]"), ("gras:Fp:5:1+2", "Weil:Fp:5[e^2]")] {
        let mut c = cfg("tangent contracts", g, Mode::Random, 1000);
        c.ring = Some(ring.into());
        let r = go(&c);
        for name in ["translations fix T_aX", "tangent of J at its fixed point", "functoriality J", "functoriality M", "functoriality S"] {
            o.require(rec(&r, name).is_some(), format!("{g}: missing {name}"));
        }
        all_pass(&mut o, g, &r, 1000);
    }
    o
}

fn c11() -> Outcome {
    let mut o = Outcome::new();
    let g: Geometry = "gras:Q:2+2".parse().unwrap();
    let r = g.ring().clone();
    let base = BasePair::standard(&g, 2).unwrap();
    let e = base.point(Sign::Plus, Matrix::identity(&r, 2).data());
    let aa = tangent::associative_algebra_from_triple(&g, base.o(), base.o2(), &e).unwrap();
    let units: Vec<Vec<Value>> = (0..4).map(|i| (0..4).map(|j| r.from_i64((i == j) as i64)).collect()).collect();
    let mut products = 0;
    for (i, u) in units.iter().enumerate() {
        for (j, v) in units.iter().enumerate() {
            let want = mat(&r, 2, 2, u).mul(&mat(&r, 2, 2, v));
            o.require(aa.table()[i][j] == want.data(), format!("e{i}e{j}"));
            products += 1;
        }
    }
    o.require(products == 16, "16 products");
    let ja = tangent::jordan_algebra_from_triple(&g, base.o(), base.o2(), &e).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    let mut inverted = 0;
    for _ in 0..300 {
        let x: Vec<Value> = (0..4).map(|_| r.random(&mut rng, 5)).collect();
        let y: Vec<Value> = (0..4).map(|_| r.random(&mut rng, 5)).collect();
        let (xm, ym) = (mat(&r, 2, 2, &x), mat(&r, 2, 2, &y));
        o.require(ja.u(&x, &y) == xm.mul(&ym).mul(&xm).data(), format!("U_x y at x={x:?}"));
        if let Ok(yi) = ym.invert() {
            inverted += 1;
            o.require(ja.inverse(&y).as_deref() == Some(yi.data()), format!("j(y) at y={y:?}"));
        }
    }
    o.require(inverted >= 100, format!("only {inverted} invertible samples"));
    o
}

fn c12() -> Outcome {
    let mut o = Outcome::new();
    let configs = [
        cfg("axioms jordan", "projline:Q", Mode::Random, 300),
        cfg("axioms associative", "gras:Fp:3:4", Mode::Random, 500),
        cfg("pair formulas", "gras:Q:1+2", Mode::Random, 100),
        with(cfg("modular", "projline:Fp:7", Mode::Exhaustive, 0), "triple", "0,inf,1"),
    ];
    for c in &configs {
        let (a, b) = (go(c), go(c));
        o.require(a.canonical_json() == b.canonical_json(), format!("{} differs between runs", c.command));
    }
    o
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "Jordan axioms exhaustive on P1(F_q), q = 2,3,5,7", c1),
        (2, "associative axioms on Gras(F2^3) and sampled Gras(F3^4)", c2),
        (3, "closed-form homographies vs projector maps", c3),
        (4, "extracted pair is Q(x)a = xax", c4),
        (5, "JP1-JP3 exhaustive, symbolic and on jets", c5),
        (6, "inversion formulas vs geometric J", c6),
        (7, "modular representations of (0,inf,1)", c7),
        (8, "Peirce idempotent and its representation", c8),
        (9, "derived torsors and reflection spaces", c9),
        (10, "tangent contracts over T(Q) and T(F5)", c10),
        (11, "algebras from a transversal triple", c11),
        (12, "determinism", c12),
    ];
    let mut unexpected = 0;
    for (n, title, f) in criteria {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        let known = UNATTAINABLE.iter().find(|(k, _)| *k == n);
        let status = if out.ok { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n:>2}: {status} {title} ({secs:.1}s)");
        if !out.ok {
            line.push_str(&format!(" [{}]", out.detail));
            match known {
                Some((_, why)) => line.push_str(&format!(" (known: {why})")),
                None => unexpected += 1,
            }
        }
        println!("{line}");
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
