//! Torsors, reflection spaces and actions read off a finite geometry.

use std::collections::HashMap;

use crate::geometry::{GeomError, Perm, PointTable, ProjectiveMap};
use crate::report::{witness, CheckRecord, Mode, Status, Witness};
use crate::sweep;
use crate::torsor::{check_structure, derived_translations, transvections_and_formulas, Kind, TernaryTable};

fn j(t: &PointTable, x: u32, a: u32, z: u32) -> Perm {
    t.j_perm(x, a, z).expect("transversal arguments")
}

fn local_index(carrier: &[u32]) -> HashMap<u32, u32> {
    carrier.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect()
}

fn labels(t: &PointTable, carrier: &[u32]) -> Vec<String> {
    carrier.iter().map(|&p| t.label(p)).collect()
}

/// `U_a` with `(xyz)_a = J_a^{xz}(y)` and the action `J_a^{xz}` on all of
/// `X`. `None` when `U_a` is empty.
pub fn u_a_structure(t: &PointTable, a: u32) -> Option<TernaryTable> {
    let carrier = t.chart(a);
    if carrier.is_empty() {
        return None;
    }
    let idx = local_index(&carrier);
    let maps: Vec<Vec<Perm>> = carrier.iter().map(|&x| carrier.iter().map(|&z| j(t, x, a, z)).collect()).collect();
    let law = (0..carrier.len())
        .map(|x| carrier.iter().map(|&y| (0..carrier.len()).map(|z| idx[&maps[x][z][y as usize]]).collect()).collect())
        .collect();
    Some(TernaryTable {
        carrier: carrier.len(),
        labels: Some(labels(t, &carrier)),
        law: Some(law),
        target: Some(t.len()),
        action: Some(maps),
        ..Default::default()
    })
}

/// `U_{ab}` with `s_x(y) = J^{ab}_x(y)` and the symmetry action
/// `S_x = J^{ab}_x` on `X`. `None` when `U_{ab}` is empty.
pub fn u_ab_structure(t: &PointTable, a: u32, b: u32) -> Option<TernaryTable> {
    let carrier: Vec<u32> = (0..t.len() as u32).filter(|&x| t.t(x, a) && t.t(x, b)).collect();
    if carrier.is_empty() {
        return None;
    }
    let idx = local_index(&carrier);
    let sym: Vec<Perm> = carrier.iter().map(|&x| j(t, a, x, b)).collect();
    let refl = sym.iter().map(|s| carrier.iter().map(|&y| idx[&s[y as usize]]).collect()).collect();
    Some(TernaryTable {
        carrier: carrier.len(),
        labels: Some(labels(t, &carrier)),
        reflection: Some(refl),
        target: Some(t.len()),
        symmetry: Some(sym),
        ..Default::default()
    })
}

/// Reflection space on the transversal pairs,
/// `s_{(x,a)}(y,b) = (J^{xx}_a(y), J^{aa}_x(b))`, and the exchange
/// `τ(x,a) = (a,x)` as a permutation of the pairs.
pub fn d2_reflection_space(t: &PointTable) -> (TernaryTable, Vec<u32>) {
    let pairs = t.pairs();
    let idx: HashMap<(u32, u32), u32> = pairs.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let refl = pairs
        .iter()
        .map(|&(x, a)| {
            let f = j(t, x, a, x);
            let g = j(t, a, x, a);
            pairs.iter().map(|&(y, b)| idx[&(f[y as usize], g[b as usize])]).collect()
        })
        .collect();
    let tau = pairs.iter().map(|&(x, a)| idx[&(a, x)]).collect();
    let labels = pairs.iter().map(|&(x, a)| format!("({},{})", t.label(x), t.label(a))).collect();
    (TernaryTable { carrier: pairs.len(), labels: Some(labels), reflection: Some(refl), ..Default::default() }, tau)
}

/// Merges same-named records from several base points: cases add up, the
/// first failure keeps its witness prefixed by the base point.
fn aggregate(prefix: &str, groups: Vec<(Witness, Vec<CheckRecord>)>) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = vec![];
    for (ctx, recs) in groups {
        for r in recs {
            let name = format!("{prefix}:{}", r.name);
            let slot = match out.iter().position(|o| o.name == name) {
                Some(i) => i,
                None => {
                    out.push(CheckRecord { name, cases: 0, witness: None, ..r.clone() });
                    out.len() - 1
                }
            };
            let o = &mut out[slot];
            o.cases += r.cases;
            let worse = matches!((o.status, r.status), (Status::Pass, Status::Fail | Status::Incomplete) | (Status::Incomplete, Status::Fail));
            if worse {
                o.status = r.status;
                if r.status == Status::Fail {
                    let mut w = ctx.clone();
                    w.extend(r.witness.clone().unwrap_or_default());
                    o.witness = Some(w);
                }
            }
        }
    }
    out
}

fn shape_failure(name: &str, e: impl std::fmt::Display) -> Vec<CheckRecord> {
    vec![CheckRecord::fact(name, "structure table is well formed", false, || witness([("error", e.to_string())]))]
}

/// Every derived structure of a finite geometry, checked with the torsor kit.
pub fn appendix_suite(t: &PointTable) -> Vec<CheckRecord> {
    let n = t.len() as u32;
    let mut ua = vec![];
    for a in 0..n {
        let Some(s) = u_a_structure(t, a) else { continue };
        let mut recs = vec![];
        match check_structure(Kind::InversiveAction, &s) {
            Ok(r) => recs.extend(r),
            Err(e) => recs.extend(shape_failure("shape", e)),
        }
        recs.push(s.commutativity_check());
        match derived_translations(&s) {
            Ok(tr) => recs.extend(tr.checks),
            Err(e) => recs.extend(shape_failure("translations", e)),
        }
        match transvections_and_formulas(&s) {
            Ok(r) => recs.extend(r),
            Err(e) => recs.extend(shape_failure("formulas", e)),
        }
        ua.push((witness([("a", t.label(a))]), recs));
    }
    let mut uab = vec![];
    for a in 0..n {
        for b in 0..n {
            let Some(s) = u_ab_structure(t, a, b) else { continue };
            let mut recs = match check_structure(Kind::SymmetryAction, &s) {
                Ok(r) => r,
                Err(e) => shape_failure("shape", e),
            };
            match transvections_and_formulas(&s) {
                Ok(r) => recs.extend(r),
                Err(e) => recs.extend(shape_failure("formulas", e)),
            }
            uab.push((witness([("a", t.label(a)), ("b", t.label(b))]), recs));
        }
    }
    let (d2, tau) = d2_reflection_space(t);
    let mut d2recs = check_structure(Kind::ReflectionSpace, &d2).unwrap_or_else(|e| shape_failure("shape", e));
    d2recs.push(tau_automorphism(&d2, &tau));
    let mut out = aggregate("U_a", ua);
    out.extend(aggregate("U_ab", uab));
    out.extend(aggregate("D2", vec![(Witness::new(), d2recs)]));
    out
}

fn tau_automorphism(d2: &TernaryTable, tau: &[u32]) -> CheckRecord {
    let s = d2.reflection.as_ref().unwrap();
    let all: Vec<u32> = (0..d2.carrier as u32).collect();
    let cands = |_: usize, _: &[u32]| all.clone();
    let label = |i: u32| d2.labels.as_ref().map(|l| l[i as usize].clone()).unwrap_or_else(|| i.to_string());
    sweep::exhaustive(
        "tau-automorphism",
        "tau(s_p(q)) = s_{tau p}(tau q)",
        &["p", "q"],
        &cands,
        &|v| {
            let (p, q) = (v[0] as usize, v[1] as usize);
            tau[s[p][q] as usize] == s[tau[p] as usize][tau[q] as usize]
        },
        &label,
        None,
    )
}

/// The fixed space `X^(p) = {x : p(x) ⊤ x}` of a polarity, with the
/// reflection law `s_x(y) = J^{xx}_{p(x)}(y)`, and its reflection checks.
pub fn polarity_space(t: &PointTable, p: &ProjectiveMap) -> Result<(TernaryTable, Vec<CheckRecord>), GeomError> {
    let perm = t.perm(p);
    if perm.iter().enumerate().any(|(i, &v)| perm[v as usize] != i as u32) {
        return Err(GeomError::NotPolarity("p∘p is not the identity".into()));
    }
    let carrier: Vec<u32> = (0..t.len() as u32).filter(|&x| t.t(perm[x as usize], x)).collect();
    if carrier.is_empty() {
        return Err(GeomError::NotPolarity("no point x with p(x) ⊤ x".into()));
    }
    let idx = local_index(&carrier);
    let mut refl = vec![];
    for &x in &carrier {
        let f = j(t, x, perm[x as usize], x);
        let mut row = vec![];
        for &y in &carrier {
            let img = f[y as usize];
            match idx.get(&img) {
                Some(&i) => row.push(i),
                None => return Err(GeomError::NotPolarity(format!("s_{}({}) leaves X^(p)", t.label(x), t.label(y)))),
            }
        }
        refl.push(row);
    }
    let table = TernaryTable { carrier: carrier.len(), labels: Some(labels(t, &carrier)), reflection: Some(refl), ..Default::default() };
    let checks = check_structure(Kind::ReflectionSpace, &table).map_err(|e| GeomError::Domain(e.to_string()))?;
    Ok((table, checks))
}

/// Checks that a point map between finite geometries preserves
/// transversality and intertwines the inversions.
pub fn check_morphism(src: &PointTable, dst: &PointTable, f: &(dyn Fn(u32) -> Option<u32> + Sync)) -> Vec<CheckRecord> {
    let n = src.len() as u32;
    let all: Vec<u32> = (0..n).collect();
    let image: Vec<Option<u32>> = all.iter().map(|&x| f(x)).collect();
    let total = CheckRecord::fact("defined", "f is defined on every point", image.iter().all(Option::is_some), || {
        let x = image.iter().position(Option::is_none).unwrap() as u32;
        witness([("x", src.label(x))])
    });
    if !total.passed() {
        return vec![total];
    }
    let fi = |x: u32| image[x as usize].unwrap();
    let label = |i: u32| src.label(i);
    let pairs_cands = |d: usize, pre: &[u32]| if d == 0 { all.clone() } else { src.chart(pre[0]) };
    let trans = sweep::exhaustive("transversality", "x ⊤ a => f(x) ⊤ f(a)", &["x", "a"], &pairs_cands, &|v| dst.t(fi(v[0]), fi(v[1])), &label, None);
    let cands = |d: usize, pre: &[u32]| match d {
        0 | 3 => all.clone(),
        _ => src.chart(pre[0]),
    };
    let equi = sweep::exhaustive(
        "equivariance",
        "f(J^{xz}_a(y)) = J^{f(x)f(z)}_{f(a)}(f(y))",
        &["a", "x", "z", "y"],
        &cands,
        &|v| {
            let (a, x, z, y) = (v[0], v[1], v[2], v[3]);
            match dst.j_perm(fi(x), fi(a), fi(z)) {
                Some(g) => fi(j(src, x, a, z)[y as usize]) == g[fi(y) as usize],
                None => false,
            }
        },
        &label,
        None,
    );
    vec![total, trans, equi]
}

/// Inner ideal, affine reading: for every `a`, `U_a ∩ Y` is closed under
/// `(xyz)_a`.
pub fn is_inner_ideal_affine(t: &PointTable, y: &[u32]) -> bool {
    let mut member = vec![false; t.len()];
    y.iter().for_each(|&p| member[p as usize] = true);
    (0..t.len() as u32).all(|a| {
        let ya: Vec<u32> = y.iter().copied().filter(|&p| t.t(p, a)).collect();
        ya.iter().all(|&x| ya.iter().all(|&z| {
            let f = j(t, x, a, z);
            ya.iter().all(|&w| member[f[w as usize] as usize])
        }))
    })
}

/// Inner ideal, symmetric-action reading: `J^{xz}_a(Y) ⊆ Y` whenever
/// `x, z ∈ Y ∩ U_a`.
pub fn is_inner_ideal_symmetric(t: &PointTable, y: &[u32]) -> bool {
    let mut member = vec![false; t.len()];
    y.iter().for_each(|&p| member[p as usize] = true);
    (0..t.len() as u32).all(|a| {
        let ya: Vec<u32> = y.iter().copied().filter(|&p| t.t(p, a)).collect();
        ya.iter().all(|&x| ya.iter().all(|&z| {
            let f = j(t, x, a, z);
            y.iter().all(|&w| member[f[w as usize] as usize])
        }))
    })
}

/// `U_{aa}` symmetries equal the torsor symmetries of `U_a`, `U_a` is stable
/// under its law, and (A) at a fixed base agrees with para-associativity.
pub fn compatibility_checks(t: &PointTable) -> Vec<CheckRecord> {
    let n = t.len() as u32;
    let all: Vec<u32> = (0..n).collect();
    let label = |i: u32| t.label(i);
    let cands = |d: usize, pre: &[u32]| if d == 0 { all.clone() } else { t.chart(pre[0]) };
    let uaa = sweep::exhaustive(
        "U_aa=U_a",
        "J^{aa}_x(y) = (xyx)_a",
        &["a", "x", "y"],
        &cands,
        &|v| {
            let (a, x, y) = (v[0], v[1], v[2]);
            j(t, a, x, a)[y as usize] == j(t, x, a, x)[y as usize]
        },
        &label,
        None,
    );
    let stable = sweep::exhaustive(
        "U_a-stable",
        "x,y,z in U_a => (xyz)_a in U_a",
        &["a", "x", "y", "z"],
        &cands,
        &|v| t.t(j(t, v[1], v[0], v[3])[v[2] as usize], v[0]),
        &label,
        None,
    );
    let mut agree = CheckRecord::new("A<=>PA", "(A) at base a holds iff U_a is para-associative", Mode::Exhaustive);
    for a in 0..n {
        let Some(s) = u_a_structure(t, a) else { continue };
        let pa = s.torsor_checks().iter().filter(|r| r.name.starts_with("PA")).all(CheckRecord::passed);
        let ax = base_a_holds(t, a);
        agree.cases += 1;
        if pa != ax {
            agree = agree.fail_with(witness([("a", t.label(a))]));
            break;
        }
    }
    vec![uaa, stable, agree]
}

fn base_a_holds(t: &PointTable, c: u32) -> bool {
    let u = t.chart(c);
    let jc = |x: u32, z: u32| j(t, x, c, z);
    let comp = |f: &Perm, g: &Perm| -> Perm { g.iter().map(|&i| f[i as usize]).collect() };
    for &x in &u {
        for &z in &u {
            let fxz = jc(x, z);
            for &uu in &u {
                for &v in &u {
                    let f2 = comp(&fxz, &jc(uu, v));
                    for &a in &u {
                        let s = jc(x, a)[v as usize];
                        for &b in &u {
                            let lhs = comp(&f2, &jc(a, b));
                            if lhs != jc(s, jc(b, z)[uu as usize]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Geometry;
    use crate::linalg::Matrix;

    fn line(p: u64) -> PointTable {
        PointTable::new(&format!("projline:Fp:{p}").parse::<Geometry>().unwrap()).unwrap()
    }

    #[test]
    fn affine_chart_is_cyclic() {
        let t = line(5);
        let inf = t.parse_index("inf").unwrap();
        let s = u_a_structure(&t, inf).unwrap();
        assert_eq!(s.carrier, 5);
        let lab = s.labels.clone().unwrap();
        let pos = |v: &str| lab.iter().position(|l| l == v).unwrap();
        let law = s.law.unwrap();
        // 1 - 2 + 3 = 2
        assert_eq!(lab[law[pos("1")][pos("2")][pos("3")] as usize], "2");
    }

    #[test]
    fn zero_infinity_reflection() {
        let t = line(5);
        let (z, inf) = (t.parse_index("0").unwrap(), t.parse_index("inf").unwrap());
        let s = u_ab_structure(&t, z, inf).unwrap();
        assert_eq!(s.carrier, 4);
        let lab = s.labels.clone().unwrap();
        let pos = |v: &str| lab.iter().position(|l| l == v).unwrap();
        let r = s.reflection.unwrap();
        // s_2(3) = 4/3 = 3 in F_5
        assert_eq!(lab[r[pos("2")][pos("3")] as usize], "3");
        assert_eq!(lab[r[pos("2")][pos("1")] as usize], "4");
    }

    #[test]
    fn appendix_on_small_lines() {
        for p in [3, 5] {
            let rs = appendix_suite(&line(p));
            assert!(rs.iter().all(|r| r.passed()), "{rs:?}");
            for name in ["U_a:Transp", "U_ab:Fu", "D2:tau-automorphism"] {
                assert!(rs.iter().any(|r| r.name == name && r.cases > 0), "{name}");
            }
        }
    }

    #[test]
    fn polarities() {
        let t = line(5);
        let r = t.geometry().ring().clone();
        let swap = ProjectiveMap::new(Matrix::from_i64(&r, &[&[0, 1], &[1, 0]])).unwrap();
        let (s, checks) = polarity_space(&t, &swap).unwrap();
        let mut lab = s.labels.unwrap();
        lab.sort();
        assert_eq!(lab, ["0", "2", "3", "inf"]);
        assert!(checks.iter().all(|c| c.passed()));
        let id = ProjectiveMap::identity(&r, 2);
        assert!(matches!(polarity_space(&t, &id), Err(GeomError::NotPolarity(_))));
        let four = ProjectiveMap::new(Matrix::from_i64(&r, &[&[2, 0], &[0, 1]])).unwrap();
        assert!(matches!(polarity_space(&t, &four), Err(GeomError::NotPolarity(_))));
    }

    #[test]
    fn morphisms() {
        let t = line(3);
        let r = t.geometry().ring().clone();
        let g = ProjectiveMap::new(Matrix::from_i64(&r, &[&[1, 1], &[0, 1]])).unwrap();
        let perm = t.perm(&g);
        assert!(check_morphism(&t, &t, &|x| Some(perm[x as usize])).iter().all(CheckRecord::passed));
        let rs = check_morphism(&t, &t, &|_| Some(0));
        assert_eq!(rs.iter().find(|r| r.name == "transversality").unwrap().status, Status::Fail);
    }

    #[test]
    fn ideals_and_compatibility() {
        let t = line(3);
        let everything: Vec<u32> = (0..t.len() as u32).collect();
        assert!(is_inner_ideal_affine(&t, &everything) && is_inner_ideal_symmetric(&t, &everything));
        assert!(is_inner_ideal_affine(&t, &[0]) && is_inner_ideal_symmetric(&t, &[0]));
        assert!(!is_inner_ideal_affine(&t, &[0, 1]));
        assert!(compatibility_checks(&t).iter().all(CheckRecord::passed));
    }
}
