//! Axiom suites for Jordan and associative structure maps over any backend,
//! plus the structures derived from them.

mod backend;
mod derived;

use rand_chacha::ChaCha8Rng;

use crate::report::{CheckRecord, Mode, Status};
use crate::sweep;

pub use backend::{Backend, BrokenSymmetry, GeometryBackend, JFromM, JFromMidpoints, TableBackend};
pub use derived::{
    appendix_suite, check_morphism, compatibility_checks, d2_reflection_space, is_inner_ideal_affine,
    is_inner_ideal_symmetric, polarity_space, u_a_structure, u_ab_structure,
};

type Test<'a, B> = Box<dyn Fn(&B, &[<B as Backend>::P]) -> Option<bool> + Sync + 'a>;

/// One universally quantified identity. Each variable lists the earlier
/// variables it must be transversal to.
pub struct Identity<'a, B: Backend> {
    pub name: &'static str,
    pub formula: &'static str,
    pub vars: Vec<(&'static str, Vec<usize>)>,
    test: Test<'a, B>,
}

impl<'a, B: Backend> Identity<'a, B> {
    pub fn new(
        name: &'static str,
        formula: &'static str,
        vars: Vec<(&'static str, Vec<usize>)>,
        test: impl Fn(&B, &[B::P]) -> Option<bool> + Sync + 'a,
    ) -> Self {
        Identity { name, formula, vars, test: Box::new(test) }
    }
}

/// How a suite is run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub budget: Option<u64>,
}

impl RunOptions {
    pub fn exhaustive() -> RunOptions {
        RunOptions { mode: Mode::Exhaustive, samples: 0, seed: 0, budget: None }
    }
    pub fn random(samples: u64, seed: u64) -> RunOptions {
        RunOptions { mode: Mode::Random, samples, seed, budget: None }
    }
}

/// Runs one identity.
pub fn run_identity<B: Backend>(b: &B, id: &Identity<'_, B>, opts: RunOptions) -> CheckRecord {
    let names: Vec<&str> = id.vars.iter().map(|v| v.0).collect();
    match opts.mode {
        Mode::Exhaustive => {
            let Some(points) = b.enumerate() else {
                let mut r = CheckRecord::new(id.name, id.formula, Mode::Exhaustive);
                r.status = Status::Incomplete;
                return r;
            };
            let n = points.len();
            let mut trans = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    trans[i * n + j] = b.transversal(&points[i], &points[j]);
                }
            }
            let all: Vec<u32> = (0..n as u32).collect();
            let cands = |d: usize, prefix: &[u32]| -> Vec<u32> {
                let cons = &id.vars[d].1;
                if cons.is_empty() {
                    return all.clone();
                }
                all.iter().copied().filter(|&p| cons.iter().all(|&c| trans[p as usize * n + prefix[c] as usize])).collect()
            };
            let test = |t: &[u32]| {
                let ps: Vec<B::P> = t.iter().map(|&i| points[i as usize].clone()).collect();
                (id.test)(b, &ps).unwrap_or(false)
            };
            sweep::exhaustive(id.name, id.formula, &names, &cands, &test, &|i| b.label(&points[i as usize]), opts.budget)
        }
        Mode::Random => {
            let mut draw = |rng: &mut ChaCha8Rng| -> Option<Vec<B::P>> {
                let mut t: Vec<B::P> = Vec::with_capacity(id.vars.len());
                for (_, cons) in &id.vars {
                    let cs: Vec<&B::P> = cons.iter().map(|&c| &t[c]).collect();
                    let p = b.sample(rng, &cs)?;
                    t.push(p);
                }
                Some(t)
            };
            let test = |t: &Vec<B::P>| (id.test)(b, t).unwrap_or(false);
            let w = |t: &Vec<B::P>| names.iter().zip(t).map(|(n, p)| (n.to_string(), b.label(p).into())).collect();
            sweep::random(id.name, id.formula, opts.samples, opts.seed, &mut draw, &test, &w)
        }
    }
}

pub fn run_suite<B: Backend>(b: &B, ids: &[Identity<'_, B>], opts: RunOptions) -> Vec<CheckRecord> {
    ids.iter().map(|id| run_identity(b, id, opts)).collect()
}

/// The six Jordan identities.
pub fn jordan_identities<'a, B: Backend + 'a>() -> Vec<Identity<'a, B>> {
    vec![
        Identity::new("IN", "J^{xz}_a J^{xz}_a = id", vec![("x", vec![]), ("a", vec![0]), ("z", vec![1])], |b: &B, p| {
            let f = b.j(&p[0], &p[1], &p[2])?;
            Some(b.is_identity(&b.compose(&f, &f)))
        }),
        Identity::new(
            "IP",
            "J^{ab}_c(c) = c, J^{ab}_c(a) = b, J^{ab}_c(b) = a",
            vec![("c", vec![]), ("a", vec![0]), ("b", vec![0])],
            |b: &B, p| {
                let (c, a, bb) = (&p[0], &p[1], &p[2]);
                let f = b.j(a, c, bb)?;
                Some(b.apply(&f, c) == *c && b.apply(&f, a) == *bb && b.apply(&f, bb) == *a)
            },
        ),
        Identity::new(
            "A",
            "J^{xz}_c J^{uv}_c J^{ab}_c = J_c^{J_c^{xa}(v), J_c^{bz}(u)}",
            vec![("c", vec![]), ("x", vec![0]), ("z", vec![0]), ("u", vec![0]), ("v", vec![0]), ("a", vec![0]), ("b", vec![0])],
            |b: &B, p| {
                let (c, x, z, u, v, a, bb) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6]);
                let lhs = b.compose(&b.compose(&b.j(x, c, z)?, &b.j(u, c, v)?), &b.j(a, c, bb)?);
                let s = b.apply(&b.j(x, c, a)?, v);
                let t = b.apply(&b.j(bb, c, z)?, u);
                Some(b.map_eq(&lhs, &b.j(&s, c, &t)?))
            },
        ),
        Identity::new(
            "D",
            "J^{xz}_c J^{uv}_b J^{xz}_c = J^{J(u),J(v)}_{J(b)}, J = J^{xz}_c",
            vec![("c", vec![]), ("x", vec![0]), ("z", vec![0]), ("b", vec![]), ("u", vec![3]), ("v", vec![3])],
            |b: &B, p| {
                let (c, x, z, bb, u, v) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
                let t = b.j(x, c, z)?;
                let lhs = b.compose(&b.compose(&t, &b.j(u, bb, v)?), &t);
                Some(b.map_eq(&lhs, &b.j(&b.apply(&t, u), &b.apply(&t, bb), &b.apply(&t, v))?))
            },
        ),
        Identity::new("C", "J^{ab}_c = J^{ba}_c", vec![("c", vec![]), ("a", vec![0]), ("b", vec![0])], |b: &B, p| {
            Some(b.map_eq(&b.j(&p[1], &p[0], &p[2])?, &b.j(&p[2], &p[0], &p[1])?))
        }),
        Identity::new("S", "J^{xx}_a = J^{aa}_x", vec![("a", vec![]), ("x", vec![0])], |b: &B, p| {
            Some(b.map_eq(&b.j(&p[1], &p[0], &p[1])?, &b.j(&p[0], &p[1], &p[0])?))
        }),
    ]
}

/// `M` with both upper indices first: `mm(u1,u2,l1,l2) = M^{u1 u2}_{l1 l2}`.
fn mm<B: Backend>(b: &B, u1: &B::P, u2: &B::P, l1: &B::P, l2: &B::P) -> Option<B::F> {
    b.m(u1, l1, u2, l2)
}

/// The five associative identities; `(xyz)_{ab} = M^{ab}_{xz}(y)`.
pub fn associative_identities<'a, B: Backend + 'a>() -> Vec<Identity<'a, B>> {
    let quad = || vec![("a", vec![]), ("b", vec![]), ("x", vec![0, 1]), ("z", vec![0, 1])];
    vec![
        Identity::new("1-symmetry", "M^{ab}_{xz} = M^{xz}_{ab} = M^{zx}_{ba}", quad(), |b: &B, p| {
            let (a, bb, x, z) = (&p[0], &p[1], &p[2], &p[3]);
            let f = mm(b, a, bb, x, z)?;
            Some(b.map_eq(&f, &mm(b, x, z, a, bb)?) && b.map_eq(&f, &mm(b, z, x, bb, a)?))
        }),
        Identity::new(
            "2-idempotency",
            "M^{ab}_{xz}: x -> z, z -> x, b -> a, a -> b",
            quad(),
            |b: &B, p| {
                let (a, bb, x, z) = (&p[0], &p[1], &p[2], &p[3]);
                let f = mm(b, a, bb, x, z)?;
                Some(b.apply(&f, x) == *z && b.apply(&f, z) == *x && b.apply(&f, bb) == *a && b.apply(&f, a) == *bb)
            },
        ),
        Identity::new("3-inverse", "M^{xz}_{ab} M^{zx}_{ab} = id", quad(), |b: &B, p| {
            let (a, bb, x, z) = (&p[0], &p[1], &p[2], &p[3]);
            Some(b.is_identity(&b.compose(&mm(b, x, z, a, bb)?, &mm(b, z, x, a, bb)?)))
        }),
        Identity::new(
            "4-associativity",
            "M^{xz}_{ab} M^{uv}_{ab} M^{rs}_{ab} = M^{(xvr)_{ab},(suz)_{ab}}_{ab}",
            vec![
                ("a", vec![]),
                ("b", vec![]),
                ("x", vec![0, 1]),
                ("z", vec![0, 1]),
                ("u", vec![0, 1]),
                ("v", vec![0, 1]),
                ("r", vec![0, 1]),
                ("s", vec![0, 1]),
            ],
            |b: &B, p| {
                let (a, bb, x, z, u, v, r, s) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6], &p[7]);
                let lhs = b.compose(&b.compose(&mm(b, x, z, a, bb)?, &mm(b, u, v, a, bb)?), &mm(b, r, s, a, bb)?);
                let t1 = b.apply(&mm(b, a, bb, x, r)?, v);
                let t2 = b.apply(&mm(b, a, bb, s, z)?, u);
                Some(b.map_eq(&lhs, &mm(b, &t1, &t2, a, bb)?))
            },
        ),
        Identity::new(
            "5-distributivity",
            "T M^{cd}_{uv} T^-1 = M^{Tc,Td}_{Tu,Tv}, T = M^{ab}_{xz}",
            vec![
                ("a", vec![]),
                ("b", vec![]),
                ("x", vec![0, 1]),
                ("z", vec![0, 1]),
                ("c", vec![]),
                ("d", vec![]),
                ("u", vec![4, 5]),
                ("v", vec![4, 5]),
            ],
            |b: &B, p| {
                let (a, bb, x, z, c, d, u, v) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6], &p[7]);
                let t = mm(b, a, bb, x, z)?;
                let lhs = b.compose(&b.compose(&t, &mm(b, c, d, u, v)?), &b.inverse(&t));
                let rhs = mm(b, &b.apply(&t, c), &b.apply(&t, d), &b.apply(&t, u), &b.apply(&t, v))?;
                Some(b.map_eq(&lhs, &rhs))
            },
        ),
    ]
}

pub fn check_jordan<B: Backend>(b: &B, opts: RunOptions) -> Vec<CheckRecord> {
    run_suite(b, &jordan_identities::<B>(), opts)
}

pub fn check_associative<B: Backend>(b: &B, opts: RunOptions) -> Vec<CheckRecord> {
    run_suite(b, &associative_identities::<B>(), opts)
}

/// Compares a derived `J` with the backend's own on sampled or all `D₃`
/// tuples.
pub fn agreement_check<B: Backend, C: Backend<P = B::P>>(name: &'static str, base: &B, other: &C, opts: RunOptions) -> CheckRecord {
    let id = Identity::new(name, "derived J^{xz}_a(y) = J^{xz}_a(y)", vec![("a", vec![]), ("x", vec![0]), ("z", vec![0]), ("y", vec![])], |b: &B, p| {
        let f = b.j(&p[1], &p[0], &p[2])?;
        let g = other.j(&p[1], &p[0], &p[2])?;
        Some(b.apply(&f, &p[3]) == other.apply(&g, &p[3]))
    });
    run_identity(base, &id, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Geometry, PointTable};

    fn table(s: &str) -> TableBackend {
        TableBackend::new(PointTable::new(&s.parse::<Geometry>().unwrap()).unwrap())
    }

    #[test]
    fn jordan_on_small_lines() {
        for s in ["projline:Fp:2", "projline:Fp:3"] {
            let b = table(s);
            let rs = check_jordan(&b, RunOptions::exhaustive());
            assert!(rs.iter().all(|r| r.passed()), "{s}: {rs:?}");
        }
    }

    #[test]
    fn broken_symmetry_is_caught() {
        let b = BrokenSymmetry(table("projline:Fp:3"));
        let rs = check_jordan(&b, RunOptions::exhaustive());
        let s = rs.iter().find(|r| r.name == "S").unwrap();
        assert_eq!(s.status, Status::Fail);
        assert!(s.witness.is_some());
    }

    #[test]
    fn associative_on_small_line() {
        let b = table("projline:Fp:3");
        let rs = check_associative(&b, RunOptions::exhaustive());
        assert!(rs.iter().all(|r| r.passed()), "{rs:?}");
    }

    #[test]
    fn random_over_rationals() {
        let g: Geometry = "projline:Q".parse().unwrap();
        let b = GeometryBackend::new(g);
        let rs = check_jordan(&b, RunOptions::random(30, 1));
        assert!(rs.iter().all(|r| r.passed() && r.cases == 30), "{rs:?}");
    }
}
