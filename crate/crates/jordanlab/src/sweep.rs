//! Exhaustive and sampled sweeps over tuples, with lexicographically first
//! witnesses and deterministic merging.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{CheckRecord, Mode, Status, Witness};

/// Candidate values of variable `depth` given the earlier ones.
pub type Candidates<'a> = dyn Fn(usize, &[u32]) -> Vec<u32> + Sync + 'a;

/// Walks all tuples of indices, each variable ranging over its candidate
/// list, and stops at the first tuple where `test` fails.
pub fn exhaustive(
    name: &str,
    formula: &str,
    vars: &[&str],
    cands: &Candidates<'_>,
    test: &(dyn Fn(&[u32]) -> bool + Sync),
    label: &(dyn Fn(u32) -> String + Sync),
    budget: Option<u64>,
) -> CheckRecord {
    let mut rec = CheckRecord::new(name, formula, Mode::Exhaustive);
    let k = vars.len();
    if k == 0 {
        rec.cases = 1;
        if !test(&[]) {
            rec.status = Status::Fail;
            rec.witness = Some(Witness::new());
        }
        return rec;
    }
    let limit = budget.unwrap_or(u64::MAX);
    let first = cands(0, &[]);
    let chunks: Vec<(u64, Option<Vec<u32>>)> = first
        .par_iter()
        .map(|&v0| {
            let mut tuple = vec![v0];
            let mut count = 0u64;
            let fail = walk(k, cands, test, &mut tuple, &mut count, limit);
            (count, fail)
        })
        .collect();
    let mut total = 0u64;
    for (count, fail) in chunks {
        if let Some(t) = fail {
            rec.cases = total + count;
            rec.status = Status::Fail;
            rec.witness = Some(vars.iter().zip(&t).map(|(n, &i)| (n.to_string(), label(i).into())).collect());
            return rec;
        }
        total += count;
        if total > limit {
            rec.cases = limit;
            rec.status = Status::Incomplete;
            return rec;
        }
    }
    rec.cases = total;
    rec
}

fn walk(
    k: usize,
    cands: &Candidates<'_>,
    test: &(dyn Fn(&[u32]) -> bool + Sync),
    tuple: &mut Vec<u32>,
    count: &mut u64,
    limit: u64,
) -> Option<Vec<u32>> {
    if tuple.len() == k {
        *count += 1;
        return if test(tuple) { None } else { Some(tuple.clone()) };
    }
    for v in cands(tuple.len(), tuple) {
        if *count > limit {
            return None;
        }
        tuple.push(v);
        let r = walk(k, cands, test, tuple, count, limit);
        tuple.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Seed of a named check, derived from the run seed.
pub fn check_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    seed ^ h
}

/// Draws `samples` tuples sequentially from a seeded stream, then tests them
/// concurrently; the failure reported is the earliest in draw order.
/// `draw` returns `None` to reject a draw.
pub fn random<T: Send + Sync>(
    name: &str,
    formula: &str,
    samples: u64,
    seed: u64,
    draw: &mut dyn FnMut(&mut ChaCha8Rng) -> Option<T>,
    test: &(dyn Fn(&T) -> bool + Sync),
    witness: &dyn Fn(&T) -> Witness,
) -> CheckRecord {
    let mut rec = CheckRecord::new(name, formula, Mode::Random);
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, name));
    let mut tuples = Vec::with_capacity(samples as usize);
    let mut rejected = 0u64;
    while (tuples.len() as u64) < samples {
        match draw(&mut rng) {
            Some(t) => tuples.push(t),
            None => {
                rejected += 1;
                if rejected > 1000 + 100 * samples {
                    rec.status = Status::Incomplete;
                    break;
                }
            }
        }
    }
    let first_fail = tuples.par_iter().position_first(|t| !test(t));
    match first_fail {
        Some(i) => {
            rec.cases = i as u64 + 1;
            rec.status = Status::Fail;
            rec.witness = Some(witness(&tuples[i]));
        }
        None => rec.cases = tuples.len() as u64,
    }
    rec
}

/// Random tuples of indices drawn from candidate lists; empty lists reject.
pub fn random_indices(
    name: &str,
    formula: &str,
    vars: &[&str],
    cands: &Candidates<'_>,
    test: &(dyn Fn(&[u32]) -> bool + Sync),
    label: &(dyn Fn(u32) -> String + Sync),
    samples: u64,
    seed: u64,
) -> CheckRecord {
    use rand::Rng;
    let k = vars.len();
    let mut draw = |rng: &mut ChaCha8Rng| {
        let mut t = Vec::with_capacity(k);
        for d in 0..k {
            let c = cands(d, &t);
            if c.is_empty() {
                return None;
            }
            t.push(c[rng.gen_range(0..c.len())]);
        }
        Some(t)
    };
    let w = |t: &Vec<u32>| vars.iter().zip(t).map(|(n, &i)| (n.to_string(), label(i).into())).collect();
    random(name, formula, samples, seed, &mut draw, &|t: &Vec<u32>| test(t), &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_is_lexicographic() {
        let cands = |_: usize, _: &[u32]| (0..5).collect::<Vec<u32>>();
        let r = exhaustive("sum", "x+y != 5", &["x", "y"], &cands, &|t| t[0] + t[1] != 5, &|i| i.to_string(), None);
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.unwrap();
        assert_eq!((w["x"].as_str(), w["y"].as_str()), (Some("1"), Some("4")));
        let r = exhaustive("all", "true", &["x", "y"], &cands, &|_| true, &|i| i.to_string(), None);
        assert_eq!((r.status, r.cases), (Status::Pass, 25));
        let r = exhaustive("all", "true", &["x", "y"], &cands, &|_| true, &|i| i.to_string(), Some(10));
        assert_eq!(r.status, Status::Incomplete);
    }

    #[test]
    fn random_is_reproducible() {
        let cands = |_: usize, _: &[u32]| (0..50).collect::<Vec<u32>>();
        let run = || random_indices("r", "x != y", &["x", "y"], &cands, &|t| t[0] != t[1], &|i| i.to_string(), 500, 3);
        assert_eq!(run(), run());
    }
}
