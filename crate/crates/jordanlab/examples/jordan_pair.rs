//! The quadratic Jordan pair of a base pair, and JP1-JP3.

use jordanlab::geometry::Geometry;
use jordanlab::tangent::{check_pair_identities, extract_pair, format_vector, BasePair, PairMode, Sign};

fn main() {
    let g: Geometry = "gras:Q:1+2".parse().unwrap();
    let pair = extract_pair(&BasePair::standard(&g, 1).unwrap()).unwrap();
    let r = pair.ring().clone();
    let v = |xs: &[i64]| xs.iter().map(|&x| r.from_i64(x)).collect::<Vec<_>>();
    let (x, a) = (v(&[1, 2]), v(&[3, -1]));
    println!("Q(x)a = {}", format_vector(&r, &pair.q(Sign::Plus, &x, &a)));
    println!("{}", serde_json::to_string(&pair.to_json()).unwrap());

    for mode in [PairMode::Symbolic, PairMode::Jets { order: 3, samples: 20, seed: 1 }] {
        for rec in check_pair_identities(&pair, mode) {
            println!("{:<28} {:?}", rec.name, rec.status);
        }
    }
}
