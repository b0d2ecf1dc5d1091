//! The 3-graded Lie algebra of a Jordan pair and its geometric flows.

use jordanlab::geometry::Geometry;
use jordanlab::tangent::{extract_pair, tkk_checks, BasePair, Flows, GradedLieAlgebra};

fn main() {
    let g: Geometry = "gras:Q:1+2".parse().unwrap();
    let base = BasePair::standard(&g, 1).unwrap();
    let pair = extract_pair(&base).unwrap();
    let alg = GradedLieAlgebra::new(&pair);
    println!("dims g1, g0, g-1: {:?}", alg.dims());
    let mut recs = tkk_checks(&alg, 50, 1);
    recs.extend(Flows::new(&alg, &base).unwrap().checks(20, 1));
    for rec in recs {
        println!("{:<26} {:?}", rec.name, rec.status);
    }
}
