//! Ternary tables checked as torsors, and the structures derived from a
//! finite geometry.

use jordanlab::axioms::appendix_suite;
use jordanlab::geometry::{Geometry, PointTable};
use jordanlab::torsor::{check_structure, Kind, TernaryTable};

fn main() {
    let z5 = TernaryTable::cyclic(5);
    for rec in check_structure(Kind::CommutativeTorsor, &z5).unwrap() {
        println!("Z/5 {} {:?}", rec.name, rec.status);
    }

    // (xyz) = x - y + z read back from JSON
    let back = TernaryTable::from_json(&z5.to_json()).unwrap();
    assert_eq!(back, z5);

    let g: Geometry = "projline:Fp:3".parse().unwrap();
    let t = PointTable::new(&g).unwrap();
    let recs = appendix_suite(&t);
    let passed = recs.iter().filter(|r| r.passed()).count();
    println!("{g}: {passed}/{} derived-structure checks pass", recs.len());
}
