//! Idempotent quadruples: the block example and a census on a small line.

use jordanlab::axioms::TableBackend;
use jordanlab::geometry::Geometry;
use jordanlab::modular::{idempotent_census, peirce_example};
use jordanlab::rings::Ring;

fn main() {
    for ring in ["Q", "Fp:2"] {
        let pe = peirce_example(&ring.parse::<Ring>().unwrap(), 1, 1, 1, 1).unwrap();
        let (kind, recs) = pe.checks().unwrap();
        let failed: Vec<&str> = recs.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
        println!("{}: {kind}, not holding: {failed:?}", pe.geometry);
    }

    let g: Geometry = "projline:Fp:3".parse().unwrap();
    let census = idempotent_census(&TableBackend::from_geometry(&g).unwrap()).unwrap();
    println!("{g}: {census:?}");
}
