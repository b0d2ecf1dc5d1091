//! Jordan and associative axiom suites, exhaustive and sampled.

use jordanlab::axioms::{check_associative, check_jordan, GeometryBackend, RunOptions, TableBackend};
use jordanlab::geometry::Geometry;

fn main() {
    let g: Geometry = "projline:Fp:5".parse().unwrap();
    let table = TableBackend::from_geometry(&g).unwrap();
    for rec in check_jordan(&table, RunOptions::exhaustive()) {
        println!("{g} {:<4} {:?} over {} tuples", rec.name, rec.status, rec.cases);
    }

    let q: Geometry = "gras:Q:1+2".parse().unwrap();
    let be = GeometryBackend::new(q.clone());
    for rec in check_associative(&be, RunOptions::random(200, 7)) {
        println!("{q} {:<18} {:?} over {} samples", rec.name, rec.status, rec.cases);
    }
}
