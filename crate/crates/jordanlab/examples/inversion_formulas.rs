//! Quasi-inverses and the inversion formulas against the geometric maps.

use jordanlab::geometry::Geometry;
use jordanlab::tangent::{extract_pair, quasi_invertibility_criterion, BasePair, Formulas};

fn main() {
    let g: Geometry = "gras:Fp:7:1+2".parse().unwrap();
    let base = BasePair::standard(&g, 1).unwrap();
    let pair = extract_pair(&base).unwrap();
    for rec in Formulas::new(&base, &pair).crosscheck(100, 3) {
        println!("{:<26} {:?} ({} cases)", rec.name, rec.status, rec.cases);
    }
    for rec in quasi_invertibility_criterion(&base, &pair) {
        println!("{:<26} {:?} ({} cases)", rec.name, rec.status, rec.cases);
    }
}
