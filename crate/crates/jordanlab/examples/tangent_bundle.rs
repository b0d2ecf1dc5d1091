//! Scalar extension by a Weil algebra and the tangent-bundle contracts.

use jordanlab::geometry::Geometry;
use jordanlab::rings::Ring;
use jordanlab::tangent::{extend_geometry, tangent_contracts};

fn main() {
    let g: Geometry = "projline:Fp:5".parse().unwrap();
    let tk: Ring = "Weil:Fp:5[e^2]".parse().unwrap();
    let e = extend_geometry(&g, &tk).unwrap();
    let x = g.parse_point("2").unwrap();
    println!("{} over {}: fiber rank at 2 is {}", e.ext(), e.base(), e.fiber_rank(&x));
    for rec in tangent_contracts(&e, 200, 5) {
        println!("{:<34} {:?} ({} cases)", rec.name, rec.status, rec.cases);
    }
}
