//! Canonical spans, solving and integer normal forms.

use jordanlab::linalg::Matrix;
use jordanlab::rings::Ring;

fn main() {
    let f3: Ring = "Fp:3".parse().unwrap();
    let m = Matrix::from_i64(&f3, &[&[1, 2], &[2, 1], &[0, 1]]);
    println!("span over F3 of {m}: canonical basis {}", m.canonical_span().unwrap());
    println!("rank = {}", m.rank().unwrap());

    let q: Ring = "Q".parse().unwrap();
    let a = Matrix::from_i64(&q, &[&[2, 1], &[1, 3]]);
    let b = Matrix::from_i64(&q, &[&[1], &[2]]);
    println!("solve {a} x = {b}: x = {}", a.solve(&b).unwrap());
    println!("inverse: {}  det: {}", a.invert().unwrap(), q.format(&a.det()));

    let z: Ring = "Z".parse().unwrap();
    let k = Matrix::from_i64(&z, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    println!("Hermite rows of {k}: {}", k.hermite_rows().unwrap());
    println!("Smith invariants: {:?}", k.smith_invariants().unwrap());
}
