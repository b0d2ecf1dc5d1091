//! Ring descriptors and exact arithmetic.

use jordanlab::rings::Ring;

fn main() {
    for d in ["Z", "Q", "Fp:7", "Zn:12", "Poly:Q[x,y]", "Weil:Fp:3[e^2]"] {
        let r: Ring = d.parse().expect("descriptor");
        println!("{d:>16} -> {r}  finite={} char={}", r.is_finite(), r.characteristic());
    }

    let q: Ring = "Q".parse().unwrap();
    let a = q.parse_element("3/4").unwrap();
    let b = q.parse_element("-5/6").unwrap();
    println!("3/4 * -5/6 = {}", q.format(&q.mul(&a, &b)));

    let f7: Ring = "Fp:7".parse().unwrap();
    let three = f7.from_i64(3);
    println!("3^-1 in F7 = {}", f7.format(&f7.inv(&three).unwrap()));

    // dual numbers: eps^2 = 0, and 1 + eps is a unit
    let dual = q.tangent();
    let eps = dual.generator(0);
    let u = dual.add(&dual.one(), &eps);
    println!("in {dual}: eps^2 = {}, (1+eps)^-1 = {}", dual.format(&dual.mul(&eps, &eps)), dual.format(&dual.inv(&u).unwrap()));

    let jets = q.jets("d", 3).unwrap();
    let d = jets.generator(0);
    println!("in {jets}: d^3 = {}, d^4 = {}", jets.format(&jets.pow(&d, 3)), jets.format(&jets.pow(&d, 4)));
}
