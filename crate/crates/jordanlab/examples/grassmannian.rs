//! Points of a Grassmannian, transversality and the structure maps.

use jordanlab::geometry::{Geometry, PointTable};

fn main() {
    let g: Geometry = "gras:Fp:2:3".parse().unwrap();
    let t = PointTable::new(&g).unwrap();
    println!("{g}: {} points", t.len());

    let line: Geometry = "projline:Q".parse().unwrap();
    let p = |s: &str| line.parse_point(s).unwrap();
    let (x, a, z) = (p("1"), p("2"), p("3"));
    let j = line.j_map(&x, &a, &z).unwrap();
    println!("J^(1,3)_2 swaps 1 and 3: {} {}", line.label(&j.apply(&x)), line.label(&j.apply(&z)));
    println!("J^(1,3)_2 fixes 2: {}", line.label(&j.apply(&a)));
    println!("J^(1,3)_2(0) = {}", line.label(&j.apply(&p("0"))));

    let m = line.m_map(&p("0"), &p("2"), &p("inf"), &p("5")).unwrap();
    println!("M^(0,inf)_(2,5)(3) = {} (a y^-1 b = 10/3)", line.label(&m.apply(&p("3"))));

    let g: Geometry = "gras:Q:2+2".parse().unwrap();
    let o = g.parse_point("[1, 0; 0, 1; 0, 0; 0, 0]").unwrap();
    let o2 = g.parse_point("[0, 0; 0, 0; 1, 0; 0, 1]").unwrap();
    println!("o transversal to o': {}", g.transversal(&o, &o2));
}
