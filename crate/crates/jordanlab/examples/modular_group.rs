//! The representation of GL(2,Z) attached to a transversal triple.

use jordanlab::axioms::GeometryBackend;
use jordanlab::geometry::Geometry;
use jordanlab::modular::{ModularTriple, Word};

fn main() {
    let g: Geometry = "projline:Fp:7".parse().unwrap();
    let be = GeometryBackend::new(g.clone());
    let p = |s: &str| g.parse_point(s).unwrap();
    let tri = ModularTriple::new(&be, p("0"), p("inf"), p("1")).unwrap();

    let w: Word = "STST".parse().unwrap();
    let f = tri.rep.eval(&w);
    println!("{w} has matrix {:?} and acts as {}", w.matrix(), f.matrix());
    for s in ["0", "1", "inf"] {
        println!("  {s} -> {}", g.label(&f.apply(&p(s))));
    }
    for rec in tri.all_checks() {
        println!("{:<22} {:?}", rec.name, rec.status);
    }
}
