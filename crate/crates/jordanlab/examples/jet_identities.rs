//! Identities tested over jet rings, one power of the jet variable at a time.

use jordanlab::geometry::Geometry;
use jordanlab::tangent::{extract_pair, koecher_jet_check, BasePair, Expr, Scaling};

fn main() {
    let g: Geometry = "gras:Q:1+2".parse().unwrap();
    let pair = extract_pair(&BasePair::standard(&g, 1).unwrap()).unwrap();
    for text in ["Q(Q(x)a)b = Q(x)Q(a)Q(x)b", "D(x,a)x = Q(x)a"] {
        let e: Expr = text.parse().unwrap();
        println!("{text}");
        for rec in koecher_jet_check(&e, &pair, 3, Scaling::Plus, 20, 1).unwrap() {
            println!("  {:<14} {:?}", rec.name, rec.status);
        }
    }
}
