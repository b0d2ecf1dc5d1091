//! Closed-form homographies of the projective line against the projector
//! construction, including the variant with the wrong denominator.

use jordanlab::geometry::{projline, Geometry};
use jordanlab::report::Mode;

fn main() {
    let g: Geometry = "projline:Fp:5".parse().unwrap();
    for rec in projline::homography_checks(&g, Mode::Exhaustive, 0, 0) {
        let w = rec.witness.map(|w| format!("  witness {}", serde_json::Value::Object(w))).unwrap_or_default();
        println!("{:?} {} ({} cases){w}", rec.status, rec.name, rec.cases);
    }
}
