//! Running a command through the dispatcher and round-tripping its report.

use jordanlab::report::{CheckReport, Mode, RunConfig};
use jordanlab::run::run;

fn main() {
    let mut cfg = RunConfig::new("modular").with_geometry("projline:Fp:7").with_mode(Mode::Exhaustive);
    cfg.extra.insert("triple".into(), "0,inf,1".into());
    cfg.extra.insert("word".into(), "STST".into());
    let report = run(&cfg).unwrap();
    println!("status {:?}, exit code {}", report.status(), report.exit_code());
    println!("{}", serde_json::to_string_pretty(&report.result).unwrap());

    let back = CheckReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    assert_eq!(run(&cfg).unwrap().canonical_json(), report.canonical_json());
}
