use std::process::Command;

use jordanlab::report::CheckReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jordanlab"))
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("jordanlab-cli-{}-{name}", std::process::id()))
}

#[test]
fn jordan_suite_passes_with_exit_zero() {
    let out = tmp("jordan.json");
    let st = bin().args(["axioms", "jordan", "--geometry", "projline:Fp:5", "--mode", "exhaustive", "--json"]).arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let rep = CheckReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rep.checks.len(), 6);
    assert!(rep.checks.iter().all(|c| c.passed()));
    assert_eq!(rep.config.geometry.as_deref(), Some("projline:Fp:5"));
}

#[test]
fn modular_word_is_evaluated() {
    let o = bin().args(["modular", "--geometry", "projline:Fp:7", "--triple", "0,inf,1", "--word", "STST"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let rep = CheckReport::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let res = rep.result.clone().unwrap();
    assert_eq!(res["word"], "STST");
    assert_eq!(res["matrix"], serde_json::json!([[-1, -1], [1, 0]]));
    assert!(rep.check("([S][T])^3=1").unwrap().passed());
}

#[test]
fn pair_extract_writes_the_matrix_pair() {
    let out = tmp("pair.json");
    let st = bin().args(["pair", "extract", "--geometry", "gras:Q:1+2", "--json"]).arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let rep = CheckReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let res = rep.result.unwrap();
    assert_eq!(res["dims"], serde_json::json!([2, 2]));
    assert_eq!(res["ring"], "Q");
}

#[test]
fn failing_and_usage_exit_codes() {
    let st = bin().args(["axioms", "intro", "--geometry", "projline:Fp:5"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = bin().args(["axioms", "jordan", "--geometry", "projline:Q", "--mode", "exhaustive"]).output().unwrap();
    assert_eq!(st.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&st.stderr).contains("finite"));
    let st = bin().args(["axioms", "jordan", "--geometry", "nonsense"]).output().unwrap();
    assert_eq!(st.status.code(), Some(64));
    let st = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(st.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&st.stderr).contains("Usage"));
}

#[test]
fn budget_makes_a_run_incomplete() {
    let st = bin().args(["axioms", "jordan", "--geometry", "projline:Fp:7", "--budget", "10"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}

#[test]
fn same_seed_same_report_across_thread_counts() {
    let run = |threads: &str| {
        let o = bin()
            .env("JORDANLAB_THREADS", threads)
            .args(["axioms", "associative", "--geometry", "gras:Q:1+2", "--samples", "100", "--seed", "5"])
            .output()
            .unwrap();
        CheckReport::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap().canonical_json()
    };
    assert_eq!(run("1"), run("3"));
}
