//! Check outcomes and their JSON form.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value as Json};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exhaustive,
    Random,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "random" => Ok(Mode::Random),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        })
    }
}

/// Named tuple replaying a failure, keys in variable order.
pub type Witness = Map<String, Json>;

/// Builds a witness from `(name, value)` pairs.
pub fn witness<I, K, V>(pairs: I) -> Witness
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<String>,
{
    pairs.into_iter().map(|(k, v)| (k.into(), Json::String(v.into()))).collect()
}

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity being checked, written out.
    #[serde(rename = "paper_ref")]
    pub formula: String,
    pub mode: Mode,
    pub cases: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl CheckRecord {
    pub fn new(name: &str, formula: &str, mode: Mode) -> CheckRecord {
        CheckRecord { name: name.into(), formula: formula.into(), mode, cases: 0, status: Status::Pass, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Single yes/no fact, recorded as one case.
    pub fn fact(name: &str, formula: &str, ok: bool, w: impl FnOnce() -> Witness) -> CheckRecord {
        let mut r = CheckRecord::new(name, formula, Mode::Exhaustive);
        r.cases = 1;
        if !ok {
            r.status = Status::Fail;
            r.witness = Some(w());
        }
        r
    }

    pub fn fail_with(mut self, w: Witness) -> CheckRecord {
        self.status = Status::Fail;
        self.witness = Some(w);
        self
    }
}

/// Settings of one run, echoed into its report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub geometry: Option<String>,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub jets: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Map::is_empty", default)]
    pub extra: Map<String, Json>,
}

impl RunConfig {
    pub fn new(command: &str) -> RunConfig {
        RunConfig { command: command.into(), samples: 1000, ..Default::default() }
    }
    pub fn with_geometry(mut self, g: &str) -> Self {
        self.geometry = Some(g.into());
        self
    }
    pub fn with_mode(mut self, m: Mode) -> Self {
        self.mode = m;
        self
    }
    pub fn with_samples(mut self, n: u64) -> Self {
        self.samples = n;
        self
    }
    pub fn with_seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }
    pub fn with_budget(mut self, b: u64) -> Self {
        self.budget = Some(b);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Json>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("schema version {0} is not supported (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CheckReport {
    pub fn new(config: RunConfig) -> CheckReport {
        CheckReport {
            schema_version: SCHEMA_VERSION,
            command: config.command.clone(),
            seed: config.seed,
            config,
            elapsed_ms: 0,
            checks: vec![],
            result: None,
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(rs);
    }

    /// Fail beats incomplete beats pass.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Incomplete) {
            Status::Incomplete
        } else {
            Status::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Incomplete => 2,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<CheckReport, ReportError> {
        let r: CheckReport = serde_json::from_str(s)?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(ReportError::Version(r.schema_version));
        }
        Ok(r)
    }

    /// JSON with the timing field zeroed.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.elapsed_ms = 0;
        c.to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_witness() {
        let mut rep = CheckReport::new(RunConfig::new("axioms jordan").with_geometry("projline:Fp:5").with_seed(7));
        rep.push(CheckRecord::new("IN", "J∘J = id", Mode::Exhaustive));
        rep.push(CheckRecord::new("S", "J^{xx}_a = J^{aa}_x", Mode::Random).fail_with(witness([("x", "0"), ("a", "inf")])));
        let s = rep.to_json();
        assert!(s.contains("\"paper_ref\""));
        let back = CheckReport::from_json(&s).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.exit_code(), 1);
        let keys: Vec<&String> = back.checks[1].witness.as_ref().unwrap().keys().collect();
        assert_eq!(keys, ["x", "a"]);
        let bad = s.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(CheckReport::from_json(&bad), Err(ReportError::Version(9))));
    }
}
