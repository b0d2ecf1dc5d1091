//! Dispatch of a [`RunConfig`] to the suites, producing one ordered report.
//!
//! Command names are space-separated (`"axioms jordan"`, `"pair tkk"`).
//! Arguments that only some commands take live in `config.extra`:
//!
//! | key        | used by                                   | form                              |
//! |------------|-------------------------------------------|-----------------------------------|
//! | `triple`   | `modular`                                 | `0,inf,1` or basis matrices       |
//! | `word`     | `modular`                                 | word over `STFIstfi`              |
//! | `quadruple`| `idempotent`                              | `a,x,b,y`                         |
//! | `blocks`   | `peirce`                                  | `e,u,v,h` ranks                   |
//! | `table`    | `torsor check`                            | ternary table JSON text           |
//! | `kind`     | `torsor check`                            | structure kind                    |
//! | `rank`     | `pair *`, `jet check`, `algebra *`        | rank of the base point `o`        |
//! | `pair`     | `pair check`, `pair tkk`, `jet check`     | serialized pair JSON text         |
//! | `symbolic` | `pair check`                              | `true` for polynomial arguments   |
//! | `unit`     | `algebra from-triple`                     | point `e`                         |
//! | `algebra`  | `algebra from-triple`                     | `jordan`, `associative` or `both` |
//! | `polarity` | `axioms polarity`, `jts from-polarity`    | matrix `[a, b; c, d]`             |
//! | `base`     | `jts from-polarity`                       | point `o`                         |
//! | `expr`     | `jet check`                               | `lhs = rhs` over `Q D B Qi`       |
//! | `scaling`  | `jet check`                               | `plus`, `minus` or `both`         |

use std::time::Instant;

use serde_json::{json, Value as Json};

use crate::axioms::{self, GeometryBackend, RunOptions, TableBackend};
use crate::geometry::{projline, GeomError, Geometry, GrasPoint, PointTable, ProjectiveMap, Shape};
use crate::linalg::Matrix;
use crate::modular::{self, ModularError, ModularTriple, Quadruple, Word};
use crate::report::{CheckReport, Mode, RunConfig};
use crate::rings::{Ring, RingError};
use crate::tangent::{self, BasePair, PairJson, PairMode, QuadraticJordanPair, Scaling, Sign, TangentError};
use crate::torsor::{self, Kind, TernaryTable, TorsorError};

/// Every command `run` accepts.
pub const COMMANDS: &[&str] = &[
    "axioms jordan",
    "axioms associative",
    "axioms appendix",
    "axioms compatibility",
    "axioms polarity",
    "axioms intro",
    "modular",
    "idempotent",
    "census",
    "peirce",
    "torsor check",
    "pair extract",
    "pair check",
    "pair tkk",
    "pair formulas",
    "algebra from-triple",
    "jts from-polarity",
    "jet check",
    "tangent contracts",
];

/// Tables with more points than this are not built.
const TABLE_LIMIT: u64 = 4096;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error("bad JSON input: {0}")]
    Json(#[from] serde_json::Error),
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

/// Runs one command. Suites inside a command run concurrently; the records
/// keep their fixed order.
pub fn run(config: &RunConfig) -> Result<CheckReport, RunError> {
    let start = Instant::now();
    let cx = Context::new(config)?;
    let mut report = CheckReport::new(config.clone());
    let result = match config.command.as_str() {
        "axioms jordan" => cx.axioms(&mut report, false)?,
        "axioms associative" => cx.axioms(&mut report, true)?,
        "axioms appendix" => {
            report.extend(axioms::appendix_suite(&cx.table()?));
            None
        }
        "axioms compatibility" => {
            report.extend(axioms::compatibility_checks(&cx.table()?));
            None
        }
        "axioms polarity" => cx.polarity(&mut report)?,
        "axioms intro" => {
            let g = cx.geometry()?;
            if g.shape() != Shape::ProjectiveLine {
                return Err(usage("`axioms intro` needs a projline geometry"));
            }
            report.extend(projline::homography_checks(g, cx.mode, cx.samples, cx.seed));
            None
        }
        "modular" => cx.modular(&mut report)?,
        "idempotent" => cx.idempotent(&mut report)?,
        "census" => {
            let t = cx.table()?;
            let census = modular::idempotent_census(&TableBackend::new(t)).ok_or_else(|| usage("census needs a finite geometry"))?;
            Some(serde_json::to_value(census)?)
        }
        "peirce" => cx.peirce(&mut report)?,
        "torsor check" => {
            let text = cx.extra("table").ok_or_else(|| usage("`torsor check` needs a table"))?;
            let kind: Kind = cx.extra("kind").unwrap_or("torsor").parse().map_err(usage)?;
            let t = TernaryTable::from_json(text)?;
            report.extend(torsor::check_structure(kind, &t)?);
            None
        }
        "pair extract" => {
            let pair = tangent::extract_pair(&cx.base_pair()?)?;
            Some(serde_json::to_value(pair.to_json())?)
        }
        "pair check" => {
            let pair = cx.pair()?;
            let mode = if cx.extra("symbolic") == Some("true") {
                PairMode::Symbolic
            } else if let Some(k) = config.jets {
                PairMode::Jets { order: k, samples: cx.samples, seed: cx.seed }
            } else if cx.mode == Mode::Exhaustive {
                PairMode::Exhaustive
            } else {
                PairMode::Random { samples: cx.samples, seed: cx.seed }
            };
            report.extend(tangent::check_pair_identities(&pair, mode));
            None
        }
        "pair tkk" => {
            let pair = cx.pair()?;
            let alg = tangent::GradedLieAlgebra::new(&pair);
            report.extend(tangent::tkk_checks(&alg, cx.samples, cx.seed));
            if cx.config.extra.get("pair").is_none() {
                let base = cx.base_pair()?;
                report.extend(tangent::Flows::new(&alg, &base)?.checks(cx.samples, cx.seed));
            }
            let dims = alg.dims();
            Some(json!({ "dims": { "g1": dims[0], "g0": dims[1], "g-1": dims[2] } }))
        }
        "pair formulas" => {
            let base = cx.base_pair()?;
            let pair = tangent::extract_pair(&base)?;
            let f = tangent::Formulas::new(&base, &pair);
            let mut recs = f.crosscheck(cx.samples, cx.seed);
            if cx.mode == Mode::Exhaustive {
                recs.extend(tangent::quasi_invertibility_criterion(&base, &pair));
            }
            report.extend(recs);
            None
        }
        "algebra from-triple" => cx.algebra(&mut report)?,
        "jts from-polarity" => {
            let g = cx.geometry()?;
            let p = cx.polarity_map(g)?;
            let o = match cx.extra("base") {
                Some(s) => g.parse_point(s)?,
                None => BasePair::standard(g, cx.rank(g)?)?.o().clone(),
            };
            let ts = tangent::jts_from_polarity(g, &p, &o)?;
            report.extend(ts.checks(cx.samples, cx.seed));
            Some(json!({ "sharp": ts.sharp().to_strings() }))
        }
        "jet check" => {
            let expr: tangent::Expr = cx.extra("expr").ok_or_else(|| usage("`jet check` needs an expression"))?.parse()?;
            let scaling = match cx.extra("scaling").unwrap_or("plus") {
                "plus" => Scaling::Plus,
                "minus" => Scaling::Minus,
                "both" => Scaling::Both,
                s => return Err(usage(format!("unknown scaling `{s}`"))),
            };
            let pair = cx.pair()?;
            report.extend(tangent::koecher_jet_check(&expr, &pair, config.jets.unwrap_or(3), scaling, cx.samples, cx.seed)?);
            None
        }
        "tangent contracts" => {
            let g = cx.geometry()?;
            let ring = cx.ring.clone().ok_or_else(|| usage("`tangent contracts` needs --ring with a Weil ring"))?;
            let e = tangent::extend_geometry(g, &ring)?;
            report.extend(tangent::tangent_contracts(&e, cx.samples, cx.seed));
            None
        }
        other => return Err(usage(format!("unknown command `{other}`; expected one of: {}", COMMANDS.join(", ")))),
    };
    report.result = result;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Exhaustive when every ring named by the config is finite, random otherwise.
pub fn default_mode(config: &RunConfig) -> Mode {
    let finite_ring = config.ring.as_deref().map(|s| s.parse::<Ring>().is_ok_and(|r| r.is_finite()));
    let finite_geom = config.geometry.as_deref().map(|s| s.parse::<Geometry>().is_ok_and(|g| g.ring().is_finite()));
    if finite_ring.unwrap_or(true) && finite_geom.unwrap_or(true) {
        Mode::Exhaustive
    } else {
        Mode::Random
    }
}

struct Context<'c> {
    config: &'c RunConfig,
    ring: Option<Ring>,
    geometry: Option<Geometry>,
    mode: Mode,
    samples: u64,
    seed: u64,
}

impl<'c> Context<'c> {
    fn new(config: &'c RunConfig) -> Result<Self, RunError> {
        let ring = config.ring.as_deref().map(str::parse::<Ring>).transpose()?;
        let geometry = config.geometry.as_deref().map(str::parse::<Geometry>).transpose()?;
        let infinite = |r: &Ring| !r.is_finite();
        if config.mode == Mode::Exhaustive && (ring.as_ref().is_some_and(infinite) || geometry.as_ref().is_some_and(|g| infinite(g.ring()))) {
            return Err(usage("exhaustive mode needs a finite ring; use --mode random"));
        }
        Ok(Context { config, ring, geometry, mode: config.mode, samples: config.samples, seed: config.seed })
    }

    fn extra(&self, key: &str) -> Option<&str> {
        self.config.extra.get(key).and_then(Json::as_str)
    }

    fn geometry(&self) -> Result<&Geometry, RunError> {
        self.geometry.as_ref().ok_or_else(|| usage(format!("`{}` needs --geometry", self.config.command)))
    }

    fn table(&self) -> Result<PointTable, RunError> {
        let g = self.geometry()?;
        if g.ring().cardinality().is_none_or(|q| q.saturating_pow(g.dim() as u32) > TABLE_LIMIT * 16) {
            return Err(usage(format!("`{}` needs a small finite geometry", self.config.command)));
        }
        Ok(PointTable::new(g)?)
    }

    fn options(&self) -> RunOptions {
        RunOptions { mode: self.mode, samples: self.samples, seed: self.seed, budget: self.config.budget }
    }

    fn rank(&self, g: &Geometry) -> Result<usize, RunError> {
        if let Some(v) = self.config.extra.get("rank") {
            let k = v.as_u64().or_else(|| v.as_str().and_then(|s| s.parse().ok())).ok_or_else(|| usage("rank must be a number"))?;
            return Ok(k as usize);
        }
        Ok(match g.shape() {
            Shape::ProjectiveLine => 1,
            Shape::Types(p, _) => p,
            Shape::Full => g.dim() / 2,
        })
    }

    fn base_pair(&self) -> Result<BasePair, RunError> {
        let g = self.geometry()?;
        Ok(BasePair::standard(g, self.rank(g)?)?)
    }

    fn pair(&self) -> Result<QuadraticJordanPair, RunError> {
        match self.extra("pair") {
            Some(text) => {
                let j: PairJson = serde_json::from_str(text)?;
                Ok(QuadraticJordanPair::from_json(&j)?)
            }
            None => Ok(tangent::extract_pair(&self.base_pair()?)?),
        }
    }

    fn points(&self, g: &Geometry, key: &str, n: usize) -> Result<Vec<GrasPoint>, RunError> {
        let text = self.extra(key).ok_or_else(|| usage(format!("`{}` needs --{key}", self.config.command)))?;
        let parts = split_points(text);
        if parts.len() != n {
            return Err(usage(format!("--{key} needs {n} points, got {}", parts.len())));
        }
        parts.iter().map(|s| g.parse_point(s).map_err(RunError::from)).collect()
    }

    fn polarity_map(&self, g: &Geometry) -> Result<ProjectiveMap, RunError> {
        let text = self.extra("polarity").ok_or_else(|| usage(format!("`{}` needs --polarity", self.config.command)))?;
        Ok(ProjectiveMap::new(Matrix::parse_text(g.ring(), text)?)?)
    }

    fn axioms(&self, report: &mut CheckReport, associative: bool) -> Result<Option<Json>, RunError> {
        let g = self.geometry()?;
        let opts = self.options();
        let recs = if self.mode == Mode::Exhaustive {
            let b = TableBackend::new(self.table()?);
            if associative { axioms::check_associative(&b, opts) } else { axioms::check_jordan(&b, opts) }
        } else {
            let b = GeometryBackend::new(g.clone());
            if associative { axioms::check_associative(&b, opts) } else { axioms::check_jordan(&b, opts) }
        };
        report.extend(recs);
        Ok(None)
    }

    fn polarity(&self, report: &mut CheckReport) -> Result<Option<Json>, RunError> {
        let t = self.table()?;
        let p = self.polarity_map(t.geometry())?;
        let (space, recs) = axioms::polarity_space(&t, &p)?;
        report.extend(recs);
        Ok(Some(json!({ "carrier": space.carrier, "labels": space.labels })))
    }

    fn modular(&self, report: &mut CheckReport) -> Result<Option<Json>, RunError> {
        let g = self.geometry()?;
        let pts = self.points(g, "triple", 3)?;
        let be = GeometryBackend::new(g.clone());
        let [a, b, c] = <[GrasPoint; 3]>::try_from(pts).expect("three points");
        let tri = ModularTriple::new(&be, a, b, c)?;
        report.extend(tri.all_checks());
        let Some(w) = self.extra("word") else { return Ok(None) };
        let word: Word = w.parse()?;
        let f = tri.rep.eval(&word);
        let m = word.matrix();
        let image = |p: &GrasPoint| g.label(&f.apply(p));
        let mut result = json!({
            "word": word.to_string(),
            "matrix": m,
            "map": f.matrix().to_strings(),
            "images": { "a": image(&tri.a), "b": image(&tri.b), "c": image(&tri.c) },
        });
        if g.ring().is_finite() {
            if let Ok(t) = PointTable::new(g) {
                let perm: Vec<String> = t.points().iter().map(|p| g.label(&f.apply(p))).collect();
                let labels: Vec<String> = t.points().iter().map(|p| g.label(p)).collect();
                result["permutation"] = json!({ "points": labels, "images": perm });
            }
        }
        Ok(Some(result))
    }

    fn idempotent(&self, report: &mut CheckReport) -> Result<Option<Json>, RunError> {
        let g = self.geometry()?;
        let pts = self.points(g, "quadruple", 4)?;
        let [a, x, b, y] = <[GrasPoint; 4]>::try_from(pts).expect("four points");
        let q = Quadruple { a, x, b, y };
        let be = GeometryBackend::new(g.clone());
        let (kind, recs) = modular::is_idempotent(&be, &q)?;
        report.extend(recs);
        if let Ok(rep) = modular::idempotent_rep(&be, &q) {
            report.extend(rep.checks);
        }
        Ok(Some(json!({ "idempotency": kind.to_string() })))
    }

    fn peirce(&self, report: &mut CheckReport) -> Result<Option<Json>, RunError> {
        let ring = match (&self.ring, &self.geometry) {
            (Some(r), _) => r.clone(),
            (None, Some(g)) => g.ring().clone(),
            (None, None) => return Err(usage("`peirce` needs --ring")),
        };
        let blocks: Vec<usize> = self
            .extra("blocks")
            .unwrap_or("1,1,1,0")
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| usage(format!("bad block rank `{s}`"))))
            .collect::<Result<_, _>>()?;
        let [e, u, v, h] = <[usize; 4]>::try_from(blocks).map_err(|_| usage("--blocks needs four ranks e,u,v,h"))?;
        let p = modular::peirce_example(&ring, e, u, v, h)?;
        let (kind, recs) = p.checks()?;
        report.extend(recs);
        Ok(Some(json!({ "geometry": p.geometry.to_string(), "idempotency": kind.to_string() })))
    }

    fn algebra(&self, report: &mut CheckReport) -> Result<Option<Json>, RunError> {
        let g = self.geometry()?;
        let base = self.base_pair()?;
        let e = match self.extra("unit") {
            Some(s) => g.parse_point(s)?,
            None => default_unit(&base)?,
        };
        let which = self.extra("algebra").unwrap_or("both");
        let mut result = serde_json::Map::new();
        if matches!(which, "jordan" | "both") {
            let ja = tangent::jordan_algebra_from_triple(g, base.o(), base.o2(), &e)?;
            report.extend(ja.checks(self.samples, self.seed));
            result.insert("jordan_unit".into(), json!(tangent::format_vector(g.ring(), ja.unit())));
        }
        if matches!(which, "associative" | "both") {
            let aa = tangent::associative_algebra_from_triple(g, base.o(), base.o2(), &e)?;
            report.extend(aa.checks(self.samples, self.seed));
            let table: Vec<Vec<String>> = aa.table().iter().map(|row| row.iter().map(|v| tangent::format_vector(g.ring(), v)).collect()).collect();
            result.insert("table".into(), json!(table));
        }
        if result.is_empty() {
            return Err(usage(format!("unknown algebra `{which}`")));
        }
        Ok(Some(Json::Object(result)))
    }
}

/// The graph of the identity, `span[I; I]`, when `o` and `o'` have equal rank.
fn default_unit(base: &BasePair) -> Result<GrasPoint, RunError> {
    let (k, m) = (base.o().rank(), base.o2().rank());
    if k != m {
        return Err(usage("no default unit for unequal ranks; pass --unit"));
    }
    let r = base.ring();
    let id = Matrix::identity(r, k);
    Ok(base.point(Sign::Plus, id.data()))
}

/// Splits on commas outside brackets.
fn split_points(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_matrices_and_tokens() {
        assert_eq!(split_points("0,inf,1"), ["0", "inf", "1"]);
        assert_eq!(split_points("[1, 0; 0, 1],[0;1]"), ["[1, 0; 0, 1]", "[0;1]"]);
    }

    #[test]
    fn exhaustive_rejected_over_q() {
        let cfg = RunConfig::new("axioms jordan").with_geometry("projline:Q");
        assert!(matches!(run(&cfg), Err(RunError::Usage(_))));
    }
}
