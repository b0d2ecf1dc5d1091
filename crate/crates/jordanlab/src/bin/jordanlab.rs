use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value as Json};

use jordanlab::report::{Mode, RunConfig, Status};
use jordanlab::run::{default_mode, run};

const USAGE_EXIT: u8 = 64;

#[derive(Parser)]
#[command(name = "jordanlab", version, about = "Exact checks of Jordan and associative geometries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Ring descriptor, e.g. `Fp:5`, `Q`, `Weil:Q[e^2]`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Geometry descriptor, e.g. `projline:Fp:5`, `gras:Q:1+2`.
    #[arg(long, global = true)]
    geometry: Option<String>,
    /// `exhaustive` or `random`; defaults to exhaustive over finite rings.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    #[arg(long, global = true, default_value_t = 1000)]
    samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Jet order for jet-ring checks.
    #[arg(long, global = true)]
    jets: Option<u32>,
    /// Cap on exhaustive cases per check.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Rank of the base point `o`.
    #[arg(long, global = true)]
    rank: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure-map axiom suites.
    #[command(subcommand)]
    Axioms(AxiomsCmd),
    /// Modular group representation of a transversal triple.
    Modular {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        word: Option<String>,
    },
    /// Idempotency of a quadruple `a,x,b,y`.
    Idempotent {
        #[arg(long)]
        quadruple: String,
    },
    /// Count of idempotents in a finite geometry.
    Census,
    /// The block-matrix idempotent.
    Peirce {
        /// Ranks `e,u,v,h`.
        #[arg(long, default_value = "1,1,1,0")]
        blocks: String,
    },
    #[command(subcommand)]
    Torsor(TorsorCmd),
    #[command(subcommand)]
    Pair(PairCmd),
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    #[command(subcommand)]
    Jts(JtsCmd),
    #[command(subcommand)]
    Jet(JetCmd),
    #[command(subcommand)]
    Tangent(TangentCmd),
}

#[derive(Subcommand)]
enum AxiomsCmd {
    Jordan,
    Associative,
    Appendix,
    Compatibility,
    Polarity {
        #[arg(long)]
        polarity: String,
    },
    /// Closed-form homographies of the projective line.
    Intro,
}

#[derive(Subcommand)]
enum TorsorCmd {
    Check {
        /// Ternary table JSON file.
        table: PathBuf,
        #[arg(long, default_value = "torsor")]
        kind: String,
    },
}

#[derive(Subcommand)]
enum PairCmd {
    Extract,
    Check {
        #[arg(long)]
        symbolic: bool,
        /// Pair JSON file instead of extraction.
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    Tkk {
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    Formulas,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    FromTriple {
        #[arg(long)]
        unit: Option<String>,
        /// `jordan`, `associative` or `both`.
        #[arg(long, default_value = "both")]
        algebra: String,
    },
}

#[derive(Subcommand)]
enum JtsCmd {
    FromPolarity {
        #[arg(long)]
        polarity: String,
        #[arg(long)]
        base: Option<String>,
    },
}

#[derive(Subcommand)]
enum JetCmd {
    Check {
        /// Identity `lhs = rhs` in `Q`, `D`, `B`, `Qi`.
        expr: String,
        #[arg(long, default_value = "plus")]
        scaling: String,
        #[arg(long)]
        pair: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TangentCmd {
    Contracts,
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn config(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), String> {
    let mut extra = Map::new();
    let mut put = |k: &str, v: String| {
        extra.insert(k.into(), Json::String(v));
    };
    let command = match cli.cmd {
        Cmd::Axioms(a) => match a {
            AxiomsCmd::Jordan => "axioms jordan",
            AxiomsCmd::Associative => "axioms associative",
            AxiomsCmd::Appendix => "axioms appendix",
            AxiomsCmd::Compatibility => "axioms compatibility",
            AxiomsCmd::Polarity { polarity } => {
                put("polarity", polarity);
                "axioms polarity"
            }
            AxiomsCmd::Intro => "axioms intro",
        },
        Cmd::Modular { triple, word } => {
            put("triple", triple);
            if let Some(w) = word {
                put("word", w);
            }
            "modular"
        }
        Cmd::Idempotent { quadruple } => {
            put("quadruple", quadruple);
            "idempotent"
        }
        Cmd::Census => "census",
        Cmd::Peirce { blocks } => {
            put("blocks", blocks);
            "peirce"
        }
        Cmd::Torsor(TorsorCmd::Check { table, kind }) => {
            put("table", read(&table)?);
            put("kind", kind);
            "torsor check"
        }
        Cmd::Pair(p) => match p {
            PairCmd::Extract => "pair extract",
            PairCmd::Check { symbolic, pair } => {
                if symbolic {
                    put("symbolic", "true".into());
                }
                if let Some(f) = pair {
                    put("pair", read(&f)?);
                }
                "pair check"
            }
            PairCmd::Tkk { pair } => {
                if let Some(f) = pair {
                    put("pair", read(&f)?);
                }
                "pair tkk"
            }
            PairCmd::Formulas => "pair formulas",
        },
        Cmd::Algebra(AlgebraCmd::FromTriple { unit, algebra }) => {
            if let Some(u) = unit {
                put("unit", u);
            }
            put("algebra", algebra);
            "algebra from-triple"
        }
        Cmd::Jts(JtsCmd::FromPolarity { polarity, base }) => {
            put("polarity", polarity);
            if let Some(b) = base {
                put("base", b);
            }
            "jts from-polarity"
        }
        Cmd::Jet(JetCmd::Check { expr, scaling, pair }) => {
            put("expr", expr);
            put("scaling", scaling);
            if let Some(f) = pair {
                put("pair", read(&f)?);
            }
            "jet check"
        }
        Cmd::Tangent(TangentCmd::Contracts) => "tangent contracts",
    };
    let c = cli.common;
    if let Some(k) = c.rank {
        extra.insert("rank".into(), Json::from(k));
    }
    let mut cfg = RunConfig {
        command: command.into(),
        ring: c.ring,
        geometry: c.geometry,
        samples: c.samples,
        seed: c.seed,
        jets: c.jets,
        budget: c.budget,
        output: c.json.as_ref().map(|p| p.display().to_string()),
        extra,
        ..Default::default()
    };
    cfg.mode = c.mode.unwrap_or_else(|| default_mode(&cfg));
    Ok((cfg, c.json))
}

fn threads() {
    if let Some(n) = std::env::var("JORDANLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_EXIT);
        }
    };
    threads();
    let (cfg, out) = match config(cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}\n\nRun `jordanlab --help` for usage.");
            return ExitCode::from(USAGE_EXIT);
        }
    };
    let text = report.to_json();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(USAGE_EXIT);
            }
            for c in &report.checks {
                let s = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Incomplete => "INCOMPLETE",
                };
                println!("{s:<10} {} ({} cases)", c.name, c.cases);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
