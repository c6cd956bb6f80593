//! Command-line front end. Every command produces one JSON record; the text
//! format is a rendering of the same record.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::frames::{
    analyze, symmetric_approx_fixed_excess, symmetric_approx_global, symmetric_approx_subspace,
};
use crate::gauges::Gauge;
use crate::io::{read_frame, read_matrix};
use crate::isometry_approx::{dist_rank_k, nearest_global, nearest_rank_k};
use crate::linalg::Tolerances;
use crate::oracle::{random_small_matrices, verify_matrices, MAX_SEARCH_DIM};
use crate::report::{
    DistanceRecord, FrameApproxRecord, GlobalRecord, MinimizersRecord, RankKRecord,
};

/// Environment variable holding the seed of randomized oracle trials.
pub const SEED_ENV: &str = "ISOPROXIM_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "isoproxim",
    version,
    about = "Nearest partial isometries and Parseval frames under unitarily invariant norms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub tolerances: TolArgs,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Relative rank threshold (scaled by max(m, n) and s_1).
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    /// Relative clustering tolerance for equal singular values.
    #[arg(long, global = true)]
    pub tol_cluster: Option<f64>,
    /// Absolute tolerance for singular values equal to one half.
    #[arg(long, global = true)]
    pub tol_half: Option<f64>,
    /// Entrywise partial-isometry tolerance.
    #[arg(long, global = true)]
    pub tol_iso: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances> {
        let mut t = Tolerances::default();
        if let Some(v) = self.tol_rank {
            t.rank_rel = v;
        }
        if let Some(v) = self.tol_cluster {
            t.cluster_rel = v;
        }
        if let Some(v) = self.tol_half {
            t.half = v;
        }
        if let Some(v) = self.tol_iso {
            t.iso = v;
        }
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Args)]
pub struct RankArg {
    /// Target rank k.
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nearest partial isometry of rank k, or over all ranks.
    Nearest {
        input: PathBuf,
        #[arg(long, conflicts_with = "global", required_unless_present = "global")]
        rank: Option<usize>,
        #[arg(long)]
        global: bool,
        #[arg(long, default_value = "fro")]
        gauge: String,
    },
    /// Distance to the rank-k partial isometries.
    Distance {
        input: PathBuf,
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, default_value = "fro")]
        gauge: String,
    },
    /// Closed-form description of every rank-k minimizer.
    Minimizers {
        input: PathBuf,
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, default_value = "fro")]
        gauge: String,
    },
    /// Symmetric Parseval approximation of a frame.
    FrameApprox {
        input: PathBuf,
        /// fixed-excess:<k>, global or subspace.
        #[arg(long)]
        mode: String,
        /// Matrix whose columns span the target subspace (subspace mode).
        #[arg(long)]
        subspace: Option<PathBuf>,
    },
    /// Excess, optimal bounds and Parseval/tight flags of a frame.
    Analyze { input: PathBuf },
    /// Compare the solver with the brute-force search oracle.
    Verify {
        /// Optional matrix (at most 3x3); random trials otherwise.
        input: Option<PathBuf>,
        #[arg(long, default_value = "fro")]
        gauge: String,
        #[arg(long, default_value_t = 24)]
        resolution: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameMode {
    FixedExcess(usize),
    Global,
    Subspace,
}

impl std::str::FromStr for FrameMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "global" => Ok(FrameMode::Global),
            "subspace" => Ok(FrameMode::Subspace),
            _ => s
                .strip_prefix("fixed-excess:")
                .and_then(|k| k.parse().ok())
                .map(FrameMode::FixedExcess)
                .ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "unknown mode `{s}`; expected fixed-excess:<k>, global or subspace"
                    ))
                }),
        }
    }
}

fn to_value<T: Serialize>(record: &T) -> Value {
    serde_json::to_value(record).expect("records serialize")
}

fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))
        }),
        Err(_) => Ok(0),
    }
}

/// Runs one command and returns its record.
pub fn execute(cli: &Cli) -> Result<Value> {
    let tol = cli.tolerances.resolve()?;
    match &cli.command {
        Command::Nearest {
            input,
            rank,
            global,
            gauge,
        } => {
            let gauge: Gauge = gauge.parse()?;
            let f = read_matrix(input)?;
            if *global {
                let g = nearest_global(&f, &gauge, &tol)?;
                Ok(to_value(&GlobalRecord::new(gauge, &g)))
            } else {
                let k = rank.expect("clap enforces --rank or --global");
                Ok(to_value(&RankKRecord::from(&nearest_rank_k(
                    &f, k, &gauge, &tol,
                )?)))
            }
        }
        Command::Distance { input, rank, gauge } => {
            let gauge: Gauge = gauge.parse()?;
            let f = read_matrix(input)?;
            let distance = dist_rank_k(&f, rank.rank, &gauge, &tol)?;
            Ok(to_value(&DistanceRecord {
                k: rank.rank,
                gauge,
                distance,
            }))
        }
        Command::Minimizers { input, rank, gauge } => {
            let gauge: Gauge = gauge.parse()?;
            let f = read_matrix(input)?;
            let res = nearest_rank_k(&f, rank.rank, &gauge, &tol)?;
            Ok(to_value(&MinimizersRecord::from(&res)))
        }
        Command::FrameApprox {
            input,
            mode,
            subspace,
        } => {
            let mode: FrameMode = mode.parse()?;
            let fr = read_frame(input)?;
            let record = match mode {
                FrameMode::FixedExcess(k) => {
                    FrameApproxRecord::from(&symmetric_approx_fixed_excess(&fr, k, &tol)?)
                }
                FrameMode::Global => FrameApproxRecord::from(&symmetric_approx_global(&fr, &tol)?),
                FrameMode::Subspace => {
                    let path = subspace.as_ref().ok_or_else(|| {
                        Error::InvalidInput("subspace mode needs --subspace <path>".into())
                    })?;
                    let basis = read_matrix(path)?;
                    FrameApproxRecord::from(&symmetric_approx_subspace(&fr, &basis, &tol)?)
                }
            };
            Ok(to_value(&record))
        }
        Command::Analyze { input } => {
            let fr = read_frame(input)?;
            Ok(to_value(&analyze(&fr, &tol)?))
        }
        Command::Verify {
            input,
            gauge,
            resolution,
            trials,
        } => {
            let gauge: Gauge = gauge.parse()?;
            let inputs = match input {
                Some(path) => {
                    let f = read_matrix(path)?;
                    if f.rows() > MAX_SEARCH_DIM || f.cols() > MAX_SEARCH_DIM {
                        return Err(Error::Precondition(format!(
                            "verify supports matrices up to {MAX_SEARCH_DIM}x{MAX_SEARCH_DIM}"
                        )));
                    }
                    vec![f]
                }
                None => random_small_matrices(seed_from_env()?, *trials),
            };
            Ok(to_value(&verify_matrices(
                &inputs,
                &gauge,
                *resolution,
                &tol,
            )?))
        }
    }
}

/// Renders a record as indented `key: value` lines.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for (i, item) in items.iter().enumerate() {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            render_into(item, indent + 2, out);
                        }
                    }
                    other => out.push_str(&format!("{pad}{key}: {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

pub fn format_output(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json value");
            s.push('\n');
            s
        }
        Format::Text => render_text(value),
    }
}
