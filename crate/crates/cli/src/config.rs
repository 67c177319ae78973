use std::fmt;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use osserman_core::Causal;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_POINTS: usize = 20;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_BOUND: i64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Algebraic model on R^{3s}: g_ab = 0, R1 = 0, R2 = constant curvature
    Lemma21,
    /// Polynomial metric realizing the model with R2 = constant curvature
    Lemma31,
    /// The explicit signature (4,2) metric on R^6
    Remark32,
    /// Read the instance from --in
    File,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Lemma21 => "lemma21",
            Family::Lemma31 => "lemma31",
            Family::Remark32 => "remark32",
            Family::File => "file",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CausalChoice {
    Both,
    Spacelike,
    Timelike,
}

impl CausalChoice {
    pub fn types(self) -> Vec<Causal> {
        match self {
            CausalChoice::Both => vec![Causal::Spacelike, Causal::Timelike],
            CausalChoice::Spacelike => vec![Causal::Spacelike],
            CausalChoice::Timelike => vec![Causal::Timelike],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Markdown,
}

/// Flags shared by every subcommand; echoed into each report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct RunConfig {
    /// Instance family; inferred as `file` when --in is given
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Block size s (dimension 3s); s >= 2
    #[arg(long = "s", default_value_t = 2)]
    pub s: usize,
    /// Random directions per causal type (after the deterministic probes)
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Base points for metric families
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Sampled vectors have integer entries in [-bound, bound]
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t = CausalChoice::Both)]
    pub causal: CausalChoice,
    /// Exit 1 unless the instance shows the expected profile
    #[arg(long)]
    pub expect_paper: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Input file; `realize` takes a metric file and then an R2 tensor file
    #[arg(long = "in")]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: None,
            s: 2,
            samples: DEFAULT_SAMPLES,
            points: DEFAULT_POINTS,
            seed: DEFAULT_SEED,
            bound: DEFAULT_BOUND,
            causal: CausalChoice::Both,
            expect_paper: false,
            format: OutputFormat::Json,
            inputs: Vec::new(),
            out: None,
        }
    }
}

impl RunConfig {
    pub fn resolved_family(&self) -> Family {
        match self.family {
            Some(f) => f,
            None if !self.inputs.is_empty() => Family::File,
            None => Family::Lemma21,
        }
    }
}
