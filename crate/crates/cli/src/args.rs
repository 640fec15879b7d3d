use std::path::PathBuf;

use advbridge::estimation::DEFAULT_SAMPLES;
use advbridge::scenario::DEFAULT_POSTERIOR_SAMPLES;
use advbridge::verdict::DEFAULT_Z_THRESHOLD;
use advbridge::SamplingMode;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_EPSILON: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(
    name = "advbridge",
    version,
    about = "Distance-to-entropy advantage experiments on randomized sphere binarization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate φ(d) on a grid of distances.
    PhiCurve(PhiCurveArgs),
    /// Compare φ at a fixed distance across independent random pairs.
    Isotropy(IsotropyArgs),
    /// Check distance ordering against collision ordering on random triples.
    Lemma1(Lemma1Args),
    /// Simulate the wiretap scenario and report the entropy advantage.
    Scenario(ScenarioArgs),
    /// Dump the n = 2 quadrature values of φ.
    #[command(name = "oracle-2d")]
    Oracle2d(Oracle2dArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    AngleProduct,
    Haar,
}

impl From<Mode> for SamplingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::AngleProduct => SamplingMode::AngleProduct,
            Mode::Haar => SamplingMode::Haar,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads. Results do not depend on this value.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PhiCurveArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Comma list (`0,0.05,0.1`) or inclusive grid `min:max:steps`.
    #[arg(long, default_value = "0:0.1:11")]
    pub distances: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Mode::AngleProduct)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct IsotropyArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Defaults to ε/2.
    #[arg(long, allow_negative_numbers = true)]
    pub distance: Option<f64>,
    #[arg(long, default_value_t = 8)]
    pub pairs: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Mode::AngleProduct)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Lemma1Args {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100)]
    pub triples: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Mode::AngleProduct)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub sigma_b: f64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub sigma_e: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 100)]
    pub thetas_per_trial: usize,
    #[arg(long, value_enum, default_value_t = Mode::AngleProduct)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    /// Also compare opponent strategies against the conditional mean.
    #[arg(long = "check-inequality-I")]
    pub check_inequality_i: bool,
    #[arg(long, default_value_t = DEFAULT_POSTERIOR_SAMPLES)]
    pub posterior_samples: usize,
    #[arg(long, default_value_t = 2000)]
    pub inequality_trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Oracle2dArgs {
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long, default_value = "0:0.2:21")]
    pub distances: String,
    #[arg(long, default_value_t = advbridge::estimation::ORACLE_GRID)]
    pub grid: usize,
    #[command(flatten)]
    pub common: Common,
}

/// Parse `a,b,c` or the inclusive grid `min:max:steps`.
pub fn parse_distances(list: &str) -> Result<Vec<f64>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("invalid number '{s}' in distance list"))
    };
    if list.contains(':') {
        let parts: Vec<&str> = list.split(':').collect();
        let [lo, hi, steps] = parts[..] else {
            return Err(format!("distance grid must be min:max:steps, got '{list}'"));
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|_| format!("invalid step count '{steps}'"))?;
        match steps {
            0 => Err("step count must be at least 1".into()),
            1 => Ok(vec![lo]),
            _ => Ok((0..steps)
                .map(|i| {
                    if i == steps - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / (steps - 1) as f64
                    }
                })
                .collect()),
        }
    } else {
        list.split(',').map(parse).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax_includes_both_endpoints() {
        let d = parse_distances("0:0.1:11").unwrap();
        assert_eq!(d.len(), 11);
        assert_eq!(d[0], 0.0);
        assert_eq!(d[10], 0.1);
        assert!((d[3] - 0.03).abs() < 1e-15);
        assert_eq!(parse_distances("0.05:0.1:1").unwrap(), vec![0.05]);
    }

    #[test]
    fn list_syntax() {
        assert_eq!(
            parse_distances("0, 0.02,0.1").unwrap(),
            vec![0.0, 0.02, 0.1]
        );
        assert!(parse_distances("0,x").is_err());
        assert!(parse_distances("0:1").is_err());
        assert!(parse_distances("0:1:0").is_err());
    }
}
