//! End-to-end wiretap simulation on the ε-sphere.
//!
//! A sends `X` uniform on εS_{n-1}. B and E observe Gaussian perturbations
//! `X + σ G`; the perturbed vector is what an observer holds (`J` for the
//! eavesdropper) and its re-projection onto the sphere is the point that gets
//! binarized, so `‖Y‖ = ‖Z‖ = ε`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binarizer::rotated_parity;
use crate::entropy::{ck_advantage, wyner_check, BinaryJoint3, SecrecyAdvantageReport};
use crate::error::{check_range, Error, Result};
use crate::geometry::{
    check_epsilon, dot, sample_sphere_point, sq_distance, Randomizer, SamplingMode, SpherePoint,
    Vector,
};
use crate::rng::{chunks, derive_seed, substream, Stream};
use crate::verdict::{banded_sign, Verdict, DEFAULT_Z_THRESHOLD};

use rand::Rng;
use rand_distr::StandardNormal;

const MAX_RESAMPLE: usize = 64;

/// Upper bound on the number of jackknife groups a run is split into.
pub const JACKKNIFE_GROUPS: usize = 100;

/// Default posterior sample count for the conditional-mean estimator.
pub const DEFAULT_POSTERIOR_SAMPLES: usize = 10_000;

/// The guard trips when the effective sample size falls below
/// `samples / DEFAULT_ESS_DIVISOR`.
pub const DEFAULT_ESS_DIVISOR: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub dimension: usize,
    pub epsilon: f64,
    /// Legitimate receiver noise scale.
    pub sigma_b: f64,
    /// Eavesdropper noise scale.
    pub sigma_e: f64,
    pub trials: usize,
    pub thetas_per_trial: usize,
    pub mode: SamplingMode,
    pub z_threshold: f64,
    pub seed: u64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            dimension: 3,
            epsilon: 0.1,
            sigma_b: 0.01,
            sigma_e: 0.05,
            trials: 10_000,
            thetas_per_trial: 100,
            mode: SamplingMode::AngleProduct,
            z_threshold: DEFAULT_Z_THRESHOLD,
            seed: 0,
        }
    }
}

impl ChannelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dimension < 2 {
            return Err(Error::DimensionTooSmall {
                min: 2,
                got: self.dimension,
            });
        }
        check_epsilon(self.epsilon)?;
        check_range("sigma_b", self.sigma_b, self.sigma_b >= 0.0, "[0, ∞)")?;
        check_range("sigma_e", self.sigma_e, self.sigma_e >= 0.0, "[0, ∞)")?;
        check_range(
            "z_threshold",
            self.z_threshold,
            self.z_threshold > 0.0,
            "(0, ∞)",
        )?;
        if self.trials == 0 || self.thetas_per_trial == 0 {
            return Err(Error::InvalidArgument(
                "trials and thetas_per_trial must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Raw observation `x + σ G` and its projection back onto the sphere.
///
/// With `σ = 0` both are exact copies of `x` and no randomness is consumed.
pub fn observe<R: Rng + ?Sized>(
    x: &SpherePoint,
    sigma: f64,
    rng: &mut R,
) -> Result<(Vector, SpherePoint)> {
    if sigma == 0.0 {
        return Ok((x.vector().clone(), x.clone()));
    }
    for _ in 0..MAX_RESAMPLE {
        let raw: Vec<f64> = x
            .coords()
            .iter()
            .map(|c| c + sigma * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let raw = Vector::new(raw)?;
        if raw.norm() > 0.0 {
            let projected = SpherePoint::from_direction(&raw, x.radius())?;
            return Ok((raw, projected));
        }
    }
    Err(Error::DegenerateSample(MAX_RESAMPLE))
}

/// Draw `(X, Y, Z)`: `X` uniform, `Y` and `Z` its re-projected noisy copies.
pub fn generate_triple<R: Rng + ?Sized>(
    cfg: &ChannelConfig,
    rng: &mut R,
) -> Result<(SpherePoint, SpherePoint, SpherePoint)> {
    let x = sample_sphere_point(cfg.dimension, cfg.epsilon, rng)?;
    let (_, y) = observe(&x, cfg.sigma_b, rng)?;
    let (_, z) = observe(&x, cfg.sigma_e, rng)?;
    Ok((x, y, z))
}

#[derive(Debug, Clone, Default)]
struct GroupTally {
    trials: usize,
    sum_sq_xy: f64,
    sum_sq_xz: f64,
    joint: BinaryJoint3,
}

fn run_group(cfg: &ChannelConfig, range: std::ops::Range<usize>) -> Result<GroupTally> {
    let n = cfg.dimension;
    let mut tally = GroupTally::default();
    let mut randomizer = Randomizer::new(cfg.mode, n)?;
    let mut scratch = vec![0.0; n];
    for t in range {
        let mut rng = substream(cfg.seed, t as u64);
        let (x, y, z) = generate_triple(cfg, &mut rng)?;
        tally.trials += 1;
        tally.sum_sq_xy += sq_distance(x.coords(), y.coords());
        tally.sum_sq_xz += sq_distance(x.coords(), z.coords());
        for _ in 0..cfg.thetas_per_trial {
            randomizer.redraw(&mut rng)?;
            let bx = rotated_parity(&randomizer, x.coords(), &mut scratch);
            let by = rotated_parity(&randomizer, y.coords(), &mut scratch);
            let bz = rotated_parity(&randomizer, z.coords(), &mut scratch);
            tally.joint.record(bx, by, bz);
        }
    }
    Ok(tally)
}

/// Delete-one-group jackknife standard error.
fn jackknife_se(leave_one_out: &[f64]) -> f64 {
    let b = leave_one_out.len();
    if b < 2 {
        return f64::INFINITY;
    }
    let mean = leave_one_out.iter().sum::<f64>() / b as f64;
    let ss: f64 = leave_one_out.iter().map(|v| (v - mean) * (v - mean)).sum();
    ((b as f64 - 1.0) / b as f64 * ss).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub config: ChannelConfig,
    pub mean_sq_dist_xy: f64,
    pub mean_sq_dist_xz: f64,
    /// Jackknife SE of `mean_sq_dist_xz − mean_sq_dist_xy`.
    pub dist_gap_se: f64,
    pub joint: BinaryJoint3,
    pub advantage: SecrecyAdvantageReport,
    /// Jackknife SE of `advantage.ck_advantage`.
    pub ck_advantage_se: f64,
    pub chain_verdict: Verdict,
    pub warnings: Vec<String>,
}

impl ScenarioReport {
    pub fn dist_gap(&self) -> f64 {
        self.mean_sq_dist_xz - self.mean_sq_dist_xy
    }

    pub fn dist_gap_z(&self) -> f64 {
        self.dist_gap() / self.dist_gap_se
    }

    pub fn ck_advantage_z(&self) -> f64 {
        self.advantage.ck_advantage / self.ck_advantage_se
    }
}

/// Simulate `cfg.trials` triples, binarize each with `cfg.thetas_per_trial`
/// fresh randomizers, and compare the distance ordering with the entropy
/// ordering.
///
/// Trial `t` draws from substream `(seed, t)`. Trials are pooled in fixed
/// contiguous groups that double as jackknife blocks, so the report is
/// identical for any worker count.
pub fn run_scenario(cfg: &ChannelConfig) -> Result<ScenarioReport> {
    cfg.validate()?;
    let groups = cfg.trials.min(JACKKNIFE_GROUPS);
    let bounds = |g: usize| g * cfg.trials / groups;
    let tallies = (0..groups)
        .into_par_iter()
        .map(|g| run_group(cfg, bounds(g)..bounds(g + 1)))
        .collect::<Result<Vec<_>>>()?;

    let mut total = GroupTally::default();
    for t in &tallies {
        total.trials += t.trials;
        total.sum_sq_xy += t.sum_sq_xy;
        total.sum_sq_xz += t.sum_sq_xz;
        total.joint.merge(&t.joint);
    }
    let trials = total.trials as f64;
    let mean_sq_dist_xy = total.sum_sq_xy / trials;
    let mean_sq_dist_xz = total.sum_sq_xz / trials;

    let gap_loo: Vec<f64> = tallies
        .iter()
        .map(|t| {
            ((total.sum_sq_xz - t.sum_sq_xz) - (total.sum_sq_xy - t.sum_sq_xy))
                / (total.trials - t.trials) as f64
        })
        .collect();
    let ck_loo: Vec<f64> = tallies
        .iter()
        .map(|t| ck_advantage(&total.joint.without(&t.joint)))
        .collect();
    let dist_gap_se = jackknife_se(&gap_loo);
    let ck_advantage_se = jackknife_se(&ck_loo);

    let advantage = wyner_check(&total.joint);
    let chain_verdict = Verdict::from_signs(
        banded_sign(
            mean_sq_dist_xz - mean_sq_dist_xy,
            cfg.z_threshold * dist_gap_se,
        ),
        banded_sign(advantage.ck_advantage, cfg.z_threshold * ck_advantage_se),
    );

    let mut warnings = Vec::new();
    for (label, msd) in [("X-Y", mean_sq_dist_xy), ("X-Z", mean_sq_dist_xz)] {
        if msd.sqrt() > cfg.epsilon {
            let w = format!(
                "RMS {label} distance {:.4} exceeds epsilon {}; outside the locally increasing regime",
                msd.sqrt(),
                cfg.epsilon
            );
            log::warn!("{w}");
            warnings.push(w);
        }
    }

    Ok(ScenarioReport {
        config: cfg.clone(),
        mean_sq_dist_xy,
        mean_sq_dist_xz,
        dist_gap_se,
        joint: total.joint,
        advantage,
        ck_advantage_se,
        chain_verdict,
        warnings,
    })
}

/// Weighted prior sample approximating the posterior of `X` given `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorSample {
    pub points: Vec<Vec<f64>>,
    pub log_weights: Vec<f64>,
}

impl PosteriorSample {
    fn normalized_weights(&self) -> Vec<f64> {
        let max = self
            .log_weights
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        self.log_weights.iter().map(|lw| (lw - max).exp()).collect()
    }

    /// `(Σw)² / Σw²`.
    pub fn effective_sample_size(&self) -> f64 {
        let w = self.normalized_weights();
        let s: f64 = w.iter().sum();
        let s2: f64 = w.iter().map(|v| v * v).sum();
        s * s / s2
    }

    /// Self-normalized weighted mean of the prior points.
    pub fn weighted_mean(&self) -> Vec<f64> {
        let w = self.normalized_weights();
        let n = self.points.first().map_or(0, Vec::len);
        let mut acc = vec![0.0; n];
        let mut total = 0.0;
        for (p, wi) in self.points.iter().zip(&w) {
            total += wi;
            acc.iter_mut().zip(p).for_each(|(a, c)| *a += wi * c);
        }
        acc.iter_mut().for_each(|a| *a /= total);
        acc
    }
}

/// Draw `samples` uniform prior points on εS_{n-1} and weight each by the
/// Gaussian likelihood of the raw observation.
///
/// On the sphere `‖J − X‖² = ‖J‖² + ε² − 2 J·X`, so the log-likelihood is
/// `J·X / σ²` up to a constant. Prior point `i` comes from chunk
/// `i / CHUNK` of `seed`, so a larger sample extends a smaller one.
pub fn posterior_sample(
    observation: &Vector,
    cfg: &ChannelConfig,
    samples: usize,
    seed: u64,
) -> Result<PosteriorSample> {
    cfg.validate()?;
    if observation.dim() != cfg.dimension {
        return Err(Error::DimensionMismatch {
            expected: cfg.dimension,
            got: observation.dim(),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "posterior samples must be at least 1".into(),
        ));
    }
    let inv_var = 1.0 / (cfg.sigma_e * cfg.sigma_e);
    let chunked = chunks(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(c, len)| {
            let mut rng: Stream = substream(seed, c);
            (0..len)
                .map(|_| {
                    let p = sample_sphere_point(cfg.dimension, cfg.epsilon, &mut rng)?;
                    let lw = dot(observation.coords(), p.coords()) * inv_var;
                    Ok((p.vector().clone().into_coords(), lw))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let (points, log_weights) = chunked.into_iter().flatten().unzip();
    Ok(PosteriorSample {
        points,
        log_weights,
    })
}

/// Importance-sampling approximation of `E[X | J]` under the configured
/// eavesdropper channel, with an effective-sample-size guard of
/// `min_ess` (pass `None` for the default `samples / 100`).
pub fn conditional_mean_estimator(
    observation: &Vector,
    cfg: &ChannelConfig,
    samples: usize,
    min_ess: Option<f64>,
    seed: u64,
) -> Result<Vector> {
    if cfg.sigma_e == 0.0 {
        // Noiseless channel: J = X.
        cfg.validate()?;
        return Ok(observation.clone());
    }
    let post = posterior_sample(observation, cfg, samples, seed)?;
    let required = min_ess.unwrap_or(samples as f64 / DEFAULT_ESS_DIVISOR);
    let ess = post.effective_sample_size();
    if ess < required {
        return Err(Error::LowEffectiveSampleSize { ess, required });
    }
    Vector::new(post.weighted_mean())
}

/// An eavesdropper's rule for turning the observation `J` into a guess of `X`.
pub trait OpponentStrategy: Send + Sync {
    fn name(&self) -> &str;

    /// `seed` is a per-trial seed for randomized strategies.
    fn guess(&self, observation: &Vector, seed: u64) -> Result<Vector>;
}

/// Guess `Z(J) = J`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RawObservation;

impl OpponentStrategy for RawObservation {
    fn name(&self) -> &str {
        "raw-observation"
    }

    fn guess(&self, observation: &Vector, _seed: u64) -> Result<Vector> {
        Ok(observation.clone())
    }
}

/// Guess `Z(J) = ε J / ‖J‖`.
#[derive(Debug, Clone, Copy)]
pub struct SphereProjection {
    pub epsilon: f64,
}

impl OpponentStrategy for SphereProjection {
    fn name(&self) -> &str {
        "sphere-projection"
    }

    fn guess(&self, observation: &Vector, _seed: u64) -> Result<Vector> {
        Ok(SpherePoint::from_direction(observation, self.epsilon)?
            .vector()
            .clone())
    }
}

/// Guess the origin regardless of `J`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroGuess;

impl OpponentStrategy for ZeroGuess {
    fn name(&self) -> &str {
        "zero"
    }

    fn guess(&self, observation: &Vector, _seed: u64) -> Result<Vector> {
        Ok(Vector::zeros(observation.dim()))
    }
}

/// Guess the importance-sampled `E[X | J]`.
#[derive(Debug, Clone)]
pub struct ConditionalMean {
    pub cfg: ChannelConfig,
    pub posterior_samples: usize,
    pub min_ess: Option<f64>,
}

pub const CONDITIONAL_MEAN: &str = "conditional-mean";

impl OpponentStrategy for ConditionalMean {
    fn name(&self) -> &str {
        CONDITIONAL_MEAN
    }

    fn guess(&self, observation: &Vector, seed: u64) -> Result<Vector> {
        conditional_mean_estimator(
            observation,
            &self.cfg,
            self.posterior_samples,
            self.min_ess,
            seed,
        )
    }
}

/// Raw observation, sphere projection, conditional mean and the zero guess.
pub fn builtin_strategies(
    cfg: &ChannelConfig,
    posterior_samples: usize,
) -> Vec<Box<dyn OpponentStrategy>> {
    vec![
        Box::new(RawObservation),
        Box::new(SphereProjection {
            epsilon: cfg.epsilon,
        }),
        Box::new(ConditionalMean {
            cfg: cfg.clone(),
            posterior_samples,
            min_ess: None,
        }),
        Box::new(ZeroGuess),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyRow {
    pub name: String,
    pub mean_sq_error: f64,
    pub std_error: f64,
    /// Paired mean of `err(strategy) − err(conditional-mean)`.
    pub gap: f64,
    pub gap_se: f64,
    /// `gap / gap_se`; 0 when both are 0.
    pub gap_z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub trials: usize,
    pub z_threshold: f64,
    pub rows: Vec<StrategyRow>,
    /// No strategy beats the conditional mean by more than `z_threshold`
    /// paired standard errors.
    pub conditional_mean_is_argmin: bool,
}

fn mean_and_se(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, f64::INFINITY);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Monte Carlo estimate of `E‖X − Z(J)‖²` for each strategy, compared pairwise
/// (same `X`, same `J`) against the conditional-mean strategy.
pub fn inequality_i_check(
    cfg: &ChannelConfig,
    strategies: &[Box<dyn OpponentStrategy>],
    trials: usize,
    seed: u64,
) -> Result<InequalityReport> {
    cfg.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let reference = strategies
        .iter()
        .position(|s| s.name() == CONDITIONAL_MEAN)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("strategy set must include {CONDITIONAL_MEAN}"))
        })?;
    let trial_seed = derive_seed(seed, "inequality-trial", 0);
    let errors = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(trial_seed, t);
            let x = sample_sphere_point(cfg.dimension, cfg.epsilon, &mut rng)?;
            let (observation, _) = observe(&x, cfg.sigma_e, &mut rng)?;
            let guess_seed = derive_seed(seed, "inequality-posterior", t);
            strategies
                .iter()
                .map(|s| {
                    let g = s.guess(&observation, guess_seed)?;
                    if g.dim() != x.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: x.dim(),
                            got: g.dim(),
                        });
                    }
                    Ok(sq_distance(x.coords(), g.coords()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<StrategyRow> = strategies
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let (mean_sq_error, std_error) = mean_and_se(errors.iter().map(|e| e[k]));
            let (gap, gap_se) = mean_and_se(errors.iter().map(|e| e[k] - e[reference]));
            let gap_z = if gap == 0.0 { 0.0 } else { gap / gap_se };
            StrategyRow {
                name: s.name().to_string(),
                mean_sq_error,
                std_error,
                gap,
                gap_se,
                gap_z,
            }
        })
        .collect();
    let conditional_mean_is_argmin = rows.iter().all(|r| r.gap >= -cfg.z_threshold * r.gap_se);
    Ok(InequalityReport {
        trials,
        z_threshold: cfg.z_threshold,
        rows,
        conditional_mean_is_argmin,
    })
}
