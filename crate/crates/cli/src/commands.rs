use advbridge::estimation::{
    isotropy_test, lemma1_batch, phi_curve, phi_oracle_2d_with_grid, PhiEstimate,
};
use advbridge::scenario::{builtin_strategies, inequality_i_check, run_scenario};
use advbridge::verdict::combined_se;
use advbridge::{ChannelConfig, SamplingMode, Verdict};
use serde_json::{json, Value};

use crate::args::{
    parse_distances, Format, IsotropyArgs, Lemma1Args, Oracle2dArgs, PhiCurveArgs, ScenarioArgs,
};
use crate::report::{to_json, Cell, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; exit code 2.
    Usage(String),
    /// Operational failure; exit code 1.
    Run(String),
}

impl From<advbridge::Error> for CliError {
    fn from(e: advbridge::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn check_dim(dim: usize) -> CliResult<()> {
    if dim < 2 {
        return usage(format!("--dim must be at least 2, got {dim}"));
    }
    Ok(())
}

fn check_epsilon(eps: f64) -> CliResult<()> {
    if !(eps.is_finite() && eps > 0.0 && eps < 1.0) {
        return usage(format!("--epsilon must satisfy ε ∈ (0,1), got {eps}"));
    }
    Ok(())
}

fn check_positive(flag: &str, v: usize, min: usize) -> CliResult<()> {
    if v < min {
        return usage(format!("{flag} must be at least {min}, got {v}"));
    }
    Ok(())
}

fn check_z(z: f64) -> CliResult<()> {
    if !(z.is_finite() && z > 0.0) {
        return usage(format!("--z-threshold must be positive, got {z}"));
    }
    Ok(())
}

fn check_distances(eps: f64, list: &str) -> CliResult<Vec<f64>> {
    let d = parse_distances(list).map_err(CliError::Usage)?;
    if d.is_empty() {
        return usage("--distances is empty");
    }
    if let Some(bad) = d.iter().find(|&&v| !(0.0..=2.0 * eps).contains(&v)) {
        return usage(format!(
            "distance {bad} outside [0, 2ε] = [0, {}]",
            2.0 * eps
        ));
    }
    if d.windows(2).any(|w| w[1] <= w[0]) {
        return usage("--distances must be strictly increasing");
    }
    Ok(d)
}

fn estimate_json(e: &PhiEstimate) -> Value {
    json!({
        "d": e.distance,
        "mean": e.mean,
        "std_error": e.std_error,
        "samples": e.samples,
        "mode": e.mode.as_str(),
    })
}

pub fn phi_curve_cmd(a: &PhiCurveArgs) -> CliResult<String> {
    check_dim(a.dim)?;
    check_epsilon(a.epsilon)?;
    check_positive("--samples", a.samples, 1)?;
    check_z(a.z_threshold)?;
    let distances = check_distances(a.epsilon, &a.distances)?;
    let mode = SamplingMode::from(a.mode);
    let curve = phi_curve(a.dim, a.epsilon, &distances, a.samples, mode, a.common.seed)?;

    let largest_drop_z = curve
        .points
        .windows(2)
        .map(|w| {
            let drop = w[0].mean - w[1].mean;
            let se = combined_se(w[0].std_error, w[1].std_error);
            if drop <= 0.0 {
                0.0
            } else if se == 0.0 {
                f64::INFINITY
            } else {
                drop / se
            }
        })
        .fold(0.0, f64::max);
    let nondecreasing = largest_drop_z <= a.z_threshold;

    Ok(match a.common.format {
        Format::Csv => {
            let mut t = Table::new(vec!["d", "mean", "std_error", "samples", "mode"]);
            for p in &curve.points {
                t.push(vec![
                    p.distance.into(),
                    p.mean.into(),
                    p.std_error.into(),
                    p.samples.into(),
                    p.mode.as_str().into(),
                ]);
            }
            t.to_csv()
        }
        Format::Json => to_json(
            json!({
                "command": "phi-curve",
                "dim": a.dim,
                "epsilon": a.epsilon,
                "distances": distances,
                "samples": a.samples,
                "mode": mode.as_str(),
                "z_threshold": a.z_threshold,
                "seed": a.common.seed,
            }),
            Value::Array(curve.points.iter().map(estimate_json).collect()),
            json!({
                "nondecreasing_within_ci": nondecreasing,
                "largest_drop_z": largest_drop_z,
            }),
        ),
    })
}

pub fn isotropy_cmd(a: &IsotropyArgs) -> CliResult<String> {
    check_dim(a.dim)?;
    check_epsilon(a.epsilon)?;
    check_positive("--pairs", a.pairs, 2)?;
    check_positive("--samples", a.samples, 1)?;
    check_z(a.z_threshold)?;
    let d = a.distance.unwrap_or(a.epsilon / 2.0);
    if !(0.0..=2.0 * a.epsilon).contains(&d) {
        return usage(format!("--distance must lie in [0, 2ε], got {d}"));
    }
    let mode = SamplingMode::from(a.mode);
    let rep = isotropy_test(
        a.dim,
        a.epsilon,
        d,
        a.pairs,
        a.samples,
        mode,
        a.z_threshold,
        a.common.seed,
    )?;

    Ok(match a.common.format {
        Format::Csv => {
            let mut t = Table::new(vec![
                "pair",
                "d",
                "mean",
                "std_error",
                "samples",
                "mode",
                "max_pairwise_z",
                "verdict",
            ]);
            for (i, e) in rep.estimates.iter().enumerate() {
                t.push(vec![
                    i.into(),
                    e.distance.into(),
                    e.mean.into(),
                    e.std_error.into(),
                    e.samples.into(),
                    e.mode.as_str().into(),
                    rep.max_pairwise_z.into(),
                    rep.verdict.as_str().into(),
                ]);
            }
            t.to_csv()
        }
        Format::Json => to_json(
            json!({
                "command": "isotropy",
                "dim": a.dim,
                "epsilon": a.epsilon,
                "distance": d,
                "pairs": a.pairs,
                "samples": a.samples,
                "mode": mode.as_str(),
                "z_threshold": a.z_threshold,
                "seed": a.common.seed,
            }),
            Value::Array(rep.estimates.iter().map(estimate_json).collect()),
            json!({
                "max_pairwise_z": rep.max_pairwise_z,
                "isotropy": rep.verdict.as_str(),
            }),
        ),
    })
}

/// Verdict counts, in the order agree, disagree, indeterminate.
pub fn tally(verdicts: impl Iterator<Item = Verdict>) -> [usize; 3] {
    let mut c = [0; 3];
    for v in verdicts {
        c[match v {
            Verdict::Agree => 0,
            Verdict::Disagree => 1,
            Verdict::Indeterminate => 2,
        }] += 1;
    }
    c
}

pub fn lemma1_cmd(a: &Lemma1Args) -> CliResult<String> {
    check_dim(a.dim)?;
    check_epsilon(a.epsilon)?;
    check_positive("--triples", a.triples, 1)?;
    check_positive("--samples", a.samples, 1)?;
    check_z(a.z_threshold)?;
    let mode = SamplingMode::from(a.mode);
    let checks = lemma1_batch(
        a.dim,
        a.epsilon,
        a.triples,
        a.samples,
        mode,
        a.z_threshold,
        a.common.seed,
    )?;
    let [agree, disagree, indeterminate] = tally(checks.iter().map(|c| c.verdict));
    eprintln!("lemma1: {agree} agree, {disagree} disagree, {indeterminate} indeterminate");

    Ok(match a.common.format {
        Format::Csv => {
            let mut t = Table::new(vec![
                "triple", "d_xy", "d_xz", "phi_xy", "se_xy", "phi_xz", "se_xz", "verdict",
            ]);
            for (i, c) in checks.iter().enumerate() {
                t.push(vec![
                    i.into(),
                    c.d_xy.into(),
                    c.d_xz.into(),
                    c.phi_xy.mean.into(),
                    c.phi_xy.std_error.into(),
                    c.phi_xz.mean.into(),
                    c.phi_xz.std_error.into(),
                    c.verdict.as_str().into(),
                ]);
            }
            t.to_csv()
        }
        Format::Json => to_json(
            json!({
                "command": "lemma1",
                "dim": a.dim,
                "epsilon": a.epsilon,
                "triples": a.triples,
                "samples": a.samples,
                "mode": mode.as_str(),
                "z_threshold": a.z_threshold,
                "seed": a.common.seed,
            }),
            Value::Array(
                checks
                    .iter()
                    .map(|c| {
                        json!({
                            "d_xy": c.d_xy,
                            "d_xz": c.d_xz,
                            "phi_xy": c.phi_xy.mean,
                            "se_xy": c.phi_xy.std_error,
                            "phi_xz": c.phi_xz.mean,
                            "se_xz": c.phi_xz.std_error,
                            "verdict": c.verdict.as_str(),
                        })
                    })
                    .collect(),
            ),
            json!({
                "agree": agree,
                "disagree": disagree,
                "indeterminate": indeterminate,
            }),
        ),
    })
}

pub fn scenario_cmd(a: &ScenarioArgs) -> CliResult<String> {
    check_dim(a.dim)?;
    check_epsilon(a.epsilon)?;
    check_positive("--trials", a.trials, 1)?;
    check_positive("--thetas-per-trial", a.thetas_per_trial, 1)?;
    check_positive("--posterior-samples", a.posterior_samples, 1)?;
    check_positive("--inequality-trials", a.inequality_trials, 1)?;
    check_z(a.z_threshold)?;
    for (flag, v) in [("--sigma-b", a.sigma_b), ("--sigma-e", a.sigma_e)] {
        if !(v.is_finite() && v >= 0.0) {
            return usage(format!("{flag} must be a nonnegative number, got {v}"));
        }
    }
    let cfg = ChannelConfig {
        dimension: a.dim,
        epsilon: a.epsilon,
        sigma_b: a.sigma_b,
        sigma_e: a.sigma_e,
        trials: a.trials,
        thetas_per_trial: a.thetas_per_trial,
        mode: a.mode.into(),
        z_threshold: a.z_threshold,
        seed: a.common.seed,
    };
    let rep = run_scenario(&cfg)?;
    let inequality = if a.check_inequality_i {
        let strategies = builtin_strategies(&cfg, a.posterior_samples);
        Some(inequality_i_check(
            &cfg,
            &strategies,
            a.inequality_trials,
            a.common.seed,
        )?)
    } else {
        None
    };
    let adv = &rep.advantage;
    let c = rep.joint.counts();

    Ok(match a.common.format {
        Format::Csv => {
            let mut t = Table::new(vec!["key", "value"]);
            let mut kv = |k: String, v: Cell| t.push(vec![k.into(), v]);
            kv("mean_sq_dist_xy".into(), rep.mean_sq_dist_xy.into());
            kv("mean_sq_dist_xz".into(), rep.mean_sq_dist_xz.into());
            kv("dist_gap_se".into(), rep.dist_gap_se.into());
            kv("p_xy".into(), adv.p_xy.into());
            kv("p_xz".into(), adv.p_xz.into());
            kv("h_x_given_y".into(), adv.h_x_given_y.into());
            kv("h_x_given_z".into(), adv.h_x_given_z.into());
            kv("ck_advantage".into(), adv.ck_advantage.into());
            kv("ck_advantage_se".into(), rep.ck_advantage_se.into());
            kv("wyner_applicable".into(), adv.wyner_applicable.into());
            kv("wyner_verdict".into(), adv.ordering_verdict.as_str().into());
            kv("chain_verdict".into(), rep.chain_verdict.as_str().into());
            for (x, plane) in c.iter().enumerate() {
                for (y, row) in plane.iter().enumerate() {
                    for (z, n) in row.iter().enumerate() {
                        kv(format!("joint_{x}{y}{z}"), (*n).into());
                    }
                }
            }
            if let Some(ineq) = &inequality {
                for r in &ineq.rows {
                    let p = format!("strategy.{}", r.name);
                    kv(format!("{p}.mean_sq_error"), r.mean_sq_error.into());
                    kv(format!("{p}.std_error"), r.std_error.into());
                    kv(format!("{p}.gap"), r.gap.into());
                    kv(format!("{p}.gap_se"), r.gap_se.into());
                    kv(format!("{p}.gap_z"), r.gap_z.into());
                }
                kv(
                    "conditional_mean_is_argmin".into(),
                    ineq.conditional_mean_is_argmin.into(),
                );
            }
            t.to_csv()
        }
        Format::Json => {
            let mut results = json!({
                "mean_sq_dist_xy": rep.mean_sq_dist_xy,
                "mean_sq_dist_xz": rep.mean_sq_dist_xz,
                "dist_gap_se": rep.dist_gap_se,
                "joint": c,
                "advantage": adv,
                "ck_advantage_se": rep.ck_advantage_se,
                "warnings": rep.warnings,
            });
            let mut verdicts = json!({
                "chain": rep.chain_verdict.as_str(),
                "wyner": adv.ordering_verdict.as_str(),
            });
            if let Some(ineq) = &inequality {
                results["strategies"] = json!(ineq.rows);
                verdicts["conditional_mean_is_argmin"] = json!(ineq.conditional_mean_is_argmin);
            }
            to_json(
                json!({
                    "command": "scenario",
                    "dim": a.dim,
                    "epsilon": a.epsilon,
                    "sigma_b": a.sigma_b,
                    "sigma_e": a.sigma_e,
                    "trials": a.trials,
                    "thetas_per_trial": a.thetas_per_trial,
                    "mode": cfg.mode.as_str(),
                    "z_threshold": a.z_threshold,
                    "check_inequality_i": a.check_inequality_i,
                    "posterior_samples": a.posterior_samples,
                    "inequality_trials": a.inequality_trials,
                    "seed": a.common.seed,
                }),
                results,
                verdicts,
            )
        }
    })
}

pub fn oracle_2d_cmd(a: &Oracle2dArgs) -> CliResult<String> {
    check_epsilon(a.epsilon)?;
    check_positive("--grid", a.grid, 1)?;
    let distances = check_distances(a.epsilon, &a.distances)?;
    let values = distances
        .iter()
        .map(|&d| phi_oracle_2d_with_grid(a.epsilon, d, a.grid))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(match a.common.format {
        Format::Csv => {
            let mut t = Table::new(vec!["d", "phi"]);
            for (d, v) in distances.iter().zip(&values) {
                t.push(vec![(*d).into(), (*v).into()]);
            }
            t.to_csv()
        }
        Format::Json => to_json(
            json!({
                "command": "oracle-2d",
                "epsilon": a.epsilon,
                "distances": distances,
                "grid": a.grid,
                "seed": a.common.seed,
            }),
            Value::Array(
                distances
                    .iter()
                    .zip(&values)
                    .map(|(d, v)| json!({ "d": d, "phi": v }))
                    .collect(),
            ),
            json!({}),
        ),
    })
}
