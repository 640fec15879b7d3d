//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p advbridge-cli --test acceptance`.

use std::process::Command;
use std::time::Instant;

use advbridge::binarizer::{binarize_1d, exact_xor_expectation_1d, UnitOffset};
use advbridge::estimation::{bernoulli_se, estimate_phi, phi_curve, phi_oracle_2d};
use advbridge::geometry::{pair_at_distance, sample_sphere_point};
use advbridge::rng::substream;
use advbridge::scenario::{builtin_strategies, inequality_i_check, run_scenario};
use advbridge::verdict::combined_se;
use advbridge::{binary_entropy, wyner_check, BinaryJoint3, ChannelConfig, SamplingMode, Verdict};
use rand::Rng;
use serde_json::Value;

const MODES: [SamplingMode; 2] = [SamplingMode::AngleProduct, SamplingMode::Haar];
const EPS: f64 = 0.1;
const SAMPLES: usize = 1_000_000;
const Z: f64 = 4.0;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_advbridge"))
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = bin().args(args).output().expect("spawn advbridge");
    assert!(
        out.status.success(),
        "advbridge {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
        .collect()
}

fn one_d_identity() -> Outcome {
    let grid: Vec<f64> = (0..101).map(|i| -0.5 + i as f64 / 101.0).collect();
    let mut worst = 0.0f64;
    for &x in &grid {
        for &y in &grid {
            match exact_xor_expectation_1d(x, y) {
                Ok(v) => worst = worst.max((v - (x - y).abs()).abs()),
                Err(e) => return outcome(false, format!("({x}, {y}): {e}")),
            }
        }
    }
    let mut rng = substream(11, 0);
    let mut worst_z = 0.0f64;
    for _ in 0..20 {
        let x = rng.random_range(-0.5..0.5);
        let y = rng.random_range(-0.5..0.5);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| {
                let v = UnitOffset::new(rng.random_range(0.0..1.0)).unwrap();
                binarize_1d(x, v).unwrap() != binarize_1d(y, v).unwrap()
            })
            .count();
        let target = (x - y).abs();
        let sigma = bernoulli_se(target, n);
        let dev = (hits as f64 / n as f64 - target).abs();
        worst_z = worst_z.max(if sigma > 0.0 { dev / sigma } else { dev * 1e12 });
    }
    outcome(
        worst <= 1e-12 && worst_z <= Z,
        format!("grid max error {worst:.2e}, Monte Carlo max |z| {worst_z:.2}"),
    )
}

fn phi_at_zero() -> Outcome {
    for mode in MODES {
        for n in [2, 3, 5] {
            for seed in [0, 1, 2] {
                let x = sample_sphere_point(n, EPS, &mut substream(seed, n as u64)).unwrap();
                let est = estimate_phi(&x, &x, 10_000, mode, seed).unwrap();
                if est.mean != 0.0 {
                    return outcome(false, format!("n={n} {mode} seed={seed}: {}", est.mean));
                }
            }
        }
    }
    outcome(true, "exact zero for n in {2,3,5}, both modes, 3 seeds")
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for mode in MODES {
        for (i, d) in linspace(0.0, 2.0 * EPS, 10).into_iter().enumerate() {
            let (x, y) = pair_at_distance(2, EPS, d, &mut substream(31, i as u64)).unwrap();
            let oracle = phi_oracle_2d(EPS, d).unwrap();
            let est = estimate_phi(&x, &y, SAMPLES, mode, 32 + i as u64).unwrap();
            // Null-hypothesis SE: Bernoulli at the oracle value.
            let sigma = bernoulli_se(oracle, SAMPLES).max(est.std_error);
            let dev = (est.mean - oracle).abs();
            let z = if sigma > 0.0 {
                dev / sigma
            } else if dev == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            worst = worst.max(z);
        }
    }
    outcome(
        worst <= Z,
        format!("max |z| {worst:.2} over 10 distances x 2 modes"),
    )
}

fn positivity() -> Outcome {
    let mut min_z = f64::INFINITY;
    let mut rng = substream(41, 0);
    for mode in MODES {
        for n in [2, 3, 5] {
            for d in [EPS / 4.0, EPS / 2.0, EPS] {
                let (x, y) = pair_at_distance(n, EPS, d, &mut rng).unwrap();
                let est = estimate_phi(&x, &y, SAMPLES, mode, rng.random()).unwrap();
                let z = if est.std_error > 0.0 {
                    est.mean / est.std_error
                } else {
                    0.0
                };
                min_z = min_z.min(z);
            }
        }
    }
    outcome(
        min_z >= Z,
        format!("min z {min_z:.1} over 3 distances x 3 dims x 2 modes"),
    )
}

fn monotonicity() -> Outcome {
    let distances = linspace(0.0, EPS, 8);
    let mut lines = Vec::new();
    let mut pass = true;
    for mode in MODES {
        for n in [2, 3] {
            let curve = phi_curve(n, EPS, &distances, SAMPLES, mode, 0).unwrap();
            let worst = curve
                .points
                .windows(2)
                .map(|w| {
                    let drop = w[0].mean - w[1].mean;
                    let se = combined_se(w[0].std_error, w[1].std_error);
                    if drop <= 0.0 {
                        0.0
                    } else {
                        drop / se
                    }
                })
                .fold(0.0, f64::max);
            pass &= worst <= Z;
            lines.push(format!("n={n} {mode}: largest drop {worst:.1} SE"));
        }
    }
    outcome(pass, lines.join("; "))
}

fn lemma1_order() -> Outcome {
    let out = run_cli(&[
        "lemma1",
        "--dim",
        "2",
        "--triples",
        "100",
        "--samples",
        "1000000",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&out).unwrap();
    let verdicts = &v["verdicts"];
    let disagree = verdicts["disagree"].as_u64().unwrap();
    outcome(
        disagree == 0,
        format!(
            "{} agree, {disagree} disagree, {} indeterminate",
            verdicts["agree"], verdicts["indeterminate"]
        ),
    )
}

fn wyner_ordering() -> Outcome {
    let k = 1000u64;
    let mut rng = substream(71, 0);
    let mut disagree = 0;
    for _ in 0..10_000 {
        let a = rng.random_range(0..k / 2);
        let b = rng.random_range(0..k / 2);
        let mut c = [[[0; 2]; 2]; 2];
        for (x, plane) in c.iter_mut().enumerate() {
            for (y, row) in plane.iter_mut().enumerate() {
                for (z, cell) in row.iter_mut().enumerate() {
                    let py = if x == y { k - a } else { a };
                    let pz = if x == z { k - b } else { b };
                    *cell = py * pz;
                }
            }
        }
        if wyner_check(&BinaryJoint3::new(c).unwrap()).ordering_verdict == Verdict::Disagree {
            disagree += 1;
        }
    }
    let h1 = binary_entropy(0.1).unwrap();
    let h3 = binary_entropy(0.3).unwrap();
    let spots = (h1 - 0.468995).abs() <= 1e-6 && (h3 - 0.881291).abs() <= 1e-6;
    outcome(
        disagree == 0 && spots,
        format!("{disagree} disagree of 10^4; h(0.1)={h1:.6}, h(0.3)={h3:.6}"),
    )
}

fn end_to_end_chain() -> Outcome {
    let cfg = ChannelConfig {
        dimension: 3,
        epsilon: EPS,
        sigma_b: 0.01,
        sigma_e: 0.05,
        trials: 10_000,
        thetas_per_trial: 100,
        ..ChannelConfig::default()
    };
    let rep = run_scenario(&cfg).unwrap();
    let (gz, cz) = (rep.dist_gap_z(), rep.ck_advantage_z());
    outcome(
        gz >= Z && cz >= Z && rep.chain_verdict == Verdict::Agree,
        format!(
            "distance gap z {gz:.1}, advantage {:.4} (z {cz:.1}), chain {}",
            rep.advantage.ck_advantage, rep.chain_verdict
        ),
    )
}

fn inequality_argmin() -> Outcome {
    let cfg = ChannelConfig {
        dimension: 3,
        epsilon: EPS,
        sigma_e: 0.05,
        ..ChannelConfig::default()
    };
    let strategies = builtin_strategies(&cfg, 10_000);
    let rep = inequality_i_check(&cfg, &strategies, 2000, 0).unwrap();
    let rows: Vec<String> = rep
        .rows
        .iter()
        .map(|r| format!("{} {:.2e} (gap z {:.1})", r.name, r.mean_sq_error, r.gap_z))
        .collect();
    outcome(rep.conditional_mean_is_argmin, rows.join(", "))
}

fn determinism() -> Outcome {
    let cases: [&[&str]; 6] = [
        &["phi-curve", "--samples", "50000"],
        &["isotropy", "--samples", "20000", "--mode", "haar"],
        &["lemma1", "--triples", "10", "--samples", "20000"],
        &[
            "scenario",
            "--trials",
            "500",
            "--thetas-per-trial",
            "20",
            "--check-inequality-I",
            "--inequality-trials",
            "100",
            "--posterior-samples",
            "2000",
        ],
        &["oracle-2d", "--grid", "4096", "--format", "json"],
        &[
            "phi-curve",
            "--dim",
            "5",
            "--samples",
            "50000",
            "--format",
            "json",
            "--seed",
            "9",
        ],
    ];
    for args in cases {
        let with = |t: &str| {
            let mut a = args.to_vec();
            a.extend(["--threads", t]);
            run_cli(&a)
        };
        if with("1") != with("4") {
            return outcome(false, format!("output differs for {args:?}"));
        }
    }
    outcome(true, "all subcommands byte-identical with 1 and 4 threads")
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1D exact identity", one_d_identity),
        ("phi(0) = 0", phi_at_zero),
        ("n=2 oracle equivalence", oracle_equivalence),
        ("positivity", positivity),
        ("local monotonicity", monotonicity),
        ("distance vs collision ordering at n=2", lemma1_order),
        ("crossover vs entropy ordering", wyner_ordering),
        ("end-to-end chain", end_to_end_chain),
        ("conditional mean is the best estimator", inequality_argmin),
        ("determinism across worker counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {:>2} {name}: {} [{:.1}s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
