//! Estimation of the collision function
//! `φ(d) = E[f(X,Θ) ⊕ f(Y,Θ) | X, Y]` for sphere points at distance `d`,
//! and the statistical checks built on it.
//!
//! All estimators are chunked over [`rng::CHUNK`](crate::rng::CHUNK)-sized
//! substreams and fan out with rayon. Counts are integers, so the reduction
//! is exact and independent of the worker count.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binarizer::{rotated_parity, Bit};
use crate::error::{check_range, Error, Result};
use crate::geometry::{
    check_epsilon, pair_at_distance, point_at_distance, sample_sphere_point, Randomizer,
    SamplingMode, SpherePoint,
};
use crate::rng::{chunks, derive_seed, substream};
use crate::verdict::{banded_sign, combined_se, Verdict};

pub const DEFAULT_SAMPLES: usize = 1_000_000;

/// Default number of θ nodes in the n=2 quadrature oracle (2^20 > 10^6).
pub const ORACLE_GRID: usize = 1 << 20;

/// Distances closer than this are treated as equal in order checks.
pub const DISTANCE_TIE: f64 = 1e-9;

/// Monte Carlo estimate of φ at one pair of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiEstimate {
    pub distance: f64,
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub mode: SamplingMode,
}

impl PhiEstimate {
    fn from_count(distance: f64, count: u64, samples: usize, mode: SamplingMode) -> Self {
        let mean = count as f64 / samples as f64;
        Self {
            distance,
            mean,
            std_error: bernoulli_se(mean, samples),
            samples,
            mode,
        }
    }

    /// Number of draws with differing bits.
    pub fn hits(&self) -> u64 {
        (self.mean * self.samples as f64).round() as u64
    }
}

pub fn bernoulli_se(mean: f64, samples: usize) -> f64 {
    (mean * (1.0 - mean) / samples as f64).sqrt()
}

/// Count, for each `(a, b)` in `pairs`, the draws where the bits of
/// `points[a]` and `points[b]` differ. All pairs share the same randomizer
/// draws.
pub fn xor_counts(
    points: &[&SpherePoint],
    pairs: &[(usize, usize)],
    samples: usize,
    mode: SamplingMode,
    seed: u64,
) -> Result<Vec<u64>> {
    let n = points.first().map(|p| p.dim()).unwrap_or(0);
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim(),
        });
    }
    if pairs
        .iter()
        .any(|&(a, b)| a >= points.len() || b >= points.len())
    {
        return Err(Error::InvalidArgument("pair index out of range".into()));
    }
    // Validates n >= 2 before fanning out.
    Randomizer::new(mode, n)?;

    let per_chunk = chunks(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(chunk, len)| {
            let mut rng = substream(seed, chunk);
            let mut randomizer = Randomizer::new(mode, n)?;
            let mut scratch = vec![0.0; n];
            let mut bits = vec![Bit::ZERO; points.len()];
            let mut counts = vec![0u64; pairs.len()];
            for _ in 0..len {
                randomizer.redraw(&mut rng)?;
                for (bit, p) in bits.iter_mut().zip(points) {
                    *bit = rotated_parity(&randomizer, p.coords(), &mut scratch);
                }
                for (c, &(a, b)) in counts.iter_mut().zip(pairs) {
                    *c += u64::from((bits[a] ^ bits[b]).value());
                }
            }
            Ok(counts)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = vec![0u64; pairs.len()];
    for counts in per_chunk {
        total.iter_mut().zip(counts).for_each(|(t, c)| *t += c);
    }
    Ok(total)
}

fn check_same_sphere(a: &SpherePoint, b: &SpherePoint) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.radius() != b.radius() {
        return Err(Error::RadiusMismatch(a.radius(), b.radius()));
    }
    Ok(())
}

fn check_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    Ok(())
}

/// Empirical mean of `f(x,Θ_i) ⊕ f(y,Θ_i)` over `samples` draws.
pub fn estimate_phi(
    x: &SpherePoint,
    y: &SpherePoint,
    samples: usize,
    mode: SamplingMode,
    seed: u64,
) -> Result<PhiEstimate> {
    check_same_sphere(x, y)?;
    check_samples(samples)?;
    let count = xor_counts(&[x, y], &[(0, 1)], samples, mode, seed)?[0];
    Ok(PhiEstimate::from_count(x.distance(y), count, samples, mode))
}

/// Deterministic quadrature of φ at n = 2 on the default grid.
pub fn phi_oracle_2d(epsilon: f64, d: f64) -> Result<f64> {
    phi_oracle_2d_with_grid(epsilon, d, ORACLE_GRID)
}

/// Midpoint-rule average of `1[f(R_θ x) ≠ f(R_θ y)]` over `grid` values of
/// θ ∈ [0, 2π), for a fixed planar pair at chord distance `d`.
///
/// Evaluated directly from polar angles and quadrant signs, without the
/// rotation-chain code path.
pub fn phi_oracle_2d_with_grid(epsilon: f64, d: f64, grid: usize) -> Result<f64> {
    check_epsilon(epsilon)?;
    check_range("distance", d, (0.0..=2.0 * epsilon).contains(&d), "[0, 2ε]")?;
    if grid == 0 {
        return Err(Error::InvalidArgument("grid must be positive".into()));
    }
    let separation = 2.0 * (d / (2.0 * epsilon)).min(1.0).asin();
    // Offset keeps the pair off the axes at θ = 0.
    let base = 0.123_456_789;
    let step = std::f64::consts::TAU / grid as f64;
    let odd_quadrant = |angle: f64| {
        let (s, c) = angle.sin_cos();
        (epsilon * c < 0.0) ^ (epsilon * s < 0.0)
    };
    let hits = (0..grid)
        .into_par_iter()
        .filter(|&k| {
            let theta = (k as f64 + 0.5) * step;
            odd_quadrant(base + theta) != odd_quadrant(base + separation + theta)
        })
        .count();
    Ok(hits as f64 / grid as f64)
}

/// φ estimated along a grid of distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiCurve {
    pub epsilon: f64,
    pub dimension: usize,
    pub points: Vec<PhiEstimate>,
}

fn check_distance_grid(epsilon: f64, distances: &[f64]) -> Result<()> {
    if distances.is_empty() {
        return Err(Error::InvalidArgument("distance list is empty".into()));
    }
    for &d in distances {
        check_range("distance", d, (0.0..=2.0 * epsilon).contains(&d), "[0, 2ε]")?;
    }
    if distances.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "distances must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// One fresh pair per distance, each estimated with its own derived seed.
pub fn phi_curve(
    n: usize,
    epsilon: f64,
    distances: &[f64],
    samples: usize,
    mode: SamplingMode,
    seed: u64,
) -> Result<PhiCurve> {
    check_epsilon(epsilon)?;
    check_distance_grid(epsilon, distances)?;
    check_samples(samples)?;
    let points = distances
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut rng = substream(derive_seed(seed, "curve-pair", i as u64), 0);
            let (x, y) = pair_at_distance(n, epsilon, d, &mut rng)?;
            let mut est = estimate_phi(
                &x,
                &y,
                samples,
                mode,
                derive_seed(seed, "curve-phi", i as u64),
            )?;
            // Report the requested grid value; the realized chord is within 1e-9.
            est.distance = d;
            Ok(est)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiCurve {
        epsilon,
        dimension: n,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsotropyVerdict {
    Consistent,
    Inconsistent,
}

impl IsotropyVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            IsotropyVerdict::Consistent => "consistent",
            IsotropyVerdict::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsotropyReport {
    pub d: f64,
    pub estimates: Vec<PhiEstimate>,
    pub max_pairwise_z: f64,
    pub z_threshold: f64,
    pub verdict: IsotropyVerdict,
}

/// Pooled two-proportion z statistic, `|p̂_a − p̂_b| / SE_pooled`.
///
/// Identical proportions give 0; distinct proportions with a degenerate
/// pooled variance give +∞.
pub fn two_proportion_z(a: &PhiEstimate, b: &PhiEstimate) -> f64 {
    let (na, nb) = (a.samples as f64, b.samples as f64);
    let pooled = (a.hits() + b.hits()) as f64 / (na + nb);
    let se = (pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb)).sqrt();
    let diff = (a.mean - b.mean).abs();
    if diff == 0.0 {
        0.0
    } else if se == 0.0 {
        f64::INFINITY
    } else {
        diff / se
    }
}

/// Estimate φ at the same distance for `num_pairs` independent random pairs
/// and test the estimates for equality.
#[allow(clippy::too_many_arguments)]
pub fn isotropy_test(
    n: usize,
    epsilon: f64,
    d: f64,
    num_pairs: usize,
    samples: usize,
    mode: SamplingMode,
    z_threshold: f64,
    seed: u64,
) -> Result<IsotropyReport> {
    if num_pairs < 2 {
        return Err(Error::InvalidArgument(format!(
            "isotropy needs at least 2 pairs, got {num_pairs}"
        )));
    }
    check_epsilon(epsilon)?;
    check_samples(samples)?;
    let estimates = (0..num_pairs as u64)
        .map(|i| {
            let mut rng = substream(derive_seed(seed, "iso-pair", i), 0);
            let (x, y) = pair_at_distance(n, epsilon, d, &mut rng)?;
            estimate_phi(&x, &y, samples, mode, derive_seed(seed, "iso-phi", i))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut max_z: f64 = 0.0;
    for i in 0..estimates.len() {
        for j in i + 1..estimates.len() {
            max_z = max_z.max(two_proportion_z(&estimates[i], &estimates[j]));
        }
    }
    let verdict = if max_z <= z_threshold {
        IsotropyVerdict::Consistent
    } else {
        IsotropyVerdict::Inconsistent
    };
    Ok(IsotropyReport {
        d,
        estimates,
        max_pairwise_z: max_z,
        z_threshold,
        verdict,
    })
}

/// Result of checking `‖X−Z‖ ≥ ‖X−Y‖ ⇔ φ_xz ≥ φ_xy` on one triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Check {
    pub d_xy: f64,
    pub d_xz: f64,
    pub phi_xy: PhiEstimate,
    pub phi_xz: PhiEstimate,
    pub verdict: Verdict,
}

/// Compare the distance ordering of `(y, z)` around `x` with the ordering of
/// their collision estimates.
///
/// Both estimates use the same randomizer draws. A φ difference inside
/// `z_threshold` combined standard errors is unresolved: it agrees with a
/// distance tie and is indeterminate otherwise.
pub fn lemma1_order_check(
    x: &SpherePoint,
    y: &SpherePoint,
    z: &SpherePoint,
    samples: usize,
    mode: SamplingMode,
    z_threshold: f64,
    seed: u64,
) -> Result<Lemma1Check> {
    check_same_sphere(x, y)?;
    check_same_sphere(x, z)?;
    check_samples(samples)?;
    let eps = x.radius();
    let (d_xy, d_xz) = (x.distance(y), x.distance(z));
    for d in [d_xy, d_xz] {
        check_range(
            "distance",
            d,
            d <= eps * (1.0 + DISTANCE_TIE),
            "[0, ε] (locally increasing regime)",
        )?;
    }
    let counts = xor_counts(&[x, y, z], &[(0, 1), (0, 2)], samples, mode, seed)?;
    let phi_xy = PhiEstimate::from_count(d_xy, counts[0], samples, mode);
    let phi_xz = PhiEstimate::from_count(d_xz, counts[1], samples, mode);
    let band = z_threshold * combined_se(phi_xy.std_error, phi_xz.std_error);
    let verdict = Verdict::from_signs(
        banded_sign(d_xz - d_xy, DISTANCE_TIE),
        banded_sign(phi_xz.mean - phi_xy.mean, band),
    );
    Ok(Lemma1Check {
        d_xy,
        d_xz,
        phi_xy,
        phi_xz,
        verdict,
    })
}

/// Triple with `X` uniform on εS_{n-1} and `‖X−Y‖`, `‖X−Z‖` uniform on [0, ε].
pub fn sample_lemma1_triple<R: Rng + ?Sized>(
    n: usize,
    epsilon: f64,
    rng: &mut R,
) -> Result<(SpherePoint, SpherePoint, SpherePoint)> {
    let x = sample_sphere_point(n, epsilon, rng)?;
    let d_xy = rng.random_range(0.0..=epsilon);
    let d_xz = rng.random_range(0.0..=epsilon);
    let y = point_at_distance(&x, d_xy, rng)?;
    let z = point_at_distance(&x, d_xz, rng)?;
    Ok((x, y, z))
}

/// Run [`lemma1_order_check`] on `triples` random triples.
pub fn lemma1_batch(
    n: usize,
    epsilon: f64,
    triples: usize,
    samples: usize,
    mode: SamplingMode,
    z_threshold: f64,
    seed: u64,
) -> Result<Vec<Lemma1Check>> {
    if triples == 0 {
        return Err(Error::InvalidArgument("triples must be at least 1".into()));
    }
    check_epsilon(epsilon)?;
    (0..triples as u64)
        .map(|i| {
            let mut rng = substream(derive_seed(seed, "lemma1-triple", i), 0);
            let (x, y, z) = sample_lemma1_triple(n, epsilon, &mut rng)?;
            lemma1_order_check(
                &x,
                &y,
                &z,
                samples,
                mode,
                z_threshold,
                derive_seed(seed, "lemma1-phi", i),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector;
    use std::f64::consts::PI;

    fn planar(eps: f64, angle: f64) -> SpherePoint {
        SpherePoint::new(
            Vector::new(vec![eps * angle.cos(), eps * angle.sin()]).unwrap(),
            eps,
        )
        .unwrap()
    }

    /// Closed form at n = 2: the arc between the points crosses an odd number
    /// of axes with probability `r` (or `1 − r`) where `Δα = (π/2)(m + r)`.
    fn phi_2d_closed_form(separation: f64) -> f64 {
        let q = separation / (PI / 2.0);
        let m = q.floor();
        let r = q - m;
        if (m as i64) % 2 == 0 {
            r
        } else {
            1.0 - r
        }
    }

    #[test]
    fn self_pair_gives_exact_zero() {
        for mode in [SamplingMode::AngleProduct, SamplingMode::Haar] {
            for n in [2, 3, 5] {
                let mut rng = substream(1, n as u64);
                let x = sample_sphere_point(n, 0.1, &mut rng).unwrap();
                let est = estimate_phi(&x, &x, 10_000, mode, 99).unwrap();
                assert_eq!(est.mean, 0.0);
                assert_eq!(est.std_error, 0.0);
            }
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        let eps = 0.1;
        for k in 0..=20 {
            let d = 2.0 * eps * k as f64 / 20.0;
            let sep = 2.0 * (d / (2.0 * eps)).asin();
            let q = phi_oracle_2d(eps, d).unwrap();
            assert!((q - phi_2d_closed_form(sep)).abs() < 1e-5, "d={d}: {q}");
        }
    }

    #[test]
    fn oracle_examples() {
        let eps = 0.1;
        assert_eq!(phi_oracle_2d(eps, 0.0).unwrap(), 0.0);
        assert!((phi_oracle_2d(eps, eps * 2f64.sqrt()).unwrap() - 1.0).abs() < 1e-5);
        assert!(phi_oracle_2d(eps, 2.0 * eps).unwrap() < 1e-5);
        // Δα = π/4 lands halfway to the first full flip.
        let d = 2.0 * eps * (PI / 8.0).sin();
        assert!((phi_oracle_2d(eps, d).unwrap() - 0.5).abs() < 1e-5);
        assert!(phi_oracle_2d(eps, 0.21).is_err());
        assert!(phi_oracle_2d(1.0, 0.1).is_err());
    }

    #[test]
    fn quarter_separation_estimate() {
        let eps = 0.1;
        let x = planar(eps, 0.4);
        let y = planar(eps, 0.4 + PI / 4.0);
        let est = estimate_phi(&x, &y, 1_000_000, SamplingMode::AngleProduct, 5).unwrap();
        let oracle = phi_oracle_2d(eps, x.distance(&y)).unwrap();
        assert!((est.mean - oracle).abs() <= 4.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn antipodal_pair_at_n2_never_differs() {
        let eps = 0.1;
        let x = planar(eps, 0.7);
        let y = SpherePoint::new(x.vector().scaled(-1.0), eps).unwrap();
        for mode in [SamplingMode::AngleProduct, SamplingMode::Haar] {
            let est = estimate_phi(&x, &y, 200_000, mode, 8).unwrap();
            assert!(est.mean <= 4.0 * est.std_error);
        }
    }

    #[test]
    fn estimates_are_seed_deterministic_and_worker_independent() {
        let mut rng = substream(2, 0);
        let (x, y) = pair_at_distance(3, 0.1, 0.05, &mut rng).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_phi(&x, &y, 50_000, SamplingMode::Haar, 42).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn std_error_is_bernoulli() {
        let mut rng = substream(3, 0);
        let (x, y) = pair_at_distance(2, 0.1, 0.05, &mut rng).unwrap();
        let est = estimate_phi(&x, &y, 100_000, SamplingMode::AngleProduct, 1).unwrap();
        let expected = (est.mean * (1.0 - est.mean) / est.samples as f64).sqrt();
        assert!((est.std_error - expected).abs() <= 1e-12);
        assert!((0.0..=1.0).contains(&est.mean));

        let se_n = bernoulli_se(0.3, 1000);
        let se_2n = bernoulli_se(0.3, 2000);
        assert!((se_n * se_n / 2.0 - se_2n * se_2n).abs() <= 1e-12);
    }

    #[test]
    fn estimate_phi_validates_inputs() {
        let a = planar(0.1, 0.0);
        let b = planar(0.2, 0.0);
        assert!(matches!(
            estimate_phi(&a, &b, 10, SamplingMode::Haar, 0),
            Err(Error::RadiusMismatch(..))
        ));
        let mut rng = substream(4, 0);
        let c = sample_sphere_point(3, 0.1, &mut rng).unwrap();
        assert!(matches!(
            estimate_phi(&a, &c, 10, SamplingMode::Haar, 0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(estimate_phi(&a, &a, 0, SamplingMode::Haar, 0).is_err());
    }

    #[test]
    fn curve_with_single_zero_distance() {
        let curve = phi_curve(3, 0.1, &[0.0], 1000, SamplingMode::AngleProduct, 3).unwrap();
        assert_eq!(curve.points.len(), 1);
        assert_eq!(curve.points[0].mean, 0.0);
        assert!(phi_curve(3, 0.1, &[0.05, 0.01], 10, SamplingMode::Haar, 3).is_err());
        assert!(phi_curve(3, 0.1, &[0.3], 10, SamplingMode::Haar, 3).is_err());
    }

    #[test]
    fn n2_curve_tracks_oracle() {
        let eps = 0.1;
        let distances: Vec<f64> = (0..=5).map(|k| eps * k as f64 / 5.0).collect();
        let curve = phi_curve(2, eps, &distances, 100_000, SamplingMode::AngleProduct, 17).unwrap();
        for p in &curve.points {
            let oracle = phi_oracle_2d(eps, p.distance).unwrap();
            let sigma = p.std_error.max(bernoulli_se(oracle, p.samples));
            assert!((p.mean - oracle).abs() <= 4.0 * sigma, "{p:?} vs {oracle}");
        }
    }

    #[test]
    fn isotropy_at_zero_distance() {
        let rep = isotropy_test(3, 0.1, 0.0, 4, 1000, SamplingMode::AngleProduct, 4.0, 1).unwrap();
        assert!(rep.estimates.iter().all(|e| e.mean == 0.0));
        assert_eq!(rep.verdict, IsotropyVerdict::Consistent);
        assert_eq!(rep.max_pairwise_z, 0.0);
        assert!(isotropy_test(3, 0.1, 0.0, 1, 10, SamplingMode::Haar, 4.0, 1).is_err());
    }

    #[test]
    fn isotropy_haar_n2_is_consistent() {
        let rep = isotropy_test(2, 0.1, 0.05, 8, 100_000, SamplingMode::Haar, 4.0, 21).unwrap();
        assert_eq!(rep.verdict, IsotropyVerdict::Consistent, "{rep:?}");
    }

    #[test]
    fn z_statistic_edge_cases() {
        let e = |mean: f64| PhiEstimate {
            distance: 0.0,
            mean,
            std_error: bernoulli_se(mean, 100),
            samples: 100,
            mode: SamplingMode::Haar,
        };
        assert_eq!(two_proportion_z(&e(0.0), &e(0.0)), 0.0);
        assert_eq!(two_proportion_z(&e(0.2), &e(0.2)), 0.0);
        assert!(two_proportion_z(&e(0.1), &e(0.3)) > 3.0);
    }

    #[test]
    fn lemma1_identical_targets_agree() {
        let mut rng = substream(6, 0);
        let (x, y) = pair_at_distance(3, 0.1, 0.05, &mut rng).unwrap();
        let check =
            lemma1_order_check(&x, &y, &y, 10_000, SamplingMode::AngleProduct, 4.0, 3).unwrap();
        assert_eq!(check.verdict, Verdict::Agree);
        assert_eq!(check.phi_xy.mean, check.phi_xz.mean);
    }

    #[test]
    fn lemma1_n2_separated_distances_agree() {
        let mut rng = substream(7, 0);
        let x = sample_sphere_point(2, 0.1, &mut rng).unwrap();
        let y = point_at_distance(&x, 0.02, &mut rng).unwrap();
        let z = point_at_distance(&x, 0.08, &mut rng).unwrap();
        let check =
            lemma1_order_check(&x, &y, &z, 1_000_000, SamplingMode::AngleProduct, 4.0, 3).unwrap();
        assert_eq!(check.verdict, Verdict::Agree, "{check:?}");
    }

    #[test]
    fn lemma1_equal_distances_never_disagree() {
        let mut rng = substream(8, 0);
        for i in 0..5 {
            let x = sample_sphere_point(2, 0.1, &mut rng).unwrap();
            let y = point_at_distance(&x, 0.06, &mut rng).unwrap();
            let z = point_at_distance(&x, 0.06, &mut rng).unwrap();
            let check = lemma1_order_check(&x, &y, &z, 200_000, SamplingMode::AngleProduct, 4.0, i)
                .unwrap();
            assert_ne!(check.verdict, Verdict::Disagree);
        }
    }

    #[test]
    fn lemma1_rejects_far_points() {
        let mut rng = substream(9, 0);
        let (x, y) = pair_at_distance(3, 0.1, 0.15, &mut rng).unwrap();
        assert!(lemma1_order_check(&x, &y, &x, 10, SamplingMode::Haar, 4.0, 0).is_err());
        assert!(lemma1_batch(2, 0.1, 0, 10, SamplingMode::Haar, 4.0, 0).is_err());
    }
}
