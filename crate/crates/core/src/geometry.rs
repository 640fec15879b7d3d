//! Vectors on the ε-sphere and the plane-rotation chain that randomizes them.
//!
//! The rotation chain `U(Θ) = U_1(θ_1) U_2(θ_2) ... U_{n-1}(θ_{n-1})` is never
//! materialized. Plane `p` (1-based) rotates coordinates `(p, p+1)` with the
//! block `[[cos θ, sin θ], [-sin θ, cos θ]]`; the product is applied right to
//! left, so `U(Θ) e_n` is the spherical-coordinate vector
//!
//! ```text
//! ( ∏ sin θ_p , ..., cos θ_{j-1} ∏_{p>=j} sin θ_p , ..., cos θ_{n-1} )
//! ```

use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};

/// Relative tolerance of the sphere precondition `‖X‖ = ε`.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

const MAX_RESAMPLE: usize = 64;

/// A finite vector in R^n, n ≥ 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self(coords))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n.max(1)])
    }

    /// Basis vector `e_m`, `m` is 1-based.
    pub fn basis(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::InvalidArgument(format!(
                "basis index {m} outside 1..={n}"
            )));
        }
        let mut v = vec![0.0; n];
        v[m - 1] = 1.0;
        Ok(Self(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        quad_norm(self)
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        sq_distance(&self.0, &other.0).sqrt()
    }

    pub fn scaled(&self, k: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * k).collect())
    }
}

/// Quadratic (Euclidean) norm.
pub fn quad_norm(v: &Vector) -> f64 {
    v.0.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sq_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A point satisfying the public condition `‖X‖ = ε` with `ε ∈ (0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    vector: Vector,
    radius: f64,
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

impl SpherePoint {
    pub fn new(vector: Vector, radius: f64) -> Result<Self> {
        check_epsilon(radius)?;
        let norm = vector.norm();
        if (norm - radius).abs() > SPHERE_TOLERANCE * radius.max(1.0) {
            return Err(Error::NotOnSphere { norm, radius });
        }
        Ok(Self { vector, radius })
    }

    /// Scale a nonzero direction onto the sphere of the given radius.
    pub fn from_direction(direction: &Vector, radius: f64) -> Result<Self> {
        check_epsilon(radius)?;
        let norm = direction.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateSample(1));
        }
        Ok(Self {
            vector: direction.scaled(radius / norm),
            radius,
        })
    }

    pub fn vector(&self) -> &Vector {
        &self.vector
    }

    pub fn coords(&self) -> &[f64] {
        self.vector.coords()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn distance(&self, other: &SpherePoint) -> f64 {
        self.vector.distance(&other.vector)
    }
}

/// Θ ∈ [0, 2π)^{n-1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleTuple(Vec<f64>);

impl AngleTuple {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::DimensionTooSmall { min: 2, got: 1 });
        }
        for &a in &angles {
            check_range("theta", a, (0.0..TAU).contains(&a), "[0, 2π)")?;
        }
        Ok(Self(angles))
    }

    /// Ambient dimension `n` (one more than the number of angles).
    pub fn dim(&self) -> usize {
        self.0.len() + 1
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }
}

/// `(sin θ, cos θ)` with quadrant reduction, so exact multiples of π/2
/// give exact zeros.
pub fn sin_cos_reduced(theta: f64) -> (f64, f64) {
    let k = (theta / FRAC_PI_2).round();
    let (s, c) = (theta - k * FRAC_PI_2).sin_cos();
    match (k as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// One Givens factor `U_p(θ)` with its trig values cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneRotation {
    /// 1-based plane index; touches coordinates `plane` and `plane + 1`.
    pub plane: usize,
    pub angle: f64,
    cos: f64,
    sin: f64,
}

impl PlaneRotation {
    pub fn new(plane: usize, angle: f64) -> Self {
        let (sin, cos) = sin_cos_reduced(angle);
        Self {
            plane,
            angle,
            cos,
            sin,
        }
    }

    #[inline]
    fn apply_in_place(&self, v: &mut [f64]) {
        let i = self.plane - 1;
        let (a, b) = (v[i], v[i + 1]);
        v[i] = self.cos * a + self.sin * b;
        v[i + 1] = -self.sin * a + self.cos * b;
    }
}

/// An isometry of R^n applied to coordinate slices.
pub trait Isometry {
    fn dim(&self) -> usize;

    /// Write the image of `src` into `dst`. Both slices have length `dim()`.
    fn apply_slice(&self, src: &[f64], dst: &mut [f64]);

    fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        let mut out = vec![0.0; v.dim()];
        self.apply_slice(v.coords(), &mut out);
        Ok(Vector(out))
    }
}

/// `U(Θ)` as a sequence of plane rotations, stored in product order
/// (`plane` ascending) and applied right to left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationPlan {
    dimension: usize,
    rotations: Vec<PlaneRotation>,
}

impl RotationPlan {
    pub fn rotations(&self) -> &[PlaneRotation] {
        &self.rotations
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

impl Isometry for RotationPlan {
    fn dim(&self) -> usize {
        self.dimension
    }

    fn apply_slice(&self, src: &[f64], dst: &mut [f64]) {
        dst.copy_from_slice(src);
        for r in self.rotations.iter().rev() {
            r.apply_in_place(dst);
        }
    }
}

pub fn plan_from_angles(theta: &AngleTuple) -> RotationPlan {
    RotationPlan {
        dimension: theta.dim(),
        rotations: theta
            .angles()
            .iter()
            .enumerate()
            .map(|(i, &a)| PlaneRotation::new(i + 1, a))
            .collect(),
    }
}

/// `F(X, Θ) = U(Θ) X`.
pub fn apply_rotation(plan: &RotationPlan, v: &Vector) -> Result<Vector> {
    plan.apply(v)
}

/// Draw Θ uniformly on [0, 2π)^{n-1}.
pub fn sample_angles<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<AngleTuple> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: n });
    }
    Ok(AngleTuple(
        (0..n - 1).map(|_| rng.random_range(0.0..TAU)).collect(),
    ))
}

/// A dense rotation drawn from the Haar measure on SO(n).
#[derive(Debug, Clone, PartialEq)]
pub struct HaarRotation {
    matrix: DMatrix<f64>,
}

impl HaarRotation {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

impl Isometry for HaarRotation {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn apply_slice(&self, src: &[f64], dst: &mut [f64]) {
        let n = self.matrix.nrows();
        for (i, d) in dst.iter_mut().enumerate() {
            *d = (0..n).map(|j| self.matrix[(i, j)] * src[j]).sum();
        }
    }
}

/// QR of a Gaussian matrix with the sign of `R`'s diagonal folded into `Q`,
/// then one column flipped if needed to land in SO(n).
pub fn sample_haar_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<HaarRotation> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: n });
    }
    let gauss = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    Ok(HaarRotation { matrix: q })
}

/// Which randomizer drives the binarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Θ uniform on [0, 2π)^{n-1} pushed through the plane-rotation chain.
    #[default]
    AngleProduct,
    /// Haar-distributed rotation; rotation-invariant control.
    Haar,
}

impl SamplingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SamplingMode::AngleProduct => "angle-product",
            SamplingMode::Haar => "haar",
        }
    }
}

impl std::fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "angle-product" => Ok(SamplingMode::AngleProduct),
            "haar" => Ok(SamplingMode::Haar),
            other => Err(Error::InvalidArgument(format!(
                "unknown sampling mode '{other}' (expected angle-product or haar)"
            ))),
        }
    }
}

/// Reusable randomizer state for hot loops: redrawn in place once per sample.
#[derive(Debug, Clone)]
pub enum Randomizer {
    Plan(RotationPlan),
    Haar(HaarRotation),
}

impl Randomizer {
    pub fn new(mode: SamplingMode, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, got: n });
        }
        Ok(match mode {
            SamplingMode::AngleProduct => Randomizer::Plan(RotationPlan {
                dimension: n,
                rotations: (1..n).map(|p| PlaneRotation::new(p, 0.0)).collect(),
            }),
            SamplingMode::Haar => Randomizer::Haar(HaarRotation {
                matrix: DMatrix::identity(n, n),
            }),
        })
    }

    /// Draw a fresh Θ (or Haar rotation) from `rng`.
    ///
    /// Consumes the stream exactly as [`sample_angles`] /
    /// [`sample_haar_rotation`] would.
    pub fn redraw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        match self {
            Randomizer::Plan(plan) => {
                for r in &mut plan.rotations {
                    *r = PlaneRotation::new(r.plane, rng.random_range(0.0..TAU));
                }
            }
            Randomizer::Haar(h) => *h = sample_haar_rotation(h.dim(), rng)?,
        }
        Ok(())
    }
}

impl Isometry for Randomizer {
    fn dim(&self) -> usize {
        match self {
            Randomizer::Plan(p) => p.dim(),
            Randomizer::Haar(h) => h.dim(),
        }
    }

    #[inline]
    fn apply_slice(&self, src: &[f64], dst: &mut [f64]) {
        match self {
            Randomizer::Plan(p) => p.apply_slice(src, dst),
            Randomizer::Haar(h) => h.apply_slice(src, dst),
        }
    }
}

fn standard_normal_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    for _ in 0..MAX_RESAMPLE {
        let mut g = standard_normal_vector(n, rng);
        let norm = dot(&g, &g).sqrt();
        if norm > 1e-300 {
            g.iter_mut().for_each(|c| *c /= norm);
            return Ok(g);
        }
    }
    Err(Error::DegenerateSample(MAX_RESAMPLE))
}

/// Uniform point on εS_{n-1}.
pub fn sample_sphere_point<R: Rng + ?Sized>(
    n: usize,
    epsilon: f64,
    rng: &mut R,
) -> Result<SpherePoint> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: n });
    }
    check_epsilon(epsilon)?;
    let u = unit_vector(n, rng)?;
    Ok(SpherePoint {
        vector: Vector(u.into_iter().map(|c| c * epsilon).collect()),
        radius: epsilon,
    })
}

fn check_chord(epsilon: f64, d: f64) -> Result<()> {
    check_range("distance", d, (0.0..=2.0 * epsilon).contains(&d), "[0, 2ε]")
}

/// A point on the same sphere as `x` at chord distance `d`, in a uniformly
/// random tangent direction.
pub fn point_at_distance<R: Rng + ?Sized>(
    x: &SpherePoint,
    d: f64,
    rng: &mut R,
) -> Result<SpherePoint> {
    let eps = x.radius;
    check_chord(eps, d)?;
    if d == 0.0 {
        return Ok(x.clone());
    }
    let n = x.dim();
    let xhat: Vec<f64> = x.coords().iter().map(|c| c / eps).collect();
    let mut tangent = None;
    for _ in 0..MAX_RESAMPLE {
        let mut g = standard_normal_vector(n, rng);
        let along = dot(&g, &xhat);
        g.iter_mut().zip(&xhat).for_each(|(c, h)| *c -= along * h);
        let norm = dot(&g, &g).sqrt();
        if norm > 1e-12 {
            g.iter_mut().for_each(|c| *c /= norm);
            tangent = Some(g);
            break;
        }
    }
    let tangent = tangent.ok_or(Error::DegenerateSample(MAX_RESAMPLE))?;
    let alpha = 2.0 * (d / (2.0 * eps)).min(1.0).asin();
    let (s, c) = alpha.sin_cos();
    let coords = xhat
        .iter()
        .zip(&tangent)
        .map(|(h, t)| eps * (c * h + s * t))
        .collect();
    Ok(SpherePoint {
        vector: Vector(coords),
        radius: eps,
    })
}

/// `X` uniform on εS_{n-1} and `Y` on the same sphere with `‖X − Y‖ = d`.
pub fn pair_at_distance<R: Rng + ?Sized>(
    n: usize,
    epsilon: f64,
    d: f64,
    rng: &mut R,
) -> Result<(SpherePoint, SpherePoint)> {
    check_epsilon(epsilon)?;
    check_chord(epsilon, d)?;
    let x = sample_sphere_point(n, epsilon, rng)?;
    let y = point_at_distance(&x, d, rng)?;
    Ok((x, y))
}
