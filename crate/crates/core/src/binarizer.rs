//! Randomized bit maps: the 1D offset map `Γ(x − V)` and the n-dimensional
//! checkerboard parity of a rotated sphere point.

use std::ops::BitXor;

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::geometry::{plan_from_angles, AngleTuple, Isometry, SpherePoint, Vector};

/// A single binarized value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn value(self) -> u8 {
        self.0 as u8
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        b.value()
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Bit::ZERO),
            1 => Ok(Bit::ONE),
            _ => Err(Error::InvalidArgument(format!("bit value {v}"))),
        }
    }
}

impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

/// The 1D randomizer `V ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitOffset(f64);

impl UnitOffset {
    pub fn new(v: f64) -> Result<Self> {
        check_range("offset", v, (0.0..1.0).contains(&v), "[0, 1)")?;
        Ok(Self(v))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `floor(x) mod 2`, canonicalized to {0, 1}.
///
/// Integer inputs take the right-continuous floor (`gamma(-1.0) = 1`).
#[inline]
pub fn gamma(x: f64) -> Bit {
    Bit(x.floor().rem_euclid(2.0) == 1.0)
}

fn check_half_interval(name: &'static str, x: f64) -> Result<()> {
    check_range(name, x, (-0.5..0.5).contains(&x), "[-1/2, 1/2)")
}

/// `Γ(x − v)` for `x` in the 1D precondition interval `[-1/2, 1/2)`.
pub fn binarize_1d(x: f64, v: UnitOffset) -> Result<Bit> {
    check_half_interval("x", x)?;
    Ok(gamma(x - v.get()))
}

/// Exact measure of `{v ∈ [0,1) : Γ(x−v) ≠ Γ(y−v)}`.
///
/// As `v` sweeps `[0, 1)`, `Γ(x − v)` flips exactly once, at `v = frac(x)`.
/// The XOR therefore equals `Γ(x) ⊕ Γ(y)` outside the interval between the
/// two flip points and its complement inside. The result is checked against
/// `|x − y|` before being returned.
pub fn exact_xor_expectation_1d(x: f64, y: f64) -> Result<f64> {
    check_half_interval("x", x)?;
    check_half_interval("y", y)?;
    let flip_x = x - x.floor();
    let flip_y = y - y.floor();
    let between = (flip_x - flip_y).abs();
    let measure = if (gamma(x) ^ gamma(y)) == Bit::ONE {
        1.0 - between
    } else {
        between
    };
    let expected = (x - y).abs();
    if (measure - expected).abs() > 1e-12 {
        return Err(Error::IdentityViolation { measure, expected });
    }
    Ok(measure)
}

#[inline]
pub(crate) fn parity_of(coords: &[f64]) -> Bit {
    coords.iter().fold(Bit::ZERO, |acc, &c| acc ^ gamma(c))
}

/// XOR over coordinates of `gamma(coordinate)`: the checkerboard colour of
/// the unit cell containing `v`.
pub fn checkerboard_parity(v: &Vector) -> Bit {
    parity_of(v.coords())
}

/// `f(X, Θ)`: parity of the rotated point `U(Θ) X`.
pub fn f_bit(x: &SpherePoint, theta: &AngleTuple) -> Result<Bit> {
    if x.dim() != theta.dim() {
        return Err(Error::DimensionMismatch {
            expected: theta.dim(),
            got: x.dim(),
        });
    }
    let rotated = plan_from_angles(theta).apply(x.vector())?;
    Ok(checkerboard_parity(&rotated))
}

/// Parity of the image of `x` under an arbitrary isometry, using `scratch`
/// as the output buffer.
#[inline]
pub(crate) fn rotated_parity<I: Isometry + ?Sized>(iso: &I, x: &[f64], scratch: &mut [f64]) -> Bit {
    iso.apply_slice(x, scratch);
    parity_of(scratch)
}
