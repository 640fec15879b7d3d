//! Plug-in binary entropies over empirical joints of `(X*, Y*, Z*)`.
//!
//! Entropies are in bits. `ck_advantage` is `H(X*|Z*) − H(X*|Y*)` for the
//! observed distribution only; no optimization over the input law is done.

use serde::{Deserialize, Serialize};

use crate::binarizer::Bit;
use crate::error::{check_range, Error, Result};
use crate::verdict::{banded_sign, Verdict};

/// Tie tolerance for verdicts computed on exact-count joints.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// `h(p) = −p log2 p − (1−p) log2(1−p)`, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_range("p", p, (0.0..=1.0).contains(&p), "[0, 1]")?;
    Ok(xlog2x(p) + xlog2x(1.0 - p))
}

fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

fn entropy_of_counts(counts: &[u64], total: u64) -> f64 {
    let t = total as f64;
    counts.iter().map(|&c| xlog2x(c as f64 / t)).sum()
}

/// Counts of `(X*, Y*)`, indexed `[x][y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BinaryJoint2 {
    counts: [[u64; 2]; 2],
}

impl BinaryJoint2 {
    pub fn new(counts: [[u64; 2]; 2]) -> Result<Self> {
        let joint = Self { counts };
        if joint.total() == 0 {
            return Err(Error::InvalidArgument("joint has no observations".into()));
        }
        Ok(joint)
    }

    pub fn counts(&self) -> [[u64; 2]; 2] {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    fn y_marginal(&self) -> [u64; 2] {
        [
            self.counts[0][0] + self.counts[1][0],
            self.counts[0][1] + self.counts[1][1],
        ]
    }

    fn x_marginal(&self) -> [u64; 2] {
        [
            self.counts[0][0] + self.counts[0][1],
            self.counts[1][0] + self.counts[1][1],
        ]
    }

    /// `H(X*)` in bits.
    pub fn x_entropy(&self) -> f64 {
        entropy_of_counts(&self.x_marginal(), self.total())
    }
}

/// Counts of `(X*, Y*, Z*)`, indexed `[x][y][z]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BinaryJoint3 {
    counts: [[[u64; 2]; 2]; 2],
}

impl BinaryJoint3 {
    pub fn new(counts: [[[u64; 2]; 2]; 2]) -> Result<Self> {
        let joint = Self { counts };
        if joint.total() == 0 {
            return Err(Error::InvalidArgument("joint has no observations".into()));
        }
        Ok(joint)
    }

    /// Empty accumulator; fill with [`record`](Self::record).
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn record(&mut self, x: Bit, y: Bit, z: Bit) {
        self.counts[x.index()][y.index()][z.index()] += 1;
    }

    pub fn merge(&mut self, other: &BinaryJoint3) {
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    self.counts[x][y][z] += other.counts[x][y][z];
                }
            }
        }
    }

    /// Element-wise difference; `other` must be a sub-count of `self`.
    pub fn without(&self, other: &BinaryJoint3) -> BinaryJoint3 {
        let mut out = *self;
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    out.counts[x][y][z] -= other.counts[x][y][z];
                }
            }
        }
        out
    }

    pub fn counts(&self) -> [[[u64; 2]; 2]; 2] {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().flatten().sum()
    }

    /// Joint of `(X*, Y*)`.
    pub fn xy(&self) -> BinaryJoint2 {
        let c = &self.counts;
        let mut out = [[0; 2]; 2];
        for (x, row) in out.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = c[x][y][0] + c[x][y][1];
            }
        }
        BinaryJoint2 { counts: out }
    }

    /// Joint of `(X*, Z*)`.
    pub fn xz(&self) -> BinaryJoint2 {
        let c = &self.counts;
        let mut out = [[0; 2]; 2];
        for (x, row) in out.iter_mut().enumerate() {
            for (z, cell) in row.iter_mut().enumerate() {
                *cell = c[x][0][z] + c[x][1][z];
            }
        }
        BinaryJoint2 { counts: out }
    }

    /// Same joint with the roles of `Y*` and `Z*` exchanged.
    pub fn swap_yz(&self) -> BinaryJoint3 {
        let mut out = [[[0; 2]; 2]; 2];
        for (x, plane) in out.iter_mut().enumerate() {
            for (y, row) in plane.iter_mut().enumerate() {
                for (z, cell) in row.iter_mut().enumerate() {
                    *cell = self.counts[x][z][y];
                }
            }
        }
        BinaryJoint3 { counts: out }
    }
}

/// `P(X* ≠ Y*)`, the empirical mean of `X* ⊕ Y*`.
pub fn crossover(joint: &BinaryJoint2) -> f64 {
    let c = joint.counts;
    (c[0][1] + c[1][0]) as f64 / joint.total() as f64
}

/// Plug-in `H(X*|Y*) = H(X*,Y*) − H(Y*)`, in bits.
pub fn conditional_entropy(joint: &BinaryJoint2) -> f64 {
    let total = joint.total();
    let flat: Vec<u64> = joint.counts.iter().flatten().copied().collect();
    let h = entropy_of_counts(&flat, total) - entropy_of_counts(&joint.y_marginal(), total);
    // Rounding can push exact zeros slightly negative.
    h.clamp(0.0, 1.0)
}

/// `H(X*|Z*) − H(X*|Y*)` in bits.
pub fn ck_advantage(joint: &BinaryJoint3) -> f64 {
    conditional_entropy(&joint.xz()) - conditional_entropy(&joint.xy())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecrecyAdvantageReport {
    pub p_xy: f64,
    pub p_xz: f64,
    pub h_x_given_y: f64,
    pub h_x_given_z: f64,
    pub ck_advantage: f64,
    pub wyner_applicable: bool,
    pub ordering_verdict: Verdict,
}

/// Check `P(X*≠Y*) < P(X*≠Z*) ⇒ H(X*|Z*) > H(X*|Y*)` on an exact joint.
///
/// The verdict is indeterminate whenever `P(X*≠Y*) ≥ 1/2`. Otherwise it is
/// agree when the crossover gap and the entropy gap have the same sign, with
/// differences within [`TIE_TOLERANCE`] counted as ties.
pub fn wyner_check(joint: &BinaryJoint3) -> SecrecyAdvantageReport {
    let (xy, xz) = (joint.xy(), joint.xz());
    let p_xy = crossover(&xy);
    let p_xz = crossover(&xz);
    let h_x_given_y = conditional_entropy(&xy);
    let h_x_given_z = conditional_entropy(&xz);
    let ck = h_x_given_z - h_x_given_y;
    let wyner_applicable = p_xy < 0.5;
    let ordering_verdict = if wyner_applicable {
        let by_crossover = banded_sign(p_xz - p_xy, TIE_TOLERANCE);
        let by_entropy = banded_sign(ck, TIE_TOLERANCE);
        if by_crossover == by_entropy {
            Verdict::Agree
        } else {
            Verdict::Disagree
        }
    } else {
        Verdict::Indeterminate
    };
    SecrecyAdvantageReport {
        p_xy,
        p_xz,
        h_x_given_y,
        h_x_given_z,
        ck_advantage: ck,
        wyner_applicable,
        ordering_verdict,
    }
}
