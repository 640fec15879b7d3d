use serde::{Deserialize, Serialize};

/// Default decision threshold, in combined standard errors.
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;

/// Outcome of comparing two orderings under Monte Carlo noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Agree,
    Disagree,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Agree => "agree",
            Verdict::Disagree => "disagree",
            Verdict::Indeterminate => "indeterminate",
        }
    }

    /// Combine the signs of two differences that are claimed to move
    /// together. `0` means "not resolved from zero".
    ///
    /// Two ties agree, two equal nonzero signs agree, opposite nonzero signs
    /// disagree, and a tie against a resolved sign is indeterminate.
    pub fn from_signs(a: i8, b: i8) -> Verdict {
        match (a, b) {
            (0, 0) => Verdict::Agree,
            (0, _) | (_, 0) => Verdict::Indeterminate,
            _ if a == b => Verdict::Agree,
            _ => Verdict::Disagree,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sign of `diff`, with `|diff| <= band` mapped to 0.
pub fn banded_sign(diff: f64, band: f64) -> i8 {
    if diff > band {
        1
    } else if diff < -band {
        -1
    } else {
        0
    }
}

/// `sqrt(a² + b²)` for two independent standard errors.
pub fn combined_se(a: f64, b: f64) -> f64 {
    a.hypot(b)
}
