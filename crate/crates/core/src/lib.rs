//! Distance-to-bit bridge for secrecy-system analysis.
//!
//! Points on a small sphere `εS_{n-1}` are randomly rotated and mapped to the
//! parity of the unit hypercube they land in. Two points at distance `d`
//! disagree with probability `φ(d)`, which turns a quadratic-distance
//! advantage between receivers into a crossover-probability advantage, and
//! from there into a conditional-entropy advantage.
//!
//! * [`geometry`]: vectors, sphere points, the plane-rotation chain, samplers.
//! * [`binarizer`]: the 1D offset map and the checkerboard parity bit.
//! * [`estimation`]: Monte Carlo `φ`, the n = 2 quadrature oracle, isotropy
//!   and order checks.
//! * [`entropy`]: plug-in binary entropies, crossover ordering, advantage.
//! * [`scenario`]: wiretap simulation and the optimal-estimator comparison.

pub mod binarizer;
pub mod entropy;
pub mod error;
pub mod estimation;
pub mod geometry;
pub mod rng;
pub mod scenario;
pub mod verdict;

pub use binarizer::{
    binarize_1d, checkerboard_parity, exact_xor_expectation_1d, f_bit, gamma, Bit, UnitOffset,
};
pub use entropy::{
    binary_entropy, ck_advantage, conditional_entropy, crossover, wyner_check, BinaryJoint2,
    BinaryJoint3, SecrecyAdvantageReport,
};
pub use error::{Error, Result};
pub use estimation::{
    estimate_phi, isotropy_test, lemma1_batch, lemma1_order_check, phi_curve, phi_oracle_2d,
    IsotropyReport, IsotropyVerdict, Lemma1Check, PhiCurve, PhiEstimate,
};
pub use geometry::{
    apply_rotation, pair_at_distance, plan_from_angles, quad_norm, sample_angles,
    sample_haar_rotation, sample_sphere_point, AngleTuple, HaarRotation, Isometry, RotationPlan,
    SamplingMode, SpherePoint, Vector,
};
pub use scenario::{
    builtin_strategies, conditional_mean_estimator, generate_triple, inequality_i_check,
    run_scenario, ChannelConfig, InequalityReport, OpponentStrategy, ScenarioReport,
};
pub use verdict::Verdict;
