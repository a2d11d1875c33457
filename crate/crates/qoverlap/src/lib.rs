//! Numerical toolkit for anti-distinguishability of quantum preparations and
//! bounds on the common epistemic overlap of ontological models.
//!
//! The crate is organised around a small set of pipelines:
//!
//! * [`quantum`] — complex linear algebra for pure/mixed states, Bloch-sphere
//!   maps and mutually unbiased bases.
//! * [`antidist`] — the anti-distinguishability semidefinite program with
//!   primal POVM and dual certificate, and the derived common quantum overlap.
//! * [`geometry`] — exact great-circle criteria for qubit triples and the
//!   closed-form anti-distinguishing POVM.
//! * [`criteria`] — combinatorial and spectral sufficient criteria
//!   (Johnston, Caves), decomposition bounds and ratio-bound evaluators.
//! * [`classify`] — certification of preparation sets as non-epistemic,
//!   fully non-epistemic, or non-maximally epistemic.
//! * [`ks`] — the Kochen-Specker qubit model: ontic densities, Monte Carlo
//!   overlap integration on the sphere, and its closed forms.
//!
//! All public entry points are pure functions of their inputs; values are
//! immutable once constructed and safe to share across threads.

pub mod antidist;
pub mod classify;
pub mod criteria;
pub mod error;
pub mod geometry;
pub mod ks;
pub mod quantum;
pub mod tol;

pub use antidist::{
    antidist_sdp, antidist_sdp_with, is_perfectly_antidist, pair_overlap_pure, quantum_overlap,
    SdpOptions, SdpResult,
};
pub use classify::{classify, classify_with, Category, ClassificationReport, ClassifyOptions};
pub use criteria::{
    asymptotic_ratio_bound, caves_criterion, decomposition_bound, johnston_criterion,
    lewis_threshold, min_sum_inequality, mub_family_ratio_bound, mub_pair_bound,
    overlap_sum_bound, parity_oblivious_qubit_config, pure_pair_ratio_bound, s_witness,
    MinSumCheck, SWitness,
};
pub use error::{Error, Result};
pub use geometry::{
    antidist_povm_qubit, great_circle_test, hemisphere_witness, nonepistemic_mixture_test,
    qubit_triple_antidist,
};
pub use ks::{
    hemisphere_positivity, ks_basis_pair_overlap, ks_basis_pair_overlap_min, ks_density,
    ks_overlap_mixed, ks_overlap_pair_closed, ks_overlap_pure, OverlapEstimate, SampleScheme,
    SphereSample,
};
pub use quantum::bloch::{bloch_from_qubit, qubit_from_bloch, BlochVector};
pub use quantum::mub::mub_bases;
pub use quantum::{
    density_from_preparation, distinguishability, overlap_abs, trace_distance, DensityMatrix,
    MixedPreparation, Povm, PureState,
};
pub use tol::{Tolerances, TOL};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex vector.
pub type CVector = nalgebra::DVector<C64>;
