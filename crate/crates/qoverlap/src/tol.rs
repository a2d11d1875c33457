//! Centralized numerical tolerances.
//!
//! Every invariant check in the crate reads its threshold from [`TOL`], so
//! acceptance and property tests are reproducible and no module carries
//! ad-hoc magic numbers.

/// Tolerance configuration for all validators and decision thresholds.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// State vectors must be unit norm within this bound.
    pub unit_norm: f64,
    /// Entry-wise deviation from the conjugate transpose allowed in
    /// Hermitian checks.
    pub hermitian: f64,
    /// Deviation from unit trace allowed in density matrices.
    pub unit_trace: f64,
    /// Most negative eigenvalue allowed in a density matrix.
    pub density_psd: f64,
    /// Most negative eigenvalue allowed in a POVM effect.
    pub povm_psd: f64,
    /// Entry-wise deviation from identity allowed in POVM completeness.
    pub povm_complete: f64,
    /// Slack allowed in the dual feasibility check `Y ⪯ ρ_x`.
    pub dual_feasibility: f64,
    /// How negative the primal-dual gap may be before it is an error.
    pub gap_negative: f64,
    /// Default target for the primal-dual gap of the solver.
    pub sdp_gap: f64,
    /// Error-sum threshold below which a set counts as perfectly
    /// anti-distinguishable.
    pub antidist_decision: f64,
    /// Slack in geometric predicates: great-circle determinant, angle-sum
    /// inequalities, hemisphere witness margin.
    pub geometry: f64,
    /// Allowed deviation of squared cross-basis overlaps from 1/d.
    pub mub_unbiased: f64,
    /// Allowed deviation from orthonormality within a basis.
    pub basis_orthonormal: f64,
    /// Round-trip and metric identities (Bloch maps, trace distance).
    pub metric: f64,
    /// Threshold for the certified categories of a classification report.
    pub certificate: f64,
    /// Slack on strict/closed scalar inequalities (Johnston, Caves, Lewis).
    pub strict_ineq: f64,
}

/// Crate-wide defaults.
pub const TOL: Tolerances = Tolerances {
    unit_norm: 1e-12,
    hermitian: 1e-12,
    unit_trace: 1e-12,
    density_psd: 1e-10,
    povm_psd: 1e-9,
    povm_complete: 1e-9,
    dual_feasibility: 1e-8,
    gap_negative: 1e-8,
    sdp_gap: 1e-6,
    antidist_decision: 1e-7,
    geometry: 1e-9,
    mub_unbiased: 1e-10,
    basis_orthonormal: 1e-12,
    metric: 1e-10,
    certificate: 1e-6,
    strict_ineq: 1e-12,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}
