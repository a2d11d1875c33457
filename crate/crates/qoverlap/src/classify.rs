//! Certification of preparation sets.
//!
//! The quantum overlap comes from the anti-distinguishability SDP on the
//! induced density matrices. The epistemic-overlap upper bound comes from
//! the convex decomposition bound, with each pure tuple resolved by the
//! cheapest sound route: the exact qubit-triple geometry, the Johnston or
//! Caves criterion, the closed pair formula, and only then the SDP. Tuples
//! certified by an exact criterion contribute exactly zero; SDP-resolved
//! tuples contribute their primal value, which upper-bounds the tuple
//! overlap even when the solver stalls. Categories are therefore never
//! assigned from quantities that could understate the epistemic bound.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::antidist::{antidist_sdp_with, pair_overlap_pure, SdpOptions};
use crate::criteria::{caves_criterion, decomposition_bound, johnston_criterion};
use crate::error::{Error, Result};
use crate::geometry::qubit_triple_antidist;
use crate::quantum::{check_dims, overlap_abs, DensityMatrix, MixedPreparation, PureState};
use crate::tol::TOL;

/// Verdict for a preparation set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Category {
    /// `ω_E = 0` certified while `ω_Q = 1`: the strongest failure of
    /// epistemic explanations.
    CertifiedFullyNonEpistemic,
    /// `ω_E = 0` certified while `ω_Q > 0`.
    CertifiedNonEpistemic,
    /// The bound separates the overlaps: `ω_E < ω_Q` in every model.
    NonMaximallyEpistemicWitness,
    /// Nothing certifiable from the computed bounds.
    Inconclusive,
    /// `ω_Q = 0`: an orthogonal set, where both overlaps vanish trivially.
    OrthogonalTrivial,
}

/// Anti-distinguishability record for one pure tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TupleCertificate {
    /// Whether the tuple is perfectly anti-distinguishable (exactly, via a
    /// criterion, or within the decision tolerance via the SDP).
    pub antidist: bool,
    /// Anti-distinguishability of the tuple (1.0 for certified tuples).
    pub a_q: f64,
}

/// Classification of a preparation set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// Common quantum overlap of the induced density matrices.
    pub omega_q: f64,
    /// Upper bound on the common epistemic overlap in every ontological
    /// model.
    pub omega_e_upper: f64,
    /// Per-tuple certificates keyed by the comma-joined 0-based indices
    /// into each preparation's pure-state list.
    pub tuple_certificates: BTreeMap<String, TupleCertificate>,
    /// Assigned category.
    pub category: Category,
    /// Solver degradations, if any; non-empty diagnostics force
    /// `Inconclusive` rather than risk an unsound certificate.
    pub diagnostics: Vec<String>,
}

/// Knobs for [`classify_with`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Gap tolerance for every SDP solve.
    pub gap_tolerance: f64,
    /// Error-sum threshold for marking a tuple anti-distinguishable.
    pub antidist_tol: f64,
    /// Maximum number of pure tuples to enumerate.
    pub tuple_cap: u128,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            gap_tolerance: TOL.sdp_gap,
            antidist_tol: TOL.antidist_decision,
            tuple_cap: 100_000,
        }
    }
}

/// Classifies a preparation set with default options.
pub fn classify(preps: &[MixedPreparation]) -> Result<ClassificationReport> {
    classify_with(preps, &ClassifyOptions::default())
}

/// Classifies a preparation set: computes the quantum overlap, the
/// epistemic-overlap upper bound, per-tuple certificates, and the category.
pub fn classify_with(
    preps: &[MixedPreparation],
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    if preps.len() < 2 {
        return Err(Error::Structural(format!(
            "classification needs at least 2 preparations, got {}",
            preps.len()
        )));
    }
    let d = preps[0].dim();
    for p in preps {
        check_dims(d, p.dim())?;
    }
    let tuples: u128 = preps
        .iter()
        .map(|p| p.pures().len() as u128)
        .product();
    if tuples > opts.tuple_cap {
        return Err(Error::TupleCap {
            tuples,
            cap: opts.tuple_cap,
        });
    }

    let mut diagnostics = Vec::new();

    // Quantum overlap of the mixed preparations. The primal value is the
    // reported overlap (a sound upper bound even on a stalled solve); the
    // dual value is the certified lower bound used for category decisions.
    let densities: Vec<DensityMatrix> = preps
        .iter()
        .map(|p| p.density())
        .collect::<Result<_>>()?;
    let sdp_opts = SdpOptions {
        gap_tolerance: opts.gap_tolerance,
        ..SdpOptions::default()
    };
    let (omega_q, omega_q_lower) = match antidist_sdp_with(&densities, &sdp_opts) {
        Ok(res) => (
            res.primal_value.clamp(0.0, 1.0),
            res.dual_value.clamp(0.0, 1.0),
        ),
        Err(Error::Convergence { primal, dual, gap }) => {
            diagnostics.push(format!(
                "overlap solve stalled at gap {gap:.3e}; bounds [{dual:.6e}, {primal:.6e}]"
            ));
            (primal.clamp(0.0, 1.0), dual.clamp(0.0, 1.0))
        }
        Err(e) => return Err(e),
    };

    // Epistemic-overlap bound with per-tuple certificates.
    let n = preps.len();
    let mut certificates = BTreeMap::new();
    let omega_e_upper = decomposition_bound(preps, |tuple| {
        let key = tuple_key(preps, tuple);
        let (overlap, cert) = resolve_tuple(tuple, n, d, &sdp_opts, opts, &mut diagnostics)?;
        certificates.insert(key, cert);
        Ok(overlap)
    })?;

    let category = if !diagnostics.is_empty() {
        Category::Inconclusive
    } else if omega_q <= TOL.certificate {
        Category::OrthogonalTrivial
    } else if omega_e_upper <= TOL.certificate && omega_q_lower >= 1.0 - TOL.certificate {
        Category::CertifiedFullyNonEpistemic
    } else if omega_e_upper <= TOL.certificate && omega_q_lower > TOL.certificate {
        Category::CertifiedNonEpistemic
    } else if omega_e_upper < omega_q_lower - TOL.certificate {
        Category::NonMaximallyEpistemicWitness
    } else {
        Category::Inconclusive
    };

    Ok(ClassificationReport {
        omega_q,
        omega_e_upper,
        tuple_certificates: certificates,
        category,
        diagnostics,
    })
}

fn tuple_key(preps: &[MixedPreparation], tuple: &[&PureState]) -> String {
    // recover the index of each tuple element within its preparation
    let indices: Vec<String> = tuple
        .iter()
        .zip(preps)
        .map(|(state, prep)| {
            let idx = prep
                .pures()
                .iter()
                .position(|p| std::ptr::eq(p, *state))
                .expect("tuple states are borrowed from the preparations");
            idx.to_string()
        })
        .collect();
    indices.join(",")
}

/// Sound per-tuple overlap and certificate. Exact criteria contribute an
/// exact zero; the SDP contributes its primal value (an upper bound on the
/// tuple overlap in every case, including stalled solves).
fn resolve_tuple(
    tuple: &[&PureState],
    n: usize,
    d: usize,
    sdp_opts: &SdpOptions,
    opts: &ClassifyOptions,
    diagnostics: &mut Vec<String>,
) -> Result<(f64, TupleCertificate)> {
    if n == 2 {
        let w = pair_overlap_pure(tuple[0], tuple[1])?;
        return Ok((
            w,
            TupleCertificate {
                antidist: w <= opts.antidist_tol,
                a_q: 1.0 - w / 2.0,
            },
        ));
    }
    if d == 2 && n == 3 && qubit_triple_antidist(tuple[0], tuple[1], tuple[2])? {
        return Ok((0.0, TupleCertificate { antidist: true, a_q: 1.0 }));
    }
    if n >= 3 {
        let owned: Vec<PureState> = tuple.iter().map(|s| (*s).clone()).collect();
        if johnston_criterion(&owned)? {
            return Ok((0.0, TupleCertificate { antidist: true, a_q: 1.0 }));
        }
    }
    if n == 3 {
        let x1 = overlap_abs(tuple[0], tuple[1])?.powi(2);
        let x2 = overlap_abs(tuple[0], tuple[2])?.powi(2);
        let x3 = overlap_abs(tuple[1], tuple[2])?.powi(2);
        if caves_criterion(x1, x2, x3)? {
            return Ok((0.0, TupleCertificate { antidist: true, a_q: 1.0 }));
        }
    }
    let densities: Vec<DensityMatrix> = tuple.iter().map(|s| s.density()).collect();
    match antidist_sdp_with(&densities, sdp_opts) {
        Ok(res) => Ok((
            res.primal_value,
            TupleCertificate {
                antidist: res.primal_value <= opts.antidist_tol,
                a_q: res.a_q,
            },
        )),
        Err(Error::Convergence { primal, dual, gap }) => {
            diagnostics.push(format!(
                "tuple solve stalled at gap {gap:.3e}; bounds [{dual:.6e}, {primal:.6e}]"
            ));
            Ok((
                primal.max(0.0),
                TupleCertificate {
                    antidist: false,
                    a_q: 1.0 - primal / n as f64,
                },
            ))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::mub::mub_bases;
    use crate::quantum::test_states::*;

    fn benchmark_preps() -> Vec<MixedPreparation> {
        vec![
            MixedPreparation::pure(ket0()),
            MixedPreparation::pure(plus()),
            MixedPreparation::new(vec![ket1(), minus()], vec![1, 1], 2).unwrap(),
        ]
    }

    fn mub_family_preps(d: usize, count: usize) -> Vec<MixedPreparation> {
        mub_bases(d, count)
            .unwrap()
            .into_iter()
            .map(|b| MixedPreparation::uniform(b).unwrap())
            .collect()
    }

    #[test]
    fn benchmark_triple_is_certified_nonepistemic() {
        let report = classify(&benchmark_preps()).unwrap();
        assert_eq!(report.category, Category::CertifiedNonEpistemic);
        assert_eq!(report.omega_e_upper, 0.0);
        assert!((report.omega_q - 0.1161).abs() < 2e-3, "omega_q = {}", report.omega_q);
        assert_eq!(report.tuple_certificates.len(), 2);
        assert!(report.tuple_certificates.values().all(|c| c.antidist && c.a_q == 1.0));
        assert!(report.diagnostics.is_empty());
    }

    #[test]
    fn four_mub_family_d3_fully_nonepistemic() {
        let report = classify(&mub_family_preps(3, 4)).unwrap();
        assert_eq!(report.category, Category::CertifiedFullyNonEpistemic);
        assert_eq!(report.omega_e_upper, 0.0);
        assert!((report.omega_q - 1.0).abs() < 1e-6);
        assert_eq!(report.tuple_certificates.len(), 81);
    }

    #[test]
    fn three_mub_family_d5_fully_nonepistemic() {
        let report = classify(&mub_family_preps(5, 3)).unwrap();
        assert_eq!(report.category, Category::CertifiedFullyNonEpistemic);
        assert_eq!(report.omega_e_upper, 0.0);
        assert!((report.omega_q - 1.0).abs() < 1e-6);
        assert_eq!(report.tuple_certificates.len(), 125);
    }

    #[test]
    fn orthogonal_pair_trivial() {
        let preps = vec![
            MixedPreparation::pure(ket0()),
            MixedPreparation::pure(ket1()),
        ];
        let report = classify(&preps).unwrap();
        assert_eq!(report.category, Category::OrthogonalTrivial);
        assert!(report.omega_q <= 1e-6);
    }

    #[test]
    fn mub_pair_is_nonmaximally_epistemic_witness() {
        // two maximally mixed qubit preparations from the z and x bases:
        // ω_Q = 1, bound = 2 − √2 < 1
        let report = classify(&mub_family_preps(2, 2)).unwrap();
        assert_eq!(report.category, Category::NonMaximallyEpistemicWitness);
        assert!((report.omega_q - 1.0).abs() < 1e-6);
        assert!((report.omega_e_upper - (2.0 - 2.0f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn identical_pure_pair_inconclusive() {
        let preps = vec![
            MixedPreparation::pure(ket0()),
            MixedPreparation::pure(ket0()),
        ];
        let report = classify(&preps).unwrap();
        // ω_Q = 1 and the bound is 1: nothing separates
        assert_eq!(report.category, Category::Inconclusive);
        assert!((report.omega_e_upper - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tuple_cap_enforced() {
        let basis: Vec<PureState> =
            (0..3).map(|k| PureState::basis_state(3, k).unwrap()).collect();
        let preps: Vec<MixedPreparation> = (0..4)
            .map(|_| MixedPreparation::uniform(basis.clone()).unwrap())
            .collect();
        let opts = ClassifyOptions {
            tuple_cap: 10,
            ..ClassifyOptions::default()
        };
        assert!(matches!(
            classify_with(&preps, &opts),
            Err(Error::TupleCap { tuples: 81, cap: 10 })
        ));
    }

    #[test]
    fn certificate_keys_cover_the_tuple_grid() {
        let report = classify(&benchmark_preps()).unwrap();
        let keys: Vec<&String> = report.tuple_certificates.keys().collect();
        assert_eq!(keys, ["0,0,0", "0,0,1"]);
    }
}
