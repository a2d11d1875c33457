//! Exact geometric criteria for qubit anti-distinguishability and the
//! closed-form anti-distinguishing POVM.
//!
//! Three pure qubit states are perfectly anti-distinguishable iff their
//! Bloch vectors lie on one great circle and every pair of inter-state
//! angles sums to at least π. On the anti-distinguishable side the optimal
//! measurement has effects `γ_k |ψ̄_k⟩⟨ψ̄_k|` along the orthogonal states,
//! with weights fixed by completeness.

use crate::error::{Error, Result};
use crate::quantum::bloch::{bloch_from_qubit, BlochVector};
use crate::quantum::{check_dims, overlap_abs, Povm, PureState};
use crate::tol::TOL;
use crate::{C64, CMatrix};

/// A unit direction `w` with `w·v_i > 0` for all inputs, when the vectors
/// fit strictly inside one open hemisphere; `None` otherwise.
///
/// Decided exactly: `w` exists iff the origin is outside the convex hull
/// of the inputs, and the minimum-norm point of the hull (found by
/// enumerating candidate supporting faces) is such a direction.
pub fn hemisphere_witness(vs: &[BlochVector]) -> Result<Option<BlochVector>> {
    if vs.is_empty() {
        return Err(Error::Structural("empty vector list".into()));
    }
    for v in vs {
        if !v.is_unit() {
            return Err(Error::Structural(format!(
                "hemisphere witness needs unit vectors, got norm {}",
                v.norm()
            )));
        }
    }
    let p = min_norm_point(vs);
    let norm = p.norm();
    if norm <= TOL.geometry {
        return Ok(None);
    }
    let w = p.scaled(1.0 / norm);
    // ⟨w, v_i⟩ ≥ ‖p‖ for the min-norm point; re-check explicitly.
    if vs.iter().all(|v| w.dot(v) > TOL.geometry) {
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

/// Minimum-norm point of the convex hull of vectors in R³. Candidate
/// minimizers lie in the relative interior of a face spanned by at most 4
/// points (Carathéodory); each candidate face gives a small
/// equality-constrained least-squares problem.
fn min_norm_point(vs: &[BlochVector]) -> BlochVector {
    let n = vs.len();
    let mut best = vs[0];
    let mut best_norm = best.norm();
    let mut consider = |subset: &[BlochVector]| {
        if let Some(p) = affine_min_norm(subset) {
            let nn = p.norm();
            if nn < best_norm {
                best_norm = nn;
                best = p;
            }
        }
    };
    for i in 0..n {
        consider(&[vs[i]]);
        for j in (i + 1)..n {
            consider(&[vs[i], vs[j]]);
            for k in (j + 1)..n {
                consider(&[vs[i], vs[j], vs[k]]);
                for l in (k + 1)..n {
                    consider(&[vs[i], vs[j], vs[k], vs[l]]);
                }
            }
        }
    }
    best
}

/// Min-norm point of the convex hull of `pts` when it lies in the relative
/// interior (all convex coefficients non-negative); `None` otherwise.
fn affine_min_norm(pts: &[BlochVector]) -> Option<BlochVector> {
    let m = pts.len();
    if m == 1 {
        return Some(pts[0]);
    }
    // minimize ‖Σ λ_i p_i‖² s.t. Σ λ_i = 1  ⇒  [G 1; 1ᵀ 0] [λ; ν] = [0; 1]
    let mut sys = nalgebra::DMatrix::<f64>::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            sys[(i, j)] = pts[i].dot(&pts[j]);
        }
        sys[(i, m)] = 1.0;
        sys[(m, i)] = 1.0;
    }
    let mut rhs = nalgebra::DVector::<f64>::zeros(m + 1);
    rhs[m] = 1.0;
    let sol = sys.lu().solve(&rhs)?;
    if sol.iter().take(m).any(|l| *l < -1e-12 || !l.is_finite()) {
        return None;
    }
    let mut p = BlochVector::raw(0.0, 0.0, 0.0);
    for (l, v) in sol.iter().take(m).zip(pts) {
        p = BlochVector::raw(p.x + l * v.x, p.y + l * v.y, p.z + l * v.z);
    }
    Some(p)
}

/// Whether three Bloch vectors are coplanar with the origin, i.e. lie on
/// one great circle: `|det[v1 v2 v3]| ≤ 1e-9`.
pub fn great_circle_test(v1: &BlochVector, v2: &BlochVector, v3: &BlochVector) -> bool {
    v1.dot(&v2.cross(v3)).abs() <= TOL.geometry
}

/// Bloch angle between two qubit states: `2 cos⁻¹|⟨a|b⟩| ∈ [0, π]`.
pub(crate) fn pair_angle(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(2.0 * overlap_abs(a, b)?.clamp(0.0, 1.0).acos())
}

/// Exact perfect-anti-distinguishability test for three pure qubit states:
/// coplanar Bloch vectors and all three pairwise angle sums at least π
/// (inequalities closed, slack 1e-9).
pub fn qubit_triple_antidist(p1: &PureState, p2: &PureState, p3: &PureState) -> Result<bool> {
    for p in [p1, p2, p3] {
        check_dims(2, p.dim())?;
    }
    let v1 = bloch_from_qubit(p1)?;
    let v2 = bloch_from_qubit(p2)?;
    let v3 = bloch_from_qubit(p3)?;
    if !great_circle_test(&v1, &v2, &v3) {
        return Ok(false);
    }
    Ok(angle_sums_hold(p1, p2, p3)?.is_none())
}

/// `None` when every pairwise angle-sum inequality holds; otherwise the
/// failing pair of (1-based) state indices.
fn angle_sums_hold(
    p1: &PureState,
    p2: &PureState,
    p3: &PureState,
) -> Result<Option<(usize, usize)>> {
    let a = overlap_abs(p1, p2)?.clamp(0.0, 1.0).acos();
    let b = overlap_abs(p1, p3)?.clamp(0.0, 1.0).acos();
    let c = overlap_abs(p2, p3)?.clamp(0.0, 1.0).acos();
    let half_pi = std::f64::consts::FRAC_PI_2;
    if a + b - half_pi < -TOL.geometry {
        return Ok(Some((1, 2)));
    }
    if a + c - half_pi < -TOL.geometry {
        return Ok(Some((1, 3)));
    }
    if b + c - half_pi < -TOL.geometry {
        return Ok(Some((2, 3)));
    }
    Ok(None)
}

/// The qubit state orthogonal to `psi`.
pub(crate) fn orthogonal_qubit(psi: &PureState) -> PureState {
    let a = psi.amplitudes()[0];
    let b = psi.amplitudes()[1];
    PureState::qubit(-b.conj(), a.conj()).expect("orthogonal state of a unit vector is unit")
}

/// Zero-error anti-distinguishing POVM `{γ_k |ψ̄_k⟩⟨ψ̄_k|}` for a triple
/// that passes [`qubit_triple_antidist`].
///
/// With `ν = 2cos⁻¹|⟨p1|p2⟩|` and `ν′ = 2cos⁻¹|⟨p1|p3⟩|` the completeness
/// condition fixes
///
/// ```text
/// γ1 = −2 sin(ν+ν′) / Δ,  γ2 = 2 sin ν′ / Δ,  γ3 = 2 sin ν / Δ,
/// Δ = sin ν + sin ν′ − sin(ν+ν′).
/// ```
pub fn antidist_povm_qubit(p1: &PureState, p2: &PureState, p3: &PureState) -> Result<Povm> {
    for p in [p1, p2, p3] {
        check_dims(2, p.dim())?;
    }
    let pairs = [(p1, p2, 1, 2), (p1, p3, 1, 3), (p2, p3, 2, 3)];
    for (a, b, i, j) in pairs {
        if overlap_abs(a, b)? >= 1.0 - TOL.strict_ineq {
            return Err(Error::Domain(format!(
                "states {i} and {j} coincide; the effect weights are singular there"
            )));
        }
    }
    let v1 = bloch_from_qubit(p1)?;
    let v2 = bloch_from_qubit(p2)?;
    let v3 = bloch_from_qubit(p3)?;
    if !great_circle_test(&v1, &v2, &v3) {
        return Err(Error::Domain(
            "Bloch vectors do not lie on a single great circle".into(),
        ));
    }
    if let Some((i, j)) = angle_sums_hold(p1, p2, p3)? {
        return Err(Error::Domain(format!(
            "angle-sum condition fails for states {i} and {j}: \
             cos⁻¹|⟨ψ_{i}|ψ_{j}⟩| pairs below π/2"
        )));
    }
    let nu = pair_angle(p1, p2)?;
    let nup = pair_angle(p1, p3)?;
    let delta = nu.sin() + nup.sin() - (nu + nup).sin();
    if delta.abs() < 1e-12 {
        return Err(Error::Domain("degenerate configuration: zero denominator".into()));
    }
    let gammas = [
        -2.0 * (nu + nup).sin() / delta,
        2.0 * nup.sin() / delta,
        2.0 * nu.sin() / delta,
    ];
    let effects: Vec<CMatrix> = [p1, p2, p3]
        .iter()
        .zip(gammas)
        .map(|(p, g)| orthogonal_qubit(p).projector() * C64::new(g.max(0.0), 0.0))
        .collect();
    Povm::new(effects)
}

/// Sufficient test certifying that the three preparations
/// `{|ψ⟩⟨ψ|, |φ⟩⟨φ|, (α1/β)|χ1⟩⟨χ1| + (α2/β)|χ2⟩⟨χ2|}` are non-epistemic
/// for any valid integer weights: all four Bloch vectors share a great
/// circle, `|⟨ψ|φ⟩| > 0`, and both triples `(ψ, φ, χ_i)` pass the
/// angle-sum conditions.
pub fn nonepistemic_mixture_test(
    psi: &PureState,
    phi: &PureState,
    chi1: &PureState,
    chi2: &PureState,
) -> Result<bool> {
    for p in [psi, phi, chi1, chi2] {
        check_dims(2, p.dim())?;
    }
    if overlap_abs(psi, phi)? <= TOL.geometry {
        return Ok(false);
    }
    Ok(qubit_triple_antidist(psi, phi, chi1)? && qubit_triple_antidist(psi, phi, chi2)?)
}
