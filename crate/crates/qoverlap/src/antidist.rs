//! Anti-distinguishability of a preparation set via semidefinite
//! programming, with primal POVM and dual certificate.
//!
//! The primal program over POVMs `{M_x}` is
//!
//! ```text
//! minimize   Σ_x Tr(ρ_x M_x)       (error sum of the best guess-x effects)
//! subject to M_x ⪰ 0,  Σ_x M_x = I
//! ```
//!
//! whose optimum equals the common quantum overlap `ω_Q = n (1 − A_Q)`.
//! The Lagrangian dual is `maximize Tr Y` subject to `Y ⪯ ρ_x` for all `x`;
//! any feasible `Y` certifies a lower bound on the optimum, so the pair
//! `(POVM, Y)` brackets it from both sides.
//!
//! The solver follows the dual central path: for barrier weight `μ` it
//! maximizes `Tr Y + μ Σ_x log det(ρ_x − Y)` by damped Newton steps, which
//! keeps `Y` strictly feasible at all times. At the central point
//! `M_x = μ (ρ_x − Y)⁻¹` is primal feasible up to the Newton residual and
//! the duality gap equals `n·d·μ`. The recovered effects are corrected
//! symmetrically so completeness holds to machine precision.
//!
//! Below `μ ≈ 1e-8` the Newton systems become too ill-conditioned for f64,
//! which leaves instances with optimum exactly zero (perfectly
//! anti-distinguishable sets) short of the 1e-7 decision threshold. Those
//! are finished by an alternating-projection polish that searches for an
//! exact zero-error POVM supported on the kernels of the `ρ_x`; the result
//! is only accepted if it verifies as feasible with a smaller error sum.

use crate::error::{Error, Result};
use crate::quantum::{
    check_dims, eigenvalues_hermitian, hermitize, inv_sqrt_hpd, max_abs, overlap_abs,
    DensityMatrix, Povm, PureState,
};
use crate::tol::TOL;
use crate::{C64, CMatrix};
use nalgebra::DMatrix;

/// Solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct SdpOptions {
    /// Target primal-dual gap.
    pub gap_tolerance: f64,
    /// Barrier weight at the first stage.
    pub mu_init: f64,
    /// Multiplicative decrease of the barrier weight per stage.
    pub mu_shrink: f64,
    /// Smallest barrier weight attempted; below this the Newton systems
    /// are numerically meaningless in f64.
    pub mu_floor: f64,
    /// Newton iteration cap per stage.
    pub max_newton: usize,
    /// Whether to attempt the exact zero-error polish on near-zero primal
    /// values.
    pub zero_error_polish: bool,
}

impl Default for SdpOptions {
    fn default() -> Self {
        Self {
            gap_tolerance: TOL.sdp_gap,
            mu_init: 0.5,
            mu_shrink: 0.2,
            mu_floor: 1e-8,
            max_newton: 60,
            zero_error_polish: true,
        }
    }
}

/// Solution of the anti-distinguishability program.
#[derive(Debug, Clone)]
pub struct SdpResult {
    /// Anti-distinguishability `A_Q = 1 − primal_value / n`.
    pub a_q: f64,
    /// Optimal (primal) measurement.
    pub povm: Povm,
    /// Dual certificate `Y ⪯ ρ_x`; `Tr Y` lower-bounds the error sum.
    pub dual_certificate: CMatrix,
    /// Error sum of the returned POVM (upper bound on the optimum).
    pub primal_value: f64,
    /// `Tr Y` (lower bound on the optimum).
    pub dual_value: f64,
    /// `primal_value − dual_value`.
    pub gap: f64,
}

/// Solves the anti-distinguishability SDP to the given gap tolerance.
pub fn antidist_sdp(states: &[DensityMatrix], gap_tolerance: f64) -> Result<SdpResult> {
    if gap_tolerance <= 0.0 {
        return Err(Error::Range(format!(
            "gap tolerance must be positive, got {gap_tolerance}"
        )));
    }
    antidist_sdp_with(
        states,
        &SdpOptions {
            gap_tolerance,
            ..SdpOptions::default()
        },
    )
}

/// Solves the anti-distinguishability SDP with explicit options.
pub fn antidist_sdp_with(states: &[DensityMatrix], opts: &SdpOptions) -> Result<SdpResult> {
    let n = states.len();
    if n < 2 {
        return Err(Error::Structural(format!("need at least 2 states, got {n}")));
    }
    let d = states[0].dim();
    for s in states {
        check_dims(d, s.dim())?;
    }
    if d > 32 {
        return Err(Error::Capability(format!(
            "dimension {d} exceeds the supported range (d <= 32)"
        )));
    }

    let rhos: Vec<CMatrix> = states.iter().map(|s| s.matrix().clone()).collect();
    let basis = hermitian_basis(d);

    // Strictly dual-feasible start: Y = c I with c below every spectrum.
    let c0 = rhos
        .iter()
        .map(|r| eigenvalues_hermitian(r)[0])
        .fold(f64::INFINITY, f64::min)
        - 0.5;
    let mut y = CMatrix::identity(d, d) * C64::new(c0, 0.0);

    let mu_final = (opts.gap_tolerance / (4.0 * n as f64 * d as f64)).max(opts.mu_floor);
    let mut mu = opts.mu_init;
    loop {
        newton_center(&rhos, &mut y, mu, &basis, opts);
        if mu <= mu_final {
            break;
        }
        mu = (mu * opts.mu_shrink).max(mu_final);
    }

    // Primal recovery with exact completeness.
    let s_invs = inverses(&rhos, &y)?;
    let mut effects: Vec<CMatrix> = s_invs
        .iter()
        .map(|si| hermitize(&(si * C64::new(mu, 0.0))))
        .collect();
    let total = effects.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
    let t = inv_sqrt_hpd(&total)?;
    for e in effects.iter_mut() {
        *e = hermitize(&(&t * &*e * &t));
    }

    let mut primal = error_sum(&rhos, &effects);
    let dual = y.trace().re;

    if opts.zero_error_polish && primal < 1e-4 {
        if let Some(polished) = zero_error_polish(&rhos, &effects) {
            let p2 = error_sum(&rhos, &polished);
            if p2 < primal {
                effects = polished;
                primal = p2;
            }
        }
    }

    let gap = primal - dual;
    if gap > opts.gap_tolerance || gap < -TOL.gap_negative {
        return Err(Error::Convergence {
            primal,
            dual,
            gap,
        });
    }

    Ok(SdpResult {
        a_q: 1.0 - primal / n as f64,
        povm: Povm::new(effects)?,
        dual_certificate: y,
        primal_value: primal,
        dual_value: dual,
        gap,
    })
}

/// Common quantum overlap `ω_Q = n (1 − A_Q)`, clamped to `[0, 1]`.
pub fn quantum_overlap(states: &[DensityMatrix]) -> Result<f64> {
    let res = antidist_sdp(states, TOL.sdp_gap)?;
    let w = res.primal_value;
    if !(-TOL.sdp_gap..=1.0 + TOL.sdp_gap).contains(&w) {
        return Err(Error::Structural(format!(
            "overlap {w} escapes [0, 1] beyond tolerance"
        )));
    }
    Ok(w.clamp(0.0, 1.0))
}

/// Closed-form common quantum overlap of two pure states:
/// `1 − √(1 − |⟨a|b⟩|²)`.
pub fn pair_overlap_pure(a: &PureState, b: &PureState) -> Result<f64> {
    let ov = overlap_abs(a, b)?;
    Ok(1.0 - (1.0 - ov * ov).max(0.0).sqrt())
}

/// Whether the set is perfectly anti-distinguishable within `tol`
/// (default 1e-7): the returned POVM achieves error sum ≤ `tol` and the
/// dual certificate confirms the optimum is ≤ `tol`.
pub fn is_perfectly_antidist(states: &[DensityMatrix], tol: f64) -> Result<bool> {
    if tol <= 0.0 {
        return Err(Error::Range(format!("tolerance must be positive, got {tol}")));
    }
    let opts = SdpOptions {
        gap_tolerance: tol.clamp(5e-7, TOL.sdp_gap),
        ..SdpOptions::default()
    };
    match antidist_sdp_with(states, &opts) {
        Ok(res) => Ok(res.primal_value <= tol && res.dual_value <= tol),
        // A stalled solve can still decide "no": the dual value lower-bounds
        // the optimum.
        Err(Error::Convergence { dual, .. }) if dual > tol => Ok(false),
        Err(e) => Err(e),
    }
}

/// Orthonormal basis of the real vector space of `d×d` Hermitian matrices
/// under `⟨A, B⟩ = Re Tr(A B)`.
fn hermitian_basis(d: usize) -> Vec<CMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        let mut m = CMatrix::zeros(d, d);
        m[(i, i)] = C64::new(1.0, 0.0);
        basis.push(m);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut re = CMatrix::zeros(d, d);
            re[(i, j)] = C64::new(s, 0.0);
            re[(j, i)] = C64::new(s, 0.0);
            basis.push(re);
            let mut im = CMatrix::zeros(d, d);
            im[(i, j)] = C64::new(0.0, -s);
            im[(j, i)] = C64::new(0.0, s);
            basis.push(im);
        }
    }
    basis
}

fn coords(m: &CMatrix, basis: &[CMatrix]) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_iterator(
        basis.len(),
        basis.iter().map(|b| (b * m).trace().re),
    )
}

fn from_coords(v: &nalgebra::DVector<f64>, basis: &[CMatrix], d: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    for (c, b) in v.iter().zip(basis) {
        m += b * C64::new(*c, 0.0);
    }
    m
}

/// Cholesky factorizations of `S_x = ρ_x − Y`; `None` iff some `S_x` is
/// not positive definite.
fn factor(rhos: &[CMatrix], y: &CMatrix) -> Option<Vec<nalgebra::Cholesky<C64, nalgebra::Dyn>>> {
    rhos.iter()
        .map(|r| nalgebra::Cholesky::new(r - y))
        .collect()
}

fn inverses(rhos: &[CMatrix], y: &CMatrix) -> Result<Vec<CMatrix>> {
    let chols = factor(rhos, y).ok_or_else(|| {
        Error::Structural("internal: dual iterate left the feasible cone".into())
    })?;
    Ok(chols.iter().map(|c| c.inverse()).collect())
}

fn log_det(chol: &nalgebra::Cholesky<C64, nalgebra::Dyn>) -> f64 {
    let l = chol.l_dirty();
    (0..l.nrows()).map(|i| l[(i, i)].re.max(1e-300).ln()).sum::<f64>() * 2.0
}

/// Barrier objective `Tr Y + μ Σ log det S_x`, or `None` when infeasible.
fn barrier_value(rhos: &[CMatrix], y: &CMatrix, mu: f64) -> Option<f64> {
    let chols = factor(rhos, y)?;
    Some(y.trace().re + mu * chols.iter().map(log_det).sum::<f64>())
}

/// Damped Newton ascent on the dual barrier for fixed `μ`.
///
/// Terminates at the gradient target, the f64 noise floor for this `μ`, or
/// on a line-search stall; the iterate is strictly feasible throughout.
fn newton_center(
    rhos: &[CMatrix],
    y: &mut CMatrix,
    mu: f64,
    basis: &[CMatrix],
    opts: &SdpOptions,
) {
    let d = y.nrows();
    let dim = basis.len();
    // Gradient accuracy is limited by the conditioning of S_x ~ 4/mu.
    let gtol = (mu * 5e-3).max(1e-11).max(1e-15 / mu);
    let mut f_cur = match barrier_value(rhos, y, mu) {
        Some(v) => v,
        None => return,
    };
    for _ in 0..opts.max_newton {
        let s_invs = match inverses(rhos, y) {
            Ok(v) => v,
            Err(_) => return,
        };
        // grad f = I − μ Σ S_x⁻¹
        let mut grad = CMatrix::identity(d, d);
        for si in &s_invs {
            grad -= si * C64::new(mu, 0.0);
        }
        let grad = hermitize(&grad);
        if grad.norm() <= gtol {
            return;
        }
        // Newton system: (μ Σ S⁻¹ ⊗ S⁻¹) Δ = grad in Hermitian coordinates.
        let mut k = DMatrix::<f64>::zeros(dim, dim);
        for (bj, bcol) in basis.iter().enumerate() {
            let mut w = CMatrix::zeros(d, d);
            for si in &s_invs {
                w += si * bcol * si;
            }
            w *= C64::new(mu, 0.0);
            for (bi, brow) in basis.iter().enumerate() {
                k[(bi, bj)] = (brow * &w).trace().re;
            }
        }
        let g = coords(&grad, basis);
        let step = nalgebra::Cholesky::new(k.clone())
            .map(|c| c.solve(&g))
            .or_else(|| k.lu().solve(&g));
        let delta = match step {
            Some(s) => s,
            None => return,
        };
        let slope = g.dot(&delta);
        if !slope.is_finite() || slope <= 0.0 {
            return;
        }
        let dir = hermitize(&from_coords(&delta, basis, d));
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let cand = &*y + &dir * C64::new(t, 0.0);
            if let Some(f_new) = barrier_value(rhos, &cand, mu) {
                if f_new >= f_cur + 0.25 * t * slope {
                    *y = cand;
                    f_cur = f_new;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return;
        }
    }
}

fn error_sum(rhos: &[CMatrix], effects: &[CMatrix]) -> f64 {
    rhos.iter()
        .zip(effects)
        .map(|(r, m)| (r * m).trace().re)
        .sum()
}

/// Projectors onto the kernels of the `ρ_x` (eigenvalues ≤ 1e-9).
fn kernel_projectors(rhos: &[CMatrix]) -> Vec<CMatrix> {
    rhos.iter()
        .map(|r| {
            let se = hermitize(r).symmetric_eigen();
            let d = r.nrows();
            let mut p = CMatrix::zeros(d, d);
            for k in 0..d {
                if se.eigenvalues[k] <= 1e-9 {
                    let v = se.eigenvectors.column(k);
                    p += v * v.adjoint();
                }
            }
            hermitize(&p)
        })
        .collect()
}

/// Alternating-projection search for an exact zero-error POVM: effects are
/// confined to the kernel blocks `P_x · P_x`, completeness is restored by a
/// least-squares Hermitian correction, and negative eigenvalues are
/// clipped. Returns a verified POVM or `None`.
fn zero_error_polish(rhos: &[CMatrix], start: &[CMatrix]) -> Option<Vec<CMatrix>> {
    let d = rhos[0].nrows();
    let projs = kernel_projectors(rhos);
    if projs.iter().all(|p| p.norm() < 0.5) {
        return None; // every state full rank: zero error impossible
    }
    let basis = hermitian_basis(d);
    let dim = basis.len();

    // The correction map T(Λ) = Σ_x P_x Λ P_x in Hermitian coordinates,
    // pseudo-inverted once (it is symmetric PSD and typically singular).
    let mut tmat = DMatrix::<f64>::zeros(dim, dim);
    for (bj, bcol) in basis.iter().enumerate() {
        let mut w = CMatrix::zeros(d, d);
        for p in &projs {
            w += p * bcol * p;
        }
        for (bi, brow) in basis.iter().enumerate() {
            tmat[(bi, bj)] = (brow * &w).trace().re;
        }
    }
    let sym = nalgebra::SymmetricEigen::new(tmat.clone());
    let pinv_apply = |rhs: &nalgebra::DVector<f64>| -> nalgebra::DVector<f64> {
        let proj = sym.eigenvectors.transpose() * rhs;
        let scaled = nalgebra::DVector::from_iterator(
            dim,
            proj.iter()
                .zip(sym.eigenvalues.iter())
                .map(|(c, l)| if l.abs() > 1e-10 { c / l } else { 0.0 }),
        );
        &sym.eigenvectors * scaled
    };

    let id = CMatrix::identity(d, d);
    let mut a: Vec<CMatrix> = start
        .iter()
        .zip(&projs)
        .map(|(m, p)| hermitize(&(p * m * p)))
        .collect();

    for _ in 0..200 {
        // Restore completeness within the kernel blocks.
        let total = a.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
        let defect = &id - &total;
        let rhs = coords(&defect, &basis);
        let lam_coords = pinv_apply(&rhs);
        let lam = from_coords(&lam_coords, &basis, d);
        for (ax, p) in a.iter_mut().zip(&projs) {
            *ax = hermitize(&(&*ax + p * &lam * p));
        }
        let total = a.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
        if max_abs(&(&total - &id)) > 1e-2 {
            return None; // completeness not reachable inside the blocks
        }
        // Project onto the PSD cone.
        let mut worst = 0.0f64;
        for ax in a.iter_mut() {
            let se = ax.clone().symmetric_eigen();
            let lo = se.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
            if lo < -1e-13 {
                worst = worst.max(-lo);
                let mut clipped = CMatrix::zeros(d, d);
                for k in 0..d {
                    let l = se.eigenvalues[k];
                    if l > 0.0 {
                        let v = se.eigenvectors.column(k);
                        clipped += (v * v.adjoint()) * C64::new(l, 0.0);
                    }
                }
                *ax = hermitize(&clipped);
            }
        }
        if worst <= 1e-13 {
            break;
        }
    }

    // Verify: completeness, positivity, zero error.
    let total = a.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
    if max_abs(&(&total - &id)) > 1e-11 {
        return None;
    }
    for ax in &a {
        if eigenvalues_hermitian(ax)[0] < -1e-12 {
            return None;
        }
    }
    if error_sum(rhos, &a) > 1e-11 {
        return None;
    }
    Some(a)
}
