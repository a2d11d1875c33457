//! Core state types and elementary operations: pure states, density
//! matrices, convex preparations, POVMs, overlaps and trace distance.

pub mod bloch;
pub mod mub;

use crate::error::{Error, Result};
use crate::tol::TOL;
use crate::{C64, CMatrix, CVector};

/// A pure quantum state: a complex unit vector of dimension `d ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: CVector,
}

impl PureState {
    /// Builds a pure state, checking unit norm and `dim ≥ 2`.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let amps = CVector::from_vec(amplitudes);
        if amps.len() < 2 {
            return Err(Error::Structural(format!(
                "pure state needs dim >= 2, got {}",
                amps.len()
            )));
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > TOL.unit_norm {
            return Err(Error::Structural(format!(
                "pure state norm {norm} deviates from 1 by more than {}",
                TOL.unit_norm
            )));
        }
        Ok(Self { amps })
    }

    /// Builds a state from possibly unnormalized amplitudes.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let v = CVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm < 1e-14 {
            return Err(Error::Structural("cannot normalize the zero vector".into()));
        }
        Self::new((v / C64::new(norm, 0.0)).iter().copied().collect())
    }

    /// Computational basis state `|k⟩` in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if dim < 2 || k >= dim {
            return Err(Error::Range(format!("basis index {k} out of range for dim {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self::new(amps)
    }

    /// Qubit from two amplitudes.
    pub fn qubit(a: C64, b: C64) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    /// Rank-one projector `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> CMatrix {
        &self.amps * self.amps.adjoint()
    }

    /// The induced density matrix.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            mat: hermitize(&self.projector()),
        }
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amps.dotc(&other.amps))
    }
}

/// A quantum mixed state: Hermitian, PSD, unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    /// Builds a density matrix, checking hermiticity, unit trace and
    /// positive semidefiniteness.
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() || mat.nrows() < 2 {
            return Err(Error::Structural(format!(
                "density matrix must be square with dim >= 2, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let herm_dev = hermitian_deviation(&mat);
        if herm_dev > TOL.hermitian {
            return Err(Error::Structural(format!(
                "matrix deviates from Hermitian by {herm_dev:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TOL.unit_trace || tr.im.abs() > TOL.unit_trace {
            return Err(Error::Structural(format!("trace {tr} deviates from 1")));
        }
        let mat = hermitize(&mat);
        let lo = min_eigenvalue(&mat);
        if lo < -TOL.density_psd {
            return Err(Error::Structural(format!(
                "matrix has negative eigenvalue {lo:.3e}"
            )));
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|` of a pure state.
    pub fn from_pure(psi: &PureState) -> Self {
        psi.density()
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Range(format!("dim {dim} < 2")));
        }
        let m = CMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0);
        Ok(Self { mat: m })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues_hermitian(&self.mat)
    }
}

/// A specific convex decomposition of a mixed state: integer weights
/// `α_i` over pure states with common denominator `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedPreparation {
    pures: Vec<PureState>,
    alphas: Vec<u64>,
    beta: u64,
}

impl MixedPreparation {
    /// Builds a preparation, checking `Σα = β`, `β > 0` and equal dims.
    pub fn new(pures: Vec<PureState>, alphas: Vec<u64>, beta: u64) -> Result<Self> {
        if pures.is_empty() {
            return Err(Error::Structural("preparation needs at least one pure state".into()));
        }
        if pures.len() != alphas.len() {
            return Err(Error::Structural(format!(
                "got {} pure states but {} weights",
                pures.len(),
                alphas.len()
            )));
        }
        if beta == 0 {
            return Err(Error::Structural("beta must be positive".into()));
        }
        let d = pures[0].dim();
        for p in &pures {
            check_dims(d, p.dim())?;
        }
        let total: u64 = alphas.iter().sum();
        if total != beta {
            return Err(Error::Structural(format!(
                "weights sum to {total}, expected beta = {beta}"
            )));
        }
        Ok(Self { pures, alphas, beta })
    }

    /// Preparation from a pure state (`α = β = 1`).
    pub fn pure(psi: PureState) -> Self {
        Self {
            pures: vec![psi],
            alphas: vec![1],
            beta: 1,
        }
    }

    /// Uniform mixture of the given pure states (`α_i = 1`, `β = m`).
    pub fn uniform(pures: Vec<PureState>) -> Result<Self> {
        let m = pures.len() as u64;
        let alphas = vec![1u64; pures.len()];
        Self::new(pures, alphas, m)
    }

    pub fn dim(&self) -> usize {
        self.pures[0].dim()
    }

    pub fn pures(&self) -> &[PureState] {
        &self.pures
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    /// The induced density matrix `(1/β) Σ α_i |ψ_i⟩⟨ψ_i|`.
    pub fn density(&self) -> Result<DensityMatrix> {
        density_from_preparation(self)
    }
}

/// A positive operator-valued measure: PSD effects summing to identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<CMatrix>,
}

impl Povm {
    /// Builds a POVM, checking per-effect positivity and completeness.
    pub fn new(effects: Vec<CMatrix>) -> Result<Self> {
        if effects.is_empty() {
            return Err(Error::Structural("POVM needs at least one effect".into()));
        }
        let d = effects[0].nrows();
        let mut sum = CMatrix::zeros(d, d);
        for (k, e) in effects.iter().enumerate() {
            if !e.is_square() || e.nrows() != d {
                return Err(Error::DimensionMismatch { expected: d, got: e.nrows() });
            }
            let dev = hermitian_deviation(e);
            if dev > TOL.povm_psd {
                return Err(Error::Structural(format!(
                    "effect {k} deviates from Hermitian by {dev:.3e}"
                )));
            }
            let lo = min_eigenvalue(e);
            if lo < -TOL.povm_psd {
                return Err(Error::Structural(format!(
                    "effect {k} has negative eigenvalue {lo:.3e}"
                )));
            }
            sum += e;
        }
        let id = CMatrix::identity(d, d);
        let dev = max_abs(&(&sum - &id));
        if dev > TOL.povm_complete {
            return Err(Error::Structural(format!(
                "effects sum deviates from identity by {dev:.3e}"
            )));
        }
        Ok(Self { effects })
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].nrows()
    }

    pub fn effects(&self) -> &[CMatrix] {
        &self.effects
    }

    /// Born probability of outcome `k` on state `rho`.
    pub fn outcome_probability(&self, k: usize, rho: &DensityMatrix) -> Result<f64> {
        check_dims(self.dim(), rho.dim())?;
        if k >= self.effects.len() {
            return Err(Error::Range(format!("outcome {k} out of range")));
        }
        Ok((rho.matrix() * &self.effects[k]).trace().re)
    }
}

/// `(1/β) Σ α_i |ψ_i⟩⟨ψ_i|` of a preparation.
pub fn density_from_preparation(prep: &MixedPreparation) -> Result<DensityMatrix> {
    let d = prep.dim();
    let mut m = CMatrix::zeros(d, d);
    for (psi, &a) in prep.pures.iter().zip(&prep.alphas) {
        if a == 0 {
            continue;
        }
        m += psi.projector() * C64::new(a as f64 / prep.beta as f64, 0.0);
    }
    DensityMatrix::new(m)
}

/// `|⟨a|b⟩|`, symmetric in its arguments.
pub fn overlap_abs(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner(b)?.norm())
}

/// Trace distance `½ Tr|r − s|`.
pub fn trace_distance(r: &DensityMatrix, s: &DensityMatrix) -> Result<f64> {
    check_dims(r.dim(), s.dim())?;
    let diff = r.matrix() - s.matrix();
    let evs = eigenvalues_hermitian(&diff);
    Ok(0.5 * evs.iter().map(|l| l.abs()).sum::<f64>())
}

/// Distinguishability `½ (1 + T(r, s))` of two preparations under the
/// optimal two-outcome measurement.
pub fn distinguishability(r: &DensityMatrix, s: &DensityMatrix) -> Result<f64> {
    Ok(0.5 * (1.0 + trace_distance(r, s)?))
}

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `(M + M†)/2`.
pub(crate) fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

pub(crate) fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Largest entry-wise modulus.
pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn eigenvalues_hermitian(m: &CMatrix) -> Vec<f64> {
    let mut evs: Vec<f64> = hermitize(m).symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|a, b| a.total_cmp(b));
    evs
}

pub(crate) fn min_eigenvalue(m: &CMatrix) -> f64 {
    eigenvalues_hermitian(m)
        .first()
        .copied()
        .unwrap_or(f64::NAN)
}

/// `M^{-1/2}` of a Hermitian positive-definite matrix.
pub(crate) fn inv_sqrt_hpd(m: &CMatrix) -> Result<CMatrix> {
    let se = hermitize(m).symmetric_eigen();
    let d = m.nrows();
    let mut out = CMatrix::zeros(d, d);
    for k in 0..d {
        let lam = se.eigenvalues[k];
        if lam <= 0.0 {
            return Err(Error::Structural(format!(
                "matrix not positive definite: eigenvalue {lam:.3e}"
            )));
        }
        let v = se.eigenvectors.column(k);
        out += (v * v.adjoint()) * C64::new(1.0 / lam.sqrt(), 0.0);
    }
    Ok(out)
}


#[cfg(test)]
pub(crate) mod test_states {
    //! Shared fixtures for unit tests.

    use super::*;
    use rand::SeedableRng as _;

    pub fn rng(seed: u64) -> rand_chacha::ChaCha12Rng {
        rand_chacha::ChaCha12Rng::seed_from_u64(seed)
    }

    pub fn ket0() -> PureState {
        PureState::basis_state(2, 0).unwrap()
    }

    pub fn ket1() -> PureState {
        PureState::basis_state(2, 1).unwrap()
    }

    pub fn plus() -> PureState {
        PureState::normalized(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap()
    }

    pub fn minus() -> PureState {
        PureState::normalized(vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]).unwrap()
    }

    pub fn random_pure(rng: &mut impl rand::Rng, d: usize) -> PureState {
        loop {
            let amps: Vec<C64> = (0..d)
                .map(|_| {
                    let re: f64 = rng.sample(rand_distr::StandardNormal);
                    let im: f64 = rng.sample(rand_distr::StandardNormal);
                    C64::new(re, im)
                })
                .collect();
            if let Ok(s) = PureState::normalized(amps) {
                return s;
            }
        }
    }

    /// Random mixed state from a uniform mixture of `m` random pures.
    pub fn random_density(rng: &mut impl rand::Rng, d: usize, m: usize) -> DensityMatrix {
        let pures: Vec<_> = (0..m).map(|_| random_pure(rng, d)).collect();
        let prep = MixedPreparation::uniform(pures).unwrap();
        density_from_preparation(&prep).unwrap()
    }

    /// Qubit at planar angle `theta` on the z-x great circle.
    pub fn zx_state(theta: f64) -> PureState {
        PureState::qubit(
            C64::new((theta / 2.0).cos(), 0.0),
            C64::new((theta / 2.0).sin(), 0.0),
        )
        .unwrap()
    }
}
