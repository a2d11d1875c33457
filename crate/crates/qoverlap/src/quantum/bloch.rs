//! Bloch-sphere representation of qubit states.
//!
//! Convention: `|0⟩ ↦ (0,0,1)`, `|+⟩ ↦ (1,0,0)`, `(|0⟩ + i|1⟩)/√2 ↦ (0,1,0)`.
//! The inverse map fixes the global phase so the first nonzero amplitude is
//! real and non-negative.

use super::{check_dims, PureState};
use crate::error::{Error, Result};
use crate::tol::TOL;
use crate::C64;

/// A real 3-vector inside the closed unit ball; unit norm for images of
/// pure states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Builds a Bloch vector, checking `‖v‖ ≤ 1` within tolerance.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if v.norm() > 1.0 + TOL.unit_norm {
            return Err(Error::Structural(format!(
                "Bloch vector norm {} exceeds 1",
                v.norm()
            )));
        }
        Ok(v)
    }

    /// Unchecked constructor for directions that may be scaled internally.
    pub(crate) fn raw(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= TOL.unit_norm
    }

    /// Angle in `[0, π]` to another vector (both assumed unit).
    pub fn angle_to(&self, other: &Self) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::raw(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-14 {
            return Err(Error::Structural("cannot normalize the zero vector".into()));
        }
        Ok(self.scaled(1.0 / n))
    }
}

/// Bloch vector `⟨ψ|σ|ψ⟩` of a qubit state.
pub fn bloch_from_qubit(psi: &PureState) -> Result<BlochVector> {
    check_dims(2, psi.dim())?;
    let a = psi.amplitudes()[0];
    let b = psi.amplitudes()[1];
    let cross = a.conj() * b;
    Ok(BlochVector::raw(
        2.0 * cross.re,
        2.0 * cross.im,
        a.norm_sqr() - b.norm_sqr(),
    ))
}

/// Qubit state of a unit Bloch vector, with the first nonzero amplitude
/// real and non-negative.
pub fn qubit_from_bloch(v: &BlochVector) -> Result<PureState> {
    if !v.is_unit() {
        return Err(Error::Structural(format!(
            "Bloch vector norm {} is not 1",
            v.norm()
        )));
    }
    let theta = v.z.clamp(-1.0, 1.0).acos();
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    if c.abs() < 1e-12 {
        // south pole: the phase is unobservable, fix amplitudes to (0, 1)
        return PureState::qubit(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    }
    let phi = v.y.atan2(v.x);
    PureState::qubit(
        C64::new(c, 0.0),
        C64::from_polar(s, phi),
    )
}
