//! The Kochen-Specker epistemic model for qubits: ontic densities over the
//! unit sphere, deterministic Monte Carlo overlap integration, the closed
//! pairwise form, and the two-basis overlap function with its minimizer.

use crate::error::{Error, Result};
use crate::quantum::bloch::{bloch_from_qubit, BlochVector};
use crate::quantum::{check_dims, MixedPreparation, PureState};
use crate::tol::TOL;
use rand::Rng as _;
use rand::SeedableRng as _;
use rand_chacha::ChaCha12Rng;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;
const CHUNK: usize = 1 << 14;

/// Sphere sampling strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleScheme {
    /// Independent uniform points (Gaussian direction method).
    UniformRandom,
    /// Equal-area z-bands visited round-robin; unbiased, with the same
    /// surface measure but lower true error than the reported one.
    Stratified,
}

/// A deterministic batch of unit vectors on the sphere.
///
/// The same `(seed, len, scheme)` always reproduces the identical point
/// list: points are generated in fixed-size index chunks, each from its own
/// counter-derived ChaCha stream, so the construction does not depend on
/// thread scheduling.
#[derive(Debug, Clone)]
pub struct SphereSample {
    points: Vec<[f64; 3]>,
    seed: u64,
    scheme: SampleScheme,
}

impl SphereSample {
    /// Generates `len` unit vectors from `seed`.
    pub fn generate(seed: u64, len: usize, scheme: SampleScheme) -> Result<Self> {
        if len == 0 {
            return Err(Error::Range("sample length must be positive".into()));
        }
        let strata = match scheme {
            SampleScheme::UniformRandom => 1,
            SampleScheme::Stratified => largest_divisor_up_to_sqrt(len),
        };
        let mut points = vec![[0.0f64; 3]; len];
        for (chunk_idx, chunk) in points.chunks_mut(CHUNK).enumerate() {
            let mut rng = ChaCha12Rng::seed_from_u64(splitmix(seed, chunk_idx as u64));
            let base = chunk_idx * CHUNK;
            for (off, p) in chunk.iter_mut().enumerate() {
                *p = match scheme {
                    SampleScheme::UniformRandom => gaussian_direction(&mut rng),
                    SampleScheme::Stratified => {
                        stratified_point(&mut rng, (base + off) % strata, strata)
                    }
                };
            }
        }
        Ok(Self { points, seed, scheme })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn scheme(&self) -> SampleScheme {
        self.scheme
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }
}

fn splitmix(seed: u64, counter: u64) -> u64 {
    let mut z = seed ^ counter.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn gaussian_direction(rng: &mut ChaCha12Rng) -> [f64; 3] {
    loop {
        let x: f64 = rng.sample(rand_distr::StandardNormal);
        let y: f64 = rng.sample(rand_distr::StandardNormal);
        let z: f64 = rng.sample(rand_distr::StandardNormal);
        let n = (x * x + y * y + z * z).sqrt();
        if n > 1e-12 {
            return [x / n, y / n, z / n];
        }
    }
}

fn stratified_point(rng: &mut ChaCha12Rng, stratum: usize, strata: usize) -> [f64; 3] {
    let width = 2.0 / strata as f64;
    let z = -1.0 + (stratum as f64 + rng.random_range(0.0..1.0)) * width;
    let z = z.clamp(-1.0, 1.0);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn largest_divisor_up_to_sqrt(n: usize) -> usize {
    let mut best = 1;
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            best = k;
        }
        k += 1;
    }
    best
}

/// Ontic density of the model: `μ(λ|v) = (1/π) max(0, v·λ)` for unit `v`
/// and `λ`; integrates to 1 over the sphere.
pub fn ks_density(v: &BlochVector, lam: &[f64; 3]) -> f64 {
    let dot = v.x * lam[0] + v.y * lam[1] + v.z * lam[2];
    dot.max(0.0) * std::f64::consts::FRAC_1_PI
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Monte Carlo estimate of `∫ min_k μ(λ|v_k) dλ` for pure qubit states.
pub fn ks_overlap_pure(states: &[PureState], sample: &SphereSample) -> Result<OverlapEstimate> {
    if states.is_empty() {
        return Err(Error::Structural("empty state list".into()));
    }
    let vs: Vec<BlochVector> = states
        .iter()
        .map(|s| {
            check_dims(2, s.dim())?;
            bloch_from_qubit(s)
        })
        .collect::<Result<_>>()?;
    integrate_min(sample, |lam| {
        vs.iter()
            .map(|v| ks_density(v, lam))
            .fold(f64::INFINITY, f64::min)
    })
}

/// Closed-form pairwise overlap of the model: `1 − √(1 − |⟨a|b⟩|²)`,
/// i.e. `1 − sin(θ/2)` at Bloch angle θ. The model is maximally epistemic
/// on pure pairs, so this equals the pair's common quantum overlap; the
/// Monte Carlo estimator reproduces it within sampling error.
pub fn ks_overlap_pair_closed(a: &PureState, b: &PureState) -> Result<f64> {
    check_dims(2, a.dim())?;
    check_dims(2, b.dim())?;
    crate::antidist::pair_overlap_pure(a, b)
}

/// Monte Carlo estimate of the common overlap of the epistemic states of
/// mixed preparations, `∫ min_k (1/β_k) Σ_i α_{i|k} μ(λ|ψ_{i|k}) dλ`.
pub fn ks_overlap_mixed(
    preps: &[MixedPreparation],
    sample: &SphereSample,
) -> Result<OverlapEstimate> {
    if preps.is_empty() {
        return Err(Error::Structural("empty preparation list".into()));
    }
    let mut terms: Vec<Vec<(f64, BlochVector)>> = Vec::with_capacity(preps.len());
    for p in preps {
        check_dims(2, p.dim())?;
        let mut list = Vec::new();
        for (psi, &a) in p.pures().iter().zip(p.alphas()) {
            if a > 0 {
                list.push((a as f64 / p.beta() as f64, bloch_from_qubit(psi)?));
            }
        }
        terms.push(list);
    }
    integrate_min(sample, |lam| {
        terms
            .iter()
            .map(|list| {
                list.iter()
                    .map(|(w, v)| w * ks_density(v, lam))
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    })
}

fn integrate_min<F: Fn(&[f64; 3]) -> f64>(
    sample: &SphereSample,
    f: F,
) -> Result<OverlapEstimate> {
    let n = sample.len();
    if n < 1000 {
        return Err(Error::Range(format!(
            "need at least 1000 sample points, got {n}"
        )));
    }
    // fixed-chunk two-pass accumulation keeps the reduction deterministic
    let mut chunk_sums = Vec::with_capacity(n / CHUNK + 1);
    for chunk in sample.points().chunks(CHUNK) {
        chunk_sums.push(chunk.iter().map(&f).sum::<f64>());
    }
    let mean = chunk_sums.iter().sum::<f64>() / n as f64;
    let mut chunk_vars = Vec::with_capacity(chunk_sums.len());
    for chunk in sample.points().chunks(CHUNK) {
        chunk_vars.push(chunk.iter().map(|p| (f(p) - mean).powi(2)).sum::<f64>());
    }
    let var = chunk_vars.iter().sum::<f64>() / (n as f64 - 1.0);
    Ok(OverlapEstimate {
        estimate: FOUR_PI * mean,
        std_error: FOUR_PI * (var / n as f64).sqrt(),
    })
}

/// Overlap of the maximally mixed preparations of two orthonormal qubit
/// bases in the model, as a function of the moduli `|c1|, |c1′|` of the
/// change-of-basis amplitudes:
/// `2 − ½(√(1−|c1|²) + |c1| + √(1−|c1′|²) + |c1′|)`.
pub fn ks_basis_pair_overlap(c1_abs: f64, c1p_abs: f64) -> f64 {
    let term = |c: f64| {
        let c = c.clamp(0.0, 1.0);
        (1.0 - c * c).max(0.0).sqrt() + c
    };
    2.0 - 0.5 * (term(c1_abs) + term(c1p_abs))
}

/// Grid minimization of [`ks_basis_pair_overlap`] over `[0,1]²` with the
/// given step. The function is separable, so each coordinate is minimized
/// independently; returns `(minimum, c1, c1′)`.
pub fn ks_basis_pair_overlap_min(step: f64) -> Result<(f64, f64, f64)> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::Range(format!("grid step {step} outside (0, 0.5]")));
    }
    let n = (1.0 / step).ceil() as usize;
    let mut best_c = 0.0;
    let mut best = f64::INFINITY;
    for i in 0..=n {
        let c = (i as f64 * step).min(1.0);
        // per-coordinate contribution 1 − ½(√(1−c²) + c)
        let v = 1.0 - 0.5 * ((1.0 - c * c).max(0.0).sqrt() + c);
        if v < best {
            best = v;
            best_c = c;
        }
    }
    Ok((ks_basis_pair_overlap(best_c, best_c), best_c, best_c))
}

/// Whether the largest pairwise Bloch angle is below π (strictly, slack
/// 1e-9).
///
/// For two states this is exactly when the model's common overlap is
/// positive. For three or more it is necessary but not sufficient: the
/// common support `{λ : v_i·λ > 0 ∀i}` is nonempty only when the Bloch
/// vectors fit in one open hemisphere, which coplanar sets like the trine
/// fail even though every pairwise angle stays below π.
pub fn hemisphere_positivity(states: &[PureState]) -> Result<bool> {
    if states.is_empty() {
        return Err(Error::Structural("empty state list".into()));
    }
    let vs: Vec<BlochVector> = states
        .iter()
        .map(|s| {
            check_dims(2, s.dim())?;
            bloch_from_qubit(s)
        })
        .collect::<Result<_>>()?;
    let mut theta_max = 0.0f64;
    for i in 0..vs.len() {
        for j in (i + 1)..vs.len() {
            theta_max = theta_max.max(vs[i].angle_to(&vs[j]));
        }
    }
    Ok(theta_max < std::f64::consts::PI - TOL.geometry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::test_states::*;

    fn sample(seed: u64, n: usize) -> SphereSample {
        SphereSample::generate(seed, n, SampleScheme::Stratified).unwrap()
    }

    #[test]
    fn sample_points_are_unit_and_deterministic() {
        for scheme in [SampleScheme::UniformRandom, SampleScheme::Stratified] {
            let a = SphereSample::generate(7, 40_000, scheme).unwrap();
            let b = SphereSample::generate(7, 40_000, scheme).unwrap();
            assert_eq!(a.points(), b.points());
            for p in a.points() {
                let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                assert!((n - 1.0).abs() < 1e-12);
            }
            let c = SphereSample::generate(8, 40_000, scheme).unwrap();
            assert_ne!(a.points()[0], c.points()[0]);
        }
    }

    #[test]
    fn density_pointwise_values() {
        let v = BlochVector::raw(0.0, 0.0, 1.0);
        let pi = std::f64::consts::PI;
        assert!((ks_density(&v, &[0.0, 0.0, 1.0]) - 1.0 / pi).abs() < 1e-15);
        assert_eq!(ks_density(&v, &[1.0, 0.0, 0.0]), 0.0);
        assert_eq!(ks_density(&v, &[0.0, 0.0, -1.0]), 0.0);
        let half = [3.0f64.sqrt() / 2.0, 0.0, 0.5];
        assert!((ks_density(&v, &half) - 0.5 / pi).abs() < 1e-15);
    }

    #[test]
    fn density_normalizes_over_the_sphere() {
        let mut r = rng(51);
        let s = sample(91, 200_000);
        for _ in 0..20 {
            let psi = random_pure(&mut r, 2);
            let v = crate::quantum::bloch::bloch_from_qubit(&psi).unwrap();
            let mut acc = 0.0;
            for p in s.points() {
                acc += ks_density(&v, p);
            }
            let est = acc / s.len() as f64 * 4.0 * std::f64::consts::PI;
            // same integrand variance as the overlap estimators
            assert!((est - 1.0).abs() < 0.01, "normalization {est}");
        }
    }

    #[test]
    fn pure_pair_monte_carlo_matches_closed_form() {
        let s = sample(17, 200_000);
        let mut r = rng(52);
        for _ in 0..25 {
            let a = random_pure(&mut r, 2);
            let b = random_pure(&mut r, 2);
            let mc = ks_overlap_pure(&[a.clone(), b.clone()], &s).unwrap();
            let closed = ks_overlap_pair_closed(&a, &b).unwrap();
            assert!(
                (mc.estimate - closed).abs() <= 3.0 * mc.std_error,
                "mc {} ± {} vs closed {closed}",
                mc.estimate,
                mc.std_error
            );
        }
    }

    #[test]
    fn pure_pair_extremes() {
        let s = sample(18, 100_000);
        let same = ks_overlap_pure(&[ket0(), ket0()], &s).unwrap();
        assert!((same.estimate - 1.0).abs() <= 3.0 * same.std_error);
        let orth = ks_overlap_pure(&[ket0(), ket1()], &s).unwrap();
        assert_eq!(orth.estimate, 0.0, "disjoint supports integrate to exactly zero");
        let mub = ks_overlap_pure(&[ket0(), plus()], &s).unwrap();
        let expect = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
        assert!((mub.estimate - expect).abs() <= 3.0 * mub.std_error);
    }

    #[test]
    fn closed_form_values() {
        assert!((ks_overlap_pair_closed(&ket0(), &ket0()).unwrap() - 1.0).abs() < 1e-14);
        assert!(ks_overlap_pair_closed(&ket0(), &ket1()).unwrap().abs() < 1e-14);
        let t = zx_state(2.0 * std::f64::consts::FRAC_PI_3);
        let expect = 1.0 - 3.0f64.sqrt() / 2.0;
        assert!((ks_overlap_pair_closed(&ket0(), &t).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn mixed_overlap_examples() {
        let s = sample(19, 400_000);
        let z_basis = MixedPreparation::uniform(vec![ket0(), ket1()]).unwrap();
        let x_basis = MixedPreparation::uniform(vec![plus(), minus()]).unwrap();
        let same = ks_overlap_mixed(&[z_basis.clone(), z_basis.clone()], &s).unwrap();
        assert!((same.estimate - 1.0).abs() <= 3.0 * same.std_error);
        let zx = ks_overlap_mixed(&[z_basis, x_basis], &s).unwrap();
        let expect = 2.0 - 2.0f64.sqrt();
        assert!(
            (zx.estimate - expect).abs() <= 3.0 * zx.std_error,
            "zx {} ± {} vs {expect}",
            zx.estimate,
            zx.std_error
        );
    }

    #[test]
    fn benchmark_triple_overlap_vanishes_in_the_model() {
        // the model attains the zero bound for this set: wherever the first
        // two densities are both positive (z·λ > 0 and x·λ > 0), the third
        // preparation's density ½[(−z·λ)₊ + (−x·λ)₊] is zero
        let s = sample(20, 400_000);
        let preps = [
            MixedPreparation::pure(ket0()),
            MixedPreparation::pure(plus()),
            MixedPreparation::new(vec![ket1(), minus()], vec![1, 1], 2).unwrap(),
        ];
        let est = ks_overlap_mixed(&preps, &s).unwrap();
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn orthogonal_decomposition_identity() {
        // two maximally mixed basis preparations: the mixed overlap equals
        // ½ Σ_{i,j} of the pairwise closed forms
        let s = sample(21, 400_000);
        let mut r = rng(53);
        for _ in 0..5 {
            let a = random_pure(&mut r, 2);
            let b = random_pure(&mut r, 2);
            let basis1 = vec![a.clone(), crate::geometry::orthogonal_qubit(&a)];
            let basis2 = vec![b.clone(), crate::geometry::orthogonal_qubit(&b)];
            let mut rhs = 0.0;
            for x in &basis1 {
                for y in &basis2 {
                    rhs += ks_overlap_pair_closed(x, y).unwrap();
                }
            }
            rhs *= 0.5;
            let preps = [
                MixedPreparation::uniform(basis1).unwrap(),
                MixedPreparation::uniform(basis2).unwrap(),
            ];
            let mc = ks_overlap_mixed(&preps, &s).unwrap();
            assert!(
                (mc.estimate - rhs).abs() <= 3.0 * mc.std_error,
                "mc {} ± {} vs identity {rhs}",
                mc.estimate,
                mc.std_error
            );
        }
    }

    #[test]
    fn maximally_mixed_sets_have_positive_overlap() {
        let s = sample(22, 200_000);
        let mut r = rng(54);
        for _ in 0..5 {
            let mut preps = Vec::new();
            for _ in 0..3 {
                let a = random_pure(&mut r, 2);
                preps.push(
                    MixedPreparation::uniform(vec![a.clone(), crate::geometry::orthogonal_qubit(&a)]).unwrap(),
                );
            }
            let est = ks_overlap_mixed(&preps, &s).unwrap();
            assert!(est.estimate > 3.0 * est.std_error);
        }
    }

    #[test]
    fn basis_pair_overlap_values() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ks_basis_pair_overlap(r, r) - (2.0 - 2.0f64.sqrt())).abs() < 1e-14);
        assert!((ks_basis_pair_overlap(0.0, 0.0) - 1.0).abs() < 1e-14);
        assert!((ks_basis_pair_overlap(1.0, 0.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn basis_pair_minimum_on_grid() {
        let (min, c1, c1p) = ks_basis_pair_overlap_min(1e-4).unwrap();
        assert!((min - (2.0 - 2.0f64.sqrt())).abs() < 1e-6);
        assert!((c1 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
        assert_eq!(c1, c1p);
        assert!(ks_basis_pair_overlap_min(0.0).is_err());
    }

    #[test]
    fn hemisphere_positivity_examples() {
        assert!(hemisphere_positivity(&[ket0(), plus()]).unwrap());
        assert!(!hemisphere_positivity(&[ket0(), ket1()]).unwrap());
        let trine = [
            zx_state(0.0),
            zx_state(2.0 * std::f64::consts::PI / 3.0),
            zx_state(4.0 * std::f64::consts::PI / 3.0),
        ];
        assert!(hemisphere_positivity(&trine).unwrap());
        // the angle predicate does not imply positivity here: the trine
        // positively spans its plane, so no direction sees all three
        // vectors and the common support is empty
        let s = sample(23, 200_000);
        let est = ks_overlap_pure(&trine, &s).unwrap();
        assert_eq!(est.estimate, 0.0);
    }

    #[test]
    fn positivity_on_hemisphere_witnessed_sets() {
        // sets whose Bloch vectors share an open hemisphere with a clear
        // margin have nonempty common support and a positive overlap; they
        // also always pass the angle predicate
        let s = sample(24, 200_000);
        let mut r = rng(55);
        let mut done = 0;
        while done < 10 {
            let states: Vec<PureState> = (0..3).map(|_| random_pure(&mut r, 2)).collect();
            let vs: Vec<BlochVector> = states
                .iter()
                .map(|st| crate::quantum::bloch::bloch_from_qubit(st).unwrap())
                .collect();
            let witness = crate::geometry::hemisphere_witness(&vs).unwrap();
            let margin = witness
                .map(|w| vs.iter().map(|v| w.dot(v)).fold(f64::INFINITY, f64::min))
                .unwrap_or(-1.0);
            if margin < 0.2 {
                continue;
            }
            done += 1;
            assert!(hemisphere_positivity(&states).unwrap());
            let est = ks_overlap_pure(&states, &s).unwrap();
            assert!(est.estimate > 3.0 * est.std_error, "{est:?} at margin {margin}");
        }
    }

    #[test]
    fn decomposition_bound_dominates_model_overlap() {
        // the decomposition bound evaluated with the model's own pairwise
        // overlaps upper-bounds the model's mixed overlap
        let s = sample(25, 200_000);
        let mut r = rng(56);
        for _ in 0..6 {
            let preps = [
                MixedPreparation::new(
                    vec![random_pure(&mut r, 2), random_pure(&mut r, 2)],
                    vec![1, 2],
                    3,
                )
                .unwrap(),
                MixedPreparation::new(
                    vec![random_pure(&mut r, 2), random_pure(&mut r, 2)],
                    vec![1, 1],
                    2,
                )
                .unwrap(),
            ];
            let bound = crate::criteria::decomposition_bound(&preps, |t| {
                ks_overlap_pair_closed(t[0], t[1])
            })
            .unwrap();
            let mc = ks_overlap_mixed(&preps, &s).unwrap();
            assert!(
                bound >= mc.estimate - 3.0 * mc.std_error,
                "bound {bound} vs model {mc:?}"
            );
        }
    }
}
