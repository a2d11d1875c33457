//! Sufficient criteria for perfect anti-distinguishability, the convex
//! decomposition bound on the common epistemic overlap, closed-form ratio
//! bounds, and the preparation-contextuality witness.

use crate::antidist::{antidist_sdp_with, SdpOptions};
use crate::error::{Error, Result};
use crate::quantum::{
    check_dims, distinguishability, overlap_abs, DensityMatrix, MixedPreparation, Povm, PureState,
};
use crate::tol::TOL;
use crate::{C64, CMatrix};

/// Outcome of the min-sum inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinSumCheck {
    /// `min_k Σ_i a_{i|k}`.
    pub lhs: f64,
    /// `Σ over tuples of min_k a_{i_k|k}`.
    pub rhs: f64,
    /// `lhs ≤ rhs` within 1e-12.
    pub holds: bool,
}

/// Checks `min_k (Σ_i a_{i|k}) ≤ Σ_{i_1..i_n} min_k a_{i_k|k}` for `n`
/// lists of non-negative reals. Ragged inputs are padded with zeros, which
/// leaves both sides unchanged.
pub fn min_sum_inequality(sets: &[Vec<f64>]) -> Result<MinSumCheck> {
    if sets.is_empty() {
        return Err(Error::Structural("need at least one set".into()));
    }
    for (k, set) in sets.iter().enumerate() {
        if set.iter().any(|a| *a < 0.0 || !a.is_finite()) {
            return Err(Error::Range(format!("set {k} contains a negative or non-finite entry")));
        }
    }
    let r = sets.iter().map(Vec::len).max().unwrap_or(0);
    if r == 0 {
        return Err(Error::Structural("all sets empty".into()));
    }
    let padded: Vec<Vec<f64>> = sets
        .iter()
        .map(|s| {
            let mut p = s.clone();
            p.resize(r, 0.0);
            p
        })
        .collect();
    let lhs = padded
        .iter()
        .map(|s| s.iter().sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let n = padded.len();
    let mut rhs = 0.0;
    let mut idx = vec![0usize; n];
    loop {
        let m = idx
            .iter()
            .enumerate()
            .map(|(k, &i)| padded[k][i])
            .fold(f64::INFINITY, f64::min);
        rhs += m;
        // odometer over the n-fold tuple index
        let mut pos = n;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < r {
                break;
            }
            idx[pos] = 0;
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX {
            break;
        }
    }
    let holds = lhs <= rhs + 1e-12;
    debug_assert!(lhs > 1e-15 || rhs <= 1e-12 * (r as f64).powi(n as i32));
    Ok(MinSumCheck { lhs, rhs, holds })
}

/// Upper bound on the common epistemic overlap of `n` preparations from
/// any per-tuple overlap bound on their pure decompositions:
///
/// ```text
/// lcm(β)^(n−1) / Π β_k  ×  Σ_tuples (Π_k α_{i_k|k}) · tuple_overlap(ψ_{i_1|1}, …)
/// ```
///
/// Tuples with zero weight are skipped. With `tuple_overlap` returning the
/// common quantum overlap of the pure tuple this is an upper bound valid
/// in every ontological model.
pub fn decomposition_bound<F>(preps: &[MixedPreparation], mut tuple_overlap: F) -> Result<f64>
where
    F: FnMut(&[&PureState]) -> Result<f64>,
{
    if preps.len() < 2 {
        return Err(Error::Structural(format!(
            "need at least 2 preparations, got {}",
            preps.len()
        )));
    }
    let d = preps[0].dim();
    for p in preps {
        check_dims(d, p.dim())?;
    }
    let n = preps.len();
    let l = lcm_all(preps.iter().map(MixedPreparation::beta))?;
    // lcm^(n−1) / Π β_k = Π (lcm / β_k) / lcm, with every factor integral
    let mut prefactor = 1.0 / l as f64;
    for p in preps {
        prefactor *= (l / p.beta() as u128) as f64;
    }
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<&PureState> = Vec::with_capacity(n);
    loop {
        let mut weight = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            weight *= preps[k].alphas()[i] as f64;
        }
        if weight > 0.0 {
            tuple.clear();
            for (k, &i) in idx.iter().enumerate() {
                tuple.push(&preps[k].pures()[i]);
            }
            total += weight * tuple_overlap(&tuple)?;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < preps[pos].pures().len() {
                break;
            }
            idx[pos] = 0;
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX {
            break;
        }
    }
    Ok(prefactor * total)
}

fn lcm_all(betas: impl Iterator<Item = u64>) -> Result<u128> {
    let mut l: u128 = 1;
    for b in betas {
        let b = b as u128;
        let g = gcd(l, b);
        l = l
            .checked_mul(b / g)
            .ok_or_else(|| Error::Range("lcm of the denominators overflows".into()))?;
    }
    Ok(l)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pairwise-overlap sufficient criterion for perfect
/// anti-distinguishability of `N ≥ 3` pure states:
/// every `|⟨φ_i|φ_j⟩| ≤ (1/√2) √((N−2)/(N−1))`.
pub fn johnston_criterion(states: &[PureState]) -> Result<bool> {
    let n = states.len();
    if n < 3 {
        return Err(Error::Structural(format!("criterion needs N >= 3 states, got {n}")));
    }
    let d = states[0].dim();
    for s in states {
        check_dims(d, s.dim())?;
    }
    let threshold =
        std::f64::consts::FRAC_1_SQRT_2 * ((n as f64 - 2.0) / (n as f64 - 1.0)).sqrt();
    for i in 0..n {
        for j in (i + 1)..n {
            if overlap_abs(&states[i], &states[j])? > threshold + TOL.strict_ineq {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Squared-overlap sufficient criterion for a projective measurement
/// perfectly anti-distinguishing a pure triple:
/// `x1+x2+x3 < 1` (strict) and `(x1+x2+x3−1)² ≥ 4 x1 x2 x3` (closed).
pub fn caves_criterion(x1: f64, x2: f64, x3: f64) -> Result<bool> {
    for x in [x1, x2, x3] {
        if !(-1e-9..=1.0 + 1e-9).contains(&x) {
            return Err(Error::Range(format!("squared overlap {x} outside [0, 1]")));
        }
    }
    let (x1, x2, x3) = (x1.clamp(0.0, 1.0), x2.clamp(0.0, 1.0), x3.clamp(0.0, 1.0));
    let s = x1 + x2 + x3;
    Ok(s < 1.0 - TOL.strict_ineq && (s - 1.0).powi(2) >= 4.0 * x1 * x2 * x3 - TOL.strict_ineq)
}

/// `d − √(d(d−1))`: overlap bound for two maximally mixed preparations
/// built from a pair of mutually unbiased bases in dimension `d`.
pub fn mub_pair_bound(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::Range(format!("need d >= 2, got {d}")));
    }
    let df = d as f64;
    Ok(df - (df * (df - 1.0)).sqrt())
}

/// Bound on `Σ_k ω_E(ρ0, ρ_k)` for uniform rank-d preparations:
/// `1 + (3/2d) Σ (1 − A_Q)` over all triples `(ψ_j, φ, φ′)` with `ψ_j`
/// from `rho0` and `φ ≠ φ′` drawn (ordered) from the pure states of the
/// other preparations. Each `1 − A_Q` term is resolved by the Caves or
/// Johnston fast path when it certifies zero, otherwise by the SDP.
pub fn overlap_sum_bound(rho0: &MixedPreparation, rhos: &[MixedPreparation]) -> Result<f64> {
    let d = rho0.dim();
    for p in std::iter::once(rho0).chain(rhos) {
        check_dims(d, p.dim())?;
        if p.pures().len() != d || p.beta() != d as u64 || p.alphas().iter().any(|a| *a != 1) {
            return Err(Error::Domain(
                "bound requires uniform preparations of exactly d pure states".into(),
            ));
        }
    }
    if rhos.is_empty() {
        return Err(Error::Structural("need at least one preparation besides rho0".into()));
    }
    let others: Vec<&PureState> = rhos.iter().flat_map(|p| p.pures().iter()).collect();
    let mut sum = 0.0;
    for psi in rho0.pures() {
        for (u, phi) in others.iter().enumerate() {
            for (v, phip) in others.iter().enumerate() {
                if u == v {
                    continue;
                }
                sum += triple_overlap_deficit(psi, phi, phip)?;
            }
        }
    }
    Ok(1.0 + 1.5 / d as f64 * sum)
}

/// `1 − A_Q` of a pure triple: exactly zero when a fast path certifies
/// perfect anti-distinguishability, else `primal/3` from the SDP.
fn triple_overlap_deficit(a: &PureState, b: &PureState, c: &PureState) -> Result<f64> {
    let x1 = overlap_abs(a, b)?.powi(2);
    let x2 = overlap_abs(a, c)?.powi(2);
    let x3 = overlap_abs(b, c)?.powi(2);
    if caves_criterion(x1, x2, x3)? {
        return Ok(0.0);
    }
    if johnston_criterion(&[a.clone(), b.clone(), c.clone()])? {
        return Ok(0.0);
    }
    let states = [a.density(), b.density(), c.density()];
    match antidist_sdp_with(&states, &SdpOptions::default()) {
        Ok(res) => Ok(res.primal_value / 3.0),
        // the best feasible value still upper-bounds 1 − A_Q
        Err(Error::Convergence { primal, .. }) => Ok(primal / 3.0),
        Err(e) => Err(e),
    }
}

/// `1/d`: bound on the average epistemic-to-quantum overlap ratio over the
/// maximally mixed preparations of a full family of d+1 mutually unbiased
/// bases (`d` prime or 4, `d ≥ 4`).
pub fn mub_family_ratio_bound(d: usize) -> Result<f64> {
    check_prime_power_dim(d)?;
    Ok(1.0 / d as f64)
}

/// `8 d^{1/(d−2)} / n^{(d−3)/(d−2)}`: bound on the average overlap ratio
/// for the `nd+1`-state construction in dimension `d ≥ 4`.
pub fn asymptotic_ratio_bound(n: usize, d: usize) -> Result<f64> {
    if d < 4 {
        return Err(Error::Range(format!("need d >= 4, got {d}")));
    }
    if n < 1 {
        return Err(Error::Range("need n >= 1".into()));
    }
    let df = d as f64;
    let nf = n as f64;
    Ok(8.0 * df.powf(1.0 / (df - 2.0)) / nf.powf((df - 3.0) / (df - 2.0)))
}

/// `2/d`: certified bound on the epistemic-to-quantum overlap ratio of the
/// unbiased pure pair extracted from the maximally mixed MUB family.
/// Evaluated for any `d ≥ 4`; the constructive route in this crate covers
/// prime `d` and `d = 4`.
pub fn pure_pair_ratio_bound(d: usize) -> Result<f64> {
    if d < 4 {
        return Err(Error::Range(format!("need d >= 4, got {d}")));
    }
    Ok(2.0 / d as f64)
}

fn check_prime_power_dim(d: usize) -> Result<()> {
    let prime = d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k));
    if d < 4 || !(d == 4 || prime) {
        return Err(Error::Range(format!(
            "bound needs d >= 4 with d prime or d = 4, got {d}"
        )));
    }
    Ok(())
}

/// Result of the contextuality witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SWitness {
    /// Average success probability `S` of decoding the addressed bit.
    pub s: f64,
    /// `min(1, 2(1−S)/(1−D_Q(ρ0, ρ1)))`, an upper bound on the
    /// epistemic-to-quantum overlap ratio of the two parity mixtures.
    pub ratio_bound: f64,
}

/// Evaluates the witness `S = (1/8) Σ_{x0x1,y} p(x_y | ψ_{x0x1}, M_y)` for
/// four preparations indexed `x0x1 ∈ {00, 01, 10, 11}` and two binary
/// measurements, together with the ratio bound it implies for the parity
/// mixtures `ρ0 = ½(ρ00 + ρ11)`, `ρ1 = ½(ρ01 + ρ10)`.
///
/// Errors when `D_Q(ρ0, ρ1) ≥ 1 − 1e-9`: distinguishable mixtures leave
/// the ratio undefined.
pub fn s_witness(states: &[DensityMatrix; 4], measurements: &[Povm; 2]) -> Result<SWitness> {
    let d = states[0].dim();
    for s in states.iter() {
        check_dims(d, s.dim())?;
    }
    for m in measurements.iter() {
        check_dims(d, m.dim())?;
        if m.len() != 2 {
            return Err(Error::Structural(format!(
                "measurements must be binary, got {} outcomes",
                m.len()
            )));
        }
    }
    let mut total = 0.0;
    for (idx, rho) in states.iter().enumerate() {
        let bits = [idx >> 1, idx & 1]; // states ordered 00, 01, 10, 11
        for (y, m) in measurements.iter().enumerate() {
            total += m.outcome_probability(bits[y], rho)?;
        }
    }
    let s = total / 8.0;

    let half = C64::new(0.5, 0.0);
    let rho0 = DensityMatrix::new(states[0].matrix() * half + states[3].matrix() * half)?;
    let rho1 = DensityMatrix::new(states[1].matrix() * half + states[2].matrix() * half)?;
    let dq = distinguishability(&rho0, &rho1)?;
    if dq >= 1.0 - TOL.geometry {
        return Err(Error::Domain(
            "parity mixtures are perfectly distinguishable; the ratio bound is undefined".into(),
        ));
    }
    let ratio_bound = (2.0 * (1.0 - s) / (1.0 - dq)).min(1.0);
    Ok(SWitness { s, ratio_bound })
}

/// Whether `|⟨ψ|φ⟩|² > (d−1)/d` (strict): above this threshold an
/// epistemic model covering the pair exists, so no fully non-epistemic
/// certificate containing it is possible.
pub fn lewis_threshold(psi: &PureState, phi: &PureState, d: usize) -> Result<bool> {
    check_dims(d, psi.dim())?;
    check_dims(d, phi.dim())?;
    let ov2 = overlap_abs(psi, phi)?.powi(2);
    Ok(ov2 > (d as f64 - 1.0) / d as f64 + TOL.strict_ineq)
}

/// The qubit configuration maximizing the witness: states at Bloch
/// `(±1, 0, ±1)/√2` on the z-x circle, measurements along z and x.
/// Achieves `S = ½(1 + 1/√2)` with both parity mixtures maximally mixed.
pub fn parity_oblivious_qubit_config() -> Result<([DensityMatrix; 4], [Povm; 2])> {
    use crate::quantum::bloch::{qubit_from_bloch, BlochVector};
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut states = Vec::with_capacity(4);
    for bits in 0..4u8 {
        let sz = if bits & 0b10 == 0 { 1.0 } else { -1.0 };
        let sx = if bits & 0b01 == 0 { 1.0 } else { -1.0 };
        let v = BlochVector::new(sx * r, 0.0, sz * r)?;
        states.push(qubit_from_bloch(&v)?.density());
    }
    let projector_pair = |psi: PureState| -> Result<Povm> {
        let up = psi.projector();
        let down = CMatrix::identity(2, 2) - &up;
        Povm::new(vec![up, down])
    };
    let m_z = projector_pair(PureState::basis_state(2, 0)?)?;
    let m_x = projector_pair(PureState::normalized(vec![
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
    ])?)?;
    let states: [DensityMatrix; 4] = states.try_into().expect("four states built");
    Ok((states, [m_z, m_x]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antidist::{is_perfectly_antidist, pair_overlap_pure};
    use crate::quantum::mub::mub_bases;
    use crate::quantum::test_states::*;
    use rand::Rng as _;

    #[test]
    fn min_sum_small_cases() {
        let c = min_sum_inequality(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(c.lhs, 1.0);
        assert_eq!(c.rhs, 1.0);
        assert!(c.holds);

        let c = min_sum_inequality(&[vec![1.0; 2], vec![1.0; 2], vec![1.0; 2]]).unwrap();
        assert_eq!(c.lhs, 2.0);
        assert_eq!(c.rhs, 8.0);
        assert!(c.holds);

        // an all-zero set forces both sides to zero
        let c = min_sum_inequality(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert_eq!(c.rhs, 0.0);

        // ragged input is padded with zeros
        let c = min_sum_inequality(&[vec![2.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(c.lhs, 2.0);
        assert!(c.holds);

        assert!(min_sum_inequality(&[vec![1.0, -0.5]]).is_err());
    }

    /// Independent recursive oracle for the tuple sum.
    fn rhs_recursive(sets: &[Vec<f64>]) -> f64 {
        fn rec(sets: &[Vec<f64>], k: usize, cur_min: f64) -> f64 {
            if k == sets.len() {
                return cur_min;
            }
            sets[k].iter().map(|a| rec(sets, k + 1, cur_min.min(*a))).sum()
        }
        rec(sets, 0, f64::INFINITY)
    }

    #[test]
    fn min_sum_random_instances_match_recursive_oracle() {
        let mut r = rng(41);
        for _ in 0..500 {
            let n = r.random_range(1..=4);
            let len = r.random_range(1..=5);
            let sets: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..len).map(|_| r.random_range(0.0..10.0)).collect())
                .collect();
            let c = min_sum_inequality(&sets).unwrap();
            assert!((c.rhs - rhs_recursive(&sets)).abs() < 1e-9);
            assert!(c.holds);
        }
    }

    #[test]
    fn decomposition_bound_same_pure_state() {
        let preps = vec![
            MixedPreparation::pure(ket0()),
            MixedPreparation::pure(ket0()),
        ];
        let b = decomposition_bound(&preps, |t| pair_overlap_pure(t[0], t[1])).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decomposition_bound_prefactor_maximally_mixed() {
        // all β_k = d, α = 1: prefactor is 1/d, so a constant overlap of 1
        // over the d^n tuples gives d^(n−1)
        for (d, n) in [(2usize, 2usize), (3, 3)] {
            let basis: Vec<PureState> =
                (0..d).map(|k| PureState::basis_state(d, k).unwrap()).collect();
            let preps: Vec<MixedPreparation> =
                (0..n).map(|_| MixedPreparation::uniform(basis.clone()).unwrap()).collect();
            let b = decomposition_bound(&preps, |_| Ok(1.0)).unwrap();
            assert!((b - (d as f64).powi(n as i32 - 1)).abs() < 1e-9);
        }
    }

    #[test]
    fn decomposition_bound_benchmark_triple_is_zero() {
        let preps = vec![
            MixedPreparation::pure(ket0()),
            MixedPreparation::pure(plus()),
            MixedPreparation::new(vec![ket1(), minus()], vec![1, 1], 2).unwrap(),
        ];
        let b = decomposition_bound(&preps, |t| {
            let dens: Vec<_> = t.iter().map(|p| p.density()).collect();
            if is_perfectly_antidist(&dens, TOL.antidist_decision)? {
                Ok(0.0)
            } else {
                Ok(1.0)
            }
        })
        .unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn johnston_examples() {
        // orthogonal states pass trivially
        let basis: Vec<PureState> =
            (0..4).map(|k| PureState::basis_state(4, k).unwrap()).collect();
        assert!(johnston_criterion(&basis).unwrap());
        // threshold for N = 3 is 1/2; an overlap of 0.8 fails
        let tilted = PureState::normalized(vec![
            C64::new(0.8, 0.0),
            C64::new(0.6, 0.0),
        ])
        .unwrap();
        assert!(!johnston_criterion(&[ket0(), tilted, ket1()]).unwrap());
        // one state from each of 4 MUBs in d = 3: overlaps 1/√3 = threshold
        let bases = mub_bases(3, 4).unwrap();
        let tuple: Vec<PureState> = bases.iter().map(|b| b[0].clone()).collect();
        assert!(johnston_criterion(&tuple).unwrap());
        assert!(johnston_criterion(&[ket0(), ket1()]).is_err());
    }

    #[test]
    fn caves_examples() {
        assert!(caves_criterion(0.25, 0.25, 0.25).unwrap()); // tight second inequality
        assert!(!caves_criterion(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap()); // sum = 1
        assert!(caves_criterion(0.0, 0.0, 0.0).unwrap());
        assert!(caves_criterion(1.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn fast_paths_sound_against_sdp() {
        let mut r = rng(42);
        let mut checked = 0;
        while checked < 30 {
            let d = 3 + checked % 2;
            let states: Vec<PureState> = (0..3).map(|_| random_pure(&mut r, d)).collect();
            let x1 = overlap_abs(&states[0], &states[1]).unwrap().powi(2);
            let x2 = overlap_abs(&states[0], &states[2]).unwrap().powi(2);
            let x3 = overlap_abs(&states[1], &states[2]).unwrap().powi(2);
            let fast = caves_criterion(x1, x2, x3).unwrap()
                || johnston_criterion(&states).unwrap();
            if !fast {
                continue;
            }
            checked += 1;
            let dens: Vec<_> = states.iter().map(|s| s.density()).collect();
            let res = antidist_sdp_with(&dens, &SdpOptions::default()).unwrap();
            assert!(res.a_q >= 1.0 - 1e-6, "fast path unsound: a_q = {}", res.a_q);
        }
    }

    #[test]
    fn mub_pair_bound_values() {
        assert!((mub_pair_bound(2).unwrap() - (2.0 - 2.0f64.sqrt())).abs() < 1e-15);
        assert!((mub_pair_bound(3).unwrap() - (3.0 - 6.0f64.sqrt())).abs() < 1e-15);
        // decreasing towards 1/2
        let mut prev = mub_pair_bound(2).unwrap();
        for d in [3, 5, 10, 100, 10_000, 1_000_000] {
            let b = mub_pair_bound(d).unwrap();
            assert!(b < prev && b > 0.5);
            prev = b;
        }
        assert!(mub_pair_bound(1).is_err());
    }

    #[test]
    fn overlap_sum_bound_mub_family_d5() {
        let bases = mub_bases(5, 6).unwrap();
        let mut preps = bases
            .into_iter()
            .map(|b| MixedPreparation::uniform(b).unwrap());
        let rho0 = preps.next().unwrap();
        let rest: Vec<_> = preps.collect();
        let b = overlap_sum_bound(&rho0, &rest).unwrap();
        assert_eq!(b, 1.0, "every triple should be certified by the fast path");
    }

    #[test]
    fn overlap_sum_bound_single_same_basis() {
        let basis: Vec<PureState> =
            (0..5).map(|k| PureState::basis_state(5, k).unwrap()).collect();
        let rho0 = MixedPreparation::uniform(basis.clone()).unwrap();
        let rho1 = MixedPreparation::uniform(basis).unwrap();
        let b = overlap_sum_bound(&rho0, &[rho1]).unwrap();
        assert!(b >= 1.0 - 1e-12, "bound {b} below 1");
    }

    #[test]
    fn overlap_sum_bound_rejects_nonuniform() {
        let prep = MixedPreparation::new(vec![ket0(), ket1()], vec![2, 0], 2).unwrap();
        let rho0 = MixedPreparation::uniform(vec![ket0(), ket1()]).unwrap();
        assert!(matches!(
            overlap_sum_bound(&rho0, &[prep]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ratio_bound_values() {
        assert!((mub_family_ratio_bound(5).unwrap() - 0.2).abs() < 1e-15);
        assert!(mub_family_ratio_bound(3).is_err());
        assert!(mub_family_ratio_bound(6).is_err());

        let b = asymptotic_ratio_bound(1000, 4).unwrap();
        assert!((b - 16.0 / 1000.0f64.sqrt()).abs() < 1e-12);
        // monotone decreasing in n
        let mut prev = f64::INFINITY;
        for n in [1, 10, 100, 1000, 10_000] {
            let b = asymptotic_ratio_bound(n, 5).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(asymptotic_ratio_bound(10, 3).is_err());

        assert!((pure_pair_ratio_bound(4).unwrap() - 0.5).abs() < 1e-15);
        assert!((pure_pair_ratio_bound(100).unwrap() - 0.02).abs() < 1e-15);
        assert!(pure_pair_ratio_bound(2).is_err());
    }

    #[test]
    fn ratio_chain_dominates_direct_expression() {
        // 1/(d²(1−√(1−1/d))) ≤ 2/d over a wide range of d
        for d in 2..=10_000usize {
            let df = d as f64;
            let x = 1.0 / df;
            // stable form of 1 − √(1−x)
            let one_minus_root = x / (1.0 + (1.0 - x).sqrt());
            let direct = 1.0 / (df * df * one_minus_root);
            assert!(direct <= 2.0 / df + 1e-12, "fails at d = {d}");
        }
    }

    #[test]
    fn s_witness_optimal_configuration() {
        let (states, meas) = parity_oblivious_qubit_config().unwrap();
        let w = s_witness(&states, &meas).unwrap();
        let s_expect = 0.5 * (1.0 + std::f64::consts::FRAC_1_SQRT_2);
        assert!((w.s - s_expect).abs() < 1e-12, "S = {}", w.s);
        assert!(
            (w.ratio_bound - (2.0 - 2.0f64.sqrt())).abs() < 1e-12,
            "ratio = {}",
            w.ratio_bound
        );
    }

    #[test]
    fn s_witness_identical_states_is_uninformative() {
        let (_, meas) = parity_oblivious_qubit_config().unwrap();
        let rho = plus().density();
        let states = [rho.clone(), rho.clone(), rho.clone(), rho];
        let w = s_witness(&states, &meas).unwrap();
        assert!((w.s - 0.5).abs() < 1e-12);
        // the raw expression exceeds the trivial ratio bound, so it clamps
        assert_eq!(w.ratio_bound, 1.0);
    }

    #[test]
    fn s_witness_distinguishable_mixtures_rejected() {
        // classical 2-bit encoding: four orthogonal states in d = 4, with
        // measurements reading each bit exactly
        let basis: Vec<PureState> =
            (0..4).map(|k| PureState::basis_state(4, k).unwrap()).collect();
        let states: [DensityMatrix; 4] = [
            basis[0].density(),
            basis[1].density(),
            basis[2].density(),
            basis[3].density(),
        ];
        let read_bit = |bit: usize| -> Povm {
            let mut zero = CMatrix::zeros(4, 4);
            let mut one = CMatrix::zeros(4, 4);
            for (k, b) in basis.iter().enumerate() {
                if (k >> (1 - bit)) & 1 == 0 {
                    zero += b.projector();
                } else {
                    one += b.projector();
                }
            }
            Povm::new(vec![zero, one]).unwrap()
        };
        let meas = [read_bit(0), read_bit(1)];
        // S reaches 1 here, but ρ0 ⊥ ρ1 makes the ratio undefined
        assert!(matches!(
            s_witness(&states, &meas),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn s_witness_ratio_floor_for_maximally_mixed_parities() {
        // random z-x-plane configurations with antipodal pairs keep both
        // parity mixtures maximally mixed; the ratio bound never goes below
        // 2 − √2
        let mut r = rng(43);
        let (_, meas) = parity_oblivious_qubit_config().unwrap();
        for _ in 0..50 {
            let t = r.random_range(0.0..std::f64::consts::TAU);
            let u = r.random_range(0.0..std::f64::consts::TAU);
            let states = [
                zx_state(t).density(),
                zx_state(u).density(),
                zx_state(u + std::f64::consts::PI).density(),
                zx_state(t + std::f64::consts::PI).density(),
            ];
            let w = s_witness(&states, &meas).unwrap();
            assert!(w.ratio_bound >= 2.0 - 2.0f64.sqrt() - 1e-6);
        }
    }

    #[test]
    fn lewis_threshold_examples() {
        assert!(lewis_threshold(&ket0(), &ket0(), 2).unwrap());
        assert!(!lewis_threshold(&ket0(), &plus(), 2).unwrap()); // 1/2 not > 1/2
        assert!(!lewis_threshold(&ket0(), &ket1(), 2).unwrap());
        assert!(lewis_threshold(&ket0(), &PureState::basis_state(3, 0).unwrap(), 3).is_err());
    }
}
