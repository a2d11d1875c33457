//! Mutually unbiased bases for prime dimensions and d = 4.
//!
//! * d = 2: the three Pauli eigenbases.
//! * odd prime d: the computational basis plus d quadratic-phase bases with
//!   components `ω^(j m² + a m)/√d`, `ω = exp(2πi/d)`.
//! * d = 4: a fixed five-basis table with entries in `{±1, ±i}/2`.
//!
//! Other dimensions are not supported.

use super::PureState;
use crate::error::{Error, Result};
use crate::C64;

/// Returns `count` orthonormal bases that are pairwise mutually unbiased.
///
/// Requires `d` prime or `d = 4`, and `count ≤ d + 1`.
pub fn mub_bases(d: usize, count: usize) -> Result<Vec<Vec<PureState>>> {
    if !(d == 4 || is_prime(d)) {
        return Err(Error::Capability(format!(
            "MUB construction supports prime d or d = 4, got d = {d}"
        )));
    }
    if count == 0 || count > d + 1 {
        return Err(Error::Range(format!(
            "count {count} outside 1..={} for d = {d}",
            d + 1
        )));
    }
    let all = if d == 2 {
        pauli_bases()
    } else if d == 4 {
        dim4_bases()
    } else {
        odd_prime_bases(d)
    };
    Ok(all.into_iter().take(count).collect())
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn state(amps: Vec<C64>) -> PureState {
    PureState::normalized(amps).expect("table state is normalizable")
}

fn pauli_bases() -> Vec<Vec<PureState>> {
    let o = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let z = C64::new(0.0, 0.0);
    vec![
        vec![state(vec![o, z]), state(vec![z, o])],
        vec![state(vec![o, o]), state(vec![o, -o])],
        vec![state(vec![o, i]), state(vec![o, -i])],
    ]
}

fn odd_prime_bases(d: usize) -> Vec<Vec<PureState>> {
    let mut bases = Vec::with_capacity(d + 1);
    bases.push(
        (0..d)
            .map(|k| PureState::basis_state(d, k).expect("valid basis index"))
            .collect(),
    );
    let tau = std::f64::consts::TAU / d as f64;
    for j in 0..d {
        let mut basis = Vec::with_capacity(d);
        for a in 0..d {
            let amps = (0..d)
                .map(|m| {
                    let phase = tau * ((j * m * m + a * m) % d) as f64;
                    C64::from_polar(1.0, phase)
                })
                .collect();
            basis.push(state(amps));
        }
        bases.push(basis);
    }
    bases
}

fn dim4_bases() -> Vec<Vec<PureState>> {
    let o = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let rows: [[[C64; 4]; 4]; 4] = [
        [
            [o, o, o, o],
            [o, o, -o, -o],
            [o, -o, -o, o],
            [o, -o, o, -o],
        ],
        [
            [o, -o, -i, -i],
            [o, -o, i, i],
            [o, o, i, -i],
            [o, o, -i, i],
        ],
        [
            [o, -i, -i, -o],
            [o, -i, i, o],
            [o, i, i, -o],
            [o, i, -i, o],
        ],
        [
            [o, -i, -o, -i],
            [o, -i, o, i],
            [o, i, o, -i],
            [o, i, -o, i],
        ],
    ];
    let mut bases = Vec::with_capacity(5);
    bases.push(
        (0..4)
            .map(|k| PureState::basis_state(4, k).expect("valid basis index"))
            .collect(),
    );
    for table in rows {
        bases.push(table.iter().map(|r| state(r.to_vec())).collect());
    }
    bases
}
