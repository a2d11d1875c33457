//! JSON schemas and conversions.
//!
//! Complex numbers are two-element arrays `[re, im]`. A pure state is
//! `{"dim": d, "amplitudes": [[re,im], …]}`; a density matrix is
//! `{"dim": d, "rows": [[[re,im], …], …]}`; a preparation is
//! `{"beta": b, "terms": [{"alpha": a, "state": …}, …]}`; a POVM is
//! `{"effects": [matrix, …]}`.
//!
//! All floating-point output is printed with 12 significant digits, so
//! serialization is byte-deterministic and idempotent under a
//! parse/serialize round trip.

use qoverlap::{C64, CMatrix, DensityMatrix, MixedPreparation, Povm, PureState};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: u64,
    pub state: StateJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PrepJson {
    pub beta: u64,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PovmJson {
    pub effects: Vec<MatrixJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SWitnessConfigJson {
    /// Density matrices for the inputs 00, 01, 10, 11 in that order.
    pub states: Vec<MatrixJson>,
    /// Two binary measurements.
    pub measurements: Vec<PovmJson>,
}

pub fn pure_state(json: &StateJson) -> Result<PureState, String> {
    if json.amplitudes.len() != json.dim {
        return Err(format!(
            "state declares dim {} but has {} amplitudes",
            json.dim,
            json.amplitudes.len()
        ));
    }
    PureState::new(json.amplitudes.iter().map(|[re, im]| C64::new(*re, *im)).collect())
        .map_err(|e| e.to_string())
}

pub fn state_json(psi: &PureState) -> StateJson {
    StateJson {
        dim: psi.dim(),
        amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
    }
}

pub fn matrix(json: &MatrixJson) -> Result<CMatrix, String> {
    let d = json.dim;
    if json.rows.len() != d || json.rows.iter().any(|r| r.len() != d) {
        return Err(format!("matrix is not {d}x{d} as declared"));
    }
    Ok(CMatrix::from_fn(d, d, |i, j| {
        let [re, im] = json.rows[i][j];
        C64::new(re, im)
    }))
}

pub fn density(json: &MatrixJson) -> Result<DensityMatrix, String> {
    DensityMatrix::new(matrix(json)?).map_err(|e| e.to_string())
}

pub fn matrix_json(m: &CMatrix) -> MatrixJson {
    MatrixJson {
        dim: m.nrows(),
        rows: (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect(),
    }
}

pub fn preparation(json: &PrepJson) -> Result<MixedPreparation, String> {
    let mut pures = Vec::with_capacity(json.terms.len());
    let mut alphas = Vec::with_capacity(json.terms.len());
    for t in &json.terms {
        pures.push(pure_state(&t.state)?);
        alphas.push(t.alpha);
    }
    MixedPreparation::new(pures, alphas, json.beta).map_err(|e| e.to_string())
}

pub fn povm(json: &PovmJson) -> Result<Povm, String> {
    let effects = json
        .effects
        .iter()
        .map(matrix)
        .collect::<Result<Vec<_>, _>>()?;
    Povm::new(effects).map_err(|e| e.to_string())
}

pub fn povm_json(p: &Povm) -> PovmJson {
    PovmJson {
        effects: p.effects().iter().map(matrix_json).collect(),
    }
}

/// JSON formatter printing every float with 12 significant digits.
struct SigFigs;

impl serde_json::ser::Formatter for SigFigs {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.11e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.11e}")
    }
}

/// Serializes with the 12-significant-digit float format.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigs);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_twelve_significant_digits() {
        #[derive(Serialize)]
        struct V {
            x: f64,
        }
        let s = to_json(&V { x: 2.0 - 2.0f64.sqrt() });
        assert_eq!(s, r#"{"x":5.85786437627e-1}"#);
        let s = to_json(&V { x: 1.0 });
        assert_eq!(s, r#"{"x":1.00000000000e0}"#);
    }

    #[test]
    fn serialization_is_idempotent_under_round_trip() {
        #[derive(Serialize, Deserialize)]
        struct V {
            a: f64,
            b: Vec<f64>,
            n: u64,
        }
        let v = V {
            a: std::f64::consts::PI,
            b: vec![1.0 / 3.0, -0.0, 6.02214076e23],
            n: 42,
        };
        let once = to_json(&v);
        let parsed: V = serde_json::from_str(&once).unwrap();
        let twice = to_json(&parsed);
        assert_eq!(once, twice);
    }

    #[test]
    fn state_and_matrix_round_trip() {
        let psi = PureState::normalized(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]).unwrap();
        let back = pure_state(&state_json(&psi)).unwrap();
        assert_eq!(psi.amplitudes(), back.amplitudes());

        let rho = psi.density();
        let mj = matrix_json(rho.matrix());
        let back = density(&mj).unwrap();
        assert_eq!(rho.matrix(), back.matrix());
    }

    #[test]
    fn schema_errors_are_reported() {
        let bad = StateJson {
            dim: 3,
            amplitudes: vec![[1.0, 0.0], [0.0, 0.0]],
        };
        assert!(pure_state(&bad).is_err());
        let bad = MatrixJson {
            dim: 2,
            rows: vec![vec![[1.0, 0.0]]],
        };
        assert!(matrix(&bad).is_err());
    }
}
