//! Command-line surface: anti-distinguishability solves, classification,
//! Kochen-Specker overlap estimation, MUB generation, qubit geometry,
//! bound evaluators, the contextuality witness, and the bundled worked
//! examples. All reports are JSON on stdout; exit code 2 flags malformed
//! input, 3 a solver that could not reach its gap target.

mod examples;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qoverlap::{
    antidist_sdp, asymptotic_ratio_bound, classify, great_circle_test, ks_overlap_mixed,
    mub_bases, mub_family_ratio_bound, mub_pair_bound, pure_pair_ratio_bound, qubit_triple_antidist,
    s_witness, antidist_povm_qubit, bloch_from_qubit, Error as QError, SampleScheme, SphereSample,
};

#[derive(Parser)]
#[command(
    name = "qoverlap",
    about = "Anti-distinguishability and epistemic-overlap certification toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the anti-distinguishability SDP for a list of density matrices.
    Antidist {
        /// JSON file: array of density matrices.
        states: PathBuf,
        /// Primal-dual gap tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Classify a list of preparations.
    Classify {
        /// JSON file: array of preparations.
        preps: PathBuf,
    },
    /// Monte Carlo estimate of the Kochen-Specker overlap of qubit preparations.
    KsOverlap {
        /// JSON file: array of preparations (dimension 2).
        preps: PathBuf,
        /// Number of sphere samples.
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        /// Seed for the deterministic sampler.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sampling scheme.
        #[arg(long, value_enum, default_value_t = SchemeArg::UniformRandom)]
        scheme: SchemeArg,
    },
    /// Generate mutually unbiased bases.
    Mub {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        /// Also write the basis file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric anti-distinguishability verdict for three qubit states,
    /// with the zero-error POVM when it exists.
    Geometry {
        /// JSON file: array of exactly three qubit pure states.
        states: PathBuf,
    },
    /// Evaluate a closed-form bound.
    Bounds {
        #[arg(long, value_enum)]
        which: WhichBound,
        #[arg(long)]
        dim: usize,
        /// Number of preparations (theorem8 only).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate the contextuality witness S and its overlap-ratio bound.
    SWitness {
        /// JSON file: {"states": [4 density matrices], "measurements": [2 binary POVMs]}.
        config: PathBuf,
    },
    /// Reproduce a named worked example, printing expected vs computed.
    Example {
        /// One of: 1, 2, 3, theorem6, trine.
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    UniformRandom,
    Stratified,
}

impl SchemeArg {
    fn scheme(self) -> SampleScheme {
        match self {
            SchemeArg::UniformRandom => SampleScheme::UniformRandom,
            SchemeArg::Stratified => SampleScheme::Stratified,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SchemeArg::UniformRandom => "uniform-random",
            SchemeArg::Stratified => "stratified",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichBound {
    Corollary5,
    Theorem7,
    Theorem8,
    PsiRatio,
}

struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            kind: "invalid-input",
            message: message.into(),
            code: 2,
        }
    }
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        match e {
            QError::Convergence { .. } => Self {
                kind: "solver-non-convergence",
                message: e.to_string(),
                code: 3,
            },
            _ => Self {
                kind: "invalid-input",
                message: e.to_string(),
                code: 2,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            #[derive(Serialize)]
            struct ErrorBody<'a> {
                kind: &'a str,
                message: &'a str,
            }
            #[derive(Serialize)]
            struct ErrorReport<'a> {
                error: ErrorBody<'a>,
            }
            println!(
                "{}",
                io::to_json(&ErrorReport {
                    error: ErrorBody {
                        kind: f.kind,
                        message: &f.message,
                    }
                })
            );
            ExitCode::from(f.code)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("cannot parse {}: {e}", path.display())))
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Antidist { states, tol } => {
            let jsons: Vec<io::MatrixJson> = read_json(&states)?;
            let densities = jsons
                .iter()
                .map(io::density)
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::input)?;
            let res = antidist_sdp(&densities, tol)?;
            #[derive(Serialize)]
            struct SdpReport {
                a_q: f64,
                primal_value: f64,
                dual_value: f64,
                gap: f64,
                povm: io::PovmJson,
                dual_certificate: io::MatrixJson,
            }
            Ok(io::to_json(&SdpReport {
                a_q: res.a_q,
                primal_value: res.primal_value,
                dual_value: res.dual_value,
                gap: res.gap,
                povm: io::povm_json(&res.povm),
                dual_certificate: io::matrix_json(&res.dual_certificate),
            }))
        }
        Cmd::Classify { preps } => {
            let jsons: Vec<io::PrepJson> = read_json(&preps)?;
            let preps = jsons
                .iter()
                .map(io::preparation)
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::input)?;
            let report = classify(&preps)?;
            Ok(io::to_json(&report))
        }
        Cmd::KsOverlap {
            preps,
            samples,
            seed,
            scheme,
        } => {
            let jsons: Vec<io::PrepJson> = read_json(&preps)?;
            let preps = jsons
                .iter()
                .map(io::preparation)
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::input)?;
            let sample = SphereSample::generate(seed, samples, scheme.scheme())?;
            let est = ks_overlap_mixed(&preps, &sample)?;
            #[derive(Serialize)]
            struct KsReport {
                estimate: f64,
                std_error: f64,
                samples: usize,
                seed: u64,
                scheme: &'static str,
            }
            Ok(io::to_json(&KsReport {
                estimate: est.estimate,
                std_error: est.std_error,
                samples,
                seed,
                scheme: scheme.name(),
            }))
        }
        Cmd::Mub { dim, count, out } => {
            let bases = mub_bases(dim, count)?;
            #[derive(Serialize)]
            struct MubReport {
                dim: usize,
                count: usize,
                bases: Vec<Vec<io::StateJson>>,
            }
            let report = io::to_json(&MubReport {
                dim,
                count,
                bases: bases
                    .iter()
                    .map(|b| b.iter().map(io::state_json).collect())
                    .collect(),
            });
            if let Some(path) = out {
                std::fs::write(&path, &report)
                    .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(report)
        }
        Cmd::Geometry { states } => {
            let jsons: Vec<io::StateJson> = read_json(&states)?;
            if jsons.len() != 3 {
                return Err(Failure::input(format!(
                    "geometry needs exactly 3 states, got {}",
                    jsons.len()
                )));
            }
            let s = jsons
                .iter()
                .map(io::pure_state)
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::input)?;
            let vs = [
                bloch_from_qubit(&s[0])?,
                bloch_from_qubit(&s[1])?,
                bloch_from_qubit(&s[2])?,
            ];
            let coplanar = great_circle_test(&vs[0], &vs[1], &vs[2]);
            let verdict = qubit_triple_antidist(&s[0], &s[1], &s[2])?;
            let (povm, gammas, error_sum) = if verdict {
                let povm = antidist_povm_qubit(&s[0], &s[1], &s[2])?;
                let gammas: Vec<f64> = povm.effects().iter().map(|m| m.trace().re).collect();
                let err: f64 = s
                    .iter()
                    .zip(povm.effects())
                    .map(|(p, m)| (p.projector() * m).trace().re)
                    .sum();
                (Some(io::povm_json(&povm)), Some(gammas), Some(err))
            } else {
                (None, None, None)
            };
            #[derive(Serialize)]
            struct GeometryReport {
                coplanar: bool,
                antidistinguishable: bool,
                gammas: Option<Vec<f64>>,
                error_sum: Option<f64>,
                povm: Option<io::PovmJson>,
            }
            Ok(io::to_json(&GeometryReport {
                coplanar,
                antidistinguishable: verdict,
                gammas,
                error_sum,
                povm,
            }))
        }
        Cmd::Bounds { which, dim, n } => {
            let value = match which {
                WhichBound::Corollary5 => mub_pair_bound(dim)?,
                WhichBound::Theorem7 => mub_family_ratio_bound(dim)?,
                WhichBound::Theorem8 => {
                    let n = n.ok_or_else(|| Failure::input("theorem8 needs --n"))?;
                    asymptotic_ratio_bound(n, dim)?
                }
                WhichBound::PsiRatio => pure_pair_ratio_bound(dim)?,
            };
            #[derive(Serialize)]
            struct BoundReport {
                which: String,
                dim: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                n: Option<usize>,
                value: f64,
            }
            Ok(io::to_json(&BoundReport {
                which: match which {
                    WhichBound::Corollary5 => "corollary5",
                    WhichBound::Theorem7 => "theorem7",
                    WhichBound::Theorem8 => "theorem8",
                    WhichBound::PsiRatio => "psi-ratio",
                }
                .into(),
                dim,
                n,
                value,
            }))
        }
        Cmd::SWitness { config } => {
            let json: io::SWitnessConfigJson = read_json(&config)?;
            if json.states.len() != 4 {
                return Err(Failure::input(format!(
                    "need exactly 4 states indexed 00,01,10,11, got {}",
                    json.states.len()
                )));
            }
            if json.measurements.len() != 2 {
                return Err(Failure::input(format!(
                    "need exactly 2 binary measurements, got {}",
                    json.measurements.len()
                )));
            }
            let states: Vec<_> = json
                .states
                .iter()
                .map(io::density)
                .collect::<Result<_, _>>()
                .map_err(Failure::input)?;
            let meas: Vec<_> = json
                .measurements
                .iter()
                .map(io::povm)
                .collect::<Result<_, _>>()
                .map_err(Failure::input)?;
            let states: [qoverlap::DensityMatrix; 4] =
                states.try_into().expect("length checked above");
            let meas: [qoverlap::Povm; 2] = meas.try_into().expect("length checked above");
            let w = s_witness(&states, &meas)?;
            #[derive(Serialize)]
            struct WitnessReport {
                s: f64,
                ratio_bound: f64,
            }
            Ok(io::to_json(&WitnessReport {
                s: w.s,
                ratio_bound: w.ratio_bound,
            }))
        }
        Cmd::Example { name } => examples::run(&name),
    }
}
