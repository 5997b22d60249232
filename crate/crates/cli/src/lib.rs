//! Command-line front end: argument handling, request validation and
//! JSON/DOT rendering over the `keyforms` library.

pub mod parse;

use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use keyforms::graphs::{
    algebraic_witness, export_dot, intersection_matrix, is_negative_definite,
    minimal_resolution, nonalgebraic_witness,
};
use keyforms::{
    algebra, classify, compute_key_forms, cousin_decide, decide_algebraic, resolution_graph,
    DPuiseuxPoly, Decision, DualGraph, Error, FormalPuiseuxPairs, GenericDps, KeyFormSeq,
    LaurentPoly, Mark, Verdict,
};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "keyforms",
    version,
    about = "Key forms, algebraicity and dual graphs of primitive compactifications of the plane"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Key forms of the semidegree given by phi + xi*x^r.
    Keyforms {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Semidegree of a polynomial in x, x^-1, y.
    Semidegree {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Whether the compactification is algebraic.
    Decide {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Same question for a germ v = psi(u) with local order r.
    Cousin {
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Which kinds of compactification share the dual graph of these pairs.
    Classify {
        /// Formal pairs as `q1/p1,q2/p2,...`.
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
    },
    /// Dual graph of the resolution at infinity.
    Graph {
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        /// Blow down to the minimal resolution first.
        #[arg(long)]
        minimal: bool,
    },
    /// Key forms of a compactification with this dual graph.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
        #[arg(long, value_enum)]
        kind: WitnessKind,
    },
    /// Runs one command per line of FILE and prints one JSON line each.
    Batch {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Algebraic,
    Nonalgebraic,
}

/// A command with its arguments parsed and validated.
#[derive(Clone, Debug)]
pub enum Request {
    Keyforms(GenericDps),
    Semidegree(GenericDps, LaurentPoly),
    Decide(GenericDps),
    Cousin(DPuiseuxPoly, BigRational),
    Classify(FormalPuiseuxPairs),
    Graph {
        pairs: FormalPuiseuxPairs,
        dot: bool,
        minimal: bool,
    },
    Witness(FormalPuiseuxPairs, WitnessKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Internal = 1,
    Invalid = 2,
    NotACompactification = 3,
    Precondition = 4,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub exit: ExitCode,
    pub message: String,
}

impl CliError {
    fn invalid(what: &str, message: impl fmt::Display) -> Self {
        CliError {
            exit: ExitCode::Invalid,
            message: format!("--{what}: {message}"),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match &e {
            Error::InvalidInput(_) | Error::ZeroPolynomial | Error::NotRepresentable { .. } => {
                ExitCode::Invalid
            }
            Error::NotACompactification(_) => ExitCode::NotACompactification,
            Error::NotNormalForm(_) | Error::Precondition(_) => ExitCode::Precondition,
            Error::Internal(_) => ExitCode::Internal,
        };
        CliError {
            exit,
            message: e.to_string(),
        }
    }
}

fn generic(phi: &str, r: &str) -> Result<GenericDps, CliError> {
    let phi = parse::parse_dps(phi).map_err(|e| CliError::invalid("phi", e))?;
    let r = parse::parse_rational(r).map_err(|e| CliError::invalid("r", e))?;
    GenericDps::new(phi, r).map_err(|e| CliError::invalid("phi", e))
}

fn pairs(text: &str) -> Result<FormalPuiseuxPairs, CliError> {
    parse::parse_formal_pairs(text).map_err(|e| CliError::invalid("pairs", e))
}

impl Request {
    /// Parses every argument. `Batch` is not a single request.
    pub fn from_command(command: Command) -> Result<Request, CliError> {
        Ok(match command {
            Command::Keyforms { phi, r } => Request::Keyforms(generic(&phi, &r)?),
            Command::Semidegree { phi, r, f } => {
                let g = generic(&phi, &r)?;
                let f = parse::parse_laurent(&f).map_err(|e| CliError::invalid("f", e))?;
                if f.is_zero() {
                    return Err(CliError::invalid("f", "the zero polynomial has no semidegree"));
                }
                Request::Semidegree(g, f)
            }
            Command::Decide { phi, r } => Request::Decide(generic(&phi, &r)?),
            Command::Cousin { psi, r } => {
                let psi = parse::parse_dps(&psi).map_err(|e| CliError::invalid("psi", e))?;
                let r = parse::parse_rational(&r).map_err(|e| CliError::invalid("r", e))?;
                Request::Cousin(psi, r)
            }
            Command::Classify { pairs: p } => Request::Classify(pairs(&p)?),
            Command::Graph {
                pairs: p,
                dot,
                minimal,
            } => Request::Graph {
                pairs: pairs(&p)?,
                dot,
                minimal,
            },
            Command::Witness { pairs: p, kind } => Request::Witness(pairs(&p)?, kind),
            Command::Batch { .. } => {
                return Err(CliError {
                    exit: ExitCode::Invalid,
                    message: "batch cannot be nested".into(),
                })
            }
        })
    }
}

#[derive(Serialize)]
struct KeyFormJson {
    index: String,
    form: String,
    value: String,
    /// How the form arises from the earlier ones; absent for `g_0, g_1`.
    step: Option<String>,
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|v| v.to_string()).collect()
}

fn key_forms_json(seq: &KeyFormSeq) -> Vec<KeyFormJson> {
    seq.forms()
        .iter()
        .zip(seq.values())
        .enumerate()
        .map(|(i, (form, value))| KeyFormJson {
            index: i.to_string(),
            form: form.to_string(),
            value: value.to_string(),
            step: (i >= 2).then(|| format!("g_{i} = {}", seq.step_expression(i - 1))),
        })
        .collect()
}

#[derive(Serialize)]
struct KeyformsJson {
    series: String,
    formal_pairs: String,
    delta_x: String,
    n: String,
    key_forms: Vec<KeyFormJson>,
    essential_indices: Vec<String>,
    essential_values: Vec<String>,
    contractible: bool,
}

#[derive(Serialize)]
struct SemidegreeJson {
    series: String,
    f: String,
    leading_exponent: String,
    leading_coefficient: String,
    semidegree: String,
}

#[derive(Serialize)]
#[serde(tag = "kind")]
enum VerdictJson {
    Algebraic {
        curve: String,
        weights: Vec<String>,
        essential_weights: Vec<String>,
    },
    NonAlgebraic {
        first_non_polynomial: String,
    },
}

#[derive(Serialize)]
struct DecideJson {
    series: String,
    formal_pairs: String,
    verdict: VerdictJson,
    key_forms: Vec<KeyFormJson>,
    essential_indices: Vec<String>,
}

#[derive(Serialize)]
struct S2Json {
    k: String,
    witness: String,
}

#[derive(Serialize)]
struct ClassifyJson {
    pairs: String,
    kind: String,
    essential_values: Vec<String>,
    s1_failures: Vec<String>,
    s2_failures: Vec<S2Json>,
}

#[derive(Serialize)]
struct VertexJson {
    id: String,
    name: String,
    weight: String,
    mark: &'static str,
}

#[derive(Serialize)]
struct GraphJson {
    pairs: String,
    vertices: Vec<VertexJson>,
    edges: Vec<[String; 2]>,
    negative_definite: bool,
}

#[derive(Serialize)]
struct WitnessJson {
    pairs: String,
    kind: &'static str,
    key_forms: Vec<KeyFormJson>,
    essential_values: Vec<String>,
    first_non_polynomial: Option<String>,
}

fn decision_json(g: &GenericDps, d: &Decision) -> DecideJson {
    let verdict = match &d.verdict {
        Verdict::Algebraic {
            curve,
            weights,
            essential_weights,
        } => VerdictJson::Algebraic {
            curve: curve.to_string(),
            weights: strings(weights),
            essential_weights: strings(essential_weights),
        },
        Verdict::NonAlgebraic {
            first_non_polynomial,
        } => VerdictJson::NonAlgebraic {
            first_non_polynomial: first_non_polynomial.to_string(),
        },
    };
    DecideJson {
        series: g.to_string(),
        formal_pairs: g.formal_pairs().to_string(),
        verdict,
        key_forms: key_forms_json(&d.keyforms),
        essential_indices: strings(d.keyforms.essential_indices()),
    }
}

fn graph_json(pairs: &FormalPuiseuxPairs, graph: &DualGraph) -> GraphJson {
    let names = |id: usize| graph.vertices()[id].name.clone();
    let mut edges: Vec<[String; 2]> = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (names(a), names(b));
            if a <= b {
                [a, b]
            } else {
                [b, a]
            }
        })
        .collect();
    edges.sort();
    GraphJson {
        pairs: pairs.to_string(),
        vertices: graph
            .vertices()
            .iter()
            .map(|v| VertexJson {
                id: v.id.to_string(),
                name: v.name.clone(),
                weight: v.weight.to_string(),
                mark: match v.mark {
                    Mark::None => "none",
                    Mark::L => "L",
                    Mark::Estar => "Estar",
                },
            })
            .collect(),
        edges,
        negative_definite: is_negative_definite(&intersection_matrix(graph, true)),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError {
            exit: ExitCode::Internal,
            message: e.to_string(),
        })
}

/// Executes a validated request and returns what goes to standard output.
pub fn run(request: &Request) -> Result<String, CliError> {
    match request {
        Request::Keyforms(g) => {
            let seq = compute_key_forms(g)?;
            to_json(&KeyformsJson {
                series: g.to_string(),
                formal_pairs: g.formal_pairs().to_string(),
                delta_x: g.delta_x().to_string(),
                n: seq.n().to_string(),
                key_forms: key_forms_json(&seq),
                essential_indices: strings(seq.essential_indices()),
                essential_values: strings(seq.essential_values().values()),
                contractible: seq.last_value() > 0,
            })
        }
        Request::Semidegree(g, f) => {
            let series = algebra::substitute(f, g)?;
            let (exp, coeff) = series
                .leading()
                .ok_or_else(|| Error::Internal("substitution vanished".into()))?;
            to_json(&SemidegreeJson {
                series: g.to_string(),
                f: f.to_string(),
                leading_exponent: exp.to_string(),
                leading_coefficient: coeff.to_string(),
                semidegree: algebra::semidegree(f, g)?.to_string(),
            })
        }
        Request::Decide(g) => to_json(&decision_json(g, &decide_algebraic(g)?)),
        Request::Cousin(psi, r) => {
            let g = GenericDps::from_local(psi, r)?;
            to_json(&decision_json(&g, &cousin_decide(psi, r)?))
        }
        Request::Classify(p) => {
            let class = classify(p)?;
            to_json(&ClassifyJson {
                pairs: p.to_string(),
                kind: class.kind.to_string(),
                essential_values: strings(class.omegas.values()),
                s1_failures: strings(&class.s1_failures),
                s2_failures: class
                    .s2_failures
                    .iter()
                    .map(|&(k, w)| S2Json {
                        k: k.to_string(),
                        witness: w.to_string(),
                    })
                    .collect(),
            })
        }
        Request::Graph {
            pairs: p,
            dot,
            minimal,
        } => {
            let mut graph = resolution_graph(p)?;
            if *minimal {
                graph = minimal_resolution(&graph);
            }
            if *dot {
                Ok(export_dot(&graph)?)
            } else {
                to_json(&graph_json(p, &graph))
            }
        }
        Request::Witness(p, kind) => {
            let seq = match kind {
                WitnessKind::Algebraic => algebraic_witness(p)?,
                WitnessKind::Nonalgebraic => nonalgebraic_witness(p)?,
            };
            to_json(&WitnessJson {
                pairs: p.to_string(),
                kind: match kind {
                    WitnessKind::Algebraic => "algebraic",
                    WitnessKind::Nonalgebraic => "nonalgebraic",
                },
                key_forms: key_forms_json(&seq),
                essential_values: strings(seq.essential_values().values()),
                first_non_polynomial: seq.first_non_polynomial().map(|j| j.to_string()),
            })
        }
    }
}

/// Result of one invocation: exit code plus the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            exit: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: CliError) -> Self {
        Outcome {
            exit: e.exit.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        }
    }
}

/// Runs a full argument vector, program name first.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    exit: ExitCode::Invalid.code(),
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Batch { file, jobs } => match std::fs::read_to_string(&file) {
            Ok(text) => match run_batch(&text, jobs) {
                Ok(out) => Outcome::ok(out),
                Err(e) => Outcome::error(e),
            },
            Err(e) => Outcome::error(CliError::invalid("file", format!("{}: {e}", file.display()))),
        },
        command => match Request::from_command(command).and_then(|r| run(&r)) {
            Ok(out) => Outcome::ok(out),
            Err(e) => Outcome::error(e),
        },
    }
}

#[derive(Serialize)]
struct BatchLine<'a> {
    line: String,
    input: &'a str,
    exit: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn batch_line(number: usize, input: &str) -> String {
    let outcome = match shell_words::split(input) {
        Ok(words) if words.first().map(String::as_str) == Some("batch") => {
            Outcome::error(CliError {
                exit: ExitCode::Invalid,
                message: "batch cannot be nested".into(),
            })
        }
        Ok(words) => run_args(std::iter::once("keyforms".to_string()).chain(words)),
        Err(e) => Outcome::error(CliError {
            exit: ExitCode::Invalid,
            message: e.to_string(),
        }),
    };
    let output = (outcome.exit == 0).then(|| {
        serde_json::from_str(&outcome.stdout)
            .unwrap_or_else(|_| serde_json::Value::String(outcome.stdout.clone()))
    });
    let error = (outcome.exit != 0).then(|| outcome.stderr.trim_end().to_string());
    serde_json::to_string(&BatchLine {
        line: number.to_string(),
        input: input.trim(),
        exit: outcome.exit.to_string(),
        output,
        error,
    })
    .expect("batch line serializes")
}

/// One JSON object per non-blank, non-comment line, in input order.
/// `jobs` bounds the worker threads.
pub fn run_batch(text: &str, jobs: usize) -> Result<String, CliError> {
    if jobs == 0 {
        return Err(CliError::invalid("jobs", "must be at least 1"));
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError {
            exit: ExitCode::Internal,
            message: e.to_string(),
        })?;
    let results: Vec<String> =
        pool.install(|| lines.par_iter().map(|&(n, l)| batch_line(n, l)).collect());
    Ok(results.into_iter().map(|l| l + "\n").collect())
}
