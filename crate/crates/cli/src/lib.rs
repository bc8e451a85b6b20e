//! Command-line front end for `guframe`.
//!
//! Every subcommand reads one JSON document (a file path or `-` for stdin)
//! and prints one JSON document. Exit status is 0 on success, 1 for invalid
//! input and 2 when a numerical precondition fails; errors are reported as
//! `{"error": {"kind": ..., "message": ...}}`.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use guframe::cgu::{bounds_envelope, cgu_canonical_generators, cgu_dual_generators, cgu_fast_generators, commutation_phases};
use guframe::distance::{cyclic_fpf_rep, distance_profile, is_fixed_point_free, min_distance_search};
use guframe::gu::{ft_diagonalizes, gu_spectral, is_permuted_gram, spectral_from_columns, SpectralReport};
use guframe::io::{vector_to_pairs, CGUFrameJson, ComplexPair, FrameJson, GUFrameJson};
use guframe::lsguf::{self, ConstructionReport};
use guframe::matops::{c64, CVector};
use guframe::pruning::{prune_coset_spectrum, prune_invariance_check, prune_one_spectrum};
use guframe::{ErrorKind, Frame, GUFrame, GroupSpec, Tolerance};
use serde_json::{json, Map, Value};

#[derive(Debug, Parser)]
#[command(name = "guframe", version, about = "Analyze and construct geometrically uniform frames")]
struct Cli {
    /// Absolute tolerance for structural checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// JSON input file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Debug, Args)]
struct SpecArg {
    /// Group factors, e.g. `[2,2]`, `2,2` or `2x2`.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Sc,
    C,
    Naive,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fourier spectrum, frame bounds, dual and canonical generators.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Dual frame (a GU frame keeps its group and gets the dual generator).
    Dual {
        #[command(flatten)]
        input: Input,
    },
    /// Canonical tight frame.
    Canonical {
        #[command(flatten)]
        input: Input,
    },
    /// Frame vectors of a GU or CGU frame.
    Synthesize {
        #[command(flatten)]
        input: Input,
    },
    /// Spectra after removing vectors from a GU frame.
    Prune {
        #[command(flatten)]
        input: Input,
        /// Remove only this element.
        #[arg(long, conflicts_with = "set")]
        remove: Option<usize>,
        /// Remove the translate `k + J` of this index set, e.g. `0,1`.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 0, requires = "set")]
        k: usize,
    },
    /// Least-squares GU frame closest to the input frame.
    Construct {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value = "sc")]
        mode: Mode,
        /// First Gram row `a(q)` as a JSON list of numbers or `[re, im]` pairs, or `@file`.
        #[arg(long)]
        target_a: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        beta0: f64,
        /// Positive weights for the naive projection, e.g. `1,2`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Distance profile and fixed-point freeness.
    Distance {
        /// GU frame JSON; omit with `--cyclic` or `--search`.
        input: Option<String>,
        /// Use the cyclic group of this order with exponents `--u`.
        #[arg(long, requires = "u", conflicts_with_all = ["input", "search"])]
        cyclic: Option<usize>,
        #[arg(long)]
        u: Option<String>,
        /// Search exponent tuples for this cyclic order.
        #[arg(long, requires = "m", conflicts_with = "input")]
        search: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Tests whether a Gram matrix (or the Gram of a frame) is GU over a group.
    CheckGu {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spec: SpecArg,
        /// Treat the input as frame vectors rather than a Gram matrix.
        #[arg(long)]
        vectors: bool,
    },
    /// Dual and canonical generators and bounds of a CGU frame.
    Cgu {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug)]
enum CliError {
    Core(guframe::Error),
    Input(String),
}

impl From<guframe::Error> for CliError {
    fn from(e: guframe::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.kind() == ErrorKind::Numerical => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Core(e) => (
                match e.kind() {
                    ErrorKind::Validation => "validation",
                    ErrorKind::Numerical => "numerical",
                },
                e.to_string(),
            ),
            CliError::Input(msg) => ("validation", msg.clone()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Result of one invocation: exit status and the text for stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Runs the CLI on `args` (including the program name), reading `-` from `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                },
                _ => failure(&input_err(e.to_string())),
            }
        }
    };
    let result = tolerance(cli.tolerance).and_then(|tol| dispatch(&cli.command, tol, stdin));
    match result {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values always serialize") + "\n";
            match &cli.output {
                Some(path) => match fs::write(path, &text) {
                    Ok(()) => Outcome { code: 0, stdout: String::new() },
                    Err(e) => failure(&input_err(format!("cannot write {}: {e}", path.display()))),
                },
                None => Outcome { code: 0, stdout: text },
            }
        }
        Err(e) => failure(&e),
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: serde_json::to_string_pretty(&e.to_json()).expect("JSON values always serialize") + "\n",
    }
}

fn tolerance(abs: Option<f64>) -> CliResult<Tolerance> {
    match abs {
        None => Ok(Tolerance::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Tolerance::with_abs(t)),
        Some(t) => Err(input_err(format!("tolerance must be positive, got {t}"))),
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> CliResult<Value> {
    let text = if path == "-" {
        let mut buf = String::new();
        stdin
            .read_to_string(&mut buf)
            .map_err(|e| input_err(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| input_err(format!("malformed JSON in {path}: {e}")))
}

fn decode<T: serde::de::DeserializeOwned>(value: Value, what: &str) -> CliResult<T> {
    serde_json::from_value(value).map_err(|e| input_err(format!("invalid {what}: {e}")))
}

fn encode<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types always serialize")
}

/// Which of the documented input shapes a JSON document has.
enum Document {
    Frame(FrameJson),
    Gu(GUFrameJson),
    Cgu(CGUFrameJson),
}

fn classify(value: Value) -> CliResult<Document> {
    let keys = value
        .as_object()
        .ok_or_else(|| input_err("input must be a JSON object"))?;
    if keys.contains_key("columns") {
        Ok(Document::Frame(decode(value, "frame")?))
    } else if keys.contains_key("generators") || keys.contains_key("gen_spec") {
        Ok(Document::Cgu(decode(value, "CGU frame")?))
    } else if keys.contains_key("matrices") {
        Ok(Document::Gu(decode(value, "GU frame")?))
    } else {
        Err(input_err("input is neither a frame, a GU frame nor a CGU frame"))
    }
}

fn parse_spec(text: &str) -> CliResult<GroupSpec> {
    let trimmed = text.trim().trim_start_matches('[').trim_end_matches(']');
    let factors = trimmed
        .split([',', 'x', 'X'])
        .map(|t| t.trim().parse::<usize>().map_err(|_| input_err(format!("invalid group factor {t:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(GroupSpec::new(factors)?)
}

fn require_spec(spec: &SpecArg) -> CliResult<GroupSpec> {
    spec.spec
        .as_deref()
        .ok_or_else(|| input_err("--spec is required for plain frame input"))
        .and_then(parse_spec)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|_| input_err(format!("invalid {what} entry {t:?}"))))
        .collect()
}

/// A JSON list of reals or `[re, im]` pairs, inline or `@path`.
fn parse_sequence(text: &str) -> CliResult<CVector> {
    let raw = match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {path}: {e}")))?,
        None => text.to_string(),
    };
    let value: Value = serde_json::from_str(&raw).map_err(|e| input_err(format!("malformed sequence: {e}")))?;
    let items = value.as_array().ok_or_else(|| input_err("sequence must be a JSON list"))?;
    let entries = items
        .iter()
        .map(|item| match item {
            Value::Number(x) => x.as_f64().map(c64).ok_or_else(|| input_err("non-finite number")),
            other => decode::<ComplexPair>(other.clone(), "complex pair").map(guframe::io::unpair),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(CVector::from_vec(entries))
}

fn spectral_json(report: &SpectralReport) -> Value {
    let mut map: Map<String, Value> = match encode(report) {
        Value::Object(map) => map,
        _ => unreachable!("reports serialize to objects"),
    };
    map.remove("lower_bound");
    map.remove("upper_bound");
    map.insert("A".into(), json!(report.lower_bound));
    map.insert("B".into(), json!(report.upper_bound));
    Value::Object(map)
}

fn frame_json(frame: &Frame) -> Value {
    encode(&FrameJson::from_frame(frame))
}

fn dispatch(command: &Command, tol: Tolerance, stdin: &mut dyn Read) -> CliResult<Value> {
    match command {
        Command::Analyze { input, spec } => match classify(read_input(&input.input, stdin)?)? {
            Document::Gu(g) => Ok(spectral_json(&gu_spectral(&g.to_gu(tol)?)?)),
            Document::Frame(f) => {
                let spec = require_spec(spec)?;
                let frame = f.to_frame(tol)?;
                let diag = ft_diagonalizes(&frame.gram(), &spec, &tol)?;
                if !diag.diagonalized {
                    return Err(guframe::Error::NotFourierDiagonal { max_off_diagonal: diag.max_off_diagonal }.into());
                }
                Ok(spectral_json(&spectral_from_columns(frame.matrix(), &spec, &tol)?))
            }
            Document::Cgu(_) => Err(input_err("use the cgu subcommand for CGU frames")),
        },
        Command::Dual { input } | Command::Canonical { input } => {
            let dual = matches!(command, Command::Dual { .. });
            match classify(read_input(&input.input, stdin)?)? {
                Document::Frame(f) => {
                    let frame = f.to_frame(tol)?;
                    let out = if dual { frame.dual_frame()? } else { frame.canonical_tight()? };
                    Ok(frame_json(&out))
                }
                Document::Gu(g) => {
                    let g = g.to_gu(tol)?;
                    let out = if dual { guframe::gu::gu_dual(&g)? } else { guframe::gu::gu_canonical(&g)? };
                    Ok(encode(&GUFrameJson::from_gu(&out)))
                }
                Document::Cgu(c) => {
                    let c = c.to_cgu(tol)?.frame;
                    let gens = if dual { cgu_dual_generators(&c)? } else { cgu_canonical_generators(&c)? };
                    Ok(encode(&CGUFrameJson::from_cgu(&c.with_generators(gens)?)))
                }
            }
        }
        Command::Synthesize { input } => match classify(read_input(&input.input, stdin)?)? {
            Document::Gu(g) => Ok(frame_json(&g.to_gu(tol)?.synthesize())),
            Document::Cgu(c) => Ok(frame_json(&c.to_cgu(tol)?.frame.synthesize())),
            Document::Frame(_) => Err(input_err("input is already a plain frame")),
        },
        Command::Prune { input, remove, set, k } => {
            let g: GUFrame = decode::<GUFrameJson>(read_input(&input.input, stdin)?, "GU frame")?.to_gu(tol)?;
            match (remove, set) {
                (Some(j), _) => Ok(json!({ "removed": [j], "spectrum": prune_one_spectrum(&g, *j)? })),
                (None, Some(set)) => Ok(encode(&prune_coset_spectrum(&g, &parse_list(set, "index set")?, *k)?)),
                (None, None) => Ok(encode(&prune_invariance_check(&g)?)),
            }
        }
        Command::Construct { input, spec, mode, target_a, beta0, sigma } => {
            let spec = require_spec(spec)?;
            let f = decode::<FrameJson>(read_input(&input.input, stdin)?, "frame")?.to_frame(tol)?;
            let target = || -> CliResult<lsguf::TargetGram> {
                let a = parse_sequence(target_a.as_deref().ok_or_else(|| input_err("--target-a is required"))?)?;
                Ok(lsguf::build_target_gram(&a, &spec, &tol)?)
            };
            let (out, beta) = match mode {
                Mode::Sc => (lsguf::sc_lsguf(&f, &target()?, *beta0)?, Some(*beta0)),
                Mode::C => {
                    let (out, beta) = lsguf::c_lsguf(&f, &target()?)?;
                    (out, Some(beta))
                }
                Mode::Naive => {
                    let weights = sigma.as_deref().map(|s| parse_list::<f64>(s, "sigma")).transpose()?;
                    (lsguf::naive_gu_projection(&f, &spec, weights.as_deref())?, None)
                }
            };
            let report = ConstructionReport {
                error: lsguf::ls_error(&f, &out)?,
                beta,
                bounds: out.frame_bounds()?,
            };
            Ok(json!({ "frame": FrameJson::from_frame(&out), "report": report }))
        }
        Command::Distance { input, cyclic, u, search, m } => {
            if let (Some(n), Some(m)) = (search, m) {
                let best = min_distance_search(*n, *m, None)?;
                let rep = cyclic_fpf_rep(*n, &best.u)?;
                let fpf = is_fixed_point_free(&rep)?;
                return Ok(json!({
                    "u": best.u,
                    "d": best.profile,
                    "d_min": best.d_min,
                    "fixed_point_free": fpf.fixed_point_free,
                }));
            }
            let g = match (cyclic, input) {
                (Some(n), _) => {
                    let u: Vec<i64> = parse_list(u.as_deref().unwrap_or_default(), "exponent")?;
                    let rep = cyclic_fpf_rep(*n, &u)?.with_tol(tol);
                    let phi = CVector::from_element(u.len(), c64(1.0 / (u.len() as f64).sqrt()));
                    GUFrame::new(rep, phi)?
                }
                (None, Some(path)) => decode::<GUFrameJson>(read_input(path, stdin)?, "GU frame")?.to_gu(tol)?,
                (None, None) => decode::<GUFrameJson>(read_input("-", stdin)?, "GU frame")?.to_gu(tol)?,
            };
            let d = distance_profile(&g);
            let d_min = d[1..].iter().cloned().fold(f64::INFINITY, f64::min);
            let fpf = is_fixed_point_free(g.rep())?;
            Ok(json!({
                "d": d,
                "d_min": if d.len() > 1 { json!(d_min) } else { Value::Null },
                "fixed_point_free": fpf.fixed_point_free,
                "witness": fpf.witness,
            }))
        }
        Command::CheckGu { input, spec, vectors } => {
            let spec = require_spec(spec)?;
            let m = decode::<FrameJson>(read_input(&input.input, stdin)?, "matrix")?.to_matrix()?;
            let gram = if *vectors { m.adjoint() * &m } else { m };
            let permuted = is_permuted_gram(&gram, &tol);
            let diag = ft_diagonalizes(&gram, &spec, &tol)?;
            // GU under the given group; `permuted && symmetric` alone only
            // certifies GU under some group
            let gu = permuted.permuted && diag.diagonalized;
            Ok(json!({
                "gu": gu,
                "permuted": permuted.permuted,
                "symmetric": permuted.symmetric,
                "fourier_diagonal": diag.diagonalized,
                "max_off_diagonal": diag.max_off_diagonal,
                "failure": permuted.failure,
            }))
        }
        Command::Cgu { input } => {
            let parsed = decode::<CGUFrameJson>(read_input(&input.input, stdin)?, "CGU frame")?.to_cgu(tol)?;
            let c = &parsed.frame;
            let as_pairs = |v: Vec<CVector>| v.iter().map(vector_to_pairs).collect::<Vec<_>>();
            let mut out = json!({
                "bounds": bounds_envelope(c)?,
                "dual_generators": as_pairs(cgu_dual_generators(c)?),
                "canonical_generators": as_pairs(cgu_canonical_generators(c)?),
            });
            if let Some(gens) = &parsed.gu_generators {
                let phases = commutation_phases(c.rep(), gens.gen_rep())?;
                let fast = cgu_fast_generators(c.rep(), gens)?;
                out["phases"] = encode(&phases);
                out["fast"] = json!({
                    "dual": vector_to_pairs(&fast.dual),
                    "canonical": vector_to_pairs(&fast.canonical),
                });
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_forms() {
        for text in ["[2,2]", "2,2", "2x2", " [ 2 , 2 ] "] {
            assert_eq!(parse_spec(text).unwrap().factors(), &[2, 2]);
        }
        assert!(parse_spec("2,0").is_err());
        assert!(parse_spec("a").is_err());
    }

    #[test]
    fn sequences_accept_reals_and_pairs() {
        let v = parse_sequence("[1, [0.5, -2], -1]").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(vector_to_pairs(&v), vec![[1.0, 0.0], [0.5, -2.0], [-1.0, 0.0]]);
        assert!(parse_sequence("{}").is_err());
        assert!(parse_sequence("[[1]]").is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(tolerance(Some(0.0)).is_err());
        assert!(tolerance(Some(f64::NAN)).is_err());
        assert_eq!(tolerance(Some(1e-6)).unwrap().abs, 1e-6);
    }
}
