//! Command-line frontend. Every subcommand prints one JSON report
//! `{"problem", "verdict", "witness", "artifacts", "result"}`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cancel::CancelToken;
use crate::decide::{self, CollisionKind, DecideError};
use crate::geometry::{desingularize_with, Complex, RationalPoint, Simplex};
use crate::hats::multipliers;
use crate::mvterm::{parse_term, print_term, Term};
use crate::pwl::{compile, PwlFunction, PwlJson};
use crate::rational::format_q;
use crate::synth::synthesize_term;

/// JSON Schema for every report printed by the CLI.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_TIMEOUT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "mcnaughton", version, about = "Decision procedures for subalgebras of free MV-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Number of variables; defaults to the largest index used.
    #[arg(short = 'n', value_name = "INT")]
    pub arity: Option<usize>,
    /// Write the report here too; artifacts go next to it.
    #[arg(long, value_name = "PATH")]
    pub json_out: Option<PathBuf>,
    /// Give up after this many seconds.
    #[arg(long, value_name = "SECONDS")]
    pub timeout: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct TermsArgs {
    pub terms: Vec<String>,
    /// One term per line.
    #[arg(long, value_name = "PATH")]
    pub terms_file: Option<PathBuf>,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and print terms.
    Parse(TermsArgs),
    /// Piecewise-linear functions of terms.
    Compile(TermsArgs),
    /// Do the generators separate points?
    Separation(TermsArgs),
    /// Is the (separating) subalgebra isomorphic to the free algebra?
    IsoFree(TermsArgs),
    /// Is the subalgebra free and separating?
    FreeSep(TermsArgs),
    /// Does the subalgebra equal the free algebra?
    EqualsFree(TermsArgs),
    /// Basis of the (separating) subalgebra.
    Basis(TermsArgs),
    /// Do two generator lists give the same subalgebra?
    EqualSubalg {
        #[command(flatten)]
        first: TermsArgs,
        /// Generators of the second subalgebra.
        #[arg(long, num_args = 1.., value_name = "TERM")]
        other: Vec<String>,
        #[arg(long, value_name = "PATH")]
        other_file: Option<PathBuf>,
    },
    /// Presentation of the subalgebra as a principal quotient.
    ToQuotient(TermsArgs),
    /// Is the principal quotient by one term embeddable in a free algebra?
    EmbedCheck(TermsArgs),
    /// Regular subdivision of a complex given as JSON.
    Desingularize {
        #[arg(value_name = "COMPLEX_JSON")]
        complex: PathBuf,
        #[command(flatten)]
        io: Io,
    },
    /// Terms for functions, given as terms or as a piecewise-linear JSON file.
    Synth {
        #[command(flatten)]
        terms: TermsArgs,
        #[arg(long, value_name = "PATH")]
        function: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

#[derive(Default)]
struct Report {
    verdict: Option<bool>,
    witness: Option<Value>,
    result: Option<Value>,
    artifacts: Vec<(&'static str, Complex)>,
}

enum Failure {
    Input(String),
    Decide(DecideError),
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        Failure::Decide(e)
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_DECIDED };
            Outcome {
                code,
                report: e.render().to_string(),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let (problem, io) = name_and_io(&cli.command);
    let token = match io.timeout {
        Some(s) => CancelToken::with_timeout(Duration::from_secs(s)),
        None => CancelToken::new(),
    };
    let (code, body) = match dispatch(&cli.command, &token) {
        Ok(r) => {
            let artifacts = store_artifacts(io.json_out.as_deref(), &r.artifacts);
            let body = json!({
                "problem": problem,
                "verdict": r.verdict,
                "witness": r.witness,
                "artifacts": artifacts,
                "result": r.result,
            });
            (EXIT_DECIDED, body)
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Decide(e) => (exit_code(&e), e.to_string()),
            };
            (code, error_body(problem, &msg))
        }
    };
    let mut report = serde_json::to_string_pretty(&body).expect("serializable");
    report.push('\n');
    if let Some(p) = &io.json_out {
        if let Err(e) = fs::write(p, &report) {
            let body = error_body(problem, &format!("cannot write {}: {}", p.display(), e));
            report = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
            return Outcome { code: EXIT_INPUT, report };
        }
    }
    Outcome { code, report }
}

fn error_body(problem: &str, msg: &str) -> Value {
    json!({
        "problem": problem,
        "verdict": null,
        "witness": null,
        "artifacts": {},
        "result": null,
        "error": msg,
    })
}

pub fn exit_code(e: &DecideError) -> i32 {
    match e {
        DecideError::Precondition(_) => EXIT_PRECONDITION,
        DecideError::NoGenerators | DecideError::Term(_) => EXIT_INPUT,
        DecideError::Cancelled => EXIT_TIMEOUT,
        DecideError::Internal(_) => EXIT_INTERNAL,
    }
}

fn name_and_io(c: &Command) -> (&'static str, &Io) {
    match c {
        Command::Parse(a) => ("parse", &a.io),
        Command::Compile(a) => ("compile", &a.io),
        Command::Separation(a) => ("separation", &a.io),
        Command::IsoFree(a) => ("iso-free", &a.io),
        Command::FreeSep(a) => ("free-sep", &a.io),
        Command::EqualsFree(a) => ("equals-free", &a.io),
        Command::Basis(a) => ("basis", &a.io),
        Command::EqualSubalg { first, .. } => ("equal-subalg", &first.io),
        Command::ToQuotient(a) => ("to-quotient", &a.io),
        Command::EmbedCheck(a) => ("embed-check", &a.io),
        Command::Desingularize { io, .. } => ("desingularize", io),
        Command::Synth { terms, .. } => ("synth", &terms.io),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect())
}

fn gather(texts: &[String], file: Option<&Path>) -> Result<Vec<String>, Failure> {
    let mut all = texts.to_vec();
    if let Some(p) = file {
        all.extend(read_lines(p)?);
    }
    Ok(all)
}

fn parse_all(texts: &[String], arity: usize) -> Result<Vec<Term>, Failure> {
    texts
        .iter()
        .map(|t| parse_term(t, arity).map_err(|e| Failure::Input(format!("'{}': {}", t, e))))
        .collect()
}

fn infer_arity(texts: &[String], given: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = given {
        return Ok(n);
    }
    let mut n = 1;
    for t in texts {
        let term = parse_term(t, usize::MAX).map_err(|e| Failure::Input(format!("'{}': {}", t, e)))?;
        n = n.max(term.max_var());
    }
    Ok(n)
}

fn terms_of(a: &TermsArgs) -> Result<(Vec<Term>, usize), Failure> {
    let texts = gather(&a.terms, a.terms_file.as_deref())?;
    let n = infer_arity(&texts, a.io.arity)?;
    Ok((parse_all(&texts, n)?, n))
}

fn point(p: &RationalPoint) -> Value {
    json!(p.coords().iter().map(format_q).collect::<Vec<_>>())
}

fn simplex(s: &Simplex) -> Value {
    json!(s.vertices().iter().map(point).collect::<Vec<_>>())
}

fn printed(ts: &[Term]) -> Value {
    json!(ts.iter().map(print_term).collect::<Vec<_>>())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn dispatch(c: &Command, token: &CancelToken) -> Result<Report, Failure> {
    match c {
        Command::Parse(a) => {
            let (ts, n) = terms_of(a)?;
            Ok(Report {
                result: Some(json!({"arity": n, "terms": printed(&ts)})),
                ..Report::default()
            })
        }
        Command::Compile(a) => {
            let (ts, n) = terms_of(a)?;
            let fs: Vec<PwlJson> = ts
                .iter()
                .map(|t| compile(t, n).map(|f| f.to_json()))
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::Input(e.to_string()))?;
            Ok(Report {
                result: Some(json!({"arity": n, "functions": fs})),
                ..Report::default()
            })
        }
        Command::Separation(a) => {
            let (ts, n) = terms_of(a)?;
            let r = decide::check_separation(&ts, n)?;
            Ok(Report {
                verdict: Some(r.verdict),
                witness: r.witness.as_ref().map(|w| {
                    let kind = match w.kind {
                        CollisionKind::Vertices => "vertices",
                        CollisionKind::Collapse => "collapse",
                        CollisionKind::Overlap => "overlap",
                    };
                    json!({"kind": kind, "x": point(&w.x), "y": point(&w.y)})
                }),
                result: Some(json!({"projective": r.projective})),
                artifacts: vec![("linearizer", r.linearizer), ("image", r.image)],
            })
        }
        Command::IsoFree(a) => {
            let (ts, n) = terms_of(a)?;
            let r = decide::check_iso_to_free(&ts, n, token)?;
            Ok(Report {
                verdict: Some(r.verdict),
                witness: iso_witness(&r),
                result: None,
                artifacts: vec![("regular_linearizer", r.regular_linearizer)],
            })
        }
        Command::FreeSep(a) | Command::EqualsFree(a) => {
            let (ts, n) = terms_of(a)?;
            let verdict = if matches!(c, Command::FreeSep(_)) {
                decide::check_free_and_separating(&ts, n, token)?
            } else {
                decide::check_equals_free(&ts, n, token)?
            };
            let s = decide::check_separation(&ts, n)?;
            let witness = if !s.verdict {
                s.witness.map(|w| json!({"kind": "separation", "x": point(&w.x), "y": point(&w.y)}))
            } else if !verdict {
                iso_witness(&decide::check_iso_to_free(&ts, n, token)?)
            } else {
                None
            };
            Ok(Report {
                verdict: Some(verdict),
                witness,
                result: Some(json!({"separating": s.verdict})),
                ..Report::default()
            })
        }
        Command::Basis(a) => {
            let (ts, n) = terms_of(a)?;
            let b = decide::basis_from_generators(&ts, n, token)?;
            let ms = multipliers(&b.weighted).map_err(|e| DecideError::Internal(e.to_string()))?;
            let hats: Vec<PwlJson> = b.hats.hats.iter().map(PwlFunction::to_json).collect();
            Ok(Report {
                result: Some(json!({
                    "weighted": b.weighted.to_json(),
                    "multipliers": ms.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "hats": hats,
                    "terms": printed(&b.terms),
                })),
                artifacts: vec![("triangulation", b.weighted.complex().clone())],
                ..Report::default()
            })
        }
        Command::EqualSubalg {
            first,
            other,
            other_file,
        } => {
            let a = gather(&first.terms, first.terms_file.as_deref())?;
            let b = gather(other, other_file.as_deref())?;
            let all: Vec<String> = a.iter().chain(&b).cloned().collect();
            let n = infer_arity(&all, first.io.arity)?;
            let (ta, tb) = (parse_all(&a, n)?, parse_all(&b, n)?);
            let r = decide::subalgebras_equal(&ta, &tb, n, token)?;
            Ok(Report {
                verdict: Some(r.verdict),
                witness: r.witness.map(|w| {
                    json!({
                        "side": w.side,
                        "generator": w.generator,
                        "simplex": simplex(&w.simplex),
                        "vertex": point(&w.vertex),
                        "value": format_q(&w.value),
                        "quantum": format_q(&w.quantum),
                    })
                }),
                ..Report::default()
            })
        }
        Command::ToQuotient(a) => {
            let (ts, n) = terms_of(a)?;
            let r = decide::generators_to_quotient(&ts, n, token)?;
            Ok(Report {
                result: Some(json!({"sigma": print_term(&r.sigma), "k": r.k})),
                artifacts: vec![("range", r.range), ("triangulation", r.triangulation)],
                ..Report::default()
            })
        }
        Command::EmbedCheck(a) => {
            let (ts, k) = terms_of(a)?;
            let [sigma] = ts.as_slice() else {
                return Err(Failure::Input("embed-check takes exactly one term".into()));
            };
            let r = decide::quotient_embeddable(sigma, k, token)?;
            Ok(Report {
                verdict: Some(r.verdict),
                witness: r.failed.map(|c| json!({"failed": c.label(), "trivial": r.trivial})),
                artifacts: vec![("zeroset", r.zeroset)],
                ..Report::default()
            })
        }
        Command::Desingularize { complex, .. } => {
            let j = read_json(complex)?;
            let c = Complex::from_json(&j).map_err(|e| Failure::Input(e.to_string()))?;
            let d = desingularize_with(&c, token).map_err(DecideError::from)?;
            Ok(Report {
                result: Some(json!({
                    "complex": d.complex.to_json(),
                    "centers": d.centers.iter().map(point).collect::<Vec<_>>(),
                })),
                ..Report::default()
            })
        }
        Command::Synth { terms, function } => {
            let fs: Vec<PwlFunction> = match function {
                Some(p) => {
                    let j: PwlJson = read_json(p)?;
                    vec![PwlFunction::from_json(&j).map_err(|e| Failure::Input(e.to_string()))?]
                }
                None => {
                    let (ts, n) = terms_of(terms)?;
                    ts.iter()
                        .map(|t| compile(t, n).map_err(|e| Failure::Input(e.to_string())))
                        .collect::<Result<_, _>>()?
                }
            };
            let out = fs
                .iter()
                .map(|f| synthesize_term(f).map_err(|e| Failure::Input(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Report {
                result: Some(json!({"terms": printed(&out)})),
                ..Report::default()
            })
        }
    }
}

fn iso_witness(r: &decide::IsoReport) -> Option<Value> {
    if let Some(s) = &r.bad_simplex {
        return Some(json!({"kind": "simplex", "simplex": simplex(s)}));
    }
    r.bad_vertex.as_ref().map(|w| {
        json!({
            "kind": "vertex",
            "vertex": point(&w.vertex),
            "image": point(&w.image),
            "den": w.vertex.denominator().to_string(),
            "image_den": w.image.denominator().to_string(),
        })
    })
}

// artifacts sit next to the report: out.json -> out.linearizer.json
fn store_artifacts(out: Option<&Path>, artifacts: &[(&'static str, Complex)]) -> BTreeMap<String, String> {
    let mut paths = BTreeMap::new();
    let Some(out) = out else { return paths };
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    for (name, c) in artifacts {
        let p = out.with_file_name(format!("{}.{}.json", stem, name));
        if fs::write(&p, c.to_json_string()).is_ok() {
            paths.insert((*name).to_string(), p.display().to_string());
        }
    }
    paths
}
