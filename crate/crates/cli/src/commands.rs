//! Subcommand implementations. Every command returns its output instead of
//! printing, so the binary and the tests share one code path.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use graphstab_core::enumerator::{gf4_rank, macwilliams_dual};
use graphstab_core::statevec::{GramReport, ProjectorReport, StabilizerReport};
use graphstab_core::{
    build_code_state, build_extension_code_state, check_projector, check_stabilizer, flatten_graph,
    flatten_vector, gram_matrix, graph_to_stabilizer, min_distance, stabilizer_to_graph, symp_dual,
    to_gf4, trace_gram, verify_roundtrip, weight_distribution, Error, ExtensionBasis, GraphCode,
    Prime, StateVector, DEFAULT_BUDGET, DEFAULT_ORACLE_BUDGET,
};

use crate::dot::to_dot;
use crate::formats::{format_transcript, CodeFile, GramFile, GraphFile, ParseError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Tolerance for comparing extension-field states with their flattening.
const EXTENSION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "graphstab",
    version,
    about = "Convert between graph codes and stabilizer codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Codeword budget for enumeration, or amplitude budget for `check`.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the stabilizer of a graph code.
    Graph2stab {
        graph: PathBuf,
        /// Also print the GF(4) generator (p = 2 only).
        #[arg(long)]
        gf4: bool,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Build a graph code equivalent to a stabilizer code.
    Stab2graph {
        code: PathBuf,
        /// Write the graph file here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write a Graphviz rendering of the graph.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the isometry transcript.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Print the weight enumerator, its dual and the minimum distance.
    Enumerate { code: PathBuf },
    /// Verify a graph code numerically with dense state vectors.
    Check {
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Convert a code to a graph and verify the conversion certificate.
    Roundtrip { code: PathBuf },
}

/// Alphabet `F_{p^m}` for graph files; the default alphabet is `F_p`.
#[derive(Debug, Args)]
struct FieldArgs {
    /// File with the symmetric matrix of the bicharacter on F_p^m.
    #[arg(long, conflicts_with = "field")]
    gram: Option<PathBuf>,
    /// Coefficients c0 .. cm of the field polynomial, lowest degree first;
    /// uses the trace form.
    #[arg(long, allow_hyphen_values = true)]
    field: Option<String>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Parse(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

fn is_validation(e: &Error) -> bool {
    matches!(
        e,
        Error::NotSelfOrthogonal(..)
            | Error::AsymmetricAdjacency(..)
            | Error::NonZeroDiagonal(_)
            | Error::NonZeroInputBlock(..)
            | Error::RankDeficientB { .. }
            | Error::DegenerateForm { .. }
            | Error::AsymmetricForm
            | Error::ReduciblePolynomial { .. }
            | Error::InvalidPolynomial(_)
            | Error::WrongCharacteristic(_)
            | Error::ModulusMismatch { .. }
            | Error::DimensionMismatch(_)
    )
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        let (stderr, code) = match self {
            Failure::Parse(msg) => (format!("parse error: {msg}\n"), EXIT_PARSE),
            Failure::Io(msg) => (format!("error: {msg}\n"), EXIT_FAIL),
            Failure::Core(e) => {
                let code = if is_validation(&e) {
                    EXIT_INVALID
                } else {
                    EXIT_FAIL
                };
                (format!("error: {}: {e}\n", e.kind()), code)
            }
        };
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

struct Report {
    text: String,
    json: serde_json::Value,
    passed: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_PARSE,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_PASS,
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Graph2stab { graph, gf4, field } => graph2stab(graph, *gf4, field),
        Command::Stab2graph {
            code,
            output,
            dot,
            transcript,
        } => stab2graph(
            code,
            output.as_deref(),
            dot.as_deref(),
            transcript.as_deref(),
        ),
        Command::Enumerate { code } => enumerate(code, cli.budget.unwrap_or(DEFAULT_BUDGET)),
        Command::Check { graph, field } => {
            check(graph, field, cli.budget.unwrap_or(DEFAULT_ORACLE_BUDGET))
        }
        Command::Roundtrip { code } => roundtrip(code, cli.budget.unwrap_or(DEFAULT_BUDGET)),
    };
    match result {
        Ok(report) => Outcome {
            stdout: if cli.json {
                format!("{:#}\n", report.json)
            } else {
                report.text
            },
            stderr: String::new(),
            code: if report.passed { EXIT_PASS } else { EXIT_FAIL },
        },
        Err(f) => f.into_outcome(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<GraphCode, Failure> {
    Ok(GraphFile::parse(&read(path)?)?.to_graph()?)
}

fn load_code(path: &Path) -> Result<graphstab_core::SymplecticCode, Failure> {
    Ok(CodeFile::parse(&read(path)?)?.to_code()?)
}

fn load_basis(p: Prime, field: &FieldArgs) -> Result<Option<ExtensionBasis>, Failure> {
    if let Some(path) = &field.gram {
        let gram = GramFile::parse(&read(path)?)?;
        if gram.p != p {
            return Err(Error::ModulusMismatch {
                left: p.get(),
                right: gram.p.get(),
            }
            .into());
        }
        return Ok(Some(gram.to_basis()?));
    }
    if let Some(text) = &field.field {
        let coeffs = text
            .split_whitespace()
            .map(str::parse::<i64>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Parse(format!("--field expects integers, got {text:?}")))?;
        if coeffs.len() < 2 {
            return Err(Failure::Parse(
                "--field needs at least two coefficients".into(),
            ));
        }
        return Ok(Some(trace_gram(p, coeffs.len() - 1, &coeffs)?));
    }
    Ok(None)
}

fn digits(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn pauli_label(a: &[u32], d: &[u32]) -> String {
    a.iter()
        .zip(d)
        .map(|pair| match pair {
            (0, 0) => 'I',
            (_, 0) => 'X',
            (0, _) => 'Z',
            _ => 'Y',
        })
        .collect()
}

fn graph2stab(path: &Path, gf4: bool, field: &FieldArgs) -> Result<Report, Failure> {
    let mut g = load_graph(path)?;
    let mut text = String::new();
    if let Some(basis) = load_basis(g.prime(), field)? {
        g = flatten_graph(&g, &basis)?;
        text.push_str(&format!(
            "flattened to p={} k={} n={}\n",
            g.prime(),
            g.k(),
            g.n()
        ));
    }
    let stab = graph_to_stabilizer(&g)?;
    let p = g.prime();
    let mut gens = Vec::new();
    text.push_str(&format!("generators {}\n", stab.gens.len()));
    for (i, gen) in stab.gens.iter().enumerate() {
        let label = if p.get() == 2 {
            pauli_label(&gen.vector.a, &gen.vector.d)
        } else {
            format!("g{}", i + 1)
        };
        text.push_str(&format!(
            "{label}: {} | {}, phase {}\n",
            digits(&gen.vector.a),
            digits(&gen.vector.d),
            gen.phase_exp.value()
        ));
        gens.push(json!({
            "label": label,
            "x": gen.vector.a,
            "z": gen.vector.d,
            "phase": gen.phase_exp.value(),
        }));
    }
    let file = CodeFile::from_code(&stab.code);
    text.push_str(&file.to_string());
    let mut json = json!({
        "p": p.get(),
        "k": g.k(),
        "n": g.n(),
        "generators": gens,
        "generator_matrix": file.rows,
    });
    if gf4 {
        let rows = to_gf4(&stab.code)?;
        let rank = gf4_rank(&rows);
        let printed: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        text.push_str("gf4\n");
        for r in &printed {
            text.push_str(&r.join(" "));
            text.push('\n');
        }
        text.push_str(&format!("gf4_rank {rank}\n"));
        json["gf4"] = json!(printed);
        json["gf4_rank"] = json!(rank);
    }
    Ok(Report {
        text,
        json,
        passed: true,
    })
}

fn stab2graph(
    path: &Path,
    output: Option<&Path>,
    dot: Option<&Path>,
    transcript: Option<&Path>,
) -> Result<Report, Failure> {
    let code = load_code(path)?;
    let conv = stabilizer_to_graph(&code)?;
    let graph_text = GraphFile::from_graph(&conv.graph).to_string();
    if let Some(path) = dot {
        write(path, &to_dot(&conv.graph))?;
    }
    if let Some(path) = transcript {
        write(path, &format_transcript(&conv.transcript))?;
    }
    let text = match output {
        Some(path) => {
            write(path, &graph_text)?;
            String::new()
        }
        None => graph_text.clone(),
    };
    Ok(Report {
        text,
        json: json!({
            "k": conv.graph.k(),
            "n": conv.graph.n(),
            "graph": graph_text,
            "transcript_moves": conv.transcript.len(),
        }),
        passed: true,
    })
}

fn enumerate(path: &Path, budget: u64) -> Result<Report, Failure> {
    let code = load_code(path)?;
    let distance = min_distance(&code, budget)?;
    let w = weight_distribution(&code, budget)?;
    let dual = weight_distribution(&symp_dual(&code), budget)?;
    let predicted = macwilliams_dual(&w, code.n(), code.prime().get(), code.dim())?;
    let consistent = predicted == dual;
    let mut text = format!("W(x,y) = {w}\nW_dual(x,y) = {dual}\nd = {distance}\n");
    if !consistent {
        text.push_str(&format!(
            "MacWilliams mismatch: transform gives {predicted}\n"
        ));
    }
    Ok(Report {
        text,
        json: json!({
            "weight_enumerator": w.coeffs(),
            "polynomial": w.to_string(),
            "dual_enumerator": dual.coeffs(),
            "dual_polynomial": dual.to_string(),
            "min_distance": distance,
            "macwilliams_consistent": consistent,
        }),
        passed: consistent,
    })
}

#[derive(Serialize)]
struct ExtensionReport {
    states: usize,
    max_deviation: f64,
    tolerance: f64,
    passed: bool,
}

fn extension_consistency(
    g: &GraphCode,
    flat: &GraphCode,
    basis: &ExtensionBasis,
    budget: u64,
) -> Result<ExtensionReport, Failure> {
    let p = g.prime();
    let m = basis.degree();
    let count = (p.get() as u64)
        .checked_pow((m * g.k()) as u32)
        .filter(|&c| c <= budget)
        .ok_or(Error::OracleBudgetExceeded {
            required: (p.get() as u128).saturating_pow((m * g.k()) as u32),
            budget,
        })?;
    let mut max_deviation: f64 = 0.0;
    for idx in 0..count as usize {
        let digits = StateVector::digits_of(p, m * g.k(), idx);
        let x: Vec<Vec<u32>> = digits.chunks(m).map(<[u32]>::to_vec).collect();
        let flat_x = flatten_vector(&x, basis)?;
        let direct = build_extension_code_state(g, basis, &x, budget)?;
        let via_flat = build_code_state(flat, &flat_x, budget)?;
        max_deviation = max_deviation.max(direct.max_deviation(&via_flat)?);
    }
    Ok(ExtensionReport {
        states: count as usize,
        max_deviation,
        tolerance: EXTENSION_TOLERANCE,
        passed: max_deviation < EXTENSION_TOLERANCE,
    })
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn check(path: &Path, field: &FieldArgs, budget: u64) -> Result<Report, Failure> {
    let original = load_graph(path)?;
    let basis = load_basis(original.prime(), field)?;
    let g = match &basis {
        Some(b) => flatten_graph(&original, b)?,
        None => original.clone(),
    };
    g.validate()?;
    let gram = GramReport::from(&gram_matrix(&g, budget)?);
    let stab: StabilizerReport = check_stabilizer(&g, budget)?;
    let proj: ProjectorReport = check_projector(&g, budget)?;
    let mut text = format!(
        "gram_matrix: {} (size {}, max deviation {:.3e})\n\
         stabilizer: {} ({} generators on {} states, max deviation {:.3e})\n\
         projector: {} (group size {}, trace {:.6}{:+.6}i, expected {})\n",
        verdict(gram.passed),
        gram.size,
        gram.identity_deviation,
        verdict(stab.passed),
        stab.generators,
        stab.states,
        stab.max_deviation,
        verdict(proj.passed),
        proj.group_size,
        proj.trace.re,
        proj.trace.im,
        proj.expected_trace,
    );
    let mut passed = gram.passed && stab.passed && proj.passed;
    let mut json = json!({
        "gram_matrix": gram,
        "stabilizer": stab,
        "projector": proj,
    });
    if let Some(b) = &basis {
        let ext = extension_consistency(&original, &g, b, budget)?;
        text.push_str(&format!(
            "extension: {} ({} states, max deviation {:.3e})\n",
            verdict(ext.passed),
            ext.states,
            ext.max_deviation
        ));
        passed &= ext.passed;
        json["extension"] = json!(ext);
    }
    text.push_str(&format!("result: {}\n", verdict(passed)));
    json["passed"] = json!(passed);
    Ok(Report { text, json, passed })
}

fn roundtrip(path: &Path, budget: u64) -> Result<Report, Failure> {
    let code = load_code(path)?;
    let conv = stabilizer_to_graph(&code)?;
    let report = verify_roundtrip(&code, &conv, budget)?;
    let text = format!(
        "graph: k={} n={}, {} transcript moves\n\
         row_space_equal: {}\n\
         enumerator_equal: {} ({})\n\
         result: {}\n",
        conv.graph.k(),
        conv.graph.n(),
        conv.transcript.len(),
        verdict(report.row_space_equal),
        verdict(report.enumerator_equal),
        report.graph_enumerator,
        verdict(report.passed()),
    );
    Ok(Report {
        text,
        json: json!({
            "k": conv.graph.k(),
            "n": conv.graph.n(),
            "report": report,
            "passed": report.passed(),
        }),
        passed: report.passed(),
    })
}
