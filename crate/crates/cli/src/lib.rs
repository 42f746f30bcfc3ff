//! Command-line front end. [`run`] does all the work and returns the exit
//! code together with the text to print, so it can be tested in-process.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage, parse or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use manin_core::bialg;
use manin_core::dsl::{self, AlgebraFile};
use manin_core::gln;
use manin_core::manin::{self, ManinTriple};
use manin_core::verify::{self, CheckResult, VerificationReport};
use manin_core::{LieAlgebra, TwoTensor};

/// Environment variable selecting report verbosity: `quiet`, `normal`
/// (default) or `verbose`. Verbose output records timings and prints notes.
pub const VERBOSITY_VAR: &str = "MANIN_VERBOSITY";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verbosity {
    Quiet,
    #[default]
    Normal,
    Verbose,
}

impl Verbosity {
    pub fn from_env_value(value: Option<&str>) -> Verbosity {
        match value.map(str::trim) {
            Some("quiet") => Verbosity::Quiet,
            Some("verbose") => Verbosity::Verbose,
            _ => Verbosity::Normal,
        }
    }

    pub fn from_env() -> Verbosity {
        Self::from_env_value(std::env::var(VERBOSITY_VAR).ok().as_deref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: message.into() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "manin", version, about = "Exact checks for Manin triples, Drinfeld doubles and Lie bialgebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Jacobi identity of an algebra file.
    CheckJacobi { file: PathBuf },
    /// Build the double of two index-aligned paired algebras.
    Double {
        #[arg(long)]
        plus: PathBuf,
        #[arg(long)]
        minus: PathBuf,
    },
    /// Check the compatibility relations of two paired algebras.
    Compat {
        #[arg(long)]
        plus: PathBuf,
        #[arg(long)]
        minus: PathBuf,
    },
    /// Emit one of the gl(n) constructions.
    Gln {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        emit: Emit,
    },
    /// Run the full verification suite for gl(n) + t_n.
    Verify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    Splus,
    Sminus,
    Double,
    Delta,
    Rmatrix,
    Report,
}

struct Ctx {
    json: bool,
    verbosity: Verbosity,
    command: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, verbosity: Verbosity) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome { code: 0, stdout: text, stderr: String::new() } };
        }
    };
    let ctx = Ctx { json: cli.json, verbosity, command: argv.iter().skip(1).cloned().collect::<Vec<_>>().join(" ") };
    match cli.command {
        Command::CheckJacobi { file } => check_jacobi(&ctx, &file),
        Command::Double { plus, minus } => double(&ctx, &plus, &minus),
        Command::Compat { plus, minus } => compat(&ctx, &plus, &minus),
        Command::Gln { n, emit } => gln_emit(&ctx, n, emit),
        Command::Verify { n } => verify_cmd(&ctx, n),
    }
}

fn load(path: &Path) -> Result<AlgebraFile, Outcome> {
    let text = fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {}\n", path.display(), e)))?;
    dsl::parse_algebra_file(&text).map_err(|e| Outcome::usage(format!("{}:{}:{}: {}\n", path.display(), e.line, e.column, e.kind)))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, Outcome> {
    load(path)?.to_algebra().map_err(|e| Outcome::usage(format!("{}: {}\n", path.display(), e)))
}

fn load_pair(plus: &Path, minus: &Path) -> Result<ManinTriple, Outcome> {
    let (p, m) = (load_algebra(plus)?, load_algebra(minus)?);
    ManinTriple::new_unchecked(p, m).map_err(|e| Outcome::usage(format!("{}\n", e)))
}

fn finish(ctx: &Ctx, checks: Vec<CheckResult>) -> Outcome {
    finish_report(ctx, VerificationReport::new(&ctx.command, checks), None)
}

fn finish_report(ctx: &Ctx, report: VerificationReport, extra: Option<(&str, String, Value)>) -> Outcome {
    let code = if report.passed() { 0 } else { 1 };
    let stdout = if ctx.json {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        if let Some((key, _, data)) = &extra {
            value[*key] = data.clone();
        }
        serde_json::to_string_pretty(&value).expect("value serializes") + "\n"
    } else {
        let mut out = extra.map(|(_, text, _)| text).unwrap_or_default();
        let text = report.to_text(ctx.verbosity == Verbosity::Verbose);
        if ctx.verbosity == Verbosity::Quiet {
            out.push_str(text.lines().last().unwrap_or(""));
            out.push('\n');
        } else {
            out.push_str(&text);
        }
        out
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn timed(ctx: &Ctx, name: &str, report: &manin_core::ViolationReport, notes: Vec<String>, start: std::time::Instant) -> CheckResult {
    let mut c = CheckResult::from_report(name, report, notes);
    if ctx.verbosity == Verbosity::Verbose {
        c.millis = start.elapsed().as_millis() as u64;
    }
    c
}

fn check_jacobi(ctx: &Ctx, file: &Path) -> Outcome {
    let alg = match load_algebra(file) {
        Ok(a) => a,
        Err(o) => return o,
    };
    let start = std::time::Instant::now();
    let report = alg.check_jacobi();
    let check = timed(ctx, "jacobi", &report, vec![format!("dimension {}", alg.dim())], start);
    finish(ctx, vec![check])
}

fn compat_check(ctx: &Ctx, t: &ManinTriple) -> CheckResult {
    let start = std::time::Instant::now();
    match manin::check_compatibility(t.s_plus().tensor(), t.s_minus().tensor()) {
        Ok(report) => timed(ctx, "compatibility", &report, Vec::new(), start),
        Err(e) => {
            let report = std::iter::once(manin_core::Violation::scalar(Vec::new(), manin_core::Scalar::zero()).with_note(format!("error: {}", e))).collect();
            timed(ctx, "compatibility", &report, Vec::new(), start)
        }
    }
}

fn compat(ctx: &Ctx, plus: &Path, minus: &Path) -> Outcome {
    match load_pair(plus, minus) {
        Ok(t) => finish(ctx, vec![compat_check(ctx, &t)]),
        Err(o) => o,
    }
}

fn double(ctx: &Ctx, plus: &Path, minus: &Path) -> Outcome {
    let t = match load_pair(plus, minus) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let compat = compat_check(ctx, &t);
    let d = manin::build_double_unchecked(&t);
    let start = std::time::Instant::now();
    let jacobi = timed(ctx, "jacobi-double", &d.algebra().check_jacobi(), Vec::new(), start);
    let start = std::time::Instant::now();
    let iso = timed(ctx, "isotropy", &manin::check_isotropic_pairing(&d), Vec::new(), start);
    let file = AlgebraFile::from_algebra("double", d.algebra());
    let report = VerificationReport::new(&ctx.command, vec![compat, jacobi, iso]);
    finish_report(ctx, report, Some(("algebra", file.to_string(), algebra_json(&file))))
}

fn algebra_json(file: &AlgebraFile) -> Value {
    let brackets: Vec<Value> = file
        .brackets
        .iter()
        .map(|(&(p, q), v)| {
            let terms: Vec<Value> = v.iter().map(|(r, c)| json!({"label": file.basis[*r], "coeff": c.to_string()})).collect();
            json!({"left": file.basis[p], "right": file.basis[q], "value": terms})
        })
        .collect();
    json!({"name": file.name, "basis": file.basis, "brackets": brackets})
}

fn tensor_terms(labels: &[String], t: &TwoTensor) -> Vec<Value> {
    t.iter().map(|(&(a, b), c)| json!({"left": labels[a], "right": labels[b], "coeff": c.to_string()})).collect()
}

/// Wedge form `c*A^B` when `t` is antisymmetric, tensor form otherwise.
fn tensor_text(labels: &[String], t: &TwoTensor) -> String {
    if t.is_antisymmetric() {
        t.filter(|&(a, b)| a < b).render(|&(a, b)| format!("{}^{}", labels[a], labels[b]))
    } else {
        t.render(|&(a, b)| format!("{}(x){}", labels[a], labels[b]))
    }
}

fn gln_emit(ctx: &Ctx, n: usize, emit: Emit) -> Outcome {
    if emit == Emit::Report {
        return verify_cmd(ctx, n);
    }
    let built = (|| -> Result<(String, String, Value), gln::GlnError> {
        Ok(match emit {
            Emit::Splus | Emit::Sminus | Emit::Double => {
                let (name, alg) = match emit {
                    Emit::Splus => ("s_plus", gln::build_s_plus(n)?),
                    Emit::Sminus => ("s_minus", gln::build_s_minus(n)?),
                    _ => ("double", gln::build_gln_double(n)?.algebra().clone()),
                };
                let file = AlgebraFile::from_algebra(name, &alg);
                ("algebra".into(), file.to_string(), algebra_json(&file))
            }
            Emit::Delta => {
                let labels = gln::gln_labels(n);
                let delta = gln::gln_cocommutator(n)?;
                let mut text = String::new();
                let mut entries = Vec::new();
                for (p, label) in labels.iter().enumerate() {
                    let v = delta.get(p);
                    text.push_str(&format!("delta({}) = {}\n", label, tensor_text(&labels, &v)));
                    entries.push(json!({"generator": label, "terms": tensor_terms(&labels, &v)}));
                }
                ("delta".into(), text, json!({"basis": labels, "values": entries}))
            }
            Emit::Rmatrix => {
                let labels = gln::gln_labels(n);
                let r = gln::gln_rmatrix(n)?;
                let (r_s, r_t) = bialg::split_twist(n, &r)?;
                let text = format!(
                    "r_skew = {}\nr_s = {}\nr_t = {}\n",
                    tensor_text(&labels, &r),
                    tensor_text(&labels, &r_s),
                    tensor_text(&labels, &r_t)
                );
                let data = json!({
                    "basis": labels,
                    "r_skew": tensor_terms(&labels, &r),
                    "r_s": tensor_terms(&labels, &r_s),
                    "r_t": tensor_terms(&labels, &r_t),
                });
                ("rmatrix".into(), text, data)
            }
            Emit::Report => unreachable!(),
        })
    })();
    let (key, text, data) = match built {
        Ok(b) => b,
        Err(e) => return Outcome::usage(format!("{}\n", e)),
    };
    if ctx.json {
        let mut value = json!({
            "schema": verify::SCHEMA,
            "tool_version": verify::TOOL_VERSION,
            "command": ctx.command,
        });
        value[key.as_str()] = data;
        Outcome { code: 0, stdout: serde_json::to_string_pretty(&value).expect("value serializes") + "\n", stderr: String::new() }
    } else {
        Outcome { code: 0, stdout: text, stderr: String::new() }
    }
}

fn verify_cmd(ctx: &Ctx, n: usize) -> Outcome {
    let input = match verify::SuiteInput::gln(n) {
        Ok(i) => i,
        Err(e) => return Outcome::usage(format!("{}\n", e)),
    };
    let report = verify::run_suite(&ctx.command, &input, ctx.verbosity == Verbosity::Verbose);
    finish_report(ctx, report, None)
}
