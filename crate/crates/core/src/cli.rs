//! The `ekq` command line: argument parsing, JSON reports and exit codes.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage, 3 malformed or unreadable input,
//! 4 unknown basis label, 5 unsupported truncation order, 6 invalid structure, 7 internal error.

use crate::acyc::{evaluate, parse, Structure};
use crate::bialg::{check_lie_bialgebra, BialgebraFile, LieBialgebra, FAMILIES};
use crate::ekq::{series_witness, show_element, show_tensor, QuantizedDouble, QuantizedUea, DEFAULT_DUAL_BOUND};
use crate::error::{EkqError, Result};
use crate::kernel::{Word, ORDER};
use crate::manin::{build_double, check_cybe, dual_double_mismatches};
use crate::pbw::normal_words;
use crate::report::Check;
use crate::selftest::{run_criterion, summary_line, CRITERIA};
use crate::serial::{basis_tensor_series_record, element_series_record, tensor_series_record};
use crate::ybq::{quantize_quasitriangular, quantize_r, AssocFile, Matrix, MatrixFile};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "ekq", version, about = "Exact quantization of Lie bialgebras modulo h^3")]
pub struct Cli {
    /// Number of series coefficients to emit (h^0 .. h^{order-1}); at most 3.
    #[arg(long, global = true, default_value_t = ORDER, value_parser = positive)]
    pub order: usize,
    /// product/coproduct: dual-word bound for the intertwiners (default 2).
    /// double/rmatrix/polarize/quantize-qt: PBW degree of the words checked (default 1).
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// No summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Add wall-clock timing to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the four identity families of a Lie bialgebra.
    Check { bialgebra: PathBuf },
    /// Build the double a ⊕ a* with its pairing, r and Ω.
    Double { bialgebra: PathBuf },
    /// The quantized product x∘y in U_h(a). Words are labels or 1-based indices joined by `*`; `""` is the unit.
    Product {
        bialgebra: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The quantized coproduct Δ(x) in U_h(a).
    Coproduct {
        bialgebra: PathBuf,
        #[arg(long)]
        x: String,
    },
    /// The universal R-matrix and twist of the quantized double.
    Rmatrix { bialgebra: PathBuf },
    /// R̃ from the Verma module picture, compared with R.
    Polarize { bialgebra: PathBuf },
    /// Quantize a classical r-matrix in an associative algebra.
    QuantizeR {
        algebra: PathBuf,
        #[arg(long)]
        r: PathBuf,
    },
    /// Quantize a quasitriangular Lie bialgebra (a, r).
    QuantizeQt {
        bialgebra: PathBuf,
        #[arg(long)]
        r: PathBuf,
    },
    /// Evaluate an acyclic expression on a structure.
    Eval { expr: PathBuf, structure: PathBuf },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long, value_parser = criterion_id)]
        criterion: Option<usize>,
    },
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn criterion_id(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if (1..=CRITERIA.len()).contains(&v) => Ok(v),
        _ => Err(format!("criteria are numbered 1 to {}", CRITERIA.len())),
    }
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub phases: Vec<(String, f64)>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

pub fn exit_code(e: &EkqError) -> i32 {
    match e {
        EkqError::Malformed(_) | EkqError::Io { .. } | EkqError::Syntax { .. } | EkqError::Arity { .. } => 3,
        EkqError::UnknownLabel(_) => 4,
        EkqError::Order(_) => 5,
        EkqError::Invalid(_) | EkqError::Dimension(_) | EkqError::Bound(_) => 6,
        EkqError::Internal(_) => 7,
    }
}

/// Collects every input byte that determines the output.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new(command: &str, order: usize, bound: Option<usize>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(format!("{command}\0order={order}\0bound={bound:?}\0"));
        Inputs { hasher }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).map_err(|e| EkqError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        self.hasher.update(text.len().to_le_bytes());
        self.hasher.update(&text);
        Ok(text)
    }

    fn arg(&mut self, name: &str, value: &str) {
        self.hasher.update(format!("{name}={value}\0"));
    }

    fn digest(self) -> String {
        format!("{:x}", self.hasher.finalize())
    }
}

fn json_err(e: serde_json::Error) -> EkqError {
    EkqError::Malformed(e.to_string())
}

fn read_bialgebra(inputs: &mut Inputs, path: &Path) -> Result<LieBialgebra> {
    let file: BialgebraFile = serde_json::from_str(&inputs.read(path)?).map_err(json_err)?;
    file.to_bialgebra()
}

fn read_matrix(inputs: &mut Inputs, path: &Path, basis: &[String]) -> Result<Matrix> {
    let file: MatrixFile = serde_json::from_str(&inputs.read(path)?).map_err(json_err)?;
    file.to_matrix(basis)
}

/// `a1*a2`, `a1 a2` or `1*2`; the empty string is the unit.
pub fn parse_word(basis: &[String], text: &str) -> Result<Word> {
    text.split(|c: char| c == '*' || c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| crate::bialg::resolve(basis, &crate::bialg::IndexRef::Label(t.to_string())).map(|i| i as u8))
        .collect()
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| EkqError::Internal(e.to_string()))
}

fn words_up_to(dim: usize, d: usize) -> Vec<Word> {
    let letters: Vec<u8> = (0..dim as u8).collect();
    (0..=d).flat_map(|k| normal_words(&letters, k)).collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StructureFile {
    Cyba { algebra: AssocFile, r: MatrixFile },
    Quasitriangular { bialgebra: BialgebraFile, r: MatrixFile },
    Bialgebra(BialgebraFile),
}

struct Outcome {
    result: Option<Value>,
    checks: Vec<Check>,
    phases: Vec<(String, f64)>,
}

impl Outcome {
    fn new(result: Value, checks: Vec<Check>) -> Self {
        Outcome { result: Some(result), checks, phases: Vec::new() }
    }
}

fn check_cmd(inputs: &mut Inputs, path: &Path) -> Result<Outcome> {
    let file: BialgebraFile = serde_json::from_str(&inputs.read(path)?).map_err(json_err)?;
    let (names, c, f) = file.tables()?;
    let rep = check_lie_bialgebra(names.len(), &c, &f)?;
    let anchors = [
        "[x,y] = −[y,x] and δ lands in Λ²a",
        "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0",
        "the dual bracket from δ satisfies Jacobi",
        "δ([x,y]) = x·δ(y) − y·δ(x)",
    ];
    let checks = FAMILIES
        .iter()
        .zip(anchors)
        .map(|(fam, anchor)| {
            let w = rep.violations.iter().find(|v| v.family == *fam).map(|v| format!("at {:?}: {}", v.indices, v.residual));
            Check::from_residual(*fam, anchor, w)
        })
        .collect();
    Ok(Outcome::new(json!({ "dim": names.len(), "basis": names, "violations": rep.violations }), checks))
}

fn double_cmd(inputs: &mut Inputs, path: &Path) -> Result<Outcome> {
    let a = read_bialgebra(inputs, path)?;
    let d = build_double(&a)?;
    let res = check_cybe(&d.r_matrix(), &d)?;
    let names = d.lie().names().to_vec();
    let dual = crate::bialg::dualize(&a).and_then(|b| build_double(&b)).map(|dd| dual_double_mismatches(&d, &dd))?;
    let checks = vec![
        Check::from_residual("double-invariants", "Jacobi, invariant pairing, invariant Ω, δ_g = dr", d.invariant_failures().first().cloned()),
        Check::from_residual("cybe", "[r12,r13] + [r12,r23] + [r13,r23] = 0", (!res.is_empty()).then(|| show_tensor(&names, &res))),
        Check::from_residual("dual-double", "the double of a* is the double of a with the halves swapped", dual.first().cloned()),
    ];
    Ok(Outcome::new(to_value(&d.record())?, checks))
}

fn product_cmd(inputs: &mut Inputs, cli: &Cli, path: &Path, x: &str, y: &str) -> Result<Outcome> {
    let a = read_bialgebra(inputs, path)?;
    inputs.arg("x", x);
    inputs.arg("y", y);
    let u = QuantizedUea::new(&a, cli.degree_bound.unwrap_or(DEFAULT_DUAL_BOUND))?;
    let names = a.names().to_vec();
    let (wx, wy) = (parse_word(&names, x)?, parse_word(&names, y)?);
    let (ex, ey) = (u.env_a.normal_order(&wx)?, u.env_a.normal_order(&wy)?);
    let s = u.product(&ex, &ey)?;
    let classical = u.env_a.multiply(&ex, &ey);
    let low = (s.coeff(0) != &classical || !s.coeff(1).is_empty()).then(|| format!("h^0 {}, h^1 {}", show_element(&names, s.coeff(0)), show_element(&names, s.coeff(1))));
    let checks = vec![Check::from_residual("product-classical", "x∘y ≡ xy mod h²", low)];
    Ok(Outcome::new(to_value(&element_series_record(&names, &s, cli.order))?, checks))
}

fn coproduct_cmd(inputs: &mut Inputs, cli: &Cli, path: &Path, x: &str) -> Result<Outcome> {
    let a = read_bialgebra(inputs, path)?;
    inputs.arg("x", x);
    let u = QuantizedUea::new(&a, cli.degree_bound.unwrap_or(DEFAULT_DUAL_BOUND))?;
    let names = a.names().to_vec();
    let ex = u.env_a.normal_order(&parse_word(&names, x)?)?;
    let d = u.coproduct(&ex)?;
    let d0 = u.env_a.delta0(&ex, 2)?;
    let cl = (d.coeff(0) != &d0).then(|| show_tensor(&names, d.coeff(0)));
    let checks = vec![Check::from_residual("coproduct-classical", "Δ ≡ Δ₀ mod h", cl)];
    Ok(Outcome::new(to_value(&tensor_series_record(&names, &d, cli.order))?, checks))
}

fn rmatrix_cmd(inputs: &mut Inputs, cli: &Cli, path: &Path) -> Result<Outcome> {
    let a = read_bialgebra(inputs, path)?;
    let q = QuantizedDouble::new(&a)?;
    let names = q.double.lie().names().to_vec();
    let checks = q.tq.quasitriangular_suite(&words_up_to(q.double.dim(), cli.degree_bound.unwrap_or(1)))?;
    let result = json!({
        "r_matrix": tensor_series_record(&names, &q.tq.rmat, cli.order),
        "twist": tensor_series_record(&names, &q.tq.j, cli.order),
    });
    Ok(Outcome::new(result, checks))
}

fn polarize_cmd(inputs: &mut Inputs, cli: &Cli, path: &Path) -> Result<Outcome> {
    let a = read_bialgebra(inputs, path)?;
    let q = QuantizedDouble::new(&a)?;
    let names = q.double.lie().names().to_vec();
    let rt = q.polarize_r()?;
    let mut checks = vec![Check::from_residual("r-tilde-equals-r", "R̃ = R mod h³", series_witness(&rt.sub(&q.tq.rmat), |x| show_tensor(&names, x)))];
    checks.extend(q.part1_product_check(cli.degree_bound.unwrap_or(1))?);
    Ok(Outcome::new(to_value(&tensor_series_record(&names, &rt, cli.order))?, checks))
}

fn quantize_r_cmd(inputs: &mut Inputs, cli: &Cli, alg: &Path, r: &Path) -> Result<Outcome> {
    let file: AssocFile = serde_json::from_str(&inputs.read(alg)?).map_err(json_err)?;
    let a = file.to_algebra()?;
    let r = read_matrix(inputs, r, a.names())?;
    let q = quantize_r(&a, &r)?;
    let result = json!({ "rank": q.rs.rank(), "r_matrix": basis_tensor_series_record(a.names(), &q.r, cli.order) });
    Ok(Outcome::new(result, q.checks))
}

fn quantize_qt_cmd(inputs: &mut Inputs, cli: &Cli, path: &Path, r: &Path) -> Result<Outcome> {
    let a = read_bialgebra(inputs, path)?;
    let r = read_matrix(inputs, r, a.names())?;
    let q = quantize_quasitriangular(&a, &r, cli.degree_bound.unwrap_or(1))?;
    let names = a.names().to_vec();
    let result = json!({
        "rank": q.rs.rank(),
        "r_matrix": tensor_series_record(&names, &q.tq.rmat, cli.order),
        "twist": tensor_series_record(&names, &q.tq.j, cli.order),
    });
    Ok(Outcome::new(result, q.checks))
}

fn eval_cmd(inputs: &mut Inputs, expr: &Path, structure: &Path) -> Result<Outcome> {
    let e = parse(&inputs.read(expr)?)?;
    let (m, n) = e.arity()?;
    let file: StructureFile = serde_json::from_str(&inputs.read(structure)?).map_err(json_err)?;
    let t = match file {
        StructureFile::Bialgebra(b) => evaluate(&e, &Structure::Bialgebra(&b.to_bialgebra()?))?,
        StructureFile::Quasitriangular { bialgebra, r } => {
            let g = bialgebra.to_bialgebra()?;
            let r = r.to_matrix(g.names())?;
            evaluate(&e, &Structure::Quasitriangular(&g.lie(), &r))?
        }
        StructureFile::Cyba { algebra, r } => {
            let a = algebra.to_algebra()?;
            let r = r.to_matrix(a.names())?;
            evaluate(&e, &Structure::Cyba(&a, &r))?
        }
    };
    Ok(Outcome::new(json!({ "expression": e.to_string(), "arity": [m, n], "tensor": to_value(&t)? }), Vec::new()))
}

fn selftest_cmd(cli: &Cli, only: Option<usize>) -> Outcome {
    let started = Instant::now();
    let ids: Vec<usize> = match only {
        Some(i) => vec![i],
        None => (1..=CRITERIA.len()).collect(),
    };
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    let mut phases = Vec::new();
    for id in ids {
        let r = run_criterion(id, started);
        if !cli.quiet {
            eprintln!("{}", summary_line(&r));
        }
        summary.push(json!({ "id": r.id, "title": r.title, "passed": r.passed(), "checks": r.checks.len() }));
        phases.push((format!("criterion {id}"), r.seconds));
        checks.extend(r.checks.into_iter().map(|c| Check { name: format!("c{id}/{}", c.name), ..c }));
    }
    Outcome { result: Some(Value::Array(summary)), checks, phases }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Double { .. } => "double",
        Command::Product { .. } => "product",
        Command::Coproduct { .. } => "coproduct",
        Command::Rmatrix { .. } => "rmatrix",
        Command::Polarize { .. } => "polarize",
        Command::QuantizeR { .. } => "quantize-r",
        Command::QuantizeQt { .. } => "quantize-qt",
        Command::Eval { .. } => "eval",
        Command::Selftest { .. } => "selftest",
    }
}

/// Execute a parsed command line and build its report.
pub fn execute(cli: &Cli) -> Result<Report> {
    if cli.order > ORDER {
        return Err(EkqError::Order(cli.order));
    }
    let started = Instant::now();
    let name = command_name(&cli.command);
    let mut inputs = Inputs::new(name, cli.order, cli.degree_bound);
    let out = match &cli.command {
        Command::Check { bialgebra } => check_cmd(&mut inputs, bialgebra)?,
        Command::Double { bialgebra } => double_cmd(&mut inputs, bialgebra)?,
        Command::Product { bialgebra, x, y } => product_cmd(&mut inputs, cli, bialgebra, x, y)?,
        Command::Coproduct { bialgebra, x } => coproduct_cmd(&mut inputs, cli, bialgebra, x)?,
        Command::Rmatrix { bialgebra } => rmatrix_cmd(&mut inputs, cli, bialgebra)?,
        Command::Polarize { bialgebra } => polarize_cmd(&mut inputs, cli, bialgebra)?,
        Command::QuantizeR { algebra, r } => quantize_r_cmd(&mut inputs, cli, algebra, r)?,
        Command::QuantizeQt { bialgebra, r } => quantize_qt_cmd(&mut inputs, cli, bialgebra, r)?,
        Command::Eval { expr, structure } => eval_cmd(&mut inputs, expr, structure)?,
        Command::Selftest { criterion } => {
            inputs.arg("criterion", &format!("{criterion:?}"));
            selftest_cmd(cli, *criterion)
        }
    };
    let timing = cli.timing.then(|| Timing { total_seconds: started.elapsed().as_secs_f64(), phases: out.phases });
    Ok(Report { command: name.to_string(), inputs_digest: inputs.digest(), result: out.result, checks: out.checks, timing })
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| EkqError::Internal(e.to_string()))?;
    text.push('\n');
    match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(|e| EkqError::Io { path: p.display().to_string(), msg: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parse, run and report; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match execute(&cli).and_then(|r| emit(&cli, &r).map(|_| r)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if !cli.quiet {
        let failed: Vec<&Check> = report.checks.iter().filter(|c| !c.passed()).collect();
        eprintln!("{}: {}/{} checks pass", report.command, report.checks.len() - failed.len(), report.checks.len());
        for c in failed {
            eprintln!("  FAIL {}: {}", c.name, c.residual.as_deref().unwrap_or(""));
        }
    }
    if report.passed() {
        0
    } else {
        1
    }
}

