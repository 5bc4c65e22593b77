//! Command-line front end and the JSON model format.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};
use thiserror::Error;

use crate::abelian::{format_invariants, GroupElement, GroupPresentation};
use crate::filtration::{gamma_filtration, witt_filtration, FiltrationResult, DEFAULT_MAX_DEGREE, DEFAULT_WINDOW};
use crate::lambdaring::{validate_model, verify_special_basis, ModelError, MulEntry, Report, RingModel};
use crate::milnor::{check_identities, MAX_VARIABLES};
use crate::models::{Base, BuiltinSpec};
use crate::series::DEFAULT_TRUNCATION;
use crate::symfunc::MAX_PRODUCT_DEGREE;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("model `{name}` fails validation: {check}: {detail}")]
    Invalid { name: String, check: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } | CliError::Model(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

/// On-disk form of a [`RingModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub basis: Vec<String>,
    pub orders: Vec<Number>,
    pub unit: Vec<Number>,
    pub augmentation: Vec<Number>,
    /// `[i, j, product]` with `i ≤ j`; omitted products are zero.
    pub mul: Vec<(usize, usize, Vec<Number>)>,
    /// `λ¹, λ², …` of each basis label; omitted degrees are zero.
    pub lambda: BTreeMap<String, Vec<Vec<Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic: Option<Vec<Vec<Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

fn to_number(x: &BigInt) -> Number {
    x.to_string().parse().expect("integers are valid JSON numbers")
}

fn to_numbers(v: &[BigInt]) -> Vec<Number> {
    v.iter().map(to_number).collect()
}

fn element_json(x: &GroupElement) -> Vec<Number> {
    to_numbers(x.coeffs())
}

impl ModelFile {
    pub fn from_model(m: &RingModel) -> Self {
        let n = m.rank();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in i..n {
                let p = m.structure_constant(i, j);
                if !p.is_zero() {
                    mul.push((i, j, element_json(p)));
                }
            }
        }
        let lambda = (0..n)
            .map(|i| (m.group().names()[i].clone(), m.lambda_of_basis(i).iter().map(element_json).collect()))
            .collect();
        ModelFile {
            name: m.name().to_string(),
            basis: m.group().names().to_vec(),
            orders: to_numbers(m.group().orders()),
            unit: element_json(m.unit()),
            augmentation: to_numbers(m.augmentation()),
            mul,
            lambda,
            hyperbolic: m.hyperbolic().map(|hs| hs.iter().map(element_json).collect()),
            truncation: Some(m.truncation()),
        }
    }

    /// Builds the model without checking ring identities.
    pub fn to_model(&self) -> Result<RingModel, String> {
        let int = |x: &Number, what: &str| -> Result<BigInt, String> {
            x.to_string().parse::<BigInt>().map_err(|_| format!("{}: `{}` is not an integer", what, x))
        };
        let ints = |v: &[Number], what: &str| -> Result<Vec<BigInt>, String> {
            v.iter().enumerate().map(|(i, x)| int(x, &format!("{}[{}]", what, i))).collect()
        };
        let n = self.basis.len();
        if self.orders.len() != n {
            return Err(format!("orders: {} entries for {} basis labels", self.orders.len(), n));
        }
        let group = GroupPresentation::new(self.basis.clone(), ints(&self.orders, "orders")?).map_err(|e| format!("orders: {}", e))?;
        let elem = |v: &[Number], what: &str| -> Result<GroupElement, String> {
            group.element(ints(v, what)?).map_err(|e| format!("{}: {}", what, e))
        };
        let unit = elem(&self.unit, "unit")?;
        let mut mul = Vec::with_capacity(self.mul.len());
        for (k, (i, j, p)) in self.mul.iter().enumerate() {
            let what = format!("mul[{}]", k);
            if i > j {
                return Err(format!("{}: expected i ≤ j, got [{}, {}]", what, i, j));
            }
            if *j >= n {
                return Err(format!("{}: basis index {} out of range", what, j));
            }
            mul.push(MulEntry { i: *i, j: *j, product: elem(p, &what)? });
        }
        for label in self.lambda.keys() {
            if !self.basis.contains(label) {
                return Err(format!("lambda: unknown basis label `{}`", label));
            }
        }
        let mut lambdas = Vec::with_capacity(n);
        for label in &self.basis {
            let series = self.lambda.get(label).ok_or_else(|| format!("lambda: missing series for `{}`", label))?;
            let mut out = Vec::with_capacity(series.len());
            for (k, x) in series.iter().enumerate() {
                out.push(elem(x, &format!("lambda.{}[{}]", label, k))?);
            }
            lambdas.push(out);
        }
        let hyperbolic = match &self.hyperbolic {
            None => None,
            Some(hs) => Some(
                hs.iter().enumerate().map(|(k, h)| elem(h, &format!("hyperbolic[{}]", k))).collect::<Result<Vec<_>, _>>()?,
            ),
        };
        RingModel::new(
            self.name.clone(),
            group,
            unit,
            mul,
            ints(&self.augmentation, "augmentation")?,
            lambdas,
            hyperbolic,
            self.truncation.unwrap_or(DEFAULT_TRUNCATION),
        )
        .map_err(|e| e.to_string())
    }
}

/// Deterministic JSON text: sorted keys, two-space indentation, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn emit_model(m: &RingModel) -> String {
    to_canonical_json(&ModelFile::from_model(m))
}

/// Parses model text without validation.
pub fn parse_model_str(text: &str, origin: &str) -> Result<RingModel, CliError> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse { path: origin.to_string(), message: e.to_string() })?;
    file.to_model().map_err(|message| CliError::Parse { path: origin.to_string(), message })
}

fn require_valid(m: RingModel) -> Result<RingModel, CliError> {
    let report = validate_model(&m);
    match report.first_failure() {
        None => Ok(m),
        Some(c) => Err(CliError::Invalid { name: m.name().to_string(), check: c.name.clone(), detail: c.detail.clone() }),
    }
}

/// Reads and validates a model file.
pub fn parse_model(path: &Path) -> Result<RingModel, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    require_valid(parse_model_str(&text, &path.display().to_string())?)
}

#[derive(Debug, Parser)]
#[command(name = "lambdagw", version, about = "Exact λ-ring and γ-filtration computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct BuiltinArgs {
    /// Projective dimension for gw_projective.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Base field, C or R.
    #[arg(long, default_value = "C")]
    base: String,
    /// Adams exponent for gw_punctured_a5.
    #[arg(long, default_value_t = 3)]
    f: usize,
    /// Number of Z/2 summands of Pic(C)[2] for gw_surface_cxp1.
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Degree up to which λ-series are stored.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
}

impl BuiltinArgs {
    fn spec(&self, name: &str) -> Result<BuiltinSpec, CliError> {
        let base: Base = self.base.parse().map_err(|e: ModelError| CliError::Usage(e.to_string()))?;
        let spec = BuiltinSpec::parse(name, base).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(BuiltinSpec { r: self.r, f: self.f, s: self.s, truncation: self.truncation, ..spec })
    }

    fn build(&self, name: &str) -> Result<RingModel, CliError> {
        self.spec(name)?.build().map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a builtin model as JSON.
    Builtin {
        name: String,
        #[command(flatten)]
        params: BuiltinArgs,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the model identities.
    Validate {
        /// Model file or `builtin:<name>`.
        model: String,
        #[command(flatten)]
        params: BuiltinArgs,
    },
    /// Compute the γ-filtration and its graded pieces.
    Filtration {
        model: String,
        #[command(flatten)]
        params: BuiltinArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        /// Push the filtration to the quotient by hyperbolic classes.
        #[arg(long)]
        witt: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the λ-ring axioms on all pairs of basis generators.
    Special {
        model: String,
        #[command(flatten)]
        params: BuiltinArgs,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Check the mod-2 Stiefel–Whitney identities.
    Milnor {
        #[arg(long)]
        n: usize,
    },
}

fn load(model: &str, params: &BuiltinArgs) -> Result<RingModel, CliError> {
    match model.strip_prefix("builtin:") {
        Some(name) => require_valid(params.build(name)?),
        None => parse_model(Path::new(model)),
    }
}

fn print_report(out: &mut dyn Write, report: &Report) -> std::io::Result<()> {
    for c in &report.checks {
        if c.passed {
            writeln!(out, "PASS {}", c.name)?;
        } else {
            writeln!(out, "FAIL {}: {}", c.name, c.detail)?;
        }
    }
    Ok(())
}

fn filtration_json(m_name: &str, f: &FiltrationResult, witt: bool) -> Value {
    let pieces: Vec<Value> = (0..=f.kmax())
        .map(|k| {
            json!({
                "degree": k,
                "generators": f.generators(k).iter().map(element_json).collect::<Vec<_>>(),
                "graded": f.graded.get(k).map(|g| to_numbers(g)),
                "stabilized_window": f.stabilized_window[k],
            })
        })
        .collect();
    json!({
        "model": m_name,
        "witt": witt,
        "group": {
            "basis": f.group.names(),
            "orders": to_numbers(f.group.orders()),
        },
        "exact": f.exact,
        "weight_cap": f.weight_cap,
        "pieces": pieces,
        "warnings": f.warnings,
    })
}

fn print_filtration(out: &mut dyn Write, f: &FiltrationResult) -> std::io::Result<()> {
    writeln!(out, "model: {}", f.model)?;
    writeln!(out, "group: {}", f.group)?;
    if f.exact {
        writeln!(out, "exact: yes (all nonzero products have weight ≤ {})", f.weight_cap)?;
    } else {
        writeln!(out, "exact: no (window heuristic, products enumerated to weight {})", f.weight_cap)?;
    }
    writeln!(out, "{:>3}  {:<16}  F^k generators", "k", "gr^k")?;
    for k in 0..=f.kmax() {
        let gr = f.graded.get(k).map(|g| format_invariants(g)).unwrap_or_else(|| "-".into());
        let gens: Vec<String> = f.generators(k).iter().map(|g| f.group.format_element(g)).collect();
        let gens = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
        writeln!(out, "{:>3}  {:<16}  {}", k, gr, gens)?;
    }
    for w in &f.warnings {
        writeln!(out, "warning: {}", w)?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Usage(e.to_string());
    match cli.command {
        Command::Builtin { name, params, output } => {
            let m = params.build(&name)?;
            let text = emit_model(&m);
            match output {
                Some(path) => fs::write(&path, text).map_err(|source| CliError::Io { path, source })?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Validate { model, params } => {
            let m = match model.strip_prefix("builtin:") {
                Some(name) => params.build(name)?,
                None => {
                    let text = fs::read_to_string(&model)
                        .map_err(|source| CliError::Io { path: PathBuf::from(&model), source })?;
                    parse_model_str(&text, &model)?
                }
            };
            let report = validate_model(&m);
            writeln!(out, "model: {}", m.name()).map_err(io)?;
            print_report(out, &report).map_err(io)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Filtration { model, params, max_degree, window, witt, json } => {
            if max_degree < 1 || window < 1 {
                return Err(CliError::Usage("--max-degree and --window must be at least 1".into()));
            }
            let m = load(&model, &params)?;
            let mut f = gamma_filtration(&m, max_degree, window)?;
            if witt {
                f = witt_filtration(&m, &f)?;
            }
            if json {
                out.write_all(to_canonical_json(&filtration_json(m.name(), &f, witt)).as_bytes()).map_err(io)?;
            } else {
                print_filtration(out, &f).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Special { model, params, bound } => {
            if !(1..=MAX_PRODUCT_DEGREE).contains(&bound) {
                return Err(CliError::Usage(format!("--bound must lie in 1..={}", MAX_PRODUCT_DEGREE)));
            }
            let m = load(&model, &params)?;
            let report = verify_special_basis(&m, bound)?;
            writeln!(out, "model: {}", m.name()).map_err(io)?;
            print_report(out, &report).map_err(io)?;
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} identities checked, {} failed", report.checks.len(), failed).map_err(io)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Milnor { n } => {
            if n == 0 || n > MAX_VARIABLES {
                return Err(CliError::Usage(format!("--n must lie in 1..={}", MAX_VARIABLES)));
            }
            let checks = check_identities(n).map_err(|e| CliError::Usage(e.to_string()))?;
            for c in &checks {
                writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name).map_err(io)?;
            }
            Ok(if checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
