//! Command-line front end for the `cyclic-leibniz` library.
//!
//! Every command produces an [`Outcome`]: the human-readable text, a JSON
//! mirror of it and an exit code (0 affirmative, 1 negative, 2 usage or
//! input error). Both renderings start with the tolerance in force.

pub mod document;
pub mod format;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use cyclic_leibniz::{
    classification::MAX_TABLE_DIMENSION, family_table, fuzz, iso_by_search, isomorphic, normalize,
    normalize_leading, orbit, Algebra, Element, Family, Form, FuzzConfig, Scalar, Tol, TypeLabel,
    DEFAULT_EPS,
};
use serde_json::{json, Value};

pub use document::AlgebraDocument;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-leibniz",
    version,
    about = "Classify and compare complex cyclic Leibniz algebras"
)]
pub struct Cli {
    /// Absolute comparison tolerance; a document's own "tolerance" wins.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    pub tolerance: f64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type and canonical form.
    Classify { path: PathBuf },
    /// Whether two algebras are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Also decide by explicit generator search and compare.
        #[arg(long)]
        check: bool,
    },
    /// Orbit of the canonical tuple under the root-of-unity action.
    Orbit { path: PathBuf },
    /// Product of two elements given as comma-separated coordinates.
    Mul {
        path: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Leibniz identity and Cayley-Hamilton residuals.
    Verify { path: PathBuf },
    /// Isomorphism classes in a given dimension.
    Table { dimension: usize },
    /// Seeded campaign comparing formulas with brute-force checks.
    Fuzz {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        dim_max: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn new(eps: f64, command: &str, lines: Vec<String>, mut json: Value, code: i32) -> Self {
        let mut text = format!("# tolerance {}\n", format::real(eps));
        for line in lines {
            text.push_str(&line);
            text.push('\n');
        }
        json["tolerance"] = json!(eps);
        json["command"] = json!(command);
        Self { text, json, code }
    }

    /// What the binary prints on stdout.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = Tol::new(cli.tolerance).map_err(|e| CliError::Input(e.to_string()))?;
    match &cli.command {
        Command::Classify { path } => classify(path, tol),
        Command::Iso { a, b, check } => iso(a, b, *check, tol),
        Command::Orbit { path } => orbit_cmd(path, tol),
        Command::Mul { path, x, y } => mul(path, x, y, tol),
        Command::Verify { path } => verify(path, tol),
        Command::Table { dimension } => table(*dimension, tol),
        Command::Fuzz {
            trials,
            dim_max,
            seed,
        } => fuzz_cmd(*trials, *dim_max, *seed, tol),
    }
}

fn load(path: &Path, tol: Tol) -> Result<Algebra, CliError> {
    AlgebraDocument::read(path)?.to_algebra(tol)
}

fn pairs(entries: &[Scalar], eps: f64) -> Value {
    json!(entries
        .iter()
        .map(|&z| {
            let z = format::snap(z, eps);
            [z.re, z.im]
        })
        .collect::<Vec<_>>())
}

/// One-line summary: `nilpotent`, `type n; law …` or `type k; γ = (…)`.
pub fn describe(form: &Form, eps: f64) -> String {
    match form.label {
        TypeLabel::Nilpotent => "nilpotent".into(),
        TypeLabel::TypeK(k) if k == form.n => {
            format!(
                "type {k}; law {}",
                format::law(form.n, form.law().coefficients(), eps)
            )
        }
        TypeLabel::TypeK(k) => {
            format!("type {k}; γ = {}", format::tuple(form.gamma.entries(), eps))
        }
    }
}

fn form_json(form: &Form, eps: f64) -> Value {
    json!({
        "dimension": form.n,
        "type": form.label.to_string(),
        "k": form.label.k(),
        "gamma": pairs(form.gamma.entries(), eps),
        "law": pairs(form.law().coefficients(), eps),
    })
}

pub fn classify(path: &Path, tol: Tol) -> Result<Outcome, CliError> {
    let algebra = load(path, tol)?;
    let eps = algebra.tolerance().eps();
    let form = normalize(&algebra);
    let mut lines = vec![format!("dimension {}", form.n), describe(&form, eps)];
    if form.label != TypeLabel::TypeK(form.n) {
        lines.push(format!(
            "law {}",
            format::law(form.n, form.law().coefficients(), eps)
        ));
    }
    let mut value = form_json(&form, eps);
    value["document"] =
        serde_json::to_value(AlgebraDocument::from_form(&form, None)).expect("document");
    Ok(Outcome::new(eps, "classify", lines, value, 0))
}

pub fn iso(a: &Path, b: &Path, check: bool, tol: Tol) -> Result<Outcome, CliError> {
    let alg_a = load(a, tol)?;
    let alg_b = load(b, tol)?;
    let eps = alg_a.tolerance().eps();
    if alg_a.dim() != alg_b.dim() {
        let note = format!("dimensions {} and {} differ", alg_a.dim(), alg_b.dim());
        return Ok(Outcome::new(
            eps,
            "iso",
            vec![format!("not isomorphic ({note})")],
            json!({ "isomorphic": false, "note": note }),
            1,
        ));
    }
    let verdict = isomorphic(&alg_a, &alg_b);
    let (form_a, form_b) = (normalize(&alg_a), normalize(&alg_b));
    let word = |v: bool| if v { "isomorphic" } else { "not isomorphic" };
    let mut lines = vec![
        word(verdict).to_string(),
        format!("first:  {}", describe(&form_a, eps)),
        format!("second: {}", describe(&form_b, eps)),
    ];
    let mut value = json!({
        "isomorphic": verdict,
        "first": form_json(&form_a, eps),
        "second": form_json(&form_b, eps),
    });
    if check {
        let search = iso_by_search(&alg_a, &alg_b);
        let agree = if search == verdict {
            "agrees"
        } else {
            "DISAGREES"
        };
        lines.push(format!("search: {} ({agree})", word(search)));
        value["search"] = json!({ "isomorphic": search, "agrees": search == verdict });
    }
    Ok(Outcome::new(
        eps,
        "iso",
        lines,
        value,
        if verdict { 0 } else { 1 },
    ))
}

pub fn orbit_cmd(path: &Path, tol: Tol) -> Result<Outcome, CliError> {
    let algebra = load(path, tol)?;
    let eps = algebra.tolerance().eps();
    let form = normalize(&algebra);
    let Some(k) = form.label.k() else {
        return Ok(Outcome::new(
            eps,
            "orbit",
            vec!["orbit undefined for nilpotent algebra".into()],
            json!({ "error": "orbit undefined for nilpotent algebra" }),
            1,
        ));
    };
    let (_, gamma) = normalize_leading(&algebra);
    let members = orbit(&gamma, algebra.tolerance());
    let mut lines = vec![format!(
        "type {k}; {} member(s) under the cyclic group of order {}; * marks the representative",
        members.len(),
        form.gamma.group_order()
    )];
    let mut listed = Vec::new();
    let mut marked = false;
    for m in &members {
        let is_rep = !marked && m.approx_eq(&form.gamma, algebra.tolerance());
        marked |= is_rep;
        let mark = if is_rep { '*' } else { ' ' };
        lines.push(format!("{mark} {}", format::tuple(m.entries(), eps)));
        listed.push(json!({ "gamma": pairs(m.entries(), eps), "representative": is_rep }));
    }
    let value = json!({ "type": form.label.to_string(), "k": k, "group_order": form.gamma.group_order(), "members": listed });
    Ok(Outcome::new(eps, "orbit", lines, value, 0))
}

/// Comma-separated complex coordinates, e.g. `1,0,2-1i`.
pub fn parse_coords(s: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',')
        .map(|part| {
            Scalar::from_str(part.trim())
                .map_err(|_| CliError::Input(format!("cannot parse coordinate {part:?}")))
        })
        .collect()
}

pub fn mul(path: &Path, x: &str, y: &str, tol: Tol) -> Result<Outcome, CliError> {
    let algebra = load(path, tol)?;
    let eps = algebra.tolerance().eps();
    let element = |s: &str| -> Result<Element<f64>, CliError> {
        algebra
            .element(parse_coords(s)?)
            .map_err(|e| CliError::Input(e.to_string()))
    };
    let product = algebra
        .multiply(&element(x)?, &element(y)?)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let lines = vec![
        format!("coordinates {}", format::tuple(product.coords(), eps)),
        format!("= {}", format::combination(1, product.coords(), eps)),
    ];
    let value = json!({ "product": pairs(product.coords(), eps) });
    Ok(Outcome::new(eps, "mul", lines, value, 0))
}

pub fn verify(path: &Path, tol: Tol) -> Result<Outcome, CliError> {
    let algebra = load(path, tol)?;
    let eps = algebra.tolerance().eps();
    let leibniz = algebra.verify_leibniz();
    let ch = algebra.cayley_hamilton_residual();
    let ch_passed = ch <= eps;
    let word = |p: bool| if p { "pass" } else { "FAIL" };
    let mut lines = vec![format!(
        "leibniz: {} (relative residual {})",
        word(leibniz.passed),
        format::real(leibniz.residual)
    )];
    if let Some((i, j, k)) = leibniz.first_violation {
        lines.push(format!("  first violation at (a^{i}, a^{j}, a^{k})"));
    }
    lines.push(format!(
        "cayley-hamilton: {} (relative residual {})",
        word(ch_passed),
        format::real(ch)
    ));
    let passed = leibniz.passed && ch_passed;
    lines.push(format!("result: {}", word(passed)));
    let value = json!({
        "leibniz": { "passed": leibniz.passed, "residual": leibniz.residual },
        "cayley_hamilton": { "passed": ch_passed, "residual": ch },
        "passed": passed,
    });
    Ok(Outcome::new(
        eps,
        "verify",
        lines,
        value,
        if passed { 0 } else { 1 },
    ))
}

pub fn table(n: usize, tol: Tol) -> Result<Outcome, CliError> {
    let t = family_table(n).map_err(|e| CliError::Input(e.to_string()))?;
    let text = t.to_string();
    let families: Vec<Value> = t
        .families
        .iter()
        .map(|f| match *f {
            Family::Nilpotent => json!({ "family": "nilpotent" }),
            Family::Top => json!({ "family": "top", "k": n }),
            Family::Parametric { k, parameters } => {
                json!({ "family": "parametric", "k": k, "parameters": parameters, "orbit_order": f.orbit_order() })
            }
        })
        .collect();
    let value = json!({ "dimension": n, "families": families });
    Ok(Outcome::new(
        tol.eps(),
        "table",
        text.lines().map(String::from).collect(),
        value,
        0,
    ))
}

pub fn fuzz_cmd(trials: usize, dim_max: usize, seed: u64, tol: Tol) -> Result<Outcome, CliError> {
    if dim_max > MAX_TABLE_DIMENSION {
        return Err(CliError::Input(format!(
            "--dim-max must be at most {MAX_TABLE_DIMENSION}"
        )));
    }
    let report = fuzz(&FuzzConfig {
        trials,
        dim_max,
        seed,
        tol,
    });
    let mut lines: Vec<String> = report.to_string().lines().map(String::from).collect();
    let mut value = json!({
        "seed": seed,
        "trials": trials,
        "dim_max": dim_max,
        "trials_run": report.trials_run,
        "checks_run": report.checks_run,
        "near_boundary_trials": report.near_boundary,
        "ill_conditioned_trials": report.ill_conditioned_trials,
        "generator_redraws": report.generator_redraws,
        "degenerate_generators": report.degenerate_generators,
        "isomorphic_pairs": report.isomorphic_pairs,
        "non_isomorphic_pairs": report.non_isomorphic_pairs,
        "max_law_deviation": report.max_law_deviation,
        "max_cayley_hamilton": report.max_cayley_hamilton,
        "max_leibniz": report.max_leibniz,
        "passed": report.passed(),
    });
    if let Some(d) = &report.disagreement {
        let repro = format!(
            "cyclic-leibniz fuzz --trials {} --dim-max {dim_max} --seed {seed} --tolerance {:e}",
            d.trial + 1,
            tol.eps()
        );
        lines.push(format!("reproduce: {repro}"));
        value["disagreement"] = json!({
            "trial": d.trial,
            "check": d.check,
            "dimension": d.n,
            "tail": pairs(&d.tail, 0.0),
            "detail": d.detail,
            "reproduce": repro,
        });
    }
    let code = if report.passed() { 0 } else { 1 };
    Ok(Outcome::new(tol.eps(), "fuzz", lines, value, code))
}
