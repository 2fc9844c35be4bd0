//! `maxsub`: command-line access to expression parsing, exact linear algebra,
//! g_n degree tests and maximal-subfield witnesses.
//!
//! Exit status: 0 success, 2 usage or input error, 3 search exhausted,
//! 4 mathematical precondition violated. With `--json` exactly one JSON
//! document is written to stdout, including on failure.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use maxsub_core::expr::{classify_multilinear_auto, evaluate, parse_expr, parse_word, LaurentExpr};
use maxsub_core::gn::{degree_at_most, DegreeVerdict, GnError, GnEvaluationPlan, DEFAULT_MAX_N};
use maxsub_core::json::{
    fe_to_json, matrix_from_json, matrix_to_json, poly_from_json, poly_to_json, SCHEMA_VERSION,
};
use maxsub_core::search::DEFAULT_SEED;
use maxsub_core::witness::{
    build_pm, build_qm, choose_spectrum, degree_bound_audit_model, maximal_subfield_witness,
    multilinear_preimage_2x2, word_preimage_sl2, Budgets, FailureKind, Model, WitnessError,
    DEFAULT_RETRIES, DEFAULT_TRIALS, DEFAULT_WORD_BUDGET,
};
use maxsub_core::{algebraic_degree, Algebra, Field, Matrix, MatrixAlgebra, QuaternionAlgebra};

#[derive(Parser)]
#[command(
    name = "maxsub",
    version,
    about = "Maximal subfields from polynomial and word values"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Q, Fp:<p>, F2k:<k> or Fpk:<p>:<k>
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its canonical form.
    Parse {
        #[arg(long)]
        expr: String,
    },
    /// Evaluate an expression at matrices, or re-verify a witness document.
    Eval {
        #[arg(long, required_unless_present = "witness")]
        expr: Option<String>,
        /// One per variable, in order.
        #[arg(long = "matrix")]
        matrices: Vec<String>,
        /// Path to a witness JSON document ("-" for stdin).
        #[arg(long, conflicts_with_all = ["expr", "matrices"])]
        witness: Option<String>,
    },
    /// Minimal and characteristic polynomial of a matrix.
    Minpoly {
        #[arg(long)]
        matrix: String,
    },
    /// Randomized test of algebraic degree ≤ n via g_n.
    GnCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Raise the ceiling on n ((n+1)! terms per evaluation).
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// The polynomial target P_m.
    BuildPm {
        #[arg(long)]
        m: usize,
    },
    /// The word target Q_m.
    BuildQm {
        #[arg(long)]
        m: usize,
    },
    /// 2×2 preimage of a trace-zero matrix under a multilinear polynomial.
    Preimage {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u32,
    },
    /// SL_2 preimage of a split matrix under a group word.
    WordPreimage {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
        budget: u64,
    },
    /// Witness that a value of the expression generates a maximal subfield.
    MaxSubfield {
        /// M:<m> for M_m(field), quat:<a>,<b> for (a,b/field)
        #[arg(long)]
        model: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u32,
        #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
    },
    /// Largest sampled degree d̂ against dim ≤ d̂².
    AuditBound {
        #[arg(long)]
        model: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl fmt::Display) -> Self {
        Failure {
            code: 2,
            kind: "usage",
            message: message.to_string(),
        }
    }

    fn precondition(message: impl fmt::Display) -> Self {
        Failure {
            code: 4,
            kind: "precondition",
            message: message.to_string(),
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e.kind() {
            FailureKind::Exhaustion => Failure {
                code: 3,
                kind: "exhausted",
                message: e.to_string(),
            },
            FailureKind::Precondition => Failure::precondition(e),
            FailureKind::Defect => Failure {
                code: 1,
                kind: "defect",
                message: e.to_string(),
            },
        }
    }
}

impl From<GnError> for Failure {
    fn from(e: GnError) -> Self {
        match e {
            GnError::Eval(_) | GnError::ArityMismatch { .. } => Failure::precondition(e),
            _ => Failure::usage(e),
        }
    }
}

/// Result of a subcommand: the JSON document and its text rendering.
struct Output {
    doc: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.global.json;
    match run(&cli) {
        Ok(out) => {
            if json_mode {
                println!("{}", serde_json::to_string_pretty(&out.doc).unwrap());
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if json_mode {
                let doc = json!({ "schema_version": SCHEMA_VERSION, "kind": "error", "error": f.kind, "message": f.message });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                eprintln!("error ({}): {}", f.kind, f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    let field: Field = g.field.parse().map_err(Failure::usage)?;
    match &cli.command {
        Command::Parse { expr } => cmd_parse(&field, expr),
        Command::Eval {
            expr,
            matrices,
            witness,
        } => match witness {
            Some(path) => cmd_verify_witness(path),
            None => cmd_eval(&field, expr.as_deref().unwrap(), matrices),
        },
        Command::Minpoly { matrix } => cmd_minpoly(&field, matrix),
        Command::GnCheck {
            n,
            matrix,
            trials,
            max_n,
        } => cmd_gn_check(&field, *n, matrix, *trials, *max_n, g.seed),
        Command::BuildPm { m } => cmd_build(&field, *m, true),
        Command::BuildQm { m } => cmd_build(&field, *m, false),
        Command::Preimage {
            expr,
            matrix,
            retries,
        } => cmd_preimage(&field, expr, matrix, *retries, g.seed),
        Command::WordPreimage {
            expr,
            matrix,
            budget,
        } => cmd_word_preimage(&field, expr, matrix, *budget, g.seed),
        Command::MaxSubfield {
            model,
            expr,
            retries,
            budget,
            trials,
        } => {
            let budgets = Budgets {
                retries: *retries,
                word_budget: *budget,
                trials: *trials,
            };
            cmd_max_subfield(&field, model, expr, budgets, g.seed)
        }
        Command::AuditBound {
            model,
            expr,
            trials,
        } => cmd_audit(&field, model, expr, *trials, g.seed),
    }
}

fn parse(field: &Field, text: &str) -> Result<LaurentExpr, Failure> {
    parse_expr(text, field).map_err(|e| Failure::usage(format!("expression: {e}")))
}

/// `identityN`, `zeroN`, `diag:a,b,…`, `eIJ` (2×2 unless `eIJ:N`), or JSON rows.
fn parse_matrix(field: &Field, text: &str) -> Result<Matrix, Failure> {
    let text = text.trim();
    let bad = || {
        Failure::usage(format!(
            "matrix '{text}': expected identityN, zeroN, diag:a,b,…, eIJ[:N] or JSON rows"
        ))
    };
    let size = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(bad);
    if let Some(n) = text.strip_prefix("identity") {
        return Ok(Matrix::identity(field, size(n)?));
    }
    if let Some(n) = text.strip_prefix("zero") {
        return Ok(Matrix::zero(field, size(n)?));
    }
    if let Some(list) = text.strip_prefix("diag:") {
        let d = list
            .split(',')
            .map(|x| {
                field
                    .decode(x.trim())
                    .map_err(|e| Failure::usage(format!("matrix '{text}': {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Matrix::diag(field, &d));
    }
    if let Some(rest) = text.strip_prefix('e') {
        let (ij, n) = match rest.split_once(':') {
            Some((ij, n)) => (ij, Some(size(n)?)),
            None => (rest, None),
        };
        let digits: Vec<usize> = ij
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let [i, j] = digits[..] else {
            return Err(bad());
        };
        let n = n.unwrap_or(2.max(i).max(j));
        if i == 0 || j == 0 || i > n || j > n {
            return Err(bad());
        }
        return Ok(Matrix::unit(field, n, i - 1, j - 1));
    }
    let v: Value = serde_json::from_str(text).map_err(|_| bad())?;
    matrix_from_json(field, &v).map_err(|e| Failure::usage(format!("matrix '{text}': {e}")))
}

fn parse_model(field: &Field, text: &str) -> Result<Model, Failure> {
    let bad = || Failure::usage(format!("model '{text}': expected M:<m> or quat:<a>,<b>"));
    if let Some(m) = text.strip_prefix("M:").or_else(|| text.strip_prefix('M')) {
        let m: usize = m.parse().map_err(|_| bad())?;
        return Ok(Model::Matrix {
            field: field.clone(),
            m,
        });
    }
    if let Some(ab) = text.strip_prefix("quat:") {
        let (a, b) = ab.split_once(',').ok_or_else(bad)?;
        let a = field.decode(a.trim()).map_err(Failure::usage)?;
        let b = field.decode(b.trim()).map_err(Failure::usage)?;
        let h = QuaternionAlgebra::new(field, a, b).map_err(Failure::precondition)?;
        return Ok(Model::Quaternion(h));
    }
    Err(bad())
}

fn header(kind: &str, field: &Field) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("kind".into(), json!(kind));
    m.insert("field".into(), json!(field.to_string()));
    m
}

fn matrix_text(m: &Matrix) -> String {
    m.to_string()
}

fn cmd_parse(field: &Field, text: &str) -> Result<Output, Failure> {
    let e = parse(field, text)?;
    let multilinear = classify_multilinear_auto(&e).ok();
    let mut doc = header("parse", field);
    doc.insert("expression".into(), json!(e.to_string()));
    doc.insert(
        "terms".into(),
        json!(e
            .terms()
            .iter()
            .map(|(c, w)| json!({ "coefficient": fe_to_json(c), "word": w.to_string() }))
            .collect::<Vec<_>>()),
    );
    doc.insert("variables".into(), json!(e.max_variable()));
    doc.insert("laurent".into(), json!(!e.is_polynomial()));
    doc.insert(
        "multilinear".into(),
        match &multilinear {
            Some(t) => json!({
                "arity": t.arity(),
                "coefficients": t.coefficients().iter().map(|(s, c)| json!({ "permutation": s.cycle_notation(), "coefficient": fe_to_json(c) })).collect::<Vec<_>>(),
            }),
            None => Value::Null,
        },
    );
    let mut text = format!("{e}\nvariables: {}", e.max_variable());
    if let Some(t) = &multilinear {
        text.push_str(&format!("\nmultilinear of arity {}", t.arity()));
        for (s, c) in t.coefficients() {
            text.push_str(&format!("\n  {s}: {c}"));
        }
    }
    Ok(Output {
        doc: Value::Object(doc),
        text,
    })
}

fn cmd_eval(field: &Field, text: &str, matrices: &[String]) -> Result<Output, Failure> {
    let e = parse(field, text)?;
    let values: Vec<Matrix> = matrices
        .iter()
        .map(|m| parse_matrix(field, m))
        .collect::<Result<_, _>>()?;
    let n = values.first().map_or(1, Matrix::size);
    if values.iter().any(|m| m.size() != n) {
        return Err(Failure::usage("all matrices must have the same size"));
    }
    let alg = MatrixAlgebra::new(field, n);
    let value = evaluate(&e, &alg, &values).map_err(Failure::precondition)?;
    let mut doc = header("eval", field);
    doc.insert("expression".into(), json!(e.to_string()));
    doc.insert("value".into(), matrix_to_json(&value));
    Ok(Output {
        doc: Value::Object(doc),
        text: matrix_text(&value),
    })
}

/// Re-evaluates a witness document and checks its value and certificate.
fn cmd_verify_witness(path: &str) -> Result<Output, Failure> {
    let raw = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(Failure::usage)?
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?
    };
    let doc: Value =
        serde_json::from_str(&raw).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let shape =
        |what: &str| Failure::usage(format!("witness document: missing or malformed {what}"));
    let model = doc.get("model").ok_or_else(|| shape("model"))?;
    let field: Field = model
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| shape("model.field"))?
        .parse()
        .map_err(Failure::usage)?;
    let expr = parse(
        &field,
        doc.get("expression")
            .and_then(Value::as_str)
            .ok_or_else(|| shape("expression"))?,
    )?;
    let assignment = doc
        .get("assignment")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("assignment"))?;
    let cert = doc.get("certificate").ok_or_else(|| shape("certificate"))?;
    let claimed_poly = poly_from_json(
        &field,
        cert.get("min_poly")
            .ok_or_else(|| shape("certificate.min_poly"))?,
    )
    .map_err(Failure::usage)?;
    let claimed_degree = cert
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| shape("certificate.degree"))? as usize;
    let claimed_maximal = doc
        .get("maximal")
        .and_then(Value::as_bool)
        .ok_or_else(|| shape("maximal"))?;
    let value_doc = doc.get("value").ok_or_else(|| shape("value"))?;

    let (value_json, min_poly, dimension) = match model.get("kind").and_then(Value::as_str) {
        Some("matrix") => {
            let m = model
                .get("size")
                .and_then(Value::as_u64)
                .ok_or_else(|| shape("model.size"))? as usize;
            let alg = MatrixAlgebra::new(&field, m);
            let values: Vec<Matrix> = assignment
                .iter()
                .map(|v| matrix_from_json(&field, v))
                .collect::<Result<_, _>>()
                .map_err(Failure::usage)?;
            let value = evaluate(&expr, &alg, &values).map_err(Failure::precondition)?;
            (matrix_to_json(&value), alg.min_poly(&value), alg.dim())
        }
        Some("quaternion") => {
            let a = maxsub_core::json::fe_from_json(
                &field,
                model.get("a").ok_or_else(|| shape("model.a"))?,
            )
            .map_err(Failure::usage)?;
            let b = maxsub_core::json::fe_from_json(
                &field,
                model.get("b").ok_or_else(|| shape("model.b"))?,
            )
            .map_err(Failure::usage)?;
            let h = QuaternionAlgebra::new(&field, a, b).map_err(Failure::precondition)?;
            let values = assignment
                .iter()
                .map(|v| h.quaternion_from_json(v))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::usage)?;
            let value = evaluate(&expr, &h, &values).map_err(Failure::precondition)?;
            (h.quaternion_to_json(&value), h.min_poly(&value), h.dim())
        }
        _ => return Err(shape("model.kind")),
    };
    let checks = [
        ("value", &value_json == value_doc),
        (
            "min_poly",
            min_poly == claimed_poly.monic() && claimed_poly.is_monic(),
        ),
        ("degree", min_poly.degree() == Some(claimed_degree)),
        (
            "maximal",
            (claimed_degree * claimed_degree == dimension) == claimed_maximal,
        ),
    ];
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    let mut out = header("verify", &field);
    out.insert("expression".into(), json!(expr.to_string()));
    out.insert("value".into(), value_json);
    out.insert("min_poly".into(), poly_to_json(&min_poly));
    out.insert("verified".into(), json!(failed.is_empty()));
    out.insert("failed_checks".into(), json!(failed));
    if !failed.is_empty() {
        return Err(Failure {
            code: 1,
            kind: "verification",
            message: format!("witness failed checks: {}", failed.join(", ")),
        });
    }
    Ok(Output {
        doc: Value::Object(out),
        text: format!("verified: value, minimal polynomial {min_poly}, degree {claimed_degree}"),
    })
}

fn cmd_minpoly(field: &Field, matrix: &str) -> Result<Output, Failure> {
    let a = parse_matrix(field, matrix)?;
    let cert = algebraic_degree(&a);
    let chi = a.char_poly();
    let mut doc = header("minpoly", field);
    doc.insert("matrix".into(), matrix_to_json(&a));
    doc.insert(
        "certificate".into(),
        serde_json::to_value(cert.to_json()).unwrap(),
    );
    doc.insert("char_poly".into(), poly_to_json(&chi));
    doc.insert("char_poly_text".into(), json!(chi.to_string()));
    let text = format!(
        "min poly: {}\ndegree: {}\nchar poly: {chi}",
        cert.min_poly, cert.degree
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
    })
}

fn cmd_gn_check(
    field: &Field,
    n: usize,
    matrix: &str,
    trials: u64,
    max_n: usize,
    seed: u64,
) -> Result<Output, Failure> {
    let a = parse_matrix(field, matrix)?;
    let plan = GnEvaluationPlan::with_limit(n, max_n)?;
    let alg = MatrixAlgebra::new(field, a.size());
    let verdict = degree_at_most(&alg, &a, &plan, trials, seed)?;
    let mut doc = header("gn_check", field);
    doc.insert("n".into(), json!(n));
    doc.insert("matrix".into(), matrix_to_json(&a));
    doc.insert("seed".into(), json!(seed));
    let text = match &verdict {
        DegreeVerdict::CertainlyGreater { trial, rs, value } => {
            doc.insert("verdict".into(), json!("certainly_greater"));
            doc.insert("trial".into(), json!(trial));
            doc.insert(
                "parameters".into(),
                json!(rs.iter().map(matrix_to_json).collect::<Vec<_>>()),
            );
            doc.insert("value".into(), matrix_to_json(value));
            format!("degree > {n} (certain): g_{n} is nonzero at trial {trial}")
        }
        DegreeVerdict::ProbablyAtMost {
            trials,
            seed,
            field_order,
        } => {
            doc.insert("verdict".into(), json!("probably_at_most"));
            doc.insert("trials".into(), json!(trials));
            doc.insert("field_order".into(), json!(field_order));
            let order = field_order.map_or("infinite".to_string(), |q| q.to_string());
            format!("degree ≤ {n} (probable): g_{n} vanished on {trials} samples, seed {seed}, field order {order}")
        }
    };
    Ok(Output {
        doc: Value::Object(doc),
        text,
    })
}

fn cmd_build(field: &Field, m: usize, polynomial: bool) -> Result<Output, Failure> {
    let params = choose_spectrum(m, field, None)?;
    let target = if polynomial {
        build_pm(&params)
    } else {
        build_qm(&params)
    };
    let cert = algebraic_degree(&target);
    let mut doc = header(if polynomial { "build_pm" } else { "build_qm" }, field);
    doc.insert("m".into(), json!(m));
    doc.insert(
        "a_values".into(),
        json!(params.a_values.iter().map(fe_to_json).collect::<Vec<_>>()),
    );
    doc.insert(
        "b_values".into(),
        json!(params.b_values.iter().map(fe_to_json).collect::<Vec<_>>()),
    );
    doc.insert("matrix".into(), matrix_to_json(&target));
    doc.insert(
        "certificate".into(),
        serde_json::to_value(cert.to_json()).unwrap(),
    );
    let text = format!(
        "{}\nmin poly: {}\ndegree: {}",
        matrix_text(&target),
        cert.min_poly,
        cert.degree
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
    })
}

fn assignment_output(
    field: &Field,
    kind: &str,
    expr: &LaurentExpr,
    target: &Matrix,
    assignment: &[Matrix],
    extra: (&str, u64),
    seed: u64,
) -> Output {
    let mut doc = header(kind, field);
    doc.insert("expression".into(), json!(expr.to_string()));
    doc.insert("target".into(), matrix_to_json(target));
    doc.insert(
        "assignment".into(),
        json!(assignment.iter().map(matrix_to_json).collect::<Vec<_>>()),
    );
    doc.insert("verified".into(), json!(true));
    doc.insert(extra.0.into(), json!(extra.1));
    doc.insert("seed".into(), json!(seed));
    let mut text = String::new();
    for (i, t) in assignment.iter().enumerate() {
        text.push_str(&format!("x{} =\n{}\n", i + 1, matrix_text(t)));
    }
    text.push_str(&format!(
        "verified: {expr} evaluates to the target ({} = {})",
        extra.0, extra.1
    ));
    Output {
        doc: Value::Object(doc),
        text,
    }
}

fn cmd_preimage(
    field: &Field,
    text: &str,
    matrix: &str,
    retries: u32,
    seed: u64,
) -> Result<Output, Failure> {
    let e = parse(field, text)?;
    let table = classify_multilinear_auto(&e).map_err(Failure::precondition)?;
    let a = parse_matrix(field, matrix)?;
    let pre = multilinear_preimage_2x2(&table, &a, seed, retries)?;
    Ok(assignment_output(
        field,
        "preimage",
        &e,
        &a,
        &pre.assignment,
        ("attempts", pre.attempts as u64),
        seed,
    ))
}

fn cmd_word_preimage(
    field: &Field,
    text: &str,
    matrix: &str,
    budget: u64,
    seed: u64,
) -> Result<Output, Failure> {
    let w = parse_word(text, field).map_err(|e| Failure::usage(format!("word: {e}")))?;
    let b = parse_matrix(field, matrix)?;
    let pre = word_preimage_sl2(&w, &b, seed, budget)?;
    let e = LaurentExpr::word(field, w);
    Ok(assignment_output(
        field,
        "word_preimage",
        &e,
        &b,
        &pre.assignment,
        ("trials_used", pre.trials_used),
        seed,
    ))
}

fn cmd_max_subfield(
    field: &Field,
    model: &str,
    text: &str,
    budgets: Budgets,
    seed: u64,
) -> Result<Output, Failure> {
    let model = parse_model(field, model)?;
    let e = parse(field, text)?;
    let report = maximal_subfield_witness(&model, &e, seed, budgets)?;
    let text = format!(
        "model: {}\nexpression: {} ({})\ncertificate: {} (degree {})\nmaximal: {}\ntrials used: {}{}",
        report.model,
        report.expression,
        report.expression_kind,
        report.certificate.min_poly,
        report.certificate.degree,
        report.maximal,
        report.trials_used,
        report.caveats.iter().map(|c| format!("\ncaveat: {c}")).collect::<String>(),
    );
    Ok(Output {
        doc: report.to_json(),
        text,
    })
}

fn cmd_audit(
    field: &Field,
    model: &str,
    text: &str,
    trials: u64,
    seed: u64,
) -> Result<Output, Failure> {
    let model = parse_model(field, model)?;
    let e = parse(field, text)?;
    let report = degree_bound_audit_model(&model, &e, trials, seed)?;
    let text = format!(
        "model: {model}\nd̂ = {} over {} samples\n{} ≤ {}: {:?}",
        report.d_hat,
        trials,
        report.dimension,
        report.d_hat * report.d_hat,
        report.status
    );
    Ok(Output {
        doc: report.to_json(&model, &e.to_string()),
        text,
    })
}
