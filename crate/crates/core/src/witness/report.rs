use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{Algebra, DegreeCertificate, MatrixAlgebra};
use crate::expr::{classify_multilinear_auto, evaluate, LaurentExpr, MultilinearTable, Word};
use crate::field::Field;
use crate::json::{fe_to_json, matrix_to_json, SCHEMA_VERSION};
use crate::matrix::Matrix;
use crate::quaternion::{DivisionCheck, Quaternion, QuaternionAlgebra};
use crate::search::{first_success, trial_rng};

use super::preimage::{multilinear_preimage_2x2, noncentral_on_m2, CentralityVerdict};
use super::spectrum::{a_block, b_block, build_pm, build_qm, choose_spectrum};
use super::word_preimage::word_preimage_sl2;
use super::{assemble_block_witness, Budgets, Pad, WitnessError};

/// Norm-form search height for quaternion algebras outside the known presets.
const DIVISION_CHECK_BOUND: u64 = 12;

/// The algebra a witness lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    /// M_m(F), the split stand-in for a central simple algebra of degree m.
    Matrix {
        field: Field,
        m: usize,
    },
    Quaternion(QuaternionAlgebra),
}

impl Model {
    pub fn field(&self) -> &Field {
        match self {
            Model::Matrix { field, .. } => field,
            Model::Quaternion(h) => h.field(),
        }
    }

    /// Dimension over the base field.
    pub fn dimension(&self) -> usize {
        match self {
            Model::Matrix { m, .. } => m * m,
            Model::Quaternion(_) => 4,
        }
    }

    /// Degree a maximal subfield must have.
    pub fn degree(&self) -> usize {
        match self {
            Model::Matrix { m, .. } => *m,
            Model::Quaternion(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Model::Matrix { field, m } => json!({
                "kind": "matrix",
                "field": field.to_string(),
                "size": m,
                "dimension": m * m,
            }),
            Model::Quaternion(h) => json!({
                "kind": "quaternion",
                "field": h.field().to_string(),
                "a": fe_to_json(h.a()),
                "b": fe_to_json(h.b()),
                "dimension": 4,
            }),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Matrix { field, m } => write!(f, "M{m}({field})"),
            Model::Quaternion(h) => write!(f, "({}, {} / {})", h.a(), h.b(), h.field()),
        }
    }
}

/// How an expression is treated by the matrix pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessExpr {
    Polynomial(MultilinearTable),
    Word(Word),
}

impl WitnessExpr {
    /// A single monic word with an inverse is a word; otherwise multilinear
    /// if possible; otherwise any single monic word.
    pub fn classify(expr: &LaurentExpr) -> Result<Self, WitnessError> {
        let word = expr.as_word().cloned();
        if let Some(w) = &word {
            if w.has_negative_exponent() {
                return Ok(WitnessExpr::Word(w.clone()));
            }
        }
        match classify_multilinear_auto(expr) {
            Ok(t) => Ok(WitnessExpr::Polynomial(t)),
            Err(_) => word
                .map(WitnessExpr::Word)
                .ok_or_else(|| WitnessError::UnsupportedExpression(expr.to_string())),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            WitnessExpr::Polynomial(_) => "multilinear",
            WitnessExpr::Word(_) => "word",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Matrix(Matrix),
    Quaternion(Quaternion),
}

impl Element {
    fn to_json(&self, model: &Model) -> Value {
        match (self, model) {
            (Element::Matrix(m), _) => matrix_to_json(m),
            (Element::Quaternion(q), Model::Quaternion(h)) => h.quaternion_to_json(q),
            (Element::Quaternion(q), _) => json!([
                fe_to_json(&q.t),
                fe_to_json(&q.x),
                fe_to_json(&q.y),
                fe_to_json(&q.z)
            ]),
        }
    }
}

/// A verified value f(c̄) generating a subfield of the stated degree.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub model: Model,
    pub expression: String,
    pub expression_kind: &'static str,
    pub assignment: Vec<Element>,
    pub value: Element,
    pub certificate: DegreeCertificate,
    /// degree² = dimension of the model.
    pub maximal: bool,
    pub seed: u64,
    pub budgets: Budgets,
    pub trials_used: u64,
    pub caveats: Vec<String>,
}

impl WitnessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "witness",
            "model": self.model.to_json(),
            "expression": self.expression,
            "expression_kind": self.expression_kind,
            "assignment": self.assignment.iter().map(|e| e.to_json(&self.model)).collect::<Vec<_>>(),
            "value": self.value.to_json(&self.model),
            "certificate": self.certificate.to_json(),
            "maximal": self.maximal,
            "seed": self.seed,
            "budgets": self.budgets,
            "trials_used": self.trials_used,
            "caveats": self.caveats,
        })
    }
}

/// Distinct per-block seeds derived from one seed.
fn block_seed(seed: u64, block: usize) -> u64 {
    seed ^ (block as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Finds a value of `expr` generating a subfield F(value) of degree equal to
/// the model's degree, verified and certified by its minimal polynomial.
pub fn maximal_subfield_witness(
    model: &Model,
    expr: &LaurentExpr,
    seed: u64,
    budgets: Budgets,
) -> Result<WitnessReport, WitnessError> {
    if expr.field() != model.field() {
        return Err(WitnessError::FieldMismatch {
            expected: model.field().to_string(),
            got: expr.field().to_string(),
        });
    }
    let report = match model {
        Model::Matrix { field, m } => matrix_witness(field, *m, expr, seed, budgets)?,
        Model::Quaternion(h) => quaternion_witness(h, expr, seed, budgets)?,
    };
    let (certificate, assignment, value, kind, trials_used, caveats) = report;
    let maximal = certificate.degree * certificate.degree == model.dimension();
    Ok(WitnessReport {
        model: model.clone(),
        expression: expr.to_string(),
        expression_kind: kind,
        assignment,
        value,
        certificate,
        maximal,
        seed,
        budgets,
        trials_used,
        caveats,
    })
}

type Parts = (
    DegreeCertificate,
    Vec<Element>,
    Element,
    &'static str,
    u64,
    Vec<String>,
);

fn matrix_witness(
    field: &Field,
    m: usize,
    expr: &LaurentExpr,
    seed: u64,
    budgets: Budgets,
) -> Result<Parts, WitnessError> {
    if m < 2 {
        return Err(WitnessError::SizeTooSmall(m));
    }
    let kind = WitnessExpr::classify(expr)?;
    let params = choose_spectrum(m, field, None)?;
    let alg = MatrixAlgebra::new(field, m);
    let mut caveats = vec![format!(
        "M{m}({field}) is the split model; the witness shows the degree-{m} value exists there"
    )];
    if field.is_finite() {
        caveats.push(format!(
            "{field} is finite; the existence results behind the construction assume an infinite field"
        ));
    } else {
        caveats.push("random searches over Q draw small integers".to_string());
    }
    let (assignment, target, trials_used) = match &kind {
        WitnessExpr::Polynomial(table) => {
            match noncentral_on_m2(table, budgets.trials.max(1), seed)? {
                CentralityVerdict::NonCentral { .. } => {}
                _ => return Err(WitnessError::CentralPolynomial),
            }
            let mut blocks = Vec::new();
            let mut used = 0u64;
            for (i, a) in params.a_values.iter().enumerate() {
                let pre = multilinear_preimage_2x2(
                    table,
                    &a_block(a),
                    block_seed(seed, i),
                    budgets.retries,
                )?;
                used += pre.attempts as u64;
                blocks.push(pre.assignment);
            }
            (
                assemble_block_witness(&blocks, m, Pad::Zero)?,
                build_pm(&params),
                used,
            )
        }
        WitnessExpr::Word(w) => {
            if w.is_identity() {
                return Err(WitnessError::TrivialWord);
            }
            let mut blocks = Vec::new();
            let mut used = 0u64;
            for (i, b) in params.b_values.iter().enumerate() {
                let pre =
                    word_preimage_sl2(w, &b_block(b), block_seed(seed, i), budgets.word_budget)?;
                used += pre.trials_used;
                blocks.push(pre.assignment);
            }
            (
                assemble_block_witness(&blocks, m, Pad::One)?,
                build_qm(&params),
                used,
            )
        }
    };
    let value = evaluate(expr, &alg, &assignment)?;
    if value != target {
        return Err(WitnessError::VerificationFailed(format!(
            "value differs from the target in M{m}({field})"
        )));
    }
    let certificate = alg.algebraic_degree(&value);
    if certificate.degree != m || !certificate.verify(&alg, &value) {
        return Err(WitnessError::VerificationFailed(format!(
            "certificate degree {} ≠ {m}",
            certificate.degree
        )));
    }
    Ok((
        certificate,
        assignment.into_iter().map(Element::Matrix).collect(),
        Element::Matrix(value),
        kind.kind(),
        trials_used,
        caveats,
    ))
}

fn quaternion_witness(
    h: &QuaternionAlgebra,
    expr: &LaurentExpr,
    seed: u64,
    budgets: Budgets,
) -> Result<Parts, WitnessError> {
    let mut caveats = Vec::new();
    if !h.is_known_division() {
        match h.heuristic_division_check(DIVISION_CHECK_BOUND) {
            DivisionCheck::ZeroFound(q) => {
                return Err(WitnessError::SplitQuaternionAlgebra(format!(
                    "{}",
                    h.quaternion_to_json(&q)
                )));
            }
            DivisionCheck::NoZeroFound { bound } => {
                caveats.push(format!(
                    "division property supported only by a norm-form search up to height {bound}"
                ));
            }
        }
    }
    let n = expr.max_variable() as usize;
    let kind = match WitnessExpr::classify(expr) {
        Ok(k) => k.kind(),
        Err(_) => "laurent",
    };
    let try_assignment = |assignment: &[Quaternion]| -> Option<Quaternion> {
        let v = evaluate(expr, h, assignment).ok()?;
        (!h.is_central(&v)).then_some(v)
    };
    // basis tuples from {i, j, k} first, then random invertible elements
    let units = [h.i(), h.j(), h.k()];
    let mut found: Option<(Vec<Quaternion>, Quaternion, u64)> = None;
    if n <= 4 {
        for code in 0..3usize.pow(n as u32) {
            let assignment: Vec<Quaternion> = (0..n)
                .map(|j| units[(code / 3usize.pow((n - 1 - j) as u32)) % 3].clone())
                .collect();
            if let Some(v) = try_assignment(&assignment) {
                found = Some((assignment, v, 0));
                break;
            }
        }
    }
    if found.is_none() {
        found = first_success(budgets.trials, |t| {
            let mut rng = trial_rng(seed, t);
            let assignment: Vec<Quaternion> =
                (0..n).map(|_| h.random_invertible(&mut rng)).collect();
            try_assignment(&assignment).map(|v| (assignment, v))
        })
        .map(|(t, (a, v))| (a, v, t + 1));
    }
    let Some((assignment, value, trials_used)) = found else {
        return Err(WitnessError::Exhausted {
            what: "non-central quaternion value".into(),
            attempts: budgets.trials,
            seed,
        });
    };
    let certificate = h.algebraic_degree(&value);
    if certificate.degree != 2 || !certificate.verify(h, &value) {
        return Err(WitnessError::VerificationFailed(format!(
            "certificate degree {} ≠ 2",
            certificate.degree
        )));
    }
    Ok((
        certificate,
        assignment.into_iter().map(Element::Quaternion).collect(),
        Element::Quaternion(value),
        kind,
        trials_used,
        caveats,
    ))
}
