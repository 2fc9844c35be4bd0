use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, MatrixAlgebra};
use crate::expr::{evaluate, LaurentExpr};
use crate::json::SCHEMA_VERSION;
use crate::search::trial_rng;

use super::report::Model;
use super::WitnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    /// dim = d̂².
    BoundMetWithEquality,
    /// dim < d̂².
    BoundMet,
    /// dim > d̂²: the samples did not reach the degree the bound requires.
    InsufficientSampling,
}

/// Largest observed algebraic degree d̂ of sampled values, checked against
/// dim ≤ d̂².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub d_hat: usize,
    pub dimension: usize,
    pub status: AuditStatus,
    /// Number of samples per observed degree.
    pub degree_counts: BTreeMap<usize, u64>,
    pub trials: u64,
    pub forced: usize,
    /// Samples skipped because a negative power hit a non-invertible value.
    pub skipped: u64,
    pub seed: u64,
}

impl AuditReport {
    pub fn bound_met(&self) -> bool {
        self.status != AuditStatus::InsufficientSampling
    }

    pub fn to_json(&self, model: &Model, expression: &str) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "audit",
            "model": model.to_json(),
            "expression": expression,
            "d_hat": self.d_hat,
            "dimension": self.dimension,
            "bound": format!("{} <= {}", self.dimension, self.d_hat * self.d_hat),
            "bound_met": self.bound_met(),
            "equality": self.status == AuditStatus::BoundMetWithEquality,
            "status": self.status,
            "degree_counts": self.degree_counts.iter().map(|(d, c)| (d.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            "trials": self.trials,
            "forced": self.forced,
            "skipped": self.skipped,
            "seed": self.seed,
        })
    }
}

/// Evaluates `expr` at `trials` assignments and records the algebraic degree
/// of each value. The forced assignments come first; the rest are random
/// (invertible when the expression has negative exponents).
pub fn degree_bound_audit<A: Algebra>(
    alg: &A,
    expr: &LaurentExpr,
    trials: u64,
    seed: u64,
    forced: &[Vec<A::Elem>],
) -> Result<AuditReport, WitnessError> {
    if trials == 0 {
        return Err(WitnessError::ZeroTrials);
    }
    let n = expr.max_variable() as usize;
    let invertible = !expr.is_polynomial();
    let mut degree_counts = BTreeMap::new();
    let mut skipped = 0;
    let mut record = |assignment: &[A::Elem]| -> Result<(), WitnessError> {
        match evaluate(expr, alg, assignment) {
            Ok(v) => {
                *degree_counts
                    .entry(alg.algebraic_degree(&v).degree)
                    .or_insert(0u64) += 1;
                Ok(())
            }
            Err(crate::expr::EvalError::NotInvertible { .. }) => {
                skipped += 1;
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    };
    for assignment in forced {
        record(assignment)?;
    }
    for t in forced.len() as u64..trials {
        let mut rng = trial_rng(seed, t);
        let assignment: Vec<A::Elem> = (0..n)
            .map(|_| {
                if invertible {
                    alg.random_invertible(&mut rng)
                } else {
                    alg.random(&mut rng)
                }
            })
            .collect();
        record(&assignment)?;
    }
    let d_hat = degree_counts.keys().next_back().copied().unwrap_or(0);
    let dimension = alg.dim();
    let status = match (d_hat * d_hat).cmp(&dimension) {
        std::cmp::Ordering::Equal => AuditStatus::BoundMetWithEquality,
        std::cmp::Ordering::Greater => AuditStatus::BoundMet,
        std::cmp::Ordering::Less => AuditStatus::InsufficientSampling,
    };
    Ok(AuditReport {
        d_hat,
        dimension,
        status,
        degree_counts,
        trials,
        forced: forced.len(),
        skipped,
        seed,
    })
}

/// [`degree_bound_audit`] on a model without forced samples.
pub fn degree_bound_audit_model(
    model: &Model,
    expr: &LaurentExpr,
    trials: u64,
    seed: u64,
) -> Result<AuditReport, WitnessError> {
    if expr.field() != model.field() {
        return Err(WitnessError::FieldMismatch {
            expected: model.field().to_string(),
            got: expr.field().to_string(),
        });
    }
    match model {
        Model::Matrix { field, m } => {
            degree_bound_audit(&MatrixAlgebra::new(field, *m), expr, trials, seed, &[])
        }
        Model::Quaternion(h) => degree_bound_audit(h, expr, trials, seed, &[]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::field::Field;
    use crate::quaternion::QuaternionAlgebra;

    #[test]
    fn m2_commutator() {
        let f = Field::prime(10007).unwrap();
        let comm = parse_expr("x1*x2 - x2*x1", &f).unwrap();
        let r = degree_bound_audit_model(&Model::Matrix { field: f, m: 2 }, &comm, 100, 0).unwrap();
        assert_eq!(
            (r.d_hat, r.dimension, r.status),
            (2, 4, AuditStatus::BoundMetWithEquality)
        );
    }

    #[test]
    fn hamilton_commutator() {
        let h = QuaternionAlgebra::hamilton();
        let comm = parse_expr("x1*x2 - x2*x1", h.field()).unwrap();
        let r = degree_bound_audit_model(&Model::Quaternion(h), &comm, 50, 0).unwrap();
        assert_eq!((r.d_hat, r.status), (2, AuditStatus::BoundMetWithEquality));
    }

    #[test]
    fn central_forced_sample_is_insufficient() {
        let q = Field::Rational;
        let alg = MatrixAlgebra::new(&q, 2);
        let x1 = parse_expr("x1", &q).unwrap();
        let r = degree_bound_audit(&alg, &x1, 1, 0, &[vec![alg.one()]]).unwrap();
        assert_eq!(
            (r.d_hat, r.forced, r.status),
            (1, 1, AuditStatus::InsufficientSampling)
        );
        let r = degree_bound_audit(&alg, &x1, 20, 0, &[vec![alg.one()]]).unwrap();
        assert_eq!((r.d_hat, r.status), (2, AuditStatus::BoundMetWithEquality));
        let id = degree_bound_audit(&alg, &parse_expr("x1*x1^-1", &q).unwrap(), 1, 0, &[]).unwrap();
        assert_eq!(
            (id.d_hat, id.status),
            (1, AuditStatus::InsufficientSampling)
        );
        assert_eq!(
            degree_bound_audit(&alg, &x1, 0, 0, &[]),
            Err(WitnessError::ZeroTrials)
        );
    }
}
