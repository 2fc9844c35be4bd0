use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::field::{Fe, Field};

use super::eval::EvalError;
use super::laurent::LaurentExpr;
use super::word::{VariableId, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("term '{term}' is not multilinear in x1..x{arity}: {reason}")]
    NotMultilinear {
        term: String,
        arity: usize,
        reason: String,
    },
    #[error("the zero polynomial has no multilinear table")]
    Zero,
    #[error("arity must be at least 1")]
    ZeroArity,
}

/// A permutation σ of {1..m}, stored as its one-line form [σ(1), …, σ(m)]:
/// the term x_{σ(1)} ⋯ x_{σ(m)}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((1..=m as u32).collect())
    }

    pub fn from_one_line(images: Vec<u32>) -> Option<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &i in &images {
            if i == 0 || i as usize > m || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Permutation(images))
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn word(&self) -> Word {
        Word::new(self.0.iter().map(|&i| (VariableId::new(i).unwrap(), 1)))
    }

    /// Disjoint cycles, fixed points omitted; `id` for the identity.
    pub fn cycle_notation(&self) -> String {
        let m = self.0.len();
        let mut seen = vec![false; m + 1];
        let mut out = String::new();
        for start in 1..=m {
            if seen[start] || self.0[start - 1] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i.to_string());
                i = self.0[i - 1] as usize;
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "id".to_string()
        } else {
            out
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

/// f = Σ_{σ ∈ S_m} a_σ x_{σ(1)} ⋯ x_{σ(m)} with at least one nonzero a_σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearTable {
    arity: usize,
    field: Field,
    coeffs: BTreeMap<Permutation, Fe>,
}

impl MultilinearTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coefficients(&self) -> &BTreeMap<Permutation, Fe> {
        &self.coeffs
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Fe {
        self.coeffs
            .get(sigma)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Rebuilds Σ a_σ x_{σ(1)} ⋯ x_{σ(m)}.
    pub fn to_expr(&self) -> LaurentExpr {
        LaurentExpr::from_terms(
            &self.field,
            self.coeffs.iter().map(|(s, c)| (c.clone(), s.word())),
        )
    }

    /// Direct evaluation, one product per nonzero a_σ.
    pub fn evaluate<A: Algebra>(
        &self,
        alg: &A,
        assignment: &[A::Elem],
    ) -> Result<A::Elem, EvalError> {
        if assignment.len() < self.arity {
            return Err(EvalError::ArityMismatch {
                needed: self.arity,
                got: assignment.len(),
            });
        }
        if &self.field != alg.field() {
            return Err(EvalError::FieldMismatch {
                expr: self.field.to_string(),
                algebra: alg.field().to_string(),
            });
        }
        let mut acc = alg.zero();
        for (sigma, c) in &self.coeffs {
            let prod = sigma.0[1..]
                .iter()
                .fold(assignment[sigma.0[0] as usize - 1].clone(), |p, &i| {
                    alg.mul(&p, &assignment[i as usize - 1])
                });
            acc = alg.add(&acc, &alg.scale(c, &prod));
        }
        Ok(acc)
    }
}

/// Succeeds iff every term is a product of each of x_1 … x_m exactly once
/// with exponent 1.
pub fn classify_multilinear(f: &LaurentExpr, m: usize) -> Result<MultilinearTable, ClassifyError> {
    if m == 0 {
        return Err(ClassifyError::ZeroArity);
    }
    if f.is_zero() {
        return Err(ClassifyError::Zero);
    }
    let mut coeffs = BTreeMap::new();
    for (c, w) in f.terms() {
        let reject = |reason: String| ClassifyError::NotMultilinear {
            term: LaurentExpr::from_terms(f.field(), [(c.clone(), w.clone())]).to_string(),
            arity: m,
            reason,
        };
        let mut images = Vec::with_capacity(m);
        for &(v, e) in w.letters() {
            if e != 1 {
                return Err(reject(format!("{v} has exponent {e}")));
            }
            images.push(v.index());
        }
        if images.len() != m {
            return Err(reject(format!(
                "has {} variable occurrences, expected {m}",
                images.len()
            )));
        }
        let sigma = Permutation::from_one_line(images)
            .ok_or_else(|| reject("variables are not x1..xm each exactly once".into()))?;
        coeffs.insert(sigma, c.clone());
    }
    Ok(MultilinearTable {
        arity: m,
        field: f.field().clone(),
        coeffs,
    })
}

/// Classifies with m taken as the largest variable index.
pub fn classify_multilinear_auto(f: &LaurentExpr) -> Result<MultilinearTable, ClassifyError> {
    classify_multilinear(f, f.max_variable() as usize)
}
