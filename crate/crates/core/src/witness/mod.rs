//! Constructive witnesses: the targets P_m and Q_m, 2×2 preimages under
//! multilinear polynomials and group words, block-diagonal assembly, maximal
//! subfield reports and degree-bound audits.
//!
//! Every preimage is re-evaluated against its target before it is returned.

mod audit;
mod preimage;
mod report;
mod spectrum;
mod word_preimage;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{ClassifyError, EvalError};
use crate::matrix::Matrix;
use crate::quaternion::QuaternionError;

pub use audit::{degree_bound_audit, degree_bound_audit_model, AuditReport, AuditStatus};
pub use preimage::{
    conjugator_2x2, multilinear_preimage_2x2, noncentral_on_m2, CentralitySource,
    CentralityVerdict, Preimage,
};
pub use report::{maximal_subfield_witness, Element, Model, WitnessExpr, WitnessReport};
pub use spectrum::{
    a_block, b_block, build_pm, build_qm, choose_spectrum, minimum_field_order, SpectrumParams,
};
pub use word_preimage::{random_sl2, word_preimage_sl2, WordPreimage, DEFAULT_WORD_BUDGET};

/// Default resampling count for the linear-solve preimage.
pub const DEFAULT_RETRIES: u32 = 10;
/// Default number of random samples for centrality and quaternion searches.
pub const DEFAULT_TRIALS: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("field {field} has {order} elements; at least {needed} are needed")]
    FieldTooSmall {
        field: String,
        order: u64,
        needed: u64,
    },
    #[error("expected a 2×2 matrix, got {0}×{0}")]
    NotTwoByTwo(usize),
    #[error("expected an element of {expected}, got one of {got}")]
    FieldMismatch { expected: String, got: String },
    #[error("target has trace {0}; trace zero is required")]
    TraceNonzero(String),
    #[error("the polynomial is central on M_2")]
    CentralPolynomial,
    #[error("target has determinant {0}; determinant 1 is required")]
    DetNotOne(String),
    #[error("target has trace ±2")]
    TraceIsPlusMinusTwo,
    #[error("target eigenvalues do not lie in the field")]
    NotSplit,
    #[error("the word is trivial")]
    TrivialWord,
    #[error("expected {expected} blocks, got {got}")]
    BlockCount { expected: usize, got: usize },
    #[error("block {block} has {got} matrices, expected {expected}")]
    ArityMismatch {
        block: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix model needs size m ≥ 2, got {0}")]
    SizeTooSmall(usize),
    #[error("the quaternion algebra is split: {0} has reduced norm zero")]
    SplitQuaternionAlgebra(String),
    #[error("expression is neither multilinear nor a single group word: {0}")]
    UnsupportedExpression(String),
    #[error("{what}: no success after {attempts} attempts (seed {seed}); inconclusive")]
    Exhausted {
        what: String,
        attempts: u64,
        seed: u64,
    },
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("result failed re-verification: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Quaternion(#[from] QuaternionError),
}

/// Broad failure classes, used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Precondition,
    Exhaustion,
    Defect,
}

impl WitnessError {
    pub fn kind(&self) -> FailureKind {
        match self {
            WitnessError::Exhausted { .. } => FailureKind::Exhaustion,
            WitnessError::VerificationFailed(_) => FailureKind::Defect,
            _ => FailureKind::Precondition,
        }
    }
}

/// Search budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Resamples for each multilinear preimage.
    pub retries: u32,
    /// Sampled tuples for each word preimage.
    pub word_budget: u64,
    /// Random samples for centrality checks and quaternion searches.
    pub trials: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            retries: DEFAULT_RETRIES,
            word_budget: DEFAULT_WORD_BUDGET,
            trials: DEFAULT_TRIALS,
        }
    }
}

/// Scalar block appended when m is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pad {
    /// 0: polynomial targets, no inverses needed.
    Zero,
    /// 1: word targets, keeps every matrix in SL_m.
    One,
}

/// T_j = diag(T_{1j}, …, T_{sj}) plus the pad entry when m is odd.
pub fn assemble_block_witness(
    blocks: &[Vec<Matrix>],
    m: usize,
    pad: Pad,
) -> Result<Vec<Matrix>, WitnessError> {
    let s = m / 2;
    if blocks.len() != s || s == 0 {
        return Err(WitnessError::BlockCount {
            expected: s,
            got: blocks.len(),
        });
    }
    let n = blocks[0].len();
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != n {
            return Err(WitnessError::ArityMismatch {
                block: i,
                expected: n,
                got: b.len(),
            });
        }
        if let Some(bad) = b.iter().find(|t| t.size() != 2) {
            return Err(WitnessError::NotTwoByTwo(bad.size()));
        }
    }
    let field = blocks[0][0].field().clone();
    Ok((0..n)
        .map(|j| {
            let mut parts: Vec<Matrix> = blocks.iter().map(|b| b[j].clone()).collect();
            if m % 2 == 1 {
                parts.push(match pad {
                    Pad::Zero => Matrix::zero(&field, 1),
                    Pad::One => Matrix::identity(&field, 1),
                });
            }
            Matrix::block_diag(&parts).expect("blocks share a field")
        })
        .collect())
}
