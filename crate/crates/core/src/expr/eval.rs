use thiserror::Error;

use crate::algebra::Algebra;

use super::laurent::LaurentExpr;
use super::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment has {got} elements but the expression uses x{needed}")]
    ArityMismatch { needed: usize, got: usize },
    #[error("x{variable} occurs with a negative exponent but its value is not invertible")]
    NotInvertible { variable: u32 },
    #[error("expression coefficients live in {expr} but the algebra is over {algebra}")]
    FieldMismatch { expr: String, algebra: String },
}

/// Values of the variables with inverses computed on demand.
struct Substitution<'a, A: Algebra> {
    alg: &'a A,
    values: &'a [A::Elem],
    inverses: Vec<Option<A::Elem>>,
}

impl<'a, A: Algebra> Substitution<'a, A> {
    fn new(alg: &'a A, values: &'a [A::Elem], needed: usize) -> Result<Self, EvalError> {
        if values.len() < needed {
            return Err(EvalError::ArityMismatch {
                needed,
                got: values.len(),
            });
        }
        Ok(Substitution {
            alg,
            values,
            inverses: vec![None; values.len()],
        })
    }

    fn word(&mut self, w: &Word) -> Result<A::Elem, EvalError> {
        let mut acc: Option<A::Elem> = None;
        for &(v, e) in w.letters() {
            let slot = v.slot();
            let base = if e < 0 {
                if self.inverses[slot].is_none() {
                    let inv = self
                        .alg
                        .inv(&self.values[slot])
                        .ok_or(EvalError::NotInvertible {
                            variable: v.index(),
                        })?;
                    self.inverses[slot] = Some(inv);
                }
                self.inverses[slot].as_ref().unwrap()
            } else {
                &self.values[slot]
            };
            let p = self.alg.pow(base, e.abs()).expect("nonnegative power");
            acc = Some(match acc {
                None => p,
                Some(a) => self.alg.mul(&a, &p),
            });
        }
        Ok(acc.unwrap_or_else(|| self.alg.one()))
    }
}

/// f(a_1, …, a_m): every coefficient-times-word term evaluated in the algebra.
/// Extra assignment entries beyond the largest variable are ignored.
pub fn evaluate<A: Algebra>(
    f: &LaurentExpr,
    alg: &A,
    assignment: &[A::Elem],
) -> Result<A::Elem, EvalError> {
    if f.field() != alg.field() {
        return Err(EvalError::FieldMismatch {
            expr: f.field().to_string(),
            algebra: alg.field().to_string(),
        });
    }
    let mut sub = Substitution::new(alg, assignment, f.max_variable() as usize)?;
    let mut acc = alg.zero();
    for (c, w) in f.terms() {
        let v = sub.word(w)?;
        acc = alg.add(&acc, &alg.scale(c, &v));
    }
    Ok(acc)
}

/// w(a_1, …, a_m) for a group word.
pub fn evaluate_word<A: Algebra>(
    w: &Word,
    alg: &A,
    assignment: &[A::Elem],
) -> Result<A::Elem, EvalError> {
    Substitution::new(alg, assignment, w.max_variable() as usize)?.word(w)
}
