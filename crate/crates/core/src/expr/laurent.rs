use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Fe, Field, FieldError};

use super::word::Word;

/// A noncommutative Laurent polynomial Σ c_i w_i: nonzero coefficients,
/// distinct words, terms sorted by the canonical word order. Structural
/// equality is therefore mathematical equality in the free group algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentExpr {
    field: Field,
    terms: Vec<(Fe, Word)>,
}

impl LaurentExpr {
    /// Collects like terms and drops zero coefficients.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Fe, Word)>) -> Self {
        let mut acc: BTreeMap<Word, Fe> = BTreeMap::new();
        for (c, w) in terms {
            let slot = acc.entry(w).or_insert_with(|| field.zero());
            *slot = &*slot + &c;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (c, w))
            .collect();
        LaurentExpr {
            field: field.clone(),
            terms,
        }
    }

    pub fn zero(field: &Field) -> Self {
        LaurentExpr {
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Fe) -> Self {
        let field = c.field();
        Self::from_terms(&field, [(c, Word::identity())])
    }

    pub fn word(field: &Field, w: Word) -> Self {
        Self::from_terms(field, [(field.one(), w)])
    }

    /// x1·x2 − x2·x1.
    pub fn commutator(field: &Field) -> Self {
        Self::from_terms(
            field,
            [
                (field.one(), Word::from_pairs(&[(1, 1), (2, 1)])),
                (-field.one(), Word::from_pairs(&[(2, 1), (1, 1)])),
            ],
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(Fe, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable index occurring.
    pub fn max_variable(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, w)| w.max_variable())
            .max()
            .unwrap_or(0)
    }

    /// No negative exponents anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(_, w)| !w.has_negative_exponent())
    }

    /// The expression as a single group word with coefficient 1, if it is one.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.as_slice() {
            [(c, w)] if c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(&self.field, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.field.one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Fe) -> Self {
        Self::from_terms(
            &self.field,
            self.terms.iter().map(|(a, w)| (a * c, w.clone())),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let terms = self
            .terms
            .iter()
            .flat_map(|(a, u)| other.terms.iter().map(move |(b, v)| (a * b, u.mul(v))));
        Self::from_terms(&self.field, terms)
    }

    /// Reduces coefficients into another field (ℚ → 𝔽_p), failing if a
    /// denominator is divisible by the characteristic.
    pub fn embed_into(&self, target: &Field) -> Result<Self, FieldError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let r = |c: &Fe| c.as_rational().cloned();
        let terms = self
            .terms
            .iter()
            .map(|(c, w)| {
                let q = r(c).ok_or_else(|| FieldError::NotRepresentable {
                    value: c.to_string(),
                    field: target.to_string(),
                })?;
                Ok((target.from_rational(&q)?, w.clone()))
            })
            .collect::<Result<Vec<_>, FieldError>>()?;
        Ok(Self::from_terms(target, terms))
    }
}

impl fmt::Display for LaurentExpr {
    /// Canonical form: terms in canonical order, `*` between factors,
    /// `^-1` style exponents, no parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, w)) in self.terms.iter().enumerate() {
            let lit = c.to_signed_literal().unwrap_or_else(|| format!("[{c}]"));
            let (neg, mag) = match lit.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, lit),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}
