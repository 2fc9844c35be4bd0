use rand::Rng;

use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::search::trial_rng;

use super::WitnessError;

/// Eigenvalue data for the targets P_m and Q_m: s = ⌊m/2⌋ values a_i for the
/// blocks [[a_i, 1], [0, −a_i]] and s values b_i for diag(b_i, b_i⁻¹).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumParams {
    pub m: usize,
    pub field: Field,
    pub a_values: Vec<Fe>,
    pub b_values: Vec<Fe>,
}

impl SpectrumParams {
    pub fn s(&self) -> usize {
        self.m / 2
    }

    /// Checks every constraint; returns the first violation.
    pub fn validate(&self) -> Result<(), WitnessError> {
        let bad = |msg: String| Err(WitnessError::InvalidSpectrum(msg));
        let s = self.s();
        if self.m < 2 {
            return bad(format!("m = {} but m ≥ 2 is required", self.m));
        }
        if self.a_values.len() != s || self.b_values.len() != s {
            return bad(format!("expected {s} values of a and of b"));
        }
        let char2 = self.field.characteristic() == 2;
        let mut a_seen: Vec<Fe> = Vec::new();
        for a in &self.a_values {
            if a.field() != self.field {
                return bad(format!("{a} is not in {}", self.field));
            }
            if a.is_zero() || (!char2 && a.is_one()) {
                return bad(format!("a = {a} is excluded"));
            }
            let pm = if char2 {
                vec![a.clone()]
            } else {
                vec![a.clone(), -a]
            };
            for x in pm {
                if a_seen.contains(&x) {
                    return bad(format!("±a values collide at {x}"));
                }
                a_seen.push(x);
            }
        }
        let mut b_seen: Vec<Fe> = Vec::new();
        for b in &self.b_values {
            if b.field() != self.field {
                return bad(format!("{b} is not in {}", self.field));
            }
            if b.is_zero() || b.is_one() {
                return bad(format!("b = {b} is excluded"));
            }
            let inv = b.inv().unwrap();
            if &inv == b {
                return bad(format!("b = {b} equals its inverse"));
            }
            for x in [b.clone(), inv] {
                if b_seen.contains(&x) {
                    return bad(format!("b values and inverses collide at {x}"));
                }
                b_seen.push(x);
            }
        }
        Ok(())
    }
}

/// Smallest field order admitting s = ⌊m/2⌋ admissible a and b values.
pub fn minimum_field_order(m: usize, characteristic: u64) -> u64 {
    let s = (m / 2) as u64;
    if characteristic == 2 {
        2 * s + 2
    } else {
        2 * s + 3
    }
}

/// Picks admissible a_i, b_i. Without a seed the candidates are the elements
/// 2, 3, 4, … in packed order (integers over ℚ), taken greedily; with a seed
/// they are drawn at random first and the greedy pass fills any gap.
pub fn choose_spectrum(
    m: usize,
    field: &Field,
    seed: Option<u64>,
) -> Result<SpectrumParams, WitnessError> {
    if m < 2 {
        return Err(WitnessError::InvalidSpectrum(format!(
            "m = {m} but m ≥ 2 is required"
        )));
    }
    let s = m / 2;
    let too_small = || WitnessError::FieldTooSmall {
        field: field.to_string(),
        order: field.order().unwrap_or(0),
        needed: minimum_field_order(m, field.characteristic()),
    };
    if let Some(order) = field.order() {
        if order < minimum_field_order(m, field.characteristic()) {
            return Err(too_small());
        }
    }
    let char2 = field.characteristic() == 2;
    let mut a_values: Vec<Fe> = Vec::new();
    let mut b_values: Vec<Fe> = Vec::new();
    let a_ok = |a: &Fe, chosen: &[Fe]| {
        !a.is_zero()
            && (char2 || !a.is_one())
            && chosen.iter().all(|c| c != a && (char2 || c != &-a))
    };
    let b_ok = |b: &Fe, chosen: &[Fe]| {
        if b.is_zero() || b.is_one() {
            return false;
        }
        let inv = b.inv().unwrap();
        inv != *b && chosen.iter().all(|c| c != b && c != &inv)
    };
    if let Some(seed) = seed {
        let mut rng = trial_rng(seed, 0);
        for _ in 0..64 * s {
            let x = match field {
                Field::Rational => {
                    field.from_i64(rng.gen_range(2..=97) * if rng.gen() { 1 } else { -1 })
                }
                _ => field.random(&mut rng),
            };
            if a_values.len() < s && a_ok(&x, &a_values) {
                a_values.push(x.clone());
            }
            let y = match field {
                Field::Rational => field.from_i64(rng.gen_range(2..=97)),
                _ => field.random(&mut rng),
            };
            if b_values.len() < s && b_ok(&y, &b_values) {
                b_values.push(y);
            }
        }
    }
    let limit = field.order().unwrap_or(u64::MAX);
    let mut i = 2u64;
    while (a_values.len() < s || b_values.len() < s) && i < limit {
        let x = field.from_index(i);
        if a_values.len() < s && a_ok(&x, &a_values) {
            a_values.push(x.clone());
        }
        if b_values.len() < s && b_ok(&x, &b_values) {
            b_values.push(x);
        }
        i += 1;
    }
    if a_values.len() < s || b_values.len() < s {
        return Err(too_small());
    }
    let params = SpectrumParams {
        m,
        field: field.clone(),
        a_values,
        b_values,
    };
    params.validate()?;
    Ok(params)
}

/// [[a, 1], [0, −a]].
pub fn a_block(a: &Fe) -> Matrix {
    let f = a.field();
    Matrix::from_rows(&f, vec![vec![a.clone(), f.one()], vec![f.zero(), -a]]).unwrap()
}

/// diag(b, b⁻¹).
pub fn b_block(b: &Fe) -> Matrix {
    Matrix::diag(&b.field(), &[b.clone(), b.inv().expect("b is nonzero")])
}

/// diag(A_1, …, A_s) with a trailing 0 when m is odd.
pub fn build_pm(params: &SpectrumParams) -> Matrix {
    let f = &params.field;
    let mut blocks: Vec<Matrix> = params.a_values.iter().map(a_block).collect();
    if params.m % 2 == 1 {
        blocks.push(Matrix::zero(f, 1));
    }
    Matrix::block_diag(&blocks).expect("blocks share a field")
}

/// diag(B_1, …, B_s) with a trailing 1 when m is odd.
pub fn build_qm(params: &SpectrumParams) -> Matrix {
    let f = &params.field;
    let mut blocks: Vec<Matrix> = params.b_values.iter().map(b_block).collect();
    if params.m % 2 == 1 {
        blocks.push(Matrix::identity(f, 1));
    }
    Matrix::block_diag(&blocks).expect("blocks share a field")
}
