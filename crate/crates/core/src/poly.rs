//! Dense univariate polynomials over a [`Field`], with exact root finding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("rational root search needs |constant| and |leading| coefficients below 10^12")]
    CoefficientsTooLarge,
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
}

/// Coefficients low-to-high with no trailing zeros; the empty vector is the
/// zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl UnivariatePoly {
    pub fn new(field: Field, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(Fe::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field.clone(), Vec::new())
    }

    pub fn constant(c: Fe) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field.one())
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::new(field.clone(), vec![field.zero(), field.one()])
    }

    /// `x - r`.
    pub fn linear(r: &Fe) -> Self {
        let f = r.field();
        Self::new(f.clone(), vec![-r, f.one()])
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots(field: &Field, roots: &[Fe]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, r| &acc * &Self::linear(r))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Fe::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &Fe) -> Self {
        Self::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by the zero polynomial");
        let dl_inv = dl.inv().unwrap();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &dl_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dj);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (
            Self::new(self.field.clone(), q),
            Self::new(self.field.clone(), r),
        )
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let g = self.gcd(other);
        (self * other).div_rem(&g).0.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots lying in the field, in canonical order (finite fields:
    /// by residue / packed digits; ℚ: by absolute value, positive first).
    pub fn roots(&self) -> Result<Vec<Fe>, RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let mut roots = match &self.field {
            Field::Rational => rational_roots(self)?,
            _ => finite_field_roots(self),
        };
        match &self.field {
            Field::Rational => roots.sort_by(|a, b| {
                let (a, b) = (a.as_rational().unwrap(), b.as_rational().unwrap());
                a.abs().cmp(&b.abs()).then(b.cmp(a))
            }),
            _ => roots.sort_by(Fe::canonical_cmp),
        }
        roots.dedup();
        Ok(roots)
    }
}

impl std::ops::Add<&UnivariatePoly> for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn add(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UnivariatePoly::new(self.field.clone(), coeffs)
    }
}

impl std::ops::Sub<&UnivariatePoly> for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn sub(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        UnivariatePoly::new(self.field.clone(), coeffs)
    }
}

impl std::ops::Mul<&UnivariatePoly> for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn mul(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UnivariatePoly::new(self.field.clone(), out)
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c.to_signed_literal() {
                Some(s) => match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                },
                None => (false, format!("[{c}]")),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn finite_field_roots(f: &UnivariatePoly) -> Vec<Fe> {
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let f = f.monic();
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let x = UnivariatePoly::x(&field);
    // product of the distinct linear factors: gcd(f, x^q - x)
    let xq = x.pow_mod(q, &f);
    let split = f.gcd(&(&xq - &x));
    let mut out = Vec::new();
    // fixed seed: the root set does not depend on the splitting choices
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(&split, q, &mut rng, &mut out);
    out
}

/// Equal-degree splitting of a squarefree product of linear factors.
fn split_linear(g: &UnivariatePoly, q: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fe>) {
    let field = g.field().clone();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(-&g.coeff(0));
            return;
        }
        _ => {}
    }
    let x = UnivariatePoly::x(&field);
    loop {
        let h = if q % 2 == 1 {
            let shifted = &x + &UnivariatePoly::constant(field.random(rng));
            let t = shifted.pow_mod((q - 1) / 2, g);
            &t - &UnivariatePoly::one(&field)
        } else {
            // absolute trace of β·x: t + t^2 + t^4 + ... over 𝔽_{2^k}; a
            // constant shift would only move the trace by a constant
            let k = q.trailing_zeros();
            let mut term = x.scale(&field.random_nonzero(rng)).rem(g);
            let mut acc = term.clone();
            for _ in 1..k {
                term = (&term * &term).rem(g);
                acc = &acc + &term;
            }
            acc
        };
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let (other, _) = g.div_rem(&d);
            split_linear(&d, q, rng, out);
            split_linear(&other.monic(), q, rng, out);
            return;
        }
    }
}

const RATIONAL_ROOT_BOUND: u64 = 1_000_000_000_000;

fn rational_roots(f: &UnivariatePoly) -> Result<Vec<Fe>, RootError> {
    // clear denominators to a primitive integer polynomial
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let lead_zero = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zero > 0 {
        roots.push(Field::Rational.zero());
        ints.drain(..lead_zero);
    }
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        ints.iter_mut().for_each(|c| *c = &*c / &content);
    }
    let q = |n: BigInt, d: BigInt| Fe::Q(BigRational::new(n, d));
    match ints.len() - 1 {
        0 => {}
        1 => roots.push(q(-&ints[0], ints[1].clone())),
        2 => {
            let (c, b, a) = (&ints[0], &ints[1], &ints[2]);
            let disc: BigInt = b * b - BigInt::from(4) * a * c;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    let two_a: BigInt = a * 2;
                    roots.push(q(-b + &s, two_a.clone()));
                    roots.push(q(-b - &s, two_a));
                }
            }
        }
        _ => {
            let a0 = ints[0].abs().to_u64().filter(|&v| v < RATIONAL_ROOT_BOUND);
            let an = ints
                .last()
                .unwrap()
                .abs()
                .to_u64()
                .filter(|&v| v < RATIONAL_ROOT_BOUND);
            let (Some(a0), Some(an)) = (a0, an) else {
                return Err(RootError::CoefficientsTooLarge);
            };
            for num in divisors(a0) {
                for den in divisors(an) {
                    for sign in [1i64, -1] {
                        let cand = q(BigInt::from(num) * sign, BigInt::from(den));
                        if f.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    Ok(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Fe {
        Field::Rational.from_i64(n)
    }

    fn qpoly(c: &[i64]) -> UnivariatePoly {
        UnivariatePoly::new(Field::Rational, c.iter().map(|&v| q(v)).collect())
    }

    #[test]
    fn display_matches_usual_notation() {
        assert_eq!(qpoly(&[-4, 0, 1]).to_string(), "x^2 - 4");
        assert_eq!(qpoly(&[1, -2, 1]).to_string(), "x^2 - 2*x + 1");
        assert_eq!(qpoly(&[0, -1]).to_string(), "-x");
        assert_eq!(qpoly(&[]).to_string(), "0");
        let f = Field::prime(7).unwrap();
        let p = UnivariatePoly::new(f.clone(), vec![f.from_i64(6), f.zero(), f.one()]);
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn division_and_gcd() {
        let a = qpoly(&[-4, 0, 1]);
        let b = qpoly(&[-2, 1]);
        let (quo, r) = a.div_rem(&b);
        assert_eq!(quo, qpoly(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&qpoly(&[2, 1])), qpoly(&[2, 1]));
        assert_eq!(a.lcm(&qpoly(&[-3, 1])).degree(), Some(3));
    }

    #[test]
    fn rational_roots_are_ordered() {
        let r = qpoly(&[-4, 0, 1]).roots().unwrap();
        assert_eq!(r, vec![q(2), q(-2)]);
        assert!(qpoly(&[2, 0, 1]).roots().unwrap().is_empty());
        assert!(qpoly(&[-2, 0, 0, 1]).roots().unwrap().is_empty());
        let cubic = UnivariatePoly::from_roots(
            &Field::Rational,
            &[q(3), Fe::Q(BigRational::new(1.into(), 2.into())), q(0)],
        );
        assert_eq!(cubic.roots().unwrap().len(), 3);
    }

    #[test]
    fn finite_roots_match_exhaustive_search() {
        for field in [
            Field::prime(101).unwrap(),
            Field::extension(2, 6).unwrap(),
            Field::extension(3, 3).unwrap(),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..20 {
                let coeffs = (0..5)
                    .map(|_| field.random(&mut rng))
                    .chain([field.one()])
                    .collect();
                let p = UnivariatePoly::new(field.clone(), coeffs);
                let brute: Vec<Fe> = (0..field.order().unwrap())
                    .map(|i| field.from_index(i))
                    .filter(|x| p.eval(x).is_zero())
                    .collect();
                assert_eq!(p.roots().unwrap(), brute);
            }
        }
    }
}
