//! Exact scalar fields: ℚ, prime fields 𝔽_p and extension fields 𝔽_{p^k}.
//!
//! A [`Field`] is a cheap-to-clone descriptor. Every [`Fe`] carries enough of
//! its field (the prime, or a shared handle to the extension data) to do
//! arithmetic through the standard operator traits. Mixing elements of
//! different fields is an invariant violation and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Largest prime accepted for 𝔽_p (residue products must fit in `u128`).
pub const MAX_PRIME: u64 = 1 << 62;

/// Largest extension degree supported by the fixed-size digit buffers.
pub const MAX_EXTENSION_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^62")]
    PrimeTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} does not fit in 64 bits")]
    OrderTooLarge { p: u64, k: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("cannot represent {value} in {field}: denominator divisible by the characteristic")]
    NotRepresentable { value: String, field: String },
    #[error("invalid field element literal '{0}'")]
    BadLiteral(String),
    #[error("invalid field descriptor '{0}' (expected Q, Fp:<p>, F2k:<k> or Fpk:<p>:<k>)")]
    BadDescriptor(String),
}

/// Data for 𝔽_{p^k} = 𝔽_p[x]/(modulus).
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    k: u32,
    /// Low-to-high coefficients of the monic modulus, length k + 1.
    modulus: Vec<u64>,
    order: u64,
    default_modulus: bool,
}

impl ExtensionField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn unpack(&self, mut c: u64, out: &mut [u64; MAX_EXTENSION_DEGREE]) {
        for d in out.iter_mut().take(self.k as usize) {
            *d = c % self.p;
            c /= self.p;
        }
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        digits[..self.k as usize]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = ([0; MAX_EXTENSION_DEGREE], [0; MAX_EXTENSION_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        for i in 0..self.k as usize {
            x[i] = add_mod(x[i], y[i], self.p);
        }
        self.pack(&x)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut x = [0; MAX_EXTENSION_DEGREE];
        self.unpack(a, &mut x);
        for d in x.iter_mut().take(self.k as usize) {
            *d = neg_mod(*d, self.p);
        }
        self.pack(&x)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let p = self.p;
        let (mut x, mut y) = ([0; MAX_EXTENSION_DEGREE], [0; MAX_EXTENSION_DEGREE]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x[i], y[j], p), p);
            }
        }
        // reduce by the monic modulus from the top down
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let t = mul_mod(c, self.modulus[j], p);
                prod[top - k + j] = sub_mod(prod[top - k + j], t, p);
            }
        }
        self.pack(&prod)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

/// A field descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    Extension(Arc<ExtensionField>),
}

/// A field element. Rationals are kept fully reduced with positive
/// denominator; residues are kept in `[0, p)`; extension elements are packed
/// base-p digit vectors `c_0 + c_1 p + … + c_{k-1} p^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Fe {
    Q(BigRational),
    P { v: u64, p: u64 },
    E { c: u64, field: Arc<ExtensionField> },
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rational
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 𝔽_{p^k} with the smallest monic irreducible modulus in packed order.
    /// `k = 1` yields the prime field.
    pub fn extension(p: u64, k: u32) -> Result<Field, FieldError> {
        let base = Field::prime(p)?;
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if k == 1 {
            return Ok(base);
        }
        let order = checked_order(p, k)?;
        let candidates = p.pow(k - 1) * p;
        for packed in 0..candidates {
            let mut modulus = unpack_digits(packed, p, k as usize);
            modulus.push(1);
            if is_irreducible_mod_p(&modulus, p) {
                return Ok(Field::Extension(Arc::new(ExtensionField {
                    p,
                    k,
                    modulus,
                    order,
                    default_modulus: true,
                })));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// 𝔽_{p^k} with an explicit monic modulus (low-to-high coefficients).
    pub fn extension_with_modulus(p: u64, modulus: &[u64]) -> Result<Field, FieldError> {
        Field::prime(p)?;
        if modulus.len() < 3 || *modulus.last().unwrap() != 1 {
            return Err(FieldError::ReducibleModulus(
                modulus.len().saturating_sub(1) as u32,
            ));
        }
        let k = (modulus.len() - 1) as u32;
        let order = checked_order(p, k)?;
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(FieldError::ReducibleModulus(k));
        }
        let default_modulus = match Field::extension(p, k)? {
            Field::Extension(ext) => ext.modulus == modulus,
            _ => false,
        };
        Ok(Field::Extension(Arc::new(ExtensionField {
            p,
            k,
            modulus,
            order,
            default_modulus,
        })))
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::Extension(e) => e.p,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
            Field::Extension(e) => Some(e.order),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rational)
    }

    pub fn zero(&self) -> Fe {
        self.from_index(0)
    }

    pub fn one(&self) -> Fe {
        match self {
            Field::Rational => Fe::Q(BigRational::one()),
            Field::Prime(p) => Fe::P { v: 1 % p, p: *p },
            Field::Extension(e) => Fe::E {
                c: 1,
                field: e.clone(),
            },
        }
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Fe {
        match self {
            Field::Rational => Fe::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Fe::P {
                v: reduce_bigint(n, *p),
                p: *p,
            },
            Field::Extension(e) => Fe::E {
                c: reduce_bigint(n, e.p),
                field: e.clone(),
            },
        }
    }

    /// Embeds a rational. Over finite fields this is reduction mod p and
    /// fails when the denominator is divisible by p.
    pub fn from_rational(&self, r: &BigRational) -> Result<Fe, FieldError> {
        if let Field::Rational = self {
            return Ok(Fe::Q(r.clone()));
        }
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        match den.inv() {
            Some(d) => Ok(&num * &d),
            None => Err(FieldError::NotRepresentable {
                value: r.to_string(),
                field: self.to_string(),
            }),
        }
    }

    /// The `i`-th element in packed order (`i` as an integer for ℚ).
    pub fn from_index(&self, i: u64) -> Fe {
        match self {
            Field::Rational => Fe::Q(BigRational::from_integer(BigInt::from(i))),
            Field::Prime(p) => Fe::P { v: i % p, p: *p },
            Field::Extension(e) => Fe::E {
                c: i % e.order,
                field: e.clone(),
            },
        }
    }

    /// The class of `x` in 𝔽_p[x]/(modulus), for extension fields.
    pub fn generator(&self) -> Option<Fe> {
        match self {
            Field::Extension(e) => Some(Fe::E {
                c: e.p,
                field: e.clone(),
            }),
            _ => None,
        }
    }

    /// Uniform over finite fields; small integers in `[-9, 9]` over ℚ.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        match self {
            Field::Rational => Fe::Q(BigRational::from_integer(BigInt::from(
                rng.gen_range(-9i64..=9),
            ))),
            Field::Prime(p) => Fe::P {
                v: rng.gen_range(0..*p),
                p: *p,
            },
            Field::Extension(e) => Fe::E {
                c: rng.gen_range(0..e.order),
                field: e.clone(),
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Decodes the serialized form produced by [`Fe::encode`]: a decimal
    /// fraction over ℚ, a residue over 𝔽_p, a packed digit integer over
    /// 𝔽_{p^k}.
    pub fn decode(&self, s: &str) -> Result<Fe, FieldError> {
        let s = s.trim();
        match self {
            Field::Rational => parse_rational(s).map(Fe::Q),
            Field::Prime(_) => {
                let r = parse_rational(s)?;
                self.from_rational(&r)
            }
            Field::Extension(e) => {
                let c: u64 = s
                    .parse()
                    .map_err(|_| FieldError::BadLiteral(s.to_string()))?;
                if c >= e.order {
                    return Err(FieldError::BadLiteral(s.to_string()));
                }
                Ok(Fe::E {
                    c,
                    field: e.clone(),
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
            Field::Extension(e) => {
                if e.p == 2 && e.default_modulus {
                    write!(f, "F2k:{}", e.k)
                } else {
                    write!(f, "Fpk:{}:{}", e.p, e.k)?;
                    if !e.default_modulus {
                        let m: Vec<String> = e.modulus.iter().map(|c| c.to_string()).collect();
                        write!(f, ":{}", m.join(","))?;
                    }
                    Ok(())
                }
            }
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadDescriptor(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["Q"] | ["QQ"] => Ok(Field::Rational),
            ["Fp", p] => Field::prime(p.parse().map_err(|_| bad())?),
            ["F2k", k] => Field::extension(2, k.parse().map_err(|_| bad())?),
            ["Fpk", p, k] => {
                Field::extension(p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?)
            }
            ["Fpk", p, k, m] => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                let k: usize = k.parse().map_err(|_| bad())?;
                let modulus: Vec<u64> = m
                    .split(',')
                    .map(|c| c.parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                if modulus.len() != k + 1 {
                    return Err(bad());
                }
                Field::extension_with_modulus(p, &modulus)
            }
            _ => Err(bad()),
        }
    }
}

impl Fe {
    pub fn field(&self) -> Field {
        match self {
            Fe::Q(_) => Field::Rational,
            Fe::P { p, .. } => Field::Prime(*p),
            Fe::E { field, .. } => Field::Extension(field.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_zero(),
            Fe::P { v, .. } => *v == 0,
            Fe::E { c, .. } => *c == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_one(),
            Fe::P { v, .. } => *v == 1,
            Fe::E { c, .. } => *c == 1,
        }
    }

    pub fn inv(&self) -> Option<Fe> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Fe::Q(r) => Fe::Q(r.recip()),
            Fe::P { v, p } => Fe::P {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
            Fe::E { c, field } => Fe::E {
                c: field.pow(*c, field.order - 2),
                field: field.clone(),
            },
        })
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn pow(&self, e: i64) -> Option<Fe> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// Serialized form: decimal fraction over ℚ, residue over 𝔽_p, packed
    /// digits over 𝔽_{p^k}.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    /// Residues printed in the symmetric range `(-p/2, p/2]`, so that small
    /// negative constants read naturally in expressions. `None` for extension
    /// elements outside the prime subfield.
    pub fn to_signed_literal(&self) -> Option<String> {
        match self {
            Fe::Q(r) => Some(r.to_string()),
            Fe::P { v, p } => Some(signed_residue(*v, *p)),
            Fe::E { c, field } => (*c < field.p).then(|| signed_residue(*c, field.p)),
        }
    }

    /// Whether the value is negative when printed as a literal.
    pub fn is_negative_literal(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_negative(),
            Fe::P { v, p } => *v > p / 2,
            Fe::E { c, field } => *c < field.p && *c > field.p / 2,
        }
    }

    /// Total order used for canonical listings: numeric over ℚ, by residue or
    /// packed digits over finite fields.
    pub fn canonical_cmp(&self, other: &Fe) -> Ordering {
        match (self, other) {
            (Fe::Q(a), Fe::Q(b)) => a.cmp(b),
            (Fe::P { v: a, .. }, Fe::P { v: b, .. }) => a.cmp(b),
            (Fe::E { c: a, .. }, Fe::E { c: b, .. }) => a.cmp(b),
            _ => panic!("field mismatch"),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Fe::Q(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(r) => write!(f, "{r}"),
            Fe::P { v, .. } => write!(f, "{v}"),
            Fe::E { c, .. } => write!(f, "{c}"),
        }
    }
}

fn field_mismatch() -> ! {
    panic!("field mismatch in arithmetic")
}

impl Add<&Fe> for &Fe {
    type Output = Fe;
    fn add(self, rhs: &Fe) -> Fe {
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a + b),
            (Fe::P { v: a, p }, Fe::P { v: b, p: q }) if p == q => Fe::P {
                v: add_mod(*a, *b, *p),
                p: *p,
            },
            (Fe::E { c: a, field }, Fe::E { c: b, field: g }) if field == g => Fe::E {
                c: field.add(*a, *b),
                field: field.clone(),
            },
            _ => field_mismatch(),
        }
    }
}

impl Sub<&Fe> for &Fe {
    type Output = Fe;
    fn sub(self, rhs: &Fe) -> Fe {
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a - b),
            (Fe::P { v: a, p }, Fe::P { v: b, p: q }) if p == q => Fe::P {
                v: sub_mod(*a, *b, *p),
                p: *p,
            },
            (Fe::E { c: a, field }, Fe::E { c: b, field: g }) if field == g => Fe::E {
                c: field.add(*a, field.neg(*b)),
                field: field.clone(),
            },
            _ => field_mismatch(),
        }
    }
}

impl Mul<&Fe> for &Fe {
    type Output = Fe;
    fn mul(self, rhs: &Fe) -> Fe {
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a * b),
            (Fe::P { v: a, p }, Fe::P { v: b, p: q }) if p == q => Fe::P {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            (Fe::E { c: a, field }, Fe::E { c: b, field: g }) if field == g => Fe::E {
                c: field.mul(*a, *b),
                field: field.clone(),
            },
            _ => field_mismatch(),
        }
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match self {
            Fe::Q(a) => Fe::Q(-a),
            Fe::P { v, p } => Fe::P {
                v: neg_mod(*v, *p),
                p: *p,
            },
            Fe::E { c, field } => Fe::E {
                c: field.neg(*c),
                field: field.clone(),
            },
        }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Fe> for Fe {
            type Output = Fe;
            fn $m(self, rhs: &Fe) -> Fe {
                (&self).$m(rhs)
            }
        }
        impl $tr<Fe> for &Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// ---------------------------------------------------------------------------
// integer helpers

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn signed_residue(v: u64, p: u64) -> String {
    if v > p / 2 {
        format!("-{}", p - v)
    } else {
        v.to_string()
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn checked_order(p: u64, k: u32) -> Result<u64, FieldError> {
    if k as usize > MAX_EXTENSION_DEGREE {
        return Err(FieldError::OrderTooLarge { p, k });
    }
    p.checked_pow(k).ok_or(FieldError::OrderTooLarge { p, k })
}

fn unpack_digits(mut c: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::BadLiteral(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// dense polynomials over 𝔽_p (low-to-high), used only for the irreducibility test

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let lead_inv = pow_mod(*m.last().unwrap(), p - 2, p);
    while r.len() >= m.len() {
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - m.len();
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, mi, p), p);
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^e) mod m by repeated p-th powering.
fn frobenius_power(m: &[u64], p: u64, e: u32) -> Vec<u64> {
    let mut x = poly_rem(&[0, 1], m, p);
    for _ in 0..e {
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut n = p;
        while n > 0 {
            if n & 1 == 1 {
                acc = poly_mulmod(&acc, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            n >>= 1;
        }
        x = acc;
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial over 𝔽_p.
pub fn is_irreducible_mod_p(modulus: &[u64], p: u64) -> bool {
    let f = trim(modulus.to_vec());
    if f.len() < 2 || f.last() != Some(&1) {
        return false;
    }
    let k = (f.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let x_minus = |mut poly: Vec<u64>| {
        if poly.len() < 2 {
            poly.resize(2, 0);
        }
        poly[1] = sub_mod(poly[1], 1, p);
        trim(poly)
    };
    let full = x_minus(frobenius_power(&f, p, k));
    if !full.is_empty() {
        return false;
    }
    let mut primes = Vec::new();
    let mut n = k;
    let mut d = 2;
    while n > 1 {
        if n.is_multiple_of(d) {
            primes.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    primes.iter().all(|&q| {
        let h = x_minus(frobenius_power(&f, p, k / q));
        poly_gcd(&f, &h, p).len() == 1
    })
}
