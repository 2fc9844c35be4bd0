//! The algebra interface shared by matrix rings and quaternion algebras, and
//! degree certificates for algebraic elements.

use std::fmt::Debug;

use rand::Rng;
use serde::Serialize;

use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::poly::UnivariatePoly;

/// A finite-dimensional associative unital algebra over its base field, which
/// is assumed to be (contained in) the center.
pub trait Algebra: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn field(&self) -> &Field;

    /// Dimension over the base field.
    fn dim(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Fe, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Whether `a` lies in the base field (the center).
    fn is_central(&self, a: &Self::Elem) -> bool;

    fn min_poly(&self, a: &Self::Elem) -> UnivariatePoly;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// A basis over the base field.
    fn basis(&self) -> Vec<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a == &self.zero()
    }

    fn embed(&self, c: &Fe) -> Self::Elem {
        self.scale(c, &self.one())
    }

    fn random_invertible<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if self.inv(&a).is_some() {
                return a;
            }
        }
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    fn algebraic_degree(&self, a: &Self::Elem) -> DegreeCertificate {
        DegreeCertificate::from_min_poly(self.min_poly(a))
    }
}

/// The full matrix ring M_n(F).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAlgebra {
    n: usize,
    field: Field,
}

impl MatrixAlgebra {
    pub fn new(field: &Field, n: usize) -> Self {
        assert!(n >= 1, "matrix size must be positive");
        MatrixAlgebra {
            n,
            field: field.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

impl Algebra for MatrixAlgebra {
    type Elem = Matrix;

    fn field(&self) -> &Field {
        &self.field
    }

    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn zero(&self) -> Matrix {
        Matrix::zero(&self.field, self.n)
    }

    fn one(&self) -> Matrix {
        Matrix::identity(&self.field, self.n)
    }

    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a + b
    }

    fn sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a - b
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a * b
    }

    fn scale(&self, c: &Fe, a: &Matrix) -> Matrix {
        a.scale(c)
    }

    fn inv(&self, a: &Matrix) -> Option<Matrix> {
        a.inverse().ok()
    }

    fn is_central(&self, a: &Matrix) -> bool {
        a.is_scalar()
    }

    fn min_poly(&self, a: &Matrix) -> UnivariatePoly {
        a.min_poly()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        Matrix::random(&self.field, self.n, rng)
    }

    fn basis(&self) -> Vec<Matrix> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::unit(&self.field, self.n, i, j))
            .collect()
    }

    fn is_zero(&self, a: &Matrix) -> bool {
        a.is_zero()
    }
}

/// A minimal polynomial together with its degree: a proof that an element is
/// algebraic of exactly that degree over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub min_poly: UnivariatePoly,
    pub degree: usize,
}

impl DegreeCertificate {
    pub fn from_min_poly(min_poly: UnivariatePoly) -> Self {
        let min_poly = min_poly.monic();
        let degree = min_poly.degree().expect("minimal polynomial is nonzero");
        DegreeCertificate { min_poly, degree }
    }

    /// Checks the certificate against an element: monic, annihilates, and no
    /// proper divisor of smaller degree would (re-derived from scratch).
    pub fn verify<A: Algebra>(&self, alg: &A, a: &A::Elem) -> bool {
        self.min_poly.is_monic()
            && self.min_poly.degree() == Some(self.degree)
            && alg.is_zero(&eval_poly(alg, &self.min_poly, a))
            && alg.min_poly(a) == self.min_poly
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            min_poly: self
                .min_poly
                .coeffs()
                .iter()
                .map(crate::json::fe_to_json)
                .collect(),
            min_poly_text: self.min_poly.to_string(),
            degree: self.degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct CertificateJson {
    /// Low-to-high coefficients.
    pub min_poly: Vec<serde_json::Value>,
    pub min_poly_text: String,
    pub degree: usize,
}

/// The matrix min-poly of a single element.
pub fn algebraic_degree(a: &Matrix) -> DegreeCertificate {
    DegreeCertificate::from_min_poly(a.min_poly())
}

/// Horner evaluation of a polynomial at an algebra element.
pub fn eval_poly<A: Algebra>(alg: &A, p: &UnivariatePoly, a: &A::Elem) -> A::Elem {
    p.coeffs().iter().rev().fold(alg.zero(), |acc, c| {
        alg.add(&alg.mul(&acc, a), &alg.embed(c))
    })
}
