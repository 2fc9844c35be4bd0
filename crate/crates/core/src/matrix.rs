//! Square matrices over a [`Field`]: arithmetic, exact linear solving,
//! characteristic polynomials (Berkowitz) and minimal polynomials (Krylov).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::poly::UnivariatePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("entries from different fields")]
    FieldMismatch,
    #[error("matrix must have size at least 1")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    field: Field,
    /// row-major
    entries: Vec<Fe>,
}

impl Matrix {
    pub fn zero(field: &Field, n: usize) -> Matrix {
        Matrix {
            n,
            field: field.clone(),
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Fe) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(field: &Field, d: &[Fe]) -> Matrix {
        let n = d.len();
        let mut m = Matrix::zero(field, n);
        for (i, c) in d.iter().enumerate() {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    /// The matrix unit E_{ij} (0-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        m.entries[i * n + j] = field.one();
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>) -> Result<Matrix, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::DimensionMismatch(
                "rows must all have length equal to the row count".into(),
            ));
        }
        let entries: Vec<Fe> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| &e.field() != field) {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(Matrix {
            n,
            field: field.clone(),
            entries,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("square integer matrix")
    }

    /// Companion matrix of a monic polynomial of degree ≥ 1.
    pub fn companion(poly: &UnivariatePoly) -> Matrix {
        let field = poly.field().clone();
        let p = poly.monic();
        let n = p.degree().expect("nonzero polynomial");
        assert!(n >= 1, "companion matrix needs degree at least 1");
        let mut m = Matrix::zero(&field, n);
        for i in 1..n {
            m.entries[i * n + i - 1] = field.one();
        }
        for i in 0..n {
            m.entries[i * n + n - 1] = -&p.coeff(i);
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        Matrix {
            n,
            field: field.clone(),
            entries: (0..n * n).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Fe>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Fe::is_zero)
    }

    /// Whether the matrix is a scalar multiple of the identity (the center of M_n).
    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i == j {
                    self.get(i, j) == d
                } else {
                    self.get(i, j).is_zero()
                }
            })
        })
    }

    fn check_same(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}×{} vs {}×{}",
                self.n, self.n, other.n, other.n
            )));
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            n: self.n,
            field: self.field.clone(),
            entries,
        })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            n: self.n,
            field: self.field.clone(),
            entries,
        })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    if !a.is_zero() {
                        acc = &acc + &(a * &other.entries[k * n + j]);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            n,
            field: self.field.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: &Fe) -> Matrix {
        Matrix {
            n: self.n,
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| self.entries[(idx % n) * n + idx / n].clone())
            .collect();
        Matrix {
            n,
            field: self.field.clone(),
            entries,
        }
    }

    pub fn trace(&self) -> Fe {
        (0..self.n).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Fe {
        let n = self.n;
        let mut a = self.rows();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return self.field.zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det = &det * &p;
            let p_inv = p.inv().unwrap();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &p_inv;
                for c in col..n {
                    let t = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        let n = self.n;
        let mut aug: Vec<Vec<Fe>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| {
                    if i == j {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                row
            })
            .collect();
        let rank = rref(&mut aug, n);
        if rank < n {
            return Err(LinalgError::Singular);
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(&self.field, rows)
    }

    /// Solves `self · x = b` for a nonsingular `self`.
    pub fn solve_linear(&self, b: &[Fe]) -> Result<Vec<Fe>, LinalgError> {
        if b.len() != self.n {
            return Err(LinalgError::DimensionMismatch(format!(
                "rhs length {} for size {}",
                b.len(),
                self.n
            )));
        }
        let mut aug: Vec<Vec<Fe>> = self
            .rows()
            .into_iter()
            .zip(b)
            .map(|(mut r, bi)| {
                r.push(bi.clone());
                r
            })
            .collect();
        if rref(&mut aug, self.n) < self.n {
            return Err(LinalgError::Singular);
        }
        Ok(aug.into_iter().map(|r| r[self.n].clone()).collect())
    }

    pub fn pow(&self, e: i64) -> Result<Matrix, LinalgError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Matrix::identity(&self.field, self.n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Block-diagonal matrix with the given square blocks, zeros elsewhere.
    pub fn block_diag(blocks: &[Matrix]) -> Result<Matrix, LinalgError> {
        let first = blocks.first().ok_or(LinalgError::Empty)?;
        let field = first.field.clone();
        if blocks.iter().any(|b| b.field != field) {
            return Err(LinalgError::FieldMismatch);
        }
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Matrix::zero(&field, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.entries[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        Ok(m)
    }

    /// The `size × size` diagonal block starting at `offset`.
    pub fn block(&self, offset: usize, size: usize) -> Matrix {
        let mut m = Matrix::zero(&self.field, size);
        for i in 0..size {
            for j in 0..size {
                m.entries[i * size + j] = self.get(offset + i, offset + j).clone();
            }
        }
        m
    }

    /// Evaluates a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &UnivariatePoly) -> Matrix {
        p.coeffs()
            .iter()
            .rev()
            .fold(Matrix::zero(&self.field, self.n), |acc, c| {
                &(&acc * self) + &Matrix::scalar(&self.field, self.n, c)
            })
    }

    /// Characteristic polynomial det(xI − A) by the Berkowitz algorithm;
    /// division-free, so valid in every characteristic.
    pub fn char_poly(&self) -> UnivariatePoly {
        let n = self.n;
        let f = &self.field;
        // coefficients highest degree first
        let mut v: Vec<Fe> = vec![f.one()];
        for k in 0..n {
            // leading principal k×k block M, row R = A[k][..k], column S = A[..k][k]
            let mut t = Vec::with_capacity(k + 2);
            t.push(f.one());
            t.push(-self.get(k, k));
            let mut ms: Vec<Fe> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rs = (0..k).fold(f.zero(), |acc, j| &acc + &(self.get(k, j) * &ms[j]));
                t.push(-rs);
                ms = (0..k)
                    .map(|i| (0..k).fold(f.zero(), |acc, j| &acc + &(self.get(i, j) * &ms[j])))
                    .collect();
            }
            let mut next = vec![f.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if j <= i && i - j < t.len() {
                        *slot = &*slot + &(&t[i - j] * vj);
                    }
                }
            }
            v = next;
        }
        v.reverse();
        UnivariatePoly::new(f.clone(), v)
    }

    /// Minimal polynomial: the first linear dependence among I, A, A², …
    /// in the flattened n²-dimensional space.
    pub fn min_poly(&self) -> UnivariatePoly {
        let n = self.n;
        let f = &self.field;
        let dim = n * n;
        // echelon rows: (vector, pivot column, combination in terms of powers)
        let mut basis: Vec<(Vec<Fe>, usize, Vec<Fe>)> = Vec::new();
        let mut power = Matrix::identity(f, n);
        for k in 0..=dim {
            let mut v = power.entries.clone();
            let mut comb = vec![f.zero(); k + 1];
            comb[k] = f.one();
            for (b, piv, bc) in &basis {
                if v[*piv].is_zero() {
                    continue;
                }
                let factor = &v[*piv] * &b[*piv].inv().unwrap();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = &*vi - &(&factor * bi);
                }
                for (ci, bci) in comb.iter_mut().zip(bc) {
                    *ci = &*ci - &(&factor * bci);
                }
            }
            match v.iter().position(|e| !e.is_zero()) {
                None => return UnivariatePoly::new(f.clone(), comb),
                Some(piv) => basis.push((v, piv, comb)),
            }
            power = &power * self;
        }
        unreachable!("Cayley–Hamilton bounds the Krylov dimension by n")
    }
}

/// Reduced row echelon form in place over the first `cols` columns; returns
/// the rank. Extra columns (augmentation) are carried along.
pub(crate) fn rref(a: &mut [Vec<Fe>], cols: usize) -> usize {
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].inv().unwrap();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = &*d - &(&factor * s);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Some solution of a possibly singular or rectangular system
/// `Σ_j rows[i][j] x_j = rhs[i]`, free variables set to zero; `None` if the
/// system is inconsistent.
pub fn solve_any(field: &Field, rows: &[Vec<Fe>], rhs: &[Fe]) -> Option<Vec<Fe>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Fe>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let rank = rref(&mut aug, cols);
    if aug[rank..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for row in &aug[..rank] {
        let piv = row.iter().position(|e| !e.is_zero()).unwrap();
        x[piv] = row[cols].clone();
    }
    Some(x)
}

/// A basis of `{x : Σ_j rows[i][j] x_j = 0}` over `cols` unknowns.
pub fn nullspace(field: &Field, rows: &[Vec<Fe>], cols: usize) -> Vec<Vec<Fe>> {
    let mut a: Vec<Vec<Fe>> = rows.to_vec();
    let rank = if a.is_empty() { 0 } else { rref(&mut a, cols) };
    let pivots: Vec<usize> = a[..rank]
        .iter()
        .map(|r| r.iter().position(|e| !e.is_zero()).unwrap())
        .collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![field.zero(); cols];
            x[free] = field.one();
            for (row, &p) in a[..rank].iter().zip(&pivots) {
                x[p] = -&row[free];
            }
            x
        })
        .collect()
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix addition")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix multiplication")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-self.field.one())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            write!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    fn frac(n: i64, d: i64) -> Fe {
        Fe::Q(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn block_diag_builds_p3() {
        let a1 = Matrix::from_i64(&q(), &[&[2, 1], &[0, -2]]);
        let z = Matrix::zero(&q(), 1);
        let p3 = Matrix::block_diag(&[a1, z]).unwrap();
        assert_eq!(
            p3,
            Matrix::from_i64(&q(), &[&[2, 1, 0], &[0, -2, 0], &[0, 0, 0]])
        );
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = Matrix::diag(&q(), &[q().from_i64(2), frac(1, 2)]);
        assert_eq!(
            d.inverse().unwrap(),
            Matrix::diag(&q(), &[frac(1, 2), q().from_i64(2)])
        );
        assert_eq!(Matrix::zero(&q(), 2).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn trace_zero_blocks_in_odd_characteristic() {
        for field in [q(), Field::prime(10007).unwrap()] {
            for a in 2..6 {
                let m = Matrix::from_rows(
                    &field,
                    vec![
                        vec![field.from_i64(a), field.one()],
                        vec![field.zero(), field.from_i64(-a)],
                    ],
                )
                .unwrap();
                assert!(m.trace().is_zero());
            }
        }
    }

    #[test]
    fn char_poly_small_cases() {
        let p2 = Matrix::from_i64(&q(), &[&[2, 1], &[0, -2]]);
        assert_eq!(p2.char_poly().to_string(), "x^2 - 4");
        assert_eq!(Matrix::zero(&q(), 2).char_poly().to_string(), "x^2");
        // Q_3 with b = 2: (x-1)(x-2)(x-1/2)
        let q3 = Matrix::diag(&q(), &[q().from_i64(2), frac(1, 2), q().one()]);
        let expected = UnivariatePoly::from_roots(&q(), &[q().one(), q().from_i64(2), frac(1, 2)]);
        assert_eq!(q3.char_poly(), expected);
    }

    #[test]
    fn det_matches_char_poly_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..6 {
            let a = Matrix::random(&q(), n, &mut rng);
            let c0 = a.char_poly().coeff(0);
            let sign = if n % 2 == 0 { q().one() } else { -q().one() };
            assert_eq!(&sign * &c0, a.det());
        }
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(Matrix::identity(&q(), 4).min_poly().to_string(), "x - 1");
        let x3m2 = UnivariatePoly::new(
            q(),
            vec![q().from_i64(-2), q().zero(), q().zero(), q().one()],
        );
        let c = Matrix::companion(&x3m2);
        assert_eq!(c.min_poly(), x3m2);
        // Jordan block: x² not x
        let j = Matrix::from_i64(&q(), &[&[0, 1], &[0, 0]]);
        assert_eq!(j.min_poly().to_string(), "x^2");
    }

    #[test]
    fn companion_degree_by_direct_krylov_dependence() {
        // oracle: the vectors e1, Ce1, C²e1 are independent for a companion
        // matrix, so no polynomial of degree < 3 annihilates it
        let x3m2 = UnivariatePoly::new(
            q(),
            vec![q().from_i64(-2), q().zero(), q().zero(), q().one()],
        );
        let c = Matrix::companion(&x3m2);
        let e1 = [q().one(), q().zero(), q().zero()];
        let apply = |m: &Matrix, v: &[Fe]| -> Vec<Fe> {
            (0..3)
                .map(|i| (0..3).fold(q().zero(), |acc, j| &acc + &(m.get(i, j) * &v[j])))
                .collect()
        };
        let v1 = apply(&c, &e1);
        let v2 = apply(&c, &v1);
        let k = Matrix::from_rows(&q(), vec![e1.to_vec(), v1, v2]).unwrap();
        assert!(!k.det().is_zero());
        assert_eq!(c.min_poly().degree(), Some(3));
    }

    #[test]
    fn solve_any_handles_singular_consistent_systems() {
        let f = q();
        let rows = vec![vec![f.one(), f.one()], vec![f.from_i64(2), f.from_i64(2)]];
        let x = solve_any(&f, &rows, &[f.from_i64(3), f.from_i64(6)]).unwrap();
        assert_eq!(&x[0] + &x[1], f.from_i64(3));
        assert!(solve_any(&f, &rows, &[f.from_i64(3), f.from_i64(7)]).is_none());
    }

    #[test]
    fn negative_powers() {
        let a = Matrix::from_i64(&q(), &[&[2, 1], &[1, 1]]);
        assert_eq!(
            &a.pow(-3).unwrap() * &a.pow(3).unwrap(),
            Matrix::identity(&q(), 2)
        );
    }
}
