use crate::algebra::{Algebra, MatrixAlgebra};
use crate::expr::MultilinearTable;
use crate::field::{Fe, Field};
use crate::matrix::{nullspace, solve_any, Matrix};
use crate::poly::UnivariatePoly;
use crate::search::trial_rng;

use super::WitnessError;

/// Lines tried per attempt when the target class is met on a conic.
const LINES_PER_ATTEMPT: usize = 32;

/// How a non-centrality verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralitySource {
    RandomTrial(u64),
    MatrixUnits,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CentralityVerdict {
    /// A non-scalar value: certain.
    NonCentral {
        source: CentralitySource,
        assignment: Vec<Matrix>,
        value: Matrix,
    },
    /// Every tuple of matrix units gives a scalar, so by multilinearity every
    /// value does: certain.
    Central,
    /// Only random samples were checked and all were scalar.
    AppearsCentral { trials: u64, seed: u64 },
}

impl CentralityVerdict {
    pub fn is_noncentral(&self) -> bool {
        matches!(self, CentralityVerdict::NonCentral { .. })
    }
}

/// Largest arity for which all 4^m tuples of matrix units are checked.
const EXHAUSTIVE_ARITY: usize = 6;

/// Looks for a value of `f` on M_2 that is not a scalar matrix.
pub fn noncentral_on_m2(
    f: &MultilinearTable,
    trials: u64,
    seed: u64,
) -> Result<CentralityVerdict, WitnessError> {
    if trials == 0 {
        return Err(WitnessError::ZeroTrials);
    }
    let field = f.field();
    let alg = MatrixAlgebra::new(field, 2);
    let n = f.arity();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let assignment: Vec<Matrix> = (0..n).map(|_| alg.random(&mut rng)).collect();
        let value = f.evaluate(&alg, &assignment)?;
        if !value.is_scalar() {
            return Ok(CentralityVerdict::NonCentral {
                source: CentralitySource::RandomTrial(t),
                assignment,
                value,
            });
        }
    }
    if n > EXHAUSTIVE_ARITY {
        return Ok(CentralityVerdict::AppearsCentral { trials, seed });
    }
    let units = alg.basis();
    for code in 0..4usize.pow(n as u32) {
        let assignment: Vec<Matrix> = (0..n)
            .map(|j| units[(code >> (2 * j)) & 3].clone())
            .collect();
        let value = f.evaluate(&alg, &assignment)?;
        if !value.is_scalar() {
            return Ok(CentralityVerdict::NonCentral {
                source: CentralitySource::MatrixUnits,
                assignment,
                value,
            });
        }
    }
    Ok(CentralityVerdict::Central)
}

/// A matrix g with g·x·g⁻¹ = a, for non-scalar 2×2 matrices with the same
/// characteristic polynomial. Both are cyclic; g maps a Krylov basis of x to
/// one of a.
pub fn conjugator_2x2(x: &Matrix, a: &Matrix) -> Option<Matrix> {
    if x.is_scalar() || a.is_scalar() || x.char_poly() != a.char_poly() {
        return None;
    }
    let kx = krylov_basis(x)?;
    let ka = krylov_basis(a)?;
    Some(&ka * &kx.inverse().ok()?)
}

/// Columns v, Mv for the first of e1, e2, e1+e2 that is cyclic.
fn krylov_basis(m: &Matrix) -> Option<Matrix> {
    let f = m.field().clone();
    for v in [[f.one(), f.zero()], [f.zero(), f.one()], [f.one(), f.one()]] {
        let mv = [
            &(m.get(0, 0) * &v[0]) + &(m.get(0, 1) * &v[1]),
            &(m.get(1, 0) * &v[0]) + &(m.get(1, 1) * &v[1]),
        ];
        let k = Matrix::from_rows(
            &f,
            vec![
                vec![v[0].clone(), mv[0].clone()],
                vec![v[1].clone(), mv[1].clone()],
            ],
        )
        .unwrap();
        if !k.det().is_zero() {
            return Some(k);
        }
    }
    None
}

/// A 2×2 preimage under a multilinear polynomial, with the attempt that found it.
#[derive(Debug, Clone, PartialEq)]
pub struct Preimage {
    pub assignment: Vec<Matrix>,
    pub attempts: u32,
}

/// Finds T_1..T_n ∈ M_2 with f(T̄) = A for trace-zero A.
///
/// Each attempt fixes random T_2..T_n; then T ↦ f(T, T_2..T_n) is linear on
/// the 4-dimensional matrix space. If A lies in its image the linear system
/// is solved directly. Otherwise a value X in the image with the same
/// characteristic polynomial as A (up to the scalar freedom f(cT, …) =
/// c·f(T, …)) is located and conjugated onto A.
pub fn multilinear_preimage_2x2(
    f: &MultilinearTable,
    a: &Matrix,
    seed: u64,
    retries: u32,
) -> Result<Preimage, WitnessError> {
    let field = f.field().clone();
    if a.size() != 2 {
        return Err(WitnessError::NotTwoByTwo(a.size()));
    }
    if a.field() != &field {
        return Err(WitnessError::FieldMismatch {
            expected: field.to_string(),
            got: a.field().to_string(),
        });
    }
    if !a.trace().is_zero() {
        return Err(WitnessError::TraceNonzero(a.trace().to_string()));
    }
    if noncentral_on_m2(f, 8, seed)? == CentralityVerdict::Central {
        return Err(WitnessError::CentralPolynomial);
    }
    let alg = MatrixAlgebra::new(&field, 2);
    let n = f.arity();
    let units = alg.basis();
    for attempt in 0..retries {
        let mut rng = trial_rng(seed, attempt as u64);
        let rest: Vec<Matrix> = (1..n).map(|_| alg.random(&mut rng)).collect();
        let apply = |t: &Matrix| {
            let mut args = vec![t.clone()];
            args.extend(rest.iter().cloned());
            f.evaluate(&alg, &args)
        };
        // column k of L is vec f(E_k, T_2..T_n)
        let columns: Vec<Matrix> = units.iter().map(apply).collect::<Result<_, _>>()?;
        let l_rows: Vec<Vec<Fe>> = (0..4)
            .map(|r| columns.iter().map(|c| c.entries()[r].clone()).collect())
            .collect();
        let combine = |y: &[Fe]| -> Matrix {
            units
                .iter()
                .zip(y)
                .fold(Matrix::zero(&field, 2), |acc, (u, c)| &acc + &u.scale(c))
        };

        let candidate = match solve_any(&field, &l_rows, a.entries()) {
            Some(y) => {
                let mut v = vec![combine(&y)];
                v.extend(rest.iter().cloned());
                Some(v)
            }
            None => conjugated_solution(&field, &l_rows, &rest, a, &combine, &mut rng),
        };
        if let Some(assignment) = candidate {
            if f.evaluate(&alg, &assignment)? == *a {
                return Ok(Preimage {
                    assignment,
                    attempts: attempt + 1,
                });
            }
        }
    }
    Err(WitnessError::Exhausted {
        what: "multilinear preimage".into(),
        attempts: retries as u64,
        seed,
    })
}

/// The conjugation path: find T_1 whose value X is similar to A, then
/// conjugate the whole tuple by g with g·X·g⁻¹ = A.
fn conjugated_solution<R: rand::Rng>(
    field: &Field,
    l_rows: &[Vec<Fe>],
    rest: &[Matrix],
    a: &Matrix,
    combine: &dyn Fn(&[Fe]) -> Matrix,
    rng: &mut R,
) -> Option<Vec<Matrix>> {
    let (t1, x) = similar_value(field, l_rows, a, combine, rng)?;
    let g = conjugator_2x2(&x, a)?;
    let gi = g.inverse().ok()?;
    let mut assignment = vec![&(&g * &t1) * &gi];
    assignment.extend(rest.iter().map(|t| &(&g * t) * &gi));
    Some(assignment)
}

/// Some T_1 = combine(y) whose value X = L·y is non-scalar with the
/// characteristic polynomial of A.
fn similar_value<R: rand::Rng>(
    field: &Field,
    l_rows: &[Vec<Fe>],
    a: &Matrix,
    combine: &dyn Fn(&[Fe]) -> Matrix,
    rng: &mut R,
) -> Option<(Matrix, Matrix)> {
    if a.is_scalar() {
        return None;
    }
    let value = |y: &[Fe]| -> Matrix {
        let v: Vec<Fe> = l_rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(y)
                    .fold(field.zero(), |s, (c, x)| &s + &(c * x))
            })
            .collect();
        Matrix::from_rows(field, vec![v[..2].to_vec(), v[2..].to_vec()]).unwrap()
    };
    // trace(L·y) = 0
    let trace_row: Vec<Fe> = (0..4).map(|k| &l_rows[0][k] + &l_rows[3][k]).collect();
    let det_a = a.det();
    let target = a.char_poly();
    let accept = |y: Vec<Fe>| -> Option<(Matrix, Matrix)> {
        let x = value(&y);
        (!x.is_scalar() && x.char_poly() == target).then(|| (combine(&y), x))
    };
    let random_in = |basis: &[Vec<Fe>], rng: &mut R| -> Vec<Fe> {
        basis.iter().fold(vec![field.zero(); 4], |acc, b| {
            let c = field.random(rng);
            acc.iter().zip(b).map(|(s, x)| s + &(&c * x)).collect()
        })
    };
    let sqrt = |x: &Fe| -> Option<Fe> {
        let p = UnivariatePoly::new(field.clone(), vec![-x, field.zero(), field.one()]);
        p.roots().ok()?.into_iter().next()
    };

    // Split target: prescribe an eigenvector v (one linear condition on X),
    // then rescale so the eigenvalue matches ±μ with μ² = −det A.
    if let Some(mu) = sqrt(&-&det_a) {
        for _ in 0..LINES_PER_ATTEMPT {
            let v = [field.random(rng), field.random(rng)];
            if v[0].is_zero() && v[1].is_zero() {
                continue;
            }
            // X v = [x00 v0 + x01 v1, x10 v0 + x11 v1]; det[v, Xv] = v0 (Xv)_1 − v1 (Xv)_0
            let mut rows = vec![trace_row.clone()];
            let cond: Vec<Fe> = (0..4)
                .map(|k| {
                    let xv0 = &(&l_rows[0][k] * &v[0]) + &(&l_rows[1][k] * &v[1]);
                    let xv1 = &(&l_rows[2][k] * &v[0]) + &(&l_rows[3][k] * &v[1]);
                    &(&v[0] * &xv1) - &(&v[1] * &xv0)
                })
                .collect();
            rows.push(cond);
            if mu.is_zero() {
                // nilpotent target: X v = 0 instead
                rows.pop();
                for r in 0..2 {
                    rows.push(
                        (0..4)
                            .map(|k| {
                                &(&l_rows[2 * r][k] * &v[0]) + &(&l_rows[2 * r + 1][k] * &v[1])
                            })
                            .collect(),
                    );
                }
            }
            let basis = nullspace(field, &rows, 4);
            if basis.is_empty() {
                continue;
            }
            let y = random_in(&basis, rng);
            let x = value(&y);
            if x.is_scalar() {
                continue;
            }
            if mu.is_zero() {
                if let Some(hit) = accept(y) {
                    return Some(hit);
                }
                continue;
            }
            // eigenvalue of X on v
            let idx = if v[0].is_zero() { 1 } else { 0 };
            let xv = &(x.get(idx, 0) * &v[0]) + &(x.get(idx, 1) * &v[1]);
            let lambda = &xv * &v[idx].inv().unwrap();
            if lambda.is_zero() {
                continue;
            }
            let c = &mu * &lambda.inv().unwrap();
            let y: Vec<Fe> = y.iter().map(|e| &c * e).collect();
            if let Some(hit) = accept(y) {
                return Some(hit);
            }
        }
    }
    // Non-split target: search lines U + tV in the trace-zero part of the
    // image for det = det A.
    let basis = nullspace(field, &[trace_row], 4);
    let basis: Vec<Vec<Fe>> = basis.into_iter().filter(|b| !value(b).is_zero()).collect();
    if basis.is_empty() {
        return None;
    }
    for _ in 0..LINES_PER_ATTEMPT {
        let u = random_in(&basis, rng);
        let w = random_in(&basis, rng);
        let (xu, xw) = (value(&u), value(&w));
        // det(U + tW) = det U + t·(cross) + t² det W, recovered from three points
        let mid = (&xu + &xw).det();
        let (d0, d2) = (xu.det(), xw.det());
        let d1 = &(&mid - &d0) - &d2;
        let poly = UnivariatePoly::new(field.clone(), vec![&d0 - &det_a, d1, d2]);
        if poly.is_zero() {
            continue;
        }
        for t in poly.roots().unwrap_or_default() {
            let y: Vec<Fe> = u.iter().zip(&w).map(|(p, q)| p + &(&t * q)).collect();
            if let Some(hit) = accept(y) {
                return Some(hit);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{classify_multilinear, parse_expr};

    fn table(text: &str, field: &Field, m: usize) -> MultilinearTable {
        classify_multilinear(&parse_expr(text, field).unwrap(), m).unwrap()
    }

    #[test]
    fn centrality_examples() {
        let f = Field::prime(10007).unwrap();
        assert!(noncentral_on_m2(&table("x1*x2 - x2*x1", &f, 2), 10, 0)
            .unwrap()
            .is_noncentral());
        assert!(noncentral_on_m2(&table("x1*x2 + x2*x1", &f, 2), 10, 0)
            .unwrap()
            .is_noncentral());
        assert!(noncentral_on_m2(&table("x1", &f, 1), 10, 0)
            .unwrap()
            .is_noncentral());
        // the 2×2 standard polynomial of degree 4 vanishes identically on M_2
        let s4 = crate::gn::GnEvaluationPlan::new(3).unwrap().permutations();
        let q = Field::Rational;
        let terms: Vec<String> = s4
            .iter()
            .map(|(p, sign)| {
                let w: Vec<String> = p.iter().map(|i| format!("x{}", i + 1)).collect();
                format!("{}{}", if *sign > 0 { "+" } else { "-" }, w.join("*"))
            })
            .collect();
        let st4 = table(&terms.join(" "), &q, 4);
        assert_eq!(
            noncentral_on_m2(&st4, 3, 0).unwrap(),
            CentralityVerdict::Central
        );
    }

    #[test]
    fn conjugator_examples() {
        let q = Field::Rational;
        let x = Matrix::diag(&q, &[q.from_i64(3), q.from_i64(-3)]);
        let a = Matrix::from_i64(&q, &[&[3, 1], &[0, -3]]);
        let g = conjugator_2x2(&x, &a).unwrap();
        assert_eq!(&(&g * &x) * &g.inverse().unwrap(), a);
        let n1 = Matrix::unit(&q, 2, 0, 1);
        let n2 = Matrix::unit(&q, 2, 1, 0);
        let g = conjugator_2x2(&n1, &n2).unwrap();
        assert_eq!(&(&g * &n1) * &g.inverse().unwrap(), n2);
        assert!(conjugator_2x2(&Matrix::identity(&q, 2), &Matrix::identity(&q, 2)).is_none());
    }

    #[test]
    fn preimage_examples() {
        let q = Field::Rational;
        let comm = table("x1*x2 - x2*x1", &q, 2);
        let alg = MatrixAlgebra::new(&q, 2);
        for target in [
            Matrix::unit(&q, 2, 0, 1),
            Matrix::zero(&q, 2),
            Matrix::from_i64(&q, &[&[2, 1], &[0, -2]]),
            Matrix::from_i64(&q, &[&[3, 1], &[0, -3]]),
        ] {
            let pre = multilinear_preimage_2x2(&comm, &target, 1, 10).unwrap();
            assert_eq!(comm.evaluate(&alg, &pre.assignment).unwrap(), target);
        }
        let f7 = Field::prime(7).unwrap();
        let comm7 = table("x1*x2 - x2*x1", &f7, 2);
        let d = Matrix::diag(&f7, &[f7.one(), f7.from_i64(-1)]);
        let pre = multilinear_preimage_2x2(&comm7, &d, 3, 10).unwrap();
        assert_eq!(
            comm7
                .evaluate(&MatrixAlgebra::new(&f7, 2), &pre.assignment)
                .unwrap(),
            d
        );
    }

    #[test]
    fn preimage_preconditions() {
        let q = Field::Rational;
        let comm = table("x1*x2 - x2*x1", &q, 2);
        assert!(matches!(
            multilinear_preimage_2x2(&comm, &Matrix::identity(&q, 2), 0, 3),
            Err(WitnessError::TraceNonzero(_))
        ));
        assert!(matches!(
            multilinear_preimage_2x2(&comm, &Matrix::zero(&q, 3), 0, 3),
            Err(WitnessError::NotTwoByTwo(3))
        ));
    }

    #[test]
    fn non_split_targets_over_finite_fields() {
        let f = Field::prime(10007).unwrap();
        let comm = table("x1*x2 - x2*x1", &f, 2);
        // [[0, 1], [-3, 0]]: −det = −3 is a non-square mod 10007
        let a = Matrix::from_rows(
            &f,
            vec![vec![f.zero(), f.one()], vec![f.from_i64(-3), f.zero()]],
        )
        .unwrap();
        let pre = multilinear_preimage_2x2(&comm, &a, 0, 10).unwrap();
        assert_eq!(
            comm.evaluate(&MatrixAlgebra::new(&f, 2), &pre.assignment)
                .unwrap(),
            a
        );
    }
}
