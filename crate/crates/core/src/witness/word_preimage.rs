use crate::algebra::MatrixAlgebra;
use crate::expr::{evaluate_word, Word};
use crate::field::{Fe, Field};
use crate::matrix::{solve_any, Matrix};
use crate::poly::UnivariatePoly;
use crate::search::{first_success_sharded, trial_rng};

use super::preimage::conjugator_2x2;
use super::WitnessError;

/// Default number of sampled tuples for word preimages.
pub const DEFAULT_WORD_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WordPreimage {
    pub assignment: Vec<Matrix>,
    /// Sampled tuples consumed; 0 when the diagonal ansatz applied.
    pub trials_used: u64,
}

/// Eigenvalues of a 2×2 matrix with determinant 1, trace ≠ ±2, lying in the field.
fn split_spectrum(b: &Matrix) -> Result<(Fe, Fe), WitnessError> {
    let f = b.field().clone();
    if b.size() != 2 {
        return Err(WitnessError::NotTwoByTwo(b.size()));
    }
    if !b.det().is_one() {
        return Err(WitnessError::DetNotOne(b.det().to_string()));
    }
    let t = b.trace();
    let two = f.from_i64(2);
    if t == two || t == -&two {
        return Err(WitnessError::TraceIsPlusMinusTwo);
    }
    let roots = UnivariatePoly::new(f.clone(), vec![f.one(), -&t, f.one()])
        .roots()
        .unwrap_or_default();
    match roots.as_slice() {
        [l1, l2] => Ok((l1.clone(), l2.clone())),
        _ => Err(WitnessError::NotSplit),
    }
}

/// A uniformly-shaped random element of SL_2: a ≠ 0, b, c free, d = (1 + bc)/a.
pub fn random_sl2<R: rand::Rng + ?Sized>(field: &Field, rng: &mut R) -> Matrix {
    let a = field.random_nonzero(rng);
    let b = field.random(rng);
    let c = field.random(rng);
    let d = &(&field.one() + &(&b * &c)) * &a.inv().unwrap();
    Matrix::from_rows(field, vec![vec![a, b], vec![c, d]]).unwrap()
}

fn conjugate_all(g: &Matrix, s: &[Matrix]) -> Vec<Matrix> {
    let gi = g.inverse().expect("conjugator is invertible");
    s.iter().map(|m| &(g * m) * &gi).collect()
}

/// Finds S_1..S_n ∈ SL_2 with w(S̄) = B for a split B ∈ SL_2 of trace ≠ ±2.
///
/// First tries S_v = diag(μ, μ⁻¹) with μ^{e} = λ, e the exponent sum of some
/// variable. Otherwise samples tuples, moves the first variable along
/// S_v·[[1, t], [0, 1]], and solves trace(w(S̄(t))) = trace(B), a polynomial
/// equation in t of degree at most the number of occurrences of S_v. Any
/// match V has B's characteristic polynomial and is conjugated onto B;
/// word values are conjugation-equivariant.
pub fn word_preimage_sl2(
    w: &Word,
    b: &Matrix,
    seed: u64,
    budget: u64,
) -> Result<WordPreimage, WitnessError> {
    let field = b.field().clone();
    let (l1, l2) = split_spectrum(b)?;
    if w.is_identity() {
        return Err(WitnessError::TrivialWord);
    }
    let alg = MatrixAlgebra::new(&field, 2);
    let n = w.max_variable() as usize;
    let identity = Matrix::identity(&field, 2);
    let verify = |s: Vec<Matrix>| -> Option<Vec<Matrix>> {
        (evaluate_word(w, &alg, &s).ok()? == *b).then_some(s)
    };

    let mut vars: Vec<_> = w.letters().iter().map(|&(v, _)| v).collect();
    vars.sort();
    vars.dedup();
    for &v in &vars {
        let e = w.exponent_sum(v);
        if e == 0 {
            continue;
        }
        for lambda in [&l1, &l2] {
            let target = if e > 0 {
                lambda.clone()
            } else {
                lambda.inv().unwrap()
            };
            let mut coeffs = vec![field.zero(); e.unsigned_abs() as usize + 1];
            coeffs[0] = -&target;
            coeffs[e.unsigned_abs() as usize] = field.one();
            let Some(mu) = UnivariatePoly::new(field.clone(), coeffs)
                .roots()
                .ok()
                .and_then(|r| r.into_iter().next())
            else {
                continue;
            };
            let mut s = vec![identity.clone(); n];
            s[v.slot()] = Matrix::diag(&field, &[mu.clone(), mu.inv().unwrap()]);
            let value = evaluate_word(w, &alg, &s)?;
            if let Some(g) = conjugator_2x2(&value, b) {
                if let Some(s) = verify(conjugate_all(&g, &s)) {
                    return Ok(WordPreimage {
                        assignment: s,
                        trials_used: 0,
                    });
                }
            }
        }
    }

    let v = w.letters()[0].0;
    let degree = w.syllable_degree(v) as usize;
    let trace_b = b.trace();
    let points: Option<Vec<Fe>> = match field.order() {
        Some(q) if q <= degree as u64 + 1 => None,
        _ => Some((0..=degree as u64).map(|i| field.from_index(i)).collect()),
    };
    let shards = std::thread::available_parallelism()
        .map_or(1, |p| p.get())
        .min(8);
    let hit = first_success_sharded(budget, shards, |trial| {
        let mut rng = trial_rng(seed, trial);
        let base: Vec<Matrix> = (0..n).map(|_| random_sl2(&field, &mut rng)).collect();
        let at = |t: &Fe| -> Vec<Matrix> {
            let mut s = base.clone();
            let shear = Matrix::from_rows(
                &field,
                vec![
                    vec![field.one(), t.clone()],
                    vec![field.zero(), field.one()],
                ],
            )
            .unwrap();
            s[v.slot()] = &base[v.slot()] * &shear;
            s
        };
        let tau = |t: &Fe| -> Fe { &evaluate_word(w, &alg, &at(t)).unwrap().trace() - &trace_b };
        let candidates: Vec<Fe> = match &points {
            Some(points) => {
                let values: Vec<Fe> = points.iter().map(tau).collect();
                let rows: Vec<Vec<Fe>> = points
                    .iter()
                    .map(|p| (0..=degree as i64).map(|k| p.pow(k).unwrap()).collect())
                    .collect();
                let poly = UnivariatePoly::new(field.clone(), solve_any(&field, &rows, &values)?);
                if poly.is_zero() {
                    vec![field.zero()]
                } else {
                    poly.roots().unwrap_or_default()
                }
            }
            None => (0..field.order().unwrap())
                .map(|i| field.from_index(i))
                .filter(|t| tau(t).is_zero())
                .collect(),
        };
        candidates.iter().find_map(|t| {
            let s = at(t);
            let value = evaluate_word(w, &alg, &s).ok()?;
            let g = conjugator_2x2(&value, b)?;
            verify(conjugate_all(&g, &s))
        })
    });
    match hit {
        Some((trial, assignment)) => Ok(WordPreimage {
            assignment,
            trials_used: trial + 1,
        }),
        None => Err(WitnessError::Exhausted {
            what: "word preimage".into(),
            attempts: budget,
            seed,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_word;

    #[test]
    fn identity_word_returns_target() {
        let q = Field::Rational;
        let b = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        // trace 3, eigenvalues (3 ± √5)/2 are irrational: not split over ℚ
        assert_eq!(
            word_preimage_sl2(&Word::from_pairs(&[(1, 1)]), &b, 0, 10),
            Err(WitnessError::NotSplit)
        );
        let f = Field::prime(10007).unwrap();
        let b = Matrix::diag(&f, &[f.from_i64(2), f.from_i64(2).inv().unwrap()]);
        let pre = word_preimage_sl2(&Word::from_pairs(&[(1, 1)]), &b, 0, 10).unwrap();
        assert_eq!(pre.assignment, vec![b]);
    }

    #[test]
    fn square_root_of_diagonal() {
        let q = Field::Rational;
        let quarter = q.from_i64(4).inv().unwrap();
        let b = Matrix::diag(&q, &[q.from_i64(4), quarter]);
        let pre = word_preimage_sl2(&parse_word("x1^2", &q).unwrap(), &b, 0, 10).unwrap();
        let half = q.from_i64(2).inv().unwrap();
        assert_eq!(
            pre.assignment,
            vec![Matrix::diag(&q, &[q.from_i64(2), half])]
        );
    }

    #[test]
    fn commutator_word_over_f10007() {
        let f = Field::prime(10007).unwrap();
        let b = Matrix::diag(&f, &[f.from_i64(2), f.from_i64(2).inv().unwrap()]);
        let w = Word::commutator();
        let pre = word_preimage_sl2(&w, &b, 0, DEFAULT_WORD_BUDGET).unwrap();
        let alg = MatrixAlgebra::new(&f, 2);
        assert_eq!(evaluate_word(&w, &alg, &pre.assignment).unwrap(), b);
        assert!(pre.assignment.iter().all(|s| s.det().is_one()));
        assert!(pre.trials_used >= 1);
    }

    #[test]
    fn longer_words() {
        let f = Field::prime(10007).unwrap();
        let alg = MatrixAlgebra::new(&f, 2);
        let b = Matrix::from_rows(
            &f,
            vec![
                vec![f.from_i64(3), f.one()],
                vec![f.zero(), f.from_i64(3).inv().unwrap()],
            ],
        )
        .unwrap();
        for text in [
            "x1^2*x2^3*x1^-2*x2^-3",
            "x1*x2*x3*x1^-1*x2^-1*x3^-1",
            "x1^3*x2^-3",
        ] {
            let w = parse_word(text, &f).unwrap();
            let pre = word_preimage_sl2(&w, &b, 4, 2000).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(
                evaluate_word(&w, &alg, &pre.assignment).unwrap(),
                b,
                "{text}"
            );
        }
    }

    #[test]
    fn preconditions() {
        let f = Field::prime(10007).unwrap();
        let w = Word::commutator();
        assert_eq!(
            word_preimage_sl2(&w, &Matrix::identity(&f, 2), 0, 5),
            Err(WitnessError::TraceIsPlusMinusTwo)
        );
        let d = Matrix::diag(&f, &[f.from_i64(2), f.from_i64(3)]);
        assert!(matches!(
            word_preimage_sl2(&w, &d, 0, 5),
            Err(WitnessError::DetNotOne(_))
        ));
        let b = Matrix::diag(&f, &[f.from_i64(2), f.from_i64(2).inv().unwrap()]);
        assert_eq!(
            word_preimage_sl2(&Word::identity(), &b, 0, 5),
            Err(WitnessError::TrivialWord)
        );
    }

    #[test]
    fn small_field_falls_back_to_enumeration() {
        let f = Field::prime(7).unwrap();
        let b = Matrix::diag(&f, &[f.from_i64(2), f.from_i64(4)]);
        let w = parse_word("x1^4*x2^4*x1^-4*x2^-4", &f).unwrap();
        if let Ok(pre) = word_preimage_sl2(&w, &b, 0, 2000) {
            assert_eq!(
                evaluate_word(&w, &MatrixAlgebra::new(&f, 2), &pre.assignment).unwrap(),
                b
            );
        }
    }
}
