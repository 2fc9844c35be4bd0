//! The alternating polynomial
//!
//! ```text
//! g_n(x, x_1, …, x_n) = Σ_{σ ∈ S_{n+1}} sign(σ) · x^{σ(0)} x_1 x^{σ(1)} x_2 ⋯ x_n x^{σ(n)}
//! ```
//!
//! and the bounded-degree test built on it: g_n vanishes under every
//! substitution x_1..x_n exactly when the element substituted for x is
//! algebraic of degree at most n.
//!
//! Permutations are visited in Steinhaus–Johnson–Trotter order. Consecutive
//! permutations differ by one adjacent transposition, so the running prefix
//! products `x^{σ(0)} x_1 x^{σ(1)} ⋯ x_j x^{σ(j)}` only need recomputing from
//! the swap position onward.

use thiserror::Error;

use crate::algebra::Algebra;
use crate::expr::{evaluate, EvalError, LaurentExpr};
use crate::search::{first_success, trial_rng};

/// Default ceiling on n; (n+1)! = 362880 terms at n = 8.
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GnError {
    #[error("g_n needs n ≥ 1")]
    ZeroDegree,
    #[error("n = {n} exceeds the ceiling {limit}; raise it explicitly to evaluate (n+1)! terms")]
    TooLarge { n: usize, limit: usize },
    #[error("expected {expected} parameters x_1..x_n, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// An evaluation schedule for g_n: the SJT swap sequence over S_{n+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnEvaluationPlan {
    n: usize,
    /// Position i of each adjacent swap (i, i+1), (n+1)! − 1 entries.
    swaps: Vec<u8>,
}

impl GnEvaluationPlan {
    pub fn new(n: usize) -> Result<Self, GnError> {
        Self::with_limit(n, DEFAULT_MAX_N)
    }

    pub fn with_limit(n: usize, limit: usize) -> Result<Self, GnError> {
        if n == 0 {
            return Err(GnError::ZeroDegree);
        }
        if n > limit {
            return Err(GnError::TooLarge { n, limit });
        }
        Ok(GnEvaluationPlan {
            n,
            swaps: sjt_swaps(n + 1),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of permutations covered.
    pub fn len(&self) -> usize {
        self.swaps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The visiting order as (permutation, sign) pairs; for inspection and tests.
    pub fn permutations(&self) -> Vec<(Vec<usize>, i8)> {
        let mut perm: Vec<usize> = (0..=self.n).collect();
        let mut sign = 1i8;
        let mut out = vec![(perm.clone(), sign)];
        for &s in &self.swaps {
            perm.swap(s as usize, s as usize + 1);
            sign = -sign;
            out.push((perm.clone(), sign));
        }
        out
    }

    /// g_n(a, r_1, …, r_n).
    pub fn eval<A: Algebra>(
        &self,
        alg: &A,
        a: &A::Elem,
        rs: &[A::Elem],
    ) -> Result<A::Elem, GnError> {
        let tables = self.tables(alg, a, rs)?;
        let perm: Vec<usize> = (0..=self.n).collect();
        Ok(accumulate(alg, &tables, perm, 0, &self.swaps, true))
    }

    /// The same sum split into n+1 disjoint ranges by the value of σ(0),
    /// evaluated on separate threads and merged in range order.
    pub fn eval_sharded<A: Algebra>(
        &self,
        alg: &A,
        a: &A::Elem,
        rs: &[A::Elem],
    ) -> Result<A::Elem, GnError> {
        let tables = self.tables(alg, a, rs)?;
        let inner = sjt_swaps(self.n);
        let parts: Vec<A::Elem> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..=self.n)
                .map(|first| {
                    let (tables, inner) = (&tables, &inner);
                    scope.spawn(move || {
                        // [first, 0, 1, …] is `first` adjacent swaps away from the identity
                        let mut perm = vec![first];
                        perm.extend((0..=self.n).filter(|&e| e != first));
                        accumulate(alg, tables, perm, 1, inner, first % 2 == 0)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("g_n shard panicked"))
                .collect()
        });
        Ok(parts.iter().fold(alg.zero(), |acc, p| alg.add(&acc, p)))
    }

    fn tables<A: Algebra>(
        &self,
        alg: &A,
        a: &A::Elem,
        rs: &[A::Elem],
    ) -> Result<Tables<A::Elem>, GnError> {
        if rs.len() != self.n {
            return Err(GnError::ArityMismatch {
                expected: self.n,
                got: rs.len(),
            });
        }
        let mut powers = vec![alg.one()];
        for e in 1..=self.n {
            powers.push(alg.mul(&powers[e - 1], a));
        }
        // r_j · a^e for j = 1..n, e = 0..n
        let r_pow = rs
            .iter()
            .map(|r| powers.iter().map(|p| alg.mul(r, p)).collect())
            .collect();
        Ok(Tables { powers, r_pow })
    }
}

struct Tables<E> {
    powers: Vec<E>,
    r_pow: Vec<Vec<E>>,
}

/// Sums sign·term over the permutations reached from `perm` by `swaps`
/// (positions relative to `offset`; entries before `offset` stay fixed).
fn accumulate<A: Algebra>(
    alg: &A,
    t: &Tables<A::Elem>,
    mut perm: Vec<usize>,
    offset: usize,
    swaps: &[u8],
    positive: bool,
) -> A::Elem {
    let n = perm.len() - 1;
    // prefix[j] = a^{σ(0)} r_1 a^{σ(1)} ⋯ r_j a^{σ(j)}
    let mut prefix: Vec<A::Elem> = Vec::with_capacity(n + 1);
    prefix.push(t.powers[perm[0]].clone());
    for j in 1..=n {
        let next = alg.mul(&prefix[j - 1], &t.r_pow[j - 1][perm[j]]);
        prefix.push(next);
    }
    let mut sign = positive;
    let mut acc = prefix[n].clone();
    for &s in swaps {
        let i = s as usize + offset;
        perm.swap(i, i + 1);
        sign = !sign;
        for j in i..=n {
            prefix[j] = if j == 0 {
                t.powers[perm[0]].clone()
            } else {
                alg.mul(&prefix[j - 1], &t.r_pow[j - 1][perm[j]])
            };
        }
        acc = if sign {
            alg.add(&acc, &prefix[n])
        } else {
            alg.sub(&acc, &prefix[n])
        };
    }
    if positive {
        acc
    } else {
        // the first term was added with the wrong sign
        let first = alg.scale(
            &alg.field().from_i64(-2),
            &first_term(alg, t, offset, swaps, &perm),
        );
        alg.add(&acc, &first)
    }
}

/// Recovers the starting permutation's term by undoing the swaps; only used
/// for the odd-sign start in sharded evaluation.
fn first_term<A: Algebra>(
    alg: &A,
    t: &Tables<A::Elem>,
    offset: usize,
    swaps: &[u8],
    end: &[usize],
) -> A::Elem {
    let mut perm = end.to_vec();
    for &s in swaps.iter().rev() {
        let i = s as usize + offset;
        perm.swap(i, i + 1);
    }
    let n = perm.len() - 1;
    (1..=n).fold(t.powers[perm[0]].clone(), |p, j| {
        alg.mul(&p, &t.r_pow[j - 1][perm[j]])
    })
}

/// Adjacent-swap positions generating all permutations of `len` items in
/// Steinhaus–Johnson–Trotter order (Even's directed-element formulation).
pub fn sjt_swaps(len: usize) -> Vec<u8> {
    let mut perm: Vec<usize> = (0..len).collect();
    // direction per value: true = left
    let mut left = vec![true; len];
    let mut out = Vec::new();
    loop {
        let mut mobile: Option<usize> = None;
        for i in 0..len {
            let v = perm[i];
            let target = if left[v] {
                i.checked_sub(1)
            } else {
                Some(i + 1).filter(|&j| j < len)
            };
            if let Some(j) = target {
                if perm[j] < v && mobile.is_none_or(|m| perm[m] < v) {
                    mobile = Some(i);
                }
            }
        }
        let Some(i) = mobile else { break };
        let v = perm[i];
        let j = if left[v] { i - 1 } else { i + 1 };
        perm.swap(i, j);
        out.push(i.min(j) as u8);
        for w in v + 1..len {
            left[w] = !left[w];
        }
    }
    out
}

/// g_n(a, r_1, …, r_n) with the default ceiling on n.
pub fn eval_gn<A: Algebra>(alg: &A, a: &A::Elem, rs: &[A::Elem]) -> Result<A::Elem, GnError> {
    GnEvaluationPlan::new(rs.len().max(1))?.eval(alg, a, rs)
}

/// Outcome of a randomized bounded-degree test.
#[derive(Debug, Clone, PartialEq)]
pub enum DegreeVerdict<E> {
    /// A nonzero g_n value: the element has degree > n.
    CertainlyGreater { trial: u64, rs: Vec<E>, value: E },
    /// Every sampled g_n value was zero.
    ProbablyAtMost {
        trials: u64,
        seed: u64,
        field_order: Option<u64>,
    },
}

impl<E> DegreeVerdict<E> {
    pub fn is_certainly_greater(&self) -> bool {
        matches!(self, DegreeVerdict::CertainlyGreater { .. })
    }
}

/// Samples r̄ and reports whether some g_n(a, r̄) is nonzero.
pub fn degree_at_most<A: Algebra>(
    alg: &A,
    a: &A::Elem,
    plan: &GnEvaluationPlan,
    trials: u64,
    seed: u64,
) -> Result<DegreeVerdict<A::Elem>, GnError> {
    if trials == 0 {
        return Err(GnError::ZeroTrials);
    }
    let n = plan.n();
    let hit = first_success(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let rs: Vec<A::Elem> = (0..n).map(|_| alg.random(&mut rng)).collect();
        let value = plan.eval(alg, a, &rs).expect("arity fixed by plan");
        (!alg.is_zero(&value)).then_some((rs, value))
    });
    Ok(match hit {
        Some((trial, (rs, value))) => DegreeVerdict::CertainlyGreater { trial, rs, value },
        None => DegreeVerdict::ProbablyAtMost {
            trials,
            seed,
            field_order: alg.field().order(),
        },
    })
}

/// An assignment showing g_n(f(ȳ), x̄) ≠ 0.
#[derive(Debug, Clone, PartialEq)]
pub enum GnWitness<E> {
    Found {
        trial: u64,
        ys: Vec<E>,
        rs: Vec<E>,
        value: E,
    },
    /// Budget spent without a nonzero value; not a proof of vanishing.
    Exhausted { budget: u64 },
}

/// Searches invertible ȳ and arbitrary x̄ with g_n(f(ȳ), x̄) ≠ 0.
pub fn gn_nonvanishing_witness<A: Algebra>(
    f: &LaurentExpr,
    plan: &GnEvaluationPlan,
    alg: &A,
    budget: u64,
    seed: u64,
) -> Result<GnWitness<A::Elem>, GnError> {
    let m = f.max_variable() as usize;
    let n = plan.n();
    let mut failure: Option<EvalError> = None;
    let hit = first_success(budget, |t| {
        let mut rng = trial_rng(seed, t);
        let ys: Vec<A::Elem> = (0..m).map(|_| alg.random_invertible(&mut rng)).collect();
        let rs: Vec<A::Elem> = (0..n).map(|_| alg.random(&mut rng)).collect();
        let fy = match evaluate(f, alg, &ys) {
            Ok(v) => v,
            Err(e) => {
                // deterministic for every trial (field or arity problem)
                failure.get_or_insert(e);
                return None;
            }
        };
        let value = plan.eval(alg, &fy, &rs).expect("arity fixed by plan");
        (!alg.is_zero(&value)).then_some((ys, rs, value))
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(match hit {
        Some((trial, (ys, rs, value))) => GnWitness::Found {
            trial,
            ys,
            rs,
            value,
        },
        None => GnWitness::Exhausted { budget },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::field::Field;
    use crate::matrix::Matrix;
    use crate::poly::UnivariatePoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Lexicographic permutations with inversion-count signs and full products,
    /// no caching: the independent reference path.
    fn naive_gn<A: Algebra>(alg: &A, a: &A::Elem, rs: &[A::Elem]) -> A::Elem {
        let n = rs.len();
        let mut acc = alg.zero();
        let mut perm: Vec<usize> = (0..=n).collect();
        loop {
            let inversions = (0..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut term = alg.pow(a, perm[0] as i64).unwrap();
            for j in 1..=n {
                term = alg.mul(&term, &rs[j - 1]);
                term = alg.mul(&term, &alg.pow(a, perm[j] as i64).unwrap());
            }
            acc = if inversions % 2 == 0 {
                alg.add(&acc, &term)
            } else {
                alg.sub(&acc, &term)
            };
            // next lexicographic permutation
            let Some(i) = (0..n).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..=n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        acc
    }

    #[test]
    fn sjt_covers_every_permutation_once_with_correct_signs() {
        for n in 1..=5 {
            let plan = GnEvaluationPlan::new(n).unwrap();
            let perms = plan.permutations();
            let fact: usize = (1..=n + 1).product();
            assert_eq!(perms.len(), fact);
            let mut seen = std::collections::HashSet::new();
            for (p, sign) in &perms {
                assert!(seen.insert(p.clone()));
                let inv = (0..p.len())
                    .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                assert_eq!(*sign, if inv % 2 == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn n1_is_a_commutator() {
        let f = Field::prime(10007).unwrap();
        let alg = MatrixAlgebra::new(&f, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let (a, r) = (alg.random(&mut rng), alg.random(&mut rng));
            let expected = alg.sub(&alg.mul(&r, &a), &alg.mul(&a, &r));
            assert_eq!(eval_gn(&alg, &a, &[r]).unwrap(), expected);
        }
    }

    #[test]
    fn matches_naive_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for field in [Field::Rational, Field::prime(10007).unwrap()] {
            for n in 1..=4 {
                let alg = MatrixAlgebra::new(&field, 3);
                let plan = GnEvaluationPlan::new(n).unwrap();
                let a = alg.random(&mut rng);
                let rs: Vec<Matrix> = (0..n).map(|_| alg.random(&mut rng)).collect();
                let fast = plan.eval(&alg, &a, &rs).unwrap();
                assert_eq!(fast, naive_gn(&alg, &a, &rs), "n = {n}");
                assert_eq!(
                    plan.eval_sharded(&alg, &a, &rs).unwrap(),
                    fast,
                    "sharded n = {n}"
                );
            }
        }
    }

    #[test]
    fn central_and_idempotent_elements_vanish() {
        let f = Field::Rational;
        let alg = MatrixAlgebra::new(&f, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let central = Matrix::scalar(&f, 3, &f.from_i64(5));
        let projection = Matrix::diag(&f, &[f.one(), f.one(), f.zero()]);
        for n in 1..=3 {
            let rs: Vec<Matrix> = (0..n).map(|_| alg.random(&mut rng)).collect();
            assert!(eval_gn(&alg, &central, &rs).unwrap().is_zero());
            if n >= 2 {
                assert!(eval_gn(&alg, &projection, &rs).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn companion_of_cubic_is_detected_at_level_two() {
        let f = Field::Rational;
        let alg = MatrixAlgebra::new(&f, 3);
        let c = Matrix::companion(&UnivariatePoly::new(
            f.clone(),
            vec![f.from_i64(-2), f.zero(), f.zero(), f.one()],
        ));
        let plan = GnEvaluationPlan::new(2).unwrap();
        assert!(degree_at_most(&alg, &c, &plan, 20, 1)
            .unwrap()
            .is_certainly_greater());
        let plan3 = GnEvaluationPlan::new(3).unwrap();
        assert!(!degree_at_most(&alg, &c, &plan3, 5, 1)
            .unwrap()
            .is_certainly_greater());
    }

    #[test]
    fn degree_verdict_examples() {
        let q = Field::Rational;
        let plan1 = GnEvaluationPlan::new(1).unwrap();
        let plan2 = GnEvaluationPlan::new(2).unwrap();
        let id = Matrix::identity(&q, 2);
        let alg2 = MatrixAlgebra::new(&q, 2);
        match degree_at_most(&alg2, &id, &plan1, 10, 0).unwrap() {
            DegreeVerdict::ProbablyAtMost {
                trials,
                seed,
                field_order,
            } => {
                assert_eq!((trials, seed, field_order), (10, 0, None));
            }
            v => panic!("{v:?}"),
        }
        let d = Matrix::diag(&q, &[q.one(), q.from_i64(2)]);
        assert!(!degree_at_most(&alg2, &d, &plan2, 10, 0)
            .unwrap()
            .is_certainly_greater());
        assert_eq!(
            degree_at_most(&alg2, &d, &plan2, 0, 0),
            Err(GnError::ZeroTrials)
        );
    }

    #[test]
    fn ceiling_and_arity() {
        assert_eq!(
            GnEvaluationPlan::new(9),
            Err(GnError::TooLarge {
                n: 9,
                limit: DEFAULT_MAX_N
            })
        );
        assert!(GnEvaluationPlan::with_limit(9, 9).is_ok());
        assert_eq!(GnEvaluationPlan::new(0), Err(GnError::ZeroDegree));
        let q = Field::Rational;
        let alg = MatrixAlgebra::new(&q, 2);
        let plan = GnEvaluationPlan::new(2).unwrap();
        assert_eq!(
            plan.eval(&alg, &alg.one(), &[alg.one()]),
            Err(GnError::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn nonvanishing_witness_examples() {
        let f = Field::prime(10007).unwrap();
        let alg = MatrixAlgebra::new(&f, 2);
        let x1 = crate::expr::parse_expr("x1", &f).unwrap();
        let comm = crate::expr::parse_expr("x1*x2 - x2*x1", &f).unwrap();
        let plan1 = GnEvaluationPlan::new(1).unwrap();
        let plan2 = GnEvaluationPlan::new(2).unwrap();
        assert!(matches!(
            gn_nonvanishing_witness(&x1, &plan1, &alg, 20, 0).unwrap(),
            GnWitness::Found { .. }
        ));
        assert!(matches!(
            gn_nonvanishing_witness(&comm, &plan1, &alg, 20, 0).unwrap(),
            GnWitness::Found { .. }
        ));
        assert_eq!(
            gn_nonvanishing_witness(&x1, &plan2, &alg, 20, 0).unwrap(),
            GnWitness::Exhausted { budget: 20 }
        );
    }
}
