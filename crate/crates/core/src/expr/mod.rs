//! Noncommutative Laurent polynomials and group words: representation,
//! parsing, canonical printing, multilinear classification and evaluation in
//! any [`Algebra`](crate::algebra::Algebra).

mod eval;
mod laurent;
mod multilinear;
mod parse;
mod word;

pub use eval::{evaluate, evaluate_word, EvalError};
pub use laurent::LaurentExpr;
pub use multilinear::{
    classify_multilinear, classify_multilinear_auto, ClassifyError, MultilinearTable, Permutation,
};
pub use parse::{parse_expr, parse_word, ParseError, ParseErrorKind, MAX_SUM_EXPONENT};
pub use word::{is_trivial_word, reduce_word, VariableId, Word};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, MatrixAlgebra};
    use crate::field::Field;
    use crate::matrix::Matrix;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn parse_examples() {
        let e = parse_expr("x1*x2 - x2*x1", &q()).unwrap();
        assert_eq!(e.terms().len(), 2);
        assert!(e.terms()[0].0.is_one());
        assert_eq!(e.terms()[1].0, q().from_i64(-1));

        let e = parse_expr("x1^2*x2^-1", &q()).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.terms()[0].1, Word::from_pairs(&[(1, 2), (2, -1)]));

        let e = parse_expr("x1*x1^-1", &q()).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert!(e.terms()[0].1.is_identity() && e.terms()[0].0.is_one());
    }

    #[test]
    fn parse_errors() {
        let err = parse_expr("x1 + * x2", &q()).unwrap_err();
        assert_eq!(err.position, 5);
        assert_eq!(
            parse_expr("x1^0", &q()).unwrap_err().kind,
            ParseErrorKind::ZeroExponent
        );
        assert!(matches!(
            parse_expr("1/7*x1", &Field::prime(7).unwrap())
                .unwrap_err()
                .kind,
            ParseErrorKind::Coefficient(_)
        ));
        assert!(parse_expr("x1x2", &q()).is_err());
        assert!(parse_expr("x0", &q()).is_err());
        assert!(parse_expr("(x1 + x2)^-1", &q()).is_err());
        assert!(parse_expr("(x1*x2", &q()).is_err());
        assert!(parse_expr("", &q()).is_err());
        assert!(parse_expr("x1 ? x2", &q()).is_err());
    }

    #[test]
    fn parse_handles_structure() {
        let e = parse_expr("(x1 + x2)^2", &q()).unwrap();
        assert_eq!(e.to_string(), "x1^2 + x2^2 + x1*x2 + x2*x1");
        let e = parse_expr("3/2*x1 - (2*x1)^-1", &q()).unwrap();
        assert_eq!(e.to_string(), "-1/2*x1^-1 + 3/2*x1");
        assert_eq!(parse_expr("x1 - x1", &q()).unwrap().to_string(), "0");
        assert_eq!(parse_expr("x1*-x2", &q()).unwrap().to_string(), "-x1*x2");
        assert_eq!(parse_expr("x1^(-2)", &q()).unwrap().to_string(), "x1^-2");
    }

    #[test]
    fn classify_examples() {
        let t = classify_multilinear(&parse_expr("x1*x2 - x2*x1", &q()).unwrap(), 2).unwrap();
        let id = Permutation::identity(2);
        let swap = Permutation::from_one_line(vec![2, 1]).unwrap();
        assert!(t.coefficient(&id).is_one());
        assert_eq!(t.coefficient(&swap), q().from_i64(-1));
        assert_eq!(swap.cycle_notation(), "(1 2)");

        let t = classify_multilinear(&parse_expr("x1*x2 + x2*x1", &q()).unwrap(), 2).unwrap();
        assert!(t.coefficient(&swap).is_one());

        let err = classify_multilinear(&parse_expr("x1^2*x2", &q()).unwrap(), 2).unwrap_err();
        match err {
            ClassifyError::NotMultilinear { term, .. } => assert_eq!(term, "x1^2*x2"),
            other => panic!("{other:?}"),
        }
        assert!(classify_multilinear(&parse_expr("x1*x2 + 1", &q()).unwrap(), 2).is_err());
        assert_eq!(
            classify_multilinear(&parse_expr("0", &q()).unwrap(), 2),
            Err(ClassifyError::Zero)
        );
    }

    #[test]
    fn table_reconstructs_source() {
        let src = parse_expr("x1*x2*x3 - x3*x2*x1 + 5*x2*x1*x3", &q()).unwrap();
        let t = classify_multilinear(&src, 3).unwrap();
        assert_eq!(t.to_expr(), src);
    }

    #[test]
    fn evaluate_examples() {
        let alg = MatrixAlgebra::new(&q(), 2);
        let comm = parse_expr("x1*x2 - x2*x1", &q()).unwrap();
        let d1 = Matrix::diag(&q(), &[q().from_i64(3), q().from_i64(-1)]);
        let d2 = Matrix::diag(&q(), &[q().from_i64(2), q().from_i64(7)]);
        assert!(evaluate(&comm, &alg, &[d1, d2]).unwrap().is_zero());

        let t1 = Matrix::from_i64(&q(), &[&[1, 0], &[0, 0]]);
        let t2 = Matrix::unit(&q(), 2, 0, 1);
        assert_eq!(evaluate(&comm, &alg, &[t1, t2.clone()]).unwrap(), t2);

        let a = Matrix::from_i64(&q(), &[&[2, 1], &[1, 1]]);
        let x1 = parse_expr("x1", &q()).unwrap();
        assert_eq!(evaluate(&x1, &alg, std::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn evaluate_errors() {
        let alg = MatrixAlgebra::new(&q(), 2);
        let e = parse_expr("x1^-1*x2", &q()).unwrap();
        let z = Matrix::zero(&q(), 2);
        assert_eq!(
            evaluate(&e, &alg, std::slice::from_ref(&z)),
            Err(EvalError::ArityMismatch { needed: 2, got: 1 })
        );
        assert_eq!(
            evaluate(&e, &alg, &[z.clone(), z]),
            Err(EvalError::NotInvertible { variable: 1 })
        );
        let other = MatrixAlgebra::new(&Field::prime(5).unwrap(), 2);
        assert!(matches!(
            evaluate(&e, &other, &[other.one(), other.one()]),
            Err(EvalError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn coefficient_embedding() {
        let e = parse_expr("1/2*x1 - 3*x2", &q()).unwrap();
        let f7 = Field::prime(7).unwrap();
        assert_eq!(e.embed_into(&f7).unwrap().to_string(), "-3*x1 - 3*x2");
        assert!(e.embed_into(&Field::prime(2).unwrap()).is_err());
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        proptest::collection::vec(
            (1u32..4, prop::sample::select(vec![-2i64, -1, 1, 2, 3])),
            0..6,
        )
        .prop_map(|p| Word::from_pairs(&p))
    }

    fn expr_strategy() -> impl Strategy<Value = LaurentExpr> {
        proptest::collection::vec(((-9i64..9), (1i64..4), word_strategy()), 0..5).prop_map(
            |terms| {
                let f = Field::Rational;
                LaurentExpr::from_terms(
                    &f,
                    terms.into_iter().map(|(n, d, w)| {
                        (
                            crate::field::Fe::Q(num_rational::BigRational::new(n.into(), d.into())),
                            w,
                        )
                    }),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(e in expr_strategy()) {
            let printed = e.to_string();
            prop_assert_eq!(parse_expr(&printed, &q()).unwrap(), e);
        }

        #[test]
        fn evaluation_is_multiplicative_on_words(u in word_strategy(), v in word_strategy(), seed in any::<u64>()) {
            let f = Field::prime(10007).unwrap();
            let alg = MatrixAlgebra::new(&f, 3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vals: Vec<Matrix> = (0..3).map(|_| alg.random_invertible(&mut rng)).collect();
            let lhs = evaluate_word(&u.mul(&v), &alg, &vals).unwrap();
            let rhs = alg.mul(&evaluate_word(&u, &alg, &vals).unwrap(), &evaluate_word(&v, &alg, &vals).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multilinear_maps_are_linear_in_each_slot(slot in 0usize..3, seed in any::<u64>()) {
            let f = Field::prime(10007).unwrap();
            let alg = MatrixAlgebra::new(&f, 2);
            let table = classify_multilinear(&parse_expr("x1*x2*x3 - 2*x3*x2*x1 + x2*x1*x3", &f).unwrap(), 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base: Vec<Matrix> = (0..3).map(|_| alg.random(&mut rng)).collect();
            let (u, v) = (alg.random(&mut rng), alg.random(&mut rng));
            let (alpha, beta) = (f.random(&mut rng), f.random(&mut rng));
            let with = |m: Matrix| { let mut a = base.clone(); a[slot] = m; table.evaluate(&alg, &a).unwrap() };
            let combo = alg.add(&alg.scale(&alpha, &u), &alg.scale(&beta, &v));
            let lhs = with(combo);
            let rhs = alg.add(&alg.scale(&alpha, &with(u)), &alg.scale(&beta, &with(v)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
