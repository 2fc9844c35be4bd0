//! Quaternion (symbol) algebras (a,b/F) over fields of characteristic ≠ 2.

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, DegreeCertificate};
use crate::field::{Fe, Field};
use crate::json::{fe_from_json, fe_to_json, DecodeError};
use crate::matrix::Matrix;
use crate::poly::UnivariatePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuaternionError {
    #[error("quaternion algebras in characteristic 2 are not supported")]
    CharacteristicTwo,
    #[error("symbol parameters must be nonzero")]
    ZeroParameter,
    #[error("element has reduced norm zero and is not invertible")]
    ZeroNorm,
}

/// Element t + x·i + y·j + z·k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub t: Fe,
    pub x: Fe,
    pub y: Fe,
    pub z: Fe,
}

impl Quaternion {
    pub fn new(t: Fe, x: Fe, y: Fe, z: Fe) -> Self {
        Quaternion { t, x, y, z }
    }

    pub fn coords(&self) -> [&Fe; 4] {
        [&self.t, &self.x, &self.y, &self.z]
    }
}

/// How much is known about whether an algebra is a division ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisionCheck {
    /// The norm form has no nontrivial zero of coordinate height ≤ `bound`;
    /// evidence, not proof.
    NoZeroFound { bound: u64 },
    /// An explicit nonzero element of norm zero: the algebra is split.
    ZeroFound(Quaternion),
}

/// i² = a, j² = b, k = ij = −ji.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    field: Field,
    a: Fe,
    b: Fe,
}

impl QuaternionAlgebra {
    pub fn new(field: &Field, a: Fe, b: Fe) -> Result<Self, QuaternionError> {
        if field.characteristic() == 2 {
            return Err(QuaternionError::CharacteristicTwo);
        }
        if a.is_zero() || b.is_zero() {
            return Err(QuaternionError::ZeroParameter);
        }
        Ok(QuaternionAlgebra {
            field: field.clone(),
            a,
            b,
        })
    }

    /// (a,b/ℚ) from integers.
    pub fn rational(a: i64, b: i64) -> Result<Self, QuaternionError> {
        let q = Field::Rational;
        Self::new(&q, q.from_i64(a), q.from_i64(b))
    }

    /// Hamilton's quaternions (−1,−1/ℚ).
    pub fn hamilton() -> Self {
        Self::rational(-1, -1).unwrap()
    }

    /// Whether (a, b) over ℚ is one of the shipped presets known to be a
    /// division algebra: (−1,−1) and (−1,−3), in either order.
    pub fn is_known_division(&self) -> bool {
        if self.field != Field::Rational {
            return false;
        }
        let q = Field::Rational;
        let presets = [(-1, -1), (-1, -3), (-3, -1)];
        presets
            .iter()
            .any(|&(a, b)| self.a == q.from_i64(a) && self.b == q.from_i64(b))
    }

    pub fn a(&self) -> &Fe {
        &self.a
    }

    pub fn b(&self) -> &Fe {
        &self.b
    }

    pub fn i(&self) -> Quaternion {
        let (o, z) = (self.field.one(), self.field.zero());
        Quaternion::new(z.clone(), o, z.clone(), z)
    }

    pub fn j(&self) -> Quaternion {
        let (o, z) = (self.field.one(), self.field.zero());
        Quaternion::new(z.clone(), z.clone(), o, z)
    }

    pub fn k(&self) -> Quaternion {
        let (o, z) = (self.field.one(), self.field.zero());
        Quaternion::new(z.clone(), z.clone(), z, o)
    }

    pub fn from_i64(&self, t: i64, x: i64, y: i64, z: i64) -> Quaternion {
        let f = &self.field;
        Quaternion::new(f.from_i64(t), f.from_i64(x), f.from_i64(y), f.from_i64(z))
    }

    pub fn conjugate(&self, q: &Quaternion) -> Quaternion {
        Quaternion::new(q.t.clone(), -&q.x, -&q.y, -&q.z)
    }

    /// Trd(q) = 2t.
    pub fn reduced_trace(&self, q: &Quaternion) -> Fe {
        &q.t + &q.t
    }

    /// Nrd(q) = t² − a x² − b y² + ab z².
    pub fn reduced_norm(&self, q: &Quaternion) -> Fe {
        let ab = &self.a * &self.b;
        &(&(&(&q.t * &q.t) - &(&self.a * &(&q.x * &q.x))) - &(&self.b * &(&q.y * &q.y)))
            + &(&ab * &(&q.z * &q.z))
    }

    pub fn q_mul(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        // products of basis elements: i² = a, j² = b, k² = −ab, ij = k,
        // ji = −k, ik = a j, ki = −a j, jk = −b i, kj = b i
        let t = &(&(&(&p.t * &q.t) + &(a * &(&p.x * &q.x))) + &(b * &(&p.y * &q.y)))
            - &(&ab * &(&p.z * &q.z));
        let x =
            &(&(&(&p.t * &q.x) + &(&p.x * &q.t)) - &(b * &(&p.y * &q.z))) + &(b * &(&p.z * &q.y));
        let y =
            &(&(&(&p.t * &q.y) + &(&p.y * &q.t)) + &(a * &(&p.x * &q.z))) - &(a * &(&p.z * &q.x));
        let z = &(&(&(&p.t * &q.z) + &(&p.z * &q.t)) + &(&p.x * &q.y)) - &(&p.y * &q.x);
        Quaternion::new(t, x, y, z)
    }

    pub fn q_add(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        Quaternion::new(&p.t + &q.t, &p.x + &q.x, &p.y + &q.y, &p.z + &q.z)
    }

    /// conj(q) / Nrd(q).
    pub fn q_inv(&self, q: &Quaternion) -> Result<Quaternion, QuaternionError> {
        let n = self
            .reduced_norm(q)
            .inv()
            .ok_or(QuaternionError::ZeroNorm)?;
        Ok(self.scale(&n, &self.conjugate(q)))
    }

    /// x − t for central q, otherwise x² − Trd(q)·x + Nrd(q).
    pub fn quat_min_poly(&self, q: &Quaternion) -> DegreeCertificate {
        let f = &self.field;
        let poly = if self.is_central(q) {
            UnivariatePoly::linear(&q.t)
        } else {
            UnivariatePoly::new(
                f.clone(),
                vec![self.reduced_norm(q), -self.reduced_trace(q), f.one()],
            )
        };
        DegreeCertificate::from_min_poly(poly)
    }

    /// Matrix of left multiplication by q in the basis 1, i, j, k (columns
    /// are the images of the basis vectors).
    pub fn regular_representation(&self, q: &Quaternion) -> Matrix {
        let basis = self.basis();
        let mut m = Matrix::zero(&self.field, 4);
        for (col, e) in basis.iter().enumerate() {
            let img = self.q_mul(q, e);
            for (row, c) in img.coords().into_iter().enumerate() {
                m.set(row, col, c.clone());
            }
        }
        m
    }

    /// Searches integer coordinates in `[-bound, bound]⁴` for a nonzero
    /// element of norm zero. Only meaningful over ℚ.
    pub fn heuristic_division_check(&self, bound: u64) -> DivisionCheck {
        let h = bound as i64;
        for t in -h..=h {
            for x in -h..=h {
                for y in -h..=h {
                    for z in -h..=h {
                        if (t, x, y, z) == (0, 0, 0, 0) {
                            continue;
                        }
                        let q = self.from_i64(t, x, y, z);
                        if self.reduced_norm(&q).is_zero() {
                            return DivisionCheck::ZeroFound(q);
                        }
                    }
                }
            }
        }
        DivisionCheck::NoZeroFound { bound }
    }

    pub fn quaternion_to_json(&self, q: &Quaternion) -> Value {
        json!({
            "t": fe_to_json(&q.t),
            "x": fe_to_json(&q.x),
            "y": fe_to_json(&q.y),
            "z": fe_to_json(&q.z),
        })
    }

    pub fn quaternion_from_json(&self, v: &Value) -> Result<Quaternion, DecodeError> {
        let get = |k: &str| -> Result<Fe, DecodeError> {
            fe_from_json(
                &self.field,
                v.get(k)
                    .ok_or(DecodeError::Shape("quaternion coordinates t, x, y, z"))?,
            )
        };
        Ok(Quaternion::new(get("t")?, get("x")?, get("y")?, get("z")?))
    }
}

impl Algebra for QuaternionAlgebra {
    type Elem = Quaternion;

    fn field(&self) -> &Field {
        &self.field
    }

    fn dim(&self) -> usize {
        4
    }

    fn zero(&self) -> Quaternion {
        let z = self.field.zero();
        Quaternion::new(z.clone(), z.clone(), z.clone(), z)
    }

    fn one(&self) -> Quaternion {
        let z = self.field.zero();
        Quaternion::new(self.field.one(), z.clone(), z.clone(), z)
    }

    fn add(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        self.q_add(p, q)
    }

    fn sub(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        Quaternion::new(&p.t - &q.t, &p.x - &q.x, &p.y - &q.y, &p.z - &q.z)
    }

    fn mul(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        self.q_mul(p, q)
    }

    fn scale(&self, c: &Fe, q: &Quaternion) -> Quaternion {
        Quaternion::new(c * &q.t, c * &q.x, c * &q.y, c * &q.z)
    }

    fn inv(&self, q: &Quaternion) -> Option<Quaternion> {
        self.q_inv(q).ok()
    }

    fn is_central(&self, q: &Quaternion) -> bool {
        q.x.is_zero() && q.y.is_zero() && q.z.is_zero()
    }

    fn min_poly(&self, q: &Quaternion) -> UnivariatePoly {
        self.quat_min_poly(q).min_poly
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Quaternion {
        let f = &self.field;
        Quaternion::new(f.random(rng), f.random(rng), f.random(rng), f.random(rng))
    }

    fn basis(&self) -> Vec<Quaternion> {
        vec![self.one(), self.i(), self.j(), self.k()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn defining_relations() {
        let h = QuaternionAlgebra::hamilton();
        let (i, j, k) = (h.i(), h.j(), h.k());
        assert_eq!(h.q_mul(&i, &j), k);
        assert_eq!(h.q_mul(&j, &i), h.scale(&h.field().from_i64(-1), &k));
        assert_eq!(h.q_mul(&i, &i), h.from_i64(-1, 0, 0, 0));
        assert_eq!(h.q_mul(&k, &k), h.from_i64(-1, 0, 0, 0));
        assert_eq!(h.q_inv(&i).unwrap(), h.from_i64(0, -1, 0, 0));
        let comm = h.sub(&h.q_mul(&i, &j), &h.q_mul(&j, &i));
        assert_eq!(comm, h.from_i64(0, 0, 0, 2));
    }

    #[test]
    fn general_symbol_relations() {
        let alg = QuaternionAlgebra::rational(2, -5).unwrap();
        let (i, j, k) = (alg.i(), alg.j(), alg.k());
        let f = alg.field().clone();
        assert_eq!(alg.q_mul(&i, &i), alg.embed(&f.from_i64(2)));
        assert_eq!(alg.q_mul(&j, &j), alg.embed(&f.from_i64(-5)));
        assert_eq!(alg.q_mul(&k, &k), alg.embed(&f.from_i64(10)));
        assert_eq!(alg.q_mul(&i, &k), alg.scale(&f.from_i64(2), &j));
        assert_eq!(alg.q_mul(&k, &j), alg.scale(&f.from_i64(-5), &i));
    }

    #[test]
    fn trace_norm_and_min_poly() {
        let h = QuaternionAlgebra::hamilton();
        let one = h.one();
        assert_eq!(h.reduced_trace(&one), h.field().from_i64(2));
        assert!(h.reduced_norm(&one).is_one());
        assert!(h.reduced_trace(&h.i()).is_zero());
        let two_k = h.from_i64(0, 0, 0, 2);
        assert_eq!(h.reduced_norm(&two_k), h.field().from_i64(4));
        assert_eq!(
            h.quat_min_poly(&h.from_i64(5, 0, 0, 0))
                .min_poly
                .to_string(),
            "x - 5"
        );
        assert_eq!(h.quat_min_poly(&h.i()).min_poly.to_string(), "x^2 + 1");
        let c = h.quat_min_poly(&two_k);
        assert_eq!(
            (c.min_poly.to_string(), c.degree),
            ("x^2 + 4".to_string(), 2)
        );
    }

    #[test]
    fn regular_representation_is_a_homomorphism() {
        let alg = QuaternionAlgebra::rational(-1, -3).unwrap();
        assert_eq!(
            alg.regular_representation(&alg.one()),
            Matrix::identity(alg.field(), 4)
        );
        assert_eq!(
            alg.regular_representation(&alg.i()).min_poly().to_string(),
            "x^2 + 1"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let (p, q) = (alg.random(&mut rng), alg.random(&mut rng));
            let lhs = &alg.regular_representation(&p) * &alg.regular_representation(&q);
            assert_eq!(lhs, alg.regular_representation(&alg.q_mul(&p, &q)));
            assert_eq!(alg.regular_representation(&p).min_poly(), alg.min_poly(&p));
        }
    }

    #[test]
    fn division_heuristic() {
        assert_eq!(
            QuaternionAlgebra::hamilton().heuristic_division_check(10),
            DivisionCheck::NoZeroFound { bound: 10 }
        );
        assert_eq!(
            QuaternionAlgebra::rational(-1, -3)
                .unwrap()
                .heuristic_division_check(10),
            DivisionCheck::NoZeroFound { bound: 10 }
        );
        match QuaternionAlgebra::rational(1, 1)
            .unwrap()
            .heuristic_division_check(2)
        {
            DivisionCheck::ZeroFound(q) => {
                let alg = QuaternionAlgebra::rational(1, 1).unwrap();
                assert!(alg.reduced_norm(&q).is_zero());
            }
            other => panic!("expected a zero, got {other:?}"),
        }
        // 1 + i is the zero named in the docs
        let split = QuaternionAlgebra::rational(1, 1).unwrap();
        assert!(split.reduced_norm(&split.from_i64(1, 1, 0, 0)).is_zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        let f2 = Field::extension(2, 3).unwrap();
        assert_eq!(
            QuaternionAlgebra::new(&f2, f2.one(), f2.one()),
            Err(QuaternionError::CharacteristicTwo)
        );
        assert_eq!(
            QuaternionAlgebra::rational(0, 1),
            Err(QuaternionError::ZeroParameter)
        );
        let h = QuaternionAlgebra::hamilton();
        assert_eq!(h.q_inv(&h.zero()), Err(QuaternionError::ZeroNorm));
    }

    #[test]
    fn noncentral_elements_have_degree_two() {
        let h = QuaternionAlgebra::hamilton();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let q = h.random(&mut rng);
            let d = h.quat_min_poly(&q).degree;
            assert_eq!(d, if h.is_central(&q) { 1 } else { 2 });
        }
    }
}
