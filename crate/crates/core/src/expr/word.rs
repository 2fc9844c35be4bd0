use std::cmp::Ordering;
use std::fmt;

/// A noncommuting indeterminate x_i, i ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId(u32);

impl VariableId {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(VariableId(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// 0-based slot in an assignment.
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A freely reduced group word x_{i_1}^{n_1} … x_{i_t}^{n_t}: adjacent letters
/// have distinct variables and every exponent is nonzero. The empty word is
/// the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(VariableId, i64)>,
}

impl Word {
    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = (VariableId, i64)>) -> Self {
        let mut out: Vec<(VariableId, i64)> = Vec::new();
        for (v, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((top, te)) if *top == v => {
                    *te += e;
                    if *te == 0 {
                        out.pop();
                    }
                }
                _ => out.push((v, e)),
            }
        }
        Word { letters: out }
    }

    pub fn identity() -> Self {
        Word::default()
    }

    pub fn var(v: VariableId) -> Self {
        Word {
            letters: vec![(v, 1)],
        }
    }

    /// Convenience constructor from `(index, exponent)` pairs; panics on index 0.
    pub fn from_pairs(pairs: &[(u32, i64)]) -> Self {
        Word::new(
            pairs
                .iter()
                .map(|&(i, e)| (VariableId::new(i).expect("variable index ≥ 1"), e)),
        )
    }

    /// The commutator word x1 x2 x1⁻¹ x2⁻¹.
    pub fn commutator() -> Self {
        Word::from_pairs(&[(1, 1), (2, 1), (1, -1), (2, -1)])
    }

    pub fn letters(&self) -> &[(VariableId, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Largest variable index occurring (0 for the identity).
    pub fn max_variable(&self) -> u32 {
        self.letters
            .iter()
            .map(|(v, _)| v.index())
            .max()
            .unwrap_or(0)
    }

    /// Sum of the exponents of `v`.
    pub fn exponent_sum(&self, v: VariableId) -> i64 {
        self.letters
            .iter()
            .filter(|(w, _)| *w == v)
            .map(|(_, e)| e)
            .sum()
    }

    /// Σ |n_j|.
    pub fn syllable_degree(&self, v: VariableId) -> u64 {
        self.letters
            .iter()
            .filter(|(w, _)| *w == v)
            .map(|(_, e)| e.unsigned_abs())
            .sum()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.letters.iter().any(|&(_, e)| e < 0)
    }
}

/// Free reduction; idempotent.
pub fn reduce_word(w: &Word) -> Word {
    Word::new(w.letters.iter().copied())
}

/// True iff the word freely reduces to the identity.
pub fn is_trivial_word(w: &Word) -> bool {
    reduce_word(w).is_identity()
}

impl Ord for Word {
    /// Length-lexicographic on the (variable index, exponent) sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            self.letters
                .iter()
                .map(|(v, e)| (v.index(), *e))
                .cmp(other.letters.iter().map(|(v, e)| (v.index(), *e)))
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Raw, unreduced letters; reduce_word sees them through `Word { .. }`.
    fn raw(pairs: &[(u32, i64)]) -> Word {
        Word {
            letters: pairs.iter().map(|&(i, e)| (VariableId(i), e)).collect(),
        }
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(
            reduce_word(&raw(&[(1, 1), (2, 1), (2, -1), (1, 1)])),
            Word::from_pairs(&[(1, 2)])
        );
        assert_eq!(reduce_word(&Word::identity()), Word::identity());
        assert_eq!(reduce_word(&raw(&[(1, 2), (1, -2)])), Word::identity());
    }

    #[test]
    fn triviality() {
        assert!(is_trivial_word(&raw(&[(1, 1), (2, 1), (2, -1), (1, -1)])));
        assert!(!is_trivial_word(&Word::commutator()));
        assert!(is_trivial_word(&Word::identity()));
    }

    #[test]
    fn ordering_is_length_first() {
        let short = Word::from_pairs(&[(2, 5)]);
        let long = Word::from_pairs(&[(1, 1), (2, 1)]);
        assert!(short < long);
        assert!(Word::from_pairs(&[(1, -1)]) < Word::from_pairs(&[(1, 1)]));
        assert!(Word::identity() < short);
    }

    fn letters() -> impl Strategy<Value = Vec<(u32, i64)>> {
        proptest::collection::vec(
            (1u32..4, prop::sample::select(vec![-2i64, -1, 1, 2])),
            0..12,
        )
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_shrinks(seed in letters()) {
            let w = raw(&seed);
            let r = reduce_word(&w);
            prop_assert_eq!(reduce_word(&r), r.clone());
            prop_assert!(r.letters().len() <= w.letters().len());
            for pair in r.letters().windows(2) {
                prop_assert_ne!(pair[0].0, pair[1].0);
            }
        }

        #[test]
        fn inserted_cancelling_pairs_vanish(seed in letters(), inserts in proptest::collection::vec((0usize..20, 1u32..4, 1i64..3), 0..6)) {
            let mut letters = seed.clone();
            for (pos, v, e) in inserts {
                let pos = pos.min(letters.len());
                letters.insert(pos, (v, -e));
                letters.insert(pos, (v, e));
            }
            prop_assert_eq!(reduce_word(&raw(&letters)), reduce_word(&raw(&seed)));
        }

        #[test]
        fn word_times_inverse_is_trivial(seed in letters()) {
            let w = Word::from_pairs(&seed);
            prop_assert!(is_trivial_word(&w.mul(&w.inverse())));
        }
    }
}
