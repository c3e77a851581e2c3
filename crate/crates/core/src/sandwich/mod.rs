//! Sandwiches `a<w>b = { a w^n b : n >= 0 }` in a free monoid, and disjoint
//! decompositions built from them.
//!
//! In a free monoid every sandwich with nonempty `w` is free: its members
//! have strictly increasing lengths. A sandwich with empty `w` is the
//! singleton `{ab}`.

mod algebra;
mod extract;
mod gamma;
mod intersect;

use std::collections::BTreeSet;

pub use algebra::{disjointify, subtract, IndexSet};
pub use extract::extract_decomposition;
pub use gamma::{check_monogenic_plus_finite, gamma_bounds, GammaBounds, MonogenicCheck};
pub use intersect::{intersect, ArithmeticFamily, IntersectionResult};

use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sandwich {
    pub a: Word,
    pub w: Word,
    pub b: Word,
}

impl Sandwich {
    pub fn new(a: Word, w: Word, b: Word) -> Self {
        Sandwich { a, w, b }
    }

    /// `<w> = 1<w>1`.
    pub fn power(w: Word) -> Self {
        Sandwich::new(Word::empty(), w, Word::empty())
    }

    pub fn singleton(word: Word) -> Self {
        Sandwich::new(word, Word::empty(), Word::empty())
    }

    pub fn is_singleton(&self) -> bool {
        self.w.is_empty()
    }

    /// `a · w^n · b`.
    pub fn member(&self, n: usize) -> Word {
        self.a.concat(&self.w.pow(n)).concat(&self.b)
    }

    /// Index `n` with `member(n) == word`, if any.
    pub fn index_of(&self, word: &Word) -> Option<usize> {
        let (a, b) = (self.a.len(), self.b.len());
        if word.len() < a + b || !word.starts_with(&self.a) || !word.ends_with(&self.b) {
            return None;
        }
        let middle = &word.letters()[a..word.len() - b];
        if self.w.is_empty() {
            return middle.is_empty().then_some(0);
        }
        if !middle.len().is_multiple_of(self.w.len()) {
            return None;
        }
        middle
            .chunks(self.w.len())
            .all(|c| c == self.w.letters())
            .then_some(middle.len() / self.w.len())
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.index_of(word).is_some()
    }

    /// Members of length at most `max_len`.
    pub fn members_up_to_len(&self, max_len: usize) -> Vec<Word> {
        let base = self.a.len() + self.b.len();
        if base > max_len {
            return Vec::new();
        }
        if self.is_singleton() {
            return vec![self.member(0)];
        }
        (0..=(max_len - base) / self.w.len())
            .map(|n| self.member(n))
            .collect()
    }

    /// Members of weight at most `max_weight`.
    pub fn members_up_to_weight(&self, alphabet: &Alphabet, max_weight: u64) -> Vec<Word> {
        let base = alphabet.weight(&self.a) + alphabet.weight(&self.b);
        if base > max_weight {
            return Vec::new();
        }
        if self.is_singleton() {
            return vec![self.member(0)];
        }
        let step = alphabet.weight(&self.w);
        (0..=((max_weight - base) / step) as usize)
            .map(|n| self.member(n))
            .collect()
    }

    /// Number of members of weight at most `n`.
    pub fn count_up_to(&self, alphabet: &Alphabet, n: u64) -> u64 {
        let base = alphabet.weight(&self.a) + alphabet.weight(&self.b);
        if base > n {
            0
        } else if self.is_singleton() {
            1
        } else {
            (n - base) / alphabet.weight(&self.w) + 1
        }
    }

    /// The same set written with `a` as short as possible: while `a` ends
    /// with the last letter of `w`, that letter moves across the power,
    /// rotating `w` and joining the front of `b`.
    pub fn canonical(&self) -> Sandwich {
        if self.is_singleton() {
            return Sandwich::singleton(self.member(0));
        }
        let mut a = self.a.letters().to_vec();
        let mut w = self.w.letters().to_vec();
        let mut b = self.b.letters().to_vec();
        while let (Some(&x), Some(&y)) = (a.last(), w.last()) {
            if x != y {
                break;
            }
            a.pop();
            w.rotate_right(1);
            b.insert(0, x);
        }
        Sandwich::new(Word::new(a), Word::new(w), Word::new(b))
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.is_singleton() {
            return format!("{{{}}}", alphabet.display_word(&self.member(0)));
        }
        format!(
            "{}<{}>{}",
            alphabet.display_word(&self.a),
            alphabet.display_word(&self.w),
            alphabet.display_word(&self.b)
        )
    }
}

/// A finite set of words together with pairwise disjoint free sandwiches.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SandwichDecomposition {
    /// Finite part; may contain the empty word (the unit).
    pub finite: BTreeSet<Word>,
    /// Whether the monoid has a zero element (never a word).
    pub has_zero: bool,
    /// Sandwiches with nonempty `w`.
    pub sandwiches: Vec<Sandwich>,
}

impl SandwichDecomposition {
    /// The unit lies in the finite part (rather than inside a sandwich).
    pub fn has_unit(&self) -> bool {
        self.finite.contains(&Word::empty())
    }

    /// All pieces as sandwiches, finite words as singletons.
    pub fn pieces(&self) -> Vec<Sandwich> {
        self.finite
            .iter()
            .cloned()
            .map(Sandwich::singleton)
            .chain(self.sandwiches.iter().cloned())
            .collect()
    }

    /// Every member of weight at most `max_weight`, with repetitions if the
    /// pieces overlap.
    pub fn words_up_to_weight(&self, alphabet: &Alphabet, max_weight: u64) -> Vec<Word> {
        self.pieces()
            .iter()
            .flat_map(|s| s.members_up_to_weight(alphabet, max_weight))
            .collect()
    }

    /// Per-weight member counts `0..=max_weight`, summed over pieces.
    pub fn counts(&self, alphabet: &Alphabet, max_weight: u64) -> Vec<u64> {
        let mut out = vec![0u64; max_weight as usize + 1];
        for w in self.words_up_to_weight(alphabet, max_weight) {
            out[alphabet.weight(&w) as usize] += 1;
        }
        out
    }

    pub(crate) fn normalize(&mut self) {
        for s in &mut self.sandwiches {
            *s = s.canonical();
        }
        self.sandwiches.sort();
        self.sandwiches.dedup();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::uniform(&["x", "y"]).unwrap()
    }

    fn w(s: &str) -> Word {
        xy().parse_word(s).unwrap()
    }

    #[test]
    fn members() {
        let s = Sandwich::new(w(""), w("y"), w("x"));
        assert_eq!(s.member(2), w("yyx"));
        assert_eq!(Sandwich::new(w("x"), w(""), w("y")).member(0), w("xy"));
        assert_eq!(Sandwich::power(w("xy")).member(3), w("xyxyxy"));
        assert_eq!(s.index_of(&w("yyyx")), Some(3));
        assert_eq!(s.index_of(&w("yyxx")), None);
        assert_eq!(Sandwich::singleton(w("xy")).index_of(&w("xy")), Some(0));
    }

    #[test]
    fn counting() {
        let a = xy();
        assert_eq!(Sandwich::new(w(""), w("y"), w("x")).count_up_to(&a, 5), 5);
        assert_eq!(Sandwich::power(w("y")).count_up_to(&a, 3), 4);
        let heavy = Alphabet::new(vec!["x".into(), "y".into()], vec![3, 4]).unwrap();
        assert_eq!(Sandwich::new(w("x"), w(""), w("y")).count_up_to(&heavy, 5), 0);
        assert_eq!(Sandwich::new(w("x"), w(""), w("y")).count_up_to(&heavy, 7), 1);
        // Brute force against enumeration.
        for s in [
            Sandwich::new(w("xy"), w("yxx"), w("y")),
            Sandwich::new(w(""), w("x"), w("")),
            Sandwich::new(w("y"), w("xy"), w("")),
        ] {
            for n in 0..40 {
                assert_eq!(
                    s.count_up_to(&heavy, n),
                    s.members_up_to_weight(&heavy, n).len() as u64
                );
            }
        }
    }

    #[test]
    fn canonical_form_preserves_the_set() {
        for s in [
            Sandwich::new(w("yx"), w("yx"), w("x")),
            Sandwich::new(w("y"), w("y"), w("")),
            Sandwich::new(w("xxy"), w("xy"), w("yy")),
            Sandwich::new(w("x"), w("yy"), w("")),
        ] {
            let c = s.canonical();
            assert_eq!(c.members_up_to_len(30), s.members_up_to_len(30));
            if let (Some(x), Some(y)) = (c.a.letters().last(), c.w.letters().last()) {
                assert_ne!(x, y);
            }
        }
        assert_eq!(
            Sandwich::new(w("y"), w("y"), w("")).canonical(),
            Sandwich::new(w(""), w("y"), w("y"))
        );
    }
}
