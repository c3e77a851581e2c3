//! Words over a weighted alphabet.
//!
//! A [`Word`] is a plain sequence of letter indices; the [`Alphabet`] owns the
//! generator names and the positive weight function. Words carry no reference
//! to their alphabet, so every operation that needs names or weights takes the
//! alphabet explicitly and checks that the word's letters are in range.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator in its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An element of the free monoid: a finite (possibly empty) letter sequence.
///
/// `Ord` is shortlex (length first, then letter order). The weight-aware
/// order lives in [`Alphabet::compare_graded_lex`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Word(indices.into_iter().map(|i| Letter(i as u16)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Position of the first occurrence of `factor`, if any.
    pub fn find(&self, factor: &Word) -> Option<usize> {
        find_factor(&self.0, &factor.0)
    }

    pub fn contains(&self, factor: &Word) -> bool {
        self.find(factor).is_some()
    }

    /// Splits a word into its primitive root and exponent.
    ///
    /// Panics on the empty word.
    pub fn primitive_root(&self) -> (Word, usize) {
        primitive_root(self)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A word or the distinguished zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordOrZero {
    Zero,
    Word(Word),
}

impl WordOrZero {
    pub fn as_word(&self) -> Option<&Word> {
        match self {
            WordOrZero::Word(w) => Some(w),
            WordOrZero::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, WordOrZero::Zero)
    }
}

impl From<Word> for WordOrZero {
    fn from(w: Word) -> Self {
        WordOrZero::Word(w)
    }
}

/// Knuth–Morris–Pratt failure function: `fail[i]` is the length of the
/// longest proper border of `s[..=i]`.
pub(crate) fn failure_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut fail = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

fn find_factor<T: PartialEq>(text: &[T], pattern: &[T]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    if pattern.len() > text.len() {
        return None;
    }
    let fail = failure_function(pattern);
    let mut k = 0;
    for (i, c) in text.iter().enumerate() {
        while k > 0 && *c != pattern[k] {
            k = fail[k - 1];
        }
        if *c == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// Primitive root and exponent of a nonempty word, via its shortest period.
pub fn primitive_root(word: &Word) -> (Word, usize) {
    assert!(!word.is_empty(), "primitive root of the empty word");
    let n = word.len();
    let border = failure_function(&word.0)[n - 1];
    let period = n - border;
    if n.is_multiple_of(period) {
        (word.slice(0, period), n / period)
    } else {
        (word.clone(), 1)
    }
}

/// Smallest `k` with `w.rotate(k) == w2`, or `None` when the words are not
/// conjugate.
pub fn conjugacy_offset(w: &Word, w2: &Word) -> Option<usize> {
    if w.len() != w2.len() {
        return None;
    }
    if w.is_empty() {
        return Some(0);
    }
    let doubled = w.concat(w);
    // Occurrences at offset k < |w| correspond to rotations by k.
    find_factor(&doubled.0[..2 * w.len() - 1], &w2.0)
}

/// Ordered generators with their positive weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    weights: Vec<u64>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, weights: Vec<u64>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::Validation(format!(
                "{} generators but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::Validation("too many generators".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Validation(format!(
                    "generator name {name:?} is not an ASCII identifier"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::Validation(format!("duplicate generator {name:?}")));
            }
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidWeight {
                generator: names[i].clone(),
                weight: 0,
            });
        }
        Ok(Alphabet { names, weights })
    }

    /// Alphabet with every weight equal to one.
    pub fn uniform<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let weights = vec![1; names.len()];
        Alphabet::new(names, weights)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u16))
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn letter_weight(&self, letter: Letter) -> u64 {
        self.weights[letter.index()]
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Same generators, new weights.
    pub fn with_weights(&self, weights: Vec<u64>) -> Result<Self> {
        Alphabet::new(self.names.clone(), weights)
    }

    /// Sum of the letter weights; zero for the empty word.
    pub fn weight(&self, word: &Word) -> u64 {
        word.letters().iter().map(|&l| self.letter_weight(l)).sum()
    }

    /// Checks that every letter of `word` belongs to this alphabet.
    pub fn check(&self, word: &Word) -> Result<()> {
        match word.letters().iter().find(|l| l.index() >= self.len()) {
            Some(l) => Err(Error::Validation(format!(
                "letter index {} outside an alphabet of {} generators",
                l.0,
                self.len()
            ))),
            None => Ok(()),
        }
    }

    /// Weight, then length, then lexicographic in generator order.
    pub fn compare_graded_lex(&self, u: &Word, v: &Word) -> Ordering {
        self.weight(u)
            .cmp(&self.weight(v))
            .then_with(|| u.len().cmp(&v.len()))
            .then_with(|| u.letters().cmp(v.letters()))
    }

    /// True when some generator name is longer than one character, in which
    /// case words are written with `.` separators.
    pub fn needs_separators(&self) -> bool {
        self.names.iter().any(|n| n.len() > 1)
    }

    pub fn format_word(&self, word: &Word) -> String {
        let sep = if self.needs_separators() { "." } else { "" };
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Like [`Alphabet::format_word`] but renders the empty word as `1`.
    pub fn display_word(&self, word: &Word) -> String {
        if word.is_empty() {
            "1".to_string()
        } else {
            self.format_word(word)
        }
    }

    /// Parses a word token.
    ///
    /// Tokens containing `.` are split on it. Otherwise a token equal to a
    /// generator name is that generator, and anything else is read one
    /// character per generator. `""` and `"1"` (when `1` is not a generator)
    /// denote the empty word.
    pub fn parse_word(&self, token: &str) -> std::result::Result<Word, String> {
        if token.is_empty() || (token == "1" && self.letter("1").is_none()) {
            return Ok(Word::empty());
        }
        let pieces: Vec<&str> = if token.contains('.') {
            token.split('.').collect()
        } else if self.letter(token).is_some() {
            vec![token]
        } else {
            (0..token.len()).map(|i| &token[i..i + 1]).collect()
        };
        pieces
            .into_iter()
            .map(|p| {
                if p.is_empty() {
                    Err(format!("empty generator name in {token:?}"))
                } else {
                    self.letter(p)
                        .ok_or_else(|| format!("undeclared generator {p:?}"))
                }
            })
            .collect()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Formats a word with single-character letter names `a`, `b`, ... for debug output.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            match char::from_u32('a' as u32 + l.0 as u32).filter(|_| l.0 < 26) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "[{}]", l.0)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::uniform(&["a", "b"]).unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    /// All words over `k` letters of length exactly `n`.
    fn words_of_length(k: usize, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..k).map(move |i| {
                        let mut q = p.clone();
                        q.push(Letter(i as u16));
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn brute_primitive_root(word: &Word) -> (Word, usize) {
        let n = word.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && word.slice(0, d).pow(n / d) == *word {
                return (word.slice(0, d), n / d);
            }
        }
        unreachable!()
    }

    #[test]
    fn weights() {
        let a = Alphabet::new(vec!["x".into(), "y".into()], vec![2, 1]).unwrap();
        assert_eq!(a.weight(&Word::empty()), 0);
        let xyy = a.parse_word("xyy").unwrap();
        assert_eq!(a.weight(&xyy), 4);
        let u = Alphabet::uniform(&["x", "y"]).unwrap();
        assert_eq!(u.weight(&u.parse_word("xy").unwrap()), 2);
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(vec!["x".into()], vec![0]).is_err());
        assert!(Alphabet::new(vec!["x".into(), "x".into()], vec![1, 1]).is_err());
        assert!(Alphabet::new(vec!["x-y".into()], vec![1]).is_err());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(&w("abab")), (w("ab"), 2));
        assert_eq!(primitive_root(&w("a")), (w("a"), 1));
        assert_eq!(primitive_root(&w("aab")), (w("aab"), 1));
        assert_eq!(brute_primitive_root(&w("aab")), (w("aab"), 1));
    }

    #[test]
    #[should_panic]
    fn primitive_root_of_empty_word_panics() {
        primitive_root(&Word::empty());
    }

    #[test]
    fn primitive_root_exhaustive() {
        for n in 1..=12 {
            for word in words_of_length(2, n) {
                let (root, e) = primitive_root(&word);
                assert_eq!(root.pow(e), word);
                assert_eq!((root.clone(), e), brute_primitive_root(&word));
                assert_eq!(primitive_root(&root).1, 1);
            }
        }
    }

    #[test]
    fn conjugacy() {
        assert_eq!(conjugacy_offset(&w("ab"), &w("ba")), Some(1));
        assert_eq!(conjugacy_offset(&w("ab"), &w("ab")), Some(0));
        assert_eq!(conjugacy_offset(&w("ab"), &w("aa")), None);
        assert_eq!(conjugacy_offset(&w("ab"), &w("aba")), None);
    }

    #[test]
    fn conjugacy_matches_direct_scan() {
        for n in 1..=6 {
            let all = words_of_length(2, n);
            for u in &all {
                for v in &all {
                    let direct = (0..n).find(|&k| u.rotate(k) == *v);
                    let got = conjugacy_offset(u, v);
                    assert_eq!(got, direct);
                    if let Some(k) = got {
                        assert_eq!(u.concat(u).slice(k, k + n), *v);
                    }
                }
            }
        }
    }

    #[test]
    fn graded_lex_examples() {
        let u = Alphabet::uniform(&["x", "y"]).unwrap();
        let p = |s| u.parse_word(s).unwrap();
        assert_eq!(u.compare_graded_lex(&p("y"), &p("xx")), Ordering::Less);
        assert_eq!(u.compare_graded_lex(&p("xy"), &p("yx")), Ordering::Less);
        let d = Alphabet::new(vec!["x".into(), "y".into()], vec![2, 1]).unwrap();
        let x = d.parse_word("x").unwrap();
        let y = d.parse_word("y").unwrap();
        assert_eq!(d.compare_graded_lex(&y, &x), Ordering::Less);
    }

    #[test]
    fn graded_lex_is_a_total_order() {
        let alpha = Alphabet::new(vec!["a".into(), "b".into()], vec![2, 1]).unwrap();
        let all: Vec<Word> = (0..=6).flat_map(|n| words_of_length(2, n)).collect();
        for u in &all {
            for v in &all {
                let uv = alpha.compare_graded_lex(u, v);
                assert_eq!(uv, alpha.compare_graded_lex(v, u).reverse());
                assert_eq!(uv == Ordering::Equal, u == v);
            }
        }
        for u in &all {
            for v in &all {
                if alpha.compare_graded_lex(u, v) != Ordering::Less {
                    continue;
                }
                for x in &all {
                    if alpha.compare_graded_lex(v, x) == Ordering::Less {
                        assert_eq!(alpha.compare_graded_lex(u, x), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_format_words() {
        let multi = Alphabet::uniform(&["x1", "y"]).unwrap();
        let word = multi.parse_word("x1.y.x1").unwrap();
        assert_eq!(word.len(), 3);
        assert_eq!(multi.format_word(&word), "x1.y.x1");
        assert_eq!(multi.parse_word("x1").unwrap().len(), 1);
        assert!(multi.parse_word("xy").is_err());
        assert_eq!(ab().parse_word("1").unwrap(), Word::empty());
        assert!(ab().parse_word("abc").is_err());
    }
}
