//! Brute-force congruence enumeration, degree by degree.
//!
//! Homogeneous relations preserve weight, so the words of a fixed weight form
//! a closed world: the congruence classes of weight `n` are the connected
//! components of the graph whose edges replace one relation side by the
//! other. Nothing here uses the rewriting machinery; it is the ground truth
//! the rest of the crate is checked against.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Alphabet, Word, WordOrZero};

pub const DEFAULT_WORD_BUDGET: usize = 2_000_000;

/// Congruence classes of one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClasses {
    pub degree: u64,
    /// Non-zero classes, each sorted, ordered by their least word.
    pub classes: Vec<Vec<Word>>,
    /// Words equal to zero in the monoid, if any.
    pub zero_class: Option<Vec<Word>>,
}

impl DegreeClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCensus {
    pub degrees: Vec<DegreeClasses>,
}

/// Words of one degree, with their union-find state.
struct Layer {
    index: HashMap<Word, usize>,
    words: Vec<Word>,
    parent: Vec<usize>,
    zero: Vec<bool>,
}

impl Layer {
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Whether `word` (which must live in this layer) is zero.
    fn is_zero(&self, word: &Word) -> bool {
        self.zero[self.index[word]]
    }
}

/// Enumerates the congruence classes of every weight up to `max_degree`.
///
/// `budget` caps the total number of words generated across all degrees.
pub fn enumerate_census(
    p: &Presentation,
    weights: &[u64],
    max_degree: u64,
    budget: usize,
) -> Result<DegreeCensus> {
    let alphabet = p.alphabet(weights)?;
    let mut edges: Vec<(&Word, &Word)> = Vec::new();
    let mut zero_heads: Vec<&Word> = Vec::new();
    for rel in p.relations() {
        match &rel.rhs {
            WordOrZero::Zero => zero_heads.push(&rel.lhs),
            WordOrZero::Word(r) => {
                debug_assert_eq!(alphabet.weight(&rel.lhs), alphabet.weight(r));
                edges.push((&rel.lhs, r));
                edges.push((r, &rel.lhs));
            }
        }
    }

    let mut layers: Vec<Layer> = Vec::new();
    let mut total = 0usize;
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let words = words_of_weight(&alphabet, &layers, n);
        total += words.len();
        if total > budget {
            return Err(Error::BudgetExceeded { degree: n, budget });
        }
        let index: HashMap<Word, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut layer = Layer {
            parent: (0..words.len()).collect(),
            zero: vec![false; words.len()],
            index,
            words,
        };

        for i in 0..layer.words.len() {
            let word = layer.words[i].clone();
            for &(from, to) in &edges {
                let mut start = 0;
                while let Some(pos) = find_from(&word, from, start) {
                    let replaced = splice(&word, pos, from.len(), to);
                    let j = layer.index[&replaced];
                    layer.union(i, j);
                    start = pos + 1;
                }
            }
        }

        // A word is zero if it is a zero-relation head, or if dropping its
        // first or last letter leaves a word already known to be zero.
        for i in 0..layer.words.len() {
            let word = &layer.words[i];
            let mut zero = zero_heads.contains(&word);
            if !zero && !word.is_empty() {
                let first = word.letters()[0];
                let last = word.letters()[word.len() - 1];
                let tail = word.slice(1, word.len());
                let init = word.slice(0, word.len() - 1);
                zero = layers[(n - alphabet.letter_weight(first)) as usize].is_zero(&tail)
                    || layers[(n - alphabet.letter_weight(last)) as usize].is_zero(&init);
            }
            layer.zero[i] = zero;
        }
        let mut class_zero = vec![false; layer.words.len()];
        for i in 0..layer.words.len() {
            let r = layer.find(i);
            class_zero[r] |= layer.zero[i];
        }
        for i in 0..layer.words.len() {
            let r = layer.find(i);
            layer.zero[i] = class_zero[r];
        }

        let mut groups: HashMap<usize, Vec<Word>> = HashMap::new();
        let mut zero_words = Vec::new();
        for i in 0..layer.words.len() {
            if layer.zero[i] {
                zero_words.push(layer.words[i].clone());
            } else {
                let r = layer.find(i);
                groups.entry(r).or_default().push(layer.words[i].clone());
            }
        }
        let mut classes: Vec<Vec<Word>> = groups
            .into_values()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        classes.sort();
        zero_words.sort();
        out.push(DegreeClasses {
            degree: n,
            classes,
            zero_class: (!zero_words.is_empty()).then_some(zero_words),
        });
        layers.push(layer);
    }
    Ok(DegreeCensus { degrees: out })
}

/// Number of non-zero classes per degree, `c_0 ..= c_N`.
pub fn census_counts(census: &DegreeCensus) -> Vec<u64> {
    census.degrees.iter().map(|d| d.count() as u64).collect()
}

fn words_of_weight(alphabet: &Alphabet, layers: &[Layer], n: u64) -> Vec<Word> {
    if n == 0 {
        return vec![Word::empty()];
    }
    let mut out = Vec::new();
    for letter in alphabet.letters() {
        let d = alphabet.letter_weight(letter);
        if d <= n {
            for w in &layers[(n - d) as usize].words {
                let mut v = w.clone();
                v.push(letter);
                out.push(v);
            }
        }
    }
    out
}

fn find_from(word: &Word, factor: &Word, start: usize) -> Option<usize> {
    let (w, f) = (word.letters(), factor.letters());
    if f.len() > w.len() {
        return None;
    }
    (start..=w.len() - f.len()).find(|&i| &w[i..i + f.len()] == f)
}

fn splice(word: &Word, pos: usize, len: usize, with: &Word) -> Word {
    let w = word.letters();
    w[..pos]
        .iter()
        .chain(with.letters())
        .chain(&w[pos + len..])
        .copied()
        .collect()
}
