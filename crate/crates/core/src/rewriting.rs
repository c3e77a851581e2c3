//! Weight-graded Knuth–Bendix completion for homogeneous presentations.
//!
//! Rules are oriented by the graded-lex order of the alphabet. Because every
//! non-zero relation is weight-balanced, resolving a critical pair of weight
//! `n` only ever creates rules of weight `n`. Pairs are therefore processed in
//! ascending weight, and a run stopped at weight `D` is still correct for all
//! words of weight at most `D`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Alphabet, Letter, Word, WordOrZero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: WordOrZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    /// Completion stopped with an unresolved critical pair above this weight.
    TruncatedAt(u64),
}

impl fmt::Display for CompletionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletionStatus::Complete => write!(f, "complete"),
            CompletionStatus::TruncatedAt(d) => write!(f, "truncated at degree {d}"),
        }
    }
}

/// Result of [`RewritingSystem::normal_form`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub value: WordOrZero,
    /// False when the system is truncated below the word's weight.
    pub certified: bool,
}

/// An interreduced rewriting system with its completion status.
#[derive(Debug, Clone)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    status: CompletionStatus,
    index: RuleIndex,
}

/// Rules bucketed by their last letter.
#[derive(Debug, Clone, Default)]
struct RuleIndex {
    by_last: Vec<Vec<usize>>,
}

impl RuleIndex {
    fn new(rules: &[Rule], letters: usize) -> Self {
        let mut by_last = vec![Vec::new(); letters];
        for (i, r) in rules.iter().enumerate() {
            let last = r.lhs.letters()[r.lhs.len() - 1];
            by_last[last.index()].push(i);
        }
        // Shorter heads first so the innermost match wins.
        for bucket in &mut by_last {
            bucket.sort_by_key(|&i| rules[i].lhs.len());
        }
        RuleIndex { by_last }
    }
}

/// Exhaustive leftmost-innermost rewriting.
///
/// Letters are shifted onto an irreducible prefix; after each shift only a
/// rule head ending at the new letter can apply.
fn reduce(rules: &[Rule], index: &RuleIndex, word: &Word) -> WordOrZero {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    let mut pending: Vec<Letter> = word.letters().iter().rev().copied().collect();
    'shift: while let Some(c) = pending.pop() {
        out.push(c);
        for &i in &index.by_last[c.index()] {
            let rule = &rules[i];
            if out.ends_with(rule.lhs.letters()) {
                match &rule.rhs {
                    WordOrZero::Zero => return WordOrZero::Zero,
                    WordOrZero::Word(r) => {
                        out.truncate(out.len() - rule.lhs.len());
                        pending.extend(r.letters().iter().rev());
                        continue 'shift;
                    }
                }
            }
        }
    }
    WordOrZero::Word(Word::new(out))
}

/// An equation waiting to be oriented, keyed by weight then arrival.
#[derive(Debug, PartialEq, Eq)]
struct Pending {
    weight: u64,
    seq: u64,
    lhs: WordOrZero,
    rhs: WordOrZero,
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight, self.seq).cmp(&(other.weight, other.seq))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Completion<'a> {
    alphabet: &'a Alphabet,
    rules: Vec<Rule>,
    index: RuleIndex,
    queue: BinaryHeap<Reverse<Pending>>,
    seq: u64,
}

impl<'a> Completion<'a> {
    fn push(&mut self, weight: u64, lhs: WordOrZero, rhs: WordOrZero) {
        self.seq += 1;
        self.queue.push(Reverse(Pending {
            weight,
            seq: self.seq,
            lhs,
            rhs,
        }));
    }

    fn reduce(&self, w: &WordOrZero) -> WordOrZero {
        match w {
            WordOrZero::Zero => WordOrZero::Zero,
            WordOrZero::Word(w) => reduce(&self.rules, &self.index, w),
        }
    }

    fn reindex(&mut self) {
        self.index = RuleIndex::new(&self.rules, self.alphabet.len());
    }

    /// Normal forms of both sides, or `None` if they already agree.
    fn resolve(&self, lhs: &WordOrZero, rhs: &WordOrZero) -> Option<Rule> {
        let (a, b) = (self.reduce(lhs), self.reduce(rhs));
        match (a, b) {
            (a, b) if a == b => None,
            (WordOrZero::Zero, WordOrZero::Word(u)) | (WordOrZero::Word(u), WordOrZero::Zero) => {
                Some(Rule {
                    lhs: u,
                    rhs: WordOrZero::Zero,
                })
            }
            (WordOrZero::Word(u), WordOrZero::Word(v)) => {
                let (big, small) = match self.alphabet.compare_graded_lex(&u, &v) {
                    Ordering::Greater => (u, v),
                    _ => (v, u),
                };
                Some(Rule {
                    lhs: big,
                    rhs: WordOrZero::Word(small),
                })
            }
            (WordOrZero::Zero, WordOrZero::Zero) => unreachable!(),
        }
    }

    fn add_rule(&mut self, rule: Rule) {
        // Rules whose head contains the new head go back to the queue.
        let mut kept = Vec::with_capacity(self.rules.len() + 1);
        for old in std::mem::take(&mut self.rules) {
            if old.lhs.contains(&rule.lhs) {
                let w = self.alphabet.weight(&old.lhs);
                self.push(w, WordOrZero::Word(old.lhs), old.rhs);
            } else {
                kept.push(old);
            }
        }
        kept.push(rule);
        self.rules = kept;
        self.reindex();
        for i in 0..self.rules.len() {
            if let WordOrZero::Word(r) = &self.rules[i].rhs {
                let nf = reduce(&self.rules, &self.index, r);
                self.rules[i].rhs = nf;
            }
        }
        let new = self.rules.len() - 1;
        for i in 0..self.rules.len() {
            for (w, a, b) in critical_pairs(&self.rules[new], &self.rules[i])
                .into_iter()
                .chain(critical_pairs(&self.rules[i], &self.rules[new]))
            {
                let weight = self.alphabet.weight(&w);
                self.push(weight, a, b);
            }
        }
    }
}

/// Proper overlaps of `r1`'s head suffix with `r2`'s head prefix, as
/// `(overlap word, r1-side result, r2-side result)`.
fn critical_pairs(r1: &Rule, r2: &Rule) -> Vec<(Word, WordOrZero, WordOrZero)> {
    let (l1, l2) = (r1.lhs.letters(), r2.lhs.letters());
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] != l2[..k] {
            continue;
        }
        let tail = Word::new(l2[k..].to_vec());
        let head = Word::new(l1[..l1.len() - k].to_vec());
        let overlap = r1.lhs.concat(&tail);
        let a = match &r1.rhs {
            WordOrZero::Zero => WordOrZero::Zero,
            WordOrZero::Word(r) => WordOrZero::Word(r.concat(&tail)),
        };
        let b = match &r2.rhs {
            WordOrZero::Zero => WordOrZero::Zero,
            WordOrZero::Word(r) => WordOrZero::Word(head.concat(r)),
        };
        out.push((overlap, a, b));
    }
    out
}

/// Default completion bound: four times the heaviest relation.
pub fn default_completion_degree(p: &Presentation, weights: &[u64]) -> u64 {
    4 * p.max_relation_weight(weights)
}

/// Completes `p` under the weights carried by `alphabet`.
///
/// Critical pairs above `max_degree` are still checked for joinability; the
/// first one that would create a new rule stops the run with
/// [`CompletionStatus::TruncatedAt`].
pub fn complete(p: &Presentation, alphabet: &Alphabet, max_degree: u64) -> RewritingSystem {
    let mut c = Completion {
        alphabet,
        rules: Vec::new(),
        index: RuleIndex::new(&[], alphabet.len()),
        queue: BinaryHeap::new(),
        seq: 0,
    };
    for rel in p.relations() {
        c.push(alphabet.weight(&rel.lhs), WordOrZero::Word(rel.lhs.clone()), rel.rhs.clone());
    }
    let mut status = CompletionStatus::Complete;
    while let Some(Reverse(item)) = c.queue.pop() {
        let Some(rule) = c.resolve(&item.lhs, &item.rhs) else {
            continue;
        };
        if item.weight > max_degree {
            status = CompletionStatus::TruncatedAt(max_degree);
            break;
        }
        c.add_rule(rule);
    }
    let mut rules = c.rules;
    rules.sort_by(|a, b| alphabet.compare_graded_lex(&a.lhs, &b.lhs));
    let index = RuleIndex::new(&rules, alphabet.len());
    RewritingSystem {
        alphabet: alphabet.clone(),
        rules,
        status,
        index,
    }
}

/// A critical pair whose two sides have different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceFailure {
    pub overlap: Word,
    pub left: WordOrZero,
    pub right: WordOrZero,
}

impl RewritingSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::Complete
    }

    /// Rewrites `w` to its irreducible form.
    pub fn reduce(&self, w: &Word) -> WordOrZero {
        reduce(&self.rules, &self.index, w)
    }

    pub fn normal_form(&self, w: &Word) -> NormalForm {
        let certified = match self.status {
            CompletionStatus::Complete => true,
            CompletionStatus::TruncatedAt(d) => self.alphabet.weight(w) <= d,
        };
        NormalForm {
            value: self.reduce(w),
            certified,
        }
    }

    /// Rule heads; a word is normal iff it contains none of them.
    pub fn obstruction_set(&self) -> Result<Vec<Word>> {
        match self.status {
            CompletionStatus::Complete => Ok(self.rules.iter().map(|r| r.lhs.clone()).collect()),
            CompletionStatus::TruncatedAt(d) => Err(Error::NotComplete(d)),
        }
    }

    /// Re-checks every critical pair and the interreduction invariant.
    pub fn verify_confluence(&self) -> std::result::Result<(), ConfluenceFailure> {
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1 != r2 && r1.lhs.contains(&r2.lhs) {
                    return Err(ConfluenceFailure {
                        overlap: r1.lhs.clone(),
                        left: r1.rhs.clone(),
                        right: WordOrZero::Word(r1.lhs.clone()),
                    });
                }
                for (overlap, a, b) in critical_pairs(r1, r2) {
                    let na = match &a {
                        WordOrZero::Zero => WordOrZero::Zero,
                        WordOrZero::Word(w) => self.reduce(w),
                    };
                    let nb = match &b {
                        WordOrZero::Zero => WordOrZero::Zero,
                        WordOrZero::Word(w) => self.reduce(w),
                    };
                    if na != nb {
                        return Err(ConfluenceFailure {
                            overlap,
                            left: na,
                            right: nb,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn format_rule(&self, rule: &Rule) -> String {
        let rhs = match &rule.rhs {
            WordOrZero::Zero => "0".to_string(),
            WordOrZero::Word(w) => self.alphabet.display_word(w),
        };
        format!("{} -> {}", self.alphabet.display_word(&rule.lhs), rhs)
    }
}
