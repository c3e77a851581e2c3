//! Finite monoid presentations and their weight functions.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! gens: x y          # or with weights: x:2 y:1
//! rels: xy = 0, xx = 0
//! zero: true         # optional; adjoins a zero without zero relations
//! ```
//!
//! Sections may also be separated by `;` on a single line, and a `rels:`
//! section may continue over several lines. Single-character generator names
//! concatenate without separators; multi-character names are joined with `.`.

mod parse;
mod weights;

use std::fmt;

pub use parse::parse_presentation;
pub use weights::{infer_weights, validate_homogeneous, HomogeneityReport, Violation, WeightInference};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word, WordOrZero};

/// A defining relation `lhs = rhs`, where `rhs` may be the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: WordOrZero,
}

impl Relation {
    pub fn is_zero(&self) -> bool {
        self.rhs.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    declared_weights: Option<Vec<u64>>,
    relations: Vec<Relation>,
    has_zero: bool,
}

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        declared_weights: Option<Vec<u64>>,
        relations: Vec<Relation>,
        declares_zero: bool,
    ) -> Result<Self> {
        // Validates names (and weights, when present).
        let alphabet = match &declared_weights {
            Some(w) => Alphabet::new(generators.clone(), w.clone())?,
            None => Alphabet::uniform(&generators)?,
        };
        for rel in &relations {
            alphabet.check(&rel.lhs)?;
            if let WordOrZero::Word(r) = &rel.rhs {
                alphabet.check(r)?;
            }
            if rel.lhs.is_empty() {
                return Err(Error::Validation(
                    "relation with an empty left-hand side".into(),
                ));
            }
        }
        let has_zero = declares_zero || relations.iter().any(Relation::is_zero);
        Ok(Presentation {
            generators,
            declared_weights,
            relations,
            has_zero,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn declared_weights(&self) -> Option<&[u64]> {
        self.declared_weights.as_deref()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn has_zero(&self) -> bool {
        self.has_zero
    }

    /// Alphabet carrying the given weights.
    pub fn alphabet(&self, weights: &[u64]) -> Result<Alphabet> {
        Alphabet::new(self.generators.clone(), weights.to_vec())
    }

    /// Alphabet used for reading and printing words (weights irrelevant).
    pub fn naming_alphabet(&self) -> Alphabet {
        Alphabet::uniform(&self.generators).expect("validated at construction")
    }

    /// Largest weight of a relation side under `weights`.
    pub fn max_relation_weight(&self, weights: &[u64]) -> u64 {
        self.relations
            .iter()
            .map(|r| r.lhs.letters().iter().map(|l| weights[l.index()]).sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    /// The same monoid with generators listed in a new order.
    ///
    /// `order` must be a permutation of the generator names.
    pub fn reorder(&self, order: &[String]) -> Result<Presentation> {
        if order.len() != self.generators.len() {
            return Err(Error::Validation(format!(
                "generator order lists {} names, presentation has {}",
                order.len(),
                self.generators.len()
            )));
        }
        let mut old_to_new = vec![usize::MAX; self.generators.len()];
        for (new, name) in order.iter().enumerate() {
            let old = self
                .generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::Validation(format!("unknown generator {name:?} in order")))?;
            if old_to_new[old] != usize::MAX {
                return Err(Error::Validation(format!("generator {name:?} repeated in order")));
            }
            old_to_new[old] = new;
        }
        let map = |w: &Word| Word::from_indices(w.letters().iter().map(|l| old_to_new[l.index()]));
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                lhs: map(&r.lhs),
                rhs: match &r.rhs {
                    WordOrZero::Zero => WordOrZero::Zero,
                    WordOrZero::Word(w) => WordOrZero::Word(map(w)),
                },
            })
            .collect();
        let declared_weights = self.declared_weights.as_ref().map(|w| {
            let mut out = vec![0; w.len()];
            for (old, &new) in old_to_new.iter().enumerate() {
                out[new] = w[old];
            }
            out
        });
        Presentation::new(order.to_vec(), declared_weights, relations, self.has_zero)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.naming_alphabet();
        write!(f, "gens:")?;
        for (i, g) in self.generators.iter().enumerate() {
            match &self.declared_weights {
                Some(w) => write!(f, " {g}:{}", w[i])?,
                None => write!(f, " {g}")?,
            }
        }
        writeln!(f)?;
        write!(f, "rels:")?;
        for (i, rel) in self.relations.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            let rhs = match &rel.rhs {
                WordOrZero::Zero => "0".to_string(),
                WordOrZero::Word(w) => names.display_word(w),
            };
            write!(f, "{sep}{} = {rhs}", names.display_word(&rel.lhs))?;
        }
        writeln!(f)?;
        if self.has_zero && !self.relations.iter().any(Relation::is_zero) {
            writeln!(f, "zero: true")?;
        }
        Ok(())
    }
}
