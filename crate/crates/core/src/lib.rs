//! Analysis of finitely presented homogeneous monoids.
//!
//! The pipeline is: parse a presentation, infer a positive weight function
//! balancing its relations, complete it to a confluent rewriting system,
//! build the automaton of normal words, classify growth and, for at most
//! linear growth, split the monoid into a finite set and a disjoint union of
//! free sandwiches `a<w>b = { a w^n b : n >= 0 }`.

pub mod automaton;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod rewriting;
pub mod sandwich;
pub mod words;

pub use automaton::{build_automaton, classify_growth, generating_series, GeneratingSeries, GrowthClass, NormalWordAutomaton};
pub use error::{Error, Result};
pub use presentation::{infer_weights, parse_presentation, validate_homogeneous, Presentation, Relation, WeightInference};
pub use report::{analyze, resolve_weights, Analysis, AnalysisOptions, AnalysisReport, DecompositionReport};
pub use rewriting::{complete, CompletionStatus, RewritingSystem, Rule};
pub use sandwich::{
    check_monogenic_plus_finite, disjointify, extract_decomposition, gamma_bounds, intersect, subtract,
    GammaBounds, IntersectionResult, MonogenicCheck, Sandwich, SandwichDecomposition,
};
pub use words::{Alphabet, Letter, Word, WordOrZero};
