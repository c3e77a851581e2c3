//! Fixtures shared by the benchmarks.

use linmon_core::{parse_presentation, Presentation, Sandwich, Word};

pub const TWO_SANDWICHES: &str = "gens: x y\nrels: xy = 0, xx = 0\n";
pub const COMMUTATIVE: &str = "gens: a b c\nrels: ba = ab, ca = ac, cb = bc\n";
pub const COLLAPSE: &str = "gens: a b c\nrels: ab = c, ba = c\n";
pub const BRAID: &str = "gens: a b\nrels: aba = bab\n";

pub fn presentation(text: &str) -> Presentation {
    parse_presentation(text).expect("fixture parses")
}

/// Deterministic overlapping sandwiches over two letters.
pub fn overlapping_sandwiches(count: usize) -> Vec<Sandwich> {
    let w = |bits: &[usize]| Word::from_indices(bits.iter().copied());
    (0..count)
        .map(|i| match i % 4 {
            0 => Sandwich::new(w(&[]), w(&[0]).pow(1 + i % 3), w(&[])),
            1 => Sandwich::new(w(&[0]), w(&[0, 1]), w(&[1])),
            2 => Sandwich::new(w(&[]), w(&[0, 1]), w(&[0, 1, 0, 1][..i % 4 + 1])),
            _ => Sandwich::new(w(&[0, 1][..i % 2 + 1]), w(&[1, 0]), w(&[])),
        })
        .collect()
}
