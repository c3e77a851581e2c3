//! Set difference and disjoint refinement for sandwiches.

use std::collections::BTreeSet;

use super::{intersect, Sandwich, SandwichDecomposition};

/// A set of sandwich indices: finitely many points plus at most one
/// arithmetic progression `start + k·step`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexSet {
    pub points: BTreeSet<usize>,
    pub progression: Option<(usize, usize)>,
}

impl IndexSet {
    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        IndexSet {
            points: points.into_iter().collect(),
            progression: None,
        }
    }

    pub fn contains(&self, n: usize) -> bool {
        self.points.contains(&n)
            || self
                .progression
                .is_some_and(|(start, step)| n >= start && (n - start).is_multiple_of(step))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let progression = match (self.progression, other.progression) {
            (Some(_), Some(_)) => panic!("union of two progressions is not an index set"),
            (p, None) | (None, p) => p,
        };
        IndexSet {
            points: self.points.union(&other.points).copied().collect(),
            progression,
        }
    }
}

/// `s` with the members at `removed` taken out, as a finite part and
/// residue-class sandwiches.
pub fn subtract(s: &Sandwich, removed: &IndexSet) -> SandwichDecomposition {
    let mut out = SandwichDecomposition::default();
    if s.is_singleton() {
        if !removed.contains(0) {
            out.finite.insert(s.member(0));
        }
        return out;
    }
    let (start, step) = removed.progression.unwrap_or((0, 1));
    let threshold = removed
        .points
        .iter()
        .next_back()
        .map_or(0, |&p| p + 1)
        .max(if removed.progression.is_some() { start } else { 0 });
    for n in 0..threshold {
        if !removed.contains(n) {
            out.finite.insert(s.member(n));
        }
    }
    for c in threshold..threshold + step {
        if !removed.contains(c) {
            out.sandwiches.push(Sandwich::new(
                s.a.concat(&s.w.pow(c)),
                s.w.pow(step),
                s.b.clone(),
            ));
        }
    }
    out
}

fn remove(piece: &Sandwich, removed: &IndexSet) -> Vec<Sandwich> {
    if removed.points.is_empty() && removed.progression.is_none() {
        return vec![piece.clone()];
    }
    subtract(piece, removed).pieces()
}

/// Refines a list of possibly overlapping sandwiches (singletons allowed)
/// into a disjoint decomposition of their union. Earlier pieces are kept
/// whole; later ones lose whatever is already covered.
pub fn disjointify(pieces: &[Sandwich]) -> SandwichDecomposition {
    let mut out = SandwichDecomposition::default();
    for s in pieces {
        let mut fragments = vec![s.clone()];
        let covered: Vec<Sandwich> = out.pieces();
        for placed in &covered {
            fragments = fragments
                .iter()
                .flat_map(|f| {
                    let r = intersect(f, placed);
                    if r.is_empty() {
                        vec![f.clone()]
                    } else {
                        remove(f, &r.first_indices())
                    }
                })
                .collect();
        }
        for f in fragments {
            if f.is_singleton() {
                out.finite.insert(f.member(0));
            } else {
                out.sandwiches.push(f);
            }
        }
    }
    out
}
