//! Reading a sandwich decomposition off the normal-word automaton.
//!
//! When growth is at most linear, each accepted path visits at most one
//! cycle. A path that touches a cycle splits uniquely into an entry word
//! reaching the first cycle state `v`, some number of turns around the cycle
//! from `v`, a partial arc to the exit state `u`, and an acyclic tail.

use crate::automaton::{classify_growth, NormalWordAutomaton};
use crate::error::{Error, Result};
use crate::words::Word;

use super::{disjointify, Sandwich, SandwichDecomposition};

/// Disjoint decomposition of the accepted language. Fails with
/// [`Error::NotLinear`] when growth is quadratic or faster.
pub fn extract_decomposition(dfa: &NormalWordAutomaton) -> Result<SandwichDecomposition> {
    let class = classify_growth(dfa);
    if !class.is_at_most_linear() {
        return Err(Error::NotLinear(class.to_string()));
    }
    let mut out = SandwichDecomposition::default();
    if dfa.is_empty() {
        return Ok(out);
    }
    let comps = dfa.components();
    let on_cycle = |s: usize| comps.is_nontrivial(comps.component_of[s]);

    // Acyclic prefixes: paths from the start through off-cycle states.
    let mut entries: Vec<(Word, usize)> = Vec::new();
    let mut stack = vec![(0usize, Word::empty())];
    while let Some((s, w)) = stack.pop() {
        if on_cycle(s) {
            entries.push((w, s));
            continue;
        }
        for (l, t) in dfa.edges(s) {
            let mut next = w.clone();
            next.push(l);
            stack.push((t, next));
        }
        out.finite.insert(w);
    }

    let mut sandwiches = Vec::new();
    for (entry, v) in entries {
        let c = comps.component_of[v];
        let next_on_cycle = |s: usize| {
            dfa.edges(s)
                .find(|&(_, t)| comps.component_of[t] == c)
                .expect("cycle state has an internal edge")
        };
        // Cycle word read from v, and the arc prefix reaching each state.
        let mut arcs = vec![(v, Word::empty())];
        let mut cycle = Word::empty();
        let mut s = v;
        loop {
            let (l, t) = next_on_cycle(s);
            cycle.push(l);
            if t == v {
                break;
            }
            arcs.push((t, cycle.clone()));
            s = t;
        }
        for (u, arc) in arcs {
            for tail in tails(dfa, u, c) {
                sandwiches.push(Sandwich::new(entry.clone(), cycle.clone(), arc.concat(&tail)));
            }
        }
    }
    sandwiches.sort();

    // The pieces are disjoint by construction; refinement is a no-op check.
    let mut pieces: Vec<Sandwich> = sandwiches;
    pieces.extend(out.finite.iter().cloned().map(Sandwich::singleton));
    let refined = disjointify(&pieces);
    debug_assert_eq!(refined.sandwiches.len() + refined.finite.len(), pieces.len());
    let mut out = refined;
    out.normalize();
    Ok(out)
}

/// Words leaving `u` either not at all or through an edge out of component
/// `c`, then along acyclic states only.
fn tails(dfa: &NormalWordAutomaton, u: usize, c: usize) -> Vec<Word> {
    let comps = dfa.components();
    let mut out = vec![Word::empty()];
    let mut stack: Vec<(usize, Word)> = dfa
        .edges(u)
        .filter(|&(_, t)| comps.component_of[t] != c)
        .map(|(l, t)| (t, Word::new(vec![l])))
        .collect();
    while let Some((s, w)) = stack.pop() {
        for (l, t) in dfa.edges(s) {
            let mut next = w.clone();
            next.push(l);
            stack.push((t, next));
        }
        out.push(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::build_automaton;
    use crate::words::Alphabet;
    use std::collections::BTreeSet;

    fn xy() -> Alphabet {
        Alphabet::uniform(&["x", "y"]).unwrap()
    }

    fn w(s: &str) -> Word {
        xy().parse_word(s).unwrap()
    }

    fn dfa(obstructions: &[&str]) -> NormalWordAutomaton {
        let obs: Vec<Word> = obstructions.iter().map(|s| w(s)).collect();
        build_automaton(&obs, &xy())
    }

    fn check_exact(d: &SandwichDecomposition, a: &NormalWordAutomaton, n: u64) {
        let mut got = d.words_up_to_weight(a.alphabet(), n);
        got.sort();
        let mut dedup = got.clone();
        dedup.dedup();
        assert_eq!(got, dedup, "pieces overlap");
        assert_eq!(got, a.words_up_to(n));
    }

    #[test]
    fn two_rays() {
        let a = dfa(&["yx", "yy"]);
        let d = extract_decomposition(&a).unwrap();
        assert!(d.finite.is_empty());
        assert_eq!(
            d.sandwiches,
            vec![
                Sandwich::power(w("x")),
                Sandwich::new(w(""), w("x"), w("y")),
            ]
        );
        check_exact(&d, &a, 15);
    }

    #[test]
    fn monoid_with_y_powers_and_a_tail() {
        let a = dfa(&["xx", "xy"]);
        let d = extract_decomposition(&a).unwrap();
        assert_eq!(
            d.sandwiches,
            vec![Sandwich::power(w("y")), Sandwich::new(w(""), w("y"), w("x"))]
        );
        check_exact(&d, &a, 15);
    }

    #[test]
    fn unit_and_entry_prefix() {
        let a = dfa(&["yy", "yx", "xy"]);
        let d = extract_decomposition(&a).unwrap();
        assert_eq!(d.finite, BTreeSet::from([w(""), w("y")]));
        assert_eq!(d.sandwiches, vec![Sandwich::new(w(""), w("x"), w("x"))]);
        assert!(d.has_unit());
        check_exact(&d, &a, 15);
    }

    #[test]
    fn longer_cycle_with_exits() {
        // Alternating words: a two-state cycle with entries from both sides.
        let a = dfa(&["xx", "yy"]);
        let d = extract_decomposition(&a).unwrap();
        check_exact(&d, &a, 20);
    }

    #[test]
    fn finite_language() {
        let a = dfa(&["xx", "yy", "yx"]);
        let d = extract_decomposition(&a).unwrap();
        assert!(d.sandwiches.is_empty());
        assert_eq!(d.finite, BTreeSet::from([w(""), w("x"), w("y"), w("xy")]));
    }

    #[test]
    fn rejects_quadratic_growth() {
        let a = dfa(&["yx"]);
        assert!(matches!(
            extract_decomposition(&a),
            Err(Error::NotLinear(_))
        ));
    }
}
