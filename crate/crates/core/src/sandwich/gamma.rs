//! Bounds on the least number of free sandwiches in a decomposition, and
//! the monogenic-plus-finite check for the case of one sandwich.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use crate::automaton::NormalWordAutomaton;
use crate::error::{Error, Result};
use crate::words::{primitive_root, Alphabet, Word};

use super::{intersect, Sandwich, SandwichDecomposition};

const COVER_NODE_BUDGET: usize = 1_000_000;
const MAX_MERGE_GROUP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// A decomposition with exactly `upper` infinite sandwiches.
    pub witness: SandwichDecomposition,
}

/// Upper bound from merging the pieces of `dec`; lower bound from covering
/// the eventual counting sequence of `dfa` by arithmetic progressions.
pub fn gamma_bounds(dec: &SandwichDecomposition, dfa: &NormalWordAutomaton) -> GammaBounds {
    let witness = merge(dec);
    let upper = witness.sandwiches.len();
    let lower = counting_lower_bound(dfa, upper);
    GammaBounds {
        lower,
        upper,
        exact: lower == upper,
        witness,
    }
}

/// `a · r^(start + step·n) · rest`, with `r` primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Progression {
    start: usize,
    step: usize,
}

type Key = (Word, Word, Word);

fn split(s: &Sandwich) -> (Key, Progression) {
    let c = s.canonical();
    let (root, step) = primitive_root(&c.w);
    let mut rest = c.b.clone();
    let mut start = 0;
    while rest.starts_with(&root) {
        rest = rest.slice(root.len(), rest.len());
        start += 1;
    }
    ((c.a, root, rest), Progression { start, step })
}

fn join((a, root, rest): &Key, p: Progression) -> Sandwich {
    Sandwich::new(a.clone(), root.pow(p.step), root.pow(p.start).concat(rest)).canonical()
}

/// A single progression equal to the union of `parts`, if there is one.
fn union_as_progression(parts: &[Progression]) -> Option<Progression> {
    let lcm = parts
        .iter()
        .fold(1usize, |l, p| num_integer::lcm(l, p.step));
    let top = parts.iter().map(|p| p.start).max()? + 2 * lcm;
    let member = |e: usize| {
        parts
            .iter()
            .any(|p| e >= p.start && (e - p.start).is_multiple_of(p.step))
    };
    let mut hits = (0..=top).filter(|&e| member(e));
    let start = hits.next()?;
    let step = hits.next()? - start;
    let candidate = Progression { start, step };
    (0..=top)
        .all(|e| member(e) == (e >= start && (e - start) % step == 0))
        .then_some(candidate)
}

fn merge(dec: &SandwichDecomposition) -> SandwichDecomposition {
    let mut finite = dec.finite.clone();
    let mut groups: BTreeMap<Key, Vec<Progression>> = BTreeMap::new();
    for s in &dec.sandwiches {
        let (k, p) = split(s);
        groups.entry(k).or_default().push(p);
    }
    for (key, progs) in groups.iter_mut() {
        loop {
            let mut changed = false;
            // Merge the largest subset whose union is one progression.
            if progs.len() > 1 && progs.len() <= MAX_MERGE_GROUP {
                let n = progs.len();
                let mut masks: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() > 1).collect();
                masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
                for m in masks {
                    let subset: Vec<Progression> =
                        (0..n).filter(|i| m >> i & 1 == 1).map(|i| progs[i]).collect();
                    if let Some(u) = union_as_progression(&subset) {
                        let mut rest: Vec<Progression> =
                            (0..n).filter(|i| m >> i & 1 == 0).map(|i| progs[i]).collect();
                        rest.push(u);
                        *progs = rest;
                        changed = true;
                        break;
                    }
                }
            }
            // Absorb finite words that extend a progression downwards.
            for p in progs.iter_mut() {
                while p.start >= p.step {
                    let (a, root, rest) = key;
                    let below = a.concat(&root.pow(p.start - p.step)).concat(rest);
                    if !finite.remove(&below) {
                        break;
                    }
                    p.start -= p.step;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    let mut out = SandwichDecomposition {
        finite,
        has_zero: dec.has_zero,
        sandwiches: groups
            .iter()
            .flat_map(|(k, ps)| ps.iter().map(move |&p| join(k, p)))
            .collect(),
    };
    out.normalize();
    out
}

/// Least number of weight progressions whose indicator functions sum to the
/// eventual counting sequence; never more than `upper`.
fn counting_lower_bound(dfa: &NormalWordAutomaton, upper: usize) -> usize {
    let comps = dfa.components();
    let alphabet = dfa.alphabet();
    // A sandwich's period word reads around one cycle, so its weight is a
    // multiple of the weight of that cycle's primitive root.
    let mut period = 0usize;
    let mut root_weights = Vec::new();
    for (c, members) in comps.members.iter().enumerate() {
        if !comps.is_nontrivial(c) {
            continue;
        }
        let mut cycle = Word::empty();
        let mut s = members[0];
        loop {
            let (l, t) = dfa
                .edges(s)
                .find(|&(_, t)| comps.component_of[t] == c)
                .expect("cycle state has an internal edge");
            cycle.push(l);
            s = t;
            if s == members[0] {
                break;
            }
        }
        let weight = alphabet.weight(&cycle) as usize;
        root_weights.push(alphabet.weight(&primitive_root(&cycle).0) as usize);
        period = if period == 0 {
            weight
        } else {
            num_integer::lcm(period, weight)
        };
    }
    if period == 0 {
        return 0;
    }
    let start = 3 * dfa.num_states() * alphabet.max_weight() as usize + 1;
    let counts = dfa.count_words((start + period - 1) as u64);
    let mut target = vec![0usize; period];
    for r in 0..period {
        let n = start + r;
        target[n % period] = counts[n].to_usize().expect("linear growth keeps counts small");
    }
    let floor = *target.iter().max().expect("period is positive");
    let candidates: Vec<(usize, usize)> = (1..=period)
        .filter(|g| period.is_multiple_of(*g) && root_weights.iter().any(|r| g % r == 0))
        .flat_map(|g| (0..g).map(move |r| (g, r)))
        .collect();
    let mut nodes = 0usize;
    for k in floor..upper {
        match cover(&mut target.clone(), &candidates, k, &mut nodes) {
            Some(true) => return k,
            Some(false) => {}
            None => return floor,
        }
    }
    upper.max(floor)
}

/// Whether `target` is a sum of exactly `k` progression indicators.
/// `None` when the node budget runs out.
fn cover(
    target: &mut [usize],
    candidates: &[(usize, usize)],
    k: usize,
    nodes: &mut usize,
) -> Option<bool> {
    *nodes += 1;
    if *nodes > COVER_NODE_BUDGET {
        return None;
    }
    let Some(pos) = target.iter().position(|&v| v > 0) else {
        return Some(k == 0);
    };
    if k == 0 || target.iter().any(|&v| v > k) {
        return Some(false);
    }
    for &(g, r) in candidates {
        if pos % g != r {
            continue;
        }
        let fits = (r..target.len()).step_by(g).all(|i| target[i] > 0);
        if !fits {
            continue;
        }
        for i in (r..target.len()).step_by(g) {
            target[i] -= 1;
        }
        let found = cover(target, candidates, k - 1, nodes);
        for i in (r..target.len()).step_by(g) {
            target[i] += 1;
        }
        if found != Some(false) {
            return found;
        }
    }
    Some(false)
}

/// Outcome of [`check_monogenic_plus_finite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonogenicCheck {
    /// The set is `<generator>` together with the finite `residual`.
    Witness {
        generator: Word,
        residual: BTreeSet<Word>,
    },
    Refuted(String),
}

/// For a decomposition with one infinite sandwich, finds a word `g` such
/// that the set is `<g>` plus finitely many other words.
pub fn check_monogenic_plus_finite(
    dec: &SandwichDecomposition,
    alphabet: &Alphabet,
) -> Result<MonogenicCheck> {
    let [s] = dec.sandwiches.as_slice() else {
        return Err(Error::NotMonogenicCandidate(dec.sandwiches.len()));
    };
    let (wa, wb, ww) = (
        alphabet.weight(&s.a),
        alphabet.weight(&s.b),
        alphabet.weight(&s.w),
    );
    if (wa + wb) % ww != 0 {
        return Ok(MonogenicCheck::Refuted(format!(
            "weight {} of the ends is not a multiple of the period weight {ww}",
            wa + wb
        )));
    }
    for k in 0..s.w.len() {
        let g = s.w.rotate(k);
        let r = intersect(s, &Sandwich::power(g.clone()));
        let Some(f) = r.family else { continue };
        if f.p != 1 || f.q != 1 {
            continue;
        }
        let mut rest: BTreeSet<Word> = dec.finite.clone();
        rest.extend((0..f.n0).map(|n| s.member(n)));
        if (0..f.m0).all(|m| rest.remove(&g.pow(m))) {
            return Ok(MonogenicCheck::Witness {
                generator: g,
                residual: rest,
            });
        }
    }
    Ok(MonogenicCheck::Refuted(format!(
        "no conjugate of {} generates the infinite part",
        alphabet.display_word(&s.w)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::build_automaton;
    use crate::sandwich::extract_decomposition;

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

    fn bounds(obstructions: &[&str]) -> GammaBounds {
        let a = dfa(obstructions);
        gamma_bounds(&extract_decomposition(&a).unwrap(), &a)
    }

    #[test]
    fn two_sandwiches() {
        let g = bounds(&["xx", "xy"]);
        assert_eq!((g.lower, g.upper, g.exact), (2, 2, true));
    }

    #[test]
    fn free_monogenic() {
        let g = bounds(&["y"]);
        assert_eq!((g.lower, g.upper, g.exact), (1, 1, true));
    }

    #[test]
    fn finite_monoid() {
        let g = bounds(&["xx", "xy", "yx", "yy"]);
        assert_eq!((g.lower, g.upper, g.exact), (0, 0, true));
        assert_eq!(g.witness.finite.len(), 3);
    }

    #[test]
    fn unit_absorbed_into_powers() {
        let g = bounds(&["yy", "yx", "xy"]);
        assert_eq!((g.lower, g.upper), (1, 1));
        assert_eq!(g.witness.sandwiches, vec![Sandwich::power(w("x"))]);
        assert_eq!(g.witness.finite, BTreeSet::from([w("y")]));
    }

    #[test]
    fn residue_classes_merge() {
        let dec = SandwichDecomposition {
            finite: BTreeSet::from([w("")]),
            has_zero: false,
            sandwiches: vec![
                Sandwich::new(w("xx"), w("xxx"), w("")),
                Sandwich::new(w("x"), w("xxx"), w("")),
                Sandwich::new(w("xxx"), w("xxx"), w("")),
            ],
        };
        let a = dfa(&["y"]);
        let g = gamma_bounds(&dec, &a);
        assert_eq!(g.witness.sandwiches, vec![Sandwich::power(w("x"))]);
        assert!(g.witness.finite.is_empty());
        assert!(g.exact);
    }

    #[test]
    fn alternating_words_bounds_hold() {
        let a = dfa(&["xx", "yy"]);
        let g = gamma_bounds(&extract_decomposition(&a).unwrap(), &a);
        assert!(g.lower <= g.upper);
        // Two words per length, but every period word has length 2.
        assert_eq!((g.lower, g.upper), (4, 4));
        let mut got = g.witness.words_up_to_weight(&xy(), 16);
        got.sort();
        assert_eq!(got, a.words_up_to(16));
    }

    #[test]
    fn progression_cover() {
        let mut nodes = 0;
        let cands = vec![(1, 0), (2, 0), (2, 1)];
        assert_eq!(cover(&mut [2, 1], &cands, 2, &mut nodes), Some(true));
        assert_eq!(cover(&mut [2, 1], &cands, 1, &mut nodes), Some(false));
        assert_eq!(cover(&mut [2, 0], &cands, 2, &mut nodes), Some(true));
    }

    #[test]
    fn monogenic_witnesses() {
        let a = dfa(&["y"]);
        let d = extract_decomposition(&a).unwrap();
        assert_eq!(
            check_monogenic_plus_finite(&d, &xy()).unwrap(),
            MonogenicCheck::Witness {
                generator: w("x"),
                residual: BTreeSet::new()
            }
        );
        let g = bounds(&["yy", "yx", "xy"]);
        assert_eq!(
            check_monogenic_plus_finite(&g.witness, &xy()).unwrap(),
            MonogenicCheck::Witness {
                generator: w("x"),
                residual: BTreeSet::from([w("y")])
            }
        );
        // Undecomposed form works too: x<x> plus {1, y}.
        let a = dfa(&["yy", "yx", "xy"]);
        let d = extract_decomposition(&a).unwrap();
        assert!(matches!(
            check_monogenic_plus_finite(&d, &xy()).unwrap(),
            MonogenicCheck::Witness { .. }
        ));
    }

    #[test]
    fn monogenic_contract_and_refutation() {
        let a = dfa(&["xx", "xy"]);
        let d = extract_decomposition(&a).unwrap();
        assert!(matches!(
            check_monogenic_plus_finite(&d, &xy()),
            Err(Error::NotMonogenicCandidate(2))
        ));
        let odd = SandwichDecomposition {
            finite: BTreeSet::new(),
            has_zero: false,
            sandwiches: vec![Sandwich::new(w("y"), w("xx"), w(""))],
        };
        assert!(matches!(
            check_monogenic_plus_finite(&odd, &xy()).unwrap(),
            MonogenicCheck::Refuted(_)
        ));
    }
}
