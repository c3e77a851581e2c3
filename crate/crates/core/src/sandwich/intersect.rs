//! Intersection of two sandwiches in a free monoid.
//!
//! Write `w = r^i` and `w' = r'^j` with `r`, `r'` primitive. If the roots are
//! not conjugate the intersection is finite, and any common word is short:
//! otherwise the periodic middles would share a factor of length
//! `|w| + |w'|`, forcing conjugate roots.
//!
//! If the roots are conjugate (common length `p`), work with root exponents
//! `e = i·n`, `f = j·m`. The length equation fixes `e - f`. Once the two
//! periodic zones of `a r^e b` and `a' r'^f b'` overlap by at least `p`,
//! inserting or deleting one period inside the overlap acts on both sides
//! alike, so from that point on either every exponent pair on the diagonal
//! is a solution or none is. One word comparison decides which, and the
//! exponents below that point are scanned directly.

use crate::words::{conjugacy_offset, primitive_root};

use super::algebra::IndexSet;
use super::Sandwich;

/// Index pairs `(n0 + k·p, m0 + k·q)` for all `k >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithmeticFamily {
    pub n0: usize,
    pub m0: usize,
    pub p: usize,
    pub q: usize,
}

/// All `(n, m)` with `s1.member(n) == s2.member(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntersectionResult {
    /// Isolated solutions, sorted, none of them in `family`.
    pub sporadic: Vec<(usize, usize)>,
    pub family: Option<ArithmeticFamily>,
}

impl IntersectionResult {
    pub fn is_empty(&self) -> bool {
        self.sporadic.is_empty() && self.family.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.family.is_none()
    }

    pub fn contains(&self, n: usize, m: usize) -> bool {
        self.sporadic.contains(&(n, m))
            || self.family.is_some_and(|f| {
                n >= f.n0 && m >= f.m0 && (n - f.n0).is_multiple_of(f.p) && (n - f.n0) / f.p * f.q == m - f.m0
            })
    }

    /// The solution indices of the first sandwich.
    pub fn first_indices(&self) -> IndexSet {
        IndexSet {
            points: self.sporadic.iter().map(|&(n, _)| n).collect(),
            progression: self.family.map(|f| (f.n0, f.p)),
        }
    }

    /// The solution indices of the second sandwich.
    pub fn second_indices(&self) -> IndexSet {
        IndexSet {
            points: self.sporadic.iter().map(|&(_, m)| m).collect(),
            progression: self.family.map(|f| (f.m0, f.q)),
        }
    }

    fn normalize(mut self) -> Self {
        self.sporadic.sort_unstable();
        self.sporadic.dedup();
        if let Some(f) = &mut self.family {
            // Absorb sporadic points that continue the family downwards.
            while f.n0 >= f.p && f.m0 >= f.q {
                let prev = (f.n0 - f.p, f.m0 - f.q);
                match self.sporadic.iter().position(|&s| s == prev) {
                    Some(i) => {
                        self.sporadic.remove(i);
                        f.n0 = prev.0;
                        f.m0 = prev.1;
                    }
                    None => break,
                }
            }
        }
        self
    }
}

pub fn intersect(s1: &Sandwich, s2: &Sandwich) -> IntersectionResult {
    if s1.is_singleton() {
        let sporadic = s2.index_of(&s1.member(0)).map(|m| (0, m)).into_iter().collect();
        return IntersectionResult { sporadic, family: None };
    }
    if s2.is_singleton() {
        let sporadic = s1.index_of(&s2.member(0)).map(|n| (n, 0)).into_iter().collect();
        return IntersectionResult { sporadic, family: None };
    }
    let (r1, i) = primitive_root(&s1.w);
    let (r2, j) = primitive_root(&s2.w);
    if r1.len() != r2.len() || conjugacy_offset(&r1, &r2).is_none() {
        let bound = (s2.a.len() + s2.b.len() + s1.w.len() + s2.w.len()) / s1.w.len() + 1;
        let sporadic = (0..=bound)
            .filter_map(|n| s2.index_of(&s1.member(n)).map(|m| (n, m)))
            .collect();
        return IntersectionResult { sporadic, family: None }.normalize();
    }

    let p = r1.len() as i64;
    let (a1, b1) = (s1.a.len() as i64, s1.b.len() as i64);
    let (a2, b2) = (s2.a.len() as i64, s2.b.len() as i64);
    let delta = (a2 + b2) - (a1 + b1);
    if delta % p != 0 {
        return IntersectionResult::default();
    }
    // e - f along every solution.
    let diag = delta / p;
    let overlap = |e: i64| (a1 + e * p).min(a2 + (e - diag) * p) - a1.max(a2);
    let mut e0 = diag.max(0);
    while overlap(e0) < p {
        e0 += 1;
    }
    let f0 = e0 - diag;
    let zone = |a: &crate::words::Word, r: &crate::words::Word, e: i64, b: &crate::words::Word| {
        a.concat(&r.pow(e as usize)).concat(b)
    };
    let tail_matches = zone(&s1.a, &r1, e0, &s1.b) == zone(&s2.a, &r2, f0, &s2.b);

    let (i, j) = (i as i64, j as i64);
    let mut sporadic = Vec::new();
    let mut n = 0i64;
    while i * n < e0 {
        if let Some(m) = s2.index_of(&s1.member(n as usize)) {
            sporadic.push((n as usize, m));
        }
        n += 1;
    }

    let mut family = None;
    if tail_matches {
        let l = num_integer::lcm(i, j);
        if let Some(k) = (0..l).find(|k| (e0 + k) % i == 0 && (f0 + k) % j == 0) {
            family = Some(ArithmeticFamily {
                n0: ((e0 + k) / i) as usize,
                m0: ((f0 + k) / j) as usize,
                p: (l / i) as usize,
                q: (l / j) as usize,
            });
        }
    }
    IntersectionResult { sporadic, family }.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Word};
    use std::collections::BTreeSet;

    fn ab() -> Alphabet {
        Alphabet::uniform(&["a", "b"]).unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn sw(a: &str, x: &str, b: &str) -> Sandwich {
        Sandwich::new(w(a), w(x), w(b))
    }

    /// Brute-force intersection of member sets up to `len`.
    fn brute(s1: &Sandwich, s2: &Sandwich, len: usize) -> BTreeSet<Word> {
        let one: BTreeSet<Word> = s1.members_up_to_len(len).into_iter().collect();
        s2.members_up_to_len(len)
            .into_iter()
            .filter(|x| one.contains(x))
            .collect()
    }

    fn realized(s1: &Sandwich, r: &IntersectionResult, len: usize) -> BTreeSet<Word> {
        s1.members_up_to_len(len)
            .into_iter()
            .enumerate()
            .filter(|(n, _)| r.first_indices().contains(*n))
            .map(|(_, x)| x)
            .collect()
    }

    #[test]
    fn conjugate_roots_shifted() {
        let r = intersect(&sw("", "ab", ""), &sw("a", "ba", "b"));
        assert_eq!(r.sporadic, vec![]);
        assert_eq!(
            r.family,
            Some(ArithmeticFamily { n0: 1, m0: 0, p: 1, q: 1 })
        );
        assert_eq!(
            realized(&sw("", "ab", ""), &r, 40),
            brute(&sw("", "ab", ""), &sw("a", "ba", "b"), 40)
        );
    }

    #[test]
    fn disjoint_tails() {
        let x = Alphabet::uniform(&["x", "y"]).unwrap();
        let s1 = Sandwich::power(x.parse_word("y").unwrap());
        let s2 = Sandwich::new(Word::empty(), x.parse_word("y").unwrap(), x.parse_word("x").unwrap());
        assert!(intersect(&s1, &s2).is_empty());
    }

    #[test]
    fn powers_of_a_common_root() {
        let r = intersect(&sw("", "aa", ""), &sw("", "aaa", ""));
        assert_eq!(r.sporadic, vec![]);
        assert_eq!(
            r.family,
            Some(ArithmeticFamily { n0: 0, m0: 0, p: 3, q: 2 })
        );
        let got = realized(&sw("", "aa", ""), &r, 60);
        let want: BTreeSet<Word> = (0..=10).map(|k| w("a").pow(6 * k)).collect();
        assert_eq!(got, want);
        assert_eq!(got, brute(&sw("", "aa", ""), &sw("", "aaa", ""), 60));
    }

    #[test]
    fn sporadic_solutions_beside_no_family() {
        // (ab)^n vs ab(ba)^m: only "ab" is common.
        let r = intersect(&sw("", "ab", ""), &sw("ab", "ba", ""));
        assert_eq!(r.sporadic, vec![(1, 0)]);
        assert!(r.family.is_none());
    }

    #[test]
    fn singletons() {
        let r = intersect(&Sandwich::singleton(w("abab")), &sw("a", "ba", "b"));
        assert_eq!(r.sporadic, vec![(0, 1)]);
        let r = intersect(&sw("a", "ba", "b"), &Sandwich::singleton(w("ab")));
        assert_eq!(r.sporadic, vec![(0, 0)]);
        assert!(intersect(&Sandwich::singleton(w("b")), &Sandwich::singleton(w("a"))).is_empty());
    }

    /// Exhaustive agreement with enumeration on small sandwiches.
    #[test]
    fn matches_enumeration_exhaustively() {
        let mut small: Vec<Word> = vec![Word::empty()];
        for _ in 0..2 {
            for x in small.clone() {
                for l in ab().letters() {
                    let mut y = x.clone();
                    y.push(l);
                    small.push(y);
                }
            }
            small.sort();
            small.dedup();
        }
        let cores: Vec<Word> = ["a", "b", "ab", "ba", "aab", "aa", "abab", "bab"]
            .iter()
            .map(|s| w(s))
            .collect();
        let mut sandwiches = Vec::new();
        for a in &small {
            for c in &cores {
                for b in small.iter().step_by(2) {
                    sandwiches.push(Sandwich::new(a.clone(), c.clone(), b.clone()));
                }
            }
        }
        for s1 in sandwiches.iter().step_by(3) {
            for s2 in sandwiches.iter().step_by(5) {
                let r = intersect(s1, s2);
                let want = brute(s1, s2, 40);
                assert_eq!(realized(s1, &r, 40), want, "{s1:?} {s2:?}");
                for &(n, m) in &r.sporadic {
                    assert_eq!(s1.member(n), s2.member(m));
                }
                if let Some(f) = r.family {
                    for k in 0..5 {
                        assert_eq!(s1.member(f.n0 + k * f.p), s2.member(f.m0 + k * f.q));
                    }
                }
            }
        }
    }
}
