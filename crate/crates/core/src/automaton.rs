//! The deterministic automaton of normal words and what can be read off it:
//! growth class, per-weight counts and the rational generating series.
//!
//! Normal words of a complete system are exactly the words avoiding every
//! rule head as a factor. The automaton is the Aho–Corasick machine of the
//! obstruction set with every state that has matched an obstruction removed.
//! The language is factor-closed, so every surviving state accepts.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::poly::{determinant, Poly};
use crate::words::{Alphabet, Letter, Word};

/// A live state: the longest obstruction prefix that is a suffix of the input
/// read so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub label: Word,
    pub transitions: Vec<Option<usize>>,
}

/// Trim automaton of the words avoiding a finite set of factors.
///
/// State `0` is initial; states are numbered breadth-first, letters tried in
/// alphabet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalWordAutomaton {
    alphabet: Alphabet,
    states: Vec<State>,
}

/// Builds the automaton of words avoiding every word in `obstructions`.
pub fn build_automaton(obstructions: &[Word], alphabet: &Alphabet) -> NormalWordAutomaton {
    assert!(
        obstructions.iter().all(|w| !w.is_empty()),
        "obstructions must be nonempty words"
    );
    let k = alphabet.len();
    // Trie of obstructions.
    let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut labels: Vec<Word> = vec![Word::empty()];
    let mut terminal = vec![false];
    for w in obstructions {
        let mut node = 0;
        for &l in w.letters() {
            node = match children[node][l.index()] {
                Some(c) => c,
                None => {
                    children.push(vec![None; k]);
                    let mut label = labels[node].clone();
                    label.push(l);
                    labels.push(label);
                    terminal.push(false);
                    let c = children.len() - 1;
                    children[node][l.index()] = Some(c);
                    c
                }
            };
        }
        terminal[node] = true;
    }

    // Breadth-first failure links and the completed transition function.
    let n = children.len();
    let mut fail = vec![0usize; n];
    let mut dead = terminal.clone();
    let mut delta = vec![vec![0usize; k]; n];
    let mut queue = VecDeque::new();
    for c in 0..k {
        match children[0][c] {
            Some(child) => {
                delta[0][c] = child;
                queue.push_back(child);
            }
            None => delta[0][c] = 0,
        }
    }
    while let Some(u) = queue.pop_front() {
        dead[u] |= dead[fail[u]];
        for c in 0..k {
            match children[u][c] {
                Some(child) => {
                    fail[child] = delta[fail[u]][c];
                    delta[u][c] = child;
                    queue.push_back(child);
                }
                None => delta[u][c] = delta[fail[u]][c],
            }
        }
    }

    // Keep live states reachable from the root, numbered breadth-first.
    let mut number = vec![usize::MAX; n];
    let mut order = Vec::new();
    if !dead[0] {
        number[0] = 0;
        order.push(0);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for c in 0..k {
                let v = delta[u][c];
                if !dead[v] && number[v] == usize::MAX {
                    number[v] = order.len();
                    order.push(v);
                }
            }
            i += 1;
        }
    }
    let states = order
        .iter()
        .map(|&u| State {
            label: labels[u].clone(),
            transitions: (0..k)
                .map(|c| {
                    let v = delta[u][c];
                    (!dead[v]).then_some(number[v])
                })
                .collect(),
        })
        .collect();
    NormalWordAutomaton {
        alphabet: alphabet.clone(),
        states,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GrowthClass {
    Finite,
    Polynomial(u32),
    Exponential,
}

impl GrowthClass {
    /// Finite or linear: the classes that admit a sandwich decomposition.
    pub fn is_at_most_linear(self) -> bool {
        matches!(self, GrowthClass::Finite | GrowthClass::Polynomial(1))
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Finite => write!(f, "finite"),
            GrowthClass::Polynomial(k) => write!(f, "polynomial:{k}"),
            GrowthClass::Exponential => write!(f, "exponential"),
        }
    }
}

impl std::str::FromStr for GrowthClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "finite" => Ok(GrowthClass::Finite),
            "exponential" => Ok(GrowthClass::Exponential),
            _ => s
                .strip_prefix("polynomial:")
                .and_then(|k| k.parse().ok())
                .map(GrowthClass::Polynomial)
                .ok_or_else(|| format!("unknown growth class {s:?}")),
        }
    }
}

/// Strongly connected components of the transition graph.
#[derive(Debug, Clone)]
pub struct Components {
    /// Component index of each state. Components are numbered in reverse
    /// topological order (sinks first).
    pub component_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// Number of transitions inside each component.
    pub internal_edges: Vec<usize>,
}

impl Components {
    /// A component carrying at least one cycle.
    pub fn is_nontrivial(&self, c: usize) -> bool {
        self.internal_edges[c] > 0
    }

    /// A nontrivial component that is one simple cycle.
    pub fn is_simple_cycle(&self, c: usize) -> bool {
        self.internal_edges[c] == self.members[c].len()
    }
}

impl NormalWordAutomaton {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// True when no word (not even the empty one) is accepted.
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.states[state].transitions[letter.index()]
    }

    /// State reached on `word` from the initial state.
    pub fn run(&self, word: &Word) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        word.letters()
            .iter()
            .try_fold(0, |s, &l| self.step(s, l))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.run(word).is_some()
    }

    /// Outgoing transitions of `state` as `(letter, target)`.
    pub fn edges(&self, state: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.states[state]
            .transitions
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|t| (Letter(i as u16), t)))
    }

    /// Tarjan's algorithm.
    pub fn components(&self) -> Components {
        let n = self.states.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut component_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut counter = 0;

        // Explicit call stack of (state, next edge position).
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut calls: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
                let trans = &self.states[v].transitions;
                if *pos < trans.len() {
                    let t = trans[*pos];
                    *pos += 1;
                    if let Some(w) = t {
                        if index[w] == usize::MAX {
                            index[w] = counter;
                            low[w] = counter;
                            counter += 1;
                            stack.push(w);
                            on_stack[w] = true;
                            calls.push((w, 0));
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    continue;
                }
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let c = members.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        component_of[w] = c;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    members.push(comp);
                }
            }
        }
        let mut internal_edges = vec![0; members.len()];
        for s in 0..n {
            for (_, t) in self.edges(s) {
                if component_of[s] == component_of[t] {
                    internal_edges[component_of[s]] += 1;
                }
            }
        }
        Components {
            component_of,
            members,
            internal_edges,
        }
    }

    /// Exact number of accepted words of each weight `0..=max_degree`.
    pub fn count_words(&self, max_degree: u64) -> Vec<BigUint> {
        let n = max_degree as usize;
        let mut table = vec![vec![BigUint::zero(); self.states.len()]; n + 1];
        if self.is_empty() {
            return vec![BigUint::zero(); n + 1];
        }
        table[0][0] = BigUint::from(1u8);
        for deg in 0..=n {
            for s in 0..self.states.len() {
                if table[deg][s].is_zero() {
                    continue;
                }
                let here = table[deg][s].clone();
                for (l, t) in self.edges(s) {
                    let next = deg + self.alphabet.letter_weight(l) as usize;
                    if next <= n {
                        table[next][t] += &here;
                    }
                }
            }
        }
        table.into_iter().map(|row| row.into_iter().sum()).collect()
    }

    /// Accepted words of weight at most `max_degree`, sorted shortlex.
    pub fn words_up_to(&self, max_degree: u64) -> Vec<Word> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        let mut stack = vec![(0usize, Word::empty(), 0u64)];
        while let Some((s, w, weight)) = stack.pop() {
            for (l, t) in self.edges(s) {
                let nw = weight + self.alphabet.letter_weight(l);
                if nw <= max_degree {
                    let mut next = w.clone();
                    next.push(l);
                    stack.push((t, next, nw));
                }
            }
            out.push(w);
        }
        out.sort();
        out
    }

    /// Graphviz rendering; edge labels are `letter:weight`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph normal_words {\n  rankdir=LR;\n");
        for (i, st) in self.states.iter().enumerate() {
            let shape = if i == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(
                s,
                "  {i} [shape={shape}, label=\"{}\"];",
                self.alphabet.display_word(&st.label)
            );
        }
        for i in 0..self.states.len() {
            for (l, t) in self.edges(i) {
                let _ = writeln!(
                    s,
                    "  {i} -> {t} [label=\"{}:{}\"];",
                    self.alphabet.name(l),
                    self.alphabet.letter_weight(l)
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Exponential if some component holds two distinct cycles; otherwise the
/// largest number of cyclic components on one path.
pub fn classify_growth(dfa: &NormalWordAutomaton) -> GrowthClass {
    let comps = dfa.components();
    let m = comps.members.len();
    if (0..m).any(|c| comps.is_nontrivial(c) && !comps.is_simple_cycle(c)) {
        return GrowthClass::Exponential;
    }
    // Components come sinks first, so successors are already final.
    let mut best = vec![0u32; m];
    for c in 0..m {
        let mut succ = 0;
        for &s in &comps.members[c] {
            for (_, t) in dfa.edges(s) {
                let d = comps.component_of[t];
                if d != c {
                    succ = succ.max(best[d]);
                }
            }
        }
        best[c] = succ + u32::from(comps.is_nontrivial(c));
    }
    let k = if dfa.is_empty() {
        0
    } else {
        best[comps.component_of[0]]
    };
    if k == 0 {
        GrowthClass::Finite
    } else {
        GrowthClass::Polynomial(k)
    }
}

pub fn count_words(dfa: &NormalWordAutomaton, max_degree: u64) -> Vec<BigUint> {
    dfa.count_words(max_degree)
}

/// `Σ c_n t^n` as a reduced fraction with `denominator(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSeries {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl GeneratingSeries {
    pub fn coefficients(&self, n: usize) -> Vec<BigInt> {
        self.numerator.series_div(&self.denominator, n)
    }
}

impl fmt::Display for GeneratingSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        // Pull powers of (1 - t) out of the denominator for readability.
        let one_minus_t = Poly::from_i64(&[1, -1]);
        let mut rest = self.denominator.clone();
        let mut k = 0;
        while rest.degree().unwrap_or(0) > 0 {
            match rest.exact_div(&one_minus_t) {
                Some(q) => {
                    rest = q;
                    k += 1;
                }
                None => break,
            }
        }
        let mut den = Vec::new();
        if rest != Poly::one() {
            den.push(wrap(&rest));
        }
        match k {
            0 => {}
            1 => den.push("(1 - t)".into()),
            _ => den.push(format!("(1 - t)^{k}")),
        }
        if den.is_empty() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", wrap(&self.numerator), den.join(""))
        }
    }
}

/// Solves `F_s = 1 + Σ_{s -x-> s'} t^{d(x)} F_{s'}` for the initial state by
/// Cramer's rule over Z[t], then reduces the fraction.
pub fn generating_series(dfa: &NormalWordAutomaton) -> GeneratingSeries {
    let n = dfa.num_states();
    if n == 0 {
        return GeneratingSeries {
            numerator: Poly::zero(),
            denominator: Poly::one(),
        };
    }
    let mut system: Vec<Vec<Poly>> = vec![vec![Poly::zero(); n]; n];
    for (s, row) in system.iter_mut().enumerate() {
        row[s] = Poly::one();
        for (l, t) in dfa.edges(s) {
            let term = Poly::monomial(BigInt::from(1), dfa.alphabet.letter_weight(l) as usize);
            row[t] = &row[t] - &term;
        }
    }
    let den = determinant(system.clone());
    for row in system.iter_mut() {
        row[0] = Poly::one();
    }
    let num = determinant(system);
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
        (
            num.exact_div(&g).expect("gcd divides"),
            den.exact_div(&g).expect("gcd divides"),
        )
    } else {
        (num, den)
    };
    if den.coeff(0) < BigInt::zero() {
        num = -&num;
        den = -&den;
    }
    GeneratingSeries {
        numerator: num,
        denominator: den,
    }
}
