//! Forbidden-factor language of the general system and its automaton.
//!
//! Leading terms of each family form a finite union of sets `a⟨B⟩c`: the
//! words `a w c` with every letter of `w` in `B`. A word is normal exactly
//! when it has no factor in that union, so the normal words form a
//! factor-closed regular language. The automaton below tracks, for each
//! pattern, whether an `a` has been read with only `B`-letters after it.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::scc::{condense, ComponentShape};
use crate::word::{bit, closed_neighbourhood, GenOrder, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternFamily {
    I,
    II,
    III,
}

/// The set `first ⟨middle⟩ last`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub family: PatternFamily,
    pub first: Letter,
    pub middle: u64,
    pub last: Letter,
}

impl Pattern {
    pub fn middle_letters(&self) -> Vec<Letter> {
        (1..=64u8).filter(|&x| self.middle & bit(x) != 0).collect()
    }

    /// True when the whole of `w` belongs to this set.
    pub fn matches_whole(&self, w: &[Letter]) -> bool {
        w.len() >= 2
            && w[0] == self.first
            && w[w.len() - 1] == self.last
            && w[1..w.len() - 1].iter().all(|&x| self.middle & bit(x) != 0)
    }

    pub fn render(&self, n: usize) -> String {
        let name = |x: Letter| Word::new(vec![x]).render(n);
        let inner: Vec<String> = self.middle_letters().into_iter().map(name).collect();
        format!(
            "{}⟨{}⟩{}",
            name(self.first),
            inner.join(","),
            name(self.last)
        )
    }
}

/// Leading terms of the general system, as three pattern families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenPatternSet {
    n: usize,
    patterns: Vec<Pattern>,
}

impl ForbiddenPatternSet {
    pub fn new(n: usize, patterns: Vec<Pattern>) -> Self {
        ForbiddenPatternSet { n, patterns }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn family(&self, family: PatternFamily) -> impl Iterator<Item = &Pattern> {
        self.patterns.iter().filter(move |p| p.family == family)
    }

    /// True when `w` itself is a leading term.
    pub fn contains(&self, w: &[Letter]) -> bool {
        self.patterns.iter().any(|p| p.matches_whole(w))
    }
}

/// Builds the three families for `g` under `ord`:
///
/// * `t⟨Y_t⟩t`, `Y_t = {z ≠ t : no arrow z -> t}`
/// * `t⟨Z_t⟩t`, `Z_t = {z ≠ t : no arrow t -> z}`
/// * `z⟨X_x⟩x` for `x < z` not joined by an arrow, `X_x = {y ≠ x : y ↮ x}`
pub fn leading_term_language(g: &Digraph, ord: &GenOrder) -> ForbiddenPatternSet {
    let n = g.n();
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut patterns = Vec::new();
    for t in 1..=n as Letter {
        patterns.push(Pattern {
            family: PatternFamily::I,
            first: t,
            middle: all & !bit(t) & !g.in_mask(t as usize),
            last: t,
        });
    }
    for t in 1..=n as Letter {
        patterns.push(Pattern {
            family: PatternFamily::II,
            first: t,
            middle: all & !bit(t) & !g.out_mask(t as usize),
            last: t,
        });
    }
    for x in ord.ascending() {
        for z in 1..=n as Letter {
            if ord.less(x, z) && g.disconnected(x as usize, z as usize) {
                patterns.push(Pattern {
                    family: PatternFamily::III,
                    first: z,
                    middle: all & !closed_neighbourhood(x, g),
                    last: x,
                });
            }
        }
    }
    ForbiddenPatternSet { n, patterns }
}

/// Complete deterministic automaton of the normal words. Every state other
/// than `dead` accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalWordDfa {
    n: usize,
    start: usize,
    dead: usize,
    /// `trans[state][letter - 1]`.
    trans: Vec<Vec<usize>>,
}

type Progress = Box<[u64]>;

impl NormalWordDfa {
    /// Subset construction over pattern progress, then minimisation and a
    /// canonical breadth-first renumbering.
    pub fn build(patterns: &ForbiddenPatternSet) -> Self {
        Self::build_unminimized(patterns).minimized()
    }

    pub fn for_graph(g: &Digraph, ord: &GenOrder) -> Self {
        Self::build(&leading_term_language(g, ord))
    }

    /// Reachable progress-set automaton without minimisation.
    pub fn build_unminimized(set: &ForbiddenPatternSet) -> Self {
        let n = set.n;
        let words = set.patterns.len().div_ceil(64).max(1);
        let mask_of = |pred: &dyn Fn(&Pattern) -> bool| -> Progress {
            let mut m = vec![0u64; words];
            for (k, p) in set.patterns.iter().enumerate() {
                if pred(p) {
                    m[k / 64] |= 1 << (k % 64);
                }
            }
            m.into_boxed_slice()
        };
        let completes: Vec<Progress> = (1..=n as Letter)
            .map(|x| mask_of(&|p| p.last == x))
            .collect();
        let opens: Vec<Progress> = (1..=n as Letter)
            .map(|x| mask_of(&|p| p.first == x))
            .collect();
        let keeps: Vec<Progress> = (1..=n as Letter)
            .map(|x| mask_of(&|p| p.middle & bit(x) != 0))
            .collect();

        const DEAD: usize = 0;
        let mut ids: HashMap<Progress, usize> = HashMap::new();
        let mut trans: Vec<Vec<usize>> = vec![vec![DEAD; n]];
        let mut queue = VecDeque::new();
        let initial: Progress = vec![0u64; words].into_boxed_slice();
        ids.insert(initial.clone(), 1);
        trans.push(vec![DEAD; n]);
        queue.push_back((initial, 1));

        while let Some((state, id)) = queue.pop_front() {
            for x in 0..n {
                let dies = state
                    .iter()
                    .zip(completes[x].iter())
                    .any(|(s, c)| s & c != 0);
                if dies {
                    continue;
                }
                let next: Progress = state
                    .iter()
                    .zip(keeps[x].iter())
                    .zip(opens[x].iter())
                    .map(|((s, k), o)| (s & k) | o)
                    .collect();
                let target = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = trans.len();
                        trans.push(vec![DEAD; n]);
                        ids.insert(next.clone(), t);
                        queue.push_back((next, t));
                        t
                    }
                };
                trans[id][x] = target;
            }
        }
        NormalWordDfa {
            n,
            start: 1,
            dead: DEAD,
            trans,
        }
        .renumbered()
    }

    /// Moore partition refinement, followed by canonical renumbering.
    pub fn minimized(&self) -> Self {
        let states = self.trans.len();
        let mut class: Vec<usize> = (0..states).map(|s| usize::from(s != self.dead)).collect();
        let mut classes = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; states];
            for s in 0..states {
                let mut sig = Vec::with_capacity(self.n + 1);
                sig.push(class[s]);
                sig.extend(self.trans[s].iter().map(|&t| class[t]));
                let fresh = sig_ids.len();
                next[s] = *sig_ids.entry(sig).or_insert(fresh);
            }
            let count = sig_ids.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        let mut trans = vec![Vec::new(); classes];
        for s in 0..states {
            if trans[class[s]].is_empty() {
                trans[class[s]] = self.trans[s].iter().map(|&t| class[t]).collect();
            }
        }
        NormalWordDfa {
            n: self.n,
            start: class[self.start],
            dead: class[self.dead],
            trans,
        }
        .renumbered()
    }

    // Breadth-first numbering from the start state over letters in order;
    // unreachable states are dropped, the dead state is always kept.
    fn renumbered(&self) -> Self {
        let mut new_id = vec![usize::MAX; self.trans.len()];
        let mut order = vec![self.start];
        new_id[self.start] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for &t in &self.trans[s] {
                if new_id[t] == usize::MAX {
                    new_id[t] = order.len();
                    order.push(t);
                }
            }
        }
        if new_id[self.dead] == usize::MAX {
            new_id[self.dead] = order.len();
            order.push(self.dead);
        }
        let trans = order
            .iter()
            .map(|&s| self.trans[s].iter().map(|&t| new_id[t]).collect())
            .collect();
        NormalWordDfa {
            n: self.n,
            start: 0,
            dead: new_id[self.dead],
            trans,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn dead(&self) -> usize {
        self.dead
    }

    /// Total number of states, the dead state included.
    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn step(&self, state: usize, x: Letter) -> usize {
        self.trans[state][x as usize - 1]
    }

    pub fn run(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.start, |s, &x| self.step(s, x))
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.run(w) != self.dead
    }

    fn live_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.trans.len())
            .map(|s| {
                if s == self.dead {
                    Vec::new()
                } else {
                    self.trans[s]
                        .iter()
                        .copied()
                        .filter(|&t| t != self.dead)
                        .collect()
                }
            })
            .collect()
    }

    /// Accepted words per length `0..=max_len`, by iterating the state
    /// occupancy vector.
    pub fn count_normal_words(&self, max_len: usize) -> Vec<BigUint> {
        let states = self.trans.len();
        let mut occupancy = vec![BigUint::zero(); states];
        occupancy[self.start] = BigUint::one();
        let mut counts = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            let total = occupancy
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != self.dead)
                .fold(BigUint::zero(), |acc, (_, c)| acc + c);
            counts.push(total);
            if len == max_len {
                break;
            }
            let mut next = vec![BigUint::zero(); states];
            for (s, c) in occupancy.iter().enumerate() {
                if s == self.dead || c.is_zero() {
                    continue;
                }
                for &t in &self.trans[s] {
                    if t != self.dead {
                        next[t] += c;
                    }
                }
            }
            occupancy = next;
        }
        counts
    }

    /// Growth type from the condensation of the live part.
    pub fn classify_growth(&self) -> Growth {
        let c = condense(&self.live_adjacency(), Some(self.start));
        if c.shapes.contains(&ComponentShape::ManyCycles) {
            return Growth::Exponential;
        }
        match c.max_cyclic_from.unwrap_or(0) {
            0 => Growth::Finite,
            gk => Growth::Polynomial { gk },
        }
    }

    pub fn growth_report(&self, max_len: usize) -> GrowthReport {
        GrowthReport {
            counts: self.count_normal_words(max_len),
            classification: self.classify_growth(),
        }
    }

    /// Accepted words of length `<= max_len` in deg-lex order, refusing when
    /// there are more than `cap` of them.
    pub fn enumerate_normal_words(&self, max_len: usize, cap: u128) -> Result<Vec<Word>> {
        let total: BigUint = self.count_normal_words(max_len).iter().sum();
        if total > BigUint::from(cap) {
            return Err(Error::Budget {
                what: "normal-word enumeration",
                needed: u128::try_from(&total).unwrap_or(u128::MAX),
                budget: cap,
            });
        }
        let mut out = vec![Word::empty()];
        let mut level: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), self.start)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, s) in &level {
                for x in 1..=self.n as Letter {
                    let t = self.step(*s, x);
                    if t != self.dead {
                        let mut v = w.clone();
                        v.push(x);
                        next.push((v, t));
                    }
                }
            }
            out.extend(next.iter().map(|(w, _)| Word::from(w.as_slice())));
            level = next;
        }
        Ok(out)
    }

    /// DOT rendering; the dead state and edges into it are omitted, parallel
    /// edges share one arrow with a combined label.
    pub fn to_dot(&self) -> String {
        let name = |x: Letter| Word::new(vec![x]).render(self.n);
        let mut out = String::from("digraph normal_words {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  init [shape=point];\n  init -> {};", self.start);
        for s in 0..self.trans.len() {
            if s != self.dead {
                let _ = writeln!(out, "  {s} [shape=circle];");
            }
        }
        for s in 0..self.trans.len() {
            if s == self.dead {
                continue;
            }
            let mut by_target: Vec<(usize, Vec<String>)> = Vec::new();
            for x in 1..=self.n as Letter {
                let t = self.step(s, x);
                if t == self.dead {
                    continue;
                }
                match by_target.iter_mut().find(|(u, _)| *u == t) {
                    Some((_, labels)) => labels.push(name(x)),
                    None => by_target.push((t, vec![name(x)])),
                }
            }
            for (t, labels) in by_target {
                let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", labels.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Growth class of the normal-word language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Growth {
    Finite,
    /// Cumulative counts grow like `L^gk`.
    Polynomial {
        gk: usize,
    },
    Exponential,
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Finite => f.write_str("finite"),
            Growth::Polynomial { gk } => write!(f, "gk={gk}"),
            Growth::Exponential => f.write_str("exponential"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    /// `counts[l]` is the number of normal words of length `l`.
    pub counts: Vec<BigUint>,
    pub classification: Growth,
}

impl GrowthReport {
    pub fn cumulative(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.counts
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }
}

/// Leading terms of length `<= max_len` with no proper factor among the
/// leading terms: the words `u x` with `u` normal, `u x` not normal, and the
/// suffix of `u x` normal.
pub fn minimal_forbidden_words(
    g: &Digraph,
    ord: &GenOrder,
    max_len: usize,
    budget: u128,
) -> Result<Vec<Word>> {
    let dfa = NormalWordDfa::for_graph(g, ord);
    let prefixes = dfa.enumerate_normal_words(max_len.saturating_sub(1), budget)?;
    let mut out = Vec::new();
    for u in prefixes {
        let s = dfa.run(u.letters());
        for x in 1..=g.n() as Letter {
            if dfa.step(s, x) != dfa.dead {
                continue;
            }
            let mut w = u.letters().to_vec();
            w.push(x);
            if dfa.accepts(&w[1..]) {
                out.push(Word::new(w));
            }
        }
    }
    out.sort_by(|a, b| ord.deglex(a.letters(), b.letters()));
    Ok(out)
}
