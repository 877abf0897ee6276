//! Reduction systems as executable matchers.
//!
//! The general system has three families over any oriented graph and any
//! generator order:
//!
//! * `T-i`:   `t w t -> t w`      when `w ↛ t`
//! * `T-ii`:  `t w t -> w t`      when `t ↛ w`
//! * `T-iii`: `t1 w t2 -> t2 t1 w` when `t1 > t2` and `t2 ↮ t1 w`
//!
//! The cycle systems `S` and `S′` (see [`crate::cycle`]) plug into the same
//! [`RuleSystem`] and share the normalisation and confluence machinery.
//!
//! A match is always reported with its leading-term span `start..end` and the
//! replacement for that span. Matches are ordered by start, then span
//! length, then family; the deterministic strategy applies the first one.

use std::collections::BTreeSet;
use std::fmt;

use crate::cycle;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::parallel;
use crate::word::{bit, closed_neighbourhood, support_mask, word_at, GenOrder, Letter, Word};

/// One family of reductions. The derived order is the tie-break precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    TI,
    TII,
    TIII,
    S1,
    S2,
    S3,
    S4,
    S5,
    S4Prime,
    S5Prime,
    S5DoublePrime,
}

impl RuleKind {
    pub const T: [RuleKind; 3] = [RuleKind::TI, RuleKind::TII, RuleKind::TIII];
    pub const S: [RuleKind; 5] = [
        RuleKind::S1,
        RuleKind::S2,
        RuleKind::S3,
        RuleKind::S4,
        RuleKind::S5,
    ];
    pub const S_PRIME: [RuleKind; 6] = [
        RuleKind::S1,
        RuleKind::S2,
        RuleKind::S3,
        RuleKind::S4Prime,
        RuleKind::S5Prime,
        RuleKind::S5DoublePrime,
    ];

    pub fn is_cycle_family(self) -> bool {
        !matches!(self, RuleKind::TI | RuleKind::TII | RuleKind::TIII)
    }

    pub fn label(self) -> &'static str {
        match self {
            RuleKind::TI => "T-i",
            RuleKind::TII => "T-ii",
            RuleKind::TIII => "T-iii",
            RuleKind::S1 => "S-1",
            RuleKind::S2 => "S-2",
            RuleKind::S3 => "S-3",
            RuleKind::S4 => "S-4",
            RuleKind::S5 => "S-5",
            RuleKind::S4Prime => "S'-4'",
            RuleKind::S5Prime => "S'-5'",
            RuleKind::S5DoublePrime => "S'-5''",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An occurrence of a leading term inside a subject word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Match {
    pub kind: RuleKind,
    pub start: usize,
    pub end: usize,
    pub replacement: Word,
}

impl Match {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    fn sort_key(&self) -> (usize, usize, RuleKind) {
        (self.start, self.end, self.kind)
    }
}

/// Which named system a [`RuleSystem`] realises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemName {
    T,
    S,
    SPrime,
    Custom,
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemName::T => "T",
            SystemName::S => "S",
            SystemName::SPrime => "S'",
            SystemName::Custom => "custom",
        })
    }
}

/// A set of enabled rule families bound to a graph and a generator order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSystem {
    graph: Digraph,
    order: GenOrder,
    kinds: Vec<RuleKind>,
    name: SystemName,
}

impl RuleSystem {
    /// The general system under the natural order `x_1 < ... < x_n`.
    pub fn t(graph: &Digraph) -> Self {
        let order = GenOrder::identity(graph.n());
        Self::t_with_order(graph, order).expect("identity order fits its graph")
    }

    pub fn t_with_order(graph: &Digraph, order: GenOrder) -> Result<Self> {
        let mut sys = Self::with_kinds(graph, order, &RuleKind::T)?;
        sys.name = SystemName::T;
        Ok(sys)
    }

    /// The infinite cycle system `S` on `C_n`.
    pub fn s(n: usize) -> Result<Self> {
        let mut sys = Self::with_kinds(&Digraph::cycle(n)?, GenOrder::identity(n), &RuleKind::S)?;
        sys.name = SystemName::S;
        Ok(sys)
    }

    /// The finite cycle system `S′` on `C_n`.
    pub fn s_prime(n: usize) -> Result<Self> {
        let mut sys = Self::with_kinds(
            &Digraph::cycle(n)?,
            GenOrder::identity(n),
            &RuleKind::S_PRIME,
        )?;
        sys.name = SystemName::SPrime;
        Ok(sys)
    }

    /// An arbitrary selection of families. Cycle families require the graph
    /// to be the oriented cycle `1 -> 2 -> ... -> n -> 1` under the natural order.
    pub fn with_kinds(graph: &Digraph, order: GenOrder, kinds: &[RuleKind]) -> Result<Self> {
        if order.n() != graph.n() {
            return Err(Error::RuleSystem(format!(
                "order covers {} generators, graph has {}",
                order.n(),
                graph.n()
            )));
        }
        if kinds.iter().any(|k| k.is_cycle_family()) {
            let n = graph.n();
            if n < 3 || *graph != Digraph::cycle(n)? {
                return Err(Error::RuleSystem(
                    "cycle families need the oriented cycle 1->2->...->n->1".into(),
                ));
            }
            if !order.is_identity() {
                return Err(Error::RuleSystem(
                    "cycle families are defined for the natural generator order".into(),
                ));
            }
        }
        let mut kinds = kinds.to_vec();
        kinds.sort();
        kinds.dedup();
        Ok(RuleSystem {
            graph: graph.clone(),
            order,
            kinds,
            name: SystemName::Custom,
        })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn order(&self) -> &GenOrder {
        &self.order
    }

    pub fn kinds(&self) -> &[RuleKind] {
        &self.kinds
    }

    pub fn name(&self) -> SystemName {
        self.name
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Appends every match whose span starts at `p`.
    fn matches_at(&self, w: &[Letter], p: usize, out: &mut Vec<Match>) {
        for &kind in &self.kinds {
            match kind {
                RuleKind::TI | RuleKind::TII => self.square_family_at(kind, w, p, out),
                RuleKind::TIII => self.commutation_family_at(w, p, out),
                _ => cycle::matches_at(kind, self.graph.n(), w, p, out),
            }
        }
    }

    // `t w t` with `t` absent from `w`: the inner word lies between `p` and
    // the next occurrence of `t`, so only nearest pairs are candidates.
    fn square_family_at(&self, kind: RuleKind, w: &[Letter], p: usize, out: &mut Vec<Match>) {
        let t = w[p];
        let Some(offset) = w[p + 1..].iter().position(|&x| x == t) else {
            return;
        };
        let q = p + 1 + offset;
        let inner = support_mask(&w[p + 1..q]);
        let blocked = match kind {
            RuleKind::TI => self.graph.in_mask(t as usize),
            _ => self.graph.out_mask(t as usize),
        };
        if inner & blocked != 0 {
            return;
        }
        let replacement = match kind {
            RuleKind::TI => &w[p..q],
            _ => &w[p + 1..=q],
        };
        out.push(Match {
            kind,
            start: p,
            end: q + 1,
            replacement: replacement.into(),
        });
    }

    fn commutation_family_at(&self, w: &[Letter], p: usize, out: &mut Vec<Match>) {
        let t1 = w[p];
        let mut seen = bit(t1);
        for q in p + 1..w.len() {
            let t2 = w[q];
            if self.order.less(t2, t1) && seen & closed_neighbourhood(t2, &self.graph) == 0 {
                let mut replacement = Vec::with_capacity(q + 1 - p);
                replacement.push(t2);
                replacement.extend_from_slice(&w[p..q]);
                out.push(Match {
                    kind: RuleKind::TIII,
                    start: p,
                    end: q + 1,
                    replacement: replacement.into(),
                });
            }
            seen |= bit(t2);
        }
    }

    /// All matches in `w`, sorted by start, then length, then family.
    pub fn find_matches(&self, w: &Word) -> Vec<Match> {
        let letters = w.letters();
        let mut out = Vec::new();
        for p in 0..letters.len() {
            let from = out.len();
            self.matches_at(letters, p, &mut out);
            out[from..].sort_by_key(Match::sort_key);
        }
        out
    }

    /// The match the deterministic strategy applies, if any.
    pub fn first_match(&self, w: &Word) -> Option<Match> {
        let letters = w.letters();
        let mut buf = Vec::new();
        for p in 0..letters.len() {
            self.matches_at(letters, p, &mut buf);
            if let Some(m) = buf.iter().min_by_key(|m| m.sort_key()) {
                return Some(m.clone());
            }
        }
        None
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        let letters = w.letters();
        let mut buf = Vec::new();
        (0..letters.len()).all(|p| {
            self.matches_at(letters, p, &mut buf);
            buf.is_empty()
        })
    }

    /// Normal form under the deterministic leftmost-shortest strategy.
    pub fn normal_form(&self, w: &Word) -> Word {
        let mut current = w.clone();
        while let Some(m) = self.first_match(&current) {
            current = apply_unchecked(&current, &m);
        }
        current
    }

    /// The sequence of matches the deterministic strategy applies to `w`.
    pub fn trace(&self, w: &Word) -> Vec<(Match, Word)> {
        let mut steps = Vec::new();
        let mut current = w.clone();
        while let Some(m) = self.first_match(&current) {
            current = apply_unchecked(&current, &m);
            steps.push((m, current.clone()));
        }
        steps
    }

    /// Normalises with a caller-chosen match at every step; `choose`
    /// receives the full sorted match list and returns an index into it.
    pub fn normal_form_with(&self, w: &Word, mut choose: impl FnMut(&[Match]) -> usize) -> Word {
        let mut current = w.clone();
        loop {
            let matches = self.find_matches(&current);
            if matches.is_empty() {
                return current;
            }
            let k = choose(&matches).min(matches.len() - 1);
            current = apply_unchecked(&current, &matches[k]);
        }
    }

    pub fn one_step_reducts(&self, w: &Word) -> BTreeSet<Word> {
        self.find_matches(w)
            .iter()
            .map(|m| apply_unchecked(w, m))
            .collect()
    }

    /// Checks, for every word of length `1..=max_len`, that all one-step
    /// reducts share a normal form. The count of words checked is bounded by
    /// `budget`.
    pub fn check_local_confluence(&self, max_len: usize, budget: u128) -> Result<ConfluenceReport> {
        if max_len == 0 {
            return Err(Error::Precondition("max_len must be at least 1".into()));
        }
        let n = self.n();
        let needed = crate::word::words_up_to_count(n, max_len);
        if needed > budget {
            return Err(Error::Budget {
                what: "confluence word enumeration",
                needed,
                budget,
            });
        }
        let mut report = ConfluenceReport::default();
        for len in 1..=max_len {
            let count = crate::word::words_of_length_count(n, len) as u64;
            let found = parallel::flat_map_range(0..count, |i| {
                let w = word_at(n, len, i);
                self.divergence(&w).into_iter().collect::<Vec<_>>()
            });
            report.words_checked += count;
            report.violations += found.len() as u64;
            report.counterexamples.extend(
                found
                    .into_iter()
                    .take(MAX_REPORTED.saturating_sub(report.counterexamples.len())),
            );
        }
        Ok(report)
    }

    fn divergence(&self, w: &Word) -> Option<Counterexample> {
        let reducts = self.one_step_reducts(w);
        if reducts.len() < 2 {
            return None;
        }
        let forms: Vec<(Word, Word)> = reducts
            .into_iter()
            .map(|r| {
                let nf = self.normal_form(&r);
                (r, nf)
            })
            .collect();
        let first = &forms[0].1;
        if forms.iter().all(|(_, nf)| nf == first) {
            None
        } else {
            Some(Counterexample {
                word: w.clone(),
                reducts: forms,
            })
        }
    }
}

/// Counterexamples kept verbatim in a report; the total is always counted.
pub const MAX_REPORTED: usize = 64;

/// A word whose one-step reducts reach different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    /// `(reduct, normal form of reduct)` pairs.
    pub reducts: Vec<(Word, Word)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub words_checked: u64,
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl ConfluenceReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

fn apply_unchecked(w: &Word, m: &Match) -> Word {
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len() - m.len() + m.replacement.len());
    out.extend_from_slice(&letters[..m.start]);
    out.extend_from_slice(m.replacement.letters());
    out.extend_from_slice(&letters[m.end..]);
    Word::new(out)
}

/// Replaces the matched factor. Fails if the span does not fit `w`.
pub fn apply_match(w: &Word, m: &Match) -> Result<Word> {
    if m.start >= m.end || m.end > w.len() {
        return Err(Error::Precondition(format!(
            "span {}..{} does not fit a word of length {}",
            m.start,
            m.end,
            w.len()
        )));
    }
    Ok(apply_unchecked(w, m))
}

/// Word problem: equal normal forms under the general system.
pub fn equal_in_monoid(g: &Digraph, u: &Word, v: &Word) -> bool {
    let sys = RuleSystem::t(g);
    sys.normal_form(u) == sys.normal_form(v)
}
