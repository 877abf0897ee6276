//! The cycle systems `S` and `S′` on `C_n` (arrows `i -> i+1`, `n -> 1`,
//! natural generator order).
//!
//! Families, with `prev(1) = n` and `next(n) = 1`:
//!
//! | kind    | leading term                    | replacement          | condition |
//! |---------|---------------------------------|----------------------|-----------|
//! | S-1     | `x_i x_i`                       | `x_i`                | |
//! | S-2     | `x_j x_i`                       | `x_i x_j`            | `1 < j-i < n-1` |
//! | S-3     | `x_n (x_1..x_i) x_j`            | `x_j x_n (x_1..x_i)` | `i+1 < j < n-1` |
//! | S-4     | `x_i u x_i`                     | `x_i u`              | `u ≠ 1` avoids `x_i`, `x_prev(i)` |
//! | S-5     | `x_i v x_i`                     | `v x_i`              | `v ≠ 1` avoids `x_i`, `x_next(i)` |
//! | S'-4'   | as S-4                          |                      | letters of `u` distinct |
//! | S'-5'   | as S-5                          |                      | letters of `v` distinct |
//! | S'-5''  | `x_i B x_n (x_1..x_i)`          | `B x_n (x_1..x_i)`   | S-5 holds, `i < n`, `B ≠ 1` of block form |
//!
//! "Block form" means the maximal run decomposition of `B` has strictly
//! increasing starts and strictly increasing ends, with `x_n` absent.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rewrite::{Match, RuleKind};
use crate::word::{bit, support_mask, GenOrder, Letter, Word};

/// Direction of a maximal run of consecutive indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockShape {
    Increasing,
    Decreasing,
    Singleton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: Letter,
    pub end: Letter,
}

impl Block {
    pub fn shape(&self) -> BlockShape {
        use std::cmp::Ordering::*;
        match self.start.cmp(&self.end) {
            Less => BlockShape::Increasing,
            Greater => BlockShape::Decreasing,
            Equal => BlockShape::Singleton,
        }
    }

    pub fn len(&self) -> usize {
        self.start.abs_diff(self.end) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> Vec<Letter> {
        if self.start <= self.end {
            (self.start..=self.end).collect()
        } else {
            (self.end..=self.start).rev().collect()
        }
    }
}

/// Decomposes a word into maximal runs stepping by `+1` or `-1`. Runs are
/// read greedily left to right; a run's direction is fixed by its first step.
pub fn block_decompose(w: &[Letter]) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let start = k;
        if k + 1 < w.len() && w[k].abs_diff(w[k + 1]) == 1 {
            let step = w[k + 1] as i16 - w[k] as i16;
            k += 1;
            while k + 1 < w.len() && w[k + 1] as i16 - w[k] as i16 == step {
                k += 1;
            }
        }
        blocks.push(Block {
            start: w[start],
            end: w[k],
        });
        k += 1;
    }
    blocks
}

/// Whether `w` (free of `x_n`) has strictly increasing block starts and
/// strictly increasing block ends.
pub fn is_formp(w: &[Letter], n: usize) -> Result<bool> {
    if w.iter().any(|&x| x as usize == n) {
        return Err(Error::Precondition(format!(
            "block form is only defined for words without x_{n}"
        )));
    }
    Ok(formp_unchecked(w))
}

fn formp_unchecked(w: &[Letter]) -> bool {
    let blocks = block_decompose(w);
    blocks
        .windows(2)
        .all(|b| b[0].start < b[1].start && b[0].end < b[1].end)
}

#[inline]
fn prev(i: Letter, n: usize) -> Letter {
    if i == 1 {
        n as Letter
    } else {
        i - 1
    }
}

#[inline]
fn next(i: Letter, n: usize) -> Letter {
    if i as usize == n {
        1
    } else {
        i + 1
    }
}

fn all_distinct(w: &[Letter]) -> bool {
    support_mask(w).count_ones() as usize == w.len()
}

/// Appends the matches of one cycle family whose span starts at `p`.
pub(crate) fn matches_at(kind: RuleKind, n: usize, w: &[Letter], p: usize, out: &mut Vec<Match>) {
    let push = |out: &mut Vec<Match>, end: usize, replacement: Vec<Letter>| {
        out.push(Match {
            kind,
            start: p,
            end,
            replacement: Word::new(replacement),
        })
    };
    match kind {
        RuleKind::S1 => {
            if p + 1 < w.len() && w[p] == w[p + 1] {
                push(out, p + 2, vec![w[p]]);
            }
        }
        RuleKind::S2 => {
            if p + 1 < w.len() {
                let (j, i) = (w[p] as i32, w[p + 1] as i32);
                if 1 < j - i && j - i < n as i32 - 1 {
                    push(out, p + 2, vec![w[p + 1], w[p]]);
                }
            }
        }
        RuleKind::S3 => {
            if w[p] as usize != n {
                return;
            }
            // x_n 1 2 .. r, then x_j with r+1 < j < n-1
            let mut r = 0;
            while p + 1 + r < w.len() && w[p + 1 + r] as usize == r + 1 {
                r += 1;
            }
            if r == 0 || p + 1 + r >= w.len() {
                return;
            }
            let j = w[p + 1 + r] as usize;
            if r + 1 < j && j + 1 < n {
                let mut rep = vec![j as Letter];
                rep.extend_from_slice(&w[p..=p + r]);
                push(out, p + r + 2, rep);
            }
        }
        RuleKind::S4
        | RuleKind::S5
        | RuleKind::S4Prime
        | RuleKind::S5Prime
        | RuleKind::S5DoublePrime => {
            let i = w[p];
            let Some(offset) = w[p + 1..].iter().position(|&x| x == i) else {
                return;
            };
            let q = p + 1 + offset;
            let inner = &w[p + 1..q];
            if inner.is_empty() {
                return;
            }
            let avoid = match kind {
                RuleKind::S4 | RuleKind::S4Prime => prev(i, n),
                _ => next(i, n),
            };
            if support_mask(inner) & bit(avoid) != 0 {
                return;
            }
            let ok = match kind {
                RuleKind::S4 | RuleKind::S5 => true,
                RuleKind::S4Prime | RuleKind::S5Prime => all_distinct(inner),
                _ => is_double_prime_inner(i, inner, n),
            };
            if ok {
                let rep = match kind {
                    RuleKind::S4 | RuleKind::S4Prime => &w[p..q],
                    _ => &w[p + 1..=q],
                };
                push(out, q + 1, rep.to_vec());
            }
        }
        RuleKind::TI | RuleKind::TII | RuleKind::TIII => {
            unreachable!("general families are matched by RuleSystem")
        }
    }
}

// z = B x_n x_1 .. x_{i-1} with B nonempty, free of x_n, in block form.
fn is_double_prime_inner(i: Letter, z: &[Letter], n: usize) -> bool {
    let i = i as usize;
    if i >= n || z.len() <= i {
        return false;
    }
    let split = z.len() - i;
    let (b, tail) = z.split_at(split);
    if tail[0] as usize != n
        || tail[1..]
            .iter()
            .enumerate()
            .any(|(k, &x)| x as usize != k + 1)
    {
        return false;
    }
    !b.iter().any(|&x| x as usize == n) && formp_unchecked(b)
}

/// One explicit rule of the finite system `S′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListedRule {
    pub kind: RuleKind,
    pub lhs: Word,
    pub rhs: Word,
}

/// Default cap on `n` for [`enumerate_sprime_rules`].
pub const DEFAULT_RULE_CAP: usize = 8;

/// Every rule of `S′` on `C_n`, sorted by family and then deg-lex leading
/// term. The list grows quickly in `n`, so `n` is capped.
pub fn enumerate_sprime_rules(n: usize, cap: usize) -> Result<Vec<ListedRule>> {
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let nl = n as Letter;
    let mut rules = Vec::new();
    let mut add = |kind, lhs: Vec<Letter>, rhs: Vec<Letter>| {
        rules.push(ListedRule {
            kind,
            lhs: Word::new(lhs),
            rhs: Word::new(rhs),
        })
    };

    for i in 1..=nl {
        add(RuleKind::S1, vec![i, i], vec![i]);
    }
    for i in 1..=nl {
        for j in 1..=nl {
            let d = j as i32 - i as i32;
            if 1 < d && d < n as i32 - 1 {
                add(RuleKind::S2, vec![j, i], vec![i, j]);
            }
        }
    }
    for i in 1..=nl {
        for j in 1..=nl {
            if i as usize + 1 < j as usize && (j as usize) + 1 < n {
                let run: Vec<Letter> = (1..=i).collect();
                let mut lhs = vec![nl];
                lhs.extend(&run);
                lhs.push(j);
                let mut rhs = vec![j, nl];
                rhs.extend(&run);
                add(RuleKind::S3, lhs, rhs);
            }
        }
    }
    for i in 1..=nl {
        let allowed: Vec<Letter> = (1..=nl).filter(|&x| x != i && x != prev(i, n)).collect();
        for u in distinct_sequences(&allowed) {
            let mut lhs = vec![i];
            lhs.extend(&u);
            let rhs = lhs.clone();
            lhs.push(i);
            add(RuleKind::S4Prime, lhs, rhs);
        }
    }
    for i in 1..=nl {
        let allowed: Vec<Letter> = (1..=nl).filter(|&x| x != i && x != next(i, n)).collect();
        for v in distinct_sequences(&allowed) {
            let mut rhs = v.clone();
            rhs.push(i);
            let mut lhs = vec![i];
            lhs.extend(&rhs);
            add(RuleKind::S5Prime, lhs, rhs);
        }
    }
    // x_i B x_n x_1..x_i: z must avoid x_{i+1}, and z contains x_n, so i+1 < n
    for i in 1..nl.saturating_sub(1) {
        let allowed = |x: Letter| x != i && x != i + 1 && x != nl;
        for b in block_form_words(n, allowed) {
            let mut rhs = b;
            rhs.push(nl);
            rhs.extend(1..=i);
            let mut lhs = vec![i];
            lhs.extend(&rhs);
            add(RuleKind::S5DoublePrime, lhs, rhs);
        }
    }

    let order = GenOrder::identity(n);
    rules.sort_by(|a, b| {
        a.kind
            .cmp(&b.kind)
            .then_with(|| order.deglex(a.lhs.letters(), b.lhs.letters()))
    });
    Ok(rules)
}

/// Nonempty sequences of pairwise distinct letters drawn from `alphabet`.
fn distinct_sequences(alphabet: &[Letter]) -> Vec<Vec<Letter>> {
    fn extend(alphabet: &[Letter], used: u64, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        for &x in alphabet {
            if used & bit(x) == 0 {
                cur.push(x);
                out.push(cur.clone());
                extend(alphabet, used | bit(x), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(alphabet, 0, &mut Vec::new(), &mut out);
    out
}

/// Every nonempty word in block form whose letters satisfy `allowed`.
/// Candidates come from block sequences with strictly increasing starts and
/// ends; concatenations can merge into longer runs, so each candidate is
/// re-checked through the greedy decomposition and deduplicated.
fn block_form_words(n: usize, allowed: impl Fn(Letter) -> bool) -> BTreeSet<Vec<Letter>> {
    let mut intervals = Vec::new();
    for a in 1..n as Letter {
        for b in 1..n as Letter {
            let (lo, hi) = (a.min(b), a.max(b));
            if (lo..=hi).all(&allowed) {
                intervals.push(Block { start: a, end: b });
            }
        }
    }
    fn grow(
        intervals: &[Block],
        last: Option<Block>,
        cur: &mut Vec<Letter>,
        out: &mut BTreeSet<Vec<Letter>>,
    ) {
        for blk in intervals {
            if let Some(prev) = last {
                if blk.start <= prev.start || blk.end <= prev.end {
                    continue;
                }
            }
            let before = cur.len();
            cur.extend(blk.letters());
            if formp_unchecked(cur) {
                out.insert(cur.clone());
            }
            grow(intervals, Some(*blk), cur, out);
            cur.truncate(before);
        }
    }
    let mut out = BTreeSet::new();
    grow(&intervals, None, &mut Vec::new(), &mut out);
    out
}
