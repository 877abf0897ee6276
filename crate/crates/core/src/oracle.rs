//! Brute-force congruence closure of the defining relations.
//!
//! Every word of length `<= L + slack` gets a dense id, and two ids are
//! joined whenever a single defining relation turns one word into the other.
//! Only the relations themselves are used here, so the table is an
//! independent check on the rewriting machinery.

use std::cmp::Ordering;

use crate::automaton::NormalWordDfa;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::rewrite::RuleSystem;
use crate::word::{words_up_to_count, GenOrder, Letter, Word};

pub const DEFAULT_SLACK: usize = 2;
pub const DEFAULT_BUDGET: u128 = 20_000_000;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let up = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = up;
        }
        root
    }

    // The smaller id becomes the root, so every root is the first member of
    // its class in enumeration order.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        match ra.cmp(&rb) {
            Ordering::Less => self.parent[rb as usize] = ra,
            Ordering::Greater => self.parent[ra as usize] = rb,
            Ordering::Equal => {}
        }
    }
}

/// Dense ids: words are ordered by length, then by base-`n` index.
#[derive(Debug, Clone)]
struct Indexer {
    n: usize,
    offsets: Vec<u64>,
}

impl Indexer {
    fn new(n: usize, max_len: usize) -> Self {
        let mut offsets = Vec::with_capacity(max_len + 2);
        let mut acc = 0u64;
        let mut block = 1u64;
        for _ in 0..=max_len {
            offsets.push(acc);
            acc += block;
            block *= n as u64;
        }
        offsets.push(acc);
        Indexer { n, offsets }
    }

    fn total(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    fn id(&self, w: &[Letter]) -> u64 {
        let index = w
            .iter()
            .fold(0u64, |acc, &x| acc * self.n as u64 + (x as u64 - 1));
        self.offsets[w.len()] + index
    }

    fn word(&self, id: u64) -> Vec<Letter> {
        let len = self.offsets.partition_point(|&o| o <= id) - 1;
        let mut index = id - self.offsets[len];
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = (index % self.n as u64) as Letter + 1;
            index /= self.n as u64;
        }
        letters
    }
}

/// Classes of all words up to `max_len + slack` letters.
#[derive(Debug, Clone)]
pub struct CongruenceTable {
    max_len: usize,
    slack: usize,
    indexer: Indexer,
    class_of: Vec<u32>,
    /// Shortest member length per class.
    min_len: Vec<usize>,
    /// First member in enumeration order, which is the deg-lex least member
    /// under the identity order.
    first_member: Vec<u64>,
}

impl CongruenceTable {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn slack(&self) -> usize {
        self.slack
    }

    pub fn ceiling(&self) -> usize {
        self.max_len + self.slack
    }

    pub fn word_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.min_len.len()
    }

    /// Class id of `w`, or `None` when `w` is longer than the ceiling or
    /// uses a letter outside the alphabet.
    pub fn class_of(&self, w: &Word) -> Option<usize> {
        if w.len() > self.ceiling()
            || w.letters()
                .iter()
                .any(|&x| x == 0 || x as usize > self.indexer.n)
        {
            return None;
        }
        Some(self.class_of[self.indexer.id(w.letters()) as usize] as usize)
    }

    /// A class is on the boundary when none of its members is at most
    /// `max_len` letters long. Such classes are only partially explored.
    pub fn is_boundary(&self, class: usize) -> bool {
        self.min_len[class] > self.max_len
    }

    pub fn min_len(&self, class: usize) -> usize {
        self.min_len[class]
    }

    /// Deg-lex least member under the identity order.
    pub fn representative(&self, class: usize) -> Word {
        Word::new(self.indexer.word(self.first_member[class]))
    }

    /// All members of a class in deg-lex order.
    pub fn members(&self, class: usize) -> Vec<Word> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c as usize == class)
            .map(|(id, _)| Word::new(self.indexer.word(id as u64)))
            .collect()
    }

    /// Number of classes with a member of length `<= len`, for `len` in
    /// `0..=max_len`.
    pub fn cumulative_class_counts(&self) -> Vec<u64> {
        let mut per_len = vec![0u64; self.ceiling() + 1];
        for &l in &self.min_len {
            per_len[l] += 1;
        }
        let mut acc = 0;
        per_len[..=self.max_len]
            .iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect()
    }

    pub fn same_class(&self, u: &Word, v: &Word) -> Option<bool> {
        Some(self.class_of(u)? == self.class_of(v)?)
    }
}

// Each word is joined with the shorter or equal-length words obtained by one
// relation; the reverse directions are the same pairs seen from the other
// side, so this covers both directions.
fn join_neighbours(g: &Digraph, w: &[Letter], id: u32, ix: &Indexer, uf: &mut UnionFind) {
    let mut buf = Vec::with_capacity(w.len());
    for p in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[p], w[p + 1]);
        if a == b {
            buf.clear();
            buf.extend_from_slice(&w[..p]);
            buf.extend_from_slice(&w[p + 1..]);
            uf.union(id, ix.id(&buf) as u32);
        } else if g.disconnected(a as usize, b as usize) {
            buf.clear();
            buf.extend_from_slice(w);
            buf.swap(p, p + 1);
            uf.union(id, ix.id(&buf) as u32);
        }
        if p + 2 < w.len() && w[p + 2] == a && a != b {
            // a b a with an arrow either way: both triples equal the
            // product tail-first along the arrow.
            let pair = if g.has_arrow(a as usize, b as usize) {
                Some([a, b])
            } else if g.has_arrow(b as usize, a as usize) {
                Some([b, a])
            } else {
                None
            };
            if let Some(pair) = pair {
                buf.clear();
                buf.extend_from_slice(&w[..p]);
                buf.extend_from_slice(&pair);
                buf.extend_from_slice(&w[p + 3..]);
                uf.union(id, ix.id(&buf) as u32);
            }
        }
    }
}

// Next word of the same length in index order; false after the last one.
fn advance(w: &mut [Letter], n: usize) -> bool {
    for slot in w.iter_mut().rev() {
        if (*slot as usize) < n {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

/// Union-find closure over every word of length `<= max_len + slack`.
pub fn congruence_closure(
    g: &Digraph,
    max_len: usize,
    slack: usize,
    budget: u128,
) -> Result<CongruenceTable> {
    let n = g.n();
    let ceiling = max_len + slack;
    let needed = words_up_to_count(n, ceiling);
    if needed > budget || needed > u32::MAX as u128 {
        return Err(Error::Budget {
            what: "congruence closure",
            needed,
            budget: budget.min(u32::MAX as u128),
        });
    }
    let ix = Indexer::new(n, ceiling);
    let total = ix.total() as usize;
    let mut uf = UnionFind::new(total);
    let mut w: Vec<Letter> = Vec::with_capacity(ceiling);
    let mut id = 0u32;
    for len in 0..=ceiling {
        w.clear();
        w.resize(len, 1);
        loop {
            join_neighbours(g, &w, id, &ix, &mut uf);
            id += 1;
            if !advance(&mut w, n) {
                break;
            }
        }
    }

    // Every parent id is at most its child id, so one ascending pass
    // flattens the forest, and a second one turns roots into dense class ids
    // in place.
    let mut class_of = uf.parent;
    for id in 0..total {
        let p = class_of[id] as usize;
        class_of[id] = class_of[p];
    }
    let mut min_len = Vec::new();
    let mut first_member = Vec::new();
    for len in 0..=ceiling {
        for id in ix.offsets[len] as usize..ix.offsets[len + 1] as usize {
            let root = class_of[id] as usize;
            if root == id {
                class_of[id] = min_len.len() as u32;
                min_len.push(len);
                first_member.push(id as u64);
            } else {
                class_of[id] = class_of[root];
            }
        }
    }
    Ok(CongruenceTable {
        max_len,
        slack,
        indexer: ix,
        class_of,
        min_len,
        first_member,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Same class in the table but different normal forms, or the reverse.
    WordProblem { u: Word, v: Word, same_class: bool },
    /// A class without exactly one reduced member.
    ReducedMembers { class: usize, reduced: Vec<Word> },
    /// The reduced member is not the least member of its class.
    NotLeast {
        class: usize,
        reduced: Word,
        least: Word,
    },
    /// Class and automaton cumulative counts differ at some length.
    Count {
        len: usize,
        classes: u64,
        normal_words: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub max_len: usize,
    pub slack: usize,
    pub words: usize,
    pub classes: usize,
    pub boundary_classes: usize,
    pub cumulative_classes: Vec<u64>,
    pub violations: Vec<Violation>,
}

impl CrosscheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the table against the general rewriting system and the
/// normal-word automaton:
///
/// * words of length `<= L` share a class exactly when they have the same
///   normal form;
/// * each non-boundary class has exactly one reduced member, its least one;
/// * classes with a member of length `<= l` number as many as the normal
///   words of length `<= l`.
pub fn crosscheck(
    g: &Digraph,
    max_len: usize,
    slack: usize,
    budget: u128,
) -> Result<CrosscheckReport> {
    let table = congruence_closure(g, max_len, slack, budget)?;
    let sys = RuleSystem::t(g);
    let ord = GenOrder::identity(g.n());
    let mut violations = Vec::new();

    // Word problem: class membership must match normal-form equality on the
    // words up to L.
    let short = words_up_to_count(g.n(), max_len) as usize;
    let short_ids: Vec<u64> = (0..short as u64).collect();
    let forms = crate::parallel::map(&short_ids, |&id| {
        sys.normal_form(&Word::new(table.indexer.word(id)))
    });
    let mut nf_of_class: Vec<Option<usize>> = vec![None; table.class_count()];
    let mut class_of_nf: std::collections::HashMap<&Word, usize> = std::collections::HashMap::new();
    for id in 0..short {
        let class = table.class_of[id] as usize;
        match nf_of_class[class] {
            None => nf_of_class[class] = Some(id),
            Some(other) if forms[other] != forms[id] => violations.push(Violation::WordProblem {
                u: Word::new(table.indexer.word(other as u64)),
                v: Word::new(table.indexer.word(id as u64)),
                same_class: true,
            }),
            Some(_) => {}
        }
        match class_of_nf.get(&forms[id]) {
            None => {
                class_of_nf.insert(&forms[id], id);
            }
            Some(&other) if table.class_of[other] as usize != class => {
                violations.push(Violation::WordProblem {
                    u: Word::new(table.indexer.word(other as u64)),
                    v: Word::new(table.indexer.word(id as u64)),
                    same_class: false,
                })
            }
            Some(_) => {}
        }
    }

    // Reduced members per class.
    let all_ids: Vec<u64> = (0..table.word_count() as u64).collect();
    let reduced = crate::parallel::map(&all_ids, |&id| {
        sys.is_reduced(&Word::new(table.indexer.word(id)))
    });
    let mut reduced_members: Vec<Vec<u64>> = vec![Vec::new(); table.class_count()];
    for (id, &r) in reduced.iter().enumerate() {
        if r {
            reduced_members[table.class_of[id] as usize].push(id as u64);
        }
    }
    for (class, members) in reduced_members.iter().enumerate() {
        if table.is_boundary(class) {
            continue;
        }
        if members.len() != 1 {
            violations.push(Violation::ReducedMembers {
                class,
                reduced: members
                    .iter()
                    .map(|&id| Word::new(table.indexer.word(id)))
                    .collect(),
            });
            continue;
        }
        let reduced = Word::new(table.indexer.word(members[0]));
        let least = table.representative(class);
        if ord.deglex(reduced.letters(), least.letters()) != Ordering::Equal {
            violations.push(Violation::NotLeast {
                class,
                reduced,
                least,
            });
        }
    }

    // Counts against the automaton.
    let cumulative = table.cumulative_class_counts();
    let dfa = NormalWordDfa::for_graph(g, &ord);
    let mut acc = num_bigint::BigUint::default();
    for (len, c) in dfa.count_normal_words(max_len).iter().enumerate() {
        acc += c;
        if num_bigint::BigUint::from(cumulative[len]) != acc {
            violations.push(Violation::Count {
                len,
                classes: cumulative[len],
                normal_words: acc.to_string(),
            });
        }
    }

    Ok(CrosscheckReport {
        max_len,
        slack,
        words: table.word_count(),
        classes: table.class_count(),
        boundary_classes: (0..table.class_count())
            .filter(|&c| table.is_boundary(c))
            .count(),
        cumulative_classes: cumulative,
        violations,
    })
}
