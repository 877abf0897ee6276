//! Finite simple oriented digraphs: the graph a monoid is built from.
//!
//! Vertices are labelled `1..=n`. An arrow `(i, j)` means `i -> j`. No loops,
//! and at most one arrow between any unordered pair.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scc::{condense, ComponentShape};

/// Upper bound on vertices; letter sets are packed into `u64` masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arrows: BTreeSet<(usize, usize)>,
    out_mask: Vec<u64>,
    in_mask: Vec<u64>,
}

impl Digraph {
    /// Builds a validated graph. Duplicates are rejected rather than merged.
    pub fn new(n: usize, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (from, to) in arrows {
            g.insert(0, from, to)?;
        }
        Ok(g)
    }

    fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Digraph {
            n,
            arrows: BTreeSet::new(),
            out_mask: vec![0; n],
            in_mask: vec![0; n],
        })
    }

    fn insert(&mut self, line: usize, from: usize, to: usize) -> Result<()> {
        let n = self.n;
        for vertex in [from, to] {
            if vertex == 0 || vertex > n {
                return Err(Error::VertexOutOfRange { line, vertex, n });
            }
        }
        if from == to {
            return Err(Error::Loop { line, vertex: from });
        }
        if self.arrows.contains(&(from, to)) {
            return Err(Error::DuplicateArrow { line, from, to });
        }
        if self.arrows.contains(&(to, from)) {
            return Err(Error::AntiParallel { line, from, to });
        }
        self.arrows.insert((from, to));
        self.out_mask[from - 1] |= 1 << (to - 1);
        self.in_mask[to - 1] |= 1 << (from - 1);
        Ok(())
    }

    /// Parses the text graph format: a header `n=<int>`, then one `i->j` per
    /// line. `#` starts a comment; blank lines and surrounding whitespace are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Digraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let malformed = |msg: &str| Error::Malformed {
                line,
                msg: format!("{msg}: {content:?}"),
            };
            match graph.as_mut() {
                None => {
                    let (key, value) = content
                        .split_once('=')
                        .ok_or_else(|| malformed("expected header `n=<int>`"))?;
                    if key.trim() != "n" {
                        return Err(malformed("expected header `n=<int>`"));
                    }
                    let n: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| malformed("vertex count is not an integer"))?;
                    graph = Some(Self::empty(n)?);
                }
                Some(g) => {
                    let (from, to) = content
                        .split_once("->")
                        .ok_or_else(|| malformed("expected arrow `i->j`"))?;
                    let from: usize = from
                        .trim()
                        .parse()
                        .map_err(|_| malformed("arrow tail is not an integer"))?;
                    let to: usize = to
                        .trim()
                        .parse()
                        .map_err(|_| malformed("arrow head is not an integer"))?;
                    g.insert(line, from, to)?;
                }
            }
        }
        graph.ok_or(Error::Malformed {
            line: 0,
            msg: "missing header `n=<int>`".into(),
        })
    }

    /// Canonical text form: header, then arrows in sorted order.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (i, j) in &self.arrows {
            let _ = writeln!(out, "{i}->{j}");
        }
        out
    }

    /// DOT rendering. Vertices are labelled `x1..xn`, or by letter when
    /// `letters` is set and `n <= 26`.
    pub fn to_dot(&self, letters: bool) -> String {
        let label = |v: usize| {
            if letters && self.n <= 26 {
                ((b'a' + (v - 1) as u8) as char).to_string()
            } else {
                format!("x{v}")
            }
        };
        let mut out = String::from("digraph theta {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", label(v));
        }
        for (i, j) in &self.arrows {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }

    /// Oriented cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleTooShort(n));
        }
        Self::new(n, (1..=n).map(|i| (i, i % n + 1)))
    }

    /// Oriented path `1 -> 2 -> ... -> n`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i, i + 1)))
    }

    /// The 3-cycle `a -> b -> c -> a` with an extra arrow `a -> d`, where
    /// `a, b, c, d` are vertices `1..=4`.
    pub fn cycle_with_tail() -> Self {
        Self::new(4, [(1, 2), (2, 3), (3, 1), (1, 4)]).expect("fixed graph is valid")
    }

    /// Number of oriented simple graphs on `n` vertices: each unordered pair
    /// is absent, forward, or backward.
    pub fn oriented_count(n: usize) -> u64 {
        let pairs = (n * n.saturating_sub(1) / 2) as u32;
        3u64.pow(pairs)
    }

    /// Decodes `code` in `0..oriented_count(n)`: base-3 digit per pair
    /// `(i, j)`, `i < j` in lexicographic order; 0 = absent, 1 = `i->j`,
    /// 2 = `j->i`.
    pub fn from_code(n: usize, mut code: u64) -> Result<Self> {
        let mut arrows = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                match code % 3 {
                    1 => arrows.push((i, j)),
                    2 => arrows.push((j, i)),
                    _ => {}
                }
                code /= 3;
            }
        }
        Self::new(n, arrows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn has_arrow(&self, from: usize, to: usize) -> bool {
        self.arrows.contains(&(from, to))
    }

    /// True when neither `i -> j` nor `j -> i` is present.
    pub fn disconnected(&self, i: usize, j: usize) -> bool {
        !self.has_arrow(i, j) && !self.has_arrow(j, i)
    }

    /// Mask of heads of arrows leaving `v`.
    pub fn out_mask(&self, v: usize) -> u64 {
        self.out_mask[v - 1]
    }

    /// Mask of tails of arrows entering `v`.
    pub fn in_mask(&self, v: usize) -> u64 {
        self.in_mask[v - 1]
    }

    /// True when the graph has no oriented cycle (Kahn's algorithm).
    pub fn is_acyclic(&self) -> bool {
        let mut indegree: Vec<usize> = (1..=self.n)
            .map(|v| self.in_mask(v).count_ones() as usize)
            .collect();
        let mut ready: Vec<usize> = (1..=self.n).filter(|&v| indegree[v - 1] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for (_, w) in self.arrows.range((v, 0)..(v + 1, 0)) {
                indegree[w - 1] -= 1;
                if indegree[w - 1] == 0 {
                    ready.push(*w);
                }
            }
        }
        seen == self.n
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.arrows {
            adj[i - 1].push(j - 1);
        }
        adj
    }

    /// True when two distinct oriented cycles are joined by an oriented path
    /// of length zero or more. Two distinct cycles sharing a vertex count.
    pub fn has_two_connected_cycles(&self) -> bool {
        let c = condense(&self.adjacency(), None);
        c.shapes.contains(&ComponentShape::ManyCycles) || c.max_cyclic_on_path >= 2
    }
}
