//! Words of the free monoid on generators `x_1..x_n`, the deg-lex order, and
//! the arrow predicates relating a generator to the support of a word.
//!
//! Words do not carry their alphabet size; callers validate at the boundary.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A generator index, `1..=n`.
pub type Letter = u8;

#[inline]
pub(crate) fn bit(x: Letter) -> u64 {
    1u64 << (x - 1)
}

/// Element of the free monoid. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|w|_x`.
    pub fn occurrences(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }

    pub fn support(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    pub fn support_mask(&self) -> u64 {
        support_mask(&self.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Checks that every letter lies in `1..=n`.
    pub fn check_alphabet(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&x| x == 0 || x as usize > n) {
            Some(&x) => Err(Error::LetterOutOfRange {
                letter: x as usize,
                n,
            }),
            None => Ok(()),
        }
    }

    /// Parses a literal: whitespace- or dot-separated indices (`1 2 1`,
    /// `1.2.1`), a run of letters `a..z` (`aba`), or a run of single digits
    /// (`121`). `ε` or an empty/blank string is the identity.
    pub fn parse(literal: &str) -> Result<Self> {
        let bad = |msg: &str| Error::WordLiteral {
            literal: literal.to_string(),
            msg: msg.to_string(),
        };
        let s = literal.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        let letter = |v: usize| -> Result<Letter> {
            if v == 0 || v > crate::digraph::MAX_VERTICES {
                Err(bad("index out of range"))
            } else {
                Ok(v as Letter)
            }
        };
        if s.contains(|c: char| c.is_whitespace() || c == '.') {
            return s
                .split(|c: char| c.is_whitespace() || c == '.')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| bad("expected an index"))
                        .and_then(letter)
                })
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        if s.chars().all(|c| c.is_ascii_lowercase()) {
            return Ok(Word(s.bytes().map(|b| b - b'a' + 1).collect()));
        }
        if s.chars().all(|c| c.is_ascii_digit()) {
            return s
                .bytes()
                .map(|b| letter((b - b'0') as usize))
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        Err(bad("expected indices, letters a..z, or digits"))
    }

    /// Letter rendering (`aba`); falls back to indices past `z`.
    pub fn to_letters(&self) -> String {
        if self.0.is_empty() {
            return "ε".into();
        }
        if self.0.iter().all(|&x| x <= 26) {
            self.0.iter().map(|&x| (b'a' + x - 1) as char).collect()
        } else {
            self.to_string()
        }
    }

    /// Renders with letters when `n <= 26`, indices otherwise.
    pub fn render(&self, n: usize) -> String {
        if n <= 26 {
            self.to_letters()
        } else {
            self.to_string()
        }
    }
}

/// Dot-separated indices, `ε` for the identity. Round-trips through
/// [`Word::parse`]; a lone index of two digits gets a trailing dot so it is
/// not read back as two generators.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{x}")?;
        }
        if self.0.len() == 1 && self.0[0] >= 10 {
            f.write_str(".")?;
        }
        Ok(())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

pub(crate) fn support_mask(letters: &[Letter]) -> u64 {
    letters.iter().fold(0, |m, &x| m | bit(x))
}

/// Total order on generators, given as ranks. Rank 0 is the smallest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenOrder {
    rank: Vec<u8>,
}

impl GenOrder {
    /// `x_1 < x_2 < ... < x_n`.
    pub fn identity(n: usize) -> Self {
        GenOrder {
            rank: (0..n as u8).collect(),
        }
    }

    /// Builds an order from the generators listed smallest first.
    pub fn from_ascending(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![u8::MAX; n];
        for (r, &x) in order.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::GenOrder(format!("generator {x} not in 1..={n}")));
            }
            if rank[x - 1] != u8::MAX {
                return Err(Error::GenOrder(format!("generator {x} listed twice")));
            }
            rank[x - 1] = r as u8;
        }
        Ok(GenOrder { rank })
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| r as usize == i)
    }

    #[inline]
    pub fn rank(&self, x: Letter) -> u8 {
        self.rank[x as usize - 1]
    }

    /// Generators smallest first.
    pub fn ascending(&self) -> Vec<Letter> {
        let mut xs: Vec<Letter> = (1..=self.n() as Letter).collect();
        xs.sort_by_key(|&x| self.rank(x));
        xs
    }

    /// `x < y` in this order.
    #[inline]
    pub fn less(&self, x: Letter, y: Letter) -> bool {
        self.rank(x) < self.rank(y)
    }

    /// Degree-lexicographic comparison: shorter first, then letterwise.
    pub fn deglex(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            u.iter()
                .zip(v)
                .map(|(&a, &b)| self.rank(a).cmp(&self.rank(b)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

/// Deg-lex comparison of two words under `ord`.
pub fn deglex_compare(u: &Word, v: &Word, ord: &GenOrder) -> Ordering {
    ord.deglex(u.letters(), v.letters())
}

/// `w ↛ t`: `t` does not occur in `w` and no letter of `w` has an arrow into `t`.
pub fn not_to(w: &[Letter], t: Letter, g: &Digraph) -> bool {
    support_mask(w) & (bit(t) | g.in_mask(t as usize)) == 0
}

/// `t ↛ w`: `t` does not occur in `w` and `t` has no arrow into a letter of `w`.
pub fn not_from(t: Letter, w: &[Letter], g: &Digraph) -> bool {
    support_mask(w) & (bit(t) | g.out_mask(t as usize)) == 0
}

/// `t ↮ w`: both [`not_to`] and [`not_from`].
pub fn disconnected(t: Letter, w: &[Letter], g: &Digraph) -> bool {
    support_mask(w) & closed_neighbourhood(t, g) == 0
}

/// `t` together with every vertex joined to it by an arrow in either direction.
#[inline]
pub(crate) fn closed_neighbourhood(t: Letter, g: &Digraph) -> u64 {
    bit(t) | g.in_mask(t as usize) | g.out_mask(t as usize)
}

/// Number of words of length exactly `len` over `n` letters.
pub fn words_of_length_count(n: usize, len: usize) -> u128 {
    (n as u128).pow(len as u32)
}

/// Number of words of length at most `len` over `n` letters.
pub fn words_up_to_count(n: usize, len: usize) -> u128 {
    (0..=len).map(|k| words_of_length_count(n, k)).sum()
}

/// The `index`-th word of length `len` in lexicographic order of indices
/// (base-`n` digits, most significant first).
pub fn word_at(n: usize, len: usize, mut index: u64) -> Word {
    let mut letters = vec![0 as Letter; len];
    for slot in letters.iter_mut().rev() {
        *slot = (index % n as u64) as Letter + 1;
        index /= n as u64;
    }
    Word(letters)
}

/// All words of length `len` over `n` letters in lexicographic index order.
pub fn words_of_length(n: usize, len: usize) -> impl Iterator<Item = Word> {
    let count = words_of_length_count(n, len) as u64;
    (0..count).map(move |i| word_at(n, len, i))
}
