#![allow(dead_code)]

use hkmon::word::{word_at, words_of_length_count};
use hkmon::{Digraph, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let code = rng.gen_range(0..Digraph::oriented_count(n));
    Digraph::from_code(n, code).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=n as u8)).collect())
}

/// Every word of length `<= max_len` over `n` letters.
pub fn all_words(n: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        (0..words_of_length_count(n, len) as u64).map(move |i| word_at(n, len, i))
    })
}

pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}
