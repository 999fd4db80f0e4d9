//! Seeded random sampling of words, vectors and matrices for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extend::ExtElement;
use crate::fgword::{Basis, Letter, Word};
use crate::glsemi::{IntMatrix, QElement};
use crate::symgen::{alphabet_pm, interpret_tokens, Alphabet, SymToken};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const MAX_WORD_LEN: usize = 6;
pub const VECTOR_BOUND: i64 = 3;

/// A deterministic sampler; the same seed always yields the same stream.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A sampler for a sub-stream, so that independent cases do not share state.
    pub fn fork(seed: u64, stream: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        *items.choose(&mut self.rng).expect("nonempty choice set")
    }

    /// A word of length in [min_len, max_len] over the given alphabet and inverses; not reduced.
    pub fn tokens(&mut self, kind: Alphabet, n: usize, min_len: usize, max_len: usize) -> Vec<SymToken> {
        let letters = alphabet_pm(kind, n).expect("alphabet for sampled rank");
        let len = self.rng.gen_range(min_len..=max_len);
        (0..len).map(|_| self.pick(&letters)).collect()
    }

    pub fn a_word(&mut self, n: usize) -> Vec<SymToken> {
        self.tokens(Alphabet::A, n, 0, MAX_WORD_LEN)
    }

    pub fn z_word(&mut self, n: usize) -> Vec<SymToken> {
        self.tokens(Alphabet::Z, n, 0, MAX_WORD_LEN)
    }

    pub fn vector(&mut self, n: usize, bound: i64) -> Vec<i64> {
        (0..n).map(|_| self.range(-bound, bound)).collect()
    }

    /// (z, a) with z in [-3, 3]^n and a the value of a random S_A-word.
    pub fn q_element(&mut self, n: usize) -> QElement {
        let a = interpret_tokens(&self.a_word(n), Basis { n, k: 0 }).expect("S_A word at rank n");
        QElement::new(self.vector(n, VECTOR_BOUND), a).expect("sampled quotient element")
    }

    /// A kernel automorphism given by a random S_K-word of length at most 3.
    pub fn kernel_element(&mut self, n: usize) -> crate::Endo {
        let w = self.tokens(Alphabet::K, n, 0, 3);
        interpret_tokens(&w, Basis { n, k: 1 }).expect("S_K word at rank n")
    }

    pub fn ext_element(&mut self, n: usize) -> ExtElement {
        let k = self.kernel_element(n);
        ExtElement::new(k, self.q_element(n)).expect("matching ranks")
    }

    /// A reduced word in the free group on `basis` of length at most `max_len`.
    pub fn free_word(&mut self, basis: Basis, max_len: usize) -> Word {
        let gens: Vec<_> = basis.gens().collect();
        let len = self.rng.gen_range(0..=max_len);
        let letters: Vec<Letter> = (0..len).map(|_| Letter::new(self.pick(&gens), self.rng.gen())).collect();
        Word::reduce(basis, letters).expect("letters drawn from basis")
    }

    /// A random unimodular n×n matrix with entries in [-bound, bound], built from
    /// elementary row operations that keep the bound.
    pub fn unimodular(&mut self, n: usize, bound: i64) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for _ in 0..4 * n {
            let i = self.rng.gen_range(0..n);
            let op = self.rng.gen_range(0..3);
            let mut next = m.clone();
            match op {
                0 if n > 1 => {
                    let mut j = self.rng.gen_range(0..n - 1);
                    if j >= i {
                        j += 1;
                    }
                    let s = if self.rng.gen() { 1 } else { -1 };
                    for c in 0..n {
                        next.set(i, c, m.get(i, c) + s * m.get(j, c));
                    }
                }
                1 if n > 1 => {
                    let j = self.rng.gen_range(0..n);
                    for c in 0..n {
                        next.set(i, c, m.get(j, c));
                        next.set(j, c, m.get(i, c));
                    }
                }
                _ => {
                    for c in 0..n {
                        next.set(i, c, -m.get(i, c));
                    }
                }
            }
            if (0..n).all(|r| (0..n).all(|c| next.get(r, c).abs() <= bound)) {
                m = next;
            }
        }
        m
    }

    /// A random element of the stabilizer of the last basis vector in GL_{n+1}(Z),
    /// with entries in [-bound, bound].
    pub fn stabilizer(&mut self, n: usize, bound: i64) -> IntMatrix {
        let hat = self.unimodular(n, bound);
        let bar = self.vector(n, bound);
        let mut m = IntMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, hat.get(i, j));
            }
            m.set(n, i, bar[i]);
        }
        m.set(n, n, 1);
        m
    }
}
