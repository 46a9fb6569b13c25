//! Deterministic synthesis of small codes for tests, benchmarks and examples.
//!
//! Everything here is seeded and platform-stable, so golden values derived
//! from these generators stay valid.

use crate::gf2::{Codeword, GeneratorMatrix};

/// SplitMix64: tiny, stable, good enough for shuffling and test data.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    #[must_use]
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound > 0`), by rejection.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Uniformly random word of length `n`.
pub fn random_codeword(n: usize, rng: &mut SplitMix64) -> Codeword {
    let mut w = Codeword::zero(n);
    for i in 1..=n {
        if rng.next_u64() & 1 == 1 {
            w.set_coord(i, true);
        }
    }
    w
}

/// Random `[n, k]` generator matrix, full rank by rejection sampling.
///
/// # Panics
/// Panics unless `1 ≤ k ≤ n`.
pub fn random_full_rank_matrix(n: usize, k: usize, rng: &mut SplitMix64) -> GeneratorMatrix {
    assert!(k >= 1 && k <= n, "need 1 ≤ k ≤ n");
    loop {
        let rows: Vec<Codeword> = (0..k).map(|_| random_codeword(n, rng)).collect();
        if let Ok(m) = GeneratorMatrix::new(n, rows) {
            return m;
        }
    }
}

/// Fisher–Yates shuffle of `1..=n`, returned as the image list
/// `image[i-1] = π(i)`.
pub fn random_image_list(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        v.swap(i, j);
    }
    v
}

/// The `[n, 1]` repetition code.
#[must_use]
pub fn repetition_code(n: usize) -> GeneratorMatrix {
    let support: Vec<usize> = (1..=n).collect();
    let row = Codeword::from_support(n, &support).expect("in range");
    GeneratorMatrix::new(n, vec![row]).expect("rank 1")
}

/// The `[n, n]` full space generated by the identity.
#[must_use]
pub fn identity_code(n: usize) -> GeneratorMatrix {
    let rows: Vec<Codeword> = (1..=n)
        .map(|i| Codeword::from_support(n, &[i]).expect("in range"))
        .collect();
    GeneratorMatrix::new(n, rows).expect("identity is full rank")
}

/// The self-dual extended Hamming [8,4] code with weight distribution
/// 1 + 14z^4 + z^8 and minimum distance 4.
#[must_use]
pub fn extended_hamming_8_4() -> GeneratorMatrix {
    let rows = ["10000111", "01001011", "00101101", "00011110"]
        .iter()
        .map(|s| Codeword::from_row_str(s).expect("valid row"))
        .collect();
    GeneratorMatrix::new(8, rows).expect("full rank")
}
