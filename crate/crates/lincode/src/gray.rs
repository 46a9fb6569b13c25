//! Constant-weight (revolving-door) Gray sequences.
//!
//! For fixed `k` and `t`, the weight-`t` words of length `k` are visited in
//! the order induced by the standard binary reflected Gray code: consecutive
//! words differ in exactly two positions (one bit leaves, one enters), so a
//! walk can maintain any XOR-accumulated quantity with two operations per
//! step. The sequence satisfies the reflected recursion
//!
//! ```text
//! S(k,t) = S(k-1,t)  ++  reverse(S(k-1,t-1)) · {k}
//! ```
//!
//! starting at support {1,…,t} and ending at {1,…,t-1,k}. The successor rule
//! implemented here is memoryless on the sorted support array, which is what
//! makes mid-sequence resumption from [`unrank`] output exact: a
//! [`GrayState`] seeded at rank `r` continues precisely as a from-the-start
//! walk would after `r − 1` steps.
//!
//! Ranks are 1-based and run to `binomial(k, t)`.

use crate::error::{Error, Result};
use crate::gf2::Codeword;

/// Widest word the sequence machinery accepts; ranks and binomials stay in
/// `u64` below this width.
pub const MAX_SEQUENCE_WIDTH: usize = 64;

/// One revolving-door step: the 1-based position whose bit turned off and the
/// position whose bit turned on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapDelta {
    pub out_pos: usize,
    pub in_pos: usize,
}

/// Exact binomial coefficient in `u64`; arguments up to 64 never overflow.
#[must_use]
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

fn check_params(k: usize, t: usize) -> Result<()> {
    if k < 1 || t > k {
        return Err(Error::BadWeightParams { k, t });
    }
    if k > MAX_SEQUENCE_WIDTH {
        return Err(Error::WordWidthLimit {
            k,
            limit: MAX_SEQUENCE_WIDTH,
        });
    }
    Ok(())
}

/// Resumable walk state: the current support (ascending, 1-based), the packed
/// word, and the 1-based rank within the sequence.
///
/// The walk direction at support level `j` alternates with `t - j`, exactly
/// as the reflected recursion nests, so no auxiliary registers are needed;
/// [`GrayState::advance`] reads everything it needs off the support array.
#[derive(Clone, Debug)]
pub struct GrayState {
    k: usize,
    t: usize,
    support: Vec<usize>,
    word: Codeword,
    rank: u64,
}

impl GrayState {
    /// State at rank 1: support {1,…,t}.
    pub fn initial(k: usize, t: usize) -> Result<Self> {
        check_params(k, t)?;
        let support: Vec<usize> = (1..=t).collect();
        let word = Codeword::from_support(k, &support)?;
        Ok(GrayState {
            k,
            t,
            support,
            word,
            rank: 1,
        })
    }

    /// State at an arbitrary rank, seeded via [`unrank`] in O(k) arithmetic.
    pub fn from_rank(k: usize, t: usize, rank: u64) -> Result<Self> {
        let support = unrank_support(k, t, rank)?;
        let word = Codeword::from_support(k, &support)?;
        Ok(GrayState {
            k,
            t,
            support,
            word,
            rank,
        })
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.k
    }

    #[must_use]
    pub fn t(&self) -> usize {
        self.t
    }

    /// Current word (length `k`).
    #[must_use]
    pub fn word(&self) -> &Codeword {
        &self.word
    }

    /// Current support, ascending 1-based positions.
    #[must_use]
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// 1-based rank of the current word.
    #[must_use]
    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// Moves to the successor and reports which two positions flipped, or
    /// `None` when the current word is the last of the sequence (the state is
    /// left unchanged in that case).
    pub fn advance(&mut self) -> Option<SwapDelta> {
        let t = self.t;
        if t == 0 {
            return None;
        }
        let (k, x) = (self.k, &mut self.support);

        // Find the move level: the lowest level not yet at the end of its
        // (direction-alternating) range, given everything below it is. A
        // level j is exhausted when the prefix x_1..x_{j-1} is the identity
        // and x_j sits at its directional extreme.
        let mut ident = true;
        let mut level = 0;
        for j in 1..=t {
            let xj = x[j - 1];
            let plus = (t - j) % 2 == 0;
            let stuck = if plus {
                let mj = if j == t { k } else { x[j] - 1 };
                ident && xj == mj
            } else {
                ident && xj == j
            };
            if !stuck {
                level = j;
                break;
            }
            ident = ident && xj == j;
        }
        if level == 0 {
            return None;
        }

        let j = level;
        let plus = (t - j) % 2 == 0;
        let (out, inn);
        if j == 1 {
            out = x[0];
            x[0] = if plus { x[0] + 1 } else { x[0] - 1 };
            inn = x[0];
        } else if plus {
            // x_{j-1} slides from j-1 up to x_j, and x_j steps up by one.
            out = j - 1;
            x[j - 2] = x[j - 1];
            x[j - 1] += 1;
            inn = x[j - 1];
        } else {
            // x_j steps down onto old x_{j-1}, which drops back to j-1.
            out = x[j - 1];
            x[j - 1] -= 1;
            x[j - 2] = j - 1;
            inn = j - 1;
        }
        self.word.flip_coord(out);
        self.word.flip_coord(inn);
        self.rank += 1;
        Some(SwapDelta {
            out_pos: out,
            in_pos: inn,
        })
    }
}

/// Number of words in the `(k, t)` sequence.
pub fn sequence_len(k: usize, t: usize) -> Result<u64> {
    check_params(k, t)?;
    Ok(binomial(k as u64, t as u64))
}

/// Iterator over the full sequence of weight-`t` words.
#[derive(Debug)]
pub struct Words {
    state: GrayState,
    pending_first: bool,
}

impl Iterator for Words {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        if self.pending_first {
            self.pending_first = false;
            return Some(self.state.word().clone());
        }
        self.state.advance().map(|_| self.state.word().clone())
    }
}

/// All weight-`t` words of length `k` in revolving-door order.
///
/// `t = 0` degenerates to the single all-zero word.
pub fn constant_weight_sequence(k: usize, t: usize) -> Result<Words> {
    Ok(Words {
        state: GrayState::initial(k, t)?,
        pending_first: true,
    })
}

/// Iterator over the `binomial(k,t) − 1` swap deltas of the sequence.
#[derive(Debug)]
pub struct Deltas {
    state: GrayState,
}

impl Iterator for Deltas {
    type Item = SwapDelta;

    fn next(&mut self) -> Option<SwapDelta> {
        self.state.advance()
    }
}

/// The swap-pair stream of the `(k, t)` walk, in order.
pub fn swap_deltas(k: usize, t: usize) -> Result<Deltas> {
    Ok(Deltas {
        state: GrayState::initial(k, t)?,
    })
}

fn unrank_support(k: usize, t: usize, rank: u64) -> Result<Vec<usize>> {
    check_params(k, t)?;
    let count = binomial(k as u64, t as u64);
    if rank < 1 || rank > count {
        return Err(Error::RankOutOfRange { rank, count });
    }
    // Peel support levels from the top. At each level the sequence is a
    // concatenation of blocks indexed by the level's largest element v; the
    // block order follows the level direction (ascending v when forward,
    // descending when reflected), and each block has C(v-1, j-1) elements.
    let mut remaining = rank - 1; // 0-based offset within the current level
    let mut support = vec![0usize; t];
    let mut m = k; // current universe bound
    let mut plus = true; // level t is always forward
    for j in (1..=t).rev() {
        let ju = j as u64;
        let v = if plus {
            // prefix before block v holds C(v-1, j) elements
            let mut v = m;
            while v > j && binomial(v as u64 - 1, ju) > remaining {
                v -= 1;
            }
            remaining -= binomial(v as u64 - 1, ju);
            v
        } else {
            // blocks run v = m down to j; prefix before block v holds
            // C(m, j) - C(v, j) elements
            let target = binomial(m as u64, ju) - remaining;
            let mut v = m;
            while v > j && binomial(v as u64 - 1, ju) >= target {
                v -= 1;
            }
            remaining -= binomial(m as u64, ju) - binomial(v as u64, ju);
            v
        };
        support[j - 1] = v;
        m = v - 1;
        plus = !plus;
    }
    Ok(support)
}

/// The word at 1-based `rank` of the `(k, t)` sequence, in O(k) arithmetic
/// (no predecessor enumeration).
pub fn unrank(k: usize, t: usize, rank: u64) -> Result<Codeword> {
    let support = unrank_support(k, t, rank)?;
    Codeword::from_support(k, &support)
}

/// Rank (1-based) of a word within the weight-`t` sequence of its length.
/// The word's weight must equal `t`.
pub fn rank(word: &Codeword, t: usize) -> Result<u64> {
    let k = word.len();
    check_params(k, t)?;
    let actual = word.weight();
    if actual != t {
        return Err(Error::WeightMismatch {
            expected: t,
            actual,
        });
    }
    let support = word.support();
    let mut r = 1u64;
    let mut m = k as u64;
    let mut plus = true;
    for j in (1..=t).rev() {
        let (ju, x) = (j as u64, support[j - 1] as u64);
        if plus {
            r += binomial(x - 1, ju);
        } else {
            r += binomial(m, ju) - binomial(x, ju);
        }
        m = x - 1;
        plus = !plus;
    }
    Ok(r)
}
