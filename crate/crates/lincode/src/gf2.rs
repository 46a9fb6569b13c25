//! Bit-packed linear algebra over GF(2).
//!
//! A [`Codeword`] packs `n` coordinates into 64-bit words with coordinate 1 in
//! the least significant bit of the first word. A [`GeneratorMatrix`] is a
//! list of `k` independent rows of length `n`; independence is validated
//! eagerly so every algorithm downstream may assume full rank.
//!
//! Coordinates and row indices are 1-based everywhere in the public API,
//! matching the support-set notation used throughout the rest of the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Default dimension cap for full 2^k codeword enumeration
/// (weight enumerators, minimum distance).
pub const DEFAULT_ENUM_LIMIT_K: usize = 28;

const WORD_BITS: usize = 64;

/// A binary vector of fixed length `n ≥ 1`, bit-packed.
///
/// Coordinate `i` (1-based) lives at bit `(i-1) % 64` of word `(i-1) / 64`.
/// Unused high bits of the last word are kept zero so that equality, hashing
/// and popcounts can operate on the raw words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    len: usize,
    words: Vec<u64>,
}

impl Codeword {
    /// The all-zero word of length `n`.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    #[must_use]
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "codeword length must be at least 1");
        Codeword {
            len: n,
            words: vec![0; n.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a word of length `n` with ones exactly at the given 1-based
    /// coordinates.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut w = Codeword::zero(n);
        for &i in support {
            if i == 0 || i > n {
                return Err(Error::BitIndexOutOfRange { index: i, len: n });
            }
            w.words[(i - 1) / WORD_BITS] |= 1u64 << ((i - 1) % WORD_BITS);
        }
        Ok(w)
    }

    /// Parses a row of `0`/`1` characters, leftmost character = coordinate 1.
    pub fn from_row_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty row".into(),
            });
        }
        let mut w = Codeword::zero(s.len());
        for (idx, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.words[idx / WORD_BITS] |= 1u64 << (idx % WORD_BITS),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid character {other:?} in row"),
                    })
                }
            }
        }
        Ok(w)
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false // length is always ≥ 1
    }

    /// Value of coordinate `i` (1-based).
    ///
    /// # Panics
    /// Panics if `i` is 0 or greater than the length.
    #[must_use]
    pub fn coord(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of 1..={}", self.len);
        self.words[(i - 1) / WORD_BITS] >> ((i - 1) % WORD_BITS) & 1 == 1
    }

    /// Sets coordinate `i` (1-based) to `bit`.
    ///
    /// # Panics
    /// Panics if `i` is 0 or greater than the length.
    pub fn set_coord(&mut self, i: usize, bit: bool) {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of 1..={}", self.len);
        let mask = 1u64 << ((i - 1) % WORD_BITS);
        if bit {
            self.words[(i - 1) / WORD_BITS] |= mask;
        } else {
            self.words[(i - 1) / WORD_BITS] &= !mask;
        }
    }

    /// Flips coordinate `i` (1-based).
    pub fn flip_coord(&mut self, i: usize) {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of 1..={}", self.len);
        self.words[(i - 1) / WORD_BITS] ^= 1u64 << ((i - 1) % WORD_BITS);
    }

    /// Hamming weight.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Ascending 1-based coordinates of the ones.
    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b + 1);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Coordinate-wise XOR; errors on length mismatch.
    pub fn xor(&self, other: &Codeword) -> Result<Codeword> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let mut out = self.clone();
        out.xor_in_place(other);
        Ok(out)
    }

    /// Coordinate-wise AND; errors on length mismatch.
    pub fn and(&self, other: &Codeword) -> Result<Codeword> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(Codeword {
            len: self.len,
            words,
        })
    }

    /// In-place XOR used by the enumeration hot paths.
    ///
    /// # Panics
    /// Panics on length mismatch.
    pub fn xor_in_place(&mut self, other: &Codeword) {
        assert_eq!(self.len, other.len, "xor_in_place length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard inner product mod 2; `true` means the supports overlap in an
    /// odd number of coordinates. Errors on length mismatch.
    pub fn inner_product(&self, other: &Codeword) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let parity: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1;
        Ok(parity == 1)
    }

    /// The word as `u64`, usable when `n ≤ 64`.
    ///
    /// # Panics
    /// Panics if the length exceeds 64.
    #[must_use]
    pub fn as_u64(&self) -> u64 {
        assert!(self.len <= 64, "as_u64 requires length ≤ 64");
        self.words[0]
    }

    /// Renders the row-file form: coordinate 1 leftmost.
    #[must_use]
    pub fn to_row_string(&self) -> String {
        (1..=self.len)
            .map(|i| if self.coord(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_row_string())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({})", self.to_row_string())
    }
}

/// XOR of the selected rows (1-based indices). An empty index set yields the
/// zero word; `rows` itself must be non-empty so the length is known.
pub fn xor_combine(rows: &[Codeword], indices: &[usize]) -> Result<Codeword> {
    let Some(first) = rows.first() else {
        return Err(Error::InvalidDimensions { n: 0, k: 0 });
    };
    let mut acc = Codeword::zero(first.len());
    for &i in indices {
        if i == 0 || i > rows.len() {
            return Err(Error::RowIndexOutOfRange {
                index: i,
                rows: rows.len(),
            });
        }
        acc = acc.xor(&rows[i - 1])?;
    }
    Ok(acc)
}

/// Row-reduced echelon form of a set of rows: the nonzero canonical rows in
/// pivot order, the rank, and the 1-based pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Codeword>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces arbitrary rows (all the same length) to canonical RREF.
/// Zero rows are dropped, so `rows.len() == rank` on return.
pub fn rref_rows(rows: &[Codeword]) -> Result<Rref> {
    let Some(first) = rows.first() else {
        return Ok(Rref {
            rows: Vec::new(),
            rank: 0,
            pivots: Vec::new(),
        });
    };
    let n = first.len();
    for r in rows {
        if r.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: r.len(),
            });
        }
    }
    let mut work: Vec<Codeword> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 1..=n {
        let Some(src) = (next_row..work.len()).find(|&r| work[r].coord(col)) else {
            continue;
        };
        work.swap(next_row, src);
        let pivot_row = work[next_row].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r != next_row && row.coord(col) {
                row.xor_in_place(&pivot_row);
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == work.len() {
            break;
        }
    }
    work.truncate(next_row);
    Ok(Rref {
        rows: work,
        rank: next_row,
        pivots,
    })
}

/// Weight distribution of a code: `counts[w]` is the number of codewords of
/// Hamming weight `w`, for `w` in `0..=n`. Always includes the zero word, and
/// the counts sum to 2^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    counts: Vec<u64>,
}

impl WeightEnumerator {
    #[must_use]
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Smallest positive weight with a nonzero count, i.e. the minimum
    /// distance; `None` for the zero code.
    #[must_use]
    pub fn min_positive_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }
}

/// A `k × n` generator matrix over GF(2) whose rows form a basis.
///
/// Construction via [`GeneratorMatrix::new`] validates `1 ≤ k ≤ n`, uniform
/// row length, and full rank; the rank check is eager so rank deficiency is
/// caught at the boundary rather than deep inside an enumeration. The `k = 0`
/// degenerate (the zero code) arises only as the dual of the full space and
/// is produced by [`GeneratorMatrix::empty`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    n: usize,
    rows: Vec<Codeword>,
}

impl GeneratorMatrix {
    pub fn new(n: usize, rows: Vec<Codeword>) -> Result<Self> {
        let k = rows.len();
        if k < 1 || k > n {
            return Err(Error::InvalidDimensions { n, k });
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: r.len(),
                });
            }
        }
        let rank = rref_rows(&rows)?.rank;
        if rank != k {
            return Err(Error::RankDeficient { rank, k });
        }
        Ok(GeneratorMatrix { n, rows })
    }

    /// The 0-row matrix describing the zero code of length `n`. Only the dual
    /// of the full space produces this; most operations reject it upstream.
    #[must_use]
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1);
        GeneratorMatrix { n, rows: Vec::new() }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn rows(&self) -> &[Codeword] {
        &self.rows
    }

    /// Row `i`, 1-based.
    ///
    /// # Panics
    /// Panics if `i` is 0 or greater than `k`.
    #[must_use]
    pub fn row(&self, i: usize) -> &Codeword {
        assert!(i >= 1 && i <= self.rows.len(), "row {i} out of 1..={}", self.rows.len());
        &self.rows[i - 1]
    }

    /// Canonical row-reduced echelon form (rank is always `k` here).
    #[must_use]
    pub fn rref(&self) -> Rref {
        rref_rows(&self.rows).expect("validated rows")
    }

    /// Whether both matrices span the same code.
    pub fn same_row_space(&self, other: &GeneratorMatrix) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.rref().rows == other.rref().rows)
    }

    /// Generator matrix of the dual code, built from the RREF: for every free
    /// column `f` there is one dual row with a 1 at `f` and the column-`f`
    /// entries of the reduced rows at the pivot positions. Returns the empty
    /// matrix when `k = n`.
    #[must_use]
    pub fn dual(&self) -> GeneratorMatrix {
        let reduced = self.rref();
        let n = self.n;
        let mut is_pivot = vec![false; n + 1];
        for &p in &reduced.pivots {
            is_pivot[p] = true;
        }
        let mut dual_rows = Vec::with_capacity(n - self.k());
        for f in 1..=n {
            if is_pivot[f] {
                continue;
            }
            let mut row = Codeword::zero(n);
            row.set_coord(f, true);
            for (i, &p) in reduced.pivots.iter().enumerate() {
                if reduced.rows[i].coord(f) {
                    row.set_coord(p, true);
                }
            }
            dual_rows.push(row);
        }
        if dual_rows.is_empty() {
            GeneratorMatrix::empty(n)
        } else {
            GeneratorMatrix::new(n, dual_rows).expect("dual rows are independent by construction")
        }
    }

    /// All pairwise inner products (including self) vanish.
    #[must_use]
    pub fn is_self_orthogonal(&self) -> bool {
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i..] {
                if a.inner_product(b).expect("uniform length") {
                    return false;
                }
            }
        }
        true
    }

    /// Self-dual ⇔ `n = 2k` and the rows are self-orthogonal.
    #[must_use]
    pub fn is_self_dual(&self) -> bool {
        self.n == 2 * self.k() && self.is_self_orthogonal()
    }

    /// Weight distribution by full 2^k enumeration, walking subsets in
    /// reflected Gray order so each step costs one row XOR. Refuses `k`
    /// beyond `max_k` (see [`DEFAULT_ENUM_LIMIT_K`]).
    pub fn weight_enumerator(&self, max_k: usize) -> Result<WeightEnumerator> {
        let k = self.k();
        if k > max_k || k >= 64 {
            return Err(Error::EnumerationLimit {
                k,
                limit: max_k.min(63),
            });
        }
        let mut counts = vec![0u64; self.n + 1];
        counts[0] = 1;
        let mut acc = Codeword::zero(self.n);
        for m in 1u64..(1u64 << k) {
            let j = m.trailing_zeros() as usize;
            acc.xor_in_place(&self.rows[j]);
            counts[acc.weight()] += 1;
        }
        Ok(WeightEnumerator { counts })
    }
}

/// Parses the generator-matrix text format: optional `#` comment lines and
/// blank lines, then a header `n k`, then `k` rows of exactly `n` characters
/// from `{0,1}` (coordinate 1 leftmost). Errors carry 1-based line numbers.
pub fn parse_generator_matrix(text: &str) -> Result<GeneratorMatrix> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    parse_matrix_lines(&lines)
}

/// Shared block parser: `lines` holds (1-based line number, content) with
/// comments and blanks already stripped.
pub(crate) fn parse_matrix_lines(lines: &[(usize, &str)]) -> Result<GeneratorMatrix> {
    let Some(&(header_no, header)) = lines.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing matrix header".into(),
        });
    };
    let mut parts = header.split_whitespace();
    let (n, k) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => {
            let n = a.parse::<usize>().map_err(|_| Error::Parse {
                line: header_no,
                msg: format!("invalid n {a:?}"),
            })?;
            let k = b.parse::<usize>().map_err(|_| Error::Parse {
                line: header_no,
                msg: format!("invalid k {b:?}"),
            })?;
            (n, k)
        }
        _ => {
            return Err(Error::Parse {
                line: header_no,
                msg: format!("expected header \"n k\", found {header:?}"),
            })
        }
    };
    if n < 1 || k < 1 || k > n {
        return Err(Error::Parse {
            line: header_no,
            msg: format!("invalid dimensions n={n}, k={k}"),
        });
    }
    if lines.len() - 1 < k {
        return Err(Error::Parse {
            line: lines.last().map_or(header_no, |&(no, _)| no),
            msg: format!("expected {k} rows, found {}", lines.len() - 1),
        });
    }
    if lines.len() - 1 > k {
        return Err(Error::Parse {
            line: lines[k + 1].0,
            msg: format!("expected {k} rows, found {}", lines.len() - 1),
        });
    }
    let mut rows = Vec::with_capacity(k);
    for &(no, l) in &lines[1..=k] {
        if l.len() != n {
            return Err(Error::Parse {
                line: no,
                msg: format!("row has {} characters, expected {n}", l.len()),
            });
        }
        let row = Codeword::from_row_str(l).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: no, msg },
            other => other,
        })?;
        rows.push(row);
    }
    GeneratorMatrix::new(n, rows).map_err(|e| match e {
        Error::RankDeficient { rank, k } => Error::Parse {
            line: header_no,
            msg: format!("rows are dependent: rank {rank} < k = {k}"),
        },
        other => other,
    })
}

/// Renders the matrix in the same text format `parse_generator_matrix` reads.
#[must_use]
pub fn render_generator_matrix(m: &GeneratorMatrix) -> String {
    let mut out = format!("{} {}\n", m.n(), m.k());
    for r in m.rows() {
        out.push_str(&r.to_row_string());
        out.push('\n');
    }
    out
}
