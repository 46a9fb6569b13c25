//! Permutation equivalence of binary codes, and purge-style deduplication of
//! code collections.
//!
//! Two [n,k] codes are equivalent when some coordinate permutation maps one
//! row space onto the other. [`are_equivalent`] decides this with a
//! backtracking search over column assignments, pruned by per-column
//! signatures built from the low-weight codeword classes; every positive
//! answer carries a witness permutation that has been verified by re-encoding
//! (RREF comparison), and every negative answer is exhaustive within the
//! signature-consistent assignment space, which contains all true witnesses.
//!
//! The search is complete but intentionally bounded: instances beyond the
//! configured n/k limits are refused with an explicit error rather than
//! attempted.
//!
//! [`reduce_set`] and [`eq_sets`] implement the purge operations used by the
//! design-driven deduplication scheduler: within-set reduction keeps the
//! first representative of each class, and cross-set purging removes from the
//! target every record equivalent to something in the reference set.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{
    parse_matrix_lines, render_generator_matrix, rref_rows, Codeword, GeneratorMatrix,
    WeightEnumerator,
};

/// Refusal thresholds for the equivalence search.
#[derive(Clone, Debug)]
pub struct EquivLimits {
    /// Largest code length attempted.
    pub max_n: usize,
    /// Largest dimension attempted (bounds codeword enumeration).
    pub max_k: usize,
}

impl Default for EquivLimits {
    fn default() -> Self {
        EquivLimits { max_n: 24, max_k: 20 }
    }
}

/// A coordinate permutation on {1, …, n}: coordinate i of the input becomes
/// coordinate `image[i-1]` of the output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// Builds from an image table (`image[i-1]` = where coordinate i goes);
    /// the table must be a bijection on 1..=n.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("not a permutation image: {image:?}"),
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[must_use]
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_to_codeword(&self, w: &Codeword) -> Result<Codeword> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.n(),
            });
        }
        let mut out = Codeword::zero(w.len());
        for i in w.support() {
            out.set_coord(self.image[i - 1], true);
        }
        Ok(out)
    }

    /// Applies the permutation to every row; rank is preserved, so the result
    /// is again a valid generator matrix.
    pub fn apply_to_matrix(&self, m: &GeneratorMatrix) -> Result<GeneratorMatrix> {
        let rows: Result<Vec<Codeword>> =
            m.rows().iter().map(|r| self.apply_to_codeword(r)).collect();
        GeneratorMatrix::new(m.n(), rows?)
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Cheap necessary condition for equivalence, cached per record: length,
/// dimension, and the full weight enumerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantKey {
    pub n: usize,
    pub k: usize,
    pub enumerator: WeightEnumerator,
}

/// One labeled code in a collection. The invariant key is always recomputed
/// from the matrix, never read from input.
#[derive(Clone, Debug)]
pub struct CodeRecord {
    id: String,
    matrix: GeneratorMatrix,
    key: InvariantKey,
}

impl CodeRecord {
    pub fn new(id: impl Into<String>, matrix: GeneratorMatrix, limits: &EquivLimits) -> Result<Self> {
        let enumerator = matrix.weight_enumerator(limits.max_k)?;
        let key = InvariantKey {
            n: matrix.n(),
            k: matrix.k(),
            enumerator,
        };
        Ok(CodeRecord {
            id: id.into(),
            matrix,
            key,
        })
    }

    #[must_use]
    pub fn id(&self) -> &str {
        &self.id
    }

    #[must_use]
    pub fn matrix(&self) -> &GeneratorMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn invariant_key(&self) -> &InvariantKey {
        &self.key
    }
}

/// An ordered, uniquely-identified list of code records. Order is the
/// precedence used for purging: earlier records survive ties.
#[derive(Clone, Debug, Default)]
pub struct CodeSet {
    label: String,
    records: Vec<CodeRecord>,
}

impl CodeSet {
    pub fn new(label: impl Into<String>) -> Self {
        CodeSet {
            label: label.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CodeRecord) -> Result<()> {
        if self.records.iter().any(|r| r.id == record.id) {
            return Err(Error::DuplicateId {
                id: record.id.clone(),
            });
        }
        self.records.push(record);
        Ok(())
    }

    #[must_use]
    pub fn label(&self) -> &str {
        &self.label
    }

    #[must_use]
    pub fn records(&self) -> &[CodeRecord] {
        &self.records
    }

    #[must_use]
    pub fn into_records(self) -> Vec<CodeRecord> {
        self.records
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.records.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Counters for purge pipelines: candidate pairs examined (including pairs
/// dismissed by the invariant prefilter) and records removed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EqStats {
    pub pair_comparisons: u64,
    pub purges: u64,
}

/// Decides equivalence; `Some(permutation)` is a verified witness mapping
/// the row space of `a` onto the row space of `b`.
pub fn are_equivalent(
    a: &GeneratorMatrix,
    b: &GeneratorMatrix,
    limits: &EquivLimits,
) -> Result<Option<Permutation>> {
    check_limits(a, limits)?;
    check_limits(b, limits)?;
    if a.n() != b.n() || a.k() != b.k() {
        return Ok(None);
    }
    let ea = a.weight_enumerator(limits.max_k)?;
    let eb = b.weight_enumerator(limits.max_k)?;
    if ea != eb {
        return Ok(None);
    }
    equivalent_filtered(a, b, &ea)
}

fn check_limits(m: &GeneratorMatrix, limits: &EquivLimits) -> Result<()> {
    if m.n() > limits.max_n {
        return Err(Error::EquivLimit {
            what: "n".into(),
            value: m.n(),
            limit: limits.max_n,
        });
    }
    if m.k() > limits.max_k {
        return Err(Error::EquivLimit {
            what: "k".into(),
            value: m.k(),
            limit: limits.max_k,
        });
    }
    Ok(())
}

/// The search proper, after the (n, k, enumerator) prefilter has passed.
fn equivalent_filtered(
    a: &GeneratorMatrix,
    b: &GeneratorMatrix,
    enumerator: &WeightEnumerator,
) -> Result<Option<Permutation>> {
    let n = a.n();
    let rref_a = rref_rows(a.rows())?.rows;
    let rref_b = rref_rows(b.rows())?.rows;
    if rref_a == rref_b {
        return Ok(Some(Permutation::identity(n)));
    }

    // Pick the smallest nonzero weight classes as the signature base: small
    // enough to enumerate cheaply, structured enough to split columns.
    let mut classes: Vec<usize> = Vec::new();
    let mut total = 0u64;
    for (w, &count) in enumerator.counts().iter().enumerate() {
        if w == 0 || count == 0 {
            continue;
        }
        if !classes.is_empty() && (classes.len() >= 3 || total + count > 20_000) {
            break;
        }
        classes.push(w);
        total += count;
    }

    let words_a = collect_words(a, &classes);
    let words_b = collect_words(b, &classes);

    // Per-column signature: how many collected words of each class touch the
    // column. Equivalence preserves these multisets.
    let sig_a = signatures(n, &classes, &words_a);
    let sig_b = signatures(n, &classes, &words_b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(None);
    }

    // Candidate B-columns per A-column, and a rarest-first assignment order.
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| sig_b[j] == sig_a[i])
                .map(|j| j + 1)
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&i| (candidates[i - 1].len(), i));

    let b_class_sets: Vec<HashSet<u64>> = (0..classes.len())
        .map(|c| {
            words_b
                .iter()
                .filter(|(wc, _)| *wc == c)
                .map(|&(_, mask)| mask)
                .collect()
        })
        .collect();

    let mut search = Search {
        n,
        a,
        rref_b: &rref_b,
        order,
        candidates,
        used_b: vec![false; n],
        image: vec![0usize; n],
        word_class: words_a.iter().map(|&(c, _)| c).collect(),
        col_words: {
            let mut per_col: Vec<Vec<u32>> = vec![Vec::new(); n];
            for (wi, &(_, mask)) in words_a.iter().enumerate() {
                let mut m = mask;
                while m != 0 {
                    per_col[m.trailing_zeros() as usize].push(wi as u32);
                    m &= m - 1;
                }
            }
            per_col
        },
        remaining: words_a.iter().map(|&(_, mask)| mask.count_ones()).collect(),
        mapped: vec![0u64; words_a.len()],
        b_class_sets,
    };
    search.dfs(0)
}

/// All codewords of the chosen weight classes, as (class index, coordinate
/// mask) pairs, via one reflected-Gray walk over row subsets.
fn collect_words(m: &GeneratorMatrix, classes: &[usize]) -> Vec<(usize, u64)> {
    let k = m.k();
    let mut class_of = vec![usize::MAX; m.n() + 1];
    for (idx, &w) in classes.iter().enumerate() {
        class_of[w] = idx;
    }
    let mut out = Vec::new();
    let mut acc = Codeword::zero(m.n());
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        acc.xor_in_place(&m.rows()[flip]);
        let w = acc.weight();
        if class_of[w] != usize::MAX {
            out.push((class_of[w], acc.as_u64()));
        }
    }
    out
}

fn signatures(n: usize, classes: &[usize], words: &[(usize, u64)]) -> Vec<Vec<u32>> {
    let mut sig = vec![vec![0u32; classes.len()]; n];
    for &(c, mask) in words {
        let mut m = mask;
        while m != 0 {
            let col = m.trailing_zeros() as usize;
            sig[col][c] += 1;
            m &= m - 1;
        }
    }
    sig
}

struct Search<'a> {
    n: usize,
    a: &'a GeneratorMatrix,
    rref_b: &'a [Codeword],
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    used_b: Vec<bool>,
    image: Vec<usize>,
    word_class: Vec<usize>,
    col_words: Vec<Vec<u32>>,
    remaining: Vec<u32>,
    mapped: Vec<u64>,
    b_class_sets: Vec<HashSet<u64>>,
}

impl Search<'_> {
    fn dfs(&mut self, depth: usize) -> Result<Option<Permutation>> {
        if depth == self.n {
            let perm = Permutation::from_image(self.image.clone())?;
            let permuted = perm.apply_to_matrix(self.a)?;
            if rref_rows(permuted.rows())?.rows == self.rref_b {
                return Ok(Some(perm));
            }
            return Ok(None);
        }
        let a_col = self.order[depth];
        for ci in 0..self.candidates[a_col - 1].len() {
            let b_col = self.candidates[a_col - 1][ci];
            if self.used_b[b_col - 1] {
                continue;
            }
            if self.assign(a_col, b_col) {
                self.used_b[b_col - 1] = true;
                self.image[a_col - 1] = b_col;
                let hit = self.dfs(depth + 1)?;
                self.image[a_col - 1] = 0;
                self.used_b[b_col - 1] = false;
                if hit.is_some() {
                    // Leave bookkeeping dirty on the way out; the caller
                    // returns immediately.
                    return Ok(hit);
                }
            }
            self.unassign(a_col, b_col);
        }
        Ok(None)
    }

    /// Registers a→b on every tracked word; returns false when some word
    /// became fully mapped onto a non-codeword of its class in B.
    fn assign(&mut self, a_col: usize, b_col: usize) -> bool {
        let mut ok = true;
        for i in 0..self.col_words[a_col - 1].len() {
            let wi = self.col_words[a_col - 1][i] as usize;
            self.remaining[wi] -= 1;
            self.mapped[wi] |= 1u64 << (b_col - 1);
            if self.remaining[wi] == 0
                && !self.b_class_sets[self.word_class[wi]].contains(&self.mapped[wi])
            {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, a_col: usize, b_col: usize) {
        for i in 0..self.col_words[a_col - 1].len() {
            let wi = self.col_words[a_col - 1][i] as usize;
            self.remaining[wi] += 1;
            self.mapped[wi] &= !(1u64 << (b_col - 1));
        }
    }
}

/// Removes from `target` every record equivalent to some record of
/// `reference` (the purge operation). Survivor order is preserved.
pub fn eq_sets(
    reference: &CodeSet,
    target: CodeSet,
    limits: &EquivLimits,
    stats: &mut EqStats,
) -> Result<CodeSet> {
    let mut out = CodeSet::new(target.label.clone());
    for rec in target.records {
        let mut purged = false;
        for base in &reference.records {
            stats.pair_comparisons += 1;
            if base.key != rec.key {
                continue;
            }
            if are_equivalent(base.matrix(), rec.matrix(), limits)?.is_some() {
                purged = true;
                break;
            }
        }
        if purged {
            stats.purges += 1;
        } else {
            out.records.push(rec);
        }
    }
    Ok(out)
}

/// Within-set deduplication: keeps the first record of each equivalence
/// class, in set order.
pub fn reduce_set(set: CodeSet, limits: &EquivLimits, stats: &mut EqStats) -> Result<CodeSet> {
    let mut out = CodeSet::new(set.label.clone());
    for rec in set.records {
        let mut purged = false;
        for kept in &out.records {
            stats.pair_comparisons += 1;
            if kept.key != rec.key {
                continue;
            }
            if are_equivalent(kept.matrix(), rec.matrix(), limits)?.is_some() {
                purged = true;
                break;
            }
        }
        if purged {
            stats.purges += 1;
        } else {
            out.records.push(rec);
        }
    }
    Ok(out)
}

/// Parses a code-library file: generator-matrix blocks, each preceded by a
/// `name: <id>` line, separated by blank lines. `#` starts a comment.
pub fn parse_code_set(label: impl Into<String>, text: &str, limits: &EquivLimits) -> Result<CodeSet> {
    let mut set = CodeSet::new(label);
    let mut block: Vec<(usize, &str)> = Vec::new();
    let flush = |block: &mut Vec<(usize, &str)>, set: &mut CodeSet| -> Result<()> {
        if block.is_empty() {
            return Ok(());
        }
        let (name_line, first) = block[0];
        let id = first
            .strip_prefix("name:")
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .ok_or(Error::Parse {
                line: name_line,
                msg: "expected `name: <id>` before matrix block".into(),
            })?;
        let matrix = parse_matrix_lines(&block[1..])?;
        set.push(CodeRecord::new(id, matrix, limits)?)?;
        block.clear();
        Ok(())
    };
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            flush(&mut block, &mut set)?;
        } else {
            block.push((idx + 1, content));
        }
    }
    flush(&mut block, &mut set)?;
    Ok(set)
}

/// Renders a code set back to the library format.
#[must_use]
pub fn render_code_set(set: &CodeSet) -> String {
    let mut out = String::new();
    for (i, rec) in set.records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("name: {}\n", rec.id));
        out.push_str(&render_generator_matrix(rec.matrix()));
    }
    out
}
