//! 2-(v,k,λ) designs as schedules for block-wise code deduplication.
//!
//! Deduplicating v code sets pairwise needs C(v,2) set comparisons, but only
//! a few sets fit in memory at once. A 2-(v,k,1) design covers every pair of
//! points in exactly one block, so processing the sets block by block —
//! loading k sets, purging later ones against earlier ones, writing them back
//! — touches every set pair exactly once while never holding more than k sets
//! resident. The Fano plane (v=7, k=3) is the built-in instance; a
//! complete-pair design is always available as the fallback for any v.
//!
//! Purges accumulate globally: once a set has been reduced or purged in some
//! block, later blocks see the shrunken set. The schedule records this as a
//! "prime level" per participating set (i4 → i4′ → i4″ …), counting the prior
//! steps in which the set lost-or-could-lose members: its first participation
//! (where it is self-reduced) and every step where it ranks after another set
//! in its block.

use std::collections::HashSet;
use std::path::PathBuf;

use serde::Serialize;

use crate::equiv::{
    eq_sets, parse_code_set, reduce_set, render_code_set, CodeSet, EqStats, EquivLimits,
};
use crate::error::{Error, Result};
use crate::gray::binomial;

/// A block design: v points, blocks of `block_size` points, every pair of
/// points covered by exactly `lambda` blocks (when valid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub v: usize,
    pub block_size: usize,
    pub lambda: usize,
    /// 1-based point indices; order of blocks is the processing order.
    pub blocks: Vec<Vec<usize>>,
}

/// The 2-(7,3,1) design, blocks in the canonical processing order.
#[must_use]
pub fn fano_plane() -> Design {
    Design {
        v: 7,
        block_size: 3,
        lambda: 1,
        blocks: vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
    }
}

/// The trivial 2-(v,2,1) design: every pair is its own block, in
/// lexicographic order. Works for any v ≥ 1 (zero blocks when v = 1) but
/// concedes nothing on memory: residency equals the naive two sets.
#[must_use]
pub fn complete_pair_design(v: usize) -> Design {
    let mut blocks = Vec::new();
    for i in 1..=v {
        for j in (i + 1)..=v {
            blocks.push(vec![i, j]);
        }
    }
    Design {
        v,
        // v = 1 has no pairs and no blocks; a unit block size keeps the
        // degenerate design structurally valid.
        block_size: if v >= 2 { 2 } else { 1 },
        lambda: 1,
        blocks,
    }
}

/// Set-pair count when 2s sets are compared naively: C(2s,2) = s(2s−1).
#[must_use]
pub fn naive_pair_count(s: u64) -> u64 {
    s * (2 * s - 1)
}

/// Unordered pairs among v sets: C(v,2).
#[must_use]
pub fn all_pairs_count(v: u64) -> u64 {
    binomial(v, 2)
}

/// Checks the defining property: every t-subset of points lies in exactly
/// `lambda` blocks. Structural malformation (wrong block size, duplicate or
/// out-of-range points) is an error naming the offending block; a well-formed
/// design that simply fails the property returns `Ok(false)`.
pub fn validate_design(d: &Design, t: usize) -> Result<bool> {
    if d.v == 0 || d.block_size == 0 || d.block_size > d.v || d.lambda == 0 {
        return Err(Error::InvalidDesign {
            block: None,
            msg: format!(
                "parameters out of range: v={}, k={}, lambda={}",
                d.v, d.block_size, d.lambda
            ),
        });
    }
    for (i, block) in d.blocks.iter().enumerate() {
        if block.len() != d.block_size {
            return Err(Error::InvalidDesign {
                block: Some(i + 1),
                msg: format!("block has {} points, expected {}", block.len(), d.block_size),
            });
        }
        let distinct: HashSet<usize> = block.iter().copied().collect();
        if distinct.len() != block.len() {
            return Err(Error::InvalidDesign {
                block: Some(i + 1),
                msg: "block repeats a point".into(),
            });
        }
        if let Some(&p) = block.iter().find(|&&p| p < 1 || p > d.v) {
            return Err(Error::InvalidDesign {
                block: Some(i + 1),
                msg: format!("point {p} outside 1..={}", d.v),
            });
        }
    }
    if t == 0 {
        return Err(Error::InvalidDesign {
            block: None,
            msg: "subset size t must be positive".into(),
        });
    }
    if t > d.v {
        // No t-subsets exist; the coverage property holds vacuously.
        return Ok(true);
    }
    // Brute force over all C(v,t) point subsets.
    let mut subset: Vec<usize> = (1..=t).collect();
    loop {
        let covered = d
            .blocks
            .iter()
            .filter(|b| subset.iter().all(|p| b.contains(p)))
            .count();
        if covered != d.lambda {
            return Ok(false);
        }
        let mut i = t;
        while i >= 1 && subset[i - 1] == d.v - t + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..t {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(true)
}

/// One set's appearance in a step, annotated with its prime level *before*
/// the step runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleEntry {
    /// 1-based set index (design point).
    pub set_index: usize,
    /// Number of earlier steps in which this set underwent reduction.
    pub prime_level: usize,
}

/// One block's worth of work: compare all pairs among `entries`, later
/// entries purged against earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleStep {
    /// 1-based index into the design's block list.
    pub block_index: usize,
    pub entries: Vec<ScheduleEntry>,
}

impl std::fmt::Display for ScheduleStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("i{}{}", e.set_index, "'".repeat(e.prime_level)))
            .collect();
        write!(f, "Eq({})", parts.join(","))
    }
}

/// The full processing plan plus the final prime level of every set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub steps: Vec<ScheduleStep>,
    /// Prime level of each set after all steps (index 0 = set 1).
    pub final_levels: Vec<usize>,
}

impl std::fmt::Display for Schedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Builds the Eq schedule for a valid 2-(v,k,1) design over `set_count` = v
/// sets. λ > 1 designs are rejected: their schedules would re-compare pairs.
pub fn make_schedule(d: &Design, set_count: usize) -> Result<Schedule> {
    if set_count != d.v {
        return Err(Error::InvalidDesign {
            block: None,
            msg: format!("{} sets supplied for a design on {} points", set_count, d.v),
        });
    }
    if d.lambda != 1 {
        return Err(Error::InvalidDesign {
            block: None,
            msg: format!("lambda = {} would re-compare set pairs; need lambda = 1", d.lambda),
        });
    }
    if !validate_design(d, 2)? {
        return Err(Error::InvalidDesign {
            block: None,
            msg: "design property does not hold (some pair not covered exactly once)".into(),
        });
    }
    let mut participated = vec![false; d.v];
    let mut level = vec![0usize; d.v];
    let mut steps = Vec::with_capacity(d.blocks.len());
    for (bi, block) in d.blocks.iter().enumerate() {
        let mut points = block.clone();
        points.sort_unstable();
        let entries: Vec<ScheduleEntry> = points
            .iter()
            .map(|&p| ScheduleEntry {
                set_index: p,
                prime_level: level[p - 1],
            })
            .collect();
        for (pos, &p) in points.iter().enumerate() {
            // A set is reduced this step if it self-reduces on first
            // participation, or ranks after another set of the block.
            let reduced = !participated[p - 1] || pos > 0;
            participated[p - 1] = true;
            if reduced {
                level[p - 1] += 1;
            }
        }
        steps.push(ScheduleStep {
            block_index: bi + 1,
            entries,
        });
    }
    Ok(Schedule {
        steps,
        final_levels: level,
    })
}

/// Load/store counters for a [`SetStore`]; `peak` is the largest number of
/// sets held loaded at one moment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StoreStats {
    pub loads: u64,
    pub stores: u64,
    pub resident: usize,
    pub peak: usize,
}

impl StoreStats {
    fn on_load(&mut self) {
        self.loads += 1;
        self.resident += 1;
        self.peak = self.peak.max(self.resident);
    }

    fn on_store(&mut self) {
        self.stores += 1;
        self.resident = self.resident.saturating_sub(1);
    }
}

/// Instrumented owner of the v code sets. Loading hands a set out (counting
/// it resident) and storing hands it back; the stats expose the residency
/// peak that the design schedule is supposed to bound.
pub trait SetStore {
    fn set_count(&self) -> usize;
    /// Takes set `idx` (1-based) out of the store.
    fn load(&mut self, idx: usize) -> Result<CodeSet>;
    /// Returns set `idx` to the store.
    fn store(&mut self, idx: usize, set: CodeSet) -> Result<()>;
    fn stats(&self) -> StoreStats;
}

/// In-memory store.
#[derive(Debug)]
pub struct MemStore {
    slots: Vec<Option<CodeSet>>,
    stats: StoreStats,
}

impl MemStore {
    #[must_use]
    pub fn new(sets: Vec<CodeSet>) -> Self {
        MemStore {
            slots: sets.into_iter().map(Some).collect(),
            stats: StoreStats::default(),
        }
    }
}

impl SetStore for MemStore {
    fn set_count(&self) -> usize {
        self.slots.len()
    }

    fn load(&mut self, idx: usize) -> Result<CodeSet> {
        let slot = self
            .slots
            .get_mut(idx - 1)
            .ok_or(Error::UnknownSet {
                label: format!("set {idx}"),
            })?;
        let set = slot.take().ok_or(Error::UnknownSet {
            label: format!("set {idx} already loaded"),
        })?;
        self.stats.on_load();
        Ok(set)
    }

    fn store(&mut self, idx: usize, set: CodeSet) -> Result<()> {
        let slot = self
            .slots
            .get_mut(idx - 1)
            .ok_or(Error::UnknownSet {
                label: format!("set {idx}"),
            })?;
        if slot.is_some() {
            return Err(Error::UnknownSet {
                label: format!("set {idx} stored twice"),
            });
        }
        *slot = Some(set);
        self.stats.on_store();
        Ok(())
    }

    fn stats(&self) -> StoreStats {
        self.stats
    }
}

/// Directory-backed store: one library file per set, parsed on load and
/// rewritten on store, so only loaded sets occupy memory.
#[derive(Debug)]
pub struct DirStore {
    dir: PathBuf,
    labels: Vec<String>,
    limits: EquivLimits,
    loaded: Vec<bool>,
    stats: StoreStats,
}

impl DirStore {
    /// Opens a store over `<dir>/<label>.lib` files, which must exist.
    pub fn open(dir: PathBuf, labels: Vec<String>, limits: EquivLimits) -> Result<Self> {
        let loaded = vec![false; labels.len()];
        let store = DirStore {
            dir,
            labels,
            limits,
            loaded,
            stats: StoreStats::default(),
        };
        for i in 1..=store.labels.len() {
            if !store.path(i).is_file() {
                return Err(Error::UnknownSet {
                    label: store.labels[i - 1].clone(),
                });
            }
        }
        Ok(store)
    }

    /// Creates the backing files from in-memory sets, then opens the store.
    pub fn create(dir: PathBuf, sets: &[CodeSet], limits: EquivLimits) -> Result<Self> {
        let labels: Vec<String> = sets.iter().map(|s| s.label().to_string()).collect();
        for (i, set) in sets.iter().enumerate() {
            let path = dir.join(format!("{}.lib", labels[i]));
            std::fs::write(path, render_code_set(set))?;
        }
        DirStore::open(dir, labels, limits)
    }

    fn path(&self, idx: usize) -> PathBuf {
        self.dir.join(format!("{}.lib", self.labels[idx - 1]))
    }
}

impl SetStore for DirStore {
    fn set_count(&self) -> usize {
        self.labels.len()
    }

    fn load(&mut self, idx: usize) -> Result<CodeSet> {
        if idx < 1 || idx > self.labels.len() || self.loaded[idx - 1] {
            return Err(Error::UnknownSet {
                label: format!("set {idx}"),
            });
        }
        let text = std::fs::read_to_string(self.path(idx))?;
        let set = parse_code_set(self.labels[idx - 1].clone(), &text, &self.limits)?;
        self.loaded[idx - 1] = true;
        self.stats.on_load();
        Ok(set)
    }

    fn store(&mut self, idx: usize, set: CodeSet) -> Result<()> {
        if idx < 1 || idx > self.labels.len() || !self.loaded[idx - 1] {
            return Err(Error::UnknownSet {
                label: format!("set {idx}"),
            });
        }
        std::fs::write(self.path(idx), render_code_set(&set))?;
        self.loaded[idx - 1] = false;
        self.stats.on_store();
        Ok(())
    }

    fn stats(&self) -> StoreStats {
        self.stats
    }
}

/// Execution summary of a dedup run. Serializes to the stable JSON object
/// `{blocks_executed, pair_comparisons, purges, resident_set_peak, classes}`.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct AuditLog {
    pub blocks_executed: u64,
    pub pair_comparisons: u64,
    pub purges: u64,
    pub resident_set_peak: usize,
    pub classes: usize,
}

/// Runs the design-scheduled deduplication over a store.
///
/// Per block: load the block's sets (at most `block_size` resident),
/// self-reduce each first-time participant, purge later sets against earlier
/// ones, write everything back. The returned union holds one representative
/// per equivalence class of the full input; record ids must be globally
/// unique for the union to be well-formed.
pub fn run_dedup_store(
    store: &mut dyn SetStore,
    d: &Design,
    limits: &EquivLimits,
) -> Result<(CodeSet, AuditLog)> {
    let schedule = make_schedule(d, store.set_count())?;
    let mut participated = vec![false; d.v];
    let mut stats = EqStats::default();
    let mut blocks_executed = 0u64;

    for step in &schedule.steps {
        let points: Vec<usize> = step.entries.iter().map(|e| e.set_index).collect();
        let mut loaded: Vec<CodeSet> = Vec::with_capacity(points.len());
        for &p in &points {
            loaded.push(store.load(p)?);
        }
        for pos in 0..points.len() {
            let p = points[pos];
            if !participated[p - 1] {
                let set = std::mem::take(&mut loaded[pos]);
                loaded[pos] = reduce_set(set, limits, &mut stats)?;
                participated[p - 1] = true;
            }
            for earlier in 0..pos {
                let target = std::mem::take(&mut loaded[pos]);
                // split_at keeps the borrow checker convinced the reference
                // and the purged set are distinct slots.
                let reference = &loaded[earlier];
                loaded[pos] = eq_sets(reference, target, limits, &mut stats)?;
            }
        }
        for (pos, &p) in points.iter().enumerate() {
            store.store(p, std::mem::take(&mut loaded[pos]))?;
        }
        blocks_executed += 1;
    }

    let mut union = CodeSet::new("union");
    for p in 1..=d.v {
        let mut set = store.load(p)?;
        if !participated[p - 1] {
            set = reduce_set(set, limits, &mut stats)?;
        }
        for rec in set.records().iter().cloned() {
            union.push(rec)?;
        }
        store.store(p, set)?;
    }

    let audit = AuditLog {
        blocks_executed,
        pair_comparisons: stats.pair_comparisons,
        purges: stats.purges,
        resident_set_peak: store.stats().peak,
        classes: union.len(),
    };
    Ok((union, audit))
}

/// Convenience wrapper: design-scheduled dedup of in-memory sets.
pub fn run_dedup(sets: Vec<CodeSet>, d: &Design, limits: &EquivLimits) -> Result<(CodeSet, AuditLog)> {
    let mut store = MemStore::new(sets);
    run_dedup_store(&mut store, d, limits)
}

/// Naive baseline: load every set at once (residency = v), concatenate, and
/// reduce the whole list in ≺ order. Same classes as [`run_dedup`], all-pairs
/// memory profile.
pub fn dedup_all_pairs_store(
    store: &mut dyn SetStore,
    limits: &EquivLimits,
) -> Result<(CodeSet, AuditLog)> {
    let v = store.set_count();
    let mut all = Vec::with_capacity(v);
    for p in 1..=v {
        all.push(store.load(p)?);
    }
    let mut combined = CodeSet::new("union");
    for set in &all {
        for rec in set.records().iter().cloned() {
            combined.push(rec)?;
        }
    }
    for (i, set) in all.into_iter().enumerate() {
        store.store(i + 1, set)?;
    }
    let mut stats = EqStats::default();
    let union = reduce_set(combined, limits, &mut stats)?;
    let audit = AuditLog {
        blocks_executed: 1,
        pair_comparisons: stats.pair_comparisons,
        purges: stats.purges,
        resident_set_peak: store.stats().peak,
        classes: union.len(),
    };
    Ok((union, audit))
}

/// In-memory convenience for the naive baseline.
pub fn dedup_all_pairs(sets: Vec<CodeSet>, limits: &EquivLimits) -> Result<(CodeSet, AuditLog)> {
    let mut store = MemStore::new(sets);
    dedup_all_pairs_store(&mut store, limits)
}

/// Parses a design file: header line `v k lambda`, then one block per line
/// as 1-based point indices. `#` comments and blank lines are skipped.
pub fn parse_design(text: &str) -> Result<Design> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            None
        } else {
            Some((i + 1, content))
        }
    });
    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty design file".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("expected header `v k lambda`, got `{header}`"),
        });
    }
    let parse_num = |s: &str, what: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::Parse {
            line: header_line,
            msg: format!("bad {what}: `{s}`"),
        })
    };
    let v = parse_num(fields[0], "v")?;
    let block_size = parse_num(fields[1], "k")?;
    let lambda = parse_num(fields[2], "lambda")?;
    let mut blocks = Vec::new();
    for (line, content) in lines {
        let block: Result<Vec<usize>> = content
            .split_whitespace()
            .map(|s| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad point index: `{s}`"),
                })
            })
            .collect();
        blocks.push(block?);
    }
    Ok(Design {
        v,
        block_size,
        lambda,
        blocks,
    })
}

/// Renders a design in the file format.
#[must_use]
pub fn render_design(d: &Design) -> String {
    let mut out = format!("{} {} {}\n", d.v, d.block_size, d.lambda);
    for block in &d.blocks {
        let parts: Vec<String> = block.iter().map(|p| p.to_string()).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{are_equivalent, CodeRecord, Permutation};
    use crate::synth::{random_full_rank_matrix, random_image_list, SplitMix64};

    #[test]
    fn fano_is_a_valid_2_7_3_1_design() {
        let f = fano_plane();
        assert!(validate_design(&f, 2).unwrap());
        assert_eq!(f.blocks.len(), 7);
        // Every point lies in exactly 3 blocks.
        for p in 1..=7 {
            let count = f.blocks.iter().filter(|b| b.contains(&p)).count();
            assert_eq!(count, 3, "point {p}");
        }
        // All 21 pairs covered.
        let mut pairs = HashSet::new();
        for b in &f.blocks {
            for i in 0..3 {
                for j in (i + 1)..3 {
                    pairs.insert((b[i].min(b[j]), b[i].max(b[j])));
                }
            }
        }
        assert_eq!(pairs.len(), 21);
    }

    #[test]
    fn broken_designs_are_detected() {
        let mut f = fano_plane();
        f.blocks.pop();
        assert!(!validate_design(&f, 2).unwrap());

        let mut dup = fano_plane();
        dup.blocks[3] = vec![2, 2, 6];
        let err = validate_design(&dup, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidDesign { block: Some(4), .. }));

        let mut range = fano_plane();
        range.blocks[6] = vec![3, 5, 8];
        let err = validate_design(&range, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidDesign { block: Some(7), .. }));

        let mut size = fano_plane();
        size.blocks[0] = vec![1, 2];
        let err = validate_design(&size, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidDesign { block: Some(1), .. }));
    }

    #[test]
    fn complete_design_is_valid_for_small_v() {
        for v in 2..=7 {
            let d = complete_pair_design(v);
            assert!(validate_design(&d, 2).unwrap(), "v={v}");
            assert_eq!(d.blocks.len() as u64, all_pairs_count(v as u64));
        }
    }

    #[test]
    fn pair_count_formulas() {
        assert_eq!(naive_pair_count(1), 1);
        assert_eq!(naive_pair_count(3), 15);
        assert_eq!(all_pairs_count(6), 15);
        assert_eq!(all_pairs_count(7), 21);
    }

    #[test]
    fn fano_schedule_matches_published_annotations() {
        let schedule = make_schedule(&fano_plane(), 7).unwrap();
        let rendered: Vec<String> = schedule.steps.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "Eq(i1,i2,i3)",
                "Eq(i1',i4,i5)",
                "Eq(i1',i6,i7)",
                "Eq(i2',i4',i6')",
                "Eq(i2',i5',i7')",
                "Eq(i3',i4'',i7'')",
                "Eq(i3',i5'',i6'')",
            ]
        );
        // After the last step the union is i1'∪i2'∪i3'∪i4'''∪i5'''∪i6'''∪i7'''.
        assert_eq!(schedule.final_levels, vec![1, 1, 1, 3, 3, 3, 3]);
        assert_eq!(
            schedule.to_string(),
            "Eq(i1,i2,i3), Eq(i1',i4,i5), Eq(i1',i6,i7), Eq(i2',i4',i6'), \
             Eq(i2',i5',i7'), Eq(i3',i4'',i7''), Eq(i3',i5'',i6'')"
        );
    }

    #[test]
    fn fano_schedule_covers_each_pair_once() {
        let schedule = make_schedule(&fano_plane(), 7).unwrap();
        let mut seen = HashSet::new();
        for step in &schedule.steps {
            let pts: Vec<usize> = step.entries.iter().map(|e| e.set_index).collect();
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    assert!(seen.insert((pts[i], pts[j])), "pair repeated");
                }
            }
        }
        assert_eq!(seen.len(), 21);
    }

    #[test]
    fn complete_schedule_is_all_pairs_in_order() {
        let schedule = make_schedule(&complete_pair_design(4), 4).unwrap();
        let pairs: Vec<(usize, usize)> = schedule
            .steps
            .iter()
            .map(|s| (s.entries[0].set_index, s.entries[1].set_index))
            .collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(schedule.steps.len(), 6);
    }

    #[test]
    fn schedule_rejects_mismatch_and_lambda() {
        assert!(matches!(
            make_schedule(&fano_plane(), 6).unwrap_err(),
            Error::InvalidDesign { block: None, .. }
        ));
        let mut doubled = fano_plane();
        doubled.lambda = 2;
        doubled.blocks.extend(fano_plane().blocks);
        assert!(validate_design(&doubled, 2).unwrap());
        assert!(matches!(
            make_schedule(&doubled, 7).unwrap_err(),
            Error::InvalidDesign { .. }
        ));
        let mut broken = fano_plane();
        broken.blocks.pop();
        assert!(matches!(
            make_schedule(&broken, 7).unwrap_err(),
            Error::InvalidDesign { .. }
        ));
    }

    fn limits() -> EquivLimits {
        EquivLimits::default()
    }

    #[test]
    fn dedup_of_empty_sets_is_empty() {
        let sets: Vec<CodeSet> = (1..=7).map(|i| CodeSet::new(format!("i{i}"))).collect();
        let (union, audit) = run_dedup(sets, &fano_plane(), &limits()).unwrap();
        assert!(union.is_empty());
        assert_eq!(audit.blocks_executed, 7);
        assert_eq!(audit.classes, 0);
        assert_eq!(audit.pair_comparisons, 0);
        assert!(audit.resident_set_peak <= 3);
    }

    #[test]
    fn seven_equivalent_singletons_collapse_to_one() {
        let mut rng = SplitMix64::new(0xf0f0);
        let base = random_full_rank_matrix(12, 6, &mut rng);
        let mut sets = Vec::new();
        for i in 1..=7 {
            let p = Permutation::from_image(random_image_list(12, &mut rng)).unwrap();
            let mut s = CodeSet::new(format!("i{i}"));
            s.push(CodeRecord::new(format!("c{i}"), p.apply_to_matrix(&base).unwrap(), &limits()).unwrap())
                .unwrap();
            sets.push(s);
        }
        let (union, audit) = run_dedup(sets, &fano_plane(), &limits()).unwrap();
        assert_eq!(union.len(), 1);
        assert_eq!(audit.classes, 1);
        assert_eq!(audit.purges, 6);
        assert!(audit.resident_set_peak <= 3);
        // The survivor is the first set's record: ties go to the ≺-smaller set.
        assert_eq!(union.records()[0].id(), "c1");
    }

    #[test]
    fn fano_and_naive_agree_on_planted_instance() {
        let mut rng = SplitMix64::new(0xbeef);
        let classes: Vec<_> = (0..5).map(|_| random_full_rank_matrix(10, 5, &mut rng)).collect();
        let mut sets = Vec::new();
        let mut next_id = 0;
        for i in 1..=7 {
            let mut s = CodeSet::new(format!("i{i}"));
            for _ in 0..(1 + rng.next_below(3)) {
                let class = &classes[rng.next_below(classes.len() as u64) as usize];
                let p = Permutation::from_image(random_image_list(10, &mut rng)).unwrap();
                next_id += 1;
                s.push(
                    CodeRecord::new(
                        format!("c{next_id}"),
                        p.apply_to_matrix(class).unwrap(),
                        &limits(),
                    )
                    .unwrap(),
                )
                .unwrap();
            }
            sets.push(s);
        }
        let (fano_union, fano_audit) = run_dedup(sets.clone(), &fano_plane(), &limits()).unwrap();
        let (naive_union, naive_audit) = dedup_all_pairs(sets, &limits()).unwrap();
        assert_eq!(fano_union.len(), naive_union.len());
        assert_eq!(fano_audit.classes, naive_audit.classes);
        assert!(fano_audit.resident_set_peak <= 3);
        assert_eq!(naive_audit.resident_set_peak, 7);
        // Survivors are pairwise inequivalent.
        for (i, a) in fano_union.records().iter().enumerate() {
            for b in fano_union.records().iter().skip(i + 1) {
                assert!(are_equivalent(a.matrix(), b.matrix(), &limits()).unwrap().is_none());
            }
        }
    }

    #[test]
    fn single_set_self_reduces_during_union() {
        let mut rng = SplitMix64::new(0x1111);
        let base = random_full_rank_matrix(10, 5, &mut rng);
        let p = Permutation::from_image(random_image_list(10, &mut rng)).unwrap();
        let mut s = CodeSet::new("only");
        s.push(CodeRecord::new("a", base.clone(), &limits()).unwrap()).unwrap();
        s.push(CodeRecord::new("b", p.apply_to_matrix(&base).unwrap(), &limits()).unwrap())
            .unwrap();
        let (union, audit) = run_dedup(vec![s], &complete_pair_design(1), &limits()).unwrap();
        assert_eq!(union.len(), 1);
        assert_eq!(audit.blocks_executed, 0);
        assert_eq!(audit.purges, 1);
    }

    #[test]
    fn cross_set_duplicate_ids_are_rejected() {
        let mut sets: Vec<CodeSet> = (1..=7).map(|i| CodeSet::new(format!("i{i}"))).collect();
        let m = crate::synth::extended_hamming_8_4();
        sets[0]
            .push(CodeRecord::new("same", m.clone(), &limits()).unwrap())
            .unwrap();
        sets[3]
            .push(CodeRecord::new("same", crate::synth::identity_code(4), &limits()).unwrap())
            .unwrap();
        assert!(matches!(
            run_dedup(sets, &fano_plane(), &limits()).unwrap_err(),
            Error::DuplicateId { .. }
        ));
    }

    #[test]
    fn dir_store_round_trips_and_counts_residency() {
        let dir = tempfile::tempdir().unwrap();
        let mut rng = SplitMix64::new(0x2222);
        let base = random_full_rank_matrix(10, 5, &mut rng);
        let mut sets = Vec::new();
        for i in 1..=7 {
            let mut s = CodeSet::new(format!("set{i}"));
            let p = Permutation::from_image(random_image_list(10, &mut rng)).unwrap();
            s.push(
                CodeRecord::new(format!("c{i}"), p.apply_to_matrix(&base).unwrap(), &limits())
                    .unwrap(),
            )
            .unwrap();
            sets.push(s);
        }
        let mut store = DirStore::create(dir.path().to_path_buf(), &sets, limits()).unwrap();
        let (union, audit) = run_dedup_store(&mut store, &fano_plane(), &limits()).unwrap();
        assert_eq!(union.len(), 1);
        assert!(audit.resident_set_peak <= 3);
        // Purged survivors were persisted: re-open and count records.
        let mut reopened = DirStore::open(
            dir.path().to_path_buf(),
            (1..=7).map(|i| format!("set{i}")).collect(),
            limits(),
        )
        .unwrap();
        let mut total = 0;
        for i in 1..=7 {
            let s = reopened.load(i).unwrap();
            total += s.len();
            reopened.store(i, s).unwrap();
        }
        assert_eq!(total, 1);
    }

    #[test]
    fn design_file_round_trip_and_errors() {
        let f = fano_plane();
        let text = render_design(&f);
        assert_eq!(parse_design(&text).unwrap(), f);
        assert!(matches!(
            parse_design("").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_design("7 3\n1 2 3\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_design("7 3 1\n1 x 3\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }
}
