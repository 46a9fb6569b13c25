//! Minimum distance of a binary [n,k] code.
//!
//! Three engines, all enumerating the 2^k − 1 nonzero row combinations and
//! taking the minimum weight:
//!
//! * **direct** — for each size t, every t-subset of rows in lexicographic
//!   order, each codeword rebuilt by t row XORs. The oracle.
//! * **gray** — for each t, one t-op initialization followed by revolving-door
//!   deltas: two row XORs per subsequent codeword.
//! * **parallel** — the gray walk with each weight class's rank interval cut
//!   into contiguous per-worker chunks; workers seed mid-sequence by
//!   unranking, and results merge deterministically.
//!
//! A "row op" is one XOR of a full n-bit row into an accumulator; building a
//! t-subset from scratch is counted as t ops (the load included), so
//! `xor_row_ops` matches the closed forms Σ_t t·C(k,t) for direct and
//! Σ_t (t + 2(C(k,t)−1)) for gray.
//!
//! The reported witness is deterministic across engines and worker counts:
//! among minimum-weight codewords it is the one with the lexicographically
//! smallest (t, sequence rank).

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{xor_combine, Codeword, GeneratorMatrix, DEFAULT_ENUM_LIMIT_K};
use crate::gray::{binomial, rank as gray_rank, GrayState};

/// Which enumeration engine to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Direct,
    Gray,
    Parallel,
}

/// Knobs shared by all engines.
#[derive(Clone, Debug)]
pub struct DistanceOptions {
    /// Refuse enumeration beyond this dimension.
    pub max_k: usize,
    /// Abort once a weight class finishes with the best weight at or below
    /// this threshold. Checked only at class boundaries so the result is
    /// identical for every engine and worker count. Off by default.
    pub stop_at: Option<usize>,
    /// Worker count for [`Engine::Parallel`]; ignored by the serial engines.
    pub workers: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            max_k: DEFAULT_ENUM_LIMIT_K,
            stop_at: None,
            workers: 1,
        }
    }
}

/// Outcome of a minimum-distance run.
///
/// Serializes to the stable JSON object
/// `{n, k, d, witness, xor_row_ops, codewords_enumerated, wall_time_ms,
/// workers}` with the witness as a 0/1 string (coordinate 1 first).
#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    /// Minimum nonzero codeword weight found.
    pub d: usize,
    #[serde(serialize_with = "ser_word")]
    pub witness: Codeword,
    pub xor_row_ops: u64,
    pub codewords_enumerated: u64,
    pub wall_time_ms: u64,
    pub workers: usize,
    /// Row indices (ascending, 1-based) whose XOR is the witness.
    #[serde(skip)]
    pub witness_combo: Vec<usize>,
    /// True when a `stop_at` threshold ended the run before all weight
    /// classes were enumerated (`d` is then an upper bound).
    #[serde(skip)]
    pub stopped_early: bool,
}

fn ser_word<S: serde::Serializer>(w: &Codeword, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_row_string())
}

/// Minimum distance via nested-combination enumeration (the oracle engine).
pub fn min_distance_direct(m: &GeneratorMatrix) -> Result<DistanceReport> {
    min_distance(m, Engine::Direct, &DistanceOptions::default())
}

/// Minimum distance via the revolving-door delta walk.
pub fn min_distance_gray(m: &GeneratorMatrix) -> Result<DistanceReport> {
    min_distance(m, Engine::Gray, &DistanceOptions::default())
}

/// Minimum distance with each weight class partitioned across `workers`
/// threads. The report's d and witness equal the serial result for every
/// worker count.
pub fn min_distance_parallel(m: &GeneratorMatrix, workers: usize) -> Result<DistanceReport> {
    let opts = DistanceOptions {
        workers,
        ..DistanceOptions::default()
    };
    min_distance(m, Engine::Parallel, &opts)
}

/// Full-control entry point behind the three named engines.
pub fn min_distance(
    m: &GeneratorMatrix,
    engine: Engine,
    opts: &DistanceOptions,
) -> Result<DistanceReport> {
    let k = m.k();
    if k == 0 {
        return Err(Error::InvalidDimensions { n: m.n(), k });
    }
    if k > opts.max_k {
        return Err(Error::EnumerationLimit {
            k,
            limit: opts.max_k,
        });
    }
    let started = Instant::now();
    let mut run = match engine {
        Engine::Direct => run_direct(m, opts),
        Engine::Gray => run_gray(m, opts),
        Engine::Parallel => run_parallel(m, opts),
    }?;
    run.wall_time_ms = started.elapsed().as_millis() as u64;
    debug_assert_eq!(run.witness.weight(), run.d);
    Ok(run)
}

/// Running best, ordered by (weight, t, rank).
#[derive(Clone, Debug)]
struct Best {
    weight: usize,
    t: usize,
    rank: u64,
    word: Codeword,
    combo: Vec<usize>,
}

impl Best {
    fn key(&self) -> (usize, usize, u64) {
        (self.weight, self.t, self.rank)
    }
}

fn finish(m: &GeneratorMatrix, best: Best, ops: u64, count: u64, workers: usize, stopped: bool) -> DistanceReport {
    DistanceReport {
        n: m.n(),
        k: m.k(),
        d: best.weight,
        witness: best.word,
        xor_row_ops: ops,
        codewords_enumerated: count,
        wall_time_ms: 0,
        workers,
        witness_combo: best.combo,
        stopped_early: stopped,
    }
}

fn run_direct(m: &GeneratorMatrix, opts: &DistanceOptions) -> Result<DistanceReport> {
    let k = m.k();
    let mut ops = 0u64;
    let mut count = 0u64;
    let mut best: Option<Best> = None;
    let mut stopped = false;

    'classes: for t in 1..=k {
        let mut combo: Vec<usize> = (1..=t).collect();
        loop {
            let word = xor_combine(m.rows(), &combo)?;
            ops += t as u64;
            count += 1;
            let weight = word.weight();
            // Witness ties break on the revolving-door rank so every engine
            // reports the same codeword; lexicographic subset order differs
            // from rank order, hence the explicit comparison on ties.
            let better = match &best {
                None => true,
                Some(b) if weight < b.weight => true,
                Some(b) if weight == b.weight && t == b.t => {
                    let indicator = Codeword::from_support(k, &combo)?;
                    gray_rank(&indicator, t)? < b.rank
                }
                _ => false,
            };
            if better {
                let indicator = Codeword::from_support(k, &combo)?;
                best = Some(Best {
                    weight,
                    t,
                    rank: gray_rank(&indicator, t)?,
                    word,
                    combo: combo.clone(),
                });
            }
            // Lexicographic successor of the t-subset.
            let mut i = t;
            while i >= 1 && combo[i - 1] == k - t + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..t {
                combo[j] = combo[j - 1] + 1;
            }
        }
        if let (Some(limit), Some(b)) = (opts.stop_at, &best) {
            if b.weight <= limit && t < k {
                stopped = true;
                break 'classes;
            }
        }
    }
    Ok(finish(m, best.unwrap(), ops, count, 1, stopped))
}

fn run_gray(m: &GeneratorMatrix, opts: &DistanceOptions) -> Result<DistanceReport> {
    let k = m.k();
    let mut ops = 0u64;
    let mut count = 0u64;
    let mut best: Option<Best> = None;
    let mut stopped = false;

    for t in 1..=k {
        let (chunk_ops, chunk_count, chunk_best) = walk_chunk(m, t, 1, binomial(k as u64, t as u64))?;
        ops += chunk_ops;
        count += chunk_count;
        merge_best(&mut best, chunk_best);
        if let (Some(limit), Some(b)) = (opts.stop_at, &best) {
            if b.weight <= limit && t < k {
                stopped = true;
                break;
            }
        }
    }
    Ok(finish(m, best.unwrap(), ops, count, 1, stopped))
}

fn run_parallel(m: &GeneratorMatrix, opts: &DistanceOptions) -> Result<DistanceReport> {
    let k = m.k();
    let workers = opts.workers.max(1);
    let mut ops = 0u64;
    let mut count = 0u64;
    let mut best: Option<Best> = None;
    let mut stopped = false;

    for t in 1..=k {
        let total = binomial(k as u64, t as u64);
        let chunks: Vec<(u64, u64)> = (0..workers as u64)
            .map(|w| (1 + w * total / workers as u64, (w + 1) * total / workers as u64))
            .filter(|&(lo, hi)| lo <= hi)
            .collect();
        let results: Vec<Result<(u64, u64, Option<Best>)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|&(lo, hi)| scope.spawn(move || walk_chunk(m, t, lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("distance worker panicked"))
                .collect()
        });
        for r in results {
            let (chunk_ops, chunk_count, chunk_best) = r?;
            ops += chunk_ops;
            count += chunk_count;
            merge_best(&mut best, chunk_best);
        }
        if let (Some(limit), Some(b)) = (opts.stop_at, &best) {
            if b.weight <= limit && t < k {
                stopped = true;
                break;
            }
        }
    }
    Ok(finish(m, best.unwrap(), ops, count, workers, stopped))
}

/// Walks ranks [lo, hi] of the weight-t class: seeds by unranking (t ops),
/// then applies deltas at 2 ops each. Returns (ops, words seen, local best).
fn walk_chunk(
    m: &GeneratorMatrix,
    t: usize,
    lo: u64,
    hi: u64,
) -> Result<(u64, u64, Option<Best>)> {
    let k = m.k();
    let mut st = GrayState::from_rank(k, t, lo)?;
    let mut acc = xor_combine(m.rows(), st.support())?;
    let mut ops = t as u64;
    let mut count = 1u64;
    let mut best = Best {
        weight: acc.weight(),
        t,
        rank: lo,
        word: acc.clone(),
        combo: st.support().to_vec(),
    };
    while st.rank() < hi {
        let delta = st.advance().expect("rank bound exceeded sequence length");
        acc.xor_in_place(m.row(delta.out_pos));
        acc.xor_in_place(m.row(delta.in_pos));
        ops += 2;
        count += 1;
        let weight = acc.weight();
        // Strict improvement keeps the first hit in rank order, which is the
        // smallest rank among equal-weight words of this chunk.
        if weight < best.weight {
            best = Best {
                weight,
                t,
                rank: st.rank(),
                word: acc.clone(),
                combo: st.support().to_vec(),
            };
        }
    }
    Ok((ops, count, Some(best)))
}

fn merge_best(global: &mut Option<Best>, local: Option<Best>) {
    if let Some(l) = local {
        match global {
            Some(g) if g.key() <= l.key() => {}
            _ => *global = Some(l),
        }
    }
}

/// Closed form for the direct engine's row-op counter: Σ_t t·C(k,t) = k·2^{k−1}.
#[must_use]
pub fn direct_op_count(k: usize) -> u64 {
    (k as u64) << (k - 1)
}

/// Closed form for the gray engine's row-op counter: Σ_t (t + 2(C(k,t)−1)).
#[must_use]
pub fn gray_op_count(k: usize) -> u64 {
    (1..=k as u64)
        .map(|t| t + 2 * (binomial(k as u64, t) - 1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{extended_hamming_8_4, identity_code, repetition_code, SplitMix64};

    #[test]
    fn repetition_and_identity_distances() {
        for n in 1..=9 {
            let rep = repetition_code(n);
            let r = min_distance_direct(&rep).unwrap();
            assert_eq!(r.d, n);
            assert_eq!(r.codewords_enumerated, 1);
            let g = min_distance_gray(&rep).unwrap();
            assert_eq!(g.d, n);
            // Single class t=1 with one word: 1 initialization op, 0 deltas.
            assert_eq!(g.xor_row_ops, 1);
        }
        let id = identity_code(5);
        assert_eq!(min_distance_direct(&id).unwrap().d, 1);
        assert_eq!(min_distance_gray(&id).unwrap().d, 1);
    }

    #[test]
    fn extended_hamming_distance_and_witness_consistency() {
        let m = extended_hamming_8_4();
        let d = min_distance_direct(&m).unwrap();
        let g = min_distance_gray(&m).unwrap();
        let p = min_distance_parallel(&m, 3).unwrap();
        assert_eq!(d.d, 4);
        assert_eq!(g.d, 4);
        assert_eq!(p.d, 4);
        assert_eq!(d.witness, g.witness);
        assert_eq!(g.witness, p.witness);
        assert_eq!(d.witness_combo, g.witness_combo);
        assert_eq!(g.witness.weight(), 4);
        assert_eq!(d.codewords_enumerated, 15);
        assert_eq!(g.codewords_enumerated, 15);
    }

    #[test]
    fn counters_match_closed_forms() {
        for k in [3usize, 4, 6] {
            let m = identity_code(k);
            let d = min_distance_direct(&m).unwrap();
            let g = min_distance_gray(&m).unwrap();
            assert_eq!(d.xor_row_ops, direct_op_count(k));
            assert_eq!(g.xor_row_ops, gray_op_count(k));
        }
        // The worked k=6 figures: 135 gray ops versus 192 direct.
        assert_eq!(gray_op_count(6), 135);
        assert_eq!(direct_op_count(6), 192);
        // The crossover: gray loses at k=3, ties at k=4, wins from k=5 on.
        assert_eq!(gray_op_count(3), 14);
        assert_eq!(direct_op_count(3), 12);
        assert_eq!(gray_op_count(4), 32);
        assert_eq!(direct_op_count(4), 32);
        for k in 5..=16 {
            assert!(gray_op_count(k) < direct_op_count(k), "k={k}");
        }
    }

    #[test]
    fn workers_one_matches_serial_gray_exactly() {
        let mut rng = SplitMix64::new(0x5eed_0001);
        for _ in 0..5 {
            let m = crate::synth::random_full_rank_matrix(14, 7, &mut rng);
            let g = min_distance_gray(&m).unwrap();
            let p = min_distance_parallel(&m, 1).unwrap();
            assert_eq!(p.d, g.d);
            assert_eq!(p.witness, g.witness);
            assert_eq!(p.xor_row_ops, g.xor_row_ops);
            assert_eq!(p.codewords_enumerated, g.codewords_enumerated);
        }
    }

    #[test]
    fn parallel_matches_serial_for_various_worker_counts() {
        let mut rng = SplitMix64::new(0x5eed_0002);
        let m = crate::synth::random_full_rank_matrix(20, 10, &mut rng);
        let serial = min_distance_gray(&m).unwrap();
        for workers in [2usize, 3, 7, 16] {
            let p = min_distance_parallel(&m, workers).unwrap();
            assert_eq!(p.d, serial.d, "workers={workers}");
            assert_eq!(p.witness, serial.witness, "workers={workers}");
            assert_eq!(p.codewords_enumerated, serial.codewords_enumerated);
        }
    }

    #[test]
    fn chunk_seed_matches_serial_position() {
        // A worker seeded at rank r must hold exactly the codeword the
        // serial walk reaches at step r.
        let mut rng = SplitMix64::new(0x5eed_0003);
        let m = crate::synth::random_full_rank_matrix(12, 6, &mut rng);
        let k = m.k();
        for t in 1..=k {
            let mut st = GrayState::initial(k, t).unwrap();
            let mut acc = xor_combine(m.rows(), st.support()).unwrap();
            loop {
                let seeded = xor_combine(
                    m.rows(),
                    GrayState::from_rank(k, t, st.rank()).unwrap().support(),
                )
                .unwrap();
                assert_eq!(seeded, acc);
                match st.advance() {
                    Some(d) => {
                        acc.xor_in_place(m.row(d.out_pos));
                        acc.xor_in_place(m.row(d.in_pos));
                    }
                    None => break,
                }
            }
        }
    }

    #[test]
    fn stop_at_aborts_at_class_boundary_uniformly() {
        let m = extended_hamming_8_4();
        let opts = DistanceOptions {
            stop_at: Some(4),
            ..DistanceOptions::default()
        };
        let g = min_distance(&m, Engine::Gray, &opts).unwrap();
        assert!(g.stopped_early);
        assert_eq!(g.d, 4);
        // Weight class t=1 already contains a weight-4 word, so only C(4,1)
        // codewords are enumerated.
        assert_eq!(g.codewords_enumerated, 4);
        let d = min_distance(&m, Engine::Direct, &opts).unwrap();
        let p = min_distance(&m, Engine::Parallel, &opts).unwrap();
        assert_eq!(d.d, g.d);
        assert_eq!(p.d, g.d);
        assert_eq!(d.witness, g.witness);
        assert_eq!(p.witness, g.witness);
        assert_eq!(d.codewords_enumerated, 4);
        assert_eq!(p.codewords_enumerated, 4);
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let m = identity_code(6);
        let opts = DistanceOptions {
            max_k: 5,
            ..DistanceOptions::default()
        };
        assert!(matches!(
            min_distance(&m, Engine::Gray, &opts).unwrap_err(),
            Error::EnumerationLimit { k: 6, limit: 5 }
        ));
    }

    #[test]
    fn self_dual_code_enumerates_only_even_weights() {
        let m = extended_hamming_8_4();
        assert!(m.is_self_dual());
        let counts = m.weight_enumerator(DEFAULT_ENUM_LIMIT_K).unwrap();
        for (w, &c) in counts.counts().iter().enumerate() {
            if w % 2 == 1 {
                assert_eq!(c, 0, "odd weight {w} present in self-dual code");
            }
        }
    }

    #[test]
    fn report_serializes_to_stable_json_shape() {
        let r = min_distance_gray(&extended_hamming_8_4()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        let obj = v.as_object().unwrap();
        for field in [
            "n",
            "k",
            "d",
            "witness",
            "xor_row_ops",
            "codewords_enumerated",
            "wall_time_ms",
            "workers",
        ] {
            assert!(obj.contains_key(field), "missing {field}");
        }
        assert_eq!(obj.len(), 8);
        assert_eq!(v["d"], 4);
        let witness = v["witness"].as_str().unwrap();
        assert_eq!(witness.len(), 8);
        assert_eq!(witness.chars().filter(|&c| c == '1').count(), 4);
    }
}
