//! Shared oracles for the integration suites.  Everything in here is written
//! independently of the library internals: brute force where feasible, the
//! textbook reflected-Gray formula where not.

#![allow(dead_code)]

use lincode::equiv::{CodeRecord, CodeSet, EquivLimits, Permutation};
use lincode::gf2::GeneratorMatrix;
use lincode::synth::{random_full_rank_matrix, random_image_list, SplitMix64};

/// The standard binary reflected Gray code word at index `i` (0-based).
pub fn brgc_word(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// All weight-`t` words of the standard reflected Gray code on `k` bits, in
/// the order the full code visits them.  This is the definitional object the
/// constant-weight walk must match, so it makes a good oracle: two lines of
/// arithmetic, no clever successor logic to share bugs with.
pub fn brgc_weight_filter(k: usize, t: usize) -> Vec<u64> {
    (0u64..(1u64 << k))
        .map(brgc_word)
        .filter(|w| w.count_ones() as usize == t)
        .collect()
}

/// Support set (1-based coordinates, ascending) of a packed word.
pub fn support_of(word: u64, k: usize) -> Vec<usize> {
    (1..=k).filter(|&i| word >> (i - 1) & 1 == 1).collect()
}

fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    fn go(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    go(n, &mut items, &mut out);
    out
}

/// Brute-force permutation-equivalence oracle: try all n! column
/// permutations and compare row spaces.  Only sane for n <= 8.
pub fn equivalent_brute_force(a: &GeneratorMatrix, b: &GeneratorMatrix) -> Option<Permutation> {
    if a.n() != b.n() || a.k() != b.k() {
        return None;
    }
    assert!(a.n() <= 8, "brute-force oracle is factorial; keep n small");
    for image in heap_permutations(a.n()) {
        let perm = Permutation::from_image(image).unwrap();
        let moved = perm.apply_to_matrix(a).unwrap();
        if moved.same_row_space(b).unwrap() {
            return Some(perm);
        }
    }
    None
}

/// A planted dedup instance: `sets` code sets whose records are random
/// permutations of `classes` base codes.  Returns the sets plus the number
/// of distinct classes actually planted (some may be skipped for tiny n).
pub struct Planted {
    pub sets: Vec<CodeSet>,
    pub classes: usize,
}

/// Build `set_count` sets, each holding up to `per_set` records drawn by
/// permuting one of `class_count` random base codes.  Every record id is
/// globally unique.  Deterministic in `seed`.
pub fn plant_instance(
    seed: u64,
    set_count: usize,
    per_set: usize,
    class_count: usize,
    n: usize,
    k: usize,
) -> Planted {
    let mut rng = SplitMix64::new(seed);
    let mut bases = Vec::new();
    while bases.len() < class_count {
        let m = random_full_rank_matrix(n, k, &mut rng);
        // Reject bases equivalent to one already planted so the class count
        // is exact rather than an upper bound.
        let fresh = bases.iter().all(|b: &GeneratorMatrix| {
            lincode::equiv::are_equivalent(b, &m, &EquivLimits::default())
                .unwrap()
                .is_none()
        });
        if fresh {
            bases.push(m);
        }
    }
    let mut used = vec![false; class_count];
    let mut sets = Vec::new();
    let mut serial = 0usize;
    for s in 0..set_count {
        let mut set = CodeSet::new(format!("s{}", s + 1));
        for _ in 0..per_set {
            let which = rng.next_below(class_count as u64) as usize;
            used[which] = true;
            let image = random_image_list(n, &mut rng);
            let perm = Permutation::from_image(image).unwrap();
            let moved = perm.apply_to_matrix(&bases[which]).unwrap();
            serial += 1;
            set.push(CodeRecord::new(format!("r{serial}"), moved, &EquivLimits::default()).unwrap())
                .unwrap();
        }
        sets.push(set);
    }
    Planted {
        sets,
        classes: used.iter().filter(|&&u| u).count(),
    }
}
