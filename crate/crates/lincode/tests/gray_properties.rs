//! Property checks for the constant-weight walk, pinned against the
//! definitional oracle: the weight-t subsequence of the standard reflected
//! Gray code.

mod common;

use std::collections::HashSet;

use lincode::gray::{
    constant_weight_sequence, rank, sequence_len, swap_deltas, unrank, GrayState,
};
use proptest::prelude::*;

#[test]
fn matches_reflected_gray_filter_up_to_k12() {
    for k in 1..=12usize {
        for t in 0..=k {
            let walked: Vec<u64> = constant_weight_sequence(k, t)
                .unwrap()
                .map(|w| w.as_u64())
                .collect();
            let oracle = common::brgc_weight_filter(k, t);
            assert_eq!(walked, oracle, "k={k} t={t}");
        }
    }
}

#[test]
fn every_step_swaps_exactly_one_pair() {
    for k in 1..=10usize {
        for t in 1..=k {
            let mut st = GrayState::initial(k, t).unwrap();
            let mut seen = HashSet::new();
            seen.insert(st.word().as_u64());
            let mut prev = st.word().as_u64();
            while let Some(delta) = st.advance() {
                let cur = st.word().as_u64();
                let diff = prev ^ cur;
                assert_eq!(diff.count_ones(), 2, "k={k} t={t}");
                assert_eq!(cur.count_ones() as usize, t);
                // The reported delta names exactly the two flipped coordinates.
                assert_eq!(
                    diff,
                    (1 << (delta.out_pos - 1)) | (1 << (delta.in_pos - 1))
                );
                assert!(seen.insert(cur), "revisited a word at k={k} t={t}");
                prev = cur;
            }
            assert_eq!(seen.len() as u64, sequence_len(k, t).unwrap());
        }
    }
}

#[test]
fn advance_past_end_is_idempotent() {
    let mut st = GrayState::initial(6, 3).unwrap();
    while st.advance().is_some() {}
    let word = st.word().clone();
    let support = st.support().to_vec();
    let r = st.rank();
    for _ in 0..3 {
        assert!(st.advance().is_none());
        assert_eq!(st.word(), &word);
        assert_eq!(st.support(), support.as_slice());
        assert_eq!(st.rank(), r);
    }
}

#[test]
fn endpoints_follow_the_closed_form() {
    for k in 1..=14usize {
        for t in 1..=k {
            let first = GrayState::initial(k, t).unwrap();
            let expect_first: Vec<usize> = (1..=t).collect();
            assert_eq!(first.support(), expect_first.as_slice(), "k={k} t={t}");

            let last = GrayState::from_rank(k, t, sequence_len(k, t).unwrap()).unwrap();
            let mut expect_last: Vec<usize> = (1..t).collect();
            expect_last.push(k);
            assert_eq!(last.support(), expect_last.as_slice(), "k={k} t={t}");
        }
    }
}

#[test]
fn unrank_agrees_with_walk_everywhere() {
    let k = 11usize;
    for t in 0..=k {
        let mut st = GrayState::initial(k, t).unwrap();
        loop {
            let direct = unrank(k, t, st.rank()).unwrap();
            assert_eq!(&direct, st.word(), "k={k} t={t} rank={}", st.rank());
            assert_eq!(rank(st.word(), t).unwrap(), st.rank());
            if st.advance().is_none() {
                break;
            }
        }
    }
}

#[test]
fn from_rank_resumes_mid_walk() {
    let k = 9usize;
    for t in 1..=k {
        let full: Vec<u64> = constant_weight_sequence(k, t)
            .unwrap()
            .map(|w| w.as_u64())
            .collect();
        for r in 1..=full.len() as u64 {
            let mut st = GrayState::from_rank(k, t, r).unwrap();
            let mut tail = vec![st.word().as_u64()];
            while st.advance().is_some() {
                tail.push(st.word().as_u64());
            }
            assert_eq!(tail, full[r as usize - 1..], "k={k} t={t} resume at {r}");
        }
    }
}

#[test]
fn delta_stream_matches_word_stream() {
    let k = 10usize;
    for t in 1..=k {
        let words: Vec<u64> = constant_weight_sequence(k, t)
            .unwrap()
            .map(|w| w.as_u64())
            .collect();
        let deltas: Vec<_> = swap_deltas(k, t).unwrap().collect();
        assert_eq!(deltas.len() + 1, words.len());
        for (i, d) in deltas.iter().enumerate() {
            let moved = words[i] ^ (1 << (d.out_pos - 1)) ^ (1 << (d.in_pos - 1));
            assert_eq!(moved, words[i + 1], "k={k} t={t} step {i}");
            assert_eq!(words[i] >> (d.out_pos - 1) & 1, 1, "out must be set");
            assert_eq!(words[i] >> (d.in_pos - 1) & 1, 0, "in must be clear");
        }
    }
}

// Ranks are 1-based: valid positions run 1..=C(k, t).
fn any_position() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=64)
        .prop_flat_map(|k| (Just(k), 0usize..=k))
        .prop_flat_map(|(k, t)| {
            let len = sequence_len(k, t).unwrap();
            (Just(k), Just(t), 1..=len)
        })
}

proptest! {
    // Full-width spot check: rank is a left inverse of unrank all the way up
    // to 64-coordinate words, where the sequence length approaches 2^60.
    #[test]
    fn rank_inverts_unrank_at_full_width((k, t, r) in any_position()) {
        let word = unrank(k, t, r).unwrap();
        prop_assert_eq!(word.weight(), t);
        prop_assert_eq!(word.len(), k);
        prop_assert_eq!(rank(&word, t).unwrap(), r);
    }

    // Resuming from a random rank and stepping once lands on rank + 1's word.
    #[test]
    fn single_step_after_resume_matches_unrank((k, t, r) in any_position()) {
        let mut st = GrayState::from_rank(k, t, r).unwrap();
        prop_assert_eq!(st.word().as_u64(), unrank(k, t, r).unwrap().as_u64());
        let len = sequence_len(k, t).unwrap();
        if r < len {
            prop_assert!(st.advance().is_some());
            prop_assert_eq!(st.word().as_u64(), unrank(k, t, r + 1).unwrap().as_u64());
        } else {
            prop_assert!(st.advance().is_none());
        }
    }
}
