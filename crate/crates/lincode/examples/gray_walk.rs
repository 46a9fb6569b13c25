//! Walk the constant-weight Gray sequence: every step swaps one bit out and
//! one bit in, which is what makes incremental codeword enumeration cheap.
//!
//! Run with: cargo run --example gray_walk

use lincode::gray::{binomial, constant_weight_sequence, rank, swap_deltas, unrank, GrayState};

fn main() {
    let (k, t) = (6, 3);
    println!("all {} weight-{t} words of length {k}, in revolving-door order:", binomial(k as u64, t as u64));
    let words: Vec<_> = constant_weight_sequence(k, t).unwrap().collect();
    let deltas: Vec<_> = swap_deltas(k, t).unwrap().collect();
    for (i, w) in words.iter().enumerate() {
        let support: Vec<String> = w.support().iter().map(|p| p.to_string()).collect();
        let step = if i == 0 {
            String::new()
        } else {
            let d = deltas[i - 1];
            format!("-{}/+{}", d.out_pos, d.in_pos)
        };
        // Words print g_k first, matching the sequence's usual presentation.
        let printed: String = w.to_row_string().chars().rev().collect();
        println!("  rank {:2}  {step:5} {printed}  {{{}}}", i + 1, support.join(","));
    }

    println!("\nrank/unrank are mutually inverse and need no enumeration:");
    let r = 7;
    let w = unrank(k, t, r).unwrap();
    println!("  unrank({k}, {t}, {r}) = {:?}", w.support());
    println!("  rank(that word)    = {}", rank(&w, t).unwrap());

    println!("\na walk can start mid-sequence (how parallel workers seed):");
    let mut st = GrayState::from_rank(k, t, 17).unwrap();
    print!("  from rank 17:");
    loop {
        print!(" {:?}", st.support());
        if st.advance().is_none() {
            break;
        }
    }
    println!();
}
