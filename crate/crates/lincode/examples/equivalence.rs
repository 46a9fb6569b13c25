//! Permutation equivalence with verified witnesses.
//!
//! Run with: cargo run --example equivalence

use lincode::equiv::{are_equivalent, EquivLimits, Permutation};
use lincode::gf2::parse_generator_matrix;
use lincode::synth::{random_full_rank_matrix, random_image_list, SplitMix64};

fn main() {
    let limits = EquivLimits::default();
    let mut rng = SplitMix64::new(2024);

    // Plant a permutation and recover (some) witness for it.
    let a = random_full_rank_matrix(12, 6, &mut rng);
    let planted = Permutation::from_image(random_image_list(12, &mut rng)).unwrap();
    let b = planted.apply_to_matrix(&a).unwrap();
    println!("planted permutation: {planted}");
    match are_equivalent(&a, &b, &limits).unwrap() {
        Some(witness) => {
            println!("recovered witness:   {witness}");
            let moved = witness.apply_to_matrix(&a).unwrap();
            println!("witness verified:    {}", moved.same_row_space(&b).unwrap());
        }
        None => unreachable!("a planted permutation is always recoverable"),
    }

    // Inequivalent codes with the same parameters: the weight enumerator
    // already separates these two [8,4] codes.
    let hamming = parse_generator_matrix("8 4\n10000111\n01001011\n00101101\n00011110\n").unwrap();
    let pairs = parse_generator_matrix("8 4\n11000000\n00110000\n00001100\n00000011\n").unwrap();
    println!(
        "\nextended Hamming vs pair code: equivalent = {}",
        are_equivalent(&hamming, &pairs, &limits).unwrap().is_some()
    );

    // Oversized instances are refused, not attempted.
    let big = random_full_rank_matrix(30, 5, &mut rng);
    match are_equivalent(&big, &big, &limits) {
        Err(e) => println!("n = 30 refused: {e}"),
        Ok(_) => unreachable!(),
    }
}
