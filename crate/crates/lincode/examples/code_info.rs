//! Duals, self-duality, and weight enumerators for a few small codes.
//!
//! Run with: cargo run --example code_info

use lincode::gf2::{render_generator_matrix, GeneratorMatrix};
use lincode::synth::{extended_hamming_8_4, identity_code, repetition_code};

fn describe(name: &str, m: &GeneratorMatrix) {
    let counts = m.weight_enumerator(28).unwrap();
    println!("{name}: [{}, {}]", m.n(), m.k());
    println!("  self-orthogonal: {}", m.is_self_orthogonal());
    println!("  self-dual:       {}", m.is_self_dual());
    println!("  weight counts:   {:?}", counts.counts());
    println!("  min distance:    {}", counts.min_positive_weight().unwrap());
}

fn main() {
    describe("repetition [2,1]", &repetition_code(2));
    describe("identity [4,4]", &identity_code(4));
    describe("extended Hamming [8,4]", &extended_hamming_8_4());

    let h = extended_hamming_8_4();
    let dual = h.dual();
    println!("\ndual of the extended Hamming code (same code — it is self-dual):");
    print!("{}", render_generator_matrix(&dual));
    assert!(h.same_row_space(&dual).unwrap());

    let rep = repetition_code(4);
    println!("\ndual of the [4,1] repetition code (the even-weight code):");
    print!("{}", render_generator_matrix(&rep.dual()));
}
