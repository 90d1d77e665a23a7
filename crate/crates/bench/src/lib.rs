//! Fixtures shared by the criterion benches.

use solenoid_core::{Permutation, SolenoidType};

pub fn sample_types() -> Vec<SolenoidType> {
    ["|2", "2,3|5,7", "6,6|5", "4,9|6,10,15", "|30"]
        .iter()
        .map(|s| s.parse().expect("fixture type"))
        .collect()
}

/// `(1 2 … k)(k+1 … 2k)…` with cycle lengths taken from `lengths`.
pub fn block_permutation(lengths: &[usize]) -> Permutation {
    let mut next = 1;
    let cycles = lengths
        .iter()
        .map(|&l| {
            let c: Vec<usize> = (next..next + l).collect();
            next += l;
            c
        })
        .collect();
    Permutation::from_cycles(next - 1, cycles).expect("fixture permutation")
}
