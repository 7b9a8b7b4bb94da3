//! Seeded input generators shared by the benchmarks.

use quasicartan_core::{Int, IntMatrix, SkewSymMatrix, SymEvenMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric, even diagonal, off-diagonal entries in `[-bound, bound]`.
pub fn random_sym_even<R: Rng>(rng: &mut R, n: usize, bound: i64) -> SymEvenMatrix {
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, Int::from(2 * rng.gen_range(-bound / 2..=bound / 2)));
        for j in 0..i {
            let x = Int::from(rng.gen_range(-bound..=bound));
            m.set(i, j, x.clone());
            m.set(j, i, x);
        }
    }
    SymEvenMatrix::new(m).expect("symmetric with even diagonal")
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> SkewSymMatrix {
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..i {
            let x = Int::from(rng.gen_range(-bound..=bound));
            m.set(j, i, -&x);
            m.set(i, j, x);
        }
    }
    SkewSymMatrix::new(m).expect("skew-symmetric")
}
