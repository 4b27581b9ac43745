//! Shared generators for the integration and acceptance targets.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use toritrans::cone::RationalCone;
use toritrans::lattice::{IntMatrix, IntVector};

/// A random element of `GL_n(ℤ)` with small entries: a signed permutation
/// followed by a few elementary shears.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rows.shuffle(rng);
    for row in rows.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = rng.gen_range(-2i64..=2);
            let src = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x += c * y;
            }
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64_rows(&refs)
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize, range: i64) -> IntVector {
    let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-range..=range)).collect();
    IntVector::from_i64s(&coords)
}

/// A random strongly convex cone; with `full` it also spans the space.
pub fn random_pointed_cone<R: Rng>(rng: &mut R, rank: usize, range: i64, full: bool) -> RationalCone {
    loop {
        let count = rng.gen_range(rank..=rank + 2);
        let gens: Vec<IntVector> = (0..count)
            .map(|_| random_vector(rng, rank, range))
            .filter(|v| !v.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let cone = RationalCone::from_generators(rank, &gens).expect("generators have the right length");
        if cone.is_strongly_convex() && (!full || cone.is_full_dimensional()) {
            return cone;
        }
    }
}
