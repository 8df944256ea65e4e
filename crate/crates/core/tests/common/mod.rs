//! Seeded generators of monomial ideals shared by the integration tests.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use transverse::ideal::is_transverse;
use transverse::{Field, Monomial, MonomialIdeal, Ring};

pub fn ring(n: usize) -> Ring {
    Ring::standard(n, Field::Rational)
}

pub fn ideal(r: &Ring, gens: &[&str]) -> MonomialIdeal {
    MonomialIdeal::parse(r, gens).unwrap()
}

/// A random ideal with up to `max_gens` generators in the variables `vars`,
/// exponents at most 2.
pub fn random_ideal(
    rng: &mut StdRng,
    nvars: usize,
    vars: &[usize],
    max_gens: usize,
) -> MonomialIdeal {
    loop {
        let count = rng.gen_range(1..=max_gens);
        let mut gens = Vec::new();
        for _ in 0..count {
            let mut e = vec![0u32; nvars];
            for &v in vars {
                e[v] = rng.gen_range(0..=2);
            }
            if e.iter().any(|&x| x > 0) {
                gens.push(Monomial::new(e));
            }
        }
        if let Ok(i) = MonomialIdeal::new(nvars, gens) {
            if !i.is_zero() && !i.is_unit() {
                return i;
            }
        }
    }
}

/// Pairs of ideals in disjoint sets of variables, hence transverse, with at
/// most 8 generators in the product.
pub fn transverse_pairs(seed: u64, count: usize) -> Vec<(Ring, MonomialIdeal, MonomialIdeal)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=5);
        let mut vars: Vec<usize> = (0..n).collect();
        vars.shuffle(&mut rng);
        let k = rng.gen_range(1..n);
        let i = random_ideal(&mut rng, n, &vars[..k], 3);
        let j = random_ideal(&mut rng, n, &vars[k..], 3);
        if i.len() * j.len() <= 8 {
            out.push((ring(n), i, j));
        }
    }
    out
}

/// Pairs sharing variables that fail to be transverse.
pub fn non_transverse_pairs(seed: u64, count: usize) -> Vec<(Ring, MonomialIdeal, MonomialIdeal)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=4);
        let vars: Vec<usize> = (0..n).collect();
        let i = random_ideal(&mut rng, n, &vars, 3);
        let j = random_ideal(&mut rng, n, &vars, 3);
        if i.len() * j.len() <= 8 && !is_transverse(&i, &j).unwrap() {
            out.push((ring(n), i, j));
        }
    }
    out
}
