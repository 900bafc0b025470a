//! Seeded generators for words, tuples and presentations.
//!
//! Every item of a batch gets its own stream `(seed, index)`, so results do
//! not depend on evaluation order or thread count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amalgam::{AmalgamPresentation, GroupWord, Letter, Side};
use crate::classify::{build_ftype, FTypeSpec};
use crate::factor::{CyclicFactorPresentation, FactorWord, Order};
use crate::nielsen::GeneratingTuple;

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

fn random_exponent<R: Rng + ?Sized>(order: Order, rng: &mut R) -> i64 {
    match order {
        Order::Finite(e) => rng.random_range(1..e as i64),
        Order::Infinite => {
            let k = rng.random_range(1..=2);
            if rng.random_bool(0.5) {
                k
            } else {
                -k
            }
        }
    }
}

/// A canonical factor word with `1..=max_syllables` syllables.
pub fn random_factor_word<R: Rng + ?Sized>(
    f: &CyclicFactorPresentation,
    max_syllables: usize,
    rng: &mut R,
) -> FactorWord {
    let len = rng.random_range(1..=max_syllables.max(1));
    let mut raw: Vec<(usize, i64)> = Vec::with_capacity(len);
    let gens: Vec<usize> = f.generator_range().collect();
    while raw.len() < len {
        let g = gens[rng.random_range(0..gens.len())];
        if raw.last().is_some_and(|&(h, _)| h == g) {
            if gens.len() == 1 {
                break;
            }
            continue;
        }
        raw.push((g, random_exponent(f.order(g), rng)));
    }
    f.normalize(&raw).expect("generators belong to the factor")
}

/// A product of `0..=max_letters` alternating factor letters.
pub fn random_group_word<R: Rng + ?Sized>(g: &AmalgamPresentation, max_letters: usize, rng: &mut R) -> GroupWord {
    let len = rng.random_range(0..=max_letters);
    let mut side = if rng.random_bool(0.5) { Side::H1 } else { Side::H2 };
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        letters.push(Letter::new(side, random_factor_word(g.factor(side), 2, rng)));
        side = side.other();
    }
    GroupWord::from_letters(letters)
}

/// A nonempty raw syllable sequence over all generators.
pub fn random_raw_word<R: Rng + ?Sized>(
    g: &AmalgamPresentation,
    max_syllables: usize,
    rng: &mut R,
) -> Vec<(usize, i64)> {
    let len = rng.random_range(1..=max_syllables.max(1));
    (0..len)
        .map(|_| {
            let gen = rng.random_range(0..g.generator_count());
            let side = g.side_of_generator(gen).expect("generator in range");
            (gen, random_exponent(g.factor(side).order(gen), rng))
        })
        .collect()
}

/// Inserts `count` trivial pieces into a raw word: `a_i^{e_i}`, `u v^-1`,
/// `v^-1 u`, or `x x^-1`.
pub fn insert_relators<R: Rng + ?Sized>(
    g: &AmalgamPresentation,
    raw: &[(usize, i64)],
    count: usize,
    rng: &mut R,
) -> Vec<(usize, i64)> {
    let u = g.u().to_raw();
    let v_inv = g.factor(Side::H2).invert(g.v()).to_raw();
    let mut out = raw.to_vec();
    for _ in 0..count {
        let piece: Vec<(usize, i64)> = match rng.random_range(0..4) {
            0 => {
                let gen = rng.random_range(0..g.generator_count());
                let side = g.side_of_generator(gen).expect("generator in range");
                match g.factor(side).order(gen) {
                    Order::Finite(e) => vec![(gen, e as i64)],
                    Order::Infinite => vec![(gen, 1), (gen, -1)],
                }
            }
            1 => u.iter().chain(&v_inv).copied().collect(),
            2 => v_inv.iter().chain(&u).copied().collect(),
            _ => {
                let gen = rng.random_range(0..g.generator_count());
                let k = rng.random_range(1..=3);
                vec![(gen, k), (gen, -k)]
            }
        };
        let at = rng.random_range(0..=out.len());
        out.splice(at..at, piece);
    }
    out
}

/// A tuple of `1..=max_n` random words.
pub fn random_tuple<R: Rng + ?Sized>(
    g: &AmalgamPresentation,
    max_n: usize,
    max_letters: usize,
    rng: &mut R,
) -> GeneratingTuple {
    let n = rng.random_range(1..=max_n);
    GeneratingTuple::new((0..n).map(|_| random_group_word(g, max_letters, rng)).collect())
}

/// Cyclically reduced word using every generator of `gens` at least once.
fn covering_word<R: Rng + ?Sized>(orders: &[u64], gens: &[usize], rng: &mut R) -> Vec<(usize, i64)> {
    let mut order: Vec<usize> = gens.to_vec();
    order.shuffle(rng);
    let extra = rng.random_range(0..=2);
    for _ in 0..extra {
        let g = gens[rng.random_range(0..gens.len())];
        if order.last() != Some(&g) {
            order.push(g);
        }
    }
    order
        .into_iter()
        .map(|g| (g, rng.random_range(1..orders[g] as i64)))
        .collect()
}

/// A random F-type description with `4 <= n <= max_n` generators whose presentation
/// passes the generator and bounded malnormality checks, with `U` and `V`
/// not proper powers.
pub fn random_ftype<R: Rng + ?Sized>(
    max_n: usize,
    malnormal_bound: usize,
    rng: &mut R,
) -> (FTypeSpec, AmalgamPresentation) {
    let max_n = max_n.max(4);
    loop {
        let n = rng.random_range(4..=max_n);
        let split = rng.random_range(2..=n - 2);
        let orders: Vec<u64> = (0..n).map(|_| rng.random_range(2..=5)).collect();
        let h1: Vec<usize> = (0..split).collect();
        let h2: Vec<usize> = (split..n).collect();
        let spec = FTypeSpec {
            u: covering_word(&orders, &h1, rng),
            v: covering_word(&orders, &h2, rng),
            orders,
            split,
        };
        let Ok((g, report)) = build_ftype(&spec, malnormal_bound) else {
            continue;
        };
        if report.is_clean() && report.u_proper_power.is_none() && report.v_proper_power.is_none() {
            return (spec, g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::example_group;

    #[test]
    fn streams_are_independent_of_order() {
        let a: u64 = rng(5, 3).random();
        let _: u64 = rng(5, 2).random();
        let b: u64 = rng(5, 3).random();
        assert_eq!(a, b);
        assert_ne!(a, rng(5, 4).random::<u64>());
    }

    #[test]
    fn insertions_preserve_the_element() {
        let g = example_group();
        let mut r = rng(1, 0);
        for _ in 0..50 {
            let raw = random_raw_word(&g, 6, &mut r);
            let noisy = insert_relators(&g, &raw, 3, &mut r);
            let a = g.word_from_raw(&raw).unwrap();
            let b = g.word_from_raw(&noisy).unwrap();
            assert!(g.equal(&a, &b));
        }
    }

    #[test]
    fn random_ftype_is_clean() {
        let mut r = rng(9, 0);
        let (spec, g) = random_ftype(8, 2, &mut r);
        assert!(spec.orders.len() <= 8);
        assert!(crate::classify::involves_all_generators(&g));
    }
}
