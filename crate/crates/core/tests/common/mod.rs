//! Independent oracles shared by the integration tests.
//!
//! The rewriter uses no normal forms: it works on letter strings of the
//! one-relator presentation `<a_i | a_i^{e_i}, U V>`. The representative
//! enumerator only relies on factor-level coset solving.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use amalgam::classify::FTypeSpec;
use amalgam::{AmalgamPresentation, FactorWord, Letter, Order, Side};

/// A letter `a_g^{+1}` or `a_g^{-1}`; finite-order generators only use `+1`.
pub type L = (usize, i8);

pub struct NaiveRewriter {
    orders: Vec<u64>,
    /// Cyclic relator words: `U V` and its inverse.
    relators: Vec<Vec<L>>,
}

impl NaiveRewriter {
    pub fn new(spec: &FTypeSpec) -> Self {
        let orders = spec.orders.clone();
        let mut r = Vec::new();
        for &(g, k) in spec.u.iter().chain(&spec.v) {
            r.extend(letters_of(&orders, g, k));
        }
        let mut w = NaiveRewriter {
            orders,
            relators: Vec::new(),
        };
        let inv = w.invert(&r);
        w.relators = vec![r, inv];
        w
    }

    pub fn letters(&self, raw: &[(usize, i64)]) -> Vec<L> {
        raw.iter().flat_map(|&(g, k)| letters_of(&self.orders, g, k)).collect()
    }

    pub fn invert(&self, w: &[L]) -> Vec<L> {
        w.iter()
            .rev()
            .flat_map(|&(g, s)| {
                if self.orders[g] == 0 {
                    vec![(g, -s)]
                } else {
                    vec![(g, 1); self.orders[g] as usize - 1]
                }
            })
            .collect()
    }

    /// Free cancellation and deletion of `a_g^{e_g}`.
    pub fn cancel(&self, w: &[L]) -> Vec<L> {
        let mut out: Vec<L> = Vec::with_capacity(w.len());
        for &x in w {
            if let Some(&y) = out.last() {
                if self.orders[x.0] == 0 && y.0 == x.0 && y.1 == -x.1 {
                    out.pop();
                    continue;
                }
            }
            out.push(x);
            let e = self.orders[x.0] as usize;
            if e > 0 && out.len() >= e && out[out.len() - e..].iter().all(|&y| y == x) {
                out.truncate(out.len() - e);
            }
        }
        out
    }

    /// Replaces a subword equal to more than half of a cyclic relator by
    /// the inverse of the remainder, once.
    fn dehn_step(&self, w: &[L]) -> Option<Vec<L>> {
        for r in &self.relators {
            let n = r.len();
            for start in 0..n {
                let rot: Vec<L> = r[start..].iter().chain(&r[..start]).copied().collect();
                for len in (n / 2 + 1..=n).rev() {
                    let piece = &rot[..len];
                    if let Some(at) = w.windows(len).position(|s| s == piece) {
                        let rest = self.invert(&rot[len..]);
                        let mut out = w[..at].to_vec();
                        out.extend(rest);
                        out.extend_from_slice(&w[at + len..]);
                        return Some(self.cancel(&out));
                    }
                }
            }
        }
        None
    }

    /// Greedy Dehn rewriting until no step shortens.
    pub fn greedy(&self, w: &[L]) -> Vec<L> {
        let mut cur = self.cancel(w);
        while let Some(next) = self.dehn_step(&cur) {
            if next.len() >= cur.len() {
                break;
            }
            cur = next;
        }
        cur
    }

    /// Searches for a derivation of the empty word using at most `depth`
    /// relator insertions, each followed by greedy rewriting.
    pub fn is_trivial(&self, w: &[L], depth: usize, max_len: usize) -> bool {
        let start = self.greedy(w);
        if start.is_empty() {
            return true;
        }
        let mut seen: HashSet<Vec<L>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((cur, d)) = queue.pop_front() {
            if d == depth {
                continue;
            }
            for r in &self.relators {
                for s in 0..r.len() {
                    let rot: Vec<L> = r[s..].iter().chain(&r[..s]).copied().collect();
                    for at in 0..=cur.len() {
                        let mut next = cur[..at].to_vec();
                        next.extend_from_slice(&rot);
                        next.extend_from_slice(&cur[at..]);
                        let next = self.greedy(&next);
                        if next.is_empty() {
                            return true;
                        }
                        if next.len() <= max_len && seen.insert(next.clone()) {
                            queue.push_back((next, d + 1));
                        }
                    }
                }
            }
        }
        false
    }

    pub fn equal(&self, a: &[(usize, i64)], b: &[(usize, i64)], depth: usize) -> bool {
        let mut w = self.letters(a);
        w.extend(self.invert(&self.letters(b)));
        self.is_trivial(&w, depth, 4 * w.len() + 12)
    }
}

fn letters_of(orders: &[u64], g: usize, k: i64) -> Vec<L> {
    match orders[g] {
        0 => vec![(g, k.signum() as i8); k.unsigned_abs() as usize],
        e => vec![(g, 1); k.rem_euclid(e as i64) as usize],
    }
}

/// Canonical representatives of `L_side` with bounded syllable length and
/// exponent.
pub fn reps(g: &AmalgamPresentation, side: Side, len: usize, max_exp: i64) -> Vec<Letter> {
    let f = g.factor(side);
    let gen = g.amalgam_generator(side);
    let mut syllables = Vec::new();
    for a in f.generator_range() {
        let exps: Vec<i64> = match f.order(a) {
            Order::Finite(e) => (1..e as i64).filter(|k| *k <= max_exp).collect(),
            Order::Infinite => (1..=max_exp).flat_map(|k| [k, -k]).collect(),
        };
        syllables.extend(exps.into_iter().map(|k| (a, k)));
    }
    let mut out = Vec::new();
    let mut layer: Vec<Vec<(usize, i64)>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &s in &syllables {
                if w.last().is_some_and(|l: &(usize, i64)| l.0 == s.0) {
                    continue;
                }
                let mut v = w.clone();
                v.push(s);
                let fw: FactorWord = f.normalize(&v).unwrap();
                if f.solve_left_coset(&fw, gen).unwrap().0 == fw {
                    out.push(Letter::new(side, fw));
                }
                next.push(v);
            }
        }
        layer = next;
    }
    out.sort_by(|a, b| a.word.cmp(&b.word));
    out.dedup();
    out
}
