//! Nielsen reduction of elements that lie in one conjugate of a factor.
//!
//! The factor is a free product of cyclics, so the same length argument
//! applies with a trivial amalgamated subgroup: syllables play the role of
//! coset representatives. Elements conjugate into the same cyclic free
//! factor are then combined by a Euclidean step.

use std::cmp::Ordering;

use crate::amalgam::{AmalgamPresentation, GroupWord, Side};
use crate::error::{Error, Result};
use crate::factor::{CyclicFactorPresentation, FactorWord, Order, Syllable};
use crate::nielsen::{apply_move, GeneratingTuple, NielsenMove};

#[derive(Debug, Clone, PartialEq, Eq)]
struct FactorKey {
    len: usize,
    leading: Vec<Syllable>,
    rear: Vec<Syllable>,
}

fn lex(a: &[Syllable], b: &[Syllable]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for FactorKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| lex(&self.leading, &other.leading))
            .then_with(|| lex(&self.rear, &other.rear))
    }
}

impl PartialOrd for FactorKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn factor_key(f: &CyclicFactorPresentation, y: &FactorWord) -> FactorKey {
    let inv = f.invert(y);
    let half = y.syllable_length() / 2;
    let a = y.syllables()[..half].to_vec();
    let b = inv.syllables()[..half].to_vec();
    let (leading, inverse_rear) = if lex(&a, &b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    };
    let rear = inverse_rear
        .iter()
        .rev()
        .map(|s| match f.order(s.generator) {
            Order::Finite(e) => Syllable::new(s.generator, e as i64 - s.exponent),
            Order::Infinite => Syllable::new(s.generator, -s.exponent),
        })
        .collect();
    FactorKey {
        len: y.syllable_length(),
        leading,
        rear,
    }
}

/// Result of reducing a block: the full tuple after the moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReduction {
    pub moves: Vec<NielsenMove>,
    pub tuple: GeneratingTuple,
}

fn exponent_size(f: &CyclicFactorPresentation, s: &Syllable) -> u64 {
    match f.order(s.generator) {
        Order::Finite(_) => s.exponent as u64,
        Order::Infinite => s.exponent.unsigned_abs(),
    }
}

/// A Euclidean move between two elements of one conjugate `c <a> c^-1`.
fn euclid_move(f: &CyclicFactorPresentation, images: &[(usize, FactorWord)]) -> Option<NielsenMove> {
    for (x, (i, yi)) in images.iter().enumerate() {
        if yi.is_identity() {
            continue;
        }
        let (c, core) = f.cyclic_reduce(yi);
        let [s] = core.syllables() else { continue };
        let c_inv = f.invert(&c);
        for (j, yj) in images.iter().skip(x + 1) {
            if yj.is_identity() {
                continue;
            }
            let z = f.conjugate(&c_inv, yj);
            let [t] = z.syllables() else { continue };
            if t.generator != s.generator {
                continue;
            }
            let (target, other, st, so) = if exponent_size(f, s) >= exponent_size(f, t) {
                (*i, *j, s, t)
            } else {
                (*j, *i, t, s)
            };
            let eps = match f.order(s.generator) {
                Order::Finite(_) => -1,
                Order::Infinite => -(st.exponent.signum() * so.exponent.signum()) as i8,
            };
            return Some(NielsenMove::MultiplyRight(target, other, eps));
        }
    }
    None
}

/// Reduces the elements at `block`, all of which satisfy
/// `conj * x * conj^-1 ∈ H_side`, using moves among those slots only.
pub fn reduce_in_factor(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    block: &[usize],
    side: Side,
    conj: &GroupWord,
    budget: usize,
) -> Result<FactorReduction> {
    let f = g.factor(side);
    let image = |w: &GroupWord| {
        g.conjugate_in_factor(side, conj, w)
            .ok_or_else(|| Error::InvalidMove(format!("{w} is not in the stated factor conjugate")))
    };
    let mut tuple = t.clone();
    let mut images: Vec<(usize, FactorWord)> = block
        .iter()
        .map(|&i| Ok((i, image(&t.elements[i])?)))
        .collect::<Result<_>>()?;
    let mut moves = Vec::new();

    'outer: loop {
        if moves.len() >= budget {
            return Err(Error::StepBudgetExceeded(budget));
        }
        let mut found = None;
        'scan: for (a, (i, yi)) in images.iter().enumerate() {
            if yi.is_identity() {
                continue;
            }
            let key = factor_key(f, yi);
            for (b, (j, yj)) in images.iter().enumerate() {
                if a == b || yj.is_identity() {
                    continue;
                }
                for e in [1i8, -1] {
                    let yje = f.pow(yj, e as i64);
                    for (m, w) in [
                        (NielsenMove::MultiplyRight(*i, *j, e), f.mul(yi, &yje)),
                        (NielsenMove::MultiplyLeft(*i, *j, e), f.mul(&yje, yi)),
                    ] {
                        if w.is_identity() || factor_key(f, &w) < key {
                            found = Some((a, m, w));
                            break 'scan;
                        }
                    }
                }
            }
        }
        let (a, m, w) = match found {
            Some(hit) => hit,
            None => match euclid_move(f, &images) {
                Some(m) => {
                    let a = images.iter().position(|(i, _)| *i == m.target()).expect("block slot");
                    let NielsenMove::MultiplyRight(_, j, e) = m else {
                        unreachable!()
                    };
                    let yj = &images.iter().find(|(k, _)| *k == j).expect("block slot").1;
                    let w = f.mul(&images[a].1, &f.pow(yj, e as i64));
                    (a, m, w)
                }
                None => break 'outer,
            },
        };
        tuple = apply_move(g, &tuple, m)?;
        images[a].1 = w;
        moves.push(m);
    }
    Ok(FactorReduction { moves, tuple })
}
