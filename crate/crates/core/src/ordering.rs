//! Orders used by Nielsen reduction.
//!
//! Coset representatives: every `H1` representative precedes every `H2`
//! representative, and within a factor the word order of
//! [`FactorWord`](crate::factor::FactorWord) decides. Leading halves are
//! ordered length-lexicographically. In the preorder on elements, rear
//! halves `r_m..r_1` are compared with the same order as written, which
//! keeps the preorder well-founded. [`compare_halves`] still offers the
//! swapped-inverse comparison `r <=_R r'` iff `r'^-1 <=_L r^-1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::amalgam::{AmalgamPresentation, GroupWord, Letter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Leading,
    Rear,
}

/// A leading half `l_1..l_m` or a rear half `r_m..r_1` (written order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfWord {
    pub reps: Vec<Letter>,
    pub orientation: Orientation,
}

impl HalfWord {
    pub fn leading(reps: Vec<Letter>) -> Self {
        HalfWord {
            reps,
            orientation: Orientation::Leading,
        }
    }

    pub fn rear(reps: Vec<Letter>) -> Self {
        HalfWord {
            reps,
            orientation: Orientation::Rear,
        }
    }
}

/// Order on `L1 ∪ L2`; inputs are assumed canonical.
pub fn rep_order(x: &Letter, y: &Letter) -> Ordering {
    x.side.cmp(&y.side).then_with(|| x.word.cmp(&y.word))
}

/// Length-lexicographic order on leading halves.
pub fn leading_order(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| rep_order(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn check_rep(g: &AmalgamPresentation, x: &Letter) -> Result<()> {
    let f = g.factor(x.side);
    f.validate(&x.word)?;
    let (rep, _) = f.left_coset_unchecked(&x.word, g.amalgam_generator(x.side));
    if x.word.is_identity() || rep != x.word {
        return Err(Error::NotCanonical(x.word.to_string()));
    }
    Ok(())
}

/// Compares two canonical left coset representatives.
pub fn compare_reps(g: &AmalgamPresentation, x: &Letter, y: &Letter) -> Result<Ordering> {
    check_rep(g, x)?;
    check_rep(g, y)?;
    Ok(rep_order(x, y))
}

fn invert_rear(g: &AmalgamPresentation, rear: &[Letter]) -> Vec<Letter> {
    rear.iter()
        .rev()
        .map(|l| Letter::new(l.side, g.factor(l.side).invert(&l.word)))
        .collect()
}

/// Compares halves of the same orientation.
pub fn compare_halves(g: &AmalgamPresentation, a: &HalfWord, b: &HalfWord) -> Result<Ordering> {
    match (a.orientation, b.orientation) {
        (Orientation::Leading, Orientation::Leading) => Ok(leading_order(&a.reps, &b.reps)),
        (Orientation::Rear, Orientation::Rear) => Ok(leading_order(&invert_rear(g, &b.reps), &invert_rear(g, &a.reps))),
        _ => Err(Error::OrientationMismatch),
    }
}

/// The triple `(lambda, leading half, rear half)` of the representative
/// `g'` of `{g, g^-1}` whose leading half is not larger than that of its
/// inverse (ties pick `g`). Comparing keys realises the preorder on pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PreorderKey {
    pub lambda: usize,
    pub leading: Vec<Letter>,
    /// `r_m..r_1` of `g'`.
    pub rear: Vec<Letter>,
    /// Leading half of `g'^-1`, i.e. `r_1^-1..r_m^-1`.
    pub inverse_rear: Vec<Letter>,
    /// Whether `g' = g^-1`.
    pub inverted: bool,
}

impl Ord for PreorderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lambda
            .cmp(&other.lambda)
            .then_with(|| leading_order(&self.leading, &other.leading))
            .then_with(|| leading_order(&self.rear, &other.rear))
    }
}

impl PartialOrd for PreorderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PreorderKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |xs: &[Letter]| {
            if xs.is_empty() {
                "1".to_string()
            } else {
                xs.iter().map(|l| l.word.to_string()).collect::<Vec<_>>().join(" | ")
            }
        };
        write!(
            f,
            "({}, [{}], [{}])",
            self.lambda,
            half(&self.leading),
            half(&self.rear)
        )
    }
}

impl PreorderKey {
    /// Equality in the preorder sense: same lambda and halves.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

/// Computes the preorder key of `w` from the reduced forms of `w` and `w^-1`.
pub fn preorder_key(g: &AmalgamPresentation, w: &GroupWord) -> PreorderKey {
    let rf = g.reduced_form(w);
    let rf_inv = g.reduced_form(&g.invert(w));
    let m = rf.parts.len();
    let half = m / 2;
    let lead_w = &rf.parts[..half];
    let lead_inv = &rf_inv.parts[..half];
    let inverted = leading_order(lead_w, lead_inv) == Ordering::Greater;
    let (leading, inverse_rear) = if inverted {
        (lead_inv.to_vec(), lead_w.to_vec())
    } else {
        (lead_w.to_vec(), lead_inv.to_vec())
    };
    let rear = invert_rear_of_leading(g, &inverse_rear);
    PreorderKey {
        lambda: m,
        leading,
        rear,
        inverse_rear,
        inverted,
    }
}

fn invert_rear_of_leading(g: &AmalgamPresentation, lead: &[Letter]) -> Vec<Letter> {
    lead.iter()
        .rev()
        .map(|l| Letter::new(l.side, g.factor(l.side).invert(&l.word)))
        .collect()
}

/// `{a, a^-1} ≼ {b, b^-1}`.
pub fn preorder_less(g: &AmalgamPresentation, a: &GroupWord, b: &GroupWord) -> bool {
    preorder_key(g, a) <= preorder_key(g, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::Side;
    use crate::classify::example_group;

    fn rep(g: &AmalgamPresentation, side: Side, raw: &[(usize, i64)]) -> Letter {
        let raw: Vec<_> = raw.iter().map(|&(i, k)| (i - 1, k)).collect();
        Letter::new(side, g.factor(side).normalize(&raw).unwrap())
    }

    fn word(g: &AmalgamPresentation, raw: &[(usize, i64)]) -> GroupWord {
        let raw: Vec<_> = raw.iter().map(|&(i, k)| (i - 1, k)).collect();
        g.word_from_raw(&raw).unwrap()
    }

    #[test]
    fn rep_examples() {
        let g = example_group();
        let a1 = rep(&g, Side::H1, &[(1, 1)]);
        let a2 = rep(&g, Side::H1, &[(2, 1)]);
        let a4 = rep(&g, Side::H2, &[(4, 1)]);
        assert_eq!(compare_reps(&g, &a1, &a4).unwrap(), Ordering::Less);
        assert_eq!(compare_reps(&g, &a1, &a1).unwrap(), Ordering::Equal);
        assert_eq!(compare_reps(&g, &a2, &a1).unwrap(), Ordering::Greater);
    }

    #[test]
    fn compare_reps_rejects_non_representatives() {
        let g = example_group();
        // a2 a3 = a1 u is not the least element of its coset.
        let bad = rep(&g, Side::H1, &[(2, 1), (3, 1)]);
        let a1 = rep(&g, Side::H1, &[(1, 1)]);
        assert!(compare_reps(&g, &bad, &a1).is_err());
    }

    #[test]
    fn half_examples() {
        let g = example_group();
        let a1 = rep(&g, Side::H1, &[(1, 1)]);
        let a2 = rep(&g, Side::H1, &[(2, 1)]);
        let a4 = rep(&g, Side::H2, &[(4, 1)]);
        let h = |xs: Vec<Letter>| HalfWord::leading(xs);
        assert_eq!(
            compare_halves(&g, &h(vec![a1.clone()]), &h(vec![a1.clone(), a4.clone()])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_halves(&g, &h(vec![a1.clone(), a4.clone()]), &h(vec![a2, a4.clone()])).unwrap(),
            Ordering::Less
        );
        let x = h(vec![a1.clone(), a4.clone()]);
        assert_eq!(compare_halves(&g, &x, &x).unwrap(), Ordering::Equal);
        assert_eq!(
            compare_halves(&g, &x, &HalfWord::rear(vec![a4])),
            Err(Error::OrientationMismatch)
        );
    }

    #[test]
    fn preorder_examples() {
        let g = example_group();
        let in_a = g.amalgam_power(2);
        let long = word(&g, &[(1, 1), (4, 1)]);
        assert!(preorder_less(&g, &in_a, &long));
        assert!(!preorder_less(&g, &long, &in_a));
        assert!(preorder_less(&g, &long, &long));

        // a1 a4 u^2 a4 a1 and a1 a4 u^3 a4 a1 differ only in the kernel.
        let a14 = word(&g, &[(1, 1), (4, 1)]);
        let x = g.conjugate(&a14, &g.amalgam_power(2));
        let y = g.conjugate(&a14, &g.amalgam_power(3));
        assert!(!g.equal(&x, &y));
        assert!(preorder_less(&g, &x, &y));
        assert!(preorder_less(&g, &y, &x));
    }
}
