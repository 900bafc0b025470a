//! Free products of cyclic groups `<a_1, ..., a_p | a_i^{e_i} = 1>`.
//!
//! Elements are stored as canonical syllable words: adjacent syllables use
//! distinct generators and every exponent is nonzero. For a generator of
//! finite order `e` the exponent lies in `[1, e-1]`; for a generator of
//! infinite order it is any nonzero integer.
//!
//! Generator indices are global (0-based) so that the two factors of an
//! amalgam can share one naming scheme `a1, a2, ...`; a factor owns the
//! contiguous range `offset..offset + rank`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of a cyclic generator or of a group element.
///
/// In presentations and serialized records infinity is encoded as `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    /// Decodes a presentation entry, `0` meaning infinite order.
    pub fn from_code(code: u64) -> Result<Order> {
        match code {
            0 => Ok(Order::Infinite),
            1 => Err(Error::InvalidOrder(1)),
            e => Ok(Order::Finite(e)),
        }
    }

    pub fn code(self) -> u64 {
        match self {
            Order::Finite(e) => e,
            Order::Infinite => 0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl TryFrom<u64> for Order {
    type Error = Error;
    fn try_from(code: u64) -> Result<Self> {
        Order::from_code(code)
    }
}

impl From<Order> for u64 {
    fn from(o: Order) -> u64 {
        o.code()
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) => write!(f, "{e}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// One block `a_g^k` of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Syllable { generator, exponent }
    }

    /// Graded key: generator first, then `|k|`, positive before negative.
    fn key(&self) -> (usize, u64, bool) {
        (self.generator, self.exponent.unsigned_abs(), self.exponent < 0)
    }
}

impl Ord for Syllable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Syllable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "a{}", self.generator + 1)
        } else {
            write!(f, "a{}^{}", self.generator + 1, self.exponent)
        }
    }
}

/// A canonical word in a free product of cyclic groups. The empty word is
/// the identity.
///
/// Words are totally ordered by syllable length, then total exponent weight
/// `sum |k|`, then lexicographically by syllable key. Every word has only
/// finitely many predecessors of the same syllable length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorWord(Vec<Syllable>);

impl FactorWord {
    pub fn identity() -> Self {
        FactorWord(Vec::new())
    }

    /// Wraps syllables that are already canonical. Use
    /// [`CyclicFactorPresentation::normalize`] for raw input.
    pub(crate) fn from_canonical(syllables: Vec<Syllable>) -> Self {
        FactorWord(syllables)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllable_length(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    pub fn generators(&self) -> BTreeSet<usize> {
        self.0.iter().map(|s| s.generator).collect()
    }

    pub fn first(&self) -> Option<&Syllable> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Syllable> {
        self.0.last()
    }

    /// Raw `(generator, exponent)` pairs.
    pub fn to_raw(&self) -> Vec<(usize, i64)> {
        self.0.iter().map(|s| (s.generator, s.exponent)).collect()
    }
}

impl Ord for FactorWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FactorWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FactorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `<a_{offset+1}, ..., a_{offset+rank} | a_i^{e_i} = 1>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicFactorPresentation {
    offset: usize,
    orders: Vec<Order>,
}

impl CyclicFactorPresentation {
    pub fn new(offset: usize, orders: Vec<Order>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyFactor);
        }
        Ok(CyclicFactorPresentation { offset, orders })
    }

    /// Builds a factor from order codes (`0` = infinite).
    pub fn from_codes(offset: usize, codes: &[u64]) -> Result<Self> {
        let orders = codes.iter().map(|&c| Order::from_code(c)).collect::<Result<Vec<_>>>()?;
        Self::new(offset, orders)
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn generator_range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.orders.len()
    }

    pub fn contains_generator(&self, g: usize) -> bool {
        self.generator_range().contains(&g)
    }

    /// Order of generator `g` (global index). Panics if `g` is foreign.
    pub fn order(&self, g: usize) -> Order {
        self.orders[g - self.offset]
    }

    fn check_generator(&self, g: usize) -> Result<()> {
        if self.contains_generator(g) {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(g, self.offset, self.offset + self.rank()))
        }
    }

    /// Checks that a word only uses generators of this factor and has
    /// canonical exponents.
    pub fn validate(&self, w: &FactorWord) -> Result<()> {
        for (i, s) in w.0.iter().enumerate() {
            self.check_generator(s.generator)?;
            let ok = match self.order(s.generator) {
                Order::Finite(e) => s.exponent >= 1 && (s.exponent as u64) < e,
                Order::Infinite => s.exponent != 0,
            };
            let distinct = i == 0 || w.0[i - 1].generator != s.generator;
            if !ok || !distinct {
                return Err(Error::NotCanonical(w.to_string()));
            }
        }
        Ok(())
    }

    fn reduce_exponent(&self, g: usize, k: i64) -> i64 {
        match self.order(g) {
            Order::Finite(e) => k.rem_euclid(e as i64),
            Order::Infinite => k,
        }
    }

    /// Appends one syllable, merging and cancelling against the tail.
    fn push(&self, out: &mut Vec<Syllable>, g: usize, k: i64) {
        let k = self.reduce_exponent(g, k);
        if k == 0 {
            return;
        }
        match out.last_mut() {
            Some(top) if top.generator == g => {
                let merged = self.reduce_exponent(g, top.exponent + k);
                if merged == 0 {
                    out.pop();
                } else {
                    top.exponent = merged;
                }
            }
            _ => out.push(Syllable::new(g, k)),
        }
    }

    /// Canonical form of a raw syllable sequence.
    pub fn normalize(&self, raw: &[(usize, i64)]) -> Result<FactorWord> {
        let mut out = Vec::with_capacity(raw.len());
        for &(g, k) in raw {
            self.check_generator(g)?;
            self.push(&mut out, g, k);
        }
        Ok(FactorWord(out))
    }

    /// The generator `a_g` as a word.
    pub fn generator(&self, g: usize) -> Result<FactorWord> {
        self.normalize(&[(g, 1)])
    }

    /// Product of canonical words over this factor (not re-validated).
    pub fn mul(&self, a: &FactorWord, b: &FactorWord) -> FactorWord {
        let mut out = a.0.clone();
        for s in &b.0 {
            self.push(&mut out, s.generator, s.exponent);
        }
        FactorWord(out)
    }

    /// Checked product.
    pub fn multiply(&self, a: &FactorWord, b: &FactorWord) -> Result<FactorWord> {
        self.validate(a).map_err(|_| Error::PresentationMismatch)?;
        self.validate(b).map_err(|_| Error::PresentationMismatch)?;
        Ok(self.mul(a, b))
    }

    pub fn mul_all<'a>(&self, words: impl IntoIterator<Item = &'a FactorWord>) -> FactorWord {
        let mut out = Vec::new();
        for w in words {
            for s in &w.0 {
                self.push(&mut out, s.generator, s.exponent);
            }
        }
        FactorWord(out)
    }

    pub fn invert(&self, w: &FactorWord) -> FactorWord {
        FactorWord(
            w.0.iter()
                .rev()
                .map(|s| Syllable::new(s.generator, self.reduce_exponent(s.generator, -s.exponent)))
                .collect(),
        )
    }

    pub fn pow(&self, w: &FactorWord, k: i64) -> FactorWord {
        let base = if k < 0 { self.invert(w) } else { w.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            for s in &base.0 {
                self.push(&mut out, s.generator, s.exponent);
            }
        }
        FactorWord(out)
    }

    /// `c w c^-1`.
    pub fn conjugate(&self, c: &FactorWord, w: &FactorWord) -> FactorWord {
        self.mul_all([c, w, &self.invert(c)])
    }

    /// Writes `w = conjugator * core * conjugator^-1` with `core` cyclically
    /// reduced.
    pub fn cyclic_reduce(&self, w: &FactorWord) -> (FactorWord, FactorWord) {
        let mut conjugator = FactorWord::identity();
        let mut core = w.clone();
        while core.0.len() >= 2 && core.0[0].generator == core.0[core.0.len() - 1].generator {
            let head = FactorWord(vec![core.0[0]]);
            core = self.mul_all([&self.invert(&head), &core, &head]);
            conjugator = self.mul(&conjugator, &head);
        }
        (conjugator, core)
    }

    pub fn is_cyclically_reduced(&self, w: &FactorWord) -> bool {
        w.0.len() < 2 || w.0[0].generator != w.0[w.0.len() - 1].generator
    }

    /// Exact order of `w`.
    pub fn order_of(&self, w: &FactorWord) -> Order {
        let (_, core) = self.cyclic_reduce(w);
        match core.0.as_slice() {
            [] => Order::Finite(1),
            [s] => match self.order(s.generator) {
                Order::Finite(e) => Order::Finite(e / gcd(e, s.exponent.unsigned_abs())),
                Order::Infinite => Order::Infinite,
            },
            _ => Order::Infinite,
        }
    }

    /// Maximal decomposition `w = root^exponent` with `exponent >= 2`.
    ///
    /// For a single syllable `a^t` of finite order `e` the exponent is the
    /// index `gcd(t, e)` of `<a^t>` in `<a>`, and the root generates `<a>`.
    pub fn proper_power(&self, w: &FactorWord) -> Option<(FactorWord, u64)> {
        let (c, core) = self.cyclic_reduce(w);
        let (root_core, exponent) = match core.0.as_slice() {
            [] => return None,
            [s] => match self.order(s.generator) {
                Order::Finite(e) => {
                    let t = s.exponent as u64;
                    let d = gcd(t, e);
                    if d < 2 {
                        return None;
                    }
                    let root_exp = (1..e).find(|&r| gcd(r, e) == 1 && (r * d) % e == t % e)?;
                    (FactorWord(vec![Syllable::new(s.generator, root_exp as i64)]), d)
                }
                Order::Infinite => {
                    if s.exponent.unsigned_abs() < 2 {
                        return None;
                    }
                    (
                        FactorWord(vec![Syllable::new(s.generator, s.exponent.signum())]),
                        s.exponent.unsigned_abs(),
                    )
                }
            },
            syl => {
                let len = syl.len();
                let d = (2..=len).rev().filter(|d| len % d == 0).find(|d| {
                    let p = len / d;
                    (p..len).all(|i| syl[i] == syl[i % p])
                })?;
                (FactorWord(syl[..len / d].to_vec()), d as u64)
            }
        };
        Some((self.conjugate(&c, &root_core), exponent))
    }

    fn require_cyclic_target(&self, u: &FactorWord) -> Result<()> {
        if !self.order_of(u).is_infinite() {
            return Err(Error::FiniteOrder("amalgamating element"));
        }
        if !self.is_cyclically_reduced(u) {
            return Err(Error::NotCyclicallyReduced("amalgamating element"));
        }
        Ok(())
    }

    /// Finds `(c, k)` with `k != 0` and `c w c^-1 = u^k`, preferring `k > 0`
    /// and then the smallest conjugator.
    ///
    /// `u` must be cyclically reduced of infinite order.
    pub fn conjugate_into_cyclic(&self, w: &FactorWord, u: &FactorWord) -> Result<Option<(FactorWord, i64)>> {
        self.require_cyclic_target(u)?;
        let (c0, core) = self.cyclic_reduce(w);
        if core.is_identity() {
            return Ok(None);
        }
        let c0_inv = self.invert(&c0);

        if let [us] = u.0.as_slice() {
            // u = a^e with a of infinite order: only single syllables a^{te} qualify.
            return Ok(match core.0.as_slice() {
                [s] if s.generator == us.generator && s.exponent % us.exponent == 0 => {
                    Some((c0_inv, s.exponent / us.exponent))
                }
                _ => None,
            });
        }

        let len = core.0.len();
        let period = u.0.len();
        if len % period != 0 {
            return Ok(None);
        }
        let reps = (len / period) as i64;
        for k in [reps, -reps] {
            let target = self.pow(u, k);
            let mut best: Option<FactorWord> = None;
            for r in 0..len {
                let rotated = target.0[r..].iter().chain(&target.0[..r]);
                if !rotated.eq(core.0.iter()) {
                    continue;
                }
                // target = P Q and core = Q P = P^-1 target P.
                let p = FactorWord(target.0[..r].to_vec());
                let q = FactorWord(target.0[r..].to_vec());
                for cand in [self.mul(&p, &c0_inv), self.mul(&self.invert(&q), &c0_inv)] {
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            if let Some(c) = best {
                return Ok(Some((c, k)));
            }
        }
        Ok(None)
    }

    /// Canonical left coset representative: `h = rep * u^k` where `rep` is
    /// the least element of `h<u>` in the word order.
    ///
    /// `u` must be cyclically reduced of infinite order.
    pub fn solve_left_coset(&self, h: &FactorWord, u: &FactorWord) -> Result<(FactorWord, i64)> {
        self.require_cyclic_target(u)?;
        Ok(self.left_coset_unchecked(h, u))
    }

    pub(crate) fn left_coset_unchecked(&self, h: &FactorWord, u: &FactorWord) -> (FactorWord, i64) {
        if h.is_identity() {
            return (FactorWord::identity(), 0);
        }
        if let [us] = u.0.as_slice() {
            return self.left_coset_single(h, *us);
        }
        // Past this window the syllable length of h u^-j only grows.
        let window = h.0.len() as i64 + 2;
        let u_inv = self.invert(u);
        let mut best = (h.clone(), 0i64);
        let mut fwd = h.clone();
        let mut back = h.clone();
        for j in 1..=window {
            fwd = self.mul(&fwd, &u_inv);
            back = self.mul(&back, u);
            if fwd < best.0 {
                best = (fwd.clone(), j);
            }
            if back < best.0 {
                best = (back.clone(), -j);
            }
        }
        best
    }

    /// Coset of `<a^e>` with `a` of infinite order: only the last syllable moves.
    fn left_coset_single(&self, h: &FactorWord, us: Syllable) -> (FactorWord, i64) {
        let last = *h.0.last().expect("non-identity");
        if last.generator != us.generator {
            return (h.clone(), 0);
        }
        let step = us.exponent.abs();
        let r = last.exponent.rem_euclid(step);
        let rep_exp = if r == 0 {
            0
        } else if (step - r) < r {
            r - step
        } else {
            r
        };
        let k = (last.exponent - rep_exp) / us.exponent;
        let mut syl = h.0[..h.0.len() - 1].to_vec();
        if rep_exp != 0 {
            syl.push(Syllable::new(us.generator, rep_exp));
        }
        (FactorWord(syl), k)
    }

    /// True when `w` lies in `<u>`.
    pub fn in_cyclic(&self, w: &FactorWord, u: &FactorWord) -> Option<i64> {
        let (rep, k) = self.left_coset_unchecked(w, u);
        rep.is_identity().then_some(k)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
