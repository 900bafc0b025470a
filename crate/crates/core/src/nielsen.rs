//! Elementary Nielsen transformations and the shortening reduction loop.

use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amalgam::{AmalgamPresentation, ConjugacyCertificate, GroupWord, Side};
use crate::error::{Error, Result};
use crate::factor::{FactorWord, Order};
use crate::factor_nielsen::reduce_in_factor;
use crate::ordering::{preorder_key, preorder_less, PreorderKey};

/// An ordered tuple of elements of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratingTuple {
    pub elements: Vec<GroupWord>,
}

impl GeneratingTuple {
    pub fn new(elements: Vec<GroupWord>) -> Self {
        GeneratingTuple { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Replaces every element by the word of its reduced form.
    pub fn normalized(&self, g: &AmalgamPresentation) -> Self {
        GeneratingTuple::new(self.elements.iter().map(|w| g.normal_word(w)).collect())
    }

    /// Evaluates a word `x_{i_1}^{e_1} ... x_{i_q}^{e_q}` in the elements.
    pub fn evaluate(&self, g: &AmalgamPresentation, word: &[(usize, i64)]) -> GroupWord {
        let parts: Vec<GroupWord> = word.iter().map(|&(i, e)| g.pow(&self.elements[i], e)).collect();
        g.normal_word(&GroupWord::concat_all(&parts))
    }
}

/// `MultiplyRight(i, j, e)` replaces `g_i` by `g_i g_j^e`, `MultiplyLeft`
/// by `g_j^e g_i`. Indices are 0-based; the text form is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NielsenMove {
    Invert(usize),
    MultiplyRight(usize, usize, i8),
    MultiplyLeft(usize, usize, i8),
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NielsenMove::Invert(i) => write!(f, "invert {}", i + 1),
            NielsenMove::MultiplyRight(i, j, e) => write!(f, "mulR {} {} {}", i + 1, j + 1, e),
            NielsenMove::MultiplyLeft(i, j, e) => write!(f, "mulL {} {} {}", i + 1, j + 1, e),
        }
    }
}

impl FromStr for NielsenMove {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMove(s.to_string());
        let fields: Vec<&str> = s.split_whitespace().collect();
        let index = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(bad)
        };
        match fields.as_slice() {
            ["invert", i] => Ok(NielsenMove::Invert(index(i)?)),
            [kind @ ("mulR" | "mulL"), i, j, e] => {
                let e: i8 = e.parse().map_err(|_| bad())?;
                let (i, j) = (index(i)?, index(j)?);
                if e.abs() != 1 || i == j {
                    return Err(bad());
                }
                Ok(if *kind == "mulR" {
                    NielsenMove::MultiplyRight(i, j, e)
                } else {
                    NielsenMove::MultiplyLeft(i, j, e)
                })
            }
            _ => Err(bad()),
        }
    }
}

impl NielsenMove {
    pub fn target(&self) -> usize {
        match *self {
            NielsenMove::Invert(i) | NielsenMove::MultiplyRight(i, _, _) | NielsenMove::MultiplyLeft(i, _, _) => i,
        }
    }

    fn check(&self, len: usize) -> Result<()> {
        let bound = |index: usize| {
            if index < len {
                Ok(())
            } else {
                Err(Error::IndexOutOfBounds { index, len })
            }
        };
        match *self {
            NielsenMove::Invert(i) => bound(i),
            NielsenMove::MultiplyRight(i, j, e) | NielsenMove::MultiplyLeft(i, j, e) => {
                bound(i)?;
                bound(j)?;
                if i == j || e.abs() != 1 {
                    return Err(Error::InvalidMove(self.to_string()));
                }
                Ok(())
            }
        }
    }
}

fn moved_element(g: &AmalgamPresentation, t: &GeneratingTuple, m: NielsenMove) -> GroupWord {
    match m {
        NielsenMove::Invert(i) => g.invert(&t.elements[i]),
        NielsenMove::MultiplyRight(i, j, e) => g.multiply(&t.elements[i], &g.pow(&t.elements[j], e as i64)),
        NielsenMove::MultiplyLeft(i, j, e) => g.multiply(&g.pow(&t.elements[j], e as i64), &t.elements[i]),
    }
}

/// Rewrites one slot; the result is stored in reduced-form word.
pub fn apply_move(g: &AmalgamPresentation, t: &GeneratingTuple, m: NielsenMove) -> Result<GeneratingTuple> {
    m.check(t.len())?;
    let mut out = t.clone();
    out.elements[m.target()] = g.normal_word(&moved_element(g, t, m));
    Ok(out)
}

/// `t1` is shorter than `t2`: `t1_i ≼ t2_i` everywhere and strictly at one index.
pub fn is_shorter(g: &AmalgamPresentation, t1: &GeneratingTuple, t2: &GeneratingTuple) -> Result<bool> {
    if t1.len() != t2.len() {
        return Err(Error::LengthMismatch(t1.len(), t2.len()));
    }
    let mut strict = false;
    for (a, b) in t1.elements.iter().zip(&t2.elements) {
        if !preorder_less(g, a, b) {
            return Ok(false);
        }
        if !preorder_less(g, b, a) {
            strict = true;
        }
    }
    Ok(strict)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConfig {
    pub step_budget: usize,
    /// Elements explored per factor conjugate when searching a subgroup for
    /// a conjugate of `A`.
    pub pinch_search_budget: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            step_budget: 1_000_000,
            pinch_search_budget: 4_000,
        }
    }
}

/// Certificate that a subset of the tuple lies in a conjugate of a factor
/// and some word in it is conjugate into `A \ {1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchCertificate {
    pub indices: Vec<usize>,
    pub side: Side,
    /// `c x_i c^-1` lies in `H_side` for every listed index.
    pub conjugator: GroupWord,
    /// The word in the tuple, as `(index, ±1)` letters.
    pub product: Vec<(usize, i64)>,
    /// `product_conjugator * product * product_conjugator^-1 = u^power`.
    pub product_conjugator: GroupWord,
    pub power: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    TrivialElement { index: usize },
    FreeStyle,
    FactorPinch(PinchCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub outcome: Outcome,
    pub moves: Vec<NielsenMove>,
    pub final_tuple: GeneratingTuple,
}

/// One accepted move together with the key of the rewritten slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    pub mv: NielsenMove,
    pub keys: Vec<PreorderKey>,
}

/// Greedy first-improvement reduction, then classification.
pub fn reduce_tuple(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    config: &ReductionConfig,
) -> Result<ReductionOutcome> {
    reduce_tuple_traced(g, t, config, |_| {})
}

/// As [`reduce_tuple`], reporting each accepted move.
pub fn reduce_tuple_traced(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    config: &ReductionConfig,
    mut on_step: impl FnMut(&TraceStep),
) -> Result<ReductionOutcome> {
    if t.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let n = t.len();
    let mut cur = t.normalized(g);
    let mut keys: Vec<PreorderKey> = cur.elements.iter().map(|w| preorder_key(g, w)).collect();
    let mut moves = Vec::new();

    'outer: while !cur.elements.iter().any(|w| w.is_empty()) {
        if moves.len() >= config.step_budget {
            return Err(Error::StepBudgetExceeded(config.step_budget));
        }
        // Inversion never changes the key of {g, g^-1}, so only
        // multiplications can shorten.
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for e in [1i8, -1] {
                    for m in [NielsenMove::MultiplyRight(i, j, e), NielsenMove::MultiplyLeft(i, j, e)] {
                        let w = g.normal_word(&moved_element(g, &cur, m));
                        let key = preorder_key(g, &w);
                        if w.is_empty() || key < keys[i] {
                            cur.elements[i] = w;
                            keys[i] = key;
                            moves.push(m);
                            on_step(&TraceStep {
                                step: moves.len(),
                                mv: m,
                                keys: keys.clone(),
                            });
                            continue 'outer;
                        }
                    }
                }
            }
        }
        // Elements of one factor conjugate all share lambda and halves, so
        // they are reduced inside the factor instead, as long as no key grows.
        for c in containers(g, &cur).into_iter().filter(|c| c.members.len() > 1) {
            let budget = config.step_budget - moves.len();
            let red = reduce_in_factor(g, &cur, &c.members, c.side, &c.conjugator, budget)?;
            if red.moves.is_empty() {
                continue;
            }
            let new_keys: Vec<PreorderKey> = red.tuple.elements.iter().map(|w| preorder_key(g, w)).collect();
            if new_keys.iter().zip(&keys).any(|(a, b)| a > b) {
                continue;
            }
            for &m in &red.moves {
                cur = apply_move(g, &cur, m)?;
                let i = m.target();
                keys[i] = preorder_key(g, &cur.elements[i]);
                moves.push(m);
                on_step(&TraceStep {
                    step: moves.len(),
                    mv: m,
                    keys: keys.clone(),
                });
            }
            continue 'outer;
        }
        // x_i -> P x_i S is a run of elementary moves whose intermediate
        // steps may be longer.
        if let Some(steps) = compound_move(g, &cur, &keys) {
            for m in steps {
                cur = apply_move(g, &cur, m)?;
                let i = m.target();
                keys[i] = preorder_key(g, &cur.elements[i]);
                moves.push(m);
                on_step(&TraceStep {
                    step: moves.len(),
                    mv: m,
                    keys: keys.clone(),
                });
            }
            continue 'outer;
        }
        break;
    }
    Ok(classify_outcome(g, cur, moves, config))
}

/// Reduced words of at most `len` letters in the slots other than `i`,
/// one per distinct value, with runs bounded as in the case-2 sampler.
fn short_words(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    i: usize,
    len: usize,
) -> Vec<(Vec<(usize, i8)>, GroupWord)> {
    let runs: Vec<usize> = t
        .elements
        .iter()
        .map(|w| max_run(element_order(g, w)) as usize)
        .collect();
    let mut seen: HashSet<GroupWord> = HashSet::from([GroupWord::identity()]);
    let mut out = vec![(Vec::new(), GroupWord::identity())];
    let mut layer = out.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for (word, value) in &layer {
            for j in (0..t.len()).filter(|&j| j != i) {
                for e in [1i8, -1] {
                    if word.last() == Some(&(j, -e)) {
                        continue;
                    }
                    let run = word.iter().rev().take_while(|&&l| l == (j, e)).count();
                    if run >= runs[j] {
                        continue;
                    }
                    let v = g.normal_word(&g.multiply(value, &g.pow(&t.elements[j], e as i64)));
                    if seen.insert(v.clone()) {
                        let mut w = word.clone();
                        w.push((j, e));
                        next.push((w, v));
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// First `x_i -> P x_i S`, with `P` and `S` short words in the other
/// slots, that makes slot `i` strictly smaller, as elementary moves.
fn compound_move(g: &AmalgamPresentation, t: &GeneratingTuple, keys: &[PreorderKey]) -> Option<Vec<NielsenMove>> {
    for (i, (x, key)) in t.elements.iter().zip(keys).enumerate() {
        let lx = key.lambda;
        let words = short_words(g, t, i, 3);
        // Each side has to cancel into x on its own, so sides that make x
        // longer are dropped before pairing.
        let lefts: Vec<&(Vec<(usize, i8)>, GroupWord)> = words
            .iter()
            .filter(|(_, p)| g.lambda(&g.multiply(p, x)) <= lx)
            .collect();
        let rights: Vec<&(Vec<(usize, i8)>, GroupWord)> = words
            .iter()
            .filter(|(_, s)| g.lambda(&g.multiply(x, s)) <= lx)
            .collect();
        for (pw, p) in &lefts {
            let px = g.multiply(p, x);
            for (sw, s) in &rights {
                if pw.len() + sw.len() < 2 {
                    continue;
                }
                let w = g.normal_word(&g.multiply(&px, s));
                if !w.is_empty() && preorder_key(g, &w) >= *key {
                    continue;
                }
                let mut steps: Vec<NielsenMove> = pw
                    .iter()
                    .rev()
                    .map(|&(j, e)| NielsenMove::MultiplyLeft(i, j, e))
                    .collect();
                steps.extend(sw.iter().map(|&(j, e)| NielsenMove::MultiplyRight(i, j, e)));
                return Some(steps);
            }
        }
    }
    None
}

/// Replays a move log from the input tuple.
pub fn replay(g: &AmalgamPresentation, t: &GeneratingTuple, moves: &[NielsenMove]) -> Result<GeneratingTuple> {
    moves.iter().try_fold(t.normalized(g), |acc, &m| apply_move(g, &acc, m))
}

/// Replays moves on the free basis `s_0..s_{n-1}`, giving each slot as a
/// freely reduced word in the original tuple.
pub fn replay_symbolic(n: usize, moves: &[NielsenMove]) -> Vec<Vec<(usize, i64)>> {
    let mut slots: Vec<Vec<(usize, i64)>> = (0..n).map(|i| vec![(i, 1)]).collect();
    for &m in moves {
        let next = match m {
            NielsenMove::Invert(i) => invert_symbolic(&slots[i]),
            NielsenMove::MultiplyRight(i, j, e) => {
                let mut w = slots[i].clone();
                w.extend(power_symbolic(&slots[j], e as i64));
                free_reduce(w)
            }
            NielsenMove::MultiplyLeft(i, j, e) => {
                let mut w = power_symbolic(&slots[j], e as i64);
                w.extend(slots[i].iter().copied());
                free_reduce(w)
            }
        };
        slots[m.target()] = next;
    }
    slots
}

pub fn invert_symbolic(w: &[(usize, i64)]) -> Vec<(usize, i64)> {
    w.iter().rev().map(|&(i, e)| (i, -e)).collect()
}

fn power_symbolic(w: &[(usize, i64)], e: i64) -> Vec<(usize, i64)> {
    if e < 0 {
        invert_symbolic(w)
    } else {
        w.to_vec()
    }
}

/// Merges adjacent letters on the same symbol and drops zero exponents.
pub fn free_reduce(w: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(w.len());
    for (i, e) in w {
        match out.last_mut() {
            Some((j, f)) if *j == i => {
                *f += e;
                if *f == 0 {
                    out.pop();
                }
            }
            _ if e != 0 => out.push((i, e)),
            _ => {}
        }
    }
    out
}

/// A conjugate `c^-1 H_side c` of a factor, with the tuple members inside it.
#[derive(Debug, Clone)]
pub(crate) struct Container {
    pub side: Side,
    pub conjugator: GroupWord,
    pub members: Vec<usize>,
}

pub(crate) fn containers(g: &AmalgamPresentation, t: &GeneratingTuple) -> Vec<Container> {
    let mut out: Vec<Container> = Vec::new();
    for x in &t.elements {
        let candidates: Vec<(Side, GroupWord)> = match g.conjugate_into_factor_or_a(x) {
            ConjugacyCertificate::None => vec![],
            ConjugacyCertificate::Factor { side, conjugator, .. } => vec![(side, conjugator)],
            ConjugacyCertificate::Amalgam { conjugator, .. } => {
                vec![(Side::H1, conjugator.clone()), (Side::H2, conjugator)]
            }
        };
        for (side, conjugator) in candidates {
            let members: Vec<usize> = (0..t.len())
                .filter(|&j| g.conjugate_in_factor(side, &conjugator, &t.elements[j]).is_some())
                .collect();
            if !out.iter().any(|c| c.side == side && c.members == members) {
                out.push(Container {
                    side,
                    conjugator,
                    members,
                });
            }
        }
    }
    out
}

fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &x)| x)
            .collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Classifies a tuple on which no shortening move applies.
///
/// Case 3 is searched first through signed permutation products of subsets
/// (increasing size, index-lexicographic), then through a bounded search of
/// the subgroup generated by the members of each factor conjugate.
pub fn classify_outcome(
    g: &AmalgamPresentation,
    t: GeneratingTuple,
    moves: Vec<NielsenMove>,
    config: &ReductionConfig,
) -> ReductionOutcome {
    let done = |outcome| ReductionOutcome {
        outcome,
        moves: moves.clone(),
        final_tuple: t.clone(),
    };
    if let Some(index) = t.elements.iter().position(|w| g.is_identity(w)) {
        return done(Outcome::TrivialElement { index });
    }
    let boxes = containers(g, &t);
    let n = t.len();
    for p in 1..=n {
        for subset in combinations(n, p) {
            let Some(bx) = boxes.iter().find(|b| subset.iter().all(|i| b.members.contains(i))) else {
                continue;
            };
            for perm in permutations(&subset) {
                for signs in 0..(1u32 << p) {
                    let product: Vec<(usize, i64)> = perm
                        .iter()
                        .enumerate()
                        .map(|(k, &i)| (i, if signs >> k & 1 == 1 { -1 } else { 1 }))
                        .collect();
                    if let Some(cert) = pinch_certificate(g, &t, bx, &subset, product) {
                        return done(Outcome::FactorPinch(cert));
                    }
                }
            }
        }
    }
    for bx in boxes.iter().filter(|b| b.members.len() >= 2) {
        if let Some(product) = search_container(g, &t, bx, config.pinch_search_budget) {
            let mut used: Vec<usize> = product.iter().map(|&(i, _)| i).collect();
            used.sort_unstable();
            used.dedup();
            if let Some(cert) = pinch_certificate(g, &t, bx, &used, product) {
                return done(Outcome::FactorPinch(cert));
            }
        }
    }
    done(Outcome::FreeStyle)
}

fn pinch_certificate(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    bx: &Container,
    indices: &[usize],
    product: Vec<(usize, i64)>,
) -> Option<PinchCertificate> {
    let y = t.evaluate(g, &product);
    match g.conjugate_into_factor_or_a(&y) {
        ConjugacyCertificate::Amalgam { conjugator, power } if power != 0 => Some(PinchCertificate {
            indices: indices.to_vec(),
            side: bx.side,
            conjugator: bx.conjugator.clone(),
            product,
            product_conjugator: conjugator,
            power,
        }),
        _ => None,
    }
}

/// Breadth-first search over the subgroup generated by the members of a
/// container, working inside the factor, for an element conjugate into
/// the amalgamated subgroup.
fn search_container(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    bx: &Container,
    budget: usize,
) -> Option<Vec<(usize, i64)>> {
    let f = g.factor(bx.side);
    let gen = g.amalgam_generator(bx.side);
    let images: Vec<(usize, FactorWord)> = bx
        .members
        .iter()
        .map(|&i| {
            let y = g
                .conjugate_in_factor(bx.side, &bx.conjugator, &t.elements[i])
                .expect("member of container");
            (i, y)
        })
        .collect();
    let mut letters: Vec<(usize, i64, FactorWord)> = Vec::new();
    for (i, y) in &images {
        letters.push((*i, 1, y.clone()));
        letters.push((*i, -1, f.invert(y)));
    }
    // Long words cost quadratic time in the conjugacy test and rarely
    // matter, so the search stays within a few copies of u and the members.
    let widest = images.iter().map(|(_, y)| y.syllable_length()).max().unwrap_or(0);
    let max_len = 4 * gen.syllable_length() + 2 * widest;
    let mut seen: HashSet<FactorWord> = HashSet::new();
    seen.insert(FactorWord::identity());
    let mut queue: VecDeque<(FactorWord, Vec<(usize, i64)>)> = VecDeque::new();
    queue.push_back((FactorWord::identity(), Vec::new()));
    while let Some((z, word)) = queue.pop_front() {
        for (i, e, y) in &letters {
            if seen.len() >= budget {
                return None;
            }
            let next = f.mul(&z, y);
            if next.syllable_length() > max_len || !seen.insert(next.clone()) {
                continue;
            }
            let mut w = word.clone();
            w.push((*i, *e));
            if matches!(f.conjugate_into_cyclic(&next, gen), Ok(Some(_))) {
                return Some(w);
            }
            queue.push_back((next, w));
        }
    }
    None
}

/// Order of an element of `G`: finite only for conjugates of finite-order
/// factor elements.
pub fn element_order(g: &AmalgamPresentation, w: &GroupWord) -> Order {
    match g.conjugate_into_factor_or_a(w) {
        ConjugacyCertificate::Factor { side, kernel, .. } => g.factor(side).order_of(&kernel),
        ConjugacyCertificate::Amalgam { power: 0, .. } => Order::Finite(1),
        _ => Order::Infinite,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Violation {
    pub word: Vec<(usize, i64)>,
    pub letter: usize,
    pub letter_lambda: usize,
    pub product_lambda: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Report {
    pub trials: usize,
    pub violations: Vec<Case2Violation>,
}

impl Case2Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Longest run `x^r` allowed in a sampled product: runs past half the
/// order would have a shorter spelling.
fn max_run(order: Order) -> u64 {
    match order {
        Order::Finite(o) => (o / 2).max(1),
        Order::Infinite => 3,
    }
}

/// Samples random reduced products `y = x_{i_1}^{e_1} ... x_{i_q}^{e_q}` and
/// checks `lambda(x_{i_j}) <= lambda(y)` for every letter.
pub fn verify_case2<R: Rng + ?Sized>(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    trials: usize,
    rng: &mut R,
) -> Case2Report {
    let n = t.len();
    let lambdas: Vec<usize> = t.elements.iter().map(|w| g.lambda(w)).collect();
    let runs: Vec<u64> = t.elements.iter().map(|w| max_run(element_order(g, w))).collect();
    let mut violations = Vec::new();
    for _ in 0..trials {
        let target = rng.random_range(1..=6usize);
        let mut word: Vec<(usize, i64)> = Vec::new();
        let mut prev = None;
        while word.len() < target {
            let i = if n == 1 {
                0
            } else {
                loop {
                    let i = rng.random_range(0..n);
                    if Some(i) != prev {
                        break i;
                    }
                }
            };
            if n == 1 && prev.is_some() {
                break;
            }
            let e = if rng.random_bool(0.5) { 1 } else { -1 };
            let r = rng.random_range(1..=runs[i]);
            for _ in 0..r {
                word.push((i, e));
            }
            prev = Some(i);
        }
        let y = t.evaluate(g, &word);
        let ly = g.lambda(&y);
        if let Some(&(i, _)) = word.iter().find(|&&(i, _)| lambdas[i] > ly) {
            violations.push(Case2Violation {
                word: word.clone(),
                letter: i,
                letter_lambda: lambdas[i],
                product_lambda: ly,
            });
        }
    }
    Case2Report { trials, violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredicateReport {
    Pass { claims: Vec<String> },
    Fail { claim: String, detail: String },
    NotApplicable { reason: String },
}

impl PredicateReport {
    pub fn is_fail(&self) -> bool {
        matches!(self, PredicateReport::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, PredicateReport::Pass { .. })
    }

    fn na(reason: &str) -> Self {
        PredicateReport::NotApplicable {
            reason: reason.to_string(),
        }
    }
}

/// Checks the three-element length conditions for `x, y, z`.
pub fn length_lemma_predicate(g: &AmalgamPresentation, x: &GroupWord, y: &GroupWord, z: &GroupWord) -> PredicateReport {
    if g.is_identity(x) || g.is_identity(y) || g.is_identity(z) {
        return PredicateReport::na("trivial element");
    }
    let l = |w: &GroupWord| g.lambda(w);
    let (lx, ly, lz) = (l(x), l(y), l(z));
    let xy = g.multiply(x, y);
    let yz = g.multiply(y, z);
    let lxyz = l(&GroupWord::concat_all([x, y, z]));

    if g.equal(x, y) && g.equal(y, z) && lxyz + ly < lx + lz {
        // x = y = z with lambda(x^3) < lambda(x): x is conjugate into a
        // factor and x^3 into A.
        let into_factor = !matches!(g.conjugate_into_factor_or_a(x), ConjugacyCertificate::None);
        let cube_into_a = matches!(
            g.conjugate_into_factor_or_a(&g.pow(x, 3)),
            ConjugacyCertificate::Amalgam { .. }
        );
        return if into_factor && cube_into_a {
            PredicateReport::Pass {
                claims: vec!["(c) x = y = z".into()],
            }
        } else {
            PredicateReport::Fail {
                claim: "(c) x = y = z".into(),
                detail: format!("x = {x}"),
            }
        };
    }

    let h1 = l(&xy) >= lx.max(ly) && l(&yz) >= ly.max(lz);
    let h2 = !preorder_less(g, &xy, x) && !preorder_less(g, &yz, z);
    if !(h1 && h2) {
        return PredicateReport::na("hypotheses (1)-(2) fail");
    }
    let premise_a = lxyz + ly <= lx + lz;
    let premise_b = ly < lx.min(lz) && lxyz + ly < lx + lz;
    if !premise_a {
        return PredicateReport::na("lambda(xyz) exceeds lambda(x) - lambda(y) + lambda(z)");
    }
    let cert = g.conjugate_into_factor_or_a(y);
    let mut claims = Vec::new();
    if matches!(cert, ConjugacyCertificate::None) {
        return PredicateReport::Fail {
            claim: "(a)".into(),
            detail: format!("y = {y} is not conjugate into a factor"),
        };
    }
    claims.push("(a)".to_string());
    if premise_b {
        if !matches!(cert, ConjugacyCertificate::Amalgam { .. }) {
            return PredicateReport::Fail {
                claim: "(b)".into(),
                detail: format!("y = {y} is not conjugate into A"),
            };
        }
        claims.push("(b)".to_string());
    }
    PredicateReport::Pass { claims }
}

/// Checks the refinement statements for `x` conjugate into a factor and
/// `y` with `lambda(y) <= lambda(x)`.
pub fn refinement_predicate(g: &AmalgamPresentation, x: &GroupWord, y: &GroupWord, eps: i64) -> PredicateReport {
    let sx = g.symmetric_form(x);
    let x_symmetric = sx.rear == inverse_half(g, &sx.leading);
    if !x_symmetric || sx.kernel.in_amalgam() {
        return PredicateReport::na("x is not of the form l k l^-1 with k outside A");
    }
    let sy = g.symmetric_form(y);
    let (lx, ly) = (sx.lambda, sy.lambda);
    if ly > lx {
        return PredicateReport::na("lambda(y) > lambda(x)");
    }
    let ye = g.pow(y, eps);
    let ye_inv = g.invert(&ye);
    let l_right = g.lambda(&g.multiply(x, &ye));
    let l_left = g.lambda(&g.multiply(&ye_inv, x));
    let l_conj = g.lambda(&GroupWord::concat_all([&ye_inv, x, &ye]));

    let premise_a = l_right < lx || l_left < lx;
    let premise_b = l_right == lx || l_left == lx;
    if !premise_a && !premise_b {
        return PredicateReport::na("neither product changes length as required");
    }
    let mut claims = Vec::new();
    if premise_a {
        let kx = g.kernel_word(&sx.kernel);
        let ky = g.pow(&g.kernel_word(&sy.kernel), eps);
        let in_a = |w: &GroupWord| g.reduced_form(w).parts.is_empty();
        let kernel_in_a = in_a(&g.multiply(&kx, &ky)) || in_a(&g.multiply(&g.invert(&ky), &kx));
        let y_symmetric = sy.rear == inverse_half(g, &sy.leading);
        let case1 = l_conj < lx;
        let case2 = y_symmetric && sy.leading == sx.leading && kernel_in_a;
        let case3 = !y_symmetric && !sy.kernel.in_amalgam() && lx == ly && ly == l_conj && kernel_in_a;
        if !(case1 || case2 || case3) {
            return PredicateReport::Fail {
                claim: "(a)".into(),
                detail: format!("x = {x}, y = {y}, eps = {eps}: none of the three cases holds"),
            };
        }
        claims.push("(a)".to_string());
    }
    if premise_b {
        if l_conj > lx {
            return PredicateReport::Fail {
                claim: "(b)".into(),
                detail: format!("x = {x}, y = {y}, eps = {eps}: conjugate is longer"),
            };
        }
        claims.push("(b)".to_string());
    }
    PredicateReport::Pass { claims }
}

fn inverse_half(g: &AmalgamPresentation, lead: &[crate::amalgam::Letter]) -> Vec<crate::amalgam::Letter> {
    lead.iter()
        .rev()
        .map(|l| crate::amalgam::Letter::new(l.side, g.factor(l.side).invert(&l.word)))
        .collect()
}
