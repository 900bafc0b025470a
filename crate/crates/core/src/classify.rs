//! Groups of F-type, assumption checks, and classification of subgroups
//! generated by at most four elements.

use std::collections::{HashMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amalgam::{AmalgamPresentation, GroupWord, Side};
use crate::error::{Error, Result};
use crate::factor::{CyclicFactorPresentation, FactorWord, Order, Syllable};
use crate::factor_nielsen::reduce_in_factor;
use crate::nielsen::{
    containers, element_order, reduce_tuple, replay, GeneratingTuple, NielsenMove, Outcome, PinchCertificate,
    ReductionConfig, ReductionOutcome,
};

/// `<a_1..a_n | a_i^{e_i} = U(a_1..a_p) V(a_{p+1}..a_n) = 1>`.
///
/// Generator indices in `u` and `v` are 0-based; `split` is `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTypeSpec {
    pub orders: Vec<u64>,
    pub split: usize,
    pub u: Vec<(usize, i64)>,
    pub v: Vec<(usize, i64)>,
}

impl FTypeSpec {
    /// `a1^2 = .. = a5^2 = a6^3 = a1 a2 a3 a4 a5 a6 = 1`.
    pub fn example() -> Self {
        FTypeSpec {
            orders: vec![2, 2, 2, 2, 2, 3],
            split: 3,
            u: vec![(0, 1), (1, 1), (2, 1)],
            v: vec![(3, 1), (4, 1), (5, 1)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MalnormalCheck {
    /// `h u^k h^-1 = u^k'` with `h` in the factor but outside `A`.
    ViolationFound {
        side: Side,
        h: FactorWord,
        k: i64,
        k_prime: i64,
    },
    NoViolationUpTo(usize),
}

impl MalnormalCheck {
    pub fn is_violation(&self) -> bool {
        matches!(self, MalnormalCheck::ViolationFound { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub involves_all_generators: bool,
    pub factor_ranks: (usize, usize),
    /// Exponent of `u` (resp. `v`) as a proper power, if it is one.
    pub u_proper_power: Option<u64>,
    pub v_proper_power: Option<u64>,
    pub malnormal: MalnormalCheck,
}

impl AssumptionReport {
    pub fn is_clean(&self) -> bool {
        self.involves_all_generators && !self.malnormal.is_violation()
    }
}

/// Builds `H1 *_A H2` with `u = U` and `v = V^-1`, so that `u = v` is the
/// relator `U V = 1`.
pub fn build_ftype(spec: &FTypeSpec, malnormal_bound: usize) -> Result<(AmalgamPresentation, AssumptionReport)> {
    let g = ftype_presentation(spec)?;
    let report = check_assumptions(&g, malnormal_bound);
    Ok((g, report))
}

fn ftype_presentation(spec: &FTypeSpec) -> Result<AmalgamPresentation> {
    let n = spec.orders.len();
    if n < 2 || spec.split == 0 || spec.split >= n {
        return Err(Error::SplitOutOfRange {
            p: spec.split,
            max: n.saturating_sub(1),
        });
    }
    let h1 = CyclicFactorPresentation::from_codes(0, &spec.orders[..spec.split])?;
    let h2 = CyclicFactorPresentation::from_codes(spec.split, &spec.orders[spec.split..])?;
    let u = h1.normalize(&spec.u)?;
    let v = h2.invert(&h2.normalize(&spec.v)?);
    AmalgamPresentation::new(h1, h2, u, v)
}

/// The presentation of the worked example.
pub fn example_group() -> AmalgamPresentation {
    ftype_presentation(&FTypeSpec::example()).expect("example presentation is valid")
}

/// `x1 = a1 a2, x2 = a1 a3, x3 = a1 a4, x4 = a1 a5`.
pub fn example_tuple(g: &AmalgamPresentation) -> GeneratingTuple {
    GeneratingTuple::new(
        (1..=4)
            .map(|j| g.word_from_raw(&[(0, 1), (j, 1)]).expect("example generators"))
            .collect(),
    )
}

/// Every generator of `H1` occurs in `u` and every generator of `H2` in `v`.
pub fn involves_all_generators(g: &AmalgamPresentation) -> bool {
    [Side::H1, Side::H2].iter().all(|&s| {
        let used = g.amalgam_generator(s).generators();
        g.factor(s).generator_range().all(|i| used.contains(&i))
    })
}

pub fn check_assumptions(g: &AmalgamPresentation, malnormal_bound: usize) -> AssumptionReport {
    AssumptionReport {
        involves_all_generators: involves_all_generators(g),
        factor_ranks: (g.factor(Side::H1).rank(), g.factor(Side::H2).rank()),
        u_proper_power: g.factor(Side::H1).proper_power(g.u()).map(|(_, d)| d),
        v_proper_power: g.factor(Side::H2).proper_power(g.v()).map(|(_, d)| d),
        malnormal: malnormal_bounded_check(g, malnormal_bound),
    }
}

/// Factor words with at most `bound` syllables and exponents bounded by
/// `bound`, by syllable length then generation order.
fn small_words(f: &CyclicFactorPresentation, bound: usize) -> Vec<FactorWord> {
    let b = bound as i64;
    let syllables: Vec<Syllable> = f
        .generator_range()
        .flat_map(|g| {
            let exps: Vec<i64> = match f.order(g) {
                Order::Finite(e) => (1..(e as i64).min(b + 1)).collect(),
                Order::Infinite => (1..=b).flat_map(|k| [k, -k]).collect(),
            };
            exps.into_iter().map(move |k| Syllable::new(g, k))
        })
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Syllable>> = vec![vec![]];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for s in &syllables {
                if w.last().is_some_and(|l| l.generator == s.generator) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(*s);
                next.push(w2);
            }
        }
        out.extend(next.iter().map(|w| FactorWord::from_canonical(w.clone())));
        layer = next;
    }
    out
}

/// Bounded search for `h` outside `A` with `h u^k h^-1 ∈ A`, `k != 0`.
pub fn malnormal_bounded_check(g: &AmalgamPresentation, bound: usize) -> MalnormalCheck {
    for side in [Side::H1, Side::H2] {
        let f = g.factor(side);
        let gen = g.amalgam_generator(side);
        for h in small_words(f, bound) {
            if f.in_cyclic(&h, gen).is_some() {
                continue;
            }
            for k in 1..=bound as i64 {
                let w = f.conjugate(&h, &f.pow(gen, k));
                if let Some(k_prime) = f.in_cyclic(&w, gen) {
                    return MalnormalCheck::ViolationFound { side, h, k, k_prime };
                }
            }
        }
    }
    MalnormalCheck::NoViolationUpTo(bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub reduction: ReductionConfig,
    /// Letter budget of the search for `u^k` in a two-generated factor subgroup.
    pub relator_budget: usize,
    pub malnormal_bound: usize,
    /// Samples used to re-verify free product certificates.
    pub sample_trials: usize,
    pub seed: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            reduction: ReductionConfig::default(),
            relator_budget: 12,
            malnormal_bound: 4,
            sample_trials: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Structure {
    /// `<basis_1> * ... * <basis_r>` with the given cyclic orders.
    /// `containment` names a factor conjugate holding the whole subgroup.
    FreeProductOfCyclics {
        orders: Vec<Order>,
        basis: Vec<GroupWord>,
        containment: Option<(Side, GroupWord)>,
    },
    /// A quotient of the free product of the cyclics `<x_i>` by one relator,
    /// written over `x1..x4` as `(index, exponent)` letters.
    OneRelatorQuotient {
        generator_count: usize,
        orders: Vec<Order>,
        basis: Vec<GroupWord>,
        relator: Vec<(usize, i64)>,
    },
    /// The subgroup lies in `conjugator^-1 H_side conjugator`; no basis found.
    FactorConjugate { side: Side, conjugator: GroupWord },
    /// The reduction produced the identity at `dropped`.
    RankDrop {
        dropped: usize,
        smaller: GeneratingTuple,
        inner: Box<Classification>,
    },
    /// `budget_exhausted` marks a search cut off by `relator_budget`.
    Incomplete { reason: String, budget_exhausted: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub structure: Structure,
    pub provenance: ReductionOutcome,
    /// Moves applied to `provenance.final_tuple` after the reduction.
    pub extra_moves: Vec<NielsenMove>,
    /// Unverified assumptions the certificate relies on.
    pub caveat: Option<String>,
}

impl Classification {
    pub fn is_free_product(&self) -> bool {
        match &self.structure {
            Structure::FreeProductOfCyclics { .. } => true,
            Structure::RankDrop { inner, .. } => inner.is_free_product(),
            _ => false,
        }
    }

    pub fn budget_exhausted(&self) -> bool {
        matches!(
            self.terminal(),
            Structure::Incomplete {
                budget_exhausted: true,
                ..
            }
        )
    }

    /// Structure after following rank drops.
    pub fn terminal(&self) -> &Structure {
        match &self.structure {
            Structure::RankDrop { inner, .. } => inner.terminal(),
            s => s,
        }
    }
}

/// Classifies `<t>` for `1 <= n <= 4`.
pub fn classify_subgroup(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    config: &ClassifyConfig,
) -> Result<Classification> {
    let caveat = match malnormal_bounded_check(g, config.malnormal_bound) {
        MalnormalCheck::NoViolationUpTo(b) => Some(format!(
            "malnormality of A verified only for conjugators of syllable length <= {b}"
        )),
        MalnormalCheck::ViolationFound { h, .. } => Some(format!(
            "A is not malnormal (witness {h}); structure theorems do not apply"
        )),
    };
    classify_inner(g, t, config, &caveat)
}

fn classify_inner(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    config: &ClassifyConfig,
    caveat: &Option<String>,
) -> Result<Classification> {
    match t.len() {
        0 => return Err(Error::EmptyTuple),
        n if n > 4 => return Err(Error::TooManyGenerators(n)),
        _ => {}
    }
    let provenance = reduce_tuple(g, t, &config.reduction)?;
    let final_tuple = provenance.final_tuple.clone();
    let (structure, extra_moves) = match &provenance.outcome {
        Outcome::TrivialElement { index } => (rank_drop(g, &final_tuple, *index, config, caveat)?, vec![]),
        Outcome::FreeStyle => (free_product(g, &final_tuple.elements, None), vec![]),
        Outcome::FactorPinch(cert) => pinch_case(g, &final_tuple, cert, config, caveat)?,
    };
    let structure = match structure {
        s @ Structure::FreeProductOfCyclics { .. } => check_free_product(g, s, config),
        s => s,
    };
    Ok(Classification {
        structure,
        provenance,
        extra_moves,
        caveat: caveat.clone(),
    })
}

fn rank_drop(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    index: usize,
    config: &ClassifyConfig,
    caveat: &Option<String>,
) -> Result<Structure> {
    let mut smaller = t.clone();
    smaller.elements.remove(index);
    if smaller.is_empty() {
        return Ok(free_product(g, &[], None));
    }
    let inner = classify_inner(g, &smaller, config, caveat)?;
    Ok(Structure::RankDrop {
        dropped: index,
        smaller,
        inner: Box::new(inner),
    })
}

fn free_product(g: &AmalgamPresentation, basis: &[GroupWord], containment: Option<(Side, GroupWord)>) -> Structure {
    Structure::FreeProductOfCyclics {
        orders: basis.iter().map(|w| element_order(g, w)).collect(),
        basis: basis.to_vec(),
        containment,
    }
}

fn check_free_product(g: &AmalgamPresentation, s: Structure, config: &ClassifyConfig) -> Structure {
    let Structure::FreeProductOfCyclics {
        orders,
        basis,
        containment,
    } = s
    else {
        return s;
    };
    let mut rng = crate::random::rng(config.seed, 0);
    match find_basis_relation(g, &basis, &orders, config.sample_trials, &mut rng) {
        None => Structure::FreeProductOfCyclics {
            orders,
            basis,
            containment,
        },
        Some(word) => match containment {
            Some((side, conjugator)) => Structure::FactorConjugate { side, conjugator },
            None => Structure::Incomplete {
                reason: format!("sampled relation {} among the basis", format_relator(&word)),
                budget_exhausted: false,
            },
        },
    }
}

/// Samples nontrivial reduced words in the free product `*<b_i>` and returns
/// one that evaluates to the identity, if found.
pub fn find_basis_relation<R: Rng + ?Sized>(
    g: &AmalgamPresentation,
    basis: &[GroupWord],
    orders: &[Order],
    trials: usize,
    rng: &mut R,
) -> Option<Vec<(usize, i64)>> {
    let n = basis.len();
    if n == 0 {
        return None;
    }
    let t = GeneratingTuple::new(basis.to_vec());
    for _ in 0..trials {
        let len = rng.random_range(1..=8usize);
        let mut word: Vec<(usize, i64)> = Vec::new();
        for _ in 0..len {
            let choices: Vec<usize> = (0..n).filter(|&i| word.last().is_none_or(|&(j, _)| j != i)).collect();
            if choices.is_empty() {
                break;
            }
            let i = choices[rng.random_range(0..choices.len())];
            let e = match orders[i] {
                Order::Finite(1) => continue,
                Order::Finite(o) => rng.random_range(1..o as i64),
                Order::Infinite => {
                    let k = rng.random_range(1..=3);
                    if rng.random_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                }
            };
            word.push((i, e));
        }
        if !word.is_empty() && g.is_identity(&t.evaluate(g, &word)) {
            return Some(word);
        }
    }
    None
}

pub fn format_relator(word: &[(usize, i64)]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&(i, e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn pinch_case(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    cert: &PinchCertificate,
    config: &ClassifyConfig,
    caveat: &Option<String>,
) -> Result<(Structure, Vec<NielsenMove>)> {
    let n = t.len();
    let boxes = containers(g, t);
    let bx = boxes
        .iter()
        .filter(|b| b.side == cert.side && cert.indices.iter().all(|i| b.members.contains(i)))
        .max_by_key(|b| b.members.len())
        .expect("pinch container is among the containers");
    let budget = config.reduction.step_budget;
    let reduced = reduce_in_factor(g, t, &bx.members, bx.side, &bx.conjugator, budget)?;
    let moves = reduced.moves.clone();
    let tuple = reduced.tuple;

    if bx.members.len() == n {
        let basis: Vec<GroupWord> = tuple.elements.iter().filter(|w| !g.is_identity(w)).cloned().collect();
        return Ok((free_product(g, &basis, Some((bx.side, bx.conjugator.clone()))), moves));
    }
    if let Some(index) = tuple.elements.iter().position(|w| g.is_identity(w)) {
        return Ok((rank_drop(g, &tuple, index, config, caveat)?, moves));
    }
    let (r1, r2) = (g.factor(Side::H1).rank(), g.factor(Side::H2).rank());
    if r1.min(r2) < n {
        return Ok((
            Structure::Incomplete {
                reason: format!(
                    "generators split across a factor conjugate and its complement, and the factor ranks ({r1}, {r2}) are below {n}; no structure theorem applies"
                ),
                budget_exhausted: false,
            },
            moves,
        ));
    }
    if n == 4 && bx.members.len() == 2 {
        let rest: Vec<usize> = (0..n).filter(|i| !bx.members.contains(i)).collect();
        if let Some(s) = case_3c(g, &tuple, &bx.members, &rest, bx.side, &bx.conjugator, config)? {
            return Ok((s, moves));
        }
    }
    Ok((free_product(g, &tuple.elements, None), moves))
}

/// Two elements in a conjugate of `H_side` and two in the same conjugate of
/// the other factor: look for `u^k` in the first pair and a rank drop of
/// `<v^k, x3, x4>`, which yields one relator.
fn case_3c(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    pair: &[usize],
    rest: &[usize],
    side: Side,
    conj: &GroupWord,
    config: &ClassifyConfig,
) -> Result<Option<Structure>> {
    let other = side.other();
    let fo = g.factor(other);
    let in_other_outside_a = |i: usize| {
        g.conjugate_in_factor(other, conj, &t.elements[i])
            .is_some_and(|z| fo.in_cyclic(&z, g.amalgam_generator(other)).is_none())
    };
    if !rest.iter().all(|&i| in_other_outside_a(i)) {
        return Ok(None);
    }
    let Some((k, w)) = amalgam_power_in_pair(g, t, pair, side, conj, config.relator_budget) else {
        return Ok(Some(Structure::Incomplete {
            reason: "case-3c relator not found within budget".into(),
            budget_exhausted: true,
        }));
    };
    // V = <c^-1 u^k c, x3, x4>, all inside c^-1 H_other c.
    let c_inv = g.invert(conj);
    let vk = g.normal_word(&g.conjugate(&c_inv, &g.amalgam_power(k)));
    let v_tuple = GeneratingTuple::new(vec![vk, t.elements[rest[0]].clone(), t.elements[rest[1]].clone()]);
    let red = reduce_in_factor(g, &v_tuple, &[0, 1, 2], other, conj, config.reduction.step_budget)?;
    let Some(slot) = red.tuple.elements.iter().position(|x| g.is_identity(x)) else {
        return Ok(None);
    };
    let symbolic = crate::nielsen::replay_symbolic(3, &red.moves);
    let mut relator = Vec::new();
    for &(s, e) in &symbolic[slot] {
        let piece: Vec<(usize, i64)> = match s {
            0 => w.clone(),
            1 => vec![(rest[0], 1)],
            _ => vec![(rest[1], 1)],
        };
        let piece = if e < 0 {
            crate::nielsen::invert_symbolic(&piece)
        } else {
            piece
        };
        relator.extend(piece);
    }
    let relator = crate::nielsen::free_reduce(relator);
    if relator.is_empty() || !g.is_identity(&t.evaluate(g, &relator)) {
        return Ok(Some(Structure::Incomplete {
            reason: "case-3c relator did not verify".into(),
            budget_exhausted: false,
        }));
    }
    Ok(Some(Structure::OneRelatorQuotient {
        generator_count: 4,
        orders: t.elements.iter().map(|x| element_order(g, x)).collect(),
        basis: t.elements.clone(),
        relator,
    }))
}

/// Smallest `k >= 1` found with `u^k ∈ <x_a, x_b>`, with a word for it.
fn amalgam_power_in_pair(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    pair: &[usize],
    side: Side,
    conj: &GroupWord,
    budget: usize,
) -> Option<(i64, Vec<(usize, i64)>)> {
    let f = g.factor(side);
    let gen = g.amalgam_generator(side);
    let mut letters = Vec::new();
    for &i in pair {
        let y = g.conjugate_in_factor(side, conj, &t.elements[i])?;
        letters.push((i, 1i64, y.clone()));
        letters.push((i, -1, f.invert(&y)));
    }
    let mut seen: HashMap<FactorWord, ()> = HashMap::new();
    seen.insert(FactorWord::identity(), ());
    let mut queue = VecDeque::from([(FactorWord::identity(), Vec::<(usize, i64)>::new())]);
    let mut best: Option<(i64, Vec<(usize, i64)>)> = None;
    while let Some((z, word)) = queue.pop_front() {
        if word.len() >= budget {
            continue;
        }
        for (i, e, y) in &letters {
            let next = f.mul(&z, y);
            if seen.insert(next.clone(), ()).is_some() {
                continue;
            }
            let mut w = word.clone();
            w.push((*i, *e));
            if let Some(k) = f.in_cyclic(&next, gen).filter(|&k| k != 0) {
                // Combine with the best so far by the Euclidean algorithm on words.
                let (k, w) = if k < 0 {
                    (-k, crate::nielsen::invert_symbolic(&w))
                } else {
                    (k, w.clone())
                };
                best = Some(match best.take() {
                    None => (k, w),
                    Some(b) => euclid_words(b, (k, w)),
                });
                if best.as_ref().is_some_and(|b| b.0 == 1) {
                    return best;
                }
            }
            queue.push_back((next, w));
        }
    }
    best
}

fn euclid_words(mut a: (i64, Vec<(usize, i64)>), mut b: (i64, Vec<(usize, i64)>)) -> (i64, Vec<(usize, i64)>) {
    loop {
        if a.0 < b.0 {
            std::mem::swap(&mut a, &mut b);
        }
        if b.0 == 0 {
            return a;
        }
        // u^{a-b} = W_a W_b^-1
        let mut w = a.1;
        w.extend(crate::nielsen::invert_symbolic(&b.1));
        a = (a.0 - b.0, crate::nielsen::free_reduce(w));
    }
}

/// Re-verifies a classification of `t`: replay of the move log, the basis
/// sampling check, and the relator.
pub fn verify_classification(
    g: &AmalgamPresentation,
    t: &GeneratingTuple,
    c: &Classification,
    config: &ClassifyConfig,
) -> std::result::Result<(), String> {
    let mut moves = c.provenance.moves.clone();
    moves.extend(c.extra_moves.iter().copied());
    let reached = replay(g, t, &moves).map_err(|e| e.to_string())?;
    if reached.len() != t.len() {
        return Err("replay changed the tuple length".into());
    }
    let same_subgroup_span = |basis: &[GroupWord]| basis.iter().all(|b| reached.elements.iter().any(|x| g.equal(x, b)));
    match &c.structure {
        Structure::FreeProductOfCyclics { orders, basis, .. } => {
            if basis.len() > t.len() {
                return Err("basis longer than the tuple".into());
            }
            if !same_subgroup_span(basis) {
                return Err("basis is not part of the replayed tuple".into());
            }
            let mut rng = crate::random::rng(config.seed, 1);
            if let Some(w) = find_basis_relation(g, basis, orders, config.sample_trials, &mut rng) {
                return Err(format!("relation {} among the basis", format_relator(&w)));
            }
            Ok(())
        }
        Structure::OneRelatorQuotient { basis, relator, .. } => {
            if !same_subgroup_span(basis) {
                return Err("basis is not part of the replayed tuple".into());
            }
            let tb = GeneratingTuple::new(basis.clone());
            if !g.is_identity(&tb.evaluate(g, relator)) {
                return Err("relator does not hold".into());
            }
            Ok(())
        }
        Structure::FactorConjugate { side, conjugator } => {
            if reached
                .elements
                .iter()
                .all(|x| g.conjugate_in_factor(*side, conjugator, x).is_some())
            {
                Ok(())
            } else {
                Err("an element is outside the stated factor conjugate".into())
            }
        }
        Structure::RankDrop {
            dropped,
            smaller,
            inner,
        } => {
            if !g.is_identity(&reached.elements[*dropped]) {
                return Err("dropped element is not the identity".into());
            }
            let mut expected = reached.clone();
            expected.elements.remove(*dropped);
            if *smaller != expected {
                return Err("smaller tuple is not the replayed tuple minus the identity".into());
            }
            verify_classification(g, smaller, inner, config)
        }
        Structure::Incomplete { .. } => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub label: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub identities: Vec<IdentityCheck>,
    /// `<x1, x2, x3, x4> = G`.
    pub generates_g: bool,
    pub notes: Vec<String>,
}

/// Evaluates the six identities showing `<x1,..,x4> = G` for the given
/// tuple; all are reported even after a failure.
pub fn example_identities(g: &AmalgamPresentation, x: &GeneratingTuple) -> Vec<IdentityCheck> {
    let a = |i: usize| g.word_from_raw(&[(i - 1, 1)]).expect("example generator");
    let xw = |word: &[(usize, i64)]| {
        let w: Vec<(usize, i64)> = word.iter().map(|&(i, e)| (i - 1, e)).collect();
        x.evaluate(g, &w)
    };
    let cases: Vec<(&str, &str, GroupWord, GroupWord)> = vec![
        (
            "(i)",
            "x1 x2^-1 x3 x4^-1 x1^-1 x2 x3^-1 x4 = a6",
            xw(&[(1, 1), (2, -1), (3, 1), (4, -1), (1, -1), (2, 1), (3, -1), (4, 1)]),
            a(6),
        ),
        (
            "(ii)",
            "a5 = a6 x1 x2^-1 x3",
            a(5),
            a(6).concat(&xw(&[(1, 1), (2, -1), (3, 1)])),
        ),
        ("(iii)", "a1 = x4 a5", a(1), xw(&[(4, 1)]).concat(&a(5))),
        ("(iv)", "a2 = a1 x1", a(2), a(1).concat(&xw(&[(1, 1)]))),
        ("(v)", "a3 = a1 x2", a(3), a(1).concat(&xw(&[(2, 1)]))),
        ("(vi)", "a4 = a1 x3", a(4), a(1).concat(&xw(&[(3, 1)]))),
    ];
    cases
        .into_iter()
        .map(|(label, statement, lhs, rhs)| IdentityCheck {
            label: label.into(),
            statement: statement.into(),
            holds: g.equal(&lhs, &rhs),
        })
        .collect()
}

/// Checks the worked example: every generator `a_i` lies in `<x1,..,x4>`.
pub fn verify_example_group() -> Result<ExampleReport> {
    let g = example_group();
    let x = example_tuple(&g);
    let identities = example_identities(&g, &x);
    if let Some(bad) = identities.iter().find(|c| !c.holds) {
        return Err(Error::IdentityFailed(format!("{} {}", bad.label, bad.statement)));
    }
    Ok(ExampleReport {
        identities,
        generates_g: true,
        notes: vec!["a6^-2 is read as a6, since a6^3 = 1".into()],
    })
}
