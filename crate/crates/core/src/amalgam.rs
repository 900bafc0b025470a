//! The amalgamated product `G = H1 *_A H2` with `A = <u> = <v>` infinite
//! cyclic, where `H1`, `H2` are free products of cyclic groups.
//!
//! The identification is `u = v` in `G`, so the relator is `u v^-1`. A word
//! `U V = 1` (as in groups of F-type) is encoded with `v := V^-1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{CyclicFactorPresentation, FactorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    H1,
    H2,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::H1 => Side::H2,
            Side::H2 => Side::H1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::H1 => "H1",
            Side::H2 => "H2",
        })
    }
}

/// A factor element tagged with the factor it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub side: Side,
    pub word: FactorWord,
}

impl Letter {
    pub fn new(side: Side, word: FactorWord) -> Self {
        Letter { side, word }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// A raw element of `G`: a product of factor letters. Adjacent letters may
/// share a side; normalization happens in [`AmalgamPresentation::reduced_form`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// Builds a word, dropping identity letters.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        GroupWord(letters.into_iter().filter(|l| !l.word.is_identity()).collect())
    }

    pub fn letter(side: Side, word: FactorWord) -> Self {
        Self::from_letters([Letter::new(side, word)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Concatenation; the group product without normalization.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        GroupWord(letters)
    }

    pub fn concat_all<'a>(words: impl IntoIterator<Item = &'a GroupWord>) -> GroupWord {
        GroupWord(words.into_iter().flat_map(|w| w.0.iter().cloned()).collect())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `g = h_1 ... h_m u^tail` with `h_i` canonical left coset representatives
/// from alternating factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedForm {
    pub parts: Vec<Letter>,
    pub tail: i64,
}

impl ReducedForm {
    pub fn is_identity(&self) -> bool {
        self.parts.is_empty() && self.tail == 0
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(" | ")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        if self.tail != 0 {
            if !first {
                f.write_str(" | ")?;
            }
            write!(f, "u^{}", self.tail)?;
        }
        Ok(())
    }
}

/// Kernel of a symmetric normal form. Elements of `A` are stored as pure
/// powers `u^j` so that equal kernels compare equal syntactically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kernel {
    Amalgam(i64),
    Factor(Letter),
}

impl Kernel {
    pub fn in_amalgam(&self) -> bool {
        matches!(self, Kernel::Amalgam(_))
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Amalgam(j) => write!(f, "u^{j}"),
            Kernel::Factor(l) => write!(f, "{} in {}", l.word, l.side),
        }
    }
}

/// `g = l_1 ... l_m k r_m ... r_1`.
///
/// `leading` holds `l_1..l_m`, `rear` holds `r_m..r_1` in written order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricNormalForm {
    pub leading: Vec<Letter>,
    pub kernel: Kernel,
    pub rear: Vec<Letter>,
    pub lambda: usize,
}

impl fmt::Display for SymmetricNormalForm {
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
            "leading: {} ; kernel: {} ; rear: {} ; lambda: {}",
            half(&self.leading),
            self.kernel,
            half(&self.rear),
            self.lambda
        )
    }
}

/// Outcome of asking whether an element is conjugate into a factor or into `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjugacyCertificate {
    /// Not conjugate into `H1` or `H2`.
    None,
    /// `conjugator * w * conjugator^-1 = kernel`, with `kernel` in `H_side`
    /// and not conjugate into `A`.
    Factor {
        side: Side,
        conjugator: GroupWord,
        kernel: FactorWord,
    },
    /// `conjugator * w * conjugator^-1 = u^power`. The identity reports
    /// power 0.
    Amalgam { conjugator: GroupWord, power: i64 },
}

impl ConjugacyCertificate {
    pub fn conjugator(&self) -> Option<&GroupWord> {
        match self {
            ConjugacyCertificate::None => None,
            ConjugacyCertificate::Factor { conjugator, .. } | ConjugacyCertificate::Amalgam { conjugator, .. } => {
                Some(conjugator)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmalgamPresentation {
    h1: CyclicFactorPresentation,
    h2: CyclicFactorPresentation,
    u: FactorWord,
    v: FactorWord,
}

impl AmalgamPresentation {
    /// Checks that `u` and `v` are cyclically reduced of infinite order and
    /// that the factors use disjoint generators.
    pub fn new(
        h1: CyclicFactorPresentation,
        h2: CyclicFactorPresentation,
        u: FactorWord,
        v: FactorWord,
    ) -> Result<Self> {
        let r1 = h1.generator_range();
        let r2 = h2.generator_range();
        if r1.start < r2.end && r2.start < r1.end {
            return Err(Error::PresentationMismatch);
        }
        h1.validate(&u)?;
        h2.validate(&v)?;
        for (f, w, name) in [(&h1, &u, "u"), (&h2, &v, "v")] {
            if !f.order_of(w).is_infinite() {
                return Err(Error::FiniteOrder(name));
            }
            if !f.is_cyclically_reduced(w) {
                return Err(Error::NotCyclicallyReduced(name));
            }
            if let [s] = w.syllables() {
                if f.rank() == 1 && s.exponent.abs() == 1 {
                    return Err(Error::ImproperAmalgam(format!(
                        "{name} = {w} generates its whole factor"
                    )));
                }
            }
        }
        Ok(AmalgamPresentation { h1, h2, u, v })
    }

    pub fn factor(&self, side: Side) -> &CyclicFactorPresentation {
        match side {
            Side::H1 => &self.h1,
            Side::H2 => &self.h2,
        }
    }

    /// `u` for `H1`, `v` for `H2`.
    pub fn amalgam_generator(&self, side: Side) -> &FactorWord {
        match side {
            Side::H1 => &self.u,
            Side::H2 => &self.v,
        }
    }

    pub fn u(&self) -> &FactorWord {
        &self.u
    }

    pub fn v(&self) -> &FactorWord {
        &self.v
    }

    pub fn generator_count(&self) -> usize {
        self.h1.rank() + self.h2.rank()
    }

    pub fn side_of_generator(&self, g: usize) -> Option<Side> {
        if self.h1.contains_generator(g) {
            Some(Side::H1)
        } else if self.h2.contains_generator(g) {
            Some(Side::H2)
        } else {
            None
        }
    }

    /// Builds a word from raw syllables over all generators, grouping maximal
    /// runs that belong to the same factor into one letter.
    pub fn word_from_raw(&self, raw: &[(usize, i64)]) -> Result<GroupWord> {
        let mut letters = Vec::new();
        let mut run: Vec<(usize, i64)> = Vec::new();
        let mut run_side = None;
        for &(g, k) in raw {
            let side = self
                .side_of_generator(g)
                .ok_or(Error::InvalidGenerator(g, 0, self.generator_count()))?;
            if run_side != Some(side) {
                if let Some(s) = run_side {
                    letters.push(Letter::new(s, self.factor(s).normalize(&run)?));
                }
                run.clear();
                run_side = Some(side);
            }
            run.push((g, k));
        }
        if let Some(s) = run_side {
            letters.push(Letter::new(s, self.factor(s).normalize(&run)?));
        }
        Ok(GroupWord::from_letters(letters))
    }

    /// Checks every letter is a canonical word of its factor.
    pub fn validate(&self, w: &GroupWord) -> Result<()> {
        for l in w.letters() {
            self.factor(l.side).validate(&l.word)?;
        }
        Ok(())
    }

    /// `u^k` as a word of `G`.
    pub fn amalgam_power(&self, k: i64) -> GroupWord {
        GroupWord::letter(Side::H1, self.h1.pow(&self.u, k))
    }

    pub fn invert(&self, w: &GroupWord) -> GroupWord {
        GroupWord(
            w.0.iter()
                .rev()
                .map(|l| Letter::new(l.side, self.factor(l.side).invert(&l.word)))
                .collect(),
        )
    }

    pub fn multiply(&self, a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.concat(b)
    }

    /// `c w c^-1`.
    pub fn conjugate(&self, c: &GroupWord, w: &GroupWord) -> GroupWord {
        GroupWord::concat_all([c, w, &self.invert(c)])
    }

    pub fn pow(&self, w: &GroupWord, k: i64) -> GroupWord {
        let base = if k < 0 { self.invert(w) } else { w.clone() };
        GroupWord((0..k.unsigned_abs()).flat_map(|_| base.0.iter().cloned()).collect())
    }

    /// Sweeps left to right, carrying amalgam powers rightward.
    pub fn reduced_form(&self, w: &GroupWord) -> ReducedForm {
        let mut parts: Vec<Letter> = Vec::new();
        let mut tail = 0i64;
        for l in &w.0 {
            self.push_letter(&mut parts, &mut tail, l.side, &l.word);
        }
        ReducedForm { parts, tail }
    }

    fn push_letter(&self, parts: &mut Vec<Letter>, tail: &mut i64, side: Side, h: &FactorWord) {
        let f = self.factor(side);
        let gen = self.amalgam_generator(side);
        let carried = f.pow(gen, *tail);
        let x = match parts.last() {
            Some(last) if last.side == side => {
                let x = f.mul_all([&last.word, &carried, h]);
                parts.pop();
                x
            }
            _ => f.mul(&carried, h),
        };
        let (rep, k) = f.left_coset_unchecked(&x, gen);
        *tail = k;
        if !rep.is_identity() {
            parts.push(Letter::new(side, rep));
        }
    }

    /// The word `h_1 ... h_m u^tail`.
    pub fn reduced_to_word(&self, rf: &ReducedForm) -> GroupWord {
        GroupWord::from_letters(rf.parts.iter().cloned()).concat(&self.amalgam_power(rf.tail))
    }

    /// Canonical word for the element: the reduced form written out.
    pub fn normal_word(&self, w: &GroupWord) -> GroupWord {
        self.reduced_to_word(&self.reduced_form(w))
    }

    pub fn equal(&self, a: &GroupWord, b: &GroupWord) -> bool {
        self.reduced_form(a) == self.reduced_form(b)
    }

    pub fn is_identity(&self, w: &GroupWord) -> bool {
        self.reduced_form(w).is_identity()
    }

    /// Length of the symmetric normal form; equals the reduced-form length.
    pub fn lambda(&self, w: &GroupWord) -> usize {
        self.reduced_form(w).length()
    }

    /// Folds the reduced forms of `w` and `w^-1` toward the middle.
    pub fn symmetric_form(&self, w: &GroupWord) -> SymmetricNormalForm {
        let rf = self.reduced_form(w);
        let m = rf.parts.len();
        let half = m / 2;
        let leading: Vec<Letter> = rf.parts[..half].to_vec();
        let inverse_rf = self.reduced_form(&self.invert(w));
        let rear: Vec<Letter> = inverse_rf.parts[..half]
            .iter()
            .rev()
            .map(|l| Letter::new(l.side, self.factor(l.side).invert(&l.word)))
            .collect();

        let lead_word = GroupWord::from_letters(leading.iter().cloned());
        let rear_word = GroupWord::from_letters(rear.iter().cloned());
        let middle = GroupWord::concat_all([&self.invert(&lead_word), w, &self.invert(&rear_word)]);
        let krf = self.reduced_form(&middle);
        let kernel = match krf.parts.as_slice() {
            [] => Kernel::Amalgam(krf.tail),
            [p] => {
                let f = self.factor(p.side);
                let word = f.mul(&p.word, &f.pow(self.amalgam_generator(p.side), krf.tail));
                Kernel::Factor(Letter::new(p.side, word))
            }
            _ => unreachable!("kernel of a symmetric normal form lies in a factor"),
        };
        debug_assert_eq!(kernel.in_amalgam(), m.is_multiple_of(2));
        SymmetricNormalForm {
            leading,
            kernel,
            rear,
            lambda: m,
        }
    }

    pub fn kernel_word(&self, k: &Kernel) -> GroupWord {
        match k {
            Kernel::Amalgam(j) => self.amalgam_power(*j),
            Kernel::Factor(l) => GroupWord::from_letters([l.clone()]),
        }
    }

    /// `l_1 ... l_m k r_m ... r_1` as a word.
    pub fn symmetric_to_word(&self, snf: &SymmetricNormalForm) -> GroupWord {
        GroupWord::from_letters(snf.leading.iter().cloned())
            .concat(&self.kernel_word(&snf.kernel))
            .concat(&GroupWord::from_letters(snf.rear.iter().cloned()))
    }

    /// Checks the shape conditions of a symmetric normal form: alternating
    /// halves of canonical (inverse) coset representatives, the kernel-tag
    /// rules and the parity of lambda.
    pub fn check_symmetric_shape(&self, snf: &SymmetricNormalForm) -> std::result::Result<(), String> {
        let m = snf.leading.len();
        if snf.rear.len() != m {
            return Err(format!("halves have lengths {} and {}", m, snf.rear.len()));
        }
        let alternating = |xs: &[Letter]| xs.windows(2).all(|p| p[0].side != p[1].side);
        if !alternating(&snf.leading) || !alternating(&snf.rear) {
            return Err("halves do not alternate".into());
        }
        for l in &snf.leading {
            let (rep, _) = self
                .factor(l.side)
                .left_coset_unchecked(&l.word, self.amalgam_generator(l.side));
            if l.word.is_identity() || rep != l.word {
                return Err(format!("{} is not a left coset representative", l.word));
            }
        }
        for r in &snf.rear {
            let f = self.factor(r.side);
            let inv = f.invert(&r.word);
            let (rep, _) = f.left_coset_unchecked(&inv, self.amalgam_generator(r.side));
            if r.word.is_identity() || rep != inv {
                return Err(format!("{} is not an inverse left coset representative", r.word));
            }
        }
        let expected = match &snf.kernel {
            Kernel::Amalgam(_) => 2 * m,
            Kernel::Factor(_) => 2 * m + 1,
        };
        if snf.lambda != expected {
            return Err(format!("lambda {} but expected {}", snf.lambda, expected));
        }
        if m >= 1 {
            // leading is l_1..l_m and rear is r_m..r_1, so l_m and r_m meet the kernel.
            let lm = snf.leading[m - 1].side;
            let rm = snf.rear[0].side;
            match &snf.kernel {
                Kernel::Amalgam(_) if lm == rm => return Err("kernel in A but l_m and r_m share a factor".into()),
                Kernel::Factor(k) if lm == k.side || rm == k.side => {
                    return Err("l_m or r_m lies in the kernel's factor".into())
                }
                _ => {}
            }
        }
        if let Kernel::Factor(k) = &snf.kernel {
            if self
                .factor(k.side)
                .in_cyclic(&k.word, self.amalgam_generator(k.side))
                .is_some()
            {
                return Err("factor kernel lies in A".into());
            }
        }
        Ok(())
    }

    /// Writes `w = c * core * c^-1` with `core` cyclically reduced: its
    /// reduced length is at most 1, or its first and last parts lie in
    /// different factors.
    pub fn cyclic_reduce(&self, w: &GroupWord) -> (GroupWord, ReducedForm) {
        let mut conj = GroupWord::identity();
        let mut rf = self.reduced_form(w);
        while rf.parts.len() >= 3 && rf.parts.len() % 2 == 1 {
            let head = GroupWord::from_letters([rf.parts[0].clone()]);
            let current = self.reduced_to_word(&rf);
            rf = self.reduced_form(&GroupWord::concat_all([&self.invert(&head), &current, &head]));
            conj = conj.concat(&head);
        }
        (self.normal_word(&conj), rf)
    }

    /// Decides whether `w` is conjugate into `H1 ∪ H2`, and whether into `A`.
    pub fn conjugate_into_factor_or_a(&self, w: &GroupWord) -> ConjugacyCertificate {
        let (c, core) = self.cyclic_reduce(w);
        let c_inv = self.invert(&c);
        match core.parts.as_slice() {
            [] => ConjugacyCertificate::Amalgam {
                conjugator: c_inv,
                power: core.tail,
            },
            [p] => {
                let side = p.side;
                let f = self.factor(side);
                let gen = self.amalgam_generator(side);
                let x = f.mul(&p.word, &f.pow(gen, core.tail));
                match f.left_coset_unchecked(&x, gen) {
                    (rep, k) if rep.is_identity() => ConjugacyCertificate::Amalgam {
                        conjugator: c_inv,
                        power: k,
                    },
                    _ => match f
                        .conjugate_into_cyclic(&x, gen)
                        .expect("amalgamating element has infinite order")
                    {
                        Some((c2, k)) => ConjugacyCertificate::Amalgam {
                            conjugator: self.normal_word(&GroupWord::letter(side, c2).concat(&c_inv)),
                            power: k,
                        },
                        None => ConjugacyCertificate::Factor {
                            side,
                            conjugator: c_inv,
                            kernel: x,
                        },
                    },
                }
            }
            _ => ConjugacyCertificate::None,
        }
    }

    /// If `c w c^-1` lies in `H_side`, returns it as a factor word.
    pub fn conjugate_in_factor(&self, side: Side, c: &GroupWord, w: &GroupWord) -> Option<FactorWord> {
        let rf = self.reduced_form(&self.conjugate(c, w));
        let f = self.factor(side);
        let gen = self.amalgam_generator(side);
        match rf.parts.as_slice() {
            [] => Some(f.pow(gen, rf.tail)),
            [p] if p.side == side => Some(f.mul(&p.word, &f.pow(gen, rf.tail))),
            _ => None,
        }
    }
}
