//! Free products of groups and their normal forms.
//!
//! A [`FreeProduct`] holds a list of [`Factor`]s: finite groups given by a
//! Cayley table, free groups (possibly of countable rank), or another free
//! product. Elements are [`FPElement`]s, alternating sequences of nontrivial
//! syllables; every operation returns the unique normal form.

mod spec;
mod table;

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

use crate::free_group::{parse_generator, FreeWord};
use crate::parse::{tokenize, ParseError};

pub use spec::{FactorSpec, RankSpec};
pub use table::TableGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid factor spec: {0}")]
    InvalidSpec(String),
    #[error("element does not belong to this free product: {0}")]
    MismatchedAmbient(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Element of a single factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorElem {
    Table(u32),
    Free(FreeWord),
    Product(FPElement),
}

/// One syllable of a normal form: a nontrivial element of factor `factor`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub factor: usize,
    pub elem: FactorElem,
}

/// Normal form `g_1 g_2 ... g_n`: no syllable is trivial and no two
/// consecutive syllables come from the same factor.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FPElement {
    syllables: Vec<Syllable>,
}

impl FPElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Syllable length.
    pub fn syl(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn first(&self) -> Option<&Syllable> {
        self.syllables.first()
    }

    pub fn last(&self) -> Option<&Syllable> {
        self.syllables.last()
    }

    /// The prefix of the first `n` syllables.
    pub fn prefix(&self, n: usize) -> FPElement {
        FPElement {
            syllables: self.syllables[..n.min(self.syl())].to_vec(),
        }
    }

    #[cfg(test)]
    pub(crate) fn from_normal_syllables(syllables: Vec<Syllable>) -> Self {
        Self { syllables }
    }
}

/// Roots of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSet<E> {
    /// Exactly these elements.
    Finite(Vec<E>),
    /// The identity together with every conjugate of the listed torsion
    /// elements (an infinite set).
    Torsion(Vec<E>),
}

impl<E: PartialEq> RootSet<E> {
    /// Membership for the finite variant; for `Torsion` only the listed
    /// representatives are checked.
    pub fn contains_listed(&self, e: &E) -> bool {
        match self {
            RootSet::Finite(v) | RootSet::Torsion(v) => v.contains(e),
        }
    }

    pub fn listed(&self) -> &[E] {
        match self {
            RootSet::Finite(v) | RootSet::Torsion(v) => v,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RootSet::Finite(_))
    }

    pub fn map<F, T>(self, f: F) -> RootSet<T>
    where
        F: FnMut(E) -> T,
    {
        match self {
            RootSet::Finite(v) => RootSet::Finite(v.into_iter().map(f).collect()),
            RootSet::Torsion(v) => RootSet::Torsion(v.into_iter().map(f).collect()),
        }
    }
}

/// Operations a factor of a free product must provide.
pub trait FactorGroup {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// Every element, when the group is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Recognizes a single token name (no exponent).
    fn parse_token(&self, token: &str) -> Option<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    fn power(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let mut base = if n < 0 { self.invert(a) } else { a.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// All `x` with `x^q = z`.
    fn qth_roots(&self, z: &Self::Elem, q: u32) -> RootSet<Self::Elem>;
}

impl FactorGroup for TableGroup {
    type Elem = u32;

    fn identity(&self) -> u32 {
        TableGroup::identity(self)
    }

    fn multiply(&self, a: &u32, b: &u32) -> u32 {
        TableGroup::multiply(self, *a, *b)
    }

    fn invert(&self, a: &u32) -> u32 {
        TableGroup::invert(self, *a)
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.order() as u32).collect())
    }

    fn parse_token(&self, token: &str) -> Option<u32> {
        TableGroup::parse_token(self, token)
    }

    fn format(&self, a: &u32) -> String {
        TableGroup::format(self, *a)
    }

    fn qth_roots(&self, z: &u32, q: u32) -> RootSet<u32> {
        RootSet::Finite(
            (0..self.order() as u32)
                .filter(|x| self.power(x, i64::from(q)) == *z)
                .collect(),
        )
    }
}

/// A free factor on generators `<prefix>1, <prefix>2, ...`, of finite rank or
/// countable rank (`rank == None`). Generators come into existence as they are
/// referenced; `referenced()` is the largest index seen so far.
#[derive(Debug)]
pub struct FreeFactor {
    rank: Option<u32>,
    prefix: String,
    referenced: AtomicU32,
}

impl Clone for FreeFactor {
    fn clone(&self) -> Self {
        Self {
            rank: self.rank,
            prefix: self.prefix.clone(),
            referenced: AtomicU32::new(self.referenced()),
        }
    }
}

impl PartialEq for FreeFactor {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.prefix == other.prefix
    }
}

impl Eq for FreeFactor {}

impl FreeFactor {
    pub fn new(rank: Option<u32>, prefix: impl Into<String>) -> Result<Self, FpError> {
        let prefix = prefix.into();
        if prefix.is_empty()
            || prefix.contains(|c: char| c.is_whitespace() || c.is_ascii_digit() || "*^.".contains(c))
        {
            return Err(FpError::InvalidSpec(format!("bad generator prefix {prefix:?}")));
        }
        if rank == Some(0) {
            return Err(FpError::InvalidSpec("free factor of rank 0".into()));
        }
        Ok(Self {
            rank,
            prefix,
            referenced: AtomicU32::new(0),
        })
    }

    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn referenced(&self) -> u32 {
        self.referenced.load(Ordering::Relaxed)
    }

    /// Records that generators up to `index` are in use. Monotone.
    pub fn reference(&self, index: u32) {
        self.referenced.fetch_max(index, Ordering::Relaxed);
    }

    pub fn admits(&self, w: &FreeWord) -> bool {
        self.rank.is_none_or(|r| w.max_index() <= r)
    }
}

impl FactorGroup for FreeFactor {
    type Elem = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }

    fn multiply(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.multiply(b)
    }

    fn invert(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }

    fn elements(&self) -> Option<Vec<FreeWord>> {
        None
    }

    fn parse_token(&self, token: &str) -> Option<FreeWord> {
        let g = parse_generator(token, &self.prefix)?;
        if self.rank.is_some_and(|r| g.index() > r) {
            return None;
        }
        self.reference(g.index());
        Some(FreeWord::generator(g))
    }

    fn format(&self, a: &FreeWord) -> String {
        a.display_with_prefix(&self.prefix).to_string()
    }

    fn power(&self, a: &FreeWord, n: i64) -> FreeWord {
        a.power(n)
    }

    fn qth_roots(&self, z: &FreeWord, q: u32) -> RootSet<FreeWord> {
        RootSet::Finite(z.qth_root(q).into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Table(TableGroup),
    Free(FreeFactor),
    Product(FreeProduct),
}

impl Factor {
    pub fn name(&self) -> String {
        match self {
            Factor::Table(t) => t.name().to_string(),
            Factor::Free(f) => match f.rank() {
                Some(r) => format!("F{r}"),
                None => "Fω".to_string(),
            },
            Factor::Product(p) => format!("({})", p.name()),
        }
    }

    /// Whether some element other than the identity has finite order
    /// dividing `q`.
    fn has_torsion_roots_of_identity(&self, q: u32) -> bool {
        !self.torsion_reps(q).is_empty()
    }

    fn torsion_reps(&self, q: u32) -> Vec<FactorElem> {
        match self.qth_roots(&self.identity(), q) {
            RootSet::Finite(v) | RootSet::Torsion(v) => {
                v.into_iter().filter(|x| !self.is_identity(x)).collect()
            }
        }
    }
}

fn mismatch(factor: &Factor, elem: &FactorElem) -> ! {
    panic!("element {elem:?} does not belong to factor {}", factor.name())
}

impl FactorGroup for Factor {
    type Elem = FactorElem;

    fn identity(&self) -> FactorElem {
        match self {
            Factor::Table(t) => FactorElem::Table(FactorGroup::identity(t)),
            Factor::Free(_) => FactorElem::Free(FreeWord::identity()),
            Factor::Product(_) => FactorElem::Product(FPElement::identity()),
        }
    }

    fn multiply(&self, a: &FactorElem, b: &FactorElem) -> FactorElem {
        match (self, a, b) {
            (Factor::Table(t), FactorElem::Table(x), FactorElem::Table(y)) => {
                FactorElem::Table(t.multiply(*x, *y))
            }
            (Factor::Free(_), FactorElem::Free(x), FactorElem::Free(y)) => {
                FactorElem::Free(x.multiply(y))
            }
            (Factor::Product(p), FactorElem::Product(x), FactorElem::Product(y)) => {
                FactorElem::Product(p.multiply(x, y))
            }
            (f, x, _) => mismatch(f, x),
        }
    }

    fn invert(&self, a: &FactorElem) -> FactorElem {
        match (self, a) {
            (Factor::Table(t), FactorElem::Table(x)) => FactorElem::Table(t.invert(*x)),
            (Factor::Free(_), FactorElem::Free(x)) => FactorElem::Free(x.inverse()),
            (Factor::Product(p), FactorElem::Product(x)) => FactorElem::Product(p.invert(x)),
            (f, x) => mismatch(f, x),
        }
    }

    fn is_identity(&self, a: &FactorElem) -> bool {
        match (self, a) {
            (Factor::Table(t), FactorElem::Table(x)) => *x == t.identity(),
            (_, FactorElem::Free(x)) => x.is_identity(),
            (_, FactorElem::Product(x)) => x.is_identity(),
            (f, x) => mismatch(f, x),
        }
    }

    fn elements(&self) -> Option<Vec<FactorElem>> {
        match self {
            Factor::Table(t) => Some(
                FactorGroup::elements(t)?
                    .into_iter()
                    .map(FactorElem::Table)
                    .collect(),
            ),
            Factor::Free(_) => None,
            Factor::Product(p) => Some(
                FactorGroup::elements(p)?
                    .into_iter()
                    .map(FactorElem::Product)
                    .collect(),
            ),
        }
    }

    fn parse_token(&self, token: &str) -> Option<FactorElem> {
        match self {
            Factor::Table(t) => FactorGroup::parse_token(t, token).map(FactorElem::Table),
            Factor::Free(f) => f.parse_token(token).map(FactorElem::Free),
            Factor::Product(p) => FactorGroup::parse_token(p, token).map(FactorElem::Product),
        }
    }

    fn format(&self, a: &FactorElem) -> String {
        match (self, a) {
            (Factor::Table(t), FactorElem::Table(x)) => t.format(*x),
            (Factor::Free(f), FactorElem::Free(x)) => f.format(x),
            (Factor::Product(p), FactorElem::Product(x)) => p.format(x),
            (f, x) => mismatch(f, x),
        }
    }

    fn power(&self, a: &FactorElem, n: i64) -> FactorElem {
        match (self, a) {
            (Factor::Table(t), FactorElem::Table(x)) => FactorElem::Table(t.power(x, n)),
            (Factor::Free(_), FactorElem::Free(x)) => FactorElem::Free(x.power(n)),
            (Factor::Product(p), FactorElem::Product(x)) => FactorElem::Product(p.power(x, n)),
            (f, x) => mismatch(f, x),
        }
    }

    fn qth_roots(&self, z: &FactorElem, q: u32) -> RootSet<FactorElem> {
        match (self, z) {
            (Factor::Table(t), FactorElem::Table(x)) => t.qth_roots(x, q).map(FactorElem::Table),
            (Factor::Free(f), FactorElem::Free(x)) => f.qth_roots(x, q).map(FactorElem::Free),
            (Factor::Product(p), FactorElem::Product(x)) => {
                p.qth_root(x, q).map(FactorElem::Product)
            }
            (f, x) => mismatch(f, x),
        }
    }
}

/// The free product of its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<Factor>,
}

fn push_syllable(factors: &[Factor], out: &mut Vec<Syllable>, s: Syllable) {
    let f = &factors[s.factor];
    if let Some(last) = out.last_mut() {
        if last.factor == s.factor {
            let merged = f.multiply(&last.elem, &s.elem);
            if f.is_identity(&merged) {
                out.pop();
            } else {
                last.elem = merged;
            }
            return;
        }
    }
    if !f.is_identity(&s.elem) {
        out.push(s);
    }
}

impl FreeProduct {
    pub fn new(factors: Vec<Factor>) -> Result<Self, FpError> {
        if factors.is_empty() {
            return Err(FpError::InvalidSpec("a free product needs at least one factor".into()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, idx: usize) -> &Factor {
        &self.factors[idx]
    }

    pub fn name(&self) -> String {
        self.factors
            .iter()
            .map(Factor::name)
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// Single-syllable element (identity if `elem` is trivial).
    pub fn syllable(&self, factor: usize, elem: FactorElem) -> FPElement {
        let mut out = Vec::new();
        push_syllable(&self.factors, &mut out, Syllable { factor, elem });
        FPElement { syllables: out }
    }

    /// Normal form of the product of arbitrary syllables.
    pub fn from_syllables(&self, syllables: impl IntoIterator<Item = Syllable>) -> FPElement {
        let mut out = Vec::new();
        for s in syllables {
            push_syllable(&self.factors, &mut out, s);
        }
        FPElement { syllables: out }
    }

    pub fn multiply(&self, a: &FPElement, b: &FPElement) -> FPElement {
        let mut out = Vec::with_capacity(a.syl() + b.syl());
        out.extend_from_slice(&a.syllables);
        for s in &b.syllables {
            push_syllable(&self.factors, &mut out, s.clone());
        }
        FPElement { syllables: out }
    }

    /// [`FreeProduct::multiply`] after checking both operands belong here.
    pub fn checked_multiply(&self, a: &FPElement, b: &FPElement) -> Result<FPElement, FpError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.multiply(a, b))
    }

    pub fn multiply_all<'a>(&self, items: impl IntoIterator<Item = &'a FPElement>) -> FPElement {
        items
            .into_iter()
            .fold(FPElement::identity(), |acc, x| self.multiply(&acc, x))
    }

    pub fn invert(&self, a: &FPElement) -> FPElement {
        FPElement {
            syllables: a
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    factor: s.factor,
                    elem: self.factors[s.factor].invert(&s.elem),
                })
                .collect(),
        }
    }

    pub fn conjugate(&self, a: &FPElement, by: &FPElement) -> FPElement {
        self.multiply(&self.multiply(by, a), &self.invert(by))
    }

    pub fn commutes(&self, a: &FPElement, b: &FPElement) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    pub fn power(&self, a: &FPElement, n: i64) -> FPElement {
        if n == 0 || a.is_identity() {
            return FPElement::identity();
        }
        let (gamma, core) = self.cyclic_split(a);
        let base = if n < 0 { self.invert(&core) } else { core };
        let core_pow = if base.syl() == 1 {
            let s = &base.syllables[0];
            self.syllable(s.factor, self.factors[s.factor].power(&s.elem, n.abs()))
        } else {
            let mut out = Vec::with_capacity(base.syl() * n.unsigned_abs() as usize);
            for _ in 0..n.abs() {
                for s in &base.syllables {
                    push_syllable(&self.factors, &mut out, s.clone());
                }
            }
            FPElement { syllables: out }
        };
        self.conjugate(&core_pow, &gamma)
    }

    /// Writes `a = gamma * core * gamma^-1` with `core` cyclically reduced.
    ///
    /// Mutually inverse end syllables are peeled into `gamma`. If the ends
    /// then lie in one factor without cancelling, the first syllable is
    /// rotated to the back and merged: `x1 M xn = x1 (M (xn x1)) x1^-1`.
    pub fn cyclic_split(&self, a: &FPElement) -> (FPElement, FPElement) {
        let mut core: VecDeque<Syllable> = a.syllables.iter().cloned().collect();
        let mut gamma = Vec::new();
        while core.len() >= 2 {
            let first = &core[0];
            let last = &core[core.len() - 1];
            if first.factor != last.factor {
                break;
            }
            let f = &self.factors[first.factor];
            let merged = f.multiply(&last.elem, &first.elem);
            let first = core.pop_front().unwrap();
            if f.is_identity(&merged) {
                core.pop_back();
                push_syllable(&self.factors, &mut gamma, first);
            } else {
                let idx = core.len() - 1;
                core[idx].elem = merged;
                push_syllable(&self.factors, &mut gamma, first);
                break;
            }
        }
        (
            FPElement { syllables: gamma },
            FPElement {
                syllables: core.into_iter().collect(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self, a: &FPElement) -> bool {
        match (a.first(), a.last()) {
            (Some(x), Some(y)) => a.syl() == 1 || x.factor != y.factor,
            _ => true,
        }
    }

    /// All `v` with `v^q = z`.
    ///
    /// With `z = gamma z0 gamma^-1` split cyclically: a trivial core has the
    /// torsion roots of the factors (up to conjugacy) besides the identity; a
    /// single-syllable core has roots inside its factor, conjugated by
    /// `gamma`; a longer core has at most one root, the `q`-th part of its
    /// syllable sequence when that sequence is periodic.
    pub fn qth_root(&self, z: &FPElement, q: u32) -> RootSet<FPElement> {
        assert!(q >= 1, "root degree must be positive");
        let (gamma, core) = self.cyclic_split(z);
        match core.syl() {
            0 => {
                let reps: Vec<FPElement> = self
                    .factors
                    .iter()
                    .enumerate()
                    .flat_map(|(idx, f)| {
                        f.torsion_reps(q)
                            .into_iter()
                            .map(move |x| (idx, x))
                    })
                    .map(|(idx, x)| self.syllable(idx, x))
                    .collect();
                if reps.is_empty() {
                    RootSet::Finite(vec![FPElement::identity()])
                } else {
                    RootSet::Torsion(reps)
                }
            }
            1 => {
                let s = &core.syllables[0];
                self.factors[s.factor]
                    .qth_roots(&s.elem, q)
                    .map(|x| self.conjugate(&self.syllable(s.factor, x), &gamma))
            }
            m => {
                let q = q as usize;
                if m % q != 0 {
                    return RootSet::Finite(Vec::new());
                }
                let period = m / q;
                let periodic = core.syllables[period..]
                    .iter()
                    .zip(core.syllables.iter())
                    .all(|(a, b)| a == b);
                if !periodic {
                    return RootSet::Finite(Vec::new());
                }
                let root = core.prefix(period);
                RootSet::Finite(vec![self.conjugate(&root, &gamma)])
            }
        }
    }

    /// Whether any factor has a nontrivial element of order dividing `q`.
    pub fn has_torsion_roots_of_identity(&self, q: u32) -> bool {
        self.factors.iter().any(|f| f.has_torsion_roots_of_identity(q))
    }

    /// Checks normal-form invariants and that every syllable belongs to its
    /// factor.
    pub fn check(&self, a: &FPElement) -> Result<(), FpError> {
        let bad = |msg: String| Err(FpError::MismatchedAmbient(msg));
        for (pos, s) in a.syllables.iter().enumerate() {
            let Some(f) = self.factors.get(s.factor) else {
                return bad(format!("syllable {pos} names factor {} of {}", s.factor, self.factors.len()));
            };
            let ok = match (f, &s.elem) {
                (Factor::Table(t), FactorElem::Table(x)) => (*x as usize) < t.order(),
                (Factor::Free(ff), FactorElem::Free(w)) => ff.admits(w),
                (Factor::Product(p), FactorElem::Product(x)) => p.check(x).is_ok(),
                _ => false,
            };
            if !ok {
                return bad(format!("syllable {pos} is not an element of {}", f.name()));
            }
            if f.is_identity(&s.elem) {
                return bad(format!("syllable {pos} is trivial"));
            }
            if pos > 0 && a.syllables[pos - 1].factor == s.factor {
                return bad(format!("syllables {} and {pos} share a factor", pos - 1));
            }
        }
        Ok(())
    }

    /// Parses a word in the shared grammar; each token is claimed by the
    /// first factor that recognizes its name.
    pub fn parse(&self, input: &str) -> Result<FPElement, FpError> {
        let mut out = Vec::new();
        for token in tokenize(input)? {
            if token.is_identity() {
                continue;
            }
            let (idx, elem) = self
                .factors
                .iter()
                .enumerate()
                .find_map(|(idx, f)| f.parse_token(token.name).map(|e| (idx, e)))
                .ok_or_else(|| ParseError::at(&token, format!("unknown element {:?}", token.name)))?;
            let elem = self.factors[idx].power(&elem, token.exponent);
            push_syllable(&self.factors, &mut out, Syllable { factor: idx, elem });
        }
        Ok(FPElement { syllables: out })
    }

    pub fn format(&self, a: &FPElement) -> String {
        if a.is_identity() {
            return "1".to_string();
        }
        a.syllables
            .iter()
            .map(|s| self.factors[s.factor].format(&s.elem))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Every normal form with at most `max_syl` syllables drawn from
    /// `alphabet`, by syllable count and then lexicographically by alphabet
    /// position.
    pub fn enumerate(&self, alphabet: &[Syllable], max_syl: usize) -> Vec<FPElement> {
        let mut out = vec![FPElement::identity()];
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_syl {
            let mut next = Vec::new();
            for seq in &layer {
                for (i, s) in alphabet.iter().enumerate() {
                    if let Some(&last) = seq.last() {
                        if alphabet[last].factor == s.factor {
                            continue;
                        }
                    }
                    let mut ext = seq.clone();
                    ext.push(i);
                    next.push(ext);
                }
            }
            out.extend(next.iter().map(|seq| FPElement {
                syllables: seq.iter().map(|&i| alphabet[i].clone()).collect(),
            }));
            layer = next;
        }
        out
    }
}

impl FactorGroup for FreeProduct {
    type Elem = FPElement;

    fn identity(&self) -> FPElement {
        FPElement::identity()
    }

    fn multiply(&self, a: &FPElement, b: &FPElement) -> FPElement {
        FreeProduct::multiply(self, a, b)
    }

    fn invert(&self, a: &FPElement) -> FPElement {
        FreeProduct::invert(self, a)
    }

    fn elements(&self) -> Option<Vec<FPElement>> {
        // Infinite unless at most one factor is nontrivial; only the
        // single-factor case is enumerated.
        match &self.factors[..] {
            [only] => Some(
                only.elements()?
                    .into_iter()
                    .map(|e| self.syllable(0, e))
                    .collect(),
            ),
            _ => None,
        }
    }

    fn parse_token(&self, token: &str) -> Option<FPElement> {
        self.factors
            .iter()
            .enumerate()
            .find_map(|(idx, f)| f.parse_token(token).map(|e| self.syllable(idx, e)))
    }

    fn format(&self, a: &FPElement) -> String {
        FreeProduct::format(self, a)
    }

    fn power(&self, a: &FPElement, n: i64) -> FPElement {
        FreeProduct::power(self, a, n)
    }

    fn qth_roots(&self, z: &FPElement, q: u32) -> RootSet<FPElement> {
        self.qth_root(z, q)
    }
}

/// Shorthand constructors used throughout tests and examples.
impl FreeProduct {
    /// `Z_a * Z_b * ...` from cyclic orders.
    pub fn cyclic(orders: &[u32]) -> Self {
        Self::new(
            orders
                .iter()
                .map(|&n| Factor::Table(TableGroup::cyclic(n)))
                .collect(),
        )
        .unwrap()
    }

    /// Appends a free factor with generators `e1, e2, ...`.
    pub fn with_free(mut self, rank: Option<u32>) -> Self {
        self.factors
            .push(Factor::Free(FreeFactor::new(rank, "e").unwrap()));
        self
    }
}
