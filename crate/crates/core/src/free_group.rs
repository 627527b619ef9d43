//! Reduced words in the free group on generators `e1, e2, ...`.
//!
//! Words are stored run-length encoded: `e2^5 e1` is the two runs
//! `[(e2, 5), (e1, 1)]`. Every constructor returns a fully reduced word, so
//! structural equality is group equality.

use std::fmt;
use std::num::NonZeroU32;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::parse::{tokenize, ParseError};

/// The basis element `e_index` of the free group of countable rank.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Generator(NonZeroU32);

impl Generator {
    /// Returns `None` for index 0.
    pub fn new(index: u32) -> Option<Self> {
        NonZeroU32::new(index).map(Self)
    }

    pub fn index(self) -> u32 {
        self.0.get()
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A reduced word: no zero exponents and no two adjacent runs on the same
/// generator. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FreeWord {
    runs: Vec<(Generator, i64)>,
}

fn push_run(runs: &mut Vec<(Generator, i64)>, generator: Generator, exponent: i64) {
    if exponent == 0 {
        return;
    }
    match runs.last_mut() {
        Some((g, e)) if *g == generator => {
            *e += exponent;
            if *e == 0 {
                runs.pop();
            }
        }
        _ => runs.push((generator, exponent)),
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self { runs: vec![(g, 1)] }
    }

    /// `e_index^exponent`. Panics on index 0.
    pub fn gen_pow(index: u32, exponent: i64) -> Self {
        let g = Generator::new(index).expect("generator index must be positive");
        Self::from_runs([(g, exponent)])
    }

    /// Builds the reduced form of an arbitrary run sequence.
    pub fn from_runs(runs: impl IntoIterator<Item = (Generator, i64)>) -> Self {
        let mut out = Vec::new();
        for (g, e) in runs {
            push_run(&mut out, g, e);
        }
        Self { runs: out }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self::from_runs(letters.into_iter().map(|l| (l.generator, l.sign())))
    }

    pub fn runs(&self) -> &[(Generator, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        })
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.runs.first().map(|&(g, e)| Letter::new(g, e < 0))
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.runs.last().map(|&(g, e)| Letter::new(g, e < 0))
    }

    /// Distinct generators occurring in the word, ascending.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<_> = self.runs.iter().map(|&(g, _)| g).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    pub fn max_index(&self) -> u32 {
        self.runs.iter().map(|(g, _)| g.index()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut runs = Vec::with_capacity(self.runs.len() + other.runs.len());
        runs.extend_from_slice(&self.runs);
        for &(g, e) in &other.runs {
            push_run(&mut runs, g, e);
        }
        FreeWord { runs }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `self^n`, computed on the cyclic core so the conjugator is written once.
    pub fn power(&self, n: i64) -> FreeWord {
        if n == 0 || self.is_identity() {
            return FreeWord::identity();
        }
        let (conjugator, core) = self.cyclic_split();
        let base = if n < 0 { core.inverse() } else { core };
        let core_pow = if let [(g, e)] = base.runs[..] {
            FreeWord::from_runs([(g, e * n.abs())])
        } else {
            let mut runs = Vec::with_capacity(base.runs.len() * n.unsigned_abs() as usize);
            for _ in 0..n.abs() {
                for &(g, e) in &base.runs {
                    push_run(&mut runs, g, e);
                }
            }
            FreeWord { runs }
        };
        conjugator
            .multiply(&core_pow)
            .multiply(&conjugator.inverse())
    }

    pub fn conjugate_by(&self, g: &FreeWord) -> FreeWord {
        g.multiply(self).multiply(&g.inverse())
    }

    pub fn commutes(&self, other: &FreeWord) -> bool {
        self.multiply(other) == other.multiply(self)
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core` cyclically
    /// reduced and `conjugator` as short as possible.
    pub fn cyclic_split(&self) -> (FreeWord, FreeWord) {
        let mut core: std::collections::VecDeque<(Generator, i64)> =
            self.runs.iter().copied().collect();
        let mut conjugator = Vec::new();
        while core.len() >= 3 {
            let (g_first, e_first) = core[0];
            let (g_last, e_last) = core[core.len() - 1];
            if g_first != g_last || (e_first > 0) == (e_last > 0) {
                break;
            }
            let amount = e_first.abs().min(e_last.abs());
            let step = e_first.signum() * amount;
            push_run(&mut conjugator, g_first, step);
            let last = core.len() - 1;
            core[0].1 -= step;
            core[last].1 += step;
            if core[last].1 == 0 {
                core.pop_back();
            }
            if core[0].1 == 0 {
                core.pop_front();
            }
        }
        (
            FreeWord { runs: conjugator },
            FreeWord {
                runs: core.into_iter().collect(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first_letter(), self.last_letter()) {
            (Some(a), Some(b)) => self.runs.len() == 1 || a != b.inv(),
            _ => true,
        }
    }

    /// Length of the cyclic core.
    pub fn cyclic_len(&self) -> usize {
        self.cyclic_split().1.len()
    }

    /// The unique `v` with `v^q = self`, if any. Roots in a free group are
    /// unique, so this is the whole root set.
    pub fn qth_root(&self, q: u32) -> Option<FreeWord> {
        assert!(q >= 1, "root degree must be positive");
        if self.is_identity() {
            return Some(FreeWord::identity());
        }
        let (conjugator, core) = self.cyclic_split();
        let root_core = if let [(g, e)] = core.runs[..] {
            if e % i64::from(q) != 0 {
                return None;
            }
            FreeWord::from_runs([(g, e / i64::from(q))])
        } else {
            let letters: Vec<Letter> = core.letters().collect();
            let q = q as usize;
            if !letters.len().is_multiple_of(q) {
                return None;
            }
            let period = letters.len() / q;
            if letters[period..]
                .iter()
                .zip(letters.iter())
                .any(|(a, b)| a != b)
            {
                return None;
            }
            FreeWord::from_letters(letters[..period].iter().copied())
        };
        Some(root_core.conjugate_by(&conjugator))
    }

    /// Applies a map on generators, extended to a homomorphism.
    pub fn substitute(&self, image: impl Fn(Generator) -> FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for &(g, e) in &self.runs {
            out = out.multiply(&image(g).power(e));
        }
        out
    }

    /// Parses a word whose generators are written `<prefix><index>`.
    pub fn parse_with_prefix(input: &str, prefix: &str) -> Result<FreeWord, ParseError> {
        let mut runs = Vec::new();
        for token in tokenize(input)? {
            if token.is_identity() {
                continue;
            }
            let g = parse_generator(token.name, prefix)
                .ok_or_else(|| ParseError::at(&token, format!("unknown generator {:?}", token.name)))?;
            push_run(&mut runs, g, token.exponent);
        }
        Ok(FreeWord { runs })
    }

    pub fn display_with_prefix<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        WordDisplay { word: self, prefix }
    }
}

/// Recognizes `<prefix><positive integer>`.
pub fn parse_generator(name: &str, prefix: &str) -> Option<Generator> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok().and_then(Generator::new)
}

struct WordDisplay<'a> {
    word: &'a FreeWord,
    prefix: &'a str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (idx, &(g, e)) in self.word.runs.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", self.prefix, g.index())?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with_prefix("e").fmt(f)
    }
}

impl FromStr for FreeWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FreeWord::parse_with_prefix(s, "e")
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        self.multiply(rhs)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
