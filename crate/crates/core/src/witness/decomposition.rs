//! Bounded search for `target = u^p v^q` with `[u, v] != 1` in a free
//! product.

use crate::free_group::FreeWord;
use crate::free_product::{FPElement, FactorElem, FreeProduct, RootSet, Syllable};

use super::WitnessError;

/// Removes the longest common outer conjugator: while both normal forms
/// begin with the same atom `c` and end with `c^-1`, peel it off. An atom is
/// a whole syllable from a finite or nested factor, or a single letter of a
/// free-factor syllable. Returns `(u', v', gamma)` with
/// `u = gamma u' gamma^-1` and likewise for `v`.
pub fn strip_common_conjugator(
    product: &FreeProduct,
    u: &FPElement,
    v: &FPElement,
) -> (FPElement, FPElement, FPElement) {
    let mut u = u.clone();
    let mut v = v.clone();
    let mut gamma = FPElement::identity();
    while let Some(c) = outer_atom(product, &u) {
        if outer_atom(product, &v).as_ref() != Some(&c) {
            break;
        }
        let c_inv = product.invert(&c);
        u = product.multiply(&product.multiply(&c_inv, &u), &c);
        v = product.multiply(&product.multiply(&c_inv, &v), &c);
        gamma = product.multiply(&gamma, &c);
    }
    (u, v, gamma)
}

fn first_atom(product: &FreeProduct, s: &Syllable) -> FPElement {
    match &s.elem {
        FactorElem::Free(w) => product.syllable(s.factor, FactorElem::Free(prefix_letter(w, true))),
        other => product.syllable(s.factor, other.clone()),
    }
}

fn last_atom(product: &FreeProduct, s: &Syllable) -> FPElement {
    match &s.elem {
        FactorElem::Free(w) => product.syllable(s.factor, FactorElem::Free(prefix_letter(w, false))),
        other => product.syllable(s.factor, other.clone()),
    }
}

fn prefix_letter(w: &FreeWord, front: bool) -> FreeWord {
    let letter = if front { w.first_letter() } else { w.last_letter() };
    letter.map_or_else(FreeWord::identity, |l| FreeWord::from_letters([l]))
}

/// `c` when `x = c x' c^-1` with `x'` strictly shorter, read literally off
/// the normal form.
fn outer_atom(product: &FreeProduct, x: &FPElement) -> Option<FPElement> {
    let first = x.first()?;
    let last = x.last()?;
    let stripping_shrinks = match (x.syl(), &first.elem) {
        (1, FactorElem::Free(w)) => w.len() >= 3,
        (1, _) => false,
        (n, _) => n >= 3,
    };
    if !stripping_shrinks {
        return None;
    }
    let c = first_atom(product, first);
    (product.invert(&c) == last_atom(product, last)).then_some(c)
}

/// A verified solution of `target = u^p v^q` with `u, v` not commuting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub u: FPElement,
    pub v: FPElement,
}

impl Decomposition {
    pub fn verify(&self, product: &FreeProduct, target: &FPElement, p: i64, q: u32) -> bool {
        let lhs = product.multiply(
            &product.power(&self.u, p),
            &product.power(&self.v, i64::from(q)),
        );
        lhs == *target && !product.commutes(&self.u, &self.v)
    }
}

/// Looks for `u, v` with `u^p v^q = target` and `[u, v] != 1`.
///
/// `u` runs over normal forms with at most `syl_bound` syllables from
/// `alphabet`, by syllable count then alphabet position. For each `u` every
/// `v` is considered: `v` ranges over all `q`-th roots of `u^-p target`. When
/// that root set is infinite (torsion roots of the identity) the listed
/// representatives and their conjugates by alphabet syllables are tried,
/// which suffices because a nontrivial `u` fails to commute with some such
/// conjugate. `None` therefore certifies that no solution has `u` within the
/// bound.
pub fn search_power_decomposition(
    product: &FreeProduct,
    target: &FPElement,
    p: i64,
    q: u32,
    syl_bound: usize,
    alphabet: &[Syllable],
) -> Result<Option<Decomposition>, WitnessError> {
    if alphabet.is_empty() {
        return Err(WitnessError::EmptyAlphabet);
    }
    let letters: Vec<FPElement> = alphabet
        .iter()
        .map(|s| product.syllable(s.factor, s.elem.clone()))
        .collect();
    if let Some(idx) = letters.iter().position(FPElement::is_identity) {
        return Err(WitnessError::TrivialAlphabetEntry(idx));
    }
    for u in product.enumerate(alphabet, syl_bound) {
        if u.is_identity() {
            continue;
        }
        let z = product.multiply(&product.power(&u, -p), target);
        let candidates: Vec<FPElement> = match product.qth_root(&z, q) {
            RootSet::Finite(roots) => roots,
            RootSet::Torsion(reps) => {
                let mut all = reps.clone();
                for x in &reps {
                    all.extend(letters.iter().map(|c| product.conjugate(x, c)));
                }
                all
            }
        };
        if let Some(v) = candidates.into_iter().find(|v| !product.commutes(&u, v)) {
            return Ok(Some(Decomposition { u, v }));
        }
    }
    Ok(None)
}
