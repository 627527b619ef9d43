//! Witness matrices for the formula
//! `phi(x, y) = forall u, v ([u, v] != 1 -> xy != u^5 v^4)` in the free group
//! of countable rank, and the per-cell certificates deciding it.
//!
//! A cell `(a, b)` is *satisfied* when `ab` is primitive: a primitive element
//! is primitive in every subgroup containing it, while `u^5 v^4` is never
//! primitive in the rank-2 group generated by noncommuting `u, v`. It is
//! *falsified* by an explicit noncommuting pair with `u^5 v^4 = ab`. Anything
//! else is reported as undecided.

mod decomposition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criterion::{matches_pattern, PairIndex, SatMatrix};
use crate::free_group::{FreeWord, Letter};
use crate::stallings::verify_basis_pair;
use crate::whitehead::{primitivity_in_ambient, replay, WhiteheadMove};

pub use decomposition::{search_power_decomposition, strip_common_conjugator, Decomposition};

/// Exponents of `u` and `v` in the formula.
pub const U_EXPONENT: i64 = 5;
pub const V_EXPONENT: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("matrix size must be at least 1")]
    ZeroSize,
    #[error("search alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabet entry {0} is the identity")]
    TrivialAlphabetEntry(usize),
    #[error("{} undecided cell(s), first at a{:?} b{:?}", .cells.len(), .cells[0].0, .cells[0].1)]
    Undecided {
        cells: Vec<(PairIndex, PairIndex)>,
        evaluation: Box<Evaluation>,
    },
}

/// `A[i][j] = e_{i+j}^5 e_i` and `B[k][l] = e_k^-1 e_{k+l}^-4`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMatrices {
    n: usize,
    a: Vec<FreeWord>,
    b: Vec<FreeWord>,
}

impl WitnessMatrices {
    pub fn build(n: usize) -> Result<Self, WitnessError> {
        if n == 0 {
            return Err(WitnessError::ZeroSize);
        }
        let mut a = Vec::with_capacity(n * n);
        let mut b = Vec::with_capacity(n * n);
        for p in PairIndex::all(n) {
            let (i, j) = (p.i as u32, p.j as u32);
            a.push(FreeWord::gen_pow(i + j, 5).multiply(&FreeWord::gen_pow(i, 1)));
            b.push(FreeWord::gen_pow(i, -1).multiply(&FreeWord::gen_pow(i + j, -4)));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, p: PairIndex) -> usize {
        (p.i - 1) * self.n + (p.j - 1)
    }

    pub fn a(&self, p: PairIndex) -> &FreeWord {
        &self.a[self.idx(p)]
    }

    pub fn b(&self, p: PairIndex) -> &FreeWord {
        &self.b[self.idx(p)]
    }
}

/// Evidence for one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The product is primitive; the trace reduces it to a single letter.
    Satisfied { trace: Vec<WhiteheadMove> },
    /// `u^5 v^4` equals the product and `u, v` do not commute.
    Falsified { u: FreeWord, v: FreeWord },
    /// Neither certificate was found with words up to `bound` letters.
    Undecided { bound: usize },
}

impl Certificate {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Certificate::Satisfied { .. })
    }

    /// Recomputes the claim against `product`. Undecided never verifies.
    pub fn verify(&self, product: &FreeWord) -> bool {
        match self {
            Certificate::Satisfied { trace } => replay(product, trace).len() == 1,
            Certificate::Falsified { u, v } => {
                u.power(U_EXPONENT).multiply(&v.power(i64::from(V_EXPONENT))) == *product
                    && !u.commutes(v)
            }
            Certificate::Undecided { .. } => false,
        }
    }
}

/// Reduced words of length `len` over `alphabet`, in lexicographic order of
/// alphabet positions, stopping at the first `Some` from `visit`.
fn first_word_of_length<T>(
    alphabet: &[Letter],
    len: usize,
    visit: &mut impl FnMut(&FreeWord) -> Option<T>,
) -> Option<T> {
    fn go<T>(
        alphabet: &[Letter],
        prefix: &mut Vec<Letter>,
        remaining: usize,
        visit: &mut impl FnMut(&FreeWord) -> Option<T>,
    ) -> Option<T> {
        if remaining == 0 {
            return visit(&FreeWord::from_letters(prefix.iter().copied()));
        }
        for &letter in alphabet {
            if prefix.last().is_some_and(|&last| last == letter.inv()) {
                continue;
            }
            prefix.push(letter);
            let found = go(alphabet, prefix, remaining - 1, visit);
            prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    go(alphabet, &mut Vec::with_capacity(len), len, visit)
}

/// Decides the formula on `(a, b)`.
///
/// Primitivity of `ab` gives `Satisfied`. Otherwise every reduced `u` of
/// length `1..=search_bound` over the generators of `ab` is tried, in order
/// of length and then alphabet position, with `v` the unique fourth root of
/// `u^-5 ab` when it exists.
pub fn decide_phi_ne(a: &FreeWord, b: &FreeWord, search_bound: usize) -> Certificate {
    let w = a.multiply(b);
    let verdict = primitivity_in_ambient(&w);
    if verdict.primitive {
        return Certificate::Satisfied {
            trace: verdict.trace,
        };
    }
    let alphabet: Vec<Letter> = w
        .generators()
        .into_iter()
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    for len in 1..=search_bound {
        let found = first_word_of_length(&alphabet, len, &mut |u| {
            let z = u.power(-U_EXPONENT).multiply(&w);
            let v = z.qth_root(V_EXPONENT)?;
            (!u.commutes(&v)).then(|| (u.clone(), v))
        });
        if let Some((u, v)) = found {
            return Certificate::Falsified { u, v };
        }
    }
    Certificate::Undecided {
        bound: search_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellResult {
    pub a: PairIndex,
    pub b: PairIndex,
    pub product: FreeWord,
    pub certificate: Certificate,
    /// Basis-extension check, run where the target pattern is true.
    pub basis_ok: Option<bool>,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub matrices: WitnessMatrices,
    pub sat: SatMatrix,
    pub cells: Vec<CellResult>,
}

impl Evaluation {
    pub fn pattern_ok(&self) -> bool {
        matches_pattern(&self.sat)
    }

    pub fn undecided(&self) -> Vec<(PairIndex, PairIndex)> {
        self.cells
            .iter()
            .filter(|c| matches!(c.certificate, Certificate::Undecided { .. }))
            .map(|c| (c.a, c.b))
            .collect()
    }

    pub fn report(&self) -> WitnessReport {
        WitnessReport {
            n: self.matrices.n(),
            pattern_ok: self.pattern_ok(),
            cells: self.cells.iter().map(CellReport::from_result).collect(),
        }
    }
}

/// Starts a wall-clock timer; reads 0 where the platform has no clock
/// (`wasm32-unknown-unknown` panics on `Instant::now`).
#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
fn start_timer() -> impl FnOnce() -> u64 {
    let start = std::time::Instant::now();
    move || start.elapsed().as_micros() as u64
}

#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
fn start_timer() -> impl FnOnce() -> u64 {
    || 0
}

fn evaluate_cell(m: &WitnessMatrices, a: PairIndex, b: PairIndex, search_bound: Option<usize>) -> CellResult {
    let elapsed = start_timer();
    let (x, y) = (m.a(a), m.b(b));
    let product = x.multiply(y);
    let bound = search_bound.unwrap_or_else(|| product.len());
    let certificate = decide_phi_ne(x, y, bound);
    let basis_ok = (a.i != b.i || a == b).then(|| {
        verify_basis_pair(x, y, a.i as u32, a.j as u32, b.i as u32, b.j as u32)
            .expect("matrix positions are positive")
    });
    CellResult {
        a,
        b,
        product,
        certificate,
        basis_ok,
        micros: elapsed(),
    }
}

/// Certifies every cell of the size-`n` matrices. `search_bound` defaults to
/// the letter length of each product; `jobs > 1` spreads cells over threads
/// without changing the result.
pub fn evaluate_matrix(
    n: usize,
    search_bound: Option<usize>,
    jobs: usize,
) -> Result<Evaluation, WitnessError> {
    let matrices = WitnessMatrices::build(n)?;
    let pairs: Vec<(PairIndex, PairIndex)> = PairIndex::all(n)
        .flat_map(|a| PairIndex::all(n).map(move |b| (a, b)))
        .collect();
    let jobs = jobs.clamp(1, pairs.len());
    let cells: Vec<CellResult> = if jobs == 1 {
        pairs
            .iter()
            .map(|&(a, b)| evaluate_cell(&matrices, a, b, search_bound))
            .collect()
    } else {
        let chunk = pairs.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = pairs
                .chunks(chunk)
                .map(|part| {
                    let matrices = &matrices;
                    scope.spawn(move || {
                        part.iter()
                            .map(|&(a, b)| evaluate_cell(matrices, a, b, search_bound))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("cell worker panicked"))
                .collect()
        })
    };
    let mut sat = SatMatrix::from_fn(n, |_, _| false).expect("n >= 1");
    for c in &cells {
        sat.set(c.a, c.b, c.certificate.is_satisfied());
    }
    let evaluation = Evaluation {
        matrices,
        sat,
        cells,
    };
    let undecided = evaluation.undecided();
    if undecided.is_empty() {
        Ok(evaluation)
    } else {
        Err(WitnessError::Undecided {
            cells: undecided,
            evaluation: Box::new(evaluation),
        })
    }
}

/// JSON report of an evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessReport {
    pub n: usize,
    pub pattern_ok: bool,
    pub cells: Vec<CellReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellReport {
    pub a: [usize; 2],
    pub b: [usize; 2],
    pub sat: bool,
    pub certificate: CertificateReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_ok: Option<bool>,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CertificateReport {
    Satisfied { trace_len: usize },
    Falsified { u: FreeWord, v: FreeWord },
    Undecided {},
}

impl CellReport {
    fn from_result(c: &CellResult) -> Self {
        let certificate = match &c.certificate {
            Certificate::Satisfied { trace } => CertificateReport::Satisfied {
                trace_len: trace.len(),
            },
            Certificate::Falsified { u, v } => CertificateReport::Falsified {
                u: u.clone(),
                v: v.clone(),
            },
            Certificate::Undecided { .. } => CertificateReport::Undecided {},
        };
        Self {
            a: [c.a.i, c.a.j],
            b: [c.b.i, c.b.j],
            sat: c.certificate.is_satisfied(),
            certificate,
            basis_ok: c.basis_ok,
            micros: c.micros,
        }
    }
}
