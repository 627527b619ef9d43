//! Satisfaction patterns over pairs of matrix entries.
//!
//! For matrices `A = (a_ij)` and `B = (b_kl)` of size `n`, a [`SatMatrix`]
//! records whether a formula holds of `(a_ij, b_kl)`. The pattern that rules
//! out a conjunction of an equation and a co-equation is
//! `holds <=> i != k or (i,j) = (k,l)`. Each row block of such a matrix,
//! negated, is an order witness: true above the diagonal, false on it.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("matrix size must be at least 1")]
    ZeroSize,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix does not match the pattern")]
    PatternMismatch,
    #[error("row {row} out of range 1..={n}")]
    RowOutOfRange { row: usize, n: usize },
    #[error("position ({0},{1}) out of range")]
    PositionOutOfRange(usize, usize),
    #[error("cell ({i},{j}),({k},{l}) given {count} times")]
    CellCount { i: usize, j: usize, k: usize, l: usize, count: usize },
    #[error("invalid matrix JSON: {0}")]
    Json(String),
}

/// A 1-based position `(i, j)` in an `n x n` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairIndex {
    pub i: usize,
    pub j: usize,
}

impl PairIndex {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    /// All positions of an `n x n` matrix in row-major order.
    pub fn all(n: usize) -> impl Iterator<Item = PairIndex> {
        (1..=n).flat_map(move |i| (1..=n).map(move |j| PairIndex { i, j }))
    }
}

/// Boolean cell for every pair of positions `((i,j), (k,l))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl SatMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(PairIndex, PairIndex) -> bool) -> Result<Self, CriterionError> {
        if n == 0 {
            return Err(CriterionError::ZeroSize);
        }
        let cells = PairIndex::all(n)
            .flat_map(|a| PairIndex::all(n).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn offset(&self, p: PairIndex) -> usize {
        assert!(
            (1..=self.n).contains(&p.i) && (1..=self.n).contains(&p.j),
            "position ({},{}) outside 1..={}",
            p.i,
            p.j,
            self.n
        );
        (p.i - 1) * self.n + (p.j - 1)
    }

    pub fn get(&self, a: PairIndex, b: PairIndex) -> bool {
        self.cells[self.offset(a) * self.n * self.n + self.offset(b)]
    }

    pub fn set(&mut self, a: PairIndex, b: PairIndex, value: bool) {
        let idx = self.offset(a) * self.n * self.n + self.offset(b);
        self.cells[idx] = value;
    }

    /// Rows indexed by A-positions, columns by B-positions, both row-major.
    pub fn dense_rows(&self) -> Vec<Vec<bool>> {
        self.cells.chunks(self.n * self.n).map(<[bool]>::to_vec).collect()
    }

    /// Plain-text rendering, one line per A-entry, `1`/`0` per B-entry.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in self.dense_rows() {
            for (idx, cell) in row.iter().enumerate() {
                if idx > 0 && idx % self.n == 0 {
                    out.push(' ');
                }
                out.push(if *cell { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SatMatrixJson::Dense {
            n: self.n,
            rows: self.dense_rows(),
        })
        .expect("plain data serializes")
    }

    /// Accepts the dense form `{"n", "rows"}` or the sparse form
    /// `{"n", "cells": [[[i,j],[k,l],bool], ...]}` listing every cell once.
    pub fn from_json(text: &str) -> Result<Self, CriterionError> {
        let parsed: SatMatrixJson =
            serde_json::from_str(text).map_err(|e| CriterionError::Json(e.to_string()))?;
        match parsed {
            SatMatrixJson::Dense { n, rows } => {
                if n == 0 {
                    return Err(CriterionError::ZeroSize);
                }
                let side = n * n;
                if rows.len() != side {
                    return Err(CriterionError::NotSquare {
                        row: rows.len(),
                        len: rows.len(),
                        expected: side,
                    });
                }
                if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != side) {
                    return Err(CriterionError::NotSquare {
                        row: row + 1,
                        len: r.len(),
                        expected: side,
                    });
                }
                Ok(Self {
                    n,
                    cells: rows.into_iter().flatten().collect(),
                })
            }
            SatMatrixJson::Sparse { n, cells } => {
                let mut m = SatMatrix::from_fn(n, |_, _| false)?;
                let mut seen = vec![0usize; m.cells.len()];
                for ([i, j], [k, l], value) in cells {
                    for (r, c) in [(i, j), (k, l)] {
                        if !(1..=n).contains(&r) || !(1..=n).contains(&c) {
                            return Err(CriterionError::PositionOutOfRange(r, c));
                        }
                    }
                    let (a, b) = (PairIndex::new(i, j), PairIndex::new(k, l));
                    let idx = m.offset(a) * n * n + m.offset(b);
                    seen[idx] += 1;
                    m.cells[idx] = value;
                }
                if let Some(idx) = seen.iter().position(|&c| c != 1) {
                    let (ra, rb) = (idx / (n * n), idx % (n * n));
                    return Err(CriterionError::CellCount {
                        i: ra / n + 1,
                        j: ra % n + 1,
                        k: rb / n + 1,
                        l: rb % n + 1,
                        count: seen[idx],
                    });
                }
                Ok(m)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SatMatrixJson {
    Dense {
        n: usize,
        rows: Vec<Vec<bool>>,
    },
    Sparse {
        n: usize,
        cells: Vec<([usize; 2], [usize; 2], bool)>,
    },
}

/// The target pattern: `i != k or (i,j) = (k,l)`.
pub fn expected_pattern(n: usize) -> Result<SatMatrix, CriterionError> {
    SatMatrix::from_fn(n, |a, b| a.i != b.i || a == b)
}

pub fn matches_pattern(m: &SatMatrix) -> bool {
    expected_pattern(m.n).is_ok_and(|e| e == *m)
}

/// True iff `rows` is square, every entry strictly above the diagonal is
/// true and every diagonal entry is false.
pub fn check_order_witness(rows: &[Vec<bool>]) -> Result<bool, CriterionError> {
    let n = rows.len();
    if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CriterionError::NotSquare {
            row: row + 1,
            len: r.len(),
            expected: n,
        });
    }
    Ok((0..n).all(|i| !rows[i][i] && (i + 1..n).all(|j| rows[i][j])))
}

/// The negated row block `i0`: entry `(j, l)` is `!cell((i0,j),(i0,l))`.
pub fn extract_noneq_row(m: &SatMatrix, i0: usize) -> Result<Vec<Vec<bool>>, CriterionError> {
    if !matches_pattern(m) {
        return Err(CriterionError::PatternMismatch);
    }
    if !(1..=m.n).contains(&i0) {
        return Err(CriterionError::RowOutOfRange { row: i0, n: m.n });
    }
    let slice: Vec<Vec<bool>> = (1..=m.n)
        .map(|j| {
            (1..=m.n)
                .map(|l| !m.get(PairIndex::new(i0, j), PairIndex::new(i0, l)))
                .collect()
        })
        .collect();
    debug_assert!(check_order_witness(&slice).unwrap());
    Ok(slice)
}

/// Text summary of what a verified pattern shows.
pub fn conclusion(m: &SatMatrix, formula: &str) -> String {
    let mut out = String::new();
    if matches_pattern(m) {
        let _ = write!(
            out,
            "pattern verified for n = {n}: {formula}(a_ij, b_kl) holds iff i != k or (i,j) = (k,l); \
             each negated row is an order witness, the configuration that keeps {formula} from being \
             a conjunction of an equation and a co-equation (checked for this n only)",
            n = m.n
        );
    } else {
        let _ = write!(out, "pattern NOT matched for n = {}", m.n);
    }
    out
}
