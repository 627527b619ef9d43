//! WebAssembly bindings for the single-page demo in `www/`.
//!
//! Every export takes plain strings or numbers and returns a JSON string:
//! either the result object or `{"error": "..."}`. Keeping errors in-band
//! means the functions also run (and are tested) natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use noneq_core::bass_serre::{ActionClass, BassSerreTree, FixedSet};
use noneq_core::free_product::FreeProduct;
use noneq_core::whitehead::is_primitive;
use noneq_core::witness::{evaluate_matrix, Certificate, WitnessError};
use noneq_core::FreeWord;

/// Largest matrix size the page will request; n = 4 already has 256 cells.
pub const MAX_N: usize = 4;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Certifies the witness matrices of size `n` and returns the satisfaction
/// grid with one certificate summary per cell.
#[wasm_bindgen]
pub fn witness_matrix(n: usize) -> String {
    if !(1..=MAX_N).contains(&n) {
        return error(format!("n must be between 1 and {MAX_N}"));
    }
    let evaluation = match evaluate_matrix(n, None, 1) {
        Ok(e) => e,
        Err(WitnessError::Undecided { evaluation, .. }) => *evaluation,
        Err(e) => return error(e),
    };
    let cells: Vec<Value> = evaluation
        .cells
        .iter()
        .map(|c| {
            let certificate = match &c.certificate {
                Certificate::Satisfied { trace } => {
                    format!("{} is primitive ({} moves)", c.product, trace.len())
                }
                Certificate::Falsified { u, v } => {
                    format!("{} = ({u})^5 ({v})^4", c.product)
                }
                Certificate::Undecided { bound } => format!("undecided up to length {bound}"),
            };
            json!({
                "a": [c.a.i, c.a.j],
                "b": [c.b.i, c.b.j],
                "sat": c.certificate.is_satisfied(),
                "x": evaluation.matrices.a(c.a).to_string(),
                "y": evaluation.matrices.b(c.b).to_string(),
                "certificate": certificate,
            })
        })
        .collect();
    json!({
        "n": n,
        "pattern_ok": evaluation.pattern_ok(),
        "rows": evaluation.sat.dense_rows(),
        "cells": cells,
    })
    .to_string()
}

/// Whitehead's algorithm on `word` in the free group of rank `rank`.
#[wasm_bindgen]
pub fn primitivity(word: &str, rank: u32) -> String {
    let w: FreeWord = match word.parse() {
        Ok(w) => w,
        Err(e) => return error(e),
    };
    match is_primitive(&w, rank) {
        Ok(v) => json!({
            "word": w.to_string(),
            "primitive": v.primitive,
            "trace": v.trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "image": v.primitive.then(|| v.replay(&w).to_string()),
        })
        .to_string(),
        Err(e) => error(e),
    }
}

fn z2z3() -> FreeProduct {
    FreeProduct::cyclic(&[2, 3])
}

/// Distance and geodesic between two vertices of the `Z2 * Z3` tree,
/// written `<word>.G1` or `<word>.G2`.
#[wasm_bindgen]
pub fn tree_geodesic(from: &str, to: &str) -> String {
    let p = z2z3();
    let t = BassSerreTree::new(&p).expect("two factors");
    let (u, v) = match (t.parse_vertex(from), t.parse_vertex(to)) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(e), _) | (_, Err(e)) => return error(e),
    };
    let path: Vec<String> = t
        .geodesic(&u, &v)
        .iter()
        .map(|x| t.display_vertex(x).to_string())
        .collect();
    json!({ "distance": t.distance(&u, &v), "path": path }).to_string()
}

/// How an element of `Z2 * Z3` acts on the tree; hyperbolic elements also
/// get an axis window of `copies` periods either side.
#[wasm_bindgen]
pub fn tree_element(word: &str, copies: usize) -> String {
    let p = z2z3();
    let t = BassSerreTree::new(&p).expect("two factors");
    let h = match p.parse(word) {
        Ok(h) => h,
        Err(e) => return error(e),
    };
    match t.classify(&h) {
        ActionClass::Elliptic(FixedSet::All) => json!({ "kind": "identity" }).to_string(),
        ActionClass::Elliptic(FixedSet::Vertex(v)) => {
            json!({ "kind": "elliptic", "fixed": t.display_vertex(&v).to_string() }).to_string()
        }
        ActionClass::Hyperbolic { translation } => {
            let axis: Vec<String> = t
                .axis_segment(&h, copies.clamp(1, 4))
                .expect("hyperbolic")
                .iter()
                .map(|x| t.display_vertex(x).to_string())
                .collect();
            json!({ "kind": "hyperbolic", "translation": translation, "axis": axis }).to_string()
        }
    }
}
