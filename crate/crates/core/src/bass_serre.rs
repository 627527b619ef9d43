//! The Bass-Serre tree of a two-factor free product `G = G1 * G2`.
//!
//! Vertices are cosets `gG_i`, labelled by the normal form of `g` with any
//! trailing `G_i` syllable removed. There is one edge `gG_1 -- gG_2` per group
//! element, and `G` acts by left multiplication.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::free_product::{FPElement, FpError, FreeProduct};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("the Bass-Serre tree needs exactly two factors, got {0}")]
    NotTwoFactors(usize),
    #[error("side must be 0 or 1, got {0}")]
    BadSide(usize),
    #[error("element is elliptic")]
    Elliptic,
    #[error("the identity fixes every vertex")]
    Identity,
    #[error("unknown side name {0:?}")]
    UnknownSide(String),
    #[error("vertex must look like <word>.<side>, got {0:?}")]
    BadVertex(String),
    #[error(transparent)]
    Element(#[from] FpError),
}

/// The coset `rep * G_{side}`; `rep` never ends in a syllable of `side`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    rep: FPElement,
    side: usize,
}

impl TreeVertex {
    pub fn rep(&self) -> &FPElement {
        &self.rep
    }

    pub fn side(&self) -> usize {
        self.side
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedSet {
    Vertex(TreeVertex),
    /// The identity fixes the whole tree.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionClass {
    Elliptic(FixedSet),
    Hyperbolic { translation: usize },
}

impl ActionClass {
    pub fn translation(&self) -> Option<usize> {
        match self {
            ActionClass::Hyperbolic { translation } => Some(*translation),
            ActionClass::Elliptic(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BassSerreTree<'a> {
    product: &'a FreeProduct,
}

impl<'a> BassSerreTree<'a> {
    pub fn new(product: &'a FreeProduct) -> Result<Self, TreeError> {
        match product.factors().len() {
            2 => Ok(Self { product }),
            n => Err(TreeError::NotTwoFactors(n)),
        }
    }

    pub fn product(&self) -> &'a FreeProduct {
        self.product
    }

    /// The base vertex `G_{side}`.
    pub fn base(&self, side: usize) -> TreeVertex {
        TreeVertex {
            rep: FPElement::identity(),
            side,
        }
    }

    pub fn canonicalize(&self, g: &FPElement, side: usize) -> Result<TreeVertex, TreeError> {
        if side > 1 {
            return Err(TreeError::BadSide(side));
        }
        let mut rep = g.clone();
        if rep.last().is_some_and(|s| s.factor == side) {
            rep = rep.prefix(rep.syl() - 1);
        }
        Ok(TreeVertex { rep, side })
    }

    fn canon(&self, g: &FPElement, side: usize) -> TreeVertex {
        self.canonicalize(g, side).expect("side already validated")
    }

    pub fn act(&self, h: &FPElement, v: &TreeVertex) -> TreeVertex {
        self.canon(&self.product.multiply(h, &v.rep), v.side)
    }

    /// Label of `v` as seen from `u`: the canonical representative of
    /// `rep(u)^-1 rep(v)` for side `side(v)`.
    fn relative(&self, u: &TreeVertex, v: &TreeVertex) -> FPElement {
        let w = self
            .product
            .multiply(&self.product.invert(&u.rep), &v.rep);
        self.canon(&w, v.side).rep
    }

    /// Closed form: with `w` the relative label of `v` from `u`, the geodesic
    /// walks one edge per syllable of `w`, plus one initial edge when the
    /// first syllable of `w` is not in `side(u)`.
    pub fn distance(&self, u: &TreeVertex, v: &TreeVertex) -> usize {
        let w = self.relative(u, v);
        match w.first() {
            None => usize::from(u.side != v.side),
            Some(first) => w.syl() + usize::from(first.factor != u.side),
        }
    }

    pub fn geodesic(&self, u: &TreeVertex, v: &TreeVertex) -> Vec<TreeVertex> {
        let w = self.relative(u, v);
        let mut path = vec![self.base(u.side)];
        if let Some(first) = w.first() {
            if first.factor != u.side {
                path.push(self.base(first.factor));
            }
            for k in 1..=w.syl() {
                let side = match w.syllables().get(k) {
                    Some(next) => next.factor,
                    None => 1 - w.syllables()[k - 1].factor,
                };
                path.push(TreeVertex {
                    rep: w.prefix(k),
                    side,
                });
            }
        } else if u.side != v.side {
            path.push(self.base(v.side));
        }
        path.iter().map(|x| self.act(&u.rep, x)).collect()
    }

    pub fn adjacent(&self, u: &TreeVertex, v: &TreeVertex) -> bool {
        self.distance(u, v) == 1
    }

    pub fn classify(&self, h: &FPElement) -> ActionClass {
        let (gamma, core) = self.product.cyclic_split(h);
        match core.first() {
            None => ActionClass::Elliptic(FixedSet::All),
            Some(s) if core.syl() == 1 => {
                ActionClass::Elliptic(FixedSet::Vertex(self.canon(&gamma, s.factor)))
            }
            Some(_) => ActionClass::Hyperbolic {
                translation: core.syl(),
            },
        }
    }

    /// The unique fixed vertex of a nontrivial elliptic element.
    pub fn fixed_vertex(&self, h: &FPElement) -> Result<TreeVertex, TreeError> {
        match self.classify(h) {
            ActionClass::Elliptic(FixedSet::Vertex(v)) => Ok(v),
            ActionClass::Elliptic(FixedSet::All) => Err(TreeError::Identity),
            ActionClass::Hyperbolic { .. } => Err(TreeError::BadVertex("hyperbolic".into())),
        }
    }

    /// A window of the axis of hyperbolic `h = gamma h0 gamma^-1`: the
    /// geodesics joining `h0^t G_1` for `t` in `-copies..=copies`, translated
    /// by `gamma`. Has `2 * copies * tr(h) + 1` vertices and `h` shifts it by
    /// `tr(h)` positions.
    pub fn axis_segment(&self, h: &FPElement, copies: usize) -> Result<Vec<TreeVertex>, TreeError> {
        let (gamma, core) = self.product.cyclic_split(h);
        if core.syl() < 2 {
            return Err(TreeError::Elliptic);
        }
        let base = self.base(0);
        let c = copies as i64;
        let mut segment = vec![self.act(&self.product.power(&core, -c), &base)];
        for t in -c..c {
            let from = self.act(&self.product.power(&core, t), &base);
            let to = self.act(&self.product.power(&core, t + 1), &base);
            segment.extend(self.geodesic(&from, &to).into_iter().skip(1));
        }
        Ok(segment.iter().map(|v| self.act(&gamma, v)).collect())
    }

    /// Edges shared by the axis windows of `u` and `v` with `radius` copies.
    /// A lower bound for the overlap of the full axes, nondecreasing in
    /// `radius`.
    pub fn axis_overlap_edges(
        &self,
        u: &FPElement,
        v: &FPElement,
        radius: usize,
    ) -> Result<usize, TreeError> {
        let edges = |seg: Vec<TreeVertex>| -> BTreeSet<(TreeVertex, TreeVertex)> {
            seg.windows(2)
                .map(|w| {
                    if w[0] <= w[1] {
                        (w[0].clone(), w[1].clone())
                    } else {
                        (w[1].clone(), w[0].clone())
                    }
                })
                .collect()
        };
        let a = edges(self.axis_segment(u, radius)?);
        let b = edges(self.axis_segment(v, radius)?);
        Ok(a.intersection(&b).count())
    }

    pub fn side_name(&self, side: usize) -> String {
        format!("G{}", side + 1)
    }

    fn parse_side(&self, name: &str) -> Result<usize, TreeError> {
        match name {
            "G1" => return Ok(0),
            "G2" => return Ok(1),
            _ => {}
        }
        self.product
            .factors()
            .iter()
            .position(|f| f.name() == name)
            .ok_or_else(|| TreeError::UnknownSide(name.to_string()))
    }

    /// Parses `<word>.<side>` where side is `G1`, `G2` or a factor name.
    pub fn parse_vertex(&self, text: &str) -> Result<TreeVertex, TreeError> {
        let (word, side) = text
            .trim()
            .rsplit_once('.')
            .ok_or_else(|| TreeError::BadVertex(text.to_string()))?;
        let side = self.parse_side(side.trim())?;
        let g = self.product.parse(word.trim())?;
        self.canonicalize(&g, side)
    }

    pub fn display_vertex<'b>(&'b self, v: &'b TreeVertex) -> impl fmt::Display + 'b {
        VertexDisplay { tree: self, v }
    }
}

struct VertexDisplay<'a, 'b> {
    tree: &'b BassSerreTree<'a>,
    v: &'b TreeVertex,
}

impl fmt::Display for VertexDisplay<'_, '_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} . {}",
            self.tree.product.format(&self.v.rep),
            self.tree.side_name(self.v.side)
        )
    }
}
