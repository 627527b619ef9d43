//! Primitivity in free groups by Whitehead's algorithm.
//!
//! A cyclic word is driven down in length by Whitehead automorphisms. When no
//! single move shortens it, the finite orbit at that length is searched
//! breadth-first; by peak reduction a primitive word always has a shortening
//! move somewhere, so exhausting that orbit at length > 1 proves the word is
//! not primitive.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::free_group::{FreeWord, Generator, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhiteheadError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("generator e{index} exceeds rank {rank}")]
    GeneratorOutOfRange { index: u32, rank: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// `g -> g^-1`.
    Inversion(Generator),
    /// Swaps two generators.
    Transposition(Generator, Generator),
    /// Every generator `x` other than the multiplier's is sent to
    /// `m^-1 x m`, `x m`, `m^-1 x` or `x`, according to whether `x^-1`
    /// and/or `x` lie in `affected`.
    Multiplier {
        multiplier: Letter,
        affected: Vec<Letter>,
    },
}

/// A Whitehead automorphism of the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiteheadMove {
    pub kind: MoveKind,
    pub rank: u32,
}

impl WhiteheadMove {
    fn image(&self, g: Generator) -> FreeWord {
        let x = FreeWord::generator(g);
        match &self.kind {
            MoveKind::Inversion(h) if *h == g => x.inverse(),
            MoveKind::Inversion(_) => x,
            MoveKind::Transposition(a, b) if *a == g => FreeWord::generator(*b),
            MoveKind::Transposition(a, b) if *b == g => FreeWord::generator(*a),
            MoveKind::Transposition(..) => x,
            MoveKind::Multiplier {
                multiplier,
                affected,
            } => {
                if multiplier.generator == g {
                    return x;
                }
                let m = FreeWord::from_letters([*multiplier]);
                let pos = Letter::new(g, false);
                let mut out = x;
                if affected.contains(&pos.inv()) {
                    out = m.inverse().multiply(&out);
                }
                if affected.contains(&pos) {
                    out = out.multiply(&m);
                }
                out
            }
        }
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(|g| self.image(g))
    }

    pub fn inverse(&self) -> WhiteheadMove {
        match &self.kind {
            MoveKind::Multiplier {
                multiplier,
                affected,
            } => WhiteheadMove {
                kind: MoveKind::Multiplier {
                    multiplier: multiplier.inv(),
                    affected: affected.clone(),
                },
                rank: self.rank,
            },
            _ => self.clone(),
        }
    }

    fn relabel(&self, map: impl Fn(Generator) -> Generator, rank: u32) -> WhiteheadMove {
        let letter = |l: Letter| Letter::new(map(l.generator), l.inverse);
        let kind = match &self.kind {
            MoveKind::Inversion(g) => MoveKind::Inversion(map(*g)),
            MoveKind::Transposition(a, b) => MoveKind::Transposition(map(*a), map(*b)),
            MoveKind::Multiplier {
                multiplier,
                affected,
            } => MoveKind::Multiplier {
                multiplier: letter(*multiplier),
                affected: affected.iter().map(|&l| letter(l)).collect(),
            },
        };
        WhiteheadMove { kind, rank }
    }
}

impl fmt::Display for WhiteheadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = |l: &Letter| FreeWord::from_letters([*l]).to_string();
        match &self.kind {
            MoveKind::Inversion(g) => write!(f, "invert e{}", g.index()),
            MoveKind::Transposition(a, b) => write!(f, "swap e{} e{}", a.index(), b.index()),
            MoveKind::Multiplier {
                multiplier,
                affected,
            } => {
                let set: Vec<String> = affected.iter().map(letter).collect();
                write!(f, "({}; {{{}}})", letter(multiplier), set.join(", "))
            }
        }
    }
}

fn letter_of(slot: u32) -> Letter {
    Letter::new(Generator::new(slot / 2 + 1).unwrap(), slot % 2 == 1)
}

/// All Whitehead moves of `F_rank`: inversions, the transpositions
/// `(e1 e_k)`, then every nontrivial multiplier move ordered by multiplier
/// and affected-set bitmask.
pub fn enumerate_moves(rank: u32) -> Result<Vec<WhiteheadMove>, WhiteheadError> {
    if rank == 0 {
        return Err(WhiteheadError::ZeroRank);
    }
    let gen = |i: u32| Generator::new(i).unwrap();
    let mut moves: Vec<WhiteheadMove> = (1..=rank)
        .map(|i| WhiteheadMove {
            kind: MoveKind::Inversion(gen(i)),
            rank,
        })
        .collect();
    moves.extend((2..=rank).map(|i| WhiteheadMove {
        kind: MoveKind::Transposition(gen(1), gen(i)),
        rank,
    }));
    for slot in 0..2 * rank {
        let multiplier = letter_of(slot);
        let others: Vec<Letter> = (0..2 * rank)
            .filter(|s| s / 2 != slot / 2)
            .map(letter_of)
            .collect();
        for mask in 1u64..(1u64 << others.len()) {
            let affected = others
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &l)| l)
                .collect();
            moves.push(WhiteheadMove {
                kind: MoveKind::Multiplier {
                    multiplier,
                    affected,
                },
                rank,
            });
        }
    }
    Ok(moves)
}

/// Outcome of a primitivity test. When `primitive`, replaying `trace` on the
/// input leaves a cyclic core of length 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    pub trace: Vec<WhiteheadMove>,
}

impl PrimitivityVerdict {
    fn not_primitive() -> Self {
        Self {
            primitive: false,
            trace: Vec::new(),
        }
    }

    /// Cyclic core of the trace applied to `w`.
    pub fn replay(&self, w: &FreeWord) -> FreeWord {
        replay(w, &self.trace)
    }
}

pub fn replay(w: &FreeWord, trace: &[WhiteheadMove]) -> FreeWord {
    trace
        .iter()
        .fold(w.clone(), |acc, m| m.apply(&acc))
        .cyclic_split()
        .1
}

/// Least rotation of the cyclic core, used as the orbit key.
fn cyclic_key(w: &FreeWord) -> FreeWord {
    let letters: Vec<Letter> = w.cyclic_split().1.letters().collect();
    if letters.is_empty() {
        return FreeWord::identity();
    }
    let n = letters.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|t| letters[(a + t) % n])
                .cmp((0..n).map(|t| letters[(b + t) % n]))
        })
        .unwrap();
    FreeWord::from_letters((0..n).map(|t| letters[(best + t) % n]))
}

pub fn is_primitive(w: &FreeWord, rank: u32) -> Result<PrimitivityVerdict, WhiteheadError> {
    let moves = enumerate_moves(rank)?;
    if let Some(g) = w.generators().into_iter().find(|g| g.index() > rank) {
        return Err(WhiteheadError::GeneratorOutOfRange {
            index: g.index(),
            rank,
        });
    }
    let mut current = cyclic_key(w);
    if current.is_identity() {
        return Ok(PrimitivityVerdict::not_primitive());
    }
    let mut trace = Vec::new();
    loop {
        let length = current.len();
        if length == 1 {
            return Ok(PrimitivityVerdict {
                primitive: true,
                trace,
            });
        }
        if let Some((m, image)) = moves.iter().find_map(|m| {
            let image = cyclic_key(&m.apply(&current));
            (image.len() < length).then_some((m, image))
        }) {
            trace.push(m.clone());
            current = image;
            continue;
        }
        match plateau_search(&current, &moves) {
            Some((path, image)) => {
                trace.extend(path);
                current = image;
            }
            None => return Ok(PrimitivityVerdict::not_primitive()),
        }
    }
}

/// Breadth-first search of the equal-length orbit of `start` for a word that
/// some move shortens. Returns the moves leading to the shorter word.
fn plateau_search(
    start: &FreeWord,
    moves: &[WhiteheadMove],
) -> Option<(Vec<WhiteheadMove>, FreeWord)> {
    let length = start.len();
    let mut visited: HashSet<FreeWord> = HashSet::from([start.clone()]);
    // Parent pointers keep the queue small; paths are rebuilt on success.
    let mut nodes: Vec<(FreeWord, Option<(usize, usize)>)> = vec![(start.clone(), None)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let word = nodes[idx].0.clone();
        for (move_idx, m) in moves.iter().enumerate() {
            let image = cyclic_key(&m.apply(&word));
            if image.len() < length {
                let mut path = vec![m.clone()];
                let mut at = idx;
                while let Some((parent, via)) = nodes[at].1 {
                    path.push(moves[via].clone());
                    at = parent;
                }
                path.reverse();
                return Some((path, image));
            }
            if image.len() == length && visited.insert(image.clone()) {
                nodes.push((image, Some((idx, move_idx))));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    None
}

/// Primitivity in the free group on the generators that occur in `w`,
/// reindexed order-preservingly to `e1..ek`. The returned trace is expressed
/// in the original generators.
pub fn primitivity_in_ambient(w: &FreeWord) -> PrimitivityVerdict {
    let support = w.generators();
    if support.is_empty() {
        return PrimitivityVerdict::not_primitive();
    }
    let rank = support.len() as u32;
    let position = |g: Generator| support.binary_search(&g).unwrap() as u32 + 1;
    let reindexed = FreeWord::from_runs(
        w.runs()
            .iter()
            .map(|&(g, e)| (Generator::new(position(g)).unwrap(), e)),
    );
    let verdict = is_primitive(&reindexed, rank).expect("reindexed word fits its rank");
    PrimitivityVerdict {
        primitive: verdict.primitive,
        trace: verdict
            .trace
            .iter()
            .map(|m| m.relabel(|g| support[g.index() as usize - 1], rank))
            .collect(),
    }
}
