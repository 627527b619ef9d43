//! Computational group theory for nonequationality witnesses: reduced words
//! in free groups, Whitehead primitivity, Stallings foldings, free products
//! with their Bass-Serre trees, the satisfaction-pattern criterion, and the
//! harness that certifies the witness matrices.

pub mod free_group;
pub mod bass_serre;
pub mod criterion;
pub mod free_product;
pub mod parse;
pub mod stallings;
pub mod whitehead;
pub mod witness;

pub use free_group::{FreeWord, Generator, Letter};
pub use parse::ParseError;
