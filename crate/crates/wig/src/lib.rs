//! Canonical forms, Green structure and embeddings for the free regular
//! semigroup weakly generated by a set of idempotents, plus a small toolkit
//! for finite semigroups given by Cayley tables.

pub mod error;
pub mod generators;
pub mod landscape;
pub mod rewrite;
pub mod eggbox;
pub mod embed;
pub mod finite;
pub mod structure;

pub use error::{Error, Result};
pub use generators::{Aliases, Alphabet, Arena, Gen, Side};
pub use landscape::{Compact, CompactRecord, LrCode, Mountain};
pub mod sample;
pub mod cli;
