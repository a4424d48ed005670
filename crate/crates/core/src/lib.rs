//! Reeb graphs of simple Morse functions on the projective plane.
//!
//! Such a graph is a tree with exactly one degree-2 vertex (the saddle whose
//! neighborhood is a Möbius band) and all other vertices of degree 1 or 3.
//! Cutting at the degree-2 vertex leaves two rooted oriented trees, so the
//! crate is organized around [`RootedReebTree`]:
//!
//! * [`tree`]: the data model and flattening into [`ExplicitGraph`]
//! * [`canonical`]: canonical strings, parsing and isomorphism
//! * [`enumerate`]: exhaustive generation of every tree or graph of a size
//! * [`count`]: the closed recurrences over big integers
//! * [`validate`]: structural checks with per-condition diagnostics
//! * [`io`]: the `reeb v1` edge-list format and DOT export

use std::fmt;

use serde::Serialize;

pub mod canonical;
pub mod count;
pub mod enumerate;
pub mod io;
pub mod tree;
pub mod validate;

pub use canonical::{
    encode_full, encode_rooted, full_from_explicit, is_isomorphic, parse_full, parse_rooted,
    CanonString, InvalidStructure, ParseError,
};
pub use count::{BigCount, Counter};
pub use enumerate::{enum_full, enum_rooted, EnumerateError, Enumerator, FullStream};
pub use tree::{Attachment, ExplicitGraph, FullReebGraph, GraphError, RootedReebTree};
pub use validate::{check, ConditionId, Mutation, ValidationReport};

/// Which family of objects is being counted or enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Rooted oriented trees, counted by `K_k`.
    Rooted,
    /// Full graphs on RP2, counted by `N_k`.
    Full,
}

impl Kind {
    /// Smallest saddle count with a non-empty family.
    pub fn min_saddles(self) -> usize {
        match self {
            Kind::Rooted => 0,
            Kind::Full => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Rooted => "rooted",
            Kind::Full => "full",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
