//! Canonical text encodings and isomorphism.
//!
//! Grammar (bytes, ASCII):
//!
//! ```text
//! rooted := '*'
//!         | '(' rooted '^' rooted '^' ')'    -- both subtrees attached upwards
//!         | '(' rooted '^' rooted 'v' ')'    -- first upwards, second downwards
//! full   := '[' rooted '|' rooted ']'        -- lower | upper
//! ```
//!
//! In the up-up production the first subtree precedes the second in shortlex
//! order (fewer bytes first, then bytewise). Two trees or graphs are
//! isomorphic exactly when their encodings are byte-identical.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{ExplicitGraph, FullReebGraph, RootedReebTree};
use crate::validate::{self, ValidationReport};

/// Canonical encoding of a rooted tree or a full graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonString(String);

impl CanonString {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for CanonString {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub fn encode_rooted(t: &RootedReebTree) -> CanonString {
    CanonString(t.to_string())
}

pub fn encode_full(g: &FullReebGraph) -> CanonString {
    CanonString(g.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(b) if b.is_ascii_graphic() => format!("found '{}'", b as char),
            Some(b) => format!("found byte 0x{b:02x}"),
            None => "found end of input".to_string(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}', {}", byte as char, self.describe())))
        }
    }

    fn rooted(&mut self) -> Result<RootedReebTree, ParseError> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(RootedReebTree::leaf())
            }
            Some(b'(') => {
                self.pos += 1;
                let first = self.rooted()?;
                self.expect(b'^')?;
                let second = self.rooted()?;
                let tree = match self.peek() {
                    Some(b'^') => RootedReebTree::attach_up_up(first, second),
                    Some(b'v') => RootedReebTree::attach_mixed(first, second),
                    _ => {
                        return Err(self.error(format!("expected '^' or 'v', {}", self.describe())))
                    }
                };
                self.pos += 1;
                self.expect(b')')?;
                Ok(tree)
            }
            _ => Err(self.error(format!("expected '*' or '(', {}", self.describe()))),
        }
    }

    fn full(&mut self) -> Result<FullReebGraph, ParseError> {
        self.expect(b'[')?;
        let lower = self.rooted()?;
        self.expect(b'|')?;
        let upper = self.rooted()?;
        self.expect(b']')?;
        Ok(FullReebGraph::glue(lower, upper))
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.input.len() {
            Ok(())
        } else {
            Err(self.error(format!("trailing input, {}", self.describe())))
        }
    }
}

/// Parses a rooted encoding. Up-up pairs given out of canonical order are
/// accepted and normalized.
pub fn parse_rooted(s: &str) -> Result<RootedReebTree, ParseError> {
    let mut p = Parser::new(s);
    let t = p.rooted()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_full(s: &str) -> Result<FullReebGraph, ParseError> {
    let mut p = Parser::new(s);
    let g = p.full()?;
    p.finish()?;
    Ok(g)
}

impl FromStr for RootedReebTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rooted(s)
    }
}

impl FromStr for FullReebGraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_full(s)
    }
}

#[derive(Debug, Clone, Error)]
#[error("not a Reeb graph of a simple Morse function on RP2:\n{0}")]
pub struct InvalidStructure(pub ValidationReport);

/// Recovers the full graph from a flat one by splitting at its degree-2
/// vertex.
pub fn full_from_explicit(g: &ExplicitGraph) -> Result<FullReebGraph, InvalidStructure> {
    let report = validate::check(g);
    if !report.is_valid() {
        return Err(InvalidStructure(report));
    }

    let mut adjacency = vec![Vec::new(); g.vertex_count()];
    for &(u, v) in g.edges() {
        adjacency[u].push((v, Direction::Out));
        adjacency[v].push((u, Direction::In));
    }
    let middle = adjacency
        .iter()
        .position(|a| a.len() == 2)
        .expect("validated graph has a degree-2 vertex");
    let (mut lower_root, mut upper_root) = (None, None);
    for &(w, dir) in &adjacency[middle] {
        match dir {
            Direction::In => lower_root = Some(w),
            Direction::Out => upper_root = Some(w),
        }
    }
    let lower = build(&adjacency, lower_root.expect("validated"), middle, true);
    let upper = build(&adjacency, upper_root.expect("validated"), middle, false);
    Ok(FullReebGraph::glue(lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    In,
    Out,
}

/// Builds the subtree at `v` seen from `parent`. With `flip` set, edge
/// directions are read reversed so that the result is in normal form.
fn build(
    adjacency: &[Vec<(usize, Direction)>],
    v: usize,
    parent: usize,
    flip: bool,
) -> RootedReebTree {
    let mut ups = Vec::with_capacity(2);
    let mut downs = Vec::with_capacity(2);
    for &(w, dir) in &adjacency[v] {
        if w == parent {
            continue;
        }
        if (dir == Direction::Out) != flip {
            ups.push(w);
        } else {
            downs.push(w);
        }
    }
    match (ups.as_slice(), downs.as_slice()) {
        ([], []) => RootedReebTree::leaf(),
        (&[a, b], []) => {
            RootedReebTree::attach_up_up(build(adjacency, a, v, flip), build(adjacency, b, v, flip))
        }
        (&[up], &[down]) => RootedReebTree::attach_mixed(
            build(adjacency, up, v, flip),
            build(adjacency, down, v, !flip),
        ),
        _ => unreachable!("validated graph has no internal sinks or sources"),
    }
}

/// Decides whether two flat graphs are isomorphic as oriented graphs. Both
/// must be valid Reeb graphs.
pub fn is_isomorphic(g1: &ExplicitGraph, g2: &ExplicitGraph) -> Result<bool, InvalidStructure> {
    let a = full_from_explicit(g1)?;
    let b = full_from_explicit(g2)?;
    Ok(encode_full(&a) == encode_full(&b))
}

/// Structural check of the grammar's balance properties, used by tests and
/// by the CLI when reading canonical strings back.
pub fn is_balanced(s: &str) -> bool {
    let count = |c: char| s.chars().filter(|&x| x == c).count();
    let opens = count('(');
    let bars = count('|');
    count(')') == opens && bars <= 1 && count('^') + count('v') == 2 * opens
}
