//! Recursive data model for rooted and full Reeb graphs on the projective plane.
//!
//! A [`RootedReebTree`] is what hangs off one side of a saddle: either a single
//! extremum or another saddle with two subtrees attached to it. Every tree is
//! stored in normal form, with its root half-edge directed *into* the tree
//! (the function increases away from the root stub). A subtree attached by a
//! downward edge is still stored in normal form; its orientation is reversed
//! only when the tree is flattened into an [`ExplicitGraph`].
//!
//! A [`FullReebGraph`] is an ordered pair of rooted trees glued at the unique
//! degree-2 saddle: `lower` hangs below it, `upper` sits above it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Rooted oriented Reeb tree in normal form.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub enum RootedReebTree {
    /// Zero saddles: a single extremum carrying the root half-edge.
    #[default]
    Leaf,
    /// A saddle nearest the root, with its two attached subtrees.
    Saddle(Arc<SaddleNode>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaddleNode {
    attachment: Attachment,
    saddles: usize,
}

/// How the two subtrees of a saddle are attached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Attachment {
    /// Both subtrees leave the saddle upwards. The pair is unordered and is
    /// stored with `first <= second` in canonical order.
    UpUp(RootedReebTree, RootedReebTree),
    /// `up` leaves the saddle upwards, `down` enters it from below.
    Mixed {
        up: RootedReebTree,
        down: RootedReebTree,
    },
}

impl SaddleNode {
    pub fn attachment(&self) -> &Attachment {
        &self.attachment
    }
}

impl RootedReebTree {
    pub fn leaf() -> Self {
        RootedReebTree::Leaf
    }

    /// Attaches `a` and `b` by upward edges below a new saddle. Argument
    /// order does not matter.
    pub fn attach_up_up(a: RootedReebTree, b: RootedReebTree) -> Self {
        if a <= b {
            Self::up_up_ordered(a, b)
        } else {
            Self::up_up_ordered(b, a)
        }
    }

    /// Caller guarantees `a <= b`.
    pub(crate) fn up_up_ordered(a: RootedReebTree, b: RootedReebTree) -> Self {
        debug_assert!(a <= b);
        let saddles = 1 + a.saddle_count() + b.saddle_count();
        RootedReebTree::Saddle(Arc::new(SaddleNode {
            attachment: Attachment::UpUp(a, b),
            saddles,
        }))
    }

    /// Attaches `up` by an upward edge and `down` by a downward edge below a
    /// new saddle. The pair is ordered.
    pub fn attach_mixed(up: RootedReebTree, down: RootedReebTree) -> Self {
        let saddles = 1 + up.saddle_count() + down.saddle_count();
        RootedReebTree::Saddle(Arc::new(SaddleNode {
            attachment: Attachment::Mixed { up, down },
            saddles,
        }))
    }

    pub fn saddle_count(&self) -> usize {
        match self {
            RootedReebTree::Leaf => 0,
            RootedReebTree::Saddle(node) => node.saddles,
        }
    }

    /// Number of extrema, counted by walking the tree.
    pub fn leaf_count(&self) -> usize {
        let mut stack = vec![self];
        let mut leaves = 0;
        while let Some(t) = stack.pop() {
            match t {
                RootedReebTree::Leaf => leaves += 1,
                RootedReebTree::Saddle(node) => {
                    let (x, y) = node.attachment.children();
                    stack.push(x);
                    stack.push(y);
                }
            }
        }
        leaves
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, RootedReebTree::Leaf)
    }

    pub fn attachment(&self) -> Option<&Attachment> {
        match self {
            RootedReebTree::Leaf => None,
            RootedReebTree::Saddle(node) => Some(&node.attachment),
        }
    }

    /// Bytes of the canonical encoding, produced lazily.
    pub fn tokens(&self) -> Tokens<'_> {
        Tokens {
            stack: vec![Frame::Tree(self)],
        }
    }

    /// Flattens the tree, materializing the root half-edge as an edge from an
    /// extra stub vertex (index 0) into the tree.
    pub fn to_explicit(&self) -> ExplicitGraph {
        let mut builder = Builder::with_capacity(2 * self.saddle_count() + 2);
        let stub = builder.add_vertex();
        builder.add_tree(self, Some(stub), false);
        builder.finish()
    }
}

impl Attachment {
    /// The two subtrees, in storage order.
    pub fn children(&self) -> (&RootedReebTree, &RootedReebTree) {
        match self {
            Attachment::UpUp(a, b) => (a, b),
            Attachment::Mixed { up, down } => (up, down),
        }
    }

    pub fn is_up_up(&self) -> bool {
        matches!(self, Attachment::UpUp(..))
    }
}

// Shortlex on the canonical encoding. Since the encoding of a tree with k
// saddles always has 5k + 1 bytes, this compares saddle counts first and
// falls back to bytewise order between trees of equal size.
impl Ord for RootedReebTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.saddle_count()
            .cmp(&other.saddle_count())
            .then_with(|| self.tokens().cmp(other.tokens()))
    }
}

impl PartialOrd for RootedReebTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootedReebTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.tokens() {
            fmt::Write::write_char(f, b as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RootedReebTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedReebTree({self})")
    }
}

enum Frame<'a> {
    Tree(&'a RootedReebTree),
    Byte(u8),
}

/// Iterator over the canonical encoding of a [`RootedReebTree`].
pub struct Tokens<'a> {
    stack: Vec<Frame<'a>>,
}

impl Iterator for Tokens<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        match self.stack.pop()? {
            Frame::Byte(b) => Some(b),
            Frame::Tree(RootedReebTree::Leaf) => Some(b'*'),
            Frame::Tree(RootedReebTree::Saddle(node)) => {
                let (first, second, tag) = match &node.attachment {
                    Attachment::UpUp(a, b) => (a, b, b'^'),
                    Attachment::Mixed { up, down } => (up, down, b'v'),
                };
                self.stack.push(Frame::Byte(b')'));
                self.stack.push(Frame::Byte(tag));
                self.stack.push(Frame::Tree(second));
                self.stack.push(Frame::Byte(b'^'));
                self.stack.push(Frame::Tree(first));
                Some(b'(')
            }
        }
    }
}

/// Two rooted trees glued at the degree-2 saddle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FullReebGraph {
    lower: RootedReebTree,
    upper: RootedReebTree,
}

impl FullReebGraph {
    /// `lower` hangs below the degree-2 saddle, `upper` above it. The pair
    /// is ordered: swapping the two gives a different graph.
    pub fn glue(lower: RootedReebTree, upper: RootedReebTree) -> Self {
        FullReebGraph { lower, upper }
    }

    pub fn lower(&self) -> &RootedReebTree {
        &self.lower
    }

    pub fn upper(&self) -> &RootedReebTree {
        &self.upper
    }

    pub fn saddle_count(&self) -> usize {
        self.lower.saddle_count() + self.upper.saddle_count() + 1
    }

    /// Flattens the graph. Vertices are numbered in preorder: the lower tree
    /// first, then the degree-2 saddle, then the upper tree.
    pub fn to_explicit(&self) -> ExplicitGraph {
        let mut builder = Builder::with_capacity(2 * self.saddle_count() + 1);
        let lower_root = builder.add_tree(&self.lower, None, true);
        let middle = builder.add_vertex();
        builder.edges.push((lower_root, middle));
        builder.add_tree(&self.upper, Some(middle), false);
        builder.finish()
    }
}

impl fmt::Display for FullReebGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.lower, self.upper)
    }
}

impl fmt::Debug for FullReebGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FullReebGraph({self})")
    }
}

struct Builder {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn with_capacity(vertices: usize) -> Self {
        Builder {
            vertex_count: 0,
            edges: Vec::with_capacity(vertices.saturating_sub(1)),
        }
    }

    fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    /// Adds `tree` in preorder and returns the index of its root. In normal
    /// form every edge points from parent to child; `flip` reverses that.
    fn add_tree(&mut self, tree: &RootedReebTree, parent: Option<usize>, flip: bool) -> usize {
        let root = self.vertex_count;
        let mut stack = vec![(tree, parent, flip)];
        while let Some((t, parent, flip)) = stack.pop() {
            let v = self.add_vertex();
            if let Some(p) = parent {
                self.edges.push(if flip { (v, p) } else { (p, v) });
            }
            match t.attachment() {
                None => {}
                Some(Attachment::UpUp(a, b)) => {
                    stack.push((b, Some(v), flip));
                    stack.push((a, Some(v), flip));
                }
                Some(Attachment::Mixed { up, down }) => {
                    stack.push((down, Some(v), !flip));
                    stack.push((up, Some(v), flip));
                }
            }
        }
        root
    }

    fn finish(self) -> ExplicitGraph {
        ExplicitGraph {
            vertex_count: self.vertex_count,
            edges: self.edges,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge {index} ({u}, {v}) refers to a vertex outside 0..{vertex_count}")]
    VertexOutOfRange {
        index: usize,
        u: usize,
        v: usize,
        vertex_count: usize,
    },
}

/// Flat oriented graph. Edge `(u, v)` means the function increases from `u`
/// to `v`. Self-loops and repeated edges are representable so that arbitrary
/// input can be handed to the validator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl ExplicitGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        if let Some((index, &(u, v))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| u >= vertex_count || v >= vertex_count)
        {
            return Err(GraphError::VertexOutOfRange {
                index,
                u,
                v,
                vertex_count,
            });
        }
        Ok(ExplicitGraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Every edge `(u, v)` becomes `(v, u)`.
    pub fn reverse(&self) -> ExplicitGraph {
        ExplicitGraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, _) in &self.edges {
            deg[u] += 1;
        }
        deg
    }

    /// Total degree; a self-loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Renames vertex `i` to `perm[i]`. Panics unless `perm` is a permutation
    /// of `0..vertex_count`.
    pub fn relabel(&self, perm: &[usize]) -> ExplicitGraph {
        assert_eq!(perm.len(), self.vertex_count, "permutation length mismatch");
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        ExplicitGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (perm[u], perm[v]))
                .collect(),
        }
    }
}
