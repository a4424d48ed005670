//! Structural check of flat oriented graphs against the properties every Reeb
//! graph of a simple Morse function on RP2 must have:
//!
//! 1. the graph is a tree;
//! 2. exactly one vertex has degree 2, every other vertex has degree 1 or 3;
//! 3. degree-1 vertices are sources or sinks, and no other vertex is.
//!
//! Property 3 is enforced in both directions, and the degree-2 vertex must
//! have one incoming and one outgoing edge. Both refinements come from the
//! local model of a saddle, which has fibers above and below it. The checks
//! are treated as the acceptance definition; they are known to be necessary,
//! sufficiency for realizability is assumed.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tree::ExplicitGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionId {
    Connected,
    AcyclicTree,
    DegreeProfile,
    UniqueDeg2,
    LeafOrientation,
    SaddleOrientation,
}

impl ConditionId {
    pub const ALL: [ConditionId; 6] = [
        ConditionId::Connected,
        ConditionId::AcyclicTree,
        ConditionId::DegreeProfile,
        ConditionId::UniqueDeg2,
        ConditionId::LeafOrientation,
        ConditionId::SaddleOrientation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::Connected => "CONNECTED",
            ConditionId::AcyclicTree => "ACYCLIC_TREE",
            ConditionId::DegreeProfile => "DEGREE_PROFILE",
            ConditionId::UniqueDeg2 => "UNIQUE_DEG2",
            ConditionId::LeafOrientation => "LEAF_ORIENTATION",
            ConditionId::SaddleOrientation => "SADDLE_ORIENTATION",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: ConditionId,
    pub passed: bool,
    pub detail: String,
    /// Offending vertices; empty when the check passed.
    pub witness_vertices: Vec<usize>,
    /// Offending edges; empty when the check passed.
    pub witness_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    is_valid: bool,
    checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.is_valid
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn check(&self, id: ConditionId) -> &Check {
        self.checks
            .iter()
            .find(|c| c.id == id)
            .expect("report covers every condition")
    }

    pub fn failed(&self) -> impl Iterator<Item = ConditionId> + '_ {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id)
    }
}

/// One line per condition: `ID<TAB>pass|fail<TAB>detail`.
impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{}\t{}\t{}",
                c.id,
                if c.passed { "pass" } else { "fail" },
                c.detail
            )?;
        }
        write!(f, "valid\t{}", if self.is_valid { "yes" } else { "no" })
    }
}

fn pass(id: ConditionId, detail: impl Into<String>) -> Check {
    Check {
        id,
        passed: true,
        detail: detail.into(),
        witness_vertices: Vec::new(),
        witness_edges: Vec::new(),
    }
}

fn fail(
    id: ConditionId,
    detail: impl Into<String>,
    witness_vertices: Vec<usize>,
    witness_edges: Vec<(usize, usize)>,
) -> Check {
    debug_assert!(!witness_vertices.is_empty() || !witness_edges.is_empty());
    Check {
        id,
        passed: false,
        detail: detail.into(),
        witness_vertices,
        witness_edges,
    }
}

fn list(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Runs every check. Never fails: problems are reported as entries.
pub fn check(g: &ExplicitGraph) -> ValidationReport {
    let n = g.vertex_count();
    let edges = g.edges();
    let degree = g.degrees();
    let indeg = g.in_degrees();
    let outdeg = g.out_degrees();

    // Spanning forest; the first edge closing a cycle is remembered.
    let mut uf = UnionFind::new(n);
    let mut forest = vec![Vec::new(); n];
    let mut closing = None;
    for &(u, v) in edges {
        if uf.union(u, v) {
            forest[u].push(v);
            forest[v].push(u);
        } else if closing.is_none() {
            closing = Some((u, v));
        }
    }

    let mut checks = Vec::with_capacity(6);

    let reached = bfs_order(&forest, 0);
    if reached.len() == n {
        checks.push(pass(
            ConditionId::Connected,
            format!("{n} vertices in one component"),
        ));
    } else {
        let mut seen = vec![false; n];
        for &v in &reached {
            seen[v] = true;
        }
        let unreached: Vec<usize> = (0..n).filter(|&v| !seen[v]).collect();
        checks.push(fail(
            ConditionId::Connected,
            format!("vertices not reachable from 0: {}", list(&unreached)),
            unreached,
            Vec::new(),
        ));
    }

    match closing {
        Some((u, v)) => {
            let cycle = forest_path(&forest, v, u);
            let detail = if u == v {
                format!("self-loop at vertex {u}")
            } else {
                let closed: Vec<String> = cycle.iter().chain([&v]).map(|x| x.to_string()).collect();
                format!("edge ({u},{v}) closes cycle {}", closed.join("-"))
            };
            checks.push(fail(ConditionId::AcyclicTree, detail, cycle, vec![(u, v)]));
        }
        None if edges.len() + 1 != n => {
            // A forest with fewer edges: only possible when disconnected.
            let witness = if let Some(c) = checks.first().filter(|c| !c.passed) {
                c.witness_vertices.clone()
            } else {
                vec![0]
            };
            checks.push(fail(
                ConditionId::AcyclicTree,
                format!(
                    "{} edges on {} vertices; a tree needs {}",
                    edges.len(),
                    n,
                    n - 1
                ),
                witness,
                Vec::new(),
            ));
        }
        None => checks.push(pass(
            ConditionId::AcyclicTree,
            format!("{} edges on {} vertices, no cycle", edges.len(), n),
        )),
    }

    let bad_degree: Vec<usize> = (0..n).filter(|&v| !(1..=3).contains(&degree[v])).collect();
    if bad_degree.is_empty() {
        checks.push(pass(ConditionId::DegreeProfile, "all degrees in {1,2,3}"));
    } else {
        let detail = bad_degree
            .iter()
            .map(|&v| format!("vertex {v} has degree {}", degree[v]))
            .collect::<Vec<_>>()
            .join("; ");
        checks.push(fail(
            ConditionId::DegreeProfile,
            detail,
            bad_degree,
            Vec::new(),
        ));
    }

    let deg2: Vec<usize> = (0..n).filter(|&v| degree[v] == 2).collect();
    match deg2.len() {
        1 => checks.push(pass(
            ConditionId::UniqueDeg2,
            format!("vertex {} is the only degree-2 vertex", deg2[0]),
        )),
        0 => {
            let internal: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
            let witness = if internal.is_empty() {
                vec![0]
            } else {
                internal
            };
            checks.push(fail(
                ConditionId::UniqueDeg2,
                format!(
                    "no vertex of degree 2 (internal vertices: {})",
                    list(&witness)
                ),
                witness,
                Vec::new(),
            ));
        }
        _ => checks.push(fail(
            ConditionId::UniqueDeg2,
            format!("{} vertices of degree 2: {}", deg2.len(), list(&deg2)),
            deg2.clone(),
            Vec::new(),
        )),
    }

    let bad_leaves: Vec<usize> = (0..n)
        .filter(|&v| degree[v] == 1 && !(indeg[v] == 0 || outdeg[v] == 0))
        .collect();
    if bad_leaves.is_empty() {
        checks.push(pass(
            ConditionId::LeafOrientation,
            "every degree-1 vertex is a source or a sink",
        ));
    } else {
        checks.push(fail(
            ConditionId::LeafOrientation,
            format!(
                "degree-1 vertices neither source nor sink: {}",
                list(&bad_leaves)
            ),
            bad_leaves,
            Vec::new(),
        ));
    }

    let mut bad_saddles = Vec::new();
    let mut reasons = Vec::new();
    for v in 0..n {
        let ok = match degree[v] {
            3 => matches!((indeg[v], outdeg[v]), (1, 2) | (2, 1)),
            // (1,1) at the degree-2 vertex is inferred from the saddle model
            2 => (indeg[v], outdeg[v]) == (1, 1),
            _ => true,
        };
        if !ok {
            bad_saddles.push(v);
            let what = match (indeg[v], outdeg[v]) {
                (_, 0) => "a sink",
                (0, _) => "a source",
                _ => "unbalanced",
            };
            reasons.push(format!(
                "vertex {v} (degree {}) is {what}: in {}, out {}",
                degree[v], indeg[v], outdeg[v]
            ));
        }
    }
    if bad_saddles.is_empty() {
        checks.push(pass(
            ConditionId::SaddleOrientation,
            "no internal vertex is a source or sink; degree-2 vertex has in 1, out 1",
        ));
    } else {
        checks.push(fail(
            ConditionId::SaddleOrientation,
            reasons.join("; "),
            bad_saddles,
            Vec::new(),
        ));
    }

    ValidationReport {
        is_valid: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn bfs_order(adjacency: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut seen = vec![false; adjacency.len()];
    let mut order = Vec::with_capacity(adjacency.len());
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

/// Vertex path from `from` to `to` inside a forest. Both must be in the same
/// component.
fn forest_path(forest: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; forest.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &forest[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Ways to break a valid graph, one targeted condition each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Adds an edge between the first two degree-1 vertices. Trips
    /// ACYCLIC_TREE (and, as a consequence, UNIQUE_DEG2).
    AddCycle,
    /// Subdivides the first edge with a new vertex, creating a second
    /// degree-2 vertex. Trips UNIQUE_DEG2 only.
    SplitDeg2,
    /// Reverses the outgoing edge of the degree-2 vertex, turning it into a
    /// sink. Trips SADDLE_ORIENTATION only.
    FlipInternalToSink,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::AddCycle,
        Mutation::SplitDeg2,
        Mutation::FlipInternalToSink,
    ];

    /// The condition the mutated graph is guaranteed to fail.
    pub fn predicted(self) -> ConditionId {
        match self {
            Mutation::AddCycle => ConditionId::AcyclicTree,
            Mutation::SplitDeg2 => ConditionId::UniqueDeg2,
            Mutation::FlipInternalToSink => ConditionId::SaddleOrientation,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mutation::AddCycle => "add-cycle",
            Mutation::SplitDeg2 => "split-deg2",
            Mutation::FlipInternalToSink => "flip-internal-to-sink",
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("mutation {mode} is not applicable: {reason}")]
pub struct MutationError {
    pub mode: &'static str,
    pub reason: String,
}

/// Produces an invalid graph from a valid one. See [`Mutation`] for what
/// each mode does.
pub fn mutate_for_tests(g: &ExplicitGraph, mode: Mutation) -> Result<ExplicitGraph, MutationError> {
    let report = check(g);
    if !report.is_valid() {
        return Err(MutationError {
            mode: mode.as_str(),
            reason: format!(
                "input already fails {}",
                report
                    .failed()
                    .map(|c| c.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        });
    }
    let degree = g.degrees();
    let mut edges = g.edges().to_vec();
    let mut n = g.vertex_count();
    match mode {
        Mutation::AddCycle => {
            let leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).take(2).collect();
            // a valid graph always has at least two extrema
            edges.push((leaves[0], leaves[1]));
        }
        Mutation::SplitDeg2 => {
            let (u, v) = edges[0];
            let w = n;
            n += 1;
            edges[0] = (u, w);
            edges.push((w, v));
        }
        Mutation::FlipInternalToSink => {
            let middle = (0..n).find(|&v| degree[v] == 2).expect("valid graph");
            let e = edges
                .iter_mut()
                .find(|(u, _)| *u == middle)
                .expect("degree-2 vertex has an outgoing edge");
            *e = (e.1, e.0);
        }
    }
    Ok(ExplicitGraph::new(n, edges).expect("indices stay in range"))
}
