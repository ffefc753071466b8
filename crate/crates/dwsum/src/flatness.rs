//! Flat G-colorings of a triangulation's edge set.
//!
//! A coloring assigns a group element to every edge `(u,v)`, `u < v`; it is
//! *flat* when every triangle `(v0,v1,v2)` satisfies
//! `φ(v0,v2) = φ(v0,v1) · φ(v1,v2)`. Enumeration runs a backtracking search
//! over a precomputed *plan*: triangles with two known edges force the third,
//! and only genuinely free edges branch over the group. The plan, the branch
//! order, and hence the emitted sequence of colorings are all deterministic.
//!
//! On a connected complex, flat colorings factor as (choice of a group
//! element per non-base vertex) × (colorings that are trivial on a spanning
//! tree), so [`count_flat`] enumerates only the tree-trivial ones and scales
//! by `|G|^(vertices−1)`.

use crate::group::FiniteGroup;
use crate::triangulation::Triangulation;
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::VecDeque;

/// One group element per edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatColoring {
    values: Vec<usize>,
}

impl FlatColoring {
    /// The element on edge `edge_id` (as an index into the group's elements).
    pub fn value(&self, edge_id: usize) -> usize {
        self.values[edge_id]
    }

    pub fn edge_values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }
}

/// Whether `values` (one element per edge id) is a flat coloring.
///
/// Panics if `values` has the wrong length or contains an out-of-range
/// element index.
pub fn is_flat(t: &Triangulation, g: &FiniteGroup, values: &[usize]) -> bool {
    assert_eq!(values.len(), t.edges().len(), "one value per edge required");
    assert!(
        values.iter().all(|&v| v < g.order()),
        "coloring values must be group element indices"
    );
    (0..t.triangles().len()).all(|tid| {
        let [e01, e12, e02] = t.triangle_edge_ids(tid);
        g.mul(values[e01], values[e12]) == values[e02]
    })
}

/// Applies the vertex gauge `f` to a coloring: the edge `(u,v)` is recolored
/// to `f(u)⁻¹ · φ(u,v) · f(v)`. Gauging preserves flatness.
pub fn gauge_transform(
    t: &Triangulation,
    g: &FiniteGroup,
    coloring: &FlatColoring,
    f: &[usize],
) -> FlatColoring {
    assert_eq!(f.len(), t.vertex_count(), "one gauge element per vertex");
    let values = t
        .edges()
        .iter()
        .zip(&coloring.values)
        .map(|(e, &val)| g.mul(g.mul(g.inv(f[e[0]]), val), f[e[1]]))
        .collect();
    FlatColoring { values }
}

/// Edge ids of a breadth-first spanning tree rooted at vertex 0, ascending.
pub fn spanning_tree_edges(t: &Triangulation) -> Vec<usize> {
    let mut seen = vec![false; t.vertex_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut tree = Vec::with_capacity(t.vertex_count().saturating_sub(1));
    while let Some(u) = queue.pop_front() {
        for &v in t.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                let key = if u < v { [u, v] } else { [v, u] };
                tree.push(t.edge_id(key).expect("neighbor edge exists"));
                queue.push_back(v);
            }
        }
    }
    debug_assert_eq!(tree.len(), t.vertex_count() - 1, "complex is connected");
    tree.sort_unstable();
    tree
}

/// Streams every flat coloring.
pub fn enumerate_flat<'a>(t: &'a Triangulation, g: &'a FiniteGroup) -> FlatEnumerator<'a> {
    FlatEnumerator::new(t, g, &[])
}

/// Streams the flat colorings that are trivial on the breadth-first spanning
/// tree from vertex 0. Gauging identifies each of them with a class of
/// `|G|^(vertices−1)` flat colorings.
pub fn enumerate_tree_trivial<'a>(t: &'a Triangulation, g: &'a FiniteGroup) -> FlatEnumerator<'a> {
    FlatEnumerator::new(t, g, &spanning_tree_edges(t))
}

/// The exact number of flat colorings: (number of tree-trivial colorings) ×
/// `|G|^(vertices−1)`.
pub fn count_flat(t: &Triangulation, g: &FiniteGroup) -> BigUint {
    let mut tree_trivial: u128 = 0;
    let mut it = enumerate_tree_trivial(t, g);
    it.for_each_values(|_| tree_trivial += 1);
    BigUint::from(tree_trivial) * BigUint::from(g.order()).pow(t.vertex_count() as u32 - 1)
}

#[derive(Debug, Clone)]
enum Step {
    /// Branch over every group element on `edge`.
    Free { edge: usize, checks: Vec<usize> },
    /// `edge`'s value is determined by the two other edges of a triangle.
    Forced {
        edge: usize,
        src_a: usize,
        src_b: usize,
        op: ForcedOp,
        checks: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy)]
enum ForcedOp {
    /// Missing `(v0,v2)`: `a · b`.
    Mul,
    /// Missing `(v1,v2)`: `a⁻¹ · b`.
    LeftDiv,
    /// Missing `(v0,v1)`: `a · b⁻¹`.
    RightDiv,
}

/// Deterministic backtracking enumerator over flat colorings.
///
/// Implements [`Iterator`] (cloning each coloring); the non-allocating
/// [`for_each_values`](Self::for_each_values) visits colorings in place.
pub struct FlatEnumerator<'a> {
    g: &'a FiniteGroup,
    t: &'a Triangulation,
    steps: Vec<Step>,
    /// Current value per edge id; pinned edges stay at the identity.
    values: Vec<usize>,
    /// For `Free` steps: the value currently assigned.
    cursor: Vec<usize>,
    /// Next plan position to fill while descending.
    pos: usize,
    descending: bool,
    finished: bool,
    started: bool,
    /// Plan index of the first `Free` step, if any.
    first_free: Option<usize>,
    stride: usize,
    offset: usize,
}

impl<'a> FlatEnumerator<'a> {
    fn new(t: &'a Triangulation, g: &'a FiniteGroup, pinned: &[usize]) -> Self {
        let steps = build_plan(t, pinned);
        let first_free = steps
            .iter()
            .position(|s| matches!(s, Step::Free { .. }));
        let cursor = vec![0usize; steps.len()];
        Self {
            g,
            t,
            steps,
            values: vec![g.identity(); t.edges().len()],
            cursor,
            pos: 0,
            descending: true,
            finished: false,
            started: false,
            first_free,
            stride: 1,
            offset: 0,
        }
    }

    /// Restricts the first branching edge to values `≡ worker (mod total)`.
    /// The `total` enumerators with `worker = 0, …, total−1` partition the
    /// full solution stream. Must be called before iteration starts.
    pub fn partitioned(mut self, worker: usize, total: usize) -> Self {
        assert!(total >= 1 && worker < total, "worker must be below total");
        assert!(!self.started, "partitioning must precede iteration");
        self.stride = total;
        self.offset = worker;
        // With no branching step, the unique stream goes to worker 0.
        if self.first_free.is_none() && worker != 0 {
            self.finished = true;
        }
        self
    }

    /// Visits each solution's edge-value slice without allocating.
    pub fn for_each_values(&mut self, mut visit: impl FnMut(&[usize])) {
        while self.advance() {
            visit(&self.values);
        }
    }

    /// Steps the search to the next solution; `self.values` holds it.
    fn advance(&mut self) -> bool {
        self.started = true;
        loop {
            if self.finished {
                return false;
            }
            if self.descending {
                if self.pos == self.steps.len() {
                    // Solution found; resume by backtracking.
                    self.descending = false;
                    return true;
                }
                match self.steps[self.pos].clone() {
                    Step::Forced {
                        edge,
                        src_a,
                        src_b,
                        op,
                        ref checks,
                    } => {
                        let a = self.values[src_a];
                        let b = self.values[src_b];
                        self.values[edge] = match op {
                            ForcedOp::Mul => self.g.mul(a, b),
                            ForcedOp::LeftDiv => self.g.mul(self.g.inv(a), b),
                            ForcedOp::RightDiv => self.g.mul(a, self.g.inv(b)),
                        };
                        if self.checks_pass(checks) {
                            self.pos += 1;
                        } else {
                            self.descending = false;
                        }
                    }
                    Step::Free { .. } => {
                        let start = if Some(self.pos) == self.first_free {
                            self.offset
                        } else {
                            0
                        };
                        if self.try_free(self.pos, start) {
                            self.pos += 1;
                        } else {
                            self.descending = false;
                        }
                    }
                }
            } else {
                // Backtrack to the deepest Free step with untried values.
                if self.pos == 0 {
                    self.finished = true;
                    return false;
                }
                self.pos -= 1;
                if matches!(self.steps[self.pos], Step::Free { .. }) {
                    let step = if Some(self.pos) == self.first_free {
                        self.stride
                    } else {
                        1
                    };
                    let next = self.cursor[self.pos] + step;
                    if self.try_free(self.pos, next) {
                        self.pos += 1;
                        self.descending = true;
                    }
                }
            }
        }
    }

    /// Tries values `from, from+step, …` on the Free step at plan index
    /// `at`; returns whether one passed its checks.
    fn try_free(&mut self, at: usize, from: usize) -> bool {
        let Step::Free { edge, ref checks } = self.steps[at] else {
            unreachable!("try_free is only called on Free steps");
        };
        let checks = checks.clone();
        let step = if Some(at) == self.first_free {
            self.stride
        } else {
            1
        };
        let mut v = from;
        while v < self.g.order() {
            self.values[edge] = v;
            if self.checks_pass(&checks) {
                self.cursor[at] = v;
                return true;
            }
            v += step;
        }
        false
    }

    fn checks_pass(&self, checks: &[usize]) -> bool {
        checks.iter().all(|&tid| {
            let [e01, e12, e02] = self.t.triangle_edge_ids(tid);
            self.g.mul(self.values[e01], self.values[e12]) == self.values[e02]
        })
    }
}

impl<'a> Iterator for FlatEnumerator<'a> {
    type Item = FlatColoring;

    fn next(&mut self) -> Option<FlatColoring> {
        if self.advance() {
            Some(FlatColoring {
                values: self.values.clone(),
            })
        } else {
            None
        }
    }
}

/// Builds the assignment plan: repeatedly, the first triangle (ascending id)
/// with exactly two assigned edges forces its third edge; otherwise the
/// lowest-index unassigned edge branches. Each step records which triangles
/// become fully assigned with it and must be checked.
fn build_plan(t: &Triangulation, pinned: &[usize]) -> Vec<Step> {
    let edge_count = t.edges().len();
    let mut assigned = vec![false; edge_count];
    for &p in pinned {
        assigned[p] = true;
    }
    let mut remaining = edge_count - pinned.len();
    let mut steps = Vec::with_capacity(remaining);
    while remaining > 0 {
        let mut forced: Option<(usize, usize)> = None;
        for tid in 0..t.triangles().len() {
            let [e01, e12, e02] = t.triangle_edge_ids(tid);
            let known = assigned[e01] as u8 + assigned[e12] as u8 + assigned[e02] as u8;
            if known == 2 {
                let missing = [e01, e12, e02]
                    .into_iter()
                    .find(|&e| !assigned[e])
                    .expect("one edge is unassigned");
                forced = Some((tid, missing));
                break;
            }
        }
        let step = match forced {
            Some((tid, edge)) => {
                let [e01, e12, e02] = t.triangle_edge_ids(tid);
                let (src_a, src_b, op) = if edge == e02 {
                    (e01, e12, ForcedOp::Mul)
                } else if edge == e12 {
                    (e01, e02, ForcedOp::LeftDiv)
                } else {
                    (e02, e12, ForcedOp::RightDiv)
                };
                assigned[edge] = true;
                let checks = completed_checks(t, &assigned, edge, Some(tid));
                Step::Forced {
                    edge,
                    src_a,
                    src_b,
                    op,
                    checks,
                }
            }
            None => {
                let edge = (0..edge_count)
                    .find(|&e| !assigned[e])
                    .expect("remaining > 0");
                assigned[edge] = true;
                let checks = completed_checks(t, &assigned, edge, None);
                Step::Free { edge, checks }
            }
        };
        steps.push(step);
        remaining -= 1;
    }
    steps
}

/// Triangles through `edge` whose three edges are all assigned, minus the
/// triangle that forced the assignment (its relation holds by construction).
fn completed_checks(
    t: &Triangulation,
    assigned: &[bool],
    edge: usize,
    forcing: Option<usize>,
) -> Vec<usize> {
    t.triangles_of_edge(edge)
        .iter()
        .copied()
        .filter(|&tid| {
            if forcing == Some(tid) {
                return false;
            }
            let [e01, e12, e02] = t.triangle_edge_ids(tid);
            assigned[e01] && assigned[e12] && assigned[e02]
        })
        .collect()
}
