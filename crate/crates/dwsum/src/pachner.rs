//! Bistellar (2-3, 3-2, 1-4, 4-1) moves and a move-fuzzing harness.
//!
//! Each move replaces a small cluster of tetrahedra by the complementary
//! cluster of the same bipyramid or 4-simplex boundary, preserving the
//! underlying manifold. On a *strict* simplicial complex a move is admissible
//! only when the replacement cluster is itself strict:
//!
//! * **2-3** at a triangle: the two adjacent tetrahedra become three around a
//!   new edge joining their apexes — admissible only if that edge is absent.
//! * **3-2** at an edge of degree 3: the three tetrahedra around it become two
//!   glued along the triangle of surrounding vertices — admissible only if
//!   that triangle is absent.
//! * **1-4** at a tetrahedron: cone it from a fresh vertex (always admissible;
//!   the new vertex takes the next free index).
//! * **4-1** at a vertex whose star is four tetrahedra: replace the star by
//!   the single tetrahedron on its four neighbors — admissible only if that
//!   tetrahedron is absent. The vertex is deleted and higher labels shift
//!   down by one.
//!
//! Applying a move rebuilds and revalidates the triangulation, transporting
//! the orientation through the lowest-labeled surviving tetrahedron, so the
//! global orientation class is preserved (never silently conjugated).
//!
//! [`fuzz_invariance`] drives a seeded random walk over admissible moves and
//! recomputes the partition function after every step, reporting the first
//! discrepancy — which, if the implementation is sound, never occurs.

use crate::cochain::Cochain;
use crate::cyclotomic::CyclotomicValue;
use crate::statesum::{partition_function, ComputeOptions, StateSumError};
use crate::triangulation::{Triangulation, TriangulationError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    #[serde(rename = "2-3")]
    TwoThree,
    #[serde(rename = "3-2")]
    ThreeTwo,
    #[serde(rename = "1-4")]
    OneFour,
    #[serde(rename = "4-1")]
    FourOne,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [
        MoveKind::TwoThree,
        MoveKind::ThreeTwo,
        MoveKind::OneFour,
        MoveKind::FourOne,
    ];
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
        })
    }
}

impl std::str::FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "2-3" => Ok(MoveKind::TwoThree),
            "3-2" => Ok(MoveKind::ThreeTwo),
            "1-4" => Ok(MoveKind::OneFour),
            "4-1" => Ok(MoveKind::FourOne),
            other => Err(format!(
                "unknown move kind {other:?} (expected 2-3, 3-2, 1-4, or 4-1)"
            )),
        }
    }
}

/// A concrete location where a move can be applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MoveSite {
    #[serde(rename = "2-3")]
    TwoThree { triangle: [usize; 3] },
    #[serde(rename = "3-2")]
    ThreeTwo { edge: [usize; 2] },
    #[serde(rename = "1-4")]
    OneFour { tet: [usize; 4] },
    #[serde(rename = "4-1")]
    FourOne { vertex: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::TwoThree { .. } => MoveKind::TwoThree,
            MoveSite::ThreeTwo { .. } => MoveKind::ThreeTwo,
            MoveSite::OneFour { .. } => MoveKind::OneFour,
            MoveSite::FourOne { .. } => MoveKind::FourOne,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move not applicable: {detail}")]
    NotApplicable { detail: String },
    #[error("rebuilding after the move failed: {0}")]
    Rebuild(#[from] TriangulationError),
}

/// The tetrahedra a checked move removes and adds.
struct MovePlan {
    removed: Vec<[usize; 4]>,
    added: Vec<[usize; 4]>,
    new_vertex_count: usize,
    /// `Some(v)`: vertex `v` is deleted and labels above it shift down.
    delete_vertex: Option<usize>,
}

fn not_applicable(detail: impl Into<String>) -> MoveError {
    MoveError::NotApplicable {
        detail: detail.into(),
    }
}

/// Validates `site` against `t` and produces the removal/addition plan.
fn check_site(t: &Triangulation, site: &MoveSite) -> Result<MovePlan, MoveError> {
    match *site {
        MoveSite::TwoThree { triangle } => {
            let owners = t.tets_containing(triangle);
            if owners.len() != 2 {
                return Err(not_applicable(format!(
                    "triangle {triangle:?} is not in the complex"
                )));
            }
            let tets = t.tets();
            let apex = |ti: usize| {
                tets[ti]
                    .iter()
                    .copied()
                    .find(|v| !triangle.contains(v))
                    .expect("owner has an apex off the triangle")
            };
            let (p, q) = (apex(owners[0]), apex(owners[1]));
            let key = if p < q { [p, q] } else { [q, p] };
            if t.edge_id(key).is_some() {
                return Err(not_applicable(format!(
                    "apex edge {key:?} already exists, so the replacement would not be strict"
                )));
            }
            let [a, b, c] = triangle;
            Ok(MovePlan {
                removed: vec![tets[owners[0]], tets[owners[1]]],
                added: vec![[a, b, p, q], [a, c, p, q], [b, c, p, q]],
                new_vertex_count: t.vertex_count(),
                delete_vertex: None,
            })
        }
        MoveSite::ThreeTwo { edge } => {
            let Some(eid) = t.edge_id(edge) else {
                return Err(not_applicable(format!("edge {edge:?} is not in the complex")));
            };
            let around = t.tets_of_edge(eid);
            if around.len() != 3 {
                return Err(not_applicable(format!(
                    "edge {edge:?} has degree {}, not 3",
                    around.len()
                )));
            }
            let mut ring: Vec<usize> = around
                .iter()
                .flat_map(|&ti| t.tets()[ti])
                .filter(|v| !edge.contains(v))
                .collect();
            ring.sort_unstable();
            ring.dedup();
            if ring.len() != 3 {
                return Err(not_applicable(format!(
                    "edge {edge:?} is not surrounded by three distinct vertices"
                )));
            }
            let tri = [ring[0], ring[1], ring[2]];
            if t.triangle_id(tri).is_some() {
                return Err(not_applicable(format!(
                    "surrounding triangle {tri:?} already exists, so the replacement would not be strict"
                )));
            }
            Ok(MovePlan {
                removed: around.iter().map(|&ti| t.tets()[ti]).collect(),
                added: vec![
                    [tri[0], tri[1], tri[2], edge[0]],
                    [tri[0], tri[1], tri[2], edge[1]],
                ],
                new_vertex_count: t.vertex_count(),
                delete_vertex: None,
            })
        }
        MoveSite::OneFour { tet } => {
            if t.tets().binary_search(&tet).is_err() {
                return Err(not_applicable(format!("tetrahedron {tet:?} is not in the complex")));
            }
            let w = t.vertex_count();
            let [a, b, c, d] = tet;
            Ok(MovePlan {
                removed: vec![tet],
                added: vec![[a, b, c, w], [a, b, d, w], [a, c, d, w], [b, c, d, w]],
                new_vertex_count: w + 1,
                delete_vertex: None,
            })
        }
        MoveSite::FourOne { vertex } => {
            if vertex >= t.vertex_count() {
                return Err(not_applicable(format!("vertex {vertex} is out of range")));
            }
            let star = t.tets_of_vertex(vertex);
            if star.len() != 4 {
                return Err(not_applicable(format!(
                    "vertex {vertex} lies in {} tetrahedra, not 4",
                    star.len()
                )));
            }
            let nb = t.neighbors(vertex);
            if nb.len() != 4 {
                return Err(not_applicable(format!(
                    "vertex {vertex} has {} neighbors, not 4",
                    nb.len()
                )));
            }
            let replacement = [nb[0], nb[1], nb[2], nb[3]];
            if t.tets().binary_search(&replacement).is_ok() {
                return Err(not_applicable(format!(
                    "replacement tetrahedron {replacement:?} already exists"
                )));
            }
            Ok(MovePlan {
                removed: star.iter().map(|&ti| t.tets()[ti]).collect(),
                added: vec![replacement],
                new_vertex_count: t.vertex_count() - 1,
                delete_vertex: Some(vertex),
            })
        }
    }
}

/// All sites where a move of `kind` is admissible, in ascending order of the
/// defining simplex.
pub fn applicable_sites(t: &Triangulation, kind: MoveKind) -> Vec<MoveSite> {
    let candidates: Vec<MoveSite> = match kind {
        MoveKind::TwoThree => t
            .triangles()
            .iter()
            .map(|&triangle| MoveSite::TwoThree { triangle })
            .collect(),
        MoveKind::ThreeTwo => t
            .edges()
            .iter()
            .map(|&edge| MoveSite::ThreeTwo { edge })
            .collect(),
        MoveKind::OneFour => t.tets().iter().map(|&tet| MoveSite::OneFour { tet }).collect(),
        MoveKind::FourOne => (0..t.vertex_count())
            .map(|vertex| MoveSite::FourOne { vertex })
            .collect(),
    };
    candidates
        .into_iter()
        .filter(|site| check_site(t, site).is_ok())
        .collect()
}

/// Applies one move, returning the rebuilt (revalidated, orientation-carried)
/// triangulation.
pub fn apply_move(t: &Triangulation, site: &MoveSite) -> Result<Triangulation, MoveError> {
    let plan = check_site(t, site)?;
    let shift = |v: usize| match plan.delete_vertex {
        Some(dv) if v > dv => v - 1,
        _ => v,
    };
    let shift_tet = |tet: &[usize; 4]| {
        let mut s = [shift(tet[0]), shift(tet[1]), shift(tet[2]), shift(tet[3])];
        s.sort_unstable();
        s
    };

    let mut new_tets: Vec<[usize; 4]> = Vec::with_capacity(t.tets().len());
    // Anchor: the lowest surviving tetrahedron keeps its sign. Label shifts
    // from a vertex deletion are order-preserving, so sorted order and
    // orientation parity are unaffected.
    let mut anchor: Option<([usize; 4], i8)> = None;
    for (tet, &sign) in t.tets().iter().zip(t.orientation_signs()) {
        if plan.removed.contains(tet) {
            continue;
        }
        let shifted = shift_tet(tet);
        if anchor.map_or(true, |(best, _)| shifted < best) {
            anchor = Some((shifted, sign));
        }
        new_tets.push(shifted);
    }
    debug_assert!(anchor.is_some(), "every admissible move keeps a tetrahedron");
    for added in &plan.added {
        new_tets.push(shift_tet(added));
    }

    let rebuilt =
        Triangulation::from_tets_anchored(plan.new_vertex_count, new_tets, anchor)?;
    debug_assert_eq!(
        f_delta(t, &rebuilt),
        expected_f_delta(site.kind()),
        "move must change the f-vector by the bistellar amount"
    );
    Ok(rebuilt)
}

fn f_delta(before: &Triangulation, after: &Triangulation) -> [i64; 4] {
    let (v0, e0, f0, t0) = before.f_vector();
    let (v1, e1, f1, t1) = after.f_vector();
    [
        v1 as i64 - v0 as i64,
        e1 as i64 - e0 as i64,
        f1 as i64 - f0 as i64,
        t1 as i64 - t0 as i64,
    ]
}

fn expected_f_delta(kind: MoveKind) -> [i64; 4] {
    match kind {
        MoveKind::TwoThree => [0, 1, 2, 1],
        MoveKind::ThreeTwo => [0, -1, -2, -1],
        MoveKind::OneFour => [1, 4, 6, 3],
        MoveKind::FourOne => [-1, -4, -6, -3],
    }
}

#[derive(Debug, Clone)]
pub struct FuzzOptions {
    pub steps: usize,
    pub seed: u64,
    /// Move kinds the walk may use (empty means all four).
    pub kinds: Vec<MoveKind>,
    pub compute: ComputeOptions,
}

impl Default for FuzzOptions {
    fn default() -> Self {
        Self {
            steps: 16,
            seed: 0,
            kinds: MoveKind::ALL.to_vec(),
            compute: ComputeOptions::default(),
        }
    }
}

/// One accepted step of the fuzz walk.
#[derive(Debug, Clone, Serialize)]
pub struct AppliedMove {
    pub step: usize,
    pub site: MoveSite,
    /// `[vertices, edges, triangles, tets]` after the move.
    pub f_vector: [usize; 4],
}

/// Outcome of a completed fuzz walk: the invariant agreed after every move.
#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub trace: Vec<AppliedMove>,
    /// The common value of the partition function along the walk.
    pub value: CyclotomicValue,
    /// True when the walk ran out of admissible moves early.
    pub stalled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzError {
    #[error("state sum failed: {0}")]
    StateSum(#[from] StateSumError),
    #[error("move failed: {0}")]
    Move(#[from] MoveError),
    #[error("invariant changed at step {step} after a {kind} move")]
    InvariantChanged { step: usize, kind: MoveKind },
}

/// Runs a seeded random walk of bistellar moves, recomputing the partition
/// function after every move and checking exact equality with the starting
/// value. Deterministic for a fixed seed and option set.
pub fn fuzz_invariance(
    t: &Triangulation,
    alpha: &Cochain,
    opts: &FuzzOptions,
) -> Result<FuzzReport, FuzzError> {
    let kinds: Vec<MoveKind> = if opts.kinds.is_empty() {
        MoveKind::ALL.to_vec()
    } else {
        opts.kinds.clone()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let baseline = partition_function(t, alpha, &opts.compute)?;
    let mut current = t.clone();
    let mut trace = Vec::with_capacity(opts.steps);
    let mut stalled = false;
    for step in 0..opts.steps {
        // Kinds with at least one admissible site, in fixed order.
        let available: Vec<(MoveKind, Vec<MoveSite>)> = kinds
            .iter()
            .map(|&k| (k, applicable_sites(&current, k)))
            .filter(|(_, sites)| !sites.is_empty())
            .collect();
        if available.is_empty() {
            stalled = true;
            break;
        }
        let (kind, sites) = &available[rng.gen_range(0..available.len())];
        let site = sites[rng.gen_range(0..sites.len())];
        current = apply_move(&current, &site)?;
        let here = partition_function(&current, alpha, &opts.compute)?;
        if !here
            .value
            .equal(&baseline.value)
            .expect("moduli agree: same cochain throughout")
        {
            return Err(FuzzError::InvariantChanged { step, kind: *kind });
        }
        let (v, e, f, m) = current.f_vector();
        trace.push(AppliedMove {
            step,
            site,
            f_vector: [v, e, f, m],
        });
    }
    Ok(FuzzReport {
        trace,
        value: baseline.value,
        stalled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::boundary_of_4_simplex;

    #[test]
    fn simplex_boundary_admits_only_subdivision() {
        let t = boundary_of_4_simplex();
        // Every vertex pair is already an edge, every triple a triangle, and
        // the 4-1 replacement is always the fifth tetrahedron.
        assert!(applicable_sites(&t, MoveKind::TwoThree).is_empty());
        assert!(applicable_sites(&t, MoveKind::ThreeTwo).is_empty());
        assert!(applicable_sites(&t, MoveKind::FourOne).is_empty());
        assert_eq!(applicable_sites(&t, MoveKind::OneFour).len(), 5);
    }

    #[test]
    fn one_four_then_four_one_round_trips() {
        let t = boundary_of_4_simplex();
        let site = MoveSite::OneFour { tet: [0, 1, 2, 3] };
        let bigger = apply_move(&t, &site).unwrap();
        assert_eq!(bigger.f_vector(), (6, 14, 16, 8));
        // Both the old apex (4) and the new one (5) now have 4-tet stars with
        // the replacement tetrahedron {0,1,2,3} absent.
        let sites = applicable_sites(&bigger, MoveKind::FourOne);
        assert_eq!(
            sites,
            vec![
                MoveSite::FourOne { vertex: 4 },
                MoveSite::FourOne { vertex: 5 }
            ]
        );
        let back = apply_move(&bigger, &MoveSite::FourOne { vertex: 5 }).unwrap();
        assert_eq!(back.tets(), t.tets());
        assert_eq!(back.orientation_signs(), t.orientation_signs());
        // Collapsing the *other* admissible vertex also returns a 5-vertex
        // sphere (the same complex after relabeling).
        let other = apply_move(&bigger, &MoveSite::FourOne { vertex: 4 }).unwrap();
        assert_eq!(other.tets(), t.tets());
    }

    #[test]
    fn two_three_then_three_two_round_trips() {
        let t = boundary_of_4_simplex();
        let bigger = apply_move(&t, &MoveSite::OneFour { tet: [0, 1, 2, 3] }).unwrap();
        let site = MoveSite::TwoThree {
            triangle: [0, 1, 2],
        };
        let moved = apply_move(&bigger, &site).unwrap();
        assert_eq!(moved.f_vector(), (6, 15, 18, 9));
        assert!(moved.edge_id([4, 5]).is_some());
        // The shared triangle is gone, so the inverse move is admissible.
        assert!(moved.triangle_id([0, 1, 2]).is_none());
        let back = apply_move(&moved, &MoveSite::ThreeTwo { edge: [4, 5] }).unwrap();
        assert_eq!(back.tets(), bigger.tets());
        assert_eq!(back.orientation_signs(), bigger.orientation_signs());
    }

    #[test]
    fn moves_report_inapplicability() {
        let t = boundary_of_4_simplex();
        for site in [
            MoveSite::TwoThree {
                triangle: [0, 1, 2],
            },
            MoveSite::ThreeTwo { edge: [0, 1] },
            MoveSite::FourOne { vertex: 0 },
            MoveSite::OneFour { tet: [0, 1, 2, 7] },
        ] {
            assert!(matches!(
                apply_move(&t, &site),
                Err(MoveError::NotApplicable { .. })
            ));
        }
    }

    #[test]
    fn fuzz_walk_preserves_the_invariant() {
        let t = boundary_of_4_simplex();
        let alpha = Cochain::carry(2, 1);
        let opts = FuzzOptions {
            steps: 8,
            seed: 7,
            ..FuzzOptions::default()
        };
        let report = fuzz_invariance(&t, &alpha, &opts).unwrap();
        assert_eq!(report.trace.len(), 8);
        assert!(!report.stalled);
        // Same seed, same walk.
        let again = fuzz_invariance(&t, &alpha, &opts).unwrap();
        let sites: Vec<MoveSite> = report.trace.iter().map(|s| s.site).collect();
        let sites_again: Vec<MoveSite> = again.trace.iter().map(|s| s.site).collect();
        assert_eq!(sites, sites_again);
    }

    #[test]
    fn restricted_fuzz_stalls_when_no_move_applies() {
        let t = boundary_of_4_simplex();
        let alpha = Cochain::carry(2, 1);
        let opts = FuzzOptions {
            steps: 5,
            seed: 1,
            kinds: vec![MoveKind::ThreeTwo],
            ..FuzzOptions::default()
        };
        let report = fuzz_invariance(&t, &alpha, &opts).unwrap();
        assert!(report.stalled);
        assert!(report.trace.is_empty());
    }

    #[test]
    fn move_kind_strings_round_trip() {
        for kind in MoveKind::ALL {
            let s = kind.to_string();
            assert_eq!(s.parse::<MoveKind>().unwrap(), kind);
        }
        assert!("5-1".parse::<MoveKind>().is_err());
    }
}
