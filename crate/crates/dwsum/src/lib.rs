//! Exact Dijkgraaf-Witten state sums on closed oriented triangulated 3-manifolds.
//!
//! Given a finite group `G`, a 3-cocycle `α` on `G` with values in `Z/k`, and a
//! closed oriented triangulation `T`, the partition function is
//!
//! ```text
//! Z(T) = (1/|G|^a) · Σ_φ  Π_i  W(σ_i, φ)^{ε_i}
//! ```
//!
//! where `a` is the vertex count, the sum runs over all *flat* `G`-colorings `φ`
//! of the edges, the product runs over the tetrahedra `σ_i` with coherent
//! orientation signs `ε_i`, and `W(σ, φ) = α[g1|g2|g3]` evaluates the cocycle on
//! the three consecutive edge values of `σ` taken in ascending vertex order.
//! The result is an exact element of `Q[x]/(x^k − 1)`, with `x` standing for the
//! root of unity `exp(2πi/k)`; equality of values is decided modulo the k-th
//! cyclotomic polynomial. No floating point enters any computation that decides
//! equality — floats appear only in the optional complex-embedding report.
//!
//! The crate is organized as a pipeline:
//!
//! * [`group`] — finite groups as dense multiplication tables, fully validated.
//! * [`cyclotomic`] — exact arithmetic in `Q[x]/(x^k − 1)` and equality mod `Φ_k`.
//! * [`cochain`] — bar-complex cochains on a group, coboundaries, the cocycle
//!   test with a first-violation witness, and a small catalog of named cocycles.
//! * [`triangulation`] — validated closed oriented triangulations: strict
//!   simplicial complexes whose vertex links are 2-spheres, with orientation
//!   signs computed by propagation.
//! * [`flatness`] — streaming enumeration of flat colorings by constraint
//!   propagation with pruning.
//! * [`statesum`] — the partition function itself, exact and deterministic.
//! * [`pachner`] — the four bistellar moves in dimension 3 and a seeded
//!   move-fuzzing harness that rechecks the invariant after every move.
//! * [`volume`] — an independent exact-geometry identity (signed facet volumes
//!   of a simplex projection alternate to zero) used as a cross-check oracle.
//! * [`cli`] — the `dw` command-line front end; all machine output is JSON.
//!
//! Everything downstream of construction is immutable, so values can be shared
//! freely across threads; the enumerators split their search space
//! deterministically, and results are identical for any worker count.

pub mod cli;
pub mod cochain;
pub mod cyclotomic;
pub mod flatness;
pub mod group;
pub mod pachner;
pub mod statesum;
pub mod triangulation;
pub mod volume;

pub use cochain::{Cochain, CochainError, CyclicCoeff};
pub use cyclotomic::CyclotomicValue;
pub use flatness::{count_flat, enumerate_flat, is_flat, FlatColoring};
pub use group::{FiniteGroup, GroupError};
pub use pachner::{
    applicable_sites, apply_move, fuzz_invariance, FuzzReport, MoveError, MoveKind, MoveSite,
};
pub use statesum::{
    partition_function, partition_function_reversed, weight, ComputeOptions, InvariantValue,
    StateSumError,
};
pub use triangulation::{boundary_of_4_simplex, Triangulation, TriangulationError};
pub use volume::{
    facet_volume_alternating_sum, integer_point, signed_volume, RationalPoint, VolumeError,
};
