//! Exact evaluation of the partition function.
//!
//! For a closed oriented triangulation with orientation signs `ε_i`, a finite
//! group `G`, and a 3-cocycle `α` with values in `Z/k`, each flat coloring
//! `φ` contributes the monomial `x^(w(φ))` where
//! `w(φ) = Σ_i ε_i · α[g1_i | g2_i | g3_i] (mod k)` runs over tetrahedra and
//! `g1, g2, g3` are the colors of the consecutive edges `(v0,v1), (v1,v2),
//! (v2,v3)` in ascending vertex order. The partition function is
//!
//! ```text
//! Z = |G|^(−vertices) · Σ_φ x^(w(φ))
//! ```
//!
//! evaluated exactly in `Q(x)/Φ_k(x)`.
//!
//! Two evaluation strategies produce identical values:
//!
//! * **Full** — enumerate every flat coloring.
//! * **Factorized** — enumerate only colorings trivial on a spanning tree.
//!   `w` is constant on vertex-gauge orbits, and gauge classes all have size
//!   `|G|^(vertices−1)`, so `Z = |G|^(−1) · Σ_(tree-trivial φ) x^(w(φ))`.
//!   Before trusting this path the evaluator spot-checks gauge invariance of
//!   `w` on pseudo-random (coloring, gauge) pairs and reports an error if a
//!   check ever fails.
//!
//! The **Auto** strategy enumerates fully when the gauge factor
//! `|G|^(vertices−1)` is at most 200 000 and factorizes otherwise.
//!
//! Work is split across threads by partitioning the first branching edge of
//! the coloring search; per-exponent tallies are merged additively, so the
//! result is identical for every thread count.

use crate::cochain::Cochain;
use crate::cyclotomic::CyclotomicValue;
use crate::flatness::{enumerate_flat, enumerate_tree_trivial, gauge_transform, is_flat};
use crate::triangulation::Triangulation;
use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Above this many gauge copies per tree-trivial coloring, `Auto` switches
/// from full enumeration to the factorized sum.
const AUTO_FULL_LIMIT: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Full enumeration for small gauge factors, factorized otherwise.
    #[default]
    Auto,
    /// Sum over every flat coloring.
    Full,
    /// Sum over tree-trivial colorings and divide by `|G|` only.
    Factorized,
}

#[derive(Debug, Clone)]
pub struct ComputeOptions {
    pub strategy: Strategy,
    /// Worker threads for the coloring enumeration (minimum 1).
    pub threads: usize,
    /// Number of (coloring, gauge) pairs used to spot-check gauge invariance
    /// before the factorized path is trusted.
    pub spot_checks: usize,
    /// Seed for the spot-check RNG; fixed seed ⇒ reproducible runs.
    pub seed: u64,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            threads: 1,
            spot_checks: 4,
            seed: 0xD1A7_F00D,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateSumError {
    #[error("the weight cochain must have degree 3, got {degree}")]
    WrongDegree { degree: usize },
    #[error("the weight cochain is not a cocycle; first violated tuple: {witness:?}")]
    NotACocycle { witness: Vec<usize> },
    #[error("gauge invariance spot-check failed on coloring {index}; refusing the factorized sum")]
    GaugeCheckFailed { index: usize },
}

/// The exact value of the partition function, plus the data that went into
/// its normalization: the value equals (coloring-weighted sum) / |G|^a.
#[derive(Debug, Clone)]
pub struct InvariantValue {
    /// Canonical representative in `Q(x)/Φ_k(x)`.
    pub value: CyclotomicValue,
    /// Total number of flat colorings of the triangulation.
    pub colorings: BigUint,
    /// `|G|` of the coloring group.
    pub group_order: usize,
    /// Vertex count `a` of the triangulation (the normalization exponent).
    pub vertex_count: usize,
}

/// Total weight exponent of one coloring: `Σ_i ε_i · α[g1|g2|g3] (mod k)`.
/// The coloring's multiplicative weight is `x^(returned value)`.
pub fn weight(t: &Triangulation, alpha: &Cochain, values: &[usize]) -> usize {
    weight_signed(t, alpha, values, false)
}

fn weight_signed(t: &Triangulation, alpha: &Cochain, values: &[usize], flip: bool) -> usize {
    let k = alpha.modulus();
    let mut acc = 0usize;
    for (i, &sign) in t.orientation_signs().iter().enumerate() {
        let [e01, e12, e23] = t.consecutive_edge_ids(i);
        let a = alpha.value(&[values[e01], values[e12], values[e23]]);
        let positive = (sign > 0) != flip;
        acc += if positive { a } else { (k - a) % k };
        acc %= k;
    }
    acc
}

/// Evaluates the partition function of `t` weighted by `alpha` (whose group
/// drives the coloring enumeration).
pub fn partition_function(
    t: &Triangulation,
    alpha: &Cochain,
    opts: &ComputeOptions,
) -> Result<InvariantValue, StateSumError> {
    evaluate(t, alpha, opts, false)
}

/// The partition function of `t` with the opposite orientation (all signs
/// `ε_i` negated). Equal to the complex conjugate of the unreversed value.
pub fn partition_function_reversed(
    t: &Triangulation,
    alpha: &Cochain,
    opts: &ComputeOptions,
) -> Result<InvariantValue, StateSumError> {
    evaluate(t, alpha, opts, true)
}

fn evaluate(
    t: &Triangulation,
    alpha: &Cochain,
    opts: &ComputeOptions,
    flip: bool,
) -> Result<InvariantValue, StateSumError> {
    if alpha.degree() != 3 {
        return Err(StateSumError::WrongDegree {
            degree: alpha.degree(),
        });
    }
    if let Some(witness) = alpha.cocycle_violation() {
        return Err(StateSumError::NotACocycle { witness });
    }
    let g = alpha.group();
    let k = alpha.modulus();
    let order = BigUint::from(g.order());
    let vertices = t.vertex_count() as u32;
    let gauge_factor = order.pow(vertices - 1);

    let full = match opts.strategy {
        Strategy::Full => true,
        Strategy::Factorized => false,
        Strategy::Auto => gauge_factor <= BigUint::from(AUTO_FULL_LIMIT),
    };

    if full {
        let (counts, total) = tally(t, alpha, false, flip, opts.threads.max(1), k);
        let value = CyclotomicValue::from_counts(k, &counts)
            .div_nat(&order.pow(vertices))
            .canonical();
        Ok(InvariantValue {
            value,
            colorings: total,
            group_order: g.order(),
            vertex_count: t.vertex_count(),
        })
    } else {
        spot_check_gauge_invariance(t, alpha, opts, flip)?;
        let (counts, tree_trivial) = tally(t, alpha, true, flip, opts.threads.max(1), k);
        let value = CyclotomicValue::from_counts(k, &counts)
            .div_nat(&order)
            .canonical();
        Ok(InvariantValue {
            value,
            colorings: tree_trivial * gauge_factor,
            group_order: g.order(),
            vertex_count: t.vertex_count(),
        })
    }
}

/// Tallies `x^(w(φ))` exponents over the coloring stream (tree-trivial or
/// full), splitting the first branching edge across `threads` workers.
fn tally(
    t: &Triangulation,
    alpha: &Cochain,
    tree_trivial: bool,
    flip: bool,
    threads: usize,
    k: usize,
) -> (Vec<BigUint>, BigUint) {
    let g = alpha.group();
    let run = |worker: usize| {
        let mut counts = vec![0u128; k];
        let mut n = 0u128;
        let mut it = if tree_trivial {
            enumerate_tree_trivial(t, g)
        } else {
            enumerate_flat(t, g)
        };
        if threads > 1 {
            it = it.partitioned(worker, threads);
        }
        it.for_each_values(|values| {
            counts[weight_signed(t, alpha, values, flip)] += 1;
            n += 1;
        });
        (counts, n)
    };
    let (counts, n) = if threads <= 1 {
        run(0)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| scope.spawn(move || run(w)))
                .collect();
            let mut counts = vec![0u128; k];
            let mut n = 0u128;
            for h in handles {
                let (c, m) = h.join().expect("tally worker panicked");
                for (dst, src) in counts.iter_mut().zip(c) {
                    *dst += src;
                }
                n += m;
            }
            (counts, n)
        })
    };
    (counts.iter().map(|&c| BigUint::from(c)).collect(), BigUint::from(n))
}

/// Verifies on a few pseudo-random (coloring, gauge) pairs that the weight
/// exponent is constant on gauge orbits — the identity the factorized sum
/// rests on. Deterministic for a fixed seed.
fn spot_check_gauge_invariance(
    t: &Triangulation,
    alpha: &Cochain,
    opts: &ComputeOptions,
    flip: bool,
) -> Result<(), StateSumError> {
    if opts.spot_checks == 0 {
        return Ok(());
    }
    let g = alpha.group();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (index, coloring) in enumerate_tree_trivial(t, g)
        .take(opts.spot_checks)
        .enumerate()
    {
        let f: Vec<usize> = (0..t.vertex_count())
            .map(|_| rng.gen_range(0..g.order()))
            .collect();
        let gauged = gauge_transform(t, g, &coloring, &f);
        debug_assert!(is_flat(t, g, gauged.edge_values()));
        let w0 = weight_signed(t, alpha, coloring.edge_values(), flip);
        let w1 = weight_signed(t, alpha, gauged.edge_values(), flip);
        if w0 != w1 {
            return Err(StateSumError::GaugeCheckFailed { index });
        }
    }
    Ok(())
}
