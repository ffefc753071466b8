//! Random walk through triangulations of one manifold. Each step applies an
//! admissible 2-3, 3-2, 1-4, or 4-1 move and recomputes the invariant; the
//! walk aborts if the value ever changes.
//!
//! ```bash
//! cargo run --example bistellar_walk -- [steps] [seed]
//! ```

use dwsum::pachner::FuzzOptions;
use dwsum::{fuzz_invariance, Cochain, ComputeOptions, FiniteGroup, Triangulation};
use std::sync::Arc;

fn main() {
    let mut args = std::env::args().skip(1);
    let steps: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(25);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/rp3_11vertex.tri");
    let t = Triangulation::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let g = Arc::new(FiniteGroup::from_spec("Z2").unwrap());
    let alpha = Cochain::from_catalog("product:Z2", &g, 2).unwrap();

    let opts = FuzzOptions {
        steps,
        seed,
        kinds: vec![], // all four kinds
        compute: ComputeOptions::default(),
    };
    println!("walking {steps} moves from f-vector {:?} (seed {seed})", t.f_vector());
    let report = fuzz_invariance(&t, &alpha, &opts).expect("invariant must survive every move");
    for entry in &report.trace {
        let [v, e, f, m] = entry.f_vector;
        println!(
            "  step {:>3}  {}  →  ({v:>3}, {e:>3}, {f:>3}, {m:>3})",
            entry.step,
            entry.site.kind()
        );
    }
    let (re, im) = report.value.to_complex();
    println!(
        "value held at ≈ {re:+.4}{im:+.4}i across {} retriangulations{}",
        report.trace.len(),
        if report.stalled { " (walk stalled early)" } else { "" }
    );
}
