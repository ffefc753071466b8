//! Counts group homomorphisms out of each manifold's fundamental group.
//!
//! Flat colorings factor as |Hom(π₁, G)| · |G|^(V−1): each homomorphism
//! contributes one gauge orbit of size |G|^(V−1). Dividing the exact coloring
//! count by the gauge volume therefore recovers |Hom(π₁, G)| — a quick
//! fingerprint of the fundamental group, computed entirely combinatorially.

use dwsum::{count_flat, FiniteGroup, Triangulation};
use num_bigint::BigUint;

const FIXTURES: [&str; 6] = [
    "s3_boundary_delta4.tri",
    "s3_six_vertex.tri",
    "rp3_11vertex.tri",
    "rp3_barycentric40.tri",
    "lens3_small.tri",
    "s2xs1.tri",
];

fn main() {
    println!("{:<24} {:>6} {:>6} {:>6} {:>6} {:>6}", "fixture", "Z2", "Z3", "Z4", "Z5", "Z6");
    for fixture in FIXTURES {
        let path = format!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/{}"), fixture);
        let t = Triangulation::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
        let mut row = format!("{fixture:<24}");
        for n in 2..=6usize {
            let g = FiniteGroup::cyclic(n);
            let colorings = count_flat(&t, &g);
            let gauge = BigUint::from(n).pow(t.vertex_count() as u32 - 1);
            assert!((&colorings % &gauge) == BigUint::from(0u8));
            row.push_str(&format!(" {:>6}", colorings / &gauge));
        }
        println!("{row}");
    }
    println!("\neach column is |Hom(π₁, Z/n)|; 1 everywhere means simply connected");
}
