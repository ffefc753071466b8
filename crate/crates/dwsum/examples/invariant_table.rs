//! Evaluates every bundled triangulation against a small catalog of theories
//! and prints the values side by side.
//!
//! ```bash
//! cargo run --example invariant_table
//! ```

use dwsum::cyclotomic::rational_to_string;
use dwsum::{partition_function, Cochain, ComputeOptions, CyclotomicValue, FiniteGroup, Triangulation};
use num_traits::Zero;
use std::sync::Arc;

const FIXTURES: [&str; 6] = [
    "s3_boundary_delta4.tri",
    "s3_six_vertex.tri",
    "rp3_11vertex.tri",
    "rp3_barycentric40.tri",
    "lens3_small.tri",
    "s2xs1.tri",
];

// (group spec, catalog cocycle, coefficient modulus)
const THEORIES: [(&str, &str, usize); 4] = [
    ("Z2", "trivial", 2),
    ("Z2", "product:Z2", 2),
    ("Z3", "carry:3:1", 3),
    ("Z4", "carry:4:1", 4),
];

fn load(name: &str) -> Triangulation {
    let path = format!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/{}"), name);
    Triangulation::parse(&std::fs::read_to_string(path).expect("fixture exists"))
        .expect("fixture is a closed oriented 3-manifold")
}

/// Renders canonical coefficients as a polynomial in the root of unity x.
fn show(value: &CyclotomicValue) -> String {
    let canonical = value.canonical();
    let mut terms = Vec::new();
    for (i, c) in canonical.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = rational_to_string(c);
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}·x"),
            _ => format!("{coeff}·x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() {
    let opts = ComputeOptions::default();
    for fixture in FIXTURES {
        let t = load(fixture);
        let (v, e, f, m) = t.f_vector();
        println!("{fixture}  (vertices {v}, edges {e}, triangles {f}, tets {m})");
        for (group, cocycle, modulus) in THEORIES {
            let g = Arc::new(FiniteGroup::from_spec(group).unwrap());
            let alpha = Cochain::from_catalog(cocycle, &g, modulus).unwrap();
            let out = partition_function(&t, &alpha, &opts).unwrap();
            let (re, im) = out.value.to_complex();
            println!(
                "  {group:<3} {cocycle:<11}  Z = {:<22} ≈ {re:+.4}{im:+.4}i   ({} colorings)",
                show(&out.value),
                out.colorings
            );
        }
        println!();
    }
}
