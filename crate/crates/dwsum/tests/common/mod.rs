//! Fixture loading plus independent oracles: a from-scratch Smith-normal-form
//! homology calculator, a brute-force flat-coloring filter, a direct
//! state-sum expansion, and a direct five-term coboundary expansion. These
//! deliberately share no code with the library paths they check.

#![allow(dead_code)]

use dwsum::{Cochain, CyclotomicValue, FiniteGroup, InvariantValue, Triangulation};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::path::PathBuf;
use std::sync::Arc;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> Triangulation {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture file readable");
    Triangulation::parse(&text).expect("fixture parses as a valid triangulation")
}

/// The exact rational constant p/q as a cyclotomic value with modulus k.
pub fn constant(k: usize, p: i64, q: i64) -> CyclotomicValue {
    let mut coeffs = vec![BigRational::zero(); k];
    coeffs[0] = BigRational::new(BigInt::from(p), BigInt::from(q));
    CyclotomicValue::from_coeffs(k, coeffs)
}

pub fn assert_cyc_eq(got: &CyclotomicValue, want: &CyclotomicValue, context: &str) {
    assert!(
        got.equal(want).expect("matching moduli"),
        "{context}: got {:?}, want {:?}",
        got.canonical().coeffs(),
        want.canonical().coeffs(),
    );
}

/// Computes Z with default options, resolving the catalog cocycle's natural
/// modulus the same way the CLI does.
pub fn z(t: &Triangulation, group_spec: &str, cocycle: &str) -> InvariantValue {
    let g = Arc::new(FiniteGroup::from_spec(group_spec).unwrap());
    let alpha = catalog(cocycle, &g);
    dwsum::partition_function(t, &alpha, &dwsum::ComputeOptions::default()).unwrap()
}

pub fn catalog(cocycle: &str, g: &Arc<FiniteGroup>) -> Cochain {
    let modulus = if cocycle == "trivial" {
        g.order()
    } else if cocycle == "product:Z2" {
        2
    } else {
        cocycle
            .strip_prefix("carry:")
            .and_then(|rest| rest.split(':').next())
            .and_then(|n| n.parse().ok())
            .expect("catalog cocycle name")
    };
    Cochain::from_catalog(cocycle, g, modulus).unwrap()
}

// ---------------------------------------------------------------------------
// oracle: brute-force coloring filter and state-sum expansion

/// Every map edges → G that satisfies the triangle rule, found by walking the
/// full |G|^E cube with an odometer. Only usable when |G|^E is small.
pub fn brute_force_flat(t: &Triangulation, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let e = t.edges().len();
    let n = g.order();
    assert!(
        (e as f64) * (n as f64).ln() <= (60000f64).ln(),
        "brute force caller exceeded the |G|^E budget"
    );
    // resolve each triangle to its three edge slots once
    let tri_slots: Vec<[usize; 3]> = t
        .triangles()
        .iter()
        .map(|tri| {
            [
                t.edge_id([tri[0], tri[1]]).unwrap(),
                t.edge_id([tri[1], tri[2]]).unwrap(),
                t.edge_id([tri[0], tri[2]]).unwrap(),
            ]
        })
        .collect();
    let mut vals = vec![0usize; e];
    let mut out = Vec::new();
    'outer: loop {
        if tri_slots
            .iter()
            .all(|&[ab, bc, ac]| g.mul(vals[ab], vals[bc]) == vals[ac])
        {
            out.push(vals.clone());
        }
        let mut i = 0;
        loop {
            if i == e {
                break 'outer;
            }
            vals[i] += 1;
            if vals[i] < n {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
    }
    out
}

/// Weight exponent of one coloring, computed directly from the definition:
/// per tetrahedron, the cocycle on the three consecutive ascending edges,
/// signed by the tetrahedron's orientation sign.
pub fn direct_weight(t: &Triangulation, alpha: &Cochain, vals: &[usize], reversed: bool) -> usize {
    let k = alpha.modulus() as i64;
    let mut w = 0i64;
    for (i, tet) in t.tets().iter().enumerate() {
        let sign = t.orientation_signs()[i] as i64 * if reversed { -1 } else { 1 };
        let e01 = t.edge_id([tet[0], tet[1]]).unwrap();
        let e12 = t.edge_id([tet[1], tet[2]]).unwrap();
        let e23 = t.edge_id([tet[2], tet[3]]).unwrap();
        w += sign * alpha.value(&[vals[e01], vals[e12], vals[e23]]) as i64;
    }
    w.rem_euclid(k) as usize
}

/// The partition function by full expansion over `brute_force_flat`.
pub fn brute_force_partition(t: &Triangulation, alpha: &Cochain, reversed: bool) -> CyclotomicValue {
    let g = alpha.group();
    let k = alpha.modulus();
    let mut counts = vec![BigUint::zero(); k];
    for vals in brute_force_flat(t, g) {
        counts[direct_weight(t, alpha, &vals, reversed)] += 1u32;
    }
    let norm = BigUint::from(g.order()).pow(t.vertex_count() as u32);
    CyclotomicValue::from_counts(k, &counts)
        .div_nat(&norm)
        .canonical()
}

/// Like `brute_force_partition` but sourcing colorings from the library
/// enumerator (for complexes too big to filter) while still accumulating
/// weights and normalization independently.
pub fn recount_partition(t: &Triangulation, alpha: &Cochain, reversed: bool) -> CyclotomicValue {
    let g = alpha.group();
    let k = alpha.modulus();
    let mut counts = vec![BigUint::zero(); k];
    for coloring in dwsum::enumerate_flat(t, g) {
        counts[direct_weight(t, alpha, coloring.edge_values(), reversed)] += 1u32;
    }
    let norm = BigUint::from(g.order()).pow(t.vertex_count() as u32);
    CyclotomicValue::from_counts(k, &counts)
        .div_nat(&norm)
        .canonical()
}

// ---------------------------------------------------------------------------
// oracle: five-term coboundary expansion

/// First tuple where the alternating five-term sum fails to vanish, expanded
/// directly from the degree-3 coboundary formula.
pub fn five_term_violation(alpha: &Cochain) -> Option<[usize; 4]> {
    let g = alpha.group();
    let n = g.order();
    let k = alpha.modulus() as i64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let sum = alpha.value(&[b, c, d]) as i64
                        - alpha.value(&[g.mul(a, b), c, d]) as i64
                        + alpha.value(&[a, g.mul(b, c), d]) as i64
                        - alpha.value(&[a, b, g.mul(c, d)]) as i64
                        + alpha.value(&[a, b, c]) as i64;
                    if sum.rem_euclid(k) != 0 {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// oracle: Smith normal form homology

/// First homology of a closed connected triangulation: (free rank, torsion
/// invariant factors > 1), from Smith normal forms of the boundary matrices.
pub fn h1(t: &Triangulation) -> (usize, Vec<u64>) {
    let edges = t.edges();
    let triangles = t.triangles();
    // boundary of an edge (u,v): v - u
    let mut d1 = vec![vec![BigInt::zero(); edges.len()]; t.vertex_count()];
    for (j, e) in edges.iter().enumerate() {
        d1[e[0]][j] -= 1;
        d1[e[1]][j] += 1;
    }
    // boundary of a triangle (a,b,c): (b,c) - (a,c) + (a,b)
    let mut d2 = vec![vec![BigInt::zero(); triangles.len()]; edges.len()];
    for (j, tri) in triangles.iter().enumerate() {
        d2[t.edge_id([tri[1], tri[2]]).unwrap()][j] += 1;
        d2[t.edge_id([tri[0], tri[2]]).unwrap()][j] -= 1;
        d2[t.edge_id([tri[0], tri[1]]).unwrap()][j] += 1;
    }
    let inv1 = smith_invariants(d1);
    let inv2 = smith_invariants(d2);
    let free = edges.len() - inv1.len() - inv2.len();
    let torsion = inv2
        .iter()
        .filter(|d| **d > BigUint::from(1u8))
        .map(|d| {
            let digits = d.to_u64_digits();
            assert_eq!(digits.len(), 1, "torsion factor fits in u64");
            digits[0]
        })
        .collect();
    (free, torsion)
}

/// Nonzero diagonal of the Smith normal form, with the divisibility chain
/// restored by pairwise gcd/lcm swaps at the end.
fn smith_invariants(mut m: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag: Vec<BigUint> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if m[r][c].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pr, pc)) => m[r][c].abs() < m[pr][pc].abs(),
                };
                if better {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        // reduce the pivot row and column; truncated division leaves
        // remainders strictly smaller than the pivot, so this terminates
        let mut clean = true;
        for r in t + 1..rows {
            if m[r][t].is_zero() {
                continue;
            }
            let q = &m[r][t] / &m[t][t];
            for c in t..cols {
                let sub = &q * &m[t][c];
                m[r][c] -= sub;
            }
            if !m[r][t].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            if m[t][c].is_zero() {
                continue;
            }
            let q = &m[t][c] / &m[t][t];
            for r in t..rows {
                let sub = &q * &m[r][t];
                m[r][c] -= sub;
            }
            if !m[t][c].is_zero() {
                clean = false;
            }
        }
        if clean {
            diag.push(m[t][t].magnitude().clone());
            t += 1;
        }
    }
    // diag(d_i) has the same invariant factors after pairwise gcd/lcm closure
    loop {
        let mut changed = false;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if (&diag[j] % &diag[i]).is_zero() {
                    continue;
                }
                let g = gcd(diag[i].clone(), diag[j].clone());
                let l = &diag[i] * &diag[j] / &g;
                diag[i] = g;
                diag[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    diag.sort();
    diag
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod selfcheck {
    use super::*;

    #[test]
    fn smith_invariants_normalize() {
        // diag(4, 6) has invariant factors (2, 12)
        let m = vec![
            vec![BigInt::from(4), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(6)],
        ];
        assert_eq!(
            smith_invariants(m),
            vec![BigUint::from(2u8), BigUint::from(12u8)]
        );
    }
}
