//! The release gate: nine numbered checks, one printed PASS/FAIL line each
//! (visible under `cargo test --test acceptance -- --nocapture`). Every check
//! compares the library against an independent oracle or a closed-form value
//! and enforces its own runtime budget.

mod common;

use common::*;
use dwsum::pachner::FuzzOptions;
use dwsum::statesum::Strategy;
use dwsum::{
    count_flat, facet_volume_alternating_sum, fuzz_invariance, partition_function, Cochain,
    ComputeOptions, FiniteGroup, RationalPoint,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

/// The fixture/theory pairs shared by the fuzz, coboundary, and relabeling
/// criteria.
fn walk_pairs() -> Vec<(&'static str, &'static str, &'static str)> {
    let mut out = Vec::new();
    for fixture in ["s3_boundary_delta4.tri", "rp3_11vertex.tri"] {
        for (group, cocycle) in [("Z2", "trivial"), ("Z2", "product:Z2"), ("Z3", "carry:3:1")] {
            out.push((fixture, group, cocycle));
        }
    }
    out
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let t = load_fixture("s3_boundary_delta4.tri");
    let out = z(&t, "Z2", "trivial");
    if !out.value.equal(&constant(2, 1, 2)).unwrap() {
        return Err(format!("value {:?} != 1/2", out.value.canonical().coeffs()));
    }
    if out.colorings != BigUint::from(16u8) || out.group_order != 2 || out.vertex_count != 5 {
        return Err(format!(
            "normalization mismatch: {} colorings over {}^{}",
            out.colorings, out.group_order, out.vertex_count
        ));
    }
    let dt = start.elapsed();
    if dt.as_secs_f64() >= 1.0 {
        return Err(format!("took {dt:.2?}, budget is 1 s"));
    }
    Ok(format!(
        "Z(S3; Z/2, trivial) = 1/2 exactly, 16 colorings over 2^5, {dt:.2?}"
    ))
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let t = load_fixture("rp3_11vertex.tri");
    let g = Arc::new(FiniteGroup::from_spec("Z2").unwrap());
    let alpha = catalog("trivial", &g);
    let opts = ComputeOptions {
        strategy: Strategy::Factorized,
        ..ComputeOptions::default()
    };
    let out = partition_function(&t, &alpha, &opts).map_err(|e| e.to_string())?;
    if !out.value.equal(&constant(2, 1, 1)).unwrap() {
        return Err(format!("value {:?} != 1", out.value.canonical().coeffs()));
    }
    // cross-check against integer homology: |Hom(H1, Z/2)| / |Z/2| must be 1
    let (free, torsion) = h1(&t);
    if (free, torsion.clone()) != (0, vec![2]) {
        return Err(format!("H1 = (free {free}, torsion {torsion:?}), expected (0, [2])"));
    }
    let homs: u64 = torsion.iter().map(|d| gcd_u64(*d, 2)).product::<u64>() * 2u64.pow(free as u32);
    if homs != 2 {
        return Err(format!("homology predicts {homs} colorings classes, expected 2"));
    }
    let dt = start.elapsed();
    if dt.as_secs_f64() >= 30.0 {
        return Err(format!("took {dt:.2?}, budget is 30 s"));
    }
    Ok(format!(
        "Z(RP3; Z/2, trivial) = 1 = |Hom(Z/2, Z/2)|/2, H1 torsion [2] confirmed, {dt:.2?}"
    ))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn criterion_3() -> Result<String, String> {
    let mut tables = 0usize;
    let mut mismatches = 0usize;
    let mut check = |alpha: &Cochain, label: &str| {
        tables += 1;
        let lib = alpha.cocycle_violation().is_none();
        let oracle = five_term_violation(alpha).is_none();
        if !lib || !oracle || lib != oracle {
            eprintln!("cocycle check disagreement at {label}: library {lib}, oracle {oracle}");
            mismatches += 1;
        }
    };
    for n in 2..=6usize {
        let g = Arc::new(FiniteGroup::cyclic(n));
        check(&catalog("trivial", &g), &format!("Z{n} trivial"));
        for p in 0..n {
            let name = format!("carry:{n}:{p}");
            check(&catalog(&name, &g), &format!("Z{n} {name}"));
        }
    }
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    check(&catalog("product:Z2", &z2), "Z2 product:Z2");
    if mismatches != 0 {
        return Err(format!("{mismatches} mismatches across {tables} tables"));
    }
    Ok(format!(
        "{tables} cochain tables agree with the direct five-term expansion, 0 mismatches"
    ))
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let mut total_moves = 0usize;
    for (i, (fixture, group, cocycle)) in walk_pairs().into_iter().enumerate() {
        let t = load_fixture(fixture);
        let g = Arc::new(FiniteGroup::from_spec(group).unwrap());
        let alpha = catalog(cocycle, &g);
        let opts = FuzzOptions {
            steps: 100,
            seed: 100 + i as u64,
            kinds: vec![],
            compute: ComputeOptions::default(),
        };
        let report = fuzz_invariance(&t, &alpha, &opts)
            .map_err(|e| format!("{fixture}/{group}/{cocycle}: {e}"))?;
        if report.stalled || report.trace.len() != 100 {
            return Err(format!(
                "{fixture}/{group}/{cocycle}: applied {} of 100 moves",
                report.trace.len()
            ));
        }
        let base = partition_function(&t, &alpha, &ComputeOptions::default()).unwrap();
        if !report.value.equal(&base.value).unwrap() {
            return Err(format!("{fixture}/{group}/{cocycle}: walk value drifted"));
        }
        total_moves += report.trace.len();
    }
    let dt = start.elapsed();
    if dt.as_secs_f64() >= 600.0 {
        return Err(format!("took {dt:.2?}, budget is 10 min"));
    }
    Ok(format!(
        "{total_moves} moves across 6 fixture/theory pairs, invariant stable after every move, {dt:.2?}"
    ))
}

fn criterion_5() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0usize;
    for (fixture, group, cocycle) in walk_pairs() {
        let t = load_fixture(fixture);
        let g = Arc::new(FiniteGroup::from_spec(group).unwrap());
        let alpha = catalog(cocycle, &g);
        let base = partition_function(&t, &alpha, &ComputeOptions::default()).unwrap();
        for _ in 0..20 {
            let values: Vec<usize> = (0..g.order().pow(2))
                .map(|_| rng.gen_range(0..alpha.modulus()))
                .collect();
            let beta = Cochain::from_values(g.clone(), alpha.modulus(), 2, values).unwrap();
            let shifted = alpha.perturb_by_coboundary(&beta).unwrap();
            let out = partition_function(&t, &shifted, &ComputeOptions::default()).unwrap();
            if !out.value.equal(&base.value).unwrap() {
                return Err(format!("{fixture}/{group}/{cocycle}: coboundary shifted Z"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} coboundary perturbations left every invariant unchanged"
    ))
}

fn criterion_6() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0usize;
    for (fixture, group, cocycle) in walk_pairs() {
        let t = load_fixture(fixture);
        let base = z(&t, group, cocycle);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..t.vertex_count()).collect();
            perm.shuffle(&mut rng);
            let out = z(&t.relabel(&perm).unwrap(), group, cocycle);
            if !out.value.equal(&base.value).unwrap() || out.colorings != base.colorings {
                return Err(format!("{fixture}/{group}/{cocycle}: relabeling moved Z"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} vertex relabelings left every invariant unchanged"
    ))
}

fn criterion_7() -> Result<String, String> {
    for dim in 1..=4usize {
        let mut rng = ChaCha8Rng::seed_from_u64(dim as u64);
        for sample in 0..200 {
            let points: Vec<RationalPoint> = (0..dim + 2)
                .map(|_| {
                    (0..dim)
                        .map(|_| {
                            BigRational::new(
                                BigInt::from(rng.gen_range(-12i64..=12)),
                                BigInt::from(rng.gen_range(1i64..=8)),
                            )
                        })
                        .collect()
                })
                .collect();
            let sum = facet_volume_alternating_sum(&points).map_err(|e| e.to_string())?;
            if !sum.is_zero() {
                return Err(format!("dim {dim}, sample {sample}: alternating sum {sum}"));
            }
        }
    }
    Ok("alternating facet volumes cancel on 200 random point sets in each of dims 1-4".into())
}

fn criterion_8() -> Result<String, String> {
    let fixtures = [
        "s3_boundary_delta4.tri",
        "s3_six_vertex.tri",
        "rp3_11vertex.tri",
        "rp3_barycentric40.tri",
        "lens3_small.tri",
        "s2xs1.tri",
    ];
    let budget = 3f64.powi(10).ln();
    let mut eligible = 0usize;
    for fixture in fixtures {
        let t = load_fixture(fixture);
        for order in 2..=6usize {
            if (t.edges().len() as f64) * (order as f64).ln() > budget + 1e-9 {
                continue;
            }
            eligible += 1;
            let g = FiniteGroup::cyclic(order);
            let brute = brute_force_flat(&t, &g).len();
            let pruned = count_flat(&t, &g);
            if BigUint::from(brute) != pruned {
                return Err(format!(
                    "{fixture}/Z{order}: brute force found {brute}, pruned search {pruned}"
                ));
            }
        }
    }
    if eligible == 0 {
        return Err("no fixture/group pair fits the brute-force budget".into());
    }
    Ok(format!(
        "{eligible} fixture/group pairs within |G|^E <= 3^10: pruned counts match brute force"
    ))
}

fn criterion_9() -> Result<String, String> {
    let fixtures = [
        ("s3_boundary_delta4.tri", "Z2", "trivial"),
        ("s3_six_vertex.tri", "Z2", "trivial"),
        ("rp3_11vertex.tri", "Z2", "trivial"),
        ("rp3_barycentric40.tri", "Z2", "trivial"),
        ("lens3_small.tri", "Z2", "trivial"),
        ("s2xs1.tri", "Z2", "trivial"),
        ("lens3_small.tri", "Z3", "carry:3:1"),
    ];
    for (fixture, group, cocycle) in fixtures {
        let path = fixture_path(fixture);
        let run = |threads: &str| {
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_dw"))
                .args([
                    "compute",
                    "--manifold",
                    path.to_str().unwrap(),
                    "--group",
                    group,
                    "--cocycle",
                    cocycle,
                    "--threads",
                    threads,
                ])
                .env_remove("DW_THREADS")
                .output()
                .expect("dw runs");
            (out.status.code(), out.stdout)
        };
        let one = run("1");
        let eight = run("8");
        if one.0 != Some(0) || eight.0 != Some(0) {
            return Err(format!("{fixture}: compute exited nonzero"));
        }
        if one.1 != eight.1 {
            return Err(format!("{fixture}: outputs differ between 1 and 8 threads"));
        }
    }
    Ok("compute output is byte-identical for --threads 1 and --threads 8 on all fixtures".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(usize, fn() -> Result<String, String>)> = vec![
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failures = Vec::new();
    for (number, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("ACCEPTANCE {number} PASS — {detail}"),
            Err(reason) => {
                println!("ACCEPTANCE {number} FAIL — {reason}");
                failures.push(number);
            }
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
