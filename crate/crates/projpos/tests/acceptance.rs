//! Acceptance gate: eleven end-to-end criteria, one test each, printing a
//! single `criterion NN (...): PASS/FAIL` line (visible with
//! `cargo test --test acceptance -- --nocapture`) before asserting.
//!
//! Tolerances, grids, and sample counts in this file are contractual —
//! they are the published reproduction claims of the library, not tuning
//! knobs.

use std::time::Instant;

use projpos::linalg::{self, HermitianMatrix};
use projpos::oracle;
use projpos::rng::Xorshift64Star;
use projpos::spaces::{Element, Exponent, SpaceDescriptor};
use projpos::states::{cone_member, min_pairing, minimal_state, StateSetSpec};
use projpos::theorems::{
    self, l1_vs_linf_demo, sigma_sequence, verify_comparability, verify_embedding,
    verify_hilbert_closed_form, verify_lp2_cone, verify_m4, verify_oscillation,
    verify_schatten_chain, verify_singleton_state,
};
use projpos::{decomp, Complex};

const SEED: u64 = 0x5EED_2026;

fn conclude(num: usize, label: &str, ok: bool, detail: &str) {
    println!(
        "criterion {num:02} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {num:02} ({label}) failed: {detail}");
}

#[test]
fn criterion_01_plane_cone_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for pv in [1.0, 1.5, 2.0, 3.0] {
        let report = verify_lp2_cone(Exponent::new(pv).unwrap(), 1000, SEED, None).unwrap();
        failures.extend(report.failures);
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed.as_secs_f64() < 2.0;
    conclude(
        1,
        "l^p(2) cone equals the quadrant at eps = 2^(1/p)",
        ok,
        &format!("failures: {failures:?}, elapsed: {elapsed:?}"),
    );
}

#[test]
fn criterion_02_singleton_threshold_state_set() {
    let mut failures = Vec::new();
    let mut center_defect = 0.0f64;
    for pv in [1.5, 2.0, 4.0] {
        let q = pv / (pv - 1.0);
        for n in 2..=6usize {
            let space =
                SpaceDescriptor::weighted_vector(Exponent::new(pv).unwrap(), vec![1.0; n]).unwrap();
            // The center of S_1 is the conjugate unit vector n^(-1/q) * 1.
            let spec = StateSetSpec::new(space.clone(), 1.0).unwrap();
            let center = minimal_state(&spec).unwrap();
            let expected = (n as f64).powf(-1.0 / q);
            if let Element::Vector(v) = &center {
                for c in v {
                    center_defect = center_defect.max((c - expected).abs());
                }
            }
            let report = verify_singleton_state(space, SEED, None).unwrap();
            failures.extend(report.failures);
        }
    }
    let ok = failures.is_empty() && center_defect <= 1e-6;
    conclude(
        2,
        "threshold state set is the singleton {e_q}",
        ok,
        &format!("failures: {failures:?}, center defect: {center_defect:.3e}"),
    );
}

#[test]
fn criterion_03_trace_norm_chain() {
    let mut failures = Vec::new();
    for n in [2usize, 3, 4] {
        for pv in [1.0, 2.0, 3.0] {
            let report =
                verify_schatten_chain(n, Exponent::new(pv).unwrap(), n as f64, 200, SEED, None)
                    .unwrap();
            failures.extend(report.failures);
        }
    }
    // The pinned instance, asserted here independently of the verifier:
    // diag(2,0,1) has trace-class support value exactly -1 with witness
    // pairing -1.
    let space = SpaceDescriptor::matrix(Exponent::new(1.0).unwrap(), 3).unwrap();
    let spec = StateSetSpec::new(space.clone(), 1.0).unwrap();
    let x = Element::Matrix(HermitianMatrix::from_diag(&[2.0, 0.0, 1.0]).unwrap());
    let cert = cone_member(&spec, &x, 1e-9).unwrap();
    let margin_ok = (cert.margin + 1.0).abs() <= 1e-9;
    let pairing_ok = match &cert.witness {
        Some(w) => (space.pair(&x, w).unwrap() + 1.0).abs() <= 1e-9,
        None => false,
    };
    let ok = failures.is_empty() && margin_ok && pairing_ok;
    conclude(
        3,
        "pointwise cone sits inside every Schatten cone",
        ok,
        &format!(
            "failures: {failures:?}, pinned margin {:.12} (ok: {margin_ok}), witness pairing ok: {pairing_ok}",
            cert.margin
        ),
    );
}

#[test]
fn criterion_04_frobenius_closed_form() {
    let mut failures = Vec::new();
    for n in 2..=6usize {
        let report = verify_hilbert_closed_form(n, 500, SEED, None).unwrap();
        failures.extend(report.failures);
    }
    conclude(
        4,
        "Frobenius cone membership reduces to one trace inequality",
        failures.is_empty(),
        &format!("failures: {failures:?}"),
    );
}

#[test]
fn criterion_05_covering_constant_sequence() {
    let (report, values) = sigma_sequence(50).unwrap();
    let first_exact = (values[0] - 25.0 / 13.0).abs() <= 1e-15;
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let ok = report.passed() && first_exact && decreasing && values[49] < values[0];
    conclude(
        5,
        "covering-constant recursion matches its closed form",
        ok,
        &format!(
            "failures: {:?}, sigma_1 = {:.17}, sigma_50 = {:.17}",
            report.failures, values[0], values[49]
        ),
    );
}

#[test]
fn criterion_06_orthogonal_expansions() {
    let mut rng = Xorshift64Star::for_stream(SEED, "acceptance-expansion");
    let mut worst_defect = 0.0f64;
    let mut witness_failures = 0usize;
    for idx in 0..500 {
        let n = 2 + idx % 15; // sizes 2..=16
        let mu = HermitianMatrix::random(n, &mut rng).unwrap();
        let expansion = decomp::orthogonal_expansion(&mu).unwrap();
        worst_defect = worst_defect.max(expansion.defect);
        if decomp::orthogonality_witness(&expansion.mu_plus, &expansion.mu_minus, 1e-8).is_err() {
            witness_failures += 1;
        }
    }
    let m4 = verify_m4(SEED).unwrap();
    let ok = worst_defect <= 1e-10 && witness_failures == 0 && m4.passed();
    conclude(
        6,
        "expansions are norm-additive with orthogonality witnesses",
        ok,
        &format!(
            "worst defect {worst_defect:.3e}, witness failures {witness_failures}, fixture failures: {:?}",
            m4.failures
        ),
    );
}

#[test]
fn criterion_07_oscillation_equivalences() {
    let report = verify_oscillation(1000, SEED).unwrap();
    conclude(
        7,
        "three pointwise-positivity routes agree",
        report.passed(),
        &format!("failures: {:?}", report.failures),
    );
}

#[test]
fn criterion_08_block_positivity_criterion() {
    // 21^3 grid over (a1, a2, |b|) in [0, 2]^3; the closed-form test must
    // match the eigenvalue test everywhere at tolerance 1e-9. A fixed
    // nontrivial phase exercises the complex path without changing |b|.
    let phase = Complex::new(0.7f64.cos(), 0.7f64.sin());
    let mut mismatches = Vec::new();
    for i in 0..21 {
        for j in 0..21 {
            for k in 0..21 {
                let a1 = i as f64 * 0.1;
                let a2 = j as f64 * 0.1;
                let b = phase * (k as f64 * 0.1);
                let analytic = linalg::block2_positive(a1, a2, b);
                let block = HermitianMatrix::new(
                    2,
                    vec![
                        Complex::new(a1, 0.0),
                        b,
                        b.conj(),
                        Complex::new(a2, 0.0),
                    ],
                )
                .unwrap();
                let lambda_min = block.eigh().unwrap().eigenvalues[0];
                let spectral = lambda_min >= -1e-9;
                if analytic != spectral {
                    mismatches.push((a1, a2, b.norm(), lambda_min));
                }
            }
        }
    }
    conclude(
        8,
        "2x2 block positivity criterion equals the eigenvalue test",
        mismatches.is_empty(),
        &format!("mismatches: {mismatches:?}"),
    );
}

#[test]
fn criterion_09_solver_vs_oracle() {
    // Frozen 60-instance grid: for each exponent, six weighted-vector and
    // six matrix problems with seeded random inputs; budget 10^4.
    let start = Instant::now();
    let exponents = [
        Exponent::new(1.0).unwrap(),
        Exponent::new(1.5).unwrap(),
        Exponent::new(2.0).unwrap(),
        Exponent::new(3.0).unwrap(),
        Exponent::Infinity,
    ];
    let vector_grid: [(usize, bool, f64); 6] = [
        (2, true, 1.25),
        (3, false, 1.25),
        (4, false, 2.0),
        (2, false, 2.0),
        (3, true, 2.0),
        (4, true, 1.25),
    ];
    let matrix_grid: [(usize, f64); 6] =
        [(2, 1.25), (2, 2.0), (3, 1.25), (3, 2.0), (2, 1.5), (3, 1.5)];
    let mut rng = Xorshift64Star::for_stream(SEED, "acceptance-grid");
    let mut count = 0usize;
    let mut violations = Vec::new();
    for p in exponents {
        for (n, uniform, eps) in vector_grid {
            let weights: Vec<f64> = if uniform {
                vec![1.0; n]
            } else {
                (0..n).map(|_| rng.uniform_in(0.4, 2.2)).collect()
            };
            let space = SpaceDescriptor::weighted_vector(p, weights).unwrap();
            let spec = StateSetSpec::new(space, eps).unwrap();
            let x = Element::Vector((0..n).map(|_| rng.normal()).collect());
            check_against_oracle(&spec, &x, count, &mut violations);
            count += 1;
        }
        for (n, eps) in matrix_grid {
            let space = SpaceDescriptor::matrix(p, n).unwrap();
            let spec = StateSetSpec::new(space, eps).unwrap();
            let x = Element::Matrix(HermitianMatrix::random(n, &mut rng).unwrap());
            check_against_oracle(&spec, &x, count, &mut violations);
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = count == 60 && violations.is_empty() && elapsed.as_secs_f64() < 60.0;
    conclude(
        9,
        "solver margins agree with the search oracle",
        ok,
        &format!("instances: {count}, violations: {violations:?}, elapsed: {elapsed:?}"),
    );
}

fn check_against_oracle(
    spec: &StateSetSpec,
    x: &Element,
    idx: usize,
    violations: &mut Vec<String>,
) {
    let solver = min_pairing(spec, x).unwrap().margin;
    let estimate = oracle::randomized_min_pairing(spec, x, 10_000, SEED ^ idx as u64)
        .unwrap()
        .value;
    if solver > estimate + 1e-9 {
        violations.push(format!(
            "instance {idx}: solver {solver:.12} beats the oracle upper bound {estimate:.12}"
        ));
    }
    if estimate - solver > 1e-3 {
        violations.push(format!(
            "instance {idx}: oracle {estimate:.12} trails the solver {solver:.12} by {:.3e}",
            estimate - solver
        ));
    }
}

#[test]
fn criterion_10_embedding_constants() {
    let pairs = [
        (Exponent::new(1.0).unwrap(), Exponent::new(2.0).unwrap()),
        (Exponent::new(2.0).unwrap(), Exponent::new(4.0).unwrap()),
        (Exponent::new(1.0).unwrap(), Exponent::Infinity),
    ];
    let mut failures = Vec::new();
    for (p, l) in pairs {
        for n in [2usize, 3, 4] {
            let report = verify_embedding(n, p, l, 200, SEED, None).unwrap();
            failures.extend(report.failures);
        }
    }
    conclude(
        10,
        "Schatten scales embed with constant n^(1/p - 1/l)",
        failures.is_empty(),
        &format!("failures: {failures:?}"),
    );
}

#[test]
fn criterion_11_signed_step_function_demo() {
    let report = l1_vs_linf_demo(1000, 2.0, None).unwrap();
    conclude(
        11,
        "signed step function joins the weighted-L1 cone",
        report.passed(),
        &format!("failures: {:?}, notes: {:?}", report.failures, report.notes),
    );
}

// Sanity companion (not a numbered criterion): the comparability verifier
// used in the default dispatch passes on its pinned grid, so `report-all`
// stays green end to end.
#[test]
fn companion_comparability_grid_passes() {
    let sufficiency =
        verify_comparability(&[1.0, 1.0], Exponent::new(1.0).unwrap(), 2.0, 200, SEED, None)
            .unwrap();
    let probe =
        verify_comparability(&[1.0, 1.0, 1.0], Exponent::new(2.0).unwrap(), 1.5, 200, SEED, None)
            .unwrap();
    let found = probe.notes.iter().any(|n| n.contains("witness found"));
    assert!(
        sufficiency.passed() && probe.passed() && found,
        "sufficiency: {:?}, probe: {:?} (notes {:?})",
        sufficiency.failures,
        probe.failures,
        probe.notes
    );
    let _ = theorems::VERIFIER_IDS;
}
