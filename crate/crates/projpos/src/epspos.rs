//! Pointwise eps-positivity, log-oscillation, and their equivalence with
//! the state-pairing test.
//!
//! An element `x` of a sup-norm space (hermitian matrix with the operator
//! norm, or a real function on finitely many points) is *eps-positive* when
//!
//! ```text
//! x >= ||x|| * (eps - 1)/(eps + 1) * e,
//! ```
//!
//! i.e. its smallest eigenvalue (or value) stays above a fraction of its
//! largest magnitude. At `eps = 1` this is ordinary positivity; as `eps`
//! grows the condition tightens, so the eps-positive sets shrink and every
//! nonzero member at `eps > 1` is strictly positive definite (invertible).
//!
//! For strictly positive functions the condition is a bound on the
//! *oscillation of the logarithm*: `max ln f - min ln f <= ln((eps+1)/(eps-1))`.
//! [`check_equivalences`] cross-checks three routes on the same input —
//! the eigenvalue test, the oscillation test, and nonnegativity of the
//! minimal pairing against the generalized state set `S_eps` — which agree
//! up to shared boundary tolerance.

use crate::spaces::{Element, Exponent, SpaceDescriptor};
use crate::states::{min_pairing, StateSetSpec};
use crate::tol;
use crate::{Error, Result};

/// A real function on finitely many points, the commutative counterpart of
/// a hermitian matrix (its "spectrum" is just its value multiset).
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteFunction {
    values: Vec<f64>,
}

impl DiscreteFunction {
    /// Validates finiteness and nonemptiness.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("a discrete function needs at least one point"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("discrete function values must be finite"));
        }
        Ok(DiscreteFunction { values })
    }

    /// The sample values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// View as an element of the sup-norm space on the same points.
    pub fn element(&self) -> Element {
        Element::Vector(self.values.clone())
    }
}

/// The ratio `(eps - 1)/(eps + 1)` after validating `eps >= 1`.
fn positivity_ratio(eps: f64) -> Result<f64> {
    if !eps.is_finite() || eps < 1.0 {
        return Err(Error::domain(format!(
            "eps-positivity needs a finite eps >= 1 (got {eps})"
        )));
    }
    Ok((eps - 1.0) / (eps + 1.0))
}

/// Smallest and largest-magnitude "eigenvalues" of an element: actual
/// eigenvalues for matrices, the value range for vectors.
fn spectral_range(x: &Element) -> Result<(f64, f64)> {
    match x {
        Element::Vector(v) => {
            if v.is_empty() {
                return Err(Error::input("empty vector"));
            }
            let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let max_abs = v.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
            Ok((min, max_abs))
        }
        Element::Matrix(m) => {
            let eigs = m.eigh()?.eigenvalues;
            let min = eigs[0];
            let max_abs = eigs.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
            Ok((min, max_abs))
        }
    }
}

/// Tests `lambda_min(x) >= ((eps-1)/(eps+1)) * max |lambda|` with tolerance
/// 1e-10 (relative to the spectral scale). Accepts hermitian matrices and
/// vectors of function values alike; at `eps = 1` this is the ordinary
/// positivity test.
///
/// # Errors
///
/// [`Error::Domain`] for `eps < 1` or non-finite `eps`.
pub fn is_eps_positive(x: &Element, eps: f64) -> Result<bool> {
    let ratio = positivity_ratio(eps)?;
    let (min, max_abs) = spectral_range(x)?;
    Ok(min >= ratio * max_abs - 1e-10 * (1.0 + max_abs))
}

/// Oscillation of `ln f`: `max ln f - min ln f` over the points.
///
/// Conventions for boundary inputs: the zero function has oscillation `0`
/// (it passes every budget); a zero value next to a nonzero one yields
/// `+inf` (the log gap is unbounded).
///
/// # Errors
///
/// [`Error::Domain`] on negative values — the oscillation calculus applies
/// to nonnegative functions only.
pub fn oscillation_of_log(f: &DiscreteFunction) -> Result<f64> {
    if let Some(bad) = f.values().iter().find(|v| **v < 0.0) {
        return Err(Error::domain(format!(
            "log-oscillation needs a nonnegative function (found {bad})"
        )));
    }
    let positive: Vec<f64> = f.values().iter().cloned().filter(|v| *v > 0.0).collect();
    if positive.is_empty() {
        return Ok(0.0); // identically zero
    }
    if positive.len() < f.values().len() {
        return Ok(f64::INFINITY); // zero next to nonzero
    }
    let max = positive.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = positive.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(max.ln() - min.ln())
}

/// The oscillation budget `c_eps = ln((eps+1)/(eps-1))`, with `c_1 = +inf`.
pub fn oscillation_budget(eps: f64) -> Result<f64> {
    positivity_ratio(eps)?; // validates eps >= 1
    if eps == 1.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(((eps + 1.0) / (eps - 1.0)).ln())
    }
}

/// True when `oscillation_of_log(f) <= c_eps` (inclusive, with a small
/// relative slack so boundary instances like `f(t) = 3^t` at `eps = 2`
/// pass). The zero function passes every budget; at `eps = 1` everything
/// nonnegative passes (`c_1 = +inf`).
pub fn has_eps_oscillation(f: &DiscreteFunction, eps: f64) -> Result<bool> {
    let budget = oscillation_budget(eps)?;
    if budget.is_infinite() {
        return Ok(true);
    }
    let omega = oscillation_of_log(f)?;
    Ok(omega <= budget + 1e-12 * (1.0 + budget))
}

/// Three-route verdict on the same function; see [`check_equivalences`].
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    /// Route (i): the eigenvalue/value-range test.
    pub eps_positive: bool,
    /// Route (ii): the log-oscillation test.
    pub eps_oscillation: bool,
    /// Route (iii): `min <f, S_eps> >= 0` on the sup-norm space.
    pub pairing_nonnegative: bool,
    /// The pairing margin behind route (iii).
    pub pairing_margin: f64,
    /// The oscillation behind route (ii).
    pub oscillation: f64,
    /// The budget `c_eps`.
    pub oscillation_bound: f64,
    /// False when two routes disagree decisively (both outside the shared
    /// boundary band); boundary-band verdicts are compatible with anything.
    pub consistent: bool,
}

/// Decisive three-valued verdict from a signed margin: `Some(true)` above
/// the band, `Some(false)` below, `None` inside (boundary).
fn decisive(margin: f64, band: f64) -> Option<bool> {
    if margin > band {
        Some(true)
    } else if margin < -band {
        Some(false)
    } else {
        None
    }
}

/// Runs the three equivalent characterizations of eps-positivity on a
/// nonnegative-spectrum question — eigenvalue test, log-oscillation test,
/// and the minimal state pairing on `l^inf(n)` — and reports whether they
/// agree. Mathematically the three coincide; numerically, verdicts may
/// straddle a boundary, so consistency is asserted outside a shared
/// tolerance band only.
pub fn check_equivalences(f: &DiscreteFunction, eps: f64) -> Result<EquivalenceReport> {
    let ratio = positivity_ratio(eps)?;
    let element = f.element();
    let n = f.values().len();

    // Route (i) with its margin.
    let (min, max_abs) = spectral_range(&element)?;
    let positivity_margin = min - ratio * max_abs;
    let eps_positive = positivity_margin >= -1e-10 * (1.0 + max_abs);

    // Route (ii). Negative values are a domain error for the standalone
    // oscillation functions; here they mean "not positive at any eps", so
    // the route fails decisively instead of erroring (routes (i)/(iii)
    // handle signed functions fine).
    let has_negative = f.values().iter().any(|v| *v < 0.0);
    let oscillation = if has_negative {
        f64::INFINITY
    } else {
        oscillation_of_log(f)?
    };
    let oscillation_bound = oscillation_budget(eps)?;
    let eps_oscillation = if has_negative {
        false
    } else if oscillation_bound.is_infinite() {
        true
    } else {
        oscillation <= oscillation_bound + 1e-12 * (1.0 + oscillation_bound)
    };

    // Route (iii): the sup-norm space on n points with unit weights.
    let space = SpaceDescriptor::weighted_vector(Exponent::Infinity, vec![1.0; n])?;
    let spec = StateSetSpec::new(space, eps)?;
    let pairing_margin = min_pairing(&spec, &element)?.margin;
    let pairing_nonnegative = pairing_margin >= -tol::DEFAULT_TOL * (1.0 + max_abs);

    // Consistency: compare decisive verdicts only.
    let band_i = tol::DEFAULT_TOL * (1.0 + max_abs);
    let band_iii = tol::DEFAULT_TOL * (1.0 + max_abs);
    let v_i = decisive(positivity_margin, band_i);
    let v_ii = if has_negative {
        Some(false)
    } else if oscillation_bound.is_infinite() {
        Some(true)
    } else {
        decisive(
            oscillation_bound - oscillation,
            tol::DEFAULT_TOL * (1.0 + oscillation_bound),
        )
    };
    let v_iii = decisive(pairing_margin, band_iii);
    let verdicts = [v_i, v_ii, v_iii];
    let mut consistent = true;
    for a in 0..3 {
        for b in (a + 1)..3 {
            if let (Some(x), Some(y)) = (verdicts[a], verdicts[b]) {
                if x != y {
                    consistent = false;
                }
            }
        }
    }

    Ok(EquivalenceReport {
        eps_positive,
        eps_oscillation,
        pairing_nonnegative,
        pairing_margin,
        oscillation,
        oscillation_bound,
        consistent,
    })
}

/// Builds the combination `(1 + s) phi - s psi` of two base states and
/// verifies it lands in `S_eps`: these combinations sweep exactly the
/// states of the eps-cone as `s` ranges over `[0, (eps-1)/2]` on sup-norm
/// spaces.
///
/// # Errors
///
/// [`Error::Domain`] when `s` is outside `[0, (eps-1)/2]`, when either
/// input is not a base state (`<e, .> = 1`, dual norm `<= 1`), or when the
/// result fails its `S_eps` audit (cannot happen for valid inputs, by the
/// triangle inequality `||(1+s) phi - s psi|| <= 1 + 2s <= eps`).
pub fn build_a_eps_element(
    spec: &StateSetSpec,
    phi: &Element,
    psi: &Element,
    s: f64,
) -> Result<Element> {
    let eps = spec.eps();
    let s_max = 0.5 * (eps - 1.0);
    if !s.is_finite() || s < -tol::THRESHOLD_SLACK || s > s_max + tol::THRESHOLD_SLACK {
        return Err(Error::domain(format!(
            "mixing weight s = {s} outside [0, {s_max}] for eps = {eps}"
        )));
    }
    let space = spec.space();
    let e = space.unit();
    for (name, state) in [("phi", phi), ("psi", psi)] {
        space.check_element(state)?;
        let hyper = space.pair(&e, state)?;
        let ball = space.dual_norm(state)?;
        if (hyper - 1.0).abs() > tol::PIPELINE_CROSS_CHECK {
            return Err(Error::domain(format!(
                "{name} is not a state: <e, {name}> = {hyper}, expected 1"
            )));
        }
        if ball > 1.0 + tol::PIPELINE_CROSS_CHECK {
            return Err(Error::domain(format!(
                "{name} is not a base state: dual norm {ball} > 1"
            )));
        }
    }
    let result = phi.linear_combination(1.0 + s, psi, -s);
    let hyper = space.pair(&e, &result)?;
    let ball = space.dual_norm(&result)?;
    if (hyper - 1.0).abs() > tol::PIPELINE_CROSS_CHECK || ball > eps * (1.0 + 1e-9) {
        return Err(Error::domain(format!(
            "combined element failed the S_eps audit: hyperplane {hyper}, norm {ball}"
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::HermitianMatrix;
    use crate::rng::Xorshift64Star;

    fn func(values: &[f64]) -> DiscreteFunction {
        DiscreteFunction::new(values.to_vec()).unwrap()
    }

    #[test]
    fn eps_one_is_ordinary_positivity() {
        let mut rng = Xorshift64Star::new(31);
        for _ in 0..20 {
            let a = HermitianMatrix::random(3, &mut rng).unwrap();
            let lmin = a.eigh().unwrap().eigenvalues[0];
            let verdict = is_eps_positive(&Element::Matrix(a), 1.0).unwrap();
            if lmin > 1e-8 {
                assert!(verdict);
            }
            if lmin < -1e-8 {
                assert!(!verdict);
            }
        }
        // Shifted PSD matrices are 1-positive.
        for _ in 0..10 {
            let a = HermitianMatrix::random(3, &mut rng).unwrap();
            let lmin = a.eigh().unwrap().eigenvalues[0];
            let shifted = a.linear_combination(
                1.0,
                &HermitianMatrix::identity(3).unwrap(),
                -lmin + 0.1,
            );
            assert!(is_eps_positive(&Element::Matrix(shifted), 1.0).unwrap());
        }
    }

    #[test]
    fn identity_is_eps_positive_for_every_eps() {
        for eps in [1.0, 1.5, 2.0, 10.0, 1e6] {
            let id = Element::Matrix(HermitianMatrix::identity(4).unwrap());
            assert!(is_eps_positive(&id, eps).unwrap(), "eps = {eps}");
        }
    }

    #[test]
    fn ratio_two_matrix_threshold_at_eps_two() {
        // diag(3,1): condition 1 >= 3 (eps-1)/(eps+1) holds iff eps <= 2.
        let x = Element::Matrix(HermitianMatrix::from_diag(&[3.0, 1.0]).unwrap());
        for (eps, expect) in [(1.0, true), (1.5, true), (2.0, true), (2.001, false), (3.0, false)] {
            assert_eq!(
                is_eps_positive(&x, eps).unwrap(),
                expect,
                "diag(3,1) at eps = {eps}"
            );
        }
        assert!(is_eps_positive(&x, 0.5).is_err());
    }

    #[test]
    fn exponential_function_oscillation_boundary() {
        // f(t) = 3^t on 1001 uniform points of [0,1]: oscillation exactly
        // ln 3 = c_2, so the eps = 2 test passes on the boundary; 3^{3^t}
        // oscillates by 2 ln 3 and fails.
        let n = 1001;
        let grid: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
        let f = func(&grid.iter().map(|t| 3f64.powf(*t)).collect::<Vec<_>>());
        let omega = oscillation_of_log(&f).unwrap();
        assert!((omega - 3f64.ln()).abs() < 1e-12, "omega = {omega}");
        assert!(has_eps_oscillation(&f, 2.0).unwrap());

        let g = func(&grid.iter().map(|t| 3f64.powf(3f64.powf(*t))).collect::<Vec<_>>());
        let omega_g = oscillation_of_log(&g).unwrap();
        assert!((omega_g - 2.0 * 3f64.ln()).abs() < 1e-12, "omega = {omega_g}");
        assert!(!has_eps_oscillation(&g, 2.0).unwrap());
    }

    #[test]
    fn oscillation_conventions() {
        // Constant positive: zero oscillation, passes everything.
        assert!(has_eps_oscillation(&func(&[2.5, 2.5, 2.5]), 100.0).unwrap());
        // Identically zero: passes every budget.
        assert_eq!(oscillation_of_log(&func(&[0.0, 0.0])).unwrap(), 0.0);
        assert!(has_eps_oscillation(&func(&[0.0, 0.0]), 2.0).unwrap());
        // Zero next to nonzero: infinite oscillation, fails for eps > 1...
        assert!(oscillation_of_log(&func(&[0.0, 1.0])).unwrap().is_infinite());
        assert!(!has_eps_oscillation(&func(&[0.0, 1.0]), 1.5).unwrap());
        // ...but passes at eps = 1 where the budget is infinite.
        assert!(has_eps_oscillation(&func(&[0.0, 1.0]), 1.0).unwrap());
        // Negative values are rejected.
        assert!(oscillation_of_log(&func(&[-1.0, 1.0])).is_err());
    }

    #[test]
    fn equivalence_routes_agree_on_worked_examples() {
        // (3,1) at eps = 2: exact boundary (value ratio 3 = (eps+1)/(eps-1)),
        // all three routes say yes.
        let r = check_equivalences(&func(&[3.0, 1.0]), 2.0).unwrap();
        assert!(r.eps_positive && r.eps_oscillation && r.pairing_nonnegative);
        assert!(r.consistent);
        assert!(r.pairing_margin.abs() < 1e-9, "margin {}", r.pairing_margin);

        // (4,1) at eps = 2: ratio 4 breaks the bound, all three say no.
        let r = check_equivalences(&func(&[4.0, 1.0]), 2.0).unwrap();
        assert!(!r.eps_positive && !r.eps_oscillation && !r.pairing_nonnegative);
        assert!(r.consistent);
        assert!((r.pairing_margin + 0.5).abs() < 1e-9, "margin {}", r.pairing_margin);

        // Constant function: trivially yes.
        let r = check_equivalences(&func(&[1.0; 5]), 3.0).unwrap();
        assert!(r.eps_positive && r.eps_oscillation && r.pairing_nonnegative);
        assert!(r.consistent);
    }

    #[test]
    fn equivalence_routes_agree_on_random_inputs() {
        let mut rng = Xorshift64Star::new(77);
        for eps in [1.0, 1.3, 2.0, 4.0] {
            for _ in 0..50 {
                let n = 2 + rng.below(4);
                let values: Vec<f64> = (0..n).map(|_| rng.uniform_in(-0.5, 3.0)).collect();
                let r = check_equivalences(&func(&values), eps).unwrap();
                assert!(
                    r.consistent,
                    "routes disagree at eps={eps} on {values:?}: \
                     ({}, {}, {}), margins: pos-margin via osc {} vs pairing {}",
                    r.eps_positive,
                    r.eps_oscillation,
                    r.pairing_nonnegative,
                    r.oscillation_bound - r.oscillation,
                    r.pairing_margin
                );
            }
        }
    }

    #[test]
    fn eps_positive_sets_nest_downward() {
        // eps' >= eps implies eps'-positive subset of eps-positive.
        let mut rng = Xorshift64Star::new(13);
        let grid = [1.0, 1.2, 1.7, 2.5, 6.0];
        for _ in 0..30 {
            let a = HermitianMatrix::random(3, &mut rng).unwrap();
            let x = Element::Matrix(a);
            let verdicts: Vec<bool> = grid
                .iter()
                .map(|eps| is_eps_positive(&x, *eps).unwrap())
                .collect();
            for w in verdicts.windows(2) {
                assert!(
                    w[0] || !w[1],
                    "nesting violated: positive at the larger eps but not the smaller"
                );
            }
        }
    }

    #[test]
    fn nonzero_eps_positive_matrices_are_invertible() {
        let mut rng = Xorshift64Star::new(41);
        let mut seen = 0;
        while seen < 10 {
            let a = HermitianMatrix::random(3, &mut rng).unwrap();
            let lmin = a.eigh().unwrap().eigenvalues[0];
            let shifted = a.linear_combination(
                1.0,
                &HermitianMatrix::identity(3).unwrap(),
                -lmin + rng.uniform_in(0.5, 2.0),
            );
            let x = Element::Matrix(shifted.clone());
            if is_eps_positive(&x, 1.5).unwrap() && shifted.frobenius() > 1e-9 {
                let lmin = shifted.eigh().unwrap().eigenvalues[0];
                assert!(lmin > 0.0, "eps-positive nonzero matrix with lambda_min {lmin}");
                seen += 1;
            }
        }
    }

    #[test]
    fn a_eps_combination_matches_matrix_example() {
        // Operator-system M_3 at eps = 3: phi = diag(0,1,1)/2,
        // psi = diag(1,0,0), s = 1 -> diag(-1,1,1).
        let space = SpaceDescriptor::matrix(Exponent::Infinity, 3).unwrap();
        let spec = StateSetSpec::new(space, 3.0).unwrap();
        let phi = Element::Matrix(HermitianMatrix::from_diag(&[0.0, 0.5, 0.5]).unwrap());
        let psi = Element::Matrix(HermitianMatrix::from_diag(&[1.0, 0.0, 0.0]).unwrap());
        let got = build_a_eps_element(&spec, &phi, &psi, 1.0).unwrap();
        let want = HermitianMatrix::from_diag(&[-1.0, 1.0, 1.0]).unwrap();
        match got {
            Element::Matrix(m) => {
                assert!(m.linear_combination(1.0, &want, -1.0).frobenius() < 1e-12);
            }
            _ => unreachable!(),
        }
        // s = 0 returns phi itself.
        let got = build_a_eps_element(&spec, &phi, &psi, 0.0).unwrap();
        match (&got, &phi) {
            (Element::Matrix(a), Element::Matrix(b)) => {
                assert!(a.linear_combination(1.0, b, -1.0).frobenius() < 1e-14);
            }
            _ => unreachable!(),
        }
        // Out-of-range s and non-state inputs are rejected.
        assert!(build_a_eps_element(&spec, &phi, &psi, 1.5).is_err());
        assert!(build_a_eps_element(&spec, &phi, &psi, -0.1).is_err());
        let not_state = Element::Matrix(HermitianMatrix::from_diag(&[2.0, 0.0, 0.0]).unwrap());
        assert!(build_a_eps_element(&spec, &not_state, &psi, 0.5).is_err());
    }

    #[test]
    fn a_eps_combination_random_audit() {
        // Random base states from S_1 combine into S_eps for every valid s.
        let space = SpaceDescriptor::matrix(Exponent::Infinity, 3).unwrap();
        let base = StateSetSpec::new(space.clone(), 1.0).unwrap();
        let spec = StateSetSpec::new(space, 2.0).unwrap();
        let states = crate::states::sample_states(&base, 20, 5).unwrap();
        let mut rng = Xorshift64Star::new(6);
        for pair in states.chunks(2) {
            if pair.len() < 2 {
                break;
            }
            let s = rng.uniform_in(0.0, 0.5);
            let combined = build_a_eps_element(&spec, &pair[0], &pair[1], s).unwrap();
            let norm = spec.space().dual_norm(&combined).unwrap();
            assert!(
                norm <= 1.0 + 2.0 * s + 1e-9,
                "norm {norm} beyond 1 + 2s = {}",
                1.0 + 2.0 * s
            );
        }
    }
}
