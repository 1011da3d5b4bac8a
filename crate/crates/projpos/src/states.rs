//! Generalized state sets and the membership solver.
//!
//! For a space with unit `e`, dual exponent `q`, and a budget `eps` at least
//! the feasibility threshold `1/||e||_p`, the *generalized state set* is
//!
//! ```text
//! S_eps = { y : <e, y> = 1,  ||y||_q <= eps }.
//! ```
//!
//! The central quantity is the support value
//! `m_eps(x) = min { <x, y> : y in S_eps }`: the projective cone attached to
//! `eps` is exactly `{ x : m_eps(x) >= 0 }`, and the eps-norm is
//! `max(sup <x, S_eps>, -inf <x, S_eps>)`.
//!
//! [`min_pairing`] computes `m_eps(x)` exactly, by Lagrange duality
//! `m_eps(x) = max_nu [ nu - eps ||x - nu e||_p ]`:
//!
//! * for `1 < q < inf` the inner minimizer over the ball is unique and
//!   smooth, the dual function is concave with monotone derivative
//!   `1 - <e, y(nu)>`, and a guarded bisection on `nu` finds the root of
//!   `<e, y(nu)> = 1`;
//! * for `q = inf` (`p = 1`) the problem is a box-constrained continuous
//!   knapsack, solved exactly by a breakpoint scan;
//! * for `q = 1` (`p = inf`) the minimum sits on a state supported on at
//!   most two coordinates, found by exact enumeration;
//! * matrix instances reduce to the vector case with unit weights through
//!   the eigendecomposition of `x` (exact for central units, by the trace
//!   rearrangement inequality: the minimum over the unitary orbit of a
//!   feasible spectrum is attained at a `y` commuting with `x`).
//!
//! Ties between minimizers (possible in the two polyhedral regimes) are
//! broken deterministically toward the lowest coordinate indices, so
//! identical inputs always yield identical witnesses.

use serde::Serialize;

use crate::linalg::HermitianMatrix;
use crate::rng::Xorshift64Star;
use crate::spaces::{Element, Exponent, SpaceDescriptor};
use crate::tol;
use crate::{Error, Result};

/// A generalized state set `S_eps` over a space: the descriptor plus the
/// dual-norm budget.
#[derive(Clone, Debug)]
pub struct StateSetSpec {
    space: SpaceDescriptor,
    eps: f64,
}

impl StateSetSpec {
    /// Validates `eps` against the space's feasibility threshold
    /// `1/||e||_p` (a small slack absorbs rounding in the threshold itself).
    ///
    /// # Errors
    ///
    /// [`Error::Infeasible`] when `eps` is below the threshold,
    /// [`Error::Domain`] for non-finite `eps`.
    pub fn new(space: SpaceDescriptor, eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::domain(format!(
                "state-set budget eps must be finite and positive (got {eps})"
            )));
        }
        let threshold = space.feasibility_threshold();
        if eps < threshold - tol::THRESHOLD_SLACK {
            return Err(Error::Infeasible { eps, threshold });
        }
        Ok(StateSetSpec { space, eps })
    }

    /// The underlying space.
    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    /// The dual-norm budget.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// True when `eps` sits exactly at the feasibility threshold (within
    /// slack), i.e. `S_eps` is the minimal-norm face.
    pub fn at_threshold(&self) -> bool {
        self.eps <= self.space.feasibility_threshold() + tol::THRESHOLD_SLACK
    }
}

/// Verdict of a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Margin strictly above the tolerance.
    Member,
    /// Margin strictly below minus the tolerance; a violating state is
    /// attached.
    NotMember,
    /// Margin within the tolerance band around zero.
    Boundary,
}

/// Certified outcome of [`cone_member`].
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    /// The verdict at the stated tolerance.
    pub verdict: Verdict,
    /// The support value `m_eps(x)`.
    pub margin: f64,
    /// The minimizing state when the verdict is not `Member` (for
    /// `NotMember` it certifies the rejection: `<x, witness> = margin < 0`).
    pub witness: Option<Element>,
    /// Tolerance used to separate the three verdicts.
    pub tolerance: f64,
}

/// Exact support value and minimizer returned by [`min_pairing`].
#[derive(Clone, Debug)]
pub struct MinPairing {
    /// `min { <x, y> : y in S_eps }`.
    pub margin: f64,
    /// A state attaining the minimum.
    pub witness: Element,
}

/// Split of a state into normalized positive parts; see [`decompose_state`].
#[derive(Clone, Debug)]
pub struct StateDecomposition {
    /// Weight of the negative part: `s = <e, y_minus>`.
    pub s: f64,
    /// Normalized positive part `y_plus / (1 + s)`.
    pub phi: Element,
    /// Normalized negative part `y_minus / s`; absent when `s = 0`.
    pub psi: Option<Element>,
}

/// The unique (for `1 < q < inf`) or canonical minimal-dual-norm state:
/// `<e, y0> = 1` with `||y0||_q` equal to the feasibility threshold.
///
/// Canonical choices in the polyhedral regimes: for matrix spaces
/// `y0 = I/(alpha n)` (the tracial state, central); for vector spaces at
/// `p = inf` with constant `|e|`, the barycentric state
/// `sign(e) / sum(|e| c)`, otherwise a point mass at the first coordinate of
/// largest `|e_j|`.
pub fn minimal_state(spec: &StateSetSpec) -> Result<Element> {
    match spec.space() {
        SpaceDescriptor::Matrix {
            dim, unit_scale, ..
        } => {
            let n = *dim;
            let y0 = HermitianMatrix::identity(n)
                .expect("validated dimension")
                .scaled(1.0 / (unit_scale * n as f64));
            Ok(Element::Matrix(y0))
        }
        SpaceDescriptor::WeightedVector { p, weights, unit } => {
            if p.is_infinite() {
                let max_abs = unit.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                let constant_magnitude = unit
                    .iter()
                    .all(|v| (v.abs() - max_abs).abs() <= 1e-12 * (1.0 + max_abs));
                if constant_magnitude {
                    let total: f64 = unit
                        .iter()
                        .zip(weights)
                        .map(|(v, c)| v.abs() * c)
                        .sum();
                    let y = unit.iter().map(|v| sign(*v) / total).collect();
                    return Ok(Element::Vector(y));
                }
            }
            // General case: normalize the norming functional of e.
            let space = spec.space();
            let e = space.unit();
            let eta = space.norming_functional(&e)?;
            let norm_e = space.unit_norm();
            Ok(eta.scaled(1.0 / norm_e))
        }
    }
}

/// Sign with `sign(0) = 0`.
fn sign(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Computes the exact support value `m_eps(x) = min <x, S_eps>` together
/// with a minimizing state.
///
/// See the module docs for the per-regime algorithms. The returned witness
/// satisfies `<e, witness> = 1` within 2e-12 and
/// `||witness||_q <= eps (1 + 1e-10)`.
///
/// # Errors
///
/// Propagates element/kind validation errors and (defensively)
/// [`Error::BisectionNoConvergence`] if the dual root search stalls, which
/// does not occur for feasible budgets.
pub fn min_pairing(spec: &StateSetSpec, x: &Element) -> Result<MinPairing> {
    spec.space().check_element(x)?;
    match (spec.space(), x) {
        (SpaceDescriptor::WeightedVector { p, weights, unit }, Element::Vector(v)) => {
            let (margin, witness) =
                vector_min_pairing(*p, weights, unit, spec.eps, v, spec.at_threshold())?;
            Ok(MinPairing {
                margin,
                witness: Element::Vector(witness),
            })
        }
        (
            SpaceDescriptor::Matrix {
                p,
                dim,
                unit_scale,
            },
            Element::Matrix(m),
        ) => {
            // Spectral reduction: diagonalize x, solve the vector problem on
            // the eigenvalues with unit weights and unit vector alpha*(1..1),
            // and conjugate the vector minimizer back. Exact by the trace
            // rearrangement inequality because the unit is central.
            let n = *dim;
            let eig = m.eigh()?;
            let weights = vec![1.0; n];
            let unit_vec = vec![*unit_scale; n];
            let (margin, y_vec) = vector_min_pairing(
                *p,
                &weights,
                &unit_vec,
                spec.eps,
                &eig.eigenvalues,
                spec.at_threshold(),
            )?;
            let witness = eig.assemble_indexed(|i, _| y_vec[i]);
            Ok(MinPairing {
                margin,
                witness: Element::Matrix(witness),
            })
        }
        _ => unreachable!("check_element enforces kind agreement"),
    }
}

/// Vector-kind support value: dispatches on the dual exponent.
fn vector_min_pairing(
    p: Exponent,
    weights: &[f64],
    unit: &[f64],
    eps: f64,
    x: &[f64],
    at_threshold: bool,
) -> Result<(f64, Vec<f64>)> {
    let q = p.conjugate();
    let n = x.len();

    // Degenerate direction: x proportional to e makes the pairing constant
    // on the whole hyperplane, so every state gives the same value.
    let e_norm_sq: f64 = unit.iter().map(|t| t * t).sum();
    let coeff = unit.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / e_norm_sq;
    let residual_sup = x
        .iter()
        .zip(unit)
        .map(|(xi, ei)| (xi - coeff * ei).abs())
        .fold(0.0_f64, f64::max);
    let x_sup = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let proportional = residual_sup <= 1e-13 * (1.0 + x_sup);

    let y0 = || -> Result<Vec<f64>> {
        // Local minimal state (mirrors `minimal_state`, kept here so the
        // vector core is self-contained for the matrix reduction).
        let space =
            SpaceDescriptor::weighted_vector_with_unit(p, weights.to_vec(), unit.to_vec())?;
        let spec = StateSetSpec::new(space, eps)?;
        match minimal_state(&spec)? {
            Element::Vector(v) => Ok(v),
            Element::Matrix(_) => unreachable!("vector space"),
        }
    };

    if proportional {
        let y = y0()?;
        let value: f64 = x
            .iter()
            .zip(&y)
            .zip(weights)
            .map(|((xi, yi), c)| xi * yi * c)
            .sum();
        return Ok((value, y));
    }

    match q {
        Exponent::Finite(qv) if qv == 1.0 => support_pair_minimum(weights, unit, eps, x),
        Exponent::Infinity => knapsack_minimum(weights, unit, eps, x),
        Exponent::Finite(_) => {
            if at_threshold {
                // Strictly convex dual ball at the threshold: S_eps is the
                // single point y0.
                let y = y0()?;
                let value: f64 = x
                    .iter()
                    .zip(&y)
                    .zip(weights)
                    .map(|((xi, yi), c)| xi * yi * c)
                    .sum();
                return Ok((value, y));
            }
            dual_bisection_minimum(p, weights, unit, eps, x, n)
        }
    }
}

/// `1 < q < inf`: monotone bisection on the dual shift.
///
/// For a shift `nu`, the ball minimizer is
/// `y(nu) = -eps * eta(x - nu e)` with `eta` the norming functional
/// (`||eta||_q = 1`, `<x - nu e, eta> = ||x - nu e||_p`), and
/// `phi(nu) = <e, y(nu)>` is nondecreasing by concavity of the dual
/// function `nu - eps ||x - nu e||_p`. The root of `phi = 1` gives the
/// optimal state.
fn dual_bisection_minimum(
    p: Exponent,
    weights: &[f64],
    unit: &[f64],
    eps: f64,
    x: &[f64],
    n: usize,
) -> Result<(f64, Vec<f64>)> {
    let space = SpaceDescriptor::weighted_vector_with_unit(p, weights.to_vec(), unit.to_vec())
        .expect("validated by caller");
    let state_of = |nu: f64| -> Vec<f64> {
        let z: Vec<f64> = x.iter().zip(unit).map(|(xi, ei)| xi - nu * ei).collect();
        let eta = space
            .norming_functional(&Element::Vector(z))
            .expect("z != 0 for non-proportional x");
        match eta {
            Element::Vector(v) => v.iter().map(|t| -eps * t).collect(),
            Element::Matrix(_) => unreachable!("vector space"),
        }
    };
    let hyperplane = |y: &[f64]| -> f64 {
        y.iter()
            .zip(unit)
            .zip(weights)
            .map(|((yi, ei), c)| yi * ei * c)
            .sum()
    };

    // Initial bracket from the coordinate range, then geometric expansion
    // until phi crosses 1 on both sides (guaranteed for eps above the
    // threshold: phi(+-inf) = +-eps ||e||_p).
    let x_min = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut lo = x_min - 1.0;
    let mut hi = x_max + 1.0;
    let mut width = (hi - lo).max(1.0);
    let mut expansions = 0;
    while hyperplane(&state_of(lo)) > 1.0 {
        lo -= width;
        width *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::BisectionNoConvergence {
                lo,
                hi,
                residual: hyperplane(&state_of(lo)) - 1.0,
                iterations: expansions,
            });
        }
    }
    expansions = 0;
    width = (hi - lo).max(1.0);
    while hyperplane(&state_of(hi)) < 1.0 {
        hi += width;
        width *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::BisectionNoConvergence {
                lo,
                hi,
                residual: 1.0 - hyperplane(&state_of(hi)),
                iterations: expansions,
            });
        }
    }

    let target_tol = tol::BISECTION_RESIDUAL * 2.0;
    let mut best_y = state_of(0.5 * (lo + hi));
    let mut residual = hyperplane(&best_y) - 1.0;
    let mut iterations = 0;
    while residual.abs() > target_tol && iterations < tol::BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let y = state_of(mid);
        let h = hyperplane(&y);
        if h < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        best_y = y;
        residual = h - 1.0;
        iterations += 1;
    }
    if residual.abs() > target_tol {
        // For 1 < p < 2 the norming functional has a square-root kink
        // wherever a coordinate of x - nu e crosses zero, flooring the
        // attainable residual near sqrt(ulp). When the exact root sits at
        // such a crossing (the optimal state touches a coordinate
        // hyperplane, e.g. segment endpoints in two dimensions), the
        // bracket collapses onto nu = x_j / e_j; re-evaluating the limit
        // state with that coordinate zeroed exactly recovers full
        // precision.
        let mid = 0.5 * (lo + hi);
        let window = 1e-7 * (1.0 + mid.abs());
        let mut refined: Option<(f64, Vec<f64>)> = None;
        for j in 0..x.len() {
            if unit[j] == 0.0 {
                continue;
            }
            let nu = x[j] / unit[j];
            if (nu - mid).abs() > window {
                continue;
            }
            let mut z: Vec<f64> = x.iter().zip(unit).map(|(xi, ei)| xi - nu * ei).collect();
            z[j] = 0.0;
            if z.iter().all(|t| *t == 0.0) {
                continue; // proportional directions are handled upstream
            }
            let eta = match space.norming_functional(&Element::Vector(z))? {
                Element::Vector(v) => v,
                Element::Matrix(_) => unreachable!("vector space"),
            };
            let y: Vec<f64> = eta.iter().map(|t| -eps * t).collect();
            let r = hyperplane(&y) - 1.0;
            let better = refined
                .as_ref()
                .map_or(true, |(best_r, _)| r.abs() < best_r.abs());
            if r.abs() <= target_tol && better {
                refined = Some((r, y));
            }
        }
        match refined {
            Some((r, y)) => {
                best_y = y;
                residual = r;
            }
            None => {
                return Err(Error::BisectionNoConvergence {
                    lo,
                    hi,
                    residual,
                    iterations,
                })
            }
        }
    }
    let _ = residual;
    let value: f64 = x
        .iter()
        .zip(&best_y)
        .zip(weights)
        .map(|((xi, yi), c)| xi * yi * c)
        .sum();
    let _ = n;
    Ok((value, best_y))
}

/// `q = inf` (`p = 1`): exact continuous knapsack by breakpoint scan.
///
/// Minimize `sum d_i y_i` subject to `sum a_i y_i = 1`, `|y_i| <= eps`,
/// where `d_i = x_i c_i`, `a_i = e_i c_i`. The parametric solution
/// `y_i(nu) = -eps sign(d_i - nu a_i)` has nondecreasing constraint value
/// `h(nu)`; scanning the breakpoints `nu_i = d_i / a_i` in ascending order
/// finds the group where `h` crosses 1, with at most one fractional
/// coordinate. Ties are resolved toward the lowest indices.
fn knapsack_minimum(
    weights: &[f64],
    unit: &[f64],
    eps: f64,
    x: &[f64],
) -> Result<(f64, Vec<f64>)> {
    let n = x.len();
    let d: Vec<f64> = x.iter().zip(weights).map(|(xi, c)| xi * c).collect();
    let a: Vec<f64> = unit.iter().zip(weights).map(|(ei, c)| ei * c).collect();
    let mut y = vec![0.0; n];
    let mut h = 0.0; // current constraint value sum a_i y_i
    let mut breakpoints: Vec<(f64, usize)> = Vec::new();
    for i in 0..n {
        if a[i] == 0.0 {
            // No constraint effect: push the objective down freely.
            y[i] = -eps * sign(d[i]);
        } else {
            // Start below every breakpoint: y_i = -eps sign(a_i).
            y[i] = -eps * sign(a[i]);
            h += a[i] * y[i];
            breakpoints.push((d[i] / a[i], i));
        }
    }
    breakpoints.sort_by(|u, v| u.0.partial_cmp(&v.0).expect("finite").then(u.1.cmp(&v.1)));

    let target = 1.0;
    let scale = 1.0 + eps * a.iter().map(|t| t.abs()).sum::<f64>();
    let mut idx = 0;
    while h < target - tol::BISECTION_RESIDUAL * scale && idx < breakpoints.len() {
        // Group of equal breakpoints (flips at the same shift are
        // interchangeable for the objective; process ascending indices).
        let nu = breakpoints[idx].0;
        let mut group_end = idx;
        while group_end < breakpoints.len() && breakpoints[group_end].0 == nu {
            group_end += 1;
        }
        let mut members: Vec<usize> = breakpoints[idx..group_end].iter().map(|b| b.1).collect();
        members.sort_unstable();
        for &i in &members {
            let jump = 2.0 * eps * a[i].abs();
            let deficit = target - h;
            if deficit <= 0.0 {
                break;
            }
            if jump <= deficit {
                // Full flip.
                y[i] = eps * sign(a[i]);
                h += jump;
            } else {
                // Fractional flip completing the target exactly.
                y[i] += deficit / a[i];
                h = target;
            }
        }
        idx = group_end;
    }
    if (h - target).abs() > tol::BISECTION_RESIDUAL * scale.max(1.0) * 10.0 {
        // Unreachable for validated eps >= threshold; defensive.
        return Err(Error::Infeasible {
            eps,
            threshold: 1.0 / eps.max(f64::MIN_POSITIVE),
        });
    }
    let value = d.iter().zip(&y).map(|(di, yi)| di * yi).sum();
    Ok((value, y))
}

/// `q = 1` (`p = inf`): exact enumeration of extreme states.
///
/// Extreme points of `{ sum a_i y_i = 1, sum |y_i| c_i <= eps }`
/// (`a_i = e_i c_i`) are supported on at most two coordinates: singletons
/// `y_i = 1/a_i` strictly inside the ball, and two-coordinate states on the
/// sphere `sum |y_i| c_i = eps`. The minimum over this finite set is exact;
/// ties prefer singletons, then the lexicographically first support.
fn support_pair_minimum(
    weights: &[f64],
    unit: &[f64],
    eps: f64,
    x: &[f64],
) -> Result<(f64, Vec<f64>)> {
    let n = x.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |value: f64, y: Vec<f64>| {
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, y));
        }
    };

    // Singletons: all mass at one coordinate, |y_i| c_i = 1/|e_i| <= eps.
    for i in 0..n {
        if unit[i] != 0.0 {
            let mass = 1.0 / unit[i].abs(); // |y_i| c_i
            if mass <= eps * (1.0 + 1e-15) {
                let mut y = vec![0.0; n];
                y[i] = 1.0 / (unit[i] * weights[i]);
                consider(x[i] / unit[i], y);
            }
        }
    }

    // Two-coordinate sphere states: masses u = |y_i| c_i, v = |y_j| c_j with
    // u + v = eps, s_i e_i u + s_j e_j v = 1 for sign choices s.
    for i in 0..n {
        for j in (i + 1)..n {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let denom = si * unit[i] - sj * unit[j];
                if denom.abs() < 1e-300 {
                    continue; // parallel: endpoints are covered by singletons
                }
                let u = (1.0 - sj * unit[j] * eps) / denom;
                let v = eps - u;
                let slack = 1e-12 * eps;
                if u < -slack || v < -slack {
                    continue;
                }
                let u = u.clamp(0.0, eps);
                let v = eps - u;
                let mut y = vec![0.0; n];
                y[i] = si * u / weights[i];
                y[j] = sj * v / weights[j];
                consider(si * x[i] * u + sj * x[j] * v, y);
            }
        }
    }

    best.ok_or(Error::Infeasible {
        eps,
        threshold: f64::INFINITY,
    })
}

/// The eps-norm `||x||_eps = max( sup <x, S_eps>, -inf <x, S_eps> )`,
/// computed from two support values. Coincides with `||.||_p`-comparable
/// norms for feasible budgets; at `eps = 1` on sup-norm spaces it is the
/// original norm.
pub fn eps_norm(spec: &StateSetSpec, x: &Element) -> Result<f64> {
    let m = min_pairing(spec, x)?.margin;
    let neg = min_pairing(spec, &x.scaled(-1.0))?.margin;
    let sup = -neg;
    Ok(sup.max(-m))
}

/// Decides membership of `x` in the projective cone
/// `{ v : min <v, S_eps> >= 0 }` at the given tolerance, certifying
/// rejections with the minimizing state.
pub fn cone_member(spec: &StateSetSpec, x: &Element, tolerance: f64) -> Result<MembershipCertificate> {
    if !tolerance.is_finite() || tolerance < 0.0 {
        return Err(Error::domain(format!(
            "membership tolerance must be finite and nonnegative (got {tolerance})"
        )));
    }
    let mp = min_pairing(spec, x)?;
    let (verdict, witness) = if mp.margin > tolerance {
        (Verdict::Member, None)
    } else if mp.margin < -tolerance {
        (Verdict::NotMember, Some(mp.witness))
    } else {
        (Verdict::Boundary, Some(mp.witness))
    };
    Ok(MembershipCertificate {
        verdict,
        margin: mp.margin,
        witness,
        tolerance,
    })
}

/// Splits a state `y` (`<e, y> = 1`) into its positive parts:
/// `y = (1 + s) phi - s psi` with `phi, psi` normalized positive states,
/// `s = <e, y_minus> >= 0`, and `psi` absent when the negative part
/// vanishes. Vector states split pointwise, matrix states spectrally; the
/// parts have disjoint supports by construction.
///
/// # Errors
///
/// [`Error::Domain`] when `<e, y> != 1` beyond 1e-9, or when the unit
/// pairs negatively with the negative part (possible only for sign-varying
/// vector units, where the positive-part calculus does not apply).
pub fn decompose_state(spec: &StateSetSpec, y: &Element) -> Result<StateDecomposition> {
    let space = spec.space();
    space.check_element(y)?;
    let e = space.unit();
    let pairing = space.pair(&e, y)?;
    if (pairing - 1.0).abs() > tol::PIPELINE_CROSS_CHECK {
        return Err(Error::domain(format!(
            "decompose_state expects a normalized state: <e, y> = {pairing}, not 1"
        )));
    }
    let (y_plus, y_minus) = match y {
        Element::Vector(v) => (
            Element::Vector(v.iter().map(|t| t.max(0.0)).collect()),
            Element::Vector(v.iter().map(|t| (-t).max(0.0)).collect()),
        ),
        Element::Matrix(m) => {
            let (plus, minus) = crate::linalg::spectral_parts(m)?;
            (Element::Matrix(plus), Element::Matrix(minus))
        }
    };
    let s = space.pair(&e, &y_minus)?;
    let plus_weight = space.pair(&e, &y_plus)?;
    if s < -tol::PIPELINE_CROSS_CHECK {
        return Err(Error::domain(format!(
            "unit pairs negatively with the negative part (s = {s}); \
             the positive-part decomposition needs a positive unit"
        )));
    }
    if plus_weight <= 0.0 {
        return Err(Error::domain(
            "unit pairs nonpositively with the positive part; cannot normalize phi",
        ));
    }
    let s = s.max(0.0);
    // Negative part below numerical noise: treat as absent.
    let noise = tol::SPECTRAL_ZERO_REL * (1.0 + spec.space().dual_norm(y)?);
    if s <= noise {
        Ok(StateDecomposition {
            s: 0.0,
            phi: y_plus.scaled(1.0 / plus_weight),
            psi: None,
        })
    } else {
        Ok(StateDecomposition {
            s,
            phi: y_plus.scaled(1.0 / plus_weight),
            psi: Some(y_minus.scaled(1.0 / s)),
        })
    }
}

/// Checks the spectral bookkeeping of a matrix state: with
/// `y = (1+s) phi - s psi` from [`decompose_state`], the spectrum of `y`
/// must be the union of `(1+s) * spec(phi)` and `-s * spec(psi)` restricted
/// to their supports, padded with zeros — each within 1e-8.
///
/// # Errors
///
/// [`Error::Input`] for vector states (the check is about matrix spectra).
pub fn state_spectrum_check(spec: &StateSetSpec, y: &Element) -> Result<bool> {
    let m = y.as_matrix()?;
    let n = m.dim();
    let dec = decompose_state(spec, y)?;
    let floor = tol::SPECTRAL_ZERO_REL * (1.0 + m.frobenius());
    let mut reconstructed: Vec<f64> = Vec::with_capacity(n);
    let phi = dec.phi.as_matrix()?;
    for &w in &phi.eigh()?.eigenvalues {
        if w > floor {
            reconstructed.push((1.0 + dec.s) * w);
        }
    }
    if let Some(psi) = &dec.psi {
        for &w in &psi.as_matrix()?.eigh()?.eigenvalues {
            if w > floor {
                reconstructed.push(-dec.s * w);
            }
        }
    }
    if reconstructed.len() > n {
        return Ok(false);
    }
    reconstructed.resize(n, 0.0);
    reconstructed.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let actual = m.eigh()?.eigenvalues;
    let scale = 1.0 + actual.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
    Ok(reconstructed
        .iter()
        .zip(&actual)
        .all(|(r, a)| (r - a).abs() <= tol::SPECTRAL_CROSS_CHECK * scale))
}

/// Draws `count` states from `S_eps`, deterministically in `seed`.
///
/// Each sample walks from the minimal-norm state `y0` along a random
/// hyperplane direction `d` (`<e, d> = 0`, `||d||_q = 1`): a target norm is
/// drawn in `[max(0.2 eps, threshold), eps]` and the step length solved by
/// bisection on the convex norm profile `t -> ||y0 + t d||_q`. When the
/// profile is flat at the target level (polyhedral balls at the threshold,
/// e.g. the probability simplex at `eps = 1` on sup-norm spaces), the step
/// is drawn uniformly along the flat instead.
pub fn sample_states(spec: &StateSetSpec, count: usize, seed: u64) -> Result<Vec<Element>> {
    let mut rng = Xorshift64Star::for_stream(seed, "sample_states");
    let space = spec.space();
    let eps = spec.eps();
    let y0 = minimal_state(spec)?;
    let tau0 = space.dual_norm(&y0)?;
    let lo_target = (0.2 * eps).max(tau0);
    let mut out = Vec::with_capacity(count);

    for _ in 0..count {
        // Random hyperplane direction, normalized in the dual norm. With a
        // one-dimensional hyperplane section (n = 1 vectors) no direction
        // exists and every sample is y0.
        let dir = random_hyperplane_direction(space, &y0, &mut rng)?;
        let dir = match dir {
            None => {
                out.push(y0.clone());
                continue;
            }
            Some(d) => d,
        };
        // Norm profile along the ray; convex, minimized at t = 0. Matrix
        // fast path: y0 is central, so y0 + t d has eigenvalues
        // c0 + t mu_i with mu the direction's spectrum — one
        // diagonalization per sample instead of one per bisection step.
        let (base_vals, dir_vals, norm_weights): (Vec<f64>, Vec<f64>, Vec<f64>) =
            match (&y0, &dir) {
                (Element::Vector(base), Element::Vector(d)) => {
                    let w = match space {
                        SpaceDescriptor::WeightedVector { weights, .. } => weights.clone(),
                        SpaceDescriptor::Matrix { .. } => unreachable!("kind agreement"),
                    };
                    (base.clone(), d.clone(), w)
                }
                (Element::Matrix(base), Element::Matrix(d)) => {
                    let n = base.dim();
                    let c0 = base.entry(0, 0).re; // central: all diagonal entries equal
                    let mu = d.eigh()?.eigenvalues;
                    (vec![c0; n], mu, vec![1.0; n])
                }
                _ => unreachable!("kind agreement"),
            };
        let q = space.q();
        let profile = |t: f64| -> Result<f64> {
            let combo: Vec<f64> = base_vals
                .iter()
                .zip(&dir_vals)
                .map(|(b, d)| b + t * d)
                .collect();
            Ok(crate::spaces::vector_norm(&combo, &norm_weights, q))
        };
        // Expand to the ball boundary: ||y0 + t d||_q >= t - tau0 bounds the
        // search.
        let mut hi = 1.0;
        let mut expansions = 0;
        while profile(hi)? <= eps && expansions < 200 {
            hi *= 2.0;
            expansions += 1;
        }
        let mut lo = 0.0;
        let mut t_max = hi;
        for _ in 0..tol::BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + t_max);
            if profile(mid)? <= eps {
                lo = mid;
            } else {
                t_max = mid;
            }
            if t_max - lo <= 1e-14 * (1.0 + t_max) {
                break;
            }
        }
        let t_max = lo; // last value certified inside the ball
        let norm_at_max = profile(t_max)?;

        let t = if t_max <= 1e-13 * (1.0 + tau0) {
            // Strictly convex ball at the threshold: S_eps = {y0}.
            0.0
        } else if norm_at_max <= lo_target + 1e-12 * (1.0 + lo_target) {
            // Flat profile at the target level: spread uniformly along it.
            rng.uniform() * t_max
        } else {
            let target = rng.uniform_in(lo_target, norm_at_max.min(eps));
            let mut a = 0.0;
            let mut b = t_max;
            for _ in 0..tol::BISECTION_MAX_ITER {
                let mid = 0.5 * (a + b);
                if profile(mid)? < target {
                    a = mid;
                } else {
                    b = mid;
                }
                if b - a <= 1e-14 * (1.0 + b) {
                    break;
                }
            }
            a
        };
        out.push(y0.linear_combination(1.0, &dir, t));
    }
    Ok(out)
}

/// Random dual-norm-normalized direction in the hyperplane `<e, d> = 0`,
/// or `None` when the hyperplane section is a point.
fn random_hyperplane_direction(
    space: &SpaceDescriptor,
    y0: &Element,
    rng: &mut Xorshift64Star,
) -> Result<Option<Element>> {
    let e = space.unit();
    for _ in 0..32 {
        let raw = match space {
            SpaceDescriptor::WeightedVector { weights, .. } => {
                Element::Vector((0..weights.len()).map(|_| rng.normal()).collect())
            }
            SpaceDescriptor::Matrix { dim, .. } => {
                Element::Matrix(HermitianMatrix::random(*dim, rng)?)
            }
        };
        // Project onto the hyperplane through 0: d = raw - <e, raw> y0
        // (valid because <e, y0> = 1).
        let overlap = space.pair(&e, &raw)?;
        let d = raw.linear_combination(1.0, y0, -overlap);
        let norm = space.dual_norm(&d)?;
        if norm > 1e-12 {
            return Ok(Some(d.scaled(1.0 / norm)));
        }
        if space.dim() == 1 {
            return Ok(None);
        }
    }
    Ok(None)
}
