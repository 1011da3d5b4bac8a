//! Independent cross-checks for the support-value solver.
//!
//! Both oracles evaluate the pairing only at explicitly feasible states, so
//! their results are *upper bounds* on the true minimum
//! `m_eps(x) = min <x, S_eps>` by construction:
//!
//! ```text
//! m_eps(x) <= oracle value        (always)
//! oracle value - m_eps(x) small   (density / search quality)
//! ```
//!
//! The exact solver is validated against them in the other direction:
//! `solver margin <= oracle value + tol` must always hold, and on benign
//! instances the two agree to the oracle's resolution. Neither oracle calls
//! the solver.

use crate::linalg::HermitianMatrix;
use crate::rng::Xorshift64Star;
use crate::spaces::{Element, SpaceDescriptor};
use crate::states::{minimal_state, sample_states, StateSetSpec};
use crate::{Error, Result};

/// Result of the exhaustive grid scan.
#[derive(Clone, Debug)]
pub struct GridMinimum {
    /// Smallest pairing value over the feasible grid.
    pub value: f64,
    /// Grid state attaining it.
    pub witness: Element,
    /// A priori bound on `value - m_eps(x)` away from the ball boundary:
    /// the pairing's Lipschitz constant on the hyperplane times the grid
    /// resolution.
    pub error_bound: f64,
    /// Number of feasible grid states evaluated.
    pub states_scanned: usize,
}

/// Result of the randomized search.
#[derive(Clone, Debug)]
pub struct RandomizedMinimum {
    /// Best pairing value found.
    pub value: f64,
    /// Feasible state attaining it.
    pub witness: Element,
    /// Total pairing evaluations (samples plus refinement probes).
    pub evaluations: usize,
}

/// Exhaustively scans `S_eps` on a grid, for vector spaces of dimension at
/// most 3, and returns the smallest pairing with `x`.
///
/// The hyperplane `<e, y> = 1` is parametrized by all coordinates except a
/// pivot `k` (the coordinate of largest `|e_k c_k|`); the free coordinates
/// run over a grid of the given `pitch` covering the dual ball's bounding
/// box, the pivot is solved from the hyperplane exactly, and candidates
/// outside the ball `||y||_q <= eps` are discarded. The reported minimum is
/// an upper bound on the true one; `error_bound` quantifies the gap as
/// `pitch * n * max_i |x_i| c_i * (1 + L)` with `L` the pivot's
/// amplification factor, valid for minimizers not pinned to the ball
/// boundary (boundary minimizers may add an error of the same order).
///
/// # Errors
///
/// [`Error::Input`] for matrix spaces or vector dimension above 3 (the scan
/// would be infeasible there — use [`randomized_min_pairing`] instead).
pub fn grid_min_pairing(
    spec: &StateSetSpec,
    x: &Element,
    pitch: f64,
) -> Result<GridMinimum> {
    if !(pitch.is_finite() && pitch > 0.0) {
        return Err(Error::domain(format!(
            "grid pitch must be finite and positive (got {pitch})"
        )));
    }
    let space = spec.space();
    space.check_element(x)?;
    let (weights, unit, xv) = match (space, x) {
        (SpaceDescriptor::WeightedVector { weights, unit, .. }, Element::Vector(v)) => {
            (weights.clone(), unit.clone(), v.clone())
        }
        _ => {
            return Err(Error::input(
                "the grid oracle handles vector spaces only; \
                 use the randomized oracle for matrix instances",
            ))
        }
    };
    let n = xv.len();
    if n > 3 {
        return Err(Error::input(format!(
            "the grid oracle is limited to dimension <= 3 (got {n}); \
             use the randomized oracle instead"
        )));
    }
    let eps = spec.eps();
    let q = space.q();

    // Pivot: the coordinate with the largest hyperplane coefficient, so
    // solving for it amplifies the grid error least.
    let coeff: Vec<f64> = unit.iter().zip(&weights).map(|(e, c)| e * c).collect();
    let pivot = (0..n)
        .max_by(|&i, &j| {
            coeff[i]
                .abs()
                .partial_cmp(&coeff[j].abs())
                .expect("finite")
        })
        .expect("n >= 1");
    if coeff[pivot] == 0.0 {
        return Err(Error::domain(
            "grid oracle requires a unit with at least one nonzero coordinate",
        ));
    }

    // Per-coordinate bounding box of the ball: |y_i| c_i^{1/q} <= eps for
    // finite q, |y_i| <= eps at q = inf.
    let bound = |i: usize| -> f64 {
        match q {
            crate::spaces::Exponent::Finite(qv) => eps / weights[i].powf(1.0 / qv),
            crate::spaces::Exponent::Infinity => eps,
        }
    };

    let free: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let steps: Vec<usize> = free
        .iter()
        .map(|&i| (2.0 * bound(i) / pitch).floor() as usize + 1)
        .collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut scanned = 0usize;
    let mut y = vec![0.0; n];
    let mut counters = vec![0usize; free.len()];
    loop {
        // Materialize the candidate for the current counter vector.
        let mut acc = 0.0;
        for (slot, &i) in free.iter().enumerate() {
            y[i] = -bound(i) + counters[slot] as f64 * pitch;
            acc += coeff[i] * y[i];
        }
        y[pivot] = (1.0 - acc) / coeff[pivot];
        let norm = crate::spaces::vector_norm(&y, &weights, q);
        if norm <= eps {
            scanned += 1;
            let value: f64 = xv
                .iter()
                .zip(&y)
                .zip(&weights)
                .map(|((xi, yi), c)| xi * yi * c)
                .sum();
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                best = Some((value, y.clone()));
            }
        }
        // Odometer increment over the free coordinates.
        let mut slot = 0;
        loop {
            if slot == counters.len() {
                let lipschitz = xv
                    .iter()
                    .zip(&weights)
                    .map(|(xi, c)| (xi * c).abs())
                    .fold(0.0_f64, f64::max);
                let amplification = free
                    .iter()
                    .map(|&i| coeff[i].abs())
                    .sum::<f64>()
                    / coeff[pivot].abs();
                let (value, witness) = best.ok_or_else(|| {
                    Error::input(
                        "grid scan found no feasible state; \
                         pitch too coarse for this budget",
                    )
                })?;
                return Ok(GridMinimum {
                    value,
                    witness: Element::Vector(witness),
                    error_bound: pitch * n as f64 * lipschitz * (1.0 + amplification),
                    states_scanned: scanned,
                });
            }
            counters[slot] += 1;
            if counters[slot] < steps[slot] {
                break;
            }
            counters[slot] = 0;
            slot += 1;
        }
        if counters.iter().all(|&c| c == 0) && free.is_empty() {
            unreachable!("n = 1 handled by the slot == len branch above");
        }
    }
}

/// Monte-Carlo upper bound on the support value: evaluates the pairing on
/// `budget` sampled states, keeps the best, then refines it by a projected
/// descent walk (steps along `-x` projected onto the hyperplane, shrunk by
/// 0.7 whenever the ball constraint rejects or the value fails to improve;
/// 200 step attempts).
///
/// The result is always an upper bound on `m_eps(x)`; determinism follows
/// from the seeded sampler.
pub fn randomized_min_pairing(
    spec: &StateSetSpec,
    x: &Element,
    budget: usize,
    seed: u64,
) -> Result<RandomizedMinimum> {
    let space = spec.space();
    space.check_element(x)?;
    let e = space.unit();
    let eps = spec.eps();
    let y0 = minimal_state(spec)?;

    let mut best_y = y0.clone();
    let mut best_value = space.pair(x, &best_y)?;
    let mut evaluations = 1usize;

    let samples = sample_states(spec, budget, seed)?;
    for y in &samples {
        let value = space.pair(x, y)?;
        evaluations += 1;
        if value < best_value {
            best_value = value;
            best_y = y.clone();
        }
    }

    // Phase 1: deterministic cyclic coordinate descent from the interior
    // minimal state, over hyperplane-tangent exchange directions (including
    // directions aligned with the eigenbasis of x for matrix instances).
    // Chord moves jump to the far ball intersection (the 1-D optimum of a
    // linear objective), which nails polyhedral vertices; interleaved
    // retraction passes along the steepest in-hyperplane direction handle
    // smooth boundaries, where chords shorten quadratically near the
    // optimum and stall.
    let directions = search_directions(space, &y0, x)?;
    {
        let start_value = space.pair(x, &y0)?;
        let (value, iterate, evals) =
            coordinate_descent(space, x, eps, &y0, &directions, y0.clone(), start_value)?;
        evaluations += evals;
        if value < best_value {
            best_value = value;
            best_y = iterate;
        }
    }

    // Phase 2: 200 projected random ray steps from the best point so far.
    // Each step blends the descent direction (-x projected onto the
    // hyperplane) with random jitter, orients the blend downhill, and walks
    // 80% of the way to the ball boundary (staying interior keeps later
    // rays feasible). The jitter scale decays by 0.7 on rejected steps and
    // resets after progress; jitter is what lets the walk slide along
    // faces where pure descent saturates.
    let mut rng = Xorshift64Star::for_stream(seed, "oracle_refine");
    let overlap = space.pair(&e, x)?;
    let descent = x.scaled(-1.0).linear_combination(1.0, &y0, overlap);
    let descent_norm = space.dual_norm(&descent)?;
    let descent = if descent_norm > 1e-12 {
        Some(descent.scaled(1.0 / descent_norm))
    } else {
        None
    };
    let mut sigma = 1.0_f64;
    for _ in 0..200 {
        let raw = match space {
            SpaceDescriptor::WeightedVector { weights, .. } => {
                Element::Vector((0..weights.len()).map(|_| rng.normal()).collect())
            }
            SpaceDescriptor::Matrix { dim, .. } => {
                Element::Matrix(HermitianMatrix::random(*dim, &mut rng)?)
            }
        };
        let overlap = space.pair(&e, &raw)?;
        let jitter = raw.linear_combination(1.0, &y0, -overlap);
        let jitter_norm = space.dual_norm(&jitter)?;
        if jitter_norm < 1e-12 {
            continue;
        }
        let jitter = jitter.scaled(sigma / jitter_norm);
        let blend = match &descent {
            Some(d) => d.linear_combination(1.0, &jitter, 1.0),
            None => jitter,
        };
        let blend_norm = space.dual_norm(&blend)?;
        if blend_norm < 1e-12 {
            sigma = (sigma * 0.7).max(1e-3);
            continue;
        }
        let mut dir = project_to_hyperplane(space, &y0, blend.scaled(1.0 / blend_norm))?;
        let slope = space.pair(x, &dir)?;
        if slope.abs() < 1e-15 * (1.0 + best_value.abs()) {
            sigma = (sigma * 0.7).max(1e-3);
            continue;
        }
        if slope > 0.0 {
            dir = dir.scaled(-1.0);
        }
        // Longest feasible step along the ray (ball check only: the
        // hyperplane is preserved exactly by construction). The slack lets
        // rays slide along flat faces where the norm equals eps up to
        // rounding; the 80% step keeps the iterate safely interior anyway.
        let slack = eps * (1.0 + 1e-12);
        let feasible =
            |t: f64| -> Result<bool> {
                Ok(space.dual_norm(&best_y.linear_combination(1.0, &dir, t))? <= slack)
            };
        let mut hi = eps.max(1e-6);
        let mut expansions = 0;
        while feasible(hi)? && expansions < 64 {
            hi *= 2.0;
            expansions += 1;
        }
        let mut lo = 0.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if feasible(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo <= 1e-14 * eps {
            sigma = (sigma * 0.7).max(1e-3);
            continue;
        }
        // Step only 80% of the way to the boundary: staying interior keeps
        // later rays feasible (a point pinned to a face kills almost every
        // direction), and the geometric slack vanishes over the iterations.
        let candidate = best_y.linear_combination(1.0, &dir, 0.8 * lo);
        let candidate = match retract_to_ball(space, &y0, candidate, eps)? {
            Some(c) => c,
            None => {
                sigma = (sigma * 0.7).max(1e-3);
                continue;
            }
        };
        let value = space.pair(x, &candidate)?;
        evaluations += 1;
        if value < best_value - 1e-15 * (1.0 + best_value.abs()) {
            best_value = value;
            best_y = candidate;
            sigma = 1.0;
        } else {
            sigma = (sigma * 0.7).max(1e-3);
        }
    }

    // Phase 3: coordinate descent again from the random-walk iterate, in
    // case the walk moved into a better basin than the deterministic start.
    {
        let (value, iterate, evals) = coordinate_descent(
            space,
            x,
            eps,
            &y0,
            &directions,
            best_y.clone(),
            best_value,
        )?;
        evaluations += evals;
        if value < best_value {
            best_value = value;
            best_y = iterate;
        }
    }

    // Closing polish: push the iterate radially (from the minimal state)
    // onto the ball boundary — for a linear objective, extending a
    // value-decreasing ray can only help.
    let radial = best_y.linear_combination(1.0, &y0, -1.0);
    if space.pair(x, &radial)? < 0.0 {
        let feasible = |lambda: f64| -> Result<bool> {
            Ok(space.dual_norm(&y0.linear_combination(1.0, &radial, lambda))? <= eps)
        };
        let mut lo = 1.0;
        let mut hi = 2.0;
        let mut expansions = 0;
        while feasible(hi)? && expansions < 64 {
            hi *= 2.0;
            expansions += 1;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if feasible(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let candidate = y0.linear_combination(1.0, &radial, lo);
        let value = space.pair(x, &candidate)?;
        evaluations += 1;
        if value < best_value {
            best_value = value;
            best_y = candidate;
        }
    }

    // Final cleanup: snap the witness back onto the hyperplane (additive
    // correction along y0, which changes <e, y> exactly as needed) and
    // retract into the ball, then report the value at the genuinely
    // feasible point. With projected directions the correction is a no-op
    // up to rounding; it guarantees the reported value is a true upper
    // bound on the minimum regardless of accumulated drift.
    let hyper = space.pair(&e, &best_y)?;
    if (hyper - 1.0).abs() > 1e-14 {
        let corrected = best_y.linear_combination(1.0, &y0, 1.0 - hyper);
        if let Some(clean) = retract_to_ball(space, &y0, corrected, eps)? {
            best_y = clean;
            best_value = space.pair(x, &best_y)?;
            evaluations += 1;
        }
    }

    Ok(RandomizedMinimum {
        value: best_value,
        witness: best_y,
        evaluations,
    })
}

/// Re-projects a search direction onto the hyperplane `<e, d> = 0`.
///
/// Directions built as differences or normalizations of nearby iterates
/// (momentum above all) can amplify accumulated rounding into a relative
/// hyperplane defect; a step along such a direction then *leaves* the
/// state set, and the descent would happily exploit the violation because
/// off-hyperplane motion changes the objective linearly. Projecting each
/// direction right before use keeps every iterate a bona fide state.
fn project_to_hyperplane(
    space: &SpaceDescriptor,
    y0: &Element,
    dir: Element,
) -> Result<Element> {
    let overlap = space.pair(&space.unit(), &dir)?;
    if overlap == 0.0 {
        return Ok(dir);
    }
    Ok(dir.linear_combination(1.0, y0, -overlap))
}

/// Pulls `z` onto the largest feasible point of the segment from the
/// interior anchor `y0` toward `z` (a retraction into the ball). Returns
/// `z` unchanged when it is already feasible, `None` when even a tiny step
/// from the anchor leaves the ball. The anchor lies on the hyperplane and
/// the segment preserves it, so results stay bona fide states.
///
/// This is what lets descent moves slide along flat faces: a candidate
/// whose norm equals `eps` up to rounding is pulled a hair toward the
/// anchor instead of being rejected outright.
fn retract_to_ball(
    space: &SpaceDescriptor,
    y0: &Element,
    z: Element,
    eps: f64,
) -> Result<Option<Element>> {
    if space.dual_norm(&z)? <= eps {
        return Ok(Some(z));
    }
    let offset = z.linear_combination(1.0, y0, -1.0);
    let mut lo = 0.0;
    let mut hi = 1.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if space.dual_norm(&y0.linear_combination(1.0, &offset, mid))? <= eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo <= 1e-14 {
        return Ok(None);
    }
    Ok(Some(y0.linear_combination(1.0, &offset, lo)))
}

/// One retraction line search: candidates `y + t dir` over a geometric
/// step grid (orienting `dir` downhill first), each pulled back into the
/// ball toward `y0`. Updates `y`/`value` in place, returns the number of
/// pairing evaluations. On strictly convex balls this is the move that
/// keeps making progress along the curved boundary where straight chords
/// shorten quadratically and stall.
fn retraction_pass(
    space: &SpaceDescriptor,
    x: &Element,
    eps: f64,
    y0: &Element,
    dir: &Element,
    y: &mut Element,
    value: &mut f64,
) -> Result<usize> {
    let mut evaluations = 0usize;
    let dir = project_to_hyperplane(space, y0, dir.clone())?;
    let slope = space.pair(x, &dir)?;
    let dir = if slope > 0.0 { dir.scaled(-1.0) } else { dir };
    let t0 = 2.0 * eps;
    for k in 0..20 {
        let t = t0 * 0.5_f64.powi(k);
        let candidate =
            match retract_to_ball(space, y0, y.linear_combination(1.0, &dir, t), eps)? {
                Some(c) => c,
                None => continue,
            };
        let cand_value = space.pair(x, &candidate)?;
        evaluations += 1;
        if cand_value < *value - 1e-15 * (1.0 + value.abs()) {
            *value = cand_value;
            *y = candidate;
        }
    }
    Ok(evaluations)
}

/// Cyclic descent for a linear objective on `S_eps`, alternating per round
/// until progress dries up:
///
/// * a **chord sweep** over the tangent basis — along an improving
///   direction the best feasible point of the segment is its far endpoint
///   (the objective is linear), so each move jumps to where the ball
///   binds; ideal on polyhedral balls (`q` in `{1, inf}`), where the
///   minimizer is a vertex reached after finitely many jumps;
/// * a **retraction pass** along the steepest in-hyperplane direction
///   `-(x - <e,x> y0)`, and another along the round's aggregate move
///   (momentum), which compounds the zig-zag progress of the chords on
///   smooth boundaries.
///
/// Feasibility checks allow `eps (1 + 1e-12)` slack, and every accepted
/// candidate is retracted back inside the ball, so the returned iterate is
/// genuinely feasible and the value is a true upper bound on the minimum.
fn coordinate_descent(
    space: &SpaceDescriptor,
    x: &Element,
    eps: f64,
    y0: &Element,
    basis: &[Element],
    mut y: Element,
    mut value: f64,
) -> Result<(f64, Element, usize)> {
    let mut evaluations = 0usize;
    let e = space.unit();
    let overlap = space.pair(&e, x)?;
    let steepest = x.scaled(-1.0).linear_combination(1.0, y0, overlap);
    let steepest_norm = space.dual_norm(&steepest)?;
    let steepest = if steepest_norm > 1e-12 {
        Some(steepest.scaled(1.0 / steepest_norm))
    } else {
        None
    };
    let slack = eps * (1.0 + 1e-12);
    for _round in 0..200 {
        let round_start_value = value;
        let round_start_y = y.clone();

        // Chord sweep.
        for dir in basis {
            let dir = project_to_hyperplane(space, y0, dir.clone())?;
            let slope = space.pair(x, &dir)?;
            if slope.abs() < 1e-14 * (1.0 + value.abs()) {
                continue;
            }
            let dir = if slope > 0.0 { dir.scaled(-1.0) } else { dir };
            let feasible = |t: f64| -> Result<bool> {
                Ok(space.dual_norm(&y.linear_combination(1.0, &dir, t))? <= slack)
            };
            let mut hi = eps.max(1e-6);
            let mut expansions = 0;
            while feasible(hi)? && expansions < 64 {
                hi *= 2.0;
                expansions += 1;
            }
            let mut lo = 0.0;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if feasible(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if lo <= 1e-14 * eps {
                continue;
            }
            let candidate = y.linear_combination(1.0, &dir, lo);
            let candidate = match retract_to_ball(space, y0, candidate, eps)? {
                Some(c) => c,
                None => continue,
            };
            let cand_value = space.pair(x, &candidate)?;
            evaluations += 1;
            if cand_value < value - 1e-15 * (1.0 + value.abs()) {
                value = cand_value;
                y = candidate;
            }
        }

        if let Some(d) = &steepest {
            evaluations += retraction_pass(space, x, eps, y0, d, &mut y, &mut value)?;
        }

        let momentum = y.linear_combination(1.0, &round_start_y, -1.0);
        let momentum_norm = space.dual_norm(&momentum)?;
        if momentum_norm > 1e-12 {
            let m = momentum.scaled(1.0 / momentum_norm);
            evaluations += retraction_pass(space, x, eps, y0, &m, &mut y, &mut value)?;
        }

        if round_start_value - value <= 1e-8 * (1.0 + value.abs()) {
            break;
        }
    }
    Ok((value, y, evaluations))
}

/// Hyperplane-tangent search directions for the descent phases.
///
/// Vector spaces: pairwise exchanges
/// `delta_i / (e_i c_i) - delta_j / (e_j c_j)` — exactly the edge
/// directions of the polyhedral feasible sets at `q in {1, inf}`, so
/// endpoint descent over them is a simplex-style walk — plus free
/// singletons where the hyperplane coefficient vanishes and projected
/// singletons for generic coverage.
///
/// Matrix spaces: the standard-basis hermitian units (diagonal ones
/// projected, off-diagonal ones traceless hence already tangent), plus
/// directions aligned with the eigenbasis of `x`: spectral projector
/// exchanges `u_i u_i^* - u_j u_j^*` and projected projectors
/// `u_i u_i^* - I/n`. A pairing minimizer against `x` commutes with `x`,
/// so the aligned exchanges span the face where it lives; feasibility
/// along them is still checked through full Schatten norms, keeping the
/// route independent of the solver's reduction arithmetic.
fn search_directions(
    space: &SpaceDescriptor,
    y0: &Element,
    x: &Element,
) -> Result<Vec<Element>> {
    let e = space.unit();
    let mut out = Vec::new();
    match (space, x) {
        (SpaceDescriptor::WeightedVector { weights, unit, .. }, _) => {
            let n = weights.len();
            let coeff: Vec<f64> = unit.iter().zip(weights).map(|(ei, c)| ei * c).collect();
            // Exchanges first: the sweep is greedy, and exchange moves walk
            // polytope edges toward the right vertex before the broader
            // projected singletons can commit to a coordinate-wise trap.
            for i in 0..n {
                for j in (i + 1)..n {
                    if coeff[i] != 0.0 && coeff[j] != 0.0 {
                        let mut v = vec![0.0; n];
                        v[i] = 1.0 / coeff[i];
                        v[j] = -1.0 / coeff[j];
                        out.push(Element::Vector(v));
                    }
                }
            }
            for i in 0..n {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                if coeff[i] == 0.0 {
                    out.push(Element::Vector(v));
                    continue;
                }
                let raw = Element::Vector(v);
                let overlap = space.pair(&e, &raw)?;
                let d = raw.linear_combination(1.0, y0, -overlap);
                if space.dual_norm(&d)? > 1e-12 {
                    out.push(d);
                }
            }
        }
        (SpaceDescriptor::Matrix { dim, .. }, Element::Matrix(xm)) => {
            let n = *dim;
            let eig = xm.eigh()?;
            let projector =
                |k: usize| eig.assemble_indexed(|i, _| if i == k { 1.0 } else { 0.0 });
            // Aligned exchanges first, same greedy-ordering rationale as in
            // the vector arm: they solve the commuting face of the problem
            // before the standard-basis moves can strand the iterate on a
            // misaligned boundary point.
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = projector(i).linear_combination(1.0, &projector(j), -1.0);
                    out.push(Element::Matrix(d));
                }
            }
            for i in 0..n {
                let raw = Element::Matrix(projector(i));
                let overlap = space.pair(&e, &raw)?;
                out.push(raw.linear_combination(1.0, y0, -overlap));
            }
            let unit_at = |entries: Vec<crate::Complex>| -> Result<Element> {
                Ok(Element::Matrix(HermitianMatrix::new(n, entries)?))
            };
            let zero = || vec![crate::Complex::new(0.0, 0.0); n * n];
            for i in 0..n {
                let mut m = zero();
                m[i * n + i] = crate::Complex::new(1.0, 0.0);
                let raw = unit_at(m)?;
                let overlap = space.pair(&e, &raw)?;
                out.push(raw.linear_combination(1.0, y0, -overlap));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut re = zero();
                    re[i * n + j] = crate::Complex::new(1.0, 0.0);
                    re[j * n + i] = crate::Complex::new(1.0, 0.0);
                    out.push(unit_at(re)?);
                    let mut im = zero();
                    im[i * n + j] = crate::Complex::new(0.0, 1.0);
                    im[j * n + i] = crate::Complex::new(0.0, -1.0);
                    out.push(unit_at(im)?);
                }
            }
        }
        _ => unreachable!("check_element enforces kind agreement"),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Exponent;

    fn vspec(p: f64, weights: Vec<f64>, eps: f64) -> StateSetSpec {
        let space =
            SpaceDescriptor::weighted_vector(Exponent::new(p).unwrap(), weights).unwrap();
        StateSetSpec::new(space, eps).unwrap()
    }

    #[test]
    fn grid_rejects_unsupported_instances() {
        let spec = vspec(2.0, vec![1.0; 4], 2.0);
        let x = Element::Vector(vec![1.0; 4]);
        assert!(grid_min_pairing(&spec, &x, 0.01).is_err());

        let mspace = SpaceDescriptor::matrix(Exponent::new(2.0).unwrap(), 2).unwrap();
        let mspec = StateSetSpec::new(mspace, 2.0).unwrap();
        let xm = Element::Matrix(HermitianMatrix::identity(2).unwrap());
        assert!(grid_min_pairing(&mspec, &xm, 0.01).is_err());

        let spec = vspec(2.0, vec![1.0, 1.0], 2.0);
        let x = Element::Vector(vec![1.0, 0.0]);
        assert!(grid_min_pairing(&spec, &x, -0.5).is_err());
    }

    #[test]
    fn grid_finds_closed_form_sup_norm_minimum() {
        // l^inf(2), uniform weights, eps = 2, x = (3, 1): minimum 0 at
        // (-1/2, 3/2) (hand-derived two-coordinate state).
        let spec = vspec(f64::INFINITY, vec![1.0, 1.0], 2.0);
        let x = Element::Vector(vec![3.0, 1.0]);
        let g = grid_min_pairing(&spec, &x, 1e-3).unwrap();
        assert!(
            g.value.abs() <= g.error_bound + 1e-9,
            "grid min {} (bound {})",
            g.value,
            g.error_bound
        );
        assert!(g.value >= -1e-12, "grid value must stay above the true minimum");
        assert!(g.states_scanned > 1000);
    }

    #[test]
    fn grid_matches_hilbert_closed_form() {
        // Euclidean pair space: m_eps(x) computable in closed form as
        // <x, e>/||e||^2-part minus the orthogonal part's stretch.
        // For weights (1,1), unit e = (1,1)/sqrt(2) normalized by the
        // default unit convention: just cross-check grid against the direct
        // 2D formula min over the circle segment.
        let spec = vspec(2.0, vec![1.0, 1.0], 1.4);
        let x = Element::Vector(vec![2.0, -1.0]);
        // Direct polar scan at fine resolution (independent arithmetic).
        let space = spec.space();
        let e = match space.unit() {
            Element::Vector(v) => v,
            _ => unreachable!(),
        };
        let mut direct = f64::INFINITY;
        let steps = 400_000;
        for k in 0..steps {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
            let y = [1.4 * theta.cos(), 1.4 * theta.sin()];
            let hyper: f64 = y.iter().zip(&e).map(|(a, b)| a * b).sum();
            // Project the circle point radially onto the hyperplane when
            // possible: scale so <e, y> = 1 (stays in the ball iff scale <= 1).
            if hyper.abs() > 1e-9 {
                let scale = 1.0 / hyper;
                if scale.abs() <= 1.0 + 1e-12 && scale > 0.0 {
                    let v = scale * (2.0 * y[0] - 1.0 * y[1]);
                    direct = direct.min(v);
                }
            }
        }
        let g = grid_min_pairing(&spec, &x, 2e-4).unwrap();
        assert!(
            (g.value - direct).abs() <= 5e-3,
            "grid {} vs polar scan {direct}",
            g.value
        );
    }

    #[test]
    fn randomized_oracle_upper_bounds_known_minimum() {
        // S_1(M_3), eps = 1, x = diag(2, 0, 1): true minimum -1.
        let space = SpaceDescriptor::matrix(Exponent::new(1.0).unwrap(), 3).unwrap();
        let spec = StateSetSpec::new(space, 1.0).unwrap();
        let x = Element::Matrix(HermitianMatrix::from_diag(&[2.0, 0.0, 1.0]).unwrap());
        let r = randomized_min_pairing(&spec, &x, 10_000, 0).unwrap();
        assert!(r.value >= -1.0 - 1e-9, "oracle value {} below the true minimum", r.value);
        assert!(
            r.value <= -1.0 + 1e-3,
            "oracle search too weak: {} (want <= -0.999)",
            r.value
        );
        // Witness feasibility.
        let hyper = spec
            .space()
            .pair(&spec.space().unit(), &r.witness)
            .unwrap();
        assert!((hyper - 1.0).abs() < 1e-8);
        assert!(spec.space().dual_norm(&r.witness).unwrap() <= 1.0 + 1e-8);
    }

    #[test]
    fn randomized_oracle_is_deterministic() {
        let spec = vspec(1.5, vec![1.0, 2.0, 0.5], 1.3);
        let x = Element::Vector(vec![0.3, -1.2, 0.8]);
        let a = randomized_min_pairing(&spec, &x, 500, 42).unwrap();
        let b = randomized_min_pairing(&spec, &x, 500, 42).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.evaluations, b.evaluations);
    }
}
