//! Pinned numeric tolerances.
//!
//! Every tolerance the crate relies on lives here, with the reasoning that
//! fixed it. Solvers and tests import these constants instead of re-deriving
//! ad-hoc epsilons, so a change here is a deliberate, reviewable event.
//!
//! Three rough tiers appear:
//!
//! * `1e-12 .. 1e-15` — identities that hold to rounding error of the
//!   underlying f64 arithmetic (constructor symmetry checks, bisection
//!   residuals, exact rational values).
//! * `1e-9 .. 1e-10` — results of iterative spectral computations, where a
//!   few orders of magnitude over machine epsilon absorb accumulated rounding
//!   across Jacobi sweeps and norm evaluations.
//! * `1e-3 .. 1e-8` — statistical or sampled quantities (randomized oracle
//!   gaps, grid-sampled norms), limited by sampling resolution rather than
//!   arithmetic.

/// Relative skew allowed when constructing a hermitian matrix from raw
/// entries: the anti-hermitian part must satisfy
/// `||A - A*||_F / 2 <= HERMITIAN_SKEW_REL * (1 + ||A||_F)`.
pub const HERMITIAN_SKEW_REL: f64 = 1e-12;

/// Jacobi convergence: sweeps stop once the off-diagonal Frobenius mass
/// drops below `JACOBI_OFF_REL * ||A||_F`.
pub const JACOBI_OFF_REL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps before reporting non-convergence. Cyclic Jacobi
/// on hermitian input converges quadratically; 64 sweeps is far beyond what
/// dimension <= 64 ever needs and exists to bound runtime on broken input.
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Reconstruction quality of an eigensystem: `||A - U diag(w) U*||_F` and
/// `||U*U - I||_F` must both stay below this times `(1 + ||A||_F)` (and 1,
/// respectively).
pub const EIG_RECONSTRUCTION: f64 = 1e-10;

/// Eigenvalues with `|w| <= SPECTRAL_ZERO_REL * (1 + ||A||_F)` are treated
/// as exact zeros when splitting a matrix into positive/negative parts, so
/// numerically-zero modes do not pollute either part.
pub const SPECTRAL_ZERO_REL: f64 = 1e-12;

/// Hyperplane residual target for the KKT bisection: iterate until the
/// candidate state satisfies `|<e, y> - 1| <= BISECTION_RESIDUAL * (1 + 1)`.
pub const BISECTION_RESIDUAL: f64 = 1e-12;

/// Iteration cap for scalar bisections (KKT shift, norm-target line search).
pub const BISECTION_MAX_ITER: usize = 200;

/// Default certification tolerance: margins within `+-DEFAULT_TOL` of zero
/// are reported as Boundary rather than Member/NotMember. CLI-overridable.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Slack accepted below a feasibility threshold when validating `eps`
/// (absorbs rounding in `1/||e||_p` itself).
pub const THRESHOLD_SLACK: f64 = 1e-12;

/// Agreement required between independently computed exact quantities
/// (spectral identities, norm additivity, closed forms vs. recursions).
pub const EXACT_CROSS_CHECK: f64 = 1e-10;

/// Agreement required between an exact quantity and one assembled through a
/// longer floating-point pipeline (decomposition reconstructions,
/// orthogonality defects, witness pairings).
pub const PIPELINE_CROSS_CHECK: f64 = 1e-9;

/// Looser agreement for quantities that pass through several spectral
/// factorizations or sampled suprema (unitary-invariance checks, spectrum
/// reassembly, verifier margins).
pub const SPECTRAL_CROSS_CHECK: f64 = 1e-8;

/// Gap allowed between the exact solver and the randomized feasible oracle:
/// the oracle upper-bounds the true minimum, and with the default budget its
/// best sample lands within this of the optimum on well-conditioned
/// instances.
pub const ORACLE_GAP: f64 = 1e-3;

/// Accuracy of the Lanczos log-gamma evaluation for arguments up to ~120,
/// verified against exact factorial and half-integer values.
pub const LOG_GAMMA_ACCURACY: f64 = 1e-13;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers_are_ordered() {
        // Constructor-level checks must be strictly tighter than spectral
        // pipeline checks, which in turn are tighter than sampled ones.
        assert!(HERMITIAN_SKEW_REL < EIG_RECONSTRUCTION);
        assert!(JACOBI_OFF_REL < EIG_RECONSTRUCTION);
        assert!(EIG_RECONSTRUCTION <= PIPELINE_CROSS_CHECK);
        assert!(PIPELINE_CROSS_CHECK <= SPECTRAL_CROSS_CHECK);
        assert!(SPECTRAL_CROSS_CHECK < ORACLE_GAP);
        assert!(BISECTION_RESIDUAL <= EXACT_CROSS_CHECK);
        assert!(DEFAULT_TOL < ORACLE_GAP);
    }

    #[test]
    fn all_positive_and_subunit() {
        for t in [
            HERMITIAN_SKEW_REL,
            JACOBI_OFF_REL,
            EIG_RECONSTRUCTION,
            SPECTRAL_ZERO_REL,
            BISECTION_RESIDUAL,
            DEFAULT_TOL,
            THRESHOLD_SLACK,
            EXACT_CROSS_CHECK,
            PIPELINE_CROSS_CHECK,
            SPECTRAL_CROSS_CHECK,
            ORACLE_GAP,
            LOG_GAMMA_ACCURACY,
        ] {
            assert!(t > 0.0 && t < 1.0, "tolerance out of range: {t}");
        }
    }
}
