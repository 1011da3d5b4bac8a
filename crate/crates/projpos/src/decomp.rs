//! Orthogonal expansions of hermitian functionals on matrix algebras.
//!
//! A hermitian functional on `M_n` (represented through trace duality by a
//! hermitian matrix `mu`, acting as `y -> tr(mu y)`, with functional norm
//! `||mu||_1`) splits as a difference of two positive functionals whose
//! norms add up: `mu = mu_+ - mu_-` with
//! `||mu||_1 = ||mu_+||_1 + ||mu_-||_1`. On a full matrix algebra the split
//! is unique and realized by the spectral positive/negative parts, which
//! are moreover orthogonal (`mu_+ mu_- = 0`). On a mere operator system
//! uniqueness fails; [`M4Fixture`] packages the classical four-dimensional
//! counterexample carrying two distinct norm-additive splits of the same
//! functional.

use crate::linalg::{schatten_norm, spectral_parts, Complex, HermitianMatrix};
use crate::rng::Xorshift64Star;
use crate::tol;
use crate::{Error, Result};

/// A norm-additive split `mu = mu_plus - mu_minus` into positive parts.
#[derive(Clone, Debug)]
pub struct OrthogonalExpansion {
    /// Positive part (PSD representer).
    pub mu_plus: HermitianMatrix,
    /// Negative part (PSD representer).
    pub mu_minus: HermitianMatrix,
    /// Additivity defect `| ||mu||_1 - ||mu_plus||_1 - ||mu_minus||_1 |`.
    pub defect: f64,
}

/// Frobenius norm of the ordinary matrix product `A B` (which is not
/// hermitian in general); used to audit `mu_+ mu_- = 0`.
pub fn product_frobenius(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    let n = a.dim();
    assert_eq!(n, b.dim(), "dimension mismatch in product");
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..n {
                acc += a.entry(i, k) * b.entry(k, j);
            }
            sum += acc.norm_sqr();
        }
    }
    sum.sqrt()
}

/// Canonical (spectral) orthogonal expansion of a hermitian functional on
/// `M_n`: `mu_plus`/`mu_minus` are the spectral positive/negative parts of
/// the representer, so the split is norm-additive and the parts have
/// orthogonal supports. Audits reconstruction, additivity, and
/// orthogonality before returning.
pub fn orthogonal_expansion(mu: &HermitianMatrix) -> Result<OrthogonalExpansion> {
    let (mu_plus, mu_minus) = spectral_parts(mu)?;
    let scale = 1.0 + mu.frobenius();

    let total = schatten_norm(mu, 1.0)?;
    let plus = schatten_norm(&mu_plus, 1.0)?;
    let minus = schatten_norm(&mu_minus, 1.0)?;
    let defect = (total - plus - minus).abs();
    if defect > 1e-9 * scale {
        return Err(Error::domain(format!(
            "spectral split lost norm additivity: defect {defect:.3e}"
        )));
    }

    let reconstruction = mu_plus
        .linear_combination(1.0, &mu_minus, -1.0)
        .linear_combination(1.0, mu, -1.0)
        .frobenius();
    if reconstruction > 1e-10 * scale {
        return Err(Error::domain(format!(
            "spectral split does not reassemble: residual {reconstruction:.3e}"
        )));
    }

    let orthogonality = product_frobenius(&mu_plus, &mu_minus);
    if orthogonality > 1e-9 * scale * scale {
        return Err(Error::domain(format!(
            "spectral parts are not orthogonal: ||mu_+ mu_-||_F = {orthogonality:.3e}"
        )));
    }

    Ok(OrthogonalExpansion {
        mu_plus,
        mu_minus,
        defect,
    })
}

/// Positivity of a hermitian functional read off its norm alone:
/// a functional is positive exactly when its norm is attained at the unit,
/// i.e. `||mu||_1 = tr(mu)`. Returns that verdict (tolerance `1e-10`
/// relative to the norm scale), cross-checked against the eigenvalue test.
pub fn positive_via_norm(mu: &HermitianMatrix) -> Result<bool> {
    let norm = schatten_norm(mu, 1.0)?;
    let gap = norm - mu.trace();
    let verdict = gap.abs() <= 1e-10 * (1.0 + norm);
    // The norm route can only declare "positive" when every eigenvalue is
    // (numerically) nonnegative: the gap equals twice the negative mass.
    let lambda_min = mu.eigh()?.eigenvalues[0];
    debug_assert!(
        !verdict || lambda_min >= -1e-9 * (1.0 + norm),
        "norm route claimed positive but lambda_min = {lambda_min}"
    );
    Ok(verdict)
}

/// Near-orthogonality witness for a candidate expansion: the spectral
/// projection `y` onto the positive support of `mu_plus - mu_minus`, which
/// for a genuine orthogonal expansion separates the two parts:
/// `tr(mu_plus (e - y)) < eps_w` and `tr(mu_minus y) < eps_w`, with
/// `0 <= y <= e`.
///
/// # Errors
///
/// [`Error::Domain`] when either input is not PSD, and — the deliberate
/// negative path — when the separation inequalities fail, which certifies
/// that the pair is *not* an orthogonal expansion.
pub fn orthogonality_witness(
    mu_plus: &HermitianMatrix,
    mu_minus: &HermitianMatrix,
    eps_w: f64,
) -> Result<HermitianMatrix> {
    if !eps_w.is_finite() || eps_w <= 0.0 {
        return Err(Error::input(format!(
            "witness tolerance must be positive (got {eps_w})"
        )));
    }
    for (name, part) in [("mu_plus", mu_plus), ("mu_minus", mu_minus)] {
        let lmin = part.eigh()?.eigenvalues[0];
        if lmin < -1e-10 * (1.0 + part.frobenius()) {
            return Err(Error::domain(format!(
                "{name} is not PSD: lambda_min = {lmin:.3e}"
            )));
        }
    }
    let diff = mu_plus.linear_combination(1.0, mu_minus, -1.0);
    let floor = tol::SPECTRAL_ZERO_REL * (1.0 + diff.frobenius());
    let eig = diff.eigh()?;
    let y = eig.assemble(|lambda| if lambda > floor { 1.0 } else { 0.0 });
    let identity = HermitianMatrix::identity(y.dim())?;
    let missed_plus = mu_plus.pairing(&identity.linear_combination(1.0, &y, -1.0));
    let crossed_minus = mu_minus.pairing(&y);
    if missed_plus >= eps_w || crossed_minus >= eps_w {
        return Err(Error::domain(format!(
            "not an orthogonal expansion: tr(mu_plus (e - y)) = {missed_plus:.3e}, \
             tr(mu_minus y) = {crossed_minus:.3e}, tolerance {eps_w:.3e}"
        )));
    }
    Ok(y)
}

/// Element of the four-dimensional operator system carrying two distinct
/// orthogonal expansions of the same functional.
///
/// The system is the space of block matrices
///
/// ```text
/// [ lambda  a  ]       [ theta  a  ]
/// [ b*  lambda ]  (+)  [ b*  theta ]     in  M_4,
/// ```
///
/// with the four functionals given on parameters by `mu_1 = lambda`,
/// `mu_2 = theta`, `tau_1 = lambda + a`, `tau_2 = theta + a`. Both pairs
/// split the same difference functional `mu = mu_1 - mu_2 = tau_1 - tau_2`
/// norm-additively, yet the pairs differ — uniqueness of orthogonal
/// expansions fails off full matrix algebras.
#[derive(Clone, Debug)]
pub struct M4Fixture {
    lambda: Complex,
    theta: Complex,
    a: Complex,
    matrix: HermitianMatrix,
}

/// Builds the fixture element for the given parameters.
///
/// # Errors
///
/// Hermitian fixtures need `b = a` and real `lambda`, `theta`; anything
/// else is rejected by the hermitian-matrix constructor.
pub fn m4_fixture(lambda: Complex, theta: Complex, a: Complex, b: Complex) -> Result<M4Fixture> {
    let z = Complex::new(0.0, 0.0);
    let bc = b.conj();
    #[rustfmt::skip]
    let entries = vec![
        lambda, a,      z,      z,
        bc,     lambda, z,      z,
        z,      z,      theta,  a,
        z,      z,      bc,     theta,
    ];
    let matrix = HermitianMatrix::new(4, entries)?;
    Ok(M4Fixture {
        lambda,
        theta,
        a,
        matrix,
    })
}

impl M4Fixture {
    /// Hermitian fixture with real diagonal parameters and `b = a`.
    pub fn hermitian(lambda: f64, theta: f64, a: Complex) -> Result<Self> {
        m4_fixture(
            Complex::new(lambda, 0.0),
            Complex::new(theta, 0.0),
            a,
            a,
        )
    }

    /// The assembled 4x4 block matrix.
    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// First functional of the block-trace pair: picks out `lambda`.
    pub fn mu1(&self) -> Complex {
        self.lambda
    }

    /// Second functional of the block-trace pair: picks out `theta`.
    pub fn mu2(&self) -> Complex {
        self.theta
    }

    /// First functional of the shifted pair: `lambda + a`.
    pub fn tau1(&self) -> Complex {
        self.lambda + self.a
    }

    /// Second functional of the shifted pair: `theta + a`.
    pub fn tau2(&self) -> Complex {
        self.theta + self.a
    }

    /// The difference functional both pairs expand: `lambda - theta`.
    pub fn mu(&self) -> Complex {
        self.lambda - self.theta
    }
}

/// Density-matrix representers of the four fixture functionals on `M_4`
/// (in order `mu_1, mu_2, tau_1, tau_2`). All four are PSD with unit
/// trace; on hermitian fixture elements with real coupling `a` the trace
/// pairings reproduce the parameter rules exactly. Used to run the
/// orthogonality witness on both candidate pairs.
pub fn m4_representers() -> (
    HermitianMatrix,
    HermitianMatrix,
    HermitianMatrix,
    HermitianMatrix,
) {
    let h = 0.5;
    let mu1 = HermitianMatrix::from_diag(&[h, h, 0.0, 0.0]).expect("fixed data");
    let mu2 = HermitianMatrix::from_diag(&[0.0, 0.0, h, h]).expect("fixed data");
    let z = Complex::new(0.0, 0.0);
    let c = Complex::new(h, 0.0);
    #[rustfmt::skip]
    let tau1 = HermitianMatrix::new(4, vec![
        c, c, z, z,
        c, c, z, z,
        z, z, z, z,
        z, z, z, z,
    ])
    .expect("fixed data");
    #[rustfmt::skip]
    let tau2 = HermitianMatrix::new(4, vec![
        z, z, z, z,
        z, z, z, z,
        z, z, c, c,
        z, z, c, c,
    ])
    .expect("fixed data");
    (mu1, mu2, tau1, tau2)
}

/// Estimate of a functional norm on the fixture system by maximizing
/// `|rule(lambda, theta, a)|` over a dense sample of the hermitian unit
/// ball `max(|lambda|, |theta|) + |a| <= 1`: a `lambda`/`theta` grid of
/// pitch 1e-2 crossed with a coarse polar grid in `a`, then 1000 random
/// refinements. The true norm of a linear rule is attained on this ball's
/// extreme points, so the estimate is a lower bound converging from below.
pub fn sampled_functional_norm(
    rule: impl Fn(f64, f64, Complex) -> Complex,
    seed: u64,
) -> f64 {
    let mut best = 0.0_f64;
    let steps = 200; // pitch 1e-2 over [-1, 1]
    let phases = 8;
    for i in 0..=steps {
        let lambda = -1.0 + 2.0 * i as f64 / steps as f64;
        for j in 0..=steps {
            let theta = -1.0 + 2.0 * j as f64 / steps as f64;
            let amax = 1.0 - lambda.abs().max(theta.abs());
            best = best.max(rule(lambda, theta, Complex::new(0.0, 0.0)).norm());
            if amax > 0.0 {
                for k in 0..phases {
                    let phi = std::f64::consts::TAU * k as f64 / phases as f64;
                    let a = Complex::from_polar(amax, phi);
                    best = best.max(rule(lambda, theta, a).norm());
                }
            }
        }
    }
    let mut rng = Xorshift64Star::for_stream(seed, "m4_norm_refine");
    for _ in 0..1000 {
        let lambda = rng.uniform_in(-1.0, 1.0);
        let theta = rng.uniform_in(-1.0, 1.0);
        let amax = 1.0 - lambda.abs().max(theta.abs());
        let a = Complex::from_polar(
            rng.uniform_in(0.0, amax.max(0.0)),
            rng.uniform_in(0.0, std::f64::consts::TAU),
        );
        best = best.max(rule(lambda, theta, a).norm());
    }
    best
}
