//! Hermitian matrices and spectral primitives.
//!
//! Everything downstream (Schatten norms, spectral positive/negative parts,
//! matrix state solvers) reduces to the hermitian eigenproblem, solved here
//! by a self-contained cyclic Jacobi iteration on complex hermitian input.
//! Jacobi is chosen deliberately: it is simple enough to audit line by line,
//! unconditionally stable on hermitian matrices, and its convergence is
//! certified directly by the off-diagonal Frobenius mass rather than trusted
//! from an opaque library routine.
//!
//! Dimensions are capped at 64: large enough for every construction in the
//! crate, small enough that O(n^3)-per-sweep Jacobi stays instantaneous.

use crate::rng::Xorshift64Star;
use crate::tol;
use crate::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Maximum supported matrix dimension.
pub const MAX_DIM: usize = 64;

/// A hermitian matrix, stored as the exactly-symmetrized `(A + A*)/2` of the
/// entries it was constructed from.
///
/// # Invariants
///
/// * `1 <= n <= 64`;
/// * `entries.len() == n * n`, row-major;
/// * `entries[i*n + j] == conj(entries[j*n + i])` exactly, diagonal exactly
///   real (enforced by construction).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Complex>,
}

impl HermitianMatrix {
    /// Builds a hermitian matrix from raw row-major entries.
    ///
    /// The anti-hermitian part must be negligible: if
    /// `||A - A*||_F / 2 > 1e-12 * (1 + ||A||_F)` the input is rejected,
    /// otherwise the stored matrix is the exact symmetrization `(A + A*)/2`.
    ///
    /// # Errors
    ///
    /// [`Error::Input`] on a dimension outside `1..=64`, an entry count other
    /// than `n*n`, a non-finite entry, or a too-large anti-hermitian part.
    pub fn new(n: usize, entries: Vec<Complex>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::input(format!(
                "matrix dimension {n} outside supported range 1..={MAX_DIM}"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::input(format!(
                "matrix of dimension {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        let norm: f64 = entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut skew_sq = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s = (entries[i * n + j] - entries[j * n + i].conj()) * 0.5;
                skew_sq += s.norm_sqr();
            }
        }
        let skew = skew_sq.sqrt();
        if skew > tol::HERMITIAN_SKEW_REL * (1.0 + norm) {
            return Err(Error::input(format!(
                "matrix is not hermitian: anti-hermitian part has Frobenius norm {skew:.3e} \
                 (allowed {:.3e})",
                tol::HERMITIAN_SKEW_REL * (1.0 + norm)
            )));
        }
        let mut sym = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            sym[i * n + i] = Complex::new(entries[i * n + i].re, 0.0);
            for j in (i + 1)..n {
                let v = (entries[i * n + j] + entries[j * n + i].conj()) * 0.5;
                sym[i * n + j] = v;
                sym[j * n + i] = v.conj();
            }
        }
        Ok(HermitianMatrix { n, entries: sym })
    }

    /// Diagonal matrix from real diagonal entries.
    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut entries = vec![Complex::new(0.0, 0.0); n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = Complex::new(*d, 0.0);
        }
        HermitianMatrix::new(n, entries)
    }

    /// The `n x n` identity.
    pub fn identity(n: usize) -> Result<Self> {
        HermitianMatrix::from_diag(&vec![1.0; n])
    }

    /// The `n x n` zero matrix.
    pub fn zero(n: usize) -> Result<Self> {
        HermitianMatrix::from_diag(&vec![0.0; n])
    }

    /// Random hermitian matrix with standard-normal real diagonal and
    /// complex off-diagonal entries scaled by `1/sqrt(2)` per component
    /// (Gaussian unitary ensemble normalization). Deterministic in `rng`.
    pub fn random(n: usize, rng: &mut Xorshift64Star) -> Result<Self> {
        let mut entries = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex::new(rng.normal(), 0.0);
            for j in (i + 1)..n {
                let v = Complex::new(rng.normal(), rng.normal()) * std::f64::consts::FRAC_1_SQRT_2;
                entries[i * n + j] = v;
                entries[j * n + i] = v.conj();
            }
        }
        HermitianMatrix::new(n, entries)
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entry access.
    pub fn entry(&self, i: usize, j: usize) -> Complex {
        self.entries[i * self.n + j]
    }

    /// All entries, row-major.
    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    /// Trace (exactly real for hermitian input).
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entries[i * self.n + i].re).sum()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Entrywise linear combination `alpha * self + beta * other`.
    ///
    /// # Panics
    ///
    /// If dimensions differ (programming error, not input error).
    pub fn linear_combination(&self, alpha: f64, other: &HermitianMatrix, beta: f64) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in linear combination");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * alpha + b * beta)
            .collect();
        HermitianMatrix {
            n: self.n,
            entries,
        }
    }

    /// Scalar multiple.
    pub fn scaled(&self, alpha: f64) -> Self {
        HermitianMatrix {
            n: self.n,
            entries: self.entries.iter().map(|z| z * alpha).collect(),
        }
    }

    /// Trace pairing `tr(A B)`, exactly real for hermitian `A`, `B`.
    ///
    /// # Panics
    ///
    /// If dimensions differ.
    pub fn pairing(&self, other: &HermitianMatrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch in trace pairing");
        // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij).
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a * b.conj()).re)
            .sum()
    }

    /// True when `self` is a scalar multiple of the identity; returns the
    /// scalar if so (off-diagonal and diagonal-spread tolerance relative to
    /// the Frobenius norm).
    pub fn as_scalar_multiple_of_identity(&self) -> Option<f64> {
        let alpha = self.trace() / self.n as f64;
        let scale = 1.0 + self.frobenius();
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j {
                    Complex::new(alpha, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                };
                if (self.entry(i, j) - target).norm() > tol::HERMITIAN_SKEW_REL * scale {
                    return None;
                }
            }
        }
        Some(alpha)
    }

    /// Full eigendecomposition by cyclic complex Jacobi iteration.
    ///
    /// Sweeps run until the off-diagonal Frobenius mass falls below
    /// `1e-13 * ||A||_F`, with a hard cap of 64 sweeps. Eigenvalues are
    /// returned in ascending order with matching eigenvector columns.
    ///
    /// # Errors
    ///
    /// [`Error::EigNoConvergence`] with the final residual if the sweep cap
    /// is reached first (not observed on hermitian input; the cap bounds
    /// runtime defensively).
    pub fn eigh(&self) -> Result<Eigensystem> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut u = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            u[i * n + i] = Complex::new(1.0, 0.0);
        }
        let threshold = tol::JACOBI_OFF_REL * self.frobenius();
        // Pivots this small cannot lift the total off-diagonal mass above the
        // threshold even if all of them are skipped (n^2/2 of them, each
        // contributing 2|a_pq|^2 <= threshold^2 / (2 n^2)).
        let skip = threshold / (2.0 * n as f64);
        let mut converged = false;
        let mut residual = off_diagonal_frobenius(&a, n);
        let mut sweeps = 0;
        while sweeps < tol::JACOBI_MAX_SWEEPS {
            if residual <= threshold {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    let mag = apq.norm();
                    if mag <= skip {
                        continue;
                    }
                    let phase = apq / mag; // e^{i phi}
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    let tau = (aqq - app) / (2.0 * mag);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Unitary V = P G acting on coordinates (p, q):
                    //   V_pp = c          V_pq = s
                    //   V_qp = -s e^{-i phi}   V_qq = c e^{-i phi}
                    // A <- V* A V zeroes the (p, q) entry; U <- U V.
                    let vqp = -phase.conj() * s;
                    let vqq = phase.conj() * c;
                    // Column update A <- A V on columns p, q.
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = akp * c + akq * vqp;
                        a[k * n + q] = akp * s + akq * vqq;
                    }
                    // Row update A <- V* A on rows p, q.
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = apk * c + aqk * vqp.conj();
                        a[q * n + k] = apk * s + aqk * vqq.conj();
                    }
                    // The pivot is zero by construction; store it exactly and
                    // keep the diagonal exactly real.
                    a[p * n + q] = Complex::new(0.0, 0.0);
                    a[q * n + p] = Complex::new(0.0, 0.0);
                    a[p * n + p] = Complex::new(a[p * n + p].re, 0.0);
                    a[q * n + q] = Complex::new(a[q * n + q].re, 0.0);
                    // Accumulate U <- U V.
                    for k in 0..n {
                        let ukp = u[k * n + p];
                        let ukq = u[k * n + q];
                        u[k * n + p] = ukp * c + ukq * vqp;
                        u[k * n + q] = ukp * s + ukq * vqq;
                    }
                }
            }
            sweeps += 1;
            residual = off_diagonal_frobenius(&a, n);
        }
        if !converged && residual > threshold {
            return Err(Error::EigNoConvergence {
                residual,
                threshold,
                sweeps,
            });
        }
        // Ascending sort of eigenvalues, permuting eigenvector columns along.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a[i * n + i]
                .re
                .partial_cmp(&a[j * n + j].re)
                .expect("eigenvalues are finite")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
        let mut basis = vec![Complex::new(0.0, 0.0); n * n];
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                basis[row * n + new_col] = u[row * n + old_col];
            }
        }
        Ok(Eigensystem {
            n,
            eigenvalues,
            basis,
        })
    }
}

/// Off-diagonal Frobenius mass of a row-major `n x n` matrix.
fn off_diagonal_frobenius(a: &[Complex], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Result of [`HermitianMatrix::eigh`]: `A = U diag(w) U*` with `w`
/// ascending and `U` unitary (columns are eigenvectors).
#[derive(Clone, Debug)]
pub struct Eigensystem {
    n: usize,
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary basis, row-major; column `j` is the eigenvector of
    /// `eigenvalues[j]`.
    pub basis: Vec<Complex>,
}

impl Eigensystem {
    /// Dimension of the decomposed matrix.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Basis entry `U[i][j]`.
    pub fn basis_entry(&self, i: usize, j: usize) -> Complex {
        self.basis[i * self.n + j]
    }

    /// Assembles `U diag(f(w)) U*` as a hermitian matrix — the workhorse for
    /// spectral parts, spectral projections, and matrix witnesses.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        self.assemble_indexed(|_, w| f(w))
    }

    /// Like [`Eigensystem::assemble`], but the closure also receives the
    /// (ascending-order) eigenvalue index, so callers can target individual
    /// eigenvectors even when eigenvalues repeat.
    pub fn assemble_indexed(&self, f: impl Fn(usize, f64) -> f64) -> HermitianMatrix {
        let n = self.n;
        let values: Vec<f64> = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &w)| f(k, w))
            .collect();
        let mut entries = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let mut sum = Complex::new(0.0, 0.0);
                for (k, &v) in values.iter().enumerate() {
                    if v != 0.0 {
                        sum += self.basis[i * n + k] * self.basis[j * n + k].conj() * v;
                    }
                }
                if i == j {
                    entries[i * n + i] = Complex::new(sum.re, 0.0);
                } else {
                    entries[i * n + j] = sum;
                    entries[j * n + i] = sum.conj();
                }
            }
        }
        HermitianMatrix { n, entries }
    }

    /// `||A - U diag(w) U*||_F` against the given original.
    pub fn reconstruction_defect(&self, original: &HermitianMatrix) -> f64 {
        let rebuilt = self.assemble(|w| w);
        original.linear_combination(1.0, &rebuilt, -1.0).frobenius()
    }

    /// `||U* U - I||_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n;
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut dot = Complex::new(0.0, 0.0);
                for k in 0..n {
                    dot += self.basis[k * n + i].conj() * self.basis[k * n + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                sum += (dot - Complex::new(target, 0.0)).norm_sqr();
            }
        }
        sum.sqrt()
    }
}

/// Splits `A = A_plus - A_minus` into its spectral positive and negative
/// parts, both positive semidefinite with orthogonal supports.
///
/// Eigenvalues within `1e-12 * (1 + ||A||_F)` of zero are assigned to
/// neither part, so numerically-zero modes do not leak into either side.
pub fn spectral_parts(a: &HermitianMatrix) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let eig = a.eigh()?;
    let floor = tol::SPECTRAL_ZERO_REL * (1.0 + a.frobenius());
    let plus = eig.assemble(|w| if w > floor { w } else { 0.0 });
    let minus = eig.assemble(|w| if w < -floor { -w } else { 0.0 });
    Ok((plus, minus))
}

/// Schatten p-norm `tr(|A|^p)^{1/p}` for `p in [1, inf]`; `p = inf` is the
/// operator norm `max |w|`.
///
/// # Errors
///
/// [`Error::Domain`] for `p < 1` or non-finite `p` other than `+inf`.
pub fn schatten_norm(a: &HermitianMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::domain(format!(
            "Schatten exponent must satisfy p >= 1 (got {p}); the p-norm is not a norm below 1"
        )));
    }
    let eig = a.eigh()?;
    let max_abs = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |m, &w| m.max(w.abs()));
    if p.is_infinite() {
        return Ok(max_abs);
    }
    if max_abs == 0.0 {
        return Ok(0.0);
    }
    // Factor out the largest magnitude so w^p cannot overflow for large p.
    let sum: f64 = eig
        .eigenvalues
        .iter()
        .map(|&w| (w.abs() / max_abs).powf(p))
        .sum();
    Ok(max_abs * sum.powf(1.0 / p))
}

/// Positivity of the 2x2 hermitian block `[[a1, b], [conj(b), a2]]` via the
/// diagonal-and-determinant characterization: positive semidefinite iff
/// `a1 >= 0`, `a2 >= 0`, and `|b| <= sqrt(a1 a2)`, each checked with an
/// absolute tolerance of 1e-12.
pub fn block2_positive(a1: f64, a2: f64, b: Complex) -> bool {
    const TOL: f64 = 1e-12;
    if a1 < -TOL || a2 < -TOL {
        return false;
    }
    let prod = a1.max(0.0) * a2.max(0.0);
    b.norm() <= prod.sqrt() + TOL
}
