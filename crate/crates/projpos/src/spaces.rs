//! Unital normed *-spaces: descriptors, norms, pairings, duality.
//!
//! Two kinds of space are supported, both finite-dimensional and hermitian:
//!
//! * **Weighted vector spaces** `l^p(c)` — real vectors paired through
//!   strictly positive weights, `<x, y> = sum_j x_j y_j c_j`, with norm
//!   `||x||_p = (sum_j |x_j|^p c_j)^{1/p}` (sup-norm at `p = inf`). These
//!   model function systems over a finite measure space.
//! * **Matrix spaces** `S_p(M_n)` — hermitian `n x n` matrices paired by the
//!   trace, with Schatten norm `tr(|x|^p)^{1/p}`.
//!
//! Each space carries a designated *unit* `e`. Dual objects (functionals,
//! states) live in the same coordinates and are measured in the conjugate
//! exponent `q = p/(p-1)`. The weighted pairing identifies the dual of
//! `l^p(c)` with `l^q(c)` — same weights — and the trace pairing identifies
//! the dual of `S_p` with `S_q`, so one `Element` type serves both sides.
//!
//! Matrix units are restricted to positive scalar multiples of the identity:
//! the spectral reduction used by the state solvers is exact precisely for
//! units commuting with everything. Vector units are arbitrary (any vector
//! with positive norm), which is what the weighted demos need.

use serde::{Deserialize, Serialize};

use crate::linalg::{self, HermitianMatrix};
use crate::{Error, Result};

/// A norm exponent in `[1, inf]`, with `inf` represented exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    /// Finite exponent `p >= 1`.
    Finite(f64),
    /// The sup-norm exponent.
    Infinity,
}

impl Exponent {
    /// Builds an exponent from a float; `+inf` maps to [`Exponent::Infinity`].
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `p < 1` or `p` is NaN.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::domain(format!(
                "norm exponent must satisfy p >= 1 (got {p})"
            )));
        }
        if p.is_infinite() {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(p))
        }
    }

    /// The exponent as a float (`+inf` for [`Exponent::Infinity`]).
    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// True for the sup-norm exponent.
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1`.
    ///
    /// The pair `(1, inf)` maps exactly both ways. For finite `p > 1` the
    /// value is computed as `1 / (1 - 1/p)`, which reproduces clean pairs
    /// like `4/3 <-> 4` exactly in floating point.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(1.0 / (1.0 - 1.0 / p)),
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::input(format!("cannot parse exponent from {s:?}")))?;
        Exponent::new(p)
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        let repr = Repr::deserialize(deserializer)?;
        let exp = match repr {
            Repr::Num(p) => Exponent::new(p),
            Repr::Str(s) => s.parse(),
        };
        exp.map_err(serde::de::Error::custom)
    }
}

/// An element of a space (or of its dual — same coordinates): a real vector
/// for the weighted-vector kind, a hermitian matrix for the matrix kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    /// Element of a weighted vector space.
    Vector(Vec<f64>),
    /// Element of a matrix space.
    Matrix(HermitianMatrix),
}

impl Element {
    /// Coordinate dimension: vector length, or matrix side length.
    pub fn dim(&self) -> usize {
        match self {
            Element::Vector(v) => v.len(),
            Element::Matrix(m) => m.dim(),
        }
    }

    /// Entrywise `alpha * self + beta * other`.
    ///
    /// # Panics
    ///
    /// On kind or dimension mismatch (programming error).
    pub fn linear_combination(&self, alpha: f64, other: &Element, beta: f64) -> Element {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => {
                assert_eq!(a.len(), b.len(), "dimension mismatch");
                Element::Vector(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| alpha * x + beta * y)
                        .collect(),
                )
            }
            (Element::Matrix(a), Element::Matrix(b)) => {
                Element::Matrix(a.linear_combination(alpha, b, beta))
            }
            _ => panic!("element kind mismatch"),
        }
    }

    /// Scalar multiple.
    pub fn scaled(&self, alpha: f64) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.iter().map(|x| alpha * x).collect()),
            Element::Matrix(m) => Element::Matrix(m.scaled(alpha)),
        }
    }

    /// Borrows the vector payload, or errors for matrix elements.
    pub fn as_vector(&self) -> Result<&[f64]> {
        match self {
            Element::Vector(v) => Ok(v),
            Element::Matrix(_) => Err(Error::input("expected a vector element, got a matrix")),
        }
    }

    /// Borrows the matrix payload, or errors for vector elements.
    pub fn as_matrix(&self) -> Result<&HermitianMatrix> {
        match self {
            Element::Matrix(m) => Ok(m),
            Element::Vector(_) => Err(Error::input("expected a matrix element, got a vector")),
        }
    }
}

/// Weighted `p`-norm of a real vector: `(sum |x_j|^p c_j)^{1/p}`, or
/// `max |x_j|` at `p = inf` (positive weights do not move the sup).
pub fn vector_norm(x: &[f64], weights: &[f64], p: Exponent) -> f64 {
    debug_assert_eq!(x.len(), weights.len());
    match p {
        Exponent::Infinity => x.iter().fold(0.0, |m, v| m.max(v.abs())),
        Exponent::Finite(p) => {
            let max = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if max == 0.0 {
                return 0.0;
            }
            // Factor out the largest entry so powf stays in range.
            let sum: f64 = x
                .iter()
                .zip(weights)
                .map(|(v, c)| (v.abs() / max).powf(p) * c)
                .sum();
            max * sum.powf(1.0 / p)
        }
    }
}

/// A unital normed *-space descriptor.
#[derive(Clone, Debug)]
pub enum SpaceDescriptor {
    /// Weighted vector space `l^p(c)` with designated unit vector.
    WeightedVector {
        /// Norm exponent.
        p: Exponent,
        /// Strictly positive weights `c_j`.
        weights: Vec<f64>,
        /// Unit element `e` (any vector with positive norm).
        unit: Vec<f64>,
    },
    /// Schatten space `S_p(M_n)` with unit `unit_scale * I`.
    Matrix {
        /// Norm exponent.
        p: Exponent,
        /// Matrix side length.
        dim: usize,
        /// Positive scalar `alpha` of the unit `alpha * I`.
        unit_scale: f64,
    },
}

impl SpaceDescriptor {
    /// Weighted vector space with the normalized default unit: for finite
    /// `p`, `e = (sum c)^{-1/p} * (1, ..., 1)` (so `||e||_p = 1`); at
    /// `p = inf`, `e = (1, ..., 1)`.
    pub fn weighted_vector(p: Exponent, weights: Vec<f64>) -> Result<Self> {
        let unit = default_vector_unit(p, &weights)?;
        SpaceDescriptor::weighted_vector_with_unit(p, weights, unit)
    }

    /// Weighted vector space with an explicit unit.
    ///
    /// # Errors
    ///
    /// [`Error::Input`] for empty/non-positive/non-finite weights, dimension
    /// mismatch, non-finite unit entries, or a unit with zero norm.
    pub fn weighted_vector_with_unit(
        p: Exponent,
        weights: Vec<f64>,
        unit: Vec<f64>,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::input("weight vector must be nonempty"));
        }
        if weights.iter().any(|c| !c.is_finite() || *c <= 0.0) {
            return Err(Error::input("weights must be finite and strictly positive"));
        }
        if unit.len() != weights.len() {
            return Err(Error::input(format!(
                "unit has dimension {}, weights have dimension {}",
                unit.len(),
                weights.len()
            )));
        }
        if unit.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("unit entries must be finite"));
        }
        if vector_norm(&unit, &weights, p) <= 0.0 {
            return Err(Error::input("unit must have strictly positive norm"));
        }
        Ok(SpaceDescriptor::WeightedVector { p, weights, unit })
    }

    /// Matrix space `S_p(M_n)` with unit the identity.
    pub fn matrix(p: Exponent, dim: usize) -> Result<Self> {
        SpaceDescriptor::matrix_with_scaled_unit(p, dim, 1.0)
    }

    /// Matrix space with unit `alpha * I`, `alpha > 0`.
    pub fn matrix_with_scaled_unit(p: Exponent, dim: usize, alpha: f64) -> Result<Self> {
        if dim == 0 || dim > linalg::MAX_DIM {
            return Err(Error::input(format!(
                "matrix dimension {dim} outside supported range 1..={}",
                linalg::MAX_DIM
            )));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::input(
                "matrix unit must be a strictly positive multiple of the identity",
            ));
        }
        Ok(SpaceDescriptor::Matrix {
            p,
            dim,
            unit_scale: alpha,
        })
    }

    /// Matrix space with an explicit unit matrix, which must be a positive
    /// scalar multiple of the identity (the solver's spectral reduction is
    /// exact only for central units; anything else is rejected here rather
    /// than silently mis-solved).
    pub fn matrix_with_unit(p: Exponent, unit: &HermitianMatrix) -> Result<Self> {
        match unit.as_scalar_multiple_of_identity() {
            Some(alpha) if alpha > 0.0 => {
                SpaceDescriptor::matrix_with_scaled_unit(p, unit.dim(), alpha)
            }
            Some(alpha) => Err(Error::input(format!(
                "matrix unit must be positive (got {alpha} * identity)"
            ))),
            None => Err(Error::input(
                "unsupported matrix unit: only positive scalar multiples of the identity \
                 are accepted (the spectral state solver requires a central unit)",
            )),
        }
    }

    /// The norm exponent `p`.
    pub fn p(&self) -> Exponent {
        match self {
            SpaceDescriptor::WeightedVector { p, .. } => *p,
            SpaceDescriptor::Matrix { p, .. } => *p,
        }
    }

    /// Conjugate exponent `q` of the dual side.
    pub fn q(&self) -> Exponent {
        self.p().conjugate()
    }

    /// Coordinate dimension (vector length / matrix side).
    pub fn dim(&self) -> usize {
        match self {
            SpaceDescriptor::WeightedVector { weights, .. } => weights.len(),
            SpaceDescriptor::Matrix { dim, .. } => *dim,
        }
    }

    /// The unit element `e`.
    pub fn unit(&self) -> Element {
        match self {
            SpaceDescriptor::WeightedVector { unit, .. } => Element::Vector(unit.clone()),
            SpaceDescriptor::Matrix {
                dim, unit_scale, ..
            } => Element::Matrix(
                HermitianMatrix::identity(*dim)
                    .expect("validated dimension")
                    .scaled(*unit_scale),
            ),
        }
    }

    /// Checks that `x` matches the space's kind and dimension.
    pub fn check_element(&self, x: &Element) -> Result<()> {
        match (self, x) {
            (SpaceDescriptor::WeightedVector { weights, .. }, Element::Vector(v)) => {
                if v.len() != weights.len() {
                    return Err(Error::input(format!(
                        "element dimension {} does not match space dimension {}",
                        v.len(),
                        weights.len()
                    )));
                }
                if v.iter().any(|t| !t.is_finite()) {
                    return Err(Error::input("element entries must be finite"));
                }
                Ok(())
            }
            (SpaceDescriptor::Matrix { dim, .. }, Element::Matrix(m)) => {
                if m.dim() != *dim {
                    return Err(Error::input(format!(
                        "element dimension {} does not match space dimension {dim}",
                        m.dim()
                    )));
                }
                Ok(())
            }
            (SpaceDescriptor::WeightedVector { .. }, Element::Matrix(_)) => {
                Err(Error::input("vector space cannot hold a matrix element"))
            }
            (SpaceDescriptor::Matrix { .. }, Element::Vector(_)) => {
                Err(Error::input("matrix space cannot hold a vector element"))
            }
        }
    }

    /// Norm of `x` in the space's exponent `p`.
    pub fn norm(&self, x: &Element) -> Result<f64> {
        self.norm_with_exponent(x, self.p())
    }

    /// Norm of `x` in the conjugate exponent `q` (the dual-side norm).
    pub fn dual_norm(&self, y: &Element) -> Result<f64> {
        self.norm_with_exponent(y, self.q())
    }

    /// Norm of `x` at an arbitrary exponent over this space's coordinates
    /// (used by embedding comparisons across exponents).
    pub fn norm_with_exponent(&self, x: &Element, p: Exponent) -> Result<f64> {
        self.check_element(x)?;
        match (self, x) {
            (SpaceDescriptor::WeightedVector { weights, .. }, Element::Vector(v)) => {
                Ok(vector_norm(v, weights, p))
            }
            (SpaceDescriptor::Matrix { .. }, Element::Matrix(m)) => {
                linalg::schatten_norm(m, p.as_f64())
            }
            _ => unreachable!("check_element enforces kind agreement"),
        }
    }

    /// The duality pairing `<x, y>`: weighted dot product, or trace of the
    /// product.
    pub fn pair(&self, x: &Element, y: &Element) -> Result<f64> {
        self.check_element(x)?;
        self.check_element(y)?;
        match (self, x, y) {
            (SpaceDescriptor::WeightedVector { weights, .. }, Element::Vector(a), Element::Vector(b)) => {
                Ok(a.iter()
                    .zip(b)
                    .zip(weights)
                    .map(|((x, y), c)| x * y * c)
                    .sum())
            }
            (SpaceDescriptor::Matrix { .. }, Element::Matrix(a), Element::Matrix(b)) => {
                Ok(a.pairing(b))
            }
            _ => unreachable!("check_element enforces kind agreement"),
        }
    }

    /// `||e||_p` of the unit (closed form for matrix spaces: `alpha n^{1/p}`).
    pub fn unit_norm(&self) -> f64 {
        match self {
            SpaceDescriptor::WeightedVector { p, weights, unit } => vector_norm(unit, weights, *p),
            SpaceDescriptor::Matrix {
                p,
                dim,
                unit_scale,
            } => match p {
                Exponent::Infinity => *unit_scale,
                Exponent::Finite(p) => unit_scale * (*dim as f64).powf(1.0 / p),
            },
        }
    }

    /// The feasibility threshold `1 / ||e||_p`: the smallest dual-norm
    /// budget for which the normalized set
    /// `S_eps = { <e, y> = 1, ||y||_q <= eps }` is nonempty (Hoelder gives
    /// `1 = <e, y> <= ||e||_p ||y||_q`).
    pub fn feasibility_threshold(&self) -> f64 {
        1.0 / self.unit_norm()
    }

    /// A norming functional for `x != 0`: an element `y` with
    /// `||y||_q = 1` and `<x, y> = ||x||_p`, witnessing that the dual-ball
    /// supremum of the pairing attains the norm.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] for `x = 0` (no norming functional exists).
    pub fn norming_functional(&self, x: &Element) -> Result<Element> {
        self.check_element(x)?;
        let norm = self.norm(x)?;
        if norm == 0.0 {
            return Err(Error::domain(
                "norming functional undefined for the zero element",
            ));
        }
        match (self, x) {
            (SpaceDescriptor::WeightedVector { p, weights, .. }, Element::Vector(v)) => {
                let y = match p {
                    // p = 1: y = sign(x), sup-norm 1.
                    Exponent::Finite(p) if *p == 1.0 => {
                        v.iter().map(|t| sign(*t)).collect::<Vec<f64>>()
                    }
                    // 1 < p < inf: y_j = sign(x_j) (|x_j| / ||x||)^{p-1}.
                    Exponent::Finite(p) => v
                        .iter()
                        .map(|t| sign(*t) * (t.abs() / norm).powf(p - 1.0))
                        .collect(),
                    // p = inf: unit point mass (in the weighted pairing) at
                    // the first coordinate attaining the sup.
                    Exponent::Infinity => {
                        let k = argmax_abs(v);
                        let mut y = vec![0.0; v.len()];
                        y[k] = sign(v[k]) / weights[k];
                        y
                    }
                };
                Ok(Element::Vector(y))
            }
            (SpaceDescriptor::Matrix { p, .. }, Element::Matrix(m)) => {
                let eig = m.eigh()?;
                let y = match p {
                    Exponent::Finite(p) if *p == 1.0 => eig.assemble(|w| sign(w)),
                    Exponent::Finite(p) => {
                        let p = *p;
                        eig.assemble(|w| sign(w) * (w.abs() / norm).powf(p - 1.0))
                    }
                    Exponent::Infinity => {
                        // Rank-one projection onto a single extreme
                        // eigenvector (largest magnitude; ties prefer the
                        // top of the spectrum).
                        let lo = eig.eigenvalues[0];
                        let hi = *eig.eigenvalues.last().expect("nonempty");
                        let (k, s) = if hi.abs() >= lo.abs() {
                            (eig.eigenvalues.len() - 1, 1.0)
                        } else {
                            (0, -1.0)
                        };
                        eig.assemble_indexed(|i, _| if i == k { s } else { 0.0 })
                    }
                };
                Ok(Element::Matrix(y))
            }
            _ => unreachable!("check_element enforces kind agreement"),
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

/// Index of the largest `|v_j|`, smallest index on ties.
fn argmax_abs(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, t) in v.iter().enumerate() {
        if t.abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

/// Default unit of a weighted vector space (see
/// [`SpaceDescriptor::weighted_vector`]).
fn default_vector_unit(p: Exponent, weights: &[f64]) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(Error::input("weight vector must be nonempty"));
    }
    if weights.iter().any(|c| !c.is_finite() || *c <= 0.0) {
        return Err(Error::input("weights must be finite and strictly positive"));
    }
    let n = weights.len();
    match p {
        Exponent::Infinity => Ok(vec![1.0; n]),
        Exponent::Finite(p) => {
            let total: f64 = weights.iter().sum();
            let t = total.powf(-1.0 / p);
            Ok(vec![t; n])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Xorshift64Star;

    #[test]
    fn conjugate_exponent_exact_pairs() {
        assert_eq!(Exponent::new(1.0).unwrap().conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(
            Exponent::new(2.0).unwrap().conjugate(),
            Exponent::Finite(2.0)
        );
        // The clean pair 4/3 <-> 4 must reproduce exactly in f64.
        match Exponent::new(4.0 / 3.0).unwrap().conjugate() {
            Exponent::Finite(q) => assert_eq!(q, 4.0),
            Exponent::Infinity => panic!("conjugate of 4/3 is finite"),
        }
        match Exponent::new(4.0).unwrap().conjugate() {
            Exponent::Finite(q) => assert_eq!(q, 4.0 / 3.0),
            Exponent::Infinity => panic!("conjugate of 4 is finite"),
        }
    }

    #[test]
    fn conjugate_is_involutive_numerically() {
        for p in [1.0, 1.25, 1.5, 2.0, 3.0, 7.5, f64::INFINITY] {
            let e = Exponent::new(p).unwrap();
            let back = e.conjugate().conjugate();
            assert!(
                (back.as_f64() - e.as_f64()).abs() < 1e-12
                    || (back.is_infinite() && e.is_infinite()),
                "round trip of {p} gave {back:?}"
            );
        }
    }

    #[test]
    fn exponent_rejects_bad_values() {
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert!(Exponent::new(-1.0).is_err());
    }

    #[test]
    fn exponent_parses_and_serializes() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert_eq!(serde_json::to_string(&Exponent::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Exponent::Finite(2.0)).unwrap(), "2.0");
        let from_num: Exponent = serde_json::from_str("1.5").unwrap();
        assert_eq!(from_num, Exponent::Finite(1.5));
        let from_str: Exponent = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(from_str, Exponent::Infinity);
    }

    /// Norm tables with hand-computed values.
    #[test]
    fn vector_norm_known_values() {
        // l^1 with unit weights: ||(1, -1)||_1 = 2.
        assert_eq!(vector_norm(&[1.0, -1.0], &[1.0, 1.0], Exponent::Finite(1.0)), 2.0);
        // l^2 with weights (2, 2, 2): ||(1, 1, 1)||_2 = sqrt(6).
        let n = vector_norm(&[1.0, 1.0, 1.0], &[2.0, 2.0, 2.0], Exponent::Finite(2.0));
        assert!((n - 6.0_f64.sqrt()).abs() < 1e-12);
        // sup norm ignores weights.
        assert_eq!(
            vector_norm(&[3.0, -7.0], &[0.1, 9.0], Exponent::Infinity),
            7.0
        );
    }

    #[test]
    fn default_units_are_normalized() {
        for (p, weights) in [
            (1.0, vec![1.0, 2.0, 3.0]),
            (2.0, vec![0.5, 0.5]),
            (3.5, vec![2.0, 2.0, 2.0, 2.0]),
        ] {
            let space =
                SpaceDescriptor::weighted_vector(Exponent::new(p).unwrap(), weights).unwrap();
            assert!(
                (space.unit_norm() - 1.0).abs() < 1e-12,
                "p={p}: unit norm {}",
                space.unit_norm()
            );
            assert!((space.feasibility_threshold() - 1.0).abs() < 1e-12);
        }
        let sup = SpaceDescriptor::weighted_vector(Exponent::Infinity, vec![1.0, 4.0]).unwrap();
        assert_eq!(sup.unit_norm(), 1.0);
    }

    #[test]
    fn unit_pairing_is_one_across_exponent_pairs() {
        // <e_p, e_q> = 1 for the default units of conjugate spaces over the
        // same weights.
        for p in [1.0, 4.0 / 3.0, 2.0, 3.0] {
            let weights = vec![0.7, 1.3, 2.5];
            let ep = Exponent::new(p).unwrap();
            let space_p = SpaceDescriptor::weighted_vector(ep, weights.clone()).unwrap();
            let space_q = SpaceDescriptor::weighted_vector(ep.conjugate(), weights).unwrap();
            let pairing = space_p.pair(&space_p.unit(), &space_q.unit()).unwrap();
            assert!((pairing - 1.0).abs() < 1e-12, "p={p}: <e_p, e_q> = {pairing}");
        }
    }

    #[test]
    fn matrix_threshold_closed_form() {
        for (p, dim) in [(1.0, 3), (2.0, 3), (4.0, 5)] {
            let space = SpaceDescriptor::matrix(Exponent::new(p).unwrap(), dim).unwrap();
            let expect = (dim as f64).powf(-1.0 / p);
            assert!(
                (space.feasibility_threshold() - expect).abs() < 1e-12,
                "p={p}, n={dim}"
            );
        }
        let sup = SpaceDescriptor::matrix(Exponent::Infinity, 4).unwrap();
        assert!((sup.feasibility_threshold() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_units_must_be_central() {
        let diag = HermitianMatrix::from_diag(&[1.0, 2.0]).unwrap();
        assert!(SpaceDescriptor::matrix_with_unit(Exponent::Finite(2.0), &diag).is_err());
        let neg = HermitianMatrix::identity(2).unwrap().scaled(-1.0);
        assert!(SpaceDescriptor::matrix_with_unit(Exponent::Finite(2.0), &neg).is_err());
        let ok = HermitianMatrix::identity(2).unwrap().scaled(3.0);
        let space = SpaceDescriptor::matrix_with_unit(Exponent::Finite(2.0), &ok).unwrap();
        assert!((space.unit_norm() - 3.0 * 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn descriptor_validation_rejects_bad_weights_and_units() {
        assert!(SpaceDescriptor::weighted_vector(Exponent::Finite(2.0), vec![]).is_err());
        assert!(SpaceDescriptor::weighted_vector(Exponent::Finite(2.0), vec![1.0, 0.0]).is_err());
        assert!(SpaceDescriptor::weighted_vector(Exponent::Finite(2.0), vec![1.0, -1.0]).is_err());
        assert!(SpaceDescriptor::weighted_vector_with_unit(
            Exponent::Finite(2.0),
            vec![1.0, 1.0],
            vec![0.0, 0.0]
        )
        .is_err());
        assert!(SpaceDescriptor::weighted_vector_with_unit(
            Exponent::Finite(2.0),
            vec![1.0, 1.0],
            vec![1.0]
        )
        .is_err());
    }

    #[test]
    fn hoelder_inequality_on_random_pairs() {
        let mut rng = Xorshift64Star::new(5);
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let space = SpaceDescriptor::weighted_vector(
                Exponent::new(p).unwrap(),
                vec![0.5, 1.0, 2.0, 0.25],
            )
            .unwrap();
            for _ in 0..50 {
                let x = Element::Vector((0..4).map(|_| rng.normal()).collect());
                let y = Element::Vector((0..4).map(|_| rng.normal()).collect());
                let lhs = space.pair(&x, &y).unwrap().abs();
                let rhs = space.norm(&x).unwrap() * space.dual_norm(&y).unwrap();
                assert!(lhs <= rhs + 1e-9 * (1.0 + rhs), "p={p}: {lhs} > {rhs}");
            }
        }
    }

    #[test]
    fn norming_functional_attains_the_norm() {
        let mut rng = Xorshift64Star::new(17);
        for p in [1.0, 4.0 / 3.0, 2.0, 3.0, f64::INFINITY] {
            let exp = Exponent::new(p).unwrap();
            // Vector kind with non-trivial weights.
            let space =
                SpaceDescriptor::weighted_vector(exp, vec![0.5, 1.5, 1.0]).unwrap();
            for _ in 0..20 {
                let x = Element::Vector((0..3).map(|_| rng.normal()).collect());
                let y = space.norming_functional(&x).unwrap();
                let q_norm = space.dual_norm(&y).unwrap();
                let pairing = space.pair(&x, &y).unwrap();
                let norm = space.norm(&x).unwrap();
                assert!((q_norm - 1.0).abs() < 1e-9, "p={p}: ||y||_q = {q_norm}");
                assert!(
                    (pairing - norm).abs() < 1e-6 * (1.0 + norm),
                    "p={p}: <x,y> = {pairing}, ||x|| = {norm}"
                );
            }
            // Matrix kind.
            let mspace = SpaceDescriptor::matrix(exp, 3).unwrap();
            for _ in 0..10 {
                let x = Element::Matrix(HermitianMatrix::random(3, &mut rng).unwrap());
                let y = mspace.norming_functional(&x).unwrap();
                let q_norm = mspace.dual_norm(&y).unwrap();
                let pairing = mspace.pair(&x, &y).unwrap();
                let norm = mspace.norm(&x).unwrap();
                assert!((q_norm - 1.0).abs() < 1e-8, "p={p}: ||y||_q = {q_norm}");
                assert!(
                    (pairing - norm).abs() < 1e-6 * (1.0 + norm),
                    "p={p}: <x,y> = {pairing}, ||x|| = {norm}"
                );
            }
        }
    }

    #[test]
    fn norming_functional_rejects_zero() {
        let space = SpaceDescriptor::weighted_vector(Exponent::Finite(2.0), vec![1.0, 1.0]).unwrap();
        assert!(space
            .norming_functional(&Element::Vector(vec![0.0, 0.0]))
            .is_err());
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let vspace = SpaceDescriptor::weighted_vector(Exponent::Finite(2.0), vec![1.0; 2]).unwrap();
        let mat = Element::Matrix(HermitianMatrix::identity(2).unwrap());
        assert!(vspace.norm(&mat).is_err());
        let mspace = SpaceDescriptor::matrix(Exponent::Finite(2.0), 2).unwrap();
        assert!(mspace.norm(&Element::Vector(vec![1.0, 0.0])).is_err());
    }
}
