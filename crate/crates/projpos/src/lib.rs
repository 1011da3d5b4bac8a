//! Certified projective-positivity computations in finite-dimensional
//! normed *-spaces.
//!
//! The objects of study are unital *-normed spaces `(V, e)` — concretely
//! weighted `l^p` spaces with a designated unit vector, and Schatten
//! `S_p(M_n)` classes with unit a positive multiple of the identity — and the
//! family of *projective cones* they carry:
//!
//! ```text
//! c_eps = { v hermitian : <v, y> >= 0  for every y in S_eps },
//! S_eps = { y hermitian : <e, y> = 1  and  ||y||_dual <= eps }.
//! ```
//!
//! `S_eps` generalizes the state space of an operator system: the hyperplane
//! normalization keeps `y` "unital" while the dual-norm budget `eps` relaxes
//! positivity. Membership of `v` in `c_eps` is decided by the support value
//! `m_eps(v) = inf { <v, y> : y in S_eps }`, which this crate computes two
//! independent ways (an exact KKT/duality solver and a randomized feasible
//! oracle) and certifies with explicit witnesses.
//!
//! What lives where:
//!
//! * [`linalg`] — hermitian matrices, a self-contained cyclic Jacobi
//!   eigensolver, spectral positive/negative parts, Schatten norms, and the
//!   2x2 block positivity test.
//! * [`spaces`] — space descriptors (weighted vectors / matrices), norms,
//!   pairings, conjugate exponents, and the feasibility threshold
//!   `1/||e||_p` below which `S_eps` is empty.
//! * [`states`] — the membership solver: `min_pairing`, `cone_member`,
//!   `eps_norm`, state decomposition into positive parts, and deterministic
//!   state sampling.
//! * [`epspos`] — eps-positivity of elements, the oscillation criterion for
//!   positive functions, and the equivalence report connecting the two to the
//!   state-pairing test.
//! * [`decomp`] — orthogonal expansions of hermitian functionals, the
//!   orthogonality witness, norm additivity, and a 4x4 two-block fixture
//!   whose expansion is visibly non-unique.
//! * [`theorems`] — self-contained verifiers that replay the comparison
//!   theorems (cone identities, chain inclusions, Hilbert–Schmidt closed
//!   forms, the sigma recursion, embedding constants, the l1-vs-sup demo)
//!   over seeded random instances and report failures individually.
//! * [`oracle`] — randomized and grid minimizers over `S_eps` used as the
//!   independent cross-check for the exact solver.
//! * [`cli`] — a JSON-speaking command-line front end over all of the above.
//!
//! Determinism: every randomized routine takes an explicit `u64` seed and
//! uses the crate-local xorshift generator ([`rng`]), so identical inputs
//! produce bit-identical outputs on every platform.

pub mod cli;
pub mod decomp;
pub mod epspos;
mod error;
pub mod linalg;
pub mod oracle;
pub mod rng;
pub mod spaces;
pub mod states;
pub mod theorems;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{Complex, HermitianMatrix};
pub use spaces::{Element, Exponent, SpaceDescriptor};
pub use states::{MembershipCertificate, StateSetSpec, Verdict};
