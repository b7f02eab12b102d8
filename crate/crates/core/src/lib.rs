//! Exact arithmetic for non-archimedean valued fields and equidistribution
//! statistics on Berkovich projective space.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`] — p-adic and t-adic scalars, valuations, realized absolute
//!   values, residue fields;
//! * [`poly`] — sparse multivariate polynomials over those scalars (heights,
//!   normalization, recentering, reduction);
//! * [`berkovich`] — type-I and polydisc points, multiplicative seminorms,
//!   and the normalized test statistic λ_f;
//! * [`reduction`] — the reduction map to residue projective space and
//!   hypersurface membership;
//! * [`multdep`] — multiplicative-dependence certificates for residue torus
//!   points (factorization, integer relation lattices, orbit hit counts);
//! * [`equidist`] — power multisets, S_ℓ statistics, witness polynomials,
//!   and the convergence report driver;
//! * [`sample`] — seeded random generators used by the default test family
//!   and by the test suites.
//!
//! All arithmetic is exact: valuations are integers (plus infinity), realized
//! absolute values and statistics are `BigRational`s, and equality everywhere
//! is decidable canonical-form equality.

pub mod berkovich;
pub mod error;
pub mod equidist;
pub mod field;
mod intmat;
pub mod multdep;
pub mod poly;
pub mod reduction;
pub mod sample;

pub use error::{Error, Result};
pub use field::{FieldKind, FieldSpec, RatFunc, ResidueScalar, Scalar, TPoly, Valuation};
pub use poly::{ExponentVector, Poly, ResiduePoly};
