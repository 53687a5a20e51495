//! Exact p-adic Newton polygons, Newton indices, and certificates that the
//! Galois group of a rational polynomial contains the alternating group.
//!
//! The pipeline, bottom up:
//!
//! * [`exactpoly`]: exact rational polynomials, Taylor shifts, resultants and
//!   discriminants.
//! * [`primes`]: primality, `p`-adic valuations, primes in arithmetic
//!   progressions, and the finite set of primes whose Newton polygon can be
//!   non-trivial.
//! * [`newton`]: lower convex hulls of `(j, ord_p(a_j))` and the Newton index.
//! * [`modp`]: factorization patterns modulo good primes (Frobenius cycle types).
//! * [`certify`]: the Newton-index criterion and the coefficient-valuation
//!   shortcut that produce [`GaloisCertificate`]s.
//! * [`glp`]: generalized Laguerre polynomials and the `A_n` / `S_n` classifier.
//!
//! All arithmetic is exact. No floating point is used anywhere.

pub mod certify;
pub mod error;
pub mod exactpoly;
pub mod glp;
pub mod modp;
pub mod newton;
pub mod primes;

pub use certify::{
    certify_large_galois, lemma_key_check, GaloisCertificate, Irreducibility,
    IrreducibilityBasis, Verdict,
};
pub use error::{Error, Result};
pub use exactpoly::{
    discriminant, parse_rational, primitive_scale, render_rational, resultant,
    PrimitiveIntegerPolynomial, RationalPolynomial,
};
pub use glp::{classify, find_criterion_prime, schur_discriminant, Classification, GlpParams, Group};
pub use modp::{factor_degrees, is_good_prime, CycleType, ParityEvidence};
pub use newton::{newton_index, newton_polygon, NewtonIndexReport, NewtonPolygon, Segment};
pub use primes::{is_prime, ord_p, Valuation};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type ExactRational = num_rational::BigRational;
