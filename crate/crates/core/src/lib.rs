//! Exact invariants of Seifert-fibered rational homology three-spheres.
//!
//! Everything here runs in exact arithmetic: rationals are `BigRational`,
//! unbounded integers are `BigInt`/`BigUint`, and no operation ever rounds.
//!
//! The layers build on each other from the bottom up:
//!
//! * [`orbifold`] - closed orbifold surfaces with cone points and the
//!   Picard calculus of orbifold line bundles (tensor, inverse, powers,
//!   degrees, section counts over genus-zero bases).
//! * [`seifert`] - circle bundles `S(N)` over such orbifolds, their
//!   Brieskorn and unit-tangent presentations, and spin-c classes on them.
//! * [`plumbing`] - negative-definite star plumbings, determinants,
//!   fundamental cycles, the rational / minimally elliptic classification,
//!   and the exceptional-surface embedding verifier for twist families.
//! * [`dirac`] - the adiabatic eigenvalue lattice of the reducible
//!   solution: half-canonical brackets, eigenspace dimensions, circle
//!   weights, and full spectra in a window.
//! * [`moduli`] - critical manifolds of the monopole flow and the moduli
//!   of flow lines between them, with exact dimension counts.
//! * [`floer`] - the Floer-simplicity certificate, the two-tower graded
//!   module it certifies, family invariants of boundary Dehn twists, and
//!   the monodromy order report.

pub mod dirac;
pub mod floer;
pub mod moduli;
pub mod orbifold;
pub mod plumbing;
pub mod seifert;

pub use num::{BigInt, BigRational, BigUint};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator by the underlying implementation.
pub type Rat = num::BigRational;

/// Build a rational from machine-sized numerator and denominator.
///
/// Panics when `den == 0`; intended for literals in code and tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from a machine-sized integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from(BigInt::from(num))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_reduces_to_lowest_terms() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(rat_int(7), rat(14, 2));
    }
}
