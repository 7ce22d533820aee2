//! Adiabatic eigenvalue data of the reducible solution.
//!
//! For a spin-c class `s` on a Seifert rational homology sphere with
//! negative fiber degree, the spinor bundle splits the relevant
//! eigenvectors into sections and first cohomology of twists of the two
//! half-canonical brackets: the class representatives of largest degree
//! at most half the canonical degree and smallest degree at least it.
//! Eigenvalues then live on the two arithmetic progressions
//! `delta_plus + Z` and `delta_minus + Z`, with multiplicities given by
//! exact section counts, and the circle action acts on each occupied
//! chirality with an integral weight.

use num::{BigInt, BigUint, Signed, Zero};
use thiserror::Error;

use crate::orbifold::OrbLineBundle;
use crate::seifert::{SeifertError, SpinCClass};
use crate::Rat;

/// Errors from adiabatic spectrum computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiracError {
    /// The adiabatic picture here needs the fiber degree below zero.
    #[error("adiabatic spectra need negative fiber degree, got {0}")]
    FiberDegreeNotNegative(Rat),
    /// The lift handed in does not lie in the spin-c class.
    #[error("the lift is not in the spin-c class")]
    InconsistentLift,
    /// No eigenvector sits at the requested level.
    #[error("no eigenvector at level {0}")]
    EmptyEigenspace(Rat),
    /// Only one chirality meets this level, so the two-sided weight
    /// pair does not exist; the per-chirality weights in a spectrum
    /// entry still do.
    #[error("the weight pair is undefined at level {0}: the level lies on only one of the two eigenvalue lattices")]
    WeightPairUndefined(Rat),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

/// One eigenvalue level of the adiabatic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub lambda: Rat,
    /// Multiplicity on the section side.
    pub dim_plus: BigUint,
    /// Multiplicity on the cohomology side.
    pub dim_minus: BigUint,
    /// Circle weight of the section side, present when the level lies
    /// on the plus lattice.
    pub weight_plus: Option<BigInt>,
    /// Circle weight of the cohomology side, present when the level
    /// lies on the minus lattice.
    pub weight_minus: Option<BigInt>,
}

fn require_negative_degree(s: &SpinCClass) -> Result<(), DiracError> {
    let deg = s.manifold().fiber_degree();
    if deg.is_negative() {
        Ok(())
    } else {
        Err(DiracError::FiberDegreeNotNegative(deg))
    }
}

/// The two half-canonical brackets of the class: the representative of
/// largest degree at most half the canonical degree, and the one of
/// smallest degree at least it. They coincide exactly when the class
/// carries an orbifold spin structure.
pub fn half_canonical_floor_ceil(
    s: &SpinCClass,
) -> Result<(OrbLineBundle, OrbLineBundle), DiracError> {
    require_negative_degree(s)?;
    let y = s.manifold();
    let step = -y.fiber_degree();
    let half_k = y.base().canonical_bundle().degree() / crate::rat_int(2);
    let ratio = (s.representative().degree() - half_k) / step;
    let floor = twist(s, &ratio.ceil().to_integer());
    let ceil = twist(s, &ratio.floor().to_integer());
    Ok((floor, ceil))
}

/// Representative tensored with the `k`-th power of the fiber bundle.
fn twist(s: &SpinCClass, k: &BigInt) -> OrbLineBundle {
    s.representative()
        .tensor(&s.manifold().line_bundle().power_big(k))
        .expect("powers of the fiber bundle share the base")
}

/// Positions of the two eigenvalue lattices inside `[0, 1)`: the level
/// sets are `delta_plus + Z` on the section side and `delta_minus + Z`
/// on the cohomology side, and the two offsets sum to zero or one.
pub fn lattice_offsets(s: &SpinCClass) -> Result<(Rat, Rat), DiracError> {
    let (floor, ceil) = half_canonical_floor_ceil(s)?;
    let y = s.manifold();
    let deg_n = y.fiber_degree();
    let half_k = y.base().canonical_bundle().degree() / crate::rat_int(2);
    let plus = (floor.degree() - &half_k) / &deg_n;
    let minus = (half_k - ceil.degree()) / deg_n;
    Ok((plus, minus))
}

/// Multiplicities of the level `lambda` on the two chirality sides.
/// Levels off both lattices report zero on each.
pub fn eigenspace_dims(s: &SpinCClass, lambda: &Rat) -> Result<(BigUint, BigUint), DiracError> {
    let (floor, ceil) = half_canonical_floor_ceil(s)?;
    let (delta_plus, delta_minus) = lattice_offsets(s)?;
    let n = s.manifold().line_bundle();
    let plus_steps = lambda - delta_plus;
    let dim_plus = if plus_steps.is_integer() {
        floor
            .tensor(&n.power_big(&plus_steps.to_integer()))
            .expect("same base")
            .h0()
            .map_err(SeifertError::from)?
    } else {
        BigUint::zero()
    };
    let minus_steps = lambda - delta_minus;
    let dim_minus = if minus_steps.is_integer() {
        ceil.tensor(&n.power_big(&-minus_steps.to_integer()))
            .expect("same base")
            .h1()
            .map_err(SeifertError::from)?
    } else {
        BigUint::zero()
    };
    Ok((dim_plus, dim_minus))
}

/// Offset of the circle weight formula for a given lift: weights at
/// level `lambda` are `c - lambda` on the section side and
/// `c + lambda` on the cohomology side.
fn weight_center(s: &SpinCClass, lift: &OrbLineBundle) -> Rat {
    let y = s.manifold();
    let half_k = y.base().canonical_bundle().degree() / crate::rat_int(2);
    (lift.degree() - half_k) / y.fiber_degree()
}

/// Circle weights of the level `lambda` with respect to a lift of the
/// class. The lift must lie in the class, the level must be occupied,
/// and both lattices must meet the level for the pair to exist;
/// otherwise the per-chirality weights of [`spectrum`] entries apply.
pub fn circle_weights(
    s: &SpinCClass,
    lift: &OrbLineBundle,
    lambda: &Rat,
) -> Result<(BigInt, BigInt), DiracError> {
    if &s.manifold().spin_c(lift)? != s {
        return Err(DiracError::InconsistentLift);
    }
    let (dim_plus, dim_minus) = eigenspace_dims(s, lambda)?;
    if dim_plus.is_zero() && dim_minus.is_zero() {
        return Err(DiracError::EmptyEigenspace(lambda.clone()));
    }
    let c = weight_center(s, lift);
    let plus = &c - lambda;
    let minus = &c + lambda;
    if !plus.is_integer() || !minus.is_integer() {
        return Err(DiracError::WeightPairUndefined(lambda.clone()));
    }
    Ok((plus.to_integer(), minus.to_integer()))
}

/// Every occupied level in `[-lambda_max, lambda_max]`, sorted by
/// level, with multiplicities and the circle weights computed from the
/// class representative.
pub fn spectrum(s: &SpinCClass, lambda_max: &Rat) -> Result<Vec<SpectrumEntry>, DiracError> {
    let (delta_plus, delta_minus) = lattice_offsets(s)?;
    let c = weight_center(s, s.representative());
    let mut levels: Vec<Rat> = Vec::new();
    for delta in [&delta_plus, &delta_minus] {
        let lo = (-lambda_max - delta).ceil().to_integer();
        let hi = (lambda_max - delta).floor().to_integer();
        let mut n = lo;
        while n <= hi {
            levels.push(delta + Rat::from(n.clone()));
            n += 1;
        }
    }
    levels.sort();
    levels.dedup();
    let mut out = Vec::new();
    for lambda in levels {
        let (dim_plus, dim_minus) = eigenspace_dims(s, &lambda)?;
        if dim_plus.is_zero() && dim_minus.is_zero() {
            continue;
        }
        let plus = &c - &lambda;
        let minus = &c + &lambda;
        out.push(SpectrumEntry {
            weight_plus: plus.is_integer().then(|| plus.to_integer()),
            weight_minus: minus.is_integer().then(|| minus.to_integer()),
            lambda,
            dim_plus,
            dim_minus,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::{OrbLineBundle, OrbifoldSurface};
    use num::One;
    use crate::seifert::SeifertManifold;
    use crate::{rat, rat_int};

    fn sphere(orders: &[u64]) -> OrbifoldSurface {
        OrbifoldSurface::sphere(orders).unwrap()
    }

    fn canonical(a1: u64, a2: u64, a3: u64) -> SpinCClass {
        SeifertManifold::brieskorn(a1, a2, a3)
            .unwrap()
            .canonical_spin_c()
            .unwrap()
    }

    #[test]
    fn brackets_frozen() {
        let s = canonical(2, 3, 11);
        let (floor, ceil) = half_canonical_floor_ceil(&s).unwrap();
        assert_eq!(floor, OrbLineBundle::new(sphere(&[2, 3, 11]), -1, &[0, 2, 4]));
        assert_eq!(ceil, OrbLineBundle::new(sphere(&[2, 3, 11]), -1, &[1, 0, 6]));
        assert_eq!(floor, s.manifold().line_bundle().power(-2));
        assert_eq!(ceil, s.manifold().line_bundle().power(-3));
        assert_eq!(lattice_offsets(&s).unwrap(), (rat(1, 2), rat(1, 2)));
    }

    #[test]
    fn brackets_collapse_with_even_constant() {
        let lens =
            SeifertManifold::from_bundle(OrbLineBundle::new(sphere(&[]), -1, &[])).unwrap();
        assert_eq!(lens.self_conjugate_m(), Some(BigInt::from(-2)));
        let s = lens.canonical_spin_c().unwrap();
        let (floor, ceil) = half_canonical_floor_ceil(&s).unwrap();
        assert_eq!(floor, ceil);
        assert_eq!(lattice_offsets(&s).unwrap(), (rat_int(0), rat_int(0)));
    }

    #[test]
    fn offsets_sum_to_zero_or_one() {
        for s in [canonical(2, 3, 7), canonical(2, 3, 13), canonical(3, 4, 5)] {
            let (p, m) = lattice_offsets(&s).unwrap();
            let sum = &p + &m;
            assert!(sum.is_zero() || sum.is_one());
            assert!(!p.is_negative() && p < rat_int(1));
            assert!(!m.is_negative() && m < rat_int(1));
        }
    }

    #[test]
    fn requires_negative_degree() {
        let base = sphere(&[4, 4]);
        let up = SeifertManifold::from_bundle(OrbLineBundle::new(base, 0, &[1, 1])).unwrap();
        assert!(up.fiber_degree().is_positive());
        let s = up.canonical_spin_c().unwrap();
        assert!(matches!(
            half_canonical_floor_ceil(&s),
            Err(DiracError::FiberDegreeNotNegative(_))
        ));
    }

    #[test]
    fn dims_frozen_small() {
        let s = canonical(2, 3, 7);
        let dims = |l: Rat| eigenspace_dims(&s, &l).unwrap();
        let one = BigUint::from(1u32);
        let zero = BigUint::zero();
        assert_eq!(dims(rat(1, 2)), (one.clone(), one.clone()));
        assert_eq!(dims(rat(3, 2)), (zero.clone(), zero.clone()));
        assert_eq!(dims(rat(-11, 2)), (one.clone(), one));
        assert_eq!(dims(rat(1, 3)), (zero.clone(), zero));
    }

    #[test]
    fn spectrum_is_one_sided_in_general() {
        let s = canonical(2, 3, 13);
        let one = BigUint::from(1u32);
        assert_eq!(
            eigenspace_dims(&s, &rat(7, 2)).unwrap(),
            (one.clone(), one)
        );
        assert_eq!(
            eigenspace_dims(&s, &rat(-7, 2)).unwrap(),
            (BigUint::zero(), BigUint::zero())
        );
    }

    #[test]
    fn spectrum_window_frozen() {
        let s = canonical(2, 3, 7);
        let entries = spectrum(&s, &rat_int(3)).unwrap();
        assert_eq!(entries.len(), 1);
        let entry = &entries[0];
        assert_eq!(entry.lambda, rat(1, 2));
        assert_eq!(entry.dim_plus, BigUint::from(1u32));
        assert_eq!(entry.dim_minus, BigUint::from(1u32));
        assert_eq!(entry.weight_plus, Some(BigInt::zero()));
        assert_eq!(entry.weight_minus, Some(BigInt::one()));
    }

    #[test]
    fn deep_window_frozen() {
        let s = canonical(2, 3, 23);
        let entries = spectrum(&s, &rat_int(9)).unwrap();
        let lambdas: Vec<Rat> = entries.iter().map(|e| e.lambda.clone()).collect();
        assert_eq!(lambdas, vec![rat(-7, 2), rat(5, 2), rat(17, 2)]);
        for e in &entries {
            assert_eq!(e.dim_plus, BigUint::from(1u32));
            assert_eq!(e.dim_minus, BigUint::from(1u32));
        }
        assert_eq!(entries[1].weight_plus, Some(BigInt::from(6)));
        assert_eq!(entries[1].weight_minus, Some(BigInt::from(11)));
        assert_eq!(entries[2].weight_plus, Some(BigInt::zero()));
        assert_eq!(entries[2].weight_minus, Some(BigInt::from(17)));
    }

    #[test]
    fn weights_depend_on_lift() {
        let s = canonical(2, 3, 11);
        let triv = OrbLineBundle::trivial(sphere(&[2, 3, 11]));
        assert_eq!(
            circle_weights(&s, &triv, &rat(5, 2)).unwrap(),
            (BigInt::zero(), BigInt::from(5))
        );
        let shifted = s.manifold().line_bundle().inverse();
        assert_eq!(
            circle_weights(&s, &shifted, &rat(5, 2)).unwrap(),
            (BigInt::from(-1), BigInt::from(4))
        );
        assert_eq!(
            circle_weights(&s, &triv, &rat(-7, 2)).unwrap(),
            (BigInt::from(6), BigInt::from(-1))
        );
    }

    #[test]
    fn weight_errors() {
        let s = canonical(2, 3, 11);
        let triv = OrbLineBundle::trivial(sphere(&[2, 3, 11]));
        assert_eq!(
            circle_weights(&s, &triv, &rat(3, 2)),
            Err(DiracError::EmptyEigenspace(rat(3, 2)))
        );

        let split =
            SeifertManifold::from_bundle(OrbLineBundle::new(sphere(&[4, 4]), -1, &[1, 1]))
                .unwrap();
        let c = split.canonical_spin_c().unwrap();
        let off_class = OrbLineBundle::new(sphere(&[4, 4]), -1, &[2, 2]);
        assert_eq!(
            circle_weights(&c, &off_class, &rat(1, 2)),
            Err(DiracError::InconsistentLift)
        );
    }

    #[test]
    fn one_sided_levels_have_no_weight_pair() {
        // Fiber bundle of degree -5/42 over S^2(2,3,7): the two lattices
        // sit at 1/10 and 9/10, so levels meet only one of them.
        let n = OrbLineBundle::new(sphere(&[2, 3, 7]), -2, &[1, 2, 5]);
        let y = SeifertManifold::from_bundle(n).unwrap();
        assert_eq!(y.fiber_degree(), rat(-5, 42));
        let s = y.canonical_spin_c().unwrap();
        assert_eq!(lattice_offsets(&s).unwrap(), (rat(1, 10), rat(9, 10)));
        assert_eq!(
            eigenspace_dims(&s, &rat(1, 10)).unwrap(),
            (BigUint::from(1u32), BigUint::zero())
        );
        let triv = OrbLineBundle::trivial(sphere(&[2, 3, 7]));
        assert_eq!(
            circle_weights(&s, &triv, &rat(1, 10)),
            Err(DiracError::WeightPairUndefined(rat(1, 10)))
        );
        let entries = spectrum(&s, &rat(1, 10)).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].weight_plus, Some(BigInt::zero()));
        assert_eq!(entries[0].weight_minus, None);
    }

    #[test]
    fn self_conjugate_dims_match_on_both_sides() {
        let s = canonical(2, 3, 23);
        let (delta, _) = lattice_offsets(&s).unwrap();
        for n in -12..12 {
            let lambda = &delta + rat_int(n);
            let (p, m) = eigenspace_dims(&s, &lambda).unwrap();
            assert_eq!(p, m, "at level {lambda}");
        }
    }
}
