//! Closed orbifold surfaces and their line bundle Picard calculus.
//!
//! An orbifold surface is a closed oriented surface of genus `g` with a
//! finite list of cone points of orders `alpha_i >= 2`. An orbifold line
//! bundle over it is recorded by Seifert data `(e; beta_1, ..., beta_n)`
//! with the background Euler number `e` an integer and each local
//! invariant normalized to `0 <= beta_i < alpha_i`. Tensor product,
//! inverse and integer powers act on this data with carries from the
//! local invariants into `e`, so the group law is exact.

use num::{BigInt, BigUint, One, Signed, Zero};
use thiserror::Error;

use crate::Rat;

/// Errors from orbifold surface and line bundle operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    /// Cone point orders below 2 carry no isotropy and are rejected.
    #[error("cone point order must be at least 2, got {0}")]
    ConeOrderTooSmall(u64),
    /// Binary bundle operations require literally equal base orbifolds.
    #[error("line bundles live over different base orbifolds")]
    BaseMismatch,
    /// Section counts are only available over genus-zero bases.
    #[error("section counts require a genus-zero base, got genus {0}")]
    GenusUnsupported(u32),
}

/// A closed oriented orbifold surface: genus plus ordered cone points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldSurface {
    genus: u32,
    cone_orders: Vec<u64>,
}

impl OrbifoldSurface {
    /// Surface of the given genus with cone points of the given orders.
    pub fn new(genus: u32, cone_orders: Vec<u64>) -> Result<Self, OrbifoldError> {
        if let Some(&a) = cone_orders.iter().find(|&&a| a < 2) {
            return Err(OrbifoldError::ConeOrderTooSmall(a));
        }
        Ok(OrbifoldSurface { genus, cone_orders })
    }

    /// Genus-zero surface with the given cone orders.
    pub fn sphere(cone_orders: &[u64]) -> Result<Self, OrbifoldError> {
        Self::new(0, cone_orders.to_vec())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn cone_orders(&self) -> &[u64] {
        &self.cone_orders
    }

    /// Orbifold Euler characteristic `2 - 2g + sum(1/alpha_i - 1)`.
    pub fn euler_char(&self) -> Rat {
        let mut chi = crate::rat_int(2 - 2 * i64::from(self.genus));
        for &a in &self.cone_orders {
            chi += Rat::new(BigInt::one() - BigInt::from(a), BigInt::from(a));
        }
        chi
    }

    /// Orbifold canonical bundle `(2g - 2; alpha_1 - 1, ..., alpha_n - 1)`.
    ///
    /// Its degree is the negative of [`euler_char`](Self::euler_char).
    pub fn canonical_bundle(&self) -> OrbLineBundle {
        let beta: Vec<BigInt> = self
            .cone_orders
            .iter()
            .map(|&a| BigInt::from(a - 1))
            .collect();
        OrbLineBundle::from_raw(
            self.clone(),
            BigInt::from(2 * i64::from(self.genus) - 2),
            &beta,
        )
    }
}

/// An orbifold line bundle in normalized Seifert form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbLineBundle {
    base: OrbifoldSurface,
    e: BigInt,
    beta: Vec<u64>,
}

impl OrbLineBundle {
    /// Bundle with background Euler number `e` and raw local invariants.
    ///
    /// The local data need not be normalized: each `beta_i` is reduced
    /// modulo `alpha_i` and the quotient is carried into `e`, so any
    /// integer vector of the right length describes a bundle.
    ///
    /// Panics when `beta.len()` differs from the number of cone points;
    /// the two lists describe the same marked points so a length mismatch
    /// is a programming error, not recoverable input.
    pub fn new(base: OrbifoldSurface, e: i64, beta: &[i64]) -> Self {
        let raw: Vec<BigInt> = beta.iter().map(|&b| BigInt::from(b)).collect();
        Self::from_raw(base, BigInt::from(e), &raw)
    }

    /// As [`new`](Self::new) but with unbounded inputs.
    pub fn from_raw(base: OrbifoldSurface, e: BigInt, beta: &[BigInt]) -> Self {
        assert_eq!(
            beta.len(),
            base.cone_orders.len(),
            "one local invariant per cone point"
        );
        let mut e = e;
        let mut norm = Vec::with_capacity(beta.len());
        for (b, &a) in beta.iter().zip(&base.cone_orders) {
            let alpha = BigInt::from(a);
            let mut q = b / &alpha;
            let mut r = b % &alpha;
            if r.is_negative() {
                r += &alpha;
                q -= 1;
            }
            e += q;
            let (_, digits) = r.to_u64_digits();
            norm.push(digits.first().copied().unwrap_or(0));
        }
        OrbLineBundle {
            base,
            e,
            beta: norm,
        }
    }

    /// The trivial bundle over `base`.
    pub fn trivial(base: OrbifoldSurface) -> Self {
        let beta = vec![0; base.cone_orders.len()];
        OrbLineBundle {
            base,
            e: BigInt::zero(),
            beta,
        }
    }

    pub fn base(&self) -> &OrbifoldSurface {
        &self.base
    }

    /// Background Euler number of the normalized data.
    pub fn e(&self) -> &BigInt {
        &self.e
    }

    /// Normalized local invariants, `0 <= beta_i < alpha_i`.
    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// Orbifold degree `e + sum(beta_i / alpha_i)`.
    pub fn degree(&self) -> Rat {
        let mut d = Rat::from(self.e.clone());
        for (&b, &a) in self.beta.iter().zip(&self.base.cone_orders) {
            d += Rat::new(BigInt::from(b), BigInt::from(a));
        }
        d
    }

    /// Injective invariant of the isomorphism class: the degree together
    /// with the normalized local invariants.
    pub fn pic_image(&self) -> (Rat, Vec<u64>) {
        (self.degree(), self.beta.clone())
    }

    /// Tensor product; fails unless both factors share the same base.
    pub fn tensor(&self, other: &OrbLineBundle) -> Result<OrbLineBundle, OrbifoldError> {
        if self.base != other.base {
            return Err(OrbifoldError::BaseMismatch);
        }
        let raw: Vec<BigInt> = self
            .beta
            .iter()
            .zip(&other.beta)
            .map(|(&b, &c)| BigInt::from(b) + BigInt::from(c))
            .collect();
        Ok(Self::from_raw(
            self.base.clone(),
            &self.e + &other.e,
            &raw,
        ))
    }

    /// Inverse in the Picard group.
    pub fn inverse(&self) -> OrbLineBundle {
        let raw: Vec<BigInt> = self.beta.iter().map(|&b| -BigInt::from(b)).collect();
        Self::from_raw(self.base.clone(), -&self.e, &raw)
    }

    /// `k`-th tensor power, any sign, in a single normalization pass.
    pub fn power(&self, k: i64) -> OrbLineBundle {
        self.power_big(&BigInt::from(k))
    }

    /// As [`power`](Self::power) with an unbounded exponent.
    pub fn power_big(&self, k: &BigInt) -> OrbLineBundle {
        let raw: Vec<BigInt> = self.beta.iter().map(|&b| k * BigInt::from(b)).collect();
        Self::from_raw(self.base.clone(), k * &self.e, &raw)
    }

    /// Dimension of the space of holomorphic sections over a genus-zero
    /// base: `e + 1` when `e >= 0` and zero otherwise, where `e` is the
    /// normalized background Euler number.
    pub fn h0(&self) -> Result<BigUint, OrbifoldError> {
        if self.base.genus != 0 {
            return Err(OrbifoldError::GenusUnsupported(self.base.genus));
        }
        if self.e.is_negative() {
            Ok(BigUint::zero())
        } else {
            Ok((&self.e + 1u32).to_biguint().expect("nonnegative"))
        }
    }

    /// First cohomology over a genus-zero base, computed by duality as
    /// the section count of `K tensor self^{-1}`.
    pub fn h1(&self) -> Result<BigUint, OrbifoldError> {
        let dual = self
            .base
            .canonical_bundle()
            .tensor(&self.inverse())
            .expect("canonical bundle shares the base");
        dual.h0()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn sphere(orders: &[u64]) -> OrbifoldSurface {
        OrbifoldSurface::sphere(orders).unwrap()
    }

    #[test]
    fn rejects_small_cone_orders() {
        assert_eq!(
            OrbifoldSurface::sphere(&[2, 1, 5]),
            Err(OrbifoldError::ConeOrderTooSmall(1))
        );
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(sphere(&[]).euler_char(), rat_int(2));
        assert_eq!(sphere(&[2, 3, 7]).euler_char(), rat(-1, 42));
        assert_eq!(sphere(&[2, 3, 5]).euler_char(), rat(1, 30));
        assert_eq!(sphere(&[3, 4, 5]).euler_char(), rat(-13, 60));
        let genus_two = OrbifoldSurface::new(2, vec![]).unwrap();
        assert_eq!(genus_two.euler_char(), rat_int(-2));
    }

    #[test]
    fn canonical_bundle_data_and_degree() {
        let k = sphere(&[2, 3, 7]).canonical_bundle();
        assert_eq!(k.e(), &BigInt::from(-2));
        assert_eq!(k.beta(), &[1, 2, 6]);
        assert_eq!(k.degree(), rat(1, 42));
        assert_eq!(k.degree(), -sphere(&[2, 3, 7]).euler_char());
    }

    #[test]
    fn normalization_carries_into_e() {
        let l = OrbLineBundle::new(sphere(&[2, 3, 7]), 0, &[5, -1, 9]);
        assert_eq!(l.e(), &BigInt::from(2));
        assert_eq!(l.beta(), &[1, 2, 2]);
    }

    #[test]
    fn degree_of_normalized_data() {
        let l = OrbLineBundle::new(sphere(&[2, 3, 11]), -1, &[1, 1, 2]);
        assert_eq!(l.degree(), rat(1, 66));
        let n = OrbLineBundle::new(sphere(&[2, 3, 7]), -1, &[1, 1, 1]);
        assert_eq!(n.degree(), rat(-1, 42));
    }

    #[test]
    fn tensor_carries() {
        let base = sphere(&[2]);
        let l = OrbLineBundle::new(base.clone(), 0, &[1]);
        let sq = l.tensor(&l).unwrap();
        assert_eq!(sq, OrbLineBundle::new(base, 1, &[0]));
    }

    #[test]
    fn tensor_requires_equal_bases() {
        let a = OrbLineBundle::trivial(sphere(&[2, 3]));
        let b = OrbLineBundle::trivial(sphere(&[2, 5]));
        assert_eq!(a.tensor(&b), Err(OrbifoldError::BaseMismatch));
    }

    #[test]
    fn inverse_closed_form() {
        let n = OrbLineBundle::new(sphere(&[2, 3, 11]), -2, &[1, 2, 9]);
        let inv = n.inverse();
        assert_eq!(inv, OrbLineBundle::new(sphere(&[2, 3, 11]), -1, &[1, 1, 2]));
        let triv = OrbLineBundle::trivial(sphere(&[2, 3, 11]));
        assert_eq!(n.tensor(&inv).unwrap(), triv);
    }

    #[test]
    fn power_single_pass() {
        let n = OrbLineBundle::new(sphere(&[2, 3, 7]), -1, &[1, 1, 1]);
        let cube = n.power(3);
        assert_eq!(cube, OrbLineBundle::new(sphere(&[2, 3, 7]), -1, &[1, 0, 3]));
        assert_eq!(cube.degree(), rat(-1, 14));
        let mut iterated = OrbLineBundle::trivial(sphere(&[2, 3, 7]));
        for _ in 0..3 {
            iterated = iterated.tensor(&n).unwrap();
        }
        assert_eq!(cube, iterated);
        assert_eq!(n.power(0), OrbLineBundle::trivial(sphere(&[2, 3, 7])));
        assert_eq!(n.power(-1), n.inverse());
    }

    #[test]
    fn section_counts_genus_zero() {
        let base = sphere(&[2, 3, 11]);
        assert_eq!(
            OrbLineBundle::trivial(base.clone()).h0().unwrap(),
            BigUint::from(1u32)
        );
        let neg = OrbLineBundle::new(base, -1, &[0, 1, 8]);
        assert_eq!(neg.h0().unwrap(), BigUint::zero());
        let wide = OrbLineBundle::new(sphere(&[]), 4, &[]);
        assert_eq!(wide.h0().unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn section_counts_reject_higher_genus() {
        let torus = OrbifoldSurface::new(1, vec![]).unwrap();
        let l = OrbLineBundle::trivial(torus);
        assert_eq!(l.h0(), Err(OrbifoldError::GenusUnsupported(1)));
        assert_eq!(l.h1(), Err(OrbifoldError::GenusUnsupported(1)));
    }

    #[test]
    fn duality_on_frozen_example() {
        // Over S^2(2,3,13) the bundle (-2; 1,2,11) pairs with the
        // canonical (-2; 1,2,12) to leave (0; 0,0,1), which has one
        // section, so its first cohomology is one-dimensional.
        let base = sphere(&[2, 3, 13]);
        let l = OrbLineBundle::new(base.clone(), -2, &[1, 2, 11]);
        assert_eq!(l.h1().unwrap(), BigUint::from(1u32));
        let k = base.canonical_bundle();
        let pairing = k.tensor(&l.inverse()).unwrap();
        assert_eq!(pairing, OrbLineBundle::new(base, 0, &[0, 0, 1]));
    }

    #[test]
    fn pic_image_separates_same_degree_bundles() {
        let base = sphere(&[4, 4]);
        let a = OrbLineBundle::trivial(base.clone());
        let b = OrbLineBundle::new(base, -1, &[2, 2]);
        assert_eq!(a.degree(), b.degree());
        assert_ne!(a.pic_image(), b.pic_image());
    }

    #[test]
    fn euler_characteristic_of_bundles() {
        // h0 - h1 = e + 1 over genus zero, for any normalized data.
        for (e, beta) in [(-3i64, [1i64, 2, 4]), (0, [1, 0, 6]), (2, [0, 2, 3])] {
            let l = OrbLineBundle::new(sphere(&[2, 3, 7]), e, &beta);
            let h0 = BigInt::from(l.h0().unwrap());
            let h1 = BigInt::from(l.h1().unwrap());
            assert_eq!(h0 - h1, l.e() + 1);
        }
    }
}
