//! Seifert-fibered spaces presented as circle bundles over orbifolds.
//!
//! A manifold here is the unit circle bundle `S(N)` of an orbifold line
//! bundle `N` whose local invariants are coprime to the cone orders, the
//! condition for the total space to be smooth. Rational homology spheres
//! correspond to genus-zero bases with nonzero fiber degree; on those the
//! spin-c structures form a torsor over the Picard group of the base and
//! every class has a unique small-degree representative.

use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::orbifold::{OrbLineBundle, OrbifoldError, OrbifoldSurface};
use crate::Rat;

/// Errors from Seifert manifold constructors and class computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    /// Exponents and cone orders must be at least 2.
    #[error("exponent must be at least 2, got {0}")]
    ExponentTooSmall(u64),
    /// Brieskorn exponents must be pairwise coprime.
    #[error("exponents must be pairwise coprime: gcd({0}, {1}) > 1")]
    NotPairwiseCoprime(u64, u64),
    /// The circle bundle is smooth only when each local invariant is
    /// coprime to its cone order.
    #[error("total space is not smooth: gcd(alpha, beta) > 1 at cone point {index}")]
    NotSmooth { index: usize },
    /// Unit tangent bundles need a hyperbolic base.
    #[error("base orbifold is not hyperbolic: euler characteristic {chi}")]
    NotHyperbolic { chi: Rat },
    /// The operation needs a rational homology sphere.
    #[error("not a rational homology sphere: {reason}")]
    NotRationalHomologySphere { reason: String },
    /// The bundle argument lives over a different base orbifold.
    #[error("line bundle lives over a different base orbifold")]
    BaseMismatch,
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
}

/// The circle bundle `S(N)` of an orbifold line bundle `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertManifold {
    n: OrbLineBundle,
}

impl SeifertManifold {
    /// Total space of the circle bundle of `n`.
    ///
    /// Fails when some local invariant shares a factor with its cone
    /// order, since the total space is then not a smooth manifold.
    pub fn from_bundle(n: OrbLineBundle) -> Result<Self, SeifertError> {
        for (index, (&b, &a)) in n
            .beta()
            .iter()
            .zip(n.base().cone_orders())
            .enumerate()
        {
            if b.gcd(&a) != 1 {
                return Err(SeifertError::NotSmooth { index });
            }
        }
        Ok(SeifertManifold { n })
    }

    /// The Brieskorn sphere of pairwise coprime exponents `(a1, a2, a3)`.
    ///
    /// The orienting convention picks the unique local invariants
    /// `0 <= beta_i < a_i` with `(A / a_i) beta_i = -1 (mod a_i)` for
    /// `A = a1 a2 a3`, and the background Euler number that makes the
    /// fiber degree equal `-1/A`.
    pub fn brieskorn(a1: u64, a2: u64, a3: u64) -> Result<Self, SeifertError> {
        let a = [a1, a2, a3];
        if let Some(&bad) = a.iter().find(|&&x| x < 2) {
            return Err(SeifertError::ExponentTooSmall(bad));
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if a[i].gcd(&a[j]) != 1 {
                    return Err(SeifertError::NotPairwiseCoprime(a[i], a[j]));
                }
            }
        }
        let big: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let product: BigInt = big.iter().product();
        let mut beta = Vec::with_capacity(3);
        let mut numer = -BigInt::one();
        for ai in &big {
            let cofactor = &product / ai;
            let inv = modular_inverse(&cofactor, ai).expect("cofactor coprime to a_i");
            let bi = (-inv).mod_floor(ai);
            numer -= &bi * &cofactor;
            beta.push(bi);
        }
        let (e, rem) = numer.div_rem(&product);
        debug_assert!(rem.is_zero(), "background Euler number is integral");
        let base = OrbifoldSurface::sphere(&a)?;
        let n = OrbLineBundle::from_raw(base, e, &beta);
        debug_assert_eq!(n.degree(), Rat::new(-BigInt::one(), product));
        Self::from_bundle(n)
    }

    /// Unit tangent bundle of a genus-zero orbifold with the given cone
    /// orders, i.e. the circle bundle of the inverse canonical bundle.
    ///
    /// Requires a hyperbolic base (negative Euler characteristic); the
    /// cone orders need not be pairwise coprime.
    pub fn unit_tangent(cone_orders: &[u64]) -> Result<Self, SeifertError> {
        let base = OrbifoldSurface::sphere(cone_orders)?;
        let chi = base.euler_char();
        if !chi.is_negative() {
            return Err(SeifertError::NotHyperbolic { chi });
        }
        Self::from_bundle(base.canonical_bundle().inverse())
    }

    /// The defining line bundle `N`.
    pub fn line_bundle(&self) -> &OrbLineBundle {
        &self.n
    }

    pub fn base(&self) -> &OrbifoldSurface {
        self.n.base()
    }

    /// Fiber degree, the orbifold degree of `N`.
    pub fn fiber_degree(&self) -> Rat {
        self.n.degree()
    }

    /// Whether the total space is a rational homology sphere: genus-zero
    /// base and nonzero fiber degree.
    pub fn is_rational_homology_sphere(&self) -> bool {
        self.base().genus() == 0 && !self.fiber_degree().is_zero()
    }

    fn require_qhs(&self) -> Result<(), SeifertError> {
        if self.base().genus() != 0 {
            return Err(SeifertError::NotRationalHomologySphere {
                reason: format!("base has genus {}", self.base().genus()),
            });
        }
        if self.fiber_degree().is_zero() {
            return Err(SeifertError::NotRationalHomologySphere {
                reason: "fiber degree is zero".to_string(),
            });
        }
        Ok(())
    }

    /// Order of the first homology group,
    /// `|deg N| * prod(alpha_i)`, defined for rational homology spheres.
    pub fn h1_order(&self) -> Result<BigUint, SeifertError> {
        self.require_qhs()?;
        let mut total = self.fiber_degree().abs();
        for &a in self.base().cone_orders() {
            total *= Rat::from(BigInt::from(a));
        }
        debug_assert!(total.is_integer());
        Ok(total
            .to_integer()
            .to_biguint()
            .expect("order is positive"))
    }

    /// When the canonical spin-c class is self-conjugate, the integer `m`
    /// with `N^{-m}` isomorphic to the canonical bundle of the base.
    ///
    /// Returns `None` when the fiber degree vanishes, when the candidate
    /// ratio `chi / deg N` is not an integer, or when the power test
    /// fails outright.
    pub fn self_conjugate_m(&self) -> Option<BigInt> {
        let deg_n = self.fiber_degree();
        if deg_n.is_zero() {
            return None;
        }
        let ratio = self.base().euler_char() / deg_n;
        if !ratio.is_integer() {
            return None;
        }
        let m = ratio.to_integer();
        let candidate = self.n.power_big(&-&m);
        if candidate == self.base().canonical_bundle() {
            Some(m)
        } else {
            None
        }
    }

    /// Spin-c class determined by an orbifold line bundle lift.
    ///
    /// Requires a rational homology sphere so that classes step by the
    /// fiber degree and each has a unique representative of degree in
    /// `[0, |deg N|)`.
    pub fn spin_c(&self, e0: &OrbLineBundle) -> Result<SpinCClass, SeifertError> {
        if e0.base() != self.base() {
            return Err(SeifertError::BaseMismatch);
        }
        self.require_qhs()?;
        let deg_n = self.fiber_degree();
        let step = deg_n.abs();
        let q = (e0.degree() / &step).floor().to_integer();
        let k = if deg_n.is_negative() { q } else { -q };
        let rep = e0
            .tensor(&self.n.power_big(&k))
            .expect("power shares the base");
        debug_assert!(!rep.degree().is_negative() && rep.degree() < step);
        Ok(SpinCClass {
            manifold: self.clone(),
            rep,
        })
    }

    /// The canonical spin-c class, the one lifted by the trivial bundle.
    pub fn canonical_spin_c(&self) -> Result<SpinCClass, SeifertError> {
        self.spin_c(&OrbLineBundle::trivial(self.base().clone()))
    }
}

/// Extended-Euclid inverse of `a` modulo `m > 1`, when it exists.
fn modular_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(m).extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

/// A spin-c structure on a Seifert rational homology sphere, stored via
/// its unique representative lift of degree in `[0, |deg N|)`.
///
/// Two classes are equal exactly when their representatives coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinCClass {
    manifold: SeifertManifold,
    rep: OrbLineBundle,
}

impl SpinCClass {
    pub fn manifold(&self) -> &SeifertManifold {
        &self.manifold
    }

    /// The normalized representative lift.
    pub fn representative(&self) -> &OrbLineBundle {
        &self.rep
    }

    /// Conjugate class, represented by the class of `K tensor rep^{-1}`.
    pub fn conjugate(&self) -> SpinCClass {
        let lift = self
            .manifold
            .base()
            .canonical_bundle()
            .tensor(&self.rep.inverse())
            .expect("canonical bundle shares the base");
        self.manifold
            .spin_c(&lift)
            .expect("conjugate of a valid class is valid")
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }
}
