//! Critical manifolds and flow moduli of the circle-invariant equations.
//!
//! On a Seifert rational homology sphere with negative fiber degree the
//! critical sets come in two kinds. Irreducible ones are projectivized
//! section spaces of orbifold line bundles whose degree sits in the
//! window `[0, deg K / 2)`, one family for each chirality. Reducible
//! ones are the projectivized eigenspaces of the adiabatic levels from
//! [`crate::dirac`]. Flow spaces between them are projective spaces
//! with linear subspaces removed, recorded here by exact dimension
//! counts rather than by points.

use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::dirac::{self, DiracError};
use crate::orbifold::{OrbLineBundle, OrbifoldError};
use crate::seifert::{SeifertError, SeifertManifold, SpinCClass};
use crate::Rat;

/// Errors from critical-set and flow-space computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    /// The two bundles are not twists of each other by fiber powers,
    /// so no flow connects configurations built from them.
    #[error("the bundles lie in different spin-c classes, no flow connects them")]
    ClassMismatch,
    /// The canonical class is not self-conjugate, so the symmetric
    /// flow-transversality question does not arise.
    #[error("transversality of the canonical flow needs a self-conjugate canonical class")]
    NotSelfConjugate,
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
}

/// Chirality of an irreducible critical family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalSign {
    Plus,
    Minus,
}

impl std::fmt::Display for CriticalSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CriticalSign::Plus => "+",
            CriticalSign::Minus => "-",
        })
    }
}

/// An irreducible critical manifold: the projectivized sections of a
/// twisting bundle, in one of the two chiralities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCritical {
    pub sign: CriticalSign,
    /// The twisting bundle, with at least one section.
    pub bundle: OrbLineBundle,
    /// Projective dimension, one less than the section count.
    pub dim: BigUint,
}

/// A reducible critical manifold: the projectivized eigenspace at one
/// positive adiabatic level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleCritical {
    pub level: Rat,
    /// Projective dimension, one less than the total multiplicity.
    pub dim: BigUint,
    /// Relative grading above the bottom reducible, defined for the
    /// self-conjugate canonical class and absent otherwise.
    pub grading_offset: Option<BigInt>,
}

fn require_negative_degree(y: &SeifertManifold) -> Result<(), ModuliError> {
    let deg = y.fiber_degree();
    if deg.is_negative() {
        Ok(())
    } else {
        Err(DiracError::FiberDegreeNotNegative(deg).into())
    }
}

/// All irreducible critical manifolds of the canonical spin-c class:
/// both chiralities over each fiber-power twist whose degree lands in
/// `[0, deg K / 2)` and which has a section. Empty whenever the
/// canonical degree is not positive.
pub fn irreducible_criticals(
    y: &SeifertManifold,
) -> Result<Vec<IrreducibleCritical>, ModuliError> {
    require_negative_degree(y)?;
    y.canonical_spin_c()?;
    let half_k = y.base().canonical_bundle().degree() / crate::rat_int(2);
    let mut out = Vec::new();
    let mut j = BigInt::zero();
    loop {
        let bundle = y.line_bundle().power_big(&-&j);
        if bundle.degree() >= half_k {
            break;
        }
        let sections = bundle.h0()?;
        if !sections.is_zero() {
            let dim = sections - BigUint::one();
            out.push(IrreducibleCritical {
                sign: CriticalSign::Plus,
                bundle: bundle.clone(),
                dim: dim.clone(),
            });
            out.push(IrreducibleCritical {
                sign: CriticalSign::Minus,
                bundle,
                dim,
            });
        }
        j += 1;
    }
    Ok(out)
}

/// All reducible critical manifolds of the class with level in
/// `(0, lambda_max]`, ordered by level. For the self-conjugate
/// canonical class each carries its grading offset above the bottom
/// one: twice the total multiplicity of every lower positive level.
pub fn reducible_criticals(
    s: &SpinCClass,
    lambda_max: &Rat,
) -> Result<Vec<ReducibleCritical>, ModuliError> {
    let graded = *s == s.manifold().canonical_spin_c()?
        && s.manifold().self_conjugate_m().is_some();
    let mut offset = BigInt::zero();
    let mut out = Vec::new();
    for entry in dirac::spectrum(s, lambda_max)? {
        if !entry.lambda.is_positive() {
            continue;
        }
        let total = &entry.dim_plus + &entry.dim_minus;
        out.push(ReducibleCritical {
            level: entry.lambda,
            dim: &total - BigUint::one(),
            grading_offset: graded.then(|| offset.clone()),
        });
        offset += BigInt::from(total) * 2;
    }
    Ok(out)
}

/// A moduli space of flows, presented as a projective space of the
/// recorded dimension with projective subspaces of the recorded
/// dimensions removed. Dimension `-1` stands for the empty space. The
/// parametrized flag records whether the space still carries the
/// translation direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowModuli {
    pub parametrized: bool,
    pub ambient_dim: BigInt,
    pub removed_dims: Vec<BigInt>,
}

impl FlowModuli {
    fn empty(parametrized: bool) -> Self {
        FlowModuli {
            parametrized,
            ambient_dim: BigInt::from(-1),
            removed_dims: Vec::new(),
        }
    }

    /// Normalizing constructor: a negative ambient dimension, or any
    /// removed subspace filling the whole space, collapses to empty.
    fn projective(parametrized: bool, ambient_dim: BigInt, removed_dims: Vec<BigInt>) -> Self {
        if ambient_dim.is_negative() || removed_dims.iter().any(|r| *r >= ambient_dim) {
            Self::empty(parametrized)
        } else {
            FlowModuli {
                parametrized,
                ambient_dim,
                removed_dims,
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ambient_dim.is_negative()
    }

    /// True exactly for a single point: zero-dimensional ambient space
    /// with nothing removed.
    pub fn is_single_flowline(&self) -> bool {
        self.ambient_dim.is_zero() && self.removed_dims.iter().all(|r| *r == BigInt::from(-1))
    }
}

/// Fiber-power distance from `e0` down to `e1`: the integer `k` with
/// `e0 = e1 (x) N^k`, or a class mismatch if none exists.
fn twist_distance(
    y: &SeifertManifold,
    e0: &OrbLineBundle,
    e1: &OrbLineBundle,
) -> Result<BigInt, ModuliError> {
    let ratio = (e0.degree() - e1.degree()) / y.fiber_degree();
    if !ratio.is_integer() {
        return Err(ModuliError::ClassMismatch);
    }
    let k = ratio.to_integer();
    let back = e1
        .tensor(&y.line_bundle().power_big(&k))
        .map_err(SeifertError::from)?;
    if back != *e0 {
        return Err(ModuliError::ClassMismatch);
    }
    Ok(k)
}

/// Section counts of `e0 (x) N^{-j}` summed over `0 <= j <= upto`,
/// returned together with the partial sums skipping the first and the
/// last term.
fn section_sums(
    y: &SeifertManifold,
    e0: &OrbLineBundle,
    upto: &BigInt,
) -> Result<(BigUint, BigUint, BigUint), ModuliError> {
    let mut all = BigUint::zero();
    let mut first = BigUint::zero();
    let mut last = BigUint::zero();
    let mut j = BigInt::zero();
    while j <= *upto {
        let h = e0
            .tensor(&y.line_bundle().power_big(&-&j))
            .map_err(SeifertError::from)?
            .h0()?;
        if j.is_zero() {
            first = h.clone();
        }
        if j == *upto {
            last = h.clone();
        }
        all += h;
        j += 1;
    }
    Ok((&all - first, all.clone(), &all - last))
}

fn truncated_flow(
    y: &SeifertManifold,
    e0: &OrbLineBundle,
    upto: BigInt,
    parametrized: bool,
    drop_head: bool,
) -> Result<FlowModuli, ModuliError> {
    if upto.is_negative() {
        return Ok(FlowModuli::empty(parametrized));
    }
    let (tail, all, head) = section_sums(y, e0, &upto)?;
    if all.is_zero() {
        return Ok(FlowModuli::empty(parametrized));
    }
    let dim = |sum: BigUint| BigInt::from(sum) - 1;
    let mut removed = vec![dim(tail)];
    if drop_head {
        removed.push(dim(head));
    }
    Ok(FlowModuli::projective(parametrized, dim(all), removed))
}

/// Flows between two irreducible critical manifolds, from the one
/// twisted by `e0` to the one twisted by `e1`.
pub fn flow_irr_irr(
    y: &SeifertManifold,
    e0: &OrbLineBundle,
    e1: &OrbLineBundle,
) -> Result<FlowModuli, ModuliError> {
    require_negative_degree(y)?;
    let k = twist_distance(y, e0, e1)?;
    truncated_flow(y, e0, k, true, true)
}

/// Flows from the irreducible critical manifold twisted by `e0` into
/// the reducible locus of the canonical class.
pub fn flow_irr_red(y: &SeifertManifold, e0: &OrbLineBundle) -> Result<FlowModuli, ModuliError> {
    require_negative_degree(y)?;
    let s = y.canonical_spin_c()?;
    let (floor, _) = dirac::half_canonical_floor_ceil(&s)?;
    let k = twist_distance(y, e0, &floor)?;
    truncated_flow(y, e0, k, false, false)
}

/// Flows from the irreducible critical manifold twisted by `e0` into
/// the projectivized eigenspace at the `n`-th level of the section
/// lattice of the canonical class.
pub fn flow_irr_eigen(
    y: &SeifertManifold,
    e0: &OrbLineBundle,
    n: i64,
) -> Result<FlowModuli, ModuliError> {
    require_negative_degree(y)?;
    let s = y.canonical_spin_c()?;
    let (floor, _) = dirac::half_canonical_floor_ceil(&s)?;
    let k = twist_distance(y, e0, &floor)?;
    truncated_flow(y, e0, k - BigInt::from(n), false, true)
}

/// Outcome of the transversality check for the flows out of the
/// canonical-section critical point of a self-conjugate canonical
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalityReport {
    /// Fiber-power exponent with `K = N^{-m}`.
    pub m: BigInt,
    /// The twists `1..=checked_up_to` whose first cohomology must die.
    pub checked_up_to: BigInt,
    pub transverse: bool,
    /// Twists with surviving first cohomology, as pairs of the twist
    /// exponent and the cohomology rank.
    pub obstructions: Vec<(BigInt, BigUint)>,
}

/// Checks the flows out of the canonical-section critical point for
/// transversality: every twist `N^{-j}` with `1 <= j <= floor(m/2)`
/// must have vanishing first cohomology.
pub fn canonical_flow_transverse(
    y: &SeifertManifold,
) -> Result<TransversalityReport, ModuliError> {
    require_negative_degree(y)?;
    let m = y.self_conjugate_m().ok_or(ModuliError::NotSelfConjugate)?;
    let n = m.div_floor(&BigInt::from(2));
    let mut obstructions = Vec::new();
    let mut j = BigInt::one();
    while j <= n {
        let h = y.line_bundle().power_big(&-&j).h1()?;
        if !h.is_zero() {
            obstructions.push((j.clone(), h));
        }
        j += 1;
    }
    Ok(TransversalityReport {
        m,
        checked_up_to: n,
        transverse: obstructions.is_empty(),
        obstructions,
    })
}
