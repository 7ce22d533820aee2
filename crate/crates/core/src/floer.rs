//! The Floer-simple decision procedure and its consequences.
//!
//! A Seifert rational homology sphere with negative fiber degree and
//! self-conjugate canonical class of positive exponent is certified
//! here when the section and cohomology obstructions in the relevant
//! twist range all vanish. Certification pins down the whole critical
//! landscape: exactly two irreducible critical points, the bottom
//! reducible at level `m/2`, a graded module made of one infinite and
//! one length-one tower, and a boundary Dehn twist whose family
//! invariant grows linearly in the twisting power.

use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::moduli;
use crate::plumbing::{star_plumbing, Classification, PlumbingError};
use crate::seifert::{SeifertError, SeifertManifold};
use crate::Rat;

/// Errors from certified-only operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    /// The manifold does not carry the certificate this operation
    /// needs; the named check is the first one that does not pass.
    #[error("not certified: check '{check}' does not pass")]
    Uncertified { check: &'static str },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
}

/// Why a certificate check did not pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureWitness {
    /// The check could not run because an earlier one left it without
    /// its input.
    Unevaluated { missing: &'static str },
    NotRationalHomologySphere { reason: String },
    FiberDegreeNotNegative { degree: Rat },
    /// The canonical bundle is not a fiber power.
    NotSelfConjugate,
    NonPositiveExponent { m: BigInt },
    /// A twist in the vanishing range keeps a section.
    SurvivingSections { twist: BigInt, rank: BigUint },
    /// A twist in the transversality range keeps first cohomology.
    SurvivingCohomology { twist: BigInt, rank: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(FailureWitness),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }
}

/// The six certificate checks, in evaluation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateChecks {
    pub qhs3: CheckOutcome,
    pub negative_degree: CheckOutcome,
    pub self_conjugate: CheckOutcome,
    pub m_positive: CheckOutcome,
    pub h0_vanishing: CheckOutcome,
    pub transversality: CheckOutcome,
}

impl CertificateChecks {
    /// Name and outcome of every check, in evaluation order.
    pub fn named(&self) -> [(&'static str, &CheckOutcome); 6] {
        [
            ("qhs3", &self.qhs3),
            ("negative-degree", &self.negative_degree),
            ("self-conjugate", &self.self_conjugate),
            ("m-positive", &self.m_positive),
            ("h0-vanishing", &self.h0_vanishing),
            ("transversality", &self.transversality),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.named().iter().all(|(_, c)| c.passed())
    }

    /// Name of the first check that does not pass.
    pub fn first_failure(&self) -> Option<&'static str> {
        self.named().iter().find(|(_, c)| !c.passed()).map(|(n, _)| *n)
    }
}

/// The certificate verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        })
    }
}

/// Outcome of the Floer-simple decision procedure. The verdict is yes
/// exactly when all six checks pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerSimpleCertificate {
    pub verdict: Verdict,
    /// The exponent with `K = N^{-m}`, whenever the canonical class is
    /// a fiber power at all.
    pub m: Option<BigInt>,
    pub checks: CertificateChecks,
}

impl FloerSimpleCertificate {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Runs the six checks in order. Total: every precondition failure is
/// recorded as a check outcome instead of an error.
pub fn floer_simple_certificate(y: &SeifertManifold) -> FloerSimpleCertificate {
    let qhs3 = if y.is_rational_homology_sphere() {
        CheckOutcome::Pass
    } else {
        let reason = if y.base().genus() != 0 {
            "the base orbifold has positive genus".to_string()
        } else {
            "the fiber degree vanishes".to_string()
        };
        CheckOutcome::Fail(FailureWitness::NotRationalHomologySphere { reason })
    };

    let degree = y.fiber_degree();
    let negative_degree = if degree.is_negative() {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail(FailureWitness::FiberDegreeNotNegative { degree })
    };

    let blocked = |missing| CheckOutcome::Fail(FailureWitness::Unevaluated { missing });

    let (self_conjugate, m) = if !qhs3.passed() {
        (blocked("a rational homology sphere"), None)
    } else {
        match y.self_conjugate_m() {
            Some(m) => (CheckOutcome::Pass, Some(m)),
            None => (CheckOutcome::Fail(FailureWitness::NotSelfConjugate), None),
        }
    };

    let m_positive = match &m {
        None => blocked("the self-conjugate exponent"),
        Some(m) if m.is_positive() => CheckOutcome::Pass,
        Some(m) => CheckOutcome::Fail(FailureWitness::NonPositiveExponent { m: m.clone() }),
    };

    let h0_vanishing = match &m {
        None => blocked("the self-conjugate exponent"),
        Some(m) => {
            let mut outcome = CheckOutcome::Pass;
            let half = m.div_floor(&BigInt::from(2));
            let mut l = BigInt::one();
            while l <= half {
                let rank = y
                    .line_bundle()
                    .power_big(&-&l)
                    .h0()
                    .expect("genus zero was checked");
                if !rank.is_zero() {
                    outcome =
                        CheckOutcome::Fail(FailureWitness::SurvivingSections { twist: l, rank });
                    break;
                }
                l += 1;
            }
            outcome
        }
    };

    let transversality = if m.is_none() {
        blocked("the self-conjugate exponent")
    } else {
        match moduli::canonical_flow_transverse(y) {
            Ok(report) if report.transverse => CheckOutcome::Pass,
            Ok(report) => {
                let (twist, rank) = report.obstructions[0].clone();
                CheckOutcome::Fail(FailureWitness::SurvivingCohomology { twist, rank })
            }
            Err(_) => blocked("a negative fiber degree"),
        }
    };

    let checks = CertificateChecks {
        qhs3,
        negative_degree,
        self_conjugate,
        m_positive,
        h0_vanishing,
        transversality,
    };
    FloerSimpleCertificate {
        verdict: if checks.all_pass() { Verdict::Yes } else { Verdict::No },
        m,
        checks,
    }
}

fn require_certified(y: &SeifertManifold) -> Result<BigInt, FloerError> {
    let cert = floer_simple_certificate(y);
    match cert.checks.first_failure() {
        Some(check) => Err(FloerError::Uncertified { check }),
        None => Ok(cert.m.expect("certified implies the exponent exists")),
    }
}

/// One tower of a graded module over the polynomial ring in `U`:
/// generators in gradings `base, base - 2, ...`, either forever or for
/// the recorded length. Offsets are relative to the symbolic anchor
/// `-2h`; the anchor itself is never computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub base_offset: BigInt,
    /// `None` means infinite.
    pub length: Option<BigUint>,
    pub note: String,
}

/// A graded module presented as a sorted list of towers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTowerModule {
    pub towers: Vec<Tower>,
}

impl GradedTowerModule {
    /// Total rank of the finite towers.
    pub fn reduced_rank(&self) -> BigUint {
        self.towers
            .iter()
            .filter_map(|t| t.length.clone())
            .sum()
    }
}

/// The graded module of a certified manifold: one infinite tower at
/// the anchor and one length-one tower right below it.
pub fn hm_check(y: &SeifertManifold) -> Result<GradedTowerModule, FloerError> {
    require_certified(y)?;
    Ok(GradedTowerModule {
        towers: vec![
            Tower {
                base_offset: BigInt::zero(),
                length: None,
                note: "represented by (C_0, id)".to_string(),
            },
            Tower {
                base_offset: BigInt::from(-1),
                length: Some(BigUint::one()),
                note: "represented by [c] - [c-bar] + l".to_string(),
            },
        ],
    })
}

/// Degree of the twisted-cylinder map on the generator of the finite
/// tower: the exponent `m` itself.
pub fn dehn_twist_cobordism_degree(y: &SeifertManifold) -> Result<BigInt, FloerError> {
    require_certified(y)
}

/// A family invariant determined up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FswResult {
    pub magnitude: BigUint,
    /// The underlying count is only pinned down up to sign, except
    /// when it vanishes.
    pub sign_ambiguous: bool,
}

/// Family invariant of the `k`-th power of the boundary Dehn twist:
/// magnitude `|m * k|`, sign ambiguous unless zero.
pub fn fsw_boundary_dehn_twist(y: &SeifertManifold, k: i64) -> Result<FswResult, FloerError> {
    let m = require_certified(y)?;
    let magnitude = (m * BigInt::from(k))
        .abs()
        .to_biguint()
        .expect("absolute value");
    Ok(FswResult {
        sign_ambiguous: !magnitude.is_zero(),
        magnitude,
    })
}

/// The hypotheses under which the family invariant speaks about a
/// four-manifold bounded by `Y`. These are echoed into reports, never
/// checked: fillings are not modeled here.
pub fn fsw_assumptions(declared_b_plus: Option<u64>) -> Vec<String> {
    let mut out = vec![
        "the twisted manifold is a weak symplectic filling of the boundary".to_string(),
        "the filling has b+ > 0".to_string(),
    ];
    if let Some(b) = declared_b_plus {
        if b > 2 {
            out.push(
                "with b+ > 2: no nontrivial twist power factors through twists on embedded \
                 negative spheres S with K.S = 0"
                    .to_string(),
            );
        }
    }
    out
}

/// The closed-manifold expected-dimension quantity
/// `(c1^2 - 2*chi - 3*sigma) / 4`, along with whether it equals -1.
pub fn d_formula(c1_sq: &BigInt, chi: &BigInt, sigma: &BigInt) -> (Rat, bool) {
    let value = Rat::new(
        c1_sq - BigInt::from(2) * chi - BigInt::from(3) * sigma,
        BigInt::from(4),
    );
    let hit = value == -crate::rat_int(1);
    (value, hit)
}

/// What the certified pipeline can say about the order of the Milnor
/// fibration monodromy of a Brieskorn singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonodromyVerdict {
    /// The boundary twist has nonvanishing family invariant in every
    /// power, so the monodromy has infinite smooth order.
    InfiniteOrder { m: BigInt },
    /// Rational (ADE-type) link: finite-order behavior via
    /// simultaneous resolution; no family invariant claim.
    RationalRegime,
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyReport {
    pub exponents: (u64, u64, u64),
    /// Order of the algebraic monodromy: the least common multiple of
    /// the exponents. The geometric question concerns powers of the
    /// twist `psi^(d*k)`.
    pub d: BigUint,
    /// Resolution type of the singularity link, from its dual graph.
    pub classification: Classification,
    pub certificate: FloerSimpleCertificate,
    pub verdict: MonodromyVerdict,
}

/// Classifies the link of the Brieskorn singularity and, when the
/// certified pipeline applies, decides the smooth order of its
/// monodromy.
pub fn monodromy_report(a1: u64, a2: u64, a3: u64) -> Result<MonodromyReport, FloerError> {
    let y = SeifertManifold::brieskorn(a1, a2, a3)?;
    let graph = star_plumbing(&y)?;
    let classification = graph.classify()?;
    let certificate = floer_simple_certificate(&y);
    let verdict = match (&classification, certificate.certified()) {
        (Classification::MinimallyElliptic, true) => MonodromyVerdict::InfiniteOrder {
            m: certificate.m.clone().expect("certified exponent"),
        },
        (Classification::Rational, _) => MonodromyVerdict::RationalRegime,
        (Classification::MinimallyElliptic, false) => MonodromyVerdict::Inconclusive {
            reason: format!(
                "the certificate fails at check '{}'",
                certificate
                    .checks
                    .first_failure()
                    .expect("uncertified has a failing check")
            ),
        },
        (Classification::Other, _) => MonodromyVerdict::Inconclusive {
            reason: "the link is neither rational nor minimally elliptic".to_string(),
        },
    };
    let d = BigUint::from(a1).lcm(&BigUint::from(a2)).lcm(&BigUint::from(a3));
    Ok(MonodromyReport {
        exponents: (a1, a2, a3),
        d,
        classification,
        certificate,
        verdict,
    })
}
