//! One function per subcommand, each producing a `Report`.

use num::{BigInt, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use seifert_core::dirac::{self, DiracError};
use seifert_core::floer::{
    self, CheckOutcome, FailureWitness, FloerError, GradedTowerModule, MonodromyVerdict,
};
use seifert_core::moduli::{self, FlowModuli, ModuliError, TransversalityReport};
use seifert_core::orbifold::{OrbLineBundle, OrbifoldError};
use seifert_core::plumbing::{
    star_plumbing, Classification, PlumbingError, PlumbingGraph, TwistFamily,
};
use seifert_core::seifert::{SeifertError, SeifertManifold};
use seifert_core::{rat_int, Rat};

use crate::report::{int_value, opt_int_value, precondition, rat_value, uint_value, CliError, Report};
use crate::source::{file_inputs, load_graph, Source};

// ---- error classification ----

pub(crate) fn seifert_err(err: SeifertError) -> CliError {
    match err {
        SeifertError::NotRationalHomologySphere { reason } => precondition("qhs3", reason),
        // Everything else reachable from the command line is a defect
        // in the input values.
        other => CliError::Usage(other.to_string()),
    }
}

fn orbifold_err(err: OrbifoldError) -> CliError {
    match err {
        OrbifoldError::GenusUnsupported(_) => precondition("genus-zero", err.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn dirac_err(err: DiracError) -> CliError {
    match err {
        DiracError::FiberDegreeNotNegative(deg) => precondition(
            "negative-degree",
            format!("fiber degree {deg} is not negative"),
        ),
        DiracError::Seifert(inner) => seifert_err(inner),
        other => precondition("spectrum", other.to_string()),
    }
}

fn moduli_err(err: ModuliError) -> CliError {
    match err {
        ModuliError::ClassMismatch => precondition("class-match", err.to_string()),
        ModuliError::NotSelfConjugate => precondition("self-conjugate", err.to_string()),
        ModuliError::Dirac(inner) => dirac_err(inner),
        ModuliError::Seifert(inner) => seifert_err(inner),
        ModuliError::Orbifold(inner) => orbifold_err(inner),
    }
}

fn floer_err(err: FloerError) -> CliError {
    match err {
        FloerError::Uncertified { check } => CliError::Precondition {
            check,
            message: "the manifold is not certified Floer-simple".to_string(),
        },
        FloerError::Seifert(inner) => seifert_err(inner),
        FloerError::Plumbing(inner) => plumbing_err(inner),
    }
}

pub(crate) fn plumbing_err(err: PlumbingError) -> CliError {
    match err {
        PlumbingError::NotNegativeDefinite => {
            precondition("negative-definite", err.to_string())
        }
        PlumbingError::FiberDegreeNotNegative(_) => {
            precondition("negative-degree", err.to_string())
        }
        PlumbingError::GenusUnsupported(_) => precondition("genus-zero", err.to_string()),
        PlumbingError::NotStar { .. } | PlumbingError::AmbiguousChain => {
            precondition("star-shape", err.to_string())
        }
        PlumbingError::EmbeddingMismatch { details } => precondition("embedding", details),
        PlumbingError::Seifert(inner) => seifert_err(inner),
        other => CliError::Usage(other.to_string()),
    }
}

// ---- shared serialization pieces ----

fn bundle_value(bundle: &OrbLineBundle) -> Value {
    json!({
        "e": int_value(bundle.e()),
        "beta": bundle.beta(),
        "degree": rat_value(&bundle.degree()),
    })
}

fn flow_value(flow: &FlowModuli) -> Value {
    json!({
        "empty": flow.is_empty(),
        "single_flowline": flow.is_single_flowline(),
        "parametrized": flow.parametrized,
        "ambient_dim": int_value(&flow.ambient_dim),
        "removed_dims": flow.removed_dims.iter().map(int_value).collect::<Vec<_>>(),
    })
}

fn transversality_value(report: &TransversalityReport) -> Value {
    json!({
        "m": int_value(&report.m),
        "checked_up_to": int_value(&report.checked_up_to),
        "transverse": report.transverse,
        "obstructions": report
            .obstructions
            .iter()
            .map(|(twist, rank)| json!({ "twist": int_value(twist), "rank": uint_value(rank) }))
            .collect::<Vec<_>>(),
    })
}

fn module_value(module: &GradedTowerModule) -> Value {
    json!({
        "towers": module
            .towers
            .iter()
            .map(|t| json!({
                "base_offset": int_value(&t.base_offset),
                "length": t.length.as_ref().map_or(Value::Null, uint_value),
                "note": t.note,
            }))
            .collect::<Vec<_>>(),
        "reduced_rank": uint_value(&module.reduced_rank()),
    })
}

fn witness_text(witness: &FailureWitness) -> String {
    match witness {
        FailureWitness::Unevaluated { missing } => format!("unevaluated: needs {missing}"),
        FailureWitness::NotRationalHomologySphere { reason } => reason.clone(),
        FailureWitness::FiberDegreeNotNegative { degree } => {
            format!("fiber degree {degree} is not negative")
        }
        FailureWitness::NotSelfConjugate => {
            "the canonical bundle is not a fiber power".to_string()
        }
        FailureWitness::NonPositiveExponent { m } => {
            format!("exponent m = {m} is not positive")
        }
        FailureWitness::SurvivingSections { twist, rank } => {
            format!("sections of the {twist}-th negative twist survive with rank {rank}")
        }
        FailureWitness::SurvivingCohomology { twist, rank } => {
            format!("first cohomology of the {twist}-th negative twist survives with rank {rank}")
        }
    }
}

/// Window bound: the flag if given, else `2m + 1` when the canonical
/// class is a positive fiber power, else 10.
fn window_bound(y: &SeifertManifold, flag: Option<String>) -> Result<Rat, CliError> {
    match flag {
        Some(text) => parse_rat(&text),
        None => Ok(match y.self_conjugate_m() {
            Some(m) if m.is_positive() => Rat::from(BigInt::from(2) * m + 1),
            _ => rat_int(10),
        }),
    }
}

fn parse_rat(text: &str) -> Result<Rat, CliError> {
    let bad = || CliError::Usage(format!("expected an exact fraction like 35/2, got \"{text}\""));
    match text.split_once('/') {
        None => {
            let p: BigInt = text.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

// ---- subcommands ----

pub fn info(source: Source) -> Result<Report, CliError> {
    let resolved = source.resolve()?;
    let y = &resolved.manifold;
    let qhs = y.is_rational_homology_sphere();
    let results = json!({
        "base": {
            "genus": y.base().genus(),
            "cone_orders": y.base().cone_orders(),
            "orbifold_euler_characteristic": rat_value(&y.base().euler_char()),
        },
        "bundle": bundle_value(y.line_bundle()),
        "fiber_degree": rat_value(&y.fiber_degree()),
        "qhs3": qhs,
        "h1_order": if qhs {
            uint_value(&y.h1_order().map_err(seifert_err)?)
        } else {
            Value::Null
        },
        "self_conjugate_m": opt_int_value(&y.self_conjugate_m()),
    });
    let mut report = Report::new("info", resolved.inputs, results);
    report.warnings = resolved.warnings;
    Ok(report)
}

pub fn spectrum(source: Source, lambda_max: Option<String>) -> Result<Report, CliError> {
    let resolved = source.resolve()?;
    let y = &resolved.manifold;
    let window = window_bound(y, lambda_max)?;
    let s = y.canonical_spin_c().map_err(seifert_err)?;
    let (delta_plus, delta_minus) = dirac::lattice_offsets(&s).map_err(dirac_err)?;
    let entries = dirac::spectrum(&s, &window).map_err(dirac_err)?;
    let results = json!({
        "class_representative": bundle_value(s.representative()),
        "lattice_offsets": [rat_value(&delta_plus), rat_value(&delta_minus)],
        "lambda_max": rat_value(&window),
        "entries": entries
            .iter()
            .map(|entry| json!({
                "level": rat_value(&entry.lambda),
                "dim_plus": uint_value(&entry.dim_plus),
                "dim_minus": uint_value(&entry.dim_minus),
                "weight_plus": opt_int_value(&entry.weight_plus),
                "weight_minus": opt_int_value(&entry.weight_minus),
            }))
            .collect::<Vec<_>>(),
    });
    let mut report = Report::new("spectrum", resolved.inputs, results);
    report.warnings = resolved.warnings;
    Ok(report)
}

pub fn critical(source: Source, lambda_max: Option<String>) -> Result<Report, CliError> {
    let resolved = source.resolve()?;
    let y = &resolved.manifold;
    let window = window_bound(y, lambda_max)?;
    let irreducible = moduli::irreducible_criticals(y).map_err(moduli_err)?;
    let s = y.canonical_spin_c().map_err(seifert_err)?;
    let reducible = moduli::reducible_criticals(&s, &window).map_err(moduli_err)?;
    let results = json!({
        "window": rat_value(&window),
        "irreducible": irreducible
            .iter()
            .map(|c| json!({
                "sign": c.sign.to_string(),
                "bundle": bundle_value(&c.bundle),
                "dim": uint_value(&c.dim),
            }))
            .collect::<Vec<_>>(),
        "reducible": reducible
            .iter()
            .map(|r| json!({
                "level": rat_value(&r.level),
                "dim": uint_value(&r.dim),
                "grading_offset": opt_int_value(&r.grading_offset),
            }))
            .collect::<Vec<_>>(),
    });
    let mut report = Report::new("critical", resolved.inputs, results);
    report.warnings = resolved.warnings;
    Ok(report)
}

pub fn flows(source: Source, lambda_max: Option<String>) -> Result<Report, CliError> {
    let resolved = source.resolve()?;
    let y = &resolved.manifold;
    let window = window_bound(y, lambda_max)?;
    let mut warnings = resolved.warnings;

    let irreducible = moduli::irreducible_criticals(y).map_err(moduli_err)?;
    let mut bundles: Vec<&OrbLineBundle> = Vec::new();
    for c in &irreducible {
        if !bundles.contains(&&c.bundle) {
            bundles.push(&c.bundle);
        }
    }

    let s = y.canonical_spin_c().map_err(seifert_err)?;
    let (delta_plus, _) = dirac::lattice_offsets(&s).map_err(dirac_err)?;
    let spectrum = dirac::spectrum(&s, &window).map_err(dirac_err)?;
    // Flow targets live on the section lattice, at positive levels
    // `delta_plus + n`.
    let eigen_levels: Vec<(Rat, i64)> = spectrum
        .iter()
        .filter(|entry| entry.lambda.is_positive())
        .filter_map(|entry| {
            let shift = &entry.lambda - &delta_plus;
            shift
                .is_integer()
                .then(|| shift.to_integer().to_i64())
                .flatten()
                .map(|n| (entry.lambda.clone(), n))
        })
        .collect();

    let mut flows = Vec::new();
    for (i, from) in bundles.iter().enumerate() {
        for (j, to) in bundles.iter().enumerate() {
            if i == j {
                continue;
            }
            let flow = moduli::flow_irr_irr(y, from, to).map_err(moduli_err)?;
            flows.push(json!({
                "from": i,
                "target": "irreducible",
                "to": j,
                "moduli": flow_value(&flow),
            }));
        }
        for (level, n) in &eigen_levels {
            let flow = moduli::flow_irr_eigen(y, from, *n).map_err(moduli_err)?;
            flows.push(json!({
                "from": i,
                "target": "eigenspace",
                "level": rat_value(level),
                "moduli": flow_value(&flow),
            }));
        }
        let flow = moduli::flow_irr_red(y, from).map_err(moduli_err)?;
        flows.push(json!({
            "from": i,
            "target": "reducible-floor",
            "moduli": flow_value(&flow),
        }));
    }

    let transversality = match moduli::canonical_flow_transverse(y) {
        Ok(report) => transversality_value(&report),
        Err(ModuliError::NotSelfConjugate) => {
            warnings.push(
                "canonical class is not self-conjugate; no symmetric transversality question"
                    .to_string(),
            );
            Value::Null
        }
        Err(other) => return Err(moduli_err(other)),
    };

    let results = json!({
        "window": rat_value(&window),
        "irreducible_bundles": bundles.iter().map(|b| bundle_value(b)).collect::<Vec<_>>(),
        "flows": flows,
        "transversality": transversality,
    });
    let mut report = Report::new("flows", resolved.inputs, results);
    report.warnings = warnings;
    Ok(report)
}

pub fn floer(source: Source) -> Result<Report, CliError> {
    let resolved = source.resolve()?;
    let y = &resolved.manifold;
    let cert = floer::floer_simple_certificate(y);
    let checks: Vec<Value> = cert
        .checks
        .named()
        .iter()
        .map(|(name, outcome)| match outcome {
            CheckOutcome::Pass => json!({ "name": name, "outcome": "pass", "witness": null }),
            CheckOutcome::Fail(witness) => json!({
                "name": name,
                "outcome": "fail",
                "witness": witness_text(witness),
            }),
        })
        .collect();
    let module = if cert.certified() {
        module_value(&floer::hm_check(y).map_err(floer_err)?)
    } else {
        Value::Null
    };
    let results = json!({
        "verdict": cert.verdict.to_string(),
        "m": opt_int_value(&cert.m),
        "checks": checks,
        "module": module,
    });
    let mut report = Report::new("floer", resolved.inputs, results);
    report.warnings = resolved.warnings;
    Ok(report)
}

pub fn fsw(source: Source, power: i64, b_plus: Option<u64>) -> Result<Report, CliError> {
    let resolved = source.resolve()?;
    let y = &resolved.manifold;
    let outcome = floer::fsw_boundary_dehn_twist(y, power).map_err(floer_err)?;
    let degree = floer::dehn_twist_cobordism_degree(y).map_err(floer_err)?;
    let results = json!({
        "power": power,
        "cobordism_degree": int_value(&degree),
        "magnitude": uint_value(&outcome.magnitude),
        "sign_ambiguous": outcome.sign_ambiguous,
    });
    let mut report = Report::new("fsw", resolved.inputs, results);
    report.assumptions = floer::fsw_assumptions(b_plus);
    report.warnings = resolved.warnings;
    Ok(report)
}

// ---- plumbing subcommands ----

fn graph_of(source: Source) -> Result<(PlumbingGraph, Value, Vec<String>), CliError> {
    match source {
        Source::PlumbingFile { path } => {
            let graph = load_graph(&path)?;
            let inputs = file_inputs(&path, &graph);
            Ok((graph, inputs, Vec::new()))
        }
        other => {
            let resolved = other.resolve()?;
            let graph = star_plumbing(&resolved.manifold).map_err(plumbing_err)?;
            Ok((graph, resolved.inputs, resolved.warnings))
        }
    }
}

pub fn plumbing_star(source: Source) -> Result<Report, CliError> {
    if source.is_graph_file() {
        return Err(CliError::Usage(
            "input is already a plumbing graph; pass brieskorn or seifert data".to_string(),
        ));
    }
    let (graph, inputs, warnings) = graph_of(source)?;
    let results = json!({
        "center": 0,
        "vertex_count": graph.vertex_count(),
        "weights": graph.weights(),
        "edges": graph.edges(),
        "determinant": int_value(&graph.det()),
        "negative_definite": graph.is_negative_definite(),
    });
    let mut report = Report::new("plumbing-star", inputs, results);
    report.warnings = warnings;
    Ok(report)
}

pub fn plumbing_classify(source: Source) -> Result<Report, CliError> {
    let (graph, inputs, warnings) = graph_of(source)?;
    let classification = graph.classify().map_err(plumbing_err)?;
    let cycle = graph.fundamental_cycle().map_err(plumbing_err)?;
    let results = json!({
        "classification": classification.to_string(),
        "determinant": int_value(&graph.det()),
        "negative_definite": true,
        "fundamental_cycle": cycle.coefficients(),
        "arithmetic_genus": int_value(&graph.arithmetic_genus(&cycle)),
    });
    let mut report = Report::new("plumbing-classify", inputs, results);
    report.warnings = warnings;
    Ok(report)
}

pub fn plumbing_det(source: Source) -> Result<Report, CliError> {
    let (graph, inputs, warnings) = graph_of(source)?;
    let det = graph.det();
    let results = json!({
        "vertex_count": graph.vertex_count(),
        "determinant": int_value(&det),
        "group_order": uint_value(&det.magnitude()),
        "negative_definite": graph.is_negative_definite(),
    });
    let mut report = Report::new("plumbing-det", inputs, results);
    report.warnings = warnings;
    Ok(report)
}

// ---- monodromy and verification ----

pub fn monodromy(a1: u64, a2: u64, a3: u64) -> Result<Report, CliError> {
    let outcome = floer::monodromy_report(a1, a2, a3).map_err(floer_err)?;
    let verdict = match &outcome.verdict {
        MonodromyVerdict::InfiniteOrder { m } => json!({
            "type": "infinite-order",
            "m": int_value(m),
            "statement": format!(
                "no nonzero power of the boundary Dehn twist is smoothly isotopic to the \
                 identity rel boundary; the k-th power of the algebraic monodromy carries \
                 family invariant magnitude {m}*|k|"
            ),
        }),
        MonodromyVerdict::RationalRegime => json!({
            "type": "rational-regime",
            "statement": "rational link: the algebraic monodromy acts with finite smooth \
                          order via simultaneous resolution",
        }),
        MonodromyVerdict::Inconclusive { reason } => json!({
            "type": "inconclusive",
            "reason": reason,
        }),
    };
    let results = json!({
        "exponents": [a1, a2, a3],
        "monodromy_order": uint_value(&outcome.d),
        "classification": outcome.classification.to_string(),
        "certificate_verdict": outcome.certificate.verdict.to_string(),
        "m": opt_int_value(&outcome.certificate.m),
        "verdict": verdict,
    });
    Ok(Report::new(
        "monodromy",
        json!({ "source": "brieskorn", "exponents": [a1, a2, a3] }),
        results,
    ))
}

pub fn verify_embedding(family: TwistFamily, p: u64, s: u64) -> Result<Report, CliError> {
    let report = seifert_core::plumbing::verify_embedding(family, p, s).map_err(plumbing_err)?;
    let results = json!({
        "family": report.family.to_string(),
        "p": report.p,
        "s": report.s,
        "exponents": [report.exponents.0, report.exponents.1, report.exponents.2],
        "vertex_count": report.vertex_count,
        "leg_assignment": {
            "x": report.leg_assignment.x,
            "y": report.leg_assignment.y,
            "z": report.leg_assignment.z,
        },
        "gram_matches": report.gram_matches,
        "adjunction_holds": report.adjunction_holds,
        "signature_matches": report.signature_matches,
        "c1_square": int_value(&report.c1_square),
        "all_checks_pass": report.all_checks_pass(),
    });
    Ok(Report::new(
        "verify-embedding",
        json!({ "family": report.family.to_string(), "p": p, "s": s }),
        results,
    ))
}

pub fn verify_laufer_brieskorn() -> Result<Report, CliError> {
    // The degree-one hypersurface band x^2 + y^3 + z^l, 7 <= l <= 11,
    // restricted to pairwise coprime exponents, plus a rational control.
    let table: [((u64, u64, u64), Classification, bool); 3] = [
        ((2, 3, 7), Classification::MinimallyElliptic, false),
        ((2, 3, 11), Classification::MinimallyElliptic, false),
        ((2, 3, 5), Classification::Rational, true),
    ];
    let mut entries = Vec::new();
    let mut all_pass = true;
    for ((a1, a2, a3), expected, control) in table {
        let y = SeifertManifold::brieskorn(a1, a2, a3).map_err(seifert_err)?;
        let graph = star_plumbing(&y).map_err(plumbing_err)?;
        let classification = graph.classify().map_err(plumbing_err)?;
        let qhs = y.is_rational_homology_sphere();
        let ok = classification == expected && qhs;
        all_pass &= ok;
        entries.push(json!({
            "exponents": [a1, a2, a3],
            "classification": classification.to_string(),
            "expected": expected.to_string(),
            "qhs3": qhs,
            "control": control,
            "ok": ok,
        }));
    }
    Ok(Report::new(
        "verify-laufer-brieskorn",
        json!({ "source": "built-in table" }),
        json!({ "entries": entries, "all_pass": all_pass }),
    ))
}
