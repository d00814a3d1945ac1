//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use folia_core::catalog::{self, BergerParams};
use folia_core::curvature::{self, OrthonormalAlgebra};
use folia_core::foliation::{
    verify_theorem_minimal, verify_theorem_totally_geodesic, FoliationClassification,
    FoliationSetup, TheoremOutcome,
};
use folia_core::lie::LieAlgebra;
use folia_core::metric::MetricTensor;
use folia_core::suite;
use serde_json::{json, Value};

use crate::document::AlgebraDocument;
use crate::report::{digest, Check, Report, Status};
use crate::CliError;

fn outcome_check(name: &str, outcome: TheoremOutcome, witness: Value) -> Check {
    let status = match outcome {
        TheoremOutcome::VerifiedInstance => Status::Pass,
        TheoremOutcome::PremisesFail => Status::NotApplicable,
        TheoremOutcome::Contradiction => Status::Fail,
    };
    Check::new(name, status, witness)
}

fn classification_value(c: &FoliationClassification) -> Value {
    json!({
        "conformal": c.conformal,
        "semi_riemannian": c.semi_riemannian,
        "minimal": c.minimal,
        "totally_geodesic": c.totally_geodesic,
        "witnesses": {
            "conformal_mixed": c.witnesses.conformal_mixed,
            "conformal_diag_difference": c.witnesses.conformal_diag_difference,
            "riemannian_diag_sum": c.witnesses.riemannian_diag_sum,
            "minimal_trace_x": c.witnesses.minimal_trace_x,
            "minimal_trace_y": c.witnesses.minimal_trace_y,
            "totally_geodesic_max": c.witnesses.totally_geodesic_max,
            "threshold": c.witnesses.threshold,
        },
    })
}

/// Validate the algebra document: Jacobi residual and metric signature.
pub fn check(doc: &AlgebraDocument, input_digest: String, tol: f64) -> Result<Report, CliError> {
    let mut report = Report::new("check", input_digest, tol);
    let algebra = doc.algebra()?;
    let metric = doc.metric_tensor()?;

    let validation = algebra.validate(tol);
    report.push(Check::from_bool(
        "jacobi",
        validation.jacobi_ok,
        json!({
            "max_residual": validation.max_jacobi_residual,
            "witness": validation.witness.map(|(i, j, k, l)| vec![i, j, k, l]),
            "scale": validation.scale,
        }),
    ));
    let signature = metric.signature(tol);
    match signature {
        Ok((p, q)) => report.push(Check::new(
            "metric-non-degenerate",
            Status::Pass,
            json!({ "signature": [p, q] }),
        )),
        Err(e) => report.push(Check::new(
            "metric-non-degenerate",
            Status::Fail,
            json!({ "error": e.to_string() }),
        )),
    }
    let semisimple = algebra.is_semisimple(tol);
    report.data = json!({
        "dimension": algebra.dim(),
        "metric_assumed_identity": doc.metric_assumed(),
        "semisimple": semisimple.semisimple,
        "killing_sigma_min": semisimple.sigma_min,
        "killing_sigma_max": semisimple.sigma_max,
    });
    Ok(report)
}

/// The shared foliation analysis: closure, classification, structure,
/// theorem instances, trace identity.
fn foliation_checks(
    algebra: &LieAlgebra,
    metric: &MetricTensor,
    vertical: &[usize],
    tol: f64,
    report: &mut Report,
) -> Result<(), CliError> {
    let validation = algebra.validate(tol);
    report.push(Check::from_bool(
        "jacobi",
        validation.jacobi_ok,
        json!({ "max_residual": validation.max_jacobi_residual }),
    ));

    let setup = FoliationSetup::adapted(algebra, metric, vertical, tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    report.push(Check::from_bool(
        "vertical-closure",
        setup.closure_ok(),
        json!({ "max_horizontal_component": setup.closure_max_horizontal() }),
    ));

    let classification = setup.classify(tol);
    report.push(Check::from_bool(
        "classification-route-agreement",
        classification.witnesses.route_residual <= 1e-6 * classification.witnesses.scale,
        json!({ "route_residual": classification.witnesses.route_residual }),
    ));

    let structural = setup
        .structural_checks(tol, None)
        .map_err(|e| CliError::input(e.to_string()))?;
    report.push(Check::new(
        "conformal-double-bracket",
        if !classification.conformal {
            Status::NotApplicable
        } else if structural.double_bracket_pass {
            Status::Pass
        } else {
            Status::Fail
        },
        json!({ "max_horizontal_component": structural.double_bracket_horizontal_max }),
    ));

    let (rx, ry) = setup.trace_identity_residuals();
    report.push(Check::from_bool(
        "trace-identity",
        rx.max(ry) <= tol * setup.frame_algebra().scale(),
        json!({ "residual_x": rx, "residual_y": ry }),
    ));

    let minimal = verify_theorem_minimal(algebra, metric, vertical, tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    report.push(outcome_check(
        "minimality-theorem",
        minimal.outcome,
        json!({
            "premise_subalgebra": minimal.premise_subalgebra,
            "premise_semisimple": minimal.premise_semisimple.semisimple,
            "premise_conformal": minimal.premise_conformal,
            "conclusion_minimal": minimal.conclusion_minimal,
        }),
    ));
    let geodesic = verify_theorem_totally_geodesic(algebra, metric, vertical, tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    report.push(outcome_check(
        "total-geodesicity-theorem",
        geodesic.outcome,
        json!({
            "killing_fit_matches": geodesic.killing_fit.matches,
            "killing_fit_c": geodesic.killing_fit.c,
            "killing_fit_residual": geodesic.killing_fit.residual,
            "conclusion_totally_geodesic": geodesic.conclusion_totally_geodesic,
        }),
    ));
    report.push(outcome_check(
        "sign-flipped-minimality",
        geodesic.sign_flip.outcome,
        json!({
            "matches": geodesic.sign_flip.matches,
            "c": geodesic.sign_flip.c,
            "max_diag_coefficient": geodesic.sign_flip.max_diag_coefficient,
        }),
    ));

    let coeff = setup.coefficients();
    report.data = json!({
        "causalities": setup.causalities(),
        "rho": coeff.rho,
        "theta": coeff.theta.as_slice(),
        "max_horizontal_leakage": coeff
            .leakage_x
            .iter()
            .chain(coeff.leakage_y.iter())
            .fold(0.0_f64, |m, &v| m.max(v)),
        "classification": classification_value(&classification),
    });
    Ok(())
}

pub fn foliation(
    doc: &AlgebraDocument,
    vertical_flag: &[usize],
    input_digest: String,
    tol: f64,
) -> Result<Report, CliError> {
    let mut report = Report::new("foliation", input_digest, tol);
    let algebra = doc.algebra()?;
    let metric = doc.metric_tensor()?;
    let vertical: Vec<usize> = if vertical_flag.is_empty() {
        doc.vertical
            .clone()
            .ok_or_else(|| CliError::input("no vertical indices: pass --vertical or set them in the document"))?
    } else {
        vertical_flag.to_vec()
    };
    foliation_checks(&algebra, &metric, &vertical, tol, &mut report)?;
    Ok(report)
}

pub fn curvature(
    doc: &AlgebraDocument,
    plane: Option<(usize, usize)>,
    leaf: bool,
    input_digest: String,
    tol: f64,
) -> Result<Report, CliError> {
    let mut report = Report::new("curvature", input_digest, tol);
    let algebra = doc.algebra()?;
    let metric = doc.metric_tensor()?;
    let frame = OrthonormalAlgebra::from_metric(&algebra, &metric, tol)
        .map_err(|e| CliError::input(e.to_string()))?;

    let planes: Vec<(usize, usize)> = match plane {
        Some(p) => vec![p],
        None => {
            let n = frame.dim();
            (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect()
        }
    };
    let mut rows = Vec::new();
    let mut worst_gap: f64 = 0.0;
    for (i, j) in planes {
        let m = curvature::sectional_milnor(&frame, i, j)
            .map_err(|e| CliError::input(e.to_string()))?;
        let d = curvature::sectional_direct(&frame, i, j)
            .map_err(|e| CliError::input(e.to_string()))?;
        worst_gap = worst_gap.max((m.value - d.value).abs());
        rows.push(json!({
            "plane": [i, j],
            "sectional": m.value,
            "direct": d.value,
        }));
    }
    report.push(Check::from_bool(
        "curvature-route-agreement",
        worst_gap <= tol.max(1e-12) * frame.algebra().scale(),
        json!({ "worst_gap": worst_gap }),
    ));
    let mut data = serde_json::Map::new();
    data.insert("planes".into(), Value::Array(rows));

    if leaf {
        let vertical = doc
            .vertical
            .clone()
            .ok_or_else(|| CliError::input("--leaf requires vertical indices in the document"))?;
        let setup = FoliationSetup::adapted(&algebra, &metric, &vertical, tol)
            .map_err(|e| CliError::input(e.to_string()))?;
        let leaf_report = curvature::oneill_leaf_curvature(&setup, tol)
            .map_err(|e| CliError::input(e.to_string()))?;
        report.push(Check::new(
            "leaf-riemannian-foliation",
            if leaf_report.riemannian_foliation {
                Status::Pass
            } else {
                Status::NotApplicable
            },
            json!({ "adjoint_relation_max": leaf_report.adjoint_relation_max }),
        ));
        let residual = (leaf_report.value - leaf_report.minus_rho_squared).abs();
        report.push(Check::new(
            "leaf-curvature-identity",
            if !leaf_report.riemannian_foliation {
                Status::NotApplicable
            } else if residual <= tol * (1.0 + leaf_report.rho * leaf_report.rho) {
                Status::Pass
            } else {
                Status::Fail
            },
            json!({ "residual": residual }),
        ));
        data.insert(
            "leaf".into(),
            json!({
                "sectional_xy": leaf_report.sectional_xy,
                "vertical_term": leaf_report.vertical_term,
                "leaf_curvature": leaf_report.value,
                "minus_rho_squared": leaf_report.minus_rho_squared,
                "rho": leaf_report.rho,
            }),
        );
    }
    report.data = Value::Object(data);
    Ok(report)
}

/// Build one family member (or a seeded sweep) and run the standard checks.
#[allow(clippy::too_many_arguments)]
pub fn berger(
    params: &BergerParams,
    emit: Option<&Path>,
    sweep: Option<usize>,
    tol: f64,
    seed: u64,
) -> Result<Report, CliError> {
    if let Some(samples) = sweep {
        let mut report = Report::new(
            "berger --sweep",
            digest(format!("sweep:{samples}:{seed}").as_bytes()),
            tol,
        );
        report.seed = Some(seed);
        report.samples = Some(samples);
        for criterion in [
            suite::criterion_family_consistency(samples, seed),
            suite::criterion_family_classification(samples, seed),
            suite::criterion_leaf_curvature(samples, seed),
        ] {
            report.push(Check::from_bool(
                criterion.name,
                criterion.passed,
                json!({ "detail": criterion.detail }),
            ));
        }
        return Ok(report);
    }

    params.validate().map_err(|e| CliError::input(e.to_string()))?;
    let (algebra, metric, vertical) =
        catalog::berger_algebra(params).map_err(|e| CliError::input(e.to_string()))?;
    let doc = AlgebraDocument::from_parts(&algebra, &metric, Some(&vertical));
    let json_doc = doc.to_json();
    if let Some(path) = emit {
        std::fs::write(path, &json_doc)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut report = Report::new("berger", digest(json_doc.as_bytes()), tol);
    foliation_checks(&algebra, &metric, &vertical, tol, &mut report)?;
    // Attach the leaf-space curvature alongside the foliation data.
    let setup = FoliationSetup::adapted(&algebra, &metric, &vertical, tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    let leaf = curvature::oneill_leaf_curvature(&setup, tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    if let Value::Object(map) = &mut report.data {
        map.insert(
            "leaf".into(),
            json!({
                "leaf_curvature": leaf.value,
                "minus_rho_squared": leaf.minus_rho_squared,
            }),
        );
        map.insert("theta_parameters".into(), json!(params.theta().to_vec()));
    }
    Ok(report)
}

pub fn preset(name: &str, emit: Option<&Path>, tol: f64) -> Result<Report, CliError> {
    let emit_doc = |doc: &AlgebraDocument| -> Result<String, CliError> {
        let text = doc.to_json();
        if let Some(path) = emit {
            std::fs::write(path, &text)
                .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(text)
    };
    match name {
        "su2" => {
            let (algebra, metric) = catalog::su2();
            let doc = AlgebraDocument::from_parts(&algebra, &metric, None);
            let text = emit_doc(&doc)?;
            let mut report = Report::new("preset su2", digest(text.as_bytes()), tol);
            let validation = algebra.validate(tol);
            report.push(Check::from_bool(
                "jacobi",
                validation.jacobi_ok,
                json!({ "max_residual": validation.max_jacobi_residual }),
            ));
            let ss = algebra.is_semisimple(tol);
            report.push(Check::from_bool(
                "semisimple",
                ss.semisimple,
                json!({ "sigma_min": ss.sigma_min, "sigma_max": ss.sigma_max }),
            ));
            report.data = json!({
                "killing_diagonal": [-8.0, -8.0, -8.0],
                "metric_signature": [3, 0],
            });
            Ok(report)
        }
        "sl2r" => {
            let (algebra, metric, theta) = catalog::sl2r();
            let doc = AlgebraDocument::from_parts(&algebra, &metric, None);
            let text = emit_doc(&doc)?;
            let mut report = Report::new("preset sl2r", digest(text.as_bytes()), tol);
            let validation = algebra.validate(tol);
            report.push(Check::from_bool(
                "jacobi",
                validation.jacobi_ok,
                json!({ "max_residual": validation.max_jacobi_residual }),
            ));
            let ss = algebra.is_semisimple(tol);
            report.push(Check::from_bool(
                "semisimple",
                ss.semisimple,
                json!({ "sigma_min": ss.sigma_min, "sigma_max": ss.sigma_max }),
            ));
            let ck = folia_core::metric::cartan_killing_metric(&algebra, &theta, tol);
            report.push(Check::from_bool(
                "cartan-killing-positive-definite",
                ck.is_ok(),
                json!({ "error": ck.as_ref().err().map(|e| e.to_string()) }),
            ));
            let killing_signature =
                MetricTensor::from_matrix(algebra.killing_form().matrix().clone())
                    .ok()
                    .and_then(|m| m.signature(tol).ok());
            report.data = json!({
                "killing_diagonal": [-8.0, 8.0, 8.0],
                "killing_signature": killing_signature.map(|(p, q)| vec![p, q]),
            });
            Ok(report)
        }
        "berger" => {
            // A representative deformed member.
            let params = BergerParams {
                lambda: 2.0,
                x3: 1.0,
                rho: 1.0,
                ..Default::default()
            };
            let mut report = berger(&params, emit, None, tol, 0)?;
            report.command = "preset berger".into();
            Ok(report)
        }
        "intro-table" => {
            if emit.is_some() {
                return Err(CliError::input(
                    "preset intro-table bundles four documents; --emit is not supported",
                ));
            }
            let cases = catalog::intro_table_cases();
            let digest_src: String = cases.iter().map(|c| c.name).collect::<Vec<_>>().join(",");
            let mut report = Report::new("preset intro-table", digest(digest_src.as_bytes()), tol);
            let mut rows = Vec::new();
            for case in &cases {
                let (sub, _) = case
                    .algebra
                    .subalgebra(&case.vertical)
                    .map_err(|e| CliError::input(e.to_string()))?;
                let ss = sub.is_semisimple(tol);
                report.push(Check::from_bool(
                    &format!("{}-semisimplicity-as-expected", case.name),
                    ss.semisimple == case.expect_semisimple,
                    json!({ "semisimple": ss.semisimple, "expected": case.expect_semisimple }),
                ));
                let minimal =
                    verify_theorem_minimal(&case.algebra, &case.metric, &case.vertical, tol)
                        .map_err(|e| CliError::input(e.to_string()))?;
                report.push(outcome_check(
                    &format!("{}-minimality-theorem", case.name),
                    minimal.outcome,
                    json!({ "conclusion_minimal": minimal.conclusion_minimal }),
                ));
                rows.push(json!({
                    "name": case.name,
                    "semisimple": ss.semisimple,
                    "minimal": minimal.conclusion_minimal,
                }));
            }
            report.data = json!({ "cases": rows });
            Ok(report)
        }
        other => Err(CliError::input(format!(
            "unknown preset '{other}' (expected su2, sl2r, berger, intro-table)"
        ))),
    }
}

pub fn verify(suite_name: &str, samples: usize, seed: u64, tol: f64) -> Result<Report, CliError> {
    if suite_name != "paper" {
        return Err(CliError::input(format!(
            "unknown suite '{suite_name}' (expected: paper)"
        )));
    }
    let mut report = Report::new(
        "verify --suite paper",
        digest(format!("paper:{samples}:{seed}").as_bytes()),
        tol,
    );
    report.seed = Some(seed);
    report.samples = Some(samples);
    for criterion in suite::run_paper_suite(samples, seed) {
        report.push(Check::from_bool(
            &format!("criterion-{:02}", criterion.id),
            criterion.passed,
            json!({ "name": criterion.name, "detail": criterion.detail }),
        ));
    }
    Ok(report)
}
