//! Orchestration: run the whole analysis for one parsed request, recording
//! per-stage errors in the report instead of aborting, so that partial results
//! survive hypothesis violations downstream.

use std::sync::Arc;

use crate::autogroup::{classify_subgroup, default_i0, detect_symmetric, Automorphism};
use crate::error::QgwaError;
use crate::fixedring::{
    fixed_ring_diagonal, fixed_ring_omega, presented_generators, probe_gcd_failure,
    verify_fixed_ring, FixedRingPresentation,
};
use crate::gwacore::QuantumGwa;
use crate::parser::AnalysisRequest;
use crate::polynomials::BaseKind;
use crate::report::{
    AlgebraRepr, AnalysisReport, AutomorphismRepr, CalabiYauRepr, ClassificationRepr,
    FixedRingRepr, GldimRepr, ProbeRepr, RigidityRepr, RootAnalysisRepr, SimplicityTransferRepr,
    SymmetricRepr, VerificationRepr,
};
use crate::rootprops::{
    congruent_pairs, gldim, gldim_fixed, rigidity, simplicity_transfer, twisted_calabi_yau,
    KRange, RootAnalysis,
};

/// Run every analysis stage the hypotheses permit and collect the results.
pub fn run_analysis(request: &AnalysisRequest) -> AnalysisReport {
    let mut report = AnalysisReport::empty();

    // algebra construction
    let algebra = match QuantumGwa::new(request.base_kind, request.q.clone(), request.a.clone()) {
        Ok(a) => a,
        Err(e) => {
            report.record_error("algebra", &e);
            return report;
        }
    };
    report.algebra = Some(AlgebraRepr::of(&algebra));
    if let Some(witness) = detect_symmetric(algebra.a(), algebra.base_kind()) {
        report.symmetric = Some(SymmetricRepr::of(&witness));
        report.warnings.push(
            "defining polynomial is symmetric: extra non-diagonal automorphisms exist and \
             the subgroup classification does not apply"
                .to_string(),
        );
    }

    // automorphism validation
    let i0 = request.i0.unwrap_or_else(|| default_i0(&algebra));
    let phi = Automorphism::new(
        request.omega,
        request.gamma.clone(),
        request.mu_scalar.clone(),
        request.mu_hpower,
        i0,
    )
    .and_then(|phi| phi.validate(&algebra));
    let phi = match phi {
        Ok(phi) => phi,
        Err(e) => {
            report.record_error("automorphism", &e);
            run_algebra_only_stages(&algebra, request, &mut report);
            return report;
        }
    };
    report.automorphism = Some(AutomorphismRepr::of(&phi, &algebra));

    match classify_subgroup(std::slice::from_ref(&phi), &algebra) {
        Ok(class) => report.classification = Some(ClassificationRepr::of(&class)),
        Err(QgwaError::SymmetricDefiningPolynomial) => {
            // already surfaced as a warning above
        }
        Err(e) => report.record_error("classification", &e),
    }

    // closed-form fixed ring
    let presentation = if phi.omega() {
        fixed_ring_omega(&algebra, &phi)
    } else {
        fixed_ring_diagonal(&algebra, &phi)
    };
    let presentation = match presentation {
        Ok(p) => {
            let gens = presented_generators(&algebra, &p);
            report.fixed_ring = Some(FixedRingRepr::of(&p, &gens));
            Some(p)
        }
        Err(e) => {
            report.record_error("fixed_ring", &e);
            None
        }
    };

    run_algebra_only_stages(&algebra, request, &mut report);

    // root analysis and transfer classifiers apply to the diagonal GWA case
    if let Some(FixedRingPresentation::DiagonalGwa(d)) = &presentation {
        match RootAnalysis::build(&algebra, d.n, d.m) {
            Ok(analysis) => {
                let congruence = congruent_pairs(
                    &analysis.roots_a,
                    algebra.q(),
                    KRange::All,
                    request.options.k_bound,
                );
                match congruence {
                    Ok(c) => {
                        if !c.complete {
                            report.warnings.push(format!(
                                "congruent-pair search was truncated at |k| <= {}",
                                request.options.k_bound
                            ));
                        }
                        report.root_analysis = Some(RootAnalysisRepr::of(&analysis, &c));
                    }
                    Err(e) => report.record_error("congruence", &e),
                }
            }
            Err(e) => report.record_error("root_analysis", &e),
        }
        match gldim_fixed(&algebra, &phi, request.options.k_bound) {
            Ok(g) => report.gldim_fixed = Some(GldimRepr::of(&g)),
            Err(e) => report.record_error("gldim_fixed", &e),
        }
        match rigidity(&algebra, &phi) {
            Ok(r) => report.rigidity = Some(RigidityRepr::of(&r)),
            Err(e) => report.record_error("rigidity", &e),
        }
        if algebra.base_kind() == BaseKind::Laurent {
            match simplicity_transfer(&algebra, &phi, request.options.k_bound) {
                Ok(t) => report.simplicity = Some(SimplicityTransferRepr::of(&t)),
                Err(e) => report.record_error("simplicity", &e),
            }
        }
    }

    // optional brute-force verification of the closed form
    if request.options.verify {
        if let Some(p) = &presentation {
            let gb = request.options.grade_bound;
            let hb = request.options.h_degree_bound;
            let result = verify_fixed_ring(&algebra, &phi, p, gb, hb);
            report.verification = Some(VerificationRepr {
                passed: result.is_ok(),
                grade_bound: gb,
                h_degree_bound: hb,
                message: result.err().map(|e| e.to_string()).unwrap_or_default(),
            });
        } else {
            report
                .warnings
                .push("verification skipped: no closed-form fixed ring was produced".to_string());
        }
    }

    // optional probe of what the fixed ring looks like when gcd(m, n) > 1
    if request.options.probe {
        match probe_gcd_failure(
            &algebra,
            &phi,
            request.options.grade_bound,
            request.options.h_degree_bound,
        ) {
            Ok(p) => report.probe = Some(ProbeRepr::of(&p)),
            Err(e) => report.record_error("probe", &e),
        }
    }

    report
}

/// Stages that need only the algebra itself, not a valid automorphism.
fn run_algebra_only_stages(
    algebra: &Arc<QuantumGwa>,
    request: &AnalysisRequest,
    report: &mut AnalysisReport,
) {
    match gldim(algebra, request.options.k_bound) {
        Ok(g) => {
            if !g.complete {
                report.warnings.push(
                    "global dimension determination used a truncated congruence search".to_string(),
                );
            }
            report.gldim_original = Some(GldimRepr::of(&g));
        }
        Err(e) => report.record_error("gldim", &e),
    }
    if algebra.base_kind() == BaseKind::Poly {
        match twisted_calabi_yau(algebra) {
            Ok(cy) => report.calabi_yau = Some(CalabiYauRepr::of(&cy, algebra)),
            Err(e) => report.record_error("calabi_yau", &e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_request;
    use crate::report::{emit_report, ReportFormat};

    const EXAMPLE_ONE: &str = "\
[algebra]
conductor = 3
base = laurent
q = 1/2
a = (h^2 - 1) * (h^2 - 4)

[automorphism]
gamma = -1
mu = z
";

    #[test]
    fn biquadratic_example_end_to_end() {
        let req = parse_request(EXAMPLE_ONE).expect("example should parse");
        let report = run_analysis(&req);
        assert!(report.errors.is_empty(), "errors: {:?}", report.errors);
        let fixed = report.fixed_ring.as_ref().expect("fixed ring");
        assert_eq!(fixed.kind, "diagonal_gwa");
        assert_eq!((fixed.m, fixed.n), (Some(3), Some(2)));
        assert_eq!(fixed.q_prime.as_ref().unwrap().display, "1/64");
        let big_a = fixed.big_a.as_ref().unwrap();
        assert_eq!(big_a.unit.display, "4096");
        assert_eq!(big_a.roots.iter().map(|r| r.multiplicity).sum::<u32>(), 6);
        assert_eq!(report.gldim_original.as_ref().unwrap().value, "2");
        assert_eq!(report.gldim_fixed.as_ref().unwrap().value, "infinite");
        assert!(!report.rigidity.as_ref().unwrap().isomorphic);
        let simple = report.simplicity.as_ref().unwrap();
        assert!(!simple.original.simple && !simple.fixed.simple);
        assert_eq!(report.exit_code(), 0);

        let text = emit_report(&report, ReportFormat::Text);
        assert!(text.contains("A(H) = 4096*(H-1)^2*(H-1/4)^2*(H-1/16)*(H-4)"), "{text}");

        let json_a = emit_report(&report, ReportFormat::Json);
        let json_b = emit_report(&run_analysis(&req), ReportFormat::Json);
        assert_eq!(json_a, json_b, "JSON output must be deterministic");
        serde_json::from_str::<serde_json::Value>(&json_a).expect("valid JSON");
    }

    #[test]
    fn clean_run_reports_empty_warnings() {
        let text = "\
[algebra]
base = laurent
q = 1/2
a = (h - 1) * (h - 2) * (h - 3)

[automorphism]
gamma = 1
mu = -1
";
        let req = parse_request(text).unwrap();
        let report = run_analysis(&req);
        assert!(report.errors.is_empty(), "errors: {:?}", report.errors);
        assert!(report.symmetric.is_none());
        let rendered = emit_report(&report, ReportFormat::Text);
        assert!(rendered.contains("warnings: []"), "{rendered}");
        assert!(report.classification.is_some());
    }

    #[test]
    fn hypothesis_violation_keeps_partial_results() {
        // gcd(ord mu, ord gamma) = 2: the closed form does not apply, but the
        // original-algebra stages still run
        let text = "\
[algebra]
conductor = 12
base = poly
q = 5
a = h

[automorphism]
gamma = z^2
mu = z^3
";
        let req = parse_request(text).unwrap();
        let report = run_analysis(&req);
        assert!(report.fixed_ring.is_none());
        assert!(report
            .errors
            .iter()
            .any(|e| e.stage == "fixed_ring"));
        assert!(report.gldim_original.is_some());
        assert!(report.calabi_yau.is_some());
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn omega_request_produces_invariant_presentation() {
        let text = "\
[algebra]
conductor = 4
q = -1
a = h^2 + 1

[automorphism]
omega = true
gamma = 1
mu = 1
";
        let req = parse_request(text).unwrap();
        let report = run_analysis(&req);
        assert!(report.errors.is_empty(), "errors: {:?}", report.errors);
        let fixed = report.fixed_ring.as_ref().expect("fixed ring");
        assert_eq!(fixed.kind, "omega_invariants");
        assert_eq!(fixed.generators.len(), 4);
    }

    #[test]
    fn symmetric_laurent_polynomial_warns() {
        let req = parse_request(EXAMPLE_ONE).unwrap();
        // (h^2-1)(h^2-4) is symmetric with lambda = 2
        let report = run_analysis(&req);
        assert!(report.symmetric.is_some());
        assert!(!report.warnings.is_empty());
        assert!(report.classification.is_none());
    }
}
