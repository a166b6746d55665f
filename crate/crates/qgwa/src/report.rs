//! Serializable analysis reports and the JSON/text emitters.
//!
//! JSON output is deterministic: struct fields serialize in declaration order,
//! maps are ordered, and every exact value carries both a coordinate form and
//! a human-readable display string.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::autogroup::{Automorphism, SubgroupClass, SymmetryWitness};
use crate::error::QgwaError;
use crate::exactfield::FieldElement;
use crate::fixedring::{FixedRingPresentation, GcdProbe};
use crate::gwacore::QuantumGwa;
use crate::polynomials::{BaseKind, FactoredPoly, LaurentPoly};
use crate::rootprops::{
    CalabiYau, CongruenceReport, GldimReport, RigidityReport, RootAnalysis, SimplicityReport,
    SimplicityTransfer,
};

/// A field element as cyclotomic coordinates plus a display string.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ElementRepr {
    pub coords: Vec<String>,
    pub display: String,
}

impl ElementRepr {
    pub fn of(e: &FieldElement) -> Self {
        ElementRepr {
            coords: e.coords().iter().map(|c| c.to_string()).collect(),
            display: e.to_string(),
        }
    }
}

/// An expanded Laurent polynomial as an exponent-to-coefficient map.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PolyRepr {
    pub coeffs: BTreeMap<i64, ElementRepr>,
    pub display: String,
}

impl PolyRepr {
    pub fn of(p: &LaurentPoly) -> Self {
        PolyRepr {
            coeffs: p
                .coeffs()
                .iter()
                .map(|(&e, c)| (e, ElementRepr::of(c)))
                .collect(),
            display: p.to_string(),
        }
    }

    fn with_var(p: &LaurentPoly, var: &str) -> Self {
        PolyRepr {
            coeffs: p
                .coeffs()
                .iter()
                .map(|(&e, c)| (e, ElementRepr::of(c)))
                .collect(),
            display: p.display_with(var),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RootRepr {
    pub root: ElementRepr,
    pub multiplicity: u32,
}

/// A polynomial kept in factored form: unit, power of `h`, and roots.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FactoredRepr {
    pub unit: ElementRepr,
    pub h_power: i64,
    pub roots: Vec<RootRepr>,
    pub display: String,
}

impl FactoredRepr {
    pub fn of(p: &FactoredPoly, var: &str) -> Self {
        FactoredRepr {
            unit: ElementRepr::of(p.unit()),
            h_power: p.h_power(),
            roots: p
                .roots()
                .iter()
                .map(|(r, m)| RootRepr {
                    root: ElementRepr::of(r),
                    multiplicity: *m,
                })
                .collect(),
            display: p.display_with(var),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AutomorphismRepr {
    pub omega: bool,
    pub gamma: ElementRepr,
    pub mu_scalar: ElementRepr,
    pub mu_hpower: i64,
    pub i0: i64,
    pub order: Option<u64>,
    pub is_identity: bool,
}

impl AutomorphismRepr {
    pub fn of(phi: &Automorphism, algebra: &QuantumGwa) -> Self {
        AutomorphismRepr {
            omega: phi.omega(),
            gamma: ElementRepr::of(phi.gamma()),
            mu_scalar: ElementRepr::of(phi.mu_scalar()),
            mu_hpower: phi.mu_hpower(),
            i0: phi.i0(),
            order: phi.order(algebra).ok().flatten(),
            is_identity: phi.is_identity(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AlgebraRepr {
    pub conductor: u64,
    pub base: String,
    pub q: ElementRepr,
    pub q_torsion_order: Option<u64>,
    pub a: FactoredRepr,
    pub a_expanded: PolyRepr,
    pub normalization_unit: ElementRepr,
    pub normalization_h_shift: i64,
}

impl AlgebraRepr {
    pub fn of(algebra: &QuantumGwa) -> Self {
        AlgebraRepr {
            conductor: algebra.context().conductor(),
            base: base_name(algebra.base_kind()).to_string(),
            q: ElementRepr::of(algebra.q()),
            q_torsion_order: algebra.q().torsion_order().ok().flatten(),
            a: FactoredRepr::of(algebra.a(), "h"),
            a_expanded: PolyRepr::of(algebra.a_expanded()),
            normalization_unit: ElementRepr::of(&algebra.normalization().unit),
            normalization_h_shift: algebra.normalization().h_shift,
        }
    }
}

pub fn base_name(kind: BaseKind) -> &'static str {
    match kind {
        BaseKind::Poly => "poly",
        BaseKind::Laurent => "laurent",
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SymmetricRepr {
    pub l: i64,
    pub delta: ElementRepr,
    pub lambda: ElementRepr,
}

impl SymmetricRepr {
    pub fn of(w: &SymmetryWitness) -> Self {
        SymmetricRepr {
            l: w.l,
            delta: ElementRepr::of(&w.delta),
            lambda: ElementRepr::of(&w.lambda),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClassificationRepr {
    /// 1 = cyclic diagonal, 2 = cyclic with an x/y swap, 3 = two generators.
    pub case: u8,
    pub order: u64,
}

impl ClassificationRepr {
    pub fn of(class: &SubgroupClass) -> Self {
        match class {
            SubgroupClass::Case1 { order, .. } => ClassificationRepr { case: 1, order: *order },
            SubgroupClass::Case2 { order, .. } => ClassificationRepr { case: 2, order: *order },
            SubgroupClass::Case3 { order, .. } => ClassificationRepr { case: 3, order: *order },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GeneratorRepr {
    pub name: String,
    pub display: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FixedRingRepr {
    /// "diagonal_gwa", "quantum_plane", or "omega_invariants".
    pub kind: String,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub q_prime: Option<ElementRepr>,
    pub big_a: Option<FactoredRepr>,
    pub big_a_expanded: Option<PolyRepr>,
    pub mu: Option<ElementRepr>,
    pub cap_a: Option<PolyRepr>,
    pub cap_b: Option<PolyRepr>,
    pub generators: Vec<GeneratorRepr>,
}

impl FixedRingRepr {
    pub fn of(
        presentation: &FixedRingPresentation,
        generators: &[(String, crate::gwacore::GwaElement)],
    ) -> Self {
        let gens = generators
            .iter()
            .map(|(name, g)| GeneratorRepr {
                name: name.clone(),
                display: g.to_string(),
            })
            .collect();
        match presentation {
            FixedRingPresentation::DiagonalGwa(d) => FixedRingRepr {
                kind: "diagonal_gwa".to_string(),
                m: Some(d.m),
                n: Some(d.n),
                q_prime: Some(ElementRepr::of(&d.q_prime)),
                big_a: Some(FactoredRepr::of(&d.big_a, "H")),
                big_a_expanded: Some(PolyRepr::with_var(&d.big_a.expand(), "H")),
                mu: None,
                cap_a: None,
                cap_b: None,
                generators: gens,
            },
            FixedRingPresentation::QuantumPlane(p) => FixedRingRepr {
                kind: "quantum_plane".to_string(),
                m: None,
                n: None,
                q_prime: None,
                big_a: None,
                big_a_expanded: None,
                mu: Some(ElementRepr::of(&p.mu)),
                cap_a: None,
                cap_b: None,
                generators: gens,
            },
            FixedRingPresentation::OmegaInvariants(o) => FixedRingRepr {
                kind: "omega_invariants".to_string(),
                m: None,
                n: None,
                q_prime: None,
                big_a: None,
                big_a_expanded: None,
                mu: Some(ElementRepr::of(&o.mu)),
                cap_a: Some(PolyRepr::of(&o.cap_a)),
                cap_b: Some(PolyRepr::of(&o.cap_b)),
                generators: gens,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CongruencePairRepr {
    pub root_i: ElementRepr,
    pub root_j: ElementRepr,
    pub k: i64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RootAnalysisRepr {
    pub ord_q: Option<u64>,
    pub roots_a: Vec<RootRepr>,
    pub zero_multiplicity: u32,
    pub roots_b: Vec<RootRepr>,
    pub roots_big_a: Vec<RootRepr>,
    pub zero_multiplicity_big_a: u32,
    pub congruent_pairs: Vec<CongruencePairRepr>,
    pub congruence_complete: bool,
}

fn roots_repr(roots: &[(FieldElement, u32)]) -> Vec<RootRepr> {
    roots
        .iter()
        .map(|(r, m)| RootRepr {
            root: ElementRepr::of(r),
            multiplicity: *m,
        })
        .collect()
}

impl RootAnalysisRepr {
    pub fn of(analysis: &RootAnalysis, congruence: &CongruenceReport) -> Self {
        RootAnalysisRepr {
            ord_q: analysis.ord_q,
            roots_a: roots_repr(&analysis.roots_a),
            zero_multiplicity: analysis.zero_mult,
            roots_b: roots_repr(&analysis.roots_b),
            roots_big_a: roots_repr(&analysis.roots_big_a),
            zero_multiplicity_big_a: analysis.zero_mult_big_a,
            congruent_pairs: congruence
                .pairs
                .iter()
                .map(|p| CongruencePairRepr {
                    root_i: ElementRepr::of(&p.root_i),
                    root_j: ElementRepr::of(&p.root_j),
                    k: p.k,
                })
                .collect(),
            congruence_complete: congruence.complete,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GldimRepr {
    /// "1", "2", or "infinite".
    pub value: String,
    pub reason: String,
    pub complete: bool,
}

impl GldimRepr {
    pub fn of(r: &GldimReport) -> Self {
        GldimRepr {
            value: r.value.to_string(),
            reason: r.reason.clone(),
            complete: r.complete,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CalabiYauRepr {
    pub twisted_cy: bool,
    pub reason: String,
    pub nakayama: Option<AutomorphismRepr>,
}

impl CalabiYauRepr {
    pub fn of(cy: &CalabiYau, algebra: &QuantumGwa) -> Self {
        CalabiYauRepr {
            twisted_cy: cy.twisted_cy,
            reason: cy.reason.clone(),
            nakayama: cy.nakayama.as_ref().map(|nu| AutomorphismRepr::of(nu, algebra)),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SimplicityRepr {
    pub simple: bool,
    pub reasons: Vec<String>,
    pub complete: bool,
}

impl SimplicityRepr {
    pub fn of(r: &SimplicityReport) -> Self {
        SimplicityRepr {
            simple: r.simple,
            reasons: r.reasons.clone(),
            complete: r.complete,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SimplicityTransferRepr {
    pub original: SimplicityRepr,
    pub fixed: SimplicityRepr,
}

impl SimplicityTransferRepr {
    pub fn of(t: &SimplicityTransfer) -> Self {
        SimplicityTransferRepr {
            original: SimplicityRepr::of(&t.original),
            fixed: SimplicityRepr::of(&t.fixed),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RigidityRepr {
    pub isomorphic: bool,
    pub deg_a: i64,
    pub deg_big_a: i64,
}

impl RigidityRepr {
    pub fn of(r: &RigidityReport) -> Self {
        RigidityRepr {
            isomorphic: r.isomorphic,
            deg_a: r.deg_a,
            deg_big_a: r.deg_big_a,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerificationRepr {
    pub passed: bool,
    pub grade_bound: i64,
    pub h_degree_bound: i64,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ProbeRepr {
    pub m: u64,
    pub n: u64,
    pub gcd: u64,
    pub generators: Vec<String>,
}

impl ProbeRepr {
    pub fn of(p: &GcdProbe) -> Self {
        ProbeRepr {
            m: p.m,
            n: p.n,
            gcd: p.gcd,
            generators: p.generators.iter().map(|g| g.to_string()).collect(),
        }
    }
}

/// Which exit-code class a recorded stage error belongs to.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Parse,
    Hypothesis,
    CrossCheck,
    Internal,
}

pub fn error_kind(e: &QgwaError) -> ErrorKind {
    match e {
        QgwaError::ParseError { .. } | QgwaError::SemanticError(_) => ErrorKind::Parse,
        QgwaError::CrossCheckMismatch(_) | QgwaError::VerificationFailed(_) => {
            ErrorKind::CrossCheck
        }
        QgwaError::HypothesisViolated(_)
        | QgwaError::InvalidParameter(_)
        | QgwaError::InvalidAutomorphism(_)
        | QgwaError::GammaNotInCg(_)
        | QgwaError::InvalidI0(_)
        | QgwaError::OmegaRequiresQMinusOne
        | QgwaError::RequiresQMinusOne
        | QgwaError::InvalidGamma
        | QgwaError::LaurentMuInPolyBase
        | QgwaError::LaurentBaseUnsupported
        | QgwaError::SymmetricDefiningPolynomial
        | QgwaError::InfiniteOrder
        | QgwaError::InfiniteOrderGenerator
        | QgwaError::ZeroPolynomial => ErrorKind::Hypothesis,
        _ => ErrorKind::Internal,
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StageErrorRepr {
    pub stage: String,
    pub kind: ErrorKind,
    pub message: String,
}

/// The full analysis result; optional sections are `null` when the pipeline
/// could not reach them.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub version: String,
    pub algebra: Option<AlgebraRepr>,
    pub automorphism: Option<AutomorphismRepr>,
    pub classification: Option<ClassificationRepr>,
    pub symmetric: Option<SymmetricRepr>,
    pub fixed_ring: Option<FixedRingRepr>,
    pub root_analysis: Option<RootAnalysisRepr>,
    pub gldim_original: Option<GldimRepr>,
    pub gldim_fixed: Option<GldimRepr>,
    pub calabi_yau: Option<CalabiYauRepr>,
    pub simplicity: Option<SimplicityTransferRepr>,
    pub rigidity: Option<RigidityRepr>,
    pub verification: Option<VerificationRepr>,
    pub probe: Option<ProbeRepr>,
    pub warnings: Vec<String>,
    pub errors: Vec<StageErrorRepr>,
}

impl AnalysisReport {
    pub fn empty() -> Self {
        AnalysisReport {
            version: "1".to_string(),
            algebra: None,
            automorphism: None,
            classification: None,
            symmetric: None,
            fixed_ring: None,
            root_analysis: None,
            gldim_original: None,
            gldim_fixed: None,
            calabi_yau: None,
            simplicity: None,
            rigidity: None,
            verification: None,
            probe: None,
            warnings: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn record_error(&mut self, stage: &str, e: &QgwaError) {
        self.errors.push(StageErrorRepr {
            stage: stage.to_string(),
            kind: error_kind(e),
            message: e.to_string(),
        });
    }

    /// CLI exit code: 0 clean, 2 hypothesis violations, 3 parse errors,
    /// 4 failed cross-checks or verification.
    pub fn exit_code(&self) -> i32 {
        let mut code = 0;
        for e in &self.errors {
            let c = match e.kind {
                ErrorKind::CrossCheck | ErrorKind::Internal => 4,
                ErrorKind::Parse => 3,
                ErrorKind::Hypothesis => 2,
            };
            code = code.max(c);
        }
        if let Some(v) = &self.verification {
            if !v.passed {
                code = code.max(4);
            }
        }
        code
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub fn emit_report(report: &AnalysisReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            s.push('\n');
            s
        }
        ReportFormat::Text => emit_text(report),
    }
}

fn emit_text(report: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let w = &mut out;
    if let Some(alg) = &report.algebra {
        writeln!(w, "algebra:").unwrap();
        writeln!(w, "  conductor = {}", alg.conductor).unwrap();
        writeln!(w, "  base = {}", alg.base).unwrap();
        match alg.q_torsion_order {
            Some(n) => writeln!(w, "  q = {} (root of unity of order {})", alg.q.display, n),
            None => writeln!(w, "  q = {} (not a root of unity)", alg.q.display),
        }
        .unwrap();
        writeln!(w, "  a(h) = {}", alg.a.display).unwrap();
    }
    if let Some(phi) = &report.automorphism {
        let kind = if phi.omega { "Omega . eta" } else { "eta" };
        let order = match phi.order {
            Some(o) => o.to_string(),
            None => "infinite".to_string(),
        };
        writeln!(
            w,
            "automorphism: {} with gamma = {}, mu = {}{}, order = {}",
            kind,
            phi.gamma.display,
            phi.mu_scalar.display,
            if phi.mu_hpower != 0 {
                format!(" * h^{}", phi.mu_hpower)
            } else {
                String::new()
            },
            order,
        )
        .unwrap();
    }
    if let Some(c) = &report.classification {
        writeln!(w, "subgroup: case {}, order {}", c.case, c.order).unwrap();
    }
    if let Some(s) = &report.symmetric {
        writeln!(
            w,
            "symmetric defining polynomial: l = {}, delta = {}, lambda = {}",
            s.l, s.delta.display, s.lambda.display
        )
        .unwrap();
    }
    if let Some(f) = &report.fixed_ring {
        writeln!(w, "fixed ring: {}", f.kind).unwrap();
        if let (Some(m), Some(n)) = (f.m, f.n) {
            writeln!(w, "  m = {m}, n = {n}").unwrap();
        }
        if let Some(qp) = &f.q_prime {
            writeln!(w, "  q' = {}", qp.display).unwrap();
        }
        if let Some(big_a) = &f.big_a {
            writeln!(w, "  A(H) = {}", big_a.display).unwrap();
        }
        if let Some(mu) = &f.mu {
            writeln!(w, "  mu = {}", mu.display).unwrap();
        }
        if let Some(cap_a) = &f.cap_a {
            writeln!(w, "  A = {}", cap_a.display).unwrap();
        }
        if let Some(cap_b) = &f.cap_b {
            writeln!(w, "  B = {}", cap_b.display).unwrap();
        }
        for g in &f.generators {
            writeln!(w, "  generator {} = {}", g.name, g.display).unwrap();
        }
    }
    if let Some(r) = &report.root_analysis {
        let pairs: Vec<String> = r
            .congruent_pairs
            .iter()
            .map(|p| {
                format!(
                    "{} = q^{} * {}",
                    p.root_j.display, p.k, p.root_i.display
                )
            })
            .collect();
        writeln!(
            w,
            "congruent root pairs{}: [{}]",
            if r.congruence_complete {
                ""
            } else {
                " (bounded search, incomplete)"
            },
            pairs.join(", ")
        )
        .unwrap();
    }
    if let Some(g) = &report.gldim_original {
        writeln!(w, "gldim(R) = {} ({})", g.value, g.reason).unwrap();
    }
    if let Some(g) = &report.gldim_fixed {
        writeln!(w, "gldim(fixed ring) = {} ({})", g.value, g.reason).unwrap();
    }
    if let Some(cy) = &report.calabi_yau {
        writeln!(
            w,
            "twisted Calabi-Yau: {} ({})",
            if cy.twisted_cy { "yes" } else { "no" },
            cy.reason
        )
        .unwrap();
        if let Some(nu) = &cy.nakayama {
            writeln!(
                w,
                "  Nakayama automorphism: eta with gamma = {}, mu = {}",
                nu.gamma.display, nu.mu_scalar.display
            )
            .unwrap();
        }
    }
    if let Some(s) = &report.simplicity {
        writeln!(
            w,
            "simple: R {}, fixed ring {}",
            if s.original.simple { "yes" } else { "no" },
            if s.fixed.simple { "yes" } else { "no" }
        )
        .unwrap();
        for reason in s.original.reasons.iter().chain(&s.fixed.reasons) {
            writeln!(w, "  obstruction: {reason}").unwrap();
        }
    }
    if let Some(r) = &report.rigidity {
        writeln!(
            w,
            "fixed ring isomorphic to R: {} (deg a = {}, deg A = {})",
            if r.isomorphic { "yes" } else { "no" },
            r.deg_a,
            r.deg_big_a
        )
        .unwrap();
    }
    if let Some(v) = &report.verification {
        writeln!(
            w,
            "verification (grades <= {}, h-degree <= {}): {}",
            v.grade_bound,
            v.h_degree_bound,
            if v.passed { "passed" } else { "FAILED" }
        )
        .unwrap();
        if !v.message.is_empty() {
            writeln!(w, "  {}", v.message).unwrap();
        }
    }
    if let Some(p) = &report.probe {
        writeln!(
            w,
            "gcd probe: m = {}, n = {}, gcd = {} (fixed ring is not a GWA on 3 generators)",
            p.m, p.n, p.gcd
        )
        .unwrap();
        for g in &p.generators {
            writeln!(w, "  generator: {g}").unwrap();
        }
    }
    if report.warnings.is_empty() {
        writeln!(w, "warnings: []").unwrap();
    } else {
        writeln!(w, "warnings:").unwrap();
        for warning in &report.warnings {
            writeln!(w, "  - {warning}").unwrap();
        }
    }
    for e in &report.errors {
        writeln!(w, "error [{}]: {}", e.stage, e.message).unwrap();
    }
    out
}
