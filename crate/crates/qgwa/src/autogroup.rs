//! The automorphisms `eta_{gamma,mu}` and `Omega`, their validity against a
//! given algebra, composition calculus, orders, finite-subgroup classification,
//! and the symmetric-polynomial guard.
//!
//! Every element is kept in the canonical form `Omega^e . eta_{gamma,mu}` with
//! `e` in `{0,1}`; composition pushes `Omega` factors to the left.

use std::sync::Arc;

use crate::error::{QgwaError, Result};
use crate::exactfield::FieldElement;
use crate::gwacore::QuantumGwa;
use crate::polynomials::{BaseKind, FactoredPoly, LaurentPoly};

/// `Omega^omega . eta_{gamma,mu}` with `mu = mu_scalar * h^{mu_hpower}`.
///
/// The action is `eta(h) = gamma h`, `eta(y) = y mu`, `eta(x) = mu^{-1} gamma^{i0} x`,
/// and `Omega(h) = -h`, `Omega(x) = y`, `Omega(y) = x` (the latter only at `q = -1`).
#[derive(Debug, Clone)]
pub struct Automorphism {
    omega: bool,
    gamma: FieldElement,
    mu_scalar: FieldElement,
    mu_hpower: i64,
    i0: i64,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        // i0 is a presentation choice, not part of the automorphism's identity
        self.omega == other.omega
            && self.gamma == other.gamma
            && self.mu_scalar == other.mu_scalar
            && self.mu_hpower == other.mu_hpower
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    pub fn new(
        omega: bool,
        gamma: FieldElement,
        mu_scalar: FieldElement,
        mu_hpower: i64,
        i0: i64,
    ) -> Result<Self> {
        if gamma.is_zero() || mu_scalar.is_zero() {
            return Err(QgwaError::InvalidAutomorphism(
                "gamma and mu must be nonzero".into(),
            ));
        }
        Ok(Automorphism {
            omega,
            gamma,
            mu_scalar,
            mu_hpower,
            i0,
        })
    }

    pub fn eta(gamma: FieldElement, mu_scalar: FieldElement, i0: i64) -> Result<Self> {
        Self::new(false, gamma, mu_scalar, 0, i0)
    }

    pub fn identity(algebra: &QuantumGwa) -> Self {
        let one = algebra.context().one();
        Automorphism {
            omega: false,
            gamma: one.clone(),
            mu_scalar: one,
            mu_hpower: 0,
            i0: default_i0(algebra),
        }
    }

    /// The pure swap `Omega` (requires `q = -1` to be valid).
    pub fn pure_omega(algebra: &QuantumGwa) -> Self {
        let one = algebra.context().one();
        Automorphism {
            omega: true,
            gamma: one.clone(),
            mu_scalar: one,
            mu_hpower: 0,
            i0: default_i0(algebra),
        }
    }

    pub fn omega(&self) -> bool {
        self.omega
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn mu_scalar(&self) -> &FieldElement {
        &self.mu_scalar
    }

    pub fn mu_hpower(&self) -> i64 {
        self.mu_hpower
    }

    pub fn i0(&self) -> i64 {
        self.i0
    }

    pub fn is_identity(&self) -> bool {
        !self.omega && self.gamma.is_one() && self.mu_scalar.is_one() && self.mu_hpower == 0
    }

    pub fn is_diagonal(&self) -> bool {
        !self.omega
    }

    /// Cheap structural checks used by the element action.
    pub fn check_structural(&self, algebra: &QuantumGwa) -> Result<()> {
        if self.gamma.is_zero() || self.mu_scalar.is_zero() {
            return Err(QgwaError::InvalidAutomorphism(
                "gamma and mu must be nonzero".into(),
            ));
        }
        if self.omega && *algebra.q() != -&algebra.context().one() {
            return Err(QgwaError::OmegaRequiresQMinusOne);
        }
        if algebra.base_kind() == BaseKind::Poly && self.mu_hpower != 0 {
            return Err(QgwaError::LaurentMuInPolyBase);
        }
        Ok(())
    }

    /// Full validation against an algebra: structural checks, `gamma` in `C_g`,
    /// `i0` indexing a nonzero coefficient of `a`, and the invariance of
    /// `gamma^{i0}` over every admissible choice of `i0`.
    pub fn validate(&self, algebra: &QuantumGwa) -> Result<Automorphism> {
        self.check_structural(algebra)?;
        let a = algebra.a_expanded();
        match congruence_gap(a)? {
            CongruenceGap::Monomial => {}
            CongruenceGap::Gap(g) => {
                if !self.gamma.pow(g).is_one() {
                    return Err(QgwaError::GammaNotInCg(g));
                }
            }
        }
        if a.coeff(self.i0).is_zero() {
            return Err(QgwaError::InvalidI0(self.i0));
        }
        // Remark invariance: gamma^{i0} = gamma^{j0} for every admissible j0
        let gi0 = self.gamma.pow(self.i0);
        for &j0 in a.coeffs().keys() {
            if self.gamma.pow(j0) != gi0 {
                return Err(QgwaError::InvalidAutomorphism(
                    "gamma^{i0} depends on the choice of i0".into(),
                ));
            }
        }
        Ok(self.clone())
    }

    /// Composite `self . inner` in canonical form, both validated against `algebra`.
    pub fn compose(&self, inner: &Automorphism, algebra: &QuantumGwa) -> Result<Automorphism> {
        let outer = self.validate(algebra)?;
        let inner = inner.validate(algebra)?;
        // Omega^{e1} eta1 Omega^{e2} eta2: push eta1 across Omega^{e2} first
        let eta1 = if inner.omega {
            outer.push_past_omega()
        } else {
            outer.diagonal_part()
        };
        let omega = outer.omega ^ inner.omega;
        // eta_{g',m'} . eta_{g,m} = eta_{g'g, g'^{deg m} m' m}
        let gamma = &eta1.gamma * &inner.gamma;
        let mu_scalar = &(&eta1.gamma.pow(inner.mu_hpower) * &eta1.mu_scalar) * &inner.mu_scalar;
        let mu_hpower = eta1.mu_hpower + inner.mu_hpower;
        Automorphism::new(omega, gamma, mu_scalar, mu_hpower, outer.i0)
    }

    fn diagonal_part(&self) -> Automorphism {
        Automorphism {
            omega: false,
            ..self.clone()
        }
    }

    /// `eta_{gamma,nu} . Omega = Omega . eta_{gamma, gamma^{i0} nu^{-1}}`.
    fn push_past_omega(&self) -> Automorphism {
        Automorphism {
            omega: false,
            gamma: self.gamma.clone(),
            mu_scalar: &self.gamma.pow(self.i0)
                * &self.mu_scalar.inverse().expect("mu is nonzero"),
            mu_hpower: -self.mu_hpower,
            i0: self.i0,
        }
    }

    /// Two-sided inverse under `compose`.
    pub fn inverse(&self, algebra: &QuantumGwa) -> Result<Automorphism> {
        // eta^{-1} = eta_{gamma^{-1}, (gamma^{deg mu} mu)^{-1}}
        let ginv = self.gamma.inverse().expect("gamma is nonzero");
        let eta_inv = Automorphism {
            omega: false,
            gamma: ginv.clone(),
            mu_scalar: (&self.gamma.pow(self.mu_hpower) * &self.mu_scalar)
                .inverse()
                .expect("mu is nonzero"),
            mu_hpower: -self.mu_hpower,
            i0: self.i0,
        };
        if self.omega {
            // (Omega eta)^{-1} = eta^{-1} Omega
            eta_inv.compose(&Automorphism::pure_omega(algebra), algebra)
        } else {
            Ok(eta_inv)
        }
    }

    /// Finite order when it exists: `ord(eta_{gamma,mu}) = lcm(ord gamma, ord mu)`
    /// for scalar `mu`; `Omega`-type elements square to a diagonal one.
    pub fn order(&self, algebra: &QuantumGwa) -> Result<Option<u64>> {
        if self.omega {
            let square = self.compose(self, algebra)?;
            debug_assert!(!square.omega);
            return Ok(square.order(algebra)?.map(|e| 2 * e));
        }
        if self.is_identity() {
            return Ok(Some(1));
        }
        if self.mu_hpower != 0 {
            return Ok(None);
        }
        let og = self.gamma.torsion_order()?;
        let om = self.mu_scalar.torsion_order()?;
        Ok(match (og, om) {
            (Some(a), Some(b)) => Some(num_integer::lcm(a, b)),
            _ => None,
        })
    }
}

/// `g = gcd{i - j : a_i a_j != 0}`, or the monomial flag when `a` has one term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceGap {
    Monomial,
    Gap(i64),
}

pub fn congruence_gap(a: &LaurentPoly) -> Result<CongruenceGap> {
    if a.is_zero() {
        return Err(QgwaError::ZeroPolynomial);
    }
    let exps: Vec<i64> = a.coeffs().keys().copied().collect();
    if exps.len() == 1 {
        return Ok(CongruenceGap::Monomial);
    }
    let base = exps[0];
    let mut g = 0i64;
    for &e in &exps[1..] {
        g = num_integer::gcd(g, e - base);
    }
    Ok(CongruenceGap::Gap(g.abs()))
}

/// Default `i0`: the top exponent over the polynomial base, the bottom one over
/// the Laurent base.
pub fn default_i0(algebra: &QuantumGwa) -> i64 {
    let a = algebra.a_expanded();
    match algebra.base_kind() {
        BaseKind::Poly => a.max_exp().unwrap_or(0),
        BaseKind::Laurent => a.min_exp().unwrap_or(0),
    }
}

/// Witness that `a(h) = delta h^l a(lambda h^{-1})` holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub l: i64,
    pub delta: FieldElement,
    pub lambda: FieldElement,
}

/// Search for a symmetry witness of a normalized Laurent defining polynomial.
///
/// Candidate `lambda` values are products of root pairs `c_i c_j`; the
/// inversion `c -> lambda / c` must permute the root multiset, and any witness
/// found is re-verified by exact expansion.
pub fn detect_symmetric(a: &FactoredPoly, base_kind: BaseKind) -> Option<SymmetryWitness> {
    if base_kind != BaseKind::Laurent {
        return None;
    }
    let roots = a.roots();
    if roots.is_empty() {
        return None;
    }
    let expanded = a.expand();
    let mut candidates: Vec<FieldElement> = Vec::new();
    for (ci, _) in roots {
        for (cj, _) in roots {
            let lambda = ci * cj;
            if !candidates.contains(&lambda) {
                candidates.push(lambda);
            }
        }
    }
    for lambda in candidates {
        // the inversion c -> lambda/c must permute the root multiset
        let permutes = roots.iter().all(|(c, m)| {
            let image = lambda.div(c).expect("roots are nonzero");
            roots.iter().any(|(r, rm)| *r == image && rm == m)
        });
        if !permutes {
            continue;
        }
        let total = a.total_degree();
        let mut prod = a.context().one();
        for (c, m) in roots {
            prod = &prod * &(-c).pow(*m as i64);
        }
        let delta = prod.inverse().expect("roots are nonzero");
        let l = total + a.h_power();
        // verify exactly: a(h) = delta h^l a(lambda h^{-1})
        let rhs = expanded.invert_h(&lambda).shift(l).scale(&delta);
        if rhs == expanded {
            return Some(SymmetryWitness { l, delta, lambda });
        }
    }
    None
}

/// The finite-subgroup classification cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupClass {
    /// Cyclic, generated by a diagonal `eta_{gamma,mu}`.
    Case1 { generator: Automorphism, order: u64 },
    /// Cyclic, generated by a single `Omega . eta_{gamma,mu}`.
    Case2 { generator: Automorphism, order: u64 },
    /// Generated by an `Omega . eta` together with a diagonal `eta`.
    Case3 {
        omega_generator: Automorphism,
        eta_generator: Automorphism,
        order: u64,
    },
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        match self {
            SubgroupClass::Case1 { order, .. }
            | SubgroupClass::Case2 { order, .. }
            | SubgroupClass::Case3 { order, .. } => *order,
        }
    }
}

const CLOSURE_CAP: usize = 10_000;

/// Classify the finite subgroup generated by the given automorphisms.
///
/// Requires every generator to have finite order and the defining polynomial to
/// be non-symmetric (the classification theorem does not apply otherwise).
pub fn classify_subgroup(
    generators: &[Automorphism],
    algebra: &Arc<QuantumGwa>,
) -> Result<SubgroupClass> {
    if algebra.base_kind() == BaseKind::Laurent
        && detect_symmetric(algebra.a(), BaseKind::Laurent).is_some()
    {
        return Err(QgwaError::SymmetricDefiningPolynomial);
    }
    let mut validated = Vec::new();
    for g in generators {
        let v = g.validate(algebra)?;
        if v.order(algebra)?.is_none() {
            return Err(QgwaError::InfiniteOrderGenerator);
        }
        validated.push(v);
    }
    // closure under composition
    let mut elements: Vec<Automorphism> = vec![Automorphism::identity(algebra)];
    for g in &validated {
        if !elements.contains(g) {
            elements.push(g.clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = elements.clone();
        for a in &snapshot {
            for b in &snapshot {
                let c = a.compose(b, algebra)?;
                if !elements.contains(&c) {
                    elements.push(c);
                    changed = true;
                    if elements.len() > CLOSURE_CAP {
                        return Err(QgwaError::InvalidParameter(
                            "subgroup closure exceeded the element cap".into(),
                        ));
                    }
                }
            }
        }
    }
    let order = elements.len() as u64;
    let diagonal: Vec<&Automorphism> = elements.iter().filter(|e| !e.omega).collect();
    let omegas: Vec<&Automorphism> = elements.iter().filter(|e| e.omega).collect();
    if omegas.is_empty() {
        let generator = max_order_element(&diagonal, algebra)?;
        return Ok(SubgroupClass::Case1 { generator, order });
    }
    // cyclic iff some Omega-type element has full order
    for w in &omegas {
        if w.order(algebra)? == Some(order) {
            return Ok(SubgroupClass::Case2 {
                generator: (*w).clone(),
                order,
            });
        }
    }
    let eta_generator = max_order_element(&diagonal, algebra)?;
    Ok(SubgroupClass::Case3 {
        omega_generator: omegas[0].clone(),
        eta_generator,
        order,
    })
}

fn max_order_element(
    candidates: &[&Automorphism],
    algebra: &QuantumGwa,
) -> Result<Automorphism> {
    let mut best: Option<(u64, &Automorphism)> = None;
    for c in candidates {
        let o = c.order(algebra)?.expect("closure elements have finite order");
        if best.as_ref().is_none_or(|(bo, _)| o > *bo) {
            best = Some((o, c));
        }
    }
    Ok(best.expect("group contains at least the identity").1.clone())
}
