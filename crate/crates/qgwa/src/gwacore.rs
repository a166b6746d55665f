//! The quantum GWA itself: algebra descriptor, Z-graded normal-form elements,
//! exact multiplication via the defining relations, automorphism action, and
//! brute-force fixed-space computation.
//!
//! An element is stored as a finite map from grade `k` to a base-ring component
//! `d_k`, representing `x^k d_k` for `k > 0`, `d_0` for `k = 0`, and
//! `y^{-k} d_k` for `k < 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::autogroup::Automorphism;
use crate::error::{QgwaError, Result};
use crate::exactfield::{FieldContext, FieldElement};
use crate::linalg::Matrix;
use crate::polynomials::{BaseKind, FactoredPoly, LaurentPoly, Normalization};

/// The algebra `D(sigma, a)` with `D = k[h]` or `k[h^{+-1}]`, `sigma(h) = q h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumGwa {
    context: FieldContext,
    base_kind: BaseKind,
    q: FieldElement,
    a: FactoredPoly,
    a_expanded: LaurentPoly,
    normalization: Normalization,
}

impl QuantumGwa {
    /// Build the algebra, normalizing `a` (monic; for the Laurent base also
    /// clearing the h-power).
    pub fn new(base_kind: BaseKind, q: FieldElement, a: FactoredPoly) -> Result<Arc<Self>> {
        if q.is_zero() || q.is_one() {
            return Err(QgwaError::InvalidParameter(
                "q must lie outside {0, 1}".into(),
            ));
        }
        if a.base_kind() != base_kind {
            return Err(QgwaError::InvalidParameter(
                "defining polynomial base kind disagrees with the algebra".into(),
            ));
        }
        let (a, normalization) = a.normalize()?;
        if a.total_degree() <= 0 && a.roots().is_empty() && a.h_power() == 0 {
            return Err(QgwaError::InvalidParameter(
                "a must have positive degree after normalization".into(),
            ));
        }
        let a_expanded = a.expand();
        Ok(Arc::new(QuantumGwa {
            context: q.context(),
            base_kind,
            q,
            a,
            a_expanded,
            normalization,
        }))
    }

    pub fn context(&self) -> FieldContext {
        self.context
    }

    pub fn base_kind(&self) -> BaseKind {
        self.base_kind
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    pub fn a(&self) -> &FactoredPoly {
        &self.a
    }

    pub fn a_expanded(&self) -> &LaurentPoly {
        &self.a_expanded
    }

    /// What `normalize` divided out of the input polynomial.
    pub fn normalization(&self) -> &Normalization {
        &self.normalization
    }

    /// `sigma^power` applied to a base-ring element.
    pub fn sigma(&self, d: &LaurentPoly, power: i64) -> LaurentPoly {
        d.scale_h(&self.q.pow(power))
    }

    /// Closed-form power products: `y^m x^m = prod_{i=0}^{m-1} sigma^{-i}(a)`
    /// and `x^m y^m = prod_{i=1}^{m} sigma^{i}(a)`.
    pub fn power_product_identity(&self, m: u32, side: PowerSide) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.context, self.base_kind);
        for i in 0..m as i64 {
            let power = match side {
                PowerSide::YX => -i,
                PowerSide::XY => i + 1,
            };
            acc = acc.mul(&self.sigma(&self.a_expanded, power));
        }
        acc
    }
}

/// Which m-fold power product is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerSide {
    YX,
    XY,
}

/// Normal-form element of a quantum GWA.
#[derive(Debug, Clone)]
pub struct GwaElement {
    algebra: Arc<QuantumGwa>,
    components: BTreeMap<i64, LaurentPoly>,
}

impl PartialEq for GwaElement {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra && self.components == other.components
    }
}

impl Eq for GwaElement {}

impl GwaElement {
    pub fn zero(algebra: &Arc<QuantumGwa>) -> Self {
        GwaElement {
            algebra: Arc::clone(algebra),
            components: BTreeMap::new(),
        }
    }

    pub fn from_base(algebra: &Arc<QuantumGwa>, d: LaurentPoly) -> Self {
        Self::monomial_component(algebra, 0, d)
    }

    pub fn one(algebra: &Arc<QuantumGwa>) -> Self {
        Self::from_base(algebra, LaurentPoly::one(algebra.context, algebra.base_kind))
    }

    /// The element `x^k d` (`k > 0`), `d` (`k = 0`), or `y^{-k} d` (`k < 0`).
    pub fn monomial_component(algebra: &Arc<QuantumGwa>, grade: i64, d: LaurentPoly) -> Self {
        let mut e = Self::zero(algebra);
        if !d.is_zero() {
            e.components.insert(grade, d);
        }
        e
    }

    /// The basis monomial `x^k h^j`, `h^j`, or `y^{-k} h^j`.
    pub fn basis_monomial(algebra: &Arc<QuantumGwa>, grade: i64, h_exp: i64) -> Self {
        let d = LaurentPoly::monomial(
            algebra.context,
            algebra.base_kind,
            h_exp,
            algebra.context.one(),
        );
        Self::monomial_component(algebra, grade, d)
    }

    pub fn gen_x(algebra: &Arc<QuantumGwa>) -> Self {
        Self::basis_monomial(algebra, 1, 0)
    }

    pub fn gen_y(algebra: &Arc<QuantumGwa>) -> Self {
        Self::basis_monomial(algebra, -1, 0)
    }

    pub fn gen_h(algebra: &Arc<QuantumGwa>) -> Self {
        Self::basis_monomial(algebra, 0, 1)
    }

    pub fn algebra(&self) -> &Arc<QuantumGwa> {
        &self.algebra
    }

    pub fn components(&self) -> &BTreeMap<i64, LaurentPoly> {
        &self.components
    }

    pub fn component(&self, grade: i64) -> LaurentPoly {
        self.components
            .get(&grade)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.algebra.context, self.algebra.base_kind))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// True when the element is a single scalar multiple of `x^k h^j` or
    /// `y^{-k} h^j`: one grade, one h-power.
    pub fn is_monomial(&self) -> bool {
        self.components.len() == 1
            && self
                .components
                .values()
                .next()
                .map(|p| p.coeffs().len() == 1)
                .unwrap_or(false)
    }

    fn set_component(&mut self, grade: i64, d: LaurentPoly) {
        if d.is_zero() {
            self.components.remove(&grade);
        } else {
            self.components.insert(grade, d);
        }
    }

    fn add_to_component(&mut self, grade: i64, d: &LaurentPoly) {
        let s = self.component(grade).add(d);
        self.set_component(grade, s);
    }

    pub fn add(&self, other: &GwaElement) -> Result<GwaElement> {
        self.check_same_algebra(other)?;
        let mut out = self.clone();
        for (k, d) in &other.components {
            out.add_to_component(*k, d);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GwaElement) -> Result<GwaElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GwaElement {
        GwaElement {
            algebra: Arc::clone(&self.algebra),
            components: self.components.iter().map(|(k, d)| (*k, d.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> GwaElement {
        let mut out = GwaElement::zero(&self.algebra);
        for (k, d) in &self.components {
            out.set_component(*k, d.scale(c));
        }
        out
    }

    pub fn scale_base(&self, d: &LaurentPoly) -> GwaElement {
        // right multiplication by a base-ring element
        let mut out = GwaElement::zero(&self.algebra);
        for (k, c) in &self.components {
            out.set_component(*k, c.mul(d));
        }
        out
    }

    fn check_same_algebra(&self, other: &GwaElement) -> Result<()> {
        if *self.algebra != *other.algebra {
            return Err(QgwaError::MismatchedAlgebra);
        }
        Ok(())
    }

    /// Exact product in normal form.
    ///
    /// Base-ring factors are commuted across the x/y powers via
    /// `d x^j = x^j sigma^{-j}(d)` and `d y^j = y^j sigma^{j}(d)`, and mixed
    /// powers contract through the closed forms for `x^m y^m` and `y^m x^m`.
    pub fn mul(&self, other: &GwaElement) -> Result<GwaElement> {
        self.check_same_algebra(other)?;
        let alg = &self.algebra;
        let mut out = GwaElement::zero(alg);
        for (&k1, d1) in &self.components {
            for (&k2, d2) in &other.components {
                // (w_{k1} d1)(w_{k2} d2) = w_{k1} w_{k2} sigma^{-k2}(d1) d2
                let moved = alg.sigma(d1, -k2);
                let tail = moved.mul(d2);
                let (grade, contraction) = contract_powers(alg, k1, k2);
                let d = match contraction {
                    Some(p) => p.mul(&tail),
                    None => tail,
                };
                out.add_to_component(grade, &d);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<GwaElement> {
        let mut acc = GwaElement::one(&self.algebra);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &GwaElement) -> Result<GwaElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Image under an automorphism, in normal form. Requires the automorphism
    /// to be structurally valid for this algebra.
    pub fn apply_automorphism(&self, phi: &Automorphism) -> Result<GwaElement> {
        let alg = &self.algebra;
        phi.check_structural(alg)?;
        let gamma = phi.gamma();
        let mu_s = phi.mu_scalar();
        let t = phi.mu_hpower();
        let q = alg.q();
        let i0 = phi.i0();
        let mut out = GwaElement::zero(alg);
        for (&k, d) in &self.components {
            // eta part: d(h) -> d(gamma h), times the accumulated unit factors
            let mut image = d.scale_h(gamma);
            let grade;
            if k > 0 {
                // phi(x)^k = x^k sigma^{-k}(prod_{i<k} sigma^i(v)), v = gamma^{i0} mu^{-1}
                let scalar = &gamma.pow(i0 * k) * &mu_s.pow(-k);
                let scalar = &scalar * &q.pow(t * k * (k + 1) / 2);
                image = image.shift(-k * t).scale(&scalar);
                grade = k;
            } else if k < 0 {
                // phi(y)^j = y^j prod_{i<j} sigma^i(mu), j = -k
                let j = -k;
                let scalar = &mu_s.pow(j) * &q.pow(t * j * (j - 1) / 2);
                image = image.shift(j * t).scale(&scalar);
                grade = k;
            } else {
                grade = 0;
            }
            if phi.omega() {
                // Omega: x <-> y, h -> -h
                image = image.scale_h(&-&alg.context.one());
                out.add_to_component(-grade, &image);
            } else {
                out.add_to_component(grade, &image);
            }
        }
        Ok(out)
    }

    /// Exact basis of the `phi`-fixed subspace of the truncated monomial basis
    /// `{x^k h^j, h^j, y^{-k} h^j}` with `|k| <= grade_bound` and
    /// `|j| <= h_degree_bound` (`j >= 0` over the polynomial base).
    ///
    /// Grades are processed blockwise: `phi` preserves each grade when diagonal
    /// and swaps `k` with `-k` when it contains the x/y swap.
    pub fn fixed_space(
        algebra: &Arc<QuantumGwa>,
        phi: &Automorphism,
        grade_bound: i64,
        h_degree_bound: i64,
    ) -> Result<Vec<GwaElement>> {
        if phi.order(algebra)?.is_none() {
            return Err(QgwaError::InfiniteOrder);
        }
        let h_range = |_k: i64| -> Vec<i64> {
            match algebra.base_kind() {
                BaseKind::Poly => (0..=h_degree_bound).collect(),
                BaseKind::Laurent => (-h_degree_bound..=h_degree_bound).collect(),
            }
        };
        let mut basis = Vec::new();
        let blocks: Vec<Vec<i64>> = if phi.omega() {
            let mut b: Vec<Vec<i64>> = vec![vec![0]];
            for k in 1..=grade_bound {
                b.push(vec![k, -k]);
            }
            b
        } else {
            (-grade_bound..=grade_bound).map(|k| vec![k]).collect()
        };
        for block in blocks {
            // columns: monomials in this grade block within the window
            let mut columns: Vec<(i64, i64)> = Vec::new();
            for &k in &block {
                for j in h_range(k) {
                    columns.push((k, j));
                }
            }
            // rows: every monomial appearing in a column or its image
            let mut images: Vec<GwaElement> = Vec::with_capacity(columns.len());
            let mut row_set: BTreeSet<(i64, i64)> = columns.iter().copied().collect();
            for &(k, j) in &columns {
                let m = GwaElement::basis_monomial(algebra, k, j);
                let img = m.apply_automorphism(phi)?;
                for (&g, d) in img.components() {
                    for &e in d.coeffs().keys() {
                        row_set.insert((g, e));
                    }
                }
                images.push(img);
            }
            let rows: Vec<(i64, i64)> = row_set.into_iter().collect();
            let row_index: BTreeMap<(i64, i64), usize> =
                rows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            // matrix of (phi - id) from columns into the row space
            let ctx = algebra.context();
            let mut mat = vec![vec![ctx.zero(); columns.len()]; rows.len()];
            for (ci, (&(k, j), img)) in columns.iter().zip(&images).enumerate() {
                for (&g, d) in img.components() {
                    for (&e, c) in d.coeffs() {
                        mat[row_index[&(g, e)]][ci] = c.clone();
                    }
                }
                let ri = row_index[&(k, j)];
                mat[ri][ci] = &mat[ri][ci] - &ctx.one();
            }
            let kernel = Matrix::from_rows(ctx, mat, columns.len()).kernel_basis();
            for v in kernel {
                let mut e = GwaElement::zero(algebra);
                for (ci, coeff) in v.iter().enumerate() {
                    if !coeff.is_zero() {
                        let (k, j) = columns[ci];
                        let mono = LaurentPoly::monomial(ctx, algebra.base_kind(), j, coeff.clone());
                        e.add_to_component(k, &mono);
                    }
                }
                basis.push(e);
            }
        }
        Ok(basis)
    }
}

/// Reduce `w_{k1} w_{k2}` to `w_{k1+k2} * P(h)` with `P` the contraction
/// polynomial from the closed power-product forms (`None` when no contraction
/// occurs).
fn contract_powers(alg: &QuantumGwa, k1: i64, k2: i64) -> (i64, Option<LaurentPoly>) {
    if k1 == 0 || k2 == 0 || (k1 > 0) == (k2 > 0) {
        return (k1 + k2, None);
    }
    let grade = k1 + k2;
    if k1 > 0 {
        // x^a y^b
        let a = k1;
        let b = -k2;
        let m = a.min(b) as u32;
        let e = alg.power_product_identity(m, PowerSide::XY);
        if a >= b {
            // x^{a-b} (x^b y^b): already in normal form
            (grade, Some(e))
        } else {
            // (x^a y^a) y^{b-a} = y^{b-a} sigma^{b-a}(x^a y^a)
            (grade, Some(alg.sigma(&e, b - a)))
        }
    } else {
        // y^b x^a
        let b = -k1;
        let a = k2;
        let m = a.min(b) as u32;
        let e = alg.power_product_identity(m, PowerSide::YX);
        if b >= a {
            (grade, Some(e))
        } else {
            // (y^b x^b) x^{a-b} = x^{a-b} sigma^{-(a-b)}(y^b x^b)
            (grade, Some(alg.sigma(&e, -(a - b))))
        }
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&k, d) in self.components.iter().rev() {
            let ds = d.display_with("h");
            let wrapped = if d.coeffs().len() > 1 {
                format!("({})", ds)
            } else {
                ds
            };
            let term = if k == 0 {
                wrapped
            } else {
                let gen = if k > 0 { "x" } else { "y" };
                let e = k.abs();
                let head = if e == 1 {
                    gen.to_string()
                } else {
                    format!("{}^{}", gen, e)
                };
                if d.is_one() {
                    head
                } else {
                    format!("{}*{}", head, wrapped)
                }
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    pub(crate) fn example_algebra() -> Arc<QuantumGwa> {
        // Laurent base, q = 1/2, a = (h^2-1)(h^2-4)
        let k = FieldContext::new(1);
        let a = FactoredPoly::new(
            k,
            BaseKind::Laurent,
            k.one(),
            0,
            vec![
                (k.from_int(1), 1),
                (k.from_int(-1), 1),
                (k.from_int(2), 1),
                (k.from_int(-2), 1),
            ],
        )
        .unwrap();
        QuantumGwa::new(BaseKind::Laurent, k.from_rational(rat(1, 2)), a).unwrap()
    }

    #[test]
    fn defining_relations() {
        let alg = example_algebra();
        let x = GwaElement::gen_x(&alg);
        let y = GwaElement::gen_y(&alg);
        let h = GwaElement::gen_h(&alg);

        // yx = a
        let yx = y.mul(&x).unwrap();
        assert_eq!(yx, GwaElement::from_base(&alg, alg.a_expanded().clone()));
        // xy = sigma(a)
        let xy = x.mul(&y).unwrap();
        assert_eq!(
            xy,
            GwaElement::from_base(&alg, alg.sigma(alg.a_expanded(), 1))
        );
        // x h = (q h) x and y h = (q^{-1} h) y
        let xh = x.mul(&h).unwrap();
        let qh_x = h.scale(alg.q()).mul(&x).unwrap();
        assert_eq!(xh, qh_x);
        let yh = y.mul(&h).unwrap();
        let qinv = alg.q().inverse().unwrap();
        let qih_y = h.scale(&qinv).mul(&y).unwrap();
        assert_eq!(yh, qih_y);
    }

    #[test]
    fn triple_power_contraction() {
        let alg = example_algebra();
        let x = GwaElement::gen_x(&alg);
        let y = GwaElement::gen_y(&alg);
        // y^3 x^3 = prod_{i=0}^{2} sigma^{-i}(a)
        let y3 = y.pow(3).unwrap();
        let x3 = x.pow(3).unwrap();
        let lit = y3.mul(&x3).unwrap();
        let closed = alg.power_product_identity(3, PowerSide::YX);
        assert_eq!(lit, GwaElement::from_base(&alg, closed));
    }

    #[test]
    fn xy_closed_form_on_monomial_a() {
        // a = h, q generic symbolic stand-in 3: x^2 y^2 = sigma(a) sigma^2(a) = q^3 h^2
        let k = FieldContext::new(1);
        let a = FactoredPoly::new(k, BaseKind::Poly, k.one(), 1, vec![]).unwrap();
        let alg = QuantumGwa::new(BaseKind::Poly, k.from_int(3), a).unwrap();
        let closed = alg.power_product_identity(2, PowerSide::XY);
        let mut expect = LaurentPoly::monomial(k, BaseKind::Poly, 2, k.from_int(27));
        assert_eq!(closed, expect.clone());
        let x = GwaElement::gen_x(&alg);
        let y = GwaElement::gen_y(&alg);
        let lit = x.pow(2).unwrap().mul(&y.pow(2).unwrap()).unwrap();
        expect = LaurentPoly::monomial(k, BaseKind::Poly, 2, k.from_int(27));
        assert_eq!(lit, GwaElement::from_base(&alg, expect));
    }

    #[test]
    fn grading_respected() {
        let alg = example_algebra();
        let x = GwaElement::gen_x(&alg);
        let y = GwaElement::gen_y(&alg);
        let u = x.pow(2).unwrap().add(&y.pow(1).unwrap()).unwrap();
        let v = x.pow(1).unwrap();
        let p = u.mul(&v).unwrap();
        let grades: Vec<i64> = p.components().keys().copied().collect();
        assert_eq!(grades, vec![0, 3]);
    }

    #[test]
    fn mismatched_algebra_rejected() {
        let alg1 = example_algebra();
        let k = FieldContext::new(1);
        let a = FactoredPoly::new(k, BaseKind::Poly, k.one(), 1, vec![]).unwrap();
        let alg2 = QuantumGwa::new(BaseKind::Poly, k.from_int(2), a).unwrap();
        let x1 = GwaElement::gen_x(&alg1);
        let x2 = GwaElement::gen_x(&alg2);
        assert_eq!(x1.mul(&x2), Err(QgwaError::MismatchedAlgebra));
    }

    #[test]
    fn display_normal_form() {
        let alg = example_algebra();
        let k = alg.context();
        let mut e = GwaElement::basis_monomial(&alg, 2, 0)
            .scale_base(&LaurentPoly::var(k, alg.base_kind()).sub(&LaurentPoly::one(k, alg.base_kind())));
        e = e
            .add(&GwaElement::basis_monomial(&alg, -1, 1))
            .unwrap();
        assert_eq!(e.to_string(), "x^2*(h - 1) + y*h");
    }
}
