//! Univariate and Laurent polynomials over the coefficient field, in expanded
//! (sparse exponent map) and factored (unit, h-power, root multiset) form.
//!
//! Defining polynomials enter the engine in factored form only; expansion is
//! always computed, factorization never is.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{QgwaError, Result};
use crate::exactfield::{FieldContext, FieldElement};

/// The base ring: `k[h]` or `k[h^{+-1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Poly,
    Laurent,
}

/// Sparse Laurent polynomial: finite map from exponent to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    context: FieldContext,
    base_kind: BaseKind,
    coeffs: BTreeMap<i64, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(context: FieldContext, base_kind: BaseKind) -> Self {
        LaurentPoly {
            context,
            base_kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(context: FieldContext, base_kind: BaseKind, c: FieldElement) -> Self {
        let mut p = Self::zero(context, base_kind);
        p.set(0, c);
        p
    }

    pub fn monomial(context: FieldContext, base_kind: BaseKind, exp: i64, c: FieldElement) -> Self {
        assert!(
            base_kind == BaseKind::Laurent || exp >= 0,
            "negative exponent over the polynomial base"
        );
        let mut p = Self::zero(context, base_kind);
        p.set(exp, c);
        p
    }

    pub fn one(context: FieldContext, base_kind: BaseKind) -> Self {
        Self::constant(context, base_kind, context.one())
    }

    pub fn var(context: FieldContext, base_kind: BaseKind) -> Self {
        Self::monomial(context, base_kind, 1, context.one())
    }

    pub fn context(&self) -> FieldContext {
        self.context
    }

    pub fn base_kind(&self) -> BaseKind {
        self.base_kind
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, FieldElement> {
        &self.coeffs
    }

    fn set(&mut self, exp: i64, c: FieldElement) {
        if c.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn coeff(&self, exp: i64) -> FieldElement {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| self.context.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.values().next_back()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let s = &out.coeff(*e) + c;
            out.set(*e, s);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            context: self.context,
            base_kind: self.base_kind,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero(self.context, self.base_kind);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let s = &out.coeff(e1 + e2) + &(c1 * c2);
                out.set(e1 + e2, s);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> LaurentPoly {
        let mut out = Self::zero(self.context, self.base_kind);
        for (e, v) in &self.coeffs {
            out.set(*e, v * c);
        }
        out
    }

    /// Substitute `h -> t h`: the coefficient of `h^j` is multiplied by `t^j`.
    pub fn scale_h(&self, t: &FieldElement) -> LaurentPoly {
        let mut out = Self::zero(self.context, self.base_kind);
        for (e, c) in &self.coeffs {
            out.set(*e, c * &t.pow(*e));
        }
        out
    }

    /// Substitute `h -> lambda h^{-1}`: `c h^j -> c lambda^j h^{-j}`.
    pub fn invert_h(&self, lambda: &FieldElement) -> LaurentPoly {
        let mut out = Self::zero(self.context, BaseKind::Laurent);
        for (e, c) in &self.coeffs {
            out.set(-e, c * &lambda.pow(*e));
        }
        out
    }

    /// Multiply by `h^shift`.
    pub fn shift(&self, shift: i64) -> LaurentPoly {
        let mut out = Self::zero(self.context, self.base_kind);
        for (e, c) in &self.coeffs {
            out.set(e + shift, c.clone());
        }
        out
    }

    /// Apply `sigma^power`, i.e. substitute `h -> q^power h`.
    pub fn sigma_apply(&self, q: &FieldElement, power: i64) -> Result<LaurentPoly> {
        if q.is_zero() || q.is_one() {
            return Err(QgwaError::InvalidParameter(
                "sigma requires q outside {0, 1}".into(),
            ));
        }
        Ok(self.scale_h(&q.pow(power)))
    }

    /// True iff every exponent with a nonzero coefficient is divisible by `n`.
    pub fn is_in_h_power_subring(&self, n: i64) -> bool {
        assert!(n > 0);
        self.coeffs.keys().all(|e| e % n == 0)
    }

    /// Rewrite in `H = h^n` (exponents divided by `n`).
    pub fn compress_exponents(&self, n: i64) -> Result<LaurentPoly> {
        if !self.is_in_h_power_subring(n) {
            return Err(QgwaError::NotInSubring(n));
        }
        let mut out = Self::zero(self.context, self.base_kind);
        for (e, c) in &self.coeffs {
            out.set(e / n, c.clone());
        }
        Ok(out)
    }

    /// Substitute `H -> h^n` (exponents multiplied by `n`).
    pub fn dilate_exponents(&self, n: i64) -> LaurentPoly {
        let mut out = Self::zero(self.context, self.base_kind);
        for (e, c) in &self.coeffs {
            out.set(e * n, c.clone());
        }
        out
    }

    /// Evaluate at a field element (finite exponent support; negative exponents
    /// require a nonzero point).
    pub fn eval(&self, point: &FieldElement) -> FieldElement {
        let mut acc = self.context.zero();
        for (e, c) in &self.coeffs {
            acc = &acc + &(c * &point.pow(*e));
        }
        acc
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.coeffs.iter().rev() {
            let cs = c.to_string();
            let needs_parens = cs.contains(' ');
            let coeff = if needs_parens { format!("({})", cs) } else { cs };
            let term = match *e {
                0 => coeff,
                1 if c.is_one() => var.to_string(),
                1 => format!("{}*{}", coeff, var),
                _ if c.is_one() => format!("{}^{}", var, e),
                _ => format!("{}*{}^{}", coeff, var, e),
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("h"))
    }
}

/// Factored polynomial: `unit * h^{h_power} * prod (h - c_i)^{m_i}` with all
/// `c_i` nonzero. Expansion is exact; roots form a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    context: FieldContext,
    base_kind: BaseKind,
    unit: FieldElement,
    h_power: i64,
    roots: Vec<(FieldElement, u32)>,
}

fn coord_key(x: &FieldElement) -> Vec<(num_bigint::BigInt, num_bigint::BigInt)> {
    x.coords()
        .iter()
        .map(|r| (r.numer().clone(), r.denom().clone()))
        .collect()
}

impl FactoredPoly {
    pub fn new(
        context: FieldContext,
        base_kind: BaseKind,
        unit: FieldElement,
        h_power: i64,
        roots: Vec<(FieldElement, u32)>,
    ) -> Result<Self> {
        if unit.is_zero() {
            return Err(QgwaError::ZeroPolynomial);
        }
        if base_kind == BaseKind::Poly && h_power < 0 {
            return Err(QgwaError::InvalidParameter(
                "negative h-power over the polynomial base".into(),
            ));
        }
        let mut f = FactoredPoly {
            context,
            base_kind,
            unit,
            h_power,
            roots: Vec::new(),
        };
        for (r, m) in roots {
            if m == 0 {
                continue;
            }
            if r.is_zero() {
                return Err(QgwaError::InvalidParameter(
                    "root 0 must be carried by the h-power, not the root list".into(),
                ));
            }
            f.push_root(r, m);
        }
        f.sort_roots();
        Ok(f)
    }

    fn push_root(&mut self, r: FieldElement, m: u32) {
        for (r0, m0) in self.roots.iter_mut() {
            if *r0 == r {
                *m0 += m;
                return;
            }
        }
        self.roots.push((r, m));
    }

    fn sort_roots(&mut self) {
        self.roots.sort_by_key(|(r, _)| coord_key(r));
    }

    pub fn context(&self) -> FieldContext {
        self.context
    }

    pub fn base_kind(&self) -> BaseKind {
        self.base_kind
    }

    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn h_power(&self) -> i64 {
        self.h_power
    }

    pub fn roots(&self) -> &[(FieldElement, u32)] {
        &self.roots
    }

    /// Number of roots counted with multiplicity, including the h-power.
    pub fn total_degree(&self) -> i64 {
        self.h_power + self.roots.iter().map(|(_, m)| *m as i64).sum::<i64>()
    }

    /// Exact product `unit * h^{h_power} * prod (h - c_i)^{m_i}`.
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(self.context, self.base_kind, self.h_power, self.unit.clone());
        for (r, m) in &self.roots {
            let factor = LaurentPoly::var(self.context, self.base_kind)
                .sub(&LaurentPoly::constant(self.context, self.base_kind, r.clone()));
            for _ in 0..*m {
                acc = acc.mul(&factor);
            }
        }
        acc
    }

    /// Monic-normalize; for the Laurent base also clear the h-power
    /// (`D(sigma, a)` and `D(sigma, h^{-k} a)` are isomorphic there).
    /// Returns the normalized polynomial and what was divided out.
    pub fn normalize(&self) -> Result<(FactoredPoly, Normalization)> {
        if self.unit.is_zero() {
            return Err(QgwaError::ZeroPolynomial);
        }
        let mut out = self.clone();
        let applied_unit = out.unit.clone();
        out.unit = self.context.one();
        let mut applied_shift = 0;
        if self.base_kind == BaseKind::Laurent {
            applied_shift = out.h_power;
            out.h_power = 0;
        }
        Ok((
            out,
            Normalization {
                unit: applied_unit,
                h_shift: applied_shift,
            },
        ))
    }

    /// Substitute `h -> t h` in factored form: roots scale by `t^{-1}`, the unit
    /// picks up `t^{deg}`.
    pub fn scale_h(&self, t: &FieldElement) -> FactoredPoly {
        let mut out = self.clone();
        out.unit = &self.unit * &t.pow(self.total_degree());
        let tinv = t.inverse().expect("scale factor must be nonzero");
        out.roots = self
            .roots
            .iter()
            .map(|(r, m)| (r * &tinv, *m))
            .collect();
        out.sort_roots();
        out
    }

    /// Group the nonzero roots into complete `zeta_n`-orbits and descend to the
    /// polynomial `b` in `H = h^n`: each orbit `{zeta_n^j c}` contributes the
    /// root `c^n` with the orbit's shared multiplicity.
    pub fn descend_to_b(&self, n: i64) -> Result<FactoredPoly> {
        assert!(n > 0);
        if n == 1 {
            return Ok(self.clone());
        }
        if !self.expand().is_in_h_power_subring(n) || self.h_power % n != 0 {
            return Err(QgwaError::NotInSubring(n));
        }
        let zeta = match self.context.root_of_unity(n as u64) {
            Some(z) => z,
            None => {
                if self.roots.is_empty() {
                    // pure h-power: nothing to group
                    return FactoredPoly::new(
                        self.context,
                        self.base_kind,
                        self.unit.clone(),
                        self.h_power / n,
                        Vec::new(),
                    );
                }
                return Err(QgwaError::IncompleteOrbit(n));
            }
        };
        let mut remaining: Vec<(FieldElement, u32)> = self.roots.clone();
        let mut b_roots: Vec<(FieldElement, u32)> = Vec::new();
        while let Some((c, _)) = remaining.first().cloned() {
            // orbit of c under multiplication by zeta_n
            let mut orbit_mult = u32::MAX;
            let mut member = c.clone();
            let mut indices = Vec::new();
            for _ in 0..n {
                match remaining.iter().position(|(r, _)| *r == member) {
                    Some(i) => {
                        orbit_mult = orbit_mult.min(remaining[i].1);
                        indices.push(i);
                        member = &member * &zeta;
                    }
                    None => return Err(QgwaError::IncompleteOrbit(n)),
                }
            }
            for &i in &indices {
                remaining[i].1 -= orbit_mult;
            }
            remaining.retain(|(_, m)| *m > 0);
            b_roots.push((c.pow(n), orbit_mult));
        }
        FactoredPoly::new(
            self.context,
            self.base_kind,
            self.unit.clone(),
            self.h_power / n,
            b_roots,
        )
    }

    pub fn display_with(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() || (self.roots.is_empty() && self.h_power == 0) {
            let us = self.unit.to_string();
            if us.contains(' ') {
                parts.push(format!("({})", us));
            } else {
                parts.push(us);
            }
        }
        if self.h_power != 0 {
            if self.h_power == 1 {
                parts.push(var.to_string());
            } else {
                parts.push(format!("{}^{}", var, self.h_power));
            }
        }
        for (r, m) in &self.roots {
            let rs = r.to_string();
            let factor = if let Some(stripped) = rs.strip_prefix('-') {
                format!("({}+{})", var, stripped)
            } else {
                format!("({}-{})", var, rs)
            };
            if *m == 1 {
                parts.push(factor);
            } else {
                parts.push(format!("{}^{}", factor, m));
            }
        }
        parts.join("*")
    }
}

/// Record of what `normalize` divided out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub unit: FieldElement,
    pub h_shift: i64,
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("h"))
    }
}
