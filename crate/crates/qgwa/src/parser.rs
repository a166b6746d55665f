//! Input document parser: a sectioned key-value format describing the algebra,
//! the automorphism, and analysis options, with small expression grammars for
//! field elements and factored defining polynomials.
//!
//! ```text
//! [algebra]
//! conductor = 3
//! base = laurent
//! q = 1/2
//! a = (h^2 - 1) * (h^2 - 4)
//!
//! [automorphism]
//! gamma = -1
//! mu = z
//! ```

use crate::error::{QgwaError, Result};
use crate::exactfield::{FieldContext, FieldElement};
use crate::polynomials::{BaseKind, FactoredPoly, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub grade_bound: i64,
    pub h_degree_bound: i64,
    pub k_bound: i64,
    pub verify: bool,
    pub probe: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            grade_bound: 12,
            h_degree_bound: 24,
            k_bound: 128,
            verify: false,
            probe: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub conductor: u64,
    pub base_kind: BaseKind,
    pub q: FieldElement,
    pub a: FactoredPoly,
    pub omega: bool,
    pub gamma: FieldElement,
    pub mu_scalar: FieldElement,
    pub mu_hpower: i64,
    pub i0: Option<i64>,
    pub options: AnalysisOptions,
}

struct RawEntry {
    section: String,
    key: String,
    value: String,
    line: usize,
    value_col: usize,
}

fn parse_error(line: usize, column: usize, expected: &str) -> QgwaError {
    QgwaError::ParseError {
        line,
        column,
        expected: expected.to_string(),
    }
}

fn split_document(text: &str) -> Result<Vec<RawEntry>> {
    let mut entries = Vec::new();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(parse_error(line_no, trimmed.len(), "closing ']'"));
            };
            section = name.trim().to_string();
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(parse_error(line_no, line.len(), "'=' or section header"));
        };
        let key = line[..eq].trim().to_string();
        if key.is_empty() {
            return Err(parse_error(line_no, 1, "key before '='"));
        }
        if section.is_empty() {
            return Err(QgwaError::SemanticError(format!(
                "line {line_no}: key '{key}' appears before any section header"
            )));
        }
        entries.push(RawEntry {
            section: section.clone(),
            key,
            value: line[eq + 1..].trim().to_string(),
            line: line_no,
            value_col: eq + 2,
        });
    }
    Ok(entries)
}

/// Character-level scanner for the value expression grammars.
struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    _text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str, line: usize, col0: usize) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col0,
            _text: text,
        }
    }

    fn col(&self) -> usize {
        self.col0 + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_error(self.line, self.col(), &format!("'{c}'")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(parse_error(self.line, self.col(), "integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = digits
            .parse()
            .map_err(|_| parse_error(self.line, self.col(), "integer in range"))?;
        Ok(if neg { -v } else { v })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Expression evaluator producing Laurent polynomials in `h` over `Q(zeta_N)`;
/// field-element expressions are the constant special case.
struct ExprParser<'a> {
    scan: Scanner<'a>,
    context: FieldContext,
    allow_h: bool,
}

impl<'a> ExprParser<'a> {
    fn new(entry: &'a RawEntry, context: FieldContext, allow_h: bool) -> Self {
        ExprParser {
            scan: Scanner::new(&entry.value, entry.line, entry.value_col),
            context,
            allow_h,
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.scan.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.scan.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.power()?;
        loop {
            if self.scan.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.scan.eat('/') {
                let rhs = self.power()?;
                let c = constant_of(&rhs, self.scan.line, self.scan.col())?;
                acc = acc.scale(&c.inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.scan.eat('^') {
            let e = self.scan.integer()?;
            if e >= 0 {
                let mut acc = LaurentPoly::one(self.context, BaseKind::Laurent);
                for _ in 0..e {
                    acc = acc.mul(&base);
                }
                Ok(acc)
            } else {
                // negative powers only for single-term bases
                let c = base.coeffs().iter().next();
                match c {
                    Some((&exp, coeff)) if base.coeffs().len() == 1 => Ok(LaurentPoly::monomial(
                        self.context,
                        BaseKind::Laurent,
                        exp * e,
                        coeff.pow(e),
                    )),
                    _ => Err(parse_error(
                        self.scan.line,
                        self.scan.col(),
                        "non-negative exponent",
                    )),
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.scan.peek() {
            Some('(') => {
                self.scan.bump();
                let inner = self.poly()?;
                self.scan.expect(')')?;
                Ok(inner)
            }
            Some('-') => {
                self.scan.bump();
                Ok(self.atom()?.neg())
            }
            Some('z') => {
                self.scan.bump();
                if self.context.conductor() == 1 {
                    return Err(QgwaError::SemanticError(format!(
                        "line {}: 'z' used with conductor 1 (no root of unity available)",
                        self.scan.line
                    )));
                }
                Ok(LaurentPoly::constant(
                    self.context,
                    BaseKind::Laurent,
                    self.context.zeta(),
                ))
            }
            Some('h') => {
                self.scan.bump();
                if !self.allow_h {
                    return Err(parse_error(
                        self.scan.line,
                        self.scan.col(),
                        "scalar expression (no 'h')",
                    ));
                }
                Ok(LaurentPoly::var(self.context, BaseKind::Laurent))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.scan.integer()?;
                Ok(LaurentPoly::constant(
                    self.context,
                    BaseKind::Laurent,
                    self.context.from_int(v),
                ))
            }
            _ => Err(parse_error(
                self.scan.line,
                self.scan.col(),
                "number, 'z', 'h', or '('",
            )),
        }
    }
}

fn expand_power(base: &LaurentPoly, e: i64, p: &mut ExprParser) -> Result<LaurentPoly> {
    if e >= 0 {
        let mut acc = LaurentPoly::one(base.context(), BaseKind::Laurent);
        for _ in 0..e {
            acc = acc.mul(base);
        }
        return Ok(acc);
    }
    match base.coeffs().iter().next() {
        Some((&exp, coeff)) if base.coeffs().len() == 1 => Ok(LaurentPoly::monomial(
            base.context(),
            BaseKind::Laurent,
            exp * e,
            coeff.pow(e),
        )),
        _ => Err(parse_error(
            p.scan.line,
            p.scan.col(),
            "non-negative exponent",
        )),
    }
}

fn constant_of(p: &LaurentPoly, line: usize, col: usize) -> Result<FieldElement> {
    if p.is_zero() {
        return Ok(p.context().zero());
    }
    if p.coeffs().len() == 1 {
        if let Some(c) = p.coeffs().get(&0) {
            return Ok(c.clone());
        }
    }
    Err(parse_error(line, col, "constant expression"))
}

fn parse_field_value(entry: &RawEntry, context: FieldContext) -> Result<FieldElement> {
    let mut p = ExprParser::new(entry, context, false);
    let v = p.poly()?;
    if !p.scan.at_end() {
        return Err(parse_error(p.scan.line, p.scan.col(), "end of expression"));
    }
    constant_of(&v, p.scan.line, p.scan.col())
}

/// Parse a defining polynomial kept in factored form: a `*`-separated product
/// of factors, each a scalar, a power of `h`, or a parenthesized binomial
/// `(h^k - c)` (optionally `^multiplicity`).
fn parse_factored_value(
    entry: &RawEntry,
    context: FieldContext,
    base_kind: BaseKind,
) -> Result<FactoredPoly> {
    let mut p = ExprParser::new(entry, context, true);
    let mut unit = context.one();
    let mut h_power: i64 = 0;
    let mut roots: Vec<(FieldElement, u32)> = Vec::new();
    let mut first = true;
    loop {
        let factor = p.atom()?;
        let exponent = if p.scan.eat('^') { p.scan.integer()? } else { 1 };
        if first && matches!(p.scan.peek(), Some('+') | Some('-')) {
            // a bare unparenthesized binomial spanning the whole value,
            // e.g. "h^2 + 1"
            let mut acc = expand_power(&factor, exponent, &mut p)?;
            loop {
                if p.scan.eat('+') {
                    acc = acc.add(&p.term()?);
                } else if p.scan.eat('-') {
                    acc = acc.sub(&p.term()?);
                } else {
                    break;
                }
            }
            if !p.scan.at_end() {
                return Err(parse_error(p.scan.line, p.scan.col(), "end of expression"));
            }
            factor_into(&acc, context, 1, &mut unit, &mut h_power, &mut roots, p.scan.line)?;
            break;
        }
        first = false;
        factor_into(
            &factor,
            context,
            exponent,
            &mut unit,
            &mut h_power,
            &mut roots,
            p.scan.line,
        )?;
        if p.scan.at_end() {
            break;
        }
        p.scan.expect('*')?;
    }
    FactoredPoly::new(context, base_kind, unit, h_power, roots)
}

/// Decompose one expanded factor into unit / h-power / root contributions.
fn factor_into(
    factor: &LaurentPoly,
    context: FieldContext,
    exponent: i64,
    unit: &mut FieldElement,
    h_power: &mut i64,
    roots: &mut Vec<(FieldElement, u32)>,
    line: usize,
) -> Result<()> {
    let terms: Vec<(i64, FieldElement)> = factor
        .coeffs()
        .iter()
        .map(|(&e, c)| (e, c.clone()))
        .collect();
    match terms.len() {
        0 => Err(QgwaError::ZeroPolynomial),
        1 => {
            let (e, c) = &terms[0];
            *unit = &*unit * &c.pow(exponent);
            *h_power += e * exponent;
            Ok(())
        }
        2 => {
            // u h^{e2} (h^d - c) with d = e1 - e2, c = -coeff(e2)/u
            if exponent < 1 {
                return Err(QgwaError::SemanticError(format!(
                    "line {line}: a binomial factor needs a positive multiplicity, got {exponent}"
                )));
            }
            let mult = u32::try_from(exponent).expect("positive multiplicity fits in u32");
            let (e2, w) = &terms[0];
            let (e1, u) = &terms[1];
            let d = e1 - e2;
            let c = (-w).div(u)?;
            *unit = &*unit * &u.pow(exponent);
            *h_power += e2 * exponent;
            for root in roots_of_h_power(context, d, &c, line)? {
                roots.push((root, mult));
            }
            Ok(())
        }
        _ => Err(QgwaError::SemanticError(format!(
            "line {line}: factor '{factor}' is not a scalar, power of h, or binomial"
        ))),
    }
}

/// All roots of `h^d = c` in `Q(zeta_N)`, requiring a rational `d`-th root of
/// a rational `c` and the presence of `zeta_d` for the full orbit.
fn roots_of_h_power(
    context: FieldContext,
    d: i64,
    c: &FieldElement,
    line: usize,
) -> Result<Vec<FieldElement>> {
    use num_traits::Signed;
    if d == 1 {
        return Ok(vec![c.clone()]);
    }
    if d < 1 {
        return Err(QgwaError::SemanticError(format!(
            "line {line}: binomial factor needs a positive h-exponent gap, got {d}"
        )));
    }
    let Some(r) = c.as_rational() else {
        return Err(QgwaError::SemanticError(format!(
            "line {line}: cannot take a {d}-th root of the non-rational constant {c}"
        )));
    };
    let (numer, denom) = (r.numer().clone(), r.denom().clone());
    let root_of = |v: &num_bigint::BigInt| -> Option<num_bigint::BigInt> {
        if v.is_negative() {
            if d % 2 == 0 {
                return None;
            }
            let m = (-v).nth_root(d as u32);
            return (num_traits::pow::pow(m.clone(), d as usize) == -v).then_some(-m);
        }
        let m = v.nth_root(d as u32);
        (num_traits::pow::pow(m.clone(), d as usize) == *v).then_some(m)
    };
    let (rn, rd) = match (root_of(&numer), root_of(&denom)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            // even d with c < 0: try the root of -c paired with an extra
            // zeta_{2d} twist, e.g. h^2 + 1 over Q(i)
            return match context.root_of_unity(2 * d as u64) {
                Some(z2d) if d % 2 == 0 => {
                    let mut shifted =
                        roots_of_h_power(context, d, &(-c), line)?;
                    for r in shifted.iter_mut() {
                        *r = &*r * &z2d;
                    }
                    Ok(shifted)
                }
                _ => Err(QgwaError::SemanticError(format!(
                    "line {line}: {c} has no rational {d}-th root (and no usable root of unity)"
                ))),
            };
        }
    };
    let base = context.from_rational(crate::exactfield::Rational::new(rn, rd));
    if base.is_zero() {
        return Err(QgwaError::SemanticError(format!(
            "line {line}: factor h^{d} - 0 should be written as a power of h"
        )));
    }
    if d == 2 {
        return Ok(vec![base.clone(), -&base]);
    }
    let Some(zeta_d) = context.root_of_unity(d as u64) else {
        return Err(QgwaError::SemanticError(format!(
            "line {line}: splitting h^{d} - {c} needs a {d}-th root of unity in the field"
        )));
    };
    let mut out = Vec::with_capacity(d as usize);
    let mut r = base;
    for _ in 0..d {
        out.push(r.clone());
        r = &r * &zeta_d;
    }
    Ok(out)
}

pub fn parse_request(text: &str) -> Result<AnalysisRequest> {
    let entries = split_document(text)?;
    for e in &entries {
        match e.section.as_str() {
            "algebra" | "automorphism" | "options" => {}
            other => {
                return Err(QgwaError::SemanticError(format!(
                    "line {}: unknown section '{other}'",
                    e.line
                )))
            }
        }
    }
    let find = |section: &str, key: &str| -> Option<&RawEntry> {
        entries
            .iter()
            .find(|e| e.section == section && e.key == key)
    };
    for e in &entries {
        let known: &[&str] = match e.section.as_str() {
            "algebra" => &["conductor", "base", "q", "a"],
            "automorphism" => &["gamma", "mu", "mu_hpower", "omega", "i0"],
            "options" => &["grade_bound", "h_bound", "k_bound", "verify", "probe"],
            _ => unreachable!(),
        };
        if !known.contains(&e.key.as_str()) {
            return Err(QgwaError::SemanticError(format!(
                "line {}: unknown key '{}' in section [{}]",
                e.line, e.key, e.section
            )));
        }
    }
    let conductor = match find("algebra", "conductor") {
        Some(e) => {
            let mut s = Scanner::new(&e.value, e.line, e.value_col);
            let v = s.integer()?;
            if v < 1 || !s.at_end() {
                return Err(parse_error(e.line, e.value_col, "positive integer"));
            }
            v as u64
        }
        None => 1,
    };
    let context = FieldContext::new(conductor);
    let base_kind = match find("algebra", "base") {
        Some(e) => match e.value.as_str() {
            "poly" => BaseKind::Poly,
            "laurent" => BaseKind::Laurent,
            _ => return Err(parse_error(e.line, e.value_col, "'poly' or 'laurent'")),
        },
        None => BaseKind::Poly,
    };
    let q_entry = find("algebra", "q").ok_or_else(|| {
        QgwaError::SemanticError("missing required key 'q' in [algebra]".into())
    })?;
    let q = parse_field_value(q_entry, context)?;
    let a_entry = find("algebra", "a").ok_or_else(|| {
        QgwaError::SemanticError("missing required key 'a' in [algebra]".into())
    })?;
    let a = parse_factored_value(a_entry, context, base_kind)?;
    let field_or_one = |section: &str, key: &str| -> Result<FieldElement> {
        match find(section, key) {
            Some(e) => parse_field_value(e, context),
            None => Ok(context.one()),
        }
    };
    let int_opt = |section: &str, key: &str| -> Result<Option<i64>> {
        match find(section, key) {
            Some(e) => {
                let mut s = Scanner::new(&e.value, e.line, e.value_col);
                let v = s.integer()?;
                if !s.at_end() {
                    return Err(parse_error(e.line, e.value_col, "integer"));
                }
                Ok(Some(v))
            }
            None => Ok(None),
        }
    };
    let bool_opt = |section: &str, key: &str| -> Result<Option<bool>> {
        match find(section, key) {
            Some(e) => match e.value.as_str() {
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                _ => Err(parse_error(e.line, e.value_col, "'true' or 'false'")),
            },
            None => Ok(None),
        }
    };
    let mut options = AnalysisOptions::default();
    if let Some(v) = int_opt("options", "grade_bound")? {
        options.grade_bound = v;
    }
    if let Some(v) = int_opt("options", "h_bound")? {
        options.h_degree_bound = v;
    }
    if let Some(v) = int_opt("options", "k_bound")? {
        options.k_bound = v;
    }
    if let Some(v) = bool_opt("options", "verify")? {
        options.verify = v;
    }
    if let Some(v) = bool_opt("options", "probe")? {
        options.probe = v;
    }
    Ok(AnalysisRequest {
        conductor,
        base_kind,
        q,
        a,
        omega: bool_opt("automorphism", "omega")?.unwrap_or(false),
        gamma: field_or_one("automorphism", "gamma")?,
        mu_scalar: field_or_one("automorphism", "mu")?,
        mu_hpower: int_opt("automorphism", "mu_hpower")?.unwrap_or(0),
        i0: int_opt("automorphism", "i0")?,
        options,
    })
}
