//! Exact arithmetic in the cyclotomic field `Q(zeta_N)` (conductor `N = 1` gives `Q`).
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^{phi(N)-1}` modulo the
//! `N`-th cyclotomic polynomial, with arbitrary-precision rational coordinates.
//! All arithmetic is exact; complex embeddings are floating hints carrying an error
//! radius and every answer derived from them is re-verified exactly by callers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QgwaError, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

// -- dense polynomial helpers over Q, used only for reduction mod Phi_N --

fn poly_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of `a` by `b` (b nonzero).
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let coef = &rem[dr] / lead;
        for i in 0..=db {
            let t = &coef * &b[i];
            rem[dr - db + i] -= t;
        }
        quot[dr - db] = coef;
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

/// `N`-th cyclotomic polynomial, computed by dividing `x^N - 1` by all proper
/// cyclotomic divisors. Cached per conductor.
fn cyclotomic_poly(n: u64) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![int(-1), int(1)]
    } else {
        // x^n - 1
        let mut num = vec![Rational::zero(); (n + 1) as usize];
        num[0] = int(-1);
        num[n as usize] = int(1);
        let mut acc = num;
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_poly(d);
                let (q, r) = poly_divmod(&acc, &phi_d);
                debug_assert!(r.is_empty());
                acc = q;
            }
        }
        acc
    };
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(result)
        .clone()
}

/// The coefficient field `Q(zeta_N)` of a single analysis session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldContext {
    conductor: u64,
}

impl FieldContext {
    pub fn new(conductor: u64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        FieldContext { conductor }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        euler_phi(self.conductor) as usize
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            conductor: self.conductor,
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = r;
        FieldElement {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(int(n))
    }

    /// The primitive root `zeta_N`. For `N = 1` this is `1`.
    pub fn zeta(&self) -> FieldElement {
        if self.conductor == 1 {
            return self.one();
        }
        let mut coords = vec![Rational::zero(); self.degree()];
        if self.degree() > 1 {
            coords[1] = Rational::one();
            FieldElement {
                conductor: self.conductor,
                coords,
            }
        } else {
            // N = 2: zeta = -1
            coords[0] = int(-1);
            FieldElement {
                conductor: self.conductor,
                coords,
            }
        }
    }

    /// Order of the full torsion subgroup of `Q(zeta_N)^x`, namely `lcm(2, N)`.
    pub fn torsion_exponent(&self) -> u64 {
        self.conductor.lcm(&2)
    }

    /// A generator of the torsion subgroup: `zeta_N` when `N` is even, `-zeta_N` otherwise.
    pub fn torsion_generator(&self) -> FieldElement {
        if self.conductor.is_multiple_of(2) {
            self.zeta()
        } else {
            -&self.zeta()
        }
    }

    /// A primitive `n`-th root of unity, when one exists in this field.
    pub fn root_of_unity(&self, n: u64) -> Option<FieldElement> {
        let l = self.torsion_exponent();
        if n == 0 || !l.is_multiple_of(n) {
            return None;
        }
        Some(self.torsion_generator().pow((l / n) as i64))
    }
}

/// An exact element of `Q(zeta_N)` in the power basis modulo `Phi_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    conductor: u64,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn context(&self) -> FieldContext {
        FieldContext::new(self.conductor)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Exact rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn from_poly(conductor: u64, mut poly: Vec<Rational>) -> FieldElement {
        let degree = euler_phi(conductor) as usize;
        poly_trim(&mut poly);
        if poly.len() > degree {
            let phi = cyclotomic_poly(conductor);
            let (_, r) = poly_divmod(&poly, &phi);
            poly = r;
        }
        poly.resize(degree, Rational::zero());
        FieldElement {
            conductor,
            coords: poly,
        }
    }

    /// Promote both operands to a common conductor. Only `1 -> N` promotion is
    /// supported: a session works in a single field.
    fn promote(&self, other: &FieldElement) -> (FieldElement, FieldElement) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        if self.conductor == 1 {
            let r = self.coords[0].clone();
            return (other.context().from_rational(r), other.clone());
        }
        if other.conductor == 1 {
            let r = other.coords[0].clone();
            return (self.clone(), self.context().from_rational(r));
        }
        panic!(
            "mismatched conductors {} and {}: a session uses a single field",
            self.conductor, other.conductor
        );
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(QgwaError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.context().from_rational(r.recip()));
        }
        // extended Euclid in Q[x] against Phi_N
        let phi = cyclotomic_poly(self.conductor);
        let mut a: Vec<Rational> = self.coords.clone();
        poly_trim(&mut a);
        let mut r0 = phi;
        let mut r1 = a;
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            s2.resize(s2.len().max(qs1.len()), Rational::zero());
            for (i, c) in qs1.iter().enumerate() {
                s2[i] -= c;
            }
            poly_trim(&mut s2);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant gcd (Phi_N is irreducible)
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let inv: Vec<Rational> = s0.iter().map(|c| c / &g).collect();
        Ok(FieldElement::from_poly(self.conductor, inv))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power, with inversion for negative exponents (panics on `0^{-k}`).
    pub fn pow(&self, e: i64) -> FieldElement {
        if e == 0 {
            return self.context().one();
        }
        let base = if e < 0 {
            self.inverse().expect("cannot invert zero")
        } else {
            self.clone()
        };
        let mut exp = e.unsigned_abs();
        let mut acc = base.context().one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Minimal `e >= 1` with `self^e = 1`, when `self` is a root of unity.
    ///
    /// Torsion in `Q(zeta_N)^x` has order dividing `lcm(2, N)`; exactly those
    /// divisors are tested.
    pub fn torsion_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(QgwaError::ZeroInput);
        }
        let l = self.context().torsion_exponent();
        for e in divisors(l) {
            if self.pow(e as i64).is_one() {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// Floating image under the embedding `zeta -> exp(2 pi i galois_index / N)`,
    /// together with an error radius bounding the roundoff.
    pub fn embed_complex(&self, galois_index: i64) -> Result<(f64, f64, f64)> {
        let n = self.conductor as i64;
        if galois_index.rem_euclid(n).gcd(&n) != 1 {
            return Err(QgwaError::InvalidGaloisIndex(galois_index, self.conductor));
        }
        let mut re = 0.0;
        let mut im = 0.0;
        let mut mag = 0.0;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::INFINITY);
            let angle = 2.0 * std::f64::consts::PI * ((i as i64 * galois_index).rem_euclid(n) as f64)
                / (n as f64);
            re += cf * angle.cos();
            im += cf * angle.sin();
            mag += cf.abs();
        }
        // crude but safe: conversion, trig, and accumulation each contribute a few ulps
        let err = mag * f64::EPSILON * 16.0 * (self.coords.len() as f64 + 1.0);
        Ok((re, im, err))
    }
}

/// The four field operations behind a single checked entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(lhs: &FieldElement, rhs: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => Ok(lhs + rhs),
        FieldOp::Sub => Ok(lhs - rhs),
        FieldOp::Mul => Ok(lhs * rhs),
        FieldOp::Div => lhs.div(rhs),
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let (mut a, b) = self.promote(rhs);
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x += y;
        }
        a
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let (mut a, b) = self.promote(rhs);
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x -= y;
        }
        a
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = self.promote(rhs);
        let prod = poly_mul(&a.coords, &b.coords);
        FieldElement::from_poly(a.conductor, prod)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff = fmt_rational(&abs);
            if i == 0 {
                write!(f, "{}", coeff)?;
            } else {
                let var = if i == 1 { "z".to_string() } else { format!("z^{}", i) };
                if abs.is_one() {
                    write!(f, "{}", var)?;
                } else {
                    write!(f, "{}*{}", coeff, var)?;
                }
            }
        }
        Ok(())
    }
}
