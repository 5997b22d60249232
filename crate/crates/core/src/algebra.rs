//! Exact arithmetic in `Q[x, 1/x, y]`, the substitution
//! `y <- phi(x) + xi * x^r`, and semidegree evaluation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::puiseux::{fmt_coeff_term, int, to_i64, Exponent, GenericDps};

/// Monomial `x^x * y^y`. Ordered by `y` first so that iteration runs along
/// the `y`-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Mono {
    y: u32,
    x: i64,
}

/// Element of `Q[x, 1/x, y]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `c * x^x_exp * y^y_exp`.
    pub fn monomial(c: BigRational, x_exp: i64, y_exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono { y: y_exp, x: x_exp }, c);
        p
    }

    /// Builds a polynomial from `(x_exp, y_exp, coeff)` triples, summing duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, u32, BigRational)>,
    {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            p.add_term(Mono { y: b, x: a }, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(x_exp, y_exp, coeff)`, by decreasing `y`-degree and then
    /// decreasing `x`-exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &BigRational)> {
        self.terms.iter().rev().map(|(m, c)| (m.x, m.y, c))
    }

    pub fn coefficient(&self, x_exp: i64, y_exp: u32) -> Option<&BigRational> {
        self.terms.get(&Mono { y: y_exp, x: x_exp })
    }

    /// True iff no negative power of `x` occurs.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.x >= 0)
    }

    pub fn min_x_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.x).min()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.y)
    }

    /// Monic in `y`: the top `y`-degree part is exactly `y^d`.
    pub fn is_monic_in_y(&self) -> bool {
        match self.y_degree() {
            None => false,
            Some(d) => {
                let top: Vec<_> = self.terms.iter().filter(|(m, _)| m.y == d).collect();
                top.len() == 1 && top[0].0.x == 0 && top[0].1.is_one()
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift_x(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Mono { y: m.y, x: m.x + shift }, v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn checked_pow(&self, exp: i64) -> Result<Self> {
        let e = u32::try_from(exp)
            .map_err(|_| Error::InvalidInput(format!("power {exp} must be a nonnegative u32")))?;
        Ok(self.pow(e))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(
                    Mono {
                        y: m1.y + m2.y,
                        x: m1.x + m2.x,
                    },
                    c1 * c2,
                );
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $method:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

fn fmt_power(var: &str, e: i64) -> String {
    match e {
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (a, b, c)) in self.terms().enumerate() {
            let mut factors = Vec::new();
            if a != 0 {
                factors.push(fmt_power("x", a));
            }
            if b != 0 {
                factors.push(fmt_power("y", i64::from(b)));
            }
            fmt_coeff_term(f, i == 0, c, &factors.join("*"))?;
        }
        Ok(())
    }
}

/// Dense univariate polynomial in the indeterminate `xi`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XiPoly {
    coeffs: Vec<BigRational>,
}

impl XiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `xi`.
    pub fn xi() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// Coefficients in increasing powers of `xi`.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XiPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value if this is a nonzero constant.
    pub fn as_constant(&self) -> Option<&BigRational> {
        match self.coeffs.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|v| v * c).collect())
    }

    fn add_assign_ref(&mut self, rhs: &XiPoly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn mul_ref(&self, rhs: &XiPoly) -> XiPoly {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        XiPoly::from_coeffs(out)
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => String::new(),
                1 => "xi".to_string(),
                i => format!("xi^{i}"),
            };
            fmt_coeff_term(f, first, c, &body)?;
            first = false;
        }
        Ok(())
    }
}

/// Finite sum `sum_e c_e(xi) x^e` with rational exponents and `c_e` in `Q[xi]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XiSeries {
    terms: BTreeMap<Exponent, XiPoly>,
}

impl XiSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(XiPoly::constant(BigRational::one()), Exponent::integer(0))
    }

    pub fn monomial(coeff: XiPoly, exp: Exponent) -> Self {
        let mut s = Self::zero();
        s.add_term(exp, &coeff);
        s
    }

    fn add_term(&mut self, exp: Exponent, coeff: &XiPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing order of exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &XiPoly)> {
        self.terms.iter().rev()
    }

    /// `(deg_x, leading xi-coefficient)`, or `None` for zero.
    pub fn leading(&self) -> Option<(&Exponent, &XiPoly)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Option<&XiPoly> {
        self.terms.get(exp)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, p) in &self.terms {
            out.add_term(e.clone(), &p.scale(c));
        }
        out
    }

    /// Multiplies by `x^shift`.
    pub fn shift_x(&self, shift: &BigRational) -> Self {
        XiSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, p)| (Exponent::from(e.value() + shift), p.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }
}

impl Add for &XiSeries {
    type Output = XiSeries;

    fn add(self, rhs: &XiSeries) -> XiSeries {
        let mut out = self.clone();
        for (e, p) in &rhs.terms {
            out.add_term(e.clone(), p);
        }
        out
    }
}

impl Sub for &XiSeries {
    type Output = XiSeries;

    fn sub(self, rhs: &XiSeries) -> XiSeries {
        let minus_one = -BigRational::one();
        let mut out = self.clone();
        for (e, p) in &rhs.terms {
            out.add_term(e.clone(), &p.scale(&minus_one));
        }
        out
    }
}

impl Mul for &XiSeries {
    type Output = XiSeries;

    fn mul(self, rhs: &XiSeries) -> XiSeries {
        let mut out = XiSeries::zero();
        for (e1, p1) in &self.terms {
            for (e2, p2) in &rhs.terms {
                out.add_term(Exponent::from(e1.value() + e2.value()), &p1.mul_ref(p2));
            }
        }
        out
    }
}

forward_owned!(XiSeries, Add add, Sub sub, Mul mul);

impl fmt::Display for XiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, p)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})*x^({e})")?;
        }
        Ok(())
    }
}

/// Evaluates elements of `Q[x, 1/x, y]` at `y = phi(x) + xi * x^r`, caching
/// the powers of the substituted series.
#[derive(Clone, Debug)]
pub struct Substitution<'a> {
    series: &'a GenericDps,
    powers: Vec<XiSeries>,
}

impl<'a> Substitution<'a> {
    pub fn new(series: &'a GenericDps) -> Self {
        let mut y = XiSeries::zero();
        for (e, c) in series.phi().terms() {
            y.add_term(e.clone(), &XiPoly::constant(c.clone()));
        }
        y.add_term(Exponent::from(series.r().clone()), &XiPoly::xi());
        Substitution {
            series,
            powers: vec![XiSeries::one(), y],
        }
    }

    pub fn series(&self) -> &GenericDps {
        self.series
    }

    fn y_power(&mut self, b: u32) -> &XiSeries {
        let b = b as usize;
        while self.powers.len() <= b {
            let next = &self.powers[self.powers.len() - 1] * &self.powers[1];
            self.powers.push(next);
        }
        &self.powers[b]
    }

    /// `f(x, phi(x) + xi x^r)` expanded exactly.
    pub fn eval(&mut self, f: &LaurentPoly) -> Result<XiSeries> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = XiSeries::zero();
        for (a, b, c) in f.terms() {
            let shifted = self.y_power(b).shift_x(&int(a)).scale(c);
            out = &out + &shifted;
        }
        Ok(out)
    }

    /// `delta(x) * deg_x f(x, phi(x) + xi x^r)`.
    pub fn semidegree(&mut self, f: &LaurentPoly) -> Result<i64> {
        let delta_x = self.series.delta_x();
        let s = self.eval(f)?;
        let deg = s.degree().expect("substitution of a nonzero element is nonzero");
        scaled_degree(deg, delta_x)
    }
}

/// `delta_x * deg`, which must be an integer.
pub(crate) fn scaled_degree(deg: &Exponent, delta_x: i64) -> Result<i64> {
    let v = deg.value() * int(delta_x);
    if !v.is_integer() {
        return Err(Error::Internal(format!(
            "semidegree {deg} * {delta_x} is not an integer"
        )));
    }
    to_i64(v.numer())
}

/// Exact expansion of `f(x, phi(x) + xi x^r)`.
pub fn substitute(f: &LaurentPoly, g: &GenericDps) -> Result<XiSeries> {
    Substitution::new(g).eval(f)
}

/// The semidegree `delta(f) = delta(x) * deg_x f(x, phi(x) + xi x^r)`.
pub fn semidegree(f: &LaurentPoly, g: &GenericDps) -> Result<i64> {
    Substitution::new(g).semidegree(f)
}

/// `x^a` for a signed `a`, as an element of `Q[x, 1/x, y]`.
pub fn x_power(a: i64) -> LaurentPoly {
    LaurentPoly::monomial(BigRational::one(), a, 0)
}
