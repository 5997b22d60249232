//! Descending Puiseux polynomials and generic descending Puiseux series.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("integer {n} does not fit in 64 bits")))
}

/// Exponent of `x` in a descending Puiseux polynomial. Always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(BigRational);

impl Exponent {
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Exponent(rat(numer, denom))
    }

    pub fn integer(n: i64) -> Self {
        Exponent(int(n))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<BigRational> for Exponent {
    fn from(value: BigRational) -> Self {
        Exponent(value)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite descending Puiseux polynomial `sum a_e x^e` with rational
/// exponents and rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DPuiseuxPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl DPuiseuxPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: BigRational, exp: Exponent) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; duplicate
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
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
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Option<&BigRational> {
        self.terms.get(exp)
    }

    /// Largest exponent, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    /// Smallest exponent, or `None` for the zero polynomial.
    pub fn order(&self) -> Option<&Exponent> {
        self.terms.keys().next()
    }

    /// `[phi]_{>r}`: the terms whose exponent is strictly greater than `r`.
    pub fn truncate_above(&self, r: &BigRational) -> Self {
        DPuiseuxPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.value() > r)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `phi ≡_r psi`, i.e. the two agree on all terms of degree `> r`.
    pub fn equiv_r(&self, other: &DPuiseuxPoly, r: &BigRational) -> bool {
        self.truncate_above(r) == other.truncate_above(r)
    }

    /// Least common multiple of the exponent denominators.
    pub fn polydromy_order(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "polydromy order of the zero series is undefined".into(),
            ));
        }
        let l = self
            .terms
            .keys()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        to_i64(&l)
    }

    /// The star action `c ⋆_r phi`: the coefficient of `x^e` is multiplied by
    /// `c^(e*r)`. `r` must be a multiple of the polydromy order.
    pub fn star_scale(&self, c: &BigRational, r: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if r <= 0 {
            return Err(Error::InvalidInput(format!("star index {r} must be positive")));
        }
        let p = self.polydromy_order()?;
        if r % p != 0 {
            return Err(Error::InvalidInput(format!(
                "star index {r} is not a multiple of the polydromy order {p}"
            )));
        }
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            let power = e.value() * int(r);
            debug_assert!(power.is_integer());
            let power = to_i64(power.numer())?;
            if c.is_zero() && power < 0 {
                return Err(Error::InvalidInput(
                    "zero scalar raised to a negative power".into(),
                ));
            }
            let factor = pow_signed(c, power);
            out.add_term(e.clone(), a * factor);
        }
        Ok(out)
    }
}

pub(crate) fn pow_signed(c: &BigRational, power: i64) -> BigRational {
    let base = if power < 0 { c.recip() } else { c.clone() };
    num_traits::pow(base, power.unsigned_abs() as usize)
}

impl std::ops::Add for &DPuiseuxPoly {
    type Output = DPuiseuxPoly;

    fn add(self, rhs: &DPuiseuxPoly) -> DPuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &DPuiseuxPoly {
    type Output = DPuiseuxPoly;

    fn sub(self, rhs: &DPuiseuxPoly) -> DPuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

pub(crate) fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigRational,
    body: &str,
) -> fmt::Result {
    let negative = coeff.is_negative();
    let abs = coeff.abs();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if body.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{abs}*{body}")
    }
}

impl fmt::Display for DPuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let body = if e.value().is_zero() {
                String::new()
            } else if e.value().is_one() {
                "x".to_string()
            } else if e.is_integer() && e.value().is_positive() {
                format!("x^{}", e.value())
            } else {
                format!("x^({})", e.value())
            };
            fmt_coeff_term(f, i == 0, c, &body)?;
        }
        Ok(())
    }
}

/// Formal Puiseux pairs `(q_1,p_1), ..., (q_{l+1},p_{l+1})`; the last pair is
/// the generic one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalPuiseuxPairs {
    pairs: Vec<(i64, i64)>,
}

impl FormalPuiseuxPairs {
    /// Validates `gcd(q_k,p_k) = 1`, `p_k >= 2` for `k <= l`, `p_{l+1} >= 1`
    /// and strictly decreasing characteristic exponents.
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("at least one pair is required".into()));
        }
        let last = pairs.len() - 1;
        for (k, &(q, p)) in pairs.iter().enumerate() {
            if p < 1 {
                return Err(Error::InvalidInput(format!(
                    "pair {}: p = {p} must be positive",
                    k + 1
                )));
            }
            if k < last && p < 2 {
                return Err(Error::InvalidInput(format!(
                    "pair {}: non-generic pairs need p >= 2",
                    k + 1
                )));
            }
            if q.gcd(&p) != 1 {
                return Err(Error::InvalidInput(format!(
                    "pair {}: gcd({q}, {p}) != 1",
                    k + 1
                )));
            }
        }
        let out = FormalPuiseuxPairs { pairs };
        let exps = out.characteristic_exponents();
        if exps.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput(
                "characteristic exponents must be strictly decreasing".into(),
            ));
        }
        Ok(out)
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    /// Number of non-generic pairs.
    pub fn l(&self) -> usize {
        self.pairs.len() - 1
    }

    /// `q_k`, 1-based.
    pub fn q(&self, k: usize) -> i64 {
        self.pairs[k - 1].0
    }

    /// `p_k`, 1-based.
    pub fn p(&self, k: usize) -> i64 {
        self.pairs[k - 1].1
    }

    /// `delta(x) = p_1 ... p_{l+1}`.
    pub fn delta_x(&self) -> i64 {
        self.pairs.iter().map(|&(_, p)| p).product()
    }

    /// `q_k / (p_1 ... p_k)` for `k = 1..=l+1`.
    pub fn characteristic_exponents(&self) -> Vec<BigRational> {
        let mut denom = 1i64;
        self.pairs
            .iter()
            .map(|&(q, p)| {
                denom *= p;
                rat(q, denom)
            })
            .collect()
    }

    /// `q_1 < p_1` and either `l = 0` or `q_1 > 1`.
    pub fn is_normal_form(&self) -> bool {
        let (q1, p1) = self.pairs[0];
        q1 < p1 && (self.l() == 0 || q1 > 1)
    }
}

impl fmt::Display for FormalPuiseuxPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, p)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({q},{p})")?;
        }
        Ok(())
    }
}

/// Generic descending Puiseux series `phi(x) + xi * x^r` with every exponent of
/// `phi` strictly greater than `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericDps {
    phi: DPuiseuxPoly,
    r: BigRational,
    pairs: FormalPuiseuxPairs,
}

impl GenericDps {
    pub fn new(phi: DPuiseuxPoly, r: BigRational) -> Result<Self> {
        if let Some(ord) = phi.order() {
            if ord.value() <= &r {
                return Err(Error::InvalidInput(format!(
                    "term x^({ord}) of phi does not lie above r = {r}"
                )));
            }
        }
        let pairs = scan_formal_pairs(&phi, &r)?;
        Ok(GenericDps { phi, r, pairs })
    }

    /// `[x * psi(1/x)]_{>1-r} + xi * x^(1-r)` for a Puiseux polynomial `psi`
    /// in a local coordinate `u` (all exponents positive).
    pub fn from_local(psi: &DPuiseuxPoly, r_local: &BigRational) -> Result<Self> {
        if !r_local.is_positive() {
            return Err(Error::InvalidInput(format!(
                "local order r = {r_local} must be positive"
            )));
        }
        if let Some(ord) = psi.order() {
            if !ord.value().is_positive() {
                return Err(Error::InvalidInput(format!(
                    "psi must have positive exponents, found u^({ord})"
                )));
            }
        }
        let one = BigRational::one();
        let phi = DPuiseuxPoly::from_terms(
            psi.terms()
                .map(|(e, c)| (Exponent::from(&one - e.value()), c.clone())),
        );
        let r = &one - r_local;
        GenericDps::new(phi.truncate_above(&r), r)
    }

    pub fn phi(&self) -> &DPuiseuxPoly {
        &self.phi
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn formal_pairs(&self) -> &FormalPuiseuxPairs {
        &self.pairs
    }

    pub fn delta_x(&self) -> i64 {
        self.pairs.delta_x()
    }

    /// Removes the terms of `phi` with integer exponent `>= 1`, which amounts
    /// to the polynomial change of coordinates `y -> y - h(x)`. Returns the
    /// new series and the removed `h`.
    pub fn strip_polynomial_head(&self) -> (GenericDps, DPuiseuxPoly) {
        let (head, rest): (Vec<_>, Vec<_>) = self
            .phi
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .partition(|(e, _)| e.is_integer() && e.value() >= &BigRational::one());
        let stripped = GenericDps {
            phi: DPuiseuxPoly::from_terms(rest),
            r: self.r.clone(),
            pairs: self.pairs.clone(),
        };
        (stripped, DPuiseuxPoly::from_terms(head))
    }
}

impl fmt::Display for GenericDps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.phi.is_zero() {
            write!(f, "{} + ", self.phi)?;
        }
        write!(f, "xi*x^({})", self.r)
    }
}

/// Scans the exponents of `phi` in decreasing order, opening a new pair each
/// time an exponent leaves the current lattice `(1/(p_1...p_k))Z`, then reads
/// the generic pair off `r`.
fn scan_formal_pairs(phi: &DPuiseuxPoly, r: &BigRational) -> Result<FormalPuiseuxPairs> {
    let mut pairs = Vec::new();
    let mut denom = BigInt::one();
    let next_pair = |e: &BigRational, denom: &mut BigInt| -> Result<Option<(i64, i64)>> {
        let scaled = e * BigRational::from_integer(denom.clone());
        let p = scaled.denom().clone();
        let q = scaled.numer().clone();
        if p.is_one() {
            return Ok(None);
        }
        *denom *= &p;
        Ok(Some((to_i64(&q)?, to_i64(&p)?)))
    };
    for (e, _) in phi.terms() {
        if let Some(pair) = next_pair(e.value(), &mut denom)? {
            pairs.push(pair);
        }
    }
    let generic = next_pair(r, &mut denom)?;
    let scaled = r * BigRational::from_integer(denom.clone());
    pairs.push(generic.unwrap_or((to_i64(scaled.numer())?, 1)));
    FormalPuiseuxPairs::new(pairs)
}
