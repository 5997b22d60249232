//! Algebraicity of the primitive compactification attached to a semidegree.

use num_rational::BigRational;

use crate::algebra::{LaurentPoly, Substitution};
use crate::error::{Error, Result};
use crate::keyforms::{compute_key_forms, KeyFormSeq};
use crate::puiseux::{DPuiseuxPoly, GenericDps};
use crate::semigroup::Semigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `curve` is the last key form, a polynomial with one place at
    /// infinity. `weights` are `(1, eta_0, ..., eta_{n+1})` over all key
    /// forms; `essential_weights` keep only the essential ones.
    Algebraic {
        curve: LaurentPoly,
        weights: Vec<i64>,
        essential_weights: Vec<i64>,
    },
    /// Index of the first key form with a negative power of `x`.
    NonAlgebraic { first_non_polynomial: usize },
}

impl Verdict {
    pub fn is_algebraic(&self) -> bool {
        matches!(self, Verdict::Algebraic { .. })
    }
}

/// A verdict together with the key forms it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub keyforms: KeyFormSeq,
    pub verdict: Verdict,
}

/// The compactification exists (the curve at infinity contracts) iff the
/// last key value is positive.
pub fn contractible(g: &GenericDps) -> Result<bool> {
    Ok(compute_key_forms(g)?.last_value() > 0)
}

pub fn decide_algebraic(g: &GenericDps) -> Result<Decision> {
    let seq = compute_key_forms(g)?;
    decide_from_keyforms(seq)
}

/// Same as [`decide_algebraic`] for already computed key forms.
pub fn decide_from_keyforms(seq: KeyFormSeq) -> Result<Decision> {
    if seq.last_value() <= 0 {
        return Err(Error::NotACompactification(format!(
            "delta(g_{}) = {} <= 0",
            seq.n() + 1,
            seq.last_value()
        )));
    }
    let last_polynomial = seq.last_form().is_polynomial();
    let first_bad = seq.first_non_polynomial();
    if last_polynomial != first_bad.is_none() {
        return Err(Error::Internal(format!(
            "last key form polynomial = {last_polynomial}, but first non-polynomial form is {first_bad:?}"
        )));
    }
    let verdict = match first_bad {
        None => {
            let mut weights = vec![1];
            weights.extend_from_slice(seq.values());
            let mut essential_weights = vec![1];
            essential_weights.extend_from_slice(seq.essential_values().values());
            Verdict::Algebraic {
                curve: seq.last_form().clone(),
                weights,
                essential_weights,
            }
        }
        Some(j) => Verdict::NonAlgebraic {
            first_non_polynomial: j,
        },
    };
    Ok(Decision {
        keyforms: seq,
        verdict,
    })
}

/// Decides whether some polynomial `f` has a single branch at infinity
/// agreeing with `v = psi(u)` up to order `r_local`; an algebraic verdict
/// carries such an `f`.
pub fn cousin_decide(psi: &DPuiseuxPoly, r_local: &BigRational) -> Result<Decision> {
    decide_algebraic(&GenericDps::from_local(psi, r_local)?)
}

/// For `m = 0..=n`: whether `alpha_j eta_j` lies in the semigroup generated
/// by `eta_0, ..., eta_{j-1}` for every `1 <= j <= m`.
pub fn semigroup_prefix_criterion(seq: &KeyFormSeq) -> Vec<bool> {
    let eta = seq.values();
    let mut out = vec![true];
    let mut ok = true;
    for j in 1..=seq.n() {
        ok = ok && Semigroup::new(&eta[..j]).contains(seq.multiplier(j) * eta[j]);
        out.push(ok);
    }
    out
}

/// For `m = 0..=n`: whether `g_0, ..., g_{m+1}` are all polynomials.
pub fn polynomial_prefixes(seq: &KeyFormSeq) -> Vec<bool> {
    let forms = seq.forms();
    (0..=seq.n())
        .map(|m| forms[..=m + 1].iter().all(LaurentPoly::is_polynomial))
        .collect()
}

/// Leading coefficient of `curve(x, phi + xi x^r)` has positive degree in xi.
pub fn curve_stops(curve: &LaurentPoly, g: &GenericDps) -> Result<bool> {
    let series = Substitution::new(g).eval(curve)?;
    Ok(series
        .leading()
        .and_then(|(_, c)| c.degree())
        .is_some_and(|d| d >= 1))
}
