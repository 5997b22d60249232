//! Key forms of a semidegree, computed from its generic descending Puiseux
//! series, together with the derived essential data.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{scaled_degree, x_power, LaurentPoly, Substitution, XiSeries};
use crate::error::{Error, Result};
use crate::puiseux::{int, to_i64, FormalPuiseuxPairs, GenericDps};
use crate::semigroup::{group_generator, in_group};

/// Essential key values `omega_0, ..., omega_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EssentialValues(Vec<i64>);

impl EssentialValues {
    pub fn new(values: Vec<i64>) -> Self {
        EssentialValues(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// `omega_k`.
    pub fn get(&self, k: usize) -> i64 {
        self.0[k]
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("essential values are never empty")
    }

    /// `l`, one less than the number of non-initial values.
    pub fn l(&self) -> usize {
        self.0.len() - 2
    }
}

/// `omega_0 = p_1...p_{l+1}` and
/// `omega_k = p_{k-1} omega_{k-1} + (q_k - q_{k-1} p_k) p_{k+1}...p_{l+1}`
/// with `p_0 = q_0 = 1`.
pub fn essential_key_values(pairs: &FormalPuiseuxPairs) -> EssentialValues {
    let n = pairs.pairs().len();
    let tail_product = |k: usize| -> i64 { (k + 1..=n).map(|i| pairs.p(i)).product() };
    let mut omegas = vec![pairs.delta_x()];
    let (mut p_prev, mut q_prev) = (1i64, 1i64);
    for k in 1..=n {
        let (q, p) = (pairs.q(k), pairs.p(k));
        let next = p_prev * omegas[k - 1] + (q - q_prev * p) * tail_product(k);
        omegas.push(next);
        p_prev = p;
        q_prev = q;
    }
    EssentialValues(omegas)
}

/// Coefficients `beta_0, ..., beta_k` of a representation
/// `target = sum beta_i * value_i` with `0 <= beta_i < p_i` for `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupRepr {
    pub betas: Vec<i64>,
}

impl SemigroupRepr {
    pub fn beta0(&self) -> i64 {
        self.betas[0]
    }
}

fn rational_gcd(values: &[BigRational]) -> BigRational {
    let denom = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let numer = values.iter().fold(BigInt::zero(), |acc, v| {
        let scaled = v * BigRational::from_integer(denom.clone());
        acc.gcd(&scaled.to_integer())
    });
    BigRational::new(numer, denom)
}

/// Solves `target = sum beta_i values[i]` with `0 <= beta_i < bounds[i-1]`
/// for `i >= 1` and `beta_0` unrestricted. Each `beta_i` is fixed top-down as
/// the residue that moves the remainder into the group generated by the lower
/// values.
pub fn represent(
    target: &BigRational,
    values: &[BigRational],
    bounds: &[i64],
) -> Result<SemigroupRepr> {
    if values.len() != bounds.len() + 1 {
        return Err(Error::InvalidInput(format!(
            "{} values need {} bounds, got {}",
            values.len(),
            values.len().saturating_sub(1),
            bounds.len()
        )));
    }
    if values[0].is_zero() {
        return Err(Error::InvalidInput("the base value must be nonzero".into()));
    }
    let not_representable = || Error::NotRepresentable {
        target: target.to_string(),
    };
    let mut betas = vec![0i64; values.len()];
    let mut rem = target.clone();
    for i in (1..values.len()).rev() {
        let g = rational_gcd(&values[..i]);
        let a = &rem / &g;
        let b = &values[i] / &g;
        let d = a.denom().lcm(b.denom());
        let big_a = (&a * BigRational::from_integer(d.clone())).to_integer();
        let big_b = (&b * BigRational::from_integer(d.clone())).to_integer();
        // beta * B = A (mod D)
        let ext = big_b.extended_gcd(&d);
        let common = ext.gcd.abs();
        if !(&big_a % &common).is_zero() {
            return Err(not_representable());
        }
        let modulus = &d / &common;
        let beta = ((&big_a / &ext.gcd) * &ext.x).mod_floor(&modulus);
        let beta = beta.to_i64().ok_or_else(not_representable)?;
        let bound = bounds[i - 1];
        let modulus = modulus.to_i64().ok_or_else(not_representable)?;
        if modulus < bound {
            return Err(Error::InvalidInput(format!(
                "bound {bound} exceeds the order {modulus} of value {i}; representation is not unique"
            )));
        }
        if beta >= bound {
            return Err(not_representable());
        }
        betas[i] = beta;
        rem -= &values[i] * int(beta);
    }
    let beta0 = &rem / &values[0];
    if !beta0.is_integer() {
        return Err(not_representable());
    }
    betas[0] = to_i64(beta0.numer())?;
    Ok(SemigroupRepr { betas })
}

/// Integer form of [`represent`].
pub fn represent_int(target: i64, values: &[i64], bounds: &[i64]) -> Result<SemigroupRepr> {
    let values: Vec<BigRational> = values.iter().map(|&v| int(v)).collect();
    represent(&int(target), &values, bounds)
}

/// One step `g_{j+1} = g_j^alpha - theta * prod_i g_i^{exponents[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyStep {
    pub alpha: i64,
    pub theta: BigRational,
    /// `beta_{j,i}` for `i = 0..j`; only `beta_{j,0}` may be negative.
    pub exponents: Vec<i64>,
}

impl KeyStep {
    /// `prod_i g_i^{exponents[i]}` over the given forms.
    pub fn monomial(&self, forms: &[LaurentPoly]) -> LaurentPoly {
        let mut out = x_power(self.exponents[0]);
        for (i, &b) in self.exponents.iter().enumerate().skip(1) {
            if b > 0 {
                out = &out * &forms[i].pow(b as u32);
            }
        }
        out
    }

    /// Applies the step to `g_j`.
    pub fn apply(&self, forms: &[LaurentPoly], j: usize) -> LaurentPoly {
        let head = forms[j].pow(self.alpha as u32);
        &head - &self.monomial(forms).scale(&self.theta)
    }
}

/// Sequence of key forms `g_0, ..., g_{n+1}` with their values
/// `eta_j = delta(g_j)`, multipliers `alpha_j` and essential indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyFormSeq {
    forms: Vec<LaurentPoly>,
    values: Vec<i64>,
    multipliers: Vec<i64>,
    steps: Vec<KeyStep>,
    essential: Vec<usize>,
}

impl KeyFormSeq {
    /// Assembles a sequence from its forms, values and the steps producing
    /// `g_2, ..., g_{n+1}`. The last multiplier `alpha_{n+1}` is the least
    /// positive integer putting `alpha * eta_{n+1}` in the group of the
    /// earlier values.
    pub fn from_parts(
        forms: Vec<LaurentPoly>,
        values: Vec<i64>,
        steps: Vec<KeyStep>,
    ) -> Result<Self> {
        if forms.len() < 2 || values.len() != forms.len() || steps.len() + 2 != forms.len() {
            return Err(Error::InvalidInput(format!(
                "inconsistent lengths: {} forms, {} values, {} steps",
                forms.len(),
                values.len(),
                steps.len()
            )));
        }
        let n_plus_1 = forms.len() - 1;
        let mut multipliers: Vec<i64> = steps.iter().map(|s| s.alpha).collect();
        multipliers.push(minimal_multiplier(values[n_plus_1], &values[..n_plus_1]));
        let mut essential = vec![0];
        essential.extend((1..n_plus_1).filter(|&j| multipliers[j - 1] > 1));
        essential.push(n_plus_1);
        Ok(KeyFormSeq {
            forms,
            values,
            multipliers,
            steps,
            essential,
        })
    }

    pub fn forms(&self) -> &[LaurentPoly] {
        &self.forms
    }

    pub fn form(&self, j: usize) -> &LaurentPoly {
        &self.forms[j]
    }

    /// `eta_0, ..., eta_{n+1}`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `n`, so that the forms are `g_0, ..., g_{n+1}`.
    pub fn n(&self) -> usize {
        self.forms.len() - 2
    }

    /// `alpha_j` for `1 <= j <= n+1`.
    pub fn multiplier(&self, j: usize) -> i64 {
        self.multipliers[j - 1]
    }

    pub fn multipliers(&self) -> &[i64] {
        &self.multipliers
    }

    /// `steps()[j-1]` produces `g_{j+1}` from `g_j`.
    pub fn steps(&self) -> &[KeyStep] {
        &self.steps
    }

    /// `j_0 = 0 < j_1 < ... < j_{l+1} = n+1`.
    pub fn essential_indices(&self) -> &[usize] {
        &self.essential
    }

    pub fn last_form(&self) -> &LaurentPoly {
        self.forms.last().expect("at least two forms")
    }

    pub fn last_value(&self) -> i64 {
        *self.values.last().expect("at least two values")
    }

    pub fn essential_values(&self) -> EssentialValues {
        EssentialValues(self.essential.iter().map(|&j| self.values[j]).collect())
    }

    /// Index of the first form with a negative power of `x`.
    pub fn first_non_polynomial(&self) -> Option<usize> {
        self.forms.iter().position(|f| !f.is_polynomial())
    }

    /// Renders `g_{j+1}` in terms of earlier forms, e.g. `g_3^3 - x^5`.
    pub fn step_expression(&self, j: usize) -> String {
        let step = &self.steps[j - 1];
        let mut head = format!("g_{j}");
        if step.alpha != 1 {
            head = format!("{head}^{}", step.alpha);
        }
        let mut factors = Vec::new();
        if step.exponents[0] == 1 {
            factors.push("x".to_string());
        } else if step.exponents[0] != 0 {
            factors.push(format!("x^{}", step.exponents[0]));
        }
        for (i, &b) in step.exponents.iter().enumerate().skip(1) {
            match b {
                0 => {}
                1 => factors.push(format!("g_{i}")),
                b => factors.push(format!("g_{i}^{b}")),
            }
        }
        let sign = if step.theta.is_negative() { "+" } else { "-" };
        let abs = step.theta.abs();
        let mut tail = factors.join("*");
        if !abs.is_one() {
            tail = if tail.is_empty() {
                abs.to_string()
            } else {
                format!("{abs}*{tail}")
            };
        } else if tail.is_empty() {
            tail = "1".to_string();
        }
        format!("{head} {sign} {tail}")
    }
}

impl fmt::Display for KeyFormSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (g, v)) in self.forms.iter().zip(&self.values).enumerate() {
            writeln!(f, "g_{j} = {g}    [delta = {v}]")?;
        }
        Ok(())
    }
}

/// Least `alpha > 0` with `alpha * value` in the group generated by `earlier`.
pub(crate) fn minimal_multiplier(value: i64, earlier: &[i64]) -> i64 {
    let e = group_generator(earlier);
    if e == 0 {
        return if value == 0 { 1 } else { 0 };
    }
    (1..=e.abs())
        .find(|&a| in_group(a * value, earlier))
        .expect("alpha = |gcd| always works")
}

/// Default cap on the number of inductive steps.
pub fn default_iteration_cap(g: &GenericDps) -> usize {
    let p_sum: i64 = g.formal_pairs().pairs().iter().map(|&(_, p)| p).sum();
    10 * (g.phi().len() + p_sum as usize)
}

/// Runs the key-form construction with the default iteration cap.
pub fn compute_key_forms(g: &GenericDps) -> Result<KeyFormSeq> {
    compute_key_forms_with_cap(g, default_iteration_cap(g))
}

/// Essential data of the running construction: for each essential index
/// `j_i` the degree and leading coefficient of `g_{j_i}(x, phi + xi x^r)`
/// and the full substituted series.
struct EssentialTrack {
    indices: Vec<usize>,
    degrees: Vec<BigRational>,
    leads: Vec<BigRational>,
    series: Vec<XiSeries>,
    bounds: Vec<i64>,
}

impl EssentialTrack {
    /// The monomial `x^b0 prod g_{j_i}^{b_i}` in `Q[x,1/x,y]`, its substituted
    /// series, its leading coefficient, and the exponent vector over `0..upto`.
    fn monomial(
        &self,
        repr: &SemigroupRepr,
        forms: &[LaurentPoly],
        upto: usize,
    ) -> (LaurentPoly, XiSeries, BigRational, Vec<i64>) {
        let mut exponents = vec![0i64; upto];
        exponents[0] = repr.betas[0];
        let mut poly = x_power(repr.betas[0]);
        let mut series = XiSeries::one().shift_x(&int(repr.betas[0]));
        let mut lead = BigRational::one();
        for (i, &b) in repr.betas.iter().enumerate().skip(1) {
            if b == 0 {
                continue;
            }
            let j = self.indices[i];
            exponents[j] = b;
            poly = &poly * &forms[j].pow(b as u32);
            series = &series * &self.series[i].pow(b as u32);
            lead *= num_traits::pow(self.leads[i].clone(), b as usize);
        }
        (poly, series, lead, exponents)
    }
}

/// Key-form construction. `cap` bounds the number of inductive steps; hitting
/// it indicates a bug, since the sequence of key forms is always finite.
pub fn compute_key_forms_with_cap(g: &GenericDps, cap: usize) -> Result<KeyFormSeq> {
    let pairs = g.formal_pairs();
    let delta_x = pairs.delta_x();
    let mut sub = Substitution::new(g);

    let mut forms = vec![LaurentPoly::x(), LaurentPoly::y()];
    let mut degrees = vec![BigRational::one()];
    let mut steps = Vec::new();
    let mut track = EssentialTrack {
        indices: vec![0],
        degrees: vec![BigRational::one()],
        leads: vec![BigRational::one()],
        series: vec![sub.eval(&forms[0])?],
        bounds: Vec::new(),
    };
    let mut lattice = BigInt::one();
    let mut current = sub.eval(&forms[1])?;
    let mut s = 1usize;

    loop {
        if s > cap {
            return Err(Error::Internal(format!(
                "key-form construction did not stop within {cap} steps"
            )));
        }
        let (deg, lead) = current
            .leading()
            .map(|(d, l)| (d.value().clone(), l.clone()))
            .ok_or_else(|| Error::Internal(format!("g_{s} substitutes to zero")))?;
        degrees.push(deg.clone());

        if lead.degree().is_some_and(|d| d >= 1) {
            // Case 2.1
            track.indices.push(s);
            break;
        }
        let c_s = lead
            .as_constant()
            .cloned()
            .ok_or_else(|| Error::Internal("empty leading coefficient".into()))?;
        let scaled = &deg * BigRational::from_integer(lattice.clone());
        let internal = |e: Error| Error::Internal(format!("at g_{s}: {e}"));

        let (next_form, next_series, step) = if scaled.is_integer() {
            // Case 2.2
            let repr = represent(&deg, &track.degrees, &track.bounds).map_err(internal)?;
            let (mono, mono_series, mono_lead, exponents) = track.monomial(&repr, &forms, s);
            let theta = &c_s / &mono_lead;
            let form = &forms[s] - &mono.scale(&theta);
            let series = &current - &mono_series.scale(&theta);
            let step = KeyStep {
                alpha: 1,
                theta,
                exponents,
            };
            (form, series, step)
        } else {
            // Case 2.3
            let k = track.bounds.len();
            let p_next = to_i64(scaled.denom())?;
            if k + 1 > pairs.l() || pairs.p(k + 1) != p_next {
                return Err(Error::Internal(format!(
                    "g_{s} has degree {deg}, which does not open formal pair {}",
                    k + 1
                )));
            }
            let target = &deg * int(p_next);
            let repr = represent(&target, &track.degrees, &track.bounds).map_err(internal)?;
            let (mono, mono_series, mono_lead, exponents) = track.monomial(&repr, &forms, s);
            let theta = num_traits::pow(c_s.clone(), p_next as usize) / &mono_lead;
            let form = &forms[s].pow(p_next as u32) - &mono.scale(&theta);
            let series = &current.pow(p_next as u32) - &mono_series.scale(&theta);
            track.indices.push(s);
            track.degrees.push(deg.clone());
            track.leads.push(c_s);
            track.series.push(current.clone());
            track.bounds.push(p_next);
            lattice *= BigInt::from(p_next);
            let step = KeyStep {
                alpha: p_next,
                theta,
                exponents,
            };
            (form, series, step)
        };
        forms.push(next_form);
        steps.push(step);
        current = next_series;
        s += 1;
    }

    let values = degrees
        .iter()
        .map(|d| scaled_degree(&d.clone().into(), delta_x))
        .collect::<Result<Vec<_>>>()?;
    let seq = KeyFormSeq::from_parts(forms, values, steps)?;
    if seq.essential_indices() != track.indices.as_slice() {
        return Err(Error::Internal(format!(
            "essential indices {:?} disagree with the construction {:?}",
            seq.essential_indices(),
            track.indices
        )));
    }
    if seq.essential_indices().len() != pairs.l() + 2 {
        return Err(Error::Internal(format!(
            "{} essential forms for {} formal pairs",
            seq.essential_indices().len(),
            pairs.l() + 1
        )));
    }
    let last_p = pairs.p(pairs.l() + 1);
    if seq.multiplier(seq.n() + 1) != last_p {
        return Err(Error::Internal(format!(
            "last multiplier {} differs from p_(l+1) = {last_p}",
            seq.multiplier(seq.n() + 1)
        )));
    }
    Ok(seq)
}

/// Outcome of [`verify_key_properties`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyReport {
    pub violations: Vec<String>,
}

impl KeyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-checks the defining properties of key forms: the value inequalities,
/// minimality of each multiplier and the bounds on exponents; `g_0 = x`,
/// `g_1 = y`; every `g_{j+1}` equals `g_j^alpha_j - theta_j * monomial` as a
/// polynomial identity; and, when `g` is given, `eta_j = delta(g_j)`.
pub fn verify_key_properties(seq: &KeyFormSeq, g: Option<&GenericDps>) -> KeyReport {
    let mut v = Vec::new();
    let forms = seq.forms();
    let eta = seq.values();
    if forms[0] != LaurentPoly::x() {
        v.push(format!("P1: g_0 = {} is not x", forms[0]));
    }
    if forms[1] != LaurentPoly::y() {
        v.push(format!("P1: g_1 = {} is not y", forms[1]));
    }
    if eta[0] <= 0 {
        v.push(format!("eta_0 = {} must be positive", eta[0]));
    }
    for (j, f) in forms.iter().enumerate().skip(1) {
        if !f.is_monic_in_y() {
            v.push(format!("g_{j} is not monic in y"));
        }
    }
    for j in 1..=seq.n() {
        let step = &seq.steps()[j - 1];
        let alpha = step.alpha;
        let minimal = minimal_multiplier(eta[j], &eta[..j]);
        if alpha != minimal {
            v.push(format!("P0: alpha_{j} = {alpha} but the minimal multiplier is {minimal}"));
        }
        if eta[j + 1] >= alpha * eta[j] {
            v.push(format!(
                "P0: eta_{} = {} is not below alpha_{j} eta_{j} = {}",
                j + 1,
                eta[j + 1],
                alpha * eta[j]
            ));
        }
        if step.exponents.len() != j {
            v.push(format!("P0: step {j} has {} exponents", step.exponents.len()));
            continue;
        }
        let combo: i64 = step.exponents.iter().zip(eta).map(|(b, e)| b * e).sum();
        if combo != alpha * eta[j] {
            v.push(format!(
                "P0: sum beta_(j,i) eta_i = {combo} differs from alpha_{j} eta_{j} = {}",
                alpha * eta[j]
            ));
        }
        for (i, &b) in step.exponents.iter().enumerate().skip(1) {
            let bound = seq.multiplier(i);
            if b < 0 || b >= bound {
                v.push(format!("P0: beta_({j},{i}) = {b} outside [0, {bound})"));
            }
        }
        if step.theta.is_zero() {
            v.push(format!("P2: theta_{j} is zero"));
        }
        if alpha >= 1 && step.apply(forms, j) != forms[j + 1] {
            v.push(format!(
                "P2: g_{} is not g_{j}^{alpha} - theta_{j} * monomial",
                j + 1
            ));
        }
    }
    if let Some(g) = g {
        let mut sub = Substitution::new(g);
        for (j, f) in forms.iter().enumerate() {
            match sub.semidegree(f) {
                Ok(d) if d == eta[j] => {}
                Ok(d) => v.push(format!("value: delta(g_{j}) = {d} but eta_{j} = {}", eta[j])),
                Err(e) => v.push(format!("value: delta(g_{j}) failed: {e}")),
            }
        }
    }
    KeyReport { violations: v }
}
