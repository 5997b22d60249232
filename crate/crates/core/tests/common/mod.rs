#![allow(dead_code)]

use keyforms::{DPuiseuxPoly, Exponent, FormalPuiseuxPairs, GenericDps, LaurentPoly};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn x() -> LaurentPoly {
    LaurentPoly::x()
}

pub fn y() -> LaurentPoly {
    LaurentPoly::y()
}

pub fn c(n: i64) -> LaurentPoly {
    LaurentPoly::constant(q(n, 1))
}

pub fn xp(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(BigRational::one(), e, 0)
}

pub fn dps(terms: &[(i64, i64, i64)]) -> DPuiseuxPoly {
    DPuiseuxPoly::from_terms(
        terms
            .iter()
            .map(|&(coef, n, d)| (Exponent::new(n, d), q(coef, 1))),
    )
}

fn nonzero_coeff(rng: &mut StdRng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// Generic series with every denominator dividing some `D <= 6`.
pub fn random_dps(rng: &mut StdRng) -> GenericDps {
    let d: i64 = rng.gen_range(1..=6);
    let divisors: Vec<i64> = (1..=d).filter(|k| d % k == 0).collect();
    let r_num = rng.gen_range(-4 * d..=2 * d);
    let r = q(r_num, d);
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let den = divisors[rng.gen_range(0..divisors.len())];
        let lo = Integer::div_floor(&(r_num * den), &d) + 1;
        let hi = 3 * den;
        if lo > hi {
            continue;
        }
        let num = rng.gen_range(lo..=hi);
        terms.push((Exponent::new(num, den), q(nonzero_coeff(rng), 1)));
    }
    GenericDps::new(DPuiseuxPoly::from_terms(terms), r).expect("exponents above r")
}

pub fn random_laurent(rng: &mut StdRng) -> LaurentPoly {
    loop {
        let n = rng.gen_range(1..=4);
        let f = LaurentPoly::from_terms((0..n).map(|_| {
            (
                rng.gen_range(-3..=4),
                rng.gen_range(0..=3u32),
                q(nonzero_coeff(rng), 1),
            )
        }));
        if !f.is_zero() {
            return f;
        }
    }
}

/// Normal-form pairs with `l <= 2`; `q_{k+1}` is drawn below `q_k p_{k+1}`
/// far enough that the last essential value takes both signs.
pub fn random_normal_pairs(rng: &mut StdRng) -> FormalPuiseuxPairs {
    loop {
        let l = rng.gen_range(0..=2usize);
        let mut ps: Vec<i64> = (0..l).map(|_| rng.gen_range(2..=4)).collect();
        let last_p = if l == 0 {
            rng.gen_range(2..=7)
        } else {
            rng.gen_range(1..=3)
        };
        ps.push(last_p);
        let q1 = if l == 0 {
            rng.gen_range(-6..ps[0])
        } else {
            rng.gen_range(2..ps[0].max(3))
        };
        let mut pairs = vec![(q1, ps[0])];
        for &p in &ps[1..] {
            let prev = pairs.last().unwrap().0;
            let top = prev * p - 1;
            let qk = rng.gen_range(top - 25..=top);
            pairs.push((qk, p));
        }
        if let Ok(fp) = FormalPuiseuxPairs::new(pairs) {
            if fp.is_normal_form() {
                return fp;
            }
        }
    }
}

/// Distinct coprime `(p, q)` with `p > q > 0`.
pub fn coprime_pairs(rng: &mut StdRng, count: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    while out.len() < count {
        let p = rng.gen_range(2..=13i64);
        let qq = rng.gen_range(1..p);
        if p.gcd(&qq) == 1 && !out.contains(&(p, qq)) {
            out.push((p, qq));
        }
    }
    out
}
