//! Membership in subgroups and subsemigroups of the integers.

use num_integer::Integer;

/// `gcd` of the generators; zero when there are none (or all are zero).
pub fn group_generator(gens: &[i64]) -> i64 {
    gens.iter().fold(0i64, |acc, &g| acc.gcd(&g))
}

/// `target` lies in the group `Z<gens>`.
pub fn in_group(target: i64, gens: &[i64]) -> bool {
    let g = group_generator(gens);
    if g == 0 {
        target == 0
    } else {
        target % g == 0
    }
}

/// The semigroup `Z_{>=0}<gens>` of nonnegative integer combinations.
#[derive(Clone, Debug)]
pub struct Semigroup {
    positive: Vec<i64>,
    negative: Vec<i64>,
    gcd: i64,
}

impl Semigroup {
    pub fn new(gens: &[i64]) -> Self {
        let positive: Vec<i64> = gens.iter().copied().filter(|&g| g > 0).collect();
        let negative: Vec<i64> = gens.iter().copied().filter(|&g| g < 0).map(|g| -g).collect();
        Semigroup {
            positive,
            negative,
            gcd: group_generator(gens),
        }
    }

    pub fn contains(&self, target: i64) -> bool {
        if target == 0 {
            return true;
        }
        if self.gcd == 0 || target % self.gcd != 0 {
            return false;
        }
        // With generators of both signs the semigroup is the whole group.
        match (self.positive.is_empty(), self.negative.is_empty()) {
            (false, false) => true,
            (false, true) if target > 0 => coin_table(&self.positive, target)[target as usize],
            (true, false) if target < 0 => coin_table(&self.negative, -target)[(-target) as usize],
            _ => false,
        }
    }

    /// Membership of every integer in `[0, max]`; requires all generators
    /// nonnegative.
    pub fn nonnegative_table(&self, max: i64) -> Vec<bool> {
        assert!(self.negative.is_empty(), "generators must be nonnegative");
        coin_table(&self.positive, max.max(0))
    }
}

/// Coin-problem table: entry `t` is true iff `t` is a nonnegative
/// combination of the (positive) generators.
fn coin_table(gens: &[i64], max: i64) -> Vec<bool> {
    let len = max as usize + 1;
    let mut reachable = vec![false; len];
    reachable[0] = true;
    for t in 1..len {
        reachable[t] = gens
            .iter()
            .any(|&g| (g as usize) <= t && reachable[t - g as usize]);
    }
    reachable
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_semigroup_5_2() {
        let s = Semigroup::new(&[5, 2]);
        let members: Vec<i64> = (0..12).filter(|&t| s.contains(t)).collect();
        assert_eq!(members, vec![0, 2, 4, 5, 6, 7, 8, 9, 10, 11]);
        assert!(!s.contains(3));
        assert!(!s.contains(-2));
        assert!(in_group(3, &[5, 2]));
    }

    #[test]
    fn frobenius_number() {
        // the largest gap of <p, q> is pq - p - q
        for (p, q) in [(3, 5), (4, 7), (5, 9), (2, 11)] {
            let s = Semigroup::new(&[p, q]);
            let f = p * q - p - q;
            assert!(!s.contains(f));
            assert!((f + 1..f + 3 * p).all(|t| s.contains(t)));
        }
    }

    #[test]
    fn mixed_signs_and_degenerate() {
        let s = Semigroup::new(&[4, -6]);
        assert!(s.contains(2) && s.contains(-2) && !s.contains(3));
        let z = Semigroup::new(&[0]);
        assert!(z.contains(0) && !z.contains(1));
        assert!(Semigroup::new(&[]).contains(0));
        assert!(!in_group(1, &[]));
        let neg = Semigroup::new(&[-3]);
        assert!(neg.contains(-6) && !neg.contains(3));
    }
}
