use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// `C(n, m)`, or zero when `m < 0` or `m > n`.
pub fn binomial(n: u64, m: i64) -> BigUint {
    if m < 0 || m as u64 > n {
        return BigUint::zero();
    }
    let m = m as u64;
    let m = m.min(n - m);
    let mut acc = BigUint::one();
    // acc = C(n - m + i, i) after step i; each division is exact.
    for i in 1..=m {
        acc *= n - m + i;
        acc /= i;
    }
    acc
}

/// Parity offset `δ(n, k)`: 0 when `n + k` is even, 1 otherwise, so that
/// `k + δ` always has the parity of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParityOffset(u8);

impl ParityOffset {
    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for ParityOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn delta(n: u64, k: u64) -> ParityOffset {
    ParityOffset(((n ^ k) & 1) as u8)
}

/// `P(R_n = m)` for `R_n` a sum of `n` independent Rademacher signs.
pub fn rademacher_atom(n: u64, m: i64) -> Rational {
    let reach = m.unsigned_abs();
    if reach > n || (reach ^ n) & 1 == 1 {
        return Rational::zero();
    }
    // number of +1 signs is (n + m) / 2
    let plus = ((n as i128 + m as i128) / 2) as i64;
    ratio_over_power_of_two(binomial(n, plus), n)
}

/// Non-uniform bound `C(n, ⌈(n+k)/2⌉) / 2ⁿ`; zero for `k > n`.
pub fn lo_bound(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let index = (n + k).div_ceil(2);
    ratio_over_power_of_two(binomial(n, index as i64), n)
}

fn ratio_over_power_of_two(count: BigUint, n: u64) -> Rational {
    let exp = u32::try_from(n).expect("exponent fits in u32");
    Rational::from(count) * Rational::inverse_power_of_two(exp)
}

/// Smallest integer `t ≥ 0` with `t² ≥ q`, decided by `t²·den ≥ num`.
pub fn ceil_sqrt(q: &Rational) -> Result<BigUint> {
    let (num, den) = nonnegative_parts(q)?;
    // floor(sqrt(num*den)) / den  ≤  sqrt(num/den)
    let mut t = (&num * &den).sqrt() / &den;
    while &t * &t * &den < num {
        t += 1u32;
    }
    while !t.is_zero() && {
        let s = &t - 1u32;
        &s * &s * &den >= num
    } {
        t -= 1u32;
    }
    Ok(t)
}

/// Largest integer `t ≥ 0` with `t² ≤ q`.
pub fn floor_sqrt(q: &Rational) -> Result<BigUint> {
    let (num, den) = nonnegative_parts(q)?;
    let mut t = (&num * &den).sqrt() / &den;
    while &t * &t * &den > num {
        t -= 1u32;
    }
    while {
        let s = &t + 1u32;
        &s * &s * &den <= num
    } {
        t += 1u32;
    }
    Ok(t)
}

/// A rational `r` with `0 ≤ r ≤ √q`, and `r > 0` whenever `q > 0`.
pub fn sqrt_lower_bound(q: &Rational) -> Result<Rational> {
    let (num, den) = nonnegative_parts(q)?;
    // sqrt(num/den) = sqrt(num*den)/den
    let root = (&num * &den).sqrt();
    Rational::new(root.into(), den.into())
}

/// A rational `r ≥ √q`.
pub fn sqrt_upper_bound(q: &Rational) -> Result<Rational> {
    let (num, den) = nonnegative_parts(q)?;
    let prod = &num * &den;
    let mut root = prod.sqrt();
    if &root * &root != prod {
        root += 1u32;
    }
    Rational::new(root.into(), den.into())
}

fn nonnegative_parts(q: &Rational) -> Result<(BigUint, BigUint)> {
    if q.cmp_integer(&BigInt::zero()) == Ordering::Less {
        return Err(Error::InvalidInput(alloc::format!(
            "square root of negative value {}",
            q
        )));
    }
    Ok(q.parts_unsigned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        // value from the Pascal oracle, checked below against the whole row
        assert_eq!(binomial(30, 15), BigUint::from(155_117_520u64));
    }

    #[test]
    fn binomial_matches_pascal_recurrence() {
        for n in 0..=80usize {
            let row = pascal_row(n);
            for (m, expected) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, m as i64), expected, "C({n},{m})");
            }
        }
        assert_eq!(pascal_row(30)[15], BigUint::from(155_117_520u64));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(3, 1).value(), 0);
        assert_eq!(delta(3, 2).value(), 1);
        assert_eq!(delta(4, 0).value(), 0);
    }

    #[test]
    fn rademacher_atom_examples() {
        assert_eq!(rademacher_atom(2, 0), Rational::ratio(1, 2));
        assert_eq!(rademacher_atom(3, 1), Rational::ratio(3, 8));
        assert_eq!(rademacher_atom(2, 1), Rational::zero());
        assert_eq!(rademacher_atom(3, -3), Rational::ratio(1, 8));
        assert_eq!(rademacher_atom(3, 5), Rational::zero());
    }

    #[test]
    fn lo_bound_examples() {
        assert_eq!(lo_bound(4, 0), Rational::ratio(3, 8));
        assert_eq!(lo_bound(3, 1), Rational::ratio(3, 8));
        assert_eq!(lo_bound(5, 5), Rational::ratio(1, 32));
        assert_eq!(lo_bound(5, 6), Rational::zero());
        assert_eq!(lo_bound(4, 2), Rational::ratio(1, 4));
    }

    #[test]
    fn ceil_sqrt_examples() {
        assert_eq!(ceil_sqrt(&Rational::from(2)).unwrap(), BigUint::from(2u32));
        assert_eq!(ceil_sqrt(&Rational::ratio(9, 4)).unwrap(), BigUint::from(2u32));
        assert_eq!(ceil_sqrt(&Rational::from(25)).unwrap(), BigUint::from(5u32));
        assert_eq!(ceil_sqrt(&Rational::zero()).unwrap(), BigUint::zero());
        assert_eq!(ceil_sqrt(&Rational::ratio(1, 100)).unwrap(), BigUint::one());
        assert!(ceil_sqrt(&Rational::ratio(-1, 4)).is_err());
    }

    #[test]
    fn sqrt_helpers_bracket() {
        for (p, q) in [(2, 1), (9, 4), (1, 100), (7, 3), (1, 1), (0, 1), (10_001, 10_000)] {
            let r = Rational::ratio(p, q);
            let f = BigInt::from(floor_sqrt(&r).unwrap());
            let c = BigInt::from(ceil_sqrt(&r).unwrap());
            assert!(Rational::from(f.clone()).square() <= r);
            assert!(Rational::from(f + 1).square() > r);
            assert!(Rational::from(c.clone()).square() >= r);
            let lo = sqrt_lower_bound(&r).unwrap();
            let hi = sqrt_upper_bound(&r).unwrap();
            assert!(lo.square() <= r && hi.square() >= r);
            assert_eq!(lo.is_zero(), r.is_zero());
        }
    }
}
