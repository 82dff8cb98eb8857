//! Integer combinatorics over arbitrary-precision values.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Integer, Rational};

/// `n!`, rejecting negative `n`.
pub fn factorial(n: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    Ok(factorial_u(n as u64))
}

pub(crate) fn factorial_u(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `1 / n!` as a rational, or zero when `n` is negative.
///
/// Mirrors the convention that classes of negative degree vanish.
pub fn inverse_factorial(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        Rational::new(Integer::one(), factorial_u(n as u64))
    }
}

/// Generalized binomial coefficient `s (s-1) ... (s-t+1) / t!` for any
/// integer `s`.
///
/// For `s >= 0` this is the ordinary binomial (zero when `t > s`).
pub fn binom_gen(s: i64, t: i64) -> Result<Integer> {
    if t < 0 {
        return Err(Error::NegativeBinomialIndex(t));
    }
    Ok(binom_gen_u(s, t as u64))
}

pub(crate) fn binom_gen_u(s: i64, t: u64) -> Integer {
    let mut num = Integer::one();
    for k in 0..t {
        num *= Integer::from(s) - Integer::from(k);
        if num.is_zero() {
            return num;
        }
    }
    num / factorial_u(t)
}

/// Ordinary binomial `C(n, k)` for nonnegative arguments.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        Integer::zero()
    } else {
        binom_gen_u(n as i64, k)
    }
}

/// Coefficient of `T^v` in `(1+T)^s / (2+T)`.
///
/// This is the regularized value of the divergent alternating sum
/// `Σ_{u≥0} (-1)^u C(u+s, v)`: expanding `1/(2+T)` as `Σ_k (-T)^k / 2^{k+1}`
/// gives `Σ_{k=0}^{v} (-1)^k C(s, v-k) / 2^{k+1}`.
pub fn abel_coefficient(s: i64, v: u32) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=v {
        let term = Rational::new(binom_gen_u(s, u64::from(v - k)), Integer::one() << (k + 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = Integer::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(Integer::one(), p)
    }
}

/// True when `q` has denominator one.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), Integer::from(1));
        assert_eq!(factorial(5).unwrap(), Integer::from(120));
        assert_eq!(factorial(10).unwrap(), Integer::from(3_628_800));
        assert_eq!(factorial(-1), Err(Error::NegativeFactorial(-1)));
    }

    #[test]
    fn large_factorial_is_exact() {
        // (4g)! for g = 10
        let f40 = factorial(40).unwrap();
        assert_eq!(
            f40.to_string(),
            "815915283247897734345611269596115894272000000000"
        );
    }

    #[test]
    fn binom_gen_examples() {
        assert_eq!(binom_gen(5, 2).unwrap(), Integer::from(10));
        for s in -5..6 {
            assert_eq!(binom_gen(s, 0).unwrap(), Integer::from(1));
        }
        // (-2)(-3)(-4)/3!
        assert_eq!(binom_gen(-2, 3).unwrap(), Integer::from(-4));
        assert_eq!(binom_gen(3, 5).unwrap(), Integer::from(0));
        assert_eq!(binom_gen(3, -1), Err(Error::NegativeBinomialIndex(-1)));
    }

    #[test]
    fn abel_examples() {
        assert_eq!(abel_coefficient(0, 0), q(1, 2));
        assert_eq!(abel_coefficient(0, 1), q(-1, 4));
        assert_eq!(abel_coefficient(1, 1), q(1, 4));
    }

    #[test]
    fn pow2_both_signs() {
        assert_eq!(pow2(3), q(8, 1));
        assert_eq!(pow2(-2), q(1, 4));
        assert_eq!(pow2(0), q(1, 1));
    }

    #[test]
    fn inverse_factorial_vanishes_below_zero() {
        assert_eq!(inverse_factorial(-1), q(0, 1));
        assert_eq!(inverse_factorial(3), q(1, 6));
    }
}
