//! Truncated polynomials in θ′, and polynomials in β.
//!
//! A [`TruncPoly`] keeps coefficients of degrees `0..=cap` and discards
//! everything above. Class computations use `cap = g - 1`, the dimension of
//! the Prym variety: higher-degree parts integrate to zero, so nothing exported
//! depends on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::inverse_factorial;
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::{Integer, Rational, ThetaBetaPoly, ThetaPoly};

/// Dense polynomial truncated above degree `cap`.
///
/// Binary operators panic when the caps differ; use the `checked_*` methods
/// where caps are not known to match.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly<C> {
    cap: usize,
    coeffs: Vec<C>,
}

impl<C: Scalar> TruncPoly<C> {
    pub fn zero(cap: usize) -> Self {
        Self {
            cap,
            coeffs: vec![C::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(C::one(), 0, cap)
    }

    /// `coeff · x^degree`, or zero when `degree > cap`.
    pub fn monomial(coeff: C, degree: usize, cap: usize) -> Self {
        let mut p = Self::zero(cap);
        if degree <= cap {
            p.coeffs[degree] = coeff;
        }
        p
    }

    /// Builds from a coefficient list, padding with zeros or dropping the
    /// part above `cap`.
    pub fn from_coeffs(cap: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(cap + 1, C::zero());
        Self { cap, coeffs }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `x^d`; zero above the cap.
    pub fn coeff(&self, d: usize) -> C {
        self.coeffs.get(d).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c` to the coefficient of `x^d`; ignored above the cap.
    pub fn add_to_coeff(&mut self, d: usize, c: C) {
        if let Some(slot) = self.coeffs.get_mut(d) {
            let cur = std::mem::replace(slot, C::zero());
            *slot = cur + c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_cap(other)?;
        let mut out = vec![C::zero(); self.cap + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.cap - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let cur = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Ok(Self {
            cap: self.cap,
            coeffs: out,
        })
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TruncPoly<D> {
        TruncPoly {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Substitutes `x -> factor · x`.
    pub fn rescale_variable(&self, factor: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.cap + 1);
        for c in &self.coeffs {
            coeffs.push(c.scale(&power));
            power *= factor;
        }
        Self {
            cap: self.cap,
            coeffs,
        }
    }

    /// Truncation of `exp(sign · x)`.
    pub fn exp_series(cap: usize, negate: bool) -> Self {
        let coeffs = (0..=cap)
            .map(|k| {
                let c = inverse_factorial(k as i64);
                C::from_rational(if negate && k % 2 == 1 { -c } else { c })
            })
            .collect();
        Self { cap, coeffs }
    }

    fn check_cap(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        Self {
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<C: Scalar> Add for TruncPoly<C> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("cap mismatch in addition")
    }
}

impl<C: Scalar> Sub for TruncPoly<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("cap mismatch in subtraction")
    }
}

impl<C: Scalar> Mul for TruncPoly<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs)
            .expect("cap mismatch in multiplication")
    }
}

impl<C: Scalar> Neg for TruncPoly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            cap: self.cap,
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<C: Scalar> Ring for TruncPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.cap)
    }

    fn one_like(&self) -> Self {
        Self::one(self.cap)
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn div_integer(&self, d: &Integer) -> Self {
        self.scale(&Rational::new(Integer::one(), d.clone()))
    }
}

/// `d_j = θ′^j / j!`, the common value of every d-class once the
/// Euler-class contribution cancels; zero for `j < 0` or `j > cap`.
pub fn d_value(j: i64, cap: usize) -> ThetaPoly {
    if j < 0 || j as u64 > cap as u64 {
        return ThetaPoly::zero(cap);
    }
    ThetaPoly::monomial(inverse_factorial(j), j as usize, cap)
}

impl ThetaBetaPoly {
    /// Evaluates every β-coefficient at `beta`.
    pub fn specialize(&self, beta: &Rational) -> ThetaPoly {
        self.map(|c| c.eval(beta))
    }

    /// Embeds a rational θ′-polynomial as β-constant coefficients.
    pub fn from_theta(p: &ThetaPoly) -> Self {
        p.map(|c| BetaPoly::constant(c.clone()))
    }
}

/// Polynomial in β with rational coefficients, stored sparsely.
///
/// No zero coefficient is ever stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BetaPoly {
    terms: BTreeMap<u32, Rational>,
}

impl BetaPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0)
    }

    /// `c · β^k`.
    pub fn term(c: Rational, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// The variable β itself.
    pub fn beta() -> Self {
        Self::term(Rational::one(), 1)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::default();
        for (k, c) in iter {
            p.add_term(k, c);
        }
        p
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, beta: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (k, c)| {
            acc + c * num_traits::pow(beta.clone(), *k as usize)
        })
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }
}

impl Add for BetaPoly {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for BetaPoly {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for BetaPoly {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for BetaPoly {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Zero for BetaPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BetaPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Scalar for BetaPoly {
    fn from_rational(q: Rational) -> Self {
        Self::constant(q)
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if c < &Rational::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match k {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "β")?,
                1 => write!(f, "{abs}β")?,
                _ if abs.is_one() => write!(f, "β^{k}")?,
                _ => write!(f, "{abs}β^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn theta(cap: usize) -> ThetaPoly {
        ThetaPoly::monomial(q(1, 1), 1, cap)
    }

    #[test]
    fn truncation_drops_high_degree() {
        let cap = 4;
        let top = ThetaPoly::monomial(q(1, 1), cap, cap);
        assert!((theta(cap) * top).is_zero());
    }

    #[test]
    fn one_is_identity() {
        let x = ThetaPoly::from_coeffs(3, vec![q(2, 3), q(-1, 5), q(0, 1), q(7, 1)]);
        assert_eq!(ThetaPoly::one(3) * x.clone(), x);
    }

    #[test]
    fn exp_coefficient() {
        let e = ThetaPoly::exp_series(5, false);
        assert_eq!(e.coeff(3), q(1, 6));
        assert_eq!(e.coeff(9), q(0, 1));
    }

    #[test]
    fn cap_mismatch_is_rejected() {
        let a = ThetaPoly::one(2);
        let b = ThetaPoly::one(3);
        assert_eq!(a.checked_add(&b), Err(Error::CapMismatch(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(Error::CapMismatch(2, 3)));
    }

    #[test]
    fn d_value_examples() {
        assert_eq!(d_value(0, 4), ThetaPoly::one(4));
        assert!(d_value(-2, 4).is_zero());
        assert_eq!(d_value(3, 4), ThetaPoly::monomial(q(1, 6), 3, 4));
        assert!(d_value(5, 4).is_zero());
    }

    #[test]
    fn beta_poly_arithmetic() {
        let half_minus_beta = BetaPoly::constant(q(1, 2)) - BetaPoly::beta();
        let sq = half_minus_beta.clone() * half_minus_beta.clone();
        assert_eq!(sq.coeff(0), q(1, 4));
        assert_eq!(sq.coeff(1), q(-1, 1));
        assert_eq!(sq.coeff(2), q(1, 1));
        assert_eq!(sq.eval(&q(-1, 1)), q(9, 4));
        assert!((half_minus_beta.clone() - half_minus_beta).is_zero());
        assert_eq!(sq.to_string(), "1/4 - β + β^2");
    }

    #[test]
    fn specialize_theta_beta() {
        let p = ThetaBetaPoly::from_coeffs(
            2,
            vec![
                BetaPoly::one(),
                BetaPoly::beta(),
                BetaPoly::term(q(3, 1), 2),
            ],
        );
        let at_minus_one = p.specialize(&q(-1, 1));
        assert_eq!(at_minus_one.coeffs(), &[q(1, 1), q(-1, 1), q(3, 1)]);
        assert_eq!(p.specialize(&q(0, 1)), ThetaPoly::one(2));
    }

    #[test]
    fn rescale_variable_maps_theta_to_xi() {
        // θ′ = 2ξ: a θ′-coefficient c_d becomes 2^d c_d in ξ.
        let p = ThetaPoly::from_coeffs(2, vec![q(0, 1), q(1, 2), q(-1, 8)]);
        assert_eq!(
            p.rescale_variable(&q(2, 1)).coeffs(),
            &[q(0, 1), q(1, 1), q(-1, 2)]
        );
    }
}
