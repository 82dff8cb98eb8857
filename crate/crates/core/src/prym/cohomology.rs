//! Cohomology (β = 0) classes `γ · (2ξ)^{|λ|}`.

use num_traits::Zero;

use crate::arith::{binomial, inverse_factorial, pow2};
use crate::pfaffian::{augment_odd, pfaffian_matchings, SkewMatrix};
use crate::Rational;

/// `γ = 2^{-ℓ∘} Π_i 1/λ_i! Π_{i<j} (λ_i - λ_j)/(λ_i + λ_j)`.
pub fn chow_class_closed(lambda: &[u32]) -> Rational {
    let len = lambda.len();
    let mut gamma = pow2(-(len as i64));
    for (i, &li) in lambda.iter().enumerate() {
        gamma *= inverse_factorial(i64::from(li));
        for &lj in &lambda[i + 1..] {
            gamma *= Rational::new(
                (i64::from(li) - i64::from(lj)).into(),
                (i64::from(li) + i64::from(lj)).into(),
            );
        }
    }
    gamma
}

/// `γ` as the Pfaffian of the β = 0 matrix.
///
/// Entries are the `θ′^{λ_i+λ_j}` coefficients
/// `(1/4) / (λ_i+λ_j)! · (C(n, λ_i) + 2 Σ_{u>0} (-1)^u C(n, λ_i+u))`,
/// `n = λ_i + λ_j`, with the alternating sum evaluated term by term. Odd
/// `ℓ∘` uses the boundary row `m_{0j} = (1/2) / λ_j!`.
pub fn chow_class_pfaffian(lambda: &[u32]) -> Rational {
    let len = lambda.len();
    let quarter = Rational::new(1.into(), 4.into());
    let inner = SkewMatrix::from_fn(len, Rational::zero(), |i, j| {
        let (li, lj) = (u64::from(lambda[i]), u64::from(lambda[j]));
        let n = li + lj;
        let mut bracket = Rational::from_integer(binomial(n, li));
        for u in 1..=lj {
            let term = Rational::from_integer(binomial(n, li + u) * 2);
            if u % 2 == 1 {
                bracket -= term;
            } else {
                bracket += term;
            }
        }
        quarter.clone() * inverse_factorial(n as i64) * bracket
    });
    let matrix = if len % 2 == 1 {
        let half = Rational::new(1.into(), 2.into());
        let row0 = lambda
            .iter()
            .map(|&l| half.clone() * inverse_factorial(i64::from(l)))
            .collect();
        augment_odd(&inner, row0).expect("row length matches")
    } else {
        inner
    };
    pfaffian_matchings(&matrix).expect("even size")
}

/// Both evaluations of the classical coefficient for `a = (0, 1, ..., r)`:
/// `[ (r, ..., 1) , (r, ..., 1, 0) ]`, i.e. the products over `i >= 1` and over
/// `i >= 0`.
pub fn classical_branches(r: u32) -> [Rational; 2] {
    let branch = |start: u32| {
        let mut c = pow2(-i64::from(r));
        for i in start..=r {
            c *= inverse_factorial(i64::from(i));
            for j in start..i {
                c *= Rational::new((i - j).into(), (i + j).into());
            }
        }
        c
    };
    [branch(1), branch(0)]
}

/// Class coefficient of the classical locus `a = (0, 1, ..., r)`, using the
/// `(r, ..., 1)` product for even `r` and `(r, ..., 1, 0)` for odd `r`.
pub fn classical_coefficient(r: u32) -> Rational {
    let [without_zero, with_zero] = classical_branches(r);
    if r.is_multiple_of(2) {
        without_zero
    } else {
        with_zero
    }
}
