//! Raising-operator calculus for the pairwise Pfaffian entries.
//!
//! An entry couples two classes `d(i)` and `d(j)` through
//!
//! * a prefactor `(1 - βT)^s / (2 - βT)` acting on each index separately, and
//! * an interaction `(1 - R) / (1 + R - βT_i)` with `R = T_i / T_j`.
//!
//! Both are expanded as formal power series in the operators. `T_i` raises the
//! subscript of `d(i)`, `T_j^{-1}` lowers that of `d(j)`; once the operators are
//! applied, every product `d_a(i) d_b(j)` collapses to `θ′^{a+b} / (a! b!)`.
//!
//! Throughout, `T̃` is read as `T` and `δ_i δ_j` as `1`. This reproduces the
//! β = 0 and β = -1 specializations exactly; symbolic β output carries that
//! convention as a flag.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{abel_coefficient, binom_gen_u, binomial, inverse_factorial};
use crate::scalar::Scalar;
use crate::series::{BetaPoly, TruncPoly};
use crate::{Integer, Rational};

/// How the connective parameter β is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BetaMode {
    /// β kept as a polynomial variable.
    #[serde(rename = "symbolic")]
    Symbolic,
    /// β = 0: Chow / cohomology.
    #[serde(rename = "0")]
    Zero,
    /// β = -1: Grothendieck group, seen through the Chern character.
    #[serde(rename = "-1")]
    MinusOne,
}

impl BetaMode {
    pub fn value(self) -> Option<Rational> {
        match self {
            BetaMode::Symbolic => None,
            BetaMode::Zero => Some(Rational::zero()),
            BetaMode::MinusOne => Some(-Rational::one()),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BetaMode::Symbolic => "symbolic",
            BetaMode::Zero => "0",
            BetaMode::MinusOne => "-1",
        }
    }
}

impl fmt::Display for BetaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BetaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "symbolic" | "beta" => Ok(BetaMode::Symbolic),
            "0" => Ok(BetaMode::Zero),
            "-1" => Ok(BetaMode::MinusOne),
            other => Err(format!("beta must be 0, -1 or symbolic, got {other:?}")),
        }
    }
}

/// `coeff · T_i^raise · T_j^{-lower}`.
///
/// In terms of the interaction expansion `R^ℓ T_i^m`, `raise = ℓ + m` and
/// `lower = ℓ`, so `raise >= lower` always.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMonomial<C> {
    pub coeff: C,
    pub raise: usize,
    pub lower: usize,
}

/// Finite linear combination of shift monomials with distinct exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperatorPoly<C> {
    terms: BTreeMap<(usize, usize), C>,
}

impl<C: Scalar> ShiftOperatorPoly<C> {
    pub fn identity() -> Self {
        Self {
            terms: BTreeMap::from([((0, 0), C::one())]),
        }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = ShiftMonomial<C>>) -> Self {
        let mut terms: BTreeMap<(usize, usize), C> = BTreeMap::new();
        for t in iter {
            let slot = terms.entry((t.raise, t.lower)).or_insert_with(C::zero);
            *slot = slot.clone() + t.coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// Coefficient of `T_i^raise T_j^{-lower}`.
    pub fn coefficient(&self, raise: usize, lower: usize) -> C {
        self.terms
            .get(&(raise, lower))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ShiftMonomial<C>> + '_ {
        self.terms.iter().map(|(&(raise, lower), c)| ShiftMonomial {
            coeff: c.clone(),
            raise,
            lower,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl ShiftOperatorPoly<BetaPoly> {
    pub fn specialize(&self, beta: &Rational) -> ShiftOperatorPoly<Rational> {
        ShiftOperatorPoly::from_terms(self.terms().map(|t| ShiftMonomial {
            coeff: t.coeff.eval(beta),
            raise: t.raise,
            lower: t.lower,
        }))
    }
}

type PrefactorKey = (i64, usize, BetaMode);

fn prefactor_cache() -> &'static RwLock<HashMap<PrefactorKey, Vec<BetaPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<PrefactorKey, Vec<BetaPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of `T^v`, `v = 0..=cap`, in `(1 - βT)^s / (2 - βT)`.
///
/// At β = -1 these are [`abel_coefficient`]s; at β = 0 the series is the
/// constant `1/2`. Results are memoized.
pub fn prefactor_expansion(s: i64, cap: usize, mode: BetaMode) -> Vec<BetaPoly> {
    let key = (s, cap, mode);
    if let Some(hit) = prefactor_cache().read().expect("cache poisoned").get(&key) {
        return hit.clone();
    }
    let value = match mode {
        BetaMode::MinusOne => (0..=cap as u32)
            .map(|v| BetaPoly::constant(abel_coefficient(s, v)))
            .collect(),
        BetaMode::Zero => {
            let mut out = vec![BetaPoly::zero(); cap + 1];
            out[0] = BetaPoly::constant(Rational::new(1.into(), 2.into()));
            out
        }
        BetaMode::Symbolic => symbolic_prefactor(s, cap),
    };
    prefactor_cache()
        .write()
        .expect("cache poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

/// Product of `(1 - βT)^s = Σ C(s, v) (-β)^v T^v` with
/// `1/(2 - βT) = Σ β^k T^k / 2^{k+1}`.
fn symbolic_prefactor(s: i64, cap: usize) -> Vec<BetaPoly> {
    let binomial_part: Vec<BetaPoly> = (0..=cap)
        .map(|v| {
            let c = Rational::from_integer(binom_gen_u(s, v as u64));
            BetaPoly::term(if v % 2 == 1 { -c } else { c }, v as u32)
        })
        .collect();
    let geometric_part: Vec<BetaPoly> = (0..=cap)
        .map(|k| BetaPoly::term(Rational::new(1.into(), Integer::one() << (k + 1)), k as u32))
        .collect();
    TruncPoly::from_coeffs(cap, binomial_part)
        .checked_mul(&TruncPoly::from_coeffs(cap, geometric_part))
        .expect("caps agree")
        .coeffs()
        .to_vec()
}

/// Expansion of `(1 - R) / (1 + R - βT_i)`, keeping `raise <= cap`.
///
/// At β = -1 the coefficient of `R^ℓ T_i^m` is `(-1)^m` for `ℓ = 0` and
/// `(-1)^{ℓ+m} (C(ℓ+m-1, m) + C(ℓ+m, m))` for `ℓ > 0`. At β = 0 only `m = 0`
/// survives: `1` at `ℓ = 0`, `2(-1)^ℓ` otherwise. Symbolic β is computed
/// from the geometric series directly, independently of both closed forms.
pub fn interaction_expansion(cap: usize, mode: BetaMode) -> ShiftOperatorPoly<BetaPoly> {
    match mode {
        BetaMode::MinusOne => {
            let mut terms = Vec::new();
            for ell in 0..=cap {
                for m in 0..=cap - ell {
                    let c = interaction_coefficient_minus_one(ell as u64, m as u64);
                    terms.push(ShiftMonomial {
                        coeff: BetaPoly::constant(c),
                        raise: ell + m,
                        lower: ell,
                    });
                }
            }
            ShiftOperatorPoly::from_terms(terms)
        }
        BetaMode::Zero => ShiftOperatorPoly::from_terms((0..=cap).map(|ell| {
            let c = if ell == 0 {
                Integer::one()
            } else if ell % 2 == 0 {
                Integer::from(2)
            } else {
                Integer::from(-2)
            };
            ShiftMonomial {
                coeff: BetaPoly::constant(Rational::from_integer(c)),
                raise: ell,
                lower: ell,
            }
        })),
        BetaMode::Symbolic => symbolic_interaction(cap),
    }
}

/// β = -1 coefficient of `R^ℓ T_i^m`.
pub fn interaction_coefficient_minus_one(ell: u64, m: u64) -> Rational {
    let magnitude = if ell == 0 {
        Integer::one()
    } else {
        binomial(ell + m - 1, m) + binomial(ell + m, m)
    };
    let signed = if (ell + m) % 2 == 1 {
        -magnitude
    } else {
        magnitude
    };
    Rational::from_integer(signed)
}

/// Bivariate series in (R, T_i) with β-polynomial coefficients, keyed by
/// `(ℓ, m)` and truncated at `ℓ + m <= cap`.
type Bivariate = BTreeMap<(usize, usize), BetaPoly>;

fn bivariate_mul(a: &Bivariate, b: &Bivariate, cap: usize) -> Bivariate {
    let mut out = Bivariate::new();
    for (&(l1, m1), c1) in a {
        for (&(l2, m2), c2) in b {
            if l1 + l2 + m1 + m2 > cap {
                continue;
            }
            let slot = out.entry((l1 + l2, m1 + m2)).or_default();
            *slot = slot.clone() + c1.clone() * c2.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn symbolic_interaction(cap: usize) -> ShiftOperatorPoly<BetaPoly> {
    // x = R - βT_i ; 1/(1 + x) = Σ (-x)^n
    let neg_x: Bivariate =
        Bivariate::from([((1, 0), -BetaPoly::one()), ((0, 1), BetaPoly::beta())]);
    let mut power: Bivariate = Bivariate::from([((0, 0), BetaPoly::one())]);
    let mut inverse = power.clone();
    for _ in 0..cap {
        power = bivariate_mul(&power, &neg_x, cap);
        for (k, c) in &power {
            let slot = inverse.entry(*k).or_default();
            *slot = slot.clone() + c.clone();
        }
    }
    let one_minus_r: Bivariate =
        Bivariate::from([((0, 0), BetaPoly::one()), ((1, 0), -BetaPoly::one())]);
    let product = bivariate_mul(&one_minus_r, &inverse, cap);
    ShiftOperatorPoly::from_terms(product.into_iter().map(|((ell, m), coeff)| ShiftMonomial {
        coeff,
        raise: ell + m,
        lower: ell,
    }))
}

/// Applies prefactors and an interaction operator to `d_{λ_i}(i) d_{λ_j}(j)`:
///
/// `Σ_{v_i, v_j, term} p_i[v_i] p_j[v_j] c_term · d_{λ_i+v_i+raise} d_{λ_j+v_j-lower}`
///
/// with `d_a = θ′^a / a!`. Terms with a negative lowered subscript, or of total
/// degree above `cap`, contribute nothing.
pub fn apply_pair_operator<C: Scalar>(
    op: &ShiftOperatorPoly<C>,
    base: (usize, usize),
    prefactors_i: &[C],
    prefactors_j: &[C],
    cap: usize,
) -> TruncPoly<C> {
    let (lambda_i, lambda_j) = base;
    let mut out = TruncPoly::zero(cap);
    if lambda_i + lambda_j > cap {
        return out;
    }
    let budget = cap - lambda_i - lambda_j;
    for (vi, pi) in prefactors_i.iter().enumerate().take(budget + 1) {
        if pi.is_zero() {
            continue;
        }
        for (vj, pj) in prefactors_j.iter().enumerate().take(budget + 1 - vi) {
            if pj.is_zero() {
                continue;
            }
            let weight = pi.clone() * pj.clone();
            for term in op.terms() {
                let a = lambda_i + vi + term.raise;
                let Some(b) = (lambda_j + vj).checked_sub(term.lower) else {
                    continue;
                };
                if a + b > cap {
                    continue;
                }
                let d = inverse_factorial(a as i64) * inverse_factorial(b as i64);
                out.add_to_coeff(a + b, (weight.clone() * term.coeff.clone()).scale(&d));
            }
        }
    }
    out
}

/// Applies a single-index prefactor to `d_λ`: `Σ_v p[v] d_{λ+v}`.
pub fn apply_prefactor<C: Scalar>(lambda: usize, prefactors: &[C], cap: usize) -> TruncPoly<C> {
    let mut out = TruncPoly::zero(cap);
    for (v, p) in prefactors.iter().enumerate() {
        if lambda + v > cap {
            break;
        }
        out.add_to_coeff(lambda + v, p.scale(&inverse_factorial((lambda + v) as i64)));
    }
    out
}
