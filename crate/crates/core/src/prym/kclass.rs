//! K-classes as Pfaffians of θ′-series, and the Chern-character route to χ.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{chow_class_closed, PrymProblem};
use crate::arith::{factorial_u, pow2};
use crate::operator::{
    apply_pair_operator, apply_prefactor, interaction_expansion, prefactor_expansion, BetaMode,
    ShiftOperatorPoly,
};
use crate::pfaffian::{augment_odd, pfaffian_matchings, SkewMatrix};
use crate::scalar::Scalar;
use crate::series::TruncPoly;
use crate::{Rational, ThetaBetaPoly, ThetaPoly};

/// Pfaffian of the pairwise operator matrix applied to the d-classes, with
/// the boundary row `p_j(T_j) d_{λ_j}` when `ℓ∘` is odd.
fn pfaffian_class<C: Scalar>(
    problem: &PrymProblem,
    prefactors: impl Fn(i64) -> Vec<C>,
    op: &ShiftOperatorPoly<C>,
) -> TruncPoly<C> {
    let cap = problem.dim() as usize;
    let lambda = problem.lambda();
    let len = lambda.len();
    let pre: Vec<Vec<C>> = problem.shifts().iter().map(|&s| prefactors(s)).collect();
    let inner = SkewMatrix::from_fn(len, TruncPoly::zero(cap), |i, j| {
        apply_pair_operator(
            op,
            (lambda[i] as usize, lambda[j] as usize),
            &pre[i],
            &pre[j],
            cap,
        )
    });
    let matrix = if len % 2 == 1 {
        let row0 = (0..len)
            .map(|j| apply_prefactor(lambda[j] as usize, &pre[j], cap))
            .collect();
        augment_odd(&inner, row0).expect("row length matches")
    } else {
        inner
    };
    pfaffian_matchings(&matrix).expect("even size")
}

/// Chern character of the structure-sheaf class, `ch([O_V])`, as a
/// θ′-polynomial truncated at degree `g - 1`.
pub fn ch_k_class(problem: &PrymProblem) -> ThetaPoly {
    let cap = problem.dim() as usize;
    let minus_one = -Rational::one();
    let op = interaction_expansion(cap, BetaMode::MinusOne).specialize(&minus_one);
    pfaffian_class(
        problem,
        |s| {
            prefactor_expansion(s, cap, BetaMode::MinusOne)
                .iter()
                .map(|c| c.eval(&minus_one))
                .collect()
        },
        &op,
    )
}

/// Connective class as a θ′-polynomial with β-polynomial coefficients.
///
/// At β = 0 this is `γ θ′^{|λ|}`; at β = -1 it coincides with
/// [`ch_k_class`]. Symbolic β follows the engine convention described in
/// [`crate::operator`].
pub fn ck_class(problem: &PrymProblem, mode: BetaMode) -> ThetaBetaPoly {
    let cap = problem.dim() as usize;
    let op = interaction_expansion(cap, mode);
    pfaffian_class(problem, |s| prefactor_expansion(s, cap, mode), &op)
}

/// `χ(O_V) = ∫ ch([O_V])`: with `θ′ = 2ξ` and `∫ ξ^{g-1} = (g-1)!`, the top
/// θ′-coefficient times `2^{g-1} (g-1)!`.
pub fn euler_oracle(problem: &PrymProblem) -> Rational {
    let top = problem.dim();
    ch_k_class(problem).coeff(top as usize)
        * pow2(i64::from(top))
        * Rational::from_integer(factorial_u(u64::from(top)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    #[serde(rename = "cohomology")]
    Cohomology,
    #[serde(rename = "chern_character_K")]
    ChernCharacterK,
    #[serde(rename = "connective")]
    Connective,
}

/// Serialized untagged; rational and β coefficients are told apart by shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassPoly {
    Rational(ThetaPoly),
    Beta(ThetaBetaPoly),
}

/// A computed class together with the conventions it was computed under.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassResult {
    pub kind: ClassKind,
    /// `γ` in `γ · (2ξ)^{|λ|}`; cohomology only.
    pub gamma: Option<Rational>,
    /// `|λ|`; cohomology only.
    pub exponent: Option<u32>,
    /// Class in the θ′ normalization, truncated at `g - 1`.
    pub theta_poly: ClassPoly,
    pub beta: BetaMode,
    pub convention_flags: Vec<&'static str>,
}

impl ClassResult {
    /// Same class in powers of ξ (`θ′ = 2ξ`).
    pub fn xi_poly(&self) -> ClassPoly {
        let two = Rational::from_integer(2.into());
        match &self.theta_poly {
            ClassPoly::Rational(p) => ClassPoly::Rational(p.rescale_variable(&two)),
            ClassPoly::Beta(p) => ClassPoly::Beta(p.rescale_variable(&two)),
        }
    }
}

/// Computes the class of `problem` at the given β mode.
pub fn class_result(problem: &PrymProblem, mode: BetaMode) -> ClassResult {
    let mut flags = vec!["parity_sign_cancelled"];
    match mode {
        BetaMode::Zero => {
            let poly = ck_class(problem, BetaMode::Zero).specialize(&Rational::zero());
            ClassResult {
                kind: ClassKind::Cohomology,
                gamma: Some(chow_class_closed(problem.lambda())),
                exponent: Some(problem.size()),
                theta_poly: ClassPoly::Rational(poly),
                beta: mode,
                convention_flags: flags,
            }
        }
        BetaMode::MinusOne => ClassResult {
            kind: ClassKind::ChernCharacterK,
            gamma: None,
            exponent: None,
            theta_poly: ClassPoly::Rational(ch_k_class(problem)),
            beta: mode,
            convention_flags: flags,
        },
        BetaMode::Symbolic => {
            flags.extend(["engine_convention", "symbolic_beta_experimental"]);
            ClassResult {
                kind: ClassKind::Connective,
                gamma: None,
                exponent: None,
                theta_poly: ClassPoly::Beta(ck_class(problem, mode)),
                beta: mode,
                convention_flags: flags,
            }
        }
    }
}
