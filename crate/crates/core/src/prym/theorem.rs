//! The closed summation formula for `χ(O_V)`.
//!
//! For each `v ∈ ℕ^{ℓ∘}` and `k` with `|λ| + |v| + k = g - 1` the formula
//! sums, over permutations `σ` of the labels and over assignments `f` of `k`
//! to the pairs `(σ(2j-1), σ(2j))`, the signed products of `g`-coefficients.
//! Labels are `1..=ℓ∘` for even `ℓ∘` and `0..=ℓ∘` for odd `ℓ∘`, label 0 being
//! the boundary row.

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::PrymProblem;
use crate::arith::{abel_coefficient, binomial, factorial_u, inverse_factorial, pow2};
use crate::error::{Error, Result};
use crate::pfaffian::permutation_is_odd;
use crate::{Integer, Rational};

/// Deliberate corruption of the `g`-coefficients, used to confirm that the
/// self-checks detect a wrong formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Negate the `ℓ ≥ 1` part of every `g_m^{i,j}`.
    GCoeffSignFlip,
}

/// `g_m^{i,j}` for the partition `λ` shifted by `v`, labels as in the module
/// docs. Label 0 is the boundary: `g_0^{0,j} = 1/(λ_j+v_j)!`, `g_m^{0,j} = 0`
/// for `m > 0`.
pub fn g_coeff(m: usize, i: usize, j: usize, lambda: &[u32], v: &[u32]) -> Result<Rational> {
    g_coeff_inner(m, i, j, lambda, v, None)
}

fn g_coeff_inner(
    m: usize,
    i: usize,
    j: usize,
    lambda: &[u32],
    v: &[u32],
    fault: Option<Fault>,
) -> Result<Rational> {
    let max = lambda.len();
    for index in [i, j] {
        if index > max || index > v.len() {
            return Err(Error::IndexOutOfRange { index, max });
        }
    }
    if i == j {
        return Ok(Rational::zero());
    }
    if i > j {
        return g_coeff_inner(m, j, i, lambda, v, fault).map(|x| -x);
    }
    let b = i64::from(lambda[j - 1] + v[j - 1]);
    if i == 0 {
        return Ok(if m == 0 {
            inverse_factorial(b)
        } else {
            Rational::zero()
        });
    }
    let a = i64::from(lambda[i - 1] + v[i - 1]);
    let m_i = m as i64;
    let mut tail = Rational::zero();
    for ell in 1..=b {
        let weight =
            binomial((ell + m_i - 1) as u64, m as u64) + binomial((ell + m_i) as u64, m as u64);
        let term = Rational::from_integer(weight)
            * inverse_factorial(a + ell + m_i)
            * inverse_factorial(b - ell);
        if ell % 2 == 0 {
            tail += term;
        } else {
            tail -= term;
        }
    }
    if fault == Some(Fault::GCoeffSignFlip) {
        tail = -tail;
    }
    let value = inverse_factorial(a + m_i) * inverse_factorial(b) + tail;
    Ok(if m % 2 == 1 { -value } else { value })
}

/// Precomputed `g_m^{i,j}` for one `v`, `0 <= m <= max_m`, all labels.
#[derive(Clone, Debug)]
pub struct GTable {
    labels: usize,
    max_m: usize,
    values: Vec<Rational>,
}

impl GTable {
    pub fn new(lambda: &[u32], v: &[u32], max_m: usize) -> Self {
        Self::build(lambda, v, max_m, None)
    }

    fn build(lambda: &[u32], v: &[u32], max_m: usize, fault: Option<Fault>) -> Self {
        let labels = lambda.len() + 1;
        let mut values = Vec::with_capacity((max_m + 1) * labels * labels);
        for m in 0..=max_m {
            for i in 0..labels {
                for j in 0..labels {
                    values.push(
                        g_coeff_inner(m, i, j, lambda, v, fault).expect("labels within range"),
                    );
                }
            }
        }
        Self {
            labels,
            max_m,
            values,
        }
    }

    /// `g_m^{i,j}`; zero beyond the precomputed range of `m`.
    pub fn get(&self, m: usize, i: usize, j: usize) -> Rational {
        if m > self.max_m {
            return Rational::zero();
        }
        self.values[(m * self.labels + i) * self.labels + j].clone()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        let n = self.labels;
        self.values
            .iter()
            .enumerate()
            .map(move |(idx, x)| (idx / (n * n), (idx / n) % n, idx % n, x))
    }
}

/// All assignments of `k` to the pairs `(σ(2j-1), σ(2j))` of `sigma`, slots
/// containing label 0 being fixed at zero.
pub fn enumerate_f(sigma: &[usize], k: usize) -> Vec<Vec<usize>> {
    let pairs = sigma.len() / 2;
    let free: Vec<usize> = (0..pairs)
        .filter(|&p| sigma[2 * p] != 0 && sigma[2 * p + 1] != 0)
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0; pairs];
    fill(&free, k, &mut current, &mut out);
    out
}

fn fill(free: &[usize], k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    match free {
        [] => {
            if k == 0 {
                out.push(current.clone());
            }
        }
        [last] => {
            current[*last] = k;
            out.push(current.clone());
            current[*last] = 0;
        }
        [first, rest @ ..] => {
            for x in (0..=k).rev() {
                current[*first] = x;
                fill(rest, k - x, current, out);
            }
            current[*first] = 0;
        }
    }
}

/// `χ(O_V)` from the closed summation formula.
pub fn euler_theorem(problem: &PrymProblem) -> Rational {
    evaluate(problem, None)
}

#[doc(hidden)]
pub fn euler_theorem_with_fault(problem: &PrymProblem, fault: Fault) -> Rational {
    evaluate(problem, Some(fault))
}

fn evaluate(problem: &PrymProblem, fault: Option<Fault>) -> Rational {
    let top = problem.dim();
    let size = problem.size();
    if size > top {
        return Rational::zero();
    }
    let lambda = problem.lambda();
    let shifts = problem.shifts();
    let len = lambda.len();
    let labels: Vec<usize> = if len.is_multiple_of(2) {
        (1..=len).collect()
    } else {
        (0..=len).collect()
    };
    let n = labels.len();
    let budget = top - size;

    let signed_perms: Vec<(bool, Vec<usize>)> = labels
        .iter()
        .copied()
        .permutations(n)
        .map(|p| (permutation_is_odd(&p), p))
        .collect();

    let inner: Rational = weak_compositions_bounded(len, budget)
        .into_par_iter()
        .map(|v| {
            let used: u32 = v.iter().sum();
            let k = (budget - used) as usize;
            let weight: Rational = v
                .iter()
                .zip(shifts)
                .map(|(&vi, &s)| abel_coefficient(s, vi))
                .product();
            if weight.is_zero() {
                return Rational::zero();
            }
            let table = GTable::build(lambda, &v, k, fault);
            let mut acc = Rational::zero();
            for (odd, sigma) in &signed_perms {
                for f in enumerate_f(sigma, k) {
                    let mut prod = Rational::one();
                    for (p, &m) in f.iter().enumerate() {
                        prod *= table.get(m, sigma[2 * p], sigma[2 * p + 1]);
                        if prod.is_zero() {
                            break;
                        }
                    }
                    if *odd {
                        acc -= prod;
                    } else {
                        acc += prod;
                    }
                }
            }
            weight * acc
        })
        .reduce(Rational::zero, |x, y| x + y);

    let half = (n / 2) as u64;
    let normalization = Rational::new(
        factorial_u(u64::from(top)),
        factorial_u(half) * (Integer::one() << half),
    ) * pow2(i64::from(top));
    inner * normalization
}

/// All `v ∈ ℕ^len` with `|v| <= budget`.
fn weak_compositions_bounded(len: usize, budget: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=budget - used).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}
