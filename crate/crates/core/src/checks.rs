//! Invariant suite shared by the `selfcheck` command and the acceptance tests.
//!
//! Each check returns a [`CheckReport`]; none of them panics on a failed
//! comparison, the first counterexample goes into `detail`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{abel_coefficient, binom_gen, binomial, factorial_u, is_integral, pow2};
use crate::operator::{interaction_expansion, prefactor_expansion, BetaMode};
use crate::pfaffian::{determinant, pfaffian_matchings, pfaffian_permutations, SkewMatrix};
use crate::prym::{
    ch_k_class, chow_class_closed, chow_class_pfaffian, classical_branches, empty_suite,
    euler_oracle, euler_theorem, euler_theorem_with_fault, problem_suite, strict_partitions, Fault,
    GTable, PrymProblem,
};
use crate::{Integer, Rational, ThetaPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: Option<String>,
}

impl CheckReport {
    fn from_failures(name: &'static str, cases: usize, failure: Option<String>) -> Self {
        Self {
            name,
            passed: failure.is_none(),
            cases,
            detail: failure,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({} cases)", self.name, verdict, self.cases)?;
        if let Some(d) = &self.detail {
            write!(f, " - {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SelfcheckOptions {
    /// Restrict the χ suites to `g <= 4` and shrink the random samples.
    pub quick: bool,
    pub fault: Option<Fault>,
}

/// Problems of the oracle-equivalence suite: `g` in 2..=7, `ℓ∘ <= 4`.
pub fn chi_suite(quick: bool) -> Vec<PrymProblem> {
    problem_suite(2..=if quick { 4 } else { 7 }, 4)
}

fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Option<String> + Sync + Send,
) -> Option<String> {
    items.par_iter().filter_map(f).min()
}

fn theorem(p: &PrymProblem, fault: Option<Fault>) -> Rational {
    match fault {
        Some(fault) => euler_theorem_with_fault(p, fault),
        None => euler_theorem(p),
    }
}

fn label(p: &PrymProblem) -> String {
    format!("g={} λ={:?}", p.genus(), p.lambda())
}

pub fn oracle_equivalence(suite: &[PrymProblem], fault: Option<Fault>) -> CheckReport {
    let failure = first_failure(suite, |p| {
        let (t, o) = (theorem(p, fault), euler_oracle(p));
        (t != o).then(|| format!("{}: theorem {t} vs oracle {o}", label(p)))
    });
    CheckReport::from_failures("oracle-equivalence", suite.len(), failure)
}

pub fn integrality(suite: &[PrymProblem], fault: Option<Fault>) -> CheckReport {
    let failure = first_failure(suite, |p| {
        let chi = theorem(p, fault);
        (!is_integral(&chi)).then(|| format!("{}: χ = {chi}", label(p)))
    });
    CheckReport::from_failures("integrality", suite.len(), failure)
}

/// `χ = γ 2^{g-1} (g-1)!` when `|λ| = g - 1`.
pub fn zero_dimensional(suite: &[PrymProblem], fault: Option<Fault>) -> CheckReport {
    let cases: Vec<&PrymProblem> = suite.iter().filter(|p| p.size() == p.dim()).collect();
    let failure = first_failure(&cases, |p| {
        let top = p.dim();
        let degree = chow_class_closed(p.lambda())
            * pow2(i64::from(top))
            * Rational::from_integer(factorial_u(u64::from(top)));
        let chi = theorem(p, fault);
        (chi != degree).then(|| format!("{}: χ = {chi}, degree {degree}", label(p)))
    });
    CheckReport::from_failures("zero-dimensional", cases.len(), failure)
}

/// The degree-`|λ|` coefficient of `ch([O_V])` is the cohomology class and
/// nothing of lower degree survives.
pub fn k_leading_term(suite: &[PrymProblem]) -> CheckReport {
    let failure = first_failure(suite, |p| {
        let ch = ch_k_class(p);
        let size = p.size() as usize;
        let low_ok = (0..size).all(|d| ch.coeff(d).is_zero());
        let lead = ch.coeff(size);
        let gamma = chow_class_closed(p.lambda());
        (!low_ok || lead != gamma).then(|| format!("{}: leading {lead} vs γ {gamma}", label(p)))
    });
    CheckReport::from_failures("k-leading-term", suite.len(), failure)
}

pub fn chow_pfaffian(max_len: usize, max_part: u32) -> CheckReport {
    let parts = strict_partitions(u32::MAX, max_len, max_part);
    let failure = first_failure(&parts, |lambda| {
        let (pf, closed) = (chow_class_pfaffian(lambda), chow_class_closed(lambda));
        (pf != closed).then(|| format!("λ={lambda:?}: Pfaffian {pf} vs product {closed}"))
    });
    CheckReport::from_failures("chow-pfaffian", parts.len(), failure)
}

pub fn emptiness(count: usize, fault: Option<Fault>) -> CheckReport {
    let suite = empty_suite(count);
    let failure = first_failure(&suite, |p| {
        let ok =
            ch_k_class(p).is_zero() && theorem(p, fault).is_zero() && euler_oracle(p).is_zero();
        (!ok).then(|| label(p))
    });
    CheckReport::from_failures("emptiness", suite.len(), failure)
}

pub fn remark(max_r: u32) -> CheckReport {
    let failure = (0..=max_r).find_map(|r| {
        let [a, b] = classical_branches(r);
        (a != b).then(|| format!("r={r}: {a} vs {b}"))
    });
    CheckReport::from_failures("remark", max_r as usize + 1, failure)
}

/// `g_m^{j,i} = -g_m^{i,j}` on the tables used by the suite (all `v` with
/// `|v| <= 2`).
pub fn g_antisymmetry(suite: &[PrymProblem]) -> CheckReport {
    let mut cases = 0;
    let mut failure = None;
    for p in suite {
        let len = p.length();
        for v in small_vectors(len, 2) {
            let table = GTable::new(p.lambda(), &v, p.dim() as usize);
            for (m, i, j, x) in table.entries() {
                cases += 1;
                if *x != -table.get(m, j, i) && failure.is_none() {
                    failure = Some(format!("{} v={v:?}: g_{m}^({i},{j})", label(p)));
                }
            }
        }
    }
    CheckReport::from_failures("g-antisymmetry", cases, failure)
}

fn small_vectors(len: usize, budget: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=budget - used).map(move |x| [prefix.as_slice(), &[x]].concat())
            })
            .collect();
    }
    out
}

/// `Σ_{u=1}^{b} (-1)^u C(a+b, a+u) = -C(a+b-1, a)` for `1 <= a < b <= max`.
pub fn identity_cancel(max: u64) -> CheckReport {
    let mut cases = 0;
    let mut failure = None;
    for b in 2..=max {
        for a in 1..b {
            cases += 1;
            let lhs: Integer = (1..=b)
                .map(|u| {
                    let c = binomial(a + b, a + u);
                    if u % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .sum();
            let rhs = -binomial(a + b - 1, a);
            if lhs != rhs && failure.is_none() {
                failure = Some(format!("(a,b)=({a},{b}): {lhs} vs {rhs}"));
            }
        }
    }
    CheckReport::from_failures("identity-cancel", cases, failure)
}

/// Closed-form prefactor coefficients against the series expansion.
pub fn abel_series(s_range: std::ops::RangeInclusive<i64>, cap: usize) -> CheckReport {
    let minus_one = -Rational::one();
    let mut cases = 0;
    let mut failure = None;
    for s in s_range {
        let symbolic = prefactor_expansion(s, cap, BetaMode::Symbolic);
        for (v, c) in symbolic.iter().enumerate() {
            cases += 1;
            let closed = abel_coefficient(s, v as u32);
            if c.eval(&minus_one) != closed && failure.is_none() {
                failure = Some(format!("s={s} v={v}"));
            }
        }
    }
    CheckReport::from_failures("abel-series", cases, failure)
}

pub fn pascal(max: i64) -> CheckReport {
    let mut cases = 0;
    let mut failure = None;
    for s in 1..=max {
        for t in 1..=s {
            cases += 1;
            let lhs = binom_gen(s, t).expect("t >= 0");
            let rhs =
                binom_gen(s - 1, t - 1).expect("t >= 1") + binom_gen(s - 1, t).expect("t >= 0");
            if lhs != rhs && failure.is_none() {
                failure = Some(format!("(s,t)=({s},{t})"));
            }
        }
    }
    CheckReport::from_failures("pascal", cases, failure)
}

/// `[x^j] e^{-x} e^{x} = 0` for `1 <= j <= max`, through the series ring.
pub fn chern_vanishing(max: usize) -> CheckReport {
    let failure = (1..=max).find_map(|j| {
        let prod = ThetaPoly::exp_series(j, true) * ThetaPoly::exp_series(j, false);
        (!prod.coeff(j).is_zero()).then(|| format!("j={j}"))
    });
    CheckReport::from_failures("chern-vanishing", max, failure)
}

/// Skew matrix with entries `p/q`, `|p| <= 9`, `1 <= q <= 5`.
pub fn random_skew_matrix(rng: &mut impl Rng, n: usize) -> SkewMatrix<Rational> {
    SkewMatrix::from_fn(n, Rational::zero(), |_, _| {
        Rational::new(
            Integer::from(rng.random_range(-9i64..=9)),
            Integer::from(rng.random_range(1i64..=5)),
        )
    })
}

/// Matching expansion against permutation expansion for every sample, and
/// `Pf^2 = det` for `n <= 6`.
pub fn pfaffian_engines(samples: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = [2, 4, 6, 8];
    let matrices: Vec<SkewMatrix<Rational>> = (0..samples)
        .map(|k| random_skew_matrix(&mut rng, sizes[k % sizes.len()]))
        .collect();
    let failure = first_failure(&matrices, |m| {
        let pf = pfaffian_matchings(m).expect("even size");
        let by_perm = pfaffian_permutations(m).expect("even size");
        if pf != by_perm {
            return Some(format!(
                "n={}: matchings {pf} vs permutations {by_perm}",
                m.size()
            ));
        }
        if m.size() <= 6 {
            let det = determinant(&m.to_dense());
            if pf.clone() * pf.clone() != det {
                return Some(format!(
                    "n={}: Pf^2 {} vs det {det}",
                    m.size(),
                    pf.clone() * pf
                ));
            }
        }
        None
    });
    CheckReport::from_failures("pfaffian-engines", samples, failure)
}

/// The symbolic interaction series specializes to the closed forms at
/// β = 0 and β = -1.
pub fn interaction_specialization(cap: usize) -> CheckReport {
    let symbolic = interaction_expansion(cap, BetaMode::Symbolic);
    let mut cases = 0;
    let mut failure = None;
    for mode in [BetaMode::Zero, BetaMode::MinusOne] {
        let beta = mode.value().expect("numeric mode");
        let closed = interaction_expansion(cap, mode).specialize(&beta);
        cases += closed.len();
        if symbolic.specialize(&beta) != closed {
            failure = Some(format!("β={beta}"));
        }
    }
    CheckReport::from_failures("interaction-specialization", cases, failure)
}

/// Multiplying the β = -1 interaction series by `1 + R + T` returns `1 - R`.
pub fn interaction_reconstruction(cap: usize) -> CheckReport {
    let e = interaction_expansion(cap, BetaMode::MinusOne).specialize(&-Rational::one());
    let get = |raise: Option<usize>, lower: Option<usize>| match (raise, lower) {
        (Some(r), Some(l)) if l <= r => e.coefficient(r, l),
        _ => Rational::zero(),
    };
    let mut cases = 0;
    let mut failure = None;
    for raise in 0..=cap {
        for lower in 0..=raise {
            cases += 1;
            let product = get(Some(raise), Some(lower))
                + get(raise.checked_sub(1), lower.checked_sub(1))
                + get(raise.checked_sub(1), Some(lower));
            let expected = match (raise, lower) {
                (0, 0) => Rational::one(),
                (1, 1) => -Rational::one(),
                _ => Rational::zero(),
            };
            if product != expected && failure.is_none() {
                failure = Some(format!("({raise},{lower}): {product}"));
            }
        }
    }
    CheckReport::from_failures("interaction-reconstruction", cases, failure)
}

/// Externally known Euler characteristics.
pub fn anchors(fault: Option<Fault>) -> CheckReport {
    let table: [(i64, &[u32], i64); 3] = [(3, &[1], -1), (4, &[2, 1], 2), (2, &[1], 1)];
    let failure = table.iter().find_map(|&(g, lambda, chi)| {
        let p = PrymProblem::from_partition(g, lambda).expect("valid anchor");
        let got = theorem(&p, fault);
        (got != Rational::from_integer(chi.into())).then(|| format!("g={g} λ={lambda:?}: {got}"))
    });
    CheckReport::from_failures("anchors", table.len(), failure)
}

/// Runs every check in a fixed order.
pub fn run_selfcheck(options: SelfcheckOptions) -> Vec<CheckReport> {
    let SelfcheckOptions { quick, fault } = options;
    let suite = chi_suite(quick);
    vec![
        oracle_equivalence(&suite, fault),
        integrality(&suite, fault),
        zero_dimensional(&suite, fault),
        anchors(fault),
        k_leading_term(&suite),
        chow_pfaffian(5, if quick { 6 } else { 9 }),
        emptiness(if quick { 12 } else { 50 }, fault),
        remark(6),
        g_antisymmetry(&suite),
        identity_cancel(12),
        abel_series(-8..=8, 12),
        pascal(30),
        chern_vanishing(20),
        pfaffian_engines(if quick { 40 } else { 200 }, 0x5eed),
        interaction_specialization(10),
        interaction_reconstruction(10),
    ]
}
