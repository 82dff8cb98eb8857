//! Pointed Brill-Noether loci on Prym varieties.
//!
//! A problem is a genus `g` and a vanishing sequence `0 <= a_0 < ... < a_r <= 2g-2`.
//! Everything downstream depends only on the strict partition `λ_i = a_{r+1-i}`
//! (zero parts dropped), its length `ℓ∘`, and the shifts
//! `s_i = ℓ∘ - i - λ_i + 1`. The ambient Prym variety has dimension `g - 1`.

mod cohomology;
mod kclass;
mod theorem;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cohomology::{
    chow_class_closed, chow_class_pfaffian, classical_branches, classical_coefficient,
};
pub use kclass::{
    ch_k_class, ck_class, class_result, euler_oracle, ClassKind, ClassPoly, ClassResult,
};
pub use theorem::{enumerate_f, euler_theorem, euler_theorem_with_fault, g_coeff, Fault, GTable};

/// Which component `𝒫^+` / `𝒫^-` the locus lives in: `+` for odd `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Parity {
    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        }
    }
}

/// Validated pointed Brill-Noether problem.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrymProblem {
    genus: u32,
    rank: u32,
    vanishing: Vec<u32>,
    lambda: Vec<u32>,
    shifts: Vec<i64>,
}

/// Validates `(g, r, a)` and derives the partition data.
pub fn build_problem(g: i64, r: i64, a: &[i64]) -> Result<PrymProblem> {
    PrymProblem::new(g, r, a)
}

impl PrymProblem {
    pub fn new(g: i64, r: i64, a: &[i64]) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall(g));
        }
        if r < 0 {
            return Err(Error::NegativeRank(r));
        }
        if a.len() as i64 != r + 1 {
            return Err(Error::VanishingLength {
                expected: (r + 1) as usize,
                got: a.len(),
            });
        }
        if a[0] < 0 {
            return Err(Error::NegativeVanishing(a[0]));
        }
        if let Some(k) = (1..a.len()).find(|&k| a[k] <= a[k - 1]) {
            return Err(Error::NotIncreasing(k));
        }
        let bound = 2 * g - 2;
        if a[a.len() - 1] > bound {
            return Err(Error::VanishingTooLarge {
                value: a[a.len() - 1],
                bound,
            });
        }
        let vanishing: Vec<u32> = a.iter().map(|&x| x as u32).collect();
        let lambda: Vec<u32> = vanishing.iter().rev().copied().filter(|&x| x > 0).collect();
        let len = lambda.len() as i64;
        let shifts = lambda
            .iter()
            .enumerate()
            .map(|(k, &part)| len - (k as i64 + 1) - i64::from(part) + 1)
            .collect();
        Ok(Self {
            genus: g as u32,
            rank: r as u32,
            vanishing,
            lambda,
            shifts,
        })
    }

    /// The problem with `a = λ` read backwards (`a = (0)` for empty `λ`).
    pub fn from_partition(g: i64, lambda: &[u32]) -> Result<Self> {
        if lambda.windows(2).any(|w| w[0] <= w[1]) || lambda.last() == Some(&0) {
            return Err(Error::NotStrict(lambda.to_vec()));
        }
        if lambda.is_empty() {
            return Self::new(g, 0, &[0]);
        }
        let a: Vec<i64> = lambda.iter().rev().map(|&x| i64::from(x)).collect();
        Self::new(g, a.len() as i64 - 1, &a)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn vanishing(&self) -> &[u32] {
        &self.vanishing
    }

    /// Strict partition, largest part first.
    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    /// `ℓ∘`, the number of nonzero parts.
    pub fn length(&self) -> usize {
        self.lambda.len()
    }

    /// `s_i = ℓ∘ - i - λ_i + 1` for `i = 1..=ℓ∘`.
    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    /// `|λ|`, the expected codimension.
    pub fn size(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// Dimension `g - 1` of the Prym variety.
    pub fn dim(&self) -> u32 {
        self.genus - 1
    }

    pub fn parity(&self) -> Parity {
        if self.rank % 2 == 1 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    /// Expected codimension exceeds the dimension, so class and χ vanish.
    pub fn expected_empty(&self) -> bool {
        self.size() > self.dim()
    }
}

/// Strict partitions (largest part first, empty one included) with
/// `|λ| <= max_size`, at most `max_len` parts, every part `<= max_part`.
pub fn strict_partitions(max_size: u32, max_len: usize, max_part: u32) -> Vec<Vec<u32>> {
    fn rec(
        prefix: &mut Vec<u32>,
        limit: u32,
        remaining: u32,
        max_len: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        out.push(prefix.clone());
        if prefix.len() == max_len {
            return;
        }
        for part in (1..=limit.min(remaining)).rev() {
            prefix.push(part);
            rec(prefix, part - 1, remaining - part, max_len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_part, max_size, max_len, &mut out);
    out
}

/// Every problem with `g` in `genera`, `ℓ∘ <= max_len`, parts `<= 2g-2` and
/// `|λ| <= g-1`.
pub fn problem_suite(genera: std::ops::RangeInclusive<u32>, max_len: usize) -> Vec<PrymProblem> {
    genera
        .flat_map(|g| {
            strict_partitions(g - 1, max_len, 2 * g - 2)
                .into_iter()
                .map(move |lambda| {
                    PrymProblem::from_partition(i64::from(g), &lambda)
                        .expect("valid by construction")
                })
        })
        .collect()
}

/// `count` problems with `|λ| > g-1`, spread over small genera.
pub fn empty_suite(count: usize) -> Vec<PrymProblem> {
    let mut all = Vec::new();
    for g in 2..=7u32 {
        for lambda in strict_partitions(g + 3, 3, 2 * g - 2) {
            let size: u32 = lambda.iter().sum();
            if size > g - 1 {
                all.push(PrymProblem::from_partition(i64::from(g), &lambda).expect("valid"));
            }
        }
    }
    let step = (all.len() / count.max(1)).max(1);
    all.into_iter().step_by(step).take(count).collect()
}
