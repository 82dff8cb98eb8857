//! Pfaffians of skew-symmetric matrices over an arbitrary [`Ring`].
//!
//! [`pfaffian_matchings`] expands along the first row, touching each of the
//! `(n-1)!!` perfect matchings once. [`pfaffian_permutations`] is the
//! normalized sum over all of `S_n`; it is far slower and exists to check the
//! matching expansion and to mirror formulas written in that shape.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::factorial_u;
use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::{Integer, Rational};

/// Square skew-symmetric matrix. Only the strict upper triangle is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<R> {
    n: usize,
    upper: Vec<R>,
    zero: R,
}

impl<R: Ring> SkewMatrix<R> {
    /// The `n × n` zero matrix; `zero` fixes the ring context (e.g. the
    /// truncation cap of series entries).
    pub fn zeros(n: usize, zero: R) -> Self {
        let zero = zero.zero_like();
        Self {
            n,
            upper: vec![zero.clone(); n * n.saturating_sub(1) / 2],
            zero,
        }
    }

    /// Builds from `f(i, j)` evaluated for every `i < j`.
    pub fn from_fn(n: usize, zero: R, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut m = Self::zeros(n, zero);
        for i in 0..n {
            for j in i + 1..n {
                let k = m.slot(i, j);
                m.upper[k] = f(i, j);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        assert!(i < self.n && j < self.n, "index out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.zero.clone(),
            std::cmp::Ordering::Less => self.upper[self.slot(i, j)].clone(),
            std::cmp::Ordering::Greater => -self.upper[self.slot(j, i)].clone(),
        }
    }

    /// Sets entry `(i, j)` and, implicitly, `(j, i)` to its negative.
    pub fn set(&mut self, i: usize, j: usize, value: R) {
        assert!(i != j, "diagonal of a skew matrix is fixed at zero");
        assert!(i < self.n && j < self.n, "index out of range");
        if i < j {
            let k = self.slot(i, j);
            self.upper[k] = value;
        } else {
            let k = self.slot(j, i);
            self.upper[k] = -value;
        }
    }

    /// Simultaneously swaps rows and columns `a` and `b`.
    pub fn swap_indices(&self, a: usize, b: usize) -> Self {
        let relabel = |x: usize| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        Self::from_fn(self.n, self.zero.clone(), |i, j| {
            self.get(relabel(i), relabel(j))
        })
    }

    /// Full dense form, row by row.
    pub fn to_dense(&self) -> Vec<Vec<R>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // row-major strict upper triangle
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }
}

/// Pfaffian as the signed sum over perfect matchings.
pub fn pfaffian_matchings<R: Ring>(m: &SkewMatrix<R>) -> Result<R> {
    if m.n % 2 == 1 {
        return Err(Error::OddPfaffian(m.n));
    }
    let idx: Vec<usize> = (0..m.n).collect();
    Ok(matchings_rec(m, &idx))
}

fn matchings_rec<R: Ring>(m: &SkewMatrix<R>, idx: &[usize]) -> R {
    let Some((&first, rest)) = idx.split_first() else {
        return m.zero.one_like();
    };
    let mut acc = m.zero.clone();
    for (k, &j) in rest.iter().enumerate() {
        let a = m.get(first, j);
        if a.is_zero_elem() {
            continue;
        }
        let minor: Vec<usize> = rest.iter().copied().filter(|&x| x != j).collect();
        let term = a * matchings_rec(m, &minor);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Pfaffian as `1/(2^{n/2} (n/2)!) Σ_{σ∈S_n} sgn(σ) Π_j m_{σ(2j-1) σ(2j)}`.
pub fn pfaffian_permutations<R: Ring>(m: &SkewMatrix<R>) -> Result<R> {
    let n = m.n;
    if n % 2 == 1 {
        return Err(Error::OddPfaffian(n));
    }
    let mut acc = m.zero.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    permutations_rec(m, &mut remaining, m.zero.one_like(), false, &mut acc);
    let half = (n / 2) as u64;
    let norm = (Integer::one() << half) * factorial_u(half);
    Ok(acc.div_integer(&norm))
}

// Walks S_n in one-line order, two positions at a time. Placing the element
// at index k of the sorted remaining set adds k inversions.
fn permutations_rec<R: Ring>(
    m: &SkewMatrix<R>,
    remaining: &mut Vec<usize>,
    prefix: R,
    odd: bool,
    acc: &mut R,
) {
    if remaining.is_empty() {
        let term = std::mem::replace(acc, m.zero.clone());
        *acc = if odd { term - prefix } else { term + prefix };
        return;
    }
    for ka in 0..remaining.len() {
        let a = remaining.remove(ka);
        for kb in 0..remaining.len() {
            let b = remaining.remove(kb);
            let entry = m.get(a, b);
            if !entry.is_zero_elem() {
                let flip = (ka + kb) % 2 == 1;
                permutations_rec(m, remaining, prefix.clone() * entry, odd ^ flip, acc);
            }
            remaining.insert(kb, b);
        }
        remaining.insert(ka, a);
    }
}

/// Parity of a permutation given in one-line notation over any ordered labels.
pub fn permutation_is_odd<T: Ord>(perm: &[T]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Prepends an index 0 to an odd-size skew matrix with `m_{0j} = row0[j-1]`.
///
/// The result has size `ℓ + 1` with the original entries shifted by one.
pub fn augment_odd<R: Ring>(m: &SkewMatrix<R>, row0: Vec<R>) -> Result<SkewMatrix<R>> {
    if row0.len() != m.n {
        return Err(Error::AugmentLength {
            expected: m.n,
            got: row0.len(),
        });
    }
    let mut row0 = row0.into_iter().map(Some).collect::<Vec<_>>();
    Ok(SkewMatrix::from_fn(m.n + 1, m.zero.clone(), |i, j| {
        if i == 0 {
            row0[j - 1].take().expect("row entry used once")
        } else {
            m.get(i - 1, j - 1)
        }
    }))
}

/// Determinant of a square rational matrix by fraction-free (Bareiss)
/// elimination over the integers.
///
/// Rows are first cleared of denominators; the determinant of the scaled
/// integer matrix is divided back out at the end.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Integer::one();
    let mut a: Vec<Vec<Integer>> = rows
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            let l = row.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();

    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = Integer::zero();
        }
        prev = a[k][k].clone();
    }
    let det = sign * a[n - 1][n - 1].clone();
    debug_assert!(scale.is_positive());
    Rational::new(det, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ThetaPoly;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn upper4(m12: i64, m13: i64, m14: i64, m23: i64, m24: i64, m34: i64) -> SkewMatrix<Rational> {
        let vals = [[0, m12, m13, m14], [0, 0, m23, m24], [0, 0, 0, m34]];
        SkewMatrix::from_fn(4, q(0), |i, j| q(vals[i][j]))
    }

    #[test]
    fn two_by_two() {
        let m = SkewMatrix::from_fn(2, q(0), |_, _| q(7));
        assert_eq!(pfaffian_matchings(&m).unwrap(), q(7));
        assert_eq!(pfaffian_permutations(&m).unwrap(), q(7));
        assert_eq!(m.get(1, 0), q(-7));
        assert_eq!(m.get(1, 1), q(0));
    }

    #[test]
    fn four_by_four_textbook() {
        let m = upper4(2, 3, 5, 7, 11, 13);
        // m12 m34 - m13 m24 + m14 m23
        let expected = q(2 * 13 - 3 * 11 + 5 * 7);
        assert_eq!(pfaffian_matchings(&m).unwrap(), expected);
        assert_eq!(pfaffian_permutations(&m).unwrap(), expected);
    }

    #[test]
    fn square_is_determinant() {
        let m = upper4(2, -3, 5, 7, 1, -4);
        let pf = pfaffian_matchings(&m).unwrap();
        assert_eq!(determinant(&m.to_dense()), pf.clone() * pf);
    }

    #[test]
    fn empty_pfaffian_is_one() {
        let m = SkewMatrix::zeros(0, q(0));
        assert_eq!(pfaffian_matchings(&m).unwrap(), q(1));
        assert_eq!(pfaffian_permutations(&m).unwrap(), q(1));
    }

    #[test]
    fn odd_size_rejected() {
        let m = SkewMatrix::zeros(3, q(0));
        assert_eq!(pfaffian_matchings(&m), Err(Error::OddPfaffian(3)));
        assert_eq!(pfaffian_permutations(&m), Err(Error::OddPfaffian(3)));
    }

    #[test]
    fn augment_single() {
        let m = SkewMatrix::zeros(1, q(0));
        let aug = augment_odd(&m, vec![q(4)]).unwrap();
        assert_eq!(pfaffian_matchings(&aug).unwrap(), q(4));
    }

    #[test]
    fn augment_three_expands_along_row_zero() {
        let (m12, m13, m23) = (q(2), q(3), q(5));
        let inner = SkewMatrix::from_fn(3, q(0), |i, j| match (i, j) {
            (0, 1) => m12.clone(),
            (0, 2) => m13.clone(),
            _ => m23.clone(),
        });
        let (a, b, c) = (q(7), q(11), q(13));
        let aug = augment_odd(&inner, vec![a.clone(), b.clone(), c.clone()]).unwrap();
        assert_eq!(aug.size(), 4);
        assert_eq!(
            pfaffian_matchings(&aug).unwrap(),
            a * m23 - b * m13 + c * m12
        );
    }

    #[test]
    fn augment_with_repeated_row_is_singular() {
        // Index 0 copies row 1 (minus its own entry): Pf then has a closed
        // value computed by hand, and Pf² = det must still hold.
        let inner = SkewMatrix::from_fn(3, q(0), |i, j| q((3 * i + j + 1) as i64));
        let row0 = vec![q(0), inner.get(0, 1), inner.get(0, 2)];
        let aug = augment_odd(&inner, row0).unwrap();
        let pf = pfaffian_matchings(&aug).unwrap();
        // m01 m23 - m02 m13 + m03 m12 with m01 = 0, m02 = m12, m03 = m13
        let expected = -inner.get(0, 1) * inner.get(0, 2) + inner.get(0, 2) * inner.get(0, 1);
        assert_eq!(pf, expected);
        assert_eq!(determinant(&aug.to_dense()), pf.clone() * pf);
    }

    #[test]
    fn augment_length_mismatch() {
        let m = SkewMatrix::zeros(3, q(0));
        assert_eq!(
            augment_odd(&m, vec![q(1)]).unwrap_err(),
            Error::AugmentLength {
                expected: 3,
                got: 1
            }
        );
    }

    #[test]
    fn swap_negates() {
        let m = upper4(1, 4, -2, 3, 9, 5);
        let pf = pfaffian_matchings(&m).unwrap();
        assert_eq!(pfaffian_matchings(&m.swap_indices(1, 3)).unwrap(), -pf);
    }

    #[test]
    fn series_entries() {
        let x = ThetaPoly::monomial(q(1), 1, 3);
        let m = SkewMatrix::from_fn(2, ThetaPoly::zero(3), |_, _| x.clone());
        assert_eq!(pfaffian_matchings(&m).unwrap(), x);
        let e = SkewMatrix::zeros(0, ThetaPoly::zero(3));
        assert_eq!(pfaffian_matchings(&e).unwrap(), ThetaPoly::one(3));
    }

    #[test]
    fn determinant_simple() {
        let rows = vec![vec![q(0), q(1)], vec![q(2), q(3)]];
        assert_eq!(determinant(&rows), q(-2));
        let half = Rational::new(1.into(), 2.into());
        let rows = vec![vec![half.clone(), q(1)], vec![q(1), half]];
        assert_eq!(determinant(&rows), Rational::new((-3).into(), 4.into()));
    }
}
