//! A direct, dependency-light re-derivation of χ used as a reference for the
//! library's two routes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use prym_core::prym::{euler_oracle, euler_theorem, problem_suite};

type Q = BigRational;
type Poly = Vec<Q>;

fn fact(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        BigInt::zero()
    } else {
        fact(n) / (fact(k) * fact(n - k))
    }
}

fn binom_any(s: i64, t: i64) -> Q {
    let mut num = BigInt::one();
    for k in 0..t {
        num *= s - k;
    }
    Q::new(num, fact(t))
}

fn prefactor(s: i64, v: i64) -> Q {
    (0..=v)
        .map(|k| {
            let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
            sign * binom_any(s, v - k) / Q::from_integer(BigInt::from(2).pow((k + 1) as u32))
        })
        .sum()
}

fn interaction(l: i64, m: i64) -> Q {
    let sign = if (l + m) % 2 == 0 { 1 } else { -1 };
    if l == 0 {
        return Q::from_integer(BigInt::from(sign));
    }
    Q::from_integer(BigInt::from(sign) * (choose(l + m - 1, m) + choose(l + m, m)))
}

fn d(j: i64, cap: i64) -> Poly {
    let mut p = vec![Q::zero(); cap as usize + 1];
    if (0..=cap).contains(&j) {
        p[j as usize] = Q::new(BigInt::one(), fact(j));
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut r = vec![Q::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            r[i + j] += x * y;
        }
    }
    r
}

fn add(a: &mut Poly, b: &Poly, c: &Q) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y * c;
    }
}

fn pf(m: &[Vec<Poly>], idx: &[usize], cap: i64) -> Poly {
    if idx.is_empty() {
        return d(0, cap);
    }
    let mut total = vec![Q::zero(); cap as usize + 1];
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        add(
            &mut total,
            &mul(&m[idx[0]][idx[k]], &pf(m, &rest, cap)),
            &sign,
        );
    }
    total
}

fn reference_chi(g: i64, lambda: &[i64]) -> Q {
    let cap = g - 1;
    let n = lambda.len();
    let s: Vec<i64> = (0..n)
        .map(|i| n as i64 - (i as i64 + 1) - lambda[i] + 1)
        .collect();
    let off = n % 2;
    let size = n + off;
    let mut m = vec![vec![vec![Q::zero(); cap as usize + 1]; size]; size];
    if off == 1 {
        for j in 0..n {
            let mut r = vec![Q::zero(); cap as usize + 1];
            for v in 0..=cap {
                add(&mut r, &d(lambda[j] + v, cap), &prefactor(s[j], v));
            }
            m[0][j + 1] = r;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut r = vec![Q::zero(); cap as usize + 1];
            for vi in 0..=cap {
                for vj in 0..=cap {
                    let c = prefactor(s[i], vi) * prefactor(s[j], vj);
                    for l in 0..=cap {
                        for mm in 0..=cap {
                            if lambda[j] + vj - l < 0 || lambda[i] + vi + mm + lambda[j] + vj > cap
                            {
                                continue;
                            }
                            let prod = mul(
                                &d(lambda[i] + vi + l + mm, cap),
                                &d(lambda[j] + vj - l, cap),
                            );
                            add(&mut r, &prod, &(&c * interaction(l, mm)));
                        }
                    }
                }
            }
            let neg: Poly = r.iter().map(|x| -x).collect();
            m[i + off][j + off] = r;
            m[j + off][i + off] = neg;
        }
    }
    if off == 1 {
        let row0 = m[0].clone();
        for (row, entry) in m.iter_mut().zip(&row0).skip(1) {
            row[0] = entry.iter().map(|x| -x).collect();
        }
    }
    let idx: Vec<usize> = (0..size).collect();
    let top = pf(&m, &idx, cap)[cap as usize].clone();
    top * Q::from_integer(BigInt::from(2).pow(cap as u32) * fact(cap))
}

#[test]
fn both_routes_match_reference() {
    for p in problem_suite(2..=6, 4) {
        let lambda: Vec<i64> = p.lambda().iter().map(|&x| i64::from(x)).collect();
        let expected = reference_chi(i64::from(p.genus()), &lambda);
        assert_eq!(
            euler_oracle(&p),
            expected,
            "oracle g={} λ={lambda:?}",
            p.genus()
        );
        assert_eq!(
            euler_theorem(&p),
            expected,
            "theorem g={} λ={lambda:?}",
            p.genus()
        );
    }
}

#[test]
fn tabulated_values() {
    let table: &[(i64, &[i64], i64)] = &[
        (5, &[4], 8),
        (5, &[3], -20),
        (5, &[2, 1], -8),
        (6, &[3, 2], 16),
        (6, &[3, 1], -60),
        (7, &[3, 2, 1], 16),
        (7, &[4, 1], -248),
    ];
    for &(g, lambda, chi) in table {
        assert_eq!(
            reference_chi(g, lambda),
            Q::from_integer(chi.into()),
            "g={g} λ={lambda:?}"
        );
    }
}
