//! Gaussian binomial coefficients.
//!
//! The Gaussian (q-)binomial `[n k]_q` is the polynomial counting partitions
//! fitting in a `k × (n-k)` box by area; it has degree `k(n-k)` and
//! specializes to the ordinary binomial at `q = 1`. The primary construction
//! here is the Pascal-style recurrence
//! `[n k] = [n-1 k-1] + q^k [n-1 k]`, which stays in polynomial arithmetic;
//! the quotient of factorials `(q)_n / ((q)_k (q)_{n-k})` is provided as an
//! independent cross-check route.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{pochhammer, Coeff, ExpVec, Series, TruncationSpec, Var};

/// Exact coefficient vector of `[n k]_q` (index = power of `q`), computed by
/// the Pascal-style recurrence. Out-of-range `k` gives the zero polynomial.
pub fn qbinomial_coeffs(n: u32, k: u32) -> Vec<Coeff> {
    if k > n {
        return vec![Coeff::zero()];
    }
    let k = k.min(n - k);
    // row = [i j] for the current i, built up from i = j = 0.
    let mut row: Vec<Vec<Coeff>> = vec![vec![Coeff::one()]];
    for i in 1..=n {
        let jmax = k.min(i);
        let mut next: Vec<Vec<Coeff>> = Vec::with_capacity(jmax as usize + 1);
        for j in 0..=jmax {
            if j == 0 {
                next.push(vec![Coeff::one()]);
                continue;
            }
            if j == i {
                next.push(vec![Coeff::one()]);
                continue;
            }
            // [i j] = [i-1 j-1] + q^j [i-1 j], degree j(i-j).
            let deg = (j * (i - j)) as usize;
            let mut poly = vec![Coeff::zero(); deg + 1];
            for (d, c) in row[(j - 1) as usize].iter().enumerate() {
                poly[d] += c;
            }
            for (d, c) in row[j as usize].iter().enumerate() {
                poly[d + j as usize] += c;
            }
            next.push(poly);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `[n k]_q` as a truncated series (polynomial of degree `k(n-k)`).
///
/// Exponents beyond the truncation bound are skipped up front: the degree
/// `k(n-k)` can dwarf `qmax`, and dead terms must not be materialized at all
/// (the series layer treats far-out-of-range exponents as an internal bug).
pub fn qbinomial(spec: &TruncationSpec, n: u32, k: u32) -> Result<Series> {
    let coeffs = qbinomial_coeffs(n, k);
    Series::from_terms(
        spec,
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(d, _)| *d <= spec.qmax() as usize)
            .map(|(d, c)| (ExpVec::of(&[(Var::Q, d as i32)]), c)),
    )
}

/// `[n k]_q` with every power `q^j` replaced by `q^{offset + step*j}`.
///
/// `step` may be negative (used for reciprocal-argument specializations);
/// the combination must stay a genuine polynomial, so a resulting negative
/// exponent on a nonzero coefficient is an error.
pub fn qbinomial_substituted(
    spec: &TruncationSpec,
    n: u32,
    k: u32,
    step: i32,
    offset: i32,
) -> Result<Series> {
    let coeffs = qbinomial_coeffs(n, k);
    let mut terms = Vec::new();
    for (j, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = offset + step * j as i32;
        if e < 0 {
            return Err(Error::InvalidExponent {
                var: Var::Q.name(),
                exponent: e,
                reason: "substituted Gaussian binomial is not a polynomial",
            });
        }
        // Same dead-term policy as `qbinomial`: offsets like `m^2 - 4j` can
        // reach far past the truncation bound, so drop those terms here.
        if e > spec.qmax() as i32 {
            continue;
        }
        terms.push((ExpVec::of(&[(Var::Q, e)]), c));
    }
    Series::from_terms(spec, terms)
}

/// Cross-check route: `(q)_n / ((q)_k (q)_{n-k})` computed with truncated
/// inversion. Agrees with [`qbinomial`] up to the spec's truncation.
pub fn qbinomial_quotient(spec: &TruncationSpec, n: u32, k: u32) -> Result<Series> {
    if k > n {
        return Ok(Series::zero(spec));
    }
    let q = Series::monomial(spec, 1, &[(Var::Q, 1)])?;
    let num = pochhammer(&q, n)?;
    let den = pochhammer(&q, k)?.mul(&pochhammer(&q, n - k)?)?;
    num.mul(&den.invert()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(qmax: u32) -> TruncationSpec {
        TruncationSpec::new(qmax, &[])
    }

    #[test]
    fn four_choose_two_expands() {
        // [4 2] = 1 + q + 2q^2 + q^3 + q^4
        let b = qbinomial(&spec(10), 4, 2).unwrap();
        let expect: [i64; 5] = [1, 1, 2, 1, 1];
        for (d, c) in expect.iter().enumerate() {
            assert_eq!(b.coeff(&[(Var::Q, d as i32)]), Coeff::from(*c));
        }
        assert_eq!(b.num_terms(), 5);
    }

    #[test]
    fn symmetry_in_k() {
        for n in 0..=8u32 {
            for k in 0..=n {
                assert_eq!(qbinomial_coeffs(n, k), qbinomial_coeffs(n, n - k));
            }
        }
    }

    #[test]
    fn specializes_to_binomial_at_q_one() {
        let mut pascal = vec![vec![Coeff::one()]];
        for n in 1..=9usize {
            let prev = &pascal[n - 1];
            let mut row = vec![Coeff::one()];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(Coeff::one());
            pascal.push(row);
        }
        for n in 0..=9u32 {
            for k in 0..=n {
                let total: Coeff = qbinomial_coeffs(n, k).into_iter().sum();
                assert_eq!(total, pascal[n as usize][k as usize]);
            }
        }
    }

    #[test]
    fn quotient_route_matches_recurrence_route() {
        let sp = spec(12);
        for n in 0..=7u32 {
            for k in 0..=n {
                let a = qbinomial(&sp, n, k).unwrap();
                let b = qbinomial_quotient(&sp, n, k).unwrap();
                assert_eq!(a, b, "[{n} {k}]");
            }
        }
    }

    #[test]
    fn vandermonde_convolution() {
        // [m+n k] = sum_j q^{j(m-k+j)} [m k-j] [n j]
        let sp = spec(30);
        let (m, n) = (4u32, 3u32);
        for k in 0..=(m + n) {
            let lhs = qbinomial(&sp, m + n, k).unwrap();
            let mut rhs = Series::zero(&sp);
            for j in 0..=k.min(n) {
                if k - j > m {
                    continue;
                }
                let e = (j as i32) * (m as i32 - k as i32 + j as i32);
                if e < 0 {
                    continue;
                }
                let part = qbinomial(&sp, m, k - j)
                    .unwrap()
                    .mul(&qbinomial(&sp, n, j).unwrap())
                    .unwrap()
                    .mul_monomial(1, &ExpVec::of(&[(Var::Q, e)]))
                    .unwrap();
                rhs = rhs.add(&part).unwrap();
            }
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn substituted_binomial_scales_exponents() {
        // [3 1]_{q^4} shifted by q^2: q^2 + q^6 + q^10
        let b = qbinomial_substituted(&spec(12), 3, 1, 4, 2).unwrap();
        for e in [2, 6, 10] {
            assert_eq!(b.coeff(&[(Var::Q, e)]), Coeff::from(1));
        }
        assert_eq!(b.num_terms(), 3);
        // A substitution that would go negative is rejected.
        assert!(qbinomial_substituted(&spec(12), 3, 1, -4, 2).is_err());
    }
}
