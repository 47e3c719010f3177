//! q-analog combinatorics: `[N]_q`, q-factorials, Gaussian binomial
//! coefficients, and subspace counts.
//!
//! Everything is computed from the summation/product forms, never the
//! `(q^N - 1)/(q - 1)` quotient, so `q = 1` needs no special-casing and the
//! degeneration to ordinary integers, factorials, and binomials is literal.
//! A brute-force subspace enumeration over the actual vector space serves as
//! an independent oracle for the closed-form counts.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf::{factor_prime_power, FieldCtx};
use crate::{Error, Result};

/// Exact non-negative integer; q-analog quantities never leave the integers.
pub type QInt = BigUint;

/// `[N]_q = 1 + q + ... + q^(N-1)`, by summation. `[N]_1 = N`, `[0]_q = 0`.
pub fn q_int(n: u64, q: u64) -> QInt {
    assert!(q >= 1, "q-analogs need q >= 1");
    let q = BigUint::from(q);
    let mut sum = QInt::zero();
    let mut power = QInt::one();
    for _ in 0..n {
        sum += &power;
        power *= &q;
    }
    sum
}

/// `[N]_q! = [N]_q [N-1]_q ... [1]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: u64, q: u64) -> QInt {
    let mut acc = QInt::one();
    for k in 1..=n {
        acc *= q_int(k, q);
    }
    acc
}

/// Gaussian binomial `[N over M]_q = [N]_q! / ([M]_q! [N-M]_q!)`.
/// The division is always exact; at `q = 1` this is the binomial coefficient.
pub fn gaussian_binomial(n: u64, m: u64, q: u64) -> Result<QInt> {
    if m > n {
        return Err(Error::InvalidArgs(format!("gaussian binomial needs M <= N, got M={m}, N={n}")));
    }
    let numer = q_factorial(n, q);
    let denom = q_factorial(m, q) * q_factorial(n - m, q);
    let (quot, rem) = num_integer::Integer::div_rem(&numer, &denom);
    debug_assert!(rem.is_zero(), "q-binomial division left a remainder");
    Ok(quot)
}

/// Number of k-dimensional projective subspaces of `PG(N-1, q)`, i.e. of
/// (k+1)-dimensional linear subspaces of the N-dimensional space.
/// `k = -1` denotes the empty subspace (count 1).
pub fn subspace_count(n: u64, k: i64, q: u64) -> Result<QInt> {
    if k < -1 {
        return Err(Error::InvalidArgs(format!("subspace dimension k={k} below -1")));
    }
    gaussian_binomial(n, (k + 1) as u64, q)
}

/// Number of projective points inside one k-dimensional subspace: `[k+1]_q`.
pub fn points_per_subspace(k: i64, q: u64) -> QInt {
    assert!(k >= -1);
    q_int((k + 1) as u64, q)
}

/// Enumeration cap for the brute-force oracle: `q^N` vectors.
pub const BRUTE_FORCE_CAP: u64 = 1_000_000;

/// Independent oracle: count (k+1)-dimensional linear subspaces of
/// `GF(q)^N` by growing and closing spans, deduplicated on their full
/// membership sets. Must agree with [`subspace_count`].
pub fn brute_force_subspace_count(n: u32, k: i64, q: u64) -> Result<QInt> {
    let (p, deg) = factor_prime_power(q).ok_or(Error::InvalidField(q))?;
    if k < -1 || (k + 1) as u64 > n as u64 {
        return Err(Error::InvalidArgs(format!("k={k} out of range for N={n}")));
    }
    let total = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(q).filter(|&v| v <= BRUTE_FORCE_CAP)
    });
    if total.is_none() {
        return Err(Error::TooLarge(format!("q^N = {q}^{n} exceeds {BRUTE_FORCE_CAP}")));
    }
    let ctx = FieldCtx::new(p, deg)?;
    let dim = n as usize;
    let qe = ctx.enumerate_elements();

    // Vectors as base-q indices; component i contributes enc * q^i.
    let total = total.unwrap() as usize;
    let decode_vec = |mut idx: usize| -> Vec<u64> {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            v.push((idx as u64) % q);
            idx /= q as usize;
        }
        v
    };
    let encode_vec = |v: &[u64]| -> usize {
        v.iter().rev().fold(0usize, |acc, &e| acc * q as usize + e as usize)
    };
    let add_scaled = |base: &[u64], scale: &crate::gf::FieldElement, other: &[u64]| -> Vec<u64> {
        base.iter()
            .zip(other)
            .map(|(&b, &o)| {
                let sb = ctx.decode(b);
                let so = ctx.mul(scale, &ctx.decode(o)).unwrap();
                ctx.encode(&ctx.add(&sb, &so).unwrap())
            })
            .collect()
    };

    // Level d holds every d-dimensional subspace as the sorted set of its
    // member vector indices.
    let mut level: BTreeSet<Vec<usize>> = BTreeSet::new();
    level.insert(vec![0]);
    for _ in 0..(k + 1) {
        let mut next = BTreeSet::new();
        for sub in &level {
            for v in 1..total {
                if sub.binary_search(&v).is_ok() {
                    continue;
                }
                let vdec = decode_vec(v);
                let mut span: Vec<usize> = Vec::with_capacity(sub.len() * q as usize);
                for &s in sub {
                    let sdec = decode_vec(s);
                    for c in &qe {
                        span.push(encode_vec(&add_scaled(&sdec, c, &vdec)));
                    }
                }
                span.sort_unstable();
                span.dedup();
                next.insert(span);
            }
        }
        level = next;
    }
    Ok(QInt::from(level.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(v: u64) -> QInt {
        QInt::from(v)
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(2, 3), qi(4));
        assert_eq!(q_int(4, 1), qi(4));
        assert_eq!(q_int(0, 7), qi(0));
        assert_eq!(q_int(3, 2), qi(7));
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(3, 1), qi(6));
        assert_eq!(q_factorial(2, 2), qi(3));
        assert_eq!(q_factorial(3, 2), qi(21));
        assert_eq!(q_factorial(0, 5), qi(1));
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(4, 2, 1).unwrap(), qi(6));
        assert_eq!(gaussian_binomial(2, 1, 5).unwrap(), qi(6));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), qi(35));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn subspace_count_examples() {
        assert_eq!(subspace_count(3, 1, 2).unwrap(), qi(7)); // lines of the Fano plane
        assert_eq!(subspace_count(3, 1, 1).unwrap(), qi(3));
        assert_eq!(subspace_count(2, 0, 7).unwrap(), qi(8));
        assert_eq!(points_per_subspace(1, 2), qi(3));
        assert_eq!(points_per_subspace(-1, 5), qi(0));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_subspace_count(2, 0, 3).unwrap(), qi(4));
        assert_eq!(brute_force_subspace_count(4, 1, 2).unwrap(), qi(35));
        assert_eq!(brute_force_subspace_count(3, 2, 2).unwrap(), qi(1));
        assert_eq!(brute_force_subspace_count(3, -1, 2).unwrap(), qi(1));
    }

    #[test]
    fn oracle_matches_closed_form() {
        for q in [2u64, 3] {
            for n in 1..=4u32 {
                for k in -1..=(n as i64 - 1) {
                    assert_eq!(
                        brute_force_subspace_count(n, k, q).unwrap(),
                        subspace_count(n as u64, k, q).unwrap(),
                        "N={n}, k={k}, q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_rejects_non_prime_powers() {
        assert_eq!(brute_force_subspace_count(2, 0, 6).unwrap_err(), Error::InvalidField(6));
    }

    #[test]
    fn symmetry_and_degeneration() {
        for n in 0..=6u64 {
            for m in 0..=n {
                for q in 1..=5u64 {
                    assert_eq!(
                        gaussian_binomial(n, m, q).unwrap(),
                        gaussian_binomial(n, n - m, q).unwrap()
                    );
                }
            }
        }
        // q = 1 degeneration: [N]_1 = N, [N]_1! = N!, binomials.
        let mut fact = qi(1);
        for n in 1..=8u64 {
            fact *= qi(n);
            assert_eq!(q_int(n, 1), qi(n));
            assert_eq!(q_factorial(n, 1), fact);
        }
        assert_eq!(gaussian_binomial(8, 3, 1).unwrap(), qi(56));
    }
}
