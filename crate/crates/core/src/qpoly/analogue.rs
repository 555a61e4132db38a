//! `p,q`-analogues of integers, factorials and binomial coefficients.
//! The `q`-only versions are the `p = 1` specialisations.

use num_bigint::BigInt;

use super::{MultiPoly, Monomial, Var};
use crate::error::{Error, Result};

/// The ordinary binomial coefficient, `0` when `k > n`.
pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `[n]_{p,q} = p^{n-1} + p^{n-2} q + ... + q^{n-1}`, with `[0]_{p,q} = 0`.
pub fn pq_int(n: usize) -> MultiPoly {
    MultiPoly::from_terms((0..n).map(|i| {
        let mut e = [0u32; 5];
        e[Var::P as usize] = (n - 1 - i) as u32;
        e[Var::Q as usize] = i as u32;
        (Monomial(e), BigInt::from(1))
    }))
}

pub fn pq_factorial(n: usize) -> MultiPoly {
    (1..=n).fold(MultiPoly::one(), |acc, i| &acc * &pq_int(i))
}

/// `[n]! / ([k]! [n-k]!)` by exact polynomial division.
pub fn pq_binomial(n: usize, k: usize) -> Result<MultiPoly> {
    if k > n {
        return Err(Error::invalid(format!("binomial needs k <= n, got n={n}, k={k}")));
    }
    pq_factorial(n).exact_div(&(&pq_factorial(k) * &pq_factorial(n - k)))
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_int(n: usize) -> MultiPoly {
    MultiPoly::from_terms((0..n).map(|i| (Monomial::var(Var::Q, i as u32), BigInt::from(1))))
}

pub fn q_factorial(n: usize) -> MultiPoly {
    (1..=n).fold(MultiPoly::one(), |acc, i| &acc * &q_int(i))
}

pub fn q_binomial(n: usize, k: usize) -> Result<MultiPoly> {
    q_multinomial(n, &[k, n.checked_sub(k).ok_or_else(|| {
        Error::invalid(format!("binomial needs k <= n, got n={n}, k={k}"))
    })?])
}

/// `[n]_q! / ([b_1]_q! ... [b_k]_q!)`; the parts must sum to `n`.
pub fn q_multinomial(n: usize, parts: &[usize]) -> Result<MultiPoly> {
    if parts.iter().sum::<usize>() != n {
        return Err(Error::invalid(format!("parts {parts:?} do not sum to {n}")));
    }
    let denom = parts
        .iter()
        .fold(MultiPoly::one(), |acc, &b| &acc * &q_factorial(b));
    q_factorial(n).exact_div(&denom)
}
