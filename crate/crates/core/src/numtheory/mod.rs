//! Elementary and cyclotomic number theory, plus small finite fields for the
//! brute-force oracles.
//!
//! All functions here are pure and exact.  Scalar inputs are desk-scale
//! (`u64`); polynomial and cyclotomic coefficients are arbitrary precision.

mod cyclotomic;
mod ff;
mod poly;

pub use cyclotomic::{as_rational_integer, cyclo_reduce, cyclotomic_poly, CyclotomicElement};
pub use ff::{FieldDescriptor, FieldElement, FqPoly};
pub use poly::IntPoly;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("argument must be positive, got 0")]
    ZeroArgument,
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in a finite field")]
    ZeroInversion,
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// All positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pe = 1u64;
        for _ in 0..=e {
            for d in &divs {
                next.push(d * pe);
            }
            pe = pe.saturating_mul(p);
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

/// Möbius function μ(n): 0 on non-squarefree n, else (−1)^{#prime factors}.
pub fn moebius(n: u64) -> Result<i64, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    let mut mu = 1i64;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        mu = -mu;
    }
    Ok(mu)
}

/// Euler totient φ(n).
pub fn euler_phi(n: u64) -> Result<u64, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Ramanujan sum c_n(i) = Σ_{d | (n,i)} μ(n/d)·d, the sum of i-th powers of
/// the primitive n-th roots of unity.  Negative i gives the same value as |i|.
pub fn ramanujan_sum(n: u64, i: i64) -> Result<i64, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    let i = i.unsigned_abs() % n;
    // gcd(n, 0) = n covers the case n | i.
    let g = gcd(n, i);
    let mut sum = 0i64;
    for d in divisors(g) {
        sum += moebius(n / d)? * d as i64;
    }
    Ok(sum)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
