//! Periodic integer-valued functions and their certification as Lefschetz-type
//! functions, plus the four orbit functions α, β, γ, ω of a permutation given
//! by its cycle type.
//!
//! A function h: ℕ* → ℤ is of Lefschetz type when h(k) = Σ m_i ζ_n^{ik} with
//! integer m_i.  For a periodic f of period n this holds iff every discrete
//! Fourier coefficient S_i = Σ_j f(j) ζ_n^{−ij} is a rational integer
//! divisible by n; the check is done exactly in ℤ[ζ_n].

use crate::numtheory::{
    as_rational_integer, cyclo_reduce, gcd, lcm, CyclotomicElement, NumTheoryError,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LefschetzError {
    #[error("periodic function value f({k}) = {value} is not an integer")]
    NonIntegerValue { k: usize, value: BigRational },
    #[error("period must be positive")]
    EmptyPeriod,
    #[error("degree multiset must be nonempty")]
    EmptyMultiset,
    #[error("decomposition evaluated to a non-rational cyclotomic element at k={k}")]
    CorruptDecomposition { k: u64 },
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// Integer-valued (after certification) function of period n, stored as one
/// period f(1), …, f(n).  Rationals are admitted so that combinations such as
/// c/2 + b/2 can be formed before certification.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicFn {
    values: Vec<BigRational>,
}

impl PeriodicFn {
    pub fn new(values: Vec<BigRational>) -> Result<Self, LefschetzError> {
        if values.is_empty() {
            return Err(LefschetzError::EmptyPeriod);
        }
        Ok(PeriodicFn { values })
    }

    pub fn from_integers(values: Vec<BigInt>) -> Result<Self, LefschetzError> {
        Self::new(values.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// f(k) for k ≥ 1 by periodic extension.
    pub fn eval(&self, k: u64) -> &BigRational {
        let n = self.values.len() as u64;
        &self.values[((k - 1) % n) as usize]
    }

    /// Pointwise combination of two functions over the lcm of their periods.
    pub fn combine<F>(&self, other: &PeriodicFn, f: F) -> PeriodicFn
    where
        F: Fn(&BigRational, &BigRational) -> BigRational,
    {
        let n = lcm(self.period() as u64, other.period() as u64);
        let values = (1..=n).map(|k| f(self.eval(k), other.eval(k))).collect();
        PeriodicFn { values }
    }
}

/// Certified decomposition f(k) = Σ_{i=1..n} m_i ζ_n^{ik} with integer m_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzDecomp {
    period: u64,
    /// coeffs[i−1] = m_i for residues i = 1..n.
    coeffs: Vec<BigInt>,
}

/// Witness returned when certification fails: the first index i whose Fourier
/// coefficient S_i/n is not a rational integer.
#[derive(Clone, Debug)]
pub struct Rejection {
    pub index: u64,
    /// S_i reduced into the Φ_n power basis.
    pub fourier_coeff: CyclotomicElement,
    /// S_i/n when S_i is rational but not divisible by n.
    pub rational_value: Option<BigRational>,
}

impl LefschetzDecomp {
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn coeff(&self, i: u64) -> &BigInt {
        &self.coeffs[(i - 1) as usize]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

/// Exact certification of Eq.-(integer) type: accepts iff every
/// S_i = Σ_{j=1..n} f(j) ζ_n^{−ij} is a rational integer divisible by n,
/// returning m_i = S_i/n.  Non-integer input values are an error (not a
/// rejection); a failed integrality test is a rejection with witness.
pub fn certify_periodic(
    f: &PeriodicFn,
) -> Result<Result<LefschetzDecomp, Rejection>, LefschetzError> {
    let n = f.period() as u64;
    let mut ints = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let v = f.eval(k);
        if !v.is_integer() {
            return Err(LefschetzError::NonIntegerValue {
                k: k as usize,
                value: v.clone(),
            });
        }
        ints.push(v.to_integer());
    }
    let big_n = BigInt::from(n);
    let mut coeffs = Vec::with_capacity(n as usize);
    for i in 1..=n {
        // Accumulate Σ_j f(j) ζ^{−ij} as a raw length-n vector, reduce once.
        let mut raw = vec![BigInt::zero(); n as usize];
        for (j, fj) in ints.iter().enumerate() {
            let j = (j + 1) as u64;
            let e = ((n - (i * j) % n) % n) as usize;
            raw[e] += fj;
        }
        let s_i = cyclo_reduce(&raw, n)?;
        match as_rational_integer(&s_i) {
            Some(v) => {
                let (q, r) = num_integer::Integer::div_rem(&v, &big_n);
                if !r.is_zero() {
                    return Ok(Err(Rejection {
                        index: i,
                        fourier_coeff: s_i,
                        rational_value: Some(BigRational::new(v, big_n.clone())),
                    }));
                }
                coeffs.push(q);
            }
            None => {
                return Ok(Err(Rejection {
                    index: i,
                    fourier_coeff: s_i,
                    rational_value: None,
                }));
            }
        }
    }
    Ok(Ok(LefschetzDecomp { period: n, coeffs }))
}

/// Exact evaluation Σ_i m_i ζ_n^{ik}; the sum must land in ℤ.
pub fn eval_decomp(d: &LefschetzDecomp, k: u64) -> Result<BigInt, LefschetzError> {
    let n = d.period;
    let mut raw = vec![BigInt::zero(); n as usize];
    for (idx, m) in d.coeffs.iter().enumerate() {
        let i = (idx + 1) as u64;
        let e = ((i % n) * (k % n) % n) as usize;
        raw[e] += m;
    }
    let elem = cyclo_reduce(&raw, n)?;
    as_rational_integer(&elem).ok_or(LefschetzError::CorruptDecomposition { k })
}

/// Multiset of orbit (closed point) degrees of a permutation acting on a
/// finite set; only the cycle type matters for the four orbit functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMultiset {
    degrees: Vec<u64>,
}

impl DegreeMultiset {
    pub fn new(mut degrees: Vec<u64>) -> Result<Self, LefschetzError> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(LefschetzError::EmptyMultiset);
        }
        degrees.sort_unstable();
        Ok(DegreeMultiset { degrees })
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Total number of underlying points, Σ d_v.
    pub fn total(&self) -> u64 {
        self.degrees.iter().sum()
    }

    /// Number of orbits of τ^k: Σ gcd(d_v, k).
    pub fn orbit_count(&self, k: u64) -> u64 {
        self.degrees.iter().map(|&d| gcd(d, k)).sum()
    }

    /// Are all orbits of τ^k of odd length?
    pub fn all_orbits_odd(&self, k: u64) -> bool {
        self.degrees.iter().all(|&d| (d / gcd(d, k)) % 2 == 1)
    }
}

/// α(k): |A| when τ^k is a single cycle on A, else 0.  τ^k is cyclic exactly
/// when A is a single orbit of degree d with gcd(d, k) = 1.
pub fn alpha(a: &DegreeMultiset, k: u64) -> BigInt {
    if a.degrees.len() != 1 {
        return BigInt::zero();
    }
    let d = a.degrees[0];
    if gcd(d, k) == 1 {
        BigInt::from(d)
    } else {
        BigInt::zero()
    }
}

/// β(k): 2^{O(τ^k)−1} when every orbit of τ^k has odd length, else 0.
pub fn beta(a: &DegreeMultiset, k: u64) -> BigInt {
    if a.all_orbits_odd(k) {
        BigInt::one() << (a.orbit_count(k) - 1) as usize
    } else {
        BigInt::zero()
    }
}

/// γ(k) = (−1)^{O(τ^k)}.
pub fn gamma(a: &DegreeMultiset, k: u64) -> BigInt {
    if a.orbit_count(k) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// ω(k) = (α(k) + (−1)^{|A|} β(k)) / 2, as an exact rational.
pub fn omega(a: &DegreeMultiset, k: u64) -> BigRational {
    let sign = if a.total() % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    BigRational::new(alpha(a, k) + sign * beta(a, k), BigInt::from(2))
}

/// A common period of α, β, γ, ω: 2·lcm of the degrees.
pub fn orbit_fn_period(a: &DegreeMultiset) -> u64 {
    2 * a.degrees.iter().copied().fold(1, lcm)
}

/// Samples an orbit function over one full period into a PeriodicFn.
pub fn sample_orbit_fn<F>(a: &DegreeMultiset, f: F) -> PeriodicFn
where
    F: Fn(&DegreeMultiset, u64) -> BigRational,
{
    let n = orbit_fn_period(a);
    PeriodicFn {
        values: (1..=n).map(|k| f(a, k)).collect(),
    }
}
