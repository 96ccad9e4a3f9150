//! Cyclotomic polynomials Φ_n and exact arithmetic in ℤ[ζ_n].
//!
//! Elements of ℤ[ζ_n] are kept reduced modulo Φ_n (not modulo x^n − 1), so
//! deciding whether an element is a rational integer is a direct coordinate
//! inspection.

use super::poly::IntPoly;
use super::{divisors, euler_phi, NumTheoryError};
use num_bigint::BigInt;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::HashMap;

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u64, IntPoly>> = RefCell::new(HashMap::new());
}

/// Φ_n(x), computed by dividing x^n − 1 by Φ_d for all proper divisors d | n.
/// Monic of degree φ(n).  Memoized per thread; the certification code reduces
/// modulo the same Φ_n thousands of times.
pub fn cyclotomic_poly(n: u64) -> Result<IntPoly, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return Ok(p);
    }
    let mut poly = IntPoly::xn_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d)?;
        let (q, r) = poly.div_rem_monic(&phi_d);
        debug_assert!(r.is_zero(), "cyclotomic division must be exact");
        poly = q;
    }
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, poly.clone()));
    Ok(poly)
}

/// Element of ℤ[ζ_n] in the power basis 1, ζ, …, ζ^{φ(n)−1} modulo Φ_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    conductor: u64,
    /// Power-basis coordinates; length is exactly φ(n).
    coords: Vec<BigInt>,
}

impl CyclotomicElement {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn zero(n: u64) -> Result<Self, NumTheoryError> {
        cyclo_reduce(&vec![BigInt::zero(); n as usize], n)
    }

    /// ζ_n^e with e taken mod n.
    pub fn root_power(n: u64, e: i64) -> Result<Self, NumTheoryError> {
        if n == 0 {
            return Err(NumTheoryError::ZeroArgument);
        }
        let e = e.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigInt::zero(); n as usize];
        raw[e] += 1;
        cyclo_reduce(&raw, n)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicElement {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicElement {
            conductor: self.conductor,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Add c·ζ_n^e in place, working in the raw x^n − 1 basis first would be
    /// wasteful; this reduces the single monomial through Φ_n once.
    pub fn add_scaled_root(&self, c: &BigInt, e: i64) -> Result<Self, NumTheoryError> {
        let term = Self::root_power(self.conductor, e)?.scale(c);
        Ok(self.add(&term))
    }
}

/// Reduce Σ raw[j]·ζ_n^j into the power basis of ℤ[x]/Φ_n(x).
/// The raw vector must have length exactly n.
pub fn cyclo_reduce(raw: &[BigInt], n: u64) -> Result<CyclotomicElement, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    if raw.len() != n as usize {
        return Err(NumTheoryError::LengthMismatch {
            expected: n as usize,
            got: raw.len(),
        });
    }
    let phi_n = cyclotomic_poly(n)?;
    let (_, rem) = IntPoly::new(raw.to_vec()).div_rem_monic(&phi_n);
    let deg = euler_phi(n)? as usize;
    let mut coords = rem.coeffs().to_vec();
    coords.resize(deg, BigInt::zero());
    Ok(CyclotomicElement {
        conductor: n,
        coords,
    })
}

/// The integer c when the element is rational (all non-constant coordinates
/// vanish); None otherwise.
pub fn as_rational_integer(e: &CyclotomicElement) -> Option<BigInt> {
    if e.coords.iter().skip(1).all(|c| c.is_zero()) {
        Some(e.coords.first().cloned().unwrap_or_else(BigInt::zero))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::IntPoly;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2).unwrap(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_poly(12).unwrap(),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn cyclotomic_product_is_xn_minus_one() {
        for n in 1..=64u64 {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic_poly(d).unwrap());
            }
            assert_eq!(prod, IntPoly::xn_minus_one(n as usize), "n={n}");
        }
    }

    #[test]
    fn reduce_examples() {
        // a + b·ζ_2 = a − b.
        let e = cyclo_reduce(&[BigInt::from(3), BigInt::from(5)], 2).unwrap();
        assert_eq!(as_rational_integer(&e), Some(BigInt::from(-2)));

        // 2 − ζ_3 − ζ_3² = 3.
        let e = cyclo_reduce(
            &[BigInt::from(2), BigInt::from(-1), BigInt::from(-1)],
            3,
        )
        .unwrap();
        assert_eq!(as_rational_integer(&e), Some(BigInt::from(3)));

        // ζ_4 − ζ_4³ = 2ζ_4.
        let e = cyclo_reduce(
            &[
                BigInt::from(0),
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
            ],
            4,
        )
        .unwrap();
        assert_eq!(as_rational_integer(&e), None);
        assert_eq!(e.coords(), &[BigInt::from(0), BigInt::from(2)]);
    }

    #[test]
    fn rational_integer_detection() {
        // ζ_3 + ζ_3² = −1.
        let e = cyclo_reduce(&[BigInt::from(0), BigInt::from(1), BigInt::from(1)], 3).unwrap();
        assert_eq!(as_rational_integer(&e), Some(BigInt::from(-1)));
        let e = CyclotomicElement::root_power(4, 1).unwrap().scale(&BigInt::from(2));
        assert_eq!(as_rational_integer(&e), None);
    }

    #[test]
    fn reduce_rejects_bad_length() {
        assert_eq!(
            cyclo_reduce(&[BigInt::from(1)], 2),
            Err(NumTheoryError::LengthMismatch {
                expected: 2,
                got: 1
            })
        );
    }
}
