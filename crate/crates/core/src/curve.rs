//! Curve zeta data: validated zeta numerators and exact computation of
//! |Pic⁰(F_{q^k})| and its symmetric square.
//!
//! Pic(k) = Π (1 − α_i^k) over the inverse roots of the numerator is computed
//! exactly as det(I − M^k) for the integer companion matrix M of the monic
//! reciprocal polynomial; the Weil-bound root check is the only floating
//! computation and is validation-only.

use crate::numtheory::IntPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("q must be a prime power ≥ 2, got {0}")]
    BadFieldSize(u64),
    #[error("numerator must have degree 2g = {expected}, got {got}")]
    BadDegree { expected: usize, got: usize },
    #[error("numerator must have constant term 1")]
    BadConstantTerm,
    #[error("functional equation fails at coefficient {index}: a_{{2g-i}} = {lhs} but q^{{g-i}}·a_i = {rhs}")]
    FunctionalEquation {
        index: usize,
        lhs: BigInt,
        rhs: BigInt,
    },
    #[error("root {root} of the numerator has |z| = {abs:.6}, expected q^(-1/2) = {expected:.6}")]
    WeilBound { root: String, abs: f64, expected: f64 },
    #[error("P(1) = {0} must be positive")]
    NonPositiveClassNumber(BigInt),
    #[error("genus must be ≥ 1 to ingest point counts")]
    PointCountsNeedPositiveGenus,
    #[error("expected {expected} point counts, got {got}")]
    PointCountArity { expected: usize, got: usize },
    #[error("point counts give non-integer elementary symmetric function e_{0}")]
    NonIntegerNewtonStep(usize),
    #[error("point count N_{index} = {value} is negative")]
    NegativePointCount { index: usize, value: BigInt },
}

/// A curve over F_q given by its genus and zeta numerator P(z) (degree 2g,
/// constant term 1).  Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    q: u64,
    genus: u64,
    numerator: IntPoly,
}

fn is_prime_power(q: u64) -> bool {
    crate::numtheory::factorize(q).len() == 1 && q >= 2
}

impl CurveSpec {
    /// Genus-0 curve: P = 1, no further data needed.
    pub fn genus_zero(q: u64) -> Result<Self, CurveError> {
        CurveSpec::from_numerator(q, 0, IntPoly::one())
    }

    pub fn from_numerator(q: u64, genus: u64, numerator: IntPoly) -> Result<Self, CurveError> {
        if !is_prime_power(q) {
            return Err(CurveError::BadFieldSize(q));
        }
        let spec = CurveSpec { q, genus, numerator };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds the numerator from point counts N_k = |X(F_{q^k})|, k = 1..g:
    /// power sums p_k = q^k + 1 − N_k feed Newton's identities for e_1..e_g,
    /// and the functional equation fills the upper half.
    pub fn from_point_counts(q: u64, genus: u64, counts: &[BigInt]) -> Result<Self, CurveError> {
        if genus == 0 {
            return Err(CurveError::PointCountsNeedPositiveGenus);
        }
        if counts.len() != genus as usize {
            return Err(CurveError::PointCountArity {
                expected: genus as usize,
                got: counts.len(),
            });
        }
        for (i, n) in counts.iter().enumerate() {
            if n.is_negative() {
                return Err(CurveError::NegativePointCount {
                    index: i + 1,
                    value: n.clone(),
                });
            }
        }
        let g = genus as usize;
        let bq = BigInt::from(q);
        let mut power_sums = Vec::with_capacity(g);
        for (i, n) in counts.iter().enumerate() {
            let k = (i + 1) as u32;
            power_sums.push(bq.pow(k) + 1 - n);
        }
        // Newton: k·e_k = Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i, with e_0 = 1.
        let mut elem = vec![BigInt::one()];
        for k in 1..=g {
            let mut acc = BigInt::zero();
            let mut sign = BigInt::one();
            for i in 1..=k {
                acc += &sign * &elem[k - i] * &power_sums[i - 1];
                sign = -sign;
            }
            let (e_k, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(k));
            if !rem.is_zero() {
                return Err(CurveError::NonIntegerNewtonStep(k));
            }
            elem.push(e_k);
        }
        // a_i = (−1)^i e_i for i ≤ g, then a_{2g−i} = q^{g−i} a_i.
        let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
        for (i, e) in elem.iter().enumerate() {
            coeffs[i] = if i % 2 == 0 { e.clone() } else { -e };
        }
        for i in 0..g {
            coeffs[2 * g - i] = bq.pow((g - i) as u32) * &coeffs[i];
        }
        CurveSpec::from_numerator(q, genus, IntPoly::new(coeffs))
    }

    fn validate(&self) -> Result<(), CurveError> {
        let g = self.genus as usize;
        let p = &self.numerator;
        if g == 0 {
            if p != &IntPoly::one() {
                return Err(CurveError::BadDegree {
                    expected: 0,
                    got: p.degree(),
                });
            }
            return Ok(());
        }
        if p.is_zero() || p.degree() != 2 * g {
            return Err(CurveError::BadDegree {
                expected: 2 * g,
                got: p.degree(),
            });
        }
        if !p.coeff(0).is_one() {
            return Err(CurveError::BadConstantTerm);
        }
        let bq = BigInt::from(self.q);
        for i in 0..=g {
            let lhs = p.coeff(2 * g - i);
            let rhs = bq.pow((g - i) as u32) * p.coeff(i);
            if lhs != rhs {
                return Err(CurveError::FunctionalEquation { index: i, lhs, rhs });
            }
        }
        let class_number = p.eval(&BigInt::one());
        if !class_number.is_positive() {
            return Err(CurveError::NonPositiveClassNumber(class_number));
        }
        // Weil bound: every complex root has |z| = q^{-1/2}, tolerance 1e-6.
        let expected = (self.q as f64).powf(-0.5);
        for root in complex_roots(p) {
            let abs = root.norm();
            if (abs - expected).abs() > 1e-6 {
                return Err(CurveError::WeilBound {
                    root: format!("{root}"),
                    abs,
                    expected,
                });
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    /// Recovers N_k = q^k + 1 − p_k from the numerator for k = 1..g.
    pub fn point_counts(&self) -> Vec<BigInt> {
        let g = self.genus as usize;
        let bq = BigInt::from(self.q);
        // p_k from Newton's identities on e_i = (−1)^i a_i (all 2g of them).
        let elem: Vec<BigInt> = (0..=2 * g)
            .map(|i| {
                let a = self.numerator.coeff(i);
                if i % 2 == 0 {
                    a
                } else {
                    -a
                }
            })
            .collect();
        let mut power_sums: Vec<BigInt> = Vec::with_capacity(g);
        for k in 1..=g {
            // p_k = Σ_{i=1..k−1} (−1)^{i−1} e_i p_{k−i} + (−1)^{k−1} k e_k.
            let mut p_k = BigInt::zero();
            for i in 1..k {
                let term = &elem[i] * &power_sums[k - i - 1];
                p_k += if i % 2 == 1 { term } else { -term };
            }
            let ke = BigInt::from(k as u64) * &elem[k];
            p_k += if (k - 1) % 2 == 0 { ke } else { -ke };
            power_sums.push(p_k);
        }
        (1..=g)
            .map(|k| bq.pow(k as u32) + 1 - &power_sums[k - 1])
            .collect()
    }

    /// |Pic⁰(F_{q^k})| = Π (1 − α_i^k) = det(I − M^k), exactly.
    pub fn pic(&self, k: u64) -> BigInt {
        if self.genus == 0 {
            return BigInt::one();
        }
        let m = self.companion_matrix();
        let mk = mat_pow(&m, k);
        let n = mk.len();
        let mut a = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = if i == j {
                    BigInt::one() - &mk[i][j]
                } else {
                    -&mk[i][j]
                };
            }
        }
        let det = det_bareiss(a);
        debug_assert!(det.is_positive(), "Pic(k) is the order of a finite group");
        det
    }

    /// |S²Pic⁰(F_{q^k})| = (Pic(2k) + Pic(k)²) / 2; the division is exact.
    pub fn pic_sym2(&self, k: u64) -> BigInt {
        let sum = self.pic(2 * k) + self.pic(k).pow(2);
        let (q, r) = num_integer::Integer::div_rem(&sum, &BigInt::from(2));
        assert!(r.is_zero(), "Pic(2k) + Pic(k)^2 must be even");
        q
    }

    /// Companion matrix of the monic reciprocal polynomial t^{2g} P(1/t),
    /// whose roots are the Frobenius eigenvalues α_i.
    fn companion_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = 2 * self.genus as usize;
        // t^{2g} P(1/t) = Σ a_i t^{2g−i} = t^n + a_1 t^{n−1} + … + a_n.
        // Companion of t^n + c_{n−1} t^{n−1} + … + c_0 with c_j = a_{n−j}.
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for i in 1..n {
            m[i][i - 1] = BigInt::one();
        }
        for j in 0..n {
            m[j][n - 1] = -self.numerator.coeff(n - j);
        }
        m
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][l] * &b[l][j];
                c[i][j] += t;
            }
        }
    }
    c
}

fn mat_pow(m: &[Vec<BigInt>], mut k: u64) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut base = m.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        k >>= 1;
    }
    acc
}

/// Exact determinant by Bareiss fraction-free elimination.
fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Durand–Kerner root finding, adequate for the validation-only Weil check.
fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let deg = p.degree();
    if deg == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().expect("numerator coefficients fit in f64 for validation"))
        .collect();
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| Complex64::new(0.4, 0.9).powu(i as u32 + 1))
        .collect();
    for _ in 0..200 {
        let mut done = true;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let delta = eval(roots[i]) / denom;
            if delta.norm() > 1e-12 {
                done = false;
            }
            roots[i] -= delta;
        }
        if done {
            break;
        }
    }
    roots
}
