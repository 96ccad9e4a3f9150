//! Small finite fields F_{p^m} with a deterministic choice of modulus, and
//! univariate polynomials over them.  Used only by the brute-force oracles,
//! so everything is sized for exhaustive enumeration (p^m ≤ a few hundred).

use super::{is_prime, NumTheoryError};

/// Description of F_{p^m} as F_p[x]/(modulus).  The modulus is the
/// lexicographically smallest monic irreducible of degree m over F_p,
/// comparing coefficient vectors from the constant term upward, so oracle
/// runs are reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: usize,
    /// Coefficients of the monic modulus, constant first, length m + 1.
    pub modulus: Vec<u64>,
}

/// Element of F_{p^m}: coefficients mod p in the power basis, length m.
pub type FieldElement = Vec<u64>;

impl FieldDescriptor {
    pub fn new(p: u64, m: usize) -> Result<Self, NumTheoryError> {
        if !is_prime(p) {
            return Err(NumTheoryError::NotPrime(p));
        }
        if m == 0 {
            return Err(NumTheoryError::ZeroArgument);
        }
        let modulus = smallest_irreducible(p, m);
        Ok(FieldDescriptor { p, m, modulus })
    }

    /// Builds the descriptor for a prime power q = p^m.
    pub fn from_order(q: u64) -> Result<Self, NumTheoryError> {
        let factors = super::factorize(q);
        if factors.len() != 1 {
            return Err(NumTheoryError::NotPrime(q));
        }
        let (p, e) = factors[0];
        FieldDescriptor::new(p, e as usize)
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        vec![0; self.m]
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for i in (self.m..2 * self.m).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.m {
                let sub = c * self.modulus[j] % self.p;
                prod[i - self.m + j] = (prod[i - self.m + j] + self.p - sub) % self.p;
            }
        }
        prod.truncate(self.m);
        prod
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, NumTheoryError> {
        if self.is_zero(a) {
            return Err(NumTheoryError::ZeroInversion);
        }
        // a^{q−2} = a^{−1} in F_q.
        Ok(self.pow(a, self.order() - 2))
    }

    /// All p^m elements, in lexicographic coefficient order (constant first).
    pub fn elements(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.m {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn element_from_u64(&self, mut n: u64) -> FieldElement {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = n % self.p;
            n /= self.p;
        }
        e
    }
}

/// Lexicographically smallest monic irreducible of degree m over F_p, found
/// by exhaustive divisibility testing against all lower-degree monic
/// polynomials.
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; m + 1];
    coeffs[m] = 1;
    loop {
        if is_irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < m, "some irreducible of degree m must exist");
        }
    }
}

fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=m/2.
    for d in 1..=m / 2 {
        let mut g = vec![0u64; d + 1];
        g[d] = 1;
        loop {
            if poly_mod_divides(&g, f, p) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                g[i] += 1;
                if g[i] < p {
                    break;
                }
                g[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// Does monic g divide f over F_p?
fn poly_mod_divides(g: &[u64], f: &[u64], p: u64) -> bool {
    let d = g.len() - 1;
    let mut rem: Vec<u64> = f.to_vec();
    for i in (d..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for j in 0..d {
            let sub = c * g[j] % p;
            rem[i - d + j] = (rem[i - d + j] + p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Polynomial over F_{p^m}, coefficients constant-first, trailing nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    pub coeffs: Vec<FieldElement>,
}

impl FqPoly {
    pub fn new(field: &FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self, field: &FieldDescriptor) -> bool {
        self.coeffs.last().map_or(false, |c| *c == field.one())
    }

    /// Does self (monic) divide f over the field?
    pub fn divides(&self, field: &FieldDescriptor, f: &FqPoly) -> bool {
        assert!(self.is_monic(field), "divisor must be monic");
        let d = self.coeffs.len() - 1;
        let mut rem = f.coeffs.clone();
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if field.is_zero(&c) {
                continue;
            }
            rem[i] = field.zero();
            for j in 0..d {
                let sub = field.mul(&c, &self.coeffs[j]);
                rem[i - d + j] = field.sub(&rem[i - d + j], &sub);
            }
        }
        rem.iter().all(|c| field.is_zero(c))
    }

    /// Monic irreducibles of the given degree over the field, in
    /// lexicographic coefficient order (constant term least significant).
    pub fn monic_irreducibles(field: &FieldDescriptor, degree: usize) -> Vec<FqPoly> {
        let elems = field.elements();
        let mut out = Vec::new();
        let mut idx = vec![0usize; degree];
        loop {
            let mut coeffs: Vec<FieldElement> = idx.iter().map(|&i| elems[i].clone()).collect();
            coeffs.push(field.one());
            let f = FqPoly { coeffs };
            if f.is_irreducible(field) {
                out.push(f);
            }
            let mut i = 0;
            loop {
                if i == degree {
                    return out;
                }
                idx[i] += 1;
                if idx[i] < elems.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    pub fn is_irreducible(&self, field: &FieldDescriptor) -> bool {
        let m = self.degree();
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        for d in 1..=m / 2 {
            for g in FqPoly::monic_polys(field, d) {
                if g.divides(field, self) {
                    return false;
                }
            }
        }
        true
    }

    fn monic_polys(field: &FieldDescriptor, degree: usize) -> Vec<FqPoly> {
        let elems = field.elements();
        let mut out = Vec::new();
        let mut idx = vec![0usize; degree];
        loop {
            let mut coeffs: Vec<FieldElement> = idx.iter().map(|&i| elems[i].clone()).collect();
            coeffs.push(field.one());
            out.push(FqPoly { coeffs });
            let mut i = 0;
            loop {
                if i == degree {
                    return out;
                }
                idx[i] += 1;
                if idx[i] < elems.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
}
