//! Ramification data: places with tame local-monodromy types and eigenvalue
//! exponents, the associated geometric points, the set of eigenvalue
//! selections with product 1 together with its two commuting actions, the
//! fixed-point counting functions, and base change to F_{q^k}.
//!
//! Eigenvalues of tame local monodromy are roots of unity and are carried as
//! exact rationals in [0, 1) (the exponent); multiplying a root of unity by
//! the q-power Frobenius is multiplying its exponent by q mod 1.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RamificationError {
    #[error("invalid exponent `{0}`: expected `a/b` with b ≥ 1")]
    BadExponent(String),
    #[error("configuration is invalid: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("too many geometric points: {points} exceeds the enumeration bound {bound}")]
    TooManyPoints { points: u64, bound: u64 },
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One violated constraint, naming the offending place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub place: usize,
    pub constraint: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "place {}: {}", self.place, self.constraint)
    }
}

/// Exact rational in [0, 1) representing the root of unity e^{2πi·num/den}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMod1 {
    num: BigUint,
    den: BigUint,
}

impl RationalMod1 {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "denominator must be positive");
        let num = num % &den;
        let g = num.gcd(&den);
        RationalMod1 {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn zero() -> Self {
        RationalMod1 {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn from_u64(num: u64, den: u64) -> Self {
        RationalMod1::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = &self.den * &other.den;
        let num = &self.num * &other.den + &other.num * &self.den;
        RationalMod1::new(num, den)
    }

    /// m·t mod 1.
    pub fn scale(&self, m: &BigUint) -> Self {
        RationalMod1::new(&self.num * m, self.den.clone())
    }

    /// q^e·t mod 1, via modular exponentiation of q modulo the denominator.
    pub fn scale_pow(&self, q: &BigUint, e: u64) -> Self {
        if self.den.is_one() {
            return self.clone();
        }
        let factor = q.modpow(&BigUint::from(e), &self.den);
        self.scale(&factor)
    }
}

impl fmt::Display for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalMod1 {
    type Err = RamificationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RamificationError::BadExponent(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let num = BigUint::from_str(n.trim()).map_err(|_| bad())?;
                let den = BigUint::from_str(d.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(RationalMod1::new(num, den))
            }
            None => {
                let num = BigUint::from_str(s.trim()).map_err(|_| bad())?;
                Ok(RationalMod1::new(num, BigUint::one()))
            }
        }
    }
}

/// The four tame local-monodromy types in rank 2, with their eigenvalue data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    /// Scalar: both eigenvalues equal the given value.
    Scalar(RationalMod1),
    /// Principal quasi-unipotent: a single eigenvalue with a nontrivial
    /// Jordan block.
    Unipotent(RationalMod1),
    /// Split regular: two distinct eigenvalues, each fixed by Frob^d.
    Regular(RationalMod1, RationalMod1),
    /// Cuspidal (anisotropic): eigenvalue pair {t, q^d·t} swapped by Frob^d.
    Cuspidal(RationalMod1),
}

impl PlaceKind {
    pub fn type_letter(&self) -> char {
        match self {
            PlaceKind::Scalar(_) => 's',
            PlaceKind::Unipotent(_) => 'u',
            PlaceKind::Regular(..) => 'r',
            PlaceKind::Cuspidal(_) => 'c',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub degree: u64,
    pub kind: PlaceKind,
}

/// A complete ramification datum: the base field size and the list of places.
/// The partitions by type are always recomputed, never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationConfig {
    pub q: BigUint,
    pub places: Vec<Place>,
    /// Cap on the number of geometric points before tuple enumeration.
    pub point_bound: u64,
}

pub const DEFAULT_POINT_BOUND: u64 = 20;

impl RamificationConfig {
    pub fn new(q: BigUint, places: Vec<Place>) -> Result<Self, RamificationError> {
        let config = RamificationConfig {
            q,
            places,
            point_bound: DEFAULT_POINT_BOUND,
        };
        let violations = config.violations();
        if violations.is_empty() {
            Ok(config)
        } else {
            Err(RamificationError::Invalid(violations))
        }
    }

    pub fn with_point_bound(mut self, bound: u64) -> Self {
        self.point_bound = bound;
        self
    }

    /// All constraint violations; empty means the config is valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, place) in self.places.iter().enumerate() {
            let d = place.degree;
            if d == 0 {
                out.push(Violation {
                    place: i,
                    constraint: "degree must be ≥ 1".into(),
                });
                continue;
            }
            let qd_minus_1 = self.q.pow(d as u32) - BigUint::one();
            match &place.kind {
                PlaceKind::Scalar(t) | PlaceKind::Unipotent(t) => {
                    if !(&qd_minus_1 % t.den()).is_zero() {
                        out.push(Violation {
                            place: i,
                            constraint: format!(
                                "eigenvalue denominator {} must divide q^d - 1 = {}",
                                t.den(),
                                qd_minus_1
                            ),
                        });
                    }
                }
                PlaceKind::Regular(t1, t2) => {
                    for t in [t1, t2] {
                        if !(&qd_minus_1 % t.den()).is_zero() {
                            out.push(Violation {
                                place: i,
                                constraint: format!(
                                    "eigenvalue denominator {} must divide q^d - 1 = {}",
                                    t.den(),
                                    qd_minus_1
                                ),
                            });
                        }
                    }
                    if t1 == t2 {
                        out.push(Violation {
                            place: i,
                            constraint: "regular type requires distinct eigenvalues".into(),
                        });
                    }
                }
                PlaceKind::Cuspidal(t) => {
                    let q2d_minus_1 = self.q.pow(2 * d as u32) - BigUint::one();
                    if !(&q2d_minus_1 % t.den()).is_zero() {
                        out.push(Violation {
                            place: i,
                            constraint: format!(
                                "eigenvalue denominator {} must divide q^2d - 1 = {}",
                                t.den(),
                                q2d_minus_1
                            ),
                        });
                    } else if t.scale_pow(&self.q, d) == *t {
                        out.push(Violation {
                            place: i,
                            constraint: "cuspidal type requires q^d·t ≠ t".into(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Indices of places by type letter.
    pub fn places_of_type(&self, letter: char) -> Vec<usize> {
        self.places
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind.type_letter() == letter)
            .map(|(i, _)| i)
            .collect()
    }

    /// Total degree (number of geometric points) of places of one type.
    pub fn total_degree_of_type(&self, letter: char) -> u64 {
        self.places
            .iter()
            .filter(|p| p.kind.type_letter() == letter)
            .map(|p| p.degree)
            .sum()
    }

    pub fn geometric_point_count(&self) -> u64 {
        self.places.iter().map(|p| p.degree).sum()
    }

    /// True iff the product of all eigenvalues over all geometric points is 1
    /// (the emptiness criterion for the counted set).
    pub fn product_condition(&self) -> bool {
        let table = self.geometric_points();
        let mut sum = RationalMod1::zero();
        for pt in &table.points {
            sum = sum.add(&pt.eigenvalues.0).add(&pt.eigenvalues.1);
        }
        sum.is_zero()
    }

    /// Materializes the geometric points over every place with their
    /// transported eigenvalue pairs and the Frobenius successor map.
    ///
    /// Transport convention: the point x_j of a degree-d place with base
    /// exponent t carries q^{j(d−1)}·t, which makes ε_x = q·ε_{Frob(x)} hold
    /// literally; cuspidal pairs are (q^{j(d−1)}·t, q^{j(d−1)+d}·t).
    pub fn geometric_points(&self) -> GeomPointTable {
        let mut points = Vec::new();
        for (place_idx, place) in self.places.iter().enumerate() {
            let d = place.degree;
            let base = points.len();
            for j in 0..d {
                let shift = j * (d - 1);
                let eigenvalues = match &place.kind {
                    PlaceKind::Scalar(t) | PlaceKind::Unipotent(t) => {
                        let v = t.scale_pow(&self.q, shift);
                        (v.clone(), v)
                    }
                    PlaceKind::Regular(t1, t2) => (
                        t1.scale_pow(&self.q, shift),
                        t2.scale_pow(&self.q, shift),
                    ),
                    PlaceKind::Cuspidal(t) => (
                        t.scale_pow(&self.q, shift),
                        t.scale_pow(&self.q, shift + d),
                    ),
                };
                points.push(GeomPoint {
                    place: place_idx,
                    orbit_index: j,
                    eigenvalues,
                    succ: base + ((j + 1) % d) as usize,
                });
            }
        }
        let table = GeomPointTable { points };
        debug_assert!(table.check_compatibility(&self.q));
        table
    }

    /// Base change to F_{q^k}: a degree-n place splits into gcd(n,k) places
    /// of degree n/gcd(n,k) carrying the transported exponents of orbit
    /// representatives.  A cuspidal place stays cuspidal exactly when the
    /// new-field Frobenius power (q^k)^{d'} still swaps its two eigenvalues,
    /// and becomes split regular otherwise.
    pub fn base_change(&self, k: u64) -> Result<RamificationConfig, RamificationError> {
        assert!(k >= 1);
        let qk = self.q.pow(k as u32);
        let mut places = Vec::new();
        for place in &self.places {
            let d = place.degree;
            let g = crate::numtheory::gcd(d, k);
            let new_degree = d / g;
            for m in 0..g {
                let shift = m * (d - 1);
                let kind = match &place.kind {
                    PlaceKind::Scalar(t) => PlaceKind::Scalar(t.scale_pow(&self.q, shift)),
                    PlaceKind::Unipotent(t) => PlaceKind::Unipotent(t.scale_pow(&self.q, shift)),
                    PlaceKind::Regular(t1, t2) => PlaceKind::Regular(
                        t1.scale_pow(&self.q, shift),
                        t2.scale_pow(&self.q, shift),
                    ),
                    PlaceKind::Cuspidal(t) => {
                        let rep = t.scale_pow(&self.q, shift);
                        // lcm(d, k) = k·d' applications of the original
                        // Frobenius bring the new place's point back.
                        let partner = rep.scale_pow(&self.q, k * new_degree);
                        if partner == rep {
                            PlaceKind::Regular(rep.clone(), rep.scale_pow(&self.q, d))
                        } else {
                            PlaceKind::Cuspidal(rep)
                        }
                    }
                };
                places.push(Place {
                    degree: new_degree,
                    kind,
                });
            }
        }
        Ok(RamificationConfig::new(qk, places)?.with_point_bound(self.point_bound))
    }

    /// Enumerates the eigenvalue-selection set with its two commuting actions.
    pub fn build_pr(&self) -> Result<PrState, RamificationError> {
        let n_points = self.geometric_point_count();
        if n_points > self.point_bound {
            return Err(RamificationError::TooManyPoints {
                points: n_points,
                bound: self.point_bound,
            });
        }
        let table = self.geometric_points();
        // Per-point choice sets, deduplicated where the two eigenvalues agree.
        let choices: Vec<Vec<RationalMod1>> = table
            .points
            .iter()
            .map(|pt| {
                if pt.eigenvalues.0 == pt.eigenvalues.1 {
                    vec![pt.eigenvalues.0.clone()]
                } else {
                    vec![pt.eigenvalues.0.clone(), pt.eigenvalues.1.clone()]
                }
            })
            .collect();
        let mut elements = Vec::new();
        let mut stack: Vec<RationalMod1> = Vec::with_capacity(choices.len());
        enumerate_tuples(&choices, 0, &mut stack, &mut elements);
        elements.sort();
        let index: HashMap<Vec<RationalMod1>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let frob = elements
            .iter()
            .map(|tuple| {
                let image = table.frob_image(&self.q, tuple);
                *index
                    .get(&image)
                    .expect("Frobenius must map the selection set into itself")
            })
            .collect();
        // When the global eigenvalue product is nontrivial the swap image
        // leaves the selection set (its sum is the product defect); the
        // swap-fixed count is then vacuously zero at such elements.
        let sigma = elements
            .iter()
            .map(|tuple| index.get(&table.swap_image(tuple)).copied())
            .collect();
        let state = PrState {
            elements,
            frob,
            sigma,
        };
        debug_assert!(state.actions_commute());
        Ok(state)
    }

    /// (c(k), b(k)): fixed tuples of Frob^k and of swap∘Frob^k.
    pub fn fixed_counts(&self, k: u64) -> Result<FixedCounts, RamificationError> {
        Ok(self.build_pr()?.fixed_counts(k))
    }

    /// Independent oracle for fixed_counts: works on index vectors with the
    /// label-transport bookkeeping done explicitly, then deduplicates by
    /// realized value tuples.
    pub fn fixed_counts_oracle(&self, k: u64) -> Result<FixedCounts, RamificationError> {
        let n_points = self.geometric_point_count() as usize;
        if n_points as u64 > self.point_bound {
            return Err(RamificationError::TooManyPoints {
                points: n_points as u64,
                bound: self.point_bound,
            });
        }
        let table = self.geometric_points();
        let pts = &table.points;
        // Transport pairing: new index at x realizing q·(value at Frob(x)).
        let step = |idx: &[u8]| -> Vec<u8> {
            pts.iter()
                .enumerate()
                .map(|(x, pt)| {
                    let source = &pts[pt.succ];
                    let carried = source.eigenvalue(idx[pt.succ]).scale(&self.q);
                    if carried == pt.eigenvalues.0 {
                        0
                    } else if carried == pt.eigenvalues.1 {
                        1
                    } else {
                        panic!("transported eigenvalue must match at point {x}")
                    }
                })
                .collect()
        };
        let realize = |idx: &[u8]| -> Vec<RationalMod1> {
            pts.iter()
                .zip(idx)
                .map(|(pt, &i)| pt.eigenvalue(i).clone())
                .collect()
        };
        let mut seen: HashMap<Vec<RationalMod1>, Vec<u8>> = HashMap::new();
        for mask in 0u64..(1u64 << n_points) {
            let idx: Vec<u8> = (0..n_points).map(|x| ((mask >> x) & 1) as u8).collect();
            let tuple = realize(&idx);
            let mut sum = RationalMod1::zero();
            for v in &tuple {
                sum = sum.add(v);
            }
            if sum.is_zero() {
                seen.entry(tuple).or_insert(idx);
            }
        }
        let mut frob_fixed = 0u64;
        let mut swap_fixed = 0u64;
        for (tuple, rep) in &seen {
            let mut idx = rep.clone();
            for _ in 0..k {
                idx = step(&idx);
            }
            let moved = realize(&idx);
            if &moved == tuple {
                frob_fixed += 1;
            }
            let swapped: Vec<RationalMod1> = pts
                .iter()
                .zip(rep)
                .map(|(pt, &i)| pt.eigenvalue(1 - i).clone())
                .collect();
            if moved == swapped {
                swap_fixed += 1;
            }
        }
        Ok(FixedCounts {
            frob: frob_fixed,
            swap: swap_fixed,
        })
    }
}

fn enumerate_tuples(
    choices: &[Vec<RationalMod1>],
    depth: usize,
    stack: &mut Vec<RationalMod1>,
    out: &mut Vec<Vec<RationalMod1>>,
) {
    if depth == choices.len() {
        let mut sum = RationalMod1::zero();
        for v in stack.iter() {
            sum = sum.add(v);
        }
        if sum.is_zero() {
            out.push(stack.clone());
        }
        return;
    }
    for v in &choices[depth] {
        stack.push(v.clone());
        enumerate_tuples(choices, depth + 1, stack, out);
        stack.pop();
    }
}

/// One geometric point over a place, with its ordered eigenvalue pair and
/// Frobenius successor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomPoint {
    pub place: usize,
    pub orbit_index: u64,
    pub eigenvalues: (RationalMod1, RationalMod1),
    pub succ: usize,
}

impl GeomPoint {
    fn eigenvalue(&self, i: u8) -> &RationalMod1 {
        if i == 0 {
            &self.eigenvalues.0
        } else {
            &self.eigenvalues.1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomPointTable {
    pub points: Vec<GeomPoint>,
}

impl GeomPointTable {
    /// ε_x = q·ε_{Frob(x)} as unordered pairs, at every point.
    fn check_compatibility(&self, q: &BigUint) -> bool {
        self.points.iter().all(|pt| {
            let succ = &self.points[pt.succ];
            let carried = [
                succ.eigenvalues.0.scale(q),
                succ.eigenvalues.1.scale(q),
            ];
            let mut own = [pt.eigenvalues.0.clone(), pt.eigenvalues.1.clone()];
            let mut carried = carried.to_vec();
            own.sort();
            carried.sort();
            own.to_vec() == carried
        })
    }

    /// Frobenius image of a value tuple: value at x becomes q·(value at Frob(x)).
    fn frob_image(&self, q: &BigUint, tuple: &[RationalMod1]) -> Vec<RationalMod1> {
        self.points
            .iter()
            .map(|pt| tuple[pt.succ].scale(q))
            .collect()
    }

    /// Componentwise swap to the other eigenvalue.
    fn swap_image(&self, tuple: &[RationalMod1]) -> Vec<RationalMod1> {
        self.points
            .iter()
            .zip(tuple)
            .map(|(pt, v)| {
                if *v == pt.eigenvalues.0 {
                    pt.eigenvalues.1.clone()
                } else {
                    pt.eigenvalues.0.clone()
                }
            })
            .collect()
    }
}

/// Fixed-point counts of Frob^k and swap∘Frob^k on the selection set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedCounts {
    pub frob: u64,
    pub swap: u64,
}

/// The eigenvalue-selection set with its commuting Frobenius and swap actions,
/// both stored as permutations of the sorted element list.
#[derive(Clone, Debug)]
pub struct PrState {
    elements: Vec<Vec<RationalMod1>>,
    frob: Vec<usize>,
    /// None when the swap image is not itself a selection with product 1.
    sigma: Vec<Option<usize>>,
}

impl PrState {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<RationalMod1>] {
        &self.elements
    }

    pub fn actions_commute(&self) -> bool {
        (0..self.len()).all(|i| match (self.sigma[self.frob[i]], self.sigma[i]) {
            (Some(a), Some(b)) => a == self.frob[b],
            (None, None) => true,
            _ => false,
        })
    }

    /// Order of the Frobenius permutation (lcm of cycle lengths); the counting
    /// functions are periodic in k with this period.
    pub fn frob_order(&self) -> u64 {
        let mut seen = vec![false; self.len()];
        let mut order = 1u64;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            loop {
                seen[i] = true;
                len += 1;
                i = self.frob[i];
                if i == start {
                    break;
                }
            }
            order = crate::numtheory::lcm(order, len);
        }
        order
    }

    pub fn fixed_counts(&self, k: u64) -> FixedCounts {
        let n = self.len();
        // Frob^k = Frob^{k mod order}; repeated composition is fine at the
        // reduced exponent.
        let mut power: Vec<usize> = (0..n).collect();
        for _ in 0..k % self.frob_order() {
            power = power.iter().map(|&i| self.frob[i]).collect();
        }
        let frob = (0..n).filter(|&i| power[i] == i).count() as u64;
        let swap = (0..n)
            .filter(|&i| Some(power[i]) == self.sigma[i])
            .count() as u64;
        FixedCounts { frob, swap }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(n: u64, d: u64) -> RationalMod1 {
        RationalMod1::from_u64(n, d)
    }

    fn cfg(q: u64, places: Vec<Place>) -> RamificationConfig {
        RamificationConfig::new(BigUint::from(q), places).unwrap()
    }

    fn regular(d: u64, t1: RationalMod1, t2: RationalMod1) -> Place {
        Place {
            degree: d,
            kind: PlaceKind::Regular(t1, t2),
        }
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("1/3".parse::<RationalMod1>().unwrap(), rm(1, 3));
        assert_eq!("4/3".parse::<RationalMod1>().unwrap(), rm(1, 3));
        assert_eq!("0".parse::<RationalMod1>().unwrap(), RationalMod1::zero());
        assert!("1/0".parse::<RationalMod1>().is_err());
        assert!("x/2".parse::<RationalMod1>().is_err());
    }

    #[test]
    fn validation_examples() {
        // q=3, (d=1, r, (0/2, 1/2)) is fine.
        assert!(RamificationConfig::new(
            BigUint::from(3u64),
            vec![regular(1, rm(0, 2), rm(1, 2))]
        )
        .is_ok());
        // Equal eigenvalues are rejected for regular type.
        let err = RamificationConfig::new(
            BigUint::from(3u64),
            vec![regular(1, rm(0, 2), rm(0, 2))],
        )
        .unwrap_err();
        let RamificationError::Invalid(vs) = err else {
            panic!("wrong error kind")
        };
        assert!(vs[0].constraint.contains("distinct"));
        // q=2, cuspidal d=1, t=1/3: denominator 3 = q²−1 and 2t ≠ t.
        assert!(RamificationConfig::new(
            BigUint::from(2u64),
            vec![Place {
                degree: 1,
                kind: PlaceKind::Cuspidal(rm(1, 3)),
            }]
        )
        .is_ok());
        // Denominator not dividing q^d − 1.
        let err = RamificationConfig::new(
            BigUint::from(3u64),
            vec![regular(1, rm(1, 5), rm(2, 5))],
        )
        .unwrap_err();
        let RamificationError::Invalid(vs) = err else {
            panic!("wrong error kind")
        };
        assert_eq!(vs.len(), 2);
    }

    #[test]
    fn geometric_point_examples() {
        // q=3, (d=1, r, (0, 1/2)) → one point (0, 1/2).
        let c = cfg(3, vec![regular(1, rm(0, 2), rm(1, 2))]);
        let t = c.geometric_points();
        assert_eq!(t.points.len(), 1);
        assert_eq!(t.points[0].eigenvalues, (RationalMod1::zero(), rm(1, 2)));

        // q=2, (d=1, c, 1/3) → one point (1/3, 2/3).
        let c = cfg(
            2,
            vec![Place {
                degree: 1,
                kind: PlaceKind::Cuspidal(rm(1, 3)),
            }],
        );
        let t = c.geometric_points();
        assert_eq!(t.points[0].eigenvalues, (rm(1, 3), rm(2, 3)));

        // q=2, (d=2, c, 1/5) → (1/5, 4/5) and (2/5, 3/5).
        let c = cfg(
            2,
            vec![Place {
                degree: 2,
                kind: PlaceKind::Cuspidal(rm(1, 5)),
            }],
        );
        let t = c.geometric_points();
        assert_eq!(t.points[0].eigenvalues, (rm(1, 5), rm(4, 5)));
        assert_eq!(t.points[1].eigenvalues, (rm(2, 5), rm(3, 5)));
        assert_eq!(t.points[0].succ, 1);
        assert_eq!(t.points[1].succ, 0);
    }

    #[test]
    fn product_condition_examples() {
        let c = cfg(
            5,
            vec![
                regular(1, rm(1, 4), rm(3, 4)),
                regular(1, rm(1, 4), rm(3, 4)),
            ],
        );
        assert!(c.product_condition());
        let c = cfg(
            5,
            vec![
                regular(1, rm(0, 4), rm(2, 4)),
                regular(1, rm(0, 4), rm(2, 4)),
                regular(1, rm(0, 4), rm(2, 4)),
            ],
        );
        assert!(!c.product_condition());
        let c = cfg(7, vec![]);
        assert!(c.product_condition());
    }

    #[test]
    fn build_pr_two_regular_places() {
        // q=3, two r-places (0, 1/2): elements {(0,0), (1/2,1/2)},
        // frob = id, sigma swaps them.
        let c = cfg(
            3,
            vec![
                regular(1, rm(0, 2), rm(1, 2)),
                regular(1, rm(0, 2), rm(1, 2)),
            ],
        );
        let pr = c.build_pr().unwrap();
        assert_eq!(pr.len(), 2);
        assert_eq!(pr.frob, vec![0, 1]);
        assert_eq!(pr.sigma, vec![Some(1), Some(0)]);
        for k in 1..=8 {
            let fc = pr.fixed_counts(k);
            assert_eq!((fc.frob, fc.swap), (2, 0));
        }
    }

    #[test]
    fn build_pr_four_regular_places_q5() {
        let c = cfg(
            5,
            vec![
                regular(1, rm(1, 4), rm(3, 4)),
                regular(1, rm(1, 4), rm(3, 4)),
                regular(1, rm(1, 4), rm(3, 4)),
                regular(1, rm(1, 4), rm(3, 4)),
            ],
        );
        let pr = c.build_pr().unwrap();
        assert_eq!(pr.len(), 8);
        for k in 1..=12 {
            let fc = pr.fixed_counts(k);
            assert_eq!((fc.frob, fc.swap), (8, 0));
        }
    }

    #[test]
    fn build_pr_single_cuspidal_place_is_empty() {
        let c = cfg(
            2,
            vec![Place {
                degree: 1,
                kind: PlaceKind::Cuspidal(rm(1, 3)),
            }],
        );
        let pr = c.build_pr().unwrap();
        assert_eq!(pr.len(), 0);
        for k in 1..=6 {
            let fc = pr.fixed_counts(k);
            assert_eq!((fc.frob, fc.swap), (0, 0));
        }
    }

    #[test]
    fn empty_config_has_one_tuple() {
        let c = cfg(4, vec![]);
        let fc = c.fixed_counts(3).unwrap();
        assert_eq!((fc.frob, fc.swap), (1, 1));
        let fo = c.fixed_counts_oracle(3).unwrap();
        assert_eq!((fo.frob, fo.swap), (1, 1));
    }

    #[test]
    fn scalar_point_collapses_choices() {
        let c = cfg(
            3,
            vec![Place {
                degree: 1,
                kind: PlaceKind::Scalar(RationalMod1::zero()),
            }],
        );
        let pr = c.build_pr().unwrap();
        assert_eq!(pr.len(), 1);
        assert_eq!(pr.frob, vec![0]);
        assert_eq!(pr.sigma, vec![Some(0)]);
    }

    #[test]
    fn base_change_examples() {
        // q=2, c-place (d=1, t=1/3), k=2 → degree-1 r-place (1/3, 2/3).
        let c = cfg(
            2,
            vec![Place {
                degree: 1,
                kind: PlaceKind::Cuspidal(rm(1, 3)),
            }],
        );
        let bc = c.base_change(2).unwrap();
        assert_eq!(bc.q, BigUint::from(4u64));
        assert_eq!(bc.places.len(), 1);
        assert_eq!(bc.places[0].degree, 1);
        assert_eq!(
            bc.places[0].kind,
            PlaceKind::Regular(rm(1, 3), rm(2, 3))
        );

        // Degree-3 r-place at k=3 → three degree-1 r-places.
        let c = cfg(2, vec![regular(3, rm(1, 7), rm(3, 7))]);
        let bc = c.base_change(3).unwrap();
        assert_eq!(bc.places.len(), 3);
        assert!(bc.places.iter().all(|p| p.degree == 1));

        // k = 1 leaves everything unchanged.
        let c = cfg(
            5,
            vec![
                regular(2, rm(1, 24), rm(5, 24)),
                Place {
                    degree: 1,
                    kind: PlaceKind::Unipotent(rm(1, 4)),
                },
            ],
        );
        let bc = c.base_change(1).unwrap();
        assert_eq!(bc.places, c.places);
    }

    #[test]
    fn base_change_even_degree_cuspidal_can_stay_cuspidal() {
        // d=2 cuspidal with t = 1/5 over q=2: at k=2 the new-field Frobenius
        // 4 still swaps 1/5 and 4/5, so both split points stay cuspidal.
        let c = cfg(
            2,
            vec![Place {
                degree: 2,
                kind: PlaceKind::Cuspidal(rm(1, 5)),
            }],
        );
        let bc = c.base_change(2).unwrap();
        assert_eq!(bc.places.len(), 2);
        assert!(bc
            .places
            .iter()
            .all(|p| matches!(p.kind, PlaceKind::Cuspidal(_))));
    }

    #[test]
    fn oracle_agrees_on_spec_examples() {
        let configs = vec![
            cfg(
                3,
                vec![
                    regular(1, rm(0, 2), rm(1, 2)),
                    regular(1, rm(0, 2), rm(1, 2)),
                ],
            ),
            cfg(
                5,
                vec![
                    regular(1, rm(1, 4), rm(3, 4)),
                    regular(1, rm(1, 4), rm(3, 4)),
                    regular(1, rm(1, 4), rm(3, 4)),
                    regular(1, rm(1, 4), rm(3, 4)),
                ],
            ),
            cfg(
                2,
                vec![Place {
                    degree: 1,
                    kind: PlaceKind::Cuspidal(rm(1, 3)),
                }],
            ),
            cfg(
                2,
                vec![Place {
                    degree: 2,
                    kind: PlaceKind::Cuspidal(rm(1, 5)),
                }],
            ),
        ];
        for c in configs {
            for k in 1..=12 {
                assert_eq!(
                    c.fixed_counts(k).unwrap(),
                    c.fixed_counts_oracle(k).unwrap()
                );
            }
        }
    }

    #[test]
    fn base_change_coherence() {
        let configs = vec![
            cfg(
                2,
                vec![
                    Place {
                        degree: 2,
                        kind: PlaceKind::Cuspidal(rm(1, 5)),
                    },
                    Place {
                        degree: 2,
                        kind: PlaceKind::Cuspidal(rm(1, 5)),
                    },
                ],
            ),
            cfg(
                3,
                vec![
                    regular(2, rm(1, 8), rm(3, 8)),
                    Place {
                        degree: 1,
                        kind: PlaceKind::Unipotent(rm(1, 2)),
                    },
                    Place {
                        degree: 3,
                        kind: PlaceKind::Scalar(rm(1, 26)),
                    },
                ],
            ),
        ];
        for c in configs {
            for k in 1..=8 {
                let direct = c.fixed_counts(k).unwrap();
                let via_bc = c.base_change(k).unwrap().fixed_counts(1).unwrap();
                assert_eq!(direct, via_bc, "k={k}");
            }
        }
    }

    #[test]
    fn point_bound_is_enforced() {
        let places: Vec<Place> = (0..21)
            .map(|_| regular(1, rm(1, 3), rm(2, 3)))
            .collect();
        let c = RamificationConfig::new(BigUint::from(4u64), places).unwrap();
        assert!(matches!(
            c.build_pr(),
            Err(RamificationError::TooManyPoints { .. })
        ));
    }
}
