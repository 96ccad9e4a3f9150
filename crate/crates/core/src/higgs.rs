//! Genus-0 enumeration of stable graded parabolic Higgs bundles on the
//! projective line, the signed aggregation over quasi-unipotent subsets, and
//! an exhaustive finite-field oracle.
//!
//! A graded rank-2 Higgs bundle on P¹ is O(a) ⊕ O(e−a) with the Higgs field
//! θ killing the invariant summand O(a) and mapping the other into
//! O(a)(D), D = K + Σ marked points.  With zero parabolic weights and e odd,
//! stability is a ≤ (e−1)/2 and a nonzero θ is a section of degree
//! h = 2a − e − 2 + N, N = Σ marked degrees.  Isomorphism classes of θ form
//! the projectivization; at a marked closed point where θ vanishes the
//! parabolic line may sit in either summand (two F_q-rational choices), where
//! θ does not vanish it is forced into the invariant summand.

use crate::numtheory::{FieldDescriptor, FqPoly, NumTheoryError};
use crate::ramification::{PlaceKind, RamificationConfig, RamificationError};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HiggsError {
    #[error("bundle degree e must be odd, got {0}")]
    EvenBundleDegree(i64),
    #[error("field size must be ≥ 2, got {0}")]
    BadFieldSize(BigUint),
    #[error("marked point degrees must be ≥ 1")]
    ZeroDegreePoint,
    #[error("too many marked points for inclusion-exclusion: {0} (bound 20)")]
    TooManyMarked(usize),
    #[error("oracle bound exceeded: {0}")]
    OracleBound(String),
    #[error("oracle marked points must be pairwise distinct closed points")]
    DuplicateOraclePoint,
    #[error("oracle affine point polynomial must be monic irreducible")]
    BadOraclePoint,
    #[error("cuspidal places over F_(q^k) are not supported by the genus-0 path")]
    CuspidalPlace,
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// A marked closed point known only by its degree, with an optional
/// nonvanishing requirement on θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub degree: u64,
    pub require_nonzero: bool,
}

/// What a parabolic line at a θ-vanishing marked point is worth: both summand
/// choices (weight 2 per closed point) or a single fixed one (weight 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinePolicy {
    Free,
    Forced,
}

/// Aggregation convention for the quasi-unipotent subset sum.  `Geom` is the
/// recursion-consistent rule (−2)^{|S_u−V|} with free parabolic lines;
/// `Intro` is the alternative printed rule (−1)^{|S_u−V|}·2^{|V|} with forced
/// lines, kept behind a flag for auditability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HiggConvention {
    Geom,
    Intro,
}

impl HiggConvention {
    pub fn line_policy(self) -> LinePolicy {
        match self {
            HiggConvention::Geom => LinePolicy::Free,
            HiggConvention::Intro => LinePolicy::Forced,
        }
    }

    fn coefficient(self, dropped: usize, kept: usize) -> BigInt {
        let sign = if dropped % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        match self {
            HiggConvention::Geom => sign * (BigInt::one() << dropped),
            HiggConvention::Intro => sign * (BigInt::one() << kept),
        }
    }
}

/// One enumeration instance over F_Q.
#[derive(Clone, Debug)]
pub struct GrConfig {
    pub field_size: BigUint,
    /// Bundle degree e; must be odd so zero weights are in general position.
    pub bundle_degree: i64,
    pub marked: Vec<MarkedPoint>,
    pub line_policy: LinePolicy,
}

impl GrConfig {
    pub fn validate(&self) -> Result<(), HiggsError> {
        if self.bundle_degree.rem_euclid(2) != 1 {
            return Err(HiggsError::EvenBundleDegree(self.bundle_degree));
        }
        if self.field_size < BigUint::from(2u8) {
            return Err(HiggsError::BadFieldSize(self.field_size.clone()));
        }
        if self.marked.iter().any(|m| m.degree == 0) {
            return Err(HiggsError::ZeroDegreePoint);
        }
        if self.marked.len() > 20 {
            return Err(HiggsError::TooManyMarked(self.marked.len()));
        }
        Ok(())
    }
}

/// |P^N(F_Q)| = (Q^{N+1} − 1)/(Q − 1) for N ≥ 0, and 0 for negative N.
pub fn proj_count(q: &BigUint, n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    let q = BigInt::from(q.clone());
    let num = q.pow(n as u32 + 1) - BigInt::one();
    num / (q - BigInt::one())
}

/// Exact count of stable graded parabolic Higgs bundles for the instance.
///
/// Sums over the splitting parameter a (stability a ≤ (e−1)/2, nonzero θ
/// needs h = 2a − e − 2 + N ≥ 0) the number of projective classes of
/// degree-h sections weighted by the line choices at their exact
/// marked-vanishing set, excluding classes vanishing at required points.
/// Vanishing at a closed point of degree d imposes d independent linear
/// conditions, so classes vanishing on a set of total degree δ form a
/// projective space of dimension h − δ.
pub fn grcount(config: &GrConfig) -> Result<BigInt, HiggsError> {
    config.validate()?;
    let n_total: i64 = config.marked.iter().map(|m| m.degree as i64).sum();
    let e = config.bundle_degree;
    let a_max = (e - 1) / 2;
    // h ≥ 0 ⟺ 2a ≥ e + 2 − N.
    let a_min = div_ceil(e + 2 - n_total, 2);
    let mut total = BigInt::zero();
    let mut a = a_min;
    while a <= a_max {
        let h = 2 * a - e - 2 + n_total;
        total += stratified_count(config, h)?;
        a += 1;
    }
    Ok(total)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let d = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        d
    } else {
        d + 1
    }
}

/// Inclusion-exclusion over vanishing patterns among the marked points for a
/// fixed section degree h.
fn stratified_count(config: &GrConfig, h: i64) -> Result<BigInt, HiggsError> {
    let m = config.marked.len();
    let size = 1usize << m;
    // counts[W] = number of classes vanishing on at least the subset W.
    let mut counts: Vec<BigInt> = Vec::with_capacity(size);
    for mask in 0..size {
        let delta: i64 = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| config.marked[i].degree as i64)
            .sum();
        counts.push(proj_count(&config.field_size, h - delta));
    }
    // Superset Möbius transform: counts[Z] becomes the number of classes
    // whose marked-vanishing set is exactly Z.
    for bit in 0..m {
        for mask in 0..size {
            if mask >> bit & 1 == 0 {
                let upper = counts[mask | 1 << bit].clone();
                counts[mask] -= upper;
            }
        }
    }
    let req_mask: usize = (0..m)
        .filter(|&i| config.marked[i].require_nonzero)
        .map(|i| 1usize << i)
        .sum();
    let mut total = BigInt::zero();
    for (mask, exact) in counts.iter().enumerate() {
        if mask & req_mask != 0 {
            continue;
        }
        let weight = match config.line_policy {
            LinePolicy::Free => BigInt::one() << mask.count_ones() as usize,
            LinePolicy::Forced => BigInt::one(),
        };
        total += weight * exact;
    }
    Ok(total)
}

/// The printed genus-0 closed form Σ_{i=3}^{n} ⌊(i−1)/2⌋ Q^{n−i} for n
/// degree-1 marked points and e = 1 with forced lines.
pub fn example_closed_form(n: u64, q: &BigUint) -> Result<BigInt, HiggsError> {
    if n < 3 {
        return Err(HiggsError::OracleBound(format!(
            "closed form needs n ≥ 3, got {n}"
        )));
    }
    let q = BigInt::from(q.clone());
    let mut total = BigInt::zero();
    for i in 3..=n {
        let coeff = BigInt::from((i - 1) / 2);
        total += coeff * q.pow((n - i) as u32);
    }
    Ok(total)
}

/// A closed point of P¹ with explicit coordinates for the oracle: either the
/// monic irreducible polynomial of its affine locus, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLocus {
    Affine(FqPoly),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct OraclePoint {
    pub locus: PointLocus,
    pub require_nonzero: bool,
}

impl OraclePoint {
    fn degree(&self) -> u64 {
        match &self.locus {
            PointLocus::Affine(p) => p.degree() as u64,
            PointLocus::Infinity => 1,
        }
    }
}

/// Brute-force oracle: enumerates every nonzero degree-h binary form over the
/// field up to scalar, tests vanishing at each explicit closed point by
/// polynomial divisibility (degree bookkeeping at infinity), and applies the
/// same constraints and weights as `grcount`.
pub fn grcount_oracle(
    field: &FieldDescriptor,
    bundle_degree: i64,
    points: &[OraclePoint],
    line_policy: LinePolicy,
) -> Result<BigInt, HiggsError> {
    let q = field.order();
    if q > 9 {
        return Err(HiggsError::OracleBound(format!(
            "field size {q} exceeds the oracle bound 9"
        )));
    }
    for (i, a) in points.iter().enumerate() {
        if let PointLocus::Affine(p) = &a.locus {
            if !p.is_monic(field) || !p.is_irreducible(field) {
                return Err(HiggsError::BadOraclePoint);
            }
        }
        for b in &points[i + 1..] {
            if a.locus == b.locus {
                return Err(HiggsError::DuplicateOraclePoint);
            }
        }
    }
    if bundle_degree.rem_euclid(2) != 1 {
        return Err(HiggsError::EvenBundleDegree(bundle_degree));
    }
    let n_total: i64 = points.iter().map(|p| p.degree() as i64).sum();
    let e = bundle_degree;
    let a_max = (e - 1) / 2;
    let a_min = div_ceil(e + 2 - n_total, 2);
    let mut total = BigInt::zero();
    let mut a = a_min;
    while a <= a_max {
        let h = 2 * a - e - 2 + n_total;
        if h > 5 {
            return Err(HiggsError::OracleBound(format!(
                "section degree {h} exceeds the oracle bound 5"
            )));
        }
        total += oracle_section_count(field, h as usize, points, line_policy);
        a += 1;
    }
    Ok(total)
}

fn oracle_section_count(
    field: &FieldDescriptor,
    h: usize,
    points: &[OraclePoint],
    line_policy: LinePolicy,
) -> BigInt {
    let elems = field.elements();
    let mut total = BigInt::zero();
    // Canonical representative per projective class: the lowest-index nonzero
    // coefficient is 1.
    let mut coeff_idx = vec![0usize; h + 1];
    'outer: loop {
        let coeffs: Vec<_> = coeff_idx.iter().map(|&i| elems[i].clone()).collect();
        if let Some(first) = coeffs.iter().position(|c| !field.is_zero(c)) {
            if coeffs[first] == field.one() {
                let dehom = FqPoly::new(field, coeffs.clone());
                let vanish_at_infinity = field.is_zero(&coeffs[h]);
                let mut weight = Some(0u32);
                for pt in points {
                    let vanishes = match &pt.locus {
                        PointLocus::Affine(p) => p.divides(field, &dehom),
                        PointLocus::Infinity => vanish_at_infinity,
                    };
                    if vanishes {
                        if pt.require_nonzero {
                            weight = None;
                            break;
                        }
                        if let Some(w) = weight.as_mut() {
                            *w += 1;
                        }
                    }
                }
                if let Some(w) = weight {
                    total += match line_policy {
                        LinePolicy::Free => BigInt::one() << w as usize,
                        LinePolicy::Forced => BigInt::one(),
                    };
                }
            }
        }
        let mut i = 0;
        loop {
            if i > h {
                break 'outer;
            }
            coeff_idx[i] += 1;
            if coeff_idx[i] < elems.len() {
                break;
            }
            coeff_idx[i] = 0;
            i += 1;
        }
    }
    total
}

/// Degrees of the non-scalar places of a genus-0 config split by type, used
/// to assemble the aggregation.
fn split_degrees(config: &RamificationConfig) -> Result<(Vec<u64>, Vec<u64>), HiggsError> {
    let mut unipotent = Vec::new();
    let mut regular = Vec::new();
    for place in &config.places {
        match place.kind {
            PlaceKind::Unipotent(_) => unipotent.push(place.degree),
            PlaceKind::Regular(..) => regular.push(place.degree),
            PlaceKind::Cuspidal(_) => return Err(HiggsError::CuspidalPlace),
            PlaceKind::Scalar(_) => {}
        }
    }
    Ok((unipotent, regular))
}

/// The aggregated Higgs term at level k for a genus-0 config with no cuspidal
/// places: base-changes to F_{q^k} and sums the graded counts over subsets V
/// of the quasi-unipotent places with the convention's coefficient.
pub fn higg_p1(
    config: &RamificationConfig,
    k: u64,
    bundle_degree: i64,
    convention: HiggConvention,
) -> Result<BigInt, HiggsError> {
    let bc = config.base_change(k)?;
    let (unipotent, regular) = split_degrees(&bc)?;
    let policy = convention.line_policy();
    let nu = unipotent.len();
    let mut total = BigInt::zero();
    for v_mask in 0usize..1 << nu {
        let kept = v_mask.count_ones() as usize;
        let dropped = nu - kept;
        let mut marked: Vec<MarkedPoint> = regular
            .iter()
            .map(|&d| MarkedPoint {
                degree: d,
                require_nonzero: false,
            })
            .collect();
        for (i, &d) in unipotent.iter().enumerate() {
            if v_mask >> i & 1 == 1 {
                marked.push(MarkedPoint {
                    degree: d,
                    require_nonzero: false,
                });
            }
        }
        let gr = grcount(&GrConfig {
            field_size: bc.q.clone(),
            bundle_degree,
            marked,
            line_policy: policy,
        })?;
        total += convention.coefficient(dropped, kept) * gr;
    }
    Ok(total)
}

/// The telescoped form of the geometric convention: a single graded count
/// with θ required nonzero over every quasi-unipotent place and free lines
/// elsewhere.  Equal to `higg_p1(…, Geom)` by the vanishing-locus recursion.
pub fn higg_p1_direct(
    config: &RamificationConfig,
    k: u64,
    bundle_degree: i64,
) -> Result<BigInt, HiggsError> {
    let bc = config.base_change(k)?;
    let (unipotent, regular) = split_degrees(&bc)?;
    let mut marked: Vec<MarkedPoint> = regular
        .iter()
        .map(|&d| MarkedPoint {
            degree: d,
            require_nonzero: false,
        })
        .collect();
    marked.extend(unipotent.iter().map(|&d| MarkedPoint {
        degree: d,
        require_nonzero: true,
    }));
    grcount(&GrConfig {
        field_size: bc.q.clone(),
        bundle_degree,
        marked,
        line_policy: LinePolicy::Free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramification::{Place, RationalMod1};

    fn marked(degs: &[u64]) -> Vec<MarkedPoint> {
        degs.iter()
            .map(|&d| MarkedPoint {
                degree: d,
                require_nonzero: false,
            })
            .collect()
    }

    fn gr(q: u64, e: i64, marked_points: Vec<MarkedPoint>, policy: LinePolicy) -> BigInt {
        grcount(&GrConfig {
            field_size: BigUint::from(q),
            bundle_degree: e,
            marked: marked_points,
            line_policy: policy,
        })
        .unwrap()
    }

    #[test]
    fn proj_count_values() {
        let q3 = BigUint::from(3u64);
        let q2 = BigUint::from(2u64);
        assert_eq!(proj_count(&q3, 0), BigInt::one());
        assert_eq!(proj_count(&q3, 1), BigInt::from(4));
        assert_eq!(proj_count(&q2, 2), BigInt::from(7));
        assert_eq!(proj_count(&q2, -1), BigInt::zero());
    }

    #[test]
    fn closed_form_values() {
        let q = BigUint::from(7u64);
        // n = 4 → q + 1, n = 5 → q² + q + 2.
        assert_eq!(example_closed_form(4, &q).unwrap(), BigInt::from(8));
        assert_eq!(example_closed_form(5, &q).unwrap(), BigInt::from(58));
        assert_eq!(
            example_closed_form(6, &BigUint::from(2u64)).unwrap(),
            BigInt::from(18)
        );
    }

    #[test]
    fn grcount_four_rational_points() {
        // Forced lines match the printed example; free lines double the
        // vanishing strata.
        assert_eq!(gr(3, 1, marked(&[1, 1, 1, 1]), LinePolicy::Forced), BigInt::from(4));
        assert_eq!(gr(3, 1, marked(&[1, 1, 1, 1]), LinePolicy::Free), BigInt::from(8));
    }

    #[test]
    fn grcount_two_points_is_empty() {
        for q in [2u64, 3, 4, 5, 7] {
            for policy in [LinePolicy::Free, LinePolicy::Forced] {
                assert_eq!(gr(q, 1, marked(&[1, 1]), policy), BigInt::zero());
            }
        }
    }

    #[test]
    fn grcount_matches_closed_form_on_rational_points() {
        for n in 4..=8u64 {
            for q in [2u64, 3, 4, 5, 8, 9] {
                let got = gr(q, 1, marked(&vec![1; n as usize]), LinePolicy::Forced);
                let want = example_closed_form(n, &BigUint::from(q)).unwrap();
                assert_eq!(got, want, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn grcount_nonzero_requirement_is_monotone() {
        let base: Vec<MarkedPoint> = marked(&[1, 1, 2, 1]);
        let q = BigUint::from(4u64);
        for policy in [LinePolicy::Free, LinePolicy::Forced] {
            let mut prev = grcount(&GrConfig {
                field_size: q.clone(),
                bundle_degree: 1,
                marked: base.clone(),
                line_policy: policy,
            })
            .unwrap();
            for i in 0..base.len() {
                let mut m = base.clone();
                for p in m.iter_mut().take(i + 1) {
                    p.require_nonzero = true;
                }
                let cur = grcount(&GrConfig {
                    field_size: q.clone(),
                    bundle_degree: 1,
                    marked: m,
                    line_policy: policy,
                })
                .unwrap();
                assert!(cur <= prev);
                prev = cur;
            }
        }
    }

    #[test]
    fn oracle_matches_on_rational_points() {
        // Q=3, e=1, 4 rational points (three affine + infinity), forced → 4.
        let field = FieldDescriptor::new(3, 1).unwrap();
        let mut points: Vec<OraclePoint> = (0..3u64)
            .map(|c| OraclePoint {
                locus: PointLocus::Affine(FqPoly {
                    coeffs: vec![vec![c], vec![1]],
                }),
                require_nonzero: false,
            })
            .collect();
        points.push(OraclePoint {
            locus: PointLocus::Infinity,
            require_nonzero: false,
        });
        assert_eq!(
            grcount_oracle(&field, 1, &points, LinePolicy::Forced).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            grcount_oracle(&field, 1, &points, LinePolicy::Free).unwrap(),
            BigInt::from(8)
        );
    }

    #[test]
    fn oracle_matches_mixed_degrees_over_f4() {
        // One degree-2 point and two degree-1 points over F_4, free lines.
        let field = FieldDescriptor::new(2, 2).unwrap();
        let quad = FqPoly::monic_irreducibles(&field, 2).into_iter().next().unwrap();
        let points = vec![
            OraclePoint {
                locus: PointLocus::Affine(quad),
                require_nonzero: false,
            },
            OraclePoint {
                locus: PointLocus::Affine(FqPoly {
                    coeffs: vec![field.zero(), field.one()],
                }),
                require_nonzero: false,
            },
            OraclePoint {
                locus: PointLocus::Infinity,
                require_nonzero: false,
            },
        ];
        let abstract_count = gr(4, 1, marked(&[2, 1, 1]), LinePolicy::Free);
        assert_eq!(
            grcount_oracle(&field, 1, &points, LinePolicy::Free).unwrap(),
            abstract_count
        );
    }

    #[test]
    fn oracle_rejects_duplicates_and_bad_polys() {
        let field = FieldDescriptor::new(3, 1).unwrap();
        let pt = OraclePoint {
            locus: PointLocus::Infinity,
            require_nonzero: false,
        };
        assert!(matches!(
            grcount_oracle(&field, 1, &[pt.clone(), pt], LinePolicy::Free),
            Err(HiggsError::DuplicateOraclePoint)
        ));
        let reducible = OraclePoint {
            locus: PointLocus::Affine(FqPoly {
                coeffs: vec![vec![0], vec![0], vec![1]],
            }),
            require_nonzero: false,
        };
        assert!(matches!(
            grcount_oracle(&field, 1, &[reducible], LinePolicy::Free),
            Err(HiggsError::BadOraclePoint)
        ));
    }

    fn r_place(d: u64, t1: RationalMod1, t2: RationalMod1) -> Place {
        Place {
            degree: d,
            kind: PlaceKind::Regular(t1, t2),
        }
    }

    fn u_place(d: u64, t: RationalMod1) -> Place {
        Place {
            degree: d,
            kind: PlaceKind::Unipotent(t),
        }
    }

    #[test]
    fn higg_four_regular_places() {
        let quarter = RationalMod1::from_u64(1, 4);
        let three_quarters = RationalMod1::from_u64(3, 4);
        let c = RamificationConfig::new(
            BigUint::from(5u64),
            (0..4)
                .map(|_| r_place(1, quarter.clone(), three_quarters.clone()))
                .collect(),
        )
        .unwrap();
        for k in 1..=4u64 {
            let q_k = BigInt::from(5u64).pow(k as u32);
            assert_eq!(
                higg_p1(&c, k, 1, HiggConvention::Geom).unwrap(),
                &q_k + 5
            );
            // Forced lines with no unipotent places count each class once.
            assert_eq!(
                higg_p1(&c, k, 1, HiggConvention::Intro).unwrap(),
                &q_k + 1
            );
        }
    }

    #[test]
    fn higg_two_regular_places_vanishes() {
        let c = RamificationConfig::new(
            BigUint::from(3u64),
            vec![
                r_place(1, RationalMod1::from_u64(0, 2), RationalMod1::from_u64(1, 2)),
                r_place(1, RationalMod1::from_u64(0, 2), RationalMod1::from_u64(1, 2)),
            ],
        )
        .unwrap();
        for k in 1..=5 {
            assert_eq!(higg_p1(&c, k, 1, HiggConvention::Geom).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn geom_convention_telescopes() {
        let configs = vec![
            RamificationConfig::new(
                BigUint::from(3u64),
                vec![
                    u_place(1, RationalMod1::zero()),
                    u_place(2, RationalMod1::from_u64(1, 8)),
                    r_place(1, RationalMod1::from_u64(0, 2), RationalMod1::from_u64(1, 2)),
                ],
            )
            .unwrap(),
            RamificationConfig::new(
                BigUint::from(2u64),
                vec![
                    u_place(1, RationalMod1::zero()),
                    u_place(1, RationalMod1::zero()),
                    u_place(3, RationalMod1::from_u64(1, 7)),
                ],
            )
            .unwrap(),
        ];
        for c in configs {
            for k in 1..=4 {
                assert_eq!(
                    higg_p1(&c, k, 1, HiggConvention::Geom).unwrap(),
                    higg_p1_direct(&c, k, 1).unwrap()
                );
            }
        }
    }
}
