//! The two top-level evaluators for the number of Frobenius-fixed rank-2
//! local systems: a six-case closed formula over the base field and a
//! twelve-case formula applied after base change to F_{q^k}, together with
//! their exact cross-check, output assembly, and the Lefschetz audit.
//!
//! Both formulas express the count as  Higgs term − correction.  The
//! correction is an exact rational combination of the fixed-point counting
//! functions, the orbit functions of the quasi-unipotent locus, and Picard
//! group orders; integrality and nonnegativity are asserted only on the
//! final count.

use crate::curve::{CurveError, CurveSpec};
use crate::higgs::{higg_p1, HiggConvention, HiggsError};
use crate::lefschetz::{
    alpha, beta, certify_periodic, eval_decomp, gamma, omega, sample_orbit_fn,
    DegreeMultiset, LefschetzDecomp, LefschetzError, PeriodicFn,
};
use crate::ramification::{FixedCounts, RamificationConfig, RamificationError};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("curve field size {curve_q} does not match ramification field size {config_q}")]
    FieldSizeMismatch { curve_q: u64, config_q: BigUint },
    #[error("the automatic genus-0 Higgs source requires genus 0, got genus {0}")]
    GenusNotZero(u64),
    #[error("explicit Higgs source is missing a value for k = {0}")]
    MissingExplicitValue(u64),
    #[error(
        "count at k={k} is negative: higgs={higgs}, correction={correction}, \
         pic(k)={pic_k}, pic(2k)={pic_2k}, c={frob_fixed}, b={swap_fixed}, \
         case={case}, spectral case={spectral_case}"
    )]
    NegativeCount {
        k: u64,
        higgs: BigInt,
        correction: BigRational,
        pic_k: BigInt,
        pic_2k: BigInt,
        frob_fixed: u64,
        swap_fixed: u64,
        case: Theorem1Case,
        spectral_case: u8,
    },
    #[error(
        "count at k={k} is not an integer: higgs={higgs}, correction={correction} \
         (case={case}, spectral case={spectral_case})"
    )]
    NonIntegerCount {
        k: u64,
        higgs: BigInt,
        correction: BigRational,
        case: Theorem1Case,
        spectral_case: u8,
    },
    #[error(
        "error-formula mismatch at k={k}: six-case formula gives {theorem1} (case {case}), \
         base-changed formula gives {spectral} (case {spectral_case})"
    )]
    CrosscheckMismatch {
        k: u64,
        theorem1: BigRational,
        spectral: BigRational,
        case: Theorem1Case,
        spectral_case: u8,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    Higgs(#[from] HiggsError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
}

/// Which of the six closed-formula cases a configuration falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem1Case {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Theorem1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem1Case::I => "i",
            Theorem1Case::II => "ii",
            Theorem1Case::III => "iii",
            Theorem1Case::IV => "iv",
            Theorem1Case::V => "v",
            Theorem1Case::VI => "vi",
        };
        write!(f, "{s}")
    }
}

/// Where the Higgs term comes from: automatic genus-0 enumeration or
/// user-supplied values (general genus).  Explicit values carry a mandatory
/// tag naming the q-power normalization they follow; the tag is metadata and
/// the values are used as given.
#[derive(Clone, Debug)]
pub enum HiggsSource {
    P1Auto {
        convention: HiggConvention,
    },
    Explicit {
        normalization: ExplicitNormalization,
        values: BTreeMap<u64, BigInt>,
    },
}

/// The two printed q-power normalizations for user-supplied moduli counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExplicitNormalization {
    Intro,
    GeomTheorem,
}

/// One output row of the counting pipeline.
#[derive(Clone, Debug)]
pub struct CountRow {
    pub k: u64,
    pub count: BigInt,
    pub higgs: BigInt,
    pub correction: BigRational,
    pub pic_k: BigInt,
    pub pic_2k: BigInt,
    pub frob_fixed: u64,
    pub swap_fixed: u64,
    pub case: Theorem1Case,
    pub spectral_case: u8,
    pub warning: Option<String>,
}

fn check_fields(curve: &CurveSpec, config: &RamificationConfig) -> Result<(), CountError> {
    if BigUint::from(curve.q()) != config.q {
        return Err(CountError::FieldSizeMismatch {
            curve_q: curve.q(),
            config_q: config.q.clone(),
        });
    }
    Ok(())
}

/// Case dispatch of the six-case formula: split by emptiness of the
/// regular-or-cuspidal and quasi-unipotent loci and the parity of the total
/// cuspidal degree.
pub fn classify_case(config: &RamificationConfig) -> Theorem1Case {
    let cr = config.total_degree_of_type('r') + config.total_degree_of_type('c');
    let u = config.total_degree_of_type('u');
    let deg_c = config.total_degree_of_type('c');
    match (cr > 0, u > 0) {
        (false, false) => Theorem1Case::I,
        (false, true) => Theorem1Case::II,
        (true, false) => {
            if deg_c % 2 == 0 {
                Theorem1Case::III
            } else {
                Theorem1Case::IV
            }
        }
        (true, true) => {
            if deg_c % 2 == 0 {
                Theorem1Case::V
            } else {
                Theorem1Case::VI
            }
        }
    }
}

fn rational(i: BigInt) -> BigRational {
    BigRational::from_integer(i)
}

fn half(v: BigRational) -> BigRational {
    v / rational(BigInt::from(2))
}

fn sign_pow(exponent: u64) -> BigRational {
    if exponent % 2 == 0 {
        rational(BigInt::one())
    } else {
        rational(-BigInt::one())
    }
}

/// The subtracted correction term of the six-case formula at level k,
/// evaluated with the counting functions of the original configuration.
pub fn theorem1_err(
    curve: &CurveSpec,
    config: &RamificationConfig,
    k: u64,
) -> Result<BigRational, CountError> {
    check_fields(curve, config)?;
    let fc = config.fixed_counts(k)?;
    let c = rational(BigInt::from(fc.frob));
    let b = rational(BigInt::from(fc.swap));
    let pic = rational(curve.pic(k));
    let pic_sq = &pic * &pic;
    let pic_sym2 = rational(curve.pic_sym2(k));
    let g = BigInt::from(curve.genus());
    let deg_cr = config.total_degree_of_type('r') + config.total_degree_of_type('c');
    let deg_u = config.total_degree_of_type('u');
    let u_degrees: Vec<u64> = config
        .places
        .iter()
        .filter(|p| p.kind.type_letter() == 'u')
        .map(|p| p.degree)
        .collect();

    let err = match classify_case(config) {
        Theorem1Case::I => &c * (&pic_sq * rational(&g - 1) + &pic),
        Theorem1Case::II => {
            let a = DegreeMultiset::new(u_degrees)?;
            let beta_k = rational(beta(&a, k));
            let gamma_k = rational(gamma(&a, k));
            let omega_k = omega(&a, k);
            &c * (sign_pow(deg_u + 1) * beta_k * &pic_sym2 + gamma_k * &pic + omega_k * &pic_sq)
        }
        Theorem1Case::III => {
            half(&c * rational(BigInt::from(2) * &g - 2 + BigInt::from(deg_cr))) * &pic_sq
        }
        Theorem1Case::IV => {
            let first = half(&c * rational(BigInt::from(2) * &g - 1 + BigInt::from(deg_cr)))
                - half(&c + &b);
            first * &pic_sq + &b * &pic_sym2
        }
        Theorem1Case::V | Theorem1Case::VI => {
            let a = DegreeMultiset::new(u_degrees)?;
            let alpha_k = rational(alpha(&a, k));
            let beta_k = rational(beta(&a, k));
            let signed_bb = sign_pow(deg_u) * &b * beta_k;
            if classify_case(config) == Theorem1Case::V {
                (half(&c * alpha_k) + half(signed_bb.clone())) * &pic_sq - signed_bb * &pic_sym2
            } else {
                (half(&c * alpha_k) - half(signed_bb.clone())) * &pic_sq + signed_bb * &pic_sym2
            }
        }
    };
    Ok(err)
}

/// Degrees of the places of one type in a configuration.
fn degrees_of_type(config: &RamificationConfig, letter: char) -> Vec<u64> {
    config
        .places
        .iter()
        .filter(|p| p.kind.type_letter() == letter)
        .map(|p| p.degree)
        .collect()
}

/// 2^{e} as an exact rational for possibly negative e.
fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        rational(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// The correction term of the twelve-case formula at level k: base-changes
/// the configuration to F_{q^k}, classifies on the base-changed type sets,
/// and evaluates the printed expression with Pic taken at levels k and 2k.
/// Returns the value together with the case label.
pub fn spectral_err(
    curve: &CurveSpec,
    config: &RamificationConfig,
    k: u64,
) -> Result<(BigRational, u8), CountError> {
    check_fields(curve, config)?;
    let bc = config.base_change(k)?;
    let fc = bc.fixed_counts(1)?;
    let c = rational(BigInt::from(fc.frob));
    let b = rational(BigInt::from(fc.swap));
    let pic1 = rational(curve.pic(k));
    let pic1_sq = &pic1 * &pic1;
    let pic2 = rational(curve.pic(2 * k));
    let g = BigInt::from(curve.genus());
    let two_g = BigInt::from(2) * &g;

    let c_degs = degrees_of_type(&bc, 'c');
    let r_degs = degrees_of_type(&bc, 'r');
    let u_degs = degrees_of_type(&bc, 'u');
    let deg_c: u64 = c_degs.iter().sum();
    let deg_r: u64 = r_degs.iter().sum();
    let n_u = u_degs.len();
    let u_even_nonempty = u_degs.iter().any(|d| d % 2 == 0);

    // Exactly one of the thirteen condition patterns matches; the last two
    // share the label 12.
    let (case, err) = if !c_degs.is_empty() {
        if n_u > 0 && u_even_nonempty {
            (1, BigRational::zero())
        } else if n_u > 0 {
            let value = sign_pow(n_u as u64 + 1)
                * &b
                * pow2(n_u as i64 - 2)
                * sign_pow(deg_c)
                * &pic2;
            (2, value)
        } else {
            let factor = rational(BigInt::one()) - sign_pow(deg_c);
            (3, &b / rational(BigInt::from(4)) * factor * &pic2)
        }
    } else if r_degs.is_empty() {
        // No regular-or-cuspidal places at level k.
        if n_u == 0 {
            (5, &c * &pic1_sq * rational(&g - 1) + &c * &pic1)
        } else if n_u == 1 {
            let d = u_degs[0];
            let base = -&c * &pic1 + half(&c * rational(BigInt::from(d))) * &pic1_sq;
            if d % 2 == 0 {
                (6, base)
            } else {
                (7, half(c.clone()) * &pic2 + base)
            }
        } else if u_even_nonempty {
            (8, &c * sign_pow(n_u as u64) * &pic1)
        } else {
            let value = &c * sign_pow(n_u as u64) * &pic1
                + &c * sign_pow(n_u as u64 + 1) * pow2(n_u as i64 - 2) * &pic2;
            (9, value)
        }
    } else {
        // Regular places present, no cuspidal ones.
        if n_u == 0 {
            let factor = rational(&two_g - 2 + BigInt::from(deg_r));
            (4, half(c.clone()) * &pic1_sq * factor)
        } else if n_u == 1 {
            let d = u_degs[0];
            let base = half(c.clone()) * &pic1_sq * rational(BigInt::from(d));
            if d % 2 == 0 {
                (10, base)
            } else {
                (11, base + half(b.clone()) * &pic2)
            }
        } else if u_even_nonempty {
            (12, BigRational::zero())
        } else {
            let value = sign_pow(n_u as u64 + 1) * &b * pow2(n_u as i64 - 2) * &pic2;
            (12, value)
        }
    };
    Ok((err, case))
}

/// Full evaluation at level k: Higgs term minus correction, with the
/// emptiness check, integrality and nonnegativity assertions, and all
/// intermediate values reported.
pub fn evaluate(
    curve: &CurveSpec,
    config: &RamificationConfig,
    source: &HiggsSource,
    k: u64,
) -> Result<CountRow, CountError> {
    check_fields(curve, config)?;
    let fc = config.fixed_counts(k)?;
    let pic_k = curve.pic(k);
    let pic_2k = curve.pic(2 * k);
    let case = classify_case(config);
    let (_, spectral_case) = spectral_err(curve, config, k)?;

    if !config.product_condition() {
        return Ok(CountRow {
            k,
            count: BigInt::zero(),
            higgs: BigInt::zero(),
            correction: BigRational::zero(),
            pic_k,
            pic_2k,
            frob_fixed: fc.frob,
            swap_fixed: fc.swap,
            case,
            spectral_case,
            warning: Some("eigenvalue product is nontrivial; the counted set is empty".into()),
        });
    }

    let higgs = match source {
        HiggsSource::P1Auto { convention } => {
            if curve.genus() != 0 {
                return Err(CountError::GenusNotZero(curve.genus()));
            }
            higg_p1(config, k, 1, *convention)?
        }
        HiggsSource::Explicit { values, .. } => values
            .get(&k)
            .cloned()
            .ok_or(CountError::MissingExplicitValue(k))?,
    };
    let correction = theorem1_err(curve, config, k)?;
    let count_rational = rational(higgs.clone()) - &correction;
    if !count_rational.is_integer() {
        return Err(CountError::NonIntegerCount {
            k,
            higgs,
            correction,
            case,
            spectral_case,
        });
    }
    let count = count_rational.to_integer();
    if count.is_negative() {
        return Err(CountError::NegativeCount {
            k,
            higgs,
            correction,
            pic_k,
            pic_2k,
            frob_fixed: fc.frob,
            swap_fixed: fc.swap,
            case,
            spectral_case,
        });
    }
    Ok(CountRow {
        k,
        count,
        higgs,
        correction,
        pic_k,
        pic_2k,
        frob_fixed: fc.frob,
        swap_fixed: fc.swap,
        case,
        spectral_case,
        warning: None,
    })
}

/// One line of the two-formula comparison.
#[derive(Clone, Debug)]
pub struct CrosscheckRow {
    pub k: u64,
    pub theorem1: BigRational,
    pub spectral: BigRational,
    pub case: Theorem1Case,
    pub spectral_case: u8,
    pub equal: bool,
}

/// Compares the two correction formulas exactly over a k-range.  The
/// comparison is independent of the Higgs term and runs even when the
/// counted set is empty.
pub fn crosscheck(
    curve: &CurveSpec,
    config: &RamificationConfig,
    k_range: impl IntoIterator<Item = u64>,
) -> Result<Vec<CrosscheckRow>, CountError> {
    let mut rows = Vec::new();
    for k in k_range {
        let t = theorem1_err(curve, config, k)?;
        let (s, spectral_case) = spectral_err(curve, config, k)?;
        rows.push(CrosscheckRow {
            k,
            equal: t == s,
            theorem1: t,
            spectral: s,
            case: classify_case(config),
            spectral_case,
        });
    }
    Ok(rows)
}

/// As `crosscheck`, but any mismatch is promoted to a hard error carrying
/// both values and labels.
pub fn crosscheck_strict(
    curve: &CurveSpec,
    config: &RamificationConfig,
    k_range: impl IntoIterator<Item = u64>,
) -> Result<Vec<CrosscheckRow>, CountError> {
    let rows = crosscheck(curve, config, k_range)?;
    for row in &rows {
        if !row.equal {
            return Err(CountError::CrosscheckMismatch {
                k: row.k,
                theorem1: row.theorem1.clone(),
                spectral: row.spectral.clone(),
                case: row.case,
                spectral_case: row.spectral_case,
            });
        }
    }
    Ok(rows)
}

/// Result of certifying one named periodic ingredient.
#[derive(Clone, Debug)]
pub struct CertEntry {
    pub name: String,
    pub period: u64,
    pub decomposition: Option<LefschetzDecomp>,
    pub rejection: Option<String>,
}

/// Integer-coefficient polynomial fit of the count in Q = q^k.
#[derive(Clone, Debug)]
pub struct PolyFit {
    /// Coefficients, constant term first.
    pub coefficients: Vec<BigInt>,
    pub verified_up_to: u64,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub certifications: Vec<CertEntry>,
    pub fit: Option<PolyFit>,
    pub divisibility_ok: bool,
    pub failures: Vec<String>,
}

impl AuditReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty() && self.certifications.iter().all(|c| c.rejection.is_none())
    }
}

fn certify_entry(name: &str, f: &PeriodicFn) -> Result<CertEntry, CountError> {
    let period = f.period() as u64;
    match certify_periodic(f)? {
        Ok(decomp) => Ok(CertEntry {
            name: name.to_string(),
            period,
            decomposition: Some(decomp),
            rejection: None,
        }),
        Err(rej) => Ok(CertEntry {
            name: name.to_string(),
            period,
            decomposition: None,
            rejection: Some(match &rej.rational_value {
                Some(v) => format!("index {}: S/n = {} is not an integer", rej.index, v),
                None => format!("index {}: Fourier coefficient is irrational", rej.index),
            }),
        }),
    }
}

/// Samples the fixed-point counting functions over one Frobenius period.
fn fixed_count_fns(
    config: &RamificationConfig,
) -> Result<(PeriodicFn, PeriodicFn), CountError> {
    let pr = config.build_pr()?;
    let period = pr.frob_order();
    let mut c_vals = Vec::with_capacity(period as usize);
    let mut b_vals = Vec::with_capacity(period as usize);
    for k in 1..=period {
        let FixedCounts { frob, swap } = pr.fixed_counts(k);
        c_vals.push(BigInt::from(frob));
        b_vals.push(BigInt::from(swap));
    }
    Ok((
        PeriodicFn::from_integers(c_vals)?,
        PeriodicFn::from_integers(b_vals)?,
    ))
}

/// Certifies every periodic ingredient of the counting formula, fits the
/// genus-0 count to an integer polynomial in q^k, and checks divisibility by
/// Pic(k).  Needs the automatic Higgs source since it evaluates many k.
pub fn lefschetz_audit(
    curve: &CurveSpec,
    config: &RamificationConfig,
    convention: HiggConvention,
    horizon: u64,
) -> Result<AuditReport, CountError> {
    check_fields(curve, config)?;
    let mut certifications = Vec::new();
    let mut failures = Vec::new();

    let (c_fn, b_fn) = fixed_count_fns(config)?;
    certifications.push(certify_entry("frob-fixed-count", &c_fn)?);
    certifications.push(certify_entry("swap-frob-fixed-count", &b_fn)?);

    let u_degrees = degrees_of_type(config, 'u');
    let deg_cr = config.total_degree_of_type('r') + config.total_degree_of_type('c');
    if !u_degrees.is_empty() {
        let a = DegreeMultiset::new(u_degrees.clone())?;
        certifications.push(certify_entry(
            "alpha",
            &sample_orbit_fn(&a, |a, k| rational(alpha(a, k))),
        )?);
        certifications.push(certify_entry(
            "beta",
            &sample_orbit_fn(&a, |a, k| rational(beta(a, k))),
        )?);
        certifications.push(certify_entry(
            "gamma",
            &sample_orbit_fn(&a, |a, k| rational(gamma(a, k))),
        )?);
        certifications.push(certify_entry("omega", &sample_orbit_fn(&a, omega))?);
    }
    if deg_cr > 0 {
        let half_sum = c_fn.combine(&b_fn, |x, y| half(x + y));
        certifications.push(certify_entry("(c+b)/2", &half_sum)?);
        if !u_degrees.is_empty() {
            let a = DegreeMultiset::new(u_degrees)?;
            let alpha_fn = sample_orbit_fn(&a, |a, k| rational(alpha(a, k)));
            let beta_fn = sample_orbit_fn(&a, |a, k| rational(beta(a, k)));
            let c_alpha = c_fn.combine(&alpha_fn, |x, y| half(x * y));
            let b_beta = b_fn.combine(&beta_fn, |x, y| half(x * y));
            certifications.push(certify_entry(
                "c*alpha/2 + b*beta/2",
                &c_alpha.combine(&b_beta, |x, y| x + y),
            )?);
            certifications.push(certify_entry(
                "c*alpha/2 - b*beta/2",
                &c_alpha.combine(&b_beta, |x, y| x - y),
            )?);
        }
    }

    // Polynomial fit and divisibility need the counts themselves.
    let source = HiggsSource::P1Auto { convention };
    let mut counts = Vec::new();
    for k in 1..=horizon {
        counts.push(evaluate(curve, config, &source, k)?);
    }
    for row in &counts {
        if !(&row.count % &row.pic_k).is_zero() {
            failures.push(format!(
                "pic({}) = {} does not divide the count {}",
                row.k, row.pic_k, row.count
            ));
        }
    }
    let divisibility_ok = failures.is_empty();

    let sample_len = config
        .geometric_point_count()
        .saturating_sub(config.total_degree_of_type('s'))
        .max(2)
        .min(horizon);
    let fit = fit_integer_polynomial(
        curve.q(),
        &counts
            .iter()
            .map(|r| (r.k, r.count.clone()))
            .collect::<Vec<_>>(),
        sample_len,
    );
    match &fit {
        Ok(f) => {
            if f.verified_up_to < horizon {
                failures.push(format!(
                    "polynomial fit verified only up to k = {}",
                    f.verified_up_to
                ));
            }
        }
        Err(msg) => failures.push(msg.clone()),
    }
    Ok(AuditReport {
        certifications,
        fit: fit.ok(),
        divisibility_ok,
        failures,
    })
}

/// Interpolates the first `sample_len` values as a polynomial in Q = q^k,
/// demands integer coefficients, and verifies the remaining values.
fn fit_integer_polynomial(
    q: u64,
    values: &[(u64, BigInt)],
    sample_len: u64,
) -> Result<PolyFit, String> {
    let n = sample_len.min(values.len() as u64) as usize;
    if n == 0 {
        return Err("no sample points for the polynomial fit".into());
    }
    let bq = BigInt::from(q);
    // Solve the Vandermonde system at abscissae q^k by Gaussian elimination
    // over exact rationals.
    let mut matrix: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for (k, value) in values.iter().take(n) {
        let x = rational(bq.pow(*k as u32));
        let mut row = Vec::with_capacity(n + 1);
        let mut pow = rational(BigInt::one());
        for _ in 0..n {
            row.push(pow.clone());
            pow *= &x;
        }
        row.push(rational(value.clone()));
        matrix.push(row);
    }
    let coeffs_rat = solve_linear(matrix).ok_or("singular Vandermonde system")?;
    let mut coefficients = Vec::with_capacity(n);
    for (i, c) in coeffs_rat.iter().enumerate() {
        if !c.is_integer() {
            return Err(format!("fit coefficient of Q^{i} is not an integer: {c}"));
        }
        coefficients.push(c.to_integer());
    }
    while coefficients.last().map_or(false, |c| c.is_zero()) {
        coefficients.pop();
    }
    let eval = |k: u64| -> BigInt {
        let x = bq.pow(k as u32);
        let mut acc = BigInt::zero();
        for c in coefficients.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    };
    let mut verified_up_to = values[..n].iter().map(|(k, _)| *k).max().unwrap_or(0);
    for (k, value) in values.iter().skip(n) {
        if &eval(*k) != value {
            return Err(format!(
                "fit fails at k = {k}: polynomial gives {}, count is {value}",
                eval(*k)
            ));
        }
        verified_up_to = *k;
    }
    Ok(PolyFit {
        coefficients,
        verified_up_to,
    })
}

/// Gaussian elimination with partial pivoting over exact rationals;
/// the matrix is n×(n+1) in augmented form.
fn solve_linear(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..=n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Some(
        (0..n)
            .map(|i| &m[i][n] / &m[i][i])
            .collect::<Vec<BigRational>>(),
    )
}

/// Sanity check used in tests: a certified decomposition reproduces the
/// function it came from.
pub fn decomp_matches(
    decomp: &LefschetzDecomp,
    f: &PeriodicFn,
    up_to: u64,
) -> Result<bool, CountError> {
    for k in 1..=up_to {
        if &rational(eval_decomp(decomp, k)?) != f.eval(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::IntPoly;
    use crate::ramification::{Place, PlaceKind, RationalMod1};

    fn rm(n: u64, d: u64) -> RationalMod1 {
        RationalMod1::from_u64(n, d)
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

    fn c_place(d: u64, t: RationalMod1) -> Place {
        Place {
            degree: d,
            kind: PlaceKind::Cuspidal(t),
        }
    }

    fn cfg(q: u64, places: Vec<Place>) -> RamificationConfig {
        RamificationConfig::new(BigUint::from(q), places).unwrap()
    }

    fn four_puncture_config() -> RamificationConfig {
        cfg(
            5,
            (0..4).map(|_| r_place(1, rm(1, 4), rm(3, 4))).collect(),
        )
    }

    fn rat_i(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_case(&cfg(7, vec![])), Theorem1Case::I);
        assert_eq!(
            classify_case(&cfg(3, vec![r_place(1, rm(0, 2), rm(1, 2))])),
            Theorem1Case::III
        );
        assert_eq!(
            classify_case(&cfg(
                2,
                vec![c_place(1, rm(1, 3)), u_place(1, RationalMod1::zero())]
            )),
            Theorem1Case::VI
        );
    }

    #[test]
    fn theorem1_err_examples() {
        // Four-puncture family: err = (8/2)·(0−2+4)·1 = 8 for all k.
        let curve = CurveSpec::genus_zero(5).unwrap();
        let config = four_puncture_config();
        for k in 1..=6 {
            assert_eq!(theorem1_err(&curve, &config, k).unwrap(), rat_i(8));
        }

        // Two r-places (0, 1/2) over q=3 at genus 0: err = 0.
        let curve = CurveSpec::genus_zero(3).unwrap();
        let config = cfg(
            3,
            vec![
                r_place(1, rm(0, 2), rm(1, 2)),
                r_place(1, rm(0, 2), rm(1, 2)),
            ],
        );
        for k in 1..=6 {
            assert_eq!(theorem1_err(&curve, &config, k).unwrap(), rat_i(0));
        }

        // Empty S over the elliptic curve with P = 1 − z + 2z²: err(1) = 2.
        let curve = CurveSpec::from_numerator(2, 1, IntPoly::from_i64(&[1, -1, 2])).unwrap();
        let config = cfg(2, vec![]);
        assert_eq!(theorem1_err(&curve, &config, 1).unwrap(), rat_i(2));
    }

    #[test]
    fn spectral_matches_theorem1_on_examples() {
        let cases: Vec<(CurveSpec, RamificationConfig)> = vec![
            (CurveSpec::genus_zero(5).unwrap(), four_puncture_config()),
            (
                CurveSpec::genus_zero(3).unwrap(),
                cfg(
                    3,
                    vec![
                        r_place(1, rm(0, 2), rm(1, 2)),
                        r_place(1, rm(0, 2), rm(1, 2)),
                    ],
                ),
            ),
            (
                CurveSpec::from_numerator(2, 1, IntPoly::from_i64(&[1, -1, 2])).unwrap(),
                cfg(2, vec![]),
            ),
            (
                CurveSpec::from_numerator(2, 1, IntPoly::from_i64(&[1, 0, 2])).unwrap(),
                cfg(
                    2,
                    vec![c_place(1, rm(1, 3)), u_place(1, RationalMod1::zero())],
                ),
            ),
        ];
        for (curve, config) in cases {
            let rows = crosscheck_strict(&curve, &config, 1..=12).unwrap();
            assert_eq!(rows.len(), 12);
        }
    }

    #[test]
    fn spectral_case7_example() {
        // One u-place of degree 1 over q=3, genus 0: case 7 with value 0.
        let curve = CurveSpec::genus_zero(3).unwrap();
        let config = cfg(3, vec![u_place(1, RationalMod1::zero())]);
        let (err, case) = spectral_err(&curve, &config, 1).unwrap();
        assert_eq!(case, 7);
        assert_eq!(err, rat_i(0));
    }

    #[test]
    fn spectral_case_migration_under_base_change() {
        // A cuspidal place at odd k dispatches with cuspidal cases and at
        // even k (after type migration) with regular ones.
        let curve = CurveSpec::genus_zero(2).unwrap();
        let config = cfg(
            2,
            vec![c_place(1, rm(1, 3)), u_place(1, RationalMod1::zero())],
        );
        let (_, case1) = spectral_err(&curve, &config, 1).unwrap();
        let (_, case2) = spectral_err(&curve, &config, 2).unwrap();
        assert_eq!(case1, 2);
        assert_eq!(case2, 11);
    }

    #[test]
    fn count_four_puncture_family() {
        let curve = CurveSpec::genus_zero(5).unwrap();
        let config = four_puncture_config();
        let source = HiggsSource::P1Auto {
            convention: HiggConvention::Geom,
        };
        for k in 1..=6u32 {
            let row = evaluate(&curve, &config, &source, k as u64).unwrap();
            assert_eq!(row.count, BigInt::from(5).pow(k) - 3);
            assert!(row.warning.is_none());
        }
        // The alternative convention undercounts the Higgs term and must trip
        // the nonnegativity assertion at k = 1.
        let intro = HiggsSource::P1Auto {
            convention: HiggConvention::Intro,
        };
        assert!(matches!(
            evaluate(&curve, &config, &intro, 1),
            Err(CountError::NegativeCount { .. })
        ));
    }

    #[test]
    fn count_warns_when_product_fails() {
        let curve = CurveSpec::genus_zero(5).unwrap();
        let config = cfg(
            5,
            (0..3).map(|_| r_place(1, rm(0, 4), rm(2, 4))).collect(),
        );
        assert!(!config.product_condition());
        let source = HiggsSource::P1Auto {
            convention: HiggConvention::Geom,
        };
        let row = evaluate(&curve, &config, &source, 2).unwrap();
        assert_eq!(row.count, BigInt::zero());
        assert!(row.warning.is_some());
        // The cross-check still runs.
        assert!(crosscheck_strict(&curve, &config, 1..=6).is_ok());
    }

    #[test]
    fn count_two_puncture_degenerate() {
        let curve = CurveSpec::genus_zero(3).unwrap();
        let config = cfg(
            3,
            vec![
                r_place(1, rm(0, 2), rm(1, 2)),
                r_place(1, rm(0, 2), rm(1, 2)),
            ],
        );
        let source = HiggsSource::P1Auto {
            convention: HiggConvention::Geom,
        };
        for k in 1..=6 {
            let row = evaluate(&curve, &config, &source, k).unwrap();
            assert_eq!(row.count, BigInt::zero());
        }
    }

    #[test]
    fn explicit_source_is_used_verbatim() {
        let curve = CurveSpec::from_numerator(2, 1, IntPoly::from_i64(&[1, -1, 2])).unwrap();
        let config = cfg(2, vec![]);
        // err(1) = 2, so an explicit Higgs value of 10 gives count 8.
        let source = HiggsSource::Explicit {
            normalization: ExplicitNormalization::Intro,
            values: [(1u64, BigInt::from(10))].into_iter().collect(),
        };
        let row = evaluate(&curve, &config, &source, 1).unwrap();
        assert_eq!(row.count, BigInt::from(8));
        assert!(matches!(
            evaluate(&curve, &config, &source, 2),
            Err(CountError::MissingExplicitValue(2))
        ));
    }

    #[test]
    fn audit_four_puncture_family() {
        let curve = CurveSpec::genus_zero(5).unwrap();
        let config = four_puncture_config();
        let report = lefschetz_audit(&curve, &config, HiggConvention::Geom, 8).unwrap();
        assert!(report.all_ok(), "failures: {:?}", report.failures);
        let fit = report.fit.unwrap();
        // count = Q − 3.
        assert_eq!(fit.coefficients, vec![BigInt::from(-3), BigInt::from(1)]);
    }
}
