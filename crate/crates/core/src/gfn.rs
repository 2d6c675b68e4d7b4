//! Discrete generalized functions and their standard-function encodings.
//!
//! [`kron`] and [`heav`] are the normative definitions. The `repr_*`
//! functions evaluate the same truth tables through gamma, Bessel, cosine
//! or Hermite expressions over bounded integer domains, round the result,
//! and reject any evaluation whose residual is too large.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// First positive zero of the Bessel function J0.
pub const BESSEL_Z1: f64 = 2.404_825_557_695_773;

const J0_MAX_ARG: f64 = 12.0;
const J0_TERMS: usize = 40;
const TOL_CLOSED: f64 = 1e-9;
const TOL_BESSEL: f64 = 1e-6;
/// Largest `z` accepted by the gamma parity forms. Keeps every factorial in `u128`.
const GAMMA_PARITY_MAX_Z: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselConstants {
    pub z1: f64,
}

impl Default for BesselConstants {
    fn default() -> Self {
        Self { z1: BESSEL_Z1 }
    }
}

pub fn kron(z: i64) -> i64 {
    i64::from(z == 0)
}

pub fn heav(z: i64) -> i64 {
    i64::from(z >= 0)
}

/// `Γ(n) = (n − 1)!` for positive integers.
pub fn gamma_int(n: i64) -> Result<u128> {
    if n <= 0 {
        return Err(domain(format!("gamma is unbounded at non-positive integer {n}")));
    }
    let mut acc: u128 = 1;
    for k in 2..n {
        acc = acc
            .checked_mul(k as u128)
            .ok_or_else(|| domain(format!("gamma({n}) overflows")))?;
    }
    Ok(acc)
}

/// `(−1)^Γ(n)`.
fn gamma_parity_sign(n: i64) -> Result<f64> {
    Ok(if gamma_int(n)? % 2 == 0 { 1.0 } else { -1.0 })
}

fn neg_one_pow(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Zeroth-order Bessel function of the first kind by its power series.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("bessel_j0 needs a finite argument"));
    }
    if x.abs() > J0_MAX_ARG {
        return Err(domain(format!("bessel_j0 argument {x} exceeds {J0_MAX_ARG}")));
    }
    let q = -(x * x) / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..=J0_TERMS {
        term *= q / ((m * m) as f64);
        sum += term;
    }
    Ok(sum)
}

fn hermite2(x: f64) -> f64 {
    x * x - 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReprKind {
    Direct,
    Gamma,
    Cosine,
    Bessel,
    Hermite,
}

impl ReprKind {
    pub const ALL: [ReprKind; 5] = [
        ReprKind::Direct,
        ReprKind::Gamma,
        ReprKind::Cosine,
        ReprKind::Bessel,
        ReprKind::Hermite,
    ];

    fn delta_forms(self) -> &'static [DeltaForm] {
        match self {
            ReprKind::Direct => &[DeltaForm::Direct],
            ReprKind::Gamma => &[DeltaForm::GammaLinear, DeltaForm::GammaParity],
            ReprKind::Cosine => &[DeltaForm::Cosine],
            ReprKind::Bessel => &[DeltaForm::Bessel],
            ReprKind::Hermite => &[DeltaForm::Hermite],
        }
    }

    fn heav_forms(self) -> &'static [HeavForm] {
        match self {
            ReprKind::Direct => &[HeavForm::Direct],
            ReprKind::Gamma => &[
                HeavForm::GammaLinear,
                HeavForm::GammaParity,
                HeavForm::GammaParityUpper,
            ],
            ReprKind::Cosine => &[HeavForm::Cosine],
            ReprKind::Bessel => &[HeavForm::Bessel],
            ReprKind::Hermite => &[HeavForm::Hermite],
        }
    }
}

impl fmt::Display for ReprKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReprKind::Direct => "direct",
            ReprKind::Gamma => "gamma",
            ReprKind::Cosine => "cosine",
            ReprKind::Bessel => "bessel",
            ReprKind::Hermite => "hermite",
        };
        f.write_str(s)
    }
}

impl FromStr for ReprKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReprKind::ALL
            .into_iter()
            .find(|r| r.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| domain(format!("unknown representation `{s}`")))
    }
}

/// One concrete expression for `δ(z − n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DeltaForm {
    Direct,
    /// `Γ(z) − z + 1` for `n = 1`, `z ∈ {1,2,3}`.
    GammaLinear,
    /// `((−1)^Γ(z−n+3) − (−1)^Γ(z−n+2)) / 2` for `n ∈ {1,2}`, `z ≥ 1`.
    GammaParity,
    Bessel,
    Cosine,
    Hermite,
}

/// One concrete expression for `H(z − p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HeavForm {
    Direct,
    /// `(−1)^p (p − 2 − (p − 3) z − Γ(z))` for `p ∈ {2,3}`, `z ∈ {1,2,3}`.
    GammaLinear,
    /// `(1 + (−1)^Γ(z−p+3)) / 2` for `p ∈ {2,3}`, `z ≥ 1`.
    GammaParity,
    /// `(1 − (−1)^Γ(6−z)) / 2` for `p = 4`, `z ∈ {1..4}`.
    GammaParityUpper,
    Bessel,
    Cosine,
    Hermite,
}

impl DeltaForm {
    pub const ALL: [DeltaForm; 6] = [
        DeltaForm::Direct,
        DeltaForm::GammaLinear,
        DeltaForm::GammaParity,
        DeltaForm::Bessel,
        DeltaForm::Cosine,
        DeltaForm::Hermite,
    ];

    /// Finite enumeration of the declared `(z, n)` domain. `Direct` is
    /// listed over a representative window.
    pub fn domain(self) -> Vec<(i64, i64)> {
        let grid = |zs: std::ops::RangeInclusive<i64>, ns: &[i64]| {
            ns.iter()
                .flat_map(|&n| zs.clone().map(move |z| (z, n)))
                .collect::<Vec<_>>()
        };
        match self {
            DeltaForm::Direct => grid(-5..=12, &[-2, -1, 0, 1, 2, 3, 4, 5]),
            DeltaForm::GammaLinear => grid(1..=3, &[1]),
            DeltaForm::GammaParity => grid(1..=GAMMA_PARITY_MAX_Z, &[1, 2]),
            DeltaForm::Bessel | DeltaForm::Cosine | DeltaForm::Hermite => grid(1..=3, &[1, 2, 3]),
        }
    }

    pub fn contains(self, z: i64, n: i64) -> bool {
        match self {
            DeltaForm::Direct => true,
            DeltaForm::GammaLinear => n == 1 && (1..=3).contains(&z),
            DeltaForm::GammaParity => (1..=2).contains(&n) && (1..=GAMMA_PARITY_MAX_Z).contains(&z),
            DeltaForm::Bessel | DeltaForm::Cosine | DeltaForm::Hermite => {
                (1..=3).contains(&n) && (1..=3).contains(&z)
            }
        }
    }

    fn tolerance(self) -> f64 {
        if self == DeltaForm::Bessel {
            TOL_BESSEL
        } else {
            TOL_CLOSED
        }
    }

    /// Raw floating value of the expression before rounding.
    pub fn evaluate(self, z: i64, n: i64) -> Result<f64> {
        if !self.contains(z, n) {
            return Err(domain(format!("delta form {self:?} undefined at z={z}, n={n}")));
        }
        let zf = z as f64;
        let nf = n as f64;
        let lead = (nf - 2.0).powi((n + 1) as i32) / 2.0 * (nf - zf) * (zf - 2.0);
        let v = match self {
            DeltaForm::Direct => kron(z - n) as f64,
            DeltaForm::GammaLinear => gamma_int(z)? as f64 - zf + 1.0,
            DeltaForm::GammaParity => {
                (gamma_parity_sign(z - n + 3)? - gamma_parity_sign(z - n + 2)?) / 2.0
            }
            DeltaForm::Bessel => {
                lead * bessel_j0(2.0 * BESSEL_Z1)?
                    + neg_one_pow(n + z) * bessel_j0((zf - nf) * BESSEL_Z1)?
            }
            DeltaForm::Cosine => {
                lead * (2.0 * FRAC_PI_2).cos() + neg_one_pow(n + z) * ((zf - nf) * FRAC_PI_2).cos()
            }
            DeltaForm::Hermite => -lead * hermite2(2.0) - neg_one_pow(n + z) * hermite2(zf - nf),
        };
        Ok(v)
    }
}

impl HeavForm {
    pub const ALL: [HeavForm; 7] = [
        HeavForm::Direct,
        HeavForm::GammaLinear,
        HeavForm::GammaParity,
        HeavForm::GammaParityUpper,
        HeavForm::Bessel,
        HeavForm::Cosine,
        HeavForm::Hermite,
    ];

    pub fn domain(self) -> Vec<(i64, i64)> {
        let grid = |zs: std::ops::RangeInclusive<i64>, ps: &[i64]| {
            ps.iter()
                .flat_map(|&p| zs.clone().map(move |z| (z, p)))
                .collect::<Vec<_>>()
        };
        match self {
            HeavForm::Direct => grid(-5..=12, &[-2, -1, 0, 1, 2, 3, 4, 5]),
            HeavForm::GammaLinear => grid(1..=3, &[2, 3]),
            HeavForm::GammaParity => grid(1..=GAMMA_PARITY_MAX_Z, &[2, 3]),
            HeavForm::GammaParityUpper => grid(1..=4, &[4]),
            HeavForm::Bessel | HeavForm::Cosine | HeavForm::Hermite => grid(1..=3, &[2, 3]),
        }
    }

    pub fn contains(self, z: i64, p: i64) -> bool {
        match self {
            HeavForm::Direct => true,
            HeavForm::GammaLinear => (2..=3).contains(&p) && (1..=3).contains(&z),
            HeavForm::GammaParity => (2..=3).contains(&p) && (1..=GAMMA_PARITY_MAX_Z).contains(&z),
            HeavForm::GammaParityUpper => p == 4 && (1..=4).contains(&z),
            HeavForm::Bessel | HeavForm::Cosine | HeavForm::Hermite => {
                (2..=3).contains(&p) && (1..=3).contains(&z)
            }
        }
    }

    fn tolerance(self) -> f64 {
        if self == HeavForm::Bessel {
            TOL_BESSEL
        } else {
            TOL_CLOSED
        }
    }

    pub fn evaluate(self, z: i64, p: i64) -> Result<f64> {
        if !self.contains(z, p) {
            return Err(domain(format!("step form {self:?} undefined at z={z}, p={p}")));
        }
        let zf = z as f64;
        let pf = p as f64;
        let alt = neg_one_pow(p + z);
        let v = match self {
            HeavForm::Direct => heav(z - p) as f64,
            HeavForm::GammaLinear => {
                neg_one_pow(p) * (pf - 2.0 - (pf - 3.0) * zf - gamma_int(z)? as f64)
            }
            HeavForm::GammaParity => (1.0 + gamma_parity_sign(z - p + 3)?) / 2.0,
            HeavForm::GammaParityUpper => (1.0 - gamma_parity_sign(6 - z)?) / 2.0,
            HeavForm::Bessel => {
                0.5 * (zf - bessel_j0(0.0)? + alt * bessel_j0((zf - 2.0) * BESSEL_Z1)?)
            }
            HeavForm::Cosine => 0.5 * (zf - 0f64.cos() + alt * ((zf - 2.0) * FRAC_PI_2).cos()),
            HeavForm::Hermite => 0.5 * (zf + hermite2(0.0) - alt * hermite2(zf - 2.0)),
        };
        Ok(v)
    }
}

fn round_checked(v: f64, tol: f64, form: String, point: String) -> Result<i64> {
    let r = v.round();
    if (v - r).abs() > tol || !(r == 0.0 || r == 1.0) {
        return Err(Error::ReprMismatch { form, point, value: v });
    }
    Ok(r as i64)
}

/// Evaluates a specific delta form and rounds it to `{0, 1}`.
pub fn delta_form(z: i64, n: i64, form: DeltaForm) -> Result<i64> {
    let v = form.evaluate(z, n)?;
    round_checked(v, form.tolerance(), format!("{form:?}"), format!("z={z}, n={n}"))
}

/// Evaluates a specific step form and rounds it to `{0, 1}`.
pub fn heav_form(z: i64, p: i64, form: HeavForm) -> Result<i64> {
    let v = form.evaluate(z, p)?;
    round_checked(v, form.tolerance(), format!("{form:?}"), format!("z={z}, p={p}"))
}

/// `δ(z − n)` through the first form of `repr` whose domain holds `(z, n)`.
///
/// A form that failed its truth table is skipped in favor of the direct
/// definition.
pub fn repr_delta(z: i64, n: i64, repr: ReprKind) -> Result<i64> {
    let form = repr
        .delta_forms()
        .iter()
        .copied()
        .find(|f| f.contains(z, n))
        .ok_or_else(|| domain(format!("{repr} has no delta form at z={z}, n={n}")))?;
    if !conformance().delta_available(form) {
        return Ok(kron(z - n));
    }
    delta_form(z, n, form)
}

/// `H(z − p)` through the first form of `repr` whose domain holds `(z, p)`.
pub fn repr_heav(z: i64, p: i64, repr: ReprKind) -> Result<i64> {
    let form = repr
        .heav_forms()
        .iter()
        .copied()
        .find(|f| f.contains(z, p))
        .ok_or_else(|| domain(format!("{repr} has no step form at z={z}, p={p}")))?;
    if !conformance().heav_available(form) {
        return Ok(heav(z - p));
    }
    heav_form(z, p, form)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormStatus {
    pub form: String,
    pub points: usize,
    pub failures: Vec<String>,
    pub available: bool,
}

/// Truth-table audit of every encoding over its declared domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub delta: Vec<FormStatus>,
    pub heav: Vec<FormStatus>,
}

impl ConformanceReport {
    fn delta_available(&self, form: DeltaForm) -> bool {
        let name = format!("{form:?}");
        self.delta.iter().any(|s| s.form == name && s.available)
    }

    fn heav_available(&self, form: HeavForm) -> bool {
        let name = format!("{form:?}");
        self.heav.iter().any(|s| s.form == name && s.available)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn audit<F: Copy + fmt::Debug>(
    form: F,
    domain: Vec<(i64, i64)>,
    eval: impl Fn(i64, i64) -> Result<i64>,
    truth: impl Fn(i64, i64) -> i64,
) -> FormStatus {
    let mut failures = Vec::new();
    for &(z, k) in &domain {
        match eval(z, k) {
            Ok(v) if v == truth(z, k) => {}
            Ok(v) => failures.push(format!("({z},{k}) gave {v}")),
            Err(e) => failures.push(format!("({z},{k}): {e}")),
        }
    }
    FormStatus {
        form: format!("{form:?}"),
        points: domain.len(),
        available: failures.is_empty(),
        failures,
    }
}

pub fn conformance_report() -> ConformanceReport {
    let delta = DeltaForm::ALL
        .into_iter()
        .map(|f| audit(f, f.domain(), |z, n| delta_form(z, n, f), |z, n| kron(z - n)))
        .collect();
    let heav_rows = HeavForm::ALL
        .into_iter()
        .map(|f| audit(f, f.domain(), |z, p| heav_form(z, p, f), |z, p| heav(z - p)))
        .collect();
    ConformanceReport { delta, heav: heav_rows }
}

/// Cached report consulted by [`repr_delta`] and [`repr_heav`].
pub fn conformance() -> &'static ConformanceReport {
    static REPORT: OnceLock<ConformanceReport> = OnceLock::new();
    REPORT.get_or_init(conformance_report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_function_values() {
        assert_eq!((kron(0), kron(3), kron(-2)), (1, 0, 0));
        assert_eq!((heav(0), heav(-1), heav(5)), (1, 0, 1));
        assert_eq!(gamma_int(1).unwrap(), 1);
        assert_eq!(gamma_int(3).unwrap(), 2);
        assert_eq!(gamma_int(5).unwrap(), 24);
        assert!(gamma_int(0).is_err());
        assert!(gamma_int(-3).is_err());
        assert!(gamma_int(40).is_err());
    }

    #[test]
    fn j0_basics() {
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
        assert!(bessel_j0(BESSEL_Z1).unwrap().abs() < 1e-10);
        assert!(bessel_j0(f64::NAN).is_err());
        assert!(bessel_j0(12.5).is_err());
    }

    #[test]
    fn worked_representation_points() {
        assert_eq!(repr_delta(2, 1, ReprKind::Gamma).unwrap(), 0);
        assert_eq!(repr_delta(1, 1, ReprKind::Cosine).unwrap(), 1);
        assert_eq!(repr_delta(3, 2, ReprKind::Bessel).unwrap(), 0);
        assert_eq!(heav_form(2, 2, HeavForm::GammaLinear).unwrap(), 1);
        assert_eq!(heav_form(1, 3, HeavForm::GammaLinear).unwrap(), 0);
        assert_eq!(repr_heav(3, 2, ReprKind::Cosine).unwrap(), 1);
    }

    #[test]
    fn out_of_domain_is_rejected() {
        assert!(repr_delta(4, 1, ReprKind::Bessel).is_err());
        assert!(repr_heav(1, 4, ReprKind::Hermite).is_err());
        assert!(repr_heav(5, 4, ReprKind::Gamma).is_err());
    }

    #[test]
    fn repr_names_round_trip() {
        for r in ReprKind::ALL {
            assert_eq!(r.to_string().parse::<ReprKind>().unwrap(), r);
        }
        assert!("laguerre".parse::<ReprKind>().is_err());
    }
}
