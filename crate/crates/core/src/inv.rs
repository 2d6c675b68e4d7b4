//! Determinant and inverse engines built from explicit index functions.
//!
//! * Closed forms for sides 2 through 5, with every row and column index
//!   computed by [`IndexFns`] under a chosen representation.
//! * A general telescoping engine: first-row expansion of nested minors,
//!   extracted by index formula, down to 2×2 blocks.
//! * A symbolic expander that runs the telescoping sums over column indices
//!   only and emits one signed permutation per product.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::gfn::{self, ReprKind};
use crate::idx::{self, IndexFns, IndexHistory};
use crate::mat::{minor_by_formula, Complex64, Matrix};
use crate::oracle;

/// Default largest side accepted by the telescoping engine.
pub const TELESCOPE_CAP: usize = 8;
const NEAR_SINGULAR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Telescope,
    Oracle,
}

impl Method {
    /// Closed forms up to side 5, telescoping above.
    pub fn default_for(n: usize) -> Method {
        if n <= 5 {
            Method::ClosedForm
        } else {
            Method::Telescope
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed",
            Method::Telescope => "telescope",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::ClosedForm),
            "telescope" => Ok(Method::Telescope),
            "oracle" => Ok(Method::Oracle),
            _ => Err(domain(format!("unknown method `{s}`"))),
        }
    }
}

/// One product `a_{1,c₁} ⋯ a_{N,c_N}` of a determinant expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedTerm {
    pub sign: i8,
    pub cols: Vec<usize>,
}

impl fmt::Display for SignedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign > 0 { "+" } else { "-" })?;
        for c in &self.cols {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// An inverse together with the determinant it divided by.
#[derive(Clone, Debug, PartialEq)]
pub struct Inverse {
    pub matrix: Matrix,
    pub det: Complex64,
    /// `|det|` fell below `1e−12 · ∏ᵢ maxⱼ |aᵢⱼ|`.
    pub near_singular: bool,
}

fn sign(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Rejects an exactly zero determinant and flags a tiny one.
fn singularity_guard(a: &Matrix, det: Complex64) -> Result<bool> {
    if det == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular);
    }
    Ok(det.norm() < NEAR_SINGULAR * a.row_scale())
}

fn check_closed(a: &Matrix, repr: ReprKind) -> Result<()> {
    let n = a.n();
    if !(2..=5).contains(&n) {
        return Err(Error::Unsupported(format!("closed forms cover sides 2 to 5, not {n}")));
    }
    let reachable = matches!(repr, ReprKind::Direct | ReprKind::Gamma) || n == 3;
    if !reachable {
        return Err(Error::Unsupported(format!("{repr} indices only cover side 3, not {n}")));
    }
    Ok(())
}

/// Signed cofactor `(−1)^{p+q} M_pq` by the closed form for the matrix side.
fn cofactor(a: &Matrix, f: &IndexFns, p: i64, q: i64) -> Result<Complex64> {
    match (a.n(), f.repr) {
        (2, _) => cofactor2(a, f, p, q),
        (3, ReprKind::Gamma) => cofactor3_gamma(a, p, q),
        (3, _) => cofactor3(a, f, p, q),
        (4, _) => cofactor4(a, f, p, q),
        (5, _) => cofactor5(a, f, p, q),
        (n, _) => Err(Error::Unsupported(format!("no closed form for side {n}"))),
    }
}

fn cofactor2(a: &Matrix, f: &IndexFns, p: i64, q: i64) -> Result<Complex64> {
    Ok(sign(p + q) * a.at(1 + f.delta(p - 1)?, 1 + f.delta(q - 1)?))
}

/// Rows `2 − H(k−2)`, `3 − H(k−3)`; columns `j − H(l−j)`, `5 − j − H(l−5+j)`.
fn cofactor3(a: &Matrix, f: &IndexFns, k: i64, l: i64) -> Result<Complex64> {
    let r2 = 2 - f.heav(k - 2)?;
    let r3 = 3 - f.heav(k - 3)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 2..=3 {
        let c2 = j - f.heav(l - j)?;
        let c3 = 5 - j - f.heav(l - 5 + j)?;
        acc += sign(j + k + l) * a.at(r2, c2) * a.at(r3, c3);
    }
    Ok(acc)
}

fn gamma(n: i64) -> Result<i64> {
    Ok(gfn::gamma_int(n)? as i64)
}

/// Gamma-indexed 3×3 cofactor: the two columns of the minor are
/// `(−1)ʲΓ(l) + j(l+2) − l + 2` and `4 − (−1)ʲΓ(l) − j(l+2)`.
fn cofactor3_gamma(a: &Matrix, k: i64, l: i64) -> Result<Complex64> {
    let gk = gamma(k)?;
    let gl = gamma(l)?;
    let (r_lo, r_hi) = (gk - k + 2, 4 - gk);
    let mut acc = Complex64::new(0.0, 0.0);
    // same product order as the step-function cofactor
    for j in [1, 0] {
        let alt = if j == 0 { gl } else { -gl };
        let c_lo = alt + j * (l + 2) - l + 2;
        let c_hi = 4 - alt - j * (l + 2);
        acc += sign(j + k + l) * a.at(r_lo, c_lo) * a.at(r_hi, c_hi);
    }
    Ok(acc)
}

fn cofactor4(a: &Matrix, f: &IndexFns, m: i64, n: i64) -> Result<Complex64> {
    let rows = [2 - f.heav(m - 2)?, 3 - f.heav(m - 3)?, 4 - f.heav(m - 4)?];
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..=3 {
        let c2 = f.kappa(l, n)?;
        let mut inner = Complex64::new(0.0, 0.0);
        for j in 1..=2 {
            let c3 = idx::lambda4(f, j, l, n)?;
            let c4 = idx::mu4(f, j, l, n)?;
            inner += sign(j) * a.at(rows[1], c3) * a.at(rows[2], c4);
        }
        acc += sign(l) * a.at(rows[0], c2) * inner;
    }
    Ok(sign(m + n) * acc)
}

/// Four nested sums over the deleted-column chain `q → n → l → j`.
fn cofactor5(a: &Matrix, f: &IndexFns, p: i64, q: i64) -> Result<Complex64> {
    let kappa_r = 2 - f.heav(p - 2)?;
    let lambda_r = 3 - f.heav(p - 3)?;
    let mu_r = 4 - f.heav(p - 4)?;
    let nu_r = 5 - f.heav(p - 5)?;
    let mut sum_n = Complex64::new(0.0, 0.0);
    for n in 1..=4 {
        let mut sum_l = Complex64::new(0.0, 0.0);
        for l in 1..=3 {
            let mut sum_j = Complex64::new(0.0, 0.0);
            for j in 1..=2 {
                let mu_c = idx::mu5_split(f, j, l, n, q)?;
                let nu_c = idx::nu5_split(f, j, l, n, q)?;
                sum_j += sign(1 + j) * a.at(mu_r, mu_c) * a.at(nu_r, nu_c);
            }
            sum_l += sign(l) * a.at(lambda_r, idx::lambda5(f, l, n, q)?) * sum_j;
        }
        sum_n += sign(n) * a.at(kappa_r, f.kappa(n, q)?) * sum_l;
    }
    Ok(sign(p + q) * sum_n)
}

/// Determinant as a single closed-form sum for sides 2 through 5.
pub fn closed_form_det(a: &Matrix, repr: ReprKind) -> Result<Complex64> {
    check_closed(a, repr)?;
    let f = IndexFns::new(repr);
    match (a.n(), repr) {
        (2, _) => det2(a, &f),
        (3, ReprKind::Gamma) => det3_gamma(a),
        (3, _) => det3(a, &f),
        (4, _) => det4(a, &f),
        _ => det5(a, &f),
    }
}

fn det2(a: &Matrix, f: &IndexFns) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..=2 {
        acc += sign(1 + j) * a.at(1, j) * a.at(2, 1 + f.delta(j - 1)?);
    }
    Ok(acc)
}

fn det3(a: &Matrix, f: &IndexFns) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..=3 {
        for j in 2..=3 {
            let c2 = j - f.heav(l - j)?;
            let c3 = 5 - j - f.heav(l - 5 + j)?;
            acc += sign(j + 1 + l) * a.at(1, l) * a.at(2, c2) * a.at(3, c3);
        }
    }
    Ok(acc)
}

fn det3_gamma(a: &Matrix) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..=3 {
        let gl = gamma(l)?;
        // same product order as the step-function sum
        for j in [1, 0] {
            let alt = if j == 0 { gl } else { -gl };
            let c2 = 4 - alt - j * (l + 2);
            let c3 = alt + j * (l + 2) - l + 2;
            acc += sign(j + l) * a.at(1, l) * a.at(2, c2) * a.at(3, c3);
        }
    }
    Ok(acc)
}

fn det4(a: &Matrix, f: &IndexFns) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=4 {
        for l in 1..=3 {
            let c2 = f.kappa(l, n)?;
            for j in 1..=2 {
                let c3 = idx::lambda4(f, j, l, n)?;
                let c4 = idx::mu4(f, j, l, n)?;
                acc += sign(1 + j + l + n)
                    * a.at(1, n)
                    * a.at(2, c2)
                    * a.at(3, c3)
                    * a.at(4, c4);
            }
        }
    }
    Ok(acc)
}

fn det5(a: &Matrix, f: &IndexFns) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for q in 1..=5 {
        for n in 1..=4 {
            let c2 = f.kappa(n, q)?;
            for l in 1..=3 {
                let c3 = idx::lambda5(f, l, n, q)?;
                for j in 1..=2 {
                    let c4 = idx::mu5(f, j, l, n, q)?;
                    let c5 = idx::nu5(f, j, l, n, q)?;
                    acc += sign(j + l + n + q)
                        * a.at(1, q)
                        * a.at(2, c2)
                        * a.at(3, c3)
                        * a.at(4, c4)
                        * a.at(5, c5);
                }
            }
        }
    }
    Ok(acc)
}

/// 3×3 determinant with Kronecker deltas for the low column and steps for
/// the high one: columns `1 + δ(l−1)` and `3 − H(l−3)`.
pub fn kronecker_det3(a: &Matrix) -> Result<Complex64> {
    if a.n() != 3 {
        return Err(domain("kronecker_det3 needs a 3×3 matrix"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..=3i64 {
        let lo = 1 + gfn::kron(l - 1);
        let hi = 3 - gfn::heav(l - 3);
        acc += sign(l) * a.at(1, l) * (a.at(2, hi) * a.at(3, lo) - a.at(2, lo) * a.at(3, hi));
    }
    Ok(acc)
}

/// Inverse by the direct closed forms.
pub fn closed_form_inverse(a: &Matrix) -> Result<Inverse> {
    closed_form_inverse_repr(a, ReprKind::Direct)
}

/// Inverse with every index evaluated through `repr`.
///
/// The determinant is the first-row expansion over the same cofactors and
/// is computed once.
pub fn closed_form_inverse_repr(a: &Matrix, repr: ReprKind) -> Result<Inverse> {
    check_closed(a, repr)?;
    let f = IndexFns::new(repr);
    let n = a.n() as i64;
    let first_row = (1..=n).map(|q| cofactor(a, &f, 1, q)).collect::<Result<Vec<_>>>()?;
    let det: Complex64 = (1..=n).zip(&first_row).map(|(q, c)| a.at(1, q) * c).sum();
    let near_singular = singularity_guard(a, det)?;
    let mut out = Matrix::zeros(a.n());
    for p in 1..=n {
        for q in 1..=n {
            let c = if p == 1 { first_row[q as usize - 1] } else { cofactor(a, &f, p, q)? };
            out.set(q as usize, p as usize, c / det);
        }
    }
    Ok(Inverse { matrix: out, det, near_singular })
}

/// Entry at row `q`, column `p` of the inverse, built from the `(p, q)` minor.
pub fn element_inverse(a: &Matrix, p: usize, q: usize) -> Result<Complex64> {
    let n = a.n();
    if !(1..=n).contains(&p) || !(1..=n).contains(&q) {
        return Err(domain(format!("({p},{q}) outside a {n}×{n} matrix")));
    }
    if n < 2 {
        return Err(Error::Unsupported("inverse entries need side at least 2".into()));
    }
    if n <= 5 {
        let f = IndexFns::DIRECT;
        let det = closed_form_det(a, ReprKind::Direct)?;
        singularity_guard(a, det)?;
        Ok(cofactor(a, &f, p as i64, q as i64)? / det)
    } else {
        let t = Telescope::default();
        let det = t.det(a)?;
        singularity_guard(a, det)?;
        Ok(t.cofactor(a, p, q)? / det)
    }
}

/// Telescoping engine with a configurable side cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Telescope {
    pub cap: usize,
}

impl Default for Telescope {
    fn default() -> Self {
        Self { cap: TELESCOPE_CAP }
    }
}

impl Telescope {
    fn check(&self, a: &Matrix) -> Result<()> {
        let n = a.n();
        if n > self.cap {
            return Err(Error::Capacity { n, cap: self.cap });
        }
        if n < 2 {
            return Err(Error::Unsupported("telescoping needs side at least 2".into()));
        }
        Ok(())
    }

    pub fn det(&self, a: &Matrix) -> Result<Complex64> {
        self.check(a)?;
        telescope_det(a)
    }

    fn cofactor(&self, a: &Matrix, p: usize, q: usize) -> Result<Complex64> {
        let m = telescope_det(&minor_by_formula(a, p, q)?)?;
        Ok(sign((p + q) as i64) * m)
    }

    /// All `n²` cofactors are independent and evaluated in parallel.
    pub fn inverse(&self, a: &Matrix) -> Result<Inverse> {
        self.check(a)?;
        let det = telescope_det(a)?;
        let near_singular = singularity_guard(a, det)?;
        let n = a.n();
        let cells: Vec<Complex64> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                // row-major over the output: entry (q, p) divides cofactor (p, q)
                let (q, p) = (k / n + 1, k % n + 1);
                self.cofactor(a, p, q).map(|c| c / det)
            })
            .collect::<Result<_>>()?;
        Ok(Inverse { matrix: Matrix::new(n, cells)?, det, near_singular })
    }
}

fn telescope_det(m: &Matrix) -> Result<Complex64> {
    match m.n() {
        1 => Ok(m.get(1, 1)),
        2 => Ok(m.get(1, 1) * m.get(2, 2) - m.get(1, 2) * m.get(2, 1)),
        n => {
            let mut acc = Complex64::new(0.0, 0.0);
            for s in 1..=n {
                let head = m.get(1, s);
                if head != Complex64::new(0.0, 0.0) {
                    acc += sign(1 + s as i64) * head * telescope_det(&minor_by_formula(m, 1, s)?)?;
                }
            }
            Ok(acc)
        }
    }
}

pub fn general_det(a: &Matrix) -> Result<Complex64> {
    Telescope::default().det(a)
}

pub fn general_inverse(a: &Matrix) -> Result<Inverse> {
    Telescope::default().inverse(a)
}

/// Determinant by the requested method.
pub fn det_by(a: &Matrix, method: Method, repr: ReprKind) -> Result<Complex64> {
    match method {
        Method::ClosedForm => closed_form_det(a, repr),
        Method::Telescope => {
            direct_only(method, repr)?;
            general_det(a)
        }
        Method::Oracle => {
            direct_only(method, repr)?;
            oracle::leibniz_det(a)
        }
    }
}

/// Inverse by the requested method.
pub fn inverse_by(a: &Matrix, method: Method, repr: ReprKind) -> Result<Inverse> {
    match method {
        Method::ClosedForm => closed_form_inverse_repr(a, repr),
        Method::Telescope => {
            direct_only(method, repr)?;
            general_inverse(a)
        }
        Method::Oracle => {
            direct_only(method, repr)?;
            let det = oracle::elimination_det(a)?;
            let near_singular = singularity_guard(a, det)?;
            Ok(Inverse { matrix: oracle::gauss_inverse(a)?, det, near_singular })
        }
    }
}

fn direct_only(method: Method, repr: ReprKind) -> Result<()> {
    if repr != ReprKind::Direct {
        return Err(Error::Unsupported(format!("method {method} has no {repr} indices")));
    }
    Ok(())
}

/// Every product of the telescoping determinant of side `n`, with columns
/// resolved through the primed index functions.
pub fn expand_terms(n: usize) -> Result<Vec<SignedTerm>> {
    if !(2..=TELESCOPE_CAP).contains(&n) {
        return Err(Error::Capacity { n, cap: TELESCOPE_CAP });
    }
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(n);
    expand_level(n as i64, &mut chain, 1, &mut out)?;
    Ok(out)
}

fn original_column(size: i64, base: i64, chain: &[i64], reflected: bool) -> Result<usize> {
    if chain.is_empty() {
        return Ok(if reflected { 3 - base } else { base } as usize);
    }
    let hist = IndexHistory::new(size, base, chain.to_vec())?;
    let v = if reflected {
        idx::reflected_primed_index(chain.len(), &hist)?
    } else {
        idx::primed_index(chain.len(), &hist)?
    };
    Ok(v as usize)
}

fn expand_level(size: i64, chain: &mut Vec<i64>, parity: i8, out: &mut Vec<SignedTerm>) -> Result<()> {
    let width = size - chain.len() as i64;
    if width == 2 {
        for s in 1..=2 {
            let mut cols = Vec::with_capacity(size as usize);
            for (depth, &c) in chain.iter().enumerate() {
                cols.push(original_column(size, c, &chain[..depth], false)?);
            }
            cols.push(original_column(size, s, chain, false)?);
            cols.push(original_column(size, s, chain, true)?);
            let sign = if s == 1 { parity } else { -parity };
            out.push(SignedTerm { sign, cols });
        }
        return Ok(());
    }
    for s in 1..=width {
        chain.push(s);
        let sign = if s % 2 == 1 { parity } else { -parity };
        expand_level(size, chain, sign, out)?;
        chain.pop();
    }
    Ok(())
}
