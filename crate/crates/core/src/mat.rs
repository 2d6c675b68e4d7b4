//! Square complex matrices with 1-based accessors, minor extraction,
//! seeded generators and a small JSON format.

use std::fmt::Write as _;

pub use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Deserialize;

use crate::error::{domain, Error, Result};
use crate::gfn;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    /// Builds an `n×n` matrix from row-major data.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(domain("matrix side must be positive"));
        }
        if data.len() != n * n {
            return Err(domain(format!("expected {} entries, got {}", n * n, data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("matrix entries must be finite"));
        }
        Ok(Self { n, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(domain("rows must form a square"));
        }
        Self::new(n, rows.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Entry at 1-based `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.data[(i - 1) * self.n + (j - 1)]
    }

    /// Entry at 1-based signed `(i, j)`, as produced by index arithmetic.
    #[inline]
    pub fn at(&self, i: i64, j: i64) -> Complex64 {
        self.get(i as usize, j as usize)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(domain("size mismatch in product"));
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                let s = (1..=n).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "size mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A·X − I|` entrywise.
    pub fn residual(&self, inverse: &Matrix) -> Result<f64> {
        Ok(self.mul(inverse)?.max_abs_diff(&Matrix::identity(self.n)))
    }

    /// `∏ᵢ maxⱼ |aᵢⱼ|`, the scale used by the near-singularity guard.
    pub fn row_scale(&self) -> f64 {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j).norm()).fold(0.0, f64::max))
            .product()
    }

    fn check_minor_args(&self, r0: usize, s0: usize) -> Result<()> {
        if self.n < 2 {
            return Err(domain("a 1×1 matrix has no minor"));
        }
        if !(1..=self.n).contains(&r0) || !(1..=self.n).contains(&s0) {
            return Err(domain(format!("({r0},{s0}) outside a {0}×{0} matrix", self.n)));
        }
        Ok(())
    }
}

/// Submatrix left after deleting row `r0` and column `s0`, by filtering.
pub fn minor_by_deletion(a: &Matrix, r0: usize, s0: usize) -> Result<Matrix> {
    a.check_minor_args(r0, s0)?;
    let data = (1..=a.n)
        .filter(|&i| i != r0)
        .flat_map(|i| (1..=a.n).filter(move |&j| j != s0).map(move |j| a.get(i, j)))
        .collect();
    Matrix::new(a.n - 1, data)
}

/// Submatrix whose `(r, s)` entry is `A[r + 1 − H(r0 − r − 1), s + 1 − H(s0 − s − 1)]`.
pub fn minor_by_formula(a: &Matrix, r0: usize, s0: usize) -> Result<Matrix> {
    a.check_minor_args(r0, s0)?;
    let m = a.n - 1;
    let (r0, s0) = (r0 as i64, s0 as i64);
    let mut data = Vec::with_capacity(m * m);
    for r in 1..=m as i64 {
        let row = r + 1 - gfn::heav(r0 - r - 1);
        for s in 1..=m as i64 {
            data.push(a.at(row, s + 1 - gfn::heav(s0 - s - 1)));
        }
    }
    Ok(Matrix { n: m, data })
}

/// Seed of the independent stream for `(seed, index)`.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    let mut g = SplitMix64::seed_from_u64(seed ^ index.wrapping_mul(GOLDEN_GAMMA).rotate_left(17));
    g.next_u64()
}

/// Standard-normal source: splitmix64 uniforms through Box–Muller.
pub struct NormalStream {
    rng: SplitMix64,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: SplitMix64::seed_from_u64(seed) }
    }

    /// Uniform on `(0, 1]`.
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// Matrix of independent standard normals, real or complex.
pub fn random_matrix(n: usize, seed: u64, complex: bool) -> Matrix {
    let mut g = NormalStream::new(seed);
    let data = (0..n * n)
        .map(|_| {
            let re = g.next_normal();
            let im = if complex { g.next_normal() } else { 0.0 };
            Complex64::new(re, im)
        })
        .collect();
    Matrix { n, data }
}

/// Integer-valued matrix with entries uniform on `lo..=hi`.
pub fn random_integer_matrix(n: usize, seed: u64, lo: i64, hi: i64) -> Matrix {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let span = (hi - lo + 1) as u64;
    let data = (0..n * n)
        .map(|_| Complex64::new((lo + (rng.next_u64() % span) as i64) as f64, 0.0))
        .collect();
    Matrix { n, data }
}

/// Nonzero positions `(row, col)` of the three sparse test patterns.
pub fn sparse_pattern(id: u8) -> Result<[(usize, usize); 5]> {
    match id {
        1 => Ok([(1, 4), (2, 2), (3, 1), (4, 3), (5, 5)]),
        2 => Ok([(1, 1), (2, 2), (3, 5), (4, 3), (5, 4)]),
        3 => Ok([(1, 2), (2, 1), (3, 3), (4, 5), (5, 4)]),
        _ => Err(domain(format!("sparse case {id} does not exist"))),
    }
}

/// 5×5 matrix with `values[k]` on row `k+1` of pattern `id`, zero elsewhere.
pub fn sparse_case(id: u8, values: &[Complex64; 5]) -> Result<Matrix> {
    let pattern = sparse_pattern(id)?;
    if values.iter().any(|v| *v == Complex64::new(0.0, 0.0)) {
        return Err(domain("sparse case values must be nonzero"));
    }
    let mut m = Matrix::zeros(5);
    for (&(i, j), &v) in pattern.iter().zip(values) {
        m.set(i, j, v);
    }
    Ok(m)
}

/// Decimal with 17 significant digits and a lowercase exponent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    n: usize,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() }
}

fn shape_error(msg: &str) -> Error {
    Error::Parse { line: 1, column: 1, msg: msg.to_string() }
}

/// Reads `{"n": N, "re": [[..]], "im": [[..]]}`; `im` may be omitted.
pub fn parse_matrix(text: &[u8]) -> Result<Matrix> {
    let raw: RawMatrix = serde_json::from_slice(text).map_err(json_error)?;
    let n = raw.n;
    if n == 0 {
        return Err(shape_error("n must be positive"));
    }
    let square = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
    if !square(&raw.re) {
        return Err(shape_error("re must be n rows of n numbers"));
    }
    if let Some(im) = &raw.im {
        if !square(im) {
            return Err(shape_error("im must be n rows of n numbers"));
        }
    }
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let im = raw.im.as_ref().map_or(0.0, |m| m[i][j]);
            Complex64::new(raw.re[i][j], im)
        })
        .collect();
    Matrix::new(n, data).map_err(|e| shape_error(&e.to_string()))
}

/// Canonical JSON text of a matrix.
pub fn write_matrix(a: &Matrix) -> String {
    let part = |f: fn(&Complex64) -> f64| {
        let rows: Vec<String> = (1..=a.n)
            .map(|i| {
                let cells: Vec<String> = (1..=a.n).map(|j| fmt_f64(f(&a.get(i, j)))).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    };
    let mut s = String::new();
    write!(s, "{{\"n\":{},\"re\":{},\"im\":{}}}", a.n, part(|z| z.re), part(|z| z.im))
        .expect("writing to a String");
    s
}
