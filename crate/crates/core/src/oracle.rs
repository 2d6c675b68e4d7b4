//! Reference implementations used to check the closed-form engines.
//!
//! None of these share code with [`crate::inv`]: Leibniz walks permutations,
//! the cofactor path recurses on deleted submatrices, and elimination uses
//! partial pivoting.

use crate::error::{domain, Error, Result};
use crate::mat::{minor_by_deletion, Complex64, Matrix};

pub const LEIBNIZ_CAP: usize = 9;
const PIVOT_FLOOR: f64 = 1e-300;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Advances `p` to the next permutation in lexicographic order and returns
/// the number of transpositions applied, or `None` after the last one.
fn next_permutation(p: &mut [usize]) -> Option<usize> {
    let i = (1..p.len()).rev().find(|&i| p[i - 1] < p[i])? - 1;
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i])?;
    p.swap(i, j);
    p[i + 1..].reverse();
    Some(1 + (p.len() - i - 1) / 2)
}

/// Determinant and number of accumulated products.
pub fn leibniz_det_counted(a: &Matrix) -> Result<(Complex64, usize)> {
    let n = a.n();
    if n > LEIBNIZ_CAP {
        return Err(Error::Capacity { n, cap: LEIBNIZ_CAP });
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut odd = false;
    let mut sum = zero();
    let mut count = 0;
    loop {
        let prod: Complex64 = perm.iter().enumerate().map(|(i, &c)| a.get(i + 1, c)).product();
        sum += if odd { -prod } else { prod };
        count += 1;
        match next_permutation(&mut perm) {
            Some(swaps) => odd ^= swaps % 2 == 1,
            None => break,
        }
    }
    Ok((sum, count))
}

pub fn leibniz_det(a: &Matrix) -> Result<Complex64> {
    leibniz_det_counted(a).map(|(d, _)| d)
}

/// All permutations of `1..=n` with their signs, in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(i8, Vec<usize>)> {
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut odd = false;
    let mut out = Vec::new();
    loop {
        out.push((if odd { -1 } else { 1 }, perm.clone()));
        match next_permutation(&mut perm) {
            Some(swaps) => odd ^= swaps % 2 == 1,
            None => return out,
        }
    }
}

/// First-row Laplace expansion over deleted submatrices.
pub fn laplace_det(a: &Matrix) -> Complex64 {
    let n = a.n();
    if n == 1 {
        return a.get(1, 1);
    }
    (1..=n)
        .map(|j| {
            let minor = minor_by_deletion(a, 1, j).expect("indices in range");
            let term = a.get(1, j) * laplace_det(&minor);
            if j % 2 == 1 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Adjugate over determinant.
pub fn cofactor_inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.n();
    let det = laplace_det(a);
    if det == zero() {
        return Err(Error::Singular);
    }
    if n == 1 {
        return Matrix::new(1, vec![det.inv()]);
    }
    let mut out = Matrix::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            let minor = laplace_det(&minor_by_deletion(a, i, j)?);
            let cof = if (i + j) % 2 == 0 { minor } else { -minor };
            out.set(j, i, cof / det);
        }
    }
    Ok(out)
}

/// LU with partial pivoting: `(inverse, determinant)`.
fn eliminate(a: &Matrix) -> Result<(Matrix, Complex64)> {
    let n = a.n();
    let mut m: Vec<Vec<Complex64>> =
        (1..=n).map(|i| (1..=n).map(|j| a.get(i, j)).collect()).collect();
    let mut inv: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { zero() }).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .expect("non-empty range");
        if m[pivot][col].norm() < PIVOT_FLOOR {
            return Err(Error::Singular);
        }
        if pivot != col {
            m.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for k in 0..n {
            m[col][k] /= p;
            inv[col][k] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != zero() {
                    for k in 0..n {
                        let (mk, ik) = (m[col][k], inv[col][k]);
                        m[r][k] -= f * mk;
                        inv[r][k] -= f * ik;
                    }
                }
            }
        }
    }
    Ok((Matrix::new(n, inv.into_iter().flatten().collect())?, det))
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn gauss_inverse(a: &Matrix) -> Result<Matrix> {
    eliminate(a).map(|(x, _)| x)
}

/// Determinant as the signed product of elimination pivots.
pub fn elimination_det(a: &Matrix) -> Result<Complex64> {
    match eliminate(a) {
        Ok((_, d)) => Ok(d),
        Err(Error::Singular) => Ok(zero()),
        Err(e) => Err(e),
    }
}

/// Relative error `|x − y| / max(|y|, tiny)`.
pub fn relative_error(x: Complex64, y: Complex64) -> f64 {
    let scale = y.norm().max(f64::MIN_POSITIVE);
    (x - y).norm() / scale
}

/// Fails unless both matrices have the same side.
pub fn same_size(x: &Matrix, y: &Matrix) -> Result<()> {
    if x.n() != y.n() {
        return Err(domain(format!("sizes {} and {} differ", x.n(), y.n())));
    }
    Ok(())
}
