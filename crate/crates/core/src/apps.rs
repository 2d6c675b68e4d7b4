//! Curl in orthogonal curvilinear coordinates and the scalar triple
//! product, both through the gamma-indexed 3×3 determinant sum.

use std::ops::{Add, Mul, Sub};

use crate::error::{domain, Result};
use crate::gfn::gamma_int;

/// Scale factors and pre-evaluated partials `d[i][j] = ∂(hᵢFᵢ)/∂uⱼ`
/// (0-based storage, 1-based meaning).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurlInput {
    pub h: [f64; 3],
    pub d: [[f64; 3]; 3],
}

fn gamma_small(l: i64) -> i64 {
    gamma_int(l).expect("l in 1..=3") as i64
}

/// `(−1)^e`.
fn alt(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `2 + (−1)ʲΓ(l) + j(l+2) − l`: the component index paired with `l`.
pub fn component_index(j: i64, l: i64) -> i64 {
    2 + alt(j) * gamma_small(l) + j * (l + 2) - l
}

/// `4 − (−1)ʲΓ(l) − j(l+2)`: the axis index paired with `l`.
pub fn axis_index(j: i64, l: i64) -> i64 {
    4 - alt(j) * gamma_small(l) - j * (l + 2)
}

/// Coefficients of the three unit vectors of `∇ × F`.
pub fn curl_components(inp: &CurlInput) -> Result<[f64; 3]> {
    if inp.h.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
        return Err(domain("scale factors must be positive and finite"));
    }
    if inp.d.iter().flatten().any(|x| !x.is_finite()) {
        return Err(domain("partials must be finite"));
    }
    let vol: f64 = inp.h.iter().product();
    let mut out = [0.0; 3];
    for l in 1..=3i64 {
        let mut acc = 0.0;
        for j in 0..=1i64 {
            let i = component_index(j, l) as usize;
            let k = axis_index(j, l) as usize;
            acc += alt(j + l) as f64 * inp.d[i - 1][k - 1];
        }
        out[l as usize - 1] = inp.h[l as usize - 1] / vol * acc;
    }
    Ok(out)
}

/// Signed volume `Σ_l Σ_j (−1)^{j+l} a_l b_axis c_component`.
pub fn scalar_triple<T>(a: [T; 3], b: [T; 3], c: [T; 3]) -> T
where
    T: Copy + Default + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut acc = T::default();
    for l in 1..=3i64 {
        for j in 0..=1i64 {
            let term = a[l as usize - 1]
                * b[axis_index(j, l) as usize - 1]
                * c[component_index(j, l) as usize - 1];
            acc = if alt(j + l) > 0 { acc + term } else { acc - term };
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curl_examples() {
        let mut d = [[0.0; 3]; 3];
        let h = [1.0; 3];
        assert_eq!(curl_components(&CurlInput { h, d }).unwrap(), [0.0; 3]);
        d[2][1] = 1.0;
        assert_eq!(curl_components(&CurlInput { h, d }).unwrap(), [1.0, 0.0, 0.0]);
        assert!(curl_components(&CurlInput { h: [1.0, 0.0, 1.0], d }).is_err());
    }

    #[test]
    fn triple_examples() {
        let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(scalar_triple(e[0], e[1], e[2]), 1.0);
        assert_eq!(scalar_triple(e[1], e[0], e[2]), -1.0);
        let a = [1.5, -2.0, 0.25];
        assert_eq!(scalar_triple(a, a, [3.0, 1.0, 2.0]), 0.0);
    }
}
