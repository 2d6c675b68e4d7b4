//! Index functions that map positions inside a chain of nested minors back
//! to row and column indices of the original matrix.
//!
//! The normative definition is the survivor map [`kappa`] composed along
//! the deletion chain ([`primed_index`]). Closed forms for the four- and
//! five-level functions and the general product-sum and substitution forms
//! are alternate evaluators, audited against composition by
//! [`conformance_report`].

use serde::Serialize;

use crate::error::{domain, Result};
use crate::gfn::{self, ReprKind};

/// Survivor map: position `t` in a minor is position `kappa(t, r0)` in the
/// matrix it was cut from by deleting index `r0`.
pub fn kappa(t: i64, r0: i64) -> i64 {
    t + 1 - gfn::heav(r0 - t - 1)
}

/// Deletion history of one telescoping chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexHistory {
    size: i64,
    base: i64,
    chain: Vec<i64>,
}

impl IndexHistory {
    /// `size` is the side of the ambient matrix; `chain[d]` is the index
    /// deleted at depth `d`; `base` is the position at depth `chain.len()`.
    pub fn new(size: i64, base: i64, chain: Vec<i64>) -> Result<Self> {
        let k = chain.len() as i64;
        for (d, &r) in chain.iter().enumerate() {
            if !(1..=size - d as i64).contains(&r) {
                return Err(domain(format!(
                    "chain entry {r} at depth {d} outside 1..={}",
                    size - d as i64
                )));
            }
        }
        if !(1..=size - k).contains(&base) {
            return Err(domain(format!("base {base} outside 1..={}", size - k)));
        }
        Ok(Self { size, base, chain })
    }

    pub fn size(&self) -> i64 {
        self.size
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn chain(&self) -> &[i64] {
        &self.chain
    }

    fn depth_check(&self, k: usize) -> Result<()> {
        if k == 0 || k != self.chain.len() {
            return Err(domain(format!(
                "depth {k} does not match a chain of length {}",
                self.chain.len()
            )));
        }
        Ok(())
    }
}

/// K-fold survivor composition, innermost deletion first.
pub fn primed_index(k: usize, hist: &IndexHistory) -> Result<i64> {
    hist.depth_check(k)?;
    Ok(compose(hist.base, &hist.chain))
}

/// Primed index of the complementary column `3 − base` of a 2×2 level.
pub fn reflected_primed_index(k: usize, hist: &IndexHistory) -> Result<i64> {
    hist.depth_check(k)?;
    if !(1..=2).contains(&hist.base) {
        return Err(domain(format!("reflection needs base 1 or 2, got {}", hist.base)));
    }
    let mirrored = 3 - hist.base;
    if mirrored > hist.size - k as i64 {
        return Err(domain("reflected base leaves the level"));
    }
    Ok(compose(mirrored, &hist.chain))
}

fn compose(base: i64, chain: &[i64]) -> i64 {
    chain.iter().rev().fold(base, |t, &r| kappa(t, r))
}

/// Delta and step functions evaluated through one representation, for any
/// integer argument the representation can reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexFns {
    pub repr: ReprKind,
}

impl IndexFns {
    pub const DIRECT: IndexFns = IndexFns { repr: ReprKind::Direct };

    pub fn new(repr: ReprKind) -> Self {
        Self { repr }
    }

    /// `H(x)`.
    pub fn heav(&self, x: i64) -> Result<i64> {
        match self.repr {
            ReprKind::Direct => Ok(gfn::heav(x)),
            ReprKind::Gamma => match x {
                x if x >= -2 => gfn::repr_heav(x + 3, 3, ReprKind::Gamma),
                -3 => gfn::repr_heav(1, 4, ReprKind::Gamma),
                // H(x) = 1 − H(−x − 1) keeps the argument inside the parity form.
                x => Ok(1 - gfn::repr_heav(2 - x, 3, ReprKind::Gamma)?),
            },
            r => match x {
                -2 => gfn::repr_heav(1, 3, r),
                -1..=1 => gfn::repr_heav(x + 2, 2, r),
                _ => Err(domain(format!("{r} step form cannot reach H({x})"))),
            },
        }
    }

    /// `δ(x)`.
    pub fn delta(&self, x: i64) -> Result<i64> {
        match self.repr {
            ReprKind::Direct => Ok(gfn::kron(x)),
            ReprKind::Gamma => match x {
                x if x >= 0 => gfn::repr_delta(x + 1, 1, ReprKind::Gamma),
                -1 => gfn::repr_delta(1, 2, ReprKind::Gamma),
                x => Ok(self.heav(x)? - self.heav(x - 1)?),
            },
            r => match x {
                -2 => gfn::repr_delta(1, 3, r),
                -1..=1 => gfn::repr_delta(x + 2, 2, r),
                2 => gfn::repr_delta(3, 1, r),
                _ => Err(domain(format!("{r} delta form cannot reach δ({x})"))),
            },
        }
    }

    pub fn kappa(&self, t: i64, r0: i64) -> Result<i64> {
        Ok(t + 1 - self.heav(r0 - t - 1)?)
    }

    /// `H((−1)^u · x)`.
    fn heav_alt(&self, u: i64, x: i64) -> Result<i64> {
        self.heav(if u % 2 == 0 { x } else { -x })
    }
}

/// Column of the 3×3 level reached from 2×2 position `j` of a 4×4 chain
/// that deleted column `n` and then column `l`.
pub fn lambda4(f: &IndexFns, j: i64, l: i64, n: i64) -> Result<i64> {
    let mut acc = 0;
    for u in 1..=2 {
        acc += (j + u - f.heav(n - j - u)?) * f.heav_alt(u, j - u - l + 2)?;
    }
    Ok(acc)
}

/// Companion of [`lambda4`] for the complementary 2×2 position `3 − j`.
pub fn mu4(f: &IndexFns, j: i64, l: i64, n: i64) -> Result<i64> {
    let mut acc = 0;
    for u in 1..=2 {
        acc += (-j + u + 3 - f.heav(n + j - u - 3)?) * f.heav_alt(u, -j - l - u + 5)?;
    }
    Ok(acc)
}

/// Two-level index in a 5×5 chain (deletions `q` then `n`).
pub fn lambda5(f: &IndexFns, l: i64, n: i64, q: i64) -> Result<i64> {
    let mut acc = 0;
    for u in 1..=2 {
        acc += (l + u - f.heav(q - l - u)?) * f.heav_alt(u, l - n - u + 2)?;
    }
    Ok(acc)
}

/// Three-level index in a 5×5 chain (deletions `q`, `n`, `l`).
pub fn mu5(f: &IndexFns, j: i64, l: i64, n: i64, q: i64) -> Result<i64> {
    let mut acc = 0;
    for u in 1..=2 {
        for v in 0..=1 {
            acc += (j + u + v - f.heav(q - j - u - v)?)
                * f.heav_alt(u, j - n - u + v + 2)?
                * f.heav_alt(v, l - j + v - 1)?;
        }
    }
    Ok(acc)
}

/// Complementary three-level index for 2×2 position `3 − j`.
pub fn nu5(f: &IndexFns, j: i64, l: i64, n: i64, q: i64) -> Result<i64> {
    let mut acc = 0;
    for u in 1..=2 {
        for v in 0..=1 {
            acc += (-j + u + v + 3 - f.heav(q + j - u - v - 3)?)
                * f.heav_alt(u, -j - n - u + v + 5)?
                * f.heav_alt(v, j + l + v - 4)?;
        }
    }
    Ok(acc)
}

/// [`mu5`] written as two guarded branches, the shape used by the 5×5 loop nest.
pub fn mu5_split(f: &IndexFns, j: i64, l: i64, n: i64, q: i64) -> Result<i64> {
    let h = |x| f.heav(x);
    let lo = (j + 1 - h(q - j - 1)?) * h(n - j - 1)? + (j + 2 - h(q - j - 2)?) * h(j - n)?;
    let hi = (j + 2 - h(q - j - 2)?) * h(n - j - 2)? + (j + 3 - h(q - j - 3)?) * h(j + 1 - n)?;
    Ok(lo * h(l - j - 1)? + hi * h(j - l)?)
}

/// [`nu5`] written as two guarded branches.
pub fn nu5_split(f: &IndexFns, j: i64, l: i64, n: i64, q: i64) -> Result<i64> {
    let h = |x| f.heav(x);
    let lo = (4 - j - h(q - 4 + j)?) * h(n - 4 + j)? + (5 - j - h(q - 5 + j)?) * h(3 - j - n)?;
    let hi = (5 - j - h(q - 5 + j)?) * h(n - 5 + j)? + (6 - j - h(q - 6 + j)?) * h(4 - j - n)?;
    Ok(lo * h(l - 4 + j)? + hi * h(3 - j - l)?)
}

/// General K-level index as a product of step functions summed over the
/// shift variables `u₁ ∈ {1,2}`, `u_k ∈ {0,1}` for `k ≥ 2`.
pub fn primed_product_form(f: &IndexFns, hist: &IndexHistory) -> Result<i64> {
    let chain = hist.chain();
    let k = chain.len();
    if k == 0 {
        return Err(domain("product form needs at least one deletion"));
    }
    let r0 = chain[0];
    let rk = hist.base();
    if k == 1 {
        return f.kappa(rk, r0);
    }
    // levels r₁..r_{K−1}
    let inner = &chain[1..];
    let m = k - 1;
    let mut total = 0;
    for mask in 0..(1u32 << m) {
        let us: Vec<i64> = (0..m)
            .map(|i| i64::from(mask >> i & 1) + i64::from(i == 0))
            .collect();
        let su: i64 = us.iter().sum();
        let mut term = rk + su - f.heav(r0 - rk - su)?;
        for i in 0..m {
            let first = i64::from(i == 0);
            let tail: i64 = us[i..].iter().sum();
            let arg = inner[i] - rk + 2 * us[i] - tail - first - 1;
            term *= f.heav_alt(us[i] + first, arg)?;
            if term == 0 {
                break;
            }
        }
        total += term;
    }
    Ok(total)
}

/// General K-level index by literal substitution: the innermost position is
/// replaced by `r_K + u` in the (K−1)-level expression, gated by a step
/// function that selects the shift `u ∈ {0,1}`.
pub fn primed_substitution_form(f: &IndexFns, hist: &IndexHistory) -> Result<i64> {
    let mut rs: Vec<i64> = hist.chain()[1..].to_vec();
    rs.push(hist.base());
    substitute(f, hist.chain()[0], &rs)
}

fn substitute(f: &IndexFns, r0: i64, rs: &[i64]) -> Result<i64> {
    match rs {
        [] => Err(domain("substitution form needs at least one deletion")),
        [r1] => f.kappa(*r1, r0),
        [pre @ .., prev, last] => {
            let mut acc = 0;
            for u in 0..=1 {
                let gate = f.heav_alt(u, prev - last + u - 1)?;
                if gate != 0 {
                    let mut next = pre.to_vec();
                    next.push(last + u);
                    acc += gate * substitute(f, r0, &next)?;
                }
            }
            Ok(acc)
        }
    }
}

/// Survivor index written with Kronecker deltas: `t + Σ_{w=1..t} δ(r0 − w)`.
pub fn survivor_delta_form(t: i64, r0: i64) -> i64 {
    t + (1..=t).map(|w| gfn::kron(r0 - w)).sum::<i64>()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormAudit {
    pub form: &'static str,
    pub points: usize,
    pub mismatches: Vec<String>,
}

/// Every closed form checked against composition over its full domain.
pub fn conformance_report(max_size: i64) -> Vec<FormAudit> {
    let f = IndexFns::DIRECT;
    let mut out = Vec::new();
    let mut push = |form: &'static str, points: usize, mismatches: Vec<String>| {
        out.push(FormAudit { form, points, mismatches });
    };

    let mut pts = 0;
    let mut bad = Vec::new();
    for n in 1..=4 {
        for l in 1..=3 {
            for j in 1..=2 {
                pts += 1;
                if lambda4(&f, j, l, n).ok() != Some(compose(j, &[n, l])) {
                    bad.push(format!("lambda4({j},{l},{n})"));
                }
                if mu4(&f, j, l, n).ok() != Some(compose(3 - j, &[n, l])) {
                    bad.push(format!("mu4({j},{l},{n})"));
                }
            }
        }
    }
    push("four-level lambda/mu", pts, bad);

    let mut pts = 0;
    let mut bad = Vec::new();
    for q in 1..=5 {
        for n in 1..=4 {
            for l in 1..=3 {
                if lambda5(&f, l, n, q).ok() != Some(compose(l, &[q, n])) {
                    bad.push(format!("lambda5({l},{n},{q})"));
                }
                for j in 1..=2 {
                    pts += 1;
                    let direct = Some(compose(j, &[q, n, l]));
                    let mirror = Some(compose(3 - j, &[q, n, l]));
                    if mu5(&f, j, l, n, q).ok() != direct || mu5_split(&f, j, l, n, q).ok() != direct {
                        bad.push(format!("mu5({j},{l},{n},{q})"));
                    }
                    if nu5(&f, j, l, n, q).ok() != mirror || nu5_split(&f, j, l, n, q).ok() != mirror {
                        bad.push(format!("nu5({j},{l},{n},{q})"));
                    }
                }
            }
        }
    }
    push("five-level lambda/mu/nu", pts, bad);

    let mut pts = 0;
    let mut bad_product = Vec::new();
    let mut bad_subst = Vec::new();
    for_each_history(max_size, |hist| {
        pts += 1;
        let truth = Some(compose(hist.base(), hist.chain()));
        if primed_product_form(&f, hist).ok() != truth {
            bad_product.push(format!("{hist:?}"));
        }
        if primed_substitution_form(&f, hist).ok() != truth {
            bad_subst.push(format!("{hist:?}"));
        }
    });
    push("general product form", pts, bad_product);
    push("general substitution form", pts, bad_subst);
    out
}

/// Visits every valid history with `3 ≤ size ≤ max_size` and `1 ≤ K ≤ size − 2`.
pub fn for_each_history(max_size: i64, mut visit: impl FnMut(&IndexHistory)) {
    for size in 3..=max_size {
        for k in 1..=size - 2 {
            let mut chain = vec![1i64; k as usize];
            loop {
                for base in 1..=size - k {
                    let hist = IndexHistory { size, base, chain: chain.clone() };
                    visit(&hist);
                }
                if !advance(&mut chain, size) {
                    break;
                }
            }
        }
    }
}

/// Odometer step over `chain[d] ∈ 1..=size−d`; false once exhausted.
fn advance(chain: &mut [i64], size: i64) -> bool {
    for d in (0..chain.len()).rev() {
        if chain[d] < size - d as i64 {
            chain[d] += 1;
            chain[d + 1..].iter_mut().for_each(|c| *c = 1);
            return true;
        }
    }
    false
}
