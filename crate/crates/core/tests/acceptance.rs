//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use telinv::apps::{curl_components, scalar_triple, CurlInput};
use telinv::gfn::{self, DeltaForm, HeavForm};
use telinv::harness::{run_trials, sparse_suite, TrialConfig};
use telinv::idx::{self, lambda4, lambda5, mu4, mu5, nu5, primed_index, IndexFns, IndexHistory};
use telinv::inv::{closed_form_det, closed_form_inverse, expand_terms, general_inverse};
use telinv::mat::{
    minor_by_formula, random_integer_matrix, random_matrix, Complex64, Matrix, NormalStream,
};
use telinv::oracle::{cofactor_inverse, gauss_inverse, leibniz_det, relative_error};
use telinv::ReprKind;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn delete(a: &Matrix, r: usize, s: usize) -> Matrix {
    let n = a.n();
    let data = (1..=n)
        .filter(|&i| i != r)
        .flat_map(|i| (1..=n).filter(move |&j| j != s).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j))
        .collect();
    Matrix::new(n - 1, data).unwrap()
}

/// Signed permutations by inversion count, in lexicographic order.
fn permutations_by_inversions(n: usize) -> Vec<(i8, Vec<usize>)> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<(i8, Vec<usize>)>) {
        if prefix.len() == n {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((if inv % 2 == 0 { 1 } else { -1 }, prefix.clone()));
            return;
        }
        for c in 1..=n {
            if !prefix.contains(&c) {
                prefix.push(c);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Original index after deleting positions `chain` in order from `1..=size`.
fn walk(size: i64, base: i64, chain: &[i64]) -> i64 {
    let mut cur: Vec<i64> = (1..=size).collect();
    for &r in chain {
        cur.remove(r as usize - 1);
    }
    cur[base as usize - 1]
}

fn mse_experiment() -> Outcome {
    let start = Instant::now();
    let r = run_trials(&TrialConfig::standard(10_000, 0)).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let (max, p999, median) = (r.max_mse(), r.quantile_mse(0.999), r.median_mse());
    let ok = max < 1e-6 && p999 < 1e-9 && median < 1e-20 && secs < 60.0;
    (ok, format!("max {max:.3e}, p99.9 {p999:.3e}, median {median:.3e}, mode {:.1} dB, {secs:.2} s", r.mode_db))
}

fn oracle_equivalence() -> Outcome {
    let (mut det_err, mut inv_err) = (0.0f64, 0.0f64);
    for n in 2..=5 {
        for k in 0..200u64 {
            let a = random_matrix(n, 10_000 * n as u64 + k, true);
            det_err = det_err.max(relative_error(closed_form_det(&a, ReprKind::Direct).unwrap(), leibniz_det(&a).unwrap()));
            inv_err = inv_err.max(closed_form_inverse(&a).unwrap().matrix.max_abs_diff(&cofactor_inverse(&a).unwrap()));
        }
    }
    (det_err <= 1e-12 && inv_err <= 1e-10, format!("det rel {det_err:.3e}, inverse abs {inv_err:.3e}"))
}

fn integer_determinants() -> Outcome {
    let mut bad = 0;
    for n in 2..=5 {
        for k in 0..100u64 {
            let a = random_integer_matrix(n, 77 * n as u64 + k, -5, 5);
            if closed_form_det(&a, ReprKind::Direct).unwrap() != leibniz_det(&a).unwrap() {
                bad += 1;
            }
        }
    }
    (bad == 0, format!("{bad} inexact of 400"))
}

fn minor_formula() -> Outcome {
    let (mut checked, mut bad) = (0, 0);
    for n in 2..=8 {
        let a = random_matrix(n, n as u64, true);
        for r in 1..=n {
            for s in 1..=n {
                checked += 1;
                if minor_by_formula(&a, r, s).unwrap() != delete(&a, r, s) {
                    bad += 1;
                }
            }
        }
    }
    (bad == 0, format!("{bad} mismatches over {checked} positions"))
}

fn term_expansion() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=7 {
        let mut got: Vec<(i8, Vec<usize>)> = expand_terms(n).unwrap().into_iter().map(|t| (t.sign, t.cols)).collect();
        got.sort();
        let mut want = permutations_by_inversions(n);
        want.sort();
        ok &= got == want;
        if n == 5 {
            ok &= got.len() == 120;
            notes.push(format!("n=5 has {} terms", got.len()));
        }
    }
    (ok, notes.join(", "))
}

fn index_conformance() -> Outcome {
    let f = IndexFns::DIRECT;
    let mut bad = 0;
    let mut points = 0;
    for n in 1..=4 {
        for l in 1..=3 {
            for j in 1..=2 {
                points += 2;
                bad += usize::from(lambda4(&f, j, l, n).unwrap() != walk(4, j, &[n, l]));
                bad += usize::from(mu4(&f, j, l, n).unwrap() != walk(4, 3 - j, &[n, l]));
            }
        }
    }
    for q in 1..=5 {
        for n in 1..=4 {
            for l in 1..=3 {
                points += 1;
                bad += usize::from(lambda5(&f, l, n, q).unwrap() != walk(5, l, &[q, n]));
                for j in 1..=2 {
                    points += 2;
                    bad += usize::from(mu5(&f, j, l, n, q).unwrap() != walk(5, j, &[q, n, l]));
                    bad += usize::from(nu5(&f, j, l, n, q).unwrap() != walk(5, 3 - j, &[q, n, l]));
                }
            }
        }
    }
    idx::for_each_history(8, |h| {
        points += 1;
        bad += usize::from(primed_index(h.chain().len(), h).unwrap() != walk(h.size(), h.base(), h.chain()));
    });
    for audit in idx::conformance_report(8) {
        points += audit.points;
        bad += audit.mismatches.len();
    }
    let special: Vec<i64> = (1..=4)
        .map(|k| primed_index(k, &IndexHistory::new(6, 1, vec![1; k]).unwrap()).unwrap())
        .collect();
    let ok = bad == 0 && special == [2, 3, 4, 5];
    (ok, format!("{bad} mismatches over {points} points, all-ones specializations {special:?}"))
}

fn truth_tables() -> Outcome {
    let kron = |z: i64| i64::from(z == 0);
    let heav = |z: i64| i64::from(z >= 0);
    let mut bad = 0;
    let mut points = 0;
    for form in DeltaForm::ALL {
        for (z, n) in form.domain() {
            points += 1;
            bad += usize::from(gfn::delta_form(z, n, form).ok() != Some(kron(z - n)));
        }
    }
    for form in HeavForm::ALL {
        for (z, p) in form.domain() {
            points += 1;
            bad += usize::from(gfn::heav_form(z, p, form).ok() != Some(heav(z - p)));
        }
    }
    let mut spread = 0.0f64;
    for k in 0..100u64 {
        let a = random_matrix(3, 3_000 + k, k % 2 == 1);
        let direct = closed_form_det(&a, ReprKind::Direct).unwrap();
        for repr in ReprKind::ALL {
            spread = spread.max(relative_error(closed_form_det(&a, repr).unwrap(), direct));
        }
    }
    (bad == 0 && spread <= 1e-12, format!("{bad} wrong of {points} table points, 3x3 spread {spread:.3e}"))
}

fn sparse() -> Outcome {
    let x = [1.0, 2.0, 3.0, 4.0, 5.0].map(|v| Complex64::new(v, 0.0));
    let checks = sparse_suite(&x).unwrap();
    let worst = checks.iter().map(|c| c.det_error.max(c.inverse_error)).fold(0.0, f64::max);
    let case1 = checks[0].det;
    let ok = checks.iter().all(|c| c.pass) && worst <= 1e-12 && case1 == Complex64::new(120.0, 0.0);
    (ok, format!("worst error {worst:.3e}, case 1 det {}", case1.re))
}

fn applications() -> Outcome {
    let mut g = NormalStream::new(8);
    let mut v3 = || [g.next_normal(), g.next_normal(), g.next_normal()];
    let mut curl_err = 0.0f64;
    for _ in 0..1000 {
        let h = v3().map(|x| 0.1 + x.abs());
        let d = [v3(), v3(), v3()];
        let vol = h[0] * h[1] * h[2];
        let want = [
            h[0] / vol * (d[2][1] - d[1][2]),
            h[1] / vol * (d[0][2] - d[2][0]),
            h[2] / vol * (d[1][0] - d[0][1]),
        ];
        let got = curl_components(&CurlInput { h, d }).unwrap();
        for k in 0..3 {
            curl_err = curl_err.max((got[k] - want[k]).abs());
        }
    }
    let mut triple_err = 0.0f64;
    for _ in 0..1000 {
        let (a, b, c) = (v3(), v3(), v3());
        let x = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let want = x[0] * c[0] + x[1] * c[1] + x[2] * c[2];
        triple_err = triple_err.max((scalar_triple(a, b, c) - want).abs());
    }
    (curl_err <= 1e-13 && triple_err <= 1e-13, format!("curl {curl_err:.3e}, triple {triple_err:.3e}"))
}

fn general_engine() -> Outcome {
    let (mut diff, mut res) = (0.0f64, 0.0f64);
    for k in 0..50u64 {
        let a = random_matrix(6, 60_000 + k, false);
        let x = general_inverse(&a).unwrap().matrix;
        diff = diff.max(x.max_abs_diff(&gauss_inverse(&a).unwrap()));
        res = res.max(a.residual(&x).unwrap());
    }
    (diff <= 1e-9 && res <= 1e-9, format!("vs elimination {diff:.3e}, residual {res:.3e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("MSE experiment", mse_experiment),
        ("oracle equivalence", oracle_equivalence),
        ("exact integer determinants", integer_determinants),
        ("minor formula exhaustive", minor_formula),
        ("term expansion", term_expansion),
        ("index conformance", index_conformance),
        ("representation truth tables", truth_tables),
        ("sparse suite", sparse),
        ("applications", applications),
        ("general engine", general_engine),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        all &= ok;
        println!("{} {:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, k + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
