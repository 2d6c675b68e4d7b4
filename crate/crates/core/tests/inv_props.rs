use std::collections::HashSet;

use proptest::prelude::*;
use telinv::inv::{
    closed_form_det, closed_form_inverse, closed_form_inverse_repr, det_by, element_inverse,
    expand_terms, inverse_by, kronecker_det3, Method, Telescope,
};
use telinv::mat::{random_integer_matrix, random_matrix, Complex64, Matrix};
use telinv::oracle::{cofactor_inverse, leibniz_det, relative_error, signed_permutations};
use telinv::{Error, ReprKind};

fn scaled_diff(x: &Matrix, y: &Matrix) -> f64 {
    let scale = y.data().iter().map(|z| z.norm()).fold(1.0, f64::max);
    x.max_abs_diff(y) / scale
}

#[test]
fn closed_forms_match_leibniz_and_cofactor_oracles() {
    for n in 2..=5 {
        for seed in 0..50 {
            let a = random_matrix(n, seed * 31 + n as u64, seed % 2 == 0);
            let d = closed_form_det(&a, ReprKind::Direct).unwrap();
            assert!(relative_error(d, leibniz_det(&a).unwrap()) <= 1e-12, "n={n} seed={seed}");
            let inv = closed_form_inverse(&a).unwrap();
            assert!(scaled_diff(&inv.matrix, &cofactor_inverse(&a).unwrap()) < 1e-9);
        }
    }
}

#[test]
fn integer_determinants_are_exact() {
    for n in 2..=5 {
        for seed in 0..40 {
            let a = random_integer_matrix(n, seed, -9, 9);
            let d = closed_form_det(&a, ReprKind::Direct).unwrap();
            assert_eq!(d, leibniz_det(&a).unwrap(), "n={n} seed={seed}");
            assert_eq!(d.re.fract(), 0.0);
        }
    }
}

#[test]
fn inverse_times_matrix_is_identity() {
    for n in 2..=6 {
        for seed in 0..20 {
            let a = random_matrix(n, 7000 + seed, true);
            let inv = inverse_by(&a, Method::default_for(n), ReprKind::Direct).unwrap();
            let id = Matrix::identity(n);
            assert!(inv.matrix.mul(&a).unwrap().max_abs_diff(&id) < 1e-8, "n={n} seed={seed}");
            assert!(a.mul(&inv.matrix).unwrap().max_abs_diff(&id) < 1e-8, "n={n} seed={seed}");
        }
    }
}

#[test]
fn reported_det_is_the_closed_form_det() {
    for n in 2..=5 {
        let a = random_matrix(n, 99, false);
        let inv = closed_form_inverse(&a).unwrap();
        let d = closed_form_det(&a, ReprKind::Direct).unwrap();
        assert!(relative_error(inv.det, d) <= 1e-14);
    }
}

#[test]
fn representations_agree_at_side_three() {
    for seed in 0..100 {
        let a = random_matrix(3, seed, seed % 3 == 0);
        let direct = closed_form_det(&a, ReprKind::Direct).unwrap();
        let inv = closed_form_inverse(&a).unwrap();
        for repr in ReprKind::ALL {
            let d = closed_form_det(&a, repr).unwrap();
            assert!(relative_error(d, direct) <= 1e-12, "{repr} seed={seed}");
            let r = closed_form_inverse_repr(&a, repr).unwrap();
            assert!(scaled_diff(&r.matrix, &inv.matrix) < 1e-12, "{repr} seed={seed}");
        }
    }
}

#[test]
fn restricted_representations_refuse_other_sides() {
    let a = random_matrix(4, 1, false);
    for repr in [ReprKind::Cosine, ReprKind::Bessel, ReprKind::Hermite] {
        assert!(matches!(closed_form_det(&a, repr), Err(Error::Unsupported(_))));
    }
    assert!(closed_form_det(&a, ReprKind::Gamma).is_ok());
    assert!(matches!(det_by(&a, Method::Telescope, ReprKind::Gamma), Err(Error::Unsupported(_))));
}

#[test]
fn kronecker_evaluator_matches_leibniz() {
    for seed in 0..100 {
        let a = random_matrix(3, 500 + seed, true);
        assert!(relative_error(kronecker_det3(&a).unwrap(), leibniz_det(&a).unwrap()) <= 1e-12);
    }
}

#[test]
fn expansion_enumerates_signed_permutations() {
    for n in 2..=7 {
        let terms = expand_terms(n).unwrap();
        let unique: HashSet<_> = terms.iter().map(|t| t.cols.clone()).collect();
        assert_eq!(unique.len(), terms.len(), "duplicate term at n={n}");
        let got: HashSet<(i8, Vec<usize>)> = terms.into_iter().map(|t| (t.sign, t.cols)).collect();
        let want: HashSet<(i8, Vec<usize>)> = signed_permutations(n).into_iter().collect();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn singular_and_capacity_errors() {
    let zero = Matrix::zeros(3);
    assert!(matches!(closed_form_inverse(&zero), Err(Error::Singular)));
    let big = random_matrix(9, 0, false);
    assert!(matches!(Telescope::default().det(&big), Err(Error::Capacity { n: 9, cap: 8 })));
    assert!(Telescope { cap: 9 }.det(&big).is_ok());
}

#[test]
fn near_singular_is_flagged() {
    let eps = 1e-15;
    let a = Matrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0 + eps * 8.0]]).unwrap();
    assert!(closed_form_inverse(&a).unwrap().near_singular);
    assert!(!closed_form_inverse(&Matrix::identity(2)).unwrap().near_singular);
}

#[test]
fn telescope_matches_closed_forms() {
    for n in 2..=5 {
        let a = random_matrix(n, 42, true);
        let c = closed_form_inverse(&a).unwrap();
        let t = Telescope::default().inverse(&a).unwrap();
        assert!(scaled_diff(&t.matrix, &c.matrix) < 1e-10);
    }
}

proptest! {
    #[test]
    fn element_inverse_matches_full_inverse(n in 2usize..=7, seed in any::<u64>(), p in 1usize..=7, q in 1usize..=7) {
        let (p, q) = ((p - 1) % n + 1, (q - 1) % n + 1);
        let a = random_matrix(n, seed, false);
        let full = inverse_by(&a, Method::Oracle, ReprKind::Direct).unwrap().matrix;
        let e = element_inverse(&a, p, q).unwrap();
        let scale = full.data().iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!((e - full.get(q, p)).norm() / scale < 1e-8);
    }

    #[test]
    fn swapping_rows_negates_det(seed in any::<u64>(), n in 2usize..=5) {
        let a = random_matrix(n, seed, true);
        let mut b = a.clone();
        for j in 1..=n {
            b.set(1, j, a.get(2, j));
            b.set(2, j, a.get(1, j));
        }
        let da = closed_form_det(&a, ReprKind::Direct).unwrap();
        let db = closed_form_det(&b, ReprKind::Direct).unwrap();
        prop_assert!(relative_error(-db, da) <= 1e-12);
    }

    #[test]
    fn transpose_preserves_det(seed in any::<u64>(), n in 2usize..=5) {
        let a = random_matrix(n, seed, true);
        let da = closed_form_det(&a, ReprKind::Direct).unwrap();
        let dt = closed_form_det(&a.transpose(), ReprKind::Direct).unwrap();
        prop_assert!(relative_error(dt, da) <= 1e-12);
    }
}

#[test]
fn identity_det_is_one() {
    for n in 2..=8 {
        let id = Matrix::identity(n);
        assert_eq!(det_by(&id, Method::default_for(n), ReprKind::Direct).unwrap(), Complex64::new(1.0, 0.0));
    }
}
