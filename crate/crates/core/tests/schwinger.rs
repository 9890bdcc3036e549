use qpl_core::schwinger::*;
use qpl_core::{Ket, Operator, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn kinematics_up_to_32() {
    for n in 1..=32 {
        let kin = Kinematics::new(n).unwrap();
        let id = Operator::identity(n);
        assert!(kin.v.pow(n).max_abs_diff(&id) < 1e-10, "N={n}");
        assert!(kin.u.pow(n).max_abs_diff(&id) < 1e-10, "N={n}");
        for op in [&kin.v, &kin.u, &kin.f] {
            assert!(op.unitarity_defect() < 1e-10);
        }
        let f2 = &kin.f * &kin.f;
        assert!((&f2 * &f2).max_abs_diff(&id) < 1e-10);
    }
}

#[test]
fn weyl_relation_up_to_32() {
    for n in [1, 2, 7, 16, 32] {
        for j in 0..n as i64 {
            for k in 0..n as i64 {
                assert!(weyl_relation_defect(n, j, k).unwrap() <= 1e-10, "N={n} j={j} k={k}");
            }
        }
    }
}

#[test]
fn fourier_columns_are_momentum_eigenvectors() {
    for n in 1..=12 {
        let kin = Kinematics::new(n).unwrap();
        for j in 0..n {
            let col = kin.f.apply(&Ket::basis(n, j).unwrap()).unwrap();
            let vj = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
            assert!(kin.v.apply(&col).unwrap().max_abs_diff(&col.scale(vj)) < 1e-10);
            assert!(col.max_abs_diff(&momentum_ket(n, j as i64).unwrap()) < 1e-14);
        }
    }
}

#[test]
fn character_orthogonality() {
    for n in 1..=16 {
        for j in 0..n {
            for k in 0..n {
                let s: C64 = (0..n).map(|l| root_of_unity(n, (j as i64 - k as i64) * l as i64)).sum::<C64>() / n as f64;
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((s - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn gauss_trace_examples() {
    assert!((gauss_trace(1).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    assert!((gauss_trace(5).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    assert!((gauss_trace(3).unwrap() - c(0.0, 1.0)).norm() < 1e-12);
    let direct: C64 =
        (0..3).map(|j| C64::from_polar(1.0, std::f64::consts::TAU * (j * j) as f64 / 3.0)).sum::<C64>() / 3f64.sqrt();
    assert!((gauss_trace(3).unwrap() - direct).norm() < 1e-12);
}

#[test]
fn odd_gauss_closed_form() {
    for n in (1..=31).step_by(2) {
        assert!((gauss_trace(n).unwrap() - gauss_closed_form(n)).norm() < 1e-10, "N={n}");
    }
}

#[test]
fn even_gauss_values() {
    // 1 + i for N ≡ 0 mod 4, 0 for N ≡ 2 mod 4
    for n in (2..=32).step_by(2) {
        let want = if n % 4 == 0 { c(1.0, 1.0) } else { c(0.0, 0.0) };
        assert!((gauss_trace(n).unwrap() - want).norm() < 1e-10, "N={n}");
    }
    assert!((gauss_trace(4).unwrap() - gauss_closed_form(4)).norm() > 0.5);
}

#[test]
fn negative_indices_reduce() {
    assert_eq!(position_ket(5, -1).unwrap(), position_ket(5, 4).unwrap());
    assert!(momentum_ket(4, -3).unwrap().max_abs_diff(&momentum_ket(4, 1).unwrap()) < 1e-15);
}

#[test]
fn zero_dimension_rejected() {
    assert!(position_shift(0).is_err());
    assert!(dft(0).is_err());
}
