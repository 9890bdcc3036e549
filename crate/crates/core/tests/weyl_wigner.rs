use qpl_core::schwinger::{dft, momentum_ket, position_ket, Kinematics};
use qpl_core::weyl_wigner::*;
use qpl_core::{hs_inner, random, Ket, Operator, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DIMS: [usize; 5] = [2, 3, 4, 5, 7];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

// Half phase from scratch: e^{iπ·jk/N} style with the inverse of 2 for odd N
// and the pairing rule for even N.
fn oracle_half(n: usize, j: usize, k: usize) -> C64 {
    let tau = std::f64::consts::TAU;
    if n % 2 == 1 {
        let inv2 = (1..n).find(|x| (2 * x) % n == 1).unwrap_or(0);
        return cis(tau * ((inv2 * j * k) % n) as f64 / n as f64);
    }
    let (pj, pk) = ((n - j) % n, (n - k) % n);
    let (a, b) = if (j, k) <= (pj, pk) { (j, k) } else { (pj, pk) };
    cis(std::f64::consts::PI * (a * b) as f64 / n as f64)
}

// Δ_mn straight from the double sum of matrix powers.
fn oracle_delta(n: usize, m: usize, q: usize) -> Operator {
    let kin = Kinematics::new(n).unwrap();
    let tau = std::f64::consts::TAU;
    let mut acc = Operator::zeros(n);
    for j in 0..n {
        for k in 0..n {
            let phase = oracle_half(n, j, k) * cis(-tau * ((j * q + k * m) % n) as f64 / n as f64);
            let term = &kin.u.pow(j) * &kin.v.pow(k);
            acc = &acc + &term.scale(phase);
        }
    }
    acc.scale(c(1.0 / n as f64, 0.0))
}

#[test]
fn basis_matches_double_sum() {
    for n in DIMS {
        let b = ww_basis(n).unwrap();
        for p in PhasePoint::all(n) {
            let d = oracle_delta(n, p.m, p.n);
            assert!(b.delta(p).max_abs_diff(&d) < 1e-12, "N={n} {p:?}");
        }
    }
}

#[test]
fn odd_basis_matches_operator_form() {
    for n in [3, 5, 7] {
        let b = ww_basis(n).unwrap();
        for p in PhasePoint::all(n) {
            let d = delta_operator_form(n, p).unwrap();
            assert!(b.delta(p).max_abs_diff(&d) < 1e-12);
        }
    }
}

#[test]
fn hermitian_unit_trace() {
    for n in DIMS {
        for (p, d) in ww_basis(n).unwrap().iter() {
            assert!(d.hermiticity_defect() < 1e-12, "N={n} {p:?}");
            assert!((d.trace() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn orthogonality() {
    for n in DIMS {
        let b = ww_basis(n).unwrap();
        for (p, dp) in b.iter() {
            for (q, dq) in b.iter() {
                let want = if p == q { n as f64 } else { 0.0 };
                assert!((hs_inner(dp, dq).unwrap() - c(want, 0.0)).norm() < 1e-9, "N={n} {p:?} {q:?}");
            }
        }
    }
}

#[test]
fn completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in DIMS {
        let b = ww_basis(n).unwrap();
        let o = random::operator(&mut rng, n);
        let mut acc = Operator::zeros(n);
        for (_, d) in b.iter() {
            acc = &acc + &(&(d * &o) * d);
        }
        let want = Operator::identity(n).scale(o.trace() * n as f64);
        assert!(acc.max_abs_diff(&want) < 1e-9, "N={n}");
    }
}

#[test]
fn involution_only_for_odd() {
    for n in DIMS {
        let b = ww_basis(n).unwrap();
        let worst = b.iter().map(|(_, d)| (d * d).max_abs_diff(&Operator::identity(n))).fold(0.0, f64::max);
        if n % 2 == 1 {
            assert!(worst < 1e-12, "N={n}");
        } else {
            assert!(worst > 1e-3, "N={n}");
        }
    }
}

#[test]
fn transform_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in DIMS {
        let b = ww_basis(n).unwrap();
        let o = random::operator(&mut rng, n);
        let g = ww_transform(&o, &b).unwrap();
        let back = ww_reconstruct(&g.values, &b).unwrap();
        assert!(back.max_abs_diff(&o) < 1e-10);
        // hermitian operators have real transforms
        let h = random::hermitian(&mut rng, n);
        assert!(ww_transform(&h, &b).unwrap().max_imag() < 1e-12);
    }
}

#[test]
fn transform_preserves_inner_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in DIMS {
        let b = ww_basis(n).unwrap();
        let (x, y) = (random::operator(&mut rng, n), random::operator(&mut rng, n));
        let lhs = hs_inner(&x, &y).unwrap();
        let rhs = transform_inner(&ww_transform(&x, &b).unwrap(), &ww_transform(&y, &b).unwrap());
        assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn n2_transforms_of_position_state() {
    // diagonal entries of the N=2 matrices: Δ_00 and Δ_10 have a 1 in the
    // top-left corner, Δ_01 and Δ_11 a 0.
    let b = ww_basis(2).unwrap();
    let w = wigner_function(&position_ket(2, 0).unwrap().projector(), &b).unwrap();
    assert_eq!(w.values, vec![0.5, 0.0, 0.5, 0.0]);
}

#[test]
fn wigner_normalization_random_densities() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 1..=16 {
        let b = ww_basis(n).unwrap();
        let rho = random::density(&mut rng, n);
        let w = wigner_function(&rho, &b).unwrap();
        assert!((w.total() - 1.0).abs() < 1e-10, "N={n}");
    }
}

#[test]
fn marginals_give_basis_probabilities() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for n in 2..=9 {
        let b = ww_basis(n).unwrap();
        let rho = random::density(&mut rng, n);
        let w = wigner_function(&rho, &b).unwrap();
        for (k, pk) in w.position_marginal().iter().enumerate() {
            let want = position_ket(n, k as i64).unwrap().expectation(&rho).unwrap().re;
            assert!((pk - want).abs() < 1e-10, "N={n} k={k}");
        }
        for (k, pk) in w.momentum_marginal().iter().enumerate() {
            let want = momentum_ket(n, k as i64).unwrap().expectation(&rho).unwrap().re;
            assert!((pk - want).abs() < 1e-10, "N={n} k={k}");
        }
    }
}

#[test]
fn parity_odd_state_is_negative_n3() {
    let b = ww_basis(3).unwrap();
    let psi = (&position_ket(3, 1).unwrap() - &position_ket(3, 2).unwrap()).normalized().unwrap();
    let w = wigner_function(&psi.projector(), &b).unwrap();
    assert!((w.get(PhasePoint { m: 0, n: 0 }) + 1.0 / 3.0).abs() < 1e-12);
    assert!(w.min < -1e-6);
    assert!(w.negativity > 0.0);
}

#[test]
fn product_rule_odd() {
    for n in [3, 5, 7] {
        let b = ww_basis(n).unwrap();
        for a in PhasePoint::all(n) {
            for q in PhasePoint::all(n) {
                let direct = b.delta(a) * b.delta(q);
                assert!(delta_product(a, q, &b).unwrap().max_abs_diff(&direct) < 1e-10, "N={n} {a:?} {q:?}");
            }
        }
    }
}

#[test]
fn parity_expansion_odd() {
    for n in [3, 5] {
        let b = ww_basis(n).unwrap();
        let f = dft(n).unwrap();
        let f2 = &f * &f;
        for q in PhasePoint::all(n) {
            let coeffs = parity_expansion(q, n).unwrap();
            let mut acc = Operator::zeros(n);
            for ((_, d), w) in b.iter().zip(&coeffs) {
                acc = &acc + &d.scale(*w);
            }
            assert!(acc.max_abs_diff(&(b.delta(q) * &f2)) < 1e-10);
        }
    }
}

#[test]
fn structure_constants_reproduce_commutators() {
    for n in [3, 5] {
        let b = ww_basis(n).unwrap();
        let t = structure_constants(n).unwrap();
        for a in PhasePoint::all(n) {
            for q in PhasePoint::all(n) {
                let direct = b.delta(a).commutator(b.delta(q));
                assert!(t.commutator(a, q, &b).max_abs_diff(&direct) < 1e-9, "N={n} {a:?} {q:?}");
            }
        }
    }
}

#[test]
fn position_and_momentum_states_are_lines() {
    let n = 5;
    let b = ww_basis(n).unwrap();
    let w = wigner_function(&position_ket(n, 2).unwrap().projector(), &b).unwrap();
    for p in PhasePoint::all(n) {
        let want = if p.n == 2 { 1.0 / n as f64 } else { 0.0 };
        assert!((w.get(p) - want).abs() < 1e-12);
    }
    let w = wigner_function(&momentum_ket(n, 3).unwrap().projector(), &b).unwrap();
    for p in PhasePoint::all(n) {
        let want = if p.m == 3 { 1.0 / n as f64 } else { 0.0 };
        assert!((w.get(p) - want).abs() < 1e-12);
    }
}

#[test]
fn ket_projector_consistency() {
    let psi = Ket::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap().normalized().unwrap();
    let w = wigner_function(&psi.projector(), &ww_basis(2).unwrap()).unwrap();
    assert!((w.total() - 1.0).abs() < 1e-12);
}
