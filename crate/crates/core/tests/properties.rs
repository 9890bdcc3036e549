use proptest::prelude::*;
use qpl_core::weyl_wigner::{wigner_function, ww_basis, PhasePoint};
use qpl_core::{coherent, hilbert, random, schwinger, weak, Ket, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_relation_any_exponents(n in 1usize..12, j in -30i64..30, k in -30i64..30) {
        prop_assert!(schwinger::weyl_relation_defect(n, j, k).unwrap() < 1e-10);
    }

    #[test]
    fn wigner_normalized(n in 1usize..9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random::density(&mut rng, n);
        let w = wigner_function(&rho, &ww_basis(n).unwrap()).unwrap();
        prop_assert!((w.total() - 1.0).abs() < 1e-10);
        prop_assert!(w.negativity >= -1e-12);
    }

    #[test]
    fn phase_point_reduction(m in -100i64..100, q in -100i64..100, n in 1usize..20) {
        let p = PhasePoint::new(m, q, n);
        prop_assert!(p.m < n && p.n < n);
        prop_assert_eq!(p, PhasePoint::new(m + n as i64, q - 3 * n as i64, n));
    }

    #[test]
    fn coherent_overlap_closed_form(n in 2usize..9, p in 0usize..9, q in 0usize..9, r in 0usize..9, s in 0usize..9) {
        let (p, q, r, s) = (p % n, q % n, r % n, s % n);
        let direct = coherent::coherent_overlap(n, p, q, r, s).unwrap();
        prop_assert!((direct - coherent::overlap_closed_form(n, p, q, r, s)).norm() < 1e-12);
    }

    #[test]
    fn unitary_exp_is_unitary(n in 1usize..8, t in -5.0f64..5.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::hermitian(&mut rng, n);
        prop_assert!(hilbert::unitary_exp(&h, t).unwrap().unitarity_defect() < 1e-10);
    }

    #[test]
    fn pancharatnam_rephasing(seed in any::<u64>(), a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random::ket(&mut rng, 3), random::ket(&mut rng, 3), random::ket(&mut rng, 3));
        let ph = |k: &Ket, t: f64| k.scale(C64::from_polar(1.0, t));
        let base = weak::pancharatnam_phase(&x, &y, &z).unwrap();
        let moved = weak::pancharatnam_phase(&ph(&x, a), &ph(&y, b), &ph(&z, c)).unwrap();
        prop_assert!(weak::wrap_phase(base - moved).abs() < 1e-9);
    }
}
