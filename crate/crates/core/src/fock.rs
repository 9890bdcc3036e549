//! A bosonic mode truncated to the number states `|0⟩ .. |D-1⟩`.
//!
//! Identities such as `[a, a†] = I` fail only in the last row and column;
//! tests compare on the leading block.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{unitary_exp, Ket, Operator, I, ZERO};

pub const DEFAULT_TRUNC: usize = 64;

/// Range accepted by [`FockSpace::scale_operator`].
pub const SCALE_RANGE: (f64, f64) = (1.0 / 3.0, 3.0);

#[derive(Clone, Debug)]
pub struct FockSpace {
    trunc: usize,
    pub a: Operator,
    pub adag: Operator,
    pub nop: Operator,
    pub q: Operator,
    pub p: Operator,
    pub h0: Operator,
    pub g: Operator,
    pub k: Operator,
}

impl FockSpace {
    pub fn new(trunc: usize) -> Result<Self> {
        if trunc < 2 {
            return Err(Error::OutOfRange { name: "trunc", value: trunc as f64, lo: 2.0, hi: f64::INFINITY });
        }
        let a = Operator::from_fn(trunc, |r, c| if c == r + 1 { C64::new((c as f64).sqrt(), 0.0) } else { ZERO });
        let adag = a.adjoint();
        let nop = &adag * &a;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = &(&a + &adag) * s;
        let p = (&a - &adag).scale(C64::new(0.0, -s));
        let (q2, p2) = (&q * &q, &p * &p);
        let h0 = &(&q2 + &p2) * 0.5;
        let g = &q.anticommutator(&p) * 0.5;
        let k = &(&q2 - &p2) * 0.5;
        Ok(Self { trunc, a, adag, nop, q, p, h0, g, k })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn vacuum(&self) -> Ket {
        Ket::basis(self.trunc, 0).expect("trunc >= 2")
    }

    /// `(H0, g, k)`.
    pub fn sl2_generators(&self) -> (&Operator, &Operator, &Operator) {
        (&self.h0, &self.g, &self.k)
    }

    /// `e^{iθN}`.
    pub fn fractional_fourier(&self, theta: f64) -> Operator {
        let d: Vec<C64> = (0..self.trunc).map(|n| C64::from_polar(1.0, theta * n as f64)).collect();
        Operator::diagonal(&d)
    }

    /// Rejects amplitudes whose photon-number distribution reaches the
    /// cutoff: requires `(|z| + 3)² ≤ D`.
    pub fn check_guard(&self, z: C64) -> Result<()> {
        let required = (z.norm() + 3.0).powi(2);
        if !z.is_finite() {
            return Err(Error::NonFinite);
        }
        if required > self.trunc as f64 {
            return Err(Error::TruncationGuard { modulus: z.norm(), required, trunc: self.trunc });
        }
        Ok(())
    }

    /// `e^{z a† - z̄ a}`.
    pub fn displace(&self, z: C64) -> Result<Operator> {
        self.check_guard(z)?;
        let gen = &(&self.adag * z) - &(&self.a * z.conj());
        unitary_exp(&gen.scale(I), 1.0)
    }

    pub fn coherent(&self, z: C64) -> Result<Ket> {
        self.displace(z)?.apply(&self.vacuum())
    }

    /// `S_ξ = e^{i ln ξ · g}`. Squeezes position: `Var_Q(S_ξ|0⟩) = ξ^{-2}/2`.
    pub fn scale_operator(&self, xi: f64) -> Result<Operator> {
        let (lo, hi) = SCALE_RANGE;
        if !(lo..=hi).contains(&xi) {
            return Err(Error::OutOfRange { name: "xi", value: xi, lo, hi });
        }
        unitary_exp(&self.g, -xi.ln())
    }

    /// `⟨(O - ⟨O⟩)²⟩` for hermitian `O`.
    pub fn variance(&self, op: &Operator, state: &Ket) -> Result<f64> {
        let mean = state.expectation(op)?.re;
        let sq = state.expectation(&(op * op))?.re;
        Ok(sq - mean * mean)
    }
}

pub fn fock_space(trunc: usize) -> Result<FockSpace> {
    FockSpace::new(trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ladder_entries() {
        let f = FockSpace::new(6).unwrap();
        assert!((f.a.entry(1, 2) - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        for c in 0..6 {
            assert_eq!(f.a.entry(5, c), ZERO);
        }
        let v = f.a.apply(&f.vacuum()).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn canonical_commutator_interior() {
        let f = FockSpace::new(10).unwrap();
        let comm = f.q.commutator(&f.p).leading_block(9);
        assert!(comm.max_abs_diff(&Operator::identity(9).scale(I)) < 1e-12);
    }

    #[test]
    fn h0_matches_number_plus_half() {
        let f = FockSpace::new(8).unwrap();
        let expected = &f.nop + &(&Operator::identity(8) * 0.5);
        assert!(f.h0.leading_block(7).max_abs_diff(&expected.leading_block(7)) < 1e-12);
    }

    #[test]
    fn half_turn_fourier_powers_of_i() {
        let f = FockSpace::new(5).unwrap();
        let ff = f.fractional_fourier(std::f64::consts::FRAC_PI_2);
        let want = [c(1., 0.), c(0., 1.), c(-1., 0.), c(0., -1.), c(1., 0.)];
        for (n, w) in want.iter().enumerate() {
            assert!((ff.entry(n, n) - w).norm() < 1e-15);
        }
    }

    #[test]
    fn guard_rejects_large_amplitude() {
        let f = FockSpace::new(16).unwrap();
        assert!(f.displace(c(1.0, 0.0)).is_ok());
        assert!(matches!(f.displace(c(1.5, 0.0)), Err(Error::TruncationGuard { .. })));
    }

    #[test]
    fn scale_range_enforced() {
        let f = FockSpace::new(8).unwrap();
        assert!(f.scale_operator(0.2).is_err());
        assert!(f.scale_operator(3.5).is_err());
        assert!(f.scale_operator(1.0).unwrap().max_abs_diff(&Operator::identity(8)) < 1e-12);
    }

    #[test]
    fn trunc_below_two_rejected() {
        assert!(FockSpace::new(1).is_err());
    }
}
