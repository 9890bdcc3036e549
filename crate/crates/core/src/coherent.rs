//! Finite displacement operators and coherent states of `Z_N`.
//!
//! `D_mn = v^{-mn/2} U^m V^{-n}` with the half phase taken on representatives
//! `0 ≤ m, n < N`. The reference state `|0⟩ = (u_0 + v_0)/‖u_0 + v_0‖` is
//! invariant under the discrete Fourier operator.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{Ket, Operator};
use crate::schwinger::{momentum_ket, position_ket, Kinematics};
use crate::weyl_wigner::PhasePoint;
use crate::zn::half_root;

pub fn displacement(dim: usize, m: usize, n: usize) -> Result<Operator> {
    let kin = Kinematics::new(dim)?;
    Ok(displacement_with(&kin, PhasePoint::new(m as i64, n as i64, dim)))
}

fn displacement_with(kin: &Kinematics, p: PhasePoint) -> Operator {
    let dim = kin.dim;
    let phase = half_root(dim, -((p.m * p.n) as i64));
    (&kin.u_pow(p.m as i64) * &kin.v_pow(-(p.n as i64))).scale(phase)
}

/// `‖u_0 + v_0‖² = 2 + 2/√N`.
pub fn reference_norm_sqr(dim: usize) -> f64 {
    2.0 + 2.0 / (dim as f64).sqrt()
}

pub fn reference_state(dim: usize) -> Result<Ket> {
    let u0 = position_ket(dim, 0)?;
    let v0 = momentum_ket(dim, 0)?;
    (&u0 + &v0).normalized()
}

pub fn coherent_state(dim: usize, m: usize, n: usize) -> Result<Ket> {
    displacement(dim, m, n)?.apply(&reference_state(dim)?)
}

/// `⟨p,q|r,s⟩` by direct inner product.
pub fn coherent_overlap(dim: usize, p: usize, q: usize, r: usize, s: usize) -> Result<C64> {
    coherent_state(dim, p, q)?.inner(&coherent_state(dim, r, s)?)
}

/// Closed form of the overlap.
///
/// With `m = r - p`, `n = s - q` taken as plain integer differences of the
/// representatives, `⟨p,q|r,s⟩ = v^{(rq-ps)/2} K(m, n)` where `K` is 1 on the
/// diagonal, `(N + 2√N) / (2(N + √N))` when exactly one of `m`, `n` vanishes
/// and `cos(πmn/N)/(1 + √N)` otherwise.
pub fn overlap_closed_form(dim: usize, p: usize, q: usize, r: usize, s: usize) -> C64 {
    let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
    let phase = half_root(dim, r * q - p * s);
    phase * overlap_magnitude(dim, r - p, s - q)
}

/// The real factor `K(m, n)` of [`overlap_closed_form`]; may be negative.
pub fn overlap_magnitude(dim: usize, m: i64, n: i64) -> f64 {
    let nf = dim as f64;
    let rt = nf.sqrt();
    match (m == 0, n == 0) {
        (true, true) => 1.0,
        (true, false) | (false, true) => (nf + 2.0 * rt) / (2.0 * (nf + rt)),
        (false, false) => (std::f64::consts::PI * (m * n) as f64 / nf).cos() / (1.0 + rt),
    }
}

/// All `N²` coherent states sharing one reference ket.
#[derive(Clone, Debug)]
pub struct FiniteCoherentFamily {
    dim: usize,
    reference: Ket,
    states: Vec<Ket>,
}

impl FiniteCoherentFamily {
    pub fn new(dim: usize) -> Result<Self> {
        let kin = Kinematics::new(dim)?;
        let reference = reference_state(dim)?;
        let states =
            PhasePoint::all(dim).map(|p| displacement_with(&kin, p).apply(&reference)).collect::<Result<_>>()?;
        Ok(Self { dim, reference, states })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reference(&self) -> &Ket {
        &self.reference
    }

    pub fn state(&self, p: PhasePoint) -> &Ket {
        &self.states[p.index(self.dim)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, &Ket)> {
        PhasePoint::all(self.dim).zip(self.states.iter())
    }

    /// `Σ |m,n⟩⟨m,n|`, which equals `N·I`.
    pub fn resolution(&self) -> Operator {
        let mut acc = Operator::zeros(self.dim);
        for s in &self.states {
            acc = &acc + &s.projector();
        }
        acc
    }

    /// Gram matrix `G[a][b] = ⟨a|b⟩` over phase points in row-major order.
    pub fn gram(&self) -> Vec<Vec<C64>> {
        self.states.iter().map(|a| self.states.iter().map(|b| a.inner(b).expect("same dimension")).collect()).collect()
    }

    /// First pair of distinct states (in row-major order) whose overlap
    /// modulus is at most `tol`.
    pub fn orthogonal_pair(&self, tol: f64) -> Option<(PhasePoint, PhasePoint, f64)> {
        let points: Vec<PhasePoint> = PhasePoint::all(self.dim).collect();
        for (i, a) in points.iter().enumerate() {
            for (j, b) in points.iter().enumerate().skip(i + 1) {
                let ov = self.states[i].inner(&self.states[j]).expect("same dimension").norm();
                if ov <= tol {
                    return Some((*a, *b, ov));
                }
            }
        }
        None
    }
}

/// Checks that `D_a D_b` and `D_b D_a` differ only by a unimodular scalar and
/// returns it.
pub fn commutation_phase(dim: usize, a: PhasePoint, b: PhasePoint) -> Result<C64> {
    let da = displacement(dim, a.m, a.n)?;
    let db = displacement(dim, b.m, b.n)?;
    let ab = &da * &db;
    let ba = &db * &da;
    let (mut best, mut at) = (0.0, (0, 0));
    for r in 0..dim {
        for c in 0..dim {
            let x = ba.entry(r, c).norm();
            if x > best {
                best = x;
                at = (r, c);
            }
        }
    }
    if best == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let ratio = ab.entry(at.0, at.1) / ba.entry(at.0, at.1);
    Ok(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwinger::dft;

    #[test]
    fn zero_displacement_is_identity() {
        for n in 1..6 {
            assert!(displacement(n, 0, 0).unwrap().max_abs_diff(&Operator::identity(n)) < 1e-15);
        }
    }

    #[test]
    fn reference_norm_n4() {
        let raw = &position_ket(4, 0).unwrap() + &momentum_ket(4, 0).unwrap();
        assert!((raw.norm_sqr() - 3.0).abs() < 1e-12);
        assert!((reference_norm_sqr(4) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn reference_n1_is_basis_ket() {
        let r = reference_state(1).unwrap();
        assert!((r.amps()[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn reference_is_fourier_invariant() {
        for n in 2..=12 {
            let r = reference_state(n).unwrap();
            let fr = dft(n).unwrap().apply(&r).unwrap();
            assert!(fr.max_abs_diff(&r) < 1e-10, "N={n}");
        }
    }

    #[test]
    fn n4_anomaly_pair() {
        let ov = coherent_overlap(4, 0, 0, 2, 1).unwrap();
        assert!(ov.norm() < 1e-10);
    }
}
