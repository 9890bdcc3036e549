//! Coprime factorizations `Z_N ≅ Z_Na × Z_Nb`, Aharonov-Zak states and the
//! finite N-slit model.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{tensor, Ket, Operator};
use crate::schwinger::{momentum_ket, momentum_shift, position_ket, position_shift};
use crate::zn::{gcd, reduce};

/// Chinese-remainder relabeling of `Z_{Na·Nb}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtMap {
    na: usize,
    nb: usize,
    fwd: Vec<usize>,
    inv: Vec<(usize, usize)>,
}

impl CrtMap {
    pub fn new(na: usize, nb: usize) -> Result<Self> {
        if na == 0 || nb == 0 {
            return Err(Error::ZeroDimension);
        }
        if gcd(na, nb) != 1 {
            return Err(Error::NotCoprime(na, nb));
        }
        let n = na * nb;
        let mut fwd = vec![0; n];
        let mut inv = vec![(0, 0); n];
        for i in 0..n {
            let (j, s) = (i % na, i % nb);
            fwd[j * nb + s] = i;
            inv[i] = (j, s);
        }
        Ok(Self { na, nb, fwd, inv })
    }

    pub fn na(&self) -> usize {
        self.na
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn dim(&self) -> usize {
        self.na * self.nb
    }

    /// The unique `i` with `i ≡ j (mod Na)` and `i ≡ σ (mod Nb)`.
    pub fn fwd(&self, j: usize, sigma: usize) -> usize {
        self.fwd[(j % self.na) * self.nb + sigma % self.nb]
    }

    pub fn inv(&self, i: usize) -> (usize, usize) {
        self.inv[i % self.dim()]
    }

    /// Permutation taking `e_i` to `e_{j·Nb + σ}` for `(j, σ) = inv(i)`.
    pub fn permutation(&self) -> Operator {
        let mut m = Operator::zeros(self.dim()).into_matrix();
        for i in 0..self.dim() {
            let (j, s) = self.inv[i];
            m[(j * self.nb + s, i)] = C64::new(1.0, 0.0);
        }
        Operator::from_matrix(m).expect("square")
    }

    /// Largest entry of `P V_N P† - V_Na ⊗ V_Nb`.
    pub fn intertwining_defect(&self) -> Result<f64> {
        let p = self.permutation();
        let lhs = &(&p * &position_shift(self.dim())?) * &p.adjoint();
        let rhs = tensor(&position_shift(self.na)?, &position_shift(self.nb)?);
        Ok(lhs.max_abs_diff(&rhs))
    }
}

pub fn crt_map(na: usize, nb: usize) -> Result<CrtMap> {
    CrtMap::new(na, nb)
}

/// `|v_j^(Na)⟩ ⊗ |u_σ^(Nb)⟩`.
#[derive(Clone, Debug)]
pub struct AzState {
    pub na: usize,
    pub nb: usize,
    pub j: usize,
    pub sigma: usize,
    pub ket: Ket,
}

pub fn az_state(na: usize, nb: usize, j: usize, sigma: usize) -> Result<AzState> {
    CrtMap::new(na, nb)?;
    let ket = tensor(&momentum_ket(na, j as i64)?, &position_ket(nb, sigma as i64)?);
    Ok(AzState { na, nb, j: j % na, sigma: sigma % nb, ket })
}

impl AzState {
    /// `V ⊗ I` and `I ⊗ U`.
    pub fn commuting_pair(&self) -> Result<(Operator, Operator)> {
        Ok((
            tensor(&position_shift(self.na)?, &Operator::identity(self.nb)),
            tensor(&Operator::identity(self.na), &momentum_shift(self.nb)?),
        ))
    }

    /// `U ⊗ I` and `I ⊗ U`, the other reading of the simultaneous pair.
    pub fn alternative_pair(&self) -> Result<(Operator, Operator)> {
        Ok((
            tensor(&momentum_shift(self.na)?, &Operator::identity(self.nb)),
            tensor(&Operator::identity(self.na), &momentum_shift(self.nb)?),
        ))
    }

    /// Eigenvalues of the commuting pair read off as `⟨ψ|X|ψ⟩`.
    pub fn eigenvalues(&self) -> Result<(C64, C64)> {
        let (a, b) = self.commuting_pair()?;
        Ok((self.ket.expectation(&a)?, self.ket.expectation(&b)?))
    }

    /// Largest `‖Xψ - ⟨X⟩ψ‖` over the given pair.
    pub fn eigen_defect(&self, pair: &(Operator, Operator)) -> Result<f64> {
        let mut worst = 0.0f64;
        for op in [&pair.0, &pair.1] {
            let lam = self.ket.expectation(op)?;
            let img = op.apply(&self.ket)?;
            worst = worst.max((&img - &self.ket.scale(lam)).norm());
        }
        Ok(worst)
    }
}

/// Modular phases of an AZ state plus the cell lattice they label.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellCoords {
    pub na: usize,
    pub nb: usize,
    /// `2πj/Na`, the modular momentum.
    pub p_mod: f64,
    /// `2πσ/Nb`, the modular position.
    pub q_mod: f64,
    /// `Na × Nb` grid with a single 1 at `(j, σ)`.
    pub cells: Vec<Vec<u8>>,
}

pub fn modular_cell_coords(state: &AzState) -> Result<CellCoords> {
    let (a, b) = state.eigenvalues()?;
    let p_mod = a.arg().rem_euclid(TAU);
    let q_mod = b.arg().rem_euclid(TAU);
    // Snap to the lattice to absorb rounding at 0 / 2π.
    let snap = |x: f64, n: usize| reduce((x / TAU * n as f64).round() as i64, n) as f64 * TAU / n as f64;
    let mut cells = vec![vec![0u8; state.nb]; state.na];
    cells[state.j][state.sigma] = 1;
    Ok(CellCoords { na: state.na, nb: state.nb, p_mod: snap(p_mod, state.na), q_mod: snap(q_mod, state.nb), cells })
}

/// Applies `e^{-iV(Q)}` to `|v_0^(N)⟩` for an `Na`-periodic potential sampled
/// at the `N` positions.
pub fn nslit_evolve(n: usize, na: usize, samples: &[f64]) -> Result<Ket> {
    if na == 0 || !n.is_multiple_of(na) {
        return Err(Error::BadPeriod { period: na, dim: n });
    }
    CrtMap::new(na, n / na)?;
    if samples.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: samples.len() });
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    for (i, &x) in samples.iter().enumerate() {
        if (x - samples[i % na]).abs() > 1e-12 {
            return Err(Error::NotPeriodic { period: na, index: i });
        }
    }
    let v0 = momentum_ket(n, 0)?;
    Ket::new(v0.amps().iter().zip(samples).map(|(a, &x)| a * C64::from_polar(1.0, -x)).collect())
}

/// `⟨v_m|ψ⟩` for every `m`.
pub fn momentum_amplitudes(psi: &Ket) -> Result<Vec<C64>> {
    let n = psi.dim();
    (0..n as i64).map(|m| momentum_ket(n, m)?.inner(psi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_2_3_table() {
        let c = crt_map(2, 3).unwrap();
        let want = [((0, 0), 0), ((1, 1), 1), ((0, 2), 2), ((1, 0), 3), ((0, 1), 4), ((1, 2), 5)];
        for ((j, s), i) in want {
            assert_eq!(c.fwd(j, s), i);
            assert_eq!(c.inv(i), (j, s));
        }
    }

    #[test]
    fn crt_rejects_common_factor() {
        assert_eq!(crt_map(2, 4).unwrap_err(), Error::NotCoprime(2, 4));
    }

    #[test]
    fn state_1_2_of_6_phases() {
        let s = az_state(2, 3, 1, 2).unwrap();
        let cc = modular_cell_coords(&s).unwrap();
        assert!((cc.p_mod - std::f64::consts::PI).abs() < 1e-12);
        assert!((cc.q_mod - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        assert_eq!(cc.cells[1][2], 1);
    }

    #[test]
    fn nonperiodic_rejected() {
        let err = nslit_evolve(6, 2, &[0.0, 1.0, 0.0, 1.0, 0.5, 1.0]).unwrap_err();
        assert_eq!(err, Error::NotPeriodic { period: 2, index: 4 });
    }
}
