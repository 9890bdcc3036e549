//! Schwinger's finite quantum kinematics on `Z_N`.
//!
//! Conventions: `v = e^{2πi/N}`, `V|u_k> = |u_{k-1}>`, `U = diag(v^k)` in the
//! position basis, and `F_jk = v^{jk}/√N` so that `F e_k = |v_k>`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{Ket, Operator, ONE, ZERO};
use crate::zn::{reduce, root};

fn check(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

/// `v^k = e^{2πik/N}`.
pub fn root_of_unity(n: usize, k: i64) -> C64 {
    root(n, k)
}

/// Cyclic position translator `V`, with `V e_k = e_{k-1 mod N}`.
pub fn position_shift(n: usize) -> Result<Operator> {
    check(n)?;
    Ok(Operator::from_fn(n, |i, j| if i == reduce(j as i64 - 1, n) { ONE } else { ZERO }))
}

/// Momentum translator `U = diag(1, v, v^2, ...)`.
pub fn momentum_shift(n: usize) -> Result<Operator> {
    check(n)?;
    let d: Vec<C64> = (0..n as i64).map(|k| root(n, k)).collect();
    Ok(Operator::diagonal(&d))
}

/// Discrete Fourier operator, `F_jk = v^{jk}/√N`.
pub fn dft(n: usize) -> Result<Operator> {
    check(n)?;
    let s = 1.0 / (n as f64).sqrt();
    Ok(Operator::from_fn(n, |j, k| root(n, (j * k) as i64) * s))
}

/// Position eigenket `|u_k>`.
pub fn position_ket(n: usize, k: i64) -> Result<Ket> {
    Ket::basis(n, reduce(k, n.max(1)))
}

/// Momentum eigenket `|v_k> = F|u_k>`, components `v^{jk}/√N`.
pub fn momentum_ket(n: usize, k: i64) -> Result<Ket> {
    check(n)?;
    let s = 1.0 / (n as f64).sqrt();
    Ket::new((0..n as i64).map(|j| root(n, j * k) * s).collect())
}

/// The three kinematic operators of `Z_N` bundled together.
#[derive(Clone, Debug)]
pub struct Kinematics {
    pub dim: usize,
    pub v: Operator,
    pub u: Operator,
    pub f: Operator,
}

impl Kinematics {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self { dim: n, v: position_shift(n)?, u: momentum_shift(n)?, f: dft(n)? })
    }

    /// The primitive root `v = e^{2πi/N}`.
    pub fn omega(&self) -> C64 {
        root(self.dim, 1)
    }

    /// `V^j` for any integer `j` (negative powers via `V^{N-|j|}`).
    pub fn v_pow(&self, j: i64) -> Operator {
        self.v.pow(reduce(j, self.dim))
    }

    pub fn u_pow(&self, k: i64) -> Operator {
        self.u.pow(reduce(k, self.dim))
    }
}

/// Largest entry of `V^j U^k - v^{jk} U^k V^j`.
pub fn weyl_relation_defect(n: usize, j: i64, k: i64) -> Result<f64> {
    let kin = Kinematics::new(n)?;
    let vj = kin.v_pow(j);
    let uk = kin.u_pow(k);
    let lhs = &vj * &uk;
    let rhs = (&uk * &vj).scale(root(n, j * k));
    Ok(lhs.max_abs_diff(&rhs))
}

/// `tr F` computed from the matrix diagonal.
pub fn gauss_trace(n: usize) -> Result<C64> {
    Ok(dft(n)?.trace())
}

/// `(1 - i^N)/(1 - i)`, the value `tr F` would take if the spectrum of `F`
/// were `1, i, ..., i^{N-1}`. Agrees with [`gauss_trace`] for odd `N` only.
pub fn gauss_closed_form(n: usize) -> C64 {
    let i = C64::new(0.0, 1.0);
    let i_pow = match n % 4 {
        0 => ONE,
        1 => i,
        2 => -ONE,
        _ => -i,
    };
    (ONE - i_pow) / (ONE - i)
}
