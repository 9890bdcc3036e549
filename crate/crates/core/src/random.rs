//! Seeded random states and operators for property sweeps.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::hilbert::{Ket, Operator};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed pure state.
pub fn ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Ket {
    let amps: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
    Ket::new(amps).and_then(|k| k.normalized()).expect("gaussian vector is nonzero")
}

/// Matrix with i.i.d. complex gaussian entries.
pub fn operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    Operator::from_fn(dim, |_, _| gaussian(rng))
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let a = operator(rng, dim);
    (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
}

/// Full-rank density matrix `A A† / tr(A A†)`.
pub fn density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let a = operator(rng, dim);
    let m: DMatrix<C64> = a.matrix() * a.matrix().adjoint();
    let tr = m.trace();
    Operator::from_matrix(m / tr).expect("square")
}
