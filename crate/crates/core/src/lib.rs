//! Finite-dimensional quantum phase space.
//!
//! Modules, bottom-up:
//!
//! - [`hilbert`]: kets, operators, tensor products, partial traces and
//!   unitary exponentials.
//! - [`schwinger`]: cyclic shift operators `V`, `U`, the discrete Fourier
//!   operator and the Gauss-sum trace.
//! - [`weyl_wigner`]: the phase-point operator basis `Δ_mn`, Wigner
//!   functions and the `u(N)` structure constants.
//! - [`coherent`]: finite displacement operators and coherent states.
//! - [`fock`]: a truncated bosonic mode used as a measuring pointer.
//! - [`weak`]: pre/post-selected measurement, weak values, shifts and
//!   geometric phases.
//! - [`modular`]: coprime factorizations, Aharonov-Zak states and the
//!   finite N-slit model.
//! - [`export`]: canonical JSON and CSV output.

pub mod coherent;
pub mod error;
pub mod export;
pub mod fock;
pub mod hilbert;
pub mod modular;
pub mod random;
pub mod schwinger;
pub mod weak;
pub mod weyl_wigner;
pub(crate) mod zn;

pub use error::{Error, Result};
pub use hilbert::{hs_inner, partial_trace, tensor, unitary_exp, HermitianEigen, Ket, Operator, ProductLabel, Tensor};
pub use num_complex::Complex64 as C64;
pub use weyl_wigner::PhasePoint;
