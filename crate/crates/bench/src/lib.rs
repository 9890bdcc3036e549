//! Fixtures shared by the benchmarks.

use qpl_core::fock::FockSpace;
use qpl_core::weak::WeakConfig;
use qpl_core::{Ket, Operator, C64};

/// Qubit with an amplified `σ_z` weak value, coherent pointer `|2i⟩`, `N`
/// coupling.
pub fn amplified_qubit(fock: &FockSpace) -> WeakConfig {
    let theta = 3.0 * std::f64::consts::FRAC_PI_4 - 0.1;
    let pre = Ket::from_real(&[1.0, 1.0]).and_then(|k| k.normalized()).expect("pre");
    let post = Ket::from_real(&[theta.cos(), theta.sin()]).expect("post");
    let pointer = fock.coherent(C64::new(0.0, 2.0)).expect("coherent pointer");
    WeakConfig::new(pre, post, Operator::real_diagonal(&[1.0, -1.0]), fock.nop.clone(), pointer, 1e-3).expect("config")
}
