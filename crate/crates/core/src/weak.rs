//! Pre/post-selected von Neumann measurements with weak coupling.
//!
//! The system is coupled to a pointer through `e^{-iε O⊗R}`. The exact
//! evolution expands the pre-selected state in the eigenbasis of `O`:
//! `Σ_j ⟨o_j|α⟩ |o_j⟩ ⊗ e^{-iε o_j R}|φ⟩`, so only `R` needs diagonalizing.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::hilbert::{check_dims, tensor, unitary_exp, HermitianEigen, Ket, Operator, I, ZERO};
use crate::schwinger::momentum_ket;

/// `|⟨β|α⟩|` below this is treated as orthogonal.
pub const OVERLAP_TOL: f64 = 1e-12;

pub const DEFAULT_EPS: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct WeakConfig {
    pub pre: Ket,
    pub post: Ket,
    pub obs: Operator,
    pub pointer_gen: Operator,
    pub pointer: Ket,
    pub eps: f64,
}

impl WeakConfig {
    pub fn new(pre: Ket, post: Ket, obs: Operator, pointer_gen: Operator, pointer: Ket, eps: f64) -> Result<Self> {
        check_dims(pre.dim(), post.dim())?;
        check_dims(pre.dim(), obs.dim())?;
        check_dims(pointer.dim(), pointer_gen.dim())?;
        for op in [&obs, &pointer_gen] {
            let d = op.hermiticity_defect();
            if d > 1e-10 {
                return Err(Error::NotHermitian(d));
            }
        }
        if !eps.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            pre: pre.normalized()?,
            post: post.normalized()?,
            obs,
            pointer_gen,
            pointer: pointer.normalized()?,
            eps,
        })
    }

    pub fn with_eps(&self, eps: f64) -> Self {
        Self { eps, ..self.clone() }
    }

    /// `⟨β|α⟩`.
    pub fn selection_overlap(&self) -> C64 {
        self.post.inner(&self.pre).expect("dims checked")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakValue {
    pub value: C64,
}

impl WeakValue {
    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }
}

/// `O_w = ⟨β|O|α⟩ / ⟨β|α⟩`.
pub fn weak_value(cfg: &WeakConfig) -> Result<WeakValue> {
    let overlap = cfg.selection_overlap();
    if overlap.norm() <= OVERLAP_TOL {
        return Err(Error::OrthogonalSelection(overlap.norm()));
    }
    let num = cfg.post.inner(&cfg.obs.apply(&cfg.pre)?)?;
    Ok(WeakValue { value: num / overlap })
}

/// Largest `|o|` over the spectrum of `O`.
pub fn spectral_radius(obs: &Operator) -> Result<f64> {
    Ok(HermitianEigen::new(obs)?.values.iter().fold(0.0, |m, v| f64::max(m, v.abs())))
}

// Per-branch pointer states e^{-iε o_j R}|φ⟩ with amplitudes ⟨o_j|α⟩.
fn branches(cfg: &WeakConfig) -> Result<Vec<(Ket, C64, Ket)>> {
    let sys = HermitianEigen::new(&cfg.obs)?;
    let gen = HermitianEigen::new(&cfg.pointer_gen)?;
    (0..cfg.obs.dim())
        .map(|j| {
            let oj = sys.vector(j);
            let amp = oj.inner(&cfg.pre)?;
            let t = cfg.eps * sys.values[j];
            let moved = gen.map(|r| C64::from_polar(1.0, -t * r)).apply(&cfg.pointer)?;
            Ok((oj, amp, moved))
        })
        .collect()
}

/// Composite state after the interaction, system factor first.
pub fn evolve_exact(cfg: &WeakConfig) -> Result<Ket> {
    let dim = cfg.obs.dim() * cfg.pointer.dim();
    let mut acc = Ket::from_vector(nalgebra::DVector::from_element(dim, ZERO))?;
    for (oj, amp, moved) in branches(cfg)? {
        acc = &acc + &tensor(&oj, &moved).scale(amp);
    }
    Ok(acc)
}

/// Same as [`evolve_exact`], exponentiating `O⊗R` on the whole composite.
/// Quadratic in the composite dimension; meant for cross-checks.
pub fn evolve_dense(cfg: &WeakConfig) -> Result<Ket> {
    let h = tensor(&cfg.obs, &cfg.pointer_gen);
    unitary_exp(&h, cfg.eps)?.apply(&tensor(&cfg.pre, &cfg.pointer))
}

/// Pointer state after projecting the system onto `β`.
#[derive(Clone, Debug)]
pub struct PostSelected {
    /// `(⟨β|⊗I)|Ψ⟩`.
    pub raw: Ket,
    pub normalized: Ket,
    pub probability: f64,
}

pub fn post_select(state: &Ket, beta: &Ket) -> Result<PostSelected> {
    let n = beta.dim();
    if n == 0 || !state.dim().is_multiple_of(n) {
        return Err(Error::DimensionMismatch { expected: n, found: state.dim() });
    }
    let m = state.dim() / n;
    let amps = state.amps();
    let raw: Vec<C64> = (0..m).map(|k| (0..n).map(|j| beta.amps()[j].conj() * amps[j * m + k]).sum()).collect();
    let raw = Ket::new(raw)?;
    let probability = raw.norm_sqr();
    if probability <= OVERLAP_TOL * OVERLAP_TOL {
        return Err(Error::ZeroPostSelection);
    }
    let normalized = raw.normalized()?;
    Ok(PostSelected { raw, normalized, probability })
}

/// Post-selected pointer computed without forming the composite.
fn post_selected_pointer(cfg: &WeakConfig) -> Result<PostSelected> {
    let mut acc = Ket::from_vector(nalgebra::DVector::from_element(cfg.pointer.dim(), ZERO))?;
    for (oj, amp, moved) in branches(cfg)? {
        acc = &acc + &moved.scale(cfg.post.inner(&oj)? * amp);
    }
    let probability = acc.norm_sqr();
    if probability <= OVERLAP_TOL * OVERLAP_TOL {
        return Err(Error::ZeroPostSelection);
    }
    Ok(PostSelected { normalized: acc.normalized()?, raw: acc, probability })
}

/// First-order shift of `⟨M⟩`:
/// `ε[Im O_w (⟨{M,R}⟩ - 2⟨R⟩⟨M⟩) - i Re O_w ⟨[M,R]⟩]` on the initial pointer.
/// Complex in general; real for hermitian `M`.
pub fn predicted_shift_complex(cfg: &WeakConfig, m: &Operator) -> Result<C64> {
    let w = weak_value(cfg)?.value;
    let phi = &cfg.pointer;
    let r = &cfg.pointer_gen;
    let anti = phi.expectation(&m.anticommutator(r))?;
    let comm = phi.expectation(&m.commutator(r))?;
    let mean_r = phi.expectation(r)?;
    let mean_m = phi.expectation(m)?;
    Ok((anti - mean_r * mean_m * 2.0) * (w.im * cfg.eps) - I * comm * (w.re * cfg.eps))
}

pub fn predicted_shift(cfg: &WeakConfig, m: &Operator) -> Result<f64> {
    Ok(predicted_shift_complex(cfg, m)?.re)
}

/// `⟨M⟩` on the normalized post-selected pointer minus `⟨M⟩` on the
/// initial pointer.
pub fn measured_shift_complex(cfg: &WeakConfig, m: &Operator) -> Result<C64> {
    let fin = post_selected_pointer(cfg)?;
    Ok(fin.normalized.expectation(m)? - cfg.pointer.expectation(m)?)
}

pub fn measured_shift(cfg: &WeakConfig, m: &Operator) -> Result<f64> {
    Ok(measured_shift_complex(cfg, m)?.re)
}

/// `Δa = -iε O_w z` for a coherent pointer `|z⟩` and `R = N`.
pub fn predicted_annihilator_shift(cfg: &WeakConfig, z: C64) -> Result<C64> {
    Ok(-I * weak_value(cfg)?.value * z * cfg.eps)
}

/// Exact shift of `⟨a⟩` with a coherent pointer and number-operator coupling.
pub fn annihilator_shift(fock: &FockSpace, cfg: &WeakConfig) -> Result<C64> {
    check_dims(fock.trunc(), cfg.pointer.dim())?;
    measured_shift_complex(cfg, &fock.a)
}

/// Builds the configuration [`annihilator_shift`] expects: pointer `|z⟩`,
/// generator `N`.
pub fn coherent_pointer_config(
    fock: &FockSpace,
    pre: Ket,
    post: Ket,
    obs: Operator,
    z: C64,
    eps: f64,
) -> Result<WeakConfig> {
    let pointer = fock.coherent(z)?;
    WeakConfig::new(pre, post, obs, fock.nop.clone(), pointer, eps)
}

/// Residuals `|measured - predicted|` at `ε` and `ε/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Halving {
    pub eps: f64,
    pub residual: f64,
    pub residual_half: f64,
    /// `residual_half / residual`; near 1/4 for a correct first-order formula.
    /// NaN when the residual is already at rounding level.
    pub ratio: f64,
}

pub fn halving(cfg: &WeakConfig, m: &Operator) -> Result<Halving> {
    let res =
        |c: &WeakConfig| -> Result<f64> { Ok((measured_shift_complex(c, m)? - predicted_shift_complex(c, m)?).norm()) };
    let residual = res(cfg)?;
    let residual_half = res(&cfg.with_eps(cfg.eps / 2.0))?;
    let ratio = if residual < 1e-14 { f64::NAN } else { residual_half / residual };
    Ok(Halving { eps: cfg.eps, residual, residual_half, ratio })
}

/// Strong (pre-)measurement outcome on the pointer alone.
#[derive(Clone, Debug)]
pub struct PreMeasurement {
    /// `Σ_j |α_j|² e^{-iλo_jP}|φ⟩⟨φ|e^{iλo_jP}`.
    pub rho: Operator,
    /// `tr(ρ Q)`.
    pub mean_q: f64,
    /// `⟨Q⟩_φ + λ⟨O⟩_α`.
    pub predicted_q: f64,
    pub purity: f64,
}

pub fn pre_measurement(
    alpha: &Ket,
    obs: &Operator,
    lambda: f64,
    fock: &FockSpace,
    pointer: &Ket,
) -> Result<PreMeasurement> {
    check_dims(alpha.dim(), obs.dim())?;
    check_dims(fock.trunc(), pointer.dim())?;
    let sys = HermitianEigen::new(obs)?;
    let pe = HermitianEigen::new(&fock.p)?;
    let mut rho = Operator::zeros(fock.trunc());
    for (j, &o) in sys.values.iter().enumerate() {
        let weight = sys.vector(j).inner(alpha)?.norm_sqr();
        if weight == 0.0 {
            continue;
        }
        let moved = pe.map(|p| C64::from_polar(1.0, -lambda * o * p)).apply(pointer)?;
        rho = &rho + &(&moved.projector() * weight);
    }
    let mean_q = crate::hilbert::hs_inner(&rho, &fock.q)?.re;
    let predicted_q = pointer.expectation(&fock.q)?.re + lambda * alpha.expectation(obs)?.re;
    let purity = crate::hilbert::hs_inner(&rho, &rho)?.re;
    Ok(PreMeasurement { rho, mean_q, predicted_q, purity })
}

/// `arg(⟨x|z⟩⟨z|y⟩⟨y|x⟩)` in `(-π, π]`.
pub fn pancharatnam_phase(x: &Ket, y: &Ket, z: &Ket) -> Result<f64> {
    let xz = x.inner(z)?;
    let zy = z.inner(y)?;
    let yx = y.inner(x)?;
    for o in [xz, zy, yx] {
        if o.norm() <= OVERLAP_TOL {
            return Err(Error::VanishingOverlap);
        }
    }
    Ok(wrap_phase((xz * zy * yx).arg()))
}

/// Maps an angle into `(-π, π]`.
pub fn wrap_phase(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Geometric phase of the triangle `A(0)`, `A(dy)`, `β` with
/// `A(y) = e^{-iεyO}|α⟩`, and its first-order prediction
/// `-ε(Re O_w - ⟨O⟩_α) dy`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrianglePhase {
    pub exact: f64,
    pub first_order: f64,
}

pub fn weak_triangle_phase(alpha: &Ket, beta: &Ket, obs: &Operator, eps: f64, dy: f64) -> Result<TrianglePhase> {
    let a_dy = unitary_exp(obs, eps * dy)?.apply(alpha)?;
    let exact = pancharatnam_phase(alpha, &a_dy, beta)?;
    let overlap = beta.inner(alpha)?;
    if overlap.norm() <= OVERLAP_TOL {
        return Err(Error::OrthogonalSelection(overlap.norm()));
    }
    let ow = beta.inner(&obs.apply(alpha)?)? / overlap;
    let first_order = -eps * (ow.re - alpha.expectation(obs)?.re) * dy;
    Ok(TrianglePhase { exact, first_order })
}

/// A single-qubit pointer `cos(θ/2)|v_0⟩ + e^{iφ} sin(θ/2)|v_1⟩` read out
/// against `|π/2, 0⟩`.
#[derive(Clone, Debug)]
pub struct QubitPointer {
    pub alpha: Ket,
    pub obs: Operator,
    pub lambda: f64,
    pub theta: f64,
    /// Eigenvalues of the pointer momentum on `|v_0⟩`, `|v_1⟩`.
    pub momenta: [f64; 2],
}

impl QubitPointer {
    pub fn new(alpha: Ket, obs: Operator, lambda: f64, theta: f64) -> Result<Self> {
        check_dims(alpha.dim(), obs.dim())?;
        Ok(Self { alpha: alpha.normalized()?, obs, lambda, theta, momenta: [0.0, 1.0] })
    }

    /// `|A_σ⟩ = e^{-iλ p_σ O}|α⟩`.
    pub fn branch(&self, sigma: usize) -> Result<Ket> {
        unitary_exp(&self.obs, self.lambda * self.momenta[sigma])?.apply(&self.alpha)
    }

    /// `arg⟨A_1|A_0⟩`, where the unselected profile peaks.
    pub fn eta(&self) -> Result<f64> {
        Ok(self.branch(1)?.inner(&self.branch(0)?)?.arg())
    }

    /// `arg(⟨A_1|β⟩⟨β|A_0⟩)`, where the post-selected profile peaks.
    pub fn eta_post(&self, beta: &Ket) -> Result<f64> {
        let (a0, a1) = (self.branch(0)?, self.branch(1)?);
        Ok((a1.inner(beta)? * beta.inner(&a0)?).arg())
    }

    fn amplitudes(&self, phi: f64) -> [C64; 2] {
        let (c, s) = ((self.theta / 2.0).cos(), (self.theta / 2.0).sin());
        [C64::new(c, 0.0), C64::from_polar(s, phi)]
    }

    /// Probability of finding the pointer in `|π/2, 0⟩`, optionally after
    /// post-selecting the system on `beta`.
    pub fn probability(&self, phi: f64, beta: Option<&Ket>) -> Result<f64> {
        let amps = self.amplitudes(phi);
        let kets = [momentum_ket(2, 0)?, momentum_ket(2, 1)?];
        let reference = (&kets[0] + &kets[1]).scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let branches = [self.branch(0)?, self.branch(1)?];
        match beta {
            None => {
                let mut state = Ket::new(vec![ZERO; 2 * self.alpha.dim()])?;
                for s in 0..2 {
                    state = &state + &tensor(&branches[s], &kets[s]).scale(amps[s]);
                }
                let pointer_side = post_select_pointer_factor(&state, &reference)?;
                Ok(pointer_side.norm_sqr())
            }
            Some(beta) => {
                let mut pointer = Ket::new(vec![ZERO; 2])?;
                for s in 0..2 {
                    pointer = &pointer + &kets[s].scale(beta.inner(&branches[s])? * amps[s]);
                }
                let pointer = pointer.normalized()?;
                Ok(reference.inner(&pointer)?.norm_sqr())
            }
        }
    }

    /// Scans `φ` over a grid and refines the best cell by golden-section
    /// search. Returns the maximizer in `(-π, π]`.
    pub fn maximizer(&self, beta: Option<&Ket>, grid: usize) -> Result<f64> {
        let grid = grid.max(8);
        let step = 2.0 * PI / grid as f64;
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..grid {
            let phi = -PI + step * i as f64;
            let p = self.probability(phi, beta)?;
            if p > best.0 {
                best = (p, phi);
            }
        }
        let (mut lo, mut hi) = (best.1 - step, best.1 + step);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let mut f1 = self.probability(x1, beta)?;
        let mut f2 = self.probability(x2, beta)?;
        while hi - lo > 1e-10 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = self.probability(x2, beta)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = self.probability(x1, beta)?;
            }
        }
        Ok(wrap_phase((lo + hi) / 2.0))
    }
}

// (I ⊗ ⟨r|)|Ψ⟩ for a composite with the pointer factor last.
fn post_select_pointer_factor(state: &Ket, r: &Ket) -> Result<Ket> {
    let m = r.dim();
    let n = state.dim() / m;
    let a = state.amps();
    Ket::new((0..n).map(|j| (0..m).map(|k| r.amps()[k].conj() * a[j * m + k]).sum()).collect())
}

/// Ray speed from one evolution step against the energy uncertainty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpeedCheck {
    /// `ds/dt` with `ds² = ⟨dψ|dψ⟩ - |⟨ψ|dψ⟩|²`.
    pub speed: f64,
    /// `sqrt(⟨H²⟩ - ⟨H⟩²)`.
    pub energy_uncertainty: f64,
}

pub fn fs_speed_check(h: &Operator, psi: &Ket, dt: f64) -> Result<SpeedCheck> {
    check_dims(h.dim(), psi.dim())?;
    let next = unitary_exp(h, dt)?.apply(psi)?;
    let d = &next - psi;
    let ds2 = d.norm_sqr() - psi.inner(&d)?.norm_sqr();
    let mean = psi.expectation(h)?.re;
    let sq = psi.expectation(&(h * h))?.re;
    Ok(SpeedCheck { speed: ds2.max(0.0).sqrt() / dt, energy_uncertainty: (sq - mean * mean).max(0.0).sqrt() })
}
