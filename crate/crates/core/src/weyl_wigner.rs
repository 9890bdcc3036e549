//! The finite Weyl-Wigner operator basis and discrete Wigner functions.
//!
//! The phase-point operators are
//!
//! ```text
//! Δ_mn = (1/N) Σ_{j,k} v^{jk/2} v^{-jn} v^{-km} U^j V^k
//! ```
//!
//! so that `m` labels momentum and `n` labels position: summing `Δ_mn` over
//! `m` gives `N |u_n><u_n|`, over `n` gives `N |v_m><v_m|`. For odd `N` the
//! half phase is `v^{2⁻¹jk}` with `2⁻¹` the inverse of 2 in `Z_N`, which makes
//! `Δ_mn = V^{-n} U^{2m} V^{-n} F²` and `Δ_mn² = I`. For even `N` there is
//! no such inverse; the half phase is `e^{iπjk/N}` on representatives
//! `0 ≤ j,k < N`, except that of each pair `(j,k)`, `(-j,-k)` only the
//! lexicographically smaller one uses its own representatives and the other
//! uses those of its partner. That pairing keeps every `Δ_mn` hermitian.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{check_dims, hs_inner, Operator, ZERO};
use crate::schwinger::Kinematics;
use crate::zn::{half_root, inv2, reduce, root};

/// A point `(m, n)` of `Z_N × Z_N`, stored as canonical representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhasePoint {
    pub m: usize,
    pub n: usize,
}

impl PhasePoint {
    /// Reduces both coordinates mod `dim`.
    pub fn new(m: i64, n: i64, dim: usize) -> Self {
        Self { m: reduce(m, dim), n: reduce(n, dim) }
    }

    /// All `N²` points in row-major order (`m` slow).
    pub fn all(dim: usize) -> impl Iterator<Item = PhasePoint> {
        (0..dim).flat_map(move |m| (0..dim).map(move |n| PhasePoint { m, n }))
    }

    pub fn index(&self, dim: usize) -> usize {
        self.m * dim + self.n
    }

    pub fn sub(&self, other: &PhasePoint, dim: usize) -> PhasePoint {
        PhasePoint::new(self.m as i64 - other.m as i64, self.n as i64 - other.n as i64, dim)
    }
}

/// Finite symplectic area `Ω(a, b) = pn - mq` for `a = (m, n)`, `b = (p, q)`.
pub fn symplectic_area(a: PhasePoint, b: PhasePoint) -> i64 {
    (b.m * a.n) as i64 - (a.m * b.n) as i64
}

/// `{a, b, c} = 2[Ω(a,b) + Ω(b,c) + Ω(c,a)]`, reduced mod `N`.
pub fn symbol(a: PhasePoint, b: PhasePoint, c: PhasePoint, dim: usize) -> usize {
    let s = symplectic_area(a, b) + symplectic_area(b, c) + symplectic_area(c, a);
    reduce(2 * s, dim)
}

/// The half phase `v^{jk/2}` used in the double-sum definition of `Δ`.
pub fn half_phase(dim: usize, j: i64, k: i64) -> C64 {
    let (j, k) = (reduce(j, dim), reduce(k, dim));
    if dim % 2 == 1 {
        return root(dim, (inv2(dim) * j % dim * k) as i64);
    }
    let (pj, pk) = ((dim - j) % dim, (dim - k) % dim);
    if (j, k) <= (pj, pk) {
        half_root(dim, (j * k) as i64)
    } else {
        half_root(dim, (pj * pk) as i64)
    }
}

/// The `N²` phase-point operators of `Z_N`.
#[derive(Clone, Debug)]
pub struct WwBasis {
    dim: usize,
    deltas: Vec<Operator>,
}

impl WwBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self, p: PhasePoint) -> &Operator {
        &self.deltas[p.index(self.dim)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, &Operator)> {
        PhasePoint::all(self.dim).zip(self.deltas.iter())
    }
}

/// Builds `Δ_mn` for every phase point.
///
/// Uses `(U^j V^k)_{ab} = v^{ja} δ_{k, b-a}`, which collapses the double sum
/// to a single sum per matrix entry.
pub fn ww_basis(dim: usize) -> Result<WwBasis> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = dim as i64;
    let scale = 1.0 / dim as f64;
    let halves: Vec<C64> = (0..n * n).map(|x| half_phase(dim, x / n, x % n)).collect();
    let deltas = PhasePoint::all(dim)
        .map(|p| {
            let (pm, pn) = (p.m as i64, p.n as i64);
            Operator::from_fn(dim, |a, b| {
                let k = reduce(b as i64 - a as i64, dim) as i64;
                let shift = root(dim, -k * pm);
                let mut acc = ZERO;
                for j in 0..n {
                    acc += halves[(j * n + k) as usize] * root(dim, j * (a as i64 - pn));
                }
                acc * shift * scale
            })
        })
        .collect();
    Ok(WwBasis { dim, deltas })
}

/// `V^{-n} U^{2m} V^{-n} F²`, the product form of `Δ_mn` for odd `N`.
pub fn delta_operator_form(dim: usize, p: PhasePoint) -> Result<Operator> {
    if dim.is_multiple_of(2) {
        return Err(Error::EvenDimension(dim));
    }
    let kin = Kinematics::new(dim)?;
    let vn = kin.v_pow(-(p.n as i64));
    let parity = &kin.f * &kin.f;
    Ok(&(&(&vn * &kin.u_pow(2 * p.m as i64)) * &vn) * &parity)
}

/// A complex value per phase point, row `m`, column `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGrid {
    pub dim: usize,
    pub values: Vec<C64>,
}

impl PhaseGrid {
    pub fn get(&self, p: PhasePoint) -> C64 {
        self.values[p.index(self.dim)]
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// `O^{mn} = tr(Δ_mn O)` for every phase point.
pub fn ww_transform(op: &Operator, basis: &WwBasis) -> Result<PhaseGrid> {
    check_dims(basis.dim, op.dim())?;
    // Δ is hermitian, so tr(Δ O) = tr(Δ† O).
    let values = basis.deltas.iter().map(|d| hs_inner(d, op)).collect::<Result<_>>()?;
    Ok(PhaseGrid { dim: basis.dim, values })
}

/// `O = (1/N) Σ Δ_mn O^{mn}`; `coeffs` in row-major phase-point order.
pub fn ww_reconstruct(coeffs: &[C64], basis: &WwBasis) -> Result<Operator> {
    let expected = basis.dim * basis.dim;
    if coeffs.len() != expected {
        return Err(Error::CoefficientCount { expected, found: coeffs.len() });
    }
    let mut acc = Operator::zeros(basis.dim);
    for (d, &c) in basis.deltas.iter().zip(coeffs) {
        acc = &acc + &d.scale(c);
    }
    Ok(acc.scale(C64::new(1.0 / basis.dim as f64, 0.0)))
}

/// `(A|B)` from the transforms: `(1/N) Σ conj(a_mn) b_mn`.
pub fn transform_inner(a: &PhaseGrid, b: &PhaseGrid) -> C64 {
    let s: C64 = a.values.iter().zip(&b.values).map(|(x, y)| x.conj() * y).sum();
    s / a.dim as f64
}

/// Discrete Wigner function `W(m,n) = tr(Δ_mn ρ)/N` of a density operator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WignerMap {
    pub dim: usize,
    /// Row-major, `m` slow.
    pub values: Vec<f64>,
    /// `Σ|W| - 1`.
    pub negativity: f64,
    pub min: f64,
}

impl WignerMap {
    pub fn get(&self, p: PhasePoint) -> f64 {
        self.values[p.index(self.dim)]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `Σ_m W(m, n)` as a function of `n`; equals `<u_n|ρ|u_n>`.
    pub fn position_marginal(&self) -> Vec<f64> {
        (0..self.dim).map(|n| (0..self.dim).map(|m| self.values[m * self.dim + n]).sum()).collect()
    }

    /// `Σ_n W(m, n)` as a function of `m`; equals `<v_m|ρ|v_m>`.
    pub fn momentum_marginal(&self) -> Vec<f64> {
        self.values.chunks(self.dim).map(|row| row.iter().sum()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.dim)
    }
}

/// Trace tolerance for density operators passed to [`wigner_function`].
pub const UNIT_TRACE_TOL: f64 = 1e-10;

pub fn wigner_function(rho: &Operator, basis: &WwBasis) -> Result<WignerMap> {
    check_dims(basis.dim, rho.dim())?;
    let defect = rho.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let tr = rho.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > UNIT_TRACE_TOL {
        return Err(Error::NotUnitTrace(tr.re));
    }
    let grid = ww_transform(rho, basis)?;
    let scale = 1.0 / basis.dim as f64;
    let values: Vec<f64> = grid.values.iter().map(|z| z.re * scale).collect();
    let negativity = values.iter().map(|w| w.abs()).sum::<f64>() - 1.0;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(WignerMap { dim: basis.dim, values, negativity, min })
}

/// `Δ_a Δ_b = v^{2Ω(a,b)} Δ_{a-b} F²` (odd `N`).
pub fn delta_product(a: PhasePoint, b: PhasePoint, basis: &WwBasis) -> Result<Operator> {
    let dim = basis.dim;
    if dim.is_multiple_of(2) {
        return Err(Error::EvenDimension(dim));
    }
    let f = crate::schwinger::dft(dim)?;
    let phase = root(dim, 2 * symplectic_area(a, b));
    Ok((basis.delta(a.sub(&b, dim)) * &(&f * &f)).scale(phase))
}

/// Expansion coefficients of `Δ_b F²` in the `Δ` basis: `v^{2Ω(c,b)}/N` for
/// each `c`, row-major.
pub fn parity_expansion(b: PhasePoint, dim: usize) -> Result<Vec<C64>> {
    if dim.is_multiple_of(2) {
        return Err(Error::EvenDimension(dim));
    }
    Ok(PhasePoint::all(dim).map(|c| root(dim, 2 * symplectic_area(c, b)) / dim as f64).collect())
}

/// Prefactor `c₀` in `[Δ_a, Δ_b] = c₀ Σ_c Λ_ab^c Δ_c`.
pub fn commutator_prefactor(dim: usize) -> C64 {
    C64::new(0.0, 2.0 / dim as f64)
}

/// Structure constants `Λ_ab^c = sin(2π{a,b,c}/N)` of `u(N)` in the `Δ`
/// basis (odd `N`).
#[derive(Clone, Debug)]
pub struct StructureTensor {
    dim: usize,
    values: Vec<f64>,
}

impl StructureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: PhasePoint, b: PhasePoint, c: PhasePoint) -> f64 {
        let n2 = self.dim * self.dim;
        self.values[(a.index(self.dim) * n2 + b.index(self.dim)) * n2 + c.index(self.dim)]
    }

    /// `c₀ Σ_c Λ_ab^c Δ_c`.
    pub fn commutator(&self, a: PhasePoint, b: PhasePoint, basis: &WwBasis) -> Operator {
        let mut acc = Operator::zeros(self.dim);
        for (c, d) in basis.iter() {
            let lam = self.get(a, b, c);
            if lam != 0.0 {
                acc = &acc + &(d * lam);
            }
        }
        acc.scale(commutator_prefactor(self.dim))
    }
}

pub fn structure_constants(dim: usize) -> Result<StructureTensor> {
    if dim.is_multiple_of(2) {
        return Err(Error::EvenDimension(dim));
    }
    let sines: Vec<f64> = (0..dim).map(|s| root(dim, s as i64).im).collect();
    let points: Vec<PhasePoint> = PhasePoint::all(dim).collect();
    let mut values = Vec::with_capacity(points.len().pow(3));
    for &a in &points {
        for &b in &points {
            for &c in &points {
                values.push(sines[symbol(a, b, c, dim)]);
            }
        }
    }
    Ok(StructureTensor { dim, values })
}
