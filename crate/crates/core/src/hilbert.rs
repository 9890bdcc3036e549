//! Dense complex linear algebra for finite quantum spaces.
//!
//! Kets and operators are thin wrappers over `nalgebra` storage. Composite
//! spaces use the row-major index convention `i = i_a * N_b + i_b`: the first
//! tensor factor is the slow index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Hermiticity tolerance accepted by [`unitary_exp`], relative to the
/// largest entry of the generator.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// A state vector, not necessarily normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amp: DVector<C64>,
}

impl Ket {
    /// Builds a ket from its amplitudes. Rejects empty or non-finite input.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        Self::from_vector(DVector::from_vec(amps))
    }

    pub fn from_vector(amp: DVector<C64>) -> Result<Self> {
        if amp.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if amp.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { amp })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The basis ket `e_k` of dimension `dim`; `k` is reduced mod `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut amp = DVector::from_element(dim, ZERO);
        amp[k % dim] = ONE;
        Ok(Self { amp })
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amps(&self) -> &[C64] {
        self.amp.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<C64> {
        &self.amp
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { amp: &self.amp / C64::new(n, 0.0) })
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amp.dotc(&other.amp))
    }

    pub fn scale(&self, c: C64) -> Ket {
        Ket { amp: &self.amp * c }
    }

    /// `|self><other|`.
    pub fn outer(&self, other: &Ket) -> Operator {
        Operator { m: &self.amp * other.amp.adjoint() }
    }

    pub fn projector(&self) -> Operator {
        self.outer(self)
    }

    /// `<self|A|self>` without normalization.
    pub fn expectation(&self, a: &Operator) -> Result<C64> {
        check_dims(self.dim(), a.dim())?;
        Ok(self.amp.dotc(&(&a.m * &self.amp)))
    }

    pub fn max_abs_diff(&self, other: &Ket) -> f64 {
        self.amp.iter().zip(other.amp.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, z) in self.amp.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, "]")
    }
}

/// A square complex matrix acting on an `N`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    m: DMatrix<C64>,
}

impl Operator {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        Ok(Self { m })
    }

    /// Row-major entries; `entries.len()` must equal `dim²`.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self { m: DMatrix::from_fn(dim, dim, f) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { m: DMatrix::identity(dim, dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { m: DMatrix::from_element(dim, dim, ZERO) }
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        Self { m: DMatrix::from_diagonal(&DVector::from_column_slice(diag)) }
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diagonal(&d)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    pub fn adjoint(&self) -> Operator {
        Operator { m: self.m.adjoint() }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn scale(&self, c: C64) -> Operator {
        Operator { m: &self.m * c }
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        check_dims(self.dim(), ket.dim())?;
        Ok(Ket { amp: &self.m * &ket.amp })
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut k: usize) -> Operator {
        let mut base = self.m.clone();
        let mut acc = DMatrix::identity(self.dim(), self.dim());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Operator { m: acc }
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        Operator { m: &self.m * &other.m - &other.m * &self.m }
    }

    pub fn anticommutator(&self, other: &Operator) -> Operator {
        Operator { m: &self.m * &other.m + &other.m * &self.m }
    }

    /// Largest entrywise modulus of `A - A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.m - self.m.adjoint()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest entrywise modulus of `A†A - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        max_abs(&(self.m.adjoint() * &self.m - DMatrix::<C64>::identity(n, n)))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn max_abs_entry(&self) -> f64 {
        max_abs(&self.m)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.m - &other.m))
    }

    /// Top-left `k x k` block, used for truncation-interior comparisons.
    pub fn leading_block(&self, k: usize) -> Operator {
        Operator { m: self.m.view((0, 0), (k, k)).into_owned() }
    }
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &'a Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator { m: &self.m * &rhs.m }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Ket> for &'a Operator {
    type Output = Ket;
    fn mul(self, rhs: &'a Ket) -> Ket {
        assert_eq!(self.dim(), rhs.dim(), "operator/ket dimension mismatch");
        Ket { amp: &self.m * &rhs.amp }
    }
}

impl Mul<C64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: C64) -> Operator {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &'a Operator) -> Operator {
        Operator { m: &self.m + &rhs.m }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        Operator { m: self.m + rhs.m }
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &'a Operator) -> Operator {
        Operator { m: &self.m - &rhs.m }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        Operator { m: self.m - rhs.m }
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { m: -&self.m }
    }
}

impl<'a> Add<&'a Ket> for &'a Ket {
    type Output = Ket;
    fn add(self, rhs: &'a Ket) -> Ket {
        Ket { amp: &self.amp + &rhs.amp }
    }
}

impl<'a> Sub<&'a Ket> for &'a Ket {
    type Output = Ket;
    fn sub(self, rhs: &'a Ket) -> Ket {
        Ket { amp: &self.amp - &rhs.amp }
    }
}

/// Hilbert-Schmidt inner product `tr(A† B)`.
pub fn hs_inner(a: &Operator, b: &Operator) -> Result<C64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.m.iter().zip(b.m.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// Kronecker product of kets or operators.
pub trait Tensor<Rhs = Self> {
    type Output;
    fn tensor(&self, rhs: &Rhs) -> Self::Output;
}

impl Tensor for Operator {
    type Output = Operator;
    fn tensor(&self, rhs: &Operator) -> Operator {
        Operator { m: self.m.kronecker(&rhs.m) }
    }
}

impl Tensor for Ket {
    type Output = Ket;
    fn tensor(&self, rhs: &Ket) -> Ket {
        Ket { amp: self.amp.kronecker(&rhs.amp) }
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T::Output {
    a.tensor(b)
}

/// Factor dimensions of a composite space, slowest index first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLabel {
    dims: Vec<usize>,
}

impl ProductLabel {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Splits a composite index into per-factor indices.
    pub fn split(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn join(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

/// Reduced operator on factor `keep`, tracing out every other factor.
pub fn partial_trace(m: &Operator, label: &ProductLabel, keep: usize) -> Result<Operator> {
    check_dims(label.total_dim(), m.dim())?;
    let factors = label.dims().len();
    if keep >= factors {
        return Err(Error::InvalidFactor { index: keep, factors });
    }
    let kept = label.dims()[keep];
    let rest = label.total_dim() / kept;
    // Enumerate the traced-out configurations once; reinsert the kept digit.
    let other: Vec<usize> = label.dims().iter().enumerate().filter(|&(i, _)| i != keep).map(|(_, &d)| d).collect();
    let mut digits = vec![0usize; factors];
    let mut out = DMatrix::from_element(kept, kept, ZERO);
    for r in 0..rest {
        let mut rem = r;
        let mut o = other.len();
        for pos in (0..factors).rev() {
            if pos == keep {
                continue;
            }
            o -= 1;
            digits[pos] = rem % other[o];
            rem /= other[o];
        }
        for i in 0..kept {
            digits[keep] = i;
            let row = label.join(&digits);
            for j in 0..kept {
                digits[keep] = j;
                let col = label.join(&digits);
                out[(i, j)] += m.m[(row, col)];
            }
        }
    }
    Ok(Operator { m: out })
}

/// Spectral decomposition `H = W diag(values) W†` of a hermitian operator.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<C64>,
}

impl HermitianEigen {
    pub fn new(h: &Operator) -> Result<Self> {
        let defect = h.hermiticity_defect();
        if defect > HERMITIAN_TOL * h.max_abs_entry().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        let sym = (&h.m + h.m.adjoint()) * C64::new(0.5, 0.0);
        let eig = nalgebra::SymmetricEigen::new(sym);
        Ok(Self { values: eig.eigenvalues.iter().copied().collect(), vectors: eig.eigenvectors })
    }

    /// `f(H) = W diag(f(values)) W†`.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> Operator {
        let mut scaled = self.vectors.clone();
        for (j, &lam) in self.values.iter().enumerate() {
            let c = f(lam);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= c;
            }
        }
        Operator { m: scaled * self.vectors.adjoint() }
    }

    /// Eigenvector `j` as a ket.
    pub fn vector(&self, j: usize) -> Ket {
        Ket { amp: self.vectors.column(j).into_owned() }
    }

    /// `exp(-i t H)`.
    pub fn evolution(&self, t: f64) -> Operator {
        self.map(|lam| C64::from_polar(1.0, -t * lam))
    }
}

/// `exp(-i t H)` for hermitian `H`, by full eigendecomposition.
pub fn unitary_exp(h: &Operator, t: f64) -> Result<Operator> {
    Ok(HermitianEigen::new(h)?.evolution(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn hs_inner_of_identity_is_dimension() {
        let i4 = Operator::identity(4);
        assert_eq!(hs_inner(&i4, &i4).unwrap(), c(4.0, 0.0));
    }

    #[test]
    fn hs_inner_rejects_mismatched_dims() {
        let err = hs_inner(&Operator::identity(2), &Operator::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn tensor_of_identities_and_basis_kets() {
        let id = Operator::identity(2).tensor(&Operator::identity(3));
        assert_eq!(id, Operator::identity(6));
        let k = Ket::basis(2, 1).unwrap().tensor(&Ket::basis(3, 2).unwrap());
        assert_eq!(k, Ket::basis(6, 5).unwrap());
    }

    #[test]
    fn tensor_preserves_hermiticity() {
        let sx = Operator::from_rows(2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let sy = Operator::from_rows(2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        assert!(sx.tensor(&sy).is_hermitian(0.0));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let ra = Operator::from_rows(2, &[c(0.7, 0.), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.)]).unwrap();
        let rb = Operator::real_diagonal(&[0.5, 1.0, 1.5]);
        let label = ProductLabel::new(vec![2, 3]).unwrap();
        let red = partial_trace(&ra.tensor(&rb), &label, 0).unwrap();
        assert!(red.max_abs_diff(&ra.scale(rb.trace())) < 1e-14);
        let red_b = partial_trace(&ra.tensor(&rb), &label, 1).unwrap();
        assert!(red_b.max_abs_diff(&rb.scale(ra.trace())) < 1e-14);
    }

    #[test]
    fn partial_trace_middle_factor() {
        let a = Operator::real_diagonal(&[1.0, 2.0]);
        let b = Operator::real_diagonal(&[3.0, 5.0, 7.0]);
        let cc = Operator::real_diagonal(&[0.25, 0.75]);
        let label = ProductLabel::new(vec![2, 3, 2]).unwrap();
        let m = a.tensor(&b).tensor(&cc);
        let red = partial_trace(&m, &label, 1).unwrap();
        assert!(red.max_abs_diff(&b.scale(c(3.0, 0.0))) < 1e-14);
    }

    #[test]
    fn partial_trace_invalid_factor() {
        let label = ProductLabel::new(vec![2, 2]).unwrap();
        let err = partial_trace(&Operator::identity(4), &label, 2).unwrap_err();
        assert_eq!(err, Error::InvalidFactor { index: 2, factors: 2 });
    }

    #[test]
    fn unitary_exp_zero_time_and_diagonal() {
        let h = Operator::real_diagonal(&[1.0, 2.0]);
        assert!(unitary_exp(&h, 0.0).unwrap().max_abs_diff(&Operator::identity(2)) < 1e-14);
        let t = 0.7;
        let expected = Operator::diagonal(&[C64::from_polar(1.0, -t), C64::from_polar(1.0, -2.0 * t)]);
        assert!(unitary_exp(&h, t).unwrap().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn unitary_exp_rejects_non_hermitian() {
        let a = Operator::from_rows(2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(unitary_exp(&a, 1.0), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn ket_rejects_nan_and_empty() {
        assert_eq!(Ket::new(vec![]).unwrap_err(), Error::ZeroDimension);
        assert_eq!(Ket::new(vec![c(f64::NAN, 0.0)]).unwrap_err(), Error::NonFinite);
        assert_eq!(Ket::from_real(&[0.0, 0.0]).unwrap().normalized().unwrap_err(), Error::ZeroNorm);
    }

    #[test]
    fn product_label_split_join() {
        let label = ProductLabel::new(vec![2, 3, 4]).unwrap();
        for i in 0..24 {
            assert_eq!(label.join(&label.split(i)), i);
        }
        assert_eq!(label.split(5), vec![0, 1, 1]);
    }
}
