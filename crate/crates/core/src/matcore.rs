// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra shared by every other module.
//!
//! Operators are plain `nalgebra` matrices of `Complex64`. Tolerances are
//! relative to the Frobenius norm of the inputs unless an exact zero is
//! being asserted.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense square complex matrix; the carrier for every operator.
pub type ComplexMatrix = DMatrix<C64>;

/// Smallest relative rank cut used by [`nullspace`].
pub const MIN_RANK_TOL: f64 = 1e-10;

pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(n, n)
}

/// The matrix unit `|i><j|` on an `n`-dimensional space.
pub fn ket_bra(n: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = zeros(n);
    m[(i, j)] = ONE;
    m
}

/// Pauli matrices in the order x, y, z.
pub fn pauli() -> [ComplexMatrix; 3] {
    let z = C64::new(0.0, 0.0);
    [
        ComplexMatrix::from_row_slice(2, 2, &[z, ONE, ONE, z]),
        ComplexMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        ComplexMatrix::from_row_slice(2, 2, &[ONE, z, z, -ONE]),
    ]
}

/// Block-diagonal direct sum `a ⊕ b`.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = zeros(n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

pub fn check_square(a: &ComplexMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.nrows() == 0 {
        return Err(Error::EmptyInput("matrix of dimension 0"));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(a.nrows())
}

pub fn check_same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(())
}

/// `AB − BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(a, b)?;
    Ok(a * b - b * a)
}

/// `AB + BA`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(a, b)?;
    Ok(a * b + b * a)
}

/// Commutator for operands already known to share a dimension.
#[inline]
pub(crate) fn comm(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.norm()
}

/// `‖A − A†‖_F`.
pub fn hermiticity_residual(a: &ComplexMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

/// True when `‖A − A†‖_F ≤ tol·max(‖A‖_F, 1)`.
pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_square() && hermiticity_residual(a) <= tol * a.norm().max(1.0)
}

/// Eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors, so that `A = U diag(λ) U†`.
pub fn hermitian_eigendecomposition(a: &ComplexMatrix) -> Result<(DVector<f64>, ComplexMatrix)> {
    let n = check_square(a)?;
    if !is_hermitian(a, 1e-10) {
        return Err(Error::NotHermitian {
            what: "eigendecomposition input".into(),
            residual: hermiticity_residual(a),
        });
    }
    let herm = (a + a.adjoint()).scale(0.5);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Smallest eigenvalue of the Hermitian part of `a`.
pub fn min_eigenvalue(a: &ComplexMatrix) -> f64 {
    let herm = (a + a.adjoint()).scale(0.5);
    herm.symmetric_eigen().eigenvalues.min()
}

/// Orthonormal basis of the kernel of `m`.
///
/// Singular values below `max(tol, 1e-10)·σ_max` count as zero. A zero
/// matrix has the whole space as its kernel.
pub fn nullspace(m: &DMatrix<C64>, tol: f64) -> Result<Vec<DVector<C64>>> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyInput("nullspace of an empty matrix"));
    }
    // nalgebra only returns min(rows, cols) right singular vectors.
    let padded = if rows < cols {
        let mut p = DMatrix::<C64>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let sigma = &svd.singular_values;
    let sigma_max = sigma.max();
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Decomposition("SVD did not return V".into()))?;
    if sigma_max == 0.0 {
        return Ok((0..cols)
            .map(|j| {
                let mut e = DVector::zeros(cols);
                e[j] = ONE;
                e
            })
            .collect());
    }
    let cut = tol.max(MIN_RANK_TOL) * sigma_max;
    Ok(sigma
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < cut)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect())
}

/// Column-major vectorization, so `vec(AXB) = (Bᵀ ⊗ A) vec(X)`.
pub fn vectorize(a: &ComplexMatrix) -> DVector<C64> {
    DVector::from_column_slice(a.as_slice())
}

pub fn unvectorize(v: &DVector<C64>, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(n, n, v.as_slice())
}

/// Frobenius inner product `Tr(A† B)`.
pub fn inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_ginibre(n, rng);
    (&g + g.adjoint()).scale(0.5)
}

pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    random_ginibre(n, rng).qr().q()
}

/// Full-rank random state `GG†/Tr(GG†)` from a Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let g = random_ginibre(n, rng);
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix(m / tr)
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const PSD_TOL: f64 = 1e-10;

    /// Validates the state invariants at the default tolerances.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(m, Self::HERMITIAN_TOL, Self::TRACE_TOL, Self::PSD_TOL)
    }

    pub fn with_tolerances(m: ComplexMatrix, herm_tol: f64, trace_tol: f64, psd_tol: f64) -> Result<Self> {
        check_square(&m)?;
        let residual = hermiticity_residual(&m);
        if residual > herm_tol * m.norm() {
            return Err(Error::NotDensityMatrix(format!(
                "not Hermitian (residual {residual:e})"
            )));
        }
        let tr = m.trace();
        if (tr - ONE).norm() > trace_tol {
            return Err(Error::NotDensityMatrix(format!("trace {tr} != 1")));
        }
        let lmin = min_eigenvalue(&m);
        if lmin < -psd_tol {
            return Err(Error::NotDensityMatrix(format!(
                "smallest eigenvalue {lmin:e} is negative"
            )));
        }
        Ok(Self(m))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self(identity(n).scale(1.0 / n as f64))
    }

    /// `|ψ><ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &DVector<C64>) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("state vector has zero norm".into()));
        }
        let v = psi / C64::from(norm);
        Ok(Self(&v * v.adjoint()))
    }

    /// `|k><k|`.
    pub fn basis_state(n: usize, k: usize) -> Self {
        Self(ket_bra(n, k, k))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.0)
    }

    /// Wraps a matrix whose invariants the caller has already established.
    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}
