// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! su(n) generator bases and the data derived from them: structure
//! constants, Killing form, Casimir normalization and Bloch coordinates.
//!
//! Built-in bases are the generalized Gell-Mann matrices normalized to
//! `Tr(X_i X_j) = 2δ_ij`. They are ordered as all symmetric off-diagonal
//! generators, then all antisymmetric ones (each over index pairs `j < k`
//! in lexicographic order), then the `n − 1` diagonal generators. For
//! `n = 2` this yields `σ_x, σ_y, σ_z`.
//!
//! User-supplied generator lists are accepted anywhere a [`LieBasis`] is.
//! Orthonormality is not enforced for them; operations that need it check
//! and report.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matcore::{c, check_square, identity, ComplexMatrix, DensityMatrix, C64, I, ONE};

/// Tolerance for the orthonormality check `|½Tr(X_iX_j) − δ_ij|`.
pub const ORTHONORMAL_TOL: f64 = 1e-12;
/// Relative tolerance for `K = 𝔫·1`.
pub const KILLING_TOL: f64 = 1e-8;
/// Relative tolerance for `Σ X_i² = Z·1`.
pub const CASIMIR_TOL: f64 = 1e-10;

/// Ordered list of generators acting on an `n`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBasis {
    n: usize,
    generators: Vec<ComplexMatrix>,
    metric: DMatrix<f64>,
    builtin: bool,
}

impl LieBasis {
    /// Wraps an arbitrary list of linearly independent generators.
    pub fn from_generators(generators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or(Error::EmptyInput("generator list"))?;
        let n = check_square(first)?;
        for g in &generators {
            if check_square(g)? != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.nrows(),
                });
            }
        }
        let k = generators.len();
        let gram = DMatrix::from_fn(k, k, |i, j| crate::matcore::inner(&generators[i], &generators[j]));
        let scale = gram.diagonal().iter().map(|z| z.re).fold(0.0, f64::max);
        let smallest = gram.symmetric_eigen().eigenvalues.min();
        if scale == 0.0 || smallest <= 1e-12 * scale {
            return Err(Error::InvalidArgument(
                "generators are not linearly independent".into(),
            ));
        }
        let metric = DMatrix::from_fn(k, k, |i, j| 0.5 * (&generators[i] * &generators[j]).trace().re);
        Ok(Self {
            n,
            generators,
            metric,
            builtin: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of generators `k`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// `½ Tr(X_i X_j)`.
    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// True for bases produced by [`su_basis`].
    pub fn is_builtin(&self) -> bool {
        self.builtin
    }

    /// `max_ij |½Tr(X_i X_j) − δ_ij|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let k = self.len();
        (&self.metric - DMatrix::<f64>::identity(k, k)).amax()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormality_residual() <= ORTHONORMAL_TOL
    }

    /// `Σ_a v_a X_a`.
    pub fn combine(&self, coeffs: &[C64]) -> Result<ComplexMatrix> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: coeffs.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n, self.n);
        for (x, &w) in self.generators.iter().zip(coeffs) {
            out += x * w;
        }
        Ok(out)
    }
}

/// The `n² − 1` generalized Gell-Mann matrices.
pub fn su_basis(n: usize) -> Result<LieBasis> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("su(n) needs n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| ((j + 1)..n).map(move |k| (j, k)))
        .collect();
    let mut generators = Vec::with_capacity(n * n - 1);
    for &(j, k) in &pairs {
        let mut x = ComplexMatrix::zeros(n, n);
        x[(j, k)] = ONE;
        x[(k, j)] = ONE;
        generators.push(x);
    }
    for &(j, k) in &pairs {
        let mut x = ComplexMatrix::zeros(n, n);
        x[(j, k)] = -I;
        x[(k, j)] = I;
        generators.push(x);
    }
    for l in 1..n {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut x = ComplexMatrix::zeros(n, n);
        for j in 0..l {
            x[(j, j)] = c(norm, 0.0);
        }
        x[(l, l)] = c(-(l as f64) * norm, 0.0);
        generators.push(x);
    }
    let k = generators.len();
    Ok(LieBasis {
        n,
        generators,
        metric: DMatrix::identity(k, k),
        builtin: true,
    })
}

/// Structure constants of an orthonormal basis.
///
/// `[X_a, X_b] = 2i Σ_c f_abc X_c` and
/// `X_a X_b = (2/n) δ_ab 1 + Σ_c (d_abc + i f_abc) X_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    k: usize,
    f: Vec<f64>,
    d: Vec<f64>,
}

impl StructureConstants {
    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.k + b) * self.k + c
    }

    /// Antisymmetric constant `f_abc`.
    pub fn f(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[self.idx(a, b, c)]
    }

    /// Symmetric constant `d_abc`.
    pub fn d(&self, a: usize, b: usize, c: usize) -> f64 {
        self.d[self.idx(a, b, c)]
    }

    /// Product-identity coefficient `Q_abc = d_abc + i f_abc`.
    pub fn q(&self, a: usize, b: usize, c: usize) -> C64 {
        C64::new(self.d(a, b, c), self.f(a, b, c))
    }

    /// The matrix `(f_a)_bc = f_abc`.
    pub fn f_matrix(&self, a: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.k, self.k, |b, c| self.f(a, b, c))
    }
}

/// `f_abc = Tr([X_a, X_b] X_c)/(4i)` and `d_abc = Tr({X_a, X_b} X_c)/4`.
pub fn structure_constants(basis: &LieBasis) -> Result<StructureConstants> {
    let residual = basis.orthonormality_residual();
    if residual > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { residual });
    }
    let k = basis.len();
    let x = basis.generators();
    let mut f = vec![0.0; k * k * k];
    let mut d = vec![0.0; k * k * k];
    for a in 0..k {
        for b in 0..k {
            let prod = &x[a] * &x[b];
            for cc in 0..k {
                // Tr(X_a X_b X_c) = 2 (d_abc + i f_abc)
                let t = (&prod * &x[cc]).trace() * 0.5;
                let i = (a * k + b) * k + cc;
                d[i] = t.re;
                f[i] = t.im;
            }
        }
    }
    Ok(StructureConstants { k, f, d })
}

/// Killing form of the span of a basis together with its normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingForm {
    /// `K_ij = Tr(ad_{X_i} ad_{X_j})`.
    pub matrix: DMatrix<f64>,
    /// `𝔫` when `K = 𝔫·1` and the basis closes under commutation.
    pub norm: Option<f64>,
    /// Relative residual of projecting `[X_a, X_b]` back onto the span.
    pub closure_residual: f64,
}

/// Adjoint coefficients `C[a][b][c]` with `[X_a, X_b] = Σ_c C_abc X_c`.
///
/// Orthonormal bases use `C = 2i f`; other bases are projected through the
/// Gram matrix.
fn adjoint_coefficients(basis: &LieBasis) -> (Vec<C64>, f64) {
    let k = basis.len();
    let x = basis.generators();
    if let Ok(sc) = structure_constants(basis) {
        let coeffs = sc.f.iter().map(|&v| c(0.0, 2.0 * v)).collect();
        let mut worst: f64 = 0.0;
        for a in 0..k {
            for b in 0..k {
                let br = &x[a] * &x[b] - &x[b] * &x[a];
                let mut approx = ComplexMatrix::zeros(basis.n, basis.n);
                for cc in 0..k {
                    approx += &x[cc] * c(0.0, 2.0 * sc.f(a, b, cc));
                }
                worst = worst.max(relative(&(br.clone() - approx), &br));
            }
        }
        return (coeffs, worst);
    }
    let gram = DMatrix::from_fn(k, k, |i, j| crate::matcore::inner(&x[i], &x[j]));
    let gram_inv = gram
        .try_inverse()
        .expect("gram matrix of independent generators is invertible");
    let mut coeffs = vec![C64::new(0.0, 0.0); k * k * k];
    let mut worst: f64 = 0.0;
    for a in 0..k {
        for b in 0..k {
            let br = &x[a] * &x[b] - &x[b] * &x[a];
            let rhs = DVector::from_fn(k, |i, _| crate::matcore::inner(&x[i], &br));
            let sol = &gram_inv * rhs;
            let mut approx = ComplexMatrix::zeros(basis.n, basis.n);
            for cc in 0..k {
                coeffs[(a * k + b) * k + cc] = sol[cc];
                approx += &x[cc] * sol[cc];
            }
            worst = worst.max(relative(&(br.clone() - approx), &br));
        }
    }
    (coeffs, worst)
}

fn relative(diff: &ComplexMatrix, reference: &ComplexMatrix) -> f64 {
    let r = reference.norm();
    if r == 0.0 {
        diff.norm()
    } else {
        diff.norm() / r
    }
}

/// Killing form computed from the adjoint representation.
pub fn killing_form(basis: &LieBasis) -> KillingForm {
    let k = basis.len();
    let (coef, closure_residual) = adjoint_coefficients(basis);
    // (ad_a)_{cb} = C_abc
    let ad: Vec<DMatrix<C64>> = (0..k)
        .map(|a| DMatrix::from_fn(k, k, |cc, b| coef[(a * k + b) * k + cc]))
        .collect();
    let matrix = DMatrix::from_fn(k, k, |i, j| (&ad[i] * &ad[j]).trace().re);
    let candidate = matrix.trace() / k as f64;
    let off = (&matrix - DMatrix::<f64>::identity(k, k) * candidate).norm();
    let norm = (closure_residual <= KILLING_TOL
        && candidate.abs() > 0.0
        && off <= KILLING_TOL * matrix.norm())
    .then_some(candidate);
    KillingForm {
        matrix,
        norm,
        closure_residual,
    }
}

/// `Z` with `Σ_i X_i² = Z·1`.
///
/// When the sum of squares is not scalar the error lists its distinct
/// eigenvalues, one per block of constant Casimir value.
pub fn casimir_normalization(basis: &LieBasis) -> Result<f64> {
    let n = basis.dim();
    let mut sum = ComplexMatrix::zeros(n, n);
    for x in basis.generators() {
        sum += x * x;
    }
    let z = sum.trace() / C64::from(n as f64);
    let dev = (&sum - identity(n) * z).norm();
    if dev <= CASIMIR_TOL * sum.norm().max(f64::MIN_POSITIVE) && z.im.abs() <= CASIMIR_TOL * z.norm() {
        return Ok(z.re);
    }
    let herm = (&sum + sum.adjoint()).scale(0.5);
    let mut values: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let spread = values.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
    values.dedup_by(|b, a| (*b - *a).abs() <= 1e-8 * spread);
    Err(Error::NotProportionalToIdentity { values })
}

/// Real coordinates `v` of `ρ = (1/n)(1 + v·X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    pub n: usize,
    pub v: DVector<f64>,
}

impl BlochVector {
    pub fn new(n: usize, v: DVector<f64>) -> Self {
        Self { n, v }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.v.norm()
    }
}

fn check_bloch_basis(basis: &LieBasis, n: usize) -> Result<()> {
    if basis.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: n,
        });
    }
    let residual = basis.orthonormality_residual();
    if residual > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { residual });
    }
    Ok(())
}

/// `v_a = (n/2) Tr(ρ X_a)`.
pub fn bloch_decompose(rho: &DensityMatrix, basis: &LieBasis) -> Result<BlochVector> {
    bloch_coordinates(rho.as_matrix(), basis)
}

/// Bloch coordinates of any operator; the identity component is ignored.
pub fn bloch_coordinates(m: &ComplexMatrix, basis: &LieBasis) -> Result<BlochVector> {
    let n = m.nrows();
    check_bloch_basis(basis, n)?;
    let half_n = 0.5 * n as f64;
    let v = DVector::from_iterator(
        basis.len(),
        basis.generators().iter().map(|x| half_n * (m * x).trace().re),
    );
    Ok(BlochVector { n, v })
}

/// `(1/n)(1 + v·X)`.
pub fn bloch_compose(v: &BlochVector, basis: &LieBasis) -> Result<ComplexMatrix> {
    if v.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: v.len(),
        });
    }
    if v.n != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: v.n,
        });
    }
    let coeffs: Vec<C64> = v.v.iter().map(|&x| c(x, 0.0)).collect();
    let vx = basis.combine(&coeffs)?;
    Ok((identity(v.n) + vx) / C64::from(v.n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{is_hermitian, pauli, random_density};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn levi_civita(a: usize, b: usize, cc: usize) -> f64 {
        match (a, b, cc) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn su2_is_pauli() {
        let b = su_basis(2).unwrap();
        for (x, p) in b.generators().iter().zip(pauli().iter()) {
            assert_eq!(x, p);
        }
    }

    #[test]
    fn rejects_small_n() {
        assert!(su_basis(1).is_err());
        assert!(su_basis(0).is_err());
    }

    #[test]
    fn builtin_invariants_n2_to_6() {
        for n in 2..=6 {
            let b = su_basis(n).unwrap();
            assert_eq!(b.len(), n * n - 1);
            for (i, xi) in b.generators().iter().enumerate() {
                assert!(xi.trace().norm() <= 1e-12);
                assert!((xi - xi.adjoint()).norm() <= 1e-12);
                for (j, xj) in b.generators().iter().enumerate() {
                    let t = (xi * xj).trace();
                    let expected = if i == j { 2.0 } else { 0.0 };
                    assert!((t - c(expected, 0.0)).norm() <= 1e-12, "n={n} ({i},{j}) {t}");
                }
            }
        }
    }

    #[test]
    fn su3_has_36_orthonormal_pairs() {
        let b = su_basis(3).unwrap();
        let mut pairs = 0;
        for i in 0..8 {
            for j in i..8 {
                let t = (&b.generators()[i] * &b.generators()[j]).trace();
                assert!((t - c(if i == j { 2.0 } else { 0.0 }, 0.0)).norm() <= 1e-12);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 36);
    }

    #[test]
    fn su2_structure_constants_are_levi_civita() {
        let sc = structure_constants(&su_basis(2).unwrap()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for cc in 0..3 {
                    assert_relative_eq!(sc.f(a, b, cc), levi_civita(a, b, cc), epsilon = 1e-15);
                    assert_relative_eq!(sc.d(a, b, cc), 0.0, epsilon = 1e-15);
                }
                assert_eq!(sc.f(a, a, b), 0.0);
            }
        }
    }

    #[test]
    fn su3_gell_mann_values() {
        // Built-in order: λ1 λ4 λ6 | λ2 λ5 λ7 | λ3 λ8.
        let (l1, l4, l6, l2, l5, l7, l3, l8) = (0, 1, 2, 3, 4, 5, 6, 7);
        let sc = structure_constants(&su_basis(3).unwrap()).unwrap();
        let h = 0.5;
        let r = 3f64.sqrt() / 2.0;
        assert_relative_eq!(sc.f(l1, l2, l3), 1.0, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l4, l5, l8), r, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l6, l7, l8), r, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l1, l4, l7), h, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l1, l5, l6), -h, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l2, l4, l6), h, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l2, l5, l7), h, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l3, l4, l5), h, epsilon = 1e-14);
        assert_relative_eq!(sc.f(l3, l6, l7), -h, epsilon = 1e-14);
        assert_relative_eq!(sc.d(l1, l1, l8), 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(sc.d(l8, l8, l8), -1.0 / 3f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn structure_constant_identities() {
        for n in 2..=5 {
            let b = su_basis(n).unwrap();
            let sc = structure_constants(&b).unwrap();
            let k = b.len();
            let x = b.generators();
            let two_over_n = 2.0 / n as f64;
            for a in 0..k {
                for bb in 0..k {
                    for cc in 0..k {
                        // total antisymmetry of f, symmetry of d in (a, b)
                        assert!((sc.f(a, bb, cc) + sc.f(bb, a, cc)).abs() <= 1e-10);
                        assert!((sc.f(a, bb, cc) + sc.f(a, cc, bb)).abs() <= 1e-10);
                        assert!((sc.d(a, bb, cc) - sc.d(bb, a, cc)).abs() <= 1e-10);
                    }
                    let mut fx = ComplexMatrix::zeros(n, n);
                    let mut qx = ComplexMatrix::zeros(n, n);
                    for cc in 0..k {
                        fx += &x[cc] * c(0.0, 2.0 * sc.f(a, bb, cc));
                        qx += &x[cc] * sc.q(a, bb, cc);
                    }
                    let br = &x[a] * &x[bb] - &x[bb] * &x[a];
                    assert!((br - fx).norm() <= 1e-10);
                    let delta = if a == bb { two_over_n } else { 0.0 };
                    let prod = &x[a] * &x[bb] - identity(n).scale(delta) - qx;
                    assert!(prod.norm() <= 1e-10);
                }
            }
            // Σ_i (f_i f_i)_bc = −n δ_bc
            let mut acc = DMatrix::<f64>::zeros(k, k);
            for i in 0..k {
                let fi = sc.f_matrix(i);
                acc += &fi * &fi;
            }
            assert!((acc + DMatrix::<f64>::identity(k, k) * n as f64).amax() <= 1e-10);
        }
    }

    #[test]
    fn structure_constants_reject_non_orthonormal() {
        let s: Vec<_> = pauli().iter().map(|p| p.scale(0.5)).collect();
        let b = LieBasis::from_generators(s).unwrap();
        assert!(matches!(structure_constants(&b), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn killing_norm_is_4n() {
        for n in 2..=5 {
            let b = su_basis(n).unwrap();
            let kf = killing_form(&b);
            // 2n·Tr(X_i X_j) shortcut as an independent oracle
            let k = b.len();
            for i in 0..k {
                for j in 0..k {
                    let shortcut = 2.0 * n as f64 * (&b.generators()[i] * &b.generators()[j]).trace().re;
                    assert!((kf.matrix[(i, j)] - shortcut).abs() <= 1e-9);
                }
            }
            assert_relative_eq!(kf.norm.unwrap(), 4.0 * n as f64, max_relative = 1e-12);
        }
        assert_relative_eq!(killing_form(&su_basis(2).unwrap()).norm.unwrap(), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn killing_norm_absent_for_rescaled_generator() {
        let [x, y, z] = pauli();
        let b = LieBasis::from_generators(vec![x.scale(2.0), y, z]).unwrap();
        let kf = killing_form(&b);
        assert!(kf.closure_residual <= 1e-12);
        assert!(kf.norm.is_none());
    }

    #[test]
    fn killing_for_spin_half() {
        let s: Vec<_> = pauli().iter().map(|p| p.scale(0.5)).collect();
        let kf = killing_form(&LieBasis::from_generators(s).unwrap());
        assert_relative_eq!(kf.norm.unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn casimir_values() {
        assert_relative_eq!(casimir_normalization(&su_basis(2).unwrap()).unwrap(), 3.0, epsilon = 1e-14);
        for n in 2..=6 {
            let b = su_basis(n).unwrap();
            // brute force: average diagonal of the explicit sum of squares
            let mut diag = 0.0;
            for x in b.generators() {
                for r in 0..n {
                    for col in 0..n {
                        diag += (x[(r, col)] * x[(col, r)]).re;
                    }
                }
            }
            let brute = diag / n as f64;
            let z = casimir_normalization(&b).unwrap();
            assert_relative_eq!(z, brute, max_relative = 1e-12);
            assert_relative_eq!(z, 2.0 * (n * n - 1) as f64 / n as f64, max_relative = 1e-12);
        }
        let s: Vec<_> = pauli().iter().map(|p| p.scale(0.5)).collect();
        let z = casimir_normalization(&LieBasis::from_generators(s).unwrap()).unwrap();
        assert_relative_eq!(z, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn casimir_reports_block_constants() {
        // σ_i ⊕ (σ_i/2): blocks with constants 3 and 3/4
        let gens: Vec<_> = pauli()
            .iter()
            .map(|p| crate::matcore::direct_sum(p, &p.scale(0.5)))
            .collect();
        match casimir_normalization(&LieBasis::from_generators(gens).unwrap()) {
            Err(Error::NotProportionalToIdentity { values }) => {
                assert_eq!(values.len(), 2);
                assert_relative_eq!(values[0], 0.75, epsilon = 1e-12);
                assert_relative_eq!(values[1], 3.0, epsilon = 1e-12);
            }
            other => panic!("expected block diagnostic, got {other:?}"),
        }
    }

    #[test]
    fn bloch_examples() {
        let b = su_basis(2).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!(bloch_decompose(&mixed, &b).unwrap().v.iter().all(|&x| x == 0.0));
        let up = DensityMatrix::basis_state(2, 0);
        assert_eq!(bloch_decompose(&up, &b).unwrap().v.as_slice(), &[0.0, 0.0, 1.0]);

        let zero = BlochVector::new(3, DVector::zeros(8));
        let b3 = su_basis(3).unwrap();
        assert!((bloch_compose(&zero, &b3).unwrap() - identity(3).scale(1.0 / 3.0)).norm() <= 1e-15);

        let vx = BlochVector::new(2, DVector::from_vec(vec![1.0, 0.0, 0.0]));
        let expected = (identity(2) + &pauli()[0]).scale(0.5);
        assert!((bloch_compose(&vx, &b).unwrap() - expected).norm() <= 1e-15);

        assert!(bloch_compose(&BlochVector::new(2, DVector::zeros(2)), &b).is_err());
        assert!(bloch_decompose(&mixed, &b3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn bloch_roundtrip(seed in any::<u64>(), n in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = su_basis(n).unwrap();
            let rho = random_density(n, &mut rng);
            let v = bloch_decompose(&rho, &b).unwrap();
            let back = bloch_compose(&v, &b).unwrap();
            prop_assert!((back.clone() - rho.as_matrix()).norm() <= 1e-12);
            prop_assert!(is_hermitian(&back, 1e-14));
            prop_assert!((back.trace() - ONE).norm() <= 1e-12);
        }
    }
}
