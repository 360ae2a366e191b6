// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! Representation-theoretic analysis of a set of error operators.
//!
//! Everything here reduces to kernels of linear maps on operator space:
//! the commutant is the joint kernel of `X ↦ [X, F_α]`, decoherence-free
//! states the joint kernel of the `F_α`, and centralizers the kernel of
//! the commutator map restricted to a given span.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lindblad::lform;
use crate::matcore::{
    c, check_same_dim, check_square, comm, hermitian_eigendecomposition, identity, is_hermitian, nullspace,
    unvectorize, vectorize, ComplexMatrix, C64, ONE,
};

/// Relative eigenvalue gap separating isotypic blocks.
pub const CLUSTER_GAP: f64 = 1e-6;
/// Attempts with fresh random central elements before giving up.
pub const MAX_CENTER_ATTEMPTS: u64 = 5;
/// Seed of the first random central element.
pub const CENTER_SEED: u64 = 0x5eed;

fn check_ops(ops: &[ComplexMatrix]) -> Result<usize> {
    let first = ops.first().ok_or(Error::EmptyInput("operator list"))?;
    let d = check_square(first)?;
    for op in ops {
        if check_square(op)? != d {
            return Err(Error::DimensionMismatch { expected: d, found: op.nrows() });
        }
    }
    Ok(d)
}

/// Stacks the matrices of `X ↦ [X, F]` (column-major vec) for every `F`.
fn commutator_map(ops: &[ComplexMatrix], d: usize) -> DMatrix<C64> {
    let eye = DMatrix::<C64>::identity(d, d);
    let dd = d * d;
    let mut stacked = DMatrix::<C64>::zeros(ops.len() * dd, dd);
    for (i, f) in ops.iter().enumerate() {
        // vec(XF − FX) = (Fᵀ ⊗ 1 − 1 ⊗ F) vec(X)
        let block = f.transpose().kronecker(&eye) - eye.kronecker(f);
        stacked.view_mut((i * dd, 0), (dd, dd)).copy_from(&block);
    }
    stacked
}

/// Orthonormal (Frobenius) basis of `{X : [X, F_α] = 0 for all α}`.
pub fn commutant_basis(ops: &[ComplexMatrix], tol: f64) -> Result<Vec<ComplexMatrix>> {
    let d = check_ops(ops)?;
    Ok(nullspace(&commutator_map(ops, d), tol)?
        .iter()
        .map(|v| unvectorize(v, d))
        .collect())
}

/// Schur test: the commutant is one-dimensional.
pub fn is_irreducible(ops: &[ComplexMatrix], tol: f64) -> Result<bool> {
    Ok(commutant_basis(ops, tol)?.len() == 1)
}

/// Orthonormal basis of `∩_α ker F_α`.
pub fn df_subspace(ops: &[ComplexMatrix], tol: f64) -> Result<Vec<DVector<C64>>> {
    let d = check_ops(ops)?;
    let mut stacked = DMatrix::<C64>::zeros(ops.len() * d, d);
    for (i, f) in ops.iter().enumerate() {
        stacked.view_mut((i * d, 0), (d, d)).copy_from(f);
    }
    nullspace(&stacked, tol)
}

/// One isotypic component `1_{n} ⊗ φ_{d}` of the central decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotypicBlock {
    /// Multiplicity `n_i`; a protected `n_i`-level subsystem when ≥ 2.
    pub multiplicity: usize,
    /// Dimension `d_i` of the irreducible block.
    pub block_dim: usize,
    pub projector: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepReport {
    pub dim: usize,
    pub commutant_dim: usize,
    pub irreducible: bool,
    pub df_subspace_basis: Vec<DVector<C64>>,
    pub isotypic: Vec<IsotypicBlock>,
}

impl RepReport {
    /// Blocks with multiplicity at least two.
    pub fn noiseless_subsystems(&self) -> impl Iterator<Item = &IsotypicBlock> {
        self.isotypic.iter().filter(|b| b.multiplicity >= 2)
    }
}

/// Basis of the center of the algebra spanned by `basis`.
fn center_of(basis: &[ComplexMatrix], tol: f64) -> Result<Vec<ComplexMatrix>> {
    let k = basis.len();
    let d = basis[0].nrows();
    let dd = d * d;
    let mut map = DMatrix::<C64>::zeros(k * dd, k);
    for (j, cj) in basis.iter().enumerate() {
        for (i, ci) in basis.iter().enumerate() {
            let v = vectorize(&comm(cj, ci));
            map.view_mut((i * dd, j), (dd, 1)).copy_from(&v);
        }
    }
    let coeffs = nullspace(&map, tol)?;
    Ok(coeffs
        .iter()
        .map(|c| {
            let mut z = ComplexMatrix::zeros(d, d);
            for (w, b) in c.iter().zip(basis) {
                z += b * *w;
            }
            z
        })
        .collect())
}

/// Spectral projectors of a random Hermitian central element, grouped by
/// eigenvalue clusters. Returns `None` if the grouping is inconsistent with
/// the center.
fn isotypic_projectors(
    center: &[ComplexMatrix],
    commutant: &[ComplexMatrix],
    seed: u64,
) -> Result<Option<Vec<ComplexMatrix>>> {
    let d = center[0].nrows();
    let mut hermitian_parts = Vec::with_capacity(2 * center.len());
    for z in center {
        hermitian_parts.push((z + z.adjoint()).scale(0.5));
        hermitian_parts.push((z - z.adjoint()) * C64::new(0.0, -0.5));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut element = ComplexMatrix::zeros(d, d);
    for h in &hermitian_parts {
        element += h.scale(rng.random_range(-1.0..1.0));
    }
    let (lambda, u) = hermitian_eigendecomposition(&element)?;
    let spread = (lambda.max() - lambda.min()).max(lambda.amax()).max(f64::MIN_POSITIVE);
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..d {
        if lambda[i] - lambda[i - 1] > CLUSTER_GAP * spread {
            groups.push(vec![i]);
        } else {
            groups.last_mut().unwrap().push(i);
        }
    }
    if groups.len() != center.len() {
        return Ok(None);
    }
    let mut projectors = Vec::with_capacity(groups.len());
    for g in groups {
        let mut p = ComplexMatrix::zeros(d, d);
        for i in g {
            let col = u.column(i);
            p += col * col.adjoint();
        }
        let central = commutant
            .iter()
            .all(|c| comm(&p, c).norm() <= 1e-8 * c.norm().max(1.0));
        if !central {
            return Ok(None);
        }
        projectors.push(p);
    }
    Ok(Some(projectors))
}

fn numerical_rank(cols: &[DVector<C64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let m = DMatrix::from_columns(cols);
    let sv = m.svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-10 * smax).count()
}

/// Commutant, irreducibility, DF subspace and central decomposition of the
/// algebra generated by Hermitian `ops`.
///
/// Multiplicities come from `dim(P_i C P_i) = n_i²` on each isotypic block;
/// a non-square dimension or a block size not divisible by `n_i` is
/// reported as a decomposition error rather than rounded.
pub fn noiseless_subsystem_report(ops: &[ComplexMatrix], tol: f64) -> Result<RepReport> {
    let d = check_ops(ops)?;
    for f in ops {
        if !is_hermitian(f, 1e-10) {
            return Err(Error::NotHermitian {
                what: "error operator".into(),
                residual: crate::matcore::hermiticity_residual(f),
            });
        }
    }
    let commutant = commutant_basis(ops, tol)?;
    let center = center_of(&commutant, tol)?;
    let mut projectors = None;
    for attempt in 0..MAX_CENTER_ATTEMPTS {
        if let Some(p) = isotypic_projectors(&center, &commutant, CENTER_SEED + attempt)? {
            projectors = Some(p);
            break;
        }
    }
    let projectors = projectors.ok_or_else(|| {
        Error::Decomposition(format!(
            "could not separate {} isotypic blocks after {MAX_CENTER_ATTEMPTS} attempts",
            center.len()
        ))
    })?;

    let mut isotypic = Vec::with_capacity(projectors.len());
    for p in projectors {
        let size_f = p.trace().re;
        let size = size_f.round() as usize;
        let compressed: Vec<DVector<C64>> = commutant.iter().map(|c| vectorize(&(&p * c * &p))).collect();
        let rank = numerical_rank(&compressed);
        let root = (rank as f64).sqrt();
        let n = root.round() as usize;
        if (root - n as f64).abs() > 1e-6 || n == 0 {
            return Err(Error::Decomposition(format!(
                "block commutant dimension {rank} is not a perfect square"
            )));
        }
        if (size_f - size as f64).abs() > 1e-6 || !size.is_multiple_of(n) {
            return Err(Error::Decomposition(format!(
                "block of size {size_f} is not divisible by multiplicity {n}"
            )));
        }
        isotypic.push(IsotypicBlock {
            multiplicity: n,
            block_dim: size / n,
            projector: p,
        });
    }
    let total: usize = isotypic.iter().map(|b| b.multiplicity * b.block_dim).sum();
    if total != d {
        return Err(Error::Decomposition(format!(
            "isotypic blocks cover {total} of {d} dimensions"
        )));
    }
    Ok(RepReport {
        dim: d,
        commutant_dim: commutant.len(),
        irreducible: commutant.len() == 1,
        df_subspace_basis: df_subspace(ops, tol)?,
        isotypic,
    })
}

/// Basis of `{x ∈ span(ambient) : [x, s] = 0 for all s ∈ sub}`.
///
/// Each returned element has unit Frobenius norm and its largest entry
/// rotated to the positive real axis.
pub fn centralizer(sub_ops: &[ComplexMatrix], ambient_ops: &[ComplexMatrix], tol: f64) -> Result<Vec<ComplexMatrix>> {
    let d = check_ops(sub_ops)?;
    if check_ops(ambient_ops)? != d {
        return Err(Error::DimensionMismatch { expected: d, found: ambient_ops[0].nrows() });
    }
    let dd = d * d;
    let k = ambient_ops.len();
    let mut map = DMatrix::<C64>::zeros(sub_ops.len() * dd, k);
    for (j, a) in ambient_ops.iter().enumerate() {
        for (i, s) in sub_ops.iter().enumerate() {
            map.view_mut((i * dd, j), (dd, 1)).copy_from(&vectorize(&comm(a, s)));
        }
    }
    let mut out = Vec::new();
    for coeffs in nullspace(&map, tol)? {
        let mut x = ComplexMatrix::zeros(d, d);
        for (w, a) in coeffs.iter().zip(ambient_ops) {
            x += a * *w;
        }
        let norm = x.norm();
        if norm == 0.0 {
            continue;
        }
        // first entry (column-major) of maximal modulus
        let largest = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = *x.iter().find(|z| z.norm() >= largest * (1.0 - 1e-12)).unwrap();
        let phase = pivot.conj() / C64::from(pivot.norm());
        out.push(x * (phase / C64::from(norm)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingReport {
    /// `max ‖[[ρ, F_α], G_p]‖_F`.
    pub f_into_g_residual: f64,
    /// `max ‖[[ρ, G_p], F_α]‖_F`.
    pub g_into_f_residual: f64,
    pub switches: bool,
}

/// Whether `ad_ρ` maps each F into the centralizer of the G's and vice versa.
pub fn switches_centralizers(
    rho: &ComplexMatrix,
    f_ops: &[ComplexMatrix],
    g_ops: &[ComplexMatrix],
    tol: f64,
) -> Result<SwitchingReport> {
    let d = check_ops(f_ops)?;
    if check_ops(g_ops)? != d {
        return Err(Error::DimensionMismatch { expected: d, found: g_ops[0].nrows() });
    }
    check_same_dim(&f_ops[0], rho)?;
    let mut fg: f64 = 0.0;
    let mut gf: f64 = 0.0;
    for f in f_ops {
        let rf = comm(rho, f);
        for g in g_ops {
            fg = fg.max(comm(&rf, g).norm());
            gf = gf.max(comm(&comm(rho, g), f).norm());
        }
    }
    Ok(SwitchingReport {
        f_into_g_residual: fg,
        g_into_f_residual: gf,
        switches: fg <= tol && gf <= tol,
    })
}

/// Symmetry-breaking perturbation `ε G_p` with cross couplings `ã_{αp}` and
/// second-order couplings `b̃_{pq}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryBreakSpec {
    pub f_ops: Vec<ComplexMatrix>,
    pub g_ops: Vec<ComplexMatrix>,
    pub epsilon: f64,
    /// `len(f_ops) × len(g_ops)`.
    pub a_tilde: DMatrix<C64>,
    /// `len(g_ops) × len(g_ops)`, Hermitian.
    pub b_tilde: DMatrix<C64>,
}

/// `ε` above which the perturbative picture is flagged.
pub const EPSILON_ADVISORY: f64 = 0.1;

impl SymmetryBreakSpec {
    pub fn new(
        f_ops: Vec<ComplexMatrix>,
        g_ops: Vec<ComplexMatrix>,
        epsilon: f64,
        a_tilde: DMatrix<C64>,
        b_tilde: DMatrix<C64>,
    ) -> Result<Self> {
        let d = check_ops(&f_ops)?;
        if check_ops(&g_ops)? != d {
            return Err(Error::DimensionMismatch { expected: d, found: g_ops[0].nrows() });
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidArgument(format!("epsilon must be > 0, got {epsilon}")));
        }
        if a_tilde.shape() != (f_ops.len(), g_ops.len()) {
            return Err(Error::InvalidArgument(format!(
                "a_tilde must be {}x{}, got {}x{}",
                f_ops.len(),
                g_ops.len(),
                a_tilde.nrows(),
                a_tilde.ncols()
            )));
        }
        if b_tilde.shape() != (g_ops.len(), g_ops.len()) {
            return Err(Error::InvalidArgument(format!(
                "b_tilde must be {0}x{0}, got {1}x{2}",
                g_ops.len(),
                b_tilde.nrows(),
                b_tilde.ncols()
            )));
        }
        let residual = (&b_tilde - b_tilde.adjoint()).norm();
        if residual > 1e-12 * b_tilde.norm().max(1.0) {
            return Err(Error::NotHermitian { what: "b_tilde".into(), residual });
        }
        Ok(Self { f_ops, g_ops, epsilon, a_tilde, b_tilde })
    }

    pub fn dim(&self) -> usize {
        self.f_ops[0].nrows()
    }

    /// True when `ε` is large enough that the expansion is questionable.
    pub fn epsilon_is_large(&self) -> bool {
        self.epsilon > EPSILON_ADVISORY
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self { epsilon, ..self.clone() }
    }

    pub fn with_a_tilde(&self, a_tilde: DMatrix<C64>) -> Self {
        Self { a_tilde, ..self.clone() }
    }
}

/// Cross (`O(ε)`) and pure-G (`O(ε²)`) parts of the perturbed dissipator.
///
/// The conjugate of `ã_{αp} L_{F_α, εG_p}` is taken as
/// `ã*_{αp} L_{εG_p, F_α}`, using `(L_{A,B})† = L_{B,A}` for Hermitian
/// arguments.
pub fn symmetry_breaking_dissipator(
    spec: &SymmetryBreakSpec,
    rho: &ComplexMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_same_dim(&spec.f_ops[0], rho)?;
    let d = spec.dim();
    let eps_g: Vec<_> = spec.g_ops.iter().map(|g| g.scale(spec.epsilon)).collect();
    let mut first = ComplexMatrix::zeros(d, d);
    for (al, f) in spec.f_ops.iter().enumerate() {
        for (p, g) in eps_g.iter().enumerate() {
            let a = spec.a_tilde[(al, p)];
            first += lform(f, g, rho) * a + lform(g, f, rho) * a.conj();
        }
    }
    let mut second = ComplexMatrix::zeros(d, d);
    for (p, gp) in eps_g.iter().enumerate() {
        for (q, gq) in eps_g.iter().enumerate() {
            second += lform(gp, gq, rho) * spec.b_tilde[(p, q)];
        }
    }
    Ok((first, second))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremGfReport {
    pub switching: SwitchingReport,
    pub real_coupling: bool,
    /// `‖first order‖_F` with the couplings as given.
    pub first_order_norm: f64,
    /// `‖first order‖_F` with `ã` replaced by `Re ã`.
    pub first_order_norm_real_part: f64,
    pub second_order_norm: f64,
    /// `N(2)/N(1)` with `N(δ) = ‖first order at Re ã + iδD‖`, where `D` is
    /// `Im ã` or, for real couplings, the all-ones matrix. `None` when
    /// `N(1)` vanishes.
    pub imaginary_ratio: Option<f64>,
    /// `‖L′(2ε)‖ / ‖L′(ε)‖` at `Re ã`; 4 for a purely second-order effect.
    pub epsilon_doubling_ratio: Option<f64>,
    /// Switching and real couplings imply a vanishing first-order term.
    pub theorem_holds: bool,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 1e-300).then(|| num / den)
}

/// Checks the first-order cancellation for centralizer-switching states.
pub fn verify_theorem_gf(spec: &SymmetryBreakSpec, rho: &ComplexMatrix, tol: f64) -> Result<TheoremGfReport> {
    let switching = switches_centralizers(rho, &spec.f_ops, &spec.g_ops, tol)?;
    let max_imag = spec.a_tilde.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let real_coupling = max_imag <= crate::lindblad::REAL_COEFF_TOL;

    let (first, second) = symmetry_breaking_dissipator(spec, rho)?;
    let real_a = spec.a_tilde.map(|z| C64::new(z.re, 0.0));
    let real_spec = spec.with_a_tilde(real_a.clone());
    let (first_real, _) = symmetry_breaking_dissipator(&real_spec, rho)?;

    let direction = if real_coupling {
        DMatrix::from_element(spec.a_tilde.nrows(), spec.a_tilde.ncols(), 1.0)
    } else {
        spec.a_tilde.map(|z| z.im)
    };
    let shifted = |delta: f64| -> Result<f64> {
        let a = &real_a + direction.map(|v| C64::new(0.0, delta * v));
        Ok(symmetry_breaking_dissipator(&spec.with_a_tilde(a), rho)?.0.norm())
    };
    let imaginary_ratio = ratio(shifted(2.0)?, shifted(1.0)?);

    let full = |s: &SymmetryBreakSpec| -> Result<f64> {
        let (a, b) = symmetry_breaking_dissipator(s, rho)?;
        Ok((a + b).norm())
    };
    let epsilon_doubling_ratio = ratio(
        full(&real_spec.with_epsilon(2.0 * spec.epsilon))?,
        full(&real_spec)?,
    );

    let scale = spec.epsilon
        * spec.f_ops.iter().map(|f| f.norm()).fold(0.0, f64::max)
        * spec.g_ops.iter().map(|g| g.norm()).fold(0.0, f64::max)
        * rho.norm();
    let theorem_holds = !(switching.switches && real_coupling) || first.norm() <= tol * scale.max(1.0);
    Ok(TheoremGfReport {
        switching,
        real_coupling,
        first_order_norm: first.norm(),
        first_order_norm_real_part: first_real.norm(),
        second_order_norm: second.norm(),
        imaginary_ratio,
        epsilon_doubling_ratio,
        theorem_holds,
    })
}

/// `‖X − P_span(X)‖_F` for the orthogonal projection onto `span(basis)`.
pub fn distance_to_span(x: &ComplexMatrix, basis: &[ComplexMatrix]) -> f64 {
    if basis.is_empty() {
        return x.norm();
    }
    let cols: Vec<DVector<C64>> = basis.iter().map(vectorize).collect();
    let m = DMatrix::from_columns(&cols);
    let q = m.qr().q();
    let v = vectorize(x);
    let proj = &q * (q.adjoint() * &v);
    (v - proj).norm()
}

/// Spin-1 operators `J_x, J_y, J_z` in the `m = 1, 0, −1` basis.
pub fn spin_one() -> [ComplexMatrix; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let r = c(s, 0.0);
    let z = c(0.0, 0.0);
    let jx = ComplexMatrix::from_row_slice(3, 3, &[z, r, z, r, z, r, z, r, z]);
    let a = c(0.0, -s);
    let b = c(0.0, s);
    let jy = ComplexMatrix::from_row_slice(3, 3, &[z, a, z, b, z, a, z, b, z]);
    let jz = ComplexMatrix::from_row_slice(3, 3, &[ONE, z, z, z, z, z, z, z, -ONE]);
    [jx, jy, jz]
}

/// Direct sum of `ops` with itself `copies` times (`1_copies ⊗ F`).
pub fn repeated(ops: &[ComplexMatrix], copies: usize) -> Vec<ComplexMatrix> {
    let eye = identity(copies);
    ops.iter().map(|f| eye.kronecker(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::su_basis;
    use crate::matcore::{direct_sum, pauli, random_density, random_unitary, zeros};
    use approx::assert_relative_eq;

    #[test]
    fn commutant_dimensions() {
        let p = pauli().to_vec();
        assert_eq!(commutant_basis(&p, 1e-10).unwrap().len(), 1);
        assert_eq!(commutant_basis(&repeated(&p, 2), 1e-10).unwrap().len(), 4);
        assert_eq!(commutant_basis(&[zeros(3)], 1e-10).unwrap().len(), 9);
        assert!(commutant_basis(&[], 1e-10).is_err());
    }

    #[test]
    fn commutant_contains_identity() {
        let ops = repeated(&pauli(), 2);
        let basis = commutant_basis(&ops, 1e-10).unwrap();
        assert!(distance_to_span(&identity(4), &basis) <= 1e-10);
        for x in &basis {
            for f in &ops {
                assert!(comm(x, f).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn commutant_dim_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for ops in [pauli().to_vec(), repeated(&pauli(), 2), vec![pauli()[2].clone()]] {
            let d = ops[0].nrows();
            let u = random_unitary(d, &mut rng);
            let rotated: Vec<_> = ops.iter().map(|f| &u * f * u.adjoint()).collect();
            assert_eq!(
                commutant_basis(&ops, 1e-10).unwrap().len(),
                commutant_basis(&rotated, 1e-10).unwrap().len()
            );
        }
    }

    #[test]
    fn irreducibility_examples() {
        for n in 2..=4 {
            assert!(is_irreducible(su_basis(n).unwrap().generators(), 1e-10).unwrap());
        }
        assert!(!is_irreducible(&repeated(&pauli(), 2), 1e-10).unwrap());
        assert!(!is_irreducible(&[pauli()[2].clone()], 1e-10).unwrap());
    }

    #[test]
    fn df_subspace_examples() {
        assert!(df_subspace(su_basis(3).unwrap().generators(), 1e-10).unwrap().is_empty());

        let ops: Vec<_> = spin_one().iter().map(|j| direct_sum(j, &zeros(1))).collect();
        let dfs = df_subspace(&ops, 1e-10).unwrap();
        assert_eq!(dfs.len(), 1);
        assert_relative_eq!(dfs[0][3].norm(), 1.0, epsilon = 1e-12);

        assert_eq!(df_subspace(&[zeros(3), zeros(3)], 1e-10).unwrap().len(), 3);
    }

    #[test]
    fn report_for_doubled_qubit() {
        let rep = noiseless_subsystem_report(&repeated(&pauli(), 2), 1e-10).unwrap();
        assert_eq!(rep.commutant_dim, 4);
        assert!(!rep.irreducible);
        assert_eq!(rep.isotypic.len(), 1);
        assert_eq!((rep.isotypic[0].multiplicity, rep.isotypic[0].block_dim), (2, 2));
        assert_eq!(rep.noiseless_subsystems().count(), 1);
        assert!(rep.df_subspace_basis.is_empty());
    }

    #[test]
    fn report_for_irreducible_rep() {
        let rep = noiseless_subsystem_report(&pauli(), 1e-10).unwrap();
        assert!(rep.irreducible);
        assert_eq!(rep.isotypic.len(), 1);
        assert_eq!((rep.isotypic[0].multiplicity, rep.isotypic[0].block_dim), (1, 2));
        assert_eq!(rep.noiseless_subsystems().count(), 0);
    }

    #[test]
    fn report_for_qubit_plus_trivial() {
        let ops: Vec<_> = pauli().iter().map(|p| direct_sum(p, &zeros(1))).collect();
        let rep = noiseless_subsystem_report(&ops, 1e-10).unwrap();
        let mut blocks: Vec<_> = rep.isotypic.iter().map(|b| (b.multiplicity, b.block_dim)).collect();
        blocks.sort();
        assert_eq!(blocks, vec![(1, 1), (1, 2)]);
        assert_eq!(rep.df_subspace_basis.len(), 1);

        let mut total = zeros(3);
        for (i, b) in rep.isotypic.iter().enumerate() {
            let p = &b.projector;
            assert!((p * p - p).norm() <= 1e-10);
            assert!((p - p.adjoint()).norm() <= 1e-10);
            for other in &rep.isotypic[i + 1..] {
                assert!((p * &other.projector).norm() <= 1e-10);
            }
            total += p;
        }
        assert!((total - identity(3)).norm() <= 1e-10);
    }

    #[test]
    fn report_rejects_non_hermitian() {
        let ops = vec![crate::matcore::ket_bra(2, 0, 1)];
        assert!(matches!(noiseless_subsystem_report(&ops, 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn centralizer_examples() {
        let [x, y, z] = pauli();
        let cz = centralizer(std::slice::from_ref(&z), std::slice::from_ref(&z), 1e-10).unwrap();
        assert_eq!(cz.len(), 1);
        assert!((&cz[0] - z.scale(1.0 / 2f64.sqrt())).norm() <= 1e-12);

        let herm = vec![identity(2), x.clone(), y.clone(), z.clone()];
        let cp = centralizer(&pauli(), &herm, 1e-10).unwrap();
        assert_eq!(cp.len(), 1);
        assert!(distance_to_span(&identity(2), &cp) <= 1e-12);

        let f_block: Vec<_> = pauli().iter().map(|p| direct_sum(p, &zeros(2))).collect();
        let g_block: Vec<_> = pauli().iter().map(|p| direct_sum(&zeros(2), p)).collect();
        let ambient: Vec<_> = f_block.iter().chain(&g_block).cloned().collect();
        let zf = centralizer(&f_block, &ambient, 1e-10).unwrap();
        let zg = centralizer(&g_block, &ambient, 1e-10).unwrap();
        for g in &g_block {
            assert!(distance_to_span(g, &zf) <= 1e-10);
        }
        for f in &f_block {
            assert!(distance_to_span(f, &zg) <= 1e-10);
        }
        assert!(centralizer(&[], &ambient, 1e-10).is_err());
    }

    fn block_spec(a: C64, epsilon: f64) -> SymmetryBreakSpec {
        let f_ops: Vec<_> = pauli().iter().map(|p| direct_sum(p, &zeros(2))).collect();
        let g_ops: Vec<_> = pauli().iter().map(|p| direct_sum(&zeros(2), p)).collect();
        SymmetryBreakSpec::new(
            f_ops,
            g_ops,
            epsilon,
            DMatrix::from_element(3, 3, a),
            DMatrix::identity(3, 3),
        )
        .unwrap()
    }

    #[test]
    fn switching_examples() {
        let spec = block_spec(ONE, 0.01);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = direct_sum(
            &random_density(2, &mut rng).into_inner().scale(0.3),
            &random_density(2, &mut rng).into_inner().scale(0.7),
        );
        assert!(switches_centralizers(&rho, &spec.f_ops, &spec.g_ops, 1e-12).unwrap().switches);

        let mixed = identity(2).scale(0.5);
        assert!(switches_centralizers(&mixed, &pauli(), &pauli(), 1e-12).unwrap().switches);

        let rho = random_density(2, &mut rng).into_inner();
        let rep = switches_centralizers(&rho, &pauli(), &pauli(), 1e-12).unwrap();
        assert!(!rep.switches);
        assert!(rep.f_into_g_residual > 1e-3);
    }

    #[test]
    fn symmetry_breaking_homogeneity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = random_density(4, &mut rng).into_inner();
        let spec = block_spec(c(0.3, 0.7), 0.01);
        let zero = spec.with_a_tilde(DMatrix::zeros(3, 3));
        assert_eq!(symmetry_breaking_dissipator(&zero, &rho).unwrap().0.norm(), 0.0);

        let (f1, s1) = symmetry_breaking_dissipator(&spec, &rho).unwrap();
        let (f2, s2) = symmetry_breaking_dissipator(&spec.with_epsilon(0.02), &rho).unwrap();
        assert_relative_eq!(f2.norm() / f1.norm(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(s2.norm() / s1.norm(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn block_model_first_order_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rho = direct_sum(
            &random_density(2, &mut rng).into_inner().scale(0.4),
            &random_density(2, &mut rng).into_inner().scale(0.6),
        );
        let spec = block_spec(c(0.8, 0.0), 0.05);
        let (first, second) = symmetry_breaking_dissipator(&spec, &rho).unwrap();
        assert!(first.norm() <= 1e-14);
        assert!(second.norm() > 1e-4);
        let rep = verify_theorem_gf(&spec, &rho, 1e-12).unwrap();
        assert!(rep.switching.switches && rep.real_coupling && rep.theorem_holds);
        assert_relative_eq!(rep.epsilon_doubling_ratio.unwrap(), 4.0, max_relative = 1e-10);
    }

    #[test]
    fn hermitian_conjugate_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 2..5 {
            let a = crate::matcore::random_hermitian(d, &mut rng);
            let b = crate::matcore::random_hermitian(d, &mut rng);
            let rho = random_density(d, &mut rng).into_inner();
            let lhs = lform(&a, &b, &rho).adjoint();
            assert!((lhs - lform(&b, &a, &rho)).norm() <= 1e-12 * a.norm() * b.norm());
        }
    }

    #[test]
    fn non_switching_negative_control() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_density(2, &mut rng).into_inner();
        let spec = SymmetryBreakSpec::new(
            vec![pauli()[0].clone()],
            vec![pauli()[1].clone()],
            0.01,
            DMatrix::from_element(1, 1, ONE),
            DMatrix::identity(1, 1),
        )
        .unwrap();
        let rep = verify_theorem_gf(&spec, &rho, 1e-12).unwrap();
        assert!(!rep.switching.switches);
        assert!(rep.first_order_norm > 1e-6);
    }

    #[test]
    fn spec_validation() {
        let p = pauli().to_vec();
        assert!(SymmetryBreakSpec::new(p.clone(), p.clone(), 0.0, DMatrix::zeros(3, 3), DMatrix::zeros(3, 3)).is_err());
        assert!(SymmetryBreakSpec::new(p.clone(), p.clone(), 0.1, DMatrix::zeros(2, 3), DMatrix::zeros(3, 3)).is_err());
        let mut b = DMatrix::<C64>::zeros(3, 3);
        b[(0, 1)] = ONE;
        assert!(matches!(
            SymmetryBreakSpec::new(p.clone(), p.clone(), 0.1, DMatrix::zeros(3, 3), b),
            Err(Error::NotHermitian { .. })
        ));
        let big = SymmetryBreakSpec::new(p.clone(), p, 0.5, DMatrix::zeros(3, 3), DMatrix::zeros(3, 3)).unwrap();
        assert!(big.epsilon_is_large());
    }
}
