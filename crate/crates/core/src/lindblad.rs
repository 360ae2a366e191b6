// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad bilinear forms, the dissipator and the master equation.
//!
//! The dissipator is `L(ρ) = ½ Σ_{αβ} a_{αβ} L_{F_α,F_β}(ρ)` with the
//! bilinear form `L_{A,B}(ρ) = 2AρB† − {ρ, B†A}`. Operators need not be
//! Hermitian. Time is dimensionless (`ħ = 1`).

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::liealg::{bloch_decompose, casimir_normalization, su_basis, BlochVector};
use crate::matcore::{
    check_same_dim, check_square, comm, hermitian_eigendecomposition, identity, is_hermitian, ket_bra,
    random_density, random_hermitian, ComplexMatrix, DensityMatrix, C64, I,
};

/// `max |Im a_{αβ}|` at or below which the coefficients count as real.
pub const REAL_COEFF_TOL: f64 = 1e-12;

/// Error operators `F_α` together with the Hermitian coefficient matrix `a_{αβ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    operators: Vec<ComplexMatrix>,
    coeffs: DMatrix<C64>,
}

impl NoiseModel {
    pub fn new(operators: Vec<ComplexMatrix>, coeffs: DMatrix<C64>) -> Result<Self> {
        let first = operators.first().ok_or(Error::EmptyInput("noise operators"))?;
        let d = check_square(first)?;
        for f in &operators {
            if check_square(f)? != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: f.nrows(),
                });
            }
        }
        if coeffs.nrows() != operators.len() || coeffs.ncols() != operators.len() {
            return Err(Error::DimensionMismatch {
                expected: operators.len(),
                found: coeffs.nrows().max(coeffs.ncols()),
            });
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let residual = (&coeffs - coeffs.adjoint()).norm();
        if residual > 1e-12 * coeffs.norm().max(1.0) {
            return Err(Error::NotHermitian {
                what: "coeffs".into(),
                residual,
            });
        }
        Ok(Self { operators, coeffs })
    }

    /// Model with `a = 1`.
    pub fn unit(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let m = operators.len();
        Self::new(operators, DMatrix::identity(m, m))
    }

    /// The `n² − 1` su(n) generators with `a = 1`, optionally rescaled to
    /// `Z^{-1/2} X_i` so that `Σ F_i² = 1`.
    pub fn su(n: usize, normalized: bool) -> Result<Self> {
        let basis = su_basis(n)?;
        let scale = if normalized {
            1.0 / casimir_normalization(&basis)?.sqrt()
        } else {
            1.0
        };
        Self::unit(basis.generators().iter().map(|x| x.scale(scale)).collect())
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn coeffs(&self) -> &DMatrix<C64> {
        &self.coeffs
    }

    pub fn max_imag_coeff(&self) -> f64 {
        self.coeffs.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.max_imag_coeff() <= REAL_COEFF_TOL
    }

    /// True when every operator is Hermitian within `1e-12`.
    pub fn is_hermitian(&self) -> bool {
        self.operators.iter().all(|f| is_hermitian(f, 1e-12))
    }
}

/// `L_{A,B}(ρ) = 2AρB† − {ρ, B†A}`.
pub fn lindblad_form(a: &ComplexMatrix, b: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(a, b)?;
    check_same_dim(a, rho)?;
    Ok(lform(a, b, rho))
}

pub(crate) fn lform(a: &ComplexMatrix, b: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    let bd = b.adjoint();
    let bda = &bd * a;
    (a * rho * &bd).scale(2.0) - rho * &bda - bda * rho
}

/// Precomputed right-hand side of the master equation.
///
/// `−i[H, ρ] + Σ a_{αβ} F_α ρ F_β† − ½{K, ρ}` with `K = Σ a_{αβ} F_β† F_α`.
struct Generator {
    ops: Vec<ComplexMatrix>,
    ops_dag: Vec<ComplexMatrix>,
    coeffs: DMatrix<C64>,
    anti: ComplexMatrix,
    hamiltonian: Option<ComplexMatrix>,
}

impl Generator {
    fn new(model: &NoiseModel, hamiltonian: Option<&ComplexMatrix>) -> Self {
        let d = model.dim();
        let ops = model.operators.clone();
        let ops_dag: Vec<_> = ops.iter().map(|f| f.adjoint()).collect();
        let mut anti = ComplexMatrix::zeros(d, d);
        for (al, f) in ops.iter().enumerate() {
            for (be, fd) in ops_dag.iter().enumerate() {
                let w = model.coeffs[(al, be)];
                if w != C64::new(0.0, 0.0) {
                    anti += fd * f * w;
                }
            }
        }
        Self {
            ops,
            ops_dag,
            coeffs: model.coeffs.clone(),
            anti,
            hamiltonian: hamiltonian.cloned(),
        }
    }

    fn dissipator(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = -(&self.anti * rho + rho * &self.anti).scale(0.5);
        for (al, f) in self.ops.iter().enumerate() {
            let f_rho = f * rho;
            for (be, fd) in self.ops_dag.iter().enumerate() {
                let w = self.coeffs[(al, be)];
                if w != C64::new(0.0, 0.0) {
                    out += &f_rho * fd * w;
                }
            }
        }
        out
    }

    fn rhs(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.dissipator(rho);
        if let Some(h) = &self.hamiltonian {
            out -= comm(h, rho) * I;
        }
        out
    }
}

/// `½ Σ_{αβ} a_{αβ} L_{F_α,F_β}(ρ)`.
pub fn dissipator(model: &NoiseModel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(&model.operators[0], rho)?;
    Ok(Generator::new(model, None).dissipator(rho))
}

/// Same sum evaluated term by term through [`lindblad_form`]; used as an
/// independent route in tests.
pub fn dissipator_by_forms(model: &NoiseModel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(&model.operators[0], rho)?;
    let d = model.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for (al, fa) in model.operators.iter().enumerate() {
        for (be, fb) in model.operators.iter().enumerate() {
            out += lform(fa, fb, rho) * (model.coeffs[(al, be)] * 0.5);
        }
    }
    Ok(out)
}

/// Operators `V_a = √λ_a Σ_α U_{αa} F_α` from `a = UΛU†`, so that the
/// dissipator equals `½ Σ_a L_{V_a,V_a}`. Modes with `λ_a ≈ 0` are dropped.
pub fn diagonal_standard_form(model: &NoiseModel) -> Result<Vec<ComplexMatrix>> {
    let (lambda, u) = hermitian_eigendecomposition(&model.coeffs)?;
    let scale = lambda.amax().max(1.0);
    if lambda[0] < -1e-10 * scale {
        return Err(Error::UnphysicalCoefficients {
            min_eigenvalue: lambda[0],
        });
    }
    let d = model.dim();
    let cut = 1e-12 * lambda.amax();
    let mut out = Vec::new();
    for (a, &l) in lambda.iter().enumerate() {
        if l <= cut {
            continue;
        }
        let mut v = ComplexMatrix::zeros(d, d);
        for (al, f) in model.operators.iter().enumerate() {
            v += f * u[(al, a)];
        }
        out.push(v.scale(l.sqrt()));
    }
    Ok(out)
}

/// `Σ_i L_{X_i,X_i}(ρ) = 4(1 − nρ)` for the defining su(n) basis.
pub fn sun_dissipator_closed_form(rho: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let d = check_square(rho)?;
    if d != n {
        return Err(Error::DimensionMismatch { expected: n, found: d });
    }
    Ok((identity(n) - rho.scale(n as f64)).scale(4.0))
}

/// Maximum residual of one algebraic identity across the trials.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub residuals: Vec<IdentityResidual>,
    /// `‖L_{A,B} − 2[A,B](ρ + 1)‖_F` on the non-Hermitian witness. Reported
    /// only; its premise cannot hold for Hermitian operators.
    pub eigen_operator_full_form_residual: f64,
    pub passed: bool,
}

impl IdentityReport {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.max_residual)
    }
}

pub const ID_BILINEAR_EXPANSION: &str = "bilinear_expansion";
pub const ID_SYMMETRIZED_SUM: &str = "symmetrized_sum";
pub const ID_DIAGONAL_DOUBLE_COMMUTATOR: &str = "diagonal_double_commutator";
pub const ID_COMMUTING_REDUCTION: &str = "commuting_reduction";
pub const ID_EIGEN_OPERATOR_ANTISYMMETRY: &str = "eigen_operator_antisymmetry";
pub const ID_COMMUTATOR_FORM: &str = "commutator_form";

fn unit_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let h = random_hermitian(n, rng);
    let norm = h.norm();
    h / C64::from(norm)
}

/// Checks the Lindblad bilinear-form identities on random Hermitian inputs.
///
/// For Hermitian `A`, `B` and a state `ρ`:
/// - `L_{A,B} = 2[A,B]ρ + 2A[ρ,B] − B[ρ,A] − [ρ,B]A`
/// - `L_{A,B} + L_{B,A} = [A,[ρ,B]] + [B,[ρ,A]]`
/// - `L_{A,A} = [A,[ρ,A]]`
/// - with `[ρ,B]` commuting with `A`: `L_{A,B} = 2[A,B]ρ + A[ρ,B] − B[ρ,A]`
/// - the bilinear form agrees with `[A, ρB†] + [Aρ, B†]` (any `A`, `B`)
///
/// The last check uses `A = |0⟩⟨1|`, `B = |0⟩⟨2|`, `ρ = |0⟩⟨0|` (dim ≥ 3),
/// where `[ρ,A] = A` and `[ρ,B] = B`, and asserts `L_{A,B} = −L_{B,A}`.
pub fn verify_identities(dim: usize, trials: usize, seed: u64, tol: f64) -> Result<IdentityReport> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("identity suite needs dim >= 2, got {dim}")));
    }
    let mut worst = [0.0f64; 5];
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let a = unit_hermitian(dim, &mut rng);
        let b = unit_hermitian(dim, &mut rng);
        let rho_state = random_density(dim, &mut rng);
        let rho = rho_state.as_matrix();

        let lab = lform(&a, &b, rho);
        let lba = lform(&b, &a, rho);
        let rho_a = comm(rho, &a);
        let rho_b = comm(rho, &b);

        let expansion = (comm(&a, &b) * rho).scale(2.0) + (&a * &rho_b).scale(2.0) - &b * &rho_a - &rho_b * &a;
        worst[0] = worst[0].max((&lab - expansion).norm());

        let sym = comm(&a, &rho_b) + comm(&b, &rho_a);
        worst[1] = worst[1].max((&lab + &lba - sym).norm());

        let laa = lform(&a, &a, rho);
        worst[2] = worst[2].max((laa - comm(&a, &rho_a)).norm());

        // B built from ρ's eigenvectors, so [ρ, B] = 0 commutes with A.
        let (_, u) = hermitian_eigendecomposition(rho)?;
        let weights = random_hermitian(dim, &mut rng).diagonal().map(|z| C64::new(z.re, 0.0));
        let b_comm = &u * DMatrix::from_diagonal(&weights) * u.adjoint();
        let rho_bc = comm(rho, &b_comm);
        let reduced = (comm(&a, &b_comm) * rho).scale(2.0) + &a * &rho_bc - &b_comm * &rho_a;
        worst[3] = worst[3].max((lform(&a, &b_comm, rho) - reduced).norm());

        let na = crate::matcore::random_ginibre(dim, &mut rng);
        let nb = crate::matcore::random_ginibre(dim, &mut rng);
        let nbd = nb.adjoint();
        let two_commutators = comm(&na, &(rho * &nbd)) + comm(&(&na * rho), &nbd);
        let scale = na.norm() * nb.norm();
        worst[4] = worst[4].max((lform(&na, &nb, rho) - two_commutators).norm() / scale);
    }

    let (wa, wb, wrho) = eigen_operator_witness(dim);
    let lab = lform(&wa, &wb, &wrho);
    let lba = lform(&wb, &wa, &wrho);
    let antisym = (&lab + &lba).norm();
    let full = (&lab - (comm(&wa, &wb) * (&wrho + identity(dim))).scale(2.0)).norm();

    let residuals = vec![
        IdentityResidual { name: ID_BILINEAR_EXPANSION, max_residual: worst[0] },
        IdentityResidual { name: ID_SYMMETRIZED_SUM, max_residual: worst[1] },
        IdentityResidual { name: ID_DIAGONAL_DOUBLE_COMMUTATOR, max_residual: worst[2] },
        IdentityResidual { name: ID_COMMUTING_REDUCTION, max_residual: worst[3] },
        IdentityResidual { name: ID_COMMUTATOR_FORM, max_residual: worst[4] },
        IdentityResidual { name: ID_EIGEN_OPERATOR_ANTISYMMETRY, max_residual: antisym },
    ];
    let passed = residuals.iter().all(|r| r.max_residual <= tol);
    Ok(IdentityReport {
        dim,
        trials,
        seed,
        tol,
        residuals,
        eigen_operator_full_form_residual: full,
        passed,
    })
}

/// Operators with `[ρ, A] = A` and `[ρ, B] = B`: raising-type matrix units
/// into the state `|0⟩`. On dim 2 only one such direction exists, so `B = A`.
pub fn eigen_operator_witness(dim: usize) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let a = ket_bra(dim, 0, 1);
    let b = if dim >= 3 { ket_bra(dim, 0, 2) } else { a.clone() };
    (a, b, ket_bra(dim, 0, 0))
}

/// Integration settings for [`evolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub t_final: f64,
    pub dt: f64,
    pub hamiltonian: Option<ComplexMatrix>,
    pub record_every: usize,
    /// Also record su(n) Bloch vectors of every stored state.
    pub record_bloch: bool,
}

impl EvolutionConfig {
    pub fn new(t_final: f64, dt: f64) -> Self {
        Self {
            t_final,
            dt,
            hamiltonian: None,
            record_every: 1,
            record_bloch: false,
        }
    }

    pub fn with_hamiltonian(mut self, h: ComplexMatrix) -> Self {
        self.hamiltonian = Some(h);
        self
    }

    pub fn record_every(mut self, every: usize) -> Self {
        self.record_every = every;
        self
    }

    pub fn with_bloch(mut self) -> Self {
        self.record_bloch = true;
        self
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if !self.t_final.is_finite() || self.t_final < 0.0 {
            return Err(Error::InvalidArgument(format!("t_final must be >= 0, got {}", self.t_final)));
        }
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::InvalidArgument(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.t_final > 0.0 && self.dt > self.t_final {
            return Err(Error::InvalidArgument(format!(
                "dt = {} exceeds t_final = {}",
                self.dt, self.t_final
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidArgument("record_every must be positive".into()));
        }
        if let Some(h) = &self.hamiltonian {
            if check_square(h)? != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: h.nrows() });
            }
            let residual = crate::matcore::hermiticity_residual(h);
            if residual > 1e-12 * h.norm().max(1.0) {
                return Err(Error::NotHermitian { what: "hamiltonian".into(), residual });
            }
        }
        Ok(())
    }
}

/// `1e-3 / (‖a‖₂ · max_α ‖F_α‖₂²)`.
pub fn default_dt(model: &NoiseModel) -> f64 {
    let a_norm = model.coeffs.clone().svd(false, false).singular_values.max();
    let f_norm = model
        .operators
        .iter()
        .map(|f| f.clone().svd(false, false).singular_values.max())
        .fold(0.0, f64::max);
    let rate = a_norm * f_norm * f_norm;
    if rate > 0.0 {
        1e-3 / rate
    } else {
        1e-3
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub bloch: Option<Vec<BlochVector>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Smallest eigenvalue tolerated during integration before aborting.
pub const POSITIVITY_ABORT: f64 = -1e-6;

/// Integrates `dρ/dt = −i[H, ρ] + L(ρ)` with the classical fixed-step
/// fourth-order Runge–Kutta scheme.
///
/// The state is re-Hermitized after every step. If `t_final` is not a
/// multiple of `dt` the step is shortened uniformly so the run ends on
/// `t_final`.
pub fn evolve(model: &NoiseModel, config: &EvolutionConfig, rho0: &DensityMatrix) -> Result<Trajectory> {
    let d = model.dim();
    if rho0.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rho0.dim() });
    }
    config.validate(d)?;
    let generator = Generator::new(model, config.hamiltonian.as_ref());
    let steps = if config.t_final == 0.0 {
        0
    } else {
        (config.t_final / config.dt - 1e-9).ceil().max(1.0) as usize
    };
    let h = if steps == 0 { 0.0 } else { config.t_final / steps as f64 };
    let basis = if config.record_bloch { Some(su_basis(d)?) } else { None };

    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![rho0.clone()],
        bloch: None,
    };
    let mut rho = rho0.as_matrix().clone();
    for step in 1..=steps {
        let k1 = generator.rhs(&rho);
        let k2 = generator.rhs(&(&rho + &k1 * C64::from(0.5 * h)));
        let k3 = generator.rhs(&(&rho + &k2 * C64::from(0.5 * h)));
        let k4 = generator.rhs(&(&rho + &k3 * C64::from(h)));
        rho += (k1 + (k2 + k3).scale(2.0) + k4) * C64::from(h / 6.0);
        rho = (&rho + rho.adjoint()).scale(0.5);

        let t = if step == steps { config.t_final } else { step as f64 * h };
        let lmin = crate::matcore::min_eigenvalue(&rho);
        if lmin < POSITIVITY_ABORT {
            return Err(Error::PositivityViolation { time: t, min_eigenvalue: lmin });
        }
        if step % config.record_every == 0 || step == steps {
            traj.times.push(t);
            traj.states.push(DensityMatrix::from_matrix_unchecked(rho.clone()));
        }
    }
    if let Some(basis) = basis {
        traj.bloch = Some(
            traj.states
                .iter()
                .map(|s| bloch_decompose(s, &basis))
                .collect::<Result<_>>()?,
        );
    }
    Ok(traj)
}

/// Distances `‖ρ(t) − 1/n‖_F` along one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumRun {
    pub initial_distance: f64,
    pub final_distance: f64,
    /// `max_t |d(t) − d(0)|`, zero for stationary states.
    pub max_distance_change: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub runs: Vec<EquilibriumRun>,
    pub max_final_distance: f64,
    pub returns: bool,
    pub irreducible: bool,
    /// `returns == irreducible`; meaningful for generic batches of states.
    pub consistent: bool,
}

/// Evolves each initial state to `t_max` under `model` (no Hamiltonian) and
/// checks convergence to the maximally mixed state.
pub fn check_return_to_equilibrium(
    model: &NoiseModel,
    initial: &[DensityMatrix],
    t_max: f64,
    dt: f64,
    tol: f64,
) -> Result<EquilibriumReport> {
    if initial.is_empty() {
        return Err(Error::EmptyInput("initial states"));
    }
    let d = model.dim();
    let mixed = DensityMatrix::maximally_mixed(d);
    let config = EvolutionConfig::new(t_max, dt);
    let mut runs = Vec::with_capacity(initial.len());
    for rho0 in initial {
        let traj = evolve(model, &config, rho0)?;
        let dist: Vec<f64> = traj
            .states
            .iter()
            .map(|s| (s.as_matrix() - mixed.as_matrix()).norm())
            .collect();
        let d0 = dist[0];
        runs.push(EquilibriumRun {
            initial_distance: d0,
            final_distance: *dist.last().unwrap(),
            max_distance_change: dist.iter().map(|x| (x - d0).abs()).fold(0.0, f64::max),
        });
    }
    let max_final_distance = runs.iter().map(|r| r.final_distance).fold(0.0, f64::max);
    let returns = max_final_distance <= tol;
    let irreducible = crate::repanalysis::is_irreducible(model.operators(), 1e-10)?;
    Ok(EquilibriumReport {
        runs,
        max_final_distance,
        returns,
        irreducible,
        consistent: returns == irreducible,
    })
}

/// A batch of random full-rank states, one seed per index.
pub fn random_states(n: usize, count: usize, seed: u64) -> Vec<DensityMatrix> {
    (0..count)
        .map(|i| random_density(n, &mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))))
        .collect()
}

/// Hypothesis and conclusion residuals of a suppression check, kept apart
/// so that negative controls show both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct SuppressionReport {
    /// Lemma-specific hypothesis residual (see the check functions).
    pub hypothesis_residual: f64,
    pub max_imag_coeff: f64,
    /// `‖L(ρ)‖_F`.
    pub dissipator_norm: f64,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    /// False only if the hypothesis holds and the conclusion fails.
    pub implication_ok: bool,
    /// Set when some `F_α` is Hermitian and nonzero, which rules out
    /// `[ρ, F_α] = F_α` by a trace argument.
    pub hypothesis_unsatisfiable_for_hermitian: bool,
}

fn conclusion_scale(model: &NoiseModel, rho: &ComplexMatrix) -> f64 {
    let f_max = model.operators.iter().map(|f| f.norm()).fold(0.0, f64::max);
    (model.coeffs.norm() * f_max * f_max * rho.norm()).max(1.0)
}

fn suppression_report(
    model: &NoiseModel,
    rho: &ComplexMatrix,
    hypothesis_residual: f64,
    tol: f64,
    unsatisfiable: bool,
) -> Result<SuppressionReport> {
    let l = dissipator(model, rho)?;
    let max_imag_coeff = model.max_imag_coeff();
    let dissipator_norm = l.norm();
    let hypothesis_holds = hypothesis_residual <= tol && max_imag_coeff <= tol;
    let conclusion_holds = dissipator_norm <= tol * conclusion_scale(model, rho);
    Ok(SuppressionReport {
        hypothesis_residual,
        max_imag_coeff,
        dissipator_norm,
        hypothesis_holds,
        conclusion_holds,
        implication_ok: !hypothesis_holds || conclusion_holds,
        hypothesis_unsatisfiable_for_hermitian: unsatisfiable,
    })
}

/// Hypothesis: `[[ρ, F_α], F_β] = 0` for all pairs and real `a`.
/// Conclusion: `L(ρ) = 0`.
pub fn check_suppression_lemma1(model: &NoiseModel, rho: &ComplexMatrix, tol: f64) -> Result<SuppressionReport> {
    check_same_dim(&model.operators[0], rho)?;
    let mut worst: f64 = 0.0;
    for fa in &model.operators {
        let ra = comm(rho, fa);
        for fb in &model.operators {
            worst = worst.max(comm(&ra, fb).norm());
        }
    }
    suppression_report(model, rho, worst, tol, false)
}

/// Hypothesis: `[ρ, F_α] = F_α` for all α and real `a`.
/// Conclusion: `L(ρ) = 0`.
pub fn check_suppression_lemma2(model: &NoiseModel, rho: &ComplexMatrix, tol: f64) -> Result<SuppressionReport> {
    check_same_dim(&model.operators[0], rho)?;
    let worst = model
        .operators
        .iter()
        .map(|f| (comm(rho, f) - f).norm())
        .fold(0.0, f64::max);
    let unsatisfiable = model
        .operators
        .iter()
        .any(|f| f.norm() > tol && is_hermitian(f, 1e-12));
    suppression_report(model, rho, worst, tol, unsatisfiable)
}
