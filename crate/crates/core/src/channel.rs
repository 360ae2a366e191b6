// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

//! The Lie-algebra (generalized depolarizing) channel
//! `E(ρ) = (1 − p)ρ + (p/Z) Σ_i X_i ρ X_i†` and its relation to
//! coarse-grained Lindblad dynamics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::liealg::{bloch_coordinates, bloch_compose, casimir_normalization, killing_form, su_basis, BlochVector, LieBasis};
use crate::lindblad::{dissipator, NoiseModel};
use crate::matcore::{identity, random_density, ComplexMatrix, DensityMatrix, C64};

/// Generator basis, error probability and normalization `Σ X_i² = Z·1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    basis: LieBasis,
    p: f64,
    z: f64,
}

impl ChannelSpec {
    /// Validates `p ∈ [0, 1]`, a scalar sum of squares, and, when the
    /// generators close under commutation, a Killing form proportional to
    /// the identity.
    pub fn new(basis: LieBasis, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("p must lie in [0, 1], got {p}")));
        }
        let z = casimir_normalization(&basis)?;
        if z.is_nan() || z <= 0.0 {
            return Err(Error::InvalidArgument(format!("normalization Z = {z} is not positive")));
        }
        let kf = killing_form(&basis);
        if kf.closure_residual <= crate::liealg::KILLING_TOL && kf.norm.is_none() {
            return Err(Error::NotPseudoOrthonormal);
        }
        Ok(Self { basis, p, z })
    }

    /// The channel on the defining representation of su(n).
    pub fn su(n: usize, p: f64) -> Result<Self> {
        Self::new(su_basis(n)?, p)
    }

    pub fn basis(&self) -> &LieBasis {
        &self.basis
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn with_p(&self, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("p must lie in [0, 1], got {p}")));
        }
        Ok(Self { p, ..self.clone() })
    }
}

/// `[√(1−p)·1, √(p/Z)·X_1, …, √(p/Z)·X_k]`.
pub fn kraus_operators(spec: &ChannelSpec) -> Vec<ComplexMatrix> {
    let n = spec.dim();
    let mut out = Vec::with_capacity(spec.basis.len() + 1);
    out.push(identity(n).scale((1.0 - spec.p).sqrt()));
    let w = (spec.p / spec.z).sqrt();
    out.extend(spec.basis.generators().iter().map(|x| x.scale(w)));
    out
}

fn sandwich_sum(spec: &ChannelSpec, rho: &ComplexMatrix) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(rho.nrows(), rho.ncols());
    for x in spec.basis.generators() {
        acc += x * rho * x.adjoint();
    }
    acc
}

fn apply_to_matrix(spec: &ChannelSpec, rho: &ComplexMatrix) -> ComplexMatrix {
    rho.scale(1.0 - spec.p) + sandwich_sum(spec, rho).scale(spec.p / spec.z)
}

/// `E(ρ) − ρ`, kept separate so small-`p` differences do not cancel against `ρ`.
fn increment(spec: &ChannelSpec, rho: &ComplexMatrix) -> ComplexMatrix {
    sandwich_sum(spec, rho).scale(spec.p / spec.z) - rho.scale(spec.p)
}

/// `E(ρ)` through the Kraus sum.
pub fn apply_channel(spec: &ChannelSpec, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), found: rho.dim() });
    }
    let out = apply_to_matrix(spec, rho.as_matrix());
    Ok(DensityMatrix::from_matrix_unchecked((&out + out.adjoint()).scale(0.5)))
}

/// Bloch-vector contraction `((1 − p)n² − 1)/(n² − 1)` of the su(n) channel.
pub fn sun_channel_coefficient(p: f64, n: usize) -> f64 {
    let n2 = (n * n) as f64;
    ((1.0 - p) * n2 - 1.0) / (n2 - 1.0)
}

/// `(1/n)(tr ρ·1 + c·v·X)` with the su(n) contraction coefficient `c`.
pub fn sun_channel_closed_form(rho: &DensityMatrix, p: f64, n: usize) -> Result<DensityMatrix> {
    if rho.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rho.dim() });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p must lie in [0, 1], got {p}")));
    }
    let basis = su_basis(n)?;
    let v = bloch_coordinates(rho.as_matrix(), &basis)?;
    let contracted = BlochVector::new(n, v.v * sun_channel_coefficient(p, n));
    let traceless = bloch_compose(&contracted, &basis)? - identity(n).scale(1.0 / n as f64);
    let tr = rho.as_matrix().trace();
    Ok(DensityMatrix::from_matrix_unchecked(
        identity(n) * (tr / C64::from(n as f64)) + traceless,
    ))
}

/// Gaps between one coarse-grained Lindblad step and the channel at `p = τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseGrainRecord {
    pub tau: f64,
    /// `‖(ρ + τ·L(ρ)) − E_τ(ρ)‖_F`; zero up to rounding.
    pub euler_gap: f64,
    /// `‖(1 − τ/2)²ρ + (τ/Z) Σ XρX − E_τ(ρ)‖_F`, equal to `(τ²/4)‖ρ‖_F`.
    pub measurement_gap: f64,
    pub rho_norm: f64,
}

/// Compares coarse-grained su(n) dynamics with `F_i = Z^{-1/2} X_i`
/// against the channel for each `τ`, on one random state drawn from `seed`.
pub fn coarse_grain_compare(n: usize, taus: &[f64], seed: u64) -> Result<Vec<CoarseGrainRecord>> {
    if let Some(&bad) = taus.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::InvalidArgument(format!("tau must lie in (0, 1), got {bad}")));
    }
    let model = NoiseModel::su(n, true)?;
    let spec = ChannelSpec::su(n, 0.0)?;
    let rho = random_density(n, &mut ChaCha8Rng::seed_from_u64(seed));
    let rho = rho.as_matrix();
    let lind = dissipator(&model, rho)?;
    let sandwich = sandwich_sum(&spec, rho);
    // All three maps are compared through their increments over ρ; the
    // measurement gap is O(τ²) and would drown in rounding otherwise.
    taus.iter()
        .map(|&tau| {
            let channel = increment(&spec.with_p(tau)?, rho);
            let euler = &lind * C64::from(tau);
            // (1 − τ/2)² − 1
            let m0_shift = tau * (0.25 * tau - 1.0);
            let measured = rho.scale(m0_shift) + sandwich.scale(tau / spec.z);
            Ok(CoarseGrainRecord {
                tau,
                euler_gap: (euler - &channel).norm(),
                measurement_gap: (measured - channel).norm(),
                rho_norm: rho.norm(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemigroupRecord {
    pub steps: usize,
    /// Measured Bloch-vector contraction after `steps` applications.
    pub contraction: f64,
    /// `|contraction − exp(−p_total·n²/(n² − 1))|`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemigroupReport {
    pub n: usize,
    pub p_total: f64,
    pub limit: f64,
    pub records: Vec<SemigroupRecord>,
    /// Gaps never increase from one doubling to the next.
    pub monotone: bool,
}

/// Iterates the su(n) channel with `p = p_total/s` for `s = 1, 2, 4, …` up
/// to `steps`, measuring the contraction on `|0⟩⟨0|`.
pub fn channel_semigroup_check(n: usize, p_total: f64, steps: usize) -> Result<SemigroupReport> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p_total) {
        return Err(Error::InvalidArgument(format!("p_total must lie in [0, 1], got {p_total}")));
    }
    let basis = su_basis(n)?;
    let rho0 = DensityMatrix::basis_state(n, 0);
    let v0 = bloch_coordinates(rho0.as_matrix(), &basis)?.v;
    let n2 = (n * n) as f64;
    let limit = (-p_total * n2 / (n2 - 1.0)).exp();
    let mut records = Vec::new();
    let mut s = 1usize;
    while s <= steps {
        let spec = ChannelSpec::new(basis.clone(), p_total / s as f64)?;
        let mut rho = rho0.clone();
        for _ in 0..s {
            rho = apply_channel(&spec, &rho)?;
        }
        let v = bloch_coordinates(rho.as_matrix(), &basis)?.v;
        let contraction = v.dot(&v0) / v0.dot(&v0);
        records.push(SemigroupRecord { steps: s, contraction, gap: (contraction - limit).abs() });
        s *= 2;
    }
    let monotone = records.windows(2).all(|w| w[1].gap <= w[0].gap);
    Ok(SemigroupReport { n, p_total, limit, records, monotone })
}
