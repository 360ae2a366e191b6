// Copyright 2026 The liedeco Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use liedeco::channel::{apply_channel, coarse_grain_compare, sun_channel_closed_form, sun_channel_coefficient, ChannelSpec};
use liedeco::liealg::{casimir_normalization, killing_form, structure_constants, su_basis, LieBasis};
use liedeco::lindblad::{
    check_return_to_equilibrium, default_dt, dissipator, evolve, random_states, sun_dissipator_closed_form,
    EvolutionConfig, NoiseModel, Trajectory,
};
use liedeco::matcore::{commutator, hermiticity_residual, identity, ComplexMatrix, DensityMatrix};
use liedeco::repanalysis::{noiseless_subsystem_report, repeated, verify_theorem_gf};
use serde_json::{json, Map, Value};

use crate::io::{self, CliError, Result};
use crate::{Cli, Command, CsvMode, Format, ModelArgs};

/// Nonzero structure constants are listed when above this magnitude.
const SPARSE_CUTOFF: f64 = 1e-14;

/// Runs one subcommand and writes its artifact. `Ok(false)` signals a
/// verification failure.
pub fn run(cli: &Cli) -> Result<bool> {
    let c = &cli.common;
    if !c.tol.is_finite() || c.tol <= 0.0 {
        return Err(CliError::Input(format!("--tol must be positive, got {}", c.tol)));
    }
    let csv_ok = matches!(cli.command, Command::Evolve { .. } | Command::CoarseGrain { .. });
    if c.format == Format::Csv && !csv_ok {
        return Err(CliError::Input("--format csv is only available for evolve and coarse-grain".into()));
    }
    let (text, passed) = match &cli.command {
        Command::Basis { n } => (json_text(basis(*n)?), true),
        Command::VerifyIdentities { dim, trials } => verify_identities(*dim, *trials, c.seed, c.tol)?,
        Command::Dissipator { model, state } => dissipator_cmd(model, state.as_deref(), c.tol)?,
        Command::Evolve { model, state, t_final, dt, hamiltonian, record_every, csv_mode } => {
            let run = EvolveRun {
                t_final: *t_final,
                dt: *dt,
                hamiltonian: hamiltonian.as_deref(),
                record_every: *record_every,
            };
            let traj = evolve_cmd(model, state.as_deref(), &run)?;
            let text = match c.format {
                Format::Json => json_text(trajectory_json(&traj)),
                Format::Csv => trajectory_csv(&traj, *csv_mode),
            };
            (text, true)
        }
        Command::Channel { n, generators, spec, p, state } => {
            channel_cmd(*n, generators.as_deref(), spec.as_deref(), *p, state.as_deref(), c.tol)?
        }
        Command::CoarseGrain { n, tau } => coarse_grain(*n, tau, c.seed, c.tol, c.format)?,
        Command::AnalyzeRep { n, generators, copies } => analyze_rep(*n, generators.as_deref(), *copies, c.tol)?,
        Command::SymmetryBreak { spec, state } => symmetry_break(spec, state.as_deref(), c.tol)?,
        Command::Equilibrium { model, states, t_max, dt, threshold } => {
            equilibrium(model, *states, *t_max, *dt, *threshold, c.seed)?
        }
    };
    io::emit(c.out.as_deref(), &text)?;
    Ok(passed)
}

fn json_text(v: Value) -> String {
    io::to_json_string(&v)
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

fn opt_f64(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

fn basis(n: usize) -> Result<Value> {
    let b = su_basis(n)?;
    let sc = structure_constants(&b)?;
    let k = b.len();
    let mut f = Vec::new();
    let mut d = Vec::new();
    for a in 0..k {
        for bb in a..k {
            for cc in bb..k {
                let fv = sc.f(a, bb, cc);
                if a < bb && bb < cc && fv.abs() > SPARSE_CUTOFF {
                    f.push(json!([a, bb, cc, fv]));
                }
                let dv = sc.d(a, bb, cc);
                if dv.abs() > SPARSE_CUTOFF {
                    d.push(json!([a, bb, cc, dv]));
                }
            }
        }
    }
    let mut out = io::basis_json(&b);
    let m = out.as_object_mut().expect("basis_json returns an object");
    m.insert("killing_norm".into(), opt_f64(killing_form(&b).norm));
    m.insert("casimir".into(), json!(casimir_normalization(&b)?));
    m.insert("structure_constants".into(), obj(vec![("f", Value::Array(f)), ("d", Value::Array(d))]));
    Ok(out)
}

fn verify_identities(dim: usize, trials: usize, seed: u64, tol: f64) -> Result<(String, bool)> {
    let rep = liedeco::lindblad::verify_identities(dim, trials, seed, tol)?;
    let mut residuals = Map::new();
    for r in &rep.residuals {
        residuals.insert(r.name.to_string(), json!(r.max_residual));
    }
    let v = obj(vec![
        ("dim", json!(rep.dim)),
        ("trials", json!(rep.trials)),
        ("seed", json!(rep.seed)),
        ("tol", json!(rep.tol)),
        ("residuals", Value::Object(residuals)),
        ("eigen_operator_full_form_residual", json!(rep.eigen_operator_full_form_residual)),
        ("passed", json!(rep.passed)),
    ]);
    Ok((json_text(v), rep.passed))
}

fn load_model(args: &ModelArgs) -> Result<NoiseModel> {
    match (&args.model, args.n) {
        (Some(path), _) => io::load_noise_model(path),
        (None, Some(n)) => Ok(NoiseModel::su(n, args.normalized)?),
        (None, None) => Err(CliError::Input("one of --n or --model is required".into())),
    }
}

fn load_state_or(path: Option<&Path>, dim: usize, default: impl FnOnce(usize) -> DensityMatrix) -> Result<DensityMatrix> {
    match path {
        Some(p) => {
            let s = io::load_state(p)?;
            if s.dim() != dim {
                return Err(CliError::Input(format!("{}: state has dimension {}, expected {dim}", p.display(), s.dim())));
            }
            Ok(s)
        }
        None => Ok(default(dim)),
    }
}

fn ground(dim: usize) -> DensityMatrix {
    DensityMatrix::basis_state(dim, 0)
}

fn dissipator_cmd(args: &ModelArgs, state: Option<&Path>, tol: f64) -> Result<(String, bool)> {
    let model = load_model(args)?;
    let d = model.dim();
    let rho = load_state_or(state, d, ground)?;
    let l = dissipator(&model, rho.as_matrix())?;
    let trace = l.trace().norm();
    let herm = hermiticity_residual(&l);
    let mut pairs = vec![
        ("dim", json!(d)),
        ("dissipator", io::matrix_json(&l)),
        ("trace_residual", json!(trace)),
        ("hermiticity_residual", json!(herm)),
    ];
    let mut passed = trace <= tol && herm <= tol;
    if args.model.is_none() && !args.normalized {
        // unit su(n) coefficients: L(ρ) = 2(1 − nρ)
        let closed = sun_dissipator_closed_form(rho.as_matrix(), d)?.scale(0.5);
        let residual = (&l - closed).norm();
        passed &= residual <= tol;
        pairs.push(("closed_form_residual", json!(residual)));
    }
    pairs.push(("passed", json!(passed)));
    Ok((json_text(obj(pairs)), passed))
}

struct EvolveRun<'a> {
    t_final: f64,
    dt: Option<f64>,
    hamiltonian: Option<&'a Path>,
    record_every: usize,
}

fn evolve_cmd(args: &ModelArgs, state: Option<&Path>, run: &EvolveRun) -> Result<Trajectory> {
    let model = load_model(args)?;
    let d = model.dim();
    let rho0 = load_state_or(state, d, ground)?;
    let dt = run.dt.unwrap_or_else(|| default_dt(&model));
    let mut config = EvolutionConfig::new(run.t_final, dt).record_every(run.record_every).with_bloch();
    if let Some(h) = run.hamiltonian {
        config = config.with_hamiltonian(io::load_matrix(h)?);
    }
    Ok(evolve(&model, &config, &rho0)?)
}

fn trajectory_json(traj: &Trajectory) -> Value {
    let mut pairs = vec![
        ("times", io::real_vector_json(&traj.times)),
        ("states", Value::Array(traj.states.iter().map(|s| io::matrix_json(s.as_matrix())).collect())),
    ];
    if let Some(bloch) = &traj.bloch {
        pairs.push((
            "bloch",
            Value::Array(bloch.iter().map(|v| io::real_vector_json(v.v.as_slice())).collect()),
        ));
    }
    obj(pairs)
}

fn trajectory_csv(traj: &Trajectory, mode: CsvMode) -> String {
    let mut header = vec!["t".to_string()];
    let mut rows = Vec::with_capacity(traj.len());
    match (mode, &traj.bloch) {
        (CsvMode::Bloch, Some(bloch)) => {
            let k = bloch.first().map_or(0, |v| v.len());
            header.extend((1..=k).map(|i| format!("v_{i}")));
            for (t, v) in traj.times.iter().zip(bloch) {
                let mut row = vec![*t];
                row.extend(v.v.iter());
                rows.push(row);
            }
        }
        _ => {
            let d = traj.states[0].dim();
            for r in 0..d {
                for c in 0..d {
                    header.push(format!("re_{r}_{c}"));
                    header.push(format!("im_{r}_{c}"));
                }
            }
            for (t, s) in traj.times.iter().zip(&traj.states) {
                let m = s.as_matrix();
                let mut row = vec![*t];
                for r in 0..d {
                    for c in 0..d {
                        row.push(m[(r, c)].re);
                        row.push(m[(r, c)].im);
                    }
                }
                rows.push(row);
            }
        }
    }
    io::csv_table(&header, &rows)
}

fn channel_cmd(
    n: Option<usize>,
    generators: Option<&Path>,
    spec_path: Option<&Path>,
    p: Option<f64>,
    state: Option<&Path>,
    tol: f64,
) -> Result<(String, bool)> {
    let need_p = || p.ok_or_else(|| CliError::Input("--p is required unless a spec file provides it".into()));
    let spec = match (n, generators, spec_path) {
        (Some(n), _, _) => ChannelSpec::su(n, need_p()?)?,
        (_, Some(g), _) => ChannelSpec::new(io::load_generators(g)?, need_p()?)?,
        (_, _, Some(s)) => {
            let spec = io::load_channel_spec(s)?;
            match p {
                Some(p) => spec.with_p(p)?,
                None => spec,
            }
        }
        _ => return Err(CliError::Input("one of --n, --generators or --spec is required".into())),
    };
    let d = spec.dim();
    let rho = load_state_or(state, d, ground)?;
    let out = apply_channel(&spec, &rho)?;
    let trace = (out.as_matrix().trace() - rho.as_matrix().trace()).norm();
    let mut pairs = vec![
        ("n", json!(d)),
        ("p", json!(spec.p())),
        ("z", json!(spec.z())),
        ("state", io::matrix_json(out.as_matrix())),
        ("trace_residual", json!(trace)),
    ];
    let mut passed = trace <= tol;
    if spec.basis().is_builtin() {
        let closed = sun_channel_closed_form(&rho, spec.p(), d)?;
        let residual = (out.as_matrix() - closed.as_matrix()).norm();
        passed &= residual <= tol;
        pairs.push(("bloch_coefficient", json!(sun_channel_coefficient(spec.p(), d))));
        pairs.push(("closed_form_residual", json!(residual)));
    }
    pairs.push(("passed", json!(passed)));
    Ok((json_text(obj(pairs)), passed))
}

fn coarse_grain(n: usize, taus: &[f64], seed: u64, tol: f64, format: Format) -> Result<(String, bool)> {
    let records = coarse_grain_compare(n, taus, seed)?;
    let mut passed = true;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for r in &records {
        let expected = 0.25 * r.tau * r.tau * r.rho_norm;
        let rel = (r.measurement_gap - expected).abs() / expected;
        passed &= r.euler_gap <= tol && rel <= tol;
        rows.push(vec![r.tau, r.euler_gap, r.measurement_gap, expected, r.rho_norm]);
        items.push(obj(vec![
            ("tau", json!(r.tau)),
            ("euler_gap", json!(r.euler_gap)),
            ("measurement_gap", json!(r.measurement_gap)),
            ("expected_measurement_gap", json!(expected)),
            ("rho_norm", json!(r.rho_norm)),
        ]));
    }
    let text = match format {
        Format::Csv => {
            let header: Vec<String> = ["tau", "euler_gap", "measurement_gap", "expected_measurement_gap", "rho_norm"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            io::csv_table(&header, &rows)
        }
        Format::Json => json_text(obj(vec![
            ("n", json!(n)),
            ("seed", json!(seed)),
            ("records", Value::Array(items)),
            ("passed", json!(passed)),
        ])),
    };
    Ok((text, passed))
}

fn analyze_rep(n: Option<usize>, generators: Option<&Path>, copies: usize, tol: f64) -> Result<(String, bool)> {
    let basis: LieBasis = match (n, generators) {
        (Some(n), _) => su_basis(n)?,
        (_, Some(g)) => io::load_generators(g)?,
        _ => return Err(CliError::Input("one of --n or --generators is required".into())),
    };
    if copies == 0 {
        return Err(CliError::Input("--copies must be at least 1".into()));
    }
    let ops = repeated(basis.generators(), copies);
    let rep = noiseless_subsystem_report(&ops, tol)?;

    let dim = rep.dim;
    let mut idempotency: f64 = 0.0;
    let mut commutation: f64 = 0.0;
    let mut total = ComplexMatrix::zeros(dim, dim);
    for b in &rep.isotypic {
        let p = &b.projector;
        idempotency = idempotency.max((p * p - p).norm());
        for f in &ops {
            commutation = commutation.max(commutator(p, f)?.norm());
        }
        total += p;
    }
    let completeness = (total - identity(dim)).norm();
    let annihilation = rep
        .df_subspace_basis
        .iter()
        .flat_map(|v| ops.iter().map(move |f| (f * v).norm()))
        .fold(0.0, f64::max);
    let residuals = obj(vec![
        ("projector_idempotency", json!(idempotency)),
        ("projector_completeness", json!(completeness)),
        ("projector_commutation", json!(commutation)),
        ("df_annihilation", json!(annihilation)),
    ]);
    let passed = [idempotency, completeness, commutation, annihilation].iter().all(|&r| r <= tol);
    let v = obj(vec![
        ("dim", json!(dim)),
        ("commutant_dim", json!(rep.commutant_dim)),
        ("irreducible", json!(rep.irreducible)),
        ("df_subspace", Value::Array(rep.df_subspace_basis.iter().map(io::vector_json).collect())),
        (
            "isotypic",
            Value::Array(
                rep.isotypic
                    .iter()
                    .map(|b| obj(vec![("n", json!(b.multiplicity)), ("d", json!(b.block_dim))]))
                    .collect(),
            ),
        ),
        ("residuals", residuals),
        ("passed", json!(passed)),
    ]);
    Ok((json_text(v), passed))
}

fn symmetry_break(spec_path: &Path, state: Option<&Path>, tol: f64) -> Result<(String, bool)> {
    let spec = io::load_symmetry_spec(spec_path)?;
    let rho = load_state_or(state, spec.dim(), DensityMatrix::maximally_mixed)?;
    let rep = verify_theorem_gf(&spec, rho.as_matrix(), tol)?;
    if spec.epsilon_is_large() {
        eprintln!("warning: epsilon = {} is not small; second-order terms may dominate", spec.epsilon);
    }
    let v = obj(vec![
        ("epsilon", json!(spec.epsilon)),
        ("epsilon_is_large", json!(spec.epsilon_is_large())),
        (
            "switching",
            obj(vec![
                ("f_into_g_residual", json!(rep.switching.f_into_g_residual)),
                ("g_into_f_residual", json!(rep.switching.g_into_f_residual)),
                ("switches", json!(rep.switching.switches)),
            ]),
        ),
        ("real_coupling", json!(rep.real_coupling)),
        ("first_order_norm", json!(rep.first_order_norm)),
        ("first_order_norm_real_part", json!(rep.first_order_norm_real_part)),
        ("second_order_norm", json!(rep.second_order_norm)),
        ("imaginary_ratio", opt_f64(rep.imaginary_ratio)),
        ("epsilon_doubling_ratio", opt_f64(rep.epsilon_doubling_ratio)),
        ("theorem_holds", json!(rep.theorem_holds)),
    ]);
    Ok((json_text(v), rep.theorem_holds))
}

fn equilibrium(args: &ModelArgs, count: usize, t_max: f64, dt: f64, threshold: f64, seed: u64) -> Result<(String, bool)> {
    let model = load_model(args)?;
    if count == 0 {
        return Err(CliError::Input("--states must be at least 1".into()));
    }
    let initial = random_states(model.dim(), count, seed);
    let rep = check_return_to_equilibrium(&model, &initial, t_max, dt, threshold)?;
    let runs = rep
        .runs
        .iter()
        .map(|r| {
            obj(vec![
                ("initial_distance", json!(r.initial_distance)),
                ("final_distance", json!(r.final_distance)),
                ("max_distance_change", json!(r.max_distance_change)),
            ])
        })
        .collect();
    let v = obj(vec![
        ("dim", json!(model.dim())),
        ("t_max", json!(t_max)),
        ("dt", json!(dt)),
        ("threshold", json!(threshold)),
        ("irreducible", json!(rep.irreducible)),
        ("returns", json!(rep.returns)),
        ("consistent", json!(rep.consistent)),
        ("max_final_distance", json!(rep.max_final_distance)),
        ("runs", Value::Array(runs)),
    ]);
    Ok((json_text(v), rep.consistent))
}
