use std::path::PathBuf;

use compiler::{compile_filter_circuit, Schedule, SpinHamiltonian};
use error_model::{no_jump_alpha_exact, no_jump_rescaling, orb_identity, single_jump_trajectory, LossChannel};
use filter::{
    coherent_filter, completeness_check, hermite_filter, right_eigenvalues, vta_exact_displacement, FilterReport, TrotterOptions,
};
use fock_core::linalg::{max_abs_diff, max_abs_diff_up_to_phase, C64};
use fock_core::{Exec, QubitOperator};
use heisenberg_analytic::{optimize_alpha, symmetry_block_basis, AlphaOutcome};
use serde_json::{json, Value};

use crate::config::AlphaSpec;
use crate::output::{fmt_f64, row, write_csv, write_json};
use crate::{CliError, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    FilterSweep,
    TrotterError,
    OptimizeAlpha,
    Compile,
    ParallelCheck,
    Povm,
    LossDemo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::FilterSweep => "filter-sweep",
            Command::TrotterError => "trotter-error",
            Command::OptimizeAlpha => "optimize-alpha",
            Command::Compile => "compile",
            Command::ParallelCheck => "parallel-check",
            Command::Povm => "povm",
            Command::LossDemo => "loss-demo",
        }
    }
}

/// Run one subcommand; returns the files written.
pub fn run(cmd: Command, opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    opts.config.check_scenario(cmd.name())?;
    match cmd {
        Command::Spectrum => spectrum(opts),
        Command::FilterSweep => filter_sweep(opts),
        Command::TrotterError => trotter_error(opts),
        Command::OptimizeAlpha => optimize(opts),
        Command::Compile => compile(opts),
        Command::ParallelCheck => parallel_check(opts),
        Command::Povm => povm(opts),
        Command::LossDemo => loss_demo(opts),
    }
}

fn sweep_grid() -> AlphaSpec {
    AlphaSpec::Range { start: 0.0, stop: 0.2, step: 0.02 }
}

fn tolerance(opts: &Options, default: f64) -> f64 {
    opts.config.tolerance.unwrap_or(default)
}

fn spectrum(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?;
    let header = "n,E,s,sz,sigma";
    let rows: Vec<String> = match symmetry_block_basis(&h) {
        Ok(table) => table.rows.iter().map(|r| format!("{},{},{},{},{}", r.n, fmt_f64(r.energy), r.s, r.sz, r.sigma)).collect(),
        // labels are only resolved for the 4-site ring
        Err(heisenberg_analytic::AnalyticError::Input(_)) => {
            h.unshifted_matrix().eigenvalues()?.iter().enumerate().map(|(n, e)| format!("{n},{},,,", fmt_f64(*e))).collect()
        }
        Err(e) => return Err(e.into()),
    };
    let path = write_csv(&opts.out, "spectrum.csv", "eigenvalues of H with total spin, Sz and reflection parity", header, &rows)?;
    Ok(vec![path])
}

fn sweep_reports(opts: &Options, h: &SpinHamiltonian, sch: &Schedule) -> Result<Vec<FilterReport>, CliError> {
    let alphas = opts.config.alphas(sweep_grid())?;
    let psi = opts.config.input_state(1 << h.n_qubits)?;
    let topts = TrotterOptions { cutoff: opts.cutoff(), ..TrotterOptions::default() };
    Exec::default()
        .map(alphas.len(), |i| FilterReport::compute(h, sch, alphas[i], &psi, &topts))
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

fn filter_sweep(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?;
    let sch = opts.config.schedule();
    let reports = sweep_reports(opts, &h, &sch)?;
    let table = symmetry_block_basis(&h).ok();
    let dim = 1usize << h.n_qubits;

    let mut header: Vec<String> = ["alpha", "Es", "eps", "bound", "p_success", "lambda0", "r01"].map(String::from).to_vec();
    header.extend((0..dim).map(|k| format!("p_{k}")));
    header.extend((0..dim).map(|k| format!("r_{k}")));
    let rows: Vec<String> = reports
        .iter()
        .map(|r| {
            let exact = r.exact.eigenvalues().unwrap_or_default();
            let compiled = r.compiled_eigenvalues();
            let r01 = table.as_ref().map_or(f64::NAN, |t| t.in_eigenbasis(&r.compiled)[(0, 4)].norm());
            let mut v = vec![r.alpha, r.shift, r.additive_error, r.bound, r.success_probability, compiled[0].re, r01];
            v.extend(exact.iter().rev());
            v.extend(compiled.iter().map(|z| z.re));
            row(&v)
        })
        .collect();
    let csv = write_csv(
        &opts.out,
        "filter_sweep.csv",
        "eigenvalues of the exact filter P and the compiled filter R against alpha; lambda0 is the top eigenvalue of R, r01 the coupling of the two spin-0 states",
        &header.join(","),
        &rows,
    )?;
    let json = write_json(
        &opts.out,
        "filter_sweep.json",
        json!({ "reports": reports.iter().map(FilterReport::to_json).collect::<Vec<_>>() }),
    )?;
    Ok(vec![csv, json])
}

fn trotter_error(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?;
    let sch = opts.config.schedule();
    let reports = sweep_reports(opts, &h, &sch)?;
    let slack = tolerance(opts, 1e-9);
    let rows: Vec<String> = reports
        .iter()
        .map(|r| {
            let ratio = if r.bound > 0.0 { r.additive_error / r.bound } else { 0.0 };
            row(&[r.alpha, r.additive_error, r.bound, ratio])
        })
        .collect();
    let path = write_csv(
        &opts.out,
        "trotter_error.csv",
        "additive Trotter error eps = |R - P|_2 and its commutator bound against alpha",
        "alpha,eps,bound,ratio",
        &rows,
    )?;
    if let Some(bad) = reports.iter().find(|r| r.additive_error > r.bound + slack) {
        return Err(CliError::Tolerance(format!(
            "eps {} exceeds bound {} at alpha {}",
            bad.additive_error, bad.bound, bad.alpha
        )));
    }
    Ok(vec![path])
}

fn optimize(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?;
    let sch = opts.config.schedule();
    let [lo, hi] = opts.config.bracket.unwrap_or([0.05, 0.3]);
    let samples = opts.config.samples.unwrap_or(51);
    let search = optimize_alpha(&h, &sch, (lo, hi), samples).map_err(|e| match e {
        heisenberg_analytic::AnalyticError::Input(m) => CliError::Config(m),
        e => e.into(),
    })?;
    let (outcome, alpha_star, value) = match search.outcome {
        AlphaOutcome::Root(a) => ("root", Some(a), Some(0.0)),
        AlphaOutcome::Minimum { alpha, value } => ("minimum", Some(alpha), Some(value)),
        AlphaOutcome::NoRoot => ("no_root", None, None),
    };
    let path = write_json(
        &opts.out,
        "optimize_alpha.json",
        json!({
            "description": "alpha that decouples the ground state under the compiled filter",
            "schedule": sch,
            "Es": h.shift,
            "bracket": [lo, hi],
            "outcome": outcome,
            "alpha_star": alpha_star,
            "value": value,
            "r01_curve": search.curve,
        }),
    )?;
    Ok(vec![path])
}

fn compile(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?;
    let sch = opts.config.schedule();
    let alpha = opts.config.alphas(AlphaSpec::List(vec![0.1]))?[0];
    let circuit = compile_filter_circuit(&h, &sch, alpha)?;
    std::fs::create_dir_all(&opts.out)?;
    let circ_path = opts.out.join("circuit.json");
    std::fs::write(&circ_path, circuit.to_json()? + "\n")?;
    let stats = serde_json::to_value(circuit.stats()).map_err(|e| CliError::Failed(e.to_string()))?;
    let stats_path = write_json(
        &opts.out,
        "circuit_stats.json",
        json!({
            "alpha": alpha,
            "schedule": sch,
            "recommended_cutoff": circuit.recommended_cutoff(),
            "stats": stats,
        }),
    )?;
    Ok(vec![circ_path, stats_path])
}

fn parallel_check(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?;
    let base = opts.config.schedule();
    let alpha = opts.config.alphas(AlphaSpec::List(vec![0.1]))?[0];
    let mut ms = opts.config.m_values.clone().unwrap_or_else(|| vec![1, 2, 4]);
    ms.sort_unstable();
    ms.dedup();
    if ms.first() != Some(&1) {
        ms.insert(0, 1);
    }
    let hp = h.dense_matrix();
    let d = opts.cutoff().unwrap_or(12);
    let tol_exact = tolerance(opts, 1e-8);
    let tol_circuit = tolerance(opts, 1e-7);
    let diff = |a: &QubitOperator, b: &QubitOperator| {
        if opts.strict_phase {
            max_abs_diff(a.matrix(), b.matrix())
        } else {
            max_abs_diff_up_to_phase(a.matrix(), b.matrix())
        }
    };

    let topts = TrotterOptions::with_cutoff(d);
    let exact_one = vta_exact_displacement(&hp, alpha, 1, d)?;
    let sch_one = Schedule { m: 1, ..base };
    let circ_one = filter::trotter_filter(&h, &sch_one, alpha, &topts)?;
    let mut entries = Vec::new();
    let mut worst: Option<String> = None;
    for &m in &ms[1..] {
        let exact = vta_exact_displacement(&hp, alpha, m, d)?;
        let sch = Schedule { m, ..base };
        let circ = filter::trotter_filter(&h, &sch, alpha, &topts)?;
        let (de, dc) = (diff(&exact, &exact_one), diff(&circ, &circ_one));
        if worst.is_none() && (de > tol_exact || dc > tol_circuit) {
            worst = Some(format!("M={m}: exact {de:e}, compiled {dc:e}"));
        }
        entries.push(json!({ "M": m, "exact_deviation": de, "compiled_deviation": dc }));
    }
    let path = write_json(
        &opts.out,
        "parallel_check.json",
        json!({
            "description": "filter blocks with M oscillators at alpha/sqrt(M) against one oscillator at alpha",
            "alpha": alpha,
            "cutoff": d,
            "strict_phase": opts.strict_phase,
            "schedule": base,
            "tolerance": { "exact": tol_exact, "compiled": tol_circuit },
            "comparisons": entries,
        }),
    )?;
    match worst {
        Some(msg) => Err(CliError::Tolerance(msg)),
        None => Ok(vec![path]),
    }
}

fn povm(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?.dense_matrix();
    let tau = opts.config.alphas(AlphaSpec::List(vec![0.05]))?[0];
    let d = opts.cutoff().unwrap_or(40);
    let spec = &opts.config.povm;
    let dim = h.dim();

    let mut rows = Vec::new();
    let spectrum = |f: &QubitOperator| right_eigenvalues(f).iter().map(|z| fmt_f64(z.re)).collect::<Vec<_>>().join(",");
    for m in 0..spec.levels {
        let f = hermite_filter(&h, tau, m)?;
        rows.push(format!("fock,{m},{},{},{}", fmt_f64(0.0), fmt_f64(0.0), spectrum(&f)));
    }
    for (i, [re, im]) in spec.betas.iter().enumerate() {
        let f = coherent_filter(&h, tau, C64::new(*re, *im))?;
        rows.push(format!("coherent,{i},{},{},{}", fmt_f64(*re), fmt_f64(*im), spectrum(&f)));
    }
    let mut header = String::from("family,index,beta_re,beta_im");
    for k in 0..dim {
        header += &format!(",lambda_{k}");
    }
    let csv = write_csv(
        &opts.out,
        "povm.csv",
        "eigenvalues (real part) of the Fock-outcome and coherent-outcome filters",
        &header,
        &rows,
    )?;

    let deviation = completeness_check(&h, tau, d)?;
    let load = tau * h.spectral_norm();
    let tol = tolerance(opts, 1e-6);
    let json = write_json(
        &opts.out,
        "povm_completeness.json",
        json!({
            "tau": tau,
            "cutoff": d,
            "tau_norm": load,
            "deviation": deviation,
            "tolerance": tol,
        }),
    )?;
    if load <= 1.0 && deviation > tol {
        return Err(CliError::Tolerance(format!("completeness deviation {deviation:e} above {tol:e}")));
    }
    Ok(vec![csv, json])
}

fn loss_demo(opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let h = opts.config.hamiltonian()?.dense_matrix();
    let alphas = opts.config.alphas(AlphaSpec::List(vec![0.1]))?;
    let loss = &opts.config.loss;
    let psi = opts.config.input_state(h.dim())?;
    let tol = tolerance(opts, 1e-8);

    let jumps: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| loss.jump_fraction.iter().map(move |&f| (a, f))).collect();
    let reports = Exec::default().map(jumps.len(), |i| {
        let (a, f) = jumps[i];
        single_jump_trajectory(&h, a, f, &psi, opts.cutoff())
    });
    let mut entries = Vec::new();
    let mut worst: Option<String> = None;
    for ((a, f), r) in jumps.iter().zip(reports) {
        let r = r?;
        // the step must satisfy the short-time condition at the jump cutoff
        LossChannel::new(loss.kappa, loss.dt, r.cutoff).map_err(|e| CliError::Config(e.to_string()))?;
        if worst.is_none() && r.deviation > tol {
            worst = Some(format!("alpha {a}, f {f}: deviation {:e}", r.deviation));
        }
        entries.push(json!({
            "alpha": a,
            "jump_fraction": f,
            "cutoff": r.cutoff,
            "deviation": r.deviation,
            "weights": r.weights.iter().map(|(e, w)| json!([e, w.re, w.im])).collect::<Vec<_>>(),
        }));
    }
    let t = 1.0 / loss.kappa.max(f64::MIN_POSITIVE);
    let no_jump: Vec<Value> = alphas
        .iter()
        .map(|&a| {
            json!({
                "alpha": a,
                "T": t,
                "alpha_eff": no_jump_alpha_exact(a, loss.kappa, t),
                "alpha_rescaled": no_jump_rescaling(a, loss.kappa, t),
            })
        })
        .collect();
    let orb = orb_identity(&h, alphas[0], opts.cutoff().unwrap_or(40), loss.samples, opts.seed(), Exec::default())?;
    let path = write_json(
        &opts.out,
        "loss_demo.json",
        json!({
            "description": "single photon-loss trajectories against the rescaled-amplitude prediction",
            "kappa": loss.kappa,
            "dt": loss.dt,
            "seed": opts.seed(),
            "tolerance": tol,
            "jumps": entries,
            "no_jump": no_jump,
            "orb": {
                "samples": orb.samples,
                "deviation": orb.deviation,
                "standard_error": orb.standard_error,
                "deterministic": orb.deterministic,
            },
        }),
    )?;
    match worst {
        Some(msg) => Err(CliError::Tolerance(msg)),
        None => Ok(vec![path]),
    }
}
