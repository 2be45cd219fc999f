//! Subcommand implementations.

use std::fmt;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use rayon::prelude::*;
use skewrel::relations::{sweep_grid, zx_bases};
use skewrel::states::{self, random_basis_with, random_density_with, random_hermitian_with};
use skewrel::{
    check_luo, check_theorem, herm_eig, kron, minimize_q, werner_row, ComplexMatrix64,
    DensityMatrix64, ProjectiveBasis64, QOptions, RelationReport64, StateRng, SweepRow64,
};

use crate::output::{sig12, sweep_csv, sweep_svg};
use crate::{BasesPreset, CheckArgs, QcorrArgs, RandomArgs, SweepArgs};

/// A relation counts as violated when its slack falls below this.
pub const VIOLATION_TOL: f64 = 1e-6;
/// Minimum eigenvalue gap for an observable to define a unique eigenbasis.
const DEGENERACY_GAP: f64 = 1e-9;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

type CliResult<T = ExitCode> = Result<T, CliError>;

fn failed(e: skewrel::Error) -> CliError {
    CliError::Failed(e.to_string())
}

/// Input-file errors: unreadable files are I/O failures, malformed ones are usage errors.
fn input_error(path: &Path, e: skewrel::Error) -> CliError {
    match e {
        skewrel::Error::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        other => CliError::Usage(format!("{}: {other}", path.display())),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn thread_pool(jobs: Option<usize>) -> CliResult<rayon::ThreadPool> {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Failed(format!("cannot start worker threads: {e}")))
}

fn q_options(restarts: usize, tolerance: f64, seed: u64) -> CliResult<QOptions> {
    let opts = QOptions {
        restarts,
        tolerance,
        seed,
        ..QOptions::default()
    };
    opts.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(opts)
}

fn require_q_dim(dim_a: usize) -> CliResult<()> {
    if matches!(dim_a, 2 | 3) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "Q minimization supports dim_a in {{2, 3}}, got {dim_a}"
        )))
    }
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn werner_sweep(a: &SweepArgs) -> CliResult {
    if a.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {}",
            a.steps
        )));
    }
    if !(-1.0..=1.0).contains(&a.p_min) || !(-1.0..=1.0).contains(&a.p_max) || a.p_min >= a.p_max {
        return Err(CliError::Usage(format!(
            "need -1 <= --p-min < --p-max <= 1, got {} and {}",
            a.p_min, a.p_max
        )));
    }
    let qopts = q_options(a.q_restarts, QOptions::default().tolerance, a.seed)?;
    let pool = thread_pool(a.jobs)?;
    let grid = sweep_grid(a.p_min, a.p_max, a.steps).map_err(|e| CliError::Usage(e.to_string()))?;
    let rows: Vec<SweepRow64> = pool
        .install(|| {
            grid.par_iter()
                .map(|&p| werner_row(p, &qopts))
                .collect::<Result<_, _>>()
        })
        .map_err(failed)?;

    write_file(&a.out, &sweep_csv(&rows))?;
    if let Some(svg) = &a.svg {
        write_file(svg, &sweep_svg(&rows))?;
    }

    let max = |f: fn(&SweepRow64) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    eprintln!(
        "werner-sweep: {} points, max |num - closed|: thm_lhs={} thm_rhs={} luo_lhs={} ent_lhs={}; \
         max L_sum={}; unconverged Q={}",
        rows.len(),
        sig12(max(|r| r.thm_lhs_delta())),
        sig12(max(|r| r.thm_rhs_delta())),
        sig12(max(|r| r.luo_lhs_delta())),
        sig12(max(|r| r.ent_lhs_delta())),
        sig12(max(|r| r.l_sum.abs())),
        rows.iter().filter(|r| !r.q_converged).count(),
    );
    Ok(ExitCode::SUCCESS)
}

/// Eigenbasis of an observable on subsystem A, rejecting degenerate spectra.
fn observable_basis(name: &str, h: &ComplexMatrix64, dim_a: usize) -> CliResult<ProjectiveBasis64> {
    if h.dim() != dim_a {
        return Err(CliError::Usage(format!(
            "{name}: observable has dimension {} but subsystem A has dimension {dim_a}",
            h.dim()
        )));
    }
    let eig = herm_eig(h).map_err(failed)?;
    let gap = eig
        .eigenvalues
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if gap < DEGENERACY_GAP {
        return Err(CliError::Usage(format!(
            "{name}: spectrum is degenerate (gap {}), so its eigenbasis is not unique",
            sig12(gap)
        )));
    }
    ProjectiveBasis64::eigenbasis(h).map_err(failed)
}

fn print_report(title: &str, rep: &RelationReport64) {
    println!("{title}");
    println!("  lhs = {}", sig12(rep.lhs));
    println!("  rhs = {}", sig12(rep.rhs));
    println!("  slack = {}", sig12(rep.slack));
    for (k, v) in &rep.terms {
        println!("  {k} = {}", sig12(*v));
    }
    if rep.degenerate {
        println!("  note: an L term had a vanishing denominator and was set to 0");
    }
}

pub fn check(a: &CheckArgs) -> CliResult {
    let rho: DensityMatrix64 =
        states::load_state(&a.state).map_err(|e| input_error(&a.state, e))?;
    let (da, db) = (rho.dim_a(), rho.dim_b());
    require_q_dim(da)?;
    let qopts = q_options(a.q_restarts, QOptions::default().tolerance, a.seed)?;

    let (r, s, phi, psi) = match (&a.bases, &a.obs_a, &a.obs_b) {
        (Some(BasesPreset::Zx), _, _) => {
            let (phi, psi) = if da == 2 {
                zx_bases()
            } else {
                (
                    ProjectiveBasis64::computational(da),
                    ProjectiveBasis64::fourier(da),
                )
            };
            let spectrum: Vec<f64> = (0..da)
                .map(|k| (da as f64 - 1.0) - 2.0 * k as f64)
                .collect();
            let r = phi.observable(&spectrum).map_err(failed)?;
            let s = psi.observable(&spectrum).map_err(failed)?;
            (r, s, phi, psi)
        }
        (None, Some(pa), Some(pb)) => {
            let r: ComplexMatrix64 = states::load_observable(pa).map_err(|e| input_error(pa, e))?;
            let s: ComplexMatrix64 = states::load_observable(pb).map_err(|e| input_error(pb, e))?;
            let phi = observable_basis("--obs-a", &r, da)?;
            let psi = observable_basis("--obs-b", &s, da)?;
            (r, s, phi, psi)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --obs-a and --obs-b, or --bases".into(),
            ))
        }
    };

    let id_b = ComplexMatrix64::identity(db);
    let luo = check_luo(&rho, &kron(&r, &id_b), &kron(&s, &id_b)).map_err(failed)?;
    let thm = check_theorem(&rho, &phi, &psi, &qopts).map_err(failed)?;

    println!("state: dim_a={da} dim_b={db}");
    print_report(
        "relation UN(R)*UN(S) >= |Tr(rho [R,S])|^2 / 4  (R, S act on A)",
        &luo,
    );
    print_report(
        "relation sum_k UN(phi_k) + sum_k UN(psi_k) >= 2*L_sum + 2*Q",
        &thm,
    );
    if thm.terms["Q_converged"] == 0.0 {
        eprintln!(
            "warning: Q restarts disagree by {}; Q may be overestimated",
            sig12(thm.terms["Q_spread"])
        );
    }
    println!(
        "SLACK_EQ1={} SLACK_EQ3={}",
        sig12(luo.slack),
        sig12(thm.slack)
    );
    Ok(exit_for(
        luo.holds(VIOLATION_TOL) && thm.holds(VIOLATION_TOL),
    ))
}

fn complex_str(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() && im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{}{sign}{}i", sig12(re), sig12(im.abs()))
}

pub fn qcorr(a: &QcorrArgs) -> CliResult {
    let rho: DensityMatrix64 =
        states::load_state(&a.state).map_err(|e| input_error(&a.state, e))?;
    require_q_dim(rho.dim_a())?;
    let qopts = q_options(a.restarts, a.tol, a.seed)?;
    let q = minimize_q(&rho, &qopts).map_err(failed)?;

    println!("Q = {}", sig12(q.value));
    println!("converged = {}", q.converged);
    println!("spread = {}", sig12(q.spread));
    println!("restarts = {}", q.restarts_used);
    println!("evaluations = {}", q.evaluations);
    let values: Vec<String> = q.restart_values.iter().map(|&v| sig12(v)).collect();
    println!("restart_values = {}", values.join(","));
    for (k, v) in q.argmin.vectors().iter().enumerate() {
        let comps: Vec<String> = v.iter().map(|c| complex_str(c.re, c.im)).collect();
        println!("argmin[{k}] = ({})", comps.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

struct SampleResult {
    slack_luo: f64,
    slack_thm: f64,
}

fn random_sample(a: &RandomArgs, qopts: &QOptions, i: usize) -> skewrel::Result<SampleResult> {
    let mut rng = StateRng::new(a.seed, i as u64);
    let (da, db) = (a.dim_a, a.dim_b);
    let rho = random_density_with::<f64>(da * db, &mut rng).with_split(da, db)?;
    let id_b = ComplexMatrix64::identity(db);
    let r = kron(&random_hermitian_with(da, &mut rng), &id_b);
    let s = kron(&random_hermitian_with(da, &mut rng), &id_b);
    let phi = random_basis_with(da, &mut rng);
    let psi = random_basis_with(da, &mut rng);
    Ok(SampleResult {
        slack_luo: check_luo(&rho, &r, &s)?.slack,
        slack_thm: check_theorem(&rho, &phi, &psi, qopts)?.slack,
    })
}

pub fn random_verify(a: &RandomArgs) -> CliResult {
    require_q_dim(a.dim_a)?;
    if !(1..=4).contains(&a.dim_b) {
        return Err(CliError::Usage(format!(
            "--dim-b must be in 1..=4, got {}",
            a.dim_b
        )));
    }
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let qopts = q_options(a.q_restarts, QOptions::default().tolerance, a.seed)?;
    let pool = thread_pool(a.jobs)?;
    let results: Vec<SampleResult> = pool
        .install(|| {
            (0..a.samples)
                .into_par_iter()
                .map(|i| random_sample(a, &qopts, i))
                .collect::<Result<_, _>>()
        })
        .map_err(failed)?;

    let mut worst = (f64::INFINITY, f64::INFINITY);
    let mut violations = (0usize, 0usize);
    for (i, r) in results.iter().enumerate() {
        println!(
            "sample {i}: slack_eq1={} slack_eq3={} worst={}",
            sig12(r.slack_luo),
            sig12(r.slack_thm),
            sig12(r.slack_luo.min(r.slack_thm))
        );
        worst = (worst.0.min(r.slack_luo), worst.1.min(r.slack_thm));
        violations.0 += usize::from(r.slack_luo < -VIOLATION_TOL);
        violations.1 += usize::from(r.slack_thm < -VIOLATION_TOL);
    }
    println!(
        "samples={} worst_slack_eq1={} worst_slack_eq3={} violations_eq1={} violations_eq3={}",
        results.len(),
        sig12(worst.0),
        sig12(worst.1),
        violations.0,
        violations.1
    );
    Ok(exit_for(violations == (0, 0)))
}
