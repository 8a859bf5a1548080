//! `softpulse` command-line front end.
//!
//! All frequencies on the command line and in output are cyclic (Hz); the
//! library works in rad/s. Exit codes: 0 success, 1 computation error,
//! 2 usage or input-file error.

pub mod format;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use softpulse::bloch_siegert::bs_report;
use softpulse::config::{parse_config, parse_config_str, ConfigError, MoleculeConfig};
use softpulse::design::{
    denormalize, landscape_scan, min_valid_n, optimize_fidelity, propagator_fidelity, soft_amplitude,
    verify_cancellation, UNITARY_TOL,
};
use softpulse::pulse::{propagate, refocusing_sequence, Model, PulseSegment, PulseSequence};
use softpulse::qec::{operator_identity_check, recovery_statistics, CorrelatedChannel, RECOVERY_SEED};
use softpulse::spin::{target_common_frame_alpha, target_entangler, Qubit, Spectator, TWO_PI};
use softpulse::SpinChainParams;

use format::{num, parse_angle, parse_probs, sig6};

const BUNDLED_ALANINE: &str = include_str!("../configs/alanine.json");

/// Tolerance for the operator identities reported by `qec`.
const IDENTITY_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "softpulse", version, about = "Soft-pulse entangler design for three-spin chains")]
struct Cli {
    /// Molecule parameter file (JSON). Defaults to the bundled alanine values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bloch-Siegert phase table for both spectators (CSV).
    Bs(BsArgs),
    /// Soft-pulse amplitude and duration for a target angle (JSON).
    Solve(SolveArgs),
    /// Propagate a pulse schedule and score it against the entangler (JSON).
    Simulate(SimulateArgs),
    /// Fidelity on a uniform (tau~, omega~) grid (CSV).
    Landscape(LandscapeArgs),
    /// Grid scan plus simplex refinement of the refocusing fidelity (JSON).
    Optimize,
    /// Operator identities and recovery statistics of the correlated-noise code (JSON).
    Qec(QecArgs),
}

#[derive(Args, Debug)]
struct BsArgs {
    /// Rf amplitude in Hz.
    #[arg(long, default_value_t = 714.0, conflicts_with = "soft")]
    omega_hz: f64,
    /// Pulse length in ms.
    #[arg(long, default_value_t = 0.7, conflicts_with = "soft")]
    tau_ms: f64,
    /// Use the soft-pulse solution for --alpha instead of --omega-hz/--tau-ms.
    #[arg(long)]
    soft: bool,
    /// Target angle for --soft.
    #[arg(long, default_value = "pi", value_parser = parse_angle, allow_hyphen_values = true)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Target angle, e.g. `pi`, `pi/2`, `1.2`.
    #[arg(long, default_value = "pi", value_parser = parse_angle, allow_hyphen_values = true)]
    alpha: f64,
    /// Branch index; defaults to the smallest valid one.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("schedule").required(true).args(["sequence", "tau_tilde"])))]
struct SimulateArgs {
    /// JSON array of segments {duration_s, amplitude_hz, phase_rad, model[, carrier]}.
    #[arg(long, value_name = "PATH")]
    sequence: Option<PathBuf>,
    /// Refocusing sequence with normalized pulse width (full model, alpha = pi).
    #[arg(long, requires = "omega_tilde", conflicts_with = "alpha")]
    tau_tilde: Option<f64>,
    /// Normalized amplitude for --tau-tilde.
    #[arg(long, requires = "tau_tilde")]
    omega_tilde: Option<f64>,
    /// Entangling angle of the target for --sequence.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    alpha: Option<f64>,
}

#[derive(Args, Debug)]
struct LandscapeArgs {
    /// Number of tau~ samples.
    #[arg(long, default_value_t = 101)]
    nx: usize,
    /// Number of omega~ samples.
    #[arg(long, default_value_t = 101)]
    ny: usize,
}

#[derive(Args, Debug)]
struct QecArgs {
    /// Ideal entanglers (default).
    #[arg(long, conflicts_with = "full")]
    ideal: bool,
    /// Soft-pulse entanglers simulated in the full model.
    #[arg(long)]
    full: bool,
    /// Channel probabilities p0,p1,p2,p3.
    #[arg(long, value_parser = parse_probs, default_value = "0.25,0.25,0.25,0.25")]
    probs: [f64; 4],
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = RECOVERY_SEED)]
    seed: u64,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Compute(softpulse::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<softpulse::Error> for CliError {
    fn from(e: softpulse::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Input(format!("config: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("output: {e}"))
    }
}

type CliResult = Result<(), CliError>;

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Input(_) => 2,
                CliError::Compute(_) => 1,
            }
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<MoleculeConfig, CliError> {
    Ok(match path {
        Some(p) => parse_config(p)?,
        None => parse_config_str(BUNDLED_ALANINE)?,
    })
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let params = load_config(cli.config.as_deref())?.to_params();
    match &cli.command {
        Command::Bs(a) => cmd_bs(&params, a, out),
        Command::Solve(a) => cmd_solve(&params, a, out),
        Command::Simulate(a) => cmd_simulate(&params, a, out),
        Command::Landscape(a) => cmd_landscape(&params, a, out, err),
        Command::Optimize => cmd_optimize(&params, out),
        Command::Qec(a) => cmd_qec(&params, a, out),
    }
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) -> CliResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_bs(p: &SpinChainParams, a: &BsArgs, out: &mut dyn Write) -> CliResult {
    let (omega1, tau) = if a.soft {
        let n = min_valid_n(a.alpha, p.j12, p.j23)?;
        let s = soft_amplitude(a.alpha, p.j12, p.j23, n)?;
        (s.omega_plus, s.tau)
    } else {
        if !(a.tau_ms >= 0.0) || !a.omega_hz.is_finite() {
            return Err(CliError::Input("--tau-ms must be >= 0 and --omega-hz finite".into()));
        }
        (a.omega_hz * TWO_PI, a.tau_ms * 1e-3)
    };
    writeln!(out, "spectator,epsilon,approx_rad,exact_rad,rel_err")?;
    for s in [Spectator::Two, Spectator::Three] {
        let r = bs_report(p, omega1, tau, s)?;
        writeln!(
            out,
            "{},{},{},{},{}",
            r.spectator,
            num(r.epsilon),
            num(r.approx_phase),
            num(r.exact_phase),
            num(r.relative_error)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveReport {
    n: u32,
    omega1_hz: f64,
    omega_minus_hz: f64,
    tau_ms: f64,
    alpha_rad: f64,
    cancellation_ok: bool,
    cancellation_phase_rad: f64,
    cancellation_residual: f64,
    bs_qubit2_rad: f64,
    bs_qubit3_rad: f64,
}

fn cmd_solve(p: &SpinChainParams, a: &SolveArgs, out: &mut dyn Write) -> CliResult {
    let n = match a.n {
        Some(n) => n,
        None => min_valid_n(a.alpha, p.j12, p.j23)?,
    };
    let s = soft_amplitude(a.alpha, p.j12, p.j23, n)?;
    let c = verify_cancellation(s.omega_plus, a.alpha, p, UNITARY_TOL)?;
    let q2 = bs_report(p, s.omega_plus, s.tau, Spectator::Two)?;
    let q3 = bs_report(p, s.omega_plus, s.tau, Spectator::Three)?;
    emit_json(
        &SolveReport {
            n: s.n,
            omega1_hz: sig6(s.omega_plus / TWO_PI),
            omega_minus_hz: sig6(s.omega_minus / TWO_PI),
            tau_ms: sig6(s.tau * 1e3),
            alpha_rad: sig6(a.alpha),
            cancellation_ok: c.ok,
            cancellation_phase_rad: sig6(c.phase),
            cancellation_residual: sig6(c.residual),
            bs_qubit2_rad: sig6(q2.approx_phase),
            bs_qubit3_rad: sig6(q3.approx_phase),
        },
        out,
    )
}

fn default_carrier() -> usize {
    1
}

/// One schedule entry as read from and written to JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentSpec {
    duration_s: f64,
    amplitude_hz: f64,
    phase_rad: f64,
    model: Model,
    #[serde(default = "default_carrier")]
    carrier: usize,
}

impl SegmentSpec {
    fn to_segment(&self) -> Result<PulseSegment, CliError> {
        let carrier = Qubit::from_index(self.carrier).map_err(|e| CliError::Input(format!("sequence: {e}")))?;
        Ok(
            PulseSegment::pulse(self.duration_s, self.amplitude_hz * TWO_PI, self.phase_rad, self.model)
                .with_carrier(carrier),
        )
    }

    fn from_segment(s: &PulseSegment) -> Self {
        Self {
            duration_s: sig6(s.duration),
            amplitude_hz: sig6(s.amplitude / TWO_PI),
            phase_rad: sig6(s.phase),
            model: s.model,
            carrier: s.carrier.index(),
        }
    }
}

#[derive(Serialize)]
struct SimulateReport {
    model: Model,
    alpha_rad: f64,
    total_duration_s: f64,
    fidelity: f64,
    unitarity_error: f64,
    segments: Vec<SegmentSpec>,
}

fn read_sequence(path: &Path) -> Result<PulseSequence, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let specs: Vec<SegmentSpec> = serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!(
            "sequence {}: line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    if specs.is_empty() {
        return Err(CliError::Input("sequence: no segments".into()));
    }
    let segments = specs.iter().map(SegmentSpec::to_segment).collect::<Result<Vec<_>, _>>()?;
    PulseSequence::new(segments).map_err(|e| CliError::Input(format!("sequence: {e}")))
}

fn cmd_simulate(p: &SpinChainParams, a: &SimulateArgs, out: &mut dyn Write) -> CliResult {
    let (seq, alpha) = match (&a.sequence, a.tau_tilde, a.omega_tilde) {
        (Some(path), _, _) => (read_sequence(path)?, a.alpha.unwrap_or(std::f64::consts::PI)),
        (None, Some(tt), Some(wt)) => {
            if !(0.0..=1.0).contains(&tt) || !(0.0..=1.0).contains(&wt) {
                return Err(CliError::Input("--tau-tilde and --omega-tilde must lie in [0, 1]".into()));
            }
            let (tau, omega1) = denormalize(tt, wt, p);
            (refocusing_sequence(p.gate_time(), tau, omega1, Model::Full)?, std::f64::consts::PI)
        }
        _ => return Err(CliError::Input("give --sequence or --tau-tilde with --omega-tilde".into())),
    };
    let model = seq.model().unwrap_or(Model::Full);
    let u = propagate(&seq, p)?;
    let target = match model {
        Model::Full => target_common_frame_alpha(p, alpha),
        Model::Reduced => target_entangler(alpha)?,
    };
    emit_json(
        &SimulateReport {
            model,
            alpha_rad: sig6(alpha),
            total_duration_s: sig6(seq.total_duration()),
            fidelity: sig6(propagator_fidelity(&target, &u)?),
            unitarity_error: sig6(u.unitarity_error()),
            segments: seq.segments().iter().map(SegmentSpec::from_segment).collect(),
        },
        out,
    )
}

fn cmd_landscape(p: &SpinChainParams, a: &LandscapeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let grid = landscape_scan(p, a.nx, a.ny)?;
    writeln!(
        err,
        "note: tau_tilde=0 is a zero-length pulse, so that row is free evolution for every omega_tilde"
    )?;
    writeln!(out, "tau_tilde,omega_tilde,fidelity")?;
    for s in &grid.samples {
        writeln!(out, "{},{},{}", num(s.tau_tilde), num(s.omega_tilde), num(s.fidelity))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GridBest {
    tau_tilde: f64,
    omega_tilde: f64,
    fidelity: f64,
}

#[derive(Serialize)]
struct OptimizeReport {
    tau_tilde: f64,
    omega_tilde: f64,
    fidelity: f64,
    tau_s: f64,
    omega1_hz: f64,
    grid_best: GridBest,
    evaluations: usize,
}

fn cmd_optimize(p: &SpinChainParams, out: &mut dyn Write) -> CliResult {
    let opt = optimize_fidelity(p)?;
    let (tau, omega1) = opt.physical(p);
    emit_json(
        &OptimizeReport {
            tau_tilde: sig6(opt.tau_tilde),
            omega_tilde: sig6(opt.omega_tilde),
            fidelity: sig6(opt.fidelity),
            tau_s: sig6(tau),
            omega1_hz: sig6(omega1 / TWO_PI),
            grid_best: GridBest {
                tau_tilde: sig6(opt.grid_best.tau_tilde),
                omega_tilde: sig6(opt.grid_best.omega_tilde),
                fidelity: sig6(opt.grid_best.fidelity),
            },
            evaluations: opt.evaluations,
        },
        out,
    )
}

#[derive(Serialize)]
struct IdentityReport {
    index: usize,
    holds: bool,
    residual: f64,
    phase_rad: f64,
}

#[derive(Serialize)]
struct QecReport {
    mode: &'static str,
    probabilities: Vec<f64>,
    trials: usize,
    seed: u64,
    identities: Vec<IdentityReport>,
    recovery_min: f64,
    recovery_mean: f64,
}

fn cmd_qec(p: &SpinChainParams, a: &QecArgs, out: &mut dyn Write) -> CliResult {
    let channel = CorrelatedChannel::new(a.probs).map_err(|e| CliError::Input(format!("--probs: {e}")))?;
    if a.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let ideal = !a.full;
    let stats = recovery_statistics(p, &channel, a.trials, ideal, a.seed)?;
    let identities = operator_identity_check(IDENTITY_TOL)
        .into_iter()
        .map(|c| IdentityReport {
            index: c.index,
            holds: c.holds,
            residual: sig6(c.residual),
            phase_rad: sig6(c.phase),
        })
        .collect();
    emit_json(
        &QecReport {
            mode: if ideal { "ideal" } else { "full" },
            probabilities: channel.probabilities().iter().map(|&x| sig6(x)).collect(),
            trials: stats.trials,
            seed: a.seed,
            identities,
            recovery_min: sig6(stats.min),
            recovery_mean: sig6(stats.mean),
        },
        out,
    )
}
