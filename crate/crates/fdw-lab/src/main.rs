//! Command-line front end for the damped fractional wave laboratory.
//!
//! Exit codes: 0 success, 1 at least one experiment verdict failed,
//! 2 invalid configuration or arguments.

mod configfile;
mod data;
mod runner;

use clap::{Args, Parser, Subcommand};
use fdw_core::norms::{NormSpec, Weight};
use fdw_core::solver::NonlinearityKind;
use runner::{execute, parse_axis, Kind, Resolved, RunError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fdw-lab",
    version,
    about = "Spectral experiments for the damped fractional wave equation",
    after_help = "Run `fdw-lab list` for the experiment catalog and `fdw-lab describe <kind>` \
                  for what each one checks."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GridArgs {
    /// spatial dimension (1, 2 or 3)
    #[arg(long = "n")]
    n: Option<usize>,
    /// grid points per axis (power of two >= 16)
    #[arg(long)]
    points: Option<usize>,
    /// box half-width L (domain is [-L, L)^n)
    #[arg(long = "half-width")]
    half_width: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct SolverArgs {
    /// diffusion strength sigma > 0
    #[arg(long)]
    sigma: Option<f64>,
    /// time step
    #[arg(long)]
    dt: Option<f64>,
    /// final time
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// nonlinearity kind: none | absolute | signed
    #[arg(long)]
    nonlinearity: Option<String>,
    /// nonlinearity power rho > 1
    #[arg(long)]
    rho: Option<f64>,
    /// focusing sign (+1 or -1)
    #[arg(long)]
    sign: Option<f64>,
    /// sup-norm blow-up threshold
    #[arg(long = "blowup-threshold")]
    blowup_threshold: Option<f64>,
    /// dealiasing fraction of the band edge, (0, 1]
    #[arg(long)]
    dealias: Option<f64>,
    /// snapshot stride in steps
    #[arg(long = "snapshot-stride")]
    snapshot_stride: Option<usize>,
    /// order of the recorded homogeneous Sobolev norm column
    #[arg(long = "norm-s")]
    norm_s: Option<f64>,
    /// exponent of the recorded |x|^alpha-weighted norm column
    #[arg(long = "norm-alpha")]
    norm_alpha: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct DataArgs {
    /// data profile: gaussian | bump | packet | bimodal | lorentzian | sech | singular | noise
    #[arg(long = "data")]
    profile: Option<String>,
    /// amplitude of u0
    #[arg(long)]
    amp: Option<f64>,
    /// profile width
    #[arg(long)]
    width: Option<f64>,
    /// profile center (gaussian) or separation (bimodal)
    #[arg(long)]
    center: Option<f64>,
    /// modulation frequency (packet)
    #[arg(long)]
    k: Option<f64>,
    /// amplitude of u1 (same profile)
    #[arg(long = "u1-amp")]
    u1_amp: Option<f64>,
    /// seed for the noise profile
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug, Default)]
struct OutputArgs {
    /// output directory (default $FDW_LAB_OUT/<kind> or ./fdw-lab-runs/<kind>)
    #[arg(long)]
    out: Option<PathBuf>,
    /// overwrite an existing output directory
    #[arg(long)]
    force: bool,
    /// write a companion gnuplot script
    #[arg(long = "emit-gnuplot")]
    emit_gnuplot: bool,
    /// worker threads for scans
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the exact linear propagator and record norms over time
    Propagate {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// sample times: start:end:step or comma list
        #[arg(long)]
        times: Option<String>,
    },
    /// Integrate the semilinear problem and record the trajectory
    Solve {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit a linear decay slope against its predicted exponent
    Decay {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Lebesgue exponent of the fitted norm (inf for the sup norm)
        #[arg(long, default_value = "2")]
        p: String,
        /// fit window start:end (default t_end/10 : t_end)
        #[arg(long)]
        window: Option<String>,
        /// slope tolerance
        #[arg(long, default_value_t = 0.1)]
        tol: f64,
    },
    /// Measure the scaled distance to mass x heat kernel
    Diffusion {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Lebesgue exponent
        #[arg(long, default_value = "2")]
        p: String,
        /// sample times
        #[arg(long)]
        times: Option<String>,
    },
    /// Check the pointwise low-frequency kernel bounds
    #[command(name = "kernel-check")]
    KernelCheck {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// bound branch: late (t >= 1) or early (t <= 1)
        #[arg(long, default_value = "late")]
        branch: String,
        /// weight exponent override (even sigma)
        #[arg(long = "j")]
        weight_exponent: Option<f64>,
        /// times: start:end:step or comma list (default dyadic)
        #[arg(long)]
        times: Option<String>,
        /// stability bound on max/min ratio
        #[arg(long = "stability-bound", default_value_t = 4.0)]
        stability_bound: f64,
    },
    /// Scan nonlinearity powers and bracket the blow-up/global boundary
    #[command(name = "critexp-scan")]
    CritexpScan {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// rho axis: start:end:step or comma list
        #[arg(long)]
        rho: Option<String>,
        /// data amplitude for every cell
        #[arg(long)]
        amp: Option<f64>,
    },
    /// Check the smoothing decay envelope on the analytic corpus
    #[command(name = "smoothing-check")]
    SmoothingCheck {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// derivative order on the evolved side
        #[arg(long, default_value_t = 1.0)]
        s1: f64,
        /// regularity of the data norm
        #[arg(long, default_value_t = 0.0)]
        s2: f64,
        /// Lebesgue exponent of the data norm, [1, 2]
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// sample times
        #[arg(long)]
        times: Option<String>,
        /// bound on the ratio spread
        #[arg(long = "spread-bound", default_value_t = 8.0)]
        spread_bound: f64,
    },
    /// Evaluate a norm of a field file and print the number
    Norms {
        /// field CSV (header x1[,x2[,x3]],value)
        #[arg(long)]
        input: PathBuf,
        /// norm kind: lp | sobolev | sobolev-inhom | weighted | weighted-plain |
        /// besov | besov-inhom | besov-diff | x0 | y0
        #[arg(long)]
        norm: String,
        /// Lebesgue exponent (inf allowed)
        #[arg(long)]
        p: Option<String>,
        /// summation exponent of Besov norms
        #[arg(long)]
        q: Option<String>,
        /// smoothness order
        #[arg(long)]
        s: Option<f64>,
        /// weight exponent
        #[arg(long)]
        alpha: Option<f64>,
        /// auxiliary Lebesgue exponent of the Y0 norm
        #[arg(long)]
        gamma: Option<f64>,
        /// sigma entering q_sigma of the Y0 norm
        #[arg(long)]
        sigma: Option<f64>,
        /// difference order m (1 or 2) for besov-diff
        #[arg(long)]
        m: Option<u32>,
    },
    /// Run an experiment described by a config file
    Run {
        /// sectioned key = value config file
        config: PathBuf,
        /// overwrite an existing output directory
        #[arg(long)]
        force: bool,
    },
    /// List the available experiments
    List,
    /// Explain what an experiment checks
    Describe {
        /// experiment name
        experiment: String,
    },
}

fn parse_p(text: &str) -> Result<f64, String> {
    match text {
        "inf" | "Inf" | "infinity" => Ok(f64::INFINITY),
        other => other
            .parse::<f64>()
            .map_err(|e| format!("invalid exponent `{other}`: {e}")),
    }
}

fn apply_grid(resolved: &mut Resolved, grid: &GridArgs) {
    if let Some(n) = grid.n {
        resolved.grid_dim = n;
    }
    if let Some(p) = grid.points {
        resolved.grid_points = p;
    }
    if let Some(l) = grid.half_width {
        resolved.grid_half_width = l;
    }
}

fn apply_solver(resolved: &mut Resolved, solver: &SolverArgs) -> Result<(), String> {
    if let Some(s) = solver.sigma {
        resolved.solver.sigma = s;
    }
    if let Some(dt) = solver.dt {
        resolved.solver.dt = dt;
    }
    if let Some(t) = solver.t_end {
        resolved.solver.t_end = t;
    }
    if let Some(kind) = &solver.nonlinearity {
        resolved.solver.nonlinearity.kind = match kind.as_str() {
            "none" => NonlinearityKind::None,
            "absolute" | "abs" => NonlinearityKind::Absolute,
            "signed" => NonlinearityKind::Signed,
            other => return Err(format!("unknown nonlinearity `{other}`")),
        };
    }
    if let Some(rho) = solver.rho {
        resolved.solver.nonlinearity.rho = rho;
        if resolved.solver.nonlinearity.kind == NonlinearityKind::None {
            resolved.solver.nonlinearity.kind = NonlinearityKind::Absolute;
        }
    }
    if let Some(sign) = solver.sign {
        resolved.solver.nonlinearity.sign = sign;
    }
    if let Some(v) = solver.blowup_threshold {
        resolved.solver.blowup_threshold = v;
    }
    if let Some(v) = solver.dealias {
        resolved.solver.dealias = v;
    }
    if let Some(v) = solver.snapshot_stride {
        resolved.solver.snapshot_stride = v;
    }
    if let Some(v) = solver.norm_s {
        resolved.solver.norm_s = v;
    }
    if let Some(v) = solver.norm_alpha {
        resolved.solver.norm_alpha = v;
    }
    Ok(())
}

fn apply_data(resolved: &mut Resolved, data: &DataArgs) {
    if let Some(p) = &data.profile {
        resolved.data.profile = p.clone();
    }
    if let Some(v) = data.amp {
        resolved.data.amplitude = v;
    }
    if let Some(v) = data.width {
        resolved.data.width = v;
    }
    if let Some(v) = data.center {
        resolved.data.center = v;
    }
    if let Some(v) = data.k {
        resolved.data.k = v;
    }
    if let Some(v) = data.u1_amp {
        resolved.data.u1_amplitude = v;
    }
    if let Some(v) = data.seed {
        resolved.data.seed = v;
    }
}

fn apply_output(resolved: &mut Resolved, output: &OutputArgs) {
    if let Some(dir) = &output.out {
        resolved.out_dir = dir.clone();
    }
    resolved.force = output.force;
    resolved.emit_gnuplot = output.emit_gnuplot;
    if let Some(j) = output.jobs {
        resolved.jobs = j;
    }
}

fn apply_times(resolved: &mut Resolved, times: &Option<String>) -> Result<(), String> {
    if let Some(text) = times {
        resolved.times = parse_axis(text)?;
    }
    Ok(())
}

fn apply_window(resolved: &mut Resolved, window: &Option<String>) -> Result<(), String> {
    if let Some(text) = window {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 2 {
            return Err(format!("window must be start:end, got `{text}`"));
        }
        let a: f64 = parts[0].parse().map_err(|e| format!("{e}"))?;
        let b: f64 = parts[1].parse().map_err(|e| format!("{e}"))?;
        resolved.window = (a, b);
    }
    Ok(())
}

fn build_norm_spec(
    norm: &str,
    p: Option<f64>,
    q: Option<f64>,
    s: Option<f64>,
    alpha: Option<f64>,
    gamma: Option<f64>,
    sigma: Option<f64>,
    m: Option<u32>,
) -> Result<(NormSpec, Option<u32>), String> {
    let p_or = |d: f64| p.unwrap_or(d);
    let q_or = |d: f64| q.unwrap_or(d);
    let s_or = |d: f64| s.unwrap_or(d);
    let spec = match norm {
        "lp" => (NormSpec::Lp { p: p_or(2.0) }, None),
        "sobolev" => (NormSpec::SobolevHom { s: s_or(1.0) }, None),
        "sobolev-inhom" => (NormSpec::SobolevInhom { s: s_or(1.0) }, None),
        "weighted" => (
            NormSpec::WeightedL2 {
                alpha: alpha.unwrap_or(1.0),
                weight: Weight::Japanese,
            },
            None,
        ),
        "weighted-plain" => (
            NormSpec::WeightedL2 {
                alpha: alpha.unwrap_or(1.0),
                weight: Weight::Plain,
            },
            None,
        ),
        "besov" => (
            NormSpec::BesovHom {
                s: s_or(0.5),
                p: p_or(2.0),
                q: q_or(2.0),
            },
            None,
        ),
        "besov-inhom" => (
            NormSpec::BesovInhom {
                s: s_or(0.5),
                p: p_or(2.0),
                q: q_or(2.0),
            },
            None,
        ),
        "besov-diff" => (
            NormSpec::BesovHom {
                s: s_or(0.5),
                p: p_or(2.0),
                q: q_or(2.0),
            },
            Some(m.unwrap_or(1)),
        ),
        "x0" => (
            NormSpec::X0 {
                s: s_or(1.0),
                alpha: alpha.unwrap_or(1.0),
            },
            None,
        ),
        "y0" => (
            NormSpec::Y0 {
                s: s_or(0.0),
                alpha: alpha.unwrap_or(0.0),
                gamma: gamma.unwrap_or(1.0),
                sigma: sigma.unwrap_or(2.0),
            },
            None,
        ),
        other => return Err(format!("unknown norm `{other}`")),
    };
    Ok(spec)
}

fn resolved_from_config(path: &PathBuf, force: bool) -> Result<Resolved, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let cfg = configfile::parse(&text).map_err(|e| e.to_string())?;
    let kind_name = cfg
        .get("experiment", "kind")
        .ok_or("missing `kind` in [experiment]")?;
    let kind = Kind::from_name(kind_name).ok_or_else(|| {
        format!(
            "config line {}: unknown experiment kind `{kind_name}`",
            cfg.line_of("experiment", "kind")
        )
    })?;
    let mut resolved = Resolved::defaults(kind);
    resolved.force = force;

    let parse_f64 = |section: &str, key: &str| -> Result<Option<f64>, String> {
        match cfg.get(section, key) {
            None => Ok(None),
            Some(v) => v.parse::<f64>().map(Some).map_err(|e| {
                format!("config line {}: `{key}`: {e}", cfg.line_of(section, key))
            }),
        }
    };
    let parse_usize = |section: &str, key: &str| -> Result<Option<usize>, String> {
        match cfg.get(section, key) {
            None => Ok(None),
            Some(v) => v.parse::<usize>().map(Some).map_err(|e| {
                format!("config line {}: `{key}`: {e}", cfg.line_of(section, key))
            }),
        }
    };

    if let Some(v) = parse_usize("grid", "dim")? {
        resolved.grid_dim = v;
    }
    if let Some(v) = parse_usize("grid", "points_per_axis")? {
        resolved.grid_points = v;
    }
    if let Some(v) = parse_f64("grid", "half_width")? {
        resolved.grid_half_width = v;
    }

    if let Some(v) = parse_f64("solver", "sigma")? {
        resolved.solver.sigma = v;
    }
    if let Some(v) = parse_f64("solver", "dt")? {
        resolved.solver.dt = v;
    }
    if let Some(v) = parse_f64("solver", "t_end")? {
        resolved.solver.t_end = v;
    }
    if let Some(kind) = cfg.get("solver", "nonlinearity") {
        resolved.solver.nonlinearity.kind = match kind {
            "none" => NonlinearityKind::None,
            "absolute" => NonlinearityKind::Absolute,
            "signed" => NonlinearityKind::Signed,
            other => {
                return Err(format!(
                    "config line {}: unknown nonlinearity `{other}`",
                    cfg.line_of("solver", "nonlinearity")
                ))
            }
        };
    }
    if let Some(v) = parse_f64("solver", "rho")? {
        resolved.solver.nonlinearity.rho = v;
    }
    if let Some(v) = parse_f64("solver", "sign")? {
        resolved.solver.nonlinearity.sign = v;
    }
    if let Some(v) = parse_f64("solver", "blowup_threshold")? {
        resolved.solver.blowup_threshold = v;
    }
    if let Some(v) = parse_f64("solver", "dealias")? {
        resolved.solver.dealias = v;
    }
    if let Some(v) = parse_usize("solver", "snapshot_stride")? {
        resolved.solver.snapshot_stride = v;
    }
    if let Some(v) = parse_f64("solver", "norm_s")? {
        resolved.solver.norm_s = v;
    }
    if let Some(v) = parse_f64("solver", "norm_alpha")? {
        resolved.solver.norm_alpha = v;
    }

    if let Some(v) = cfg.get("data", "profile") {
        resolved.data.profile = v.to_string();
    }
    if let Some(v) = parse_f64("data", "amplitude")? {
        resolved.data.amplitude = v;
    }
    if let Some(v) = parse_f64("data", "width")? {
        resolved.data.width = v;
    }
    if let Some(v) = parse_f64("data", "center")? {
        resolved.data.center = v;
    }
    if let Some(v) = parse_f64("data", "k")? {
        resolved.data.k = v;
    }
    if let Some(v) = parse_f64("data", "u1_amplitude")? {
        resolved.data.u1_amplitude = v;
    }
    if let Some(v) = parse_usize("data", "seed")? {
        resolved.data.seed = v as u64;
    }

    if let Some(v) = parse_f64("experiment", "p")? {
        resolved.p = v;
    }
    if let Some(text) = cfg.get("experiment", "window") {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 2 {
            return Err(format!(
                "config line {}: window must be start:end",
                cfg.line_of("experiment", "window")
            ));
        }
        resolved.window = (
            parts[0].parse().map_err(|e| format!("window: {e}"))?,
            parts[1].parse().map_err(|e| format!("window: {e}"))?,
        );
    }
    if let Some(text) = cfg.get("experiment", "times") {
        resolved.times = parse_axis(text)?;
    }
    if let Some(text) = cfg.get("experiment", "rho") {
        resolved.rho_values = parse_axis(text)?;
    }
    if let Some(v) = parse_f64("experiment", "amplitude")? {
        resolved.amplitude = v;
    }
    if let Some(v) = parse_f64("experiment", "s1")? {
        resolved.s1 = v;
    }
    if let Some(v) = parse_f64("experiment", "s2")? {
        resolved.s2 = v;
    }
    if let Some(v) = parse_f64("experiment", "gamma")? {
        resolved.gamma = v;
    }
    if let Some(v) = cfg.get("experiment", "branch") {
        resolved.branch = v.to_string();
    }
    if let Some(v) = parse_f64("experiment", "weight_exponent")? {
        resolved.weight_exponent = Some(v);
    }
    if let Some(v) = parse_f64("experiment", "spread_bound")? {
        resolved.spread_bound = v;
    }
    if let Some(v) = parse_f64("experiment", "stability_bound")? {
        resolved.stability_bound = v;
    }
    if let Some(v) = parse_f64("experiment", "r")? {
        resolved.r = v;
    }
    if let Some(v) = cfg.get("experiment", "input") {
        resolved.input = Some(PathBuf::from(v));
    }
    if kind == Kind::Norms {
        let norm = cfg.get("experiment", "norm").unwrap_or("lp");
        let (spec, order) = build_norm_spec(
            norm,
            parse_f64("experiment", "p")?,
            parse_f64("experiment", "q")?,
            parse_f64("experiment", "s")?,
            parse_f64("experiment", "alpha")?,
            parse_f64("experiment", "gamma")?,
            parse_f64("solver", "sigma")?,
            parse_usize("experiment", "m")?.map(|m| m as u32),
        )?;
        resolved.norm_spec = Some(spec);
        resolved.besov_diff_order = order;
    }

    if let Some(v) = cfg.get("output", "dir") {
        resolved.out_dir = PathBuf::from(v);
    }
    if let Some(v) = cfg.get("output", "emit_gnuplot") {
        resolved.emit_gnuplot = v == "true" || v == "1";
    }
    if let Some(v) = parse_usize("output", "jobs")? {
        resolved.jobs = v;
    }
    Ok(resolved)
}

fn finish(result: Result<runner::RunOutput, RunError>) -> ExitCode {
    match result {
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(2)
        }
        Ok(out) => {
            if let Some(text) = &out.stdout {
                println!("{text}");
            }
            if out.verdicts.is_empty() {
                ExitCode::SUCCESS
            } else {
                let text = fdw_core::experiments::verdicts_text(&out.verdicts);
                print!("{text}");
                if out.verdicts.iter().all(|v| v.pass) {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for kind in Kind::ALL {
                println!("{}", kind.name());
            }
            ExitCode::SUCCESS
        }
        Command::Describe { experiment } => match Kind::from_name(&experiment) {
            Some(kind) => {
                println!("{}: {}", kind.name(), kind.describe());
                ExitCode::SUCCESS
            }
            None => {
                eprintln!(
                    "error: unknown experiment `{experiment}`; run `fdw-lab list` for the catalog"
                );
                ExitCode::from(2)
            }
        },
        Command::Run { config, force } => match resolved_from_config(&config, force) {
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            Ok(resolved) => finish(execute(&resolved)),
        },
        Command::Propagate {
            grid,
            solver,
            data,
            output,
            times,
        } => {
            let mut resolved = Resolved::defaults(Kind::Propagate);
            apply_grid(&mut resolved, &grid);
            if let Err(e) = apply_solver(&mut resolved, &solver)
                .and_then(|_| apply_times(&mut resolved, &times))
            {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            apply_data(&mut resolved, &data);
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::Solve {
            grid,
            solver,
            data,
            output,
        } => {
            let mut resolved = Resolved::defaults(Kind::Solve);
            apply_grid(&mut resolved, &grid);
            if let Err(e) = apply_solver(&mut resolved, &solver) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            apply_data(&mut resolved, &data);
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::Decay {
            grid,
            solver,
            data,
            output,
            p,
            window,
            tol,
        } => {
            let mut resolved = Resolved::defaults(Kind::Decay);
            apply_grid(&mut resolved, &grid);
            let setup = apply_solver(&mut resolved, &solver)
                .and_then(|_| apply_window(&mut resolved, &window))
                .and_then(|_| parse_p(&p).map(|v| resolved.p = v));
            if let Err(e) = setup {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            resolved.tolerance = tol;
            apply_data(&mut resolved, &data);
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::Diffusion {
            grid,
            solver,
            data,
            output,
            p,
            times,
        } => {
            let mut resolved = Resolved::defaults(Kind::Diffusion);
            apply_grid(&mut resolved, &grid);
            let setup = apply_solver(&mut resolved, &solver)
                .and_then(|_| apply_times(&mut resolved, &times))
                .and_then(|_| parse_p(&p).map(|v| resolved.p = v));
            if let Err(e) = setup {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            apply_data(&mut resolved, &data);
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::KernelCheck {
            grid,
            solver,
            output,
            branch,
            weight_exponent,
            times,
            stability_bound,
        } => {
            let mut resolved = Resolved::defaults(Kind::KernelCheck);
            apply_grid(&mut resolved, &grid);
            resolved.branch = branch;
            resolved.weight_exponent = weight_exponent;
            resolved.stability_bound = stability_bound;
            if let Err(e) = apply_solver(&mut resolved, &solver)
                .and_then(|_| apply_times(&mut resolved, &times))
            {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::CritexpScan {
            grid,
            solver,
            data,
            output,
            rho,
            amp,
        } => {
            let mut resolved = Resolved::defaults(Kind::CritexpScan);
            apply_grid(&mut resolved, &grid);
            resolved.solver.snapshot_stride = 1_000_000;
            if let Err(e) = apply_solver(&mut resolved, &solver) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if let Some(text) = rho {
                match parse_axis(&text) {
                    Ok(v) => resolved.rho_values = v,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            if let Some(a) = amp {
                resolved.amplitude = a;
            }
            apply_data(&mut resolved, &data);
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::SmoothingCheck {
            grid,
            solver,
            output,
            s1,
            s2,
            gamma,
            times,
            spread_bound,
        } => {
            let mut resolved = Resolved::defaults(Kind::SmoothingCheck);
            apply_grid(&mut resolved, &grid);
            resolved.s1 = s1;
            resolved.s2 = s2;
            resolved.gamma = gamma;
            resolved.spread_bound = spread_bound;
            if let Err(e) = apply_solver(&mut resolved, &solver)
                .and_then(|_| apply_times(&mut resolved, &times))
            {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            apply_output(&mut resolved, &output);
            finish(execute(&resolved))
        }
        Command::Norms {
            input,
            norm,
            p,
            q,
            s,
            alpha,
            gamma,
            sigma,
            m,
        } => {
            let mut resolved = Resolved::defaults(Kind::Norms);
            resolved.input = Some(input);
            let p = match p.as_deref().map(parse_p).transpose() {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let q = match q.as_deref().map(parse_p).transpose() {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match build_norm_spec(&norm, p, q, s, alpha, gamma, sigma, m) {
                Ok((spec, order)) => {
                    resolved.norm_spec = Some(spec);
                    resolved.besov_diff_order = order;
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            finish(execute(&resolved))
        }
    }
}
