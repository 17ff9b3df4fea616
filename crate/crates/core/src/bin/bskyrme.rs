//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input-file problems, 3 numerical
//! failure (including a radial solve that dies on the gauge singularity —
//! the truncated profile is still written first), 4 a verification
//! threshold was exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bskyrme_core::energy::total_energy;
use bskyrme_core::error::{Error, Result};
use bskyrme_core::field::lift_radial;
use bskyrme_core::flow::{flow, FlowConfig};
use bskyrme_core::grid::Grid2D;
use bskyrme_core::io::{self, Meta};
use bskyrme_core::model::ModelParams;
use bskyrme_core::potential::{check_condition, potential_from_g, GProfile};
use bskyrme_core::radial::{radial_energy, solve_radial, SolveOpts, Termination};
use bskyrme_core::residual::{
    bogomolny_residual, dual_el_consistency, dual_tautology_breakdown, el_residual, sample_jets,
    DEFAULT_POLE_GUARD,
};
use bskyrme_core::topology::{bound_report, degree};

#[derive(Parser)]
#[command(
    name = "bskyrme",
    version,
    about = "BPS workbench for the gauged restricted baby Skyrme model"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate the radial first-order system and write the profile
    SolveRadial(SolveArgs),
    /// Lift a radial profile onto a rectangular grid snapshot
    Lift(LiftArgs),
    /// Residual norms, energy bound and degree of a snapshot
    Verify(VerifyArgs),
    /// Relax a snapshot by monotone gradient descent
    Flow(FlowArgs),
    /// Tabulate the superpotential and its generated potential
    Potential(PotentialArgs),
    /// Pointwise identity checks on random jets
    CheckTautology(TautologyArgs),
}

/// Couplings and superpotential shared by every subcommand.  Values are
/// resolved most-specific-first: explicit flag, then the input file's own
/// header, then a --config file, then the built-in defaults
/// (λ₁ = 1, λ₂ = 10, λ₄ = 1, n = 1, g1 = power:2).
#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, allow_negative_numbers = true)]
    lambda1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda4: Option<f64>,
    /// hedgehog winding number
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i32>,
    /// superpotential spec, e.g. power:2 or power:3:0.5
    #[arg(long)]
    g1: Option<String>,
    /// key = value file supplying defaults for any long flag
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Resolved {
    params: ModelParams,
    g1: GProfile,
    /// header block for output files
    meta: Meta,
}

impl ModelArgs {
    /// `input_meta` is the header of whatever file the subcommand reads,
    /// if any.
    fn resolve(&self, input_meta: &Meta, command: &str) -> Result<Resolved> {
        let file_meta = match &self.config {
            Some(path) => read_config(path)?,
            None => Meta::new(),
        };
        let sources = [input_meta, &file_meta];
        let lambda1 = pick_f64(self.lambda1, "lambda1", &sources, 1.0)?;
        let lambda2 = pick_f64(self.lambda2, "lambda2", &sources, 10.0)?;
        let lambda4 = pick_f64(self.lambda4, "lambda4", &sources, 1.0)?;
        let n = match self.n {
            Some(v) => v,
            None => pick_str("n", &sources)
                .map(|s| s.parse::<i32>().map_err(|_| bad_key("n", s)))
                .transpose()?
                .unwrap_or(1),
        };
        let g1_spec = self
            .g1
            .clone()
            .or_else(|| pick_str("g1", &sources).map(str::to_string))
            .unwrap_or_else(|| "power:2".to_string());
        let params = ModelParams::new(lambda1, lambda2, lambda4, n)?;
        let g1 = GProfile::from_spec(&g1_spec)?;
        let meta = vec![
            ("tool".into(), format!("bskyrme {}", env!("CARGO_PKG_VERSION"))),
            ("command".into(), command.into()),
            ("lambda1".into(), format!("{lambda1}")),
            ("lambda2".into(), format!("{lambda2}")),
            ("lambda4".into(), format!("{lambda4}")),
            ("n".into(), format!("{n}")),
            ("g1".into(), g1_spec),
        ];
        Ok(Resolved { params, g1, meta })
    }
}

fn pick_str<'a>(key: &str, sources: &[&'a Meta]) -> Option<&'a str> {
    sources.iter().find_map(|m| io::meta_get(m, key))
}

fn pick_f64(flag: Option<f64>, key: &str, sources: &[&Meta], default: f64) -> Result<f64> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match pick_str(key, sources) {
        Some(s) => s.parse().map_err(|_| bad_key(key, s)),
        None => Ok(default),
    }
}

fn bad_key(key: &str, value: &str) -> Error {
    Error::Domain(format!("could not parse '{key}' value '{value}'"))
}

/// `key = value` per line, '#' comments allowed.
fn read_config(path: &Path) -> Result<Meta> {
    let text = std::fs::read_to_string(path)?;
    let mut meta = Meta::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(Error::Parse {
            line: idx + 1,
            msg: format!("expected 'key = value', found '{line}'"),
        })?;
        meta.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(meta)
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long)]
    u_stop: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    max_step: Option<f64>,
    /// output profile CSV
    #[arg(long, default_value = "profile.csv")]
    out: PathBuf,
}

fn cmd_solve(args: &SolveArgs) -> Result<u8> {
    let resolved = args.model.resolve(&Meta::new(), "solve-radial")?;
    let defaults = SolveOpts::default();
    let opts = SolveOpts {
        rtol: args.rtol.unwrap_or(defaults.rtol),
        atol: args.atol.unwrap_or(defaults.atol),
        u_stop: args.u_stop.unwrap_or(defaults.u_stop),
        guard_a: defaults.guard_a,
        r_max: args.r_max.unwrap_or(defaults.r_max),
        max_step: args.max_step.unwrap_or(defaults.max_step),
    };
    let profile = solve_radial(&resolved.params, &resolved.g1, &opts)?;
    let mut meta = resolved.meta.clone();
    meta.push(("rtol".into(), format!("{:e}", opts.rtol)));
    meta.push(("atol".into(), format!("{:e}", opts.atol)));
    meta.push(("u_stop".into(), format!("{:e}", opts.u_stop)));
    meta.push(("r_max".into(), format!("{}", opts.r_max)));
    meta.push(("max_step".into(), format!("{}", opts.max_step)));
    io::write_profile(&args.out, &profile, &meta)?;
    println!("termination: {}", profile.termination.label());
    println!("samples: {}", profile.r.len());
    println!("r_last: {:.6}", profile.r_last());
    println!("a_infinity: {:.8e}", profile.a.last().unwrap());
    match profile.termination {
        Termination::VacuumReached | Termination::CompactonBoundary => {
            let pot = potential_from_g(&resolved.g1, &resolved.params);
            let e = radial_energy(&profile, &resolved.params, &resolved.g1, &pot)?;
            println!("energy: {:.12e}", e.energy);
            println!("bound: {:.12e}", e.bound);
            println!("exact_bound: {:.12e}", e.exact_bound);
        }
        _ => {}
    }
    println!("wrote {}", args.out.display());
    if profile.termination == Termination::Singularity {
        eprintln!("gauge singularity: 1 + a reached zero at r = {:.6}", profile.r_last());
        return Ok(3);
    }
    Ok(0)
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// input radial profile
    #[arg(long, default_value = "profile.csv")]
    profile: PathBuf,
    /// radial dilation applied before lifting
    #[arg(long, default_value_t = 1.0)]
    stretch: f64,
    /// full grid spec NX,NY,XMIN,XMAX,YMIN,YMAX (overrides the square)
    #[arg(long, value_parser = parse_grid)]
    grid: Option<Grid2D>,
    /// nodes per side of the default centered square
    #[arg(long, default_value_t = 128)]
    grid_size: usize,
    /// half-extent of the default centered square
    #[arg(long, default_value_t = 6.5)]
    half_extent: f64,
    /// output snapshot CSV
    #[arg(long, default_value = "snapshot.csv")]
    out: PathBuf,
}

fn parse_grid(s: &str) -> std::result::Result<Grid2D, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err("expected NX,NY,XMIN,XMAX,YMIN,YMAX".into());
    }
    let nx: usize = parts[0].trim().parse().map_err(|_| format!("bad NX '{}'", parts[0]))?;
    let ny: usize = parts[1].trim().parse().map_err(|_| format!("bad NY '{}'", parts[1]))?;
    let mut ext = [0.0; 4];
    for (k, p) in parts[2..].iter().enumerate() {
        ext[k] = p.trim().parse().map_err(|_| format!("bad extent '{p}'"))?;
    }
    Grid2D::new(nx, ny, ext[0], ext[1], ext[2], ext[3]).map_err(|e| e.to_string())
}

fn cmd_lift(args: &LiftArgs) -> Result<u8> {
    let (profile, profile_meta) = io::read_profile(&args.profile)?;
    let resolved = args.model.resolve(&profile_meta, "lift")?;
    let profile = if args.stretch == 1.0 { profile } else { profile.stretched(args.stretch)? };
    let grid = match &args.grid {
        Some(g) => g.clone(),
        None => Grid2D::centered_square(args.grid_size, args.half_extent)?,
    };
    let state = lift_radial(&profile, &grid, &resolved.params)?;
    let jets = state.jets()?;
    let pot = potential_from_g(&resolved.g1, &resolved.params);
    let e = total_energy(&state, &jets, &resolved.params, &pot)?;
    let q = degree(&state)?;
    let mut meta = resolved.meta.clone();
    meta.push(("source_profile".into(), args.profile.display().to_string()));
    meta.push(("stretch".into(), format!("{}", args.stretch)));
    io::write_snapshot(&args.out, &state, &meta)?;
    println!("grid: {}x{}", grid.nx, grid.ny);
    println!("energy: {:.12e}", e);
    println!("degree: {:.6}", q);
    println!("wrote {}", args.out.display());
    Ok(0)
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// input snapshot
    #[arg(long, default_value = "snapshot.csv")]
    snapshot: PathBuf,
    /// pole guard: nodes with u above this stay out of the norms
    #[arg(long, default_value_t = DEFAULT_POLE_GUARD)]
    guard: f64,
    /// fail (exit 4) if the first-order residual sup exceeds this
    #[arg(long)]
    max_bogomolny_sup: Option<f64>,
    /// fail (exit 4) if the second-order residual sup exceeds this
    #[arg(long)]
    max_el_sup: Option<f64>,
    /// fail (exit 4) if |E + ½∫I₁|/E over the guarded region exceeds this
    #[arg(long)]
    max_bound_gap: Option<f64>,
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let (state, snap_meta) = io::read_snapshot(&args.snapshot)?;
    let resolved = args.model.resolve(&snap_meta, "verify")?;
    let pot = potential_from_g(&resolved.g1, &resolved.params);
    let jets = state.jets()?;
    let bog = bogomolny_residual(&state, &jets, &resolved.params, &resolved.g1, args.guard);
    let el = el_residual(&state, &jets, &resolved.params, &pot, args.guard)?;
    let bound = bound_report(&state, &jets, &resolved.params, &resolved.g1, &pot, args.guard)?;
    let rel_gap = (bound.region_energy + bound.region_invariant).abs() / bound.region_energy.abs();
    println!("grid: {}x{}  guard: u <= {}", state.grid.nx, state.grid.ny, args.guard);
    println!(
        "first-order residuals: sup {:.6e} (R1 {:.6e}, R2 {:.6e}), l2 {:.6e}, nodes {} used / {} excluded",
        bog.sup_norm, bog.per_equation[0], bog.per_equation[1], bog.l2_norm, bog.nodes_used, bog.nodes_excluded
    );
    println!(
        "second-order residuals: sup {:.6e} (omega {:.6e}, A1 {:.6e}, A2 {:.6e}), l2 {:.6e}, nodes {} used / {} excluded",
        el.sup_norm,
        el.per_equation[0],
        el.per_equation[1],
        el.per_equation[2],
        el.l2_norm,
        el.nodes_used,
        el.nodes_excluded
    );
    println!(
        "region energy: {:.12e}  region ½∫I1: {:.12e}  relative gap: {:.6e}",
        bound.region_energy, bound.region_invariant, rel_gap
    );
    println!("identity gap (sup): {:.6e}", bound.max_identity_gap);
    println!("degree: {:.8}", bound.degree);
    let mut failed = false;
    if let Some(t) = args.max_bogomolny_sup {
        if bog.sup_norm > t {
            eprintln!("FAIL first-order sup {:.6e} > {:.6e}", bog.sup_norm, t);
            failed = true;
        }
    }
    if let Some(t) = args.max_el_sup {
        if el.sup_norm > t {
            eprintln!("FAIL second-order sup {:.6e} > {:.6e}", el.sup_norm, t);
            failed = true;
        }
    }
    if let Some(t) = args.max_bound_gap {
        if rel_gap > t {
            eprintln!("FAIL bound gap {rel_gap:.6e} > {t:.6e}");
            failed = true;
        }
    }
    Ok(if failed { 4 } else { 0 })
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// initial state snapshot
    #[arg(long, default_value = "snapshot.csv")]
    snapshot: PathBuf,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    grad_tol: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    record_every: Option<usize>,
    /// relaxed snapshot output
    #[arg(long, default_value = "relaxed.csv")]
    out: PathBuf,
    /// energy/gradient trace output
    #[arg(long)]
    history: Option<PathBuf>,
}

fn cmd_flow(args: &FlowArgs) -> Result<u8> {
    let (state, snap_meta) = io::read_snapshot(&args.snapshot)?;
    let resolved = args.model.resolve(&snap_meta, "flow")?;
    let pot = potential_from_g(&resolved.g1, &resolved.params);
    let defaults = FlowConfig::default();
    let cfg = FlowConfig {
        max_iters: args.max_iters.unwrap_or(defaults.max_iters),
        grad_tol: args.grad_tol.unwrap_or(defaults.grad_tol),
        initial_step: args.step.unwrap_or(defaults.initial_step),
        record_every: args.record_every.unwrap_or(defaults.record_every),
    };
    let out = flow(&state, &resolved.params, &pot, &cfg)?;
    let first = out.history.first().unwrap();
    let last = out.history.last().unwrap();
    println!("iterations: {} (converged: {})", out.iters, out.converged);
    println!("energy: {:.12e} -> {:.12e}", first.energy, last.energy);
    println!("grad_norm: {:.6e} -> {:.6e}", first.grad_norm, last.grad_norm);
    println!("degree: {:.6} -> {:.6}", degree(&state)?, degree(&out.state)?);
    let mut meta = resolved.meta.clone();
    meta.push(("source_snapshot".into(), args.snapshot.display().to_string()));
    meta.push(("iterations".into(), format!("{}", out.iters)));
    io::write_snapshot(&args.out, &out.state, &meta)?;
    println!("wrote {}", args.out.display());
    if let Some(hist) = &args.history {
        io::write_history(hist, &out.history, &meta)?;
        println!("wrote {}", hist.display());
    }
    Ok(0)
}

#[derive(Args)]
struct PotentialArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_potential(args: &PotentialArgs) -> Result<u8> {
    let resolved = args.model.resolve(&Meta::new(), "potential")?;
    let pot = potential_from_g(&resolved.g1, &resolved.params);
    let gap = check_condition(&resolved.g1, &pot, &resolved.params, 1001);
    let m = args.samples.max(2);
    let mut table = String::new();
    table.push_str("u,g1,g1_prime,v,v_prime\n");
    for k in 0..m {
        let u = 2.0 * k as f64 / (m - 1) as f64;
        table.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            u,
            resolved.g1.g(u),
            resolved.g1.gp(u),
            pot.v(u),
            pot.vprime(u)
        ));
    }
    match &args.out {
        Some(path) => {
            let mut text = String::new();
            for (k, v) in &resolved.meta {
                text.push_str(&format!("# {k} = {v}\n"));
            }
            text.push_str(&format!("# condition_gap = {gap:.6e}\n"));
            text.push_str(&table);
            std::fs::write(path, text)?;
            println!("wrote {}", path.display());
        }
        None => {
            println!("# g1 = {}", resolved.g1.label());
            println!("# condition_gap = {gap:.6e}");
            print!("{table}");
        }
    }
    Ok(0)
}

#[derive(Args)]
struct TautologyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// bound on the sampled |ω| components
    #[arg(long, default_value_t = 2.0)]
    amplitude: f64,
    /// displacement of the substituted kinetic bracket
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x_offset: f64,
    /// displacement of the substituted magnetic field
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    b_offset: f64,
    /// fail (exit 4) when the undisplaced identities exceed this
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

fn cmd_tautology(args: &TautologyArgs) -> Result<u8> {
    let resolved = args.model.resolve(&Meta::new(), "check-tautology")?;
    let pot = potential_from_g(&resolved.g1, &resolved.params);
    let jets = sample_jets(args.seed, args.count, args.amplitude);
    let rep =
        dual_tautology_breakdown(&resolved.g1, &resolved.params, &jets, args.x_offset, args.b_offset);
    let consistency = dual_el_consistency(&resolved.g1, &pot, &resolved.params, &jets);
    println!("seed: {}  jets: {}  amplitude: {}", args.seed, args.count, args.amplitude);
    println!("offsets: x {:+e}, b {:+e}", args.x_offset, args.b_offset);
    for (k, sup) in rep.per_expression.iter().enumerate() {
        println!("expression {}: sup {:.6e}", k + 1, sup);
    }
    println!("substituted second-order residual: sup {consistency:.6e}");
    let displaced = args.x_offset != 0.0 || args.b_offset != 0.0;
    if !displaced && (rep.max > args.tol || consistency > args.tol) {
        eprintln!("FAIL identity sup exceeds {:.1e}", args.tol);
        return Ok(4);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::SolveRadial(a) => cmd_solve(a),
        Cmd::Lift(a) => cmd_lift(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Flow(a) => cmd_flow(a),
        Cmd::Potential(a) => cmd_potential(a),
        Cmd::CheckTautology(a) => cmd_tautology(a),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Numerical(_) => 3,
                _ => 2,
            })
        }
    }
}
