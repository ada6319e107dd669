//! Command-line front end: dispatches the verification commands and emits a
//! machine-readable certificate per run. Exit code 0 on pass, 1 on a failed
//! certificate, 2 on usage errors or infeasible (q, command) pairs.

use clap::{Parser, Subcommand, ValueEnum};
use hermitian_curves::curve::{curve_on_surface, fermat_curve, j_matrix, ScanMode};
use hermitian_curves::group::{
    curve_set_size, group_order, identity_suites, incidence_profile, orbit_count,
    seed_with_identity_gram, stabilizer_order, StabilizerMethod,
};
use hermitian_curves::mat::is_hermitian;
use hermitian_curves::report::{Certificate, Format};
use hermitian_curves::surface::HermitianSurface;
use hermitian_curves::{Error, Fe, FieldCtx, Mat};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "hermitian-curves", version, about = "Exact verification of rational curves of degree q+1 on smooth Hermitian surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Field size q (the surface lives over F_{q²})
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// RNG seed for randomized scans and identity suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Trial count for randomized scans and identity suites
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = CliFormat::Json)]
    format: CliFormat,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Scan mode
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Optional Hermitian matrix A as 16 whitespace-separated element
    /// indices (0 = zero, k+1 = g^k for the field generator g)
    #[arg(long, global = true)]
    matrix_file: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Count rational points and lines on the surface
    Counts,
    /// Build the explicit degree-(q+1) curve on the Fermat surface
    FermatCurve,
    /// Scan low-degree rational curves for surface containment
    Scan,
    /// Orbit of the curve under the surface automorphisms
    Orbit,
    /// Stabilizer of the curve, by every feasible method
    Stabilizer,
    /// q = 2 incidence statistics of the 432 cubics
    Incidence,
    /// Seeded random verification of the algebraic identities
    LemmaCheck,
    /// Every feasible command for the given q
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFormat {
    Json,
    Tsv,
}

fn field_params(q: u32) -> Result<(u32, u32), Error> {
    match q {
        2 => Ok((2, 1)),
        3 => Ok((3, 1)),
        4 => Ok((2, 2)),
        5 => Ok((5, 1)),
        7 => Ok((7, 1)),
        8 => Ok((2, 3)),
        9 => Ok((3, 2)),
        _ => Err(Error::FieldTooLarge(q as u64)),
    }
}

fn load_matrix(ctx: &FieldCtx, path: &std::path::Path) -> Result<Mat, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MatrixFile(format!("{}: {e}", path.display())))?;
    let reps: Vec<u32> = text
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::MatrixFile(format!("bad token `{t}`"))))
        .collect::<Result<_, _>>()?;
    if reps.len() != 16 {
        return Err(Error::MatrixFile(format!("expected 16 entries, got {}", reps.len())));
    }
    let mut m = Mat::zero(4, 4);
    for (k, &r) in reps.iter().enumerate() {
        m.set(k / 4, k % 4, ctx.element(r)?);
    }
    if !is_hermitian(ctx, &m, 1) {
        return Err(Error::MatrixFile("matrix is not Hermitian w.r.t. q".into()));
    }
    Ok(m)
}

fn surface(ctx: &FieldCtx, cli: &Cli) -> Result<HermitianSurface, Error> {
    match &cli.matrix_file {
        Some(path) => HermitianSurface::new(ctx, load_matrix(ctx, path)?),
        None => Ok(HermitianSurface::fermat(ctx)),
    }
}

fn infeasible(command: &str, q: u32) -> Error {
    Error::Infeasible { command: command.into(), q }
}

fn run_counts(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    let q = ctx.q() as u64;
    if q > 5 {
        return Err(infeasible("counts", ctx.q()));
    }
    let s = surface(ctx, cli)?;
    let mut cert = Certificate::new("counts", ctx.q(), cli.seed, 0);
    let points = s.rational_points(ctx).len() as u64;
    let lines = s.lines_on_surface(ctx).len() as u64;
    cert.push("points", (q.pow(3) + 1) * (q.pow(2) + 1), points, "formula");
    cert.push("lines", (q.pow(3) + 1) * (q + 1), lines, "formula");
    Ok(cert)
}

fn run_fermat_curve(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    if cli.matrix_file.is_some() {
        return Err(Error::MatrixFile("fermat-curve always uses A = I".into()));
    }
    let q = ctx.q() as u64;
    let mut cert = Certificate::new("fermat-curve", ctx.q(), cli.seed, 0);
    let (params, fjstar, fj) = fermat_curve(ctx)?;
    let m1 = ctx.neg(Fe::ONE);
    cert.push(
        "omega_norm",
        ctx.fe_to_string(m1),
        ctx.fe_to_string(ctx.pow(params.omega, q + 1)),
        "construction",
    );
    cert.push(
        "xi_norm",
        ctx.fe_to_string(Fe::ONE),
        ctx.fe_to_string(ctx.pow(params.xi, q + 1)),
        "construction",
    );
    cert.push(
        "xi_square_avoids_minus_one",
        true,
        ctx.mul(params.xi, params.xi) != m1,
        "construction",
    );
    cert.push(
        "eta_norm",
        ctx.fe_to_string(ctx.add(ctx.frob(params.xi, 1), params.xi)),
        ctx.fe_to_string(ctx.pow(params.eta, q + 1)),
        "construction",
    );
    let dj = hermitian_curves::curve::d_matrix(ctx, &j_matrix(ctx))?;
    let gram = fjstar.mat.transpose().mul(ctx, &fjstar.mat.entrywise_frob(ctx, 1))?;
    cert.push("gram_equals_d_j", true, gram == dj, "identity");
    let s = HermitianSurface::fermat(ctx);
    cert.push("curve_on_surface", true, curve_on_surface(ctx, &fj, &s)?.contained, "identity");
    Ok(cert)
}

fn run_scan(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    let q = ctx.q();
    let mode = cli.mode.unwrap_or(if q == 2 { Mode::Exhaustive } else { Mode::Random });
    let s = surface(ctx, cli)?;
    let mut cert = Certificate::new("scan", q, cli.seed, cli.trials);
    match mode {
        Mode::Exhaustive => {
            if q != 2 {
                return Err(infeasible("scan --mode exhaustive", q));
            }
            let outcome =
                hermitian_curves::curve::scan_low_degree(ctx, &s, 2, ScanMode::Exhaustive)?;
            cert.push("d2_examined", 256u64.pow(3), outcome.examined, "formula");
            cert.push("d2_violations", 0, outcome.violations.len(), "formula");
            cert.push(
                "d2_contained_all_rank_le_2",
                outcome.contained_low_rank,
                outcome.contained_low_rank,
                "construction",
            );
        }
        Mode::Random => {
            for d in 2..=q as usize {
                let outcome = hermitian_curves::curve::scan_low_degree(
                    ctx,
                    &s,
                    d,
                    ScanMode::Random { trials: cli.trials, seed: cli.seed },
                )?;
                cert.push(&format!("d{d}_examined"), cli.trials, outcome.examined, "formula");
                cert.push(&format!("d{d}_violations"), 0, outcome.violations.len(), "formula");
            }
        }
    }
    Ok(cert)
}

fn run_orbit(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    let q = ctx.q() as u64;
    if q > 3 {
        return Err(infeasible("orbit", ctx.q()));
    }
    let s = surface(ctx, cli)?;
    let report = orbit_count(ctx, &s)?;
    let mut cert = Certificate::new("orbit", ctx.q(), cli.seed, 0);
    cert.push("orbit_size", curve_set_size(q), report.orbit_size, "formula");
    cert.push("stabilizer_order", q * q * (q.pow(4) - 1), report.stabilizer_order, "formula");
    cert.push("group_order", group_order(4, q)?, report.group_order, "formula");
    cert.push("consistency", true, report.consistency, "identity");
    Ok(cert)
}

fn run_stabilizer(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    let q = ctx.q() as u64;
    if q > 3 {
        return Err(infeasible("stabilizer", ctx.q()));
    }
    let s = surface(ctx, cli)?;
    let f0 = seed_with_identity_gram(ctx, &s)?;
    let expect = q * q * (q.pow(4) - 1);
    let mut cert = Certificate::new("stabilizer", ctx.q(), cli.seed, 0);
    let pgu2 = stabilizer_order(ctx, &s, &f0, StabilizerMethod::ViaPgu2)?;
    cert.push("via_pgu2", expect, pgu2, "formula");
    if q == 2 {
        let scan = stabilizer_order(ctx, &s, &f0, StabilizerMethod::ScanGroup)?;
        cert.push("scan_group", expect, scan, "formula");
        cert.push("methods_agree", true, scan == pgu2, "identity");
    }
    Ok(cert)
}

fn run_incidence(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    if ctx.q() != 2 {
        return Err(infeasible("incidence", ctx.q()));
    }
    if cli.matrix_file.is_some() {
        return Err(Error::MatrixFile("incidence always uses A = I".into()));
    }
    let profile = incidence_profile(ctx)?;
    let mut cert = Certificate::new("incidence", 2, cli.seed, 0);
    cert.push("curve_count", 432, profile.curve_count, "formula");
    cert.push("points_per_curve", 5, profile.points_per_curve, "formula");
    for (size, want) in [(0u64, 240u64), (1, 150), (2, 40), (5, 1)] {
        cert.push(
            &format!("meet_in_{size}_points"),
            want,
            profile.histogram.get(&size).copied().unwrap_or(0),
            "formula",
        );
    }
    cert.push(
        "histogram_total",
        431,
        profile.histogram.values().sum::<u64>(),
        "formula",
    );
    cert.push("curves_per_point", 48, profile.curves_per_point, "formula");
    cert.push("point_orbit_transitive", true, profile.point_orbit_transitive, "identity");
    cert.push("point_stabilizer_order", 576, profile.point_stabilizer_order, "formula");
    Ok(cert)
}

fn run_lemma_check(ctx: &FieldCtx, cli: &Cli) -> Result<Certificate, Error> {
    let mut cert = Certificate::new("lemma-check", ctx.q(), cli.seed, cli.trials);
    match identity_suites(ctx, cli.trials, cli.seed) {
        Ok(results) => {
            for r in results {
                cert.push(&r.name, cli.trials, r.trials, "identity");
            }
        }
        Err(Error::TransformIdentity) => {
            cert.push("identity_suites", "pass", "fail", "identity");
        }
        Err(e) => return Err(e),
    }
    Ok(cert)
}

fn run(cli: &Cli) -> Result<Certificate, Error> {
    let (p, e) = field_params(cli.q)?;
    let ctx = FieldCtx::new(p, e)?;
    match cli.command {
        Command::Counts => run_counts(&ctx, cli),
        Command::FermatCurve => run_fermat_curve(&ctx, cli),
        Command::Scan => run_scan(&ctx, cli),
        Command::Orbit => run_orbit(&ctx, cli),
        Command::Stabilizer => run_stabilizer(&ctx, cli),
        Command::Incidence => run_incidence(&ctx, cli),
        Command::LemmaCheck => run_lemma_check(&ctx, cli),
        Command::All => {
            let mut cert = Certificate::new("all", cli.q, cli.seed, cli.trials);
            cert.merge(run_counts(&ctx, cli)?);
            cert.merge(run_fermat_curve(&ctx, cli)?);
            cert.merge(run_scan(&ctx, cli)?);
            if cli.q <= 3 {
                cert.merge(run_orbit(&ctx, cli)?);
                cert.merge(run_stabilizer(&ctx, cli)?);
            }
            if cli.q == 2 {
                cert.merge(run_incidence(&ctx, cli)?);
            }
            cert.merge(run_lemma_check(&ctx, cli)?);
            Ok(cert)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.command == Command::All && cli.matrix_file.is_some() {
        eprintln!("error: --matrix-file is not supported with `all`");
        return ExitCode::from(2);
    }
    if cli.workers > 0 {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(mut cert) => {
            cert.elapsed_ms = start.elapsed().as_millis() as u64;
            let format = match cli.format {
                CliFormat::Json => Format::Json,
                CliFormat::Tsv => Format::Tsv,
            };
            println!("{}", cert.render(format));
            eprintln!("elapsed: {} ms", cert.elapsed_ms);
            if cert.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ (Error::Infeasible { .. } | Error::MatrixFile(_) | Error::FieldTooLarge(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
