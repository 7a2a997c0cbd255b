//! `bicyclic`: grid tables, `G` and `G'` checks, component counts and the
//! built-in self-test.
//!
//! Exit codes: 0 all checks pass, 1 an inclusion is violated, 2 bad
//! configuration, 3 the enumeration cap was hit on at least one record.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use bicyclic::brauer::{
    all_bicyclics, bogomolov_intersection, compute_g, isotropic_bicyclics, weil_subgroup, PairMode,
};
use bicyclic::covers::CoverModel;
use bicyclic::report::{exit_code, run_table, IntRange, ModeSelection, OutputFormat, RunConfig, SCHEMA_VERSION};
use bicyclic::selftest::{run_selftest, Fault};
use bicyclic::sympl::SymplecticSpace;
use bicyclic::{Error, DEFAULT_ENUMERATION_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "bicyclic",
    version,
    about = "Alternating forms on (Z/r)^2g vanishing on isotropic pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report over a (g, r, d) grid.
    Table {
        #[command(flatten)]
        grid: GridArgs,
        /// Degree range
        #[arg(long, default_value = "0")]
        d: IntRange,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Record wall-clock time per grid point; makes reports differ run to run.
        #[arg(long)]
        timing: bool,
    },
    /// Compute G for each (g, r) and compare it with the span of the Weil form.
    VerifyG {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Compute G' over a family of bicyclic subgroups.
    Bogomolov {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = FamilyArg::Isotropic)]
        family: FamilyArg,
    },
    /// Component counts and exponents of the cyclic-cover model.
    Components {
        #[command(flatten)]
        grid: GridArgs,
        /// Degree range
        #[arg(long, default_value = "0")]
        d: IntRange,
    },
    /// Run the built-in property suites.
    Selftest {
        /// Seed for the random cases
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Genus range, `a..b` inclusive or a single value.
    #[arg(long, default_value = "2")]
    g: IntRange,
    /// Torsion order range.
    #[arg(long, default_value = "2")]
    r: IntRange,
    /// Largest group or form space that may be enumerated.
    #[arg(long, env = "BICYCLIC_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    /// Seed for sampled witnesses
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    AllPairs,
    PrimitivePairs,
    Both,
}

impl From<ModeArg> for ModeSelection {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AllPairs => ModeSelection::AllPairs,
            ModeArg::PrimitivePairs => ModeSelection::PrimitivePairs,
            ModeArg::Both => ModeSelection::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FamilyArg {
    Isotropic,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FlipWeilCoefficient,
}

/// A failure that maps to a specific exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => exit_code::CAP_EXCEEDED,
            _ => exit_code::BAD_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: exit_code::BAD_CONFIG,
        message: e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Table { grid, d, mode, timing } => {
            let config = RunConfig {
                g: grid.g,
                r: grid.r,
                d,
                mode: mode.into(),
                cap: grid.cap,
                seed: grid.seed,
                format: grid.format.into(),
                out: grid.out.clone(),
                timing,
            };
            config.validate()?;
            let report = run_table(&config)?;
            emit(grid.out.as_deref(), &report.render())?;
            if let Some((g, r, d, flag)) = report.first_violation() {
                eprintln!("inclusion violated: {flag} at g={g}, r={r}, d={d}");
            }
            Ok(report.exit_code())
        }
        Command::VerifyG { grid, mode } => verify_g(&grid, mode.into()),
        Command::Bogomolov { grid, family } => bogomolov(&grid, family),
        Command::Components { grid, d } => components(&grid, d),
        Command::Selftest { seed, inject_fault } => {
            let fault = inject_fault.map(|FaultArg::FlipWeilCoefficient| Fault::FlipWeilCoefficient);
            let summary = run_selftest(seed, fault);
            print!("{summary}");
            Ok(if summary.passed() {
                exit_code::OK
            } else {
                exit_code::INCLUSION_VIOLATED
            })
        }
    }
}

fn emit(out: Option<&str>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(io_failure),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_failure),
    }
}

fn spaces(grid: &GridArgs) -> Result<Vec<SymplecticSpace>, Failure> {
    let config = RunConfig {
        g: grid.g,
        r: grid.r,
        cap: grid.cap,
        ..RunConfig::default()
    };
    Ok(config.spaces()?)
}

#[derive(Serialize)]
struct Listing<'a, C: Serialize, R: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: C,
    records: Vec<R>,
}

#[derive(Serialize)]
struct GridConfig {
    g: String,
    r: String,
    cap: u64,
    seed: u64,
}

impl GridConfig {
    fn of(grid: &GridArgs) -> Self {
        GridConfig {
            g: grid.g.to_string(),
            r: grid.r.to_string(),
            cap: grid.cap,
            seed: grid.seed,
        }
    }
}

fn render<C: Serialize, R: Serialize>(
    grid: &GridArgs,
    command: &str,
    config: C,
    records: Vec<R>,
) -> Result<(), Failure> {
    let text = match grid.format {
        FormatArg::Json => {
            let listing = Listing {
                schema_version: SCHEMA_VERSION,
                command,
                config,
                records,
            };
            let mut s = serde_json::to_string_pretty(&listing).map_err(io_failure)?;
            s.push('\n');
            s
        }
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for rec in &records {
                w.serialize(rec).map_err(io_failure)?;
            }
            String::from_utf8(w.into_inner().map_err(io_failure)?).map_err(io_failure)?
        }
    };
    emit(grid.out.as_deref(), &text)
}

/// Exit code for a set of rows: violation beats a skipped row.
fn combine(violated: bool, skipped: bool) -> i32 {
    if violated {
        exit_code::INCLUSION_VIOLATED
    } else if skipped {
        exit_code::CAP_EXCEEDED
    } else {
        exit_code::OK
    }
}

#[derive(Serialize)]
struct GRow {
    g: usize,
    r: u64,
    mode: &'static str,
    status: &'static str,
    skip_reason: Option<String>,
    g_order: Option<u128>,
    weil_order: u128,
    weil_order_is_two: bool,
    g_equals_weil: Option<bool>,
}

fn verify_g(grid: &GridArgs, mode: ModeSelection) -> Result<i32, Failure> {
    let mut rows = Vec::new();
    for space in spaces(grid)? {
        let weil = weil_subgroup(space);
        let weil_order = weil.order()?;
        for &m in mode.modes() {
            let mut row = GRow {
                g: space.genus(),
                r: space.r(),
                mode: m.name(),
                status: "ok",
                skip_reason: None,
                g_order: None,
                weil_order,
                weil_order_is_two: weil_order == 2,
                g_equals_weil: None,
            };
            match compute_g(space, m, grid.cap) {
                Ok(g) => {
                    row.g_order = Some(g.order()?);
                    row.g_equals_weil = Some(g == weil);
                }
                Err(e @ Error::CapExceeded { .. }) => {
                    row.status = "skipped";
                    row.skip_reason = Some(e.to_string());
                }
                Err(e) => return Err(e.into()),
            }
            rows.push(row);
        }
    }
    let violated = rows.iter().any(|r| r.g_equals_weil == Some(false));
    let skipped = rows.iter().any(|r| r.status == "skipped");
    #[derive(Serialize)]
    struct Config {
        #[serde(flatten)]
        grid: GridConfig,
        mode: &'static str,
    }
    let config = Config {
        grid: GridConfig::of(grid),
        mode: mode.name(),
    };
    render(grid, "verify-g", config, rows)?;
    Ok(combine(violated, skipped))
}

#[derive(Serialize)]
struct BogomolovRow {
    g: usize,
    r: u64,
    family: FamilyArg,
    status: &'static str,
    skip_reason: Option<String>,
    family_size: Option<usize>,
    g_prime_order: Option<u128>,
    g_prime_trivial: Option<bool>,
    weil_in_g_prime: Option<bool>,
    g_prime_in_g: Option<bool>,
    g_prime_equals_weil: Option<bool>,
}

fn bogomolov(grid: &GridArgs, family: FamilyArg) -> Result<i32, Failure> {
    let mut rows = Vec::new();
    for space in spaces(grid)? {
        let mut row = BogomolovRow {
            g: space.genus(),
            r: space.r(),
            family,
            status: "ok",
            skip_reason: None,
            family_size: None,
            g_prime_order: None,
            g_prime_trivial: None,
            weil_in_g_prime: None,
            g_prime_in_g: None,
            g_prime_equals_weil: None,
        };
        let computed = (|| {
            let fam = match family {
                FamilyArg::Isotropic => isotropic_bicyclics(space, grid.cap)?,
                FamilyArg::All => all_bicyclics(space, grid.cap)?,
            };
            let g_prime = bogomolov_intersection(space, &fam)?;
            let g = compute_g(space, PairMode::AllPairs, grid.cap)?;
            Ok::<_, Error>((fam.len(), g_prime, g))
        })();
        match computed {
            Ok((size, g_prime, g)) => {
                let weil = weil_subgroup(space);
                row.family_size = Some(size);
                row.g_prime_order = Some(g_prime.order()?);
                row.g_prime_trivial = Some(g_prime.is_trivial());
                row.weil_in_g_prime = Some(weil.is_subset_of(&g_prime));
                row.g_prime_in_g = Some(g_prime.is_subset_of(&g));
                row.g_prime_equals_weil = Some(g_prime == weil);
            }
            Err(e @ Error::CapExceeded { .. }) => {
                row.status = "skipped";
                row.skip_reason = Some(e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
        rows.push(row);
    }
    // Over the full family `e` itself need not survive; only `G' ⊆ G` is required.
    let violated = rows.iter().any(|r| {
        r.g_prime_in_g == Some(false) || (matches!(family, FamilyArg::Isotropic) && r.weil_in_g_prime == Some(false))
    });
    let skipped = rows.iter().any(|r| r.status == "skipped");
    #[derive(Serialize)]
    struct Config {
        #[serde(flatten)]
        grid: GridConfig,
        family: FamilyArg,
    }
    let config = Config {
        grid: GridConfig::of(grid),
        family,
    };
    render(grid, "bogomolov", config, rows)?;
    Ok(combine(violated, skipped))
}

#[derive(Serialize)]
struct ComponentRow {
    g: usize,
    r: u64,
    d: i64,
    prym_components: u64,
    quotient_components: u64,
    picard_quotient_order: u64,
    twist_exponent: u64,
}

fn components(grid: &GridArgs, d: IntRange) -> Result<i32, Failure> {
    if d.is_empty() {
        return Err(Error::InvalidArgument(format!("empty range for d: {d}")).into());
    }
    let mut rows = Vec::new();
    for space in spaces(grid)? {
        for d in d.iter() {
            let c = CoverModel::new(space.genus(), space.r(), d)?.counts()?;
            rows.push(ComponentRow {
                g: space.genus(),
                r: c.r,
                d: c.d,
                prym_components: c.prym_components,
                quotient_components: c.quotient_components,
                picard_quotient_order: c.picard_quotient_order,
                twist_exponent: c.twist_exponent,
            });
        }
    }
    #[derive(Serialize)]
    struct Config {
        #[serde(flatten)]
        grid: GridConfig,
        d: String,
    }
    let config = Config {
        grid: GridConfig::of(grid),
        d: d.to_string(),
    };
    render(grid, "components", config, rows)?;
    Ok(exit_code::OK)
}
