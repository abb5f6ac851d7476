use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fitkit::fitting::generalized_fitting;
use fitkit::io::read_group;
use fitkit::report::{fitting_report_json, fitting_report_text, SubgroupSummary, SCHEMA};
use fitkit::suites::{run_suite, SuiteOptions, SUITES};
use fitkit::tower::{build_degenerate_tower, Tower};
use fitkit::{Caps, Error, Perm};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fitkit", version, about = "Generalised Fitting subgroups of permutation groups and towers")]
struct Cli {
    #[command(flatten)]
    caps: CapFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CapFlags {
    /// Largest group whose full subgroup lattice is enumerated
    #[arg(long, global = true, env = "FITKIT_CAP_SUBGROUP", default_value_t = Caps::default().subgroup)]
    cap_subgroup: u128,
    /// Largest group whose normal-subgroup lattice is enumerated
    #[arg(long, global = true, env = "FITKIT_CAP_LATTICE", default_value_t = Caps::default().normal_lattice)]
    cap_lattice: u128,
    /// Largest group given to the brute-force oracle
    #[arg(long, global = true, env = "FITKIT_CAP_ORACLE", default_value_t = Caps::default().oracle)]
    cap_oracle: u128,
    /// Largest level order when building towers
    #[arg(long, global = true, env = "FITKIT_CAP_TOWER", default_value_t = Caps::default().tower_order)]
    cap_tower: u128,
    /// Largest number of candidates tried in complement searches
    #[arg(long, global = true, env = "FITKIT_CAP_COMPLEMENT", default_value_t = Caps::default().complement_search)]
    cap_complement: u128,
}

impl CapFlags {
    fn caps(&self) -> Caps {
        Caps {
            subgroup: self.cap_subgroup,
            normal_lattice: self.cap_lattice,
            oracle: self.cap_oracle,
            tower_order: self.cap_tower,
            complement_search: self.cap_complement,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Report F, the components, E, F*, Z(F) and C_G(F*) of a group file
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build and inspect towers of finite groups
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Run a named verification suite over the bundled corpus
    Verify {
        suite: String,
        #[arg(long)]
        max_order: Option<u128>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Add K random subgroups of Sym(N), N <= 8
        #[arg(long, num_args = 2, value_names = ["K", "N"])]
        random: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Include wall-clock time in the summary line
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum TowerCommand {
    /// Build the tower with G_1 cyclic and G_{i+1} = V_{i+1}:G_i
    Build {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        levels: usize,
        /// Write the tower file here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every projection is a surjective homomorphism
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stable F* images down to a given depth
    Certify {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for a primitive quotient excluding an element
    Witness {
        file: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// lcm of the level orders, as a supernatural number
    Order {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    Failed,
    CapHit,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = cli.caps.caps();
    match run(cli.command, &caps) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        Ok(Verdict::CapHit) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
}

fn load_tower(path: &Path) -> fitkit::Result<Tower> {
    Tower::from_json(&std::fs::read_to_string(path)?)
}

fn run(command: Command, caps: &Caps) -> fitkit::Result<Verdict> {
    match command {
        Command::Analyze { file, format } => {
            let g = read_group(&file)?;
            let report = generalized_fitting(&g, caps)?;
            match format {
                Format::Text => print!("{}", fitting_report_text(&report)),
                Format::Json => print_json(&fitting_report_json(&report)),
            }
            Ok(if report.centralizer_equals_center() { Verdict::Ok } else { Verdict::Failed })
        }
        Command::Tower(t) => run_tower(t, caps),
        Command::Verify { suite, max_order, seed, random, format, timing } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::InvalidInput(format!("unknown suite {suite:?}; known suites: {}", SUITES.join(", "))));
            }
            let random = match random.as_deref() {
                Some(&[k, n]) if (2..=8).contains(&n) => Some((k, n)),
                Some(_) => return Err(Error::InvalidInput("--random K N needs 2 <= N <= 8".into())),
                None => None,
            };
            let opts = SuiteOptions { max_order, seed, random, caps: *caps };
            let report = run_suite(&suite, &opts)?;
            match format {
                Format::Text => print!("{}", report.to_text(timing)),
                Format::Json => println!("{}", report.to_json()),
            }
            if timing && matches!(format, Format::Json) {
                eprintln!("{}: {:.2} s", report.suite, report.wall_clock.as_secs_f64());
            }
            Ok(if report.all_passed() {
                Verdict::Ok
            } else if report.failed == 0 && report.hit_cap() {
                Verdict::CapHit
            } else {
                Verdict::Failed
            })
        }
    }
}

fn run_tower(command: TowerCommand, caps: &Caps) -> fitkit::Result<Verdict> {
    match command {
        TowerCommand::Build { primes, levels, out } => {
            let tower = build_degenerate_tower(&primes, levels, caps)?;
            let text = tower.to_json();
            match out {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n"))?;
                    let orders: Vec<String> = tower.levels().iter().map(|g| g.order().to_string()).collect();
                    eprintln!("wrote {} levels (orders {}) to {}", levels, orders.join(", "), path.display());
                }
                None => println!("{text}"),
            }
            Ok(Verdict::Ok)
        }
        TowerCommand::Validate { file, format } => {
            let tower = load_tower(&file)?;
            let levels: Vec<_> = tower.levels().iter().map(|g| json!({"degree": g.degree(), "order": g.order()})).collect();
            match format {
                Format::Text => {
                    println!("valid tower with {} levels", tower.len());
                    for (i, g) in tower.levels().iter().enumerate() {
                        println!("  G_{}: degree {}, order {}", i + 1, g.degree(), g.order());
                    }
                }
                Format::Json => print_json(&json!({"schema": SCHEMA, "valid": true, "levels": levels})),
            }
            Ok(Verdict::Ok)
        }
        TowerCommand::Certify { file, depth, format } => {
            let tower = load_tower(&file)?;
            let cert = tower.fd_certificate(depth, caps)?;
            match format {
                Format::Text => {
                    for l in &cert.per_level {
                        println!("level {}: stable F* image {}", l.level, SubgroupSummary::of(&l.stable_image));
                    }
                    let verdict = if cert.valid { "valid" } else { "not valid" };
                    println!("certificate at depth {depth}: {verdict}");
                    println!("(finite-depth evidence only: it shows F* of the limit maps trivially to levels 1..{})", depth.saturating_sub(1));
                }
                Format::Json => print_json(&json!({
                    "schema": SCHEMA,
                    "depth": depth,
                    "valid": cert.valid,
                    "levels": cert.per_level.iter().map(|l| json!({
                        "level": l.level,
                        "trivial": l.trivial,
                        "stable_image": SubgroupSummary::of(&l.stable_image),
                    })).collect::<Vec<_>>(),
                })),
            }
            Ok(if cert.valid { Verdict::Ok } else { Verdict::Failed })
        }
        TowerCommand::Witness { file, level, element, depth, format } => {
            let tower = load_tower(&file)?;
            let degree = tower.level(level)?.degree();
            let x = tower.element(level, Perm::parse(degree, &element)?)?;
            let witness = tower.primitive_witness(&x, depth, caps)?;
            match (&witness, format) {
                (Some(w), Format::Text) => {
                    println!("witness at level {} for {} from level {}", w.level, x.element, x.level);
                    println!("  kernel K        {}", SubgroupSummary::of(&w.kernel));
                    println!("  |G/K|           {} (primitive)", w.quotient_order);
                    println!("  |F*(G/K)|       {}", w.fstar_order);
                    println!("  lift            {}", w.lifted);
                }
                (None, Format::Text) => {
                    println!("no witness for {} up to depth {depth}", x.element);
                    println!("(a deeper level may still supply one; this does not show the limit is not Fitting-degenerate)");
                }
                (_, Format::Json) => print_json(&json!({
                    "schema": SCHEMA,
                    "element": x.element.to_string(),
                    "level": x.level,
                    "depth": depth,
                    "found": witness.is_some(),
                    "witness": witness.as_ref().map(|w| json!({
                        "level": w.level,
                        "kernel": SubgroupSummary::of(&w.kernel),
                        "quotient_order": w.quotient_order,
                        "fstar_order": w.fstar_order,
                        "lift": w.lifted.to_string(),
                    })),
                })),
            }
            Ok(if witness.is_some() { Verdict::Ok } else { Verdict::Failed })
        }
        TowerCommand::Order { file, depth, format } => {
            let tower = load_tower(&file)?;
            let order = tower.order(depth)?;
            match format {
                Format::Text => println!("{order}"),
                Format::Json => print_json(&json!({"schema": SCHEMA, "depth": depth, "order": order})),
            }
            Ok(Verdict::Ok)
        }
    }
}
