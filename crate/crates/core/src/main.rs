use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use discplan::bench::{bench_csv, run_bench, Family};
use discplan::error::{Error, Invariant, Result};
use discplan::geom::Tolerance;
use discplan::planner::{plan, validate_plan};
use discplan::render::render_svg;
use discplan::report::{write_atomic, MetricsReport, PlanFile};
use discplan::scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "discplan",
    version,
    about = "Motion planning for unlabeled disc robots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario against the separation requirements.
    Validate { scenario: PathBuf },
    /// Plan paths for every robot.
    Plan {
        scenario: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Draw a scenario, optionally with a plan, as SVG.
    Render {
        scenario: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Plan generated scenarios and tabulate metrics as CSV.
    Bench {
        #[arg(long)]
        family: String,
        /// Comma-separated robot counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        /// Leave out wall-clock columns so the table is reproducible.
        #[arg(long)]
        omit_timings: bool,
    },
}

fn load_valid(path: &Path) -> Result<Scenario> {
    let s = Scenario::load(path)?;
    s.validate()?;
    Ok(s)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { scenario } => {
            let s = load_valid(&scenario)?;
            println!("ok: {} robots", s.robot_count());
        }
        Command::Plan {
            scenario,
            output,
            metrics,
        } => {
            let s = load_valid(&scenario)?;
            let p = plan(&s)?;
            let check = validate_plan(&s, &p, Tolerance::default())?;
            if !check.is_ok() {
                let first = check
                    .violations
                    .first()
                    .map(|v| v.detail.clone())
                    .unwrap_or_default();
                return Err(Invariant::Geometry(format!(
                    "plan failed its own validation: {first}"
                ))
                .into());
            }
            write_atomic(
                &output,
                PlanFile::new(&p, s.robot_radius).to_json().as_bytes(),
            )?;
            let m = MetricsReport::new(&s, &p);
            if let Some(path) = metrics {
                write_atomic(&path, m.to_json().as_bytes())?;
            }
            println!(
                "planned {} robots: cost {:.6}, lower bound {:.6}, {} zero-hop, {} one-hop",
                m.robots, m.actual_cost, m.lower_bound, m.zero_hops, m.one_hops
            );
        }
        Command::Render {
            scenario,
            plan,
            output,
        } => {
            let s = Scenario::load(&scenario)?;
            let p = plan
                .map(|path| PlanFile::from_json(&std::fs::read_to_string(path)?))
                .transpose()?;
            write_atomic(&output, render_svg(&s, p.as_ref()).as_bytes())?;
        }
        Command::Bench {
            family,
            sizes,
            seed,
            output,
            omit_timings,
        } => {
            let family: Family = family.parse()?;
            let rows = run_bench(family, &sizes, seed)?;
            write_atomic(&output, bench_csv(&rows, !omit_timings).as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with parse errors; 2 means infeasible
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Validation(vs) = &e {
                for v in vs {
                    eprintln!("  {v}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
