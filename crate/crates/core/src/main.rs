use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use dibrush::bounds::report;
use dibrush::graph::{export_dot, parse, random_rooted_tree, serialize, DotStep};
use dibrush::solver::{
    brushing_number_exact, conjecture_explorer, SolveOptions, CONJECTURE_DEFAULT_NS, DEFAULT_CAP,
};
use dibrush::strategies::{plan_with, Method};
use dibrush::verify::{run_suite, Suite};
use dibrush::{run, BrushPlan, Digraph, FamilySpec};

type CliResult<T = ()> = std::result::Result<T, Box<dyn std::error::Error>>;

/// `println!` that exits quietly when the reader has gone away (as with
/// `| head`).
macro_rules! outln {
    ($($arg:tt)*) => {
        write_line(format_args!($($arg)*))
    };
}

fn write_line(args: std::fmt::Arguments<'_>) {
    if let Err(e) = writeln!(io::stdout().lock(), "{args}") {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(1);
    }
}

#[derive(Parser)]
#[command(
    name = "dibrush",
    version,
    about = "Brushing numbers of directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tt,
    Complete,
    Rotational,
    Tree,
    RandomDag,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge list of a generated graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Rotational symbol set, comma separated.
        #[arg(long, value_delimiter = ',')]
        symbols: Vec<usize>,
        /// Arc probability for random DAGs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, env = "DIBRUSH_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact brushing number, or just the bounds.
    Solve {
        file: PathBuf,
        #[arg(long, conflicts_with = "bounds_only")]
        exact: bool,
        #[arg(long)]
        bounds_only: bool,
        #[arg(long)]
        topo_only: bool,
        /// Solver threads; 0 picks the number of cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Plan from one of the constructive strategies.
    Strategy {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Run a plan and write its trace.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        /// Trace output; stdout when omitted.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Directory for one DOT file per time step.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Every lower and upper bound that applies.
    Bounds { file: PathBuf },
    /// Self-check tables.
    Verify {
        #[arg(long, default_value = "theorems")]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Largest brushing number over regular tournaments.
    Conjecture {
        #[arg(long, value_delimiter = ',', default_values_t = CONJECTURE_DEFAULT_NS)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn read_graph(path: &Path) -> CliResult<Digraph> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            outln!("{}", text.strip_suffix('\n').unwrap_or(text));
            Ok(())
        }
    }
}

/// A bare plan, or anything that carries one as `witness` (solver output).
#[derive(Deserialize)]
#[serde(untagged)]
enum PlanFile {
    Plan(BrushPlan),
    Solved { witness: BrushPlan },
}

fn execute(cmd: Command) -> CliResult {
    match cmd {
        Command::Gen {
            family,
            n,
            symbols,
            p,
            seed,
            out,
        } => {
            let spec = match family {
                Family::Tt => FamilySpec::TransitiveTournament { n },
                Family::Complete => FamilySpec::Complete { n },
                Family::Rotational => FamilySpec::Rotational { n, symbols },
                Family::Tree => random_rooted_tree(n, seed),
                Family::RandomDag => FamilySpec::RandomDag { n, p, seed },
            };
            emit(out.as_deref(), &serialize(&spec.build()?))
        }
        Command::Solve {
            file,
            exact: _,
            bounds_only,
            topo_only,
            jobs,
            cap,
            json,
        } => {
            let g = read_graph(&file)?;
            if bounds_only {
                outln!("{}", serde_json::to_string_pretty(&report(&g))?);
                return Ok(());
            }
            let opts = SolveOptions {
                topo_only,
                workers: jobs,
                cap,
            };
            let res = brushing_number_exact(&g, &opts).map_err(|e| match e {
                dibrush::BrushError::TooLarge { .. } => {
                    format!("{e}; use --bounds-only for bounds").into()
                }
                e => Box::<dyn std::error::Error>::from(e),
            })?;
            if json {
                outln!("{}", serde_json::to_string_pretty(&res)?);
            } else {
                outln!("value: {}", res.value);
                outln!("order: {:?}", res.witness.order);
                outln!("initial: {:?}", res.witness.initial);
                outln!(
                    "orders explored: {}, pruned: {}, lower bound: {}",
                    res.stats.orders_explored,
                    res.stats.pruned,
                    res.stats.lower_bound_used
                );
            }
            Ok(())
        }
        Command::Strategy { file, method } => {
            let g = read_graph(&file)?;
            let plan = plan_with(&g, method)?;
            outln!("{}", serde_json::to_string_pretty(&plan)?);
            Ok(())
        }
        Command::Simulate {
            file,
            plan,
            trace,
            dot_dir,
        } => {
            let g = read_graph(&file)?;
            let text = fs::read_to_string(&plan).map_err(|e| format!("{}: {e}", plan.display()))?;
            let plan = match serde_json::from_str(&text)? {
                PlanFile::Plan(p) | PlanFile::Solved { witness: p } => p,
            };
            let tr = run(&g, &plan)?;
            if let Some(dir) = dot_dir {
                fs::create_dir_all(&dir)?;
                for s in &tr.steps {
                    let step = DotStep {
                        t: s.t,
                        brushes: &s.brushes,
                        clean_vertices: &s.clean_vertices,
                        clean_arcs: &s.clean_arcs,
                    };
                    fs::write(
                        dir.join(format!("step_{:03}.dot", s.t)),
                        export_dot(&g, Some(step)),
                    )?;
                }
            }
            emit(
                trace.as_deref(),
                &(serde_json::to_string_pretty(&tr)? + "\n"),
            )
        }
        Command::Bounds { file } => {
            let g = read_graph(&file)?;
            outln!("{}", serde_json::to_string_pretty(&report(&g))?);
            Ok(())
        }
        Command::Verify {
            suite,
            max_n,
            jobs,
            cap,
        } => {
            let opts = SolveOptions {
                workers: jobs,
                cap,
                ..Default::default()
            };
            let rows = run_suite(suite, max_n, &opts)?;
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4);
            outln!(
                "{:<width$}  {:>8}  {:>8}  result",
                "name",
                "expected",
                "computed"
            );
            for r in &rows {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                outln!(
                    "{:<width$}  {:>8}  {:>8}  {verdict}",
                    r.name,
                    r.expected,
                    r.computed
                );
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(format!("{failed} of {} rows failed", rows.len()).into());
            }
            Ok(())
        }
        Command::Conjecture { n, jobs } => {
            let opts = SolveOptions {
                workers: jobs,
                ..Default::default()
            };
            let reports = conjecture_explorer(&n, &opts)?;
            for r in reports.iter().filter(|r| !r.holds) {
                eprintln!(
                    "CONJECTURE VIOLATED at n={}: max B = {} > bound {}",
                    r.n, r.max_value, r.bound
                );
            }
            outln!("{}", serde_json::to_string_pretty(&reports)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
