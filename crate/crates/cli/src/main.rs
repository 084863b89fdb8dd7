use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mcastcap::bounds::bound_sheet;
use mcastcap::checks::{self, Scope};
use mcastcap::instances::{cycle_instance, cycle_routing_scheme, random_instance, verify_routing_scheme};
use mcastcap::packing::{fractional_capacity_lp, half_integer_capacity, max_integer_packing};
use mcastcap::report::{analyze, describe, AnalyzeOptions};
use mcastcap::splitting::split_instance;
use mcastcap::strength::edge_strength;
use mcastcap::{Error, Instance, Rate};

#[derive(Parser)]
#[command(name = "mcastcap", version, about = "Routing and coding capacity of undirected multicast networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Int,
    Half,
    Frac,
}

#[derive(Subcommand)]
enum Command {
    /// Full capacity report: packings, strength, bounds and the γ bracket.
    Analyze {
        file: PathBuf,
        /// Also pack on the relay-free split graph and lift the packings back.
        #[arg(long)]
        via_splitting: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        /// Append a 6-digit decimal to every rational.
        #[arg(long)]
        decimal: bool,
    },
    /// Tabulate the closed-form bounds for a connectivity and terminal count.
    Bounds {
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        terminals: u64,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long)]
        decimal: bool,
    },
    /// Optimal Steiner tree packing with its certificate.
    Pack {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "int")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Eliminate every relay by complete splittings.
    Split {
        file: PathBuf,
        /// Include the split history.
        #[arg(long)]
        emit_history: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Edge strength with a minimizing partition.
    Strength {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Write an instance in the interchange format.
    #[command(subcommand)]
    Gen(Gen),
    /// Run the built-in check suites.
    Selftest {
        #[arg(default_value = "all", value_parser = parse_scope)]
        scope: Scope,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Unit cycle through the terminals with optional relays in the gaps.
    Cycle {
        #[arg(long)]
        terminals: usize,
        /// Gap indices receiving a relay; gap i follows terminal v{i}.
        #[arg(long, value_delimiter = ',')]
        relays: Vec<usize>,
        /// Emit the rate a/(a−1) routing scheme instead of the instance.
        #[arg(long)]
        scheme: bool,
    },
    /// Seeded random instance, pruned to its core.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 7)]
        vertices: usize,
        #[arg(long, default_value_t = 6)]
        extra: usize,
        #[arg(long, default_value_t = 3)]
        terminals: usize,
    },
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse()
}

enum Failure {
    Input(String),
    Limit(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_resource_limit() {
            Failure::Limit(e.to_string())
        } else {
            match e {
                Error::SearchExhausted(_) | Error::InvalidPacking(_) => Failure::Check(e.to_string()),
                _ => Failure::Input(e.to_string()),
            }
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(Instance::from_json(&text)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, via_splitting, format, decimal } => {
            let inst = load(&file)?;
            let report = analyze(&inst, AnalyzeOptions { via_splitting })?;
            let check = report.consistency();
            match format {
                Format::Human => print!("{}", report.render(decimal)),
                Format::Structured => println!("{}", report.to_json()),
            }
            if !check.ok() {
                return Err(Failure::Check(check.problems.join("; ")));
            }
        }
        Command::Bounds { lambda, terminals, format, decimal } => {
            let sheet = bound_sheet(lambda, terminals)?;
            match format {
                Format::Human => print!("{}", sheet.render(decimal)),
                Format::Structured => println!("{}", serde_json::to_string_pretty(&sheet).expect("sheet json")),
            }
        }
        Command::Pack { file, mode, format } => {
            let inst = load(&file)?;
            let (g, a) = (&inst.graph, &inst.terminals);
            let (rate, packing) = match mode {
                Mode::Int => max_integer_packing(g, a).map(|(k, p)| (Rate::integer(k), p))?,
                Mode::Half => half_integer_capacity(g, a)?,
                Mode::Frac => fractional_capacity_lp(g, a)?,
            };
            match format {
                Format::Human => {
                    println!("rate {rate}");
                    for (tree, w) in &packing.trees {
                        let edges: Vec<String> = tree.edges.iter().map(|e| e.0.to_string()).collect();
                        println!("  {w} × {{{}}}", edges.join(", "));
                    }
                }
                Format::Structured => println!("{}", packing.to_json()),
            }
        }
        Command::Split { file, emit_history, format } => {
            let inst = load(&file)?;
            let (split, elim) = split_instance(&inst)?;
            match format {
                Format::Human => {
                    println!("input  {}", describe(&inst.graph));
                    println!("split  {}  (scale {})", describe(&split.graph), elim.scale);
                    let g = &split.graph;
                    for e in g.edges() {
                        println!("  {} {}-{} capacity {}", e.id.0, g.name(e.u), g.name(e.v), e.capacity);
                    }
                    if emit_history {
                        println!("history {}", elim.history.to_json());
                    }
                }
                Format::Structured => {
                    let mut out = json!({
                        "scale": elim.scale,
                        "instance": serde_json::from_str::<serde_json::Value>(&split.to_json()).expect("instance json"),
                    });
                    if emit_history {
                        out["history"] = serde_json::from_str(&elim.history.to_json()).expect("history json");
                    }
                    println!("{}", serde_json::to_string_pretty(&out).expect("split json"));
                }
            }
        }
        Command::Strength { file, format } => {
            let inst = load(&file)?;
            let g = &inst.graph;
            let (eta, witness) = edge_strength(g, &inst.terminals)?;
            let blocks: Vec<Vec<&str>> = witness.blocks.iter().map(|b| b.iter().map(|v| g.name(*v)).collect()).collect();
            match format {
                Format::Human => {
                    println!("η = {eta}");
                    println!("crossing {} over {} blocks", witness.crossing, blocks.len());
                    for b in &blocks {
                        println!("  {{{}}}", b.join(", "));
                    }
                }
                Format::Structured => {
                    let out = json!({ "strength": eta, "crossing": witness.crossing, "blocks": blocks });
                    println!("{}", serde_json::to_string_pretty(&out).expect("strength json"));
                }
            }
        }
        Command::Gen(Gen::Cycle { terminals, relays, scheme }) => {
            let inst = cycle_instance(terminals, &relays)?;
            if scheme {
                let s = cycle_routing_scheme(&inst)?;
                let verdict = verify_routing_scheme(&inst.graph, &inst.terminals, &s);
                if !verdict.ok() {
                    return Err(Failure::Check(verdict.problems.join("; ")));
                }
                println!("{}", s.to_json());
            } else {
                println!("{}", inst.to_json());
            }
        }
        Command::Gen(Gen::Random { seed, vertices, extra, terminals }) => {
            let (inst, _) = random_instance(vertices, extra, terminals, seed)?;
            println!("{}", inst.to_json());
        }
        Command::Selftest { scope } => {
            let outcomes = checks::run(scope);
            let mut failed = 0;
            for o in &outcomes {
                println!("{}", o.line());
                failed += usize::from(!o.passed());
            }
            println!("{} of {} checks passed", outcomes.len() - failed, outcomes.len());
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
