use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use spantourn::driver::{aut_spanning_run, iso_spanning_run, IsoOptions, RunOptions};
use spantourn::gen::{cayley_tournament, random_k_spanning, OddGroup};
use spantourn::search::{brute_aut, brute_iso, DEFAULT_ORACLE_CAP};
use spantourn::structures::{is_k_spanning, min_spanning_k, SpanningMode};
use spantourn::wl2::wl2_with;
use spantourn::{emit_ctf, parse_ctf, ColoredDigraph, Error, ExecMode, PermGroup};

#[derive(Parser)]
#[command(name = "spantourn", version, about = "Automorphisms and isomorphisms of k-spanning colored tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Jobs {
    /// Worker threads; 1 runs sequentially, 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group of a k-spanning tournament.
    Aut {
        file: String,
        /// Defaults to the least k for which the input is k-spanning.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Isomorphism coset between two k-spanning tournaments.
    Iso {
        first: String,
        second: String,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Whether the small arc classes span the vertex set.
    Check {
        file: String,
        #[arg(long)]
        k: usize,
        /// Also check reachability from this vertex.
        #[arg(long)]
        source: Option<usize>,
    },
    /// Stable two-dimensional refinement, written as a ctf file.
    Wl2 {
        file: String,
        /// Individualized vertex sets, e.g. `0,1;4`.
        #[arg(long)]
        tau: Option<String>,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Brute-force ground truth for small inputs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Timing on circulant tournaments with singleton connection classes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "101,301,501")]
        sizes: Vec<usize>,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Cayley tournament of Z_n; parts separated by `/`, elements by `,`.
    Cayley {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        parts: String,
    },
    /// Seeded random k-spanning tournament on an odd number of vertices.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        extra_colors: usize,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Aut { file: String },
    Iso { first: String, second: String },
}

enum Verdict {
    Positive,
    Negative,
}

fn read(path: &str) -> anyhow::Result<ColoredDigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    parse_ctf(&text).with_context(|| format!("parsing {path}"))
}

fn exec_mode(jobs: Jobs) -> ExecMode {
    match jobs.jobs {
        1 => ExecMode::Sequential,
        0 => ExecMode::Parallel,
        t => {
            spantourn::exec::set_worker_threads(t);
            ExecMode::Parallel
        }
    }
}

fn oracle_cap() -> anyhow::Result<usize> {
    match std::env::var("SPANTOURN_ORACLE_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| anyhow!("SPANTOURN_ORACLE_CAP must be a number, got `{v}`")),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn choose_k(xs: &[&ColoredDigraph], k: Option<usize>) -> Option<usize> {
    match k {
        Some(k) => Some(k),
        None => xs
            .iter()
            .map(|x| min_spanning_k(x, SpanningMode::Strong))
            .collect::<Option<Vec<_>>>()
            .and_then(|ks| ks.into_iter().max()),
    }
}

fn print_group(g: &PermGroup) {
    for p in g.generators() {
        println!("generator {p}");
    }
    println!("order {}", g.order());
}

fn parse_parts(s: &str) -> anyhow::Result<Vec<Vec<usize>>> {
    s.split('/')
        .map(|part| {
            part.split(',')
                .map(|e| e.trim().parse::<usize>().with_context(|| format!("bad element `{e}`")))
                .collect()
        })
        .collect()
}

fn parse_tau(s: &str) -> anyhow::Result<Vec<Vec<usize>>> {
    s.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|cell| {
            cell.split(',')
                .map(|e| e.trim().parse::<usize>().with_context(|| format!("bad vertex `{e}`")))
                .collect()
        })
        .collect()
}

fn not_spanning(k: Option<usize>) -> anyhow::Result<Verdict> {
    match k {
        Some(k) => println!("not {k}-spanning"),
        None => println!("not k-spanning for any k"),
    }
    Ok(Verdict::Negative)
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    match cli.command {
        Command::Aut { file, k, jobs } => {
            let x = read(&file)?;
            x.check_tournament()?;
            let Some(k) = choose_k(&[&x], k) else {
                return not_spanning(None);
            };
            let opts = RunOptions {
                mode: exec_mode(jobs),
                ..RunOptions::default()
            };
            println!("n {}", x.n());
            println!("k {k}");
            match aut_spanning_run(&x, k, SpanningMode::Strong, &opts, None) {
                Ok(run) => {
                    print_group(&run.group);
                    Ok(Verdict::Positive)
                }
                Err(Error::NotSpanning { k }) => not_spanning(Some(k)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Iso {
            first,
            second,
            k,
            jobs,
        } => {
            let x = read(&first)?;
            let y = read(&second)?;
            x.check_tournament()?;
            y.check_tournament()?;
            let Some(k) = choose_k(&[&x, &y], k) else {
                return not_spanning(None);
            };
            let opts = IsoOptions {
                run: RunOptions {
                    mode: exec_mode(jobs),
                    ..RunOptions::default()
                },
                exhaustive: false,
            };
            println!("k {k}");
            let run = match iso_spanning_run(&x, &y, k, &opts) {
                Ok(run) => run,
                Err(Error::NotSpanning { k }) => return not_spanning(Some(k)),
                Err(e) => return Err(e.into()),
            };
            match (run.coset.representative(), run.coset.group()) {
                (Some(rep), Some(aut)) => {
                    println!("ISOMORPHIC");
                    println!("representative {}", rep.to_line());
                    println!("aut_order {}", aut.order());
                    Ok(Verdict::Positive)
                }
                _ => {
                    println!("NOT ISOMORPHIC");
                    Ok(Verdict::Negative)
                }
            }
        }
        Command::Check { file, k, source } => {
            let x = read(&file)?;
            println!("k {k}");
            let strong = is_k_spanning(&x, k, SpanningMode::Strong)?;
            println!("strong {}", if strong { "yes" } else { "no" });
            let mut ok = strong;
            if let Some(s) = source {
                let reach = is_k_spanning(&x, k, SpanningMode::ReachableFrom(s))?;
                println!("reachable-from {s} {}", if reach { "yes" } else { "no" });
                ok &= reach;
            }
            Ok(if ok { Verdict::Positive } else { Verdict::Negative })
        }
        Command::Wl2 { file, tau } => {
            let x = read(&file)?;
            let tau = match tau {
                Some(t) => parse_tau(&t)?,
                None => Vec::new(),
            };
            print!("{}", emit_ctf(&wl2_with(&x, &tau, ExecMode::default())?));
            Ok(Verdict::Positive)
        }
        Command::Gen(GenCommand::Cayley { n, parts }) => {
            let group = OddGroup::cyclic(n)?;
            print!("{}", emit_ctf(&cayley_tournament(&group, &parse_parts(&parts)?)?));
            Ok(Verdict::Positive)
        }
        Command::Gen(GenCommand::Random {
            n,
            k,
            seed,
            extra_colors,
        }) => {
            print!("{}", emit_ctf(&random_k_spanning(n, k, extra_colors, seed)?));
            Ok(Verdict::Positive)
        }
        Command::Oracle(OracleCommand::Aut { file }) => {
            let x = read(&file)?;
            print_group(&brute_aut(&x, oracle_cap()?)?);
            Ok(Verdict::Positive)
        }
        Command::Oracle(OracleCommand::Iso { first, second }) => {
            let x = read(&first)?;
            let y = read(&second)?;
            let all = brute_iso(&x, &y, oracle_cap()?)?;
            match all.first() {
                Some(rep) => {
                    println!("ISOMORPHIC");
                    println!("representative {}", rep.to_line());
                    println!("count {}", all.len());
                    Ok(Verdict::Positive)
                }
                None => {
                    println!("NOT ISOMORPHIC");
                    Ok(Verdict::Negative)
                }
            }
        }
        Command::Bench { sizes, jobs } => {
            let opts = RunOptions {
                mode: exec_mode(jobs),
                ..RunOptions::default()
            };
            println!("n,k,wall_ms,nodes");
            for n in sizes {
                let parts: Vec<Vec<usize>> = (1..=n / 2).map(|a| vec![a]).collect();
                let x = cayley_tournament(&OddGroup::cyclic(n)?, &parts)?;
                let start = Instant::now();
                let run = aut_spanning_run(&x, 1, SpanningMode::Strong, &opts, None)?;
                let ms = start.elapsed().as_secs_f64() * 1000.0;
                if run.group.order() != n.into() {
                    bail!("unexpected group order {} for n = {n}", run.group.order());
                }
                println!("{n},1,{ms:.1},{}", run.stats.nodes);
            }
            Ok(Verdict::Positive)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Positive) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
