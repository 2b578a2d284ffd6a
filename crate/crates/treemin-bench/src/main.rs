use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use treemin::cartesian::HeapKind;
use treemin::Error;
use treemin_bench::generate::{generate, Family, Fixture, Params};
use treemin_bench::run::{run, Structure};
use treemin_bench::workload::{Workload, WorkloadKind};
use treemin_bench::{cartesian, report, run_trials, Trial};

#[derive(Parser)]
#[command(name = "treemin", about = "Decremental tree minima benchmarks and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a fixture file.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// bad_tree: number of single-node children
        #[arg(long)]
        k: Option<usize>,
        /// random_graph: total edge count
        #[arg(long)]
        edges: Option<usize>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run one workload on a tree fixture and write a JSON record.
    Run {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, default_value = "uo")]
        structure: Structure,
        #[arg(long, default_value = "tree_sort")]
        workload: WorkloadKind,
        /// operation budget for random_cuts and mixed
        #[arg(long, default_value_t = 1000)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        pseed: u64,
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the Cartesian tree of a fixture's graph.
    Cartesian {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, default_value_t = 0)]
        pseed: u64,
        #[arg(long)]
        binary_heap: bool,
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a grid of trials on the worker pool, one JSON record per trial.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "path,star,bad_tree,random_tree")]
        families: Vec<Family>,
        #[arg(long, value_delimiter = ',', default_value = "uo,naive")]
        structures: Vec<Structure>,
        /// sizes as powers of two
        #[arg(long, value_delimiter = ',', default_value = "8,10,12")]
        log_n: Vec<u32>,
        #[arg(long, default_value = "tree_sort")]
        workload: WorkloadKind,
        #[arg(long, default_value_t = 1000)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Collect JSON records into a CSV (and a combined JSON next to it).
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write_json<T: serde::Serialize>(value: &T, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => serde_json::to_writer_pretty(BufWriter::new(File::create(p)?), value)?,
        None => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

fn read_fixture(p: &PathBuf) -> anyhow::Result<Fixture> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(Fixture::parse(&text)?)
}

fn main_inner(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Generate { family, n, seed, k, edges, out } => {
            let fx = generate(family, n, seed, Params { k, edges })?;
            std::fs::write(&out, fx.to_text()).with_context(|| format!("writing {}", out.display()))?;
        }
        Cmd::Run { fixture, structure, workload, m, pseed, verify, out } => {
            let fx = read_fixture(&fixture)?;
            let w = Workload { kind: workload, m, seed: pseed };
            let rec = run(&fx, structure, w, pseed, verify)?;
            write_json(&rec, out.as_ref())?;
        }
        Cmd::Cartesian { fixture, pseed, binary_heap, verify, out } => {
            let fx = read_fixture(&fixture)?;
            let heap = if binary_heap { HeapKind::Binary } else { HeapKind::Pairing };
            let rec = cartesian::run_cartesian(&fx, pseed, heap, verify)?;
            write_json(&rec, out.as_ref())?;
        }
        Cmd::Sweep { families, structures, log_n, workload, m, trials, verify, out_dir } => {
            std::fs::create_dir_all(&out_dir)?;
            let mut grid = Vec::new();
            for &family in &families {
                for &structure in &structures {
                    for &k in &log_n {
                        for t in 0..trials {
                            grid.push(Trial { family, n: 1 << k, fixture_seed: t, structure, kind: workload, m, pseed: t });
                        }
                    }
                }
            }
            for (trial, rec) in grid.iter().zip(run_trials(&grid, verify)) {
                match rec {
                    Ok(rec) => {
                        let name = format!("{}-{}-{}-{}.json", trial.family, trial.structure, trial.n, trial.pseed);
                        write_json(&rec, Some(&out_dir.join(name)))?;
                    }
                    Err(Error::BadParams(msg)) => eprintln!("skipping {} {} n={}: {msg}", trial.family, trial.structure, trial.n),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Cmd::Report { input, out } => {
            let mut records = report::read_dir(&input)?;
            report::sort_records(&mut records);
            report::write_csv(&records, BufWriter::new(File::create(&out)?))?;
            report::write_json(&records, BufWriter::new(File::create(out.with_extension("json"))?))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
