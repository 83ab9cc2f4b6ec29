use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use d4plus_core::enumerator::{algorithm_a, GraphPool};
use d4plus_core::functor::{evaluate_ta_capped, tau_matrix};
use d4plus_core::report::{dims_report, render};
use d4plus_core::tensor::{evaluate_capped, evaluate_hat_capped, DEFAULT_MAX_ENTRIES};
use d4plus_core::verify::{run_suite, Suite};
use d4plus_core::{BilabelledGraph, Matrix, Partition, PartitionVector, Scalar, Tensor};
use serde_json::Value;

/// Largest `k0` accepted by `enumerate` and `count`.
const K0_CAP: usize = 10;
const CAP_VAR: &str = "D4PLUS_MAX_ENTRIES";

#[derive(Parser)]
#[command(name = "d4plus", version, about = "Intertwiner graphs and partition tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the enumeration and write the pool.
    Enumerate {
        #[arg(long)]
        k0: usize,
        /// Output directory.
        #[arg(long, default_value = "pool")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the counts table `k,l,count`.
    Count {
        #[arg(long)]
        k0: usize,
    },
    /// Rank of the images of C(0,k) under the tau weights.
    Dims {
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
        /// Also write the rows as JSON to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a group of checks; exits non-zero on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Evaluate a graph, a partition or a partition vector as an exact tensor.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        /// `tau` or a JSON file holding a symmetric matrix of scalar strings.
        #[arg(long = "A", default_value = "tau")]
        a: String,
        /// Evaluate the hat of a partition input.
        #[arg(long)]
        hat: bool,
    },
    /// Write one DOT file per graph of a pool JSON file.
    ExportDot {
        #[arg(long)]
        pool: PathBuf,
        #[arg(long, default_value = "dot")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate { k0, out, format } => {
            let pool = enumerate(k0)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let json = out.join("pool.json");
            write(&json, &serde_json::to_string_pretty(&pool.to_json())?)?;
            if format == Format::Dot {
                write_dot_files(&pool, &out.join("dot"))?;
            }
            print!("{}", pool.counts_csv());
        }
        Command::Count { k0 } => print!("{}", enumerate(k0)?.counts_csv()),
        Command::Dims { n, max_points, report } => {
            if n != 4 {
                eprintln!("warning: N = {n}; the classical comparison is only computed at N = 4");
            }
            let pool = algorithm_a(max_points)?;
            let rows = dims_report(&pool, n, max_points, max_entries()?)?;
            print!("{}", render(&rows, n));
            if let Some(path) = report {
                write(&path, &serde_json::to_string_pretty(&rows)?)?;
            }
        }
        Command::Verify { suite } => {
            let results = run_suite(suite);
            for r in &results {
                println!("{r}");
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} checks, {} failed", results.len(), failed);
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Eval { input, n, a, hat } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let tensor = eval(&text, n, &a, hat).with_context(|| format!("in {}", input.display()))?;
            println!("{}", serde_json::to_string(&tensor)?);
        }
        Command::ExportDot { pool, out } => {
            let text = fs::read_to_string(&pool).with_context(|| format!("reading {}", pool.display()))?;
            let pool = GraphPool::from_json(&serde_json::from_str(&text)?)?;
            let written = write_dot_files(&pool, &out)?;
            println!("{written} files written to {}", out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(k0: usize) -> Result<GraphPool> {
    if k0 > K0_CAP {
        bail!("k0 = {k0} exceeds the cap of {K0_CAP}");
    }
    Ok(algorithm_a(k0)?)
}

fn max_entries() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{CAP_VAR} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_ENTRIES),
    }
}

fn weight_matrix(a: &str, n: usize) -> Result<Matrix> {
    if a == "tau" {
        return Ok(tau_matrix(n)?);
    }
    let text = fs::read_to_string(a).with_context(|| format!("reading {a}"))?;
    let rows: Vec<Vec<Scalar>> = serde_json::from_str(&text).with_context(|| format!("parsing {a}"))?;
    let m = Matrix::from_rows(rows)?;
    if m.rows() != n || !m.is_symmetric() {
        bail!("{a}: expected a symmetric {n}x{n} matrix");
    }
    Ok(m)
}

fn eval(text: &str, n: usize, a: &str, hat: bool) -> Result<Tensor> {
    let value: Value = serde_json::from_str(text)?;
    let cap = max_entries()?;
    let field = |name| value.get(name).is_some();
    if field("vertices") {
        if hat {
            bail!("--hat applies to partition inputs only");
        }
        if a == "tau" && n != 4 {
            eprintln!("warning: N = {n}; the tau weights only match partition evaluation at N = 4");
        }
        let g: BilabelledGraph = serde_json::from_str(text)?;
        return Ok(evaluate_ta_capped(&g, &weight_matrix(a, n)?, cap)?);
    }
    let x: PartitionVector = if field("terms") {
        serde_json::from_str(text)?
    } else if field("blocks") {
        let p: Partition = serde_json::from_str(text)?;
        PartitionVector::from_terms(p.upper(), p.lower(), [(Scalar::one(), p)])?
    } else {
        bail!("expected a graph (\"vertices\"), a partition (\"blocks\") or a vector (\"terms\")");
    };
    Ok(if hat { evaluate_hat_capped(&x, n, cap)? } else { evaluate_capped(&x, n, cap)? })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn write_dot_files(pool: &GraphPool, dir: &Path) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = 0;
    for (k, l) in pool.counts().into_iter().map(|(shape, _)| shape) {
        for (i, g) in pool.cell(k, l).into_iter().enumerate() {
            let name = format!("c_{k}_{l}_{i}");
            write(&dir.join(format!("{name}.dot")), &g.to_dot(&name))?;
            written += 1;
        }
    }
    Ok(written)
}
