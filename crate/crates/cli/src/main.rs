use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chorded::graph::{generate, load_graph, write_edge_list, GeneratorKind, GeneratorParams, Graph, InputFormat};
use chorded::oracle::{oracle_max_chorded_cycle, DEFAULT_LIMIT_N};
use chorded::pipeline::{run_corpus, run_pipeline, write_atomic, ConfigOverrides, Mode};
use clap::{Args, Parser, Subcommand};

const EXIT_NO_CYCLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "chorded", version, about = "Long cycles with many chords")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline on one graph and emit a JSON report.
    Run(RunArgs),
    /// Run every entry of a JSON manifest.
    Corpus {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Directory for per-entry reports and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive maximum chord count for a small graph.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "edge-list")]
        format: InputFormat,
        #[arg(long, default_value_t = DEFAULT_LIMIT_N)]
        limit_n: usize,
    },
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        d: usize,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        girth: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "edge-list")]
    format: InputFormat,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    min_degree_c: Option<usize>,
    /// A decimal or a fraction such as 1/16.
    #[arg(long, value_parser = parse_rational)]
    epsilon1: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    /// Degree threshold separating L from the rest.
    #[arg(long = "m")]
    m: Option<usize>,
    #[arg(long)]
    anchor_size: Option<usize>,
    #[arg(long)]
    max_cycle_len: Option<usize>,
    #[arg(long)]
    max_path_len: Option<usize>,
    #[arg(long)]
    max_link_len: Option<usize>,
    #[arg(long)]
    gadget_budget: Option<usize>,
    #[arg(long)]
    oracle_limit: Option<usize>,
    #[arg(long)]
    mode: Option<Mode>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            min_degree_c: self.min_degree_c,
            epsilon1: self.epsilon1,
            k: self.k,
            degree_threshold_m: self.m,
            anchor_size: self.anchor_size,
            max_cycle_len: self.max_cycle_len,
            max_path_len: self.max_path_len,
            max_link_len: self.max_link_len,
            gadget_budget: self.gadget_budget,
            seed: self.seed,
            oracle_limit: self.oracle_limit,
            mode: self.mode,
        }
    }
}

fn parse_rational(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("'{s}' must be positive and finite"))
    }
}

/// Any failure that maps to a non-zero exit status.
struct Failure(u8, String);

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn read_graph(path: &Path, format: InputFormat) -> Result<Graph, Failure> {
    let file = File::open(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let loaded = load_graph(BufReader::new(file), format).map_err(input_error)?;
    if loaded.drops.total() > 0 {
        eprintln!("warning: dropped edges while loading: {:?}", loaded.drops);
    }
    Ok(loaded.graph)
}

fn emit(out: Option<&Path>, json: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, json).map_err(input_error),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn run(args: RunArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.input, args.format)?;
    let cfg = args.overrides().resolve(g.n());
    cfg.validate().map_err(input_error)?;
    let report = run_pipeline(&g, &cfg);
    emit(args.out.as_deref(), &report.to_json())?;
    match &report.result {
        Some(r) => eprintln!("cycle length {} with {} chords ({:?})", r.length, r.chords, r.source),
        None => eprintln!("no cycle found"),
    }
    if let Some(e) = &report.internal_error {
        return Err(Failure(EXIT_INTERNAL, e.clone()));
    }
    Ok(if report.result.is_some() { 0 } else { EXIT_NO_CYCLE })
}

fn corpus(manifest: &Path, workers: Option<usize>, out: Option<&Path>) -> Result<u8, Failure> {
    let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let summary = run_corpus(manifest, &ConfigOverrides::default(), workers, out).map_err(input_error)?;
    println!("{:<24} {:>8} {:>5} {:>10} {:>10} {:>12}", "family", "n", "runs", "med len", "med chords", "med norm");
    for row in &summary.aggregate {
        println!(
            "{:<24} {:>8} {:>5} {:>10.1} {:>10.1} {:>12.3}",
            row.family, row.n, row.runs, row.median_length, row.median_chords, row.median_normalized
        );
    }
    let mut worst = 0;
    for e in &summary.entries {
        if let Some(ratio) = e.ratio {
            println!("{:<24} oracle ratio {ratio:.3}", e.name);
        }
        if let Some(err) = &e.error {
            eprintln!("{}: {err}", e.name);
            // Entries that ran but failed verification report as internal errors.
            worst = worst.max(if e.length.is_some() || e.n.is_some() { EXIT_INTERNAL } else { EXIT_INPUT });
        }
    }
    Ok(worst)
}

fn oracle(input: &Path, format: InputFormat, limit_n: usize) -> Result<u8, Failure> {
    let g = read_graph(input, format)?;
    let res = oracle_max_chorded_cycle(&g, limit_n).map_err(input_error)?;
    println!("{}", serde_json::to_string_pretty(&res).expect("oracle result serializes"));
    Ok(0)
}

fn gen(kind: GeneratorKind, params: GeneratorParams, seed: u64, out: &Path) -> Result<u8, Failure> {
    let g = generate(kind, params, seed).map_err(input_error)?;
    let file = File::create(out).map_err(|e| input_error(format!("{}: {e}", out.display())))?;
    write_edge_list(&g, BufWriter::new(file)).map_err(input_error)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Corpus { manifest, workers, out } => corpus(&manifest, workers, out.as_deref()),
        Command::Oracle { input, format, limit_n } => oracle(&input, format, limit_n),
        Command::Gen {
            kind,
            n,
            d,
            min_degree,
            girth,
            seed,
            out,
        } => gen(kind, GeneratorParams { n, d, min_degree, girth }, seed, &out),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
