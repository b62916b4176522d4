//! `lmk`: generate graphs, build landmark embeddings, query bounds, run the
//! random-graph validators and benchmark sweeps.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use lmk_core::bench::{
    run_sweep, theorem_lb_check, theorem_ub_check, SweepCsv, SweepSpec, TheoremRun,
};
use lmk_core::embedding::{read_embedding, write_embedding};
use lmk_core::graph::{
    components, er_generate, extract_lcc, ingest_edgelist, read_graph, write_binary,
    write_edgelist, GRAPH_MAGIC,
};
use lmk_core::lab::{
    branching_survival_run, coupling_run, coupling_trend_run, shell_growth_run,
    shell_intersection_run, shell_profile, typical_distance_run, CheckReport, CouplingConfig,
    ShellSampler,
};
use lmk_core::scalar::display_distance;
use lmk_core::{build_embedding, AnyEmbedding, Graph, HopEmbedding, LandmarkFamily, NodeId};

/// Exit status for a check that ran but did not pass.
const EXIT_CHECK_FAILED: u8 = 2;

#[derive(Parser)]
#[command(
    name = "lmk",
    version,
    about = "Landmark embeddings for approximate graph distances"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "LMK_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Binary,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an Erdős–Rényi graph G(n, lambda/n).
    Generate {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        lambda: f64,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "binary")]
        format: GraphFormat,
    },
    /// Canonicalize an edge list or graph file and report its largest
    /// component.
    Ingest {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Write only the largest connected component.
        #[arg(long)]
        lcc: bool,
        #[arg(long, value_enum, default_value = "binary")]
        format: GraphFormat,
    },
    /// Build a BFS landmark embedding.
    Embed {
        #[arg(short, long)]
        graph: PathBuf,
        /// Landmark set base M.
        #[arg(short = 'M', long = "base", default_value_t = 2)]
        base: u32,
        /// Largest exponent r; sets have sizes M^0..M^r.
        #[arg(short = 'r', long = "max-exp", required_unless_present = "family")]
        max_exp: Option<u32>,
        /// Number of rounds R.
        #[arg(short = 'R', long = "rounds", required_unless_present = "family")]
        rounds: Option<u32>,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        /// Use landmark sets from a family file instead of sampling.
        #[arg(long, conflicts_with_all = ["max_exp", "rounds"])]
        family: Option<PathBuf>,
        /// Also write the sampled family.
        #[arg(long)]
        family_out: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Distance bounds for one pair.
    Query {
        #[arg(short, long)]
        embedding: PathBuf,
        u: NodeId,
        v: NodeId,
        /// Also compute the upper bound (BFS embeddings only).
        #[arg(long)]
        ub: bool,
    },
    /// Shell sizes |∂N_k(u)| for k = 0..=k_max.
    Shells {
        #[arg(short, long)]
        graph: PathBuf,
        u: NodeId,
        #[arg(short, long, default_value_t = 6)]
        k_max: u32,
    },
    /// Run a statistical check and print a PASS/FAIL line.
    Validate {
        check: Check,
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(short, long, default_value_t = 5.0)]
        lambda: f64,
        /// Pairs, nodes, trials or runs, depending on the check.
        #[arg(long)]
        samples: Option<usize>,
        /// Shell depth for the coupling checks.
        #[arg(long, default_value_t = 3)]
        depth: u32,
        /// Repetitions per size for coupling-trend.
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Sizes for coupling-trend.
        #[arg(long, value_delimiter = ',', default_values_t = [5_000usize, 20_000, 80_000])]
        sizes: Vec<usize>,
        /// Shell sampler for the coupling checks.
        #[arg(long, value_enum, default_value = "graph")]
        sampler: Sampler,
        /// Calculator constants for theorem-lb / theorem-ub.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0f64])]
        constant: Vec<f64>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(short, long, default_value_t = 1)]
        seed: u64,
        /// Write the per-trial table here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a sweep spec and write the CSV report.
    Bench {
        spec: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Leave the timing columns empty (byte-reproducible output).
        #[arg(long)]
        mask_timing: bool,
        /// Override the spec's `emit_dir`.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Print version and file-format versions.
    Version,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    TypicalDistance,
    ShellGrowth,
    ShellIntersection,
    Coupling,
    CouplingTrend,
    BranchingSurvival,
    TheoremLb,
    TheoremUb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sampler {
    Graph,
    Exploration,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let kind = error_kind(&e);
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: kind={kind} msg={msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring thread pool")?;
    }
    match cli.command {
        Command::Generate {
            n,
            lambda,
            seed,
            out,
            format,
        } => {
            let g = er_generate(n, lambda, seed)?;
            write_graph(&g, &out, format)?;
            println!("{} nodes, {} edges", g.node_count(), g.edge_count());
        }
        Command::Ingest {
            input,
            out,
            lcc,
            format,
        } => ingest(&input, &out, lcc, format)?,
        Command::Embed {
            graph,
            base,
            max_exp,
            rounds,
            seed,
            family,
            family_out,
            out,
        } => {
            let g = load_graph(&graph)?;
            let fam = match family {
                Some(path) => {
                    let f = LandmarkFamily::read_text(BufReader::new(open(&path)?))?;
                    if f.node_count() != g.node_count() {
                        return Err(lmk_core::Error::Format(format!(
                            "family is for {} nodes, graph has {}",
                            f.node_count(),
                            g.node_count()
                        ))
                        .into());
                    }
                    f
                }
                None => LandmarkFamily::sample(
                    g.node_count(),
                    base,
                    max_exp.expect("required by clap"),
                    rounds.expect("required by clap"),
                    seed,
                )?,
            };
            let emb: HopEmbedding = build_embedding(&g, &fam)?;
            atomic_write(&out, |w| Ok(write_embedding(&emb, w)?))?;
            if let Some(path) = family_out {
                atomic_write(&path, |w| Ok(fam.write_text(w)?))?;
            }
            println!(
                "{} nodes, D = {} (M = {}, r = {}, R = {})",
                emb.node_count(),
                emb.dims(),
                fam.base(),
                fam.max_exp(),
                fam.rounds()
            );
        }
        Command::Query {
            embedding,
            u,
            v,
            ub,
        } => {
            let emb = read_embedding(BufReader::new(open(&embedding)?))?;
            match emb {
                AnyEmbedding::Hops(e) => print_bounds(&e, u, v, ub)?,
                AnyEmbedding::Real(e) => print_bounds(&e, u, v, ub)?,
            }
        }
        Command::Shells { graph, u, k_max } => {
            let g = load_graph(&graph)?;
            let p = shell_profile(&g, u, k_max)?;
            println!("k\tshell\tcumulative");
            for (k, (c, s)) in p.counts.iter().zip(&p.cumulative).enumerate() {
                println!("{k}\t{c}\t{s}");
            }
        }
        Command::Validate {
            check,
            n,
            lambda,
            samples,
            depth,
            reps,
            sizes,
            sampler,
            constant,
            eps,
            theta,
            seed,
            csv,
        } => {
            let sampler = match sampler {
                Sampler::Graph => ShellSampler::Graph,
                Sampler::Exploration => ShellSampler::Exploration,
            };
            let report = match check {
                Check::TypicalDistance => typical_distance_run(
                    n.unwrap_or(10_000),
                    lambda,
                    samples.unwrap_or(1000),
                    seed,
                )?,
                Check::ShellGrowth => {
                    shell_growth_run(n.unwrap_or(20_000), lambda, samples.unwrap_or(50), seed)?
                }
                Check::ShellIntersection => shell_intersection_run(
                    n.unwrap_or(20_000),
                    lambda,
                    samples.unwrap_or(100),
                    seed,
                )?,
                Check::Coupling => coupling_run(CouplingConfig {
                    sampler,
                    ..CouplingConfig::new(
                        n.unwrap_or(20_000),
                        lambda,
                        depth,
                        samples.unwrap_or(500),
                        seed,
                    )
                })?,
                Check::CouplingTrend => {
                    let template = CouplingConfig {
                        sampler,
                        ..CouplingConfig::new(0, lambda, depth, samples.unwrap_or(500), seed)
                    };
                    coupling_trend_run(&sizes, template, reps)?
                }
                Check::BranchingSurvival => branching_survival_run(
                    lambda,
                    depth.max(1) as usize,
                    samples.unwrap_or(10_000),
                    seed,
                )?,
                Check::TheoremLb | Check::TheoremUb => {
                    let lower = matches!(check, Check::TheoremLb);
                    let theta = theta.unwrap_or(if lower { 0.25 } else { 0.2 });
                    let run = TheoremRun {
                        pairs: samples.unwrap_or(1000),
                        seed,
                        ..TheoremRun::new(n.unwrap_or(4000), lambda, eps, theta)
                    };
                    if lower {
                        theorem_lb_check(run, &constant)?
                    } else {
                        theorem_ub_check(run, &constant)?
                    }
                }
            };
            return finish_check(&report, csv.as_deref());
        }
        Command::Bench {
            spec,
            out,
            mask_timing,
            emit_dir,
        } => {
            let mut spec = SweepSpec::from_path(&spec)
                .with_context(|| format!("reading sweep spec {}", spec.display()))?;
            if emit_dir.is_some() {
                spec.emit_dir = emit_dir;
            }
            let mut failed = 0;
            let mut rows = 0;
            atomic_write(&out, |w| {
                let mut csv = SweepCsv::new(w, mask_timing)?;
                rows = run_sweep(&spec, |row| {
                    failed += !row.is_ok() as usize;
                    csv.write_row(row)
                })?;
                csv.into_inner()?.flush()?;
                Ok(())
            })?;
            println!("{rows} rows written to {} ({failed} failed)", out.display());
        }
        Command::Version => {
            println!("lmk {}", env!("CARGO_PKG_VERSION"));
            println!(
                "graph format {} v{}",
                String::from_utf8_lossy(GRAPH_MAGIC),
                lmk_core::graph::GRAPH_VERSION
            );
            println!(
                "embedding format {} v{}",
                String::from_utf8_lossy(lmk_core::embedding::EMBEDDING_MAGIC),
                lmk_core::embedding::EMBEDDING_VERSION
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<lmk_core::Error>() {
            return core.kind();
        }
        if cause.is::<std::io::Error>() {
            return "io";
        }
    }
    "cli"
}

fn finish_check(report: &CheckReport, csv: Option<&Path>) -> Result<ExitCode> {
    if let Some(path) = csv {
        atomic_write(path, |w| Ok(report.write_csv(w)?))?;
    }
    println!("{}", report.line());
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn print_bounds<T: lmk_core::Distance>(
    emb: &lmk_core::Embedding<T>,
    u: NodeId,
    v: NodeId,
    ub: bool,
) -> Result<()> {
    if ub {
        let b = emb.query(u, v)?;
        let ub = b.ub.map_or("none".to_string(), |x| display_distance(x));
        println!("lb={} ub={ub}", display_distance(b.lb));
    } else {
        println!("lb={}", display_distance(emb.query_lower(u, v)?));
    }
    Ok(())
}

fn ingest(input: &Path, out: &Path, lcc: bool, format: GraphFormat) -> Result<()> {
    let mut bytes = Vec::new();
    std::io::Read::read_to_end(&mut open(input)?, &mut bytes)?;
    let g = if bytes.starts_with(GRAPH_MAGIC) {
        read_graph(bytes.as_slice())?
    } else {
        let ing = ingest_edgelist(bytes.as_slice())?;
        log::info!(
            "{} lines, {} edges read, {} self-loops and {} duplicates dropped",
            ing.stats.lines,
            ing.stats.edges_read,
            ing.stats.self_loops,
            ing.stats.duplicates
        );
        ing.graph
    };
    let (largest, _) = extract_lcc(&g)?;
    println!(
        "graph: {} nodes, {} edges, {} components",
        g.node_count(),
        g.edge_count(),
        components(&g).count()
    );
    println!(
        "lcc: {} nodes, {} edges",
        largest.node_count(),
        largest.edge_count()
    );
    write_graph(if lcc { &largest } else { &g }, out, format)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("opening {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_graph(BufReader::new(open(path)?))
        .with_context(|| format!("reading graph {}", path.display()))
}

fn write_graph(g: &Graph, out: &Path, format: GraphFormat) -> Result<()> {
    atomic_write(out, |w| {
        match format {
            GraphFormat::Binary => write_binary(g, w)?,
            GraphFormat::Text => write_edgelist(g, w)?,
        }
        Ok(())
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn atomic_write<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<&mut File>) -> Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        body(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
