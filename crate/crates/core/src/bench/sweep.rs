//! Parameter sweeps over graphs, landmark families and builders.
//!
//! A sweep spec is a flat text file of `key = v1, v2, ...` lines; `#`
//! starts a comment. Recognized keys:
//!
//! | key           | meaning                                          | default |
//! |---------------|--------------------------------------------------|---------|
//! | `graph`       | `er` or paths to edge-list / binary graph files  | `er`    |
//! | `n`, `lambda` | generator sizes and mean degrees (for `er`)      |         |
//! | `M`           | landmark set base                                | `2`     |
//! | `sizing`      | `lb` or `ub`: which calculator picks `r` and `R` | `lb`    |
//! | `theta`       | exponent scale for `r`                           | `0.25`  |
//! | `eps`         | calculator ε and violation threshold             | `0.5`   |
//! | `constant`    | calculator constant                              | `1`     |
//! | `varsigma`    | calculator exponent slack (single value)         | `0.01`  |
//! | `R`, `r`      | explicit values, overriding the calculator       |         |
//! | `builder`     | `bfs`, `gnn`                                     | `bfs`   |
//! | `pairs`       | sampled pairs per cell                           | `1000`  |
//! | `repetitions` | independent graphs per configuration             | `1`     |
//! | `seed`        | base seed                                        | `0`     |
//! | `gnn_dir`     | where `gnn` cells find their embedding files     |         |
//! | `emit_dir`    | where graphs and families are written            |         |
//!
//! Cells run in nested order: graph, n, lambda, repetition, M, theta, eps,
//! constant (or R), r, builder. Derived seeds depend on the graph, size,
//! mean degree, repetition and base only, so every builder and every `R`
//! sees the same graph, the same pairs, and nested landmark families.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bench::distortion::{run_distortion, DistortionMetrics, DistortionOptions};
use crate::bench::pairs::sample_pairs;
use crate::bench::timing::time_build;
use crate::embedding::{read_embedding, AnyEmbedding, Builder, LandmarkFamily};
use crate::error::{Error, Result};
use crate::graph::{er_generate, read_graph, write_binary, Graph, NodeId};
use crate::lab::{csv_err, max_exponent, params_lb, params_ub, BoundKind, TheoremInputs};
use crate::seed::derive_seed;

pub const CSV_HEADER: [&str; 18] = [
    "graph_source",
    "n",
    "m",
    "lambda",
    "M",
    "r",
    "R",
    "seed",
    "builder",
    "pairs",
    "mse_lb",
    "mean_rel_err_lb",
    "viol_rate_lb_eps",
    "viol_rate_ub_eps",
    "build_ms",
    "query_us_per_pair",
    "eps",
    "status",
];

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    Er,
    File(PathBuf),
}

impl GraphSource {
    fn label(&self) -> String {
        match self {
            GraphSource::Er => "er".into(),
            GraphSource::File(p) => p.display().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub graphs: Vec<GraphSource>,
    pub n: Vec<usize>,
    pub lambda: Vec<f64>,
    pub base: Vec<u32>,
    pub sizing: BoundKind,
    pub theta: Vec<f64>,
    pub eps: Vec<f64>,
    pub constant: Vec<f64>,
    pub varsigma: f64,
    pub rounds: Option<Vec<u32>>,
    pub max_exp: Option<Vec<u32>>,
    pub builders: Vec<Builder>,
    pub pairs: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub gnn_dir: Option<PathBuf>,
    pub emit_dir: Option<PathBuf>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            graphs: vec![GraphSource::Er],
            n: Vec::new(),
            lambda: Vec::new(),
            base: vec![2],
            sizing: BoundKind::Lower,
            theta: vec![0.25],
            eps: vec![0.5],
            constant: vec![1.0],
            varsigma: 0.01,
            rounds: None,
            max_exp: None,
            builders: vec![Builder::Bfs],
            pairs: 1000,
            repetitions: 1,
            seed: 0,
            gnn_dir: None,
            emit_dir: None,
        }
    }
}

fn list<T: FromStr>(values: &[&str], line: usize, key: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    values
        .iter()
        .map(|v| {
            v.parse().map_err(|e| Error::Parse {
                line,
                msg: format!("`{key}`: bad value `{v}`: {e}"),
            })
        })
        .collect()
}

fn single<T: FromStr>(values: &[&str], line: usize, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    if values.len() != 1 {
        return Err(Error::Parse {
            line,
            msg: format!("`{key}` takes a single value"),
        });
    }
    Ok(list(values, line, key)?.remove(0))
}

impl SweepSpec {
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut spec = SweepSpec::default();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line?;
            let text = line.split('#').next().unwrap().trim();
            if text.is_empty() {
                continue;
            }
            let (key, rest) = text.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "expected `key = value, ...`".into(),
            })?;
            let key = key.trim();
            let values: Vec<&str> = rest.split(',').map(str::trim).collect();
            if values.iter().any(|v| v.is_empty()) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("`{key}` has an empty value"),
                });
            }
            if let Some(first) = seen.insert(key.to_string(), line_no) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("`{key}` already set on line {first}"),
                });
            }
            let (l, v) = (line_no, values.as_slice());
            match key {
                "graph" => {
                    spec.graphs = v
                        .iter()
                        .map(|s| match *s {
                            "er" => GraphSource::Er,
                            p => GraphSource::File(PathBuf::from(p)),
                        })
                        .collect()
                }
                "n" => spec.n = list(v, l, key)?,
                "lambda" => spec.lambda = list(v, l, key)?,
                "M" => spec.base = list(v, l, key)?,
                "sizing" => {
                    spec.sizing = match single::<String>(v, l, key)?.as_str() {
                        "lb" => BoundKind::Lower,
                        "ub" => BoundKind::Upper,
                        other => {
                            return Err(Error::Parse {
                                line: l,
                                msg: format!("`sizing` must be lb or ub, got `{other}`"),
                            })
                        }
                    }
                }
                "theta" => spec.theta = list(v, l, key)?,
                "eps" => spec.eps = list(v, l, key)?,
                "constant" => spec.constant = list(v, l, key)?,
                "varsigma" => spec.varsigma = single(v, l, key)?,
                "R" => spec.rounds = Some(list(v, l, key)?),
                "r" => spec.max_exp = Some(list(v, l, key)?),
                "builder" => spec.builders = list(v, l, key)?,
                "pairs" => spec.pairs = single(v, l, key)?,
                "repetitions" => spec.repetitions = single(v, l, key)?,
                "seed" => spec.seed = single(v, l, key)?,
                "gnn_dir" => spec.gnn_dir = Some(single::<String>(v, l, key)?.into()),
                "emit_dir" => spec.emit_dir = Some(single::<String>(v, l, key)?.into()),
                other => {
                    return Err(Error::Parse {
                        line: l,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(BufReader::new(File::open(path)?))
    }

    pub fn validate(&self) -> Result<()> {
        let empty = |name: &str, len: usize| {
            if len == 0 {
                Err(Error::param(format!("`{name}` list is empty")))
            } else {
                Ok(())
            }
        };
        empty("graph", self.graphs.len())?;
        if self.graphs.contains(&GraphSource::Er) {
            empty("n", self.n.len())?;
            empty("lambda", self.lambda.len())?;
        }
        empty("M", self.base.len())?;
        empty("theta", self.theta.len())?;
        empty("eps", self.eps.len())?;
        empty("constant", self.constant.len())?;
        empty("builder", self.builders.len())?;
        if let Some(r) = &self.rounds {
            empty("R", r.len())?;
        }
        if let Some(r) = &self.max_exp {
            empty("r", r.len())?;
        }
        if self.repetitions == 0 {
            return Err(Error::param("repetitions must be at least 1"));
        }
        if self.pairs == 0 {
            return Err(Error::param("pairs must be at least 1"));
        }
        if self.builders.contains(&Builder::Gnn) && self.gnn_dir.is_none() {
            return Err(Error::param("builder gnn needs `gnn_dir`"));
        }
        Ok(())
    }

    /// Number of rows the sweep produces.
    pub fn cell_count(&self) -> usize {
        let er = self.n.len() * self.lambda.len();
        let files = self
            .graphs
            .iter()
            .filter(|g| **g != GraphSource::Er)
            .count();
        let er_sources = self.graphs.len() - files;
        let graphs = er_sources * er + files;
        let sizes = self.rounds.as_ref().map_or(self.constant.len(), Vec::len);
        let exps = self.max_exp.as_ref().map_or(1, Vec::len);
        graphs
            * self.repetitions
            * self.base.len()
            * self.theta.len()
            * self.eps.len()
            * sizes
            * exps
            * self.builders.len()
    }
}

/// One CSV row. Config fields that could not be determined are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub graph_source: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub lambda: Option<f64>,
    pub base: u32,
    pub max_exp: Option<u32>,
    pub rounds: Option<u32>,
    pub seed: u64,
    pub builder: Builder,
    pub eps: f64,
    pub metrics: Option<DistortionMetrics>,
    pub build_ms: Option<f64>,
    pub query_us_per_pair: Option<f64>,
    /// `ok` or `failed:<kind>:<message>`.
    pub status: String,
}

impl SweepRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn record(&self, mask_timing: bool) -> Vec<String> {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        let m = self.metrics.as_ref();
        let timing = |x: Option<f64>| if mask_timing { String::new() } else { opt(x) };
        vec![
            self.graph_source.clone(),
            opt(self.n),
            opt(self.m),
            opt(self.lambda),
            self.base.to_string(),
            opt(self.max_exp),
            opt(self.rounds),
            self.seed.to_string(),
            self.builder.tag().to_string(),
            opt(m.map(|m| m.pairs)),
            opt(m.map(|m| m.mse_lb)),
            opt(m.map(|m| m.mean_rel_err_lb)),
            opt(m.map(|m| m.viol_rate_lb_eps)),
            opt(m.and_then(|m| m.viol_rate_ub_eps)),
            timing(self.build_ms),
            timing(self.query_us_per_pair),
            self.eps.to_string(),
            self.status.clone(),
        ]
    }
}

/// Streams rows as CSV, header first.
pub struct SweepCsv<W: Write> {
    inner: csv::Writer<W>,
    mask_timing: bool,
}

impl<W: Write> SweepCsv<W> {
    pub fn new(out: W, mask_timing: bool) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(CSV_HEADER).map_err(csv_err)?;
        Ok(SweepCsv { inner, mask_timing })
    }

    pub fn write_row(&mut self, row: &SweepRow) -> Result<()> {
        self.inner
            .write_record(row.record(self.mask_timing))
            .map_err(csv_err)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> Result<W> {
        self.inner
            .into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }
}

struct Prepared {
    graph: Graph,
    pairs: Vec<(NodeId, NodeId)>,
    tag: String,
}

/// Runs every cell in spec order, handing each row to `sink` as soon as it
/// is ready. Cell failures become `failed:` rows; only sink errors abort.
pub fn run_sweep<F>(spec: &SweepSpec, mut sink: F) -> Result<usize>
where
    F: FnMut(&SweepRow) -> Result<()>,
{
    spec.validate()?;
    let mut rows = 0;
    if let Some(dir) = &spec.emit_dir {
        std::fs::create_dir_all(dir)?;
    }
    for (gi, source) in spec.graphs.iter().enumerate() {
        let instances: Vec<(Option<usize>, Option<f64>)> = match source {
            GraphSource::Er => spec
                .n
                .iter()
                .flat_map(|&n| spec.lambda.iter().map(move |&l| (Some(n), Some(l))))
                .collect(),
            GraphSource::File(_) => vec![(None, None)],
        };
        let loaded = match source {
            GraphSource::File(p) => Some(File::open(p).map_err(Error::from).and_then(read_graph)),
            GraphSource::Er => None,
        };
        for (n, lambda) in instances {
            for rep in 0..spec.repetitions {
                let key = [
                    gi as u64,
                    n.unwrap_or(0) as u64,
                    lambda.unwrap_or(0.0).to_bits(),
                    rep as u64,
                ];
                let prepared = prepare(spec, source, loaded.as_ref(), n, lambda, rep, &key);
                for &base in &spec.base {
                    let fam_seed = derive_seed(
                        spec.seed,
                        "family",
                        &[key[0], key[1], key[2], key[3], base as u64],
                    );
                    for &theta in &spec.theta {
                        for &eps in &spec.eps {
                            let sizes: Vec<Size> = match &spec.rounds {
                                Some(rs) => rs.iter().map(|&r| Size::Rounds(r)).collect(),
                                None => spec.constant.iter().map(|&c| Size::Constant(c)).collect(),
                            };
                            let exps: Vec<Option<u32>> = match &spec.max_exp {
                                Some(es) => es.iter().map(|&e| Some(e)).collect(),
                                None => vec![None],
                            };
                            for size in &sizes {
                                for &exp in &exps {
                                    for &builder in &spec.builders {
                                        let cell = Cell {
                                            base,
                                            theta,
                                            eps,
                                            size: *size,
                                            exp,
                                            builder,
                                            seed: fam_seed,
                                        };
                                        let row =
                                            run_cell(spec, source, &prepared, n, lambda, &cell);
                                        sink(&row)?;
                                        rows += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Runs the sweep and writes the CSV to `path` (parent directories must
/// exist).
pub fn run_sweep_to_path(spec: &SweepSpec, path: &Path, mask_timing: bool) -> Result<usize> {
    let mut out = SweepCsv::new(BufWriter::new(File::create(path)?), mask_timing)?;
    let rows = run_sweep(spec, |r| out.write_row(r))?;
    out.into_inner()?.flush()?;
    Ok(rows)
}

fn prepare(
    spec: &SweepSpec,
    source: &GraphSource,
    loaded: Option<&Result<Graph>>,
    n: Option<usize>,
    lambda: Option<f64>,
    rep: usize,
    key: &[u64; 4],
) -> Result<Prepared> {
    let (graph, tag) = match (source, loaded) {
        (GraphSource::Er, _) => {
            let (n, lambda) = (n.unwrap(), lambda.unwrap());
            let g = er_generate(n, lambda, derive_seed(spec.seed, "graph", key))?;
            (g, format!("er-n{n}-lambda{lambda}-rep{rep}"))
        }
        (GraphSource::File(p), Some(Ok(g))) => {
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned());
            (
                g.clone(),
                format!("{}-rep{rep}", stem.unwrap_or_else(|| "graph".into())),
            )
        }
        (GraphSource::File(p), Some(Err(e))) => {
            return Err(Error::Format(format!("{}: {e}", p.display())))
        }
        (GraphSource::File(_), None) => unreachable!(),
    };
    let pairs = sample_pairs(&graph, spec.pairs, derive_seed(spec.seed, "pairs", key))?;
    if let Some(dir) = &spec.emit_dir {
        let path = dir.join(format!("{tag}.lmgr"));
        let mut w = BufWriter::new(File::create(path)?);
        write_binary(&graph, &mut w)?;
        w.flush()?;
    }
    Ok(Prepared { graph, pairs, tag })
}

#[derive(Clone, Copy, Debug)]
enum Size {
    Constant(f64),
    Rounds(u32),
}

struct Cell {
    base: u32,
    theta: f64,
    eps: f64,
    size: Size,
    exp: Option<u32>,
    builder: Builder,
    seed: u64,
}

fn run_cell(
    spec: &SweepSpec,
    source: &GraphSource,
    prepared: &Result<Prepared>,
    n: Option<usize>,
    lambda: Option<f64>,
    cell: &Cell,
) -> SweepRow {
    let mut row = SweepRow {
        graph_source: source.label(),
        n,
        m: None,
        lambda,
        base: cell.base,
        max_exp: cell.exp,
        rounds: match cell.size {
            Size::Rounds(r) => Some(r),
            Size::Constant(_) => None,
        },
        seed: cell.seed,
        builder: cell.builder,
        eps: cell.eps,
        metrics: None,
        build_ms: None,
        query_us_per_pair: None,
        status: String::new(),
    };
    match measure(spec, prepared, cell, &mut row) {
        Ok(()) => row.status = "ok".into(),
        Err(e) => {
            log::warn!("sweep cell failed: {e}");
            row.status = format!(
                "failed:{}:{}",
                e.kind(),
                e.to_string().replace(['\n', '\r'], " ")
            );
        }
    }
    row
}

fn measure(
    spec: &SweepSpec,
    prepared: &Result<Prepared>,
    cell: &Cell,
    row: &mut SweepRow,
) -> Result<()> {
    let p = prepared.as_ref().map_err(clone_error)?;
    let n = p.graph.node_count();
    row.n = Some(n);
    row.m = Some(p.graph.edge_count());
    let (max_exp, rounds) = sizing(spec, n, cell)?;
    row.max_exp = Some(max_exp);
    row.rounds = Some(rounds);
    let fam = LandmarkFamily::sample(n, cell.base, max_exp, rounds, cell.seed)?;
    if let Some(dir) = &spec.emit_dir {
        let path = dir.join(format!("{}.family", family_stem(&p.tag, &fam)));
        let mut w = BufWriter::new(File::create(path)?);
        fam.write_text(&mut w)?;
        w.flush()?;
    }
    let lambda = row.lambda;
    let source = row.graph_source.clone();
    let report = match cell.builder {
        Builder::Bfs => {
            let (emb, build) = time_build(&p.graph, &fam)?;
            let opts = DistortionOptions {
                eps: cell.eps,
                upper: true,
            };
            let mut r = run_distortion(&p.graph, &emb, &p.pairs, &source, lambda, opts)?;
            r.build = Some(build);
            r
        }
        Builder::Gnn => {
            let dir = spec.gnn_dir.as_ref().expect("validated");
            let path = dir.join(format!("{}.lmeb", family_stem(&p.tag, &fam)));
            let emb = match read_embedding(BufReader::new(File::open(&path)?))? {
                AnyEmbedding::Real(e) => e,
                AnyEmbedding::Hops(e) => e.cast()?.into_learned(),
            };
            let h = emb.header();
            if h.builder != Builder::Gnn
                || (h.n, h.base, h.max_exp, h.rounds, h.seed)
                    != (n, fam.base(), fam.max_exp(), fam.rounds(), fam.seed())
            {
                return Err(Error::format(format!(
                    "{} does not match the cell's graph and family",
                    path.display()
                )));
            }
            let opts = DistortionOptions {
                eps: cell.eps,
                upper: false,
            };
            run_distortion(&p.graph, &emb, &p.pairs, &source, lambda, opts)?
        }
    };
    row.metrics = Some(report.metrics);
    row.build_ms = report.build.map(|d| d.as_secs_f64() * 1e3);
    row.query_us_per_pair = Some(report.query_us_per_pair());
    Ok(())
}

/// File stem shared by emitted families and the learned embeddings that
/// pair with them.
pub fn family_stem(graph_tag: &str, fam: &LandmarkFamily) -> String {
    format!(
        "{graph_tag}-M{}-r{}-R{}",
        fam.base(),
        fam.max_exp(),
        fam.rounds()
    )
}

fn sizing(spec: &SweepSpec, n: usize, cell: &Cell) -> Result<(u32, u32)> {
    let inputs = |constant| TheoremInputs {
        n,
        eps: cell.eps,
        theta: cell.theta,
        base: cell.base,
        varsigma: spec.varsigma,
        constant,
    };
    let calc = |constant| match spec.sizing {
        BoundKind::Lower => params_lb(inputs(constant)),
        BoundKind::Upper => params_ub(inputs(constant)),
    };
    let max_exp = match cell.exp {
        Some(e) => e,
        None => max_exponent(n, cell.theta, cell.base),
    };
    let rounds = match cell.size {
        Size::Rounds(r) => r,
        Size::Constant(c) => calc(c)?.rounds,
    };
    Ok((max_exp, rounds))
}

fn clone_error(e: &Error) -> Error {
    match e {
        Error::Param(s) => Error::Param(s.clone()),
        Error::Parse { line, msg } => Error::Parse {
            line: *line,
            msg: msg.clone(),
        },
        Error::Format(s) => Error::Format(s.clone()),
        Error::Unsupported(s) => Error::Unsupported(s.clone()),
        Error::EmptySample(s) => Error::EmptySample(s.clone()),
        Error::EmptyGraph => Error::EmptyGraph,
        Error::Invariant(s) => Error::Invariant(s.clone()),
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), io.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> Result<SweepSpec> {
        SweepSpec::parse(text.as_bytes())
    }

    fn csv(s: &SweepSpec) -> String {
        let mut out = SweepCsv::new(Vec::new(), true).unwrap();
        run_sweep(s, |r| out.write_row(r)).unwrap();
        String::from_utf8(out.into_inner().unwrap()).unwrap()
    }

    #[test]
    fn parses_lists_and_defaults() {
        let s = spec("# demo\nn = 100, 200\nlambda = 4 # mean degree\nR = 2, 4\nbuilder = bfs\n")
            .unwrap();
        assert_eq!(s.n, vec![100, 200]);
        assert_eq!(s.lambda, vec![4.0]);
        assert_eq!(s.rounds, Some(vec![2, 4]));
        assert_eq!(s.base, vec![2]);
        assert_eq!(s.cell_count(), 4);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("n = 10\nlambda = 2\nbogus = 1\n", 3),
            ("n = 10\nn = 20\n", 2),
            ("n = ten\n", 1),
            ("n = 10,\n", 1),
            ("lambda\n", 1),
            ("seed = 1, 2\n", 1),
        ];
        for (text, line) in cases {
            match spec(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            spec("n = 10\nlambda = 2\nrepetitions = 0\n"),
            Err(Error::Param(_))
        ));
        assert!(matches!(spec("n = 10\n"), Err(Error::Param(_))));
        assert!(matches!(
            spec("n = 10\nlambda = 2\nbuilder = gnn\n"),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn one_cell_one_row() {
        let s = spec("n = 300\nlambda = 4\nR = 3\nr = 2\npairs = 50\nseed = 5\n").unwrap();
        let text = csv(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].starts_with("er,300,"));
        assert!(lines[1].ends_with(",0.5,ok"), "{}", lines[1]);
    }

    #[test]
    fn identical_seeds_identical_csv() {
        let s =
            spec("n = 400\nlambda = 3, 5\nconstant = 0.2, 0.4\npairs = 80\nseed = 11\n").unwrap();
        assert_eq!(csv(&s), csv(&s));
        let other = SweepSpec {
            seed: 12,
            ..s.clone()
        };
        assert_ne!(csv(&s), csv(&other));
    }

    #[test]
    fn error_in_one_cell_keeps_the_rest() {
        // theta = 0.6 breaks the lower-bound calculator (theta must be < eps).
        let s =
            spec("n = 200\nlambda = 4\ntheta = 0.25, 0.6\nconstant = 0.1\npairs = 20\n").unwrap();
        let mut rows = Vec::new();
        run_sweep(&s, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].is_ok());
        assert!(
            rows[1].status.starts_with("failed:param:"),
            "{}",
            rows[1].status
        );
        assert_eq!(rows[1].n, Some(200));
    }

    #[test]
    fn more_rounds_lower_error_on_shared_pairs() {
        let s = spec("n = 1500\nlambda = 5\nR = 2, 8, 32\nr = 3\npairs = 300\nseed = 3\n").unwrap();
        let mut errs = Vec::new();
        run_sweep(&s, |r| {
            errs.push(r.metrics.unwrap().mean_rel_err_lb);
            Ok(())
        })
        .unwrap();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{errs:?}");
    }

    #[test]
    fn missing_gnn_file_fails_only_that_cell() {
        let dir = std::env::temp_dir().join(format!("lmk-sweep-{}", std::process::id()));
        let s = SweepSpec {
            n: vec![200],
            lambda: vec![4.0],
            rounds: Some(vec![2]),
            builders: vec![Builder::Bfs, Builder::Gnn],
            pairs: 10,
            gnn_dir: Some(dir),
            ..Default::default()
        };
        let mut rows = Vec::new();
        run_sweep(&s, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        assert!(rows[0].is_ok());
        assert!(rows[1].status.starts_with("failed:io:"));
    }
}
