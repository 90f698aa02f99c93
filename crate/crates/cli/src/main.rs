//! domk: batch front end for dominating K_t-model search, verification,
//! colouring and subdivision extraction over graph6 streams.
//!
//! Exit codes: 0 success, 1 domain violations or per-line errors, 2 usage
//! errors, 3 I/O failures.

mod names;
mod pool;
mod records;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domk_core::catalog;
use domk_core::colouring::{chromatic_number, verify_colouring, Colouring};
use domk_core::graph::Graph;
use domk_core::graph6::{parse_graph6, to_graph6};
use domk_core::models::{
    find_dominating_model, find_standard_model, verify_dominating_model, DominatingModel,
    OrderedClique, SearchMode,
};
use domk_core::subdivision::{extract_k5_or_k5hat, verify_subdivision, EmbeddingDoc};
use records::*;
use std::io::{BufRead, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "domk",
    version,
    about = "Dominating K_t-models in small graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a named graph (or family member) as graph6 or JSON.
    Gen(GenArgs),
    /// Search graph6 lines from stdin for K_t-models; one JSON record per line.
    FindModel(FindModelArgs),
    /// Check the 4-colourable-or-dominating-K5-model dichotomy over a catalog
    /// or a graph6 stream.
    CheckTheorem(CheckTheoremArgs),
    /// Verify a model, colouring or subdivision artifact against a graph.
    Verify(VerifyArgs),
    /// Chromatic numbers of graph6 lines from stdin.
    Chromatic(ChromaticArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Graph name: k<N>, c<N>, p<N>, kb<A>,<B>, petersen, k5-hat,
    /// k55-minus-matching, one-subdivision, split-k5, join.
    name: String,
    /// Base graph for one-subdivision (same name grammar).
    #[arg(long)]
    of: Option<String>,
    /// Left operand for join.
    #[arg(long)]
    left: Option<String>,
    /// Right operand for join.
    #[arg(long)]
    right: Option<String>,
    /// Per-vertex split choices for split-k5: five of u|1|2|3, comma-separated.
    #[arg(long)]
    spec: Option<String>,
    /// Emit all 22 split classes (split-k5 only).
    #[arg(long)]
    enumerate: bool,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Args)]
struct FindModelArgs {
    /// Model order.
    #[arg(long, default_value_t = 5)]
    t: usize,
    /// Search for dominating models (default).
    #[arg(long, conflicts_with = "standard")]
    dominating: bool,
    /// Search for standard models (minors) instead.
    #[arg(long)]
    standard: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    mode: ModeArg,
    /// Compatibility anchor: one or two comma-separated vertices.
    #[arg(long)]
    clique: Option<String>,
    #[command(flatten)]
    common: StreamArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    General,
    SingletonReduced,
}

#[derive(Args)]
struct CheckTheoremArgs {
    /// Enumerate all graphs on at most N vertices (N <= 7) instead of
    /// reading graph6 lines from stdin.
    #[arg(long)]
    max_n: Option<usize>,
    /// Extract and verify a K5 or K5-hat subdivision from every graph that
    /// is not 4-colourable.
    #[arg(long)]
    extract: bool,
    /// Also append the JSONL records to this file.
    #[arg(long)]
    report: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: StreamArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: ArtifactKind,
    /// Host graph as a graph6 string.
    #[arg(long)]
    graph: String,
    /// Path to the artifact JSON ("-" for stdin).
    #[arg(long)]
    artifact: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ArtifactKind {
    Model,
    Colouring,
    Subdivision,
}

#[derive(Args)]
struct ChromaticArgs {
    #[command(flatten)]
    common: StreamArgs,
}

#[derive(Args, Clone)]
struct StreamArgs {
    /// Worker threads; defaults to DOMK_WORKERS or the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Omit timing fields so identical inputs give byte-identical output.
    #[arg(long)]
    stable: bool,
}

impl StreamArgs {
    fn worker_count(&self) -> usize {
        self.workers
            .or_else(|| {
                std::env::var("DOMK_WORKERS")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            })
            .max(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("domk: {err}");
            err.exit_code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(err) => write!(f, "I/O error: {err}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::FindModel(args) => cmd_find_model(args),
        Cmd::CheckTheorem(args) => cmd_check_theorem(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Chromatic(args) => cmd_chromatic(args),
    }
}

fn emit_graph(g: &Graph, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    match format {
        Format::Graph6 => {
            let line = to_graph6(g).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        Format::Json => {
            let doc = GraphDoc {
                n: g.n(),
                edges: g.edges(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&doc).expect("serialisable")
            )?;
        }
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.name.as_str() {
        "split-k5" => {
            if args.enumerate {
                for g in domk_core::constructions::enumerate_k5_splits() {
                    emit_graph(&g, args.format, &mut out)?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let spec = args
                .spec
                .ok_or_else(|| CliError::Usage("split-k5 needs --spec or --enumerate".into()))?;
            let g = names::split_from_spec(&spec).map_err(CliError::Usage)?;
            emit_graph(&g, args.format, &mut out)?;
        }
        "one-subdivision" => {
            let base = args
                .of
                .ok_or_else(|| CliError::Usage("one-subdivision needs --of <name>".into()))?;
            let g = names::graph_by_name(&base).map_err(CliError::Usage)?;
            emit_graph(
                &domk_core::constructions::one_subdivision(&g),
                args.format,
                &mut out,
            )?;
        }
        "join" => {
            let left = args
                .left
                .ok_or_else(|| CliError::Usage("join needs --left".into()))?;
            let right = args
                .right
                .ok_or_else(|| CliError::Usage("join needs --right".into()))?;
            let g = names::graph_by_name(&left).map_err(CliError::Usage)?;
            let h = names::graph_by_name(&right).map_err(CliError::Usage)?;
            emit_graph(
                &domk_core::constructions::join(&g, &h),
                args.format,
                &mut out,
            )?;
        }
        name => {
            let g = names::graph_by_name(name).map_err(CliError::Usage)?;
            emit_graph(&g, args.format, &mut out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_graph_lines() -> Result<Vec<String>, CliError> {
    let stdin = std::io::stdin();
    let mut lines = Vec::new();
    for line in stdin.lock().lines() {
        let line = line?;
        let line = line
            .trim()
            .strip_prefix(">>graph6<<")
            .unwrap_or(line.trim());
        if !line.is_empty() {
            lines.push(line.to_string());
        }
    }
    Ok(lines)
}

fn cmd_find_model(args: FindModelArgs) -> Result<ExitCode, CliError> {
    let clique = match &args.clique {
        None => OrderedClique::empty(),
        Some(spec) => names::clique_from_spec(spec).map_err(CliError::Usage)?,
    };
    if args.standard && (args.clique.is_some() || args.mode == ModeArg::SingletonReduced) {
        return Err(CliError::Usage(
            "--standard supports neither --clique nor --mode singleton-reduced".into(),
        ));
    }
    let mode = match args.mode {
        ModeArg::General => SearchMode::General,
        ModeArg::SingletonReduced => SearchMode::SingletonReduced,
    };
    if mode == SearchMode::SingletonReduced && !(args.t == 4 || args.t == 5) {
        return Err(CliError::Usage(format!(
            "singleton-reduced mode supports t = 4 or 5, got t = {}",
            args.t
        )));
    }
    if args.t == 0 {
        return Err(CliError::Usage("--t must be at least 1".into()));
    }
    let kind = if args.standard {
        "standard"
    } else {
        "dominating"
    };
    let lines = read_graph_lines()?;
    let t = args.t;
    let standard = args.standard;
    let stable = args.common.stable;
    let records = pool::ordered_map(lines, args.common.worker_count(), move |line| {
        let started = std::time::Instant::now();
        let record = match parse_graph6(&line) {
            Err(err) => FindModelRecord {
                graph: line.clone(),
                t,
                kind,
                model: None,
                error: Some(err.to_string()),
                perf: None,
            },
            Ok(g) => {
                let outcome = if standard {
                    find_standard_model(&g, t).map_err(|e| e.to_string())
                } else {
                    find_dominating_model(&g, t, &clique, mode).map_err(|e| e.to_string())
                };
                match outcome {
                    Ok(model) => FindModelRecord {
                        graph: line.clone(),
                        t,
                        kind,
                        model,
                        error: None,
                        perf: None,
                    },
                    Err(err) => FindModelRecord {
                        graph: line.clone(),
                        t,
                        kind,
                        model: None,
                        error: Some(err),
                        perf: None,
                    },
                }
            }
        };
        finish_record(record, started, stable)
    });
    let mut had_error = false;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for record in &records {
        had_error |= record.error.is_some();
        writeln!(
            out,
            "{}",
            serde_json::to_string(record).expect("serialisable")
        )?;
    }
    Ok(if had_error {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn finish_record(
    mut record: FindModelRecord,
    started: std::time::Instant,
    stable: bool,
) -> FindModelRecord {
    if !stable {
        record.perf = Some(Perf {
            ms: started.elapsed().as_secs_f64() * 1e3,
        });
    }
    record
}

/// Canonical catalog of all graphs on 1..=max_n vertices, built in parallel
/// mask chunks and merged; output order is (n, canonical form).
fn build_catalog(max_n: usize, workers: usize) -> Vec<Graph> {
    let mut all = Vec::new();
    for n in 1..=max_n {
        let total = catalog::mask_count(n);
        let chunks: Vec<(u64, u64)> = if total < 1024 {
            vec![(0, total)]
        } else {
            let step = total / workers as u64 + 1;
            (0..workers as u64)
                .map(|i| (i * step, ((i + 1) * step).min(total)))
                .collect()
        };
        let maps = pool::ordered_map(chunks, workers, move |(lo, hi)| {
            catalog::catalog_chunk(n, lo, hi).expect("n is within the catalog cap")
        });
        let mut merged = std::collections::HashMap::new();
        for map in maps {
            merged.extend(map);
        }
        all.extend(catalog::sorted_catalog(merged));
    }
    all
}

fn theorem_record(g: &Graph, extract: bool, stable: bool) -> TheoremRecord {
    let started = std::time::Instant::now();
    let line = to_graph6(g).expect("catalog graphs encode");
    let four_colourable = domk_core::colouring::k_colour(g, 4).is_some();
    let model = find_dominating_model(g, 5, &OrderedClique::empty(), SearchMode::SingletonReduced)
        .expect("empty clique is valid");
    let has_model = model.is_some();
    let mut failure = !four_colourable && !has_model;
    let extraction = if extract && !four_colourable {
        match model
            .as_ref()
            .ok_or_else(|| "no model to extract from".to_string())
            .and_then(|m| extract_k5_or_k5hat(g, m).map_err(|e| e.to_string()))
        {
            Ok(ext) => {
                let verified = verify_subdivision(g, &ext.embedding).is_empty();
                failure |= !verified;
                match EmbeddingDoc::from_embedding(&ext.embedding) {
                    Ok(doc) => Some(ExtractionRecord {
                        pattern: doc.pattern.clone(),
                        branch_map: doc.branch_map,
                        paths: doc.paths,
                        connector_path_len: ext.connector_path_len,
                        verified,
                        error: None,
                    }),
                    Err(err) => {
                        failure = true;
                        Some(ExtractionRecord::error(err.to_string()))
                    }
                }
            }
            Err(err) => {
                failure = true;
                Some(ExtractionRecord::error(err))
            }
        }
    } else {
        None
    };
    TheoremRecord {
        graph: line,
        n: g.n(),
        four_colourable,
        has_dominating_k5_model: has_model,
        failure,
        extraction,
        perf: if stable {
            None
        } else {
            Some(Perf {
                ms: started.elapsed().as_secs_f64() * 1e3,
            })
        },
    }
}

fn cmd_check_theorem(args: CheckTheoremArgs) -> Result<ExitCode, CliError> {
    let workers = args.common.worker_count();
    let graphs: Vec<Graph> = match args.max_n {
        Some(n) => {
            if n > catalog::CATALOG_CAP {
                return Err(CliError::Usage(format!(
                    "--max-n supports up to {}; pipe a graph6 stream for larger orders",
                    catalog::CATALOG_CAP
                )));
            }
            build_catalog(n, workers)
        }
        None => {
            let lines = read_graph_lines()?;
            let mut graphs = Vec::with_capacity(lines.len());
            for line in lines {
                let g = parse_graph6(&line)
                    .map_err(|e| CliError::Usage(format!("bad graph6 line {line:?}: {e}")))?;
                graphs.push(g);
            }
            graphs
        }
    };
    let extract = args.extract;
    let stable = args.common.stable;
    let records = pool::ordered_map(graphs, workers, move |g| {
        theorem_record(&g, extract, stable)
    });

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut report: Option<std::fs::File> = match &args.report {
        Some(path) => Some(std::fs::File::create(path)?),
        None => None,
    };
    let mut failures = 0usize;
    let mut five_chromatic = 0usize;
    let mut extracted = 0usize;
    for record in &records {
        if record.failure {
            failures += 1;
        }
        if !record.four_colourable {
            five_chromatic += 1;
        }
        if record.extraction.as_ref().is_some_and(|e| e.verified) {
            extracted += 1;
        }
        let line = serde_json::to_string(record).expect("serialisable");
        writeln!(out, "{line}")?;
        if let Some(file) = report.as_mut() {
            writeln!(file, "{line}")?;
        }
    }
    let summary = SummaryRecord {
        summary: true,
        graphs: records.len(),
        five_chromatic,
        failures,
        extracted: if extract { Some(extracted) } else { None },
    };
    let line = serde_json::to_string(&summary).expect("serialisable");
    writeln!(out, "{line}")?;
    if let Some(file) = report.as_mut() {
        writeln!(file, "{line}")?;
    }
    Ok(if failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let g = parse_graph6(
        args.graph
            .trim()
            .strip_prefix(">>graph6<<")
            .unwrap_or(args.graph.trim()),
    )
    .map_err(|e| CliError::Usage(format!("bad --graph: {e}")))?;
    let text = if args.artifact == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin().lock(), &mut buf)?;
        buf
    } else {
        std::fs::read_to_string(&args.artifact)?
    };
    let violations: Vec<serde_json::Value> = match args.kind {
        ArtifactKind::Model => {
            let model: DominatingModel = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad model JSON: {e}")))?;
            verify_dominating_model(&g, &model)
                .iter()
                .map(|v| serde_json::to_value(v).expect("serialisable"))
                .collect()
        }
        ArtifactKind::Colouring => {
            let col: Colouring = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad colouring JSON: {e}")))?;
            match verify_colouring(&g, &col) {
                Ok(vs) => vs
                    .iter()
                    .map(|v| serde_json::to_value(v).expect("serialisable"))
                    .collect(),
                Err(err) => {
                    vec![serde_json::json!({"kind": "malformed", "detail": err.to_string()})]
                }
            }
        }
        ArtifactKind::Subdivision => {
            let doc: EmbeddingDoc = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad embedding JSON: {e}")))?;
            let emb = doc
                .to_embedding()
                .map_err(|e| CliError::Usage(format!("bad embedding: {e}")))?;
            verify_subdivision(&g, &emb)
                .iter()
                .map(|v| serde_json::to_value(v).expect("serialisable"))
                .collect()
        }
    };
    let ok = violations.is_empty();
    let out = serde_json::json!({"ok": ok, "violations": violations});
    println!("{}", serde_json::to_string(&out).expect("serialisable"));
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_chromatic(args: ChromaticArgs) -> Result<ExitCode, CliError> {
    let lines = read_graph_lines()?;
    let stable = args.common.stable;
    let records = pool::ordered_map(lines, args.common.worker_count(), move |line| {
        let started = std::time::Instant::now();
        match parse_graph6(&line) {
            Ok(g) => ChromaticRecord {
                graph: line,
                chromatic_number: Some(chromatic_number(&g)),
                error: None,
                perf: if stable {
                    None
                } else {
                    Some(Perf {
                        ms: started.elapsed().as_secs_f64() * 1e3,
                    })
                },
            },
            Err(err) => ChromaticRecord {
                graph: line,
                chromatic_number: None,
                error: Some(err.to_string()),
                perf: None,
            },
        }
    });
    let mut had_error = false;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for record in &records {
        had_error |= record.error.is_some();
        writeln!(
            out,
            "{}",
            serde_json::to_string(record).expect("serialisable")
        )?;
    }
    Ok(if had_error {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
