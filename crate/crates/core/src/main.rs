use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cssg::eval::{self, CorrelationLevel, EvalConfig, Setting};
use cssg::frontend::{Language, SourceUnit};
use cssg::ged::{ExactOptions, DEFAULT_EXACT_BUDGET, DEFAULT_EXPANSION_LIMIT};
use cssg::metrics::{Artifacts, Metric, MetricOptions};
use cssg::semgraph::{build_semantic_graph, deserialize, serialize, GraphFormat};
use cssg::Error;

/// Semantic-graph code similarity.
///
/// Exit codes: 0 success, 1 usage, 2 parse or format error, 3 I/O error,
/// 4 no evaluation triplets.
#[derive(Parser)]
#[command(name = "cssg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score two source files.
    Compare(CompareArgs),
    /// Print the semantic graph of a source file.
    Graph(GraphArgs),
    /// Check a graph JSON document (`-` reads stdin).
    Validate { file: PathBuf },
    /// Run the triplet evaluation over a JSONL corpus.
    Eval(EvalArgs),
    /// Recompute effect sizes and correlations from a scores.csv.
    Report(ReportArgs),
}

#[derive(Args)]
struct SolverArgs {
    /// Largest combined node count handed to the exact solver.
    #[arg(long, env = "CSSG_EXACT_BUDGET", default_value_t = DEFAULT_EXACT_BUDGET)]
    exact_budget: usize,
    /// Search expansions before falling back to the approximate solver.
    #[arg(long, default_value_t = DEFAULT_EXPANSION_LIMIT)]
    expansion_limit: u64,
    /// Keep identifier names and literal values in TSED.
    #[arg(long)]
    tsed_name_sensitive: bool,
}

impl SolverArgs {
    fn options(&self) -> MetricOptions {
        MetricOptions {
            exact: ExactOptions {
                budget: self.exact_budget,
                expansion_limit: self.expansion_limit,
            },
            tsed_name_sensitive: self.tsed_name_sensitive,
        }
    }
}

#[derive(Args)]
struct CompareArgs {
    file_a: PathBuf,
    file_b: PathBuf,
    /// Language of both files; inferred from extensions otherwise.
    #[arg(long)]
    lang: Option<Language>,
    /// Metrics to print, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "bleu,jaccard,tsed,cssg")]
    metric: Vec<Metric>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct GraphArgs {
    file: PathBuf,
    #[arg(long)]
    lang: Option<Language>,
    #[arg(long, default_value = "json")]
    format: GraphFormat,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// `mono` or `cross`.
    #[arg(long, default_value = "mono")]
    setting: Setting,
    #[arg(long = "target-lang", value_delimiter = ',', default_value = "python")]
    target_langs: Vec<Language>,
    /// Cross-lingual only.
    #[arg(long = "source-lang", value_delimiter = ',')]
    source_langs: Vec<Language>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    per_problem: usize,
    #[arg(long, value_delimiter = ',', default_value = "bleu,jaccard,tsed,cssg")]
    metric: Vec<Metric>,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; defaults to available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Correlate per-language effect sizes instead of per-pair scores.
    #[arg(long)]
    d_level: bool,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    scores: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    d_level: bool,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Empty(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ParseFailure { .. }
        | Error::InvalidUtf8(_)
        | Error::InvalidGraph(_)
        | Error::InvalidScores(_)
        | Error::Json(_)
        | Error::Csv(_) => 2,
        Error::Io { .. } | Error::EmptyCorpus(_) => 3,
        Error::NoTriplets(_) => 4,
        _ => 1,
    }
}

fn level(d_level: bool) -> CorrelationLevel {
    if d_level {
        CorrelationLevel::EffectSize
    } else {
        CorrelationLevel::Score
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Error> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        })?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| Error::Io {
        path: path.into(),
        source: e,
    })
}

fn load_unit(path: &Path, lang: Option<Language>) -> Result<SourceUnit, Failure> {
    let lang = match lang {
        Some(l) => l,
        None => path
            .extension()
            .and_then(|e| e.to_str())
            .and_then(Language::from_extension)
            .ok_or_else(|| Failure::Usage(format!("cannot infer language of `{}`; pass --lang", path.display())))?,
    };
    let text = String::from_utf8(read_bytes(path)?).map_err(|_| Error::InvalidUtf8(path.display().to_string()))?;
    Ok(SourceUnit::new(lang, text, path.display().to_string()))
}

fn print(bytes: &[u8]) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Lib(Error::Io {
            path: "<stdout>".into(),
            source: e,
        }))
}

fn compare(args: CompareArgs) -> Result<(), Failure> {
    let a = Artifacts::build(&load_unit(&args.file_a, args.lang)?)?;
    let b = Artifacts::build(&load_unit(&args.file_b, args.lang)?)?;
    let opts = args.solver.options();
    let mut text = String::new();
    for &m in &args.metric {
        let r = a.score(&b, m, &opts)?;
        text.push_str(&format!("{m} {}", eval::report::fmt6(r.score)));
        if let (Some(g), Some(d), Some(s)) = (r.ged, r.d_max, r.solver) {
            text.push_str(&format!(" ged={g} dmax={d} solver={s}"));
        }
        text.push('\n');
    }
    print(text.as_bytes())
}

fn graph(args: GraphArgs) -> Result<(), Failure> {
    let g = build_semantic_graph(&load_unit(&args.file, args.lang)?)?;
    print(&serialize(&g, args.format))
}

fn validate(file: PathBuf) -> Result<(), Failure> {
    let g = deserialize(&read_bytes(&file)?)?;
    print(format!("valid nodes={} edges={}\n", g.node_count(), g.edge_count()).as_bytes())
}

fn run_eval(args: EvalArgs) -> Result<(), Failure> {
    if args.setting == Setting::Crosslingual && args.source_langs.is_empty() {
        return Err(Failure::Usage("--setting cross needs --source-lang".into()));
    }
    if args.per_problem == 0 {
        return Err(Failure::Usage("--per-problem must be at least 1".into()));
    }
    let cfg = EvalConfig {
        corpus: args.corpus,
        setting: args.setting,
        target_langs: args.target_langs,
        source_langs: args.source_langs,
        seed: args.seed,
        per_problem: args.per_problem,
        metrics: args.metric,
        options: args.solver.options(),
        jobs: args.jobs,
        correlation: level(args.d_level),
    };
    let run = eval::run_eval(&cfg)?;
    let files = run.render()?;
    files.write(&args.out)?;
    if run.manifest.triplets == 0 {
        let reasons: Vec<String> = run
            .manifest
            .skipped_problems
            .iter()
            .take(5)
            .map(|s| format!("{} [{}]: {}", s.problem_id, s.language_pair, s.reason))
            .collect();
        return Err(Failure::Empty(format!(
            "{} problems skipped; first: {}",
            run.manifest.skipped_problems.len(),
            reasons.join("; ")
        )));
    }
    let table = &files.files.iter().find(|(n, _)| *n == eval::report::EFFECT_SIZES_CSV).expect("rendered").1;
    print(table)?;
    eprintln!(
        "{} triplets, {} problems skipped, reports in {}",
        run.manifest.triplets,
        run.manifest.skipped_problems.len(),
        args.out.display()
    );
    Ok(())
}

fn report(args: ReportArgs) -> Result<(), Failure> {
    let table = eval::read_scores(&read_bytes(&args.scores)?)?;
    let (effects, matrix) = eval::analyze(&table, &table.language_pairs(), level(args.d_level));
    let files = eval::render(&table, &effects, &matrix, None::<&eval::Manifest>)?;
    files.write(&args.out)?;
    print(&files.files[0].1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Compare(a) => compare(a),
        Command::Graph(a) => graph(a),
        Command::Validate { file } => validate(file),
        Command::Eval(a) => run_eval(a),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Empty(msg)) => {
            eprintln!("error: no evaluation triplets could be built ({msg})");
            ExitCode::from(4)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
