use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use matroid_cc::cache::{resolve_cache_path, RecordCache};
use matroid_cc::catalog::{self, CatalogEntry, CatalogJson, EnumerateOptions, BUILTIN_NAMES};
use matroid_cc::input::{
    parse_matroid_documents, parse_revlex_lines, GraphJson, MatrixJson, MatroidJson,
};
use matroid_cc::record::{InvariantRecord, InvariantSet};
use matroid_cc::sweep::{run_sweep, SweepOptions};
use matroid_cc::verify::{parse_checks, verify_matroid, Check};
use matroid_cc::{canonical_key, uniform, Engine, Error, Matroid};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_NEGATIVE_M: u8 = 4;

#[derive(Parser)]
#[command(
    name = "matroid-cc",
    version,
    about = "Exact microlocal invariants of matroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariant records, one per input, in input order.
    Compute {
        #[command(flatten)]
        source: Source,
        /// Comma list from charpoly,beta,kl,eu,c,m,cm,csm or `all`.
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Check route agreement and identities; exit 1 on any failure.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Comma list from identityA,identityB,routes,multiplicativity,functionalEq or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Compute m for every isomorphism class in scope and summarize.
    Sweep {
        #[command(flatten)]
        source: Source,
        /// Extra invariants to store in each record besides m.
        #[arg(long, default_value = "m")]
        which: String,
        /// Write the summary report here as well as to stderr.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Catalog utilities.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the canonical key of each input.
    Canonicalize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries as JSON lines (name, n, bases, tags).
    List {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct RunOpts {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// JSON-lines record cache (MATROID_CACHE overrides).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Matroid sources. Several may be combined; inputs are taken in the order listed here.
#[derive(Args, Default)]
struct Source {
    /// Uniform matroid `r,n`.
    #[arg(long, value_name = "R,N")]
    uniform: Vec<String>,
    /// Boolean matroid on `d` elements.
    #[arg(long, value_name = "D")]
    boolean: Vec<usize>,
    /// JSON file `{"vertices":k,"edges":[[u,v],..]}`.
    #[arg(long, value_name = "FILE")]
    graph: Vec<PathBuf>,
    /// JSON file `{"rows":[["p/q",..],..]}`.
    #[arg(long, value_name = "FILE")]
    matrix: Vec<PathBuf>,
    /// Text file of `n r code` lines.
    #[arg(long, value_name = "FILE")]
    revlex: Vec<PathBuf>,
    /// JSON array or JSON lines of matroids in any accepted form.
    #[arg(long, value_name = "FILE")]
    input: Vec<PathBuf>,
    /// Named catalog entry, e.g. `graphic(K4)`.
    #[arg(long, value_name = "NAME")]
    builtin: Vec<String>,
    #[arg(long)]
    fano: bool,
    #[arg(long)]
    nonfano: bool,
    #[arg(long)]
    vamos: bool,
    /// All isomorphism classes on `N` elements, or on `A..B` elements inclusive.
    #[arg(long, value_name = "N|A..B")]
    enumerate: Option<String>,
    /// Enumerate simple matroids only.
    #[arg(long)]
    simple: bool,
    /// Enumerate matroids with loops as well.
    #[arg(long)]
    with_loops: bool,
    /// Enumerate matroids of at most this rank.
    #[arg(long)]
    max_rank: Option<usize>,
    /// `builtins`, or a catalog file (JSON lines or revlex lines).
    #[arg(long, value_name = "builtins|FILE")]
    catalog: Option<String>,
}

/// A failure tied to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn from_error(e: Error) -> Failure {
        let code = if e.is_input_error() {
            EXIT_PARSE
        } else {
            EXIT_PRECONDITION
        };
        Failure::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Compute {
            source,
            which,
            format,
            run,
        } => compute(&source, &which, format, &run),
        Command::Verify {
            source,
            checks,
            run,
        } => verify(&source, &checks, &run),
        Command::Sweep {
            source,
            which,
            report,
            run,
        } => sweep(&source, &which, report.as_deref(), &run),
        Command::Catalog {
            action: CatalogAction::List { source, run },
        } => list(&source, &run),
        Command::Canonicalize { source, run } => {
            let entries = load(&source)?;
            let mut out = String::new();
            for e in &entries {
                out.push_str(&format!("{}\n", canonical_key(&e.matroid)));
            }
            emit(run.out.as_deref(), &out)
        }
    }
}

fn parse_error(message: impl Into<String>) -> Failure {
    Failure::new(EXIT_PARSE, message)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| parse_error(format!("{}: {e}", path.display())))
}

fn collect(
    out: &mut Vec<CatalogEntry>,
    label: &str,
    items: Vec<matroid_cc::Result<Matroid>>,
) -> CliResult<()> {
    for (i, item) in items.into_iter().enumerate() {
        let m = item.map_err(|e| parse_error(format!("{label} item {i}: {e}")))?;
        out.push(CatalogEntry::new(format!("{label}#{i}"), m, &[]));
    }
    Ok(())
}

fn parse_range(arg: &str) -> CliResult<(usize, usize)> {
    let bad = || parse_error(format!("bad --enumerate value {arg:?}"));
    if let Some((a, b)) = arg.split_once("..") {
        let a = if a.is_empty() {
            1
        } else {
            a.parse().map_err(|_| bad())?
        };
        let b = b.trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok((a, b))
    } else {
        let n = arg.parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

/// Resolves every source flag into a flat list of named matroids.
fn load(source: &Source) -> CliResult<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for arg in &source.uniform {
        let (r, n) = arg
            .split_once(',')
            .and_then(|(r, n)| Some((r.trim().parse().ok()?, n.trim().parse().ok()?)))
            .ok_or_else(|| parse_error(format!("bad --uniform value {arg:?}, expected r,n")))?;
        let m = uniform(r, n).map_err(|e| parse_error(e.to_string()))?;
        out.push(CatalogEntry::new(format!("uniform({r},{n})"), m, &[]));
    }
    for &d in &source.boolean {
        let m = Matroid::boolean(d).map_err(|e| parse_error(e.to_string()))?;
        out.push(CatalogEntry::new(format!("boolean({d})"), m, &[]));
    }
    for path in &source.graph {
        let g: GraphJson = serde_json::from_str(&read(path)?)
            .map_err(|e| parse_error(format!("{}: {e}", path.display())))?;
        collect(&mut out, &path.display().to_string(), vec![g.to_matroid()])?;
    }
    for path in &source.matrix {
        let text = read(path)?;
        let matrix: MatrixJson = serde_json::from_str(&text)
            .or_else(|_| serde_json::from_str(&text).map(|rows| MatrixJson { rows }))
            .map_err(|e| parse_error(format!("{}: {e}", path.display())))?;
        collect(
            &mut out,
            &path.display().to_string(),
            vec![matrix.to_matroid()],
        )?;
    }
    for path in &source.revlex {
        collect(
            &mut out,
            &path.display().to_string(),
            parse_revlex_lines(&read(path)?),
        )?;
    }
    for path in &source.input {
        collect(
            &mut out,
            &path.display().to_string(),
            parse_matroid_documents(&read(path)?),
        )?;
    }
    let mut names: Vec<&str> = source.builtin.iter().map(String::as_str).collect();
    for (flag, name) in [
        (source.fano, "fano"),
        (source.nonfano, "nonfano"),
        (source.vamos, "vamos"),
    ] {
        if flag {
            names.push(name);
        }
    }
    for name in names {
        out.push(catalog::builtin(name).map_err(Failure::from_error)?);
    }
    if let Some(arg) = &source.enumerate {
        let (lo, hi) = parse_range(arg)?;
        let opts = EnumerateOptions {
            loopless_only: !source.with_loops,
            simple_only: source.simple,
            max_rank: source.max_rank,
        };
        for n in lo..=hi {
            for m in catalog::enumerate_matroids(n, opts).map_err(Failure::from_error)? {
                out.push(CatalogEntry::new(canonical_key(&m).to_string(), m, &[]));
            }
        }
    }
    match source.catalog.as_deref() {
        None => {}
        Some("builtins") => {
            for name in BUILTIN_NAMES {
                out.push(catalog::builtin(name).map_err(Failure::from_error)?);
            }
        }
        Some(file) => {
            let path = Path::new(file);
            let text = read(path)?;
            let first = text.trim_start().chars().next();
            let items = if matches!(first, Some('{') | Some('[')) {
                parse_matroid_documents(&text)
            } else {
                parse_revlex_lines(&text)
            };
            collect(&mut out, file, items)?;
        }
    }
    if out.is_empty() {
        return Err(parse_error(
            "no input matroids; pass a source such as --uniform 2,3",
        ));
    }
    Ok(out)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    let result = match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure::new(EXIT_PARSE, format!("writing output: {e}")))
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))
}

fn open_cache(run: &RunOpts) -> CliResult<Option<RecordCache>> {
    resolve_cache_path(run.cache.as_deref())
        .map(|p| {
            RecordCache::open(&p).map_err(|e| parse_error(format!("cache {}: {e}", p.display())))
        })
        .transpose()
}

fn precondition(index: usize, e: Error) -> Failure {
    let code = if e.is_input_error() {
        EXIT_PARSE
    } else {
        EXIT_PRECONDITION
    };
    Failure::new(code, format!("input {index}: {e}"))
}

fn compute(source: &Source, which: &str, format: Format, run: &RunOpts) -> CliResult<()> {
    let which: InvariantSet = which
        .parse()
        .map_err(|e: Error| parse_error(e.to_string()))?;
    let entries = load(source)?;
    let cache = open_cache(run)?;
    let engine = Engine::new();
    let records: Vec<_> = pool(run.jobs)?.install(|| {
        entries
            .par_iter()
            .map(|e| {
                let own = MatroidJson::from(&e.matroid);
                if let Some(hit) = cache
                    .as_ref()
                    .and_then(|c| c.get(&canonical_key(&e.matroid)))
                {
                    if hit.matroid == own && covers(&hit, &which) {
                        return Ok(hit);
                    }
                }
                let record = InvariantRecord::compute(&engine, &e.matroid, &which)?;
                if let Some(c) = &cache {
                    c.put(&record)?;
                }
                Ok(record)
            })
            .collect()
    });
    let mut text = String::new();
    if let Format::Csv = format {
        text.push_str(InvariantRecord::CSV_HEADER);
        text.push('\n');
    }
    for (i, r) in records.into_iter().enumerate() {
        let r: InvariantRecord = r.map_err(|e| precondition(i, e))?;
        match format {
            Format::Json => text.push_str(&r.to_json_line()),
            Format::Csv => text.push_str(&r.to_csv_row()),
        }
        text.push('\n');
    }
    emit(run.out.as_deref(), &text)
}

/// The cached record holds every requested field.
fn covers(r: &InvariantRecord, which: &InvariantSet) -> bool {
    use matroid_cc::record::Invariant::*;
    [
        (CharPoly, r.char_poly.is_some()),
        (Beta, r.beta.is_some() || r.n == 0),
        (Kl, r.kl_poly.is_some()),
        (Eu, r.eu.is_some()),
        (C, r.c.is_some()),
        (M, r.m.is_some()),
        (Cm, r.cm_coeffs.is_some()),
        (Csm, r.csm_weights.is_some()),
    ]
    .iter()
    .all(|&(i, present)| !which.contains(i) || present)
}

fn verify(source: &Source, checks: &str, run: &RunOpts) -> CliResult<()> {
    let checks: BTreeSet<Check> = parse_checks(checks).map_err(|e| parse_error(e.to_string()))?;
    let entries = load(source)?;
    let engine = Engine::new();
    let results: Vec<_> = pool(run.jobs)?.install(|| {
        entries
            .par_iter()
            .map(|e| verify_matroid(&engine, &e.matroid, &checks))
            .collect()
    });
    let mut text = String::new();
    let mut failed = 0usize;
    for (i, (entry, result)) in entries.iter().zip(results).enumerate() {
        let failures = result.map_err(|e| precondition(i, e))?;
        for f in &failures {
            text.push_str(&format!(
                "FAIL {} {} [{}] {}: {} vs {}\n",
                entry.name,
                f.key,
                f.check.name(),
                f.what,
                f.left,
                f.right
            ));
        }
        failed += usize::from(!failures.is_empty());
    }
    let names: Vec<&str> = checks.iter().map(|c| c.name()).collect();
    text.push_str(&format!(
        "{} of {} inputs passed [{}]\n",
        entries.len() - failed,
        entries.len(),
        names.join(",")
    ));
    emit(run.out.as_deref(), &text)?;
    if failed > 0 {
        return Err(Failure::new(
            EXIT_VERIFY_FAILED,
            format!("{failed} inputs failed verification"),
        ));
    }
    Ok(())
}

fn sweep(source: &Source, which: &str, report_path: Option<&Path>, run: &RunOpts) -> CliResult<()> {
    let which: InvariantSet = which
        .parse()
        .map_err(|e: Error| parse_error(e.to_string()))?;
    let entries = load(source)?;
    let cache = open_cache(run)?;
    let matroids: Vec<Matroid> = entries.into_iter().map(|e| e.matroid).collect();
    let opts = SweepOptions {
        jobs: run.jobs,
        which,
    };
    let output = run_sweep(&matroids, &opts, cache.as_ref()).map_err(|e| match e {
        Error::AtInput { index, source } => precondition(index, *source),
        other => Failure::from_error(other),
    })?;
    emit(run.out.as_deref(), &output.json_lines())?;
    let report = serde_json::to_string_pretty(&output.report).expect("reports always serialize");
    if let Some(path) = report_path {
        fs::write(path, format!("{report}\n"))
            .map_err(|e| parse_error(format!("{}: {e}", path.display())))?;
    }
    eprintln!("{report}");
    if !output.report.held() {
        let witnesses: Vec<String> = output
            .records
            .iter()
            .filter(|r| output.report.violations.contains(&r.key))
            .map(InvariantRecord::to_json_line)
            .collect();
        return Err(Failure::new(
            EXIT_NEGATIVE_M,
            format!("found m < 0:\n{}", witnesses.join("\n")),
        ));
    }
    Ok(())
}

fn list(source: &Source, run: &RunOpts) -> CliResult<()> {
    let entries = load(source)?;
    let mut text = String::new();
    for e in &entries {
        let line =
            serde_json::to_string(&CatalogJson::from(e)).expect("catalog entries always serialize");
        text.push_str(&line);
        text.push('\n');
    }
    emit(run.out.as_deref(), &text)
}
