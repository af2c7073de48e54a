//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 usage
//! error, 3 unsupported size.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use multiperm::analysis::{analyze_batch, BatchReport};
use multiperm::existence::{asymptotic_estimate, estimate_ratio, necessary_condition, ExistenceStatus};
use multiperm::io::{parse_solution_file, Diagnostic, SolutionFile};
use multiperm::report::RunReport;
use multiperm::{
    count, enumerate, is_canonical, verify, EnumerateOptions, Error, Problem, SearchOptions, Strategy, Violation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "multiperm", version, about = "Count, list, verify and analyze multiple-permutation (Langford-type) sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count all solutions of (m, n) and report p(m, n).
    Count {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the canonical solutions of (m, n), one per line.
    Enumerate {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Stop after K solutions.
        #[arg(long, value_name = "K")]
        limit: Option<u64>,
        /// Emit in ascending lexicographic order.
        #[arg(long)]
        sort: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every record of a solution file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Abort on the first malformed line.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Derived structures and conjecture tallies for a solution file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Abort on the first malformed line.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Test the known necessary conditions for p(m, n) != 0.
    ///
    /// The conditions are necessary only: (3, 8) passes them yet has no
    /// solutions, p(3, 8) = 0.
    Exists {
        #[arg(short, value_name = "M")]
        m: usize,
        #[arg(short, value_name = "N")]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Conjectured asymptotic size of p(m, n) for m = 2 or 3.
    Estimate {
        #[arg(short, value_name = "M")]
        m: usize,
        #[arg(short, value_name = "N")]
        n: usize,
        /// Known exact count to compare against the estimate.
        #[arg(long, value_name = "COUNT")]
        actual: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Multiplicity: copies of each value.
    #[arg(short, value_name = "M")]
    m: usize,
    /// Largest value.
    #[arg(short, value_name = "N")]
    n: usize,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Worker threads.
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
    /// Values fixed per parallel job.
    #[arg(long, value_name = "D")]
    split_depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = StrategyArg::RawHalving)]
    strategy: StrategyArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    RawHalving,
    CanonicalFilter,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the main output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Print a JSON report.
    #[arg(long)]
    json: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            jobs: self.jobs,
            split_depth: self.split_depth,
            strategy: match self.strategy {
                StrategyArg::RawHalving => Strategy::RawHalving,
                StrategyArg::CanonicalFilter => Strategy::CanonicalFilter,
            },
        }
    }
}

/// JSON output: the run report fields plus at most one section specific
/// to the subcommand.
#[derive(Debug, Serialize)]
struct JsonReport {
    #[serde(flatten)]
    run: RunReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumeration: Option<EnumerationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analysis: Option<BatchReport>,
}

impl JsonReport {
    fn new(run: RunReport) -> Self {
        JsonReport {
            run,
            enumeration: None,
            verification: None,
            analysis: None,
        }
    }
}

#[derive(Debug, Serialize)]
struct EnumerationSection {
    emitted: u64,
    sorted: bool,
    limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solutions: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
struct VerificationSection {
    valid: usize,
    invalid: usize,
    non_canonical: usize,
    diagnostics: Vec<Diagnostic>,
    failures: Vec<LineViolations>,
}

#[derive(Debug, Serialize)]
struct LineViolations {
    line: usize,
    violations: Vec<Violation>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::Domain(_) | Error::Structural(_) => EXIT_USAGE,
            Error::Io(_) => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

fn failure(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Count { problem, search, output } => cmd_count(&problem, &search, &output, stdout, stderr),
        Command::Enumerate { problem, search, limit, sort, output } => {
            cmd_enumerate(&problem, &search, limit, sort, &output, stdout, stderr)
        }
        Command::Verify { file, problem, strict, output } => {
            cmd_verify(&file, &problem, strict, &output, stdout, stderr)
        }
        Command::Analyze { file, problem, strict, output } => {
            cmd_analyze(&file, &problem, strict, &output, stdout, stderr)
        }
        Command::Exists { m, n, output } => cmd_exists(m, n, &output, stdout),
        Command::Estimate { m, n, actual, output } => cmd_estimate(m, n, actual, &output, stdout),
    }
}

/// Runs `body` against `--out FILE` when given, else against stdout.
fn with_output<F>(out: &Option<PathBuf>, stdout: &mut dyn Write, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> Result<(), Failure>,
{
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| failure(EXIT_FAILURE, format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

fn write_json(w: &mut dyn Write, report: &JsonReport) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *w, report)?;
    writeln!(w)?;
    Ok(())
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

fn write_plain_counts(w: &mut dyn Write, run: &RunReport) -> io::Result<()> {
    writeln!(w, "problem ({}, {})", run.m, run.n)?;
    writeln!(w, "canonical_count {}", opt(run.canonical_count))?;
    writeln!(w, "raw_count {}", opt(run.raw_count))?;
    writeln!(w, "palindrome_count {}", opt(run.palindrome_count))?;
    writeln!(w, "nodes_visited {}", opt(run.nodes_visited))?;
    writeln!(w, "elapsed_seconds {}", opt(run.elapsed_seconds.map(|s| format!("{s:.3}"))))?;
    writeln!(w, "verdict {}", run.verdict)?;
    writeln!(w, "estimate {}", opt(run.estimate))?;
    writeln!(w, "ratio {}", opt(run.ratio))?;
    Ok(())
}

fn cmd_count(
    args: &ProblemArgs,
    search: &SearchArgs,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let problem = Problem::new(args.m, args.n)?;
    let counts = count(&problem, &search.options())?;
    let run = RunReport::new(&problem).with_counts(&counts);

    let mut issues = counts.consistency_issues(&problem);
    if run.verdict.status == ExistenceStatus::RuledOut && counts.raw_count > 0 {
        issues.push(format!("found solutions although the verdict is {}", run.verdict));
    }

    with_output(&output.out, stdout, |w| {
        if output.json {
            write_json(w, &JsonReport::new(run.clone()))
        } else {
            write_plain_counts(w, &run).map_err(Failure::from)
        }
    })?;
    for issue in &issues {
        writeln!(stderr, "consistency failure: {issue}")?;
    }
    Ok(if issues.is_empty() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_enumerate(
    args: &ProblemArgs,
    search: &SearchArgs,
    limit: Option<u64>,
    sort: bool,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let problem = Problem::new(args.m, args.n)?;
    let options = EnumerateOptions {
        search: search.options(),
        limit,
        sort,
    };
    let mut run = RunReport::new(&problem);

    if output.json {
        // Solutions go to --out when given, otherwise into the report.
        let mut lines = Vec::new();
        let emitted = match &output.out {
            Some(_) => {
                let mut emitted = 0;
                with_output(&output.out, stdout, |w| {
                    emitted = enumerate(&problem, &options, |s| writeln!(w, "{s}"))?;
                    Ok(())
                })?;
                emitted
            }
            None => enumerate(&problem, &options, |s| {
                lines.push(s.to_string());
                Ok(())
            })?,
        };
        if limit.is_none() {
            run.canonical_count = Some(emitted);
        }
        let mut report = JsonReport::new(run);
        report.enumeration = Some(EnumerationSection {
            emitted,
            sorted: sort,
            limit,
            solutions: output.out.is_none().then_some(lines),
        });
        write_json(stdout, &report)?;
        return Ok(EXIT_OK);
    }

    let mut emitted = 0;
    with_output(&output.out, stdout, |w| {
        emitted = enumerate(&problem, &options, |s| writeln!(w, "{s}"))?;
        Ok(())
    })?;
    writeln!(stderr, "emitted {emitted}")?;
    Ok(EXIT_OK)
}

fn read_solutions(path: &Path, problem: &Problem, strict: bool) -> Result<SolutionFile, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| failure(EXIT_FAILURE, format!("cannot read {}: {e}", path.display())))?;
    parse_solution_file(&bytes, problem, strict).map_err(|e| match e {
        Error::Structural(msg) => failure(EXIT_FAILURE, format!("{}: {msg}", path.display())),
        other => other.into(),
    })
}

fn cmd_verify(
    path: &Path,
    args: &ProblemArgs,
    strict: bool,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    _stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let problem = Problem::new(args.m, args.n)?;
    let file = read_solutions(path, &problem, strict)?;

    let mut failures = Vec::new();
    let mut non_canonical = 0;
    for record in &file.records {
        let violations = verify(&problem, &record.sequence);
        if violations.is_empty() {
            if !is_canonical(&record.sequence, &problem)? {
                non_canonical += 1;
            }
        } else {
            failures.push(LineViolations { line: record.line, violations });
        }
    }
    let section = VerificationSection {
        valid: file.records.len() - failures.len(),
        invalid: failures.len() + file.diagnostics.len(),
        non_canonical,
        diagnostics: file.diagnostics,
        failures,
    };
    let ok = section.invalid == 0;

    with_output(&output.out, stdout, |w| {
        if output.json {
            let mut report = JsonReport::new(RunReport::new(&problem));
            report.verification = Some(section);
            return write_json(w, &report);
        }
        for d in &section.diagnostics {
            writeln!(w, "{d}")?;
        }
        for f in &section.failures {
            for v in &f.violations {
                writeln!(w, "line {}: {v}", f.line)?;
            }
        }
        writeln!(
            w,
            "{} valid, {} invalid, {} non-canonical",
            section.valid, section.invalid, section.non_canonical
        )?;
        Ok(())
    })?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_analyze(
    path: &Path,
    args: &ProblemArgs,
    strict: bool,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let problem = Problem::new(args.m, args.n)?;
    let file = read_solutions(path, &problem, strict)?;
    for d in &file.diagnostics {
        writeln!(stderr, "{d}")?;
    }
    let batch = analyze_batch(&problem, file.records.into_iter().map(|r| (r.line, r.sequence)))
        .map_err(|e| failure(EXIT_FAILURE, e.to_string()))?;
    let ok = batch.identities_hold() && file.diagnostics.is_empty();

    with_output(&output.out, stdout, |w| {
        if output.json {
            let mut report = JsonReport::new(RunReport::new(&problem));
            report.analysis = Some(batch.clone());
            return write_json(w, &report);
        }
        for r in &batch.reports {
            let phi: Vec<String> = r.phi.order.iter().map(u32::to_string).collect();
            write!(
                w,
                "line {}: phi [{}] residue {}",
                r.line.unwrap_or(0),
                phi.join(" "),
                if r.residue.ok { "ok" } else { "FAIL" }
            )?;
            if let (Some(mu), Some(v)) = (&r.mu, &r.conjecture) {
                let values: Vec<String> = mu.mu.iter().map(u32::to_string).collect();
                write!(
                    w,
                    " mu [{}] weight {} peak {}@{:?} peak_ok {} unimodal {}",
                    values.join(" "),
                    mu.weight,
                    mu.peak_value,
                    mu.peak_indices,
                    v.peak_value_ok,
                    v.unimodal_ok
                )?;
            }
            writeln!(w)?;
        }
        writeln!(w, "analyzed {}", batch.analyzed)?;
        writeln!(w, "residue_failures {}", batch.residue_failures)?;
        writeln!(w, "phi_failures {}", batch.phi_failures)?;
        if batch.mu_skipped {
            writeln!(w, "mu-sequence skipped (defined for m = 2 only)")?;
        } else {
            writeln!(w, "weight_failures {}", batch.weight_failures)?;
            writeln!(w, "peak_ok {}/{}", batch.peak_ok, batch.analyzed)?;
            writeln!(w, "unimodal_ok {}/{}", batch.unimodal_ok, batch.analyzed)?;
            writeln!(w, "conjecture_ok {}/{}", batch.conjecture_ok, batch.analyzed)?;
        }
        Ok(())
    })?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_exists(m: usize, n: usize, output: &OutputArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let verdict = necessary_condition(m as u64, n as u64)?;
    with_output(&output.out, stdout, |w| {
        if output.json {
            return write_json(w, &JsonReport::new(RunReport::closed_form(m, n)?));
        }
        writeln!(w, "{verdict}")?;
        if verdict.status == ExistenceStatus::Possible {
            writeln!(
                w,
                "note: the condition is necessary only; (3, 8) satisfies it but p(3, 8) = 0"
            )?;
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn cmd_estimate(
    m: usize,
    n: usize,
    actual: Option<u64>,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut run = RunReport::closed_form(m, n)?;
    let estimate = asymptotic_estimate(m as u64, n as u64)?;
    let ratio = actual.map(|a| estimate_ratio(a, estimate)).transpose()?;
    run.estimate = Some(estimate);
    run.ratio = ratio;
    run.canonical_count = actual;
    with_output(&output.out, stdout, |w| {
        if output.json {
            return write_json(w, &JsonReport::new(run));
        }
        writeln!(w, "estimate {estimate}")?;
        if let Some(r) = ratio {
            writeln!(w, "ratio {r}")?;
        }
        if m == 3 {
            writeln!(w, "note: the m = 3 estimate is conjectural and has weak numerical support")?;
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}
