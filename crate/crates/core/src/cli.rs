//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it with in-memory streams.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::diagnostic::Diagnostic;
use crate::ontology::project_timeline;
use crate::oracle::tick_oracle;
use crate::parser::{parse_document, parse_rational, ParsedDocument};
use crate::report::{trace_text, verdict_line, verdicts_json, VerdictRecord};
use crate::semantics::Evaluator;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "loveline", version, about = "Evaluate loving-over-an-interval queries on loveline timelines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a timeline; diagnostics go to stderr
    Check { file: PathBuf },
    /// Evaluate every query in a timeline
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Show the condition trace behind one query's verdict
    Explain {
        file: PathBuf,
        /// 1-based query index
        #[arg(long)]
        query: usize,
    },
    /// Print the BFO projection of a timeline
    ExportBfo { file: PathBuf },
    /// Cross-check every query against the tick-by-tick oracle
    Oracle {
        file: PathBuf,
        /// Tick width, a rational such as 1 or 1/2
        #[arg(long)]
        granularity: String,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn diagnostics(&mut self, path: &Path, diags: &[Diagnostic]) {
        for d in diags {
            match d.position {
                Some(p) => {
                    let _ = writeln!(self.err, "{}:{}:{}: {}: {}", path.display(), p.line, p.column, d.code, d.message);
                }
                None => {
                    let _ = writeln!(self.err, "{}: {}: {}", path.display(), d.code, d.message);
                }
            }
        }
    }

    fn load(&mut self, path: &Path) -> Option<ParsedDocument> {
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                let _ = writeln!(self.err, "{}: {e}", path.display());
                return None;
            }
        };
        match parse_document(&text) {
            Ok(doc) => Some(doc),
            Err(diags) => {
                self.diagnostics(path, &diags);
                None
            }
        }
    }
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match cli.command {
        Command::Check { file } => match io.load(&file) {
            Some(_) => EXIT_OK,
            None => EXIT_FAILURE,
        },
        Command::Eval { file, format } => eval(&mut io, &file, format),
        Command::Explain { file, query } => explain(&mut io, &file, query),
        Command::ExportBfo { file } => {
            let Some(doc) = io.load(&file) else { return EXIT_FAILURE };
            let _ = io.out.write_all(project_timeline(&doc.timeline).export().as_bytes());
            EXIT_OK
        }
        Command::Oracle { file, granularity } => oracle(&mut io, &file, &granularity),
    }
}

fn eval(io: &mut Io<'_>, file: &Path, format: Format) -> i32 {
    let Some(doc) = io.load(file) else { return EXIT_FAILURE };
    let ev = Evaluator::new(&doc.timeline);
    let mut records = Vec::new();
    for (k, q) in doc.queries().iter().enumerate() {
        let verdict = match ev.evaluate_query(q) {
            Ok(v) => v,
            Err(e) => {
                let _ = writeln!(io.err, "{}: query {}: {}: {e}", file.display(), k + 1, e.code());
                return EXIT_FAILURE;
            }
        };
        match format {
            Format::Text => {
                let _ = writeln!(io.out, "{}", verdict_line(q, &verdict));
            }
            Format::Json => records.push(VerdictRecord::new(q, &verdict)),
        }
    }
    if format == Format::Json {
        let _ = io.out.write_all(verdicts_json(&records).as_bytes());
    }
    EXIT_OK
}

fn explain(io: &mut Io<'_>, file: &Path, index: usize) -> i32 {
    let Some(doc) = io.load(file) else { return EXIT_FAILURE };
    let Some(q) = index.checked_sub(1).and_then(|k| doc.queries().get(k)) else {
        let _ = writeln!(
            io.err,
            "{}: no query {index} (the file has {} queries)",
            file.display(),
            doc.queries().len()
        );
        return EXIT_FAILURE;
    };
    let ev = Evaluator::new(&doc.timeline);
    match ev.explain(&q.subject, &q.object, &q.interval, &ev.threshold_for(q)) {
        Ok(trace) => {
            let _ = io.out.write_all(trace_text(index, q, &trace).as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(io.err, "{}: query {index}: {}: {e}", file.display(), e.code());
            EXIT_FAILURE
        }
    }
}

fn oracle(io: &mut Io<'_>, file: &Path, granularity: &str) -> i32 {
    let granularity = match parse_rational(granularity) {
        Ok(g) => g,
        Err(msg) => {
            let _ = writeln!(io.err, "--granularity: {msg}");
            return EXIT_USAGE;
        }
    };
    let Some(doc) = io.load(file) else { return EXIT_FAILURE };
    let t = &doc.timeline;
    let ev = Evaluator::new(t);
    let mut agree = true;
    for (k, q) in doc.queries().iter().enumerate() {
        let threshold = ev.threshold_for(q);
        let reference = tick_oracle(&q.subject, &q.object, &q.interval, &threshold, t, &t.config, &granularity);
        let verdict = ev.evaluate_query(q);
        match (verdict, reference) {
            (Ok(v), Ok(r)) if v == r => {
                let _ = writeln!(io.out, "query {}: agree: {}", k + 1, verdict_line(q, &v));
            }
            (Ok(v), Ok(r)) => {
                agree = false;
                let _ = writeln!(io.out, "query {}: MISMATCH", k + 1);
                let _ = writeln!(io.out, "  evaluate: {} events={}", verdict_line(q, &v), v.love_events);
                let _ = writeln!(io.out, "  oracle:   {} events={}", verdict_line(q, &r), r.love_events);
            }
            (Err(e), _) | (_, Err(e)) => {
                let _ = writeln!(io.err, "{}: query {}: {}: {e}", file.display(), k + 1, e.code());
                return EXIT_FAILURE;
            }
        }
    }
    if agree {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}
