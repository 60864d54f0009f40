//! Command-line front end.
//!
//! Text output is one `key=value` field per line, except that the split
//! bounds share a single line. `--json` prints the same fields as a JSON
//! object (an array of objects when the input holds several diagrams).
//!
//! Exit codes: 0 success, 1 parse or validation failure, 2 usage error or
//! failed precondition, 3 a `verify` suite failed.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::diagram::Diagram;
use crate::moves::{MoveError, MoveKind, TransformLog};
use crate::pdparse::{self, ParseError, CATALOG};
use crate::skein;
use crate::splitting::{self, Bound, SplitBounds, SplitError};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

const DEFAULT_BUDGET: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "linksplit", version, about = "Link diagrams, lassoing moves and complete splitting number bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// PD file (one expression per line, `#` comments); `-` or omitted reads stdin
    #[arg(long, conflicts_with = "catalog")]
    input: Option<PathBuf>,
    /// Named catalog fixture
    #[arg(long)]
    catalog: Option<String>,
    /// Transform log sidecar; when it exists, its current diagram is the input
    #[arg(long)]
    log: Option<PathBuf>,
    /// Largest crossing-change set tried by the splitting search
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("move").required(true).args(["lasso", "component_lasso", "change", "anti_lasso"])))]
struct MoveArgs {
    /// Lasso at crossing id
    #[arg(long)]
    lasso: Option<usize>,
    /// Lasso at a self-crossing
    #[arg(long)]
    component_lasso: Option<usize>,
    /// Crossing change at crossing id
    #[arg(long)]
    change: Option<usize>,
    /// Undo the lassoing recorded at this log step
    #[arg(long)]
    anti_lasso: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate and echo the canonical PD code
    Parse(Source),
    /// Components, Conway and Alexander polynomials, linking matrix, ld
    Invariants(Source),
    /// Apply one move and emit the diagram and log
    Transform {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        mv: MoveArgs,
    },
    /// Bounds on the complete splitting number
    Bounds(Source),
    /// Run the property suites over the catalog
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// List catalog fixtures
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

/// One output field. `text` is the rendering used by the line format.
struct Field {
    key: &'static str,
    value: Value,
    text: String,
}

fn field(key: &'static str, value: impl Into<Value> + ToString) -> Field {
    let text = value.to_string();
    Field { key, value: value.into(), text }
}

/// Fields grouped into text lines.
#[derive(Default)]
struct Record {
    lines: Vec<Vec<Field>>,
}

impl Record {
    fn push(&mut self, f: Field) {
        self.lines.push(vec![f]);
    }

    fn push_line(&mut self, fs: Vec<Field>) {
        self.lines.push(fs);
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for f in self.lines.iter().flatten() {
            m.insert(f.key.to_string(), f.value.clone());
        }
        Value::Object(m)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let parts: Vec<String> = line.iter().map(|f| format!("{}={}", f.key, f.text)).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

fn emit(out: &mut dyn Write, records: &[Record], json: bool) -> io::Result<()> {
    if json {
        let v = match records {
            [one] => one.to_json(),
            many => Value::Array(many.iter().map(Record::to_json).collect()),
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        let blocks: Vec<String> = records.iter().map(Record::to_text).collect();
        write!(out, "{}", blocks.join("\n"))
    }
}

enum Failure {
    Parse(String),
    Precondition(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Malformed(_) => Failure::Parse(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<SplitError> for Failure {
    fn from(e: SplitError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

fn read_source_text(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Failure::Precondition(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn existing_log(src: &Source) -> Result<Option<TransformLog>, Failure> {
    match &src.log {
        Some(p) if p.exists() => {
            let text = fs::read_to_string(p)?;
            Ok(Some(TransformLog::from_text(&text)?))
        }
        _ => Ok(None),
    }
}

fn load_diagrams(src: &Source, stdin: &mut dyn Read) -> Result<Vec<Diagram>, Failure> {
    if let Some(log) = existing_log(src)? {
        return Ok(vec![log.current().clone()]);
    }
    if let Some(name) = &src.catalog {
        return Ok(vec![pdparse::catalog(name)?]);
    }
    let text = read_source_text(src.input.as_deref(), stdin)?;
    let ds = pdparse::parse_pd_file(&text)?;
    if ds.is_empty() {
        return Err(Failure::Parse("input holds no PD expression".into()));
    }
    Ok(ds)
}

fn bound_field(key: &'static str, b: Bound) -> Field {
    Field {
        key,
        value: json!({ "value": b.value, "rule": b.rule.tag() }),
        text: format!("{} ({})", b.value, b.rule),
    }
}

fn bounds_line(b: &SplitBounds) -> Vec<Field> {
    vec![bound_field("lower", b.lower), bound_field("upper", b.upper), field("exact", b.exact())]
}

fn invariants_record(d: &Diagram) -> Result<Record, Failure> {
    let mut r = Record::default();
    let nabla = skein::conway(d);
    let delta = nabla.conway_to_alexander().map_err(|e| Failure::Precondition(e.to_string()))?;
    let lk = splitting::linking_matrix(d);
    r.push(field("components", d.component_count()));
    r.push(field("crossings", d.crossing_count()));
    r.push(field("conway", nabla.render("z")));
    r.push(field("alexander", delta.render("t")));
    r.push(Field { key: "linking_matrix", value: json!(lk.rows()), text: lk.to_string() });
    r.push(field("lasso_budget", lk.lasso_budget()));
    r.push(field("algebraically_completely_splittable", lk.is_zero()));
    r.push(field("ld", splitting::warp_linking_degree(d)?));
    Ok(r)
}

fn log_fields(r: &mut Record, log: &TransformLog) {
    r.push(field("pd", pdparse::write_pd(log.current())));
    r.push(field("components", log.current().component_count()));
    r.push(field("base_components", log.base_components()));
    r.push(field("lassos", log.lasso_count()));
    let steps: Vec<String> = log.to_text().lines().skip(1).map(str::to_string).collect();
    r.push(Field { key: "steps", value: json!(steps), text: steps.join(", ") });
    if let Some(created) = log.steps().last().and_then(|s| s.created) {
        r.push(field("created_component", created));
    }
}

fn cmd_transform(src: &Source, mv: &MoveArgs, stdin: &mut dyn Read) -> Result<Vec<Record>, Failure> {
    let mut log = match existing_log(src)? {
        Some(log) => log,
        None => match &src.catalog {
            Some(name) => TransformLog::from_catalog(name)?,
            None => {
                let mut ds = load_diagrams(src, stdin)?;
                if ds.len() != 1 {
                    return Err(Failure::Precondition("transform takes exactly one diagram".into()));
                }
                TransformLog::new(ds.remove(0))
            }
        },
    };
    if let Some(step) = mv.anti_lasso {
        log = log.anti_lasso(step)?;
    } else {
        let (kind, c) = match (mv.lasso, mv.component_lasso, mv.change) {
            (Some(c), _, _) => (MoveKind::Lasso, c),
            (_, Some(c), _) => (MoveKind::ComponentLasso, c),
            (_, _, Some(c)) => (MoveKind::CrossingChange, c),
            _ => unreachable!("clap requires one move"),
        };
        log.apply(kind, c)?;
    }
    if let Some(p) = &src.log {
        fs::write(p, log.to_text())?;
    }
    let mut r = Record::default();
    log_fields(&mut r, &log);
    r.push(Field { key: "log", value: json!(log.to_text()), text: format!("{:?}", log.to_text()) });
    Ok(vec![r])
}

fn cmd_bounds(src: &Source, stdin: &mut dyn Read) -> Result<Vec<Record>, Failure> {
    if let Some(log) = existing_log(src)? {
        let base = splitting::split_bounds(log.base(), src.budget)?;
        let b = splitting::split_bounds_from_log(&log, &base)?;
        let mut r = Record::default();
        r.push_line(bounds_line(&b));
        r.push(field("r", log.lasso_count()));
        r.push(field("s", log.base_components()));
        r.push_line(
            bounds_line(&base)
                .into_iter()
                .map(|f| Field { key: if f.key == "lower" { "base_lower" } else if f.key == "upper" { "base_upper" } else { "base_exact" }, ..f })
                .collect(),
        );
        return Ok(vec![r]);
    }
    let cited = src.catalog.as_deref() == Some("7^2_6");
    load_diagrams(src, stdin)?
        .iter()
        .map(|d| {
            let lower = splitting::split_lower(d);
            let upper = splitting::split_diagram_upper(d, src.budget)?;
            let b = SplitBounds::new(lower, upper.bound);
            let mut r = Record::default();
            r.push_line(bounds_line(&b));
            if let Some(changes) = upper.changes {
                let text = changes.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                r.push(Field { key: "witness", value: json!(changes), text });
            }
            if cited {
                r.push(field("note", "unlinking number u=2 is a published table value, not computed here"));
            }
            Ok(r)
        })
        .collect()
}

fn cmd_verify() -> (Vec<Record>, bool) {
    let suites = verify::run_all();
    let all_ok = suites.iter().all(verify::SuiteResult::ok);
    let mut r = Record::default();
    for s in &suites {
        r.push_line(vec![field("suite", s.name), field("passed", s.passed), field("failed", s.failed)]);
    }
    let mut records = vec![r];
    if !all_ok {
        let mut f = Record::default();
        for s in suites.iter().filter(|s| !s.ok()) {
            f.push(Field { key: "failures", value: json!(s.failures), text: s.failures.join("; ") });
        }
        records.push(f);
    }
    (records, all_ok)
}

fn cmd_catalog() -> Vec<Record> {
    CATALOG
        .iter()
        .map(|e| {
            let mut r = Record::default();
            r.push_line(vec![field("name", e.name), field("components", e.components), field("pd", e.pd)]);
            r
        })
        .collect()
}

fn dispatch(cli: Cli, out: &mut dyn Write, stdin: &mut dyn Read) -> Result<i32, Failure> {
    let (records, json, code) = match cli.command {
        Command::Parse(src) => {
            let ds = load_diagrams(&src, stdin)?;
            let recs = ds
                .iter()
                .map(|d| {
                    let mut r = Record::default();
                    r.push(field("pd", pdparse::serialize_pd(d)));
                    r.push(field("components", d.component_count()));
                    r.push(field("crossings", d.crossing_count()));
                    r
                })
                .collect();
            (recs, src.json, EXIT_OK)
        }
        Command::Invariants(src) => {
            let ds = load_diagrams(&src, stdin)?;
            let recs = ds.iter().map(invariants_record).collect::<Result<Vec<_>, _>>()?;
            (recs, src.json, EXIT_OK)
        }
        Command::Transform { source, mv } => (cmd_transform(&source, &mv, stdin)?, source.json, EXIT_OK),
        Command::Bounds(src) => (cmd_bounds(&src, stdin)?, src.json, EXIT_OK),
        Command::Verify { json } => {
            let (recs, ok) = cmd_verify();
            (recs, json, if ok { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Catalog { json } => (cmd_catalog(), json, EXIT_OK),
    };
    emit(out, &records, json)?;
    Ok(code)
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write, stdin: &mut dyn Read) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
        }
    };
    match dispatch(cli, out, stdin) {
        Ok(code) => code,
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Precondition(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PRECONDITION
        }
    }
}
