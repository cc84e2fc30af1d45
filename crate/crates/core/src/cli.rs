//! Command-line front end. Errors are printed to stderr as one JSON object
//! `{"error": kind, "message": text}`; the exit status depends only on the
//! verdict and the error class.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::clp3::{self, Clp3Options};
use crate::error::Error;
use crate::generators::{
    gen_3partition, gen_mcis, random_instance, realize_3partition_witness, realize_mcis_witness,
    McisInstance, RandomParams, ThreePartition,
};
use crate::model::{instance_to_json, parse_instance, render_svg, Instance, LevelEmbedding};
use crate::olp::{self, OlpOptions};
use crate::oracle::{brute_clp, brute_olp, verify_drawing, Limits};

/// Environment variable capping the number of memo entries of the ordered solver.
pub const MEMO_LIMIT_VAR: &str = "LEVELPLAN_MEMO_LIMIT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "levelplan",
    version,
    about = "Constrained and ordered level planarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an instance and write a drawing.
    Solve(SolveArgs),
    /// Check a drawing against an instance.
    Verify(VerifyArgs),
    /// Decide an instance by exhaustive search.
    Oracle(OracleArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Ordered when the input has ranks, constrained otherwise.
    Auto,
    Olp,
    Clp,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Embedding file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Worker threads for the three-level solver.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    drawing: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search nodes before giving up.
    #[arg(long, default_value_t = Limits::default().max_nodes)]
    max_nodes: u64,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Four-level constrained instance from a 3-Partition instance.
    #[command(name = "3partition")]
    ThreePartition(PartitionArgs),
    /// Ordered instance from a colored graph.
    Mcis(McisArgs),
    /// Random test instance.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
struct PartitionArgs {
    /// `{"numbers": [..], "m": int, "B": int}` as a file path or inline JSON.
    #[arg(long)]
    params: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Index triples of a solution, e.g. `[[0,1,2],[3,4,5]]`.
    #[arg(long, requires = "drawing")]
    triples: Option<String>,
    /// Where to write the drawing for `--triples`.
    #[arg(long, requires = "triples")]
    drawing: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct McisArgs {
    /// `{"edges": [[u,v],..], "colors": {u: int}, "k": int}` as a file path or inline JSON.
    #[arg(long)]
    params: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// One vertex per color, comma separated.
    #[arg(long, value_delimiter = ',', requires = "drawing")]
    select: Option<Vec<String>>,
    /// Where to write the drawing for `--select`.
    #[arg(long, requires = "select")]
    drawing: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = RandomParams::default().height)]
    height: usize,
    #[arg(long, default_value_t = RandomParams::default().vertices)]
    vertices: usize,
    #[arg(long, default_value_t = RandomParams::default().max_width)]
    max_width: usize,
    #[arg(long, default_value_t = RandomParams::default().edge_prob)]
    edge_prob: f64,
    #[arg(long, default_value_t = RandomParams::default().constraint_prob)]
    constraint_prob: f64,
    /// Only join adjacent levels.
    #[arg(long)]
    proper: bool,
    /// Emit ranks instead of constraints.
    #[arg(long)]
    ordered: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
    code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible => EXIT_NO,
            Error::MemoLimit { .. } | Error::SearchSpaceExceeded { .. } => EXIT_LIMIT,
            Error::Model(_)
            | Error::UnsupportedHeight { .. }
            | Error::SequenceInvalid(_)
            | Error::ParameterInvalid(_)
            | Error::WitnessInvalid(_) => EXIT_USAGE,
        };
        Failure {
            kind: e.kind(),
            message: e.to_string(),
            code,
        }
    }
}

impl Failure {
    fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            kind,
            message: message.into(),
            code: EXIT_USAGE,
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::usage("Io", format!("{}: {e}", path.display()))
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: &'a str,
}

type Outcome = Result<i32, Failure>;

/// Runs the binary with the process arguments and environment.
pub fn main() -> i32 {
    let memo = std::env::var(MEMO_LIMIT_VAR).ok();
    run(
        std::env::args_os(),
        memo.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

/// Runs one invocation; `memo_limit` is the raw value of [`MEMO_LIMIT_VAR`].
pub fn run<I, T>(args: I, memo_limit: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            report(
                err,
                &Failure::usage("Usage", e.render().to_string().trim_end()),
            );
            return EXIT_USAGE;
        }
    };
    let result = dispatch(cli.command, memo_limit, out);
    match result {
        Ok(code) => code,
        Err(f) => {
            report(err, &f);
            f.code
        }
    }
}

fn report(err: &mut dyn Write, f: &Failure) {
    let text = serde_json::to_string(&ErrorReport {
        error: f.kind,
        message: &f.message,
    })
    .expect("plain data");
    let _ = writeln!(err, "{text}");
}

fn dispatch(cmd: Command, memo_limit: Option<&str>, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Solve(a) => solve(a, memo_limit, out),
        Command::Verify(a) => verify(a, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Gen(GenCommand::ThreePartition(a)) => gen_partition(a, out),
        Command::Gen(GenCommand::Mcis(a)) => gen_mcis_cmd(a, out),
        Command::Gen(GenCommand::Random(a)) => gen_random(a, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

/// Writes `text` to `path`, or to `out` when no path is given.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, &format!("{text}\n")),
        None => writeln!(out, "{text}").map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?, false).map_err(|e| Error::from(e).into())
}

fn embedding_json(emb: &LevelEmbedding) -> String {
    serde_json::to_string_pretty(emb).expect("plain data")
}

fn parse_memo_limit(raw: Option<&str>) -> Result<Option<usize>, Failure> {
    raw.map(|s| {
        s.trim().parse::<usize>().map_err(|_| {
            Failure::usage(
                "ParameterInvalid",
                format!("{MEMO_LIMIT_VAR} must be a non-negative integer, got `{s}`"),
            )
        })
    })
    .transpose()
}

fn solve(a: SolveArgs, memo_limit: Option<&str>, out: &mut dyn Write) -> Outcome {
    let memo_limit = parse_memo_limit(memo_limit)?;
    let inst = load_instance(&a.input)?;
    let emb = match (a.mode, &inst) {
        (Mode::Olp | Mode::Auto, Instance::Ordered(g)) => {
            olp::solve_and_draw(g, &OlpOptions { memo_limit })?
        }
        (Mode::Olp, Instance::Constrained(_)) => {
            return Err(
                Error::ParameterInvalid("ordered mode needs a rank on every vertex".into()).into(),
            )
        }
        (Mode::Clp | Mode::Auto, _) => {
            let g = inst.as_constrained();
            let opts = Clp3Options {
                jobs: a.jobs as usize,
                trace: false,
            };
            clp3::solve_with(&g, &opts)?
        }
    };
    if let Some(svg) = &a.svg {
        write_file(svg, &render_svg(inst.graph(), &emb))?;
    }
    emit(a.out.as_deref(), &embedding_json(&emb), out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    violations: Vec<crate::oracle::Violation>,
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.instance)?;
    let emb: LevelEmbedding = serde_json::from_str(&read(&a.drawing)?)
        .map_err(|e| Failure::usage("InvalidDrawing", format!("{}: {e}", a.drawing.display())))?;
    let violations = verify_drawing(&inst, &emb).err().unwrap_or_default();
    if let Some(svg) = &a.svg {
        write_file(svg, &render_svg(inst.graph(), &emb))?;
    }
    let ok = violations.is_empty();
    let text = serde_json::to_string_pretty(&VerifyReport { ok, violations }).expect("plain data");
    emit(None, &text, out)?;
    Ok(if ok { EXIT_OK } else { EXIT_NO })
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&a.input)?;
    let limits = Limits {
        max_nodes: a.max_nodes,
        shuffle: None,
    };
    let emb = match &inst {
        Instance::Ordered(g) => brute_olp(g, limits)?,
        Instance::Constrained(g) => brute_clp(g, limits)?,
    };
    emit(a.out.as_deref(), &embedding_json(&emb), out)?;
    Ok(EXIT_OK)
}

/// Parameters given inline when they look like JSON, otherwise read from a file.
fn load_params<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::usage("ParameterInvalid", e.to_string()))
}

fn gen_partition(a: PartitionArgs, out: &mut dyn Write) -> Outcome {
    let params: ThreePartition = load_params(&a.params)?;
    let inst = gen_3partition(&params)?;
    if let (Some(triples), Some(path)) = (&a.triples, &a.drawing) {
        let triples: Vec<[usize; 3]> = load_params(triples)?;
        let emb = realize_3partition_witness(&params, &triples)?;
        write_file(path, &embedding_json(&emb))?;
    }
    emit(
        a.out.as_deref(),
        &instance_to_json(&Instance::Constrained(inst)),
        out,
    )?;
    Ok(EXIT_OK)
}

fn gen_mcis_cmd(a: McisArgs, out: &mut dyn Write) -> Outcome {
    let params: McisInstance = load_params(&a.params)?;
    let inst = gen_mcis(&params)?;
    if let (Some(select), Some(path)) = (&a.select, &a.drawing) {
        let emb = realize_mcis_witness(&params, select)?;
        write_file(path, &embedding_json(&emb))?;
    }
    emit(
        a.out.as_deref(),
        &instance_to_json(&Instance::Ordered(inst)),
        out,
    )?;
    Ok(EXIT_OK)
}

fn gen_random(a: RandomArgs, out: &mut dyn Write) -> Outcome {
    let params = RandomParams {
        height: a.height,
        vertices: a.vertices,
        max_width: a.max_width,
        edge_prob: a.edge_prob,
        constraint_prob: a.constraint_prob,
        proper: a.proper,
        ordered: a.ordered,
        ..RandomParams::default()
    };
    let inst = random_instance(&params, a.seed)?;
    emit(a.out.as_deref(), &instance_to_json(&inst), out)?;
    Ok(EXIT_OK)
}
