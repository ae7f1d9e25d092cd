use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::sync::{Arc, Mutex};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zerohecke::export::{descent_classes_dot, descent_classes_json};
use zerohecke::homology::{injective_hull, projective_cover};
use zerohecke::module::json_header;
use zerohecke::qsym::{build_family, symmetric_group, Composition, Family, DEFAULT_MAX_N};
use zerohecke::twist::{apply_twist, twist_square, twist_square_dot, TwistTag};
use zerohecke::verify::{run_section5, run_suite, Instance, Report, Suite};
use zerohecke::{Error, Field, FieldSpec, GroupModel, GroupTable, HModule, OutputFormat, PrimeField, Rationals, RunConfig, Subset, WeakInterval};

const EXIT_FAIL: u8 = 1;
const EXIT_UNDETERMINED: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "zerohecke", version, about = "Weak Bruhat interval modules of 0-Hecke algebras")]
struct Cli {
    /// Coxeter group: A3, B4, D4, I2:7, ...
    #[arg(long, global = true, default_value = "A3")]
    group: String,
    /// Q or Fp:<prime>
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// json, dot or text
    #[arg(long, global = true, default_value = "text")]
    output: String,
    /// Largest composition size for type-A sweeps
    #[arg(long, global = true, default_value_t = 6)]
    max_n: usize,
    /// Suite to run when `verify` gets no positional suite
    #[arg(long, global = true)]
    suite: Option<String>,
    /// Largest group to enumerate
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_group_size: usize,
    #[arg(long, global = true, hide = true)]
    inject_corruption: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the group
    Group,
    /// The left weak interval [lo, hi]
    Interval {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Build a module and print it as JSON
    Module {
        #[arg(long, value_enum)]
        kind: ModuleKind,
        #[arg(long)]
        lo: Option<String>,
        #[arg(long)]
        hi: Option<String>,
        /// Generator set such as {1,3}
        #[arg(long)]
        i: Option<String>,
        #[arg(long)]
        j: Option<String>,
        /// Comma-separated generators of the upper ideal Y
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Apply phi, theta, chi, theta_hat or omega_hat to a module
    Twist {
        #[arg(long)]
        tag: String,
        /// Module JSON file, or - for stdin
        #[arg(long)]
        module: String,
    },
    /// Projective cover certificate
    Cover {
        #[arg(long)]
        module: String,
    },
    /// Injective hull certificate
    Hull {
        #[arg(long)]
        module: String,
    },
    /// Compositions, tableaux and their modules in type A
    Qsym {
        #[command(subcommand)]
        command: QsymCommand,
    },
    /// Run a theorem-verification suite
    Verify { suite: Option<String> },
    /// Write a drawing or table
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        #[arg(long)]
        lo: Option<String>,
        #[arg(long)]
        hi: Option<String>,
        #[arg(long)]
        i: Option<String>,
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Subcommand)]
enum QsymCommand {
    Build {
        #[arg(long)]
        family: String,
        #[arg(long)]
        alpha: String,
    },
    Verify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleKind {
    Interval,
    Projective,
    Simple,
    Quotient,
    Submodule,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    IntervalHasse,
    DescentClasses,
    ModuleDigraph,
    TwistSquare,
}

enum Failure {
    Usage(String),
    Fail(String),
    Undetermined(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Parse(_) | Error::Argument(_) => Failure::Usage(e.to_string()),
            Error::Undetermined(_) => Failure::Undetermined(e.to_string()),
            _ => Failure::Fail(e.to_string()),
        }
    }
}

type CliResult = Result<u8, Failure>;

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::parse(&cli.group, &cli.field, cli.seed)?;
    cfg.output = cli.output.parse()?;
    cfg.max_n = cli.max_n;
    cfg.max_group_size = cli.max_group_size;
    cfg.inject_corruption = cli.inject_corruption;
    Ok(cfg)
}

fn emit(s: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    if !s.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn emit_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn group(cfg: &RunConfig, model: GroupModel) -> Result<Arc<GroupTable>, Failure> {
    Ok(Arc::new(GroupTable::build_bounded(model, cfg.max_group_size)?))
}

fn required<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("--{name} is required")))
}

fn subset(g: &GroupTable, s: &str) -> Result<Subset, Failure> {
    Ok(Subset::parse(s, g.rank())?)
}

fn interval(g: &Arc<GroupTable>, lo: &Option<String>, hi: &Option<String>) -> Result<WeakInterval, Failure> {
    let lo = g.parse_element(required(lo, "lo")?)?;
    let hi = g.parse_element(required(hi, "hi")?)?;
    Ok(WeakInterval::new(g, lo, hi)?)
}

/// Loads a module file, taking its group and field from the document.
fn with_module(path: &str, cfg: &RunConfig, run: impl FnOnce(&RunConfig, Value) -> CliResult) -> CliResult {
    let v = read_json(path)?;
    let (model, field) = json_header(&v)?;
    run(&cfg.with_group(model).with_field(field), v)
}

fn cmd_group(cfg: &RunConfig) -> CliResult {
    let g = group(cfg, cfg.group)?;
    match cfg.output {
        OutputFormat::Json => emit_json(&g.to_json()),
        _ => {
            let mut text = format!("{}: {} elements, rank {}, w0 = {}\n", g.model(), g.size(), g.rank(), g.label(g.w0()));
            for i in Subset::all(g.rank()) {
                text.push_str(&format!("|D{i}| = {}\n", g.descent_class(i).len()));
            }
            emit(&text);
        }
    }
    Ok(0)
}

fn cmd_interval(cfg: &RunConfig, lo: &Option<String>, hi: &Option<String>) -> CliResult {
    let g = group(cfg, cfg.group)?;
    let iv = interval(&g, lo, hi)?;
    match cfg.output {
        OutputFormat::Json => emit_json(&iv.to_json()),
        OutputFormat::Dot => emit(&iv.to_dot()),
        OutputFormat::Text => {
            let labels: Vec<String> = iv.members().iter().map(|&w| g.label(w)).collect();
            emit(&format!("{} elements: {}", iv.len(), labels.join(" ")));
        }
    }
    Ok(0)
}

fn build_module<F: Field>(
    g: &Arc<GroupTable>,
    field: &F,
    kind: ModuleKind,
    lo: &Option<String>,
    hi: &Option<String>,
    i: &Option<String>,
    j: &Option<String>,
    ideal: &Option<String>,
) -> Result<HModule<F>, Failure> {
    Ok(match kind {
        ModuleKind::Interval => HModule::interval_of(&interval(g, lo, hi)?, field),
        ModuleKind::Projective => {
            let i = subset(g, required(i, "i")?)?;
            let j = match j {
                Some(j) => subset(g, j)?,
                None => i,
            };
            HModule::projective(g, field, i, j)?
        }
        ModuleKind::Simple => HModule::simple(g, field, subset(g, required(i, "i")?)?),
        ModuleKind::Quotient | ModuleKind::Submodule => {
            let iv = interval(g, lo, hi)?;
            let gens = required(ideal, "ideal")?
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| g.parse_element(s))
                .collect::<Result<Vec<_>, _>>()?;
            let y = iv.up_closure(&gens)?;
            if matches!(kind, ModuleKind::Quotient) {
                HModule::ideal_quotient(&iv, field, &y)?
            } else {
                HModule::ideal_submodule(&iv, field, &y)?
            }
        }
    })
}

fn cmd_twist(cfg: &RunConfig, tag: &str, path: &str) -> CliResult {
    let tag: TwistTag = tag.parse()?;
    with_module(path, cfg, |cfg, v| {
        let g = group(cfg, cfg.group)?;
        with_field!(cfg.field, f => {
            let m = HModule::from_json(&v, &g, &f)?;
            emit_json(&apply_twist(tag, &m).to_json());
        });
        Ok(0)
    })
}

fn cmd_cover(cfg: &RunConfig, path: &str, hull: bool) -> CliResult {
    with_module(path, cfg, |cfg, v| {
        let g = group(cfg, cfg.group)?;
        let certified = with_field!(cfg.field, f => {
            let m = HModule::from_json(&v, &g, &f)?;
            if hull {
                let c = injective_hull(&m, cfg.seed)?;
                emit_json(&c.to_json());
                c.certified()
            } else {
                let c = projective_cover(&m, cfg.seed)?;
                emit_json(&c.to_json());
                c.certified()
            }
        });
        Ok(if certified { 0 } else { EXIT_FAIL })
    })
}

fn progress_printer() -> impl Fn(&Instance) + Sync {
    let lock = Mutex::new(());
    move |i: &Instance| {
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        eprintln!("{i}");
    }
}

fn emit_report(cfg: &RunConfig, report: &Report) -> u8 {
    match cfg.output {
        OutputFormat::Json => emit(&report.to_json()),
        _ => emit(&report.to_text()),
    }
    report.exit_code() as u8
}

fn cmd_verify(cfg: &RunConfig, suite: &str) -> CliResult {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, cfg, &progress_printer())?;
    Ok(emit_report(cfg, &report))
}

fn cmd_qsym(cfg: &RunConfig, command: &QsymCommand) -> CliResult {
    match command {
        QsymCommand::Build { family, alpha } => {
            let family: Family = family.parse()?;
            let alpha: Composition = alpha.parse()?;
            let g = symmetric_group(alpha.n())?;
            with_field!(cfg.field, f => {
                let m = build_family(&g, &f, family, &alpha, cfg.max_n.max(DEFAULT_MAX_N))?;
                match cfg.output {
                    OutputFormat::Dot => emit(&m.to_dot()),
                    _ => emit_json(&m.to_json()),
                }
            });
            Ok(0)
        }
        QsymCommand::Verify { n } => {
            let report = run_section5(*n, cfg, &progress_printer())?;
            Ok(emit_report(cfg, &report))
        }
    }
}

fn cmd_export(cfg: &RunConfig, kind: ExportKind, lo: &Option<String>, hi: &Option<String>, i: &Option<String>, module: &Option<String>) -> CliResult {
    match kind {
        ExportKind::IntervalHasse => {
            let g = group(cfg, cfg.group)?;
            let iv = interval(&g, lo, hi)?;
            match cfg.output {
                OutputFormat::Json => emit_json(&iv.to_json()),
                _ => emit(&iv.to_dot()),
            }
        }
        ExportKind::DescentClasses => {
            let g = group(cfg, cfg.group)?;
            match cfg.output {
                OutputFormat::Json => emit_json(&descent_classes_json(&g)),
                _ => emit(&descent_classes_dot(&g)),
            }
        }
        ExportKind::ModuleDigraph => {
            if let Some(path) = module {
                return with_module(path, cfg, |cfg, v| {
                    let g = group(cfg, cfg.group)?;
                    with_field!(cfg.field, f => emit(&HModule::from_json(&v, &g, &f)?.to_dot()));
                    Ok(0)
                });
            }
            let g = group(cfg, cfg.group)?;
            with_field!(cfg.field, f => emit(&HModule::interval_of(&interval(&g, lo, hi)?, &f).to_dot()));
        }
        ExportKind::TwistSquare => {
            let g = group(cfg, cfg.group)?;
            let i = subset(&g, required(i, "i")?)?;
            let edges = with_field!(cfg.field, f => twist_square(&g, &f, i, cfg.seed));
            match cfg.output {
                OutputFormat::Json => emit_json(&Value::Array(
                    edges.iter().map(|e| json!({"tag": e.tag.name(), "from": e.from.to_one_based(), "to": e.to.to_one_based(), "verified": e.verified})).collect(),
                )),
                _ => emit(&twist_square_dot(&edges)),
            }
            if edges.iter().any(|e| !e.verified) {
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> CliResult {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Group => cmd_group(&cfg),
        Command::Interval { lo, hi } => cmd_interval(&cfg, &Some(lo.clone()), &Some(hi.clone())),
        Command::Module { kind, lo, hi, i, j, ideal } => {
            let g = group(&cfg, cfg.group)?;
            with_field!(cfg.field, f => {
                let m = build_module(&g, &f, *kind, lo, hi, i, j, ideal)?;
                match cfg.output {
                    OutputFormat::Dot => emit(&m.to_dot()),
                    _ => emit_json(&m.to_json()),
                }
            });
            Ok(0)
        }
        Command::Twist { tag, module } => cmd_twist(&cfg, tag, module),
        Command::Cover { module } => cmd_cover(&cfg, module, false),
        Command::Hull { module } => cmd_cover(&cfg, module, true),
        Command::Qsym { command } => cmd_qsym(&cfg, command),
        Command::Verify { suite } => cmd_verify(&cfg, suite.as_deref().or(cli.suite.as_deref()).unwrap_or("all")),
        Command::Export { kind, lo, hi, i, module } => cmd_export(&cfg, *kind, lo, hi, i, module),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Fail(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Undetermined(m)) => {
            eprintln!("undetermined: {m}");
            ExitCode::from(EXIT_UNDETERMINED)
        }
    }
}
