//! Command-line driver.
//!
//! Exit codes: 0 success, 1 syntax or validation error, 2 I/O error,
//! 3 back-propagation rejected the edit.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::backprop::{apply_delta, backprop, diff_component, extend_trace, BackpropError};
use crate::bsystem::Component;
use crate::domain_model::{order_chain, validate_chain, DomainModel, ScopeError, Violation};
use crate::dsl::{parse_bsystem, parse_domain_model, parse_events, parse_goal_model, ParseError};
use crate::emit::{load_trace, print_component, print_domain_model, print_obligations, print_trace, TraceHeader, TraceLoadError};
use crate::formula::RenderMode;
use crate::goal::{attach_event_bodies, attach_theorems, build_skeleton, GoalError};
use crate::translate::{translate_project, CorrespondenceTrace, TranslateError, TranslateOptions};

pub const TRACE_FILE: &str = "trace.tsv";
pub const PO_FILE: &str = "obligations.po";

#[derive(Debug, Parser)]
#[command(name = "kaos2b", version, about = "SysML/KAOS domain models to B System and back")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate one B System component per domain model.
    Translate(TranslateArgs),
    /// Carry additions made to a generated component back to its domain model.
    Backprop(BackpropArgs),
    /// Check a chain of domain models.
    Validate {
        #[arg(required = true)]
        models: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Default, Args)]
#[group(multiple = false)]
pub struct RenderArgs {
    /// Print `:`, `<:`, `-->` ... (default)
    #[arg(long)]
    pub ascii: bool,
    /// Print `∈`, `⊆`, `→` ...
    #[arg(long)]
    pub unicode: bool,
}

impl RenderArgs {
    pub fn mode(self) -> RenderMode {
        if self.unicode {
            RenderMode::Unicode
        } else {
            RenderMode::Ascii
        }
    }
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    /// Domain model files, in any order.
    #[arg(required = true)]
    pub models: Vec<PathBuf>,
    /// Type relations with `<->` and state every cardinality bound.
    #[arg(long)]
    pub expand_cardinalities: bool,
    #[command(flatten)]
    pub render: RenderArgs,
    /// Goal model driving events and proof obligations.
    #[arg(long, value_name = "FILE")]
    pub goals: Option<PathBuf>,
    /// Directory of `<component>.bsys` event bodies.
    #[arg(long, value_name = "DIR", requires = "goals")]
    pub events: Option<PathBuf>,
    /// Earlier trace whose B names are reused.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    #[arg(short = 'o', long = "out", value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BackpropArgs {
    /// Domain model files the baseline was generated from.
    #[arg(required = true)]
    pub models: Vec<PathBuf>,
    /// Trace written with the baseline.
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,
    /// Generated component.
    #[arg(long, value_name = "FILE")]
    pub baseline: PathBuf,
    /// The same component after editing.
    #[arg(long, value_name = "FILE")]
    pub edited: PathBuf,
    #[arg(short = 'o', long = "out", value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{source}")]
    Syntax { path: String, source: ParseError },
    #[error("{path}: {source}")]
    TraceFile { path: String, source: TraceLoadError },
    #[error("{}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid { violations: Vec<Violation> },
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error(transparent)]
    Translate(TranslateError),
    #[error(transparent)]
    Goal(#[from] GoalError),
    #[error(transparent)]
    Backprop(BackpropError),
}

impl From<TranslateError> for CliError {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::ValidationFailed { violations } => CliError::Invalid { violations },
            TranslateError::Scope(s) => CliError::Scope(s),
            other => CliError::Translate(other),
        }
    }
}

impl From<BackpropError> for CliError {
    fn from(e: BackpropError) -> Self {
        match e {
            BackpropError::Invalid { violations } => CliError::Invalid { violations },
            BackpropError::Scope(s) => CliError::Scope(s),
            other => CliError::Backprop(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Backprop(
                BackpropError::UnsupportedEdit { .. }
                | BackpropError::NoMatchingRule { .. }
                | BackpropError::AmbiguousPattern { .. }
                | BackpropError::NameClash { .. },
            ) => 3,
            _ => 1,
        }
    }
}

/// An input file: display path and contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub path: String,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Source {
            path: path.display().to_string(),
            text,
        })
    }
}

/// Files to write, relative to the output directory.
pub type Artifacts = Vec<(String, String)>;

#[derive(Debug, Clone, Default)]
pub struct TranslateInput {
    pub models: Vec<Source>,
    pub goals: Option<Source>,
    /// Component name and event-body text.
    pub events: Vec<(String, Source)>,
    pub hints: Option<CorrespondenceTrace>,
    pub options: TranslateOptions,
    pub mode: RenderMode,
}

pub fn parse_chain(models: &[Source]) -> Result<Vec<DomainModel>, CliError> {
    let parsed = models
        .iter()
        .map(|s| {
            parse_domain_model(&s.text).map_err(|source| CliError::Syntax {
                path: s.path.clone(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(order_chain(parsed)?)
}

/// Everything `translate` writes: components, obligations, trace.
pub fn translate_artifacts(input: &TranslateInput) -> Result<(Vec<Component>, Artifacts), CliError> {
    let chain = parse_chain(&input.models)?;
    let (mut components, trace) = translate_project(&chain, &input.options, input.hints.as_ref())?;
    let mut obligations = None;
    if let Some(g) = &input.goals {
        let gm = parse_goal_model(&g.text).map_err(|source| CliError::Syntax {
            path: g.path.clone(),
            source,
        })?;
        build_skeleton(&gm, &mut components)?;
        let bodies = input
            .events
            .iter()
            .map(|(c, s)| {
                parse_events(&s.text)
                    .map(|e| (c.clone(), e))
                    .map_err(|source| CliError::Syntax {
                        path: s.path.clone(),
                        source,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        attach_event_bodies(&gm, &mut components, &bodies)?;
        obligations = Some(attach_theorems(&gm, &mut components)?);
    }

    let mut files: Artifacts = components
        .iter()
        .map(|c| (format!("{}.bsys", c.name), print_component(c, input.mode)))
        .collect();
    if let Some(po) = obligations {
        files.push((PO_FILE.to_string(), print_obligations(&po, input.mode)));
    }
    let inputs: Vec<(String, &str)> = input.models.iter().map(|s| (s.path.clone(), s.text.as_str())).collect();
    files.push((TRACE_FILE.to_string(), print_trace(&trace, &TraceHeader::new(&inputs))));
    Ok((components, files))
}

pub fn load_trace_source(s: &Source) -> Result<CorrespondenceTrace, CliError> {
    load_trace(&s.text)
        .map(|(t, _)| t)
        .map_err(|source| CliError::TraceFile {
            path: s.path.clone(),
            source,
        })
}

fn parse_component(s: &Source) -> Result<Component, CliError> {
    parse_bsystem(&s.text).map_err(|source| CliError::Syntax {
        path: s.path.clone(),
        source,
    })
}

/// The updated domain model file and the extended trace.
pub fn backprop_artifacts(
    models: &[Source],
    trace: &Source,
    baseline: &Source,
    edited: &Source,
) -> Result<Artifacts, CliError> {
    let chain = parse_chain(models)?;
    let trace = load_trace_source(trace)?;
    let baseline = parse_component(baseline)?;
    let edited = parse_component(edited)?;
    let additions = diff_component(&baseline, &edited)?;
    let delta = backprop(&additions, &trace, &chain, &baseline.name)?;
    let level = chain
        .iter()
        .position(|m| m.name == delta.model)
        .expect("backprop names a model of the chain");
    let updated = apply_delta(&chain[level], &delta);
    let text = print_domain_model(&updated);
    let trace = extend_trace(&trace, &delta).map_err(BackpropError::from)?;
    let file = format!("{}.dmod", updated.name);
    let header = TraceHeader::new(&[(file.clone(), text.as_str())]);
    Ok(vec![(file, text), (TRACE_FILE.to_string(), print_trace(&trace, &header))])
}

pub fn validate_sources(models: &[Source]) -> Result<(), CliError> {
    let chain = parse_chain(models)?;
    let violations = validate_chain(&chain)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invalid { violations })
    }
}

fn read_all(paths: &[PathBuf]) -> Result<Vec<Source>, CliError> {
    paths.iter().map(|p| Source::read(p)).collect()
}

/// Event bodies are read from `<component>.bsys` files, sorted by name.
fn read_events(dir: &Path) -> Result<Vec<(String, Source)>, CliError> {
    let io_err = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err)?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "bsys"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Source::read(p).map(|s| (name, s))
        })
        .collect()
}

fn write_all(out: &Path, files: &Artifacts) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    files
        .iter()
        .map(|(name, text)| {
            let path = out.join(name);
            fs::write(&path, text)
                .map(|_| path.clone())
                .map_err(|source| CliError::Io { path, source })
        })
        .collect()
}

pub fn cmd_translate(args: &TranslateArgs) -> Result<Vec<PathBuf>, CliError> {
    let input = TranslateInput {
        models: read_all(&args.models)?,
        goals: args.goals.as_deref().map(Source::read).transpose()?,
        events: match &args.events {
            Some(dir) => read_events(dir)?,
            None => Vec::new(),
        },
        hints: match &args.trace {
            Some(p) => Some(load_trace_source(&Source::read(p)?)?),
            None => None,
        },
        options: TranslateOptions {
            expand_cardinalities: args.expand_cardinalities,
        },
        mode: args.render.mode(),
    };
    let (_, files) = translate_artifacts(&input)?;
    write_all(&args.out, &files)
}

pub fn cmd_backprop(args: &BackpropArgs) -> Result<Vec<PathBuf>, CliError> {
    let files = backprop_artifacts(
        &read_all(&args.models)?,
        &Source::read(&args.trace)?,
        &Source::read(&args.baseline)?,
        &Source::read(&args.edited)?,
    )?;
    write_all(&args.out, &files)
}

pub fn cmd_validate(models: &[PathBuf]) -> Result<(), CliError> {
    validate_sources(&read_all(models)?)
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Translate(a) => cmd_translate(a),
        Command::Backprop(a) => cmd_backprop(a),
        Command::Validate { models } => cmd_validate(models).map(|_| Vec::new()),
    };
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
