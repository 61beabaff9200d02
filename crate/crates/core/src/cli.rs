//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `analyze` or `report` finds something at
//! or above `--fail-on`, 2 for anything that stops the pipeline (bad flags,
//! unreadable input, parse or validation errors, unknown viewpoint agent).

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{analyze_all, trust, AnalysisConfig, Severity, TrustParams};
use crate::dsl::load;
use crate::export::{
    render_report_styled, render_trust, to_dot, to_json, viewpoint, DotOptions, ReportFormat,
};
use crate::model::PromiseGraph;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FINDINGS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Set to any value to turn off ANSI colors in text reports.
pub const NO_COLOR_ENV: &str = "PROMISEGRAPH_NO_COLOR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Check,
    Analyze,
    Trust,
    Export,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    /// `-` reads from stdin.
    pub input_path: PathBuf,
    pub command: Command,
    pub format: Format,
    pub viewpoint: Option<String>,
    pub quorum: usize,
    pub trust: TrustParams,
    pub fail_on: Severity,
}

#[derive(Parser, Debug)]
#[command(
    name = "promisegraph",
    version,
    about = "Parse, check and analyze promise networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Parse and validate only
    Check(Opts),
    /// Run all analyses and print the report
    Analyze(Opts),
    /// Print the trust table
    Trust(Opts),
    /// Print the graph as JSON or DOT, optionally as seen by one agent
    Export(Opts),
    /// Human-readable summary of the analysis
    Report(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// Model file, or `-` for stdin
    input: PathBuf,

    /// Output format (default: text, or json for export)
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Agent or superagent whose view to export
    #[arg(long, value_name = "AGENT")]
    viewpoint: Option<String>,

    /// Distinct sources a consumer should accept each topic from
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    quorum: u32,

    #[arg(long, default_value_t = TrustParams::default().initial, value_name = "T")]
    trust_initial: f64,

    #[arg(long, default_value_t = TrustParams::default().alpha, value_name = "A")]
    trust_alpha: f64,

    #[arg(long, default_value_t = TrustParams::default().beta, value_name = "B")]
    trust_beta: f64,

    /// Lowest severity that makes analyze/report exit 1
    #[arg(long, default_value = "violation", value_parser = parse_severity)]
    fail_on: Severity,
}

fn parse_severity(s: &str) -> Result<Severity, String> {
    s.parse()
}

fn resolve(command: Command, opts: Opts) -> Result<CliConfig, String> {
    if opts.viewpoint.is_some() && command != Command::Export {
        return Err("--viewpoint is only valid with export".into());
    }
    let format = match (command, opts.format) {
        (Command::Export, None) => Format::Json,
        (_, None) => Format::Text,
        (_, Some(f)) => f,
    };
    let allowed: &[Format] = match command {
        Command::Check | Command::Report => &[Format::Text],
        Command::Analyze | Command::Trust => &[Format::Text, Format::Json],
        Command::Export => &[Format::Json, Format::Dot],
    };
    if !allowed.contains(&format) {
        let name = format.to_possible_value().map(|v| v.get_name().to_string());
        return Err(format!(
            "--format {} is not supported by this command",
            name.unwrap_or_default()
        ));
    }
    let trust = TrustParams::new(opts.trust_initial, opts.trust_alpha, opts.trust_beta)
        .map_err(|e| format!("--trust-{}: {e}", e.name))?;
    Ok(CliConfig {
        input_path: opts.input,
        command,
        format,
        viewpoint: opts.viewpoint,
        quorum: opts.quorum as usize,
        trust,
        fail_on: opts.fail_on,
    })
}

/// Parses `argv` (program name first) into a config. `Err` carries the
/// exit code and the text to print; help and version come back as exit 0.
pub fn parse_args(argv: &[String]) -> Result<CliConfig, (u8, String)> {
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                if e.exit_code() == 0 =>
            {
                (EXIT_OK, e.to_string())
            }
            _ => {
                // clap renders usage and tips after the reason
                let text = e.to_string();
                let line = text
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .unwrap_or("bad arguments");
                (EXIT_ERROR, format!("{line}\n"))
            }
        }
    })?;
    let (command, opts) = match cli.command {
        Sub::Check(o) => (Command::Check, o),
        Sub::Analyze(o) => (Command::Analyze, o),
        Sub::Trust(o) => (Command::Trust, o),
        Sub::Export(o) => (Command::Export, o),
        Sub::Report(o) => (Command::Report, o),
    };
    resolve(command, opts).map_err(|m| (EXIT_ERROR, format!("error: {m}\n")))
}

fn read_input<R: Read>(path: &PathBuf, stdin: &mut R) -> Result<String, String> {
    let display = path.display();
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        stdin
            .read_to_end(&mut buf)
            .map_err(|e| format!("error: cannot read stdin: {e}"))?;
        String::from_utf8(buf).map_err(|_| "error: stdin is not valid UTF-8".to_string())
    } else {
        let bytes = fs::read(path).map_err(|e| format!("error: cannot read {display}: {e}"))?;
        String::from_utf8(bytes).map_err(|_| format!("error: {display} is not valid UTF-8"))
    }
}

/// Runs one invocation without colors. See [`run_styled`].
pub fn run<R: Read, W: Write, E: Write>(
    argv: &[String],
    stdin: &mut R,
    stdout: &mut W,
    stderr: &mut E,
) -> u8 {
    run_styled(argv, stdin, stdout, stderr, false)
}

/// Runs one invocation. `color` enables ANSI styling of text reports; the
/// binary sets it when stdout is a terminal and [`NO_COLOR_ENV`] is unset.
pub fn run_styled<R: Read, W: Write, E: Write>(
    argv: &[String],
    stdin: &mut R,
    stdout: &mut W,
    stderr: &mut E,
    color: bool,
) -> u8 {
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err((code, text)) => {
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&config, stdin, color) {
        Ok((code, out)) => {
            if let Err(e) = stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
            {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_ERROR;
            }
            code
        }
        Err(lines) => {
            let _ = stderr.write_all(lines.as_bytes());
            EXIT_ERROR
        }
    }
}

fn load_graph<R: Read>(config: &CliConfig, stdin: &mut R) -> Result<PromiseGraph, String> {
    let src = read_input(&config.input_path, stdin).map_err(|m| m + "\n")?;
    load(&src).map_err(|d| {
        let name = config.input_path.display();
        d.entries()
            .into_iter()
            .map(|(span, kind, msg)| format!("{name}:{span}: {kind}: {msg}\n"))
            .collect()
    })
}

/// Produces the stdout text and exit code, or the stderr text on failure.
fn execute<R: Read>(
    config: &CliConfig,
    stdin: &mut R,
    color: bool,
) -> Result<(u8, String), String> {
    let graph = load_graph(config, stdin)?;
    let analysis = AnalysisConfig {
        quorum: config.quorum,
        trust: config.trust,
    };
    let report_format = match config.format {
        Format::Json => ReportFormat::Json,
        _ => ReportFormat::Text,
    };
    match config.command {
        Command::Check => Ok((EXIT_OK, String::new())),
        Command::Analyze | Command::Report => {
            let report = analyze_all(&graph, &analysis);
            let code = match report.max_severity() {
                Some(s) if s >= config.fail_on => EXIT_FINDINGS,
                _ => EXIT_OK,
            };
            Ok((code, render_report_styled(&report, report_format, color)))
        }
        Command::Trust => {
            let table = trust(&graph, &analysis.trust);
            Ok((EXIT_OK, render_trust(&table, report_format)))
        }
        Command::Export => {
            let graph = match &config.viewpoint {
                Some(who) => {
                    viewpoint(&graph, who)
                        .map_err(|e| format!("error: {e}\n"))?
                        .graph
                }
                None => graph,
            };
            let out = match config.format {
                Format::Dot => to_dot(&graph, &DotOptions::default()),
                _ => String::from_utf8(to_json(&graph)).expect("JSON output is UTF-8"),
            };
            Ok((EXIT_OK, out))
        }
    }
}
