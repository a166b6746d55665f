//! Command-line front end: parse input documents describing a quantum GWA and
//! an automorphism, run the analysis pipeline, and print JSON or text reports.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qgwa::pipeline::run_analysis;
use qgwa::report::{emit_report, error_kind, AnalysisReport, ErrorKind, ReportFormat};

#[derive(Parser)]
#[command(name = "qgwa", version, about = "Exact analysis of quantum generalized Weyl algebras and their fixed rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one or more input documents.
    Analyze {
        /// Input files describing the algebra and automorphism.
        #[arg(required = true)]
        files: Vec<std::path::PathBuf>,
        /// Verify the closed-form fixed ring against brute-force invariants.
        #[arg(long)]
        verify: bool,
        /// Probe what the invariants look like when gcd(ord mu, ord gamma) > 1.
        #[arg(long)]
        probe: bool,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest |grade| scanned by verification and probing.
        #[arg(long)]
        grade_bound: Option<i64>,
        /// Largest h-degree scanned by verification and probing.
        #[arg(long)]
        h_bound: Option<i64>,
        /// Exponent bound for congruence searches that cannot be exhaustive.
        #[arg(long)]
        k_bound: Option<i64>,
        /// Number of worker threads when analyzing several files.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn analyze_file(
    path: &std::path::Path,
    flags: &FlagOverrides,
) -> (String, i32) {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return (format!("error: cannot read {}: {e}\n", path.display()), 3),
    };
    let mut request = match qgwa::parser::parse_request(&text) {
        Ok(r) => r,
        Err(e) => {
            // surface parse failures in the same report shape as other errors
            let mut report = AnalysisReport::empty();
            report.record_error("parse", &e);
            let code = match error_kind(&e) {
                ErrorKind::Parse => 3,
                _ => 2,
            };
            return (emit_report(&report, flags.format), code);
        }
    };
    if flags.verify {
        request.options.verify = true;
    }
    if flags.probe {
        request.options.probe = true;
    }
    if let Some(v) = flags.grade_bound {
        request.options.grade_bound = v;
    }
    if let Some(v) = flags.h_bound {
        request.options.h_degree_bound = v;
    }
    if let Some(v) = flags.k_bound {
        request.options.k_bound = v;
    }
    let report = run_analysis(&request);
    (emit_report(&report, flags.format), report.exit_code())
}

struct FlagOverrides {
    verify: bool,
    probe: bool,
    format: ReportFormat,
    grade_bound: Option<i64>,
    h_bound: Option<i64>,
    k_bound: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Analyze {
        files,
        verify,
        probe,
        format,
        grade_bound,
        h_bound,
        k_bound,
        jobs,
    } = cli.command;
    let flags = FlagOverrides {
        verify,
        probe,
        format: match format {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        },
        grade_bound,
        h_bound,
        k_bound,
    };
    let jobs = jobs.max(1).min(files.len().max(1));
    let mut outputs: Vec<(String, i32)> = Vec::with_capacity(files.len());
    if jobs <= 1 || files.len() <= 1 {
        for path in &files {
            outputs.push(analyze_file(path, &flags));
        }
    } else {
        // static round-robin assignment keeps the output order deterministic
        let results: Vec<(usize, String, i32)> = std::thread::scope(|scope| {
            let flags = &flags;
            let files = &files;
            let mut handles = Vec::new();
            for worker in 0..jobs {
                handles.push(scope.spawn(move || {
                    let mut local = Vec::new();
                    let mut idx = worker;
                    while idx < files.len() {
                        let (out, code) = analyze_file(&files[idx], flags);
                        local.push((idx, out, code));
                        idx += jobs;
                    }
                    local
                }));
            }
            let mut all = Vec::new();
            for h in handles {
                all.extend(h.join().expect("analysis worker panicked"));
            }
            all
        });
        let mut results = results;
        results.sort_by_key(|(i, _, _)| *i);
        outputs.extend(results.into_iter().map(|(_, out, code)| (out, code)));
    }
    let mut exit = 0;
    for (i, (out, code)) in outputs.iter().enumerate() {
        if i > 0 && flags.format == ReportFormat::Text {
            println!("---");
        }
        print!("{out}");
        exit = exit.max(*code);
    }
    ExitCode::from(u8::try_from(exit).unwrap_or(1))
}
