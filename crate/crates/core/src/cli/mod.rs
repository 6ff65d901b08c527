//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven in-process.

mod slice;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub use slice::{export_slice, Slice};

use crate::combinatorics::{catalog, HornTriple, TripleCatalog};
use crate::error::Error;
use crate::horn_body::{
    membership, membership_invertible, on_boundary, realize, sample_body, BodySpec, RealizeConfig,
};
use crate::report::{InequalityRecord, MembershipReport};
use crate::spectra::{
    product_inequality_check, singular_values, ComplexMatrix, RngSeed, SingularSpectrum,
};
use crate::svf::{discretize, vn_membership, StepFunction};

/// Environment variable naming the directory for cached catalogs.
pub const CATALOG_DIR_ENV: &str = "MULTHORN_CATALOG_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Fail = 1,
    Usage = 2,
    Numerical = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "multhorn",
    version,
    about = "Singular values of products: Horn triples, multiplicative Horn bodies, step-function checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Artifact format; defaults to csv for export-slice and json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the Horn triples of size n.
    Triples {
        #[arg(long)]
        n: usize,
        /// Keep only triples of this rank.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Check every inequality on s(A), s(B), s(AB).
    CheckProduct {
        /// Matrix A: rows of reals or of [re, im] pairs.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Decide whether nu lies in the body of (lam, mu).
    BodyMember {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long)]
        nu: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Use the determinant-equality test for positive spectra.
        #[arg(long)]
        invertible: bool,
    },
    /// Draw Haar samples from the body.
    BodySample {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find a unitary U with s(diag(lam) U diag(mu)) = nu.
    Realize {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long)]
        nu: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
    },
    /// Check the step-function inequality system up to size max-n.
    VnMember {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Geometric means of a step function over n equal cells.
    Discretize {
        #[arg(long)]
        s: String,
        #[arg(long)]
        n: usize,
    },
    /// Samples and boundary of a body as plot data.
    ExportSlice {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long, default_value_t = 2000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct BodyArgs {
    /// Singular values of the left factor, JSON array or @file.
    #[arg(long)]
    lam: String,
    /// Singular values of the right factor, JSON array or @file.
    #[arg(long)]
    mu: String,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

struct Artifact {
    text: String,
    passed: bool,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() {
                ExitStatus::Usage
            } else {
                ExitStatus::Success
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return status;
        }
    };
    let format = cli.format.unwrap_or(match cli.command {
        Command::ExportSlice { .. } => Format::Csv,
        _ => Format::Json,
    });
    match execute(&cli.command, format, stderr) {
        Ok(artifact) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &artifact.text),
                None => stdout.write_all(artifact.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return ExitStatus::Usage;
            }
            if artifact.passed {
                ExitStatus::Success
            } else {
                ExitStatus::Fail
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            ExitStatus::Usage
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_numerical() {
                ExitStatus::Numerical
            } else {
                ExitStatus::Usage
            }
        }
    }
}

fn execute(cmd: &Command, format: Format, stderr: &mut dyn Write) -> Result<Artifact, CliError> {
    match cmd {
        Command::Triples { n, r } => {
            let cat = load_catalog(*n)?;
            let kept: Vec<&HornTriple> = cat
                .iter()
                .filter(|t| r.is_none_or(|r| t.r() == r))
                .collect();
            let text = match format {
                Format::Json => {
                    let mut file = cat.to_file_format();
                    file.triples.retain(|e| r.is_none_or(|r| e.r == r));
                    json(&file)
                }
                Format::Csv => {
                    let mut s = String::from("r,I,J,K\n");
                    for t in kept {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            t.r(),
                            joined(t.i().elements()),
                            joined(t.j().elements()),
                            joined(t.k().elements())
                        ));
                    }
                    s
                }
            };
            Ok(Artifact { text, passed: true })
        }
        Command::CheckProduct { a, b, tol } => {
            let tol = positive_tol(*tol)?;
            let a = parse_matrix(a, "a")?;
            let b = parse_matrix(b, "b")?;
            let cat = load_catalog(a.dim())?;
            let report = product_inequality_check(&a, &b, &cat, tol)?;
            #[derive(Serialize)]
            struct Out<'a> {
                s_a: SingularSpectrum,
                s_b: SingularSpectrum,
                violated: Vec<&'a InequalityRecord>,
                report: &'a MembershipReport,
            }
            describe_failure(&report, stderr);
            let text = match format {
                Format::Json => json(&Out {
                    s_a: singular_values(&a)?,
                    s_b: singular_values(&b)?,
                    violated: report.violators().collect(),
                    report: &report,
                }),
                Format::Csv => report_csv(&report),
            };
            Ok(Artifact {
                text,
                passed: report.passed(),
            })
        }
        Command::BodyMember {
            body,
            nu,
            tol,
            invertible,
        } => {
            let tol = positive_tol(*tol)?;
            let spec = body_spec(body)?;
            let nu: SingularSpectrum = parse_input(nu, "nu")?;
            let report = if *invertible {
                membership_invertible(&spec, &nu, tol)?
            } else {
                membership(&spec, &nu, tol)?
            };
            describe_failure(&report, stderr);
            #[derive(Serialize)]
            struct Out<'a> {
                member: bool,
                boundary: bool,
                violated: Vec<&'a InequalityRecord>,
                report: &'a MembershipReport,
            }
            let text = match format {
                Format::Json => json(&Out {
                    member: report.passed(),
                    boundary: report.passed() && on_boundary(&report, &nu, 1e-9),
                    violated: report.violators().collect(),
                    report: &report,
                }),
                Format::Csv => report_csv(&report),
            };
            Ok(Artifact {
                text,
                passed: report.passed(),
            })
        }
        Command::BodySample { body, count, seed } => {
            let spec = body_spec(body)?;
            let seed = RngSeed(*seed);
            let samples = sample_body(&spec, *count, seed)?;
            let text = match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        seed: RngSeed,
                        lam: &'a SingularSpectrum,
                        mu: &'a SingularSpectrum,
                        samples: Vec<SingularSpectrum>,
                    }
                    json(&Out {
                        seed,
                        lam: spec.lam(),
                        mu: spec.mu(),
                        samples,
                    })
                }
                Format::Csv => {
                    let mut s = format!("# seed={}\n", seed.0);
                    s.push_str(
                        &(1..=spec.n())
                            .map(|i| format!("nu{i}"))
                            .collect::<Vec<_>>()
                            .join(","),
                    );
                    s.push('\n');
                    for x in &samples {
                        s.push_str(
                            &x.values()
                                .iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                        );
                        s.push('\n');
                    }
                    s
                }
            };
            Ok(Artifact { text, passed: true })
        }
        Command::Realize {
            body,
            nu,
            seed,
            tol,
            budget,
            restarts,
        } => {
            let tol = positive_tol(*tol)?;
            if *budget == 0 || *restarts == 0 {
                return Err(CliError::Usage(
                    "budget and restarts must be positive".into(),
                ));
            }
            let spec = body_spec(body)?;
            let nu: SingularSpectrum = parse_input(nu, "nu")?;
            let cfg = RealizeConfig {
                tol,
                budget: *budget,
                restarts: *restarts,
                seed: RngSeed(*seed),
                ..RealizeConfig::default()
            };
            match realize(&spec, &nu, &cfg) {
                Ok(res) => {
                    if !res.converged {
                        let _ = writeln!(
                            stderr,
                            "not converged: residual {:e} above {:e}",
                            res.residual, res.threshold
                        );
                    }
                    Ok(Artifact {
                        text: json(&res),
                        passed: res.converged,
                    })
                }
                Err(Error::NotMember(report)) => {
                    describe_failure(&report, stderr);
                    #[derive(Serialize)]
                    struct Out<'a> {
                        seed: RngSeed,
                        member: bool,
                        violated: Vec<&'a InequalityRecord>,
                        report: &'a MembershipReport,
                    }
                    let text = json(&Out {
                        seed: cfg.seed,
                        member: false,
                        violated: report.violators().collect(),
                        report: &report,
                    });
                    Ok(Artifact {
                        text,
                        passed: false,
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VnMember {
            f,
            g,
            h,
            max_n,
            tol,
        } => {
            let tol = positive_tol(*tol)?;
            let f: StepFunction = parse_input(f, "f")?;
            let g: StepFunction = parse_input(g, "g")?;
            let h: StepFunction = parse_input(h, "h")?;
            let report = vn_membership(&f, &g, &h, *max_n, tol)?;
            describe_failure(&report, stderr);
            let text = match format {
                Format::Json => json(&report),
                Format::Csv => report_csv(&report),
            };
            Ok(Artifact {
                text,
                passed: report.passed(),
            })
        }
        Command::Discretize { s, n } => {
            let s: StepFunction = parse_input(s, "s")?;
            let v = discretize(&s, *n)?;
            let text = match format {
                Format::Json => json(&v),
                Format::Csv => {
                    let header: Vec<String> = (1..=*n).map(|i| format!("s{i}")).collect();
                    let row: Vec<String> = v.values().iter().map(|x| x.to_string()).collect();
                    format!("{}\n{}\n", header.join(","), row.join(","))
                }
            };
            Ok(Artifact { text, passed: true })
        }
        Command::ExportSlice { body, count, seed } => {
            let spec = body_spec(body)?;
            let slice = export_slice(&spec, *count, RngSeed(*seed))?;
            if let Some(msg) = &slice.notice {
                let _ = writeln!(stderr, "notice: {msg}");
            }
            let text = match format {
                Format::Json => json(&slice),
                Format::Csv => slice.to_csv(),
            };
            Ok(Artifact { text, passed: true })
        }
    }
}

fn load_catalog(n: usize) -> Result<Arc<TripleCatalog>, Error> {
    match std::env::var_os(CATALOG_DIR_ENV) {
        Some(dir) if !dir.is_empty() => Ok(Arc::new(TripleCatalog::load_or_enumerate(
            n,
            Some(Path::new(&dir)),
        )?)),
        _ => catalog(n),
    }
}

fn body_spec(args: &BodyArgs) -> Result<BodySpec, CliError> {
    let lam: SingularSpectrum = parse_input(&args.lam, "lam")?;
    let mu: SingularSpectrum = parse_input(&args.mu, "mu")?;
    if lam.len() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: lam.len(),
            found: mu.len(),
        }
        .into());
    }
    let cat = load_catalog(lam.len())?;
    Ok(BodySpec::with_catalog(lam, mu, cat)?)
}

/// Inline JSON, or `@path` to read it from a file.
fn read_input(raw: &str, name: &str) -> Result<String, CliError> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("--{name}: cannot read {path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

fn parse_input<T: DeserializeOwned>(raw: &str, name: &str) -> Result<T, CliError> {
    let text = read_input(raw, name)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn parse_matrix(raw: &str, name: &str) -> Result<ComplexMatrix, CliError> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum MatrixInput {
        Real(Vec<Vec<f64>>),
        Complex(ComplexMatrix),
    }
    match parse_input::<MatrixInput>(raw, name)? {
        MatrixInput::Real(rows) => ComplexMatrix::from_real_rows(&rows)
            .map_err(|e| CliError::Usage(format!("--{name}: {e}"))),
        MatrixInput::Complex(m) => Ok(m),
    }
}

fn positive_tol(tol: f64) -> Result<f64, CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "--tol must be positive, got {tol}"
        )))
    }
}

fn describe_failure(report: &MembershipReport, stderr: &mut dyn Write) {
    if let Some(worst) = report
        .violators()
        .min_by(|a, b| a.slack.total_cmp(&b.slack))
    {
        let t = &worst.triple;
        let _ = writeln!(
            stderr,
            "violated inequalities: {}; worst: {:?} for I={:?} J={:?} K={:?}, slack {}",
            report.violations.len(),
            worst.kind,
            t.i().elements(),
            t.j().elements(),
            t.k().elements(),
            worst.slack
        );
    }
}

fn report_csv(report: &MembershipReport) -> String {
    let mut s = String::from("n,r,I,J,K,kind,lhs,rhs,slack,holds\n");
    for rec in &report.records {
        let t = &rec.triple;
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            t.n(),
            t.r(),
            joined(t.i().elements()),
            joined(t.j().elements()),
            joined(t.k().elements()),
            serde_json::to_value(rec.kind)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            rec.lhs,
            rec.rhs,
            rec.slack,
            rec.holds(report.tol)
        ));
    }
    s
}

fn joined(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}
