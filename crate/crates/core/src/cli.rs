//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or argument
//! error. Reports go to the `out` stream, diagnostics to `err`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bijection::{decompose, render_diagram, DurfeeDecomposition};
use crate::error::Error;
use crate::groups::{aut_order, aut_order_bruteforce, shape_from_partition};
use crate::identity::{convergence_report, theorem_qseries_check, ConvergenceReport};
use crate::partitions::{enumerate_partitions, lemma1_sides, Partition};
use crate::qseries::verify_lemma2;
use crate::rational::ExactRational;
use crate::report::VerificationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cohen-lenstra", version, about = "Exact checks of the weighted p-group sum identity")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List partitions of n, optionally with every part at least T.
    Partitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        min_part: Option<usize>,
    },
    /// Print the conjugate of a partition.
    Conjugate {
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
    },
    /// Order of the automorphism group of the p-group with the given type.
    AutOrder {
        #[arg(long = "p")]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
        /// Cross-check against direct enumeration of homomorphisms.
        #[arg(long)]
        brute_force: bool,
    },
    /// Stacked Durfee square witness of a partition.
    Bijection {
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
    },
    /// Exact verification runs.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Partial sums of the group side against a partial Euler product.
    Sum {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "u")]
        u: usize,
        #[arg(long)]
        n_max: usize,
        /// Number of Euler factors J (default u + 60).
        #[arg(long)]
        product_terms: Option<usize>,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// a_m against sum of b_{i,j} over i + u j = m, for m = 0..=m-max.
    Lemma1 {
        #[arg(long = "u")]
        u: usize,
        #[arg(long)]
        m_max: usize,
    },
    /// Euler product tail against sum_n f_n(q) q^{nu}.
    Lemma2 {
        #[arg(long = "u")]
        u: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Full formal identity, both left-hand forms.
    Theorem {
        #[arg(long = "u")]
        u: usize,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug, Serialize)]
struct PartitionsOut {
    n: usize,
    min_part: Option<usize>,
    count: usize,
    partitions: Vec<Partition>,
}

#[derive(Debug, Serialize)]
struct ConjugateOut {
    partition: Partition,
    conjugate: Partition,
}

#[derive(Debug, Serialize)]
struct AutOrderOut {
    p: u64,
    partition: Partition,
    group_order: String,
    aut_order: String,
    brute_force: Option<String>,
    agree: Option<bool>,
}

#[derive(Debug, Serialize)]
struct BijectionOut {
    partition: Partition,
    size: usize,
    greatest_part: usize,
    witness: DurfeeDecomposition,
    diagram: Vec<String>,
}

/// Exit status for a verification report.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.equal {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

/// Exit status for a convergence report.
pub fn sum_exit_code(report: &ConvergenceReport) -> i32 {
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let fmt = cli.format;
    let text = match &cli.command {
        Command::Partitions { n, min_part } => {
            if *min_part == Some(0) {
                return Err(Error::InvalidPartition {
                    input: "--min-part 0".into(),
                    reason: "minimum part must be at least 1".into(),
                });
            }
            let t = min_part.unwrap_or(1);
            let list: Vec<Partition> = enumerate_partitions(*n)
                .into_iter()
                .filter(|p| p.parts().last().is_none_or(|&last| last >= t))
                .collect();
            let report = PartitionsOut { n: *n, min_part: *min_part, count: list.len(), partitions: list };
            match fmt {
                Format::Json => json_line(&report),
                Format::Csv => {
                    let mut s = String::from("index,partition\n");
                    for (i, p) in report.partitions.iter().enumerate() {
                        s.push_str(&format!("{},{}\n", i, csv_field(&p.to_string())));
                    }
                    s
                }
                Format::Human => {
                    let noun = if report.count == 1 { "partition" } else { "partitions" };
                    let mut s = match min_part {
                        Some(t) => format!("{} {noun} of {} with every part >= {t}\n", report.count, n),
                        None => format!("{} {noun} of {}\n", report.count, n),
                    };
                    for p in &report.partitions {
                        s.push_str(&format!("  {p}\n"));
                    }
                    s
                }
            }
        }
        Command::Conjugate { partition } => {
            let report = ConjugateOut { partition: partition.clone(), conjugate: partition.conjugate() };
            match fmt {
                Format::Json => json_line(&report),
                Format::Csv => format!(
                    "partition,conjugate\n{},{}\n",
                    csv_field(&report.partition.to_string()),
                    csv_field(&report.conjugate.to_string())
                ),
                Format::Human => format!("{}\n", report.conjugate),
            }
        }
        Command::AutOrder { p, partition, brute_force } => {
            let shape = shape_from_partition(partition, *p)?;
            let formula = aut_order(&shape);
            let oracle = if *brute_force {
                Some(aut_order_bruteforce(partition, *p)?)
            } else {
                None
            };
            let agree = oracle.as_ref().map(|o| *o == formula);
            let report = AutOrderOut {
                p: *p,
                partition: partition.clone(),
                group_order: shape.order().to_string(),
                aut_order: formula.to_string(),
                brute_force: oracle.map(|o| o.to_string()),
                agree,
            };
            let body = match fmt {
                Format::Json => json_line(&report),
                Format::Csv => format!(
                    "p,partition,group_order,aut_order,brute_force\n{},{},{},{},{}\n",
                    report.p,
                    csv_field(&report.partition.to_string()),
                    report.group_order,
                    report.aut_order,
                    report.brute_force.clone().unwrap_or_default()
                ),
                Format::Human => {
                    let mut s = format!("{}\n", report.aut_order);
                    if let Some(bf) = &report.brute_force {
                        let verdict = if agree == Some(true) { "agrees" } else { "DISAGREES" };
                        s.push_str(&format!("brute force: {bf} ({verdict})\n"));
                    }
                    s
                }
            };
            out.write_all(body.as_bytes()).map_err(io_err)?;
            if agree == Some(false) {
                let _ = writeln!(err, "formula and brute-force counts differ");
                return Ok(EXIT_MISMATCH);
            }
            return Ok(EXIT_OK);
        }
        Command::Bijection { partition } => {
            let witness = decompose(partition);
            let diagram = render_diagram(&witness);
            let report = BijectionOut {
                partition: partition.clone(),
                size: partition.size(),
                greatest_part: partition.greatest_part(),
                diagram: diagram.lines().map(str::to_string).collect(),
                witness,
            };
            match fmt {
                Format::Json => json_line(&report),
                Format::Csv => {
                    let mut s = String::from("band,square,box\n");
                    for (i, (m, b)) in report.witness.mu.parts().iter().zip(&report.witness.boxes).enumerate() {
                        s.push_str(&format!("{},{},{}\n", i + 1, m, csv_field(&b.to_string())));
                    }
                    s
                }
                Format::Human => {
                    let w = &report.witness;
                    format!(
                        "{diagram}size {} = squares {} + boxes {}\n{}\n",
                        report.size,
                        w.square_cells(),
                        w.box_cells(),
                        serde_json::to_string(w).expect("witness serializes")
                    )
                }
            }
        }
        Command::Verify { check } => {
            let (name, report) = match check {
                Check::Lemma1 { u, m_max } => {
                    let (lhs, rhs): (Vec<_>, Vec<_>) = (0..=*m_max)
                        .map(|m| {
                            let (a, b) = lemma1_sides(m, *u);
                            (ExactRational::from(a), ExactRational::from(b))
                        })
                        .unzip();
                    ("lemma1", VerificationReport::compare(*u, *m_max, lhs, rhs))
                }
                Check::Lemma2 { u, degree } => ("lemma2", verify_lemma2(*u, *degree)),
                Check::Theorem { u, degree } => ("theorem", theorem_qseries_check(*u, *degree)),
            };
            let body = render_report(name, &report, fmt);
            out.write_all(body.as_bytes()).map_err(io_err)?;
            if let Some(k) = report.first_mismatch {
                let _ = writeln!(err, "{name}: mismatch at degree {k}");
            }
            return Ok(exit_code(&report));
        }
        Command::Sum { p, u, n_max, product_terms, digits } => {
            let terms = product_terms.unwrap_or(u + 60);
            let report = convergence_report(*p, *u, *n_max, terms, *digits)?;
            let body = match fmt {
                Format::Json => json_line(&report),
                Format::Csv => report.to_csv(),
                Format::Human => render_convergence(&report),
            };
            out.write_all(body.as_bytes()).map_err(io_err)?;
            return Ok(sum_exit_code(&report));
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// Text for a verification report in the requested format.
pub fn render_report(name: &str, report: &VerificationReport, fmt: Format) -> String {
    match fmt {
        Format::Json => json_line(report),
        Format::Csv => report.to_csv(),
        Format::Human => {
            let mut s = format!("{name} u={} degree={}: ", report.u, report.degree);
            match report.first_mismatch {
                None => s.push_str("equal\n"),
                Some(k) => s.push_str(&format!(
                    "MISMATCH at degree {k}: lhs {} rhs {}\n",
                    report.lhs.get(k).map(ToString::to_string).unwrap_or_else(|| "-".into()),
                    report.rhs.get(k).map(ToString::to_string).unwrap_or_else(|| "-".into()),
                )),
            }
            let shown: Vec<String> = report.lhs.iter().map(ToString::to_string).collect();
            s.push_str(&format!("lhs: {}\n", shown.join(" ")));
            let shown: Vec<String> = report.rhs.iter().map(ToString::to_string).collect();
            s.push_str(&format!("rhs: {}\n", shown.join(" ")));
            s
        }
    }
}

fn render_convergence(r: &ConvergenceReport) -> String {
    let mut s = format!("p={} u={} (decimals truncated to {} digits)\n", r.p, r.u, r.digits);
    s.push_str("n_max  partial sum\n");
    for row in &r.rows {
        s.push_str(&format!("{:>5}  {}  ({})\n", row.n_max, row.decimal, row.partial_sum));
    }
    s.push_str(&format!("product J={}: {}\n", r.product_terms, r.product_decimal));
    s.push_str(&format!("gap: {}\n", r.gap_decimal));
    s.push_str(&format!(
        "monotone: {}; below product at J={}: {}\n",
        r.monotone, r.reference_terms, r.below_reference
    ));
    s
}
