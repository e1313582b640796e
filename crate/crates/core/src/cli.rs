//! Command-line front end. [`run`] returns the process exit code:
//! 0 consistent, 1 usage/parse/I-O error, 2 contradiction (or a failed
//! `dkp-check`), 3 negative-norm rejection, 4 no kinematic term.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, ratio, Rational};
use crate::fock::{gram_matrix, normal_order, GramResult, NormalForm, OperatorWord, RelationTable};
use crate::reduction::{
    dkp_minimal_polynomial_check, duffin_kemmer_construct, verify_dkp_algebra, DkpReport, Metric,
    MinimalPolynomialCheck,
};
use crate::report::{build_report, render_text};
use crate::theory::load_theory;

/// Seed for the pseudo-random momenta of the minimal-polynomial probe.
pub const DKP_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "spinstat", version, about = "Exact spin-statistics analysis of first-order field theories")]
struct Cli {
    /// Also write a JSON report to this path (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a theory file and print the verdict.
    Analyze { spec: PathBuf },
    /// Verify the Duffin-Kemmer β-matrix algebra.
    DkpCheck {
        /// Also evaluate each trilinear relation in its commonly printed form.
        #[arg(long = "paper-relations")]
        printed_relations: bool,
        /// Metric signature, e.g. `+---`.
        #[arg(long, default_value = "+---", allow_hyphen_values = true)]
        metric: String,
    },
    /// Normal-order a word against a relation table.
    Fock {
        table: PathBuf,
        /// Whitespace-separated generator symbols.
        #[arg(long)]
        word: String,
        /// File with one creator-only word per line; prints their Gram matrix.
        #[arg(long, value_name = "FILE")]
        gram: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn emit_json<T: Serialize>(target: &Option<PathBuf>, value: &T, out: &mut dyn Write) -> Result<()> {
    let Some(path) = target else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    if path.as_os_str() == "-" {
        let _ = out.write_all(text.as_bytes());
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Analyze { spec } => cmd_analyze(spec, &cli.json, out),
        Command::DkpCheck { printed_relations, metric } => {
            let metric: Metric = metric.parse()?;
            cmd_dkp_check(metric, *printed_relations, &cli.json, out)
        }
        Command::Fock { table, word, gram } => cmd_fock(table, word, gram.as_deref(), &cli.json, out),
    }
}

pub fn cmd_analyze(spec: &Path, json: &Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let theory = load_theory(spec)?;
    let report = build_report(&theory)?;
    if json.as_ref().is_none_or(|p| p.as_os_str() != "-") {
        let _ = write!(out, "{}", render_text(&report));
    }
    emit_json(json, &report, out)?;
    Ok(report.status.exit_code())
}

#[derive(Serialize)]
struct DkpOutput {
    report: DkpReport,
    minimal_polynomial: Vec<MinimalPolynomialCheck>,
}

/// Fixed probes followed by five seeded pseudo-random rational momenta.
pub fn dkp_probe_momenta() -> Vec<[Rational; 4]> {
    let mut ks = vec![[int(1), int(0), int(0), int(0)], [int(0), int(1), int(0), int(0)], [int(2), int(1), int(1), int(1)]];
    let mut rng = ChaCha8Rng::seed_from_u64(DKP_SEED);
    for _ in 0..5 {
        ks.push(std::array::from_fn(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))));
    }
    ks
}

pub fn cmd_dkp_check(metric: Metric, printed_relations: bool, json: &Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let betas = duffin_kemmer_construct(int(1))?.with_metric(metric);
    let report = verify_dkp_algebra(&betas);
    let minimal: Vec<MinimalPolynomialCheck> =
        dkp_probe_momenta().iter().map(|k| dkp_minimal_polynomial_check(&betas, k)).collect();
    let text_out = json.as_ref().is_none_or(|p| p.as_os_str() != "-");
    if text_out {
        let _ = writeln!(out, "metric {metric}");
        let _ = writeln!(out, "standard relation: {}/{} triples pass", report.standard_passed(), report.standard.len());
        for t in report.standard.iter().filter(|t| !t.holds) {
            let _ = writeln!(out, "  fails at (mu, nu, lambda) = ({}, {}, {})", t.mu, t.nu, t.lambda);
        }
        for m in &minimal {
            let _ = writeln!(
                out,
                "minimal polynomial k = ({}), k.k = {}: {}",
                m.k.join(", "),
                m.k_squared,
                if m.holds { "holds" } else { "fails" }
            );
        }
        if printed_relations {
            let _ = writeln!(out, "printed relations:");
            for r in &report.printed {
                let idx: Vec<String> = r.indices.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(
                    out,
                    "  {} at ({}): {}",
                    r.relation,
                    idx.join(", "),
                    if r.holds { "true" } else { "false (mismatch with printed form)" }
                );
            }
        }
        let _ = writeln!(out, "status {}", if report.standard_holds() { "PASS" } else { "FAIL" });
    }
    let pass = report.standard_holds();
    emit_json(json, &DkpOutput { report, minimal_polynomial: minimal }, out)?;
    Ok(if pass { 0 } else { 2 })
}

#[derive(Serialize)]
struct FockOutput {
    word: String,
    normal_form: NormalForm,
    vacuum_expectation: String,
    gram: Option<GramResult>,
}

pub fn cmd_fock(
    table: &Path,
    word: &str,
    gram: Option<&Path>,
    json: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let table = RelationTable::parse(&read(table)?)?;
    let w = OperatorWord::parse(word);
    let normal = normal_order(&w, &table)?;
    let vev = normal.constant();
    let gram = match gram {
        Some(p) => {
            let states: Vec<OperatorWord> = read(p)?
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(OperatorWord::parse)
                .collect();
            Some(gram_matrix(&states, &table)?)
        }
        None => None,
    };
    if json.as_ref().is_none_or(|p| p.as_os_str() != "-") {
        let _ = writeln!(out, "word: {word}");
        let _ = writeln!(out, "normal form: {normal}");
        let _ = writeln!(out, "vacuum expectation: {}", vev.compact());
        if let Some(g) = &gram {
            for r in 0..g.matrix.rows() {
                let row: Vec<String> = g.matrix.row(r).iter().map(|x| x.compact()).collect();
                let _ = writeln!(out, "gram row {r}: [{}]", row.join(", "));
            }
            let s = g.signature;
            let _ = writeln!(out, "signature: ({}, {}, {})", s.positives, s.negatives, s.zeros);
        }
    }
    emit_json(
        json,
        &FockOutput { word: word.to_string(), normal_form: normal, vacuum_expectation: vev.compact(), gram },
        out,
    )?;
    Ok(0)
}
