//! `radix`: rings of integers of pure fields from the command line.
//!
//! Exit codes: 0 ok, 1 usage error, 2 reducible input, 3 factorization budget,
//! 4 internal consistency failure.

mod args;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use num_bigint::BigInt;
use rayon::prelude::*;

use args::{Cli, Command, Common, Format, IntRange, Single};
use radix_core::verify::certify_with_budget;
use radix_core::{ring_of_integers, Error, FieldSpec};
use render::{Row, ALREADY_MAXIMAL};

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Reducible { .. } => 2,
            Error::IncompleteFactorization { .. } => 3,
            Error::Internal(_) => 4,
            _ => 1,
        };
        let message = match &e {
            Error::Reducible { reason, .. } => format!("reducible input: {}", reason),
            Error::IncompleteFactorization { remaining, .. } => {
                format!(
                    "factorization of a incomplete: cofactor {} survived; pass --factor-a",
                    remaining
                )
            }
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        let message = e.to_string();
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            _ => Failure { code: 1, message },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // A closed downstream pipe (`radix ... | head`) ends output early without an error.
        let code = if e.kind() == std::io::ErrorKind::BrokenPipe {
            0
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn spec_of(single: &Single) -> Result<FieldSpec, Failure> {
    let hint = single.factor_a.as_ref().map(|h| h.0.as_slice());
    Ok(FieldSpec::with_hint(single.n, single.a.clone(), hint)?)
}

fn not_certified() -> Failure {
    Failure {
        code: 4,
        message: "certificate failed".into(),
    }
}

fn cmd_basis(single: &Single, common: &Common) -> Result<(), Failure> {
    let spec = spec_of(single)?;
    let result = ring_of_integers(&spec)?;
    let cert = certify_with_budget(&result, common.budget());
    let report = render::basis_report(&result, &cert);
    let mut out = std::io::stdout().lock();
    match common.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text => write!(
            out,
            "{}",
            render::basis_text(&report, &result, common.ascii)
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["label", "element"])?;
            for (l, x) in report.labels.iter().zip(&report.elements) {
                w.write_record([l, x])?;
            }
            w.flush()?;
        }
    }
    if cert.is_certified() {
        Ok(())
    } else {
        Err(not_certified())
    }
}

fn cmd_local(single: &Single, q: &BigInt, common: &Common) -> Result<(), Failure> {
    let spec = spec_of(single)?;
    if !radix_core::arith::is_prime(q) {
        return Err(Error::NotPrime(q.clone()).into());
    }
    let base = spec.base_disc().exponent(q);
    let (result, cert) = if base > 0 {
        let result = ring_of_integers(&spec)?;
        let cert = certify_with_budget(&result, common.budget());
        (Some(result), Some(cert))
    } else {
        (None, None)
    };
    let local = result.as_ref().and_then(|r| r.local(q));
    let view = match (&result, local, &cert) {
        (Some(r), Some(l), Some(c)) => Some(render::local_view(r, l, c)),
        _ => None,
    };
    let labeled =
        |v: Option<&Vec<(String, radix_core::FieldElement)>>| -> (Vec<String>, Vec<String>) {
            v.map(|b| b.iter().map(|(l, x)| (l.clone(), x.render(true))).unzip())
                .unwrap_or_default()
        };
    let (labels, elements) = labeled(local.map(|l| &l.labeled_basis));
    let (radical_labels, radical_elements) = labeled(local.map(|l| &l.radical_basis));
    let report = render::LocalReport {
        schema: render::SCHEMA,
        n: spec.n(),
        a: spec.input_a().to_string(),
        q: q.to_string(),
        ramified: base > 0,
        disc_drop: local.map(|l| base - l.disc.exponent(q)).unwrap_or(0),
        local: view,
        labels,
        elements,
        radical_labels,
        radical_elements,
    };
    let mut out = std::io::stdout().lock();
    match common.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text => write!(out, "{}", render::local_text(&report, local, common.ascii))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "q",
                "index_vq",
                "disc_vq",
                "disc_drop",
                "residue",
                "pz_ok",
                "note",
            ])?;
            match &report.local {
                Some(v) => w.write_record([
                    v.q.clone(),
                    v.index_vq.to_string(),
                    v.disc_vq.to_string(),
                    report.disc_drop.to_string(),
                    v.residue.clone(),
                    v.pz_ok.map(|b| b.to_string()).unwrap_or_default(),
                    String::new(),
                ])?,
                None => {
                    w.write_record([report.q.as_str(), "0", "0", "0", "", "", ALREADY_MAXIMAL])?
                }
            }
            w.flush()?;
        }
    }
    match cert {
        Some(c) if !c.is_certified() => Err(not_certified()),
        _ => Ok(()),
    }
}

fn tabulate_cell(n: i64, a: i64, budget: usize) -> Row {
    let spec = match FieldSpec::new(n as usize, a) {
        Ok(s) => s,
        Err(Error::Reducible { reason, .. }) => return Row::skipped(n, a, "skipped", reason),
        Err(e) => return Row::skipped(n, a, "error", e.to_string()),
    };
    match ring_of_integers(&spec) {
        Ok(result) => Row::ok(n, a, &result, &certify_with_budget(&result, budget)),
        Err(e) => Row::skipped(n, a, "error", e.to_string()),
    }
}

fn cmd_tabulate(n_range: &IntRange, a_range: &IntRange, common: &Common) -> Result<(), Failure> {
    if *n_range.0.start() < 0 && !n_range.0.is_empty() {
        return Err(Failure {
            code: 1,
            message: "degrees must be non-negative".into(),
        });
    }
    let cells: Vec<(i64, i64)> = n_range
        .0
        .clone()
        .flat_map(|n| a_range.0.clone().map(move |a| (n, a)))
        .collect();
    let budget = common.budget();
    let rows: Vec<Row> = cells
        .par_iter()
        .map(|&(n, a)| tabulate_cell(n, a, budget))
        .collect();
    let mut out = std::io::stdout().lock();
    match common.format {
        Format::Json => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row)?)?;
            }
        }
        Format::Text => {
            for row in &rows {
                writeln!(out, "{}", row.text())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run = match &cli.command {
        Command::Basis(single) => cmd_basis(single, &cli.common),
        Command::Local { field, q } => cmd_local(field, q, &cli.common),
        Command::Tabulate { n_range, a_range } => cmd_tabulate(n_range, a_range, &cli.common),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("radix: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
