//! Command-line arguments.

use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Parser, Debug)]
#[command(
    name = "radix",
    version,
    about = "Rings of integers of pure fields Q(a^(1/n))"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest degree for which the round-2 oracle runs.
    #[arg(long, env = "RADIX_ORACLE_BUDGET", global = true)]
    pub oracle_budget: Option<usize>,
    /// Skip the round-2 oracle.
    #[arg(long, global = true)]
    pub no_oracle: bool,
    /// Render alpha as `a` instead of `α` in text output.
    #[arg(long, global = true)]
    pub ascii: bool,
}

impl Common {
    pub fn budget(&self) -> usize {
        if self.no_oracle {
            0
        } else {
            self.oracle_budget
                .unwrap_or(radix_core::verify::DEFAULT_ORACLE_BUDGET)
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral basis, discriminant, local summary and certificate.
    Basis(Single),
    /// The q-maximal order at one prime.
    Local {
        #[command(flatten)]
        field: Single,
        #[arg(long)]
        q: BigInt,
    },
    /// One row per (n, a) over finite ranges.
    Tabulate {
        /// Inclusive degree range `A..B`.
        #[arg(long, allow_hyphen_values = true)]
        n_range: IntRange,
        /// Inclusive radicand range `A..B`.
        #[arg(long, allow_hyphen_values = true)]
        a_range: IntRange,
    },
}

#[derive(Args, Debug)]
pub struct Single {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub a: BigInt,
    /// Known factors of `|a|` as `q:e,q:e`.
    #[arg(long)]
    pub factor_a: Option<FactorHint>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// An inclusive integer range `A..B`; empty when `A > B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange(pub RangeInclusive<i64>);

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got {:?}", s))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("{:?}: {}", t, e))
        };
        Ok(IntRange(parse(lo)?..=parse(hi)?))
    }
}

/// Factor hint list `q:e,q:e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorHint(pub Vec<(BigInt, u32)>);

impl FromStr for FactorHint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (q, e) = item
                .split_once(':')
                .ok_or_else(|| format!("expected q:e, got {:?}", item))?;
            let q = q
                .trim()
                .parse::<BigInt>()
                .map_err(|e| format!("{:?}: {}", q, e))?;
            let e = e
                .trim()
                .parse::<u32>()
                .map_err(|err| format!("{:?}: {}", e, err))?;
            out.push((q, e));
        }
        Ok(FactorHint(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_hints() {
        assert_eq!("-3..5".parse::<IntRange>().unwrap().0, -3..=5);
        assert!("3".parse::<IntRange>().is_err());
        assert_eq!("5..2".parse::<IntRange>().unwrap().0.count(), 0);
        let h: FactorHint = "2:3, 1000003:1".parse().unwrap();
        assert_eq!(h.0, vec![(BigInt::from(2), 3), (BigInt::from(1000003), 1)]);
        assert!("2-3".parse::<FactorHint>().is_err());
    }
}
