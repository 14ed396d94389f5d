//! Subcommand implementations.

mod algebra;
mod engine;
mod gwops;
mod lattice;

use gwenum_core::gw::FormatOptions;
use gwenum_core::picard::DivisorClass;
use gwenum_core::{BaseField, SquareClass};

use crate::args::{Cli, Command};
use crate::data::SeedData;
use crate::error::{CliError, CliResult};
use crate::report::Report;

/// Shared state of one invocation.
pub(crate) struct Ctx {
    pub fmt: FormatOptions,
    pub seed: SeedData,
}

pub(crate) fn dispatch(cli: &Cli, echo: Vec<String>) -> CliResult<Report> {
    let ctx = Ctx {
        fmt: FormatOptions {
            extract_h: !cli.global.no_h,
            raw: cli.global.raw,
        },
        seed: SeedData::locate(cli.global.data_dir.as_deref()),
    };
    let mut report = Report::new(echo);
    match &cli.command {
        Command::Binom(a) => algebra::binom(&ctx, a, &mut report)?,
        Command::Tbinom(a) => algebra::tbinom(&ctx, a, &mut report)?,
        Command::Pascal(a) => algebra::pascal(&ctx, a, &mut report)?,
        Command::VerifyIdentities(a) => algebra::verify_identities(a, &mut report)?,
        Command::Lattice(a) => lattice::lattice(a, &mut report)?,
        Command::Wallcross(a) => engine::wallcross(&ctx, a, &mut report)?,
        Command::Table(a) => engine::table(&ctx, a, &mut report)?,
        Command::DehnCheck(a) => engine::dehn_check(&ctx, a, &mut report)?,
        Command::VerifySurgery(a) => engine::verify_surgery(a, &mut report)?,
        Command::Gw(a) => gwops::gw(&ctx, a, &mut report)?,
    }
    Ok(report)
}

/// `fq:<q>`, `q` or `r`.
pub(crate) fn parse_base(s: &str) -> CliResult<BaseField> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "q" | "rationals" => Ok(BaseField::Rationals),
        "r" | "real" | "reals" => Ok(BaseField::RealClosed),
        _ => {
            let q = t
                .strip_prefix("fq:")
                .or_else(|| t.strip_prefix("f"))
                .and_then(|q| q.parse::<u64>().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown base field {s:?}; use fq:<q>, q or r")))?;
            Ok(BaseField::finite(q)?)
        }
    }
}

pub(crate) fn parse_class(base: BaseField, s: &str) -> CliResult<SquareClass> {
    Ok(base.parse_class(s)?)
}

pub(crate) fn parse_divisor(s: &str) -> CliResult<DivisorClass> {
    Ok(DivisorClass::parse(s)?)
}

/// Twist classes, with a field-dependent default.
pub(crate) fn parse_twists(base: BaseField, given: &[String], default: &[&str]) -> CliResult<Vec<SquareClass>> {
    let src: Vec<String> = if given.is_empty() {
        default.iter().map(|s| s.to_string()).collect()
    } else {
        given.to_vec()
    };
    src.iter().map(|s| parse_class(base, s)).collect()
}
