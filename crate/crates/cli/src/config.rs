//! Resolution of raw arguments into validated, serializable run configs.
//! Every artifact embeds the config it was produced from.

use std::path::PathBuf;

use commspec_core::basis::SequenceName;
use commspec_core::operators::{ModelSpec, SymbolU};
use commspec_core::spectral::{
    MULTIPLICITY_COMMUTATOR, MULTIPLICITY_E, MULTIPLICITY_FRAKQ, MULTIPLICITY_Q0, MULTIPLICITY_Y,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::args::{Cli, Command, FamiliesArgs, FitArgs, Format, OpName, OperatorArgs, SectorsArgs, Seq, SpectrumArgs, TheoremArgs};
use crate::parse::{parse_complex, parse_list, parse_sector, parse_symbol, parse_window, ParseError};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub threads: usize,
    pub format: &'static str,
    #[serde(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Params {
    Verify { seed: u64 },
    Families(FamiliesConfig),
    Assemble(OperatorConfig),
    Spectrum(SpectrumConfig),
    Fit(FitConfig),
    Theorem(TheoremConfig),
    Sectors(SectorsConfig),
}

#[derive(Debug, Clone, Serialize)]
pub struct FamiliesConfig {
    pub alpha: f64,
    pub count: u32,
    pub seq: SequenceName,
    pub a: Complex64,
    pub nu: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorSel {
    pub j: u32,
    pub n: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct OperatorConfig {
    pub alpha: f64,
    pub degree: u32,
    pub r0: u32,
    pub op: OpName,
    /// None for the projection, which is not a kernel model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sector: Option<SectorSel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorConfig>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitConfig {
    pub input: PathBuf,
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremConfig {
    pub alpha: f64,
    pub symbol: SymbolU,
    pub degrees: Vec<u32>,
    pub r0s: Vec<u32>,
    pub quad_points: usize,
    pub timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorsConfig {
    pub operator: OperatorConfig,
    pub sectors: u32,
    pub multiplicity: usize,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::new("domain", message, 2)
}

fn parse_err(what: &str, e: ParseError) -> CliError {
    CliError { kind: "parse".into(), message: format!("{what}: {}", e.message), position: Some(e.position), exit: 2 }
}

pub fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha.is_finite() && alpha > -1.0 {
        Ok(())
    } else {
        Err(usage(format!("alpha must exceed -1, got {alpha}")))
    }
}

pub fn check_degree(d: u32) -> Result<(), CliError> {
    if d >= 4 {
        Ok(())
    } else {
        Err(usage(format!("degree must be at least 4, got {d}")))
    }
}

pub fn check_r0(r0: u32) -> Result<(), CliError> {
    if r0 >= 2 {
        Ok(())
    } else {
        Err(usage(format!("r0 must be at least 2, got {r0}")))
    }
}

pub fn check_nu(nu: f64) -> Result<(), CliError> {
    if nu.is_finite() && nu >= 0.0 {
        Ok(())
    } else {
        Err(usage(format!("nu must be nonnegative, got {nu}")))
    }
}

fn check_sectors(n: u32) -> Result<(), CliError> {
    if n >= 1 {
        Ok(())
    } else {
        Err(usage("the number of sectors must be at least 1"))
    }
}

/// Ordered-spectrum multiplicity used to convert Schmidt-index windows.
pub fn multiplicity(op: OpName) -> usize {
    match op {
        OpName::E | OpName::Estar => MULTIPLICITY_E,
        OpName::Q0 | OpName::Q0star => MULTIPLICITY_Q0,
        OpName::Frakq => MULTIPLICITY_FRAKQ,
        OpName::Rnu | OpName::Y => MULTIPLICITY_Y,
        OpName::Commutator => MULTIPLICITY_COMMUTATOR,
        OpName::L | OpName::S | OpName::Lconj | OpName::Sconj | OpName::Projection => 1,
    }
}

fn model(op: OpName, symbol: &str, a: &str, nu: f64) -> Result<Option<ModelSpec>, CliError> {
    let sym = || parse_symbol(symbol).map_err(|e| parse_err("--symbol", e));
    let coef = || parse_complex(a).map_err(|e| parse_err("--a", e));
    let log_mass = || check_nu(nu).map(|_| nu);
    Ok(Some(match op {
        OpName::E => ModelSpec::E,
        OpName::Estar => ModelSpec::Estar,
        OpName::Q0 => ModelSpec::Q0,
        OpName::Q0star => ModelSpec::Q0star,
        OpName::Frakq => ModelSpec::FrakQ { a: coef()? },
        OpName::Rnu => ModelSpec::Rnu { nu: log_mass()? },
        OpName::Y => ModelSpec::Y { a: coef()?, nu: log_mass()? },
        OpName::L => ModelSpec::L { u: sym()? },
        OpName::S => ModelSpec::S { u: sym()? },
        OpName::Lconj => ModelSpec::Lconj { u: sym()? },
        OpName::Sconj => ModelSpec::Sconj { u: sym()? },
        OpName::Commutator => ModelSpec::Commutator { u: sym()? },
        OpName::Projection => return Ok(None),
    }))
}

fn operator(args: &OperatorArgs) -> Result<OperatorConfig, CliError> {
    check_alpha(args.alpha)?;
    check_degree(args.degree)?;
    check_r0(args.r0)?;
    let sector = match &args.sector {
        None => None,
        Some(text) => {
            let (j, n) = parse_sector(text).map_err(|e| parse_err("--sector", e))?;
            check_sectors(n)?;
            if j == 0 || j > n {
                return Err(usage(format!("sector index must satisfy 1 <= j <= N, got {j}/{n}")));
            }
            Some(SectorSel { j, n })
        }
    };
    Ok(OperatorConfig {
        alpha: args.alpha,
        degree: args.degree,
        r0: args.r0,
        op: args.op,
        model: model(args.op, &args.symbol, &args.a, args.nu)?,
        sector,
    })
}

fn families(args: &FamiliesArgs) -> Result<FamiliesConfig, CliError> {
    check_alpha(args.alpha)?;
    check_nu(args.nu)?;
    if args.count == 0 {
        return Err(usage("count must be at least 1"));
    }
    let seq = match args.seq {
        Seq::B => SequenceName::B,
        Seq::C => SequenceName::C,
        Seq::T => SequenceName::T,
        Seq::X => SequenceName::X,
    };
    let a = parse_complex(&args.a).map_err(|e| parse_err("--a", e))?;
    Ok(FamiliesConfig { alpha: args.alpha, count: args.count, seq, a, nu: args.nu })
}

fn spectrum(args: &SpectrumArgs) -> Result<SpectrumConfig, CliError> {
    match &args.input {
        Some(path) => Ok(SpectrumConfig { input: Some(path.clone()), operator: None }),
        None => Ok(SpectrumConfig { input: None, operator: Some(operator(&args.operator)?) }),
    }
}

fn fit(args: &FitArgs) -> Result<FitConfig, CliError> {
    if !(args.p.is_finite() && args.p > 0.0) {
        return Err(usage(format!("p must be positive, got {}", args.p)));
    }
    let window = args.window.as_deref().map(parse_window).transpose().map_err(|e| parse_err("--window", e))?;
    Ok(FitConfig { input: args.input.clone(), p: args.p, window })
}

fn theorem(args: &TheoremArgs) -> Result<TheoremConfig, CliError> {
    check_alpha(args.alpha)?;
    let symbol = parse_symbol(&args.symbol).map_err(|e| parse_err("--symbol", e))?;
    let degrees = parse_list(&args.degrees).map_err(|e| parse_err("--degrees", e))?;
    let r0s = parse_list(&args.r0).map_err(|e| parse_err("--r0", e))?;
    if degrees.len() < 2 {
        return Err(usage("need at least two degrees for extrapolation"));
    }
    degrees.iter().try_for_each(|&d| check_degree(d))?;
    r0s.iter().try_for_each(|&r| check_r0(r))?;
    if args.quad_points < 16 {
        return Err(usage("quad-points must be at least 16"));
    }
    Ok(TheoremConfig { alpha: args.alpha, symbol, degrees, r0s, quad_points: args.quad_points, timing: !args.no_timing })
}

fn sectors(args: &SectorsArgs) -> Result<SectorsConfig, CliError> {
    check_alpha(args.alpha)?;
    check_degree(args.degree)?;
    check_r0(args.r0)?;
    check_sectors(args.sectors)?;
    let operator = OperatorConfig {
        alpha: args.alpha,
        degree: args.degree,
        r0: args.r0,
        op: args.op,
        model: model(args.op, &args.symbol, &args.a, args.nu)?,
        sector: None,
    };
    Ok(SectorsConfig { operator, sectors: args.sectors, multiplicity: multiplicity(args.op) })
}

fn format_name(requested: Option<Format>, default: &'static str) -> &'static str {
    match requested {
        Some(Format::Json) => "json",
        Some(Format::Csv) => "csv",
        None => default,
    }
}

/// Validates the arguments and fixes every default.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let (command, default_format, params) = match &cli.command {
        Command::Verify(a) => ("verify", "json", Params::Verify { seed: a.seed }),
        Command::Families(a) => ("families", "csv", Params::Families(families(a)?)),
        Command::Assemble(a) => ("assemble", "text", Params::Assemble(operator(a)?)),
        Command::Spectrum(a) => ("spectrum", "csv", Params::Spectrum(spectrum(a)?)),
        Command::Fit(a) => ("fit", "json", Params::Fit(fit(a)?)),
        Command::Theorem(a) => ("theorem", "json", Params::Theorem(theorem(a)?)),
        Command::Sectors(a) => ("sectors", "json", Params::Sectors(sectors(a)?)),
    };
    Ok(RunConfig { command, threads: cli.threads, format: format_name(cli.format, default_format), params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn resolved(args: &[&str]) -> Result<RunConfig, CliError> {
        resolve(&Cli::try_parse_from(std::iter::once("commspec").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn defaults_are_filled_in() {
        let cfg = resolved(&["theorem"]).unwrap();
        assert_eq!(cfg.format, "json");
        let Params::Theorem(t) = cfg.params else { panic!() };
        assert_eq!(t.degrees, vec![48, 96, 192]);
        assert_eq!(t.r0s, vec![8]);
        assert_eq!(t.symbol.nu, 1.0);
        assert_eq!(resolved(&["assemble"]).unwrap().format, "text");
        assert_eq!(resolved(&["families", "--seq", "b", "--format", "json"]).unwrap().format, "json");
    }

    #[test]
    fn invalid_parameters_are_usage_errors() {
        for args in [
            vec!["assemble", "--alpha", "-1"],
            vec!["assemble", "--degree", "3"],
            vec!["assemble", "--r0", "1"],
            vec!["assemble", "--sector", "0/4"],
            vec!["assemble", "--sector", "5/4"],
            vec!["sectors", "--sectors", "0"],
            vec!["assemble", "--op", "rnu", "--nu", "-0.5"],
            vec!["theorem", "--degrees", "48"],
            vec!["theorem", "--symbol", "nu=-1;U=1"],
            vec!["families", "--seq", "c", "--count", "0"],
        ] {
            let e = resolved(&args).unwrap_err();
            assert_eq!(e.exit, 2, "{args:?}");
        }
        let e = resolved(&["theorem", "--symbol", "nu=1;U=1,q"]).unwrap_err();
        assert_eq!((e.kind.as_str(), e.position), ("parse", Some(9)));
    }

    #[test]
    fn only_the_needed_literals_are_parsed() {
        assert!(resolved(&["assemble", "--op", "e", "--a", "garbage"]).is_ok());
        assert!(resolved(&["assemble", "--op", "frakq", "--a", "garbage"]).is_err());
    }
}
