//! The pipelines behind each subcommand. Each returns the artifact text and
//! whether it represents a failed verification.

use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::sync::Arc;

use commspec_core::asymptotics::{convergence_study, default_window, fit_tail, StudyOptions, TailFit};
use commspec_core::basis::SequenceSpec;
use commspec_core::operators::{assemble_model, build_basis, projection_matrix, sector_compress, BasisMeta, OperatorMatrix};
use commspec_core::spectral::{singular_values, SingularSpectrum};
use serde::Serialize;

use crate::config::{FamiliesConfig, FitConfig, OperatorConfig, Params, RunConfig, SectorsConfig, SpectrumConfig, TheoremConfig};
use crate::{progress, verify, CliError};

pub struct Artifact {
    pub text: String,
    pub failed: bool,
}

impl Artifact {
    fn ok(text: String) -> Self {
        Artifact { text, failed: false }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(config: &RunConfig, body: T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(&Report { config, body }).map_err(CliError::internal)?;
    s.push('\n');
    Ok(s)
}

fn csv_preamble(config: &RunConfig) -> Result<String, CliError> {
    Ok(format!("# config {}\n", serde_json::to_string(config).map_err(CliError::internal)?))
}

pub fn run(config: &RunConfig) -> Result<Artifact, CliError> {
    match &config.params {
        Params::Verify { seed } => verify_cmd(config, *seed),
        Params::Families(f) => families(config, f),
        Params::Assemble(op) => assemble(config, op),
        Params::Spectrum(s) => spectrum(config, s),
        Params::Fit(f) => fit(config, f),
        Params::Theorem(t) => theorem(config, t),
        Params::Sectors(s) => sectors(config, s),
    }
}

fn verify_cmd(config: &RunConfig, seed: u64) -> Result<Artifact, CliError> {
    let checks = verify::run(seed)?;
    let pass = checks.iter().all(|c| c.pass);
    let text = if config.format == "csv" {
        let mut out = csv_preamble(config)?;
        out.push_str("name,cases,max_error,tolerance,pass\n");
        for c in &checks {
            let _ = writeln!(out, "{},{},{:e},{:e},{}", c.name, c.cases, c.max_error, c.tolerance, c.pass);
        }
        out
    } else {
        #[derive(Serialize)]
        struct Body<'a> {
            pass: bool,
            checks: &'a [verify::Check],
        }
        json(config, Body { pass, checks: &checks })?
    };
    Ok(Artifact { text, failed: !pass })
}

fn families(config: &RunConfig, f: &FamiliesConfig) -> Result<Artifact, CliError> {
    let spec = SequenceSpec { name: f.seq, alpha: f.alpha, a: f.a, nu: f.nu };
    let rows = spec.table(f.count)?;
    let alt = spec.alternate_label();
    if config.format == "json" {
        #[derive(Serialize)]
        struct Body<'a> {
            alternate: Option<&'static str>,
            rows: &'a [commspec_core::basis::SequenceRow],
        }
        return Ok(Artifact::ok(json(config, Body { alternate: alt, rows: &rows })?));
    }
    let mut out = csv_preamble(config)?;
    out.push_str("n,value");
    if let Some(label) = alt {
        let _ = write!(out, ",{label}");
    }
    out.push('\n');
    for r in &rows {
        let _ = write!(out, "{},{}", r.n, r.value);
        if let Some(v) = r.alternate {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    Ok(Artifact::ok(out))
}

fn build_operator(op: &OperatorConfig) -> Result<OperatorMatrix, CliError> {
    let basis = Arc::new(build_basis(op.alpha, op.degree, op.r0)?);
    let m = match &op.model {
        Some(spec) => assemble_model(spec, &basis),
        None => projection_matrix(&basis),
    };
    Ok(match &op.sector {
        Some(s) => sector_compress(&m, s.j, s.n)?,
        None => m,
    })
}

fn assemble(config: &RunConfig, op: &OperatorConfig) -> Result<Artifact, CliError> {
    let m = build_operator(op)?;
    let n = m.dim();
    let text = match config.format {
        "json" => {
            #[derive(Serialize)]
            struct Body {
                label: String,
                basis: BasisMeta,
                /// Row-major (re, im) pairs.
                entries: Vec<Vec<(f64, f64)>>,
            }
            let entries = (0..n).map(|p| (0..n).map(|q| (m.get(p, q).re, m.get(p, q).im)).collect()).collect();
            json(config, Body { label: m.label.clone(), basis: m.meta(), entries })?
        }
        "csv" => {
            let mut out = csv_preamble(config)?;
            out.push_str("row,col,re,im\n");
            for p in 0..n {
                for q in 0..n {
                    let z = m.get(p, q);
                    if z.re != 0.0 || z.im != 0.0 {
                        let _ = writeln!(out, "{p},{q},{},{}", z.re, z.im);
                    }
                }
            }
            out
        }
        _ => {
            let mut buf = Vec::new();
            let note = format!("config {}", serde_json::to_string(config).map_err(CliError::internal)?);
            m.write_text_annotated(&mut buf, &[note])?;
            String::from_utf8(buf).map_err(CliError::internal)?
        }
    };
    Ok(Artifact::ok(text))
}

fn spectrum(config: &RunConfig, s: &SpectrumConfig) -> Result<Artifact, CliError> {
    let m = match (&s.input, &s.operator) {
        (Some(path), _) => {
            let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
            OperatorMatrix::read_text(BufReader::new(file))?
        }
        (None, Some(op)) => build_operator(op)?,
        (None, None) => return Err(CliError::new("usage", "spectrum needs an operator or --input", 2)),
    };
    let spec = singular_values(&m)?;
    let text = if config.format == "json" {
        json(config, &spec)?
    } else {
        csv_preamble(config)? + &spec.to_csv()
    };
    Ok(Artifact::ok(text))
}

fn fit(config: &RunConfig, f: &FitConfig) -> Result<Artifact, CliError> {
    let text = fs::read_to_string(&f.input).map_err(|e| CliError::io(&f.input, e))?;
    let spec = SingularSpectrum::from_csv(&text)?;
    let len = spec.len();
    let window = f.window.unwrap_or(((len / 4).max(1), 3 * len / 4));
    if window.1 > len {
        return Err(CliError::new("window", format!("window end {} exceeds the {len} values in the spectrum", window.1), 2));
    }
    let tail = fit_tail(&spec.values, f.p, window)?;
    let out = if config.format == "csv" {
        let mut out = csv_preamble(config)?;
        out.push_str("p,n1,n2,estimate,correction,error_estimate,max_residual\n");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            tail.p, tail.window.0, tail.window.1, tail.estimate, tail.correction, tail.error_estimate, tail.max_residual
        );
        out
    } else {
        #[derive(Serialize)]
        struct Body {
            spectrum_len: usize,
            fit: TailFit,
        }
        json(config, Body { spectrum_len: len, fit: tail })?
    };
    Ok(Artifact::ok(out))
}

fn theorem(config: &RunConfig, t: &TheoremConfig) -> Result<Artifact, CliError> {
    progress(&format!("convergence study over degrees {:?} and r0 {:?}", t.degrees, t.r0s));
    let opts = StudyOptions { quad_points: t.quad_points, timing: t.timing };
    let report = convergence_study(&t.symbol, t.alpha, &t.degrees, &t.r0s, opts)?;
    progress("convergence study finished");
    let text = if config.format == "csv" {
        let mut out = csv_preamble(config)?;
        out.push_str("degree,r0,dimension,n1,n2,estimate,correction,error_estimate,max_residual\n");
        for p in &report.points {
            let f = &p.fit;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                p.degree, p.r0, p.dimension, f.window.0, f.window.1, f.estimate, f.correction, f.error_estimate, f.max_residual
            );
        }
        out
    } else {
        json(config, &report)?
    };
    Ok(Artifact::ok(text))
}

#[derive(Serialize)]
struct SectorResult {
    j: u32,
    fit: TailFit,
    top: Vec<f64>,
}

fn sectors(config: &RunConfig, s: &SectorsConfig) -> Result<Artifact, CliError> {
    let op = &s.operator;
    let whole = build_operator(op)?;
    progress(&format!("spectrum of {} (dimension {})", whole.label, whole.dim()));
    let whole_s = singular_values(&whole)?;
    let whole_fit = fit_tail(&whole_s.values, 1.0, default_window(op.degree, s.multiplicity, 1))?;
    let mut spectra = Vec::new();
    let mut results = Vec::new();
    for j in 1..=s.sectors {
        progress(&format!("sector {j} of {}", s.sectors));
        let sj = singular_values(&sector_compress(&whole, j, s.sectors)?)?;
        let fit = fit_tail(&sj.values, 1.0, default_window(op.degree, s.multiplicity, s.sectors))?;
        results.push(SectorResult { j, fit, top: sj.values.iter().take(8).copied().collect() });
        spectra.push(sj.values);
    }
    let spread = spectra
        .iter()
        .skip(1)
        .flat_map(|v| v.iter().zip(&spectra[0]).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    let mean = results.iter().map(|r| r.fit.estimate).sum::<f64>() / results.len() as f64;
    let text = if config.format == "csv" {
        let mut out = csv_preamble(config)?;
        out.push_str("index,whole");
        for j in 1..=s.sectors {
            let _ = write!(out, ",sector_{j}");
        }
        out.push('\n');
        for i in 0..whole_s.len() {
            let _ = write!(out, "{},{}", i + 1, whole_s.values[i]);
            for v in &spectra {
                let _ = write!(out, ",{}", v[i]);
            }
            out.push('\n');
        }
        out
    } else {
        #[derive(Serialize)]
        struct Body {
            whole: TailFit,
            whole_top: Vec<f64>,
            sectors: Vec<SectorResult>,
            /// Largest difference between any sector spectrum and sector 1's.
            max_sector_spread: f64,
            /// Mean sector constant over the whole-operator constant.
            constant_ratio: f64,
            reference_ratio: f64,
        }
        json(
            config,
            Body {
                whole: whole_fit,
                whole_top: whole_s.values.iter().take(8).copied().collect(),
                sectors: results,
                max_sector_spread: spread,
                constant_ratio: mean / whole_fit.estimate,
                reference_ratio: 1.0 / s.sectors as f64,
            },
        )?
    };
    Ok(Artifact::ok(text))
}
