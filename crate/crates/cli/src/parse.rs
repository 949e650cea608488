//! Parsers for the textual literals accepted on the command line. Errors carry
//! a 0-based byte offset into the original argument.

use std::fmt;

use commspec_core::operators::SymbolU;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }

    fn shifted(mut self, by: usize) -> Self {
        self.position += by;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at position {})", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

fn real(text: &str, offset: usize) -> Result<f64, ParseError> {
    let v: f64 = text.parse().map_err(|_| ParseError::at(offset, format!("not a number: {text:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseError::at(offset, format!("number must be finite: {text:?}")))
    }
}

/// Complex literal `a+bi` with optional parts: `2`, `-1.5`, `i`, `-3i`, `1-2i`, `2.5e-3+1e2i`.
pub fn parse_complex(text: &str) -> Result<Complex64, ParseError> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseError::at(lead, "empty complex literal"));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(t, lead)?, 0.0));
    };
    // the sign that starts the imaginary part, skipping exponent signs
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text, im_at) = match split {
        Some(k) => (&body[..k], &body[k..], lead + k),
        None => ("", body, lead),
    };
    let re = if re_text.is_empty() { 0.0 } else { real(re_text, lead)? };
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real(s, im_at)?,
    };
    Ok(Complex64::new(re, im))
}

/// Symbol grammar `nu=<float>;U=<c1>,<c2>,...` where c_k multiplies z^k.
/// Keys may come in either order; `nu` defaults to 0.
pub fn parse_symbol(text: &str) -> Result<SymbolU, ParseError> {
    let mut nu: Option<f64> = None;
    let mut coeffs: Option<Vec<Complex64>> = None;
    let mut offset = 0;
    for part in text.split(';') {
        let start = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = part.split_once('=') else {
            return Err(ParseError::at(start, format!("expected key=value, got {:?}", part.trim())));
        };
        let value_at = start + key.len() + 1;
        match key.trim() {
            "nu" => {
                if nu.is_some() {
                    return Err(ParseError::at(start, "nu given twice"));
                }
                let lead = value.len() - value.trim_start().len();
                let v = real(value.trim(), value_at + lead)?;
                if v < 0.0 {
                    return Err(ParseError::at(value_at + lead, format!("nu must be nonnegative, got {v}")));
                }
                nu = Some(v);
            }
            "U" => {
                if coeffs.is_some() {
                    return Err(ParseError::at(start, "U given twice"));
                }
                let mut list = Vec::new();
                let mut at = value_at;
                for item in value.split(',') {
                    list.push(parse_complex(item).map_err(|e| e.shifted(at))?);
                    at += item.len() + 1;
                }
                coeffs = Some(list);
            }
            other => {
                let lead = key.len() - key.trim_start().len();
                return Err(ParseError::at(start + lead, format!("unknown key {other:?}; expected nu or U")));
            }
        }
    }
    let coeffs = coeffs.ok_or_else(|| ParseError::at(text.len(), "missing U=<coefficients>"))?;
    SymbolU::new(coeffs, nu.unwrap_or(0.0)).map_err(|e| ParseError::at(0, e.to_string()))
}

/// Comma-separated unsigned integers.
pub fn parse_list(text: &str) -> Result<Vec<u32>, ParseError> {
    let mut out = Vec::new();
    let mut at = 0;
    for item in text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let v = item
            .trim()
            .parse()
            .map_err(|_| ParseError::at(at + lead, format!("not a nonnegative integer: {:?}", item.trim())))?;
        out.push(v);
        at += item.len() + 1;
    }
    Ok(out)
}

/// `n1,n2` as a 1-based inclusive index window.
pub fn parse_window(text: &str) -> Result<(usize, usize), ParseError> {
    match parse_list(text)?.as_slice() {
        &[a, b] if a >= 1 && a < b => Ok((a as usize, b as usize)),
        _ => Err(ParseError::at(0, format!("window must be n1,n2 with 1 <= n1 < n2, got {text:?}"))),
    }
}

/// `j/N`.
pub fn parse_sector(text: &str) -> Result<(u32, u32), ParseError> {
    let Some((j, n)) = text.split_once('/') else {
        return Err(ParseError::at(0, format!("sector must be j/N, got {text:?}")));
    };
    let num = |s: &str, at: usize| s.trim().parse::<u32>().map_err(|_| ParseError::at(at, format!("not an integer: {:?}", s.trim())));
    Ok((num(j, 0)?, num(n, j.len() + 1)?))
}
