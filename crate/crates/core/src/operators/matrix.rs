use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::sync::Arc;

use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use super::truncated::{build_basis, BasisMeta, BasisSet};
use crate::error::{Error, Result};

/// One source class and the target classes it may feed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coupling {
    pub source: i64,
    pub targets: Vec<i64>,
}

/// A Galerkin matrix A[p, q] = ⟨T β_q, β_p⟩ in an orthonormal [`BasisSet`].
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub entries: Mat<Complex64>,
    pub basis: Arc<BasisSet>,
    pub label: String,
    pub couplings: Vec<Coupling>,
}

impl OperatorMatrix {
    /// Wraps entries and derives the coupling list from the nonzero blocks.
    pub fn from_entries(entries: Mat<Complex64>, basis: Arc<BasisSet>, label: impl Into<String>) -> Self {
        let couplings = scan_couplings(&entries, &basis);
        OperatorMatrix { entries, basis, label: label.into(), couplings }
    }

    pub fn zeros(basis: Arc<BasisSet>, label: impl Into<String>) -> Self {
        let n = basis.dim();
        OperatorMatrix { entries: Mat::zeros(n, n), basis, label: label.into(), couplings: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn meta(&self) -> BasisMeta {
        self.basis.meta()
    }

    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        self.entries[(p, q)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let entries = self.entries.adjoint().to_owned();
        let mut flipped: std::collections::BTreeMap<i64, BTreeSet<i64>> = Default::default();
        for c in &self.couplings {
            for &t in &c.targets {
                flipped.entry(t).or_default().insert(c.source);
            }
        }
        let couplings =
            flipped.into_iter().map(|(source, t)| Coupling { source, targets: t.into_iter().collect() }).collect();
        OperatorMatrix { entries, basis: self.basis.clone(), label: adjoint_label(&self.label), couplings }
    }

    pub fn linear_combination(&self, terms: &[(Complex64, &OperatorMatrix)], label: impl Into<String>) -> Result<Self> {
        let n = self.dim();
        let mut entries = Mat::<Complex64>::zeros(n, n);
        for (c, m) in terms {
            if m.dim() != n {
                return Err(Error::Dimension(format!("cannot combine {} with {}", n, m.dim())));
            }
            for j in 0..n {
                for i in 0..n {
                    entries[(i, j)] += c * m.entries[(i, j)];
                }
            }
        }
        Ok(OperatorMatrix::from_entries(entries, self.basis.clone(), label))
    }

    /// Largest entrywise modulus of self − other.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!("{} vs {}", self.dim(), other.dim())));
        }
        Ok(max_abs_diff(&self.entries, &other.entries))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                s += self.entries[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Largest entry outside the declared class couplings.
    pub fn coupling_leak(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for src in self.basis.classes() {
            let allowed: BTreeSet<i64> = self
                .couplings
                .iter()
                .filter(|c| c.source == src.k)
                .flat_map(|c| c.targets.iter().copied())
                .collect();
            for dst in self.basis.classes() {
                if allowed.contains(&dst.k) {
                    continue;
                }
                for q in src.offset..src.offset + src.len {
                    for p in dst.offset..dst.offset + dst.len {
                        worst = worst.max(self.entries[(p, q)].norm());
                    }
                }
            }
        }
        worst
    }

    /// Plain-text export: two header lines, then one row per line as
    /// whitespace-separated (re, im) pairs.
    pub fn write_text(&self, out: impl Write) -> Result<()> {
        self.write_text_annotated(out, &[])
    }

    /// [`Self::write_text`] with extra `#` lines after the header; readers skip them.
    pub fn write_text_annotated(&self, mut out: impl Write, notes: &[String]) -> Result<()> {
        let m = self.meta();
        writeln!(out, "# commspec-matrix v1")?;
        writeln!(
            out,
            "# alpha={} degree={} r0={} rows={} cols={} label={}",
            m.alpha,
            m.degree,
            m.r0,
            self.entries.nrows(),
            self.entries.ncols(),
            self.label.replace('\n', " ")
        )?;
        for note in notes {
            writeln!(out, "# {}", note.replace('\n', " "))?;
        }
        let mut line = String::new();
        for i in 0..self.entries.nrows() {
            line.clear();
            for j in 0..self.entries.ncols() {
                let z = self.entries[(i, j)];
                if j > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{} {}", z.re, z.im);
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn read_text(input: impl BufRead) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let mut next = |what: &str| -> Result<(usize, String)> {
            match lines.next() {
                Some((i, l)) => Ok((i + 1, l?)),
                None => Err(Error::Format { line: 0, detail: format!("missing {what}") }),
            }
        };
        let (n1, magic) = next("magic line")?;
        if magic.trim() != "# commspec-matrix v1" {
            return Err(Error::Format { line: n1, detail: "not a commspec matrix file".into() });
        }
        let (n2, header) = next("header")?;
        let body = header
            .strip_prefix("# ")
            .ok_or_else(|| Error::Format { line: n2, detail: "header must start with '# '".into() })?;
        let (fields, label) = match body.split_once(" label=") {
            Some((f, l)) => (f, l.to_string()),
            None => (body, String::new()),
        };
        let field = |key: &str| -> Result<&str> {
            fields
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| Error::Format { line: n2, detail: format!("missing header field {key}") })
        };
        let bad = |key: &str| Error::Format { line: n2, detail: format!("bad value for {key}") };
        let alpha: f64 = field("alpha")?.parse().map_err(|_| bad("alpha"))?;
        let degree: u32 = field("degree")?.parse().map_err(|_| bad("degree"))?;
        let r0: u32 = field("r0")?.parse().map_err(|_| bad("r0"))?;
        let rows: usize = field("rows")?.parse().map_err(|_| bad("rows"))?;
        let cols: usize = field("cols")?.parse().map_err(|_| bad("cols"))?;
        let basis = Arc::new(build_basis(alpha, degree, r0)?);
        if rows != basis.dim() || cols != basis.dim() {
            return Err(Error::Format { line: n2, detail: format!("shape {rows}x{cols} does not match basis {}", basis.dim()) });
        }
        let mut entries = Mat::<Complex64>::zeros(rows, cols);
        for i in 0..rows {
            let (mut n, mut line) = next("matrix row")?;
            while line.starts_with('#') {
                (n, line) = next("matrix row")?;
            }
            let vals: Vec<f64> = line
                .split_whitespace()
                .map(|s| s.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Format { line: n, detail: e.to_string() })?;
            if vals.len() != 2 * cols {
                return Err(Error::Format { line: n, detail: format!("expected {} numbers, got {}", 2 * cols, vals.len()) });
            }
            for j in 0..cols {
                entries[(i, j)] = Complex64::new(vals[2 * j], vals[2 * j + 1]);
            }
        }
        Ok(OperatorMatrix::from_entries(entries, basis, label))
    }
}

fn adjoint_label(label: &str) -> String {
    match label.strip_suffix('*') {
        Some(base) if !base.is_empty() => base.to_string(),
        _ => format!("{label}*"),
    }
}

pub fn max_abs(m: &Mat<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            worst = worst.max(m[(i, j)].norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &Mat<Complex64>, b: &Mat<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

/// Class couplings present in a matrix (blocks with any nonzero entry).
pub fn scan_couplings(entries: &Mat<Complex64>, basis: &BasisSet) -> Vec<Coupling> {
    let mut out = Vec::new();
    for src in basis.classes() {
        let mut targets = Vec::new();
        for dst in basis.classes() {
            let nonzero = (src.offset..src.offset + src.len)
                .any(|q| (dst.offset..dst.offset + dst.len).any(|p| entries[(p, q)] != Complex64::new(0.0, 0.0)));
            if nonzero {
                targets.push(dst.k);
            }
        }
        if !targets.is_empty() {
            out.push(Coupling { source: src.k, targets });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OperatorMatrix {
        let basis = Arc::new(build_basis(0.5, 3, 2).unwrap());
        let n = basis.dim();
        let mut m = Mat::<Complex64>::zeros(n, n);
        m[(0, 1)] = Complex64::new(0.25, -1.0 / 3.0);
        m[(n - 1, 2)] = Complex64::new(1e-300, 7.0);
        OperatorMatrix::from_entries(m, basis, "sample op")
    }

    #[test]
    fn adjoint_round_trip_and_couplings() {
        let m = sample();
        let a = m.adjoint();
        assert_eq!(a.label, "sample op*");
        assert_eq!(a.get(1, 0), m.get(0, 1).conj());
        assert_eq!(a.adjoint().max_abs_diff(&m).unwrap(), 0.0);
        assert_eq!(a.adjoint().couplings, m.couplings);
        assert_eq!(m.coupling_leak(), 0.0);
        assert_eq!(a.coupling_leak(), 0.0);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let m = sample();
        let mut buf = Vec::new();
        m.write_text(&mut buf).unwrap();
        let back = OperatorMatrix::read_text(buf.as_slice()).unwrap();
        assert_eq!(back.max_abs_diff(&m).unwrap(), 0.0);
        assert_eq!(back.label, "sample op");
        assert_eq!(back.meta(), m.meta());

        let mut noted = Vec::new();
        m.write_text_annotated(&mut noted, &["config {\"seed\":1}".into()]).unwrap();
        let back = OperatorMatrix::read_text(noted.as_slice()).unwrap();
        assert_eq!(back.max_abs_diff(&m).unwrap(), 0.0);
    }

    #[test]
    fn malformed_text_reports_line() {
        let m = sample();
        let mut buf = Vec::new();
        m.write_text(&mut buf).unwrap();
        let mut text = String::from_utf8(buf).unwrap();
        text = text.replacen("0.25", "zero", 1);
        match OperatorMatrix::read_text(text.as_bytes()) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
