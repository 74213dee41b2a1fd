//! CSV and report formatting.

use std::fmt::Write as _;
use std::path::Path;

use plv_core::{Complex64, DMatrix, SampledFunction, SampleDomain, TrigCoeffs};

use crate::error::{CliError, CliResult, Reason};

pub const LAGS_HEADER: &str = "m,re,im";

/// 17 significant digits; round-trips every `f64`.
pub fn fmt17(v: f64) -> String {
    fmt_sig(v, 17)
}

/// 12 significant digits for human-facing reports.
pub fn fmt12(v: f64) -> String {
    fmt_sig(v, 12)
}

fn fmt_sig(v: f64, digits: usize) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    if !v.is_finite() {
        return format!("{v}");
    }
    format!("{:.*e}", digits - 1, v)
}

pub fn format_lags(lags: &[Complex64]) -> String {
    let mut out = String::from(LAGS_HEADER);
    out.push('\n');
    for (m, v) in lags.iter().enumerate() {
        let _ = writeln!(out, "{m},{},{}", fmt17(v.re), fmt17(v.im));
    }
    out
}

/// Reads `m,re,im` rows; `m` must run `0, 1, 2, ...` in order.
pub fn parse_lags(text: &str) -> CliResult<Vec<Complex64>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == LAGS_HEADER => {}
        Some((i, header)) => {
            return Err(CliError::config(format!(
                "lags line {}: expected header \"{LAGS_HEADER}\", got \"{}\"",
                i + 1,
                header.trim()
            )))
        }
        None => return Err(CliError::config("lags: file is empty")),
    }
    let mut values = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::config(format!("lags line {line_no}: expected 3 fields, got {}", fields.len())));
        }
        let m: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("lags line {line_no}: invalid index \"{}\"", fields[0])))?;
        if m != values.len() {
            return Err(CliError::config(format!("lags line {line_no}: expected index {}, got {m}", values.len())));
        }
        let num = |s: &str, name: &str| -> CliResult<f64> {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::config(format!("lags line {line_no}: invalid {name} \"{s}\"")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::config(format!("lags line {line_no}: {name} is not finite")))
            }
        };
        values.push(Complex64::new(num(fields[1], "re")?, num(fields[2], "im")?));
    }
    if values.is_empty() {
        return Err(CliError::config("lags: no data rows"));
    }
    Ok(values)
}

/// `k,basis,index,b` with `basis` one of `const`, `cos`, `sin`.
pub fn format_coefficients(b: &TrigCoeffs) -> String {
    let m = b.antennas();
    let mut out = String::from("k,basis,index,b\n");
    for (k, v) in b.as_slice().iter().enumerate() {
        let (basis, index) = if k == 0 {
            ("const", 0)
        } else if k < m {
            ("cos", k)
        } else {
            ("sin", k - m + 1)
        };
        let _ = writeln!(out, "{k},{basis},{index},{}", fmt17(*v));
    }
    out
}

pub fn format_samples(samples: &SampledFunction) -> String {
    let header = match samples.domain() {
        SampleDomain::Theta => "theta,rho",
        SampleDomain::X => "x,g",
    };
    let mut out = format!("{header}\n");
    for (t, v) in samples.grid().iter().zip(samples.values()) {
        let _ = writeln!(out, "{},{}", fmt17(*t), fmt17(*v));
    }
    out
}

pub fn format_matrix(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt17(m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Aligned `key = value` lines.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.lines.push((key.to_string(), value.into()));
        self
    }

    pub fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.text(key, fmt12(value))
    }

    pub fn render(&self) -> String {
        let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k:<width$} = {v}");
        }
        out
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::new(Reason::Config, format!("cannot write {}: {e}", path.display())))
}
