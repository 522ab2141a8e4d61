//! Tabular output in CSV, JSON and markdown.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(Error::InvalidInput(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Md => self.to_markdown(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(full_precision)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (r, row) in self.rows.iter().enumerate() {
            out.push_str(if r == 0 { "\n  {" } else { ",\n  {" });
            for (i, (h, c)) in self.headers.iter().zip(row).enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let value = match c {
                    Cell::Num(v) if v.is_finite() => sig17(*v),
                    Cell::Num(_) => "null".to_string(),
                    Cell::Int(i) => i.to_string(),
                    Cell::Text(t) => serde_json::to_string(t).expect("string serialization"),
                };
                let _ = write!(
                    out,
                    "{}: {}",
                    serde_json::to_string(h).expect("string serialization"),
                    value
                );
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }

    fn to_markdown(&self) -> String {
        let mut out = format!("| {} |\n", self.headers.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.headers.len()));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => sig(*v, 6),
                    Cell::Int(i) => i.to_string(),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }
}

fn full_precision(c: &Cell) -> String {
    match c {
        Cell::Num(v) => sig17(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Text(t) => t.clone(),
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn sig17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    format!("{v:.16e}")
}

/// `%g`-style formatting with `digits` significant digits.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    // Rounding can bump the exponent (e.g. 9.999996 -> 10.0000).
    let rounded: f64 = format!("{:.*e}", digits - 1, v).parse().unwrap_or(v);
    let exp = if rounded != 0.0 {
        rounded.abs().log10().floor() as i32
    } else {
        exp
    };
    if exp < -4 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, v);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        format!("{}e{}", trim_zeros(mantissa), e)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digit_display() {
        assert_eq!(sig(0.744111801566661, 6), "0.744112");
        assert_eq!(sig(2.9261139753949115, 6), "2.92611");
        assert_eq!(sig(241.792, 6), "241.792");
        assert_eq!(sig(6.213364347442804e-13, 6), "6.21336e-13");
        assert_eq!(sig(3.0, 6), "3");
        assert_eq!(sig(-0.000490826, 6), "-0.000490826");
        assert_eq!(sig(9.9999996, 6), "10");
        assert_eq!(sig(1234567.0, 6), "1.23457e6");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.0859751246776055, 6.02e23, 5e-324, 0.0] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn renders_all_formats() {
        let mut t = Table::new(["x", "kind", "n"]);
        t.push(vec![0.5.into(), "max".into(), 2usize.into()]);
        assert_eq!(t.render(Format::Csv), "x,kind,n\n5.0000000000000000e-1,max,2\n");
        let json: serde_json::Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(json[0]["x"], 0.5);
        assert_eq!(json[0]["kind"], "max");
        assert_eq!(
            t.render(Format::Md),
            "| x | kind | n |\n|---|---|---|\n| 0.5 | max | 2 |\n"
        );
        let empty = Table::new(["x"]);
        assert_eq!(
            serde_json::from_str::<serde_json::Value>(&empty.render(Format::Json)).unwrap(),
            serde_json::json!([])
        );
    }
}
