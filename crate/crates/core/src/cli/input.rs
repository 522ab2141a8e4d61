//! Sample and query CSV readers.
//!
//! Samples: header `x1,...,xD,kind,order,value`, `kind` is `value` or
//! `deriv`, `order` colon-separated exponents (empty for values).
//! Queries: header `x1,...,xD,order`, empty order meaning the value itself.

use std::io::Read;

use crate::analysis::DerivativeRequest;
use crate::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::stencil::{Point, Sample};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn check_coordinate_headers(headers: &csv::StringRecord, dimension: usize) -> Result<()> {
    for i in 0..dimension {
        let want = format!("x{}", i + 1);
        if headers.get(i).map(str::trim) != Some(want.as_str()) {
            return Err(bad(format!("expected column '{want}' at position {}", i + 1)));
        }
    }
    Ok(())
}

fn parse_f64(field: &str, line: usize, column: &str) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| bad(format!("line {line}: '{field}' in column {column} is not a number")))?;
    if !v.is_finite() {
        return Err(bad(format!("line {line}: non-finite {column}")));
    }
    Ok(v)
}

fn parse_order(field: &str, dimension: usize, line: usize) -> Result<MultiIndex> {
    let order: MultiIndex = field
        .trim()
        .parse()
        .map_err(|_| bad(format!("line {line}: bad order spec '{field}'")))?;
    if order.dimension() != dimension {
        return Err(bad(format!(
            "line {line}: order '{field}' has {} entries, expected {dimension}",
            order.dimension()
        )));
    }
    Ok(order)
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input)
}

pub fn read_samples<R: Read>(input: R) -> Result<Vec<Sample>> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(|e| bad(format!("samples header: {e}")))?.clone();
    let n = headers.len();
    if n < 4 || &headers[n - 3] != "kind" || &headers[n - 2] != "order" || &headers[n - 1] != "value" {
        return Err(bad("samples header must be x1,...,xD,kind,order,value"));
    }
    let d = n - 3;
    check_coordinate_headers(&headers, d)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| bad(format!("line {line}: {e}")))?;
        let coords = (0..d)
            .map(|c| parse_f64(&rec[c], line, &headers[c]))
            .collect::<Result<Vec<_>>>()?;
        let value = parse_f64(&rec[d + 2], line, "value")?;
        let sample = match &rec[d] {
            "value" => {
                if !rec[d + 1].is_empty() {
                    return Err(bad(format!("line {line}: value rows take an empty order")));
                }
                Sample::value(Point::new(coords), value)
            }
            "deriv" => Sample::derivative(Point::new(coords), parse_order(&rec[d + 1], d, line)?, value),
            other => return Err(bad(format!("line {line}: unknown kind '{other}'"))),
        };
        out.push(sample);
    }
    Ok(out)
}

/// Returns the dimension declared by the header alongside the requests.
pub fn read_queries<R: Read>(input: R) -> Result<(usize, Vec<DerivativeRequest>)> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(|e| bad(format!("queries header: {e}")))?.clone();
    let n = headers.len();
    if n < 2 || &headers[n - 1] != "order" {
        return Err(bad("queries header must be x1,...,xD,order"));
    }
    let d = n - 1;
    check_coordinate_headers(&headers, d)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| bad(format!("line {line}: {e}")))?;
        let coords = (0..d)
            .map(|c| parse_f64(&rec[c], line, &headers[c]))
            .collect::<Result<Vec<_>>>()?;
        let order = if rec[d].is_empty() {
            MultiIndex::zero(d)
        } else {
            parse_order(&rec[d], d, line)?
        };
        out.push(DerivativeRequest::new(Point::new(coords), order));
    }
    Ok((d, out))
}
