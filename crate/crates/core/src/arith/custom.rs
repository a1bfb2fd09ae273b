//! Custom arithmetic functions as `n,f` CSV.

use std::io::{Read, Write};
use std::path::Path;

use super::{FnId, FnTable};
use crate::error::{Error, Result};
use crate::scalar::Real;

const SPOT_CHECK_LIMIT: u64 = 100;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Reads a custom table: header `n,f`, then rows `1..=limit` in order.
///
/// When `completely_multiplicative` is declared, `f(1) = 1` and
/// `f(ab) = f(a)·f(b)` are spot-checked for `ab ≤ 100`.
pub fn parse_custom_csv<T: Real, R: Read>(reader: R, completely_multiplicative: bool) -> Result<FnTable<T>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "n" || &headers[1] != "f" {
        return Err(parse_err(1, "expected header `n,f`"));
    }
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 2 {
            return Err(parse_err(line, "expected two columns"));
        }
        let n: u64 = record[0].parse().map_err(|_| parse_err(line, format!("bad index {:?}", &record[0])))?;
        let expected = values.len() as u64 + 1;
        if n != expected {
            return Err(parse_err(line, format!("expected n = {expected}, found {n}")));
        }
        let v: f64 = record[1].parse().map_err(|_| parse_err(line, format!("bad value {:?}", &record[1])))?;
        if !v.is_finite() {
            return Err(parse_err(line, "non-finite value"));
        }
        values.push(T::of(v));
    }
    if values.is_empty() {
        return Err(parse_err(1, "no rows"));
    }
    let table = FnTable::from_values(FnId::Custom, values, completely_multiplicative)?;
    if completely_multiplicative {
        spot_check_multiplicative(&table)?;
    }
    Ok(table)
}

pub fn read_custom_csv<T: Real>(path: impl AsRef<Path>, completely_multiplicative: bool) -> Result<FnTable<T>> {
    let file = std::fs::File::open(path)?;
    parse_custom_csv(std::io::BufReader::new(file), completely_multiplicative)
}

fn spot_check_multiplicative<T: Real>(table: &FnTable<T>) -> Result<()> {
    let tol = T::of(1e-9);
    if (table.value(1) - T::one()).abs() > tol {
        return Err(Error::Spec("completely multiplicative function needs f(1) = 1".into()));
    }
    let limit = table.limit().min(SPOT_CHECK_LIMIT);
    for a in 2..=limit {
        for b in a..=limit / a {
            let lhs = table.value(a * b);
            let rhs = table.value(a) * table.value(b);
            if (lhs - rhs).abs() > tol * (T::one() + rhs.abs()) {
                return Err(Error::Spec(format!("f({}) ≠ f({a})·f({b}): not completely multiplicative", a * b)));
            }
        }
    }
    Ok(())
}

/// Writes a table in the same `n,f` format the reader accepts.
pub fn write_table_csv<T: Real, W: Write>(table: &FnTable<T>, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["n", "f"]).map_err(io)?;
    for (i, v) in table.values().iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.as_f64().to_string()]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
