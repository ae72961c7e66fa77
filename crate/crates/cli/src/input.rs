//! Two-column numeric CSV/TSV ingestion.
//!
//! The first row is a header when any selected cell in it is not a number, or
//! when a column is selected by name. Every later row must be numeric in both
//! selected columns. Numbers use `.` as the decimal separator regardless of
//! locale; empty cells and non-finite values are errors.

use std::fs::File;
use std::io::{self, Read};
use std::str::FromStr;

use xicor::PairedSample;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl FromStr for Column {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.is_empty() {
            return Err("empty column selector".into());
        }
        Ok(s.parse::<usize>()
            .map(Column::Index)
            .unwrap_or_else(|_| Column::Name(s.to_string())))
    }
}

pub fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(format!(
            "delimiter must be a single ASCII character or 'tab', got '{s}'"
        )),
    }
}

pub fn read_source(path: &str) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    if path == "-" {
        io::stdin().read_to_end(&mut buf)?;
    } else {
        File::open(path)
            .map_err(|e| CliError::Io(format!("{path}: {e}")))?
            .read_to_end(&mut buf)?;
    }
    Ok(buf)
}

fn parse_number(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

fn resolve(column: &Column, header: Option<&csv::StringRecord>) -> Result<usize, CliError> {
    match column {
        Column::Index(i) => Ok(*i),
        Column::Name(name) => header
            .and_then(|h| h.iter().position(|f| f.trim() == name))
            .ok_or_else(|| CliError::Parse(format!("no column named '{name}' in the header"))),
    }
}

/// Reads the two selected columns as a sample.
pub fn read_sample(
    bytes: &[u8],
    delimiter: u8,
    x: &Column,
    y: &Column,
) -> Result<PairedSample, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .from_reader(bytes);
    let records = reader.records().collect::<Result<Vec<_>, _>>()?;
    let Some(first) = records.first() else {
        return Err(PairedSample::new(vec![], vec![]).unwrap_err().into());
    };

    let by_name = matches!(x, Column::Name(_)) || matches!(y, Column::Name(_));
    let first_is_header = by_name || {
        let cell = |c: &Column| match c {
            Column::Index(i) => first.get(*i).and_then(parse_number),
            Column::Name(_) => None,
        };
        cell(x).is_none() || cell(y).is_none()
    };
    let header = first_is_header.then_some(first);
    let xi = resolve(x, header)?;
    let yi = resolve(y, header)?;
    if xi == yi {
        return Err(CliError::Usage(
            "x and y must select different columns".into(),
        ));
    }

    let skip = usize::from(first_is_header);
    let mut xs = Vec::with_capacity(records.len());
    let mut ys = Vec::with_capacity(records.len());
    for (row, record) in records.iter().enumerate().skip(skip) {
        let line = row + 1;
        let cell = |i: usize| -> Result<f64, CliError> {
            let raw = record
                .get(i)
                .ok_or_else(|| CliError::Parse(format!("row {line} has no column {i}")))?;
            if raw.trim().is_empty() {
                return Err(CliError::Parse(format!("row {line} column {i} is empty")));
            }
            parse_number(raw).ok_or_else(|| {
                CliError::Parse(format!(
                    "row {line} column {i}: '{raw}' is not a finite number"
                ))
            })
        };
        xs.push(cell(xi)?);
        ys.push(cell(yi)?);
    }
    Ok(PairedSample::new(xs, ys)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str, x: &str, y: &str) -> Result<PairedSample, CliError> {
        read_sample(
            text.as_bytes(),
            b',',
            &x.parse().unwrap(),
            &y.parse().unwrap(),
        )
    }

    #[test]
    fn header_is_detected() {
        let s = read("x,y\n1,2\n3,4\n", "0", "1").unwrap();
        assert_eq!(s.xs(), &[1.0, 3.0]);
        let s = read("1,2\n3,4\n", "0", "1").unwrap();
        assert_eq!(s.ys(), &[2.0, 4.0]);
    }

    #[test]
    fn named_columns() {
        let s = read("a,b,c\n1,2,3\n4,5,6\n", "c", "a").unwrap();
        assert_eq!(s.xs(), &[3.0, 6.0]);
        assert_eq!(s.ys(), &[1.0, 4.0]);
        assert!(matches!(
            read("a,b\n1,2\n3,4\n", "z", "a"),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn malformed_rows() {
        assert!(matches!(
            read("x,y\n1,2\n3,abc\n", "0", "1"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            read("x,y\n1,2\n3,\n", "0", "1"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            read("x,y\n1,2\n3\n", "0", "1"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            read("x,y\n1,2\n3,inf\n", "0", "1"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            read("x,y\n1,2\n3,1,5\n", "0", "1"),
            Err(CliError::Parse(_))
        ));
        // Only the first row may be a header.
        assert!(matches!(
            read("1,2\nx,y\n", "0", "1"),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn same_column_twice() {
        assert!(matches!(
            read("1,2\n3,4\n", "1", "1"),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn too_few_rows() {
        assert_eq!(read("x,y\n1,2\n", "0", "1").unwrap_err().exit_code(), 4);
        assert_eq!(read("", "0", "1").unwrap_err().exit_code(), 4);
    }

    #[test]
    fn tab_delimiter_and_whitespace() {
        let s = read_sample(
            b"1\t 2\n3\t4 \n",
            parse_delimiter("tab").unwrap(),
            &Column::Index(0),
            &Column::Index(1),
        )
        .unwrap();
        assert_eq!(s.ys(), &[2.0, 4.0]);
        assert!(parse_delimiter("ab").is_err());
    }
}
