//! `.rle` text format.
//!
//! ```text
//! RLE1 <width> <height>
//! <runs of row 0, background first, single-space separated>
//! ...
//! ```
//!
//! Exactly one space between fields, `\n` line endings, and a trailing
//! newline after the last row. Anything else is rejected.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rle::{RleImage, RleRow};

const MAGIC: &str = "RLE1";

fn parse_number(token: &str, line: usize) -> Result<usize> {
    if token.is_empty() {
        return Err(Error::parse(line, "empty field (stray whitespace?)"));
    }
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("invalid number {token:?}")));
    }
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("number out of range {token:?}")))
}

pub fn parse_rle(text: &str) -> Result<RleImage> {
    if text.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(Error::parse(
            text.lines().count().max(1),
            "missing trailing newline",
        ));
    };
    let mut lines = body.split('\n');

    let header = lines.next().unwrap_or_default();
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 3 || fields[0] != MAGIC {
        return Err(Error::parse(1, format!("expected `{MAGIC} <width> <height>`")));
    }
    let width = parse_number(fields[1], 1)?;
    let height = parse_number(fields[2], 1)?;
    if width == 0 || height == 0 {
        return Err(Error::parse(1, "width and height must be positive"));
    }

    let mut rows = Vec::with_capacity(height);
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if rows.len() == height {
            return Err(Error::parse(line_no, "more rows than the header declares"));
        }
        let runs = line
            .split(' ')
            .map(|t| parse_number(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        let row = RleRow::new(runs);
        row.validate(rows.len(), width).map_err(|e| match e {
            Error::MalformedRle { sum, width, .. } => Error::parse(
                line_no,
                format!("runs sum to {sum}, header width is {width}"),
            ),
            Error::ZeroRun { index, .. } => {
                Error::parse(line_no, format!("run {index} has zero length"))
            }
            other => other,
        })?;
        rows.push(row);
    }
    if rows.len() != height {
        return Err(Error::parse(
            rows.len() + 2,
            format!("expected {height} rows, found {}", rows.len()),
        ));
    }
    Ok(RleImage {
        width,
        height,
        rows,
    })
}

pub fn to_rle_string(rle: &RleImage) -> String {
    let mut out = format!("{MAGIC} {} {}\n", rle.width, rle.height);
    for row in &rle.rows {
        let mut first = true;
        for run in &row.runs {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&run.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn read_rle(path: impl AsRef<Path>) -> Result<RleImage> {
    let text = fs::read_to_string(path)?;
    parse_rle(&text)
}

pub fn write_rle(rle: &RleImage, path: impl AsRef<Path>) -> Result<()> {
    rle.validate()?;
    fs::write(path, to_rle_string(rle))?;
    Ok(())
}
