//! Overlay image: the decoded line inside a one-pixel ink border, with every
//! stored separator drawn as a full-height ink column.

use std::path::Path;

use anyhow::{Context, Result};
use rleseg::format::read_rle;
use rleseg::pbm::write_pbm;
use rleseg::{decode, Bitmap, LineRecord};
use serde::Deserialize;

use crate::commands::{line_id, read_json};
use crate::errors::CliError;

#[derive(Deserialize)]
#[serde(untagged)]
enum SegFile {
    Many(Vec<LineRecord>),
    One(LineRecord),
}

pub fn separator_columns(record: &LineRecord) -> Vec<usize> {
    let mut xs: Vec<usize> = record.separators.iter().map(|s| s.x).collect();
    for word in record.chars.iter().flatten() {
        xs.extend(word.separators.iter().map(|s| s.x));
    }
    xs.sort_unstable();
    xs.dedup();
    xs
}

pub fn overlay(line: &Bitmap, separators: &[usize]) -> Result<Bitmap> {
    let (w, h) = (line.width(), line.height());
    let mut out = Bitmap::blank(w + 2, h + 2)?;
    out.fill_rect(0..h + 2, 0..w + 2, true);
    out.fill_rect(1..h + 1, 1..w + 1, false);
    for r in 0..h {
        for (c, &ink) in line.row(r).iter().enumerate() {
            if ink {
                out.set(r + 1, c + 1, true);
            }
        }
    }
    for &x in separators {
        if x >= w {
            return Err(CliError::Usage(format!("separator x = {x} outside line width {w}")).into());
        }
        out.fill_rect(0..h + 2, x + 1..x + 2, true);
    }
    Ok(out)
}

pub fn run(rle: &Path, seg_json: &Path, out: &Path, ascii: bool) -> Result<()> {
    let image = read_rle(rle).with_context(|| format!("reading {}", rle.display()))?;
    let records = match read_json::<SegFile>(seg_json)? {
        SegFile::Many(v) => v,
        SegFile::One(r) => vec![r],
    };
    let id = line_id(rle);
    let record = match records.iter().find(|r| r.line_id == id) {
        Some(r) => r,
        None if records.len() == 1 => &records[0],
        None => {
            return Err(CliError::Usage(format!("{} has no record for line {id:?}", seg_json.display())).into())
        }
    };
    let bitmap = overlay(&decode(&image)?, &separator_columns(record))?;
    write_pbm(&bitmap, out, ascii).with_context(|| format!("writing {}", out.display()))
}
