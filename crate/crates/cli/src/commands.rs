use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use rleseg::bench::{bench_line, csv_row, csv_total, CSV_HEADER};
use rleseg::format::{read_rle, write_rle};
use rleseg::pbm::{read_pbm, write_pbm};
use rleseg::synth::{synth_corpus, write_corpus, SynthParams};
use rleseg::{decode as decode_rle, encode as encode_bitmap, segment_line, EvalMode, GroundTruthLine, LineRecord};
use rleseg::{PipelineConfig, SegmentMode};
use serde::de::DeserializeOwned;

use crate::config::Settings;
use crate::errors::CliError;

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn encode(pbm: &Path, rle: &Path) -> Result<()> {
    let bitmap = read_pbm(pbm).with_context(|| format!("reading {}", pbm.display()))?;
    write_rle(&encode_bitmap(&bitmap), rle).with_context(|| format!("writing {}", rle.display()))
}

pub fn decode(rle: &Path, pbm: &Path, ascii: bool) -> Result<()> {
    let image = read_rle(rle).with_context(|| format!("reading {}", rle.display()))?;
    let bitmap = decode_rle(&image)?;
    write_pbm(&bitmap, pbm, ascii).with_context(|| format!("writing {}", pbm.display()))
}

pub fn line_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// A single `.rle` file, or a manifest of line files relative to the manifest's directory.
fn line_paths(input: &Path) -> Result<Vec<PathBuf>> {
    if input.extension().is_some_and(|e| e == "rle") {
        return Ok(vec![input.to_path_buf()]);
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading manifest {}", input.display()))?;
    let base = input.parent().unwrap_or(Path::new(""));
    let paths: Vec<PathBuf> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect();
    if paths.is_empty() {
        return Err(CliError::EmptyInput(format!("manifest {} lists no lines", input.display())).into());
    }
    Ok(paths)
}

fn pipeline(mode: SegmentMode, settings: &Settings) -> PipelineConfig {
    PipelineConfig {
        mode,
        threshold: settings.threshold,
        params: settings.roi_params(),
    }
}

pub fn segment(input: &Path, mode: SegmentMode, settings: &Settings, out: Option<&Path>) -> Result<()> {
    let config = pipeline(mode, settings);
    let records: Vec<Result<LineRecord>> = line_paths(input)?
        .par_iter()
        .map(|path| {
            let image = read_rle(path).with_context(|| format!("reading {}", path.display()))?;
            segment_line(&image, &line_id(path), &config).with_context(|| format!("segmenting {}", path.display()))
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    emit(&to_json(&records)?, out)
}

pub fn evaluate(pred: &Path, truth: &Path, mode: EvalMode, settings: &Settings, out: Option<&Path>) -> Result<()> {
    let preds: Vec<LineRecord> = read_json(pred)?;
    let truth: Vec<GroundTruthLine> = read_json(truth)?;
    let report = rleseg::evaluate(&preds, &truth, mode, settings.overlap_min)?;
    emit(&to_json(&report)?, out)
}

pub fn bench(dir: &Path, repeat: usize, mode: SegmentMode, settings: &Settings, out: Option<&Path>) -> Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "rle"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::EmptyInput(format!("no .rle files in {}", dir.display())).into());
    }
    let config = pipeline(mode, settings);
    let mut csv = format!("{CSV_HEADER}\n");
    let mut rows = Vec::with_capacity(files.len());
    // sequential on purpose: parallel runs would distort the timings
    for path in &files {
        let image = read_rle(path).with_context(|| format!("reading {}", path.display()))?;
        let row = bench_line(&image, &config, repeat)?;
        csv.push_str(&csv_row(&line_id(path), &row));
        csv.push('\n');
        rows.push(row);
    }
    csv.push_str(&csv_total(&rows));
    csv.push('\n');
    emit(&csv, out)
}

pub fn synth(dir: &Path, params: &SynthParams) -> Result<()> {
    let corpus = synth_corpus(params)?;
    write_corpus(dir, &corpus).with_context(|| format!("writing corpus to {}", dir.display()))
}
