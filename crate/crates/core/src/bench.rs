//! Wall-clock and work-counter comparison of the compressed and pixel paths.

use std::time::Instant;

use crate::error::Result;
use crate::pipeline::{segment_line_on, PipelineConfig};
use crate::projection::Work;
use crate::rle::{decode, RleImage};

#[derive(Debug, Clone, PartialEq)]
pub struct Timing {
    /// One wall time per repetition, in seconds.
    pub samples: Vec<f64>,
    pub work: Work,
}

impl Timing {
    pub fn total(&self) -> f64 {
        self.samples.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.total() / self.samples.len() as f64
    }

    /// Sample variance; zero for a single sample.
    pub fn variance(&self) -> f64 {
        let n = self.samples.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        self.samples.iter().map(|s| (s - m).powi(2)).sum::<f64>() / (n - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub width: usize,
    pub height: usize,
    pub runs: usize,
    pub compression_ratio: f64,
    pub cdp: Timing,
    pub pdp: Timing,
    /// Both paths produced the same records.
    pub agree: bool,
}

/// Runs the full pipeline `repeat` times on each path. Decoding for the pixel
/// path happens once, outside the timed region.
pub fn bench_line(rle: &RleImage, config: &PipelineConfig, repeat: usize) -> Result<BenchRow> {
    let repeat = repeat.max(1);
    let bitmap = decode(rle)?;

    let mut cdp = Timing { samples: Vec::with_capacity(repeat), work: Work::default() };
    let mut cdp_out = None;
    for _ in 0..repeat {
        let mut work = Work::default();
        let start = Instant::now();
        let out = segment_line_on(rle, "bench", config, &mut work);
        cdp.samples.push(start.elapsed().as_secs_f64());
        cdp.work = work;
        cdp_out = Some(out.ok());
    }

    let mut pdp = Timing { samples: Vec::with_capacity(repeat), work: Work::default() };
    let mut pdp_out = None;
    for _ in 0..repeat {
        let mut work = Work::default();
        let start = Instant::now();
        let out = segment_line_on(&bitmap, "bench", config, &mut work);
        pdp.samples.push(start.elapsed().as_secs_f64());
        pdp.work = work;
        pdp_out = Some(out.ok());
    }

    Ok(BenchRow {
        width: rle.width,
        height: rle.height,
        runs: rle.run_count(),
        compression_ratio: rle.compression_ratio(),
        cdp,
        pdp,
        agree: cdp_out == pdp_out,
    })
}

pub const CSV_HEADER: &str = "file,width,height,runs,compression_ratio,cdp_mean_ms,cdp_var_ms2,pdp_mean_ms,pdp_var_ms2,cdp_work,pdp_work,speedup,agree";

pub fn csv_row(name: &str, row: &BenchRow) -> String {
    let ms = 1e3;
    format!(
        "{name},{},{},{},{:.3},{:.4},{:.6},{:.4},{:.6},{},{},{:.3},{}",
        row.width,
        row.height,
        row.runs,
        row.compression_ratio,
        row.cdp.mean() * ms,
        row.cdp.variance() * ms * ms,
        row.pdp.mean() * ms,
        row.pdp.variance() * ms * ms,
        row.cdp.work.cells,
        row.pdp.work.cells,
        row.pdp.mean() / row.cdp.mean().max(f64::MIN_POSITIVE),
        row.agree,
    )
}

/// Aggregate line summing times and work over all rows.
pub fn csv_total(rows: &[BenchRow]) -> String {
    let cdp: f64 = rows.iter().map(|r| r.cdp.mean()).sum();
    let pdp: f64 = rows.iter().map(|r| r.pdp.mean()).sum();
    let runs: usize = rows.iter().map(|r| r.runs).sum();
    let pixels: usize = rows.iter().map(|r| r.width * r.height).sum();
    format!(
        "TOTAL,,,{runs},{:.3},{:.4},,{:.4},,{},{},{:.3},{}",
        pixels as f64 / runs.max(1) as f64,
        cdp * 1e3,
        pdp * 1e3,
        rows.iter().map(|r| r.cdp.work.cells).sum::<u64>(),
        rows.iter().map(|r| r.pdp.work.cells).sum::<u64>(),
        pdp / cdp.max(f64::MIN_POSITIVE),
        rows.iter().all(|r| r.agree),
    )
}
