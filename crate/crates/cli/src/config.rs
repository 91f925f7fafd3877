//! Settings resolved from defaults, an optional key=value file, then flags.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rleseg::{RoiParams, ThresholdMode};

use crate::errors::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub threshold: ThresholdMode,
    pub roi_t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub overlap_min: f64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        let roi = RoiParams::default();
        Self {
            threshold: ThresholdMode::Auto,
            roi_t: roi.t,
            alpha: roi.alpha,
            beta: roi.beta,
            overlap_min: 0.9,
            seed: 42,
        }
    }
}

/// Values given on the command line; `None` leaves the file or default in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub threshold: Option<ThresholdMode>,
    pub roi_t: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub overlap_min: Option<f64>,
    pub seed: Option<u64>,
}

fn value<T: std::str::FromStr>(key: &str, raw: &str, line: usize) -> Result<T> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value {raw:?} for {key}")).into())
}

impl Settings {
    /// Applies `key = value` lines. Blank lines and `#` comments are skipped;
    /// keys may use `-` or `_`.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, val)) = body.split_once('=') else {
                return Err(CliError::Usage(format!("config line {line}: expected key = value")).into());
            };
            let key = key.trim().replace('-', "_");
            let val = val.trim();
            match key.as_str() {
                "threshold" => {
                    self.threshold = val
                        .parse()
                        .map_err(|e: rleseg::Error| CliError::Usage(format!("config line {line}: {e}")))?
                }
                "roi_t" => self.roi_t = value(&key, val, line)?,
                "alpha" => self.alpha = value(&key, val, line)?,
                "beta" => self.beta = value(&key, val, line)?,
                "overlap_min" | "overlap" => self.overlap_min = value(&key, val, line)?,
                "seed" => self.seed = value(&key, val, line)?,
                other => return Err(CliError::Usage(format!("config line {line}: unknown key {other:?}")).into()),
            }
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(v) = o.threshold {
            self.threshold = v;
        }
        if let Some(v) = o.roi_t {
            self.roi_t = v;
        }
        if let Some(v) = o.alpha {
            self.alpha = v;
        }
        if let Some(v) = o.beta {
            self.beta = v;
        }
        if let Some(v) = o.overlap_min {
            self.overlap_min = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
    }

    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut s = Settings::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            s.apply_file_text(&text)?;
        }
        s.apply_overrides(overrides);
        s.roi_params().validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if !(s.overlap_min > 0.0 && s.overlap_min <= 1.0) {
            return Err(CliError::Usage(format!("overlap {} must be in (0, 1]", s.overlap_min)).into());
        }
        Ok(s)
    }

    pub fn roi_params(&self) -> RoiParams {
        RoiParams {
            t: self.roi_t,
            alpha: self.alpha,
            beta: self.beta,
        }
    }
}
