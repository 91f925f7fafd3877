//! Word segmentation of a single text line.
//!
//! Components of the line's column occupancy are separated by gaps; gaps
//! wider than the threshold (by default the mean gap width of the line)
//! separate words, the rest are intra-word. Each inter-word cut is reported
//! both as a column and as a run index in every row of the line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::projection::{components, gaps, Component, Gap, Raster, Work};
use crate::rle::{RleImage, RunCoordinate};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ThresholdMode {
    /// Mean gap width of the line.
    #[default]
    Auto,
    /// Fixed width in columns.
    Fixed(f64),
    /// `factor × mean`.
    Scale(f64),
}

impl FromStr for ThresholdMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("threshold mode {s:?}: expected auto, fixed:<w> or scale:<f>"));
        let value = |v: &str| -> Result<f64> {
            let v: f64 = v.parse().map_err(|_| bad())?;
            if v.is_finite() && v >= 0.0 {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        match s.split_once(':') {
            None if s == "auto" => Ok(ThresholdMode::Auto),
            Some(("fixed", v)) => Ok(ThresholdMode::Fixed(value(v)?)),
            Some(("scale", v)) => Ok(ThresholdMode::Scale(value(v)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdMode::Auto => write!(f, "auto"),
            ThresholdMode::Fixed(v) => write!(f, "fixed:{v}"),
            ThresholdMode::Scale(v) => write!(f, "scale:{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapLabel {
    InterWord,
    IntraWord,
}

/// A cut column located in the runs of every row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorPoint {
    pub x_mid: usize,
    pub per_row: Vec<RunCoordinate>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordSegmentation {
    /// Raw x-axis components the words were grouped from.
    pub components: Vec<Component>,
    pub words: Vec<Component>,
    pub separators: Vec<SeparatorPoint>,
    pub threshold_used: f64,
}

fn mean_width(gaps: &[Gap]) -> Result<f64> {
    if gaps.is_empty() {
        return Err(Error::NoGaps);
    }
    Ok(gaps.iter().map(|g| g.width as f64).sum::<f64>() / gaps.len() as f64)
}

pub fn select_threshold(gaps: &[Gap], mode: ThresholdMode) -> Result<f64> {
    let t = match mode {
        ThresholdMode::Auto => mean_width(gaps)?,
        ThresholdMode::Scale(factor) => factor * mean_width(gaps)?,
        ThresholdMode::Fixed(v) => v,
    };
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParams(format!("threshold {t} must be non-negative")));
    }
    Ok(t)
}

pub fn classify_gaps(gaps: &[Gap], threshold: f64) -> Vec<GapLabel> {
    gaps.iter()
        .map(|g| {
            if g.width as f64 > threshold {
                GapLabel::InterWord
            } else {
                GapLabel::IntraWord
            }
        })
        .collect()
}

pub fn gap_midpoint(gap: &Gap) -> usize {
    (gap.left + gap.right) / 2
}

/// Locates column `x` in every row of `src`.
pub fn separator_point<R: Raster + ?Sized>(src: &R, x: usize, work: &mut Work) -> Result<SeparatorPoint> {
    let per_row = (0..src.height())
        .map(|row| {
            Ok(RunCoordinate {
                row,
                run_index: src.run_index_at(row, x, work)?,
                x,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SeparatorPoint { x_mid: x, per_row })
}

/// Groups components into words. Returns the words, the inter-word gaps and
/// the threshold that was applied. A line without gaps is a single word.
pub fn group_words(comps: &[Component], mode: ThresholdMode) -> Result<(Vec<Component>, Vec<Gap>, f64)> {
    let gs = gaps(comps);
    let threshold = match select_threshold(&gs, mode) {
        Ok(t) => t,
        Err(Error::NoGaps) => 0.0,
        Err(e) => return Err(e),
    };
    let labels = classify_gaps(&gs, threshold);

    let mut words = Vec::new();
    let mut inter = Vec::new();
    let Some(&first) = comps.first() else {
        return Ok((words, inter, threshold));
    };
    let mut current = first;
    for ((comp, gap), label) in comps[1..].iter().zip(&gs).zip(labels) {
        match label {
            GapLabel::IntraWord => current = current.span(*comp),
            GapLabel::InterWord => {
                words.push(current);
                inter.push(*gap);
                current = *comp;
            }
        }
    }
    words.push(current);
    Ok((words, inter, threshold))
}

/// Word segmentation over any projection layer.
pub fn segment_words_on<R: Raster + ?Sized>(
    src: &R,
    mode: ThresholdMode,
    work: &mut Work,
) -> Result<WordSegmentation> {
    let occ = src.occupancy_in(0..src.height(), 0..src.width(), work)?;
    let comps = components(&occ);
    if comps.is_empty() {
        return Err(Error::EmptyLine);
    }
    let (words, inter, threshold_used) = group_words(&comps, mode)?;
    let separators = inter
        .iter()
        .map(|g| separator_point(src, gap_midpoint(g), work))
        .collect::<Result<_>>()?;
    Ok(WordSegmentation {
        components: comps,
        words,
        separators,
        threshold_used,
    })
}

pub fn segment_words(line: &RleImage, mode: ThresholdMode) -> Result<WordSegmentation> {
    segment_words_on(line, mode, &mut Work::default())
}
