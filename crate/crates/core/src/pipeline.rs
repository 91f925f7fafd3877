//! End-to-end line driver and its JSON records.

use serde::{Deserialize, Serialize};

use crate::char_seg::{segment_chars_on, CharSegmentation, Repair, RoiParams};
use crate::error::Result;
use crate::projection::{Raster, Work};
use crate::word_seg::{segment_words_on, SeparatorPoint, ThresholdMode, WordSegmentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentMode {
    #[default]
    Words,
    Chars,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatorRecord {
    pub x: usize,
    /// `[row, run_index]` per row.
    pub runs: Vec<[usize; 2]>,
}

impl From<&SeparatorPoint> for SeparatorRecord {
    fn from(sep: &SeparatorPoint) -> Self {
        Self {
            x: sep.x_mid,
            runs: sep.per_row.iter().map(|c| [c.row, c.run_index]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepairRecord {
    pub op: String,
    pub x: usize,
}

impl From<&Repair> for RepairRecord {
    fn from(r: &Repair) -> Self {
        match *r {
            Repair::Removed(x) => Self { op: "removed".into(), x },
            Repair::Inserted(x) => Self { op: "inserted".into(), x },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl From<&RoiParams> for ParamsRecord {
    fn from(p: &RoiParams) -> Self {
        Self {
            t: p.t,
            alpha: p.alpha,
            beta: p.beta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordRecord {
    pub word_id: String,
    pub chars: Vec<[usize; 2]>,
    pub separators: Vec<SeparatorRecord>,
    pub repairs: Vec<RepairRecord>,
    pub params: ParamsRecord,
}

impl WordRecord {
    pub fn new(word_id: String, seg: &CharSegmentation, params: &RoiParams) -> Self {
        Self {
            word_id,
            chars: seg.chars.iter().map(|c| c.as_pair()).collect(),
            separators: seg.separators.iter().map(SeparatorRecord::from).collect(),
            repairs: seg.repairs.iter().map(RepairRecord::from).collect(),
            params: params.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineRecord {
    pub line_id: String,
    pub words: Vec<[usize; 2]>,
    pub separators: Vec<SeparatorRecord>,
    pub threshold: f64,
    /// Present in chars mode: one record per word, in line coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chars: Option<Vec<WordRecord>>,
}

impl LineRecord {
    pub fn new(line_id: String, seg: &WordSegmentation) -> Self {
        Self {
            line_id,
            words: seg.words.iter().map(|w| w.as_pair()).collect(),
            separators: seg.separators.iter().map(SeparatorRecord::from).collect(),
            threshold: seg.threshold_used,
            chars: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PipelineConfig {
    pub mode: SegmentMode,
    pub threshold: ThresholdMode,
    pub params: RoiParams,
}

/// Word segmentation, then (in chars mode) character segmentation of every
/// word window of the same line.
pub fn segment_line_on<R: Raster + ?Sized>(
    src: &R,
    line_id: &str,
    config: &PipelineConfig,
    work: &mut Work,
) -> Result<LineRecord> {
    let words = segment_words_on(src, config.threshold, work)?;
    let mut record = LineRecord::new(line_id.to_string(), &words);
    if config.mode == SegmentMode::Chars {
        let chars = words
            .words
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let seg = segment_chars_on(src, w.x_min..w.x_max + 1, &config.params, work)?;
                Ok(WordRecord::new(format!("{line_id}/w{k}"), &seg, &config.params))
            })
            .collect::<Result<Vec<_>>>()?;
        record.chars = Some(chars);
    }
    Ok(record)
}

pub fn segment_line<R: Raster + ?Sized>(src: &R, line_id: &str, config: &PipelineConfig) -> Result<LineRecord> {
    segment_line_on(src, line_id, config, &mut Work::default())
}
