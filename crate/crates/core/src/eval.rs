//! One-to-one matching of predicted segments against ground truth, and the
//! accuracy rate: matched / total ground-truth entities × 100.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::LineRecord;

/// Inclusive `[x_min, x_max]`.
pub type Interval = [usize; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruthLine {
    pub line_id: String,
    pub words: Vec<Interval>,
    /// Character intervals per word, in line coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chars: Option<Vec<Vec<Interval>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchResult {
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_pred: usize,
    pub unmatched_truth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyReport {
    pub total_truth: usize,
    pub one_to_one: usize,
    pub ar_percent: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    Word,
    Char,
}

fn len(a: Interval) -> usize {
    a[1] + 1 - a[0]
}

fn intersection(a: Interval, b: Interval) -> usize {
    let lo = a[0].max(b[0]);
    let hi = a[1].min(b[1]);
    if lo > hi {
        0
    } else {
        hi - lo + 1
    }
}

/// `|p ∩ t| ≥ overlap_min × max(|p|, |t|)`.
pub fn qualifies(p: Interval, t: Interval, overlap_min: f64) -> bool {
    let inter = intersection(p, t);
    inter > 0 && inter as f64 >= overlap_min * len(p).max(len(t)) as f64
}

pub fn check_overlap(overlap_min: f64) -> Result<()> {
    if overlap_min > 0.0 && overlap_min <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "overlap_min = {overlap_min} must be in (0, 1]"
        )))
    }
}

/// Greedy left-to-right pairing of two sorted, disjoint interval lists.
pub fn match_segments(pred: &[Interval], truth: &[Interval], overlap_min: f64) -> MatchResult {
    let mut pairs = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < pred.len() && j < truth.len() {
        if qualifies(pred[i], truth[j], overlap_min) {
            pairs.push((i, j));
            i += 1;
            j += 1;
        } else {
            let (pe, te) = (pred[i][1], truth[j][1]);
            if pe <= te {
                i += 1;
            }
            if te <= pe {
                j += 1;
            }
        }
    }
    MatchResult {
        unmatched_pred: pred.len() - pairs.len(),
        unmatched_truth: truth.len() - pairs.len(),
        pairs,
    }
}

pub fn accuracy_rate(m: &MatchResult, total_truth: usize) -> Result<AccuracyReport> {
    if total_truth == 0 {
        return Err(Error::EmptyGroundTruth);
    }
    let one_to_one = m.pairs.len();
    Ok(AccuracyReport {
        total_truth,
        one_to_one,
        ar_percent: 100.0 * one_to_one as f64 / total_truth as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineScore {
    pub line_id: String,
    pub total: usize,
    pub matched: usize,
    pub ar: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mode: EvalMode,
    pub total: usize,
    pub matched: usize,
    pub ar: f64,
    pub lines: Vec<LineScore>,
}

fn predicted(record: &LineRecord, mode: EvalMode) -> Vec<Interval> {
    match mode {
        EvalMode::Word => record.words.clone(),
        EvalMode::Char => record
            .chars
            .iter()
            .flatten()
            .flat_map(|w| w.chars.iter().copied())
            .collect(),
    }
}

fn expected(line: &GroundTruthLine, mode: EvalMode) -> Vec<Interval> {
    match mode {
        EvalMode::Word => line.words.clone(),
        EvalMode::Char => line.chars.iter().flatten().flatten().copied().collect(),
    }
}

/// Scores every ground-truth line; lines missing from `preds` count as fully unmatched.
pub fn evaluate(
    preds: &[LineRecord],
    truth: &[GroundTruthLine],
    mode: EvalMode,
    overlap_min: f64,
) -> Result<EvalReport> {
    check_overlap(overlap_min)?;
    let by_id: HashMap<&str, &LineRecord> = preds.iter().map(|p| (p.line_id.as_str(), p)).collect();
    let mut lines = Vec::with_capacity(truth.len());
    let (mut total, mut matched) = (0, 0);
    for line in truth {
        let want = expected(line, mode);
        let got = by_id.get(line.line_id.as_str()).map(|p| predicted(p, mode)).unwrap_or_default();
        let m = match_segments(&got, &want, overlap_min);
        let ar = accuracy_rate(&m, want.len()).ok().map(|r| r.ar_percent);
        total += want.len();
        matched += m.pairs.len();
        lines.push(LineScore {
            line_id: line.line_id.clone(),
            total: want.len(),
            matched: m.pairs.len(),
            ar,
        });
    }
    if total == 0 {
        return Err(Error::EmptyGroundTruth);
    }
    Ok(EvalReport {
        mode,
        total,
        matched,
        ar: 100.0 * matched as f64 / total as f64,
        lines,
    })
}
