//! Character segmentation inside one word.
//!
//! The word's ink box is trimmed by `t` at top and bottom to drop ascenders
//! and descenders, the remaining rows are split into three bands, and the
//! top and bottom band occupancies are OR-ed. Touching strokes mostly meet
//! in the middle band, so gaps in the OR pattern are the cut candidates.
//! Negligible pieces are then merged away and oversized ones split at the
//! weakest middle-band column.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::projection::{components, Component, Frequency, Occupancy, Raster, Work};
use crate::rle::RleImage;
use crate::word_seg::{separator_point, SeparatorPoint};

const FLOOR_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoiParams {
    /// Fraction of the ink-box height trimmed from top and bottom.
    pub t: f64,
    /// Pieces shorter than `alpha × mean` are over-segmented.
    pub alpha: f64,
    /// Pieces longer than `beta × mean` are under-segmented.
    pub beta: f64,
}

impl Default for RoiParams {
    fn default() -> Self {
        Self {
            t: 0.2,
            alpha: 0.33,
            beta: 1.75,
        }
    }
}

impl RoiParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.t) {
            return Err(Error::InvalidParams(format!("t = {} must be in [0, 0.5)", self.t)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParams(format!("alpha = {} must be in (0, 1)", self.alpha)));
        }
        if !(self.beta > 1.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParams(format!("beta = {} must be > 1", self.beta)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roi {
    pub rows: Range<usize>,
    /// Trimming would have emptied the box, so the full box was kept.
    pub untrimmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandSet {
    pub top: Range<usize>,
    pub middle: Range<usize>,
    pub bottom: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repair {
    Removed(usize),
    Inserted(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Repaired {
    pub chars: Vec<Component>,
    /// One cut column between each pair of consecutive chars.
    pub cuts: Vec<usize>,
    pub repairs: Vec<Repair>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharSegmentation {
    pub chars: Vec<Component>,
    pub separators: Vec<SeparatorPoint>,
    pub repairs: Vec<Repair>,
    pub roi: Roi,
    pub bands: BandSet,
}

/// ROI rows for an ink box spanning `ink` rows.
pub fn roi_rows(ink: Range<usize>, t: f64) -> Roi {
    let h = ink.len();
    let trim = (t * h as f64 + FLOOR_EPS).floor() as usize;
    if 2 * trim >= h {
        return Roi {
            rows: ink,
            untrimmed: trim > 0,
        };
    }
    Roi {
        rows: ink.start + trim..ink.end - trim,
        untrimmed: false,
    }
}

fn ink_rows<R: Raster + ?Sized>(src: &R, cols: Range<usize>, work: &mut Work) -> Option<Range<usize>> {
    let first = (0..src.height()).find(|&r| src.row_has_ink(r, cols.clone(), work))?;
    let last = (first..src.height())
        .rev()
        .find(|&r| src.row_has_ink(r, cols.clone(), work))?;
    Some(first..last + 1)
}

pub fn roi(word: &RleImage, t: f64) -> Result<Roi> {
    let rows = ink_rows(word, 0..word.width, &mut Work::default()).ok_or(Error::EmptyWord)?;
    Ok(roi_rows(rows, t))
}

/// Three contiguous bands, remainder rows going to the top band first.
pub fn split_bands(roi: Range<usize>) -> BandSet {
    let n = roi.len();
    let base = n / 3;
    let rem = n % 3;
    let top_len = base + usize::from(rem >= 1);
    let mid_len = base + usize::from(rem >= 2);
    let a = roi.start + top_len;
    let b = a + mid_len;
    BandSet {
        top: roi.start..a,
        middle: a..b,
        bottom: b..roi.end,
    }
}

pub fn band_or(top: &Occupancy, bottom: &Occupancy) -> Result<Occupancy> {
    if top.width() != bottom.width() {
        return Err(Error::WidthMismatch {
            left: top.width(),
            right: bottom.width(),
        });
    }
    Ok(Occupancy {
        origin: top.origin,
        bits: top.bits.iter().zip(&bottom.bits).map(|(a, b)| a | b).collect(),
    })
}

/// Floor-midpoint of every background stretch lying between two ink stretches.
pub fn candidate_separators(or_occ: &Occupancy) -> Vec<usize> {
    components(or_occ)
        .windows(2)
        .map(|w| (w[0].x_max + w[1].x_min) / 2)
        .collect()
}

struct Group {
    span: Component,
    members: Range<usize>,
}

fn gap_between(a: &Component, b: &Component) -> usize {
    b.x_min - a.x_max - 1
}

/// Merges negligible pieces into their closer neighbour, then splits each
/// oversized input piece once at its lowest middle-band frequency column.
/// Both rules use the mean length of the input pieces.
pub fn repair(chars: &[Component], middle: &Frequency, params: &RoiParams) -> Repaired {
    let mut repairs = Vec::new();
    if chars.is_empty() {
        return Repaired {
            chars: Vec::new(),
            cuts: Vec::new(),
            repairs,
        };
    }
    let mean = chars.iter().map(|c| c.length as f64).sum::<f64>() / chars.len() as f64;
    let small = params.alpha * mean;
    let large = params.beta * mean;

    let mut groups: Vec<Group> = chars
        .iter()
        .enumerate()
        .map(|(i, &c)| Group {
            span: c,
            members: i..i + 1,
        })
        .collect();
    // cuts[k] separates groups[k] and groups[k + 1]
    let mut cuts: Vec<usize> = chars.windows(2).map(|w| (w[0].x_max + w[1].x_min) / 2).collect();

    while groups.len() > 1 {
        let Some(i) = groups.iter().position(|g| (g.span.length as f64) < small) else {
            break;
        };
        let merge_right = if i == 0 {
            true
        } else if i == groups.len() - 1 {
            false
        } else {
            let left = gap_between(&groups[i - 1].span, &groups[i].span);
            let right = gap_between(&groups[i].span, &groups[i + 1].span);
            right <= left
        };
        let (l, r) = if merge_right { (i, i + 1) } else { (i - 1, i) };
        repairs.push(Repair::Removed(cuts.remove(l)));
        let right = groups.remove(r);
        let left = &mut groups[l];
        left.span = left.span.span(right.span);
        left.members = left.members.start..right.members.end;
    }

    let mut out_chars = Vec::with_capacity(groups.len());
    let mut out_cuts = Vec::with_capacity(groups.len());
    for (gi, g) in groups.iter().enumerate() {
        let mut piece_start = g.span.x_min;
        for member in &chars[g.members.clone()] {
            if member.length as f64 <= large {
                continue;
            }
            if let Some(s) = best_split(*member, piece_start, g.span.x_max, middle, small) {
                repairs.push(Repair::Inserted(s));
                out_chars.push(Component::new(piece_start, s - 1));
                out_cuts.push(s);
                piece_start = s + 1;
            }
        }
        out_chars.push(Component::new(piece_start, g.span.x_max));
        if gi + 1 < groups.len() {
            out_cuts.push(cuts[gi]);
        }
    }

    Repaired {
        chars: out_chars,
        cuts: out_cuts,
        repairs,
    }
}

/// Lowest-frequency column strictly inside `member` such that the pieces
/// `[piece_start, s - 1]` and `[s + 1, group_end]` both stay at least
/// `min_len` long. Ties go to the leftmost column.
fn best_split(
    member: Component,
    piece_start: usize,
    group_end: usize,
    middle: &Frequency,
    min_len: f64,
) -> Option<usize> {
    let mut best: Option<(u32, usize)> = None;
    for s in member.x_min.max(piece_start) + 1..member.x_max {
        let left = s - piece_start;
        let right = group_end - s;
        if (left as f64) < min_len || (right as f64) < min_len {
            continue;
        }
        let f = middle.get(s);
        if best.is_none_or(|b| f < b.0) {
            best = Some((f, s));
        }
    }
    best.map(|(_, s)| s)
}

/// Character segmentation of the columns `cols` of `src`.
pub fn segment_chars_on<R: Raster + ?Sized>(
    src: &R,
    cols: Range<usize>,
    params: &RoiParams,
    work: &mut Work,
) -> Result<CharSegmentation> {
    params.validate()?;
    if cols.is_empty() || cols.end > src.width() {
        return Err(Error::EmptyRange);
    }
    let ink = ink_rows(src, cols.clone(), work).ok_or(Error::EmptyWord)?;
    let roi = roi_rows(ink.clone(), params.t);
    let bands = split_bands(roi.rows.clone());

    let band_occ = |rows: &Range<usize>, work: &mut Work| -> Result<Occupancy> {
        if rows.is_empty() {
            Ok(Occupancy::empty(cols.clone()))
        } else {
            src.occupancy_in(rows.clone(), cols.clone(), work)
        }
    };
    let top = band_occ(&bands.top, work)?;
    let bottom = band_occ(&bands.bottom, work)?;
    let mut pieces = components(&band_or(&top, &bottom)?);
    // ink confined to the middle band (or trimmed away) falls back to wider projections
    if pieces.is_empty() {
        pieces = components(&src.occupancy_in(roi.rows.clone(), cols.clone(), work)?);
    }
    if pieces.is_empty() {
        pieces = components(&src.occupancy_in(ink, cols.clone(), work)?);
    }

    let middle = src.frequency_in(bands.middle.clone(), cols, work);
    let repaired = repair(&pieces, &middle, params);
    let separators = repaired
        .cuts
        .iter()
        .map(|&x| separator_point(src, x, work))
        .collect::<Result<_>>()?;

    Ok(CharSegmentation {
        chars: repaired.chars,
        separators,
        repairs: repaired.repairs,
        roi,
        bands,
    })
}

pub fn segment_chars(word: &RleImage, params: &RoiParams) -> Result<CharSegmentation> {
    segment_chars_on(word, 0..word.width, params, &mut Work::default())
}
