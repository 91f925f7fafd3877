//! Horizontal spreads, column occupancy and x-axis components, computed from
//! runs without ever expanding a row into pixels.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::rle::{cumulative_runs, locate_run, RleImage, RleRow};

/// Inclusive column interval covered by one foreground run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spread {
    pub x_min: usize,
    pub x_max: usize,
}

/// Maximal inclusive column interval where the projection contains ink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub x_min: usize,
    pub x_max: usize,
    pub length: usize,
}

impl Component {
    pub fn new(x_min: usize, x_max: usize) -> Self {
        debug_assert!(x_min <= x_max);
        Self {
            x_min,
            x_max,
            length: x_max - x_min + 1,
        }
    }

    pub fn span(self, other: Component) -> Component {
        Component::new(self.x_min.min(other.x_min), self.x_max.max(other.x_max))
    }

    pub fn shifted(self, dx: usize) -> Component {
        Component::new(self.x_min + dx, self.x_max + dx)
    }

    pub fn as_pair(self) -> [usize; 2] {
        [self.x_min, self.x_max]
    }
}

/// Background interval between two components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    /// Last ink column of the left component.
    pub left: usize,
    /// First ink column of the right component.
    pub right: usize,
    pub width: usize,
}

impl Gap {
    pub fn between(a: &Component, b: &Component) -> Self {
        debug_assert!(b.x_min > a.x_max + 1);
        Self {
            left: a.x_max,
            right: b.x_min,
            width: b.x_min - a.x_max - 1,
        }
    }
}

/// Per-column ink flag over a column window starting at `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupancy {
    pub origin: usize,
    pub bits: Vec<bool>,
}

impl Occupancy {
    pub fn empty(cols: Range<usize>) -> Self {
        Self {
            origin: cols.start,
            bits: vec![false; cols.len()],
        }
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn columns(&self) -> Range<usize> {
        self.origin..self.origin + self.bits.len()
    }

    pub fn get(&self, x: usize) -> bool {
        x.checked_sub(self.origin)
            .and_then(|i| self.bits.get(i).copied())
            .unwrap_or(false)
    }
}

/// Per-column ink pixel count over a column window starting at `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frequency {
    pub origin: usize,
    pub counts: Vec<u32>,
}

impl Frequency {
    pub fn zeros(cols: Range<usize>) -> Self {
        Self {
            origin: cols.start,
            counts: vec![0; cols.len()],
        }
    }

    pub fn get(&self, x: usize) -> u32 {
        x.checked_sub(self.origin)
            .and_then(|i| self.counts.get(i).copied())
            .unwrap_or(0)
    }
}

/// Instrumented cost of projection work.
///
/// `cells` counts run visits for the compressed path and pixel visits for the
/// pixel path; `row_scans` counts rows touched.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Work {
    pub row_scans: u64,
    pub cells: u64,
}

impl std::ops::AddAssign for Work {
    fn add_assign(&mut self, rhs: Self) {
        self.row_scans += rhs.row_scans;
        self.cells += rhs.cells;
    }
}

/// The projection layer the segmentation pipelines are written against.
///
/// [`RleImage`] implements it by walking runs; the pixel-domain baseline
/// implements it by scanning pixels. Everything above this trait is shared.
pub trait Raster {
    fn width(&self) -> usize;
    fn height(&self) -> usize;

    /// Column occupancy of `rows`, restricted to `cols`.
    fn occupancy_in(
        &self,
        rows: Range<usize>,
        cols: Range<usize>,
        work: &mut Work,
    ) -> Result<Occupancy>;

    /// Ink pixel count per column of `rows`, restricted to `cols`.
    fn frequency_in(&self, rows: Range<usize>, cols: Range<usize>, work: &mut Work) -> Frequency;

    fn row_has_ink(&self, row: usize, cols: Range<usize>, work: &mut Work) -> bool;

    /// Run index (background-first convention) of column `x` in `row`.
    fn run_index_at(&self, row: usize, x: usize, work: &mut Work) -> Result<usize>;
}

pub(crate) fn check_window(rows: &Range<usize>, cols: &Range<usize>, h: usize, w: usize) -> Result<()> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::EmptyRange);
    }
    if rows.end > h {
        return Err(Error::OutOfBounds { x: rows.end - 1, width: h });
    }
    if cols.end > w {
        return Err(Error::OutOfBounds { x: cols.end - 1, width: w });
    }
    Ok(())
}

/// Foreground spans of `row` clipped to `cols`, as half-open column ranges.
/// Stops at the first run past the window.
fn clipped_spans(row: &RleRow, cols: Range<usize>, work: &mut Work) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    work.row_scans += 1;
    for (j, &run) in row.runs.iter().enumerate() {
        if start >= cols.end {
            break;
        }
        work.cells += 1;
        let end = start + run;
        if j % 2 == 1 {
            let a = start.max(cols.start);
            let b = end.min(cols.end);
            if a < b {
                out.push(a..b);
            }
        }
        start = end;
    }
    out
}

fn accumulate(
    rle: &RleImage,
    rows: Range<usize>,
    cols: Range<usize>,
    work: &mut Work,
) -> Vec<i64> {
    let origin = cols.start;
    let mut diff = vec![0i64; cols.len() + 1];
    for r in rows {
        for span in clipped_spans(&rle.rows[r], cols.clone(), work) {
            diff[span.start - origin] += 1;
            diff[span.end - origin] -= 1;
        }
    }
    let mut acc = 0;
    diff.pop();
    for d in &mut diff {
        acc += *d;
        *d = acc;
    }
    diff
}

impl Raster for RleImage {
    fn width(&self) -> usize {
        self.width
    }

    fn height(&self) -> usize {
        self.height
    }

    fn occupancy_in(
        &self,
        rows: Range<usize>,
        cols: Range<usize>,
        work: &mut Work,
    ) -> Result<Occupancy> {
        check_window(&rows, &cols, self.height, self.width)?;
        let origin = cols.start;
        let counts = accumulate(self, rows, cols, work);
        Ok(Occupancy {
            origin,
            bits: counts.into_iter().map(|c| c > 0).collect(),
        })
    }

    fn frequency_in(&self, rows: Range<usize>, cols: Range<usize>, work: &mut Work) -> Frequency {
        if rows.is_empty() || cols.is_empty() {
            return Frequency::zeros(cols);
        }
        let origin = cols.start;
        let counts = accumulate(self, rows, cols, work);
        Frequency {
            origin,
            counts: counts.into_iter().map(|c| c as u32).collect(),
        }
    }

    fn row_has_ink(&self, row: usize, cols: Range<usize>, work: &mut Work) -> bool {
        !clipped_spans(&self.rows[row], cols, work).is_empty()
    }

    fn run_index_at(&self, row: usize, x: usize, work: &mut Work) -> Result<usize> {
        let runs = &self.rows[row];
        let j = locate_run(runs, x)?;
        work.row_scans += 1;
        work.cells += j as u64 + 1;
        Ok(j)
    }
}

/// One [`Spread`] per foreground run, from the cumulative runs: the run ends
/// at `CR(j) - 1` and starts `runs[j] - 1` columns earlier.
pub fn row_spreads(row: &RleRow) -> Vec<Spread> {
    cumulative_runs(row)
        .into_iter()
        .zip(&row.runs)
        .enumerate()
        .filter(|&(j, (_, &run))| j % 2 == 1 && run > 0)
        .map(|(_, (cr, &run))| {
            let x_max = cr - 1;
            Spread {
                x_min: x_max + 1 - run,
                x_max,
            }
        })
        .collect()
}

/// Full-width column occupancy of `rows`.
pub fn occupancy(rle: &RleImage, rows: Range<usize>) -> Result<Occupancy> {
    occupancy_counted(rle, rows, &mut Work::default())
}

pub fn occupancy_counted(rle: &RleImage, rows: Range<usize>, work: &mut Work) -> Result<Occupancy> {
    rle.occupancy_in(rows, 0..rle.width, work)
}

/// Maximal runs of set bits, in absolute columns.
pub fn components(occ: &Occupancy) -> Vec<Component> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, &b) in occ.bits.iter().enumerate() {
        match (b, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(Component::new(occ.origin + s, occ.origin + i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Component::new(occ.origin + s, occ.origin + occ.bits.len() - 1));
    }
    out
}

pub fn gaps(comps: &[Component]) -> Vec<Gap> {
    comps.windows(2).map(|w| Gap::between(&w[0], &w[1])).collect()
}
