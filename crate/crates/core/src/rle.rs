//! Run-length data model.
//!
//! Every row is stored as alternating background/foreground run lengths,
//! background first. A row that starts with ink carries an explicit leading
//! zero, so the parity of a run index always tells its colour: even indices
//! are background, odd indices are foreground.

use crate::error::{Error, Result};

/// Uncompressed binary image, row-major, `true` = ink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl Bitmap {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidBitmap(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidBitmap(format!(
                "expected {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// All-background bitmap.
    pub fn blank(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.pixels[row * self.width + col] = value;
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.pixels[row * self.width..(row + 1) * self.width]
    }

    /// Fills the half-open rectangle `rows × cols` with `value`, clipped to the image.
    pub fn fill_rect(
        &mut self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
        value: bool,
    ) {
        for r in rows.start..rows.end.min(self.height) {
            for c in cols.start..cols.end.min(self.width) {
                self.set(r, c, value);
            }
        }
    }
}

/// One row of runs, background first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RleRow {
    pub runs: Vec<usize>,
}

impl RleRow {
    pub fn new(runs: Vec<usize>) -> Self {
        Self { runs }
    }

    pub fn width(&self) -> usize {
        self.runs.iter().sum()
    }

    /// Checks the run conventions against the expected row width.
    pub fn validate(&self, row: usize, width: usize) -> Result<()> {
        if let Some(index) = self
            .runs
            .iter()
            .enumerate()
            .skip(1)
            .find_map(|(i, &r)| (r == 0).then_some(i))
        {
            return Err(Error::ZeroRun { row, index });
        }
        let sum = self.width();
        if sum != width || self.runs.is_empty() {
            return Err(Error::MalformedRle { row, sum, width });
        }
        Ok(())
    }

    pub fn encode(pixels: &[bool]) -> Self {
        let mut runs = Vec::new();
        let mut colour = false;
        let mut length = 0;
        for &p in pixels {
            if p != colour {
                runs.push(length);
                colour = p;
                length = 0;
            }
            length += 1;
        }
        runs.push(length);
        Self { runs }
    }

    pub fn is_blank(&self) -> bool {
        self.runs.len() <= 1
    }
}

/// A run-length encoded binary image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RleImage {
    pub width: usize,
    pub height: usize,
    pub rows: Vec<RleRow>,
}

impl RleImage {
    /// Builds an image and checks every row against `width`.
    pub fn new(width: usize, rows: Vec<RleRow>) -> Result<Self> {
        let image = Self {
            width,
            height: rows.len(),
            rows,
        };
        image.validate()?;
        Ok(image)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidBitmap(format!(
                "dimensions must be positive, got {}x{}",
                self.width, self.height
            )));
        }
        if self.rows.len() != self.height {
            return Err(Error::InvalidBitmap(format!(
                "header says {} rows, found {}",
                self.height,
                self.rows.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            row.validate(i, self.width)?;
        }
        Ok(())
    }

    /// Total number of stored run entries, including leading zero runs.
    pub fn run_count(&self) -> usize {
        self.rows.iter().map(|r| r.runs.len()).sum()
    }

    /// Pixels per stored run.
    pub fn compression_ratio(&self) -> f64 {
        (self.width * self.height) as f64 / self.run_count() as f64
    }

    pub fn has_ink(&self) -> bool {
        self.rows.iter().any(|r| !r.is_blank())
    }
}

/// Where a column falls within one row's runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunCoordinate {
    pub row: usize,
    pub run_index: usize,
    pub x: usize,
}

pub fn encode(bitmap: &Bitmap) -> RleImage {
    let rows = (0..bitmap.height())
        .map(|r| RleRow::encode(bitmap.row(r)))
        .collect();
    RleImage {
        width: bitmap.width(),
        height: bitmap.height(),
        rows,
    }
}

pub fn decode(rle: &RleImage) -> Result<Bitmap> {
    rle.validate()?;
    let mut pixels = Vec::with_capacity(rle.width * rle.height);
    for row in &rle.rows {
        for (j, &run) in row.runs.iter().enumerate() {
            pixels.extend(std::iter::repeat_n(j % 2 == 1, run));
        }
    }
    Bitmap::new(rle.width, rle.height, pixels)
}

/// Prefix sums of the run lengths: `out[j]` is the column just past run `j`.
pub fn cumulative_runs(row: &RleRow) -> Vec<usize> {
    row.runs
        .iter()
        .scan(0, |acc, &r| {
            *acc += r;
            Some(*acc)
        })
        .collect()
}

/// Index of the run covering column `x`, i.e. the `j` with
/// `CR(j) - runs[j] <= x < CR(j)`.
pub fn locate_run(row: &RleRow, x: usize) -> Result<usize> {
    let mut end = 0;
    for (j, &run) in row.runs.iter().enumerate() {
        end += run;
        if x < end && run > 0 {
            return Ok(j);
        }
    }
    Err(Error::OutOfBounds { x, width: end })
}
