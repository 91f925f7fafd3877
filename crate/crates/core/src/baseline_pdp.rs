//! Pixel-domain baseline: the same pipelines driven by a projection layer that
//! scans every pixel of the decoded bitmap. Used as the correctness oracle
//! and as the timing reference for the compressed path.

use std::ops::Range;

use crate::char_seg::{segment_chars_on, CharSegmentation, RoiParams};
use crate::error::Result;
use crate::projection::{check_window, Frequency, Occupancy, Raster, Work};
use crate::rle::Bitmap;
use crate::word_seg::{segment_words_on, ThresholdMode, WordSegmentation};

impl Raster for Bitmap {
    fn width(&self) -> usize {
        Bitmap::width(self)
    }

    fn height(&self) -> usize {
        Bitmap::height(self)
    }

    fn occupancy_in(
        &self,
        rows: Range<usize>,
        cols: Range<usize>,
        work: &mut Work,
    ) -> Result<Occupancy> {
        check_window(&rows, &cols, self.height(), self.width())?;
        let mut bits = vec![false; cols.len()];
        for r in rows {
            let row = &self.row(r)[cols.clone()];
            work.row_scans += 1;
            work.cells += row.len() as u64;
            for (b, &p) in bits.iter_mut().zip(row) {
                *b |= p;
            }
        }
        Ok(Occupancy {
            origin: cols.start,
            bits,
        })
    }

    fn frequency_in(&self, rows: Range<usize>, cols: Range<usize>, work: &mut Work) -> Frequency {
        let mut freq = Frequency::zeros(cols.clone());
        for r in rows {
            let row = &self.row(r)[cols.clone()];
            work.row_scans += 1;
            work.cells += row.len() as u64;
            for (c, &p) in freq.counts.iter_mut().zip(row) {
                *c += u32::from(p);
            }
        }
        freq
    }

    fn row_has_ink(&self, row: usize, cols: Range<usize>, work: &mut Work) -> bool {
        work.row_scans += 1;
        work.cells += cols.len() as u64;
        self.row(row)[cols].iter().any(|&p| p)
    }

    /// Counts colour changes from a virtual background pixel left of column 0.
    fn run_index_at(&self, row: usize, x: usize, work: &mut Work) -> Result<usize> {
        if x >= self.width() {
            return Err(crate::Error::OutOfBounds { x, width: self.width() });
        }
        let pixels = &self.row(row)[..=x];
        work.row_scans += 1;
        work.cells += pixels.len() as u64;
        let mut prev = false;
        let mut index = 0;
        for &p in pixels {
            if p != prev {
                index += 1;
                prev = p;
            }
        }
        Ok(index)
    }
}

pub fn pdp_occupancy(bitmap: &Bitmap, rows: Range<usize>) -> Result<Occupancy> {
    bitmap.occupancy_in(rows, 0..bitmap.width(), &mut Work::default())
}

pub fn pdp_segment_words(bitmap: &Bitmap, mode: ThresholdMode) -> Result<WordSegmentation> {
    segment_words_on(bitmap, mode, &mut Work::default())
}

pub fn pdp_segment_chars(bitmap: &Bitmap, params: &RoiParams) -> Result<CharSegmentation> {
    segment_chars_on(bitmap, 0..bitmap.width(), params, &mut Work::default())
}
