//! Word and character segmentation of binary text lines, performed directly
//! on their run-length encoding.
//!
//! The compressed-domain pipeline lives in [`projection`], [`word_seg`] and
//! [`char_seg`]; [`baseline_pdp`] runs the identical policy over decoded
//! pixels for differential testing and timing.

pub mod baseline_pdp;
pub mod bench;
pub mod char_seg;
pub mod error;
pub mod eval;
pub mod format;
pub mod pbm;
pub mod pipeline;
pub mod projection;
pub mod rle;
pub mod synth;
pub mod word_seg;

pub use char_seg::{segment_chars, CharSegmentation, Repair, RoiParams};
pub use error::{Error, Result};
pub use eval::{evaluate, EvalMode, EvalReport, GroundTruthLine};
pub use pipeline::{segment_line, LineRecord, PipelineConfig, SegmentMode, WordRecord};
pub use projection::{Component, Gap, Occupancy, Raster, Work};
pub use rle::{decode, encode, Bitmap, RleImage, RleRow, RunCoordinate};
pub use word_seg::{segment_words, SeparatorPoint, ThresholdMode, WordSegmentation};
