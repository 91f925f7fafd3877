//! Synthetic text-line corpus with exact ground truth.
//!
//! Glyphs are solid blobs spanning the x-height, some with an ascender or
//! descender stroke inside their own columns. Touching characters are
//! simulated with bridges placed only in the middle band of the word's ROI,
//! computed with the same ROI arithmetic the segmenter uses.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::char_seg::{roi_rows, split_bands};
use crate::error::{Error, Result};
use crate::eval::{GroundTruthLine, Interval};
use crate::format::write_rle;
use crate::rle::{encode, Bitmap, RleImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GlyphStyle {
    /// Random glyph widths.
    #[default]
    Handwritten,
    /// Fixed pitch.
    Printed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub lines: usize,
    /// Ignored when `width` is set; the line is then filled with as many words as fit.
    pub words_per_line: usize,
    pub min_glyphs: usize,
    pub max_glyphs: usize,
    pub inter_gap: usize,
    pub intra_gap: usize,
    /// Probability that two neighbouring glyphs of a word are bridged.
    pub touch_rate: f64,
    pub seed: u64,
    /// Multiplies glyph and line dimensions (gaps are absolute).
    pub scale: usize,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub roi_t: f64,
    pub style: GlyphStyle,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            lines: 10,
            words_per_line: 5,
            min_glyphs: 2,
            max_glyphs: 6,
            inter_gap: 12,
            intra_gap: 3,
            touch_rate: 0.0,
            seed: 42,
            scale: 1,
            width: None,
            height: None,
            roi_t: 0.2,
            style: GlyphStyle::Handwritten,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthLine {
    pub truth: GroundTruthLine,
    pub rle: RleImage,
}

struct Glyph {
    x0: usize,
    x1: usize,
    ascender: bool,
    descender: bool,
}

struct Layout {
    pad: usize,
    ascender: usize,
    x_height: usize,
    descender: usize,
}

impl Layout {
    fn new(scale: usize) -> Self {
        Self {
            pad: 2 * scale,
            ascender: 6 * scale,
            x_height: 20 * scale,
            descender: 6 * scale,
        }
    }

    fn height(&self) -> usize {
        2 * self.pad + self.ascender + self.x_height + self.descender
    }
}

impl SynthParams {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        if self.scale == 0 {
            return bad("scale must be at least 1");
        }
        if self.min_glyphs < 2 || self.max_glyphs < self.min_glyphs {
            return bad("glyphs per word must be at least 2 and min <= max");
        }
        if self.intra_gap == 0 || self.inter_gap <= self.intra_gap {
            return bad("need 0 < intra_gap < inter_gap");
        }
        if !(0.0..=1.0).contains(&self.touch_rate) {
            return bad("touch_rate must be in [0, 1]");
        }
        if !(0.0..0.5).contains(&self.roi_t) {
            return bad("roi_t must be in [0, 0.5)");
        }
        if self.width.is_none() && self.words_per_line == 0 {
            return bad("words_per_line must be positive");
        }
        Ok(())
    }
}

fn glyph_width(rng: &mut ChaCha8Rng, p: &SynthParams) -> usize {
    match p.style {
        // 14 / 8 stays under the default under-segmentation factor
        GlyphStyle::Handwritten => rng.gen_range(8 * p.scale..=14 * p.scale),
        GlyphStyle::Printed => 10 * p.scale,
    }
}

fn plan_word(rng: &mut ChaCha8Rng, p: &SynthParams, x: usize) -> Vec<Glyph> {
    let n = rng.gen_range(p.min_glyphs..=p.max_glyphs);
    let mut glyphs = Vec::with_capacity(n);
    let mut x0 = x;
    for _ in 0..n {
        let w = glyph_width(rng, p);
        glyphs.push(Glyph {
            x0,
            x1: x0 + w - 1,
            ascender: rng.gen_bool(0.3),
            descender: rng.gen_bool(0.2),
        });
        x0 += w + p.intra_gap;
    }
    glyphs
}

fn word_end(word: &[Glyph]) -> usize {
    word.last().map_or(0, |g| g.x1)
}

fn margin(rng: &mut ChaCha8Rng, p: &SynthParams) -> usize {
    p.inter_gap + rng.gen_range(0..=5 * p.scale)
}

pub fn synth_line(rng: &mut ChaCha8Rng, p: &SynthParams, line_id: String) -> Result<SynthLine> {
    let layout = Layout::new(p.scale);
    let natural_h = layout.height();
    let height = p.height.unwrap_or(natural_h);
    if height < natural_h {
        return Err(Error::InvalidParams(format!("height {height} below minimum {natural_h}")));
    }
    let top = layout.pad + (height - natural_h) / 2;
    let asc_top = top;
    let x_top = asc_top + layout.ascender;
    let x_bottom = x_top + layout.x_height;
    let desc_bottom = x_bottom + layout.descender;

    let left = margin(rng, p);
    let mut words: Vec<Vec<Glyph>> = Vec::new();
    let mut x = left;
    loop {
        let word = plan_word(rng, p, x);
        let end = word_end(&word);
        if let Some(w) = p.width {
            if end + 1 + p.inter_gap > w {
                break;
            }
        }
        x = end + 1 + p.inter_gap;
        words.push(word);
        if p.width.is_none() && words.len() == p.words_per_line {
            break;
        }
    }
    if words.is_empty() {
        return Err(Error::InvalidParams("line width too small for one word".into()));
    }
    let last = word_end(words.last().unwrap());
    let width = match p.width {
        Some(w) => w,
        None => last + 1 + margin(rng, p),
    };

    let mut bm = Bitmap::blank(width, height)?;
    let stroke = 2 * p.scale;
    let mut truth_words = Vec::with_capacity(words.len());
    let mut truth_chars = Vec::with_capacity(words.len());
    for word in &words {
        let has_asc = word.iter().any(|g| g.ascender);
        let has_desc = word.iter().any(|g| g.descender);
        for g in word {
            bm.fill_rect(x_top..x_bottom, g.x0..g.x1 + 1, true);
            if g.ascender {
                bm.fill_rect(asc_top..x_top, g.x0..g.x0 + stroke, true);
            }
            if g.descender {
                bm.fill_rect(x_bottom..desc_bottom, g.x1 + 1 - stroke..g.x1 + 1, true);
            }
        }
        let ink_top = if has_asc { asc_top } else { x_top };
        let ink_bottom = if has_desc { desc_bottom } else { x_bottom };
        let middle = split_bands(roi_rows(ink_top..ink_bottom, p.roi_t).rows).middle;
        let thickness = (middle.len() / 3).max(1);
        let bridge_top = middle.start + (middle.len() - thickness) / 2;
        for pair in word.windows(2) {
            if !middle.is_empty() && rng.gen_bool(p.touch_rate) {
                bm.fill_rect(bridge_top..bridge_top + thickness, pair[0].x1 + 1..pair[1].x0, true);
            }
        }
        truth_words.push([word[0].x0, word_end(word)]);
        truth_chars.push(word.iter().map(|g| [g.x0, g.x1]).collect::<Vec<Interval>>());
    }

    Ok(SynthLine {
        truth: GroundTruthLine {
            line_id,
            words: truth_words,
            chars: Some(truth_chars),
        },
        rle: encode(&bm),
    })
}

pub fn synth_corpus(p: &SynthParams) -> Result<Vec<SynthLine>> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.lines)
        .map(|i| synth_line(&mut rng, p, format!("line_{i:04}")))
        .collect()
}

/// Writes `<line_id>.rle` per line, `manifest.txt` and `truth.json` into `dir`.
pub fn write_corpus(dir: impl AsRef<Path>, lines: &[SynthLine]) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let mut manifest = String::new();
    for line in lines {
        let name = format!("{}.rle", line.truth.line_id);
        write_rle(&line.rle, dir.join(&name))?;
        manifest.push_str(&name);
        manifest.push('\n');
    }
    fs::write(dir.join("manifest.txt"), manifest)?;
    let truth: Vec<&GroundTruthLine> = lines.iter().map(|l| &l.truth).collect();
    fs::write(dir.join("truth.json"), serde_json::to_string_pretty(&truth)?)?;
    Ok(())
}
