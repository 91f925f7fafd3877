//! Seed-driven property checks, shared by the proptest suite and the
//! acceptance runner. Each check builds its own input from the seed.

use rand::Rng;
use rleseg::char_seg::{roi_rows, split_bands, Repair};
use rleseg::eval::{match_segments, qualifies, Interval};
use rleseg::format::{parse_rle, to_rle_string};
use rleseg::pipeline::{segment_line, PipelineConfig, SegmentMode};
use rleseg::projection::{components, gaps, occupancy, occupancy_counted, row_spreads};
use rleseg::rle::{cumulative_runs, locate_run};
use rleseg::synth::{synth_corpus, SynthParams};
use rleseg::{
    baseline_pdp::pdp_occupancy, decode, encode, segment_chars, segment_words, Raster, RoiParams,
    ThresholdMode, Work,
};

use super::{gen, oracle};

pub type Check = fn(u64) -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        let held: bool = $cond;
        if !held {
            return Err(format!($($arg)+));
        }
    };
}

pub const CHECKS: &[(&str, Check)] = &[
    ("rle: decode(encode(b)) == b", codec_round_trip),
    ("rle: run sums equal width everywhere", run_sum_conservation),
    ("rle: differencing CR reproduces runs", cr_consistency),
    ("rle: locate_run matches brute force", locate_exhaustive),
    ("projection: runs agree with pixel oracle", projection_oracle),
    ("projection: components sorted and disjoint", components_ordered),
    ("projection: run visits equal run count", occupancy_cost),
    ("word_seg: separators fall in blank columns", separators_in_background),
    ("word_seg: higher threshold never adds words", threshold_monotone),
    ("word_seg: single word re-segments to one", word_idempotence),
    ("word_seg: translation equivariance", translation_equivariance),
    ("word_seg+char_seg: run coordinates consistent", run_coordinates),
    ("char_seg: cuts avoid top/bottom ink", char_cuts),
    ("char_seg: no negligible piece survives", merge_completeness),
    ("char_seg: bands partition the ROI", band_partition),
    ("char_seg: larger t never grows the ROI", roi_monotone),
    ("char_seg: deterministic", char_determinism),
    ("eval: match count symmetric", match_symmetric),
    ("eval: correct prediction never lowers AR", ar_monotone),
    ("eval: overlap 1 accepts only exact", exact_overlap),
    ("baseline_pdp: CDP and PDP JSON identical", pipelines_identical),
    ("baseline_pdp: work counters", work_counters),
    ("synth: deterministic with exact truth", synth_exact),
];

fn codec_round_trip(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let bm = gen::any_line(&mut rng);
    let rle = encode(&bm);
    for (r, row) in rle.rows.iter().enumerate() {
        ensure!(row.runs == oracle::encode_row(bm.row(r)), "row {r} runs differ from oracle");
    }
    ensure!(decode(&rle).map_err(|e| e.to_string())? == bm, "round trip changed pixels");
    Ok(())
}

fn run_sum_conservation(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let rle = encode(&gen::any_line(&mut rng));
    let parsed = parse_rle(&to_rle_string(&rle)).map_err(|e| e.to_string())?;
    let synth = synth_corpus(&SynthParams {
        lines: 1,
        seed,
        touch_rate: 0.3,
        ..Default::default()
    })
    .map_err(|e| e.to_string())?;
    for img in [&rle, &parsed, &synth[0].rle] {
        for (i, row) in img.rows.iter().enumerate() {
            ensure!(row.runs.iter().sum::<usize>() == img.width, "row {i} sum != width");
            ensure!(row.runs.iter().skip(1).all(|&r| r > 0), "row {i} has an inner zero run");
        }
    }
    ensure!(parsed == rle, "text format round trip differs");
    Ok(())
}

fn cr_consistency(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let rle = encode(&gen::any_line(&mut rng));
    for row in &rle.rows {
        let cr = cumulative_runs(row);
        let mut diffs = vec![cr[0]];
        diffs.extend(cr.windows(2).map(|w| w[1] - w[0]));
        ensure!(diffs == row.runs, "differenced CR != runs");
        ensure!(*cr.last().unwrap() == rle.width, "CR does not end at width");
    }
    Ok(())
}

fn locate_exhaustive(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let rle = encode(&gen::any_line(&mut rng));
    for (r, row) in rle.rows.iter().enumerate() {
        let table = oracle::run_index_table(&row.runs);
        for (x, &want) in table.iter().enumerate() {
            let got = locate_run(row, x).map_err(|e| e.to_string())?;
            ensure!(got == want, "row {r} x {x}: got run {got}, want {want}");
        }
        ensure!(locate_run(row, rle.width).is_err(), "x == width must be out of bounds");
    }
    Ok(())
}

fn projection_oracle(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let bm = gen::any_line(&mut rng);
    let rle = encode(&bm);
    let grid = oracle::grid_of(&bm);
    let a = rng.gen_range(0..bm.height());
    let b = rng.gen_range(a + 1..=bm.height());
    let occ = occupancy(&rle, a..b).map_err(|e| e.to_string())?;
    ensure!(occ.bits == oracle::occupancy(&grid, a..b, 0..bm.width()), "occupancy != oracle");
    ensure!(occ == pdp_occupancy(&bm, a..b).unwrap(), "occupancy != pdp");
    let comps: Vec<_> = components(&occ).iter().map(|c| (c.x_min, c.x_max)).collect();
    ensure!(comps == oracle::stretches(&occ.bits, 0), "components != oracle");
    for (r, row) in rle.rows.iter().enumerate() {
        let spreads: Vec<_> = row_spreads(row).iter().map(|s| (s.x_min, s.x_max)).collect();
        ensure!(spreads == oracle::stretches(&grid[r], 0), "row {r} spreads != oracle");
    }
    // windowed occupancy on a random column range
    let c0 = rng.gen_range(0..bm.width());
    let c1 = rng.gen_range(c0 + 1..=bm.width());
    let win = rle.occupancy_in(a..b, c0..c1, &mut Work::default()).map_err(|e| e.to_string())?;
    ensure!(win.bits == oracle::occupancy(&grid, a..b, c0..c1), "windowed occupancy != oracle");
    let freq = rle.frequency_in(a..b, c0..c1, &mut Work::default());
    ensure!(freq.counts == oracle::column_counts(&grid, a..b, c0..c1), "frequency != oracle");
    Ok(())
}

fn components_ordered(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let rle = encode(&gen::any_line(&mut rng));
    let comps = components(&occupancy(&rle, 0..rle.height).unwrap());
    for c in &comps {
        ensure!(c.length == c.x_max - c.x_min + 1, "length not inclusive");
    }
    for w in comps.windows(2) {
        ensure!(w[1].x_min >= w[0].x_max + 2, "components touch or overlap");
    }
    let gs = gaps(&comps);
    ensure!(gs.len() == comps.len().saturating_sub(1), "gap count");
    ensure!(gs.iter().all(|g| g.width >= 1 && g.width == g.right - g.left - 1), "gap widths");
    Ok(())
}

fn occupancy_cost(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let rle = encode(&gen::any_line(&mut rng));
    let a = rng.gen_range(0..rle.height);
    let b = rng.gen_range(a + 1..=rle.height);
    let mut work = Work::default();
    occupancy_counted(&rle, a..b, &mut work).unwrap();
    let runs: usize = rle.rows[a..b].iter().map(|r| r.runs.len()).sum();
    ensure!(work.cells == runs as u64, "visited {} runs, region has {runs}", work.cells);
    Ok(())
}

fn line_with_ink(seed: u64) -> rleseg::Bitmap {
    let mut rng = gen::rng(seed);
    loop {
        let bm = gen::text_line(&mut rng);
        if bm.pixels().iter().any(|&p| p) {
            return bm;
        }
    }
}

fn separators_in_background(seed: u64) -> Result<(), String> {
    let bm = line_with_ink(seed);
    let grid = oracle::grid_of(&bm);
    let seg = segment_words(&encode(&bm), ThresholdMode::Auto).map_err(|e| e.to_string())?;
    let words: Vec<_> = seg.words.iter().map(|w| (w.x_min, w.x_max)).collect();
    ensure!(words == oracle::words(&grid), "words {words:?} != oracle");
    ensure!(seg.separators.len() + 1 == seg.words.len(), "separator count");
    for (sep, w) in seg.separators.iter().zip(seg.words.windows(2)) {
        let x = sep.x_mid;
        ensure!(w[0].x_max < x && x < w[1].x_min, "separator {x} not inside its gap");
        ensure!((0..bm.height()).all(|r| !grid[r][x]), "separator {x} cuts ink");
    }
    Ok(())
}

fn threshold_monotone(seed: u64) -> Result<(), String> {
    let rle = encode(&line_with_ink(seed));
    let mut last = usize::MAX;
    for t in 0..40 {
        let n = segment_words(&rle, ThresholdMode::Fixed(t as f64 * 0.75)).unwrap().words.len();
        ensure!(n <= last, "threshold {t} raised word count {last} -> {n}");
        last = n;
    }
    Ok(())
}

fn word_idempotence(seed: u64) -> Result<(), String> {
    let bm = line_with_ink(seed);
    let seg = segment_words(&encode(&bm), ThresholdMode::Auto).unwrap();
    for w in &seg.words {
        let word = encode(&gen::crop_columns(&bm, w.x_min..w.x_max + 1));
        let again = segment_words(&word, ThresholdMode::Fixed(seg.threshold_used)).unwrap();
        ensure!(again.words.len() == 1, "word {w:?} re-segmented into {}", again.words.len());
    }
    Ok(())
}

fn translation_equivariance(seed: u64) -> Result<(), String> {
    let bm = line_with_ink(seed);
    let k = (seed % 23 + 1) as usize;
    let a = segment_words(&encode(&bm), ThresholdMode::Auto).unwrap();
    let b = segment_words(&encode(&gen::shift_right(&bm, k)), ThresholdMode::Auto).unwrap();
    ensure!(a.threshold_used == b.threshold_used, "threshold changed");
    let shifted: Vec<_> = a.words.iter().map(|w| w.shifted(k)).collect();
    ensure!(shifted == b.words, "words not shifted by {k}");
    ensure!(a.separators.len() == b.separators.len(), "separator count changed");
    for (sa, sb) in a.separators.iter().zip(&b.separators) {
        ensure!(sa.x_mid + k == sb.x_mid, "separator not shifted by {k}");
        let ia: Vec<_> = sa.per_row.iter().map(|c| c.run_index).collect();
        let ib: Vec<_> = sb.per_row.iter().map(|c| c.run_index).collect();
        ensure!(ia == ib, "run indices changed under translation");
    }
    Ok(())
}

fn run_coordinates(seed: u64) -> Result<(), String> {
    let bm = line_with_ink(seed);
    let rle = encode(&bm);
    let words = segment_words(&rle, ThresholdMode::Auto).unwrap();
    let chars = segment_chars(&rle, &RoiParams::default()).unwrap();
    for sep in words.separators.iter().chain(&chars.separators) {
        ensure!(sep.per_row.len() == rle.height, "one coordinate per row");
        for (r, c) in sep.per_row.iter().enumerate() {
            ensure!(c.row == r && c.x == sep.x_mid, "coordinate row/x mismatch");
            let table = oracle::run_index_table(&rle.rows[r].runs);
            ensure!(c.run_index == table[c.x], "row {r}: run {} != {}", c.run_index, table[c.x]);
        }
    }
    Ok(())
}

/// The cut pattern char_seg works from, rebuilt with the pixel oracle.
fn oracle_pattern(grid: &oracle::Grid, seg: &rleseg::CharSegmentation, ink: std::ops::Range<usize>) -> Vec<bool> {
    let w = grid[0].len();
    let band = |rows: &std::ops::Range<usize>| {
        if rows.is_empty() {
            vec![false; w]
        } else {
            oracle::occupancy(grid, rows.clone(), 0..w)
        }
    };
    let or: Vec<bool> = band(&seg.bands.top).iter().zip(band(&seg.bands.bottom)).map(|(a, b)| *a || b).collect();
    if or.iter().any(|&b| b) {
        return or;
    }
    let roi = oracle::occupancy(grid, seg.roi.rows.clone(), 0..w);
    if roi.iter().any(|&b| b) {
        return roi;
    }
    oracle::occupancy(grid, ink, 0..w)
}

fn ink_box(grid: &oracle::Grid) -> std::ops::Range<usize> {
    let rows: Vec<usize> = (0..grid.len()).filter(|&r| grid[r].iter().any(|&p| p)).collect();
    rows[0]..rows[rows.len() - 1] + 1
}

fn char_cuts(seed: u64) -> Result<(), String> {
    let bm = line_with_ink(seed);
    let grid = oracle::grid_of(&bm);
    let params = RoiParams::default();
    let seg = segment_chars(&encode(&bm), &params).unwrap();
    let ink = ink_box(&grid);
    ensure!(seg.roi == roi_rows(ink.clone(), params.t), "roi not taken from the ink box");
    let pattern = oracle_pattern(&grid, &seg, ink);
    let pieces = oracle::stretches(&pattern, 0);
    let mean = pieces.iter().map(|p| (p.1 - p.0 + 1) as f64).sum::<f64>() / pieces.len() as f64;
    let small = params.alpha * mean;
    let middle = oracle::column_counts(&grid, seg.bands.middle.clone(), 0..bm.width());

    ensure!(seg.separators.len() + 1 == seg.chars.len(), "separator count");
    for (sep, pair) in seg.separators.iter().zip(seg.chars.windows(2)) {
        let x = sep.x_mid;
        ensure!(pair[0].x_max < x && x < pair[1].x_min, "cut {x} not between chars");
        let inserted = seg.repairs.contains(&Repair::Inserted(x));
        if inserted {
            let &(a, b) = pieces.iter().find(|p| p.0 <= x && x <= p.1).ok_or("inserted cut outside ink")?;
            for y in a + 1..b {
                if (y - a) as f64 >= small && (b - y) as f64 >= small {
                    ensure!(middle[x] <= middle[y], "inserted cut {x} not at a frequency minimum");
                }
            }
        } else {
            ensure!(!pattern[x], "gap cut {x} falls on top/bottom ink");
        }
    }
    Ok(())
}

fn merge_completeness(seed: u64) -> Result<(), String> {
    let bm = line_with_ink(seed);
    let grid = oracle::grid_of(&bm);
    let params = RoiParams::default();
    let seg = segment_chars(&encode(&bm), &params).unwrap();
    let pattern = oracle_pattern(&grid, &seg, ink_box(&grid));
    let pieces = oracle::stretches(&pattern, 0);
    let mean = pieces.iter().map(|p| (p.1 - p.0 + 1) as f64).sum::<f64>() / pieces.len() as f64;
    for c in &seg.chars {
        ensure!(c.length as f64 >= params.alpha * mean, "char {c:?} below alpha × mean {mean}");
    }
    Ok(())
}

fn band_partition(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let start = rng.gen_range(0..50);
    let len = rng.gen_range(1..200);
    let b = split_bands(start..start + len);
    ensure!(b.top.start == start && b.top.end == b.middle.start, "top/middle not contiguous");
    ensure!(b.middle.end == b.bottom.start && b.bottom.end == start + len, "middle/bottom not contiguous");
    ensure!(b.top.len() + b.middle.len() + b.bottom.len() == len, "sizes do not sum");
    ensure!(b.top.len() >= b.middle.len() && b.middle.len() >= b.bottom.len(), "remainder not top-first");
    ensure!(b.top.len() - b.bottom.len() <= 1, "bands unbalanced");
    let seg = segment_chars(&encode(&line_with_ink(seed)), &RoiParams::default()).unwrap();
    let n = seg.bands.top.len() + seg.bands.middle.len() + seg.bands.bottom.len();
    ensure!(n == seg.roi.rows.len(), "pipeline bands do not cover ROI");
    Ok(())
}

fn roi_monotone(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let start = rng.gen_range(0..20);
    let h = rng.gen_range(1..300);
    let t1: f64 = rng.gen_range(0.0..0.5);
    let t2: f64 = rng.gen_range(t1..0.5);
    let a = roi_rows(start..start + h, t1).rows;
    let b = roi_rows(start..start + h, t2).rows;
    ensure!(!b.is_empty() && !a.is_empty(), "empty ROI");
    // a fallback to the full box at the larger t is the documented exception
    let fallback = b == (start..start + h);
    ensure!(fallback || (a.start <= b.start && b.end <= a.end), "ROI grew: {a:?} -> {b:?}");
    Ok(())
}

fn char_determinism(seed: u64) -> Result<(), String> {
    let rle = encode(&line_with_ink(seed));
    let config = PipelineConfig {
        mode: SegmentMode::Chars,
        ..Default::default()
    };
    let a = serde_json::to_string(&segment_line(&rle, "x", &config).unwrap()).unwrap();
    let b = serde_json::to_string(&segment_line(&rle, "x", &config).unwrap()).unwrap();
    ensure!(a == b, "two runs differ");
    Ok(())
}

fn random_intervals(rng: &mut impl Rng) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut x = rng.gen_range(0..5);
    for _ in 0..rng.gen_range(0..12) {
        let w = rng.gen_range(1..20);
        out.push([x, x + w - 1]);
        x += w + rng.gen_range(1..8);
    }
    out
}

fn jitter(rng: &mut impl Rng, truth: &[Interval]) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for &[a, b] in truth {
        if rng.gen_bool(0.2) {
            continue;
        }
        let a2 = (a + rng.gen_range(0..3)).saturating_sub(1).max(out.last().map_or(0, |p| p[1] + 1));
        let b2 = (b + rng.gen_range(0..3)).saturating_sub(1).max(a2);
        out.push([a2, b2]);
    }
    out
}

fn match_symmetric(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let truth = random_intervals(&mut rng);
    let pred = if rng.gen_bool(0.5) { jitter(&mut rng, &truth) } else { random_intervals(&mut rng) };
    let overlap = rng.gen_range(0.01..=1.0);
    let ab = match_segments(&pred, &truth, overlap).pairs.len();
    let ba = match_segments(&truth, &pred, overlap).pairs.len();
    ensure!(ab == ba, "asymmetric: {ab} vs {ba}");
    if overlap > 0.5 {
        let want = oracle::one_to_one(&pred, &truth, overlap);
        ensure!(ab == want, "greedy {ab} != brute force {want}");
    }
    Ok(())
}

fn ar_monotone(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let truth = random_intervals(&mut rng);
    if truth.is_empty() {
        return Ok(());
    }
    let mut pred: Vec<Interval> = truth.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    let before = match_segments(&pred, &truth, 0.9).pairs.len();
    if let Some(&missing) = truth.iter().find(|t| !pred.contains(t)) {
        pred.push(missing);
        pred.sort();
        let after = match_segments(&pred, &truth, 0.9).pairs.len();
        ensure!(after >= before, "AR dropped {before} -> {after}");
    }
    Ok(())
}

fn exact_overlap(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    for _ in 0..50 {
        let a = rng.gen_range(0..20);
        let p = [a, a + rng.gen_range(0..6)];
        let b = rng.gen_range(0..20);
        let t = [b, b + rng.gen_range(0..6)];
        ensure!(qualifies(p, t, 1.0) == (p == t), "{p:?} vs {t:?}");
    }
    Ok(())
}

fn outcome<R: Raster>(src: &R, mode: SegmentMode) -> String {
    let config = PipelineConfig { mode, ..Default::default() };
    match segment_line(src, "line", &config) {
        Ok(rec) => serde_json::to_string(&rec).unwrap(),
        Err(e) => format!("error: {e}"),
    }
}

fn pipelines_identical(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let bm = gen::any_line(&mut rng);
    let rle = encode(&bm);
    for mode in [SegmentMode::Words, SegmentMode::Chars] {
        let cdp = outcome(&rle, mode);
        let pdp = outcome(&bm, mode);
        ensure!(cdp == pdp, "{mode:?}: CDP {cdp} != PDP {pdp}");
    }
    Ok(())
}

fn work_counters(seed: u64) -> Result<(), String> {
    let mut rng = gen::rng(seed);
    let bm = gen::any_line(&mut rng);
    let rle = encode(&bm);
    for r in 0..bm.height() {
        let c0 = rng.gen_range(0..bm.width());
        let c1 = rng.gen_range(c0 + 1..=bm.width());
        let mut cdp = Work::default();
        let mut pdp = Work::default();
        rle.occupancy_in(r..r + 1, c0..c1, &mut cdp).unwrap();
        bm.occupancy_in(r..r + 1, c0..c1, &mut pdp).unwrap();
        ensure!(cdp.cells <= rle.rows[r].runs.len() as u64, "row {r}: CDP visited more than its runs");
        ensure!(pdp.cells == (c1 - c0) as u64, "row {r}: PDP did not visit exactly the window");
    }
    Ok(())
}

fn synth_exact(seed: u64) -> Result<(), String> {
    let p = SynthParams { lines: 2, seed, ..Default::default() };
    let a = synth_corpus(&p).map_err(|e| e.to_string())?;
    ensure!(a == synth_corpus(&p).unwrap(), "same seed, different corpus");
    for line in &a {
        let bm = decode(&line.rle).unwrap();
        let grid = oracle::grid_of(&bm);
        let got: Vec<_> = oracle::stretches(&oracle::occupancy(&grid, 0..bm.height(), 0..bm.width()), 0)
            .into_iter()
            .map(|(a, b)| [a, b])
            .collect();
        let want: Vec<Interval> = line.truth.chars.clone().unwrap().concat();
        ensure!(got == want, "untouched glyph extents differ from truth");
    }
    Ok(())
}
