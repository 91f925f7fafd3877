//! PBM ingestion (P1 ASCII, P4 packed). PBM `1` is black, which is ink here.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rle::Bitmap;

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn line(&self) -> usize {
        self.data[..self.pos.min(self.data.len())]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
            + 1
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line(), message)
    }

    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    if c == b'\n' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number in PBM header"));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("header number out of range"))
    }
}

pub fn parse_pbm(data: &[u8]) -> Result<Bitmap> {
    if data.len() < 2 {
        return Err(Error::parse(1, "missing PBM magic"));
    }
    let binary = match &data[..2] {
        b"P1" => false,
        b"P4" => true,
        _ => return Err(Error::parse(1, "expected PBM magic P1 or P4")),
    };
    let mut cur = Cursor { data, pos: 2 };
    let width = cur.number()?;
    let height = cur.number()?;
    if width == 0 || height == 0 {
        return Err(cur.err("width and height must be positive"));
    }

    let mut pixels = Vec::with_capacity(width * height);
    if binary {
        if !cur.data.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(cur.err("expected whitespace after PBM header"));
        }
        cur.pos += 1;
        let stride = width.div_ceil(8);
        let raster = &data[cur.pos..];
        if raster.len() < stride * height {
            return Err(cur.err(format!(
                "truncated P4 raster: need {} bytes, found {}",
                stride * height,
                raster.len()
            )));
        }
        for r in 0..height {
            let row = &raster[r * stride..(r + 1) * stride];
            pixels.extend((0..width).map(|c| row[c / 8] & (0x80 >> (c % 8)) != 0));
        }
    } else {
        while pixels.len() < width * height {
            cur.skip_whitespace_and_comments();
            match cur.data.get(cur.pos) {
                Some(b'0') => pixels.push(false),
                Some(b'1') => pixels.push(true),
                Some(_) => return Err(cur.err("P1 raster may only contain 0 and 1")),
                None => return Err(cur.err("truncated P1 raster")),
            }
            cur.pos += 1;
        }
    }
    Bitmap::new(width, height, pixels)
}

pub fn to_pbm_p4(bitmap: &Bitmap) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", bitmap.width(), bitmap.height()).into_bytes();
    let stride = bitmap.width().div_ceil(8);
    for r in 0..bitmap.height() {
        let mut packed = vec![0u8; stride];
        for (c, &p) in bitmap.row(r).iter().enumerate() {
            if p {
                packed[c / 8] |= 0x80 >> (c % 8);
            }
        }
        out.extend_from_slice(&packed);
    }
    out
}

pub fn to_pbm_p1(bitmap: &Bitmap) -> Vec<u8> {
    let mut out = format!("P1\n{} {}\n", bitmap.width(), bitmap.height());
    for r in 0..bitmap.height() {
        let line: Vec<&str> = bitmap
            .row(r)
            .iter()
            .map(|&p| if p { "1" } else { "0" })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn read_pbm(path: impl AsRef<Path>) -> Result<Bitmap> {
    parse_pbm(&fs::read(path)?)
}

pub fn write_pbm(bitmap: &Bitmap, path: impl AsRef<Path>, ascii: bool) -> Result<()> {
    let bytes = if ascii {
        to_pbm_p1(bitmap)
    } else {
        to_pbm_p4(bitmap)
    };
    fs::write(path, bytes)?;
    Ok(())
}
