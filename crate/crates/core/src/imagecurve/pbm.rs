//! Netpbm bitmap (PBM) reading and writing, plain (`P1`) and raw (`P4`).
//!
//! A `1` bit is a black pixel, which is a curve pixel here.

use thiserror::Error;

use super::BinaryImage;

/// Largest accepted pixel count.
pub const MAX_PIXELS: usize = 1 << 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbmError {
    #[error("not a PBM stream: expected magic P1 or P4")]
    BadMagic,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("image dimensions {width}x{height} are zero or too large")]
    DimensionOverflow { width: u64, height: u64 },
    #[error("raster ends after {found} of {expected} pixels")]
    UnexpectedEof { expected: usize, found: usize },
    #[error("invalid raster byte {0:?} in plain PBM")]
    InvalidPixel(char),
    #[error("unexpected data after the raster at byte offset {0}")]
    TrailingGarbage(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbmFormat {
    Plain,
    Raw,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Skips whitespace and `#` comments (to end of line).
    fn skip_blank(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'#' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, PbmError> {
        self.skip_blank();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.peek().filter(u8::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| PbmError::MalformedHeader(format!("{what} does not fit in 64 bits")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PbmError::MalformedHeader(format!("expected {what}")));
        }
        match self.peek() {
            None => Ok(value),
            Some(b) if b.is_ascii_whitespace() || b == b'#' => Ok(value),
            Some(b) => Err(PbmError::MalformedHeader(format!(
                "unexpected byte {:?} after {what}",
                b as char
            ))),
        }
    }
}

/// Parses a `P1` or `P4` stream.
pub fn load_pbm(bytes: &[u8]) -> Result<BinaryImage, PbmError> {
    let format = match bytes.get(..2) {
        Some(b"P1") => PbmFormat::Plain,
        Some(b"P4") => PbmFormat::Raw,
        _ => return Err(PbmError::BadMagic),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    match cur.peek() {
        Some(b) if b.is_ascii_whitespace() || b == b'#' => {}
        _ => return Err(PbmError::MalformedHeader("magic must be followed by whitespace".into())),
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let total = width.checked_mul(height);
    let (cols, rows) = match total {
        Some(t) if width > 0 && height > 0 && t as u128 <= MAX_PIXELS as u128 => (width as usize, height as usize),
        _ => return Err(PbmError::DimensionOverflow { width, height }),
    };
    let mut pixels = vec![0u8; rows * cols];

    match format {
        PbmFormat::Plain => {
            let mut filled = 0;
            while filled < pixels.len() {
                cur.skip_blank();
                match cur.peek() {
                    None => {
                        return Err(PbmError::UnexpectedEof {
                            expected: pixels.len(),
                            found: filled,
                        })
                    }
                    Some(b'0') => pixels[filled] = 0,
                    Some(b'1') => pixels[filled] = 1,
                    Some(b) => return Err(PbmError::InvalidPixel(b as char)),
                }
                cur.pos += 1;
                filled += 1;
            }
            cur.skip_blank();
            if cur.pos < bytes.len() {
                return Err(PbmError::TrailingGarbage(cur.pos));
            }
        }
        PbmFormat::Raw => {
            // exactly one whitespace byte separates the header from the raster
            match cur.peek() {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                _ => return Err(PbmError::MalformedHeader("missing separator before raster".into())),
            }
            let stride = cols.div_ceil(8);
            let raster = &bytes[cur.pos..];
            if raster.len() < stride * rows {
                return Err(PbmError::UnexpectedEof {
                    expected: rows * cols,
                    found: (raster.len() / stride) * cols,
                });
            }
            if raster.len() > stride * rows {
                return Err(PbmError::TrailingGarbage(cur.pos + stride * rows));
            }
            for y in 0..rows {
                let row = &raster[y * stride..(y + 1) * stride];
                for x in 0..cols {
                    pixels[y * cols + x] = (row[x / 8] >> (7 - x % 8)) & 1;
                }
            }
        }
    }
    Ok(BinaryImage::from_raw(rows, cols, pixels))
}

/// Writes a plain `P1` stream, lines at most 70 characters long.
pub fn save_pbm(image: &BinaryImage) -> Vec<u8> {
    let mut out = format!("P1\n{} {}\n", image.cols(), image.rows()).into_bytes();
    for y in 0..image.rows() {
        let mut line_len = 0;
        for x in 0..image.cols() {
            if line_len > 0 {
                if line_len + 2 > 70 {
                    out.push(b'\n');
                    line_len = 0;
                } else {
                    out.push(b' ');
                    line_len += 1;
                }
            }
            out.push(b'0' + image.get(x, y));
            line_len += 1;
        }
        out.push(b'\n');
    }
    out
}

/// Writes a raw `P4` stream with zero padding bits.
pub fn save_pbm_raw(image: &BinaryImage) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", image.cols(), image.rows()).into_bytes();
    let stride = image.cols().div_ceil(8);
    for y in 0..image.rows() {
        let mut row = vec![0u8; stride];
        for x in 0..image.cols() {
            if image.get(x, y) == 1 {
                row[x / 8] |= 0x80 >> (x % 8);
            }
        }
        out.extend_from_slice(&row);
    }
    out
}
