//! Curves stored in binary images.
//!
//! Pixels are addressed by `(abscissa, ordinate)` = `(column, row)`, with the
//! ordinate counted from the top row downwards as in matrix notation. A pixel
//! value of 1 marks the curve, 0 the background.

mod coords;
pub mod pbm;
mod raster;
mod trace;

use thiserror::Error;

use crate::curves::CurveError;

pub use coords::{coord_function_pc, coord_function_pl, image_to_curve, polygon_curve, smooth_from_points, CoordVariant};
pub use pbm::{load_pbm, save_pbm, save_pbm_raw, PbmError};
pub use raster::{hausdorff_distance, is_single_closed_cycle, rasterize, upscale, MAX_RASTER_SAMPLES};
pub use trace::{direction_code, find_start, trace, ChainCode, CoordinateSequences, DIRECTIONS};

/// `(abscissa, ordinate)`.
pub type Pixel = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ImageCurveError {
    #[error("image dimensions must be positive, got {rows}x{cols}")]
    ZeroDimension { rows: usize, cols: usize },
    #[error("pixel rows have unequal lengths")]
    Ragged,
    #[error("pixel value {value} at ({x}, {y}) is not 0 or 1")]
    NotBinary { x: usize, y: usize, value: u8 },
    #[error("the image contains no curve pixels")]
    Empty,
    #[error("curve branches or self-intersects at pixel ({}, {})", .0.0, .0.1)]
    Branching(Pixel),
    #[error("pixel ({}, {}) is not connected to the traced curve", .0.0, .0.1)]
    Disconnected(Pixel),
    #[error("coordinate sequence is empty")]
    EmptySequence,
    #[error("at least two points are needed, got {0}")]
    TooFewPoints(usize),
    #[error("rasterization needs a planar curve, got dimension {0}")]
    NotPlanar(usize),
    #[error("curve point ({x}, {y}) falls outside the {rows}x{cols} canvas")]
    OutOfBounds { x: f64, y: f64, rows: usize, cols: usize },
    #[error("scale factor must be positive and finite, got {0}")]
    InvalidFactor(f64),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A `rows × cols` matrix over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl BinaryImage {
    /// A blank image.
    pub fn new(rows: usize, cols: usize) -> Result<Self, ImageCurveError> {
        if rows == 0 || cols == 0 {
            return Err(ImageCurveError::ZeroDimension { rows, cols });
        }
        Ok(BinaryImage {
            rows,
            cols,
            pixels: vec![0; rows * cols],
        })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, pixels: Vec<u8>) -> Self {
        debug_assert_eq!(pixels.len(), rows * cols);
        BinaryImage { rows, cols, pixels }
    }

    /// Builds an image from rows of 0/1 values, top row first.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, ImageCurveError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut img = Self::new(rows.len(), cols)?;
        for (y, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(ImageCurveError::Ragged);
            }
            for (x, &value) in row.iter().enumerate() {
                if value > 1 {
                    return Err(ImageCurveError::NotBinary { x, y, value });
                }
                img.pixels[y * cols + x] = value;
            }
        }
        Ok(img)
    }

    /// A blank `rows × cols` image with the listed pixels set.
    pub fn from_pixels(rows: usize, cols: usize, pixels: &[Pixel]) -> Result<Self, ImageCurveError> {
        let mut img = Self::new(rows, cols)?;
        for &(x, y) in pixels {
            if !img.in_bounds(x, y) {
                return Err(ImageCurveError::OutOfBounds {
                    x: x as f64,
                    y: y as f64,
                    rows,
                    cols,
                });
            }
            img.set(x as usize, y as usize, 1);
        }
        Ok(img)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Value at abscissa `x` (column) and ordinate `y` (row).
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.cols + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        self.pixels[y * self.cols + x] = value.min(1);
    }

    pub fn in_bounds(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.cols && (y as usize) < self.rows
    }

    /// Bounds-checked curve membership.
    pub fn is_curve(&self, x: i64, y: i64) -> bool {
        self.in_bounds(x, y) && self.get(x as usize, y as usize) == 1
    }

    /// Curve pixels in row-major order.
    pub fn curve_pixels(&self) -> Vec<Pixel> {
        let mut out = Vec::new();
        for y in 0..self.rows {
            for x in 0..self.cols {
                if self.get(x, y) == 1 {
                    out.push((x as i64, y as i64));
                }
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == 1).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.pixels.chunks(self.cols).map(<[u8]>::to_vec).collect()
    }
}
