//! Discretization of planar curves and the reconstruction pipeline.

use rayon::prelude::*;

use crate::curves::{apply_operator, scale, Curve, ExtensionStrategy};
use crate::operators::OperatorFamily;

use super::{image_to_curve, trace, BinaryImage, CoordVariant, ImageCurveError, Pixel};

/// Sample-count cap for the adaptive refinement in [`rasterize`].
pub const MAX_RASTER_SAMPLES: usize = 1 << 20;

const INITIAL_RASTER_SAMPLES: usize = 256;

/// Fractional offset of the interior samples. Irrational, so samples do not
/// fall on the half-integer ties of lattice-aligned curves.
const SAMPLE_OFFSET: f64 = 0.618_033_988_749_894_8;

fn round_point(p: &[f64], rows: usize, cols: usize) -> Result<Pixel, ImageCurveError> {
    let (x, y) = (p[0].round(), p[1].round());
    // the negated comparison also catches NaN
    if !(x >= 0.0 && y >= 0.0 && x < cols as f64 && y < rows as f64) {
        return Err(ImageCurveError::OutOfBounds {
            x: p[0],
            y: p[1],
            rows,
            cols,
        });
    }
    Ok((x as i64, y as i64))
}

/// Rounds a dense sampling of `gamma` to pixels of a `rows × cols` canvas.
///
/// The interior samples sit at `a + (b − a)(i + θ)/M`, plus both endpoints.
/// For continuous curves `M` doubles, starting from 256, until consecutive
/// pixels are 8-adjacent or `M` reaches [`MAX_RASTER_SAMPLES`]; at the cap
/// the densest sampling is used as is.
pub fn rasterize(gamma: &Curve, rows: usize, cols: usize) -> Result<BinaryImage, ImageCurveError> {
    if gamma.dimension() != 2 {
        return Err(ImageCurveError::NotPlanar(gamma.dimension()));
    }
    let mut image = BinaryImage::new(rows, cols)?;
    let (a, b) = gamma.domain();
    let mut m = INITIAL_RASTER_SAMPLES;
    loop {
        let pixels: Vec<Pixel> = (0..m + 2)
            .into_par_iter()
            .map(|i| {
                let t = match i {
                    0 => a,
                    i if i == m + 1 => b,
                    i => a + (b - a) * ((i - 1) as f64 + SAMPLE_OFFSET) / m as f64,
                };
                round_point(&gamma.eval(t), rows, cols)
            })
            .collect::<Result<_, _>>()?;
        let connected = pixels
            .windows(2)
            .all(|w| (w[0].0 - w[1].0).abs() <= 1 && (w[0].1 - w[1].1).abs() <= 1);
        if connected || !gamma.is_continuous() || m >= MAX_RASTER_SAMPLES {
            for (x, y) in pixels {
                image.set(x as usize, y as usize, 1);
            }
            return Ok(image);
        }
        m *= 2;
    }
}

/// Redraws the curve of `image` at `factor` times its resolution: trace,
/// piecewise-linear coordinate functions, `S_n`, scaling, rasterization on a
/// `⌈factor·rows⌉ × ⌈factor·cols⌉` canvas.
pub fn upscale(
    image: &BinaryImage,
    factor: f64,
    family: &OperatorFamily,
    n: u32,
    strategy: ExtensionStrategy,
) -> Result<BinaryImage, ImageCurveError> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(ImageCurveError::InvalidFactor(factor));
    }
    let curve = image_to_curve(image, CoordVariant::PiecewiseLinear)?;
    let smooth = apply_operator(family, &curve, n, strategy)?;
    let rows = (factor * image.rows() as f64).ceil() as usize;
    let cols = (factor * image.cols() as f64).ceil() as usize;
    rasterize(&scale(&smooth, factor), rows, cols)
}

/// Symmetric Hausdorff distance between the curve pixel sets of two
/// images, in pixel units; infinite if exactly one of them is blank.
pub fn hausdorff_distance(a: &BinaryImage, b: &BinaryImage) -> f64 {
    let pa = a.curve_pixels();
    let pb = b.curve_pixels();
    if pa.is_empty() || pb.is_empty() {
        return if pa.is_empty() && pb.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let directed = |from: &[Pixel], to: &[Pixel]| -> f64 {
        from.par_iter()
            .map(|p| {
                to.iter()
                    .map(|q| ((p.0 - q.0).pow(2) + (p.1 - q.1).pow(2)) as f64)
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| 0.0, f64::max)
            .sqrt()
    };
    directed(&pa, &pb).max(directed(&pb, &pa))
}

/// Whether the curve pixels of `image` form one simple closed 8-connected
/// cycle of at least three pixels.
pub fn is_single_closed_cycle(image: &BinaryImage) -> bool {
    matches!(trace(image), Ok((chain, seqs)) if chain.closed && seqs.len() >= 3)
}
