//! Coordinate functions on `[0, 1]` built from traced sequences.

use std::sync::Arc;

use crate::curves::{apply_operator, Curve, ExtensionStrategy, ScalarFn};
use crate::operators::OperatorFamily;

use super::{trace, BinaryImage, ImageCurveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordVariant {
    /// Linear interpolation between consecutive points.
    PiecewiseLinear,
    /// Each point held on its own cell; the curve jumps between cells.
    PiecewiseConstant,
}

/// `t · cells`, snapped to the nearest integer when it is within a few ulps,
/// so that `t = j / cells` lands exactly on the grid point `j`.
fn cell_coordinate(t: f64, cells: usize) -> f64 {
    let y = t.clamp(0.0, 1.0) * cells as f64;
    let r = y.round();
    if (y - r).abs() <= 4.0 * f64::EPSILON * y.max(1.0) {
        r
    } else {
        y
    }
}

fn linear_interpolant(s: Vec<f64>, closed: bool) -> ScalarFn {
    let n = s.len();
    if n == 1 {
        let c = s[0];
        return Arc::new(move |_| c);
    }
    let cells = if closed { n } else { n - 1 };
    Arc::new(move |t: f64| {
        let y = cell_coordinate(t, cells);
        let j = (y.floor() as usize).min(cells - 1);
        let next = if j + 1 == n { 0 } else { j + 1 };
        ((j + 1) as f64 - y) * (s[j] - s[next]) + s[next]
    })
}

/// Piecewise-linear coordinate function of `s`.
///
/// For a closed sequence the parameter grid is `j / N` and the last cell
/// runs from `s_N` back to `s_1`, so `x(0) = x(1) = s_1`. For an open one the
/// grid is `j / (N − 1)` and `x(1) = s_N`.
pub fn coord_function_pl(s: &[i64], closed: bool) -> Result<ScalarFn, ImageCurveError> {
    if s.is_empty() {
        return Err(ImageCurveError::EmptySequence);
    }
    Ok(linear_interpolant(s.iter().map(|&v| v as f64).collect(), closed))
}

/// Piecewise-constant coordinate function: `s_j` on `[(j−1)/N, j/N)`, and
/// `s_N` on the last, closed cell.
pub fn coord_function_pc(s: &[i64]) -> Result<ScalarFn, ImageCurveError> {
    if s.is_empty() {
        return Err(ImageCurveError::EmptySequence);
    }
    let s: Vec<f64> = s.iter().map(|&v| v as f64).collect();
    let n = s.len();
    Ok(Arc::new(move |t: f64| {
        let j = (cell_coordinate(t, n).floor() as usize).min(n - 1);
        s[j]
    }))
}

/// Traces `image` and turns the sequences into a planar curve on `[0, 1]`.
pub fn image_to_curve(image: &BinaryImage, variant: CoordVariant) -> Result<Curve, ImageCurveError> {
    let (chain, seqs) = trace(image)?;
    let curve = match variant {
        CoordVariant::PiecewiseLinear => Curve::new(
            (0.0, 1.0),
            vec![coord_function_pl(&seqs.u, chain.closed)?, coord_function_pl(&seqs.v, chain.closed)?],
            chain.closed,
        )?,
        CoordVariant::PiecewiseConstant => Curve::new_discontinuous(
            (0.0, 1.0),
            vec![coord_function_pc(&seqs.u)?, coord_function_pc(&seqs.v)?],
            chain.closed,
        )?,
    };
    Ok(curve)
}

/// Connects `points` in the given order by straight segments and smooths the
/// resulting polygon with `S_n`.
pub fn smooth_from_points(
    points: &[(f64, f64)],
    closed: bool,
    family: &OperatorFamily,
    n: u32,
    strategy: ExtensionStrategy,
) -> Result<Curve, ImageCurveError> {
    if points.len() < 2 {
        return Err(ImageCurveError::TooFewPoints(points.len()));
    }
    let polygon = polygon_curve(points, closed)?;
    Ok(apply_operator(family, &polygon, n, strategy)?)
}

/// The polygon through `points` as a curve on `[0, 1]`.
pub fn polygon_curve(points: &[(f64, f64)], closed: bool) -> Result<Curve, ImageCurveError> {
    if points.is_empty() {
        return Err(ImageCurveError::EmptySequence);
    }
    let xs = points.iter().map(|p| p.0).collect();
    let ys = points.iter().map(|p| p.1).collect();
    Ok(Curve::new(
        (0.0, 1.0),
        vec![linear_interpolant(xs, closed), linear_interpolant(ys, closed)],
        closed,
    )?)
}
