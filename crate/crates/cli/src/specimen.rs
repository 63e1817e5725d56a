use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use curve_approx::curves::{Curve, ScalarFn};

use crate::Failure;

pub const NAMES: [&str; 4] = ["spiral", "helix", "figure", "constant"];

/// The built-in curves: an open spiral, a helix over two turns, a closed
/// figure with a self-crossing, and a constant curve.
pub fn builtin(name: &str) -> Result<Curve, Failure> {
    let curve = match name {
        "spiral" => Curve::new((0.0, 1.0), vec![f(|t| t * (PI * t).cos()), f(|t| t * (PI * t).sin())], false),
        "helix" => Curve::new(
            (0.0, 2.0),
            vec![f(|t| (2.0 * PI * t).cos()), f(|t| (2.0 * PI * t).sin()), f(|t| t)],
            false,
        ),
        "figure" => Curve::new(
            (0.0, 1.0),
            vec![
                f(|t| (4.0 * PI * t).cos() + 2.0 * (2.0 * PI * t).cos()),
                f(|t| (2.0 * PI * t).sin()),
            ],
            true,
        ),
        "constant" => Curve::constant((0.0, 1.0), &[0.5, -0.25]),
        other => {
            return Err(Failure::Usage(format!(
                "unknown curve `{other}` (expected one of {})",
                NAMES.join(", ")
            )))
        }
    };
    Ok(curve?)
}

fn f(g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ScalarFn {
    Arc::new(g)
}

/// Reads a sampled curve `t, x1, …, xd` (one row per sample, `t` strictly
/// increasing) and joins the samples linearly.
pub fn from_table(path: &Path, closed: bool) -> Result<Curve, Failure> {
    let rows = crate::io::read_table(path)?;
    if rows.len() < 2 {
        return Err(Failure::Domain(format!("{}: need at least two samples", path.display())));
    }
    let width = rows[0].len();
    if width < 2 {
        return Err(Failure::Domain(format!("{}: need a t column and at least one coordinate", path.display())));
    }
    let ts: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::Domain(format!("{}: t must be strictly increasing", path.display())));
    }
    let ts = Arc::new(ts);
    let comps = (1..width)
        .map(|c| {
            let xs: Vec<f64> = rows.iter().map(|r| r[c]).collect();
            let ts = ts.clone();
            Arc::new(move |t: f64| interpolate(&ts, &xs, t)) as ScalarFn
        })
        .collect();
    Ok(Curve::new((ts[0], ts[ts.len() - 1]), comps, closed)?)
}

fn interpolate(ts: &[f64], xs: &[f64], t: f64) -> f64 {
    let last = ts.len() - 1;
    if t <= ts[0] {
        return xs[0];
    }
    if t >= ts[last] {
        return xs[last];
    }
    let j = ts.partition_point(|&s| s <= t) - 1;
    let w = (t - ts[j]) / (ts[j + 1] - ts[j]);
    xs[j] + w * (xs[j + 1] - xs[j])
}
