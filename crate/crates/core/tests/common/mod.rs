// Shared fixtures for the integration tests. Not every test binary uses all
// of them.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use curve_approx::curves::{Curve, ExtensionStrategy};
use curve_approx::imagecurve::{rasterize, BinaryImage, Pixel};
use curve_approx::kernels::SamplingKernel;
use curve_approx::operators::{FamilyKind, OperatorFamily};

type Boxed = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// `γ(t) = (t cos πt, t sin πt)` on `[0, 1]`.
pub fn spiral() -> Curve {
    let comps: Vec<Boxed> = vec![Box::new(|t| t * (PI * t).cos()), Box::new(|t| t * (PI * t).sin())];
    Curve::from_fns((0.0, 1.0), comps, false).unwrap()
}

/// `γ(t) = (cos 2πt, sin 2πt, t)` on `[0, 2]`.
pub fn helix() -> Curve {
    let comps: Vec<Boxed> = vec![
        Box::new(|t| (TAU * t).cos()),
        Box::new(|t| (TAU * t).sin()),
        Box::new(|t| t),
    ];
    Curve::from_fns((0.0, 2.0), comps, false).unwrap()
}

/// `γ(t) = (cos 4πt + 2 cos 2πt, sin 2πt)` on `[0, 1]`, closed.
pub fn closed_figure() -> Curve {
    let comps: Vec<Boxed> = vec![
        Box::new(|t| (2.0 * TAU * t).cos() + 2.0 * (TAU * t).cos()),
        Box::new(|t| (TAU * t).sin()),
    ];
    Curve::from_fns((0.0, 1.0), comps, true).unwrap()
}

pub fn m(order: u32) -> OperatorFamily {
    OperatorFamily::generalized_sampling(SamplingKernel::bspline(order).unwrap()).unwrap()
}

pub fn fejer() -> OperatorFamily {
    OperatorFamily::generalized_sampling(SamplingKernel::fejer()).unwrap()
}

/// The strategy an open curve on `[0, 1]` gets for each family.
pub fn open_strategy(family: &OperatorFamily) -> ExtensionStrategy {
    ExtensionStrategy::default_for(family.domain())
}

pub const EXAMPLE_CODES: [u8; 11] = [0, 1, 1, 2, 4, 4, 3, 5, 6, 7, 6];
pub const EXAMPLE_U: [i64; 11] = [4, 5, 6, 7, 7, 6, 5, 4, 3, 3, 4];
pub const EXAMPLE_V: [i64; 11] = [6, 6, 5, 4, 3, 3, 3, 2, 3, 4, 5];

/// The eleven-pixel closed curve of the worked chain-code example, on a
/// 10 × 9 canvas.
pub const EXAMPLE_PBM: &str = "P1
# worked chain-code example
10 9
0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0
0 0 0 0 1 0 0 0 0 0
0 0 0 1 0 1 1 1 0 0
0 0 0 1 0 0 0 1 0 0
0 0 0 0 1 0 1 0 0 0
0 0 0 0 1 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0
";

fn closed_shape(cx: f64, cy: f64, radius: impl Fn(f64) -> (f64, f64) + Send + Sync + 'static) -> Curve {
    let radius = std::sync::Arc::new(radius);
    let r2 = radius.clone();
    let comps: Vec<Boxed> = vec![
        Box::new(move |t| cx + radius(t).0 * (TAU * t).cos()),
        Box::new(move |t| cy + r2(t).1 * (TAU * t).sin()),
    ];
    Curve::from_fns((0.0, 1.0), comps, true).unwrap()
}

/// Superellipse `|x/a|^p + |y/b|^p = 1` traced by angle. The parameter is
/// reduced mod 1 so that the fractional powers see `sin 0` at both ends.
fn rounded_rectangle(cx: f64, cy: f64, a: f64, b: f64, p: f64) -> Curve {
    let comps: Vec<Boxed> = vec![
        Box::new(move |t| {
            let c = (TAU * t.fract()).cos();
            cx + a * c.signum() * c.abs().powf(2.0 / p)
        }),
        Box::new(move |t| {
            let s = (TAU * t.fract()).sin();
            cy + b * s.signum() * s.abs().powf(2.0 / p)
        }),
    ];
    Curve::from_fns((0.0, 1.0), comps, true).unwrap()
}

/// Three rasterized closed curves with at least 100 pixels each.
pub fn synthetic_closed_images() -> Vec<(&'static str, BinaryImage)> {
    let ellipse = closed_shape(40.0, 30.0, |_| (30.0, 18.0));
    let rect = rounded_rectangle(45.0, 32.0, 34.0, 22.0, 5.0);
    let blob = closed_shape(40.0, 32.0, |t| {
        let r = 24.0 + 6.0 * (3.0 * TAU * t).cos() + 2.0 * (5.0 * TAU * t).sin();
        (r, 0.85 * r)
    });
    vec![
        ("ellipse", rasterize(&ellipse, 60, 80).unwrap()),
        ("rounded rectangle", rasterize(&rect, 64, 90).unwrap()),
        ("blob", rasterize(&blob, 64, 80).unwrap()),
    ]
}

/// A small closed lattice curve for cheap property checks.
pub fn lattice_circle(cx: f64, cy: f64, r: f64, rows: usize, cols: usize) -> BinaryImage {
    rasterize(&closed_shape(cx, cy, move |_| (r, r)), rows, cols).unwrap()
}

/// Pixels of an image as a sorted list.
pub fn pixel_set(image: &BinaryImage) -> Vec<Pixel> {
    let mut px = image.curve_pixels();
    px.sort_unstable();
    px
}

/// `Σ f(k/n) K_{n,k}(t)` by plain summation over an explicit index range,
/// with basis values from textbook formulas. Returns `None` when the family
/// is not one the oracle knows how to sum exactly.
pub fn direct_sum(family: &OperatorFamily, f: &dyn Fn(f64) -> f64, n: u32, t: f64) -> Option<f64> {
    let nf = n as f64;
    match family.kind() {
        FamilyKind::Bernstein => {
            let mut binom = 1.0;
            let mut sum = 0.0;
            for k in 0..=n {
                if k > 0 {
                    binom = binom * (nf - k as f64 + 1.0) / k as f64;
                }
                sum += f(k as f64 / nf) * binom * t.powi(k as i32) * (1.0 - t).powi((n - k) as i32);
            }
            Some(sum)
        }
        FamilyKind::SzaszMirakjan => {
            let x = nf * t;
            let mut w = (-x).exp();
            let mut sum = 0.0;
            for k in 0..4000 {
                sum += f(k as f64 / nf) * w;
                w *= x / (k as f64 + 1.0);
            }
            Some(sum)
        }
        FamilyKind::Baskakov => {
            let q = t / (1.0 + t);
            let mut w = (1.0 + t).powi(-(n as i32));
            let mut sum = 0.0;
            for k in 0..20_000 {
                sum += f(k as f64 / nf) * w;
                w *= (nf + k as f64) / (k as f64 + 1.0) * q;
            }
            Some(sum)
        }
        FamilyKind::Sampling(kernel) => {
            let chi: Box<dyn Fn(f64) -> f64> = match kernel.name() {
                "fejer" => Box::new(|u| {
                    let x = PI * u / 2.0;
                    if x == 0.0 { 0.5 } else { 0.5 * (x.sin() / x).powi(2) }
                }),
                name => {
                    let order: u32 = name.strip_prefix("bspline")?.parse().ok()?;
                    Box::new(move |u| cox_de_boor(order, u + order as f64 / 2.0))
                }
            };
            // only used with f supported in [−3, 3]
            let k_max = 3 * n as i64 + 1;
            Some((-k_max..=k_max).map(|k| f(k as f64 / nf) * chi(nf * t - k as f64)).sum())
        }
    }
}

/// Cardinal B-spline of order `m` supported on `[0, m]`, by the
/// Cox–de Boor recursion.
pub fn cox_de_boor(m: u32, x: f64) -> f64 {
    if m == 1 {
        return if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
    }
    let mf = m as f64;
    (x * cox_de_boor(m - 1, x) + (mf - x) * cox_de_boor(m - 1, x - 1.0)) / (mf - 1.0)
}
