//! Elementary kernels for generalized sampling operators.
//!
//! A kernel `χ` is a continuous function whose integer translates form a
//! partition of unity, `Σ_k χ(t − k) = 1`, with `Σ_k |χ(t − k)|` converging
//! uniformly. This module ships the Fejér kernel and the B-splines `M_m` of
//! any order, and a validator that checks the kernel axioms numerically on a
//! probe grid with a certified truncation budget.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

/// Number of grid points used by the continuity probe.
pub const CONTINUITY_PROBE_POINTS: usize = 10_000;

/// Largest admissible continuity jump on the probe grid.
pub const CONTINUITY_TOLERANCE: f64 = 1e-2;

/// Default ceiling on the number of terms in one truncated shifted sum.
pub const DEFAULT_MAX_TERMS: u64 = 50_000_000;

/// Term ceiling for one shifted sum during kernel validation.
pub const DEFAULT_VALIDATION_MAX_TERMS: u64 = 250_000_000;

/// Default ceiling on the running absolute sum before a series is declared divergent.
pub const DEFAULT_DIVERGENCE_CEILING: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("B-spline order must be at least 1")]
    ZeroOrder,
    #[error("invalid support metadata: {0}")]
    InvalidSupport(String),
    #[error("probe grid is empty")]
    EmptyGrid,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("truncation window of {terms} terms exceeds the limit of {limit}")]
    WindowTooLarge { terms: u64, limit: u64 },
    #[error("absolute shifted sum exceeded {ceiling} at t = {t}")]
    Divergent { t: f64, ceiling: f64 },
    #[error("kernel value is not finite at t = {0}")]
    NonFinite(f64),
}

/// Decay metadata attached to a kernel. It decides whether shifted sums are
/// summed exactly over a finite window or truncated with a certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `χ(t) = 0` for `|t| > halfwidth`.
    Compact { halfwidth: f64 },
    /// `|χ(t)| ≤ constant · |t|^(−exponent)` for `|t| ≥ 1`, with `exponent ≥ 2`.
    PolynomialDecay { constant: f64, exponent: f64 },
}

impl Support {
    fn check(&self) -> Result<(), KernelError> {
        match *self {
            Support::Compact { halfwidth } if !(halfwidth.is_finite() && halfwidth >= 0.0) => Err(
                KernelError::InvalidSupport(format!("halfwidth {halfwidth} must be finite and >= 0")),
            ),
            Support::PolynomialDecay { constant, exponent }
                if !(constant.is_finite() && constant >= 0.0 && exponent.is_finite() && exponent >= 2.0) =>
            {
                Err(KernelError::InvalidSupport(format!(
                    "decay constant {constant} must be >= 0 and exponent {exponent} >= 2"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Certified bound on `Σ |χ(x − k)|` over all integers `k` with `|x − k| > w`.
    ///
    /// Each side contributes at most `C (w^-p + w^(1-p)/(p-1))`, comparing the
    /// sum of `(d + j)^-p` with the integral from `d > w`.
    pub fn tail_bound(&self, w: f64) -> f64 {
        match *self {
            Support::Compact { halfwidth } => {
                if w >= halfwidth {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Support::PolynomialDecay { constant, exponent } => {
                if w < 1.0 {
                    return f64::INFINITY;
                }
                2.0 * constant * (w.powf(-exponent) + w.powf(1.0 - exponent) / (exponent - 1.0))
            }
        }
    }

    /// Smallest half-window (up to bisection accuracy) whose tail bound is below `tolerance`.
    pub fn window_for(&self, tolerance: f64) -> f64 {
        match *self {
            Support::Compact { halfwidth } => halfwidth,
            Support::PolynomialDecay { .. } => {
                let mut hi = 1.0;
                while self.tail_bound(hi) > tolerance {
                    hi *= 2.0;
                    if hi > 1e300 {
                        return f64::INFINITY;
                    }
                }
                let mut lo = hi / 2.0;
                if lo < 1.0 {
                    return hi;
                }
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if self.tail_bound(mid) > tolerance {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi
            }
        }
    }
}

/// Window of integer shifts `k_min..=k_max` around a point together with the
/// certified bound on the mass of the kernel translates left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftWindow {
    pub k_min: i64,
    pub k_max: i64,
    pub tail_bound: f64,
}

impl ShiftWindow {
    pub fn terms(&self) -> u64 {
        if self.k_max < self.k_min {
            0
        } else {
            (self.k_max - self.k_min) as u64 + 1
        }
    }
}

#[derive(Clone)]
enum KernelKind {
    Fejer,
    BSpline(u32),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// An evaluable sampling kernel with support/decay metadata.
#[derive(Clone)]
pub struct SamplingKernel {
    name: String,
    kind: KernelKind,
    support: Support,
}

impl fmt::Debug for SamplingKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SamplingKernel")
            .field("name", &self.name)
            .field("support", &self.support)
            .finish()
    }
}

impl SamplingKernel {
    /// The Fejér kernel `F(t) = ½ sinc²(t/2)`, bounded by `2/(π² t²)`.
    pub fn fejer() -> Self {
        SamplingKernel {
            name: "fejer".into(),
            kind: KernelKind::Fejer,
            support: Support::PolynomialDecay {
                constant: 2.0 / (PI * PI),
                exponent: 2.0,
            },
        }
    }

    /// The B-spline `M_m`, supported on `[−m/2, m/2]`.
    pub fn bspline(order: u32) -> Result<Self, KernelError> {
        if order == 0 {
            return Err(KernelError::ZeroOrder);
        }
        Ok(SamplingKernel {
            name: format!("bspline{order}"),
            kind: KernelKind::BSpline(order),
            support: Support::Compact {
                halfwidth: order as f64 / 2.0,
            },
        })
    }

    /// Wraps an arbitrary function as a kernel. The caller vouches for the
    /// support metadata; [`validate_kernel`] and [`check_support`] can be used
    /// to falsify it.
    pub fn custom<F>(name: impl Into<String>, f: F, support: Support) -> Result<Self, KernelError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        support.check()?;
        Ok(SamplingKernel {
            name: name.into(),
            kind: KernelKind::Custom(Arc::new(f)),
            support,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// True when the kernel is known to be nonnegative everywhere.
    pub fn is_nonnegative(&self) -> bool {
        matches!(self.kind, KernelKind::Fejer | KernelKind::BSpline(_))
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        match &self.kind {
            KernelKind::Fejer => fejer(t),
            KernelKind::BSpline(m) => bspline_value(*m, t),
            KernelKind::Custom(f) => f(t),
        }
    }

    /// Shift window around `x` whose neglected mass is below `tolerance`.
    /// Compactly supported kernels always get the exact window and a zero bound.
    pub fn window(&self, x: f64, tolerance: f64, max_terms: u64) -> Result<ShiftWindow, KernelError> {
        let w = match self.support {
            Support::Compact { halfwidth } => halfwidth,
            Support::PolynomialDecay { .. } => {
                if !(tolerance.is_finite() && tolerance > 0.0) {
                    return Err(KernelError::InvalidTolerance(tolerance));
                }
                self.support.window_for(tolerance)
            }
        };
        let span = 2.0 * w + 1.0;
        if !span.is_finite() || span > max_terms as f64 {
            return Err(KernelError::WindowTooLarge {
                terms: if span.is_finite() { span as u64 } else { u64::MAX },
                limit: max_terms,
            });
        }
        Ok(ShiftWindow {
            k_min: (x - w).ceil() as i64,
            k_max: (x + w).floor() as i64,
            tail_bound: self.support.tail_bound(w),
        })
    }

    /// Calls `visit(k, χ(x − k))` for every `k` in `k_min..=k_max`.
    ///
    /// The Fejér kernel reuses one sine/cosine pair for the whole window, since
    /// `sin²(π(x − k)/2)` only alternates between `sin²` and `cos²` of the
    /// fractional offset as `k` varies.
    pub fn for_each_shift(&self, x: f64, k_min: i64, k_max: i64, mut visit: impl FnMut(i64, f64)) {
        match &self.kind {
            KernelKind::Fejer => {
                let nearest = x.round();
                let offset = x - nearest;
                let base = nearest as i64;
                let (s, c) = (0.5 * PI * offset).sin_cos();
                let (s2, c2) = (s * s, c * c);
                let scale = 2.0 / (PI * PI);
                for k in k_min..=k_max {
                    let j = base - k;
                    let y = offset + j as f64;
                    let v = if y == 0.0 {
                        0.5
                    } else {
                        let num = if j.rem_euclid(2) == 0 { s2 } else { c2 };
                        scale * num / (y * y)
                    };
                    visit(k, v);
                }
            }
            _ => {
                for k in k_min..=k_max {
                    visit(k, self.evaluate(x - k as f64));
                }
            }
        }
    }

    /// `Σ_{k=k_min}^{k_max} χ(x − k)`.
    ///
    /// For the Fejér kernel the even and odd shifts are summed in closed form
    /// through the trigamma function, so the cost does not grow with the range.
    pub fn sum_shifts(&self, x: f64, k_min: i64, k_max: i64) -> f64 {
        if k_max < k_min {
            return 0.0;
        }
        match &self.kind {
            KernelKind::Fejer => {
                let nearest = x.round();
                let offset = x - nearest;
                let base = nearest as i64;
                let (s, c) = (0.5 * PI * offset).sin_cos();
                // y = x − k = offset + j with j = base − k
                let (j_lo, j_hi) = (base - k_max, base - k_min);
                let mut even = 0.0;
                let mut odd = 0.0;
                let mut centre = 0.0;
                if j_hi >= 1 {
                    let (e, o) = inverse_square_sums(offset, j_lo.max(1), j_hi);
                    even += e;
                    odd += o;
                }
                if j_lo <= -1 {
                    let (e, o) = inverse_square_sums(-offset, (-j_hi).max(1), -j_lo);
                    even += e;
                    odd += o;
                }
                if j_lo <= 0 && 0 <= j_hi {
                    centre = fejer(offset);
                }
                2.0 / (PI * PI) * (s * s * even + c * c * odd) + centre
            }
            _ => {
                let mut sum = 0.0;
                self.for_each_shift(x, k_min, k_max, |_, v| sum += v);
                sum
            }
        }
    }
}

/// `(Σ_{j even} (d + j)^-2, Σ_{j odd} (d + j)^-2)` over `a ≤ j ≤ b`, for
/// `1 ≤ a` and `|d| ≤ ½`.
fn inverse_square_sums(d: f64, a: i64, b: i64) -> (f64, f64) {
    // Σ_{i=0}^{c−1} (y + 2i)^-2 = ¼ (ψ₁(y/2) − ψ₁(y/2 + c))
    let progression = |first: i64| -> f64 {
        if first > b {
            return 0.0;
        }
        let count = ((b - first) / 2 + 1) as f64;
        let z = 0.5 * (d + first as f64);
        0.25 * (trigamma(z) - trigamma(z + count))
    };
    let first_even = a + a.rem_euclid(2);
    let first_odd = a + (1 - a.rem_euclid(2));
    (progression(first_even), progression(first_odd))
}

/// `ψ₁(z) = Σ_{i≥0} (z + i)^-2` for `z > 0`: upward recurrence to `z ≥ 15`,
/// then the asymptotic series, whose first omitted term is below `1e-16`
/// there.
fn trigamma(mut z: f64) -> f64 {
    let mut acc = 0.0;
    while z < 15.0 {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let w = 1.0 / (z * z);
    let series = 1.0 / 6.0 + w * (-1.0 / 30.0 + w * (1.0 / 42.0 + w * (-1.0 / 30.0 + w * (5.0 / 66.0))));
    acc + 1.0 / z + 0.5 * w + w * series / z
}

/// `sin(πt)/(πt)`, with value 1 at the origin.
pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        let x = PI * t.abs();
        x.sin() / x
    }
}

/// The Fejér kernel `½ sinc²(t/2)`.
pub fn fejer(t: f64) -> f64 {
    let s = sinc(0.5 * t.abs());
    0.5 * s * s
}

/// B-spline of order `m` from the truncated-power closed form
/// `1/(m−1)! Σ_j (−1)^j C(m,j) max(m/2 + t − j, 0)^(m−1)`.
pub fn bspline(m: u32, t: f64) -> Result<f64, KernelError> {
    if m == 0 {
        return Err(KernelError::ZeroOrder);
    }
    Ok(bspline_value(m, t))
}

fn bspline_value(m: u32, t: f64) -> f64 {
    let half = m as f64 / 2.0;
    let a = t.abs();
    if m == 1 {
        // closed interval [−½, ½]
        return if a <= 0.5 { 1.0 } else { 0.0 };
    }
    if a >= half {
        return 0.0;
    }
    // Evaluate at −|t|: only the terms with j < m/2 − |t| are nonzero, so
    // near the support edge the sum has few, small terms.
    let x = half - a;
    let p = (m - 1) as i32;
    let mut sum = 0.0;
    let mut binom = 1.0;
    let mut j = 0u32;
    while (j as f64) < x && j <= m {
        let term = binom * (x - j as f64).powi(p);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * (m - j) as f64 / (j + 1) as f64;
        j += 1;
    }
    let mut fact = 1.0;
    for i in 2..m {
        fact *= i as f64;
    }
    (sum / fact).max(0.0)
}

/// Numeric summary of the kernel axioms over a probe grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelValidationReport {
    /// `max_t |Σ_k χ(t − k) − 1|` over the probe grid (truncated sums).
    pub max_partition_defect: f64,
    /// Estimate of `sup_t Σ_k |χ(t − k)|` (truncated sums plus tail bound).
    pub abs_sum_sup: f64,
    /// `(δ, n) ↦ max_t Σ_{|k/n − t| ≥ δ} |χ(nt − k)|`.
    pub tail_mass: BTreeMap<TailProbe, f64>,
    /// Largest certified tail bound used for a probe.
    pub truncation_bound: f64,
    /// Largest adjacent difference on the continuity probe grid.
    pub max_continuity_jump: f64,
}

/// Key of a δ-tail probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProbe {
    pub delta: f64,
    pub n: u32,
}

impl Eq for TailProbe {}

impl Ord for TailProbe {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.delta
            .total_cmp(&other.delta)
            .then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for TailProbe {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The (δ, n) pairs probed by [`validate_kernel`].
pub const TAIL_PROBES: [(f64, u32); 4] = [(0.1, 10), (0.1, 100), (0.5, 10), (0.5, 100)];

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    pub max_terms: u64,
    pub divergence_ceiling: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            max_terms: DEFAULT_VALIDATION_MAX_TERMS,
            divergence_ceiling: DEFAULT_DIVERGENCE_CEILING,
        }
    }
}

/// Validates the kernel axioms on `probe_grid` with the default options.
pub fn validate_kernel(
    kernel: &SamplingKernel,
    probe_grid: &[f64],
    tolerance: f64,
) -> Result<KernelValidationReport, KernelError> {
    validate_kernel_with(kernel, probe_grid, tolerance, ValidationOptions::default())
}

pub fn validate_kernel_with(
    kernel: &SamplingKernel,
    probe_grid: &[f64],
    tolerance: f64,
    options: ValidationOptions,
) -> Result<KernelValidationReport, KernelError> {
    if probe_grid.is_empty() {
        return Err(KernelError::EmptyGrid);
    }
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(KernelError::InvalidTolerance(tolerance));
    }

    let partition: Vec<(f64, f64, f64)> = probe_grid
        .par_iter()
        .map(|&t| {
            let win = kernel.window(t, tolerance, options.max_terms)?;
            let mut sum = 0.0;
            let mut abs = 0.0;
            let mut finite = true;
            let mut diverged = false;
            kernel.for_each_shift(t, win.k_min, win.k_max, |_, v| {
                finite &= v.is_finite();
                sum += v;
                abs += v.abs();
                diverged |= abs > options.divergence_ceiling;
            });
            if !finite {
                return Err(KernelError::NonFinite(t));
            }
            if diverged {
                return Err(KernelError::Divergent {
                    t,
                    ceiling: options.divergence_ceiling,
                });
            }
            Ok(((sum - 1.0).abs(), abs + win.tail_bound, win.tail_bound))
        })
        .collect::<Result<_, _>>()?;
    let max_defect = partition.iter().fold(0.0f64, |m, p| m.max(p.0));
    let abs_sup = partition.iter().fold(0.0f64, |m, p| m.max(p.1));
    let max_bound = partition.iter().fold(0.0f64, |m, p| m.max(p.2));

    let jobs: Vec<(usize, f64)> = (0..TAIL_PROBES.len())
        .flat_map(|i| probe_grid.iter().map(move |&t| (i, t)))
        .collect();
    let tails: Vec<(usize, f64)> = jobs
        .par_iter()
        .map(|&(i, t)| {
            let (delta, n) = TAIL_PROBES[i];
            let x = n as f64 * t;
            let win = kernel.window(x, tolerance, options.max_terms)?;
            let mut tail = 0.0;
            kernel.for_each_shift(x, win.k_min, win.k_max, |k, v| {
                if (k as f64 / n as f64 - t).abs() >= delta {
                    tail += v.abs();
                }
            });
            Ok((i, tail))
        })
        .collect::<Result<_, KernelError>>()?;
    let mut tail_mass = BTreeMap::new();
    for (i, &(delta, n)) in TAIL_PROBES.iter().enumerate() {
        let worst = tails.iter().filter(|p| p.0 == i).fold(0.0f64, |m, p| m.max(p.1));
        tail_mass.insert(TailProbe { delta, n }, worst);
    }

    Ok(KernelValidationReport {
        max_partition_defect: max_defect,
        abs_sum_sup: abs_sup,
        tail_mass,
        truncation_bound: max_bound,
        max_continuity_jump: continuity_jump(kernel),
    })
}

/// Largest adjacent difference of the kernel over a dense grid on its support
/// (or `[−10, 10]` for kernels with polynomial decay).
pub fn continuity_jump(kernel: &SamplingKernel) -> f64 {
    let h = match kernel.support() {
        Support::Compact { halfwidth } => halfwidth.max(0.5),
        Support::PolynomialDecay { .. } => 10.0,
    };
    let n = CONTINUITY_PROBE_POINTS;
    let mut prev = kernel.evaluate(-h);
    let mut worst: f64 = 0.0;
    for i in 1..n {
        let t = -h + 2.0 * h * i as f64 / (n - 1) as f64;
        let v = kernel.evaluate(t);
        worst = worst.max((v - prev).abs());
        prev = v;
    }
    worst
}

/// Checks the support metadata on a probe grid: vanishing outside a compact
/// support, or the decay bound for `|t| ≥ 1`. Returns the first violating point.
pub fn check_support(kernel: &SamplingKernel, probe_grid: &[f64]) -> Option<f64> {
    probe_grid.iter().copied().find(|&t| {
        let v = kernel.evaluate(t);
        match kernel.support() {
            Support::Compact { halfwidth } => t.abs() > halfwidth && v != 0.0,
            Support::PolynomialDecay { constant, exponent } => {
                t.abs() >= 1.0 && v.abs() > constant * t.abs().powf(-exponent) * (1.0 + 1e-12)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle for `(M_{m−1} ∗ M_1)(t) = ∫_{t−½}^{t+½} M_{m−1}(s) ds`: composite
    /// Simpson on each polynomial piece between the knots of `M_{m−1}`.
    fn convolve_with_box(prev_order: u32, t: f64) -> f64 {
        let g = |s: f64| bspline(prev_order, s).unwrap();
        let half = prev_order as f64 / 2.0;
        let (lo, hi) = ((t - 0.5).max(-half), (t + 0.5).min(half));
        if hi <= lo {
            return 0.0;
        }
        let mut cuts = vec![lo];
        let mut knot = -half;
        while knot < hi {
            if knot > lo {
                cuts.push(knot);
            }
            knot += 1.0;
        }
        cuts.push(hi);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let steps = 200;
            let h = (b - a) / steps as f64;
            // stay strictly inside the piece so M_1's closed ends do not leak
            let eval = |s: f64| g(s.clamp(a + 1e-13, b - 1e-13));
            let mut acc = eval(a) + eval(b);
            for i in 1..steps {
                let wgt = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += wgt * eval(a + i as f64 * h);
            }
            total += acc * h / 3.0;
        }
        total
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(1.0).abs() < 1e-16);
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-15);
        assert_eq!(sinc(-0.3), sinc(0.3));
    }

    #[test]
    fn fejer_values() {
        assert_eq!(fejer(0.0), 0.5);
        assert!(fejer(2.0).abs() < 1e-30);
        assert!((fejer(1.0) - 2.0 / (PI * PI)).abs() < 1e-15);
        for t in [0.1, 1.7, 12.25, 1e3] {
            assert_eq!(fejer(t), fejer(-t));
            assert!(fejer(t) >= 0.0);
            assert!(fejer(t) <= 2.0 / (PI * PI * t * t) + 1e-18);
        }
    }

    #[test]
    fn bspline_values() {
        assert_eq!(bspline(1, 0.5).unwrap(), 1.0);
        assert_eq!(bspline(1, -0.5).unwrap(), 1.0);
        assert_eq!(bspline(1, 0.50001).unwrap(), 0.0);
        assert!((bspline(2, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((bspline(3, 0.0).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(bspline(4, 3.0).unwrap(), 0.0);
        assert_eq!(bspline(0, 0.0), Err(KernelError::ZeroOrder));
        assert!(SamplingKernel::bspline(0).is_err());
    }

    #[test]
    fn bspline_matches_box_convolution() {
        for m in 2..=5u32 {
            let h = m as f64 / 2.0;
            for i in 0..=40 {
                let t = -h + 2.0 * h * i as f64 / 40.0;
                let oracle = convolve_with_box(m - 1, t);
                assert!(
                    (bspline(m, t).unwrap() - oracle).abs() < 1e-6,
                    "m={m} t={t}: {} vs {oracle}",
                    bspline(m, t).unwrap()
                );
            }
        }
    }

    #[test]
    fn bspline_integrates_to_one() {
        for m in 2..=6u32 {
            let h = m as f64 / 2.0;
            // Simpson on the unit-spaced knots is exact for each polynomial piece.
            let pieces = m as usize;
            let sub = 64;
            let mut total = 0.0;
            for p in 0..pieces {
                let a = -h + p as f64;
                let step = 1.0 / sub as f64;
                let mut acc = bspline_value(m, a) + bspline_value(m, a + 1.0);
                for i in 1..sub {
                    let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                    acc += w * bspline_value(m, a + i as f64 * step);
                }
                total += acc * step / 3.0;
            }
            assert!((total - 1.0).abs() < 1e-8, "m={m}: {total}");
        }
    }

    #[test]
    fn bspline_symmetry_and_support() {
        for m in 1..=7u32 {
            for i in 0..200 {
                let t = -5.0 + i as f64 * 0.05;
                assert_eq!(bspline_value(m, t), bspline_value(m, -t));
                if t.abs() > m as f64 / 2.0 {
                    assert_eq!(bspline_value(m, t), 0.0);
                }
            }
        }
    }

    #[test]
    fn validate_bspline_exact_partition() {
        let k = SamplingKernel::bspline(3).unwrap();
        let r = validate_kernel(&k, &[0.0, 0.25, 0.5], 1e-10).unwrap();
        assert!(r.max_partition_defect < 1e-10, "{r:?}");
        assert_eq!(r.truncation_bound, 0.0);
        assert!((r.abs_sum_sup - 1.0).abs() < 1e-12);
        assert!(r.max_continuity_jump < CONTINUITY_TOLERANCE);
        // support [−1.5, 1.5]: every δ = 0.5 tail is empty for n = 10
        assert_eq!(r.tail_mass[&TailProbe { delta: 0.5, n: 10 }], 0.0);
    }

    #[test]
    fn validate_fejer_truncated_partition() {
        let k = SamplingKernel::fejer();
        let r = validate_kernel(&k, &[0.0, 0.5], 1e-8).unwrap();
        assert!(r.max_partition_defect < 1e-6, "{r:?}");
        assert!(r.truncation_bound <= 1e-8);
        let r = validate_kernel(&k, &[0.5], 1e-6).unwrap();
        assert!(r.abs_sum_sup >= 1.0);
        for v in r.tail_mass.values() {
            assert!(v.is_finite() && *v >= 0.0);
        }
    }

    #[test]
    fn fejer_fast_shift_matches_direct() {
        let k = SamplingKernel::fejer();
        for &x in &[0.0f64, 0.37, -3.5, 12.999, 1234.25] {
            let k0 = x.floor() as i64 - 40;
            k.for_each_shift(x, k0, k0 + 80, |kk, v| {
                let direct = fejer(x - kk as f64);
                assert!((v - direct).abs() <= 1e-14 * direct.max(1e-3), "x={x} k={kk}");
            });
        }
    }

    #[test]
    fn fejer_closed_form_range_sums() {
        let k = SamplingKernel::fejer();
        let ranges = [(-40, 40), (3, 9), (-200_000, -17), (5, 5), (0, 0), (-1, 1), (10, 300_000)];
        for &x in &[0.0, 0.5, -0.5, 0.37, -3.5, 12.999, 1234.25] {
            for &(lo, hi) in &ranges {
                // compensated reference sum
                let (mut direct, mut carry) = (0.0f64, 0.0f64);
                k.for_each_shift(x, lo, hi, |_, v| {
                    let t = direct + v;
                    carry += if direct.abs() >= v.abs() { (direct - t) + v } else { (v - t) + direct };
                    direct = t;
                });
                let direct = direct + carry;
                let fast = k.sum_shifts(x, lo, hi);
                assert!((fast - direct).abs() <= 1e-14, "x={x} [{lo}, {hi}]: {fast} vs {direct}");
            }
        }
        assert_eq!(k.sum_shifts(0.3, 5, 4), 0.0);
        let m3 = SamplingKernel::bspline(3).unwrap();
        assert!((m3.sum_shifts(0.3, -5, 5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validator_rejects_bad_input() {
        let k = SamplingKernel::fejer();
        assert_eq!(validate_kernel(&k, &[], 1e-6), Err(KernelError::EmptyGrid));
        assert!(matches!(
            validate_kernel(&k, &[0.0], 0.0),
            Err(KernelError::InvalidTolerance(_))
        ));
        assert!(matches!(
            validate_kernel(&k, &[0.0], 1e-12),
            Err(KernelError::WindowTooLarge { .. })
        ));
    }

    #[test]
    fn validator_flags_divergence() {
        // claims compact support but is enormous inside it
        let k = SamplingKernel::custom("huge", |t: f64| if t.abs() <= 3.0 { 1e7 } else { 0.0 }, Support::Compact { halfwidth: 3.0 })
            .unwrap();
        assert!(matches!(
            validate_kernel(&k, &[0.2], 1e-6),
            Err(KernelError::Divergent { .. })
        ));
    }

    #[test]
    fn support_metadata_checks() {
        assert!(check_support(&SamplingKernel::fejer(), &[1.0, 2.5, 10.0, 1e4]).is_none());
        let liar = SamplingKernel::custom("liar", |t: f64| (-t * t).exp(), Support::Compact { halfwidth: 1.0 }).unwrap();
        assert_eq!(check_support(&liar, &[0.0, 1.5]), Some(1.5));
        assert!(SamplingKernel::custom("x", |_| 0.0, Support::PolynomialDecay { constant: 1.0, exponent: 1.5 }).is_err());
    }

    #[test]
    fn decay_window_bound_is_certified() {
        let s = SamplingKernel::fejer().support();
        for tol in [1e-2, 1e-4, 1e-6] {
            let w = s.window_for(tol);
            assert!(s.tail_bound(w) <= tol);
            assert!(s.tail_bound(w * 0.9) > tol);
        }
    }

    #[test]
    fn continuity_probe_detects_jump() {
        let step = SamplingKernel::custom("step", |t: f64| if t < 0.0 { 1.0 } else { 0.0 }, Support::Compact { halfwidth: 1.0 })
            .unwrap();
        assert!(continuity_jump(&step) > 0.5);
        assert!(continuity_jump(&SamplingKernel::fejer()) < CONTINUITY_TOLERANCE);
    }
}
