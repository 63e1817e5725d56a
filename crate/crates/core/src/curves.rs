//! Vector-valued curves and componentwise operator application.
//!
//! A [`Curve`] is a tuple of scalar closures on a closed interval `[a, b]`.
//! Operators act on each component separately after the curve has been
//! adapted to the operator domain by an [`ExtensionStrategy`]:
//!
//! * `AffineRemap` pulls the curve back to `[0, 1]` with `σ(s) = (1−s)a + sb`
//!   and pushes the approximant forward with `σ⁻¹`.
//! * `ConstantPad` extends to `ℝ` with the endpoint values.
//! * `TranslateAndPad` shifts to `[0, b − a]` and pads on the right.
//! * `Periodic` extends a closed curve on `[0, 1]` with period 1.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::operators::{Domain, OperatorError, OperatorFamily};

/// Closedness tolerance `max_i |x_i(a) − x_i(b)|`.
pub const CLOSURE_TOLERANCE: f64 = 1e-9;

/// Number of points of the finiteness probe run when a curve is built.
const FINITE_PROBE_POINTS: usize = 65;

/// Points at which a freshly approximated curve is evaluated eagerly.
const PROBE_POINTS_AFTER_APPLY: usize = 9;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("invalid domain [{0}, {1}]: need finite a < b")]
    InvalidDomain(f64, f64),
    #[error("a curve needs at least one component")]
    NoComponents,
    #[error("component {component} is not finite at t = {t}")]
    NonFinite { component: usize, t: f64 },
    #[error("curve flagged closed but its endpoints differ by {0:e}")]
    NotClosed(f64),
    #[error("strategy {strategy} cannot be used with an operator on {domain}")]
    IncompatibleStrategy { strategy: ExtensionStrategy, domain: Domain },
    #[error("periodic extension requires a closed curve")]
    PeriodicNotClosed,
    #[error("periodic extension requires the domain [0, 1], got [{0}, {1}]")]
    PeriodicDomain(f64, f64),
    #[error("affine remapping is applied inside apply_operator, not as a scalar extension")]
    RemapIsNotAnExtension,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("domain mismatch: [{0}, {1}] vs [{2}, {3}]")]
    DomainMismatch(f64, f64, f64, f64),
    #[error("grid size must be at least 2")]
    GridTooSmall,
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionStrategy {
    ConstantPad,
    TranslateAndPad,
    Periodic,
    AffineRemap,
}

impl fmt::Display for ExtensionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtensionStrategy::ConstantPad => "constant-pad",
            ExtensionStrategy::TranslateAndPad => "translate-and-pad",
            ExtensionStrategy::Periodic => "periodic",
            ExtensionStrategy::AffineRemap => "affine-remap",
        })
    }
}

impl std::str::FromStr for ExtensionStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "constant-pad" | "pad" => Ok(ExtensionStrategy::ConstantPad),
            "translate-and-pad" | "translate" => Ok(ExtensionStrategy::TranslateAndPad),
            "periodic" => Ok(ExtensionStrategy::Periodic),
            "affine-remap" | "remap" => Ok(ExtensionStrategy::AffineRemap),
            other => Err(format!("unknown extension strategy `{other}`")),
        }
    }
}

impl ExtensionStrategy {
    /// The strategy that fits an operator domain when the curve is open.
    pub fn default_for(domain: Domain) -> Self {
        match domain {
            Domain::WholeLine => ExtensionStrategy::ConstantPad,
            Domain::HalfLine => ExtensionStrategy::TranslateAndPad,
            Domain::UnitInterval => ExtensionStrategy::AffineRemap,
        }
    }

    pub fn is_compatible(&self, domain: Domain) -> bool {
        matches!(
            (self, domain),
            (ExtensionStrategy::AffineRemap, Domain::UnitInterval)
                | (ExtensionStrategy::ConstantPad, Domain::WholeLine)
                | (ExtensionStrategy::Periodic, Domain::WholeLine)
                | (ExtensionStrategy::TranslateAndPad, Domain::HalfLine)
        )
    }
}

/// A curve `γ = (x_1, …, x_d) : [a, b] → ℝ^d`.
#[derive(Clone)]
pub struct Curve {
    start: f64,
    end: f64,
    components: Vec<ScalarFn>,
    closed: bool,
    continuous: bool,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("domain", &(self.start, self.end))
            .field("dimension", &self.components.len())
            .field("closed", &self.closed)
            .field("continuous", &self.continuous)
            .finish()
    }
}

impl Curve {
    /// Builds a continuous curve. Components are probed for finiteness and,
    /// when `closed` is set, the endpoint values must agree to
    /// [`CLOSURE_TOLERANCE`].
    pub fn new(domain: (f64, f64), components: Vec<ScalarFn>, closed: bool) -> Result<Self, CurveError> {
        Self::build(domain, components, closed, true)
    }

    /// Builds a curve whose components may jump (piecewise-constant data).
    /// The closure check is skipped since such curves can jump at `b`.
    pub fn new_discontinuous(
        domain: (f64, f64),
        components: Vec<ScalarFn>,
        closed: bool,
    ) -> Result<Self, CurveError> {
        Self::build(domain, components, closed, false)
    }

    fn build(domain: (f64, f64), components: Vec<ScalarFn>, closed: bool, continuous: bool) -> Result<Self, CurveError> {
        let (a, b) = domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(CurveError::InvalidDomain(a, b));
        }
        if components.is_empty() {
            return Err(CurveError::NoComponents);
        }
        let curve = Curve {
            start: a,
            end: b,
            components,
            closed,
            continuous,
        };
        for i in 0..FINITE_PROBE_POINTS {
            let t = curve.grid_point(i, FINITE_PROBE_POINTS);
            for (c, f) in curve.components.iter().enumerate() {
                if !f(t).is_finite() {
                    return Err(CurveError::NonFinite { component: c, t });
                }
            }
        }
        if closed && continuous {
            let gap = curve.closure_defect();
            if gap.is_nan() || gap >= CLOSURE_TOLERANCE {
                return Err(CurveError::NotClosed(gap));
            }
        }
        Ok(curve)
    }

    /// Convenience constructor from plain closures.
    pub fn from_fns<F>(domain: (f64, f64), fns: Vec<F>, closed: bool) -> Result<Self, CurveError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(domain, fns.into_iter().map(|f| Arc::new(f) as ScalarFn).collect(), closed)
    }

    /// The constant curve `γ(t) = point`.
    pub fn constant(domain: (f64, f64), point: &[f64]) -> Result<Self, CurveError> {
        let comps = point
            .iter()
            .map(|&v| Arc::new(move |_: f64| v) as ScalarFn)
            .collect();
        Self::new(domain, comps, true)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    pub fn component(&self, i: usize) -> &ScalarFn {
        &self.components[i]
    }

    pub fn components(&self) -> &[ScalarFn] {
        &self.components
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.components.iter().map(|f| f(t)).collect()
    }

    /// `max_i |x_i(a) − x_i(b)|`.
    pub fn closure_defect(&self) -> f64 {
        self.components
            .iter()
            .map(|f| (f(self.start) - f(self.end)).abs())
            .fold(0.0, f64::max)
    }

    /// The `i`-th of `count` equispaced points, endpoints included.
    pub fn grid_point(&self, i: usize, count: usize) -> f64 {
        if count < 2 || i == 0 {
            return self.start;
        }
        if i + 1 == count {
            return self.end;
        }
        self.start + (self.end - self.start) * i as f64 / (count - 1) as f64
    }

    /// Rows `[t, x_1(t), …, x_d(t)]` on an equispaced grid.
    pub fn sample_table(&self, count: usize) -> Vec<Vec<f64>> {
        let count = count.max(2);
        (0..count)
            .map(|i| {
                let t = self.grid_point(i, count);
                let mut row = Vec::with_capacity(self.dimension() + 1);
                row.push(t);
                row.extend(self.eval(t));
                row
            })
            .collect()
    }

    /// Writes the sample table as CSV with header `t,x1,…,xd`.
    pub fn write_csv<W: Write>(&self, count: usize, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.dimension()).map(|i| format!("x{i}")));
        w.write_record(&header)?;
        for row in self.sample_table(count) {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON document with domain, dimension, closed flag and sample table.
    pub fn to_json(&self, count: usize) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export {
            domain: [f64; 2],
            dimension: usize,
            closed: bool,
            samples: Vec<Vec<f64>>,
        }
        serde_json::to_value(Export {
            domain: [self.start, self.end],
            dimension: self.dimension(),
            closed: self.closed,
            samples: self.sample_table(count),
        })
        .expect("plain numeric export")
    }
}

/// Extends `f : [a, b] → ℝ` to the operator domain.
pub fn extend_scalar(f: ScalarFn, domain: (f64, f64), strategy: ExtensionStrategy) -> Result<ScalarFn, CurveError> {
    let (a, b) = domain;
    match strategy {
        ExtensionStrategy::ConstantPad => {
            let (fa, fb) = (f(a), f(b));
            Ok(Arc::new(move |t: f64| {
                if t < a {
                    fa
                } else if t > b {
                    fb
                } else {
                    f(t)
                }
            }))
        }
        ExtensionStrategy::TranslateAndPad => {
            let len = b - a;
            let fb = f(b);
            Ok(Arc::new(move |t: f64| if t <= len { f((t + a).min(b)) } else { fb }))
        }
        ExtensionStrategy::Periodic => {
            if a != 0.0 || b != 1.0 {
                return Err(CurveError::PeriodicDomain(a, b));
            }
            Ok(Arc::new(move |t: f64| f(t - t.floor())))
        }
        ExtensionStrategy::AffineRemap => Err(CurveError::RemapIsNotAnExtension),
    }
}

/// Applies `S_n` to each component of `γ` after adapting it with `strategy`.
/// The result lives on the same `[a, b]` as `γ`.
pub fn apply_operator(
    family: &OperatorFamily,
    gamma: &Curve,
    n: u32,
    strategy: ExtensionStrategy,
) -> Result<Curve, CurveError> {
    let domain = family.domain();
    if !strategy.is_compatible(domain) {
        return Err(CurveError::IncompatibleStrategy { strategy, domain });
    }
    if n == 0 {
        return Err(OperatorError::ZeroN.into());
    }
    if strategy == ExtensionStrategy::Periodic && !gamma.closed {
        return Err(CurveError::PeriodicNotClosed);
    }
    let (a, b) = gamma.domain();
    let fam = Arc::new(family.clone());

    type Fallible = Arc<dyn Fn(f64) -> Result<f64, OperatorError> + Send + Sync>;
    let mut evaluators: Vec<Fallible> = Vec::with_capacity(gamma.dimension());
    for x in gamma.components.iter().cloned() {
        let fam = Arc::clone(&fam);
        let eval: Fallible = match strategy {
            ExtensionStrategy::AffineRemap => {
                let pulled: ScalarFn = Arc::new(move |s: f64| x((1.0 - s) * a + s * b));
                Arc::new(move |t: f64| {
                    let s = ((t - a) / (b - a)).clamp(0.0, 1.0);
                    fam.evaluate(&*pulled, n, s).map(|e| e.value)
                })
            }
            // The padded extensions are constant outside [n·a, n·b] in the index,
            // so the samples in between are taken once and the constant tails
            // are handed to the operator as such.
            ExtensionStrategy::ConstantPad => {
                let ext = extend_scalar(x, (a, b), strategy)?;
                let padded = PaddedSamples::new(&*ext, n, a, b);
                Arc::new(move |t: f64| padded.evaluate(&fam, n, t))
            }
            ExtensionStrategy::TranslateAndPad => {
                // only [0, b − a] is ever queried, which realizes the restriction
                let ext = extend_scalar(x, (a, b), strategy)?;
                let padded = PaddedSamples::new(&*ext, n, 0.0, b - a);
                Arc::new(move |t: f64| padded.evaluate(&fam, n, (t - a).max(0.0)))
            }
            ExtensionStrategy::Periodic => {
                if a != 0.0 || b != 1.0 {
                    return Err(CurveError::PeriodicDomain(a, b));
                }
                // f(k/n) only depends on k mod n for a 1-periodic f
                let samples: Arc<Vec<f64>> = Arc::new((0..n).map(|r| x(r as f64 / n as f64)).collect());
                let period = n as i64;
                Arc::new(move |t: f64| {
                    fam.evaluate_indexed(n, t, &mut |k| samples[k.rem_euclid(period) as usize])
                        .map(|e| e.value)
                })
            }
        };
        evaluators.push(eval);
    }

    // surface truncation and sampling errors now rather than as NaNs later
    for i in 0..PROBE_POINTS_AFTER_APPLY {
        let t = gamma.grid_point(i, PROBE_POINTS_AFTER_APPLY);
        for eval in &evaluators {
            eval(t)?;
        }
    }

    let comps: Vec<ScalarFn> = evaluators
        .into_iter()
        .map(|eval| Arc::new(move |t: f64| eval(t).unwrap_or(f64::NAN)) as ScalarFn)
        .collect();

    let mut result = Curve {
        start: a,
        end: b,
        components: comps,
        closed: false,
        continuous: true,
    };
    result.closed = gamma.closed && result.closure_defect() < CLOSURE_TOLERANCE;
    Ok(result)
}

/// Samples `f(k/n)` of a function that is constant left of `lo` and right
/// of `hi`.
struct PaddedSamples {
    first: i64,
    inner: Vec<f64>,
    left: f64,
    right: f64,
}

impl PaddedSamples {
    fn new(f: &dyn Fn(f64) -> f64, n: u32, lo: f64, hi: f64) -> Self {
        let nf = n as f64;
        let first = (nf * lo).ceil() as i64;
        let last = (nf * hi).floor() as i64;
        PaddedSamples {
            first,
            inner: (first..=last).map(|k| f(k as f64 / nf)).collect(),
            left: f(lo),
            right: f(hi),
        }
    }

    fn evaluate(&self, family: &OperatorFamily, n: u32, t: f64) -> Result<f64, OperatorError> {
        family
            .evaluate_padded(n, t, self.first, &self.inner, self.left, self.right)
            .map(|e| e.value)
    }
}

/// `max_{grid} max_i |x_i(t) − x̂_i(t)|` on `grid_size` equispaced points.
pub fn sup_error(gamma: &Curve, approx: &Curve, grid_size: usize) -> Result<f64, CurveError> {
    if gamma.dimension() != approx.dimension() {
        return Err(CurveError::DimensionMismatch {
            expected: gamma.dimension(),
            found: approx.dimension(),
        });
    }
    let (a, b) = gamma.domain();
    let (c, d) = approx.domain();
    let scale = 1e-12 * (1.0 + a.abs().max(b.abs()));
    if (a - c).abs() > scale || (b - d).abs() > scale {
        return Err(CurveError::DomainMismatch(a, b, c, d));
    }
    if grid_size < 2 {
        return Err(CurveError::GridTooSmall);
    }
    use rayon::prelude::*;
    let worst = (0..grid_size)
        .into_par_iter()
        .map(|i| {
            let t = gamma.grid_point(i, grid_size);
            gamma
                .components
                .iter()
                .zip(approx.components.iter())
                .map(|(f, g)| {
                    let e = (f(t) - g(t)).abs();
                    if e.is_nan() { f64::INFINITY } else { e }
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// `t ↦ A γ(t) + offset`, with `A` given row-major as `d` rows of length `d`.
pub fn affine_transform(gamma: &Curve, matrix: &[Vec<f64>], offset: &[f64]) -> Result<Curve, CurveError> {
    let d = gamma.dimension();
    if matrix.len() != d {
        return Err(CurveError::DimensionMismatch {
            expected: d,
            found: matrix.len(),
        });
    }
    if let Some(row) = matrix.iter().find(|r| r.len() != d) {
        return Err(CurveError::DimensionMismatch {
            expected: d,
            found: row.len(),
        });
    }
    if offset.len() != d {
        return Err(CurveError::DimensionMismatch {
            expected: d,
            found: offset.len(),
        });
    }
    let source = Arc::new(gamma.components.clone());
    let comps = matrix
        .iter()
        .zip(offset.iter())
        .map(|(row, &shift)| {
            let row = row.clone();
            let source = Arc::clone(&source);
            Arc::new(move |t: f64| {
                row.iter()
                    .zip(source.iter())
                    .filter(|(w, _)| **w != 0.0)
                    .map(|(w, f)| w * f(t))
                    .sum::<f64>()
                    + shift
            }) as ScalarFn
        })
        .collect();
    Ok(Curve {
        start: gamma.start,
        end: gamma.end,
        components: comps,
        closed: gamma.closed,
        continuous: gamma.continuous,
    })
}

/// Uniform scaling `t ↦ factor · γ(t)`.
pub fn scale(gamma: &Curve, factor: f64) -> Curve {
    let d = gamma.dimension();
    let matrix: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { factor } else { 0.0 }).collect())
        .collect();
    affine_transform(gamma, &matrix, &vec![0.0; d]).expect("square matrix of matching size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::SamplingKernel;
    use std::f64::consts::PI;

    fn m3() -> OperatorFamily {
        OperatorFamily::generalized_sampling(SamplingKernel::bspline(3).unwrap()).unwrap()
    }

    fn spiral() -> Curve {
        Curve::from_fns(
            (0.0, 1.0),
            vec![
                Box::new(|t: f64| t * (PI * t).cos()) as Box<dyn Fn(f64) -> f64 + Send + Sync>,
                Box::new(|t: f64| t * (PI * t).sin()),
            ],
            false,
        )
        .unwrap()
    }

    fn closed_figure() -> Curve {
        Curve::from_fns(
            (0.0, 1.0),
            vec![
                Box::new(|t: f64| (4.0 * PI * t).cos() + 2.0 * (2.0 * PI * t).cos()) as Box<dyn Fn(f64) -> f64 + Send + Sync>,
                Box::new(|t: f64| (2.0 * PI * t).sin()),
            ],
            true,
        )
        .unwrap()
    }

    #[test]
    fn constant_curve_is_preserved() {
        let families = [
            (m3(), ExtensionStrategy::ConstantPad),
            (m3(), ExtensionStrategy::Periodic),
            (OperatorFamily::generalized_sampling(SamplingKernel::fejer()).unwrap(), ExtensionStrategy::ConstantPad),
            (OperatorFamily::szasz_mirakjan(), ExtensionStrategy::TranslateAndPad),
            (OperatorFamily::baskakov(), ExtensionStrategy::TranslateAndPad),
            (OperatorFamily::bernstein(), ExtensionStrategy::AffineRemap),
        ];
        let c = Curve::constant((0.0, 1.0), &[3.0, -1.0]).unwrap();
        for (fam, strat) in families {
            let tol = fam.tolerance() * 4.0 + 1e-12;
            let approx = apply_operator(&fam, &c, 7, strat).unwrap();
            for i in 0..11 {
                let v = approx.eval(i as f64 / 10.0);
                assert!((v[0] - 3.0).abs() < tol && (v[1] + 1.0).abs() < tol, "{}: {v:?}", fam.name());
            }
        }
    }

    #[test]
    fn bernstein_spiral_error_decreases() {
        let g = spiral();
        let errs: Vec<f64> = [30, 50, 100]
            .iter()
            .map(|&n| {
                let a = apply_operator(&OperatorFamily::bernstein(), &g, n, ExtensionStrategy::AffineRemap).unwrap();
                sup_error(&g, &a, 400).unwrap()
            })
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn periodic_sampling_closes_curve() {
        let g = closed_figure();
        let a = apply_operator(&m3(), &g, 10, ExtensionStrategy::Periodic).unwrap();
        assert!(a.closure_defect() < 1e-9);
        assert!(a.is_closed());
    }

    #[test]
    fn strategy_compatibility() {
        let g = spiral();
        assert!(matches!(
            apply_operator(&OperatorFamily::bernstein(), &g, 5, ExtensionStrategy::ConstantPad),
            Err(CurveError::IncompatibleStrategy { .. })
        ));
        assert!(matches!(
            apply_operator(&OperatorFamily::szasz_mirakjan(), &g, 5, ExtensionStrategy::AffineRemap),
            Err(CurveError::IncompatibleStrategy { .. })
        ));
        assert_eq!(
            apply_operator(&m3(), &g, 5, ExtensionStrategy::Periodic).unwrap_err(),
            CurveError::PeriodicNotClosed
        );
        assert!(matches!(
            apply_operator(&m3(), &g, 0, ExtensionStrategy::ConstantPad),
            Err(CurveError::Operator(OperatorError::ZeroN))
        ));
    }

    #[test]
    fn extension_examples() {
        let id: ScalarFn = Arc::new(|t: f64| t);
        let pad = extend_scalar(id.clone(), (2.0, 3.0), ExtensionStrategy::ConstantPad).unwrap();
        assert_eq!(pad(0.0), 2.0);
        assert_eq!(pad(5.0), 3.0);
        assert_eq!(pad(2.5), 2.5);
        let sq: ScalarFn = Arc::new(|t: f64| t * t);
        let tr = extend_scalar(sq, (1.0, 2.0), ExtensionStrategy::TranslateAndPad).unwrap();
        assert_eq!(tr(0.5), 2.25);
        assert_eq!(tr(7.0), 4.0);
        let bump: ScalarFn = Arc::new(|t: f64| t * (1.0 - t));
        let per = extend_scalar(bump, (0.0, 1.0), ExtensionStrategy::Periodic).unwrap();
        assert!((per(2.25) - 0.1875).abs() < 1e-15);
        assert!((per(-0.75) - 0.1875).abs() < 1e-15);
        assert_eq!(
            extend_scalar(id.clone(), (0.0, 2.0), ExtensionStrategy::Periodic).err(),
            Some(CurveError::PeriodicDomain(0.0, 2.0))
        );
        assert_eq!(
            extend_scalar(id, (0.0, 1.0), ExtensionStrategy::AffineRemap).err(),
            Some(CurveError::RemapIsNotAnExtension)
        );
    }

    #[test]
    fn sup_error_examples() {
        let id = Curve::from_fns((0.0, 1.0), vec![|t: f64| t], false).unwrap();
        let shifted = Curve::from_fns((0.0, 1.0), vec![|t: f64| t + 0.5], false).unwrap();
        let sq = Curve::from_fns((0.0, 1.0), vec![|t: f64| t * t], false).unwrap();
        assert_eq!(sup_error(&id, &id, 50).unwrap(), 0.0);
        assert!((sup_error(&id, &shifted, 11).unwrap() - 0.5).abs() < 1e-15);
        assert!((sup_error(&sq, &id, 101).unwrap() - 0.25).abs() < 1e-15);
        let other = Curve::from_fns((0.0, 2.0), vec![|t: f64| t], false).unwrap();
        assert!(matches!(sup_error(&id, &other, 11), Err(CurveError::DomainMismatch(..))));
        assert!(matches!(sup_error(&id, &spiral(), 11), Err(CurveError::DimensionMismatch { .. })));
        assert_eq!(sup_error(&id, &id, 1), Err(CurveError::GridTooSmall));
    }

    #[test]
    fn affine_examples() {
        let circle = Curve::from_fns(
            (0.0, 1.0),
            vec![
                Box::new(|t: f64| (2.0 * PI * t).cos()) as Box<dyn Fn(f64) -> f64 + Send + Sync>,
                Box::new(|t: f64| (2.0 * PI * t).sin()),
            ],
            true,
        )
        .unwrap();
        let same = affine_transform(&circle, &[vec![1.0, 0.0], vec![0.0, 1.0]], &[0.0, 0.0]).unwrap();
        let big = scale(&circle, 2.0);
        let rot = affine_transform(&circle, &[vec![0.0, -1.0], vec![1.0, 0.0]], &[0.0, 0.0]).unwrap();
        for i in 0..20 {
            let t = i as f64 / 19.0;
            assert_eq!(same.eval(t), circle.eval(t));
            let p = big.eval(t);
            assert!((p[0].hypot(p[1]) - 2.0).abs() < 1e-12);
        }
        let p = rot.eval(0.0);
        assert!((p[0] - 0.0).abs() < 1e-12 && (p[1] - 1.0).abs() < 1e-12);
        assert!(big.is_closed() && rot.is_closed());
        assert!(affine_transform(&circle, &[vec![1.0]], &[0.0]).is_err());
        assert!(affine_transform(&circle, &[vec![1.0, 0.0], vec![0.0, 1.0]], &[0.0]).is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            Curve::from_fns((1.0, 1.0), vec![|t: f64| t], false),
            Err(CurveError::InvalidDomain(..))
        ));
        assert!(matches!(
            Curve::from_fns((0.0, 1.0), vec![|t: f64| t], true),
            Err(CurveError::NotClosed(_))
        ));
        assert!(matches!(
            Curve::from_fns((0.0, 1.0), vec![|t: f64| 1.0 / (t - 0.5)], false),
            Err(CurveError::NonFinite { .. })
        ));
        assert_eq!(Curve::new((0.0, 1.0), vec![], false).unwrap_err(), CurveError::NoComponents);
    }

    #[test]
    fn exports() {
        let g = spiral();
        let mut buf = Vec::new();
        g.write_csv(5, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,x1,x2");
        assert_eq!(lines.len(), 6);
        let j = g.to_json(3);
        assert_eq!(j["dimension"], 2);
        assert_eq!(j["closed"], false);
        assert_eq!(j["samples"].as_array().unwrap().len(), 3);
        assert_eq!(j["domain"][1], 1.0);
    }
}
