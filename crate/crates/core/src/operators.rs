//! Discrete approximation operators
//! `(S_n f)(t) = Σ_{k∈J} f(ν_{n,k}) K_{n,k}(t)`.
//!
//! Four families are provided, all with equispaced nodes `ν_{n,k} = k/n`:
//!
//! | family               | domain      | index set | basis `K_{n,k}(t)`                   |
//! |----------------------|-------------|-----------|--------------------------------------|
//! | generalized sampling | `ℝ`         | `ℤ`       | `χ(nt − k)`                          |
//! | Szász-Mirak'jan      | `[0, ∞)`    | `ℕ`       | `e^{−nt} (nt)^k / k!`                |
//! | Baskakov             | `[0, ∞)`    | `ℕ`       | `C(n+k−1, k) t^k / (1+t)^{n+k}`      |
//! | Bernstein            | `[0, 1]`    | `0..=n`   | `C(n, k) t^k (1−t)^{n−k}`            |
//!
//! Infinite sums are truncated with a certificate: every evaluation reports
//! the index range actually summed and an upper bound on the basis mass left
//! out, so the neglected part of `S_n f` is at most `‖f‖_∞ · tail_bound`.

use std::fmt;

use thiserror::Error;

use crate::kernels::{self, KernelError, SamplingKernel, Support};

/// Default truncation tolerance for series with a geometric tail certificate.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Default truncation tolerance for kernels that only decay polynomially.
/// A `t^-2` tail needs about `0.4 / tolerance` terms, which rules out `1e-10`.
pub const DEFAULT_DECAY_TOLERANCE: f64 = 1e-6;

/// Ratio between the strict lower mesh bound and the exact node spacing `1/n`.
pub const MESH_LOWER_FACTOR: f64 = 0.999;

/// Probe points used to check the partition of unity of a sampling kernel.
const KERNEL_PROBES: [f64; 8] = [0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("operator index n must be at least 1")]
    ZeroN,
    #[error("point {t} lies outside the operator domain {domain}")]
    OutsideDomain { t: f64, domain: Domain },
    #[error("sample f({node}) at index {k} is not finite")]
    NonFiniteSample { k: i64, node: f64 },
    #[error("truncation failed: more than {max_terms} terms needed to reach tolerance {tolerance}")]
    TruncationFailure { tolerance: f64, max_terms: u64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("tail radius must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("kernel {name} violates the partition of unity: defect {defect:e} exceeds {tolerance:e}")]
    KernelRejected {
        name: String,
        defect: f64,
        tolerance: f64,
    },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `ℝ`
    WholeLine,
    /// `[0, +∞)`
    HalfLine,
    /// `[0, 1]`
    UnitInterval,
}

impl Domain {
    pub fn contains(&self, t: f64) -> bool {
        t.is_finite()
            && match self {
                Domain::WholeLine => true,
                Domain::HalfLine => t >= 0.0,
                Domain::UnitInterval => (0.0..=1.0).contains(&t),
            }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::WholeLine => write!(f, "(-inf, +inf)"),
            Domain::HalfLine => write!(f, "[0, +inf)"),
            Domain::UnitInterval => write!(f, "[0, 1]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    Integers,
    Naturals,
    /// `{0, …, last}`
    UpTo(u64),
}

impl IndexSet {
    pub fn contains(&self, k: i64) -> bool {
        match *self {
            IndexSet::Integers => true,
            IndexSet::Naturals => k >= 0,
            IndexSet::UpTo(last) => k >= 0 && (k as u64) <= last,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    Exact,
    TailBounded(f64),
}

/// Index range actually summed and a bound on the neglected basis mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationCertificate {
    pub k_min: i64,
    pub k_max: i64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub certificate: TruncationCertificate,
}

#[derive(Debug, Clone)]
pub enum FamilyKind {
    Sampling(SamplingKernel),
    SzaszMirakjan,
    Baskakov,
    Bernstein,
}

/// One family of discrete operators `{S_n}`; `n` is supplied per evaluation.
#[derive(Debug, Clone)]
pub struct OperatorFamily {
    kind: FamilyKind,
    tolerance: f64,
    max_terms: u64,
}

impl OperatorFamily {
    /// Generalized sampling operator with kernel `χ`. The kernel's partition of
    /// unity is checked on a probe grid at the family tolerance first.
    pub fn generalized_sampling(kernel: SamplingKernel) -> Result<Self, OperatorError> {
        let tolerance = match kernel.support() {
            Support::Compact { .. } => DEFAULT_TOLERANCE,
            Support::PolynomialDecay { .. } => DEFAULT_DECAY_TOLERANCE,
        };
        Self::generalized_sampling_with_tolerance(kernel, tolerance)
    }

    pub fn generalized_sampling_with_tolerance(
        kernel: SamplingKernel,
        tolerance: f64,
    ) -> Result<Self, OperatorError> {
        check_tolerance(tolerance)?;
        let max_terms = kernels::DEFAULT_MAX_TERMS;
        let mut defect: f64 = 0.0;
        for &t in KERNEL_PROBES.iter() {
            let win = kernel.window(t, tolerance, max_terms)?;
            let sum = kernel.sum_shifts(t, win.k_min, win.k_max);
            if !sum.is_finite() {
                return Err(KernelError::NonFinite(t).into());
            }
            defect = defect.max((sum - 1.0).abs());
        }
        // compact kernels are summed exactly; allow for rounding only
        let allowed = tolerance.max(1e-12);
        if defect > allowed {
            return Err(OperatorError::KernelRejected {
                name: kernel.name().to_string(),
                defect,
                tolerance: allowed,
            });
        }
        Ok(OperatorFamily {
            kind: FamilyKind::Sampling(kernel),
            tolerance,
            max_terms,
        })
    }

    pub fn szasz_mirakjan() -> Self {
        OperatorFamily {
            kind: FamilyKind::SzaszMirakjan,
            tolerance: DEFAULT_TOLERANCE,
            max_terms: kernels::DEFAULT_MAX_TERMS,
        }
    }

    pub fn baskakov() -> Self {
        OperatorFamily {
            kind: FamilyKind::Baskakov,
            tolerance: DEFAULT_TOLERANCE,
            max_terms: kernels::DEFAULT_MAX_TERMS,
        }
    }

    /// Bernstein operators. The degree is the `n` passed to each evaluation.
    pub fn bernstein() -> Self {
        OperatorFamily {
            kind: FamilyKind::Bernstein,
            tolerance: DEFAULT_TOLERANCE,
            max_terms: kernels::DEFAULT_MAX_TERMS,
        }
    }

    /// Same family with a different truncation tolerance. Sampling kernels are
    /// re-validated at the new tolerance.
    pub fn with_tolerance(&self, tolerance: f64) -> Result<Self, OperatorError> {
        check_tolerance(tolerance)?;
        match &self.kind {
            FamilyKind::Sampling(k) => {
                let mut fam = Self::generalized_sampling_with_tolerance(k.clone(), tolerance)?;
                fam.max_terms = self.max_terms;
                Ok(fam)
            }
            _ => Ok(OperatorFamily {
                tolerance,
                ..self.clone()
            }),
        }
    }

    /// Caps the number of terms a single truncated sum may use.
    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms.max(1);
        self
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FamilyKind::Sampling(k) => format!("sampling-{}", k.name()),
            FamilyKind::SzaszMirakjan => "szasz".into(),
            FamilyKind::Baskakov => "baskakov".into(),
            FamilyKind::Bernstein => "bernstein".into(),
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn domain(&self) -> Domain {
        match self.kind {
            FamilyKind::Sampling(_) => Domain::WholeLine,
            FamilyKind::SzaszMirakjan | FamilyKind::Baskakov => Domain::HalfLine,
            FamilyKind::Bernstein => Domain::UnitInterval,
        }
    }

    pub fn index_set(&self, n: u32) -> IndexSet {
        match self.kind {
            FamilyKind::Sampling(_) => IndexSet::Integers,
            FamilyKind::SzaszMirakjan | FamilyKind::Baskakov => IndexSet::Naturals,
            FamilyKind::Bernstein => IndexSet::UpTo(n as u64),
        }
    }

    pub fn truncation(&self) -> Truncation {
        match &self.kind {
            FamilyKind::Bernstein => Truncation::Exact,
            FamilyKind::Sampling(k) if matches!(k.support(), Support::Compact { .. }) => Truncation::Exact,
            _ => Truncation::TailBounded(self.tolerance),
        }
    }

    /// Whether every basis function is nonnegative.
    pub fn is_positive(&self) -> bool {
        match &self.kind {
            FamilyKind::Sampling(k) => k.is_nonnegative(),
            _ => true,
        }
    }

    /// `ν_{n,k} = k/n`.
    pub fn node(&self, n: u32, k: i64) -> f64 {
        k as f64 / n as f64
    }

    /// `(λ_n, Λ_n)` with `λ_n < ν_{n,k+1} − ν_{n,k} ≤ Λ_n`.
    pub fn mesh_bounds(&self, n: u32) -> (f64, f64) {
        let h = 1.0 / n as f64;
        (MESH_LOWER_FACTOR * h, h)
    }

    /// A single basis value `K_{n,k}(t)`, computed directly.
    pub fn basis(&self, n: u32, k: i64, t: f64) -> Result<f64, OperatorError> {
        self.check_point(n, t)?;
        if !self.index_set(n).contains(k) {
            return Ok(0.0);
        }
        let nf = n as f64;
        let ku = k as u64;
        Ok(match &self.kind {
            FamilyKind::Sampling(kernel) => kernel.evaluate(nf * t - k as f64),
            FamilyKind::SzaszMirakjan => {
                let x = nf * t;
                if x == 0.0 {
                    if k == 0 { 1.0 } else { 0.0 }
                } else {
                    (-x + k as f64 * x.ln() - ln_factorial(ku)).exp()
                }
            }
            FamilyKind::Baskakov => {
                if t == 0.0 {
                    if k == 0 { 1.0 } else { 0.0 }
                } else {
                    (ln_rising_binomial(n as u64, ku) + k as f64 * t.ln() - (nf + k as f64) * t.ln_1p()).exp()
                }
            }
            FamilyKind::Bernstein => bernstein_direct(n as u64, ku, t),
        })
    }

    fn check_point(&self, n: u32, t: f64) -> Result<(), OperatorError> {
        if n == 0 {
            return Err(OperatorError::ZeroN);
        }
        let domain = self.domain();
        if !domain.contains(t) {
            return Err(OperatorError::OutsideDomain { t, domain });
        }
        Ok(())
    }

    /// Visits every `(k, K_{n,k}(t))` in the certified summation window.
    pub fn for_each_weight(
        &self,
        n: u32,
        t: f64,
        visit: &mut dyn FnMut(i64, f64),
    ) -> Result<TruncationCertificate, OperatorError> {
        self.check_point(n, t)?;
        let nf = n as f64;
        match &self.kind {
            FamilyKind::Sampling(kernel) => {
                let x = nf * t;
                let win = self.sampling_window(kernel, x)?;
                kernel.for_each_shift(x, win.k_min, win.k_max, &mut *visit);
                Ok(TruncationCertificate {
                    k_min: win.k_min,
                    k_max: win.k_max,
                    tail_bound: win.tail_bound,
                })
            }
            FamilyKind::SzaszMirakjan => {
                let x = nf * t;
                if x == 0.0 {
                    visit(0, 1.0);
                    return Ok(point_mass(0));
                }
                let mode = x.floor() as u64;
                let ln_mode = -x + mode as f64 * x.ln() - ln_factorial(mode);
                let series = PositiveSeries {
                    last: None,
                    mode,
                    ln_mode_term: ln_mode,
                    up_ratio: &|k| x / (k + 1) as f64,
                };
                series.sum(self.tolerance, false, self.max_terms, visit)
            }
            FamilyKind::Baskakov => {
                if t == 0.0 {
                    visit(0, 1.0);
                    return Ok(point_mass(0));
                }
                let q = t / (1.0 + t);
                let mode = ((nf - 1.0) * t).floor().max(0.0) as u64;
                let ln_mode = ln_rising_binomial(n as u64, mode) + mode as f64 * t.ln()
                    - (nf + mode as f64) * t.ln_1p();
                let series = PositiveSeries {
                    last: None,
                    mode,
                    ln_mode_term: ln_mode,
                    up_ratio: &|k| (nf + k as f64) / (k + 1) as f64 * q,
                };
                series.sum(self.tolerance, false, self.max_terms, visit)
            }
            FamilyKind::Bernstein => {
                let n64 = n as u64;
                if t == 0.0 {
                    visit(0, 1.0);
                    return Ok(exact_range(0, n64));
                }
                if t == 1.0 {
                    visit(n as i64, 1.0);
                    return Ok(exact_range(0, n64));
                }
                let odds = t / (1.0 - t);
                let mode = (((nf + 1.0) * t).floor() as u64).min(n64);
                let ln_mode = ln_binomial(n64, mode) + mode as f64 * t.ln() + (n64 - mode) as f64 * (-t).ln_1p();
                let series = PositiveSeries {
                    last: Some(n64),
                    mode,
                    ln_mode_term: ln_mode,
                    up_ratio: &|k| (n64 - k) as f64 / (k + 1) as f64 * odds,
                };
                series.sum(self.tolerance, true, self.max_terms, visit)?;
                Ok(exact_range(0, n64))
            }
        }
    }

    /// `(S_n f)(t)` where `sample(k)` returns `f(ν_{n,k})`.
    pub fn evaluate_indexed(
        &self,
        n: u32,
        t: f64,
        sample: &mut dyn FnMut(i64) -> f64,
    ) -> Result<Evaluation, OperatorError> {
        let mut acc = 0.0;
        let mut bad: Option<i64> = None;
        let certificate = self.for_each_weight(n, t, &mut |k, w| {
            if bad.is_some() {
                return;
            }
            let v = sample(k);
            if !v.is_finite() {
                bad = Some(k);
                return;
            }
            acc += v * w;
        })?;
        if let Some(k) = bad {
            return Err(OperatorError::NonFiniteSample {
                k,
                node: self.node(n, k),
            });
        }
        Ok(Evaluation {
            value: acc,
            certificate,
        })
    }

    /// `(S_n f)(t)` with its truncation certificate.
    pub fn evaluate<F: Fn(f64) -> f64 + ?Sized>(&self, f: &F, n: u32, t: f64) -> Result<Evaluation, OperatorError> {
        let nf = n as f64;
        self.evaluate_indexed(n, t, &mut |k| f(k as f64 / nf))
    }

    /// `(S_n f)(t)` for samples that are constant outside a finite index
    /// range: `f(ν_{n,k})` is `inner[k − first]` on the range, `left` below it
    /// and `right` above it. Same window and certificate as
    /// [`evaluate_indexed`](Self::evaluate_indexed), but for sampling kernels
    /// the constant parts are summed through [`SamplingKernel::sum_shifts`].
    pub fn evaluate_padded(
        &self,
        n: u32,
        t: f64,
        first: i64,
        inner: &[f64],
        left: f64,
        right: f64,
    ) -> Result<Evaluation, OperatorError> {
        let last = first + inner.len() as i64 - 1;
        let FamilyKind::Sampling(kernel) = &self.kind else {
            return self.evaluate_indexed(n, t, &mut |k| {
                if k < first {
                    left
                } else if k > last {
                    right
                } else {
                    inner[(k - first) as usize]
                }
            });
        };
        self.check_point(n, t)?;
        let x = n as f64 * t;
        let win = self.sampling_window(kernel, x)?;
        let mut acc = 0.0;
        if win.k_min < first {
            acc += self.finite_sample(left, win.k_min, n)? * kernel.sum_shifts(x, win.k_min, win.k_max.min(first - 1));
        }
        if win.k_max > last {
            acc += self.finite_sample(right, win.k_max, n)? * kernel.sum_shifts(x, win.k_min.max(last + 1), win.k_max);
        }
        let (lo, hi) = (win.k_min.max(first), win.k_max.min(last));
        if lo <= hi {
            let mut bad = None;
            kernel.for_each_shift(x, lo, hi, |k, w| {
                let v = inner[(k - first) as usize];
                if !v.is_finite() {
                    bad.get_or_insert(k);
                }
                acc += v * w;
            });
            if let Some(k) = bad {
                self.finite_sample(f64::NAN, k, n)?;
            }
        }
        Ok(Evaluation {
            value: acc,
            certificate: TruncationCertificate {
                k_min: win.k_min,
                k_max: win.k_max,
                tail_bound: win.tail_bound,
            },
        })
    }

    fn finite_sample(&self, v: f64, k: i64, n: u32) -> Result<f64, OperatorError> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(OperatorError::NonFiniteSample { k, node: self.node(n, k) })
        }
    }

    fn sampling_window(&self, kernel: &SamplingKernel, x: f64) -> Result<kernels::ShiftWindow, OperatorError> {
        kernel.window(x, self.tolerance, self.max_terms).map_err(|e| match e {
            KernelError::WindowTooLarge { .. } => OperatorError::TruncationFailure {
                tolerance: self.tolerance,
                max_terms: self.max_terms,
            },
            other => other.into(),
        })
    }

    /// `Σ_{|ν_{n,k} − t| ≥ δ} |K_{n,k}(t)|` over the certified window.
    pub fn tail_mass(&self, n: u32, t: f64, delta: f64) -> Result<(f64, TruncationCertificate), OperatorError> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(OperatorError::InvalidDelta(delta));
        }
        let nf = n as f64;
        let mut tail = 0.0;
        let cert = self.for_each_weight(n, t, &mut |k, w| {
            if (k as f64 / nf - t).abs() >= delta {
                tail += w.abs();
            }
        })?;
        Ok((tail, cert))
    }
}

fn check_tolerance(tolerance: f64) -> Result<(), OperatorError> {
    if tolerance.is_finite() && tolerance > 0.0 {
        Ok(())
    } else {
        Err(OperatorError::InvalidTolerance(tolerance))
    }
}

fn point_mass(k: i64) -> TruncationCertificate {
    TruncationCertificate {
        k_min: k,
        k_max: k,
        tail_bound: 0.0,
    }
}

fn exact_range(first: u64, last: u64) -> TruncationCertificate {
    TruncationCertificate {
        k_min: first as i64,
        k_max: last as i64,
        tail_bound: 0.0,
    }
}

/// `ln k!` as a running sum of logarithms.
fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

/// `ln C(n + k − 1, k)`.
fn ln_rising_binomial(n: u64, k: u64) -> f64 {
    (1..=k).map(|j| ((n - 1 + j) as f64 / j as f64).ln()).sum()
}

/// `ln C(n, k)` for `k ≤ n`.
fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k).map(|j| ((n - k + j) as f64 / j as f64).ln()).sum()
}

fn bernstein_direct(n: u64, k: u64, t: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    if t == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if t == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    (ln_binomial(n, k) + k as f64 * t.ln() + (n - k) as f64 * (-t).ln_1p()).exp()
}

/// A series of positive terms `K_0, K_1, …` that is unimodal with
/// `K_{k+1}/K_k` decreasing in `k`. Summation starts at the mode (anchored in
/// log space) and walks outwards with the term ratios. Once the ratio `r`
/// in the walking direction drops below 1 the remaining mass is bounded by
/// the geometric series `K · r / (1 − r)`.
struct PositiveSeries<'a> {
    last: Option<u64>,
    mode: u64,
    ln_mode_term: f64,
    up_ratio: &'a dyn Fn(u64) -> f64,
}

impl PositiveSeries<'_> {
    fn sum(
        &self,
        tolerance: f64,
        exact: bool,
        max_terms: u64,
        visit: &mut dyn FnMut(i64, f64),
    ) -> Result<TruncationCertificate, OperatorError> {
        let budget = 0.5 * tolerance;
        let fail = || OperatorError::TruncationFailure {
            tolerance,
            max_terms,
        };
        let mode_term = self.ln_mode_term.exp();
        let mut visited = 1u64;
        visit(self.mode as i64, mode_term);

        // upward
        let mut k = self.mode;
        let mut term = mode_term;
        let mut tail_up = 0.0;
        loop {
            if self.last == Some(k) {
                break;
            }
            let r = (self.up_ratio)(k);
            if !exact && r < 1.0 {
                let bound = term * r / (1.0 - r);
                if bound <= budget {
                    tail_up = bound;
                    break;
                }
            }
            term *= r;
            k += 1;
            visited += 1;
            if visited > max_terms {
                return Err(fail());
            }
            visit(k as i64, term);
        }
        let k_max = k;

        // downward
        let mut k = self.mode;
        let mut term = mode_term;
        let mut tail_down = 0.0;
        while k > 0 {
            let d = 1.0 / (self.up_ratio)(k - 1);
            if !exact && d < 1.0 {
                let bound = term * d / (1.0 - d);
                if bound <= budget {
                    tail_down = bound;
                    break;
                }
            }
            term *= d;
            k -= 1;
            visited += 1;
            if visited > max_terms {
                return Err(fail());
            }
            visit(k as i64, term);
        }

        Ok(TruncationCertificate {
            k_min: k as i64,
            k_max: k_max as i64,
            tail_bound: tail_up + tail_down,
        })
    }
}
