use std::fmt;
use std::str::FromStr;

use curve_approx::curves::ExtensionStrategy;
use curve_approx::operators::{Domain, OperatorFamily};
use curve_approx::SamplingKernel;

use crate::Failure;

/// A kernel named on the command line: `fejer`, `bspline` (order from
/// `--order`) or `bspline<m>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelSpec {
    Fejer,
    BSpline(Option<u32>),
}

impl FromStr for KernelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fejer" => Ok(KernelSpec::Fejer),
            "bspline" => Ok(KernelSpec::BSpline(None)),
            _ => match s.strip_prefix("bspline").map(str::parse::<u32>) {
                Some(Ok(m)) if m >= 1 => Ok(KernelSpec::BSpline(Some(m))),
                _ => Err(format!("unknown kernel `{s}` (expected fejer, bspline or bspline<m> with m ≥ 1)")),
            },
        }
    }
}

impl KernelSpec {
    pub fn build(&self, order: Option<u32>) -> Result<SamplingKernel, Failure> {
        match *self {
            KernelSpec::Fejer => {
                if order.is_some() {
                    return Err(Failure::Usage("--order only applies to B-spline kernels".into()));
                }
                Ok(SamplingKernel::fejer())
            }
            KernelSpec::BSpline(m) => {
                let m = match (m, order) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Failure::Usage(format!("kernel order {a} contradicts --order {b}")))
                    }
                    (Some(m), _) | (None, Some(m)) => m,
                    (None, None) => 3,
                };
                SamplingKernel::bspline(m).map_err(|e| Failure::Usage(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorSpec {
    Sampling(KernelSpec),
    Szasz,
    Baskakov,
    Bernstein,
}

impl FromStr for OperatorSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "szasz" | "szasz-mirakjan" => Ok(OperatorSpec::Szasz),
            "baskakov" => Ok(OperatorSpec::Baskakov),
            "bernstein" => Ok(OperatorSpec::Bernstein),
            _ => match s.strip_prefix("sampling-") {
                Some(kernel) => kernel.parse().map(OperatorSpec::Sampling),
                None => Err(format!(
                    "unknown operator `{s}` (expected sampling-fejer, sampling-bspline<m>, szasz, baskakov or bernstein)"
                )),
            },
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::Sampling(KernelSpec::Fejer) => f.write_str("sampling-fejer"),
            OperatorSpec::Sampling(KernelSpec::BSpline(Some(m))) => write!(f, "sampling-bspline{m}"),
            OperatorSpec::Sampling(KernelSpec::BSpline(None)) => f.write_str("sampling-bspline"),
            OperatorSpec::Szasz => f.write_str("szasz"),
            OperatorSpec::Baskakov => f.write_str("baskakov"),
            OperatorSpec::Bernstein => f.write_str("bernstein"),
        }
    }
}

/// Everything one approximation job needs besides its input.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub operator: OperatorSpec,
    pub order: Option<u32>,
    /// `None` lets the command pick a size from its input.
    pub n: Option<u32>,
    pub strategy: Option<ExtensionStrategy>,
    pub tolerance: Option<f64>,
    pub grid: usize,
}

impl JobConfig {
    pub fn family(&self) -> Result<OperatorFamily, Failure> {
        let family = match &self.operator {
            OperatorSpec::Sampling(k) => OperatorFamily::generalized_sampling(k.build(self.order)?)?,
            _ if self.order.is_some() => {
                return Err(Failure::Usage("--order only applies to sampling operators".into()))
            }
            OperatorSpec::Szasz => OperatorFamily::szasz_mirakjan(),
            OperatorSpec::Baskakov => OperatorFamily::baskakov(),
            OperatorSpec::Bernstein => OperatorFamily::bernstein(),
        };
        match self.tolerance {
            Some(tol) => Ok(family.with_tolerance(tol)?),
            None => Ok(family),
        }
    }

    /// The requested strategy, or the natural one: periodic for closed curves
    /// on the whole line, otherwise the default for the operator's domain.
    pub fn strategy(&self, family: &OperatorFamily, closed: bool) -> Result<ExtensionStrategy, Failure> {
        let domain = family.domain();
        let strategy = match self.strategy {
            Some(s) => s,
            None if closed && domain == Domain::WholeLine => ExtensionStrategy::Periodic,
            None => ExtensionStrategy::default_for(domain),
        };
        if !strategy.is_compatible(domain) {
            return Err(Failure::Domain(format!(
                "strategy {strategy} does not fit operator {} (domain {domain:?})",
                self.operator
            )));
        }
        if strategy == ExtensionStrategy::Periodic && !closed {
            return Err(Failure::Domain("periodic extension needs a closed curve (pass --closed?)".into()));
        }
        Ok(strategy)
    }

    pub fn n_or(&self, fallback: u32) -> u32 {
        self.n.unwrap_or(fallback.max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!("bspline3".parse(), Ok(KernelSpec::BSpline(Some(3))));
        assert_eq!("bspline".parse(), Ok(KernelSpec::BSpline(None)));
        assert!("bspline0".parse::<KernelSpec>().is_err());
        assert!("bogus".parse::<KernelSpec>().is_err());
        assert_eq!("sampling-fejer".parse(), Ok(OperatorSpec::Sampling(KernelSpec::Fejer)));
        assert_eq!("szasz-mirakjan".parse(), Ok(OperatorSpec::Szasz));
        assert!("sampling-".parse::<OperatorSpec>().is_err());
        for name in ["sampling-fejer", "sampling-bspline5", "szasz", "baskakov", "bernstein"] {
            assert_eq!(name.parse::<OperatorSpec>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn order_must_agree() {
        let spec = KernelSpec::BSpline(Some(3));
        assert!(spec.build(Some(3)).is_ok());
        assert!(matches!(spec.build(Some(4)), Err(Failure::Usage(_))));
        assert_eq!(KernelSpec::BSpline(None).build(Some(5)).unwrap().name(), "bspline5");
        assert!(KernelSpec::Fejer.build(Some(2)).is_err());
    }

    #[test]
    fn strategies_default_by_domain() {
        let job = |op: &str, strategy| JobConfig {
            operator: op.parse().unwrap(),
            order: None,
            n: None,
            strategy,
            tolerance: None,
            grid: 10,
        };
        let j = job("sampling-bspline3", None);
        let fam = j.family().unwrap();
        assert_eq!(j.strategy(&fam, true).unwrap(), ExtensionStrategy::Periodic);
        assert_eq!(j.strategy(&fam, false).unwrap(), ExtensionStrategy::ConstantPad);
        let j = job("szasz", None);
        assert_eq!(j.strategy(&j.family().unwrap(), true).unwrap(), ExtensionStrategy::TranslateAndPad);
        let j = job("bernstein", Some(ExtensionStrategy::Periodic));
        assert!(matches!(j.strategy(&j.family().unwrap(), true), Err(Failure::Domain(_))));
    }
}
