//! Approximation of functions and curves by discrete operators, and the
//! extraction, smoothing and upscaling of curves in binary images.

pub mod curves;
pub mod imagecurve;
pub mod kernels;
pub mod operators;

pub use kernels::{SamplingKernel, Support};
pub use operators::{Evaluation, OperatorError, OperatorFamily, TruncationCertificate};
