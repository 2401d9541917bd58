use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::num::LogScalar;

/// Route by which an estimate of `c_alpha` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ToeplitzExtrapolation,
    Nystrom,
    OdeDeterminant,
    LsqConditioning,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ToeplitzExtrapolation,
        Method::Nystrom,
        Method::OdeDeterminant,
        Method::LsqConditioning,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ToeplitzExtrapolation => "toeplitz-extrapolation",
            Method::Nystrom => "nystrom",
            Method::OdeDeterminant => "ode-determinant",
            Method::LsqConditioning => "lsq-conditioning",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value of `c_alpha` together with how it was computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub alpha: u32,
    pub value: LogScalar,
    pub method: Method,
    /// Discretization record (grid sizes, node counts, scan ranges ...).
    pub params: BTreeMap<String, Value>,
    /// Relative error estimate, always populated and nonnegative.
    pub error_estimate: f64,
}

impl ConstantEstimate {
    pub fn new(alpha: u32, value: f64, method: Method, error_estimate: f64) -> Self {
        ConstantEstimate {
            alpha,
            value: LogScalar::from_f64(value),
            method,
            params: BTreeMap::new(),
            error_estimate: error_estimate.abs(),
        }
    }

    pub(crate) fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// The value as a plain double; lossy (infinite) only for astronomically large constants.
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64_lossy()
    }

    pub fn rel_diff(&self, other: &ConstantEstimate) -> f64 {
        self.value.rel_diff(&other.value)
    }
}
