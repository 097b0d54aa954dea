//! Mechanical checks of the triangle-free classification over generated
//! instances.
//!
//! Every scan fans out over its parameter range with [`crate::par`] and
//! merges results in parameter order, so a report depends only on its
//! [`ScanConfig`] (apart from the optional elapsed time).

mod classify;
mod palfy;
mod report;
mod scans;
mod theorems;

use thiserror::Error;

use crate::graph::GraphError;
use crate::groupdata::GroupError;
use crate::par::Execution;

pub use classify::{classify, Citation, ClassificationVerdict, WitnessCatalog};
pub use palfy::{check_palfy, palfy_check, palfy_report, PalfyResult};
pub use report::{Counterexample, InstanceRecord, LabeledFactorization, VerificationReport};
pub use scans::{
    ratio_prime_power_counterexamples, scan_psl2_even, scan_psl2_odd,
    verify_excluded_simple_families,
};
pub use theorems::{
    generate_instances, verify_bipartite_bound, verify_theorem_a, verify_theorem_b,
    verify_theorem_c, GeneratedInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("bundled data is missing entries: {}", missing.join(", "))]
    DataGap { missing: Vec<String> },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parameter bounds for the family scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    /// Largest `f` for `PSL2(2^f)`; 2..=60.
    pub max_f: u32,
    /// Largest odd `q` for `PSL2(q)`; 7..=10^6.
    pub max_q: u128,
    /// Largest odd exponent `e` for Suzuki groups `2B2(2^e)`; 3..=61.
    pub max_suzuki_exponent: u32,
    /// Largest `q` for `PSL3(q)` and `PSU3(q)`; 3..=10^4.
    pub max_psl3_q: u128,
    pub execution: Execution,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_f: 24,
            max_q: 10_000,
            max_suzuki_exponent: 13,
            max_psl3_q: 100,
            execution: Execution::Parallel,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        check_max_f(self.max_f)?;
        check_max_q(self.max_q)?;
        if !(3..=61).contains(&self.max_suzuki_exponent) {
            return Err(VerifyError::Range(format!(
                "Suzuki exponent bound must be in 3..=61, got {}",
                self.max_suzuki_exponent
            )));
        }
        if !(3..=10_000).contains(&self.max_psl3_q) {
            return Err(VerifyError::Range(format!(
                "PSL3 q bound must be in 3..=10000, got {}",
                self.max_psl3_q
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_max_f(max_f: u32) -> Result<(), VerifyError> {
    if (2..=60).contains(&max_f) {
        Ok(())
    } else {
        Err(VerifyError::Range(format!(
            "max_f must be in 2..=60, got {max_f}"
        )))
    }
}

pub(crate) fn check_max_q(max_q: u128) -> Result<(), VerifyError> {
    if (7..=1_000_000).contains(&max_q) {
        Ok(())
    } else {
        Err(VerifyError::Range(format!(
            "max_q must be in 7..=1000000, got {max_q}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_guards() {
        assert!(ScanConfig::default().validate().is_ok());
        let bad = [
            ScanConfig {
                max_f: 1,
                ..Default::default()
            },
            ScanConfig {
                max_f: 61,
                ..Default::default()
            },
            ScanConfig {
                max_q: 5,
                ..Default::default()
            },
            ScanConfig {
                max_q: 1_000_001,
                ..Default::default()
            },
            ScanConfig {
                max_suzuki_exponent: 1,
                ..Default::default()
            },
            ScanConfig {
                max_psl3_q: 2,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(VerifyError::Range(_))), "{c:?}");
        }
    }
}
