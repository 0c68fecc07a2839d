use crate::error::{Error, Result};

/// Thresholds shared by every rank decision and every identity/zero comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Relative singular-value cutoff: `σ > rank_eps · max(1, σ_max)` counts toward rank.
    pub rank_eps: f64,
    /// Max-abs tolerance for `A ≈ I`, `A ≈ 0`, Hermitian and idempotent checks.
    pub identity_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_eps: 1e-9,
            identity_eps: 1e-8,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rank_eps: f64, identity_eps: f64) -> Result<Self> {
        if !(rank_eps > 0.0 && rank_eps.is_finite()) {
            return Err(Error::Parameter(format!("rank_eps must be positive, got {rank_eps}")));
        }
        if !(identity_eps > 0.0 && identity_eps.is_finite()) {
            return Err(Error::Parameter(format!(
                "identity_eps must be positive, got {identity_eps}"
            )));
        }
        Ok(Self { rank_eps, identity_eps })
    }

    pub fn with_identity_eps(self, identity_eps: f64) -> Result<Self> {
        Self::new(self.rank_eps, identity_eps)
    }
}
