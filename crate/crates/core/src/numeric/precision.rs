use serde::{Deserialize, Serialize};

use super::real::Real;
use crate::error::{BlochError, Result};

/// Guard bits added to every transcendental evaluation.
pub const GUARD_BITS: usize = 32;

/// Working precision for a computation plus the retry policy used by
/// precision-adaptive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub prec_bits: usize,
    pub retry_doublings: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: usize = 64;

    pub fn new(prec_bits: usize) -> Result<Self> {
        if prec_bits < Self::MIN_BITS {
            return Err(BlochError::InvalidInput(format!(
                "precision {prec_bits} bits is below the minimum of {} bits",
                Self::MIN_BITS
            )));
        }
        Ok(PrecisionContext { prec_bits, retry_doublings: 3 })
    }

    /// Like [`PrecisionContext::new`] but clamps to the minimum.
    pub fn bits(prec_bits: usize) -> Self {
        PrecisionContext { prec_bits: prec_bits.max(Self::MIN_BITS), retry_doublings: 3 }
    }

    pub fn with_retries(mut self, retries: u32) -> Self {
        self.retry_doublings = retries;
        self
    }

    /// Precision including guard bits.
    pub fn working(&self) -> usize {
        self.prec_bits + GUARD_BITS
    }

    pub fn doubled(&self) -> Self {
        PrecisionContext { prec_bits: self.prec_bits * 2, ..*self }
    }

    pub fn at_least(&self, bits: usize) -> Self {
        PrecisionContext { prec_bits: self.prec_bits.max(bits), ..*self }
    }

    /// Absolute tolerance 2^(1 - prec).
    pub fn tol(&self) -> Real {
        Real::pow2(1 - self.prec_bits as i64, self.prec_bits)
    }

    /// 2^(-k) at this precision.
    pub fn eps(&self, k: i64) -> Real {
        Real::pow2(-k, self.prec_bits)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { prec_bits: 256, retry_doublings: 3 }
    }
}
