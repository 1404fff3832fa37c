use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    /// Rejects composite moduli and ℓ = p (p must be invertible).
    pub fn validate(&self, p: u64) -> Result<()> {
        if let CoefficientRing::PrimeField(l) = *self {
            if !is_prime(l) {
                return Err(Error::Invalid(format!("{l} is not prime")));
            }
            if l == p {
                return Err(Error::Invalid(format!("coefficient field F_{l} has characteristic p")));
            }
            if l >= 1 << 31 {
                return Err(Error::Invalid("prime field modulus too large".into()));
            }
        }
        Ok(())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(CoefficientRing::Rationals);
        }
        let digits = t.trim_start_matches(['F', 'f']).trim_start_matches('_');
        digits
            .parse::<u64>()
            .map(CoefficientRing::PrimeField)
            .map_err(|_| Error::Invalid(format!("unknown coefficient ring '{s}'")))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(l) => write!(f, "F{l}"),
        }
    }
}
