//! Closed-form facts that need no search: necessary conditions for a
//! nonzero count, the `n!/2` upper bound, and the conjectured asymptotics.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExistenceStatus {
    /// A proven necessary condition fails: the count is zero.
    RuledOut,
    /// Every known necessary condition holds. Solutions may still not exist.
    Possible,
    /// No condition is known for this multiplicity.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExistenceRule {
    /// Prime `m`: `n mod m^2` must lie in `{m^2 - 1, 0, 1, ..., m - 2}`.
    PrimeModulus,
    /// `m = 4`: `n = 8t` or `n = 8t - 1` with `t >= 2`.
    MFourModulus,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceVerdict {
    pub status: ExistenceStatus,
    pub rule: ExistenceRule,
    pub detail: String,
}

impl fmt::Display for ExistenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            ExistenceStatus::RuledOut => "ruled out",
            ExistenceStatus::Possible => "possible",
            ExistenceStatus::Unknown => "unknown",
        };
        write!(f, "{status} ({})", self.detail)
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

/// Tests the known necessary conditions for `p(m, n) != 0`.
pub fn necessary_condition(m: u64, n: u64) -> Result<ExistenceVerdict> {
    if m < 2 || n < 1 {
        return Err(Error::Domain(format!(
            "need m >= 2 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    if is_prime(m) {
        let modulus = m * m;
        let r = n % modulus;
        let admissible = r == modulus - 1 || r <= m - 2;
        let detail = format!(
            "n mod {modulus} = {r}; admissible residues are {}, 0..={}",
            modulus - 1,
            m - 2
        );
        return Ok(ExistenceVerdict {
            status: if admissible { ExistenceStatus::Possible } else { ExistenceStatus::RuledOut },
            rule: ExistenceRule::PrimeModulus,
            detail,
        });
    }
    if m == 4 {
        let r = n % 8;
        let admissible = (r == 0 || r == 7) && n >= 15;
        return Ok(ExistenceVerdict {
            status: if admissible { ExistenceStatus::Possible } else { ExistenceStatus::RuledOut },
            rule: ExistenceRule::MFourModulus,
            detail: format!("n mod 8 = {r}; need n = 8t or 8t - 1 with t >= 2 (n >= 15)"),
        });
    }
    Ok(ExistenceVerdict {
        status: ExistenceStatus::Unknown,
        rule: ExistenceRule::None,
        detail: format!("no necessary condition is known for composite m = {m}"),
    })
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact `n! / 2`, an upper bound on `p(m, n)` for every `m`.
pub fn factorial_bound(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Domain(format!("n!/2 is not an integer for n = {n}")));
    }
    Ok(factorial(n) / 2u32)
}

/// Conjectured size of `p(m, n)`: `n!/2^n` for `m = 2` and `n!/2^(2n+1)`
/// for `m = 3`. The `m = 3` form has weak numerical support.
pub fn asymptotic_estimate(m: u64, n: u64) -> Result<f64> {
    let shift = match m {
        2 => n,
        3 => 2 * n + 1,
        _ => {
            return Err(Error::Unsupported(format!(
                "no asymptotic estimate for m = {m}; only m = 2 and m = 3"
            )))
        }
    };
    // 171! overflows a double.
    if n > 170 {
        return Err(Error::Unsupported(format!("n = {n} is too large for a floating-point estimate")));
    }
    let numerator = factorial(n)
        .to_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Unsupported(format!("{n}! does not fit in a double")))?;
    // Scaling by a power of two is exact.
    Ok(numerator * 2f64.powi(-(shift as i32)))
}

pub fn estimate_ratio(actual: u64, estimate: f64) -> Result<f64> {
    if estimate.is_nan() || estimate <= 0.0 {
        return Err(Error::Domain(format!("estimate must be positive, got {estimate}")));
    }
    Ok(actual as f64 / estimate)
}
