//! Closed-form counts: the `n = C(r,d) + j` decomposition, the lower and
//! upper bounds on the number of module generators, and Catalan numbers.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The unique `(r, j)` with `n = C(r, d) + j` and `0 ≤ j < C(r, d-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NrjDecomposition {
    pub n: u64,
    pub d: u64,
    pub r: u64,
    pub j: u64,
}

pub fn decompose_nrj(n: u64, d: u64) -> Result<NrjDecomposition> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidArgument("n and d must be at least 1".into()));
    }
    let target = BigInt::from(n);
    // C(r+1, d) = C(r, d) + C(r, d-1), so j < C(r, d-1) iff n < C(r+1, d):
    // r is the largest index with C(r, d) ≤ n.
    let mut r = d;
    while binomial(r + 1, d) <= target {
        r += 1;
    }
    let j = (&target - binomial(r, d))
        .to_u64()
        .expect("remainder is non-negative and small");
    debug_assert!(BigInt::from(j) < binomial(r, d - 1));
    Ok(NrjDecomposition { n, d, r, j })
}

/// `C(C(r, d-1), j)`.
pub fn lower_bound(n: u64, d: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidArgument("bounds need n ≥ 2".into()));
    }
    let NrjDecomposition { r, j, .. } = decompose_nrj(n, d)?;
    let top = binomial(r, d - 1).to_u64().expect("C(r, d-1) fits in u64");
    Ok(binomial(top, j))
}

/// `C(C(n,2) + dn, dn)`.
pub fn upper_bound(n: u64, d: u64) -> Result<BigInt> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument("bounds need n ≥ 2 and d ≥ 1".into()));
    }
    let pairs = n * (n - 1) / 2;
    Ok(binomial(pairs + d * n, d * n))
}

/// `(2n)! / ((n+1)! n!)`.
pub fn catalan_exact(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Render with three significant figures as `m.mmeE`, e.g. `1.85e5`.
pub fn scientific_3sf(v: &BigInt) -> String {
    let digits = v.magnitude().to_string();
    if digits.len() <= 3 {
        return digits;
    }
    let exp = digits.len() - 1;
    let lead: u64 = digits[..3].parse().expect("digits");
    let next = digits.as_bytes()[3] - b'0';
    let mut mant = lead + u64::from(next >= 5);
    let mut exp = exp;
    if mant == 1000 {
        mant = 100;
        exp += 1;
    }
    let sign = if v.sign() == num_bigint::Sign::Minus { "-" } else { "" };
    format!("{sign}{}.{:02}e{exp}", mant / 100, mant % 100)
}
