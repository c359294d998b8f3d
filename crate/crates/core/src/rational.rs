//! Small helpers around `BigRational`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Parses `p/q` or an integer.
pub fn parse_rational(token: &str) -> Result<BigRational, String> {
    BigRational::from_str(token).map_err(|e| format!("invalid rational `{token}`: {e}"))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
