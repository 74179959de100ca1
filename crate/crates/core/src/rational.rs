//! Exact rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> Q {
    Q::from_integer(BigInt::from(n.clone()))
}

pub fn recip_biguint(n: &BigUint) -> Q {
    Q::new(BigInt::one(), BigInt::from(n.clone()))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `p/q` (or `p` when the denominator is 1).
pub fn to_string(x: &Q) -> String {
    x.to_string()
}

/// Parse `p`, `-p`, or `p/q`.
pub fn parse(src: &str) -> Result<Q> {
    let err = |message: &str| Error::Parse {
        position: 0,
        message: format!("{message}: {src:?}"),
    };
    let src = src.trim();
    let (n, d) = match src.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (src, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("3/6").unwrap(), q(1, 2));
        assert_eq!(parse("-4").unwrap(), from_int(-4));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(to_string(&q(6, 4)), "3/2");
        assert_eq!(to_string(&from_int(5)), "5");
    }
}
