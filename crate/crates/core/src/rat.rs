//! Arbitrary-precision rationals. `Rat` is `num_rational::BigRational`, which
//! already maintains the invariants we need (reduced, positive denominator);
//! this module only adds construction and formatting helpers used everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact square root if `r` is a perfect square of a rational, else `None`.
/// Negative inputs give `None`.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Canonical `"num/den"` string; integers print without the `/1`.
pub fn to_string(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"num"` or `"num/den"`.
pub fn parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_exact_detects_squares() {
        assert_eq!(sqrt_exact(&rat(49, 4)), Some(rat(7, 2)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-4, 1)), None);
        assert_eq!(sqrt_exact(&rint(15376)), Some(rint(124)));
    }

    #[test]
    fn string_round_trip() {
        for s in ["5", "-3/7", "808/35", "0"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("6/4").map(|r| to_string(&r)).unwrap(), "3/2");
        assert!(parse("1/0").is_none());
    }
}
