//! Reduced rational functions `num/den` over the polynomial ring of
//! `mpoly::MPoly`.
//!
//! Canonical form: the denominator is integer-primitive with positive leading
//! coefficient (lex order), shares no non-unit factor with the numerator, and
//! equals `1` for polynomial values. Rational scalar content therefore always
//! lives in the numerator. Constructing equal values along different
//! bracketing orders yields bitwise-identical representations.

use crate::error::{CoreError, Result};
use crate::mpoly::{MPoly, Var};
use crate::rat::{self, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        normalize(num, den)
    }

    pub fn from_poly(p: MPoly) -> RatFunc {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn constant(r: Rat) -> RatFunc {
        RatFunc::from_poly(MPoly::constant(r))
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::constant(rat::rint(n))
    }

    pub fn of(n: i64, d: i64) -> RatFunc {
        RatFunc::constant(rat::rat(n, d))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(MPoly::var(v))
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(MPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(MPoly::one())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.as_constant().map(|d| d.is_one()).unwrap_or(false)
            && self.num.as_constant().map(|n| n.is_one()).unwrap_or(false)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero("reciprocal of zero rational function".into()));
        }
        Ok(normalize(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        RatFunc { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Substitute exact rational values for a subset of the variables.
    /// Errors when the substitution kills the denominator.
    pub fn eval(&self, vals: &[(Var, Rat)]) -> Result<RatFunc> {
        let den = self.den.eval(vals);
        if den.is_zero() {
            return Err(CoreError::DivisionByZero(format!(
                "denominator {} vanishes under substitution",
                self.den
            )));
        }
        Ok(normalize(self.num.eval(vals), den))
    }

    /// Substitute a polynomial for one variable. Errors when the
    /// substitution kills the denominator.
    pub fn subst_var(&self, v: Var, with: &MPoly) -> Result<RatFunc> {
        let den = self.den.subst_var(v, with);
        if den.is_zero() {
            return Err(CoreError::DivisionByZero(format!(
                "denominator {} vanishes under substitution",
                self.den
            )));
        }
        Ok(normalize(self.num.subst_var(v, with), den))
    }

    /// Full evaluation at a rational point.
    pub fn eval_rat(&self, c: &Rat, e: &Rat, h: &Rat) -> Result<Rat> {
        let n = Rat::zero();
        let d = self.den.eval_all(c, e, h, &n);
        if d.is_zero() {
            return Err(CoreError::DivisionByZero(format!(
                "denominator {} vanishes at the requested point",
                self.den
            )));
        }
        Ok(self.num.eval_all(c, e, h, &n) / d)
    }

    /// `self / other` as an exact constant when the quotient is a rational
    /// number, else `None`. Zero/zero is `None`; zero/nonzero gives `0`.
    pub fn ratio_constant(&self, other: &RatFunc) -> Option<Rat> {
        if other.is_zero() {
            return None;
        }
        let q = self.clone() / other.clone();
        q.as_constant()
    }

    pub fn to_canonical_string(&self) -> String {
        format!("{self}")
    }
}

fn normalize(num: MPoly, den: MPoly) -> RatFunc {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return RatFunc { num, den: MPoly::one() };
    }
    let g = MPoly::gcd(&num, &den);
    let mut num = num.divexact(&g).expect("gcd divides numerator");
    let mut den = den.divexact(&g).expect("gcd divides denominator");
    let (dc, dp) = den.primitive_normalize();
    den = dp;
    num = num.scale(&(Rat::one() / dc));
    RatFunc { num, den }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        normalize(
            &self.num * &rhs.den + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Add<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self + rhs.clone()
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = MPoly::gcd(&self.num, &rhs.den);
        let g2 = MPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.divexact(&g1).unwrap();
        let d2 = rhs.den.divexact(&g1).unwrap();
        let n2 = rhs.num.divexact(&g2).unwrap();
        let d1 = self.den.divexact(&g2).unwrap();
        normalize(&n1 * &n2, &d1 * &d2)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        (&self) * (&rhs)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        let inv = rhs.recip().expect("division by zero rational function");
        &self * &inv
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|d| d.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{c, e, h, linear};
    use crate::rat::{rat, rint};

    #[test]
    fn normalization_is_canonical() {
        // (c^2 - e^2) / (2c + 2e) reduces to (c - e)/2 with primitive denominator.
        let f = RatFunc::new(
            c().pow(2) - e().pow(2),
            (c() + &e()).scale(&rint(2)),
        );
        assert_eq!(f.num(), &(c() - e()).scale(&rat(1, 2)));
        assert_eq!(f.den(), &MPoly::one());

        // Same value built along two different routes is bit-identical.
        let a = RatFunc::new(c() - e(), MPoly::int(2));
        assert_eq!(f, a);
    }

    #[test]
    fn denominator_sign_pinned() {
        let f = RatFunc::new(MPoly::one(), -c() + &MPoly::int(3)); // 1/(3 - c)
        assert_eq!(f.den(), &linear(Var::C, 1, -3));
        assert_eq!(f.num(), &MPoly::int(-1));
    }

    #[test]
    fn field_ops() {
        let x = RatFunc::var(Var::C);
        let y = RatFunc::var(Var::E);
        let s = x.clone() / y.clone() + y.clone() / x.clone();
        // c/e + e/c = (c^2 + e^2)/(ce)
        assert_eq!(s.num(), &(c().pow(2) + &e().pow(2)));
        assert_eq!(s.den(), &(&c() * &e()));
        let p = s.clone() * RatFunc::new(&c() * &e(), MPoly::one());
        assert_eq!(p, RatFunc::from_poly(c().pow(2) + &e().pow(2)));
    }

    #[test]
    fn eval_detects_poles() {
        let f = RatFunc::new(MPoly::one(), linear(Var::E, 5, 22)); // 1/(5e+22)
        assert!(f.eval(&[(Var::E, rat(-22, 5))]).is_err());
        let g = f.eval(&[(Var::E, rat(1, 2))]).unwrap();
        assert_eq!(g.as_constant(), Some(rat(2, 49)));
    }

    #[test]
    fn ratio_constant_detects_scalars() {
        let p = RatFunc::from_poly(linear(Var::C, 5, 22) * h());
        let q = RatFunc::from_poly(linear(Var::C, 5, 22).scale(&rat(-3, 7)) * h());
        assert_eq!(p.ratio_constant(&q), Some(rat(-7, 3)));
        let r = RatFunc::from_poly(linear(Var::C, 5, 22));
        assert_eq!(p.ratio_constant(&r), None);
    }
}
