//! Sparse multivariate polynomials over the rationals in the fixed variable
//! set `{c, e, h, n}` with canonical ordering `c < e < h < n`.
//!
//! `c` is a central charge, `e` a conformal decomposition charge, `h` a module
//! weight. The fourth slot `n` is reserved for rank-symbolic root-system
//! sums and never appears in the Virasoro-side computations.
//!
//! Representation: `BTreeMap` from exponent vector to nonzero coefficient.
//! The map order is lexicographic with `c` most significant, so two
//! polynomials are equal iff their term maps are equal, and the "leading"
//! term of a polynomial is its last map entry.

use crate::rat::{self, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const NVARS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    C = 0,
    E = 1,
    H = 2,
    N = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::C, Var::E, Var::H, Var::N];

    pub fn name(self) -> &'static str {
        match self {
            Var::C => "c",
            Var::E => "e",
            Var::H => "h",
            Var::N => "n",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, ordered lexicographically with `c` most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        Mono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: u16) -> Self {
        let mut m = [0; NVARS];
        m[v as usize] = k;
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Mono(m)
    }

    /// Divide exponent vectors; `None` when not divisible.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(m))
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Mono::one(), r);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(rat::rint(n))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v), Rat::one());
        MPoly { terms }
    }

    pub fn term(m: Mono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Leading (lex-largest) term.
    pub fn leading(&self) -> Option<(Mono, Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.0[v as usize] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.0[v as usize] > 0)
    }

    /// Highest variable (in the canonical order) actually present.
    pub fn main_var(&self) -> Option<Var> {
        Var::ALL.iter().rev().copied().find(|&v| self.contains_var(v))
    }

    pub fn scale(&self, r: &Rat) -> MPoly {
        if r.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let i = v as usize;
        let mut p = MPoly::zero();
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = *m;
                let k = e.0[i];
                e.0[i] -= 1;
                p.add_term(e, c * rat::rint(k as i64));
            }
        }
        p
    }

    /// Substitute exact rationals for a subset of the variables.
    pub fn eval(&self, vals: &[(Var, Rat)]) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for (v, val) in vals {
                let k = rest.0[*v as usize];
                if k > 0 {
                    let mut pw = Rat::one();
                    for _ in 0..k {
                        pw *= val;
                    }
                    coeff *= pw;
                    rest.0[*v as usize] = 0;
                }
            }
            p.add_term(rest, coeff);
        }
        p
    }

    /// Substitute a polynomial for one variable.
    pub fn subst_var(&self, v: Var, with: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, coef) in &self.terms {
            let k = m.0[v as usize];
            let mut rest = *m;
            rest.0[v as usize] = 0;
            let t = MPoly::term(rest, coef.clone()) * with.pow(k as u32);
            out = out + t;
        }
        out
    }

    /// Full evaluation at a rational point (all four slots).
    pub fn eval_all(&self, c: &Rat, e: &Rat, h: &Rat, n: &Rat) -> Rat {
        let vals = [c, e, h, n];
        let mut acc = Rat::zero();
        for (m, coef) in &self.terms {
            let mut t = coef.clone();
            for i in 0..NVARS {
                for _ in 0..m.0[i] {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// `(content, primitive)` with `self = content * primitive`, where
    /// `primitive` has coprime integer coefficients and positive leading
    /// coefficient. The zero polynomial returns `(0, 0)`.
    pub fn primitive_normalize(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), MPoly::zero());
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = Rat::new(g, l);
        let lead = &self.terms.iter().next_back().unwrap().1;
        if lead.is_negative() {
            content = -content;
        }
        let prim = self.scale(&(Rat::one() / &content));
        (content, prim)
    }

    pub fn primitive_part(&self) -> MPoly {
        self.primitive_normalize().1
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn divexact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(k) = d.as_constant() {
            return Some(self.scale(&(Rat::one() / k)));
        }
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let em = rm.div(&dm)?;
            let coef = rc / &dc;
            q.add_term(em, coef.clone());
            rem = rem - d * &MPoly::term(em, coef);
        }
        Some(q)
    }

    /// Coefficients of `self` as a univariate polynomial in `v`, index = power.
    /// The coefficients are polynomials in the remaining variables.
    pub fn univar_in(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree(v) as usize;
        let mut coeffs = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[v as usize] as usize;
            let mut e = *m;
            e.0[v as usize] = 0;
            coeffs[k].add_term(e, c.clone());
        }
        coeffs
    }

    pub fn from_univar(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut p = MPoly::zero();
        for (k, ck) in coeffs.iter().enumerate() {
            let vm = MPoly::term(
                {
                    let mut m = Mono::one();
                    m.0[v as usize] = k as u16;
                    m
                },
                Rat::one(),
            );
            p = p + &(ck * &vm);
        }
        p
    }

    /// Dense rational coefficient vector when `self` involves only `v`
    /// (constant polynomials count). `None` if another variable appears.
    pub fn univar_coeffs(&self, v: Var) -> Option<Vec<Rat>> {
        for m in self.terms.keys() {
            for i in 0..NVARS {
                if i != v as usize && m.0[i] > 0 {
                    return None;
                }
            }
        }
        let d = self.degree(v) as usize;
        let mut out = vec![Rat::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.0[v as usize] as usize] = c.clone();
        }
        Some(out)
    }

    /// Multivariate gcd, normalized integer-primitive with positive leading
    /// coefficient. Uses content/primitive-part recursion with a primitive
    /// pseudo-remainder sequence in the main variable.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        let v = a.main_var().max(b.main_var()).unwrap();
        if !a.contains_var(v) {
            // gcd(a, b) divides a, so only b's coefficients in v matter.
            return MPoly::gcd(a, &content_in(b, v));
        }
        if !b.contains_var(v) {
            return MPoly::gcd(&content_in(a, v), b);
        }
        let ca = content_in(a, v);
        let cb = content_in(b, v);
        let pa = a.divexact(&ca).expect("content divides");
        let pb = b.divexact(&cb).expect("content divides");
        let cont_gcd = MPoly::gcd(&ca, &cb);
        let prim_gcd = prs_gcd(&pa, &pb, v);
        (&cont_gcd * &prim_gcd).primitive_part()
    }

    pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() || b.is_zero() {
            return MPoly::zero();
        }
        let g = MPoly::gcd(a, b);
        (a.divexact(&g).unwrap() * b.clone()).primitive_part()
    }

    /// Canonical display string (used by JSON output and goldens).
    pub fn to_canonical_string(&self) -> String {
        format!("{self}")
    }
}

/// Content of `p` with respect to `v`: gcd of its univariate-in-`v`
/// coefficients (polynomials in the lower variables).
fn content_in(p: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.univar_in(v) {
        if !c.is_zero() {
            g = MPoly::gcd(&g, &c);
            if g.is_constant() {
                return MPoly::one();
            }
        }
    }
    g
}

/// Primitive pseudo-remainder sequence gcd of two polynomials that are
/// primitive with respect to `v`.
fn prs_gcd(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let (mut f, mut g) = if a.degree(v) >= b.degree(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return primitive_wrt(&g, v);
        }
        if r.degree(v) == 0 {
            return MPoly::one();
        }
        f = g;
        g = primitive_wrt(&r, v);
    }
}

fn primitive_wrt(p: &MPoly, v: Var) -> MPoly {
    let c = content_in(p, v);
    p.divexact(&c).expect("content divides").primitive_part()
}

/// Pseudo-remainder of `a` by `b` in the variable `v` (up to a factor that
/// the primitive PRS discards anyway).
fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.degree(v);
    debug_assert!(!b.is_zero() && db > 0);
    let bu = b.univar_in(v);
    let lcb = bu[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree(v) >= db {
        let dr = r.degree(v);
        let ru = r.univar_in(v);
        let lcr = ru[dr as usize].clone();
        let mut shift = Mono::one();
        shift.0[v as usize] = (dr - db) as u16;
        r = &r * &lcb - &(b * &MPoly::term(shift, Rat::one())) * &lcr;
        debug_assert!(r.is_zero() || r.degree(v) < dr);
    }
    r
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Add<&MPoly> for MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self;
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        (&self) * (&rhs)
    }
}

impl Mul<&MPoly> for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        (&self) * rhs
    }
}

impl Sub<&MPoly> for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: &MPoly) -> MPoly {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
        self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Descending lex order: leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut printed = false;
            if !abs.is_one() || m.is_one() {
                f.write_str(&rat::to_string(&abs))?;
                printed = true;
            }
            for v in Var::ALL {
                let k = m.0[v as usize];
                if k > 0 {
                    if printed {
                        f.write_str("*")?;
                    }
                    printed = true;
                    if k == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Convenience constructors used throughout the crate.
pub fn c() -> MPoly {
    MPoly::var(Var::C)
}
pub fn e() -> MPoly {
    MPoly::var(Var::E)
}
pub fn h() -> MPoly {
    MPoly::var(Var::H)
}

/// Builds `k0 + k1*v` (handy for linear factors).
pub fn linear(v: Var, k1: i64, k0: i64) -> MPoly {
    MPoly::term(Mono::var(v), rat::rint(k1)) + &MPoly::int(k0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn arithmetic_and_display() {
        let p = linear(Var::C, 5, 22); // 5c + 22
        let q = linear(Var::C, 7, 68); // 7c + 68
        let prod = &p * &q; // 35c^2 + 494c + 1496
        assert_eq!(prod.coeff(&Mono::var(Var::C).mul(&Mono::var(Var::C))), rint(35));
        assert_eq!(prod.coeff(&Mono::var(Var::C)), rint(494));
        assert_eq!(prod.coeff(&Mono::one()), rint(1496));
        assert_eq!(format!("{prod}"), "35*c^2 + 494*c + 1496");
        assert_eq!(prod.divexact(&p).unwrap(), q);
        assert_eq!(prod.divexact(&linear(Var::C, 1, 1)), None);
    }

    #[test]
    fn eval_is_ring_homomorphism() {
        let p = linear(Var::C, 2, -1) * linear(Var::E, 5, 3) + &MPoly::var(Var::H).pow(2);
        let q = linear(Var::H, 3, 4) * linear(Var::C, 1, 7);
        let at = |f: &MPoly| f.eval_all(&rat(1, 2), &rat(-2, 3), &rint(5), &Rat::zero());
        assert_eq!(at(&(&p * &q)), at(&p) * at(&q));
        assert_eq!(at(&(p.clone() + &q)), at(&p) + at(&q));
    }

    #[test]
    fn variable_substitution() {
        // e -> c - e is an involution; h -> 2 matches rational evaluation.
        let p = linear(Var::C, 2, -1) * linear(Var::E, 5, 3) + &MPoly::var(Var::H).pow(2);
        let swap = MPoly::var(Var::C) - MPoly::var(Var::E);
        let q = p.subst_var(Var::E, &swap);
        assert_ne!(q, p);
        assert_eq!(q.subst_var(Var::E, &swap), p);
        assert_eq!(
            p.subst_var(Var::H, &MPoly::int(2)),
            p.eval(&[(Var::H, rint(2))])
        );
    }

    #[test]
    fn primitive_normalization() {
        // -6c + 9 => content -3, primitive 2c - 3.
        let p = linear(Var::C, -6, 9);
        let (cont, prim) = p.primitive_normalize();
        assert_eq!(cont, rint(-3));
        assert_eq!(prim, linear(Var::C, 2, -3));
        assert_eq!(prim.scale(&cont), p);
    }

    #[test]
    fn gcd_multivariate() {
        let common = linear(Var::C, 5, 22) * linear(Var::E, 1, -2);
        let a = &common * &linear(Var::C, 1, 3);
        let b = &common * &linear(Var::H, 2, 1);
        let g = MPoly::gcd(&a, &b);
        assert_eq!(g, common.primitive_part());
        // Coprime inputs.
        let g2 = MPoly::gcd(&linear(Var::C, 1, 1), &linear(Var::E, 1, 1));
        assert_eq!(g2, MPoly::one());
        // Rational contents do not confuse the normalization.
        let a3 = linear(Var::C, 1, 0).scale(&rat(3, 7));
        let b3 = linear(Var::C, 1, 0).scale(&rat(-5, 11));
        assert_eq!(MPoly::gcd(&a3, &b3), linear(Var::C, 1, 0));
    }

    #[test]
    fn univar_round_trip() {
        let p = MPoly::var(Var::H).pow(2).scale(&rint(16))
            + &(linear(Var::C, 2, -10) * MPoly::var(Var::H))
            + &MPoly::var(Var::C);
        let coeffs = p.univar_in(Var::H);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[2], MPoly::int(16));
        assert_eq!(coeffs[1], linear(Var::C, 2, -10));
        assert_eq!(coeffs[0], MPoly::var(Var::C));
        assert_eq!(MPoly::from_univar(Var::H, &coeffs), p);
    }
}
