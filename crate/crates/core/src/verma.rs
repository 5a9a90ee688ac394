//! Highest-weight modules for the Virasoro algebra with symbolic charge.
//!
//! Elements are linear combinations of ordered lowering monomials indexed by
//! partitions; coefficients are polynomials in the charge and the highest
//! weight. Everything reduces through one memoized rewriting routine that
//! normal-orders an arbitrary word of modes using
//!
//! ```text
//! [L_a, L_b] = (a - b) L_{a+b} + delta_{a+b,0} (a^3 - a)/12 * charge
//! ```
//!
//! The rewriting terminates because each step either removes an adjacent
//! inversion at fixed length or strictly shortens the word.

use num_traits::One;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::error::{CoreError, Result};
use crate::mpoly::MPoly;
use crate::partition::{self, Partition};
use crate::rat::{rat, Rat};

/// Linear combination of ordered monomials, partition -> coefficient.
pub type LinComb = BTreeMap<Partition, MPoly>;

pub fn add_scaled(acc: &mut LinComb, other: &LinComb, k: &MPoly) {
    if k.is_zero() {
        return;
    }
    for (p, coeff) in other {
        let add = coeff * k;
        match acc.get_mut(p) {
            Some(cur) => {
                let next = cur.clone() + add;
                if next.is_zero() {
                    acc.remove(p);
                } else {
                    *cur = next;
                }
            }
            None => {
                acc.insert(p.clone(), add);
            }
        }
    }
}

pub fn lincomb_is_zero(v: &LinComb) -> bool {
    v.values().all(|c| c.is_zero())
}

pub struct VirasoroModule {
    charge: MPoly,
    hw: MPoly,
    min_part: u32,
    memo: RefCell<HashMap<Vec<i64>, LinComb>>,
}

impl VirasoroModule {
    /// Full highest-weight module: no lowering monomial vanishes.
    pub fn verma(charge: MPoly, hw: MPoly) -> Self {
        VirasoroModule { charge, hw, min_part: 1, memo: RefCell::new(HashMap::new()) }
    }

    /// Vacuum quotient: weight zero and the mode `-1` kills the vacuum, so
    /// ordered monomials containing a part 1 drop out.
    pub fn vacuum(charge: MPoly) -> Self {
        VirasoroModule { charge, hw: MPoly::zero(), min_part: 2, memo: RefCell::new(HashMap::new()) }
    }

    pub fn charge(&self) -> &MPoly {
        &self.charge
    }

    pub fn basis(&self, level: u32) -> Vec<Partition> {
        partition::partitions(level, self.min_part)
    }

    pub fn dim(&self, level: u32) -> u64 {
        partition::count(level, self.min_part)
    }

    /// Normal-order a word of mode indices applied to the highest-weight
    /// vector (leftmost mode acts last).
    pub fn normal_order(&self, word: &[i64]) -> LinComb {
        if let Some(hit) = self.memo.borrow().get(word) {
            return hit.clone();
        }
        let result = match (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1]) {
            None => self.ordered_base(word),
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut acc = self.normal_order(&swapped);

                let mut merged = word.to_vec();
                merged.remove(i + 1);
                merged[i] = a + b;
                add_scaled(&mut acc, &self.normal_order(&merged), &MPoly::int(a - b));

                if a + b == 0 {
                    let mut dropped = word.to_vec();
                    dropped.drain(i..=i + 1);
                    let central =
                        MPoly::constant(rat(a * a * a - a, 12)) * self.charge.clone();
                    add_scaled(&mut acc, &self.normal_order(&dropped), &central);
                }
                acc
            }
        };
        self.memo.borrow_mut().insert(word.to_vec(), result.clone());
        result
    }

    /// Base case: the word is ascending, so any nonnegative modes sit at the
    /// right and act on the highest-weight vector directly.
    fn ordered_base(&self, word: &[i64]) -> LinComb {
        let mut out = LinComb::new();
        if word.iter().any(|&t| t >= 1) {
            return out; // a raising mode reaches the highest-weight vector
        }
        let zeros = word.iter().filter(|&&t| t == 0).count();
        // Ascending mode indices map straight to weakly decreasing parts.
        let parts: Partition = word.iter().filter(|&&t| t < 0).map(|&t| (-t) as u32).collect();
        if parts.iter().any(|&p| p < self.min_part) {
            return out;
        }
        out.insert(parts, self.hw.pow(zeros as u32));
        out
    }

    /// Apply a word of modes to a linear combination of basis monomials.
    pub fn apply_modes(&self, modes: &[i64], v: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (p, coeff) in v {
            let mut word: Vec<i64> = modes.to_vec();
            word.extend(p.iter().map(|&k| -(k as i64)));
            add_scaled(&mut out, &self.normal_order(&word), coeff);
        }
        out
    }

    /// Contravariant form matrix at the given level in the canonical basis
    /// order. The adjoint sends mode `t` to `-t`.
    pub fn gram(&self, level: u32) -> Vec<Vec<MPoly>> {
        let basis = self.basis(level);
        let mut m = vec![vec![MPoly::zero(); basis.len()]; basis.len()];
        for (i, li) in basis.iter().enumerate() {
            for (j, lj) in basis.iter().enumerate() {
                if j < i {
                    m[i][j] = m[j][i].clone();
                    continue;
                }
                let mut word: Vec<i64> = li.iter().rev().map(|&k| k as i64).collect();
                word.extend(lj.iter().map(|&k| -(k as i64)));
                let no = self.normal_order(&word);
                m[i][j] = no.get(&Vec::new()).cloned().unwrap_or_else(MPoly::zero);
            }
        }
        m
    }

    /// Determinant of the contravariant form at the given level.
    pub fn kac_det(&self, level: u32) -> MPoly {
        crate::linalg::det_poly(self.gram(level))
    }
}

/// Weight entries of the degenerate series at rational charge: for
/// s^2 = (25 - c)/(1 - c) and m = (s - 1)/2,
/// h(p, q) = (((m+1)p - mq)^2 - 1) (1 - c) / 24.
///
/// Errors at c = 1 (branch point) and when s^2 is not a rational square.
pub fn hpq(p: u32, q: u32, charge: &Rat) -> Result<Rat> {
    let one = Rat::one();
    if charge == &one {
        return Err(CoreError::domain("degenerate weights are singular at charge 1"));
    }
    let s2 = (rat(25, 1) - charge) / (&one - charge);
    let s = crate::rat::sqrt_exact(&s2).ok_or_else(|| {
        CoreError::domain(format!("(25 - c)/(1 - c) = {} is not a rational square", s2))
    })?;
    let m = (&s - &one) / rat(2, 1);
    let inner = (&m + &one) * rat(p as i64, 1) - &m * rat(q as i64, 1);
    Ok((&inner * &inner - &one) * (&one - charge) / rat(24, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor_univariate;
    use crate::mpoly::{c, h, linear, MPoly, Var};
    use crate::rat::rint;

    fn constant(n: i64, d: i64) -> MPoly {
        MPoly::constant(rat(n, d))
    }

    #[test]
    fn verma_level_two_determinant() {
        let m = VirasoroModule::verma(c(), h());
        let det = m.kac_det(2);
        // 2h (16h^2 + (2c - 10)h + c), expanded by hand from the 2x2 form.
        let inner = MPoly::int(16) * h().pow(2)
            + (c().scale(&rint(2)) - MPoly::int(10)) * h()
            + c();
        let expect = MPoly::int(2) * h() * inner;
        assert_eq!(det, expect);
    }

    #[test]
    fn vacuum_determinant_factor_sets() {
        let m = VirasoroModule::vacuum(c());
        let expect: [(u32, Vec<MPoly>); 4] = [
            (2, vec![c()]),
            (4, vec![c(), linear(Var::C, 5, 22)]),
            (6, vec![c(), linear(Var::C, 2, -1), linear(Var::C, 5, 22), linear(Var::C, 7, 68)]),
            (
                8,
                vec![
                    c(),
                    linear(Var::C, 2, -1),
                    linear(Var::C, 3, 46),
                    linear(Var::C, 5, 3),
                    linear(Var::C, 5, 22),
                    linear(Var::C, 7, 68),
                ],
            ),
        ];
        for (level, mut factors) in expect {
            let det = m.kac_det(level);
            factors.sort();
            assert_eq!(
                factor_univariate(&det).unwrap().factor_set(),
                factors,
                "level {level}"
            );
        }
    }

    #[test]
    fn vacuum_graded_dimensions() {
        let m = VirasoroModule::vacuum(c());
        let expect = [1, 0, 1, 1, 2, 2, 4, 4, 7];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(m.basis(n as u32).len(), e, "level {n}");
        }
    }

    #[test]
    fn grading_under_the_zero_mode() {
        let m = VirasoroModule::verma(c(), h());
        for level in 1..=5u32 {
            for p in m.basis(level) {
                let mut v = LinComb::new();
                v.insert(p.clone(), MPoly::one());
                let lv = m.apply_modes(&[0], &v);
                let mut expect = LinComb::new();
                expect.insert(p, h() + MPoly::int(level as i64));
                assert_eq!(lv, expect);
            }
        }
    }

    #[test]
    fn gram_is_symmetric() {
        let m = VirasoroModule::verma(c(), h());
        for level in 1..=4u32 {
            let g = m.gram(level);
            for i in 0..g.len() {
                for j in 0..g.len() {
                    assert_eq!(g[i][j], g[j][i]);
                }
            }
        }
    }

    #[test]
    fn degree_six_null_vector_at_half_charge() {
        // -108 x_{-6} - 264 x_{-4}x_{-2} + 93 x_{-3}^2 + 64 x_{-2}^3 applied
        // to the vacuum is singular exactly at charge 1/2.
        let s6: LinComb = [
            (vec![6], constant(-108, 1)),
            (vec![4, 2], constant(-264, 1)),
            (vec![3, 3], constant(93, 1)),
            (vec![2, 2, 2], constant(64, 1)),
        ]
        .into_iter()
        .collect();

        let half = VirasoroModule::vacuum(constant(1, 2));
        assert!(lincomb_is_zero(&half.apply_modes(&[1], &s6)));
        assert!(lincomb_is_zero(&half.apply_modes(&[2], &s6)));

        let other = VirasoroModule::vacuum(constant(3, 4));
        assert!(!lincomb_is_zero(&other.apply_modes(&[2], &s6)));

        // Symbolically: both images must be divisible by (2c - 1).
        let sym = VirasoroModule::vacuum(c());
        for modes in [[1i64], [2i64]] {
            let img = sym.apply_modes(&modes, &s6);
            for coeff in img.values() {
                assert!(
                    coeff.divexact(&linear(Var::C, 2, -1)).is_some(),
                    "coefficient {coeff} not divisible by 2c - 1"
                );
            }
        }
    }

    #[test]
    fn degenerate_weights() {
        assert_eq!(hpq(1, 3, &rat(1, 2)).unwrap(), rat(1, 2));
        assert_eq!(hpq(1, 2, &rat(1, 2)).unwrap(), rat(1, 16));
        assert!(hpq(1, 2, &rint(1)).is_err());
        assert!(hpq(1, 2, &rint(2)).is_err()); // s^2 negative
        // c = 0 gives s = 5, m = 2: h(1,2) = ((3 - 4)^2 - 1)/24 = 0.
        assert_eq!(hpq(1, 2, &rint(0)).unwrap(), rint(0));
    }
}
