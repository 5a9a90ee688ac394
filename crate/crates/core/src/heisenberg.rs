//! Zero-mode traces for states built from a single weight-1 current.
//!
//! A Cartan current `h` with `[h_a, h_b] = a <h,h> delta_{a+b,0}` and
//! `h_0 = 0` on the vacuum generates a Fock space inside the algebra. The
//! degree-4 vector `v = (8 h_{-3} h_{-1} - 6 h_{-2}^2 - 2 h_{-1}^4) 1` has
//! its zero-mode trace over the degree-1 piece expressible in two pieces:
//! after normal ordering, the only words that can act diagonally are pure
//! `h_0` powers (whose traces are unknowns of the ambient algebra) and
//! `h_{-1} h_1` (which traces to `<h,h>`). When the degree-1 piece is an
//! abelian Lie algebra, `h_0` acts on it by the bracket with `h` and is
//! zero, so the unknowns drop and the trace collapses to `24 <h,h>`.
//!
//! The norm `<h,h>` is carried symbolically in the `n` variable.

use crate::mpoly::{MPoly, Var};
use crate::partition::Partition;
use crate::rat::{rint, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// States of the current Fock space: partition of creation indices mapped
/// to a polynomial in the norm variable.
pub type FockSum = BTreeMap<Partition, MPoly>;

/// `8 h_{-3} h_{-1} - 6 h_{-2}^2 - 2 h_{-1}^4` applied to the vacuum.
pub fn design_vector() -> FockSum {
    [
        (vec![3, 1], MPoly::int(8)),
        (vec![2, 2], MPoly::int(-6)),
        (vec![1, 1, 1, 1], MPoly::int(-2)),
    ]
    .into_iter()
    .collect()
}

/// Apply the current mode `h_k` to a Fock sum.
pub fn apply_current(k: i64, v: &FockSum) -> FockSum {
    let mut out = FockSum::new();
    let norm = MPoly::var(Var::N);
    for (parts, coeff) in v {
        match k.cmp(&0) {
            std::cmp::Ordering::Equal => {}
            std::cmp::Ordering::Less => {
                let mut p = parts.clone();
                p.push((-k) as u32);
                p.sort_unstable_by(|a, b| b.cmp(a));
                let e = out.entry(p).or_insert_with(MPoly::zero);
                *e = e.clone() + coeff;
            }
            std::cmp::Ordering::Greater => {
                let mult = parts.iter().filter(|&&p| p as i64 == k).count() as i64;
                if mult == 0 {
                    continue;
                }
                let mut p = parts.clone();
                let pos = p.iter().position(|&x| x as i64 == k).unwrap();
                p.remove(pos);
                let e = out.entry(p).or_insert_with(MPoly::zero);
                *e = e.clone() + &(coeff * &norm.scale(&rint(k * mult)));
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Apply `sum_j :h_j h_{k-j}:` to a Fock sum. This is twice the norm times
/// the Sugawara Virasoro mode `L'_k`.
pub fn sugawara_mode(k: i64, v: &FockSum) -> FockSum {
    let degree = v.keys().map(|p| p.iter().sum::<u32>() as i64).max().unwrap_or(0);
    let mut out = FockSum::new();
    let mut j = -(degree + k.abs() + 2);
    while 2 * j <= k {
        let (a, b) = (j, k - j);
        let weight = if a == b { 1 } else { 2 };
        let img = apply_current(a, &apply_current(b, v));
        for (p, x) in img {
            let e = out.entry(p).or_insert_with(MPoly::zero);
            *e = e.clone() + &x.scale(&rint(weight));
        }
        j += 1;
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Expansion of `(state)_(n)` into current words via the associativity
/// relation; a creation index `p` peels off with mode index `-p`. Letters
/// outside `[-bound, bound]` are dropped.
fn current_mode(parts: &[u32], n: i64, bound: i64) -> BTreeMap<Vec<i64>, Rat> {
    let mut acc: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    if parts.is_empty() {
        if n == -1 {
            acc.insert(Vec::new(), Rat::one());
        }
        return acc;
    }
    let p = parts[0] as i64;
    let rest = &parts[1..];
    let m = -p;
    let push = |acc: &mut BTreeMap<Vec<i64>, Rat>, w: Vec<i64>, k: Rat| {
        let e = acc.entry(w).or_insert_with(Rat::zero);
        *e += k;
    };
    // u_(m-i) w_(n+i), letter index -(p+i)
    for i in 0..=(bound - p).max(-1) {
        let co = crate::modeword::binom(m, i)
            * if i % 2 == 0 { Rat::one() } else { -Rat::one() };
        for (w, k) in current_mode(rest, n + i, bound) {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(-(p + i));
            word.extend_from_slice(&w);
            push(&mut acc, word, co.clone() * k);
        }
    }
    // -(-1)^m w_(m+n-i) u_(i), letter index i
    for i in 0..=bound {
        let co = crate::modeword::binom(m, i)
            * if (i + m + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
        for (w, k) in current_mode(rest, m + n - i, bound) {
            let mut word = w;
            word.push(i);
            push(&mut acc, word, co.clone() * k);
        }
    }
    acc.retain(|_, k| !k.is_zero());
    acc
}

/// Normal order a current word (ascending indices) with the abelian rule
/// `h_a h_b = h_b h_a + a <h,h> delta_{a+b,0}`.
fn order_abelian(word: &[i64]) -> BTreeMap<Vec<i64>, MPoly> {
    match word.windows(2).position(|w| w[0] > w[1]) {
        None => [(word.to_vec(), MPoly::one())].into_iter().collect(),
        Some(i) => {
            let (a, b) = (word[i], word[i + 1]);
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            let mut acc = order_abelian(&swapped);
            if a + b == 0 {
                let mut dropped = word.to_vec();
                dropped.remove(i + 1);
                dropped.remove(i);
                let central = MPoly::var(Var::N).scale(&rint(a));
                for (w, k) in order_abelian(&dropped) {
                    let e = acc.entry(w).or_insert_with(MPoly::zero);
                    *e = e.clone() + &(&k * &central);
                }
            }
            acc.retain(|_, k| !k.is_zero());
            acc
        }
    }
}

/// Trace of a zero mode over the degree-1 piece, split into the resolved
/// part and the coefficients of the unresolved zero-mode traces `tr h_0^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeOneTrace {
    pub resolved: MPoly,
    pub unresolved: BTreeMap<u32, MPoly>,
}

/// Trace of `o(v)` over the degree-1 piece. Ordered words annihilate unless
/// they are pure zero modes or exactly `h_{-1} h_1`: any index of size at
/// least 2 drops below the vacuum line, a raising tail moves off the
/// diagonal, and `h_0` kills both the vacuum and the current itself.
pub fn degree_one_trace(v: &FockSum, bound: i64) -> DegreeOneTrace {
    let mut degree: Option<u32> = None;
    for p in v.keys() {
        let d = p.iter().sum::<u32>();
        match degree {
            None => degree = Some(d),
            Some(d0) => assert_eq!(d0, d, "trace expansion needs a homogeneous vector"),
        }
    }
    let Some(d) = degree else {
        return DegreeOneTrace { resolved: MPoly::zero(), unresolved: BTreeMap::new() };
    };
    let mut out = DegreeOneTrace { resolved: MPoly::zero(), unresolved: BTreeMap::new() };
    for (parts, coeff) in v {
        for (word, k) in current_mode(parts, d as i64 - 1, bound) {
            for (ordered, central) in order_abelian(&word) {
                let scale = (coeff * &central).scale(&k);
                if ordered.iter().all(|&x| x == 0) {
                    let e = out
                        .unresolved
                        .entry(ordered.len() as u32)
                        .or_insert_with(MPoly::zero);
                    *e = e.clone() + &scale;
                } else if ordered == [-1, 1] {
                    out.resolved = out.resolved + &(&scale * &MPoly::var(Var::N));
                }
            }
        }
    }
    out.unresolved.retain(|_, x| !x.is_zero());
    out
}

/// Evaluate the degree-1 trace of the design vector at a concrete norm
/// under the abelian hypothesis: `tr h_0^b = 0` for `b >= 1` because `h_0`
/// brackets the degree-1 piece with `h`. A surviving `b = 0` term would
/// mean the trace depends on the unknown dimension, so it is rejected.
pub fn heisenberg_trace_check(norm: &Rat) -> Rat {
    let t = degree_one_trace(&design_vector(), 8);
    assert!(
        !t.unresolved.contains_key(&0),
        "trace depends on the dimension of the degree-1 piece"
    );
    t.resolved
        .eval(&[(Var::N, norm.clone())])
        .as_constant()
        .expect("resolved trace is a polynomial in the norm alone")
}
