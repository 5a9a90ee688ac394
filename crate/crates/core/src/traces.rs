//! Graded traces of zero modes on lowest module pieces and on the degree-2
//! piece of the ambient algebra.
//!
//! The mode words from [`crate::modeword`] split into commuting slot-a and
//! slot-b parts. Each part is normal ordered (ascending Virasoro indices)
//! with the slot central charges `e` and `c - e`. On the lowest graded piece
//! of a module every ordered word with a positive index annihilates and
//! every word with a leftover negative index moves off the diagonal, so only
//! pure zero-mode words `a_0^za b_0^zb` contribute; the relation
//! `b_0 = h - a_0` on that piece turns them into moments `m_i = tr a_0^i`,
//! with `m_0` the piece's dimension. Those rules are load-bearing: a trace
//! expression is exactly the data `beta + sum_i alpha_i m_i`.
//!
//! For the degree-2 piece of the ambient algebra the same moment expansion
//! applies to the lowest vectors sitting there (all at total weight 2), but
//! the two explicit quadratic states of the vacuum pair need their diagonal
//! taken literally; `trace_v2` corrects the constant term by that slice.

use crate::error::Result;
use crate::modeword::{binom, omode_expand, ModeWord, Slot};
use crate::mpoly::{MPoly, Mono, Var};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::tensor::{TLinComb, TensorModule};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// `beta + sum_i alpha[i] * m_i` with `m_i` the `i`-th moment of the slot-a
/// zero mode on the traced space and `m_0` its dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceExpr {
    pub beta: RatFunc,
    pub alpha: BTreeMap<u32, RatFunc>,
}

impl TraceExpr {
    /// Substitute rational values for a subset of the symbolic variables in
    /// every coefficient.
    pub fn specialize(&self, vals: &[(Var, Rat)]) -> Result<TraceExpr> {
        let mut alpha = BTreeMap::new();
        for (i, a) in &self.alpha {
            let s = a.eval(vals)?;
            if !s.is_zero() {
                alpha.insert(*i, s);
            }
        }
        Ok(TraceExpr { beta: self.beta.eval(vals)?, alpha })
    }

    /// Evaluate `beta + sum alpha_i * moments(i)`.
    pub fn moment_eval(&self, moments: impl Fn(u32) -> RatFunc) -> RatFunc {
        let mut out = self.beta.clone();
        for (i, a) in &self.alpha {
            out = out + a * &moments(*i);
        }
        out
    }
}

/// Normal ordering of one slot's Virasoro words, ascending indices, with a
/// polynomial central charge. Results are memoized per word; the step
/// counter guards against runaway rewriting.
struct SlotOrder {
    central: MPoly,
    memo: HashMap<Vec<i64>, Rc<BTreeMap<Vec<i64>, MPoly>>>,
    steps: u64,
}

impl SlotOrder {
    fn new(central: MPoly) -> Self {
        SlotOrder { central, memo: HashMap::new(), steps: 0 }
    }

    fn order(&mut self, word: &[i64]) -> Rc<BTreeMap<Vec<i64>, MPoly>> {
        if let Some(hit) = self.memo.get(word) {
            return Rc::clone(hit);
        }
        self.steps += 1;
        assert!(self.steps < 1_000_000, "normal-ordering step ceiling exceeded");
        let inversion = word.windows(2).position(|w| w[0] > w[1]);
        let result = match inversion {
            None => {
                let mut done = BTreeMap::new();
                done.insert(word.to_vec(), MPoly::one());
                done
            }
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut merged = word.to_vec();
                merged[i] = a + b;
                merged.remove(i + 1);
                let mut acc: BTreeMap<Vec<i64>, MPoly> = BTreeMap::new();
                let mut fold = |sum: Rc<BTreeMap<Vec<i64>, MPoly>>, scale: MPoly| {
                    for (w, k) in sum.iter() {
                        let e = acc.entry(w.clone()).or_insert_with(MPoly::zero);
                        *e = e.clone() + k * &scale;
                    }
                };
                fold(self.order(&swapped), MPoly::one());
                fold(self.order(&merged), MPoly::int(a - b));
                if a + b == 0 {
                    let mut dropped = word.to_vec();
                    dropped.remove(i + 1);
                    dropped.remove(i);
                    let weight = Rat::new((a * a * a - a).into(), 12.into());
                    fold(self.order(&dropped), self.central.scale(&weight));
                }
                acc.retain(|_, k| !k.is_zero());
                acc
            }
        };
        let rc = Rc::new(result);
        self.memo.insert(word.to_vec(), Rc::clone(&rc));
        rc
    }
}

fn split_slots(w: &ModeWord) -> (Vec<i64>, Vec<i64>) {
    let pick = |s: Slot| -> Vec<i64> {
        w.letters.iter().filter(|&&(t, _)| t == s).map(|&(_, k)| k).collect()
    };
    (pick(Slot::A), pick(Slot::B))
}

fn zero_mode_count(sum: &BTreeMap<Vec<i64>, MPoly>) -> Vec<(u32, MPoly)> {
    sum.iter()
        .filter(|(w, _)| w.iter().all(|&k| k == 0))
        .map(|(w, k)| (w.len() as u32, k.clone()))
        .collect()
}

/// Trace of `o(v)` over the lowest graded piece of a module whose lowest
/// total weight is the symbolic `h`, with the slot central charges kept
/// symbolic as `e` and `c - e`. The result is exact in `c`, `e`, `h`.
pub fn trace_lowest(v: &TLinComb, ambient_degree: u32) -> TraceExpr {
    trace_lowest_in(
        MPoly::var(Var::E),
        MPoly::var(Var::C) - MPoly::var(Var::E),
        v,
        ambient_degree,
    )
}

/// [`trace_lowest`] with the slot central charges read off a module, for
/// splits whose charges are pinned polynomials rather than `e` and `c - e`.
pub fn trace_lowest_of(module: &TensorModule, v: &TLinComb, ambient_degree: u32) -> TraceExpr {
    trace_lowest_in(
        module.slot_a().charge().clone(),
        module.slot_b().charge().clone(),
        v,
        ambient_degree,
    )
}

/// Core of the lowest-piece trace: explicit slot central charges.
pub fn trace_lowest_in(
    central_a: MPoly,
    central_b: MPoly,
    v: &TLinComb,
    ambient_degree: u32,
) -> TraceExpr {
    let words = omode_expand(v, ambient_degree);
    let mut oa = SlotOrder::new(central_a);
    let mut ob = SlotOrder::new(central_b);
    let mut alpha: BTreeMap<u32, RatFunc> = BTreeMap::new();
    for w in &words {
        let (wa, wb) = split_slots(w);
        let za_terms = zero_mode_count(&oa.order(&wa));
        if za_terms.is_empty() {
            continue;
        }
        let zb_terms = zero_mode_count(&ob.order(&wb));
        for (za, ka) in &za_terms {
            for (zb, kb) in &zb_terms {
                let scale = &w.scalar * &RatFunc::from_poly(ka * kb);
                // a_0^za b_0^zb with b_0 = h - a_0 on the lowest piece.
                for j in 0..=*zb {
                    let idx = za + j;
                    assert!(idx <= 4, "moment index {idx} exceeds the supported window");
                    let co = binom(*zb as i64, j as i64)
                        * if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                    let hpow =
                        MPoly::term(Mono::var_pow(Var::H, (zb - j) as u16), co);
                    let term = &scale * &RatFunc::from_poly(hpow);
                    let e = alpha.entry(idx).or_insert_with(RatFunc::zero);
                    *e = e.clone() + term;
                }
            }
        }
    }
    alpha.retain(|_, a| !a.is_zero());
    TraceExpr { beta: RatFunc::zero(), alpha }
}

/// Diagonal of the truncated expansion of `o(v)` on one pair state.
fn pair_diagonal(module: &TensorModule, words: &[ModeWord], state: &(Vec<u32>, Vec<u32>)) -> RatFunc {
    let unit: TLinComb = [(state.clone(), RatFunc::one())].into_iter().collect();
    let mut total = RatFunc::zero();
    for w in words {
        let mut cur = unit.clone();
        for &(slot, k) in w.letters.iter().rev() {
            cur = module.apply_slot_word(slot == Slot::A, &[k], &cur);
            if cur.is_empty() {
                break;
            }
        }
        if let Some(d) = cur.get(state) {
            total = total + &w.scalar * d;
        }
    }
    total
}

/// Trace of `o(v)` over the degree-2 piece of the ambient algebra, in the
/// moments of the slot-a zero mode on that piece.
///
/// Requires a trivial degree-1 piece: the caller asserts that the only
/// degree-2 states outside lowest module pieces are the two quadratic
/// vacuum-pair states. Their diagonal is computed literally and the moment
/// formula's claim for them (zero-mode eigenvalues 2 and 0) is folded into
/// the constant term.
pub fn trace_v2(module: &TensorModule, v: &TLinComb, ambient_degree: u32) -> TraceExpr {
    let lows = trace_lowest_of(module, v, ambient_degree);
    let two = MPoly::int(2);
    let mut alpha = BTreeMap::new();
    for (i, a) in &lows.alpha {
        let s = a.subst_var(Var::H, &two).expect("weight-2 specialization is finite");
        if !s.is_zero() {
            alpha.insert(*i, s);
        }
    }
    let words = omode_expand(v, ambient_degree);
    let states = [(vec![2u32], vec![]), (vec![], vec![2u32])];
    let mut beta = RatFunc::zero();
    for s in &states {
        beta = beta + pair_diagonal(module, &words, s);
    }
    for (i, a) in &alpha {
        // eigenvalue 2 on the slot-a state, 0 on the slot-b state
        let claimed = Rat::from_integer(2u32.pow(*i).into())
            + if *i == 0 { Rat::one() } else { Rat::zero() };
        beta = beta - a * &RatFunc::constant(claimed);
    }
    TraceExpr { beta, alpha }
}

/// A trace expression with the moments resolved into weight multiplicities:
/// `beta + sum_w counts[w] * d_w` where `d_w` counts lowest vectors of
/// slot-a weight `w` in the traced space.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenForm {
    pub beta: RatFunc,
    pub counts: BTreeMap<Rat, RatFunc>,
}

fn rat_pow(x: &Rat, i: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..i {
        out *= x;
    }
    out
}

/// Substitute `m_i = sum_w d_w w^i + sum_{x in explicit} x^i` into a trace
/// expression: `weights` lists the allowed slot-a lowest weights, `explicit`
/// the zero-mode eigenvalues of states accounted for outside the counts.
pub fn eigensplit_substitute(t: &TraceExpr, weights: &[Rat], explicit: &[Rat]) -> EigenForm {
    let mut beta = t.beta.clone();
    for x in explicit {
        for (i, a) in &t.alpha {
            beta = beta + a * &RatFunc::constant(rat_pow(x, *i));
        }
    }
    let mut counts = BTreeMap::new();
    for w in weights {
        let mut co = RatFunc::zero();
        for (i, a) in &t.alpha {
            co = co + a * &RatFunc::constant(rat_pow(w, *i));
        }
        counts.insert(w.clone(), co);
    }
    EigenForm { beta, counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;
    use crate::linalg::Matrix;
    use crate::mpoly::linear;
    use crate::verma::VirasoroModule;

    fn c() -> MPoly {
        MPoly::var(Var::C)
    }
    fn e() -> MPoly {
        MPoly::var(Var::E)
    }
    fn h() -> MPoly {
        MPoly::var(Var::H)
    }
    fn rf(num: MPoly, den: MPoly) -> RatFunc {
        RatFunc::new(num, den)
    }
    fn hw(level: u32) -> TLinComb {
        let vs = TensorModule::generic().hw_vectors(level);
        assert_eq!(vs.len(), 1, "expected a single vector at level {level}");
        vs.into_iter().next().unwrap()
    }

    #[test]
    fn vacuum_trace_counts_dimension() {
        let v: TLinComb = [((vec![], vec![]), RatFunc::one())].into_iter().collect();
        let t = trace_lowest(&v, 4);
        assert!(t.beta.is_zero());
        assert_eq!(t.alpha, [(0, RatFunc::one())].into_iter().collect());
    }

    #[test]
    fn quadratic_trace_matches_closed_form() {
        // h m_0 - (c/e) m_1
        let t = trace_lowest(&hw(2), 6);
        assert!(t.beta.is_zero());
        assert_eq!(t.alpha.len(), 2);
        assert_eq!(t.alpha[&0], RatFunc::from_poly(h()));
        assert_eq!(t.alpha[&1], -rf(c(), e()));
    }

    #[test]
    fn quartic_trace_matches_closed_form() {
        let t = trace_lowest(&hw(4), 8);
        assert!(t.beta.is_zero());
        assert_eq!(t.alpha.len(), 3);
        let d = e() * linear(Var::E, 5, 22);
        assert_eq!(
            t.alpha[&0],
            rf(h() * h() * MPoly::int(5) + h(), MPoly::int(5))
        );
        let m1num = linear(Var::C, 5, 22)
            * (c() - (e() * MPoly::int(2) + h() * MPoly::int(44) + e() * h() * MPoly::int(10)));
        assert_eq!(t.alpha[&1], rf(m1num, d.clone() * MPoly::int(5)));
        let m2num = c() * c() * MPoly::int(25) + c() * MPoly::int(330) + MPoly::int(968);
        assert_eq!(t.alpha[&2], rf(m2num, d * MPoly::int(5)));
    }

    #[test]
    fn window_choice_does_not_change_traces() {
        for level in [2u32, 4] {
            let v = hw(level);
            assert_eq!(trace_lowest(&v, level + 2), trace_lowest(&v, level + 5));
            let m = TensorModule::generic();
            assert_eq!(trace_v2(&m, &v, level + 2), trace_v2(&m, &v, level + 5));
        }
    }

    #[test]
    fn traces_are_linear_in_the_vector() {
        let v = hw(4);
        let f = rf(c() + MPoly::int(2), e());
        let scaled: TLinComb = v.iter().map(|(k, x)| (k.clone(), x * &f)).collect();
        let t = trace_lowest(&v, 6);
        let ts = trace_lowest(&scaled, 6);
        assert_eq!(ts.beta, t.beta.clone() * f.clone());
        for (i, a) in &t.alpha {
            assert_eq!(ts.alpha[i], a * &f);
        }
    }

    #[test]
    fn zero_mode_elimination_is_slot_symmetric() {
        // Swapping the slots exchanges e with c - e and rewrites the moments
        // through b_0 = h - a_0; the two readings must agree.
        let ce = c() - e();
        for level in [2u32, 4] {
            let v = hw(level);
            // pre-substitute e <-> c - e so the swapped keys live in a module
            // with the charges the trace routine assigns to each slot
            let swapped: TLinComb = v
                .iter()
                .map(|((la, lb), x)| {
                    ((lb.clone(), la.clone()), x.subst_var(Var::E, &ce).unwrap())
                })
                .collect();
            let t = trace_lowest(&v, level + 2);
            let raw = trace_lowest(&swapped, level + 2);
            let tilde: BTreeMap<u32, RatFunc> = raw
                .alpha
                .iter()
                .map(|(i, a)| (*i, a.subst_var(Var::E, &ce).unwrap()))
                .collect();
            let top = *tilde.keys().max().unwrap();
            for j in 0..=top {
                let mut lhs = RatFunc::zero();
                for (ip, at) in &tilde {
                    if *ip < j {
                        continue;
                    }
                    let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                    let co = binom(*ip as i64, j as i64) * sign;
                    let hp = MPoly::term(Mono::var_pow(Var::H, (ip - j) as u16), co);
                    lhs = lhs + at * &RatFunc::from_poly(hp);
                }
                assert_eq!(lhs, t.alpha.get(&j).cloned().unwrap_or_else(RatFunc::zero));
            }
        }
    }

    #[test]
    fn rank_one_verma_pair_is_an_exact_oracle() {
        // On a pair of Verma modules the lowest piece is one-dimensional
        // with zero-mode eigenvalue n, so the trace must evaluate to
        // sum_i alpha_i n^i with d = 1. The diagonal is recomputed from the
        // raw mode words without any of the trace shortcuts.
        let ma = VirasoroModule::verma(e(), MPoly::var(Var::N));
        let mb = VirasoroModule::verma(c() - e(), h() - MPoly::var(Var::N));
        for (level, window) in [(2u32, 6u32), (4, 6)] {
            let v = hw(level);
            let words = omode_expand(&v, window);
            let bottom: TLinComb = [((vec![], vec![]), RatFunc::one())].into_iter().collect();
            let mut diag = RatFunc::zero();
            for w in &words {
                let mut cur = bottom.clone();
                for &(slot, k) in w.letters.iter().rev() {
                    let mut next = TLinComb::new();
                    for ((la, lb), coeff) in &cur {
                        let side = if slot == Slot::A { la } else { lb };
                        let unit = [(side.clone(), MPoly::one())].into_iter().collect();
                        let img = if slot == Slot::A {
                            ma.apply_modes(&[k], &unit)
                        } else {
                            mb.apply_modes(&[k], &unit)
                        };
                        for (m, x) in img {
                            let key = if slot == Slot::A {
                                (m, lb.clone())
                            } else {
                                (la.clone(), m)
                            };
                            let entry = next.entry(key).or_insert_with(RatFunc::zero);
                            *entry = entry.clone() + RatFunc::from_poly(x) * coeff.clone();
                        }
                    }
                    next.retain(|_, x| !x.is_zero());
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                if let Some(d) = cur.get(&(vec![], vec![])) {
                    diag = diag + &w.scalar * d;
                }
            }
            let t = trace_lowest(&v, window);
            let lowest = t.moment_eval(|i| RatFunc::from_poly(MPoly::var(Var::N).pow(i)));
            assert_eq!(diag, lowest, "level {level}");
        }
    }

    #[test]
    fn quadratic_degree_two_trace_matches_closed_form() {
        // 2 m_0 - (c/e) m_1 with no constant correction
        let t = trace_v2(&TensorModule::generic(), &hw(2), 6);
        assert!(t.beta.is_zero());
        assert_eq!(t.alpha[&0], RatFunc::int(2));
        assert_eq!(t.alpha[&1], -rf(c(), e()));
    }

    #[test]
    fn quartic_degree_two_trace_matches_closed_form() {
        let t = trace_v2(&TensorModule::generic(), &hw(4), 8);
        let expect = rf(
            linear(Var::C, 5, 44) * (c() - e()),
            linear(Var::E, 5, 22),
        );
        assert_eq!(t.beta, expect);
        assert_eq!(t.alpha[&0], rf(MPoly::int(22), MPoly::int(5)));
    }

    #[test]
    fn degree_two_diagonals_ignore_the_quotient() {
        // The correction slice reads off degree-2 coefficients, where the
        // quotient's null submodule vanishes; the reduced module must give
        // the same answer as the generic one specialized to e = 1/2.
        let half = Rat::new(1.into(), 2.into());
        let gen = TensorModule::generic();
        let red = TensorModule::half();
        let v4g = hw(4);
        let v4h = {
            let vs = red.hw_vectors(4);
            assert_eq!(vs.len(), 1);
            vs.into_iter().next().unwrap()
        };
        let spec: TLinComb = v4g
            .iter()
            .map(|(k, x)| (k.clone(), x.eval(&[(Var::E, half.clone())]).unwrap()))
            .collect();
        assert_eq!(spec, v4h);
        let tg = trace_v2(&gen, &v4g, 8).specialize(&[(Var::E, half)]).unwrap();
        let th = trace_v2(&red, &v4h, 8);
        assert_eq!(tg, th);
    }

    #[test]
    fn fermionic_eigensplit_of_the_quartic_trace() {
        // At (c, e) = (1, 1/2) the slot-a weights are 0, 1/2, 1/16 and the
        // quadratic slot-a state contributes eigenvalue 2 explicitly.
        let one_half = Rat::new(1.into(), 2.into());
        let t = trace_v2(&TensorModule::generic(), &hw(4), 8)
            .specialize(&[(Var::C, rint(1)), (Var::E, one_half.clone())])
            .unwrap();
        let weights = [Rat::zero(), one_half.clone(), Rat::new(1.into(), 16.into())];
        let split = eigensplit_substitute(&t, &weights, &[rint(2)]);
        assert_eq!(split.beta, rf(MPoly::int(27), MPoly::int(5)));
        assert_eq!(split.counts[&Rat::zero()], rf(MPoly::int(22), MPoly::int(5)));
        assert_eq!(split.counts[&one_half], rf(MPoly::int(-59), MPoly::int(5)));
        assert_eq!(
            split.counts[&Rat::new(1.into(), 16.into())],
            rf(MPoly::int(571), MPoly::int(320))
        );
    }

    #[test]
    fn half_weight_module_multiplicity_proportions() {
        // Vanishing traces of the three reduced-flavor vectors at
        // (c, e, h) = (8, 1/2, 1/2) pin the weight multiplicities to
        // d_0 = 255 d/496, d_{1/2} = d/496, d_{1/16} = 15 d/31.
        let red = TensorModule::half();
        let one_half = Rat::new(1.into(), 2.into());
        let point = [
            (Var::C, rint(8)),
            (Var::E, one_half.clone()),
            (Var::H, one_half.clone()),
        ];
        let weights = [Rat::zero(), one_half, Rat::new(1.into(), 16.into())];
        let mut rows = Vec::new();
        for level in [2u32, 4, 6] {
            let vs = red.hw_vectors(level);
            assert_eq!(vs.len(), 1);
            let t = trace_lowest(&vs[0], level + 2).specialize(&point).unwrap();
            assert!(t.beta.is_zero());
            let split = eigensplit_substitute(&t, &weights, &[]);
            rows.push(weights.iter().map(|w| split.counts[w].clone()).collect::<Vec<_>>());
        }
        let m = Matrix::from_rows(rows);
        let kernel = m.kernel();
        assert_eq!(kernel.len(), 1);
        let total: RatFunc =
            kernel[0].iter().fold(RatFunc::zero(), |acc, x| acc + x.clone());
        let scaled: Vec<Rat> = kernel[0]
            .iter()
            .map(|x| {
                let r = x.clone() * total.clone().recip().unwrap();
                r.ratio_constant(&RatFunc::one()).unwrap()
            })
            .collect();
        assert_eq!(scaled[0], Rat::new(255.into(), 496.into()));
        assert_eq!(scaled[1], Rat::new(1.into(), 496.into()));
        assert_eq!(scaled[2], Rat::new(15.into(), 31.into()));
    }
}
