//! Rewriting zero modes of composite states as words in slot Virasoro modes.
//!
//! A state built from creation modes of two commuting Virasoro fields has
//! every VOA mode expressible through the associativity relation
//!
//! ```text
//! (u_(m) w)_(n) = sum_{i>=0} (-1)^i C(m,i) (u_(m-i) w_(n+i) - (-1)^m w_(m+n-i) u_(i))
//! ```
//!
//! applied to the leftmost creation mode until only vacuum modes remain
//! (`1_(n) = delta_{n,-1} id`). A letter of Virasoro index `k` shifts degree
//! by `-k`, so once `|k|` exceeds the ambient degree bound the letter moves
//! every graded piece under consideration out of range; the index sums are
//! truncated there. Bound-independence of the resulting traces is covered by
//! tests in the trace module.
//!
//! The same recursion specialized to degree-1 elements yields the closed
//! word list for traces of `o(a^1_(-1) ... a^l_(-1) 1)` on the degree-1
//! piece; `v1_trace_expand` generates that list directly and
//! `v1_trace_oracle` re-derives it from the associativity relation alone.

use crate::partition::Partition;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::tensor::TLinComb;
use num_bigint::BigInt;
use num_traits::One;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    A,
    B,
}

/// One Virasoro mode: `(Slot::A, k)` is the slot-a operator of degree `-k`.
pub type Letter = (Slot, i64);

/// Scalar multiple of a composition of slot modes, leftmost acting last.
/// Zero-index letters are recorded symbolically and never annihilate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeWord {
    pub scalar: RatFunc,
    pub letters: Vec<Letter>,
}

/// Generalized binomial coefficient `C(m, i)` for integer `m` of any sign.
pub(crate) fn binom(m: i64, i: i64) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= m - j;
        den *= j + 1;
    }
    Rat::new(num, den)
}

fn sign_pow(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

type WordSum = BTreeMap<Vec<Letter>, Rat>;

fn add_word(acc: &mut WordSum, w: Vec<Letter>, k: Rat) {
    let e = acc.entry(w).or_insert_with(num_traits::Zero::zero);
    *e += k;
}

/// Memoized expansion of VOA modes of pair states within a degree window.
pub struct OModeExpander {
    bound: i64,
    memo: RefCell<HashMap<(Partition, Partition, i64), Rc<WordSum>>>,
}

impl OModeExpander {
    pub fn new(ambient_degree: u32) -> Self {
        OModeExpander { bound: ambient_degree as i64, memo: RefCell::new(HashMap::new()) }
    }

    /// Words for the VOA mode `(state)_(n)` of `a_{-la} b_{-lb} 1`,
    /// restricted to letters of Virasoro index in `[-bound, bound]`.
    pub fn state_mode(&self, la: &[u32], lb: &[u32], n: i64) -> Rc<WordSum> {
        let key = (la.to_vec(), lb.to_vec(), n);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return Rc::clone(hit);
        }
        let mut acc = WordSum::new();
        if la.is_empty() && lb.is_empty() {
            if n == -1 {
                acc.insert(Vec::new(), Rat::one());
            }
        } else {
            let (slot, p, ra, rb) = if la.is_empty() {
                (Slot::B, lb[0] as i64, la, &lb[1..])
            } else {
                (Slot::A, la[0] as i64, &la[1..], lb)
            };
            let m = 1 - p;
            // u_(m-i) w_(n+i): the peeled letter lands at Virasoro index -(p+i).
            for i in 0..=(self.bound - p).max(-1) {
                let sub = self.state_mode(ra, rb, n + i);
                if sub.is_empty() {
                    continue;
                }
                let co = sign_pow(i) * binom(m, i);
                for (w, k) in sub.iter() {
                    let mut word = Vec::with_capacity(w.len() + 1);
                    word.push((slot, -(p + i)));
                    word.extend_from_slice(w);
                    add_word(&mut acc, word, co.clone() * k);
                }
            }
            // -(-1)^m w_(m+n-i) u_(i): the peeled letter lands at index i-1.
            for i in 0..=self.bound + 1 {
                let sub = self.state_mode(ra, rb, m + n - i);
                if sub.is_empty() {
                    continue;
                }
                let co = sign_pow(i + m + 1) * binom(m, i);
                for (w, k) in sub.iter() {
                    let mut word = w.clone();
                    word.push((slot, i - 1));
                    add_word(&mut acc, word, co.clone() * k);
                }
            }
            acc.retain(|_, k| !num_traits::Zero::is_zero(k));
        }
        let rc = Rc::new(acc);
        self.memo.borrow_mut().insert(key, Rc::clone(&rc));
        rc
    }
}

/// Expansion of `o(v) = v_(deg v - 1)` for a homogeneous pair vector, as a
/// deduplicated word list with combined scalars.
pub fn omode_expand(v: &TLinComb, ambient_degree: u32) -> Vec<ModeWord> {
    let deg = |la: &Partition, lb: &Partition| -> u32 {
        la.iter().sum::<u32>() + lb.iter().sum::<u32>()
    };
    let mut degree: Option<u32> = None;
    for (la, lb) in v.keys() {
        let d = deg(la, lb);
        match degree {
            None => degree = Some(d),
            Some(d0) => assert_eq!(d0, d, "zero-mode expansion needs a homogeneous vector"),
        }
    }
    let Some(d) = degree else {
        return Vec::new();
    };
    assert!(ambient_degree >= d, "ambient degree must dominate the vector degree");
    let expander = OModeExpander::new(ambient_degree);
    let n = d as i64 - 1;
    let mut acc: BTreeMap<Vec<Letter>, RatFunc> = BTreeMap::new();
    for ((la, lb), coeff) in v {
        for (w, k) in expander.state_mode(la, lb, n).iter() {
            let entry = acc.entry(w.clone()).or_insert_with(RatFunc::zero);
            *entry = entry.clone() + coeff * &RatFunc::constant(k.clone());
        }
    }
    acc.into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(letters, scalar)| ModeWord { scalar, letters })
        .collect()
}

/// Word in modes of degree-1 elements labelled `1..=l`; leftmost acts last.
pub type V1Word = Vec<(usize, i64)>;

/// Closed-form word list for `tr o(a^1_(-1) ... a^l_(-1) 1)` on the degree-1
/// piece: the reversed all-zero-mode word, then for each `j < l` the word
/// `a^j_(-1) a^l_(1)` followed by the remaining zero modes in descending
/// label order, and finally `a^l_(-1) a^{l-1}_(1)` with the rest.
pub fn v1_trace_expand(l: usize) -> Vec<V1Word> {
    assert!(l >= 1);
    let mut out: Vec<V1Word> = Vec::new();
    out.push((1..=l).rev().map(|j| (j, 0i64)).collect());
    if l >= 2 {
        for j in 1..l {
            let mut w: V1Word = vec![(j, -1), (l, 1)];
            w.extend((1..l).rev().filter(|&t| t != j).map(|t| (t, 0)));
            out.push(w);
        }
        let mut w: V1Word = vec![(l, -1), (l - 1, 1)];
        w.extend((1..=l - 2).rev().map(|t| (t, 0)));
        out.push(w);
    }
    out
}

/// Re-derivation of the degree-1 trace words from the associativity
/// relation, independent of the closed form. Terms are pruned with only the
/// graded axioms: modes of degree-1 elements shift degree by minus their
/// index, negative degrees vanish, and `u_(k) 1 = 0` for `k >= 0`.
pub fn v1_trace_oracle(l: usize, bound: i64) -> BTreeMap<V1Word, Rat> {
    fn expand(
        ids: &[usize],
        n: i64,
        bound: i64,
        memo: &mut HashMap<(Vec<usize>, i64), Rc<BTreeMap<V1Word, Rat>>>,
    ) -> Rc<BTreeMap<V1Word, Rat>> {
        let key = (ids.to_vec(), n);
        if let Some(hit) = memo.get(&key) {
            return Rc::clone(hit);
        }
        let mut acc: BTreeMap<V1Word, Rat> = BTreeMap::new();
        if ids.is_empty() {
            if n == -1 {
                acc.insert(Vec::new(), Rat::one());
            }
        } else {
            let id = ids[0];
            let rest = &ids[1..];
            // m = -1, so (-1)^i C(-1,i) = 1 and the second family's sign
            // -(-1)^m collapses to +1 as well.
            for i in 0..bound {
                for (w, k) in expand(rest, n + i, bound, memo).iter() {
                    let mut word = Vec::with_capacity(w.len() + 1);
                    word.push((id, -1 - i));
                    word.extend_from_slice(w);
                    let e = acc.entry(word).or_insert_with(num_traits::Zero::zero);
                    *e += k;
                }
            }
            for i in 0..=bound {
                for (w, k) in expand(rest, n - 1 - i, bound, memo).iter() {
                    let mut word = w.clone();
                    word.push((id, i));
                    let e = acc.entry(word).or_insert_with(num_traits::Zero::zero);
                    *e += k;
                }
            }
            acc.retain(|_, k| !num_traits::Zero::is_zero(k));
        }
        let rc = Rc::new(acc);
        memo.insert(key, Rc::clone(&rc));
        rc
    }

    // A word survives on the degree-1 piece iff, read right to left, it
    // never reaches a negative degree and never applies a nonnegative mode
    // to the one-dimensional degree-0 piece.
    fn survives(word: &V1Word) -> bool {
        let mut d = 1i64;
        for &(_, k) in word.iter().rev() {
            if d == 0 && k >= 0 {
                return false;
            }
            d -= k;
            if d < 0 {
                return false;
            }
        }
        debug_assert_eq!(d, 1, "trace words preserve the grading");
        true
    }

    let ids: Vec<usize> = (1..=l).collect();
    let mut memo = HashMap::new();
    let full = expand(&ids, l as i64 - 1, bound, &mut memo);
    full.iter()
        .filter(|(w, _)| survives(w))
        .map(|(w, k)| (w.clone(), k.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    fn pair(la: &[u32], lb: &[u32]) -> TLinComb {
        [((la.to_vec(), lb.to_vec()), RatFunc::one())].into_iter().collect()
    }

    #[test]
    fn vacuum_and_single_mode_words() {
        let id = omode_expand(&pair(&[], &[]), 4);
        assert_eq!(id.len(), 1);
        assert!(id[0].letters.is_empty());
        assert_eq!(id[0].scalar, RatFunc::one());

        // The zero mode of a weight-2 generator is its index-0 Virasoro mode.
        let w = omode_expand(&pair(&[2], &[]), 4);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].letters, vec![(Slot::A, 0)]);
        assert_eq!(w[0].scalar, RatFunc::one());
    }

    #[test]
    fn squared_generator_expansion() {
        // o of the square of a weight-2 generator: zero modes, the crossed
        // (+1,-1) pairs once each, and each paired +-k pattern twice.
        let words = omode_expand(&pair(&[], &[2, 2]), 4);
        let lookup = |ls: &[(Slot, i64)]| -> Rat {
            words
                .iter()
                .find(|w| w.letters == ls)
                .map(|w| w.scalar.ratio_constant(&RatFunc::one()).unwrap())
                .unwrap_or_else(|| rint(0))
        };
        assert_eq!(lookup(&[(Slot::B, 0), (Slot::B, 0)]), rint(1));
        assert_eq!(lookup(&[(Slot::B, 1), (Slot::B, -1)]), rint(1));
        assert_eq!(lookup(&[(Slot::B, -1), (Slot::B, 1)]), rint(1));
        assert_eq!(lookup(&[(Slot::B, -2), (Slot::B, 2)]), rint(2));
        assert_eq!(lookup(&[(Slot::B, -3), (Slot::B, 3)]), rint(2));
        assert_eq!(lookup(&[(Slot::B, -4), (Slot::B, 4)]), rint(2));
        assert_eq!(words.len(), 6);
    }

    #[test]
    fn degree_one_base_case() {
        assert_eq!(v1_trace_expand(1), vec![vec![(1, 0)]]);
    }

    #[test]
    fn degree_one_words_match_associativity_oracle() {
        for l in 1..=4 {
            let closed = v1_trace_expand(l);
            let derived = v1_trace_oracle(l, 2 * l as i64 + 2);
            assert_eq!(derived.len(), closed.len(), "word count at l = {l}");
            for w in &closed {
                assert_eq!(derived.get(w), Some(&Rat::one()), "missing word {w:?} at l = {l}");
            }
        }
    }

    #[test]
    fn degree_one_length_four_shape() {
        // Five words: one all-zero-mode word and four with a (-1,+1) pair.
        let words = v1_trace_expand(4);
        assert_eq!(words.len(), 5);
        assert_eq!(words[0], vec![(4, 0), (3, 0), (2, 0), (1, 0)]);
        for w in &words[1..] {
            assert_eq!(w.len(), 4);
            assert_eq!(w[0].1, -1);
            assert_eq!(w[1].1, 1);
            assert!(w[2..].iter().all(|&(_, k)| k == 0));
        }
        assert_eq!(words[4][0], (4, -1));
        assert_eq!(words[4][1], (3, 1));
    }

    #[test]
    fn oracle_is_window_stable() {
        for l in 1..=4 {
            let narrow = v1_trace_oracle(l, 2 * l as i64 + 2);
            let wide = v1_trace_oracle(l, 2 * l as i64 + 4);
            assert_eq!(narrow, wide);
        }
    }
}
