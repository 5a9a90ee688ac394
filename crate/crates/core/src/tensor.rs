//! Two-slot tensor products of vacuum Virasoro modules and their
//! highest-weight vectors.
//!
//! Slot `a` carries charge `e` (or the fixed value 1/2), slot `b` carries
//! `c - e`. The diagonal Virasoro action is `L_n = a_n + b_n`. Highest-weight
//! vectors at a given degree are the joint kernel of `L_1` and `L_2` on the
//! graded slice, solved exactly over the rational function field and
//! normalized by row reduction in a fixed column order: slot-a degree
//! ascending, then slot-b partition, then slot-a partition, both in the
//! canonical (multiplicity lex-descending) partition order. This makes the
//! leading column of each solution a pure slot-b monomial with coefficient 1.
//!
//! At slot charge 1/2 the degree-6 null vector generates a submodule with
//! graded dimensions 1, 1, 2 at degrees 6, 7, 8; the quotient is handled by
//! rewriting pivot partitions after every slot-a action.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::mpoly::{c, e, MPoly};
use crate::partition::{self, Partition};
use crate::rat::{rat, Rat};
use crate::ratfunc::RatFunc;
use crate::verma::{LinComb, VirasoroModule};

pub type PairKey = (Partition, Partition);
pub type TLinComb = BTreeMap<PairKey, RatFunc>;

/// Slot charges for which the vacuum module acquires extra null vectors at
/// degree at most `max_degree` (6 or 8); the generic solver is invalid there.
pub fn degenerate_charges(max_degree: u32) -> Vec<Rat> {
    let mut v = vec![rat(0, 1), rat(-22, 5), rat(1, 2), rat(-68, 7)];
    if max_degree >= 8 {
        v.push(rat(-46, 3));
        v.push(rat(-3, 5));
    }
    v
}

/// Rewrite rules sending a pivot partition to an equivalent combination of
/// later basis partitions, modulo the null submodule.
struct Reduction {
    rules: BTreeMap<Partition, Vec<(Partition, Rat)>>,
}

impl Reduction {
    fn reduce(&self, v: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (p, coeff) in v {
            match self.rules.get(p) {
                None => {
                    crate::verma::add_scaled(
                        &mut out,
                        &[(p.clone(), MPoly::one())].into_iter().collect(),
                        coeff,
                    );
                }
                Some(repl) => {
                    let sub: LinComb = repl
                        .iter()
                        .map(|(q, k)| (q.clone(), MPoly::constant(k.clone())))
                        .collect();
                    crate::verma::add_scaled(&mut out, &sub, coeff);
                }
            }
        }
        out
    }

    fn is_pivot(&self, p: &Partition) -> bool {
        self.rules.contains_key(p)
    }
}

pub struct TensorModule {
    a: VirasoroModule,
    b: VirasoroModule,
    reduction: Option<Reduction>,
}

impl TensorModule {
    /// Generic split: slot a charge `e`, slot b charge `c - e`.
    pub fn generic() -> Self {
        TensorModule {
            a: VirasoroModule::vacuum(e()),
            b: VirasoroModule::vacuum(c() - e()),
            reduction: None,
        }
    }

    /// Generic split with the slot-a charge pinned to a rational value; slot
    /// b keeps charge `c - e0`. Vector coefficients then live in `Q(c)`,
    /// which keeps degree-8 kernel and trace computations cheap when the
    /// quantity of interest is known not to depend on the split point.
    pub fn generic_at(e0: &Rat) -> Self {
        TensorModule {
            a: VirasoroModule::vacuum(MPoly::constant(e0.clone())),
            b: VirasoroModule::vacuum(c() - MPoly::constant(e0.clone())),
            reduction: None,
        }
    }

    /// Slot a fixed at charge 1/2 with its degree-6 null submodule divided
    /// out; slot b keeps charge `c - 1/2`.
    pub fn half() -> Self {
        let a = VirasoroModule::vacuum(MPoly::constant(rat(1, 2)));
        let b = VirasoroModule::vacuum(c() - MPoly::constant(rat(1, 2)));
        let reduction = Reduction { rules: half_charge_rules(&a) };
        TensorModule { a, b, reduction: Some(reduction) }
    }

    pub fn slot_a(&self) -> &VirasoroModule {
        &self.a
    }

    pub fn slot_b(&self) -> &VirasoroModule {
        &self.b
    }

    /// Graded basis of pairs in the canonical column order.
    pub fn basis(&self, level: u32) -> Vec<PairKey> {
        let mut out = Vec::new();
        for da in 0..=level {
            let db = level - da;
            for lb in partition::partitions(db, 2) {
                for la in partition::partitions(da, 2) {
                    if let Some(red) = &self.reduction {
                        if red.is_pivot(&la) {
                            continue;
                        }
                    }
                    out.push((la.clone(), lb.clone()));
                }
            }
        }
        out
    }

    /// Diagonal action of a single mode on one basis pair; coefficients stay
    /// polynomial. Slot-a reduction is applied to keep results in the
    /// quotient basis.
    fn apply_mode_pair(&self, m: i64, la: &Partition, lb: &Partition) -> BTreeMap<PairKey, MPoly> {
        let mut out: BTreeMap<PairKey, MPoly> = BTreeMap::new();
        let unit_a: LinComb = [(la.clone(), MPoly::one())].into_iter().collect();
        let unit_b: LinComb = [(lb.clone(), MPoly::one())].into_iter().collect();

        let mut img_a = self.a.apply_modes(&[m], &unit_a);
        if let Some(red) = &self.reduction {
            img_a = red.reduce(&img_a);
        }
        for (ma, k) in img_a {
            add_poly(&mut out, (ma, lb.clone()), k);
        }
        let img_b = self.b.apply_modes(&[m], &unit_b);
        for (mb, k) in img_b {
            add_poly(&mut out, (la.clone(), mb), k);
        }
        out
    }

    /// Apply a word of single-slot Virasoro modes (leftmost acts last) to a
    /// vector. Slot-a images are reduced into the quotient basis.
    pub fn apply_slot_word(&self, slot_a: bool, word: &[i64], v: &TLinComb) -> TLinComb {
        let mut out = TLinComb::new();
        for ((la, lb), coeff) in v {
            let unit: LinComb = [(
                if slot_a { la.clone() } else { lb.clone() },
                MPoly::one(),
            )]
            .into_iter()
            .collect();
            let mut img = if slot_a {
                self.a.apply_modes(word, &unit)
            } else {
                self.b.apply_modes(word, &unit)
            };
            if slot_a {
                if let Some(red) = &self.reduction {
                    img = red.reduce(&img);
                }
            }
            for (m, k) in img {
                let key = if slot_a { (m, lb.clone()) } else { (la.clone(), m) };
                add_t(&mut out, key, &(RatFunc::from_poly(k) * coeff.clone()));
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Diagonal mode action with slot-a reduction applied afterwards.
    pub fn apply_mode(&self, m: i64, v: &TLinComb) -> TLinComb {
        let mut out = TLinComb::new();
        for ((la, lb), coeff) in v {
            for (key, k) in self.apply_mode_pair(m, la, lb) {
                add_t(&mut out, key, &(RatFunc::from_poly(k) * coeff.clone()));
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Highest-weight vectors at the given degree: the joint kernel of the
    /// first two raising modes, row-reduced in the canonical column order.
    pub fn hw_vectors(&self, level: u32) -> Vec<TLinComb> {
        let cols = self.basis(level);
        if cols.is_empty() {
            return vec![];
        }
        let mut rows: Vec<Vec<MPoly>> = Vec::new();
        for m in [1i64, 2] {
            if level < m as u32 {
                continue;
            }
            let img_basis = self.basis(level - m as u32);
            let index: BTreeMap<&PairKey, usize> =
                img_basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
            let mut block = vec![vec![MPoly::zero(); cols.len()]; img_basis.len()];
            for (j, (la, lb)) in cols.iter().enumerate() {
                for (ik, coeff) in self.apply_mode_pair(m, la, lb) {
                    let i = *index.get(&ik).expect("image stays in the graded basis");
                    block[i][j] = coeff;
                }
            }
            rows.extend(block);
        }
        if rows.is_empty() {
            // Degree 0: the vacuum pair itself is a highest-weight vector.
            return vec![[(cols[0].clone(), RatFunc::one())].into_iter().collect()];
        }
        let kernel = crate::linalg::kernel_poly(rows, cols.len());
        let mut out = Vec::new();
        for krow in kernel {
            let mut v = TLinComb::new();
            for (j, key) in cols.iter().enumerate() {
                if !krow[j].is_zero() {
                    v.insert(key.clone(), krow[j].clone());
                }
            }
            out.push(v);
        }
        out
    }
}

fn add_poly(acc: &mut BTreeMap<PairKey, MPoly>, key: PairKey, coeff: MPoly) {
    if coeff.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(cur) => {
            let next = cur.clone() + coeff;
            if next.is_zero() {
                acc.remove(&key);
            } else {
                *cur = next;
            }
        }
        None => {
            acc.insert(key, coeff);
        }
    }
}

fn add_t(acc: &mut TLinComb, key: PairKey, coeff: &RatFunc) {
    if coeff.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(cur) => {
            let next = cur.clone() + coeff.clone();
            if next.is_zero() {
                acc.remove(&key);
            } else {
                *cur = next;
            }
        }
        None => {
            acc.insert(key, coeff.clone());
        }
    }
}

/// The degree-6 null vector of the charge-1/2 vacuum module.
pub fn null_vector_half() -> LinComb {
    [
        (vec![6], MPoly::int(-108)),
        (vec![4, 2], MPoly::int(-264)),
        (vec![3, 3], MPoly::int(93)),
        (vec![2, 2, 2], MPoly::int(64)),
    ]
    .into_iter()
    .collect()
}

/// Degree up to which the charge-1/2 quotient is rewritten: deep enough for
/// every trace walk the design systems perform (degree-8 vectors acting on
/// degree-2 states pass through degree 10).
const HALF_RULE_DEPTH: u32 = 10;

/// Rewrite rules for the submodule generated by the degree-6 null vector.
/// One generator per partition of the descent depth spans each graded piece
/// (the submodule stays free through degree 10: span dimensions 1, 1, 2, 3,
/// 5, matching the simple-quotient character). Pivots are taken in the
/// canonical partition order, so the all-twos partition rewrites first.
fn half_charge_rules(a: &VirasoroModule) -> BTreeMap<Partition, Vec<(Partition, Rat)>> {
    let s6 = null_vector_half();
    let gens: Vec<(u32, Vec<LinComb>)> = (6..=HALF_RULE_DEPTH)
        .map(|deg| {
            let vectors = partition::partitions(deg - 6, 1)
                .iter()
                .map(|p| {
                    let word: Vec<i64> = p.iter().map(|&x| -(x as i64)).collect();
                    a.apply_modes(&word, &s6)
                })
                .collect();
            (deg, vectors)
        })
        .collect();
    let mut rules = BTreeMap::new();
    for (deg, vectors) in gens {
        let basis = partition::partitions(deg, 2);
        let index: BTreeMap<&Partition, usize> =
            basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows: Vec<Vec<RatFunc>> = vectors
            .iter()
            .map(|v| {
                let mut row = vec![RatFunc::zero(); basis.len()];
                for (p, coeff) in v {
                    let k = coeff.as_constant().expect("fixed-charge coefficients");
                    row[index[p]] = RatFunc::constant(k);
                }
                row
            })
            .collect();
        let expected_rank = rows.len();
        let (rref, pivots) = Matrix::from_rows(rows).rref();
        assert_eq!(pivots.len(), expected_rank, "null span degenerates at degree {deg}");
        for (ri, &pc) in pivots.iter().enumerate() {
            let mut repl = Vec::new();
            for j in 0..basis.len() {
                if j == pc {
                    continue;
                }
                let x = rref.get(ri, j);
                if !x.is_zero() {
                    repl.push((basis[j].clone(), -x.as_constant().unwrap()));
                }
            }
            rules.insert(basis[pc].clone(), repl);
        }
    }
    rules
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{linear, Var};
    use crate::rat::rint;

    fn rf(num: MPoly, den: MPoly) -> RatFunc {
        RatFunc::new(num, den)
    }

    #[test]
    fn degree_two_vector_matches_closed_form() {
        let t = TensorModule::generic();
        let vs = t.hw_vectors(2);
        assert_eq!(vs.len(), 1);
        let expect: TLinComb = [
            ((vec![], vec![2]), RatFunc::one()),
            ((vec![2], vec![]), -rf(c() - e(), e())),
        ]
        .into_iter()
        .collect();
        assert_eq!(vs[0], expect);
    }

    #[test]
    fn degree_four_vector_matches_closed_form() {
        let t = TensorModule::generic();
        let vs = t.hw_vectors(4);
        assert_eq!(vs.len(), 1);
        // 22 + 5c - 5e appears in every slot-a coefficient.
        let k = MPoly::int(22) + c().scale(&rint(5)) - e().scale(&rint(5));
        let e22 = linear(Var::E, 5, 22);
        let expect: TLinComb = [
            ((vec![], vec![2, 2]), RatFunc::one()),
            ((vec![], vec![4]), RatFunc::of(-3, 5)),
            ((vec![2], vec![2]), -rf(k.clone().scale(&rat(2, 5)), e())),
            ((vec![2, 2], vec![]), rf(k.clone() * (c() - e()), e() * &e22)),
            ((vec![4], vec![]), -rf(k * (c() - e()) * MPoly::constant(rat(3, 5)), e() * &e22)),
        ]
        .into_iter()
        .collect();
        assert_eq!(vs[0], expect);
    }

    #[test]
    fn generic_multiplicities_through_degree_six() {
        let t = TensorModule::generic();
        let expect = [1usize, 0, 1, 0, 1, 0, 2];
        for (n, &mu) in expect.iter().enumerate() {
            assert_eq!(t.hw_vectors(n as u32).len(), mu, "degree {n}");
        }
    }

    #[test]
    fn generic_multiplicity_at_degree_eight() {
        let t = TensorModule::generic();
        assert_eq!(t.basis(8).len(), 30);
        let vs = t.hw_vectors(8);
        assert_eq!(vs.len(), 3);
        // Verify the kernel property directly.
        for v in &vs {
            assert!(t.apply_mode(1, v).is_empty());
            assert!(t.apply_mode(2, v).is_empty());
        }
    }

    #[test]
    fn half_charge_multiplicities() {
        let t = TensorModule::half();
        assert_eq!(t.hw_vectors(6).len(), 1);
        assert_eq!(t.hw_vectors(7).len(), 0);
        assert_eq!(t.hw_vectors(8).len(), 2);
    }

    #[test]
    fn half_charge_quotient_dimensions() {
        let t = TensorModule::half();
        // Slot-a graded dimensions drop by 1, 1, 2 at degrees 6, 7, 8.
        let drop = [(6u32, 1usize), (7, 1), (8, 2)];
        for (deg, d) in drop {
            let full = partition::partitions(deg, 2).len();
            let reduced: Vec<PairKey> = t
                .basis(deg)
                .into_iter()
                .filter(|(la, _)| la.iter().sum::<u32>() == deg)
                .collect();
            assert_eq!(reduced.len(), full - d, "degree {deg}");
        }
    }

    #[test]
    fn half_charge_degree_six_matches_printed_representative() {
        let t = TensorModule::half();
        let got = normalize_primitive(&t.hw_vectors(6)[0]);

        let p3 = MPoly::from_univar(
            Var::C,
            &[MPoly::int(-5031), MPoly::int(3195), MPoly::int(1696), MPoly::int(140)],
        );
        let two_c = linear(Var::C, 2, -1);
        let printed: Vec<(PairKey, MPoly)> = vec![
            (
                (vec![], vec![6]),
                MPoly::from_univar(Var::C, &[MPoly::int(2373), MPoly::int(1657), MPoly::int(20)])
                    .scale(&rat(-2, 3)),
            ),
            (
                (vec![], vec![4, 2]),
                MPoly::from_univar(Var::C, &[MPoly::int(12387), MPoly::int(7301), MPoly::int(112)])
                    .scale(&rat(-1, 3)),
            ),
            (
                (vec![], vec![3, 3]),
                MPoly::from_univar(Var::C, &[MPoly::int(6051), MPoly::int(854), MPoly::int(70)])
                    .scale(&rat(1, 3)),
            ),
            ((vec![], vec![2, 2, 2]), linear(Var::C, 1099, 501)),
            (((vec![6], vec![])), (two_c.clone() * &p3).scale(&rat(-5, 48))),
            ((vec![4], vec![2]), p3.scale(&rat(-11, 3))),
            ((vec![3], vec![3]), p3.scale(&rat(-2, 3))),
            (
                (vec![2], vec![4]),
                MPoly::from_univar(
                    Var::C,
                    &[MPoly::int(-102555), MPoly::int(89361), MPoly::int(12970), MPoly::int(224)],
                )
                .scale(&rat(1, 3)),
            ),
            (
                (vec![2], vec![2, 2]),
                MPoly::from_univar(Var::C, &[MPoly::int(-129), MPoly::int(115), MPoly::int(14)])
                    .scale(&rint(-407)),
            ),
            ((vec![4, 2], vec![]), (two_c.clone() * &p3).scale(&rat(-7, 24))),
            ((vec![3, 3], vec![]), (two_c * &p3).scale(&rat(35, 192))),
            ((vec![2, 2], vec![2]), p3.scale(&rint(7))),
        ];
        let printed: TLinComb = printed
            .into_iter()
            .map(|(k, p)| (k, RatFunc::from_poly(p)))
            .collect();
        let want = normalize_primitive(&printed);
        assert_eq!(got, want);
    }

    #[test]
    fn half_charge_vectors_annihilated_in_quotient() {
        let t = TensorModule::half();
        for deg in [6u32, 8] {
            for v in t.hw_vectors(deg) {
                assert!(t.apply_mode(1, &v).is_empty(), "degree {deg}");
                assert!(t.apply_mode(2, &v).is_empty(), "degree {deg}");
            }
        }
    }
}

/// Clear denominators and strip the overall content so that proportional
/// vectors become identical up to the sign convention (first coefficient in
/// column order is made to have positive leading coefficient).
pub fn normalize_primitive(v: &TLinComb) -> BTreeMap<PairKey, MPoly> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    if v.is_empty() {
        return BTreeMap::new();
    }
    let mut den = MPoly::one();
    for coeff in v.values() {
        den = MPoly::lcm(&den, coeff.den());
    }
    let mut polys: BTreeMap<PairKey, MPoly> = BTreeMap::new();
    for (k, coeff) in v {
        let scale = den.divexact(coeff.den()).expect("lcm divides");
        polys.insert(k.clone(), coeff.num() * &scale);
    }
    let mut g = MPoly::zero();
    for p in polys.values() {
        g = if g.is_zero() { p.clone() } else { MPoly::gcd(&g, p) };
    }
    let mut num_gcd = BigInt::from(0);
    let mut den_lcm = BigInt::from(1);
    let mut quotients: BTreeMap<PairKey, MPoly> = BTreeMap::new();
    for (k, p) in &polys {
        let q = p.divexact(&g).expect("gcd divides");
        let (content, _) = q.primitive_normalize();
        num_gcd = num_gcd.gcd(content.numer());
        den_lcm = den_lcm.lcm(content.denom());
        quotients.insert(k.clone(), q);
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    let content = Rat::new(num_gcd, den_lcm);
    let mut out: BTreeMap<PairKey, MPoly> = quotients
        .into_iter()
        .map(|(k, q)| (k, q.scale(&(Rat::one() / &content))))
        .collect();
    // Sign convention off the earliest key in iteration order.
    let first = out.values().next().unwrap();
    let (fc, _) = first.primitive_normalize();
    if fc.is_negative() {
        for p in out.values_mut() {
            *p = -p.clone();
        }
    }
    out
}
