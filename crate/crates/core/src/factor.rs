//! Univariate polynomial factorization over the rationals.
//!
//! Pipeline: rational content, Yun squarefree decomposition, a rational-root
//! fast path, then Zassenhaus (factor mod a small prime, Hensel lift, subset
//! recombination) for what remains. Degrees in this crate stay small (at most
//! eight), so the subset search and big-integer lifting are cheap.
//!
//! Factors are returned integer-primitive with positive leading coefficient,
//! sorted by degree then display form; the rational content carries the rest.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::mpoly::{MPoly, Var};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub content: Rat,
    /// Irreducible factors with multiplicities.
    pub factors: Vec<(MPoly, u32)>,
}

impl Factored {
    /// Multiply everything back together.
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = acc * f.pow(*m);
        }
        acc
    }

    /// The set of irreducible factors, ignoring multiplicity.
    pub fn factor_set(&self) -> Vec<MPoly> {
        let mut v: Vec<MPoly> = self.factors.iter().map(|(f, _)| f.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Factor a univariate polynomial over the rationals.
pub fn factor_univariate(f: &MPoly) -> Result<Factored> {
    if f.is_zero() {
        return Err(CoreError::domain("cannot factor the zero polynomial"));
    }
    let vars: Vec<Var> = Var::ALL.iter().copied().filter(|&v| f.contains_var(v)).collect();
    if vars.is_empty() {
        return Ok(Factored { content: f.as_constant().unwrap(), factors: vec![] });
    }
    if vars.len() > 1 {
        return Err(CoreError::domain("factorization implemented for univariate input only"));
    }
    let var = vars[0];
    let (_, prim) = f.primitive_normalize();

    let mut factors: Vec<(MPoly, u32)> = Vec::new();
    for (part, mult) in yun_squarefree(&prim, var) {
        for irr in factor_squarefree(&part, var) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.total_degree(), a.0.to_canonical_string())
            .cmp(&(b.0.total_degree(), b.0.to_canonical_string()))
    });

    // Recover content by exact division; also validates the factorization.
    let mut expansion = MPoly::one();
    for (g, m) in &factors {
        expansion = expansion * g.pow(*m);
    }
    let content_poly = f
        .divexact(&expansion)
        .expect("factor product divides the input");
    let content = content_poly
        .as_constant()
        .expect("factorization covers the full degree");
    Ok(Factored { content, factors })
}

/// Rational roots with multiplicities, read off the linear factors.
pub fn rational_roots(f: &MPoly) -> Result<Vec<(Rat, u32)>> {
    let fac = factor_univariate(f)?;
    let mut roots = Vec::new();
    for (g, m) in &fac.factors {
        if g.total_degree() != 1 {
            continue;
        }
        let var = Var::ALL.iter().copied().find(|&v| g.contains_var(v)).unwrap();
        let coeffs = g.univar_coeffs(var).unwrap();
        // a*x + b = 0  =>  x = -b/a
        roots.push((-&coeffs[0] / &coeffs[1], *m));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Yun squarefree decomposition. Returns integer-primitive positive-lc parts
/// with their multiplicities; parts of degree zero are dropped.
fn yun_squarefree(f: &MPoly, var: Var) -> Vec<(MPoly, u32)> {
    let fp = f.derivative(var);
    let g = MPoly::gcd(f, &fp);
    if g.is_constant() {
        return vec![(f.primitive_part(), 1)];
    }
    let mut out = Vec::new();
    let mut c = f.divexact(&g).expect("gcd divides");
    let mut d = fp.divexact(&g).expect("gcd divides") - c.derivative(var);
    let mut i = 1u32;
    loop {
        let a = MPoly::gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.primitive_part(), i));
        }
        c = c.divexact(&a).expect("gcd divides");
        if c.is_constant() {
            break;
        }
        d = d.divexact(&a).expect("gcd divides") - c.derivative(var);
        i += 1;
    }
    out
}

/// Factor a squarefree, integer-primitive, positive-lc polynomial.
fn factor_squarefree(f: &MPoly, var: Var) -> Vec<MPoly> {
    let mut out = Vec::new();
    let mut rem = f.clone();

    // Fast path: strip rational roots found by divisor enumeration. Misses
    // are fine; the Zassenhaus stage below is complete on its own.
    for root in candidate_rational_roots(&rem, var) {
        loop {
            if !rem.eval(&[(var, root.clone())]).is_zero() {
                break;
            }
            let lin = linear_from_root(var, &root);
            rem = rem.divexact(&lin).expect("root implies divisibility");
            out.push(lin);
        }
    }

    let deg = rem.degree(var) as usize;
    if deg == 0 {
        return out;
    }
    if deg <= 3 {
        // Degree 2 or 3 without rational roots is irreducible; the root scan
        // above is only a fast path, so re-check completeness cheaply.
        if deg >= 2 {
            if let Some(root) = exhaustive_linear_scan(&rem, var) {
                let lin = linear_from_root(var, &root);
                let q = rem.divexact(&lin).expect("root implies divisibility");
                out.push(lin);
                out.extend(factor_squarefree(&q.primitive_part(), var));
                return out;
            }
        }
        out.push(rem.primitive_part());
        return out;
    }

    out.extend(zassenhaus(&rem.primitive_part(), var));
    out
}

/// The primitive linear polynomial with the given rational root.
fn linear_from_root(var: Var, root: &Rat) -> MPoly {
    let lin = MPoly::term(crate::mpoly::Mono::var(var), Rat::from(root.denom().clone()))
        + MPoly::constant(Rat::from(-root.numer().clone()));
    lin.primitive_part()
}

/// Candidate roots p/q with p | constant term, q | leading coefficient,
/// using trial division; gives up (returns what it has) on hard integers.
fn candidate_rational_roots(f: &MPoly, var: Var) -> Vec<Rat> {
    let coeffs = match f.univar_coeffs(var) {
        Some(c) => c,
        None => return vec![],
    };
    let ints: Vec<BigInt> = coeffs.iter().map(|r| r.numer().clone()).collect();
    let mut cands = vec![Rat::zero()];
    let lead = ints.last().unwrap().abs();
    // Lowest nonzero coefficient (handles roots at zero via the 0 candidate).
    let low = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) => x.abs(),
        None => return cands,
    };
    let (num_divs, num_complete) = small_divisors(&low);
    let (den_divs, den_complete) = small_divisors(&lead);
    if !(num_complete && den_complete) {
        return cands; // incomplete divisor sets; rely on the complete stage
    }
    for p in &num_divs {
        for q in &den_divs {
            let r = Rat::new(p.clone(), q.clone());
            cands.push(-r.clone());
            cands.push(r);
        }
    }
    cands.sort();
    cands.dedup();
    cands
}

/// Divisors of |n| by trial division up to a fixed bound. The bool reports
/// whether the factorization (hence the divisor list) is complete.
fn small_divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    const LIMIT: u64 = 1_000_000;
    let mut rest = n.abs();
    if rest.is_zero() {
        return (vec![], true);
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= LIMIT {
        let db = BigInt::from(d);
        if (&db * &db) > rest {
            break;
        }
        let mut k = 0u32;
        while (&rest % &db).is_zero() {
            rest /= &db;
            k += 1;
        }
        if k > 0 {
            primes.push((db, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut complete = true;
    if rest > BigInt::one() {
        let rb = BigInt::from(LIMIT);
        if &rest <= &(&rb * &rb) {
            primes.push((rest.clone(), 1)); // remaining cofactor is prime
        } else {
            complete = false;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, k) in &primes {
        let mut next = Vec::with_capacity(divs.len() * (*k as usize + 1));
        for dv in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=*k {
                next.push(dv * &pw);
                pw *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    (divs, complete)
}

/// Complete rational-root check for low degree: enumerate via the lowest
/// and leading coefficients without the trial-division bound, using the
/// Zassenhaus machinery only when divisor enumeration is infeasible.
fn exhaustive_linear_scan(f: &MPoly, var: Var) -> Option<Rat> {
    let coeffs = f.univar_coeffs(var)?;
    let ints: Vec<BigInt> = coeffs.iter().map(|r| r.numer().clone()).collect();
    let lead = ints.last().unwrap().abs();
    let low = ints.iter().find(|x| !x.is_zero())?.abs();
    let (nd, nc) = small_divisors(&low);
    let (dd, dc) = small_divisors(&lead);
    if nc && dc {
        for p in &nd {
            for q in &dd {
                for sgn in [1i32, -1] {
                    let r = Rat::new(p * BigInt::from(sgn), q.clone());
                    if f.eval(&[(var, r.clone())]).is_zero() {
                        return Some(r);
                    }
                }
            }
        }
        return None;
    }
    // Hard coefficients: fall back to the complete modular factorization.
    for g in zassenhaus(f, var) {
        if g.total_degree() == 1 {
            let c = g.univar_coeffs(var).unwrap();
            return Some(-&c[0] / &c[1]);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Zassenhaus: monicize, factor mod p, Hensel lift, recombine.
// ---------------------------------------------------------------------------

fn zassenhaus(f: &MPoly, var: Var) -> Vec<MPoly> {
    let coeffs = f.univar_coeffs(var).expect("univariate input");
    let ints: Vec<BigInt> = coeffs.iter().map(|r| r.numer().clone()).collect();
    let n = ints.len() - 1;
    let lead = ints[n].clone();

    // Monicize: F(x) = l^(n-1) * f(x/l) has integer coefficients and lc 1.
    let mut mf = Vec::with_capacity(n + 1);
    for (i, a) in ints.iter().enumerate() {
        if i == n {
            mf.push(BigInt::one());
        } else {
            mf.push(a * lead.pow((n - 1 - i) as u32));
        }
    }

    let monic_factors = factor_monic_z(&mf);
    let mut out = Vec::new();
    for g in monic_factors {
        // Undo the substitution: g(l*x), then primitive part.
        let mut terms = BTreeMap::new();
        for (i, a) in g.iter().enumerate() {
            let coeff = Rat::from(a * lead.pow(i as u32));
            if !coeff.is_zero() {
                terms.insert(crate::mpoly::Mono::var_pow(var, i as u16), coeff);
            }
        }
        out.push(MPoly::from_terms(terms).primitive_part());
    }
    out
}

/// Factor a monic squarefree integer polynomial (little-endian coefficients).
fn factor_monic_z(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Pick a prime keeping f squarefree mod p.
    const PRIMES: [u64; 30] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127,
    ];
    let (p, fp) = PRIMES
        .iter()
        .find_map(|&p| {
            let fp = gf_from_bigint(f, p);
            if fp.len() != f.len() {
                return None;
            }
            let d = gf_deriv(&fp, p);
            let g = gf_gcd(fp.clone(), d, p);
            if gf_deg(&g) == 0 {
                Some((p, fp))
            } else {
                None
            }
        })
        .expect("a squarefree reduction exists for squarefree input");

    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Lift to a modulus exceeding twice the factor coefficient bound.
    let norm_sq: BigInt = f.iter().map(|a| a * a).sum();
    let bound = (BigInt::from(2).pow(n as u32 + 1)) * (sqrt_ceil(&norm_sq) + BigInt::one());
    let mut modulus = BigInt::from(p);
    let mut lifts = 0u32;
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
        lifts += 1;
    }
    let lifted = hensel_tree(f, &modular, p, lifts);
    let modulus = BigInt::from(p).pow(2u32.pow(lifts));

    recombine(f, lifted, &modulus)
}

/// Subset recombination of lifted modular factors into true integer factors.
fn recombine(f: &[BigInt], mut parts: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut rem = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= parts.len() {
        let idxs: Vec<usize> = (0..parts.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut g = vec![BigInt::one()];
            for &i in &combo {
                g = zp_mul(&g, &parts[i], modulus);
            }
            symmetrize(&mut g, modulus);
            if let Some(q) = zdiv_exact(&rem, &g) {
                out.push(g);
                rem = q;
                let keep: Vec<Vec<BigInt>> = parts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                parts = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rem.len() > 1 {
        out.push(rem);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn sqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

// --- integer polynomial helpers (little-endian Vec<BigInt>) ---

fn ztrim(a: &mut Vec<BigInt>) {
    while a.len() > 1 && a.last().map(|x| x.is_zero()) == Some(true) {
        a.pop();
    }
}

/// Exact division by a monic divisor; None when the remainder is nonzero.
fn zdiv_exact(a: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(g.last().map(|x| x.is_one()) == Some(true), "monic divisor");
    if a.len() < g.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let qlen = a.len() - g.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let coef = rem[i + g.len() - 1].clone();
        if coef.is_zero() {
            continue;
        }
        q[i] = coef.clone();
        for (j, gj) in g.iter().enumerate() {
            rem[i + j] -= &coef * gj;
        }
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn symmetrize(a: &mut [BigInt], m: &BigInt) {
    let half = m / 2;
    for x in a.iter_mut() {
        let mut v = x.mod_floor(m);
        if v > half {
            v -= m;
        }
        *x = v;
    }
}

// --- polynomial arithmetic mod m (BigInt coefficients) ---

fn zp_norm(a: &mut Vec<BigInt>, m: &BigInt) {
    for x in a.iter_mut() {
        *x = x.mod_floor(m);
    }
    ztrim(a);
}

fn zp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    zp_norm(&mut out, m);
    out
}

fn zp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    zp_norm(&mut out, m);
    out
}

fn zp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_norm(&mut out, m);
    out
}

/// Division with remainder by a monic divisor, coefficients mod m.
fn zp_divrem(a: &[BigInt], g: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(g.last().map(|x| x.is_one()) == Some(true), "monic divisor");
    if a.len() < g.len() {
        return (vec![BigInt::zero()], a.to_vec());
    }
    let mut rem = a.to_vec();
    let qlen = a.len() - g.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let coef = rem[i + g.len() - 1].mod_floor(m);
        if coef.is_zero() {
            continue;
        }
        q[i] = coef.clone();
        for (j, gj) in g.iter().enumerate() {
            rem[i + j] -= &coef * gj;
        }
    }
    zp_norm(&mut q, m);
    zp_norm(&mut rem, m);
    (q, rem)
}

// --- Hensel lifting ---

/// Lift the factorization of monic `f` from mod p to mod p^(2^lifts) along a
/// binary factor tree. Modular factors must be monic and pairwise coprime.
fn hensel_tree(f: &[BigInt], parts: &[Vec<u64>], p: u64, lifts: u32) -> Vec<Vec<BigInt>> {
    let target = BigInt::from(p).pow(2u32.pow(lifts));
    let mut fz = f.to_vec();
    zp_norm(&mut fz, &target);
    hensel_node(&fz, parts, p, lifts, &target)
}

fn hensel_node(
    f: &[BigInt],
    parts: &[Vec<u64>],
    p: u64,
    lifts: u32,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    if parts.len() == 1 {
        return vec![f.to_vec()];
    }
    let mid = parts.len() / 2;
    let (left, right) = parts.split_at(mid);
    let gp = left.iter().fold(vec![1u64], |acc, x| gf_mul(&acc, x, p));
    let hp = right.iter().fold(vec![1u64], |acc, x| gf_mul(&acc, x, p));
    let (s0, t0) = gf_bezout(&gp, &hp, p);

    let mut m = BigInt::from(p);
    let mut g: Vec<BigInt> = gp.iter().map(|&x| BigInt::from(x)).collect();
    let mut h: Vec<BigInt> = hp.iter().map(|&x| BigInt::from(x)).collect();
    let mut s: Vec<BigInt> = s0.iter().map(|&x| BigInt::from(x)).collect();
    let mut t: Vec<BigInt> = t0.iter().map(|&x| BigInt::from(x)).collect();

    for _ in 0..lifts {
        let m2 = &m * &m;
        // e = f - g*h; g' = g + (t*e + q*g); h' = h + r where s*e = q*h + r.
        let mut fz = f.to_vec();
        zp_norm(&mut fz, &m2);
        let e = zp_sub(&fz, &zp_mul(&g, &h, &m2), &m2);
        let (q, r) = zp_divrem(&zp_mul(&s, &e, &m2), &h, &m2);
        let g_new = zp_add(&g, &zp_add(&zp_mul(&t, &e, &m2), &zp_mul(&q, &g, &m2), &m2), &m2);
        let h_new = zp_add(&h, &r, &m2);
        // Refresh the Bezout pair: b = s*g' + t*h' - 1.
        let one = vec![BigInt::one()];
        let b = zp_sub(
            &zp_add(&zp_mul(&s, &g_new, &m2), &zp_mul(&t, &h_new, &m2), &m2),
            &one,
            &m2,
        );
        let (cq, d) = zp_divrem(&zp_mul(&s, &b, &m2), &h_new, &m2);
        let s_new = zp_sub(&s, &d, &m2);
        let t_new = zp_sub(&t, &zp_add(&zp_mul(&t, &b, &m2), &zp_mul(&cq, &g_new, &m2), &m2), &m2);
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    debug_assert_eq!(&m, target);

    let mut out = hensel_node(&g, left, p, lifts, target);
    out.extend(hensel_node(&h, right, p, lifts, target));
    out
}

// --- GF(p) polynomial arithmetic (little-endian Vec<u64>, p < 2^31) ---

fn gf_deg(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

fn gf_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn gf_from_bigint(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    gf_trim(f.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn gf_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    gf_trim(out)
}

fn gf_inv(x: u64, p: u64) -> u64 {
    // Fermat; p prime.
    let mut base = x % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn gf_scale(a: &[u64], k: u64, p: u64) -> Vec<u64> {
    gf_trim(a.iter().map(|&x| x * k % p).collect())
}

fn gf_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = gf_deg(b);
    if gf_deg(a) < db || (a.len() == 1 && a[0] == 0) {
        return (vec![0], a.to_vec());
    }
    let inv = gf_inv(*b.last().unwrap(), p);
    let mut rem = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let coef = rem[i + db] * inv % p;
        if coef == 0 {
            continue;
        }
        q[i] = coef;
        for (j, &bj) in b.iter().enumerate() {
            let sub = coef * bj % p;
            rem[i + j] = (rem[i + j] + p - sub) % p;
        }
    }
    (gf_trim(q), gf_trim(rem))
}

fn gf_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !(b.len() == 1 && b[0] == 0) {
        let (_, r) = gf_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.len() == 1 && a[0] == 0 {
        return a;
    }
    let inv = gf_inv(*a.last().unwrap(), p);
    gf_scale(&a, inv, p)
}

fn gf_deriv(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return vec![0];
    }
    gf_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| (i as u64 % p) * x % p)
            .collect(),
    )
}

/// Extended Euclid normalized to s*a + t*b = 1 for coprime a, b.
fn gf_bezout(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![0u64]);
    let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
    while !(r1.len() == 1 && r1[0] == 0) {
        let (q, r) = gf_divrem(&r0, &r1, p);
        let s2 = gf_sub(&s0, &gf_mul(&q, &s1, p), p);
        let t2 = gf_sub(&t0, &gf_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(gf_deg(&r0), 0, "inputs must be coprime");
    let inv = gf_inv(r0[0], p);
    (gf_scale(&s0, inv, p), gf_scale(&t0, inv, p))
}

fn gf_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = (out[i] + p - y) % p;
    }
    gf_trim(out)
}

/// Berlekamp factorization of a monic squarefree polynomial mod p into monic
/// irreducible factors.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = gf_deg(f);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // x^p mod f, then the Frobenius matrix rows x^(i*p) mod f.
    let xp = {
        let mut acc = vec![1u64];
        let x = vec![0, 1];
        let mut e = p;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = gf_divrem(&gf_mul(&acc, &base, p), f, p).1;
            }
            base = gf_divrem(&gf_mul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        acc
    };
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut r = cur.clone();
        r.resize(n, 0);
        rows.push(r);
        cur = gf_divrem(&gf_mul(&cur, &xp, p), f, p).1;
    }
    // Kernel of (Q^T - I): columns are kernel polynomials.
    let mut m = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            m[j][i] = row[j];
        }
    }
    for i in 0..n {
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let kernel = gf_matrix_kernel(m, p);
    let r = kernel.len();
    if r == 1 {
        return vec![f.to_vec()];
    }
    let mut factors = vec![f.to_vec()];
    'split: loop {
        for v in &kernel {
            let vp = gf_trim(v.clone());
            if gf_deg(&vp) == 0 {
                continue; // constant kernel vector cannot split anything
            }
            for idx in 0..factors.len() {
                if factors.len() == r {
                    break 'split;
                }
                if gf_deg(&factors[idx]) <= 1 {
                    continue;
                }
                for s in 0..p {
                    let mut shifted = vp.clone();
                    shifted[0] = (shifted[0] + p - s) % p;
                    let g = gf_gcd(factors[idx].clone(), gf_trim(shifted), p);
                    let dg = gf_deg(&g);
                    if dg > 0 && dg < gf_deg(&factors[idx]) {
                        let (q, rr) = gf_divrem(&factors[idx], &g, p);
                        debug_assert!(rr.len() == 1 && rr[0] == 0);
                        let lead_inv = gf_inv(*q.last().unwrap(), p);
                        factors[idx] = g;
                        factors.push(gf_scale(&q, lead_inv, p));
                        if factors.len() == r {
                            break 'split;
                        }
                    }
                }
            }
        }
        if factors.len() < r {
            // All kernel vectors exhausted without full splitting; cannot
            // happen for a correct kernel, but avoid a spin just in case.
            break;
        }
    }
    factors
}

/// Kernel basis of a square matrix over GF(p) by Gauss-Jordan.
fn gf_matrix_kernel(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0usize;
    for col in 0..n {
        let Some(pr) = (r..n).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = gf_inv(m[r][col], p);
        for j in 0..n {
            m[r][j] = m[r][j] * inv % p;
        }
        for i in 0..n {
            if i != r && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..n {
                    let sub = f * m[r][j] % p;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivot_of_col[col] = Some(r);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for col in 0..n {
            if let Some(pr) = pivot_of_col[col] {
                v[col] = (p - m[pr][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{c, h, linear, MPoly, Var};
    use crate::rat::{rat, rint};

    fn poly(coeffs: &[i64], var: Var) -> MPoly {
        let cs: Vec<MPoly> = coeffs.iter().map(|&x| MPoly::int(x)).collect();
        MPoly::from_univar(var, &cs)
    }

    #[test]
    fn cubic_with_quadratic_remainder() {
        // 10c^3 - 474c^2 + 5180c - 11184 = 2 (c - 12)(5c^2 - 177c + 466)
        let f = poly(&[-11184, 5180, -474, 10], Var::C);
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.content, rint(2));
        assert_eq!(fac.factor_set(), vec![linear(Var::C, 1, -12), poly(&[466, -177, 5], Var::C)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn product_of_linears() {
        // c(2c-1)(3c+46)(5c+3)(5c+22)(7c+68)
        let f = c()
            * linear(Var::C, 2, -1)
            * linear(Var::C, 3, 46)
            * linear(Var::C, 5, 3)
            * linear(Var::C, 5, 22)
            * linear(Var::C, 7, 68);
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.content, rint(1));
        assert_eq!(fac.factors.len(), 6);
        assert!(fac.factors.iter().all(|(g, m)| g.total_degree() == 1 && *m == 1));
        assert_eq!(fac.expand(), f);
        let roots = rational_roots(&f).unwrap();
        let expect: Vec<Rat> =
            vec![rat(-46, 3), rat(-68, 7), rat(-22, 5), rat(-3, 5), rint(0), rat(1, 2)];
        assert_eq!(roots.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>(), expect);
    }

    #[test]
    fn multiplicities_via_squarefree() {
        let f = linear(Var::C, 1, -1).pow(2) * linear(Var::C, 1, 2).pow(3);
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(linear(Var::C, 1, 2), 3), (linear(Var::C, 1, -1), 2)]
        );
    }

    #[test]
    fn quartic_irreducible_despite_local_splitting() {
        // x^4 + 1 splits mod every prime but is irreducible over the
        // rationals; exercises recombination rejecting all proper subsets.
        let f = poly(&[1, 0, 0, 0, 1], Var::H);
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn quartic_splitting_into_quadratics() {
        let a = poly(&[1, 0, 1], Var::C); // c^2 + 1
        let b = poly(&[1, 1, 1], Var::C); // c^2 + c + 1
        let fac = factor_univariate(&(a.clone() * b.clone())).unwrap();
        assert_eq!(fac.factor_set(), vec![b, a]);
    }

    #[test]
    fn quintic_mixed() {
        // h^5 - h = h(h-1)(h+1)(h^2+1)
        let f = poly(&[0, -1, 0, 0, 0, 1], Var::H);
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert_eq!(fac.expand(), f);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(
            roots.into_iter().map(|(r, _)| r).collect::<Vec<_>>(),
            vec![rint(-1), rint(0), rint(1)]
        );
    }

    #[test]
    fn rational_root_denominators() {
        // (2h-1)(3h-1) = 6h^2 - 5h + 1
        let f = poly(&[1, -5, 6], Var::H);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(
            roots.into_iter().map(|(r, _)| r).collect::<Vec<_>>(),
            vec![rat(1, 3), rat(1, 2)]
        );
    }

    #[test]
    fn content_and_sign_are_preserved() {
        let f = poly(&[4, -2], Var::C).pow(2).scale(&rat(-3, 7)); // -3/7 (4-2c)^2
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors, vec![(linear(Var::C, 1, -2), 2)]);
        assert_eq!(fac.content, rat(-12, 7));
    }

    #[test]
    fn random_products_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let mut f = MPoly::constant(rat(rng.gen_range(1..=4), rng.gen_range(1..=3)));
            let nfac = rng.gen_range(1..=3);
            for _ in 0..nfac {
                if rng.gen_bool(0.5) {
                    f = f * linear(Var::H, rng.gen_range(1..=5), rng.gen_range(-9..=9));
                } else {
                    f = f * poly(&[rng.gen_range(-6..=6), rng.gen_range(-6..=6), rng.gen_range(1..=4)], Var::H);
                }
            }
            let fac = factor_univariate(&f).unwrap();
            assert_eq!(fac.expand(), f);
            for (g, _) in &fac.factors {
                if g.total_degree() >= 2 {
                    assert!(rational_roots(g).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn degree_six_all_rational_roots() {
        // 13*5*7*(h + 516/13)(h + 44/5)(h + 22/5)h(h - 24)(h - 142/5) style
        let f = linear(Var::H, 13, 516)
            * linear(Var::H, 5, 44)
            * linear(Var::H, 5, 22)
            * h()
            * linear(Var::H, 1, -24)
            * linear(Var::H, 5, -142);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(
            roots.into_iter().map(|(r, _)| r).collect::<Vec<_>>(),
            vec![rat(-516, 13), rat(-44, 5), rat(-22, 5), rint(0), rint(24), rat(142, 5)]
        );
    }
}
