//! Dense exact linear algebra over the rational function field.
//!
//! Determinants run fraction-free (Bareiss) on a denominator-cleared
//! polynomial matrix, which avoids the intermediate-expression swell of
//! naive field elimination. Solving and kernels use Gauss-Jordan over
//! `RatFunc`, whose arithmetic re-reduces after every operation.

use crate::error::{CoreError, Result};
use crate::mpoly::MPoly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RatFunc>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RatFunc>) -> Matrix {
        assert_eq!(rows * cols, data.len(), "matrix shape mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix::new(rows, cols, vec![RatFunc::zero(); rows * cols])
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Substitute rationals into every entry.
    pub fn eval(&self, vals: &[(crate::mpoly::Var, crate::rat::Rat)]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(x.eval(vals)?);
        }
        Ok(Matrix::new(self.rows, self.cols, data))
    }

    /// Fraction-free determinant: clear denominators rowwise, run Bareiss
    /// over polynomials, divide the clearing factors back out.
    pub fn det(&self) -> RatFunc {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return RatFunc::one();
        }
        let mut cleared: Vec<Vec<MPoly>> = Vec::with_capacity(n);
        let mut clear_factor = RatFunc::one();
        for i in 0..n {
            let mut den_lcm = MPoly::one();
            for j in 0..n {
                den_lcm = MPoly::lcm(&den_lcm, self.get(i, j).den());
            }
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let e = self.get(i, j);
                let scale = den_lcm.divexact(e.den()).expect("lcm divisible by denominator");
                row.push(e.num() * &scale);
            }
            cleared.push(row);
            clear_factor = clear_factor * RatFunc::from_poly(den_lcm);
        }
        let d = bareiss_det(cleared);
        RatFunc::from_poly(d) / clear_factor
    }

    /// Cofactor-expansion determinant; exponential, used as an oracle for
    /// small sizes in tests.
    pub fn det_cofactor(&self) -> RatFunc {
        assert_eq!(self.rows, self.cols);
        fn go(m: &Matrix, cols: &[usize], row: usize) -> RatFunc {
            if cols.is_empty() {
                return RatFunc::one();
            }
            let mut acc = RatFunc::zero();
            for (k, &j) in cols.iter().enumerate() {
                let a = m.get(row, j);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != j).collect();
                let sub = go(m, &rest, row + 1);
                let term = a * &sub;
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        go(self, &cols, 0)
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, col).clone().recip().expect("pivot nonzero");
            for j in col..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in col..m.cols {
                        let v = m.get(i, j).clone() - m.get(r, j) * &f;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in column
    /// order. Vectors are normalized with a `1` in their free coordinate.
    pub fn kernel(&self) -> Vec<Vec<RatFunc>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![RatFunc::zero(); self.cols];
            v[free] = RatFunc::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(pi, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Unique solution of `self * x = b` for a non-singular square matrix.
    /// Cramer's rule over the fraction-free determinant; for symbolic
    /// entries this avoids the rational-function gcd churn of row reduction.
    pub fn solve(&self, b: &[RatFunc]) -> Result<Vec<RatFunc>> {
        if self.rows != self.cols {
            return Err(CoreError::Dimension(format!(
                "solve requires a square system, got {}x{}",
                self.rows, self.cols
            )));
        }
        if b.len() != self.rows {
            return Err(CoreError::Dimension("right-hand side length mismatch".into()));
        }
        let d = self.det();
        if d.is_zero() {
            return Err(CoreError::singular("matrix is singular; solution not unique"));
        }
        let dinv = d.recip().expect("nonzero determinant");
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mj = Matrix::from_fn(self.rows, self.cols, |r, k| {
                if k == j {
                    b[r].clone()
                } else {
                    self.get(r, k).clone()
                }
            });
            out.push(&mj.det() * &dinv);
        }
        Ok(out)
    }

    /// General exact solve: particular solution plus kernel basis.
    /// Errors when the system is inconsistent.
    pub fn solve_general(&self, b: &[RatFunc]) -> Result<(Vec<RatFunc>, Vec<Vec<RatFunc>>)> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(CoreError::singular("inconsistent linear system"));
        }
        let mut x = vec![RatFunc::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(pi, self.cols).clone();
        }
        let kernel = self.kernel();
        Ok((x, kernel))
    }
}

/// Right-kernel basis of a polynomial matrix in reduced echelon form: rows
/// ordered by leading column, leading entries 1, zeros above and below each
/// leading column. Everything before the final division runs fraction-free
/// over polynomials; field arithmetic on Bareiss-minor-sized entries is what
/// makes the naive approach crawl.
pub fn kernel_poly(mut rows: Vec<Vec<MPoly>>, ncols: usize) -> Vec<Vec<RatFunc>> {
    let nrows = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    // Bareiss: after each elimination step every new entry is exactly
    // divisible by the previous pivot, keeping entries at minor size.
    let mut prev = MPoly::one();
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].num_terms())
        else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in r + 1..nrows {
            if rows[i][col].is_zero() {
                // Still rescale untouched rows so the shared divisor stays
                // uniform across the block.
                for j in col..ncols {
                    if !rows[i][j].is_zero() {
                        let t = &pivot * &rows[i][j];
                        rows[i][j] = t.divexact(&prev).expect("bareiss division is exact");
                    }
                }
                continue;
            }
            let a = rows[i][col].clone();
            for j in col..ncols {
                let t = &pivot * &rows[i][j] - (&a * &rows[r][j]);
                rows[i][j] = if t.is_zero() {
                    t
                } else {
                    t.divexact(&prev).expect("bareiss division is exact")
                };
            }
        }
        prev = pivot;
        pivots.push((r, col));
        r += 1;
    }

    let pivot_cols: std::collections::BTreeSet<usize> =
        pivots.iter().map(|&(_, c)| c).collect();

    // Back-substitute projectively: each kernel vector is only defined up to
    // scale, so instead of dividing by the pivot we multiply the rest of the
    // vector by it and strip the common content afterwards.
    let mut basis: Vec<Vec<MPoly>> = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![MPoly::zero(); ncols];
        x[free] = MPoly::one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = MPoly::zero();
            for j in pc + 1..ncols {
                if rows[pr][j].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc = acc + &rows[pr][j] * &x[j];
            }
            if acc.is_zero() {
                continue;
            }
            for v in x.iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &rows[pr][pc];
                }
            }
            x[pc] = -acc;
            strip_row_content(&mut x);
        }
        basis.push(x);
    }

    // Gauss-Jordan over polynomials (cross-multiplication, re-stripped per
    // row) to reach echelon shape, then one division per row for the final
    // monic normalization.
    let mut lead_cols = Vec::with_capacity(basis.len());
    let mut r = 0usize;
    for col in 0..ncols {
        if r == basis.len() {
            break;
        }
        let Some(p) = (r..basis.len()).find(|&i| !basis[i][col].is_zero()) else {
            continue;
        };
        basis.swap(r, p);
        for i in 0..basis.len() {
            if i == r || basis[i][col].is_zero() {
                continue;
            }
            let a = basis[i][col].clone();
            let piv = basis[r][col].clone();
            for j in 0..ncols {
                basis[i][j] = &basis[i][j] * &piv - &basis[r][j] * &a;
            }
            strip_row_content(&mut basis[i]);
        }
        lead_cols.push(col);
        r += 1;
    }
    basis
        .into_iter()
        .zip(lead_cols)
        .map(|(row, lead)| {
            let l = row[lead].clone();
            row.into_iter().map(|p| RatFunc::new(p, l.clone())).collect()
        })
        .collect()
}

/// Divide a row by the gcd of its entries and by its rational content.
fn strip_row_content(row: &mut [MPoly]) {
    let mut g = MPoly::zero();
    for x in row.iter() {
        if x.is_zero() {
            continue;
        }
        g = if g.is_zero() { x.clone() } else { MPoly::gcd(&g, x) };
        if g.is_constant() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if !g.is_constant() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.divexact(&g).expect("row gcd divides");
            }
        }
    }
    // Rational content: gcd of numerator contents over lcm of denominators.
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for x in row.iter() {
        if x.is_zero() {
            continue;
        }
        let (content, _) = x.primitive_normalize();
        num_gcd = num_gcd.gcd(&content.numer().abs());
        den_lcm = den_lcm.lcm(content.denom());
    }
    if num_gcd.is_zero() || (num_gcd.is_one() && den_lcm.is_one()) {
        return;
    }
    let inv = crate::rat::Rat::new(den_lcm, num_gcd);
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.scale(&inv);
        }
    }
}

/// Fraction-free determinant of a polynomial matrix.
pub fn det_poly(m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return MPoly::one();
    }
    bareiss_det(m)
}

/// Bareiss fraction-free elimination on a polynomial matrix. All divisions
/// are exact. Rows may be swapped (tracked by sign).
fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = MPoly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MPoly::zero();
            };
            m.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[k][k] * &m[i][j] - (&m[i][k] * &m[k][j]);
                m[i][j] = t.divexact(&prev).expect("bareiss division is exact");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{c, e, h, linear, MPoly, Var};
    use crate::rat::{rat, rint};
    use rand::{Rng, SeedableRng};

    fn rf(p: MPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }

    #[test]
    fn det_matches_cofactor_small() {
        let m = Matrix::from_rows(vec![
            vec![rf(c()), rf(e()), RatFunc::int(1)],
            vec![RatFunc::int(2), rf(c() + &e()), rf(h())],
            vec![rf(h().pow(2)), RatFunc::zero(), rf(c())],
        ]);
        assert_eq!(m.det(), m.det_cofactor());
    }

    #[test]
    fn det_with_rational_function_entries() {
        // det [[1/e, 1], [1, c]] = (c - e)/e after clearing denominators.
        let m = Matrix::from_rows(vec![
            vec![RatFunc::new(MPoly::one(), e()), RatFunc::int(1)],
            vec![RatFunc::int(1), rf(c())],
        ]);
        assert_eq!(m.det(), RatFunc::new(c() - e(), e()));

        // A matrix whose rational entries cancel exactly.
        let m0 = Matrix::from_rows(vec![
            vec![RatFunc::new(MPoly::one(), e()), RatFunc::int(1)],
            vec![RatFunc::int(1), rf(e())],
        ]);
        assert!(m0.det().is_zero());
    }

    #[test]
    fn random_rational_dets_match_cofactor() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let n = rng.gen_range(1..=4);
            let m = Matrix::from_fn(n, n, |_, _| {
                RatFunc::constant(rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            });
            assert_eq!(m.det(), m.det_cofactor());
        }
    }

    #[test]
    fn det_commutes_with_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let m = Matrix::from_rows(vec![
            vec![rf(c()), rf(e().pow(2)), rf(h() + &c())],
            vec![RatFunc::new(MPoly::one(), linear(Var::E, 5, 22)), rf(c() - e()), RatFunc::int(3)],
            vec![rf(h()), rf(c() + &MPoly::int(1)), rf(e())],
        ]);
        let d = m.det();
        for _ in 0..100 {
            let cv = rat(rng.gen_range(-30..=30), rng.gen_range(1..=7));
            let ev = rat(rng.gen_range(1..=30), rng.gen_range(1..=7));
            let hv = rat(rng.gen_range(-30..=30), rng.gen_range(1..=7));
            let vals = [(Var::C, cv), (Var::E, ev), (Var::H, hv)];
            let md = m.eval(&vals).unwrap().det();
            assert_eq!(md, d.eval(&vals).unwrap());
        }
    }

    #[test]
    fn kernel_and_solve() {
        // x + y + z = 0, x - y = 0 has kernel dimension 1.
        let m = Matrix::from_rows(vec![
            vec![RatFunc::int(1), RatFunc::int(1), RatFunc::int(1)],
            vec![RatFunc::int(1), RatFunc::int(-1), RatFunc::zero()],
        ]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for row in 0..2 {
            let mut acc = RatFunc::zero();
            for j in 0..3 {
                acc = acc + m.get(row, j) * &k[0][j];
            }
            assert!(acc.is_zero());
        }

        let a = Matrix::from_rows(vec![
            vec![rf(c()), RatFunc::int(1)],
            vec![RatFunc::int(1), RatFunc::int(1)],
        ]);
        let b = vec![RatFunc::int(1), RatFunc::int(0)];
        let x = a.solve(&b).unwrap();
        // x = 1/(c-1), y = -1/(c-1)
        assert_eq!(x[0], RatFunc::new(MPoly::one(), c() - MPoly::one()));
        assert_eq!(x[1], -x[0].clone());
    }

    #[test]
    fn singular_square_solve_errors() {
        let a = Matrix::from_rows(vec![
            vec![RatFunc::int(1), RatFunc::int(2)],
            vec![RatFunc::int(2), RatFunc::int(4)],
        ]);
        assert!(a.solve(&[RatFunc::int(1), RatFunc::int(2)]).is_err());
        assert!(matches!(
            a.solve_general(&[RatFunc::int(1), RatFunc::int(3)]),
            Err(crate::error::CoreError::Singular(_))
        ));
    }

    #[test]
    fn zero_determinant_via_dependent_rows() {
        let m = Matrix::from_rows(vec![
            vec![rf(c()), rf(e())],
            vec![rf(c().scale(&rint(3))), rf(e().scale(&rint(3)))],
        ]);
        assert!(m.det().is_zero());
    }
}
