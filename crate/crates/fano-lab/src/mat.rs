//! Dense exact integer matrices: Hermite and Smith normal forms, integer
//! kernels and fraction-free determinants. Everything here is arbitrary
//! precision; the hot counting loops elsewhere use machine integers.

use crate::ivec::{is_zero_vec, Int};
use num::{Integer, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Int>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds the rows x cols matrix whose columns are the given vectors.
    pub fn from_cols(dim: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Mat::zero(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim);
            for i in 0..dim {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.a.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row i -= q * row j
    fn row_sub(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let t = q * &self[(j, k)];
            self[(i, k)] -= t;
        }
    }

    /// col i -= q * col j
    fn col_sub(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.rows {
            let t = q * &self[(k, j)];
            self[(k, i)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let t = -std::mem::take(&mut self[(i, k)]);
            self[(i, k)] = t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.a[i * self.cols + j]
    }
}

fn rounded_div(a: &Int, b: &Int) -> Int {
    // nearest integer to a/b, ties toward -inf; any consistent choice works
    let two_a_plus_b: Int = a * 2 + b;
    two_a_plus_b.div_floor(&(b * 2))
}

/// Canonical basis of the lattice generated by `gens` (vectors in Z^dim).
///
/// The result is the column-style Hermite normal form: pivot rows strictly
/// increase, pivots are positive, entries above a pivot vanish, and entries of
/// earlier basis vectors in a pivot row are reduced into [0, pivot).
pub fn hnf_basis(dim: usize, gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut work: Vec<Vec<Int>> = gens
        .iter()
        .filter(|g| !is_zero_vec(g))
        .cloned()
        .collect();
    for g in &work {
        assert_eq!(g.len(), dim);
    }
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for row in 0..dim {
        let (mut hit, rest): (Vec<_>, Vec<_>) = work.drain(..).partition(|g| !g[row].is_zero());
        work = rest;
        if hit.is_empty() {
            continue;
        }
        // gcd-reduce the hit vectors until a single one carries the pivot
        while hit.len() > 1 {
            hit.sort_by(|a, b| a[row].abs().cmp(&b[row].abs()));
            let (short, tail) = hit.split_at_mut(1);
            let s = &short[0];
            for g in tail.iter_mut() {
                let q = rounded_div(&g[row], &s[row]);
                for k in 0..dim {
                    let t = &q * &s[k];
                    g[k] -= t;
                }
            }
            let mut next = vec![hit.remove(0)];
            for g in hit.drain(..) {
                if g[row].is_zero() {
                    if !is_zero_vec(&g) {
                        work.push(g);
                    }
                } else {
                    next.push(g);
                }
            }
            hit = next;
        }
        let mut pivot = hit.pop().unwrap();
        if pivot[row].is_negative() {
            for x in pivot.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        basis.push(pivot);
    }
    // reduce entries of earlier vectors in each pivot row
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    for j in 0..basis.len() {
        let pj = pivots[j];
        for i in 0..j {
            let q = basis[i][pj].div_floor(&basis[j][pj]);
            if !q.is_zero() {
                for k in 0..dim {
                    let t = &q * &basis[j][k];
                    basis[i][k] -= t;
                }
            }
        }
    }
    basis
}

pub struct Snf {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

/// Smith normal form: returns (U, D, V) with U*M*V = D, U and V unimodular,
/// D diagonal with nonnegative entries and d1 | d2 | ... .
pub fn snf(m: &Mat) -> Snf {
    let mut d = m.clone();
    let mut u = Mat::identity(m.rows);
    let mut v = Mat::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        // re-selecting the smallest pivot on every pass keeps the entries
        // from blowing up during the gcd dance
        let find_pivot = |d: &Mat| {
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && best
                            .map(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        if find_pivot(&d).is_none() {
            break;
        }
        loop {
            let (pi, pj) = find_pivot(&d).unwrap();
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m.rows {
                if !d[(i, t)].is_zero() {
                    let q = rounded_div(&d[(i, t)], &d[(t, t)]);
                    d.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..m.cols {
                if !d[(t, j)].is_zero() {
                    let q = rounded_div(&d[(t, j)], &d[(t, t)]);
                    d.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let mut fixed = true;
            'scan: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = Int::one();
                        d.row_sub(t, i, &(-&one));
                        u.row_sub(t, i, &(-&one));
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Primitive basis of the integer kernel {x in Z^cols : M x = 0}.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Int>> {
    let s = snf(m);
    let n = m.rows.min(m.cols);
    let mut rank = 0;
    for i in 0..n {
        if !s.d[(i, i)].is_zero() {
            rank += 1;
        }
    }
    (rank..m.cols).map(|j| s.v.col(j)).collect()
}

pub fn gram(vs: &[Vec<Int>]) -> Mat {
    let r = vs.len();
    let mut g = Mat::zero(r, r);
    for i in 0..r {
        for j in i..r {
            let d = crate::ivec::dot(&vs[i], &vs[j]);
            g[(i, j)] = d.clone();
            g[(j, i)] = d;
        }
    }
    g
}

/// Exact determinant of a square matrix by fraction-free Gaussian elimination.
pub fn det_bareiss(m: &Mat) -> Int {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let mut found = false;
            for i in k + 1..n {
                if !a[(i, k)].is_zero() {
                    a.swap_rows(k, i);
                    sign = -sign;
                    found = true;
                    break;
                }
            }
            if !found {
                return Int::zero();
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = t.div_floor(&prev);
            }
            a[(i, k)] = Int::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Rank of a list of integer vectors.
pub fn rank_of(vs: &[Vec<Int>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let dim = vs[0].len();
    let mut rows: Vec<Vec<Int>> = vs.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                // fraction-free elimination; scale then subtract
                let (pa, pb) = (rows[rank][col].clone(), rows[i][col].clone());
                for k in 0..dim {
                    let t = &rows[i][k] * &pa - &rows[rank][k] * &pb;
                    rows[i][k] = t;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec::to_int_vec;

    fn m2(rows: [[i64; 2]; 2]) -> Mat {
        let mut m = Mat::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = Int::from(rows[i][j]);
            }
        }
        m
    }

    #[test]
    fn hnf_matches_hand_reduction() {
        // columns {(2,0),(1,3)} -> canonical basis {(1,3),(0,6)}
        let basis = hnf_basis(2, &[to_int_vec(&[2, 0]), to_int_vec(&[1, 3])]);
        assert_eq!(basis, vec![to_int_vec(&[1, 3]), to_int_vec(&[0, 6])]);
        // identity case
        let basis = hnf_basis(2, &[to_int_vec(&[1, 0]), to_int_vec(&[0, 1])]);
        assert_eq!(basis, vec![to_int_vec(&[1, 0]), to_int_vec(&[0, 1])]);
        // proportional columns collapse to the gcd generator
        let basis = hnf_basis(2, &[to_int_vec(&[2, 4]), to_int_vec(&[1, 2])]);
        assert_eq!(basis, vec![to_int_vec(&[1, 2])]);
    }

    #[test]
    fn hnf_idempotent() {
        let gens = vec![to_int_vec(&[6, 2, 0]), to_int_vec(&[2, 4, 2]), to_int_vec(&[-3, 5, 9])];
        let b1 = hnf_basis(3, &gens);
        let b2 = hnf_basis(3, &b1);
        assert_eq!(b1, b2);
    }

    #[test]
    fn snf_small_cases() {
        // [[2,4],[6,8]] -> diag(2,4)
        let mut m = m2([[2, 4], [6, 8]]);
        let s = snf(&m);
        assert_eq!(s.d[(0, 0)], Int::from(2));
        assert_eq!(s.d[(1, 1)], Int::from(4));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(det_bareiss(&s.u).abs(), Int::one());
        assert_eq!(det_bareiss(&s.v).abs(), Int::one());
        // identity stays diagonal
        m = m2([[1, 0], [0, 1]]);
        let s = snf(&m);
        assert_eq!(s.d, Mat::identity(2));
        // 1x1
        let mut m1 = Mat::zero(1, 1);
        m1[(0, 0)] = Int::from(3);
        let s = snf(&m1);
        assert_eq!(s.d[(0, 0)], Int::from(3));
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Mat::from_cols(1, &[to_int_vec(&[1]), to_int_vec(&[1])]);
        // matrix (1 1): kernel is Z(1,-1)
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] + &v[1], Int::zero());
        assert_eq!(crate::ivec::content(v), Int::one());
    }

    #[test]
    fn bareiss_determinant() {
        let m = m2([[3, 1], [4, 2]]);
        assert_eq!(det_bareiss(&m), Int::from(2));
        let z = m2([[1, 2], [2, 4]]);
        assert_eq!(det_bareiss(&z), Int::zero());
    }
}
