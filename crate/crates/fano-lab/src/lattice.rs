//! Exact lattices in Z^N (and rational lattices, for duals and quotients).
//!
//! A lattice is stored as `cols / denom` where `cols` is the canonical
//! column Hermite normal form of an integer basis and `denom` is a positive
//! integer scale. Two equal lattices always have identical representations,
//! so set-level identities can be asserted with `==`.

use crate::error::{Error, Result};
use crate::ivec::{content, dot, is_zero_vec, norm_sq, Int, Rat};
use crate::mat::{det_bareiss, gram, hnf_basis, kernel_basis, Mat};
use num::{Integer, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    denom: Int,
    cols: Vec<Vec<Int>>,
}

impl Lattice {
    /// Lattice generated by integer vectors. Errors on rank zero.
    pub fn from_int_generators(dim: usize, gens: &[Vec<Int>]) -> Result<Self> {
        Self::from_scaled_generators(dim, gens, Int::one())
    }

    /// Lattice generated by `gens / denom`.
    pub fn from_scaled_generators(dim: usize, gens: &[Vec<Int>], denom: Int) -> Result<Self> {
        assert!(denom.is_positive());
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(g.len(), dim));
            }
        }
        let cols = hnf_basis(dim, gens);
        if cols.is_empty() {
            return Err(Error::EmptyLattice);
        }
        Ok(Self::normalized(dim, cols, denom))
    }

    pub fn from_rat_generators(dim: usize, gens: &[Vec<Rat>]) -> Result<Self> {
        let mut denom = Int::one();
        for g in gens {
            for x in g {
                denom = denom.lcm(x.denom());
            }
        }
        let scaled: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * &denom).to_integer()).collect())
            .collect();
        Self::from_scaled_generators(dim, &scaled, denom)
    }

    fn normalized(dim: usize, cols: Vec<Vec<Int>>, denom: Int) -> Self {
        let mut g = denom.clone();
        for c in &cols {
            for x in c {
                g = g.gcd(x);
                if g.is_one() {
                    break;
                }
            }
        }
        if g.is_one() {
            return Lattice { dim, denom, cols };
        }
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().map(|x| x / &g).collect())
            .collect();
        Lattice {
            dim,
            denom: denom / &g,
            cols,
        }
    }

    pub fn standard(dim: usize) -> Self {
        assert!(dim >= 1);
        let gens: Vec<Vec<Int>> = (0..dim)
            .map(|i| {
                let mut e = vec![Int::zero(); dim];
                e[i] = Int::one();
                e
            })
            .collect();
        Lattice {
            dim,
            denom: Int::one(),
            cols: gens,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn denom(&self) -> &Int {
        &self.denom
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    /// Basis columns of the scaled (integer) lattice `denom * self`.
    pub fn scaled_cols(&self) -> &[Vec<Int>] {
        &self.cols
    }

    pub fn basis_rat(&self) -> Vec<Vec<Rat>> {
        self.cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| Rat::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    /// Exact squared determinant det(B^T B).
    pub fn det_sq(&self) -> Rat {
        let g = gram(&self.cols);
        let d = det_bareiss(&g);
        let scale = self.denom.pow(2 * self.rank() as u32);
        Rat::new(d, scale)
    }

    /// Membership test for a rational vector.
    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        // value must be an integer vector once multiplied by denom
        let mut t: Vec<Int> = Vec::with_capacity(self.dim);
        for x in v {
            let s = x * &self.denom;
            if !s.is_integer() {
                return false;
            }
            t.push(s.to_integer());
        }
        self.scaled_contains_int(&t)
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        if !self.is_integral() {
            let r: Vec<Rat> = v.iter().map(|x| Rat::from(x.clone())).collect();
            return self.contains_rat(&r);
        }
        self.scaled_contains_int(v)
    }

    /// Solves H c = t over the integers using the pivot structure of the HNF.
    fn scaled_contains_int(&self, t: &[Int]) -> bool {
        let mut t = t.to_vec();
        for col in &self.cols {
            let p = col.iter().position(|x| !x.is_zero()).unwrap();
            if !t[..p].iter().all(|x| x.is_zero()) {
                return false;
            }
            let (q, r) = t[p].div_rem(&col[p]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for k in p..self.dim {
                    let s = &q * &col[k];
                    t[k] -= s;
                }
            }
        }
        is_zero_vec(&t)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other
            .basis_rat()
            .iter()
            .all(|v| self.contains_rat(v))
    }

    /// Span_R(self) ∩ Z^N, the saturation. Integral lattices only.
    pub fn saturate(&self) -> Result<Lattice> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        if self.rank() == self.dim {
            return Ok(Lattice::standard(self.dim));
        }
        self.orthogonal_complement()?.orthogonal_complement()
    }

    /// The primitive lattice {a in Z^N : <a, z> = 0 for all z in self}.
    pub fn orthogonal_complement(&self) -> Result<Lattice> {
        if self.rank() == self.dim {
            return Err(Error::FullRank);
        }
        // rows = basis vectors of the scaled lattice; kernel is unaffected by scale
        let m = Mat::from_cols(self.dim, &self.cols).transposed();
        let k = kernel_basis(&m);
        Lattice::from_int_generators(self.dim, &k)
    }

    /// Dual lattice {a in Span(self) : <a, z> in Z for all z in self}.
    pub fn dual(&self) -> Result<Lattice> {
        // basis D = B (B^T B)^{-1}; with B = cols/denom this is
        // denom * cols * adj(G) / det(G) for G the integer Gram matrix.
        let g = gram(&self.cols);
        let det = det_bareiss(&g);
        debug_assert!(!det.is_zero());
        let adj = adjugate(&g);
        let r = self.rank();
        let mut gens: Vec<Vec<Int>> = Vec::with_capacity(r);
        for j in 0..r {
            let mut v = vec![Int::zero(); self.dim];
            for (k, col) in self.cols.iter().enumerate() {
                let w = &adj[(k, j)];
                if w.is_zero() {
                    continue;
                }
                for i in 0..self.dim {
                    let t = w * &col[i];
                    v[i] += t;
                }
            }
            for x in v.iter_mut() {
                *x *= &self.denom;
            }
            gens.push(v);
        }
        let (den, gens) = if det.is_negative() {
            (-det, gens.into_iter().map(|v| v.into_iter().map(|x| -x).collect()).collect())
        } else {
            (det, gens)
        };
        Lattice::from_scaled_generators(self.dim, &gens, den)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        // scale both to a common integral model
        let l = self.denom.lcm(&other.denom);
        let sa = &l / &self.denom;
        let sb = &l / &other.denom;
        let a: Vec<Vec<Int>> = self
            .cols
            .iter()
            .map(|c| c.iter().map(|x| x * &sa).collect())
            .collect();
        let b: Vec<Vec<Int>> = other
            .cols
            .iter()
            .map(|c| c.iter().map(|x| x * &sb).collect())
            .collect();
        // stack [A | -B]; kernel coefficients give the intersection
        let mut stacked: Vec<Vec<Int>> = a.clone();
        stacked.extend(b.iter().map(|c| c.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
        let m = Mat::from_cols(self.dim, &stacked);
        let ker = kernel_basis(&m);
        let mut gens = Vec::new();
        for u in ker {
            let mut v = vec![Int::zero(); self.dim];
            for (j, col) in a.iter().enumerate() {
                if u[j].is_zero() {
                    continue;
                }
                for i in 0..self.dim {
                    let t = &u[j] * &col[i];
                    v[i] += t;
                }
            }
            if !is_zero_vec(&v) {
                gens.push(v);
            }
        }
        if gens.is_empty() {
            return Err(Error::TrivialIntersection);
        }
        Lattice::from_scaled_generators(self.dim, &gens, l)
    }

    /// Orthogonal projection of `self` onto Span(sub)^perp, the quotient
    /// lattice. `sub` must be a saturated sublattice of `self`.
    pub fn quotient(&self, sub: &Lattice) -> Result<Lattice> {
        if self.dim != sub.dim {
            return Err(Error::DimensionMismatch(self.dim, sub.dim));
        }
        if sub.rank() >= self.rank() {
            return Err(Error::NotSaturated);
        }
        if !self.contains_lattice(sub) {
            return Err(Error::NotSaturated);
        }
        let span: Vec<Vec<Int>> = sub.scaled_cols().to_vec();
        let inside = self.sublattice_in_span(&span)?;
        if &inside != sub {
            return Err(Error::NotSaturated);
        }
        // project each basis vector of self
        let g = gram(&span);
        let det = det_bareiss(&g);
        let adj = adjugate(&g);
        let r = span.len();
        let mut gens: Vec<Vec<Rat>> = Vec::new();
        let denom = Rat::from(self.denom.clone());
        for b in &self.cols {
            // coeff = adj(G) * (span^T b); projection = span * coeff / det
            let mut coeff = vec![Int::zero(); r];
            let dots: Vec<Int> = span.iter().map(|s| dot(s, b)).collect();
            for i in 0..r {
                for (j, d) in dots.iter().enumerate() {
                    let t = &adj[(i, j)] * d;
                    coeff[i] += t;
                }
            }
            let mut v: Vec<Rat> = b.iter().map(|x| Rat::from(x.clone())).collect();
            for (i, s) in span.iter().enumerate() {
                if coeff[i].is_zero() {
                    continue;
                }
                let c = Rat::new(coeff[i].clone(), det.clone());
                for k in 0..self.dim {
                    let t = &c * Rat::from(s[k].clone());
                    v[k] -= t;
                }
            }
            for x in v.iter_mut() {
                let t = std::mem::replace(x, Rat::zero()) / &denom;
                *x = t;
            }
            if v.iter().any(|x| !x.is_zero()) {
                gens.push(v);
            }
        }
        if gens.is_empty() {
            return Err(Error::NotSaturated);
        }
        Lattice::from_rat_generators(self.dim, &gens)
    }

    /// The sublattice of `self` lying in the real span of the given vectors.
    pub fn sublattice_in_span(&self, span: &[Vec<Int>]) -> Result<Lattice> {
        // y = B u lies in Span(span)  <=>  P y = y for the span projector,
        // equivalently (det*I - S adj(G) S^T) B u = 0 over the integers.
        let g = gram(span);
        let det = det_bareiss(&g);
        if det.is_zero() {
            return Err(Error::DependentVectors);
        }
        let adj = adjugate(&g);
        let r = span.len();
        let rk = self.rank();
        let mut m = Mat::zero(self.dim, rk);
        for (j, b) in self.cols.iter().enumerate() {
            let dots: Vec<Int> = span.iter().map(|s| dot(s, b)).collect();
            let mut proj = vec![Int::zero(); self.dim];
            for i in 0..r {
                let mut c = Int::zero();
                for (k, d) in dots.iter().enumerate() {
                    c += &adj[(i, k)] * d;
                }
                if c.is_zero() {
                    continue;
                }
                for t in 0..self.dim {
                    proj[t] += &c * &span[i][t];
                }
            }
            for i in 0..self.dim {
                m[(i, j)] = &b[i] * &det - &proj[i];
            }
        }
        let ker = kernel_basis(&m);
        let mut gens = Vec::new();
        for u in ker {
            let mut v = vec![Int::zero(); self.dim];
            for (j, col) in self.cols.iter().enumerate() {
                if u[j].is_zero() {
                    continue;
                }
                for i in 0..self.dim {
                    let t = &u[j] * &col[i];
                    v[i] += t;
                }
            }
            if !is_zero_vec(&v) {
                gens.push(v);
            }
        }
        if gens.is_empty() {
            return Err(Error::TrivialIntersection);
        }
        Lattice::from_scaled_generators(self.dim, &gens, self.denom.clone())
    }

    /// Index of `sub` in `self` for equal spans: det(sub)/det(self), exact.
    pub fn index_of(&self, sub: &Lattice) -> Result<Int> {
        let ratio = sub.det_sq() / self.det_sq();
        let num = ratio.numer() * ratio.denom();
        let den = ratio.denom() * ratio.denom();
        let sq = Rat::new(num, den);
        debug_assert!(sq.is_integer());
        Ok(sq.to_integer().sqrt())
    }
}

impl Mat {
    pub fn transposed(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }
}

/// Adjugate of a symmetric positive matrix by cofactor expansion via Bareiss
/// determinants of minors. Sizes here are small (rank of a lattice).
pub fn adjugate(m: &Mat) -> Mat {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut adj = Mat::zero(n, n);
    if n == 1 {
        adj[(0, 0)] = Int::one();
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let mut sub = Mat::zero(n - 1, n - 1);
            let mut r = 0;
            for ii in 0..n {
                if ii == i {
                    continue;
                }
                let mut c = 0;
                for jj in 0..n {
                    if jj == j {
                        continue;
                    }
                    sub[(r, c)] = m[(ii, jj)].clone();
                    c += 1;
                }
                r += 1;
            }
            let mut d = det_bareiss(&sub);
            if (i + j) % 2 == 1 {
                d = -d;
            }
            adj[(j, i)] = d;
        }
    }
    adj
}

/// gcd(entries)^2-free statement: det_sq of the lattice spanned by one vector.
pub fn line(dim: usize, v: &[Int]) -> Result<Lattice> {
    Lattice::from_int_generators(dim, &[v.to_vec()])
}

/// Primitivity of an integral lattice: equal to its own saturation.
pub fn is_primitive_lattice(l: &Lattice) -> Result<bool> {
    if !l.is_integral() {
        return Err(Error::NotIntegral);
    }
    if l.rank() == l.dim() {
        return Ok(l == &Lattice::standard(l.dim()));
    }
    Ok(l == &l.saturate()?)
}

pub fn primitive_part(v: &[Int]) -> Vec<Int> {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

pub fn norm_sq_int(v: &[Int]) -> Int {
    norm_sq(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec::{rat, to_int_vec};

    fn lat(dim: usize, gens: &[&[i64]]) -> Lattice {
        let g: Vec<Vec<Int>> = gens.iter().map(|v| to_int_vec(v)).collect();
        Lattice::from_int_generators(dim, &g).unwrap()
    }

    #[test]
    fn det_sq_examples() {
        assert_eq!(lat(2, &[&[3, 4]]).det_sq(), rat(25, 1));
        assert_eq!(Lattice::standard(2).det_sq(), rat(1, 1));
        assert_eq!(lat(2, &[&[2, 0], &[0, 3]]).det_sq(), rat(36, 1));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(lat(2, &[&[2, 0]]).saturate().unwrap(), lat(2, &[&[1, 0]]));
        let p = lat(2, &[&[3, 4]]);
        assert_eq!(p.saturate().unwrap(), p);
        let l = lat(3, &[&[2, 2, 0], &[0, 2, 2]]);
        let s = l.saturate().unwrap();
        assert_eq!(s.det_sq(), rat(3, 1));
        // det ratio 48/3 = 16, so the saturation index is 4
        assert_eq!(s.index_of(&l).unwrap(), Int::from(4));
    }

    #[test]
    fn orthogonal_examples() {
        let l = lat(3, &[&[1, 1, 1]]);
        let o = l.orthogonal_complement().unwrap();
        assert_eq!(o.det_sq(), rat(3, 1));
        assert_eq!(o.orthogonal_complement().unwrap(), l);

        assert_eq!(
            lat(2, &[&[1, 0]]).orthogonal_complement().unwrap(),
            lat(2, &[&[0, 1]])
        );
        let l = lat(2, &[&[3, 4]]);
        let o = l.orthogonal_complement().unwrap();
        assert_eq!(o.det_sq(), rat(25, 1));
        assert!(Lattice::standard(2).orthogonal_complement().is_err());
    }

    #[test]
    fn dual_examples() {
        let l = lat(2, &[&[2, 0], &[0, 2]]);
        let d = l.dual().unwrap();
        assert_eq!(d.det_sq(), rat(1, 16));
        assert_eq!(d.dual().unwrap(), l);

        let l = lat(2, &[&[3, 4]]);
        let d = l.dual().unwrap();
        assert!(d.contains_rat(&[rat(3, 25), rat(4, 25)]));
        assert_eq!(d.det_sq() * l.det_sq(), rat(1, 1));

        let z = Lattice::standard(4);
        assert_eq!(z.dual().unwrap(), z);
    }

    #[test]
    fn intersect_examples() {
        let z2 = Lattice::standard(2);
        let two_z2 = lat(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(z2.intersect(&two_z2).unwrap(), two_z2);

        let a = lat(2, &[&[1, 1]]);
        let b = lat(2, &[&[1, -1]]);
        assert!(matches!(a.intersect(&b), Err(Error::TrivialIntersection)));

        // {y0+y1 even} ∩ {y0 even}
        let c = lat(2, &[&[1, 1], &[0, 2]]);
        let d = lat(2, &[&[2, 0], &[0, 1]]);
        let i = c.intersect(&d).unwrap();
        assert_eq!(i.det_sq(), rat(16, 1));
    }

    #[test]
    fn quotient_examples() {
        let l = Lattice::standard(2);
        let g = lat(2, &[&[1, 0]]);
        let q = l.quotient(&g).unwrap();
        assert_eq!(q.det_sq(), rat(1, 1));
        assert_eq!(q, lat(2, &[&[0, 1]]));

        let l = lat(2, &[&[1, 3], &[0, 6]]);
        let g = lat(2, &[&[1, 3]]);
        let q = l.quotient(&g).unwrap();
        assert_eq!(q.det_sq(), rat(36, 10));
        assert_eq!(q.det_sq(), l.det_sq() / g.det_sq());

        assert!(l.quotient(&l).is_err());
        // non-saturated sublattice is rejected
        let g2 = lat(2, &[&[2, 6]]);
        assert!(matches!(l.quotient(&g2), Err(Error::NotSaturated)));
    }

    #[test]
    fn quotient_of_ambient_matches_dual_of_orthogonal() {
        // (L^perp)^* = Z^N / L for primitive L
        let l = lat(3, &[&[1, 2, 2]]);
        let lhs = l.orthogonal_complement().unwrap().dual().unwrap();
        let rhs = Lattice::standard(3).quotient(&l).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership() {
        let l = lat(2, &[&[1, 3], &[0, 6]]);
        assert!(l.contains_int(&to_int_vec(&[1, 9])));
        assert!(!l.contains_int(&to_int_vec(&[1, 4])));
        assert!(l.contains_lattice(&lat(2, &[&[2, 6], &[0, 12]])));
    }
}
