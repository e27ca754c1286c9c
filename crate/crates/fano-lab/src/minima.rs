//! Exact enumeration of lattice points in balls, successive minima with
//! witnesses, and counting in ball-and-cone regions.
//!
//! Enumeration uses a Fincke-Pohst style recursion over an exactly
//! pair-reduced basis. All acceptance decisions are exact (squared rational
//! comparisons); floating point only guesses coefficient ranges, which are
//! then corrected exactly.

use crate::error::{Error, Result};
use crate::ivec::{dot, dot_rat, norm_sq, Int, Rat};
use crate::lattice::Lattice;
use crate::mat::rank_of;
use num::{Signed, ToPrimitive, Zero};

pub const DEFAULT_RANK_GUARD: usize = 10;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Norm-decreasing exact basis preconditioning: repeatedly replaces b_i by
/// b_i - round(<b_i,b_j>/<b_j,b_j>) b_j whenever that strictly shortens b_i.
/// The lattice is unchanged; every reported quantity still comes from
/// exhaustive enumeration afterwards.
pub fn pair_reduce(basis: &mut Vec<Vec<Int>>) {
    let r = basis.len();
    if r <= 1 {
        return;
    }
    let mut norms: Vec<Int> = basis.iter().map(|b| norm_sq(b)).collect();
    loop {
        let mut changed = false;
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let num = dot(&basis[i], &basis[j]);
                if num.is_zero() {
                    continue;
                }
                let q = Rat::new(num, norms[j].clone()).round().to_integer();
                if q.is_zero() {
                    continue;
                }
                let cand: Vec<Int> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(x, y)| x - &q * y)
                    .collect();
                let cn = norm_sq(&cand);
                if cn < norms[i] {
                    basis[i] = cand;
                    norms[i] = cn;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| norms[a].cmp(&norms[b]).then(basis[a].cmp(&basis[b])));
    let sorted: Vec<Vec<Int>> = order.iter().map(|&i| basis[i].clone()).collect();
    *basis = sorted;
}

struct GramSchmidt {
    // mu[j][i] for i < j
    mu: Vec<Vec<Rat>>,
    bstar_sq: Vec<Rat>,
}

fn gram_schmidt(basis: &[Vec<Int>]) -> GramSchmidt {
    let r = basis.len();
    let mut mu = vec![Vec::new(); r];
    let mut bstar: Vec<Vec<Rat>> = Vec::with_capacity(r);
    let mut bstar_sq = Vec::with_capacity(r);
    for j in 0..r {
        let mut v: Vec<Rat> = basis[j].iter().map(|x| Rat::from(x.clone())).collect();
        let mut mus = Vec::with_capacity(j);
        for i in 0..j {
            let bi: Vec<Rat> = basis[j].iter().map(|x| Rat::from(x.clone())).collect();
            let m = dot_rat(&bi, &bstar[i]) / &bstar_sq[i];
            for k in 0..v.len() {
                let t = &m * &bstar[i][k];
                v[k] -= t;
            }
            mus.push(m);
        }
        let nsq = dot_rat(&v, &v);
        assert!(nsq.is_positive(), "dependent basis in enumeration");
        mu[j] = mus;
        bstar_sq.push(nsq);
        bstar.push(v);
    }
    GramSchmidt { mu, bstar_sq }
}

/// Largest integer c with (c - s)^2 <= q or c <= s; f64 guess, exact fix-up.
fn upper_bound(s: &Rat, q: &Rat) -> Int {
    let holds = |c: &Int| {
        let d = Rat::from(c.clone()) - s;
        !d.is_positive() || &d * &d <= *q
    };
    let sf = s.to_f64().unwrap_or(0.0);
    let qf = q.to_f64().unwrap_or(0.0).max(0.0);
    let mut c = Int::from((sf + qf.sqrt()).floor() as i64);
    let mut steps = 0;
    while holds(&(&c + 1)) {
        c += 1;
        steps += 1;
        assert!(steps < 1 << 20, "range fix-up diverged");
    }
    while !holds(&c) {
        c -= 1;
        steps += 1;
        assert!(steps < 1 << 20, "range fix-up diverged");
    }
    c
}

/// All nonzero lattice vectors c1 b1 + ... + cR bR with norm^2 <= limit,
/// one representative per +- pair, as (norm_sq, point), sorted by
/// (norm_sq, point). Points are in the integer model spanned by `basis`.
pub fn enumerate_ball(basis: &[Vec<Int>], limit_sq: &Rat, budget: &mut u64) -> Result<Vec<(Int, Vec<Int>)>> {
    if limit_sq.is_negative() {
        return Ok(Vec::new());
    }
    let r = basis.len();
    let dim = basis[0].len();
    let gs = gram_schmidt(basis);
    let mut coeffs = vec![Int::zero(); r];
    let mut out: Vec<(Int, Vec<Int>)> = Vec::new();

    // recursion over levels r-1 .. 0 with exact remaining budget
    fn descend(
        level: usize,
        rem: &Rat,
        coeffs: &mut Vec<Int>,
        basis: &[Vec<Int>],
        gs: &GramSchmidt,
        dim: usize,
        out: &mut Vec<(Int, Vec<Int>)>,
        budget: &mut u64,
    ) -> Result<()> {
        if *budget == 0 {
            return Err(Error::Budget("ball enumeration".into()));
        }
        *budget -= 1;
        let r = basis.len();
        // shift = sum_{j>level} mu[j][level] c_j
        let mut shift = Rat::zero();
        for j in level + 1..r {
            if !coeffs[j].is_zero() {
                shift += &gs.mu[j][level] * Rat::from(coeffs[j].clone());
            }
        }
        let q = rem / &gs.bstar_sq[level];
        let center = -shift;
        let hi = upper_bound(&center, &q);
        // symmetric lower bound: smallest c with (c - center)^2 <= q
        let lo = {
            let neg_center = -&center;
            -upper_bound(&neg_center, &q)
        };
        let mut c = lo;
        while c <= hi {
            coeffs[level] = c.clone();
            let d = Rat::from(c.clone()) - &center;
            let used = &gs.bstar_sq[level] * &d * &d;
            let rem2 = rem - &used;
            if !rem2.is_negative() {
                if level == 0 {
                    if coeffs.iter().any(|x| !x.is_zero()) {
                        let mut v = vec![Int::zero(); dim];
                        for (j, b) in basis.iter().enumerate() {
                            if coeffs[j].is_zero() {
                                continue;
                            }
                            for k in 0..dim {
                                v[k] += &coeffs[j] * &b[k];
                            }
                        }
                        // keep one representative per +- pair
                        let first = v.iter().find(|x| !x.is_zero()).unwrap();
                        if first.is_positive() {
                            out.push((norm_sq(&v), v));
                        }
                    }
                } else {
                    descend(level - 1, &rem2, coeffs, basis, gs, dim, out, budget)?;
                }
            }
            c += 1;
        }
        coeffs[level] = Int::zero();
        Ok(())
    }

    descend(r - 1, limit_sq, &mut coeffs, basis, &gs, dim, &mut out, budget)?;
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct MinimaProfile {
    /// Exact squared successive minima, nondecreasing.
    pub minima_sq: Vec<Rat>,
    /// Witness vectors (rational coordinates for rational lattices).
    pub witnesses: Vec<Vec<Rat>>,
}

/// Exact successive minima by exhaustive enumeration with growing radius.
pub fn successive_minima(l: &Lattice, rank_guard: usize, budget: u64) -> Result<MinimaProfile> {
    let r = l.rank();
    if r > rank_guard {
        return Err(Error::RankGuard(r, rank_guard));
    }
    let mut basis = l.scaled_cols().to_vec();
    pair_reduce(&mut basis);
    let mut budget = budget;
    let basis_norms: Vec<Int> = basis.iter().map(|b| norm_sq(b)).collect();
    let mut limit: Rat = Rat::from(basis_norms.iter().min().unwrap().clone());
    let max_needed: Rat = Rat::from(basis_norms.iter().max().unwrap().clone());
    loop {
        let pts = enumerate_ball(&basis, &limit, &mut budget)?;
        let mut chosen: Vec<(Int, Vec<Int>)> = Vec::new();
        for (nsq, v) in &pts {
            if chosen.len() == r {
                break;
            }
            let mut trial: Vec<Vec<Int>> = chosen.iter().map(|(_, w)| w.clone()).collect();
            trial.push(v.clone());
            if rank_of(&trial) == trial.len() {
                chosen.push((nsq.clone(), v.clone()));
            }
        }
        if chosen.len() == r {
            let denom_l = l.denom().clone();
            let dsq = Rat::from(&denom_l * &denom_l);
            return Ok(MinimaProfile {
                minima_sq: chosen.iter().map(|(n, _)| Rat::from(n.clone()) / &dsq).collect(),
                witnesses: chosen
                    .iter()
                    .map(|(_, v)| {
                        v.iter()
                            .map(|x| Rat::new(x.clone(), denom_l.clone()))
                            .collect()
                    })
                    .collect(),
            });
        }
        if limit >= max_needed {
            // the basis itself is independent, so this cannot happen
            return Err(Error::Budget("successive minima".into()));
        }
        limit = (&limit * Rat::from(Int::from(2))).min(max_needed.clone());
    }
}

/// A cone constraint |<v,t>| <= ||v|| ||t|| / (2 gamma), tested exactly.
#[derive(Debug, Clone)]
pub struct Cone {
    pub v: Vec<Int>,
    pub gamma: Rat,
}

impl Cone {
    pub fn admits(&self, t: &[Int]) -> bool {
        let d = dot(&self.v, t);
        let lhs = Rat::from(Int::from(4)) * &self.gamma * &self.gamma * Rat::from(&d * &d);
        let rhs = Rat::from(norm_sq(&self.v) * norm_sq(t));
        lhs <= rhs
    }
}

/// Exact number of lattice points in the closed ball of radius `t` meeting
/// every cone constraint; the zero vector is always counted.
pub fn count_points(l: &Lattice, t: &Rat, cones: &[Cone], budget: u64) -> Result<u64> {
    if t.is_negative() {
        return Ok(0);
    }
    let mut basis = l.scaled_cols().to_vec();
    pair_reduce(&mut basis);
    let scaled_limit = t * t * Rat::from(l.denom() * l.denom());
    let mut budget = budget;
    let pts = enumerate_ball(&basis, &scaled_limit, &mut budget)?;
    let mut count = 1u64; // zero vector
    for (_, p) in &pts {
        // cone conditions are homogeneous in t, so the scaled point decides
        if cones.iter().all(|c| c.admits(p)) {
            count += 2;
        }
    }
    Ok(count)
}

/// All vectors of Z^dim with 0 < ||x||^2 <= limit, graded by norm then lex.
pub fn zn_ball_i64(dim: usize, limit_sq: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if limit_sq < 1 {
        return out;
    }
    let m = (limit_sq as f64).sqrt() as i64 + 1;
    let m = (0..).map(|k| m - k).find(|&x| x * x <= limit_sq).unwrap_or(0);
    let mut v = vec![0i64; dim];
    fn rec(i: usize, rem: i64, m: i64, v: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == v.len() {
            if v.iter().any(|&x| x != 0) {
                out.push(v.clone());
            }
            return;
        }
        let mut c = -m;
        while c <= m {
            if c * c <= rem {
                v[i] = c;
                rec(i + 1, rem - c * c, m, v, out);
            }
            c += 1;
        }
        v[i] = 0;
    }
    rec(0, limit_sq, m, &mut v, &mut out);
    out.sort_by(|a, b| {
        let na: i64 = a.iter().map(|x| x * x).sum();
        let nb: i64 = b.iter().map(|x| x * x).sum();
        na.cmp(&nb).then(a.cmp(b))
    });
    out
}
