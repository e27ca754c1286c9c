//! Heights, the global and localised point-counting functions, the
//! divisibility window, and the aggregate/moment sums over pairs of
//! primitive vectors.

use crate::error::{Error, Result};
use crate::ivec::{
    canonical_sign, content, content_i64, dot_i128, gcd_u64_binary, norm_sq, norm_sq_i64,
    to_i64_vec, Int, Rat,
};
use crate::numerics::{ball_volume, zeta, Kahan};
use crate::veronese::{dimension, pair_invariants, MonomialOrder};
use num::{Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// A projective hypersurface of degree d in P^n given by a primitive
/// coefficient vector with canonical sign (first nonzero entry positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    pub d: u32,
    pub n: usize,
    pub coeffs: Vec<Int>,
}

impl Hypersurface {
    pub fn new(d: u32, n: usize, coeffs: Vec<Int>) -> Result<Self> {
        let want = dimension(d, n);
        if coeffs.len() != want {
            return Err(Error::DimensionMismatch(coeffs.len(), want));
        }
        let c = content(&coeffs);
        if c.is_zero() {
            return Err(Error::Invalid("zero coefficient vector".into()));
        }
        let mut coeffs: Vec<Int> = if c.is_one() {
            coeffs
        } else {
            coeffs.iter().map(|x| x / &c).collect()
        };
        canonical_sign(&mut coeffs);
        Ok(Hypersurface { d, n, coeffs })
    }

    pub fn norm_sq(&self) -> Int {
        norm_sq(&self.coeffs)
    }

    pub fn coeffs_i64(&self) -> Result<Vec<i64>> {
        to_i64_vec(&self.coeffs)
    }

    /// Height exponent n + 1 - d of the anticanonical height.
    pub fn height_exponent(&self) -> u32 {
        (self.n + 1) as u32 - self.d
    }
}

/// Anticanonical height of a primitive representative: ||x||^(n+1-d),
/// kept as the exact pair (||x||^2, exponent).
pub fn height(x: &[Int], d: u32, n: usize) -> (Int, u32) {
    assert!(n + 1 > d as usize);
    (norm_sq(x), (n + 1) as u32 - d)
}

/// Exact comparison ||x||^(n+1-d) <= b via squaring.
pub fn height_leq(x_norm_sq: &Int, exponent: u32, b: &Rat) -> bool {
    if b.is_negative() {
        return false;
    }
    let lhs = Rat::from(x_norm_sq.pow(exponent));
    lhs <= b * b
}

/// Largest s >= 0 with s^exponent <= b^2; the norm-squared cutoff of the
/// height condition.
pub fn norm_sq_cutoff(exponent: u32, b: &Rat) -> i64 {
    if b.is_negative() {
        return -1;
    }
    let b2 = b * b;
    let mut lo: i64 = 0;
    let mut hi: i64 = 2 + b2.to_f64().map(|v| v.powf(1.0 / exponent as f64)).unwrap_or(0.0) as i64;
    while Rat::from(Int::from(hi).pow(exponent)) <= b2 {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if Rat::from(Int::from(mid).pow(exponent)) <= b2 {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// The divisibility window of a height bound: alpha = log B,
/// w = log B / log log B, W = prod_{p <= w} p^(ceil(log w / log p) + 1) and
/// rad W = prod_{p <= w} p.
#[derive(Debug, Clone)]
pub struct HeightWindow {
    pub b: Rat,
    pub alpha: f64,
    pub w: f64,
    pub modulus: Int,
    pub radical: Int,
}

/// Smallest k >= 1 with p^k >= w.
pub fn window_exponent_pub(p: u64, w: f64) -> u32 {
    window_exponent(p, w)
}

fn window_exponent(p: u64, w: f64) -> u32 {
    let mut k = 1u32;
    let mut pk = p as f64;
    while pk < w {
        pk *= p as f64;
        k += 1;
    }
    k
}

pub fn primes_upto(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; (x + 1) as usize];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= x as usize {
        if sieve[p] {
            let mut q = p * p;
            while q <= x as usize {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=x).filter(|&i| sieve[i as usize]).collect()
}

/// The window modulus and its radical for a given w.
pub fn window_parts(w: f64) -> (Int, Int) {
    let mut modulus = Int::one();
    let mut radical = Int::one();
    for p in primes_upto(w.floor() as u64) {
        let e = window_exponent(p, w) + 1;
        modulus *= Int::from(p).pow(e);
        radical *= Int::from(p);
    }
    (modulus, radical)
}

pub fn window(b: &Rat) -> Result<HeightWindow> {
    let bf = b.to_f64().ok_or_else(|| Error::Invalid("bound out of range".into()))?;
    let alpha = bf.ln();
    if !(alpha.ln() > 1.0) {
        return Err(Error::BoundTooSmall(format!(
            "need B > e^e for the window, got {bf}"
        )));
    }
    let w = alpha / alpha.ln();
    let (modulus, radical) = window_parts(w);
    Ok(HeightWindow {
        b: b.clone(),
        alpha,
        w,
        modulus,
        radical,
    })
}

/// Dyadic rational alpha used for exact cone tests: ln B rounded to 2^-20.
pub fn alpha_dyadic(alpha: f64) -> (i64, i64) {
    const DEN: i64 = 1 << 20;
    ((alpha * DEN as f64).round() as i64, DEN)
}

/// Exact cone membership: 4 gamma^2 <v,a>^2 <= ||v||^2 ||a||^2.
pub fn cone_test(a: &[Int], v: &[Int], gamma: &Rat) -> bool {
    assert!(v.iter().any(|x| !x.is_zero()));
    let d = crate::ivec::dot(v, a);
    let lhs = Rat::from(Int::from(4) * &d * &d) * gamma * gamma;
    let rhs = Rat::from(norm_sq(v) * norm_sq(a));
    lhs <= rhs
}

/// Machine-integer cone test with exact fallback. `gamma = gn/gd`.
fn cone_test_i64(a: &[i64], a_norm_sq: i128, v: &[i64], v_norm_sq: i128, gn: i64, gd: i64) -> bool {
    let d = dot_i128(v, a);
    let df = d as f64;
    let lhs = 4.0 * (gn as f64 / gd as f64).powi(2) * df * df;
    let rhs = (v_norm_sq as f64) * (a_norm_sq as f64);
    if lhs < rhs * (1.0 - 1e-9) {
        return true;
    }
    if lhs > rhs * (1.0 + 1e-9) {
        return false;
    }
    // near the boundary: decide exactly
    let big = |x: i128| Int::from(x);
    let lhs = Int::from(4) * big(d).pow(2) * Int::from(gn).pow(2);
    let rhs = big(v_norm_sq) * big(a_norm_sq) * Int::from(gd).pow(2);
    lhs <= rhs
}

/// One point of the primitive-vector enumeration, with its Veronese image.
#[derive(Debug, Clone)]
pub struct XiPoint {
    pub x: Vec<i64>,
    pub norm_sq: i64,
    pub nu: Vec<i64>,
    pub nu_norm_sq: i128,
}

/// All primitive vectors of Z^{n+1} with ||x||^(n+1-d) <= B, graded by
/// norm then lexicographic, together with their Veronese images.
#[derive(Debug, Clone)]
pub struct XiSet {
    pub order: MonomialOrder,
    pub norm_sq_max: i64,
    pub points: Vec<XiPoint>,
}

pub fn build_xi(d: u32, n: usize, b: &Rat) -> Result<XiSet> {
    let order = MonomialOrder::new(d, n);
    let k = (n + 1) as u32 - d;
    let s_max = norm_sq_cutoff(k, b);
    build_xi_with_cutoff(order, s_max)
}

pub fn build_xi_with_cutoff(order: MonomialOrder, s_max: i64) -> Result<XiSet> {
    let n = order.n;
    if s_max > 0 && (s_max as f64).powf((n + 1) as f64 / 2.0) > 5e8 {
        return Err(Error::Budget(format!(
            "primitive enumeration with ||x||^2 <= {s_max} in dimension {}",
            n + 1
        )));
    }
    let mut points = Vec::new();
    if s_max >= 1 {
        for x in crate::minima::zn_ball_i64(n + 1, s_max) {
            if content_i64(&x) != 1 {
                continue;
            }
            let nu = order.veronese_i64(&x)?;
            let nu_norm_sq: i128 = nu.iter().map(|&t| (t as i128) * (t as i128)).sum();
            points.push(XiPoint {
                norm_sq: norm_sq_i64(&x),
                nu,
                nu_norm_sq,
                x,
            });
        }
    }
    Ok(XiSet {
        order,
        norm_sq_max: s_max,
        points,
    })
}

/// All primitive vectors of Z^dim with ||v|| <= t, each exactly once, graded
/// by norm then lexicographic.
pub fn enumerate_primitive(dim: usize, t: &Rat) -> Vec<Vec<i64>> {
    let cut = norm_sq_cutoff(1, t);
    if cut < 1 {
        return Vec::new();
    }
    crate::minima::zn_ball_i64(dim, cut)
        .into_iter()
        .filter(|v| content_i64(v) == 1)
        .collect()
}

impl XiSet {
    /// Indices of the canonical-sign representatives (first nonzero entry
    /// positive); each projective point appears exactly once among them.
    pub fn canonical_indices(&self) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.x.iter().find(|&&v| v != 0).map(|&v| v > 0).unwrap_or(false))
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CountReport {
    pub b: Rat,
    pub global: u64,
    pub localized: Option<f64>,
}

/// N_V(B): half the number of primitive height-bounded zeros of the form.
pub fn global_count(v: &Hypersurface, xi: &XiSet) -> Result<u64> {
    let a = v.coeffs_i64()?;
    let mut raw = 0u64;
    for p in &xi.points {
        if dot_i128(&p.nu, &a) == 0 {
            raw += 1;
        }
    }
    assert!(raw % 2 == 0, "antipodal points must pair up");
    Ok(raw / 2)
}

/// N_V^loc(B): the localised counting function. The congruence and cone
/// tests are exact; the 1/||nu(x)|| series is accumulated with compensated
/// summation in the graded enumeration order.
pub fn localized_count(v: &Hypersurface, xi: &XiSet, win: &HeightWindow) -> Result<f64> {
    let a = v.coeffs_i64()?;
    let a_norm_sq: i128 = a.iter().map(|&t| (t as i128) * (t as i128)).sum();
    let w_mod: i128 = win
        .modulus
        .to_i128()
        .ok_or_else(|| Error::Budget("window modulus exceeds machine range".into()))?;
    let (gn, gd) = alpha_dyadic(win.alpha);
    let mut acc = Kahan::new();
    for p in &xi.points {
        let d = dot_i128(&p.nu, &a);
        if d.rem_euclid(w_mod) != 0 {
            continue;
        }
        if !cone_test_i64(&a, a_norm_sq, &p.nu, p.nu_norm_sq, gn, gd) {
            continue;
        }
        acc.add(1.0 / (p.nu_norm_sq as f64).sqrt());
    }
    let w_f = win.modulus.to_f64().unwrap();
    let norm_a = (a_norm_sq as f64).sqrt();
    Ok(0.5 * win.alpha * w_f / norm_a * acc.total())
}

pub fn count_report(v: &Hypersurface, b: &Rat, localized: bool) -> Result<CountReport> {
    let xi = build_xi(v.d, v.n, b)?;
    let global = global_count(v, &xi)?;
    let loc = if !localized {
        None
    } else if xi.points.is_empty() {
        // an empty enumeration needs no window
        Some(0.0)
    } else {
        Some(localized_count(v, &xi, &window(b)?)?)
    };
    Ok(CountReport {
        b: b.clone(),
        global,
        localized: loc,
    })
}

/// The two addends of the pair error indicator: min{1, Delta^2/alpha^2} and
/// the indicator of G(x,y) not dividing W/rad(W).
pub fn pair_error_indicator(
    order: &MonomialOrder,
    x: &[Int],
    y: &[Int],
    win: &HeightWindow,
) -> Result<(f64, bool)> {
    let inv = pair_invariants(order, x, y)?;
    let delta_sq = inv.delta_sq.to_f64().unwrap();
    let first = (delta_sq / (win.alpha * win.alpha)).min(1.0);
    let wr: Int = &win.modulus / &win.radical;
    let indicator = !wr.is_multiple_of(&inv.gcd_minors);
    Ok((first, indicator))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggregateKind {
    /// Sum of inverse intersection determinants over ordered pairs.
    InverseDet,
    /// Same sum weighted by the localisation error factor.
    ErrorWeighted,
}

/// E_{d,n}(B) or F_{d,n}(B) over ordered pairs of primitive vectors
/// (x != +-y, both of height-norm at most B^(1/(n+1-d))).
///
/// The summand is invariant under all four sign choices and under swapping
/// x and y, so the loop runs over unordered canonical pairs with weight 8.
/// The pair loop is the hot spot of the whole crate and runs on flat
/// machine-integer arrays; entries are checked to fit beforehand.
pub fn aggregate_sum(d: u32, n: usize, b: &Rat, kind: AggregateKind) -> Result<f64> {
    let xi = build_xi(d, n, b)?;
    let win = if kind == AggregateKind::ErrorWeighted {
        Some(window(b)?)
    } else {
        None
    };
    let idx = xi.canonical_indices();
    let m = idx.len();
    let dim = n + 1;
    let big_n = xi.order.len();
    // flat copies of the coordinates and Veronese images
    let mut xs = vec![0i32; m * dim];
    let mut nus = vec![0i32; m * big_n];
    let mut nns = vec![0i64; m];
    let mut max_abs_nu: i64 = 0;
    for (row, &i) in idx.iter().enumerate() {
        let p = &xi.points[i];
        for (k, &v) in p.x.iter().enumerate() {
            xs[row * dim + k] = i32::try_from(v)
                .map_err(|_| Error::Budget("coordinates exceed the fast-path range".into()))?;
        }
        for (k, &v) in p.nu.iter().enumerate() {
            max_abs_nu = max_abs_nu.max(v.abs());
            nus[row * big_n + k] = i32::try_from(v)
                .map_err(|_| Error::Budget("image entries exceed the fast-path range".into()))?;
        }
        nns[row] = i64::try_from(p.nu_norm_sq)
            .map_err(|_| Error::Budget("image norms exceed the fast-path range".into()))?;
    }
    // the determinant product nn_i nn_j must stay inside i64
    if (big_n as i64)
        .checked_mul(max_abs_nu)
        .and_then(|v| v.checked_mul(max_abs_nu))
        .and_then(|v| v.checked_mul(v))
        .is_none()
    {
        return Err(Error::Budget("pair determinants exceed the fast-path range".into()));
    }

    let (alpha, div_ok): (f64, Vec<bool>) = if let Some(w) = &win {
        let wr: Int = &w.modulus / &w.radical;
        let max_g = xi.points.iter().map(|p| p.norm_sq).max().unwrap_or(1).max(1) as usize + 1;
        let table: Vec<bool> = (0..=max_g)
            .map(|g| g >= 1 && wr.is_multiple_of(&Int::from(g as i64)))
            .collect();
        (w.alpha, table)
    } else {
        (0.0, Vec::new())
    };
    let weighted = kind == AggregateKind::ErrorWeighted;
    let inv_alpha_sq = if alpha > 0.0 { 1.0 / (alpha * alpha) } else { 0.0 };

    if !weighted {
        // the unweighted sum dominates the crate's runtime at large B; use
        // the two-pass route that avoids a gcd on every pair
        let max_x = xs.iter().map(|&v| (v as i64).abs()).max().unwrap_or(0);
        let minor_bound = 2 * max_x * max_x;
        // the u128 bucket keys hold up to five 21-bit coordinates
        if minor_bound <= 1 << 20 && dim <= 5 {
            return Ok(aggregate_inverse_det_two_pass(
                &xs,
                &nus,
                &nns,
                m,
                dim,
                big_n,
                minor_bound,
            ));
        }
    }

    let partials: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i| {
            let xi_row = &xs[i * dim..(i + 1) * dim];
            let nu_row = &nus[i * big_n..(i + 1) * big_n];
            let nn_i = nns[i];
            let mut acc = Kahan::new();
            for j in i + 1..m {
                let xj = &xs[j * dim..(j + 1) * dim];
                // gcd of the 2x2 minors of (x|y), stopping at 1
                let mut g: u64 = 0;
                'outer: for s in 0..dim {
                    let a = xi_row[s] as i64;
                    let c = xj[s] as i64;
                    for t in s + 1..dim {
                        let minor = a * xj[t] as i64 - xi_row[t] as i64 * c;
                        g = gcd_u64_binary(g, minor.unsigned_abs());
                        if g == 1 {
                            break 'outer;
                        }
                    }
                }
                if g == 0 {
                    continue; // dependent pair (x = +-y cannot occur here)
                }
                let g = g as i64;
                let nuj = &nus[j * big_n..(j + 1) * big_n];
                let mut dd: i64 = 0;
                for k in 0..big_n {
                    dd += nu_row[k] as i64 * nuj[k] as i64;
                }
                let det_pair_sq = nn_i * nns[j] - dd * dd;
                debug_assert!(det_pair_sq > 0);
                // det of the kernel intersection is det_pair / g
                let inv_det = g as f64 / (det_pair_sq as f64).sqrt();
                if !weighted {
                    acc.add(inv_det);
                } else {
                    let delta_sq = (nn_i as f64 * nns[j] as f64) / det_pair_sq as f64;
                    let first = (delta_sq * inv_alpha_sq).min(1.0);
                    let ind = if div_ok[g as usize] { 0.0 } else { 1.0 };
                    acc.add((first + ind) * inv_det);
                }
            }
            acc.total()
        })
        .collect();
    let mut total = Kahan::new();
    for p in partials {
        total.add(p);
    }
    Ok(8.0 * total.total())
}

/// Exact split of the pair sum: sum g / sqrt(det) equals the gcd-free sum of
/// 1/sqrt(det) plus corrections (g - 1)/sqrt(det) over pairs with g >= 2.
/// A pair has g >= 2 exactly when its two vectors agree projectively mod
/// some prime p (both are nonzero mod p since they are primitive), so those
/// pairs are found by bucketing on projective classes mod p and each is
/// corrected once, at the smallest prime factor of its g.
fn aggregate_inverse_det_two_pass(
    xs: &[i32],
    nus: &[i32],
    nns: &[i64],
    m: usize,
    dim: usize,
    big_n: usize,
    minor_bound: i64,
) -> f64 {
    // pass 1: no gcd at all; transposed blocks so the dot products and the
    // reciprocal square roots vectorize over j
    const BLOCK: usize = 512;
    let mut nus_t = vec![0i32; m * big_n];
    for i in 0..m {
        for k in 0..big_n {
            nus_t[k * m + i] = nus[i * big_n + k];
        }
    }
    let partials: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i| {
            let nu_row = &nus[i * big_n..(i + 1) * big_n];
            let nn_i = nns[i];
            let mut acc = Kahan::new();
            let mut dd = [0i64; BLOCK];
            let mut j = i + 1;
            while j < m {
                let len = BLOCK.min(m - j);
                dd[..len].fill(0);
                for k in 0..big_n {
                    let c = nu_row[k] as i64;
                    let col = &nus_t[k * m + j..k * m + j + len];
                    for (d, &v) in dd[..len].iter_mut().zip(col) {
                        *d += c * v as i64;
                    }
                }
                let mut block_sum = 0.0f64;
                for (t, &d) in dd[..len].iter().enumerate() {
                    let det_pair_sq = nn_i * nns[j + t] - d * d;
                    debug_assert!(det_pair_sq > 0);
                    block_sum += 1.0 / (det_pair_sq as f64).sqrt();
                }
                acc.add(block_sum);
                j += len;
            }
            acc.total()
        })
        .collect();
    let mut total = Kahan::new();
    for p in partials {
        total.add(p);
    }

    // smallest-prime-factor sieve up to the minor bound
    let bound = minor_bound.max(2) as usize;
    let mut spf: Vec<u32> = vec![0; bound + 1];
    for i in 2..=bound {
        if spf[i] == 0 {
            let mut j = i;
            while j <= bound {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }

    // pass 2: corrections by prime
    let mut corr = Kahan::new();
    let mut keyed: Vec<(u128, u32)> = Vec::with_capacity(m);
    for p in primes_upto(bound as u64) {
        keyed.clear();
        let pi = p as i64;
        for i in 0..m {
            let x = &xs[i * dim..(i + 1) * dim];
            // canonical projective representative of x mod p
            let lead = (0..dim).find(|&k| (x[k] as i64).rem_euclid(pi) != 0).unwrap();
            let inv = mod_inverse((x[lead] as i64).rem_euclid(pi), pi);
            let mut key: u128 = lead as u128;
            for &v in x {
                let t = ((v as i64).rem_euclid(pi) * inv).rem_euclid(pi);
                key = (key << 21) | t as u128;
            }
            keyed.push((key, i as u32));
        }
        keyed.sort_unstable();
        let mut start = 0;
        while start < m {
            let mut end = start + 1;
            while end < m && keyed[end].0 == keyed[start].0 {
                end += 1;
            }
            if end - start >= 2 {
                for a in start..end {
                    let i = keyed[a].1 as usize;
                    let xi_row = &xs[i * dim..(i + 1) * dim];
                    for b in a + 1..end {
                        let j = keyed[b].1 as usize;
                        let xj = &xs[j * dim..(j + 1) * dim];
                        // running gcd is a multiple of the final g, and p | g,
                        // so hitting p exactly already decides g = p
                        let mut g: u64 = 0;
                        'chain: for s in 0..dim {
                            for t in s + 1..dim {
                                let minor = xi_row[s] as i64 * xj[t] as i64
                                    - xi_row[t] as i64 * xj[s] as i64;
                                g = gcd_u64_binary(g, minor.unsigned_abs());
                                if g == p {
                                    break 'chain;
                                }
                            }
                        }
                        debug_assert!(g >= 2 && g % p == 0);
                        if spf[g as usize] as u64 != p {
                            continue; // corrected at a smaller prime
                        }
                        let nu_row = &nus[i * big_n..(i + 1) * big_n];
                        let nuj = &nus[j * big_n..(j + 1) * big_n];
                        let mut dd: i64 = 0;
                        for k in 0..big_n {
                            dd += nu_row[k] as i64 * nuj[k] as i64;
                        }
                        let det_pair_sq = nns[i] * nns[j] - dd * dd;
                        corr.add((g - 1) as f64 / (det_pair_sq as f64).sqrt());
                    }
                }
            }
            start = end;
        }
    }
    8.0 * (total.total() + corr.total())
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // extended euclid; p prime, a nonzero mod p
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    Global,
    Mixed,
    Localized,
}

#[derive(Debug, Clone)]
pub struct MomentsReport {
    pub kind: MomentKind,
    pub value: f64,
    /// iota * A^(N-2) * E_{d,n}(B), the comparison scale.
    pub prediction: f64,
    pub hypersurface_count: usize,
}

/// All hypersurfaces of height at most `a_bound` (one coefficient vector per
/// projective class, canonical sign).
pub fn all_hypersurfaces(d: u32, n: usize, a_bound: i64) -> Result<Vec<Vec<i64>>> {
    let big_n = dimension(d, n);
    let limit = a_bound * a_bound;
    let est = (2.0 * (limit as f64).sqrt() + 1.0).powi(big_n as i32);
    if est > 4e7 {
        return Err(Error::Budget(format!(
            "coefficient enumeration of about {est:.1e} boxes"
        )));
    }
    let all = crate::minima::zn_ball_i64(big_n, limit);
    Ok(all
        .into_iter()
        .filter(|a| {
            content_i64(a) == 1 && a.iter().find(|&&v| v != 0).map(|&v| v > 0).unwrap_or(false)
        })
        .collect())
}

/// Second moments with diagonal terms removed, over the full family of
/// hypersurfaces of height at most `a_bound`.
pub fn moments(d: u32, n: usize, a_bound: i64, b: &Rat, kind: MomentKind) -> Result<MomentsReport> {
    let family = all_hypersurfaces(d, n, a_bound)?;
    let xi = build_xi(d, n, b)?;
    let win = window(b).ok();
    let (gn, gd) = win.as_ref().map(|w| alpha_dyadic(w.alpha)).unwrap_or((0, 1));
    let w_mod: i128 = win
        .as_ref()
        .and_then(|w| w.modulus.to_i128())
        .unwrap_or(1);
    let mut sum = Kahan::new();
    let mut diag = Kahan::new();
    for a in &family {
        let a_norm_sq: i128 = a.iter().map(|&t| (t as i128) * (t as i128)).sum();
        let norm_a = (a_norm_sq as f64).sqrt();
        let mut raw_global = 0u64;
        let mut loc = Kahan::new();
        let mut mix_diag = Kahan::new();
        let mut loc_diag = Kahan::new();
        for p in &xi.points {
            let dt = dot_i128(&p.nu, a);
            let nu_norm = (p.nu_norm_sq as f64).sqrt();
            if dt == 0 {
                raw_global += 1;
                mix_diag.add(1.0 / nu_norm);
            }
            if kind != MomentKind::Global {
                if dt.rem_euclid(w_mod) == 0
                    && cone_test_i64(a, a_norm_sq, &p.nu, p.nu_norm_sq, gn, gd)
                {
                    loc.add(1.0 / nu_norm);
                    loc_diag.add(1.0 / (p.nu_norm_sq as f64));
                }
            }
        }
        assert!(raw_global % 2 == 0);
        let nv = (raw_global / 2) as f64;
        let (alpha, wf) = win
            .as_ref()
            .map(|w| (w.alpha, w.modulus.to_f64().unwrap()))
            .unwrap_or((0.0, 1.0));
        let nloc = 0.5 * alpha * wf / norm_a * loc.total();
        match kind {
            MomentKind::Global => {
                sum.add(nv * nv);
                diag.add(nv);
            }
            MomentKind::Mixed => {
                sum.add(nv * nloc);
                diag.add(0.5 * alpha * wf / norm_a * mix_diag.total());
            }
            MomentKind::Localized => {
                sum.add(nloc * nloc);
                diag.add(0.5 * alpha * alpha * wf * wf / (norm_a * norm_a) * loc_diag.total());
            }
        }
    }
    let big_n = dimension(d, n);
    let iota = ball_volume(big_n - 2) / (8.0 * zeta(big_n - 2));
    let e_val = aggregate_sum(d, n, b, AggregateKind::InverseDet)?;
    let prediction = iota * (a_bound as f64).powi(big_n as i32 - 2) * e_val;
    Ok(MomentsReport {
        kind,
        value: sum.total() - diag.total(),
        prediction,
        hypersurface_count: family.len(),
    })
}

#[derive(Debug, Clone)]
pub struct EllCount {
    pub count: u64,
    /// True when some minimal determinant was only a best-found value, in
    /// which case `count` is a lower bound.
    pub lower_bound_only: bool,
}

/// Number of x with 0 < ||x|| <= X and minimal rank-r determinant at most
/// `delta` (single form), or of ordered independent pairs when `y_bound` is
/// given.
pub fn ell_counter(
    r: usize,
    n: usize,
    x_bound: &Rat,
    y_bound: Option<&Rat>,
    delta: &Rat,
) -> Result<EllCount> {
    use crate::veronese::{d_r_min, SearchQuality};
    let dim = n + 1;
    let delta_sq = delta * delta;
    let x_cut = norm_sq_cutoff(1, x_bound);
    let xs = crate::minima::zn_ball_i64(dim, x_cut.max(0));
    let mut count = 0u64;
    let mut lower = false;
    match y_bound {
        None => {
            for x in &xs {
                let xb: Vec<Int> = x.iter().map(|&t| Int::from(t)).collect();
                let res = d_r_min(&xb, None, r, None)?;
                if res.quality == SearchQuality::BestFound {
                    lower = true;
                }
                if res.det_sq <= delta_sq {
                    count += 1;
                }
            }
        }
        Some(yb) => {
            let y_cut = norm_sq_cutoff(1, yb);
            let ys = crate::minima::zn_ball_i64(dim, y_cut.max(0));
            for x in &xs {
                let xb: Vec<Int> = x.iter().map(|&t| Int::from(t)).collect();
                for y in &ys {
                    // ordered pairs spanning a plane
                    let mut dep = true;
                    'check: for s in 0..dim {
                        for t in s + 1..dim {
                            if x[s] * y[t] != x[t] * y[s] {
                                dep = false;
                                break 'check;
                            }
                        }
                    }
                    if dep {
                        continue;
                    }
                    let ybig: Vec<Int> = y.iter().map(|&t| Int::from(t)).collect();
                    let res = d_r_min(&xb, Some(&ybig), r, None)?;
                    if res.quality == SearchQuality::BestFound {
                        lower = true;
                    }
                    if res.det_sq <= delta_sq {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(EllCount {
        count,
        lower_bound_only: lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec::{gcd_i64, int, rat, to_int_vec};

    fn hs(d: u32, n: usize, coeffs: &[i64]) -> Hypersurface {
        Hypersurface::new(d, n, to_int_vec(coeffs)).unwrap()
    }

    /// x0 x1 - x2 x3 as a (2,3) coefficient vector.
    fn quadric() -> Hypersurface {
        // monomial order for d=2, n=3 starts x0^2, x0x1, x0x2, x0x3, x1^2, ...
        let o = MonomialOrder::new(2, 3);
        let mut c = vec![0i64; o.len()];
        for (i, e) in o.exponents.iter().enumerate() {
            if e == &vec![1, 1, 0, 0] {
                c[i] = 1;
            }
            if e == &vec![0, 0, 1, 1] {
                c[i] = -1;
            }
        }
        hs(2, 3, &c)
    }

    fn sum_of_squares(n: usize) -> Hypersurface {
        let o = MonomialOrder::new(2, n);
        let mut c = vec![0i64; o.len()];
        for (i, e) in o.exponents.iter().enumerate() {
            if e.iter().any(|&x| x == 2) {
                c[i] = 1;
            }
        }
        hs(2, n, &c)
    }

    #[test]
    fn height_examples() {
        let (nsq, k) = height(&to_int_vec(&[2, 1, 0, 1]), 2, 3);
        assert_eq!((nsq.clone(), k), (int(6), 2));
        assert!(height_leq(&nsq, k, &rat(6, 1)));
        assert!(!height_leq(&nsq, k, &rat(5, 1)));
        let (nsq, k) = height(&to_int_vec(&[0, 1, 0]), 2, 2);
        assert!(height_leq(&nsq, k, &rat(1, 1)));
        let (nsq, k) = height(&to_int_vec(&[1, 1, 1, 1, 1]), 3, 4);
        assert_eq!((nsq, k), (int(5), 2));
    }

    #[test]
    fn window_values() {
        // forced w = 3: W = 2^3 * 3^2 = 72
        let (m, r) = window_parts(3.0);
        assert_eq!(m, int(72));
        assert_eq!(r, int(6));
        // B = 10^6: w ~ 5.26, so W = 2^4 3^3 5^3 = 54000
        let win = window(&rat(1_000_000, 1)).unwrap();
        assert!((win.w - 5.2613).abs() < 1e-3);
        assert_eq!(win.modulus, int(54000));
        assert_eq!(win.radical, int(30));
        // every m <= w divides W / rad W
        let wr: Int = &win.modulus / &win.radical;
        for m in 1..=5i64 {
            assert!(wr.is_multiple_of(&int(m)));
        }
        assert!(window(&rat(10, 1)).is_err());
    }

    #[test]
    fn global_count_examples() {
        // positive definite form has no nontrivial zeros
        let v = sum_of_squares(3);
        for b in [4i64, 16, 100] {
            let xi = build_xi(2, 3, &rat(b, 1)).unwrap();
            assert_eq!(global_count(&v, &xi).unwrap(), 0);
        }
        // B < 1 gives an empty enumeration
        let xi = build_xi(2, 3, &rat(1, 2)).unwrap();
        assert_eq!(global_count(&quadric(), &xi).unwrap(), 0);
        // brute-force oracle for x0 x1 = x2 x3 at B = 4
        let xi = build_xi(2, 3, &rat(4, 1)).unwrap();
        let got = global_count(&quadric(), &xi).unwrap();
        let mut raw = 0u64;
        for x0 in -2i64..=2 {
            for x1 in -2i64..=2 {
                for x2 in -2i64..=2 {
                    for x3 in -2i64..=2 {
                        let v = [x0, x1, x2, x3];
                        let nsq: i64 = v.iter().map(|t| t * t).sum();
                        if nsq == 0 || nsq > 4 || content_i64(&v) != 1 {
                            continue;
                        }
                        if x0 * x1 - x2 * x3 == 0 {
                            raw += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(got, raw / 2);
        assert!(got > 0);
    }

    #[test]
    fn global_count_monotone_in_b() {
        let v = quadric();
        let mut last = 0;
        for b in [1i64, 4, 9, 25, 64] {
            let xi = build_xi(2, 3, &rat(b, 1)).unwrap();
            let c = global_count(&v, &xi).unwrap();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn cone_test_examples() {
        // orthogonal vectors pass for every gamma
        assert!(cone_test(
            &to_int_vec(&[1, 0, 0]),
            &to_int_vec(&[0, 2, 5]),
            &rat(1000, 1)
        ));
        // v = a requires gamma <= 1/2
        assert!(!cone_test(&to_int_vec(&[1, 2]), &to_int_vec(&[1, 2]), &rat(1, 1)));
        assert!(cone_test(&to_int_vec(&[1, 2]), &to_int_vec(&[1, 2]), &rat(1, 2)));
        // worked example: 4 * (1/4) * 4 = 4 <= 25
        assert!(cone_test(
            &to_int_vec(&[0, 1, 2]),
            &to_int_vec(&[1, 2, 0]),
            &rat(1, 2)
        ));
    }

    #[test]
    fn localized_definite_form_vanishes() {
        // for sum of squares the cone condition is unsatisfiable once
        // alpha > sqrt(n+1)/2
        let v = sum_of_squares(3);
        let b = rat(16, 1);
        let xi = build_xi(2, 3, &b).unwrap();
        let win = window(&b).unwrap();
        assert!(win.alpha > (4.0f64).sqrt() / 2.0);
        assert_eq!(localized_count(&v, &xi, &win).unwrap(), 0.0);
    }

    #[test]
    fn localized_matches_reference_summation() {
        let v = quadric();
        let b = rat(64, 1);
        let xi = build_xi(2, 3, &b).unwrap();
        let win = window(&b).unwrap();
        let got = localized_count(&v, &xi, &win).unwrap();
        // independent recomputation: naive summation in reverse order
        let a = v.coeffs_i64().unwrap();
        let a_nsq: i128 = a.iter().map(|&t| (t as i128) * (t as i128)).sum();
        let wm = win.modulus.to_i128().unwrap();
        let (gn, gd) = alpha_dyadic(win.alpha);
        let mut sum = 0.0f64;
        for p in xi.points.iter().rev() {
            let d = dot_i128(&p.nu, &a);
            if d.rem_euclid(wm) == 0 && cone_test_i64(&a, a_nsq, &p.nu, p.nu_norm_sq, gn, gd) {
                sum += 1.0 / (p.nu_norm_sq as f64).sqrt();
            }
        }
        let reference =
            0.5 * win.alpha * win.modulus.to_f64().unwrap() / (a_nsq as f64).sqrt() * sum;
        assert!((got - reference).abs() <= 1e-12 * reference.abs().max(1.0));
        // invariance under the sign of the coefficient vector
        let neg = Hypersurface::new(2, 3, v.coeffs.iter().map(|c| -c).collect()).unwrap();
        assert_eq!(neg, v);
    }

    #[test]
    fn aggregate_sum_small_case() {
        // B = 1 at (2,3): only the signed unit vectors, all dets 1, E = 48
        let e = aggregate_sum(2, 3, &rat(1, 1), AggregateKind::InverseDet).unwrap();
        assert!((e - 48.0).abs() < 1e-9);
        // F <= 2 E always
        let f = aggregate_sum(2, 3, &rat(16, 1), AggregateKind::ErrorWeighted).unwrap();
        let e = aggregate_sum(2, 3, &rat(16, 1), AggregateKind::InverseDet).unwrap();
        assert!(f <= 2.0 * e + 1e-9);
        assert!(f > 0.0);
    }

    /// Definition-level oracle: the raw ordered-pair sum with a full minor
    /// gcd per pair, no sign symmetry and no bucketing.
    fn aggregate_inverse_det_oracle(d: u32, n: usize, b: &Rat) -> f64 {
        let xi = build_xi(d, n, b).unwrap();
        let dim = n + 1;
        let mut sum = 0.0f64;
        for (i, p) in xi.points.iter().enumerate() {
            for (j, q) in xi.points.iter().enumerate() {
                if i == j || p.x.iter().zip(&q.x).all(|(s, t)| *s == -t) {
                    continue;
                }
                let mut g: i64 = 0;
                for s in 0..dim {
                    for t in s + 1..dim {
                        g = gcd_i64(g, p.x[s] * q.x[t] - p.x[t] * q.x[s]);
                    }
                }
                assert!(g >= 1);
                let dd = dot_i128(&p.nu, &q.nu);
                let det_sq = p.nu_norm_sq * q.nu_norm_sq - dd * dd;
                sum += g as f64 / (det_sq as f64).sqrt();
            }
        }
        sum
    }

    #[test]
    fn aggregate_sum_matches_definition_oracle() {
        for (d, n, b) in [(2u32, 3usize, 9i64), (2, 3, 16), (2, 2, 16), (3, 3, 5)] {
            let bq = rat(b, 1);
            let fast = aggregate_sum(d, n, &bq, AggregateKind::InverseDet).unwrap();
            let slow = aggregate_inverse_det_oracle(d, n, &bq);
            assert!(
                (fast - slow).abs() <= 1e-9 * slow.abs().max(1.0),
                "d={d} n={n} B={b}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn pair_error_indicator_cases() {
        let win = window(&rat(1_000_000, 1)).unwrap();
        let o = MonomialOrder::new(2, 2);
        // orthogonal units: delta = 1, G = 1
        let (first, ind) =
            pair_error_indicator(&o, &to_int_vec(&[1, 0, 0]), &to_int_vec(&[0, 1, 0]), &win)
                .unwrap();
        assert!(!ind);
        assert!((first - 1.0 / (win.alpha * win.alpha)).abs() < 1e-12);
        // G = 2 <= w divides W / rad W
        let (_, ind) =
            pair_error_indicator(&o, &to_int_vec(&[1, 1, 0]), &to_int_vec(&[1, -1, 0]), &win)
                .unwrap();
        assert!(!ind);
        // a pair with large minor gcd: y = x + 101 e2
        let x = to_int_vec(&[1, 0, 0]);
        let y = to_int_vec(&[1, 101, 0]);
        let (_, ind) = pair_error_indicator(&o, &x, &y, &win).unwrap();
        assert!(ind);
    }

    #[test]
    fn moments_tiny_family() {
        // no hypersurface of height <= 1 at (2,2) has a point of height <= 1/2
        let r = moments(2, 2, 1, &rat(1, 2), MomentKind::Global).unwrap();
        assert_eq!(r.value, 0.0);
        // D >= 0 always: it equals sum of N(N-1)
        let r = moments(2, 2, 2, &rat(6, 1), MomentKind::Global).unwrap();
        assert!(r.value >= 0.0);
        assert!(r.hypersurface_count > 0);
        // iota_{2,2} = V_4 / (8 zeta(4)) = 45 / (8 pi^2)
        let iota = ball_volume(4) / (8.0 * zeta(4));
        let expect = 45.0 / (8.0 * std::f64::consts::PI * std::f64::consts::PI);
        assert!((iota - expect).abs() < 1e-10);
        assert!((iota - 0.56990).abs() < 1e-4);
    }

    #[test]
    fn moment_cross_check_pair_sum() {
        // D computed per hypersurface equals the ordered-pair lattice-point
        // sum (1/8) sum over pairs of primitive a counts, on a tiny instance
        let d = 2u32;
        let n = 2usize;
        let a_bound = 2i64;
        let b = rat(4, 1);
        let r = moments(d, n, a_bound, &b, MomentKind::Global).unwrap();
        let xi = build_xi(d, n, &b).unwrap();
        let family = all_hypersurfaces(d, n, a_bound).unwrap();
        let mut pair_sum = 0u64;
        for (i, p) in xi.points.iter().enumerate() {
            for (j, q) in xi.points.iter().enumerate() {
                if i == j {
                    continue;
                }
                // skip y = -x
                if p.x.iter().zip(&q.x).all(|(s, t)| *s == -t) {
                    continue;
                }
                for a in &family {
                    if dot_i128(&p.nu, a) == 0 && dot_i128(&q.nu, a) == 0 {
                        pair_sum += 2; // both signs of a
                    }
                }
            }
        }
        assert!((r.value - pair_sum as f64 / 8.0).abs() < 1e-9);
    }

    #[test]
    fn enumerate_primitive_examples() {
        assert_eq!(enumerate_primitive(2, &rat(2, 1)).len(), 8);
        assert!(enumerate_primitive(2, &rat(1, 2)).is_empty());
        let one_dim = enumerate_primitive(1, &rat(3, 1));
        assert_eq!(one_dim, vec![vec![-1], vec![1]]);
        // graded order, no duplicates
        let v = enumerate_primitive(3, &rat(3, 1));
        let mut sorted = v.clone();
        sorted.dedup();
        assert_eq!(v.len(), sorted.len());
        for w in v.windows(2) {
            assert!(norm_sq_i64(&w[0]) <= norm_sq_i64(&w[1]));
        }
    }

    #[test]
    fn ell_counter_examples() {
        // six signed unit vectors in Z^3 have minimal rank-2 determinant 1
        let r = ell_counter(2, 2, &rat(1, 1), None, &rat(1, 1)).unwrap();
        assert_eq!(r.count, 6);
        assert!(!r.lower_bound_only);
        // delta >= X counts every nonzero vector of norm at most X
        let r = ell_counter(2, 2, &rat(2, 1), None, &rat(2, 1)).unwrap();
        assert_eq!(r.count as usize, crate::minima::zn_ball_i64(3, 4).len());
        // ordered independent unit pairs
        let r = ell_counter(2, 2, &rat(1, 1), Some(&rat(1, 1)), &rat(1, 1)).unwrap();
        assert_eq!(r.count, 24);
    }
}
