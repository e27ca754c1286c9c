//! Non-Archimedean local densities and solubility: exact sigma factors by
//! residue counting with smooth-point acceleration, p-adic solubility by
//! iterative deepening with replayable certificates, and real solubility by
//! certified sphere-grid search.

use crate::error::{Error, Result};
use crate::ivec::{Int, Rat};
use crate::counting::{primes_upto, window_exponent_pub, HeightWindow, Hypersurface};
use crate::veronese::{dimension, MonomialOrder};
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// #R_N(p^r) = p^{rN} (1 - p^{-N}), the primitive residue count.
pub fn residue_count(n_coords: usize, p: u64, r: u32) -> Int {
    let pr = Int::from(p).pow(r * n_coords as u32);
    let pn = Int::from(p).pow(n_coords as u32);
    &pr - &pr / pn
}

fn pow_u64(p: u64, e: u32) -> Option<u64> {
    let mut v: u64 = 1;
    for _ in 0..e {
        v = v.checked_mul(p)?;
    }
    Some(v)
}

/// Coefficients reduced into [0, m) as machine integers.
fn reduce_coeffs(a: &[Int], m: u64) -> Vec<i64> {
    let mm = Int::from(m);
    a.iter()
        .map(|c| c.mod_floor(&mm).to_i64().unwrap())
        .collect()
}

fn eval_form_mod(exps: &[Vec<u32>], a: &[i64], x: &[i64], m: u64) -> i64 {
    let mm = m as i128;
    let mut acc: i128 = 0;
    for (c, e) in a.iter().zip(exps) {
        if *c == 0 {
            continue;
        }
        let mut t: i128 = *c as i128;
        for (xi, &ei) in x.iter().zip(e) {
            for _ in 0..ei {
                t = (t * *xi as i128).rem_euclid(mm);
            }
        }
        acc = (acc + t).rem_euclid(mm);
    }
    acc as i64
}

fn eval_gradient_mod(exps: &[Vec<u32>], a: &[i64], x: &[i64], m: u64) -> Vec<i64> {
    let mm = m as i128;
    let nv = x.len();
    let mut g = vec![0i128; nv];
    for (c, e) in a.iter().zip(exps) {
        if *c == 0 {
            continue;
        }
        for i in 0..nv {
            if e[i] == 0 {
                continue;
            }
            let mut t: i128 = (*c as i128 * e[i] as i128).rem_euclid(mm);
            for (j, xj) in x.iter().enumerate() {
                let pow = if j == i { e[j] - 1 } else { e[j] };
                for _ in 0..pow {
                    t = (t * *xj as i128).rem_euclid(mm);
                }
            }
            g[i] = (g[i] + t).rem_euclid(mm);
        }
    }
    g.into_iter().map(|v| v as i64).collect()
}

fn valuation_capped(v: i64, p: u64, cap: u32) -> u32 {
    if v == 0 {
        return cap;
    }
    let mut v = v.unsigned_abs();
    let mut e = 0;
    while e < cap && v % p == 0 {
        v /= p;
        e += 1;
    }
    e
}

/// min_i v_p(g_i), capped.
fn gradient_valuation(g: &[i64], p: u64, cap: u32) -> u32 {
    g.iter()
        .map(|&v| valuation_capped(v, p, cap))
        .min()
        .unwrap_or(cap)
}

/// Exact count of primitive residues b mod p^r with f(b) = 0 mod p^r.
///
/// Classes with a unit gradient stop early: a smooth zero mod p^k lifts to
/// exactly p^((r-k)n) zeros mod p^r. Singular classes are branched
/// explicitly, child by child.
fn count_primitive_zeros(
    order: &MonomialOrder,
    a: &[Int],
    p: u64,
    r: u32,
    budget: &mut u64,
) -> Result<Int> {
    let m_top = pow_u64(p, r).ok_or_else(|| Error::Budget("prime power overflow".into()))?;
    let ar = reduce_coeffs(a, m_top);
    let nv = order.n + 1;
    let exps = &order.exponents;
    let n = order.n as u32;

    struct Ctx<'a> {
        exps: &'a [Vec<u32>],
        ar: &'a [i64],
        p: u64,
        r: u32,
        n: u32,
        nv: usize,
    }
    fn lifts(ctx: &Ctx, x: &[i64], k: u32, budget: &mut u64) -> Result<Int> {
        if *budget == 0 {
            return Err(Error::Budget("p-adic class expansion".into()));
        }
        *budget -= 1;
        if k == ctx.r {
            return Ok(Int::one());
        }
        let mk = pow_u64(ctx.p, k).unwrap();
        let g = eval_gradient_mod(ctx.exps, ctx.ar, x, mk.max(ctx.p));
        let e = gradient_valuation(&g, ctx.p, k);
        if e == 0 {
            // smooth class: p^n lifts per remaining level
            return Ok(Int::from(ctx.p).pow((ctx.r - k) * ctx.n));
        }
        // branch to the next level
        let mk1 = pow_u64(ctx.p, k + 1).ok_or_else(|| Error::Budget("prime power".into()))?;
        let mut total = Int::zero();
        let mut child = x.to_vec();
        let mut t = vec![0u64; ctx.nv];
        loop {
            for i in 0..ctx.nv {
                child[i] = x[i] + (t[i] * mk) as i64;
            }
            if eval_form_mod(ctx.exps, ctx.ar, &child, mk1) == 0 {
                total += lifts(ctx, &child, k + 1, budget)?;
            }
            // odometer over (Z/p)^{nv}
            let mut i = 0;
            loop {
                if i == ctx.nv {
                    return Ok(total);
                }
                t[i] += 1;
                if t[i] < ctx.p {
                    break;
                }
                t[i] = 0;
                i += 1;
            }
        }
    }

    let ctx = Ctx {
        exps,
        ar: &ar,
        p,
        r,
        n,
        nv,
    };
    let mut total = Int::zero();
    let mut x = vec![0i64; nv];
    loop {
        if x.iter().any(|&v| v % p as i64 != 0) && eval_form_mod(exps, &ar, &x, p) == 0 {
            total += lifts(&ctx, &x, 1, budget)?;
        }
        let mut i = 0;
        loop {
            if i == nv {
                return Ok(total);
            }
            x[i] += 1;
            if x[i] < p as i64 {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// sigma(a; p^r) = p^{-rn} #{b in R_{n+1}(p^r) : <nu(b), a> = 0 mod p^r},
/// exact. Handles coefficient vectors divisible by p by factoring the power
/// out of the congruence.
pub fn sigma_prime_power(order: &MonomialOrder, a: &[Int], p: u64, r: u32) -> Result<Rat> {
    assert!(r >= 1);
    if a.len() != order.len() {
        return Err(Error::DimensionMismatch(a.len(), order.len()));
    }
    let pi = Int::from(p);
    let mut t = 0u32;
    let mut reduced: Vec<Int> = a.to_vec();
    while t < r && reduced.iter().all(|c| c.is_multiple_of(&pi)) {
        for c in reduced.iter_mut() {
            *c = &*c / &pi;
        }
        t += 1;
    }
    let n = order.n as u32;
    if t == r {
        // vacuous congruence: every primitive residue counts
        let count = residue_count(order.n + 1, p, r);
        return Ok(Rat::new(count, pi.pow(r * n)));
    }
    let mut budget = 200_000_000u64;
    let count = count_primitive_zeros(order, &reduced, p, r - t, &mut budget)?;
    // each solution mod p^{r-t} has p^{t(n+1)} lifts of b mod p^r
    let total = count * pi.pow(t * (n + 1));
    Ok(Rat::new(total, pi.pow(r * n)))
}

/// Brute-force oracle for sigma, full residue enumeration.
pub fn sigma_prime_power_naive(order: &MonomialOrder, a: &[Int], p: u64, r: u32) -> Result<Rat> {
    let m = pow_u64(p, r).ok_or_else(|| Error::Budget("prime power overflow".into()))?;
    let nv = order.n + 1;
    if (m as f64).powi(nv as i32) > 5e8 {
        return Err(Error::Budget("naive sigma enumeration".into()));
    }
    let ar = reduce_coeffs(a, m);
    let mut count = 0u64;
    let mut x = vec![0i64; nv];
    loop {
        if x.iter().any(|&v| v % p as i64 != 0) && eval_form_mod(&order.exponents, &ar, &x, m) == 0
        {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nv {
                return Ok(Rat::new(
                    Int::from(count),
                    Int::from(p).pow(r * order.n as u32),
                ));
            }
            x[i] += 1;
            if x[i] < m as i64 {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// sigma(a; Q) as the product of the prime-power factors of Q.
pub fn sigma_crt(order: &MonomialOrder, a: &[Int], q: &Int) -> Result<Rat> {
    if !q.is_positive() {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    let mut q64 = q
        .to_u64()
        .ok_or_else(|| Error::Budget("modulus exceeds machine range".into()))?;
    let mut out = Rat::one();
    let mut p = 2u64;
    while p * p <= q64 {
        if q64 % p == 0 {
            let mut r = 0u32;
            while q64 % p == 0 {
                q64 /= p;
                r += 1;
            }
            out *= sigma_prime_power(order, a, p, r)?;
        }
        p += 1;
    }
    if q64 > 1 {
        out *= sigma_prime_power(order, a, q64, 1)?;
    }
    Ok(out)
}

/// The per-prime factors of sigma(a; W) for the window modulus W.
pub fn sigma_window_factors(
    v: &Hypersurface,
    win: &HeightWindow,
) -> Result<Vec<(u64, u32, Rat)>> {
    let order = MonomialOrder::new(v.d, v.n);
    let mut out = Vec::new();
    for p in primes_upto(win.w.floor() as u64) {
        let r = window_exponent_pub(p, win.w) + 1;
        let s = sigma_prime_power(&order, &v.coeffs, p, r)?;
        out.push((p, r, s));
    }
    Ok(out)
}

/// The non-Archimedean window factor sigma(a_V; W) as a float, with the
/// exact per-prime rationals alongside.
pub fn sigma_window(v: &Hypersurface, win: &HeightWindow) -> Result<(f64, Vec<(u64, u32, Rat)>)> {
    let factors = sigma_window_factors(v, win)?;
    let mut prod = 1.0f64;
    for (_, _, s) in &factors {
        prod *= s.to_f64().unwrap();
    }
    Ok((prod, factors))
}

/// Gradient valuation e of a zero x of f mod p^r, clipped to [0, r].
pub fn singular_class(
    order: &MonomialOrder,
    a: &[Int],
    p: u64,
    r: u32,
    x: &[i64],
) -> Result<u32> {
    let m = pow_u64(p, r).ok_or_else(|| Error::Budget("prime power overflow".into()))?;
    let ar = reduce_coeffs(a, m);
    if x.iter().all(|&v| v % p as i64 == 0) {
        return Err(Error::Invalid("residue must be primitive".into()));
    }
    if eval_form_mod(&order.exponents, &ar, x, m) != 0 {
        return Err(Error::Invalid("not a zero of the form at this depth".into()));
    }
    let g = eval_gradient_mod(&order.exponents, &ar, x, m);
    Ok(gradient_valuation(&g, p, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "SOLUBLE")]
    Soluble,
    #[serde(rename = "INSOLUBLE")]
    Insoluble,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// Per-prime solubility certificate. A soluble verdict carries either a
/// witness residue of depth r with gradient valuation e and r >= 2e + 1
/// (which lifts to a p-adic solution), or an exact integer zero of the form
/// (`exact` set), which is a solution at every place at once. An insoluble
/// verdict records the refutation depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalVerdict {
    pub p: u64,
    pub status: Status,
    pub witness: Option<Vec<i64>>,
    pub depth: u32,
    pub e: u32,
    pub exact: bool,
}

/// Exact integer zero test on the centered representative of a residue
/// class; a hit is a solution at every place.
fn exact_zero_witness(order: &MonomialOrder, a: &[Int], x: &[i64], modulus: u64) -> Option<Vec<i64>> {
    let half = (modulus / 2) as i64;
    let m = modulus as i64;
    let centered: Vec<i64> = x.iter().map(|&v| if v > half { v - m } else { v }).collect();
    if centered.iter().all(|&v| v == 0) {
        return None;
    }
    let g = crate::ivec::content_i64(&centered);
    let prim: Vec<i64> = centered.iter().map(|&v| v / g).collect();
    if eval_form_exact(&order.exponents, a, &prim).is_zero() {
        return Some(prim);
    }
    None
}

/// Iterative deepening over zero classes mod p^k. Classes whose gradient
/// valuation e satisfies k >= 2e + 1 certify solubility, as does an exact
/// integer zero appearing as a centered class representative (this catches
/// forms whose only zeros are singular, where the Hensel criterion can never
/// fire). An empty class list refutes solubility; exhausting the depth cap
/// or the work budget returns Unknown.
pub fn p_adic_soluble(order: &MonomialOrder, a: &[Int], p: u64, r_max: u32) -> Result<LocalVerdict> {
    assert!(r_max >= 1);
    let nv = order.n + 1;
    let mut work_budget: i64 = 4_000_000;
    // level 1: all primitive residues mod p
    let m1 = p;
    let ar1 = reduce_coeffs(a, m1);
    let mut classes: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; nv];
    'outer: loop {
        work_budget -= 1;
        if x.iter().any(|&v| v % p as i64 != 0) && eval_form_mod(&order.exponents, &ar1, &x, m1) == 0
        {
            let g = eval_gradient_mod(&order.exponents, &ar1, &x, m1);
            if gradient_valuation(&g, p, 1) == 0 {
                return Ok(LocalVerdict {
                    p,
                    status: Status::Soluble,
                    witness: Some(x.clone()),
                    depth: 1,
                    e: 0,
                    exact: false,
                });
            }
            if let Some(w) = exact_zero_witness(order, a, &x, p) {
                return Ok(LocalVerdict {
                    p,
                    status: Status::Soluble,
                    witness: Some(w),
                    depth: 1,
                    e: 1,
                    exact: true,
                });
            }
            classes.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == nv {
                break 'outer;
            }
            x[i] += 1;
            if x[i] < p as i64 {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
    if classes.is_empty() {
        return Ok(LocalVerdict {
            p,
            status: Status::Insoluble,
            witness: None,
            depth: 1,
            e: 0,
            exact: false,
        });
    }
    let mut k = 1u32;
    while k < r_max {
        let mk = match pow_u64(p, k) {
            Some(v) => v,
            None => break,
        };
        let mk1 = match pow_u64(p, k + 1) {
            Some(v) => v,
            None => break,
        };
        let branch = p.checked_pow(nv as u32).unwrap_or(u64::MAX) as i64;
        if work_budget < (classes.len() as i64).saturating_mul(branch) {
            break;
        }
        work_budget -= (classes.len() as i64) * branch;
        let ar = reduce_coeffs(a, mk1);
        let mut next: Vec<Vec<i64>> = Vec::new();
        for base in &classes {
            let mut t = vec![0u64; nv];
            let mut child = base.clone();
            loop {
                for i in 0..nv {
                    child[i] = base[i] + (t[i] * mk) as i64;
                }
                if eval_form_mod(&order.exponents, &ar, &child, mk1) == 0 {
                    let g = eval_gradient_mod(&order.exponents, &ar, &child, mk1);
                    let e = gradient_valuation(&g, p, k + 1);
                    if e < k + 1 && k + 1 >= 2 * e + 1 {
                        return Ok(LocalVerdict {
                            p,
                            status: Status::Soluble,
                            witness: Some(child.clone()),
                            depth: k + 1,
                            e,
                            exact: false,
                        });
                    }
                    if let Some(w) = exact_zero_witness(order, a, &child, mk1) {
                        return Ok(LocalVerdict {
                            p,
                            status: Status::Soluble,
                            witness: Some(w),
                            depth: k + 1,
                            e,
                            exact: true,
                        });
                    }
                    next.push(child.clone());
                }
                let mut i = 0;
                loop {
                    if i == nv {
                        break;
                    }
                    t[i] += 1;
                    if t[i] < p {
                        break;
                    }
                    t[i] = 0;
                    i += 1;
                }
                if t.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
        if next.is_empty() {
            return Ok(LocalVerdict {
                p,
                status: Status::Insoluble,
                witness: None,
                depth: k + 1,
                e: 0,
                exact: false,
            });
        }
        classes = next;
        k += 1;
    }
    Ok(LocalVerdict {
        p,
        status: Status::Unknown,
        witness: None,
        depth: r_max,
        e: 0,
        exact: false,
    })
}

/// Independent certificate checker.
pub fn replay_verdict(order: &MonomialOrder, a: &[Int], v: &LocalVerdict) -> Result<bool> {
    match v.status {
        Status::Soluble => {
            let w = v.witness.as_ref().ok_or_else(|| Error::Invalid("missing witness".into()))?;
            if v.exact {
                // an exact nontrivial integer zero solves every completion
                return Ok(w.iter().any(|&t| t != 0)
                    && eval_form_exact(&order.exponents, a, w).is_zero());
            }
            if v.depth < 2 * v.e + 1 {
                return Ok(false);
            }
            let e = singular_class(order, a, v.p, v.depth, w)?;
            Ok(e == v.e)
        }
        Status::Insoluble => {
            // exhaustive recheck at the refutation depth
            let m = pow_u64(v.p, v.depth).ok_or_else(|| Error::Budget("replay depth".into()))?;
            let nv = order.n + 1;
            if (m as f64).powi(nv as i32) > 2e8 {
                return Err(Error::Budget("refutation replay".into()));
            }
            let ar = reduce_coeffs(a, m);
            let mut x = vec![0i64; nv];
            loop {
                if x.iter().any(|&t| t % v.p as i64 != 0)
                    && eval_form_mod(&order.exponents, &ar, &x, m) == 0
                {
                    return Ok(false);
                }
                let mut i = 0;
                loop {
                    if i == nv {
                        return Ok(true);
                    }
                    x[i] += 1;
                    if x[i] < m as i64 {
                        break;
                    }
                    x[i] = 0;
                    i += 1;
                }
            }
        }
        Status::Unknown => Ok(true),
    }
}

/// Certified overestimate of max ||grad f_a(x)|| over unit a and unit x:
/// each monomial gradient has squared norm at most d^2 on the unit ball.
pub fn gradient_bound_sq(d: u32, n: usize) -> Rat {
    Rat::from(Int::from(d as u64 * d as u64 * dimension(d, n) as u64))
}

#[derive(Debug, Clone)]
pub struct RealVerdict {
    pub status: Status,
    /// Grid direction with f > 0 and one with f < 0, or an exact zero
    /// (stored in both slots) when soluble via the grid.
    pub witness: Option<(Vec<i64>, Vec<i64>)>,
    /// Final grid refinement parameter.
    pub grid: u64,
}

fn eval_form_exact(exps: &[Vec<u32>], a: &[Int], u: &[i64]) -> Int {
    let mut acc = Int::zero();
    for (c, e) in a.iter().zip(exps) {
        if c.is_zero() {
            continue;
        }
        let mut t: i128 = 1;
        for (ui, &ei) in u.iter().zip(e) {
            for _ in 0..ei {
                t *= *ui as i128;
            }
        }
        acc += c * Int::from(t);
    }
    acc
}

fn cube_surface_points(nv: usize, g: i64, mut f: impl FnMut(&[i64]) -> bool) -> bool {
    // points with ||u||_inf = g, each exactly once: coordinate `face` is the
    // first one attaining +-g
    let mut u = vec![0i64; nv];
    for face in 0..nv {
        for sign in [g, -g] {
            u[face] = sign;
            // coords before `face` range in (-g, g), after in [-g, g]
            let lo: Vec<i64> = (0..nv)
                .map(|i| if i < face { -g + 1 } else { -g })
                .collect();
            let hi: Vec<i64> = (0..nv)
                .map(|i| if i < face { g - 1 } else { g })
                .collect();
            let free: Vec<usize> = (0..nv).filter(|&i| i != face).collect();
            for &i in &free {
                u[i] = lo[i];
            }
            loop {
                if !f(&u) {
                    return false;
                }
                let mut j = 0;
                loop {
                    if j == free.len() {
                        break;
                    }
                    let i = free[j];
                    u[i] += 1;
                    if u[i] <= hi[i] {
                        break;
                    }
                    u[i] = lo[i];
                    j += 1;
                }
                if j == free.len() {
                    break;
                }
            }
        }
        u[face] = 0;
    }
    true
}

/// Real solubility of the form on the unit sphere.
///
/// Odd degree is always soluble. For even degree the cube-surface grid is
/// scanned: an exact zero or a sign change certifies a real point; if the
/// scaled values stay above the Lipschitz threshold delta * M * ||a|| with
/// delta = sqrt(n)/G the form is certified nonvanishing; otherwise the grid
/// is refined up to `grid_depth` doublings from G = 8.
pub fn real_soluble(order: &MonomialOrder, a: &[Int], grid_depth: u32) -> Result<RealVerdict> {
    let d = order.d;
    let n = order.n;
    if d % 2 == 1 {
        return Ok(RealVerdict {
            status: Status::Soluble,
            witness: None,
            grid: 0,
        });
    }
    let m_sq = gradient_bound_sq(d, n);
    let a_norm_sq = crate::ivec::norm_sq(a);
    let mut g: i64 = 8;
    for _ in 0..=grid_depth {
        let mut pos: Option<Vec<i64>> = None;
        let mut neg: Option<Vec<i64>> = None;
        let mut zero: Option<Vec<i64>> = None;
        let mut certified = true;
        // threshold^2 = (n / G^2) * M^2 * ||a||^2, exact rational
        let thresh_sq = Rat::new(Int::from(n as i64), Int::from(g * g)) * &m_sq
            * Rat::from(a_norm_sq.clone());
        cube_surface_points(n + 1, g, |u| {
            let v = eval_form_exact(&order.exponents, a, u);
            if v.is_zero() {
                zero = Some(u.to_vec());
                return false;
            }
            if v.is_positive() {
                if pos.is_none() {
                    pos = Some(u.to_vec());
                }
            } else if neg.is_none() {
                neg = Some(u.to_vec());
            }
            if pos.is_some() && neg.is_some() {
                return false;
            }
            if certified {
                // |f(u)|^2 > thresh^2 * ||u||^(2d) needed for the certificate
                let u_norm_sq: i128 = u.iter().map(|&t| (t as i128) * (t as i128)).sum();
                let mut rhs = thresh_sq.clone();
                for _ in 0..d {
                    rhs *= Rat::from(Int::from(u_norm_sq));
                }
                if Rat::from(&v * &v) <= rhs {
                    certified = false;
                }
            }
            true
        });
        if let Some(z) = zero {
            return Ok(RealVerdict {
                status: Status::Soluble,
                witness: Some((z.clone(), z)),
                grid: g as u64,
            });
        }
        if let (Some(p), Some(q)) = (pos.clone(), neg.clone()) {
            return Ok(RealVerdict {
                status: Status::Soluble,
                witness: Some((p, q)),
                grid: g as u64,
            });
        }
        if certified {
            return Ok(RealVerdict {
                status: Status::Insoluble,
                witness: None,
                grid: g as u64,
            });
        }
        g *= 2;
    }
    Ok(RealVerdict {
        status: Status::Unknown,
        witness: None,
        grid: (g / 2) as u64,
    })
}

/// Exact mean of sigma(a; p^r) over primitive coefficient residues:
/// (1 - p^{-(n+1)}) (1 - p^{-(N-1)}) / (1 - p^{-N}).
pub fn sigma_mean_formula(d: u32, n: usize, p: u64, _r: u32) -> Rat {
    let big_n = dimension(d, n) as u32;
    let pi = Int::from(p);
    let one = Rat::one();
    let term = |e: u32| &one - Rat::new(Int::one(), pi.pow(e));
    term((n + 1) as u32) * term(big_n - 1) / term(big_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec::{rat, to_int_vec};

    fn coeffs_of(d: u32, n: usize, terms: &[(&[u32], i64)]) -> Vec<Int> {
        let o = MonomialOrder::new(d, n);
        let mut c = vec![Int::zero(); o.len()];
        for (e, v) in terms {
            let idx = o.exponents.iter().position(|x| x.as_slice() == *e).unwrap();
            c[idx] = Int::from(*v);
        }
        c
    }

    #[test]
    fn sigma_examples() {
        let o = MonomialOrder::new(2, 1);
        // f = x0 x1 at p = 3: 4 of the 8 primitive residues vanish
        let a = coeffs_of(2, 1, &[(&[1, 1], 1)]);
        assert_eq!(sigma_prime_power(&o, &a, 3, 1).unwrap(), rat(4, 3));
        // f = x0^2: b0 = 0 forced
        let a = coeffs_of(2, 1, &[(&[2, 0], 1)]);
        assert_eq!(sigma_prime_power(&o, &a, 3, 1).unwrap(), rat(2, 3));
        // vacuous congruence: a = 0 mod p^r
        let a = to_int_vec(&[3, 3, 3]);
        let s = sigma_prime_power(&o, &a, 3, 1).unwrap();
        assert_eq!(s, rat(8, 3));
    }

    #[test]
    fn sigma_matches_naive_oracle() {
        let o = MonomialOrder::new(2, 2);
        let forms: Vec<Vec<Int>> = vec![
            coeffs_of(2, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], -1)]),
            coeffs_of(2, 2, &[(&[1, 1, 0], 1), (&[0, 0, 2], -3)]),
            coeffs_of(2, 2, &[(&[2, 0, 0], 2), (&[0, 1, 1], 5)]),
        ];
        for a in &forms {
            for (p, r) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
                let fast = sigma_prime_power(&o, a, p, r).unwrap();
                let slow = sigma_prime_power_naive(&o, a, p, r).unwrap();
                assert_eq!(fast, slow, "p={p} r={r}");
            }
        }
    }

    #[test]
    fn sigma_crt_multiplicative() {
        let o = MonomialOrder::new(2, 1);
        let a = coeffs_of(2, 1, &[(&[2, 0], 1), (&[0, 2], -2)]);
        let q6 = sigma_crt(&o, &a, &Int::from(6)).unwrap();
        let q2 = sigma_prime_power(&o, &a, 2, 1).unwrap();
        let q3 = sigma_prime_power(&o, &a, 3, 1).unwrap();
        assert_eq!(q6, q2 * &q3);
        assert_eq!(sigma_crt(&o, &a, &Int::one()).unwrap(), rat(1, 1));
        // direct mod-6 enumeration oracle
        let mut count = 0u64;
        for b0 in 0..6i64 {
            for b1 in 0..6i64 {
                if crate::ivec::gcd_i64(crate::ivec::gcd_i64(b0, b1), 6) == 1 {
                    if (b0 * b0 - 2 * b1 * b1).rem_euclid(6) == 0 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(q6, Rat::new(Int::from(count), Int::from(6)));
        assert_eq!(sigma_crt(&o, &a, &Int::from(3)).unwrap(), q3);
    }

    #[test]
    fn sigma_bounds() {
        // 0 <= sigma(a; p^r) <= p^r
        let o = MonomialOrder::new(2, 1);
        for aa in [[1i64, 0, 1], [1, 2, 3], [0, 1, 0], [2, 0, 50]] {
            for (p, r) in [(2u64, 1u32), (2, 3), (3, 2), (5, 1)] {
                let s = sigma_prime_power(&o, &to_int_vec(&aa), p, r).unwrap();
                assert!(!s.is_negative());
                assert!(s <= Rat::from(Int::from(p).pow(r)));
            }
        }
    }

    #[test]
    fn singular_class_examples() {
        // f = x0 x1 at p=3, x=(0,1): gradient (1, 0), e = 0
        let o = MonomialOrder::new(2, 1);
        let a = coeffs_of(2, 1, &[(&[1, 1], 1)]);
        assert_eq!(singular_class(&o, &a, 3, 1, &[0, 1]).unwrap(), 0);
        // f = (x0+x1)^2 at p=3, r=2, x=(1,-1)=(1,8) mod 9: gradient is 0 mod 9
        let a = coeffs_of(2, 1, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert_eq!(singular_class(&o, &a, 3, 2, &[1, 8]).unwrap(), 2);
        // non-zero input is rejected
        assert!(singular_class(&o, &a, 3, 1, &[1, 1]).is_err());
    }

    #[test]
    fn p_adic_solubility_examples() {
        // x0^2 + x1^2 + x2^2 at p = 2: refuted (no primitive zero mod 4)
        let o = MonomialOrder::new(2, 2);
        let a = coeffs_of(2, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        let v = p_adic_soluble(&o, &a, 2, 10).unwrap();
        assert_eq!(v.status, Status::Insoluble);
        assert!(v.depth <= 3);
        assert!(replay_verdict(&o, &a, &v).unwrap());

        // x0^2 + x1^2 - x2^2 at p = 2: (0,1,1) is an exact zero
        let a = coeffs_of(2, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], -1)]);
        let v = p_adic_soluble(&o, &a, 2, 10).unwrap();
        assert_eq!(v.status, Status::Soluble);
        assert!(v.exact || v.depth >= 2 * v.e + 1);
        assert!(replay_verdict(&o, &a, &v).unwrap());

        // a singular but soluble form: the kernel vector (1,2,1) is found as
        // an exact zero even though every class stays singular
        let a = coeffs_of(
            2,
            2,
            &[
                (&[2, 0, 0], 4),
                (&[1, 1, 0], -1),
                (&[1, 0, 1], -6),
                (&[0, 2, 0], 1),
                (&[0, 1, 1], -3),
                (&[0, 0, 2], 6),
            ],
        );
        for p in [2u64, 3, 5, 47] {
            let v = p_adic_soluble(&o, &a, p, 20).unwrap();
            assert_eq!(v.status, Status::Soluble, "p = {p}");
            assert!(replay_verdict(&o, &a, &v).unwrap());
        }

        // x0^3 + x1^3 + x2^3 at p = 7: smooth zero at depth 1
        let o3 = MonomialOrder::new(3, 2);
        let a = coeffs_of(3, 2, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
        let v = p_adic_soluble(&o3, &a, 7, 10).unwrap();
        assert_eq!(v.status, Status::Soluble);
        assert_eq!((v.depth, v.e), (1, 0));
        assert!(replay_verdict(&o3, &a, &v).unwrap());
    }

    #[test]
    fn real_solubility_examples() {
        // odd degree
        let o3 = MonomialOrder::new(3, 2);
        let a = coeffs_of(3, 2, &[(&[3, 0, 0], 1)]);
        assert_eq!(real_soluble(&o3, &a, 3).unwrap().status, Status::Soluble);

        // definite form: certified insoluble
        let o = MonomialOrder::new(2, 2);
        let a = coeffs_of(2, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        let v = real_soluble(&o, &a, 5).unwrap();
        assert_eq!(v.status, Status::Insoluble);

        // sign change
        let a = coeffs_of(2, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], -1)]);
        let v = real_soluble(&o, &a, 5).unwrap();
        assert_eq!(v.status, Status::Soluble);
    }

    #[test]
    fn sigma_mean_formula_values() {
        assert_eq!(sigma_mean_formula(2, 1, 2, 1), rat(9, 14));
        assert_eq!(sigma_mean_formula(2, 2, 2, 1), rat(31, 36));
        assert_eq!(sigma_mean_formula(2, 1, 3, 1), rat(32, 39));
    }

    #[test]
    fn residue_counts() {
        assert_eq!(residue_count(2, 3, 1), Int::from(8));
        assert_eq!(residue_count(3, 2, 2), Int::from(56));
        // p^{rN}(1 - p^{-N}): 2^6 - 2^3 = 56
    }
}
