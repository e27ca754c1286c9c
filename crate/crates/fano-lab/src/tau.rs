//! Archimedean densities by Monte Carlo: the cone-volume factor tau, the
//! hyperplane and double-slab volumes with their leading terms, and the
//! product-of-local-factors monitor.
//!
//! Samples are dyadic rationals, so every accept/reject decision is an exact
//! integer comparison and runs are bit-reproducible for a given seed.

use crate::counting::{window, Hypersurface};
use crate::error::Result;
use crate::ivec::{Int, Rat};
use crate::local::sigma_window;
use crate::numerics::ball_volume;
use crate::veronese::MonomialOrder;
use num::{BigRational, FromPrimitive, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Resolution of the dyadic sampling grid inside the unit cube.
const GRID_BITS: u32 = 20;
const GRID: i64 = 1 << GRID_BITS;

#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub accepted: u64,
    pub samples: u64,
}

/// tau(a; gamma) = gamma * vol{ u in unit ball : 4 gamma^2 <nu(u), a>^2 <=
/// ||nu(u)||^2 ||a||^2 }, estimated by rejection sampling from the cube.
/// The cone predicate is evaluated in exact arithmetic on the dyadic sample.
pub fn tau_mc(
    order: &MonomialOrder,
    a: &[Int],
    gamma: f64,
    samples: u64,
    seed: u64,
) -> McEstimate {
    assert!(samples >= 1 && gamma > 0.0);
    let nv = order.n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma_rat = BigRational::from_f64(gamma).expect("finite gamma");
    // 4 gamma^2 as an exact rational
    let four_gamma_sq = Rat::from(Int::from(4)) * &gamma_rat * &gamma_rat;
    let a_norm_sq = crate::ivec::norm_sq(a);
    let mut accepted = 0u64;
    let mut k = vec![Int::zero(); nv];
    for _ in 0..samples {
        // uniform point of the ball: rejection from the cube
        loop {
            let mut nsq: i128 = 0;
            for ki in k.iter_mut() {
                let t = rng.gen_range(-GRID..=GRID);
                nsq += (t as i128) * (t as i128);
                *ki = Int::from(t);
            }
            if nsq <= (GRID as i128) * (GRID as i128) {
                break;
            }
        }
        // predicate on u = k / 2^GRID_BITS; homogeneous in u, so the integer
        // image nu(k) decides exactly
        let nu = order.veronese(&k);
        let d = crate::ivec::dot(&nu, a);
        if d.is_zero() {
            accepted += 1;
            continue;
        }
        let lhs = &four_gamma_sq * Rat::from(&d * &d);
        let rhs = Rat::from(crate::ivec::norm_sq(&nu) * &a_norm_sq);
        if lhs <= rhs {
            accepted += 1;
        }
    }
    let vol = ball_volume(nv);
    let p = accepted as f64 / samples as f64;
    McEstimate {
        estimate: gamma * vol * p,
        std_error: gamma * vol * (p * (1.0 - p) / samples as f64).sqrt(),
        accepted,
        samples,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub leading_term: f64,
    /// Set when the exact degenerate value was returned instead of sampling.
    pub degenerate: bool,
}

fn delta(w: &[f64], z: &[f64]) -> f64 {
    let ww: f64 = w.iter().map(|x| x * x).sum();
    let zz: f64 = z.iter().map(|x| x * x).sum();
    let wz: f64 = w.iter().zip(z).map(|(x, y)| x * y).sum();
    ww * zz - wz * wz
}

fn assert_independent(w: &[f64], z: &[f64]) {
    assert_eq!(w.len(), z.len());
    assert!(delta(w, z) > 0.0, "vectors must be linearly independent");
}

/// Uniform point in the unit ball of R^dim by rejection from the cube.
fn ball_sample(rng: &mut ChaCha8Rng, dim: usize, buf: &mut [f64]) {
    loop {
        let mut nsq = 0.0;
        for b in buf.iter_mut().take(dim) {
            *b = rng.gen_range(-1.0f64..=1.0);
            nsq += *b * *b;
        }
        if nsq <= 1.0 {
            return;
        }
    }
}

/// (N-1)-volume of { t in w^perp : |<z,t>| <= ||t|| <= 1 } with the leading
/// term 2 (N-2)/(N-1) V_{N-2} ||w|| / delta^(1/2); exactly V_{N-1} in the
/// degenerate branch ||w||^2 >= delta.
pub fn volume_hyperplane_slab(
    w: &[f64],
    z: &[f64],
    samples: u64,
    seed: u64,
) -> VolumeEstimate {
    assert_independent(w, z);
    let n = w.len();
    let ww: f64 = w.iter().map(|x| x * x).sum();
    let del = delta(w, z);
    let leading =
        2.0 * (n as f64 - 2.0) / (n as f64 - 1.0) * ball_volume(n - 2) * ww.sqrt() / del.sqrt();
    if ww >= del {
        return VolumeEstimate {
            estimate: ball_volume(n - 1),
            std_error: 0.0,
            leading_term: leading,
            degenerate: true,
        };
    }
    // orthonormal basis of w^perp from the coordinate directions
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        dirs.push(e);
    }
    for mut v in dirs {
        let wv: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        for i in 0..n {
            v[i] -= wv * w[i] / ww;
        }
        for b in &basis {
            let c: f64 = b.iter().zip(&v).map(|(a, t)| a * t).sum();
            for i in 0..n {
                v[i] -= c * b[i];
            }
        }
        let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nv > 1e-9 {
            for x in v.iter_mut() {
                *x /= nv;
            }
            basis.push(v);
            if basis.len() == n - 1 {
                break;
            }
        }
    }
    assert_eq!(basis.len(), n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf = vec![0.0f64; n - 1];
    let mut accepted = 0u64;
    for _ in 0..samples {
        ball_sample(&mut rng, n - 1, &mut buf);
        // t = sum buf_i basis_i, so ||t|| = ||buf||
        let mut zt = 0.0;
        for (c, b) in buf.iter().zip(&basis) {
            let zb: f64 = z.iter().zip(b).map(|(a, t)| a * t).sum();
            zt += c * zb;
        }
        let tn = buf.iter().map(|x| x * x).sum::<f64>().sqrt();
        if zt.abs() <= tn {
            accepted += 1;
        }
    }
    let p = accepted as f64 / samples as f64;
    let vol = ball_volume(n - 1);
    VolumeEstimate {
        estimate: vol * p,
        std_error: vol * (p * (1.0 - p) / samples as f64).sqrt(),
        leading_term: leading,
        degenerate: false,
    }
}

/// N-volume of { t in unit ball : |<w,t>|, |<z,t>| <= ||t|| } with leading
/// term 4 (N-2)/N V_{N-2} / delta^(1/2). Inputs are ordered canonically so
/// the estimate is symmetric under swapping w and z.
pub fn volume_double_slab(w: &[f64], z: &[f64], samples: u64, seed: u64) -> VolumeEstimate {
    assert_independent(w, z);
    let n = w.len();
    let del = delta(w, z);
    let leading = 4.0 * (n as f64 - 2.0) / n as f64 * ball_volume(n - 2) / del.sqrt();
    let (first, second) = if w.iter().zip(z).find(|(a, b)| a != b).map(|(a, b)| a < b).unwrap_or(false)
    {
        (w, z)
    } else {
        (z, w)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf = vec![0.0f64; n];
    let mut accepted = 0u64;
    for _ in 0..samples {
        ball_sample(&mut rng, n, &mut buf);
        let tn = buf.iter().map(|x| x * x).sum::<f64>().sqrt();
        let wt: f64 = first.iter().zip(&buf).map(|(a, b)| a * b).sum();
        let zt: f64 = second.iter().zip(&buf).map(|(a, b)| a * b).sum();
        if wt.abs() <= tn && zt.abs() <= tn {
            accepted += 1;
        }
    }
    let p = accepted as f64 / samples as f64;
    let vol = ball_volume(n);
    VolumeEstimate {
        estimate: vol * p,
        std_error: vol * (p * (1.0 - p) / samples as f64).sqrt(),
        leading_term: leading,
        degenerate: false,
    }
}

#[derive(Debug, Clone)]
pub struct MonitorReport {
    pub sigma: f64,
    pub tau: f64,
    pub n_loc: f64,
    /// sigma * tau / ((||a||/B) N_loc + B^{-1/n}), logged, not asserted.
    pub ratio: f64,
}

/// Product-of-local-factors monitor at a given height bound.
pub fn local_product_monitor(
    v: &Hypersurface,
    b: &Rat,
    tau_samples: u64,
    seed: u64,
) -> Result<MonitorReport> {
    let win = window(b)?;
    let (sigma, _) = sigma_window(v, &win)?;
    let order = MonomialOrder::new(v.d, v.n);
    let tau = tau_mc(&order, &v.coeffs, win.alpha, tau_samples, seed).estimate;
    let xi = crate::counting::build_xi(v.d, v.n, b)?;
    let n_loc = crate::counting::localized_count(v, &xi, &win)?;
    let bf = b.to_f64().unwrap();
    let norm_a = v.norm_sq().to_f64().unwrap().sqrt();
    let floor = bf.powf(-1.0 / v.n as f64);
    let ratio = sigma * tau / ((norm_a / bf) * n_loc + floor);
    Ok(MonitorReport {
        sigma,
        tau,
        n_loc,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec::to_int_vec;
    use num::{One, Zero};

    fn sum_of_squares(n: usize) -> Vec<Int> {
        let o = MonomialOrder::new(2, n);
        o.exponents
            .iter()
            .map(|e| {
                if e.iter().any(|&x| x == 2) {
                    Int::one()
                } else {
                    Int::zero()
                }
            })
            .collect()
    }

    #[test]
    fn tau_definite_form_vanishes_exactly() {
        for n in [2usize, 3] {
            let o = MonomialOrder::new(2, n);
            let a = sum_of_squares(n);
            let est = tau_mc(&o, &a, 2.0, 20_000, 7);
            assert_eq!(est.accepted, 0);
            assert_eq!(est.estimate, 0.0);
        }
    }

    #[test]
    fn tau_scale_invariant_in_a() {
        let o = MonomialOrder::new(2, 2);
        let a = to_int_vec(&[1, 2, 0, -1, 3, 1]);
        let a3: Vec<Int> = a.iter().map(|x| x * Int::from(3)).collect();
        let e1 = tau_mc(&o, &a, 1.5, 5_000, 42);
        let e2 = tau_mc(&o, &a3, 1.5, 5_000, 42);
        // identical accept counts sample by sample under the same seed
        assert_eq!(e1.accepted, e2.accepted);
    }

    #[test]
    fn tau_small_gamma_fills_the_ball() {
        // as gamma -> 0 the predicate holds almost surely and
        // tau -> gamma * V_{n+1}
        let o = MonomialOrder::new(2, 2);
        let a = to_int_vec(&[1, -2, 3, 0, 1, 5]);
        let gamma = 1e-6;
        let est = tau_mc(&o, &a, gamma, 50_000, 11);
        let expect = gamma * ball_volume(3);
        assert!((est.estimate - expect).abs() <= 3.0 * est.std_error + 1e-18);
        // two seeds agree within joint error bars
        let e2 = tau_mc(&o, &a, 0.8, 50_000, 1);
        let e3 = tau_mc(&o, &a, 0.8, 50_000, 2);
        assert!((e2.estimate - e3.estimate).abs() <= 3.0 * (e2.std_error + e3.std_error));
    }

    #[test]
    fn hyperplane_slab_volume() {
        // N=3, w=(10,0,0), z=(0,10,0): exact area 2 arcsin(1/10)
        let w = [10.0, 0.0, 0.0];
        let z = [0.0, 10.0, 0.0];
        let est = volume_hyperplane_slab(&w, &z, 200_000, 5);
        let exact = 2.0 * (0.1f64).asin();
        assert!((est.estimate - exact).abs() <= 3.0 * est.std_error);
        assert!((est.leading_term - 0.2).abs() < 1e-12);

        // degenerate branch: ||w||^2 >= delta gives exactly V_{N-1}
        let z_small = [0.0, 0.5, 0.0];
        let est = volume_hyperplane_slab(&w, &z_small, 10, 5);
        assert!(est.degenerate);
        assert_eq!(est.estimate, ball_volume(2));

        // unit z: always accepted by Cauchy-Schwarz, estimate exactly V_{N-1}
        let z_unit = [0.0, 1.0, 0.0];
        let est = volume_hyperplane_slab(&[2.0, 0.0, 0.0], &z_unit, 5_000, 9);
        assert_eq!(est.estimate, ball_volume(2));
    }

    #[test]
    fn double_slab_volume() {
        // unit w, z: both predicates always hold, estimate is exactly V_N
        let w = [1.0, 0.0, 0.0];
        let z = [0.0, 1.0, 0.0];
        let est = volume_double_slab(&w, &z, 2_000, 3);
        assert_eq!(est.estimate, ball_volume(3));

        // leading term 8/300 at w=(10,0,0), z=(0,10,0)
        let w = [10.0, 0.0, 0.0];
        let z = [0.0, 10.0, 0.0];
        let est = volume_double_slab(&w, &z, 400_000, 17);
        assert!((est.leading_term - 8.0 / 300.0).abs() < 1e-12);
        // MC within 3 SE plus the proof's relative error band
        let rel = ((w[0].hypot(z[1])).powi(2) / delta(&w, &z)).min(1.0);
        assert!((est.estimate - est.leading_term).abs() <= 3.0 * est.std_error + rel * est.leading_term);

        // swap symmetry on identical seeds after canonical ordering
        let e1 = volume_double_slab(&w, &z, 10_000, 23);
        let e2 = volume_double_slab(&z, &w, 10_000, 23);
        assert_eq!(e1.estimate, e2.estimate);
    }
}
