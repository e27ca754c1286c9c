//! Archimedean factors by seeded Monte Carlo: the cone-volume factor, the
//! slab volumes with their leading terms, and the product-of-local-factors
//! monitor.
//!
//! Run with: cargo run --release --example monte_carlo_volumes

use fano_lab::counting::Hypersurface;
use fano_lab::ivec::{rat, Int};
use fano_lab::numerics::ball_volume;
use fano_lab::tau::{local_product_monitor, tau_mc, volume_double_slab, volume_hyperplane_slab};
use fano_lab::veronese::MonomialOrder;
use num::{One, Zero};

fn main() {
    let order = MonomialOrder::new(2, 2);
    // an indefinite ternary form has positive cone volume
    let mut a = vec![Int::zero(); order.len()];
    for (i, e) in order.exponents.iter().enumerate() {
        if e == &vec![2, 0, 0] || e == &vec![0, 2, 0] {
            a[i] = Int::one();
        }
        if e == &vec![0, 0, 2] {
            a[i] = -Int::one();
        }
    }
    for gamma in [0.5, 1.0, 2.0, 4.0] {
        let est = tau_mc(&order, &a, gamma, 50_000, 9);
        println!(
            "tau(a; {gamma}) = {:.5} +- {:.5}  ({} of {} accepted)",
            est.estimate, est.std_error, est.accepted, est.samples
        );
    }

    // a definite form rejects every sample once gamma > sqrt(n+1)/2
    let definite: Vec<Int> = order
        .exponents
        .iter()
        .map(|e| if e.iter().any(|&x| x == 2) { Int::one() } else { Int::zero() })
        .collect();
    let est = tau_mc(&order, &definite, 2.0, 50_000, 9);
    println!("definite form at gamma = 2: accepted {}, estimate {}", est.accepted, est.estimate);

    // hyperplane slab volume vs the closed form 2 arcsin(1/10)
    let est = volume_hyperplane_slab(&[10.0, 0.0, 0.0], &[0.0, 10.0, 0.0], 200_000, 5);
    println!(
        "slab area: estimate {:.5} +- {:.5}, closed form {:.5}, leading term {:.5}",
        est.estimate,
        est.std_error,
        2.0 * (0.1f64).asin(),
        est.leading_term
    );
    let est = volume_hyperplane_slab(&[10.0, 0.0, 0.0], &[0.0, 0.5, 0.0], 10, 5);
    println!("degenerate branch returns V_2 = {} exactly: {}", ball_volume(2), est.degenerate);

    let est = volume_double_slab(&[10.0, 0.0, 0.0], &[0.0, 10.0, 0.0], 200_000, 5);
    println!(
        "double slab: estimate {:.5} +- {:.5}, leading term {:.5}",
        est.estimate, est.std_error, est.leading_term
    );

    // the product of the local factors against the localised count
    let mut q = vec![Int::zero(); MonomialOrder::new(2, 3).len()];
    let o23 = MonomialOrder::new(2, 3);
    for (i, e) in o23.exponents.iter().enumerate() {
        if e == &vec![1, 1, 0, 0] {
            q[i] = Int::one();
        }
        if e == &vec![0, 0, 1, 1] {
            q[i] = -Int::one();
        }
    }
    let v = Hypersurface::new(2, 3, q).unwrap();
    let m = local_product_monitor(&v, &rat(16, 1), 20_000, 14).unwrap();
    println!(
        "monitor at B=16: sigma {:.4}  tau {:.4}  N_loc {:.4}  ratio {:.4}",
        m.sigma, m.tau, m.n_loc, m.ratio
    );
}
