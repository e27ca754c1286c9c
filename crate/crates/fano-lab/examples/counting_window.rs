//! Heights, the divisibility window, and the global and localised counting
//! functions of a quadric surface across a range of bounds.
//!
//! Run with: cargo run --release --example counting_window

use fano_lab::counting::{
    build_xi, global_count, height, height_leq, localized_count, window, Hypersurface,
};
use fano_lab::ivec::{rat, to_int_vec, Int};
use fano_lab::veronese::MonomialOrder;
use num::{One, ToPrimitive, Zero};

/// x0 x1 - x2 x3, the standard split quadric in P^3.
fn split_quadric() -> Hypersurface {
    let order = MonomialOrder::new(2, 3);
    let mut coeffs = vec![Int::zero(); order.len()];
    for (i, e) in order.exponents.iter().enumerate() {
        if e == &vec![1, 1, 0, 0] {
            coeffs[i] = Int::one();
        }
        if e == &vec![0, 0, 1, 1] {
            coeffs[i] = -Int::one();
        }
    }
    Hypersurface::new(2, 3, coeffs).unwrap()
}

fn main() {
    let (nsq, k) = height(&to_int_vec(&[2, 1, 0, 1]), 2, 3);
    println!(
        "height of (2,1,0,1) on a quadric threefold: ||x||^2 = {nsq}, exponent {k}, H <= 6: {}",
        height_leq(&nsq, k, &rat(6, 1))
    );

    for b in [16i64, 100, 1000, 10000] {
        let bq = rat(b, 1);
        let win = window(&bq).unwrap();
        // log W stays comparable to 4 log B / log log B as B grows
        let log_w = win.modulus.to_f64().unwrap().ln();
        println!(
            "B = {b}: alpha = {:.4}  w = {:.4}  W = {}  rad W = {}  log W / (4 alpha / log alpha) = {:.3}",
            win.alpha,
            win.w,
            win.modulus,
            win.radical,
            log_w / (4.0 * win.alpha / win.alpha.ln())
        );
    }

    let v = split_quadric();
    println!("\nquadric x0 x1 = x2 x3:");
    for b in [16i64, 64, 256] {
        let bq = rat(b, 1);
        let xi = build_xi(2, 3, &bq).unwrap();
        let win = window(&bq).unwrap();
        let n = global_count(&v, &xi).unwrap();
        let nloc = localized_count(&v, &xi, &win).unwrap();
        println!(
            "  B = {b:4}: |Xi| = {:6}  N_V = {n:5}  N_V^loc = {nloc:.3}",
            xi.points.len()
        );
    }
}
