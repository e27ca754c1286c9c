//! Successive-minima bounds for the kernel lattices of Veronese images, and
//! minimal determinants of low-rank sublattices through a fixed vector.
//!
//! Run with: cargo run --release --example minima_bounds

use fano_lab::ivec::to_int_vec;
use fano_lab::veronese::{d_r_min, minima_bound_one, minima_bound_two, MonomialOrder};

fn main() {
    // the bound lambda_{N-1} <= n ||x|| / d2(x) is tight for (d, n) = (1, 1)
    let o11 = MonomialOrder::new(1, 1);
    let rep = minima_bound_one(&o11, &to_int_vec(&[3, 4])).unwrap();
    println!(
        "(1,1) x=(3,4): lambda^2 = {}  bound^2 = {}  holds = {}",
        rep.lambda_sq, rep.bound_sq, rep.holds
    );

    let o22 = MonomialOrder::new(2, 2);
    for x in [[1i64, 2, 3], [5, 1, 7], [9, -4, 2]] {
        let rep = minima_bound_one(&o22, &to_int_vec(&x)).unwrap();
        println!(
            "(2,2) x={x:?}: lambda^2 = {}  bound^2 = {}  holds = {}",
            rep.lambda_sq, rep.bound_sq, rep.holds
        );
    }

    // pairs: rank-(N-2) minima of the intersection lattice
    let rep = minima_bound_two(&o22, &to_int_vec(&[1, 2, 0]), &to_int_vec(&[0, 1, 1])).unwrap();
    println!(
        "(2,2) pair: lambda^2 = {}  bound^2 = {}  holds = {}",
        rep.lambda_sq, rep.bound_sq, rep.holds
    );

    // minimal determinants of rank-r sublattices containing given vectors
    for x in [[3i64, 4], [5, 12], [7, 9]] {
        let r = d_r_min(&to_int_vec(&x), None, 2, None).unwrap();
        println!(
            "d2({x:?})^2 = {}  ({:?}, witness det^2 {})",
            r.det_sq,
            r.quality,
            r.witness.det_sq()
        );
    }
    let r = d_r_min(
        &to_int_vec(&[2, 1, 0, 1]),
        Some(&to_int_vec(&[1, 0, 1, 1])),
        3,
        None,
    )
    .unwrap();
    println!("d3 of a pair in Z^4: {} ({:?})", r.det_sq, r.quality);
}
