//! Aggregate pair sums, second moments over the full family of bounded
//! hypersurfaces, and the counters of vectors with small minimal
//! sublattice determinant.
//!
//! Run with: cargo run --release --example aggregate_moments

use fano_lab::counting::{aggregate_sum, ell_counter, moments, AggregateKind, MomentKind};
use fano_lab::ivec::rat;

fn main() {
    // E_{2,3}(B) grows like B^2
    for b in [1i64, 16, 64] {
        let e = aggregate_sum(2, 3, &rat(b, 1), AggregateKind::InverseDet).unwrap();
        println!("E(B={b:3}) = {e:14.4}   E/B^2 = {:.4}", e / (b * b) as f64);
    }
    // the error-weighted variant saves a factor over E
    let e = aggregate_sum(2, 3, &rat(64, 1), AggregateKind::InverseDet).unwrap();
    let f = aggregate_sum(2, 3, &rat(64, 1), AggregateKind::ErrorWeighted).unwrap();
    println!("F(64)/E(64) = {:.4}", f / e);

    // second moments with diagonals removed, against the scale
    // iota A^(N-2) E(B)
    for kind in [MomentKind::Global, MomentKind::Mixed, MomentKind::Localized] {
        let r = moments(2, 2, 2, &rat(17, 1), kind).unwrap();
        println!(
            "{:?} moment over {} hypersurfaces: {:12.4}  prediction {:12.4}  ratio {:.3}",
            kind,
            r.hypersurface_count,
            r.value,
            r.prediction,
            r.value / r.prediction
        );
    }

    // counters of small minimal determinants
    let c = ell_counter(2, 2, &rat(1, 1), None, &rat(1, 1)).unwrap();
    println!("ell_2,2(1; 1) = {} (unit vectors)", c.count);
    let c = ell_counter(2, 2, &rat(1, 1), Some(&rat(1, 1)), &rat(1, 1)).unwrap();
    println!("ell_2,2(1, 1; 1) = {} (ordered unit pairs)", c.count);
    let c = ell_counter(2, 2, &rat(3, 1), None, &rat(2, 1)).unwrap();
    println!(
        "ell_2,2(3; 2) = {} ({})",
        c.count,
        if c.lower_bound_only { "lower bound" } else { "exact" }
    );
}
