//! Determinant identities for the kernel lattices of Veronese images:
//! the minor-gcd invariance, the rank-two minimal determinant formula, and
//! the congruence-lattice determinant formulas, checked exactly on random
//! pairs.
//!
//! Run with: cargo run --release --example veronese_pairs

use fano_lab::ivec::{content_i64, Int};
use fano_lab::lattice::Lattice;
use fano_lab::veronese::{
    congruence_pair_lattice, det_congruence_pair, pair_invariants, MonomialOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_primitive(rng: &mut ChaCha8Rng, dim: usize, max: i64) -> Vec<Int> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-max..=max)).collect();
        if v.iter().any(|&x| x != 0) && content_i64(&v) == 1 {
            return v.iter().map(|&x| Int::from(x)).collect();
        }
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let order = MonomialOrder::new(2, 2);
    println!("degree 2 in 3 variables: N = {}", order.len());

    for case in 0..5 {
        let x = random_primitive(&mut rng, 3, 12);
        let y = random_primitive(&mut rng, 3, 12);
        let Ok(inv) = pair_invariants(&order, &x, &y) else {
            continue;
        };
        println!(
            "case {case}: x={x:?} y={y:?}\n  minor gcd {}  d2^2 = {}  Delta^2 = {}  det(kernel cap)^2 = {}",
            inv.gcd_minors, inv.d2_sq, inv.delta_sq, inv.det_intersection_sq
        );
        // the formula agrees with the saturated span construction
        let sat = Lattice::from_int_generators(3, &[x.clone(), y.clone()])
            .unwrap()
            .saturate()
            .unwrap();
        assert_eq!(inv.d2_sq, sat.det_sq());
    }

    // congruence-lattice determinants against explicit construction
    for (c, e, q, mixed) in [
        (vec![1i64, 0, 0], vec![0i64, 1, 0], 4i64, false),
        (vec![1, 1, 0], vec![1, -1, 2], 6, false),
        (vec![3, 1, 2], vec![0, 5, 1], 9, true),
    ] {
        let c: Vec<Int> = c.iter().map(|&v| Int::from(v)).collect();
        let e: Vec<Int> = e.iter().map(|&v| Int::from(v)).collect();
        let q = Int::from(q);
        let formula = det_congruence_pair(&c, &e, &q, mixed).unwrap();
        let built = congruence_pair_lattice(&c, &e, &q, mixed).unwrap().det_sq();
        println!("congruence det^2 (mixed={mixed}, Q={q}): formula {formula} construction {built}");
        assert_eq!(formula, built);
    }
    println!("all identities exact");
}
