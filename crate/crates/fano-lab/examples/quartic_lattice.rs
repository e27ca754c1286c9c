//! The rank-15 lattice spanned by degree-4 images of a rank-3 sublattice of
//! Z^5, with its determinant monitor.
//!
//! Run with: cargo run --release --example quartic_lattice

use fano_lab::ivec::{to_int_vec, Int};
use fano_lab::lattice::Lattice;
use fano_lab::veronese::{dimension, vee_lattice};
use num::ToPrimitive;

fn main() {
    println!("N(4,4) = {}", dimension(4, 4));

    let samples: Vec<Vec<Vec<Int>>> = vec![
        vec![
            to_int_vec(&[1, 0, 0, 0, 0]),
            to_int_vec(&[0, 1, 0, 0, 0]),
            to_int_vec(&[0, 0, 1, 0, 0]),
        ],
        vec![
            to_int_vec(&[1, 1, 0, 0, 0]),
            to_int_vec(&[0, 1, 1, 0, 0]),
            to_int_vec(&[0, 0, 1, 1, 0]),
        ],
        vec![
            to_int_vec(&[2, 1, 0, 0, 1]),
            to_int_vec(&[0, 1, 1, 0, 0]),
            to_int_vec(&[1, 0, 0, 1, 0]),
        ],
    ];
    for gens in samples {
        let l = Lattice::from_int_generators(5, &gens).unwrap().saturate().unwrap();
        let v = vee_lattice(&l).unwrap();
        println!(
            "rank-3 lattice with det^2 = {}: image rank {}  det^2 {}  ratio to det^20 = {:.3e}",
            l.det_sq(),
            v.lattice.rank(),
            v.det_sq,
            v.det_ratio.to_f64().unwrap()
        );
    }
}
