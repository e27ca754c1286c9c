//! Exact lattice arithmetic: normal forms, duality, orthogonality, quotients
//! and the classical inequalities, all in integer/rational arithmetic.
//!
//! Run with: cargo run --release --example lattice_identities

use fano_lab::ivec::to_int_vec;
use fano_lab::lattice::Lattice;
use fano_lab::mat::{snf, Mat};
use fano_lab::minima::successive_minima;

fn main() {
    // a rank-2 lattice in Z^3
    let l = Lattice::from_int_generators(
        3,
        &[to_int_vec(&[2, 2, 0]), to_int_vec(&[0, 2, 2])],
    )
    .unwrap();
    println!("lattice  rank {}  det^2 = {}", l.rank(), l.det_sq());

    let sat = l.saturate().unwrap();
    println!("saturation  det^2 = {}  index = {}", sat.det_sq(), sat.index_of(&l).unwrap());

    let orth = sat.orthogonal_complement().unwrap();
    println!(
        "orthogonal complement  det^2 = {}  (equals the saturation's: {})",
        orth.det_sq(),
        orth.det_sq() == sat.det_sq()
    );

    let dual = sat.dual().unwrap();
    println!(
        "dual  det^2 = {}  product with det^2 = {}",
        dual.det_sq(),
        dual.det_sq() * sat.det_sq()
    );

    // the ambient quotient agrees with the dual of the complement
    let quotient = Lattice::standard(3).quotient(&sat).unwrap();
    println!(
        "Z^3 / L equals (L^perp)^*: {}",
        quotient == orth.dual().unwrap()
    );

    // Smith normal form of a small matrix
    let mut m = Mat::zero(2, 2);
    m[(0, 0)] = 2.into();
    m[(0, 1)] = 4.into();
    m[(1, 0)] = 6.into();
    m[(1, 1)] = 8.into();
    let s = snf(&m);
    println!("snf diag of [[2,4],[6,8]]: {}, {}", s.d[(0, 0)], s.d[(1, 1)]);

    // exact successive minima with witnesses
    let skew = Lattice::from_int_generators(
        3,
        &[
            to_int_vec(&[5, 1, 0]),
            to_int_vec(&[1, 4, 1]),
            to_int_vec(&[0, 2, 7]),
        ],
    )
    .unwrap();
    let profile = successive_minima(&skew, 10, 1 << 24).unwrap();
    let lams: Vec<String> = profile.minima_sq.iter().map(|x| x.to_string()).collect();
    println!("successive minima squared: {}", lams.join(", "));
    let mut prod = fano_lab::ivec::rat(1, 1);
    for lam in &profile.minima_sq {
        prod *= lam;
    }
    println!(
        "Minkowski: det^2 = {} <= product of minima^2 = {}",
        skew.det_sq(),
        prod
    );
}
