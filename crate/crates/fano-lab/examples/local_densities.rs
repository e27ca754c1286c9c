//! Non-Archimedean density factors and local solubility with replayable
//! certificates.
//!
//! Run with: cargo run --release --example local_densities

use fano_lab::counting::{primes_upto, window};
use fano_lab::census::sigma_moment_experiment;
use fano_lab::counting::Hypersurface;
use fano_lab::ivec::{rat, Int};
use fano_lab::local::{
    p_adic_soluble, real_soluble, replay_verdict, sigma_crt, sigma_prime_power, sigma_window,
    Status,
};
use fano_lab::veronese::MonomialOrder;
use num::Zero;

fn coeffs(order: &MonomialOrder, terms: &[(&[u32], i64)]) -> Vec<Int> {
    let mut c = vec![Int::zero(); order.len()];
    for (e, v) in terms {
        let i = order.exponents.iter().position(|x| x.as_slice() == *e).unwrap();
        c[i] = Int::from(*v);
    }
    c
}

fn main() {
    let order = MonomialOrder::new(2, 2);
    // sigma factors of x0^2 + x1^2 - 3 x2^2 at small prime powers
    let a = coeffs(&order, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], -3)]);
    for (p, r) in [(2u64, 1u32), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let s = sigma_prime_power(&order, &a, p, r).unwrap();
        println!("sigma(a; {p}^{r}) = {s}");
    }
    println!("sigma(a; 12) = {}", sigma_crt(&order, &a, &Int::from(12)).unwrap());

    // the window factor at B = 1000
    let win = window(&rat(1000, 1)).unwrap();
    let v = Hypersurface::new(2, 2, a.clone()).unwrap();
    let (sw, factors) = sigma_window(&v, &win).unwrap();
    print!("singular-series window factor at B=1000: {sw:.6} from");
    for (p, r, s) in &factors {
        print!("  sigma(.;{p}^{r})={s}");
    }
    println!();

    // solubility verdicts with certificates that replay
    println!("\nverdicts for x0^2 + x1^2 - 3 x2^2:");
    let real = real_soluble(&order, &a, 4).unwrap();
    println!("  real: {:?} (grid {})", real.status, real.grid);
    for p in primes_upto(13) {
        let verdict = p_adic_soluble(&order, &a, p, 20).unwrap();
        let ok = replay_verdict(&order, &a, &verdict).unwrap();
        println!(
            "  p = {p:2}: {:?} at depth {} (e = {}, exact = {}, replay {})",
            verdict.status, verdict.depth, verdict.e, verdict.exact, ok
        );
        assert!(ok);
    }

    // a definite form is insoluble over the reals but soluble p-adically
    let definite = coeffs(&order, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
    let real = real_soluble(&order, &definite, 4).unwrap();
    let p5 = p_adic_soluble(&order, &definite, 5, 20).unwrap();
    println!(
        "\nsums of three squares: real {:?}, p=5 {:?} (the real obstruction is invisible p-adically)",
        real.status, p5.status
    );
    assert_eq!(real.status, Status::Insoluble);
    assert_eq!(p5.status, Status::Soluble);

    // exact moments of sigma over coefficient residues
    let rep = sigma_moment_experiment(2, 1, 2, 1).unwrap();
    println!(
        "\nmean of sigma over coefficients mod 2 at (2,1): {} (formula {}, matches: {})",
        rep.mean, rep.mean_formula, rep.mean_matches
    );
}
