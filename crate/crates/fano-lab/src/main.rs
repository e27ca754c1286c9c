use clap::{Args, Parser, Subcommand};
use fano_lab::census::{census_run, sigma_moment_experiment, variance_experiment, ExperimentConfig};
use fano_lab::counting::{
    aggregate_sum, count_report, ell_counter, moments, AggregateKind, MomentKind,
};
use fano_lab::error::Error;
use fano_lab::ivec::{parse_decimal, parse_int_vec, Int, Rat};
use fano_lab::lattice::Lattice;
use fano_lab::local::{p_adic_soluble, real_soluble, sigma_prime_power, Status};
use fano_lab::minima::{successive_minima, count_points, Cone, DEFAULT_NODE_BUDGET, DEFAULT_RANK_GUARD};
use fano_lab::tau::tau_mc;
use fano_lab::veronese::{pair_invariants, MonomialOrder};
use num::{One, ToPrimitive};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fano-lab", about = "Exact lattice toolkit and hypersurface census")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact lattice operations on an integer matrix whose columns generate
    /// the lattice.
    Lattice(LatticeArgs),
    /// Pair invariants of two primitive vectors under the Veronese embedding.
    Pair(PairArgs),
    /// Veronese image of an integer vector.
    Veronese(VeroneseArgs),
    /// Global (and optionally localised) point counts of a hypersurface.
    Count(CountArgs),
    /// Second-moment statistics over the full family of bounded hypersurfaces.
    Moments(MomentsArgs),
    /// Counters of vectors or pairs with small minimal sublattice determinant.
    Ell(EllArgs),
    /// Exact non-Archimedean density factor at a prime power.
    Sigma(SigmaArgs),
    /// Monte Carlo Archimedean density factor.
    Tau(TauArgs),
    /// Local solubility verdicts with certificates.
    Soluble(SolubleArgs),
    /// Seeded solubility census with JSONL output.
    Census(CensusArgs),
    /// Mean of (N_V - N_V^loc)^2 over a seeded sample.
    Variance(CensusArgs),
    /// Exact moments of sigma over coefficient residues.
    SigmaMoments(SigmaMomentsArgs),
}

#[derive(Args)]
struct LatticeArgs {
    /// One of: det, snf, minima, saturate, count
    op: String,
    /// Semicolon-separated rows of comma-separated integers; columns generate
    /// the lattice.
    #[arg(long)]
    matrix: String,
    /// Ball radius for `count`.
    #[arg(long)]
    radius: Option<String>,
    /// Cone constraint "v1,...,vN;gamma" for `count`; repeatable.
    #[arg(long)]
    cone: Vec<String>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
}

#[derive(Args)]
struct VeroneseArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    x: String,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    /// Coefficient vector, comma separated.
    #[arg(long)]
    a: String,
    #[arg(long = "B")]
    b: String,
    #[arg(long)]
    localized: bool,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long = "A")]
    a_bound: i64,
    #[arg(long = "B")]
    b: String,
    /// One of: D, Dmix, Dloc, E, F
    #[arg(long)]
    kind: String,
}

#[derive(Args)]
struct EllArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    #[arg(long = "X")]
    x: String,
    #[arg(long = "Y")]
    y: Option<String>,
    #[arg(long = "Delta")]
    delta: String,
}

#[derive(Args)]
struct SigmaArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    power: u32,
}

#[derive(Args)]
struct TauArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    gamma: f64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolubleArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    pmax: u64,
    #[arg(long, default_value_t = 20)]
    rmax: u32,
    #[arg(long, default_value_t = 4)]
    grid_depth: u32,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long = "A")]
    a_bound: String,
    #[arg(long = "B")]
    b: String,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    pmax: u64,
    #[arg(long, default_value_t = 20)]
    rmax: u32,
    #[arg(long, default_value_t = 3)]
    grid_depth: u32,
    /// Slope of the minimal-point height cap psi(u) = xi u.
    #[arg(long, default_value = "1")]
    xi: String,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long)]
    summary: Option<std::path::PathBuf>,
    /// Exit with status 2 if any verdict is UNKNOWN.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SigmaMomentsArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    power: u32,
}

fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_matrix(s: &str) -> Result<(usize, Vec<Vec<Int>>), Error> {
    let rows: Vec<Vec<Int>> = s
        .split(';')
        .map(parse_int_vec)
        .collect::<Result<_, _>>()?;
    let dim = rows.len();
    if dim == 0 {
        return Err(Error::Invalid("empty matrix".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid("ragged matrix".into()));
    }
    let gens = (0..cols)
        .map(|j| (0..dim).map(|i| rows[i][j].clone()).collect())
        .collect();
    Ok((dim, gens))
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Lattice(args) => {
            let (dim, gens) = parse_matrix(&args.matrix)?;
            match args.op.as_str() {
                "det" => {
                    let l = Lattice::from_int_generators(dim, &gens)?;
                    println!("det_sq {}", rat_str(&l.det_sq()));
                }
                "snf" => {
                    let m = fano_lab::mat::Mat::from_cols(dim, &gens);
                    let s = fano_lab::mat::snf(&m);
                    let diag: Vec<String> = (0..dim.min(gens.len()))
                        .map(|i| format!("{}", s.d[(i, i)]))
                        .collect();
                    println!("diagonal {}", diag.join(","));
                }
                "minima" => {
                    let l = Lattice::from_int_generators(dim, &gens)?;
                    let p = successive_minima(&l, DEFAULT_RANK_GUARD, DEFAULT_NODE_BUDGET)?;
                    let v: Vec<String> = p.minima_sq.iter().map(rat_str).collect();
                    println!("minima_sq {}", v.join(","));
                }
                "saturate" => {
                    let l = Lattice::from_int_generators(dim, &gens)?.saturate()?;
                    for c in l.scaled_cols() {
                        let row: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        println!("{}", row.join(","));
                    }
                }
                "count" => {
                    let l = Lattice::from_int_generators(dim, &gens)?;
                    let t = parse_decimal(
                        args.radius
                            .as_deref()
                            .ok_or_else(|| Error::Invalid("count needs --radius".into()))?,
                    )?;
                    let cones: Vec<Cone> = args
                        .cone
                        .iter()
                        .map(|c| {
                            let (v, g) = c
                                .split_once(';')
                                .ok_or_else(|| Error::Invalid("cone wants v;gamma".into()))?;
                            Ok(Cone {
                                v: parse_int_vec(v)?,
                                gamma: parse_decimal(g)?,
                            })
                        })
                        .collect::<Result<_, Error>>()?;
                    let c = count_points(&l, &t, &cones, DEFAULT_NODE_BUDGET)?;
                    println!("count {c}");
                }
                other => return Err(Error::Invalid(format!("unknown lattice op {other:?}"))),
            }
        }
        Command::Pair(args) => {
            let order = MonomialOrder::new(args.d, args.n);
            let x = parse_int_vec(&args.x)?;
            let y = parse_int_vec(&args.y)?;
            let p = pair_invariants(&order, &x, &y)?;
            println!("gcd_minors {}", p.gcd_minors);
            println!("d2_sq {}", rat_str(&p.d2_sq));
            println!("delta_sq {}", rat_str(&p.delta_sq));
            println!("det_intersection_sq {}", rat_str(&p.det_intersection_sq));
        }
        Command::Veronese(args) => {
            let x = parse_int_vec(&args.x)?;
            let order = MonomialOrder::new(args.d, x.len() - 1);
            let img: Vec<String> = order.veronese(&x).iter().map(|v| v.to_string()).collect();
            println!("{}", img.join(","));
        }
        Command::Count(args) => {
            let v = fano_lab::counting::Hypersurface::new(args.d, args.n, parse_int_vec(&args.a)?)?;
            let b = parse_decimal(&args.b)?;
            let rep = count_report(&v, &b, args.localized)?;
            let mut obj = json!({ "B": b.to_f64(), "N": rep.global });
            if let Some(l) = rep.localized {
                obj["Nloc"] = json!(l);
            }
            println!("{obj}");
        }
        Command::Moments(args) => {
            let b = parse_decimal(&args.b)?;
            match args.kind.as_str() {
                "E" | "F" => {
                    let kind = if args.kind == "E" {
                        AggregateKind::InverseDet
                    } else {
                        AggregateKind::ErrorWeighted
                    };
                    let v = aggregate_sum(args.d, args.n, &b, kind)?;
                    println!("{}", json!({ "kind": args.kind, "value": v }));
                }
                "D" | "Dmix" | "Dloc" => {
                    let kind = match args.kind.as_str() {
                        "D" => MomentKind::Global,
                        "Dmix" => MomentKind::Mixed,
                        _ => MomentKind::Localized,
                    };
                    let r = moments(args.d, args.n, args.a_bound, &b, kind)?;
                    println!(
                        "{}",
                        json!({
                            "kind": args.kind,
                            "value": r.value,
                            "prediction": r.prediction,
                            "family": r.hypersurface_count,
                        })
                    );
                }
                other => return Err(Error::Invalid(format!("unknown kind {other:?}"))),
            }
        }
        Command::Ell(args) => {
            let x = parse_decimal(&args.x)?;
            let y = args.y.as_deref().map(parse_decimal).transpose()?;
            let delta = parse_decimal(&args.delta)?;
            let r = ell_counter(args.r, args.n, &x, y.as_ref(), &delta)?;
            println!(
                "{}",
                json!({ "count": r.count, "lower_bound_only": r.lower_bound_only })
            );
        }
        Command::Sigma(args) => {
            let order = MonomialOrder::new(args.d, args.n);
            let a = parse_int_vec(&args.a)?;
            let s = sigma_prime_power(&order, &a, args.prime, args.power)?;
            println!("sigma {}", rat_str(&s));
        }
        Command::Tau(args) => {
            let order = MonomialOrder::new(args.d, args.n);
            let a = parse_int_vec(&args.a)?;
            let est = tau_mc(&order, &a, args.gamma, args.samples, args.seed);
            println!(
                "{}",
                json!({
                    "estimate": est.estimate,
                    "std_error": est.std_error,
                    "accepted": est.accepted,
                    "samples": est.samples,
                    "seed": args.seed,
                })
            );
        }
        Command::Soluble(args) => {
            let order = MonomialOrder::new(args.d, args.n);
            let a = parse_int_vec(&args.a)?;
            let real = real_soluble(&order, &a, args.grid_depth)?;
            let mut verdicts = Vec::new();
            let mut any_unknown = real.status == Status::Unknown;
            for p in fano_lab::counting::primes_upto(args.pmax) {
                let v = p_adic_soluble(&order, &a, p, args.rmax)?;
                any_unknown |= v.status == Status::Unknown;
                verdicts.push(json!({
                    "p": p,
                    "status": v.status,
                    "r": v.depth,
                    "e": v.e,
                    "witness": v.witness,
                }));
            }
            println!(
                "{}",
                json!({ "real": real.status, "grid": real.grid, "locals": verdicts })
            );
            if any_unknown {
                return Ok(2);
            }
        }
        Command::Census(args) => {
            let cfg = census_config(&args)?;
            let (records, summary) = census_run(&cfg)?;
            eprintln!(
                "census finished at {:?}: {} records",
                std::time::SystemTime::now(),
                records.len()
            );
            println!(
                "{}",
                json!({
                    "samples": summary.samples,
                    "rho_hat": summary.rho_hat,
                    "rho_loc_hat": summary.rho_loc_hat,
                    "unknown_frac": summary.unknown_frac,
                    "mean_NV": summary.mean_nv,
                    "mean_NVloc": summary.mean_nv_loc,
                    "var_diff": summary.var_diff,
                })
            );
            if args.strict && records.iter().any(|r| r.has_unknown()) {
                return Ok(2);
            }
        }
        Command::Variance(args) => {
            let cfg = census_config(&args)?;
            let row = variance_experiment(&cfg)?;
            println!(
                "{}",
                json!({
                    "A": row.a_bound,
                    "B": row.b,
                    "samples": row.samples,
                    "statistic": row.statistic,
                    "ratio_to_B_over_A": row.ratio,
                })
            );
        }
        Command::SigmaMoments(args) => {
            let r = sigma_moment_experiment(args.d, args.n, args.prime, args.power)?;
            println!("mean {}", rat_str(&r.mean));
            println!("mean_formula {}", rat_str(&r.mean_formula));
            println!("mean_matches {}", r.mean_matches);
            println!("centered_second_moment {}", rat_str(&r.centered_second_moment));
            println!("scaled_second_moment {}", rat_str(&r.scaled_second_moment));
            if !r.mean_matches {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn census_config(args: &CensusArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::new(
        args.d,
        args.n,
        parse_decimal(&args.a_bound)?,
        parse_decimal(&args.b)?,
    );
    cfg.samples = args.samples;
    cfg.seed = args.seed;
    cfg.p_max = args.pmax;
    cfg.r_max = args.rmax;
    cfg.grid_depth = args.grid_depth;
    cfg.psi_xi = parse_decimal(&args.xi)?;
    cfg.out = args.out.clone();
    cfg.summary = args.summary.clone();
    Ok(cfg)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version are not usage errors
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
