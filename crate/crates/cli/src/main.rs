//! Command-line surface for the twisted Hurwitz engines.
//!
//! Exit codes: 0 when all requested verifications pass, 1 when a
//! verification disagrees (engine mismatch, wall-crossing failure), 3 for
//! operational errors such as an exceeded cap or a point on a wall.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use twisted_hurwitz::lab::{self, ChamberSignature, Sign, Wall};
use twisted_hurwitz::oracle::{self, rational_string, HurwitzInput, ScanOptions};
use twisted_hurwitz::partition::Partition;
use twisted_hurwitz::tropical;
use twisted_hurwitz::twist;

const CAP_ENV: &str = "TWISTED_HURWITZ_CAP_2N";

#[derive(Parser)]
#[command(
    name = "twisted-hurwitz",
    about = "Twisted double Hurwitz numbers: factorization scans, monodromy graphs, chamber polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Brute,
    Tropical,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one twisted double Hurwitz number.
    Count {
        #[arg(long = "g")]
        genus: u64,
        /// Source ramification profile, comma separated.
        #[arg(long)]
        mu: Parts,
        /// Target ramification profile, comma separated.
        #[arg(long)]
        nu: Parts,
        #[arg(long, value_enum, default_value_t = Engine::Tropical)]
        engine: Engine,
        /// Drop the transitivity condition (scan engine only).
        #[arg(long)]
        disconnected: bool,
        /// Emit every scanned factorization tuple as a JSON line.
        #[arg(long)]
        dump_tuples: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cap on the number of moved points 2n for exhaustive scans.
        #[arg(long)]
        cap_2n: Option<usize>,
        /// Worker threads for the scan.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// List the twisted monodromy graphs of one type with multiplicities.
    Graphs {
        #[arg(long = "g")]
        genus: u64,
        #[arg(long)]
        mu: Parts,
        #[arg(long)]
        nu: Parts,
        /// jsonl (default) or dot output.
        #[arg(long, default_value = "jsonl")]
        format: String,
        /// Drop covers of multiplicity zero.
        #[arg(long)]
        prune_zero: bool,
    },
    /// Interpolate the chamber polynomial for fixed profile lengths.
    Poly {
        #[arg(long = "g")]
        genus: u64,
        /// Profile lengths, e.g. 1,2 for one source part and two target parts.
        #[arg(long, value_parser = parse_shape)]
        shape: (usize, usize),
        /// Chamber signature such as +,- ; required when walls exist.
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the genus-0 wall-crossing identity pointwise.
    Wallcross {
        #[arg(long, value_parser = parse_shape)]
        shape: (usize, usize),
        /// Wall as 1-based index sets, e.g. I=1:J=1.
        #[arg(long, value_parser = parse_wall)]
        wall: Wall,
        /// Points per adjacent chamber pair.
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Check every adjacent chamber pair instead of the first one.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the twisted permutation class for one partition.
    Btilde {
        #[arg(long)]
        lambda: Parts,
        #[arg(long)]
        cap_2n: Option<usize>,
    },
}

/// Comma-separated positive integers, reordered weakly decreasing.
#[derive(Clone)]
struct Parts(Vec<u64>);

impl std::str::FromStr for Parts {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_parts(s).map(Parts)
    }
}

fn parse_parts(s: &str) -> Result<Vec<u64>, String> {
    let parts: Result<Vec<u64>, _> = s.split(',').map(|x| x.trim().parse::<u64>()).collect();
    let parts = parts.map_err(|e| format!("bad partition {s:?}: {e}"))?;
    if parts.is_empty() || parts.contains(&0) {
        return Err("partition parts must be positive".into());
    }
    let mut sorted = parts.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted != parts {
        eprintln!("note: profile {s} reordered to weakly decreasing");
    }
    Ok(sorted)
}

fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let mut it = s.split(',');
    let m = it
        .next()
        .and_then(|x| x.trim().parse().ok())
        .ok_or("shape wants m,n")?;
    let n = it
        .next()
        .and_then(|x| x.trim().parse().ok())
        .ok_or("shape wants m,n")?;
    if it.next().is_some() || m == 0 || n == 0 {
        return Err("shape wants two positive lengths m,n".into());
    }
    Ok((m, n))
}

fn parse_wall(s: &str) -> Result<Wall, String> {
    let parse_side = |side: &str, tag: &str| -> Result<Vec<usize>, String> {
        let rest = side
            .trim()
            .strip_prefix(tag)
            .ok_or_else(|| format!("wall side must start with {tag}"))?;
        let mut out = Vec::new();
        for piece in rest.split(',') {
            let v: usize = piece
                .trim()
                .parse()
                .map_err(|_| format!("bad index {piece:?}"))?;
            if v == 0 {
                return Err("wall indices are 1-based".into());
            }
            out.push(v - 1);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    };
    let mut halves = s.split(':');
    let i_set = parse_side(halves.next().ok_or("wall wants I=..:J=..")?, "I=")?;
    let j_set = parse_side(halves.next().ok_or("wall wants I=..:J=..")?, "J=")?;
    if halves.next().is_some() {
        return Err("wall wants exactly I=..:J=..".into());
    }
    Ok(Wall { i_set, j_set })
}

fn parse_signature(s: &str, wanted: usize) -> Result<ChamberSignature, String> {
    let signs: Result<Vec<Sign>, String> = s
        .split(',')
        .map(|x| match x.trim() {
            "+" => Ok(Sign::Pos),
            "-" => Ok(Sign::Neg),
            other => Err(format!("bad sign {other:?}")),
        })
        .collect();
    let signs = signs?;
    if signs.len() != wanted {
        return Err(format!("expected {wanted} signs, got {}", signs.len()));
    }
    Ok(signs)
}

fn cap_from(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    })
    .unwrap_or(twisted_hurwitz::DEFAULT_CAP_2N)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Count {
            genus,
            mu,
            nu,
            engine,
            disconnected,
            dump_tuples,
            format,
            cap_2n,
            threads,
        } => {
            let mu = Partition::new(mu.0)?;
            let nu = Partition::new(nu.0)?;
            let opts = ScanOptions {
                cap_2n: cap_from(cap_2n),
                threads,
            };
            let connected = !disconnected;
            let input = HurwitzInput::new(genus, mu.clone(), nu.clone())?;
            if disconnected && engine != Engine::Brute {
                return Err("disconnected counts come from the scan engine only".into());
            }
            if dump_tuples {
                for t in oracle::collect_twisted_tuples(&input, &opts)? {
                    let line = json!({
                        "sigma1": t.sigma1.to_cycle_string(),
                        "etas": t.etas.iter().map(|e| e.to_cycle_string()).collect::<Vec<_>>(),
                        "sigma2": t.sigma2.to_cycle_string(),
                        "transitive": t.transitive,
                    });
                    println!("{line}");
                }
            }
            let brute = match engine {
                Engine::Brute | Engine::Both => {
                    Some(oracle::twisted_hurwitz(&input, connected, &opts)?)
                }
                Engine::Tropical => None,
            };
            let trop = match engine {
                Engine::Tropical | Engine::Both => {
                    Some(tropical::twisted_hurwitz(genus, &mu, &nu)?)
                }
                Engine::Brute => None,
            };
            let equal = match (&brute, &trop) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            match format {
                Format::Json => {
                    let value = json!({
                        "g": genus,
                        "mu": mu.parts(),
                        "nu": nu.parts(),
                        "connected": connected,
                        "brute": brute.as_ref().map(rational_string),
                        "tropical": trop.as_ref().map(rational_string),
                        "equal": equal,
                    });
                    println!("{value}");
                }
                Format::Text => match (&brute, &trop) {
                    (Some(a), Some(b)) => println!(
                        "{} == {} {}",
                        rational_string(a),
                        rational_string(b),
                        if a == b { "OK" } else { "MISMATCH" }
                    ),
                    (Some(a), None) => println!("{}", rational_string(a)),
                    (None, Some(b)) => println!("{}", rational_string(b)),
                    (None, None) => unreachable!(),
                },
            }
            Ok(match equal {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }

        Command::Graphs {
            genus,
            mu,
            nu,
            format,
            prune_zero,
        } => {
            let mu = Partition::new(mu.0)?;
            let nu = Partition::new(nu.0)?;
            let contributions = tropical::cover_contributions(genus, &mu, &nu, prune_zero)?;
            let total: BigRational = contributions
                .iter()
                .map(|c| c.multiplicity.clone())
                .sum();
            match format.as_str() {
                "jsonl" => {
                    for c in &contributions {
                        let mut value = c.cover.to_json();
                        value["multiplicity"] = json!(rational_string(&c.multiplicity));
                        value["aut"] = json!(c.aut_order);
                        println!("{value}");
                    }
                    println!(
                        "{}",
                        json!({ "graphs": contributions.len(), "total": rational_string(&total) })
                    );
                }
                "dot" => {
                    for (k, c) in contributions.iter().enumerate() {
                        println!(
                            "// graph {k}: multiplicity {} aut {}",
                            rational_string(&c.multiplicity),
                            c.aut_order
                        );
                        print!("{}", c.cover.to_dot(&format!("cover{k}")));
                    }
                    println!(
                        "// {} graphs, total {}",
                        contributions.len(),
                        rational_string(&total)
                    );
                }
                other => return Err(format!("unknown graphs format {other:?}").into()),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Poly {
            genus,
            shape: (m, n),
            signature,
            format,
        } => {
            let walls = lab::wall_list(m, n);
            let sig = match (&signature, walls.len()) {
                (None, 0) => Vec::new(),
                (None, k) => {
                    return Err(format!(
                        "shape ({m},{n}) has {k} walls; pass --signature with one sign per wall: {}",
                        walls
                            .iter()
                            .map(|w| w.label())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                    .into())
                }
                (Some(s), k) => parse_signature(s, k)?,
            };
            let poly = lab::interpolate_chamber(genus, m, n, &sig)?;
            let names = lab::variable_names(m, n);
            let mut degrees = poly.homogeneous_degrees();
            degrees.reverse();
            match format {
                Format::Text => {
                    let degree_list = degrees
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    println!("{}; degrees {{{degree_list}}}", poly.pretty(&names));
                }
                Format::Json => {
                    let mut value = poly.to_json(&names);
                    value["degrees"] = json!(degrees);
                    value["pretty"] = json!(poly.pretty(&names));
                    println!("{value}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Wallcross {
            shape: (m, n),
            wall,
            points,
            all_pairs,
            format,
        } => {
            let walls = lab::wall_list(m, n);
            let wall_index = walls
                .iter()
                .position(|w| *w == wall)
                .ok_or_else(|| format!("no wall {} for shape ({m},{n})", wall.label()))?;
            let mut pair_reports = Vec::new();
            let mut checked = 0usize;
            let mut good = 0usize;
            // adjacent chamber pairs: positive side at the crossed wall, any
            // realizable signs elsewhere
            for other_mask in 0..(1u32 << (walls.len() - 1)) {
                let mut c1: ChamberSignature = Vec::new();
                let mut bit = 0;
                for k in 0..walls.len() {
                    if k == wall_index {
                        c1.push(Sign::Pos);
                    } else {
                        c1.push(if other_mask >> bit & 1 == 1 {
                            Sign::Neg
                        } else {
                            Sign::Pos
                        });
                        bit += 1;
                    }
                }
                let mut c2 = c1.clone();
                c2[wall_index] = Sign::Neg;
                let realizable = |sig: &ChamberSignature| {
                    lab::chamber_sample_generic(m, n, sig, 1, 64).is_ok()
                };
                if !realizable(&c1) || !realizable(&c2) {
                    continue;
                }
                let lhs_poly = lab::wall_crossing_lhs(m, n, wall_index, &c1, &c2)?;
                // walk generic points of c1 until enough give admissible cut
                // pieces
                let candidates = lab::chamber_sample_generic(m, n, &c1, points * 20, 64)?;
                let mut used = 0usize;
                for (mu, nu) in candidates {
                    if used == points {
                        break;
                    }
                    let rhs = match lab::wall_crossing_rhs(m, n, wall_index, &c1, &c2, &mu, &nu) {
                        Ok(r) => r,
                        Err(twisted_hurwitz::Error::Invalid(_)) => continue,
                        Err(e) => return Err(e.into()),
                    };
                    used += 1;
                    checked += 1;
                    let lhs = lab::eval_at(&lhs_poly, &mu, &nu);
                    let ok = lhs == rhs.value;
                    if ok {
                        good += 1;
                    }
                    pair_reports.push(json!({
                        "wall": wall.label(),
                        "c1": signature_string(&c1),
                        "point": { "mu": mu, "nu": nu },
                        "lhs": rational_string(&lhs),
                        "rhs": rational_string(&rhs.value),
                        "ok": ok,
                    }));
                    if format == Format::Text {
                        println!(
                            "chamber {} point (({}),({})): LHS {} {} RHS {}",
                            signature_string(&c1),
                            join(&mu),
                            join(&nu),
                            rational_string(&lhs),
                            if ok { "==" } else { "!=" },
                            rational_string(&rhs.value)
                        );
                        if !ok {
                            println!("{rhs}");
                        }
                    }
                }
                if used < points {
                    return Err("not enough generic points with admissible cut pieces".into());
                }
                if !all_pairs {
                    break;
                }
            }
            match format {
                Format::Text => println!(
                    "{good}/{checked} points: LHS {} RHS",
                    if good == checked { "==" } else { "!=" }
                ),
                Format::Json => println!(
                    "{}",
                    json!({ "points": pair_reports, "checked": checked, "good": good })
                ),
            }
            Ok(if good == checked {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Btilde { lambda, cap_2n } => {
            let lambda = Partition::new(lambda.0)?;
            for sigma in twist::enumerate_b_tilde(&lambda, cap_from(cap_2n))? {
                println!("{}", sigma.to_cycle_string());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn signature_string(sig: &ChamberSignature) -> String {
    sig.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

fn join(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
