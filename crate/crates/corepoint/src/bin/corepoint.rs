use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use corepoint::balance::{reduce_min_norm, LogLattice};
use corepoint::enumerate::{classes_to_json, default_c_const, enumerate_core_classes, norm_bound, EnumerateOptions};
use corepoint::geometry::OrbitPolytope;
use corepoint::groups::PermGroup;
use corepoint::ilp::{self, IlpInstance};
use corepoint::matrix::{int_to_json, IntMatrix};
use corepoint::repdecomp::{cyclic_components, is_qi_group, normalizer_finite};
use corepoint::units::{bass_units, Normalizer};
use corepoint::Error;

#[derive(Parser)]
#[command(name = "corepoint", version, about = "Core points of lattice orbit polytopes and symmetric integer programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition, QI test and finiteness of the normalizer.
    Analyze {
        /// `C5`, `D5`, `S4`, a JSON file, or cycles like `(1,2,3,4,5)`.
        group: String,
    },
    /// Core point queries.
    Corepoint {
        #[command(subcommand)]
        command: CoreCommand,
    },
    /// Short normalizer-equivalent representative.
    Reduce {
        group: String,
        /// Comma-separated integers.
        #[arg(allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Symmetric integer programs.
    Ilp {
        #[command(subcommand)]
        command: IlpCommand,
    },
}

#[derive(Subcommand)]
enum CoreCommand {
    /// Exit status 0 for a core point, 1 otherwise.
    Check {
        group: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Core points of a layer up to normalizer equivalence, as JSON.
    Enumerate {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        layer: i64,
        /// Squared-norm bound; derived from `--c` when absent.
        #[arg(long)]
        bound: Option<f64>,
        /// Constant of the projection bound, e.g. `48/5`.
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        subgroup_filter: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IlpCommand {
    /// Exit status 0 when the instance is invariant under the group.
    CheckSym { instance: PathBuf, group: String },
    /// Substitute `x = S x' + t`.
    Transform {
        instance: PathBuf,
        /// JSON file with a row-major integer matrix.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// Greedy coefficient reduction over the normalizer.
    Improve {
        instance: PathBuf,
        group: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Balance the longest row in the log lattice before the descent.
        #[arg(long)]
        nearest_plane: bool,
    },
    /// Integer-infeasible instance from a core point.
    GenerateHard {
        group: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "1")]
        shrink: String,
    },
    /// Exhaustive feasibility check; exit status 1 when infeasible.
    BruteSolve {
        instance: PathBuf,
        /// `lo:hi` per coordinate, comma-separated; derived by LP when absent.
        #[arg(long = "box", allow_hyphen_values = true)]
        bx: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::ElementCap(_) => Failure::Budget(e.to_string()),
            Error::Syntax { .. } | Error::DimensionMismatch { .. } | Error::InvalidPermutation(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Other(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_group(s: &str) -> Result<PermGroup, Failure> {
    let t = s.trim();
    let path = std::path::Path::new(t);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| usage(e.to_string()))?;
        return Ok(PermGroup::from_json(&text)?);
    }
    if let Some(rest) = t.strip_prefix(['C', 'D', 'S']) {
        if let Ok(n) = rest.parse::<usize>() {
            if n == 0 {
                return Err(usage("degree must be positive"));
            }
            return Ok(match t.as_bytes()[0] {
                b'C' => PermGroup::cyclic(n),
                b'D' => PermGroup::dihedral(n),
                _ => PermGroup::symmetric(n),
            });
        }
    }
    if t.starts_with('(') {
        return Ok(PermGroup::from_cycles(t, None)?);
    }
    Err(usage(format!("cannot read group `{s}`")))
}

fn parse_point(s: &str) -> Result<Vec<BigInt>, Failure> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| usage(format!("bad integer `{x}`"))))
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let bad = || usage(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn read_instance(path: &PathBuf) -> Result<IlpInstance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(ilp::parse_instance(&text)?)
}

fn point_json(z: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(z.iter().map(int_to_json).collect())
}

fn analyze(group: &str) -> Outcome {
    let g = parse_group(group)?;
    let mut out = json!({
        "degree": g.degree(),
        "order": g.order()?,
        "transitive": g.is_transitive(),
    });
    if g.is_transitive() {
        out["qi"] = json!(is_qi_group(&g)?);
    }
    if let Some(n) = g.standard_cyclic_order() {
        let comps: Vec<_> = cyclic_components(n)
            .iter()
            .map(|c| {
                json!({
                    "frequencies": c.frequencies,
                    "order": c.order,
                    "real_dimension": c.real_dimension,
                    "rational": c.rational,
                })
            })
            .collect();
        out["components"] = json!(comps);
        out["normalizer_finite"] = json!(normalizer_finite(n));
        out["bass_units"] = json!(bass_units(n)
            .iter()
            .map(|u| u.coefficients().map(|c| point_json(&c)))
            .collect::<Vec<_>>());
    }
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(true)
}

fn check(group: &str, point: &str) -> Outcome {
    let g = parse_group(group)?;
    let z = parse_point(point)?;
    let core = OrbitPolytope::new(&g, &z)?.is_core()?;
    println!("{}", if core { "core point" } else { "not a core point" });
    Ok(core)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    group: &str,
    layer: i64,
    bound: Option<f64>,
    c: Option<String>,
    filter: Option<String>,
    radius: i64,
    out: Option<PathBuf>,
) -> Outcome {
    let g = parse_group(group)?;
    let norm = Normalizer::for_group(&g)?;
    let m = match bound {
        Some(m) => m,
        None => {
            let c = match c {
                Some(s) => parse_rational(&s)?,
                None => default_c_const(g.degree()).ok_or_else(|| usage("give --bound or --c"))?,
            };
            let lat = LogLattice::from_normalizer(&norm)?;
            norm_bound(&lat, &c, &BigInt::from(layer))?
        }
    };
    let opts = EnumerateOptions {
        radius,
        subgroup_filter: filter.as_deref().map(parse_group).transpose()?,
        ..EnumerateOptions::default()
    };
    let classes = enumerate_core_classes(&norm, layer, m, &opts)?;
    let text = serde_json::to_string_pretty(&classes_to_json(&classes)).expect("json");
    match out {
        Some(p) => std::fs::write(&p, text + "\n").map_err(|e| Failure::Other(e.to_string()))?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn reduce(group: &str, point: &str, radius: i64) -> Outcome {
    let g = parse_group(group)?;
    let z = parse_point(point)?;
    let norm = Normalizer::for_group(&g)?;
    let r = reduce_min_norm(&z, &norm, radius)?;
    let out = json!({
        "point": point_json(&r.point),
        "matrix": r.witness.linear().to_json(),
        "shift": point_json(r.witness.shift()),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(true)
}

fn run_ilp(cmd: IlpCommand) -> Outcome {
    match cmd {
        IlpCommand::CheckSym { instance, group } => {
            let p = read_instance(&instance)?;
            let g = parse_group(&group)?;
            let ok = ilp::check_invariance(&p, &g)?;
            println!("{}", if ok { "invariant" } else { "not invariant" });
            Ok(ok)
        }
        IlpCommand::Transform { instance, matrix, shift } => {
            let p = read_instance(&instance)?;
            let text = std::fs::read_to_string(&matrix).map_err(|e| usage(e.to_string()))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(e.to_string()))?;
            let s = IntMatrix::from_json(&v)?;
            let t = match shift {
                Some(t) => parse_point(&t)?,
                None => vec![BigInt::from(0); p.dim],
            };
            print!("{}", ilp::write_instance(&ilp::transform(&p, &s, &t)?));
            Ok(true)
        }
        IlpCommand::Improve {
            instance,
            group,
            budget,
            nearest_plane,
        } => {
            let p = read_instance(&instance)?;
            let g = parse_group(&group)?;
            let rep = if nearest_plane {
                ilp::improve_formulation_nearest_plane(&p, &g, budget)?
            } else {
                ilp::improve_formulation(&p, &g, budget)?
            };
            eprintln!(
                "steps: {}, max |entry| {} -> {}, sum of squares {} -> {}",
                rep.steps.len(),
                rep.before.max_abs,
                rep.after.max_abs,
                rep.before.sum_of_squares,
                rep.after.sum_of_squares
            );
            eprintln!("S = {}", rep.s.matrix().to_json());
            print!("{}", ilp::write_instance(&rep.instance));
            if rep.exhausted {
                return Err(Failure::Budget("step budget exhausted".into()));
            }
            Ok(true)
        }
        IlpCommand::GenerateHard { group, point, shrink } => {
            let g = parse_group(&group)?;
            let z = parse_point(&point)?;
            let shrink: BigInt = shrink.parse().map_err(|_| usage("bad --shrink"))?;
            match ilp::generate_hard_instance(&g, &z, &shrink) {
                Ok(p) => {
                    print!("{}", ilp::write_instance(&p));
                    Ok(true)
                }
                Err(Error::NotCorePoint) => {
                    eprintln!("not a core point");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        IlpCommand::BruteSolve { instance, bx } => {
            let p = read_instance(&instance)?;
            let bx = match bx {
                Some(s) => s
                    .split(',')
                    .map(|r| {
                        let (l, h) = r.split_once(':').ok_or_else(|| usage(format!("bad range `{r}`")))?;
                        Ok((
                            l.trim().parse::<BigInt>().map_err(|_| usage(format!("bad range `{r}`")))?,
                            h.trim().parse::<BigInt>().map_err(|_| usage(format!("bad range `{r}`")))?,
                        ))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?,
                None => match ilp::derive_box(&p) {
                    Ok(b) => b,
                    Err(Error::EmptyPolytope) => {
                        println!("infeasible");
                        return Ok(false);
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            match ilp::brute_force_feasible(&p, &bx)? {
                Some(x) => {
                    println!("{}", point_json(&x));
                    Ok(true)
                }
                None => {
                    println!("infeasible");
                    Ok(false)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { group } => analyze(&group),
        Command::Corepoint { command } => match command {
            CoreCommand::Check { group, point } => check(&group, &point),
            CoreCommand::Enumerate {
                group,
                layer,
                bound,
                c,
                subgroup_filter,
                radius,
                out,
            } => enumerate(&group, layer, bound, c, subgroup_filter, radius, out),
        },
        Command::Reduce { group, point, radius } => reduce(&group, &point, radius),
        Command::Ilp { command } => run_ilp(command),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        // invalid input that parsed but is unusable also counts as a usage error
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
