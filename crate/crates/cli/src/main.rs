use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cohlab::fuzz::{self, FuzzConfig};
use cohlab::io::{parse_state, parse_unitary, state_to_json};
use cohlab::lsdecomp::{ls_bell_diagonal, ls_horodecki, upper_bound_ls, LsDecomposition};
use cohlab::relations::{self, BasisOrder, RelationId, RelationReport, DEFAULT_TOL};
use cohlab::states::{random_mixed_with, random_pure_with, stream_rng, BellVector};
use cohlab::{
    bell_diagonal, circular_basis, computational_basis, fourier_basis, hadamard_basis, horodecki_state,
    maximally_coherent, maximally_mixed, random_basis, Basis, BellDiagonalParams, BellOrdering, DensityMatrix,
    HorodeckiParams,
};
use cohlab::{figure, reference_values};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

/// Relative entropy of coherence: bounds, worked examples and fuzzing.
#[derive(Parser)]
#[command(name = "cohlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate relations on a state read from a JSON file.
    Check(CheckArgs),
    /// Recompute the worked examples and compare with reference values.
    Examples,
    /// Check every relation on seeded random instances.
    Fuzz(FuzzArgs),
    /// Write the Bell-diagonal sweep CSVs for both figure panels.
    Figure1 {
        /// Directory that receives figure1_panel_a.csv and figure1_panel_b.csv.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Write a state file.
    State {
        #[command(subcommand)]
        kind: StateKind,
        /// Output file; stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Relation ids (eq5, eq9, eq10, eq11, eq14, eq17, eq18, eq26, eq29, eq31).
    #[arg(long, value_delimiter = ',', required = true)]
    relation: Vec<String>,
    /// State file: {"dims": [..], "matrix": [[re, im], ...]}.
    #[arg(long)]
    state: PathBuf,
    /// computational, fourier, hadamard, circular, random:<seed>, or a unitary JSON file.
    #[arg(long, default_value = "computational")]
    basis_a: String,
    #[arg(long, default_value = "fourier")]
    basis_b: String,
    /// Basis list for the multi-basis relations; defaults to basis-a,basis-b.
    #[arg(long, value_delimiter = ',')]
    bases: Vec<String>,
    /// Ordering used for the multi-basis overlap constant.
    #[arg(long, value_enum, default_value_t = Order::Given)]
    order: Order,
    /// Slack tolerance in bits (overrides COHLAB_TOL).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Given,
    Best,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Restrict to these relation ids.
    #[arg(long, value_delimiter = ',')]
    relation: Vec<String>,
    /// Run only this trial and print its reports.
    #[arg(long)]
    replay: Option<u64>,
    /// Slack tolerance in bits (overrides COHLAB_TOL).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, hide = true)]
    inject_violation: bool,
}

#[derive(Subcommand)]
enum StateKind {
    /// Two-qubit Bell-diagonal state.
    BellDiagonal {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Ordering::PhiPhiPsiPsi)]
        ordering: Ordering,
    },
    /// A single Bell vector.
    Bell {
        #[arg(value_enum)]
        which: Bell,
    },
    /// Two-qutrit bound-entangled family, 2 <= gamma <= 5.
    Horodecki {
        #[arg(long)]
        gamma: f64,
    },
    MaximallyMixed {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    MaximallyCoherent {
        #[arg(long)]
        dim: usize,
    },
    /// Seeded random state (Ginibre mixed by default).
    Random {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pure: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ordering {
    PhiPhiPsiPsi,
    PhiPsiPsiPhi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Examples => cmd_examples(),
        Command::Fuzz(args) => cmd_fuzz(&args),
        Command::Figure1 { out_dir } => cmd_figure1(&out_dir),
        Command::State { kind, out } => cmd_state(&kind, out.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn tolerance(flag: Option<f64>) -> CliResult<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("COHLAB_TOL") {
            Ok(s) => s.trim().parse().map_err(|_| format!("COHLAB_TOL=`{s}` is not a number"))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(format!("tolerance must be a positive number, got {tol}"));
    }
    Ok(tol)
}

fn parse_relations(ids: &[String]) -> CliResult<Vec<RelationId>> {
    ids.iter().map(|s| s.parse::<RelationId>().map_err(|e| e.to_string())).collect()
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn resolve_basis(spec: &str, d: usize) -> CliResult<Basis> {
    let basis = match spec {
        "computational" => computational_basis(d),
        "fourier" => fourier_basis(d),
        "hadamard" | "circular" if d != 2 => return Err(format!("basis `{spec}` is only defined for d = 2, not {d}")),
        "hadamard" => hadamard_basis(),
        "circular" => circular_basis(),
        _ => match spec.strip_prefix("random:") {
            Some(_) if d < 2 => return Err(format!("basis `{spec}` needs dimension at least 2")),
            Some(seed) => {
                let seed = seed.parse().map_err(|_| format!("bad seed in basis `{spec}`"))?;
                random_basis(d, seed)
            }
            None => parse_unitary(&read_file(Path::new(spec))?).map_err(|e| format!("{spec}: {e}"))?,
        },
    };
    if basis.dim() != d {
        return Err(format!("basis `{spec}` has dimension {}, expected {d}", basis.dim()));
    }
    Ok(basis)
}

/// A named basis applied to every subsystem, or a unitary file covering the whole space.
fn resolve_product_basis(spec: &str, dims: &[usize]) -> CliResult<Basis> {
    let total: usize = dims.iter().product();
    if Path::new(spec).is_file() {
        return resolve_basis(spec, total);
    }
    let mut parts = dims.iter().map(|&d| resolve_basis(spec, d));
    let first = parts.next().expect("states have at least one subsystem")?;
    parts.try_fold(first, |acc, b| Ok(acc.tensor(&b?)))
}

/// Recovers a closed-form split when `rho` belongs to one of the two supported families.
fn known_split(rho: &DensityMatrix) -> CliResult<LsDecomposition> {
    const MATCH_TOL: f64 = 1e-10;
    let matches = |candidate: &DensityMatrix| candidate.matrix().max_abs_diff(rho.matrix()) <= MATCH_TOL;
    match rho.dims() {
        [2, 2] => {
            let ordering = BellOrdering::PhiPhiPsiPsi;
            let weights = ordering.vectors().map(|v| rho.matrix().expectation(&v.amplitudes()).max(0.0));
            if let Ok(p) = BellDiagonalParams::new(weights) {
                if matches(&bell_diagonal(&p, ordering)) {
                    return Ok(ls_bell_diagonal(&p, ordering));
                }
            }
        }
        [3, 3] => {
            // the |01> diagonal entry is gamma/21
            let gamma = 21.0 * rho.matrix()[(1, 1)].re;
            if let Ok(p) = HorodeckiParams::new(gamma) {
                if matches(&horodecki_state(&p)) {
                    return Ok(ls_horodecki(&p));
                }
            }
        }
        _ => {}
    }
    Err("eq18 needs a Bell-diagonal two-qubit state or a member of the two-qutrit family".into())
}

fn print_report(report: &RelationReport) {
    let verdict = if report.holds { "holds" } else { "VIOLATED" };
    println!("{} ({}): {verdict}", report.relation, report.relation.description());
    let width = report.terms.keys().map(String::len).max().unwrap_or(0).max(5);
    for (name, value) in [("lhs", report.lhs), ("rhs", report.rhs), ("slack", report.slack)]
        .into_iter()
        .chain(report.terms.iter().map(|(k, v)| (k.as_str(), *v)))
    {
        println!("  {name:<width$}  {value:>20.12}");
    }
    println!("{}", report.to_json());
}

fn with_tol(mut report: RelationReport, tol: f64) -> RelationReport {
    report.holds = report.holds_within(tol);
    report
}

fn cmd_check(args: &CheckArgs) -> CliResult<u8> {
    let tol = tolerance(args.tol)?;
    let ids = parse_relations(&args.relation)?;
    let rho = parse_state(&read_file(&args.state)?).map_err(|e| format!("{}: {e}", args.state.display()))?;
    let order = match args.order {
        Order::Given => BasisOrder::AsGiven,
        Order::Best => BasisOrder::Best,
    };
    let list_names: Vec<&str> = if args.bases.is_empty() {
        vec![&args.basis_a, &args.basis_b]
    } else {
        args.bases.iter().map(String::as_str).collect()
    };
    let on_a = |spec: &str| -> CliResult<Basis> {
        let (da, _) = rho.bipartite_dims().map_err(|e| e.to_string())?;
        resolve_basis(spec, da)
    };
    let whole = |spec: &str| resolve_basis(spec, rho.dim());
    let pair = |f: &dyn Fn(&str) -> CliResult<Basis>| -> CliResult<(Basis, Basis)> {
        Ok((f(&args.basis_a)?, f(&args.basis_b)?))
    };
    let list = |f: &dyn Fn(&str) -> CliResult<Basis>| -> CliResult<Vec<Basis>> {
        list_names.iter().map(|s| f(s)).collect()
    };
    let err = |e: cohlab::Error| e.to_string();

    let mut reports = Vec::new();
    for id in ids {
        match id {
            RelationId::TwoBasis => {
                let (a, b) = pair(&whole)?;
                reports.push(relations::check_two_basis_single(&rho, &a, &b).map_err(err)?);
            }
            RelationId::MultiBasis => {
                let bases = list(&whole)?;
                let refs: Vec<&Basis> = bases.iter().collect();
                reports.push(relations::check_multi_basis_single(&rho, &refs, order).map_err(err)?);
            }
            RelationId::BipartiteTwoBasis => {
                let (a, b) = pair(&on_a)?;
                reports.push(relations::check_bipartite_two_basis(&rho, &a, &b).map_err(err)?);
            }
            RelationId::BipartiteDiscord => {
                let (a, b) = pair(&on_a)?;
                reports.push(relations::check_bipartite_discord_improved(&rho, &a, &b).map_err(err)?);
            }
            RelationId::BipartiteMultiBasis => {
                let bases = list(&on_a)?;
                let refs: Vec<&Basis> = bases.iter().collect();
                reports.push(relations::check_multi_basis_bipartite(&rho, &refs, order).map_err(err)?);
            }
            RelationId::Tripartite => {
                let dims = rho.dims();
                if dims.len() != 3 {
                    return Err(format!("eq11 needs a tripartite state, got subsystem dimensions {dims:?}"));
                }
                let a = resolve_basis(&args.basis_a, dims[0])?;
                let b = resolve_basis(&args.basis_b, dims[0])?;
                let t = relations::check_tripartite(&rho, &a, &b).map_err(err)?;
                reports.extend([t.ab, t.ad, t.ssa]);
            }
            RelationId::ConditionalUpper => {
                let (a, b) = pair(&on_a)?;
                reports.push(relations::check_conditional_upper(&rho, &a, &b).map_err(err)?);
            }
            RelationId::LsUpper => {
                rho.bipartite_dims().map_err(err)?;
                let ls = known_split(&rho)?;
                let a = resolve_product_basis(&args.basis_a, rho.dims())?;
                let b = resolve_product_basis(&args.basis_b, rho.dims())?;
                reports.push(upper_bound_ls(&rho, &ls, &a, &b).map_err(err)?);
            }
            RelationId::FannesUpper => {
                let a = whole(&args.basis_a)?;
                reports.push(relations::fannes_coherence_upper(&rho, &a).map_err(err)?);
            }
            RelationId::CoherenceDifference => {
                let (a, b) = pair(&whole)?;
                reports.push(relations::coherence_difference_bound(&rho, &a, &b).map_err(err)?);
            }
        }
    }
    let mut all_hold = true;
    for report in reports {
        let report = with_tol(report, tol);
        all_hold &= report.holds;
        print_report(&report);
    }
    Ok(if all_hold { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_examples() -> CliResult<u8> {
    let rows = reference_values::worked_examples().map_err(|e| e.to_string())?;
    print!("{}", reference_values::render_table(&rows));
    Ok(if reference_values::all_pass(&rows) { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_fuzz(args: &FuzzArgs) -> CliResult<u8> {
    if args.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let config = FuzzConfig {
        seed: args.seed,
        trials: args.trials,
        tolerance: tolerance(args.tol)?,
        relations: parse_relations(&args.relation)?,
        replay: args.replay,
        sabotage: args.inject_violation,
    };
    let summary = fuzz::run(&config);
    for report in &summary.replayed {
        println!("{}", report.to_json());
    }
    print!("{}", summary.render());
    Ok(if summary.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_figure1(out_dir: &Path) -> CliResult<u8> {
    let paths = figure::write_panels(out_dir).map_err(|e| format!("cannot write to {}: {e}", out_dir.display()))?;
    for path in paths {
        println!("wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

fn cmd_state(kind: &StateKind, out: Option<&Path>) -> CliResult<u8> {
    let err = |e: cohlab::Error| e.to_string();
    let rho = match kind {
        StateKind::BellDiagonal { weights, ordering } => {
            let w: [f64; 4] = weights.as_slice().try_into().map_err(|_| "--weights needs four values".to_string())?;
            let ordering = match ordering {
                Ordering::PhiPhiPsiPsi => BellOrdering::PhiPhiPsiPsi,
                Ordering::PhiPsiPsiPhi => BellOrdering::PhiPsiPsiPhi,
            };
            bell_diagonal(&BellDiagonalParams::new(w).map_err(err)?, ordering)
        }
        StateKind::Bell { which } => match which {
            Bell::PhiPlus => BellVector::PhiPlus,
            Bell::PhiMinus => BellVector::PhiMinus,
            Bell::PsiPlus => BellVector::PsiPlus,
            Bell::PsiMinus => BellVector::PsiMinus,
        }
        .projector(),
        StateKind::Horodecki { gamma } => horodecki_state(&HorodeckiParams::new(*gamma).map_err(err)?),
        StateKind::MaximallyMixed { dims } => {
            check_dims(dims)?;
            maximally_mixed(dims)
        }
        StateKind::MaximallyCoherent { dim } => {
            check_dims(&[*dim])?;
            maximally_coherent(*dim)
        }
        StateKind::Random { dims, seed, pure } => {
            check_dims(dims)?;
            let mut rng = stream_rng(*seed, 0);
            if *pure {
                random_pure_with(dims, &mut rng)
            } else {
                random_mixed_with(dims, &mut rng)
            }
        }
    };
    let json = state_to_json(&rho);
    match out {
        Some(path) => std::fs::write(path, json).map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(EXIT_OK)
}

fn check_dims(dims: &[usize]) -> CliResult<()> {
    const MAX_DIM: usize = 64;
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    if dims.iter().any(|&d| d < 1) || total < 2 || total > MAX_DIM {
        return Err(format!("dims {dims:?} must be positive with a total dimension between 2 and {MAX_DIM}"));
    }
    Ok(())
}
