//! `eql`: exact construction and certification of maximum equiangular line
//! sets in dimension 18. Every command prints exact JSON; `reproduce`
//! additionally prints a pass/fail summary table and drives the exit code.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use eql_core::cliques::{
    build_class_graph, enum_max_cliques, psi0, psi0_clique, s10_orbit,
};
use eql_core::colorings::{
    count_factorizations, count_factorizations_slow, count_matchings, enum_matchings,
    enum_ordered_factorizations, inject_f, round_robin, telephone, Matching, ProperColoring,
};
use eql_core::exact::Rational;
use eql_core::lattice::{
    coset_min_norm, dual_pairs_outside_lambda, enum_coset_vectors, enum_dual_short_with_r,
    lambda_membership, min_dual_norm_outside_lambda_with_r, CosetLabel,
};
use eql_core::report::{
    build_aes, reproduce_all, reproduce_numbers, verify_appendix, ReproReport,
};
use eql_core::seidel::analyze;
use eql_core::symmetry::{
    aut_of_factorization, aut_of_i0, stabilizes, AutElement, Perm10,
};
use eql_core::xvec::{
    enumerate_x, verify_generates_lambda, verify_strong_maximality, AesSet,
};
use serde_json::json;
use std::collections::HashSet;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "eql", version, about = "Exact equiangular-line certification in dimension 18")]
struct Cli {
    /// Write primary JSON output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel enumerations (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 1152 candidate labels with family counts
    EnumerateX,
    /// Per-coset minimum norms of A_n dual classes: formula vs enumeration
    CosetMinima {
        #[arg(long)]
        n: u32,
    },
    /// Enumerate dual vectors of norm <= bound pairing to 1 with the root
    DualShort {
        /// Rational bound such as 3 or 7/2
        #[arg(long)]
        bound: String,
    },
    /// The 151200 maximum cliques of the 126-vertex class graph
    Cliques(CliquesArgs),
    /// The distinguished 12-vector set
    Psi0 {
        /// Run the validation checks
        #[arg(long)]
        verify: bool,
    },
    /// Matchings, factorizations and colorings of complete graphs
    Colorings {
        #[command(subcommand)]
        command: ColoringsCommand,
    },
    /// Join a v5 part and a coloring into a 57-vector set
    BuildAes(BuildAesArgs),
    /// Validate an equiangular-set file
    Verify {
        #[arg(long)]
        aes: PathBuf,
        /// Also certify strong maximality
        #[arg(long)]
        strong: bool,
    },
    /// Seidel spectrum analysis
    Seidel(SeidelArgs),
    /// Automorphism actions and stabilizer checks
    Orbits(OrbitsArgs),
    /// Reproduce the published exact values
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct CliquesArgs {
    /// Print only the census count
    #[arg(long)]
    count: bool,
    /// Dump the census to a JSON file
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Check the S10 orbit of the distinguished clique equals the census
    #[arg(long)]
    transitivity: bool,
}

#[derive(Subcommand)]
enum ColoringsCommand {
    /// The circle-method 1-factorization of K_{2n}
    RoundRobin {
        #[arg(long)]
        n: usize,
    },
    /// Brute-force matching count of K_v against the telephone number
    CountMatchings {
        #[arg(long)]
        v: usize,
    },
    /// Count 1-factorizations of K_v
    CountFactorizations {
        #[arg(long)]
        v: usize,
        /// Allow the long-running K10 census (hours)
        #[arg(long)]
        long: bool,
    },
    /// Exhaustive injectivity check of the coloring injection
    Inject {
        /// Which complete graph to check: k4 or k6
        #[arg(long, value_parser = ["k4", "k6"])]
        check: String,
    },
}

#[derive(Args)]
struct BuildAesArgs {
    /// v5 part: "psi0" or "clique:IDX" (index into the sorted census)
    #[arg(long, default_value = "psi0")]
    x5: String,
    /// Coloring JSON file (array of 10 arrays of edges)
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Inline coloring: ten comma-separated slots, each H1..H9 or "-",
    /// e.g. H1,H2,H3,H4,H5,H6,H7,H8,H9,-
    #[arg(long)]
    slots: Option<String>,
}

#[derive(Args)]
struct SeidelArgs {
    /// Equiangular-set JSON file
    #[arg(long)]
    aes: Option<PathBuf>,
    /// Compute the exact spectrum summary
    #[arg(long)]
    analyze: bool,
    /// Analyze a distinguished set (1 or 2) instead of a file
    #[arg(long)]
    example: Option<u8>,
}

#[derive(Args)]
struct OrbitsArgs {
    /// Check whether a group element stabilizes a set
    #[arg(long)]
    stabilizer_check: bool,
    #[arg(long)]
    aes: Option<PathBuf>,
    /// First block permutation in cycle notation, e.g. (1,2)(5,8)(6,9)(7,10)
    #[arg(long)]
    sigma1: Option<String>,
    /// Second block permutation in cycle notation
    #[arg(long)]
    sigma2: Option<String>,
    /// Use the block-negating branch of the group
    #[arg(long)]
    negated: bool,
    /// Automorphism group of the round-robin factorization (order 54)
    #[arg(long)]
    aut_h: bool,
    /// Automorphism group of the distinguished index family (order 24)
    #[arg(long)]
    aut_i0: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Every check, including all four bundled reference sets
    #[arg(long)]
    all: bool,
    /// Only the counting checks
    #[arg(long)]
    numbers: bool,
    /// One bundled reference set (1..=4)
    #[arg(long)]
    appendix: Option<u8>,
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("worker pool initializes once");
    }
    match run(&cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_report(cli: &Cli, report: &ReproReport) -> Result<bool> {
    let lines = report.to_json_lines();
    match &cli.out {
        Some(path) => {
            std::fs::write(path, lines + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => println!("{lines}"),
    }
    print!("{}", report.summary_table());
    Ok(report.all_pass())
}

fn load_aes(path: &PathBuf) -> Result<AesSet> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let aes: AesSet =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(aes)
}

fn parse_bound(text: &str) -> Result<Rational> {
    text.parse::<Rational>()
        .map_err(|e| anyhow!("bad rational {text:?}: {e}"))
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::EnumerateX => {
            let labels = enumerate_x();
            let v5 = labels.iter().filter(|l| l.lambda_coset() == 5).count();
            let v1 = labels.iter().filter(|l| l.lambda_coset() == 1).count();
            let vm1 = labels.iter().filter(|l| l.lambda_coset() == 9).count();
            emit(
                cli,
                &json!({
                    "total": labels.len(),
                    "v1": v1,
                    "vm1": vm1,
                    "v5": v5,
                    "labels": labels,
                }),
            )?;
            Ok(true)
        }
        Command::CosetMinima { n } => {
            let mut rows = Vec::new();
            let mut all_match = true;
            for m in 0..=*n {
                let label = CosetLabel::new(*n, m).map_err(|e| anyhow!(e.to_string()))?;
                let formula = coset_min_norm(label);
                let at_min = enum_coset_vectors(label, &formula);
                let enumerated_min = at_min
                    .iter()
                    .map(|v| eql_core::exact::dot(v, v))
                    .min()
                    .unwrap_or_else(|| formula.clone());
                let ok = enumerated_min == formula;
                all_match &= ok;
                rows.push(json!({
                    "m": m,
                    "formula": formula.to_string(),
                    "enumerated_min": enumerated_min.to_string(),
                    "vectors_at_min": at_min.len(),
                    "pass": ok,
                }));
            }
            emit(cli, &json!({ "n": n, "rows": rows }))?;
            Ok(all_match)
        }
        Command::DualShort { bound } => {
            let bound = parse_bound(bound)?;
            let found = enum_dual_short_with_r(&bound);
            let outside: Vec<_> = found
                .iter()
                .filter(|v| lambda_membership(v).is_none())
                .collect();
            let min_outside = min_dual_norm_outside_lambda_with_r();
            emit(
                cli,
                &json!({
                    "bound": bound.to_string(),
                    "count": found.len(),
                    "outside_lambda": outside.len(),
                    "coset_pairs_outside_lambda": dual_pairs_outside_lambda(),
                    "min_norm_outside_lambda": min_outside.to_string(),
                }),
            )?;
            Ok(true)
        }
        Command::Cliques(args) => {
            let g = build_class_graph();
            let census = enum_max_cliques(&g);
            let mut ok = census.len() == 151200;
            if let Some(path) = &args.dump {
                let value = json!({
                    "vertex_reps": g.vertices,
                    "cliques": census,
                });
                std::fs::write(path, serde_json::to_string(&value)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut payload = json!({
                "count": census.len(),
                "max_size": 12,
            });
            if args.transitivity {
                let (info, orbit) = s10_orbit(&g, &psi0_clique(&g));
                let transitive = orbit == census;
                ok &= transitive;
                payload["orbit_size"] = json!(info.orbit_size);
                payload["stabilizer_order"] = json!(info.stabilizer_order);
                payload["orbit_equals_census"] = json!(transitive);
            }
            if args.count && !args.transitivity && args.dump.is_none() {
                payload = json!({ "count": census.len() });
            }
            emit(cli, &payload)?;
            Ok(ok)
        }
        Command::Psi0 { verify } => {
            let s = psi0();
            let mut payload = json!({ "set": s });
            let mut ok = true;
            if *verify {
                let valid = s.len() == 12 && s.is_aes();
                let g = build_class_graph();
                let clique = psi0_clique(&g);
                ok = valid && clique.vertices.len() == 12;
                payload["is_aes"] = json!(valid);
                payload["clique"] = json!(clique);
            }
            emit(cli, &payload)?;
            Ok(ok)
        }
        Command::Colorings { command } => run_colorings(cli, command),
        Command::BuildAes(args) => {
            let x5_part = match args.x5.as_str() {
                "psi0" => psi0(),
                other => {
                    let idx: usize = other
                        .strip_prefix("clique:")
                        .ok_or_else(|| anyhow!("bad --x5 {other:?}: use psi0 or clique:IDX"))?
                        .parse()
                        .context("bad clique index")?;
                    let g = build_class_graph();
                    let census = enum_max_cliques(&g);
                    census
                        .get(idx)
                        .ok_or_else(|| anyhow!("clique index {idx} out of range"))?
                        .to_aes(&g)
                }
            };
            let coloring = match (&args.coloring, &args.slots) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str::<ProperColoring>(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                (None, Some(spec)) => parse_slots(spec)?,
                _ => bail!("provide exactly one of --coloring FILE or --slots SPEC"),
            };
            let joined = build_aes(&x5_part, &coloring).map_err(|e| anyhow!(e.to_string()))?;
            emit(cli, &serde_json::to_value(&joined)?)?;
            Ok(true)
        }
        Command::Verify { aes, strong } => {
            let s = load_aes(aes)?;
            let valid = s.is_aes();
            let generates = valid && verify_generates_lambda(&s);
            let mut payload = json!({
                "size": s.len(),
                "is_aes": valid,
                "generates_lambda": generates,
            });
            let mut ok = valid;
            if *strong {
                if !valid {
                    bail!("--strong requires an equiangular set");
                }
                let cert = verify_strong_maximality(&s);
                ok &= cert.verdict;
                payload["certificate"] = serde_json::to_value(&cert)?;
            }
            emit(cli, &payload)?;
            Ok(ok)
        }
        Command::Seidel(args) => {
            let s = match (&args.aes, args.example) {
                (Some(path), None) => load_aes(path)?,
                (None, Some(which)) => eql_core::report::example_aes(which),
                _ => bail!("provide exactly one of --aes FILE or --example N"),
            };
            if !args.analyze && args.example.is_none() {
                bail!("nothing to do: pass --analyze");
            }
            if !s.is_aes() {
                bail!("input is not an equiangular set");
            }
            let summary = analyze(&s);
            let factored = factored_form(&summary.charpoly);
            emit(
                cli,
                &json!({
                    "size": s.len(),
                    "charpoly": summary.charpoly,
                    "charpoly_factored": factored,
                    "mult5": summary.mult5,
                    "dimension": summary.dimension,
                    "distinct_eigs": summary.distinct_eigs,
                }),
            )?;
            Ok(true)
        }
        Command::Orbits(args) => run_orbits(cli, args),
        Command::Reproduce(args) => {
            let report = if args.all {
                reproduce_all().map_err(|e| anyhow!(e.to_string()))?
            } else if let Some(which) = args.appendix {
                verify_appendix(which).map_err(|e| anyhow!(e.to_string()))?
            } else if args.numbers {
                reproduce_numbers()
            } else {
                bail!("pass one of --all, --numbers, --appendix N");
            };
            emit_report(cli, &report)
        }
    }
}

fn run_colorings(cli: &Cli, command: &ColoringsCommand) -> Result<bool> {
    match command {
        ColoringsCommand::RoundRobin { n } => {
            if *n == 0 {
                bail!("n must be positive");
            }
            let f = round_robin(*n);
            emit(cli, &serde_json::to_value(&f)?)?;
            Ok(true)
        }
        ColoringsCommand::CountMatchings { v } => {
            let brute = count_matchings(*v).map_err(|e| anyhow!(e.to_string()))?;
            let closed = telephone(*v);
            let ok = brute == closed;
            emit(
                cli,
                &json!({
                    "v": v,
                    "bruteforce": brute.to_string(),
                    "telephone": closed.to_string(),
                    "pass": ok,
                }),
            )?;
            Ok(ok)
        }
        ColoringsCommand::CountFactorizations { v, long } => {
            let count = if *long {
                count_factorizations_slow(*v, |done, total| {
                    eprintln!("progress: {done}/{total} top-level branches finished");
                })
            } else {
                count_factorizations(*v)
            }
            .map_err(|e| anyhow!(e.to_string()))?;
            emit(cli, &json!({ "v": v, "count": count.to_string() }))?;
            Ok(true)
        }
        ColoringsCommand::Inject { check } => {
            let v = if check == "k4" { 4 } else { 6 };
            let ordered = enum_ordered_factorizations(v).map_err(|e| anyhow!(e.to_string()))?;
            let matchings = enum_matchings(v).map_err(|e| anyhow!(e.to_string()))?;
            let mut images: HashSet<ProperColoring> = HashSet::new();
            let mut inputs = 0usize;
            for f in &ordered {
                for m in &matchings {
                    inputs += 1;
                    images.insert(inject_f(f, m));
                }
            }
            let injective = images.len() == inputs;
            emit(
                cli,
                &json!({
                    "graph": check,
                    "inputs": inputs,
                    "distinct_images": images.len(),
                    "injective": injective,
                }),
            )?;
            Ok(injective)
        }
    }
}

fn run_orbits(cli: &Cli, args: &OrbitsArgs) -> Result<bool> {
    if args.aut_h {
        let group = aut_of_factorization(&round_robin(5));
        let order = group.order();
        emit(cli, &json!({ "group": "factorization", "order": order }))?;
        return Ok(order == 54);
    }
    if args.aut_i0 {
        let group = aut_of_i0();
        let order = group.order();
        emit(cli, &json!({ "group": "index_family", "order": order }))?;
        return Ok(order == 24);
    }
    if args.stabilizer_check {
        let path = args
            .aes
            .as_ref()
            .ok_or_else(|| anyhow!("--stabilizer-check needs --aes FILE"))?;
        let s = load_aes(path)?;
        if !s.is_aes() {
            bail!("input is not an equiangular set");
        }
        let sigma1 = Perm10::from_cycles(args.sigma1.as_deref().unwrap_or("()"))
            .map_err(|e| anyhow!(e))?;
        let sigma2 = Perm10::from_cycles(args.sigma2.as_deref().unwrap_or("()"))
            .map_err(|e| anyhow!(e))?;
        let g = AutElement::new(sigma1, sigma2, args.negated);
        let exact = stabilizes(&g, &s, false);
        let up_to_switching = stabilizes(&g, &s, true);
        emit(
            cli,
            &json!({
                "sigma1": sigma1.cycle_string(),
                "sigma2": sigma2.cycle_string(),
                "negated": args.negated,
                "stabilizes_exactly": exact,
                "stabilizes_up_to_switching": up_to_switching,
            }),
        )?;
        return Ok(up_to_switching);
    }
    bail!("pass one of --stabilizer-check, --aut-h, --aut-i0");
}

/// Factor out integer roots by trial division over the eigenvalue range,
/// leaving the residual polynomial.
fn factored_form(p: &eql_core::exact::IntPolynomial) -> serde_json::Value {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for root in -70i64..=70 {
        let mult = rest.root_multiplicity(root);
        if mult > 0 {
            for _ in 0..mult {
                rest = rest
                    .divide_exact(&eql_core::exact::IntPolynomial::x_minus(root))
                    .expect("verified root divides");
            }
            factors.push(json!({ "root": root.to_string(), "multiplicity": mult }));
        }
    }
    json!({ "linear_factors": factors, "residual": rest })
}

/// Parse `--slots H1,H8,H9,-,H2,...`: ten tokens, each a round-robin factor
/// or `-` for an empty class.
fn parse_slots(slots: &str) -> Result<ProperColoring> {
    let f = round_robin(5);
    let tokens: Vec<&str> = slots.split(',').map(str::trim).collect();
    if tokens.len() != 10 {
        bail!("--slots needs exactly 10 comma-separated entries, got {}", tokens.len());
    }
    let mut classes = Vec::with_capacity(10);
    for token in tokens {
        if token == "-" {
            classes.push(Matching::empty());
            continue;
        }
        let idx: usize = token
            .strip_prefix('H')
            .ok_or_else(|| anyhow!("bad slot {token:?}: use H1..H9 or -"))?
            .parse()
            .with_context(|| format!("bad slot {token:?}"))?;
        if !(1..=9).contains(&idx) {
            bail!("slot index {idx} outside 1..=9");
        }
        classes.push(f.factors()[idx - 1].clone());
    }
    ProperColoring::new(classes).map_err(|e| anyhow!(e.to_string()))
}
