use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropmat::check::run_checks;
use tropmat::complex::{
    cross_validate, enumerate_all_cells, enumerate_maximal_cells, skeleton, skeleton_dot, theorem_coarse_types,
    DEFAULT_CAP,
};
use tropmat::halfspace::{
    gk_minimal, hypersimplex_generators, hypersimplex_halfspaces, inequality, inequality_form,
    verify_exterior_description, DEFAULT_PROBE_BUDGET,
};
use tropmat::ideal::{ideal_generators, resolution_ranks};
use tropmat::matroid::{enumerate_bases, non_bases, parse_bases, parse_graph, uniform, GroundMatroid};
use tropmat::minplus::{TropicalHalfspace, TropicalPoint};
use tropmat::polytope::{build_polytope, corner, maximal_bounded_cells, pseudovertices, PolytopeModel};

/// Exact combinatorics of tropical matroid polytopes.
#[derive(Debug, Parser)]
#[command(name = "tropmat", version)]
struct Cli {
    #[command(flatten)]
    input: Input,

    /// Output format; each command has a natural default.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Bound on search nodes for cell enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Prepend the empty face to f-vectors.
    #[arg(long, global = true)]
    with_empty_face: bool,

    /// Name ideal variables x_0..x_d instead of x_1..x_{d+1}.
    #[arg(long, global = true)]
    zero_based_vars: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct Input {
    /// Graph JSON: {"vertices":[..],"edges":[[a,b],..]}.
    #[arg(long, global = true, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Basis-list JSON: {"ground_size":m,"bases":[[..],..]}.
    #[arg(long, global = true, value_name = "FILE")]
    bases: Option<PathBuf>,

    /// The hypersimplex Δ_k^d, i.e. the uniform matroid of rank K on D+1 elements.
    #[arg(long, global = true, value_name = "K,D", value_parser = parse_pair)]
    uniform: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the bases.
    Bases,
    /// List the rank-sized subsets that are not bases.
    Nonbases,
    /// List the generators -e_B in canonical coordinates.
    Generators,
    /// Type of the origin.
    OriginType,
    /// Corners e_i with their types.
    Corners,
    /// Pseudovertices with labels, points and types.
    Pseudovertices,
    /// Maximal bounded cells, one per complete valid sequence.
    BoundedCells,
    /// All cells of the tropical complex.
    Complex {
        /// Print only the f-vector.
        #[arg(long)]
        fvector: bool,
    },
    /// Coarse types of the maximal cells.
    CoarseTypes {
        #[command(flatten)]
        mode: CoarseMode,
    },
    /// Minimal generators of the coarse-type ideal.
    Ideal {
        /// Print the ranks of its cellular resolution instead.
        #[arg(long)]
        resolution: bool,
    },
    /// Minimal exterior description of Δ_k^d.
    HypersimplexHalfspaces {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: usize,
    },
    /// Minimality test for tropical halfspaces.
    CheckMinimal {
        /// Halfspace JSON {"apex":[..],"sectors":[..]}; defaults to every member of the Δ_k^d system.
        #[arg(long, value_name = "FILE")]
        halfspace: Option<PathBuf>,
        #[arg(short)]
        k: Option<usize>,
        #[arg(short)]
        d: Option<usize>,
    },
    /// Compare the Δ_k^d halfspace system with the hull on a probe set.
    VerifyExterior {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: usize,
        /// Drop the halfspace at this 1-based position first.
        #[arg(long)]
        omit: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_PROBE_BUDGET)]
        probe_budget: usize,
    },
    /// Bounded 1-skeleton on the pseudovertices.
    Skeleton {
        /// Same as --format dot.
        #[arg(long)]
        dot: bool,
    },
    /// Run the invariant suite over the bundled fixtures.
    Check {
        #[arg(long, default_value_t = DEFAULT_PROBE_BUDGET)]
        probe_budget: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CoarseMode {
    /// From the closed form, one per sequence.
    #[arg(long)]
    formula: bool,
    /// From brute-force enumeration.
    #[arg(long)]
    brute: bool,
    /// Compare the two.
    #[arg(long)]
    cross_validate: bool,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (k, d) = s.split_once(',').ok_or("expected K,D")?;
    let k = k.trim().parse().map_err(|_| format!("bad K in {s:?}"))?;
    let d = d.trim().parse().map_err(|_| format!("bad D in {s:?}"))?;
    Ok((k, d))
}

/// What a command produced: text for stdout and whether its check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }

    fn json(v: Value) -> Self {
        Self::ok(v.to_string() + "\n")
    }
}

fn load_matroid(input: &Input) -> Result<GroundMatroid> {
    if let Some(path) = &input.graph {
        let text = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(enumerate_bases(&parse_graph(&text).with_context(|| format!("in {}", path.display()))?));
    }
    if let Some(path) = &input.bases {
        let text = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_bases(&text).with_context(|| format!("in {}", path.display()));
    }
    if let Some((k, d)) = input.uniform {
        return Ok(uniform(k, d + 1)?);
    }
    bail!("this command needs an input: --graph, --bases or --uniform")
}

fn set_json(s: &BTreeSet<usize>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn set_text(s: &BTreeSet<usize>) -> String {
    format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn fvector_text(f: &[usize]) -> String {
    f.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n"
}

fn run(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    let polytope = || -> Result<PolytopeModel> { Ok(build_polytope(&load_matroid(&cli.input)?)) };
    let reject_dot = |default: Format| -> Result<Format> {
        match fmt.unwrap_or(default) {
            Format::Dot => bail!("--format dot is only available for skeleton"),
            f => Ok(f),
        }
    };
    Ok(match &cli.command {
        Command::Bases => {
            let m = load_matroid(&cli.input)?;
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(m.to_json()),
                _ => Outcome::ok(
                    m.bases().iter().enumerate().map(|(i, b)| format!("B{} {}\n", i + 1, set_text(b))).collect(),
                ),
            }
        }
        Command::Nonbases => {
            let nb = non_bases(&load_matroid(&cli.input)?);
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(Value::Array(nb.iter().map(set_json).collect())),
                _ => Outcome::ok(nb.iter().map(|s| set_text(s) + "\n").collect()),
            }
        }
        Command::Generators => {
            let p = polytope()?;
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(Value::Array(p.generators().iter().map(TropicalPoint::to_json).collect())),
                _ => Outcome::ok(
                    p.generators().iter().enumerate().map(|(i, v)| format!("v{} {v}\n", i + 1)).collect(),
                ),
            }
        }
        Command::OriginType => {
            let p = polytope()?;
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(json!(p.origin_type())),
                _ => Outcome::ok(format!("{}\n", p.origin_type())),
            }
        }
        Command::Corners => {
            let p = polytope()?;
            let mut rows = Vec::new();
            for i in 1..=p.width() {
                let c = corner(&p, i)?;
                let t = tropmat::minplus::fine_type(&c, p.generators())?;
                rows.push((i, c, t));
            }
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(Value::Array(
                    rows.iter().map(|(i, c, t)| json!({"coordinate": i, "point": c.to_json(), "type": t})).collect(),
                )),
                _ => Outcome::ok(rows.iter().map(|(i, c, t)| format!("c{i} {c} {t}\n")).collect()),
            }
        }
        Command::Pseudovertices => {
            let p = polytope()?;
            let vs = pseudovertices(&p);
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(Value::Array(
                    vs.iter()
                        .map(|v| {
                            json!({
                                "label": v.label(p.matroid()),
                                "support": set_json(&v.support),
                                "point": v.point.to_json(),
                                "type": v.fine_type,
                            })
                        })
                        .collect(),
                )),
                _ => Outcome::ok(
                    vs.iter().map(|v| format!("{} {} {}\n", v.label(p.matroid()), v.point, v.fine_type)).collect(),
                ),
            }
        }
        Command::BoundedCells => {
            let p = polytope()?;
            let cells = maximal_bounded_cells(&p);
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(Value::Array(
                    cells
                        .iter()
                        .map(|c| {
                            json!({
                                "sequence": c.sequence,
                                "basis": c.basis,
                                "chain": c.vertex_chain.iter().map(TropicalPoint::to_json).collect::<Vec<_>>(),
                                "type": c.interior_type,
                                "dim": c.interior_type.cell_dimension(),
                            })
                        })
                        .collect(),
                )),
                _ => Outcome::ok(
                    cells
                        .iter()
                        .map(|c| {
                            let seq: Vec<String> = c.sequence.iter().map(ToString::to_string).collect();
                            format!("({}) B{} {}\n", seq.join(","), c.basis, c.interior_type)
                        })
                        .collect(),
                ),
            }
        }
        Command::Complex { fvector } => {
            let p = polytope()?;
            let c = enumerate_all_cells(&p, cli.cap)?;
            let f = if cli.with_empty_face { c.f_vector_with_empty_face() } else { c.f_vector.clone() };
            match (reject_dot(Format::Json)?, fvector) {
                (Format::Json, true) => Outcome::json(json!(f)),
                (_, true) => Outcome::ok(fvector_text(&f)),
                (Format::Json, false) => Outcome::json(c.to_json()),
                (_, false) => Outcome::ok(
                    c.cells
                        .iter()
                        .map(|cell| {
                            let kind = if cell.bounded { "bounded" } else { "unbounded" };
                            format!("{} dim={} {kind} {} {}\n", cell.fine_type, cell.dimension, cell.coarse(), cell.witness)
                        })
                        .collect(),
                ),
            }
        }
        Command::CoarseTypes { mode } => {
            let p = polytope()?;
            if mode.formula {
                let types = theorem_coarse_types(p.matroid());
                match reject_dot(Format::Json)? {
                    Format::Json => Outcome::json(Value::Array(
                        types.iter().map(|(s, t)| json!({"sequence": s, "coarse": t})).collect(),
                    )),
                    _ => Outcome::ok(
                        types
                            .iter()
                            .map(|(s, t)| {
                                let seq: Vec<String> = s.iter().map(ToString::to_string).collect();
                                format!("({}) {t}\n", seq.join(","))
                            })
                            .collect(),
                    ),
                }
            } else if mode.brute {
                let cells = enumerate_maximal_cells(&p, cli.cap)?;
                match reject_dot(Format::Json)? {
                    Format::Json => Outcome::json(Value::Array(cells.iter().map(|c| c.to_json()).collect())),
                    _ => Outcome::ok(cells.iter().map(|c| format!("{} {}\n", c.coarse(), c.fine_type)).collect()),
                }
            } else {
                let report = cross_validate(&p, cli.cap)?;
                let text = match reject_dot(Format::Text)? {
                    Format::Json => serde_json::to_value(&report)?.to_string() + "\n",
                    _ => report.summary() + "\n",
                };
                Outcome { text, passed: report.ok() }
            }
        }
        Command::Ideal { resolution } => {
            let m = load_matroid(&cli.input)?;
            if *resolution {
                let c = enumerate_all_cells(&build_polytope(&m), cli.cap)?;
                let ranks = resolution_ranks(&c);
                match reject_dot(Format::Json)? {
                    Format::Json => Outcome::json(json!(ranks)),
                    _ => Outcome::ok(fvector_text(&ranks)),
                }
            } else {
                let ideal = ideal_generators(&m);
                match reject_dot(Format::Text)? {
                    Format::Json => Outcome::json(ideal.to_json()),
                    _ => Outcome::ok(ideal.to_text(cli.zero_based_vars)),
                }
            }
        }
        Command::HypersimplexHalfspaces { k, d } => {
            let system = hypersimplex_halfspaces(*k, *d)?;
            match reject_dot(Format::Json)? {
                Format::Json => Outcome::json(system.to_json()),
                _ => Outcome::ok(inequality_form(&system)),
            }
        }
        Command::CheckMinimal { halfspace, k, d } => {
            let (halfspaces, generators) = match (halfspace, k, d) {
                (Some(path), _, _) => {
                    let text = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
                    let h = TropicalHalfspace::parse_json(&text).with_context(|| format!("in {}", path.display()))?;
                    let generators = match (k, d) {
                        (Some(k), Some(d)) => hypersimplex_generators(*k, *d)?,
                        (None, None) => polytope()?.generators().to_vec(),
                        _ => bail!("-k and -d go together"),
                    };
                    (vec![h], generators)
                }
                (None, Some(k), Some(d)) => {
                    (hypersimplex_halfspaces(*k, *d)?.halfspaces, hypersimplex_generators(*k, *d)?)
                }
                _ => bail!("check-minimal needs --halfspace or both -k and -d"),
            };
            let mut verdicts = Vec::new();
            for h in &halfspaces {
                verdicts.push(gk_minimal(h, &generators)?);
            }
            let passed = verdicts.iter().all(|&v| v);
            let text = match reject_dot(Format::Json)? {
                Format::Json => {
                    let rows: Vec<Value> = halfspaces
                        .iter()
                        .zip(&verdicts)
                        .map(|(h, v)| json!({"halfspace": h.to_json(), "minimal": v}))
                        .collect();
                    Value::Array(rows).to_string() + "\n"
                }
                _ => halfspaces
                    .iter()
                    .zip(&verdicts)
                    .map(|(h, v)| format!("{} {}\n", if *v { "minimal" } else { "not minimal" }, inequality(h)))
                    .collect(),
            };
            Outcome { text, passed }
        }
        Command::VerifyExterior { k, d, omit, probe_budget } => {
            let mut system = hypersimplex_halfspaces(*k, *d)?;
            if let Some(i) = omit {
                if *i == 0 || *i > system.len() {
                    bail!("--omit {i} outside 1..={}", system.len());
                }
                system = system.without(i - 1);
            }
            let report = verify_exterior_description(&system, &hypersimplex_generators(*k, *d)?, *probe_budget)?;
            let text = match reject_dot(Format::Json)? {
                Format::Json => report.to_json().to_string() + "\n",
                _ => {
                    let mut t = format!(
                        "{}: {} probes, {} counterexamples\n",
                        if report.ok() { "OK" } else { "FAIL" },
                        report.probes,
                        report.counterexamples.len()
                    );
                    for c in &report.counterexamples {
                        t += &format!("  {} in hull: {}, in system: {}\n", c.point, c.in_polytope, c.in_system);
                    }
                    t
                }
            };
            Outcome { text, passed: report.ok() }
        }
        Command::Skeleton { dot } => {
            let p = polytope()?;
            let c = enumerate_all_cells(&p, cli.cap)?;
            let format = if *dot { Format::Dot } else { fmt.unwrap_or(Format::Dot) };
            match format {
                Format::Dot => Outcome::ok(skeleton_dot(&p, &c)),
                Format::Json => {
                    let (nodes, edges) = skeleton(&p, &c);
                    Outcome::json(json!({"nodes": nodes, "edges": edges}))
                }
                Format::Text => {
                    let (_, edges) = skeleton(&p, &c);
                    Outcome::ok(edges.iter().map(|(a, b)| format!("{a} -- {b}\n")).collect())
                }
            }
        }
        Command::Check { probe_budget } => {
            let report = run_checks(cli.cap, *probe_budget)?;
            let text = match reject_dot(Format::Text)? {
                Format::Json => report.to_json().to_string() + "\n",
                _ => report.to_text(),
            };
            Outcome { text, passed: report.passed() }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
