use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rootpoly::activity::{exterior_polynomial, interior_polynomial};
use rootpoly::harness::{self, Corpus, PlaneFixture, VerificationReport};
use rootpoly::io;
use rootpoly::triangulate::build_triangulation;
use rootpoly::{
    BipartiteGraph, Error, HyperedgeOrder, Hypergraph, OrdinaryGraph, RootPolytope, Side, Strategy,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "rootpoly",
    version,
    about = "Hypertrees, interior polynomials and root polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output as plain text or as a JSON record.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Backtrack,
    Staircase,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// Bipartite graph file.
    #[arg(long)]
    graph: PathBuf,

    /// Which color class plays the role of hyperedges.
    #[arg(long, default_value = "emerald")]
    class: Side,
}

#[derive(Subcommand)]
enum Command {
    /// List the hypertrees of one side.
    Hypertrees {
        #[command(flatten)]
        g: GraphArgs,
    },
    /// Interior polynomial from internal activities.
    Interior {
        #[command(flatten)]
        g: GraphArgs,
        /// Hyperedge order as comma-separated labels.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// Exterior polynomial from lattice counts.
    Exterior {
        #[command(flatten)]
        g: GraphArgs,
    },
    /// Lattice-point counts of the dilated root polytope and the
    /// coefficients of its Ehrhart polynomial.
    Ehrhart {
        #[arg(long)]
        graph: PathBuf,
        /// Also print counts up to this dilation.
        #[arg(long)]
        s_max: Option<usize>,
    },
    /// Build a triangulation of the root polytope.
    Triangulate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Backtrack)]
        strategy: StrategyArg,
    },
    /// Face numbers and h-vector of a triangulation.
    Facevectors {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Backtrack)]
        strategy: StrategyArg,
    },
    /// Run one verification check.
    Verify {
        check: CheckName,
        /// Graph file; an ordinary multigraph for `reliability` and
        /// `graph-specialization`.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
        /// Parameters of `saalschutz`.
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// List the built-in corpus, or run a check on all of it.
    Corpus {
        #[arg(long)]
        check: Option<CheckName>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    MainTheorem,
    Duality,
    Saalschutz,
    A2,
    Reliability,
    GraphSpecialization,
    Mink,
    Reciprocity,
    Sigma,
    HInvariance,
    OrderIndependence,
    Partition,
    PlaneFixture,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {}", describe(&err));
            ExitCode::from(2)
        }
    }
}

fn describe(err: &anyhow::Error) -> String {
    match err.downcast_ref::<Error>() {
        Some(e @ Error::CapExceeded { .. }) => format!("size cap exceeded: {e}"),
        _ => format!("{err:#}"),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read graph file `{}`", path.display()))
}

fn load_bipartite(path: &Path) -> anyhow::Result<BipartiteGraph> {
    let text = read(path)?;
    io::parse_bipartite(&text).map_err(|e| input_error(path, e))
}

fn load_ordinary(path: &Path) -> anyhow::Result<OrdinaryGraph> {
    let text = read(path)?;
    io::parse_ordinary(&text).map_err(|e| input_error(path, e))
}

fn input_error(path: &Path, e: Error) -> anyhow::Error {
    match e {
        Error::Schema(msg) => anyhow!("malformed graph file `{}`: {msg}", path.display()),
        other => anyhow!("invalid graph in `{}`: {other}", path.display()),
    }
}

fn strategy(s: StrategyArg, seed: u64) -> Strategy {
    match s {
        StrategyArg::Backtrack => Strategy::Backtrack { seed },
        StrategyArg::Staircase => Strategy::Staircase,
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let record = cli.format == Format::Record;
    match &cli.command {
        Command::Hypertrees { g } => {
            let graph = load_bipartite(&g.graph)?;
            let h = Hypergraph::new(&graph, g.class)?;
            let set = h.enumerate_hypertrees()?;
            if record {
                println!(
                    "{}",
                    json!({ "labels": h.labels(), "hypertrees": io::hypertrees_to_json(&set) })
                );
            } else {
                println!("# {}", h.labels().join(" "));
                for f in &set {
                    println!(
                        "{}",
                        f.values()
                            .iter()
                            .map(u32::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
            }
        }
        Command::Interior { g, order } => {
            let graph = load_bipartite(&g.graph)?;
            let h = Hypergraph::new(&graph, g.class)?;
            let order = match order {
                Some(labels) => HyperedgeOrder::from_labels(h.labels(), labels)?,
                None => HyperedgeOrder::identity(h.size()),
            };
            let p = interior_polynomial(&h, &order)?;
            if record {
                println!("{}", json!({ "interior": p.to_json() }));
            } else {
                println!("{}", p.display_in("ξ"));
            }
        }
        Command::Exterior { g } => {
            let graph = load_bipartite(&g.graph)?;
            let p = exterior_polynomial(&Hypergraph::new(&graph, g.class)?)?;
            if record {
                println!("{}", json!({ "exterior": p.to_json() }));
            } else {
                println!("{}", p.display_in("η"));
            }
        }
        Command::Ehrhart { graph, s_max } => {
            let graph = load_bipartite(graph)?;
            let data = RootPolytope::new(&graph)?.ehrhart_coefficients()?;
            let top = s_max.unwrap_or(data.d).max(data.d) as i64;
            let values: Vec<String> = (0..=top).map(|s| data.value(s).to_string()).collect();
            if record {
                println!("{}", data.to_json_up_to(top as usize));
            } else {
                println!("d = {}", data.d);
                println!("epsilon(0..={top}) = {}", values.join(", "));
                println!(
                    "a = {}",
                    data.a
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
        }
        Command::Triangulate {
            graph,
            seed,
            strategy: s,
        } => {
            let graph = load_bipartite(graph)?;
            let t = build_triangulation(&graph, strategy(*s, *seed))?;
            if record {
                println!("{}", io::triangulation_to_json(&t));
            } else {
                for m in t.members() {
                    let edges: Vec<String> = m
                        .edges()
                        .iter()
                        .map(|i| {
                            let (a, b) = graph.edge_labels(i);
                            format!("{a}{b}")
                        })
                        .collect();
                    println!("{}", edges.join(" "));
                }
            }
        }
        Command::Facevectors {
            graph,
            seed,
            strategy: s,
        } => {
            let graph = load_bipartite(graph)?;
            let fv = build_triangulation(&graph, strategy(*s, *seed))?.face_vectors();
            if record {
                println!("{}", io::face_vector_to_json(&fv));
            } else {
                println!("f(y) = {}", fv.f_polynomial().display_in("y"));
                println!("f = {:?}", fv.f);
                println!("f_interior = {:?}", fv.f_interior);
                println!("h = {}", fv.h.display_in("x"));
            }
        }
        Command::Verify {
            check,
            graph,
            seed,
            s_max,
            m,
            n,
        } => {
            let name = graph
                .as_deref()
                .and_then(Path::file_stem)
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let report = match check {
                CheckName::Saalschutz => harness::verify_saalschutz(*m, *n, *s_max)?,
                CheckName::Reliability | CheckName::GraphSpecialization => {
                    let path = graph.as_deref().context("this check needs --graph")?;
                    let g = load_ordinary(path)?;
                    if *check == CheckName::Reliability {
                        harness::verify_reliability(&name, &g, *seed)?
                    } else {
                        harness::verify_graph_specialization(&name, &g, *seed)?
                    }
                }
                _ => {
                    let path = graph.as_deref().context("this check needs --graph")?;
                    let g = load_bipartite(path)?;
                    run_check(*check, &name, &g, *seed, *s_max)?
                }
            };
            return Ok(emit(&[report], record));
        }
        Command::Corpus { check, seed, s_max } => {
            let corpus = Corpus::standard();
            let Some(check) = check else {
                if record {
                    let graphs: Vec<_> = corpus
                        .bipartite
                        .iter()
                        .map(
                            |g| json!({ "name": g.name, "graph": io::bipartite_to_json(&g.graph) }),
                        )
                        .collect();
                    let ordinary: Vec<_> = corpus
                        .ordinary
                        .iter()
                        .map(|g| json!({ "name": g.name, "graph": io::ordinary_to_json(&g.graph) }))
                        .collect();
                    println!("{}", json!({ "bipartite": graphs, "ordinary": ordinary }));
                } else {
                    for g in &corpus.bipartite {
                        println!(
                            "{}\t{}+{} vertices\t{} edges",
                            g.name,
                            g.graph.class_size(Side::Emerald),
                            g.graph.class_size(Side::Violet),
                            g.graph.edge_count()
                        );
                    }
                    for g in &corpus.ordinary {
                        println!(
                            "{}\t{} vertices\t{} edges",
                            g.name,
                            g.graph.vertices().len(),
                            g.graph.edges().len()
                        );
                    }
                }
                return Ok(true);
            };
            let mut reports = Vec::new();
            match check {
                CheckName::Saalschutz => {
                    bail!("`saalschutz` takes no graph; use `verify saalschutz`")
                }
                CheckName::Reliability | CheckName::GraphSpecialization => {
                    for g in &corpus.ordinary {
                        reports.push(if *check == CheckName::Reliability {
                            harness::verify_reliability(&g.name, &g.graph, *seed)?
                        } else {
                            harness::verify_graph_specialization(&g.name, &g.graph, *seed)?
                        });
                    }
                }
                _ => {
                    for g in &corpus.bipartite {
                        if *check == CheckName::PlaneFixture && !PlaneFixture::matches(&g.graph) {
                            continue;
                        }
                        reports.push(run_check(*check, &g.name, &g.graph, *seed, *s_max)?);
                    }
                }
            }
            reports.sort_by(|a, b| (&a.check, &a.graph).cmp(&(&b.check, &b.graph)));
            return Ok(emit(&reports, record));
        }
    }
    Ok(true)
}

fn run_check(
    check: CheckName,
    name: &str,
    g: &BipartiteGraph,
    seed: u64,
    s_max: usize,
) -> anyhow::Result<VerificationReport> {
    Ok(match check {
        CheckName::MainTheorem => harness::verify_main_theorem(name, g, seed)?,
        CheckName::Duality => harness::verify_duality(name, g, seed)?,
        CheckName::A2 => harness::verify_a2(name, g)?,
        CheckName::Mink => harness::verify_mink(name, g)?,
        CheckName::Reciprocity => harness::verify_reciprocity(name, g, s_max, seed)?,
        CheckName::Sigma => harness::verify_sigma(name, g, seed)?,
        CheckName::HInvariance => {
            let seeds: Vec<u64> = (seed..seed + 8).collect();
            harness::verify_h_invariance(name, g, &seeds)?.0
        }
        CheckName::OrderIndependence => harness::verify_order_independence(name, g, 5, seed)?,
        CheckName::Partition => harness::verify_partition(name, g, 3, seed)?,
        CheckName::PlaneFixture => PlaneFixture::verify(name, g)?.with_context(|| {
            format!("`{name}` is not a 4+5-vertex, 12-edge graph with b1 = 4 and three 4-cycles")
        })?,
        CheckName::Saalschutz | CheckName::Reliability | CheckName::GraphSpecialization => {
            unreachable!("dispatched before")
        }
    })
}

fn emit(reports: &[VerificationReport], record: bool) -> bool {
    if record {
        let docs: Vec<_> = reports.iter().map(VerificationReport::to_json).collect();
        if docs.len() == 1 {
            println!("{}", docs[0]);
        } else {
            println!("{}", serde_json::Value::Array(docs));
        }
    } else {
        for r in reports {
            println!("{r}");
        }
    }
    reports.iter().all(|r| r.passed)
}
