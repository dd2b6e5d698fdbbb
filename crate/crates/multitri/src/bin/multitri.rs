use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use multitri::beam::{self, FVectorReport};
use multitri::dyck;
use multitri::error::{Error, Limits, Result};
use multitri::flipgraph::{self, build_flip_graph};
use multitri::ktri::{self, KTriangulation};
use multitri::pseudoline::{self, dualize, parse_support, universality_check};
use multitri::structure::{self, Graph};

#[derive(Parser)]
#[command(name = "multitri", version, about = "Multitriangulations, their flip graphs and dual arrangements")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Stop enumerations after this many nodes (exit code 3).
    #[arg(long, global = true, default_value_t = 50_000_000)]
    limit_nodes: usize,
    /// Stop enumerations after this many seconds (exit code 3).
    #[arg(long, global = true, default_value_t = 1800.0)]
    limit_seconds: f64,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized commands; echoed in their output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Args, Clone, Copy)]
struct Nk {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Number of k-triangulations (Hankel determinant and product formula).
    Count {
        #[command(flatten)]
        nk: Nk,
        /// Also enumerate and compare.
        #[arg(long)]
        enumerate: bool,
    },
    /// List all k-triangulations of the n-gon.
    Enumerate {
        #[command(flatten)]
        nk: Nk,
    },
    /// Flip graph summary, or the graph itself with --format dot.
    Flipgraph {
        #[command(flatten)]
        nk: Nk,
    },
    /// Diameter of the flip graph.
    Diameter {
        #[command(flatten)]
        nk: Nk,
    },
    /// Greedy arrangement of a support, or the greedy flip path of a triangulation to T_min.
    Greedy {
        #[arg(long, conflicts_with = "triangulation", required_unless_present = "triangulation")]
        support: Option<PathBuf>,
        #[arg(long)]
        triangulation: Option<PathBuf>,
        /// Greedy k-pseudotriangulation on the k-kernel of the support.
        #[arg(short, default_value_t = 0)]
        k: usize,
    },
    /// Stream every arrangement on a support, one line of contact indices each.
    EnumSupport {
        #[arg(long)]
        support: PathBuf,
    },
    /// Dual arrangement of a k-triangulation on the convex kernel.
    Dualize {
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// Beam vectors, vertex and simplicity flags.
    Beam {
        #[command(flatten)]
        nk: Nk,
    },
    /// f-vector of the beam polytope; --facets lists the facets instead.
    Fvector {
        #[command(flatten)]
        nk: Nk,
        #[arg(long)]
        facets: bool,
    },
    /// Dyck k-paths, the star map D and its reports.
    Dyck {
        #[arg(short, required_unless_present = "triangulation")]
        n: Option<usize>,
        #[arg(short, required_unless_present = "triangulation")]
        k: Option<usize>,
        /// Map one triangulation instead of reporting on all of them.
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
    /// Generic rigidity rank with random integer coordinates.
    Rigidity {
        /// A k-triangulation in JSON.
        #[arg(long, group = "input")]
        triangulation: Option<PathBuf>,
        /// Edge list: first line the vertex count, then one "u v" per line.
        #[arg(long, group = "input")]
        graph: Option<PathBuf>,
        #[arg(long, group = "input")]
        complete: Option<usize>,
        #[arg(long, group = "input")]
        double_banana: bool,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Surface invariants, or the equivelar construction with --equivelar L M.
    Surface {
        #[arg(short, required_unless_present = "equivelar")]
        n: Option<usize>,
        #[arg(short, required_unless_present = "equivelar")]
        k: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["L", "M"])]
        equivelar: Option<Vec<usize>>,
    },
    /// Check that a support's arrangements match the triangulations of its embedding.
    Universality {
        #[arg(long)]
        support: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Param(format!("cannot read {}: {e}", path.display())))
}

fn read_triangulation(path: &PathBuf) -> Result<KTriangulation> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Invalid(format!("bad triangulation JSON: {e}")))
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let text = read(path)?;
    let mut nums = text.split_whitespace().map(|x| x.parse::<usize>().map_err(|e| Error::Param(format!("bad integer {x:?}: {e}"))));
    let n = nums.next().ok_or_else(|| Error::Param("empty graph file".into()))??;
    let rest = nums.collect::<Result<Vec<usize>>>()?;
    if rest.len() % 2 != 0 {
        return Err(Error::Param("odd number of endpoints".into()));
    }
    Graph::new(n, rest.chunks(2).map(|c| (c[0], c[1])).collect())
}

fn edges_text(t: &KTriangulation) -> String {
    t.relevant().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn unsupported(format: Format) -> Error {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Dot => "dot",
    };
    Error::Param(format!("format {name} is not available for this command"))
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn run(cli: Cli) -> Result<String> {
    let c = &cli.common;
    let limits = Limits::new(Some(c.limit_nodes), Some(c.limit_seconds));
    let f = c.format;
    let mut out = String::new();
    match cli.command {
        Command::Count { nk, enumerate } => {
            let hankel = flipgraph::count_hankel(nk.n, nk.k)?;
            let product = flipgraph::count_product(nk.n, nk.k)?;
            let listed = if enumerate { Some(flipgraph::enumerate(nk.n, nk.k, &limits)?.len()) } else { None };
            if hankel != product || listed.is_some_and(|l| hankel != l.into()) {
                return Err(Error::Invalid(format!("counts disagree: {hankel} {product} {listed:?}")));
            }
            match f {
                Format::Text => writeln!(out, "{hankel}").unwrap(),
                Format::Json => out = to_json(&json!({"n": nk.n, "k": nk.k, "hankel": hankel.to_string(), "product": product.to_string(), "enumerated": listed})),
                Format::Csv => out = csv_rows(&["n", "k", "count"], &[vec![nk.n.to_string(), nk.k.to_string(), hankel.to_string()]]),
                Format::Dot => return Err(unsupported(f)),
            }
        }
        Command::Enumerate { nk } => {
            let all = flipgraph::enumerate(nk.n, nk.k, &limits)?;
            match f {
                Format::Text => all.iter().for_each(|t| writeln!(out, "{}", edges_text(t)).unwrap()),
                Format::Json => out = to_json(&all),
                _ => return Err(unsupported(f)),
            }
        }
        Command::Flipgraph { nk } => {
            let g = build_flip_graph(nk.n, nk.k, &limits)?;
            let degree = ktri::relevant_count(nk.n, nk.k);
            match f {
                Format::Dot => out = g.to_dot(),
                Format::Text => {
                    writeln!(out, "nodes {}", g.len()).unwrap();
                    writeln!(out, "regular {} (degree {degree})", g.is_regular()).unwrap();
                    writeln!(out, "connected {}", g.is_connected()).unwrap();
                }
                Format::Json => out = to_json(&json!({"n": nk.n, "k": nk.k, "nodes": g.len(), "degree": degree, "regular": g.is_regular(), "connected": g.is_connected()})),
                Format::Csv => return Err(unsupported(f)),
            }
        }
        Command::Diameter { nk } => {
            let g = build_flip_graph(nk.n, nk.k, &limits)?;
            let d = flipgraph::diameter(&g);
            match f {
                Format::Text => writeln!(out, "{d}").unwrap(),
                Format::Json => out = to_json(&json!({"n": nk.n, "k": nk.k, "count": g.len(), "diameter": d})),
                Format::Csv => out = csv_rows(&["n", "k", "count", "diameter"], &[vec![nk.n.to_string(), nk.k.to_string(), g.len().to_string(), d.to_string()]]),
                Format::Dot => return Err(unsupported(f)),
            }
        }
        Command::Greedy { support, triangulation, k } => {
            if let Some(path) = triangulation {
                let t = read_triangulation(&path)?;
                let steps = ktri::greedy_path_to_min(&t)?;
                match f {
                    Format::Text => steps.iter().for_each(|s| writeln!(out, "{} -> {}", s.removed, s.inserted).unwrap()),
                    Format::Json => out = to_json(&steps),
                    _ => return Err(unsupported(f)),
                }
            } else {
                let (s, forced, contacts) = parse_support(&read(&support.expect("required by clap"))?)?;
                let (support, g) = if k == 0 {
                    (s.clone(), pseudoline::greedy(&s, &forced)?)
                } else {
                    // the kernel is taken of the arrangement given by the contacts line
                    let a = pseudoline::ContactArrangement { support: s.clone(), contacts: contacts.unwrap_or(forced) };
                    let (ker, g) = pseudoline::kernel_greedy(&a, k)?;
                    (ker.support, g)
                };
                match f {
                    Format::Text => out = pseudoline::format_support(&support, &BTreeSet::new(), Some(&g.contacts)),
                    Format::Json => out = to_json(&json!({"n": support.n, "rows": support.rows, "contacts": g.contacts})),
                    _ => return Err(unsupported(f)),
                }
            }
        }
        Command::EnumSupport { support } => {
            let (s, forced, _) = parse_support(&read(&support)?)?;
            let mut lines = Vec::new();
            pseudoline::enumerate(&s, &forced, &limits, &mut |a| {
                lines.push(a.contacts.iter().copied().collect::<Vec<_>>());
            })?;
            match f {
                Format::Text => {
                    for l in &lines {
                        writeln!(out, "{}", l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).unwrap();
                    }
                }
                Format::Json => out = to_json(&lines),
                _ => return Err(unsupported(f)),
            }
        }
        Command::Dualize { triangulation } => {
            let t = read_triangulation(&triangulation)?;
            let (cs, a) = dualize(&t)?;
            match f {
                Format::Text => out = pseudoline::format_support(&cs.support, &BTreeSet::new(), Some(&a.contacts)),
                Format::Json => out = to_json(&json!({"n": cs.support.n, "rows": cs.support.rows, "edges": cs.edges, "contacts": a.contacts})),
                _ => return Err(unsupported(f)),
            }
        }
        Command::Beam { nk } => {
            let all = flipgraph::enumerate(nk.n, nk.k, &limits)?;
            let mut rows = Vec::new();
            for t in &all {
                let psi = beam::beam_vector(t)?;
                let g = beam::dual_multigraph(t)?;
                rows.push((t, psi, g.is_acyclic(), g.hasse_is_tree()));
            }
            match f {
                Format::Text => {
                    for (t, psi, v, s) in &rows {
                        writeln!(out, "{:?} vertex={v} simple={s} {}", psi, edges_text(t)).unwrap();
                    }
                }
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(t, psi, v, s)| json!({"relevant": t.relevant(), "psi": psi, "vertex": v, "simple": s})).collect();
                    out = to_json(&v);
                }
                Format::Csv => {
                    let mut header = vec!["index".to_string()];
                    header.extend((1..=nk.n - 2 * nk.k).map(|i| format!("psi_{i}")));
                    header.extend(["vertex".to_string(), "simple".to_string()]);
                    let h: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
                    let body: Vec<Vec<String>> = rows
                        .iter()
                        .enumerate()
                        .map(|(i, (_, psi, v, s))| {
                            let mut r = vec![i.to_string()];
                            r.extend(psi.iter().map(|x| x.to_string()));
                            r.extend([v.to_string(), s.to_string()]);
                            r
                        })
                        .collect();
                    out = csv_rows(&h, &body);
                }
                Format::Dot => return Err(unsupported(f)),
            }
        }
        Command::Fvector { nk, facets } => {
            if facets {
                let rep = beam::facet_report(nk.n, nk.k, &limits)?;
                match f {
                    Format::Json => out = to_json(&rep),
                    Format::Text => rep.iter().for_each(|r| {
                        writeln!(out, "{} members={} D={}", r.sigma, r.members.len(), r.d_edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")).unwrap()
                    }),
                    _ => return Err(unsupported(f)),
                }
            } else {
                let r: FVectorReport = beam::f_vector(nk.n, nk.k, &limits)?;
                let fv = r.f.iter().map(|x| x.to_string()).collect::<Vec<_>>();
                match f {
                    Format::Text => writeln!(out, "{}", fv.join(",")).unwrap(),
                    Format::Json => out = to_json(&r),
                    Format::Csv => {
                        let mut header = vec!["n".to_string(), "k".to_string()];
                        header.extend((0..fv.len()).map(|i| format!("f_{i}")));
                        let h: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
                        let mut row = vec![nk.n.to_string(), nk.k.to_string()];
                        row.extend(fv);
                        out = csv_rows(&h, &[row]);
                    }
                    Format::Dot => return Err(unsupported(f)),
                }
            }
        }
        Command::Dyck { n, k, triangulation } => {
            if let Some(path) = triangulation {
                let t = read_triangulation(&path)?;
                let d = dyck::map_d(&t)?;
                let paths: Vec<String> = d.0.iter().map(|p| p.to_string()).collect();
                match f {
                    Format::Text => {
                        writeln!(out, "D {}", paths.join(" ")).unwrap();
                        writeln!(out, "indegrees {:?}", dyck::indegree_sequence(&t)).unwrap();
                        writeln!(out, "signature {:?}", d.signature()).unwrap();
                    }
                    Format::Json => out = to_json(&json!({"paths": paths, "indegrees": dyck::indegree_sequence(&t), "signature": d.signature()})),
                    _ => return Err(unsupported(f)),
                }
            } else {
                let nk = Nk { n: n.unwrap(), k: k.unwrap() };
                ktri::check_params(nk.n, nk.k)?;
                let paths = dyck::enumerate_dyck_kpaths(nk.n - 2 * nk.k, nk.k, &limits)?.len();
                let collisions = dyck::injectivity_report(nk.n, nk.k, &limits)?;
                let same = dyck::distribution_compare(nk.n, nk.k, &limits)?;
                match f {
                    Format::Text => {
                        writeln!(out, "dyck k-paths {paths}").unwrap();
                        writeln!(out, "collisions {}", collisions.len()).unwrap();
                        for c in &collisions {
                            let ps: Vec<String> = c.path.0.iter().map(|p| p.to_string()).collect();
                            writeln!(out, "  {} <- {}", ps.join(" "), c.triangulations.iter().map(edges_text).collect::<Vec<_>>().join(" | ")).unwrap();
                        }
                        writeln!(out, "same distribution {same}").unwrap();
                    }
                    Format::Json => out = to_json(&json!({"n": nk.n, "k": nk.k, "kpaths": paths, "collisions": collisions, "same_distribution": same})),
                    _ => return Err(unsupported(f)),
                }
            }
        }
        Command::Rigidity { triangulation, graph, complete, double_banana, d, trials } => {
            let g = if let Some(p) = triangulation {
                Graph::of_triangulation(&read_triangulation(&p)?)
            } else if let Some(p) = graph {
                read_graph(&p)?
            } else if let Some(n) = complete {
                Graph::complete(n)
            } else if double_banana {
                Graph::double_banana()
            } else {
                return Err(Error::Param("give --triangulation, --graph, --complete or --double-banana".into()));
            };
            let r = structure::generic_rigidity_rank(&g, d, trials, c.seed)?;
            match f {
                Format::Json => out = to_json(&r),
                Format::Text => {
                    writeln!(out, "verdict {:?}", r.verdict).unwrap();
                    writeln!(out, "seed {} trials {} ranks {:?} expected {} edges {}", r.seed, r.trials, r.ranks, r.expected, r.edges).unwrap();
                }
                _ => return Err(unsupported(f)),
            }
        }
        Command::Surface { n, k, equivelar } => {
            if let Some(lm) = equivelar {
                let r = structure::equivelar_t(lm[0], lm[1])?;
                match f {
                    Format::Json => out = to_json(&r),
                    Format::Text => {
                        writeln!(out, "n {} k {}", r.t.n(), r.t.k()).unwrap();
                        writeln!(out, "vertices edges polygons {:?}", r.counts).unwrap();
                        writeln!(out, "genus {}", r.genus).unwrap();
                        writeln!(out, "degree {:?}", r.degree).unwrap();
                        writeln!(out, "checks {}", r.passes()).unwrap();
                    }
                    _ => return Err(unsupported(f)),
                }
            } else {
                let s = structure::surface_invariants(n.unwrap(), k.unwrap())?;
                match f {
                    Format::Json => out = to_json(&s),
                    Format::Text => writeln!(out, "genus {} boundary {} v {} e {} f {}", s.genus, s.boundary_components, s.v, s.e, s.f).unwrap(),
                    _ => return Err(unsupported(f)),
                }
            }
        }
        Command::Universality { support } => {
            let (s, _, _) = parse_support(&read(&support)?)?;
            let r = universality_check(&s, &limits)?;
            match f {
                Format::Json => out = to_json(&r),
                Format::Text => writeln!(
                    out,
                    "{}-triangulations of the {}-gon: {} arrangements, {} triangulations, bijective {}",
                    r.big_k, r.big_n, r.arrangements, r.triangulations, r.bijective
                )
                .unwrap(),
                _ => return Err(unsupported(f)),
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.jobs > 1 {
        // ignore failure: a pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build_global();
    }
    let target = cli.common.out.clone();
    match run(cli) {
        Ok(text) => {
            let written = match target {
                Some(p) => fs::write(&p, text).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
