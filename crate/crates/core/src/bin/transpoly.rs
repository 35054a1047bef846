use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transpoly::axial_path::{path_bound, AxialWalker};
use transpoly::birkhoff_verify as bv;
use transpoly::chamber_enum::{catalogue_with, ChamberComplex, MAX_CHAMBERS};
use transpoly::exact_core::rational::{parse_qvec, Q};
use transpoly::hirsch_lab::{
    flow_analysis, gnk_canonical_path, hirsch_report, hirsch_sharp_pair, px2_path_in, verify_q4,
    FlowNetwork,
};
use transpoly::transport_model::{classical_to_planar_22n, dimension, Kind, TransportSpec};
use transpoly::vertex_enum::{
    analyze_with, count_facets_of, diameter, iso_22n_report, northwest_corner,
    northwest_corner_axial, Analysis, Limits, PivotStep, Table,
};
use transpoly::{Error, Result};

#[derive(Parser)]
#[command(
    name = "transpoly",
    version,
    about = "Exact transportation polytope toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Lift the default size guards.
    #[arg(long, global = true)]
    unsafe_limits: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone, Default)]
struct SpecArgs {
    /// JSON spec file {kind, sizes, marginals}.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_name = "P,Q")]
    classical: Option<String>,
    #[arg(long, value_name = "P,Q,S")]
    axial: Option<String>,
    #[arg(long, value_name = "P,Q,S")]
    planar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// Full right-hand side in constraint-row order.
    #[arg(long, allow_hyphen_values = true)]
    rhs: Option<String>,
}

#[derive(Args, Clone)]
struct SizesArgs {
    #[arg(long, value_name = "P,Q")]
    classical: Option<String>,
    #[arg(long, value_name = "P,Q,S")]
    axial: Option<String>,
    #[arg(long, value_name = "P,Q,S")]
    planar: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// All vertices of a transportation polytope.
    Vertices(SpecArgs),
    /// Vertices with the adjacency lists of the graph.
    Graph(SpecArgs),
    /// Vertex, edge and facet counts with the graph diameter.
    Diameter(SpecArgs),
    /// Northwest-corner vertex (classical with optional orders, or axial).
    Nwcorner {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Row order, 1-based.
        #[arg(long)]
        sigma: Option<String>,
        /// Column order, 1-based.
        #[arg(long)]
        tau: Option<String>,
    },
    /// Pivot path between vertices of an axial polytope through the well-ordered vertex.
    AxialPath {
        #[command(flatten)]
        spec: SpecArgs,
        /// Index of the start vertex in sorted order.
        #[arg(long, default_value_t = 0)]
        from: usize,
        /// Index of the target vertex; the well-ordered vertex when omitted.
        #[arg(long)]
        to: Option<usize>,
    },
    /// Facet path between vertices of a p×2 classical polytope.
    Px2Path {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0)]
        from: usize,
        /// Defaults to the last vertex.
        #[arg(long)]
        to: Option<usize>,
    },
    /// Canonical path to the all-paths vertex in a G_{n,k} flow polytope.
    FlowPath {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        demands: Option<String>,
        /// JSON network file {n, arcs, demands}.
        #[arg(long)]
        network: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        from: usize,
    },
    /// Chamber orbits of the configuration.
    Chambers(SizesArgs),
    /// One row per chamber: f0, facets, diameter, margins.
    Catalogue(SizesArgs),
    /// Vertex pair at Hirsch distance in a generalized Birkhoff polytope.
    HirschSharp {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Also enumerate the polytope and report its diameter.
        #[arg(long)]
        check: bool,
    },
    /// Triangulation and regularity checks on the B4 face.
    VerifyBirkhoff,
    /// Facet counts and dual distance for the Klee-Walkup polytope.
    VerifyQ4,
    /// Planar 2×2×p against classical p×2.
    #[command(name = "isomorph-22n")]
    Isomorph22n(SpecArgs),
}

/// Bad arguments exit 2, domain failures exit 1.
enum Fail {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Fail>;

fn usage<T>(msg: impl Into<String>) -> Run<T> {
    Err(Fail::Usage(msg.into()))
}

fn list_usize(s: &str) -> Run<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Fail::Usage(format!("bad size list {s}")))
        })
        .collect()
}

fn arg_q(s: &str) -> Run<Vec<Q>> {
    parse_qvec(s).map_err(|e| Fail::Usage(e.to_string()))
}

fn sizes_of(a: &SizesArgs) -> Run<(Kind, Vec<usize>)> {
    match (&a.classical, &a.axial, &a.planar) {
        (Some(s), None, None) => Ok((Kind::Classical, list_usize(s)?)),
        (None, Some(s), None) => Ok((Kind::Axial3, list_usize(s)?)),
        (None, None, Some(s)) => Ok((Kind::Planar3, list_usize(s)?)),
        _ => usage("give exactly one of --classical, --axial, --planar"),
    }
}

fn need(x: &Option<String>, name: &str) -> Run<Vec<Q>> {
    match x {
        Some(s) => arg_q(s),
        None => usage(format!("missing --{name}")),
    }
}

fn spec_of(a: &SpecArgs) -> Run<TransportSpec> {
    if let Some(path) = &a.spec {
        if a.classical.is_some() || a.axial.is_some() || a.planar.is_some() {
            return usage("give either --spec or inline sizes, not both");
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(TransportSpec::from_json(&v)?);
    }
    let (kind, sizes) = sizes_of(&SizesArgs {
        classical: a.classical.clone(),
        axial: a.axial.clone(),
        planar: a.planar.clone(),
    })?;
    if let Some(rhs) = &a.rhs {
        return Ok(TransportSpec::with_rhs(kind, &sizes, &arg_q(rhs)?)?);
    }
    let spec = match kind {
        Kind::Classical => TransportSpec::classical(need(&a.u, "u")?, need(&a.v, "v")?)?,
        Kind::Axial3 => TransportSpec::axial(need(&a.u, "u")?, need(&a.v, "v")?, need(&a.w, "w")?)?,
        Kind::Planar3 => return usage("planar specs need --rhs or --spec"),
    };
    if spec.sizes() != sizes {
        return usage(format!(
            "sizes {sizes:?} disagree with margins {:?}",
            spec.sizes()
        ));
    }
    Ok(spec)
}

fn limits(cli: &Cli) -> Limits {
    if cli.unsafe_limits {
        Limits::unsafe_limits()
    } else {
        Limits::default()
    }
}

fn steps_json(steps: &[PivotStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| json!({"enter": s.enter, "leave": s.leave, "from": s.from.to_strings(), "to": s.to.to_strings()}))
            .collect(),
    )
}

fn vertex_at(a: &Analysis, i: usize) -> Result<&Table> {
    a.graph.vertices.get(i).ok_or_else(|| {
        Error::Invalid(format!(
            "vertex index {i} out of range 0..{}",
            a.graph.vertices.len()
        ))
    })
}

fn tables_text(ts: &[Table]) -> String {
    ts.iter()
        .map(|t| t.to_strings().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn tables_csv(ts: &[Table]) -> String {
    let mut s = String::from("vertex_id,values_json\n");
    for (i, t) in ts.iter().enumerate() {
        s.push_str(&format!(
            "{i},\"{}\"\n",
            serde_json::to_string(&t.to_strings())
                .unwrap_or_default()
                .replace('"', "\"\"")
        ));
    }
    s
}

/// Rendered output, or an error for the record on stderr.
fn run(cli: &Cli) -> Run<(String, bool)> {
    let fmt = cli.format;
    let render =
        |v: Value| -> String { serde_json::to_string_pretty(&v).unwrap_or_default() + "\n" };
    let out = match &cli.command {
        Command::Vertices(s) => {
            let a = analyze_with(&spec_of(s)?, &limits(cli))?;
            let vs = &a.graph.vertices;
            match fmt {
                Format::Json => render(Value::Array(
                    vs.iter().map(|t| json!(t.to_strings())).collect(),
                )),
                Format::Text => tables_text(vs),
                Format::Csv => tables_csv(vs),
            }
        }
        Command::Graph(s) => {
            let a = analyze_with(&spec_of(s)?, &limits(cli))?;
            let vs: Vec<Value> = a
                .graph
                .vertices
                .iter()
                .map(|t| json!(t.to_strings()))
                .collect();
            render(json!({"vertices": vs, "adjacency": a.graph.adjacency}))
        }
        Command::Diameter(s) => {
            let spec = spec_of(s)?;
            let a = analyze_with(&spec, &limits(cli))?;
            let v = json!({
                "vertices": a.graph.vertices.len(),
                "edges": a.graph.edge_count(),
                "facets": count_facets_of(&a),
                "dimension": dimension(&spec)?,
                "diameter": diameter(&a.graph)?,
                "nondegenerate": a.nondegenerate,
            });
            match fmt {
                Format::Json => render(v),
                _ => format!(
                    "vertices {} edges {} facets {} dimension {} diameter {}\n",
                    v["vertices"], v["edges"], v["facets"], v["dimension"], v["diameter"]
                ),
            }
        }
        Command::Nwcorner {
            u,
            v,
            w,
            sigma,
            tau,
        } => {
            let (u, v) = (arg_q(u)?, arg_q(v)?);
            let t = match w {
                Some(w) => northwest_corner_axial(&u, &v, &arg_q(w)?)?,
                None => {
                    let order = |o: &Option<String>, n: usize| -> Run<Vec<usize>> {
                        match o {
                            Some(s) => list_usize(s)?
                                .into_iter()
                                .map(|i| {
                                    i.checked_sub(1)
                                        .ok_or_else(|| Fail::Usage("orders are 1-based".into()))
                                })
                                .collect(),
                            None => Ok((0..n).collect()),
                        }
                    };
                    northwest_corner(&u, &v, &order(sigma, u.len())?, &order(tau, v.len())?)?
                }
            };
            match fmt {
                Format::Json => render(json!({"sizes": t.sizes, "values": t.to_strings()})),
                Format::Text => tables_text(&[t]),
                Format::Csv => tables_csv(&[t]),
            }
        }
        Command::AxialPath { spec, from, to } => {
            let spec = spec_of(spec)?;
            let walker = AxialWalker::new(&spec)?;
            let a = analyze_with(&spec, &limits(cli))?;
            let t1 = vertex_at(&a, *from)?;
            let steps = match to {
                Some(j) => walker.path_between(t1, vertex_at(&a, *j)?)?,
                None => walker.path_to_well_ordered(t1)?,
            };
            render(json!({
                "length": steps.len(),
                "bound": path_bound(&spec.sizes()),
                "well_ordered": walker.well_ordered_vertex().to_strings(),
                "steps": steps_json(&steps),
            }))
        }
        Command::Px2Path { spec, from, to } => {
            let spec = spec_of(spec)?;
            let a = analyze_with(&spec, &limits(cli))?;
            let last = a.graph.vertices.len().saturating_sub(1);
            let steps = px2_path_in(
                &a,
                vertex_at(&a, *from)?,
                vertex_at(&a, to.unwrap_or(last))?,
            )?;
            let n = count_facets_of(&a);
            let d = dimension(&spec)?;
            render(
                json!({"length": steps.len(), "facets": n, "dimension": d, "bound": n - d, "steps": steps_json(&steps)}),
            )
        }
        Command::FlowPath {
            n,
            k,
            demands,
            network,
            from,
        } => {
            let net = match (network, n, k, demands) {
                (Some(path), None, None, None) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    serde_json::from_str::<FlowNetwork>(&text)
                        .map_err(|e| Error::Parse(e.to_string()))?
                }
                (None, Some(n), Some(k), Some(d)) => FlowNetwork::gnk(*n, *k, arg_q(d)?)?,
                _ => return usage("give --network, or --n, --k and --demands"),
            };
            let a = flow_analysis(&net)?;
            let steps = gnk_canonical_path(&net, vertex_at(&a, *from)?)?;
            render(json!({
                "length": steps.len(),
                "arcs": net.arcs.len(),
                "vertices": a.graph.vertices.len(),
                "diameter": diameter(&a.graph)?,
                "steps": steps_json(&steps),
            }))
        }
        Command::Chambers(s) => {
            let (kind, sizes) = sizes_of(s)?;
            let limit = if cli.unsafe_limits {
                usize::MAX
            } else {
                MAX_CHAMBERS
            };
            let cs = ChamberComplex::for_kind(kind, &sizes)?.enumerate(limit)?;
            let total: usize = cs.iter().map(|c| c.orbit_size).sum();
            render(
                json!({"kind": kind.name(), "sizes": sizes, "chambers": total, "orbits": cs.len(), "representatives": cs}),
            )
        }
        Command::Catalogue(s) => {
            let (kind, sizes) = sizes_of(s)?;
            let limit = if cli.unsafe_limits {
                usize::MAX
            } else {
                MAX_CHAMBERS
            };
            let c = catalogue_with(kind, &sizes, limit)?;
            match fmt {
                Format::Json => {
                    render(serde_json::to_value(&c).map_err(|e| Error::Internal(e.to_string()))?)
                }
                _ => c.to_csv(),
            }
        }
        Command::HirschSharp { p, q, check } => {
            let pair = hirsch_sharp_pair(*p, *q)?;
            let mut v = json!({
                "p": p,
                "q": q,
                "v": pair.v.to_strings(),
                "v_prime": pair.v_prime.to_strings(),
                "disjoint": pair.disjoint,
                "distance_lower_bound": pair.distance_lower_bound,
            });
            if *check {
                let a = analyze_with(&pair.spec, &limits(cli))?;
                let (n, d, diam, sharp) = hirsch_report(&a, dimension(&pair.spec)?)?;
                v["facets"] = json!(n);
                v["dimension"] = json!(d);
                v["diameter"] = json!(diam);
                v["hirsch_sharp"] = json!(sharp);
            }
            render(v)
        }
        Command::VerifyBirkhoff => {
            let data = bv::load_b4();
            let report = bv::verify_triangulation(&data)?;
            let by_gale = bv::is_regular(&data.homogenized, &data.triangulation)?;
            let by_lifting = bv::is_regular_lifting(&data.homogenized, &data.triangulation)?;
            let certificate = bv::check_four_cone_certificate(&data)?;
            let cone = bv::closed_cone_intersection(&data)?;
            let printed_ray_outside =
                bv::cones_excluding(&data, &transpoly::exact_core::qvec(&[0, 0, 0, 0, 0, 1]))?;
            let agree = by_gale.is_regular() == by_lifting.is_some();
            let ok = report.passed() && agree && !by_gale.is_regular() && certificate;
            let v = json!({
                "passed": ok,
                "triangulation": report,
                "regularity": by_gale,
                "lifting_decider_regular": by_lifting.is_some(),
                "deciders_agree": agree,
                "four_cone_certificate": certificate,
                "closed_cone_intersection": cone,
                "cones_excluding_last_axis": printed_ray_outside,
            });
            return Ok((render(v), ok));
        }
        Command::VerifyQ4 => {
            let r = verify_q4()?;
            let ok = r.facets == 27 && r.facets_avoiding_w == 15 && r.distance_abcd_efgh == 5;
            return Ok((
                render(serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?),
                ok,
            ));
        }
        Command::Isomorph22n(s) => {
            let spec = spec_of(s)?;
            let planar = match &spec {
                TransportSpec::Classical { u, v } if v.len() == 2 => classical_to_planar_22n(u, v)?,
                TransportSpec::Planar3 { .. } if spec.sizes()[..2] == [2, 2] => spec.clone(),
                _ => {
                    return Err(Error::Invalid(
                        "expected a planar 2×2×p or classical p×2 spec".into(),
                    )
                    .into())
                }
            };
            let r = iso_22n_report(&planar)?;
            let ok = r.isomorphic();
            return Ok((
                render(serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?),
                ok,
            ));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({"error": "io", "message": e.to_string()}));
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail::Usage(m)) => {
            eprintln!("{}", json!({"error": "usage", "message": m}));
            ExitCode::from(2)
        }
        Err(Fail::Domain(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
    }
}
