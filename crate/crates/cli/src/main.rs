mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use distrep::diam3::{
    closed_form_tensor, composition_table, cycle_table, cycle_table_of_tensor, CycleTable,
};
use distrep::generators::{FamilyRegistry, FixedGraph};
use distrep::ra::{catalog_entry, identify, verify_representation, CycleSpec, RepReport};
use distrep::reproduce::{reproduce_table, ReproduceOptions};
use distrep::scheme::{count_tensor, distance_coloring, extract_array, TensorOutcome};
use distrep::symmetry::{orbitals, AutomorphismSearch};
use distrep::{ColoredCompleteGraph, Error, Graph, IntersectionArray};

use report::{digest, RunReport, Status};

#[derive(Parser)]
#[command(
    name = "distrep",
    version,
    about = "Relation-algebra representations from distance-regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the canonical edge list of a named graph
    Generate {
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Write the distance coloring of a graph
    Color {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Distance-regularity, intersection array and tensor of a graph
    Analyze { graph: PathBuf },
    /// Closed-form tensor and cycle table of a diameter-3 array
    CycleTable { array: String },
    /// Check a coloring against a catalog algebra or a list of cycles
    VerifyRep { coloring: PathBuf, algebra: String },
    /// Distance-transitivity and algebraicity of a graph
    CheckDt {
        graph: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Automorphism group generators of a graph
    Automorphisms {
        graph: PathBuf,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rebuild the example table and compare it with the published values
    ReproduceTable {
        #[arg(long = "moscow-soicher")]
        moscow_soicher: Option<PathBuf>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// What a command produced: the report payload, its status, and the text
/// shown when JSON was not requested.
struct Outcome {
    result: Value,
    status: Status,
    text: Option<String>,
}

impl Outcome {
    fn json(result: Value, status: Status) -> Self {
        Self {
            result,
            status,
            text: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::BadParameter(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::BadParameter(format!("{}: {e}", path.display())))
}

fn search(force: bool) -> AutomorphismSearch {
    if force {
        AutomorphismSearch::unbounded()
    } else {
        AutomorphismSearch::default()
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn generate(family: &str, n: Option<usize>, out: Option<&Path>) -> Result<Outcome, Error> {
    let g = FamilyRegistry::builtin().build(family, n)?;
    let summary = format!("n {} edges {}", g.vertex_count(), g.edge_count());
    let text = match out {
        Some(path) => {
            write(path, &g.to_edge_list())?;
            summary
        }
        None => g.to_edge_list().trim_end().to_string(),
    };
    Ok(Outcome {
        result: json!({
            "family": family,
            "n": g.vertex_count(),
            "edges": g.edge_count(),
        }),
        status: Status::Ok,
        text: Some(text),
    })
}

fn color(input: &str, out: Option<&Path>) -> Result<Outcome, Error> {
    let g = Graph::parse_edge_list(input)?;
    let cg = distance_coloring(&g)?;
    let summary = format!("n {} colors {}", cg.point_count(), cg.color_count());
    let text = match out {
        Some(path) => {
            write(path, &cg.to_text())?;
            summary
        }
        None => cg.to_text().trim_end().to_string(),
    };
    Ok(Outcome {
        result: json!({ "n": cg.point_count(), "colors": cg.color_count() }),
        status: Status::Ok,
        text: Some(text),
    })
}

fn analyze(input: &str) -> Result<Outcome, Error> {
    let g = Graph::parse_edge_list(input)?;
    let cg = distance_coloring(&g)?;
    let diameter = cg.color_count();
    let result = match count_tensor(&cg) {
        TensorOutcome::Uniform(t) => {
            let array = extract_array(&t)?;
            let mut r = json!({
                "distance_regular": true,
                "n": g.vertex_count(),
                "diameter": diameter,
                "intersection_array": array.to_string(),
                "layer_sizes": t.layer_sizes(),
                "tensor": t.to_json(),
            });
            if diameter == 3 {
                let ct = cycle_table_of_tensor(&t)?;
                r["algebra"] = identify(&ct).map_or(json!("uncataloged"), |id| json!(id.name));
                r["cycles"] = to_value(&ct);
            }
            r
        }
        TensorOutcome::NonUniform(w) => json!({
            "distance_regular": false,
            "n": g.vertex_count(),
            "diameter": diameter,
            "witness": to_value(&w),
            "message": format!("not distance-regular: {w}"),
        }),
    };
    Ok(Outcome::json(result, Status::Ok))
}

fn cycle_table_cmd(array: &str) -> Result<Outcome, Error> {
    let arr: IntersectionArray = array.parse()?;
    let f = closed_form_tensor(&arr)?;
    let ct = cycle_table(&arr)?;
    let entries: serde_json::Map<String, Value> = f
        .entries()
        .into_iter()
        .map(|(k, v)| (k, json!(v)))
        .collect();
    let id = identify(&ct);
    Ok(Outcome::json(
        json!({
            "array": arr.to_string(),
            "layer_sizes": f.layer_sizes(),
            "entries": entries,
            "tensor": f.to_tensor().to_json(),
            "cycles": to_value(&ct),
            "algebra": id.as_ref().map_or(json!("uncataloged"), |id| json!(id.name)),
            "permutation": id.as_ref().map(|id| id.permutation.to_string()),
            "composition": composition_table(&ct).to_string(),
        }),
        Status::Ok,
    ))
}

fn verify_rep(input: &str, algebra: &str) -> Result<Outcome, Error> {
    let cg = ColoredCompleteGraph::parse_text(input)?;
    let (name, table) = match catalog_entry(algebra) {
        Ok(entry) => (Some(entry.name.to_string()), entry.table()),
        Err(_) => (None, algebra.parse::<CycleTable>()?),
    };
    let mut report: RepReport = verify_representation(&cg, &CycleSpec::from_table(&table))?;
    report.algebra = name;
    let status = if report.passed() {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut result = to_value(&report);
    result["mandatory"] = to_value(&table.mandatory_names());
    Ok(Outcome::json(result, status))
}

fn check_dt(input: &str, force: bool) -> Result<Outcome, Error> {
    let g = Graph::parse_edge_list(input)?;
    let dist = g.all_pairs_distances();
    let diameter = dist.diameter()?;
    let search = search(force);
    let dt = search.is_distance_transitive(&g)?;
    let cg = distance_coloring(&g)?;
    let group = search.coloring_group(&cg)?;
    let orb = orbitals(&group.generators);
    let algebraic = search.is_algebraic(&cg)?;
    let holds = dt == algebraic;
    Ok(Outcome::json(
        json!({
            "n": g.vertex_count(),
            "diameter": diameter,
            "distance_transitive": dt,
            "algebraic": algebraic,
            "orbital_count": orb.count(),
            "group_order": group.order().to_string(),
            "iff_holds": holds,
        }),
        if holds { Status::Pass } else { Status::Fail },
    ))
}

fn automorphisms(input: &str, force: bool) -> Result<Outcome, Error> {
    let g = Graph::parse_edge_list(input)?;
    let group = search(force).graph_group(&g)?;
    let orb = orbitals(&group.generators);
    let order = group.order();
    let lines: Vec<String> = group
        .generators
        .generators()
        .iter()
        .map(|p| format!("g: {p}"))
        .collect();
    let mut text = format!("# order {order}\n");
    text.push_str(&group.generators.to_text());
    Ok(Outcome {
        result: json!({
            "n": g.vertex_count(),
            "order": order.to_string(),
            "base": group.base,
            "orbit_lengths": group.orbit_lengths,
            "generators": lines,
            "orbitals": to_value(&orb.summary()),
        }),
        status: Status::Ok,
        text: Some(text.trim_end().to_string()),
    })
}

fn reproduce(ms: Option<&str>, force: bool, inject_fault: bool) -> Result<Outcome, Error> {
    let ms_graph = ms.map(Graph::parse_edge_list).transpose()?;
    let mut registry = FamilyRegistry::builtin();
    if inject_fault {
        let mut edges: Vec<(usize, usize)> = registry.build("heawood", None)?.edges().collect();
        edges.pop();
        let g = Graph::new(14, edges)?;
        registry.register(Box::new(FixedGraph::new(
            "heawood",
            "Heawood graph minus an edge",
            g,
        )));
    }
    let table = reproduce_table(&registry, ms_graph.as_ref(), ReproduceOptions { force });
    let status = if table.all_match() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Outcome {
        result: to_value(&table),
        status,
        text: Some(table.to_string()),
    })
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let (name, json_mode, outcome, input) = run(cli.command);
    let (report, text) = match outcome {
        Ok(o) => (
            RunReport::new(name, &args, input, o.result, o.status),
            o.text,
        ),
        Err(e) => {
            eprintln!("error: {e}");
            let result = json!({ "error": e.to_string() });
            (
                RunReport::new(name, &args, input, result, Status::Error),
                None,
            )
        }
    };
    match text {
        Some(text) if !json_mode => println!("{text}"),
        // errors in text mode were already reported on stderr
        None if !json_mode => {}
        _ => print!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code)
}

type Run = (&'static str, bool, Result<Outcome, Error>, String);

fn run(command: Command) -> Run {
    fn with_input(
        path: &Path,
        f: impl FnOnce(&str) -> Result<Outcome, Error>,
    ) -> (Result<Outcome, Error>, String) {
        match read(path) {
            Ok(text) => (f(&text), digest(text.as_bytes())),
            Err(e) => (Err(e), digest(&[])),
        }
    }
    match command {
        Command::Generate {
            family,
            n,
            out,
            json,
        } => {
            let d = digest(format!("{family} {n:?}").as_bytes());
            ("generate", json, generate(&family, n, out.as_deref()), d)
        }
        Command::Color { graph, out, json } => {
            let (o, d) = with_input(&graph, |t| color(t, out.as_deref()));
            ("color", json, o, d)
        }
        Command::Analyze { graph } => {
            let (o, d) = with_input(&graph, analyze);
            ("analyze", true, o, d)
        }
        Command::CycleTable { array } => {
            let d = digest(array.as_bytes());
            ("cycle-table", true, cycle_table_cmd(&array), d)
        }
        Command::VerifyRep { coloring, algebra } => {
            let (o, d) = with_input(&coloring, |t| verify_rep(t, &algebra));
            ("verify-rep", true, o, d)
        }
        Command::CheckDt { graph, force } => {
            let (o, d) = with_input(&graph, |t| check_dt(t, force));
            ("check-dt", true, o, d)
        }
        Command::Automorphisms { graph, force, json } => {
            let (o, d) = with_input(&graph, |t| automorphisms(t, force));
            ("automorphisms", json, o, d)
        }
        Command::ReproduceTable {
            moscow_soicher,
            force,
            json,
            inject_fault,
        } => match moscow_soicher {
            Some(path) => {
                let (o, d) = with_input(&path, |t| reproduce(Some(t), force, inject_fault));
                ("reproduce-table", json, o, d)
            }
            None => (
                "reproduce-table",
                json,
                reproduce(None, force, inject_fault),
                digest(&[]),
            ),
        },
    }
}
