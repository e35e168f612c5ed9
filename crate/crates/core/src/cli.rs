//! Command-line front end. `run` is what the `qisog` binary calls.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bass::{self, EichlerSymbol};
use crate::brandt;
use crate::ecgraph;
use crate::error::{Error, Result};
use crate::graph::ExportFormat;
use crate::ideals::{self, QOrder};
use crate::numth::{factor, is_prime};
use crate::orient::{self, AuditStatus};
use crate::quat::QuatAlgebra;

#[derive(Parser, Debug)]
#[command(name = "qisog", version, about = "Supersingular isogeny graphs and their quaternion counterparts")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for randomized steps; output depends only on flags and seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON; with a path, also write the JSON document there.
    #[arg(long, global = true, num_args = 0..=1, value_name = "FILE")]
    pub json: Option<Option<PathBuf>>,
    /// Worker threads for the parallel parts.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pizer basis, root maximal orders and the Bass order.
    Algebra {
        #[arg(long)]
        p: u64,
        /// With --ell, also take a seeded random walk of --depth steps.
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Left ideal classes, Brandt matrix and unit sizes.
    Brandt {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    /// The supersingular l-isogeny graph and its Galois quotient.
    Ssgraph {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Isomorphism check between the curve graph and the Brandt graph.
    Isocheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Double-oriented component around a global root, with the structure audit.
    Oriented {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = orient::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Eichler symbols and embedding numbers of the Bass order.
    Embed {
        #[arg(long)]
        p: u64,
    },
}

/// Exit status for an error: 2 for exhausted caps, 3 for internal
/// inconsistencies, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 2,
        Error::Inconsistent(_) => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    let result = (|| {
        let text = execute(&cli)?;
        match &cli.global.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    })();
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command and returns what it would print.
pub fn execute(cli: &Cli) -> Result<String> {
    let (text, doc) = match &cli.command {
        Command::Algebra { p, ell, depth } => algebra(*p, *ell, *depth, cli.global.seed)?,
        Command::Brandt { p, ell } => brandt_cmd(*p, *ell)?,
        Command::Ssgraph { p, ell, dot } => ssgraph(*p, *ell, dot.as_ref())?,
        Command::Isocheck { p, ell } => isocheck(*p, *ell)?,
        Command::Oriented { p, ell, depth, dot } => oriented(*p, *ell, *depth, dot.as_ref(), cli)?,
        Command::Embed { p } => embed(*p)?,
    };
    match &cli.global.json {
        None => Ok(text),
        Some(path) => {
            let s = serde_json::to_string_pretty(&doc)? + "\n";
            if let Some(path) = path {
                std::fs::write(path, &s)?;
            }
            Ok(s)
        }
    }
}

fn check_p(p: u64) -> Result<()> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} must be a prime > 3")));
    }
    Ok(())
}

fn check_ell(p: u64, ell: u64) -> Result<()> {
    check_p(p)?;
    if !is_prime(ell) || ell == p {
        return Err(Error::InvalidInput(format!("l = {ell} must be a prime different from p")));
    }
    Ok(())
}

fn order_json(o: &QOrder) -> Value {
    let d = o.lattice().data();
    json!({
        "basis": d.basis.map(|r| r.map(|x| x.to_string())),
        "den": d.den.to_string(),
        "discrd": o.discrd().to_string(),
    })
}

fn order_text(o: &QOrder) -> String {
    let b: Vec<String> = o.basis().iter().map(|x| x.to_string()).collect();
    format!("Z<{}>", b.join(", "))
}

/// The global root the oriented walker starts from.
fn global_root(alg: QuatAlgebra) -> Result<QOrder> {
    let b = bass::bass_order(alg)?;
    Ok(bass::enumerate_maximal_superorders(&b)?.remove(0))
}

fn algebra(p: u64, ell: Option<u64>, depth: usize, seed: u64) -> Result<(String, Value)> {
    check_p(p)?;
    let alg = QuatAlgebra::pizer(p)?;
    let roots = ideals::root_maximal_orders(alg)?;
    let bass_o = bass::bass_order(alg)?;
    let mut t = String::new();
    writeln!(t, "B = (d_i, d_j) = ({}, {}) ramified at {p} and oo", alg.d_i, alg.d_j).unwrap();
    for (n, o) in roots.iter().enumerate() {
        writeln!(t, "root order {n}: {} discrd {}", order_text(o), o.discrd()).unwrap();
    }
    writeln!(t, "Bass order: {} discrd {}", order_text(&bass_o), bass_o.discrd()).unwrap();
    let mut doc = json!({
        "p": p,
        "q": alg.q,
        "d_i": alg.d_i,
        "d_j": alg.d_j,
        "root_orders": roots.iter().map(order_json).collect::<Vec<_>>(),
        "bass_order": order_json(&bass_o),
    });
    if let Some(ell) = ell {
        check_ell(p, ell)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let end = ideals::random_walk(&roots[0], ell, depth, &mut rng)?;
        let v = orient::OrientedVertex::new(end.clone())?;
        writeln!(
            t,
            "random {ell}-walk of {depth} steps (seed {seed}): {} conductors ({},{})",
            order_text(&end),
            v.f_i,
            v.f_j
        )
        .unwrap();
        doc["walk"] = json!({
            "ell": ell,
            "steps": depth,
            "seed": seed,
            "end": order_json(&end),
            "f_i": v.f_i,
            "f_j": v.f_j,
        });
    }
    Ok((t, doc))
}

fn brandt_cmd(p: u64, ell: u64) -> Result<(String, Value)> {
    check_ell(p, ell)?;
    let base = ideals::root_maximal_orders(QuatAlgebra::pizer(p)?)?.remove(0);
    let cs = brandt::enumerate_classes(&base, ell, brandt::default_depth_cap(p))?;
    let b = brandt::brandt_matrix(&cs, ell)?;
    if b != brandt::brandt_matrix_by_norms(&cs, ell)? {
        return Err(Error::Inconsistent("the two Brandt matrix computations differ".into()));
    }
    let mut t = String::new();
    writeln!(t, "p = {p}, l = {ell}: {} classes", cs.len()).unwrap();
    writeln!(t, "unit sizes: {:?}", cs.unit_sizes).unwrap();
    for row in &b {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(t, "  [{}]  sum {}", cells.join(" "), row.iter().sum::<u64>()).unwrap();
    }
    let doc = serde_json::to_value(brandt::BrandtReport::new(&cs, b, ell))?;
    Ok((t, doc))
}

fn ssgraph(p: u64, ell: u64, dot: Option<&PathBuf>) -> Result<(String, Value)> {
    check_ell(p, ell)?;
    let g = ecgraph::build_isogeny_graph(p, ell)?;
    let r = ecgraph::reduce_graph(&g)?;
    if let Some(path) = dot {
        g.write_file(path, ExportFormat::Dot)?;
        let mut reduced = path.clone().into_os_string();
        reduced.push(".reduced");
        r.write_file(&PathBuf::from(reduced), ExportFormat::Dot)?;
    }
    let mut t = String::new();
    writeln!(
        t,
        "G({p},{ell}): {} vertices, {} edges, connected: {}",
        g.vertex_count(),
        g.edge_count(),
        g.is_strongly_connected()
    )
    .unwrap();
    for (n, v) in g.vertices.iter().enumerate() {
        let outs: Vec<String> = g
            .edges
            .iter()
            .filter(|e| e.src == n)
            .map(|e| format!("{}x{}", e.mult, g.vertices[e.dst].label))
            .collect();
        writeln!(t, "  j = {} -> {}", v.label, outs.join(", ")).unwrap();
    }
    writeln!(t, "reduced graph: {} vertices", r.vertex_count()).unwrap();
    let doc = json!({ "graph": g.to_json_value()?, "reduced": r.to_json_value()? });
    Ok((t, doc))
}

fn isocheck(p: u64, ell: u64) -> Result<(String, Value)> {
    check_ell(p, ell)?;
    let g = ecgraph::build_isogeny_graph(p, ell)?;
    let base = ideals::root_maximal_orders(QuatAlgebra::pizer(p)?)?.remove(0);
    let cs = brandt::enumerate_classes(&base, ell, brandt::default_depth_cap(p))?;
    let b = brandt::brandt_matrix(&cs, ell)?;
    let h = brandt::brandt_graph(&cs, &b, ell);
    let iso = brandt::check_graph_isomorphism(&g, &h);
    let t = match &iso {
        Ok(_) => format!("isomorphic, {} vertices\n", g.vertex_count()),
        Err(why) => format!("not isomorphic: {why}\n"),
    };
    let doc = json!({
        "p": p,
        "ell": ell,
        "curve_vertices": g.vertex_count(),
        "classes": cs.len(),
        "isomorphic": iso.is_ok(),
        "witness": iso.as_ref().ok(),
        "reason": iso.as_ref().err(),
    });
    Ok((t, doc))
}

fn oriented(p: u64, ell: u64, depth: usize, dot: Option<&PathBuf>, cli: &Cli) -> Result<(String, Value)> {
    check_ell(p, ell)?;
    let start = global_root(QuatAlgebra::pizer(p)?)?;
    let c = orient::walk_component(&start, ell, depth, orient::VERTEX_CAP)?;
    if let Some(path) = dot {
        orient::export(&c.graph, ExportFormat::Dot, path)?;
    }
    let (local, global) = orient::find_roots(&c);
    let audits = orient::audit_component(&c);
    let failed = audits.iter().filter(|a| a.1.status == AuditStatus::Mismatch).count();
    let flagged = audits.iter().filter(|a| a.1.status == AuditStatus::Flagged).count();
    let roots = if local.len() == global.len() {
        format!(
            "{} local root{} (global)",
            local.len(),
            if local.len() == 1 { "" } else { "s" }
        )
    } else {
        format!("{} local roots ({} global)", local.len(), global.len())
    };
    let audit = match (failed, flagged) {
        (0, 0) => "pass".to_string(),
        (f, g) => format!("fail ({f} mismatched, {g} flagged)"),
    };
    let mut t = format!("{roots}; audit: {audit}\n");
    writeln!(
        t,
        "{} vertices, {} edges, tree: {}, depth {depth}",
        c.vertices.len(),
        c.graph.edge_count(),
        c.graph.is_tree()
    )
    .unwrap();
    for (v, rep) in &audits {
        if !rep.passed() {
            let x = &c.vertices[*v];
            writeln!(
                t,
                "  ({},{}) case {} {:?}: predicted {:?} observed {:?}",
                x.f_i, x.f_j, rep.case, rep.status, rep.predicted, rep.observed
            )
            .unwrap();
        }
    }
    let graph = c.graph.to_json_value()?;
    let doc = if cli.global.json.is_some() {
        let mut g = graph;
        g["local_roots"] = json!(local);
        g["global_roots"] = json!(global);
        g["audit"] = json!(audits
            .iter()
            .map(|(v, r)| json!({ "vertex": v, "report": r }))
            .collect::<Vec<_>>());
        g
    } else {
        graph
    };
    Ok((t, doc))
}

fn embed(p: u64) -> Result<(String, Value)> {
    check_p(p)?;
    let alg = QuatAlgebra::pizer(p)?;
    let o = bass::bass_order(alg)?;
    let d = o.discrd();
    let mut t = format!("Bass order discrd {d}\n");
    let mut locals = Vec::new();
    for (ell, _) in factor(d as u64) {
        let formula = bass::eichler_symbol(&o, ell);
        let radical = bass::eichler_symbol_radical(&o, ell)?;
        if let Ok(f) = &formula {
            if *f != radical {
                return Err(Error::Inconsistent(format!("Eichler symbol routes differ at {ell}")));
            }
        }
        let e = bass::local_embedding_number(&o, ell)?;
        writeln!(t, "  l = {ell}: symbol {}, e_l = {e}", EichlerSymbol::value(radical)).unwrap();
        locals.push(json!({ "ell": ell, "symbol": radical.value(), "e_ell": e }));
    }
    let e = bass::global_embedding_number(&o)?;
    let sup = bass::enumerate_maximal_superorders(&o)?;
    writeln!(t, "e={e}; superorder oracle count {}", sup.len()).unwrap();
    let doc = json!({
        "p": p,
        "discrd": d.to_string(),
        "local": locals,
        "e": e,
        "superorders": sup.len(),
    });
    Ok((t, doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> Result<String> {
        let mut full = vec!["qisog"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn spec_examples() {
        assert!(out(&["embed", "--p", "13"]).unwrap().contains("e=2"));
        assert_eq!(out(&["isocheck", "--p", "37", "--ell", "2"]).unwrap(), "isomorphic, 3 vertices\n");
        assert!(out(&["oriented", "--p", "7", "--ell", "3", "--depth", "2"])
            .unwrap()
            .starts_with("1 local root (global); audit: pass"));
    }

    #[test]
    fn preconditions_map_to_exit_codes() {
        let e = out(&["brandt", "--p", "9", "--ell", "2"]).unwrap_err();
        assert_eq!(exit_code(&e), 1);
        let e = out(&["ssgraph", "--p", "11", "--ell", "11"]).unwrap_err();
        assert_eq!(exit_code(&e), 1);
        assert_eq!(exit_code(&Error::CapExceeded { what: "x", cap: 1 }), 2);
    }

    #[test]
    fn json_is_deterministic() {
        let a = out(&["algebra", "--p", "13", "--ell", "2", "--depth", "3", "--seed", "5", "--json"]).unwrap();
        let b = out(&["algebra", "--p", "13", "--ell", "2", "--depth", "3", "--seed", "5", "--json"]).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert!(v["walk"]["end"]["den"].is_string());
        let br: Value = serde_json::from_str(&out(&["brandt", "--p", "11", "--ell", "2", "--json"]).unwrap()).unwrap();
        assert_eq!(br["classes"], 2);
    }
}
