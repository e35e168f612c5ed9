//! The supersingular l-isogeny graph over F_{p^2} and its Galois quotient.
//!
//!     cargo run --example ssgraph -- 101 2

use qisog::ecgraph::{build_isogeny_graph, reduce_graph, supersingular_j_list};

fn main() -> qisog::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer"));
    let p = args.next().unwrap_or(101);
    let ell = args.next().unwrap_or(2);
    let js = supersingular_j_list(p)?;
    println!("{} supersingular j-invariants", js.len());
    let g = build_isogeny_graph(p, ell)?;
    println!("G({p},{ell}): {} vertices, {} edges, connected {}", g.vertex_count(), g.edge_count(), g.is_strongly_connected());
    let r = reduce_graph(&g)?;
    println!("quotient by Frobenius: {} vertices", r.vertex_count());
    print!("{}", r.to_dot());
    Ok(())
}
