//! Walks the double-oriented component around a global root and audits
//! each vertex against the structure theorem.
//!
//!     cargo run --example oriented -- 7 3 3

use qisog::bass::{bass_order, enumerate_maximal_superorders};
use qisog::orient::{audit_component, find_roots, walk_component, VERTEX_CAP};
use qisog::quat::QuatAlgebra;

fn main() -> qisog::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer"));
    let p = args.next().unwrap_or(7);
    let ell = args.next().unwrap_or(3);
    let depth = args.next().unwrap_or(3) as usize;

    let alg = QuatAlgebra::pizer(p)?;
    let root = enumerate_maximal_superorders(&bass_order(alg)?)?.remove(0);
    let c = walk_component(&root, ell, depth, VERTEX_CAP)?;
    let (local, global) = find_roots(&c);
    println!("{} vertices, tree {}, local roots {local:?}, global {global:?}", c.vertices.len(), c.graph.is_tree());

    for (w, pair) in c.out_edges(c.start) {
        let v = &c.vertices[w];
        println!("  root -> ({},{}) {pair}", v.f_i, v.f_j);
    }
    for (v, rep) in audit_component(&c) {
        let x = &c.vertices[v];
        println!("  ({},{}) case {} {:?}", x.f_i, x.f_j, rep.case, rep.status);
    }
    Ok(())
}
