//! Matches the curve-side graph with the Brandt graph, and the reduced graph
//! with the graph on maximal order types.
//!
//!     cargo run --example isocheck -- 37 3

use qisog::brandt::{
    brandt_graph, brandt_matrix, check_graph_isomorphism, default_depth_cap, enumerate_classes, type_graph,
};
use qisog::ecgraph::{build_isogeny_graph, reduce_graph};
use qisog::ideals::root_maximal_orders;
use qisog::quat::QuatAlgebra;

fn main() -> qisog::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer"));
    let p = args.next().unwrap_or(37);
    let ell = args.next().unwrap_or(3);

    let g = build_isogeny_graph(p, ell)?;
    let base = root_maximal_orders(QuatAlgebra::pizer(p)?)?.remove(0);
    let cs = enumerate_classes(&base, ell, default_depth_cap(p))?;
    let b = brandt_matrix(&cs, ell)?;
    match check_graph_isomorphism(&g, &brandt_graph(&cs, &b, ell)) {
        Ok(map) => println!("isomorphic, {} vertices: {map:?}", g.vertex_count()),
        Err(why) => println!("not isomorphic: {why}"),
    }

    let r = reduce_graph(&g)?;
    let t = type_graph(&cs, &b, ell)?;
    match check_graph_isomorphism(&r, &t) {
        Ok(_) => println!("reduced graph matches {} maximal order types", t.vertex_count()),
        Err(why) => println!("types: {why}"),
    }
    Ok(())
}
