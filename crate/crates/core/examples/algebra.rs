//! Pizer basis, root maximal orders and the Bass order for a prime `p`.
//!
//!     cargo run --example algebra -- 13

use qisog::bass::bass_order;
use qisog::ideals::root_maximal_orders;
use qisog::quat::QuatAlgebra;

fn main() -> qisog::Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(Ok(13), |s| s.parse()).expect("p");
    let alg = QuatAlgebra::pizer(p)?;
    println!("B = ({}, {} | Q), q = {:?}", alg.d_i, alg.d_j, alg.q);
    println!("ramified at {:?}", alg.ramified_places());
    for o in root_maximal_orders(alg)? {
        println!("maximal: {o}  discrd {}", o.discrd());
    }
    let b = bass_order(alg)?;
    println!("Bass order: {b}  discrd {}", b.discrd());
    Ok(())
}
