//! Left ideal classes of a maximal order and the Brandt matrix, computed two ways.
//!
//!     cargo run --example brandt -- 37 2

use qisog::brandt::{brandt_matrix, brandt_matrix_by_norms, default_depth_cap, enumerate_classes};
use qisog::ideals::root_maximal_orders;
use qisog::quat::QuatAlgebra;

fn main() -> qisog::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer"));
    let p = args.next().unwrap_or(37);
    let ell = args.next().unwrap_or(2);
    let base = root_maximal_orders(QuatAlgebra::pizer(p)?)?.remove(0);
    let cs = enumerate_classes(&base, ell, default_depth_cap(p))?;
    println!("{} classes, unit group sizes {:?}", cs.len(), cs.unit_sizes);
    for (n, i) in cs.reps.iter().enumerate() {
        println!("  I{n}: nrd {}", i.nrd());
    }
    let b = brandt_matrix(&cs, ell)?;
    assert_eq!(b, brandt_matrix_by_norms(&cs, ell)?);
    for row in &b {
        println!("  {row:?}");
    }
    Ok(())
}
