//! Lattice arithmetic: HNF bases, products, intersections and short vectors.

use qisog::ideals::root_maximal_orders;
use qisog::quat::{rat, QuatAlgebra};

fn main() -> qisog::Result<()> {
    let alg = QuatAlgebra::pizer(11)?;
    let o = root_maximal_orders(alg)?.remove(0);
    let l = o.lattice();
    println!("O = {l:?}");
    println!("den {} rows {:?}", l.den(), l.int_rows());

    let twice = l.scale(rat(2));
    println!("[O : 2O] = {}", l.index(&twice)?);

    let conj = l.right_mul(&alg.j());
    let meet = l.intersection(&conj);
    println!("O j: {conj:?}");
    println!("[O : O cap Oj] = {}", l.index(&meet)?);

    // Elements of reduced norm at most 3.
    for x in l.min_norm_elements(rat(3), qisog::lattice::DEFAULT_NODE_CAP)? {
        println!("  nrd {}: {x}", x.nrd());
    }
    Ok(())
}
