//! Eichler symbols and embedding numbers of the Bass order, checked against
//! brute-force enumeration of its maximal superorders.

use qisog::bass::{
    bass_order, eichler_symbol, eichler_symbol_radical, enumerate_maximal_superorders, global_embedding_number,
    local_embedding_number,
};
use qisog::numth::factor;
use qisog::quat::QuatAlgebra;

fn main() -> qisog::Result<()> {
    for p in [7u64, 13, 17, 29, 41] {
        let o = bass_order(QuatAlgebra::pizer(p)?)?;
        print!("p = {p:2}, discrd {:4}:", o.discrd());
        for (l, _) in factor(o.discrd() as u64) {
            let formula = eichler_symbol(&o, l).ok().map(|s| s.value());
            let radical = eichler_symbol_radical(&o, l)?.value();
            print!("  e_{l} = {} (symbol {radical}, formula {formula:?})", local_embedding_number(&o, l)?);
        }
        let e = global_embedding_number(&o)?;
        let sup = enumerate_maximal_superorders(&o)?.len();
        println!("  e = {e}, superorders {sup}");
    }
    Ok(())
}
