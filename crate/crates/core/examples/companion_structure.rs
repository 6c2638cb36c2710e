//! Companion matrix, its nilpotent/core split and the recovered characteristic polynomial.

use perron_poly::matrix::{char_poly, companion, decompose_companion};
use perron_poly::parse_polynomial;

fn main() -> perron_poly::Result<()> {
    let p = parse_polynomial("t^6 - t^4 - 2 t^3")?;
    let c = companion(&p);
    println!("p = {p}\n\ncompanion:\n{c}");

    let dec = decompose_companion(&p)?;
    println!("nilpotent part: {} x {}", dec.nilpotent_size, dec.nilpotent_size);
    if let Some(core) = &dec.core {
        println!("core ({} x {}):\n{core}", dec.core_dim(), dec.core_dim());
        println!("char poly of core: {}", char_poly(core)?);
    }
    println!("char poly of companion: {}", char_poly(&c)?);
    Ok(())
}
