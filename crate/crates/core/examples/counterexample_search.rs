//! Look for spectrally Perron polynomials whose companion never becomes nonnegative.

use perron_poly::classify::search_counterexamples;

fn main() -> perron_poly::Result<()> {
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let found = search_counterexamples(3, &grid, 100_000, 0)?;
    println!("{} cubic(s) found", found.len());
    for r in &found {
        println!("  {:<24} rho = {:.6}", r.polynomial.to_string(), r.spectrum.rho);
    }
    Ok(())
}
