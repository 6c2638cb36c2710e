//! Classify a few polynomials with the numerical spectral oracle.
//!
//! Run with `cargo run --example classify_polynomial -- "t^3 - 2t^2 - t + 2"`.

use perron_poly::spectral::spectral_classification;
use perron_poly::parse_polynomial;

fn main() -> perron_poly::Result<()> {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = ["t^3 - 2t^2 - t + 2", "t^2 - 1", "t^2 + 1", "t^3 - t - 1"]
            .map(String::from)
            .to_vec();
    }
    for text in &inputs {
        let p = parse_polynomial(text)?;
        let (class, spectrum) = spectral_classification(&p)?;
        println!("{p}");
        println!("  verdict    {}", class.verdict);
        println!("  rho        {:.6}", spectrum.rho);
        println!("  peripheral {}", spectrum.peripheral_count);
        for z in &spectrum.roots {
            println!("  root       {:+.6} {:+.6}i", z.re, z.im);
        }
    }
    Ok(())
}
