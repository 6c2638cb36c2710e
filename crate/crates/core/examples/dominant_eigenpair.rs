use perron_poly::matrix::companion;
use perron_poly::spectral::{dominant_eigenpair, find_roots};
use perron_poly::parse_polynomial;

fn main() -> perron_poly::Result<()> {
    let p = parse_polynomial("t^3 - t - 1")?;
    let c = companion(&p);
    let (rho, v) = dominant_eigenpair(&c)?;
    let largest = find_roots(&p)?[0];
    println!("power iteration: rho = {rho:.12}");
    println!("Aberth roots:    rho = {:.12}", largest.norm());
    println!("Perron vector (max-normalized): {v:.6?}");
    Ok(())
}
