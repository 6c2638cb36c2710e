//! Scan powers of a companion matrix for a nonnegative or positive power.

use perron_poly::classify::{eventual_sign, eventual_sign_persistent, SignKind, DEFAULT_K_MAX};
use perron_poly::matrix::{companion, mat_power};
use perron_poly::parse_polynomial;

fn main() -> perron_poly::Result<()> {
    let c = companion(&parse_polynomial("t^3 - 2t^2 - t + 2")?);
    for k in 1..=4 {
        println!("C^{k}:\n{}\n", mat_power(&c, k)?);
    }
    for kind in [SignKind::Nonneg, SignKind::Positive] {
        println!("{}", eventual_sign(&c, kind, DEFAULT_K_MAX)?.summary());
    }

    // (-1)^2 > 0 even though the only root is negative
    let flip = companion(&parse_polynomial("t + 1")?);
    println!("t + 1, first hit:  {}", eventual_sign(&flip, SignKind::Positive, DEFAULT_K_MAX)?.summary());
    println!(
        "t + 1, persistent: {}",
        eventual_sign_persistent(&flip, SignKind::Positive, DEFAULT_K_MAX)?.summary()
    );
    Ok(())
}
