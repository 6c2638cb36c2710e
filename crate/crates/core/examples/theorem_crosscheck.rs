//! Compare the gcd-of-indices criterion with the root finder.

use perron_poly::classify::cross_check;
use perron_poly::{index_profile, Polynomial};

fn main() -> perron_poly::Result<()> {
    let c_tuples: [&[f64]; 5] = [
        &[0.0, 1.0],
        &[0.0, 2.0, 0.0, 3.0],
        &[1.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0, 0.0, 2.0],
        &[0.0, 0.0, 0.0],
    ];
    for c in c_tuples {
        let p = Polynomial::from_c_values(c)?;
        let profile = index_profile(&p);
        let report = cross_check(&p)?;
        let theorem = report.theorem_verdict.as_ref().map(|t| t.verdict.to_string());
        println!(
            "{:<20} indices {:<8} d = {}  theorem {:<24} numerical {:<24} peripheral {}  agree {}",
            p.to_string(),
            format!("{:?}", profile.index_set),
            profile.d,
            theorem.unwrap_or_default(),
            report.numerical_verdict.verdict.to_string(),
            report.peripheral_count,
            report.agree
        );
    }
    Ok(())
}
