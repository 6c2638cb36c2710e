//! Exhaustive sweep over a coefficient grid, tallying verdicts and disagreements.

use std::collections::BTreeMap;

use perron_poly::classify::sweep;

fn main() -> perron_poly::Result<()> {
    let grid = [0.0, 0.5, 1.0, 2.0];
    for degree in 1..=6 {
        let reports = sweep(degree, &grid, usize::MAX, 0)?;
        let mut tally: BTreeMap<String, usize> = BTreeMap::new();
        for r in &reports {
            *tally.entry(r.numerical_verdict.verdict.to_string()).or_default() += 1;
        }
        let disagreements = reports.iter().filter(|r| !r.agree).count();
        println!("degree {degree}: {} instances, {disagreements} disagreements, {tally:?}", reports.len());
    }
    Ok(())
}
