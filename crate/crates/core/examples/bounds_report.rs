//! Prints every entropy bound and reference length for a Zipf source.

use spacecode::bench::{generate, Family};
use spacecode::bounds::full_report;

fn main() -> spacecode::Result<()> {
    for k in [2, 3, 16] {
        let dist = generate(&Family::Zipf, 50, k, 1.0)?;
        let report = full_report(&dist);
        println!(
            "k = {k}, n = {}, H = {:.4}, p1 = {:.4}",
            report.n, report.entropy, report.p1
        );
        for r in &report.records {
            let (id, kind, target) = (
                r.formula_id.to_string(),
                r.kind.to_string(),
                r.target.to_string(),
            );
            println!("  {id:<20} {kind:<6} {target:<15} {:>9.5}", r.value);
        }
        assert!(report.sandwich_violations(1e-9).is_empty());
    }
    Ok(())
}
