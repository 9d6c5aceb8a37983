//! Writes a comparison table for perturbed Zipf sources across alphabet
//! sizes as CSV on stdout.

use spacecode::bench::{run, write_csv, BenchSpec, Family};

fn main() -> spacecode::Result<()> {
    let mut rows = Vec::new();
    for k in [2, 3, 4, 8] {
        let spec = BenchSpec {
            family: Family::Zipf,
            n: 8,
            k,
            param: 1.0,
            seed: 7,
            trials: 3,
            perturbation: 0.2,
            ..BenchSpec::default()
        };
        rows.extend(run(&spec)?);
    }
    for row in &rows {
        assert!(row.space_overhead() <= row.remark_gap + 1e-9);
    }
    write_csv(&rows, std::io::stdout().lock())
}
