//! Builds the space-terminated code for a ten-symbol source and prints each
//! codeword next to its one-to-one counterpart.

use spacecode::{assign_one_to_one, build_space_code, SourceDistribution};

fn main() -> spacecode::Result<()> {
    let dist = SourceDistribution::normalize(&[10., 9., 8., 7., 6., 5., 4., 3., 2., 1.], 2)?;
    let code = build_space_code(&dist);
    let plain = assign_one_to_one(&dist, false);

    println!(
        "{:>6} {:>8} {:>10} {:>8}",
        "symbol", "prob", "one-to-one", "space"
    );
    for (i, (c, w)) in code.entries().iter().zip(plain.codewords()).enumerate() {
        println!(
            "{:>6} {:>8.4} {:>10} {:>8}",
            i + 1,
            dist.probs()[i],
            w.to_string(),
            c.to_string()
        );
    }
    println!(
        "average length {:.4} with {} space-terminated codewords",
        code.average_length(&dist)?,
        code.space_count()
    );
    Ok(())
}
