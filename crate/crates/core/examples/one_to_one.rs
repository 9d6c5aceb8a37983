//! Optimal one-to-one codes with and without the empty word, and the
//! difference between their average lengths.

use spacecode::radix::{epsilon_gap_indices, epsilon_gap_printed, optimal_lengths};
use spacecode::{assign_one_to_one, epsilon_gap_exact, SourceDistribution};

fn main() -> spacecode::Result<()> {
    let dist = SourceDistribution::normalize(&[0.3, 0.2, 0.15, 0.1, 0.1, 0.08, 0.07], 3)?;
    for eps in [false, true] {
        let code = assign_one_to_one(&dist, eps);
        let words: Vec<String> = code
            .codewords()
            .iter()
            .map(|w| format!("\"{w}\""))
            .collect();
        println!(
            "empty word {eps:<5}: {} (average {:.4})",
            words.join(" "),
            code.average_length(&dist)?
        );
    }
    let (l_plus, l_eps) = optimal_lengths(&dist);
    println!("L_plus - L_eps = {:.4}", l_plus - l_eps);
    println!(
        "sum of p_i over symbols {:?} = {:.4} (closed form with fewer terms: {:.4})",
        epsilon_gap_indices(dist.len(), dist.k()),
        epsilon_gap_exact(&dist),
        epsilon_gap_printed(&dist)
    );
    Ok(())
}
