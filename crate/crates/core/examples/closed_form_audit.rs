//! Checks the closed-form length formula against the constructed code and
//! lists the alphabet sizes where its index ranges do not apply.

use spacecode::space_code::{closed_form_lengths, ClosedFormRanges};
use spacecode::{build_space_code, SourceDistribution};

fn main() -> spacecode::Result<()> {
    for k in [2u32, 3, 4, 16] {
        let mut agree = 0;
        let mut not_applicable = Vec::new();
        for n in 2..=200 {
            let built =
                build_space_code(&SourceDistribution::normalize(&vec![1.0; n], k)?).total_lengths();
            match closed_form_lengths(n, k) {
                Some(lengths) => {
                    assert_eq!(lengths, built, "n={n} k={k}");
                    agree += 1;
                }
                None => not_applicable.push(n),
            }
        }
        println!(
            "k={k}: formula agrees on {agree} sizes; ranges malformed for n in {not_applicable:?}"
        );
    }
    let r = ClosedFormRanges::new(10, 2).expect("n = 10 has ranges");
    println!(
        "n=10, k=2: spaces on 1..={} and {}..={}",
        r.head_end, r.tail_start, r.tail_end
    );
    Ok(())
}
