//! Reads distribution files in both formats and writes codebook JSON that
//! the command-line codec accepts.

use spacecode::build_space_code;
use spacecode::format::{to_json, CodebookFile, DistributionFile};
use spacecode::ZeroPolicy;

fn main() -> spacecode::Result<()> {
    let json = DistributionFile::parse(r#"{"k": 3, "probs": [4, 1, 2, 2, 1]}"#)?;
    let csv = DistributionFile::parse("prob\n4\n1\n2\n2\n1\n")?;
    let dist = json.distribution(None, ZeroPolicy::Reject)?;
    assert_eq!(
        dist.probs(),
        csv.distribution(Some(3), ZeroPolicy::Reject)?.probs()
    );

    let file = CodebookFile::from_space_code(&build_space_code(&dist)).in_input_order(&dist);
    println!("{}", to_json(&file)?);
    let reloaded = file.to_space_code()?;
    println!(
        "reloaded {} codewords over k = {}",
        reloaded.len(),
        reloaded.k()
    );
    Ok(())
}
