//! Encodes a message, decodes it again, and shows how malformed streams are
//! reported.

use spacecode::codec::{decode, encode, CodeTrie, StreamDecoder};
use spacecode::{build_space_code, SourceDistribution};

fn main() -> spacecode::Result<()> {
    let dist = SourceDistribution::normalize(&[1.0; 10], 2)?;
    let code = build_space_code(&dist);

    let message = [1, 3, 10, 5, 2, 7];
    let stream = encode(&code, &message)?;
    println!("{message:?} -> {stream}");
    assert_eq!(decode(&code, &stream)?, message);

    // Byte-at-a-time decoding with the streaming interface.
    let trie = CodeTrie::build(&code)?;
    let mut decoder = StreamDecoder::new(&trie);
    for b in stream.bytes() {
        if let Some(symbol) = decoder.push(b)? {
            print!("{symbol} ");
        }
    }
    decoder.finish()?;
    println!();

    for bad in ["11_", "01", "0a"] {
        match decode(&code, bad) {
            Err(e) => println!("{bad:>4}: {e}"),
            Ok(symbols) => println!("{bad:>4}: unexpectedly decoded {symbols:?}"),
        }
    }
    Ok(())
}
