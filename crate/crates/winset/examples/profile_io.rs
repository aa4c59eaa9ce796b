//! The plain-text profile format: generation, serialization, parsing, and
//! the voter-replication prefix.
//!
//! Run: cargo run --release --example profile_io

use winset::profiles::{gen_cyclic, parse_election, serialize_election};

fn main() {
    let e = gen_cyclic(6);
    let text = serialize_election(&e);
    println!("canonical text of the 6-candidate cyclic profile:\n");
    println!("{text}");

    let parsed = parse_election(&text).unwrap();
    println!("round-trip identity holds: {}\n", parsed == e);

    // Comments and the "w <count>" prefix compress large electorates.
    let compressed = "\
# two blocs, 7 voters total
3 7
w 4 1 2 3
w 3 3 2 1
";
    let bloc = parse_election(compressed).unwrap();
    println!(
        "compressed profile expands to {} voters over {} candidates:",
        bloc.num_voters(),
        bloc.num_candidates()
    );
    print!("{}", serialize_election(&bloc));

    // Error reporting carries line numbers.
    println!("\nmalformed inputs are pinpointed:");
    for bad in ["3 2\n1 2 3\n1 1 3\n", "3 2\n1 2 3\n", ""] {
        match parse_election(bad) {
            Ok(_) => println!("  unexpectedly parsed {bad:?}"),
            Err(err) => println!("  {err}"),
        }
    }
}
