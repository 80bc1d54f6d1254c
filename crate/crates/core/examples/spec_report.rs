// Run a CLI command in-process and print its JSON report.
//
//     cargo run --example spec_report -- check crates/core/examples/specs/131.spec
use presentcert::cli::{execute, Flags};

fn main() {
    let mut args = std::env::args().skip(1);
    let command = args.next().unwrap_or_else(|| "check".into());
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/specs/1331.spec").into());
    let text = std::fs::read_to_string(&path).expect("readable spec file");
    let outcome = execute(&command, Some(&text), &Flags { samples: Some(100), ..Flags::default() });
    print!("{}", outcome.to_json());
    eprintln!("{} (exit {})", outcome.summary, outcome.exit_code());
}
