//! The command line in-process: canonical reports for the shipped fixtures.
//!
//!     cargo run --example json_report

use copcone::cli::run;

fn main() {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let cases: [&[&str]; 4] = [
        &["check", "--cone", "copositive", "horn.json"],
        &["factorize", "--method", "dd", "dd_example.json"],
        &["bounds", "m.json", "--witness", "hornplus0.json"],
        &["orbit", "scaled_horn.json"],
    ];
    for args in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    format!("{fixtures}/{a}")
                } else {
                    a.to_string()
                }
            })
            .collect();
        let out = run(&args, None);
        println!(
            "$ copcone {}  -> exit {}",
            args.join(" ").replace(fixtures, "fixtures"),
            out.code
        );
        let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        println!("{}\n", serde_json::to_string_pretty(&report["result"]).unwrap());
    }
}
