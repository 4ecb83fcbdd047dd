//! Drives the command-line front end in-process and shows the result cache.

use std::fs;

use cohastab::cli::{execute, Cli};
use clap::Parser;

fn main() {
    let dir = std::env::temp_dir().join(format!("cohastab-example-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let quiver = dir.join("a1.json");
    fs::write(&quiver, r#"{"vertices": [1], "arrows": []}"#).unwrap();
    let cache = dir.join("cache");

    let args = [
        "cohastab", "stab", "--quiver", quiver.to_str().unwrap(), "--v", "1", "--w", "1,1",
        "--chamber", "1,2", "--component", "1,0", "--cache-dir", cache.to_str().unwrap(),
    ];
    let cli = Cli::parse_from(args);
    let first = execute(&cli).unwrap();
    let second = execute(&cli).unwrap();
    print!("stab: {}", first.output);
    println!("second run identical: {}", first == second);
    let entries = fs::read_dir(&cache).map(|d| d.count()).unwrap_or(0);
    println!("cache shards: {entries}");

    let cli = Cli::parse_from(["cohastab", "ybe", "--quiver", quiver.to_str().unwrap(), "--v", "1", "--w", "1,1,1"]);
    let outcome = execute(&cli).unwrap();
    print!("{}", outcome.summary.unwrap_or_default());
    fs::remove_dir_all(&dir).ok();
}
