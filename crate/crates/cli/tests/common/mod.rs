#![allow(dead_code)]

use std::path::{Path, PathBuf};

use arfkit_cli::{run_with, Config, Outcome};

pub const COMMANDS: [&str; 10] = [
    "arf",
    "brown",
    "classify",
    "signature",
    "charvec",
    "mu",
    "surgery-mu",
    "verify-closed",
    "verify-relative",
    "relation-check",
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Corpus files as paths relative to the crate root, sorted by name.
pub fn corpus(dir: &str) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(manifest_dir().join("tests").join(dir))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names.into_iter().map(|n| format!("tests/{dir}/{n}")).collect()
}

/// Runs in-process with paths resolved against the crate root.
pub fn invoke(args: &[&str]) -> Outcome {
    let root = manifest_dir();
    let resolved: Vec<String> = args
        .iter()
        .map(|a| {
            if a.starts_with("tests/") {
                root.join(a).display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let mut outcome = run_with(
        std::iter::once("arfkit".to_string()).chain(resolved),
        Config::default(),
    );
    let prefix = format!("{}/", root.display());
    outcome.stdout = outcome.stdout.replace(&prefix, "");
    outcome.stderr = outcome.stderr.replace(&prefix, "");
    outcome
}

/// Every command in text and JSON mode on one document.
pub fn transcript(path: &str) -> String {
    let mut out = String::new();
    for json in [false, true] {
        for cmd in COMMANDS {
            let mut args = vec![cmd];
            if json {
                args.push("--json");
            }
            args.push(path);
            let o = invoke(&args);
            out.push_str(&format!("$ arfkit {}\n[exit {}]\n", args.join(" "), o.code));
            out.push_str(&o.stdout);
            for line in o.stderr.lines() {
                out.push_str(&format!("stderr: {line}\n"));
            }
            out.push('\n');
        }
    }
    out
}

pub fn snapshot_path(path: &str) -> PathBuf {
    let stem = Path::new(path).file_stem().unwrap().to_str().unwrap();
    manifest_dir().join("tests/golden/expected").join(format!("{stem}.txt"))
}
