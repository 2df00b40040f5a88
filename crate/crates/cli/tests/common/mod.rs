#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("relaus-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Run the binary; returns exit code, stdout and stderr.
pub fn relaus(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relaus")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

pub fn relaus_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = relaus(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

/// The certificate text with its timing block removed.
pub fn without_timing(text: &str) -> String {
    let mut out = Vec::new();
    let mut skip = false;
    for line in text.lines() {
        if line.trim_start().starts_with("\"timing\"") {
            skip = !line.trim_end().ends_with("},") && !line.trim_end().ends_with('}');
            continue;
        }
        if skip {
            if line.trim_start().starts_with('}') {
                skip = false;
            }
            continue;
        }
        out.push(line);
    }
    out.join("\n")
}
