// Each test binary compiles this module separately and uses a subset.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

/// Runs the eix binary with a scrubbed environment so ambient EIX_THREADS
/// cannot leak into determinism tests.
pub fn eix(args: &[&str]) -> Output {
    eix_env(args, &[])
}

pub fn eix_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eix"));
    cmd.env_remove("EIX_THREADS").args(args);
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("eix binary runs")
}

pub fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

pub fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

pub fn write_file(path: &Path, text: &str) {
    std::fs::write(path, text).expect("test file writes");
}
