// Copyright 2026 The agtsim Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `agtsim` binary: outputs, determinism and exit codes.

use std::path::Path;
use std::process::Command;

fn agtsim(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_agtsim")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = agtsim(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn gap_minimum_row() {
    let csv = stdout(&["gap", "--protocol", "teleport"]);
    let gaps = column(&csv, "gap");
    let s = column(&csv, "s");
    let k = (0..gaps.len()).min_by(|&a, &b| gaps[a].total_cmp(&gaps[b])).unwrap();
    assert_eq!(s[k], 0.5);
    assert!((gaps[k] - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn sweep_with_smooth_schedule_decreases() {
    let csv = stdout(&["--schedule", "smoothstep", "sweep", "--protocol", "teleport", "--T", "1,5,20,50"]);
    let f = column(&csv, "fidelity");
    assert_eq!(column(&csv, "T"), vec![1.0, 5.0, 20.0, 50.0]);
    assert!(f.windows(2).all(|w| 1.0 - w[1] < 1.0 - w[0]), "{f:?}");
}

#[test]
fn gadget_alpha_cli() {
    let csv = stdout(&["gadget", "--r", "0.1", "--analysis", "alpha"]);
    let a = column(&csv, "alpha_closed")[0];
    let n = column(&csv, "alpha_numeric")[0];
    assert!((a - 0.995133).abs() < 1e-6 && (a - n).abs() < 1e-10);
    let gap = stdout(&["gadget", "--r", "0.2", "--analysis", "gap"]);
    assert!(gap.starts_with("s,gap_closed,gap_numeric,bound\n"));
    assert_eq!(gap.lines().count(), 22);
}

fn run_into(dir: &Path, args: &[&str]) -> Vec<(String, Vec<u8>)> {
    let mut full = vec!["--out", dir.to_str().unwrap()];
    full.extend_from_slice(args);
    stdout(&full);
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn reruns_are_byte_identical_and_echo_config() {
    let circuit = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(circuit.path(), "A\nB\n").unwrap();
    let cpath = circuit.path().to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["agt", "--gate", "A", "--T", "10", "--seed", "5"],
        vec!["agp", "--gate", "B", "--T", "10"],
        vec!["isotropic", "--T", "10", "--input", "0.6,0.8"],
        vec!["nogo"],
        vec!["sweep", "--T", "0.5,5"],
        vec!["gadget", "--analysis", "bound", "--r", "0.1,0.25"],
        vec!["compile", cpath],
        vec!["simulate", cpath, "--T", "10"],
    ];
    for args in commands {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let fa = run_into(a.path(), &args);
        let fb = run_into(b.path(), &args);
        assert!(!fa.is_empty());
        // Output paths differ, so compare with the directory echo removed.
        let strip = |files: &[(String, Vec<u8>)], dir: &Path| -> Vec<(String, String)> {
            files
                .iter()
                .map(|(n, c)| (n.clone(), String::from_utf8(c.clone()).unwrap().replace(dir.to_str().unwrap(), "<out>")))
                .collect()
        };
        assert_eq!(strip(&fa, a.path()), strip(&fb, b.path()), "{args:?}");
        for (name, contents) in &fa {
            let text = String::from_utf8(contents.clone()).unwrap();
            if name.ends_with(".json") {
                let v: serde_json::Value = serde_json::from_str(&text).unwrap();
                assert!(v["config"]["command"].is_object() || v["config"]["command"].is_string(), "{name}");
            } else {
                assert!(text.lines().next().unwrap().chars().all(|c| c.is_ascii_alphabetic() || c == '_' || c == ','));
            }
        }
    }
}

#[test]
fn simulate_accepts_compiled_schedule_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("c.txt");
    std::fs::write(&circuit, "A\n").unwrap();
    let compiled = stdout(&["compile", circuit.to_str().unwrap()]);
    let mut v: serde_json::Value = serde_json::from_str(&compiled).unwrap();
    assert_eq!(v["structure"]["items"][0]["passed"], true);
    v["program"]["segments"][0]["total_time"] = serde_json::json!(0.5);
    let sched = dir.path().join("s.json");
    std::fs::write(&sched, serde_json::to_string(&v).unwrap()).unwrap();
    let fast: serde_json::Value =
        serde_json::from_str(&stdout(&["simulate", sched.to_str().unwrap(), "--T", "50", "--input", "0"])).unwrap();
    assert!(fast["report"]["fidelity"].as_f64().unwrap() < 0.9);
    assert_eq!(fast["report"]["config"]["total_time"], 0.5);
}

#[test]
fn error_json_and_exit_codes() {
    let cases: [(&[&str], i32, &str); 6] = [
        (&["frobnicate"], 2, "usage"),
        (&["gadget", "--r", "0.6"], 3, "domain"),
        (&["agp", "--gate", "H"], 3, "unsupported_gate"),
        (&["teleport", "--T=0"], 3, "domain"),
        (&["compile", "/does/not/exist"], 2, "io"),
        (&["teleport", "--input", "1,1,1"], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let out = agtsim(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"]["kind"], kind, "{args:?}");
        assert_eq!(err["error"]["exit_code"], code);
    }
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "A\nX\n").unwrap();
    let out = agtsim(&["compile", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}
