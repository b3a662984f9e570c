//! End-to-end tests of the `bchcrt` binary: flag handling, file formats,
//! exit codes, and cross-backend output identity.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use bchcrt::{encode_systematic, Backend, BchCode, Message};

fn bchcrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bchcrt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("bchcrt-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_prints_example_generator() {
    let out = bchcrt(&["build", "--t", "4", "--delta", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x^10+x^8+x^5+x^4+x^2+x+1"));
    assert!(text.contains("[15,5]"));
}

#[test]
fn build_json_is_deterministic_and_well_formed() {
    let a = bchcrt(&["build", "--t", "4", "--delta", "7", "--format", "json"]);
    let b = bchcrt(&["build", "--t", "4", "--delta", "7", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["g"], "537");
    assert_eq!(v["N"], 15);
    assert_eq!(v["K"], 5);
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn build_with_prim_poly_override() {
    let out = bchcrt(&[
        "build",
        "--t",
        "4",
        "--delta",
        "7",
        "--prim-poly",
        "x^4+x+1",
    ]);
    assert!(out.status.success());
    // A non-primitive override is a runtime failure, not a usage error.
    let out = bchcrt(&[
        "build",
        "--t",
        "4",
        "--delta",
        "7",
        "--prim-poly",
        "x^4+x^3+x^2+x+1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order 5"));
}

#[test]
fn encode_backends_produce_identical_files() {
    let msg = tmp_path("msg.bin");
    fs::write(&msg, [0x16]).unwrap();
    let mut outputs = Vec::new();
    for backend in ["naive", "lfsr_direct", "crt"] {
        let cw = tmp_path(&format!("cw-{backend}.bin"));
        let out = bchcrt(&[
            "encode",
            "--t",
            "4",
            "--delta",
            "7",
            "--backend",
            backend,
            "--in",
            msg.to_str().unwrap(),
            "--out",
            cw.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{backend} failed");
        outputs.push(fs::read(&cw).unwrap());
        fs::remove_file(&cw).unwrap();
    }
    fs::remove_file(&msg).unwrap();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);

    // And the bytes match the library doing the same encode.
    let code = BchCode::build(4, 7, None).unwrap();
    let m = Message::from_bytes(&[0x16], 5).unwrap();
    let want = encode_systematic(&code, &m, Backend::Naive)
        .unwrap()
        .to_bytes();
    assert_eq!(outputs[0], want);
}

#[test]
fn encode_zero_message_gives_zero_codeword() {
    let out = bchcrt(&[
        "encode",
        "--t",
        "4",
        "--delta",
        "7",
        "--backend",
        "crt",
        "--hex",
        "00",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0000");

    // Same through the file path: an all-zero codeword file.
    let cw = tmp_path("zero-cw.bin");
    let out = bchcrt(&[
        "encode",
        "--t",
        "4",
        "--delta",
        "7",
        "--backend",
        "crt",
        "--hex",
        "00",
        "--out",
        cw.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&cw).unwrap(), vec![0u8, 0u8]);
    fs::remove_file(&cw).unwrap();
}

#[test]
fn encode_parallel_matches_serial() {
    let serial = bchcrt(&[
        "encode",
        "--t",
        "5",
        "--delta",
        "7",
        "--hex",
        "affe",
        "--backend",
        "crt",
    ]);
    let parallel = bchcrt(&[
        "encode",
        "--t",
        "5",
        "--delta",
        "7",
        "--hex",
        "affe",
        "--backend",
        "crt",
        "--parallel",
    ]);
    assert!(serial.status.success() && parallel.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn encode_trace_dump() {
    let trace = tmp_path("trace.txt");
    let out = bchcrt(&[
        "encode",
        "--t",
        "4",
        "--delta",
        "7",
        "--hex",
        "16",
        "--backend",
        "lfsr_direct",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&trace).unwrap();
    fs::remove_file(&trace).unwrap();
    // One line per clock: label, cycle, in, out, state hex.
    assert_eq!(text.lines().count(), 15);
    let first: Vec<&str> = text.lines().next().unwrap().split(' ').collect();
    assert_eq!(first[0], "div");
    assert_eq!(first[1], "1");
    assert_eq!(first[4].len(), 3); // ceil(10/4) hex digits of register
}

#[test]
fn verify_accepts_codewords_and_rejects_corruption() {
    let out = bchcrt(&["encode", "--t", "4", "--delta", "7", "--hex", "16"]);
    let hex = stdout(&out).trim().to_string();
    let ok = bchcrt(&["verify", "--t", "4", "--delta", "7", "--hex", &hex]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("codeword valid"));

    // Flip one bit and expect exit 1 with the failing root index.
    let mut bytes = bchcrt_hex_to_bytes(&hex);
    bytes[1] ^= 0x01;
    let bad_hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    let bad = bchcrt(&["verify", "--t", "4", "--delta", "7", "--hex", &bad_hex]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("alpha^"));
}

fn bchcrt_hex_to_bytes(s: &str) -> Vec<u8> {
    (0..s.len() / 2)
        .map(|i| u8::from_str_radix(&s[2 * i..2 * i + 2], 16).unwrap())
        .collect()
}

#[test]
fn cost_json_has_stable_schema() {
    let out = bchcrt(&["cost", "--t", "4", "--delta", "7", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["code"]["N"], 15);
    assert_eq!(v["r"], 3);
    assert_eq!(v["max_division_fanout"], 4);
    assert_eq!(v["direct_division_fanout"], 6);
    assert_eq!(v["steps"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_2() {
    let out = bchcrt(&["build", "--delta", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bchcrt(&[
        "encode",
        "--t",
        "4",
        "--delta",
        "7",
        "--backend",
        "bogus",
        "--hex",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_1() {
    // Message of the wrong byte length.
    let out = bchcrt(&["encode", "--t", "4", "--delta", "7", "--hex", "1234"]);
    assert_eq!(out.status.code(), Some(1));
    // delta out of range.
    let out = bchcrt(&["build", "--t", "4", "--delta", "19"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = bchcrt(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 7);
    assert!(!text.contains("FAIL"));
}
