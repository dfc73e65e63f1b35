use std::io::Write;
use std::process::Command;

use au_kernel_cli::{run, Outcome};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("au-kernel").chain(args.iter().copied()))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("au-kernel-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn eval_prints_values() {
    let out = cli(&["eval", "(comp (S) (S))", "3"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "5\n"));
    let out = cli(&["eval", "(tuple (P 2 2) (P 1 2))", "7", "9"]);
    assert_eq!(out.stdout, "9 7\n");
    let out = cli(&["eval", "--no-jets", "(add)", "20", "22"]);
    assert_eq!(out.stdout, "42\n");
}

#[test]
fn eval_errors_map_to_exit_codes() {
    assert_eq!(cli(&["eval", "(S)", "1", "2"]).code, 2);
    assert_eq!(cli(&["eval", "(S", "1"]).code, 2);
    assert_eq!(cli(&["eval", "(S)", "minus-one"]).code, 2);
    let out = cli(&["eval", "--fuel", "5", "--no-jets", "(mul)", "30", "30"]);
    assert_eq!(out.code, 1, "{out:?}");
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn usage_help_and_version() {
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("fixpoint"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn encode_and_decode() {
    assert_eq!(cli(&["decode", "0"]).stdout, "(Z 0)\n");
    let code = cli(&["encode", "(comp (S) (P 1 2))"]).stdout;
    let back = cli(&["decode", code.trim()]);
    assert_eq!(back.stdout, "(comp (S) (P 1 2))\n");
    assert_eq!(cli(&["decode", "-3"]).code, 2);
}

#[test]
fn fixpoint_of_a_constant_transformer() {
    let out = cli(&["fixpoint", "(const-one)"]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.ends_with("lhs=1 rhs=1\n"), "{}", out.stdout);
    // the full sentence is only printed on request
    assert!(out.stdout.len() < 1000);
    let out = cli(&["fixpoint", "(not1)", "--window", "10"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("lhs=0 rhs=0\n") || out.stdout.ends_with("lhs=1 rhs=1\n"));
    // not boolean on the window
    assert_eq!(cli(&["fixpoint", "(S)", "--window", "3"]).code, 1);
    assert_eq!(cli(&["fixpoint", "(add)"]).code, 2);
}

#[test]
fn tarski_finds_a_misjudged_sentence() {
    let out = cli(&["--format", "json", "tarski", "(is_even)", "--window", "10"]);
    assert_eq!(out.code, 0, "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["misjudged"], true);
    assert_ne!(v["claimed"], v["actual"]);
}

#[test]
fn cantor_table() {
    let out = cli(&["cantor", "--first", "8"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 10);
}

#[test]
fn laws_respect_the_seed_variable() {
    let out = cli(&["laws", "--window", "6", "--suite", "category"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("category"));
    assert_eq!(cli(&["laws", "--window", "6", "--suite", "nope"]).code, 2);
}

#[test]
fn factorize_quotient_and_kernel_pair() {
    let f = "(mor (pred 1 (const-one)) (pred 1 (const-one)) (half))";
    let out = cli(&["factorize", f, "--window", "8"]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.contains("mono . epi = f: holds"));
    assert!(out.stdout.contains("epi . section = id: holds"));

    let parity = "(rel 1 (comp (eq) (tuple (comp (parity) (P 1 2)) (comp (parity) (P 2 2)))))";
    let obj = format!("(exobj (pred 1 (const-one)) {parity})");
    let out = cli(&["--format", "json", "quotient", &obj, "--window", "8"]);
    assert_eq!(out.code, 0, "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["effective"], true);

    let not_equiv = "(exobj (pred 1 (const-one)) (rel 1 (leq)))";
    assert_eq!(cli(&["quotient", not_equiv, "--window", "5"]).code, 1);

    let disc = "(exobj (pred 1 (const-one)) (rel 1 (eq)))";
    let m = format!("(exmor {disc} {disc} (mor (pred 1 (const-one)) (pred 1 (const-one)) (parity)))");
    let out = cli(&["kernel-pair", &m, "--window", "6"]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.starts_with("(rel 1 "));
}

#[test]
fn json_output_is_stable() {
    let a = cli(&["--format", "json", "eval", "(double)", "21"]);
    let b = cli(&["--format", "json", "eval", "(double)", "21"]);
    assert_eq!(a, b);
    assert_eq!(a.stdout, "{\n  \"values\": [\n    \"42\"\n  ]\n}\n");
    let err = cli(&["--format", "json", "eval", "(S)"]);
    assert_eq!(err.code, 2);
    let v: serde_json::Value = serde_json::from_str(&err.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("arity"));
    // keys come out sorted
    let out = cli(&["--format", "json", "cantor", "--first", "2"]);
    let escapes = out.stdout.find("\"escapes\"").unwrap();
    let rows = out.stdout.find("\"rows\"").unwrap();
    assert!(escapes < rows);
}

#[test]
fn tt_check_and_interp() {
    let doc = "\
# a small theory
type A
const a : A
const f : Nat -> Nat
eq x:Nat |- f(x) = succ x : Nat
|- f(2) = 3 : Nat
x:Nat |- <x, succ x> : Nat * Nat
|- fst <4, *> : Nat
";
    let path = temp_file("ok.tt", doc);
    let out = cli(&["tt", "check", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("7 accepted, 0 not accepted"));
    let out = cli(&["tt", "check", "--derivations", path.to_str().unwrap()]);
    assert!(out.stdout.contains("nat-"), "{}", out.stdout);

    let out = cli(&["tt", "interp", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("= 4"), "{}", out.stdout);
    assert!(out.stdout.contains("skipped"));

    let bad = temp_file("bad.tt", "|- f(2) = 4 : Nat\n|- succ * : Nat\n");
    let out = cli(&["tt", "check", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout.matches("rejected").count(), 2);

    let syntax = temp_file("syntax.tt", "|- succ ( : Nat\n");
    let out = cli(&["tt", "check", syntax.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1"), "{}", out.stderr);

    assert_eq!(cli(&["tt", "check", "/definitely/not/here.tt"]).code, 2);
    for p in [path, bad, syntax] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_au-kernel");
    let out = Command::new(bin).args(["eval", "(comp (S) (S))", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5\n");
    let out = Command::new(bin).args(["eval", "(S)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["laws", "--window", "4"]).env("AU_KERNEL_SEED", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
