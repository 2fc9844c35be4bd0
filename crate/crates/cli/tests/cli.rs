use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn maxsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxsub"))
        .args(args)
        .output()
        .expect("run maxsub")
}

fn maxsub_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxsub"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn maxsub");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn witnesses_round_trip_through_eval() {
    let cases: [&[&str]; 5] = [
        &["max-subfield", "--model", "M:2", "--expr", "x1*x2 - x2*x1"],
        &[
            "max-subfield",
            "--model",
            "M:4",
            "--expr",
            "x1*x2*x3 - x3*x2*x1",
        ],
        &[
            "max-subfield",
            "--model",
            "M:3",
            "--expr",
            "x1*x2*x1^-1*x2^-1",
            "--field",
            "Fp:10007",
        ],
        &[
            "max-subfield",
            "--model",
            "M:5",
            "--expr",
            "x1*x2 - x2*x1",
            "--field",
            "F2k:8",
        ],
        &[
            "max-subfield",
            "--model",
            "quat:-1,-1",
            "--expr",
            "x1*x2 - x2*x1",
        ],
    ];
    for args in cases {
        let out = maxsub(&[args, &["--json"]].concat());
        assert_eq!(
            code(&out),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc = json(&out);
        assert_eq!(doc["kind"], "witness");
        assert_eq!(doc["maximal"], true);
        let check = json(&maxsub_stdin(
            &["eval", "--witness", "-", "--json"],
            &out.stdout,
        ));
        assert_eq!(check["verified"], true, "{args:?}: {check}");
        assert_eq!(check["value"], doc["value"]);
    }
}

#[test]
fn tampered_witness_fails_verification() {
    let out = maxsub(&[
        "max-subfield",
        "--model",
        "M:2",
        "--expr",
        "x1*x2 - x2*x1",
        "--json",
    ]);
    let mut doc = json(&out);
    doc["value"][0][0] = Value::from("7");
    let bytes = serde_json::to_vec(&doc).unwrap();
    let check = maxsub_stdin(&["eval", "--witness", "-", "--json"], &bytes);
    assert_eq!(code(&check), 1);
    let report = json(&check);
    assert_eq!(report["error"], "verification");
    assert!(report["message"].as_str().unwrap().contains("value"));
}

#[test]
fn fixed_seed_is_reproducible_and_seeds_differ() {
    let run = |seed: &str| {
        maxsub(&[
            "max-subfield",
            "--model",
            "M:3",
            "--expr",
            "x1*x2 - x2*x1",
            "--field",
            "Fp:10007",
            "--seed",
            seed,
            "--json",
        ])
        .stdout
    };
    assert_eq!(run("5"), run("5"));
    let parse = |bytes: Vec<u8>| serde_json::from_slice::<Value>(&bytes).unwrap();
    let (a, b) = (parse(run("5")), parse(run("6")));
    assert_eq!(a["seed"], 5);
    assert_eq!(b["seed"], 6);
    assert_ne!(a["assignment"], b["assignment"]);
}

#[test]
fn exit_codes() {
    // usage: malformed expression, unknown field, bad flag
    assert_eq!(code(&maxsub(&["parse", "--expr", "x1*("])), 2);
    assert_eq!(
        code(&maxsub(&["parse", "--expr", "x1", "--field", "Fp:10003"])),
        2
    );
    assert_eq!(code(&maxsub(&["minpoly", "--bogus"])), 2);
    // precondition: trace ≠ 0, trace ±2, field too small, split quaternion model
    assert_eq!(
        code(&maxsub(&[
            "preimage",
            "--expr",
            "x1*x2 - x2*x1",
            "--matrix",
            "identity2"
        ])),
        4
    );
    assert_eq!(
        code(&maxsub(&[
            "word-preimage",
            "--expr",
            "x1*x2*x1^-1*x2^-1",
            "--matrix",
            "identity2",
            "--field",
            "Fp:10007"
        ])),
        4
    );
    assert_eq!(
        code(&maxsub(&["build-qm", "--m", "2", "--field", "Fp:3"])),
        4
    );
    assert_eq!(
        code(&maxsub(&[
            "max-subfield",
            "--model",
            "quat:1,1",
            "--expr",
            "x1*x2 - x2*x1"
        ])),
        4
    );
    // central polynomial: x1 + x1 − 2*x1 is zero
    assert_eq!(
        code(&maxsub(&[
            "preimage",
            "--expr",
            "x1*x2 + x2*x1 - x1*x2 - x2*x1",
            "--matrix",
            "[[1,0],[0,-1]]"
        ])),
        4
    );
    // exhaustion: a one-sample budget cannot hit a word preimage
    let out = maxsub(&[
        "word-preimage",
        "--expr",
        "x1^2*x2^2*x1^-2*x2^-2",
        "--matrix",
        "[[3,1],[0,3336]]",
        "--field",
        "Fp:10007",
        "--budget",
        "1",
        "--json",
    ]);
    if code(&out) != 0 {
        assert_eq!(code(&out), 3);
        assert_eq!(json(&out)["error"], "exhausted");
    }
}

#[test]
fn errors_are_json_when_requested() {
    let out = maxsub(&["build-qm", "--m", "2", "--field", "Fp:3", "--json"]);
    let doc = json(&out);
    assert_eq!(doc["kind"], "error");
    assert_eq!(doc["error"], "precondition");
    assert!(doc["message"].as_str().unwrap().contains('5'));
}

#[test]
fn subcommand_outputs() {
    let parsed = json(&maxsub(&["parse", "--expr", "x2*x1 - x1*x2", "--json"]));
    assert_eq!(parsed["kind"], "parse");

    let eval = json(&maxsub(&[
        "eval",
        "--expr",
        "x1*x2",
        "--matrix",
        "identity2",
        "--matrix",
        "e12",
        "--json",
    ]));
    assert_eq!(eval["value"], serde_json::json!([["0", "1"], ["0", "0"]]));

    let minpoly =
        String::from_utf8(maxsub(&["minpoly", "--matrix", "[[1,2],[3,4]]"]).stdout).unwrap();
    assert!(minpoly.contains("x^2 - 5*x - 2"));

    let pm = json(&maxsub(&["build-pm", "--m", "4", "--json"]));
    assert_eq!(pm["certificate"]["degree"], 4);
    let qm = json(&maxsub(&[
        "build-qm", "--m", "5", "--field", "Fp:11", "--json",
    ]));
    assert_eq!(qm["certificate"]["degree"], 5);

    let low = json(&maxsub(&[
        "gn-check",
        "--n",
        "1",
        "--matrix",
        "identity2",
        "--json",
    ]));
    assert_eq!(low["verdict"], "probably_at_most");
    let high = json(&maxsub(&[
        "gn-check", "--n", "1", "--matrix", "diag:1,2", "--json",
    ]));
    assert_eq!(high["verdict"], "certainly_greater");
    assert_eq!(
        code(&maxsub(&["gn-check", "--n", "9", "--matrix", "identity2"])),
        2
    );

    let audit = json(&maxsub(&[
        "audit-bound",
        "--model",
        "M:2",
        "--expr",
        "x1*x2 - x2*x1",
        "--field",
        "Fp:10007",
        "--json",
    ]));
    assert_eq!(audit["d_hat"], 2);
    assert_eq!(audit["equality"], true);
}
