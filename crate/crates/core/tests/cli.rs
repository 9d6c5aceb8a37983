use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spacecode"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("spacecode-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const TEN: &str = r#"{"kind":"space_prefix","k":2,"codewords":["1_","0_","11","10","01_","00_","011","010","001","000"]}"#;

#[test]
fn construct_examples() {
    let s = Scratch::new("construct");
    let ten = s.file("ten.csv", "prob\n10\n9\n8\n7\n6\n5\n4\n3\n2\n1\n");
    let out = run(&["construct", &ten], "");
    assert!(out.status.success());
    assert_eq!(stdout(&out), format!("{TEN}\n"));
    assert_eq!(
        String::from_utf8_lossy(&out.stderr),
        "n=10 k=2 L=2.38181818181818 spaces=4\n"
    ); // 131/55

    let two = s.file("two.json", r#"{"probs": [0.5, 0.5]}"#);
    assert_eq!(
        stdout(&run(&["construct", &two], "")),
        "{\"kind\":\"space_prefix\",\"k\":2,\"codewords\":[\"1\",\"0\"]}\n"
    );

    let out = run(&["construct", &ten, "--one-to-one", "--epsilon"], "");
    assert!(stdout(&out)
        .starts_with("{\"kind\":\"one_to_one_eps\",\"k\":2,\"codewords\":[\"\",\"1\",\"0\","));

    let file_out = s.path("book.json");
    let out = run(&["construct", &ten, "-k", "3", "-o", &file_out], "");
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(std::fs::read_to_string(&file_out)
        .unwrap()
        .contains("\"k\":3"));
}

#[test]
fn validation_failures_exit_2() {
    let s = Scratch::new("invalid");
    let zero = s.file("zero.csv", "prob\n1\n0\n");
    assert_eq!(run(&["construct", &zero], "").status.code(), Some(2));
    assert!(run(&["construct", &zero, "--drop-zeros"], "")
        .status
        .success());
    assert_eq!(
        run(&["construct", "/no/such/file.csv"], "").status.code(),
        Some(2)
    );
    let ok = s.file("ok.csv", "prob\n1\n");
    assert_eq!(
        run(&["construct", &ok, "-o", "/no/such/dir/out.json"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", &ok, "-k", "1"], "").status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    let book = s.file(
        "bad.json",
        r#"{"kind":"space_prefix","k":2,"codewords":["1","10"]}"#,
    );
    assert_eq!(
        run(&["encode", &book, "-m", "1"], "").status.code(),
        Some(2)
    );
    let ten = s.file("ten.json", TEN);
    assert_eq!(
        run(&["encode", &ten, "-m", "11"], "").status.code(),
        Some(2)
    );
    assert_eq!(run(&["encode", &ten, "-m", "x"], "").status.code(), Some(2));
}

#[test]
fn codec_examples() {
    let s = Scratch::new("codec");
    let ten = s.file("ten.json", TEN);
    let out = run(&["encode", &ten], "1 3");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1_11");
    assert_eq!(stdout(&run(&["decode", &ten], "1_11")), "1\n3\n");
    assert_eq!(stdout(&run(&["encode", &ten], "")), "");
    assert_eq!(stdout(&run(&["decode", &ten], "")), "");

    let bad = run(&["decode", &ten], "11_");
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("byte 2"));
    assert_eq!(
        run(&["decode", &ten, "--stream", "01"], "").status.code(),
        Some(3)
    );
}

#[test]
fn construct_encode_decode_pipeline() {
    let s = Scratch::new("pipe");
    let dist = s.file(
        "d.json",
        r#"{"k": 3, "probs": [5, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]}"#,
    );
    let book = stdout(&run(&["construct", &dist], ""));
    let book = s.file("book.json", &book);
    let message = "11 1 6 2 2 9 4 10 3 7 8 5 5";
    let stream = stdout(&run(&["encode", &book], message));
    let decoded = stdout(&run(&["decode", &book], &stream));
    let expected: String = message.split(' ').map(|t| format!("{t}\n")).collect();
    assert_eq!(decoded, expected);
}

#[test]
fn bounds_report() {
    let s = Scratch::new("bounds");
    let four = s.file("four.csv", "prob\n1\n1\n1\n1\n");
    let out = run(&["bounds", &four], "");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["eps_gap_disagreement"], true);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 16);
    let value = |id: &str| {
        records.iter().find(|r| r["formula_id"] == id).unwrap()["value"]
            .as_f64()
            .unwrap()
    };
    assert_eq!(value("L_space_constructed"), 1.75);
    assert_eq!(value("lb_space"), 1.75);
    assert_eq!(value("eps_gap_exact"), 0.5);
    assert_eq!(value("eps_gap_printed"), 0.25);
}

#[test]
fn oracle_output_and_budget() {
    let s = Scratch::new("oracle");
    let three = s.file("three.json", r#"{"k": 2, "probs": [0.5, 0.3, 0.2]}"#);
    let out = run(&["oracle", &three, "--max-len", "3"], "");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["metadata"]["optimal_length"], 1.5);
    assert_eq!(v["metadata"]["max_len"], 3);
    assert_eq!(v["codebook"]["kind"], "space_prefix");
    assert_eq!(
        v["codebook"]["codewords"],
        serde_json::json!(["1", "0_", "00"])
    );

    let eight = s.file("eight.csv", &format!("prob\n{}", "1\n".repeat(8)));
    assert_eq!(
        run(&["oracle", &eight, "--budget", "5"], "").status.code(),
        Some(4)
    );
    assert_eq!(
        run(&["oracle", &eight, "--max-len", "1"], "").status.code(),
        Some(2)
    );

    // The witness is itself a loadable codebook.
    let book = serde_json::to_string(&v["codebook"]).unwrap();
    let book = s.file("witness.json", &book);
    assert_eq!(stdout(&run(&["encode", &book, "-m", "1 2 3"], "")), "10_00");
}

#[test]
fn bench_csv() {
    let args = ["bench", "--family", "uniform", "-n", "4", "-k", "2"];
    let out = run(&args, "");
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "trial,family,param,n,k,H_k,L_plus,L_eps,L_space,oracle_opt,huffman_kplus1,lb_space,th_lb_plain,\
         th_lb_p1,ub_th_plain_exact,ub_th_plain_loose,ub_th_p1,remark_gap,gap_cert"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], ["0", "uniform", "1", "4", "2"]);
    assert_eq!((row[8], row[9], row[18]), ("1.75", "1.75", "0"));

    let skipped = stdout(&run(&["bench", "-n", "20"], ""));
    let row: Vec<&str> = skipped.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[9], row[18]), ("", ""));

    assert_eq!(
        run(&["bench", "--family", "geometric", "--param", "1.5"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["bench", "--family", "custom"], "").status.code(),
        Some(2)
    );
}

#[test]
fn bench_custom_family() {
    let s = Scratch::new("bench-custom");
    let dist = s.file("w.csv", "prob\n3\n1\n2\n");
    let out = run(
        &[
            "bench", "--family", "custom", "--dist", &dist, "--trials", "2",
        ],
        "",
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().starts_with("1,custom,1,3,2,"));
}
