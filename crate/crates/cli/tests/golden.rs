//! Golden end-to-end tests: every worked example is reproduced by driving
//! the compiled binary, not the library.

use std::path::PathBuf;
use std::process::Command;

struct Harness {
    dir: PathBuf,
}

impl Harness {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("fusekit-golden-{}-{tag}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Harness { dir }
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn run(&self, args: &[&str]) -> serde_json::Value {
        let out = Command::new(env!("CARGO_BIN_EXE_fusekit"))
            .args(args)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "fusekit {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        serde_json::from_slice(&out.stdout).unwrap()
    }

    fn run_fail(&self, args: &[&str]) -> i32 {
        let out = Command::new(env!("CARGO_BIN_EXE_fusekit"))
            .args(args)
            .output()
            .unwrap();
        out.status.code().unwrap()
    }
}

impl Drop for Harness {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.dir).ok();
    }
}

fn float(v: &serde_json::Value, path: &[&str]) -> f64 {
    let mut cur = v;
    for p in path {
        cur = &cur[p];
    }
    match cur {
        serde_json::Value::String(s) if s == "inf" => f64::INFINITY,
        other => other
            .as_f64()
            .unwrap_or_else(|| panic!("not a float at {path:?}: {other}")),
    }
}

#[test]
fn aggregate_examples() {
    let h = Harness::new("aggregate");
    let v = h.file("v.csv", "0.6,0.8,0.7,1.0\n");
    let out = h.run(&["aggregate", "--kind", "lukasiewicz-tnorm", &v]);
    assert!((float(&out, &["result", "value"]) - 0.1).abs() < 1e-12);

    let m = h.file("m.csv", "1\n1\n2\n2\n3\n3\n3\n");
    let out = h.run(&["aggregate", "--kind", "mode", &m]);
    assert_eq!(float(&out, &["result", "value"]), 3.0);

    let q = h.file("q.csv", "10,20,30,40\n");
    for (qtype, expected) in [("7", 17.5), ("2", 15.0), ("6", 12.5)] {
        let out = h.run(&[
            "aggregate",
            "--kind",
            "quantile",
            "--alpha",
            "0.25",
            "--qtype",
            qtype,
            &q,
        ]);
        assert!((float(&out, &["result", "value"]) - expected).abs() < 1e-12);
    }

    let x = h.file("x.csv", "3,4\n");
    let w = h.file("w.csv", "0.5,0.5\n");
    let out = h.run(&[
        "aggregate",
        "--kind",
        "wqam",
        "--generator",
        "square",
        "--weights",
        &w,
        &x,
    ]);
    assert!((float(&out, &["result", "value"]) - 12.5f64.sqrt()).abs() < 1e-12);

    let g = h.file("g.csv", "1,2,3\n");
    let out = h.run(&["aggregate", "--kind", "gini", "--p", "2", "--q", "1", &g]);
    assert!((float(&out, &["result", "value"]) - 14.0 / 6.0).abs() < 1e-12);

    let t = h.file("t.csv", "1,2,3,4,100\n");
    let out = h.run(&["aggregate", "--kind", "trimmed", "--k", "1", &t]);
    assert_eq!(float(&out, &["result", "value"]), 3.0);

    // empty input is a usage error
    let empty = h.file("empty.csv", "");
    assert_eq!(h.run_fail(&["aggregate", "--kind", "median", &empty]), 1);
}

#[test]
fn integral_examples() {
    let h = Harness::new("integral");
    // the three-workers team-performance measure over {a, b, c}
    let measure = h.file(
        "mu.json",
        r#"{"0":0,"1":2,"2":3,"3":7,"4":4,"5":4,"6":5,"7":8}"#,
    );
    let x = h.file("x.csv", "5,4,3\n");
    let spec = format!("table:{measure}");
    let out = h.run(&["integral", "--kind", "shilkret", "--measure", &spec, &x]);
    assert_eq!(float(&out, &["result", "value"]), 28.0);
    let out = h.run(&["integral", "--kind", "choquet", "--measure", &spec, &x]);
    assert_eq!(float(&out, &["result", "value"]), 33.0);

    let y = h.file("y.csv", "60,30,10,4\n");
    let out = h.run(&["integral", "--kind", "choquet", "--measure", "counting", &y]);
    assert_eq!(float(&out, &["result", "value"]), 104.0);

    let high = h.file("hi.csv", "5,4,3,2,1\n");
    let out = h.run(&[
        "integral",
        "--kind",
        "sugeno",
        "--measure",
        "counting",
        &high,
    ]);
    assert_eq!(float(&out, &["result", "value"]), 3.0);
}

fn toy_fit_csv() -> String {
    let mut s = String::from("x1,x2,x3,x4,x5,y\n");
    let rows = [
        [0.12, 0.73, 0.43, 0.52, 0.69, 0.58],
        [0.48, 0.41, 0.84, 0.75, 0.70, 0.56],
        [0.65, 0.45, 0.70, 0.48, 0.24, 0.70],
        [0.07, 0.79, 0.96, 0.40, 0.22, 0.40],
        [0.37, 0.92, 0.81, 0.62, 0.92, 0.78],
        [0.22, 0.23, 0.86, 0.28, 0.34, 0.50],
        [0.29, 0.90, 0.72, 0.80, 0.15, 0.64],
        [0.57, 0.40, 0.53, 0.92, 0.50, 0.62],
        [0.84, 0.57, 0.42, 0.79, 0.50, 0.73],
    ];
    for r in rows {
        s.push_str(
            &r.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        s.push('\n');
    }
    s
}

#[test]
fn fit_examples() {
    let h = Harness::new("fit");
    let data = h.file("data.csv", &toy_fit_csv());
    let out = h.run(&["fit", "wam-lse", &data]);
    assert!((float(&out, &["result", "l2"]) - 0.2882).abs() < 1e-3);
    let out = h.run(&["fit", "wam-lad", &data]);
    assert!((float(&out, &["result", "l1"]) - 0.6764).abs() < 1e-3);
    let out = h.run(&["fit", "wam-lmd", &data]);
    assert!((float(&out, &["result", "linf"]) - 0.1335).abs() < 1e-3);
    let out = h.run(&["fit", "wam-rank", "--p", "1.2", "--criterion", "lad", &data]);
    assert!((float(&out, &["result", "l1"]) - 0.8059).abs() < 1e-3);
    let out = h.run(&["fit", "wam-reg", "--lambda", "1e6", &data]);
    for i in 0..5 {
        let w = out["result"]["weights"][i].as_f64().unwrap();
        assert!((w - 0.2).abs() < 1e-3);
    }
    let out = h.run(&["fit", "wqam", "--generator", "identity", &data]);
    assert!((float(&out, &["result", "l2"]) - 0.2882).abs() < 1e-3);
    // multi-start smoothed fitting requires a seed
    assert_eq!(h.run_fail(&["fit", "wqam-lad", &data]), 1);
}

#[test]
fn depth_and_median_examples() {
    let h = Harness::new("geom");
    let square = h.file("square.csv", "0,0\n1,0\n1,1\n0,1\n");
    let out = h.run(&["depth", "--kind", "tukey", "--point", "0.5,0.5", &square]);
    assert_eq!(out["result"]["depth"].as_i64().unwrap(), 2);
    let out = h.run(&["depth", "--kind", "tukey", "--point", "2,2", &square]);
    assert_eq!(out["result"]["depth"].as_i64().unwrap(), 0);
    let out = h.run(&["median", "--kind", "tukey", &square]);
    let p0 = out["result"]["point"][0].as_f64().unwrap();
    let p1 = out["result"]["point"][1].as_f64().unwrap();
    assert!((p0 - 0.5).abs() < 1e-9 && (p1 - 0.5).abs() < 1e-9);

    let tri = h.file("tri.csv", "0,0\n1,-5\n20,1\n");
    let out = h.run(&["median", "--kind", "weiszfeld", &tri]);
    let p0 = out["result"]["point"][0].as_f64().unwrap();
    let p1 = out["result"]["point"][1].as_f64().unwrap();
    assert!((p0 - 1.961).abs() < 1e-2 && (p1 + 2.305).abs() < 1e-2);

    let seb = h.file("seb.csv", "4,-1\n-1,1\n-1.4142135623730951,0\n");
    let out = h.run(&["median", "--kind", "seb", &seb]);
    let c0 = out["result"]["point"][0].as_f64().unwrap();
    let c1 = out["result"]["point"][1].as_f64().unwrap();
    assert!((c0 - 1.3).abs() < 1e-2 && (c1 + 0.5).abs() < 1e-2);

    let out = h.run(&[
        "median",
        "--kind",
        "medoid",
        "--metric",
        "euclidean",
        &square,
    ]);
    assert_eq!(out["result"]["index"].as_i64().unwrap(), 1);
}

#[test]
fn string_examples() {
    let h = Harness::new("strings");
    let out = h.run(&["strdist", "levenshtein", "function", "fiction"]);
    assert_eq!(float(&out, &["result", "value"]), 2.0);
    let out = h.run(&["strdist", "dl", "ba", "acb"]);
    assert_eq!(out["result"]["value"].as_i64().unwrap(), 2);
    let out = h.run(&["strdist", "osa", "ba", "acb"]);
    assert_eq!(out["result"]["value"].as_i64().unwrap(), 3);
    let out = h.run(&["strdist", "hamming", "abc", "abd"]);
    assert_eq!(out["result"]["value"].as_i64().unwrap(), 1);
    let out = h.run(&["strdist", "hamming", "abc", "ab"]);
    assert_eq!(out["result"]["value"].as_str().unwrap(), "inf");
    let out = h.run(&["strdist", "qgram", "abaa", "aaba", "--q", "2"]);
    assert_eq!(out["result"]["value"].as_i64().unwrap(), 0);

    let strings = h.file("s.txt", "223\n130\n310\n112\n200\n120\n");
    let out = h.run(&["strmedian", &strings]);
    assert_eq!(out["result"]["penalty"].as_i64().unwrap(), 9);
    assert_eq!(out["result"]["string"].as_str().unwrap(), "110");
    assert_eq!(out["result"]["solutions"].as_i64().unwrap(), 2);

    let out = h.run(&["strcenter", "--seed", "3", &strings]);
    assert_eq!(out["result"]["max_distance"].as_i64().unwrap(), 2);
    let center = out["result"]["string"].as_str().unwrap();
    assert!(center == "120" || center == "210");

    // FASTA-style headers are skipped
    let fasta = h.file("f.txt", ">first\nabab\n>second\nabab\n");
    let out = h.run(&[
        "strmedian",
        "--metric",
        "levenshtein",
        "--seed",
        "1",
        "--iters",
        "50",
        &fasta,
    ]);
    assert_eq!(out["result"]["string"].as_str().unwrap(), "abab");
    assert_eq!(float(&out, &["result", "penalty"]), 0.0);
}

#[test]
fn informetric_examples() {
    let h = Harness::new("info");
    let rec = h.file("rec.csv", "42,31,12,10,8\n1,0,-10\n0,-1\n-10,-13\n");
    let out = h.run(&["infocentroid", "--p", "1", "--r", "1", &rec]);
    assert!((float(&out, &["result", "penalty"]) - 3034.17).abs() < 1e-2);
    let v0 = out["result"]["vector"][0].as_f64().unwrap();
    let v1 = out["result"]["vector"][1].as_f64().unwrap();
    assert!((v0 - 8.25).abs() < 1e-9 && (v1 - 4.25).abs() < 1e-9);

    let rec2 = h.file(
        "rec2.csv",
        "-10,-12,-14,-16,-17\n1,0,-10\n-10,-15,-16\n-20\n",
    );
    let out = h.run(&["infocentroid", "--p", "1", "--r", "1", &rec2]);
    assert!((float(&out, &["result", "penalty"]) - 1108.95).abs() < 1e-2);

    let imp = h.file(
        "imp.csv",
        "60,30,10,4\n15,13,11,11,9,8,7,7,6,5,3,3,2,1,1,1,1\n",
    );
    let out = h.run(&["impact", "--kind", "model", &imp]);
    assert_eq!(out["result"]["values"][0].as_f64().unwrap(), 104.0);
    assert_eq!(out["result"]["values"][1].as_f64().unwrap(), 104.0);
    let out = h.run(&["impact", "--kind", "model", "--mu", "power:2", &imp]);
    assert!((out["result"]["values"][0].as_f64().unwrap() - 228.0).abs() <= 1.0);
    assert!((out["result"]["values"][1].as_f64().unwrap() - 1050.0).abs() <= 1.0);
    let out = h.run(&["impact", "--kind", "model", "--mu", "power:0.5", &imp]);
    assert!((out["result"]["values"][0].as_f64().unwrap() - 76.7).abs() <= 0.1);
    assert!((out["result"]["values"][1].as_f64().unwrap() - 36.9).abs() <= 0.1);

    let hrec = h.file("h.csv", "5,4,3,2,1\n");
    let out = h.run(&["impact", "--kind", "h", &hrec]);
    assert_eq!(out["result"]["values"][0].as_f64().unwrap(), 3.0);

    // records also ingest as JSON arrays
    let jrec = h.file("h.json", "[[5,4,3,2,1],[9,9,9]]");
    let out = h.run(&["impact", "--kind", "h", &jrec]);
    assert_eq!(out["result"]["values"][0].as_f64().unwrap(), 3.0);
    assert_eq!(out["result"]["values"][1].as_f64().unwrap(), 3.0);
}

#[test]
fn characteristics_examples() {
    let h = Harness::new("chars");
    let g = h.file("g.csv", "0,2,4\n");
    let out = h.run(&["spread", "--kind", "gini", &g]);
    assert!((float(&out, &["result", "value"]) - 2.0 / 3.0).abs() < 1e-12);
    let out = h.run(&["spread", "--kind", "gini-md", &g]);
    assert!((float(&out, &["result", "value"]) - 8.0 / 3.0).abs() < 1e-12);
    let v = h.file("v.csv", "1,2,3\n");
    let out = h.run(&["spread", "--kind", "var", &v]);
    assert_eq!(float(&out, &["result", "value"]), 1.0);

    let w = h.file("w.csv", "0.25,0.25,0.25,0.25\n");
    let out = h.run(&["entropy", &w]);
    assert!((float(&out, &["result", "value"]) - 4.0f64.ln()).abs() < 1e-12);

    // orness of an ordered weighted average from its weights
    let ow = h.file("ow.csv", "0.6,0.3,0.1\n");
    let out = h.run(&[
        "orness",
        "--fn",
        "owa",
        "--n",
        "3",
        "--method",
        "owa-exact",
        "--weights",
        &ow,
    ]);
    assert!((float(&out, &["result", "value"]) - (0.6 + 0.3 * 0.5)).abs() < 1e-12);
    // monte carlo needs a seed
    assert_eq!(h.run_fail(&["orness", "--fn", "gmean", "--n", "3"]), 1);
    let out = h.run(&[
        "orness",
        "--fn",
        "min",
        "--n",
        "4",
        "--seed",
        "2",
        "--samples",
        "20000",
    ]);
    let se = float(&out, &["result", "std_error"]);
    assert!(float(&out, &["result", "value"]).abs() <= 3.0 * se.max(1e-4));
}

#[test]
fn exemplar_examples() {
    let h = Harness::new("exemplar");
    let pts = h.file("pts.csv", "0,0\n0.1,0\n5,5\n0.2,0.1\n");
    let out = h.run(&["exemplar", "--algo", "exact", &pts]);
    // the cluster member closest to everything is (0.2, 0.1)
    assert_eq!(out["result"]["index"].as_i64().unwrap(), 4);
    assert_eq!(out["result"]["dist_calls"].as_i64().unwrap(), 6);
    let out2 = h.run(&["exemplar", "--algo", "pruned", &pts]);
    assert_eq!(out2["result"]["index"], out["result"]["index"]);
    // a genuine distance matrix works as a direct input
    let m = h.file("m.csv", "0,1,4\n1,0,2\n4,2,0\n");
    let out = h.run(&["exemplar", "--algo", "exact", "--metric", "precomputed", &m]);
    assert_eq!(out["result"]["index"].as_i64().unwrap(), 2);
    // string medoid through the same interface
    let strs = h.file("strs.txt", "abcd\nabce\nabcf\nzzzz\n");
    let out = h.run(&[
        "exemplar",
        "--metric",
        "levenshtein",
        "--fold",
        "sum",
        &strs,
    ]);
    assert_eq!(out["result"]["index"].as_i64().unwrap(), 1);
    // approximate search needs a seed
    assert_eq!(h.run_fail(&["exemplar", "--algo", "approx", &pts]), 1);
}

#[test]
fn output_modes_and_determinism() {
    let h = Harness::new("modes");
    let v = h.file("v.csv", "1,2,3,4\n");
    // csv mode renders flat key,value rows
    let out = Command::new(env!("CARGO_BIN_EXE_fusekit"))
        .args(["aggregate", "--kind", "amean", "--format", "csv", &v])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("result.value,2.5"));
    // --output writes the identical bytes to a file
    let target = h.dir.join("out.json");
    let st = Command::new(env!("CARGO_BIN_EXE_fusekit"))
        .args([
            "aggregate",
            "--kind",
            "amean",
            "--output",
            target.to_str().unwrap(),
            &v,
        ])
        .status()
        .unwrap();
    assert!(st.success());
    let direct = Command::new(env!("CARGO_BIN_EXE_fusekit"))
        .args(["aggregate", "--kind", "amean", &v])
        .output()
        .unwrap();
    assert_eq!(std::fs::read(&target).unwrap(), direct.stdout);
}

#[test]
fn error_reporting_contract() {
    let h = Harness::new("errors");
    // malformed cells carry file:line:column diagnostics on stderr
    let bad = h.file("bad.csv", "1,2\n3,oops\n");
    let out = Command::new(env!("CARGO_BIN_EXE_fusekit"))
        .args(["aggregate", "--kind", "amean", &bad])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("bad.csv:2:2"),
        "diagnostics missing: {stderr}"
    );
    // computation statuses exit with code 2
    let cloud = h.file("cloud.csv", "0,0\n1,-5\n20,1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_fusekit"))
        .args(["median", "--kind", "weiszfeld", "--max-iter", "1", &cloud])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
