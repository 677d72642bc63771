use std::io::Write;
use std::process::{Command, Output};

fn symalt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symalt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("symalt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn generators_for_four_points_in_the_plane() {
    let o = symalt(&["generators", "--n", "4", "--d", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "lower=3 exact=14 upper=3003\n");
}

#[test]
fn generators_by_quotient_rank_agrees() {
    let o = symalt(&["generators", "--n", "3", "--d", "2", "--quotient", "--rank", "confirmed"]);
    assert_eq!(stdout(&o), "lower=1 exact=5 upper=84\n");
}

#[test]
fn generators_json() {
    let o = symalt(&["--json", "generators", "--n", "2", "--d", "3", "--list"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"], "3");
    assert_eq!(v["exact_method"], "n2");
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn bounds_table_rows() {
    let o = symalt(&["bounds-table", "--d", "2", "--n-max", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,r,j,lower,upper,exact");
    assert_eq!(
        &lines[1..],
        &[
            "3,3,0,1,84,5",
            "4,3,1,3,3003,14",
            "5,3,2,3,184756,42",
            "6,4,0,1,17383860,132",
            "7,4,1,4,2319959400,429",
            "8,4,2,6,416714805914,1430",
        ]
    );
    // identical across runs
    assert_eq!(stdout(&symalt(&["bounds-table", "--d", "2", "--n-max", "8"])), text);
}

#[test]
fn bounds_table_pretty() {
    let text = stdout(&symalt(&["bounds-table", "--d", "2", "--n-max", "8", "--pretty"]));
    let uppers: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(uppers, vec!["84", "3.00e3", "1.85e5", "1.74e7", "2.32e9", "4.17e11"]);
}

#[test]
fn check_antisymmetric_example() {
    let f = temp_file(
        "f.poly",
        "(x_2_2 - x_1_2)*(x_3_1 - x_1_1) + (x_1_2 - x_3_2)*(x_2_1 - x_1_1)\n",
    );
    let o = symalt(&["check", "--antisymmetric", "-f", f.to_str().unwrap(), "--n", "3", "--d", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "antisymmetric: true, degree: 2\n");
}

#[test]
fn symmetrize_then_check_invariant() {
    for (p, group) in [("x_1_1^2*x_2_1 - 3*x_3_1", None), ("x_1_1*x_2_2 + x_3_1", Some("2,1,3"))] {
        let mut args = vec!["symmetrize", "-p", p, "--n", "3", "--d", "2"];
        if let Some(g) = group {
            args.extend(["--group", g]);
        }
        let sym = stdout(&symalt(&args));
        let mut check = vec!["check", "--invariant", "-p", sym.trim(), "--n", "3", "--d", "2"];
        if let Some(g) = group {
            check.extend(["--group", g]);
        }
        let o = symalt(&check);
        assert!(stdout(&o).starts_with("invariant: true"), "{}", stdout(&o));
    }
}

#[test]
fn antisymmetrize_and_factor() {
    let o = symalt(&["antisymmetrize", "-p", "x_1_1", "--n", "2", "--d", "1"]);
    assert_eq!(stdout(&o), "1/2*x_1_1 - 1/2*x_2_1\n");
    let o = symalt(&["vandermonde-factor", "-p", "x_1_1^2*x_2_1 - x_1_1*x_2_1^2", "--n", "2", "--d", "1"]);
    assert_eq!(stdout(&o), "x_1_1*x_2_1\n");
}

#[test]
fn decompose_n2_output() {
    let o = symalt(&["decompose-n2", "-p", "x_1_1*x_2_2 - x_2_1*x_1_2", "--n", "2", "--d", "2"]);
    assert_eq!(stdout(&o), "g_1 = 1/2*x_1_2 + 1/2*x_2_2\ng_2 = -1/2*x_1_1 - 1/2*x_2_1\n");
}

#[test]
fn rewrite_json_mentions_embedding_dimension() {
    let o = symalt(&["--json", "rewrite", "-p", "x_1_1*x_2_1", "--n", "2", "--d", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["M"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn ck_norm_csv() {
    let o = symalt(&[
        "ck-norm", "-p", "x_1_1 + x_2_1", "--n", "2", "--d", "1", "--lo", "0", "--hi", "1", "--resolution", "2", "--k", "1",
    ]);
    assert_eq!(stdout(&o), "alpha,max\n(0 0),2\n(0 1),1\n(1 0),1\ntotal,4\n");
}

#[test]
fn monotonicity_line() {
    let o = symalt(&[
        "monotonicity", "-p", "x_1_1 - x_2_1", "--phat", "x_1_1", "--mode", "antisymmetrize", "--n", "2", "--d", "1",
        "--lo", "0", "--hi", "1", "--resolution", "2", "--k", "0",
    ]);
    assert_eq!(stdout(&o), "lhs=1/2 rhs=1 ok=true\n");
}

#[test]
fn fit_recovers_polynomial() {
    let mut body = String::from("# x, y\n");
    for i in -2..=2i64 {
        body.push_str(&format!("{i},{}\n", 2 * i * i - i + 3));
    }
    let path = temp_file("samples.csv", &body);
    let o = symalt(&["fit", "--samples", path.to_str().unwrap(), "--n", "1", "--d", "1", "--degree", "2"]);
    assert_eq!(stdout(&o), "2*x_1_1^2 - x_1_1 + 3\nresidual=0\n");
}

#[test]
fn counterexample_table() {
    let o = symalt(&["counterexample"]);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let ratios: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(symalt(&["bogus"]).status.code(), Some(2));
    assert_eq!(symalt(&["generators", "--n", "four", "--d", "2"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    let o = symalt(&["check", "--antisymmetric", "-p", "x_1_1 + * 2", "--n", "2", "--d", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 8"));

    let o = symalt(&["vandermonde-factor", "-p", "x_1_1", "--n", "2", "--d", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let bad = temp_file("bad.poly", "x_9_1\n");
    let o = symalt(&["antisymmetrize", "-f", bad.to_str().unwrap(), "--n", "2", "--d", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn threads_flag_is_accepted() {
    let o = symalt(&["--threads", "2", "generators", "--n", "3", "--d", "2", "--quotient"]);
    assert_eq!(stdout(&o), "lower=1 exact=5 upper=84\n");
}
