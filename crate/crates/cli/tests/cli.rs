use std::process::{Command, Output};

fn sylvrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylvrank")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn figure_eight_homology_row() {
    let o = sylvrank(&["--entry", "figure-eight", "--mode", "homology", "--weights", "2:2:1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("mode,entry,lambda,min_lambda,dim_w,value_num,value_den,value_dec,target,error_dec\n"));
    let rows = csv_rows(&text);
    let dims: Vec<&str> = rows.iter().map(|r| r[5].as_str()).collect();
    assert_eq!(dims, ["0", "1", "1"]);
    assert!(rows.iter().all(|r| r[4] == "3"));
    assert!(text.contains("λ=2: h = (0, 1, 1)"));
}

#[test]
fn sanov_limit_is_exact() {
    let o = sylvrank(&["--entry", "sanov-f2", "--mode", "limit", "--degree", "1", "--weights", "1:12:1"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r[9] == "0.0000000000" && r[7] == "1.0000000000"));
    assert!(stdout(&o).contains("exact: true"));
}

#[test]
fn harris_unipotent_rows() {
    let o = sylvrank(&[
        "--entry", "z-congruence3", "--mode", "harris", "--p", "3", "--levels", "1:3", "--matrix", "element:t-1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let values: Vec<String> = csv_rows(&stdout(&o)).iter().map(|r| format!("{}/{}", r[5], r[6])).collect();
    assert_eq!(values, ["0/1", "2/3", "8/9"]);
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.csv"));
        let o = sylvrank(&[
            "--entry", "z2", "--mode", "rank", "--weights", "1:6:1", "--matrix", "random", "--seed", "11",
            "--shape", "2x2", "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let csv = std::fs::read(&out).unwrap();
        let summary = std::fs::read(dir.path().join(format!("run{k}.csv.summary.txt"))).unwrap();
        assert_eq!(summary, o.stdout);
        outputs.push((csv, summary));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.conf");
    std::fs::write(&cfg, "# luck chain\nentry = z-unipotent\nmode = luck\nquotient = 2,4\nmatrix = element:t-1\n").unwrap();
    let o = sylvrank(&["--config", cfg.to_str().unwrap(), "--quotient", "2,4,8,16"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    assert_eq!((rows[3][5].as_str(), rows[3][6].as_str()), ("15", "16"));
}

#[test]
fn errors_are_one_line_with_kind() {
    let cases: &[(&[&str], &str)] = &[
        (&["--entry", "c2-central", "--mode", "homology", "--weights", "3:3:1", "--parity", "any"], "error: parity: "),
        (&["--entry", "nope", "--mode", "homology", "--weights", "1:2"], "error: structural: "),
        (&["--entry", "z2", "--mode", "rank", "--weights", "1:2", "--matrix", "random"], "error: config: "),
        (&["--entry", "z-unipotent", "--mode", "luck", "--quotient", "2,3", "--matrix", "element:t-1"], "error: precondition: "),
        (&["--entry", "sanov-f2", "--mode", "harris", "--p", "3", "--levels", "1:2"], "error: precondition: "),
    ];
    for (args, prefix) in cases {
        let o = sylvrank(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.starts_with(prefix), "{args:?}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn corrupted_files_surface_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("k.pres");
    let rep = dir.path().join("k.rep");
    std::fs::write(&pres, "generators: a b\nrelator: abABaBAbaB\n").unwrap();
    std::fs::write(&rep, "field: 1 -1 1\na: 1 1 0 1\nb: 1 0 1,1 1\n").unwrap();
    let o = sylvrank(&[
        "--presentation", pres.to_str().unwrap(), "--representation", rep.to_str().unwrap(), "--mode", "homology",
        "--weights", "2:2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: validation: relator 1"), "{err}");
}
