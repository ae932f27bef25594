use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pairscore"))
}

fn penguins() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/penguins.csv")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> usize {
    stdout(o).lines().count()
}

#[test]
fn scores_single_measure() {
    let o = run(&["scores", penguins().to_str().unwrap(), "--measures", "pearson"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("x,y,score,group,value,pair_type\n"));
    assert_eq!(lines(&o), 1 + 10);
}

#[test]
fn scores_default_grouped() {
    let o = run(&["scores", penguins().to_str().unwrap(), "--default", "--by", "species"]);
    assert!(o.status.success());
    assert_eq!(lines(&o), 1 + 84);
}

#[test]
fn scores_multi_grouped() {
    let o = run(&["scores", penguins().to_str().unwrap(), "--measures", "pearson,dcor", "--by", "species"]);
    assert!(o.status.success());
    assert_eq!(lines(&o), 1 + 2 * 40);
}

#[test]
fn unknown_measure_exit_4() {
    let o = run(&["scores", penguins().to_str().unwrap(), "--measures", "nosuch"]);
    assert_eq!(o.status.code(), Some(4));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("pairscore: measure:"));
}

#[test]
fn missing_input_exit_2() {
    let o = run(&["scores", "/definitely/not/here.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn schema_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let schema = dir.path().join("schema.json");
    std::fs::write(&schema, r#"{"nosuch": {"kind": "factor"}}"#).unwrap();
    let o = run(&["scores", penguins().to_str().unwrap(), "--schema", schema.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["scores", penguins().to_str().unwrap(), "--measures", "cor", "--by", "bill_len"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn empty_score_csv_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["plot", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let header_only = dir.path().join("header.csv");
    std::fs::write(&header_only, "x,y,score,group,value,pair_type\n").unwrap();
    let o = run(&["plot", header_only.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("pairscore: table:"));
}

#[test]
fn pipeline_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let mut outputs = Vec::new();
    for round in 0..2 {
        let (s, f, m) = (p(&format!("s{round}.csv")), p(&format!("f{round}.csv")), p(&format!("m{round}.svg")));
        assert!(run(&["scores", penguins().to_str().unwrap(), "--default", "--by", "species", "-o", &s]).status.success());
        assert!(run(&["filter", &s, "--min-max", "0.25", "-o", &f]).status.success());
        assert!(run(&["plot", &f, "--order", "seriate_max_diff", "-o", &m]).status.success());
        outputs.push([s, f, m].map(|x| std::fs::read(x).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let svg = String::from_utf8(outputs[0][2].clone()).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"class="glyph""#));
}

#[test]
fn filter_zero_threshold_keeps_everything() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.csv");
    let s = s.to_str().unwrap();
    assert!(run(&["scores", penguins().to_str().unwrap(), "--default", "-o", s]).status.success());
    let o = run(&["filter", s, "--min-max", "0"]);
    let original = std::fs::read_to_string(s).unwrap();
    assert_eq!(stdout(&o), original);
    let o = run(&["filter", s, "--var", "island"]);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_string).collect();
    let expected = original.lines().skip(1).filter(|l| l.split(',').take(2).any(|v| v == "island")).count();
    assert_eq!(rows.len(), expected);
    assert_eq!(rows.len(), 7);
}

#[test]
fn methods_listing() {
    let o = run(&["methods"]);
    assert!(o.status.success());
    assert_eq!(lines(&o), 1 + 17);
    assert!(stdout(&o).starts_with("name,nn,ff,fn,from,range,ordinal\n"));
    let o = run(&["methods", "--filter-types", "nn,ff,fn"]);
    let names: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    assert_eq!(names, ["pair_ace", "pair_cancor", "pair_nmi"]);
    let o = run(&["methods", "--filter-types", "ordinal"]);
    assert_eq!(lines(&o), 1 + 8);
}

#[test]
fn linear_html_plot() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.csv");
    let h = dir.path().join("l.html");
    assert!(run(&["scores", penguins().to_str().unwrap(), "--measures", "pearson,dcor", "-o", s.to_str().unwrap()])
        .status
        .success());
    let o = run(&["plot", s.to_str().unwrap(), "--type", "linear", "--geom", "point", "--interactive", "-o", h.to_str().unwrap()]);
    assert!(o.status.success());
    let html = std::fs::read_to_string(h).unwrap();
    assert!(html.contains("<html"));
    assert!(html.contains("<title>"));
}

#[test]
fn convert_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    std::fs::write(&m, ",a,b,c\na,1,0.5,-0.25\nb,0.5,1,\nc,-0.25,,1\n").unwrap();
    let o = run(&["convert", m.to_str().unwrap(), "--score", "pearson"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "x,y,score,group,value,pair_type\na,b,pearson,all,0.5,nn\na,c,pearson,all,-0.25,nn\nb,c,pearson,all,,nn\n"
    );
    std::fs::write(&m, ",a,b\na,1,0.5\nb,0.4,1\n").unwrap();
    let o = run(&["convert", m.to_str().unwrap(), "--score", "pearson"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn pivot_wide() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.csv");
    assert!(run(&["scores", penguins().to_str().unwrap(), "--measures", "pearson,spearman", "-o", s.to_str().unwrap()])
        .status
        .success());
    let o = run(&["pivot", s.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("x,y,group,pair_type,pearson,spearman\n"));
    assert_eq!(text.lines().count(), 1 + 10);
}
