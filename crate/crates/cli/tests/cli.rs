use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn core_data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(rel)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run<I: IntoIterator<Item = S>, S: AsRef<std::ffi::OsStr>>(args: I) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_branchcov"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

fn error_kind(r: &Run) -> String {
    let v: Value =
        serde_json::from_str(r.stderr.trim()).unwrap_or_else(|e| panic!("{e}: {}", r.stderr));
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn normalize_prints_template_and_replayable_trace() {
    let r = run([Path::new("normalize"), &data("scrambled.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    let entries: Vec<&str> = v["normal_form"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap())
        .collect();
    assert_eq!(
        entries,
        ["(1 2)", "(1 2)", "(1 2)", "(1 2)", "(2 3)", "(2 3)"]
    );

    let start = read_transpositions(&data("scrambled.json"));
    let mut cur = start;
    for m in v["trace"].as_array().unwrap() {
        let m = m.as_str().unwrap();
        let (k, inverse) = match m.strip_suffix("^-1") {
            Some(k) => (k, true),
            None => (m, false),
        };
        let k: usize = k.strip_prefix('H').unwrap().parse().unwrap();
        let (a, b) = (cur[k - 1], cur[k]);
        // forward: (a, b) -> (b, b⁻¹ a b); for transpositions b⁻¹ = b
        let (x, y) = if inverse {
            (conj(&b, &a), a)
        } else {
            (b, conj(&a, &b))
        };
        cur[k - 1] = x;
        cur[k] = y;
    }
    let last: Vec<String> = cur.iter().map(|t| format!("({} {})", t.0, t.1)).collect();
    assert_eq!(last, entries);
}

/// Transpositions as sorted point pairs.
fn read_transpositions(path: &Path) -> Vec<(usize, usize)> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let s = e.as_str().unwrap().trim_matches(|c| c == '(' || c == ')');
            let mut it = s.split_whitespace().map(|p| p.parse::<usize>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

/// `g⁻¹ t g` for transpositions `t`, `g`.
fn conj(t: &(usize, usize), g: &(usize, usize)) -> (usize, usize) {
    let swap = |p: usize| {
        if p == g.0 {
            g.1
        } else if p == g.1 {
            g.0
        } else {
            p
        }
    };
    let (a, b) = (swap(t.0), swap(t.1));
    (a.min(b), a.max(b))
}

#[test]
fn normalize_text_output() {
    let r = run([
        Path::new("--format"),
        Path::new("text"),
        Path::new("normalize"),
        &data("genus_one.json"),
    ]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .starts_with("normal form: ((1 2), (1 2), (1 2), (1 2), (2 3), (2 3))"));
}

#[test]
fn cover_reports_one_torus() {
    let r = run([Path::new("cover"), &data("genus_one.json")]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(
        v["components"],
        serde_json::json!([{"sheets": [1, 2, 3], "euler": 0, "genus": 1}])
    );
}

#[test]
fn equiv_verdicts() {
    let r = run([
        Path::new("equiv"),
        &data("genus_one.json"),
        &data("scrambled.json"),
    ]);
    assert_eq!(json(&r)["verdict"], "equivalent");
    let r = run([
        Path::new("equiv"),
        &data("genus_one.json"),
        &data("intransitive.json"),
    ]);
    assert_eq!(json(&r)["verdict"], "distinct");
    let r = run([
        Path::new("equiv"),
        Path::new("--covering"),
        &data("genus_one.json"),
        &data("scrambled.json"),
    ]);
    assert_eq!(json(&r)["verdict"], "equivalent");
    let r = run([
        Path::new("equiv"),
        &data("braid.json"),
        &data("braid_target.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(json(&r)["verdict"], "equivalent");
    let r = run([
        Path::new("equiv"),
        &data("braid.json"),
        &data("genus_one.json"),
    ]);
    assert_eq!((r.code, error_kind(&r).as_str()), (1, "flavor_mismatch"));
}

#[test]
fn color_trefoil() {
    let r = run([
        Path::new("color"),
        &core_data("pd/trefoil.pd"),
        Path::new("--d"),
        Path::new("3"),
    ]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(
        (v["count"].as_u64(), v["surjective"].as_u64()),
        (Some(9), Some(6))
    );
    let colors = v["colorings"][1]["colors"].as_array().unwrap();
    assert!(colors
        .iter()
        .all(|c| ["blue", "red", "green"].contains(&c.as_str().unwrap())));
    let text = run([
        Path::new("color"),
        &core_data("pd/trefoil.pd"),
        Path::new("--d"),
        Path::new("3"),
        Path::new("--format"),
        Path::new("text"),
    ]);
    assert!(text.stdout.starts_with("9 colorings, 6 surjective"));
}

#[test]
fn lift_round_trips_coloring_files() {
    let dir = tempfile::tempdir().unwrap();
    let r = run([
        Path::new("color"),
        &core_data("pd/trefoil.pd"),
        Path::new("--d"),
        Path::new("3"),
    ]);
    let v = json(&r);
    let mut c = v["colorings"][1].clone();
    let obj = c.as_object_mut().unwrap();
    obj.remove("surjective");
    obj.remove("colors");
    let path = dir.path().join("f.json");
    std::fs::write(&path, serde_json::to_string_pretty(&c).unwrap()).unwrap();
    let r = run([Path::new("lift"), &core_data("pd/trefoil.pd"), &path]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lift = json(&r);
    assert_eq!(lift["flavor"], "braid");
    // the written braid coloring parses back and reprints identically
    let lifted = dir.path().join("g.json");
    std::fs::write(&lifted, &r.stdout).unwrap();
    let dg = branchcov_core::link::LinkDiagram::parse(
        &std::fs::read_to_string(core_data("pd/trefoil.pd")).unwrap(),
    )
    .unwrap();
    let g = branchcov_core::link::BraidColoring::from_json(&dg, &r.stdout).unwrap();
    assert_eq!(g.to_json(), r.stdout.trim_end());
    // a braid coloring is not a valid input for lift
    let r = run([Path::new("lift"), &core_data("pd/trefoil.pd"), &lifted]);
    assert_eq!((r.code, error_kind(&r).as_str()), (1, "flavor_mismatch"));
}

#[test]
fn chart_verbs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let chart = core_data("charts/nonorientable.json");
    let r = run([Path::new("chart-validate"), &chart]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["valid"], true);

    let r = run([Path::new("chart-orient"), &chart]);
    assert_eq!(
        (r.code, json(&r)["orientable"].clone()),
        (0, Value::Bool(false))
    );

    let moved = run([
        Path::new("--seed"),
        Path::new("7"),
        Path::new("chart-move"),
        &chart,
        Path::new("--random"),
        Path::new("5"),
    ]);
    assert_eq!(moved.code, 0, "{}", moved.stderr);
    let again = run([
        Path::new("--seed"),
        Path::new("7"),
        Path::new("chart-move"),
        &chart,
        Path::new("--random"),
        Path::new("5"),
    ]);
    assert_eq!(moved.stdout, again.stdout);
    let c = branchcov_core::chart::Chart::from_json(&moved.stdout).unwrap();
    assert_eq!(c.to_json(), moved.stdout.trim_end());

    let p = dir.path().join("moved.json");
    std::fs::write(&p, &moved.stdout).unwrap();
    let a = run([Path::new("chart-monodromy"), &chart]);
    let b = run([Path::new("chart-monodromy"), &p]);
    assert_eq!((a.code, b.code), (0, 0));
    let sa = dir.path().join("a.json");
    let sb = dir.path().join("b.json");
    std::fs::write(&sa, &a.stdout).unwrap();
    std::fs::write(&sb, &b.stdout).unwrap();
    let r = run([Path::new("equiv"), &sa, &sb]);
    assert_eq!(json(&r)["verdict"], "equivalent");

    let list = run([Path::new("chart-move"), &chart, Path::new("--list")]);
    let moves = json(&list);
    let first = serde_json::to_string(&moves[0]).unwrap();
    let r = run([
        Path::new("chart-move"),
        &chart,
        Path::new("--move"),
        Path::new(&first),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);

    let svg = run([Path::new("render"), &chart]);
    assert!(svg.stdout.starts_with("<svg"));
    let dot = run([
        Path::new("render"),
        &chart,
        Path::new("--format"),
        Path::new("dot"),
    ]);
    assert!(dot.stdout.starts_with("digraph"));
}

#[test]
fn quandle_verbs() {
    let r = run([
        Path::new("quandle-check"),
        &data("r3.txt"),
        Path::new("--diagram"),
        &core_data("pd/trefoil.pd"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(json(&r)["colorings"], 9);
    let r = run([Path::new("quandle-check"), &data("not_quandle.txt")]);
    assert_eq!((r.code, error_kind(&r).as_str()), (2, "invalid_quandle"));
    assert_eq!(json(&r)["valid"], false);

    let r = run([
        Path::new("quandle-lift"),
        &core_data("pd/trefoil.pd"),
        &data("r6.txt"),
        &data("r3.txt"),
        &data("r6_to_r3.txt"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let results = json(&r)["results"].as_array().unwrap().clone();
    assert_eq!(results.len(), 9);
    assert!(results.iter().all(|x| !x["lift"].is_null()));

    let r = run([
        Path::new("quandle-lift"),
        &core_data("pd/trefoil.pd"),
        &data("r6.txt"),
        &data("r3.txt"),
        &data("bad_map.txt"),
    ]);
    assert_eq!((r.code, error_kind(&r).as_str()), (1, "not_surjection"));
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk");
    std::fs::write(&junk, "{ not json").unwrap();
    let bad_pd = dir.path().join("bad.pd");
    std::fs::write(&bad_pd, "X(1,2,3").unwrap();
    let bad_degree = dir.path().join("d.json");
    std::fs::write(
        &bad_degree,
        r#"{"degree":40,"flavor":"permutation","entries":[]}"#,
    )
    .unwrap();
    let missing = dir.path().join("missing.json");
    let cases: Vec<(Vec<PathBuf>, i32, &str)> = vec![
        (vec!["normalize".into(), data("genus_one.json")], 0, ""),
        (
            vec!["normalize".into(), data("intransitive.json")],
            1,
            "intransitive",
        ),
        (
            vec!["normalize".into(), data("braid.json")],
            1,
            "flavor_mismatch",
        ),
        (vec!["cover".into(), data("open.json")], 1, "not_closing"),
        (vec!["normalize".into(), junk.clone()], 2, "json"),
        (
            vec!["normalize".into(), bad_degree],
            2,
            "degree_out_of_range",
        ),
        (vec!["normalize".into(), missing], 2, "io"),
        (
            vec!["color".into(), bad_pd, "--d".into(), "3".into()],
            2,
            "parse",
        ),
        (vec!["chart-validate".into(), junk], 2, "json"),
        (
            vec![
                "color".into(),
                core_data("pd/trefoil.pd"),
                "--d".into(),
                "40".into(),
            ],
            2,
            "degree_out_of_range",
        ),
        (
            vec![
                "render".into(),
                core_data("charts/nonorientable.json"),
                "--format".into(),
                "text".into(),
            ],
            2,
            "usage",
        ),
        (
            vec![
                "cover".into(),
                data("genus_one.json"),
                "--format".into(),
                "svg".into(),
            ],
            2,
            "usage",
        ),
        (vec!["no-such-verb".into()], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let r = run(&args);
        assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
        if code != 0 {
            assert_eq!(error_kind(&r), kind, "{args:?}");
        }
    }
}
