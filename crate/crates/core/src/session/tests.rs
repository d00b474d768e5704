use super::*;
use crate::error::Error;

const KOSZUL: &str = "\
field Q
base x:1
tower B divided
  X : deg 1, wt 1, d = x
";

fn run(text: &str) -> SessionOutput {
    run_session(text, &RunOptions::default()).unwrap()
}

#[test]
fn parses_a_koszul_session() {
    let model = parse_session(KOSZUL).unwrap();
    let ws = build_workspace(&model).unwrap();
    assert_eq!(ws.tower.nvars(), 1);
    assert_eq!(ws.tower_name, "B");
}

#[test]
fn rejects_non_cycle_with_position() {
    let text = format!("{KOSZUL}  Y : deg 2, wt 1, d = X\n");
    let err = build_workspace(&parse_session(&text).unwrap()).unwrap_err();
    match err {
        Error::Parse { line, col, message } => {
            assert_eq!((line, col), (5, 24));
            assert!(message.contains("target is not a cycle"), "{message}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_session("field Q\nbase x:1\nrun\n  eval x + \n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    let err = parse_session("field Q\nbase x:1 y\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 2, col: 11, .. }), "{err}");
    let err = parse_session("field R\n").unwrap_err();
    assert_eq!(err.to_string(), "1:7: unknown field `R`");
    let err = build_workspace(&parse_session("base x:1\ntower B divided\n  X : deg 1, wt 1, d = z\n").unwrap())
        .unwrap_err();
    assert_eq!(err.to_string(), "3:24: unknown identifier `z`");
}

#[test]
fn eval_divided_powers() {
    let text = "field Q\ntower B divided\n  X : deg 2, wt 1\nrun\n  eval X^(2)·X^(3)\n  eval X^2\n";
    let out = run(text);
    assert_eq!(out.reports[0].result, "10·X^(5)");
    assert_eq!(out.reports[1].result, "2·X^(2)");
}

#[test]
fn fields_accept_both_spellings() {
    let a = parse_session("field F5\n").unwrap();
    let b = parse_session("field GF(5)\n").unwrap();
    assert_eq!(a, b);
    assert!(parse_session("field F6\n").is_err());
}

#[test]
fn round_trip_is_a_fixed_point() {
    for text in [
        include_str!("../../sessions/koszul.dgl"),
        include_str!("../../sessions/obstructed.dgl"),
        include_str!("../../sessions/tate.dgl"),
        "field F5\nbase x:2\ntower B ordinary over X\n  X : deg 1, wt 2, d = 3/2·x\n  Y : deg 2, wt 4, d = -(x·X) + x·(-X)\nrun\n  eval (X^(2))^(3) - -Y\n  ext B B@J2 -1..2 0:3:-1:4\n",
    ] {
        let model = parse_session(text).unwrap();
        let printed = model.to_string();
        let again = parse_session(&printed).unwrap();
        assert_eq!(model, again, "{printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn free_module_splits_and_has_no_higher_ext() {
    let text = format!("{KOSZUL}run\n  naive-lift B\n  ext B B 0..3\n");
    let out = run(&text);
    assert_eq!(out.status, Status::Ok);
    assert!(out.reports[0].result.starts_with("SPLIT"));
    assert_eq!(out.reports[0].tables[0].rows[0], vec![serde_json::json!("1"), serde_json::json!("1⊗1")]);
    let ext = &out.reports[1].tables[0];
    for row in &ext.rows[1..] {
        assert!(row[1..].iter().all(|v| v == 0), "{row:?}");
    }
}

#[test]
fn obstructed_session_exits_with_ten() {
    let out = run(include_str!("../../sessions/obstructed.dgl"));
    assert_eq!(out.status.exit_code(), 10);
    assert_eq!(out.reports[1].result, "OBSTRUCTED");
    assert!(out.reports[1].certificates.iter().any(|c| c.contains("0 = 1")));
}

#[test]
fn command_failures_are_reported() {
    let text = format!("{KOSZUL}run\n  envelope-basis\n  naive-lift M\n  eval X\n");
    let out = run(&text);
    assert_eq!(out.status.exit_code(), 1);
    assert!(out.reports[0].result.starts_with("ERROR: 6:3:"), "{}", out.reports[0].result);
    assert!(out.reports[1].result.contains("unknown module `M`"));
    assert_eq!(out.reports[2].result, "X");
}

#[test]
fn modules_are_right_modules() {
    let text = "base x:1\ntower B divided\n  X : deg 1, wt 1, d = x\nmodule N\n  e : deg 0, wt 0\n  f : deg 1, wt 1, d = x·e\n";
    let err = build_workspace(&parse_session(text).unwrap()).unwrap_err();
    assert!(err.to_string().contains("right modules"), "{err}");
}

#[test]
fn reports_are_deterministic() {
    let a = run(include_str!("../../sessions/koszul.dgl")).to_json();
    let b = run(include_str!("../../sessions/koszul.dgl")).to_json();
    assert_eq!(a, b);
}

#[test]
fn expressions_reject_trailing_input() {
    assert!(parse_expression("x + y").is_ok());
    let err = parse_expression("x + y )").unwrap_err();
    assert!(err.to_string().starts_with("1:7:"), "{err}");
}

#[test]
fn single_command_lines() {
    let cmd = parse_command_line("  ext N N@J2 0..3 0:4:2").unwrap();
    assert_eq!(cmd.kind.to_string(), "ext N N@J2 0..3 0:4:2");
    assert!(parse_command_line("frobnicate").is_err());
    assert!(parse_command_line("").is_err());
}
