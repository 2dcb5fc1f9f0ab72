use holofol::cli::parser::{eval_expr, parse_germ, to_field, GermSpec};
use holofol::cli::{run_with_args, Outcome};
use holofol::error::Error;
use serde_json::{json, Value};

const COUPLED_FIELD: &str = "-(x1 + x2^2*(-(1/tau)*x3^2)) d/dx1 - 3*x2 d/dx2 + x3 d/dx3";
const MAIN_FIELD: &str = "-(x - (1/tau)*y^2*z^2) d/dx - 3*y d/dy + z d/dz";

fn call(args: &[&str]) -> Outcome {
    let mut argv = vec!["holofol"];
    argv.extend_from_slice(args);
    run_with_args(argv, &mut std::io::empty())
}

fn report(args: &[&str]) -> Value {
    let o = call(args);
    assert_eq!(o.code, 0, "{} {}", o.stdout, o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

const CORPUS: &[&str] = &[
    "x",
    "y",
    "x1",
    "0",
    "1/2",
    "-3/4",
    "i",
    "tau",
    "1/tau",
    "tau^-2",
    "2*i*tau^-1",
    "x + y",
    "x - y",
    "-x + y",
    "-(x + y)",
    "x*y",
    "x^2*y^3",
    "(x + y)^2",
    "(x - y)^3*z",
    "x^2 - 2*x*y + y^2",
    "3x",
    "3x^2*y",
    "1/3*x^3",
    "(1/3)*x^3",
    "x/2",
    "x/(2)",
    "(x + y)/3",
    "x^2/tau",
    "-(x - (1/tau)*y^2*z^2)",
    "(1 + i)*x",
    "(2 - 3*i/5)*y^2",
    "i*tau*z",
    "-i",
    "--x",
    "x - -y",
    "x*-y",
    "((x))",
    "x^0",
    "(x^2)^3",
    "x1*x2^2*x3^2",
    "t^3*x",
    "t - t^3*x + t^5*x^2",
    "(x + y^2, y)",
    "(x, y)",
    "(-x, -y)",
    "(x + x^2, y - x*y)",
    "(x/(1 + x), y)",
    "(t*x, t)",
    "(x1 + x2^2, x2)",
    "(i*x, -i*y)",
    "(x, y, z)",
    "x d/dx",
    "x d/dx + y d/dy",
    "-x d/dx - 3*y d/dy + z d/dz",
    "x^2 d/dx + x*y d/dy",
    "-2*x^2*y d/dx + x*y^2 d/dy",
    "(x + y) d/dx - y d/dy",
    "-(x1 + x2^2*x3^2) d/dx1 - 3*x2 d/dx2 + x3 d/dx3",
    "-(x - (1/tau)*y^2*z^2) d/dx - 3*y d/dy + z d/dz",
    "(-2*t - tau^-1*t^3*x*z^2) d/dt + (-x + tau^-1*t^2*x^2*z^2) d/dx + (z) d/dz",
    "1*x d/dx + 2*y d/dy - 3*z d/dz",
    "(1/2 + i/3)*x d/dx",
];

#[test]
fn parse_render_round_trip_corpus() {
    assert!(CORPUS.len() >= 50);
    for s in CORPUS {
        let ast = parse_germ(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        let rendered = ast.to_string();
        let again = parse_germ(&rendered).unwrap_or_else(|e| panic!("{s} -> {rendered}: {e}"));
        assert_eq!(again, ast, "{s} -> {rendered}");
        assert_eq!(again.to_string(), rendered);
    }
}

#[test]
fn rendered_series_parse_back_to_themselves() {
    let (x, names) = to_field(&parse_germ(MAIN_FIELD).unwrap(), 6).unwrap();
    let y = holofol::blowup::blowup_vector_field_axis(
        &x,
        2,
        holofol::blowup::Chart::Tx,
        6,
        false,
    )
    .unwrap();
    for (k, c) in x.components().iter().chain(y.components()).enumerate() {
        let names: &[&str] = if k < 3 { &names } else { &["t", "x", "z"] };
        let text = c.render(names);
        let GermSpec::Scalar(e) = parse_germ(&text).unwrap() else {
            panic!("{text} is not a scalar")
        };
        assert_eq!(&eval_expr(&e, names, 6).unwrap(), c, "{text}");
    }
}

#[test]
fn syntax_error_is_located() {
    match parse_germ("x + * y") {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 5)),
        other => panic!("{other:?}"),
    }
    match parse_germ("(x + y,\n  y * )") {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 7)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_germ("x + w"), Err(Error::UnknownVariable(_))));
}

#[test]
fn holonomy_golden_coupled_field() {
    let v = report(&["holonomy", "--order", "6", COUPLED_FIELD]);
    assert_eq!(v["distinguished_axis"], json!("x3"));
    assert_eq!(v["holonomy"], json!(["x1 + x2^2", "x2"]));
}

#[test]
fn holonomy_golden_resonant_power() {
    let v = report(&["holonomy", "--order", "6", "-(x1 - (1/tau)*x2^2*x3^5) d/dx1 - 3*x2 d/dx2 + x3 d/dx3"]);
    assert_eq!(v["holonomy"], json!(["x1 + x2^2", "x2"]));
}

#[test]
fn period_golden() {
    let v = report(&["period", "--pmax", "20", "(x+y^2, y)"]);
    assert_eq!(v["period"], Value::Null);
    let v = report(&["period", "(-x, -y)"]);
    assert_eq!(v["period"], json!(2));
}

#[test]
fn euclid_golden() {
    let v = report(&["euclid", "--p", "2,4", "--q", "1,2"]);
    assert_eq!(v["result"], json!("not_transverse"));
    let v = report(&["euclid", "--p", "2,1", "--q", "1,2"]);
    assert_eq!(v["result"], json!({"w": [-1, 1], "a": -1, "b": 1}));
}

#[test]
fn analyze_schema() {
    let v = report(&["analyze", "-x d/dx - 3*y d/dy + z d/dz"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "condition_star",
            "distinguished_axis",
            "eigenvalues",
            "first_integrals",
            "flag_checks",
            "holonomy",
            "input",
            "notes",
            "order",
            "period",
            "verdict",
            "version"
        ]
    );
    assert_eq!(v["eigenvalues"], json!(["-1", "-3", "1"]));
    assert_eq!(v["holonomy"], json!(["x", "y"]));
    assert_eq!(v["first_integrals"], json!(["x*z", "y*z^3"]));
    assert_eq!(v["period"], json!(1));
    assert_eq!(v["flag_checks"]["kupka"], json!(true));
}

#[test]
fn analyze_reports_unsupported_cases_as_notes() {
    let v = report(&["analyze", "-x d/dx - 3*y d/dy + 2*z d/dz"]);
    assert_eq!(v["holonomy"], Value::Null);
    assert!(v["notes"].to_string().contains("NonIntegerRatio"), "{v}");
}

#[test]
fn blowup_field_and_map() {
    let v = report(&["blowup", "--order", "6", MAIN_FIELD]);
    assert_eq!(v["coordinates"], json!(["t", "x", "z"]));
    assert_eq!(
        v["result"],
        json!("(-2*t - tau^-1*t^3*x*z^2) d/dt + (-x + tau^-1*t^2*x^2*z^2) d/dx + (z) d/dz")
    );
    let v = report(&["blowup", "--chart", "s_y", "--order", "4", "(x + y^2, y)"]);
    assert_eq!(v["coordinates"], json!(["s", "y"]));
}

#[test]
fn exp_log_and_orbit() {
    let v = report(&["exp", "--order", "4", "x^2 d/dx"]);
    assert_eq!(v["result"], json!(["x + x^2 + x^3 + x^4", "y"]));
    let v = report(&["log", "--order", "4", "(x + x^2 + x^3 + x^4, y)"]);
    assert_eq!(v["result"], json!("(x^2) d/dx + (0) d/dy"));
    let v = report(&["orbit", "--point", "0,1/3", "--cap", "1000", "(x + y^2, y)"]);
    assert_eq!(v["count"], json!(19));
    assert_eq!(v["cap_reached"], json!(false));
}

#[test]
fn flagcheck_default_and_explicit_form() {
    let f = "2*x d/dx + 3*y d/dy - z d/dz";
    let v = report(&["flagcheck", f]);
    assert_eq!(v["interior_product_vanishes"], json!(true));
    assert_eq!(v["integrable"], json!(true));
    assert_eq!(v["kupka"], json!(true));
    let v = report(&["flagcheck", "--form", "(y, x, 0)", f]);
    assert_eq!(v["interior_product_vanishes"], json!(false));
}

#[test]
fn precision_adds_numeric_fallback() {
    let v = report(&["holonomy", "--precision", "6", "-(x - (1/tau)*y^2*z^5) d/dx - 3*y d/dy + z d/dz"]);
    assert!(v["holonomy_numeric"].is_array());
}

#[test]
fn module_errors_exit_one_with_json() {
    let o = call(&["log", "(2*x, y)"]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["error"]["kind"].is_string());
    let o = call(&["holonomy", "x d/dx + 2*y d/dy + 3*z d/dz"]);
    assert_eq!(o.code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&[]).code, 2);
    assert_eq!(call(&["blowup", "--chart", "q", "(x, y)"]).code, 1);
    assert_eq!(call(&["analyze", "--file", "/nonexistent/germ.txt"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["analyze", MAIN_FIELD],
        vec!["blowup", "--order", "7", "(x + y^2, y)"],
        vec!["analyze", "--format", "text", "-x d/dx - 3*y d/dy + z d/dz"],
    ] {
        let first = call(&args);
        for _ in 0..3 {
            assert_eq!(call(&args), first);
        }
    }
}
