//! Command-line front end: argument handling, dispatch and reports.
//!
//! Every subcommand prints one JSON object with sorted keys, or the same
//! data as `key: value` lines with `--format text`. Module errors print an
//! `{"error": …}` object and exit with status 1; usage errors exit with 2.

pub mod parser;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::blowup::{blowup_diffeo, blowup_vector_field_axis, Chart};
use crate::error::{Error, Result};
use crate::germs::{
    condition_star, eigen_data, exp_time_one, formal_period, infinitesimal_generator,
    orbit_cardinality, StarVerdict, VectorFieldGerm,
};
use crate::holonomy::holonomy_generator;
use crate::integrability::{
    diagnose, frobenius_check, interior_product, kupka_nonvanishing,
    pure_meromorphic_combination, radial_flag_form, Combination, ExponentVector, OneFormGerm,
    DEFAULT_ORDER, DEFAULT_PMAX,
};
use crate::series::{DiffeoGerm, TruncatedSeries};
use parser::{parse_germ, parse_point, parse_rational, to_field, to_map, GermSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "holofol", version, about = "Holonomy, blow-ups and first integrals of holomorphic vector field germs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation order.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: u32,
    /// Largest period tried by the periodicity test.
    #[arg(long, global = true, default_value_t = DEFAULT_PMAX)]
    pub pmax: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also report τ-dependent coefficients as decimals with this many digits.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Germ specification; read from stdin when absent or `-`.
    #[arg(allow_hyphen_values = true)]
    pub spec: Option<String>,
    /// Read the germ from a file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full diagnosis of a three-dimensional field.
    Analyze(Input),
    /// Holonomy generator around the distinguished axis.
    Holonomy {
        #[command(flatten)]
        input: Input,
        /// Axis variable; defaults to the isolated eigenvalue's axis.
        #[arg(long)]
        axis: Option<String>,
    },
    /// Strict transform of a plane map, or of a 3D field along an axis.
    Blowup {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "t_x")]
        chart: String,
        /// Blown-up axis for vector fields.
        #[arg(long, default_value = "z")]
        axis: String,
        /// Divide the transformed field by its common monomial factor.
        #[arg(long)]
        divide: bool,
    },
    /// Time-one map of a vector field of order at least two.
    Exp(Input),
    /// Infinitesimal generator of a map tangent to the identity.
    Log(Input),
    /// Least formal period of a map, up to `--pmax`.
    Period(Input),
    /// Size of an orbit inside a closed polydisc.
    Orbit {
        #[command(flatten)]
        input: Input,
        /// Starting point, e.g. `0,1/3`.
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "1")]
        radius: String,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Mixed-sign combination of two exponent vectors.
    Euclid {
        /// Exponents of the first germ, e.g. `2,4`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Flag, integrability and Kupka tests for a one-form.
    Flagcheck {
        #[command(flatten)]
        input: Input,
        /// One-form `(A, B, C)`; defaults to the radial-type form.
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        axis: Option<String>,
    },
}

/// Outcome of one invocation: exit status and the text to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the subcommand;
/// `stdin` is consulted only when no germ is given.
pub fn run_with_args<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match run(&cli, stdin) {
        Ok(v) => Outcome {
            code: 0,
            stdout: emit(&v, format),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Module(e)) => Outcome {
            code: 1,
            stdout: emit(&error_json(&e), format),
            stderr: String::new(),
        },
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

fn error_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(e.kind()));
    m.insert("message".into(), json!(e.to_string()));
    if let Error::Syntax { line, column, expected } = e {
        m.insert("line".into(), json!(line));
        m.insert("column".into(), json!(column));
        m.insert("expected".into(), json!(expected));
    }
    json!({ "error": Value::Object(m), "version": VERSION })
}

fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(m) = v {
                for (k, val) in m {
                    let s = match val {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k}: {s}\n"));
                }
            }
            out
        }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> std::result::Result<String, Failure> {
    if let Some(path) = &input.file {
        return std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())));
    }
    match input.spec.as_deref() {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn axis_index(name: &str, names: &[&str]) -> Result<usize> {
    names
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown axis `{name}`")))
}

fn render_map(g: &DiffeoGerm, names: &[&str]) -> Value {
    json!(g.render(names))
}

fn numeric_render(s: &TruncatedSeries, names: &[&str], digits: u32) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s
        .terms()
        .map(|(m, c)| {
            let mono = crate::series::render_monomial(m, names);
            let c = c.numeric_eval(digits);
            if mono.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{mono}")
            }
        })
        .collect();
    parts.join(" + ")
}

fn numeric_map(g: &DiffeoGerm, names: &[&str], digits: u32) -> Value {
    json!(g
        .components()
        .iter()
        .map(|c| numeric_render(c, names, digits))
        .collect::<Vec<_>>())
}

fn star_json(s: &StarVerdict, names: &[&str]) -> Value {
    json!({
        "holds": s.holds,
        "isolated_axis": s.isolated_index.map(|k| names[k]),
        "line_direction": s.line_direction.as_ref().map(|d| d.to_string()),
    })
}

/// Names of the coordinates other than `axis`, in increasing order.
fn transverse_names<'a>(names: &[&'a str], axis: usize) -> Vec<&'a str> {
    names
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != axis)
        .map(|(_, n)| *n)
        .collect()
}

fn field_input(input: &Input, stdin: &mut dyn Read, order: u32) -> std::result::Result<(GermSpec, VectorFieldGerm, Vec<&'static str>), Failure> {
    let text = read_input(input, stdin)?;
    let spec = parse_germ(&text)?;
    let (x, names) = to_field(&spec, order)?;
    Ok((spec, x, names))
}

fn map_input(input: &Input, stdin: &mut dyn Read, order: u32) -> std::result::Result<(GermSpec, DiffeoGerm, Vec<&'static str>), Failure> {
    let text = read_input(input, stdin)?;
    let spec = parse_germ(&text)?;
    let (g, names) = to_map(&spec, order)?;
    Ok((spec, g, names))
}

fn exponents(text: &str) -> std::result::Result<ExponentVector, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(ExponentVector::new)
        .map_err(|_| Failure::Usage(format!("bad exponent list `{text}`")))
}

fn run(cli: &Cli, stdin: &mut dyn Read) -> std::result::Result<Value, Failure> {
    let order = cli.order;
    let mut out = Map::new();
    out.insert("version".into(), json!(VERSION));
    match &cli.command {
        Command::Analyze(input) => {
            let (spec, x, names) = field_input(input, stdin, order)?;
            let r = diagnose(&x, order, cli.pmax)?;
            let trans = r.axis.map(|a| transverse_names(&names, a));
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert(
                "eigenvalues".into(),
                json!(r.eigenvalues.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
            );
            out.insert("condition_star".into(), star_json(&r.star, &names));
            out.insert("distinguished_axis".into(), json!(r.axis.map(|a| names[a])));
            out.insert(
                "holonomy".into(),
                match (&r.holonomy, &trans) {
                    (Some(h), Some(t)) => render_map(h, t),
                    _ => Value::Null,
                },
            );
            if let (Some(d), Some(h), Some(t)) = (cli.precision, &r.holonomy, &trans) {
                out.insert("holonomy_numeric".into(), numeric_map(h, t, d));
            }
            out.insert("period".into(), json!(r.period));
            out.insert(
                "first_integrals".into(),
                json!(r.first_integrals.iter().map(|f| f.render(&names)).collect::<Vec<_>>()),
            );
            out.insert(
                "flag_checks".into(),
                match &r.flag_checks {
                    Some(f) => json!({
                        "interior_product_vanishes": f.interior_product_vanishes,
                        "integrable": f.integrable,
                        "kupka": f.kupka,
                    }),
                    None => Value::Null,
                },
            );
            out.insert("verdict".into(), json!(r.verdict.to_string()));
            out.insert("notes".into(), json!(r.notes));
        }
        Command::Holonomy { input, axis } => {
            let (spec, x, names) = field_input(input, stdin, order)?;
            if x.dim() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, found: x.dim() }.into());
            }
            let eig = eigen_data(&x)?;
            let star = condition_star(&eig)?;
            let a = match axis {
                Some(n) => axis_index(n, &names)?,
                None => star
                    .isolated_index
                    .ok_or_else(|| Error::NotStarGerm("no isolated eigenvalue".into()))?,
            };
            let h = holonomy_generator(&x, a, order)?;
            let trans = transverse_names(&names, a);
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert(
                "eigenvalues".into(),
                json!(eig.eigenvalues.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
            );
            out.insert("condition_star".into(), star_json(&star, &names));
            out.insert("distinguished_axis".into(), json!(names[a]));
            out.insert("holonomy".into(), render_map(&h, &trans));
            if let Some(d) = cli.precision {
                out.insert("holonomy_numeric".into(), numeric_map(&h, &trans, d));
            }
        }
        Command::Blowup { input, chart, axis, divide } => {
            let chart: Chart = chart.parse()?;
            let text = read_input(input, stdin)?;
            let spec = parse_germ(&text)?;
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert("chart".into(), json!(chart.to_string()));
            let ratio_name = match chart {
                Chart::Tx => "t",
                Chart::Sy => "s",
            };
            match &spec {
                GermSpec::Map(_) => {
                    let (g, names) = to_map(&spec, order)?;
                    let b = blowup_diffeo(&g, chart, order)?;
                    let new_names = [ratio_name, names[chart.retained()]];
                    out.insert("coordinates".into(), json!(new_names));
                    out.insert("result".into(), render_map(&b, &new_names));
                    if let Some(d) = cli.precision {
                        out.insert("result_numeric".into(), numeric_map(&b, &new_names, d));
                    }
                }
                _ => {
                    let (x, names) = to_field(&spec, order)?;
                    let a = axis_index(axis, &names)?;
                    let y = blowup_vector_field_axis(&x, a, chart, order, *divide)?;
                    let trans = transverse_names(&names, a);
                    let mut new_names = names.clone();
                    let slots: Vec<usize> = (0..3).filter(|&k| k != a).collect();
                    new_names[slots[0]] = ratio_name;
                    new_names[slots[1]] = trans[chart.retained()];
                    out.insert("coordinates".into(), json!(new_names));
                    out.insert("result".into(), json!(y.render(&new_names)));
                }
            }
        }
        Command::Exp(input) => {
            let (spec, x, names) = field_input(input, stdin, order)?;
            let g = exp_time_one(&x, order)?;
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert("result".into(), render_map(&g, &names));
            if let Some(d) = cli.precision {
                out.insert("result_numeric".into(), numeric_map(&g, &names, d));
            }
        }
        Command::Log(input) => {
            let (spec, g, names) = map_input(input, stdin, order)?;
            let v = infinitesimal_generator(&g, order)?;
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert("result".into(), json!(v.render(&names)));
        }
        Command::Period(input) => {
            let (spec, g, _) = map_input(input, stdin, order)?;
            let g = g.with_order(order);
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert("pmax".into(), json!(cli.pmax));
            out.insert("period".into(), json!(formal_period(&g, cli.pmax)));
        }
        Command::Orbit { input, point, radius, cap } => {
            let (spec, g, _) = map_input(input, stdin, order)?;
            let start = parse_point(point)?;
            let r = parse_rational(radius)?;
            let g = g.with_order(order);
            let c = orbit_cardinality(&g, &start, &r, *cap)?;
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert(
                "point".into(),
                json!(start.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            );
            out.insert("radius".into(), json!(r.to_string()));
            out.insert("cap".into(), json!(cap));
            out.insert("count".into(), json!(c.count));
            out.insert("cap_reached".into(), json!(c.escaped));
        }
        Command::Euclid { p, q } => {
            let (p, q) = (exponents(p)?, exponents(q)?);
            out.insert("p".into(), json!(p.entries()));
            out.insert("q".into(), json!(q.entries()));
            let result = match pure_meromorphic_combination(&p, &q)? {
                Combination::NotTransverse => json!("not_transverse"),
                Combination::Pure { w, a, b } => json!({ "w": w.entries(), "a": a, "b": b }),
            };
            out.insert("result".into(), result);
        }
        Command::Flagcheck { input, form, axis } => {
            let (spec, x, names) = field_input(input, stdin, order)?;
            if x.dim() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, found: x.dim() }.into());
            }
            let a = match axis {
                Some(n) => axis_index(n, &names)?,
                None => {
                    let star = condition_star(&eigen_data(&x)?)?;
                    star.isolated_index.unwrap_or(2)
                }
            };
            let w = match form {
                Some(f) => {
                    let fs = parse_germ(f)?;
                    let GermSpec::Map(items) = &fs else {
                        return Err(Error::InvalidArgument("one-form must be `(A, B, C)`".into()).into());
                    };
                    if items.len() != 3 {
                        return Err(Error::DimensionMismatch { expected: 3, found: items.len() }.into());
                    }
                    let o = order.max(fs.degree_bound());
                    let c = items
                        .iter()
                        .map(|e| parser::eval_expr(e, &names, o))
                        .collect::<Result<Vec<_>>>()?;
                    OneFormGerm::new([c[0].clone(), c[1].clone(), c[2].clone()])?
                }
                None => radial_flag_form(&eigen_data(&x)?.eigenvalues, a, x.order())?,
            };
            let ip = interior_product(&x, &w)?;
            out.insert("input".into(), json!(spec.to_string()));
            out.insert("order".into(), json!(order));
            out.insert(
                "form".into(),
                json!(w.coefficients().iter().map(|c| c.render(&names)).collect::<Vec<_>>()),
            );
            out.insert("axis".into(), json!(names[a]));
            out.insert("interior_product".into(), json!(ip.render(&names)));
            out.insert("interior_product_vanishes".into(), json!(ip.is_zero()));
            out.insert("integrable".into(), json!(frobenius_check(&w)));
            out.insert("kupka".into(), json!(kupka_nonvanishing(&w, a)));
        }
    }
    Ok(Value::Object(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        let mut argv = vec!["holofol"];
        argv.extend_from_slice(args);
        run_with_args(argv, &mut std::io::empty())
    }

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn period_of_translation_is_none() {
        let o = call(&["period", "--pmax", "20", "(x + y^2, y)"]);
        assert_eq!(o.code, 0);
        assert_eq!(json_of(&o)["period"], Value::Null);
    }

    #[test]
    fn euclid_reports() {
        let o = call(&["euclid", "--p", "2,4", "--q", "1,2"]);
        assert_eq!(json_of(&o)["result"], json!("not_transverse"));
        let o = call(&["euclid", "--p", "3,2", "--q", "1,2"]);
        assert_eq!(json_of(&o)["result"]["w"], json!([-1, 2]));
    }

    #[test]
    fn exit_codes() {
        let o = call(&["holonomy", "x + * y"]);
        assert_eq!(o.code, 1);
        let v = json_of(&o);
        assert_eq!(v["error"]["kind"], json!("SyntaxError"));
        assert_eq!(v["error"]["column"], json!(5));
        assert_eq!(call(&["frobnicate"]).code, 2);
        assert_eq!(call(&["euclid", "--p", "a", "--q", "1"]).code, 2);
    }

    #[test]
    fn stdin_input() {
        let mut src = "(x + y^2, y)".as_bytes();
        let o = run_with_args(["holofol", "period", "--pmax", "3"], &mut src);
        assert_eq!(json_of(&o)["input"], json!("(x + y^2, y)"));
    }

    #[test]
    fn text_format() {
        let o = call(&["period", "--format", "text", "--pmax", "5", "(x, y)"]);
        assert!(o.stdout.contains("period: 1\n"), "{}", o.stdout);
    }

    #[test]
    fn blowup_report() {
        let o = call(&["blowup", "--order", "5", "(x + y^2, y)"]);
        assert_eq!(json_of(&o)["result"], json!(["t - t^3*x", "x + t^2*x^2"]));
    }
}
