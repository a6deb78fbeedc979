//! `vogelkit`: command-line access to the universal formulas, tables and checks.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use vogelkit_core::adjoint::{self, Decomposition};
use vogelkit_core::algebra::AlgebraInstance;
use vogelkit_core::contract::Contractor;
use vogelkit_core::diagram::build;
use vogelkit_core::error::{EvalError, EvalResult};
use vogelkit_core::kontsevich;
use vogelkit_core::lambda::{self, VogelPoint};
use vogelkit_core::rational::{fmt_q, parse_q};
use vogelkit_core::relations::{pi_adj, reduce_bubbles};
use vogelkit_core::verify::{self, CheckResult};
use vogelkit_core::{registry, Family};

#[derive(Parser, Debug)]
#[command(name = "vogelkit", version, about = "Exact universal Lie algebra formulas in Vogel's parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Semantics::Lambda)]
    semantics: Semantics,
    /// Largest dense tensor any explicit contraction may allocate.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    max_tensor_entries: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Semantics {
    /// Purely diagrammatic: no bubble factors, character formulas.
    Lambda,
    /// Weight-system evaluation: bubbles contribute 2t, explicit contraction.
    Ws,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Target {
    /// Registry name such as e8, g2, sl(5), so(7), sp(6).
    #[arg(long)]
    algebra: Option<String>,
    /// Explicit Vogel parameters, e.g. -2,2,5 or -2,10/3,8/3.
    #[arg(long, allow_hyphen_values = true)]
    abc: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vogel parameters and (t, σ, ω).
    Params(Target),
    /// Universal dimension.
    Dim(Target),
    /// Casimir generating function and higher Casimir eigenvalues.
    Casimir {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Adjoint values of wheel products as polynomials in (t, σ, ω).
    Wheels {
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Kontsevich series of the (2, n) torus knot.
    Torus {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Decomposition of the tensor square of the adjoint representation.
    Decomp(Target),
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

struct Resolved {
    label: String,
    family: Option<(Family, u32)>,
    point: VogelPoint,
}

fn resolve(t: &Target) -> EvalResult<Resolved> {
    if let Some(name) = &t.algebra {
        let p = registry().lookup(name)?;
        return Ok(Resolved { label: p.label, family: p.family, point: p.point });
    }
    let raw = t.abc.as_deref().unwrap_or_default();
    let parts: Vec<_> = raw.split(',').map(|s| parse_q(s.trim())).collect();
    match parts.as_slice() {
        [Some(a), Some(b), Some(c)] => Ok(Resolved { label: raw.to_string(), family: None, point: VogelPoint::new(a.clone(), b.clone(), c.clone()) }),
        _ => Err(EvalError::Unsupported(format!("--abc expects three rationals a,b,c, got `{raw}`"))),
    }
}

/// Named tables of records; every value is produced by a library call.
struct Report {
    sections: Vec<(&'static str, Vec<Map<String, Value>>)>,
}

fn record(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn q(x: &vogelkit_core::Q) -> Value {
    Value::String(fmt_q(x))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn columns(rows: &[Map<String, Value>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

impl Report {
    fn single(name: &'static str, rows: Vec<Map<String, Value>>) -> Self {
        Report { sections: vec![(name, rows)] }
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                let value = if let [(_, rows)] = self.sections.as_slice() {
                    match rows.as_slice() {
                        [one] => Value::Object(one.clone()),
                        _ => Value::Array(rows.iter().cloned().map(Value::Object).collect()),
                    }
                } else {
                    let mut m = Map::new();
                    for (name, rows) in &self.sections {
                        m.insert(name.to_string(), Value::Array(rows.iter().cloned().map(Value::Object).collect()));
                    }
                    Value::Object(m)
                };
                out.push_str(&serde_json::to_string_pretty(&value).expect("json values serialize"));
                out.push('\n');
            }
            Format::Csv => {
                for (i, (name, rows)) in self.sections.iter().enumerate() {
                    if self.sections.len() > 1 {
                        if i > 0 {
                            out.push('\n');
                        }
                        out.push_str(&format!("# {name}\n"));
                    }
                    let cols = columns(rows);
                    out.push_str(&cols.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                    for r in rows {
                        let line: Vec<String> = cols.iter().map(|c| csv_field(&r.get(c).map(cell).unwrap_or_default())).collect();
                        out.push_str(&line.join(","));
                        out.push('\n');
                    }
                }
            }
            Format::Text => {
                for (i, (name, rows)) in self.sections.iter().enumerate() {
                    if self.sections.len() > 1 {
                        if i > 0 {
                            out.push('\n');
                        }
                        out.push_str(&format!("[{name}]\n"));
                    }
                    let cols = columns(rows);
                    let text: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()).collect();
                    let widths: Vec<usize> = cols.iter().enumerate().map(|(j, c)| text.iter().map(|r| r[j].chars().count()).chain([c.chars().count()]).max().unwrap_or(0)).collect();
                    let line = |cells: &[String]| {
                        let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                        padded.join("  ").trim_end().to_string() + "\n"
                    };
                    out.push_str(&line(&cols));
                    for r in &text {
                        out.push_str(&line(r));
                    }
                }
            }
        }
        out
    }
}

fn params(t: &Target) -> EvalResult<Report> {
    let r = resolve(t)?;
    let [tt, s, w] = r.point.tsw();
    Ok(Report::single(
        "params",
        vec![record(vec![
            ("algebra", json!(r.label)),
            ("alpha", q(&r.point.alpha)),
            ("beta", q(&r.point.beta)),
            ("gamma", q(&r.point.gamma)),
            ("t", q(&tt)),
            ("sigma", q(&s)),
            ("omega", q(&w)),
        ])],
    ))
}

fn algebra_instance(r: &Resolved) -> EvalResult<AlgebraInstance> {
    match r.family {
        Some((f, n)) => AlgebraInstance::new(f, n),
        None => Err(EvalError::Unsupported(format!("{} has no explicit structure constants; use a classical algebra", r.label))),
    }
}

fn dim(t: &Target, cli: &Cli) -> EvalResult<Report> {
    let r = resolve(t)?;
    let value = match cli.semantics {
        Semantics::Lambda => lambda::universal_dim(&r.point)?,
        Semantics::Ws => {
            let alg = algebra_instance(&r)?;
            Contractor::new(&alg)?.with_budget(cli.max_tensor_entries).eval(&build::circle())?
        }
    };
    Ok(Report::single("dim", vec![record(vec![("algebra", json!(r.label)), ("dim", q(&value))])]))
}

fn casimir(t: &Target, order: usize) -> EvalResult<Report> {
    let r = resolve(t)?;
    let series = lambda::casimir_series(&r.point, order)?;
    let rows = (0..=order)
        .map(|k| {
            let cp = if k == 0 { Value::Null } else { q(&lambda::casimir_cp(k, &r.point)) };
            record(vec![("k", json!(k)), ("series", q(series.coeff(k))), ("casimir", cp)])
        })
        .collect();
    Ok(Report::single("casimir", rows))
}

fn wheels(max: usize) -> EvalResult<Report> {
    let rows = verify::wheel_table(max)?
        .into_iter()
        .map(|(label, p)| record(vec![("wheel_product", json!(label)), ("polynomial", Value::String(p.to_json().to_string()))]))
        .collect();
    Ok(Report::single("wheels", rows))
}

fn torus(order: usize, semantics: Semantics) -> EvalResult<Report> {
    let series = kontsevich::torus_ki(order)?;
    let deframed = kontsevich::deframe(&series.terms);
    let series_rows = series
        .terms
        .iter()
        .map(|t| {
            let kept = deframed.iter().any(|d| d.name == t.name);
            record(vec![("term", json!(t.name)), ("degree", json!(t.degree)), ("coefficient", json!(t.coeff.display("n"))), ("deframed", json!(kept))])
        })
        .collect();
    let adjoint_rows = match semantics {
        Semantics::Ws => {
            let report = verify::torus_adjoint_report(&[1, 3, 5])?;
            report
                .pipeline
                .iter()
                .map(|(k, p)| {
                    let stated = report.stated.get(k).map(|x| json!(x.display("n"))).unwrap_or(Value::Null);
                    record(vec![
                        ("power", json!(format!("t^{k}"))),
                        ("coefficient", json!(p.display("n"))),
                        ("stated", stated),
                        ("sl3_consistent", json!(report.consistent)),
                    ])
                })
                .collect()
        }
        Semantics::Lambda => deframed
            .iter()
            .map(|t| {
                let (reduced, sign, bubbles) = reduce_bubbles(&pi_adj(&t.diagram));
                record(vec![
                    ("term", json!(t.name)),
                    ("bubbles", json!(bubbles)),
                    ("sign", json!(sign)),
                    ("reduced_vertices", json!(reduced.vertices.len())),
                    ("reduced_circles", json!(reduced.circles)),
                ])
            })
            .collect(),
    };
    Ok(Report { sections: vec![("series", series_rows), ("adjoint", adjoint_rows)] })
}

fn decomp(t: &Target, budget: usize) -> EvalResult<Report> {
    let r = resolve(t)?;
    let cubic = match r.family {
        Some(_) => match adjoint::cubic_relation_check(&algebra_instance(&r)?, budget) {
            Ok(c) => json!(c.pass()),
            Err(EvalError::Resource { .. }) => Value::Null,
            Err(e) => return Err(e),
        },
        None => Value::Null,
    };
    let row = match adjoint::decomposition_dims(&r.point)? {
        Decomposition::Split(d) => record(vec![
            ("algebra", json!(r.label)),
            ("X0", q(&d.x0)),
            ("X1", q(&d.x1)),
            ("X2", q(&d.x2)),
            ("Y", q(&d.y)),
            ("cubic_check", cubic),
        ]),
        Decomposition::Indecomposable => record(vec![
            ("algebra", json!(r.label)),
            ("X0", Value::Null),
            ("X1", Value::Null),
            ("X2", Value::Null),
            ("Y", Value::Null),
            ("cubic_check", cubic),
            ("indecomposable", json!(true)),
        ]),
    };
    Ok(Report::single("decomp", vec![row]))
}

fn check_record(c: &CheckResult) -> Map<String, Value> {
    record(vec![("suite", json!(c.suite)), ("check", json!(c.name)), ("pass", json!(c.pass)), ("detail", json!(c.detail))])
}

fn configure_threads() {
    if let Some(n) = std::env::var("VOGELKIT_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        // only fails if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: &Cli) -> EvalResult<(Report, Vec<CheckResult>)> {
    let report = match &cli.command {
        Command::Params(t) => params(t)?,
        Command::Dim(t) => dim(t, cli)?,
        Command::Casimir { target, order } => casimir(target, *order)?,
        Command::Wheels { max } => wheels(*max)?,
        Command::Torus { order } => torus(*order, cli.semantics)?,
        Command::Decomp(t) => decomp(t, cli.max_tensor_entries)?,
        Command::Verify { suite } => {
            let results = verify::run_suite(suite)?;
            let failures: Vec<CheckResult> = results.iter().filter(|c| !c.pass).cloned().collect();
            return Ok((Report::single("verify", results.iter().map(check_record).collect()), failures));
        }
    };
    Ok((report, Vec::new()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok((report, failures)) => {
            print!("{}", report.render(cli.format));
            if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                let list: Vec<Value> = failures.iter().map(CheckResult::to_json).collect();
                eprintln!("{}", json!({ "failures": list }));
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
