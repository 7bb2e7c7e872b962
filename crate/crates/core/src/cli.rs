//! Command-line frontend. Reports are JSON with rationals as `"p/q"` strings.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false or infeasible,
//! 2 input or module error (one line on stderr).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{
    build_case5_array, classify_case, consistent_qsd_params, qsd_m_report, search_arrays,
    ClassifyError, QsdParams, SearchBounds,
};
use crate::dbrg::{
    dbrg_capacity, dbrg_effective_resistance, derive_counts, detect_dbrg, detect_dbrg_structure,
    equilibrium_arrays, group_inverse_row, m_property_array, recover_array,
    validate, BiregularArray, DbrgEquilibrium, DbrgError, Side,
};
use crate::network::{Network, NetworkError};
use crate::potential::{
    all_equilibria, effective_resistance, group_inverse, m_property_general, solve_equilibrium,
    PotentialError,
};
use crate::rational::{self, Rational};

/// Graphs larger than this need `--force` for `verify`.
pub const VERIFY_CAP: usize = 5000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Dbrg(#[from] DbrgError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Parser, Debug)]
#[command(name = "biregular", version, about = "Equilibrium measures, Green functions and the M-property on networks")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Add display-only decimal fields with this many places.
    #[arg(long, global = true, value_name = "N")]
    decimal: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct ArrayArg {
    /// Double intersection array JSON.
    #[arg(long, value_name = "FILE")]
    array: PathBuf,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge list: one `u v [conductance]` per line.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Double intersection array JSON.
    #[arg(long, value_name = "FILE")]
    array: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Feasibility conditions of an array.
    Validate(ArrayArg),
    /// Sphere and ball sizes of an array.
    Derive(ArrayArg),
    /// Equilibrium measures of a graph, or equilibrium arrays of an array.
    Equil {
        #[command(flatten)]
        source: Source,
        /// Only this base vertex (graph input).
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Group inverse of the Laplacian.
    Green {
        #[command(flatten)]
        source: Source,
        /// Stable set, 0 or 1 (array input; default both).
        #[arg(long)]
        side: Option<usize>,
    },
    /// Effective resistances.
    Resist {
        #[command(flatten)]
        source: Source,
        /// Vertex pair `x,y` (graph input; repeatable; default all pairs).
        #[arg(long = "pair", value_name = "X,Y")]
        pairs: Vec<String>,
        /// Stable set (array input; default both).
        #[arg(long)]
        side: Option<usize>,
        /// Single distance (array input; default all).
        #[arg(long)]
        distance: Option<usize>,
    },
    /// M-property verdict.
    CheckM {
        #[command(flatten)]
        source: Source,
    },
    /// Diameter case of an array.
    Classify(ArrayArg),
    /// Array from equilibrium arrays and sphere sizes.
    Recover {
        /// JSON `{"q0": [...], "q1": [...], "m0": [...], "m1": [...]}`.
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Distance-biregularity test.
    Detect {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
    },
    /// Closed-form group inverse against the exact dense oracle.
    Verify {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        /// Allow graphs above the size cap.
        #[arg(long)]
        force: bool,
    },
    /// Bounded sweep over arrays, as JSON lines.
    Search {
        #[arg(long, default_value_t = 5)]
        max_k: u64,
        #[arg(long, default_value_t = 8)]
        max_d: usize,
        #[arg(long, default_value_t = 60)]
        max_n: u64,
        /// Only arrays with the M-property.
        #[arg(long)]
        m_only: bool,
    },
    /// Quasi-symmetric design condition.
    Qsd {
        /// `r,k,lambda,y`
        #[arg(long, value_name = "R,K,LAMBDA,Y", conflicts_with_all = ["max_r", "max_k"])]
        params: Option<String>,
        #[arg(long)]
        max_r: Option<u64>,
        #[arg(long)]
        max_k: Option<u64>,
    },
}

struct Outcome {
    body: String,
    code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: 0 }
    }

    fn verdict(body: String, verdict: bool) -> Self {
        Outcome {
            body,
            code: if verdict { 0 } else { 1 },
        }
    }
}

/// Parses `argv` (program name first), runs the verb and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
    };
    let result = dispatch(&cli).and_then(|out| {
        emit(cli.out.as_deref(), &out.body)?;
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            2
        }
    }
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graph(path: &Path) -> Result<Network, CliError> {
    Ok(Network::parse_edge_list(&read(path)?)?)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_side(side: Option<usize>) -> Result<Vec<Side>, CliError> {
    match side {
        None => Ok(Side::BOTH.to_vec()),
        Some(i) => Side::from_index(i)
            .map(|s| vec![s])
            .ok_or_else(|| CliError::Input(format!("--side must be 0 or 1, got {i}"))),
    }
}

fn strs(values: &[Rational]) -> Vec<String> {
    values.iter().map(rational::format).collect()
}

/// Keys whose string values are names, never numbers.
const NAME_KEYS: &[&str] = &["vertices", "base_vertex", "x", "y", "row", "col", "base", "neighbor", "subject"];

fn decimal_of(v: &Value, places: usize) -> Option<Value> {
    match v {
        Value::String(s) => rational::parse(s).ok().map(|q| Value::String(rational::to_decimal(&q, places))),
        Value::Array(items) if !items.is_empty() => items
            .iter()
            .map(|i| decimal_of(i, places))
            .collect::<Option<Vec<_>>>()
            .map(Value::Array),
        _ => None,
    }
}

/// Adds a `<key>_decimal` sibling to every rational-valued field.
fn add_decimals(v: &mut Value, places: usize) {
    match v {
        Value::Object(map) => {
            let mut extra = Vec::new();
            for (key, val) in map.iter_mut() {
                if NAME_KEYS.contains(&key.as_str()) {
                    continue;
                }
                match decimal_of(val, places) {
                    Some(d) => extra.push((format!("{key}_decimal"), d)),
                    None => add_decimals(val, places),
                }
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(|i| add_decimals(i, places)),
        _ => {}
    }
}

fn render(cli: &Cli, mut v: Value) -> String {
    if let Some(places) = cli.decimal {
        add_decimals(&mut v, places);
    }
    serde_json::to_string_pretty(&v).expect("report serializes")
}

fn render_line(cli: &Cli, mut v: Value) -> String {
    if let Some(places) = cli.decimal {
        add_decimals(&mut v, places);
    }
    serde_json::to_string(&v).expect("report serializes")
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.verb {
        Verb::Validate(arg) => {
            let a: BiregularArray = read_json(&arg.array)?;
            let report = validate(&a);
            Ok(Outcome::verdict(render(cli, to_value(&report)), report.passed))
        }
        Verb::Derive(arg) => {
            let a: BiregularArray = read_json(&arg.array)?;
            Ok(Outcome::ok(render(cli, to_value(&derive_counts(&a)?))))
        }
        Verb::Equil { source, vertex } => equil(cli, source, vertex.as_deref()),
        Verb::Green { source, side } => green(cli, source, *side),
        Verb::Resist {
            source,
            pairs,
            side,
            distance,
        } => resist(cli, source, pairs, *side, *distance),
        Verb::CheckM { source } => {
            let report = match (&source.graph, &source.array) {
                (Some(g), _) => m_property_general(&read_graph(g)?),
                (_, Some(a)) => m_property_array(&read_json(a)?)?,
                _ => unreachable!("clap enforces one source"),
            };
            Ok(Outcome::verdict(render(cli, to_value(&report)), report.verdict))
        }
        Verb::Classify(arg) => {
            let a: BiregularArray = read_json(&arg.array)?;
            let case = classify_case(&a)?;
            Ok(Outcome::ok(render(cli, json!({ "array": a, "case": case }))))
        }
        Verb::Recover { input } => recover(cli, input),
        Verb::Detect { graph } => match detect_dbrg(&read_graph(graph)?) {
            Some(a) => Ok(Outcome::ok(render(cli, to_value(&a)))),
            None => Ok(Outcome::verdict("not DBRG".into(), false)),
        },
        Verb::Verify { graph, force } => verify(graph, *force),
        Verb::Search {
            max_k,
            max_d,
            max_n,
            m_only,
        } => {
            if *max_k == 0 || *max_d == 0 || *max_n == 0 {
                return Err(CliError::Input("search bounds must be positive".into()));
            }
            let found = search_arrays(SearchBounds {
                max_k: *max_k,
                max_d: *max_d,
                max_n: *max_n,
            })?;
            let lines: Vec<String> = found
                .iter()
                .filter(|r| !m_only || r.report.verdict)
                .map(|r| r.to_json_line())
                .collect();
            Ok(Outcome::ok(lines.join("\n")))
        }
        Verb::Qsd { params, max_r, max_k } => qsd(cli, params.as_deref(), *max_r, *max_k),
    }
}

fn equil(cli: &Cli, source: &Source, vertex: Option<&str>) -> Result<Outcome, CliError> {
    if let Some(g) = &source.graph {
        let net = read_graph(g)?;
        let measures = match vertex {
            Some(id) => vec![solve_equilibrium(&net, net.index_of(id)?)?],
            None => all_equilibria(&net)?,
        };
        return Ok(Outcome::ok(render(
            cli,
            json!({ "vertices": net.ids(), "measures": measures }),
        )));
    }
    if vertex.is_some() {
        return Err(CliError::Input("--vertex needs --graph".into()));
    }
    let a: BiregularArray = read_json(source.array.as_ref().expect("clap enforces one source"))?;
    let e = equilibrium_arrays(&a)?;
    let cap0 = dbrg_capacity(&a, Side::Zero)?;
    let cap1 = dbrg_capacity(&a, Side::One)?;
    Ok(Outcome::ok(render(
        cli,
        json!({
            "q0": strs(&e.q0),
            "q1": strs(&e.q1),
            "capacity0": rational::format(&cap0),
            "capacity1": rational::format(&cap1),
        }),
    )))
}

fn green(cli: &Cli, source: &Source, side: Option<usize>) -> Result<Outcome, CliError> {
    if let Some(g) = &source.graph {
        if side.is_some() {
            return Err(CliError::Input("--side needs --array".into()));
        }
        let net = read_graph(g)?;
        let m = group_inverse(&net);
        return Ok(Outcome::ok(render(cli, json!({ "vertices": net.ids(), "matrix": m }))));
    }
    let a: BiregularArray = read_json(source.array.as_ref().expect("clap enforces one source"))?;
    let mut rows = Vec::new();
    for s in parse_side(side)? {
        rows.push(json!({ "side": s.index(), "entries": strs(&group_inverse_row(&a, s)?) }));
    }
    Ok(Outcome::ok(render(cli, json!({ "sides": rows }))))
}

fn resist(
    cli: &Cli,
    source: &Source,
    pairs: &[String],
    side: Option<usize>,
    distance: Option<usize>,
) -> Result<Outcome, CliError> {
    if let Some(g) = &source.graph {
        if side.is_some() || distance.is_some() {
            return Err(CliError::Input("--side and --distance need --array".into()));
        }
        let net = read_graph(g)?;
        let mut todo = Vec::new();
        if pairs.is_empty() {
            for x in 0..net.order() {
                for y in x + 1..net.order() {
                    todo.push((x, y));
                }
            }
        } else {
            for p in pairs {
                let (x, y) = p
                    .split_once(',')
                    .ok_or_else(|| CliError::Input(format!("--pair expects X,Y, got {p:?}")))?;
                todo.push((net.index_of(x.trim())?, net.index_of(y.trim())?));
            }
        }
        let mut out = Vec::new();
        for (x, y) in todo {
            let value = effective_resistance(&net, x, y)?;
            out.push(json!({ "x": net.id(x), "y": net.id(y), "value": rational::format(&value) }));
        }
        return Ok(Outcome::ok(render(cli, json!({ "resistances": out }))));
    }
    if !pairs.is_empty() {
        return Err(CliError::Input("--pair needs --graph".into()));
    }
    let a: BiregularArray = read_json(source.array.as_ref().expect("clap enforces one source"))?;
    let mut out = Vec::new();
    for s in parse_side(side)? {
        let ds: Vec<usize> = match distance {
            Some(d) => vec![d],
            None => (1..=a.diameter(s)).collect(),
        };
        for d in ds {
            let value = dbrg_effective_resistance(&a, s, d)?;
            out.push(json!({ "side": s.index(), "distance": d, "value": rational::format(&value) }));
        }
    }
    Ok(Outcome::ok(render(cli, json!({ "resistances": out }))))
}

#[derive(Deserialize)]
struct RecoverInput {
    #[serde(with = "rational::serde_vec")]
    q0: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    q1: Vec<Rational>,
    m0: Vec<u64>,
    m1: Vec<u64>,
}

fn recover(cli: &Cli, input: &Path) -> Result<Outcome, CliError> {
    let inp: RecoverInput = read_json(input)?;
    let e = DbrgEquilibrium { q0: inp.q0, q1: inp.q1 };
    let a = recover_array(&e, [&inp.m0, &inp.m1])?;
    Ok(Outcome::ok(render(cli, to_value(&a))))
}

fn verify(graph: &Path, force: bool) -> Result<Outcome, CliError> {
    let net = read_graph(graph)?;
    if net.order() > VERIFY_CAP && !force {
        return Err(CliError::Input(format!(
            "{} vertices exceeds the cap of {VERIFY_CAP}; pass --force",
            net.order()
        )));
    }
    let s = detect_dbrg_structure(&net)
        .ok_or_else(|| CliError::Input("graph is not distance-biregular".into()))?;
    let oracle = group_inverse(&net);
    let rows = [
        group_inverse_row(&s.array, Side::Zero)?,
        group_inverse_row(&s.array, Side::One)?,
    ];
    let n = net.order();
    for x in 0..n {
        for y in 0..n {
            let d = s.distances.get(x, y);
            let closed = &rows[s.side(y).index()][d];
            let exact = oracle.get(x, y);
            if closed != exact {
                let body = format!(
                    "{}\nmismatch at ({}, {}), distance {d}: closed form {}, oracle {}",
                    s.array,
                    net.id(x),
                    net.id(y),
                    rational::format(closed),
                    rational::format(exact)
                );
                return Ok(Outcome::verdict(body, false));
            }
        }
    }
    Ok(Outcome::ok(format!("{}\nall {} entries match", s.array, n * n)))
}

fn parse_params(text: &str) -> Result<QsdParams, CliError> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("--params: {e}")))?;
    match parts[..] {
        [r, k, lambda, y] => Ok(QsdParams { r, k, lambda, y }),
        _ => Err(CliError::Input(format!("--params expects R,K,LAMBDA,Y, got {text:?}"))),
    }
}

fn qsd_record(p: &QsdParams) -> Result<Value, CliError> {
    let report = qsd_m_report(p)?;
    let raw = p.raw_array()?;
    // null when kλ/y ≥ r, so that the second sequence never closes
    let array_verdict = match m_property_array(&raw) {
        Ok(rep) => Value::Bool(rep.verdict),
        Err(DbrgError::NegativeB { .. } | DbrgError::ParityViolation { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "params": p,
        "m_property": report.verdict,
        "report": report,
        "array": raw,
        "feasible": build_case5_array(p).is_ok(),
        "array_m_property": array_verdict,
    }))
}

fn qsd(cli: &Cli, params: Option<&str>, max_r: Option<u64>, max_k: Option<u64>) -> Result<Outcome, CliError> {
    if let Some(text) = params {
        let p = parse_params(text)?;
        let rec = qsd_record(&p)?;
        let verdict = rec["m_property"].as_bool().unwrap_or(false);
        return Ok(Outcome::verdict(render(cli, rec), verdict));
    }
    let (Some(max_r), Some(max_k)) = (max_r, max_k) else {
        return Err(CliError::Input("qsd needs --params or both --max-r and --max-k".into()));
    };
    let mut lines = Vec::new();
    for p in consistent_qsd_params(max_r, max_k) {
        lines.push(render_line(cli, qsd_record(&p)?));
    }
    Ok(Outcome::ok(lines.join("\n")))
}
