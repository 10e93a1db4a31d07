//! `pathcalc`: integrals of finite sums of characters, Gauss norms, unit
//! decompositions, path integrals and the verification suites.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 the input did not
//! parse, 3 a domain precondition was violated.

use std::io::Read;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathcalc::calculus::{big_n, integrate_cube_function, integrate_interval, integrate_simplex, Form, PFunction};
use pathcalc::characters::{Character, Reg, Registry};
use pathcalc::funcring::{Domain, PolyFunction};
use pathcalc::linalg::Q;
use pathcalc::localfield::{parse_rational, Field, FieldConfig, Scalar};
use pathcalc::paths::{self, tate, Chain, Laurent, Path, Target, TargetForm, Verdict};
use pathcalc::periods::Period;
use pathcalc::polytope::Polytope;
use pathcalc::subdivision::{self, Kind};
use pathcalc::suites::{self, Grid, SuiteParams, SuiteReport};
use pathcalc::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "pathcalc", version, about = "Integration of characters on polytopes and p-adic path integrals")]
struct Cli {
    /// The residue characteristic p (the base field is Q_p).
    #[arg(long = "p", global = true, default_value_t = 5)]
    p: u64,
    /// Absolute p-adic precision M.
    #[arg(long, global = true, default_value_t = 40)]
    precision: u32,
    /// Generator registry file (JSON); defaults to eps, p, q, 1+a, mu.
    #[arg(long, global = true, value_name = "FILE")]
    registry: Option<std::path::PathBuf>,
    /// Emit one JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a function over a polytope, or a form over a path or chain.
    Integrate(IntegrateArgs),
    /// Gauss-norm exponent e (‖f‖ = p^{-e}) of a function.
    Norm(FunctionArgs),
    /// Unit decomposition f = a·x·(1+g) with ‖g‖ < 1.
    Decompose(FunctionArgs),
    /// Evaluate a function (or a path) at a point.
    Evaluate(EvaluateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print one of the period tables.
    Demo(DemoArgs),
    /// Residue theorem for one Laurent polynomial along a cycle.
    Residue(ResidueArgs),
    /// Cauchy–Goursat formula for one polynomial along a cycle around a.
    Cauchy(CauchyArgs),
    /// The Tate-curve period table (same as `demo tate-periods`).
    TateDemo(TateArgs),
    /// Check the subdivision homotopy identities in one dimension.
    SubdivisionCheck(SubdivisionArgs),
}

#[derive(Args, Debug)]
struct FunctionArgs {
    /// Domain: `interval`, `cube:n[:N]`, `simplex:n[:N]`, `box:lo,hi;..`.
    #[arg(long, default_value = "interval")]
    polytope: String,
    /// The function: `{char:coeff, ..}`, JSON, `@FILE` or `-` for stdin.
    #[arg(long = "fn", value_name = "FUNCTION")]
    function: String,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    /// Integrate over the interval [0, N] (the default domain).
    #[arg(long, conflicts_with_all = ["polytope", "path", "chain"])]
    interval: bool,
    /// Domain `cube:n` or `simplex:n` (side or dilation N = q_k − 1).
    #[arg(long)]
    polytope: Option<String>,
    /// The function to integrate (see `norm --help`).
    #[arg(long = "fn", value_name = "FUNCTION", required_unless_present_any = ["path", "chain"])]
    function: Option<String>,
    /// A path (JSON, `@FILE` or `-`) to integrate `--form` over.
    #[arg(long, conflicts_with = "chain")]
    path: Option<String>,
    /// A chain `[{weight, path}]` to integrate `--form` over.
    #[arg(long)]
    chain: Option<String>,
    /// Target form: `invariant`, a Laurent polynomial f (for f dT) or a form object.
    #[arg(long, default_value = "invariant")]
    form: String,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[command(flatten)]
    function: OptionalFunction,
    /// A path to evaluate instead of a function.
    #[arg(long)]
    path: Option<String>,
    /// Ambient coordinates of the point, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Args, Debug)]
struct OptionalFunction {
    #[arg(long, default_value = "interval")]
    polytope: String,
    #[arg(long = "fn", value_name = "FUNCTION", required_unless_present = "path")]
    function: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// residue, cauchy, goursat, stokes, ftc, fubini, simplex-welldef,
    /// subdivision, equivariance, gauss, inversion or tate.
    suite: String,
    /// Enumeration grid for the residue suite.
    #[arg(long, default_value = "small", value_parser = ["small", "full"])]
    grid: String,
    /// Number of random cases.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Dimension (n ≤ 3).
    #[arg(long)]
    n: Option<usize>,
    /// Cell kind: cubical/cube or simplicial/simplex.
    #[arg(long, alias = "domain")]
    kind: Option<String>,
    /// Random seed (printed with the report).
    #[arg(long, default_value_t = suites::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct DemoArgs {
    /// tate-periods, gm-cycles or obstruction.
    name: String,
    #[command(flatten)]
    tate: TateArgs,
    /// Multiple of γ₃ in the obstruction cycle (default: −2..2).
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
}

#[derive(Args, Debug)]
struct TateArgs {
    /// The parameter a with v(a) ≥ 1 (default p); 0 drops the (1+a) generator.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// The Tate parameter q with v(q) ≥ 1 (default p).
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args, Debug)]
struct ResidueArgs {
    /// The Laurent polynomial: `{"-1": 3, "2": 1}` or `[{exp, coeff}]`.
    #[arg(long = "f", value_name = "LAURENT")]
    f: String,
    /// Use the cycle ε^{a'/N}(t).
    #[arg(long = "a-prime", default_value_t = 1, allow_hyphen_values = true)]
    a_prime: i64,
    /// Use this closed path instead.
    #[arg(long)]
    path: Option<String>,
}

#[derive(Args, Debug)]
struct CauchyArgs {
    /// The polynomial f as a Laurent polynomial with exponents ≥ 0.
    #[arg(long = "f", value_name = "LAURENT")]
    f: String,
    /// The centre a.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// The order i.
    #[arg(long, default_value_t = 0)]
    order: u32,
    /// Use this closed path (default ε^{1/N}(t) + a).
    #[arg(long)]
    path: Option<String>,
}

#[derive(Args, Debug)]
struct SubdivisionArgs {
    /// cubical or simplicial.
    #[arg(long)]
    kind: String,
    /// Dimension n ≤ 3.
    #[arg(long)]
    n: usize,
    /// Also print the generator maps.
    #[arg(long)]
    maps: bool,
}

/// Why a command stopped.
enum Failure {
    /// The input could not be read (exit 2).
    Parse(String),
    /// A precondition of the computation failed (exit 3).
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

/// Errors raised while reading inputs: format problems are parse errors,
/// everything else is a violated precondition.
fn reading(e: Error) -> Failure {
    match e {
        Error::Domain(_) | Error::UnknownGenerator(_) | Error::InvalidRegistry(_) | Error::InvalidPolytope(_) => {
            Failure::Parse(e.to_string())
        }
        Error::Field(pathcalc::localfield::FieldError::Domain(m)) => Failure::Parse(m),
        other => Failure::Domain(other.to_string()),
    }
}

type Outcome = Result<bool, Failure>;

/// Text or NDJSON output.
struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, text: impl AsRef<str>, value: Value) {
        let line = if self.json { value.to_string() } else { text.as_ref().to_string() };
        if let Err(e) = writeln!(std::io::stdout(), "{line}") {
            // A closed pipe (e.g. `| head`) just ends the output.
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed writing to stdout: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    let result = setup(&cli).and_then(|(field, reg)| dispatch(&cli, &out, &field, &reg));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Parse(m)) => {
            report_error(&out, "parse", &m);
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            report_error(&out, "domain", &m);
            ExitCode::from(3)
        }
    }
}

fn report_error(out: &Out, kind: &str, message: &str) {
    if out.json {
        println!("{}", json!({"error": kind, "message": message}));
    } else {
        eprintln!("error ({kind}): {message}");
    }
}

fn setup(cli: &Cli) -> Result<(Field, Reg), Failure> {
    let field = FieldConfig::new(cli.p, cli.precision).map_err(|e| Failure::Domain(e.to_string()))?;
    let reg = match &cli.registry {
        Some(file) => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", file.display())))?;
            let value = parse_json(&text)?;
            Registry::from_json(&field, &value).map_err(reading)?
        }
        None => Registry::standard(&field)?,
    };
    Ok((field, reg))
}

fn dispatch(cli: &Cli, out: &Out, field: &Field, reg: &Reg) -> Outcome {
    match &cli.command {
        Command::Integrate(args) => integrate(out, reg, args),
        Command::Norm(args) => norm(out, reg, args),
        Command::Decompose(args) => decompose(out, reg, args),
        Command::Evaluate(args) => evaluate(out, reg, args),
        Command::Verify(args) => verify(out, reg, args),
        Command::Demo(args) => demo(out, field, reg, cli.registry.is_some(), args),
        Command::Residue(args) => residue(out, reg, args),
        Command::Cauchy(args) => cauchy(out, reg, args),
        Command::TateDemo(args) => tate_periods(out, field, reg, cli.registry.is_some(), args),
        Command::SubdivisionCheck(args) => subdivision_check(out, args),
    }
}

// ---------------------------------------------------------------- inputs

/// Reads an argument value: `-` is stdin, `@FILE` a file, anything else
/// the literal text.
fn payload(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Parse(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else if let Some(file) = arg.strip_prefix('@') {
        std::fs::read_to_string(file).map_err(|e| Failure::Parse(format!("cannot read {file}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Parse(format!("malformed JSON: {e}")))
}

/// True when the text is meant as JSON rather than the compact syntax.
fn looks_like_json(text: &str) -> bool {
    let t = text.trim_start();
    match t.chars().next() {
        Some('[') | Some('"') => true,
        Some('{') => matches!(t[1..].trim_start().chars().next(), Some('"') | Some('}')),
        _ => false,
    }
}

fn json_payload(arg: &str) -> Result<Value, Failure> {
    let text = payload(arg)?;
    if looks_like_json(&text) {
        parse_json(&text)
    } else {
        Ok(Value::String(text.trim().to_string()))
    }
}

/// Splits on commas outside braces.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// The compact function syntax `{char:coeff, char:coeff}`; characters use
/// the text form (`p^{-1}`, `eps^1/4*mu`, coordinates separated by `|`),
/// coefficients are rationals.
fn parse_compact_terms(reg: &Reg, text: &str) -> Result<Vec<(Character, Scalar)>, Failure> {
    let t = text.trim();
    let inner = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(t);
    let mut terms = Vec::new();
    for part in split_top_level(inner) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (ch, coeff) = match part.rfind(':') {
            Some(i) if !part[i + 1..].contains('}') => (&part[..i], part[i + 1..].trim()),
            _ => (part, "1"),
        };
        let c = parse_rational(coeff).ok_or_else(|| Failure::Parse(format!("bad coefficient `{coeff}`")))?;
        let x = Character::parse_text(reg, ch.trim()).map_err(reading)?;
        terms.push((x, Scalar::from_rational(reg.field(), &c)));
    }
    Ok(terms)
}

/// Parses a domain, filling in the default side `N = q_k − 1`.
fn parse_polytope(reg: &Reg, spec: &str) -> Result<Polytope, Failure> {
    let big = big_n(reg);
    let parts: Vec<&str> = spec.split(':').collect();
    let full = match parts.as_slice() {
        ["interval"] => format!("interval:{big}"),
        ["cube" | "simplex", _] => format!("{spec}:{big}"),
        _ => spec.to_string(),
    };
    Polytope::from_shape(&full).map_err(reading)
}

fn parse_function(reg: &Reg, polytope: &str, arg: &str) -> Result<PolyFunction, Failure> {
    let text = payload(arg)?;
    if looks_like_json(&text) {
        let value = parse_json(&text)?;
        return match &value {
            Value::Object(map) if map.contains_key("polytope") => PolyFunction::from_json(reg, &value).map_err(reading),
            Value::Array(_) => {
                let dom = Domain::new(reg, parse_polytope(reg, polytope)?);
                PolyFunction::from_json_on(&dom, &json!({"terms": value})).map_err(reading)
            }
            _ => {
                let dom = Domain::new(reg, parse_polytope(reg, polytope)?);
                PolyFunction::from_json_on(&dom, &value).map_err(reading)
            }
        };
    }
    let dom = Domain::new(reg, parse_polytope(reg, polytope)?);
    let terms = parse_compact_terms(reg, &text)?;
    Ok(PolyFunction::from_ambient(&dom, terms)?)
}

fn parse_scalar(field: &Field, arg: &str) -> Result<Scalar, Failure> {
    let value = json_payload(arg)?;
    Scalar::from_json(field, &value).map_err(|e| Failure::Parse(e.to_string()))
}

fn parse_laurent(reg: &Reg, arg: &str) -> Result<Laurent, Failure> {
    let value = json_payload(arg)?;
    Laurent::from_json(reg, &value).map_err(reading)
}

fn parse_path(reg: &Reg, arg: &str) -> Result<Path, Failure> {
    let value = json_payload(arg)?;
    Path::from_json(reg, &value).map_err(reading)
}

fn parse_point(arg: &str) -> Result<Vec<Q>, Failure> {
    arg.split(',')
        .map(|s| parse_rational(s).ok_or_else(|| Failure::Parse(format!("bad coordinate `{s}`"))))
        .collect()
}

fn gauss_text(e: &Option<Q>) -> String {
    e.as_ref().map_or("+inf".to_string(), |e| e.to_string())
}

// -------------------------------------------------------------- commands

fn integrate(out: &Out, reg: &Reg, args: &IntegrateArgs) -> Outcome {
    if args.path.is_some() || args.chain.is_some() {
        let omega = TargetForm::from_json(reg, &json_payload(&args.form)?).map_err(reading)?;
        let value = match (&args.path, &args.chain) {
            (Some(p), _) => paths::integrate_path(&parse_path(reg, p)?, &omega)?,
            (_, Some(c)) => {
                let chain = Chain::from_json(reg, &json_payload(c)?).map_err(reading)?;
                paths::integrate_chain_in(reg, &chain, &omega)?
            }
            _ => unreachable!("checked above"),
        };
        out.emit(value.to_string(), json!({"command": "integrate", "period": value.to_string(), "value": value.to_json()}));
        return Ok(true);
    }
    let spec = args.polytope.clone().unwrap_or_else(|| "interval".into());
    let function = args.function.as_deref().expect("required by the parser");
    let f = parse_function(reg, &spec, function)?;
    let dims = f.domain().polytope().dim();
    let value = if spec.starts_with("simplex") {
        let g = PFunction::from_poly(&f)?;
        integrate_simplex(&Form::simplex_top(&g, dims)?)?
    } else if dims == 1 && !spec.starts_with("cube") {
        integrate_interval(&f)?
    } else {
        integrate_cube_function(&PFunction::from_poly(&f)?)?
    };
    out.emit(
        value.to_string(),
        json!({"command": "integrate", "function": f.to_text(), "period": value.to_string(), "value": value.to_json()}),
    );
    Ok(true)
}

fn norm(out: &Out, reg: &Reg, args: &FunctionArgs) -> Outcome {
    let f = parse_function(reg, &args.polytope, &args.function)?;
    let e = f.gauss();
    out.emit(
        match &e {
            Some(x) => format!("exponent {x}  (‖f‖ = {}^{})", reg.field().p(), -x),
            None => "exponent +inf  (f = 0)".to_string(),
        },
        json!({"command": "norm", "function": f.to_text(), "exponent": gauss_text(&e)}),
    );
    Ok(true)
}

fn decompose(out: &Out, reg: &Reg, args: &FunctionArgs) -> Outcome {
    let f = parse_function(reg, &args.polytope, &args.function)?;
    let (a, x, g) = f
        .unit_decompose()
        .ok_or_else(|| Failure::Domain(format!("not a unit: no term of {} strictly dominates", f.to_text())))?;
    let ge = g.gauss();
    out.emit(
        format!("a = {a}\nx = {}\ng = {}\n‖g‖ exponent {}", x.to_text(reg), g.to_text(), gauss_text(&ge)),
        json!({"command": "decompose", "a": a.to_json(), "x": x.to_text(reg), "g": g.to_json()?, "g_exponent": gauss_text(&ge)}),
    );
    Ok(true)
}

fn evaluate(out: &Out, reg: &Reg, args: &EvaluateArgs) -> Outcome {
    let t = parse_point(&args.at)?;
    let values: Vec<Scalar> = match &args.path {
        Some(p) => parse_path(reg, p)?.value(&t)?,
        None => {
            let f = parse_function(reg, &args.function.polytope, args.function.function.as_deref().unwrap_or(""))?;
            vec![f.evaluate(&t)?]
        }
    };
    let text: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    out.emit(
        text.join(", "),
        json!({"command": "evaluate", "values": values.iter().map(|v| v.to_json()).collect::<Vec<_>>()}),
    );
    Ok(true)
}

fn print_report(out: &Out, report: &SuiteReport) -> bool {
    out.emit(format!("suite {}  seed {}", report.suite, report.seed), json!({"suite": report.suite, "seed": report.seed}));
    for c in &report.cases {
        let status = match (c.pass, c.advisory) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "note PASS",
            (false, true) => "note FAIL",
        };
        let mut text = format!("{status}  {}\n      lhs = {}\n      rhs = {}", c.label, c.lhs, c.rhs);
        if !c.pass && !c.advisory {
            text.push_str(&format!("\n      reproducer: {}", c.input));
        }
        let mut value = json!({"case": c.label, "pass": c.pass, "lhs": c.lhs, "rhs": c.rhs});
        if c.advisory {
            value["advisory"] = json!(true);
        }
        if !c.pass {
            value["reproducer"] = c.input.clone();
        }
        out.emit(text, value);
    }
    let checked = report.checked().count();
    let ok = report.all_pass();
    out.emit(
        format!("{}: {}/{} passed", if ok { "PASS" } else { "FAIL" }, report.passed(), checked),
        json!({"summary": report.suite, "passed": report.passed(), "total": checked, "pass": ok, "seed": report.seed}),
    );
    ok
}

fn parse_kind(s: &str) -> Result<Kind, Failure> {
    Kind::parse(s).ok_or_else(|| Failure::Parse(format!("unknown kind `{s}` (cubical or simplicial)")))
}

fn verify(out: &Out, reg: &Reg, args: &VerifyArgs) -> Outcome {
    if !suites::SUITES.contains(&args.suite.as_str()) {
        return Err(Failure::Parse(format!("unknown suite `{}` (known: {})", args.suite, suites::SUITES.join(", "))));
    }
    if args.n.is_some_and(|n| n > 3) {
        return Err(Failure::Domain("suites are limited to n ≤ 3".into()));
    }
    let params = SuiteParams {
        seed: args.seed,
        trials: args.trials,
        grid: if args.grid == "full" { Grid::Full } else { Grid::Small },
        n: args.n,
        shape: args.kind.as_deref().map(parse_kind).transpose()?,
    };
    let report = suites::run(reg, &args.suite, &params)?;
    Ok(print_report(out, &report))
}

fn demo(out: &Out, field: &Field, reg: &Reg, custom: bool, args: &DemoArgs) -> Outcome {
    match args.name.as_str() {
        "tate-periods" => tate_periods(out, field, reg, custom, &args.tate),
        "gm-cycles" => gm_cycles(out, reg),
        "obstruction" => obstruction(out, field, reg, custom, args),
        other => Err(Failure::Parse(format!("unknown demo `{other}` (tate-periods, gm-cycles, obstruction)"))),
    }
}

/// The registry for the Tate-curve demos: the one given on the command
/// line, or the standard registry with the requested `a` and `q`.
fn tate_registry(field: &Field, reg: &Reg, custom: bool, args: &TateArgs) -> Result<(Reg, bool), Failure> {
    let p = Scalar::from_i64(field, field.p() as i64);
    let a = args.a.as_deref().map(|a| parse_scalar(field, a)).transpose()?.unwrap_or_else(|| p.clone());
    let with_a = !a.is_zero();
    if custom {
        for name in ["q", "1+a"] {
            reg.id(name).map_err(|_| Failure::Domain(format!("the registry has no `{name}` generator")))?;
        }
        return Ok((reg.clone(), with_a));
    }
    let q = args.q.as_deref().map(|q| parse_scalar(field, q)).transpose()?.unwrap_or(p);
    let a_eff = if with_a { a } else { Scalar::from_i64(field, field.p() as i64) };
    Ok((Registry::standard_with(field, &a_eff, &q)?, with_a))
}

fn tate_periods(out: &Out, field: &Field, reg: &Reg, custom: bool, args: &TateArgs) -> Outcome {
    let (reg, _) = tate_registry(field, reg, custom, args)?;
    let omega = TargetForm::invariant(&reg);
    let big = big_n(&reg);
    let lam = |name: &str| -> Result<Period, Failure> { Ok(Period::symbol(&reg, reg.id(name)?)) };
    let a = reg.generator(reg.id("1+a")?).base().sub(&Scalar::one(field));
    let oracle = suites::tate_series_oracle(field, &a)?;
    let rows: Vec<(&str, Path, Period, String)> = vec![
        ("γ₁", tate::gamma1(&reg)?, lam("1+a")?.scale_int(big), format!("{big}·λ_{{1+a}}")),
        ("γ₂", tate::gamma2(&reg)?, Period::constant(&reg, &oracle), format!("{big}·plog(1+a)")),
        ("γ₃", tate::gamma3(&reg)?, lam("q")?.scale_int(big), format!("{big}·λ_q")),
    ];
    let bound = field.precision() as i64 - suites::TATE_SLACK;
    let mut ok = true;
    for (name, path, expected, formula) in rows {
        let value = paths::integrate_path(&path, &omega)?;
        let pass = value.agrees_to(&expected, bound);
        ok &= pass;
        out.emit(
            format!("{name}  ∫ T⁻¹dT = {value}   [{formula}]  {}", if pass { "ok" } else { "MISMATCH" }),
            json!({"demo": "tate-periods", "cycle": name, "period": value.to_string(), "expected": formula, "pass": pass}),
        );
    }
    Ok(ok)
}

fn gm_cycles(out: &Out, reg: &Reg) -> Outcome {
    let omega = TargetForm::invariant(reg);
    let zero = Scalar::zero(reg.field());
    for a_prime in -2..=2 {
        let gamma = tate::eps_cycle(reg, a_prime)?;
        let integral = paths::integrate_path(&gamma, &omega)?;
        let rot = paths::rot(&gamma, &zero)?;
        out.emit(
            format!("a' = {a_prime:>2}   ∫ T⁻¹dT = {integral}   rot(γ, 0) = {rot}"),
            json!({"demo": "gm-cycles", "a_prime": a_prime, "integral": integral.to_string(), "rot": rot.to_string()}),
        );
    }
    Ok(true)
}

fn obstruction(out: &Out, field: &Field, reg: &Reg, custom: bool, args: &DemoArgs) -> Outcome {
    let (reg, with_a) = tate_registry(field, reg, custom, &args.tate)?;
    let omega = TargetForm::invariant(&reg);
    let ds: Vec<i64> = match args.d {
        Some(d) => vec![d],
        None => (-2..=2).collect(),
    };
    let a_text = if with_a { args.tate.a.clone().unwrap_or_else(|| field.p().to_string()) } else { "0".into() };
    for d in ds {
        let chain = tate::obstruction_chain(&reg, d, with_a)?;
        let (value, verdict) = paths::obstruction_certificate(&reg, &chain, &omega)?;
        out.emit(
            format!("d = {d:>2}  a = {a_text}   ∫ T⁻¹dT = {value}   {verdict}"),
            json!({"demo": "obstruction", "d": d, "a": a_text, "period": value.to_string(), "verdict": verdict.to_string(),
                   "boundary_excluded": verdict == Verdict::NonBoundary}),
        );
    }
    Ok(true)
}

fn residue(out: &Out, reg: &Reg, args: &ResidueArgs) -> Outcome {
    let f = parse_laurent(reg, &args.f)?;
    let gamma = match &args.path {
        Some(p) => parse_path(reg, p)?,
        None => tate::eps_cycle(reg, args.a_prime)?,
    };
    let r = paths::residue_check(&gamma, &f)?;
    out.emit(
        format!("∫ f dT      = {}\nrot·Res(f) = {}\n{}", r.lhs, r.rhs, if r.pass { "PASS" } else { "FAIL" }),
        json!({"command": "residue", "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "pass": r.pass}),
    );
    Ok(r.pass)
}

fn cauchy(out: &Out, reg: &Reg, args: &CauchyArgs) -> Outcome {
    let field = reg.field();
    let f = parse_laurent(reg, &args.f)?;
    let a = parse_scalar(field, &args.a)?;
    let gamma = match &args.path {
        Some(p) => parse_path(reg, p)?,
        None => {
            let dom = paths::shape_domain(reg, paths::Shape::Cube(1));
            let eps = Character::generator(reg.eps(), Q::new(1.into(), big_n(reg).into()));
            let g = PolyFunction::monomial(&dom, &eps, &Scalar::one(field))?.add(&PolyFunction::constant(&dom, &a))?;
            Path::interval(Target::Affine { arity: 1 }, g)?
        }
    };
    let bound = field.precision() as i64 - suites::CAUCHY_SLACK;
    let r = paths::cauchy_check(&gamma, &f, &a, args.order, bound)?;
    out.emit(
        format!(
            "∫ f/(T−a)^{} dT        = {}\nrot·f^({})(a)/{}!       = {}   {}\nrot·f^({})(a) (no i!)  = {}   {}",
            args.order + 1,
            r.lhs,
            args.order,
            args.order,
            r.rhs_taylor,
            if r.pass_taylor { "PASS" } else { "FAIL" },
            args.order,
            r.rhs_literal,
            if r.pass_literal { "agrees" } else { "differs" },
        ),
        json!({"command": "cauchy", "lhs": r.lhs.to_string(), "rhs": r.rhs_taylor.to_string(), "pass": r.pass_taylor,
               "rhs_without_factorial": r.rhs_literal.to_string(), "agrees_without_factorial": r.pass_literal}),
    );
    Ok(r.pass_taylor)
}

fn subdivision_check(out: &Out, args: &SubdivisionArgs) -> Outcome {
    let kind = parse_kind(&args.kind)?;
    if args.n > subdivision::MAX_DIM {
        return Err(Failure::Domain(format!("subdivision checks are limited to n ≤ {}", subdivision::MAX_DIM)));
    }
    let params = SuiteParams { n: Some(args.n), shape: Some(kind), ..SuiteParams::default() };
    if args.maps {
        let chain = subdivision::homotopy(kind, args.n);
        out.emit(format!("{chain}"), json!({"kind": kind.to_string(), "n": args.n, "homotopy": chain.to_json()}));
    }
    let report = suites::subdivision_suite(&params);
    Ok(print_report(out, &report))
}
