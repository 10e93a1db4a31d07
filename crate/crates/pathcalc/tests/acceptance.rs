//! Acceptance criteria.  Each criterion prints one `PASS`/`FAIL` line with
//! its pinned tolerance; lines marked `known` are literal statements that
//! cannot hold as written (the documented corrected form is checked on the
//! line next to it) and are allowed to fail.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the table.

use std::time::Instant;

use pathcalc::calculus::{integrate_simplex, Form, PFunction};
use pathcalc::characters::{Character, Reg, Registry};
use pathcalc::localfield::{FieldConfig, Scalar};
use pathcalc::periods::Period;
use pathcalc::subdivision::{self, Kind};
use pathcalc::suites::{self, Grid, SuiteParams, SuiteReport};

const SEED: u64 = suites::DEFAULT_SEED;
/// Desk-scale time budget for any one suite.
const SUITE_BUDGET_SECS: f64 = 60.0;

fn registry(p: u64) -> Reg {
    Registry::standard(&FieldConfig::new(p, 40).unwrap()).unwrap()
}

fn params(trials: usize) -> SuiteParams {
    SuiteParams { seed: SEED, trials, ..SuiteParams::default() }
}

/// One printed criterion line.
struct Line {
    id: &'static str,
    text: String,
    pass: bool,
    known: bool,
}

#[derive(Default)]
struct Table {
    lines: Vec<Line>,
}

impl Table {
    fn check(&mut self, id: &'static str, text: impl Into<String>, pass: bool) {
        self.lines.push(Line { id, text: text.into(), pass, known: false });
    }

    /// A literal statement that is expected not to hold.
    fn known(&mut self, id: &'static str, text: impl Into<String>, pass: bool) {
        self.lines.push(Line { id, text: text.into(), pass, known: true });
    }

    /// Runs a suite under the time budget and records its verdict.
    fn suite(&mut self, id: &'static str, what: &str, tolerance: &str, reg: &Reg, name: &str, p: &SuiteParams) -> SuiteReport {
        let start = Instant::now();
        let report = suites::run(reg, name, p).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let mut text = format!(
            "{what}: {}/{} cases [{tolerance}; seed {}; {secs:.1}s]",
            report.passed(),
            report.checked().count(),
            report.seed
        );
        if let Some(c) = report.failures().next() {
            text.push_str(&format!(" first failure {} : {} vs {}", c.label, c.lhs, c.rhs));
        }
        self.check(id, text, report.all_pass() && secs < SUITE_BUDGET_SECS && report.checked().count() > 0);
        report
    }

    fn print(&self) {
        for l in &self.lines {
            let status = if l.pass { "PASS" } else { "FAIL" };
            let tag = if l.known { " (known: literal statement)" } else { "" };
            println!("{status}  #{:<3} {}{tag}", l.id, l.text);
        }
    }
}

fn residue(t: &mut Table, id: &'static str, reg: &Reg, grid: Grid) {
    let p = SuiteParams { grid, ..params(50) };
    t.suite(id, "residue theorem, ∫_γ f dT = rot(γ,0)·Res(f,0), d ∈ −3..3, a' ∈ −2..2", "v ≥ M−2", reg, "residue", &p);
}

fn ftc(t: &mut Table, id: &'static str, reg: &Reg) {
    t.suite(id, "FTC on [0,N], 200 random finite sums", "exact", reg, "ftc", &params(200));
}

fn stokes(t: &mut Table, id: &'static str, reg: &Reg) {
    for (kind, name) in [(Kind::Cubical, "cubes"), (Kind::Simplicial, "simplices")] {
        let p = SuiteParams { shape: Some(kind), ..params(50) };
        t.suite(id, &format!("Stokes on {name}, n ∈ 1..3, 50 random forms"), "exact", reg, "stokes", &p);
    }
}

/// `∫_{4Δ¹} y(t₀)y(t₁) dt′_{1,0}` against the literal `8·y(4)` and the
/// recursion's base value `4·y(4)`.
fn simplex_base(t: &mut Table, reg: &Reg) {
    let field = reg.field();
    let mut literal_ok = true;
    let mut corrected_ok = true;
    let mut shown = Vec::new();
    for y in ["1", "mu", "1+a", "1+a*mu"] {
        let x = Character::parse_text(reg, &format!("{y}|{y}")).unwrap();
        let f = PFunction::from_terms(reg, 2, vec![(x, Period::one(reg))]).unwrap();
        let value = integrate_simplex(&Form::simplex_top(&f, 0).unwrap()).unwrap();
        let y4 = Character::parse_text(reg, y).unwrap().evaluate_int(reg, &[4]).unwrap();
        let four = Period::constant(reg, &y4.mul(&Scalar::from_i64(field, 4)));
        let eight = Period::constant(reg, &y4.mul(&Scalar::from_i64(field, 8)));
        literal_ok &= value.equals(&eight);
        corrected_ok &= value.equals(&four);
        shown.push(format!("y={y}: {value}"));
    }
    t.known("6", format!("simplex base ∫_{{4Δ¹}} y(t₀)y(t₁) dt′ = 8·y(4) [exact]; got {}", shown.join(", ")), literal_ok);
    t.check("6", "simplex base ∫_{4Δ¹} y(t₀)y(t₁) dt′ = 4·y(4) = N·y(N) for y ∈ {1, μ, (1+p), (1+p)μ} [exact]", corrected_ok);
}

fn subdivision_lines(t: &mut Table) {
    let start = Instant::now();
    let report = suites::run(&registry(5), "subdivision", &params(0)).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let simplicial = report.cases.iter().filter(|c| c.label.starts_with("simplicial") && c.label.contains("stated"));
    let simplicial: Vec<_> = simplicial.collect();
    t.check(
        "11",
        format!("simplicial ∂Φ−Φ∂ = (−1)^n(id−B), n ≤ 3: {}/{} [exact, {secs:.1}s total]", simplicial.iter().filter(|c| c.pass).count(), simplicial.len()),
        simplicial.len() == 4 && simplicial.iter().all(|c| c.pass),
    );
    for c in report.cases.iter().filter(|c| c.label.starts_with("cubical") && c.label.contains("stated")) {
        let n: usize = c.label["cubical n=".len()..].split(' ').next().unwrap().parse().unwrap();
        let text = format!("cubical (dΦ−Φd) = id−B with the stated signs, n={n}: {} vs {} [exact]", c.lhs, c.rhs);
        if n <= 1 {
            t.check("11", text, c.pass);
        } else {
            t.known("11", text, c.pass);
        }
    }
    let graded: Vec<_> = report.cases.iter().filter(|c| c.label.contains("graded")).collect();
    t.check(
        "11",
        format!("graded homotopy dH + Hd = id − B, both kinds, n ≤ 3: {}/{} [exact]", graded.iter().filter(|c| c.pass).count(), graded.len()),
        graded.len() == 8 && graded.iter().all(|c| c.pass),
    );
    let chain: Vec<_> = report.cases.iter().filter(|c| c.label.contains("∂B = B∂")).collect();
    t.check("11", format!("subdivision B is a chain map, n ≤ 3: {}/{}", chain.iter().filter(|c| c.pass).count(), chain.len()), chain.iter().all(|c| c.pass));
    let counts: Vec<usize> = (1..=3).map(subdivision::cubical_phi_count).collect();
    let built: Vec<usize> = (1..=3).map(|n| subdivision::cubical_generators(n).len()).collect();
    t.check("11", format!("cubical generator counts a₁,a₂,a₃ = {counts:?}, built {built:?} (expected [3, 17, 111])"), counts == [3, 17, 111] && built == counts);
    t.check("11", format!("cubical n=3 homotopy check within 5 min ({secs:.1}s)"), secs < 300.0);
}

#[test]
fn acceptance() {
    let reg = registry(5);
    let mut t = Table::default();

    residue(&mut t, "1", &reg, Grid::Full);

    let cauchy = t.suite("2", "Cauchy, ∫ f/(T−a)^{i+1} dT = rot·f^(i)(a)/i!, i ≤ 3, deg f ≤ 8", "v ≥ M−6", &reg, "cauchy", &params(10));
    let _ = cauchy;
    let goursat = t.suite("2", "Goursat, i!·∫ f/(T−a)^{i+1} dT = rot·f^(i)(a), i ≤ 3", "v ≥ M−6", &reg, "goursat", &params(10));
    let literal: Vec<_> = goursat.advisories().collect();
    t.known(
        "2",
        format!("Goursat without i!, i ∈ {{2,3}}: {}/{} agree [v ≥ M−6]", literal.iter().filter(|c| c.pass).count(), literal.len()),
        literal.iter().all(|c| c.pass),
    );

    ftc(&mut t, "3", &reg);
    stokes(&mut t, "4", &reg);
    t.suite("5", "simplex well-definedness, 50 characters with ≥ 2 admissible pairs", "exact", &reg, "simplex-welldef", &params(50));
    simplex_base(&mut t, &reg);
    t.suite("7", "Gauss norm ‖f²‖ = ‖f‖² and fg ≠ 0, 500 random sums", "exact", &reg, "gauss", &params(500));
    t.suite("8", "unit inversion a·x·(1+g), ‖g‖ ≤ 1/p, 100 cases", "residual exponent ≥ M−2", &reg, "inversion", &params(100));
    t.suite("9", "equivariance under f* and u ∈ {2, 1+p}, 100 random f", "exact", &reg, "equivariance", &params(100));
    t.suite("10", "Tate periods γ₁, γ₂, γ₃ and obstruction verdicts, a ∈ {p, 2p}, d ∈ −2..2", "γ₂ series v ≥ M−6", &reg, "tate", &params(0));
    subdivision_lines(&mut t);

    let reg2 = registry(2);
    residue(&mut t, "12", &reg2, Grid::Full);
    ftc(&mut t, "12", &reg2);
    stokes(&mut t, "12", &reg2);

    t.print();
    let unexpected: Vec<String> = t.lines.iter().filter(|l| !l.pass && !l.known).map(|l| format!("#{} {}", l.id, l.text)).collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:#?}");
    let ids: std::collections::BTreeSet<&str> = t.lines.iter().map(|l| l.id).collect();
    assert_eq!(ids.len(), 12, "one or more lines per criterion");
}
