//! Differentiation and integration on intervals, cubes and normalised
//! simplices, with exterior calculus and Stokes verification.
//!
//! Functions with period coefficients ([`PFunction`]) and differential forms
//! ([`Form`]) are written in the ambient coordinates of their polytope: for
//! the cube `[0,N]^n` these are `t_1..t_n` (indices `0..n`), for the
//! simplex `NΔ^n ⊂ R^{n+1}` they are `t_0..t_n`.  The relations forced by
//! the polytope (e.g. `t_0 + … + t_n = N` on the simplex) are only applied
//! when integrating; the integrals are well defined on the quotient.
//!
//! Here `N = q_k − 1` is the length fixed by the residue field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::{Character, GaloisAction, Reg};
use crate::error::{Error, Result};
use crate::funcring::{pullback_character, PolyFunction};
use crate::linalg::{det, qi, Q};
use crate::localfield::Scalar;
use crate::periods::Period;
use crate::polytope::AffineMap;

/// Default loss of absolute precision tolerated when integrating truncated
/// series (covers the polynomial growth of log-denominators).
pub const DEFAULT_SLACK: u32 = 8;

/// Base case of the simplex integral on all-torsion-ratio characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SimplexBase {
    /// `(−1)^h N^n x^{(0)}(N) / n!`, consistent with the Stokes recursion.
    #[default]
    WithValue,
    /// `(−1)^h N^n / n!`, omitting the endpoint value (for auditing only).
    Literal,
}

/// The length `N = q_k − 1` as an integer.
pub fn big_n(reg: &Reg) -> i64 {
    reg.field().n_k() as i64
}

/// A finite character sum with period coefficients, in ambient coordinates.
#[derive(Clone)]
pub struct PFunction {
    reg: Reg,
    arity: usize,
    terms: BTreeMap<Character, Period>,
}

fn add_pterm(terms: &mut BTreeMap<Character, Period>, x: Character, c: Period) {
    let entry = terms.remove(&x);
    let sum = match entry {
        Some(e) => e.add(&c),
        None => c,
    };
    if !sum.is_zero() {
        terms.insert(x, sum);
    }
}

impl PFunction {
    pub fn zero(reg: &Reg, arity: usize) -> PFunction {
        PFunction { reg: reg.clone(), arity, terms: BTreeMap::new() }
    }

    /// The constant period `c`.
    pub fn constant(reg: &Reg, arity: usize, c: &Period) -> PFunction {
        let mut f = PFunction::zero(reg, arity);
        add_pterm(&mut f.terms, Character::identity(arity), c.clone());
        f
    }

    /// Builds a function from `(character, coefficient)` pairs.
    pub fn from_terms(reg: &Reg, arity: usize, terms: Vec<(Character, Period)>) -> Result<PFunction> {
        let mut f = PFunction::zero(reg, arity);
        for (x, c) in terms {
            if x.arity() != arity {
                return Err(Error::ArityMismatch(x.arity(), arity));
            }
            add_pterm(&mut f.terms, x, c);
        }
        Ok(f)
    }

    /// A function of `k_S` viewed with period coefficients, in the ambient
    /// coordinates of `S`.
    pub fn from_poly(f: &PolyFunction) -> Result<PFunction> {
        let reg = f.registry();
        let arity = f.domain().polytope().ambient_dim();
        let terms = f
            .ambient_terms()?
            .into_iter()
            .map(|(x, c)| (x, Period::constant(reg, &c)))
            .collect();
        PFunction::from_terms(reg, arity, terms)
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Character, Period> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PFunction) -> Result<PFunction> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut terms = self.terms.clone();
        for (x, c) in &other.terms {
            add_pterm(&mut terms, x.clone(), c.clone());
        }
        Ok(PFunction { reg: self.reg.clone(), arity: self.arity, terms })
    }

    pub fn neg(&self) -> PFunction {
        PFunction {
            reg: self.reg.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(x, c)| (x.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &PFunction) -> Result<PFunction> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PFunction) -> Result<PFunction> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                add_pterm(&mut terms, x.mul(y)?, c.mul(d));
            }
        }
        Ok(PFunction { reg: self.reg.clone(), arity: self.arity, terms })
    }

    /// Multiplication by a period.
    pub fn scale(&self, c: &Period) -> PFunction {
        let mut terms = BTreeMap::new();
        for (x, d) in &self.terms {
            add_pterm(&mut terms, x.clone(), d.mul(c));
        }
        PFunction { reg: self.reg.clone(), arity: self.arity, terms }
    }

    /// `∂/∂t_i`: each coefficient is multiplied by `log x^{(i)}`.
    pub fn derivative(&self, i: usize) -> PFunction {
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            add_pterm(&mut terms, x.clone(), c.mul(&x.coordinate(i).log(&self.reg)));
        }
        PFunction { reg: self.reg.clone(), arity: self.arity, terms }
    }

    /// Composition with an affine map into the ambient space.
    pub fn pullback(&self, map: &AffineMap) -> Result<PFunction> {
        if map.target_dim() != self.arity {
            return Err(Error::DimensionMismatch("pullback map does not match the arity".into()));
        }
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            let (v, y) = pullback_character(&self.reg, x, map)?;
            add_pterm(&mut terms, y, c.scale(&v));
        }
        Ok(PFunction { reg: self.reg.clone(), arity: map.source_dim(), terms })
    }

    /// Value at a point.
    pub fn evaluate(&self, t: &[Q]) -> Result<Period> {
        let mut acc = Period::zero(&self.reg);
        for (x, c) in &self.terms {
            acc = acc.add(&c.scale(&x.evaluate(&self.reg, t)?));
        }
        Ok(acc)
    }

    /// Galois twist of characters and coefficients.
    pub fn galois_twist(&self, action: &GaloisAction) -> Result<PFunction> {
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            add_pterm(&mut terms, x.galois_twist(&self.reg, action), c.galois_twist(action)?);
        }
        Ok(PFunction { reg: self.reg.clone(), arity: self.arity, terms })
    }

    /// Equality of coefficient maps (as periods).
    pub fn equals(&self, other: &PFunction) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }
}

impl fmt::Debug for PFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, c)| format!("({c})·{}", x.to_text(&self.reg)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A differential form `Σ_H f_H dt_H` over increasing index tuples `H`.
#[derive(Clone)]
pub struct Form {
    reg: Reg,
    ambient: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, PFunction>,
}

/// Sign of the permutation sorting the concatenation `h ++ k` (0 if they meet).
fn merge_sign(h: &[usize], k: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for a in h {
        for b in k {
            if a == b {
                return 0;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

fn merged(h: &[usize], k: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = h.iter().chain(k).copied().collect();
    v.sort_unstable();
    v
}

/// All increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

impl Form {
    pub fn zero(reg: &Reg, ambient: usize, degree: usize) -> Form {
        Form { reg: reg.clone(), ambient, degree, terms: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(f: &PFunction) -> Form {
        Form::term(f, &[]).expect("empty index tuple")
    }

    /// The form `f dt_H` (`h` increasing, entries below the arity of `f`).
    pub fn term(f: &PFunction, h: &[usize]) -> Result<Form> {
        if h.windows(2).any(|w| w[0] >= w[1]) || h.iter().any(|&i| i >= f.arity) {
            return Err(Error::DegreeOverflow(h.len(), f.arity));
        }
        let mut form = Form::zero(&f.reg, f.arity, h.len());
        if !f.is_zero() {
            form.terms.insert(h.to_vec(), f.clone());
        }
        Ok(form)
    }

    /// `f dt'_{n,h}`: all `dt_i` on `R^{n+1}` except `dt_h`.
    pub fn simplex_top(f: &PFunction, h: usize) -> Result<Form> {
        let idx: Vec<usize> = (0..f.arity).filter(|&i| i != h).collect();
        Form::term(f, &idx)
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, PFunction> {
        &self.terms
    }

    /// Coefficient of `dt_H`.
    pub fn coefficient(&self, h: &[usize]) -> PFunction {
        self.terms.get(h).cloned().unwrap_or_else(|| PFunction::zero(&self.reg, self.ambient))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, h: Vec<usize>, f: PFunction) -> Result<()> {
        let sum = match self.terms.remove(&h) {
            Some(g) => g.add(&f)?,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(h, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        if self.ambient != other.ambient || self.degree != other.degree {
            return Err(Error::DimensionMismatch("forms of different shape".into()));
        }
        let mut out = self.clone();
        for (h, f) in &other.terms {
            out.insert(h.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Form {
        let mut out = self.clone();
        for f in out.terms.values_mut() {
            *f = f.neg();
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    /// Multiplication by a function.
    pub fn mul_function(&self, g: &PFunction) -> Result<Form> {
        let mut out = Form::zero(&self.reg, self.ambient, self.degree);
        for (h, f) in &self.terms {
            out.insert(h.clone(), f.mul(g)?)?;
        }
        Ok(out)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("forms on different spaces".into()));
        }
        let degree = self.degree + other.degree;
        if degree > self.ambient {
            return Err(Error::DegreeOverflow(degree, self.ambient));
        }
        let mut out = Form::zero(&self.reg, self.ambient, degree);
        for (h, f) in &self.terms {
            for (k, g) in &other.terms {
                let s = merge_sign(h, k);
                if s == 0 {
                    continue;
                }
                let fg = f.mul(g)?;
                out.insert(merged(h, k), if s < 0 { fg.neg() } else { fg })?;
            }
        }
        Ok(out)
    }

    /// Exterior derivative `d(f dt_H) = Σ_i ∂f/∂t_i dt_i ∧ dt_H`.
    pub fn d(&self) -> Result<Form> {
        if self.degree + 1 > self.ambient {
            return Err(Error::DegreeOverflow(self.degree + 1, self.ambient));
        }
        let mut out = Form::zero(&self.reg, self.ambient, self.degree + 1);
        for (h, f) in &self.terms {
            for i in 0..self.ambient {
                let s = merge_sign(&[i], h);
                if s == 0 {
                    continue;
                }
                let df = f.derivative(i);
                out.insert(merged(&[i], h), if s < 0 { df.neg() } else { df })?;
            }
        }
        Ok(out)
    }

    /// Pullback along an affine map `R^{m'} → R^m`:
    /// `a^* dt_j = Σ_i A_{j,i} dt_i`, so `a^* dt_H = Σ_K det A[H,K] dt_K`.
    pub fn pullback(&self, map: &AffineMap) -> Result<Form> {
        if map.target_dim() != self.ambient {
            return Err(Error::DimensionMismatch("pullback map does not match the form".into()));
        }
        let m2 = map.source_dim();
        if self.degree > m2 {
            return Ok(Form::zero(&self.reg, m2, self.degree));
        }
        let a = map.matrix();
        let mut out = Form::zero(&self.reg, m2, self.degree);
        let targets = increasing_tuples(m2, self.degree);
        for (h, f) in &self.terms {
            let g = f.pullback(map)?;
            for k in &targets {
                let minor: Vec<Vec<Q>> = h.iter().map(|&j| k.iter().map(|&i| a[j][i].clone()).collect()).collect();
                let c = det(&minor);
                if c.is_zero() {
                    continue;
                }
                out.insert(k.clone(), g.scale(&Period::rational(&self.reg, &c)))?;
            }
        }
        Ok(out)
    }

    /// Galois twist of every coefficient.
    pub fn galois_twist(&self, action: &GaloisAction) -> Result<Form> {
        let mut out = Form::zero(&self.reg, self.ambient, self.degree);
        for (h, f) in &self.terms {
            out.insert(h.clone(), f.galois_twist(action)?)?;
        }
        Ok(out)
    }

    /// Equality of forms coefficientwise (no polytope relations applied).
    pub fn equals(&self, other: &Form) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(h, g)| {
                let dt: Vec<String> = h.iter().map(|i| format!("dt{i}")).collect();
                format!("[{g:?}] {}", dt.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∫_0^N y(t) dt` of an arity-1 character: `(y(N) − 1)/log y`, or `N` for
/// torsion `y`.
pub fn interval_character(reg: &Reg, y: &Character) -> Result<Period> {
    let n = big_n(reg);
    if y.is_torsion(reg) {
        return Ok(Period::rational(reg, &qi(n)));
    }
    let value = y
        .evaluate(reg, &[qi(n)])
        .map_err(|e| Error::NotRepresentable(format!("{} at N: {e}", y.to_text(reg))))?;
    Period::constant(reg, &value.sub(&Scalar::one(reg.field()))).divide_by_log(y)
}

fn check_tail(f: &PolyFunction, slack: u32) -> Result<()> {
    if let Some(t) = f.tail() {
        let need = f.registry().field().precision() as i64 - slack as i64;
        if t.e_tail < qi(need) {
            return Err(Error::TailBudget(format!(
                "tail exponent {} is below the required {need}",
                t.e_tail
            )));
        }
    }
    Ok(())
}

/// `∫_0^N f(t) dt` for a function on `[0, N]`.
pub fn integrate_interval(f: &PolyFunction) -> Result<Period> {
    integrate_interval_with(f, DEFAULT_SLACK)
}

/// As [`integrate_interval`], with an explicit precision slack for tails.
pub fn integrate_interval_with(f: &PolyFunction, slack: u32) -> Result<Period> {
    check_tail(f, slack)?;
    let g = PFunction::from_poly(f)?;
    if g.arity != 1 {
        return Err(Error::ArityMismatch(g.arity, 1));
    }
    integrate_cube_function(&g)
}

/// `∫_{[0,N]^n} f dt_1 ∧ … ∧ dt_n` by Fubini: a product of interval integrals.
pub fn integrate_cube_function(f: &PFunction) -> Result<Period> {
    let reg = &f.reg;
    let mut acc = Period::zero(reg);
    for (x, c) in &f.terms {
        let mut term = c.clone();
        for i in 0..f.arity {
            term = term.mul(&interval_character(reg, &x.coordinate(i))?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Integral of a top-degree form over the cube `[0,N]^n`.
pub fn integrate_cube(form: &Form) -> Result<Period> {
    if form.degree != form.ambient {
        return Err(Error::Domain(format!(
            "cube integral needs a top-degree form, got degree {} on dimension {}",
            form.degree, form.ambient
        )));
    }
    match form.terms.values().next() {
        None => Ok(Period::zero(&form.reg)),
        Some(f) => integrate_cube_function(f),
    }
}

fn drop_coordinate(x: &Character, i: usize) -> Character {
    let coords = x.coords().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, c)| c.clone()).collect();
    Character::from_coords(coords)
}

fn ratio(x: &Character, i: usize, j: usize) -> Result<Character> {
    x.coordinate(i).mul(&x.coordinate(j).inv())
}

/// Pairs `(i, j)`, `i < j`, whose ratio `x^{(i)}/x^{(j)}` is not torsion.
pub fn admissible_pairs(reg: &Reg, x: &Character) -> Result<Vec<(usize, usize)>> {
    let n = x.arity();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !ratio(x, i, j)?.is_torsion(reg) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `∫_{NΔ^n} x(t_0..t_n) dt'_{n,h}` for a character of arity `n+1`.
///
/// When every ratio `x^{(i)}/x^{(j)}` is torsion this is the base value;
/// otherwise the recursion through the pair `pair` (default: the
/// lexicographically least admissible pair) is used at the top level:
/// `(−1)^{h+i+1} ∫_{NΔ^{n−1}} (x'_{(i)} − x'_{(j)}) / log(x^{(i)}/x^{(j)}) dt'_{n−1,i}`.
pub fn simplex_character(
    reg: &Reg,
    x: &Character,
    h: usize,
    base: SimplexBase,
    pair: Option<(usize, usize)>,
) -> Result<Period> {
    let n = x.arity() - 1;
    let big = big_n(reg);
    if n == 0 {
        let v = x.evaluate(reg, &[qi(big)])?;
        return Ok(Period::constant(reg, &v));
    }
    let pairs = admissible_pairs(reg, x)?;
    let chosen = match pair {
        Some(p) => {
            if !pairs.contains(&p) {
                return Err(Error::Domain(format!("pair {p:?} is not admissible")));
            }
            Some(p)
        }
        None => pairs.first().copied(),
    };
    let Some((i, j)) = chosen else {
        let sign = if h % 2 == 0 { 1 } else { -1 };
        let coeff = Q::new(BigInt::from(sign) * BigInt::from(big).pow(n as u32), factorial(n));
        let mut out = Period::rational(reg, &coeff);
        if base == SimplexBase::WithValue {
            out = out.scale(&x.coordinate(0).evaluate(reg, &[qi(big)])?);
        }
        return Ok(out);
    };
    let a = simplex_character(reg, &drop_coordinate(x, i), i, base, None)?;
    let b = simplex_character(reg, &drop_coordinate(x, j), i, base, None)?;
    let sign = if (h + i + 1) % 2 == 0 { 1 } else { -1 };
    a.sub(&b).scale_int(sign).divide_by_log(&ratio(x, i, j)?)
}

/// Integral of a top-degree form over `NΔ^n` (ambient dimension `n+1`).
pub fn integrate_simplex(form: &Form) -> Result<Period> {
    integrate_simplex_with(form, SimplexBase::WithValue)
}

/// As [`integrate_simplex`] with a chosen base case.
pub fn integrate_simplex_with(form: &Form, base: SimplexBase) -> Result<Period> {
    if form.ambient == 0 || form.degree + 1 != form.ambient {
        return Err(Error::Domain(format!(
            "simplex integral needs an n-form on R^(n+1), got degree {} on R^{}",
            form.degree, form.ambient
        )));
    }
    let reg = &form.reg;
    let mut acc = Period::zero(reg);
    for (hs, f) in &form.terms {
        let h = (0..form.ambient).find(|i| !hs.contains(i)).expect("one index is missing");
        for (x, c) in &f.terms {
            acc = acc.add(&c.mul(&simplex_character(reg, x, h, base, None)?));
        }
    }
    Ok(acc)
}

/// Both sides of a Stokes identity.
#[derive(Clone, Debug)]
pub struct StokesReport {
    pub lhs: Period,
    pub rhs: Period,
    pub pass: bool,
}

impl StokesReport {
    fn new(lhs: Period, rhs: Period) -> StokesReport {
        let pass = lhs.equals(&rhs);
        StokesReport { lhs, rhs, pass }
    }
}

/// Cubical Stokes: `∫_{[0,N]^{n+1}} dω = Σ_{i,σ} (−1)^{i+σ} ∫_{[0,N]^n} (∂^{(i,σ)})^* ω`
/// for an `n`-form `ω` on `R^{n+1}`.
pub fn stokes_cube(omega: &Form) -> Result<StokesReport> {
    let m = omega.ambient;
    if m == 0 || omega.degree + 1 != m {
        return Err(Error::Domain("Stokes needs an n-form on the (n+1)-cube".into()));
    }
    let big = big_n(&omega.reg);
    let lhs = integrate_cube(&omega.d()?)?;
    let mut rhs = Period::zero(&omega.reg);
    for i in 1..=m {
        for sigma in 0..=1u8 {
            let face = omega.pullback(&AffineMap::cube_face(m, i, sigma, big))?;
            let v = integrate_cube(&face)?;
            rhs = if (i + sigma as usize) % 2 == 0 { rhs.add(&v) } else { rhs.sub(&v) };
        }
    }
    Ok(StokesReport::new(lhs, rhs))
}

/// Simplicial Stokes: `∫_{NΔ^{n+1}} dω = Σ_i (−1)^i ∫_{NΔ^n} (∂^{(i)})^* ω`
/// for an `n`-form `ω` on `R^{n+2}`.
pub fn stokes_simplex(omega: &Form) -> Result<StokesReport> {
    let m = omega.ambient;
    if m < 2 || omega.degree + 2 != m {
        return Err(Error::Domain("Stokes needs an n-form on the ambient space of NΔ^(n+1)".into()));
    }
    let lhs = integrate_simplex(&omega.d()?)?;
    let mut rhs = Period::zero(&omega.reg);
    for i in 0..m {
        let face = omega.pullback(&AffineMap::simplex_face(m - 1, i))?;
        let v = integrate_simplex(&face)?;
        rhs = if i % 2 == 0 { rhs.add(&v) } else { rhs.sub(&v) };
    }
    Ok(StokesReport::new(lhs, rhs))
}

/// The fundamental theorem of calculus on `[0, N]`: `∫ f' dt` against `f(N) − f(0)`.
pub fn ftc_check(f: &PolyFunction) -> Result<StokesReport> {
    let g = PFunction::from_poly(f)?;
    let lhs = integrate_cube_function(&g.derivative(0))?;
    let reg = f.registry();
    let n = big_n(reg);
    let rhs = Period::constant(reg, &f.evaluate(&[qi(n)])?.sub(&f.evaluate(&[qi(0)])?));
    Ok(StokesReport::new(lhs, rhs))
}
