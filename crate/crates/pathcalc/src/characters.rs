//! Characters ("systems of roots") and the generator registry.
//!
//! A character of arity `n` assigns to every coordinate a formal product
//! `Π_g g^{q_g}` of finitely many registered generators with rational
//! exponents.  Evaluating at a rational point `t` is partial: the value
//! `Π b_g^{q_g t}` lies in the base field only when every exponent `q_g t`
//! is an integer (torsion generators only need a denominator prime to their
//! order).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::localfield::{parse_rational, Field, Scalar};
use crate::periods::Period;

/// Index of a generator inside its [`Registry`].
pub type GenId = usize;

/// A registered generator `g` with base value `b_g = g(1)`.
#[derive(Clone, Debug)]
pub struct Generator {
    name: String,
    base: Scalar,
    torsion: bool,
    order: Option<u64>,
}

impl Generator {
    /// A non-torsion generator with the given base value.
    pub fn free(name: &str, base: Scalar) -> Generator {
        Generator { name: name.to_string(), base, torsion: false, order: None }
    }

    /// A torsion generator: `base^order = 1`, `order` prime to `p`.
    pub fn torsion(name: &str, base: Scalar, order: u64) -> Generator {
        Generator { name: name.to_string(), base, torsion: true, order: Some(order) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Scalar {
        &self.base
    }

    pub fn is_torsion(&self) -> bool {
        self.torsion
    }

    pub fn order(&self) -> Option<u64> {
        self.order
    }

    fn valuation(&self) -> i64 {
        self.base.valuation().expect("generator bases are nonzero")
    }
}

/// A finite set of generators, including the distinguished `eps`
/// (a system of p-power roots of unity, base value `1`).
#[derive(Debug)]
pub struct Registry {
    field: Field,
    gens: Vec<Generator>,
    eps: GenId,
    log_p: bool,
}

/// Shared handle to a [`Registry`].
pub type Reg = Arc<Registry>;

impl Registry {
    /// Validates and freezes a registry.  `log_p` declares the optional
    /// period symbol `λ_P` (a chosen logarithm of `p`).
    pub fn new(field: &Field, gens: Vec<Generator>, log_p: bool) -> Result<Reg> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &gens {
            if g.name.is_empty() || !seen.insert(g.name.clone()) {
                return Err(Error::InvalidRegistry(format!("duplicate or empty name `{}`", g.name)));
            }
            if g.base.is_zero() {
                return Err(Error::InvalidRegistry(format!("generator `{}` has base value 0", g.name)));
            }
            if g.torsion {
                let m = g.order.ok_or_else(|| Error::InvalidRegistry(format!("torsion generator `{}` needs an order", g.name)))?;
                if m == 0 || (field.p() - 1) % m != 0 {
                    return Err(Error::InvalidRegistry(format!("order {m} of `{}` must divide p-1", g.name)));
                }
                if !g.base.pow(m as i64)?.approx_eq(&Scalar::one(field)) {
                    return Err(Error::InvalidRegistry(format!("`{}`^{m} != 1", g.name)));
                }
            }
        }
        let eps = gens
            .iter()
            .position(|g| g.name == "eps")
            .ok_or_else(|| Error::InvalidRegistry("a generator named `eps` is required".into()))?;
        if gens[eps].torsion || !gens[eps].base.is_one() {
            return Err(Error::InvalidRegistry("`eps` must be non-torsion with base value 1".into()));
        }
        Ok(Arc::new(Registry { field: field.clone(), gens, eps, log_p }))
    }

    /// The default registry: `eps`, `p` (base `p`), `q` (Tate parameter,
    /// base `q`), `1+a` (base `1+a`) and the torsion generator `mu`
    /// (Teichmüller lift of `2`, order `p−1`; trivial when `p = 2`).
    pub fn standard_with(field: &Field, a: &Scalar, q: &Scalar) -> Result<Reg> {
        let p = field.p();
        let mu = if p == 2 {
            Generator::torsion("mu", Scalar::one(field), 1)
        } else {
            Generator::torsion("mu", Scalar::teichmuller(field, &BigInt::from(2))?, multiplicative_order(2, p))
        };
        let gens = vec![
            Generator::free("eps", Scalar::one(field)),
            Generator::free("p", Scalar::from_i64(field, p as i64)),
            Generator::free("q", q.clone()),
            Generator::free("1+a", Scalar::one(field).add(a)),
            mu,
        ];
        Registry::new(field, gens, false)
    }

    /// [`Registry::standard_with`] with `a = q = p`.
    pub fn standard(field: &Field) -> Result<Reg> {
        let p = Scalar::from_i64(field, field.p() as i64);
        Registry::standard_with(field, &p, &p)
    }

    /// Returns a copy of this registry with the `λ_P` symbol switched on or off.
    pub fn with_log_p(&self, log_p: bool) -> Result<Reg> {
        Registry::new(&self.field, self.gens.clone(), log_p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id]
    }

    /// Id of the distinguished generator `eps`.
    pub fn eps(&self) -> GenId {
        self.eps
    }

    /// Looks a generator up by name (an underline combining mark is ignored).
    pub fn id(&self, name: &str) -> Result<GenId> {
        let clean: String = name.trim().chars().filter(|c| *c != '\u{0332}').collect();
        self.gens
            .iter()
            .position(|g| g.name == clean)
            .ok_or(Error::UnknownGenerator(clean))
    }

    /// Whether the `λ_P` symbol is declared.
    pub fn has_log_p(&self) -> bool {
        self.log_p
    }

    /// The period symbol id of `λ_P` (one past the last generator).
    pub fn log_p_symbol(&self) -> usize {
        self.gens.len()
    }

    /// Human-readable name of a period symbol.
    pub fn symbol_name(&self, sym: usize) -> String {
        if sym == self.gens.len() {
            return "λ_P".to_string();
        }
        let name = &self.gens[sym].name;
        match name.as_str() {
            "eps" => "λ_ε".to_string(),
            n if n.len() == 1 => format!("λ_{n}"),
            n => format!("λ_{{{n}}}"),
        }
    }

    /// JSON form accepted by [`Registry::from_json`] (bases as scalars).
    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .gens
            .iter()
            .map(|g| {
                let mut v = serde_json::json!({"name": g.name, "base": g.base.to_json(), "torsion": g.torsion});
                if let Some(m) = g.order {
                    v["order"] = serde_json::json!(m);
                }
                v
            })
            .collect();
        serde_json::json!({"generators": gens, "log_p": self.log_p})
    }

    /// Parses a registry file:
    /// `{"generators":[{"name":..,"base":<scalar>|{"teichmuller":r},"torsion":bool,"order":m}],"log_p":bool}`.
    pub fn from_json(field: &Field, value: &Value) -> Result<Reg> {
        let list = value
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::InvalidRegistry("missing `generators` array".into()))?;
        let mut gens = Vec::new();
        for item in list {
            let name = item
                .get("name")
                .and_then(|n| n.as_str())
                .ok_or_else(|| Error::InvalidRegistry("generator without a name".into()))?;
            let base_json = item.get("base").ok_or_else(|| Error::InvalidRegistry(format!("`{name}` has no base")))?;
            let base = match base_json.get("teichmuller") {
                Some(r) => {
                    let r = r.as_i64().ok_or_else(|| Error::InvalidRegistry("teichmuller residue must be an integer".into()))?;
                    Scalar::teichmuller(field, &BigInt::from(r))?
                }
                None => Scalar::from_json(field, base_json)?,
            };
            let torsion = item.get("torsion").and_then(|t| t.as_bool()).unwrap_or(false);
            gens.push(if torsion {
                let order = item
                    .get("order")
                    .and_then(|o| o.as_u64())
                    .ok_or_else(|| Error::InvalidRegistry(format!("torsion generator `{name}` needs an order")))?;
                Generator::torsion(name, base, order)
            } else {
                Generator::free(name, base)
            });
        }
        let log_p = value.get("log_p").and_then(|l| l.as_bool()).unwrap_or(false);
        Registry::new(field, gens, log_p)
    }
}

fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// The exponent data of one coordinate: generator ↦ nonzero rational exponent.
pub type Exponents = BTreeMap<GenId, BigRational>;

/// An element of the character module of arity `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    coords: Vec<Exponents>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Character {
    /// The identity character of arity `n`.
    pub fn identity(n: usize) -> Character {
        Character { coords: vec![Exponents::new(); n] }
    }

    /// Builds a character from per-coordinate exponent maps (zeros are dropped).
    pub fn from_coords(coords: Vec<Exponents>) -> Character {
        let coords = coords
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, q)| !q.is_zero()).collect())
            .collect();
        Character { coords }
    }

    /// The arity-1 character `g^q`.
    pub fn generator(g: GenId, q: BigRational) -> Character {
        Character::from_coords(vec![Exponents::from([(g, q)])])
    }

    /// The arity-`n` character with `g^q` in coordinate `i` and identity elsewhere.
    pub fn generator_at(n: usize, i: usize, g: GenId, q: BigRational) -> Character {
        let mut c = Character::identity(n);
        if !q.is_zero() {
            c.coords[i].insert(g, q);
        }
        c
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Exponents] {
        &self.coords
    }

    /// The `i`-th coordinate `x^{(i)}` as an arity-1 character.
    pub fn coordinate(&self, i: usize) -> Character {
        Character { coords: vec![self.coords[i].clone()] }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_empty())
    }

    fn check(&self, other: &Character) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(())
    }

    /// Product (exponent addition).
    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let mut m = a.clone();
                for (g, q) in b {
                    let e = m.entry(*g).or_insert_with(BigRational::zero);
                    *e += q;
                }
                m
            })
            .collect();
        Ok(Character::from_coords(coords))
    }

    /// Inverse (exponent negation).
    pub fn inv(&self) -> Character {
        self.pow(&rat(-1))
    }

    /// `x^q`, i.e. `t ↦ x(qt)`: all exponents scaled by `q`.
    pub fn pow(&self, q: &BigRational) -> Character {
        Character::from_coords(
            self.coords
                .iter()
                .map(|m| m.iter().map(|(g, e)| (*g, e * q)).collect())
                .collect(),
        )
    }

    /// Concatenates coordinates (`x ⊗ y`).
    pub fn concat(&self, other: &Character) -> Character {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Character { coords }
    }

    /// Pulls the character back along `s ↦ A s` (linear part only):
    /// coordinate `i` of the result is `Π_j (x^{(j)})^{A_{j,i}}`.
    pub fn pullback_linear(&self, a: &[Vec<BigRational>]) -> Character {
        let n = a.first().map_or(0, |row| row.len());
        let mut coords = vec![Exponents::new(); n];
        for (j, row) in a.iter().enumerate() {
            for (i, aji) in row.iter().enumerate() {
                if aji.is_zero() {
                    continue;
                }
                for (g, q) in &self.coords[j] {
                    *coords[i].entry(*g).or_insert_with(BigRational::zero) += q * aji;
                }
            }
        }
        Character::from_coords(coords)
    }

    /// Value `x(t) = Π_{i,g} b_g^{q_{i,g} t_i}` in the base field.
    pub fn evaluate(&self, reg: &Registry, t: &[BigRational]) -> Result<Scalar> {
        if t.len() != self.arity() {
            return Err(Error::ArityMismatch(self.arity(), t.len()));
        }
        let mut acc = Scalar::one(reg.field());
        for (m, ti) in self.coords.iter().zip(t) {
            for (g, q) in m {
                let e = q * ti;
                if e.is_zero() {
                    continue;
                }
                let gen = reg.generator(*g);
                let val = if gen.torsion {
                    let order = BigInt::from(gen.order.unwrap_or(1));
                    let d = e.denom().clone();
                    if !d.gcd(&order).is_one() {
                        return Err(Error::NotRepresentable(format!("{}^({e}) needs a root of order {d}", gen.name)));
                    }
                    let inv = crate::localfield::mod_inverse(&d, &order);
                    let k = (e.numer() * inv).mod_floor(&order);
                    gen.base.pow(k.to_i64().expect("small order"))?
                } else {
                    if !e.is_integer() {
                        return Err(Error::NotRepresentable(format!("{}^({e})", gen.name)));
                    }
                    let k = e.to_integer().to_i64().ok_or_else(|| Error::Domain("exponent too large".into()))?;
                    gen.base.pow(k)?
                };
                acc = acc.mul(&val);
            }
        }
        Ok(acc)
    }

    /// Value at an integer point.
    pub fn evaluate_int(&self, reg: &Registry, t: &[i64]) -> Result<Scalar> {
        let t: Vec<BigRational> = t.iter().map(|x| rat(*x)).collect();
        self.evaluate(reg, &t)
    }

    /// The valuation weight of coordinate `i`: `Σ_g q_{i,g} v(b_g)`, so
    /// that `|x^{(i)}(s)| = p^{−s·weight}`.
    pub fn weight(&self, reg: &Registry, i: usize) -> BigRational {
        self.coords[i]
            .iter()
            .map(|(g, q)| q * rat(reg.generator(*g).valuation()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// All coordinate weights.
    pub fn weights(&self, reg: &Registry) -> Vec<BigRational> {
        (0..self.arity()).map(|i| self.weight(reg, i)).collect()
    }

    /// The exponent `e` with `|x(t)| = p^{−e}`.
    pub fn norm_exponent_at(&self, reg: &Registry, t: &[BigRational]) -> BigRational {
        (0..self.arity())
            .map(|i| self.weight(reg, i) * &t[i])
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// True iff every non-torsion exponent vanishes (arity 1).
    pub fn is_torsion(&self, reg: &Registry) -> bool {
        self.coords
            .iter()
            .all(|m| m.keys().all(|g| reg.generator(*g).torsion))
    }

    /// `log x = Σ_g q_g λ_g` over non-torsion generators (arity 1).
    pub fn log(&self, reg: &Reg) -> Period {
        let mut form = BTreeMap::new();
        for m in &self.coords {
            for (g, q) in m {
                if !reg.generator(*g).torsion {
                    *form.entry(*g).or_insert_with(BigRational::zero) += q;
                }
            }
        }
        Period::linear(reg, &form)
    }

    /// The rational coefficients of `log x` as a linear form in the symbols.
    pub fn log_form(&self, reg: &Registry) -> BTreeMap<usize, BigRational> {
        let mut form = BTreeMap::new();
        for m in &self.coords {
            for (g, q) in m {
                if !reg.generator(*g).torsion {
                    *form.entry(*g).or_insert_with(BigRational::zero) += q;
                }
            }
        }
        form.retain(|_, q: &mut BigRational| !q.is_zero());
        form
    }

    /// Closedness: `x(N_k) = 1` (arity 1).
    pub fn is_closed(&self, reg: &Registry) -> Result<bool> {
        let n = reg.field().n_k() as i64;
        Ok(self.evaluate_int(reg, &[n])?.approx_eq(&Scalar::one(reg.field())))
    }

    /// Applies a Galois action (see [`GaloisAction`]).
    pub fn galois_twist(&self, reg: &Registry, action: &GaloisAction) -> Character {
        let eps = reg.eps();
        Character::from_coords(
            self.coords
                .iter()
                .map(|m| {
                    let mut out = m.clone();
                    let mut qe = m.get(&eps).cloned().unwrap_or_else(BigRational::zero) * &action.u;
                    for (g, c) in &action.cocycle {
                        if let Some(q) = m.get(g) {
                            qe += q * c;
                        }
                    }
                    out.insert(eps, qe);
                    out
                })
                .collect(),
        )
    }

    /// Compact text: `eps^1/4*mu^3|p^-1` (coordinates separated by `|`, `1` for identity).
    pub fn to_text(&self, reg: &Registry) -> String {
        self.coords
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter()
                        .map(|(g, q)| {
                            let name = reg.generator(*g).name();
                            if q.is_one() {
                                name.to_string()
                            } else {
                                format!("{name}^{q}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Parses the compact text form (see [`Character::to_text`]); braces
    /// around exponents (`p^{-1}`) and underline marks are accepted.
    pub fn parse_text(reg: &Registry, s: &str) -> Result<Character> {
        let clean: String = s.chars().filter(|c| *c != '\u{0332}' && *c != '{' && *c != '}').collect();
        let mut coords = Vec::new();
        for part in clean.split('|') {
            let part = part.trim();
            let mut m = Exponents::new();
            if part != "1" && !part.is_empty() {
                for factor in part.split('*') {
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => (n, parse_rational(e).ok_or_else(|| Error::Domain(format!("bad exponent `{e}`")))?),
                        None => (factor, rat(1)),
                    };
                    let g = reg.id(name)?;
                    *m.entry(g).or_insert_with(BigRational::zero) += e;
                }
            }
            coords.push(m);
        }
        Ok(Character::from_coords(coords))
    }

    /// JSON: `{"coords":[{"eps":"1/4","p":"0"}, ...]}`.
    pub fn to_json(&self, reg: &Registry) -> Value {
        let coords: Vec<Value> = self
            .coords
            .iter()
            .map(|m| {
                let mut obj = Map::new();
                for (g, q) in m {
                    obj.insert(reg.generator(*g).name().to_string(), Value::String(q.to_string()));
                }
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "coords": coords })
    }

    /// Parses JSON (object form) or a compact text string.
    pub fn from_json(reg: &Registry, value: &Value) -> Result<Character> {
        match value {
            Value::String(s) => Character::parse_text(reg, s),
            Value::Object(obj) => {
                let coords = obj
                    .get("coords")
                    .and_then(|c| c.as_array())
                    .ok_or_else(|| Error::Domain("character object needs `coords`".into()))?;
                let mut out = Vec::new();
                for c in coords {
                    let map = c.as_object().ok_or_else(|| Error::Domain("coordinate must be an object".into()))?;
                    let mut m = Exponents::new();
                    for (name, e) in map {
                        let q = match e {
                            Value::String(s) => parse_rational(s),
                            Value::Number(n) => n.as_i64().map(rat),
                            _ => None,
                        }
                        .ok_or_else(|| Error::Domain(format!("bad exponent for `{name}`")))?;
                        m.insert(reg.id(name)?, q);
                    }
                    out.push(m);
                }
                Ok(Character::from_coords(out))
            }
            other => Err(Error::Domain(format!("cannot read a character from {other}"))),
        }
    }
}

/// An element of the Galois group acting on characters through the
/// cyclotomic unit `u` (on `eps`) and Kummer cocycle integers `c_g`
/// (`g ↦ eps^{c_g} g`).  Coefficients in `Q_p` are fixed.
#[derive(Clone, Debug)]
pub struct GaloisAction {
    pub u: BigRational,
    pub cocycle: BTreeMap<GenId, BigRational>,
}

impl GaloisAction {
    /// The trivial action.
    pub fn trivial() -> GaloisAction {
        GaloisAction { u: rat(1), cocycle: BTreeMap::new() }
    }

    /// The cyclotomic action with unit `u` and no Kummer part.
    pub fn cyclotomic(u: i64) -> GaloisAction {
        GaloisAction { u: rat(u), cocycle: BTreeMap::new() }
    }

    /// Validates that `u` is a p-adic unit.
    pub fn validate(&self, p: u64) -> Result<()> {
        let p = BigInt::from(p);
        if self.u.is_zero() || self.u.numer().is_multiple_of(&p) || self.u.denom().is_multiple_of(&p) {
            return Err(Error::Domain(format!("cyclotomic exponent {} is not a p-adic unit", self.u)));
        }
        Ok(())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|m| {
                let inner: Vec<String> = m.iter().map(|(g, q)| format!("g{g}^{q}")).collect();
                if inner.is_empty() {
                    "1".into()
                } else {
                    inner.join("*")
                }
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Convenience: the rational `a/b`.
pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::FieldConfig;

    fn setup() -> Reg {
        Registry::standard(&FieldConfig::new(5, 40).unwrap()).unwrap()
    }

    fn ch(reg: &Reg, s: &str) -> Character {
        Character::parse_text(reg, s).unwrap()
    }

    #[test]
    fn combine_examples() {
        let reg = setup();
        let e = ch(&reg, "eps");
        assert!(e.mul(&e.inv()).unwrap().is_identity());
        assert_eq!(e.pow(&q(1, 4)), ch(&reg, "eps^1/4"));
        let pq = ch(&reg, "p").mul(&ch(&reg, "q")).unwrap();
        assert_eq!(pq.coords()[0].len(), 2);
        assert!(matches!(ch(&reg, "p").mul(&ch(&reg, "p|q")), Err(Error::ArityMismatch(1, 2))));
    }

    #[test]
    fn evaluate_examples() {
        let reg = setup();
        let v = ch(&reg, "p").evaluate_int(&reg, &[3]).unwrap();
        assert!(v.approx_eq(&Scalar::from_i64(reg.field(), 125)));
        assert!(ch(&reg, "eps^1/4").evaluate_int(&reg, &[4]).unwrap().is_one());
        assert!(matches!(ch(&reg, "eps^1/4").evaluate_int(&reg, &[1]), Err(Error::NotRepresentable(_))));
        // Torsion: mu^{1/3}(1) is the unique cube root inside μ_4, i.e. mu^3.
        let m13 = ch(&reg, "mu^1/3").evaluate_int(&reg, &[1]).unwrap();
        assert!(m13.approx_eq(&ch(&reg, "mu^3").evaluate_int(&reg, &[1]).unwrap()));
        assert!(ch(&reg, "mu^1/2").evaluate_int(&reg, &[1]).is_err());
    }

    #[test]
    fn norm_exponent_examples() {
        let reg = setup();
        let one = [q(1, 1)];
        assert_eq!(ch(&reg, "p").norm_exponent_at(&reg, &one), q(1, 1));
        assert_eq!(ch(&reg, "eps").norm_exponent_at(&reg, &[q(7, 3)]), q(0, 1));
        assert_eq!(ch(&reg, "p^-1").norm_exponent_at(&reg, &[q(4, 1)]), q(-4, 1));
    }

    #[test]
    fn torsion_and_closedness() {
        let reg = setup();
        assert!(ch(&reg, "mu").is_torsion(&reg));
        assert!(!ch(&reg, "eps").is_torsion(&reg));
        assert!(ch(&reg, "eps^0*mu^3").is_torsion(&reg));
        assert!(ch(&reg, "eps^1/4").is_closed(&reg).unwrap());
        assert!(!ch(&reg, "p").is_closed(&reg).unwrap());
        assert!(ch(&reg, "mu").is_closed(&reg).unwrap());
    }

    #[test]
    fn log_examples() {
        let reg = setup();
        let l = ch(&reg, "eps^2*p^3").log(&reg);
        let expected = Period::symbol(&reg, reg.eps())
            .scale_int(2)
            .add(&Period::symbol(&reg, reg.id("p").unwrap()).scale_int(3));
        assert!(l.equals(&expected));
        assert!(ch(&reg, "mu").log(&reg).is_zero());
        assert!(Character::identity(1).log(&reg).is_zero());
    }

    #[test]
    fn text_and_json_round_trip() {
        let reg = setup();
        let c = ch(&reg, "eps^1/4*mu^3|p̲^{-1}");
        assert_eq!(c.to_text(&reg), "eps^1/4*mu^3|p^-1");
        assert_eq!(Character::from_json(&reg, &c.to_json(&reg)).unwrap(), c);
        assert!(matches!(Character::parse_text(&reg, "zeta"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn p2_registry_has_trivial_mu() {
        let reg = Registry::standard(&FieldConfig::new(2, 40).unwrap()).unwrap();
        assert!(ch(&reg, "mu").evaluate_int(&reg, &[1]).unwrap().is_one());
    }
}
