//! The ring `k_S` of finite character sums on a polytope.
//!
//! A [`PolyFunction`] on `S` is stored in *normal form*: a finite map from
//! characters on the coordinates of the thick representative `T` of `S` to
//! nonzero coefficients.  Because characters are linearly independent on a
//! full-dimensional polytope, the normal form is unique, and equality of
//! functions is equality of normal forms (to scalar precision).
//!
//! Truncated overconvergent series carry an optional [`TailCertificate`]
//! bounding the Gauss-norm exponent of every omitted term.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::characters::{Character, GaloisAction, Reg};
use crate::error::{Error, Result};
use crate::linalg::{qi, Q};
use crate::localfield::Scalar;
use crate::polytope::{AffineMap, Polytope, ThickRep};

/// A polytope together with its registry and thick representative.
#[derive(Debug)]
pub struct Domain {
    reg: Reg,
    s: Polytope,
    rep: ThickRep,
}

/// Shared handle to a [`Domain`].
pub type Dom = Arc<Domain>;

impl Domain {
    /// Builds the domain of functions on `s`.
    pub fn new(reg: &Reg, s: Polytope) -> Dom {
        let rep = s.thick_representative();
        Arc::new(Domain { reg: reg.clone(), s, rep })
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    /// The polytope `S`.
    pub fn polytope(&self) -> &Polytope {
        &self.s
    }

    /// The thick representative of `S`.
    pub fn thick(&self) -> &ThickRep {
        &self.rep
    }

    /// Dimension of `S` (= arity of normal-form characters).
    pub fn dim(&self) -> usize {
        self.rep.t.ambient_dim()
    }

    fn same(&self, other: &Domain) -> bool {
        std::ptr::eq(self, other) || self.s == other.s
    }
}

/// Certificate that every omitted term of a truncated series has Gauss-norm
/// exponent at least `e_tail` (overconvergence radius `delta`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCertificate {
    pub delta: Q,
    pub e_tail: Q,
}

/// Pulls the character `x` (on `R^d`) back along the affine map `phi`
/// (`R^{d'} → R^d`): `x(φ(u)) = x(φ(0)) · (x∘lin φ)(u)`.
pub fn pullback_character(reg: &Reg, x: &Character, phi: &AffineMap) -> Result<(Scalar, Character)> {
    let c = x.evaluate(reg, phi.translation())?;
    let lin = if phi.target_dim() == 0 {
        Character::identity(phi.source_dim())
    } else {
        x.pullback_linear(phi.matrix())
    };
    Ok((c, lin))
}

/// An element of `k_S` (optionally a truncation of an overconvergent series).
#[derive(Clone)]
pub struct PolyFunction {
    dom: Dom,
    terms: BTreeMap<Character, Scalar>,
    tail: Option<TailCertificate>,
}

fn add_term(terms: &mut BTreeMap<Character, Scalar>, x: Character, c: Scalar) {
    match terms.get_mut(&x) {
        Some(e) => {
            let s = e.add(&c);
            if s.is_zero() {
                terms.remove(&x);
            } else {
                *e = s;
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(x, c);
            }
        }
    }
}

fn min_tail(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PolyFunction {
    /// The zero function.
    pub fn zero(dom: &Dom) -> PolyFunction {
        PolyFunction { dom: dom.clone(), terms: BTreeMap::new(), tail: None }
    }

    /// A constant function.
    pub fn constant(dom: &Dom, c: &Scalar) -> PolyFunction {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, Character::identity(dom.dim()), c.clone());
        PolyFunction { dom: dom.clone(), terms, tail: None }
    }

    /// The constant `1`.
    pub fn one(dom: &Dom) -> PolyFunction {
        PolyFunction::constant(dom, &Scalar::one(dom.reg.field()))
    }

    /// Builds a function from normal-form terms (characters on `T`).
    pub fn from_terms(dom: &Dom, terms: Vec<(Character, Scalar)>) -> Result<PolyFunction> {
        let mut map = BTreeMap::new();
        for (x, c) in terms {
            if x.arity() != dom.dim() {
                return Err(Error::ArityMismatch(x.arity(), dom.dim()));
            }
            add_term(&mut map, x, c);
        }
        Ok(PolyFunction { dom: dom.clone(), terms: map, tail: None })
    }

    /// Builds a function from terms written in the ambient coordinates of
    /// `S`, normalising through the thick representative.
    pub fn from_ambient(dom: &Dom, terms: Vec<(Character, Scalar)>) -> Result<PolyFunction> {
        let mut map = BTreeMap::new();
        for (x, c) in terms {
            if x.arity() != dom.s.ambient_dim() {
                return Err(Error::ArityMismatch(x.arity(), dom.s.ambient_dim()));
            }
            let (v, y) = pullback_character(&dom.reg, &x, &dom.rep.a_inv)?;
            add_term(&mut map, y, c.mul(&v));
        }
        Ok(PolyFunction { dom: dom.clone(), terms: map, tail: None })
    }

    /// A single term `c · x` in ambient coordinates.
    pub fn monomial(dom: &Dom, x: &Character, c: &Scalar) -> Result<PolyFunction> {
        PolyFunction::from_ambient(dom, vec![(x.clone(), c.clone())])
    }

    /// Attaches a tail certificate.
    pub fn with_tail(mut self, tail: Option<TailCertificate>) -> PolyFunction {
        self.tail = tail;
        self
    }

    pub fn domain(&self) -> &Dom {
        &self.dom
    }

    pub fn registry(&self) -> &Reg {
        &self.dom.reg
    }

    /// Normal-form terms (characters on the thick coordinates).
    pub fn terms(&self) -> &BTreeMap<Character, Scalar> {
        &self.terms
    }

    pub fn tail(&self) -> Option<&TailCertificate> {
        self.tail.as_ref()
    }

    /// Zero to precision (ignoring any tail).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The ambient representation `Σ f_x (x ∘ a)` on the coordinates of `S`.
    pub fn ambient_terms(&self) -> Result<Vec<(Character, Scalar)>> {
        let mut map = BTreeMap::new();
        for (x, c) in &self.terms {
            let (v, y) = pullback_character(&self.dom.reg, x, &self.dom.rep.a)?;
            add_term(&mut map, y, c.mul(&v));
        }
        Ok(map.into_iter().collect())
    }

    fn check(&self, other: &PolyFunction) -> Result<()> {
        if !self.dom.same(&other.dom) {
            return Err(Error::PolytopeMismatch);
        }
        Ok(())
    }

    /// Sum.
    pub fn add(&self, other: &PolyFunction) -> Result<PolyFunction> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (x, c) in &other.terms {
            add_term(&mut terms, x.clone(), c.clone());
        }
        let tail = min_tail(self.tail.as_ref().map(|t| t.e_tail.clone()), other.tail.as_ref().map(|t| t.e_tail.clone()));
        Ok(PolyFunction { dom: self.dom.clone(), terms, tail: self.merge_tail(other, tail) })
    }

    fn merge_tail(&self, other: &PolyFunction, e: Option<Q>) -> Option<TailCertificate> {
        e.map(|e_tail| {
            let delta = match (&self.tail, &other.tail) {
                (Some(a), Some(b)) => a.delta.clone().max(b.delta.clone()),
                (Some(a), None) => a.delta.clone(),
                (None, Some(b)) => b.delta.clone(),
                (None, None) => Q::one(),
            };
            TailCertificate { delta, e_tail }
        })
    }

    /// Negation.
    pub fn neg(&self) -> PolyFunction {
        PolyFunction {
            dom: self.dom.clone(),
            terms: self.terms.iter().map(|(x, c)| (x.clone(), c.neg())).collect(),
            tail: self.tail.clone(),
        }
    }

    /// Difference.
    pub fn sub(&self, other: &PolyFunction) -> Result<PolyFunction> {
        self.add(&other.neg())
    }

    /// Product (tails combined by `min(E_f + ‖g‖, E_g + ‖f‖, E_f + E_g)`).
    pub fn mul(&self, other: &PolyFunction) -> Result<PolyFunction> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                add_term(&mut terms, x.mul(y)?, c.mul(d));
            }
        }
        let ef = self.tail.as_ref().map(|t| t.e_tail.clone());
        let eg = other.tail.as_ref().map(|t| t.e_tail.clone());
        let gf = self.gauss();
        let gg = other.gauss();
        let plus = |a: &Option<Q>, b: &Option<Q>| -> Option<Q> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            }
        };
        let tail = match (&ef, &eg) {
            (None, None) => None,
            _ => {
                let mut cands = Vec::new();
                if ef.is_some() {
                    cands.push(plus(&ef, &gg).or_else(|| ef.clone()));
                }
                if eg.is_some() {
                    cands.push(plus(&eg, &gf).or_else(|| eg.clone()));
                }
                if ef.is_some() && eg.is_some() {
                    cands.push(plus(&ef, &eg));
                }
                cands.into_iter().flatten().min()
            }
        };
        Ok(PolyFunction { dom: self.dom.clone(), terms, tail: self.merge_tail(other, tail) })
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Scalar) -> PolyFunction {
        let mut terms = BTreeMap::new();
        for (x, d) in &self.terms {
            add_term(&mut terms, x.clone(), d.mul(c));
        }
        let tail = self.tail.as_ref().map(|t| TailCertificate {
            delta: t.delta.clone(),
            e_tail: &t.e_tail + c.valuation_bound().map_or(qi(0), qi),
        });
        PolyFunction { dom: self.dom.clone(), terms, tail }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, k: u32) -> Result<PolyFunction> {
        let mut acc = PolyFunction::one(&self.dom);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Equality of normal forms to precision.
    pub fn equals(&self, other: &PolyFunction) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Gauss-norm exponent of a single term `c·x`: `v(c) + min_vertices Σ w_i u_i`.
    pub fn term_exponent(&self, x: &Character, c: &Scalar) -> Q {
        let w = x.weights(&self.dom.reg);
        let vmin = self
            .dom
            .rep
            .t
            .vertices()
            .iter()
            .map(|u| w.iter().zip(u).fold(qi(0), |acc, (a, b)| acc + a * b))
            .min()
            .expect("polytopes have vertices");
        qi(c.valuation_bound().unwrap_or(0)) + vmin
    }

    /// Gauss-norm exponent `e` with `‖f‖ = p^{−e}`; `None` for zero (= +∞).
    pub fn gauss(&self) -> Option<Q> {
        self.terms.iter().map(|(x, c)| self.term_exponent(x, c)).min()
    }

    /// Evaluation `Σ f_x x(t)` at an ambient point (the `i_u` seminorm's value).
    pub fn evaluate(&self, t: &[Q]) -> Result<Scalar> {
        if t.len() != self.dom.s.ambient_dim() {
            return Err(Error::ArityMismatch(t.len(), self.dom.s.ambient_dim()));
        }
        let u = self.dom.rep.a.apply(t);
        let mut acc = Scalar::zero(self.dom.reg.field());
        for (x, c) in &self.terms {
            acc = acc.add(&c.mul(&x.evaluate(&self.dom.reg, &u)?));
        }
        Ok(acc)
    }

    /// The `i_p` seminorm exponent at an ambient point: `min_x (v(f_x) + e_x(t))`.
    pub fn ip_exponent(&self, t: &[Q]) -> Option<Q> {
        let u = self.dom.rep.a.apply(t);
        self.terms
            .iter()
            .map(|(x, c)| qi(c.valuation_bound().unwrap_or(0)) + x.norm_exponent_at(&self.dom.reg, &u))
            .min()
    }

    /// Pullback `f ∘ map` to the domain `target`, where `map` sends the
    /// ambient space of `target` into that of `S` and `map(target) ⊂ S`.
    pub fn pullback(&self, map: &AffineMap, target: &Dom) -> Result<PolyFunction> {
        if map.source_dim() != target.s.ambient_dim() || map.target_dim() != self.dom.s.ambient_dim() {
            return Err(Error::DimensionMismatch("pullback map does not match the domains".into()));
        }
        if !target.s.vertices().iter().all(|v| self.dom.s.contains(&map.apply(v))) {
            return Err(Error::Domain("the map does not send the target polytope into S".into()));
        }
        let phi = self.dom.rep.a.compose(map)?.compose(&target.rep.a_inv)?;
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            let (v, y) = pullback_character(&self.dom.reg, x, &phi)?;
            add_term(&mut terms, y, c.mul(&v));
        }
        Ok(PolyFunction { dom: target.clone(), terms, tail: self.tail.clone() })
    }

    /// Restriction to a subpolytope of `S`.
    pub fn restrict(&self, piece: &Dom) -> Result<PolyFunction> {
        self.pullback(&AffineMap::identity(self.dom.s.ambient_dim()), piece)
    }

    /// The function `f ⊗ g` on `S₁ × S₂`.
    pub fn tensor(&self, other: &PolyFunction) -> Result<PolyFunction> {
        let (s1, s2) = (&self.dom.s, &other.dom.s);
        let (n1, n2) = (s1.ambient_dim(), s2.ambient_dim());
        let mut ineqs = Vec::new();
        for i in s1.ineqs() {
            let mut a = i.a.clone();
            a.extend(std::iter::repeat(num_bigint::BigInt::zero()).take(n2));
            ineqs.push(crate::polytope::Ineq { a, b: i.b.clone() });
        }
        for i in s2.ineqs() {
            let mut a: Vec<num_bigint::BigInt> = std::iter::repeat(num_bigint::BigInt::zero()).take(n1).collect();
            a.extend(i.a.iter().cloned());
            ineqs.push(crate::polytope::Ineq { a, b: i.b.clone() });
        }
        let prod = Polytope::new(n1 + n2, ineqs)?;
        let dom = Domain::new(&self.dom.reg, prod);
        let mut terms = Vec::new();
        for (x, c) in self.ambient_terms()? {
            for (y, d) in other.ambient_terms()? {
                terms.push((x.concat(&y), c.mul(&d)));
            }
        }
        PolyFunction::from_ambient(&dom, terms)
    }

    /// The involution `f* = Σ f_{x^{-1}} x(−m) x` on `[0, m]`, i.e. the
    /// pullback along `t ↦ m − t`.
    pub fn involution(&self) -> Result<PolyFunction> {
        let s = &self.dom.s;
        let vs = s.vertices();
        if s.ambient_dim() != 1 || vs.len() != 2 || !vs[0][0].is_zero() || !vs[1][0].is_integer() {
            return Err(Error::Domain("the involution is defined on intervals [0, m] with m an integer".into()));
        }
        let m = vs[1][0].clone();
        self.pullback(&AffineMap::reflection(&m), &self.dom)
    }

    /// The Galois twist: characters transformed, coefficients fixed.
    pub fn galois_twist(&self, action: &GaloisAction) -> PolyFunction {
        let mut terms = BTreeMap::new();
        for (x, c) in &self.terms {
            add_term(&mut terms, x.galois_twist(&self.dom.reg, action), c.clone());
        }
        PolyFunction { dom: self.dom.clone(), terms, tail: self.tail.clone() }
    }

    /// Decomposes a unit as `f = a · x · (1 + g)` with `‖g‖ < 1`; `None`
    /// when no term strictly dominates (ties are reported as non-units).
    pub fn unit_decompose(&self) -> Option<(Scalar, Character, PolyFunction)> {
        for (xh, ch) in &self.terms {
            let Ok(inv) = ch.invert() else { continue };
            let xinv = xh.inv();
            let mut terms = BTreeMap::new();
            for (x, c) in &self.terms {
                add_term(&mut terms, x.mul(&xinv).ok()?, c.mul(&inv));
            }
            add_term(&mut terms, Character::identity(self.dom.dim()), Scalar::one(self.dom.reg.field()).neg());
            let mut g = PolyFunction { dom: self.dom.clone(), terms, tail: None };
            if let Some(t) = &self.tail {
                let shift = g.term_exponent(&xinv, &inv);
                g.tail = Some(TailCertificate { delta: t.delta.clone(), e_tail: &t.e_tail + shift });
            }
            let dominant = match (g.gauss(), g.tail.as_ref()) {
                (None, None) => true,
                (Some(e), None) => e > qi(0),
                (e, Some(t)) => e.is_none_or(|e| e > qi(0)) && t.e_tail > qi(0),
            };
            if dominant {
                return Some((ch.clone(), xh.clone(), g));
            }
        }
        None
    }

    /// The inverse of a unit by a geometric series with `budget + 1` terms.
    /// The result carries a tail certificate `(budget+1)·‖g‖ + ‖(a x)^{-1}‖`,
    /// which must reach the working precision relative to the leading part.
    pub fn invert_unit(&self, budget: u32) -> Result<PolyFunction> {
        let (a, x, g) = self
            .unit_decompose()
            .ok_or_else(|| Error::NotUnit("no strictly dominant term".into()))?;
        let m = self.dom.reg.field().precision() as i64;
        let eg = match g.gauss() {
            None if g.tail.is_none() => None,
            None => Some(g.tail.as_ref().unwrap().e_tail.clone()),
            Some(e) => Some(match &g.tail {
                Some(t) => e.min(t.e_tail.clone()),
                None => e,
            }),
        };
        let ainv = a.invert()?;
        let xinv = x.inv();
        let lead = PolyFunction::from_terms(&self.dom, vec![(xinv.clone(), ainv.clone())])?;
        let Some(eg) = eg else { return Ok(lead) };
        let tail_rel = qi(budget as i64 + 1) * &eg;
        if tail_rel < qi(m) {
            return Err(Error::BudgetTooSmall { got: tail_rel.to_string(), needed: m });
        }
        let lead_exp = lead.gauss().expect("nonzero");
        let cutoff = &tail_rel + &lead_exp;
        let neg_g = g.neg().with_tail(None);
        let mut sum = PolyFunction::one(&self.dom);
        let mut power = PolyFunction::one(&self.dom);
        for _ in 0..budget {
            power = power.mul(&neg_g)?;
            // Terms beyond the certified tail carry no information.
            power.terms.retain(|x, c| {
                let e = qi(c.valuation_bound().unwrap_or(0)) + min_weight(&self.dom, x);
                e < tail_rel
            });
            sum = sum.add(&power)?;
        }
        let mut out = sum.mul(&lead)?;
        out.tail = Some(TailCertificate { delta: Q::new(1.into(), (self.dom.reg.field().p() as i64).into()), e_tail: cutoff });
        Ok(out)
    }

    /// Inverse of a unit with the smallest budget meeting the precision.
    pub fn invert_unit_auto(&self) -> Result<PolyFunction> {
        let (_, _, g) = self
            .unit_decompose()
            .ok_or_else(|| Error::NotUnit("no strictly dominant term".into()))?;
        let m = self.dom.reg.field().precision() as i64;
        let budget = match g.gauss() {
            None => 0,
            Some(e) => {
                let need = (qi(m) / e).ceil().to_integer();
                let need: i64 = num_traits::ToPrimitive::to_i64(&need).unwrap_or(i64::MAX);
                (need - 1).max(0) as u32
            }
        };
        self.invert_unit(budget)
    }

    /// JSON: `{"polytope": .., "terms": [{"char": .., "coeff": ..}], "tail": ..}`
    /// with characters in the ambient coordinates of `S`.
    pub fn to_json(&self) -> Result<Value> {
        let reg = &self.dom.reg;
        let terms: Vec<Value> = self
            .ambient_terms()?
            .iter()
            .map(|(x, c)| json!({"char": x.to_text(reg), "coeff": c.to_json()}))
            .collect();
        let tail = match &self.tail {
            Some(t) => json!({"delta": t.delta.to_string(), "E": t.e_tail.to_string()}),
            None => Value::Null,
        };
        Ok(json!({"polytope": self.dom.s.to_json(), "terms": terms, "tail": tail}))
    }

    /// Parses the JSON form (the polytope may be a shape string such as `"cube:1:4"`).
    pub fn from_json(reg: &Reg, value: &Value) -> Result<PolyFunction> {
        let poly = value
            .get("polytope")
            .ok_or_else(|| Error::Domain("function needs a `polytope`".into()))?;
        let s = Polytope::from_json_or_shape(poly)?;
        let dom = Domain::new(reg, s);
        PolyFunction::from_json_on(&dom, value)
    }

    /// Parses the `terms`/`tail` part of the JSON form on a given domain.
    pub fn from_json_on(dom: &Dom, value: &Value) -> Result<PolyFunction> {
        let reg = &dom.reg;
        let list = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Domain("function needs a `terms` array".into()))?;
        let mut terms = Vec::new();
        for t in list {
            let x = Character::from_json(reg, t.get("char").ok_or_else(|| Error::Domain("term needs `char`".into()))?)?;
            let c = Scalar::from_json(reg.field(), t.get("coeff").unwrap_or(&json!(1)))?;
            terms.push((x, c));
        }
        let mut f = PolyFunction::from_ambient(dom, terms)?;
        if let Some(t) = value.get("tail").filter(|t| !t.is_null()) {
            let rat = |k: &str| -> Result<Q> {
                match t.get(k) {
                    Some(Value::String(s)) => crate::localfield::parse_rational(s),
                    Some(Value::Number(n)) => n.as_i64().map(qi),
                    _ => None,
                }
                .ok_or_else(|| Error::Domain(format!("tail needs a rational `{k}`")))
            };
            let delta = rat("delta")?;
            if delta <= qi(0) || delta >= qi(1) {
                return Err(Error::Domain("tail radius must lie in (0, 1)".into()));
            }
            f.tail = Some(TailCertificate { delta, e_tail: rat("E")? });
        }
        Ok(f)
    }

    /// Human-readable form `c·x + …` in ambient coordinates.
    pub fn to_text(&self) -> String {
        let reg = &self.dom.reg;
        let Ok(terms) = self.ambient_terms() else { return "<unrepresentable>".into() };
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(x, c)| if x.is_identity() { c.to_string() } else { format!("{c}·{}", x.to_text(reg)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn min_weight(dom: &Domain, x: &Character) -> Q {
    let w = x.weights(&dom.reg);
    dom.rep
        .t
        .vertices()
        .iter()
        .map(|u| w.iter().zip(u).fold(qi(0), |acc, (a, b)| acc + a * b))
        .min()
        .unwrap_or_else(|| qi(0))
}

/// Glues sections on the pieces of a `⋎`-cover of `S` into the unique
/// function on `S` restricting to each of them.
pub fn glue(reg: &Reg, s: &Polytope, sections: &[PolyFunction]) -> Result<PolyFunction> {
    let pieces: Vec<Polytope> = sections.iter().map(|f| f.dom.s.clone()).collect();
    if !s.veebar_check(&pieces)? {
        return Err(Error::NotGluable("the pieces do not form a cover of S".into()));
    }
    let dom = Domain::new(reg, s.clone());
    let mut glued: Option<PolyFunction> = None;
    for (k, f) in sections.iter().enumerate() {
        let candidate = PolyFunction::from_ambient(&dom, f.ambient_terms()?)?;
        match &glued {
            None => glued = Some(candidate),
            Some(g) => {
                if !g.equals(&candidate)? {
                    return Err(Error::IncompatibleSections(format!("section {k} disagrees with section 0")));
                }
            }
        }
    }
    Ok(glued.expect("nonempty cover"))
}

impl fmt::Debug for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFunction[{:?}; {}]", self.dom.s, self.to_text())
    }
}

/// Convenience: the rational `a/b`.
pub fn rq(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}
