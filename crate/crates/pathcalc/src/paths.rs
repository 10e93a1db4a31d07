//! Analytic paths from cubes and simplices into simple targets, integer
//! chains with boundary operators, the integration pairing against
//! Laurent-polynomial differential forms, rotation numbers, and the
//! residue / Cauchy evaluators.
//!
//! A path is stored as its function data: by the adjoint property a
//! morphism from a polytope into a polydisc, `G_m` or a Tate curve is the
//! same as a tuple of functions on the polytope subject to norm or unit
//! conditions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::calculus::{
    big_n, integrate_cube, integrate_simplex, Form, PFunction, DEFAULT_SLACK,
};
use crate::characters::{Character, Reg};
use crate::error::{Error, Result};
use crate::funcring::{Dom, Domain, PolyFunction};
use crate::linalg::{qi, Q};
use crate::localfield::{parse_rational, Scalar};
use crate::periods::Period;
use crate::polytope::{AffineMap, Polytope};

/// Where a path lands.  Radii are stored as `log_p` of the radius.
#[derive(Clone, Debug)]
pub enum Target {
    /// Closed polydisc `|T_i| ≤ p^r` of arity `m`.
    Disc { log_radius: Q, arity: usize },
    /// Open unit polydisc `|T_i| < 1`.
    OpenDisc { arity: usize },
    /// Affine space (no constraint).
    Affine { arity: usize },
    /// Annulus `p^r ≤ |T| ≤ p^R`.
    Annulus { log_inner: Q, log_outer: Q },
    /// `|T| = 1`.
    UnitCircle,
    /// The multiplicative group.
    Gm,
    /// `G_m / q^Z` with `v(q) ≥ 1`.
    TateCurve { q: Scalar },
}

impl PartialEq for Target {
    fn eq(&self, other: &Target) -> bool {
        use Target::*;
        match (self, other) {
            (Disc { log_radius: a, arity: m }, Disc { log_radius: b, arity: n }) => a == b && m == n,
            (OpenDisc { arity: m }, OpenDisc { arity: n }) | (Affine { arity: m }, Affine { arity: n }) => m == n,
            (Annulus { log_inner: a, log_outer: b }, Annulus { log_inner: c, log_outer: d }) => a == c && b == d,
            (UnitCircle, UnitCircle) | (Gm, Gm) => true,
            (TateCurve { q: a }, TateCurve { q: b }) => a.approx_eq(b),
            _ => false,
        }
    }
}

impl Target {
    /// Number of coordinates of the target.
    pub fn arity(&self) -> usize {
        match self {
            Target::Disc { arity, .. } | Target::OpenDisc { arity } | Target::Affine { arity } => *arity,
            _ => 1,
        }
    }

    /// True for targets whose points are units.
    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Target::Annulus { .. } | Target::UnitCircle | Target::Gm | Target::TateCurve { .. })
    }

    /// Parses `gm`, `unit-circle`, `tate:<q>`, `disc:<m>[:<log r>]`,
    /// `open-disc:<m>`, `affine:<m>`, `annulus:<log r>:<log R>`.
    pub fn parse(reg: &Reg, spec: &str) -> Result<Target> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Error::Domain(format!("unknown target `{spec}`"));
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let rat = |s: &str| parse_rational(s).ok_or_else(bad);
        Ok(match parts.as_slice() {
            ["gm" | "Gm"] => Target::Gm,
            ["unit-circle" | "UnitCircle"] => Target::UnitCircle,
            ["tate" | "TateCurve", q] => {
                let q = Scalar::from_rational(reg.field(), &rat(q)?);
                Target::tate(q)?
            }
            ["disc" | "Disc", m] => Target::Disc { log_radius: qi(0), arity: int(m)? },
            ["disc" | "Disc", m, r] => Target::Disc { log_radius: rat(r)?, arity: int(m)? },
            ["open-disc" | "OpenDisc", m] => Target::OpenDisc { arity: int(m)? },
            ["affine" | "Affine", m] => Target::Affine { arity: int(m)? },
            ["annulus" | "Annulus", r, big_r] => {
                let (log_inner, log_outer) = (rat(r)?, rat(big_r)?);
                if log_inner > log_outer {
                    return Err(Error::Domain("annulus radii are reversed".into()));
                }
                Target::Annulus { log_inner, log_outer }
            }
            _ => return Err(bad()),
        })
    }

    /// JSON form: the spec string accepted by [`Target::parse`], or
    /// `{"tate": <scalar>}` for the Tate curve.
    pub fn to_json(&self) -> Value {
        let q = |x: &Q| x.to_string();
        match self {
            Target::Disc { log_radius, arity } => json!(format!("disc:{arity}:{}", q(log_radius))),
            Target::OpenDisc { arity } => json!(format!("open-disc:{arity}")),
            Target::Affine { arity } => json!(format!("affine:{arity}")),
            Target::Annulus { log_inner, log_outer } => json!(format!("annulus:{}:{}", q(log_inner), q(log_outer))),
            Target::UnitCircle => json!("unit-circle"),
            Target::Gm => json!("gm"),
            Target::TateCurve { q } => json!({"tate": q.to_json()}),
        }
    }

    /// Parses either JSON form of [`Target::to_json`].
    pub fn from_json(reg: &Reg, value: &Value) -> Result<Target> {
        match value {
            Value::String(s) => Target::parse(reg, s),
            Value::Object(map) => match map.get("tate") {
                Some(q) => Target::tate(Scalar::from_json(reg.field(), q)?),
                None => Err(Error::Domain("a target object needs `tate`".into())),
            },
            other => Err(Error::Domain(format!("cannot read a target from {other}"))),
        }
    }

    /// The Tate curve `G_m / q^Z`.
    pub fn tate(q: Scalar) -> Result<Target> {
        match q.valuation() {
            Some(v) if v >= 1 => Ok(Target::TateCurve { q }),
            _ => Err(Error::Domain("the Tate parameter needs valuation at least 1".into())),
        }
    }
}

/// The source polytope of a path: `[0,N]^n` or `NΔ^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Cube(usize),
    Simplex(usize),
}

impl Shape {
    pub fn dim(&self) -> usize {
        match self {
            Shape::Cube(n) | Shape::Simplex(n) => *n,
        }
    }

    /// Ambient dimension of the source polytope.
    pub fn ambient(&self) -> usize {
        match self {
            Shape::Cube(n) => *n,
            Shape::Simplex(n) => n + 1,
        }
    }

    pub fn polytope(&self, big: i64) -> Polytope {
        match self {
            Shape::Cube(n) => Polytope::cube(*n, big),
            Shape::Simplex(n) => Polytope::simplex(*n, big),
        }
    }

    /// Same kind, dimension one lower.
    pub fn face(&self) -> Result<Shape> {
        match self {
            Shape::Cube(0) | Shape::Simplex(0) => Err(Error::Domain("points have no faces".into())),
            Shape::Cube(n) => Ok(Shape::Cube(n - 1)),
            Shape::Simplex(n) => Ok(Shape::Simplex(n - 1)),
        }
    }

    /// Parses `cube:<n>` or `simplex:<n>`.
    pub fn parse(spec: &str) -> Result<Shape> {
        let bad = || Error::Domain(format!("unknown path domain `{spec}`"));
        let (kind, n) = spec.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "cube" => Ok(Shape::Cube(n)),
            "simplex" => Ok(Shape::Simplex(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Cube(n) => write!(f, "cube:{n}"),
            Shape::Simplex(n) => write!(f, "simplex:{n}"),
        }
    }
}

/// The domain of functions on a shape.
pub fn shape_domain(reg: &Reg, shape: Shape) -> Dom {
    Domain::new(reg, shape.polytope(big_n(reg)))
}

/// An analytic path: validated function data on a shape.
#[derive(Clone)]
pub struct Path {
    shape: Shape,
    target: Target,
    data: Vec<PolyFunction>,
}

fn inverse_lead_exponent(f: &PolyFunction, c: &Scalar, x: &Character) -> Result<Q> {
    Ok(f.term_exponent(&x.inv(), &c.invert()?))
}

/// Divides a unit by the power of `q` bringing its leading coefficient's
/// valuation into `[0, v(q))`.
fn reduce_mod_q(f: &PolyFunction, q: &Scalar) -> Result<PolyFunction> {
    let (c, _, _) = f
        .unit_decompose()
        .ok_or_else(|| Error::ConstraintViolation("Tate curve data must be a unit".into()))?;
    let vq = q.valuation().expect("nonzero q");
    let vc = c.valuation().expect("unit");
    let k = Integer::div_floor(&vc, &vq);
    if k == 0 {
        return Ok(f.clone());
    }
    Ok(f.scale(&q.pow(-k)?))
}

impl Path {
    /// Validates `data` against the target's constraints.
    pub fn new(shape: Shape, target: Target, data: Vec<PolyFunction>) -> Result<Path> {
        if data.len() != target.arity() {
            return Err(Error::ArityMismatch(data.len(), target.arity()));
        }
        let expected = shape.polytope(data.first().map_or(0, |f| big_n(f.registry())));
        for f in &data {
            if *f.domain().polytope() != expected {
                return Err(Error::PolytopeMismatch);
            }
        }
        let mut data = data;
        match &target {
            Target::Affine { .. } => {}
            Target::Disc { log_radius, .. } => {
                for (i, f) in data.iter().enumerate() {
                    if let Some(e) = f.gauss() {
                        if e < -log_radius.clone() {
                            return Err(Error::ConstraintViolation(format!(
                                "coordinate {i} has norm p^{} beyond the radius p^{log_radius}",
                                -e
                            )));
                        }
                    }
                }
            }
            Target::OpenDisc { .. } => {
                for (i, f) in data.iter().enumerate() {
                    if f.gauss().is_some_and(|e| e <= qi(0)) {
                        return Err(Error::ConstraintViolation(format!("coordinate {i} leaves the open unit disc")));
                    }
                }
            }
            Target::Gm | Target::UnitCircle | Target::Annulus { .. } | Target::TateCurve { .. } => {
                let f = &data[0];
                let (c, x, _) = f
                    .unit_decompose()
                    .ok_or_else(|| Error::ConstraintViolation("the function is not a unit".into()))?;
                let norm = f.gauss().expect("units are nonzero");
                let inv = inverse_lead_exponent(f, &c, &x)?;
                match &target {
                    Target::UnitCircle => {
                        if !norm.is_zero() || !inv.is_zero() {
                            return Err(Error::ConstraintViolation(
                                "unit circle paths need ‖f‖ = ‖f⁻¹‖ = 1".into(),
                            ));
                        }
                    }
                    Target::Annulus { log_inner, log_outer } => {
                        if norm < -log_outer.clone() || inv < log_inner.clone() {
                            return Err(Error::ConstraintViolation("the path leaves the annulus".into()));
                        }
                    }
                    Target::TateCurve { q } => {
                        data[0] = reduce_mod_q(f, q)?;
                    }
                    _ => {}
                }
            }
        }
        Ok(Path { shape, target, data })
    }

    /// A one-dimensional path `[0,N] → target` from a single function.
    pub fn interval(target: Target, f: PolyFunction) -> Result<Path> {
        Path::new(Shape::Cube(1), target, vec![f])
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn data(&self) -> &[PolyFunction] {
        &self.data
    }

    pub fn registry(&self) -> &Reg {
        self.data[0].registry()
    }

    /// True when every coordinate function is independent of some `t_i`
    /// (cubes only): such cubes factor through a projection.
    pub fn is_degenerate(&self) -> Result<bool> {
        let Shape::Cube(n) = self.shape else { return Ok(false) };
        let ambient: Vec<Vec<(Character, Scalar)>> =
            self.data.iter().map(|f| f.ambient_terms()).collect::<Result<_>>()?;
        Ok((0..n).any(|i| ambient.iter().flatten().all(|(x, _)| x.coords()[i].is_empty())))
    }

    /// Equality of paths (same shape, target and function data).
    pub fn equals(&self, other: &Path) -> Result<bool> {
        if self.shape != other.shape || self.target != other.target {
            return Ok(false);
        }
        for (f, g) in self.data.iter().zip(&other.data) {
            if !f.equals(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Composition with an affine map from another shape into this one.
    pub fn precompose(&self, map: &AffineMap, shape: Shape) -> Result<Path> {
        let dom = shape_domain(self.registry(), shape);
        let data = self.data.iter().map(|f| f.pullback(map, &dom)).collect::<Result<Vec<_>>>()?;
        Path::new(shape, self.target.clone(), data)
    }

    /// Value of the (single) coordinate at an ambient point.
    pub fn value(&self, t: &[Q]) -> Result<Vec<Scalar>> {
        self.data.iter().map(|f| f.evaluate(t)).collect()
    }

    /// JSON form `{"domain": .., "target": .., "data": [function, ..]}`.
    pub fn to_json(&self) -> Result<Value> {
        let data = self.data.iter().map(|f| f.to_json()).collect::<Result<Vec<_>>>()?;
        Ok(json!({"domain": self.shape.to_string(), "target": self.target.to_json(), "data": data}))
    }

    /// Parses the JSON form; `target` is a target spec string.
    pub fn from_json(reg: &Reg, value: &Value) -> Result<Path> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Domain(format!("path needs `{k}`")));
        let shape = Shape::parse(field("domain")?.as_str().unwrap_or(""))?;
        let target = Target::from_json(reg, field("target")?)?;
        let dom = shape_domain(reg, shape);
        let data = field("data")?
            .as_array()
            .ok_or_else(|| Error::Domain("`data` must be a list".into()))?
            .iter()
            .map(|v| PolyFunction::from_json_on(&dom, v))
            .collect::<Result<Vec<_>>>()?;
        Path::new(shape, target, data)
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let data: Vec<String> = self.data.iter().map(|g| g.to_text()).collect();
        write!(f, "{} → {:?}: ({})", self.shape, self.target, data.join(", "))
    }
}

/// A finite integer combination of paths of one shape, in normal form
/// (equal paths merged, zero weights and degenerate cubes dropped).
#[derive(Clone, Debug)]
pub struct Chain {
    shape: Shape,
    terms: Vec<(i64, Path)>,
}

impl Chain {
    pub fn zero(shape: Shape) -> Chain {
        Chain { shape, terms: Vec::new() }
    }

    /// Builds a chain in normal form.
    pub fn new(shape: Shape, terms: Vec<(i64, Path)>) -> Result<Chain> {
        let mut c = Chain::zero(shape);
        for (w, p) in terms {
            c.push(w, p)?;
        }
        Ok(c)
    }

    /// The chain `[γ]`.
    pub fn single(path: Path) -> Result<Chain> {
        Chain::new(path.shape, vec![(1, path)])
    }

    fn push(&mut self, w: i64, p: Path) -> Result<()> {
        if p.shape != self.shape {
            return Err(Error::Domain(format!("chain of {} cannot hold a {} path", self.shape, p.shape)));
        }
        if w == 0 || p.is_degenerate()? {
            return Ok(());
        }
        for k in 0..self.terms.len() {
            if self.terms[k].1.equals(&p)? {
                self.terms[k].0 += w;
                if self.terms[k].0 == 0 {
                    self.terms.remove(k);
                }
                return Ok(());
            }
        }
        self.terms.push((w, p));
        Ok(())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> &[(i64, Path)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        let mut c = self.clone();
        for (w, p) in &other.terms {
            c.push(*w, p.clone())?;
        }
        Ok(c)
    }

    pub fn scale(&self, k: i64) -> Result<Chain> {
        Chain::new(self.shape, self.terms.iter().map(|(w, p)| (w * k, p.clone())).collect())
    }

    /// Boundary: cubical `Σ (−1)^{i+σ} γ∘∂^{(i,σ)}`, simplicial `Σ (−1)^i γ∘∂^{(i)}`.
    pub fn boundary(&self) -> Result<Chain> {
        let face_shape = self.shape.face()?;
        let mut out = Chain::zero(face_shape);
        for (w, p) in &self.terms {
            let big = big_n(p.registry());
            match self.shape {
                Shape::Cube(n) => {
                    for i in 1..=n {
                        for sigma in 0..=1u8 {
                            let face = p.precompose(&AffineMap::cube_face(n, i, sigma, big), face_shape)?;
                            let sign = if (i + sigma as usize) % 2 == 0 { 1 } else { -1 };
                            out.push(sign * w, face)?;
                        }
                    }
                }
                Shape::Simplex(n) => {
                    for i in 0..=n {
                        let face = p.precompose(&AffineMap::simplex_face(n, i), face_shape)?;
                        out.push(if i % 2 == 0 { *w } else { -w }, face)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `∂c = 0`.
    pub fn is_cycle(&self) -> Result<bool> {
        Ok(self.boundary()?.is_zero())
    }

    /// Parses `[{"weight": w, "path": {...}}, ...]`.
    pub fn from_json(reg: &Reg, value: &Value) -> Result<Chain> {
        let list = value.as_array().ok_or_else(|| Error::Domain("a chain is a list of weighted paths".into()))?;
        let mut terms = Vec::new();
        for item in list {
            let w = item.get("weight").and_then(|w| w.as_i64()).unwrap_or(1);
            let path = Path::from_json(reg, item.get("path").unwrap_or(item))?;
            terms.push((w, path));
        }
        let shape = terms.first().map(|(_, p)| p.shape).unwrap_or(Shape::Cube(1));
        Chain::new(shape, terms)
    }

    /// JSON form `[{"weight": w, "path": ..}]`.
    pub fn to_json(&self) -> Result<Value> {
        let items = self
            .terms
            .iter()
            .map(|(w, p)| Ok(json!({"weight": w, "path": p.to_json()?})))
            .collect::<Result<Vec<_>>>()?;
        Ok(Value::Array(items))
    }
}

/// A Laurent polynomial in the target coordinates `T_1..T_m`.
#[derive(Clone, Debug)]
pub struct Laurent {
    arity: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl Laurent {
    pub fn zero(arity: usize) -> Laurent {
        Laurent { arity, terms: BTreeMap::new() }
    }

    /// Builds from `(exponent vector, coefficient)` pairs.
    pub fn new(arity: usize, terms: Vec<(Vec<i64>, Scalar)>) -> Result<Laurent> {
        let mut l = Laurent::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch(e.len(), arity));
            }
            l.add_term(e, c);
        }
        Ok(l)
    }

    /// A one-variable Laurent polynomial `Σ c_i T^i`.
    pub fn univariate(terms: &[(i64, Scalar)]) -> Laurent {
        let mut l = Laurent::zero(1);
        for (i, c) in terms {
            l.add_term(vec![*i], c.clone());
        }
        l
    }

    fn add_term(&mut self, e: Vec<i64>, c: Scalar) {
        let sum = match self.terms.remove(&e) {
            Some(d) => d.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Scalar> {
        &self.terms
    }

    /// Coefficient of `T^e`.
    pub fn coefficient(&self, e: &[i64]) -> Option<&Scalar> {
        self.terms.get(e)
    }

    /// `∂/∂T_i`.
    pub fn derivative(&self, i: usize) -> Laurent {
        let mut out = Laurent::zero(self.arity);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c.scale_int(e[i]));
            }
        }
        out
    }

    /// Multiplication by the monomial `T^shift`.
    pub fn shift(&self, shift: &[i64]) -> Laurent {
        let mut out = Laurent::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Re-expansion of a polynomial (one variable) in powers of `T − a`.
    pub fn taylor_at(&self, a: &Scalar) -> Result<Laurent> {
        if self.arity != 1 || self.terms.keys().any(|e| e[0] < 0) {
            return Err(Error::Domain("Taylor re-expansion needs a one-variable polynomial".into()));
        }
        let mut out = Laurent::zero(1);
        for (e, c) in &self.terms {
            let k = e[0];
            let mut binom = BigInt::one();
            for j in 0..=k {
                // binom = C(k, j)
                let coeff = c.mul(&Scalar::from_bigint(c.field(), &binom)).mul(&a.pow(k - j)?);
                out.add_term(vec![j], coeff);
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        Ok(out)
    }

    /// Value at a point (nonzero where negative powers occur).
    pub fn evaluate(&self, t: &[Scalar]) -> Result<Scalar> {
        let field = t.first().map(|s| s.field().clone());
        let mut acc: Option<Scalar> = None;
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, k) in t.iter().zip(e) {
                term = term.mul(&x.pow(*k)?);
            }
            acc = Some(match acc {
                Some(a) => a.add(&term),
                None => term,
            });
        }
        Ok(acc.unwrap_or_else(|| Scalar::zero(field.as_ref().expect("a point"))))
    }

    /// JSON form: an exponent-keyed object in one variable, otherwise a
    /// list of `{"exp", "coeff"}` terms.
    pub fn to_json(&self) -> Value {
        if self.arity == 1 {
            let obj: serde_json::Map<String, Value> =
                self.terms.iter().map(|(e, c)| (e[0].to_string(), c.to_json())).collect();
            Value::Object(obj)
        } else {
            Value::Array(self.terms.iter().map(|(e, c)| json!({"exp": e, "coeff": c.to_json()})).collect())
        }
    }

    /// JSON: `{"-1": 3, "2": "1/5"}` (one variable) or
    /// `[{"exp": [..], "coeff": ..}]`.
    pub fn from_json(reg: &Reg, value: &Value) -> Result<Laurent> {
        let field = reg.field();
        match value {
            Value::Object(map) => {
                let mut terms = Vec::new();
                for (k, v) in map {
                    let e: i64 = k.trim().parse().map_err(|_| Error::Domain(format!("bad exponent `{k}`")))?;
                    terms.push((vec![e], Scalar::from_json(field, v)?));
                }
                Laurent::new(1, terms)
            }
            Value::Array(list) => {
                let mut terms = Vec::new();
                let mut arity = None;
                for item in list {
                    let e: Vec<i64> = item
                        .get("exp")
                        .and_then(|e| e.as_array())
                        .ok_or_else(|| Error::Domain("term needs `exp`".into()))?
                        .iter()
                        .map(|x| x.as_i64().ok_or_else(|| Error::Domain("exponents are integers".into())))
                        .collect::<Result<_>>()?;
                    arity.get_or_insert(e.len());
                    terms.push((e, Scalar::from_json(field, item.get("coeff").unwrap_or(&json!(1)))?));
                }
                Laurent::new(arity.unwrap_or(1), terms)
            }
            _ => Err(Error::Domain("a Laurent polynomial is an object or a list".into())),
        }
    }
}

/// A differential form `Σ_H f_H dT_H` on the target, with Laurent
/// polynomial coefficients.
#[derive(Clone, Debug)]
pub struct TargetForm {
    arity: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Laurent>,
}

impl TargetForm {
    pub fn new(arity: usize, degree: usize, terms: Vec<(Vec<usize>, Laurent)>) -> Result<TargetForm> {
        let mut out = TargetForm { arity, degree, terms: BTreeMap::new() };
        for (h, f) in terms {
            if h.len() != degree || h.windows(2).any(|w| w[0] >= w[1]) || h.iter().any(|&i| i >= arity) {
                return Err(Error::DegreeOverflow(h.len(), arity));
            }
            if f.arity != arity {
                return Err(Error::ArityMismatch(f.arity, arity));
            }
            out.insert(h, f);
        }
        Ok(out)
    }

    /// The one-variable 1-form `f(T) dT`.
    pub fn f_dt(f: Laurent) -> TargetForm {
        TargetForm::new(1, 1, vec![(vec![0], f)]).expect("well-formed")
    }

    /// The invariant form `T⁻¹ dT`.
    pub fn invariant(reg: &Reg) -> TargetForm {
        TargetForm::f_dt(Laurent::univariate(&[(-1, Scalar::one(reg.field()))]))
    }

    /// Parses `"invariant"` (`T⁻¹dT`), a one-variable Laurent polynomial
    /// `f` (read as `f dT`), or
    /// `{"arity": m, "degree": k, "terms": [{"dt": [i, ..], "coeff": laurent}]}`.
    pub fn from_json(reg: &Reg, value: &Value) -> Result<TargetForm> {
        if value.as_str() == Some("invariant") {
            return Ok(TargetForm::invariant(reg));
        }
        let Some(list) = value.get("terms").and_then(|t| t.as_array()) else {
            return Ok(TargetForm::f_dt(Laurent::from_json(reg, value)?));
        };
        let num = |k: &str| value.get(k).and_then(|v| v.as_u64()).map(|v| v as usize);
        let arity = num("arity").unwrap_or(1);
        let degree = num("degree").unwrap_or(1);
        let mut terms = Vec::new();
        for item in list {
            let h: Vec<usize> = item
                .get("dt")
                .and_then(|d| d.as_array())
                .ok_or_else(|| Error::Domain("form term needs `dt`".into()))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Domain("`dt` lists indices".into())))
                .collect::<Result<_>>()?;
            let f = Laurent::from_json(reg, item.get("coeff").ok_or_else(|| Error::Domain("form term needs `coeff`".into()))?)?;
            let f = if f.arity != arity { Laurent::new(arity, f.terms.into_iter().collect())? } else { f };
            terms.push((h, f));
        }
        TargetForm::new(arity, degree, terms)
    }

    /// JSON form `{"arity", "degree", "terms": [{"dt", "coeff"}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(h, f)| json!({"dt": h, "coeff": f.to_json()})).collect();
        json!({"arity": self.arity, "degree": self.degree, "terms": terms})
    }

    fn insert(&mut self, h: Vec<usize>, f: Laurent) {
        let entry = self.terms.remove(&h);
        let mut sum = entry.unwrap_or_else(|| Laurent::zero(self.arity));
        for (e, c) in f.terms {
            sum.add_term(e, c);
        }
        if !sum.terms.is_empty() {
            self.terms.insert(h, sum);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Laurent> {
        &self.terms
    }

    /// Exterior derivative.
    pub fn d(&self) -> Result<TargetForm> {
        if self.degree + 1 > self.arity {
            return Err(Error::DegreeOverflow(self.degree + 1, self.arity));
        }
        let mut out = TargetForm { arity: self.arity, degree: self.degree + 1, terms: BTreeMap::new() };
        for (h, f) in &self.terms {
            for i in 0..self.arity {
                if h.contains(&i) {
                    continue;
                }
                let below = h.iter().filter(|&&j| j < i).count();
                let mut df = f.derivative(i);
                if below % 2 == 1 {
                    for c in df.terms.values_mut() {
                        *c = c.neg();
                    }
                }
                let mut idx = h.clone();
                idx.push(i);
                idx.sort_unstable();
                out.insert(idx, df);
            }
        }
        Ok(out)
    }
}

/// Unit decomposition data of a unit function, or a constraint error.
fn unit_parts(f: &PolyFunction) -> Result<(Scalar, Character, PolyFunction)> {
    f.unit_decompose()
        .ok_or_else(|| Error::ConstraintViolation("the path is not a unit".into()))
}

fn check_tail(f: &PolyFunction) -> Result<()> {
    if let Some(t) = f.tail() {
        let need = f.registry().field().precision() as i64 - DEFAULT_SLACK as i64;
        if t.e_tail < qi(need) {
            return Err(Error::TailBudget(format!("tail exponent {} below {need}", t.e_tail)));
        }
    }
    Ok(())
}

/// `f^k` for an integer `k`, inverting units when `k < 0`.
fn int_power(f: &PolyFunction, k: i64) -> Result<PolyFunction> {
    if k >= 0 {
        return f.pow(k as u32);
    }
    let inv = f.invert_unit_auto().map_err(|e| match e {
        Error::NotUnit(m) => Error::ConstraintViolation(format!("negative power of a non-unit: {m}")),
        other => other,
    })?;
    check_tail(&inv)?;
    inv.with_tail(None).pow((-k) as u32)
}

/// `γ^*(f)` for a Laurent polynomial `f` in the target coordinates.
pub fn compose(path: &Path, f: &Laurent) -> Result<PolyFunction> {
    let dom = path.data[0].domain().clone();
    let mut acc = PolyFunction::zero(&dom);
    for (e, c) in &f.terms {
        let mut term = PolyFunction::constant(&dom, c);
        for (g, k) in path.data.iter().zip(e) {
            if *k != 0 {
                term = term.mul(&int_power(g, *k)?)?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `γ^* ω` as a form on the source polytope (ambient coordinates).
pub fn pullback_form(path: &Path, omega: &TargetForm) -> Result<Form> {
    if omega.arity != path.target.arity() {
        return Err(Error::ArityMismatch(omega.arity, path.target.arity()));
    }
    let reg = path.registry();
    let m = path.shape.ambient();
    let differentials: Vec<Form> = path
        .data
        .iter()
        .map(|g| Form::function(&PFunction::from_poly(g)?).d())
        .collect::<Result<_>>()?;
    let mut out = Form::zero(reg, m, omega.degree);
    for (h, f) in &omega.terms {
        let coeff = PFunction::from_poly(&compose(path, f)?)?;
        let mut w = Form::function(&coeff);
        for &i in h {
            w = w.wedge(&differentials[i])?;
        }
        out = out.add(&w)?;
    }
    Ok(out)
}

/// `∫_γ T⁻¹dT = N log x + plog(1+g(N)) − plog(1+g(0))` for a unit path
/// `γ = a x (1+g)` on `[0, N]`.
pub fn integrate_invariant_form(path: &Path) -> Result<Period> {
    if path.shape != Shape::Cube(1) || path.target.arity() != 1 {
        return Err(Error::Domain("the invariant form is integrated along one-dimensional paths".into()));
    }
    let reg = path.registry();
    let (_, x, g) = unit_parts(&path.data[0])?;
    let big = big_n(reg);
    let one = Scalar::one(reg.field());
    let end = one.add(&g.evaluate(&[qi(big)])?).plog()?;
    let start = one.add(&g.evaluate(&[qi(0)])?).plog()?;
    Ok(x.log(reg).scale_int(big).add(&Period::constant(reg, &end.sub(&start))))
}

fn integrate_top(shape: Shape, form: &Form) -> Result<Period> {
    match shape {
        Shape::Cube(_) => integrate_cube(form),
        Shape::Simplex(_) => integrate_simplex(form),
    }
}

/// `∫_γ ω = ∫ γ^*ω`.  On one-dimensional paths into one-variable targets
/// the `T⁻¹dT` part is evaluated by the invariant-form formula.
pub fn integrate_path(path: &Path, omega: &TargetForm) -> Result<Period> {
    if omega.degree != path.shape.dim() {
        return Err(Error::Domain(format!(
            "a {}-form cannot be integrated along a {}-dimensional path",
            omega.degree,
            path.shape.dim()
        )));
    }
    let reg = path.registry();
    if path.shape == Shape::Cube(1) && omega.arity == 1 {
        let f = omega.terms.get(&vec![0]).cloned().unwrap_or_else(|| Laurent::zero(1));
        let mut rest = f.clone();
        let mut out = Period::zero(reg);
        if let Some(c) = f.terms.get(&vec![-1]) {
            rest.terms.remove(&vec![-1]);
            out = integrate_invariant_form(path)?.scale(c);
        }
        let rest = TargetForm::f_dt(rest);
        return Ok(out.add(&integrate_top(path.shape, &pullback_form(path, &rest)?)?));
    }
    integrate_top(path.shape, &pullback_form(path, omega)?)
}

/// The pairing `∫_c ω = Σ w ∫_γ ω`.
pub fn integrate_chain(chain: &Chain, omega: &TargetForm) -> Result<Period> {
    let mut acc: Option<Period> = None;
    for (w, p) in &chain.terms {
        let v = integrate_path(p, omega)?.scale_int(*w);
        acc = Some(match acc {
            Some(a) => a.add(&v),
            None => v,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => Err(Error::Domain("the zero chain carries no registry; use integrate_chain_in".into())),
    }
}

/// As [`integrate_chain`], returning `0` for the zero chain.
pub fn integrate_chain_in(reg: &Reg, chain: &Chain, omega: &TargetForm) -> Result<Period> {
    if chain.is_zero() {
        return Ok(Period::zero(reg));
    }
    integrate_chain(chain, omega)
}

/// Endpoints agree (modulo `q^Z` on a Tate curve).
fn closed_path(path: &Path) -> Result<bool> {
    Chain::single(path.clone())?.is_cycle()
}

/// The rotation number `rot(γ, a) = N log x` for the unit decomposition
/// `γ − a = c x (1+g)`; defined for cycles only.
pub fn rot(path: &Path, a: &Scalar) -> Result<Period> {
    if path.shape != Shape::Cube(1) || path.target.arity() != 1 {
        return Err(Error::Domain("rotation numbers are defined for one-dimensional paths".into()));
    }
    if !closed_path(path)? {
        return Err(Error::NotACycle);
    }
    let f = &path.data[0];
    let shifted = f.sub(&PolyFunction::constant(f.domain(), a))?;
    let (_, x, _) = unit_parts(&shifted).map_err(|_| {
        Error::ConstraintViolation("γ − a is not a unit: the path meets the centre".into())
    })?;
    Ok(x.log(path.registry()).scale_int(big_n(path.registry())))
}

/// Both sides of a residue or Cauchy identity.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub lhs: Period,
    pub rhs: Period,
    pub pass: bool,
}

/// Residue theorem: `∫_γ f dT` against `rot(γ,0) Res(f,0)`.
pub fn residue_check(path: &Path, f: &Laurent) -> Result<ResidueReport> {
    let reg = path.registry();
    let lhs = integrate_path(path, &TargetForm::f_dt(f.clone()))?;
    let res = f.coefficient(&[-1]).cloned().unwrap_or_else(|| Scalar::zero(reg.field()));
    let rhs = rot(path, &Scalar::zero(reg.field()))?.scale(&res);
    let bound = reg.field().precision() as i64 - 2;
    let pass = lhs.agrees_to(&rhs, bound);
    Ok(ResidueReport { lhs, rhs, pass })
}

/// Report of the Cauchy–Goursat identity at order `i`.
#[derive(Clone, Debug)]
pub struct CauchyReport {
    /// `∫_γ f/(T−a)^{i+1} dT`.
    pub lhs: Period,
    /// `rot(γ,a) · f^{(i)}(a)` as literally stated.
    pub rhs_literal: Period,
    /// `rot(γ,a) · f^{(i)}(a)/i!` from the Taylor development.
    pub rhs_taylor: Period,
    pub pass_literal: bool,
    pub pass_taylor: bool,
}

/// Evaluates `∫_γ f(T)/(T−a)^{i+1} dT` for a polynomial `f` and compares it
/// with the Cauchy–Goursat right-hand sides to valuation `bound`.
pub fn cauchy_check(path: &Path, f: &Laurent, a: &Scalar, order: u32, bound: i64) -> Result<CauchyReport> {
    let reg = path.registry();
    let field = reg.field();
    // Expand f in powers of δ = T − a and integrate Σ b_j δ^{j−i−1} dδ along δ = γ − a.
    let b = f.taylor_at(a)?.shift(&[-(order as i64) - 1]);
    let g = &path.data[0];
    let delta_fn = g.sub(&PolyFunction::constant(g.domain(), a))?;
    let delta = Path::new(path.shape, Target::Affine { arity: 1 }, vec![delta_fn.clone()])?;
    let mut lhs = Period::zero(reg);
    let mut rest = b.clone();
    if let Some(c) = b.terms.get(&vec![-1]) {
        rest.terms.remove(&vec![-1]);
        let unit = Path::new(path.shape, Target::Gm, vec![delta_fn])?;
        lhs = integrate_invariant_form(&unit)?.scale(c);
    }
    lhs = lhs.add(&integrate_top(path.shape, &pullback_form(&delta, &TargetForm::f_dt(rest))?)?);
    let r = rot(path, a)?;
    let mut deriv = f.clone();
    for _ in 0..order {
        deriv = deriv.derivative(0);
    }
    let value = if deriv.terms.is_empty() { Scalar::zero(field) } else { deriv.evaluate(std::slice::from_ref(a))? };
    let fact: i64 = (1..=order as i64).product();
    let rhs_literal = r.scale(&value);
    let rhs_taylor = r.scale(&value.div(&Scalar::from_i64(field, fact))?);
    let pass_literal = lhs.agrees_to(&rhs_literal, bound);
    let pass_taylor = lhs.agrees_to(&rhs_taylor, bound);
    Ok(CauchyReport { lhs, rhs_literal, rhs_taylor, pass_literal, pass_taylor })
}

/// Verdict of an obstruction certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The pairing is nonzero, so the cycle is not a boundary.
    NonBoundary,
    /// The pairing vanishes; nothing can be concluded.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NonBoundary => write!(f, "NONBOUNDARY"),
            Verdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// `∫_c ω` for a cycle `c` and a closed form `ω`; since the pairing kills
/// boundaries, a nonzero value certifies that `c` is not a boundary.
pub fn obstruction_certificate(reg: &Reg, chain: &Chain, omega: &TargetForm) -> Result<(Period, Verdict)> {
    if !chain.is_zero() && !chain.is_cycle()? {
        return Err(Error::NotACycle);
    }
    if omega.degree < omega.arity && !omega.d()?.terms.is_empty() {
        return Err(Error::Domain("the form is not closed".into()));
    }
    let value = integrate_chain_in(reg, chain, omega)?;
    let verdict = if value.is_zero() { Verdict::Inconclusive } else { Verdict::NonBoundary };
    Ok((value, verdict))
}

/// The characteristic cycles on `G_m` and on the Tate curve.
pub mod tate {
    use super::*;

    /// `γ_ε^{(a')}`: the path `ε^{a'/N}(t)`.
    pub fn eps_cycle(reg: &Reg, a_prime: i64) -> Result<Path> {
        let dom = shape_domain(reg, Shape::Cube(1));
        let x = Character::generator(reg.eps(), Q::new(a_prime.into(), big_n(reg).into()));
        Path::interval(Target::Gm, PolyFunction::monomial(&dom, &x, &Scalar::one(reg.field()))?)
    }

    /// `γ₁ = (1+a)̲(t)`, from `1` to `(1+a)^N`.
    pub fn gamma1(reg: &Reg) -> Result<Path> {
        let dom = shape_domain(reg, Shape::Cube(1));
        let x = Character::generator(reg.id("1+a")?, qi(1));
        Path::interval(Target::Gm, PolyFunction::monomial(&dom, &x, &Scalar::one(reg.field()))?)
    }

    /// The coefficients `(A, B)` of `γ₂ = A p̲(t) + B`, the interpolation from
    /// `1` to `(1+a)^N` through `p̲`:
    /// `A = (1 − (1+a)^N)/(1 − p^N)`, `B = ((1+a)^N − p^N)/(1 − p^N)`.
    pub fn gamma2_coefficients(reg: &Reg) -> Result<(Scalar, Scalar)> {
        let field = reg.field();
        let big = big_n(reg);
        let one = Scalar::one(field);
        let ua = reg.generator(reg.id("1+a")?).base().pow(big)?;
        let pn = Scalar::from_i64(field, field.p() as i64).pow(big)?;
        let den = one.sub(&pn);
        Ok((one.sub(&ua).div(&den)?, ua.sub(&pn).div(&den)?))
    }

    /// `γ₂ = A p̲(t) + B`.
    pub fn gamma2(reg: &Reg) -> Result<Path> {
        let dom = shape_domain(reg, Shape::Cube(1));
        let (a, b) = gamma2_coefficients(reg)?;
        let p = Character::generator(reg.id("p")?, qi(1));
        let f = PolyFunction::monomial(&dom, &p, &a)?.add(&PolyFunction::constant(&dom, &b))?;
        Path::interval(Target::Gm, f)
    }

    /// `γ₃ = q̲(t)` on the Tate curve `G_m / q^Z`.
    pub fn gamma3(reg: &Reg) -> Result<Path> {
        let dom = shape_domain(reg, Shape::Cube(1));
        let qid = reg.id("q")?;
        let q = reg.generator(qid).base().clone();
        let x = Character::generator(qid, qi(1));
        Path::interval(Target::tate(q)?, PolyFunction::monomial(&dom, &x, &Scalar::one(reg.field()))?)
    }

    /// `γ₂^{(1+a)} = (1+a)̲(t) / γ₂(t)` on the Tate curve (a cycle through `1`).
    /// With `with_a = false` the trivial system replaces `(1+a)̲`, giving
    /// the constant cycle `1`.
    pub fn gamma2_cycle(reg: &Reg, with_a: bool) -> Result<Path> {
        let dom = shape_domain(reg, Shape::Cube(1));
        let q = reg.generator(reg.id("q")?).base().clone();
        if !with_a {
            return Path::interval(Target::tate(q)?, PolyFunction::one(&dom));
        }
        let g1 = gamma1(reg)?.data()[0].clone();
        let inv = gamma2(reg)?.data()[0].invert_unit_auto()?;
        Path::interval(Target::tate(q)?, g1.mul(&inv)?)
    }

    /// The cycle `[γ₂^{(1+a)}] + d [γ₃]` on the Tate curve.
    pub fn obstruction_chain(reg: &Reg, d: i64, with_a: bool) -> Result<Chain> {
        Chain::new(Shape::Cube(1), vec![(1, gamma2_cycle(reg, with_a)?), (d, gamma3(reg)?)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Registry;
    use crate::localfield::FieldConfig;

    fn reg() -> Reg {
        Registry::standard(&FieldConfig::new(5, 40).unwrap()).unwrap()
    }

    fn s(reg: &Reg, n: i64) -> Scalar {
        Scalar::from_i64(reg.field(), n)
    }

    fn path1(reg: &Reg, target: Target, terms: &[(&str, i64)]) -> Result<Path> {
        let dom = shape_domain(reg, Shape::Cube(1));
        let f = PolyFunction::from_ambient(
            &dom,
            terms.iter().map(|(x, c)| (Character::parse_text(reg, x).unwrap(), s(reg, *c))).collect(),
        )?;
        Path::interval(target, f)
    }

    fn lam(reg: &Reg, name: &str) -> Period {
        Period::symbol(reg, reg.id(name).unwrap())
    }

    #[test]
    fn path_constraints() {
        let reg = reg();
        assert!(path1(&reg, Target::Gm, &[("eps^1/4", 1)]).is_ok());
        let disc = Target::Disc { log_radius: qi(0), arity: 1 };
        assert!(matches!(path1(&reg, disc, &[("p^-1", 1)]), Err(Error::ConstraintViolation(_))));
        assert!(tate::gamma3(&reg).is_ok());
        assert!(matches!(path1(&reg, Target::Gm, &[("1", 1), ("p", 1)]), Err(Error::ConstraintViolation(_))));
        assert!(path1(&reg, Target::UnitCircle, &[("eps", 3)]).is_ok());
        assert!(path1(&reg, Target::UnitCircle, &[("p", 1)]).is_err());
    }

    #[test]
    fn boundaries_and_cycles() {
        let reg = reg();
        let e = path1(&reg, Target::Gm, &[("eps^1/4", 1)]).unwrap();
        assert!(Chain::single(e.clone()).unwrap().is_cycle().unwrap());
        let p = path1(&reg, Target::Gm, &[("p", 1)]).unwrap();
        assert!(!Chain::single(p).unwrap().is_cycle().unwrap());
        assert!(Chain::single(tate::gamma3(&reg).unwrap()).unwrap().is_cycle().unwrap());
        // ∂∂ = 0 on a square.
        let dom = shape_domain(&reg, Shape::Cube(2));
        let f = PolyFunction::from_ambient(
            &dom,
            vec![(Character::parse_text(&reg, "p|q").unwrap(), s(&reg, 1)), (Character::parse_text(&reg, "1|p").unwrap(), s(&reg, 3))],
        )
        .unwrap();
        let sq = Path::new(Shape::Cube(2), Target::Affine { arity: 1 }, vec![f]).unwrap();
        let c = Chain::single(sq).unwrap();
        assert!(!c.boundary().unwrap().is_zero());
        assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
        // Simplicial ∂∂ = 0.
        let dom = shape_domain(&reg, Shape::Simplex(2));
        let f = PolyFunction::from_ambient(&dom, vec![(Character::parse_text(&reg, "p|q|1").unwrap(), s(&reg, 1))]).unwrap();
        let tri = Chain::single(Path::new(Shape::Simplex(2), Target::Affine { arity: 1 }, vec![f]).unwrap()).unwrap();
        assert!(tri.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn degenerate_cubes_vanish() {
        let reg = reg();
        let dom = shape_domain(&reg, Shape::Cube(2));
        let f = PolyFunction::from_ambient(&dom, vec![(Character::parse_text(&reg, "p|1").unwrap(), s(&reg, 1))]).unwrap();
        let sq = Path::new(Shape::Cube(2), Target::Affine { arity: 1 }, vec![f]).unwrap();
        assert!(sq.is_degenerate().unwrap());
        assert!(Chain::single(sq).unwrap().is_zero());
    }

    #[test]
    fn pullback_examples() {
        let reg = reg();
        let p = path1(&reg, Target::Affine { arity: 1 }, &[("p", 1)]).unwrap();
        let w = pullback_form(&p, &TargetForm::f_dt(Laurent::univariate(&[(1, s(&reg, 1))]))).unwrap();
        let pp = PFunction::from_terms(&reg, 1, vec![(Character::parse_text(&reg, "p^2").unwrap(), lam(&reg, "p"))]).unwrap();
        assert!(w.equals(&Form::term(&pp, &[0]).unwrap()).unwrap());
    }

    #[test]
    fn rotation_numbers() {
        let reg = reg();
        let zero = Scalar::zero(reg.field());
        assert!(rot(&tate::eps_cycle(&reg, 1).unwrap(), &zero).unwrap().equals(&lam(&reg, "eps")));
        assert!(rot(&tate::eps_cycle(&reg, -2).unwrap(), &zero).unwrap().equals(&lam(&reg, "eps").scale_int(-2)));
        let c = path1(&reg, Target::Gm, &[("1", 3)]).unwrap();
        assert!(rot(&c, &zero).unwrap().is_zero());
        let p = path1(&reg, Target::Gm, &[("p", 1)]).unwrap();
        assert!(matches!(rot(&p, &zero), Err(Error::NotACycle)));
    }

    #[test]
    fn residue_examples() {
        let reg = reg();
        let g = tate::eps_cycle(&reg, 1).unwrap();
        let f = Laurent::univariate(&[(-1, s(&reg, 3)), (0, s(&reg, 7)), (1, s(&reg, 2))]);
        let r = residue_check(&g, &f).unwrap();
        assert!(r.pass);
        assert!(r.lhs.equals(&lam(&reg, "eps").scale_int(3)));
        let f = Laurent::univariate(&[(-3, s(&reg, 2)), (2, s(&reg, 1))]);
        let r = residue_check(&g, &f).unwrap();
        assert!(r.pass && r.lhs.is_zero());
    }

    #[test]
    fn cauchy_examples() {
        let reg = reg();
        let a = s(&reg, 5);
        let dom = shape_domain(&reg, Shape::Cube(1));
        let x = Character::generator(reg.eps(), Q::new(1.into(), 4.into()));
        let f = PolyFunction::monomial(&dom, &x, &Scalar::one(reg.field())).unwrap().add(&PolyFunction::constant(&dom, &a)).unwrap();
        let g = Path::interval(Target::Affine { arity: 1 }, f).unwrap();
        let poly = Laurent::univariate(&[(0, s(&reg, 1)), (1, s(&reg, 5)), (2, s(&reg, 25)), (3, s(&reg, 125))]);
        for order in 0..=3 {
            let r = cauchy_check(&g, &poly, &a, order, 34).unwrap();
            assert!(r.pass_taylor, "order {order}: {:?} vs {:?}", r.lhs, r.rhs_taylor);
            assert_eq!(r.pass_literal, order <= 1);
        }
    }

    #[test]
    fn tate_periods() {
        let reg = reg();
        let omega = TargetForm::invariant(&reg);
        let v1 = integrate_path(&tate::gamma1(&reg).unwrap(), &omega).unwrap();
        assert!(v1.equals(&lam(&reg, "1+a").scale_int(4)));
        let v2 = integrate_path(&tate::gamma2(&reg).unwrap(), &omega).unwrap();
        let plog = Scalar::from_i64(reg.field(), 6).plog().unwrap().scale_int(4);
        assert!(v2.agrees_to(&Period::constant(&reg, &plog), 34));
        let v3 = integrate_path(&tate::gamma3(&reg).unwrap(), &omega).unwrap();
        assert!(v3.equals(&lam(&reg, "q").scale_int(4)));
        for d in -2..=2 {
            let c = tate::obstruction_chain(&reg, d, true).unwrap();
            let (v, verdict) = obstruction_certificate(&reg, &c, &omega).unwrap();
            assert_eq!(verdict, Verdict::NonBoundary);
            let expected = lam(&reg, "1+a").scale_int(4).sub(&Period::constant(&reg, &plog)).add(&lam(&reg, "q").scale_int(4 * d));
            assert!(v.agrees_to(&expected, 34));
        }
        let c = tate::obstruction_chain(&reg, 0, false).unwrap();
        assert_eq!(obstruction_certificate(&reg, &c, &omega).unwrap().1, Verdict::Inconclusive);
    }

    #[test]
    fn stokes_pairing() {
        let reg = reg();
        let dom = shape_domain(&reg, Shape::Cube(2));
        let f1 = PolyFunction::from_ambient(&dom, vec![(Character::parse_text(&reg, "p|q").unwrap(), s(&reg, 1))]).unwrap();
        let f2 = PolyFunction::from_ambient(&dom, vec![(Character::parse_text(&reg, "q|eps^1/4").unwrap(), s(&reg, 2))]).unwrap();
        let sq = Path::new(Shape::Cube(2), Target::Affine { arity: 2 }, vec![f1, f2]).unwrap();
        let c = Chain::single(sq).unwrap();
        let omega = TargetForm::new(
            2,
            1,
            vec![
                (vec![0], Laurent::new(2, vec![(vec![1, 2], s(&reg, 1))]).unwrap()),
                (vec![1], Laurent::new(2, vec![(vec![0, 1], s(&reg, 3))]).unwrap()),
            ],
        )
        .unwrap();
        let lhs = integrate_chain_in(&reg, &c.boundary().unwrap(), &omega).unwrap();
        let rhs = integrate_chain_in(&reg, &c, &omega.d().unwrap()).unwrap();
        assert!(lhs.equals(&rhs), "{lhs:?} vs {rhs:?}");
    }
}
