//! Barycentric subdivision operators `B` and the chain homotopies `Φ`
//! between `B` and the identity, for simplicial and (generalised) cubical
//! chains.
//!
//! Everything happens in a formal chain algebra: a generator `[f∘A]` is a
//! polynomial map `A` over `Q` precomposed with a free symbol `f`.  The
//! operators act by precomposition, `Φ[f∘A] = Σ ± [f∘A∘L]`, and identities
//! are checked by full polynomial expansion — exact and sign-sensitive.
//!
//! Simplicial maps are written in barycentric coordinates `t_0..t_n` and are
//! linear; cubical maps act on `[0,1]^n` with coordinates `t_1..t_n` and may
//! have any degree.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::linalg::{qi, Q};

/// A polynomial over `Q` in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(vars: usize) -> Poly {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Q) -> Poly {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate `t_i` (0-based).
    pub fn var(vars: usize, i: usize) -> Poly {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Poly::zero(vars);
        p.add_term(e, qi(1));
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        let sum = self.terms.remove(&e).map_or(c.clone(), |d| d + c);
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        out
    }

    fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.vars, qi(1)), |acc, _| acc.mul(self))
    }

    /// `p(q_1, .., q_k)` where every `q_i` lives in the same ring.
    pub fn substitute(&self, values: &[Poly]) -> Poly {
        let vars = values.first().map_or(0, |v| v.vars);
        let mut out = Poly::zero(vars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(vars, c.clone());
            for (v, k) in values.iter().zip(e) {
                if *k > 0 {
                    term = term.mul(&v.pow(*k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// True when `t_i` occurs.
    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Value at a rational point.
    pub fn evaluate(&self, t: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(t).fold(c.clone(), |acc, (k, x)| acc * num_traits::pow(x.clone(), *k as usize)))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Text form in variables `name_{offset}, name_{offset+1}, ..`.
    pub fn to_text(&self, name: &str, offset: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("{name}{}", i + offset) } else { format!("{name}{}^{k}", i + offset) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{abs}*{}", mono.join("*"))),
            }
        }
        out
    }
}

/// Which chain complex a formal chain belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Simplicial,
    Cubical,
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "simplicial" | "simplex" => Some(Kind::Simplicial),
            "cubical" | "cube" => Some(Kind::Cubical),
            _ => None,
        }
    }

    /// Number of source variables of an `n`-dimensional generator.
    pub fn vars(&self, n: usize) -> usize {
        match self {
            Kind::Simplicial => n + 1,
            Kind::Cubical => n,
        }
    }

    fn var_offset(&self) -> usize {
        match self {
            Kind::Simplicial => 0,
            Kind::Cubical => 1,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Simplicial => "simplicial",
            Kind::Cubical => "cubical",
        })
    }
}

/// A polynomial map `A` from a source cube/simplex, standing for `f∘A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalMap {
    vars: usize,
    comps: Vec<Poly>,
}

impl FormalMap {
    pub fn new(vars: usize, comps: Vec<Poly>) -> FormalMap {
        assert!(comps.iter().all(|c| c.vars == vars), "components must share the source variables");
        FormalMap { vars, comps }
    }

    pub fn identity(vars: usize) -> FormalMap {
        FormalMap { vars, comps: (0..vars).map(|i| Poly::var(vars, i)).collect() }
    }

    /// A linear map sending the source vertex `e_j` to `columns[j]`
    /// (barycentric coordinates).
    pub fn linear(columns: &[Vec<Q>]) -> FormalMap {
        let vars = columns.len();
        let dim = columns.first().map_or(0, |c| c.len());
        let comps = (0..dim)
            .map(|k| {
                (0..vars).fold(Poly::zero(vars), |acc, j| acc.add(&Poly::var(vars, j).scale(&columns[j][k])))
            })
            .collect();
        FormalMap { vars, comps }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FormalMap) -> FormalMap {
        assert_eq!(inner.comps.len(), self.vars, "composition dimension mismatch");
        FormalMap { vars: inner.vars, comps: self.comps.iter().map(|c| c.substitute(&inner.comps)).collect() }
    }

    /// True when no component depends on some source variable.
    pub fn is_degenerate(&self) -> bool {
        (0..self.vars).any(|i| self.comps.iter().all(|c| !c.depends_on(i)))
    }

    /// Image of a rational point.
    pub fn apply(&self, t: &[Q]) -> Vec<Q> {
        self.comps.iter().map(|c| c.evaluate(t)).collect()
    }

    pub fn to_text(&self, kind: Kind) -> String {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_text("t", kind.var_offset())).collect();
        format!("f({})", parts.join(", "))
    }
}

/// The cube face `t_i = σ` (1-based `i`) as a map `[0,1]^{n-1} → [0,1]^n`.
pub fn cube_face(n: usize, i: usize, sigma: u8) -> FormalMap {
    let vars = n - 1;
    let comps = (1..=n)
        .map(|k| match k.cmp(&i) {
            std::cmp::Ordering::Less => Poly::var(vars, k - 1),
            std::cmp::Ordering::Equal => Poly::constant(vars, qi(sigma as i64)),
            std::cmp::Ordering::Greater => Poly::var(vars, k - 2),
        })
        .collect();
    FormalMap { vars, comps }
}

/// The simplex face opposite vertex `i`, `Δ^{n-1} → Δ^n`.
pub fn simplex_face(n: usize, i: usize) -> FormalMap {
    let vars = n;
    let comps = (0..=n)
        .map(|k| match k.cmp(&i) {
            std::cmp::Ordering::Less => Poly::var(vars, k),
            std::cmp::Ordering::Equal => Poly::zero(vars),
            std::cmp::Ordering::Greater => Poly::var(vars, k - 1),
        })
        .collect();
    FormalMap { vars, comps }
}

/// An integer combination of generators `[f∘A]` of one degree, in
/// canonical form (sorted, merged, zero weights removed, degenerate cubes
/// removed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChain {
    kind: Kind,
    degree: usize,
    terms: BTreeMap<FormalMap, i64>,
}

impl FormalChain {
    pub fn zero(kind: Kind, degree: usize) -> FormalChain {
        FormalChain { kind, degree, terms: BTreeMap::new() }
    }

    /// The chain `[f]` of the generic `n`-dimensional generator.
    pub fn generic(kind: Kind, n: usize) -> FormalChain {
        let mut c = FormalChain::zero(kind, n);
        c.push(FormalMap::identity(kind.vars(n)), 1);
        c
    }

    pub fn from_terms(kind: Kind, degree: usize, terms: Vec<(FormalMap, i64)>) -> FormalChain {
        let mut c = FormalChain::zero(kind, degree);
        for (m, w) in terms {
            c.push(m, w);
        }
        c
    }

    fn push(&mut self, map: FormalMap, w: i64) {
        assert_eq!(map.vars, self.kind.vars(self.degree), "generator of the wrong dimension");
        if w == 0 || (self.kind == Kind::Cubical && map.is_degenerate()) {
            return;
        }
        let sum = self.terms.remove(&map).unwrap_or(0) + w;
        if sum != 0 {
            self.terms.insert(map, sum);
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<FormalMap, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormalChain) -> FormalChain {
        assert_eq!((self.kind, self.degree), (other.kind, other.degree));
        let mut out = self.clone();
        for (m, w) in &other.terms {
            out.push(m.clone(), *w);
        }
        out
    }

    pub fn scale(&self, k: i64) -> FormalChain {
        let mut out = FormalChain::zero(self.kind, self.degree);
        for (m, w) in &self.terms {
            out.push(m.clone(), w * k);
        }
        out
    }

    pub fn sub(&self, other: &FormalChain) -> FormalChain {
        self.add(&other.scale(-1))
    }

    /// Cubical `Σ_{i,σ} (−1)^{i+σ}[f∘A∘face(i,σ)]`, simplicial
    /// `Σ_i (−1)^i [f∘A∘face(i)]`.
    pub fn boundary(&self) -> FormalChain {
        let n = self.degree;
        assert!(n >= 1, "the boundary needs degree at least one");
        let mut out = FormalChain::zero(self.kind, n - 1);
        for (m, w) in &self.terms {
            match self.kind {
                Kind::Cubical => {
                    for i in 1..=n {
                        for sigma in 0..=1u8 {
                            let sign = if (i + sigma as usize) % 2 == 0 { 1 } else { -1 };
                            out.push(m.compose(&cube_face(n, i, sigma)), sign * w);
                        }
                    }
                }
                Kind::Simplicial => {
                    for i in 0..=n {
                        out.push(m.compose(&simplex_face(n, i)), if i % 2 == 0 { *w } else { -w });
                    }
                }
            }
        }
        out
    }

    /// Applies an operator given on the generic generator:
    /// `[f∘A] ↦ Σ w [f∘A∘L]` for `op = Σ w [f∘L]`.
    pub fn apply(&self, op: &FormalChain) -> FormalChain {
        assert_eq!(op.kind, self.kind);
        let mut out = FormalChain::zero(self.kind, op.degree);
        for (a, w) in &self.terms {
            for (l, s) in &op.terms {
                out.push(a.compose(l), w * s);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(m, w)| json!({"weight": w, "map": m.to_text(self.kind)})).collect();
        json!({"kind": self.kind.to_string(), "degree": self.degree, "terms": terms})
    }
}

impl fmt::Display for FormalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, w)) in self.terms.iter().enumerate() {
            let sign = if *w < 0 { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let abs = w.abs();
            let coeff = if abs == 1 { String::new() } else { format!("{abs}") };
            write!(f, "{sep}{sign}{}{coeff}[{}]", if k > 0 && !sign.is_empty() { " " } else { "" }, m.to_text(self.kind))?;
        }
        Ok(())
    }
}

/// Largest dimension the operators are built for.
pub const MAX_DIM: usize = 3;

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Barycentre of the vertices of `Δ^n` not hit by `used`
/// (the vector `a^{(n,i)}_σ`).
fn barycentre_vector(n: usize, used: &[usize]) -> Vec<Q> {
    let weight = Q::new(1.into(), ((n + 1 - used.len()) as i64).into());
    (0..=n).map(|k| if used.contains(&k) { Q::zero() } else { weight.clone() }).collect()
}

/// The sign exponent `Σ(σ)`: each step adds the number of still unused
/// vertices below the vertex removed at that step.
pub fn flag_sign_exponent(sigma: &[usize]) -> usize {
    (0..sigma.len()).map(|l| (0..sigma[l]).filter(|x| !sigma[..l].contains(x)).count()).sum()
}

/// Injective maps `[i] ↪ [n+1]` as ordered tuples.
fn injections(n: usize, i: usize) -> Vec<Vec<usize>> {
    (0..=n).permutations(i).collect()
}

/// Simplicial subdivision `B f = Σ_σ (−1)^{Σ(σ)} [f(Σ_i a_{σ|[i]} t_i)]` on `Δ^n`:
/// one simplex per ordering of the vertices, spanned by the barycentres of
/// the flag of faces obtained by removing the vertices in that order.
pub fn simplicial_b(n: usize) -> FormalChain {
    assert!(n <= MAX_DIM);
    let mut out = FormalChain::zero(Kind::Simplicial, n);
    for sigma in injections(n, n + 1) {
        let columns: Vec<Vec<Q>> = (0..=n).map(|i| barycentre_vector(n, &sigma[..i])).collect();
        out.push(FormalMap::linear(&columns), sign(flag_sign_exponent(&sigma)));
    }
    out
}

/// Number of generator maps of the simplicial homotopy on `Δ^n`:
/// `Σ_{i=0}^{n} (n+1)!/(n+1−i)!`.
pub fn simplicial_phi_generators(n: usize) -> usize {
    (0..=n).map(|i| ((n + 2 - i)..=(n + 1)).product::<usize>()).sum()
}

/// The simplicial homotopy `Φ f ∈ C_{n+1}`: for each partial flag
/// `σ: [i] ↪ [n+1]`, the `(n+1)`-simplex with vertices the barycentres
/// `a_{σ|[0]}, .., a_{σ|[i]}` followed by the unused original vertices in
/// increasing order, weighted `(−1)^{n+i+Σ(σ)}`.
pub fn simplicial_phi(n: usize) -> FormalChain {
    assert!(n <= MAX_DIM);
    let mut out = FormalChain::zero(Kind::Simplicial, n + 1);
    for i in 0..=n {
        for sigma in injections(n, i) {
            let mut columns: Vec<Vec<Q>> = (0..=i).map(|j| barycentre_vector(n, &sigma[..j])).collect();
            for m in (0..=n).filter(|m| !sigma.contains(m)) {
                columns.push((0..=n).map(|k| if k == m { qi(1) } else { Q::zero() }).collect());
            }
            out.push(FormalMap::linear(&columns), sign(n + i + flag_sign_exponent(&sigma)));
        }
    }
    out
}

/// Cubical subdivision `B f = Σ_{I ∈ {0,1}^n} [f((t+I)/2)]`.
pub fn cubical_b(n: usize) -> FormalChain {
    assert!(n <= MAX_DIM);
    let half = Q::new(1.into(), 2.into());
    let mut out = FormalChain::zero(Kind::Cubical, n);
    for bits in 0..(1usize << n) {
        let comps = (0..n)
            .map(|k| Poly::var(n, k).add(&Poly::constant(n, qi(((bits >> k) & 1) as i64))).scale(&half))
            .collect();
        out.push(FormalMap::new(n, comps), 1);
    }
    out
}

/// `a_n = 1 + 2^n + 2n a_{n−1}` with `a_0 = 0`: the number of generator
/// maps of the cubical homotopy.
pub fn cubical_phi_count(n: usize) -> usize {
    (1..=n).fold(0, |a, k| 1 + (1 << k) + 2 * k * a)
}

/// One generator of the cubical homotopy: the map `a^{(n)}_j` with two sign
/// exponents, the stated `χ_n(j)` and the exponent produced by the cone
/// recursion `Ψ_n f = (−1)^n C(f − Bf − Ψ_{n−1} d f)`.
#[derive(Clone, Debug)]
pub struct CubicalGenerator {
    pub map: FormalMap,
    pub chi: usize,
    pub cone: usize,
}

/// The generator maps `a^{(n)}_j : [0,1]^{n+1} → [0,1]^n`, `j = 1..a_n`.
///
/// * `j = 1`: the cone from the centre to the whole cube,
///   `((1 + (2t_m − 1)t_{n+1})/2)_m`;
/// * `j = 2..1+2^n`: cones onto the subcubes `(t+I)/2`;
/// * otherwise: cones over the previous level's maps placed on the face
///   where coordinate `i` is `1` (`σ = 0`) or `0` (`σ = 1`),
///   `j = 1+2^n+(σn+(i−1))a_{n−1}+h`.
///
/// `χ_n` is `1` at `j = 1`, `0` on the subcube cones and
/// `i + σ + χ_{n−1}(h)` on the third branch; the cone exponent is `n`,
/// `n+1` and `n + i + σ + cone_{n−1}(h)` respectively.
pub fn cubical_generators(n: usize) -> Vec<CubicalGenerator> {
    assert!(n <= MAX_DIM);
    if n == 0 {
        return Vec::new();
    }
    let vars = n + 1;
    let s = Poly::var(vars, n);
    let half = Q::new(1.into(), 2.into());
    let one = Poly::constant(vars, qi(1));
    // (1 + (2u − 1) s)/2 for a component u of the cone base.
    let cone = |u: &Poly| one.add(&u.scale(&qi(2)).sub(&one).mul(&s)).scale(&half);
    let mut out = Vec::with_capacity(cubical_phi_count(n));
    let whole = FormalMap::new(vars, (0..n).map(|m| cone(&Poly::var(vars, m))).collect());
    out.push(CubicalGenerator { map: whole, chi: 1, cone: n });
    for bits in 0..(1usize << n) {
        let comps = (0..n)
            .map(|m| {
                let u = Poly::var(vars, m).add(&Poly::constant(vars, qi(((bits >> m) & 1) as i64))).scale(&half);
                cone(&u)
            })
            .collect();
        out.push(CubicalGenerator { map: FormalMap::new(vars, comps), chi: 0, cone: n + 1 });
    }
    let lower = cubical_generators(n - 1);
    // Lift a map in t_1..t_n to the ring with t_{n+1}.
    let lift: Vec<Poly> = (0..n).map(|k| Poly::var(vars, k)).collect();
    for sigma in 0..=1usize {
        for i in 1..=n {
            for h in &lower {
                let base: Vec<Poly> = h.map.comps.iter().map(|c| c.substitute(&lift)).collect();
                let comps = (1..=n)
                    .map(|m| match m.cmp(&i) {
                        std::cmp::Ordering::Less => cone(&base[m - 1]),
                        std::cmp::Ordering::Equal => one.add(&s.scale(&qi(sign(sigma)))).scale(&half),
                        std::cmp::Ordering::Greater => cone(&base[m - 2]),
                    })
                    .collect();
                out.push(CubicalGenerator {
                    map: FormalMap::new(vars, comps),
                    chi: i + sigma + h.chi,
                    cone: n + i + sigma + h.cone,
                });
            }
        }
    }
    out
}

/// The cubical homotopy with the stated signs,
/// `Φ_n f = Σ_j (−1)^{χ_n(j)} [f∘a^{(n)}_j]`.
pub fn cubical_phi(n: usize) -> FormalChain {
    FormalChain::from_terms(
        Kind::Cubical,
        n + 1,
        cubical_generators(n).into_iter().map(|g| (g.map, sign(g.chi))).collect(),
    )
}

/// The cubical cone homotopy `Ψ_n f = (−1)^n C(f − Bf − Ψ_{n−1} d f)`, on
/// the same generator maps, satisfying `dΨ + Ψd = id − B`.
pub fn cubical_cone_homotopy(n: usize) -> FormalChain {
    FormalChain::from_terms(
        Kind::Cubical,
        n + 1,
        cubical_generators(n).into_iter().map(|g| (g.map, sign(g.cone))).collect(),
    )
}

/// `B` on the generic generator.
pub fn subdivision(kind: Kind, n: usize) -> FormalChain {
    match kind {
        Kind::Simplicial => simplicial_b(n),
        Kind::Cubical => cubical_b(n),
    }
}

/// `Φ` on the generic generator.
pub fn homotopy(kind: Kind, n: usize) -> FormalChain {
    match kind {
        Kind::Simplicial => simplicial_phi(n),
        Kind::Cubical => cubical_phi(n),
    }
}

/// Outcome of a homotopy or chain-map identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub kind: Kind,
    pub n: usize,
    /// Number of generator maps of `Φ_n` before cancellation.
    pub generator_maps: usize,
    pub lhs: FormalChain,
    pub rhs: FormalChain,
    /// `lhs − rhs`.
    pub residual: FormalChain,
    pub pass: bool,
}

impl IdentityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.to_string(),
            "n": self.n,
            "generator_maps": self.generator_maps,
            "lhs_terms": self.lhs.len(),
            "rhs_terms": self.rhs.len(),
            "residual_terms": self.residual.len(),
            "residual": self.residual.to_json()["terms"],
            "pass": self.pass,
        })
    }
}

fn report(kind: Kind, n: usize, generator_maps: usize, lhs: FormalChain, rhs: FormalChain) -> IdentityReport {
    let residual = lhs.sub(&rhs);
    let pass = residual.is_empty();
    IdentityReport { kind, n, generator_maps, lhs, rhs, residual, pass }
}

fn generator_count(kind: Kind, n: usize) -> usize {
    match kind {
        Kind::Simplicial => simplicial_phi_generators(n),
        Kind::Cubical => cubical_phi_count(n),
    }
}

/// Checks the stated identities on the generic `n`-dimensional generator:
/// `∂Φ − Φ∂ = (−1)^n(id − B)` (simplicial) and `dΦ_n − Φ_{n−1}d = id − B`
/// with the `χ` signs (cubical, modulo degenerate cubes).
///
/// The cubical statement cannot hold for `n ≥ 2` with any choice of `Φ`:
/// applying `d` to it at level `n` and comparing with level `n−1` forces
/// `2(id − B)d = 0`.  The check is still run literally so the residual can
/// be inspected; [`graded_homotopy_check`] verifies the consistent form.
pub fn homotopy_identity_check(kind: Kind, n: usize) -> IdentityReport {
    assert!(n <= MAX_DIM);
    let f = FormalChain::generic(kind, n);
    let mut lhs = homotopy(kind, n).boundary();
    if n >= 1 {
        lhs = lhs.sub(&f.boundary().apply(&homotopy(kind, n - 1)));
    }
    let diff = f.sub(&f.apply(&subdivision(kind, n)));
    let rhs = match kind {
        Kind::Simplicial => diff.scale(sign(n)),
        Kind::Cubical => diff,
    };
    report(kind, n, generator_count(kind, n), lhs, rhs)
}

/// The homotopy in graded form, `∂H + H∂ = id − B`: for simplices
/// `H_n = (−1)^n Φ_n`, for cubes the cone homotopy.
pub fn graded_homotopy(kind: Kind, n: usize) -> FormalChain {
    match kind {
        Kind::Simplicial => simplicial_phi(n).scale(sign(n)),
        Kind::Cubical => cubical_cone_homotopy(n),
    }
}

/// Checks `∂H_n + H_{n−1}∂ = id − B` on the generic generator.
pub fn graded_homotopy_check(kind: Kind, n: usize) -> IdentityReport {
    assert!(n <= MAX_DIM);
    let f = FormalChain::generic(kind, n);
    let mut lhs = graded_homotopy(kind, n).boundary();
    if n >= 1 {
        lhs = lhs.add(&f.boundary().apply(&graded_homotopy(kind, n - 1)));
    }
    let rhs = f.sub(&f.apply(&subdivision(kind, n)));
    report(kind, n, generator_count(kind, n), lhs, rhs)
}

/// Checks that `B` commutes with the boundary: `∂B[f] = B∂[f]`.
pub fn chain_map_check(kind: Kind, n: usize) -> IdentityReport {
    assert!((1..=MAX_DIM).contains(&n));
    let f = FormalChain::generic(kind, n);
    let b = subdivision(kind, n);
    let lhs = f.apply(&b).boundary();
    let rhs = f.boundary().apply(&subdivision(kind, n - 1));
    report(kind, n, b.len(), lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Q {
        Q::new(1.into(), 2.into())
    }

    #[test]
    fn generator_counts() {
        assert_eq!((0..=3).map(cubical_phi_count).collect::<Vec<_>>(), vec![0, 3, 17, 111]);
        for n in 0..=3 {
            assert_eq!(cubical_generators(n).len(), cubical_phi_count(n));
            assert_eq!(cubical_b(n).len(), 1 << n);
            assert_eq!(simplicial_b(n).len(), (1..=n + 1).product::<usize>());
        }
        assert_eq!(simplicial_phi_generators(2), 1 + 3 + 6);
    }

    #[test]
    fn small_cases() {
        assert_eq!(simplicial_b(0), FormalChain::generic(Kind::Simplicial, 0));
        assert_eq!(cubical_b(0), FormalChain::generic(Kind::Cubical, 0));
        let b1 = simplicial_b(1);
        assert_eq!(b1.len(), 2);
        let mid = vec![h(), h()];
        for m in b1.terms().keys() {
            let entries: Vec<Q> = m.components().iter().flat_map(|c| c.terms().values().cloned()).collect();
            assert!(entries.iter().all(|e| *e == h() || *e == qi(1)));
            assert_eq!(m.apply(&[qi(1), qi(0)]), mid);
        }
        // Cubical n = 1: f(t/2) + f((t+1)/2).
        let expected = FormalChain::from_terms(
            Kind::Cubical,
            1,
            vec![
                (FormalMap::new(1, vec![Poly::var(1, 0).scale(&h())]), 1),
                (FormalMap::new(1, vec![Poly::var(1, 0).add(&Poly::constant(1, qi(1))).scale(&h())]), 1),
            ],
        );
        assert_eq!(cubical_b(1), expected);
        // The first cone map at n = 1 is f((1 + (2t_1 − 1)t_2)/2), with sign χ = 1.
        let first = &cubical_generators(1)[0];
        assert_eq!(first.map.to_text(Kind::Cubical), "f(1/2 - 1/2*t2 + t1*t2)");
        assert_eq!(first.chi, 1);
    }

    #[test]
    fn boundary_examples() {
        let d = FormalChain::generic(Kind::Cubical, 1).boundary();
        assert_eq!(d.to_string(), "-[f(0)] + [f(1)]");
        for kind in [Kind::Simplicial, Kind::Cubical] {
            for n in 2..=3 {
                let c = homotopy(kind, n - 1);
                assert!(c.boundary().boundary().is_empty(), "{kind} {n}");
            }
        }
    }

    #[test]
    fn homotopy_identities() {
        for n in 0..=2 {
            let r = homotopy_identity_check(Kind::Simplicial, n);
            assert!(r.pass, "simplicial n={n}: residual {}", r.residual);
        }
        for kind in [Kind::Simplicial, Kind::Cubical] {
            for n in 0..=2 {
                let r = graded_homotopy_check(kind, n);
                assert!(r.pass, "{kind} n={n}: residual {}", r.residual);
            }
            for n in 1..=2 {
                assert!(chain_map_check(kind, n).pass, "{kind} n={n}");
            }
        }
    }

    #[test]
    fn stated_cubical_signs() {
        // The stated identity holds in dimension 0 and 1 only.
        assert!(homotopy_identity_check(Kind::Cubical, 0).pass);
        assert!(homotopy_identity_check(Kind::Cubical, 1).pass);
        assert!(!homotopy_identity_check(Kind::Cubical, 2).pass);
        // The two sign systems coincide in dimension one.
        assert!(cubical_generators(1).iter().all(|g| (g.chi + g.cone) % 2 == 0));
    }
}
