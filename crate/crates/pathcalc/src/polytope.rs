//! Rational polytopes cut out by integer inequalities.
//!
//! A [`Polytope`] is a nonempty bounded set `{s : a_i·s + b_i ≥ 0}` in
//! `R^n`.  Its vertex list is computed exactly at construction.  The module
//! also provides:
//!
//! * the lattice `L(S)` of integer affine forms vanishing on `S`;
//! * a deterministic thick representative `T` (a full-dimensional polytope
//!   integrally isomorphic to `S`);
//! * affine maps, convex hulls and exact volumes;
//! * the covering algebra (`∧` and the `⋎`-cover check).

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{self, qi, Q};

/// One inequality `a·s + b ≥ 0` with integer data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ineq {
    pub a: Vec<BigInt>,
    pub b: BigInt,
}

impl Ineq {
    /// Builds an inequality from machine integers.
    pub fn new(a: &[i64], b: i64) -> Ineq {
        Ineq { a: a.iter().map(|x| BigInt::from(*x)).collect(), b: BigInt::from(b) }
    }

    /// Builds `a·s + b ≥ 0` from rational data, scaled to primitive integers.
    pub fn from_rational(a: &[Q], b: &Q) -> Ineq {
        let mut v = a.to_vec();
        v.push(b.clone());
        let mut ints = linalg::primitive(&v);
        let b = ints.pop().unwrap();
        Ineq { a: ints, b }
    }

    /// Value `a·s + b` at a rational point.
    pub fn eval(&self, s: &[Q]) -> Q {
        self.a
            .iter()
            .zip(s)
            .fold(Q::from_integer(self.b.clone()), |acc, (x, y)| acc + Q::from_integer(x.clone()) * y)
    }

    fn normalized(&self) -> Ineq {
        let g = self.a.iter().fold(self.b.abs(), |acc, x| acc.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Ineq { a: self.a.iter().map(|x| x / &g).collect(), b: &self.b / &g }
    }
}

/// An affine map `s ↦ A s + b` from `R^source` to `R^target` with rational
/// data.  It is *integral* when `A` and `b` are integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    source: usize,
    matrix: Vec<Vec<Q>>,
    translation: Vec<Q>,
}

impl AffineMap {
    /// Builds a map from its matrix (`target × source`) and translation.
    pub fn new(source: usize, matrix: Vec<Vec<Q>>, translation: Vec<Q>) -> Result<AffineMap> {
        if matrix.len() != translation.len() || matrix.iter().any(|r| r.len() != source) {
            return Err(Error::DimensionMismatch("affine map matrix/translation shapes disagree".into()));
        }
        Ok(AffineMap { source, matrix, translation })
    }

    /// Builds a map from integer data.
    pub fn from_ints(source: usize, matrix: &[Vec<i64>], translation: &[i64]) -> Result<AffineMap> {
        AffineMap::new(
            source,
            matrix.iter().map(|r| r.iter().map(|x| qi(*x)).collect()).collect(),
            translation.iter().map(|x| qi(*x)).collect(),
        )
    }

    /// The identity of `R^n`.
    pub fn identity(n: usize) -> AffineMap {
        let matrix = (0..n).map(|i| (0..n).map(|j| if i == j { qi(1) } else { qi(0) }).collect()).collect();
        AffineMap { source: n, matrix, translation: vec![qi(0); n] }
    }

    /// Face `∂^{(i)}` of the normalised simplex: `R^n → R^{n+1}`, inserting `0` at slot `i`.
    pub fn simplex_face(n: usize, i: usize) -> AffineMap {
        let matrix = (0..=n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let src = if r < i { Some(r) } else if r == i { None } else { Some(r - 1) };
                        if src == Some(c) { qi(1) } else { qi(0) }
                    })
                    .collect()
            })
            .collect();
        AffineMap { source: n, matrix, translation: vec![qi(0); n + 1] }
    }

    /// Degeneracy `σ^{(i)}`: `R^{n+1} → R^n`, merging slots `i` and `i+1`.
    pub fn simplex_degeneracy(n: usize, i: usize) -> AffineMap {
        let matrix = (0..n)
            .map(|r| {
                (0..=n)
                    .map(|c| {
                        let hit = if r < i { c == r } else if r == i { c == i || c == i + 1 } else { c == r + 1 };
                        if hit { qi(1) } else { qi(0) }
                    })
                    .collect()
            })
            .collect();
        AffineMap { source: n + 1, matrix, translation: vec![qi(0); n] }
    }

    /// Cube face `∂^{(i,σ)}` (`i` is 1-based): `R^{n−1} → R^n`, inserting `σN` at slot `i`.
    pub fn cube_face(n: usize, i: usize, sigma: u8, big_n: i64) -> AffineMap {
        let matrix = (0..n)
            .map(|r| {
                (0..n - 1)
                    .map(|c| {
                        let src = if r + 1 < i { Some(r) } else if r + 1 == i { None } else { Some(r - 1) };
                        if src == Some(c) { qi(1) } else { qi(0) }
                    })
                    .collect()
            })
            .collect();
        let translation = (0..n).map(|r| if r + 1 == i { qi(sigma as i64 * big_n) } else { qi(0) }).collect();
        AffineMap { source: n - 1, matrix, translation }
    }

    /// The reflection `t ↦ m − t` of `R`.
    pub fn reflection(m: &Q) -> AffineMap {
        AffineMap { source: 1, matrix: vec![vec![qi(-1)]], translation: vec![m.clone()] }
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[Q] {
        &self.translation
    }

    /// True when matrix and translation are integral.
    pub fn is_integral(&self) -> bool {
        self.matrix.iter().flatten().chain(self.translation.iter()).all(|x| x.is_integer())
    }

    /// Image of a point.
    pub fn apply(&self, s: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.matrix, s)
            .into_iter()
            .zip(&self.translation)
            .map(|(x, b)| x + b)
            .collect()
    }

    /// The composite `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if inner.target_dim() != self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose R^{} <- R^{} after R^{} <- R^{}",
                self.target_dim(),
                self.source,
                inner.target_dim(),
                inner.source
            )));
        }
        let matrix = if self.source == 0 {
            vec![vec![qi(0); inner.source]; self.target_dim()]
        } else {
            linalg::mat_mul(&self.matrix, &inner.matrix)
        };
        let translation = self.apply(&inner.translation);
        Ok(AffineMap { source: inner.source, matrix, translation })
    }

    /// Image of a polytope (the hull of the vertex images).
    pub fn image(&self, s: &Polytope) -> Result<Polytope> {
        if s.n != self.source {
            return Err(Error::DimensionMismatch("polytope does not live in the map's source".into()));
        }
        let pts: Vec<Vec<Q>> = s.vertices.iter().map(|v| self.apply(v)).collect();
        Polytope::hull(self.target_dim(), &pts)
    }
}

/// A nonempty bounded polytope with integer inequality data.
#[derive(Clone)]
pub struct Polytope {
    n: usize,
    ineqs: Vec<Ineq>,
    vertices: Vec<Vec<Q>>,
}

/// The thick representative of a polytope: `a : S → T` and `a_inv : T → S`
/// are mutually inverse on the affine hull of `S`.
#[derive(Clone, Debug)]
pub struct ThickRep {
    pub t: Polytope,
    pub a: AffineMap,
    pub a_inv: AffineMap,
}

fn affine_rank(points: &[Vec<Q>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(x, y)| x - y).collect())
        .collect();
    linalg::rank(&diffs)
}

/// Integer rows spanning the saturated lattice of linear forms vanishing on
/// the direction space of `points`, in row Hermite form.
fn direction_relations(n: usize, points: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    let diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| {
            let d: Vec<Q> = p.iter().zip(&points[0]).map(|(x, y)| x - y).collect();
            linalg::primitive(&d)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let kern = if diffs.is_empty() {
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    } else {
        linalg::integer_kernel(&diffs, n)
    };
    linalg::row_hnf(&kern)
}

/// A chart `(a, a_inv)` of the affine hull `{s : B s = B p0}` with `a`
/// integral and `a_inv` integral up to its translation.
fn chart(n: usize, relations: &[Vec<BigInt>], p0: &[Q]) -> (AffineMap, AffineMap) {
    let c = relations.len();
    let d = n - c;
    if c == 0 {
        return (AffineMap::identity(n), AffineMap::identity(n));
    }
    let bq = linalg::to_q(relations);
    let kappa = linalg::mat_vec(&bq, p0);
    for j in (0..n).combinations(d) {
        let mut w = bq.clone();
        for &jj in &j {
            w.push((0..n).map(|k| if k == jj { qi(1) } else { qi(0) }).collect());
        }
        if linalg::det(&w).abs() != qi(1) {
            continue;
        }
        let winv = linalg::inverse(&w).expect("unimodular");
        let a = AffineMap {
            source: n,
            matrix: j.iter().map(|&jj| (0..n).map(|k| if k == jj { qi(1) } else { qi(0) }).collect()).collect(),
            translation: vec![qi(0); d],
        };
        let lin: Vec<Vec<Q>> = winv.iter().map(|r| r[c..].to_vec()).collect();
        let head: Vec<Vec<Q>> = winv.iter().map(|r| r[..c].to_vec()).collect();
        let a_inv = AffineMap { source: d, matrix: lin, translation: linalg::mat_vec(&head, &kappa) };
        return (a, a_inv);
    }
    // No coordinate projection is unimodular: complete the relation lattice
    // with the unimodular transform of its column Hermite form.
    let (h, u, _) = linalg::column_hnf(relations, n);
    let uq = linalg::to_q(&u);
    let uinv = linalg::inverse(&uq).expect("unimodular");
    let hq: Vec<Vec<Q>> = linalg::to_q(&h).into_iter().map(|r| r[..c].to_vec()).collect();
    let hinv = linalg::inverse(&hq).expect("saturated relations");
    let a = AffineMap { source: n, matrix: uinv[c..].to_vec(), translation: vec![qi(0); d] };
    let head: Vec<Vec<Q>> = uq.iter().map(|r| r[..c].to_vec()).collect();
    let lin: Vec<Vec<Q>> = uq.iter().map(|r| r[c..].to_vec()).collect();
    let t = linalg::mat_vec(&head, &linalg::mat_vec(&hinv, &kappa));
    (a, AffineMap { source: d, matrix: lin, translation: t })
}

/// Facet inequalities of the hull of full-dimensional points in `R^d`.
fn facets_full(d: usize, pts: &[Vec<Q>]) -> Vec<Ineq> {
    let mut out = BTreeSet::new();
    if d == 0 {
        return Vec::new();
    }
    for combo in (0..pts.len()).combinations(d) {
        let p0 = &pts[combo[0]];
        let rows: Vec<Vec<Q>> = combo[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(p0).map(|(x, y)| x - y).collect())
            .collect();
        let ker = linalg::kernel(&rows, d);
        if ker.len() != 1 {
            continue;
        }
        let c = &ker[0];
        let e = -c.iter().zip(p0).fold(qi(0), |acc, (x, y)| acc + x * y);
        let vals: Vec<Q> = pts
            .iter()
            .map(|p| c.iter().zip(p).fold(e.clone(), |acc, (x, y)| acc + x * y))
            .collect();
        if vals.iter().all(|v| !v.is_negative()) {
            out.insert(Ineq::from_rational(c, &e));
        } else if vals.iter().all(|v| !v.is_positive()) {
            let nc: Vec<Q> = c.iter().map(|x| -x).collect();
            out.insert(Ineq::from_rational(&nc, &-e));
        }
    }
    out.into_iter().collect()
}

/// Exact `d`-dimensional volume of the hull of points in `R^d`.
fn volume_full(d: usize, pts: &[Vec<Q>]) -> Q {
    if d == 0 {
        return qi(1);
    }
    if affine_rank(pts) < d {
        return qi(0);
    }
    let facets = facets_full(d, pts);
    let verts = Polytope::new(d, facets.clone()).expect("hull is a polytope").vertices;
    let tight: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|f| (0..verts.len()).filter(|&i| f.eval(&verts[i]).is_zero()).collect())
        .collect();
    let all: Vec<usize> = (0..verts.len()).collect();
    let simplices = triangulate(&verts, &tight, &all, d);
    let mut fact = Q::one();
    for k in 1..=d {
        fact *= qi(k as i64);
    }
    simplices
        .iter()
        .map(|s| {
            let rows: Vec<Vec<Q>> = s[1..]
                .iter()
                .map(|&i| verts[i].iter().zip(&verts[s[0]]).map(|(x, y)| x - y).collect())
                .collect();
            linalg::det(&rows).abs()
        })
        .fold(qi(0), |a, b| a + b)
        / fact
}

/// Pulling triangulation of a face (given by vertex indices) of dimension `dim`.
fn triangulate(verts: &[Vec<Q>], tight: &[BTreeSet<usize>], face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    let v0 = face[0];
    if dim == 0 {
        return vec![vec![v0]];
    }
    let face_set: BTreeSet<usize> = face.iter().copied().collect();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in tight {
        let sub: Vec<usize> = face_set.intersection(t).copied().collect();
        if sub.is_empty() || sub.contains(&v0) || sub.len() == face.len() {
            continue;
        }
        let pts: Vec<Vec<Q>> = sub.iter().map(|&i| verts[i].clone()).collect();
        if affine_rank(&pts) == dim - 1 {
            facets.insert(sub);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut s in triangulate(verts, tight, &f, dim - 1) {
            s.insert(0, v0);
            out.push(s);
        }
    }
    out
}

impl Polytope {
    /// Builds `{s ∈ R^n : a_i·s + b_i ≥ 0}`; fails when empty or unbounded.
    pub fn new(n: usize, ineqs: Vec<Ineq>) -> Result<Polytope> {
        Polytope::from_ineqs(n, ineqs)?.ok_or_else(|| Error::InvalidPolytope("the inequalities have no solution".into()))
    }

    /// Like [`Polytope::new`] but reports emptiness as `None`.
    pub fn from_ineqs(n: usize, ineqs: Vec<Ineq>) -> Result<Option<Polytope>> {
        if ineqs.iter().any(|i| i.a.len() != n) {
            return Err(Error::DimensionMismatch(format!("inequality arity differs from n = {n}")));
        }
        let mut set = BTreeSet::new();
        for i in ineqs {
            let i = i.normalized();
            if i.a.iter().all(|x| x.is_zero()) {
                if i.b.is_negative() {
                    return Ok(None);
                }
                continue;
            }
            set.insert(i);
        }
        let ineqs: Vec<Ineq> = set.into_iter().collect();
        let rows: Vec<Vec<Q>> = ineqs.iter().map(|i| i.a.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
        let mut vertices: BTreeSet<Vec<Q>> = BTreeSet::new();
        if n == 0 {
            vertices.insert(Vec::new());
        } else {
            for combo in (0..ineqs.len()).combinations(n) {
                let a: Vec<Vec<Q>> = combo.iter().map(|&i| rows[i].clone()).collect();
                let b: Vec<Q> = combo.iter().map(|&i| -Q::from_integer(ineqs[i].b.clone())).collect();
                if let Some(x) = linalg::solve(&a, &b) {
                    if ineqs.iter().all(|i| !i.eval(&x).is_negative()) {
                        vertices.insert(x);
                    }
                }
            }
        }
        if vertices.is_empty() {
            // Either empty, or nonempty without vertices (hence unbounded).
            if n > 0 && linalg::rank(&rows) < n && Polytope::has_point(n, &ineqs) {
                return Err(Error::InvalidPolytope("unbounded (contains a line)".into()));
            }
            return Ok(None);
        }
        if n > 0 {
            for combo in (0..ineqs.len()).combinations(n - 1) {
                let a: Vec<Vec<Q>> = combo.iter().map(|&i| rows[i].clone()).collect();
                let ker = linalg::kernel(&a, n);
                if ker.len() != 1 {
                    continue;
                }
                let d = &ker[0];
                let dots: Vec<Q> = rows.iter().map(|r| r.iter().zip(d).fold(qi(0), |acc, (x, y)| acc + x * y)).collect();
                if dots.iter().all(|x| !x.is_negative()) || dots.iter().all(|x| !x.is_positive()) {
                    return Err(Error::InvalidPolytope("unbounded (has a recession ray)".into()));
                }
            }
        }
        Ok(Some(Polytope { n, ineqs, vertices: vertices.into_iter().collect() }))
    }

    fn has_point(n: usize, ineqs: &[Ineq]) -> bool {
        // Feasibility via vertex enumeration after bounding with a large box.
        let big = BigInt::from(10).pow(12);
        let mut boxed = ineqs.to_vec();
        for i in 0..n {
            let mut a = vec![BigInt::zero(); n];
            a[i] = BigInt::one();
            boxed.push(Ineq { a: a.clone(), b: big.clone() });
            a[i] = -BigInt::one();
            boxed.push(Ineq { a, b: big.clone() });
        }
        matches!(Polytope::from_ineqs(n, boxed), Ok(Some(_)))
    }

    /// The cube `[0, N]^n`.
    pub fn cube(n: usize, big_n: i64) -> Polytope {
        let mut ineqs = Vec::new();
        for i in 0..n {
            let mut a = vec![0i64; n];
            a[i] = 1;
            ineqs.push(Ineq::new(&a, 0));
            a[i] = -1;
            ineqs.push(Ineq::new(&a, big_n));
        }
        Polytope::new(n, ineqs).expect("cube")
    }

    /// The interval `[0, N]`.
    pub fn interval(big_n: i64) -> Polytope {
        Polytope::cube(1, big_n)
    }

    /// The normalised simplex `N Δ^n = {t ∈ R^{n+1}_{≥0} : Σ t_i = N}`.
    pub fn simplex(n: usize, big_n: i64) -> Polytope {
        let m = n + 1;
        let mut ineqs = Vec::new();
        for i in 0..m {
            let mut a = vec![0i64; m];
            a[i] = 1;
            ineqs.push(Ineq::new(&a, 0));
        }
        ineqs.push(Ineq::new(&vec![1; m], -big_n));
        ineqs.push(Ineq::new(&vec![-1; m], big_n));
        Polytope::new(m, ineqs).expect("simplex")
    }

    /// The box `Π [lo_i, hi_i]` with rational bounds.
    pub fn boxed(bounds: &[(Q, Q)]) -> Result<Polytope> {
        let n = bounds.len();
        let mut ineqs = Vec::new();
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            let mut a = vec![qi(0); n];
            a[i] = qi(1);
            ineqs.push(Ineq::from_rational(&a, &-lo.clone()));
            a[i] = qi(-1);
            ineqs.push(Ineq::from_rational(&a, hi));
        }
        Polytope::new(n, ineqs)
    }

    /// The single point `{p}`.
    pub fn point(p: &[Q]) -> Polytope {
        Polytope::hull(p.len(), &[p.to_vec()]).expect("point")
    }

    /// The convex hull of finitely many points of `R^n`.
    pub fn hull(n: usize, points: &[Vec<Q>]) -> Result<Polytope> {
        let pts: Vec<Vec<Q>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.is_empty() {
            return Err(Error::InvalidPolytope("hull of no points".into()));
        }
        if pts.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch("hull points have the wrong arity".into()));
        }
        let rel = direction_relations(n, &pts);
        let mut ineqs = Vec::new();
        for r in &rel {
            let rq: Vec<Q> = r.iter().map(|x| Q::from_integer(x.clone())).collect();
            let val = rq.iter().zip(&pts[0]).fold(qi(0), |acc, (x, y)| acc + x * y);
            ineqs.push(Ineq::from_rational(&rq, &-val.clone()));
            let neg: Vec<Q> = rq.iter().map(|x| -x).collect();
            ineqs.push(Ineq::from_rational(&neg, &val));
        }
        let (a, _) = chart(n, &rel, &pts[0]);
        let d = a.target_dim();
        let local: Vec<Vec<Q>> = pts.iter().map(|p| a.apply(p)).collect();
        for f in facets_full(d, &local) {
            // c·(A s + t) + e ≥ 0
            let fq: Vec<Q> = f.a.iter().map(|x| Q::from_integer(x.clone())).collect();
            let lin: Vec<Q> = (0..n)
                .map(|j| fq.iter().zip(a.matrix()).fold(qi(0), |acc, (c, row)| acc + c * &row[j]))
                .collect();
            let off = fq.iter().zip(a.translation()).fold(Q::from_integer(f.b.clone()), |acc, (c, t)| acc + c * t);
            ineqs.push(Ineq::from_rational(&lin, &off));
        }
        Polytope::new(n, ineqs)
    }

    /// Parses a named shape: `cube:n:N`, `simplex:n:N`, `interval:N` or
    /// `box:lo,hi;lo,hi;...` (rational bounds).
    pub fn from_shape(spec: &str) -> Result<Polytope> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let int = |s: &str| -> Result<i64> {
            s.trim().parse::<i64>().map_err(|_| Error::Domain(format!("bad integer `{s}` in shape `{spec}`")))
        };
        match parts.as_slice() {
            ["cube", n, big_n] => {
                let n = int(n)?;
                let big_n = int(big_n)?;
                if n < 0 || big_n < 1 {
                    return Err(Error::Domain("cube needs n >= 0 and N >= 1".into()));
                }
                Ok(Polytope::cube(n as usize, big_n))
            }
            ["simplex", n, big_n] => {
                let n = int(n)?;
                let big_n = int(big_n)?;
                if n < 0 || big_n < 1 {
                    return Err(Error::Domain("simplex needs n >= 0 and N >= 1".into()));
                }
                Ok(Polytope::simplex(n as usize, big_n))
            }
            ["interval", big_n] => {
                let big_n = int(big_n)?;
                if big_n < 1 {
                    return Err(Error::Domain("interval needs N >= 1".into()));
                }
                Ok(Polytope::interval(big_n))
            }
            ["box", bounds] => {
                let mut out = Vec::new();
                for b in bounds.split(';') {
                    let (lo, hi) = b.split_once(',').ok_or_else(|| Error::Domain(format!("bad box bound `{b}`")))?;
                    let lo = crate::localfield::parse_rational(lo).ok_or_else(|| Error::Domain(format!("bad bound `{lo}`")))?;
                    let hi = crate::localfield::parse_rational(hi).ok_or_else(|| Error::Domain(format!("bad bound `{hi}`")))?;
                    out.push((lo, hi));
                }
                Polytope::boxed(&out)
            }
            _ => Err(Error::Domain(format!("unknown shape `{spec}`"))),
        }
    }

    /// Parses either a named shape string or the JSON inequality form.
    pub fn from_json_or_shape(value: &Value) -> Result<Polytope> {
        match value {
            Value::String(s) => Polytope::from_shape(s),
            other => Polytope::from_json(other),
        }
    }

    /// Parses `{"n": 2, "ineqs": [[a1, a2, b], ...]}`.
    pub fn from_json(value: &Value) -> Result<Polytope> {
        let n = value
            .get("n")
            .and_then(|n| n.as_u64())
            .ok_or_else(|| Error::Domain("polytope needs an integer `n`".into()))? as usize;
        let rows = value
            .get("ineqs")
            .and_then(|r| r.as_array())
            .ok_or_else(|| Error::Domain("polytope needs `ineqs`".into()))?;
        let mut ineqs = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Domain("inequality must be an array".into()))?;
            let ints: Option<Vec<BigInt>> = r
                .iter()
                .map(|x| match x {
                    Value::Number(n) => n.as_i64().map(BigInt::from),
                    Value::String(s) => s.parse().ok(),
                    _ => None,
                })
                .collect();
            let mut ints = ints.ok_or_else(|| Error::Domain("inequality entries must be integers".into()))?;
            if ints.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!("inequality needs {} entries", n + 1)));
            }
            let b = ints.pop().unwrap();
            ineqs.push(Ineq { a: ints, b });
        }
        Polytope::new(n, ineqs)
    }

    /// JSON form `{"n": .., "ineqs": [[a.., b], ..], "vertices": [[..], ..]}`.
    pub fn to_json(&self) -> Value {
        let ineqs: Vec<Value> = self
            .ineqs
            .iter()
            .map(|i| {
                let mut row: Vec<Value> = i.a.iter().map(|x| json_int(x)).collect();
                row.push(json_int(&i.b));
                Value::Array(row)
            })
            .collect();
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect();
        json!({"n": self.n, "ineqs": ineqs, "vertices": vertices})
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Defining inequalities (normalised, deduplicated).
    pub fn ineqs(&self) -> &[Ineq] {
        &self.ineqs
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    /// Affine dimension.
    pub fn dim(&self) -> usize {
        affine_rank(&self.vertices)
    }

    /// Membership test.
    pub fn contains(&self, s: &[Q]) -> bool {
        self.ineqs.iter().all(|i| !i.eval(s).is_negative())
    }

    /// Whether every vertex of `other` lies in `self`.
    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Basis of `L(S)`: integer affine forms `(a_1, …, a_n, b)` vanishing on
    /// `S`, in row Hermite normal form.
    pub fn lattice_l(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<BigInt>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut r = v.clone();
                r.push(qi(1));
                let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let kern = linalg::integer_kernel(&rows, self.n + 1);
        linalg::row_hnf(&kern)
    }

    /// Thick means no nonzero integer affine form vanishes on `S`.
    pub fn is_thick(&self) -> bool {
        self.dim() == self.n
    }

    /// The deterministic thick representative.
    pub fn thick_representative(&self) -> ThickRep {
        let rel = direction_relations(self.n, &self.vertices);
        let (a, a_inv) = chart(self.n, &rel, &self.vertices[0]);
        if rel.is_empty() {
            return ThickRep { t: self.clone(), a, a_inv };
        }
        let d = a.target_dim();
        let mut ineqs = Vec::new();
        for i in &self.ineqs {
            let aq: Vec<Q> = i.a.iter().map(|x| Q::from_integer(x.clone())).collect();
            let lin: Vec<Q> = (0..d)
                .map(|j| aq.iter().zip(a_inv.matrix()).fold(qi(0), |acc, (c, row)| acc + c * &row[j]))
                .collect();
            let off = aq.iter().zip(a_inv.translation()).fold(Q::from_integer(i.b.clone()), |acc, (c, t)| acc + c * t);
            if lin.iter().any(|x| !x.is_zero()) {
                ineqs.push(Ineq::from_rational(&lin, &off));
            }
        }
        let t = Polytope::new(d, ineqs).expect("the image of a polytope under its chart is a polytope");
        ThickRep { t, a, a_inv }
    }

    /// The intersection `S ∩ T` (`None` when empty).
    pub fn intersect(&self, other: &Polytope) -> Result<Option<Polytope>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("polytopes live in different spaces".into()));
        }
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        Polytope::from_ineqs(self.n, ineqs)
    }

    /// `S ∧ T`: the closure of the intersection of (relative) interiors, or
    /// `None` (the empty polytope).
    pub fn wedge(&self, other: &Polytope) -> Result<Option<Polytope>> {
        let Some(i) = self.intersect(other)? else { return Ok(None) };
        let d = i.dim();
        Ok(if d == self.dim() && d == other.dim() { Some(i) } else { None })
    }

    /// Exact volume in the thick coordinates of `self` (lattice-normalised
    /// so that it does not depend on the chart).
    pub fn volume(&self) -> Q {
        let rep = self.thick_representative();
        let pts: Vec<Vec<Q>> = self.vertices.iter().map(|v| rep.a.apply(v)).collect();
        volume_full(rep.a.target_dim(), &pts)
    }

    /// Checks the `⋎`-cover condition: every piece is a subpolytope of `S`
    /// of full dimension and the pieces cover `S` (compared by exact
    /// inclusion–exclusion of volumes).
    pub fn veebar_check(&self, pieces: &[Polytope]) -> Result<bool> {
        if pieces.is_empty() {
            return Ok(false);
        }
        let d = self.dim();
        for p in pieces {
            if p.n != self.n {
                return Err(Error::DimensionMismatch("cover piece lives in another space".into()));
            }
            if !self.contains_polytope(p) || p.dim() != d {
                return Ok(false);
            }
        }
        let rep = self.thick_representative();
        let vol = |p: &Polytope| -> Q {
            let pts: Vec<Vec<Q>> = p.vertices.iter().map(|v| rep.a.apply(v)).collect();
            volume_full(d, &pts)
        };
        let mut union = qi(0);
        for k in 1..=pieces.len() {
            for combo in (0..pieces.len()).combinations(k) {
                let mut acc = Some(pieces[combo[0]].clone());
                for &j in &combo[1..] {
                    acc = match acc {
                        Some(a) => a.intersect(&pieces[j])?,
                        None => None,
                    };
                }
                if let Some(a) = acc {
                    let v = vol(&a);
                    if k % 2 == 1 {
                        union += v;
                    } else {
                        union -= v;
                    }
                }
            }
        }
        Ok(union == vol(self))
    }
}

fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => Value::String(x.to_string()),
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Polytope) -> bool {
        self.n == other.n && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).join(",")))
            .collect();
        write!(f, "Polytope[R^{}; {}]", self.n, vs.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> Vec<Q> {
        v.iter().map(|x| qi(*x)).collect()
    }

    fn interval(a: i64, b: i64) -> Polytope {
        Polytope::boxed(&[(qi(a), qi(b))]).unwrap()
    }

    #[test]
    fn standard_shapes() {
        assert_eq!(Polytope::simplex(1, 4).vertices(), &[pt(&[0, 4]), pt(&[4, 0])]);
        assert_eq!(Polytope::cube(2, 4).vertices().len(), 4);
        assert_eq!(Polytope::interval(4).vertices(), &[pt(&[0]), pt(&[4])]);
        assert!(Polytope::new(1, vec![Ineq::new(&[1], 0)]).is_err());
        assert!(Polytope::new(1, vec![Ineq::new(&[1], -1), Ineq::new(&[-1], 0)]).is_err());
    }

    #[test]
    fn lattice_examples() {
        assert!(Polytope::cube(3, 4).lattice_l().is_empty());
        let l = Polytope::simplex(2, 4).lattice_l();
        assert_eq!(l, vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(1), BigInt::from(-4)]]);
        // S × {0} ⊂ R^2 has t_2 in its lattice.
        let flat = Polytope::hull(2, &[pt(&[0, 0]), pt(&[4, 0])]).unwrap();
        assert!(flat.lattice_l().contains(&vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn thick_representative_examples() {
        let rep = Polytope::simplex(1, 4).thick_representative();
        assert_eq!(rep.t, Polytope::interval(4));
        assert_eq!(rep.a.apply(&pt(&[3, 1])), pt(&[3]));
        assert_eq!(rep.a_inv.apply(&pt(&[3])), pt(&[3, 1]));
        let cube = Polytope::cube(2, 4).thick_representative();
        assert_eq!(cube.a, AffineMap::identity(2));
        let p = Polytope::point(&pt(&[4])).thick_representative();
        assert_eq!(p.t.ambient_dim(), 0);
        assert_eq!(p.a_inv.apply(&[]), pt(&[4]));
    }

    #[test]
    fn thick_representative_of_a_diagonal_segment_needs_completion() {
        // The segment from (0,0) to (2,2) in direction (1,1): relation x - y = 0.
        let s = Polytope::hull(2, &[pt(&[0, 0]), pt(&[2, 2])]).unwrap();
        let rep = s.thick_representative();
        assert_eq!(rep.t.ambient_dim(), 1);
        for v in s.vertices() {
            assert_eq!(&rep.a_inv.apply(&rep.a.apply(v)), v);
        }
        // A non-integral affine hull {1/2} uses a rational translation.
        let half = Polytope::point(&[Q::new(BigInt::from(1), BigInt::from(2))]);
        let r = half.thick_representative();
        assert!(!r.a_inv.is_integral());
    }

    #[test]
    fn face_and_degeneracy_relations() {
        for n in 1..=3usize {
            for i in 0..n {
                for j in 0..=n {
                    let lhs = AffineMap::simplex_degeneracy(n, i).compose(&AffineMap::simplex_face(n, j)).unwrap();
                    let rhs = if j + 1 <= i {
                        AffineMap::simplex_face(n - 1, j).compose(&AffineMap::simplex_degeneracy(n - 1, i - 1)).unwrap()
                    } else if j == i || j == i + 1 {
                        AffineMap::identity(n)
                    } else {
                        AffineMap::simplex_face(n - 1, j - 1).compose(&AffineMap::simplex_degeneracy(n - 1, i)).unwrap()
                    };
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
        let id = AffineMap::identity(2);
        let f = AffineMap::cube_face(2, 1, 1, 4);
        assert_eq!(id.compose(&f).unwrap(), f);
        let face0 = AffineMap::from_ints(0, &[vec![]], &[0]).unwrap();
        assert_eq!(face0.image(&Polytope::point(&[])).unwrap(), Polytope::point(&pt(&[0])));
    }

    #[test]
    fn wedge_and_veebar_examples() {
        assert_eq!(interval(0, 2).wedge(&interval(1, 3)).unwrap(), Some(interval(1, 2)));
        assert_eq!(interval(0, 1).wedge(&interval(2, 3)).unwrap(), None);
        assert!(Polytope::interval(4).veebar_check(&[interval(0, 2), interval(2, 4)]).unwrap());
        assert!(!Polytope::interval(4).veebar_check(&[interval(0, 2), interval(3, 4)]).unwrap());
        let sq = Polytope::cube(2, 2);
        let tri1 = Polytope::hull(2, &[pt(&[0, 0]), pt(&[2, 0]), pt(&[2, 2])]).unwrap();
        let tri2 = Polytope::hull(2, &[pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 2])]).unwrap();
        assert!(sq.veebar_check(&[tri1.clone(), tri2]).unwrap());
        assert!(!sq.veebar_check(&[tri1]).unwrap());
    }

    #[test]
    fn volumes() {
        assert_eq!(Polytope::cube(3, 4).volume(), qi(64));
        assert_eq!(Polytope::simplex(2, 4).volume(), qi(8));
        assert_eq!(Polytope::simplex(3, 4).volume(), Q::new(BigInt::from(64), BigInt::from(6)));
    }
}
