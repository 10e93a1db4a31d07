//! The base field `k = Q_p` at a fixed relative precision.
//!
//! A [`Scalar`] is stored as `p^v · u` where `u` is a unit known modulo
//! `p^r` and `r ≤ M` is its remaining relative precision.  Arithmetic keeps
//! `r = M` unless an addition cancels leading digits; the lost digits are
//! tracked rather than silently padded, so every identity check in the crate
//! can distinguish "equal to the available precision" from "accidentally
//! zero".  A sum that cancels *all* known digits becomes an inexact zero
//! `O(p^a)`; the checked variants [`Scalar::try_add`] / [`Scalar::try_sub`]
//! report this as [`FieldError::PrecisionLoss`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// Errors raised by base-field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precision {0} is below the minimum of 8 digits")]
    PrecisionTooSmall(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision loss: cancellation consumed every significant digit (result is O(p^{0}))")]
    PrecisionLoss(i64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("scalars belong to different field configurations")]
    FieldMismatch,
}

/// Shared configuration of the base field: the prime `p` and the relative
/// precision `M`.  The residue field has `q_k = p` elements and
/// `N_k = q_k − 1`.
#[derive(Debug)]
pub struct FieldConfig {
    p: u64,
    precision: u32,
    p_big: BigInt,
    modulus: BigInt,
}

/// Handle to a shared, immutable [`FieldConfig`].
pub type Field = Arc<FieldConfig>;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldConfig {
    /// Creates the configuration `Q_p` with `precision` significant digits.
    pub fn new(p: u64, precision: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if precision < 8 {
            return Err(FieldError::PrecisionTooSmall(precision));
        }
        let p_big = BigInt::from(p);
        let modulus = num_traits::pow(p_big.clone(), precision as usize);
        Ok(Arc::new(FieldConfig { p, precision, p_big, modulus }))
    }

    /// The prime `p`.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The relative precision `M`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Cardinality of the residue field, `q_k = p` (the base field is unramified).
    pub fn q_k(&self) -> u64 {
        self.p
    }

    /// `N_k = q_k − 1`, the length of the normalised interval `[0, N_k]`.
    pub fn n_k(&self) -> u64 {
        self.p - 1
    }

    /// `p^e` as a big integer.
    pub fn p_pow(&self, e: u32) -> BigInt {
        if e == self.precision {
            return self.modulus.clone();
        }
        num_traits::pow(self.p_big.clone(), e as usize)
    }

    fn same(&self, other: &FieldConfig) -> bool {
        self.p == other.p && self.precision == other.precision
    }
}

/// Splits a nonzero integer into `(v_p(n), n / p^{v_p(n)})`.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// Inverse of `a` modulo `m` (which must be coprime to `a`).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "mod_inverse of a non-unit");
    e.x.mod_floor(m)
}

#[derive(Clone, Debug)]
enum Repr {
    /// Zero; `None` is the exact zero, `Some(a)` an element only known to lie in `p^a Z_p`.
    Zero(Option<i64>),
    /// `p^v · u` with `0 < u < p^r`, `p ∤ u`.
    Unit { v: i64, u: BigInt, r: u32 },
}

/// An element of `k = Q_p` at capped relative precision.
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl Scalar {
    /// The exact zero.
    pub fn zero(field: &Field) -> Scalar {
        Scalar { field: field.clone(), repr: Repr::Zero(None) }
    }

    /// An element known only to lie in `p^a Z_p`.
    pub fn inexact_zero(field: &Field, a: i64) -> Scalar {
        Scalar { field: field.clone(), repr: Repr::Zero(Some(a)) }
    }

    /// The unit `1`.
    pub fn one(field: &Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    /// Builds `p^v · u` from a unit `u` (reduced modulo `p^M`).
    pub fn from_parts(field: &Field, v: i64, u: &BigInt) -> Result<Scalar, FieldError> {
        let (w, unit) = if u.is_zero() {
            return Ok(Scalar::zero(field));
        } else {
            split_valuation(u, &field.p_big)
        };
        if w != 0 {
            return Err(FieldError::Domain(format!("unit part {u} is divisible by p")));
        }
        Ok(Scalar::unit_raw(field, v, unit, field.precision))
    }

    fn unit_raw(field: &Field, v: i64, u: BigInt, r: u32) -> Scalar {
        let m = field.p_pow(r);
        Scalar { field: field.clone(), repr: Repr::Unit { v, u: u.mod_floor(&m), r } }
    }

    /// The image of an integer.
    pub fn from_bigint(field: &Field, n: &BigInt) -> Scalar {
        if n.is_zero() {
            return Scalar::zero(field);
        }
        let (v, u) = split_valuation(n, &field.p_big);
        Scalar::unit_raw(field, v as i64, u, field.precision)
    }

    /// The image of a machine integer.
    pub fn from_i64(field: &Field, n: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    /// The image of a rational number.
    pub fn from_rational(field: &Field, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero(field);
        }
        let (vn, un) = split_valuation(q.numer(), &field.p_big);
        let (vd, ud) = split_valuation(q.denom(), &field.p_big);
        let m = &field.modulus;
        let u = (un.mod_floor(m) * mod_inverse(&ud, m)).mod_floor(m);
        Scalar::unit_raw(field, vn as i64 - vd as i64, u, field.precision)
    }

    /// The Teichmüller representative `ω` of the residue class `r mod p`:
    /// `ω^{p−1} = 1` and `ω ≡ r (mod p)`, computed as the limit of `r^{p^n}`.
    pub fn teichmuller(field: &Field, r: &BigInt) -> Result<Scalar, FieldError> {
        if r.mod_floor(&field.p_big).is_zero() {
            return Err(FieldError::Domain(format!("Teichmüller lift of {r} ≡ 0 mod p")));
        }
        let m = &field.modulus;
        let mut a = r.mod_floor(m);
        for _ in 0..field.precision {
            a = a.modpow(&field.p_big, m);
        }
        Ok(Scalar::unit_raw(field, 0, a, field.precision))
    }

    /// The field configuration this scalar belongs to.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// True for the exact zero and for inexact zeros `O(p^a)`.
    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero(_))
    }

    /// True when the value is a unit of valuation `0` congruent to `1` to all known digits.
    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Unit { v: 0, u, .. } => u.is_one(),
            _ => false,
        }
    }

    /// The exact valuation of a nonzero element; `None` for (inexact) zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { v, .. } => Some(*v),
            Repr::Zero(_) => None,
        }
    }

    /// A lower bound for the valuation: exact for nonzero elements, the
    /// known bound `a` for `O(p^a)` and `None` (= +∞) for the exact zero.
    pub fn valuation_bound(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { v, .. } => Some(*v),
            Repr::Zero(a) => *a,
        }
    }

    /// Absolute precision: the value is known modulo `p^{abs}`; `None` when exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { v, r, .. } => Some(*v + *r as i64),
            Repr::Zero(a) => *a,
        }
    }

    /// Remaining relative precision (number of known unit digits).
    pub fn relative_precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { r, .. } => *r,
            Repr::Zero(_) => 0,
        }
    }

    /// The unit part `u` (for zero: `0`).
    pub fn unit(&self) -> BigInt {
        match &self.repr {
            Repr::Unit { u, .. } => u.clone(),
            Repr::Zero(_) => BigInt::zero(),
        }
    }

    fn check(&self, other: &Scalar) {
        assert!(self.field.same(&other.field), "scalars from different field configurations");
    }

    /// Negation.
    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Zero(_) => self.clone(),
            Repr::Unit { v, u, r } => {
                let m = self.field.p_pow(*r);
                Scalar::unit_raw(&self.field, *v, &m - u, *r)
            }
        }
    }

    /// Sum; full cancellation yields an inexact zero.
    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (&self.repr, &other.repr) {
            (Repr::Zero(None), _) => other.clone(),
            (_, Repr::Zero(None)) => self.clone(),
            (Repr::Zero(Some(a)), Repr::Zero(Some(b))) => Scalar::inexact_zero(&self.field, *a.min(b)),
            (Repr::Zero(Some(a)), Repr::Unit { .. }) => other.truncate_abs(*a),
            (Repr::Unit { .. }, Repr::Zero(Some(b))) => self.truncate_abs(*b),
            (Repr::Unit { v: va, u: ua, r: ra }, Repr::Unit { v: vb, u: ub, r: rb }) => {
                let (va, ua, ra, vb, ub, rb) =
                    if va <= vb { (*va, ua, *ra, *vb, ub, *rb) } else { (*vb, ub, *rb, *va, ua, *ra) };
                let abs = (va + ra as i64).min(vb + rb as i64);
                let k = (abs - va) as u32;
                let d = vb - va;
                if d >= k as i64 {
                    return Scalar::unit_raw(&self.field, va, ua.clone(), k);
                }
                let m = self.field.p_pow(k);
                let s = (ua + self.field.p_pow(d as u32) * ub).mod_floor(&m);
                if s.is_zero() {
                    return Scalar::inexact_zero(&self.field, abs);
                }
                let (w, unit) = split_valuation(&s, &self.field.p_big);
                Scalar::unit_raw(&self.field, va + w as i64, unit, k - w as u32)
            }
        }
    }

    /// Reduces to absolute precision `a` (known modulo `p^a`).
    fn truncate_abs(&self, a: i64) -> Scalar {
        match &self.repr {
            Repr::Zero(None) => Scalar::inexact_zero(&self.field, a),
            Repr::Zero(Some(b)) => Scalar::inexact_zero(&self.field, a.min(*b)),
            Repr::Unit { v, u, r } => {
                if *v >= a {
                    Scalar::inexact_zero(&self.field, a)
                } else {
                    let r2 = ((a - v) as u32).min(*r);
                    Scalar::unit_raw(&self.field, *v, u.clone(), r2)
                }
            }
        }
    }

    /// Difference; full cancellation yields an inexact zero.
    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// Checked sum: reports [`FieldError::PrecisionLoss`] when two nonzero
    /// operands cancel to an inexact zero.
    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let s = self.add(other);
        match (&s.repr, self.is_zero() || other.is_zero()) {
            (Repr::Zero(Some(a)), false) => Err(FieldError::PrecisionLoss(*a)),
            _ => Ok(s),
        }
    }

    /// Checked difference, see [`Scalar::try_add`].
    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&other.neg())
    }

    /// Product.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (&self.repr, &other.repr) {
            (Repr::Zero(None), _) | (_, Repr::Zero(None)) => Scalar::zero(&self.field),
            (Repr::Zero(Some(a)), Repr::Zero(Some(b))) => Scalar::inexact_zero(&self.field, a + b),
            (Repr::Zero(Some(a)), Repr::Unit { v, .. }) | (Repr::Unit { v, .. }, Repr::Zero(Some(a))) => {
                Scalar::inexact_zero(&self.field, a + v)
            }
            (Repr::Unit { v: va, u: ua, r: ra }, Repr::Unit { v: vb, u: ub, r: rb }) => {
                let r = (*ra).min(*rb);
                Scalar::unit_raw(&self.field, va + vb, ua * ub, r)
            }
        }
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<Scalar, FieldError> {
        match &self.repr {
            Repr::Zero(_) => Err(FieldError::DivisionByZero),
            Repr::Unit { v, u, r } => {
                let m = self.field.p_pow(*r);
                Ok(Scalar::unit_raw(&self.field, -v, mod_inverse(u, &m), *r))
            }
        }
    }

    /// Quotient `self / other`.
    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(&other.invert()?))
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        match &self.repr {
            Repr::Zero(None) => Ok(if e == 0 { Scalar::one(&self.field) } else { self.clone() }),
            Repr::Zero(Some(a)) => Ok(if e == 0 {
                Scalar::one(&self.field)
            } else {
                Scalar::inexact_zero(&self.field, a * e)
            }),
            Repr::Unit { v, u, r } => {
                let m = self.field.p_pow(*r);
                Ok(Scalar::unit_raw(&self.field, v * e, u.modpow(&BigInt::from(e), &m), *r))
            }
        }
    }

    /// Multiplies by an integer.
    pub fn scale_int(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_i64(&self.field, n))
    }

    /// The Teichmüller representative of the leading unit digit (only for nonzero elements).
    pub fn teichmuller_part(&self) -> Result<Scalar, FieldError> {
        match &self.repr {
            Repr::Zero(_) => Err(FieldError::DivisionByZero),
            Repr::Unit { u, .. } => Scalar::teichmuller(&self.field, u),
        }
    }

    /// The p-adic logarithm `Σ_{i≥1} (−1)^{i+1} (a−1)^i / i` on `1 + pZ_p`.
    ///
    /// The series is summed until every omitted term lies beyond the input's
    /// absolute precision, so the result is correct to that precision.
    pub fn plog(&self) -> Result<Scalar, FieldError> {
        let f = &self.field;
        let (u, r) = match &self.repr {
            Repr::Unit { v: 0, u, r } => (u, *r),
            _ => return Err(FieldError::Domain("plog requires an argument in 1 + pZ_p".into())),
        };
        let a = r as i64;
        let x = (u - BigInt::one()).mod_floor(&f.p_pow(r));
        if x.is_zero() {
            return Ok(Scalar::inexact_zero(f, a));
        }
        let (w, _) = split_valuation(&x, &f.p_big);
        if w == 0 {
            return Err(FieldError::Domain("plog requires an argument in 1 + pZ_p".into()));
        }
        let w = w as i64;
        let p = f.p as i64;
        let floor_log = |i: i64| -> i64 {
            let mut k = 0;
            let mut q = p;
            while q <= i {
                q *= p;
                k += 1;
            }
            k
        };
        let mut imax = 1i64;
        while imax * w - floor_log(imax) < a {
            imax += 1;
        }
        let guard = floor_log(imax) as u32 + 1;
        let big_mod = f.p_pow(r + guard);
        let target = f.p_pow(r);
        let mut sum = BigInt::zero();
        let mut xpow = BigInt::one();
        for i in 1..=imax {
            xpow = (&xpow * &x).mod_floor(&big_mod);
            let (vi, unit_i) = split_valuation(&BigInt::from(i), &f.p_big);
            let divided = &xpow / f.p_pow(vi as u32);
            let term = (divided * mod_inverse(&unit_i, &target)).mod_floor(&target);
            if i % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let sum = sum.mod_floor(&target);
        if sum.is_zero() {
            return Ok(Scalar::inexact_zero(f, a));
        }
        let (vs, us) = split_valuation(&sum, &f.p_big);
        Ok(Scalar::unit_raw(f, vs as i64, us, r - vs as u32))
    }

    /// The branch logarithm used for period computations: kills the
    /// Teichmüller part and applies [`Scalar::plog`] to the principal unit.
    /// The power of `p` is *not* handled here (see `periods::reduced_log`).
    pub fn principal_log(&self) -> Result<Scalar, FieldError> {
        match &self.repr {
            Repr::Zero(_) => Err(FieldError::DivisionByZero),
            Repr::Unit { u, r, .. } => {
                let unit = Scalar::unit_raw(&self.field, 0, u.clone(), *r);
                let omega = unit.teichmuller_part()?;
                unit.div(&omega)?.plog()
            }
        }
    }

    /// Equality up to the tracked precision of both operands.
    pub fn approx_eq(&self, other: &Scalar) -> bool {
        self.sub(other).is_zero()
    }

    /// Attempts to recognise the value as a small rational number `a/b · p^v`
    /// (used for human-readable output only).
    pub fn to_small_rational(&self) -> Option<BigRational> {
        let (v, u, r) = match &self.repr {
            Repr::Zero(_) => return Some(BigRational::zero()),
            Repr::Unit { v, u, r } => (*v, u, *r),
        };
        let m = self.field.p_pow(r);
        let (a, b) = rational_reconstruct(u, &m)?;
        let bound = BigInt::from(1_000_000_000u64);
        if a.abs() > bound || b > bound {
            return None;
        }
        let mut q = BigRational::new(a, b);
        let pv = BigRational::from_integer(self.field.p_pow(v.unsigned_abs() as u32));
        if v >= 0 {
            q *= pv;
        } else {
            q /= pv;
        }
        Some(q)
    }

    /// JSON form `{"v": int|null, "u": "<decimal residue>"}`; inexact zeros carry `"prec"`.
    pub fn to_json(&self) -> Value {
        match &self.repr {
            Repr::Zero(None) => json!({"v": null, "u": "0"}),
            Repr::Zero(Some(a)) => json!({"v": null, "u": "0", "prec": a}),
            Repr::Unit { v, u, .. } => json!({"v": v, "u": u.to_string()}),
        }
    }

    /// Parses the JSON form produced by [`Scalar::to_json`], a bare integer,
    /// or a rational string such as `"3/4"`.
    pub fn from_json(field: &Field, value: &Value) -> Result<Scalar, FieldError> {
        match value {
            Value::Number(n) => {
                let i = n.as_i64().ok_or_else(|| FieldError::Domain(format!("not an integer: {n}")))?;
                Ok(Scalar::from_i64(field, i))
            }
            Value::String(s) => parse_rational(s)
                .map(|q| Scalar::from_rational(field, &q))
                .ok_or_else(|| FieldError::Domain(format!("not a rational number: {s}"))),
            Value::Object(map) => {
                let u = map
                    .get("u")
                    .and_then(|u| u.as_str())
                    .and_then(|u| u.parse::<BigInt>().ok())
                    .ok_or_else(|| FieldError::Domain("scalar object needs a decimal \"u\"".into()))?;
                match map.get("v") {
                    None | Some(Value::Null) => match map.get("prec").and_then(|a| a.as_i64()) {
                        Some(a) => Ok(Scalar::inexact_zero(field, a)),
                        None => Ok(Scalar::zero(field)),
                    },
                    Some(v) => {
                        let v = v.as_i64().ok_or_else(|| FieldError::Domain("\"v\" must be an integer".into()))?;
                        Scalar::from_parts(field, v, &u)
                    }
                }
            }
            other => Err(FieldError::Domain(format!("cannot read a scalar from {other}"))),
        }
    }
}

/// Parses `"a"` or `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

/// Rational reconstruction: finds `a/b ≡ u (mod m)` with `|a|, b ≤ sqrt(m/2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (a, b) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if a.gcd(&b).is_one() {
        Some((a, b))
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    /// Small rationals print as such (`624`, `-1/3`); otherwise `p^v * u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero(None) => write!(f, "0"),
            Repr::Zero(Some(a)) => write!(f, "O({}^{})", self.field.p, a),
            Repr::Unit { v, u, .. } => match self.to_small_rational() {
                Some(q) => write!(f, "{q}"),
                None => write!(f, "{}^{} * {}", self.field.p, v, u),
            },
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero(None) => write!(f, "0"),
            Repr::Zero(Some(a)) => write!(f, "O({}^{})", self.field.p, a),
            Repr::Unit { v, u, r } => write!(f, "{}^{} * {} (+O(rel {}))", self.field.p, v, u, r),
        }
    }
}

/// Integer value of a small nonnegative big integer (helper for callers).
pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> Field {
        FieldConfig::new(5, 40).unwrap()
    }

    #[test]
    fn config_validation() {
        assert_eq!(FieldConfig::new(6, 40).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(FieldConfig::new(5, 4).unwrap_err(), FieldError::PrecisionTooSmall(4));
        let k = k5();
        assert_eq!((k.q_k(), k.n_k()), (5, 4));
    }

    #[test]
    fn basic_arithmetic_examples() {
        let k = k5();
        let fifty = Scalar::from_i64(&k, 50).add(&Scalar::zero(&k));
        assert_eq!(fifty.valuation(), Some(2));
        assert_eq!(fifty.unit(), BigInt::from(2));
        let t = Scalar::from_i64(&k, 5).mul(&Scalar::from_i64(&k, 5));
        assert_eq!(t.valuation(), Some(2));
        let d = Scalar::from_i64(&k, 6).sub(&Scalar::one(&k));
        assert_eq!(d.valuation(), Some(1));
        assert_eq!(d.unit(), BigInt::one());
    }

    #[test]
    fn cancellation_is_flagged() {
        let k = k5();
        let a = Scalar::from_i64(&k, 7);
        assert!(matches!(a.try_sub(&a), Err(FieldError::PrecisionLoss(40))));
        assert!(a.sub(&a).is_zero());
        // Partial cancellation loses digits: 1 − (1 + 5^3) has relative precision 37.
        let b = Scalar::one(&k).sub(&Scalar::from_i64(&k, 126));
        assert_eq!(b.valuation(), Some(3));
        assert_eq!(b.relative_precision(), 37);
    }

    #[test]
    fn inversion_examples() {
        let k = k5();
        assert!(Scalar::one(&k).invert().unwrap().is_one());
        let two_inv = Scalar::from_i64(&k, 2).invert().unwrap();
        // Oracle: 2u ≡ 1 mod 5^40 means u = (5^40 + 1)/2.
        let expected = (k.p_pow(40) + BigInt::one()) / BigInt::from(2);
        assert_eq!(two_inv.unit(), expected);
        let five_inv = Scalar::from_i64(&k, 5).invert().unwrap();
        assert_eq!((five_inv.valuation(), five_inv.unit()), (Some(-1), BigInt::one()));
        assert_eq!(Scalar::zero(&k).invert().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn plog_matches_partial_sum_oracle() {
        let k = k5();
        assert!(Scalar::one(&k).plog().unwrap().is_zero());
        let l = Scalar::from_i64(&k, 6).plog().unwrap();
        // Independent oracle: Σ_{i=1}^{8} (−1)^{i+1} 5^i / i as an exact rational, compared mod 5^4.
        let mut q = BigRational::zero();
        for i in 1..=8i64 {
            let term = BigRational::new(num_traits::pow(BigInt::from(5), i as usize), BigInt::from(i));
            if i % 2 == 1 {
                q += term;
            } else {
                q -= term;
            }
        }
        let diff = l.sub(&Scalar::from_rational(&k, &q));
        assert!(diff.valuation_bound().map_or(true, |v| v >= 4));
        let sq = Scalar::from_i64(&k, 36).plog().unwrap();
        assert!(sq.approx_eq(&l.scale_int(2)));
        assert!(Scalar::from_i64(&k, 2).plog().is_err());
    }

    #[test]
    fn teichmuller_examples() {
        let k = k5();
        assert!(Scalar::teichmuller(&k, &BigInt::one()).unwrap().is_one());
        let w2 = Scalar::teichmuller(&k, &BigInt::from(2)).unwrap();
        assert_eq!(w2.unit().mod_floor(&BigInt::from(25)), BigInt::from(7));
        let w4 = Scalar::teichmuller(&k, &BigInt::from(4)).unwrap();
        assert_eq!(w4.unit(), k.p_pow(40) - BigInt::one());
        assert!(Scalar::teichmuller(&k, &BigInt::from(10)).is_err());
    }

    #[test]
    fn json_and_display_round_trip() {
        let k = k5();
        let x = Scalar::from_rational(&k, &BigRational::new(BigInt::from(-3), BigInt::from(50)));
        assert_eq!(x.to_string(), "-3/50");
        let back = Scalar::from_json(&k, &x.to_json()).unwrap();
        assert!(back.approx_eq(&x));
        assert_eq!(Scalar::from_i64(&k, 624).to_string(), "624");
    }
}
