//! A formal model of the de Rham period ring.
//!
//! A [`Period`] is a quotient `P / Π L_j^{m_j}` where `P` is a polynomial
//! over the base field in algebraically independent log-symbols `λ_g` (one
//! per non-torsion generator, plus an optional `λ_P` standing for a chosen
//! `log p`) and each `L_j` is a nonzero linear form in those symbols.  Every
//! integral of a character sum lands in this ring: numerators come from
//! values `x(N_k) − 1`, denominators from `log x`.
//!
//! Denominator forms are stored primitive with integer coefficients (gcd 1,
//! first coefficient positive); the rational scale is folded into the
//! numerator.  Equality is decided by cross-multiplication, so no polynomial
//! gcd over the p-adics is ever needed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::characters::{Character, GaloisAction, Reg, Registry};
use crate::error::{Error, Result};
use crate::localfield::Scalar;

/// Index of a period symbol: a generator id, or [`Registry::log_p_symbol`].
pub type Sym = usize;
/// A monomial `Π λ_s^{e_s}` (only positive exponents are stored).
pub type Monomial = BTreeMap<Sym, u32>;
/// A primitive integer linear form `Σ c_s λ_s`.
pub type LinForm = BTreeMap<Sym, BigInt>;
/// A polynomial in the symbols with base-field coefficients.
pub type Poly = BTreeMap<Monomial, Scalar>;

/// An element of the formal period ring.
#[derive(Clone)]
pub struct Period {
    reg: Reg,
    num: Poly,
    den: BTreeMap<LinForm, u32>,
}

fn poly_clean(p: &mut Poly) {
    p.retain(|_, c| !c.is_zero());
}

fn poly_add_term(p: &mut Poly, m: Monomial, c: Scalar) {
    match p.get_mut(&m) {
        Some(existing) => {
            let s = existing.add(&c);
            if s.is_zero() {
                p.remove(&m);
            } else {
                *existing = s;
            }
        }
        None => {
            if !c.is_zero() {
                p.insert(m, c);
            }
        }
    }
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = a.clone();
    for (s, e) in b {
        *m.entry(*s).or_insert(0) += e;
    }
    m
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            poly_add_term(&mut out, mono_mul(ma, mb), ca.mul(cb));
        }
    }
    out
}

fn poly_from_form(reg: &Registry, form: &LinForm) -> Poly {
    form.iter()
        .map(|(s, c)| (Monomial::from([(*s, 1)]), Scalar::from_bigint(reg.field(), c)))
        .collect()
}

/// Exact division of `p` by the linear form `l`; `None` if the remainder is nonzero.
fn poly_divide(reg: &Registry, p: &Poly, l: &LinForm) -> Option<Poly> {
    let (&s, cs) = l.iter().next_back()?;
    let cs_inv = Scalar::from_bigint(reg.field(), cs).invert().ok()?;
    let lpoly = poly_from_form(reg, l);
    let mut rem = p.clone();
    let mut quot = Poly::new();
    loop {
        let lead = rem
            .iter()
            .filter(|(m, _)| m.get(&s).copied().unwrap_or(0) > 0)
            .max_by_key(|(m, _)| m.get(&s).copied().unwrap_or(0))
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = lead else { break };
        let mut qm = m.clone();
        let e = qm.get_mut(&s).unwrap();
        *e -= 1;
        if *e == 0 {
            qm.remove(&s);
        }
        let qc = c.mul(&cs_inv);
        let term = Poly::from([(qm.clone(), qc.clone())]);
        for (mm, cc) in poly_mul(&term, &lpoly) {
            poly_add_term(&mut rem, mm, cc.neg());
        }
        // The leading term is cancelled exactly in exact arithmetic; drop any
        // precision residue so the loop terminates.
        rem.remove(&m);
        poly_add_term(&mut quot, qm, qc);
    }
    poly_clean(&mut rem);
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

/// Splits a rational linear form into `scale · primitive`.
pub fn normalize_form(form: &BTreeMap<Sym, BigRational>) -> Option<(BigRational, LinForm)> {
    let nz: Vec<(&Sym, &BigRational)> = form.iter().filter(|(_, q)| !q.is_zero()).collect();
    if nz.is_empty() {
        return None;
    }
    let l = nz.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let ints: Vec<(Sym, BigInt)> = nz.iter().map(|(s, q)| (**s, (*q * &l).to_integer())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    let sign = if ints[0].1.is_negative() { -BigInt::one() } else { BigInt::one() };
    let prim: LinForm = ints.into_iter().map(|(s, c)| (s, &c / &g * &sign)).collect();
    Some((BigRational::new(g * sign, l), prim))
}

impl Period {
    /// The zero period.
    pub fn zero(reg: &Reg) -> Period {
        Period { reg: reg.clone(), num: Poly::new(), den: BTreeMap::new() }
    }

    /// A base-field constant.
    pub fn constant(reg: &Reg, c: &Scalar) -> Period {
        let mut num = Poly::new();
        poly_add_term(&mut num, Monomial::new(), c.clone());
        Period { reg: reg.clone(), num, den: BTreeMap::new() }
    }

    /// The constant `1`.
    pub fn one(reg: &Reg) -> Period {
        Period::constant(reg, &Scalar::one(reg.field()))
    }

    /// A rational constant.
    pub fn rational(reg: &Reg, q: &BigRational) -> Period {
        Period::constant(reg, &Scalar::from_rational(reg.field(), q))
    }

    /// The symbol `λ_s`.
    pub fn symbol(reg: &Reg, s: Sym) -> Period {
        Period::linear(reg, &BTreeMap::from([(s, BigRational::one())]))
    }

    /// The linear combination `Σ q_s λ_s`.
    pub fn linear(reg: &Reg, form: &BTreeMap<Sym, BigRational>) -> Period {
        let mut num = Poly::new();
        for (s, q) in form {
            poly_add_term(&mut num, Monomial::from([(*s, 1)]), Scalar::from_rational(reg.field(), q));
        }
        Period { reg: reg.clone(), num, den: BTreeMap::new() }
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    /// The numerator polynomial.
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// The denominator as a multiset of primitive linear forms.
    pub fn denominator(&self) -> &BTreeMap<LinForm, u32> {
        &self.den
    }

    /// Zero to the tracked precision.
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// True when the denominator is trivial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The base-field value of a period of degree 0 with trivial denominator.
    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.den.is_empty() || self.num.keys().any(|m| !m.is_empty()) {
            return None;
        }
        Some(self.num.get(&Monomial::new()).cloned().unwrap_or_else(|| Scalar::zero(self.reg.field())))
    }

    fn check(&self, other: &Period) {
        assert!(
            self.reg.generators().len() == other.reg.generators().len(),
            "periods over different registries"
        );
    }

    fn cancel(mut self) -> Period {
        poly_clean(&mut self.num);
        if self.num.is_empty() {
            self.den.clear();
            return self;
        }
        let forms: Vec<LinForm> = self.den.keys().cloned().collect();
        for l in forms {
            while self.den.get(&l).copied().unwrap_or(0) > 0 {
                match poly_divide(&self.reg, &self.num, &l) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&l).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&l);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn lift_to(&self, den: &BTreeMap<LinForm, u32>) -> Poly {
        let mut num = self.num.clone();
        for (l, m) in den {
            let have = self.den.get(l).copied().unwrap_or(0);
            let lp = poly_from_form(&self.reg, l);
            for _ in have..*m {
                num = poly_mul(&num, &lp);
            }
        }
        num
    }

    fn common_den(&self, other: &Period) -> BTreeMap<LinForm, u32> {
        let mut den = self.den.clone();
        for (l, m) in &other.den {
            let e = den.entry(l.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        den
    }

    /// Sum.
    pub fn add(&self, other: &Period) -> Period {
        self.check(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let den = self.common_den(other);
        let mut num = self.lift_to(&den);
        for (m, c) in other.lift_to(&den) {
            poly_add_term(&mut num, m, c);
        }
        Period { reg: self.reg.clone(), num, den }.cancel()
    }

    /// Negation.
    pub fn neg(&self) -> Period {
        Period {
            reg: self.reg.clone(),
            num: self.num.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
            den: self.den.clone(),
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Period) -> Period {
        self.add(&other.neg())
    }

    /// Product.
    pub fn mul(&self, other: &Period) -> Period {
        self.check(other);
        let mut den = self.den.clone();
        for (l, m) in &other.den {
            *den.entry(l.clone()).or_insert(0) += m;
        }
        Period { reg: self.reg.clone(), num: poly_mul(&self.num, &other.num), den }.cancel()
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: &Scalar) -> Period {
        let mut num = Poly::new();
        for (m, x) in &self.num {
            poly_add_term(&mut num, m.clone(), x.mul(c));
        }
        Period { reg: self.reg.clone(), num, den: self.den.clone() }.cancel()
    }

    /// Multiplication by an integer.
    pub fn scale_int(&self, n: i64) -> Period {
        self.scale(&Scalar::from_i64(self.reg.field(), n))
    }

    /// Multiplication by a rational number.
    pub fn scale_rational(&self, q: &BigRational) -> Period {
        self.scale(&Scalar::from_rational(self.reg.field(), q))
    }

    /// Division by the nonzero rational linear form `Σ q_s λ_s`.
    pub fn div_linear(&self, form: &BTreeMap<Sym, BigRational>) -> Result<Period> {
        let (scale, prim) = normalize_form(form).ok_or(Error::TorsionDivide)?;
        let mut den = self.den.clone();
        *den.entry(prim).or_insert(0) += 1;
        let inv = Scalar::from_rational(self.reg.field(), &scale).invert()?;
        let mut num = Poly::new();
        for (m, x) in &self.num {
            poly_add_term(&mut num, m.clone(), x.mul(&inv));
        }
        Ok(Period { reg: self.reg.clone(), num, den }.cancel())
    }

    /// Division by `log c` for a non-torsion arity-1 character.
    pub fn divide_by_log(&self, c: &Character) -> Result<Period> {
        self.div_linear(&c.log_form(&self.reg))
    }

    /// Equality by cross-multiplication (coefficients zero to precision).
    pub fn equals(&self, other: &Period) -> bool {
        self.sub(other).is_zero()
    }

    /// Least valuation bound among numerator coefficients; `None` for zero.
    pub fn valuation_floor(&self) -> Option<i64> {
        self.num.values().filter_map(|c| c.valuation_bound()).min()
    }

    /// Agreement up to `p^bound`: every numerator coefficient of the
    /// difference has valuation at least `bound`.
    pub fn agrees_to(&self, other: &Period, bound: i64) -> bool {
        self.sub(other).valuation_floor().is_none_or(|v| v >= bound)
    }

    /// Truncation modulo `Fil^N`: numerator monomials of total degree `≥ N`
    /// are dropped; the denominator (which must consist of single symbols)
    /// is kept.
    pub fn fil_truncate(&self, n: u32) -> Result<Period> {
        if self.den.keys().any(|l| l.len() != 1) {
            return Err(Error::NotGraded("denominator contains a mixed linear form".into()));
        }
        let num = self
            .num
            .iter()
            .filter(|(m, _)| m.values().sum::<u32>() < n)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(Period { reg: self.reg.clone(), num, den: self.den.clone() }.cancel())
    }

    /// Linear substitution of symbols: `λ_s ↦ Σ_t map[s][t] λ_t` (symbols
    /// absent from `map` are fixed).
    pub fn substitute(&self, map: &BTreeMap<Sym, BTreeMap<Sym, BigRational>>) -> Result<Period> {
        let reg = &self.reg;
        let image = |s: Sym| -> Poly {
            match map.get(&s) {
                Some(form) => Period::linear(reg, form).num,
                None => Poly::from([(Monomial::from([(s, 1)]), Scalar::one(reg.field()))]),
            }
        };
        let mut num = Poly::new();
        for (m, c) in &self.num {
            let mut term = Poly::from([(Monomial::new(), c.clone())]);
            for (s, e) in m {
                let img = image(*s);
                for _ in 0..*e {
                    term = poly_mul(&term, &img);
                }
            }
            for (mm, cc) in term {
                poly_add_term(&mut num, mm, cc);
            }
        }
        let mut out = Period { reg: reg.clone(), num, den: BTreeMap::new() };
        for (l, mult) in &self.den {
            let mut form: BTreeMap<Sym, BigRational> = BTreeMap::new();
            for (s, c) in l {
                match map.get(s) {
                    Some(img) => {
                        for (t, q) in img {
                            *form.entry(*t).or_insert_with(BigRational::zero) += q * BigRational::from_integer(c.clone());
                        }
                    }
                    None => *form.entry(*s).or_insert_with(BigRational::zero) += BigRational::from_integer(c.clone()),
                }
            }
            for _ in 0..*mult {
                out = out.div_linear(&form).map_err(|_| Error::Domain("substitution annihilates a denominator".into()))?;
            }
        }
        Ok(out)
    }

    /// The Galois action on periods: `λ_ε ↦ u λ_ε`, `λ_g ↦ λ_g + c_g λ_ε`.
    pub fn galois_twist(&self, action: &GaloisAction) -> Result<Period> {
        let eps = self.reg.eps();
        let mut map = BTreeMap::new();
        map.insert(eps, BTreeMap::from([(eps, action.u.clone())]));
        for (g, c) in &action.cocycle {
            map.insert(*g, BTreeMap::from([(*g, BigRational::one()), (eps, c.clone())]));
        }
        self.substitute(&map)
    }

    fn sym_key(&self, s: Sym) -> String {
        if s == self.reg.log_p_symbol() {
            "logp".into()
        } else {
            self.reg.generator(s).name().to_string()
        }
    }

    /// JSON: numerator monomial list, denominator forms and the text form.
    pub fn to_json(&self) -> Value {
        let num: Vec<Value> = self
            .num
            .iter()
            .map(|(m, c)| {
                let mono: serde_json::Map<String, Value> = m.iter().map(|(s, e)| (self.sym_key(*s), json!(e))).collect();
                json!({"mono": mono, "c": c.to_json()})
            })
            .collect();
        let den: Vec<Value> = self
            .den
            .iter()
            .map(|(l, mult)| {
                let form: serde_json::Map<String, Value> =
                    l.iter().map(|(s, c)| (self.sym_key(*s), json!(c.to_string()))).collect();
                json!({"form": form, "mult": mult})
            })
            .collect();
        json!({"num": num, "den": den, "text": self.to_string()})
    }
}

fn fmt_mono(reg: &Registry, m: &Monomial) -> String {
    m.iter()
        .map(|(s, e)| if *e == 1 { reg.symbol_name(*s) } else { format!("{}^{e}", reg.symbol_name(*s)) })
        .collect::<Vec<_>>()
        .join("·")
}

fn fmt_poly(reg: &Registry, p: &Poly) -> (String, usize) {
    let mut terms: Vec<(&Monomial, &Scalar)> = p.iter().collect();
    terms.sort_by_key(|(m, _)| (m.values().sum::<u32>(), (*m).clone()));
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let mut cs = c.to_string();
        let neg = cs.starts_with('-');
        if neg {
            cs.remove(0);
        }
        let body = if m.is_empty() {
            cs
        } else if cs == "1" {
            fmt_mono(reg, m)
        } else {
            format!("{cs}·{}", fmt_mono(reg, m))
        };
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    (out, terms.len())
}

fn fmt_form(reg: &Registry, l: &LinForm) -> (String, usize) {
    let p: Poly = l
        .iter()
        .map(|(s, c)| (Monomial::from([(*s, 1)]), Scalar::from_bigint(reg.field(), c)))
        .collect();
    fmt_poly(reg, &p)
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let (num, nterms) = fmt_poly(&self.reg, &self.num);
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(l, m)| {
                let (s, k) = fmt_form(&self.reg, l);
                let s = if k > 1 { format!("({s})") } else { s };
                if *m == 1 {
                    s
                } else {
                    format!("{s}^{m}")
                }
            })
            .collect();
        let num = if nterms > 1 { format!("({num})") } else { num };
        if factors.len() == 1 {
            write!(f, "{num}/{}", factors[0])
        } else {
            write!(f, "{num}/({})", factors.join("·"))
        }
    }
}

impl fmt::Debug for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Period({self})")
    }
}

/// The reduced logarithm `log x − log x(N_k)` of an arity-1 character,
/// where the branch of `log x(N_k)` kills the Teichmüller part, applies the
/// p-adic logarithm to the principal unit and contributes `v·λ_P` for the
/// power of `p` (which requires the `λ_P` symbol).
pub fn reduced_log(reg: &Reg, x: &Character) -> Result<Period> {
    let n = reg.field().n_k() as i64;
    let value = x.evaluate_int(reg, &[n])?;
    let v = value.valuation().ok_or_else(|| Error::Domain("x(N_k) vanishes".into()))?;
    if v != 0 && !reg.has_log_p() {
        return Err(Error::NeedsLogP);
    }
    let branch = value.principal_log()?;
    let mut out = x.log(reg).sub(&Period::constant(reg, &branch));
    if v != 0 {
        out = out.sub(&Period::symbol(reg, reg.log_p_symbol()).scale_int(v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::q;
    use crate::localfield::FieldConfig;

    fn setup() -> Reg {
        Registry::standard(&FieldConfig::new(5, 40).unwrap()).unwrap()
    }

    fn lam(reg: &Reg, name: &str) -> Period {
        Period::symbol(reg, reg.id(name).unwrap())
    }

    #[test]
    fn arithmetic_examples() {
        let reg = setup();
        let le = lam(&reg, "eps");
        assert!(le.add(&Period::zero(&reg)).equals(&le));
        let x = Period::rational(&reg, &q(624, 1)).divide_by_log(&Character::parse_text(&reg, "p").unwrap()).unwrap();
        assert_eq!(x.to_string(), "624/λ_p");
        let back = x.mul(&lam(&reg, "p"));
        assert!(back.is_polynomial());
        assert_eq!(back.to_string(), "624");
        let prod = le.mul(&lam(&reg, "p"));
        assert_eq!(prod.numerator().keys().next().unwrap().values().sum::<u32>(), 2);
    }

    #[test]
    fn divide_by_log_examples() {
        let reg = setup();
        let one = Period::one(&reg);
        let em = Character::parse_text(&reg, "eps*mu").unwrap();
        assert!(one.divide_by_log(&em).unwrap().mul(&lam(&reg, "eps")).equals(&one));
        let mu = Character::parse_text(&reg, "mu").unwrap();
        assert_eq!(one.divide_by_log(&mu).unwrap_err(), Error::TorsionDivide);
    }

    #[test]
    fn fil_truncate_examples() {
        let reg = setup();
        let le = lam(&reg, "eps");
        assert!(le.mul(&le).fil_truncate(2).unwrap().is_zero());
        let five = Period::rational(&reg, &q(5, 1));
        assert!(five.add(&lam(&reg, "p")).fil_truncate(1).unwrap().equals(&five));
        // (a + bλ)/λ at N = 1 is a/λ.
        let a = Period::rational(&reg, &q(3, 1));
        let b = Period::rational(&reg, &q(7, 1));
        let eps = Character::parse_text(&reg, "eps").unwrap();
        let x = a.add(&b.mul(&le)).divide_by_log(&eps).unwrap();
        assert!(x.fil_truncate(1).unwrap().equals(&a.divide_by_log(&eps).unwrap()));
        let mixed = Character::parse_text(&reg, "eps*p").unwrap();
        assert!(matches!(a.divide_by_log(&mixed).unwrap().fil_truncate(1), Err(Error::NotGraded(_))));
    }

    #[test]
    fn reduced_log_examples() {
        let reg = setup();
        let f = reg.field();
        let r = reduced_log(&reg, &Character::parse_text(&reg, "1+a").unwrap()).unwrap();
        let expected = lam(&reg, "1+a").sub(&Period::constant(&reg, &Scalar::from_i64(f, 6).plog().unwrap().scale_int(4)));
        assert!(r.equals(&expected));
        assert!(reduced_log(&reg, &Character::parse_text(&reg, "eps").unwrap()).unwrap().equals(&lam(&reg, "eps")));
        assert_eq!(reduced_log(&reg, &Character::parse_text(&reg, "p").unwrap()).unwrap_err(), Error::NeedsLogP);
        let with_p = reg.with_log_p(true).unwrap();
        let rp = reduced_log(&with_p, &Character::parse_text(&with_p, "p").unwrap()).unwrap();
        let expect = Period::symbol(&with_p, with_p.id("p").unwrap())
            .sub(&Period::symbol(&with_p, with_p.log_p_symbol()).scale_int(4));
        assert!(rp.equals(&expect));
    }

    #[test]
    fn equals_examples() {
        let reg = setup();
        let le = lam(&reg, "eps");
        let eps = Character::parse_text(&reg, "eps").unwrap();
        assert!(le.divide_by_log(&eps).unwrap().equals(&Period::one(&reg)));
        let c = Period::rational(&reg, &q(624, 1));
        let p = Character::parse_text(&reg, "p").unwrap();
        assert!(!c.divide_by_log(&p).unwrap().equals(&c.divide_by_log(&eps).unwrap()));
        let a = Period::rational(&reg, &q(2, 1));
        let b = lam(&reg, "q");
        let lhs = a.divide_by_log(&p).unwrap().add(&b.divide_by_log(&p).unwrap());
        assert!(lhs.equals(&a.add(&b).divide_by_log(&p).unwrap()));
    }

    #[test]
    fn galois_twist_on_symbols() {
        let reg = setup();
        let mut action = GaloisAction::cyclotomic(2);
        action.cocycle.insert(reg.id("q").unwrap(), q(3, 1));
        let tw = lam(&reg, "q").galois_twist(&action).unwrap();
        assert!(tw.equals(&lam(&reg, "q").add(&lam(&reg, "eps").scale_int(3))));
        let eps = Character::parse_text(&reg, "eps").unwrap();
        let inv = Period::one(&reg).divide_by_log(&eps).unwrap().galois_twist(&action).unwrap();
        assert!(inv.mul(&lam(&reg, "eps").scale_int(2)).equals(&Period::one(&reg)));
    }
}
