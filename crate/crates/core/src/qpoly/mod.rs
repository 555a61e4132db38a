//! Sparse polynomials in the five formal variables `q, p, z, x, y` with
//! arbitrary-precision integer coefficients.
//!
//! Terms are kept in the canonical order: graded lexicographic on the
//! exponent vector `(q, p, z, x, y)`, highest term first. Every textual and
//! JSON rendering walks terms in this order, so output is byte-stable.

mod analogue;
mod ratpoly;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use analogue::{
    binomial_int, pq_binomial, pq_factorial, pq_int, q_binomial, q_factorial, q_int, q_multinomial,
};
pub use ratpoly::RatPoly;

/// The formal variables, in canonical exponent-vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q = 0,
    P = 1,
    Z = 2,
    X = 3,
    Y = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::Q, Var::P, Var::Z, Var::X, Var::Y];

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::P => "p",
            Var::Z => "z",
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Order in which factors are written inside a monomial: statistic
/// variables before the `q, p` deformation variables, e.g. `z^2*q`.
const RENDER_ORDER: [Var; 5] = [Var::Z, Var::X, Var::Y, Var::Q, Var::P];

/// An exponent vector over `(q, p, z, x, y)`.
///
/// `Ord` is the canonical term order: higher total degree first, then
/// lexicographically larger exponent vectors first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn var(v: Var, exp: u32) -> Self {
        let mut e = [0; 5];
        e[v as usize] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v as usize]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        e.iter_mut().zip(other.0).for_each(|(a, b)| *a += b);
        Monomial(e)
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 5];
        for (slot, (a, b)) in e.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *slot = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial with big-integer coefficients. No zero coefficient
/// is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Monomial::var(v, 1), 1)
    }

    /// `c * v^exp`.
    pub fn var_pow(v: Var, exp: u32) -> Self {
        MultiPoly::term(Monomial::var(v, exp), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Builds `Σ c·m`, merging repeated monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(BigInt::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant coefficient, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Whether the variable `v` appears in some term.
    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `d`, failing unless each is divisible.
    pub fn div_exact_int(&self, d: &BigInt) -> Result<MultiPoly> {
        if d.is_zero() {
            return Err(Error::inconsistent("division by zero"));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::inconsistent(format!(
                    "coefficient {c} is not divisible by {d}"
                )));
            }
            terms.insert(*m, q);
        }
        Ok(MultiPoly { terms })
    }

    /// Exact division by `divisor`, by long division on leading terms.
    /// Any nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (dm, dc) = divisor
            .leading()
            .map(|(m, c)| (*m, c.clone()))
            .ok_or_else(|| Error::inconsistent("division by the zero polynomial"))?;
        let mut rem = self.clone();
        let mut quotient = MultiPoly::zero();
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            let qm = lm.checked_div(&dm);
            let (qc, r) = lc.div_rem(&dc);
            let Some(qm) = qm.filter(|_| r.is_zero()) else {
                return Err(Error::inconsistent(format!(
                    "{self} is not exactly divisible by {divisor}"
                )));
            };
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Evaluates or renames variables according to `bindings`.
    pub fn substitute(&self, bindings: &Bindings) -> MultiPoly {
        let mut out: HashMap<Monomial, BigInt> = HashMap::new();
        let mut pow_cache: HashMap<(usize, u32), BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = [0u32; 5];
            for v in Var::ALL {
                let k = m.exp(v);
                if k == 0 {
                    continue;
                }
                match bindings.0[v as usize] {
                    None => e[v as usize] += k,
                    Some(Binding::Var(w)) => e[w as usize] += k,
                    Some(Binding::Value(val)) => {
                        let p = pow_cache
                            .entry((v as usize, k))
                            .or_insert_with(|| Pow::pow(BigInt::from(val), k));
                        coeff *= &*p;
                    }
                }
            }
            if !coeff.is_zero() {
                *out.entry(Monomial(e)).or_default() += coeff;
            }
        }
        MultiPoly {
            terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Evaluates at integer values for every variable that occurs.
    pub fn eval(&self, values: [i64; 5]) -> BigInt {
        let b = Var::ALL
            .into_iter()
            .fold(Bindings::new(), |b, v| b.value(v, values[v as usize]));
        self.substitute(&b).as_constant().expect("fully bound")
    }

    /// Coefficient extraction in one variable: `Σ_k c_k v^k` with the
    /// `c_k` free of `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v as usize] = 0;
            out.entry(m.exp(v)).or_default().add_term(rest, c.clone());
        }
        out
    }
}

/// Replacement for a single variable in [`MultiPoly::substitute`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    Value(i64),
    Var(Var),
}

/// A partial map from variables to integers or other variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bindings([Option<Binding>; 5]);

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn value(mut self, v: Var, val: i64) -> Self {
        self.0[v as usize] = Some(Binding::Value(val));
        self
    }

    pub fn rename(mut self, from: Var, to: Var) -> Self {
        self.0[from as usize] = Some(Binding::Var(to));
        self
    }

    pub fn binds(&self, v: Var) -> bool {
        self.0[v as usize].is_some()
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl fmt::Display for MultiPoly {
    /// Renders e.g. `z^2*q - z`; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(abs.to_string());
            }
            for v in RENDER_ORDER {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    k => factors.push(format!("{}^{k}", v.name())),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    e: [u32; 5],
    c: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<String>,
    terms: Vec<JsonTerm>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            vars: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| JsonTerm {
                    e: m.0,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonPoly::deserialize(deserializer)?;
        let canonical: Vec<&str> = Var::ALL.iter().map(|v| v.name()).collect();
        if raw.vars != canonical {
            return Err(D::Error::custom(format!(
                "expected vars {canonical:?}, got {:?}",
                raw.vars
            )));
        }
        let mut out = MultiPoly::zero();
        for t in raw.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.c)))?;
            out.add_term(Monomial(t.e), c);
        }
        Ok(out)
    }
}
