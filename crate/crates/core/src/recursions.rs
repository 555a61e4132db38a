//! Recursions for the `IU` and `U` polynomials.
//!
//! `IU_{Γ,n}(q,z)` are the coefficients of `1 / INM_Γ(t,q,z)` under
//! `[n]_q!` normalization, and `U_{Γ,n}(y)` those of `1 / NM_Γ(t,1,y)` under
//! `n!`. Every engine here has a brute-force counterpart in
//! [`RecursionSpec::oracle`]; [`RecursionSpec::check_oracle`] compares them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::overlap::{are_mutually_minimal_overlapping_by, is_minimal_overlapping_by, Method};
use crate::perm::{PatternSet, Permutation, RankRange};
use crate::qpoly::{binomial_int, q_binomial, Bindings, Monomial, MultiPoly, Var};
use crate::qseries::{brute_inm, brute_nm_xy, Plain, QFactorial, QSeries};

/// The `n`-th Catalan number.
pub fn catalan(n: usize) -> BigInt {
    binomial_int(2 * n, n) / BigInt::from(n + 1)
}

/// `x (x-2) (x-4) ...` with `k` factors; `1` when `k = 0`.
pub fn double_falling(x: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, t| acc * BigInt::from(x - 2 * t))
}

/// `-z`-style leading terms: `(-v)^e`.
fn neg_pow(v: Var, e: usize) -> MultiPoly {
    let m = MultiPoly::var_pow(v, e as u32);
    if e % 2 == 1 {
        -m
    } else {
        m
    }
}

fn at(u: &[MultiPoly], i: isize) -> Option<&MultiPoly> {
    (i >= 0).then(|| &u[i as usize])
}

/// Checks the hypotheses shared by the two `IU` recursions and returns
/// the common length `p`.
fn check_iu_hypotheses(gamma: &[Permutation]) -> Result<usize> {
    let first = gamma.first().ok_or_else(|| Error::invalid("the pattern set is empty"))?;
    let p = first.len();
    let budget = Budget::default();
    for tau in gamma {
        if tau.len() != p {
            return Err(Error::invalid(format!("all patterns must have length {p}, {tau} does not")));
        }
        if p < 3 {
            return Err(Error::invalid(format!("{tau}: patterns need length >= 3")));
        }
        if tau.first() != Some(1) {
            return Err(Error::invalid(format!("{tau} does not start with 1")));
        }
        let s = tau.last().expect("nonempty") as usize;
        if !(2..p).contains(&s) {
            return Err(Error::invalid(format!("{tau}: last entry {s} is not in 2..{}", p - 1)));
        }
        if !is_minimal_overlapping_by(tau, Method::PrefixSuffix, &budget)?.verdict {
            return Err(Error::invalid(format!("{tau} is not minimal overlapping")));
        }
    }
    for (i, a) in gamma.iter().enumerate() {
        for b in &gamma[i + 1..] {
            if a == b {
                return Err(Error::invalid(format!("{a} is listed twice")));
            }
            if !are_mutually_minimal_overlapping_by(a, b, Method::PrefixSuffix, &budget)?.verdict {
                return Err(Error::invalid(format!("{a} and {b} are not mutually minimal overlapping")));
            }
        }
    }
    Ok(p)
}

/// `IU_0 = 1`, `IU_1 = -z` and for `n >= 2`
///
/// `IU_n = (1-z) IU_{n-1} - Σ_i z^{des α_i} q^{inv α_i} [n-s_i choose p-s_i]_q IU_{n-p+1}`.
fn iu_engine(gamma: &[Permutation], p: usize, order: usize) -> Result<QSeries<QFactorial>> {
    let one_minus_z = MultiPoly::one() - MultiPoly::var(Var::Z);
    let weights: Vec<(MultiPoly, usize)> = gamma
        .iter()
        .map(|a| {
            let mut e = [0u32; 5];
            e[Var::Z as usize] = a.des() as u32;
            e[Var::Q as usize] = a.inv() as u32;
            (MultiPoly::term(Monomial(e), 1), a.last().expect("nonempty") as usize)
        })
        .collect();
    let mut iu = vec![MultiPoly::one(), -MultiPoly::var(Var::Z)];
    for n in 2..=order {
        let mut next = &one_minus_z * &iu[n - 1];
        if let Some(prev) = at(&iu, n as isize - p as isize + 1) {
            for (w, s) in &weights {
                if n < *s || n - s < p - s {
                    continue;
                }
                next -= &(&(w * &q_binomial(n - s, p - s)?) * prev);
            }
        }
        iu.push(next);
    }
    iu.truncate(order + 1);
    QSeries::new(iu)
}

/// `IU_{τ,n}(q,z)` for a minimal overlapping `τ ∈ S_p` with `τ_1 = 1` and
/// `τ_p = s`, `2 <= s < p`.
pub fn iu_thm_key(tau: &Permutation, order: usize) -> Result<QSeries<QFactorial>> {
    let gamma = [tau.clone()];
    let p = check_iu_hypotheses(&gamma)?;
    iu_engine(&gamma, p, order)
}

/// The set version: patterns of one length `p`, each minimal overlapping
/// and starting with 1, pairwise mutually minimal overlapping.
pub fn iu_thm_set(gamma: &[Permutation], order: usize) -> Result<QSeries<QFactorial>> {
    let mut gamma = gamma.to_vec();
    gamma.sort();
    let p = check_iu_hypotheses(&gamma)?;
    iu_engine(&gamma, p, order)
}

/// `Γ_{k1,k2}`: permutations of length `k1 + k2` with 1 first, 2 at position
/// `k1 + 1`, increasing on positions `1..=k1` and on `k1+1..=k1+k2`.
pub fn gamma_set(k1: usize, k2: usize) -> Result<Vec<Permutation>> {
    if k1 < 2 || k2 < 2 {
        return Err(Error::invalid(format!("Γ_(k1,k2) needs k1, k2 >= 2, got ({k1}, {k2})")));
    }
    let p = k1 + k2;
    let mut out = Vec::new();
    RankRange::full(p).for_each(|s| {
        if s[0] == 1
            && s[k1] == 2
            && s[..k1].windows(2).all(|w| w[0] < w[1])
            && s[k1..].windows(2).all(|w| w[0] < w[1])
        {
            out.push(Permutation::new(s.to_vec()).expect("from enumeration"));
        }
    });
    Ok(out)
}

fn pattern_1324p(p: usize) -> Permutation {
    let mut e = vec![1, 3, 2];
    e.extend(4..=p as u32);
    Permutation::new(e).expect("valid")
}

/// The recursion families that can be evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    ThmKey { tau: Permutation },
    ThmSet { gamma: Vec<Permutation> },
    #[serde(rename = "jr-1324")]
    Jr1324,
    #[serde(rename = "jr-1324p")]
    Jr1324p { p: usize },
    #[serde(rename = "br-1324-123")]
    Br1324And123,
    #[serde(rename = "br-1324p-12p")]
    Br1324pAnd12p { p: usize },
    BrGammaK1k2 { k1: usize, k2: usize },
    #[serde(rename = "br-gamma22s")]
    BrGamma22s { s: usize },
    #[serde(rename = "closed-1324-123")]
    Closed1324And123,
    #[serde(rename = "closed-gamma222")]
    ClosedGamma222,
}

/// Family tags accepted by [`Family::from_tag`].
pub const FAMILY_TAGS: [&str; 10] = [
    "thm-key",
    "thm-set",
    "jr-1324",
    "jr-1324p",
    "br-1324-123",
    "br-1324p-12p",
    "br-gamma-k1k2",
    "br-gamma22s",
    "closed-1324-123",
    "closed-gamma222",
];

/// Optional parameters for [`Family::from_tag`]; each tag reads the ones it
/// needs.
#[derive(Debug, Clone, Default)]
pub struct FamilyParams {
    pub patterns: Vec<Permutation>,
    pub p: Option<usize>,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub s: Option<usize>,
}

impl Family {
    pub fn from_tag(tag: &str, params: &FamilyParams) -> Result<Family> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::invalid(format!("family {tag} needs parameter {name}")))
        };
        let family = match tag {
            "thm-key" => match params.patterns.as_slice() {
                [tau] => Family::ThmKey { tau: tau.clone() },
                _ => return Err(Error::invalid("family thm-key needs exactly one pattern")),
            },
            "thm-set" => {
                if params.patterns.is_empty() {
                    return Err(Error::invalid("family thm-set needs at least one pattern"));
                }
                Family::ThmSet { gamma: params.patterns.clone() }
            }
            "jr-1324" => Family::Jr1324,
            "jr-1324p" => Family::Jr1324p { p: need(params.p, "p")? },
            "br-1324-123" => Family::Br1324And123,
            "br-1324p-12p" => Family::Br1324pAnd12p { p: need(params.p, "p")? },
            "br-gamma-k1k2" => Family::BrGammaK1k2 {
                k1: need(params.k1, "k1")?,
                k2: need(params.k2, "k2")?,
            },
            "br-gamma22s" => Family::BrGamma22s { s: need(params.s, "s")? },
            "closed-1324-123" => Family::Closed1324And123,
            "closed-gamma222" => Family::ClosedGamma222,
            _ => {
                return Err(Error::invalid(format!(
                    "unknown family {tag}; expected one of {}",
                    FAMILY_TAGS.join(", ")
                )))
            }
        };
        family.validate()?;
        Ok(family)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::ThmKey { .. } => "thm-key",
            Family::ThmSet { .. } => "thm-set",
            Family::Jr1324 => "jr-1324",
            Family::Jr1324p { .. } => "jr-1324p",
            Family::Br1324And123 => "br-1324-123",
            Family::Br1324pAnd12p { .. } => "br-1324p-12p",
            Family::BrGammaK1k2 { .. } => "br-gamma-k1k2",
            Family::BrGamma22s { .. } => "br-gamma22s",
            Family::Closed1324And123 => "closed-1324-123",
            Family::ClosedGamma222 => "closed-gamma222",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Family::ThmKey { ref tau } => check_iu_hypotheses(std::slice::from_ref(tau)).map(drop),
            Family::ThmSet { ref gamma } => {
                let mut g = gamma.clone();
                g.sort();
                check_iu_hypotheses(&g).map(drop)
            }
            Family::Jr1324p { p } | Family::Br1324pAnd12p { p } if p < 5 => {
                Err(Error::invalid(format!("family {} needs p >= 5, got {p}", self.tag())))
            }
            Family::BrGammaK1k2 { k1, k2 } if k1 < k2 => Err(Error::invalid(format!(
                "family br-gamma-k1k2 holds only for k1 >= k2, got k1={k1}, k2={k2}"
            ))),
            Family::BrGammaK1k2 { k1, k2 } => gamma_set(k1, k2).map(drop),
            Family::BrGamma22s { s } if s < 2 => {
                Err(Error::invalid(format!("family br-gamma22s needs s >= 2, got {s}")))
            }
            _ => Ok(()),
        }
    }

    /// Whether the family produces `IU(q,z)` rather than `U(y)`.
    pub fn is_iu(&self) -> bool {
        matches!(self, Family::ThmKey { .. } | Family::ThmSet { .. })
    }

    /// The pattern set whose avoidance the family describes.
    pub fn patterns(&self) -> Result<Vec<Permutation>> {
        let p = |s: &str| s.parse::<Permutation>().expect("valid literal");
        Ok(match self {
            Family::ThmKey { tau } => vec![tau.clone()],
            Family::ThmSet { gamma } => gamma.clone(),
            Family::Jr1324 => vec![p("1324")],
            Family::Jr1324p { p: len } => vec![pattern_1324p(*len)],
            Family::Br1324And123 | Family::Closed1324And123 => vec![p("1324"), p("123")],
            Family::Br1324pAnd12p { p: len } => vec![pattern_1324p(*len), Permutation::identity(len - 1)],
            Family::BrGammaK1k2 { k1, k2 } => gamma_set(*k1, *k2)?,
            Family::BrGamma22s { s } => {
                let mut g = gamma_set(2, 2)?;
                g.push(Permutation::identity(s + 1));
                g
            }
            Family::ClosedGamma222 => {
                let mut g = gamma_set(2, 2)?;
                g.push(Permutation::identity(3));
                g
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ThmKey { tau } => write!(f, "thm-key({tau})"),
            Family::ThmSet { gamma } => {
                let names: Vec<String> = gamma.iter().map(|g| g.to_string()).collect();
                write!(f, "thm-set({})", names.join(","))
            }
            Family::Jr1324p { p } | Family::Br1324pAnd12p { p } => write!(f, "{}(p={p})", self.tag()),
            Family::BrGammaK1k2 { k1, k2 } => write!(f, "br-gamma-k1k2(k1={k1},k2={k2})"),
            Family::BrGamma22s { s } => write!(f, "br-gamma22s(s={s})"),
            _ => f.write_str(self.tag()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses parameter-free tags only; use [`Family::from_tag`] otherwise.
    fn from_str(s: &str) -> Result<Self> {
        Family::from_tag(s, &FamilyParams::default())
    }
}

/// `U_0 = 1`, `U_1 = -y` and the family's recursion for `n >= 2`.
pub fn u_quoted(family: &Family, order: usize) -> Result<QSeries<Plain>> {
    family.validate()?;
    let y = MultiPoly::var(Var::Y);
    let neg_y = -y.clone();
    let one_minus_y = MultiPoly::one() - y.clone();
    let mut u = vec![MultiPoly::one(), neg_y.clone()];
    for n in 2..=order {
        let ni = n as isize;
        let mut next = MultiPoly::zero();
        let mut add = |coef: MultiPoly, idx: isize, u: &[MultiPoly]| {
            if let Some(prev) = at(u, idx) {
                next += &(&coef * prev);
            }
        };
        match *family {
            Family::Jr1324 => {
                add(one_minus_y.clone(), ni - 1, &u);
                for k in 2..=n / 2 {
                    add(neg_pow(Var::Y, k - 1).scale(&catalan(k - 1)), ni - 2 * k as isize + 1, &u);
                }
            }
            Family::Jr1324p { p } => {
                add(one_minus_y.clone(), ni - 1, &u);
                for k in 2..=(n - 2) / (p - 2) + 1 {
                    add(neg_pow(Var::Y, k - 1), ni - ((k - 1) * (p - 2) + 1) as isize, &u);
                }
            }
            Family::Br1324And123 | Family::Closed1324And123 => {
                add(neg_y.clone(), ni - 1, &u);
                add(neg_y.clone(), ni - 2, &u);
                for k in 2..=n / 2 {
                    add(neg_pow(Var::Y, k).scale(&catalan(k - 1)), ni - 2 * k as isize, &u);
                }
            }
            Family::Br1324pAnd12p { p } => {
                for k in 1..=p - 2 {
                    add(neg_y.clone(), ni - k as isize, &u);
                }
                for k in 2..=p - 2 {
                    if k > n {
                        break;
                    }
                    for m in 2..=(n - k) / (p - 2) + 1 {
                        add(neg_pow(Var::Y, m), (n - k) as isize - ((m - 1) * (p - 2)) as isize, &u);
                    }
                }
            }
            Family::BrGammaK1k2 { k1, k2 } => {
                let (m, big_m) = (k1.min(k2), k1.max(k2));
                add(one_minus_y.clone(), ni - 1, &u);
                let c = if n >= 2 { binomial_int(n - 2, k1 - 1) } else { BigInt::zero() };
                let outer = neg_y.scale(&c);
                add(outer.clone(), ni - big_m as isize, &u);
                let inner = &outer * &y;
                for i in 1..m {
                    add(inner.clone(), ni - (big_m + i) as isize, &u);
                }
            }
            Family::BrGamma22s { s } => {
                add(neg_y.clone(), ni - 1, &u);
                for k in 0..=s - 2 {
                    let a = ni - k as isize - 1;
                    let b = ni - k as isize - 2;
                    if a > 0 {
                        add(neg_y.scale(&BigInt::from(a)), ni - k as isize - 2, &u);
                    }
                    if b > 0 {
                        add((&neg_y * &y).scale(&BigInt::from(b)), ni - k as isize - 3, &u);
                    }
                }
            }
            Family::ClosedGamma222 => {
                return u_quoted(&Family::BrGamma22s { s: 2 }, order);
            }
            Family::ThmKey { .. } | Family::ThmSet { .. } => {
                return Err(Error::invalid(format!(
                    "family {} produces IU(q,z); use iu_series",
                    family.tag()
                )));
            }
        }
        u.push(next);
    }
    u.truncate(order + 1);
    QSeries::new(u)
}

/// `IU(q,z)` for the two theorem families.
pub fn iu_series(family: &Family, order: usize) -> Result<QSeries<QFactorial>> {
    match family {
        Family::ThmKey { tau } => iu_thm_key(tau, order),
        Family::ThmSet { gamma } => iu_thm_set(gamma, order),
        _ => Err(Error::invalid(format!("family {} produces U(y); use u_quoted", family.tag()))),
    }
}

/// The explicit polynomial `U_n(y)` for the two closed-form families.
pub fn u_closed(family: &Family, n: usize) -> Result<MultiPoly> {
    let half = n / 2;
    let mut out = MultiPoly::zero();
    let mut push = |num: BigInt, den: BigInt, exp: usize| -> Result<()> {
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::inconsistent(format!(
                "closed form {family} at n = {n}: {num}/{den} is not an integer"
            )));
        }
        out += &neg_pow(Var::Y, exp).scale(&q);
        Ok(())
    };
    match family {
        Family::Closed1324And123 => {
            for k in 0..=half {
                if n.is_multiple_of(2) {
                    push(
                        BigInt::from(2 * k + 1) * binomial_int(2 * half, half - k),
                        BigInt::from(half + k + 1),
                        half + k,
                    )?;
                } else {
                    push(
                        BigInt::from(2 * (k + 1)) * binomial_int(2 * half + 1, half - k),
                        BigInt::from(half + k + 2),
                        half + k + 1,
                    )?;
                }
            }
        }
        Family::ClosedGamma222 => {
            for i in 0..=half {
                if n.is_multiple_of(2) {
                    push(double_falling(2 * half as i64 - 1, half - i), BigInt::one(), half + i)?;
                } else {
                    push(double_falling(2 * half as i64, half - i), BigInt::one(), half + 1 + i)?;
                }
            }
        }
        _ => {
            return Err(Error::invalid(format!(
                "family {} has no closed form; expected closed-1324-123 or closed-gamma222",
                family.tag()
            )))
        }
    }
    Ok(out)
}

/// Smallest index from which the closed forms agree with their recursions.
pub const CLOSED_FORM_N_MIN: usize = 0;

/// A family together with a truncation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionSpec {
    pub family: Family,
    pub order: usize,
}

/// Either kind of series a family evaluates to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RecursionOutput {
    Iu(QSeries<QFactorial>),
    U(QSeries<Plain>),
}

impl RecursionOutput {
    pub fn coeffs(&self) -> &[MultiPoly] {
        match self {
            RecursionOutput::Iu(s) => s.coeffs(),
            RecursionOutput::U(s) => s.coeffs(),
        }
    }
}

/// Outcome of comparing a recursion with brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub spec: String,
    pub order: usize,
    pub agree: bool,
    pub first_mismatch: Option<usize>,
}

impl RecursionSpec {
    pub fn new(family: Family, order: usize) -> Self {
        RecursionSpec { family, order }
    }

    /// Evaluates the recursion (or, for the closed-form families, the
    /// explicit polynomials).
    pub fn evaluate(&self) -> Result<RecursionOutput> {
        match &self.family {
            Family::ThmKey { .. } | Family::ThmSet { .. } => iu_series(&self.family, self.order).map(RecursionOutput::Iu),
            Family::Closed1324And123 | Family::ClosedGamma222 => {
                let coeffs = (0..=self.order)
                    .map(|n| u_closed(&self.family, n))
                    .collect::<Result<_>>()?;
                QSeries::new(coeffs).map(RecursionOutput::U)
            }
            _ => u_quoted(&self.family, self.order).map(RecursionOutput::U),
        }
    }

    /// The same coefficients from brute force: `1 / INM_Γ` for the `IU`
    /// families and `1 / NM_Γ(t,1,y)` for the rest.
    pub fn oracle(&self, budget: &Budget) -> Result<RecursionOutput> {
        let set = PatternSet::new(self.family.patterns()?)?;
        if self.family.is_iu() {
            brute_inm(&set, self.order, budget)?.reciprocal().map(RecursionOutput::Iu)
        } else {
            let nm = brute_nm_xy(&set, self.order, budget)?;
            nm.substitute(&Bindings::new().value(Var::X, 1))?
                .reciprocal()
                .map(RecursionOutput::U)
        }
    }

    pub fn check_oracle(&self, budget: &Budget) -> Result<OracleCheck> {
        let got = self.evaluate()?;
        let want = self.oracle(budget)?;
        let first_mismatch = got
            .coeffs()
            .iter()
            .zip(want.coeffs())
            .position(|(a, b)| a != b);
        Ok(OracleCheck {
            spec: self.family.to_string(),
            order: self.order,
            agree: first_mismatch.is_none(),
            first_mismatch,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn y_poly(coeffs: &[i64]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            out.add_term(Monomial::var(Var::Y, e as u32), BigInt::from(c));
        }
        out
    }

    #[test]
    fn helpers() {
        let c: Vec<BigInt> = (0..6).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42].map(BigInt::from));
        for x in [-3, 0, 5, 9] {
            assert!(double_falling(x, 0).is_one());
        }
        assert_eq!(double_falling(7, 3), BigInt::from(7 * 5 * 3));
    }

    #[test]
    fn gamma_sets_from_definition() {
        let g = gamma_set(2, 2).unwrap();
        assert_eq!(g, vec![p("1324"), p("1423")]);
        for (k1, k2) in [(2, 3), (3, 2), (3, 3), (2, 4)] {
            let g = gamma_set(k1, k2).unwrap();
            assert_eq!(BigInt::from(g.len()), binomial_int(k1 + k2 - 2, k1 - 1));
            assert!(g.iter().all(|t| t.des() == 1 && t.first() == Some(1)));
        }
        assert!(gamma_set(1, 3).is_err());
    }

    #[test]
    fn iu_first_terms() {
        let iu = iu_thm_key(&p("13542"), 4).unwrap();
        let z = MultiPoly::var(Var::Z);
        assert_eq!(iu.coeff(1), &-z.clone());
        assert_eq!(iu.coeff(2), &(&z * &z - z.clone()));
    }

    #[test]
    fn iu_hypotheses_are_checked() {
        // Not starting with 1, not minimal overlapping, ending with p, too short.
        for bad in ["2143", "14253", "1423", "12345", "12"] {
            assert!(matches!(iu_thm_key(&p(bad), 4), Err(Error::InvalidInput(_))), "{bad}");
        }
        assert!(iu_thm_key(&p("1342"), 4).is_ok());
        assert!(iu_thm_set(&[p("1342"), p("13542")], 3).is_err());
        assert!(iu_thm_set(&[p("1342"), p("1342")], 3).is_err());
    }

    #[test]
    fn set_of_one_is_key() {
        for tau in ["13542", "1342", "12453"] {
            assert_eq!(iu_thm_set(&[p(tau)], 8).unwrap(), iu_thm_key(&p(tau), 8).unwrap());
        }
    }

    #[test]
    fn quoted_u_for_1324_123_matches_tabulated() {
        let u = u_quoted(&Family::Br1324And123, 8).unwrap();
        let expected = [
            y_poly(&[1]),
            y_poly(&[0, -1]),
            y_poly(&[0, -1, 1]),
            y_poly(&[0, 0, 2, -1]),
            y_poly(&[0, 0, 2, -3, 1]),
            y_poly(&[0, 0, 0, -5, 4, -1]),
            y_poly(&[0, 0, 0, -5, 9, -5, 1]),
            y_poly(&[0, 0, 0, 0, 14, -14, 6, -1]),
            y_poly(&[0, 0, 0, 0, 14, -28, 20, -7, 1]),
        ];
        assert_eq!(u.coeffs(), &expected);
    }

    #[test]
    fn closed_forms_match_recursions() {
        for (closed, rec) in [
            (Family::Closed1324And123, Family::Br1324And123),
            (Family::ClosedGamma222, Family::BrGamma22s { s: 2 }),
        ] {
            let u = u_quoted(&rec, 14).unwrap();
            for n in CLOSED_FORM_N_MIN..=14 {
                assert_eq!(&u_closed(&closed, n).unwrap(), u.coeff(n), "{closed} n={n}");
            }
        }
        assert!(u_closed(&Family::Jr1324, 3).is_err());
    }

    /// The {1324, 123} closed forms with the `(-y)` exponents exactly as
    /// first written down (`n+k+1` for even indices, `n+k` for odd ones).
    fn closed_1324_123_as_written(n: usize) -> MultiPoly {
        let h = n / 2;
        let mut out = MultiPoly::zero();
        for k in 0..=h {
            let (num, den, e) = if n.is_multiple_of(2) {
                (BigInt::from(2 * k + 1) * binomial_int(2 * h, h - k), BigInt::from(h + k + 1), h + k + 1)
            } else {
                (BigInt::from(2 * (k + 1)) * binomial_int(2 * h + 1, h - k), BigInt::from(h + k + 2), h + k)
            };
            out += &neg_pow(Var::Y, e).scale(&(num / den));
        }
        out
    }

    #[test]
    fn written_exponents_disagree_everywhere() {
        let u = u_quoted(&Family::Br1324And123, 9).unwrap();
        for n in 0..=9 {
            assert_ne!(&closed_1324_123_as_written(n), u.coeff(n), "n={n}");
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(Family::from_tag("jr-1324p", &FamilyParams { p: Some(4), ..Default::default() }).is_err());
        assert!(Family::from_tag("jr-1324p", &FamilyParams::default()).is_err());
        let k = |k1, k2| FamilyParams { k1: Some(k1), k2: Some(k2), ..Default::default() };
        assert!(Family::from_tag("br-gamma-k1k2", &k(2, 3)).is_err());
        assert!(Family::from_tag("br-gamma-k1k2", &k(3, 3)).is_ok());
        assert!(Family::from_tag("br-gamma22s", &FamilyParams { s: Some(1), ..Default::default() }).is_err());
        assert!(Family::from_tag("nope", &FamilyParams::default()).is_err());
        for tag in FAMILY_TAGS {
            let params = FamilyParams {
                patterns: vec![p("13542")],
                p: Some(5),
                k1: Some(2),
                k2: Some(2),
                s: Some(2),
            };
            let f = Family::from_tag(tag, &params).unwrap();
            assert_eq!(f.tag(), tag);
        }
    }

    #[test]
    fn u_quoted_starts_with_one_and_minus_y() {
        for f in [
            Family::Jr1324,
            Family::Jr1324p { p: 6 },
            Family::Br1324pAnd12p { p: 5 },
            Family::BrGammaK1k2 { k1: 3, k2: 2 },
            Family::BrGamma22s { s: 3 },
        ] {
            let u = u_quoted(&f, 3).unwrap();
            assert!(u.coeff(0).is_one());
            assert_eq!(u.coeff(1), &y_poly(&[0, -1]));
        }
        assert!(u_quoted(&Family::ThmKey { tau: p("1342") }, 3).is_err());
    }
}
