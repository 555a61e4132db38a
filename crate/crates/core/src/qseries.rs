//! Truncated exponential-type series `Σ a_n t^n / D_n` with exact
//! polynomial coefficients.
//!
//! The denominator `D_n` is fixed by a type-level [`Normalization`]:
//! `n!`, `[n]_q!` or `[n]_{p,q}!`. Products and reciprocals use the matching
//! binomial convolution, and mixing normalizations does not type-check.

use std::collections::HashMap;
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::perm::{self, par_fold, PatternSet};
use crate::qpoly::{Bindings, Monomial, MultiPoly, RatPoly, Var};

mod sealed {
    pub trait Sealed {}
}

/// Convolution rule of a [`QSeries`].
pub trait Normalization: sealed::Sealed + Copy + Default + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;

    /// Weights `(left, right)` in the Pascal step
    /// `C(n,k) = left·C(n-1,k-1) + right·C(n-1,k)`.
    fn pascal_weights(n: usize, k: usize) -> (Monomial, Monomial);

    /// Rows `0..=order` of the convolution coefficients `C(n, k)`.
    fn conv_table(order: usize) -> Vec<Vec<MultiPoly>> {
        let mut rows: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]];
        for n in 1..=order {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let (l, r) = Self::pascal_weights(n, k);
                    let one = BigInt::one();
                    let mut c = MultiPoly::zero();
                    if k >= 1 {
                        c += &prev[k - 1].mul_term(&l, &one);
                    }
                    if k < n {
                        c += &prev[k].mul_term(&r, &one);
                    }
                    c
                })
                .collect();
            rows.push(row);
        }
        rows
    }
}

/// `t^n / n!`, convolution by ordinary binomial coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Plain;

/// `t^n / [n]_q!`, convolution by `q`-binomial coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QFactorial;

/// `t^n / [n]_{p,q}!`, convolution by `p,q`-binomial coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PqFactorial;

impl sealed::Sealed for Plain {}
impl sealed::Sealed for QFactorial {}
impl sealed::Sealed for PqFactorial {}

impl Normalization for Plain {
    const NAME: &'static str = "plain-factorial";
    fn pascal_weights(_: usize, _: usize) -> (Monomial, Monomial) {
        (Monomial::ONE, Monomial::ONE)
    }
}

impl Normalization for QFactorial {
    const NAME: &'static str = "q-factorial";
    fn pascal_weights(_: usize, k: usize) -> (Monomial, Monomial) {
        (Monomial::ONE, Monomial::var(Var::Q, k as u32))
    }
}

impl Normalization for PqFactorial {
    const NAME: &'static str = "pq-factorial";
    fn pascal_weights(n: usize, k: usize) -> (Monomial, Monomial) {
        (Monomial::var(Var::P, (n - k) as u32), Monomial::var(Var::Q, k as u32))
    }
}

/// Coefficients `a_0..=a_N` of a series under normalization `N`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries<N: Normalization> {
    coeffs: Vec<MultiPoly>,
    _norm: PhantomData<N>,
}

impl<N: Normalization> QSeries<N> {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a series needs at least a_0"));
        }
        Ok(QSeries { coeffs, _norm: PhantomData })
    }

    fn from_vec(coeffs: Vec<MultiPoly>) -> Self {
        QSeries { coeffs, _norm: PhantomData }
    }

    /// The series `1` truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        coeffs[0] = MultiPoly::one();
        QSeries::from_vec(coeffs)
    }

    pub fn norm_name(&self) -> &'static str {
        N::NAME
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<MultiPoly> {
        self.coeffs
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        QSeries::from_vec(self.coeffs.iter().map(f).collect())
    }

    /// Substitutes in every coefficient. Binding `q` or `p` would change the
    /// meaning of the normalization, so that is left to
    /// [`QSeries::at_q_one`] and [`QSeries::at_p_one`].
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        if bindings.binds(Var::Q) || bindings.binds(Var::P) {
            return Err(Error::invalid(format!(
                "cannot substitute q or p inside a {} series",
                N::NAME
            )));
        }
        Ok(self.map(|c| c.substitute(bindings)))
    }

    /// Product under the binomial convolution, truncated at the smaller order.
    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let conv = N::conv_table(order);
        let coeffs = (0..=order)
            .map(|n| {
                let mut c = MultiPoly::zero();
                for k in 0..=n {
                    if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                        continue;
                    }
                    c += &(&conv[n][k] * &(&self.coeffs[k] * &other.coeffs[n - k]));
                }
                c
            })
            .collect();
        QSeries::from_vec(coeffs)
    }

    /// The series `b` with `b_0 = 1` and `Σ_k C(n,k) a_k b_{n-k} = 0` for
    /// `1 <= n <= N`.
    pub fn reciprocal(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::invalid(format!(
                "reciprocal needs a_0 = 1, got {}",
                self.coeffs[0]
            )));
        }
        let conv = N::conv_table(self.order());
        let mut b = vec![MultiPoly::one()];
        for n in 1..=self.order() {
            let mut c = MultiPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || b[n - k].is_zero() {
                    continue;
                }
                c -= &(&conv[n][k] * &(&self.coeffs[k] * &b[n - k]));
            }
            b.push(c);
        }
        Ok(QSeries::from_vec(b))
    }
}

impl QSeries<QFactorial> {
    /// Sets `q = 1`; `[n]_q!` becomes `n!`.
    pub fn at_q_one(&self) -> QSeries<Plain> {
        let b = Bindings::new().value(Var::Q, 1);
        QSeries::from_vec(self.coeffs.iter().map(|c| c.substitute(&b)).collect())
    }
}

impl QSeries<PqFactorial> {
    /// Sets `p = 1`; `[n]_{p,q}!` becomes `[n]_q!`.
    pub fn at_p_one(&self) -> QSeries<QFactorial> {
        let b = Bindings::new().value(Var::P, 1);
        QSeries::from_vec(self.coeffs.iter().map(|c| c.substitute(&b)).collect())
    }
}

impl<N: Normalization> fmt::Debug for QSeries<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries<{}>[", N::NAME)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl<N: Normalization> Serialize for QSeries<N> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QSeries", 2)?;
        st.serialize_field("norm", N::NAME)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

/// Sums `monomial(σ)` over `σ ∈ S_n` for `n = 0..=order`.
///
/// `weight` returns `None` to skip a permutation. Coefficients are tallied
/// as machine integers per thread and merged at the end.
pub(crate) fn tally<N, F>(what: &str, order: usize, budget: &Budget, weight: F) -> Result<QSeries<N>>
where
    N: Normalization,
    F: Fn(&[u32]) -> Option<[u32; 5]> + Sync + Send,
{
    budget.check_len(what, order)?;
    let mut coeffs = vec![MultiPoly::one()];
    for n in 1..=order {
        let counts = par_fold(
            n,
            HashMap::<[u32; 5], u64>::new,
            |acc, s| {
                if let Some(e) = weight(s) {
                    *acc.entry(e).or_default() += 1;
                }
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            },
        );
        coeffs.push(MultiPoly::from_terms(
            counts.into_iter().map(|(e, c)| (Monomial(e), BigInt::from(c))),
        ));
    }
    Ok(QSeries::from_vec(coeffs))
}

fn exps(pairs: &[(Var, usize)]) -> [u32; 5] {
    let mut e = [0u32; 5];
    for &(v, k) in pairs {
        e[v as usize] += k as u32;
    }
    e
}

/// `INM_{Γ,n}(q,z) = Σ z^{des(σ)+1} q^{inv(σ)}` over `Γ`-match-free `σ ∈ S_n`,
/// as a `[n]_q!`-normalized series with `a_0 = 1`.
pub fn brute_inm(gamma: &PatternSet, order: usize, budget: &Budget) -> Result<QSeries<QFactorial>> {
    tally("brute_inm order", order, budget, |s| {
        (!gamma.has_match(s)).then(|| exps(&[(Var::Z, perm::des(s) + 1), (Var::Q, perm::inv(s))]))
    })
}

/// `NM_{Γ,n}(x,y) = Σ x^{LRmin(σ)} y^{1+des(σ)}` over `Γ`-match-free `σ ∈ S_n`.
pub fn brute_nm_xy(gamma: &PatternSet, order: usize, budget: &Budget) -> Result<QSeries<Plain>> {
    tally("brute_nm_xy order", order, budget, |s| {
        (!gamma.has_match(s)).then(|| exps(&[(Var::X, perm::lrmin(s)), (Var::Y, perm::des(s) + 1)]))
    })
}

/// `Σ_{σ ∈ S_n} x^{Γ-mch(σ)} p^{coinv(σ)} q^{inv(σ)}`, normalized by `[n]_{p,q}!`.
pub fn match_distribution(gamma: &PatternSet, order: usize, budget: &Budget) -> Result<QSeries<PqFactorial>> {
    tally("match_distribution order", order, budget, |s| {
        let inv = perm::inv(s);
        let n = s.len();
        Some(exps(&[
            (Var::X, gamma.count_matches(s)),
            (Var::Q, inv),
            (Var::P, n * n.saturating_sub(1) / 2 - inv),
        ]))
    })
}

/// `(1/U)^x = exp(-x log U)` for a plain series `U` in `y` with `u_0 = 1`.
///
/// Works on the ordinary coefficients `u_n / n!` with rational intermediates;
/// the final `n!·e_n` must come out integral.
pub fn power_x(u: &QSeries<Plain>) -> Result<QSeries<Plain>> {
    if !u.coeffs[0].is_one() {
        return Err(Error::invalid(format!("power_x needs u_0 = 1, got {}", u.coeffs[0])));
    }
    if u.coeffs.iter().any(|c| c.uses(Var::X)) {
        return Err(Error::invalid("power_x needs a series free of x"));
    }
    let order = u.order();
    let mut fact = vec![BigInt::one()];
    for n in 1..=order {
        let next = &fact[n - 1] * BigInt::from(n);
        fact.push(next);
    }
    let c: Vec<RatPoly> = (0..=order)
        .map(|n| RatPoly::new(u.coeffs[n].clone(), fact[n].clone()))
        .collect::<Result<_>>()?;

    // n·l_n = n·c_n - Σ_{k=1}^{n-1} k·l_k·c_{n-k}
    let mut l = vec![RatPoly::zero()];
    for n in 1..=order {
        let mut acc = c[n].scale(&BigInt::from(n), &BigInt::one())?;
        for k in 1..n {
            let term = (&l[k] * &c[n - k]).scale(&BigInt::from(k), &BigInt::one())?;
            acc = &acc - &term;
        }
        l.push(acc.scale(&BigInt::one(), &BigInt::from(n))?);
    }

    // m = -x·l, then n·e_n = Σ_{k=1}^{n} k·m_k·e_{n-k}
    let minus_x = -MultiPoly::var(Var::X);
    let m: Vec<RatPoly> = l.iter().map(|lk| lk.mul_poly(&minus_x)).collect();
    let mut e = vec![RatPoly::from(MultiPoly::one())];
    for n in 1..=order {
        let mut acc = RatPoly::zero();
        for k in 1..=n {
            let term = (&m[k] * &e[n - k]).scale(&BigInt::from(k), &BigInt::one())?;
            acc = &acc + &term;
        }
        e.push(acc.scale(&BigInt::one(), &BigInt::from(n))?);
    }

    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(n, en)| {
            en.scale(&fact[n], &BigInt::one())?.into_poly().map_err(|_| {
                Error::inconsistent(format!("power_x: coefficient {n} is not integral"))
            })
        })
        .collect::<Result<_>>()?;
    Ok(QSeries::from_vec(coeffs))
}

/// `1 / (1 - (t + Σ_{n>=1} (x-1)^n mp_n t^{n(j-1)+1} / [n(j-1)+1]_{p,q}!))`
/// truncated at `order`.
///
/// `mp[n - 1]` is the packing polynomial for `n` matches, i.e. of length
/// `n(j-1)+1`; entries beyond `order` are ignored, missing ones are an error.
pub fn packing_series(j: usize, mp: &[MultiPoly], order: usize) -> Result<QSeries<PqFactorial>> {
    if j < 2 {
        return Err(Error::invalid(format!("packing_series needs j >= 2, got {j}")));
    }
    let mut d = vec![MultiPoly::zero(); order + 1];
    d[0] = MultiPoly::one();
    if order >= 1 {
        d[1] = -MultiPoly::one();
    }
    let x_minus_one = MultiPoly::var(Var::X) - MultiPoly::one();
    for n in 1.. {
        let len = n * (j - 1) + 1;
        if len > order {
            break;
        }
        let poly = mp.get(n - 1).ok_or_else(|| {
            Error::invalid(format!("packing_series needs mp for {n} matches (length {len})"))
        })?;
        d[len] -= &(&x_minus_one.pow(n as u32) * poly);
    }
    QSeries::<PqFactorial>::from_vec(d).reciprocal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::RankRange;
    use crate::qpoly::{binomial_int, pq_binomial, q_binomial};
    use proptest::prelude::*;

    fn set(p: &str) -> PatternSet {
        PatternSet::single(p.parse().unwrap()).unwrap()
    }

    fn poly(terms: &[(i64, &[(Var, u32)])]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for &(c, vs) in terms {
            let mut e = [0u32; 5];
            for &(v, k) in vs {
                e[v as usize] = k;
            }
            out.add_term(Monomial(e), BigInt::from(c));
        }
        out
    }

    #[test]
    fn conv_tables_match_closed_binomials() {
        let plain = Plain::conv_table(9);
        let q = QFactorial::conv_table(9);
        let pq = PqFactorial::conv_table(9);
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(plain[n][k], MultiPoly::constant(binomial_int(n, k)));
                assert_eq!(q[n][k], q_binomial(n, k).unwrap());
                assert_eq!(pq[n][k], pq_binomial(n, k).unwrap());
            }
        }
    }

    #[test]
    fn inm_small_orders() {
        let budget = Budget::default();
        let inm = brute_inm(&set("13254"), 4, &budget).unwrap();
        assert!(inm.coeff(0).is_one());
        assert_eq!(inm.coeff(1), &MultiPoly::var(Var::Z));
        assert_eq!(inm.coeff(2), &poly(&[(1, &[(Var::Z, 1)]), (1, &[(Var::Z, 2), (Var::Q, 1)])]));
        // Below the pattern length nothing is avoided.
        for n in 3..=4 {
            let mut full = MultiPoly::zero();
            RankRange::full(n).for_each(|s| {
                full += &poly(&[(1, &[(Var::Z, perm::des(s) as u32 + 1), (Var::Q, perm::inv(s) as u32)])]);
            });
            assert_eq!(inm.coeff(n), &full);
        }
    }

    #[test]
    fn nm_xy_for_132() {
        let nm = brute_nm_xy(&set("132"), 3, &Budget::default()).unwrap();
        assert!(nm.coeff(0).is_one());
        assert_eq!(nm.coeff(1), &poly(&[(1, &[(Var::X, 1), (Var::Y, 1)])]));
        // 123, then 213 231 312, then 321.
        let expected = poly(&[
            (1, &[(Var::X, 1), (Var::Y, 1)]),
            (3, &[(Var::X, 2), (Var::Y, 2)]),
            (1, &[(Var::X, 3), (Var::Y, 3)]),
        ]);
        assert_eq!(nm.coeff(3), &expected);
    }

    #[test]
    fn budget_is_enforced() {
        let err = brute_inm(&set("132"), 12, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::Budget { needed: 12, limit: 10, .. }));
    }

    #[test]
    fn reciprocal_basics() {
        let one = QSeries::<PqFactorial>::one(6);
        assert_eq!(one.reciprocal().unwrap(), one);
        let bad = QSeries::<Plain>::new(vec![MultiPoly::constant(2)]).unwrap();
        assert!(bad.reciprocal().is_err());

        let iu = brute_inm(&set("14253"), 4, &Budget::default()).unwrap().reciprocal().unwrap();
        let z = MultiPoly::var(Var::Z);
        assert_eq!(iu.coeff(1), &-z.clone());
        assert_eq!(iu.coeff(2), &(&z * &z - z.clone()));
        assert_eq!(iu.coeff(2), &(&(MultiPoly::one() - z.clone()) * &-z));
    }

    #[test]
    fn reciprocal_is_inverse_under_mul() {
        let inm = brute_inm(&set("1324"), 7, &Budget::default()).unwrap();
        let iu = inm.reciprocal().unwrap();
        assert_eq!(inm.mul(&iu), QSeries::one(7));
    }

    #[test]
    fn normalizations_agree_at_q_one() {
        let budget = Budget::default();
        for tau in ["1324", "132", "2143"] {
            let iu = brute_inm(&set(tau), 7, &budget).unwrap().reciprocal().unwrap().at_q_one();
            let nm1 = brute_nm_xy(&set(tau), 7, &budget)
                .unwrap()
                .substitute(&Bindings::new().value(Var::X, 1).rename(Var::Y, Var::Z))
                .unwrap();
            assert_eq!(iu, nm1.reciprocal().unwrap(), "{tau}");
        }
    }

    #[test]
    fn substitute_refuses_q_and_p() {
        let s = QSeries::<QFactorial>::one(2);
        assert!(s.substitute(&Bindings::new().value(Var::Q, 1)).is_err());
        assert!(s.substitute(&Bindings::new().value(Var::Z, 1)).is_ok());
    }

    #[test]
    fn power_x_trivial_cases() {
        let nm = power_x(&QSeries::one(5)).unwrap();
        assert_eq!(nm, QSeries::one(5));
        let u = brute_nm_xy(&set("1423"), 3, &Budget::default())
            .unwrap()
            .substitute(&Bindings::new().value(Var::X, 1))
            .unwrap()
            .reciprocal()
            .unwrap();
        let nm = power_x(&u).unwrap();
        assert_eq!(nm.coeff(1), &poly(&[(1, &[(Var::X, 1), (Var::Y, 1)])]));
    }

    #[test]
    fn power_x_recovers_lrmin_refinement() {
        let budget = Budget::default();
        for tau in ["1324", "132", "1423"] {
            let nm = brute_nm_xy(&set(tau), 8, &budget).unwrap();
            let u = nm.substitute(&Bindings::new().value(Var::X, 1)).unwrap().reciprocal().unwrap();
            let got = power_x(&u).unwrap();
            assert_eq!(got, nm, "{tau}");
            let at_one = got.substitute(&Bindings::new().value(Var::X, 1)).unwrap();
            assert_eq!(at_one, u.reciprocal().unwrap());
        }
    }

    #[test]
    fn power_x_rejects_bad_input() {
        assert!(power_x(&QSeries::new(vec![MultiPoly::constant(3)]).unwrap()).is_err());
        let bad = QSeries::<Plain>::new(vec![MultiPoly::one(), MultiPoly::var(Var::X)]).unwrap();
        assert!(power_x(&bad).is_err());
    }

    #[test]
    fn match_distribution_small() {
        let md = match_distribution(&set("132"), 3, &Budget::default()).unwrap();
        assert!(md.coeff(1).is_one());
        let at_one = md.coeff(3).substitute(&Bindings::new().value(Var::P, 1).value(Var::Q, 1));
        assert_eq!(at_one.coefficients_in(Var::X)[&1], MultiPoly::one());
        // Summing out x recovers [3]_{p,q}!.
        let total = md.coeff(3).substitute(&Bindings::new().value(Var::X, 1));
        assert_eq!(total, crate::qpoly::pq_factorial(3));
    }

    #[test]
    fn serializes_with_norm_tag() {
        let s = QSeries::<Plain>::new(vec![MultiPoly::one(), MultiPoly::var(Var::Y)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(r#"{"norm":"plain-factorial","coeffs":["#), "{json}");
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Vec<MultiPoly>> {
        prop::collection::vec(
            prop::collection::vec((0u32..3, 0u32..3, -4i64..5), 0..4),
            order,
        )
        .prop_map(|rows| {
            let mut coeffs = vec![MultiPoly::one()];
            for row in rows {
                let mut c = MultiPoly::zero();
                for (qz, yz, k) in row {
                    let mut e = [0u32; 5];
                    e[Var::Q as usize] = qz;
                    e[Var::Y as usize] = yz;
                    c.add_term(Monomial(e), BigInt::from(k));
                }
                coeffs.push(c);
            }
            coeffs
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn double_reciprocal_plain(coeffs in arb_series(8)) {
            let s = QSeries::<Plain>::new(coeffs).unwrap();
            prop_assert_eq!(s.reciprocal().unwrap().reciprocal().unwrap(), s);
        }

        #[test]
        fn double_reciprocal_q(coeffs in arb_series(7)) {
            let s = QSeries::<QFactorial>::new(coeffs).unwrap();
            prop_assert_eq!(s.reciprocal().unwrap().reciprocal().unwrap(), s);
        }

        #[test]
        fn double_reciprocal_pq(coeffs in arb_series(6)) {
            let s = QSeries::<PqFactorial>::new(coeffs).unwrap();
            prop_assert_eq!(s.reciprocal().unwrap().reciprocal().unwrap(), s);
        }
    }
}
