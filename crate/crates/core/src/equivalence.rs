//! Statistic-refined c-Wilf classification, the match-replacing bijection
//! `φ`, and the `2^n`-element families of equivalent patterns.
//!
//! Classification is exhaustive up to an order `N`; a report saying two
//! patterns share a class means their polynomials agree for every `n ≤ N`
//! and nothing more.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::overlap::{are_mutually_minimal_overlapping_by, is_minimal_overlapping_by, Method};
use crate::perm::{self, par_fold, PatternSet, Permutation};
use crate::qpoly::{MultiPoly, Var};
use crate::qseries::{tally, Plain};

/// A permutation statistic and the variable that records it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Des,
    Inv,
    Lrmin,
}

impl Stat {
    pub fn var(self) -> Var {
        match self {
            Stat::Des => Var::Z,
            Stat::Inv => Var::Q,
            Stat::Lrmin => Var::X,
        }
    }

    fn eval(self, s: &[u32]) -> usize {
        match self {
            Stat::Des => perm::des(s),
            Stat::Inv => perm::inv(s),
            Stat::Lrmin => perm::lrmin(s),
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stat::Des => "des",
            Stat::Inv => "inv",
            Stat::Lrmin => "lrmin",
        })
    }
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "des" => Ok(Stat::Des),
            "inv" => Ok(Stat::Inv),
            "lrmin" => Ok(Stat::Lrmin),
            other => Err(Error::invalid(format!("unknown statistic {other:?}; expected des, inv or lrmin"))),
        }
    }
}

/// Parses a comma-separated profile such as `"des,inv"`.
pub fn parse_profile(s: &str) -> Result<BTreeSet<Stat>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// `Σ Π_stat v^{stat(σ)}` over the `τ`-match-free `σ ∈ S_n`, for
/// `n = 0..=order`.
pub fn avoidance_vector(tau: &Permutation, profile: &BTreeSet<Stat>, order: usize, budget: &Budget) -> Result<Vec<MultiPoly>> {
    let gamma = PatternSet::single(tau.clone())?;
    let stats: Vec<Stat> = profile.iter().copied().collect();
    let series = tally::<Plain, _>("classification order", order, budget, |s| {
        if gamma.has_match(s) {
            return None;
        }
        let mut e = [0u32; 5];
        for &st in &stats {
            e[st.var() as usize] += st.eval(s) as u32;
        }
        Some(e)
    })?;
    Ok(series.into_coeffs())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternVector {
    pub pattern: Permutation,
    pub coeffs: Vec<MultiPoly>,
}

/// Two patterns in different classes and the least `n` telling them apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub left: Permutation,
    pub right: Permutation,
    pub first_difference: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub profile: Vec<Stat>,
    /// Classes are certified for `n ≤ order` only.
    pub order: usize,
    pub vectors: Vec<PatternVector>,
    pub classes: Vec<Vec<Permutation>>,
    pub separations: Vec<Separation>,
}

impl EquivReport {
    pub fn class_of(&self, tau: &Permutation) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(tau))
    }

    pub fn same_class(&self, a: &Permutation, b: &Permutation) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }

    pub fn separation(&self, a: &Permutation, b: &Permutation) -> Option<&Separation> {
        self.separations
            .iter()
            .find(|s| (&s.left == a && &s.right == b) || (&s.left == b && &s.right == a))
    }
}

/// Groups patterns by exact equality of their avoidance polynomials for
/// `n ≤ order`. Patterns are deduplicated and sorted; classes and
/// separations come out in that order.
pub fn classify(patterns: &[Permutation], profile: &BTreeSet<Stat>, order: usize, budget: &Budget) -> Result<EquivReport> {
    let mut patterns = patterns.to_vec();
    patterns.sort();
    patterns.dedup();
    let Some(first) = patterns.first() else {
        return Err(Error::invalid("classify needs at least one pattern"));
    };
    if let Some(p) = patterns.iter().find(|p| p.len() != first.len()) {
        return Err(Error::invalid(format!("{first} and {p} have different lengths")));
    }
    budget.check_len("classification order", order)?;
    let vectors = patterns
        .iter()
        .map(|p| {
            Ok(PatternVector {
                pattern: p.clone(),
                coeffs: avoidance_vector(p, profile, order, budget)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        match classes.iter_mut().find(|c| vectors[c[0]].coeffs == v.coeffs) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let mut separations = Vec::new();
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i + 1..] {
            if let Some(n) = (0..=order).find(|&n| a.coeffs[n] != b.coeffs[n]) {
                separations.push(Separation {
                    left: a.pattern.clone(),
                    right: b.pattern.clone(),
                    first_difference: n,
                });
            }
        }
    }
    Ok(EquivReport {
        profile: profile.iter().copied().collect(),
        order,
        classes: classes
            .into_iter()
            .map(|c| c.into_iter().map(|i| vectors[i].pattern.clone()).collect())
            .collect(),
        vectors,
        separations,
    })
}

/// The replacement map for a pair `(α, β)` satisfying the bijection
/// hypotheses, validated once and applied many times.
#[derive(Debug, Clone)]
pub struct Phi {
    alpha: Permutation,
    beta: Permutation,
    /// 1-based position of `1` in both patterns.
    a: usize,
    gamma: PatternSet,
}

impl Phi {
    /// Checks that `α ≠ β` are mutually minimal overlapping, agree up to
    /// and including their common `1` at position `a`, agree in the last
    /// letter, and have equal `des`.
    pub fn new(alpha: &Permutation, beta: &Permutation) -> Result<Self> {
        let report = are_mutually_minimal_overlapping_by(alpha, beta, Method::PrefixSuffix, &Budget::default())?;
        if !report.verdict {
            return Err(Error::invalid(format!("{alpha} and {beta} are not mutually minimal overlapping")));
        }
        let j = alpha.len();
        let a = alpha.entries().iter().position(|&v| v == 1).unwrap() + 1;
        if a >= j || alpha.entries()[..a] != beta.entries()[..a] {
            return Err(Error::invalid(format!(
                "{alpha} and {beta} must agree up to and including a common 1 before the last position"
            )));
        }
        if alpha.last() != beta.last() {
            return Err(Error::invalid(format!("{alpha} and {beta} end differently")));
        }
        if alpha.des() != beta.des() {
            return Err(Error::invalid(format!("des({alpha}) != des({beta})")));
        }
        Ok(Phi {
            alpha: alpha.clone(),
            beta: beta.clone(),
            a,
            gamma: PatternSet::single(alpha.clone())?,
        })
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    /// The map with the roles of `α` and `β` swapped.
    pub fn inverse(&self) -> Phi {
        Phi {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            a: self.a,
            gamma: PatternSet::single(self.beta.clone()).expect("nonempty pattern"),
        }
    }

    /// Rearranges the letters at window offsets `a..j-1` of every
    /// `α`-match so the window reduces to `β`.
    pub fn apply(&self, sigma: &[u32]) -> Result<Vec<u32>> {
        let j = self.alpha.len();
        let mut starts = Vec::new();
        self.gamma.for_each_match_in(sigma, 0, sigma.len(), |start, _| starts.push(start));
        // Rearranged spans are start+a..start+j-1; consecutive ones must not meet.
        if let Some(w) = starts.windows(2).find(|w| w[0] + j - 1 > w[1] + self.a) {
            return Err(Error::inconsistent(format!(
                "{} matches at {} and {} rearrange overlapping letters",
                self.alpha,
                w[0] + 1,
                w[1] + 1
            )));
        }
        let mut out = sigma.to_vec();
        let mut sorted = vec![0u32; j];
        for &i in &starts {
            sorted.copy_from_slice(&sigma[i..i + j]);
            sorted.sort_unstable();
            for k in self.a..j - 1 {
                out[i + k] = sorted[self.beta.entries()[k] as usize - 1];
            }
        }
        Ok(out)
    }
}

/// `φ_{α,β}(σ)`.
pub fn phi(alpha: &Permutation, beta: &Permutation, sigma: &Permutation) -> Result<Permutation> {
    let out = Phi::new(alpha, beta)?.apply(sigma.entries())?;
    Ok(Permutation::from_vec_unchecked(out))
}

/// Sizes of the four parts of `S_n` by presence of `α`- and `β`-matches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchPartition {
    /// `α`-match, no `β`-match.
    pub a: u64,
    /// `β`-match, no `α`-match.
    pub b: u64,
    /// Both.
    pub c: u64,
    /// Neither.
    pub d: u64,
}

pub fn match_partition(alpha: &Permutation, beta: &Permutation, n: usize, budget: &Budget) -> Result<MatchPartition> {
    budget.check_len("match partition length", n)?;
    let ga = PatternSet::single(alpha.clone())?;
    let gb = PatternSet::single(beta.clone())?;
    Ok(par_fold(
        n,
        MatchPartition::default,
        |acc, s| match (ga.has_match(s), gb.has_match(s)) {
            (true, false) => acc.a += 1,
            (false, true) => acc.b += 1,
            (true, true) => acc.c += 1,
            (false, false) => acc.d += 1,
        },
        |x, y| MatchPartition {
            a: x.a + y.a,
            b: x.b + y.b,
            c: x.c + y.c,
            d: x.d + y.d,
        },
    ))
}

/// Outcome of applying `φ` to every permutation of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub n: usize,
    pub partition: MatchPartition,
    /// `φ(A_n) ⊆ B_n`.
    pub maps_into_b: bool,
    /// `φ_{β,α} ∘ φ_{α,β}` is the identity on `A_n`.
    pub inverse_composes: bool,
    /// `φ_{β,α}(B_n) ⊆ A_n`, so with the line above `φ` is onto.
    pub inverse_maps_into_a: bool,
    pub preserves_des: bool,
    pub preserves_lrmin: bool,
    /// Checked only when `inv(α) = inv(β)`.
    pub preserves_inv: Option<bool>,
    pub fixes_d: bool,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.maps_into_b
            && self.inverse_composes
            && self.inverse_maps_into_a
            && self.partition.a == self.partition.b
            && self.preserves_des
            && self.preserves_lrmin
            && self.preserves_inv != Some(false)
            && self.fixes_d
    }
}

#[derive(Clone, Copy)]
struct PhiTally {
    part: MatchPartition,
    into_b: bool,
    composes: bool,
    into_a: bool,
    des: bool,
    lrmin: bool,
    inv: bool,
    fixes_d: bool,
    inconsistent: bool,
}

impl PhiTally {
    fn new() -> Self {
        PhiTally {
            part: MatchPartition::default(),
            into_b: true,
            composes: true,
            into_a: true,
            des: true,
            lrmin: true,
            inv: true,
            fixes_d: true,
            inconsistent: false,
        }
    }

    fn merge(self, o: PhiTally) -> PhiTally {
        PhiTally {
            part: MatchPartition {
                a: self.part.a + o.part.a,
                b: self.part.b + o.part.b,
                c: self.part.c + o.part.c,
                d: self.part.d + o.part.d,
            },
            into_b: self.into_b && o.into_b,
            composes: self.composes && o.composes,
            into_a: self.into_a && o.into_a,
            des: self.des && o.des,
            lrmin: self.lrmin && o.lrmin,
            inv: self.inv && o.inv,
            fixes_d: self.fixes_d && o.fixes_d,
            inconsistent: self.inconsistent || o.inconsistent,
        }
    }
}

/// Runs `φ` and its inverse over all of `S_n` and checks every claimed
/// property.
pub fn verify_phi(alpha: &Permutation, beta: &Permutation, n: usize, budget: &Budget) -> Result<PhiReport> {
    budget.check_len("bijection check length", n)?;
    let fwd = Phi::new(alpha, beta)?;
    let back = fwd.inverse();
    let ga = PatternSet::single(alpha.clone())?;
    let gb = PatternSet::single(beta.clone())?;
    let t = par_fold(
        n,
        PhiTally::new,
        |acc, s| {
            let (ha, hb) = (ga.has_match(s), gb.has_match(s));
            match (ha, hb) {
                (true, false) => {
                    acc.part.a += 1;
                    let Ok(img) = fwd.apply(s) else {
                        acc.inconsistent = true;
                        return;
                    };
                    acc.into_b &= !ga.has_match(&img) && gb.has_match(&img);
                    acc.composes &= back.apply(&img).is_ok_and(|x| x == s);
                    acc.des &= perm::des(&img) == perm::des(s);
                    acc.lrmin &= perm::lrmin(&img) == perm::lrmin(s);
                    acc.inv &= perm::inv(&img) == perm::inv(s);
                }
                (false, true) => {
                    acc.part.b += 1;
                    match back.apply(s) {
                        Ok(img) => acc.into_a &= ga.has_match(&img) && !gb.has_match(&img),
                        Err(_) => acc.inconsistent = true,
                    }
                }
                (true, true) => acc.part.c += 1,
                (false, false) => {
                    acc.part.d += 1;
                    acc.fixes_d &= fwd.apply(s).is_ok_and(|x| x == s);
                }
            }
        },
        PhiTally::merge,
    );
    if t.inconsistent {
        return Err(Error::inconsistent(format!(
            "rearranged letters of two {alpha}-matches overlapped in S_{n}"
        )));
    }
    Ok(PhiReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        n,
        partition: t.part,
        maps_into_b: t.into_b,
        inverse_composes: t.composes,
        inverse_maps_into_a: t.into_a,
        preserves_des: t.des,
        preserves_lrmin: t.lrmin,
        preserves_inv: (alpha.inv() == beta.inv()).then_some(t.inv),
        fixes_d: t.fixes_d,
    })
}

/// The two block shapes of the family constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// Blocks of three: `t_1(x) = (x+1)(x+2)x`, `t_2(x) = (x+2)x(x+1)`.
    T,
    /// Blocks of four: `s_1(x) = (x+1)(x+2)x(x+3)`, `s_2(x) = x(x+3)(x+1)(x+2)`.
    S,
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(FamilyKind::T),
            "s" => Ok(FamilyKind::S),
            other => Err(Error::invalid(format!("unknown family kind {other:?}; expected t or s"))),
        }
    }
}

/// `1 · b_1(x_1) · ... · b_k(x_k) · 2`, where block `i` starts at
/// `x_i = 3i` (kind t) or `x_i = 4i - 1` (kind s) and `b_i` is shape 1 or
/// 2 as chosen by `variant[i]`.
pub fn family(kind: FamilyKind, blocks: usize, variant: &[u8]) -> Result<Permutation> {
    if blocks == 0 {
        return Err(Error::invalid("a family member needs at least one block"));
    }
    if variant.len() != blocks || variant.iter().any(|&v| v != 1 && v != 2) {
        return Err(Error::invalid(format!(
            "variant must have {blocks} entries, each 1 or 2, got {variant:?}"
        )));
    }
    let (width, shapes): (u32, [&[u32]; 2]) = match kind {
        FamilyKind::T => (3, [&[1, 2, 0], &[2, 0, 1]]),
        FamilyKind::S => (4, [&[1, 2, 0, 3], &[0, 3, 1, 2]]),
    };
    let mut out = vec![1];
    for (i, &v) in variant.iter().enumerate() {
        let x = 3 + width * i as u32;
        out.extend(shapes[v as usize - 1].iter().map(|d| x + d));
    }
    out.push(2);
    Permutation::new(out)
}

/// Every variant of a family, in lexicographic order of the variant word.
pub fn family_members(kind: FamilyKind, blocks: usize) -> Result<Vec<Permutation>> {
    if blocks == 0 || blocks > 16 {
        return Err(Error::invalid("blocks must be between 1 and 16"));
    }
    (0..1u32 << blocks)
        .map(|bits| {
            let v: Vec<u8> = (0..blocks).rev().map(|i| 1 + ((bits >> i) & 1) as u8).collect();
            family(kind, blocks, &v)
        })
        .collect()
}

/// `des`, `inv` and the minimal-overlap flag of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRow {
    pub pattern: Permutation,
    pub des: usize,
    pub inv: usize,
    pub minimal_overlapping: bool,
}

/// Computes a [`PatternRow`] using the definitional overlap scan.
pub fn pattern_row(tau: &Permutation, budget: &Budget) -> Result<PatternRow> {
    Ok(PatternRow {
        pattern: tau.clone(),
        des: tau.des(),
        inv: tau.inv(),
        minimal_overlapping: is_minimal_overlapping_by(tau, Method::DefinitionScan, budget)?.verdict,
    })
}

/// The ten patterns `1 ... 3` / `1 ... 2` of length five tabulated with
/// their descent and inversion counts.
pub const S5_TABLE_PATTERNS: [&str; 10] = [
    "12453", "12543", "14253", "15243", "13452", "13542", "14352", "14532", "15342", "15432",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn profile(s: &str) -> BTreeSet<Stat> {
        parse_profile(s).unwrap()
    }

    #[test]
    fn family_examples() {
        assert_eq!(family(FamilyKind::T, 1, &[1]).unwrap(), p("14532"));
        assert_eq!(family(FamilyKind::T, 1, &[2]).unwrap(), p("15342"));
        assert_eq!(family(FamilyKind::T, 2, &[1, 2]).unwrap(), p("14538672"));
        assert_eq!(family(FamilyKind::S, 1, &[1]).unwrap(), p("145362"));
        assert_eq!(family(FamilyKind::S, 1, &[2]).unwrap(), p("136452"));
        assert!(family(FamilyKind::T, 0, &[]).is_err());
        assert!(family(FamilyKind::T, 2, &[1]).is_err());
        assert!(family(FamilyKind::T, 1, &[3]).is_err());
        assert_eq!(family_members(FamilyKind::T, 2).unwrap().len(), 4);
    }

    #[test]
    fn family_members_share_statistics_and_overlap() {
        let budget = Budget::default();
        for kind in [FamilyKind::T, FamilyKind::S] {
            for k in 1..=3 {
                let members = family_members(kind, k).unwrap();
                let (d, i) = (members[0].des(), members[0].inv());
                for m in &members {
                    assert_eq!((m.first(), m.last()), (Some(1), Some(2)));
                    assert_eq!((m.des(), m.inv()), (d, i), "{m}");
                    assert!(is_minimal_overlapping_by(m, Method::PrefixSuffix, &budget).unwrap().verdict);
                }
            }
        }
    }

    #[test]
    fn phi_small_cases() {
        let (a, b) = (p("14532"), p("15342"));
        assert_eq!(phi(&a, &b, &a).unwrap(), b);
        assert_eq!(phi(&b, &a, &b).unwrap(), a);
        let id = Permutation::identity(7);
        assert_eq!(phi(&a, &b, &id).unwrap(), id);
        // Two matches sharing the letter 2.
        let s = p("167528943");
        let img = phi(&a, &b, &s).unwrap();
        assert_eq!(img, p("175629483"));
        assert_eq!(phi(&b, &a, &img).unwrap(), s);
    }

    #[test]
    fn phi_rejects_bad_pairs() {
        let s = p("12345");
        assert!(phi(&p("14532"), &p("14532"), &s).is_err());
        assert!(phi(&p("13542"), &p("15342"), &s).is_ok());
        // Different last letter.
        assert!(phi(&p("13452"), &p("14253"), &s).is_err());
        // Not minimal overlapping.
        assert!(phi(&p("14253"), &p("15243"), &s).is_err());
        // Different descent counts.
        assert!(phi(&p("13452"), &p("15432"), &s).is_err());
    }

    #[test]
    fn phi_bijection_small() {
        let budget = Budget::default();
        for n in 1..=7 {
            let r = verify_phi(&p("14532"), &p("15342"), n, &budget).unwrap();
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.preserves_inv, Some(true));
            let m = match_partition(&p("14532"), &p("15342"), n, &budget).unwrap();
            assert_eq!(m, r.partition);
        }
    }

    #[test]
    fn classify_basics() {
        let budget = Budget::default();
        let single = classify(&[p("132")], &profile("des"), 6, &budget).unwrap();
        assert_eq!(single.classes, vec![vec![p("132")]]);
        assert!(single.separations.is_empty());
        // Both avoid 5 of the 6 permutations of length 3; they split at 4.
        let r = classify(&[p("123"), p("132")], &profile(""), 6, &budget).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.separation(&p("123"), &p("132")).unwrap().first_difference, 4);
        assert!(classify(&[p("123"), p("1324")], &profile("des"), 5, &budget).is_err());
        assert!(classify(&[p("123")], &profile("des"), 11, &budget).is_err());
        assert!(parse_profile("des,foo").is_err());
    }

    #[test]
    fn avoidance_vector_counts() {
        // Permutations avoiding a consecutive 123: 1, 1, 2, 5, 17, 70, 349.
        let v = avoidance_vector(&p("123"), &BTreeSet::new(), 6, &Budget::default()).unwrap();
        let counts: Vec<i64> = v.iter().map(|c| c.eval([1; 5]).try_into().unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 17, 70, 349]);
    }
}
