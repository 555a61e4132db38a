//! Filled, labelled brick tabloids and the sign-reversing involution `J_Γ`.
//!
//! An object is a pair `(B, σ)`: a composition `B` of `n` into bricks and
//! a permutation `σ ∈ S_n` with no `Γ`-match inside a single brick. Labels
//! are never stored. A cell carries `z` when it is an internal descent of its
//! brick and `-z` when it ends a brick, so both follow from `(B, σ)`.
//!
//! `Σ sgn(O) W(O)` over all objects of size `n` equals `IU_{Γ,n}(q,z)`, and
//! the involution cancels everything except its fixed points.

use std::ops::Range;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::perm::{self, PatternSet, Permutation, RankRange};
use crate::qpoly::{Monomial, MultiPoly, Var};

/// A composition `(b_1, ..., b_ℓ)` of `n`, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BrickTabloid {
    bricks: Vec<usize>,
}

impl BrickTabloid {
    pub fn new(bricks: Vec<usize>) -> Result<Self> {
        if bricks.contains(&0) {
            return Err(Error::invalid("bricks must have length >= 1"));
        }
        Ok(BrickTabloid { bricks })
    }

    pub fn bricks(&self) -> &[usize] {
        &self.bricks
    }

    /// `ℓ`, the number of bricks.
    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.bricks.iter().sum()
    }

    /// The brick lengths sorted decreasingly.
    pub fn partition(&self) -> Vec<usize> {
        let mut p = self.bricks.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// 0-based half-open cell ranges of the bricks.
    pub fn ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.bricks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }
}

/// Number of brick tabloids of shape `(n)` whose brick lengths form `λ`,
/// i.e. distinct orderings of the parts.
pub fn count_brick_tabloids(lambda: &[usize], n: usize) -> Result<u64> {
    if lambda.contains(&0) || lambda.iter().sum::<usize>() != n {
        return Err(Error::invalid(format!("{lambda:?} is not a partition of {n}")));
    }
    let mut parts: Vec<u32> = lambda.iter().map(|&b| b as u32).collect();
    parts.sort_unstable();
    let mut count = 1;
    while perm::next_permutation(&mut parts) {
        count += 1;
    }
    Ok(count)
}

/// All compositions of `n` in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for b in 1..=rest {
            cur.push(b);
            rec(rest - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    None,
    Z,
    NegZ,
}

/// A pair `(B, σ)` in the object space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FilledTabloid {
    pub tabloid: BrickTabloid,
    pub sigma: Permutation,
}

fn brick_free(gamma: &PatternSet, s: &[u32], bricks: &[usize]) -> bool {
    let mut start = 0;
    for &b in bricks {
        if gamma.has_match_in(s, start, start + b) {
            return false;
        }
        start += b;
    }
    true
}

impl FilledTabloid {
    /// Checks that the bricks cover `σ` and that no brick contains a match.
    pub fn new(gamma: &PatternSet, bricks: Vec<usize>, sigma: Permutation) -> Result<Self> {
        let tabloid = BrickTabloid::new(bricks)?;
        if tabloid.n() != sigma.len() {
            return Err(Error::invalid(format!(
                "bricks cover {} cells but {sigma} has length {}",
                tabloid.n(),
                sigma.len()
            )));
        }
        if !brick_free(gamma, sigma.entries(), tabloid.bricks()) {
            return Err(Error::invalid(format!("{sigma} has a match inside a brick of {:?}", tabloid.bricks())));
        }
        Ok(FilledTabloid { tabloid, sigma })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Per-cell labels: `z` on internal descents, `-z` on brick ends.
    pub fn labels(&self) -> Vec<Label> {
        let s = self.sigma.entries();
        let mut out = vec![Label::None; s.len()];
        for r in self.tabloid.ranges() {
            for c in r.start..r.end - 1 {
                if s[c] > s[c + 1] {
                    out[c] = Label::Z;
                }
            }
            out[r.end - 1] = Label::NegZ;
        }
        out
    }

    /// `(-1)^ℓ`.
    pub fn sign(&self) -> i32 {
        if self.tabloid.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `q^{inv σ}` times one `z` per labelled cell; the signs of the `-z`
    /// labels live in [`FilledTabloid::sign`].
    pub fn weight(&self) -> MultiPoly {
        let labelled = self.labels().iter().filter(|&&l| l != Label::None).count();
        let mut e = [0u32; 5];
        e[Var::Q as usize] = self.sigma.inv() as u32;
        e[Var::Z as usize] = labelled as u32;
        MultiPoly::term(Monomial(e), 1)
    }

    pub fn signed_weight(&self) -> MultiPoly {
        let w = self.weight();
        if self.sign() < 0 {
            -w
        } else {
            w
        }
    }
}

/// The brick index of every cell.
fn brick_of(bricks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(bricks.iter().sum());
    for (i, &b) in bricks.iter().enumerate() {
        out.extend(std::iter::repeat_n(i, b));
    }
    out
}

/// Whether some match lies in cells `lo..hi` and ends at or before cell
/// `last` (all 0-based).
fn match_in_ending_by(gamma: &PatternSet, s: &[u32], lo: usize, hi: usize, last: usize) -> bool {
    let mut found = false;
    gamma.for_each_match_in(s, lo, hi, |start, len| {
        if start + len - 1 <= last {
            found = true;
        }
    });
    found
}

/// `J_Γ`. Scans cells left to right for the first cell that can split a
/// brick (Case I) or merge two (Case II) and applies that move; objects
/// with no such cell are fixed.
pub fn involution_j(gamma: &PatternSet, o: &FilledTabloid) -> FilledTabloid {
    let s = o.sigma.entries();
    let bricks = o.tabloid.bricks();
    let ranges = o.tabloid.ranges();
    let owner = brick_of(bricks);
    for c in 0..s.len() {
        let j = owner[c];
        let r = &ranges[j];
        let is_last = c + 1 == r.end;
        if !is_last {
            if s[c] < s[c + 1] {
                continue;
            }
            // Case I: `c` carries a z label.
            let splits = j == 0 || {
                let prev = &ranges[j - 1];
                let (last_prev, first) = (s[prev.end - 1], s[r.start]);
                last_prev < first || match_in_ending_by(gamma, s, prev.start, r.end, c)
            };
            if splits {
                let mut nb = bricks.to_vec();
                let left = c + 1 - r.start;
                nb[j] = left;
                nb.insert(j + 1, r.end - (c + 1));
                return FilledTabloid {
                    tabloid: BrickTabloid { bricks: nb },
                    sigma: o.sigma.clone(),
                };
            }
        } else if j + 1 < bricks.len() && s[c] > s[c + 1] {
            // Case II: a descent across the boundary with no match in the union.
            let next = &ranges[j + 1];
            if !gamma.has_match_in(s, r.start, next.end) {
                let mut nb = bricks.to_vec();
                nb[j] += nb[j + 1];
                nb.remove(j + 1);
                return FilledTabloid {
                    tabloid: BrickTabloid { bricks: nb },
                    sigma: o.sigma.clone(),
                };
            }
        }
    }
    o.clone()
}

fn check_object_budget(n: usize, budget: &Budget) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("objects need n >= 1"));
    }
    budget.check_tabloid_len("tabloid object size", n)
}

/// Visits every object of size `n`: compositions in lexicographic order,
/// and for each one the permutations of `S_n` in lexicographic order.
pub fn for_each_object(gamma: &PatternSet, n: usize, budget: &Budget, mut f: impl FnMut(&[usize], &[u32])) -> Result<()> {
    check_object_budget(n, budget)?;
    for b in compositions(n) {
        RankRange::full(n).for_each(|s| {
            if brick_free(gamma, s, &b) {
                f(&b, s);
            }
        });
    }
    Ok(())
}

/// All objects of size `n`, in the order of [`for_each_object`].
pub fn enumerate_objects(gamma: &PatternSet, n: usize, budget: &Budget) -> Result<Vec<FilledTabloid>> {
    let mut out = Vec::new();
    for_each_object(gamma, n, budget, |b, s| {
        out.push(FilledTabloid {
            tabloid: BrickTabloid { bricks: b.to_vec() },
            sigma: Permutation::from_vec_unchecked(s.to_vec()),
        })
    })?;
    Ok(out)
}

/// Runs `f` over each composition's objects in parallel and merges with
/// `combine`; the result does not depend on the thread count as long as
/// `combine` is associative and commutative.
fn par_over_objects<A, I, F, C>(gamma: &PatternSet, n: usize, budget: &Budget, identity: I, fold: F, combine: C) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, FilledTabloid) + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    check_object_budget(n, budget)?;
    Ok(compositions(n)
        .into_par_iter()
        .map(|b| {
            let mut acc = identity();
            RankRange::full(n).for_each(|s| {
                if brick_free(gamma, s, &b) {
                    fold(
                        &mut acc,
                        FilledTabloid {
                            tabloid: BrickTabloid { bricks: b.clone() },
                            sigma: Permutation::from_vec_unchecked(s.to_vec()),
                        },
                    );
                }
            });
            acc
        })
        .reduce(&identity, &combine))
}

/// The fixed points of `J_Γ` of size `n`, sorted.
pub fn fixed_points(gamma: &PatternSet, n: usize, budget: &Budget) -> Result<Vec<FilledTabloid>> {
    let mut out = par_over_objects(
        gamma,
        n,
        budget,
        Vec::new,
        |acc, o| {
            if involution_j(gamma, &o) == o {
                acc.push(o);
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    out.sort();
    Ok(out)
}

/// `Σ sgn(O) W(O)` over the given objects.
pub fn signed_sum<'a>(objs: impl IntoIterator<Item = &'a FilledTabloid>) -> MultiPoly {
    let mut total = MultiPoly::zero();
    for o in objs {
        total += &o.signed_weight();
    }
    total
}

/// Whether every descent of every pattern in `Γ` has bottom `2, 3, ...`
/// from left to right, the condition under which brick-first elements of
/// fixed points increase.
pub fn descent_bottoms_hypothesis(gamma: &PatternSet) -> bool {
    gamma.patterns().iter().all(|tau| {
        let e = tau.entries();
        e.windows(2)
            .filter(|w| w[0] > w[1])
            .map(|w| w[1])
            .zip(2u32..)
            .all(|(bottom, want)| bottom == want)
    })
}

/// Which of the three fixed-point properties an object satisfies. The
/// third is `None` when `Γ` does not meet its hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedPointProperties {
    pub increasing_after_ascent: bool,
    pub match_after_descent: bool,
    pub firsts_increasing: Option<bool>,
}

impl FixedPointProperties {
    pub fn all_hold(&self) -> bool {
        self.increasing_after_ascent && self.match_after_descent && self.firsts_increasing != Some(false)
    }
}

/// Evaluates the fixed-point properties on `o`:
///
/// 1. a brick that is first, or follows an ascent across its left
///    boundary, has no `z` label;
/// 2. after a descent `σ_e > σ_{e+1}` across a boundary, some match inside
///    the two bricks uses cells `e` and `e+1`, and the right brick has at
///    most `k - 1` `z` labels, `k` the largest `des` in `Γ`;
/// 3. brick-first entries increase (only checked under
///    [`descent_bottoms_hypothesis`]).
pub fn fixed_point_properties(gamma: &PatternSet, o: &FilledTabloid) -> FixedPointProperties {
    let s = o.sigma.entries();
    let ranges = o.tabloid.ranges();
    let labels = o.labels();
    let k = gamma.patterns().iter().map(Permutation::des).max().unwrap_or(0);
    let z_in = |r: &Range<usize>| labels[r.clone()].iter().filter(|&&l| l == Label::Z).count();
    let mut p1 = true;
    let mut p2 = true;
    for (i, r) in ranges.iter().enumerate() {
        let ascent_before = i == 0 || s[ranges[i - 1].end - 1] < s[r.start];
        if ascent_before {
            p1 &= z_in(r) == 0;
        } else {
            let prev = &ranges[i - 1];
            let e = r.start - 1;
            let mut uses_boundary = false;
            gamma.for_each_match_in(s, prev.start, r.end, |start, len| {
                if start <= e && e + 1 < start + len {
                    uses_boundary = true;
                }
            });
            p2 &= uses_boundary && z_in(r) < k.max(1);
        }
    }
    let p3 = descent_bottoms_hypothesis(gamma)
        .then(|| ranges.windows(2).all(|w| s[w[0].start] < s[w[1].start]));
    FixedPointProperties {
        increasing_after_ascent: p1,
        match_after_descent: p2,
        firsts_increasing: p3,
    }
}

/// Outcome of the exhaustive involution check on `O_{Γ,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub n: usize,
    pub objects: u64,
    pub fixed_points: u64,
    pub two_cycles: u64,
    /// `J(J(O)) = O` everywhere.
    pub involutive: bool,
    /// Off fixed points, `J` flips the sign and keeps the weight.
    pub sign_reversing_weight_preserving: bool,
    /// `J(O)` is again a valid object.
    pub closed: bool,
    pub total_sum: MultiPoly,
    pub fixed_sum: MultiPoly,
    /// Fixed points violating property 1 or 2.
    pub property_failures: u64,
    /// Fixed points violating property 3, when `Γ` meets its hypothesis.
    pub ordering_failures: Option<u64>,
}

impl InvolutionReport {
    pub fn ok(&self) -> bool {
        self.involutive
            && self.sign_reversing_weight_preserving
            && self.closed
            && self.total_sum == self.fixed_sum
            && self.objects == self.fixed_points + 2 * self.two_cycles
            && self.property_failures == 0
            && self.ordering_failures.unwrap_or(0) == 0
    }
}

#[derive(Default)]
struct Tally {
    objects: u64,
    fixed: u64,
    moved: u64,
    involutive: bool,
    reversing: bool,
    closed: bool,
    total: MultiPoly,
    fixed_sum: MultiPoly,
    property_failures: u64,
    ordering_failures: u64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            involutive: true,
            reversing: true,
            closed: true,
            ..Tally::default()
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.objects += o.objects;
        self.fixed += o.fixed;
        self.moved += o.moved;
        self.involutive &= o.involutive;
        self.reversing &= o.reversing;
        self.closed &= o.closed;
        self.total += &o.total;
        self.fixed_sum += &o.fixed_sum;
        self.property_failures += o.property_failures;
        self.ordering_failures += o.ordering_failures;
        self
    }
}

/// Applies `J_Γ` to every object of size `n` and checks the involution,
/// sign and weight properties, the cancellation of the signed sum, and the
/// fixed-point properties.
pub fn verify_involution(gamma: &PatternSet, n: usize, budget: &Budget) -> Result<InvolutionReport> {
    let has_hyp = descent_bottoms_hypothesis(gamma);
    // Weights are tallied as exponent counts and turned into polynomials once.
    let t = par_over_objects(
        gamma,
        n,
        budget,
        Tally::new,
        |acc, o| {
            acc.objects += 1;
            let sw = o.signed_weight();
            acc.total += &sw;
            let image = involution_j(gamma, &o);
            if image == o {
                acc.fixed += 1;
                acc.fixed_sum += &sw;
                let props = fixed_point_properties(gamma, &o);
                if !(props.increasing_after_ascent && props.match_after_descent) {
                    acc.property_failures += 1;
                }
                if props.firsts_increasing == Some(false) {
                    acc.ordering_failures += 1;
                }
            } else {
                acc.moved += 1;
                acc.closed &= brick_free(gamma, image.sigma.entries(), image.tabloid.bricks());
                acc.involutive &= involution_j(gamma, &image) == o;
                acc.reversing &= image.sign() == -o.sign() && image.weight() == o.weight();
            }
        },
        Tally::merge,
    )?;
    Ok(InvolutionReport {
        n,
        objects: t.objects,
        fixed_points: t.fixed,
        two_cycles: t.moved / 2,
        involutive: t.involutive && t.moved % 2 == 0,
        sign_reversing_weight_preserving: t.reversing,
        closed: t.closed,
        total_sum: t.total,
        fixed_sum: t.fixed_sum,
        property_failures: t.property_failures,
        ordering_failures: has_hyp.then_some(t.ordering_failures),
    })
}

/// `(B, σ)` assembled from an ordered set partition and one reduced
/// filling per brick: brick `i` holds the entries of `parts[i]` arranged
/// like `fillings[i]`.
pub fn assemble(gamma: &PatternSet, parts: &[Vec<u32>], fillings: &[Permutation]) -> Result<FilledTabloid> {
    if parts.len() != fillings.len() {
        return Err(Error::invalid("need one filling per block"));
    }
    let mut sigma = Vec::new();
    let mut bricks = Vec::new();
    for (block, fill) in parts.iter().zip(fillings) {
        if block.len() != fill.len() {
            return Err(Error::invalid(format!("block {block:?} does not fit filling {fill}")));
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        sigma.extend(fill.entries().iter().map(|&v| sorted[v as usize - 1]));
        bricks.push(block.len());
    }
    FilledTabloid::new(gamma, bricks, Permutation::new(sigma)?)
}

/// `Σ sgn·W` over all objects without materialising them.
pub fn object_sum(gamma: &PatternSet, n: usize, budget: &Budget) -> Result<MultiPoly> {
    let counts = par_over_objects(
        gamma,
        n,
        budget,
        std::collections::HashMap::<(u32, u32, bool), i64>::new,
        |acc, o| {
            let inv = o.sigma.inv() as u32;
            let z = o.labels().iter().filter(|&&l| l != Label::None).count() as u32;
            *acc.entry((inv, z, o.sign() < 0)).or_default() += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    )?;
    let mut out = MultiPoly::zero();
    for ((inv, z, neg), c) in counts {
        let mut e = [0u32; 5];
        e[Var::Q as usize] = inv;
        e[Var::Z as usize] = z;
        out.add_term(Monomial(e), BigInt::from(if neg { -c } else { c }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::brute_inm;

    fn set(ps: &[&str]) -> PatternSet {
        PatternSet::new(ps.iter().map(|p| p.parse().unwrap())).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn brick_tabloid_counts() {
        assert_eq!(count_brick_tabloids(&[2, 2, 1, 1], 6).unwrap(), 6);
        for n in 1..7 {
            assert_eq!(count_brick_tabloids(&[n], n).unwrap(), 1);
            assert_eq!(count_brick_tabloids(&vec![1; n], n).unwrap(), 1);
        }
        assert!(count_brick_tabloids(&[2, 2], 5).is_err());
        assert!(count_brick_tabloids(&[2, 0, 3], 5).is_err());
        // Over all partitions the counts add up to the 2^(n-1) compositions.
        let by_shape = compositions(7).iter().fold(std::collections::BTreeMap::new(), |mut m, c| {
            *m.entry(BrickTabloid::new(c.clone()).unwrap().partition()).or_insert(0u64) += 1;
            m
        });
        for (lambda, count) in by_shape {
            assert_eq!(count_brick_tabloids(&lambda, 7).unwrap(), count);
        }
        assert_eq!(compositions(7).len(), 64);
    }

    #[test]
    fn construction_example() {
        let gamma = set(&["1324", "1423", "12345"]);
        let parts = vec![
            vec![2, 5, 6, 9, 11, 15, 16, 17, 19],
            vec![7, 8, 14],
            vec![1, 3, 10, 13, 18],
            vec![4, 12],
        ];
        let fillings = [p("124653798"), p("132"), p("51243"), p("21")];
        for f in &fillings {
            assert!(!gamma.has_match(f.entries()));
        }
        let o = assemble(&gamma, &parts, &fillings).unwrap();
        assert_eq!(o.n(), 19);
        assert_eq!(o.tabloid.bricks(), &[9, 3, 5, 2]);
        let mut e = [0u32; 5];
        e[Var::Z as usize] = 11;
        e[Var::Q as usize] = 84;
        assert_eq!(o.weight(), MultiPoly::term(Monomial(e), 1));
        assert_eq!(o.sign(), 1);
    }

    #[test]
    fn single_increasing_brick() {
        let gamma = set(&["132"]);
        let o = FilledTabloid::new(&gamma, vec![4], Permutation::identity(4)).unwrap();
        assert_eq!(o.sign(), -1);
        assert_eq!(o.weight(), MultiPoly::var(Var::Z));
        assert_eq!(involution_j(&gamma, &o), o);
        assert!(FilledTabloid::new(&gamma, vec![3], p("132")).is_err());
        assert!(FilledTabloid::new(&gamma, vec![1, 2], p("132")).is_ok());
    }

    #[test]
    fn first_brick_z_splits_at_leftmost() {
        let gamma = set(&["1324"]);
        let o = FilledTabloid::new(&gamma, vec![5], p("21543")).unwrap();
        let image = involution_j(&gamma, &o);
        assert_eq!(image.tabloid.bricks(), &[1, 4]);
        assert_eq!(involution_j(&gamma, &image), o);
    }

    #[test]
    fn objects_sum_to_iu() {
        let budget = Budget::default();
        for (g, nmax) in [(vec!["1324"], 6), (vec!["13542"], 6), (vec!["14532", "15342"], 6)] {
            let gamma = set(&g);
            let iu = brute_inm(&gamma, nmax, &budget).unwrap().reciprocal().unwrap();
            for n in 1..=nmax {
                let all = enumerate_objects(&gamma, n, &budget).unwrap();
                assert_eq!(signed_sum(&all), iu.coeff(n).clone(), "{g:?} n={n}");
                assert_eq!(object_sum(&gamma, n, &budget).unwrap(), *iu.coeff(n));
                let fixed = fixed_points(&gamma, n, &budget).unwrap();
                assert_eq!(signed_sum(&fixed), iu.coeff(n).clone(), "{g:?} n={n}");
            }
        }
    }

    #[test]
    fn involution_checks_small() {
        let budget = Budget::default();
        let gamma = set(&["1324"]);
        for n in 1..=6 {
            let r = verify_involution(&gamma, n, &budget).unwrap();
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.ordering_failures, Some(0));
        }
    }

    #[test]
    fn descent_bottom_hypothesis() {
        assert!(descent_bottoms_hypothesis(&set(&["1324"])));
        assert!(!descent_bottoms_hypothesis(&set(&["13542"])));
        assert!(!descent_bottoms_hypothesis(&set(&["15342"])));
        assert!(descent_bottoms_hypothesis(&set(&["1324", "1423", "12345"])));
    }

    #[test]
    fn budget_refuses_large_objects() {
        assert!(matches!(
            fixed_points(&set(&["132"]), 9, &Budget::default()),
            Err(Error::Budget { needed: 9, limit: 8, .. })
        ));
    }
}
