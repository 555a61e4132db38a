//! Minimal-overlap predicates and maximum packings.
//!
//! Each predicate has two routes. The definitional scan enumerates `S_i`
//! for `i < 2j - 1` looking for a forbidden pair of matches; the fast path
//! compares reduced prefixes with reduced suffixes. The fast path is only
//! trusted because the two are checked against each other exhaustively for
//! small `j` (see [`scan_table`] and [`mutual_scan_table`]).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::perm::{self, factorial, par_find_first, par_fold, rank, unrank, PatternSet, Permutation};
use crate::qpoly::{pq_binomial, Monomial, MultiPoly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DefinitionScan,
    #[serde(rename = "prefix-suffix-criterion")]
    PrefixSuffix,
}

/// Result of an overlap check. When `verdict` is false, `witness` holds a
/// permutation with the forbidden pair of matches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub patterns: Vec<Permutation>,
    pub verdict: bool,
    pub witness: Option<Permutation>,
    pub method: Method,
}

fn check_len_at_least_3(tau: &Permutation) -> Result<usize> {
    let j = tau.len();
    if j < 3 {
        return Err(Error::invalid(format!(
            "minimal overlap is defined for patterns of length >= 3, got {tau}"
        )));
    }
    Ok(j)
}

/// Uses the definitional scan when `S_{2j-2}` fits the budget, the
/// prefix/suffix criterion otherwise.
pub fn is_minimal_overlapping(tau: &Permutation, budget: &Budget) -> Result<OverlapReport> {
    let j = check_len_at_least_3(tau)?;
    let method = if 2 * j - 2 <= budget.max_len {
        Method::DefinitionScan
    } else {
        Method::PrefixSuffix
    };
    is_minimal_overlapping_by(tau, method, budget)
}

pub fn is_minimal_overlapping_by(tau: &Permutation, method: Method, budget: &Budget) -> Result<OverlapReport> {
    let j = check_len_at_least_3(tau)?;
    let witness = match method {
        Method::DefinitionScan => {
            budget.check_len("minimal overlap scan length 2j-2", 2 * j - 2)?;
            let set = PatternSet::single(tau.clone())?;
            (j + 1..=2 * j - 2)
                .find_map(|i| par_find_first(i, |s| set.count_matches(s) >= 2))
                .map(Permutation::from_vec_unchecked)
        }
        Method::PrefixSuffix => (2..j)
            .find(|&i| tau.suffix(i) == tau.prefix(i))
            .map(|i| amalgamate(tau, tau, i)),
    };
    Ok(OverlapReport {
        patterns: vec![tau.clone()],
        verdict: witness.is_none(),
        witness,
        method,
    })
}

/// Whether `α` and `β` cannot both match inside any permutation shorter
/// than `2j - 1`. Both must be minimal overlapping and distinct.
pub fn are_mutually_minimal_overlapping(alpha: &Permutation, beta: &Permutation, budget: &Budget) -> Result<OverlapReport> {
    let j = check_len_at_least_3(alpha)?;
    let method = if 2 * j - 2 <= budget.max_len {
        Method::DefinitionScan
    } else {
        Method::PrefixSuffix
    };
    are_mutually_minimal_overlapping_by(alpha, beta, method, budget)
}

pub fn are_mutually_minimal_overlapping_by(
    alpha: &Permutation,
    beta: &Permutation,
    method: Method,
    budget: &Budget,
) -> Result<OverlapReport> {
    let j = check_len_at_least_3(alpha)?;
    if beta.len() != j {
        return Err(Error::invalid(format!("{alpha} and {beta} have different lengths")));
    }
    if alpha == beta {
        return Err(Error::invalid(format!(
            "mutual minimal overlap needs two distinct patterns, got {alpha} twice"
        )));
    }
    for tau in [alpha, beta] {
        if !is_minimal_overlapping_by(tau, method, budget)?.verdict {
            return Err(Error::invalid(format!("{tau} is not minimal overlapping")));
        }
    }
    let witness = match method {
        Method::DefinitionScan => {
            budget.check_len("mutual overlap scan length 2j-2", 2 * j - 2)?;
            let a = PatternSet::single(alpha.clone())?;
            let b = PatternSet::single(beta.clone())?;
            (j + 1..=2 * j - 2)
                .find_map(|i| par_find_first(i, |s| a.has_match(s) && b.has_match(s)))
                .map(Permutation::from_vec_unchecked)
        }
        Method::PrefixSuffix => (2..j).find_map(|i| {
            if alpha.suffix(i) == beta.prefix(i) {
                Some(amalgamate(alpha, beta, i))
            } else if beta.suffix(i) == alpha.prefix(i) {
                Some(amalgamate(beta, alpha, i))
            } else {
                None
            }
        }),
    };
    Ok(OverlapReport {
        patterns: vec![alpha.clone(), beta.clone()],
        verdict: witness.is_none(),
        witness,
        method,
    })
}

/// A permutation of length `|a| + |b| - i` whose first `|a|` entries reduce
/// to `a` and last `|b|` entries reduce to `b`. Requires the last `i`
/// letters of `a` and the first `i` letters of `b` to reduce alike.
///
/// The two windows induce orders that agree on the overlap, so their union
/// is acyclic; a topological sort taking the leftmost free position first
/// assigns the values.
fn amalgamate(a: &Permutation, b: &Permutation, i: usize) -> Permutation {
    let len = a.len() + b.len() - i;
    let shift = a.len() - i;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut indeg = vec![0usize; len];
    let mut add_chain = |p: &Permutation, offset: usize| {
        let inv = p.inverse();
        for w in inv.entries().windows(2) {
            let (u, v) = (offset + w[0] as usize - 1, offset + w[1] as usize - 1);
            succ[u].push(v);
            indeg[v] += 1;
        }
    };
    add_chain(a, 0);
    add_chain(b, shift);
    let mut ready: BTreeSet<usize> = (0..len).filter(|&v| indeg[v] == 0).collect();
    let mut out = vec![0u32; len];
    let mut next = 1;
    while let Some(v) = ready.pop_first() {
        out[v] = next;
        next += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    debug_assert_eq!(next as usize, len + 1, "overlap orders must be compatible");
    Permutation::from_vec_unchecked(out)
}

/// Definitional verdicts for every pattern in `S_j` from a single pass over
/// `S_{2j-2}`: a pattern fails iff two of the length-`j` windows of some
/// permutation there reduce to it.
pub fn scan_table(j: usize, budget: &Budget) -> Result<BTreeMap<Permutation, bool>> {
    if j < 3 {
        return Err(Error::invalid(format!("scan_table needs j >= 3, got {j}")));
    }
    budget.check_len("overlap table length 2j-2", 2 * j - 2)?;
    let size = factorial(j) as usize;
    let bad = par_fold(
        2 * j - 2,
        || vec![false; size],
        |acc, s| {
            let ranks = window_ranks(s, j);
            for (x, &r) in ranks.iter().enumerate() {
                if ranks[x + 1..].contains(&r) {
                    acc[r as usize] = true;
                }
            }
        },
        or_merge,
    );
    Ok((0..size)
        .map(|r| (Permutation::from_vec_unchecked(unrank(j, r as u64)), !bad[r]))
        .collect())
}

/// Unordered pairs `{α, β}` of distinct patterns in `S_j` that both match in
/// some permutation of `S_{2j-2}`, from a single pass.
pub fn mutual_scan_table(j: usize, budget: &Budget) -> Result<BTreeSet<(Permutation, Permutation)>> {
    if j < 3 {
        return Err(Error::invalid(format!("mutual_scan_table needs j >= 3, got {j}")));
    }
    budget.check_len("mutual overlap table length 2j-2", 2 * j - 2)?;
    let size = factorial(j) as usize;
    let clash = par_fold(
        2 * j - 2,
        || vec![false; size * size],
        |acc, s| {
            let ranks = window_ranks(s, j);
            for &r in &ranks {
                for &t in &ranks {
                    if r < t {
                        acc[r as usize * size + t as usize] = true;
                    }
                }
            }
        },
        or_merge,
    );
    Ok(clash
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(k, _)| {
            let p = |r: usize| Permutation::from_vec_unchecked(unrank(j, r as u64));
            (p(k / size), p(k % size))
        })
        .collect())
}

fn window_ranks(s: &[u32], j: usize) -> Vec<u64> {
    let mut buf = vec![0u32; j];
    s.windows(j)
        .map(|w| {
            perm::reduce_into(w, &mut buf);
            rank(&buf)
        })
        .collect()
}

fn or_merge(mut a: Vec<bool>, b: Vec<bool>) -> Vec<bool> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
    a
}

/// `MP_{τ, n(j-1)+1}` with its size and `Σ q^{inv} p^{coinv}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingRow {
    pub n: usize,
    pub length: usize,
    pub perms: Vec<Permutation>,
    pub count: u64,
    pub poly: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingTable {
    pub pattern: Permutation,
    pub rows: Vec<PackingRow>,
}

fn require_minimal_overlapping(tau: &Permutation) -> Result<()> {
    let report = is_minimal_overlapping_by(tau, Method::PrefixSuffix, &Budget::default())?;
    if !report.verdict {
        return Err(Error::invalid(format!("{tau} is not minimal overlapping")));
    }
    Ok(())
}

/// All `σ` of length `n(j-1)+1` with exactly `n` `τ`-matches, i.e. the
/// maximum packings with `n` matches.
pub fn enumerate_max_packings(tau: &Permutation, n: usize, budget: &Budget) -> Result<PackingRow> {
    require_minimal_overlapping(tau)?;
    if n == 0 {
        return Err(Error::invalid("maximum packings need n >= 1"));
    }
    let j = tau.len();
    let length = n * (j - 1) + 1;
    budget.check_len("maximum packing length", length)?;
    let set = PatternSet::single(tau.clone())?;
    let mut perms = par_fold(
        length,
        Vec::new,
        |acc: &mut Vec<Vec<u32>>, s| {
            if set.count_matches(s) == n {
                acc.push(s.to_vec());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    perms.sort();
    let mut poly = MultiPoly::zero();
    for s in &perms {
        let inv = perm::inv(s) as u32;
        let mut e = [0u32; 5];
        e[Var::Q as usize] = inv;
        e[Var::P as usize] = (length * (length - 1) / 2) as u32 - inv;
        poly.add_term(Monomial(e), BigInt::from(1));
    }
    Ok(PackingRow {
        n,
        length,
        count: perms.len() as u64,
        perms: perms.into_iter().map(Permutation::from_vec_unchecked).collect(),
        poly,
    })
}

pub fn packing_table(tau: &Permutation, max_n: usize, budget: &Budget) -> Result<PackingTable> {
    let rows = (1..=max_n)
        .map(|n| enumerate_max_packings(tau, n, budget))
        .collect::<Result<_>>()?;
    Ok(PackingTable { pattern: tau.clone(), rows })
}

/// The product formula for maximum packings with `n + 1` matches of a
/// minimal overlapping `τ` that starts with 1 and ends with `s`:
///
/// `(p^{coinv τ} q^{inv τ})^{n+1} p^{(s-1)(j-1)C(n+1,2)} Π_{i=1}^{n+1} [i(j-1)+1-s choose j-s]_{p,q}`.
pub fn closed_form_mp(tau: &Permutation, n: usize) -> Result<MultiPoly> {
    if tau.first() != Some(1) {
        return Err(Error::invalid(format!("closed_form_mp needs a pattern starting with 1, got {tau}")));
    }
    require_minimal_overlapping(tau)?;
    let j = tau.len();
    let s = tau.last().expect("nonempty") as usize;
    let m = (n + 1) as u32;
    let mut e = [0u32; 5];
    e[Var::Q as usize] = tau.inv() as u32 * m;
    e[Var::P as usize] = tau.coinv() as u32 * m + ((s - 1) * (j - 1) * n * (n + 1) / 2) as u32;
    let mut out = MultiPoly::term(Monomial(e), 1);
    for i in 1..=n + 1 {
        out = &out * &pq_binomial(i * (j - 1) + 1 - s, j - s)?;
    }
    Ok(out)
}
