use std::collections::{BTreeMap, HashSet};

use super::{reduce_into, Permutation};
use crate::error::{Error, Result};

/// Patterns of one length, with a lookup strategy picked by size.
#[derive(Debug, Clone)]
struct Group {
    len: usize,
    members: HashSet<Box<[u32]>>,
    /// For a single pattern: positions of `1, 2, ..., j` in it. A window is
    /// order-isomorphic to the pattern iff its entries at these positions
    /// increase.
    chain: Option<Box<[usize]>>,
}

impl Group {
    #[inline]
    fn matches(&self, window: &[u32], buf: &mut [u32]) -> bool {
        if let Some(chain) = &self.chain {
            chain.windows(2).all(|w| window[w[0]] < window[w[1]])
        } else {
            let buf = &mut buf[..self.len];
            reduce_into(window, buf);
            self.members.contains(&*buf)
        }
    }
}

/// A finite set `Γ` of patterns. Patterns may have different lengths; the
/// operations that need a common length say so.
#[derive(Debug, Clone)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
    groups: Vec<Group>,
    max_len: usize,
}

impl PatternSet {
    /// Deduplicates and sorts the patterns; rejects the empty pattern.
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut patterns: Vec<Permutation> = patterns.into_iter().collect();
        patterns.sort();
        patterns.dedup();
        if patterns.iter().any(Permutation::is_empty) {
            return Err(Error::invalid("patterns must be nonempty"));
        }
        let mut by_len: BTreeMap<usize, Vec<&Permutation>> = BTreeMap::new();
        for p in &patterns {
            by_len.entry(p.len()).or_default().push(p);
        }
        let groups = by_len
            .into_iter()
            .map(|(len, ps)| {
                let chain = (ps.len() == 1).then(|| {
                    ps[0]
                        .inverse()
                        .entries()
                        .iter()
                        .map(|&i| i as usize - 1)
                        .collect()
                });
                Group {
                    len,
                    members: ps.iter().map(|p| p.entries().into()).collect(),
                    chain,
                }
            })
            .collect();
        let max_len = patterns.iter().map(Permutation::len).max().unwrap_or(0);
        Ok(PatternSet {
            patterns,
            groups,
            max_len,
        })
    }

    pub fn single(tau: Permutation) -> Result<Self> {
        PatternSet::new([tau])
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// The common pattern length, or `None` for mixed (or no) lengths.
    pub fn common_len(&self) -> Option<usize> {
        match self.groups.as_slice() {
            [g] => Some(g.len),
            _ => None,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    /// Visits every match `(start, len)` (0-based start) with
    /// `lo <= start` and `start + len <= hi`, shortest patterns first.
    pub fn for_each_match_in(&self, s: &[u32], lo: usize, hi: usize, mut f: impl FnMut(usize, usize)) {
        let mut buf = vec![0u32; self.max_len];
        for g in &self.groups {
            if hi < lo + g.len {
                continue;
            }
            for start in lo..=hi - g.len {
                if g.matches(&s[start..start + g.len], &mut buf) {
                    f(start, g.len);
                }
            }
        }
    }

    /// Whether some match lies inside the 0-based half-open range `lo..hi`.
    pub fn has_match_in(&self, s: &[u32], lo: usize, hi: usize) -> bool {
        let mut buf = [0u32; 32];
        let mut heap;
        let buf: &mut [u32] = if self.max_len <= buf.len() {
            &mut buf
        } else {
            heap = vec![0u32; self.max_len];
            &mut heap
        };
        for g in &self.groups {
            if hi < lo + g.len {
                continue;
            }
            for start in lo..=hi - g.len {
                if g.matches(&s[start..start + g.len], buf) {
                    return true;
                }
            }
        }
        false
    }

    pub fn has_match(&self, s: &[u32]) -> bool {
        self.has_match_in(s, 0, s.len())
    }

    /// Total number of `Γ`-matches over all pattern lengths.
    pub fn count_matches(&self, s: &[u32]) -> usize {
        let mut count = 0;
        self.for_each_match_in(s, 0, s.len(), |_, _| count += 1);
        count
    }
}

/// 1-based start positions of the `Γ`-matches of `sigma`, in increasing
/// order. All patterns must share one length.
pub fn match_positions(sigma: &Permutation, gamma: &PatternSet) -> Result<Vec<usize>> {
    if gamma.is_empty() {
        return Ok(Vec::new());
    }
    if gamma.common_len().is_none() {
        return Err(Error::invalid("match_positions needs patterns of one length"));
    }
    let mut out = Vec::new();
    gamma.for_each_match_in(sigma.entries(), 0, sigma.len(), |start, _| out.push(start + 1));
    Ok(out)
}

/// Whether some (not necessarily consecutive) subsequence of `sigma`
/// reduces to a member of `gamma`.
pub fn occurs(sigma: &Permutation, gamma: &PatternSet) -> bool {
    gamma.groups.iter().any(|g| occurs_group(sigma.entries(), g))
}

fn occurs_group(s: &[u32], g: &Group) -> bool {
    fn rec(s: &[u32], g: &Group, from: usize, picked: &mut Vec<u32>, buf: &mut [u32]) -> bool {
        if picked.len() == g.len {
            reduce_into(picked, buf);
            return g.members.contains(&*buf);
        }
        let need = g.len - picked.len();
        for i in from..=s.len().saturating_sub(need) {
            if i >= s.len() {
                break;
            }
            picked.push(s[i]);
            let hit = rec(s, g, i + 1, picked, buf);
            picked.pop();
            if hit {
                return true;
            }
        }
        false
    }
    if g.len > s.len() {
        return false;
    }
    let mut buf = vec![0u32; g.len];
    rec(s, g, 0, &mut Vec::with_capacity(g.len), &mut buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::reduce;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(ps: &[&str]) -> PatternSet {
        PatternSet::new(ps.iter().map(|s| p(s))).unwrap()
    }

    /// Direct definition: slide a window, reduce, compare.
    fn window_oracle(sigma: &Permutation, gamma: &[Permutation]) -> Vec<usize> {
        let j = gamma[0].len();
        (0..sigma.len().saturating_sub(j - 1))
            .filter(|&i| gamma.contains(&reduce(&sigma.entries()[i..i + j]).unwrap()))
            .map(|i| i + 1)
            .collect()
    }

    #[test]
    fn match_positions_examples() {
        assert_eq!(match_positions(&p("1234"), &set(&["123"])).unwrap(), vec![1, 2]);
        let tau = p("15342");
        assert_eq!(match_positions(&tau, &set(&["15342"])).unwrap(), vec![1]);
        let sigma = p("938471625");
        let got = match_positions(&sigma, &set(&["132"])).unwrap();
        assert_eq!(got, window_oracle(&sigma, &[p("132")]));
        assert_eq!(got, vec![2, 6]);
        assert!(match_positions(&p("12"), &set(&["123"])).unwrap().is_empty());
    }

    #[test]
    fn mixed_lengths_rejected_by_match_positions() {
        let g = set(&["123", "1324"]);
        assert!(match_positions(&p("1234"), &g).is_err());
        assert!(g.has_match(p("1234").entries()));
        assert_eq!(g.count_matches(p("13245").entries()), 2);
    }

    #[test]
    fn set_lookup_agrees_with_window_oracle() {
        let g = set(&["132", "231", "321"]);
        let pats = g.patterns().to_vec();
        crate::perm::RankRange::full(7).for_each(|s| {
            let sigma = Permutation::from_vec_unchecked(s.to_vec());
            assert_eq!(match_positions(&sigma, &g).unwrap(), window_oracle(&sigma, &pats));
        });
    }

    #[test]
    fn occurs_examples() {
        assert!(occurs(&p("132"), &set(&["132"])));
        assert!(!occurs(&p("123"), &set(&["321"])));
        // 5 2 8 is a 213 occurrence.
        assert!(occurs(&p("156792348"), &set(&["213"])));
        assert!(!occurs(&p("156792348"), &set(&["4321"])));
    }

    #[test]
    fn occurs_brute_force_oracle() {
        // All length-3 subsequences of 156792348 by explicit index triples.
        let sigma = p("156792348");
        let e = sigma.entries();
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..9 {
            for b in a + 1..9 {
                for c in b + 1..9 {
                    seen.insert(reduce(&[e[a], e[b], e[c]]).unwrap());
                }
            }
        }
        crate::perm::RankRange::full(3).for_each(|s| {
            let tau = Permutation::from_vec_unchecked(s.to_vec());
            assert_eq!(occurs(&sigma, &PatternSet::single(tau.clone()).unwrap()), seen.contains(&tau));
        });
        assert!(!seen.contains(&p("321")));
    }
}
