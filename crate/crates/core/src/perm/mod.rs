//! Permutations in one-line notation and the statistics used throughout.
//!
//! Positions are 1-based whenever they are reported to callers (descent
//! sets, match positions), matching the usual one-line conventions.

mod enumerate;
mod pattern;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use enumerate::{factorial, next_permutation, par_find_first, par_fold, rank, unrank, RankRange};
pub use pattern::{match_positions, occurs, PatternSet};

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that `entries` is a bijection on `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let e = e as usize;
            if e == 0 || e > n || seen[e] {
                return Err(Error::invalid(format!(
                    "{entries:?} is not a permutation of 1..={n}"
                )));
            }
            seen[e] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    pub fn first(&self) -> Option<u32> {
        self.entries.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.entries.last().copied()
    }

    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Permutation { entries }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u32 + 1;
        Permutation {
            entries: self.entries.iter().map(|&e| n - e).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &e) in self.entries.iter().enumerate() {
            inv[e as usize - 1] = i as u32 + 1;
        }
        Permutation { entries: inv }
    }

    pub fn stats(&self) -> StatBundle {
        stats(self)
    }

    pub fn des(&self) -> usize {
        des(&self.entries)
    }

    pub fn inv(&self) -> usize {
        inv(&self.entries)
    }

    pub fn coinv(&self) -> usize {
        coinv(&self.entries)
    }

    pub fn lrmin(&self) -> usize {
        lrmin(&self.entries)
    }

    /// `reduce` of the first `i` entries.
    pub fn prefix(&self, i: usize) -> Permutation {
        reduce_slice(&self.entries[..i])
    }

    /// `reduce` of the last `i` entries.
    pub fn suffix(&self, i: usize) -> Permutation {
        reduce_slice(&self.entries[self.len() - i..])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts both `"15342"` (one digit per entry) and `"1 5 3 4 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Vec<u32> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::invalid(format!("bad permutation entry {tok:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::invalid(format!("bad permutation digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Replaces the i-th smallest entry of `word` by `i`.
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if idx.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::invalid("reduce needs pairwise distinct entries"));
    }
    let mut entries = vec![0u32; word.len()];
    for (rank, &i) in idx.iter().enumerate() {
        entries[i] = rank as u32 + 1;
    }
    Ok(Permutation { entries })
}

/// `reduce` for words already known to be distinct.
pub(crate) fn reduce_slice(word: &[u32]) -> Permutation {
    let mut entries = vec![0u32; word.len()];
    reduce_into(word, &mut entries);
    Permutation { entries }
}

/// Writes `reduce(word)` into `out` without allocating. Quadratic, which is
/// the right trade-off for pattern-sized windows.
#[inline]
pub(crate) fn reduce_into(word: &[u32], out: &mut [u32]) {
    for (i, &a) in word.iter().enumerate() {
        out[i] = 1 + word.iter().filter(|&&b| b < a).count() as u32;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatBundle {
    pub des: usize,
    pub inv: usize,
    pub coinv: usize,
    pub lrmin: usize,
    /// 1-based descent positions `i` with `σ_i > σ_{i+1}`.
    pub des_set: Vec<usize>,
}

pub fn stats(sigma: &Permutation) -> StatBundle {
    let e = sigma.entries();
    let des_set: Vec<usize> = (1..e.len()).filter(|&i| e[i - 1] > e[i]).collect();
    StatBundle {
        des: des_set.len(),
        inv: inv(e),
        coinv: coinv(e),
        lrmin: lrmin(e),
        des_set,
    }
}

#[inline]
pub fn des(s: &[u32]) -> usize {
    s.windows(2).filter(|w| w[0] > w[1]).count()
}

#[inline]
pub fn inv(s: &[u32]) -> usize {
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}

#[inline]
pub fn coinv(s: &[u32]) -> usize {
    let n = s.len();
    n * n.saturating_sub(1) / 2 - inv(s)
}

/// Number of entries smaller than everything before them.
#[inline]
pub fn lrmin(s: &[u32]) -> usize {
    let mut min = u32::MAX;
    let mut count = 0;
    for &e in s {
        if e < min {
            min = e;
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[5, 3, 9, 6, 2]).unwrap(), p("32541"));
        assert_eq!(reduce(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(reduce(&[9, 15, 11, 16, 13]).unwrap(), p("14253"));
        assert!(reduce(&[3, 1, 3]).is_err());
        assert_eq!(reduce::<u32>(&[]).unwrap(), Permutation::identity(0));
    }

    #[test]
    fn stats_examples() {
        assert_eq!(p("938471625").lrmin(), 3);
        let s = p("15432").stats();
        assert_eq!((s.des, s.inv, s.coinv), (3, 6, 4));
        assert_eq!(s.des_set, vec![2, 3, 4]);
        for n in 1..6 {
            let s = Permutation::identity(n).stats();
            assert_eq!((s.des, s.inv, s.lrmin), (0, 0, 1));
        }
        let empty = Permutation::identity(0).stats();
        assert_eq!((empty.des, empty.inv, empty.coinv, empty.lrmin), (0, 0, 0, 0));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("15342").entries(), &[1, 5, 3, 4, 2]);
        assert_eq!(p("1 5 3 4 2"), p("15342"));
        let long = p("10 1 2 3 4 5 6 7 8 9");
        assert_eq!(long.to_string(), "10 1 2 3 4 5 6 7 8 9");
        assert_eq!(p("132").to_string(), "132");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
    }

    #[test]
    fn inverse_and_symmetries() {
        let s = p("938471625");
        assert_eq!(s.inverse().inverse(), s);
        assert_eq!(s.reverse().reverse(), s);
        assert_eq!(s.complement().des(), s.len() - 1 - s.des());
    }
}
