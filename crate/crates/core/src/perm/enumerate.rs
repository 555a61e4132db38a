use rayon::prelude::*;

/// `n!`; panics past `20!`, which no enumeration here could reach anyway.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .expect("factorial overflows u64")
}

/// The permutation of lexicographic rank `rank` (0-based) in `S_n`.
pub fn unrank(n: usize, mut rank: u64) -> Vec<u32> {
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let k = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(k));
    }
    out
}

/// The lexicographic rank (0-based) of a permutation of `1..=n`.
pub fn rank(s: &[u32]) -> u64 {
    let n = s.len();
    let mut r = 0u64;
    for i in 0..n {
        let smaller_after = s[i + 1..].iter().filter(|&&b| b < s[i]).count() as u64;
        r += smaller_after * factorial(n - 1 - i);
    }
    r
}

/// Advances `s` to its lexicographic successor; returns `false` (leaving `s`
/// untouched) when `s` is already the last permutation. Repeated values are
/// allowed, in which case the distinct rearrangements are visited.
pub fn next_permutation(s: &mut [u32]) -> bool {
    let n = s.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// A half-open range of lexicographic ranks in `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankRange {
    pub n: usize,
    pub start: u64,
    pub end: u64,
}

impl RankRange {
    pub fn full(n: usize) -> Self {
        RankRange {
            n,
            start: 0,
            end: factorial(n),
        }
    }

    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// Splits into at most `parts` contiguous, nonempty sub-ranges.
    pub fn split(&self, parts: u64) -> Vec<RankRange> {
        let parts = parts.max(1).min(self.len().max(1));
        let step = self.len().div_ceil(parts);
        let mut out = Vec::new();
        let mut lo = self.start;
        while lo < self.end {
            let hi = (lo + step).min(self.end);
            out.push(RankRange {
                n: self.n,
                start: lo,
                end: hi,
            });
            lo = hi;
        }
        out
    }

    /// Visits the permutations of the range in lexicographic order.
    pub fn for_each(&self, mut f: impl FnMut(&[u32])) {
        if self.is_empty() {
            return;
        }
        let mut cur = unrank(self.n, self.start);
        f(&cur);
        for _ in 1..self.len() {
            next_permutation(&mut cur);
            f(&cur);
        }
    }

    /// The first permutation of the range (in lexicographic order) that
    /// satisfies `pred`.
    pub fn find_first(&self, mut pred: impl FnMut(&[u32]) -> bool) -> Option<Vec<u32>> {
        if self.is_empty() {
            return None;
        }
        let mut cur = unrank(self.n, self.start);
        for _ in 0..self.len() {
            if pred(&cur) {
                return Some(cur);
            }
            next_permutation(&mut cur);
        }
        None
    }
}

/// Folds over all of `S_n` in parallel chunks of the rank space.
///
/// `combine` must be associative and commutative so the result does not
/// depend on how the work was split across threads.
pub fn par_fold<A, I, F, C>(n: usize, identity: I, fold: F, combine: C) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[u32]) + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    let range = RankRange::full(n);
    if range.len() < 5_000 {
        let mut acc = identity();
        range.for_each(|s| fold(&mut acc, s));
        return acc;
    }
    range
        .split(256)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = identity();
            chunk.for_each(|s| fold(&mut acc, s));
            acc
        })
        .reduce(&identity, &combine)
}

/// The lexicographically least `σ ∈ S_n` satisfying `pred`, searched in
/// parallel.
pub fn par_find_first<P>(n: usize, pred: P) -> Option<Vec<u32>>
where
    P: Fn(&[u32]) -> bool + Sync + Send,
{
    let range = RankRange::full(n);
    if range.len() < 5_000 {
        return range.find_first(pred);
    }
    range
        .split(256)
        .into_par_iter()
        .find_map_first(|chunk| chunk.find_first(&pred))
}
