//! Counting helpers and enumerators shared by the scheme and the converse.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Largest number of caches a [`CacheSet`] can hold.
pub const MAX_CACHES: usize = 32;

pub fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// `C(n, k)`, zero whenever `n < k`, `n < 0` or `k < 0`.
pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `P(n, k) = n! / (n - k)!`, zero whenever `n < k`, `n < 0` or `k < 0`.
pub fn perm(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || n < k {
        return 0;
    }
    ((n - k + 1)..=n).map(|v| v as i128).product()
}

/// A subset of caches, stored as a bitmask over 0-based cache indices.
///
/// Displayed 1-based, e.g. `{1,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CacheSet(u32);

impl CacheSet {
    pub const EMPTY: CacheSet = CacheSet(0);

    pub fn from_mask(mask: u32) -> Self {
        CacheSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// All caches `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CACHES);
        if n == MAX_CACHES {
            CacheSet(u32::MAX)
        } else {
            CacheSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(cache: usize) -> Self {
        CacheSet(1 << cache)
    }

    pub fn contains(self, cache: usize) -> bool {
        cache < MAX_CACHES && self.0 & (1 << cache) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, cache: usize) -> Self {
        CacheSet(self.0 | (1 << cache))
    }

    pub fn without(self, cache: usize) -> Self {
        CacheSet(self.0 & !(1 << cache))
    }

    pub fn is_disjoint(self, other: CacheSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: CacheSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let low = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(low)
        })
    }

    /// Lexicographic order on the ascending member lists, so that
    /// `{} < {1} < {1,2} < {1,3} < {2}`.
    pub fn lex_cmp(self, other: CacheSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for CacheSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(CacheSet::EMPTY, CacheSet::with)
    }
}

impl fmt::Display for CacheSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for CacheSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<CacheSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().copied().collect());
        // rightmost position that can still be advanced
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            break;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
    out
}

/// Every subset of `0..n`, in lexicographic order.
pub fn power_set_lex(n: usize) -> Vec<CacheSet> {
    let mut all: Vec<CacheSet> = (0..1u64 << n).map(|m| CacheSet(m as u32)).collect();
    all.sort_by(|a, b| a.lex_cmp(*b));
    all
}

/// Injective sequences of length `k` over `0..n`, in lexicographic order.
///
/// With `k == n` these are the permutations of `0..n`.
#[derive(Debug, Clone)]
pub struct KPermutations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KPermutations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        KPermutations { n, current }
    }

    fn advance(n: usize, seq: &mut [usize]) -> bool {
        let k = seq.len();
        let mut used = vec![false; n];
        for &v in seq.iter() {
            used[v] = true;
        }
        for pos in (0..k).rev() {
            used[seq[pos]] = false;
            if let Some(next) = (seq[pos] + 1..n).find(|&v| !used[v]) {
                seq[pos] = next;
                used[next] = true;
                let mut fill = (0..n).filter(|&v| !used[v]);
                for slot in seq[pos + 1..].iter_mut() {
                    *slot = fill.next().expect("enough unused values");
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for KPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut seq = out.clone();
        self.current = Self::advance(self.n, &mut seq).then_some(seq);
        Some(out)
    }
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> KPermutations {
    KPermutations::new(n, n)
}

/// Integer partitions of `total` into at most `max_parts` positive parts,
/// descending parts, reverse-lexicographic order (`(4), (3,1), (2,2), …`).
pub fn partitions(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cap: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Set partitions of `0..n` into at most `max_blocks` non-empty blocks.
///
/// Blocks are ordered by their smallest element and each block lists its
/// elements ascending, so every partition appears exactly once.
pub fn set_partitions(n: usize, max_blocks: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(item: usize, n: usize, max_blocks: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if item == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(item);
            rec(item + 1, n, max_blocks, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![item]);
            rec(item + 1, n, max_blocks, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, max_blocks, &mut Vec::new(), &mut out);
    out
}
