//! One-word subsets of `0..64`.

/// A subset of `0..64`, bit `i` set iff `i` is a member.
pub type Set = u64;

pub const MAX_POINTS: usize = 64;

/// The set `{0, .., n-1}`.
pub fn full(n: usize) -> Set {
    debug_assert!(n <= MAX_POINTS);
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn contains(s: Set, x: usize) -> bool {
    x < 64 && s >> x & 1 == 1
}

#[inline]
pub fn singleton(x: usize) -> Set {
    1u64 << x
}

#[inline]
pub fn len(s: Set) -> usize {
    s.count_ones() as usize
}

/// Least element, if any.
#[inline]
pub fn first(s: Set) -> Option<usize> {
    (s != 0).then(|| s.trailing_zeros() as usize)
}

pub fn from_elements<I: IntoIterator<Item = usize>>(items: I) -> Set {
    items.into_iter().fold(0, |acc, x| acc | singleton(x))
}

/// Members in increasing order.
pub fn elements(s: Set) -> Elements {
    Elements(s)
}

pub fn to_vec(s: Set) -> Vec<usize> {
    elements(s).collect()
}

#[derive(Clone, Debug)]
pub struct Elements(Set);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// All `k`-subsets of `0..n` in increasing numeric order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    debug_assert!(n <= MAX_POINTS);
    let next = if k > n { None } else { Some(full(k) as u128) };
    KSubsets {
        next,
        limit: 1u128 << n,
    }
}

#[derive(Clone, Debug)]
pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
}

impl Iterator for KSubsets {
    type Item = Set;

    fn next(&mut self) -> Option<Set> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as Set)
    }
}

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lexicographic comparison key of a subset viewed as a sorted index list.
pub fn lex_key(s: Set) -> Vec<usize> {
    to_vec(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_counts() {
        for n in 0..=10 {
            for k in 0..=n + 1 {
                let v: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(v.len() as u128, binomial(n, k), "n={n} k={k}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|&s| len(s) == k && s & !full(n) == 0));
            }
        }
    }

    #[test]
    fn k_subsets_at_word_edge() {
        assert_eq!(k_subsets(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(k_subsets(64, 1).count(), 64);
        assert_eq!(k_subsets(64, 2).count(), 2016);
    }

    #[test]
    fn element_roundtrip() {
        let s = from_elements([0, 3, 63]);
        assert_eq!(to_vec(s), vec![0, 3, 63]);
        assert_eq!(first(s), Some(0));
        assert_eq!(first(0), None);
    }
}
