//! Every matroid on at most 7 labeled points, as a bitmask over subsets.

use gmatroid::Matroid;

pub const MAX_LABELED: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub n: usize,
    pub rank: usize,
    /// Bit `s` is set when the subset `s` is a basis.
    pub bases: u128,
}

fn subsets(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&s| mask >> s & 1 == 1)
}

impl Family {
    pub fn to_matroid(self) -> Matroid {
        Matroid::from_bases(self.n, subsets(self.bases).map(|s| s as u64)).unwrap()
    }

    fn independent(self) -> u128 {
        let mut ind = self.bases;
        for s in (0..1usize << self.n).rev() {
            if ind >> s & 1 == 1 {
                for x in 0..self.n {
                    if s >> x & 1 == 1 {
                        ind |= 1 << (s & !(1 << x));
                    }
                }
            }
        }
        ind
    }

    /// Subsets `s` with `rank(s + x) > rank(s)` for every `x ∉ s`.
    fn flats(self) -> u128 {
        let ind = self.independent();
        let size = 1usize << self.n;
        let mut rank = vec![0usize; size];
        for s in 0..size {
            rank[s] = if ind >> s & 1 == 1 {
                (s as u32).count_ones() as usize
            } else {
                (0..self.n).filter(|&x| s >> x & 1 == 1).map(|x| rank[s & !(1 << x)]).max().unwrap()
            };
        }
        let mut flats = 0u128;
        for s in 0..size {
            if (0..self.n).all(|x| s >> x & 1 == 1 || rank[s | 1 << x] > rank[s]) {
                flats |= 1 << s;
            }
        }
        flats
    }

    /// Exchange axiom, read literally.
    pub fn is_matroid(self) -> bool {
        let bases: Vec<usize> = subsets(self.bases).collect();
        if bases.is_empty() {
            return false;
        }
        for &b1 in &bases {
            for &b2 in &bases {
                for x in (0..self.n).filter(|&x| b1 >> x & 1 == 1 && b2 >> x & 1 == 0) {
                    let ok = (0..self.n)
                        .filter(|&y| b2 >> y & 1 == 1 && b1 >> y & 1 == 0)
                        .any(|y| self.bases >> ((b1 & !(1 << x)) | 1 << y) & 1 == 1);
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_simple(self) -> bool {
        let ind = self.independent();
        (0..self.n).all(|x| ind >> (1usize << x) & 1 == 1)
            && (0..self.n).all(|x| (x + 1..self.n).all(|y| ind >> ((1usize << x) | (1 << y)) & 1 == 1))
    }
}

/// `all[n]` lists every matroid on `n` labeled points, `n ≤ max_n`.
pub fn all_matroids(max_n: usize) -> Vec<Vec<Family>> {
    assert!(max_n <= MAX_LABELED);
    let mut all = vec![vec![Family { n: 0, rank: 0, bases: 1 }]];
    for n in 1..=max_n {
        let prev = &all[n - 1];
        let e = n - 1;
        let flats: Vec<u128> = prev.iter().map(|f| f.flats()).collect();
        let mut next = Vec::new();
        for (i, d) in prev.iter().enumerate() {
            next.push(Family { n, rank: d.rank, bases: d.bases });
            let with_e = subsets(d.bases).fold(0u128, |acc, s| acc | 1 << (s | 1 << e));
            next.push(Family { n, rank: d.rank + 1, bases: with_e });
            if d.rank == 0 {
                continue;
            }
            for (j, c) in prev.iter().enumerate() {
                if c.rank + 1 != d.rank || flats[j] & !flats[i] != 0 {
                    continue;
                }
                let lifted = subsets(c.bases).fold(0u128, |acc, s| acc | 1 << (s | 1 << e));
                let cand = Family { n, rank: d.rank, bases: d.bases | lifted };
                if cand.is_matroid() {
                    next.push(cand);
                }
            }
        }
        all.push(next);
    }
    all
}
