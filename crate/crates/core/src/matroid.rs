//! Matroids on at most 64 points, stored by their bases.
//!
//! The canonical form is the duplicate-free list of bases sorted by numeric
//! bitset value; two matroids are equal iff their canonical forms agree
//! (labeled equality). JSON output lists each basis as a sorted index list
//! and the bases lexicographically.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Set};
use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::partitions::SetPartitions;

/// Ground-size bound for [`Matroid::partition_witness`].
pub const PARTITION_SEARCH_BOUND: usize = 12;

/// Largest basis family [`Matroid::uniform`] will materialize.
pub const MAX_UNIFORM_BASES: u128 = 5_000_000;

// below this many bases the exchange check runs on the calling thread
const PARALLEL_THRESHOLD: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    bases: Vec<Set>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidStats {
    pub rank: usize,
    pub loops: Set,
    pub coloops: Set,
    pub loopless: bool,
    pub simple: bool,
}

/// A partition of the ground set together with per-block capacities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub blocks: Vec<Vec<usize>>,
    pub capacities: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground_size: usize,
    pub rank: usize,
    pub bases: Vec<Vec<usize>>,
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("ground set must be nonempty".into()));
    }
    if n > bits::MAX_POINTS {
        return Err(Error::GroundTooLarge {
            size: n,
            bound: bits::MAX_POINTS,
        });
    }
    Ok(())
}

/// First violation of basis exchange, as `(B1, B2, x)`.
///
/// For a fixed `B1` and `x ∈ B1`, let `Y` be the points `y ∉ B1` with
/// `B1 - x + y` a basis. Exchange fails for `(B1, x)` exactly when some basis
/// lies inside `(B1 - x) ∪ (E - B1 - Y)`; such a basis is the witness `B2`.
/// `B1` is scanned in canonical order, `x` from the largest element down.
fn exchange_violation(n: usize, k: usize, bases: &[Set]) -> Option<(Set, Set, usize)> {
    let full = bits::full(n);
    let is_basis = |s: Set| bases.binary_search(&s).is_ok();
    let first_basis_inside = |within: Set| -> Option<Set> {
        let m = bits::len(within);
        if m < k {
            return None;
        }
        if bits::binomial(m, k) <= bases.len() as u128 {
            let members = bits::to_vec(within);
            // the compressed-index order is the numeric order of the images
            bits::k_subsets(m, k)
                .map(|c| bits::elements(c).fold(0, |acc, i| acc | bits::singleton(members[i])))
                .find(|&s| is_basis(s))
        } else {
            bases.iter().copied().find(|&b| b & !within == 0)
        }
    };
    let check = |&b1: &Set| -> Option<(Set, Set, usize)> {
        let outside = full & !b1;
        let mut xs = bits::to_vec(b1);
        xs.reverse();
        for x in xs {
            let rest = b1 & !bits::singleton(x);
            let good = bits::elements(outside)
                .filter(|&y| is_basis(rest | bits::singleton(y)))
                .fold(0, |acc, y| acc | bits::singleton(y));
            if let Some(b2) = first_basis_inside(rest | (outside & !good)) {
                return Some((b1, b2, x));
            }
        }
        None
    };
    if bases.len() >= PARALLEL_THRESHOLD {
        bases.par_iter().find_map_first(check)
    } else {
        bases.iter().find_map(check)
    }
}

impl Matroid {
    /// Validates a basis family and returns its canonical matroid.
    pub fn from_bases<I: IntoIterator<Item = Set>>(n: usize, bases: I) -> Result<Self> {
        check_ground(n)?;
        let mut bases: Vec<Set> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::EmptyFamily);
        };
        let full = bits::full(n);
        if let Some(&bad) = bases.iter().find(|&&b| b & !full != 0) {
            let point = 63 - (bad & !full).leading_zeros() as usize;
            return Err(Error::OutOfRange { point, ground_size: n });
        }
        let k = bits::len(first);
        if let Some(&b) = bases.iter().find(|&&b| bits::len(b) != k) {
            return Err(Error::SizeMismatch(format!(
                "basis {:?} has {} elements, expected {k}",
                bits::to_vec(b),
                bits::len(b)
            )));
        }
        if let Some((b1, b2, x)) = exchange_violation(n, k, &bases) {
            return Err(Error::ExchangeFails {
                b1: bits::to_vec(b1),
                b2: bits::to_vec(b2),
                x,
            });
        }
        Ok(Matroid {
            ground_size: n,
            rank: k,
            bases,
        })
    }

    /// Same as [`Matroid::from_bases`] with bases given as index lists.
    pub fn from_index_lists<L: AsRef<[usize]>>(n: usize, bases: &[L]) -> Result<Self> {
        check_ground(n)?;
        let sets = bases
            .iter()
            .map(|b| {
                let b = b.as_ref();
                if let Some(&point) = b.iter().find(|&&x| x >= n) {
                    return Err(Error::OutOfRange { point, ground_size: n });
                }
                let s = bits::from_elements(b.iter().copied());
                if bits::len(s) != b.len() {
                    return Err(Error::InvalidParams(format!("repeated element in {b:?}")));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bases(n, sets)
    }

    /// The uniform matroid `U_{k,n}`.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        check_ground(n)?;
        if k > n {
            return Err(Error::InvalidParams(format!("U({k},{n}) needs k <= n")));
        }
        let count = bits::binomial(n, k);
        if count > MAX_UNIFORM_BASES {
            return Err(Error::TooManySubsets {
                count,
                bound: MAX_UNIFORM_BASES,
            });
        }
        Self::from_bases(n, bits::k_subsets(n, k))
    }

    /// Direct sum; the second summand is relabeled to follow the first.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Self> {
        let n = self.ground_size + other.ground_size;
        check_ground(n)?;
        let shift = self.ground_size;
        let bases = self
            .bases
            .iter()
            .flat_map(|&a| other.bases.iter().map(move |&b| a | (b << shift)));
        Self::from_bases(n, bases)
    }

    /// Parses `U(k,n)` or `directsum(M1, M2)` (nested arbitrarily).
    pub fn parse(desc: &str) -> Result<Self> {
        let mut p = DescParser {
            src: desc.as_bytes(),
            pos: 0,
            text: desc,
        };
        let m = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err());
        }
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: MatroidJson = serde_json::from_str(text)?;
        Self::try_from(j)
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in canonical (numeric bitset) order.
    #[inline]
    pub fn bases(&self) -> &[Set] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    #[inline]
    pub fn is_basis(&self, s: Set) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn is_independent(&self, s: Set) -> bool {
        if bits::len(s) == self.rank {
            return self.is_basis(s);
        }
        bits::len(s) < self.rank && self.bases.iter().any(|&b| s & !b == 0)
    }

    pub fn is_dependent(&self, s: Set) -> bool {
        !self.is_independent(s)
    }

    /// Applies the relabeling `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.ground_size;
        let image = bits::from_elements(perm.iter().copied().filter(|&y| y < n));
        if perm.len() != n || image != bits::full(n) {
            return Err(Error::InvalidParams(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let bases = self
            .bases
            .iter()
            .map(|&b| bits::elements(b).fold(0, |acc, x| acc | bits::singleton(perm[x])));
        Self::from_bases(n, bases)
    }

    /// All minimal dependent sets, sorted by size then numeric value.
    pub fn circuits(&self) -> Vec<Set> {
        let n = self.ground_size;
        let k = self.rank;
        let full = bits::full(n);
        // independent sets by size
        let mut indep: Vec<HashSet<Set>> = vec![HashSet::new(); k + 1];
        for &b in &self.bases {
            let members = bits::to_vec(b);
            for (s, sized) in indep.iter_mut().enumerate() {
                for c in bits::k_subsets(k, s) {
                    sized.insert(bits::elements(c).fold(0, |acc, i| acc | bits::singleton(members[i])));
                }
            }
        }
        let mut out = Vec::new();
        for s in 1..=k + 1 {
            // every circuit of size s is an independent (s-1)-set plus one point
            let mut cands: Vec<Set> = indep[s - 1]
                .iter()
                .flat_map(|&i| bits::elements(full & !i).map(move |y| i | bits::singleton(y)))
                .collect();
            cands.sort_unstable();
            cands.dedup();
            for c in cands {
                if s <= k && indep[s].contains(&c) {
                    continue;
                }
                if bits::elements(c).all(|e| indep[s - 1].contains(&(c & !bits::singleton(e)))) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn stats(&self) -> MatroidStats {
        let full = bits::full(self.ground_size);
        let union = self.bases.iter().fold(0, |a, &b| a | b);
        let inter = self.bases.iter().fold(full, |a, &b| a & b);
        let loops = full & !union;
        let loopless = loops == 0;
        // pairs covered by some basis
        let mut neighbors = vec![0u64; self.ground_size];
        for &b in &self.bases {
            for x in bits::elements(b) {
                neighbors[x] |= b;
            }
        }
        let simple = loopless
            && (0..self.ground_size).all(|x| neighbors[x] | bits::singleton(x) == full);
        MatroidStats {
            rank: self.rank,
            loops,
            coloops: inter,
            loopless,
            simple,
        }
    }

    pub fn is_loopless(&self) -> bool {
        self.stats().loopless
    }

    pub fn is_simple(&self) -> bool {
        self.stats().simple
    }

    /// True iff every group element maps bases to bases.
    pub fn is_invariant(&self, act: &GroupAction) -> Result<bool> {
        if act.ground_size() != self.ground_size {
            return Err(Error::GroundSizeMismatch {
                expected: self.ground_size,
                actual: act.ground_size(),
            });
        }
        let e = act.group().identity();
        Ok(act
            .group()
            .elements()
            .filter(|&g| g != e)
            .all(|g| self.bases.iter().all(|&b| self.is_basis(act.apply_set(g, b)))))
    }

    /// Searches set partitions in restricted-growth order for a partition
    /// matroid presentation of `self`; returns the first one found.
    pub fn partition_witness(&self) -> Result<Option<PartitionWitness>> {
        let n = self.ground_size;
        if n > PARTITION_SEARCH_BOUND {
            return Err(Error::GroundTooLarge {
                size: n,
                bound: PARTITION_SEARCH_BOUND,
            });
        }
        let target = self.bases.len() as u128;
        let b0 = self.bases[0];
        for labels in SetPartitions::new(n) {
            let nblocks = labels.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![0u64; nblocks];
            for (x, &l) in labels.iter().enumerate() {
                blocks[l] |= bits::singleton(x);
            }
            let caps: Vec<usize> = blocks.iter().map(|&bl| bits::len(bl & b0)).collect();
            let generated: u128 = blocks
                .iter()
                .zip(&caps)
                .map(|(&bl, &c)| bits::binomial(bits::len(bl), c))
                .product();
            if generated != target {
                continue;
            }
            let fits = self
                .bases
                .iter()
                .all(|&b| blocks.iter().zip(&caps).all(|(&bl, &c)| bits::len(b & bl) == c));
            if fits {
                return Ok(Some(PartitionWitness {
                    blocks: blocks.iter().map(|&bl| bits::to_vec(bl)).collect(),
                    capacities: caps,
                }));
            }
        }
        Ok(None)
    }

    pub fn to_json_value(&self) -> MatroidJson {
        let mut bases: Vec<Vec<usize>> = self.bases.iter().map(|&b| bits::to_vec(b)).collect();
        bases.sort();
        MatroidJson {
            ground_size: self.ground_size,
            rank: self.rank,
            bases,
        }
    }

    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matroid json")
    }
}

impl TryFrom<MatroidJson> for Matroid {
    type Error = Error;

    fn try_from(j: MatroidJson) -> Result<Self> {
        let m = Matroid::from_index_lists(j.ground_size, &j.bases)?;
        if m.rank != j.rank {
            return Err(Error::WrongRank {
                expected: j.rank,
                actual: m.rank,
            });
        }
        Ok(m)
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {} on {} points, {} bases",
            self.rank,
            self.ground_size,
            self.bases.len()
        )
    }
}

struct DescParser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl DescParser<'_> {
    fn err(&self) -> Error {
        Error::MalformedSpec(format!("{} (at offset {})", self.text, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err())
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.err())
    }

    fn expr(&mut self) -> Result<Matroid> {
        if self.eat("directsum") {
            self.expect("(")?;
            let a = self.expr()?;
            self.expect(",")?;
            let b = self.expr()?;
            self.expect(")")?;
            a.direct_sum(&b)
        } else if self.eat("U") {
            self.expect("(")?;
            let k = self.number()?;
            self.expect(",")?;
            let n = self.number()?;
            self.expect(")")?;
            Matroid::uniform(k, n)
        } else {
            Err(self.err())
        }
    }
}
