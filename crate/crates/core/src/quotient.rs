//! Loopless matroids as (nontrivial relation, simple quotient) pairs, and
//! the equivalence-class matroid.

use crate::bits::{self, Set};
use crate::equiv::EquivRelation;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// A loopless matroid split into its parallel-class relation and the simple
/// matroid it induces on the classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPair {
    pub relation: EquivRelation,
    pub quotient: Matroid,
}

/// `x ∼ y` iff `x = y` or `{x, y}` is dependent; the quotient's bases are
/// the images of the bases of `m`.
pub fn simple_quotient(m: &Matroid) -> Result<QuotientPair> {
    let stats = m.stats();
    if !stats.loopless {
        return Err(Error::HasLoops(bits::to_vec(stats.loops)));
    }
    if m.rank() < 2 {
        return Err(Error::RankTooLow(m.rank()));
    }
    let n = m.ground_size();
    let mut covered = vec![0u64; n];
    for &b in m.bases() {
        for x in bits::elements(b) {
            covered[x] |= b;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !bits::contains(covered[x], y))
        .collect();
    let relation = EquivRelation::generated(n, &pairs)?;
    let image = |b: Set| bits::elements(b).fold(0, |acc, x| acc | bits::singleton(relation.class_of(x)));
    let quotient = Matroid::from_bases(relation.num_classes(), m.bases().iter().map(|&b| image(b)))?;
    Ok(QuotientPair { relation, quotient })
}

/// Lifts a simple matroid on the classes of `r` to the loopless matroid
/// whose bases pick one point from each class of a quotient basis.
pub fn loopless_from_pair(r: &EquivRelation, quotient: &Matroid) -> Result<Matroid> {
    if !r.is_nontrivial() {
        return Err(Error::TrivialRelation);
    }
    if quotient.ground_size() != r.num_classes() {
        return Err(Error::ClassCountMismatch {
            expected: r.num_classes(),
            actual: quotient.ground_size(),
        });
    }
    if quotient.rank() < 2 {
        return Err(Error::RankTooLow(quotient.rank()));
    }
    if !quotient.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut bases = Vec::new();
    for &qb in quotient.bases() {
        let mut partial = vec![0u64];
        for c in bits::elements(qb) {
            let class = r.classes()[c];
            partial = partial
                .iter()
                .flat_map(|&p| bits::elements(class).map(move |x| p | bits::singleton(x)))
                .collect();
        }
        bases.extend(partial);
    }
    Matroid::from_bases(r.ground_size(), bases)
}

/// Bases are the `k`-subsets whose points are not all equivalent.
pub fn equiv_class_matroid(n: usize, r: &EquivRelation, k: usize) -> Result<Matroid> {
    if r.ground_size() != n {
        return Err(Error::GroundSizeMismatch {
            expected: n,
            actual: r.ground_size(),
        });
    }
    if k > n {
        return Err(Error::EmptyBases);
    }
    let bases: Vec<Set> = bits::k_subsets(n, k)
        .filter(|&s| s != 0 && s & !r.class_set(bits::first(s).unwrap()) != 0)
        .collect();
    if bases.is_empty() {
        return Err(Error::EmptyBases);
    }
    Matroid::from_bases(n, bases)
}
