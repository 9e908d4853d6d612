//! Equivalence relations on finite sets and the rank-2 correspondence:
//! loopless rank-2 matroids on `E` are the same thing as nontrivial
//! equivalence relations on `E`, with `{x, y}` a basis iff `x ≁ y`.

use std::cmp::Ordering;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Set};
use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::matroid::Matroid;
use crate::partitions::{canonical_labels, SetPartitions};

/// Ground-size bound for enumerating invariant relations by set partitions.
pub const DEFAULT_PARTITION_BOUND: usize = 12;

/// A partition of `0..ground_size`; classes are numbered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivRelation {
    ground_size: usize,
    class_of: Vec<usize>,
    classes: Vec<Set>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivJson {
    pub ground_size: usize,
    pub classes: Vec<Vec<usize>>,
}

impl EquivRelation {
    /// Builds the relation whose classes are the label fibres.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > bits::MAX_POINTS {
            return Err(Error::InvalidParams(format!("unsupported ground size {n}")));
        }
        let class_of = canonical_labels(labels);
        let count = class_of.iter().max().unwrap() + 1;
        let mut classes = vec![0; count];
        for (x, &c) in class_of.iter().enumerate() {
            classes[c] |= bits::singleton(x);
        }
        Ok(EquivRelation {
            ground_size: n,
            class_of,
            classes,
        })
    }

    /// The finest equivalence relation containing every generating pair.
    pub fn generated(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > bits::MAX_POINTS {
            return Err(Error::InvalidParams(format!("unsupported ground size {n}")));
        }
        let mut uf = UnionFind::new(n);
        for &(x, y) in pairs {
            for p in [x, y] {
                if p >= n {
                    return Err(Error::OutOfRange {
                        point: p,
                        ground_size: n,
                    });
                }
            }
            uf.union(x, y);
        }
        Self::from_labels(&uf.into_labeling())
    }

    /// Validates an explicit list of classes.
    pub fn from_classes<C: AsRef<[usize]>>(n: usize, classes: &[C]) -> Result<Self> {
        if n == 0 || n > bits::MAX_POINTS {
            return Err(Error::InvalidParams(format!("unsupported ground size {n}")));
        }
        let mut labels = vec![usize::MAX; n];
        for (i, class) in classes.iter().enumerate() {
            let class = class.as_ref();
            if class.is_empty() {
                return Err(Error::InvalidParams("empty class".into()));
            }
            for &x in class {
                if x >= n {
                    return Err(Error::OutOfRange {
                        point: x,
                        ground_size: n,
                    });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidParams(format!("{x} appears in two classes")));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidParams(format!("{x} is in no class")));
        }
        Self::from_labels(&labels)
    }

    /// Every point in its own class.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: EquivJson = serde_json::from_str(text)?;
        Self::from_classes(j.ground_size, &j.classes)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Class labels, numbered by least element.
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Set] {
        &self.classes
    }

    /// The class containing `x`, as a bitset.
    pub fn class_set(&self, x: usize) -> Set {
        self.classes[self.class_of[x]]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// At least two classes.
    pub fn is_nontrivial(&self) -> bool {
        self.classes.len() >= 2
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn class_lists(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|&c| bits::to_vec(c)).collect()
    }

    /// `x ∼ y` implies `gx ∼ gy` for every group element.
    pub fn is_invariant(&self, act: &GroupAction) -> Result<bool> {
        if act.ground_size() != self.ground_size {
            return Err(Error::GroundSizeMismatch {
                expected: self.ground_size,
                actual: act.ground_size(),
            });
        }
        Ok(act.group().elements().all(|g| {
            self.classes.iter().all(|&c| {
                let image = act.apply_set(g, c);
                let target = self.class_set(bits::first(image).unwrap());
                image & !target == 0
            })
        }))
    }

    pub fn to_json_value(&self) -> EquivJson {
        EquivJson {
            ground_size: self.ground_size,
            classes: self.class_lists(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("relation json")
    }
}

impl Ord for EquivRelation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground_size
            .cmp(&other.ground_size)
            .then_with(|| self.class_lists().cmp(&other.class_lists()))
    }
}

impl PartialOrd for EquivRelation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bases are the pairs meeting two different classes.
pub fn rank2_matroid_from_equiv(r: &EquivRelation) -> Result<Matroid> {
    if !r.is_nontrivial() {
        return Err(Error::TrivialRelation);
    }
    let bases = bits::k_subsets(r.ground_size, 2).filter(|&p| {
        let mut it = bits::elements(p);
        let (x, y) = (it.next().unwrap(), it.next().unwrap());
        !r.related(x, y)
    });
    Matroid::from_bases(r.ground_size, bases)
}

/// `x ∼ y` iff `x = y` or `{x, y}` is dependent.
pub fn equiv_from_rank2_matroid(m: &Matroid) -> Result<EquivRelation> {
    if m.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            actual: m.rank(),
        });
    }
    let stats = m.stats();
    if !stats.loopless {
        return Err(Error::HasLoops(bits::to_vec(stats.loops)));
    }
    let n = m.ground_size();
    let pairs: Vec<(usize, usize)> = bits::k_subsets(n, 2)
        .filter(|&p| !m.is_basis(p))
        .map(|p| {
            let mut it = bits::elements(p);
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    EquivRelation::generated(n, &pairs)
}

/// All nontrivial invariant relations with their rank-2 matroids, sorted by
/// matroid.
pub fn classify_rank2(act: &GroupAction) -> Result<Vec<(EquivRelation, Matroid)>> {
    classify_rank2_with(act, DEFAULT_PARTITION_BOUND)
}

/// As [`classify_rank2`]; `partition_bound` caps the ground size for actions
/// that need the set-partition scan. Regular actions go through subgroup
/// enumeration instead and are not subject to it.
pub fn classify_rank2_with(
    act: &GroupAction,
    partition_bound: usize,
) -> Result<Vec<(EquivRelation, Matroid)>> {
    let relations = if act.is_regular() {
        invariant_relations_regular(act)?
    } else {
        invariant_relations_scan(act, partition_bound)?
    };
    let mut out = relations
        .into_iter()
        .map(|r| rank2_matroid_from_equiv(&r).map(|m| (r, m)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// Left-coset partitions of the proper subgroups.
pub fn invariant_relations_regular(act: &GroupAction) -> Result<Vec<EquivRelation>> {
    let g = act.group();
    g.enumerate_subgroups_bounded(crate::groups::MAX_ORDER)?
        .iter()
        .filter(|h| h.is_proper())
        .map(|h| EquivRelation::from_labels(g.coset_space(h)?.labels()))
        .collect()
}

/// Nontrivial invariant relations by exhaustive set-partition scan.
pub fn invariant_relations_scan(act: &GroupAction, bound: usize) -> Result<Vec<EquivRelation>> {
    let n = act.ground_size();
    if n > bound {
        return Err(Error::GroundTooLarge { size: n, bound });
    }
    let mut out = Vec::new();
    for labels in SetPartitions::new(n) {
        let r = EquivRelation::from_labels(&labels)?;
        if r.is_nontrivial() && r.is_invariant(act)? {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn closure_from_pairs() {
        let r = EquivRelation::generated(4, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(r.class_lists(), vec![vec![0, 2], vec![1, 3]]);
        let r = EquivRelation::generated(3, &[]).unwrap();
        assert_eq!(r.num_classes(), 3);
        let r = EquivRelation::generated(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(r.class_lists(), vec![vec![0, 1, 2]]);
        assert!(!r.is_nontrivial());
        assert!(matches!(
            EquivRelation::generated(3, &[(0, 3)]),
            Err(Error::OutOfRange { point: 3, .. })
        ));
    }

    #[test]
    fn explicit_classes_validation() {
        assert!(EquivRelation::from_classes(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(EquivRelation::from_classes(3, &[vec![0, 1]]).is_err());
        let r = EquivRelation::from_classes(3, &[vec![2], vec![1, 0]]).unwrap();
        assert_eq!(r.class_lists(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn rank2_from_relation() {
        let r = EquivRelation::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let m = rank2_matroid_from_equiv(&r).unwrap();
        assert_eq!(m, Matroid::from_index_lists(4, &[[0, 1], [0, 3], [1, 2], [2, 3]]).unwrap());
        let m = rank2_matroid_from_equiv(&EquivRelation::discrete(3).unwrap()).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        let single = EquivRelation::from_labels(&[0, 0, 0, 0]).unwrap();
        assert_eq!(rank2_matroid_from_equiv(&single), Err(Error::TrivialRelation));
    }

    #[test]
    fn relation_from_rank2() {
        let m = Matroid::from_index_lists(4, &[[0, 1], [1, 2], [0, 3], [2, 3]]).unwrap();
        let r = equiv_from_rank2_matroid(&m).unwrap();
        assert_eq!(r.class_lists(), vec![vec![0, 2], vec![1, 3]]);
        let r = equiv_from_rank2_matroid(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(r, EquivRelation::discrete(3).unwrap());
        assert!(matches!(
            equiv_from_rank2_matroid(&Matroid::uniform(1, 3).unwrap()),
            Err(Error::WrongRank { expected: 2, actual: 1 })
        ));
        let looped = Matroid::from_index_lists(3, &[[0, 1]]).unwrap();
        assert_eq!(equiv_from_rank2_matroid(&looped), Err(Error::HasLoops(vec![2])));
    }

    #[test]
    fn classify_regular_cyclic() {
        let count = |n: usize| classify_rank2(&FiniteGroup::cyclic(n).unwrap().regular_action()).unwrap();
        let z7 = count(7);
        assert_eq!(z7.len(), 1);
        assert_eq!(z7[0].1, Matroid::uniform(2, 7).unwrap());
        let z6 = count(6);
        assert_eq!(z6.len(), 3);
        let mut rels: Vec<Vec<Vec<usize>>> = z6.iter().map(|(r, _)| r.class_lists()).collect();
        rels.sort();
        assert_eq!(
            rels,
            vec![
                vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]],
                vec![vec![0, 2, 4], vec![1, 3, 5]],
                vec![vec![0, 3], vec![1, 4], vec![2, 5]],
            ]
        );
        assert_eq!(count(12).len(), 5);
    }

    #[test]
    fn fast_path_matches_partition_scan() {
        for desc in ["Z4", "Z6", "Z8", "Z2xZ2", "Z2xZ4", "Z9"] {
            let act = FiniteGroup::parse(desc).unwrap().regular_action();
            let mut fast = invariant_relations_regular(&act).unwrap();
            let mut slow = invariant_relations_scan(&act, 12).unwrap();
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "{desc}");
        }
        let s3 = FiniteGroup::symmetric(3).unwrap().regular_action();
        let mut fast = invariant_relations_regular(&s3).unwrap();
        let mut slow = invariant_relations_scan(&s3, 12).unwrap();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 5);
    }

    #[test]
    fn classify_coset_action() {
        // Z6 on the three cosets of {0,3}: only the discrete relation is invariant
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let h = z6.subgroup(bits::from_elements([0, 3])).unwrap();
        let act = z6.coset_space(&h).unwrap().action();
        let out = classify_rank2(&act).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1, Matroid::uniform(2, 3).unwrap());
        for (_, m) in &out {
            assert!(m.is_invariant(&act).unwrap());
        }
    }

    #[test]
    fn scan_bound() {
        let act = GroupAction::trivial(13).unwrap();
        assert!(matches!(classify_rank2(&act), Err(Error::GroundTooLarge { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let r = EquivRelation::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(r.to_json(), r#"{"ground_size":4,"classes":[[0,2],[1,3]]}"#);
        assert_eq!(EquivRelation::from_json(&r.to_json()).unwrap(), r);
    }
}
