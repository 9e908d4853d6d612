//! Property sweeps over small groups, as run by the `props` command.

use rayon::prelude::*;

use crate::bits::{self, Set};
use crate::dds::{dds_from_relation, is_modular_golomb_ruler, is_prime, matroid_from_dds};
use crate::equiv::{classify_rank2, equiv_from_rank2_matroid, rank2_matroid_from_equiv, EquivRelation};
use crate::error::Result;
use crate::groups::FiniteGroup;
use crate::partitions::SetPartitions;
use crate::quotient::{loopless_from_pair, simple_quotient};
use crate::rank3::{
    classify_rank3, enumerate_admissible_relations, matroid_from_rank3_relation,
    relation_from_rank3_matroid, Rank3Relation,
};

/// Largest ground set for the exhaustive partition scan.
pub const SYMMETRIC_SCAN_BOUND: usize = 11;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: String,
    pub group: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    fn new(name: &str, group: &str) -> Self {
        PropertyReport {
            name: name.to_string(),
            group: group.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn trivial_quotient_relations(p: usize) -> Result<Vec<Rank3Relation>> {
    let g = FiniteGroup::cyclic(p)?;
    enumerate_admissible_relations(&g.coset_space(&g.trivial_subgroup())?)
}

fn nonzero_classes(r: &EquivRelation) -> impl Iterator<Item = Set> + '_ {
    r.classes().iter().copied().filter(|&c| !bits::contains(c, 0))
}

/// The four difference claims for admissible relations on `Z_p`.
pub fn difference_properties(p: usize) -> Result<PropertyReport> {
    let name = format!("Z{p}");
    let mut rep = PropertyReport::new("difference properties", &name);
    for rel in trivial_quotient_relations(p)? {
        let r = rel.relation();
        let neg = |x: usize| (p - x) % p;
        for x in 1..p {
            rep.check(!r.related(x, neg(x)), || format!("{x} ~ -{x} in {:?}", rel.classes()));
        }
        for x in 1..p {
            for y in (1..p).filter(|&y| y != x && r.related(x, y)) {
                let d = (y + p - x) % p;
                rep.check(!r.related(d, x), || format!("{y}-{x} lies in the class of {x}"));
                rep.check(!r.related(neg(x), neg(y)), || format!("-{x} ~ -{y} although {x} ~ {y}"));
            }
        }
        for class in nonzero_classes(r) {
            let members = bits::to_vec(class);
            for &x in &members {
                for &y in members.iter().filter(|&&y| y != x) {
                    for &z in &members {
                        for &w in members.iter().filter(|&&w| w != z) {
                            if (x + p - y) % p == (z + p - w) % p {
                                rep.check(x == z && y == w, || {
                                    format!("{x}-{y} = {z}-{w} in class {members:?}")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Every class together with 0 is a modular Golomb ruler.
pub fn golomb_corollary(p: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("golomb rulers", &format!("Z{p}"));
    for rel in trivial_quotient_relations(p)? {
        for class in nonzero_classes(rel.relation()) {
            rep.check(is_modular_golomb_ruler(p, class | 1), || {
                format!("{:?} with 0 is not a ruler", bits::to_vec(class))
            });
        }
    }
    Ok(rep)
}

/// Every class of size `k` has `k(k + 1) ≤ p`.
pub fn class_size_bound(p: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("class size bound", &format!("Z{p}"));
    for rel in trivial_quotient_relations(p)? {
        for class in nonzero_classes(rel.relation()) {
            let k = bits::len(class);
            rep.check(k * (k + 1) <= p, || format!("class {:?} has size {k}", bits::to_vec(class)));
        }
    }
    Ok(rep)
}

/// The greedy difference system of each admissible relation induces the
/// relation's matroid.
pub fn completeness(p: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("dds completeness", &format!("Z{p}"));
    for rel in trivial_quotient_relations(p)? {
        let d = dds_from_relation(p, rel.relation())?;
        let ok = matroid_from_dds(&d, 3)? == matroid_from_rank3_relation(&rel)?;
        rep.check(ok, || format!("{d} does not reproduce {:?}", rel.classes()));
    }
    Ok(rep)
}

/// For every nontrivial relation on `Z_n − {0}` with `x ∼ y, x ≠ y ⟹
/// (y − x) ∼ (−x)`, each class holding some `z` and `−z` forms a proper
/// subgroup together with 0.
pub fn symmetric_class_subgroups(n: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("symmetric classes", &format!("Z{n}"));
    if n < 3 || n - 1 > SYMMETRIC_SCAN_BOUND {
        return Ok(rep);
    }
    for labels in SetPartitions::new(n - 1) {
        let lab = |x: usize| labels[x - 1];
        if labels.iter().all(|&l| l == 0) {
            continue;
        }
        let closed = (1..n).all(|x| {
            (1..n)
                .filter(|&y| y != x && lab(x) == lab(y))
                .all(|y| lab((y + n - x) % n) == lab(n - x))
        });
        if !closed {
            continue;
        }
        for z in (1..n).filter(|&z| lab(z) == lab(n - z)) {
            let class: Set = (1..n).filter(|&x| lab(x) == lab(z)).fold(1, |acc, x| acc | bits::singleton(x));
            let subgroup = bits::elements(class)
                .all(|a| bits::elements(class).all(|b| bits::contains(class, (a + b) % n)))
                && bits::elements(class).all(|a| bits::contains(class, (n - a) % n));
            rep.check(subgroup && class != bits::full(n), || {
                format!("class of {z} with 0 is {:?}", bits::to_vec(class))
            });
        }
    }
    Ok(rep)
}

/// Relation ↔ matroid round trips for the rank-2 classification.
pub fn rank2_round_trip(g: &FiniteGroup, name: &str) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("rank 2 round trip", name);
    for (r, m) in classify_rank2(&g.regular_action())? {
        rep.check(rank2_matroid_from_equiv(&r)? == m, || format!("{r:?} maps elsewhere"));
        rep.check(equiv_from_rank2_matroid(&m)? == r, || format!("{m} does not return its relation"));
    }
    Ok(rep)
}

/// Relation ↔ matroid round trips for admissible relations on every
/// quotient of index at least 3.
pub fn rank3_round_trip(g: &FiniteGroup, name: &str) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("rank 3 round trip", name);
    for h in g.enumerate_subgroups()?.into_iter().filter(|h| h.index() >= 3) {
        let cs = g.coset_space(&h)?;
        for rel in enumerate_admissible_relations(&cs)? {
            let m = matroid_from_rank3_relation(&rel)?;
            let back = relation_from_rank3_matroid(&cs, &m)?;
            rep.check(back == rel, || format!("H = {:?}: {:?} does not return", h.to_vec(), rel.classes()));
        }
    }
    Ok(rep)
}

/// `simple_quotient` followed by `loopless_from_pair` is the identity on
/// every classified loopless matroid with a nontrivial parallel relation.
pub fn quotient_round_trip(g: &FiniteGroup, name: &str) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("quotient round trip", name);
    let mut ms: Vec<_> = classify_rank2(&g.regular_action())?.into_iter().map(|(_, m)| m).collect();
    if g.order() <= crate::groups::DEFAULT_SUBGROUP_BOUND {
        ms.extend(classify_rank3(g)?.into_iter().map(|e| e.matroid));
    }
    for m in ms {
        let q = simple_quotient(&m)?;
        let ok = !q.relation.is_nontrivial() || loopless_from_pair(&q.relation, &q.quotient)? == m;
        rep.check(ok, || format!("{m} is not rebuilt from its quotient"));
    }
    Ok(rep)
}

/// Runs every sweep that applies to `g` (named by `name`): the difference
/// sweeps for odd prime cyclic groups, the symmetric-class scan for
/// composite cyclic groups and the round trips for all groups.
pub fn sweep(g: &FiniteGroup, name: &str) -> Result<Vec<PropertyReport>> {
    let n = g.order();
    let cyclic = FiniteGroup::cyclic(n).map(|z| &z == g).unwrap_or(false);
    let mut jobs: Vec<Box<dyn Fn() -> Result<PropertyReport> + Send + Sync>> = Vec::new();
    if cyclic && n > 2 && is_prime(n) && n - 1 <= crate::rank3::DEFAULT_QUOTIENT_BOUND {
        jobs.push(Box::new(move || difference_properties(n)));
        jobs.push(Box::new(move || golomb_corollary(n)));
        jobs.push(Box::new(move || class_size_bound(n)));
        jobs.push(Box::new(move || completeness(n)));
    }
    if cyclic && n > 3 && !is_prime(n) {
        jobs.push(Box::new(move || symmetric_class_subgroups(n)));
    }
    let (ga, gb, gc) = (g.clone(), g.clone(), g.clone());
    let (na, nb, nc) = (name.to_string(), name.to_string(), name.to_string());
    jobs.push(Box::new(move || rank2_round_trip(&ga, &na)));
    if n <= crate::groups::DEFAULT_SUBGROUP_BOUND {
        jobs.push(Box::new(move || rank3_round_trip(&gb, &nb)));
    }
    jobs.push(Box::new(move || quotient_round_trip(&gc, &nc)));
    jobs.par_iter().map(|job| job()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_sweeps_pass() {
        for p in [5, 7, 11] {
            for rep in [
                difference_properties(p).unwrap(),
                golomb_corollary(p).unwrap(),
                class_size_bound(p).unwrap(),
                completeness(p).unwrap(),
            ] {
                assert!(rep.passed() && rep.checked > 0, "{rep:?}");
            }
        }
    }

    #[test]
    fn symmetric_classes() {
        for n in [4, 6, 8, 9] {
            assert!(symmetric_class_subgroups(n).unwrap().passed());
        }
        // Z4: the only admissible-type relation is discrete; 2 = -2 gives {0, 2}
        assert_eq!(symmetric_class_subgroups(4).unwrap().checked, 1);
    }

    #[test]
    fn sweep_selects_by_group() {
        let names = |g: &str| -> Vec<String> {
            sweep(&FiniteGroup::parse(g).unwrap(), g).unwrap().into_iter().map(|r| r.name).collect()
        };
        assert_eq!(names("Z7").len(), 7);
        assert!(names("Z6").contains(&"symmetric classes".to_string()));
        assert!(!names("Z2xZ2").contains(&"symmetric classes".to_string()));
        let reports = sweep(&FiniteGroup::symmetric(3).unwrap(), "S3").unwrap();
        assert!(reports.iter().all(PropertyReport::passed));
    }
}
