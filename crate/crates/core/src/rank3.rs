//! Rank-3 invariant matroids on coset spaces `G/H`.
//!
//! A simple rank-3 matroid on `G/H` that is invariant under `G` is the same
//! thing as a nontrivial equivalence relation `∼` on `G/H − {1̄}` with
//!
//! 1. `ā ∼ b̄`, `ā ≠ b̄` implies `a⁻¹H ∼ a⁻¹bH`;
//! 2. `ā ∼ b̄`, `h ∈ H` implies `haH ∼ hbH`.
//!
//! The triple `{ā, b̄, c̄}` is a basis iff `a⁻¹bH ≁ a⁻¹cH`. Relations are
//! stored over all coset indices with the identity coset as a singleton
//! sentinel class, so coset indices and relation points coincide.

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{self, Set};
use crate::equiv::{EquivJson, EquivRelation};
use crate::error::{Error, Result};
use crate::groups::{CosetSpace, FiniteGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::matroid::{Matroid, MatroidJson};
use crate::quotient::loopless_from_pair;

/// Bound on the number of non-identity cosets for relation enumeration.
pub const DEFAULT_QUOTIENT_BOUND: usize = 12;

// depth at which the enumeration tree is split across workers
const SPLIT_DEPTH: usize = 4;

/// An admissible relation on `G/H − {1̄}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank3Relation {
    cosets: CosetSpace,
    relation: EquivRelation,
}

/// One rank-3 `G`-invariant matroid on `G` with the data it is classified by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank3Entry {
    pub subgroup: Subgroup,
    pub relation: Rank3Relation,
    pub matroid: Matroid,
}

#[derive(Serialize)]
pub struct Rank3EntryJson {
    pub subgroup: Vec<usize>,
    pub relation: EquivJson,
    pub matroid: MatroidJson,
}

impl Rank3Entry {
    pub fn to_json_value(&self) -> Rank3EntryJson {
        Rank3EntryJson {
            subgroup: self.subgroup.to_vec(),
            relation: self.relation.relation().to_json_value(),
            matroid: self.matroid.to_json_value(),
        }
    }
}

/// Implications `a ∼ b ⟹ c ∼ d` encoding conditions (1) and (2), over
/// pairs of distinct non-identity cosets, using the least element of each
/// coset as its representative.
fn implications(cs: &CosetSpace) -> Vec<[usize; 4]> {
    let g = cs.group();
    let id = cs.identity_coset();
    let h_members: Vec<usize> = bits::elements(cs.subgroup().members())
        .filter(|&h| h != g.identity())
        .collect();
    let mut out = Vec::new();
    for a in (0..cs.len()).filter(|&c| c != id) {
        let ra = cs.representative(a);
        let ra_inv = g.inv(ra);
        for b in (0..cs.len()).filter(|&c| c != id && c != a) {
            let rb = cs.representative(b);
            out.push([a, b, cs.coset_of(ra_inv), cs.coset_of(g.mul(ra_inv, rb))]);
            for &h in &h_members {
                out.push([a, b, cs.coset_of(g.mul(h, ra)), cs.coset_of(g.mul(h, rb))]);
            }
        }
    }
    out
}

fn check_shape(cs: &CosetSpace, r: &EquivRelation) -> Result<()> {
    if cs.len() < 3 {
        return Err(Error::IndexTooSmall(cs.len()));
    }
    if r.ground_size() != cs.len() {
        return Err(Error::GroundSizeMismatch {
            expected: cs.len(),
            actual: r.ground_size(),
        });
    }
    if r.class_set(cs.identity_coset()) != bits::singleton(cs.identity_coset()) {
        return Err(Error::BadInput(
            "the identity coset must form a class of its own".into(),
        ));
    }
    Ok(())
}

/// True iff `r` is nontrivial on `G/H − {1̄}` and satisfies both conditions.
pub fn check_rank3_conditions(cs: &CosetSpace, r: &EquivRelation) -> Result<bool> {
    check_shape(cs, r)?;
    let nontrivial = r.num_classes() >= 3;
    Ok(nontrivial
        && implications(cs)
            .iter()
            .all(|&[a, b, c, d]| !r.related(a, b) || r.related(c, d)))
}

impl Rank3Relation {
    pub fn new(cs: &CosetSpace, relation: EquivRelation) -> Result<Self> {
        if !check_rank3_conditions(cs, &relation)? {
            return Err(Error::ConditionsViolated);
        }
        Ok(Rank3Relation {
            cosets: cs.clone(),
            relation,
        })
    }

    /// Builds the relation from explicit classes of non-identity cosets;
    /// the identity coset is added as its own class.
    pub fn from_classes<C: AsRef<[usize]>>(cs: &CosetSpace, classes: &[C]) -> Result<Self> {
        let mut all: Vec<Vec<usize>> = classes.iter().map(|c| c.as_ref().to_vec()).collect();
        all.push(vec![cs.identity_coset()]);
        Self::new(cs, EquivRelation::from_classes(cs.len(), &all)?)
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    /// The relation over all coset indices, identity coset as a singleton.
    pub fn relation(&self) -> &EquivRelation {
        &self.relation
    }

    /// Classes of non-identity cosets.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let id = self.cosets.identity_coset();
        self.relation
            .class_lists()
            .into_iter()
            .filter(|c| c != &[id])
            .collect()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.relation.related(a, b)
    }

    /// Basis test for the triple of cosets `aH, bH, cH` given by arbitrary
    /// group elements: distinct cosets with `a⁻¹bH ≁ a⁻¹cH`.
    pub fn is_basis_via(&self, a: usize, b: usize, c: usize) -> bool {
        let cs = &self.cosets;
        let (ca, cb, cc) = (cs.coset_of(a), cs.coset_of(b), cs.coset_of(c));
        if ca == cb || cb == cc || ca == cc {
            return false;
        }
        let g = cs.group();
        let a_inv = g.inv(a);
        !self.related(cs.coset_of(g.mul(a_inv, b)), cs.coset_of(g.mul(a_inv, c)))
    }
}

/// The simple rank-3 matroid on coset indices defined by `rel`.
pub fn matroid_from_rank3_relation(rel: &Rank3Relation) -> Result<Matroid> {
    let cs = &rel.cosets;
    let bases = bits::k_subsets(cs.len(), 3).filter(|&t| {
        let mut it = bits::elements(t);
        let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        rel.is_basis_via(cs.representative(a), cs.representative(b), cs.representative(c))
    });
    Matroid::from_bases(cs.len(), bases)
}

/// `ā ∼ b̄` iff `ā = b̄` or `{1̄, ā, b̄}` is dependent.
pub fn relation_from_rank3_matroid(cs: &CosetSpace, m: &Matroid) -> Result<Rank3Relation> {
    if m.ground_size() != cs.len() {
        return Err(Error::GroundSizeMismatch {
            expected: cs.len(),
            actual: m.ground_size(),
        });
    }
    if m.rank() != 3 {
        return Err(Error::WrongRank {
            expected: 3,
            actual: m.rank(),
        });
    }
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    if !m.is_invariant(&cs.action())? {
        return Err(Error::NotInvariant);
    }
    let id = cs.identity_coset();
    let others: Vec<usize> = (0..cs.len()).filter(|&c| c != id).collect();
    let mut pairs = Vec::new();
    for (i, &a) in others.iter().enumerate() {
        for &b in &others[i + 1..] {
            if !m.is_basis(bits::from_elements([id, a, b])) {
                pairs.push((a, b));
            }
        }
    }
    Rank3Relation::new(cs, EquivRelation::generated(cs.len(), &pairs)?)
}

struct Search {
    // non-identity cosets in enumeration order
    points: Vec<usize>,
    // position of each coset in `points` (identity: usize::MAX)
    pos: Vec<usize>,
    // implications whose last-assigned point sits at each depth
    checks: Vec<Vec<[usize; 4]>>,
    m: usize,
    id: usize,
}

impl Search {
    fn new(cs: &CosetSpace) -> Self {
        let id = cs.identity_coset();
        let points: Vec<usize> = (0..cs.len()).filter(|&c| c != id).collect();
        let mut pos = vec![usize::MAX; cs.len()];
        for (i, &p) in points.iter().enumerate() {
            pos[p] = i;
        }
        let mut checks = vec![Vec::new(); points.len()];
        for imp in implications(cs) {
            let depth = imp.iter().map(|&c| pos[c]).max().unwrap();
            // store positions rather than coset indices
            checks[depth].push(imp.map(|c| pos[c]));
        }
        Search {
            points,
            pos,
            checks,
            m: cs.len(),
            id,
        }
    }

    fn consistent(&self, labels: &[usize], depth: usize) -> bool {
        self.checks[depth]
            .iter()
            .all(|&[a, b, c, d]| labels[a] != labels[b] || labels[c] == labels[d])
    }

    /// Extends `labels` (a valid prefix) to every admissible completion.
    fn descend(&self, labels: &mut Vec<usize>, max_label: usize, out: &mut Vec<Vec<usize>>) {
        let depth = labels.len();
        if depth == self.points.len() {
            if max_label >= 1 {
                out.push(labels.clone());
            }
            return;
        }
        let limit = if depth == 0 { 0 } else { max_label + 1 };
        for l in 0..=limit {
            labels.push(l);
            if self.consistent(labels, depth) {
                self.descend(labels, max_label.max(l), out);
            }
            labels.pop();
        }
    }

    /// Valid prefixes of length `len`.
    fn prefixes(&self, len: usize) -> Vec<Vec<usize>> {
        let mut layer = vec![Vec::new()];
        for depth in 0..len {
            let mut next = Vec::new();
            for p in layer {
                let max_label = p.iter().copied().max();
                let limit = max_label.map_or(0, |m| m + 1);
                for l in 0..=limit {
                    let mut q = p.clone();
                    q.push(l);
                    if self.consistent(&q, depth) {
                        next.push(q);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn relation(&self, labels: &[usize]) -> Result<EquivRelation> {
        let full: Vec<usize> = (0..self.m)
            .map(|c| if c == self.id { usize::MAX } else { labels[self.pos[c]] })
            .collect();
        EquivRelation::from_labels(&full)
    }
}

/// All admissible relations on `G/H − {1̄}`, in canonical order.
pub fn enumerate_admissible_relations(cs: &CosetSpace) -> Result<Vec<Rank3Relation>> {
    enumerate_admissible_relations_with(cs, DEFAULT_QUOTIENT_BOUND)
}

pub fn enumerate_admissible_relations_with(
    cs: &CosetSpace,
    quotient_bound: usize,
) -> Result<Vec<Rank3Relation>> {
    if cs.len() < 3 {
        return Err(Error::IndexTooSmall(cs.len()));
    }
    if cs.len() - 1 > quotient_bound {
        return Err(Error::QuotientTooLarge {
            size: cs.len() - 1,
            bound: quotient_bound,
        });
    }
    let search = Search::new(cs);
    let split = SPLIT_DEPTH.min(search.points.len());
    let prefixes = search.prefixes(split);
    let found: Vec<Vec<usize>> = prefixes
        .into_par_iter()
        .flat_map_iter(|mut p| {
            let max_label = p.iter().copied().max().unwrap_or(0);
            let mut out = Vec::new();
            search.descend(&mut p, max_label, &mut out);
            out
        })
        .collect();
    let mut rels = found
        .iter()
        .map(|labels| {
            Ok(Rank3Relation {
                cosets: cs.clone(),
                relation: search.relation(labels)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rels.sort_by(|a, b| a.relation.cmp(&b.relation));
    Ok(rels)
}

/// Every rank-3 `G`-invariant matroid on `G`, one per (proper subgroup `H`
/// of index at least 3, admissible relation on `G/H`) pair, sorted by
/// matroid. Nontrivial `H` give non-simple matroids, lifted from the simple
/// matroid on `G/H` along the coset partition.
pub fn classify_rank3(g: &FiniteGroup) -> Result<Vec<Rank3Entry>> {
    classify_rank3_with(g, DEFAULT_SUBGROUP_BOUND, DEFAULT_QUOTIENT_BOUND)
}

pub fn classify_rank3_with(
    g: &FiniteGroup,
    group_bound: usize,
    quotient_bound: usize,
) -> Result<Vec<Rank3Entry>> {
    let mut out = Vec::new();
    for h in g.enumerate_subgroups_bounded(group_bound)? {
        if h.index() < 3 {
            continue;
        }
        let cs = g.coset_space(&h)?;
        let partition = EquivRelation::from_labels(cs.labels())?;
        for rel in enumerate_admissible_relations_with(&cs, quotient_bound)? {
            let simple = matroid_from_rank3_relation(&rel)?;
            let matroid = if h.is_trivial() {
                simple
            } else {
                loopless_from_pair(&partition, &simple)?
            };
            out.push(Rank3Entry {
                subgroup: h.clone(),
                relation: rel,
                matroid,
            });
        }
    }
    out.sort_by(|a, b| a.matroid.cmp(&b.matroid));
    Ok(out)
}

/// Matroids that occur more than once in a classification (diagnostic).
pub fn duplicate_matroids(entries: &[Rank3Entry]) -> Vec<Matroid> {
    let mut dups: Vec<Matroid> = entries
        .windows(2)
        .filter(|w| w[0].matroid == w[1].matroid)
        .map(|w| w[0].matroid.clone())
        .collect();
    dups.dedup();
    dups
}

/// Triples `{x, y, z}` that are dependent in `m`.
pub fn dependent_triples(m: &Matroid) -> Vec<Set> {
    bits::k_subsets(m.ground_size(), 3).filter(|&t| !m.is_basis(t)).collect()
}
