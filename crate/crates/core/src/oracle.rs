//! Brute-force enumeration of invariant matroids.
//!
//! An invariant basis family is a union of orbits of `k`-subsets, so every
//! union of orbits is tested against the exchange axiom directly. Nothing
//! here consults the classification modules.

use std::collections::HashMap;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::{self, Set};
use crate::error::{Error, Result};
use crate::groups::GroupAction;
use crate::matroid::Matroid;

/// Bound on `C(n, k)` for orbit computation.
pub const MAX_SUBSETS: u128 = 2_000_000;
/// Default bound on the number of orbits (the search visits `2^orbits` masks).
pub const DEFAULT_MAX_ORBITS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Least member.
    pub rep: Set,
    /// Sorted members.
    pub members: Vec<Set>,
}

#[derive(Clone, Debug)]
pub struct OrbitFamily {
    pub ground_size: usize,
    pub k: usize,
    pub orbits: Vec<Orbit>,
    orbit_of: HashMap<Set, usize>,
}

impl OrbitFamily {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, s: Set) -> Option<usize> {
        self.orbit_of.get(&s).copied()
    }
}

/// Groups all `k`-subsets of the ground set into orbits, ordered by
/// representative.
pub fn subset_orbits(act: &GroupAction, k: usize) -> Result<OrbitFamily> {
    let n = act.ground_size();
    if k > n {
        return Err(Error::InvalidParams(format!("subset size {k} exceeds ground size {n}")));
    }
    let count = bits::binomial(n, k);
    if count > MAX_SUBSETS {
        return Err(Error::TooManySubsets {
            count,
            bound: MAX_SUBSETS,
        });
    }
    let gens: Vec<usize> = act.group().elements().collect();
    let mut orbit_of = HashMap::with_capacity(count as usize);
    let mut orbits = Vec::new();
    for s in bits::k_subsets(n, k) {
        if orbit_of.contains_key(&s) {
            continue;
        }
        let mut members: Vec<Set> = gens.iter().map(|&g| act.apply_set(g, s)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            orbit_of.insert(m, orbits.len());
        }
        orbits.push(Orbit { rep: s, members });
    }
    Ok(OrbitFamily {
        ground_size: n,
        k,
        orbits,
        orbit_of,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Loopless,
    Simple,
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "loopless" => Ok(Filter::Loopless),
            "simple" => Ok(Filter::Simple),
            _ => Err(Error::BadInput(format!("unknown filter {s:?}"))),
        }
    }
}

impl Filter {
    pub fn accepts(self, m: &Matroid) -> bool {
        match self {
            Filter::All => true,
            Filter::Loopless => m.is_loopless(),
            Filter::Simple => m.is_simple(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_orbits: usize,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_orbits: DEFAULT_MAX_ORBITS,
            workers: None,
        }
    }
}

/// For orbits `i, j` in a candidate: every mask in `req[i * m + j]` must meet
/// the candidate. A mask lists the orbits of the sets `B1 − x + y`
/// (`y ∈ B2 \ B1`) for the representative `B1` of orbit `i`, some `B2` in
/// orbit `j` and `x ∈ B1 \ B2`. Invariance reduces `B1` to representatives.
fn exchange_requirements(fam: &OrbitFamily) -> Vec<Vec<u32>> {
    let m = fam.len();
    let mut req = vec![Vec::new(); m * m];
    for (i, oi) in fam.orbits.iter().enumerate() {
        let b1 = oi.rep;
        for (j, oj) in fam.orbits.iter().enumerate() {
            let masks = &mut req[i * m + j];
            for &b2 in &oj.members {
                for x in bits::elements(b1 & !b2) {
                    let mask = bits::elements(b2 & !b1).fold(0u32, |acc, y| {
                        let s = (b1 & !bits::singleton(x)) | bits::singleton(y);
                        acc | 1 << fam.orbit_of(s).expect("k-subset has an orbit")
                    });
                    masks.push(mask);
                }
            }
            masks.sort_unstable_by_key(|&mk| (mk.count_ones(), mk));
            masks.dedup();
            let mut minimal: Vec<u32> = Vec::new();
            for &mk in masks.iter() {
                if !minimal.iter().any(|&q| q & !mk == 0) {
                    minimal.push(mk);
                }
            }
            *masks = minimal;
        }
    }
    req
}

fn passes(req: &[Vec<u32>], m: usize, cand: u32) -> bool {
    let mut ci = cand;
    while ci != 0 {
        let i = ci.trailing_zeros() as usize;
        ci &= ci - 1;
        let mut cj = cand;
        while cj != 0 {
            let j = cj.trailing_zeros() as usize;
            cj &= cj - 1;
            if req[i * m + j].iter().any(|&mk| mk & cand == 0) {
                return false;
            }
        }
    }
    true
}

/// Every `act`-invariant rank-`k` matroid on the ground set that satisfies
/// `filter`, in canonical order.
pub fn enumerate_invariant_matroids(act: &GroupAction, k: usize, filter: Filter) -> Result<Vec<Matroid>> {
    enumerate_invariant_matroids_with(act, k, filter, &OracleConfig::default())
}

pub fn enumerate_invariant_matroids_with(
    act: &GroupAction,
    k: usize,
    filter: Filter,
    config: &OracleConfig,
) -> Result<Vec<Matroid>> {
    let fam = subset_orbits(act, k)?;
    let m = fam.len();
    let bound = config.max_orbits.min(31);
    if m > bound {
        return Err(Error::TooManyOrbits { count: m, bound });
    }
    let run = || search(&fam, filter);
    match config.workers {
        None => run(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(run),
    }
}

fn search(fam: &OrbitFamily, filter: Filter) -> Result<Vec<Matroid>> {
    let m = fam.len();
    let n = fam.ground_size;
    let req = exchange_requirements(fam);
    let support: Vec<Set> = fam
        .orbits
        .iter()
        .map(|o| o.members.iter().fold(0, |acc, &s| acc | s))
        .collect();
    let full = bits::full(n);
    let need_cover = filter != Filter::All;
    let found: Vec<u32> = (1u32..1u32 << m)
        .into_par_iter()
        .filter(|&cand| {
            if need_cover {
                let cover = bits::elements(cand as Set).fold(0, |acc, i| acc | support[i]);
                if cover != full {
                    return false;
                }
            }
            passes(&req, m, cand)
        })
        .collect();
    let mut out = found
        .into_par_iter()
        .map(|cand| {
            let bases = bits::elements(cand as Set).flat_map(|i| fam.orbits[i].members.iter().copied());
            Matroid::from_bases(n, bases)
                .map_err(|e| Error::Internal(format!("orbit union {cand:#b} failed revalidation: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    out.retain(|mt| filter.accepts(mt));
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    fn regular(n: usize) -> GroupAction {
        FiniteGroup::cyclic(n).unwrap().regular_action()
    }

    #[test]
    fn orbit_counts() {
        let o = subset_orbits(&regular(7), 3).unwrap();
        assert_eq!(o.len(), 5);
        assert!(o.orbits.iter().all(|x| x.members.len() == 7));
        let o = subset_orbits(&regular(4), 2).unwrap();
        let lists: Vec<Vec<Set>> = o.orbits.iter().map(|x| x.members.clone()).collect();
        assert_eq!(lists, vec![vec![0b0011, 0b0110, 0b1001, 0b1100], vec![0b0101, 0b1010]]);
        assert_eq!(subset_orbits(&regular(4), 3).unwrap().len(), 1);
        assert_eq!(subset_orbits(&regular(4), 0).unwrap().orbits[0].members, vec![0]);
    }

    #[test]
    fn orbit_errors() {
        let big = GroupAction::trivial(64).unwrap();
        assert!(matches!(subset_orbits(&big, 32), Err(Error::TooManySubsets { .. })));
        assert!(matches!(subset_orbits(&regular(4), 5), Err(Error::InvalidParams(_))));
        let act = GroupAction::trivial(8).unwrap();
        assert_eq!(
            enumerate_invariant_matroids(&act, 4, Filter::All),
            Err(Error::TooManyOrbits { count: 70, bound: 24 })
        );
    }

    #[test]
    fn small_oracle_runs() {
        let z7 = enumerate_invariant_matroids(&regular(7), 3, Filter::Simple).unwrap();
        assert_eq!(z7.len(), 3);
        assert!(z7.contains(&Matroid::uniform(3, 7).unwrap()));
        assert!(z7.iter().filter(|m| m.num_bases() == 28).count() == 2);
        let z7 = enumerate_invariant_matroids(&regular(7), 2, Filter::Loopless).unwrap();
        assert_eq!(z7, vec![Matroid::uniform(2, 7).unwrap()]);
        let z4 = enumerate_invariant_matroids(&regular(4), 2, Filter::Loopless).unwrap();
        let example = Matroid::from_index_lists(4, &[[0, 1], [1, 2], [0, 3], [2, 3]]).unwrap();
        assert_eq!(z4.len(), 2);
        assert!(z4.contains(&example) && z4.contains(&Matroid::uniform(2, 4).unwrap()));
    }

    #[test]
    fn matches_every_subset_family() {
        // all 2^15 families of 2-subsets of 6 points with the trivial group
        let act = GroupAction::trivial(6).unwrap();
        let all = enumerate_invariant_matroids(&act, 2, Filter::All).unwrap();
        let pairs: Vec<Set> = bits::k_subsets(6, 2).collect();
        let mut expected = Vec::new();
        for mask in 1u32..1 << pairs.len() {
            let fam: Vec<Set> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            if let Ok(m) = Matroid::from_bases(6, fam) {
                expected.push(m);
            }
        }
        expected.sort();
        assert_eq!(all, expected);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let act = regular(9);
        let one = OracleConfig { workers: Some(1), ..OracleConfig::default() };
        let four = OracleConfig { workers: Some(4), ..OracleConfig::default() };
        let a = enumerate_invariant_matroids_with(&act, 3, Filter::All, &one).unwrap();
        let b = enumerate_invariant_matroids_with(&act, 3, Filter::All, &four).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn filters_parse() {
        assert_eq!("simple".parse::<Filter>().unwrap(), Filter::Simple);
        assert!("nope".parse::<Filter>().is_err());
    }
}
