mod common;

use common::{cyclic_regular, divisor_count};
use gmatroid::equiv::classify_rank2;
use gmatroid::oracle::{enumerate_invariant_matroids, enumerate_invariant_matroids_with, Filter, OracleConfig};
use gmatroid::rank3::{classify_rank3, enumerate_admissible_relations, matroid_from_rank3_relation};
use gmatroid::{FiniteGroup, Matroid};

fn rank2_classified(g: &FiniteGroup) -> Vec<Matroid> {
    classify_rank2(&g.regular_action()).unwrap().into_iter().map(|(_, m)| m).collect()
}

#[test]
fn rank2_cyclic() {
    for n in 3..=16 {
        let g = FiniteGroup::cyclic(n).unwrap();
        let oracle = enumerate_invariant_matroids(&g.regular_action(), 2, Filter::Loopless).unwrap();
        assert_eq!(oracle, rank2_classified(&g), "Z{n}");
        assert_eq!(oracle.len(), divisor_count(n) - 1, "Z{n}");
    }
}

#[test]
fn rank2_noncyclic() {
    for (desc, count) in [("Z2xZ2", 4), ("Z2xZ4", 7), ("Z3xZ3", 5)] {
        let g = FiniteGroup::parse(desc).unwrap();
        let oracle = enumerate_invariant_matroids(&g.regular_action(), 2, Filter::Loopless).unwrap();
        assert_eq!(oracle, rank2_classified(&g), "{desc}");
        assert_eq!(oracle.len(), count, "{desc}");
    }
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let oracle = enumerate_invariant_matroids(&s3.regular_action(), 2, Filter::Loopless).unwrap();
    assert_eq!(oracle, rank2_classified(&s3));
    assert_eq!(oracle.len(), 5);
}

#[test]
fn rank2_coset_action() {
    // Z6 acting on its three cosets of {0, 3}: only the discrete relation survives
    let g = FiniteGroup::cyclic(6).unwrap();
    let cs = g.coset_space(&g.subgroup(0b001001).unwrap()).unwrap();
    let act = cs.action();
    let oracle = enumerate_invariant_matroids(&act, 2, Filter::Loopless).unwrap();
    let classified: Vec<Matroid> = classify_rank2(&act).unwrap().into_iter().map(|(_, m)| m).collect();
    assert_eq!(oracle, classified);
    assert_eq!(oracle, vec![Matroid::uniform(2, 3).unwrap()]);
}

#[test]
fn rank3_primes() {
    for p in [5, 7, 11, 13] {
        let g = FiniteGroup::cyclic(p).unwrap();
        let act = g.regular_action();
        let cs = g.coset_space(&g.trivial_subgroup()).unwrap();
        let mut simple: Vec<Matroid> = enumerate_admissible_relations(&cs)
            .unwrap()
            .iter()
            .map(|r| matroid_from_rank3_relation(r).unwrap())
            .collect();
        simple.sort();
        assert_eq!(enumerate_invariant_matroids(&act, 3, Filter::Simple).unwrap(), simple, "Z{p}");
        let all: Vec<Matroid> = classify_rank3(&g).unwrap().into_iter().map(|e| e.matroid).collect();
        assert_eq!(enumerate_invariant_matroids(&act, 3, Filter::All).unwrap(), all, "Z{p}");
    }
}

#[test]
fn rank3_with_subgroups() {
    for desc in ["Z4", "Z6", "Z8", "Z9", "Z10", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ6"] {
        let g = FiniteGroup::parse(desc).unwrap();
        let entries = classify_rank3(&g).unwrap();
        let all: Vec<Matroid> = entries.iter().map(|e| e.matroid.clone()).collect();
        let oracle = enumerate_invariant_matroids(&g.regular_action(), 3, Filter::All).unwrap();
        assert_eq!(oracle, all, "{desc}");
        let simple: Vec<Matroid> = all.iter().filter(|m| m.is_simple()).cloned().collect();
        assert_eq!(enumerate_invariant_matroids(&g.regular_action(), 3, Filter::Simple).unwrap(), simple);
        for e in &entries {
            assert_eq!(e.matroid.is_simple(), e.subgroup.is_trivial(), "{desc}");
        }
    }
}

#[test]
fn rank3_symmetric_group() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let all: Vec<Matroid> = classify_rank3(&g).unwrap().into_iter().map(|e| e.matroid).collect();
    let oracle = enumerate_invariant_matroids(&g.regular_action(), 3, Filter::All).unwrap();
    assert_eq!(oracle, all);
}

#[test]
fn deterministic_across_workers() {
    let act = cyclic_regular(11);
    let runs: Vec<Vec<Matroid>> = [1, 2, 3, 8]
        .iter()
        .map(|&w| {
            let config = OracleConfig { workers: Some(w), ..OracleConfig::default() };
            enumerate_invariant_matroids_with(&act, 3, Filter::All, &config).unwrap()
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn oracle_output_is_invariant_and_valid() {
    for n in [6, 8, 9] {
        let act = cyclic_regular(n);
        for k in 1..=4 {
            for m in enumerate_invariant_matroids(&act, k, Filter::All).unwrap() {
                assert_eq!(m.rank(), k);
                assert!(m.is_invariant(&act).unwrap());
                assert_eq!(Matroid::from_bases(n, m.bases().iter().copied()).unwrap(), m);
            }
        }
    }
}
