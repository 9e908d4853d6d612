//! Distinct difference systems, modular Golomb rulers and the quadratic
//! residue construction.
//!
//! Groups here are abelian and written additively: `x − y` is
//! `FiniteGroup::sub(x, y)`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Set};
use crate::equiv::EquivRelation;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::matroid::{Matroid, MAX_UNIFORM_BASES};
use crate::rank3::check_rank3_conditions;

/// A family of subsets of an abelian group, each containing 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSystem {
    descriptor: String,
    group: FiniteGroup,
    sets: Vec<Set>,
}

/// The first failed defining condition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DdsViolation {
    /// `S_i` has no element besides 0.
    TooSmall { set: usize },
    /// `S_i ∩ S_j` is larger than `{0}`.
    Overlap { i: usize, j: usize, common: Vec<usize> },
    /// `x − y = z − w` with `x, y ∈ S_i`, `z, w ∈ S_j` and `(x, y) ≠ (z, w)`.
    RepeatedDifference {
        i: usize,
        x: usize,
        y: usize,
        j: usize,
        z: usize,
        w: usize,
    },
}

impl fmt::Display for DdsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DdsViolation::TooSmall { set } => write!(f, "set {set} has no nonzero element"),
            DdsViolation::Overlap { i, j, common } => {
                write!(f, "sets {i} and {j} intersect in {common:?}")
            }
            DdsViolation::RepeatedDifference { i, x, y, j, z, w } => write!(
                f,
                "{x}-{y} (set {i}) = {z}-{w} (set {j}) with ({x},{y}) != ({z},{w})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DdsCheck {
    Valid,
    Invalid(DdsViolation),
}

impl DdsCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, DdsCheck::Valid)
    }
}

fn check_members(a: &FiniteGroup, sets: &[Set]) -> Result<()> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let full = bits::full(a.order());
    for (i, &s) in sets.iter().enumerate() {
        if s & !full != 0 {
            return Err(Error::OutOfRange {
                point: bits::first(s & !full).unwrap(),
                ground_size: a.order(),
            });
        }
        if !bits::contains(s, a.identity()) {
            return Err(Error::MissingZero(i));
        }
    }
    Ok(())
}

/// Checks the three defining conditions: every set has a nonzero element,
/// sets pairwise meet only in 0, and every difference `x − y` (`x ≠ y` in
/// one set) arises from a single ordered pair across the whole family.
pub fn is_valid_dds(a: &FiniteGroup, sets: &[Set]) -> Result<DdsCheck> {
    check_members(a, sets)?;
    let zero = bits::singleton(a.identity());
    for (i, &s) in sets.iter().enumerate() {
        if s == zero {
            return Ok(DdsCheck::Invalid(DdsViolation::TooSmall { set: i }));
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let common = sets[i] & sets[j];
            if common != zero {
                return Ok(DdsCheck::Invalid(DdsViolation::Overlap {
                    i,
                    j,
                    common: bits::to_vec(common),
                }));
            }
        }
    }
    let mut seen: Vec<Option<(usize, usize, usize)>> = vec![None; a.order()];
    for (i, &s) in sets.iter().enumerate() {
        for y in bits::elements(s) {
            for x in bits::elements(s).filter(|&x| x != y) {
                let d = a.sub(x, y);
                match seen[d] {
                    Some((j, z, w)) => {
                        return Ok(DdsCheck::Invalid(DdsViolation::RepeatedDifference {
                            i: j,
                            x: z,
                            y: w,
                            j: i,
                            z: x,
                            w: y,
                        }))
                    }
                    None => seen[d] = Some((i, x, y)),
                }
            }
        }
    }
    Ok(DdsCheck::Valid)
}

fn cyclic_descriptor(a: &FiniteGroup) -> String {
    match FiniteGroup::cyclic(a.order()) {
        Ok(z) if &z == a => format!("Z{}", a.order()),
        _ => format!("group of order {}", a.order()),
    }
}

#[derive(Serialize, Deserialize)]
pub struct DdsJson {
    pub group: String,
    pub sets: Vec<Vec<usize>>,
}

impl DifferenceSystem {
    /// Validates `sets` as a distinct difference system in `a`.
    pub fn new(a: &FiniteGroup, sets: Vec<Set>) -> Result<Self> {
        Self::with_descriptor(cyclic_descriptor(a), a, sets)
    }

    fn with_descriptor(descriptor: String, a: &FiniteGroup, sets: Vec<Set>) -> Result<Self> {
        match is_valid_dds(a, &sets)? {
            DdsCheck::Valid => Ok(DifferenceSystem {
                descriptor,
                group: a.clone(),
                sets,
            }),
            DdsCheck::Invalid(v) => Err(Error::InvalidDds(v.to_string())),
        }
    }

    pub fn cyclic<S: AsRef<[usize]>>(n: usize, sets: &[S]) -> Result<Self> {
        let a = FiniteGroup::cyclic(n)?;
        let sets = sets
            .iter()
            .map(|s| to_set(n, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::with_descriptor(format!("Z{n}"), &a, sets)
    }

    /// Parses `"<group>:{a,b,c}[;{...}]"`, e.g. `"Z7:{0,1,3}"`.
    pub fn parse(desc: &str) -> Result<Self> {
        let desc = desc.trim();
        let split = desc
            .find(":{")
            .ok_or_else(|| Error::MalformedSpec(format!("expected <group>:{{...}}: {desc}")))?;
        let group_desc = desc[..split].trim();
        let a = FiniteGroup::parse(group_desc)?;
        let sets = desc[split + 1..]
            .split(';')
            .map(|part| {
                let inner = part
                    .trim()
                    .strip_prefix('{')
                    .and_then(|p| p.strip_suffix('}'))
                    .ok_or_else(|| Error::MalformedSpec(format!("bad set: {part}")))?;
                let elems = inner
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::MalformedSpec(format!("bad element: {t}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                to_set(a.order(), &elems)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_descriptor(group_desc.to_string(), &a, sets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: DdsJson = serde_json::from_str(text)?;
        let a = FiniteGroup::parse(&j.group)?;
        let sets = j
            .sets
            .iter()
            .map(|s| to_set(a.order(), s))
            .collect::<Result<Vec<_>>>()?;
        Self::with_descriptor(j.group, &a, sets)
    }

    pub fn to_json_value(&self) -> DdsJson {
        DdsJson {
            group: self.descriptor.clone(),
            sets: self.set_lists(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn sets(&self) -> &[Set] {
        &self.sets
    }

    pub fn set_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&s| bits::to_vec(s)).collect()
    }
}

impl fmt::Display for DifferenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.descriptor)?;
        for (i, s) in self.set_lists().iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let parts: Vec<String> = s.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

fn to_set(n: usize, elems: &[usize]) -> Result<Set> {
    if let Some(&x) = elems.iter().find(|&&x| x >= n) {
        return Err(Error::OutOfRange {
            point: x,
            ground_size: n,
        });
    }
    Ok(bits::from_elements(elems.iter().copied()))
}

/// `T_{i,z} = {x − z : x ∈ S_i, x ≠ z}` for every `z ∈ S_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateSet {
    pub set: usize,
    pub z: usize,
    pub elements: Set,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateFamily {
    pub entries: Vec<TranslateSet>,
}

impl TranslateFamily {
    /// Union of all translate sets.
    pub fn union(&self) -> Set {
        self.entries.iter().fold(0, |acc, t| acc | t.elements)
    }
}

pub fn translate_family(d: &DifferenceSystem) -> Result<TranslateFamily> {
    let a = &d.group;
    let mut entries = Vec::new();
    let mut covered: Set = 0;
    for (i, &s) in d.sets.iter().enumerate() {
        for z in bits::elements(s) {
            let t = bits::elements(s)
                .filter(|&x| x != z)
                .fold(0, |acc, x| acc | bits::singleton(a.sub(x, z)));
            if t & covered != 0 {
                return Err(Error::DisjointnessViolated(format!(
                    "T({i},{z}) = {:?} meets an earlier translate set",
                    bits::to_vec(t)
                )));
            }
            covered |= t;
            entries.push(TranslateSet {
                set: i,
                z,
                elements: t,
            });
        }
    }
    Ok(TranslateFamily { entries })
}

/// `S + x`.
fn translate(a: &FiniteGroup, s: Set, x: usize) -> Set {
    bits::elements(s).fold(0, |acc, y| acc | bits::singleton(a.mul(y, x)))
}

/// Rank-`k` matroid on `A` whose bases are the `k`-subsets that are not
/// translates of subsets of any `S_i`.
pub fn matroid_from_dds(d: &DifferenceSystem, k: usize) -> Result<Matroid> {
    if k < 3 {
        return Err(Error::RankTooSmall(k));
    }
    let a = &d.group;
    let n = a.order();
    if n < k {
        return Err(Error::GroupTooSmall { order: n, rank: k });
    }
    let count = bits::binomial(n, k);
    if count > MAX_UNIFORM_BASES {
        return Err(Error::TooManySubsets {
            count,
            bound: MAX_UNIFORM_BASES,
        });
    }
    let mut dependent: HashSet<Set> = HashSet::new();
    for &s in d.sets.iter().filter(|&&s| bits::len(s) >= k) {
        let members = bits::to_vec(s);
        for pick in bits::k_subsets(members.len(), k) {
            let sub = bits::elements(pick).fold(0, |acc, p| acc | bits::singleton(members[p]));
            for x in a.elements() {
                dependent.insert(translate(a, sub, x));
            }
        }
    }
    Matroid::from_bases(n, bits::k_subsets(n, k).filter(|t| !dependent.contains(t)))
}

/// `0 ∈ S` and the differences of ordered pairs of distinct elements of `S`
/// are pairwise distinct in `Z_n`.
pub fn is_modular_golomb_ruler(n: usize, s: Set) -> bool {
    if !(1..=bits::MAX_POINTS).contains(&n) || s & !bits::full(n) != 0 || !bits::contains(s, 0) {
        return false;
    }
    let mut seen = vec![false; n];
    for x in bits::elements(s) {
        for y in bits::elements(s).filter(|&y| y != x) {
            let d = (x + n - y) % n;
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
    }
    true
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn mul_mod(a: usize, b: usize, p: usize) -> usize {
    ((a as u128 * b as u128) % p as u128) as usize
}

fn pow_mod(mut a: usize, mut e: usize, p: usize) -> usize {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
fn inv_mod(a: usize, p: usize) -> usize {
    pow_mod(a, p - 2, p)
}

fn multiplicative_order(a: usize, p: usize) -> usize {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        k += 1;
    }
    k
}

/// Elements of multiplicative order exactly 6 modulo the prime `p`.
pub fn primitive_sixth_roots(p: usize) -> Result<Vec<usize>> {
    if !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    Ok((1..p).filter(|&u| multiplicative_order(u, p) == 6).collect())
}

fn check_residue_modulus(p: usize) -> Result<()> {
    if !is_prime(p) || p % 12 != 7 {
        return Err(Error::BadModulus(p));
    }
    Ok(())
}

/// The relation pairing each square `z²` with `u·z²` on `Z_p − {0}`, and
/// the matroid in which a triple is a basis unless it is a translate of
/// `{0, α², uα²}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueConstruction {
    pub p: usize,
    pub u: usize,
    pub roots: Vec<usize>,
    /// Over all of `Z_p`, with 0 as a singleton class.
    pub relation: EquivRelation,
    pub matroid: Matroid,
}

/// Requires `p` prime with `p ≡ 7 (mod 12)`; `u` defaults to the smallest
/// primitive 6th root of unity.
pub fn residue_relation(p: usize, u: Option<usize>) -> Result<ResidueConstruction> {
    check_residue_modulus(p)?;
    if p > bits::MAX_POINTS {
        return Err(Error::GroundTooLarge {
            size: p,
            bound: bits::MAX_POINTS,
        });
    }
    let roots = primitive_sixth_roots(p)?;
    let u = match u {
        Some(u) if roots.contains(&u) => u,
        Some(u) => return Err(Error::NotPrimitiveSixthRoot { p, u }),
        None => roots[0],
    };
    let squares: Vec<usize> = (1..p).map(|z| mul_mod(z, z, p)).collect();
    let pairs: Vec<(usize, usize)> = squares.iter().map(|&s| (s, mul_mod(u, s, p))).collect();
    let relation = EquivRelation::generated(p, &pairs)?;
    let mut dependent: HashSet<Set> = HashSet::new();
    for &s in &squares {
        let us = mul_mod(u, s, p);
        for x in 0..p {
            dependent.insert(bits::from_elements([x, (x + s) % p, (x + us) % p]));
        }
    }
    let matroid = Matroid::from_bases(p, bits::k_subsets(p, 3).filter(|t| !dependent.contains(t)))?;
    Ok(ResidueConstruction {
        p,
        u,
        roots,
        relation,
        matroid,
    })
}

/// Nonzero `(a, b)` with `a² − b² ≡ x − y (mod p)`.
///
/// For `x ≠ y` this takes `a = (v(x−y) + v⁻¹)/2`, `b = ±(v(x−y) − v⁻¹)/2`
/// for the least `v ≥ 1` making both nonzero, with `b` the smaller of the
/// two roots. For `x = y` it returns `(1, 1)`.
pub fn express_as_square_difference(p: usize, x: usize, y: usize) -> Result<(usize, usize)> {
    check_residue_modulus(p)?;
    for point in [x, y] {
        if point == 0 || point >= p {
            return Err(Error::OutOfRange {
                point,
                ground_size: p,
            });
        }
    }
    if x == y {
        return Ok((1, 1));
    }
    let d = (x + p - y) % p;
    let half = inv_mod(2, p);
    for v in 1..p {
        let vd = mul_mod(v, d, p);
        let vi = inv_mod(v, p);
        let a = mul_mod((vd + vi) % p, half, p);
        let b = mul_mod((vd + p - vi) % p, half, p);
        if a != 0 && b != 0 {
            return Ok((a, b.min(p - b)));
        }
    }
    Err(Error::NoSolution(format!("{x} - {y} mod {p}")))
}

fn check_admissible(p: usize, r: &EquivRelation) -> Result<FiniteGroup> {
    if p < 3 || !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    if r.ground_size() != p {
        return Err(Error::GroundSizeMismatch {
            expected: p,
            actual: r.ground_size(),
        });
    }
    let a = FiniteGroup::cyclic(p)?;
    let cs = a.coset_space(&a.trivial_subgroup())?;
    match check_rank3_conditions(&cs, r) {
        Ok(true) => Ok(a),
        _ => Err(Error::NotAdmissible),
    }
}

/// A maximal system of sets `class ∪ {0}`: classes are taken in order of
/// their least element and kept whenever the system stays distinct.
/// `r` lives on all of `Z_p` with 0 as a singleton class.
pub fn dds_from_relation(p: usize, r: &EquivRelation) -> Result<DifferenceSystem> {
    let a = check_admissible(p, r)?;
    let mut sets: Vec<Set> = Vec::new();
    for &class in r.classes().iter().filter(|&&c| !bits::contains(c, 0)) {
        sets.push(class | 1);
        if !is_valid_dds(&a, &sets)?.is_valid() {
            sets.pop();
        }
    }
    DifferenceSystem::with_descriptor(format!("Z{p}"), &a, sets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    Dds,
    /// `S1 − a = S2 − b`.
    Translate { a: usize, b: usize },
}

/// For sets `S1, S2` of the form `class ∪ {0}` of an admissible relation
/// on `Z_p`: either `{S1, S2}` is a distinct difference system or
/// `S1 − a = S2 − b` for some `a ∈ S1`, `b ∈ S2`.
pub fn dichotomy(p: usize, r: &EquivRelation, s1: Set, s2: Set) -> Result<Dichotomy> {
    let a = check_admissible(p, r)?;
    for s in [s1, s2] {
        let rest = s & !1;
        let ok = bits::contains(s, 0)
            && rest != 0
            && s & !bits::full(p) == 0
            && r.class_set(bits::first(rest).unwrap()) == rest;
        if !ok {
            return Err(Error::BadInput(format!(
                "{:?} is not an equivalence class together with 0",
                bits::to_vec(s)
            )));
        }
    }
    if is_valid_dds(&a, &[s1, s2])?.is_valid() {
        return Ok(Dichotomy::Dds);
    }
    for b in bits::elements(s2) {
        let shifted2 = translate(&a, s2, a.inv(b));
        for x in bits::elements(s1) {
            if translate(&a, s1, a.inv(x)) == shifted2 {
                return Ok(Dichotomy::Translate { a: x, b });
            }
        }
    }
    Err(Error::Internal(format!(
        "neither a difference system nor translates: {:?}, {:?}",
        bits::to_vec(s1),
        bits::to_vec(s2)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank3::dependent_triples;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn set(e: &[usize]) -> Set {
        bits::from_elements(e.iter().copied())
    }

    fn fano_relation() -> EquivRelation {
        EquivRelation::from_classes(7, &[vec![0], vec![1, 3], vec![2, 6], vec![4, 5]]).unwrap()
    }

    #[test]
    fn validity_and_witnesses() {
        assert!(is_valid_dds(&z(7), &[set(&[0, 1, 3])]).unwrap().is_valid());
        assert_eq!(
            is_valid_dds(&z(7), &[set(&[0, 1, 2])]).unwrap(),
            DdsCheck::Invalid(DdsViolation::RepeatedDifference { i: 0, x: 1, y: 0, j: 0, z: 2, w: 1 })
        );
        assert_eq!(
            is_valid_dds(&z(7), &[set(&[0, 1, 3]), set(&[0, 1, 5])]).unwrap(),
            DdsCheck::Invalid(DdsViolation::Overlap { i: 0, j: 1, common: vec![0, 1] })
        );
        assert_eq!(
            is_valid_dds(&z(7), &[set(&[0])]).unwrap(),
            DdsCheck::Invalid(DdsViolation::TooSmall { set: 0 })
        );
    }

    #[test]
    fn validity_errors() {
        assert_eq!(is_valid_dds(&z(7), &[set(&[1, 3])]), Err(Error::MissingZero(0)));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(is_valid_dds(&s3, &[set(&[0, 1])]), Err(Error::NotAbelian));
        assert!(matches!(DifferenceSystem::cyclic(7, &[[0, 1, 2]]), Err(Error::InvalidDds(_))));
    }

    #[test]
    fn translate_sets() {
        let d = DifferenceSystem::cyclic(7, &[[0, 1, 3]]).unwrap();
        let t: Vec<(usize, Vec<usize>)> = translate_family(&d)
            .unwrap()
            .entries
            .iter()
            .map(|e| (e.z, bits::to_vec(e.elements)))
            .collect();
        assert_eq!(t, vec![(0, vec![1, 3]), (1, vec![2, 6]), (3, vec![4, 5])]);

        let d = DifferenceSystem::cyclic(5, &[vec![0, 1], vec![0, 2]]).unwrap();
        let fam = translate_family(&d).unwrap();
        let t: Vec<Set> = fam.entries.iter().map(|e| e.elements).collect();
        assert_eq!(t, vec![set(&[1]), set(&[4]), set(&[2]), set(&[3])]);
        assert_eq!(fam.union(), set(&[1, 2, 3, 4]));

        let d = DifferenceSystem::cyclic(7, &[[0, 1]]).unwrap();
        assert_eq!(translate_family(&d).unwrap().union(), set(&[1, 6]));
    }

    #[test]
    fn dds_matroids() {
        let d = DifferenceSystem::cyclic(7, &[[0, 1, 3]]).unwrap();
        let fano = matroid_from_dds(&d, 3).unwrap();
        assert_eq!(fano.num_bases(), 28);
        let lines: Vec<Set> = {
            let mut v: Vec<Set> = (0..7).map(|x| set(&[x, (x + 1) % 7, (x + 3) % 7])).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(dependent_triples(&fano), lines);
        assert_eq!(matroid_from_dds(&d, 4).unwrap(), Matroid::uniform(4, 7).unwrap());

        let d = DifferenceSystem::cyclic(13, &[[0, 1, 3, 9]]).unwrap();
        assert_eq!(matroid_from_dds(&d, 3).unwrap().num_bases(), 234);
    }

    #[test]
    fn dds_matroid_errors() {
        let d = DifferenceSystem::cyclic(7, &[[0, 1, 3]]).unwrap();
        assert_eq!(matroid_from_dds(&d, 2), Err(Error::RankTooSmall(2)));
        let d = DifferenceSystem::cyclic(3, &[[0, 1]]).unwrap();
        assert_eq!(matroid_from_dds(&d, 4), Err(Error::GroupTooSmall { order: 3, rank: 4 }));
    }

    #[test]
    fn golomb_rulers() {
        assert!(is_modular_golomb_ruler(7, set(&[0, 1, 3])));
        assert!(is_modular_golomb_ruler(5, set(&[0, 1])));
        assert!(!is_modular_golomb_ruler(7, set(&[0, 1, 2])));
        assert!(!is_modular_golomb_ruler(7, set(&[1, 3])));
        assert!(is_modular_golomb_ruler(13, set(&[0, 1, 3, 9])));
    }

    #[test]
    fn sixth_roots() {
        assert_eq!(primitive_sixth_roots(7).unwrap(), vec![3, 5]);
        assert_eq!(primitive_sixth_roots(19).unwrap(), vec![8, 12]);
        assert_eq!(primitive_sixth_roots(5).unwrap(), Vec::<usize>::new());
        assert_eq!(primitive_sixth_roots(9), Err(Error::BadModulus(9)));
    }

    #[test]
    fn residue_constructions() {
        let r = residue_relation(7, Some(3)).unwrap();
        assert_eq!(r.relation, fano_relation());
        assert_eq!(r.matroid.num_bases(), 28);
        assert_eq!(r.roots, vec![3, 5]);
        assert_eq!(residue_relation(7, None).unwrap().u, 3);

        let r = residue_relation(7, Some(5)).unwrap();
        assert_eq!(r.relation.class_lists(), vec![vec![0], vec![1, 5], vec![2, 3], vec![4, 6]]);

        let r = residue_relation(19, Some(8)).unwrap();
        assert_eq!(r.relation.num_classes(), 10);
        assert_eq!(bits::to_vec(r.relation.class_set(1)), vec![1, 8]);
        assert!(r.relation.classes().iter().all(|&c| bits::len(c) == 2 || c == 1));

        assert_eq!(residue_relation(13, None), Err(Error::BadModulus(13)));
        assert_eq!(residue_relation(7, Some(2)), Err(Error::NotPrimitiveSixthRoot { p: 7, u: 2 }));
        assert!(matches!(residue_relation(67, None), Err(Error::GroundTooLarge { .. })));
    }

    #[test]
    fn square_differences() {
        assert_eq!(express_as_square_difference(7, 3, 1).unwrap(), (5, 3));
        assert_eq!(express_as_square_difference(7, 1, 1).unwrap(), (1, 1));
        assert_eq!(express_as_square_difference(19, 2, 1).unwrap(), (6, 4));
        for p in [7, 19, 31, 43] {
            for x in 1..p {
                for y in 1..p {
                    let (a, b) = express_as_square_difference(p, x, y).unwrap();
                    assert!(a != 0 && b != 0 && a < p && b < p);
                    assert_eq!((a * a + p * p - b * b) % p, (x + p - y) % p);
                }
            }
        }
        assert_eq!(express_as_square_difference(11, 1, 2), Err(Error::BadModulus(11)));
        assert!(matches!(express_as_square_difference(7, 0, 2), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn greedy_systems() {
        let d = dds_from_relation(7, &fano_relation()).unwrap();
        assert_eq!(d.set_lists(), vec![vec![0, 1, 3]]);
        let d = dds_from_relation(5, &EquivRelation::discrete(5).unwrap()).unwrap();
        assert_eq!(d.set_lists(), vec![vec![0, 1], vec![0, 2]]);
        let r = residue_relation(19, Some(8)).unwrap();
        let d = dds_from_relation(19, &r.relation).unwrap();
        assert_eq!(d.set_lists(), vec![vec![0, 1, 8], vec![0, 2, 5], vec![0, 4, 13]]);
        assert_eq!(translate_family(&d).unwrap().union(), bits::full(19) & !1);

        let bad = EquivRelation::from_classes(7, &[vec![0], vec![1, 6], vec![2], vec![3], vec![4], vec![5]]).unwrap();
        assert_eq!(dds_from_relation(7, &bad), Err(Error::NotAdmissible));
        assert_eq!(dds_from_relation(9, &EquivRelation::discrete(9).unwrap()), Err(Error::BadModulus(9)));
    }

    #[test]
    fn dichotomies() {
        let r = fano_relation();
        assert_eq!(
            dichotomy(7, &r, set(&[0, 1, 3]), set(&[0, 2, 6])).unwrap(),
            Dichotomy::Translate { a: 1, b: 0 }
        );
        assert_eq!(
            dichotomy(7, &r, set(&[0, 1, 3]), set(&[0, 1, 3])).unwrap(),
            Dichotomy::Translate { a: 0, b: 0 }
        );
        let d5 = EquivRelation::discrete(5).unwrap();
        assert_eq!(dichotomy(5, &d5, set(&[0, 1]), set(&[0, 2])).unwrap(), Dichotomy::Dds);
        assert!(matches!(dichotomy(7, &r, set(&[0, 1, 2]), set(&[0, 2, 6])), Err(Error::BadInput(_))));
    }

    #[test]
    fn descriptors_and_json() {
        let d = DifferenceSystem::parse("Z7:{0,1,3}").unwrap();
        assert_eq!(d.set_lists(), vec![vec![0, 1, 3]]);
        assert_eq!(d.to_string(), "Z7:{0,1,3}");
        let d = DifferenceSystem::parse("Z5:{0,1};{0,2}").unwrap();
        assert_eq!(d.to_json(), r#"{"group":"Z5","sets":[[0,1],[0,2]]}"#);
        assert_eq!(DifferenceSystem::from_json(&d.to_json()).unwrap(), d);
        assert!(matches!(DifferenceSystem::parse("Z7"), Err(Error::MalformedSpec(_))));
        assert!(matches!(DifferenceSystem::parse("Z7:{0,1,x}"), Err(Error::MalformedSpec(_))));
        assert!(matches!(DifferenceSystem::parse("Z7:{0,9}"), Err(Error::OutOfRange { .. })));
        assert_eq!(DifferenceSystem::new(&z(7), vec![set(&[0, 1, 3])]).unwrap().descriptor(), "Z7");
    }
}
