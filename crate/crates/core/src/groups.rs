//! Finite groups given by Cayley tables, their subgroups, left coset spaces
//! and permutation actions.
//!
//! Elements are dense indices `0..n`. Cyclic groups use index = residue and
//! direct products of cyclic groups use a mixed-radix encoding with the first
//! factor most significant, so `Z2xZ4` maps `(a, b)` to `4a + b`.

use std::path::Path;

use serde::Deserialize;

use crate::bits::{self, Set};
use crate::error::{Error, Result};

/// Largest group order representable; subgroups are stored as one-word bitsets.
pub const MAX_ORDER: usize = bits::MAX_POINTS;

/// Default bound on `|G|` for subgroup enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    // row-major: table[a * order + b] = a·b
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    abelian: bool,
}

#[derive(Deserialize)]
struct CayleyFile {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates an explicit Cayley table (`table[a][b] = a·b`).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::GroupTooLarge {
                order: n,
                bound: MAX_ORDER,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::NotAGroup(format!(
                        "{a}·{b} = {c} is not an element"
                    )));
                }
                flat.push(c);
            }
        }
        let mul = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;

        let mut inverse = vec![0; n];
        for (x, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("{x} has no inverse")))?;
        }

        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        let abelian = (0..n).all(|a| (0..n).all(|b| mul(a, b) == mul(b, a)));

        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverse,
            abelian,
        })
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::product(&[n])
    }

    /// Direct product `Z_{m0} x Z_{m1} x ...` in mixed-radix encoding.
    pub fn product(moduli: &[usize]) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::MalformedSpec(format!(
                "cyclic factors must be positive: {moduli:?}"
            )));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::GroupTooLarge {
                order: moduli.iter().fold(1usize, |a, &m| a.saturating_mul(m)),
                bound: MAX_ORDER,
            })?;
        let decode = |mut x: usize| {
            let mut digits = vec![0; moduli.len()];
            for (i, &m) in moduli.iter().enumerate().rev() {
                digits[i] = x % m;
                x /= m;
            }
            digits
        };
        let encode = |digits: &[usize]| digits.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d);
        let table = (0..order)
            .map(|a| {
                let da = decode(a);
                (0..order)
                    .map(|b| {
                        let db = decode(b);
                        let sum: Vec<usize> = da
                            .iter()
                            .zip(&db)
                            .zip(moduli)
                            .map(|((x, y), m)| (x + y) % m)
                            .collect();
                        encode(&sum)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// The symmetric group on `n` letters; permutations listed in
    /// lexicographic order, composition `(a·b)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        if perms.len() > MAX_ORDER {
            return Err(Error::GroupTooLarge {
                order: perms.len(),
                bound: MAX_ORDER,
            });
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// Parses a group descriptor: `Z<n>`, `Z<a>xZ<b>[x...]` or
    /// `cayley:<path>` naming a JSON file `{"order": n, "table": [[...]]}`.
    pub fn parse(desc: &str) -> Result<Self> {
        let desc = desc.trim();
        if let Some(path) = desc.strip_prefix("cayley:") {
            return Self::from_cayley_file(path);
        }
        let moduli = desc
            .split('x')
            .map(|factor| {
                factor
                    .trim()
                    .strip_prefix('Z')
                    .and_then(|m| m.parse::<usize>().ok())
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| Error::MalformedSpec(desc.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::product(&moduli)
    }

    pub fn from_cayley_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: CayleyFile =
            serde_json::from_str(&text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        if file.order != file.table.len() {
            return Err(Error::MalformedSpec(format!(
                "order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::from_table(file.table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a - b` in additive notation, i.e. `a·b⁻¹`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inverse[b])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: Set) -> Set {
        let mut set = gens | bits::singleton(self.identity);
        loop {
            let mut next = set;
            for a in bits::elements(set) {
                for b in bits::elements(set) {
                    next |= bits::singleton(self.mul(a, b));
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    pub fn is_subgroup(&self, members: Set) -> bool {
        if members & !bits::full(self.order) != 0 || !bits::contains(members, self.identity) {
            return false;
        }
        bits::elements(members).all(|a| {
            bits::contains(members, self.inv(a))
                && bits::elements(members).all(|b| bits::contains(members, self.mul(a, b)))
        })
    }

    pub fn subgroup(&self, members: Set) -> Result<Subgroup> {
        if !self.is_subgroup(members) {
            return Err(Error::SubgroupMismatch(format!(
                "{:?} is not a subgroup of a group of order {}",
                bits::to_vec(members),
                self.order
            )));
        }
        Ok(Subgroup {
            members,
            group_order: self.order,
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: bits::singleton(self.identity),
            group_order: self.order,
        }
    }

    /// All subgroups, sorted by size and then lexicographically.
    pub fn enumerate_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.enumerate_subgroups_bounded(DEFAULT_SUBGROUP_BOUND)
    }

    pub fn enumerate_subgroups_bounded(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order > bound {
            return Err(Error::GroupTooLarge {
                order: self.order,
                bound,
            });
        }
        // Every subgroup is reached from the trivial one by adjoining
        // generators one at a time.
        let mut found = vec![bits::singleton(self.identity)];
        let mut seen: std::collections::HashSet<Set> = found.iter().copied().collect();
        let mut i = 0;
        while i < found.len() {
            let h = found[i];
            for g in self.elements() {
                if !bits::contains(h, g) {
                    let k = self.closure(h | bits::singleton(g));
                    if seen.insert(k) {
                        found.push(k);
                    }
                }
            }
            i += 1;
        }
        found.sort_by_key(|&s| (bits::len(s), bits::lex_key(s)));
        Ok(found
            .into_iter()
            .map(|members| Subgroup {
                members,
                group_order: self.order,
            })
            .collect())
    }

    /// Left cosets `xH` of `h`, numbered by least element.
    pub fn coset_space(&self, h: &Subgroup) -> Result<CosetSpace> {
        if h.group_order != self.order || !self.is_subgroup(h.members) {
            return Err(Error::SubgroupMismatch(format!(
                "{:?} is not a subgroup of this group",
                bits::to_vec(h.members)
            )));
        }
        let mut cosets: Vec<Set> = Vec::new();
        let mut covered: Set = 0;
        for x in self.elements() {
            if bits::contains(covered, x) {
                continue;
            }
            let coset = bits::elements(h.members).fold(0, |acc, k| acc | bits::singleton(self.mul(x, k)));
            covered |= coset;
            cosets.push(coset);
        }
        let mut coset_of = vec![0; self.order];
        for (i, &c) in cosets.iter().enumerate() {
            for x in bits::elements(c) {
                coset_of[x] = i;
            }
        }
        let representatives = cosets.iter().map(|&c| bits::first(c).unwrap()).collect();
        let identity_coset = coset_of[self.identity];
        Ok(CosetSpace {
            group: self.clone(),
            subgroup: h.clone(),
            cosets,
            coset_of,
            representatives,
            identity_coset,
        })
    }

    pub fn regular_action(&self) -> GroupAction {
        GroupAction {
            group: self.clone(),
            ground_size: self.order,
            perm: self.table.clone(),
        }
    }
}

/// A subgroup stored as a member bitset over the parent's element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Set,
    group_order: usize,
}

impl Subgroup {
    pub fn members(&self) -> Set {
        self.members
    }

    pub fn order(&self) -> usize {
        bits::len(self.members)
    }

    pub fn index(&self) -> usize {
        self.group_order / self.order()
    }

    pub fn is_proper(&self) -> bool {
        self.members != bits::full(self.group_order)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        bits::contains(self.members, g)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        bits::to_vec(self.members)
    }
}

/// Left cosets of a subgroup, indexed by their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpace {
    group: FiniteGroup,
    subgroup: Subgroup,
    cosets: Vec<Set>,
    coset_of: Vec<usize>,
    representatives: Vec<usize>,
    identity_coset: usize,
}

impl CosetSpace {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Set] {
        &self.cosets
    }

    /// Number of cosets, `[G:H]`.
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Index of the coset containing `g`.
    #[inline]
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Least element of coset `c`.
    #[inline]
    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    #[inline]
    pub fn identity_coset(&self) -> usize {
        self.identity_coset
    }

    /// Coset index of `g·(aH)` where `aH` is coset `c`.
    #[inline]
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.coset_of[self.group.mul(g, self.representatives[c])]
    }

    /// The induced action `g·(aH) = (ga)H` on coset indices.
    pub fn action(&self) -> GroupAction {
        let m = self.len();
        let mut perm = Vec::with_capacity(self.group.order() * m);
        for g in self.group.elements() {
            for c in 0..m {
                perm.push(self.act(g, c));
            }
        }
        GroupAction {
            group: self.group.clone(),
            ground_size: m,
            perm,
        }
    }

    /// The partition of the group into these cosets, as labels per element.
    pub fn labels(&self) -> &[usize] {
        &self.coset_of
    }
}

/// How a group acts on a ground set.
#[derive(Clone, Debug)]
pub enum ActionKind {
    /// `G` on itself by left multiplication.
    Regular,
    /// `G` on the left cosets of a subgroup.
    Cosets(Subgroup),
    /// Explicit table: `table[g][x]` is the image of point `x` under `g`.
    Table(Vec<Vec<usize>>),
}

/// A permutation action of a finite group on `0..ground_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    ground_size: usize,
    // perm[g * ground_size + x]
    perm: Vec<usize>,
}

impl GroupAction {
    pub fn new(group: &FiniteGroup, kind: ActionKind) -> Result<Self> {
        match kind {
            ActionKind::Regular => Ok(group.regular_action()),
            ActionKind::Cosets(h) => Ok(group.coset_space(&h)?.action()),
            ActionKind::Table(rows) => Self::from_table(group, rows),
        }
    }

    /// The trivial group acting trivially on `n` points.
    pub fn trivial(n: usize) -> Result<Self> {
        let group = FiniteGroup::cyclic(1)?;
        Self::from_table(&group, vec![(0..n).collect()])
    }

    pub fn from_table(group: &FiniteGroup, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != group.order() {
            return Err(Error::NotAnAction(format!(
                "{} rows for a group of order {}",
                rows.len(),
                group.order()
            )));
        }
        let m = rows[0].len();
        if m == 0 || m > bits::MAX_POINTS {
            return Err(Error::NotAnAction(format!("unsupported ground size {m}")));
        }
        let mut perm = Vec::with_capacity(group.order() * m);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotAnAction(format!("row {g} has the wrong length")));
            }
            let image = row.iter().try_fold(0u64, |acc, &y| {
                (y < m && !bits::contains(acc, y)).then(|| acc | bits::singleton(y))
            });
            if image != Some(bits::full(m)) {
                return Err(Error::NotAnAction(format!("perm({g}, ·) is not a bijection")));
            }
            perm.extend_from_slice(row);
        }
        let action = GroupAction {
            group: group.clone(),
            ground_size: m,
            perm,
        };
        let e = group.identity();
        if (0..m).any(|x| action.apply(e, x) != x) {
            return Err(Error::NotAnAction("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..m {
                    if action.apply(g, action.apply(h, x)) != action.apply(gh, x) {
                        return Err(Error::NotAnAction(format!(
                            "perm({g}, perm({h}, {x})) != perm({g}·{h}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perm[g * self.ground_size + x]
    }

    /// Image of a subset under `g`.
    #[inline]
    pub fn apply_set(&self, g: usize, s: Set) -> Set {
        let row = &self.perm[g * self.ground_size..(g + 1) * self.ground_size];
        bits::elements(s).fold(0, |acc, x| acc | bits::singleton(row[x]))
    }

    /// True when this is `G` acting on itself by left multiplication.
    pub fn is_regular(&self) -> bool {
        self.ground_size == self.group.order()
            && self
                .group
                .elements()
                .all(|g| self.group.elements().all(|x| self.apply(g, x) == self.group.mul(g, x)))
    }

    pub fn permutations(&self) -> impl Iterator<Item = &[usize]> {
        self.perm.chunks(self.ground_size)
    }
}
