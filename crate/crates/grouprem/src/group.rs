//! Finite groups as dense Cayley tables, plus subsets of their elements.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use std::fmt;

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Hard cap on group order. Keeps the dense table (N^2 entries of u16) and
/// everything built on top of it at desk scale.
pub const MAX_GROUP_ORDER: usize = 4096;

/// A finite group of order N presented by its full multiplication table.
/// Elements are the indices `0..N`; `mul(a, b)` looks the product up in the
/// table. The identity, the inverse map and the abelian flag are derived
/// once at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<u16>,
    identity: u16,
    inverse: Vec<u16>,
    abelian: bool,
    name: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, order {})", self.name, self.order)
    }
}

/// First group-axiom failure found in a table, with the witness elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    EntryOutOfRange { row: usize, col: usize, value: usize },
    Identity { element: usize },
    Inverse { element: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            AxiomViolation::Identity { element } => {
                write!(f, "claimed identity fails at element {element}")
            }
            AxiomViolation::Inverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
        }
    }
}

impl GroupTable {
    fn from_parts(order: usize, table: Vec<u16>, name: String) -> Result<Self> {
        debug_assert_eq!(table.len(), order * order);
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|x| {
                    table[e * order + x] == x as u16 && table[x * order + e] == x as u16
                })
            })
            .ok_or_else(|| Error::InvalidParameter(format!("{name}: no two-sided identity")))?;
        let mut inverse = vec![0u16; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| {
                    table[a * order + b] == identity as u16 && table[b * order + a] == identity as u16
                })
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("{name}: element {a} has no two-sided inverse"))
                })?;
            inverse[a] = inv as u16;
        }
        let abelian = (0..order)
            .all(|a| (a + 1..order).all(|b| table[a * order + b] == table[b * order + a]));
        Ok(Self {
            order,
            table,
            identity: identity as u16,
            inverse,
            abelian,
            name,
        })
    }

    /// The cyclic group Z_n with addition mod n; element i is the residue i.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group needs n >= 1".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit(format!(
                "cyclic order {n} exceeds cap {MAX_GROUP_ORDER}"
            )));
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u16;
            }
        }
        Self::from_parts(n, table, format!("Z_{n}"))
    }

    /// Direct product; the pair (a, b) is encoded as `a * other.order() + b`.
    pub fn direct_product(&self, other: &GroupTable) -> Result<Self> {
        let (n1, n2) = (self.order, other.order);
        let n = n1
            .checked_mul(n2)
            .filter(|&n| n <= MAX_GROUP_ORDER)
            .ok_or_else(|| {
                Error::SizeLimit(format!(
                    "product order {n1}*{n2} exceeds cap {MAX_GROUP_ORDER}"
                ))
            })?;
        let mut table = vec![0u16; n * n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                let x = a1 * n2 + b1;
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        let y = a2 * n2 + b2;
                        table[x * n + y] =
                            (self.mul(a1, a2) * n2 + other.mul(b1, b2)) as u16;
                    }
                }
            }
        }
        Self::from_parts(n, table, format!("{}x{}", self.name, other.name))
    }

    /// The dihedral group of order 2n (n >= 3). Index j*n + i encodes
    /// s^j r^i with the defining relations r^n = s^2 = e, s r = r^{-1} s.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(
                "dihedral group needs n >= 3".into(),
            ));
        }
        let order = 2 * n;
        if order > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit(format!(
                "dihedral order {order} exceeds cap {MAX_GROUP_ORDER}"
            )));
        }
        let mut table = vec![0u16; order * order];
        for j1 in 0..2 {
            for i1 in 0..n {
                let x = j1 * n + i1;
                for j2 in 0..2 {
                    for i2 in 0..n {
                        let y = j2 * n + i2;
                        // s^{j1} r^{i1} s^{j2} r^{i2}: pushing s^{j2} left
                        // flips the first rotation when j2 = 1.
                        let (j, i) = if j2 == 0 {
                            (j1, (i1 + i2) % n)
                        } else {
                            (1 - j1, (n + i2 - i1) % n)
                        };
                        table[x * order + y] = (j * n + i) as u16;
                    }
                }
            }
        }
        Self::from_parts(order, table, format!("D_{n}"))
    }

    /// The symmetric group S_n for n in [1, 6]. Element i is the i-th
    /// permutation of (0..n) in lexicographic order; the product p*q maps x
    /// to p(q(x)), so the right factor acts first.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=6).contains(&n) {
            return Err(Error::InvalidParameter(
                "symmetric group supported for n in [1, 6]".into(),
            ));
        }
        let order: usize = (1..=n).product();
        let perms: Vec<Vec<usize>> = (0..order).map(|r| unrank_permutation(r, n)).collect();
        let mut table = vec![0u16; order * order];
        let mut composed = vec![0usize; n];
        for (pi, p) in perms.iter().enumerate() {
            for (qi, q) in perms.iter().enumerate() {
                for x in 0..n {
                    composed[x] = p[q[x]];
                }
                table[pi * order + qi] = rank_permutation(&composed) as u16;
            }
        }
        Self::from_parts(order, table, format!("S_{n}"))
    }

    /// A group from an externally supplied table. Unlike the built-in
    /// families this runs the full axiom guard, including the N^3
    /// associativity scan.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty multiplication table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit(format!(
                "table order {n} exceeds cap {MAX_GROUP_ORDER}"
            )));
        }
        let mut table = vec![0u16; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "table row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidParameter(
                        AxiomViolation::EntryOutOfRange { row: i, col: j, value: v }.to_string(),
                    ));
                }
                table[i * n + j] = v as u16;
            }
        }
        let group = Self::from_parts(n, table, format!("table{n}"))?;
        if let Some(v) = group.axiom_violation() {
            return Err(Error::InvalidParameter(v.to_string()));
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a < self.order);
        self.inverse[a] as usize
    }

    /// Smallest k >= 1 with a^k = e.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity as usize {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Left-to-right product of a word of elements; empty words give the
    /// identity.
    pub fn product(&self, word: impl IntoIterator<Item = usize>) -> usize {
        word.into_iter()
            .fold(self.identity as usize, |acc, x| self.mul(acc, x))
    }

    /// Full axiom check: stored identity and inverses, then associativity
    /// over all N^3 triples. Returns the first violation in lexicographic
    /// (a, b, c) order, or `None` when the table is a group.
    pub fn axiom_violation(&self) -> Option<AxiomViolation> {
        let n = self.order;
        let e = self.identity as usize;
        for x in 0..n {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Some(AxiomViolation::Identity { element: x });
            }
            let i = self.inv(x);
            if self.mul(x, i) != e || self.mul(i, x) != e {
                return Some(AxiomViolation::Inverse { element: x });
            }
        }
        self.associativity_violation()
    }

    #[cfg(feature = "rayon")]
    fn associativity_violation(&self) -> Option<AxiomViolation> {
        let n = self.order;
        (0..n)
            .into_par_iter()
            .find_map_first(|a| self.associativity_violation_at(a))
            .map(|(a, b, c)| AxiomViolation::Associativity { a, b, c })
    }

    #[cfg(not(feature = "rayon"))]
    fn associativity_violation(&self) -> Option<AxiomViolation> {
        self.associativity_violation_seq()
            .map(|(a, b, c)| AxiomViolation::Associativity { a, b, c })
    }

    /// Single-threaded associativity scan; the reference the parallel path
    /// must agree with.
    pub fn associativity_violation_seq(&self) -> Option<(usize, usize, usize)> {
        (0..self.order).find_map(|a| self.associativity_violation_at(a))
    }

    fn associativity_violation_at(&self, a: usize) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for b in 0..n {
            let ab = self.mul(a, b);
            for c in 0..n {
                if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn verify_axioms(&self) -> bool {
        self.axiom_violation().is_none()
    }
}

/// Lexicographic rank of a permutation word of (0..n).
pub(crate) fn rank_permutation(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    let mut fact: usize = (1..n.max(1)).product();
    let mut seen = vec![false; n];
    for (i, &p) in perm.iter().enumerate() {
        let smaller = (0..p).filter(|&q| !seen[q]).count();
        rank += smaller * fact;
        seen[p] = true;
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    rank
}

/// Inverse of `rank_permutation`: the `rank`-th word of (0..n) in
/// lexicographic order.
pub(crate) fn unrank_permutation(mut rank: usize, n: usize) -> Vec<usize> {
    let mut avail: Vec<usize> = (0..n).collect();
    let mut fact: usize = (1..n.max(1)).product();
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let idx = rank / fact;
        rank %= fact;
        perm.push(avail.remove(idx));
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    perm
}

/// A subset of the elements of a group of order `group_order`, kept sorted
/// and duplicate-free, with O(1) membership and member-position lookup.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    members: Vec<u16>,
    group_order: usize,
    pos: Vec<u16>, // u16::MAX when absent
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet{:?}/{}", self.to_vec(), self.group_order)
    }
}

impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}

impl ElementSet {
    pub fn new(members: impl IntoIterator<Item = usize>, group_order: usize) -> Result<Self> {
        if group_order == 0 || group_order > MAX_GROUP_ORDER {
            return Err(Error::InvalidParameter(format!(
                "set over group order {group_order} out of range"
            )));
        }
        let mut sorted: Vec<usize> = members.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&e| e >= group_order) {
            return Err(Error::InvalidParameter(format!(
                "set element {bad} outside group of order {group_order}"
            )));
        }
        let mut pos = vec![u16::MAX; group_order];
        for (i, &e) in sorted.iter().enumerate() {
            pos[e] = i as u16;
        }
        Ok(Self {
            members: sorted.iter().map(|&e| e as u16).collect(),
            group_order,
            pos,
        })
    }

    pub fn empty(group_order: usize) -> Self {
        Self::new([], group_order).expect("empty set")
    }

    pub fn full(group_order: usize) -> Self {
        Self::new(0..group_order, group_order).expect("full set")
    }

    /// Seeded pseudo-random subset: element e is included when the e-th
    /// output of `SplitMix64::new(seed)` maps below `density`. Identical
    /// (order, density, seed) triples give identical sets everywhere.
    pub fn random(group_order: usize, density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidParameter(format!(
                "density {density} outside [0, 1]"
            )));
        }
        let mut rng = SplitMix64::new(seed);
        let members: Vec<usize> =
            (0..group_order).filter(|_| rng.next_f64() < density).collect();
        Self::new(members, group_order)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.group_order && self.pos[e] != u16::MAX
    }

    /// Position of `e` among the sorted members.
    #[inline]
    pub fn position(&self, e: usize) -> Option<usize> {
        if !self.contains(e) {
            return None;
        }
        Some(self.pos[e] as usize)
    }

    pub fn member(&self, position: usize) -> usize {
        self.members[position] as usize
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&e| e as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn complement(&self) -> Self {
        Self::new(
            (0..self.group_order).filter(|&e| !self.contains(e)),
            self.group_order,
        )
        .expect("complement")
    }

    /// This set minus the listed elements.
    pub fn without(&self, drop: &[usize]) -> Self {
        Self::new(
            self.members().filter(|e| !drop.contains(e)),
            self.group_order,
        )
        .expect("difference")
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.group_order, other.group_order);
        Self::new(
            self.members().filter(|&e| other.contains(e)),
            self.group_order,
        )
        .expect("intersection")
    }
}

/// The pointwise product set {a * b : a in A, b in B}.
pub fn product_set(group: &GroupTable, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut hit = vec![false; group.order()];
    for x in a.members() {
        for y in b.members() {
            hit[group.mul(x, y)] = true;
        }
    }
    ElementSet::new(
        (0..group.order()).filter(|&e| hit[e]),
        group.order(),
    )
    .expect("product set")
}
