//! Finite groups given by multiplication tables, their conjugacy classes and
//! the monodromy-condition decision procedure.
//!
//! Element `0` is always the identity. Named families use these numberings:
//!
//! * `cyclic(n)`: element `k` is `g^k`.
//! * `dihedral(n)` (order `2n`): element `i < n` is the rotation `ρ^i`, element
//!   `n + i` is the reflection `ρ^i σ`, with `σ ρ σ = ρ^{-1}`.
//! * `symmetric(n)`: permutations of `{0, .., n-1}` in lexicographic order of
//!   their one-line notation; the product `p·q` applies `q` first.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Elem = usize;

/// Largest group order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 2000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("group order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("table row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity: 0*{0} or {0}*0 differs from {0}")]
    MissingIdentity(Elem),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(Elem),
    #[error("table is not a Latin square: row or column {0} repeats an entry")]
    NotLatin(Elem),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("{family}({n}) is not supported")]
    BadFamily { family: &'static str, n: usize },
    #[error("conjugacy class {0} does not exist in this group")]
    UnknownClass(usize),
}

/// Canonical class identifier: the smallest element index in the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassId(pub usize);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub id: ClassId,
    pub members: Vec<Elem>,
    /// Common multiplicative order of the members.
    pub order: u64,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Group description as accepted in job files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Table { table: Vec<Vec<usize>> },
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<Elem>,
    elem_order: Vec<u64>,
    classes: Vec<ConjClass>,
    // index into `classes`
    class_index: Vec<usize>,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Table { table } => Self::from_table(table),
            GroupSpec::Cyclic { n } => Self::cyclic(*n),
            GroupSpec::Dihedral { n } => Self::dihedral(*n),
            GroupSpec::Symmetric { n } => Self::symmetric(*n),
        }
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::BadFamily { family: "cyclic", n });
        }
        let mul = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
            .collect();
        Ok(Self::from_flat_unchecked(n, mul))
    }

    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 || 2 * n > MAX_ORDER {
            return Err(GroupError::BadFamily { family: "dihedral", n });
        }
        let order = 2 * n;
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let (i, xs) = (x % n, x >= n);
                let (j, ys) = (y % n, y >= n);
                // ρ^i σ^a · ρ^j σ^b = ρ^{i ± j} σ^{a+b}
                let rot = if xs { (i + n - j) % n } else { (i + j) % n };
                let refl = xs ^ ys;
                mul[x * order + y] = (rot + if refl { n } else { 0 }) as u32;
            }
        }
        Ok(Self::from_flat_unchecked(order, mul))
    }

    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 5 {
            return Err(GroupError::BadFamily { family: "symmetric", n });
        }
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let order = perms.len();
        let mut mul = vec![0u32; order * order];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                mul[a * order + b] = index(&pq) as u32;
            }
        }
        Ok(Self::from_flat_unchecked(order, mul))
    }

    /// Validates a full multiplication table whose identity is element 0.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare { row, len: entries.len(), expected: order });
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= order) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        for x in 0..order {
            if table[0][x] != x || table[x][0] != x {
                return Err(GroupError::MissingIdentity(x));
            }
        }
        for x in 0..order {
            let right = (0..order).find(|&y| table[x][y] == 0);
            match right {
                Some(y) if table[y][x] == 0 => {}
                _ => return Err(GroupError::MissingInverse(x)),
            }
        }
        for x in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for y in 0..order {
                if std::mem::replace(&mut seen_row[table[x][y]], true)
                    || std::mem::replace(&mut seen_col[table[y][x]], true)
                {
                    return Err(GroupError::NotLatin(x));
                }
            }
        }
        let mul: Vec<u32> = table.iter().flatten().map(|&v| v as u32).collect();
        let m = |a: usize, b: usize| mul[a * order + b] as usize;

        // Light's test: (xy)s = x(ys) for all s in a generating set suffices,
        // since the set of such s is closed under products.
        let mut reached = vec![false; order];
        reached[0] = true;
        let mut reached_list = vec![0usize];
        let mut gens = Vec::new();
        while let Some(s) = (0..order).find(|&x| !reached[x]) {
            gens.push(s);
            let mut frontier = reached_list.clone();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = m(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        reached_list.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        for &s in &gens {
            for x in 0..order {
                for y in 0..order {
                    if m(m(x, y), s) != m(x, m(y, s)) {
                        return Err(GroupError::NotAssociative(x, y, s));
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(order, mul))
    }

    /// Builds a group from a table known to be valid.
    pub(crate) fn from_flat_unchecked(order: usize, mul: Vec<u32>) -> Self {
        let m = |a: usize, b: usize| mul[a * order + b] as usize;
        let inv: Vec<Elem> = (0..order)
            .map(|x| (0..order).find(|&y| m(x, y) == 0).expect("inverse exists"))
            .collect();
        let elem_order: Vec<u64> = (0..order)
            .map(|x| {
                let mut k = 1;
                let mut p = x;
                while p != 0 {
                    p = m(p, x);
                    k += 1;
                }
                k
            })
            .collect();
        let mut class_index = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_index[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<Elem> = (0..order).map(|g| m(m(g, x), inv[g])).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                class_index[y] = classes.len();
            }
            classes.push(ConjClass {
                id: ClassId(x),
                members,
                order: elem_order[x],
            });
        }
        FiniteGroup { order, mul, inv, elem_order, classes, class_index }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        self.elem_order[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Conjugacy classes sorted by id.
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> Result<&ConjClass, GroupError> {
        match self.class_index.get(id.0) {
            Some(&i) if self.classes[i].id == id => Ok(&self.classes[i]),
            _ => Err(GroupError::UnknownClass(id.0)),
        }
    }

    pub fn class_of(&self, x: Elem) -> &ConjClass {
        &self.classes[self.class_index[x]]
    }

    pub fn identity_class(&self) -> ClassId {
        ClassId(0)
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    /// The class of inverses of members of `c`.
    pub fn class_inverse(&self, c: ClassId) -> Result<ClassId, GroupError> {
        let class = self.class(c)?;
        Ok(self.class_of(self.inv(class.members[0])).id)
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    fn set_product(&self, left: &[bool], right: &[Elem]) -> Vec<bool> {
        let mut out = vec![false; self.order];
        for x in (0..self.order).filter(|&x| left[x]) {
            for &y in right {
                out[self.mul(x, y)] = true;
            }
        }
        out
    }

    /// Whether some `h_i` in the given classes and `a_j, b_j` in the group
    /// satisfy `prod h_i = prod_{j <= genus} [a_j, b_j]`.
    pub fn monodromy_satisfiable(&self, classes: &[ClassId], genus: u32) -> Result<bool, GroupError> {
        let mut products = vec![false; self.order];
        products[0] = true;
        for &c in classes {
            let class = self.class(c)?;
            products = self.set_product(&products, &class.members);
        }
        let mut reachable = vec![false; self.order];
        reachable[0] = true;
        if genus > 0 {
            let mut comm = vec![false; self.order];
            for a in 0..self.order {
                for b in 0..self.order {
                    comm[self.commutator(a, b)] = true;
                }
            }
            let comm: Vec<Elem> = (0..self.order).filter(|&x| comm[x]).collect();
            for _ in 0..genus {
                let next = self.set_product(&reachable, &comm);
                if next == reachable {
                    break;
                }
                reachable = next;
            }
        }
        Ok((0..self.order).any(|x| products[x] && reachable[x]))
    }
}
