//! Commutation, distributivity, center and atoms.

use serde::Serialize;

use super::{ElemId, OmlLattice};
use crate::elemset::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    /// The center is the whole lattice.
    Boolean,
    /// The center is `{0, 1}`.
    Irreducible,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: LatticeKind,
    pub atomic: bool,
}

impl OmlLattice {
    /// `a C b`: `a = (a ^ b) v (a ^ b')`.
    pub fn commutes(&self, a: ElemId, b: ElemId) -> bool {
        let b_perp = self.ortho(b);
        self.join(self.meet(a, b), self.meet(a, b_perp)) == a
    }

    /// The four characterizations of commutation, in order:
    /// `aCb`, `bCa`, `a ^ (a' v b) = a ^ b`, and the join of the four meets
    /// `a^b, a^b', a'^b, a'^b'` being 1.
    pub fn commute_equivalents(&self, a: ElemId, b: ElemId) -> [bool; 4] {
        let (ap, bp) = (self.ortho(a), self.ortho(b));
        let third = self.meet(a, self.join(ap, b)) == self.meet(a, b);
        let fourth = self.join_all([self.meet(a, b), self.meet(a, bp), self.meet(ap, b), self.meet(ap, bp)]) == self.one();
        [self.commutes(a, b), self.commutes(b, a), third, fourth]
    }

    /// Both distributive identities for one role assignment:
    /// `(a v b) ^ c = (a ^ c) v (b ^ c)` and `(a ^ b) v c = (a v c) ^ (b v c)`.
    pub fn distributes_ordered(&self, a: ElemId, b: ElemId, c: ElemId) -> bool {
        self.meet(self.join(a, b), c) == self.join(self.meet(a, c), self.meet(b, c))
            && self.join(self.meet(a, b), c) == self.meet(self.join(a, c), self.join(b, c))
    }

    /// `{a, b, c}` is distributive: the identities hold under every
    /// assignment of the three elements to the three roles.
    pub fn is_distributive_triple(&self, a: ElemId, b: ElemId, c: ElemId) -> bool {
        [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
            .into_iter()
            .all(|(x, y, z)| self.distributes_ordered(x, y, z))
    }

    /// Elements forming a distributive triple with every pair.
    pub fn center(&self) -> ElemSet {
        self.elements()
            .filter(|&x| self.elements().all(|a| self.elements().all(|b| self.is_distributive_triple(x, a, b))))
            .collect()
    }

    pub fn classify(&self) -> Classification {
        let center = self.center();
        let kind = if center == self.all() {
            LatticeKind::Boolean
        } else if center == [self.zero(), self.one()].into_iter().collect() {
            LatticeKind::Irreducible
        } else {
            LatticeKind::Neither
        };
        let atoms: ElemSet = self.atoms().into_iter().collect();
        let atomic = self
            .elements()
            .filter(|&x| x != self.zero())
            .all(|x| !self.down_set(x).intersection(atoms).is_empty());
        debug_assert!(atomic, "finite lattices are atomic");
        Classification { kind, atomic }
    }

    pub fn is_boolean(&self) -> bool {
        self.classify().kind == LatticeKind::Boolean
    }

    /// Elements covering 0, in id order.
    pub fn atoms(&self) -> Vec<ElemId> {
        let z = self.zero();
        self.elements().filter(|&a| a != z && self.down_set(a).len() == 2).collect()
    }

    /// Whether `a` and `b` are orthogonal (`a <= b'`).
    pub fn orthogonal(&self, a: ElemId, b: ElemId) -> bool {
        self.leq(a, self.ortho(b))
    }
}
