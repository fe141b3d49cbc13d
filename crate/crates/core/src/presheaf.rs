//! Subobjects of the completely additive spectral presheaf and their
//! bi-Heyting algebra.
//!
//! A [`Subobject`] picks a set of homomorphisms (an [`AtomMask`]) in every
//! context, closed under restriction to subcontexts. Meets and joins are
//! componentwise; Heyting implication quantifies over subcontexts; co-Heyting
//! implication is the restriction closure of the componentwise difference,
//! which is the least subobject satisfying its defining adjunction.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{dot_escape, AtomMask, ContextError, ContextGraph, ContextId};

/// Default cap on the number of candidate families (product of per-context
/// power-set sizes) for exhaustive subobject enumeration.
pub const DEFAULT_ORACLE_BOUND: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error("subobject belongs to a different context graph")]
    GraphMismatch,
    #[error("family has {got} entries but the graph has {expected} contexts")]
    WrongLength { got: usize, expected: usize },
    #[error("family is not closed under restriction: `{atom}` selected at {sup} restricts to `{image}`, missing at {sub}")]
    NotClosed { sup: String, sub: String, atom: String, image: String },
    #[error("exhaustive enumeration needs 2^{exponent} candidate families, above the bound {bound}")]
    BoundExceeded { exponent: u32, bound: u64 },
    #[error(transparent)]
    Context(#[from] ContextError),
}

/// A per-context choice of homomorphisms, closed under restriction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subobject {
    graph: u64,
    sets: Vec<AtomMask>,
}

impl Subobject {
    /// Selected atoms at context `ctx`.
    pub fn at(&self, ctx: ContextId) -> AtomMask {
        self.sets[ctx]
    }

    pub fn sets(&self) -> &[AtomMask] {
        &self.sets
    }

    pub fn graph_key(&self) -> u64 {
        self.graph
    }

    /// First context where the two families differ.
    pub fn first_difference(&self, other: &Subobject) -> Option<ContextId> {
        self.sets.iter().zip(&other.sets).position(|(a, b)| a != b)
    }
}

/// Every subobject of a graph, found by exhaustive search.
#[derive(Debug, Clone)]
pub struct SubobjectLatticeOracle {
    subobjects: Vec<Subobject>,
    index: HashMap<Vec<AtomMask>, usize>,
}

impl SubobjectLatticeOracle {
    pub fn len(&self) -> usize {
        self.subobjects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subobjects.is_empty()
    }

    pub fn subobjects(&self) -> &[Subobject] {
        &self.subobjects
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subobject> {
        self.subobjects.iter()
    }

    pub fn contains(&self, s: &Subobject) -> bool {
        self.index.contains_key(&s.sets)
    }

    pub fn position(&self, s: &Subobject) -> Option<usize> {
        self.index.get(&s.sets).copied()
    }
}

/// One context's share of a subobject, by atom name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubobjectEntry {
    pub context: ContextId,
    pub atoms: Vec<String>,
}

impl ContextGraph {
    fn same(&self, s: &Subobject) -> Result<(), PresheafError> {
        if s.graph == self.key() && s.sets.len() == self.len() {
            Ok(())
        } else {
            Err(PresheafError::GraphMismatch)
        }
    }

    fn wrap(&self, sets: Vec<AtomMask>) -> Subobject {
        Subobject { graph: self.key(), sets }
    }

    /// Selects nothing anywhere.
    pub fn bottom(&self) -> Subobject {
        self.wrap(vec![0; self.len()])
    }

    /// Selects every homomorphism of every context.
    pub fn top(&self) -> Subobject {
        self.wrap(self.contexts().iter().map(|c| c.full_mask()).collect())
    }

    /// First restriction violation of a raw family, if any.
    fn closure_violation(&self, family: &[AtomMask]) -> Option<PresheafError> {
        for sup in self.ids() {
            for &sub in self.below(sup) {
                let img = self.restrict_mask(sup, sub, family[sup]);
                if img & !family[sub] != 0 {
                    let map = self.restriction(sup, sub).unwrap();
                    let i = (0..self.context(sup).atoms().len())
                        .find(|&i| family[sup] >> i & 1 == 1 && family[sub] >> map[i] & 1 == 0)
                        .unwrap();
                    let l = self.lattice();
                    return Some(PresheafError::NotClosed {
                        sup: self.label(sup),
                        sub: self.label(sub),
                        atom: l.name_of(self.context(sup).atoms()[i]).into(),
                        image: l.name_of(self.context(sub).atoms()[map[i] as usize]).into(),
                    });
                }
            }
        }
        None
    }

    fn check_family(&self, family: &[AtomMask]) -> Result<(), PresheafError> {
        if family.len() != self.len() {
            return Err(PresheafError::WrongLength { got: family.len(), expected: self.len() });
        }
        for (ctx, &m) in family.iter().enumerate() {
            let c = self.context(ctx);
            if m & !c.full_mask() != 0 {
                return Err(ContextError::BadMask { mask: m, atoms: c.atoms().len(), context: self.label(ctx) }.into());
            }
        }
        Ok(())
    }

    /// Validates a raw family as a subobject.
    pub fn subobject(&self, family: Vec<AtomMask>) -> Result<Subobject, PresheafError> {
        self.check_family(&family)?;
        match self.closure_violation(&family) {
            Some(e) => Err(e),
            None => Ok(self.wrap(family)),
        }
    }

    /// Whether a value from this graph satisfies the restriction-closure invariant.
    pub fn is_closed(&self, s: &Subobject) -> bool {
        s.graph == self.key() && self.closure_violation(&s.sets).is_none()
    }

    /// Componentwise inclusion.
    pub fn leq(&self, s: &Subobject, t: &Subobject) -> Result<bool, PresheafError> {
        self.same(s)?;
        self.same(t)?;
        Ok(s.sets.iter().zip(&t.sets).all(|(a, b)| a & !b == 0))
    }

    pub fn meet(&self, s: &Subobject, t: &Subobject) -> Result<Subobject, PresheafError> {
        self.same(s)?;
        self.same(t)?;
        Ok(self.wrap(s.sets.iter().zip(&t.sets).map(|(a, b)| a & b).collect()))
    }

    pub fn join(&self, s: &Subobject, t: &Subobject) -> Result<Subobject, PresheafError> {
        self.same(s)?;
        self.same(t)?;
        Ok(self.wrap(s.sets.iter().zip(&t.sets).map(|(a, b)| a | b).collect()))
    }

    /// Meet of any number of subobjects; the empty meet is the top.
    pub fn meet_all<'a>(&self, items: impl IntoIterator<Item = &'a Subobject>) -> Result<Subobject, PresheafError> {
        items.into_iter().try_fold(self.top(), |acc, s| self.meet(&acc, s))
    }

    /// Join of any number of subobjects; the empty join is the bottom.
    pub fn join_all<'a>(&self, items: impl IntoIterator<Item = &'a Subobject>) -> Result<Subobject, PresheafError> {
        items.into_iter().try_fold(self.bottom(), |acc, s| self.join(&acc, s))
    }

    /// `(S ⇒ T)(B)`: homomorphisms of `B` whose restriction to every
    /// subcontext `B' ⊆ B` lies in `T(B')` whenever it lies in `S(B')`.
    pub fn heyting_implies(&self, s: &Subobject, t: &Subobject) -> Result<Subobject, PresheafError> {
        self.same(s)?;
        self.same(t)?;
        let sets = self
            .ids()
            .map(|b| {
                let atoms = self.context(b).atoms().len();
                (0..atoms)
                    .filter(|&i| {
                        self.below(b).iter().all(|&sub| {
                            let j = self.restriction(b, sub).unwrap()[i];
                            s.sets[sub] >> j & 1 == 0 || t.sets[sub] >> j & 1 == 1
                        })
                    })
                    .fold(0, |m, i| m | 1 << i)
            })
            .collect();
        Ok(self.wrap(sets))
    }

    /// `¬S = S ⇒ 0`.
    pub fn heyting_not(&self, s: &Subobject) -> Result<Subobject, PresheafError> {
        self.heyting_implies(s, &self.bottom())
    }

    /// Least subobject containing a raw family: add restriction images along
    /// every inclusion until nothing changes.
    pub fn restriction_closure(&self, family: &[AtomMask]) -> Result<Subobject, PresheafError> {
        self.check_family(family)?;
        let mut sets = family.to_vec();
        loop {
            let mut changed = false;
            for sup in self.ids() {
                for &sub in self.below(sup) {
                    let img = self.restrict_mask(sup, sub, sets[sup]);
                    if img & !sets[sub] != 0 {
                        sets[sub] |= img;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(self.wrap(sets));
            }
        }
    }

    /// `S ⇐ T`: the least `R` with `S <= T ∨ R`, computed as the restriction
    /// closure of `S(B) \ T(B)`.
    pub fn coheyting_implies(&self, s: &Subobject, t: &Subobject) -> Result<Subobject, PresheafError> {
        self.same(s)?;
        self.same(t)?;
        let diff: Vec<AtomMask> = s.sets.iter().zip(&t.sets).map(|(a, b)| a & !b).collect();
        self.restriction_closure(&diff)
    }

    /// `~T = top ⇐ T`: the least `R` with `T ∨ R = top`.
    pub fn coheyting_not(&self, t: &Subobject) -> Result<Subobject, PresheafError> {
        self.coheyting_implies(&self.top(), t)
    }

    /// Raw componentwise complement of `T`; need not be closed under
    /// restriction. Kept for auditing the pointwise description of `~T`.
    pub fn pointwise_complement(&self, t: &Subobject) -> Result<Vec<AtomMask>, PresheafError> {
        self.same(t)?;
        Ok(self.contexts().iter().zip(&t.sets).map(|(c, m)| c.full_mask() & !m).collect())
    }

    /// Number of candidate families, as a power of two.
    pub fn family_space_exponent(&self) -> u32 {
        self.contexts().iter().map(|c| c.atoms().len() as u32).sum()
    }

    /// All subobjects, by depth-first assignment from the largest context
    /// down; each context ranges over the masks containing what its
    /// supercontexts already force.
    pub fn enumerate_all_subobjects(&self, bound: u64) -> Result<SubobjectLatticeOracle, PresheafError> {
        let exponent = self.family_space_exponent();
        if exponent >= 64 || (1u64 << exponent) > bound {
            return Err(PresheafError::BoundExceeded { exponent, bound });
        }
        let order: Vec<ContextId> = self.ids().rev().collect();
        let mut sets = vec![0; self.len()];
        let mut out = Vec::new();
        self.assign(&order, 0, &mut sets, &mut out);
        out.sort();
        let index = out.iter().enumerate().map(|(i, s)| (s.sets.clone(), i)).collect();
        Ok(SubobjectLatticeOracle { subobjects: out, index })
    }

    fn assign(&self, order: &[ContextId], depth: usize, sets: &mut Vec<AtomMask>, out: &mut Vec<Subobject>) {
        let Some(&b) = order.get(depth) else {
            out.push(self.wrap(sets.clone()));
            return;
        };
        let forced = self
            .above(b)
            .iter()
            .filter(|&&sup| sup != b)
            .fold(0, |m, &sup| m | self.restrict_mask(sup, b, sets[sup]));
        let free = self.context(b).full_mask() & !forced;
        // Enumerate submasks of `free`, including the empty one.
        let mut extra = free;
        loop {
            sets[b] = forced | extra;
            self.assign(order, depth + 1, sets, out);
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
        sets[b] = 0;
    }

    /// `{B0{0, a, a', 1}:{a}, ...}` with element names.
    pub fn describe(&self, s: &Subobject) -> String {
        let parts: Vec<String> = self
            .ids()
            .map(|b| format!("{}:{{{}}}", self.label(b), self.mask_names(b, s.sets[b]).join(", ")))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Describes a raw family the same way as [`ContextGraph::describe`].
    pub fn describe_family(&self, family: &[AtomMask]) -> String {
        self.describe(&self.wrap(family.to_vec()))
    }

    pub fn export_subobject(&self, s: &Subobject) -> Vec<SubobjectEntry> {
        self.ids()
            .map(|b| SubobjectEntry {
                context: b,
                atoms: self.mask_names(b, s.sets[b]).into_iter().map(str::to_owned).collect(),
            })
            .collect()
    }

    /// Inverse of [`ContextGraph::export_subobject`]; contexts not listed
    /// select nothing.
    pub fn import_subobject(&self, entries: &[SubobjectEntry]) -> Result<Subobject, PresheafError> {
        let mut family = vec![0; self.len()];
        for e in entries {
            if e.context >= self.len() {
                return Err(ContextError::BadId(e.context).into());
            }
            family[e.context] |= self.mask_from_names(e.context, &e.atoms)?;
        }
        self.subobject(family)
    }

    /// Inclusion diagram with the selected homomorphisms of `s` shown on
    /// each context; contexts with a nonempty selection are filled.
    pub fn dot_overlay(&self, s: &Subobject) -> Result<String, PresheafError> {
        self.same(s)?;
        let mut out = String::new();
        writeln!(out, "digraph subobject {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
        for b in self.ids() {
            let sel = self.mask_names(b, s.sets[b]).join(", ");
            let style = if s.sets[b] != 0 { ", style=filled, fillcolor=\"#cde4ff\"" } else { "" };
            writeln!(out, "  B{b} [label=\"{}\\n{{{}}}\"{style}];", dot_escape(&self.label(b)), dot_escape(&sel)).unwrap();
        }
        for (sub, sup) in self.hasse_edges() {
            writeln!(out, "  B{sub} -> B{sup};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        Ok(out)
    }
}
