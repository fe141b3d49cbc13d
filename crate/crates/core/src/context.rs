//! Boolean subalgebras ("contexts") of a lattice and their inclusion order.
//!
//! A context is stored as its element set plus its atoms. Atoms of a context
//! stand for its completely additive two-valued homomorphisms (`a ↦ λ_a`), so
//! a set of homomorphisms is an [`AtomMask`] over the context's local atom
//! indices. Restricting `λ_a` from `B` to a subcontext `B'` gives `λ_c` where
//! `c` is the least member of `B'` above `a`, which is always an atom of `B'`.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::elemset::ElemSet;
use crate::lattice::{ElemId, OmlLattice};

pub type ContextId = usize;

/// Bit `i` selects the `i`-th atom of a context.
pub type AtomMask = u32;

pub const DEFAULT_MAX_CONTEXTS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("`{0}` and `{1}` do not commute")]
    NonCommuting(String, String),
    #[error("generated subalgebra {0} is trivial")]
    Trivial(String),
    #[error("`{elem}` is not a member of context {context}")]
    NotInContext { elem: String, context: String },
    #[error("`{elem}` is not an atom of context {context}")]
    NotAnAtom { elem: String, context: String },
    #[error("atom mask {mask:#b} has bits beyond the {atoms} atoms of context {context}")]
    BadMask { mask: AtomMask, atoms: usize, context: String },
    #[error("context {sub} is not included in context {sup}")]
    NotIncluded { sub: String, sup: String },
    #[error("no context with id {0}")]
    BadId(ContextId),
    #[error("more than {0} contexts")]
    TooMany(usize),
    #[error("lattice `{0}` has no nontrivial Boolean subalgebra")]
    NoContexts(String),
}

/// A Boolean subalgebra of the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    elems: ElemSet,
    atoms: Vec<ElemId>,
}

impl Context {
    /// Wraps a set already known to be a Boolean subalgebra.
    fn from_elems(lattice: &OmlLattice, elems: ElemSet) -> Context {
        let zero = lattice.zero();
        let atoms = elems
            .iter()
            .filter(|&x| x != zero && lattice.down_set(x).intersection(elems).len() == 2)
            .collect();
        Context { elems, atoms }
    }

    pub fn elems(&self) -> ElemSet {
        self.elems
    }

    pub fn atoms(&self) -> &[ElemId] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.elems.contains(x)
    }

    pub fn full_mask(&self) -> AtomMask {
        ((1u64 << self.atoms.len()) - 1) as AtomMask
    }

    pub fn atom_index(&self, x: ElemId) -> Option<usize> {
        self.atoms.iter().position(|&a| a == x)
    }

    /// Members sorted by id; the ordering key for contexts.
    fn key(&self) -> (usize, Vec<ElemId>) {
        (self.len(), self.elems.iter().collect())
    }
}

/// Closes `seed ∪ {0, 1}` under meet, join and orthocomplement.
pub fn subalgebra_closure(lattice: &OmlLattice, seed: ElemSet) -> ElemSet {
    let mut set = seed;
    set.insert(lattice.zero());
    set.insert(lattice.one());
    loop {
        let mut next = set;
        for a in set.iter() {
            next.insert(lattice.ortho(a));
            for b in set.iter().filter(|&b| b > a) {
                next.insert(lattice.meet(a, b));
                next.insert(lattice.join(a, b));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn first_non_commuting(lattice: &OmlLattice, set: ElemSet) -> Option<(ElemId, ElemId)> {
    set.iter().find_map(|a| set.iter().filter(|&b| b > a).find(|&b| !lattice.commutes(a, b)).map(|b| (a, b)))
}

/// The subalgebra generated by a pairwise-commuting seed.
pub fn generated_subalgebra(lattice: &OmlLattice, seed: ElemSet) -> Result<Context, ContextError> {
    if let Some((a, b)) = first_non_commuting(lattice, seed) {
        return Err(ContextError::NonCommuting(lattice.name_of(a).into(), lattice.name_of(b).into()));
    }
    let elems = subalgebra_closure(lattice, seed);
    if elems.len() < 4 {
        return Err(ContextError::Trivial(lattice.fmt_set(elems)));
    }
    debug_assert!(first_non_commuting(lattice, elems).is_none());
    Ok(Context::from_elems(lattice, elems))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextOptions {
    /// Also include the two-element subalgebra `{0, 1}`.
    pub include_trivial: bool,
    pub max_contexts: usize,
}

impl Default for ContextOptions {
    fn default() -> Self {
        ContextOptions { include_trivial: false, max_contexts: DEFAULT_MAX_CONTEXTS }
    }
}

static NEXT_GRAPH_KEY: AtomicU64 = AtomicU64::new(1);

/// All contexts of a lattice with their inclusion order and restriction maps.
#[derive(Debug)]
pub struct ContextGraph {
    key: u64,
    lattice: Arc<OmlLattice>,
    contexts: Vec<Context>,
    include_trivial: bool,
    /// `below[b]`: subcontexts of `b`, including `b`, ascending.
    below: Vec<Vec<ContextId>>,
    above: Vec<Vec<ContextId>>,
    /// Dense `m × m` table; entry `b * m + s` maps local atom indices of `b`
    /// to local atom indices of `s` when `s ⊆ b`.
    restr: Vec<Option<Vec<u8>>>,
}

/// Enumerates every Boolean subalgebra with at least four elements (or all of
/// them, with `include_trivial`), ordered by size and then by sorted member
/// ids.
///
/// Breadth-first search: start from each `{0, x, x', 1}` and extend a context
/// by any element commuting with all its members, deduplicating by member set.
pub fn enumerate_contexts(lattice: Arc<OmlLattice>, opts: &ContextOptions) -> Result<ContextGraph, ContextError> {
    let l = &*lattice;
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut found = Vec::new();
    let push = |elems: ElemSet, seen: &mut HashSet<ElemSet>, queue: &mut VecDeque<ElemSet>| -> Result<(), ContextError> {
        if seen.insert(elems) {
            if seen.len() > opts.max_contexts {
                return Err(ContextError::TooMany(opts.max_contexts));
            }
            queue.push_back(elems);
        }
        Ok(())
    };
    for x in l.elements() {
        if x != l.zero() && x != l.one() {
            push(subalgebra_closure(l, ElemSet::singleton(x)), &mut seen, &mut queue)?;
        }
    }
    while let Some(elems) = queue.pop_front() {
        found.push(elems);
        for y in l.elements() {
            if elems.contains(y) || !elems.iter().all(|m| l.commutes(m, y)) {
                continue;
            }
            let mut seed = elems;
            seed.insert(y);
            push(subalgebra_closure(l, seed), &mut seen, &mut queue)?;
        }
    }
    if opts.include_trivial {
        found.push([l.zero(), l.one()].into_iter().collect());
    }
    if found.is_empty() {
        return Err(ContextError::NoContexts(l.name().to_owned()));
    }
    let mut contexts: Vec<Context> = found.into_iter().map(|e| Context::from_elems(l, e)).collect();
    contexts.sort_by_key(Context::key);
    Ok(ContextGraph::assemble(lattice.clone(), contexts, opts.include_trivial))
}

impl ContextGraph {
    fn assemble(lattice: Arc<OmlLattice>, contexts: Vec<Context>, include_trivial: bool) -> ContextGraph {
        let m = contexts.len();
        let mut below = vec![Vec::new(); m];
        let mut above = vec![Vec::new(); m];
        let mut restr = vec![None; m * m];
        for (b, big) in contexts.iter().enumerate() {
            for (s, small) in contexts.iter().enumerate() {
                if !small.elems.is_subset(big.elems) {
                    continue;
                }
                below[b].push(s);
                above[s].push(b);
                let map = big
                    .atoms
                    .iter()
                    .map(|&a| {
                        let c = least_above(&lattice, a, small.elems);
                        small.atom_index(c).expect("restriction of an atom lands on an atom") as u8
                    })
                    .collect();
                restr[b * m + s] = Some(map);
            }
        }
        ContextGraph {
            key: NEXT_GRAPH_KEY.fetch_add(1, Ordering::Relaxed),
            lattice,
            contexts,
            include_trivial,
            below,
            above,
            restr,
        }
    }

    /// Identity token used to reject subobjects from a different graph.
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn lattice(&self) -> &OmlLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<OmlLattice> {
        &self.lattice
    }

    pub fn includes_trivial(&self) -> bool {
        self.include_trivial
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context(&self, id: ContextId) -> &Context {
        &self.contexts[id]
    }

    pub fn ids(&self) -> std::ops::Range<ContextId> {
        0..self.contexts.len()
    }

    fn check(&self, id: ContextId) -> Result<&Context, ContextError> {
        self.contexts.get(id).ok_or(ContextError::BadId(id))
    }

    /// Context with exactly these members.
    pub fn find(&self, elems: ElemSet) -> Option<ContextId> {
        self.contexts.iter().position(|c| c.elems == elems)
    }

    /// `{0, x, x', 1}`, when it is a context of this graph.
    pub fn find_pair_context(&self, x: ElemId) -> Option<ContextId> {
        let l = self.lattice();
        self.find([l.zero(), x, l.ortho(x), l.one()].into_iter().collect())
    }

    /// Subcontexts of `b`, including `b` itself.
    pub fn below(&self, b: ContextId) -> &[ContextId] {
        &self.below[b]
    }

    /// Supercontexts of `b`, including `b` itself.
    pub fn above(&self, b: ContextId) -> &[ContextId] {
        &self.above[b]
    }

    pub fn includes(&self, sub: ContextId, sup: ContextId) -> bool {
        self.restr[sup * self.len() + sub].is_some()
    }

    /// Covering pairs `(sub, sup)` of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(ContextId, ContextId)> {
        let mut edges = Vec::new();
        for sup in self.ids() {
            for &sub in &self.below[sup] {
                if sub == sup {
                    continue;
                }
                let covered = self.below[sup]
                    .iter()
                    .all(|&mid| mid == sup || mid == sub || !self.includes(sub, mid));
                if covered {
                    edges.push((sub, sup));
                }
            }
        }
        edges.sort();
        edges
    }

    /// Number of strict inclusions `sub ⊊ sup`.
    pub fn strict_inclusions(&self) -> usize {
        self.below.iter().map(|b| b.len() - 1).sum()
    }

    /// Local restriction map from `sup` to `sub`; `None` unless `sub ⊆ sup`.
    pub fn restriction(&self, sup: ContextId, sub: ContextId) -> Option<&[u8]> {
        self.restr[sup * self.len() + sub].as_deref()
    }

    /// Image of an atom mask of `sup` in `sub`. Panics if `sub ⊄ sup`.
    pub fn restrict_mask(&self, sup: ContextId, sub: ContextId, mask: AtomMask) -> AtomMask {
        let map = self.restriction(sup, sub).expect("restriction along a non-inclusion");
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1 << map[i];
            rest &= rest - 1;
        }
        out
    }

    /// Restriction of the homomorphism of atom `a` of `sup` to `sub`,
    /// returned as the corresponding atom of `sub`.
    pub fn restrict_atom(&self, sup: ContextId, sub: ContextId, a: ElemId) -> Result<ElemId, ContextError> {
        let big = self.check(sup)?;
        let small = self.check(sub)?;
        let map = self.restriction(sup, sub).ok_or_else(|| ContextError::NotIncluded {
            sub: self.label(sub),
            sup: self.label(sup),
        })?;
        let i = big.atom_index(a).ok_or_else(|| ContextError::NotAnAtom {
            elem: self.lattice.name_of(a).into(),
            context: self.label(sup),
        })?;
        Ok(small.atoms[map[i] as usize])
    }

    /// `α_B(x)`: the atoms of the context below `x`.
    pub fn alpha(&self, ctx: ContextId, x: ElemId) -> Result<AtomMask, ContextError> {
        let c = self.check(ctx)?;
        if !c.contains(x) {
            return Err(ContextError::NotInContext { elem: self.lattice.name_of(x).into(), context: self.label(ctx) });
        }
        Ok(self.alpha_unchecked(ctx, x))
    }

    /// Atoms of the context below an arbitrary element.
    pub(crate) fn alpha_unchecked(&self, ctx: ContextId, x: ElemId) -> AtomMask {
        let c = &self.contexts[ctx];
        c.atoms
            .iter()
            .enumerate()
            .filter(|(_, &a)| self.lattice.leq(a, x))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `α_B⁻¹(s)`: the join of the selected atoms.
    pub fn alpha_inv(&self, ctx: ContextId, mask: AtomMask) -> Result<ElemId, ContextError> {
        let c = self.check(ctx)?;
        if mask & !c.full_mask() != 0 {
            return Err(ContextError::BadMask { mask, atoms: c.atoms.len(), context: self.label(ctx) });
        }
        Ok(self.alpha_inv_unchecked(ctx, mask))
    }

    pub(crate) fn alpha_inv_unchecked(&self, ctx: ContextId, mask: AtomMask) -> ElemId {
        let c = &self.contexts[ctx];
        self.lattice.join_all(c.atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a))
    }

    /// Least member of context `ctx` above `x`.
    pub fn least_above(&self, x: ElemId, ctx: ContextId) -> ElemId {
        least_above(&self.lattice, x, self.contexts[ctx].elems)
    }

    /// `B3{0, a, a', 1}`-style label.
    pub fn label(&self, ctx: ContextId) -> String {
        match self.contexts.get(ctx) {
            Some(c) => format!("B{ctx}{}", self.lattice.fmt_set(c.elems)),
            None => format!("B{ctx}"),
        }
    }

    pub fn mask_names(&self, ctx: ContextId, mask: AtomMask) -> Vec<&str> {
        let c = &self.contexts[ctx];
        c.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| self.lattice.name_of(a))
            .collect()
    }

    /// Atom mask for a list of atom names of a context.
    pub fn mask_from_names<S: AsRef<str>>(&self, ctx: ContextId, names: &[S]) -> Result<AtomMask, ContextError> {
        let c = self.check(ctx)?;
        let mut mask = 0;
        for n in names {
            let n = n.as_ref();
            let i = self
                .lattice
                .index_of(n)
                .and_then(|x| c.atom_index(x))
                .ok_or_else(|| ContextError::NotAnAtom { elem: n.to_owned(), context: self.label(ctx) })?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Graphviz rendering of the inclusion order (covering edges, smaller
    /// context below).
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph contexts {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
        for id in self.ids() {
            writeln!(out, "  B{id} [label=\"{}\"];", dot_escape(&self.label(id))).unwrap();
        }
        for (sub, sup) in self.hasse_edges() {
            writeln!(out, "  B{sub} -> B{sup};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    pub fn export(&self) -> ContextGraphExport {
        let nm = |x: ElemId| self.lattice.name_of(x).to_owned();
        let contexts = self
            .contexts
            .iter()
            .enumerate()
            .map(|(id, c)| ContextExport {
                id,
                elements: c.elems.iter().map(nm).collect(),
                atoms: c.atoms.iter().map(|&a| nm(a)).collect(),
            })
            .collect();
        let mut restrictions = Vec::new();
        for sup in self.ids() {
            for &sub in &self.below[sup] {
                if sub == sup {
                    continue;
                }
                let map = self.restriction(sup, sub).unwrap();
                let pairs = self.contexts[sup]
                    .atoms
                    .iter()
                    .zip(map)
                    .map(|(&a, &j)| (nm(a), nm(self.contexts[sub].atoms[j as usize])))
                    .collect();
                restrictions.push(RestrictionExport { from: sup, to: sub, map: pairs });
            }
        }
        ContextGraphExport {
            lattice: self.lattice.name().to_owned(),
            include_trivial: self.include_trivial,
            contexts,
            inclusions: self.hasse_edges(),
            restrictions,
        }
    }
}

fn least_above(lattice: &OmlLattice, x: ElemId, elems: ElemSet) -> ElemId {
    lattice.meet_all(elems.intersection(lattice.up_set(x)).iter())
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Debug, Clone, Serialize)]
pub struct ContextExport {
    pub id: ContextId,
    pub elements: Vec<String>,
    pub atoms: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionExport {
    pub from: ContextId,
    pub to: ContextId,
    pub map: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContextGraphExport {
    pub lattice: String,
    pub include_trivial: bool,
    pub contexts: Vec<ContextExport>,
    /// Covering pairs `(sub, sup)`.
    pub inclusions: Vec<(ContextId, ContextId)>,
    pub restrictions: Vec<RestrictionExport>,
}

/// Atom sets of all Boolean subalgebras with at least two atoms, found as the
/// partitions of 1 into pairwise orthogonal nonzero elements. Shares nothing
/// with the breadth-first enumeration and serves as its cross-check.
pub fn partitions_of_unity(lattice: &OmlLattice) -> Vec<ElemSet> {
    let nonzero: Vec<ElemId> = lattice.elements().filter(|&x| x != lattice.zero()).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    fn go(l: &OmlLattice, cands: &[ElemId], start: usize, chosen: &mut Vec<ElemId>, out: &mut Vec<ElemSet>) {
        let joined = l.join_all(chosen.iter().copied());
        if joined == l.one() {
            if chosen.len() >= 2 {
                out.push(chosen.iter().copied().collect());
            }
            return;
        }
        for i in start..cands.len() {
            let x = cands[i];
            if chosen.iter().all(|&c| l.orthogonal(c, x)) {
                chosen.push(x);
                go(l, cands, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }

    go(lattice, &nonzero, 0, &mut chosen, &mut out);
    out.sort();
    out
}
