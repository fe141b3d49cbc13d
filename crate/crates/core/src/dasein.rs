//! Outer daseinisation and its upper adjoint.

use serde::Serialize;

use crate::context::{AtomMask, ContextGraph, ContextId};
use crate::elemset::ElemSet;
use crate::lattice::ElemId;
use crate::presheaf::{PresheafError, Subobject};

/// Contexts with more atoms than this get `α⁻¹` computed on demand instead
/// of tabulated.
const INVERSE_TABLE_ATOMS: usize = 12;

/// Daseinisation tables for one context graph.
#[derive(Debug, Clone)]
pub struct DaseinMap<'g> {
    graph: &'g ContextGraph,
    /// `to[x * m + b]` is the least member of context `b` above `x`.
    to: Vec<ElemId>,
    subs: Vec<Subobject>,
    inverse: Vec<Option<Vec<ElemId>>>,
}

/// ε value of a subobject and whether it lies in the image of δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointRow {
    pub subobject: String,
    pub epsilon: String,
    pub in_image: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AdjointReport {
    pub rows: Vec<AdjointRow>,
}

impl AdjointReport {
    pub fn phantoms(&self) -> usize {
        self.rows.iter().filter(|r| !r.in_image).count()
    }
}

/// One `(x, B, δ(x)_B)` row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DaseinRow {
    pub element: String,
    pub context: ContextId,
    pub value: String,
}

impl<'g> DaseinMap<'g> {
    pub fn new(graph: &'g ContextGraph) -> Self {
        let l = graph.lattice();
        let m = graph.len();
        let mut to = Vec::with_capacity(l.len() * m);
        for x in l.elements() {
            for b in graph.ids() {
                to.push(graph.least_above(x, b));
            }
        }
        let subs = l
            .elements()
            .map(|x| {
                let sets = graph.ids().map(|b| graph.alpha_unchecked(b, to[x * m + b])).collect();
                graph.subobject(sets).expect("daseinisation is closed under restriction")
            })
            .collect();
        let inverse = graph
            .contexts()
            .iter()
            .enumerate()
            .map(|(b, c)| {
                (c.atoms().len() <= INVERSE_TABLE_ATOMS)
                    .then(|| (0..=c.full_mask()).map(|mask| graph.alpha_inv_unchecked(b, mask)).collect())
            })
            .collect();
        DaseinMap { graph, to, subs, inverse }
    }

    pub fn graph(&self) -> &'g ContextGraph {
        self.graph
    }

    /// `δ(x)_B`: least member of `B` above `x`.
    pub fn dasein_to(&self, x: ElemId, b: ContextId) -> ElemId {
        self.to[x * self.graph.len() + b]
    }

    /// `δ(x)` as a subobject.
    pub fn daseinise(&self, x: ElemId) -> &Subobject {
        &self.subs[x]
    }

    /// The whole image of δ, indexed by element id.
    pub fn image(&self) -> &[Subobject] {
        &self.subs
    }

    fn alpha_inv(&self, b: ContextId, mask: AtomMask) -> ElemId {
        match &self.inverse[b] {
            Some(t) => t[mask as usize],
            None => self.graph.alpha_inv_unchecked(b, mask),
        }
    }

    /// `ε(S) = ⋀_B α_B⁻¹(S(B))`.
    pub fn epsilon(&self, s: &Subobject) -> Result<ElemId, PresheafError> {
        if s.graph_key() != self.graph.key() {
            return Err(PresheafError::GraphMismatch);
        }
        let l = self.graph.lattice();
        Ok(self.graph.ids().fold(l.one(), |acc, b| l.meet(acc, self.alpha_inv(b, s.at(b)))))
    }

    /// `⋁ {x | δ(x) <= S}`, the defining form of the upper adjoint.
    pub fn epsilon_sup(&self, s: &Subobject) -> Result<ElemId, PresheafError> {
        let l = self.graph.lattice();
        let mut acc = l.zero();
        for x in l.elements() {
            if self.graph.leq(&self.subs[x], s)? {
                acc = l.join(acc, x);
            }
        }
        Ok(acc)
    }

    /// The element `u` with `δ(u) = S`, if there is one.
    pub fn image_test(&self, s: &Subobject) -> Result<Option<ElemId>, PresheafError> {
        let u = self.epsilon(s)?;
        Ok((self.subs[u] == *s).then_some(u))
    }

    /// First pair `x < y` with `δ(x) = δ(y)`; `None` means δ is injective.
    pub fn injectivity_violation(&self) -> Option<(ElemId, ElemId)> {
        let n = self.subs.len();
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| self.subs[x] == self.subs[y])
    }

    /// `δ(⋁X)` against `⋁ δ(x)` for one subset of elements.
    pub fn preserves_join(&self, xs: ElemSet) -> bool {
        let l = self.graph.lattice();
        let lhs = &self.subs[l.join_all(xs.iter())];
        let rhs = self.graph.join_all(xs.iter().map(|x| &self.subs[x])).expect("same graph");
        *lhs == rhs
    }

    /// `δ(x)_{B'} = ⋁ {δ(a)_{B'} | a atom of B, a <= δ(x)_B}` for `B' ⊆ B`.
    pub fn atom_decomposition_holds(&self, x: ElemId, sup: ContextId, sub: ContextId) -> bool {
        let l = self.graph.lattice();
        let top = self.dasein_to(x, sup);
        let rhs = l.join_all(
            self.graph.context(sup).atoms().iter().filter(|&&a| l.leq(a, top)).map(|&a| self.dasein_to(a, sub)),
        );
        self.dasein_to(x, sub) == rhs
    }

    /// Whether restriction from `sup` onto `sub` maps `δ(x)(sup)` onto `δ(x)(sub)`.
    pub fn restriction_surjective(&self, x: ElemId, sup: ContextId, sub: ContextId) -> bool {
        let s = &self.subs[x];
        self.graph.restrict_mask(sup, sub, s.at(sup)) == s.at(sub)
    }

    pub fn rows(&self) -> Vec<DaseinRow> {
        let l = self.graph.lattice();
        l.elements()
            .flat_map(|x| {
                self.graph.ids().map(move |b| DaseinRow {
                    element: l.name_of(x).into(),
                    context: b,
                    value: l.name_of(self.dasein_to(x, b)).into(),
                })
            })
            .collect()
    }

    pub fn adjoint_report<'a>(&self, items: impl IntoIterator<Item = &'a Subobject>) -> Result<AdjointReport, PresheafError> {
        let l = self.graph.lattice();
        let mut rows = Vec::new();
        for s in items {
            let u = self.epsilon(s)?;
            rows.push(AdjointRow {
                subobject: self.graph.describe(s),
                epsilon: l.name_of(u).into(),
                in_image: self.subs[u] == *s,
            });
        }
        Ok(AdjointReport { rows })
    }
}
