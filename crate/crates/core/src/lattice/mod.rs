//! Finite orthomodular lattices.
//!
//! An [`OmlLattice`] is stored as up-sets and down-sets of the order relation
//! together with eagerly materialized meet, join and orthocomplement tables.
//! Every constructor goes through [`OmlLattice::from_order`], which audits the
//! full axiom list before handing out a value, so a live `OmlLattice` always
//! satisfies them.

mod build;
mod filters;
mod relations;
pub mod spec;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::elemset::{ElemSet, MAX_REPRESENTABLE};

pub use build::{direct_product, make_boolean, make_mo};
pub use filters::{enumerate_homomorphisms, enumerate_ultrafilters, verify_redei, Filter};
pub use relations::{Classification, LatticeKind};

/// Index of an element; ids follow document/constructor order.
pub type ElemId = usize;

/// Default bound on the number of elements accepted by constructors and the parser.
pub const DEFAULT_MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs distinct 0 and 1 (got {0} element(s))")]
    Degenerate(usize),
    #[error("{size} elements exceeds the size cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("axiom `{axiom}` violated: {witness}")]
    Axiom { axiom: Axiom, witness: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element id {0} out of range")]
    BadId(ElemId),
    #[error("lattice `{0}` is not Boolean")]
    NotBoolean(String),
    #[error("invalid constructor parameter: {0}")]
    BadParameter(String),
}

/// The axioms audited for every lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    PartialOrder,
    Bounds,
    Lattice,
    OrthoInvolution,
    OrthoAntitone,
    Complement,
    Orthomodular,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::PartialOrder,
        Axiom::Bounds,
        Axiom::Lattice,
        Axiom::OrthoInvolution,
        Axiom::OrthoAntitone,
        Axiom::Complement,
        Axiom::Orthomodular,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::PartialOrder => "partial-order",
            Axiom::Bounds => "bounds",
            Axiom::Lattice => "lattice",
            Axiom::OrthoInvolution => "ortho-involution",
            Axiom::OrthoAntitone => "ortho-antitone",
            Axiom::Complement => "complement",
            Axiom::Orthomodular => "orthomodular",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "witness")]
pub enum AxiomStatus {
    Pass,
    Fail(String),
    /// Not evaluated because an axiom it depends on failed.
    Skipped,
}

/// Outcome of every axiom check on a candidate structure.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<(Axiom, AxiomStatus)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, s)| *s == AxiomStatus::Pass)
    }

    pub fn first_failure(&self) -> Option<(Axiom, &str)> {
        self.checks.iter().find_map(|(a, s)| match s {
            AxiomStatus::Fail(w) => Some((*a, w.as_str())),
            _ => None,
        })
    }
}

/// A finite orthomodular lattice with cached operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct OmlLattice {
    name: String,
    names: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    meet: Vec<ElemId>,
    join: Vec<ElemId>,
    ortho: Vec<ElemId>,
    zero: ElemId,
    one: ElemId,
}

impl fmt::Debug for OmlLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OmlLattice")
            .field("name", &self.name)
            .field("elements", &self.names)
            .finish_non_exhaustive()
    }
}

/// Intermediate tables produced while auditing a candidate structure.
struct Tables {
    down: Vec<ElemSet>,
    meet: Vec<ElemId>,
    join: Vec<ElemId>,
    zero: ElemId,
    one: ElemId,
}

/// Audits a candidate structure given by its up-sets (`up[a]` holds every `b`
/// with `a <= b`) and orthocomplement table.
pub fn audit(names: &[String], up: &[ElemSet], ortho: &[ElemId]) -> AxiomReport {
    audit_tables(names, up, ortho).0
}

fn audit_tables(names: &[String], up: &[ElemSet], ortho: &[ElemId]) -> (AxiomReport, Option<Tables>) {
    let n = names.len();
    let nm = |x: ElemId| names.get(x).map(String::as_str).unwrap_or("?");
    let mut checks = Vec::with_capacity(Axiom::ALL.len());
    let skip_rest = |checks: &mut Vec<(Axiom, AxiomStatus)>| {
        for a in Axiom::ALL.iter().skip(checks.len()) {
            checks.push((*a, AxiomStatus::Skipped));
        }
    };

    // Partial order.
    let mut po = AxiomStatus::Pass;
    'po: for a in 0..n {
        if !up[a].contains(a) {
            po = AxiomStatus::Fail(format!("not reflexive at `{}`", nm(a)));
            break;
        }
        for b in up[a].iter() {
            if b != a && up[b].contains(a) {
                po = AxiomStatus::Fail(format!("`{}` <= `{}` <= `{}` (antisymmetry)", nm(a), nm(b), nm(a)));
                break 'po;
            }
            if !up[b].is_subset(up[a]) {
                let c = up[b].difference(up[a]).first().unwrap();
                po = AxiomStatus::Fail(format!(
                    "`{}` <= `{}` <= `{}` but not `{}` <= `{}` (transitivity)",
                    nm(a),
                    nm(b),
                    nm(c),
                    nm(a),
                    nm(c)
                ));
                break 'po;
            }
        }
    }
    let po_ok = po == AxiomStatus::Pass;
    checks.push((Axiom::PartialOrder, po));
    if !po_ok {
        skip_rest(&mut checks);
        return (AxiomReport { checks }, None);
    }

    let all = ElemSet::full(n);
    let mut down = vec![ElemSet::EMPTY; n];
    for (a, u) in up.iter().enumerate() {
        for b in u.iter() {
            down[b].insert(a);
        }
    }

    // Bounds.
    let zero = (0..n).find(|&z| up[z] == all);
    let one = (0..n).find(|&o| down[o] == all);
    let (zero, one) = match (zero, one) {
        (Some(z), Some(o)) => {
            checks.push((Axiom::Bounds, AxiomStatus::Pass));
            (z, o)
        }
        (None, _) => {
            checks.push((Axiom::Bounds, AxiomStatus::Fail("no least element".into())));
            skip_rest(&mut checks);
            return (AxiomReport { checks }, None);
        }
        (_, None) => {
            checks.push((Axiom::Bounds, AxiomStatus::Fail("no greatest element".into())));
            skip_rest(&mut checks);
            return (AxiomReport { checks }, None);
        }
    };

    // Lattice: every pair has a greatest lower and least upper bound.
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let mut lat = AxiomStatus::Pass;
    'lat: for a in 0..n {
        for b in 0..n {
            let lower = down[a].intersection(down[b]);
            match lower.iter().find(|&g| lower.is_subset(down[g])) {
                Some(g) => meet[a * n + b] = g,
                None => {
                    lat = AxiomStatus::Fail(format!("`{}` and `{}` have no greatest lower bound", nm(a), nm(b)));
                    break 'lat;
                }
            }
            let upper = up[a].intersection(up[b]);
            match upper.iter().find(|&l| upper.is_subset(up[l])) {
                Some(l) => join[a * n + b] = l,
                None => {
                    lat = AxiomStatus::Fail(format!("`{}` and `{}` have no least upper bound", nm(a), nm(b)));
                    break 'lat;
                }
            }
        }
    }
    let lat_ok = lat == AxiomStatus::Pass;
    checks.push((Axiom::Lattice, lat));
    if !lat_ok || ortho.len() != n || ortho.iter().any(|&x| x >= n) {
        if lat_ok {
            checks.push((
                Axiom::OrthoInvolution,
                AxiomStatus::Fail("orthocomplement table is not a total map on the elements".into()),
            ));
        }
        skip_rest(&mut checks);
        return (AxiomReport { checks }, None);
    }

    let first_fail = |pred: &dyn Fn(ElemId) -> Option<String>| -> AxiomStatus {
        (0..n).find_map(pred).map_or(AxiomStatus::Pass, AxiomStatus::Fail)
    };

    checks.push((
        Axiom::OrthoInvolution,
        first_fail(&|x| {
            (ortho[ortho[x]] != x).then(|| {
                format!("`{}`'' = `{}` != `{}` (via `{}`' = `{}`)", nm(x), nm(ortho[ortho[x]]), nm(x), nm(x), nm(ortho[x]))
            })
        }),
    ));
    checks.push((
        Axiom::OrthoAntitone,
        first_fail(&|a| {
            up[a].iter().find(|&b| !up[ortho[b]].contains(ortho[a])).map(|b| {
                format!("`{}` <= `{}` but not `{}`' <= `{}`'", nm(a), nm(b), nm(b), nm(a))
            })
        }),
    ));
    checks.push((
        Axiom::Complement,
        first_fail(&|x| {
            let y = ortho[x];
            if join[x * n + y] != one {
                Some(format!("`{}` v `{}`' = `{}` != 1", nm(x), nm(x), nm(join[x * n + y])))
            } else if meet[x * n + y] != zero {
                Some(format!("`{}` ^ `{}`' = `{}` != 0", nm(x), nm(x), nm(meet[x * n + y])))
            } else {
                None
            }
        }),
    ));
    checks.push((
        Axiom::Orthomodular,
        first_fail(&|a| {
            up[a].iter().find_map(|b| {
                let m = meet[b * n + ortho[a]];
                let rhs = join[a * n + m];
                (rhs != b).then(|| {
                    format!("`{}` <= `{}` but `{}` v (`{}` ^ `{}`') = `{}`", nm(a), nm(b), nm(a), nm(b), nm(a), nm(rhs))
                })
            })
        }),
    ));

    (AxiomReport { checks }, Some(Tables { down, meet, join, zero, one }))
}

impl OmlLattice {
    /// Builds a lattice from an order relation (as up-sets) and an
    /// orthocomplement table, rejecting anything that fails an axiom.
    pub fn from_order(
        name: impl Into<String>,
        names: Vec<String>,
        up: Vec<ElemSet>,
        ortho: Vec<ElemId>,
        max_elements: usize,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n < 2 {
            return Err(LatticeError::Degenerate(n));
        }
        let cap = max_elements.min(MAX_REPRESENTABLE);
        if n > cap {
            return Err(LatticeError::CapExceeded { size: n, cap });
        }
        if up.len() != n {
            return Err(LatticeError::BadParameter(format!("order has {} rows for {n} elements", up.len())));
        }
        let (report, tables) = audit_tables(&names, &up, &ortho);
        if let Some((axiom, witness)) = report.first_failure() {
            return Err(LatticeError::Axiom { axiom, witness: witness.to_owned() });
        }
        let t = tables.expect("tables exist when every axiom passes");
        Ok(OmlLattice {
            name: name.into(),
            names,
            up,
            down: t.down,
            meet: t.meet,
            join: t.join,
            ortho,
            zero: t.zero,
            one: t.one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: lattices have at least two elements.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.names.len()
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, x: ElemId) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn lookup(&self, name: &str) -> Result<ElemId, LatticeError> {
        self.index_of(name).ok_or_else(|| LatticeError::UnknownElement(name.to_owned()))
    }

    pub fn zero(&self) -> ElemId {
        self.zero
    }

    pub fn one(&self) -> ElemId {
        self.one
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.up[a].contains(b)
    }

    /// Strict order.
    pub fn lt(&self, a: ElemId, b: ElemId) -> bool {
        a != b && self.leq(a, b)
    }

    /// `{b | a <= b}`.
    pub fn up_set(&self, a: ElemId) -> ElemSet {
        self.up[a]
    }

    /// `{b | b <= a}`.
    pub fn down_set(&self, a: ElemId) -> ElemSet {
        self.down[a]
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.join[a * self.len() + b]
    }

    pub fn ortho(&self, a: ElemId) -> ElemId {
        self.ortho[a]
    }

    /// Meet of a set; the empty meet is 1.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = ElemId>) -> ElemId {
        xs.into_iter().fold(self.one, |acc, x| self.meet(acc, x))
    }

    /// Join of a set; the empty join is 0.
    pub fn join_all(&self, xs: impl IntoIterator<Item = ElemId>) -> ElemId {
        xs.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// Pairs `(a, b)` where `b` covers `a`, ordered by `(a, b)`.
    pub fn covers(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.up[a].iter() {
                if b == a {
                    continue;
                }
                let between = self.up[a].intersection(self.down[b]);
                if between.len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn check_id(&self, x: ElemId) -> Result<ElemId, LatticeError> {
        if x < self.len() {
            Ok(x)
        } else {
            Err(LatticeError::BadId(x))
        }
    }

    /// Re-runs the full axiom audit; always passes for a constructed value.
    pub fn audit(&self) -> AxiomReport {
        audit(&self.names, &self.up, &self.ortho)
    }

    /// Raw order rows, for exporters and isomorphism checks.
    pub fn up_sets(&self) -> &[ElemSet] {
        &self.up
    }

    pub fn ortho_table(&self) -> &[ElemId] {
        &self.ortho
    }

    /// The sub-ortholattice on `elems` with the inherited order and
    /// orthocomplement. Fails if `elems` is not closed under `'` or the
    /// induced order is not an orthomodular lattice.
    pub fn induced(&self, name: impl Into<String>, elems: ElemSet) -> Result<OmlLattice, LatticeError> {
        let ids: Vec<ElemId> = elems.iter().collect();
        let pos = |x: ElemId| ids.iter().position(|&y| y == x);
        let names = ids.iter().map(|&x| self.names[x].clone()).collect();
        let up = ids.iter().map(|&x| self.up[x].iter().filter_map(pos).collect()).collect();
        let ortho = ids
            .iter()
            .map(|&x| {
                pos(self.ortho[x]).ok_or_else(|| {
                    LatticeError::BadParameter(format!("`{}` is included but `{}` is not", self.names[x], self.names[self.ortho[x]]))
                })
            })
            .collect::<Result<_, _>>()?;
        OmlLattice::from_order(name, names, up, ortho, MAX_REPRESENTABLE)
    }

    /// Formats an element set as `{a, b, ...}` using element names.
    pub fn fmt_set(&self, s: ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|x| self.name_of(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Whether two lattices are isomorphic as ortholattices (brute-force search
/// with degree pruning; intended for the small lattices used in tests).
pub fn isomorphic(a: &OmlLattice, b: &OmlLattice) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let sig = |l: &OmlLattice, x: ElemId| (l.up[x].len(), l.down[x].len());
    let mut map = vec![usize::MAX; n];
    let mut used = ElemSet::EMPTY;

    fn extend(
        a: &OmlLattice,
        b: &OmlLattice,
        i: usize,
        map: &mut [usize],
        used: &mut ElemSet,
        sig: &dyn Fn(&OmlLattice, ElemId) -> (usize, usize),
    ) -> bool {
        let n = a.len();
        if i == n {
            return (0..n).all(|x| map[a.ortho(x)] == b.ortho(map[x]));
        }
        for y in 0..n {
            if used.contains(y) || sig(a, i) != sig(b, y) {
                continue;
            }
            let consistent = (0..i).all(|x| a.leq(x, i) == b.leq(map[x], y) && a.leq(i, x) == b.leq(y, map[x]));
            if !consistent {
                continue;
            }
            map[i] = y;
            used.insert(y);
            if extend(a, b, i + 1, map, used, sig) {
                return true;
            }
            used.remove(y);
            map[i] = usize::MAX;
        }
        false
    }

    extend(a, b, 0, &mut map, &mut used, &sig)
}
