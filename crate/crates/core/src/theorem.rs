//! The negation/meet preservation theorem, evaluated on concrete lattices.
//!
//! [`TheoremLab`] bundles a context graph, its daseinisation tables and a
//! universe of subobjects (every subobject when the oracle bound allows,
//! otherwise a frontier generated from the image of δ). On top of that it
//! evaluates the eight equivalent conditions, builds the two-case lemma
//! witnesses, runs the quantum-breakfast comparison and the full proposition
//! battery.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::context::{partitions_of_unity, AtomMask, ContextError, ContextGraph, ContextId};
use crate::dasein::DaseinMap;
use crate::elemset::ElemSet;
use crate::lattice::{enumerate_homomorphisms, verify_redei, ElemId, LatticeError, OmlLattice};
use crate::presheaf::{PresheafError, Subobject, SubobjectEntry, DEFAULT_ORACLE_BOUND};

pub const DEFAULT_FRONTIER_BUDGET: usize = 2048;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x5eed_da5e;

/// Pair and triple loops over the subobject universe run exhaustively up to
/// this many cases and are sampled beyond it.
const EXHAUSTIVE_CASES: usize = 1 << 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("lattice `{0}` has no element strictly between 0 and 1")]
    NoProperElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("condition index {0} is outside 1..=8")]
    BadCondition(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
}

#[derive(Debug, Clone, Copy)]
pub struct LabOptions {
    pub oracle_bound: u64,
    pub frontier_budget: usize,
    pub samples: usize,
    pub seed: u64,
    /// The element fixed in the theorem's hypothesis; defaults to the
    /// smallest id strictly between 0 and 1.
    pub z: Option<ElemId>,
}

impl Default for LabOptions {
    fn default() -> Self {
        LabOptions {
            oracle_bound: DEFAULT_ORACLE_BOUND,
            frontier_budget: DEFAULT_FRONTIER_BUDGET,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            z: None,
        }
    }
}

/// Subobjects reachable from the image of δ under `¬`, `~`, `∧` and `∨`.
#[derive(Debug, Clone)]
pub struct Frontier {
    pub subobjects: Vec<Subobject>,
    /// The closure finished within budget.
    pub closed: bool,
}

/// Breadth-first closure of the δ-image. Each new subobject is combined with
/// itself and everything found before it, so the result is closed under the
/// four operations unless the budget stops it first.
pub fn generate_frontier(d: &DaseinMap<'_>, budget: usize) -> Frontier {
    let g = d.graph();
    let mut seen: HashSet<Subobject> = HashSet::new();
    let mut list: Vec<Subobject> = Vec::new();
    let mut full = false;
    let push = |s: Subobject, seen: &mut HashSet<Subobject>, list: &mut Vec<Subobject>, full: &mut bool| {
        if seen.contains(&s) {
            return;
        }
        if list.len() >= budget {
            *full = true;
            return;
        }
        seen.insert(s.clone());
        list.push(s);
    };
    for s in d.image() {
        push(s.clone(), &mut seen, &mut list, &mut full);
    }
    let mut i = 0;
    while i < list.len() {
        let s = list[i].clone();
        push(g.heyting_not(&s).unwrap(), &mut seen, &mut list, &mut full);
        push(g.coheyting_not(&s).unwrap(), &mut seen, &mut list, &mut full);
        for j in 0..=i {
            let t = list[j].clone();
            push(g.meet(&s, &t).unwrap(), &mut seen, &mut list, &mut full);
            push(g.join(&s, &t).unwrap(), &mut seen, &mut list, &mut full);
        }
        i += 1;
        if full {
            break;
        }
    }
    Frontier { subobjects: list, closed: !full }
}

/// Why a condition fails, in terms of elements, a context and the two
/// subobjects that were expected to agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<ElemId>,
    pub context: Option<ContextId>,
    pub lhs: Option<Subobject>,
    pub rhs: Option<Subobject>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub index: usize,
    pub holds: bool,
    /// False when the check ran over a generated frontier instead of every subobject.
    pub exhaustive: bool,
    pub witness: Option<Witness>,
}

pub const CONDITION_LABELS: [&str; 8] = [
    "¬δ(x) = δ(x')",
    "~δ(x) = δ(x')",
    "δ(x) ∧ δ(y) = δ(x ∧ y)",
    "¬δ(x) ∈ im δ",
    "~δ(x) ∈ im δ",
    "δ(x) ∧ δ(y) ∈ im δ",
    "δ ∘ ε = id",
    "L = {0, z, z', 1}",
];

/// A place where the componentwise complement of `δ(x)` differs from `~δ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub element: ElemId,
    pub context: ContextId,
    pub closure: AtomMask,
    pub pointwise: AtomMask,
}

/// Comparison of `~` against the componentwise complement on daseinised
/// subobjects, with conditions 2 and 5 re-evaluated under the componentwise
/// reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConegationAudit {
    pub divergences: Vec<Divergence>,
    /// Elements whose componentwise complement of `δ(x)` is not closed under restriction.
    pub unclosed: Vec<ElemId>,
    pub condition2_pointwise: bool,
    pub condition5_pointwise: bool,
    pub all_agree_pointwise: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub lattice: String,
    pub z: ElemId,
    pub conditions: Vec<ConditionResult>,
    pub all_agree: bool,
    pub all_true: bool,
    pub subobject_count: usize,
    pub exhaustive: bool,
    /// Subobjects outside the image of δ; a lower bound when not exhaustive.
    pub phantom_count: usize,
    pub condition8_fixed_z: bool,
    pub condition8_existential: bool,
    pub audit: ConegationAudit,
}

impl TheoremReport {
    /// The meta-invariant: all eight conditions agree, and they are true
    /// exactly on four-element lattices.
    pub fn consistent(&self) -> bool {
        self.all_agree && self.all_true == self.condition8_existential
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaCase {
    /// Some `u ∈ {y, y'}` lies strictly below some `v ∈ {z, z'}`.
    A { u: ElemId, v: ElemId },
    /// No such comparable pair.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaWitness {
    pub x: ElemId,
    pub b0: ContextId,
    pub case: LemmaCase,
    pub neg_empty_at_b0: bool,
    pub neg_nonbottom: bool,
    pub coneg_empty_at_b0: bool,
    pub coneg_nonbottom: bool,
    /// The co-negation checks redone with the componentwise complement.
    pub pointwise_empty_at_b0: bool,
    pub pointwise_nonbottom: bool,
}

impl LemmaWitness {
    pub fn negation_ok(&self) -> bool {
        self.neg_empty_at_b0 && self.neg_nonbottom
    }

    pub fn conegation_ok(&self) -> bool {
        self.coneg_empty_at_b0 && self.coneg_nonbottom
    }

    pub fn valid(&self) -> bool {
        self.negation_ok() && self.conegation_ok()
    }
}

/// `e ∧ (b ∨ s)` against `(e ∧ b) ∨ (e ∧ s)`, in the lattice and after daseinisation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakfastRecord {
    pub e: String,
    pub b: String,
    pub s: String,
    pub lattice_lhs: String,
    pub lattice_rhs: String,
    pub lattice_distributes: bool,
    pub subobject_lhs: Vec<SubobjectEntry>,
    pub subobject_rhs: Vec<SubobjectEntry>,
    pub subobjects_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub exhaustive: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub lattice: String,
    pub propositions: Vec<PropositionResult>,
}

impl BatteryReport {
    pub fn all_pass(&self) -> bool {
        self.propositions.iter().all(|p| p.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropositionResult> {
        self.propositions.iter().find(|p| p.name == name)
    }
}

pub struct TheoremLab<'g> {
    dasein: DaseinMap<'g>,
    universe: Vec<Subobject>,
    exhaustive: bool,
    opts: LabOptions,
    z: ElemId,
}

impl<'g> TheoremLab<'g> {
    pub fn new(graph: &'g ContextGraph, opts: LabOptions) -> Result<Self, TheoremError> {
        let l = graph.lattice();
        let z = match opts.z {
            Some(z) => {
                l.check_id(z)?;
                if z == l.zero() || z == l.one() {
                    return Err(TheoremError::Precondition(format!("z = `{}` must lie strictly between 0 and 1", l.name_of(z))));
                }
                z
            }
            None => l
                .elements()
                .find(|&x| x != l.zero() && x != l.one())
                .ok_or_else(|| TheoremError::NoProperElement(l.name().into()))?,
        };
        let dasein = DaseinMap::new(graph);
        let (universe, exhaustive) = match graph.enumerate_all_subobjects(opts.oracle_bound) {
            Ok(o) => (o.subobjects().to_vec(), true),
            Err(PresheafError::BoundExceeded { .. }) => (generate_frontier(&dasein, opts.frontier_budget).subobjects, false),
            Err(e) => return Err(e.into()),
        };
        Ok(TheoremLab { dasein, universe, exhaustive, opts, z })
    }

    pub fn graph(&self) -> &'g ContextGraph {
        self.dasein.graph()
    }

    pub fn lattice(&self) -> &'g OmlLattice {
        self.dasein.graph().lattice()
    }

    pub fn dasein(&self) -> &DaseinMap<'g> {
        &self.dasein
    }

    /// Every subobject when exhaustive, otherwise the generated frontier.
    pub fn universe(&self) -> &[Subobject] {
        &self.universe
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn z(&self) -> ElemId {
        self.z
    }

    fn delta(&self, x: ElemId) -> &Subobject {
        self.dasein.daseinise(x)
    }

    fn neg(&self, x: ElemId) -> Subobject {
        self.graph().heyting_not(self.delta(x)).expect("same graph")
    }

    fn coneg(&self, x: ElemId) -> Subobject {
        self.graph().coheyting_not(self.delta(x)).expect("same graph")
    }

    fn meet_of(&self, x: ElemId, y: ElemId) -> Subobject {
        self.graph().meet(self.delta(x), self.delta(y)).expect("same graph")
    }

    fn mismatch(&self, elements: Vec<ElemId>, lhs: Subobject, rhs: Subobject, note: String) -> Witness {
        Witness { elements, context: lhs.first_difference(&rhs), lhs: Some(lhs), rhs: Some(rhs), note }
    }

    fn pairs(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        let n = self.lattice().len();
        (0..n).flat_map(move |x| (x..n).map(move |y| (x, y)))
    }

    fn equality_scan(&self, lhs: impl Fn(ElemId) -> Subobject, rhs: impl Fn(ElemId) -> Subobject, what: &str) -> Option<Witness> {
        let l = self.lattice();
        l.elements().find_map(|x| {
            let (a, b) = (lhs(x), rhs(x));
            (a != b).then(|| self.mismatch(vec![x], a, b, format!("{what} fails at x = {}", l.name_of(x))))
        })
    }

    fn image_scan(&self, f: impl Fn(ElemId) -> Subobject, what: &str) -> Option<Witness> {
        let l = self.lattice();
        l.elements().find_map(|x| {
            let s = f(x);
            let u = self.dasein.epsilon(&s).unwrap();
            (*self.delta(u) != s).then(|| {
                self.mismatch(vec![x, u], s, self.delta(u).clone(), format!("{what} at x = {} is not δ of anything (ε gives {})", l.name_of(x), l.name_of(u)))
            })
        })
    }

    fn condition8_fixed(&self) -> Option<ElemId> {
        let l = self.lattice();
        let allowed = [l.zero(), self.z, l.ortho(self.z), l.one()];
        l.elements().find(|x| !allowed.contains(x))
    }

    fn condition8_existential(&self) -> bool {
        let l = self.lattice();
        l.len() == 4 && l.elements().any(|z| z != l.zero() && z != l.one())
    }

    /// Evaluates condition `k` (1..=8), with a witness when it fails.
    pub fn check_condition(&self, k: usize) -> Result<ConditionResult, TheoremError> {
        let l = self.lattice();
        let g = self.graph();
        let mut exhaustive = true;
        let witness = match k {
            1 => self.equality_scan(|x| self.neg(x), |x| self.delta(l.ortho(x)).clone(), "¬δ(x) = δ(x')"),
            2 => self.equality_scan(|x| self.coneg(x), |x| self.delta(l.ortho(x)).clone(), "~δ(x) = δ(x')"),
            3 => self.pairs().find_map(|(x, y)| {
                let (a, b) = (self.meet_of(x, y), self.delta(l.meet(x, y)).clone());
                (a != b).then(|| self.mismatch(vec![x, y], a, b, format!("δ({0}) ∧ δ({1}) ≠ δ({0} ∧ {1})", l.name_of(x), l.name_of(y))))
            }),
            4 => self.image_scan(|x| self.neg(x), "¬δ(x)"),
            5 => self.image_scan(|x| self.coneg(x), "~δ(x)"),
            6 => self.pairs().find_map(|(x, y)| {
                let s = self.meet_of(x, y);
                let u = self.dasein.epsilon(&s).unwrap();
                (*self.delta(u) != s).then(|| {
                    self.mismatch(vec![x, y, u], s, self.delta(u).clone(), format!("δ({}) ∧ δ({}) is not δ of anything", l.name_of(x), l.name_of(y)))
                })
            }),
            7 => {
                exhaustive = self.exhaustive;
                self.universe.iter().find_map(|s| {
                    let u = self.dasein.epsilon(s).unwrap();
                    (self.delta(u) != s).then(|| {
                        self.mismatch(vec![u], self.delta(u).clone(), s.clone(), format!("δ(ε(S)) = δ({}) ≠ S = {}", l.name_of(u), g.describe(s)))
                    })
                })
            }
            8 => self.condition8_fixed().map(|y| Witness {
                elements: vec![y],
                context: None,
                lhs: None,
                rhs: None,
                note: format!("`{}` ∉ {{0, {}, {}, 1}}", l.name_of(y), l.name_of(self.z), l.name_of(l.ortho(self.z))),
            }),
            _ => return Err(TheoremError::BadCondition(k)),
        };
        Ok(ConditionResult { index: k, holds: witness.is_none(), exhaustive, witness })
    }

    /// Componentwise complement audit over the image of δ.
    pub fn conegation_audit(&self) -> ConegationAudit {
        let l = self.lattice();
        let g = self.graph();
        let mut divergences = Vec::new();
        let mut unclosed = Vec::new();
        let mut cond2 = true;
        let mut cond5 = true;
        for x in l.elements() {
            let closure = self.coneg(x);
            let pointwise = g.pointwise_complement(self.delta(x)).unwrap();
            for b in g.ids() {
                if closure.at(b) != pointwise[b] {
                    divergences.push(Divergence { element: x, context: b, closure: closure.at(b), pointwise: pointwise[b] });
                }
            }
            if g.subobject(pointwise.clone()).is_err() {
                unclosed.push(x);
            }
            if self.delta(l.ortho(x)).sets() != pointwise.as_slice() {
                cond2 = false;
            }
            if !self.dasein.image().iter().any(|s| s.sets() == pointwise.as_slice()) {
                cond5 = false;
            }
        }
        ConegationAudit { divergences, unclosed, condition2_pointwise: cond2, condition5_pointwise: cond5, all_agree_pointwise: false }
    }

    /// All eight conditions, evaluated concurrently and merged in order.
    pub fn equivalence_report(&self) -> Result<TheoremReport, TheoremError> {
        let results: Vec<Result<ConditionResult, TheoremError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (1..=8).map(|k| scope.spawn(move || self.check_condition(k))).collect();
            handles.into_iter().map(|h| h.join().expect("condition check panicked")).collect()
        });
        let conditions = results.into_iter().collect::<Result<Vec<_>, _>>()?;
        let first = conditions[0].holds;
        let all_agree = conditions.iter().all(|c| c.holds == first);
        let mut audit = self.conegation_audit();
        audit.all_agree_pointwise = conditions
            .iter()
            .map(|c| match c.index {
                2 => audit.condition2_pointwise,
                5 => audit.condition5_pointwise,
                _ => c.holds,
            })
            .all(|h| h == first);
        let n = self.lattice().len();
        let phantom_count = self.universe.iter().filter(|s| self.dasein.image_test(s).unwrap().is_none()).count();
        debug_assert!(!self.exhaustive || phantom_count == self.universe.len() - n);
        Ok(TheoremReport {
            lattice: self.lattice().name().into(),
            z: self.z,
            all_true: all_agree && first,
            conditions,
            all_agree,
            subobject_count: self.universe.len(),
            exhaustive: self.exhaustive,
            phantom_count,
            condition8_fixed_z: self.condition8_fixed().is_none(),
            condition8_existential: self.condition8_existential(),
            audit,
        })
    }

    /// The two-case construction of an element `x` and context `B₀` at which
    /// `¬δ(x)` and `~δ(x)` are empty although neither is the bottom.
    pub fn lemma_witness(&self, z: ElemId, y: ElemId) -> Result<LemmaWitness, TheoremError> {
        let l = self.lattice();
        let g = self.graph();
        l.check_id(z)?;
        l.check_id(y)?;
        if z == l.zero() || z == l.one() {
            return Err(TheoremError::Precondition(format!("z = `{}` must lie strictly between 0 and 1", l.name_of(z))));
        }
        if [l.zero(), z, l.ortho(z), l.one()].contains(&y) {
            return Err(TheoremError::Precondition(format!("y = `{}` must lie outside {{0, z, z', 1}}", l.name_of(y))));
        }
        let comparable = [y, l.ortho(y)]
            .into_iter()
            .flat_map(|u| [z, l.ortho(z)].into_iter().map(move |v| (u, v)))
            .find(|&(u, v)| l.lt(u, v));
        let (x, pivot, case) = match comparable {
            Some((u, v)) => (l.ortho(u), v, LemmaCase::A { u, v }),
            None => (y, z, LemmaCase::B),
        };
        let b0 = g
            .find_pair_context(pivot)
            .ok_or_else(|| TheoremError::Precondition(format!("no context {{0, {0}, {0}', 1}}", l.name_of(pivot))))?;
        let neg = self.neg(x);
        let coneg = self.coneg(x);
        let pointwise = g.pointwise_complement(self.delta(x))?;
        Ok(LemmaWitness {
            x,
            b0,
            case,
            neg_empty_at_b0: neg.at(b0) == 0,
            neg_nonbottom: neg != g.bottom(),
            coneg_empty_at_b0: coneg.at(b0) == 0,
            coneg_nonbottom: coneg != g.bottom(),
            pointwise_empty_at_b0: pointwise[b0] == 0,
            pointwise_nonbottom: pointwise.iter().any(|&m| m != 0),
        })
    }

    /// Every admissible `(z, y)` pair, in id order.
    pub fn lemma_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let l = self.lattice();
        let mut out = Vec::new();
        for z in l.elements().filter(|&z| z != l.zero() && z != l.one()) {
            for y in l.elements().filter(|y| ![l.zero(), z, l.ortho(z), l.one()].contains(y)) {
                out.push((z, y));
            }
        }
        out
    }

    pub fn breakfast(&self, e: ElemId, b: ElemId, s: ElemId) -> Result<BreakfastRecord, TheoremError> {
        let l = self.lattice();
        let g = self.graph();
        for x in [e, b, s] {
            l.check_id(x)?;
        }
        let lhs = l.meet(e, l.join(b, s));
        let rhs = l.join(l.meet(e, b), l.meet(e, s));
        let (de, db, ds) = (self.delta(e), self.delta(b), self.delta(s));
        let slhs = g.meet(de, &g.join(db, ds)?)?;
        let srhs = g.join(&g.meet(de, db)?, &g.meet(de, ds)?)?;
        Ok(BreakfastRecord {
            e: l.name_of(e).into(),
            b: l.name_of(b).into(),
            s: l.name_of(s).into(),
            lattice_lhs: l.name_of(lhs).into(),
            lattice_rhs: l.name_of(rhs).into(),
            lattice_distributes: lhs == rhs,
            subobject_lhs: g.export_subobject(&slhs),
            subobject_rhs: g.export_subobject(&srhs),
            subobjects_equal: slhs == srhs,
        })
    }

    pub fn battery(&self) -> BatteryReport {
        Battery { lab: self, rng: ChaCha8Rng::seed_from_u64(self.opts.seed), out: Vec::new() }.run()
    }
}

/// Accumulates proposition results.
struct Battery<'a, 'g> {
    lab: &'a TheoremLab<'g>,
    rng: ChaCha8Rng,
    out: Vec<PropositionResult>,
}

impl Battery<'_, '_> {
    fn record<I, F>(&mut self, name: &'static str, exhaustive: bool, cases: I, mut check: F)
    where
        I: IntoIterator,
        F: FnMut(I::Item) -> Option<String>,
    {
        let mut checked = 0;
        let mut counterexample = None;
        for c in cases {
            checked += 1;
            if let Some(msg) = check(c) {
                counterexample = Some(msg);
                break;
            }
        }
        self.out.push(PropositionResult { name, passed: counterexample.is_none(), checked, exhaustive, counterexample });
    }

    /// Index tuples over a universe of size `n`: every tuple when there are
    /// few enough, otherwise a seeded sample.
    fn tuples<const K: usize>(&mut self, n: usize) -> (Vec<[usize; K]>, bool) {
        let total = n.checked_pow(K as u32).unwrap_or(usize::MAX);
        if total <= EXHAUSTIVE_CASES {
            let v = (0..total)
                .map(|mut i| {
                    let mut t = [0; K];
                    for slot in t.iter_mut() {
                        *slot = i % n;
                        i /= n;
                    }
                    t
                })
                .collect();
            (v, true)
        } else {
            let samples = self.lab.opts.samples;
            let v = (0..samples).map(|_| std::array::from_fn(|_| self.rng.gen_range(0..n))).collect();
            (v, false)
        }
    }

    fn run(mut self) -> BatteryReport {
        self.lattice_props();
        self.context_props();
        self.presheaf_props();
        self.dasein_props();
        BatteryReport { lattice: self.lab.lattice().name().into(), propositions: self.out }
    }

    fn lattice_props(&mut self) {
        let l = self.lab.lattice();
        let g = self.lab.graph();
        let n = l.len();
        let nm = |x: ElemId| l.name_of(x).to_owned();
        let pairs: Vec<(ElemId, ElemId)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();

        let report = l.audit();
        self.record("axioms", true, [()], |_| report.first_failure().map(|(a, w)| format!("{a}: {w}")));
        self.record("commutation-equivalents", true, pairs.iter().copied(), |(a, b)| {
            let eq = l.commute_equivalents(a, b);
            (!eq.iter().all(|&v| v == eq[0])).then(|| format!("a = {}, b = {}: {:?}", nm(a), nm(b), eq))
        });
        self.record("commuting-implies-distributive", true, (0..n * n * n).map(|i| (i / (n * n), i / n % n, i % n)), |(a, b, c)| {
            (l.commutes(b, a) && l.commutes(c, a) && !l.is_distributive_triple(a, b, c))
                .then(|| format!("{{{}, {}, {}}}", nm(a), nm(b), nm(c)))
        });
        let all_commute = pairs.iter().all(|&(a, b)| l.commutes(a, b));
        let center = l.center();
        self.record("boolean-iff-pairwise-commuting", true, [()], |_| {
            (l.is_boolean() != all_commute || l.is_boolean() != (center == l.all()))
                .then(|| format!("center {} but pairwise commuting = {all_commute}", l.fmt_set(center)))
        });
        self.record("center-is-commutant", true, l.elements(), |x| {
            let commutes_all = l.elements().all(|y| l.commutes(x, y));
            (center.contains(x) != commutes_all).then(|| format!("{} in center = {}, commutes with all = {commutes_all}", nm(x), center.contains(x)))
        });

        let blocks: Vec<(ContextId, OmlLattice)> =
            g.ids().filter_map(|b| l.induced(g.label(b), g.context(b).elems()).ok().map(|x| (b, x))).collect();
        let all_blocks = blocks.len() == g.len();
        self.record("contexts-are-boolean", true, g.ids(), |b| {
            let c = g.context(b);
            let closed = c.elems().iter().all(|x| {
                c.contains(l.ortho(x)) && c.elems().iter().all(|y| c.contains(l.meet(x, y)) && c.contains(l.join(x, y)) && l.commutes(x, y))
            });
            let boolean = blocks.iter().any(|(id, sub)| *id == b && sub.is_boolean());
            (!closed || !boolean || !all_blocks).then(|| g.label(b))
        });
        self.record("ultrafilters-are-homomorphism-kernels", true, blocks.iter(), |(b, sub)| {
            (!verify_redei(sub).unwrap_or(false)).then(|| g.label(*b))
        });
        self.record("atoms-index-homomorphisms", true, blocks.iter(), |(b, sub)| {
            let homs = enumerate_homomorphisms(sub).unwrap_or_default();
            let mut by_atom: Vec<ElemSet> = sub.atoms().iter().map(|&a| sub.up_set(a)).collect();
            by_atom.sort();
            (homs != by_atom).then(|| format!("{}: {} homomorphisms, {} atoms", g.label(*b), homs.len(), by_atom.len()))
        });
        self.record("alpha-isomorphism", true, g.ids(), |b| {
            let c = g.context(b);
            let elems: Vec<ElemId> = c.elems().iter().collect();
            let masks: HashSet<AtomMask> = elems.iter().map(|&x| g.alpha(b, x).unwrap()).collect();
            if masks.len() != elems.len() || masks.len() != 1 << c.atoms().len() {
                return Some(format!("{}: α not bijective", g.label(b)));
            }
            for &x in &elems {
                let ax = g.alpha(b, x).unwrap();
                if g.alpha(b, l.ortho(x)).unwrap() != c.full_mask() & !ax || g.alpha_inv(b, ax).unwrap() != x {
                    return Some(format!("{}: complement or inverse fails at {}", g.label(b), nm(x)));
                }
                for &y in &elems {
                    let ay = g.alpha(b, y).unwrap();
                    if g.alpha(b, l.join(x, y)).unwrap() != ax | ay || g.alpha(b, l.meet(x, y)).unwrap() != ax & ay {
                        return Some(format!("{}: join/meet law fails at ({}, {})", g.label(b), nm(x), nm(y)));
                    }
                }
            }
            None
        });
    }

    fn context_props(&mut self) {
        let l = self.lab.lattice();
        let g = self.lab.graph();
        self.record("contexts-match-partitions", true, [()], |_| {
            let mut want = partitions_of_unity(l);
            if g.includes_trivial() {
                want.push(ElemSet::singleton(l.one()));
            }
            want.sort();
            let mut got: Vec<ElemSet> = g.contexts().iter().map(|c| c.atoms().iter().copied().collect()).collect();
            got.sort();
            (want != got).then(|| format!("{} partitions, {} contexts", want.len(), got.len()))
        });
        let inclusions: Vec<(ContextId, ContextId)> = g.ids().flat_map(|sup| g.below(sup).iter().map(move |&sub| (sup, sub))).collect();
        self.record("restriction-lands-on-atoms", true, inclusions.iter().copied(), |(sup, sub)| {
            g.context(sup).atoms().iter().find_map(|&a| {
                let r = g.least_above(a, sub);
                (!g.context(sub).atoms().contains(&r)).then(|| format!("{} -> {}: {} goes to {}", g.label(sup), g.label(sub), l.name_of(a), l.name_of(r)))
            })
        });
        let chains: Vec<(ContextId, ContextId, ContextId)> =
            inclusions.iter().flat_map(|&(a, b)| g.below(b).iter().map(move |&c| (a, b, c))).collect();
        self.record("restriction-functorial", true, chains, |(a, b, c)| {
            (0..g.context(a).atoms().len()).find_map(|i| {
                let m = 1 << i;
                (g.restrict_mask(b, c, g.restrict_mask(a, b, m)) != g.restrict_mask(a, c, m))
                    .then(|| format!("{} -> {} -> {}", g.label(a), g.label(b), g.label(c)))
            })
        });
    }

    fn presheaf_props(&mut self) {
        let g = self.lab.graph();
        let u = self.lab.universe();
        let n = u.len();
        let d = |s: &Subobject| g.describe(s);
        let (pairs, pairs_ex) = self.tuples::<2>(n);
        let (triples, triples_ex) = self.tuples::<3>(n);

        self.record("operations-closed", pairs_ex, pairs.iter(), |&[i, j]| {
            let (s, t) = (&u[i], &u[j]);
            let results = [
                g.meet(s, t).unwrap(),
                g.join(s, t).unwrap(),
                g.heyting_implies(s, t).unwrap(),
                g.coheyting_implies(s, t).unwrap(),
                g.heyting_not(s).unwrap(),
                g.coheyting_not(s).unwrap(),
            ];
            results.iter().any(|r| !g.is_closed(r)).then(|| format!("S = {}, T = {}", d(s), d(t)))
        });
        self.record("subobjects-distributive", triples_ex, triples.iter(), |&[i, j, k]| {
            let (s, t, r) = (&u[i], &u[j], &u[k]);
            let a = g.meet(s, &g.join(t, r).unwrap()).unwrap() == g.join(&g.meet(s, t).unwrap(), &g.meet(s, r).unwrap()).unwrap();
            let b = g.join(s, &g.meet(t, r).unwrap()).unwrap() == g.meet(&g.join(s, t).unwrap(), &g.join(s, r).unwrap()).unwrap();
            (!a || !b).then(|| format!("{}, {}, {}", d(s), d(t), d(r)))
        });
        self.record("heyting-residuation", triples_ex, triples.iter(), |&[i, j, k]| {
            let (r, s, t) = (&u[i], &u[j], &u[k]);
            let lhs = g.leq(r, &g.heyting_implies(s, t).unwrap()).unwrap();
            let rhs = g.leq(&g.meet(r, s).unwrap(), t).unwrap();
            (lhs != rhs).then(|| format!("R = {}, S = {}, T = {}", d(r), d(s), d(t)))
        });
        self.record("coheyting-residuation", triples_ex, triples.iter(), |&[i, j, k]| {
            let (s, t, r) = (&u[i], &u[j], &u[k]);
            let lhs = g.leq(&g.coheyting_implies(s, t).unwrap(), r).unwrap();
            let rhs = g.leq(s, &g.join(t, r).unwrap()).unwrap();
            (lhs != rhs).then(|| format!("S = {}, T = {}, R = {}", d(s), d(t), d(r)))
        });
        self.record("negation-laws", true, u.iter(), |s| {
            let ok = g.meet(s, &g.heyting_not(s).unwrap()).unwrap() == g.bottom()
                && g.join(s, &g.coheyting_not(s).unwrap()).unwrap() == g.top();
            (!ok).then(|| d(s))
        });
        let exhaustive = self.lab.is_exhaustive();
        self.record("conegation-minimal", pairs_ex && exhaustive, pairs.iter(), |&[i, j]| {
            let (t, r) = (&u[i], &u[j]);
            (g.join(t, r).unwrap() == g.top() && !g.leq(&g.coheyting_not(t).unwrap(), r).unwrap())
                .then(|| format!("T = {}, R = {}", d(t), d(r)))
        });
    }

    fn dasein_props(&mut self) {
        let lab = self.lab;
        let l = lab.lattice();
        let g = lab.graph();
        let dm = lab.dasein();
        let u = lab.universe();
        let n = l.len();
        let nm = |x: ElemId| l.name_of(x).to_owned();
        let pairs: Vec<(ElemId, ElemId)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let xb: Vec<(ElemId, ContextId)> = l.elements().flat_map(|x| g.ids().map(move |b| (x, b))).collect();
        let inclusions: Vec<(ElemId, ContextId, ContextId)> =
            l.elements().flat_map(|x| g.ids().flat_map(move |sup| g.below(sup).iter().map(move |&sub| (x, sup, sub)))).collect();

        self.record("dasein-least-above", true, xb.iter().copied(), |(x, b)| {
            let v = dm.dasein_to(x, b);
            let elems = g.context(b).elems();
            let ok = elems.contains(v) && l.leq(x, v) && elems.iter().filter(|&y| l.leq(x, y)).all(|y| l.leq(v, y));
            (!ok).then(|| format!("x = {}, {}", nm(x), g.label(b)))
        });
        self.record("dasein-restriction-surjective", true, inclusions.iter().copied(), |(x, sup, sub)| {
            (!dm.restriction_surjective(x, sup, sub)).then(|| format!("x = {}, {} -> {}", nm(x), g.label(sup), g.label(sub)))
        });
        self.record("dasein-atom-decomposition", true, inclusions.iter().copied(), |(x, sup, sub)| {
            (!dm.atom_decomposition_holds(x, sup, sub)).then(|| format!("x = {}, {} -> {}", nm(x), g.label(sup), g.label(sub)))
        });
        self.record("dasein-coarser-is-larger", true, inclusions.iter().copied(), |(x, sup, sub)| {
            (!l.leq(dm.dasein_to(x, sup), dm.dasein_to(x, sub))).then(|| format!("x = {}, {} -> {}", nm(x), g.label(sup), g.label(sub)))
        });
        self.record("dasein-join-pairs", true, pairs.iter().copied(), |(x, y)| {
            (!dm.preserves_join([x, y].into_iter().collect())).then(|| format!("{{{}, {}}}", nm(x), nm(y)))
        });
        let samples = lab.opts.samples.min(1000);
        let subsets: Vec<ElemSet> = (0..samples).map(|_| l.elements().filter(|_| self.rng.gen_bool(0.5)).collect()).collect();
        self.record("dasein-join-subsets", false, subsets, |xs| (!dm.preserves_join(xs)).then(|| l.fmt_set(xs)));
        self.record("dasein-monotone", true, pairs.iter().copied(), |(x, y)| {
            (l.leq(x, y) && !g.leq(dm.daseinise(x), dm.daseinise(y)).unwrap()).then(|| format!("{} <= {}", nm(x), nm(y)))
        });
        self.record("dasein-injective", true, [()], |_| dm.injectivity_violation().map(|(x, y)| format!("δ({}) = δ({})", nm(x), nm(y))));
        self.record("epsilon-after-dasein-is-identity", true, l.elements(), |x| {
            let e = dm.epsilon(dm.daseinise(x)).unwrap();
            (e != x).then(|| format!("ε(δ({})) = {}", nm(x), nm(e)))
        });
        let exhaustive = lab.is_exhaustive();
        self.record("dasein-after-epsilon-deflationary", exhaustive, u.iter(), |s| {
            let e = dm.epsilon(s).unwrap();
            (!g.leq(dm.daseinise(e), s).unwrap()).then(|| g.describe(s))
        });
        self.record("epsilon-forms-agree", exhaustive, u.iter(), |s| {
            let (a, b) = (dm.epsilon(s).unwrap(), dm.epsilon_sup(s).unwrap());
            (a != b).then(|| format!("{}: meet form {}, supremum form {}", g.describe(s), nm(a), nm(b)))
        });
        let (upairs, upairs_ex) = self.tuples::<2>(u.len());
        self.record("epsilon-preserves-meets", upairs_ex && exhaustive, upairs.iter(), |&[i, j]| {
            let (s, t) = (&u[i], &u[j]);
            let lhs = dm.epsilon(&g.meet(s, t).unwrap()).unwrap();
            let rhs = l.meet(dm.epsilon(s).unwrap(), dm.epsilon(t).unwrap());
            (lhs != rhs).then(|| format!("S = {}, T = {}", g.describe(s), g.describe(t)))
        });
        self.record("negation-sandwich", true, l.elements(), |x| {
            let neg = lab.neg(x);
            let coneg = lab.coneg(x);
            let ok = g.leq(&neg, &coneg).unwrap() && g.leq(&coneg, dm.daseinise(l.ortho(x))).unwrap();
            (!ok).then(|| format!("x = {}", nm(x)))
        });
        let triples = (0..n * n * n).map(|i| (i / (n * n), i / n % n, i % n));
        self.record("dasein-breakfast-distributes", true, triples, |(e, b, s)| {
            let r = lab.breakfast(e, b, s).unwrap();
            (!r.subobjects_equal).then(|| format!("({}, {}, {})", nm(e), nm(b), nm(s)))
        });
    }
}

// ---------------------------------------------------------------------------
// Rendering

#[derive(Debug, Clone, Serialize)]
pub struct WitnessExport {
    pub elements: Vec<String>,
    pub context: Option<String>,
    pub lhs: Option<Vec<SubobjectEntry>>,
    pub rhs: Option<Vec<SubobjectEntry>>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionExport {
    pub index: usize,
    pub statement: &'static str,
    pub holds: bool,
    pub exhaustive: bool,
    pub witness: Option<WitnessExport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceExport {
    pub element: String,
    pub context: String,
    pub closure: Vec<String>,
    pub pointwise: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditExport {
    pub divergences: Vec<DivergenceExport>,
    pub unclosed: Vec<String>,
    pub condition2_pointwise: bool,
    pub condition5_pointwise: bool,
    pub all_agree_pointwise: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReportExport {
    pub lattice: String,
    pub z: String,
    pub conditions: Vec<ConditionExport>,
    pub all_agree: bool,
    pub all_true: bool,
    pub consistent: bool,
    pub subobject_count: usize,
    pub exhaustive: bool,
    pub phantom_count: usize,
    pub condition8_fixed_z: bool,
    pub condition8_existential: bool,
    pub conegation_audit: AuditExport,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaWitnessExport {
    pub z: String,
    pub y: String,
    pub x: String,
    pub b0: String,
    pub case: &'static str,
    pub u: Option<String>,
    pub v: Option<String>,
    pub neg_empty_at_b0: bool,
    pub neg_nonbottom: bool,
    pub coneg_empty_at_b0: bool,
    pub coneg_nonbottom: bool,
    pub pointwise_empty_at_b0: bool,
    pub pointwise_nonbottom: bool,
}

impl LemmaWitness {
    pub fn to_export(&self, g: &ContextGraph, z: ElemId, y: ElemId) -> LemmaWitnessExport {
        let l = g.lattice();
        let nm = |x: ElemId| l.name_of(x).to_owned();
        let (case, u, v) = match self.case {
            LemmaCase::A { u, v } => ("a", Some(nm(u)), Some(nm(v))),
            LemmaCase::B => ("b", None, None),
        };
        LemmaWitnessExport {
            z: nm(z),
            y: nm(y),
            x: nm(self.x),
            b0: g.label(self.b0),
            case,
            u,
            v,
            neg_empty_at_b0: self.neg_empty_at_b0,
            neg_nonbottom: self.neg_nonbottom,
            coneg_empty_at_b0: self.coneg_empty_at_b0,
            coneg_nonbottom: self.coneg_nonbottom,
            pointwise_empty_at_b0: self.pointwise_empty_at_b0,
            pointwise_nonbottom: self.pointwise_nonbottom,
        }
    }
}

impl TheoremReport {
    pub fn to_export(&self, g: &ContextGraph) -> TheoremReportExport {
        let l = g.lattice();
        let nm = |x: ElemId| l.name_of(x).to_owned();
        let conditions = self
            .conditions
            .iter()
            .map(|c| ConditionExport {
                index: c.index,
                statement: CONDITION_LABELS[c.index - 1],
                holds: c.holds,
                exhaustive: c.exhaustive,
                witness: c.witness.as_ref().map(|w| WitnessExport {
                    elements: w.elements.iter().map(|&x| nm(x)).collect(),
                    context: w.context.map(|b| g.label(b)),
                    lhs: w.lhs.as_ref().map(|s| g.export_subobject(s)),
                    rhs: w.rhs.as_ref().map(|s| g.export_subobject(s)),
                    note: w.note.clone(),
                }),
            })
            .collect();
        let a = &self.audit;
        TheoremReportExport {
            lattice: self.lattice.clone(),
            z: nm(self.z),
            conditions,
            all_agree: self.all_agree,
            all_true: self.all_true,
            consistent: self.consistent(),
            subobject_count: self.subobject_count,
            exhaustive: self.exhaustive,
            phantom_count: self.phantom_count,
            condition8_fixed_z: self.condition8_fixed_z,
            condition8_existential: self.condition8_existential,
            conegation_audit: AuditExport {
                divergences: a
                    .divergences
                    .iter()
                    .map(|d| DivergenceExport {
                        element: nm(d.element),
                        context: g.label(d.context),
                        closure: g.mask_names(d.context, d.closure).into_iter().map(str::to_owned).collect(),
                        pointwise: g.mask_names(d.context, d.pointwise).into_iter().map(str::to_owned).collect(),
                    })
                    .collect(),
                unclosed: a.unclosed.iter().map(|&x| nm(x)).collect(),
                condition2_pointwise: a.condition2_pointwise,
                condition5_pointwise: a.condition5_pointwise,
                all_agree_pointwise: a.all_agree_pointwise,
            },
        }
    }

    /// Human-readable table. The co-negation audit is appended when `audit` is set.
    pub fn render_text(&self, g: &ContextGraph, audit: bool) -> String {
        let l = g.lattice();
        let mut out = String::new();
        writeln!(out, "lattice {} ({} elements, {} contexts), z = {}", self.lattice, l.len(), g.len(), l.name_of(self.z)).unwrap();
        for c in &self.conditions {
            let partial = if c.exhaustive { "" } else { " (partial)" };
            writeln!(out, "  [{}] {:<5} {}{}", c.index, c.holds, CONDITION_LABELS[c.index - 1], partial).unwrap();
            if let Some(w) = &c.witness {
                writeln!(out, "        {}", w.note).unwrap();
                if let (Some(b), Some(lhs), Some(rhs)) = (w.context, &w.lhs, &w.rhs) {
                    writeln!(
                        out,
                        "        first difference at {}: {{{}}} vs {{{}}}",
                        g.label(b),
                        g.mask_names(b, lhs.at(b)).join(", "),
                        g.mask_names(b, rhs.at(b)).join(", ")
                    )
                    .unwrap();
                }
            }
        }
        let kind = if self.exhaustive { "all subobjects" } else { "generated frontier" };
        writeln!(out, "subobjects: {} ({kind}), phantoms: {}", self.subobject_count, self.phantom_count).unwrap();
        writeln!(out, "condition 8 readings: fixed z = {}, some z = {}", self.condition8_fixed_z, self.condition8_existential).unwrap();
        writeln!(out, "all agree: {}", self.all_agree).unwrap();
        if audit {
            let a = &self.audit;
            writeln!(out, "co-negation audit (componentwise complement):").unwrap();
            writeln!(out, "  divergent components: {}", a.divergences.len()).unwrap();
            for d in &a.divergences {
                writeln!(
                    out,
                    "    x = {} at {}: closure {{{}}}, componentwise {{{}}}",
                    l.name_of(d.element),
                    g.label(d.context),
                    g.mask_names(d.context, d.closure).join(", "),
                    g.mask_names(d.context, d.pointwise).join(", ")
                )
                .unwrap();
            }
            let unclosed: Vec<&str> = a.unclosed.iter().map(|&x| l.name_of(x)).collect();
            writeln!(out, "  not closed under restriction for x in {{{}}}", unclosed.join(", ")).unwrap();
            writeln!(
                out,
                "  componentwise reading: [2] {}, [5] {}, all agree {}",
                a.condition2_pointwise, a.condition5_pointwise, a.all_agree_pointwise
            )
            .unwrap();
        }
        out
    }
}

impl BatteryReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "battery on {}", self.lattice).unwrap();
        for p in &self.propositions {
            let status = if p.passed { "pass" } else { "FAIL" };
            let mode = if p.exhaustive { "all" } else { "sampled" };
            writeln!(out, "  {status}  {:<38} {:>8} cases ({mode})", p.name, p.checked).unwrap();
            if let Some(c) = &p.counterexample {
                writeln!(out, "        counterexample: {c}").unwrap();
            }
        }
        let failed = self.propositions.iter().filter(|p| !p.passed).count();
        writeln!(out, "{} propositions, {} failed", self.propositions.len(), failed).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::context::{enumerate_contexts, ContextOptions};
    use crate::lattice::{make_boolean, make_mo, DEFAULT_MAX_ELEMENTS as CAP};

    fn graph_of(l: OmlLattice) -> ContextGraph {
        enumerate_contexts(Arc::new(l), &ContextOptions::default()).unwrap()
    }

    #[test]
    fn l4_all_conditions_hold() {
        let g = graph_of(make_boolean(2, CAP).unwrap());
        let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
        let r = lab.equivalence_report().unwrap();
        assert!(r.conditions.iter().all(|c| c.holds));
        assert!(r.all_agree && r.consistent());
        assert_eq!(r.phantom_count, 0);
        assert_eq!(r.subobject_count, 4);
    }

    #[test]
    fn mo2_all_conditions_fail() {
        let g = graph_of(make_mo(2, CAP).unwrap());
        let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
        let r = lab.equivalence_report().unwrap();
        assert!(r.conditions.iter().all(|c| !c.holds && c.witness.is_some()));
        assert!(r.consistent());
        assert_eq!(r.phantom_count, 10);
        let l = g.lattice();
        let (a, a_, b) = (l.lookup("a").unwrap(), l.lookup("a'").unwrap(), l.lookup("b").unwrap());
        // Smallest ids first: (a, a') already fails.
        let w3 = r.conditions[2].witness.as_ref().unwrap();
        assert_eq!(w3.elements, vec![a, a_]);
        let d = lab.dasein();
        assert_ne!(g.meet(d.daseinise(a), d.daseinise(b)).unwrap(), *d.daseinise(l.zero()));
    }

    #[test]
    fn mo2_lemma_case_b() {
        let g = graph_of(make_mo(2, CAP).unwrap());
        let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
        let l = g.lattice();
        let (a, b) = (l.lookup("a").unwrap(), l.lookup("b").unwrap());
        let w = lab.lemma_witness(a, b).unwrap();
        assert_eq!(w.case, LemmaCase::B);
        assert_eq!(w.x, b);
        assert_eq!(w.b0, g.find_pair_context(a).unwrap());
        assert!(w.valid());
        assert!(matches!(lab.lemma_witness(a, a), Err(TheoremError::Precondition(_))));
    }

    #[test]
    fn b8_lemma_case_a() {
        let g = graph_of(make_boolean(3, CAP).unwrap());
        let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
        let l = g.lattice();
        let (p, pq, r) = (l.lookup("p").unwrap(), l.lookup("pq").unwrap(), l.lookup("r").unwrap());
        let w = lab.lemma_witness(p, pq).unwrap();
        assert_eq!(w.case, LemmaCase::A { u: r, v: l.ortho(p) });
        assert_eq!(w.x, pq);
        assert_eq!(w.b0, g.find_pair_context(p).unwrap());
        assert!(w.negation_ok());
        assert!(w.pointwise_empty_at_b0 && w.pointwise_nonbottom);
    }

    #[test]
    fn breakfast_mo2() {
        let g = graph_of(make_mo(2, CAP).unwrap());
        let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
        let l = g.lattice();
        let id = |s| l.lookup(s).unwrap();
        let r = lab.breakfast(id("a"), id("b"), id("b'")).unwrap();
        assert_eq!((r.lattice_lhs.as_str(), r.lattice_rhs.as_str()), ("a", "0"));
        assert!(!r.lattice_distributes);
        assert!(r.subobjects_equal);
        let t = lab.breakfast(id("a"), l.zero(), l.one()).unwrap();
        assert!(t.lattice_distributes && t.subobjects_equal);
    }

    #[test]
    fn batteries_pass() {
        for l in [make_mo(2, CAP).unwrap(), make_boolean(3, CAP).unwrap()] {
            let g = graph_of(l);
            let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
            let report = lab.battery();
            assert!(report.all_pass(), "{}", report.render_text());
        }
    }

    #[test]
    fn battery_with_trivial_context() {
        let opts = ContextOptions { include_trivial: true, ..ContextOptions::default() };
        let g = enumerate_contexts(Arc::new(make_boolean(3, CAP).unwrap()), &opts).unwrap();
        let lab = TheoremLab::new(&g, LabOptions::default()).unwrap();
        let report = lab.battery();
        assert!(report.all_pass(), "{}", report.render_text());
    }

    #[test]
    fn frontier_contains_image_and_is_closed() {
        let g = graph_of(make_boolean(3, CAP).unwrap());
        let d = DaseinMap::new(&g);
        let f = generate_frontier(&d, DEFAULT_FRONTIER_BUDGET);
        assert!(f.closed);
        assert!(d.image().iter().all(|s| f.subobjects.contains(s)));
        let set: HashSet<&Subobject> = f.subobjects.iter().collect();
        for s in &f.subobjects {
            assert!(set.contains(&g.heyting_not(s).unwrap()));
            assert!(set.contains(&g.coheyting_not(s).unwrap()));
        }
        let tiny = generate_frontier(&d, 10);
        assert!(!tiny.closed && tiny.subobjects.len() == 10);
    }
}
