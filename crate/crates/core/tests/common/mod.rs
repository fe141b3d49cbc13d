//! Test-side oracles. Everything here is computed from the lattice order and
//! the raw context element sets only, so it shares no code paths with the
//! library operations it is compared against.

#![allow(dead_code)]

use std::sync::Arc;

use omlab_core::context::{enumerate_contexts, ContextGraph, ContextOptions};
use omlab_core::lattice::{direct_product, make_boolean, make_mo, ElemId, OmlLattice, DEFAULT_MAX_ELEMENTS as CAP};

pub fn corpus() -> Vec<OmlLattice> {
    let l2 = make_boolean(1, CAP).unwrap();
    let l4 = make_boolean(2, CAP).unwrap();
    let mo2 = make_mo(2, CAP).unwrap();
    vec![
        l4.clone(),
        make_boolean(3, CAP).unwrap(),
        make_boolean(4, CAP).unwrap(),
        mo2.clone(),
        make_mo(3, CAP).unwrap(),
        direct_product(&mo2, &l2, CAP).unwrap(),
        direct_product(&mo2, &l4, CAP).unwrap(),
    ]
}

pub fn graph(l: OmlLattice) -> ContextGraph {
    enumerate_contexts(Arc::new(l), &ContextOptions::default()).unwrap()
}

pub fn by_name(name: &str) -> OmlLattice {
    corpus().into_iter().find(|l| l.name() == name).unwrap_or_else(|| panic!("no corpus lattice {name}"))
}

/// Context members, atoms (minimal nonzero members) and the element below
/// each atom set, from scratch.
pub struct NaiveContext {
    pub elems: Vec<ElemId>,
    pub atoms: Vec<ElemId>,
}

pub fn naive_contexts(g: &ContextGraph) -> Vec<NaiveContext> {
    let l = g.lattice();
    g.contexts()
        .iter()
        .map(|c| {
            let elems: Vec<ElemId> = c.elems().iter().collect();
            let nonzero: Vec<ElemId> = elems.iter().copied().filter(|&x| x != l.zero()).collect();
            let atoms = nonzero.iter().copied().filter(|&a| nonzero.iter().all(|&y| y == a || !l.leq(y, a))).collect();
            NaiveContext { elems, atoms }
        })
        .collect()
}

/// Least member of `elems` above `x`, by scanning.
pub fn least_above(l: &OmlLattice, elems: &[ElemId], x: ElemId) -> ElemId {
    let above: Vec<ElemId> = elems.iter().copied().filter(|&y| l.leq(x, y)).collect();
    *above.iter().find(|&&m| above.iter().all(|&y| l.leq(m, y))).expect("a least member exists")
}

/// Subobjects as per-context lists of selected atoms (as element ids).
pub type Family = Vec<Vec<ElemId>>;

pub fn naive_delta(g: &ContextGraph, x: ElemId) -> Family {
    let l = g.lattice();
    naive_contexts(g)
        .iter()
        .map(|c| {
            let v = least_above(l, &c.elems, x);
            c.atoms.iter().copied().filter(|&a| l.leq(a, v)).collect()
        })
        .collect()
}

/// Whether context `i` is contained in context `j`.
pub fn contained(cs: &[NaiveContext], i: usize, j: usize) -> bool {
    cs[i].elems.iter().all(|x| cs[j].elems.contains(x))
}

pub fn is_closed(g: &ContextGraph, f: &Family) -> bool {
    let l = g.lattice();
    let cs = naive_contexts(g);
    for sup in 0..cs.len() {
        for sub in 0..cs.len() {
            if !contained(&cs, sub, sup) {
                continue;
            }
            for &a in &f[sup] {
                if !f[sub].contains(&least_above(l, &cs[sub].elems, a)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every closed family, by filtering the full product of power sets.
pub fn brute_force_subobjects(g: &ContextGraph) -> Vec<Family> {
    let cs = naive_contexts(g);
    let total_bits: usize = cs.iter().map(|c| c.atoms.len()).sum();
    assert!(total_bits <= 20, "brute force is for small graphs");
    let mut out = Vec::new();
    for code in 0u64..(1 << total_bits) {
        let mut bit = 0;
        let mut f = Vec::with_capacity(cs.len());
        for c in &cs {
            let mut sel = Vec::new();
            for &a in &c.atoms {
                if code >> bit & 1 == 1 {
                    sel.push(a);
                }
                bit += 1;
            }
            f.push(sel);
        }
        if is_closed(g, &f) {
            out.push(f);
        }
    }
    out
}

pub fn fam_leq(s: &Family, t: &Family) -> bool {
    s.iter().zip(t).all(|(a, b)| a.iter().all(|x| b.contains(x)))
}

pub fn fam_eq(s: &Family, t: &Family) -> bool {
    fam_leq(s, t) && fam_leq(t, s)
}

/// `⋁{x | δ(x) <= S}`.
pub fn naive_epsilon(g: &ContextGraph, s: &Family) -> ElemId {
    let l = g.lattice();
    l.join_all(l.elements().filter(|&x| fam_leq(&naive_delta(g, x), s)))
}

/// Converts a library subobject into a family of atom ids.
pub fn to_family(g: &ContextGraph, s: &omlab_core::presheaf::Subobject) -> Family {
    masks_to_family(g, s.sets())
}

pub fn masks_to_family(g: &ContextGraph, masks: &[u32]) -> Family {
    g.ids()
        .map(|b| {
            let atoms = g.context(b).atoms();
            (0..atoms.len()).filter(|&i| masks[b] >> i & 1 == 1).map(|i| atoms[i]).collect()
        })
        .collect()
}

/// Sorts each component so equal families compare equal with `==`.
pub fn normalize(mut f: Family) -> Family {
    for c in &mut f {
        c.sort_unstable();
    }
    f
}

/// `(¬S)(B)`: atoms of `B` whose image in every subcontext avoids `S`.
pub fn naive_neg(g: &ContextGraph, s: &Family) -> Family {
    let l = g.lattice();
    let cs = naive_contexts(g);
    (0..cs.len())
        .map(|b| {
            cs[b]
                .atoms
                .iter()
                .copied()
                .filter(|&a| (0..cs.len()).filter(|&sub| contained(&cs, sub, b)).all(|sub| !s[sub].contains(&least_above(l, &cs[sub].elems, a))))
                .collect()
        })
        .collect()
}

/// Least closed family containing `f`, by repeated propagation.
pub fn naive_closure(g: &ContextGraph, f: &Family) -> Family {
    let l = g.lattice();
    let cs = naive_contexts(g);
    let mut out = f.clone();
    loop {
        let mut changed = false;
        for sup in 0..cs.len() {
            for sub in 0..cs.len() {
                if !contained(&cs, sub, sup) {
                    continue;
                }
                for a in out[sup].clone() {
                    let r = least_above(l, &cs[sub].elems, a);
                    if !out[sub].contains(&r) {
                        out[sub].push(r);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return normalize(out);
        }
    }
}

/// Componentwise complement (not necessarily closed).
pub fn complement(g: &ContextGraph, t: &Family) -> Family {
    naive_contexts(g).iter().zip(t).map(|(c, sel)| c.atoms.iter().copied().filter(|a| !sel.contains(a)).collect()).collect()
}

pub fn naive_coneg(g: &ContextGraph, t: &Family) -> Family {
    naive_closure(g, &complement(g, t))
}

pub fn fam_meet(s: &Family, t: &Family) -> Family {
    s.iter().zip(t).map(|(a, b)| a.iter().copied().filter(|x| b.contains(x)).collect()).collect()
}

pub fn fam_join(s: &Family, t: &Family) -> Family {
    normalize(s.iter().zip(t).map(|(a, b)| {
        let mut v = a.clone();
        v.extend(b.iter().copied().filter(|x| !a.contains(x)));
        v
    }).collect())
}

pub fn fam_bottom(g: &ContextGraph) -> Family {
    vec![Vec::new(); g.len()]
}

pub fn fam_top(g: &ContextGraph) -> Family {
    naive_contexts(g).into_iter().map(|c| c.atoms).collect()
}
