//! Filters, ultrafilters and two-valued homomorphisms of finite Boolean algebras.

use serde::Serialize;

use super::{ElemId, LatticeError, OmlLattice};
use crate::elemset::ElemSet;

/// Largest lattice for which [`enumerate_homomorphisms`] will run its search.
pub const HOMOMORPHISM_SEARCH_LIMIT: usize = 40;

/// A nonempty, meet-closed, upward-closed set of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter {
    pub members: ElemSet,
}

impl Filter {
    /// Checks the filter axioms for an arbitrary element set.
    pub fn check(lattice: &OmlLattice, members: ElemSet) -> Option<Filter> {
        if members.is_empty() {
            return None;
        }
        for a in members.iter() {
            if !lattice.up_set(a).is_subset(members) {
                return None;
            }
            if members.iter().any(|b| !members.contains(lattice.meet(a, b))) {
                return None;
            }
        }
        Some(Filter { members })
    }

    /// Proper, and contains exactly one of `x` and `x'` for every `x`.
    pub fn is_ultra(&self, lattice: &OmlLattice) -> bool {
        !self.members.contains(lattice.zero())
            && lattice.elements().all(|x| self.members.contains(x) || self.members.contains(lattice.ortho(x)))
    }
}

fn require_boolean(b: &OmlLattice) -> Result<(), LatticeError> {
    if b.is_boolean() {
        Ok(())
    } else {
        Err(LatticeError::NotBoolean(b.name().to_owned()))
    }
}

/// Proper filters `F` with `x ∈ F` or `x' ∈ F` for every `x`.
///
/// In a finite lattice every filter is the principal up-set of its meet, so
/// the candidates are the up-sets `↑m` for `m != 0`.
pub fn enumerate_ultrafilters(b: &OmlLattice) -> Result<Vec<Filter>, LatticeError> {
    require_boolean(b)?;
    Ok(b
        .elements()
        .filter(|&m| m != b.zero())
        .filter_map(|m| Filter::check(b, b.up_set(m)))
        .filter(|f| f.is_ultra(b))
        .collect())
}

/// All surjective maps `B -> {0, 1}` preserving binary meets and joins,
/// returned as the preimage of 1. Exhaustive backtracking search that makes
/// no use of filters or atoms.
pub fn enumerate_homomorphisms(b: &OmlLattice) -> Result<Vec<ElemSet>, LatticeError> {
    let n = b.len();
    if n > HOMOMORPHISM_SEARCH_LIMIT {
        return Err(LatticeError::CapExceeded { size: n, cap: HOMOMORPHISM_SEARCH_LIMIT });
    }
    let mut out = Vec::new();
    let mut ones = ElemSet::EMPTY;
    search(b, 0, &mut ones, &mut out);
    out.sort();
    Ok(out)
}

fn search(b: &OmlLattice, k: ElemId, ones: &mut ElemSet, out: &mut Vec<ElemSet>) {
    let n = b.len();
    if k == n {
        out.push(*ones);
        return;
    }
    for value in [false, true] {
        if (k == b.zero() && value) || (k == b.one() && !value) {
            continue;
        }
        if value {
            ones.insert(k);
        } else {
            ones.remove(k);
        }
        if consistent_upto(b, k, *ones) {
            search(b, k + 1, ones, out);
        }
    }
    ones.remove(k);
}

/// Checks every constraint whose four ids are all `<= k` and involve `k`.
fn consistent_upto(b: &OmlLattice, k: ElemId, ones: ElemSet) -> bool {
    let v = |x: ElemId| ones.contains(x);
    for x in 0..=k {
        for y in 0..=k {
            let (m, j) = (b.meet(x, y), b.join(x, y));
            if m > k || j > k || x.max(y).max(m).max(j) != k {
                continue;
            }
            if v(m) != (v(x) && v(y)) || v(j) != (v(x) || v(y)) {
                return false;
            }
        }
    }
    true
}

/// Whether the ultrafilters of `b` are exactly the kernels `λ⁻¹(1)` of its
/// two-valued homomorphisms.
pub fn verify_redei(b: &OmlLattice) -> Result<bool, LatticeError> {
    let mut filters: Vec<ElemSet> = enumerate_ultrafilters(b)?.into_iter().map(|f| f.members).collect();
    filters.sort();
    let homs = enumerate_homomorphisms(b)?;
    Ok(filters == homs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_boolean, make_mo, DEFAULT_MAX_ELEMENTS as CAP};

    /// Brute-force filter enumeration over all subsets.
    fn all_filters(l: &OmlLattice) -> Vec<ElemSet> {
        let n = l.len();
        let mut out: Vec<ElemSet> = (1u128..1u128 << n)
            .map(ElemSet::from_bits)
            .filter(|&s| Filter::check(l, s).is_some())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn l4_ultrafilters() {
        let l4 = make_boolean(2, CAP).unwrap();
        let ufs = enumerate_ultrafilters(&l4).unwrap();
        let sets: Vec<ElemSet> = ufs.iter().map(|f| f.members).collect();
        assert_eq!(sets, vec![[1, 3].into_iter().collect(), [2, 3].into_iter().collect()]);
    }

    #[test]
    fn b8_one_ultrafilter_per_atom() {
        let b8 = make_boolean(3, CAP).unwrap();
        let ufs = enumerate_ultrafilters(&b8).unwrap();
        assert_eq!(ufs.len(), 3);
        for (f, a) in ufs.iter().zip(b8.atoms()) {
            assert_eq!(f.members, b8.up_set(a));
        }
        assert!(verify_redei(&b8).unwrap());
    }

    #[test]
    fn principal_filters_are_all_filters() {
        for l in [make_boolean(3, CAP).unwrap(), make_mo(2, CAP).unwrap()] {
            let mut principal: Vec<ElemSet> = l.elements().map(|m| l.up_set(m)).collect();
            principal.sort();
            assert_eq!(all_filters(&l), principal);
        }
    }

    #[test]
    fn homomorphism_counts() {
        for k in 1..=4 {
            let b = make_boolean(k, CAP).unwrap();
            assert_eq!(enumerate_homomorphisms(&b).unwrap().len(), k);
            assert!(verify_redei(&b).unwrap());
        }
        // MO2 has no two-valued homomorphisms at all.
        let mo2 = make_mo(2, CAP).unwrap();
        assert!(enumerate_homomorphisms(&mo2).unwrap().is_empty());
    }

    #[test]
    fn non_boolean_rejected() {
        let mo2 = make_mo(2, CAP).unwrap();
        assert!(matches!(enumerate_ultrafilters(&mo2), Err(LatticeError::NotBoolean(_))));
        assert!(verify_redei(&mo2).is_err());
    }
}
