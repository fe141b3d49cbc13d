//! Builtin lattice families.

use super::{ElemId, LatticeError, OmlLattice};
use crate::elemset::ElemSet;

const ATOM_LETTERS: &[&str] = &["p", "q", "r", "s", "t", "u", "v"];

/// The power set of `k` atoms. Element ids are subset bitmasks, so the atom
/// `i` has id `1 << i`; atoms are named `p, q, r, ...` and other elements by
/// concatenating their atoms.
pub fn make_boolean(k: usize, max_elements: usize) -> Result<OmlLattice, LatticeError> {
    if k == 0 {
        return Err(LatticeError::BadParameter("boolean needs at least one atom".into()));
    }
    if k > ATOM_LETTERS.len() {
        return Err(LatticeError::CapExceeded { size: 1usize << k.min(20), cap: max_elements.min(128) });
    }
    let n = 1usize << k;
    if n > max_elements {
        return Err(LatticeError::CapExceeded { size: n, cap: max_elements });
    }
    let names = (0..n)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == n - 1 => "1".to_string(),
            m => (0..k).filter(|i| m >> i & 1 == 1).map(|i| ATOM_LETTERS[i]).collect(),
        })
        .collect();
    let up = (0..n).map(|a| (0..n).filter(|&b| a & !b == 0).collect()).collect();
    let ortho = (0..n).map(|m| (n - 1) & !m).collect();
    let name = if n <= 4 { format!("L{n}") } else { format!("B{n}") };
    OmlLattice::from_order(name, names, up, ortho, max_elements)
}

/// `MO(k)`: 0, 1 and `k` pairwise incomparable orthocomplementary pairs.
/// Ids run `0, a1, a1', a2, a2', ..., 1`; pairs are named `a, a', b, b', ...`.
pub fn make_mo(k: usize, max_elements: usize) -> Result<OmlLattice, LatticeError> {
    if k == 0 {
        return Err(LatticeError::BadParameter("mo needs at least one pair".into()));
    }
    let n = 2 * k + 2;
    if n > max_elements {
        return Err(LatticeError::CapExceeded { size: n, cap: max_elements });
    }
    let top = n - 1;
    let pair_name = |i: usize| -> String {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("a{i}")
        }
    };
    let mut names = vec!["0".to_string()];
    for i in 0..k {
        names.push(pair_name(i));
        names.push(format!("{}'", pair_name(i)));
    }
    names.push("1".to_string());
    let mut up = vec![ElemSet::full(n)];
    for x in 1..top {
        up.push([x, top].into_iter().collect());
    }
    up.push(ElemSet::singleton(top));
    let ortho = (0..n)
        .map(|x| match x {
            0 => top,
            x if x == top => 0,
            x if x % 2 == 1 => x + 1,
            x => x - 1,
        })
        .collect();
    OmlLattice::from_order(format!("MO{k}"), names, up, ortho, max_elements)
}

/// Componentwise product. The pair `(i, j)` gets id `i * |l2| + j` and is
/// named `x/y`, except the bottom and top which keep the names `0` and `1`.
pub fn direct_product(l1: &OmlLattice, l2: &OmlLattice, max_elements: usize) -> Result<OmlLattice, LatticeError> {
    let (n1, n2) = (l1.len(), l2.len());
    let n = n1 * n2;
    if n > max_elements {
        return Err(LatticeError::CapExceeded { size: n, cap: max_elements });
    }
    let id = |i: ElemId, j: ElemId| i * n2 + j;
    let mut names = Vec::with_capacity(n);
    let mut up = Vec::with_capacity(n);
    let mut ortho = Vec::with_capacity(n);
    for i in 0..n1 {
        for j in 0..n2 {
            names.push(if i == l1.zero() && j == l2.zero() {
                "0".to_string()
            } else if i == l1.one() && j == l2.one() {
                "1".to_string()
            } else {
                format!("{}/{}", l1.name_of(i), l2.name_of(j))
            });
            let mut u = ElemSet::EMPTY;
            for a in l1.up_set(i).iter() {
                for b in l2.up_set(j).iter() {
                    u.insert(id(a, b));
                }
            }
            up.push(u);
            ortho.push(id(l1.ortho(i), l2.ortho(j)));
        }
    }
    OmlLattice::from_order(format!("{}x{}", l1.name(), l2.name()), names, up, ortho, max_elements)
}
