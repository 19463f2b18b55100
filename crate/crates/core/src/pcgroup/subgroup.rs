use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use super::GroupTable;
use crate::error::{Error, Result};

/// Subgroup of a [`GroupTable`]: sorted element list, a generating set and a
/// membership mask over the parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub(crate) fn from_parts(elements: Vec<usize>, generators: Vec<usize>, mask: Vec<bool>) -> Self {
        let generators = generators.into_iter().filter(|&g| g != 0).collect();
        Subgroup { elements, generators, mask }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask.get(a).copied().unwrap_or(false)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Order of the parent group this subgroup lives in.
    pub fn mask_len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// Position of a parent element in the sorted element list, which is its
    /// index in [`GroupTable::subgroup_table`].
    pub fn local_index(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }
}

/// All subgroups of `g` containing `base`, sorted by (order, elements).
pub fn subgroups_containing(g: &GroupTable, base: &Subgroup) -> Result<Vec<Subgroup>> {
    if base.mask_len() != g.order() {
        return Err(Error::ForeignElement(base.mask_len()));
    }
    if g.order() > super::MAX_CLASS_ORDER {
        return Err(Error::OrderTooLarge { order: g.order(), bound: super::MAX_CLASS_ORDER });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut all = vec![base.clone()];
    seen.insert(base.elements().to_vec());
    let mut head = 0;
    while head < all.len() {
        let h = all[head].clone();
        head += 1;
        // one extension per left coset of h
        let mut covered = h.mask.clone();
        for a in 0..g.order() {
            if covered[a] {
                continue;
            }
            for &e in h.elements() {
                covered[g.mul(a, e)] = true;
            }
            let mut gens = h.generators().to_vec();
            gens.push(a);
            let k = g.closure(&gens);
            if seen.insert(k.elements().to_vec()) {
                all.push(k);
            }
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(all)
}

/// All subgroups isomorphic to `D_8 * C_{2^m}`.
///
/// A subgroup qualifies when it is generated by `a, b, c` with
/// `a^4 = b^2 = c^{2^m} = 1`, `bab^{-1} = a^{-1}`, `c` central and
/// `a^2 = c^{2^{m-1}}`, and has order `2^{m+2}`; the presented group has that
/// order, so the surjection from it is an isomorphism.
pub fn subgroups_isomorphic_to_d8cm(g: &GroupTable, m: u32) -> Result<Vec<Subgroup>> {
    if g.order() > super::MAX_CLASS_ORDER {
        return Err(Error::OrderTooLarge { order: g.order(), bound: super::MAX_CLASS_ORDER });
    }
    let target = 1usize << (m + 2);
    if g.order() % target != 0 {
        return Ok(Vec::new());
    }
    let zc = 1usize << m;
    let of_order = |k: usize| -> Vec<usize> {
        (0..g.order()).filter(|&e| g.element_order(e) == k).collect()
    };
    let fours = of_order(4);
    let twos = of_order(2);
    let cs = of_order(zc);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for &c in &cs {
        let c_half = g.pow(c, (zc / 2) as i64);
        for &a in &fours {
            if g.mul(a, a) != c_half || g.commutator(a, c) != 0 {
                continue;
            }
            let a_inv = g.inv(a);
            for &b in &twos {
                if g.commutator(b, c) != 0 || g.conj(b, a) != a_inv {
                    continue;
                }
                let s = g.closure(&[a, b, c]);
                if s.order() == target && seen.insert(s.elements().to_vec()) {
                    out.push(s);
                }
            }
        }
    }
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    Ok(out)
}

/// Groups `subs` into conjugacy classes under `g`, preserving input order
/// both across and within classes.
pub fn subgroup_conjugacy_classes(g: &GroupTable, subs: &[Subgroup]) -> Vec<Vec<Subgroup>> {
    let mut class_of: Vec<Option<usize>> = vec![None; subs.len()];
    let mut classes: Vec<Vec<Subgroup>> = Vec::new();
    for i in 0..subs.len() {
        if class_of[i].is_some() {
            continue;
        }
        let c = classes.len();
        let orbit = conjugates(g, &subs[i]);
        let mut members = Vec::new();
        for j in i..subs.len() {
            if class_of[j].is_none() && orbit.contains(&subs[j].elements) {
                class_of[j] = Some(c);
                members.push(subs[j].clone());
            }
        }
        classes.push(members);
    }
    classes
}

/// Element sets of all `g`-conjugates of `s`.
pub(crate) fn conjugates(g: &GroupTable, s: &Subgroup) -> HashSet<Vec<usize>> {
    let mut orbit = HashSet::new();
    orbit.insert(s.elements.clone());
    let mut queue = vec![s.clone()];
    while let Some(h) = queue.pop() {
        for &t in g.generators() {
            let k = g.conjugate_subgroup(t, &h);
            if orbit.insert(k.elements.clone()) {
                queue.push(k);
            }
        }
    }
    orbit
}
