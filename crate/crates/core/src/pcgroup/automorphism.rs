use std::sync::Arc;

use super::{GroupTable, Subgroup};
use crate::error::{Error, Result};

/// Largest group order accepted by [`automorphism_search`].
pub const SEARCH_GUARD: usize = 1 << 7;
/// Largest number of generator-image tuples the search will consider.
const CANDIDATE_GUARD: u128 = 1 << 24;

/// A homomorphism given by generator images together with its full table.
#[derive(Clone, Debug)]
pub struct GroupMap {
    domain: Arc<GroupTable>,
    codomain: Arc<GroupTable>,
    images: Vec<usize>,
    map: Vec<usize>,
}

impl GroupMap {
    /// Extends `images` (of `domain.generators()`) to a homomorphism,
    /// rejecting inconsistent assignments.
    pub fn from_generator_images(
        domain: Arc<GroupTable>,
        codomain: Arc<GroupTable>,
        images: &[usize],
    ) -> Result<Self> {
        let gens = domain.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        for &b in images {
            codomain.check_element(b)?;
        }
        let map = extend(&domain, &codomain, &gens, images).ok_or_else(|| {
            Error::NotAutomorphism("generator images violate a relation".into())
        })?;
        Ok(GroupMap { domain, codomain, images: images.to_vec(), map })
    }

    /// The identity automorphism.
    pub fn identity(g: Arc<GroupTable>) -> Self {
        let images = g.generators().to_vec();
        let map = (0..g.order()).collect();
        GroupMap { domain: g.clone(), codomain: g, images, map }
    }

    pub fn domain(&self) -> &Arc<GroupTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GroupTable> {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_automorphism(&self) -> bool {
        if self.domain.order() != self.codomain.order() {
            return false;
        }
        let mut hit = vec![false; self.codomain.order()];
        for &b in &self.map {
            if hit[b] {
                return false;
            }
            hit[b] = true;
        }
        true
    }

    /// Order as a permutation; `0` when the map is not an automorphism.
    pub fn order(&self) -> usize {
        if !self.is_automorphism() {
            return 0;
        }
        let mut cur = self.map.clone();
        let mut t = 1;
        while cur.iter().enumerate().any(|(i, &v)| i != v) {
            cur = cur.iter().map(|&v| self.map[v]).collect();
            t += 1;
        }
        t
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        if other.codomain.order() != self.domain.order() {
            return Err(Error::DimensionMismatch("maps do not compose".into()));
        }
        let map: Vec<usize> = other.map.iter().map(|&v| self.map[v]).collect();
        let images = other.domain.generators().iter().map(|&g| map[g]).collect();
        Ok(GroupMap { domain: other.domain.clone(), codomain: self.codomain.clone(), images, map })
    }

    /// Inner automorphism `a ↦ g a g^{-1}`.
    pub fn inner(group: Arc<GroupTable>, g: usize) -> Self {
        let map: Vec<usize> = (0..group.order()).map(|a| group.conj(g, a)).collect();
        let images = group.generators().iter().map(|&a| map[a]).collect();
        GroupMap { domain: group.clone(), codomain: group, images, map }
    }

    pub fn fixes_pointwise(&self, s: &Subgroup) -> bool {
        s.elements().iter().all(|&e| self.map[e] == e)
    }
}

/// Extends generator images by walking the Cayley graph; every edge is
/// checked, so success means a homomorphism on `⟨gens⟩`. Unreached entries
/// are left as `usize::MAX`.
fn extend(
    domain: &GroupTable,
    codomain: &GroupTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; domain.order()];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let a = domain.mul(h, s);
            let b = codomain.mul(map[h], t);
            if map[a] == usize::MAX {
                map[a] = b;
                queue.push(a);
            } else if map[a] != b {
                return None;
            }
        }
    }
    Some(map)
}

/// Exhaustive automorphism search over images of the generating set.
///
/// Images are chosen generator by generator among elements of matching
/// order; each partial assignment is checked for consistency on the
/// subgroup generated so far. Optional filters: exact automorphism order and
/// pointwise fixing of a subgroup. Results are sorted by image tuple.
pub fn automorphism_search(
    g: &Arc<GroupTable>,
    order_constraint: Option<usize>,
    fixed_points: Option<&Subgroup>,
) -> Result<Vec<GroupMap>> {
    if g.order() > SEARCH_GUARD {
        return Err(Error::OrderTooLarge { order: g.order(), bound: SEARCH_GUARD });
    }
    if let Some(f) = fixed_points {
        if f.mask_len() != g.order() {
            return Err(Error::ForeignElement(f.mask_len()));
        }
    }
    let gens = g.generators().to_vec();
    let pools: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let fixed = fixed_points.is_some_and(|f| f.contains(s));
            (0..g.order())
                .filter(|&b| g.element_order(b) == g.element_order(s) && (!fixed || b == s))
                .collect()
        })
        .collect();
    let candidates: u128 = pools.iter().map(|p| p.len() as u128).product();
    if candidates > CANDIDATE_GUARD {
        return Err(Error::SearchSpaceTooLarge { candidates, bound: CANDIDATE_GUARD });
    }
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, &gens, &pools, &mut images, order_constraint, fixed_points, &mut out);
    Ok(out)
}

fn search(
    g: &Arc<GroupTable>,
    gens: &[usize],
    pools: &[Vec<usize>],
    images: &mut Vec<usize>,
    order_constraint: Option<usize>,
    fixed_points: Option<&Subgroup>,
    out: &mut Vec<GroupMap>,
) {
    let depth = images.len();
    if depth == gens.len() {
        let Some(map) = extend(g, g, gens, images) else { return };
        let candidate =
            GroupMap { domain: g.clone(), codomain: g.clone(), images: images.clone(), map };
        if !candidate.is_automorphism() {
            return;
        }
        if fixed_points.is_some_and(|f| !candidate.fixes_pointwise(f)) {
            return;
        }
        if order_constraint.is_some_and(|t| candidate.order() != t) {
            return;
        }
        out.push(candidate);
        return;
    }
    for &b in &pools[depth] {
        images.push(b);
        if depth + 1 == gens.len() || extend(g, g, &gens[..=depth], images).is_some() {
            search(g, gens, pools, images, order_constraint, fixed_points, out);
        }
        images.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{make_group, GroupParams};

    fn family(n: u32, m: u32) -> Arc<GroupTable> {
        Arc::new(make_group(GroupParams::new(n, m).unwrap()).unwrap())
    }

    #[test]
    fn order_three_automorphisms_exist_only_for_n3() {
        assert!(!automorphism_search(&family(3, 2), Some(3), None).unwrap().is_empty());
        assert!(automorphism_search(&family(4, 2), Some(3), None).unwrap().is_empty());
    }

    #[test]
    fn order_three_on_q1_fixing_center() {
        let p = GroupParams::new(4, 2).unwrap();
        let d = make_group(p).unwrap();
        let q1 = d.closure(&[p.word(2, 0, 0), p.y(), p.z()]);
        let t = Arc::new(d.subgroup_table(&q1).unwrap());
        let z_local = q1.local_index(p.z()).unwrap();
        let zq = t.closure(&[z_local]);
        let found = automorphism_search(&t, Some(3), Some(&zq)).unwrap();
        assert!(!found.is_empty());
        assert!(found.iter().all(|a| a.fixes_pointwise(&zq) && a.order() == 3));
    }

    #[test]
    fn inconsistent_images_are_rejected() {
        let g = family(3, 2);
        let p = g.params().unwrap();
        // y has order 2, x has order 4
        let imgs = vec![p.x(), p.x(), p.z()];
        assert!(GroupMap::from_generator_images(g.clone(), g, &imgs).is_err());
    }

    #[test]
    fn semidirect_with_order_three_has_fourteen_classes() {
        let g = family(3, 2);
        let z = g.closure(&[g.params().unwrap().z()]);
        let a = automorphism_search(&g, Some(3), Some(&z)).unwrap().remove(0);
        let sd = g.semidirect_product(&a).unwrap();
        assert_eq!(sd.order(), 48);
        assert_eq!(sd.conjugacy_classes().unwrap().len(), 14);
    }

    #[test]
    fn trivial_semidirect_is_direct() {
        let g = family(3, 2);
        let sd = g.direct_with_cyclic(3).unwrap();
        assert_eq!(sd.conjugacy_classes().unwrap().len(), 30);
    }
}
