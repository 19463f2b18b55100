//! Finite group arithmetic.
//!
//! The family `D(n, m) = D_{2^n} * C_{2^m}` is stored by normal forms
//! `x^i y^j z^k` with `0 <= i < 2^{n-2}`, `j in {0, 1}` and `0 <= k < 2^m`;
//! the central identification `x^{2^{n-2}} = z^{2^{m-1}}` is absorbed into the
//! `z` exponent during reduction. Every other group (subgroups, quotients,
//! semidirect products, permutation groups) is a dense Cayley table.
//!
//! Elements of any [`GroupTable`] are plain indices `0..order`, with the
//! identity always at index `0`. Canonical element order is index order.

mod automorphism;
mod family;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use automorphism::{automorphism_search, GroupMap, SEARCH_GUARD};
pub use family::{make_group, Element, GroupParams};
pub use subgroup::{
    subgroup_conjugacy_classes, subgroups_containing, subgroups_isomorphic_to_d8cm, Subgroup,
};

/// Largest order accepted by class computations.
pub const MAX_CLASS_ORDER: usize = 1 << 13;
/// Largest order stored as a dense Cayley table.
pub const MAX_CAYLEY_ORDER: usize = 1 << 12;

/// Provenance of a [`GroupTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTag {
    Family(GroupParams),
    /// Subgroup of a larger table; `embedding[local] = parent index`.
    Subgroup { parent_order: usize, embedding: Vec<usize> },
    Quotient { parent_order: usize },
    Semidirect { base_order: usize, t: usize },
    Permutation { degree: usize },
    Cyclic(usize),
    Symmetric(usize),
    Generic,
}

#[derive(Clone)]
enum Repr {
    Family(GroupParams),
    Cayley(Vec<u32>),
}

/// A finite group with elements `0..order` and identity `0`.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    repr: Repr,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    generators: Vec<usize>,
    tag: GroupTag,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .field("tag", &self.tag)
            .finish()
    }
}

/// A conjugacy class with its canonical (minimal) representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub elements: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

impl GroupTable {
    fn finish(order: usize, repr: Repr, tag: GroupTag) -> Result<Self> {
        let mut g = GroupTable {
            order,
            repr,
            inverses: Vec::new(),
            orders: Vec::new(),
            generators: Vec::new(),
            tag,
        };
        g.inverses = vec![usize::MAX; order];
        g.orders = vec![0; order];
        g.inverses[0] = 0;
        g.orders[0] = 1;
        for a in 1..order {
            // walk a, a^2, ... until the identity
            let mut p = a;
            let mut k = 1;
            while p != 0 {
                let q = g.mul(p, a);
                if q == 0 {
                    g.inverses[a] = p;
                }
                p = q;
                k += 1;
                if k > order {
                    return Err(Error::Internal(format!("element {a} has no finite order")));
                }
            }
            g.orders[a] = k;
        }
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Builds a table from a row-major Cayley table.
    ///
    /// Index `0` must be the identity; closure, the identity law and
    /// associativity on a deterministic sample of triples are checked.
    pub fn from_cayley(order: usize, table: Vec<u32>, tag: GroupTag) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::DimensionMismatch(format!(
                "Cayley table of length {} for order {order}",
                table.len()
            )));
        }
        if order > MAX_CAYLEY_ORDER {
            return Err(Error::OrderTooLarge { order, bound: MAX_CAYLEY_ORDER });
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(Error::Internal("Cayley table not closed".into()));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::Internal("index 0 is not the identity".into()));
            }
        }
        let g = Self::finish(order, Repr::Cayley(table), tag)?;
        g.spot_check_associativity(64)?;
        Ok(g)
    }

    /// Builds a Cayley table from a multiplication oracle on `0..order`.
    pub fn from_oracle(
        order: usize,
        tag: GroupTag,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if order > MAX_CAYLEY_ORDER {
            return Err(Error::OrderTooLarge { order, bound: MAX_CAYLEY_ORDER });
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_cayley(order, table, tag)
    }

    pub(crate) fn from_family(params: GroupParams) -> Result<Self> {
        let mut g = Self::finish(params.order(), Repr::Family(params), GroupTag::Family(params))?;
        g.generators = vec![params.x(), params.y(), params.z()];
        Ok(g)
    }

    /// The cyclic group `Z/n` written additively on indices.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_oracle(n, GroupTag::Cyclic(n), |a, b| (a + b) % n)
    }

    /// The symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push((0..degree).map(|i| if i < 2 { 1 - i } else { i }).collect());
            gens.push((0..degree).map(|i| (i + 1) % degree).collect());
        }
        let (mut g, _) = Self::from_permutations(degree, &gens)?;
        g.tag = GroupTag::Symmetric(degree);
        Ok(g)
    }

    /// Closes a set of permutations of `0..degree` under composition.
    ///
    /// Returns the group table together with the permutation of each element
    /// (element `0` is the identity permutation). Composition is
    /// `(p * q)(v) = p(q(v))`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|v| elements[a][g[v]]).collect();
                if !index.contains_key(&p) {
                    if elements.len() >= MAX_CAYLEY_ORDER {
                        return Err(Error::OrderTooLarge {
                            order: elements.len() + 1,
                            bound: MAX_CAYLEY_ORDER,
                        });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = (0..degree).map(|v| elements[a][elements[b][v]]).collect();
                table.push(index[&p] as u32);
            }
        }
        let g = Self::from_cayley(n, table, GroupTag::Permutation { degree })?;
        Ok((g, elements))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    pub fn params(&self) -> Option<GroupParams> {
        match self.repr {
            Repr::Family(p) => Some(p),
            Repr::Cayley(_) => None,
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Family(p) => p.index(p.mul(p.element(a), p.element(b))),
            Repr::Cayley(t) => t[a * self.order + b] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g a g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inverses[g])
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverses[ba], ab)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let e = k.rem_euclid(o);
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// A generating set chosen greedily by descending element order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::ForeignElement(a))
        }
    }

    /// Human-readable label: `[i,j,k]` for the family, the index otherwise.
    pub fn label(&self, a: usize) -> String {
        match self.repr {
            Repr::Family(p) => {
                let e = p.element(a);
                format!("[{},{},{}]", e.i, e.j, e.k)
            }
            Repr::Cayley(_) => a.to_string(),
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by(|&a, &b| self.orders[b].cmp(&self.orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for c in candidates {
            if current.order() == self.order {
                break;
            }
            if !current.contains(c) {
                gens.push(c);
                current = self.closure(&gens);
            }
        }
        gens
    }

    fn spot_check_associativity(&self, samples: usize) -> Result<()> {
        // deterministic LCG sample; full check for tiny groups
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 12 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::Internal("table is not associative".into()));
                        }
                    }
                }
            }
            return Ok(());
        }
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as usize) % n
        };
        for _ in 0..samples {
            let (a, b, c) = (next(), next(), next());
            if !check(a, b, c) {
                return Err(Error::Internal("table is not associative".into()));
            }
        }
        Ok(())
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order];
        let mut elements = vec![0usize];
        mask[0] = true;
        let mut head = 0;
        while head < elements.len() {
            let h = elements[head];
            head += 1;
            for &g in gens {
                let p = self.mul(h, g);
                if !mask[p] {
                    mask[p] = true;
                    elements.push(p);
                }
            }
        }
        elements.sort_unstable();
        Subgroup::from_parts(elements, gens.to_vec(), mask)
    }

    pub fn whole(&self) -> Subgroup {
        self.closure(&self.generators)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[])
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = elems.to_vec();
        loop {
            let h = self.closure(&gens);
            let mut extra = Vec::new();
            for &s in h.generators() {
                for &g in &self.generators {
                    let c = self.conj(g, s);
                    if !h.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return h;
            }
            gens.extend(extra);
        }
    }

    /// Image of a subgroup under conjugation by `g`.
    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = s.generators().iter().map(|&a| self.conj(g, a)).collect();
        let mut elements: Vec<usize> = s.elements().iter().map(|&a| self.conj(g, a)).collect();
        elements.sort_unstable();
        let mut mask = vec![false; self.order];
        for &e in &elements {
            mask[e] = true;
        }
        Subgroup::from_parts(elements, gens, mask)
    }

    /// Subgroup from an arbitrary element set, verifying closure.
    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Result<Subgroup> {
        for &e in elems {
            self.check_element(e)?;
        }
        let s = self.closure(elems);
        if s.order() != {
            let mut v = elems.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len()
        } {
            return Err(Error::Internal("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    /// Conjugacy classes by orbit closure, sorted by representative.
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>> {
        if self.order > MAX_CLASS_ORDER {
            return Err(Error::OrderTooLarge { order: self.order, bound: MAX_CLASS_ORDER });
        }
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            seen[a] = true;
            let mut orbit = vec![a];
            let mut head = 0;
            while head < orbit.len() {
                let b = orbit[head];
                head += 1;
                for &g in &self.generators {
                    let c = self.conj(g, b);
                    if !seen[c] {
                        seen[c] = true;
                        orbit.push(c);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(ConjugacyClass { representative: orbit[0], elements: orbit });
        }
        Ok(classes)
    }

    /// Element index to class position for a class list.
    pub fn class_map(&self, classes: &[ConjugacyClass]) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.order];
        for (c, cl) in classes.iter().enumerate() {
            for &e in &cl.elements {
                map[e] = c;
            }
        }
        map
    }

    pub fn center(&self) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&a| self.generators.iter().all(|&g| self.mul(a, g) == self.mul(g, a)))
            .collect();
        self.closure_from_sorted(elems)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &a) in self.generators.iter().enumerate() {
            for &b in &self.generators[i + 1..] {
                let c = self.commutator(a, b);
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn centralizer(&self, e: usize) -> Result<Subgroup> {
        self.check_element(e)?;
        let elems: Vec<usize> =
            (0..self.order).filter(|&a| self.mul(a, e) == self.mul(e, a)).collect();
        Ok(self.closure_from_sorted(elems))
    }

    /// Centralizer of a subgroup: elements commuting with all its generators.
    pub fn centralizer_of(&self, s: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&a| s.generators().iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
            .collect();
        self.closure_from_sorted(elems)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.mask_len() != self.order {
            return Err(Error::ForeignElement(s.mask_len()));
        }
        let elems: Vec<usize> = (0..self.order)
            .filter(|&g| s.generators().iter().all(|&b| s.contains(self.conj(g, b))))
            .collect();
        Ok(self.closure_from_sorted(elems))
    }

    /// Wraps an element set already known to be a subgroup.
    fn closure_from_sorted(&self, elems: Vec<usize>) -> Subgroup {
        // recover a small generating set for downstream conjugation tests
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for &e in &elems {
            if current.order() == elems.len() {
                break;
            }
            if !current.contains(e) {
                gens.push(e);
                current = self.closure(&gens);
            }
        }
        debug_assert_eq!(current.elements(), &elems[..]);
        current
    }

    /// The subgroup as a standalone table; local indices follow the sorted
    /// element list, so local `0` is the identity.
    pub fn subgroup_table(&self, s: &Subgroup) -> Result<GroupTable> {
        let elems = s.elements();
        let mut local = HashMap::with_capacity(elems.len());
        for (i, &e) in elems.iter().enumerate() {
            local.insert(e, i);
        }
        Self::from_oracle(
            elems.len(),
            GroupTag::Subgroup { parent_order: self.order, embedding: elems.to_vec() },
            |a, b| local[&self.mul(elems[a], elems[b])],
        )
    }

    /// Quotient by a normal subgroup. Returns the table and the projection
    /// `parent index -> coset index`; cosets are ordered by minimal element.
    pub fn quotient(&self, n: &Subgroup) -> Result<(GroupTable, Vec<usize>)> {
        for &a in n.generators() {
            for &g in &self.generators {
                if !n.contains(self.conj(g, a)) {
                    return Err(Error::Internal("quotient by a non-normal subgroup".into()));
                }
            }
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if proj[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &h in n.elements() {
                proj[self.mul(a, h)] = c;
            }
        }
        let q = Self::from_oracle(
            reps.len(),
            GroupTag::Quotient { parent_order: self.order },
            |a, b| proj[self.mul(reps[a], reps[b])],
        )?;
        Ok((q, proj))
    }

    /// Semidirect product `self ⋊ C_t` for an automorphism of order `t`.
    ///
    /// Element `(e, c)` has index `c * |self| + e` and
    /// `(e1, c1)(e2, c2) = (e1 a^{c1}(e2), c1 + c2 mod t)`.
    pub fn semidirect_product(&self, a: &GroupMap) -> Result<GroupTable> {
        if a.domain().order() != self.order || a.codomain().order() != self.order {
            return Err(Error::NotAutomorphism("automorphism of a different group".into()));
        }
        if !a.is_automorphism() {
            return Err(Error::NotAutomorphism("map is not bijective".into()));
        }
        for x in 0..self.order.min(64) {
            for &y in self.generators.iter() {
                if a.apply(self.mul(x, y)) != self.mul(a.apply(x), a.apply(y)) {
                    return Err(Error::NotAutomorphism("not a homomorphism".into()));
                }
            }
        }
        let t = a.order();
        let n = self.order;
        let mut powers: Vec<Vec<usize>> = vec![(0..n).collect()];
        for c in 1..t {
            let prev = &powers[c - 1];
            powers.push((0..n).map(|e| a.apply(prev[e])).collect());
        }
        let mut g = Self::from_oracle(t * n, GroupTag::Semidirect { base_order: n, t }, |u, v| {
            let (c1, e1) = (u / n, u % n);
            let (c2, e2) = (v / n, v % n);
            ((c1 + c2) % t) * n + self.mul(e1, powers[c1][e2])
        })?;
        g.tag = GroupTag::Semidirect { base_order: n, t };
        Ok(g)
    }

    /// Direct product with `C_t` (the semidirect product by the identity).
    pub fn direct_with_cyclic(&self, t: usize) -> Result<GroupTable> {
        let n = self.order;
        Self::from_oracle(t * n, GroupTag::Semidirect { base_order: n, t }, |u, v| {
            (((u / n) + (v / n)) % t) * n + self.mul(u % n, v % n)
        })
    }

    /// Set of elements of 2-power order when it forms a (necessarily
    /// normal) subgroup, i.e. when the Sylow 2-subgroup is normal.
    pub fn normal_sylow2(&self) -> Option<Subgroup> {
        let elems: Vec<usize> =
            (0..self.order).filter(|&a| self.orders[a].is_power_of_two()).collect();
        let s = self.closure(&elems);
        (s.order() == elems.len()).then(|| self.closure_from_sorted(elems))
    }

    /// Largest normal 2-subgroup.
    pub fn o2(&self) -> Result<Subgroup> {
        let classes = self.conjugacy_classes()?;
        let mut gens = Vec::new();
        for cl in &classes {
            let r = cl.representative;
            if r == 0 || !self.orders[r].is_power_of_two() {
                continue;
            }
            let nc = self.normal_closure(&[r]);
            if nc.elements().iter().all(|&e| self.orders[e].is_power_of_two()) {
                gens.push(r);
            }
        }
        Ok(self.normal_closure(&gens))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }
}

/// Group descriptors as exchanged on the command line and in golden files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum GroupDescriptor {
    #[serde(rename = "D*C")]
    Family { n: u32, m: u32 },
    #[serde(rename = "semidirect")]
    Semidirect {
        base: Box<GroupDescriptor>,
        /// Images of the base generators `x, y, z`.
        automorphism: Vec<Element>,
    },
}

impl GroupDescriptor {
    pub fn build(&self) -> Result<GroupTable> {
        match self {
            GroupDescriptor::Family { n, m } => make_group(GroupParams::new(*n, *m)?),
            GroupDescriptor::Semidirect { base, automorphism } => {
                let base_group = std::sync::Arc::new(base.build()?);
                let p = base_group.params().ok_or_else(|| {
                    Error::Unsupported("semidirect descriptors need a family base".into())
                })?;
                let images: Vec<usize> = automorphism
                    .iter()
                    .map(|&e| p.checked_index(e))
                    .collect::<Result<_>>()?;
                let map = GroupMap::from_generator_images(
                    base_group.clone(),
                    base_group.clone(),
                    &images,
                )?;
                base_group.semidirect_product(&map)
            }
        }
    }
}
