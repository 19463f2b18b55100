//! Fusion systems on `D(n, m)` given by generating data: conjugation by `D`
//! together with order-3 automorphisms of the essential subgroups
//! `Q_1 = <x^{2^{n-3}}, y, z>` and `Q_2 = <x^{2^{n-3}}, xy, z>`.
//!
//! All fusion notions (element classes, subgroup classes, `Aut_F`) are orbit
//! closures under these generators.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcgroup::{
    automorphism_search, make_group, subgroups_containing, subgroups_isomorphic_to_d8cm, Element,
    GroupParams, GroupTable, Subgroup,
};

/// Fusion pattern at the two essential candidates. `Ab` puts the `S_3` on
/// `Q_2`; the mirror case is not represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FusionCase {
    Aa,
    Ab,
    Bb,
}

impl FusionCase {
    pub const ALL: [FusionCase; 3] = [FusionCase::Aa, FusionCase::Ab, FusionCase::Bb];

    pub fn is_valid_for(self, n: u32) -> bool {
        n >= 3 && (self != FusionCase::Ab || n >= 4)
    }

    pub fn validate(self, n: u32) -> Result<()> {
        if self.is_valid_for(n) {
            Ok(())
        } else {
            Err(Error::InvalidCase { case: self.to_string(), n })
        }
    }

    /// Valid cases for a given `n`.
    pub fn valid_cases(n: u32) -> Vec<FusionCase> {
        Self::ALL.into_iter().filter(|c| c.is_valid_for(n)).collect()
    }

    /// `l(b_u)` for a nontrivial major subsection, which equals `l(B)`.
    pub fn major_l(self) -> u64 {
        match self {
            FusionCase::Aa => 3,
            FusionCase::Ab => 2,
            FusionCase::Bb => 1,
        }
    }

    /// Inertial index `e(B)`.
    pub fn inertial_index(self, n: u32) -> u64 {
        if self == FusionCase::Aa && n == 3 {
            3
        } else {
            1
        }
    }
}

impl fmt::Display for FusionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FusionCase::Aa => "aa",
            FusionCase::Ab => "ab",
            FusionCase::Bb => "bb",
        })
    }
}

impl FromStr for FusionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "aa" => Ok(FusionCase::Aa),
            "ab" => Ok(FusionCase::Ab),
            "ba" => Err(Error::Unsupported("case ba is represented by ab".into())),
            "bb" => Ok(FusionCase::Bb),
            other => Err(Error::ParamOutOfRange(format!("unknown case {other:?}"))),
        }
    }
}

/// An automorphism of order 3 of a subgroup of `D`, stored as a partial map
/// on parent indices (`usize::MAX` outside the subgroup).
#[derive(Clone, Debug)]
pub struct EssentialAutomorphism {
    pub subgroup: Subgroup,
    map: Vec<usize>,
}

impl EssentialAutomorphism {
    pub fn apply(&self, a: usize) -> Option<usize> {
        self.map.get(a).copied().filter(|&b| b != usize::MAX)
    }
}

/// A generator of the fusion system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Conjugation `a ↦ g a g^{-1}`.
    Conj(usize),
    /// The `i`-th essential automorphism.
    Essential(usize),
}

#[derive(Clone, Debug)]
pub struct FusionSystem {
    pub params: GroupParams,
    pub case: FusionCase,
    pub group: Arc<GroupTable>,
    pub q1: Subgroup,
    pub q2: Subgroup,
    pub center: Subgroup,
    pub essentials: Vec<EssentialAutomorphism>,
}

/// A conjugacy class of subsections with its chosen representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subsection {
    pub representative: usize,
    pub element: Element,
    /// `|C_D(u)|`, the order of the defect group of `b_u`.
    pub defect_order: usize,
    pub major: bool,
    pub l: u64,
    /// Size of the F-class.
    pub class_size: usize,
}

/// `Aut_F` of a subgroup or chain, as permutations of the positions of the
/// largest member's sorted element list.
#[derive(Clone, Debug)]
pub struct AutF {
    pub subgroup: Subgroup,
    pub table: GroupTable,
    pub perms: Vec<Vec<usize>>,
}

pub fn build_fusion(params: GroupParams, case: FusionCase) -> Result<FusionSystem> {
    build_fusion_with(params, case, 0)
}

/// As [`build_fusion`], taking the `choice`-th admissible order-3
/// automorphism (cyclically) on each essential subgroup.
pub fn build_fusion_with(
    params: GroupParams,
    case: FusionCase,
    choice: usize,
) -> Result<FusionSystem> {
    case.validate(params.n)?;
    let d = Arc::new(make_group(params)?);
    let step = 1i64 << (params.n - 3);
    let q1 = d.closure(&[params.word(step, 0, 0), params.y(), params.z()]);
    let q2 = d.closure(&[params.word(step, 0, 0), params.word(1, 1, 0), params.z()]);
    let center = d.closure(&[params.z()]);
    if center != d.center() {
        return Err(Error::Internal("Z(D) differs from <z>".into()));
    }
    let candidates = subgroups_isomorphic_to_d8cm(&d, params.m)?;
    if !candidates.contains(&q1) || !candidates.contains(&q2) {
        return Err(Error::Internal("Q_1 or Q_2 is not of type D_8 * C_{2^m}".into()));
    }
    let targets: Vec<&Subgroup> = match (case, params.n) {
        (FusionCase::Bb, _) => vec![],
        (FusionCase::Aa, 3) => vec![&q1],
        (FusionCase::Aa, _) => vec![&q1, &q2],
        (FusionCase::Ab, _) => vec![&q2],
    };
    let mut essentials = Vec::new();
    for q in targets {
        essentials.push(find_essential(&d, q, &center, params.n == 3, choice)?);
    }
    Ok(FusionSystem { params, case, group: d, q1, q2, center, essentials })
}

/// Order-3 automorphisms `α` of `q` fixing `Z(D)` pointwise such that
/// `<Aut_D(q), α>` has the order of `A_4` (`q = D`, `n = 3`) or `S_4`.
pub fn essential_candidates(
    d: &GroupTable,
    q: &Subgroup,
    center: &Subgroup,
    whole: bool,
) -> Result<Vec<Vec<usize>>> {
    let qt = Arc::new(d.subgroup_table(q)?);
    let local = |a: usize| q.local_index(a).expect("element of q");
    let zl = qt.closure(&center.generators().iter().map(|&z| local(z)).collect::<Vec<_>>());
    let autos = automorphism_search(&qt, Some(3), Some(&zl))?;
    let normalizer = d.normalizer(q)?;
    let aut_d: Vec<Vec<usize>> = normalizer
        .generators()
        .iter()
        .map(|&g| q.elements().iter().map(|&a| local(d.conj(g, a))).collect())
        .collect();
    let target = if whole { 12 } else { 24 };
    let mut out = Vec::new();
    for a in autos {
        let mut gens = aut_d.clone();
        gens.push(a.table().to_vec());
        let (grp, _) = GroupTable::from_permutations(q.order(), &gens)?;
        if grp.order() == target {
            out.push(a.table().iter().map(|&v| q.elements()[v]).collect());
        }
    }
    Ok(out)
}

fn find_essential(
    d: &GroupTable,
    q: &Subgroup,
    center: &Subgroup,
    whole: bool,
    choice: usize,
) -> Result<EssentialAutomorphism> {
    let cands = essential_candidates(d, q, center, whole)?;
    if cands.is_empty() {
        return Err(Error::Internal("no order-3 automorphism with S_3 outer data".into()));
    }
    let images = &cands[choice % cands.len()];
    let mut map = vec![usize::MAX; d.order()];
    for (&a, &b) in q.elements().iter().zip(images) {
        map[a] = b;
    }
    Ok(EssentialAutomorphism { subgroup: q.clone(), map })
}

impl FusionSystem {
    pub fn moves(&self) -> Vec<Move> {
        let mut mv: Vec<Move> = self.group.generators().iter().map(|&g| Move::Conj(g)).collect();
        mv.extend((0..self.essentials.len()).map(Move::Essential));
        mv
    }

    /// Whether a move is defined on all of `s`.
    pub fn applies(&self, mv: Move, s: &Subgroup) -> bool {
        match mv {
            Move::Conj(_) => true,
            Move::Essential(i) => s.is_subgroup_of(&self.essentials[i].subgroup),
        }
    }

    pub fn apply(&self, mv: Move, a: usize) -> Option<usize> {
        match mv {
            Move::Conj(g) => Some(self.group.conj(g, a)),
            Move::Essential(i) => self.essentials[i].apply(a),
        }
    }

    /// Image of a subgroup under a move defined on it.
    pub fn image(&self, mv: Move, s: &Subgroup) -> Subgroup {
        let gens: Vec<usize> =
            s.generators().iter().map(|&a| self.apply(mv, a).expect("move applies")).collect();
        self.group.closure(&gens)
    }

    /// Element orbits, each sorted, ordered by smallest element.
    pub fn f_classes(&self) -> Vec<Vec<usize>> {
        let n = self.group.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for mv in self.moves() {
            for a in 0..n {
                if let Some(b) = self.apply(mv, a) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for a in 0..n {
            let r = find(&mut parent, a);
            groups.entry(r).or_default().push(a);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// `|N_D(<u>)|`.
    pub fn cyclic_normalizer_order(&self, u: usize) -> usize {
        let d = &self.group;
        let cyc = d.closure(&[u]);
        (0..d.order()).filter(|&g| cyc.contains(d.conj(g, u))).count()
    }

    /// One subsection per F-class, represented by an element generating a
    /// fully normalized cyclic subgroup (ties broken by smallest index).
    pub fn subsection_reps(&self, l_block: u64) -> Vec<Subsection> {
        let d = &self.group;
        let mut out = Vec::new();
        for orbit in self.f_classes() {
            let mut best = orbit[0];
            let mut best_n = 0;
            for &u in &orbit {
                let nn = self.cyclic_normalizer_order(u);
                if nn > best_n {
                    best = u;
                    best_n = nn;
                }
            }
            let major = self.center.contains(best);
            let l = if best == 0 {
                l_block
            } else if major {
                self.case.major_l()
            } else {
                1
            };
            let defect_order = d.centralizer(best).map(|c| c.order()).unwrap_or(0);
            out.push(Subsection {
                representative: best,
                element: self.params.element(best),
                defect_order,
                major,
                l,
                class_size: orbit.len(),
            });
        }
        out
    }

    /// Whether `<u>` is fully F-normalized.
    pub fn is_fully_normalized(&self, u: usize) -> bool {
        let orbit = self.f_classes().into_iter().find(|o| o.contains(&u)).expect("covers D");
        let nu = self.cyclic_normalizer_order(u);
        orbit.iter().all(|&v| self.cyclic_normalizer_order(v) <= nu)
    }

    /// F-orbit of `s` with, for each member `T`, an isomorphism `s → T` as a
    /// list of images of `s.elements()`.
    pub fn subgroup_orbit(&self, s: &Subgroup) -> Vec<(Subgroup, Vec<usize>)> {
        let moves = self.moves();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut orbit = vec![(s.clone(), s.elements().to_vec())];
        index.insert(s.elements().to_vec(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &mv in &moves {
                if !self.applies(mv, &orbit[i].0) {
                    continue;
                }
                let t = self.image(mv, &orbit[i].0);
                if !index.contains_key(t.elements()) {
                    let iso: Vec<usize> =
                        orbit[i].1.iter().map(|&a| self.apply(mv, a).expect("applies")).collect();
                    index.insert(t.elements().to_vec(), orbit.len());
                    queue.push_back(orbit.len());
                    orbit.push((t, iso));
                }
            }
        }
        orbit
    }

    /// `s` is F-centric when `C_D(T) <= T` for every F-conjugate `T`.
    pub fn is_f_centric(&self, s: &Subgroup) -> bool {
        self.subgroup_orbit(s)
            .iter()
            .all(|(t, _)| self.group.centralizer_of(t).is_subgroup_of(t))
    }

    /// F-classes of F-centric subgroups, each class sorted, classes ordered
    /// by (order, smallest member).
    pub fn f_centric_subgroups(&self) -> Result<Vec<Vec<Subgroup>>> {
        let subs = subgroups_containing(&self.group, &self.center)?;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for s in subs {
            if seen.contains(s.elements()) {
                continue;
            }
            let orbit = self.subgroup_orbit(&s);
            let mut members: Vec<Subgroup> = orbit.into_iter().map(|(t, _)| t).collect();
            for t in &members {
                seen.insert(t.elements().to_vec());
            }
            if members.iter().all(|t| self.group.centralizer_of(t).is_subgroup_of(t)) {
                members.sort_by(|a, b| a.elements().cmp(b.elements()));
                out.push(members);
            }
        }
        out.sort_by(|a, b| (a[0].order(), a[0].elements()).cmp(&(b[0].order(), b[0].elements())));
        Ok(out)
    }

    /// `Aut_F(s)` from Schreier generators along the F-orbit of `s`.
    pub fn aut_f_subgroup(&self, s: &Subgroup) -> Result<AutF> {
        let orbit = self.subgroup_orbit(s);
        let index: HashMap<&[usize], usize> =
            orbit.iter().enumerate().map(|(i, (t, _))| (t.elements(), i)).collect();
        let inverses: Vec<HashMap<usize, usize>> = orbit
            .iter()
            .map(|(_, iso)| iso.iter().enumerate().map(|(p, &a)| (a, p)).collect())
            .collect();
        let mut gens: HashSet<Vec<usize>> = HashSet::new();
        for (t, iso) in &orbit {
            for mv in self.moves() {
                if !self.applies(mv, t) {
                    continue;
                }
                let j = index[self.image(mv, t).elements()];
                let perm: Vec<usize> = iso
                    .iter()
                    .map(|&a| inverses[j][&self.apply(mv, a).expect("applies")])
                    .collect();
                gens.insert(perm);
            }
        }
        let mut gens: Vec<Vec<usize>> = gens.into_iter().collect();
        gens.sort();
        let (table, perms) = GroupTable::from_permutations(s.order(), &gens)?;
        Ok(AutF { subgroup: s.clone(), table, perms })
    }

    /// `Aut_F` of an ascending chain: automorphisms of the largest member
    /// stabilizing every member.
    pub fn aut_f(&self, chain: &[Subgroup]) -> Result<AutF> {
        let top = chain.last().ok_or_else(|| Error::ParamOutOfRange("empty chain".into()))?;
        for w in chain.windows(2) {
            if !w[0].is_subgroup_of(&w[1]) || w[0] == w[1] {
                return Err(Error::ParamOutOfRange("chain is not strictly ascending".into()));
            }
        }
        let full = self.aut_f_subgroup(top)?;
        if chain.len() == 1 {
            return Ok(full);
        }
        let members: Vec<Vec<bool>> = chain[..chain.len() - 1]
            .iter()
            .map(|c| top.elements().iter().map(|&a| c.contains(a)).collect())
            .collect();
        let stab: Vec<Vec<usize>> = full
            .perms
            .iter()
            .filter(|p| members.iter().all(|m| (0..p.len()).all(|v| !m[v] || m[p[v]])))
            .cloned()
            .collect();
        let (table, perms) = GroupTable::from_permutations(top.order(), &stab)?;
        Ok(AutF { subgroup: top.clone(), table, perms })
    }

    /// `Out_F(s) = Aut_F(s) / Inn(s)`.
    pub fn out_f(&self, s: &Subgroup) -> Result<GroupTable> {
        let aut = self.aut_f_subgroup(s)?;
        let (q, _) = aut.table.quotient(&self.inner_part(&aut)?)?;
        Ok(q)
    }

    /// `Inn(s)` as a subgroup of `aut.table`.
    pub fn inner_part(&self, aut: &AutF) -> Result<Subgroup> {
        let s = &aut.subgroup;
        let index: HashMap<&[usize], usize> =
            aut.perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut gens = Vec::new();
        for &g in s.generators() {
            let perm: Vec<usize> = s
                .elements()
                .iter()
                .map(|&a| s.local_index(self.group.conj(g, a)).expect("normal in itself"))
                .collect();
            let i = index
                .get(perm.as_slice())
                .ok_or_else(|| Error::Internal("inner automorphism outside Aut_F".into()))?;
            gens.push(*i);
        }
        Ok(aut.table.closure(&gens))
    }

    /// `O_2(Out_F(s)) = 1`.
    pub fn is_f_radical(&self, s: &Subgroup) -> Result<bool> {
        Ok(self.out_f(s)?.o2()?.order() == 1)
    }

    /// F-classes of F-centric F-radical subgroups (representatives).
    pub fn centric_radical_reps(&self) -> Result<Vec<Subgroup>> {
        let mut out = Vec::new();
        for class in self.f_centric_subgroups()? {
            // a fully normalized representative
            let rep = class
                .iter()
                .max_by_key(|s| {
                    (self.group.normalizer(s).map(|n| n.order()).unwrap_or(0), std::cmp::Reverse(s.elements().to_vec()))
                })
                .expect("nonempty")
                .clone();
            if self.is_f_radical(&rep)? {
                out.push(rep);
            }
        }
        Ok(out)
    }

    /// Elements of `q` fixed by `N_D(q)`-conjugation and by every essential
    /// automorphism defined on `q`.
    pub fn fixed_point_check(&self, q: &Subgroup) -> Result<Subgroup> {
        let d = &self.group;
        let normalizer = d.normalizer(q)?;
        let alphas: Vec<&EssentialAutomorphism> =
            self.essentials.iter().filter(|e| e.subgroup == *q).collect();
        let fixed: Vec<usize> = q
            .elements()
            .iter()
            .copied()
            .filter(|&a| normalizer.generators().iter().all(|&g| d.conj(g, a) == a))
            .filter(|&a| alphas.iter().all(|e| e.apply(a) == Some(a)))
            .collect();
        d.subgroup_from_elements(&fixed)
    }

    /// Essential automorphism acting on `q`, if any.
    pub fn essential_on(&self, q: &Subgroup) -> Option<&EssentialAutomorphism> {
        self.essentials.iter().find(|e| e.subgroup == *q)
    }
}
