//! Exact ordinary character tables.

mod dixon;
mod family;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use crate::cyclo::{self, Cyclotomic};
use crate::error::{Error, Result};
use crate::pcgroup::{Element, GroupTable};

pub use dixon::{dixon_order_bound, dixon_table, dixon_table_with_bound, DEFAULT_DIXON_BOUND};
pub use family::family_table;

/// A conjugacy class as recorded in a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: usize,
    /// Normal form of the representative for family groups.
    pub element: Option<Element>,
    pub size: usize,
    pub element_order: usize,
}

/// Character table with every value written over one conductor.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    conductor: u64,
    classes: Vec<ClassInfo>,
    inverse_class: Vec<usize>,
    chars: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    /// Assembles a table; values are lifted to `conductor` and characters
    /// sorted by degree, then by value coefficients.
    pub fn new(
        order: usize,
        conductor: u64,
        classes: Vec<ClassInfo>,
        inverse_class: Vec<usize>,
        chars: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        if classes.first().map(|c| c.representative) != Some(0) {
            return Err(Error::Internal("first class must be the identity".into()));
        }
        if chars.iter().any(|c| c.len() != classes.len()) || inverse_class.len() != classes.len()
        {
            return Err(Error::DimensionMismatch("character rows and classes differ".into()));
        }
        let mut rows: Vec<(i64, Vec<Vec<BigRational>>, Vec<Cyclotomic>)> = Vec::new();
        for row in chars {
            let lifted: Vec<Cyclotomic> = row
                .into_iter()
                .map(|v| {
                    if conductor % v.conductor() != 0 {
                        let r = v.reduced();
                        if conductor % r.conductor() != 0 {
                            return Err(Error::Internal(format!(
                                "value {r} does not lie in Q(ζ_{conductor})"
                            )));
                        }
                        Ok(r.lift(conductor))
                    } else {
                        Ok(v.lift(conductor))
                    }
                })
                .collect::<Result<_>>()?;
            let deg = lifted[0]
                .to_i64()
                .ok_or_else(|| Error::Internal("character degree is not an integer".into()))?;
            let key = lifted.iter().map(|v| v.coeffs().to_vec()).collect();
            rows.push((deg, key, lifted));
        }
        rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        Ok(CharacterTable {
            order,
            conductor,
            classes,
            inverse_class,
            chars: rows.into_iter().map(|r| r.2).collect(),
        })
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn inverse_class(&self) -> &[usize] {
        &self.inverse_class
    }

    pub fn characters(&self) -> &[Vec<Cyclotomic>] {
        &self.chars
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.chars[chi][class]
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.chars[chi][0].to_i64().expect("degrees are checked on construction") as u64
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.chars.len()).map(|i| self.degree(i)).collect()
    }

    /// Integer power-basis coefficients of every value at the table
    /// conductor, as sparse `(exponent, coefficient)` lists.
    fn sparse_values(&self) -> Result<Vec<Vec<Vec<(usize, i64)>>>> {
        self.chars
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.coeffs()
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(e, c)| {
                                if !c.is_integer() {
                                    return Err(Error::NonIntegral(format!("character value {v}")));
                                }
                                c.to_integer().to_i64().map(|x| (e, x)).ok_or_else(|| {
                                    Error::Internal("character value too large".into())
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks both orthogonality relations exactly.
    pub fn verify(&self) -> Result<()> {
        let sv = self.sparse_values()?;
        let n = self.conductor as usize;
        let r = self.classes.len();
        if sv.len() != r {
            return Err(Error::Internal(format!("{} characters for {r} classes", sv.len())));
        }
        let mut raw = vec![0i64; n];
        let mut check = |terms: &mut dyn Iterator<Item = (i64, &Vec<(usize, i64)>, &Vec<(usize, i64)>)>,
                         expected: i64,
                         what: &dyn Fn() -> String|
         -> Result<()> {
            raw.iter_mut().for_each(|x| *x = 0);
            for (w, a, b) in terms {
                for &(ea, ca) in a {
                    for &(eb, cb) in b {
                        raw[(ea + n - eb) % n] += w * ca * cb;
                    }
                }
            }
            let red = cyclo::reduce_raw(self.conductor, &raw);
            if red[0] != expected || red[1..].iter().any(|&c| c != 0) {
                return Err(Error::Internal(format!("orthogonality fails: {}", what())));
            }
            Ok(())
        };
        for i in 0..r {
            for j in i..r {
                let expected = if i == j { self.order as i64 } else { 0 };
                let mut terms =
                    (0..r).map(|c| (self.classes[c].size as i64, &sv[i][c], &sv[j][c]));
                check(&mut terms, expected, &|| format!("rows {i} and {j}"))?;
            }
        }
        for c in 0..r {
            for d in c..r {
                let expected =
                    if c == d { (self.order / self.classes[c].size) as i64 } else { 0 };
                let mut terms = (0..r).map(|i| (1i64, &sv[i][c], &sv[i][d]));
                check(&mut terms, expected, &|| format!("columns {c} and {d}"))?;
            }
        }
        Ok(())
    }

    /// Rows compared as a multiset of value vectors.
    pub fn same_characters(&self, other: &CharacterTable) -> bool {
        if self.classes.len() != other.classes.len() || self.chars.len() != other.chars.len() {
            return false;
        }
        let mut used = vec![false; other.chars.len()];
        'rows: for row in &self.chars {
            for (k, cand) in other.chars.iter().enumerate() {
                if !used[k] && cand == row {
                    used[k] = true;
                    continue 'rows;
                }
            }
            return false;
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<serde_json::Value> = self
            .classes
            .iter()
            .map(|c| {
                let rep = match c.element {
                    Some(e) => json!([e.i, e.j, e.k]),
                    None => json!(c.representative),
                };
                json!({ "rep": rep, "size": c.size })
            })
            .collect();
        let chars: Vec<Vec<serde_json::Value>> =
            self.chars.iter().map(|r| r.iter().map(|v| v.to_json()).collect()).collect();
        json!({ "classes": classes, "chars": chars })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("char");
        for c in &self.classes {
            let rep = match c.element {
                Some(e) => format!("[{},{},{}]", e.i, e.j, e.k),
                None => c.representative.to_string(),
            };
            out.push_str(&format!("\t{rep}/{}", c.size));
        }
        out.push('\n');
        for (i, row) in self.chars.iter().enumerate() {
            out.push_str(&format!("X{i}"));
            for v in row {
                out.push_str(&format!("\t{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Class data of a group in the layout used by [`CharacterTable`].
pub(crate) fn class_data(g: &GroupTable) -> Result<(Vec<ClassInfo>, Vec<usize>, Vec<usize>)> {
    let classes = g.conjugacy_classes()?;
    let map = g.class_map(&classes);
    let params = g.params();
    let infos = classes
        .iter()
        .map(|c| ClassInfo {
            representative: c.representative,
            element: params.map(|p| p.element(c.representative)),
            size: c.size(),
            element_order: g.element_order(c.representative),
        })
        .collect();
    let inverse = classes.iter().map(|c| map[g.inv(c.representative)]).collect();
    Ok((infos, inverse, map))
}

/// Defect and height of each character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectData {
    pub defects: Vec<u32>,
    pub heights: Vec<u32>,
}

impl DefectData {
    /// `k^d`: number of characters of defect `d`, indexed by `d`.
    pub fn defect_counts(&self) -> Vec<usize> {
        counts(&self.defects)
    }

    /// `k_h`: number of characters of height `h`, indexed by `h`.
    pub fn height_counts(&self) -> Vec<usize> {
        counts(&self.heights)
    }
}

fn counts(v: &[u32]) -> Vec<usize> {
    let top = v.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut out = vec![0; top];
    for &x in v {
        out[x as usize] += 1;
    }
    out
}

fn v2(x: u64) -> u32 {
    x.trailing_zeros()
}

/// `d(χ) = ν₂|G| − ν₂χ(1)` and `h(χ) = ν₂χ(1) − ν₂|G : P|`.
pub fn defects_heights(t: &CharacterTable, sylow_order: u64) -> Result<DefectData> {
    let g = t.group_order() as u64;
    if !sylow_order.is_power_of_two() || g % sylow_order != 0 {
        return Err(Error::ParamOutOfRange(format!("{sylow_order} is not a 2-subgroup order")));
    }
    let index2 = v2(g) - v2(sylow_order);
    let mut defects = Vec::new();
    let mut heights = Vec::new();
    for d in t.degrees() {
        let e = v2(d);
        defects.push(v2(g) - e);
        heights.push(e.checked_sub(index2).ok_or_else(|| {
            Error::Internal(format!("degree {d} has 2-part below |G:P|_2"))
        })?);
    }
    Ok(DefectData { defects, heights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{make_group, GroupParams};

    #[test]
    fn family_and_dixon_agree_on_d32() {
        let p = GroupParams::new(3, 2).unwrap();
        let f = family_table(p).unwrap();
        f.verify().unwrap();
        let d = dixon_table(&make_group(p).unwrap()).unwrap();
        assert!(f.same_characters(&d));
        assert_eq!(f.degrees(), vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn d42_heights() {
        let t = family_table(GroupParams::new(4, 2).unwrap()).unwrap();
        assert_eq!(t.num_classes(), 14);
        let dd = defects_heights(&t, 32).unwrap();
        assert_eq!(dd.height_counts(), vec![8, 6]);
        assert_eq!(dd.defect_counts()[5], 8);
        assert_eq!(dd.defect_counts()[4], 6);
    }

    #[test]
    fn cyclic_three_by_dixon() {
        let t = dixon_table(&GroupTable::cyclic(3).unwrap()).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        assert_eq!(t.conductor(), 3);
    }

    #[test]
    fn broken_table_fails_verification() {
        let t = family_table(GroupParams::new(3, 2).unwrap()).unwrap();
        let mut chars = t.characters().to_vec();
        chars[1][1] = -&chars[1][1];
        let bad = CharacterTable::new(16, t.conductor(), t.classes().to_vec(), t.inverse_class().to_vec(), chars)
            .unwrap();
        assert!(bad.verify().is_err());
    }

    #[test]
    fn json_layout() {
        let t = dixon_table(&GroupTable::cyclic(2).unwrap()).unwrap();
        let j = t.to_json();
        assert_eq!(j["classes"][0]["size"], 1);
        assert_eq!(j["chars"].as_array().unwrap().len(), 2);
        assert!(t.to_tsv().starts_with("char\t0/1"));
    }
}
