//! Signed posets of types B, C and D.
//!
//! The ground set is `{-n..-1, 1..n}`, plus `0` for type B. Relations are
//! stored transitively closed, as strict pairs `(x, y)` meaning `x ≺ y`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::B, Family::C, Family::D];

    /// Side length of the defining matrices.
    pub fn matrix_size(self, n: usize) -> usize {
        match self {
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        }
    }

    pub fn allows_loops(self) -> bool {
        self == Family::C
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(PosetError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("OutOfGround: {} is not in the ground set of a type-{family} poset with n = {n}", minus(*x))]
    OutOfGround { x: i32, family: Family, n: usize },
    #[error("OrderViolation: {} ≺ {}", minus(*x), minus(*y))]
    OrderViolation { x: i32, y: i32 },
    #[error("CoverViolation: {i} covers {} in a type-{family} poset", minus(-*i))]
    CoverViolation { i: i32, family: Family },
    #[error("ZeroRelation: 0 is related in a type-B poset of height at most one or separable")]
    ZeroRelation,
    #[error("EmptyGround: n must be at least 1")]
    EmptyGround,
    #[error("unknown family {0:?}, expected B, C or D")]
    UnknownFamily(String),
    #[error("ZeroRelated: 0 is related, so the type-B poset has no type-C reduct")]
    ZeroRelated,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Integer with a typographic minus sign.
fn minus(x: i32) -> String {
    if x < 0 {
        format!("\u{2212}{}", x.unsigned_abs())
    } else {
        x.to_string()
    }
}

/// Heights of the positive part and of the whole poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeightPair {
    pub plus_height: usize,
    pub total_height: usize,
}

/// The JSON poset file: relations are generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub family: Family,
    pub n: usize,
    pub relations: Vec<[i32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPoset {
    family: Family,
    n: usize,
    relations: BTreeSet<(i32, i32)>,
}

/// Restriction of a poset to a subset of its ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subposet {
    pub elements: Vec<i32>,
    pub relations: BTreeSet<(i32, i32)>,
}

impl Subposet {
    pub fn height(&self) -> usize {
        longest_chain(&self.elements, &self.relations).saturating_sub(1)
    }
}

impl SignedPoset {
    /// Symmetrize, close and validate a list of generating relations.
    pub fn from_generators(
        family: Family,
        n: usize,
        generators: &[(i32, i32)],
    ) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::EmptyGround);
        }
        let in_ground = |x: i32| {
            let bound = n as i64;
            let v = x as i64;
            (v != 0 || family == Family::B) && (-bound..=bound).contains(&v)
        };
        for &(x, y) in generators {
            for z in [x, y] {
                if !in_ground(z) {
                    return Err(PosetError::OutOfGround { x: z, family, n });
                }
            }
            if x >= y {
                return Err(PosetError::OrderViolation { x, y });
            }
        }

        let size = 2 * n + 1;
        let idx = |x: i32| (x + n as i32) as usize;
        let mut m = vec![false; size * size];
        for &(x, y) in generators {
            m[idx(x) * size + idx(y)] = true;
            m[idx(-y) * size + idx(-x)] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if !m[i * size + k] {
                    continue;
                }
                for j in 0..size {
                    if m[k * size + j] {
                        m[i * size + j] = true;
                    }
                }
            }
        }
        let label = |i: usize| i as i32 - n as i32;
        let mut relations = BTreeSet::new();
        for i in 0..size {
            for j in 0..size {
                if m[i * size + j] {
                    let (x, y) = (label(i), label(j));
                    if x >= y {
                        return Err(PosetError::OrderViolation { x, y });
                    }
                    relations.insert((x, y));
                }
            }
        }
        let p = SignedPoset {
            family,
            n,
            relations,
        };

        if family != Family::C {
            for i in 1..=n as i32 {
                if p.covers(-i, i) {
                    return Err(PosetError::CoverViolation { i, family });
                }
            }
        }
        if family == Family::B && p.zero_is_related() && (p.height() <= 1 || p.is_separable()) {
            return Err(PosetError::ZeroRelation);
        }
        Ok(p)
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, PosetError> {
        let gens: Vec<(i32, i32)> = file.relations.iter().map(|r| (r[0], r[1])).collect();
        Self::from_generators(file.family, file.n, &gens)
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let file: PosetFile =
            serde_json::from_str(text).map_err(|e| PosetError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    /// File form listing the full closed relation set.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            family: self.family,
            n: self.n,
            relations: self.relations.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }

    pub fn antichain(family: Family, n: usize) -> Result<Self, PosetError> {
        Self::from_generators(family, n, &[])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.relations.iter().copied()
    }

    pub fn relation_set(&self) -> &BTreeSet<(i32, i32)> {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn precedes(&self, x: i32, y: i32) -> bool {
        self.relations.contains(&(x, y))
    }

    /// Ground set in increasing order.
    pub fn ground(&self) -> Vec<i32> {
        let n = self.n as i32;
        (-n..=n)
            .filter(|&x| x != 0 || self.family == Family::B)
            .collect()
    }

    /// `y` covers `x`: `x ≺ y` with nothing strictly between.
    pub fn covers(&self, x: i32, y: i32) -> bool {
        self.precedes(x, y) && !(x + 1..y).any(|z| self.precedes(x, z) && self.precedes(z, y))
    }

    pub fn cover_relations(&self) -> Vec<(i32, i32)> {
        self.relations
            .iter()
            .copied()
            .filter(|&(x, y)| self.covers(x, y))
            .collect()
    }

    pub fn height(&self) -> usize {
        longest_chain(&self.ground(), &self.relations).saturating_sub(1)
    }

    pub fn height_pair(&self) -> HeightPair {
        let plus: Vec<i32> = (1..=self.n as i32).collect();
        HeightPair {
            plus_height: self.induced(&plus).height(),
            total_height: self.height(),
        }
    }

    pub fn is_separable(&self) -> bool {
        !self.relations.iter().any(|&(x, y)| x < 0 && y > 0)
    }

    pub fn zero_is_related(&self) -> bool {
        self.relations.iter().any(|&(x, y)| x == 0 || y == 0)
    }

    pub fn induced(&self, keep: &[i32]) -> Subposet {
        let set: BTreeSet<i32> = keep.iter().copied().collect();
        let relations = self
            .relations
            .iter()
            .copied()
            .filter(|(x, y)| set.contains(x) && set.contains(y))
            .collect();
        Subposet {
            elements: set.into_iter().collect(),
            relations,
        }
    }

    /// Type-C poset on the same relations with 0 removed (type B only).
    pub fn without_zero(&self) -> Result<SignedPoset, PosetError> {
        if self.zero_is_related() {
            return Err(PosetError::ZeroRelated);
        }
        Ok(SignedPoset {
            family: Family::C,
            n: self.n,
            relations: self.relations.clone(),
        })
    }

    /// The same relations read as a poset of another family, revalidated.
    pub fn with_family(&self, family: Family) -> Result<SignedPoset, PosetError> {
        let gens: Vec<(i32, i32)> = self.relations.iter().copied().collect();
        SignedPoset::from_generators(family, self.n, &gens)
    }

    /// Keep only the pairs `±labels`, relabeled `1..=k` in increasing order.
    /// Relations touching a dropped pair are discarded.
    pub fn restrict_to_pairs(&self, labels: &[u32]) -> Result<SignedPoset, PosetError> {
        let sorted: BTreeSet<u32> = labels.iter().copied().collect();
        let rename = |x: i32| -> Option<i32> {
            if x == 0 {
                return Some(0);
            }
            let pos = sorted.iter().position(|&l| l as i32 == x.abs())? as i32 + 1;
            Some(if x < 0 { -pos } else { pos })
        };
        let gens: Vec<(i32, i32)> = self
            .relations
            .iter()
            .filter_map(|&(x, y)| Some((rename(x)?, rename(y)?)))
            .collect();
        SignedPoset::from_generators(self.family, sorted.len(), &gens)
    }

    /// Disjoint union, with `other`'s labels shifted above this poset's.
    pub fn disjoint_union(&self, other: &SignedPoset) -> Result<SignedPoset, PosetError> {
        let shift = self.n as i32;
        let moved = |x: i32| {
            if x < 0 {
                x - shift
            } else if x > 0 {
                x + shift
            } else {
                0
            }
        };
        let mut gens: Vec<(i32, i32)> = self.relations.iter().copied().collect();
        gens.extend(other.relations.iter().map(|&(x, y)| (moved(x), moved(y))));
        SignedPoset::from_generators(self.family, self.n + other.n, &gens)
    }

    /// Hasse diagram in DOT, one node per ground element, covering edges only.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for x in self.ground() {
            out.push_str(&format!("  \"{x}\";\n"));
        }
        for (x, y) in self.cover_relations() {
            out.push_str(&format!("  \"{x}\" -> \"{y}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for SignedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type-{} poset, n = {}, {{", self.family, self.n)?;
        let parts: Vec<String> = self
            .relations
            .iter()
            .map(|(x, y)| format!("{x}≺{y}"))
            .collect();
        write!(f, "{}}}", parts.join(", "))
    }
}

/// Cardinality of the longest chain. Relations always go upward in integer
/// order, so one pass over the sorted elements suffices.
fn longest_chain(elements: &[i32], relations: &BTreeSet<(i32, i32)>) -> usize {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    let mut best: Vec<usize> = vec![1; sorted.len()];
    for j in 0..sorted.len() {
        for i in 0..j {
            if relations.contains(&(sorted[i], sorted[j])) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_2_3() -> SignedPoset {
        SignedPoset::from_generators(Family::C, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)]).unwrap()
    }

    fn loop_poset() -> SignedPoset {
        SignedPoset::from_generators(Family::C, 3, &[(-3, -2), (-3, 1), (-3, 3)]).unwrap()
    }

    #[test]
    fn generators_already_mirror_closed() {
        let p = example_2_3();
        // (-2,1) and (-1,2) are mirrors of each other, as are (-2,3) and (-3,2)
        assert_eq!(p.relation_count(), 4);
        assert!(p.precedes(-3, 2) && p.precedes(-2, 3));
        assert!(p.precedes(-1, 2) && p.precedes(-2, 1));
        assert_eq!(p.height(), 1);
        assert_eq!(
            p.height_pair(),
            HeightPair {
                plus_height: 0,
                total_height: 1
            }
        );
        assert!(!p.is_separable());
        let plus = p.induced(&[1, 2, 3]);
        assert!(plus.relations.is_empty());
    }

    #[test]
    fn loop_poset_relations() {
        let p = loop_poset();
        let want: BTreeSet<(i32, i32)> = [(-3, -2), (2, 3), (-3, 1), (-1, 3), (-3, 3)]
            .into_iter()
            .collect();
        assert_eq!(p.relation_set(), &want);
        assert_eq!(
            p.height_pair(),
            HeightPair {
                plus_height: 1,
                total_height: 1
            }
        );
    }

    #[test]
    fn antichain_basics() {
        let p = SignedPoset::antichain(Family::C, 2).unwrap();
        assert_eq!(p.height(), 0);
        assert!(p.is_separable());
        assert_eq!(p.height_pair().total_height, 0);
        let full = p.induced(&p.ground());
        assert_eq!(full.elements, p.ground());
        assert!(full.relations.is_empty());
    }

    #[test]
    fn dashed_generator_closes_with_mirror() {
        let p = SignedPoset::from_generators(Family::C, 2, &[(-2, -1)]).unwrap();
        assert_eq!(p.relation_count(), 2);
        assert!(p.precedes(1, 2));
        assert_eq!(p.height(), 1);
        assert!(p.is_separable());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            SignedPoset::from_generators(Family::D, 2, &[(-1, 1)]),
            Err(PosetError::CoverViolation {
                i: 1,
                family: Family::D
            })
        );
        assert_eq!(
            SignedPoset::from_generators(Family::C, 2, &[(2, -1)]),
            Err(PosetError::OrderViolation { x: 2, y: -1 })
        );
        assert!(matches!(
            SignedPoset::from_generators(Family::C, 2, &[(0, 1)]),
            Err(PosetError::OutOfGround { x: 0, .. })
        ));
        assert!(matches!(
            SignedPoset::from_generators(Family::C, 2, &[(-3, 1)]),
            Err(PosetError::OutOfGround { x: -3, .. })
        ));
        let err = SignedPoset::from_generators(Family::C, 2, &[(2, -1)]).unwrap_err();
        assert_eq!(err.to_string(), "OrderViolation: 2 ≺ \u{2212}1");
    }

    #[test]
    fn loop_plus_dashed_edge_is_a_long_chain() {
        let p = SignedPoset::from_generators(Family::C, 2, &[(-2, -1), (-1, 1)]).unwrap();
        // -2 ≺ -1 ≺ 1 ≺ 2
        assert_eq!(p.height(), 3);
        assert!(p.precedes(-2, 2));
    }

    #[test]
    fn type_d_allows_a_non_covering_cross_relation() {
        let p = SignedPoset::from_generators(Family::D, 2, &[(-2, -1), (-1, 2)]).unwrap();
        assert!(p.precedes(-2, 2));
        assert!(!p.covers(-2, 2));
        assert!(p.precedes(-2, 1) && p.precedes(1, 2));
    }

    #[test]
    fn type_b_zero_relation_allowed_at_height_two() {
        // any relation with 0 comes with its mirror, so -i ≺ 0 ≺ i follows
        let p = SignedPoset::from_generators(Family::B, 1, &[(-1, 0)]).unwrap();
        assert_eq!(p.height(), 2);
        assert!(!p.is_separable());
        let p = SignedPoset::from_generators(Family::B, 2, &[(0, 2)]).unwrap();
        assert!(p.precedes(-2, 2) && !p.covers(-2, 2));
        assert!(p.without_zero().is_err());
    }

    #[test]
    fn round_trip_through_json() {
        let p = loop_poset();
        let text = serde_json::to_string(&p.to_file()).unwrap();
        assert_eq!(SignedPoset::from_json(&text).unwrap(), p);
        let parsed = SignedPoset::from_json(
            r#"{"family":"C","n":3,"relations":[[-2,1],[-2,3],[-3,2],[-1,2]]}"#,
        );
        assert_eq!(parsed.unwrap(), example_2_3());
        assert!(matches!(
            SignedPoset::from_json("{"),
            Err(PosetError::Parse(_))
        ));
    }

    #[test]
    fn restriction_and_union() {
        let p = example_2_3();
        let q = p.restrict_to_pairs(&[2, 3]).unwrap();
        assert_eq!(q.n(), 2);
        assert!(q.precedes(-1, 2) && q.precedes(-2, 1));
        let u = q.disjoint_union(&q).unwrap();
        assert_eq!(u.n(), 4);
        assert!(u.precedes(-3, 4));
        assert_eq!(u.relation_count(), 2 * q.relation_count());
    }

    #[test]
    fn hasse_dot_lists_covers() {
        let p = loop_poset();
        let dot = p.hasse_dot();
        assert!(dot.contains("\"-3\" -> \"-2\""));
        assert!(dot.contains("\"2\" -> \"3\""));
        assert_eq!(p.cover_relations().len(), 5);
    }
}
