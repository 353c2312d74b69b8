//! The Lie poset algebra of a signed poset, in its defining representation.
//!
//! Brackets are computed as matrix commutators and decomposed back over the
//! basis; a leftover entry is reported as a closure violation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{rat, ExactMatrix, Field};
use crate::poset::{Family, SignedPoset};
use crate::relgraph::RelationGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ClosureViolation: [{a}, {b}] leaves the span of the basis")]
    ClosureViolation { a: BasisElement, b: BasisElement },
    #[error("{0} is not in the basis")]
    NotInBasis(BasisElement),
    #[error("EvenDimension: extended matrix needs odd dimension, got {0}")]
    EvenDimension(usize),
}

/// One basis matrix, written in terms of `E_{x,y}` with signed labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasisElement {
    /// `E_{-i,-i} - E_{i,i}`
    Diag(u32),
    /// `i < j`: `E_{-j,-i} - E_{i,j}`
    Dashed(u32, u32),
    /// `E_{-i,i}` (type C)
    Loop(u32),
    /// `i < j`: `E_{-i,j} + E_{-j,i}` (type C)
    SolidC(u32, u32),
    /// `i > j`: `E_{-i,j} - E_{-j,i}` (types B and D)
    SolidD(u32, u32),
    /// `E_{-i,0} - E_{0,i}` (type B with 0 related)
    ZeroLink(u32),
}

impl BasisElement {
    /// Nonzero entries `(row, col, value)`; the first one is the leading entry,
    /// which no other basis element touches.
    pub fn entries(&self) -> Vec<(i32, i32, i64)> {
        match *self {
            BasisElement::Diag(i) => {
                let i = i as i32;
                vec![(-i, -i, 1), (i, i, -1)]
            }
            BasisElement::Dashed(i, j) => {
                let (i, j) = (i as i32, j as i32);
                vec![(-j, -i, 1), (i, j, -1)]
            }
            BasisElement::Loop(i) => {
                let i = i as i32;
                vec![(-i, i, 1)]
            }
            BasisElement::SolidC(i, j) => {
                let (i, j) = (i as i32, j as i32);
                vec![(-i, j, 1), (-j, i, 1)]
            }
            BasisElement::SolidD(i, j) => {
                let (i, j) = (i as i32, j as i32);
                vec![(-i, j, 1), (-j, i, -1)]
            }
            BasisElement::ZeroLink(i) => {
                let i = i as i32;
                vec![(-i, 0, 1), (0, i, -1)]
            }
        }
    }

    fn lead(&self) -> (i32, i32) {
        let (r, c, _) = self.entries()[0];
        (r, c)
    }

    pub fn is_diag(&self) -> bool {
        matches!(self, BasisElement::Diag(_))
    }

    /// Basis order: diagonal, dashed, loops, solid, then zero links.
    fn key(&self) -> (u8, u32, u32) {
        match *self {
            BasisElement::Diag(i) => (0, i, 0),
            BasisElement::Dashed(i, j) => (1, i, j),
            BasisElement::Loop(i) => (2, i, 0),
            BasisElement::SolidC(i, j) => (3, i, j),
            BasisElement::SolidD(i, j) => (3, j, i),
            BasisElement::ZeroLink(i) => (4, i, 0),
        }
    }
}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Diag(i) => write!(f, "D_{i}"),
            BasisElement::Dashed(i, j) => write!(f, "R_{{{i},{j}}}"),
            BasisElement::Loop(i) => write!(f, "E_{{-{i},{i}}}"),
            BasisElement::SolidC(i, j) => write!(f, "R±_{{{i},{j}}}"),
            BasisElement::SolidD(i, j) => write!(f, "S_{{{i},{j}}}"),
            BasisElement::ZeroLink(i) => write!(f, "Z_{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraBasis {
    pub family: Family,
    pub n: usize,
    pub elements: Vec<BasisElement>,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, e: &BasisElement) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }
}

pub fn basis(p: &SignedPoset) -> AlgebraBasis {
    let family = p.family();
    let mut elements: Vec<BasisElement> = (1..=p.n() as u32).map(BasisElement::Diag).collect();
    for (x, y) in p.relations() {
        let e = match (x.signum(), y.signum()) {
            (-1, -1) => Some(BasisElement::Dashed(y.unsigned_abs(), x.unsigned_abs())),
            (-1, 1) => {
                let (i, j) = (x.unsigned_abs(), y as u32);
                match (i == j, family) {
                    (true, Family::C) => Some(BasisElement::Loop(i)),
                    // the antidiagonal of so(m) is zero
                    (true, _) => None,
                    (false, Family::C) => Some(BasisElement::SolidC(i.min(j), i.max(j))),
                    (false, _) => Some(BasisElement::SolidD(i.max(j), i.min(j))),
                }
            }
            (0, 1) => Some(BasisElement::ZeroLink(y as u32)),
            _ => None,
        };
        elements.extend(e);
    }
    elements.sort();
    elements.dedup();
    AlgebraBasis {
        family,
        n: p.n(),
        elements,
    }
}

/// Row/column position of a signed label in the defining matrices.
fn position(x: i32, family: Family, n: usize) -> usize {
    let n = n as i32;
    let shifted = match family {
        Family::B => x + n,
        Family::C | Family::D => {
            if x < 0 {
                x + n
            } else {
                x + n - 1
            }
        }
    };
    shifted as usize
}

pub fn realize(e: &BasisElement, family: Family, n: usize) -> ExactMatrix {
    let size = family.matrix_size(n);
    let mut m = ExactMatrix::zeros(size, size, Field::Rational);
    for (r, c, v) in e.entries() {
        m.set_i64(position(r, family, n), position(c, family, n), v);
    }
    m
}

fn commutator_entries(a: &BasisElement, b: &BasisElement) -> BTreeMap<(i32, i32), i64> {
    let mut acc: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    let (ea, eb) = (a.entries(), b.entries());
    for &(r1, c1, v1) in &ea {
        for &(r2, c2, v2) in &eb {
            if c1 == r2 {
                *acc.entry((r1, c2)).or_default() += v1 * v2;
            }
        }
    }
    for &(r1, c1, v1) in &eb {
        for &(r2, c2, v2) in &ea {
            if c1 == r2 {
                *acc.entry((r1, c2)).or_default() -= v1 * v2;
            }
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// Sparse coefficient vector: `(basis index, coefficient)` sorted by index.
pub type Coefficients = Vec<(usize, i64)>;

fn decompose(
    basis: &AlgebraBasis,
    leads: &HashMap<(i32, i32), usize>,
    a: &BasisElement,
    b: &BasisElement,
) -> Result<Coefficients, AlgebraError> {
    let acc = commutator_entries(a, b);
    let mut coeffs: Coefficients = acc
        .iter()
        .filter_map(|(pos, &v)| leads.get(pos).map(|&k| (k, v)))
        .collect();
    coeffs.sort_unstable();
    let mut residual = acc;
    for &(k, c) in &coeffs {
        for (r, col, v) in basis.elements[k].entries() {
            *residual.entry((r, col)).or_default() -= c * v;
        }
    }
    if residual.values().any(|&v| v != 0) {
        return Err(AlgebraError::ClosureViolation { a: *a, b: *b });
    }
    Ok(coeffs)
}

fn lead_map(basis: &AlgebraBasis) -> HashMap<(i32, i32), usize> {
    basis
        .elements
        .iter()
        .enumerate()
        .map(|(k, e)| (e.lead(), k))
        .collect()
}

/// `[a, b]` over the basis, as `(element, coefficient)` pairs.
pub fn bracket(
    basis: &AlgebraBasis,
    a: &BasisElement,
    b: &BasisElement,
) -> Result<Vec<(BasisElement, i64)>, AlgebraError> {
    for e in [a, b] {
        if basis.index_of(e).is_none() {
            return Err(AlgebraError::NotInBasis(*e));
        }
    }
    let coeffs = decompose(basis, &lead_map(basis), a, b)?;
    Ok(coeffs
        .into_iter()
        .map(|(k, c)| (basis.elements[k], c))
        .collect())
}

/// All brackets of basis pairs, row-major over `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    table: Vec<Coefficients>,
}

impl StructureTable {
    pub fn build(basis: &AlgebraBasis) -> Result<Self, AlgebraError> {
        let dim = basis.dim();
        let leads = lead_map(basis);
        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in a + 1..dim {
                let c = decompose(basis, &leads, &basis.elements[a], &basis.elements[b])?;
                table[b * dim + a] = c.iter().map(|&(k, v)| (k, -v)).collect();
                table[a * dim + b] = c;
            }
        }
        Ok(StructureTable { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim + b]
    }

    /// Basis triples where the Jacobi identity fails.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim;
        let mut bad = Vec::new();
        let mut acc = vec![0i64; d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    acc.iter_mut().for_each(|v| *v = 0);
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for &(k, v) in self.get(x, y) {
                            for &(m, w) in self.get(k, z) {
                                acc[m] += v * w;
                            }
                        }
                    }
                    if acc.iter().any(|&v| v != 0) {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }
}

/// Basis plus structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: AlgebraBasis,
    table: StructureTable,
}

impl LieAlgebra {
    pub fn new(p: &SignedPoset) -> Result<Self, AlgebraError> {
        Self::from_basis(basis(p))
    }

    pub fn from_basis(basis: AlgebraBasis) -> Result<Self, AlgebraError> {
        let table = StructureTable::build(&basis)?;
        Ok(LieAlgebra { basis, table })
    }

    pub fn basis(&self) -> &AlgebraBasis {
        &self.basis
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `φ([E_a, E_b])` for every pair, over the integers.
    pub fn commutator_integers(&self, phi: &[i64]) -> Vec<i64> {
        let d = self.dim();
        let mut out = vec![0i64; d * d];
        for a in 0..d {
            for b in 0..d {
                out[a * d + b] = self.table.get(a, b).iter().map(|&(k, c)| c * phi[k]).sum();
            }
        }
        out
    }

    /// `φ([E_a, E_b])` for every pair, modulo `p`.
    pub fn commutator_residues(&self, phi: &[u64], p: u64) -> Vec<u64> {
        let d = self.dim();
        let mut out = vec![0u64; d * d];
        for a in 0..d {
            for b in 0..d {
                let mut s: i128 = 0;
                for &(k, c) in self.table.get(a, b) {
                    s += c as i128 * phi[k] as i128;
                }
                out[a * d + b] = s.rem_euclid(p as i128) as u64;
            }
        }
        out
    }

    /// Bordered matrix `[[0, φ], [-φ, φ(C)]]` modulo `p`, any dimension.
    pub fn extended_residues(&self, phi: &[u64], p: u64) -> Vec<u64> {
        let d = self.dim();
        let inner = self.commutator_residues(phi, p);
        let w = d + 1;
        let mut out = vec![0u64; w * w];
        for k in 0..d {
            out[k + 1] = phi[k] % p;
            out[(k + 1) * w] = (p - phi[k] % p) % p;
            out[(k + 1) * w + 1..(k + 2) * w].copy_from_slice(&inner[k * d..(k + 1) * d]);
        }
        out
    }
}

/// Linear functional on the algebra; unlisted elements map to 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Functional {
    values: BTreeMap<BasisElement, BigRational>,
}

impl Functional {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn ones(basis: &AlgebraBasis) -> Self {
        let mut f = Self::zero();
        for e in &basis.elements {
            f.set(*e, rat(1));
        }
        f
    }

    pub fn set(&mut self, e: BasisElement, v: BigRational) {
        if v.is_zero() {
            self.values.remove(&e);
        } else {
            self.values.insert(e, v);
        }
    }

    pub fn get(&self, e: &BasisElement) -> BigRational {
        self.values
            .get(e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero values in basis order.
    pub fn support(&self) -> impl Iterator<Item = (&BasisElement, &BigRational)> {
        self.values.iter()
    }

    pub fn on(&self, basis: &AlgebraBasis) -> Vec<BigRational> {
        basis.elements.iter().map(|e| self.get(e)).collect()
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(e, v)| {
                if v.is_one() {
                    format!("{e}*")
                } else {
                    format!("{v}·{e}*")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Entry `(a, b)` is `φ([E_a, E_b])`.
pub fn commutator_matrix(alg: &LieAlgebra, phi: &Functional) -> ExactMatrix {
    let d = alg.dim();
    let values = phi.on(alg.basis());
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let mut s = BigRational::zero();
            for &(k, c) in alg.table().get(a, b) {
                s += &values[k] * BigRational::from_integer(BigInt::from(c));
            }
            out.push(s);
        }
    }
    ExactMatrix::from_rationals(d, d, out).expect("square")
}

/// `[[0, φ(E_1) .. φ(E_d)], [-φ, φ(C)]]`, defined for odd dimension.
pub fn extended_matrix(alg: &LieAlgebra, phi: &Functional) -> Result<ExactMatrix, AlgebraError> {
    let d = alg.dim();
    if d.is_multiple_of(2) {
        return Err(AlgebraError::EvenDimension(d));
    }
    let inner = commutator_matrix(alg, phi);
    let values = phi.on(alg.basis());
    let w = d + 1;
    let mut out = vec![BigRational::zero(); w * w];
    for k in 0..d {
        out[k + 1] = values[k].clone();
        out[(k + 1) * w] = -values[k].clone();
        for b in 0..d {
            out[(k + 1) * w + b + 1] = inner.get(k, b).as_rational().expect("rational").clone();
        }
    }
    Ok(ExactMatrix::from_rationals(w, w, out).expect("square"))
}

/// Edge rows of a relation graph: dashed `{i,j}` gives `x_i - x_j`, a loop
/// `-2x_i`, a solid edge `-x_i - x_j`. Rows follow the graph's edge order.
pub fn m_rows(g: &RelationGraph) -> Vec<Vec<i64>> {
    let col: HashMap<u32, usize> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, k))
        .collect();
    g.edges()
        .iter()
        .map(|e| {
            let mut row = vec![0i64; g.vertex_count()];
            let (a, b) = (col[&e.a], col[&e.b]);
            if e.is_dashed() {
                row[a] += 1;
                row[b] -= 1;
            } else {
                row[a] -= 1;
                row[b] -= 1;
            }
            row
        })
        .collect()
}

pub fn m_matrix(g: &RelationGraph) -> ExactMatrix {
    ExactMatrix::from_i64_rows(&m_rows(g), g.vertex_count(), Field::Rational)
        .expect("rows match vertex count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;
    use crate::relgraph::Edge;

    fn one_edge() -> SignedPoset {
        SignedPoset::from_generators(Family::C, 2, &[(-1, 2)]).unwrap()
    }

    fn loop_poset() -> SignedPoset {
        SignedPoset::from_generators(Family::C, 3, &[(-3, -2), (-3, 1), (-3, 3)]).unwrap()
    }

    /// Dense product of two integer matrices given as row-major vectors.
    fn matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i * n + j] += a[i * n + k] * b[k * n + j];
                }
            }
        }
        out
    }

    fn dense(e: &BasisElement, family: Family, n: usize) -> Vec<i64> {
        realize(e, family, n).to_i64().unwrap()
    }

    #[test]
    fn bases_of_the_examples() {
        let p = SignedPoset::from_generators(Family::C, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)])
            .unwrap();
        use BasisElement::*;
        assert_eq!(
            basis(&p).elements,
            vec![Diag(1), Diag(2), Diag(3), SolidC(1, 2), SolidC(2, 3)]
        );
        assert_eq!(
            basis(&loop_poset()).elements,
            vec![
                Diag(1),
                Diag(2),
                Diag(3),
                Dashed(2, 3),
                Loop(3),
                SolidC(1, 3)
            ]
        );
        let a = SignedPoset::antichain(Family::C, 2).unwrap();
        assert_eq!(basis(&a).elements, vec![Diag(1), Diag(2)]);
    }

    #[test]
    fn realized_entries() {
        let d = realize(&BasisElement::Diag(1), Family::C, 2);
        // rows -2, -1, 1, 2
        assert_eq!(d.to_i64().unwrap()[5], 1);
        assert_eq!(d.to_i64().unwrap()[10], -1);
        let s = dense(&BasisElement::SolidC(1, 2), Family::C, 2);
        // entry (row, col) sits at row * 4 + col
        assert_eq!(s[4 + 3], 1);
        assert_eq!(s[2], 1);
        assert_eq!(s.iter().filter(|&&v| v != 0).count(), 2);
        let b = dense(&BasisElement::SolidD(2, 1), Family::B, 2);
        // rows -2, -1, 0, 1, 2
        assert_eq!(b[3], 1);
        assert_eq!(b[5 + 4], -1);
        assert!(b[2 * 5..3 * 5].iter().all(|&v| v == 0));
    }

    #[test]
    fn bracket_signs_against_dense_products() {
        let cases = [
            (
                Family::C,
                3,
                BasisElement::Diag(1),
                BasisElement::SolidC(1, 2),
                vec![(BasisElement::SolidC(1, 2), 1)],
            ),
            (
                Family::C,
                3,
                BasisElement::Diag(1),
                BasisElement::Dashed(1, 2),
                vec![(BasisElement::Dashed(1, 2), -1)],
            ),
            (
                Family::C,
                3,
                BasisElement::Diag(2),
                BasisElement::Dashed(1, 2),
                vec![(BasisElement::Dashed(1, 2), 1)],
            ),
            (
                Family::C,
                3,
                BasisElement::Diag(3),
                BasisElement::Loop(3),
                vec![(BasisElement::Loop(3), 2)],
            ),
            (
                Family::D,
                3,
                BasisElement::Diag(2),
                BasisElement::SolidD(3, 2),
                vec![(BasisElement::SolidD(3, 2), 1)],
            ),
            (
                Family::C,
                3,
                BasisElement::Diag(1),
                BasisElement::Diag(2),
                vec![],
            ),
        ];
        for (family, n, a, b, want) in cases {
            let elements = {
                let mut v = vec![a, b];
                for (e, _) in &want {
                    v.push(*e);
                }
                v.sort();
                v.dedup();
                v
            };
            let basis = AlgebraBasis {
                family,
                n,
                elements,
            };
            let got = bracket(&basis, &a, &b).unwrap();
            assert_eq!(got, want, "[{a}, {b}]");

            let size = family.matrix_size(n);
            let (ma, mb) = (dense(&a, family, n), dense(&b, family, n));
            let ab = matmul(&ma, &mb, size);
            let ba = matmul(&mb, &ma, size);
            let mut expect = vec![0i64; size * size];
            for (e, c) in &want {
                for (k, v) in dense(e, family, n).into_iter().enumerate() {
                    expect[k] += c * v;
                }
            }
            let comm: Vec<i64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
            assert_eq!(comm, expect);
        }
    }

    #[test]
    fn closure_violation_is_reported() {
        // two dashed edges without the bracket's target in the basis
        let basis = AlgebraBasis {
            family: Family::C,
            n: 3,
            elements: vec![BasisElement::Dashed(1, 2), BasisElement::Dashed(2, 3)],
        };
        let r = bracket(
            &basis,
            &BasisElement::Dashed(1, 2),
            &BasisElement::Dashed(2, 3),
        );
        assert!(matches!(r, Err(AlgebraError::ClosureViolation { .. })));
    }

    #[test]
    fn one_edge_commutator_and_extension() {
        let alg = LieAlgebra::new(&one_edge()).unwrap();
        let c = commutator_matrix(&alg, &Functional::ones(alg.basis()));
        let want =
            ExactMatrix::from_i64(3, 3, &[0, 0, 1, 0, 0, 1, -1, -1, 0], Field::Rational).unwrap();
        assert_eq!(c, want);

        let mut phi = Functional::zero();
        phi.set(BasisElement::Diag(1), rat(1));
        phi.set(BasisElement::SolidC(1, 2), rat(1));
        let ext = extended_matrix(&alg, &phi).unwrap();
        let want = ExactMatrix::from_i64(
            4,
            4,
            &[0, 1, 0, 1, -1, 0, 0, 1, 0, 0, 0, 1, -1, -1, -1, 0],
            Field::Rational,
        )
        .unwrap();
        assert_eq!(ext, want);
        assert_eq!(
            ext.determinant().unwrap(),
            Scalar::from_i64(1, Field::Rational)
        );

        let zero = extended_matrix(&alg, &Functional::zero()).unwrap();
        assert!(zero.determinant().unwrap().is_zero());
        let fig = LieAlgebra::new(&loop_poset()).unwrap();
        assert_eq!(
            extended_matrix(&fig, &Functional::zero()),
            Err(AlgebraError::EvenDimension(6))
        );
    }

    #[test]
    fn m_rows_by_edge_kind() {
        let g = RelationGraph::on_range(2, [Edge::dashed(1, 2)]).unwrap();
        assert_eq!(m_rows(&g), vec![vec![1, -1]]);
        let g = RelationGraph::on_range(1, [Edge::self_loop(1)]).unwrap();
        assert_eq!(m_rows(&g), vec![vec![-2]]);
        let g = RelationGraph::on_range(2, [Edge::solid(1, 2)]).unwrap();
        assert_eq!(m_rows(&g), vec![vec![-1, -1]]);
    }

    #[test]
    fn loop_poset_block_form() {
        let p = loop_poset();
        let alg = LieAlgebra::new(&p).unwrap();
        let rg = RelationGraph::from_poset(&p).unwrap();
        let m = m_rows(&rg);
        let c = alg.commutator_integers(&vec![1; alg.dim()]);
        let (v, e) = (rg.vertex_count(), rg.edge_count());
        let d = v + e;
        for r in 0..e {
            for k in 0..v {
                assert_eq!(c[(v + r) * d + k], m[r][k]);
                assert_eq!(c[k * d + v + r], -m[r][k]);
            }
        }
        assert!(alg.table().jacobi_violations().is_empty());
    }

    #[test]
    fn type_b_zero_links_close() {
        let p = SignedPoset::from_generators(Family::B, 2, &[(-1, 0), (-2, -1)]).unwrap();
        let alg = LieAlgebra::new(&p).unwrap();
        assert!(alg.basis().elements.contains(&BasisElement::ZeroLink(1)));
        assert!(alg.table().jacobi_violations().is_empty());
    }
}
