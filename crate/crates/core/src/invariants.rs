//! Index, Frobenius and contact classification.
//!
//! Every verdict is available two ways: from the relation graph, and from
//! linear algebra on the structure constants (exact ranks, exact determinants
//! of explicit forms, or random evaluations over a prime field).

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    extended_matrix, m_matrix, AlgebraError, BasisElement, Functional, LieAlgebra,
};
use crate::exactla::{rat, ExactMatrix, LinAlgError, Scalar};
use crate::poset::{Family, SignedPoset};
use crate::relgraph::{ComponentCensus, Edge, GraphError, RelationGraph};

/// Rows accepted by [`find_sign_combination`].
pub const MAX_SIGN_ROWS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("HeightError: this needs height at most one, got {0}")]
    HeightError(usize),
    #[error("InconsistencyError: {0}")]
    Inconsistency(String),
    #[error("NotTree: the relation graph is not a tree")]
    NotTree,
    #[error("TrivialGraph: the relation graph has a single vertex")]
    TrivialGraph,
    #[error("TooManyRows: {0} rows, at most {MAX_SIGN_ROWS} allowed")]
    TooManyRows(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl From<GraphError> for InvariantError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::HeightError(h) => InvariantError::HeightError(h),
            other => InvariantError::Inconsistency(other.to_string()),
        }
    }
}

fn relation_graph(p: &SignedPoset) -> Result<RelationGraph, InvariantError> {
    Ok(RelationGraph::from_poset(p)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexResult {
    pub dim: usize,
    /// `|E| - |V| + 2η`, height one only.
    pub combinatorial: Option<usize>,
    /// Rank of the edge-row matrix, height one only.
    pub m_rank: Option<usize>,
    /// `dim` minus the largest sampled rank of `φ(C)`.
    pub oracle: usize,
    pub max_rank: usize,
    pub samples: usize,
    pub prime: u64,
}

impl IndexResult {
    pub fn index_from_m_rank(&self) -> Option<usize> {
        self.m_rank.map(|r| self.dim - 2 * r)
    }

    /// All available computations agree.
    pub fn consistent(&self) -> bool {
        self.combinatorial.is_none_or(|c| c == self.oracle)
            && self.index_from_m_rank().is_none_or(|m| m == self.oracle)
            && (self.dim - self.oracle).is_multiple_of(2)
    }
}

pub fn index_combinatorial(p: &SignedPoset) -> Result<usize, InvariantError> {
    let g = relation_graph(p)?;
    Ok(formula(&g, &g.census()))
}

fn formula(g: &RelationGraph, c: &ComponentCensus) -> usize {
    g.edge_count() + 2 * c.eta - g.vertex_count()
}

/// `dim - 2 rank M`, height one only.
pub fn index_from_m_rank(p: &SignedPoset) -> Result<usize, InvariantError> {
    let g = relation_graph(p)?;
    Ok(g.vertex_count() + g.edge_count() - 2 * m_matrix(&g).rank())
}

fn random_residues(len: usize, prime: u64, rng: &mut impl Rng) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(0..prime)).collect()
}

/// Generic rank of `φ(C)`: the all-ones functional plus `samples` random ones
/// over `F_prime`. Works at any height; the graph quantities are filled in
/// for height at most one.
pub fn index_oracle(
    p: &SignedPoset,
    samples: usize,
    prime: u64,
    rng: &mut impl Rng,
) -> Result<IndexResult, InvariantError> {
    let alg = LieAlgebra::new(p)?;
    let dim = alg.dim();
    let rank_of = |phi: &[u64]| -> usize {
        let m = ExactMatrix::from_residues(dim, dim, alg.commutator_residues(phi, prime), prime)
            .expect("square");
        m.rank()
    };
    let mut max_rank = rank_of(&vec![1; dim]);
    for _ in 0..samples {
        max_rank = max_rank.max(rank_of(&random_residues(dim, prime, rng)));
    }
    let (combinatorial, m_rank) = if p.height() <= 1 {
        let g = relation_graph(p)?;
        (Some(formula(&g, &g.census())), Some(m_matrix(&g).rank()))
    } else {
        (None, None)
    };
    Ok(IndexResult {
        dim,
        combinatorial,
        m_rank,
        oracle: dim - max_rank,
        max_rank,
        samples,
        prime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCheck {
    pub by_index: bool,
    pub by_graph: bool,
}

pub fn is_frobenius(p: &SignedPoset) -> Result<FrobeniusCheck, InvariantError> {
    let g = relation_graph(p)?;
    let index = g.vertex_count() + g.edge_count() - 2 * m_matrix(&g).rank();
    let by_graph = g.census().components.iter().all(|c| c.is_single_odd_cycle);
    Ok(FrobeniusCheck {
        by_index: index == 0,
        by_graph,
    })
}

/// Exactly one tree component, every other component a single odd cycle.
pub fn contact_criterion(census: &ComponentCensus) -> bool {
    let trees = census.components.iter().filter(|c| c.is_tree).count();
    trees == 1
        && census
            .components
            .iter()
            .all(|c| c.is_tree || c.is_single_odd_cycle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContactVerdict {
    Contact,
    NotContact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ContactMethod {
    /// A constructed form with an exact nonzero determinant.
    ExplicitForm,
    /// Odd dimension, every sampled determinant vanished.
    RandomSample,
    /// Even dimension; nothing to sample.
    GraphCriterion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactCertificate {
    pub verdict: ContactVerdict,
    pub method: ContactMethod,
    pub form: Option<Functional>,
    pub determinant: Option<Scalar>,
    pub dim: usize,
    pub samples: usize,
}

impl ContactCertificate {
    pub fn is_contact(&self) -> bool {
        self.verdict == ContactVerdict::Contact
    }
}

/// Basis element carried by a relation-graph edge.
pub fn edge_element(e: &Edge, family: Family) -> BasisElement {
    if e.is_dashed() {
        BasisElement::Dashed(e.a, e.b)
    } else if e.is_loop() {
        BasisElement::Loop(e.a)
    } else if family == Family::C {
        BasisElement::SolidC(e.a, e.b)
    } else {
        BasisElement::SolidD(e.b, e.a)
    }
}

/// Dual of the smallest leaf plus the duals of every edge, for a tree
/// relation graph with at least two vertices.
pub fn contact_form(p: &SignedPoset) -> Result<Functional, InvariantError> {
    let g = relation_graph(p)?;
    let c = g.census();
    if c.component_count != 1 || !c.components[0].is_tree {
        return Err(InvariantError::NotTree);
    }
    if g.vertex_count() <= 1 {
        return Err(InvariantError::TrivialGraph);
    }
    Ok(tree_form(&g, g.vertices(), p.family()))
}

fn tree_form(g: &RelationGraph, component: &[u32], family: Family) -> Functional {
    let mut phi = Functional::zero();
    if component.len() == 1 {
        phi.set(BasisElement::Diag(component[0]), rat(1));
        return phi;
    }
    let leaf = component
        .iter()
        .copied()
        .find(|&v| g.degree(v) == 1)
        .expect("a tree with two vertices has a leaf");
    phi.set(BasisElement::Diag(leaf), rat(1));
    for e in g.edges().iter().filter(|e| component.contains(&e.a)) {
        phi.set(edge_element(e, family), rat(1));
    }
    phi
}

/// Retries with random edge values when the all-ones assembly is singular.
const FORM_RETRIES: usize = 32;

/// Decide whether the algebra is contact, with a certificate.
pub fn classify_contact(
    p: &SignedPoset,
    det_samples: usize,
    prime: u64,
    rng: &mut impl Rng,
) -> Result<ContactCertificate, InvariantError> {
    let g = relation_graph(p)?;
    let census = g.census();
    let alg = LieAlgebra::new(p)?;
    let dim = alg.dim();
    let predicted = contact_criterion(&census);

    if dim % 2 == 0 {
        if predicted {
            return Err(InvariantError::Inconsistency(format!(
                "graph predicts contact but the dimension {dim} is even"
            )));
        }
        return Ok(ContactCertificate {
            verdict: ContactVerdict::NotContact,
            method: ContactMethod::GraphCriterion,
            form: None,
            determinant: None,
            dim,
            samples: 0,
        });
    }

    if predicted {
        let family = p.family();
        let mut phi = Functional::zero();
        for comp in &census.components {
            if comp.is_tree {
                for (e, v) in tree_form(&g, &comp.vertices, family).support() {
                    phi.set(*e, v.clone());
                }
            } else {
                for e in g.edges().iter().filter(|e| comp.vertices.contains(&e.a)) {
                    phi.set(edge_element(e, family), rat(1));
                }
            }
        }
        for attempt in 0..=FORM_RETRIES {
            if attempt > 0 {
                for comp in census.components.iter().filter(|c| !c.is_tree) {
                    for e in g.edges().iter().filter(|e| comp.vertices.contains(&e.a)) {
                        phi.set(edge_element(e, family), rat(rng.gen_range(1..=97)));
                    }
                }
            }
            let det = extended_matrix(&alg, &phi)?.determinant()?;
            if !det.is_zero() {
                return Ok(ContactCertificate {
                    verdict: ContactVerdict::Contact,
                    method: ContactMethod::ExplicitForm,
                    form: Some(phi),
                    determinant: Some(det),
                    dim,
                    samples: attempt,
                });
            }
        }
        return Err(InvariantError::Inconsistency(
            "graph predicts contact but no certified form was found".into(),
        ));
    }

    for _ in 0..det_samples {
        let phi = random_residues(dim, prime, rng);
        let ext = ExactMatrix::from_residues(
            dim + 1,
            dim + 1,
            alg.extended_residues(&phi, prime),
            prime,
        )?;
        let det = ext.determinant()?;
        if !det.is_zero() {
            return Err(InvariantError::Inconsistency(format!(
                "graph predicts non-contact but a sampled form has determinant {det} mod {prime}"
            )));
        }
    }
    Ok(ContactCertificate {
        verdict: ContactVerdict::NotContact,
        method: ContactMethod::RandomSample,
        form: None,
        determinant: Some(Scalar::Residue {
            value: 0,
            modulus: prime,
        }),
        dim,
        samples: det_samples,
    })
}

/// Exact determinant of the bordered matrix for a given functional.
pub fn form_determinant(alg: &LieAlgebra, phi: &Functional) -> Result<BigRational, InvariantError> {
    let det = extended_matrix(alg, phi)?.determinant()?;
    Ok(det
        .as_rational()
        .cloned()
        .unwrap_or_else(|| BigRational::from_integer(BigInt::from(0))))
}

/// Brute force over all `±1` sign vectors for `Σ c_j rows_j = target`.
/// Returns the first hit in Gray-code order.
pub fn find_sign_combination(
    rows: &[Vec<i64>],
    target: &[i64],
) -> Result<Option<Vec<i8>>, InvariantError> {
    let k = rows.len();
    if k > MAX_SIGN_ROWS {
        return Err(InvariantError::TooManyRows(k));
    }
    if rows.iter().any(|r| r.len() != target.len()) {
        return Ok(None);
    }
    let mut signs = vec![1i8; k];
    let mut sum: Vec<i64> = vec![0; target.len()];
    for r in rows {
        for (s, v) in sum.iter_mut().zip(r) {
            *s += v;
        }
    }
    if sum == target {
        return Ok(Some(signs));
    }
    for t in 1u64..(1u64 << k) {
        let j = t.trailing_zeros() as usize;
        let delta = -2 * signs[j] as i64;
        for (s, v) in sum.iter_mut().zip(&rows[j]) {
            *s += delta * v;
        }
        signs[j] = -signs[j];
        if sum == target {
            return Ok(Some(signs));
        }
    }
    Ok(None)
}
