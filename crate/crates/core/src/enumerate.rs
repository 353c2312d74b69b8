//! Exhaustive height-one posets at small rank and the cross-checks run on
//! each of them.
//!
//! A candidate is a code in mixed radix: one base-3 digit per pair `i<j`
//! (in lexicographic order; 0 none, 1 solid `-i≺j`, 2 dashed `-j≺-i`),
//! then, for family C only, one bit per vertex for the loop `-i≺i`.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{m_matrix, LieAlgebra, StructureTable};
use crate::exactla::rat;
use crate::invariants::{
    classify_contact, contact_criterion, contact_form, form_determinant, index_oracle,
    InvariantError,
};
use crate::poset::{Family, SignedPoset};
use crate::relgraph::{delete_even_cycle_step, eliminate_dashed_trace, GraphError, RelationGraph};
use crate::report::{analyze, derive_seed, ClassificationReport, Settings};

pub const MAX_N: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("n must be between 1 and {MAX_N}, got {0}")]
    OutOfRange(usize),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("candidate {code}: {source}")]
    Analysis { code: u64, source: InvariantError },
}

fn pairs(n: usize) -> Vec<(i32, i32)> {
    let n = n as i32;
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

pub fn candidate_count(family: Family, n: usize) -> u64 {
    let p = (n * n.saturating_sub(1) / 2) as u32;
    let loops = if family == Family::C { 1u64 << n } else { 1 };
    3u64.pow(p) * loops
}

/// Generators encoded by `code`.
pub fn decode(family: Family, n: usize, code: u64) -> Vec<(i32, i32)> {
    let mut rest = code;
    let mut gens = Vec::new();
    for (i, j) in pairs(n) {
        match rest % 3 {
            1 => gens.push((-i, j)),
            2 => gens.push((-j, -i)),
            _ => {}
        }
        rest /= 3;
    }
    if family == Family::C {
        for i in 1..=n as i32 {
            if rest & 1 == 1 {
                gens.push((-i, i));
            }
            rest >>= 1;
        }
    }
    gens
}

/// The poset for `code`, if its closure has height at most one.
pub fn candidate(family: Family, n: usize, code: u64) -> Option<SignedPoset> {
    let p = SignedPoset::from_generators(family, n, &decode(family, n, code)).ok()?;
    (p.height() <= 1).then_some(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub code: u64,
    pub poset: SignedPoset,
}

/// Every valid height-one poset on `n` pairs, in code order.
pub fn generate_height_one(family: Family, n: usize) -> impl Iterator<Item = Candidate> {
    (0..candidate_count(family, n))
        .filter_map(move |code| candidate(family, n, code).map(|poset| Candidate { code, poset }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub code: u64,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationSummary {
    pub family: Family,
    pub n: usize,
    pub candidate_count: u64,
    pub valid_count: u64,
    pub checks_run: u64,
    pub checks: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    valid: u64,
    checks: BTreeMap<&'static str, u64>,
    failures: Vec<Failure>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.valid += other.valid;
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self
    }

    fn record(&mut self, code: u64, check: &'static str, outcome: Result<(), String>) {
        *self.checks.entry(check).or_default() += 1;
        if let Err(detail) = outcome {
            self.failures.push(Failure {
                code,
                check,
                detail,
            });
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Apply the dashed-edge rewrites (with even-cycle deletions when they stall)
/// and then the even-cycle deletions alone, checking `rank M` after every
/// step. Returns the number of steps.
pub fn rewrite_rank_check(g: &RelationGraph) -> Result<usize, String> {
    let base = m_matrix(g).rank();
    let mut steps = 0;
    let check = |h: &RelationGraph, what: &str| -> Result<(), String> {
        let r = m_matrix(h).rank();
        ensure(r == base, || {
            format!("{what} changed rank M from {base} to {r}")
        })
    };

    if g.has_solid() && g.has_dashed() {
        let mut cur = g.clone();
        loop {
            match eliminate_dashed_trace(&cur) {
                Ok(trace) => {
                    for s in trace {
                        check(&s.graph, &format!("{:?}", s.kind))?;
                        steps += 1;
                    }
                    break;
                }
                Err(GraphError::RewriteStuck) => {
                    let s = delete_even_cycle_step(&cur)
                        .map_err(|e| format!("stuck with dashed edges left: {e}"))?;
                    check(&s.graph, "DeleteCycleEdge")?;
                    cur = s.graph;
                    steps += 1;
                }
                Err(e) => return Err(e.to_string()),
            }
        }
    }

    let mut cur = g.clone();
    loop {
        match delete_even_cycle_step(&cur) {
            Ok(s) => {
                check(&s.graph, "DeleteCycleEdge")?;
                cur = s.graph;
                steps += 1;
            }
            Err(GraphError::NoEvenCycle) => break,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(steps)
}

fn check_candidate(code: u64, p: &SignedPoset, settings: &Settings, t: &mut Tally) {
    t.valid += 1;
    let mut rng = settings.with_seed(derive_seed(settings.seed, code)).rng();
    let g = match RelationGraph::from_poset(p) {
        Ok(g) => g,
        Err(e) => return t.record(code, "relation graph", Err(e.to_string())),
    };
    let census = g.census();

    let idx = match index_oracle(p, settings.samples, settings.prime, &mut rng) {
        Ok(idx) => idx,
        Err(e) => return t.record(code, "index", Err(e.to_string())),
    };
    let by_m = idx.index_from_m_rank();
    t.record(
        code,
        "index",
        ensure(
            idx.combinatorial == Some(idx.oracle) && by_m == Some(idx.oracle),
            || {
                format!(
                    "formula {:?}, M-rank {:?}, sampled {}",
                    idx.combinatorial, by_m, idx.oracle
                )
            },
        ),
    );

    if p.is_separable() && census.component_count == 1 {
        let expected = g.edge_count() + 2 - g.vertex_count();
        t.record(
            code,
            "separable",
            ensure(idx.oracle == expected, || {
                format!("index {} but |E|-|V|+2 = {expected}", idx.oracle)
            }),
        );
    }

    let frob_graph = census.components.iter().all(|c| c.is_single_odd_cycle);
    t.record(
        code,
        "frobenius",
        ensure((idx.oracle == 0) == frob_graph, || {
            format!(
                "index {} but single-odd-cycle criterion {frob_graph}",
                idx.oracle
            )
        }),
    );

    let contact = classify_contact(p, settings.det_samples, settings.prime, &mut rng);
    t.record(
        code,
        "contact",
        match contact {
            Ok(cert) => ensure(cert.is_contact() == contact_criterion(&census), || {
                "verdict disagrees with criterion".into()
            })
            .and_then(|_| {
                ensure(!cert.is_contact() || idx.oracle == 1, || {
                    format!("contact with index {}", idx.oracle)
                })
            })
            .and_then(|_| match &cert.form {
                Some(phi) => {
                    let zero = rat(0);
                    let alg = LieAlgebra::new(p).map_err(|e| e.to_string())?;
                    ensure(
                        alg.basis()
                            .elements
                            .iter()
                            .filter(|e| !e.is_diag())
                            .all(|e| phi.get(e) != zero),
                        || "certified form vanishes on an edge element".into(),
                    )
                }
                None => Ok(()),
            }),
            Err(e) => Err(e.to_string()),
        },
    );

    if census.component_count == 1 && census.components[0].is_tree && g.vertex_count() > 1 {
        let outcome = contact_form(p).map_err(|e| e.to_string()).and_then(|phi| {
            let alg = LieAlgebra::new(p).map_err(|e| e.to_string())?;
            let det = form_determinant(&alg, &phi).map_err(|e| e.to_string())?;
            ensure(det == rat(1), || format!("determinant {det}"))
        });
        t.record(code, "tree form", outcome);
    }

    let patterns = g.forbidden_patterns();
    t.record(
        code,
        "forbidden patterns",
        ensure(patterns.is_empty(), || format!("{patterns:?}")),
    );

    if census.component_count == 1 && !p.is_separable() {
        t.record(code, "rewrites", rewrite_rank_check(&g).map(|_| ()));
    }

    let twin = match p.family() {
        Family::C if !g.edges().iter().any(|e| e.is_loop()) => Some(p.with_family(Family::D)),
        Family::C => None,
        Family::D => Some(p.with_family(Family::C)),
        Family::B => Some(p.without_zero()),
    };
    if let Some(twin) = twin {
        let outcome = twin.map_err(|e| e.to_string()).and_then(|q| {
            let other = index_oracle(&q, settings.samples, settings.prime, &mut rng)
                .map_err(|e| e.to_string())?;
            ensure(other.dim == idx.dim && other.oracle == idx.oracle, || {
                format!(
                    "{} dim {} index {} vs {} dim {} index {}",
                    p.family(),
                    idx.dim,
                    idx.oracle,
                    q.family(),
                    other.dim,
                    other.oracle
                )
            })
        });
        t.record(code, "type twin", outcome);
    }

    let algebra = LieAlgebra::new(p)
        .map_err(|e| e.to_string())
        .and_then(|alg| {
            let table = StructureTable::build(alg.basis()).map_err(|e| e.to_string())?;
            let bad = table.jacobi_violations();
            ensure(bad.is_empty(), || {
                format!("Jacobi fails on {:?}", &bad[..bad.len().min(3)])
            })
        });
    t.record(code, "jacobi", algebra);
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, EnumerateError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().map_err(|e| EnumerateError::Pool(e.to_string()))
}

fn check_range(n: usize) -> Result<(), EnumerateError> {
    if n == 0 || n > MAX_N {
        Err(EnumerateError::OutOfRange(n))
    } else {
        Ok(())
    }
}

/// Run every cross-check on every valid candidate. Output does not depend
/// on `jobs`.
pub fn verify_theorems(
    family: Family,
    n: usize,
    settings: &Settings,
    jobs: Option<usize>,
) -> Result<VerificationSummary, EnumerateError> {
    check_range(n)?;
    let start = Instant::now();
    let count = candidate_count(family, n);
    let tally = pool(jobs)?.install(|| {
        (0..count)
            .into_par_iter()
            .fold(Tally::default, |mut t, code| {
                if let Some(p) = candidate(family, n, code) {
                    check_candidate(code, &p, settings, &mut t);
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    });
    let mut failures = tally.failures;
    failures.sort_by(|a, b| (a.code, a.check).cmp(&(b.code, b.check)));
    Ok(VerificationSummary {
        family,
        n,
        candidate_count: count,
        valid_count: tally.valid,
        checks_run: tally.checks.values().sum(),
        checks: tally.checks,
        failures,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogSummary {
    pub family: Family,
    pub n: usize,
    pub candidate_count: u64,
    pub valid_count: u64,
    pub seed: u64,
}

/// One report per valid candidate, sorted by code. Each report is seeded
/// from `(settings.seed, code)`.
pub fn catalog(
    family: Family,
    n: usize,
    settings: &Settings,
    jobs: Option<usize>,
) -> Result<(Vec<(u64, ClassificationReport)>, CatalogSummary), EnumerateError> {
    check_range(n)?;
    let count = candidate_count(family, n);
    let mut rows: Vec<(u64, ClassificationReport)> = pool(jobs)?.install(|| {
        (0..count)
            .into_par_iter()
            .filter_map(|code| candidate(family, n, code).map(|p| (code, p)))
            .map(|(code, p)| {
                analyze(&p, &settings.with_seed(derive_seed(settings.seed, code)))
                    .map(|r| (code, r))
                    .map_err(|source| EnumerateError::Analysis { code, source })
            })
            .collect::<Result<_, _>>()
    })?;
    rows.sort_by_key(|(code, _)| *code);
    let summary = CatalogSummary {
        family,
        n,
        candidate_count: count,
        valid_count: rows.len() as u64,
        seed: settings.seed,
    };
    Ok((rows, summary))
}
