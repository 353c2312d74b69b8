//! Seeded end-to-end classification of one poset.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactla::{is_prime, DEFAULT_PRIME};
use crate::invariants::{
    classify_contact, index_oracle, ContactCertificate, ContactMethod, ContactVerdict, IndexResult,
    InvariantError,
};
use crate::poset::{Family, SignedPoset};
use crate::relgraph::RelationGraph;

/// Sampling knobs shared by every randomized check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Settings {
    pub samples: usize,
    pub det_samples: usize,
    pub prime: u64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            samples: 8,
            det_samples: 16,
            prime: DEFAULT_PRIME,
            seed: 0,
        }
    }
}

impl Settings {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !is_prime(self.prime) {
            return Err(format!("NotPrime: {} is not prime", self.prime));
        }
        if self.samples == 0 {
            return Err("samples must be at least 1".into());
        }
        Ok(())
    }
}

/// SplitMix64 mix of a base seed with a stream index.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// JSON view of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateView {
    pub verdict: ContactVerdict,
    pub method: ContactMethod,
    pub dim: usize,
    pub determinant: Option<String>,
    pub form: Option<String>,
    pub samples: usize,
}

impl From<&ContactCertificate> for CertificateView {
    fn from(c: &ContactCertificate) -> Self {
        CertificateView {
            verdict: c.verdict,
            method: c.method,
            dim: c.dim,
            determinant: c.determinant.as_ref().map(|d| d.to_string()),
            form: c.form.as_ref().map(|f| f.to_string()),
            samples: c.samples,
        }
    }
}

/// Field order is part of the output format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub family: Family,
    pub n: usize,
    pub relations: Vec<[i32; 2]>,
    pub dim: usize,
    pub index: usize,
    pub eta: Option<usize>,
    pub frobenius: bool,
    pub contact: Option<bool>,
    pub method: Option<ContactMethod>,
    pub determinant: Option<String>,
    pub seed: u64,
    pub samples: usize,
    pub prime: u64,
    pub height: [usize; 2],
    pub det_samples: usize,
    pub index_formula: Option<usize>,
    pub m_rank: Option<usize>,
    pub components: Option<usize>,
    pub frobenius_graph: Option<bool>,
    pub contact_form: Option<String>,
}

/// Index (any height) and, for height at most one, the graph census and a
/// contact certificate. Deterministic in `settings.seed`.
pub fn analyze(
    p: &SignedPoset,
    settings: &Settings,
) -> Result<ClassificationReport, InvariantError> {
    let mut rng = settings.rng();
    let idx = index_oracle(p, settings.samples, settings.prime, &mut rng)?;
    check_index(&idx)?;
    let hp = p.height_pair();
    let mut report = ClassificationReport {
        family: p.family(),
        n: p.n(),
        relations: p.to_file().relations,
        dim: idx.dim,
        index: idx.oracle,
        eta: None,
        frobenius: idx.oracle == 0,
        contact: None,
        method: None,
        determinant: None,
        seed: settings.seed,
        samples: settings.samples,
        prime: settings.prime,
        height: [hp.plus_height, hp.total_height],
        det_samples: settings.det_samples,
        index_formula: idx.combinatorial,
        m_rank: idx.m_rank,
        components: None,
        frobenius_graph: None,
        contact_form: None,
    };
    if hp.total_height > 1 {
        return Ok(report);
    }
    let g = RelationGraph::from_poset(p).map_err(InvariantError::from)?;
    let census = g.census();
    report.eta = Some(census.eta);
    report.components = Some(census.component_count);
    report.frobenius_graph = Some(census.components.iter().all(|c| c.is_single_odd_cycle));

    let cert = classify_contact(p, settings.det_samples, settings.prime, &mut rng)?;
    if cert.is_contact() && idx.oracle != 1 {
        return Err(InvariantError::Inconsistency(format!(
            "certified contact form but index {}",
            idx.oracle
        )));
    }
    report.contact = Some(cert.is_contact());
    report.method = Some(cert.method);
    report.determinant = cert.determinant.as_ref().map(|d| d.to_string());
    report.contact_form = cert.form.as_ref().map(|f| f.to_string());
    Ok(report)
}

fn check_index(idx: &IndexResult) -> Result<(), InvariantError> {
    if idx.consistent() {
        Ok(())
    } else {
        Err(InvariantError::Inconsistency(format!(
            "index disagreement: formula {:?}, M-rank {:?}, sampled {}",
            idx.combinatorial,
            idx.index_from_m_rank(),
            idx.oracle
        )))
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family       {}", self.family)?;
        writeln!(f, "n            {}", self.n)?;
        writeln!(f, "relations    {}", self.relations.len())?;
        writeln!(f, "height       ({}, {})", self.height[0], self.height[1])?;
        writeln!(f, "dim          {}", self.dim)?;
        writeln!(f, "index        {}", self.index)?;
        writeln!(f, "eta          {}", opt(&self.eta))?;
        writeln!(f, "frobenius    {}", self.frobenius)?;
        writeln!(f, "contact      {}", opt(&self.contact))?;
        if let Some(m) = self.method {
            writeln!(f, "method       {m:?}")?;
        }
        if let Some(d) = &self.determinant {
            writeln!(f, "determinant  {d}")?;
        }
        if let Some(form) = &self.contact_form {
            writeln!(f, "form         {form}")?;
        }
        write!(
            f,
            "seed {}  samples {}  prime {}",
            self.seed, self.samples, self.prime
        )
    }
}
