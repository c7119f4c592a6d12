//! JSON report schemas shared by the CLI.
//!
//! Multiplicities from the decomposition side are strings so they can carry
//! integers of any size. Torsion coefficients are plain JSON numbers and must
//! fit in a `u64`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibre::{DecompositionResult, FibreInput, Origin};
use crate::homology::{AbelianGroup, ReducedGroups};
use crate::normal::WedgeNormalForm;
use crate::oracle::{betti_vector, ZkCohomology};

fn small(t: &BigUint) -> Result<u64> {
    t.to_u64()
        .ok_or_else(|| Error::invalid(format!("torsion coefficient {t} does not fit in 64 bits")))
}

fn trim_trailing_zeros(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `{ "m", "betti", "torsion": [[degree, coefficient]], "ledger": [...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZkReport {
    pub m: usize,
    pub betti: Vec<u64>,
    pub torsion: Vec<(usize, u64)>,
    pub ledger: Vec<ZkLedgerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZkLedgerEntry {
    pub sigma: Vec<usize>,
    pub reduced_degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl ZkReport {
    /// Betti numbers are trimmed after the last nonzero degree.
    pub fn new(z: &ZkCohomology, with_ledger: bool) -> Result<Self> {
        let torsion = z
            .torsion()
            .iter()
            .map(|(l, t)| Ok((*l, small(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let ledger = if with_ledger {
            z.summands
                .iter()
                .map(|s| {
                    Ok(ZkLedgerEntry {
                        sigma: s.sigma.to_vec(),
                        reduced_degree: s.reduced_degree as i64,
                        free_rank: s.group.free_rank,
                        torsion: s.group.torsion.iter().map(small).collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(ZkReport {
            m: z.m,
            betti: trim_trailing_zeros(betti_vector(z)),
            torsion,
            ledger,
        })
    }
}

/// `{ "n", "loops", "spheres": [{"dim", "multiplicity"}], "ledger"? }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub n: usize,
    pub loops: Vec<String>,
    pub spheres: Vec<SphereEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<ResidualEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ledger: Option<Vec<DecomposeLedgerEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereEntry {
    pub dim: u32,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub monomial: String,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeLedgerEntry {
    pub subset: Vec<usize>,
    pub multiplicity: String,
    pub summand: String,
    pub origin: String,
}

pub fn sphere_entries(w: &WedgeNormalForm) -> Vec<SphereEntry> {
    w.spheres()
        .iter()
        .map(|(d, c)| SphereEntry {
            dim: *d,
            multiplicity: c.to_string(),
        })
        .collect()
}

pub fn residual_entries(w: &WedgeNormalForm) -> Vec<ResidualEntry> {
    w.residual()
        .iter()
        .map(|(m, c)| ResidualEntry {
            monomial: m.to_string(),
            multiplicity: c.to_string(),
        })
        .collect()
}

fn origin_label(o: Origin) -> String {
    match o {
        Origin::ClosedForm => "closed-form".into(),
        Origin::Base => "base".into(),
        Origin::Join { stage } => format!("join@{stage}"),
        Origin::HalfSmash { stage } => format!("half-smash@{stage}"),
    }
}

impl DecomposeReport {
    pub fn new(input: &FibreInput, result: &DecompositionResult, with_ledger: bool) -> Self {
        let ledger = with_ledger.then(|| {
            result
                .ledger
                .iter()
                .map(|r| DecomposeLedgerEntry {
                    subset: r.subset.to_vec(),
                    multiplicity: r.multiplicity.to_string(),
                    summand: r.summand.to_string(),
                    origin: origin_label(r.origin),
                })
                .collect()
        });
        DecomposeReport {
            n: input.n(),
            loops: input.loops().iter().map(ToString::to_string).collect(),
            spheres: sphere_entries(&result.normal_form),
            residual: residual_entries(&result.normal_form),
            ledger,
        }
    }
}

/// Reduced homology and cohomology of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub m: usize,
    pub homology: Vec<GroupEntry>,
    pub cohomology: Vec<GroupEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupEntry {
    fn new(degree: isize, g: &AbelianGroup) -> Result<Self> {
        Ok(GroupEntry {
            degree: degree as i64,
            free_rank: g.free_rank,
            torsion: g.torsion.iter().map(small).collect::<Result<_>>()?,
        })
    }
}

impl BettiReport {
    pub fn new(m: usize, homology: &ReducedGroups, cohomology: &ReducedGroups) -> Result<Self> {
        let entries = |g: &ReducedGroups| g.iter().map(|(d, g)| GroupEntry::new(d, g)).collect::<Result<Vec<_>>>();
        Ok(BettiReport {
            m,
            homology: entries(homology)?,
            cohomology: entries(cohomology)?,
        })
    }
}

/// Four-way comparison for `n` circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub agree: bool,
    pub rows: Vec<VerifyRow>,
    pub oracle_torsion_free: bool,
    pub mismatches: Vec<String>,
}

/// Counts of `S^dim` from each route. Multiplicities are strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub dim: u32,
    pub closed_form: String,
    pub recursive: String,
    pub theorem: String,
    pub oracle: String,
}

/// Parsed and normalized expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub input: String,
    pub normal_form: String,
    pub spheres: Vec<SphereEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<ResidualEntry>,
    pub steps: usize,
}
