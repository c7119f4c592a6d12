//! Integral cohomology of the moment-angle complex `Z_K`.
//!
//! `H^l(Z_K) ≅ ⊕_{σ ⊆ [m]} H̃^{l-|σ|-1}(K_σ)`, with `H̃^{-1}({∅}) = ℤ`.
//! The arrangement complement `U(K)` is homotopy equivalent to `Z_K`, so the
//! same groups describe the complement. Each `σ` is an independent
//! computation; results are merged in lexicographic `σ` order.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{reduced_cohomology, AbelianGroup};
use crate::simplicial::{SimplicialComplex, VertexSet};

pub const DEFAULT_SUBSET_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest ground set accepted; `2^m` subcomplexes are evaluated.
    pub subset_bound: usize,
    /// Evaluate subsets on the current rayon pool.
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            subset_bound: DEFAULT_SUBSET_BOUND,
            parallel: true,
        }
    }
}

/// One nonzero term `H̃^{d}(K_σ)` of the decomposition, landing in total
/// degree `|σ| + 1 + d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochsterSummand {
    pub sigma: VertexSet,
    pub reduced_degree: isize,
    pub group: AbelianGroup,
    pub total_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZkCohomology {
    pub m: usize,
    /// `groups[l] = H^l(Z_K)` for `l = 0 ..= 2m`.
    pub groups: Vec<AbelianGroup>,
    /// Nonzero contributions, ordered by `σ` then degree.
    pub summands: Vec<HochsterSummand>,
    /// Number of subsets examined, always `2^m`.
    pub subsets_evaluated: usize,
}

pub fn zk_cohomology(k: &SimplicialComplex) -> Result<ZkCohomology> {
    zk_cohomology_with(k, &OracleOptions::default())
}

pub fn zk_cohomology_with(k: &SimplicialComplex, opts: &OracleOptions) -> Result<ZkCohomology> {
    let m = k.m();
    if m > opts.subset_bound || m >= 63 {
        return Err(Error::ResourceLimit {
            what: "ground set size",
            actual: m,
            bound: opts.subset_bound.min(62),
        });
    }
    let count = 1u64 << m;
    let evaluate = |bits: u64| -> Result<Vec<HochsterSummand>> { summands_for(k, VertexSet::from_bits(bits)) };
    let per_sigma: Vec<Vec<HochsterSummand>> = if opts.parallel {
        (0..count).into_par_iter().map(evaluate).collect::<Result<_>>()?
    } else {
        (0..count).map(evaluate).collect::<Result<_>>()?
    };

    let mut summands: Vec<HochsterSummand> = per_sigma.into_iter().flatten().collect();
    summands.sort_by_key(|s| (s.sigma, s.reduced_degree));

    let mut groups = vec![AbelianGroup::trivial(); 2 * m + 1];
    for s in &summands {
        groups[s.total_degree] = groups[s.total_degree].direct_sum(&s.group);
    }
    Ok(ZkCohomology {
        m,
        groups,
        summands,
        subsets_evaluated: count as usize,
    })
}

fn summands_for(k: &SimplicialComplex, sigma: VertexSet) -> Result<Vec<HochsterSummand>> {
    let sub = k.full_subcomplex(sigma)?;
    // a nonempty full simplex is acyclic
    if !sigma.is_empty() && sub.is_full_simplex() {
        return Ok(Vec::new());
    }
    Ok(reduced_cohomology(&sub)
        .iter()
        .filter(|(_, g)| !g.is_trivial())
        .map(|(d, g)| HochsterSummand {
            sigma,
            reduced_degree: d,
            group: g.clone(),
            total_degree: (sigma.len() as isize + 1 + d) as usize,
        })
        .collect())
}

impl ZkCohomology {
    /// `(degree, coefficient)` for every torsion summand.
    pub fn torsion(&self) -> Vec<(usize, BigUint)> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(l, g)| g.torsion.iter().map(move |t| (l, t.clone())))
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(AbelianGroup::is_free)
    }
}

/// Free ranks of `H^l(Z_K)` for `l = 0 ..= 2m`.
pub fn betti_vector(z: &ZkCohomology) -> Vec<u64> {
    z.groups.iter().map(|g| g.free_rank as u64).collect()
}

/// `Σ_l b_l t^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    /// Coefficient of `t^l` at index `l`, trailing zeros trimmed.
    pub coefficients: Vec<u64>,
}

impl PoincareSeries {
    pub fn from_betti(betti: &[u64]) -> Self {
        let mut coefficients = betti.to_vec();
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        PoincareSeries { coefficients }
    }

    pub fn eval(&self, t: i64) -> i128 {
        self.coefficients
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * t as i128 + c as i128)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(l, c)| match (l, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (l, 1) => format!("t^{l}"),
                (l, c) => format!("{c}t^{l}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

pub fn poincare_series(z: &ZkCohomology) -> PoincareSeries {
    PoincareSeries::from_betti(&betti_vector(z))
}
