//! The homotopy fibre `F_n` of the inclusion `X_1 ∨ .. ∨ X_n -> X_1 × .. × X_n`.
//!
//! `F_n` is a wedge, over subsets `{i_1 < .. < i_k}` with `k >= 2`, of
//! `k - 1` copies of `Σ ΩX_{i_1} ∧ .. ∧ ΩX_{i_k}`. Two routes compute it:
//! the closed form enumerates subsets directly, and the recursive route
//! rebuilds `F_n` from `F_{n-1}` through the pushout
//! `F_n ≃ (ΩN_{n-1} * ΩX_n) ∨ (F_{n-1} ⋊ ΩX_n)` using the rewrite engine.
//! With every `X_i = CP^∞`, `F_n` is `ℂ^n` minus all coordinate subspaces of
//! complex codimension two, up to homotopy.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{Generator, SpaceExpr};
use crate::normal::{normalize, WedgeNormalForm};
use crate::simplicial::{VertexSet, MAX_VERTICES};

/// Largest `n` for which the closed form lists every subset.
pub const LEDGER_ENUMERATION_CAP: usize = 20;

/// Loop spaces `ΩX_1, .., ΩX_n` of the wedge summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreInput {
    loops: Vec<SpaceExpr>,
    loop_forms: Vec<WedgeNormalForm>,
}

impl FibreInput {
    /// Requires `n >= 2` and that every loop space normalizes.
    pub fn new(loops: Vec<SpaceExpr>) -> Result<Self> {
        if loops.len() < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 loop spaces, got {}",
                loops.len()
            )));
        }
        if loops.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit {
                what: "number of wedge summands",
                actual: loops.len(),
                bound: MAX_VERTICES,
            });
        }
        let loop_forms = loops.iter().map(normalize).collect::<Result<Vec<_>>>()?;
        Ok(FibreInput { loops, loop_forms })
    }

    /// `n` copies of `ΩCP^∞ = S^1`.
    pub fn circles(n: usize) -> Result<Self> {
        Self::new(vec![SpaceExpr::Sphere(1); n])
    }

    /// Parses each loop space from the expression syntax.
    pub fn parse(loops: &[&str]) -> Result<Self> {
        Self::new(loops.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?)
    }

    pub fn n(&self) -> usize {
        self.loops.len()
    }

    pub fn loops(&self) -> &[SpaceExpr] {
        &self.loops
    }

    /// `Σ ΩX_{i_1} ∧ .. ∧ ΩX_{i_k}` for the given subset.
    pub fn summand(&self, subset: VertexSet) -> SpaceExpr {
        let factors: Vec<SpaceExpr> = subset.iter().map(|i| self.loops[i - 1].clone()).collect();
        SpaceExpr::susp(if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            SpaceExpr::Smash(factors)
        })
    }

    fn summand_form(&self, subset: VertexSet) -> WedgeNormalForm {
        let mut it = subset.iter();
        let first = self.loop_forms[it.next().expect("nonempty subset") - 1].clone();
        it.fold(first, |acc, i| acc.smash(&self.loop_forms[i - 1])).suspend(1)
    }

    /// `X_i` as a generator whose declared loop space is the i-th input.
    fn space(&self, i: usize) -> SpaceExpr {
        SpaceExpr::Generator(Generator::with_loop(format!("X{i}"), self.loops[i - 1].clone()))
    }
}

/// How a ledger summand arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    /// Direct subset enumeration.
    ClosedForm,
    /// `F_2 ≃ ΣΩX_1 ∧ ΩX_2`.
    Base,
    /// From `ΩN_{stage-1} * ΩX_stage`.
    Join { stage: usize },
    /// From the `F_{stage-1} ∧ ΩX_stage` half of the half-smash.
    HalfSmash { stage: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRecord {
    pub subset: VertexSet,
    pub multiplicity: BigUint,
    pub origin: Origin,
    pub summand: SpaceExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub normal_form: WedgeNormalForm,
    pub ledger: Vec<LedgerRecord>,
}

impl DecompositionResult {
    /// Total multiplicity recorded for each subset.
    pub fn multiplicity_by_subset(&self) -> BTreeMap<VertexSet, BigUint> {
        let mut out = BTreeMap::new();
        for rec in &self.ledger {
            *out.entry(rec.subset).or_insert_with(BigUint::zero) += &rec.multiplicity;
        }
        out
    }
}

/// Closed form, listing every subset when `n <= LEDGER_ENUMERATION_CAP`.
pub fn fibre_closed_form(input: &FibreInput) -> Result<DecompositionResult> {
    fibre_closed_form_with(input, LEDGER_ENUMERATION_CAP)
}

/// Closed form with an explicit ledger cap; beyond it the ledger is left
/// empty and only multiplicities are computed.
pub fn fibre_closed_form_with(input: &FibreInput, ledger_cap: usize) -> Result<DecompositionResult> {
    let n = input.n();
    let mut ledger = Vec::new();
    if n <= ledger_cap.min(LEDGER_ENUMERATION_CAP) {
        let mut subsets: Vec<VertexSet> = VertexSet::full(n).subsets().filter(|s| s.len() >= 2).collect();
        subsets.sort();
        ledger = subsets
            .into_iter()
            .map(|s| LedgerRecord {
                subset: s,
                multiplicity: BigUint::from(s.len() - 1),
                origin: Origin::ClosedForm,
                summand: input.summand(s),
            })
            .collect();
    }
    Ok(DecompositionResult {
        normal_form: fibre_normal_form(input),
        ledger,
    })
}

/// Normal form of the closed-form wedge without listing subsets.
///
/// With `e_k` the k-th elementary symmetric function of the loop spaces
/// under smash, the fibre is `Σ ⋁_k (k - 1) e_k`. The `e_k` are built by the
/// usual one-variable-at-a-time recurrence, so cost is polynomial in `n`.
pub fn fibre_normal_form(input: &FibreInput) -> WedgeNormalForm {
    let n = input.n();
    // e_0 = S^0 is implicit in the k = 1 step
    let mut elementary = vec![WedgeNormalForm::point(); n + 1];
    for (j, loop_form) in input.loop_forms.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            let extended = if k == 1 {
                loop_form.clone()
            } else {
                elementary[k - 1].smash(loop_form)
            };
            elementary[k] = elementary[k].wedge(&extended);
        }
    }
    let mut out = WedgeNormalForm::point();
    for (k, e_k) in elementary.iter().enumerate().skip(2) {
        out = out.wedge(&e_k.scale(&BigUint::from(k - 1)).suspend(1));
    }
    out
}

/// Rebuilds `F_n` stage by stage from the pushout decomposition.
///
/// Each stage normalizes `(ΩN_{j-1} * ΩX_j) ∨ (F_{j-1} ⋊ ΩX_j)`, with
/// `F_{j-1}` substituted by its normal form, where the `X_i` are generators
/// carrying the input loop spaces as their loop rules. The ledger follows
/// each subset through the same recursion.
pub fn fibre_recursive(input: &FibreInput) -> Result<DecompositionResult> {
    let n = input.n();
    let omega = |i: usize| SpaceExpr::loop_of(input.space(i));

    let base = SpaceExpr::join(omega(1), omega(2));
    let mut form = normalize(&base)?;
    let mut records: BTreeMap<(VertexSet, Origin), BigUint> = BTreeMap::new();
    records.insert((VertexSet::from_iter([1, 2]), Origin::Base), BigUint::one());

    for stage in 3..=n {
        let loop_product = SpaceExpr::loop_of(SpaceExpr::Product((1..stage).map(|i| input.space(i)).collect()));
        let previous = form.to_expr()?;
        let expr = crate::normal::podecomp(loop_product, omega(stage), previous);
        form = normalize(&expr)?;

        let newest = VertexSet::singleton(stage);
        let mut next: BTreeMap<(VertexSet, Origin), BigUint> = BTreeMap::new();
        // join part: one summand per nonempty subset of the earlier indices
        for s in VertexSet::full(stage - 1).subsets().skip(1) {
            *next
                .entry((s.union(newest), Origin::Join { stage }))
                .or_insert_with(BigUint::zero) += 1u32;
        }
        // half-smash part: F_{j-1} carried over, and F_{j-1} ∧ ΩX_j
        for ((s, origin), mult) in &records {
            *next.entry((*s, *origin)).or_insert_with(BigUint::zero) += mult;
            *next
                .entry((s.union(newest), Origin::HalfSmash { stage }))
                .or_insert_with(BigUint::zero) += mult;
        }
        records = next;
    }

    let mut ledger: Vec<LedgerRecord> = records
        .into_iter()
        .map(|((subset, origin), multiplicity)| LedgerRecord {
            subset,
            multiplicity,
            origin,
            summand: input.summand(subset),
        })
        .collect();
    ledger.sort_by_key(|r| (r.subset, r.origin));

    Ok(DecompositionResult {
        normal_form: form,
        ledger,
    })
}

/// Normal form of a ledger, summand by summand.
pub fn ledger_normal_form(input: &FibreInput, ledger: &[LedgerRecord]) -> WedgeNormalForm {
    ledger.iter().fold(WedgeNormalForm::point(), |acc, rec| {
        acc.wedge(&input.summand_form(rec.subset).scale(&rec.multiplicity))
    })
}

/// One row of the sphere count for `n` circles: `(k - 1) C(n, k)` copies of
/// `S^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereCount {
    pub dimension: u32,
    pub multiplicity: BigUint,
}

/// `k -> (k + 1, (k - 1) C(n, k))` for `2 <= k <= n`.
pub fn theorem_counts(n: usize) -> Result<BTreeMap<usize, SphereCount>> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    Ok((2..=n)
        .map(|k| {
            let count = SphereCount {
                dimension: (k + 1) as u32,
                multiplicity: binomial(n, k) * BigUint::from(k - 1),
            };
            (k, count)
        })
        .collect())
}

/// `Σ_{k=2}^{n} (k - 1) C(n, k)`.
pub fn total_summands(n: usize) -> Result<BigUint> {
    Ok(theorem_counts(n)?.into_values().map(|c| c.multiplicity).sum())
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// The wedge predicted for `n` circles, as a normal form.
pub fn theorem_normal_form(n: usize) -> Result<WedgeNormalForm> {
    WedgeNormalForm::from_monomials(
        theorem_counts(n)?
            .into_values()
            .map(|c| (crate::normal::Monomial::sphere(c.dimension), c.multiplicity)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::Monomial;

    fn spheres(pairs: &[(u32, u64)]) -> WedgeNormalForm {
        WedgeNormalForm::from_monomials(pairs.iter().map(|&(d, c)| (Monomial::sphere(d), BigUint::from(c)))).unwrap()
    }

    #[test]
    fn closed_form_small_cases() {
        let two = fibre_closed_form(&FibreInput::circles(2).unwrap()).unwrap();
        assert_eq!(two.normal_form, spheres(&[(3, 1)]));
        assert_eq!(two.ledger.len(), 1);

        let three = fibre_closed_form(&FibreInput::circles(3).unwrap()).unwrap();
        assert_eq!(three.normal_form, spheres(&[(3, 3), (4, 2)]));
        assert_eq!(three.ledger.len(), 4);

        let mixed = fibre_closed_form(&FibreInput::parse(&["S^1", "S^1", "S^2"]).unwrap()).unwrap();
        assert_eq!(mixed.normal_form, spheres(&[(3, 1), (4, 2), (5, 2)]));
    }

    #[test]
    fn recursive_small_cases() {
        let two = fibre_recursive(&FibreInput::circles(2).unwrap()).unwrap();
        assert_eq!(two.normal_form, spheres(&[(3, 1)]));
        assert_eq!(two.ledger[0].origin, Origin::Base);

        let three = fibre_recursive(&FibreInput::circles(3).unwrap()).unwrap();
        assert_eq!(three.normal_form, spheres(&[(3, 3), (4, 2)]));
    }

    #[test]
    fn recursion_collects_like_terms() {
        let input = FibreInput::circles(6).unwrap();
        let rec = fibre_recursive(&input).unwrap();
        for (subset, mult) in rec.multiplicity_by_subset() {
            assert_eq!(mult, BigUint::from(subset.len() - 1), "{subset}");
        }
        assert_eq!(ledger_normal_form(&input, &rec.ledger), rec.normal_form);
    }

    #[test]
    fn generators_without_sphere_loops() {
        let input = FibreInput::parse(&["A", "B", "S^1"]).unwrap();
        let closed = fibre_closed_form(&input).unwrap();
        let rec = fibre_recursive(&input).unwrap();
        assert_eq!(closed.normal_form, rec.normal_form);
        assert!(!closed.normal_form.is_sphere_wedge());
        assert_eq!(ledger_normal_form(&input, &closed.ledger), closed.normal_form);
    }

    #[test]
    fn input_validation() {
        assert!(FibreInput::circles(1).is_err());
        assert!(FibreInput::parse(&["S^1", "S^0"]).is_err());
        assert!(FibreInput::parse(&["S^1", "Omega S^2"]).is_err());
        assert!(matches!(FibreInput::parse(&["S^1", "(("]), Err(Error::Parse { .. })));
    }

    #[test]
    fn ledger_cap() {
        let input = FibreInput::circles(8).unwrap();
        let capped = fibre_closed_form_with(&input, 4).unwrap();
        assert!(capped.ledger.is_empty());
        assert_eq!(capped.normal_form, fibre_closed_form(&input).unwrap().normal_form);
    }

    #[test]
    fn theorem_count_examples() {
        let c = theorem_counts(2).unwrap();
        assert_eq!(
            c[&2],
            SphereCount {
                dimension: 3,
                multiplicity: BigUint::from(1u32)
            }
        );
        let c = theorem_counts(3).unwrap();
        assert_eq!(c[&3].multiplicity, BigUint::from(2u32));
        assert_eq!(c[&2].multiplicity, BigUint::from(3u32));
        let c = theorem_counts(6).unwrap();
        assert_eq!(
            c[&4],
            SphereCount {
                dimension: 5,
                multiplicity: BigUint::from(45u32)
            }
        );
        assert!(theorem_counts(1).is_err());
    }

    #[test]
    fn total_summand_examples() {
        assert_eq!(total_summands(2).unwrap(), BigUint::from(1u32));
        assert_eq!(total_summands(3).unwrap(), BigUint::from(5u32));
        assert_eq!(total_summands(10).unwrap(), BigUint::from(4097u32));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(64, 32), BigUint::from(1_832_624_140_942_590_534u64));
    }
}
