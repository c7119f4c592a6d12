use std::collections::BTreeMap;

use mak_core::fibre::{binomial, ledger_normal_form};
use mak_core::{
    betti_vector, fibre_closed_form, fibre_closed_form_with, fibre_normal_form, fibre_recursive, theorem_counts,
    theorem_normal_form, total_summands, zk_cohomology, BigUint, FibreInput, SimplicialComplex, SpaceExpr, VertexSet,
};
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sphere counts of `F_n` for loop spaces `S^{d_i}`, straight from the subset
/// sum: each subset `T` with `|T| >= 2` gives `|T| - 1` copies of
/// `S^{1 + Σ_T d_i}`.
fn subset_oracle(dims: &[u32]) -> BTreeMap<u32, BigUint> {
    let n = dims.len();
    let mut out = BTreeMap::new();
    for mask in 1u64..(1 << n) {
        let k = mask.count_ones();
        if k < 2 {
            continue;
        }
        let dim = 1 + (0..n).filter(|i| mask >> i & 1 == 1).map(|i| dims[i]).sum::<u32>();
        *out.entry(dim).or_insert_with(BigUint::zero) += BigUint::from(k - 1);
    }
    out
}

fn sphere_input(dims: &[u32]) -> FibreInput {
    FibreInput::new(dims.iter().map(|&d| SpaceExpr::Sphere(d)).collect()).unwrap()
}

#[test]
fn recursion_matches_closed_form_for_random_sphere_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..25 {
        let n = rng.gen_range(2..=8);
        let dims: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let input = sphere_input(&dims);
        let closed = fibre_closed_form(&input).unwrap();
        let recursive = fibre_recursive(&input).unwrap();
        assert_eq!(recursive.normal_form, closed.normal_form, "{dims:?}");
        assert_eq!(closed.normal_form.spheres(), &subset_oracle(&dims));
        assert_eq!(fibre_normal_form(&input), closed.normal_form);
        assert_eq!(ledger_normal_form(&input, &recursive.ledger), closed.normal_form);
        assert_eq!(recursive.multiplicity_by_subset(), closed.multiplicity_by_subset());
    }
}

#[test]
fn recursive_ledger_has_k_minus_one_per_subset() {
    let input = FibreInput::circles(7).unwrap();
    let rec = fibre_recursive(&input).unwrap();
    let by_subset = rec.multiplicity_by_subset();
    assert_eq!(by_subset.len(), (1 << 7) - 1 - 7);
    for (s, mult) in by_subset {
        assert_eq!(mult, BigUint::from(s.len() - 1), "{s}");
    }
}

#[test]
fn loop_permutation_is_a_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let n = rng.gen_range(2..=6);
        let mut dims: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let before = fibre_recursive(&sphere_input(&dims)).unwrap().normal_form;
        dims.shuffle(&mut rng);
        let after = fibre_recursive(&sphere_input(&dims)).unwrap().normal_form;
        assert_eq!(before, after);
    }
}

#[test]
fn generator_loops_keep_symbolic_summands() {
    let a = FibreInput::parse(&["A", "B", "S^1"]).unwrap();
    let b = FibreInput::parse(&["S^1", "B", "A"]).unwrap();
    let fa = fibre_recursive(&a).unwrap().normal_form;
    assert_eq!(fa, fibre_recursive(&b).unwrap().normal_form);
    assert_eq!(fa, fibre_closed_form(&a).unwrap().normal_form);
    assert!(!fa.is_sphere_wedge());
    assert_eq!(fa.summand_count(), BigUint::from(5u32));
}

#[test]
fn count_identity_up_to_64() {
    for n in 2..=64usize {
        let total = total_summands(n).unwrap();
        let expected = BigUint::from(n - 2) * (BigUint::one() << (n - 1)) + 1u32;
        assert_eq!(total, expected, "n = {n}");
        let by_binomials: BigUint = (2..=n).map(|k| binomial(n, k) * BigUint::from(k - 1)).sum();
        assert_eq!(total, by_binomials);
    }
}

#[test]
fn dynamic_programme_matches_theorem_up_to_64() {
    for n in [2usize, 3, 10, 33, 64] {
        let input = FibreInput::circles(n).unwrap();
        assert_eq!(fibre_normal_form(&input), theorem_normal_form(n).unwrap());
        let cf = fibre_closed_form_with(&input, 0).unwrap();
        assert!(cf.ledger.is_empty());
        assert_eq!(cf.normal_form, theorem_normal_form(n).unwrap());
    }
}

#[test]
fn fibre_is_two_connected() {
    for n in 2..=12 {
        let w = fibre_normal_form(&FibreInput::circles(n).unwrap());
        assert_eq!(*w.spheres().keys().next().unwrap(), 3);
        assert_eq!(w.multiplicity(3), binomial(n, 2));
        assert_eq!(*w.spheres().keys().last().unwrap() as usize, n + 1);
    }
}

#[test]
fn oracle_agrees_with_theorem() {
    for n in 2..=10 {
        let z = zk_cohomology(&SimplicialComplex::disjoint_points(n).unwrap()).unwrap();
        assert!(z.is_torsion_free());
        let betti = betti_vector(&z);
        let counts = theorem_counts(n).unwrap();
        for (l, b) in betti.iter().enumerate() {
            let expected = match l {
                0 => 1,
                l if l >= 3 => counts.get(&(l - 1)).map_or(0, |c| c.multiplicity.to_u64().unwrap()),
                _ => 0,
            };
            assert_eq!(*b, expected, "n = {n}, degree {l}");
        }
    }
}

#[test]
fn full_subcomplexes_of_points() {
    let k = SimplicialComplex::disjoint_points(6).unwrap();
    for sigma in VertexSet::full(6).subsets() {
        let sub = k.full_subcomplex(sigma).unwrap();
        assert_eq!(sub.ground(), sigma);
        assert_eq!(sub.num_faces(), 1 + sigma.len());
        assert_eq!(sub.dim(), if sigma.is_empty() { -1 } else { 0 });
    }
}

#[test]
fn full_subcomplex_is_idempotent_and_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let m = rng.gen_range(1..=8);
        let facets: Vec<VertexSet> = (0..rng.gen_range(1..5))
            .map(|_| VertexSet::from_bits(rng.gen_range(1..(1u64 << m))))
            .collect();
        let k = SimplicialComplex::from_facets(m, &facets).unwrap();
        let outer = VertexSet::from_bits(rng.gen_range(0..(1u64 << m)));
        let inner = VertexSet::from_bits(outer.bits() & rng.gen::<u64>());
        let ko = k.full_subcomplex(outer).unwrap();
        assert_eq!(ko.full_subcomplex(outer).unwrap(), ko);
        assert_eq!(ko.full_subcomplex(inner).unwrap(), k.full_subcomplex(inner).unwrap());
        for f in ko.faces() {
            assert!(k.contains(f) && f.is_subset(outer));
            for g in f.subsets() {
                assert!(ko.contains(g));
            }
        }
    }
}

#[test]
fn recursion_matches_theorem_for_circles() {
    for n in 2..=10 {
        let input = FibreInput::circles(n).unwrap();
        assert_eq!(
            fibre_recursive(&input).unwrap().normal_form,
            theorem_normal_form(n).unwrap(),
            "n = {n}"
        );
    }
}
