//! Homology checked against routes that share no code with the Smith normal
//! form: determinantal divisors, mod-p ranks and fraction-free elimination.

use mak_core::homology::IntegerMatrix;
use mak_core::{
    boundary_matrix, reduced_cohomology, reduced_homology, smith_normal_form, AbelianGroup, BigUint, SimplicialComplex,
    VertexSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_facet_lists(
        6,
        &[
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 2, 6],
            vec![2, 3, 5],
            vec![2, 4, 5],
            vec![2, 4, 6],
            vec![3, 4, 6],
            vec![3, 5, 6],
        ],
    )
    .unwrap()
}

fn dense(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion.
fn det(a: &[Vec<BigInt>]) -> BigInt {
    match a.len() {
        0 => BigInt::from(1),
        1 => a[0][0].clone(),
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<BigInt>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &a[0][c] * det(&minor);
                if c % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut c in choose(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// `k × k` minors and `d_k = D_k / D_{k-1}`.
fn invariants_by_minors(a: &[Vec<BigInt>]) -> Vec<BigUint> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in choose(rows, k) {
            for cs in choose(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs().to_biguint().unwrap());
        prev = g;
    }
    out
}

/// Rank over `Z/p` by Gaussian elimination.
fn rank_mod_p(a: &[Vec<BigInt>], p: i64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<i64>> = a
        .iter()
        .map(|row| row.iter().map(|v| v.mod_floor(&pb).try_into().unwrap()).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let f = inv(m[rank][c]);
        for v in m[rank].iter_mut() {
            *v = *v * f % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let k = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v - k * pv).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
fn rank_rational(a: &[Vec<BigInt>]) -> usize {
    let mut m = a.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

#[test]
fn snf_matches_determinantal_divisors_on_fixed_example() {
    let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    // gcd of entries is 2, |det| is 8
    assert_eq!(
        invariants_by_minors(&dense(&m)),
        vec![BigUint::from(2u32), BigUint::from(4u32)]
    );
    assert_eq!(smith_normal_form(&m).invariants, invariants_by_minors(&dense(&m)));
}

#[test]
fn snf_matches_determinantal_divisors_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let rows = rng.gen_range(0..=4);
        let cols = rng.gen_range(0..=4);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&a);
        let m = if rows == 0 { IntegerMatrix::zeros(0, cols) } else { m };
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariants, invariants_by_minors(&dense(&m)), "{m:?}");
        assert!(snf.invariants.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        assert!(snf.rank() <= rows.min(cols));
    }
}

#[test]
fn projective_plane_fixture_is_a_pseudomanifold() {
    let k = rp2();
    assert_eq!(k.faces_of_dim(0).len(), 6);
    assert_eq!(k.faces_of_dim(1).len(), 15);
    assert_eq!(k.faces_of_dim(2).len(), 10);
    for e in k.faces_of_dim(1) {
        let cofaces = k.faces_of_dim(2).into_iter().filter(|t| e.is_subset(*t)).count();
        assert_eq!(cofaces, 2, "edge {e}");
    }
}

#[test]
fn projective_plane_homology() {
    let k = rp2();
    let d1 = dense(&boundary_matrix(&k, 1));
    let d2 = dense(&boundary_matrix(&k, 2));
    assert_eq!((d2.len(), d2[0].len()), (15, 10));
    assert_eq!((d1.len(), d1[0].len()), (6, 15));

    // mod 3 sees no torsion: H_1 and H_2 vanish rationally
    let (r1_3, r2_3) = (rank_mod_p(&d1, 3), rank_mod_p(&d2, 3));
    assert_eq!(15 - r1_3 - r2_3, 0);
    assert_eq!(10 - r2_3, 0);
    // mod 2 picks up one class in degrees 1 and 2, so H_1 = Z/2^a; a = 1 from minors of ∂_2
    let (r1_2, r2_2) = (rank_mod_p(&d1, 2), rank_mod_p(&d2, 2));
    assert_eq!(15 - r1_2 - r2_2, 1);
    assert_eq!(10 - r2_2, 1);

    let h = reduced_homology(&k);
    assert_eq!(h.degree(1), AbelianGroup::new(0, [BigUint::from(2u32)]));
    assert_eq!(h.degree(2), AbelianGroup::trivial());
    assert_eq!(h.degree(0), AbelianGroup::trivial());

    let c = reduced_cohomology(&k);
    assert_eq!(c.degree(2), AbelianGroup::new(0, [BigUint::from(2u32)]));
    assert_eq!(c.degree(1), AbelianGroup::trivial());
}

#[test]
fn universal_coefficients_on_projective_plane() {
    let k = rp2();
    let h = reduced_homology(&k);
    let c = reduced_cohomology(&k);
    for d in -1..=2 {
        assert_eq!(h.degree(d).free_rank, c.degree(d).free_rank);
        assert_eq!(h.degree(d).torsion, c.degree(d + 1).torsion);
    }
}

fn arb_complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(1u64..(1u64 << m), 0..6).prop_map(move |masks| {
            let facets: Vec<VertexSet> = masks.into_iter().map(VertexSet::from_bits).collect();
            SimplicialComplex::from_facets(m, &facets).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_squares_to_zero(k in arb_complex(7)) {
        for d in 0..=k.dim() {
            let prod = boundary_matrix(&k, d).mul(&boundary_matrix(&k, d + 1));
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn ranks_agree_with_rational_elimination(k in arb_complex(6)) {
        let h = reduced_homology(&k);
        for d in -1..=k.dim() {
            let n_d = k.faces_of_dim(d).len();
            let out = rank_rational(&dense(&boundary_matrix(&k, d)));
            let inc = rank_rational(&dense(&boundary_matrix(&k, d + 1)));
            prop_assert_eq!(h.degree(d).free_rank, n_d - out - inc);
        }
    }

    #[test]
    fn euler_relation(k in arb_complex(7)) {
        let h = reduced_homology(&k);
        let betti: i64 = h.iter().map(|(d, g)| if d.rem_euclid(2) == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) }).sum();
        let faces: i64 = k.f_vector().iter().enumerate().map(|(i, c)| {
            // index i is dimension i - 1
            if (i as i64 - 1).rem_euclid(2) == 0 { *c as i64 } else { -(*c as i64) }
        }).sum();
        prop_assert_eq!(betti, faces);
    }

    #[test]
    fn homology_and_cohomology_agree(k in arb_complex(7)) {
        let h = reduced_homology(&k);
        let c = reduced_cohomology(&k);
        for d in -1..=k.dim() {
            prop_assert_eq!(h.degree(d).free_rank, c.degree(d).free_rank);
            prop_assert_eq!(h.degree(d).torsion, c.degree(d + 1).torsion);
        }
    }
}
