//! Exact integral (co)homology of simplicial complexes.
//!
//! Chain complexes are augmented: the empty face spans degree `-1`, so
//! `H̃_{-1}({∅}) = ℤ` falls out of the linear algebra with no special case.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::simplicial::{SimplicialComplex, VertexSet};

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        IntegerMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] -= q * row[source], from column `from` onward
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt, from: usize) {
        for c in from..self.cols {
            let s = &self.entries[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = q * s;
            self.entries[target * self.cols + c] -= delta;
        }
    }

    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt, from: usize) {
        for r in from..self.rows {
            let s = &self.entries[r * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let delta = q * s;
            self.entries[r * self.cols + target] -= delta;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigUint>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigUint> {
        self.invariants.iter().filter(|d| !d.is_one())
    }
}

/// Invariant factors of `matrix`, by unimodular row and column operations
/// with a minimal-absolute-value pivot at each stage.
pub fn smith_normal_form(matrix: &IntegerMatrix) -> SmithForm {
    let mut a = matrix.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut invariants = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(&a, t, t) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);

        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(a.get(t, t));
                a.row_axpy(r, t, &q, t);
                if !a.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(a.get(t, t));
                a.col_axpy(c, t, &q, t);
                if !a.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let (pr, pc) = min_abs_in_cross(&a, t);
                a.swap_rows(t, pr);
                a.swap_cols(t, pc);
                continue;
            }
            // pivot must divide the remaining block
            let pivot = a.get(t, t).clone();
            let bad_row = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match bad_row {
                Some(r) => {
                    let one = BigInt::from(-1);
                    a.row_axpy(t, r, &one, t);
                }
                None => break,
            }
        }
        invariants.push(a.get(t, t).abs().to_biguint().expect("abs is nonnegative"));
    }

    SmithForm { invariants }
}

fn min_abs_entry(a: &IntegerMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &BigInt)> = None;
    for r in r0..a.rows {
        for c in c0..a.cols {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, _, b)| v.abs() < b.abs()) {
                if v.abs().is_one() {
                    return Some((r, c));
                }
                best = Some((r, c, v));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

fn min_abs_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a.get(t, t).abs();
    for r in t + 1..a.rows {
        let v = a.get(r, t);
        if !v.is_zero() && v.abs() < best_abs {
            best_abs = v.abs();
            best = (r, t);
        }
    }
    for c in t + 1..a.cols {
        let v = a.get(t, c);
        if !v.is_zero() && v.abs() < best_abs {
            best_abs = v.abs();
            best = (t, c);
        }
    }
    best
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/t_1 ⊕ ... ⊕ ℤ/t_k` with
/// `t_i >= 2` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a group from arbitrary cyclic orders, renormalizing to an
    /// invariant-factor chain. Orders of 1 are dropped.
    pub fn new<I: IntoIterator<Item = BigUint>>(free_rank: usize, cyclic_orders: I) -> Self {
        AbelianGroup {
            free_rank,
            torsion: normalize_torsion(cyclic_orders.into_iter().collect()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        AbelianGroup::new(self.free_rank + other.free_rank, orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

fn normalize_torsion(orders: Vec<BigUint>) -> Vec<BigUint> {
    assert!(orders.iter().all(|t| !t.is_zero()), "torsion orders must be positive");
    let mut sorted: Vec<BigUint> = orders.iter().filter(|t| !t.is_one()).cloned().collect();
    sorted.sort();
    if is_divisibility_chain(&sorted) {
        return sorted;
    }
    let diag: Vec<BigInt> = orders.iter().map(|t| BigInt::from(t.clone())).collect();
    smith_normal_form(&IntegerMatrix::diagonal(&diag))
        .invariants
        .into_iter()
        .filter(|d| !d.is_one())
        .collect()
}

fn is_divisibility_chain(v: &[BigUint]) -> bool {
    v.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

/// Groups indexed by degree `-1, 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGroups {
    groups: Vec<AbelianGroup>,
}

impl ReducedGroups {
    /// Group in degree `d`; trivial outside the computed range.
    pub fn degree(&self, d: isize) -> AbelianGroup {
        if d < -1 {
            return AbelianGroup::trivial();
        }
        self.groups.get((d + 1) as usize).cloned().unwrap_or_default()
    }

    /// `(degree, group)` pairs from `-1` up to the top dimension.
    pub fn iter(&self) -> impl Iterator<Item = (isize, &AbelianGroup)> {
        self.groups.iter().enumerate().map(|(i, g)| (i as isize - 1, g))
    }

    pub fn top_degree(&self) -> isize {
        self.groups.len() as isize - 2
    }

    /// Free ranks from degree `-1` upward.
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.free_rank).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(AbelianGroup::is_trivial)
    }
}

/// The simplicial boundary `C_d -> C_{d-1}` over the lexicographic face
/// bases. `d = 0` gives the augmentation row to the empty face.
pub fn boundary_matrix(k: &SimplicialComplex, d: isize) -> IntegerMatrix {
    let targets = k.faces_of_dim(d - 1);
    let sources = k.faces_of_dim(d);
    boundary_between(&targets, &sources)
}

fn boundary_between(targets: &[VertexSet], sources: &[VertexSet]) -> IntegerMatrix {
    let index: HashMap<VertexSet, usize> = targets.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut m = IntegerMatrix::zeros(targets.len(), sources.len());
    for (c, face) in sources.iter().enumerate() {
        for (i, v) in face.iter().enumerate() {
            let mut sub = *face;
            sub.remove(v);
            let r = index[&sub];
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(r, c, BigInt::from(sign));
        }
    }
    m
}

fn chain_data(k: &SimplicialComplex) -> (Vec<usize>, Vec<IntegerMatrix>) {
    let top = k.dim();
    let bases: Vec<Vec<VertexSet>> = (-1..=top).map(|d| k.faces_of_dim(d)).collect();
    let ranks = bases.iter().map(Vec::len).collect();
    // boundaries[i] is ∂ out of degree i - 1 + 1 = i, i.e. C_i -> C_{i-1}
    let boundaries = (1..bases.len())
        .map(|i| boundary_between(&bases[i - 1], &bases[i]))
        .collect();
    (ranks, boundaries)
}

/// Reduced integral homology, degrees `-1 ..= dim K`.
pub fn reduced_homology(k: &SimplicialComplex) -> ReducedGroups {
    let (ranks, boundaries) = chain_data(k);
    let snf: Vec<SmithForm> = boundaries.iter().map(smith_normal_form).collect();
    // snf[i] is ∂_i : C_i -> C_{i-1}, i = 0 ..= dim
    let groups = (0..ranks.len())
        .map(|slot| {
            // slot is degree + 1
            let out_rank = if slot == 0 { 0 } else { snf[slot - 1].rank() };
            let (in_rank, torsion) = match snf.get(slot) {
                Some(s) => (s.rank(), s.torsion().cloned().collect::<Vec<_>>()),
                None => (0, Vec::new()),
            };
            AbelianGroup::new(ranks[slot] - out_rank - in_rank, torsion)
        })
        .collect();
    ReducedGroups { groups }
}

/// Reduced integral cohomology, degrees `-1 ..= dim K`, from the transposed
/// (coboundary) matrices.
pub fn reduced_cohomology(k: &SimplicialComplex) -> ReducedGroups {
    let (ranks, boundaries) = chain_data(k);
    // cob[i] is δ : C^{i-1} -> C^i
    let snf: Vec<SmithForm> = boundaries.iter().map(|b| smith_normal_form(&b.transpose())).collect();
    let groups = (0..ranks.len())
        .map(|slot| {
            let out_rank = snf.get(slot).map_or(0, SmithForm::rank);
            let (in_rank, torsion) = if slot == 0 {
                (0, Vec::new())
            } else {
                let s = &snf[slot - 1];
                (s.rank(), s.torsion().cloned().collect())
            };
            AbelianGroup::new(ranks[slot] - out_rank - in_rank, torsion)
        })
        .collect();
    ReducedGroups { groups }
}

/// Torsion coefficient as a machine integer, if it fits.
pub fn torsion_to_u64(t: &BigUint) -> Option<u64> {
    t.to_u64()
}
