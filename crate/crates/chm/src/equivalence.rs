//! Monomial actions on unit matrices, dephasing, and brute-force
//! equivalence testing at small orders.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::UnitMatrix;
use crate::phase::Phase;

/// Angle tolerance for comparing radians-valued entries during equivalence
/// testing. Transforms only add or subtract representable angles, so exact
/// matches stay within this bound.
pub const EQUIV_ANGLE_TOLERANCE: f64 = 1e-12;

/// Largest order accepted by [`are_equivalent`]; the search is factorial in
/// the order.
pub const MAX_EQUIVALENCE_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("transform order {transform} does not match matrix order {matrix}")]
    DimensionMismatch { transform: usize, matrix: usize },
    #[error("equivalence search supports orders up to {MAX_EQUIVALENCE_ORDER}, got {0}")]
    OrderTooLarge(usize),
    #[error("row/column maps must be permutations of 0..n")]
    BadPermutation,
}

/// A pair of monomial unitaries acting as `M ↦ P·D_r·M·D_c·Q`:
/// `row_perm` is the permutation part of `P` (source row `i` lands on row
/// `row_perm[i]`), `row_phases` the diagonal `D_r` indexed by source rows,
/// `col_phases` the diagonal `D_c` indexed by source columns, and `col_perm`
/// the permutation part of `Q` (source column `j` lands on `col_perm[j]`).
///
/// Entrywise, for a 2×2 example with `row_perm = [1, 0]`,
/// `row_phases = [i, 1]`, `col_phases = [1, -1]`, identity `col_perm`:
/// `result[1][0] = i·M[0][0]`, `result[1][1] = -i·M[0][1]`,
/// `result[0][0] = M[1][0]`, `result[0][1] = -M[1][1]`; in general
/// `result[row_perm[i]][col_perm[j]] = row_phases[i]·M[i][j]·col_phases[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialTransform {
    pub row_perm: Vec<usize>,
    pub row_phases: Vec<Phase>,
    pub col_phases: Vec<Phase>,
    pub col_perm: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

impl MonomialTransform {
    pub fn new(
        row_perm: Vec<usize>,
        row_phases: Vec<Phase>,
        col_phases: Vec<Phase>,
        col_perm: Vec<usize>,
    ) -> Result<Self, EquivalenceError> {
        let n = row_perm.len();
        if row_phases.len() != n || col_phases.len() != n || col_perm.len() != n {
            return Err(EquivalenceError::DimensionMismatch { transform: n, matrix: col_perm.len() });
        }
        if !is_permutation(&row_perm) || !is_permutation(&col_perm) {
            return Err(EquivalenceError::BadPermutation);
        }
        Ok(MonomialTransform { row_perm, row_phases, col_phases, col_perm })
    }

    pub fn identity(n: usize) -> Self {
        MonomialTransform {
            row_perm: (0..n).collect(),
            row_phases: vec![Phase::one(); n],
            col_phases: vec![Phase::one(); n],
            col_perm: (0..n).collect(),
        }
    }

    /// Identity permutations with the given diagonals.
    pub fn diagonal(row_phases: Vec<Phase>, col_phases: Vec<Phase>) -> Self {
        let n = row_phases.len();
        assert_eq!(n, col_phases.len());
        MonomialTransform { row_perm: (0..n).collect(), row_phases, col_phases, col_perm: (0..n).collect() }
    }

    /// Pure row/column permutations, no phases.
    pub fn permutation(row_perm: Vec<usize>, col_perm: Vec<usize>) -> Result<Self, EquivalenceError> {
        let n = row_perm.len();
        MonomialTransform::new(row_perm, vec![Phase::one(); n], vec![Phase::one(); n], col_perm)
    }

    pub fn order(&self) -> usize {
        self.row_perm.len()
    }

    /// True when both phase diagonals are trivial (a plain equivalence in
    /// the permutation-only sense).
    pub fn is_permutation_only(&self) -> bool {
        let one = Phase::one();
        self.row_phases.iter().chain(&self.col_phases).all(|p| *p == one)
    }

    /// Applies the transform; the result is Hadamard whenever the input is.
    pub fn apply(&self, m: &UnitMatrix) -> Result<UnitMatrix, EquivalenceError> {
        let n = m.order();
        if self.order() != n {
            return Err(EquivalenceError::DimensionMismatch { transform: self.order(), matrix: n });
        }
        let mut rows = vec![vec![Phase::one(); n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[self.row_perm[i]][self.col_perm[j]] =
                    self.row_phases[i].mul(m.get(i, j)).mul(&self.col_phases[j]);
            }
        }
        Ok(UnitMatrix::from_rows(rows).expect("square by construction"))
    }

    /// The transform equal to applying `other` first and then `self`.
    pub fn compose(&self, other: &MonomialTransform) -> Result<MonomialTransform, EquivalenceError> {
        let n = self.order();
        if other.order() != n {
            return Err(EquivalenceError::DimensionMismatch { transform: other.order(), matrix: n });
        }
        let mut row_perm = vec![0; n];
        let mut col_perm = vec![0; n];
        let mut row_phases = vec![Phase::one(); n];
        let mut col_phases = vec![Phase::one(); n];
        for i in 0..n {
            row_perm[i] = self.row_perm[other.row_perm[i]];
            row_phases[i] = other.row_phases[i].mul(&self.row_phases[other.row_perm[i]]);
        }
        for j in 0..n {
            col_perm[j] = self.col_perm[other.col_perm[j]];
            col_phases[j] = other.col_phases[j].mul(&self.col_phases[other.col_perm[j]]);
        }
        Ok(MonomialTransform { row_perm, row_phases, col_phases, col_perm })
    }
}

/// Divides row `j` by its first entry and then column `k` by the resulting
/// first-row entry, producing a matrix whose first row and column are all
/// ones. Returns the dephased matrix together with the witnessing transform;
/// applying the transform to the input reproduces the returned matrix.
///
/// The result always has exactly `2n-1` forced one-entries across its first
/// row and column.
pub fn dephase(m: &UnitMatrix) -> (UnitMatrix, MonomialTransform) {
    let n = m.order();
    let row_phases: Vec<Phase> = (0..n).map(|j| m.get(j, 0).conj()).collect();
    let col_phases: Vec<Phase> =
        (0..n).map(|k| row_phases[0].mul(m.get(0, k)).conj()).collect();
    let transform = MonomialTransform::diagonal(row_phases, col_phases);
    let dephased = transform.apply(m).expect("orders match");
    (dephased, transform)
}

/// Tests whether `m = P·other·Q` for some permutation matrices `P`, `Q`.
///
/// Brute force with pruning: candidate column images must match on real
/// counts, and the backtracking assigns columns before rows. Entry
/// comparison is exact for rational turns and tolerance-based
/// ([`EQUIV_ANGLE_TOLERANCE`]) when radians values are involved.
pub fn are_equivalent(m: &UnitMatrix, other: &UnitMatrix) -> Result<bool, EquivalenceError> {
    let n = m.order();
    if other.order() != n {
        return Ok(false);
    }
    if n > MAX_EQUIVALENCE_ORDER {
        return Err(EquivalenceError::OrderTooLarge(n));
    }

    let real_counts = |mat: &UnitMatrix, by_cols: bool| -> Vec<usize> {
        (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| {
                        let p = if by_cols { mat.get(b, a) } else { mat.get(a, b) };
                        p.classify().map(|c| c.is_real()).unwrap_or(false)
                    })
                    .count()
            })
            .collect()
    };

    // multiset pruning on row and column real counts
    let mut m_rows = real_counts(m, false);
    let mut o_rows = real_counts(other, false);
    m_rows.sort_unstable();
    o_rows.sort_unstable();
    if m_rows != o_rows {
        return Ok(false);
    }
    let m_cols = real_counts(m, true);
    let o_cols = real_counts(other, true);
    let mut m_sorted = m_cols.clone();
    let mut o_sorted = o_cols.clone();
    m_sorted.sort_unstable();
    o_sorted.sort_unstable();
    if m_sorted != o_sorted {
        return Ok(false);
    }

    let phase_eq = |a: &Phase, b: &Phase| -> bool {
        if a.is_exact() && b.is_exact() {
            a == b
        } else {
            a.approx_eq(b, EQUIV_ANGLE_TOLERANCE)
        }
    };

    // col_map[j] = source column of `other` placed at column j of `m`
    fn search(
        m: &UnitMatrix,
        other: &UnitMatrix,
        m_cols: &[usize],
        o_cols: &[usize],
        col_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        phase_eq: &dyn Fn(&Phase, &Phase) -> bool,
    ) -> bool {
        let n = m.order();
        let j = col_map.len();
        if j == n {
            // columns fixed; look for a row bijection matching entrywise
            let mut row_map = vec![usize::MAX; n];
            let mut taken = vec![false; n];
            return assign_rows(m, other, col_map, &mut row_map, &mut taken, 0, phase_eq);
        }
        for cand in 0..n {
            if used[cand] || o_cols[cand] != m_cols[j] {
                continue;
            }
            used[cand] = true;
            col_map.push(cand);
            if search(m, other, m_cols, o_cols, col_map, used, phase_eq) {
                return true;
            }
            col_map.pop();
            used[cand] = false;
        }
        false
    }

    fn assign_rows(
        m: &UnitMatrix,
        other: &UnitMatrix,
        col_map: &[usize],
        row_map: &mut Vec<usize>,
        taken: &mut Vec<bool>,
        i: usize,
        phase_eq: &dyn Fn(&Phase, &Phase) -> bool,
    ) -> bool {
        let n = m.order();
        if i == n {
            return true;
        }
        'cand: for r in 0..n {
            if taken[r] {
                continue;
            }
            for j in 0..n {
                if !phase_eq(m.get(i, j), other.get(r, col_map[j])) {
                    continue 'cand;
                }
            }
            taken[r] = true;
            row_map[i] = r;
            if assign_rows(m, other, col_map, row_map, taken, i + 1, phase_eq) {
                return true;
            }
            taken[r] = false;
        }
        false
    }

    let mut col_map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(search(m, other, &m_cols, &o_cols, &mut col_map, &mut used, &phase_eq))
}

/// The seeded generator backing every randomized corpus in this crate:
/// ChaCha8 with a 64-bit seed, reproducible bit for bit across platforms.
pub fn corpus_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws a uniformly random monomial transform with phases from the
/// `roots`-th roots of unity.
pub fn random_transform(rng: &mut ChaCha8Rng, n: usize, roots: u32) -> MonomialTransform {
    let mut row_perm: Vec<usize> = (0..n).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    row_perm.shuffle(rng);
    col_perm.shuffle(rng);
    let phases = |rng: &mut ChaCha8Rng| -> Vec<Phase> {
        (0..n).map(|_| Phase::turn(rng.random_range(0..roots as i64), roots as i64)).collect()
    };
    let row_phases = phases(rng);
    let col_phases = phases(rng);
    MonomialTransform { row_perm, row_phases, col_phases, col_perm }
}

/// Permutations only, no phase diagonals.
pub fn random_permutation_transform(rng: &mut ChaCha8Rng, n: usize) -> MonomialTransform {
    let mut row_perm: Vec<usize> = (0..n).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    row_perm.shuffle(rng);
    col_perm.shuffle(rng);
    MonomialTransform::permutation(row_perm, col_perm).expect("valid permutations")
}

/// Applies a pseudorandom monomial transform with phases drawn from the
/// `roots`-th roots of unity; deterministic for a fixed seed.
pub fn random_orbit(m: &UnitMatrix, seed: u64, roots: u32) -> UnitMatrix {
    let mut rng = corpus_rng(seed);
    random_transform(&mut rng, m.order(), roots).apply(m).expect("orders match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::OrthoCheck;

    fn f6() -> UnitMatrix {
        UnitMatrix::fourier(6)
    }

    #[test]
    fn identity_apply_is_noop() {
        let m = f6();
        assert_eq!(MonomialTransform::identity(6).apply(&m).unwrap(), m);
    }

    #[test]
    fn worked_two_by_two_composition_order() {
        // row 0 scaled by i, then rows swapped; columns: second negated
        let m = UnitMatrix::fourier(2);
        let t = MonomialTransform::new(
            vec![1, 0],
            vec![Phase::i(), Phase::one()],
            vec![Phase::one(), Phase::minus_one()],
            vec![0, 1],
        )
        .unwrap();
        let r = t.apply(&m).unwrap();
        assert_eq!(*r.get(1, 0), Phase::i());
        assert_eq!(*r.get(1, 1), Phase::minus_i());
        assert_eq!(*r.get(0, 0), Phase::one());
        assert_eq!(*r.get(0, 1), Phase::one()); // -1 · -1
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let t = MonomialTransform::identity(4);
        assert!(matches!(
            t.apply(&f6()),
            Err(EquivalenceError::DimensionMismatch { transform: 4, matrix: 6 })
        ));
    }

    #[test]
    fn dephase_fixed_points_and_idempotence() {
        for n in [2usize, 3, 6] {
            let f = UnitMatrix::fourier(n);
            let (d, t) = dephase(&f);
            assert_eq!(d, f, "fourier is already dephased");
            assert_eq!(t, MonomialTransform::identity(n));
            let (dd, _) = dephase(&d);
            assert_eq!(dd, d);
        }
    }

    #[test]
    fn dephase_derived_example() {
        let m = UnitMatrix::from_rows(vec![
            vec![Phase::i(), Phase::i()],
            vec![Phase::i(), Phase::minus_i()],
        ])
        .unwrap();
        let (d, t) = dephase(&m);
        assert_eq!(d, UnitMatrix::fourier(2));
        assert_eq!(t.apply(&m).unwrap(), d);
    }

    #[test]
    fn dephased_orbit_has_forced_ones() {
        let g = crate::constructions::order6_max_real();
        for seed in 0..50u64 {
            let orbit = random_orbit(&g, seed, 24);
            let (d, _) = dephase(&orbit);
            for k in 0..6 {
                assert_eq!(*d.get(0, k), Phase::one());
                assert_eq!(*d.get(k, 0), Phase::one());
            }
            assert!(d.is_chm_exact().unwrap());
        }
    }

    #[test]
    fn equivalence_accepts_row_swaps() {
        let m = f6();
        let t = MonomialTransform::permutation(vec![0, 1, 3, 2, 4, 5], (0..6).collect()).unwrap();
        let swapped = t.apply(&m).unwrap();
        assert!(are_equivalent(&m, &swapped).unwrap());
        assert!(are_equivalent(&swapped, &m).unwrap());
    }

    #[test]
    fn equivalence_rejects_distinct_censuses() {
        let g = crate::constructions::order6_max_real();
        assert!(!are_equivalent(&f6(), &g).unwrap());
    }

    #[test]
    fn equivalence_order_cap() {
        let f9 = UnitMatrix::fourier(9);
        assert_eq!(are_equivalent(&f9, &f9), Err(EquivalenceError::OrderTooLarge(9)));
    }

    #[test]
    fn orbit_determinism_and_chm_closure() {
        let m = f6();
        let a = random_orbit(&m, 41, 24);
        let b = random_orbit(&m, 41, 24);
        assert_eq!(a, b);
        assert_ne!(a, random_orbit(&m, 42, 24));
        for seed in 0..20 {
            assert!(random_orbit(&m, seed, 24).is_chm(OrthoCheck::Exact).unwrap());
        }
    }

    #[test]
    fn orbit_of_order2_reaches_zero_reals() {
        let f2 = UnitMatrix::fourier(2);
        let hit = (0..200u64).find(|&s| {
            random_orbit(&f2, s, 4).census().unwrap().real_count == 0
        });
        assert!(hit.is_some(), "some 4th-root orbit must have no real entries");
    }

    #[test]
    fn compose_matches_sequential_application() {
        let m = f6();
        let mut rng = corpus_rng(9);
        for _ in 0..300 {
            let t1 = random_transform(&mut rng, 6, 12);
            let t2 = random_transform(&mut rng, 6, 12);
            let composed = t1.compose(&t2).unwrap();
            let direct = t1.apply(&t2.apply(&m).unwrap()).unwrap();
            assert_eq!(composed.apply(&m).unwrap(), direct);
        }
    }

    #[test]
    fn compose_associativity() {
        let m = f6();
        let mut rng = corpus_rng(10);
        for _ in 0..1000 {
            let (a, b, c) = (
                random_transform(&mut rng, 6, 8),
                random_transform(&mut rng, 6, 8),
                random_transform(&mut rng, 6, 8),
            );
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            assert_eq!(left.apply(&m).unwrap(), right.apply(&m).unwrap());
        }
    }

    #[test]
    fn census_invariant_under_permutations() {
        let g = crate::constructions::order6_max_real();
        let base = g.census().unwrap();
        let mut rng = corpus_rng(11);
        for _ in 0..500 {
            let t = random_permutation_transform(&mut rng, 6);
            let c = t.apply(&g).unwrap().census().unwrap();
            assert_eq!(c.real_count, base.real_count);
            assert_eq!(c.imaginary_array, base.imaginary_array);
        }
    }
}
