//! Square unit-modulus matrices, Hadamard verification, and the real-entry
//! census.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cyclotomic::turns_sum_is_zero;
use crate::phase::{AmbiguousClassification, Phase};

/// Default tolerance for numeric orthogonality checks.
pub const ORTHO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("entries must form a nonempty square grid")]
    NotSquare,
    #[error("exact verification requires every entry to be a rational turn")]
    ExactModeUnavailable,
    #[error(transparent)]
    Classify(#[from] AmbiguousClassification),
}

/// How row orthogonality is decided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrthoCheck {
    /// Zero test in the cyclotomic field of the common denominator.
    /// Requires all entries to be rational turns.
    Exact,
    /// `|Σ conj(u_jk)·u_lk| < tol` in floating point.
    Numeric { tol: f64 },
}

impl Default for OrthoCheck {
    fn default() -> Self {
        OrthoCheck::Numeric { tol: ORTHO_TOLERANCE }
    }
}

/// An n×n grid of unit-modulus entries; a candidate or verified complex
/// Hadamard matrix. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitMatrix {
    n: usize,
    entries: Vec<Phase>,
}

impl UnitMatrix {
    /// Builds a matrix from rows. Fails unless the grid is square and
    /// nonempty.
    pub fn from_rows(rows: Vec<Vec<Phase>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Ok(UnitMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Phase) -> Self {
        assert!(n > 0);
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                entries.push(f(j, k));
            }
        }
        UnitMatrix { n, entries }
    }

    /// The Fourier matrix of order n: entry `(j, k) = e^{2πi·jk/n}`,
    /// 0-based indices. A Hadamard matrix for every n.
    pub fn fourier(n: usize) -> Self {
        assert!(n > 0, "order must be positive");
        UnitMatrix::from_fn(n, |j, k| {
            Phase::turn((j * k % n) as i64, n as i64)
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Phase {
        &self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[Phase] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Phase]> {
        self.entries.chunks(self.n)
    }

    /// True when every entry is a rational turn.
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|p| p.is_exact())
    }

    pub fn transpose(&self) -> UnitMatrix {
        UnitMatrix::from_fn(self.n, |j, k| *self.get(k, j))
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> UnitMatrix {
        UnitMatrix::from_fn(self.n, |j, k| self.get(j, k).conj())
    }

    /// Every entry multiplied by a global phase.
    pub fn scaled(&self, factor: Phase) -> UnitMatrix {
        UnitMatrix::from_fn(self.n, |j, k| self.get(j, k).mul(&factor))
    }

    /// Kronecker product; the product of two Hadamard matrices is again one.
    pub fn kron(&self, other: &UnitMatrix) -> UnitMatrix {
        let (m, p) = (self.n, other.n);
        UnitMatrix::from_fn(m * p, |j, k| {
            self.get(j / p, k / p).mul(other.get(j % p, k % p))
        })
    }

    fn rows_orthogonal(&self, a: usize, b: usize, check: OrthoCheck) -> Result<bool, MatrixError> {
        match check {
            OrthoCheck::Exact => {
                let turns: Vec<_> = (0..self.n)
                    .map(|k| {
                        self.get(a, k)
                            .conj()
                            .mul(self.get(b, k))
                            .as_turn()
                            .ok_or(MatrixError::ExactModeUnavailable)
                    })
                    .collect::<Result<_, _>>()?;
                Ok(turns_sum_is_zero(&turns))
            }
            OrthoCheck::Numeric { tol } => {
                let (mut re, mut im) = (0.0f64, 0.0f64);
                for k in 0..self.n {
                    let (r, i) = self.get(a, k).conj().mul(self.get(b, k)).to_complex();
                    re += r;
                    im += i;
                }
                Ok(re.hypot(im) < tol)
            }
        }
    }

    /// Tests the Hadamard property: all pairs of distinct rows have zero
    /// Hermitian inner product. Column orthogonality follows mathematically
    /// and is asserted as a self-check in debug builds.
    pub fn is_chm(&self, check: OrthoCheck) -> Result<bool, MatrixError> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.rows_orthogonal(a, b, check)? {
                    return Ok(false);
                }
            }
        }
        #[cfg(debug_assertions)]
        {
            let t = self.transpose();
            for a in 0..self.n {
                for b in a + 1..self.n {
                    debug_assert!(
                        t.rows_orthogonal(a, b, check)?,
                        "row orthogonality must imply column orthogonality"
                    );
                }
            }
        }
        Ok(true)
    }

    pub fn is_chm_exact(&self) -> Result<bool, MatrixError> {
        self.is_chm(OrthoCheck::Exact)
    }

    pub fn is_chm_numeric(&self, tol: f64) -> Result<bool, MatrixError> {
        self.is_chm(OrthoCheck::Numeric { tol })
    }

    /// Counts real entries and the per-row/per-column non-real counts.
    pub fn census(&self) -> Result<Census, MatrixError> {
        let n = self.n;
        let mut per_row = vec![0usize; n];
        let mut per_col = vec![0usize; n];
        let mut real_count = 0usize;
        let mut approximate = false;
        for j in 0..n {
            for k in 0..n {
                let p = self.get(j, k);
                approximate |= !p.is_exact();
                if p.classify()?.is_real() {
                    real_count += 1;
                } else {
                    per_row[j] += 1;
                    per_col[k] += 1;
                }
            }
        }
        let mut imaginary_array = per_row.clone();
        imaginary_array.sort_unstable();
        Ok(Census {
            order: n,
            real_count,
            imaginary_array,
            per_row_counts: per_row,
            per_column_counts: per_col,
            approximate,
        })
    }
}

impl Serialize for UnitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            let tokens: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            seq.serialize_element(&tokens)?;
        }
        seq.end()
    }
}

/// Real-entry census of a matrix.
///
/// `imaginary_array` lists the per-row counts of non-real entries sorted
/// ascending; `real_count + sum(imaginary_array)` always equals n².
/// `approximate` marks censuses over matrices with radians-valued entries,
/// whose classification is tolerance-based rather than exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub order: usize,
    pub real_count: usize,
    pub imaginary_array: Vec<usize>,
    pub per_row_counts: Vec<usize>,
    pub per_column_counts: Vec<usize>,
    pub approximate: bool,
}

/// A rectangular block of unit-modulus rows (fewer rows than columns), used
/// for partial row systems of order-six matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct RowBlock {
    cols: usize,
    rows: Vec<Vec<Phase>>,
}

impl RowBlock {
    pub fn from_rows(rows: Vec<Vec<Phase>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::NotSquare);
        }
        Ok(RowBlock { cols, rows })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, r: usize) -> &[Phase] {
        &self.rows[r]
    }

    pub fn conjugate(&self) -> RowBlock {
        RowBlock {
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.iter().map(Phase::conj).collect()).collect(),
        }
    }

    /// Exact pairwise row orthogonality; requires rational-turn entries.
    pub fn rows_orthogonal_exact(&self) -> Result<bool, MatrixError> {
        for a in 0..self.rows.len() {
            for b in a + 1..self.rows.len() {
                let turns: Vec<_> = (0..self.cols)
                    .map(|k| {
                        self.rows[a][k]
                            .conj()
                            .mul(&self.rows[b][k])
                            .as_turn()
                            .ok_or(MatrixError::ExactModeUnavailable)
                    })
                    .collect::<Result<_, _>>()?;
                if !turns_sum_is_zero(&turns) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Count of non-real entries in each row.
    pub fn non_real_counts(&self) -> Result<Vec<usize>, MatrixError> {
        self.rows
            .iter()
            .map(|row| {
                let mut c = 0;
                for p in row {
                    if p.classify()?.is_non_real() {
                        c += 1;
                    }
                }
                Ok(c)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64, d: i64) -> Phase {
        Phase::turn(n, d)
    }

    #[test]
    fn fourier_small_orders() {
        let f2 = UnitMatrix::fourier(2);
        assert_eq!(f2.row(0), &[t(0, 1), t(0, 1)]);
        assert_eq!(f2.row(1), &[t(0, 1), t(1, 2)]);
        let f3 = UnitMatrix::fourier(3);
        assert_eq!(f3.row(1), &[Phase::one(), Phase::omega(), Phase::omega2()]);
        assert_eq!(f3.row(2), &[Phase::one(), Phase::omega2(), Phase::omega()]);
        assert_eq!(*UnitMatrix::fourier(6).get(1, 1), t(1, 6));
    }

    #[test]
    fn fourier_is_hadamard_exact_and_numeric() {
        for n in 1..=12 {
            let f = UnitMatrix::fourier(n);
            assert!(f.is_chm_exact().unwrap(), "order {n}");
            assert!(f.is_chm_numeric(1e-9).unwrap(), "order {n}");
        }
    }

    #[test]
    fn broken_orthogonality_detected() {
        let mut rows: Vec<Vec<Phase>> =
            UnitMatrix::fourier(6).rows().map(|r| r.to_vec()).collect();
        rows[1][1] = t(1, 8);
        let broken = UnitMatrix::from_rows(rows).unwrap();
        assert!(!broken.is_chm_exact().unwrap());
        assert!(!broken.is_chm_numeric(1e-9).unwrap());
    }

    #[test]
    fn exact_mode_requires_rational_entries() {
        let m = UnitMatrix::from_rows(vec![
            vec![Phase::radians(1.0), Phase::one()],
            vec![Phase::one(), Phase::one()],
        ])
        .unwrap();
        assert_eq!(m.is_chm_exact(), Err(MatrixError::ExactModeUnavailable));
    }

    // Independent oracle: count Fourier entries with jk ≡ 0 or n/2 (mod n)
    // straight from the exponent formula, bypassing Phase classification.
    fn fourier_real_count_by_exponents(n: usize) -> usize {
        let mut count = 0;
        for j in 0..n {
            for k in 0..n {
                let e = j * k % n;
                if e == 0 || (n % 2 == 0 && e == n / 2) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn census_of_fourier_matrices() {
        let c2 = UnitMatrix::fourier(2).census().unwrap();
        assert_eq!(c2.real_count, 4);
        assert_eq!(c2.imaginary_array, vec![0, 0]);

        let c6 = UnitMatrix::fourier(6).census().unwrap();
        assert_eq!(fourier_real_count_by_exponents(6), 20);
        assert_eq!(c6.real_count, 20);
        assert_eq!(c6.imaginary_array, vec![0, 0, 4, 4, 4, 4]);
        assert!(!c6.approximate);
        assert_eq!(c6.real_count + c6.imaginary_array.iter().sum::<usize>(), 36);
    }

    #[test]
    fn census_of_odd_prime_fouriers() {
        // 2n-1 real entries for prime orders: the first row and column only.
        for n in [3usize, 5, 7, 11] {
            let c = UnitMatrix::fourier(n).census().unwrap();
            assert_eq!(c.real_count, 2 * n - 1, "order {n}");
            assert_eq!(c.real_count, fourier_real_count_by_exponents(n));
        }
    }

    #[test]
    fn census_of_composite_odd_fourier() {
        // Order 9 picks up extra real entries at j,k multiples of 3, so the
        // 2n-1 prime-order count does not apply.
        let c = UnitMatrix::fourier(9).census().unwrap();
        assert_eq!(c.real_count, fourier_real_count_by_exponents(9));
        assert_eq!(c.real_count, 21);
    }

    #[test]
    fn transpose_and_conjugate_preserve_structure() {
        let f6 = UnitMatrix::fourier(6);
        assert_eq!(f6.transpose(), f6);
        assert!(f6.conjugate().is_chm_exact().unwrap());
        assert_eq!(f6.conjugate().census().unwrap().real_count, 20);
        let c = f6.census().unwrap();
        assert_eq!(f6.transpose().census().unwrap().real_count, c.real_count);
    }

    #[test]
    fn kron_of_hadamards_is_hadamard() {
        let m = UnitMatrix::fourier(2).kron(&UnitMatrix::fourier(3));
        assert_eq!(m.order(), 6);
        assert!(m.is_chm_exact().unwrap());
        assert_eq!(m.census().unwrap().real_count, 20);
    }

    #[test]
    fn scaled_census() {
        let f3 = UnitMatrix::fourier(3);
        let c = f3.scaled(Phase::omega()).census().unwrap();
        // every entry shifts by one third of a turn; only w2 entries land on 1
        assert_eq!(c.real_count, 2);
    }

    #[test]
    fn radians_census_is_flagged_approximate() {
        let m = UnitMatrix::from_rows(vec![
            vec![Phase::radians(1.0), Phase::radians(1.0)],
            vec![Phase::radians(1.0), Phase::radians(1.0 + std::f64::consts::PI)],
        ])
        .unwrap();
        assert!(m.is_chm_numeric(1e-9).unwrap());
        let c = m.census().unwrap();
        assert!(c.approximate);
        assert_eq!(c.real_count, 0);
    }
}
