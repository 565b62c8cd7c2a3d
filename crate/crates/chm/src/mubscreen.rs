//! Mutual-unbiasedness testing and the two exclusion criteria that rule an
//! order-six Hadamard matrix out of any set of four mutually unbiased bases
//! containing the identity: more than 22 real entries, or a 3×2 all-real
//! submatrix.

use serde::Serialize;

use crate::matrix::{Census, MatrixError, OrthoCheck, UnitMatrix};
use crate::phase::AmbiguousClassification;

/// Default tolerance for unbiasedness checks, matching the orthogonality
/// tolerance.
pub const UNBIASED_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScreenError {
    #[error("bases have different dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("screening requires a verified order-six Hadamard matrix (order {order}, verified {verified})")]
    NotAChm { order: usize, verified: bool },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// An orthonormal basis given either by the identity matrix or by a
/// unit-modulus matrix with an implicit `1/√n` normalization. Keeping the
/// scaling implicit avoids non-unimodular entry types.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    Identity(usize),
    /// Columns of the matrix, scaled by `1/√n`. Orthonormality of the
    /// columns (the Hadamard property) is the caller's contract.
    Hadamard(UnitMatrix),
}

impl Basis {
    pub fn identity(n: usize) -> Self {
        Basis::Identity(n)
    }

    pub fn hadamard(m: UnitMatrix) -> Self {
        Basis::Hadamard(m)
    }

    pub fn dimension(&self) -> usize {
        match self {
            Basis::Identity(n) => *n,
            Basis::Hadamard(m) => m.order(),
        }
    }

    /// Column `k` as complex coordinates, normalization included.
    fn column(&self, k: usize) -> Vec<(f64, f64)> {
        match self {
            Basis::Identity(n) => {
                let mut v = vec![(0.0, 0.0); *n];
                v[k] = (1.0, 0.0);
                v
            }
            Basis::Hadamard(m) => {
                let scale = 1.0 / (m.order() as f64).sqrt();
                (0..m.order())
                    .map(|j| {
                        let (re, im) = m.get(j, k).to_complex();
                        (re * scale, im * scale)
                    })
                    .collect()
            }
        }
    }
}

/// True when every inner product between a column of `a` and a column of
/// `b` has modulus within `tol` of `1/√n`.
pub fn is_unbiased(a: &Basis, b: &Basis, tol: f64) -> Result<bool, ScreenError> {
    let n = a.dimension();
    if b.dimension() != n {
        return Err(ScreenError::DimensionMismatch(n, b.dimension()));
    }
    let target = 1.0 / (n as f64).sqrt();
    let a_cols: Vec<_> = (0..n).map(|k| a.column(k)).collect();
    let b_cols: Vec<_> = (0..n).map(|k| b.column(k)).collect();
    for ac in &a_cols {
        for bc in &b_cols {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for ((ar, ai), (br, bi)) in ac.iter().zip(bc) {
                re += ar * br + ai * bi;
                im += ar * bi - ai * br;
            }
            if (re.hypot(im) - target).abs() >= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Row and column indices of an all-real submatrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealSubmatrixWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Searches for `r` rows and `c` columns whose intersection consists of
/// real entries only: for each c-subset of columns, rows real across the
/// subset are counted until `r` are found.
pub fn real_submatrix_exists(
    m: &UnitMatrix,
    r: usize,
    c: usize,
) -> Result<Option<RealSubmatrixWitness>, AmbiguousClassification> {
    let n = m.order();
    if r > n || c > n {
        return Ok(None);
    }
    let mut real_rows = vec![0u64; n];
    for j in 0..n {
        for k in 0..n {
            if m.get(j, k).classify()?.is_real() {
                real_rows[j] |= 1 << k;
            }
        }
    }
    let mut cols: Vec<usize> = (0..c).collect();
    loop {
        let mask: u64 = cols.iter().map(|&k| 1u64 << k).sum();
        let rows: Vec<usize> =
            (0..n).filter(|&j| real_rows[j] & mask == mask).take(r).collect();
        if rows.len() == r {
            return Ok(Some(RealSubmatrixWitness { rows, cols: cols.clone() }));
        }
        // next combination in lexicographic order
        let mut i = c;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if cols[i] != i + n - c {
                break;
            }
        }
        cols[i] += 1;
        for j in i + 1..c {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// Outcome of screening an order-six Hadamard matrix for membership in a
/// set of four mutually unbiased bases. `NotExcluded` only means these two
/// tests fail to exclude it, not that membership is possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// More than 22 real entries.
    ExcludedByRealCount { count: usize },
    /// A 3×2 all-real submatrix.
    ExcludedByRealSubmatrix { rows: [usize; 3], cols: [usize; 2] },
    NotExcluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenVerdict {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub census: Census,
}

impl ScreenVerdict {
    pub fn is_excluded(&self) -> bool {
        !matches!(self.verdict, Verdict::NotExcluded)
    }
}

/// Screens a verified order-six Hadamard matrix: the census bound is
/// checked first, then the 3×2 all-real submatrix criterion.
pub fn screen(m: &UnitMatrix) -> Result<ScreenVerdict, ScreenError> {
    if m.order() != 6 {
        return Err(ScreenError::NotAChm { order: m.order(), verified: false });
    }
    let verified = if m.is_exact() {
        m.is_chm(OrthoCheck::Exact)?
    } else {
        m.is_chm(OrthoCheck::default())?
    };
    if !verified {
        return Err(ScreenError::NotAChm { order: 6, verified: false });
    }
    let census = m.census()?;
    let verdict = if census.real_count > 22 {
        Verdict::ExcludedByRealCount { count: census.real_count }
    } else if let Some(w) =
        real_submatrix_exists(m, 3, 2).map_err(MatrixError::from)?
    {
        Verdict::ExcludedByRealSubmatrix {
            rows: [w.rows[0], w.rows[1], w.rows[2]],
            cols: [w.cols[0], w.cols[1]],
        }
    } else {
        Verdict::NotExcluded
    };
    Ok(ScreenVerdict { verdict, census })
}
