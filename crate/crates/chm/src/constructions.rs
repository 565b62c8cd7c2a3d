//! Explicit Hadamard matrices realizing every achievable real-entry count
//! at orders 2, 3, 4 and 6, plus the lookup tables of achievable counts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::equivalence::MonomialTransform;
use crate::matrix::{RowBlock, UnitMatrix};
use crate::phase::{AmbiguousClassification, Phase};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("no order-{order} Hadamard matrix has exactly {count} real entries")]
    NotAchievable { count: usize, order: usize },
    #[error("no achievable-count table for order {0}; supported orders are 2, 3, 4, 6")]
    UnsupportedOrder(usize),
    #[error("order {0} is not an odd prime, so the quarter-turn count formula is not guaranteed")]
    NotOddPrime(usize),
    #[error("no multiplier assignment reaches {target} real entries")]
    RecipeNotFound { target: usize },
    #[error("recipe line malformed: {0}")]
    MalformedRecipe(String),
    #[error("recipe for count {expected} builds a matrix with {actual} real entries")]
    RecipeMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Classify(#[from] AmbiguousClassification),
    #[error(transparent)]
    Matrix(#[from] crate::matrix::MatrixError),
}

fn matrix_from_tokens(rows: &[&str]) -> UnitMatrix {
    UnitMatrix::from_rows(
        rows.iter()
            .map(|r| r.split_whitespace().map(|t| t.parse().expect("literal phase token")).collect())
            .collect(),
    )
    .expect("literal matrix is square")
}

fn block_from_tokens(rows: &[&str]) -> RowBlock {
    RowBlock::from_rows(
        rows.iter()
            .map(|r| r.split_whitespace().map(|t| t.parse().expect("literal phase token")).collect())
            .collect(),
    )
    .expect("literal block is rectangular")
}

/// The order-six Hadamard matrix with 30 real entries, the largest count
/// achievable at order six: diagonal `i`, off-diagonal `±1`.
pub fn order6_max_real() -> UnitMatrix {
    matrix_from_tokens(&[
        "i 1 1 1 1 1",
        "1 i -1 -1 1 1",
        "1 -1 i 1 1 -1",
        "1 -1 1 i -1 1",
        "1 1 1 -1 i -1",
        "1 1 -1 1 -1 i",
    ])
}

/// The real Hadamard matrix of order four.
pub fn real_hadamard4() -> UnitMatrix {
    matrix_from_tokens(&["1 1 1 1", "1 -1 1 -1", "1 1 -1 -1", "1 -1 -1 1"])
}

/// A Hadamard matrix of order `n` with exactly `n - d` real entries, valid
/// for every order: the Fourier matrix with its first `d` rows and its last
/// `n - 1` columns multiplied by `e^{i}` (one radian). Only the ones left in
/// the first column stay real.
pub fn low_real_witness(n: usize, d: usize) -> UnitMatrix {
    assert!(d <= n, "d must satisfy 0 <= d <= n");
    let e1 = Phase::radians(1.0);
    let f = UnitMatrix::fourier(n);
    let row_phases: Vec<Phase> =
        (0..n).map(|j| if j < d { e1 } else { Phase::one() }).collect();
    let col_phases: Vec<Phase> =
        (0..n).map(|k| if k == 0 { Phase::one() } else { e1 }).collect();
    MonomialTransform::diagonal(row_phases, col_phases).apply(&f).expect("orders match")
}

/// A Hadamard matrix of odd prime order `n` with exactly `2n - d - 1` real
/// entries: the Fourier matrix with its last `d` rows multiplied by `i`.
/// The count relies on `e^{2πi·jk/n}` being real only when `jk ≡ 0`, which
/// holds exactly at prime orders; composite odd orders are rejected.
pub fn odd_prime_witness(n: usize, d: usize) -> Result<UnitMatrix, ConstructionError> {
    let is_odd_prime = n >= 3 && n % 2 == 1 && (3..n).step_by(2).all(|k| k * k > n || n % k != 0);
    if !is_odd_prime {
        return Err(ConstructionError::NotOddPrime(n));
    }
    assert!(d <= n - 1, "d must satisfy 0 <= d <= n-1");
    let f = UnitMatrix::fourier(n);
    let row_phases: Vec<Phase> =
        (0..n).map(|j| if j >= n - d { Phase::i() } else { Phase::one() }).collect();
    Ok(MonomialTransform::diagonal(row_phases, vec![Phase::one(); n]).apply(&f).expect("orders match"))
}

/// The order-three family `diag(a1,1,1) · F3 · diag(b1,1,1)`:
/// rows `(a1·b1, a1, a1)`, `(b1, w, w2)`, `(b1, w2, w)`.
pub fn fourier3_corner_scaled(a1: Phase, b1: Phase) -> UnitMatrix {
    let f = UnitMatrix::fourier(3);
    let rows = vec![a1, Phase::one(), Phase::one()];
    let cols = vec![b1, Phase::one(), Phase::one()];
    MonomialTransform::diagonal(rows, cols).apply(&f).expect("orders match")
}

/// The order-three family `diag(a1,a2,a3) · F3`:
/// rows `(a1,a1,a1)`, `(a2, a2·w, a2·w2)`, `(a3, a3·w2, a3·w)`.
pub fn fourier3_row_scaled(a1: Phase, a2: Phase, a3: Phase) -> UnitMatrix {
    let f = UnitMatrix::fourier(3);
    MonomialTransform::diagonal(vec![a1, a2, a3], vec![Phase::one(); 3])
        .apply(&f)
        .expect("orders match")
}

/// The four canonical three-row prefixes of an order-six Hadamard matrix
/// whose second and third rows each carry exactly two non-real entries:
/// an all-ones first row over six columns, rows pairwise orthogonal.
/// Prefixes 1 and 2 are conjugates of each other, as are 3 and 4.
pub fn three_row_prefix(k: usize) -> RowBlock {
    match k {
        1 => block_from_tokens(&["1 1 1 1 1 1", "i -i 1 1 -1 -1", "i 1 -i -1 -1 1"]),
        2 => block_from_tokens(&["1 1 1 1 1 1", "-i i 1 1 -1 -1", "-i 1 i -1 -1 1"]),
        3 => block_from_tokens(&["1 1 1 1 1 1", "w2 t(1/6) 1 1 -1 -1", "1 -1 w2 1 t(1/6) -1"]),
        4 => block_from_tokens(&["1 1 1 1 1 1", "w t(5/6) 1 1 -1 -1", "1 -1 w 1 t(5/6) -1"]),
        _ => panic!("prefix index must be 1..=4"),
    }
}

/// The set of real-entry counts achievable at order `n`, for n in
/// {2, 3, 4, 6}.
pub fn achievable_counts(n: usize) -> Option<&'static BTreeSet<usize>> {
    static TABLES: OnceLock<BTreeMap<usize, BTreeSet<usize>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let mut m = BTreeMap::new();
        m.insert(2, [0usize, 1, 2, 4].into_iter().collect());
        m.insert(3, (0..=6).collect());
        m.insert(4, (0..=10).chain([12, 16]).collect());
        m.insert(6, (0..=22).chain([24, 25, 26, 30]).collect());
        m
    });
    tables.get(&n)
}

fn require_achievable(n: usize, count: usize) -> Result<(), ConstructionError> {
    let table = achievable_counts(n).ok_or(ConstructionError::UnsupportedOrder(n))?;
    if table.contains(&count) {
        Ok(())
    } else {
        Err(ConstructionError::NotAchievable { count, order: n })
    }
}

/// An order-two Hadamard matrix with the requested real-entry count
/// (0, 1, 2 or 4; three real entries are impossible).
pub fn order2_with_count(count: usize) -> Result<UnitMatrix, ConstructionError> {
    require_achievable(2, count)?;
    Ok(match count {
        4 => UnitMatrix::fourier(2),
        2 => matrix_from_tokens(&["1 i", "1 -i"]),
        1 => matrix_from_tokens(&["t(1/8) t(3/8)", "1 -i"]),
        0 => matrix_from_tokens(&["i i", "i -i"]),
        _ => unreachable!(),
    })
}

/// An order-three Hadamard matrix with the requested real-entry count
/// (0 through 6).
pub fn order3_with_count(count: usize) -> Result<UnitMatrix, ConstructionError> {
    require_achievable(3, count)?;
    let one = Phase::one();
    let w = Phase::omega();
    let i = Phase::i();
    Ok(match count {
        0 => fourier3_corner_scaled(w, w),
        1 => fourier3_corner_scaled(w, Phase::omega2()),
        2 => fourier3_corner_scaled(one, w),
        3 => fourier3_row_scaled(one, i, i),
        4 => fourier3_row_scaled(one, one, i),
        5 => fourier3_corner_scaled(one, one),
        6 => fourier3_corner_scaled(w, w).scaled(Phase::omega2()),
        _ => unreachable!(),
    })
}

/// An order-four Hadamard matrix with the requested real-entry count, built
/// from the shipped recipe table (11, 13, 14 and 15 are impossible).
pub fn order4_with_count(count: usize) -> Result<UnitMatrix, ConstructionError> {
    require_achievable(4, count)?;
    build_from_table(4, count)
}

/// An order-six Hadamard matrix with the requested real-entry count, built
/// from the shipped recipe table (23, 27, 28, 29, and 31 through 36 are
/// impossible).
pub fn order6_with_count(count: usize) -> Result<UnitMatrix, ConstructionError> {
    require_achievable(6, count)?;
    build_from_table(6, count)
}

/// Dispatch over the supported orders.
pub fn with_real_count(n: usize, count: usize) -> Result<UnitMatrix, ConstructionError> {
    match n {
        2 => order2_with_count(count),
        3 => order3_with_count(count),
        4 => order4_with_count(count),
        6 => order6_with_count(count),
        _ => Err(ConstructionError::UnsupportedOrder(n)),
    }
}

/// Base matrix of a [`CountRecipe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RecipeBase {
    /// `real_hadamard4()`, token `h4`.
    Hadamard4,
    /// `order6_max_real()`, token `h6`.
    MaxReal6,
}

impl RecipeBase {
    pub fn order(self) -> usize {
        match self {
            RecipeBase::Hadamard4 => 4,
            RecipeBase::MaxReal6 => 6,
        }
    }

    pub fn matrix(self) -> UnitMatrix {
        match self {
            RecipeBase::Hadamard4 => real_hadamard4(),
            RecipeBase::MaxReal6 => order6_max_real(),
        }
    }

    fn token(self) -> &'static str {
        match self {
            RecipeBase::Hadamard4 => "h4",
            RecipeBase::MaxReal6 => "h6",
        }
    }

    fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "h4" => Some(RecipeBase::Hadamard4),
            "h6" => Some(RecipeBase::MaxReal6),
            _ => None,
        }
    }
}

/// A verified row/column multiplier assignment over a named base matrix
/// (multipliers `i` and `e^{πi/4} = t(1/8)`), realizing a target real-entry
/// count. Line format:
/// `n m base rows_i=<list> rows_e8=<list> cols_i=<list> cols_e8=<list>`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CountRecipe {
    pub base: RecipeBase,
    pub count: usize,
    pub rows_i: Vec<usize>,
    pub rows_e8: Vec<usize>,
    pub cols_i: Vec<usize>,
    pub cols_e8: Vec<usize>,
}

impl CountRecipe {
    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn transform(&self) -> MonomialTransform {
        let n = self.order();
        let mut row_phases = vec![Phase::one(); n];
        let mut col_phases = vec![Phase::one(); n];
        for &r in &self.rows_i {
            row_phases[r] = Phase::i();
        }
        for &r in &self.rows_e8 {
            row_phases[r] = Phase::turn(1, 8);
        }
        for &c in &self.cols_i {
            col_phases[c] = Phase::i();
        }
        for &c in &self.cols_e8 {
            col_phases[c] = Phase::turn(1, 8);
        }
        MonomialTransform::diagonal(row_phases, col_phases)
    }

    pub fn build(&self) -> UnitMatrix {
        self.transform().apply(&self.base.matrix()).expect("orders match")
    }

    /// Checks the census of the built matrix against the claimed count.
    pub fn verify(&self) -> Result<(), ConstructionError> {
        let actual = self.build().census()?.real_count;
        if actual == self.count {
            Ok(())
        } else {
            Err(ConstructionError::RecipeMismatch { expected: self.count, actual })
        }
    }
}

fn format_index_list(list: &[usize]) -> String {
    list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_index_list(s: &str, n: usize) -> Option<Vec<usize>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: usize = part.parse().ok()?;
        if v >= n {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

impl fmt::Display for CountRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} rows_i={} rows_e8={} cols_i={} cols_e8={}",
            self.order(),
            self.count,
            self.base.token(),
            format_index_list(&self.rows_i),
            format_index_list(&self.rows_e8),
            format_index_list(&self.cols_i),
            format_index_list(&self.cols_e8),
        )
    }
}

impl FromStr for CountRecipe {
    type Err = ConstructionError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructionError::MalformedRecipe(line.to_string());
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(bad());
        }
        let order: usize = fields[0].parse().map_err(|_| bad())?;
        let count: usize = fields[1].parse().map_err(|_| bad())?;
        let base = RecipeBase::from_token(fields[2]).ok_or_else(bad)?;
        if base.order() != order {
            return Err(bad());
        }
        let mut lists = Vec::new();
        for (field, key) in fields[3..].iter().zip(["rows_i", "rows_e8", "cols_i", "cols_e8"]) {
            let value = field.strip_prefix(key).and_then(|v| v.strip_prefix('=')).ok_or_else(bad)?;
            lists.push(parse_index_list(value, order).ok_or_else(bad)?);
        }
        let [rows_i, rows_e8, cols_i, cols_e8] = <[Vec<usize>; 4]>::try_from(lists).unwrap();
        Ok(CountRecipe { base, count, rows_i, rows_e8, cols_i, cols_e8 })
    }
}

/// A row/column multiplier assignment over an arbitrary multiplier set, as
/// found by [`recipe_search`]. `None` leaves the line unscaled.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierAssignment {
    pub target: usize,
    pub row_multipliers: Vec<Option<Phase>>,
    pub col_multipliers: Vec<Option<Phase>>,
}

impl MultiplierAssignment {
    pub fn transform(&self) -> MonomialTransform {
        let row_phases = self.row_multipliers.iter().map(|m| m.unwrap_or(Phase::one())).collect();
        let col_phases = self.col_multipliers.iter().map(|m| m.unwrap_or(Phase::one())).collect();
        MonomialTransform::diagonal(row_phases, col_phases)
    }

    /// Converts to the file-format recipe when every multiplier is `i` or
    /// `t(1/8)` and the base has a token.
    pub fn to_count_recipe(&self, base: RecipeBase) -> Option<CountRecipe> {
        let mut recipe = CountRecipe {
            base,
            count: self.target,
            rows_i: Vec::new(),
            rows_e8: Vec::new(),
            cols_i: Vec::new(),
            cols_e8: Vec::new(),
        };
        let e8 = Phase::turn(1, 8);
        for (idx, m) in self.row_multipliers.iter().enumerate() {
            match m {
                None => {}
                Some(p) if *p == Phase::i() => recipe.rows_i.push(idx),
                Some(p) if *p == e8 => recipe.rows_e8.push(idx),
                Some(_) => return None,
            }
        }
        for (idx, m) in self.col_multipliers.iter().enumerate() {
            match m {
                None => {}
                Some(p) if *p == Phase::i() => recipe.cols_i.push(idx),
                Some(p) if *p == e8 => recipe.cols_e8.push(idx),
                Some(_) => return None,
            }
        }
        Some(recipe)
    }
}

/// Searches row/column multiplier assignments over `base` for one whose
/// census hits `target`, trying assignments in breadth-first order: fewest
/// scaled lines first, ties broken lexicographically with rows before
/// columns, low indices first, multipliers in the order given. Returns the
/// first verified hit or `RecipeNotFound` once the space is exhausted.
pub fn recipe_search(
    base: &UnitMatrix,
    target: usize,
    multipliers: &[Phase],
) -> Result<MultiplierAssignment, ConstructionError> {
    let n = base.order();
    let m = multipliers.len();

    // real_table[j*n+k][a][b]: is entry (j,k) real after scaling row j by
    // multiplier a and column k by multiplier b (index 0 = no scaling)?
    let mut real_table = vec![vec![vec![false; m + 1]; m + 1]; n * n];
    for j in 0..n {
        for k in 0..n {
            for a in 0..=m {
                for b in 0..=m {
                    let mut p = *base.get(j, k);
                    if a > 0 {
                        p = p.mul(&multipliers[a - 1]);
                    }
                    if b > 0 {
                        p = p.mul(&multipliers[b - 1]);
                    }
                    real_table[j * n + k][a][b] = p.classify()?.is_real();
                }
            }
        }
    }

    let census = |rows: &[usize], cols: &[usize]| -> usize {
        let mut count = 0;
        for j in 0..n {
            for k in 0..n {
                if real_table[j * n + k][rows[j]][cols[k]] {
                    count += 1;
                }
            }
        }
        count
    };

    // items in lexicographic order: all row slots before all column slots
    fn visit(
        items_left: usize,
        next_item: usize,
        n: usize,
        m: usize,
        rows: &mut Vec<usize>,
        cols: &mut Vec<usize>,
        check: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        if items_left == 0 {
            return check(rows, cols);
        }
        // each remaining item picks a line index >= next_item and a multiplier
        for line in next_item..2 * n {
            if 2 * n - line < items_left {
                break;
            }
            for mult in 1..=m {
                if line < n {
                    rows[line] = mult;
                } else {
                    cols[line - n] = mult;
                }
                if visit(items_left - 1, line + 1, n, m, rows, cols, check) {
                    return true;
                }
            }
            if line < n {
                rows[line] = 0;
            } else {
                cols[line - n] = 0;
            }
        }
        false
    }

    let mut rows = vec![0usize; n];
    let mut cols = vec![0usize; n];
    for weight in 0..=2 * n {
        let mut found = false;
        {
            let mut check = |rows: &[usize], cols: &[usize]| census(rows, cols) == target;
            if visit(weight, 0, n, m, &mut rows, &mut cols, &mut check) {
                found = true;
            }
        }
        if found {
            let to_phase =
                |slot: usize| if slot == 0 { None } else { Some(multipliers[slot - 1]) };
            return Ok(MultiplierAssignment {
                target,
                row_multipliers: rows.iter().map(|&s| to_phase(s)).collect(),
                col_multipliers: cols.iter().map(|&s| to_phase(s)).collect(),
            });
        }
    }
    Err(ConstructionError::RecipeNotFound { target })
}

/// Recomputes the full recipe table for orders 4 and 6 with multipliers
/// `{i, t(1/8)}`, verifying every entry. This is how the shipped data file
/// is produced.
pub fn regenerate_recipe_table() -> Result<Vec<CountRecipe>, ConstructionError> {
    let multipliers = [Phase::i(), Phase::turn(1, 8)];
    let mut out = Vec::new();
    for (base, order) in [(RecipeBase::Hadamard4, 4usize), (RecipeBase::MaxReal6, 6usize)] {
        let matrix = base.matrix();
        for &count in achievable_counts(order).expect("table exists") {
            let assignment = recipe_search(&matrix, count, &multipliers)?;
            let recipe = assignment
                .to_count_recipe(base)
                .expect("search multipliers are i and t(1/8)");
            recipe.verify()?;
            out.push(recipe);
        }
    }
    Ok(out)
}

pub fn format_recipe_table(recipes: &[CountRecipe]) -> String {
    let mut s = String::new();
    for r in recipes {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

pub fn parse_recipe_table(text: &str) -> Result<Vec<CountRecipe>, ConstructionError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(CountRecipe::from_str)
        .collect()
}

/// The recipe table shipped with the crate, verified on first use.
pub fn recipe_table() -> &'static [CountRecipe] {
    static TABLE: OnceLock<Vec<CountRecipe>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let recipes = parse_recipe_table(include_str!("../data/recipes.txt"))
            .expect("shipped recipe table parses");
        for r in &recipes {
            r.verify().expect("shipped recipe builds its claimed count");
        }
        recipes
    })
}

fn build_from_table(order: usize, count: usize) -> Result<UnitMatrix, ConstructionError> {
    recipe_table()
        .iter()
        .find(|r| r.order() == order && r.count == count)
        .map(|r| r.build())
        .ok_or(ConstructionError::NotAchievable { count, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::EntryClass;

    #[test]
    fn max_real6_is_hadamard_with_30_reals() {
        let g = order6_max_real();
        assert!(g.is_chm_exact().unwrap());
        let c = g.census().unwrap();
        assert_eq!(c.real_count, 30);
        assert_eq!(c.imaginary_array, vec![1, 1, 1, 1, 1, 1]);
        for j in 0..6 {
            assert_eq!(*g.get(j, j), Phase::i());
        }
        assert_eq!(g.transpose().census().unwrap().real_count, 30);
        assert_eq!(g.conjugate().census().unwrap().real_count, 30);
    }

    #[test]
    fn single_row_multipliers_drop_four_or_five_reals() {
        let g = order6_max_real();
        let mut by_i = vec![Phase::one(); 6];
        by_i[0] = Phase::i();
        let c = MonomialTransform::diagonal(by_i, vec![Phase::one(); 6])
            .apply(&g)
            .unwrap()
            .census()
            .unwrap();
        assert_eq!(c.real_count, 26);

        let mut by_e8 = vec![Phase::one(); 6];
        by_e8[0] = Phase::turn(1, 8);
        let c = MonomialTransform::diagonal(by_e8, vec![Phase::one(); 6])
            .apply(&g)
            .unwrap()
            .census()
            .unwrap();
        assert_eq!(c.real_count, 25);
    }

    #[test]
    fn printed_recipes_for_24_and_19() {
        let g = order6_max_real();
        let i = Phase::i();
        // first row and second column by i
        let mut rows = vec![Phase::one(); 6];
        let mut cols = vec![Phase::one(); 6];
        rows[0] = i;
        cols[1] = i;
        let m = MonomialTransform::diagonal(rows, cols).apply(&g).unwrap();
        assert_eq!(m.census().unwrap().real_count, 24);
        assert!(m.is_chm_exact().unwrap());

        // first row and columns two, three by i; last row by t(1/8)
        let mut rows = vec![Phase::one(); 6];
        let mut cols = vec![Phase::one(); 6];
        rows[0] = i;
        rows[5] = Phase::turn(1, 8);
        cols[1] = i;
        cols[2] = i;
        let m = MonomialTransform::diagonal(rows, cols).apply(&g).unwrap();
        assert_eq!(m.census().unwrap().real_count, 19);
        assert!(m.is_chm_exact().unwrap());
    }

    #[test]
    fn low_real_witness_counts() {
        for (n, d, expect) in [(6, 0, 6), (6, 6, 0), (5, 2, 3)] {
            let m = low_real_witness(n, d);
            assert!(m.is_chm_numeric(1e-9).unwrap());
            assert_eq!(m.census().unwrap().real_count, expect, "n={n} d={d}");
        }
    }

    #[test]
    fn odd_prime_witness_counts_and_gating() {
        for (n, d, expect) in [(3, 0, 5), (5, 4, 5), (7, 0, 13)] {
            let m = odd_prime_witness(n, d).unwrap();
            assert!(m.is_chm_exact().unwrap());
            assert_eq!(m.census().unwrap().real_count, expect, "n={n} d={d}");
        }
        for n in [2usize, 4, 6, 9, 15] {
            assert_eq!(odd_prime_witness(n, 0), Err(ConstructionError::NotOddPrime(n)), "n={n}");
        }
    }

    #[test]
    fn order3_family_examples() {
        let one = Phase::one();
        let w = Phase::omega();
        assert_eq!(fourier3_corner_scaled(one, one).census().unwrap().real_count, 5);
        let scaled = fourier3_corner_scaled(w, w).scaled(Phase::omega2());
        assert!(scaled.is_chm_exact().unwrap());
        assert_eq!(scaled.census().unwrap().real_count, 6);
        assert_eq!(
            fourier3_row_scaled(one, Phase::i(), Phase::i()).census().unwrap().real_count,
            3
        );
        assert_eq!(
            fourier3_row_scaled(one, one, Phase::i()).census().unwrap().real_count,
            4
        );
    }

    #[test]
    fn order2_witnesses() {
        for count in [0usize, 1, 2, 4] {
            let m = order2_with_count(count).unwrap();
            assert!(m.is_chm_exact().unwrap(), "count {count}");
            assert_eq!(m.census().unwrap().real_count, count);
        }
        // the one-real witness verifies exactly as printed
        let h = order2_with_count(1).unwrap();
        assert_eq!(*h.get(0, 0), Phase::turn(1, 8));
        assert_eq!(
            order2_with_count(3),
            Err(ConstructionError::NotAchievable { count: 3, order: 2 })
        );
    }

    #[test]
    fn diag_conjugation_gives_ten_reals_at_order_four() {
        let m = real_hadamard4();
        let d: Vec<Phase> = vec![Phase::one(), Phase::i(), Phase::i(), Phase::i()];
        let d_conj: Vec<Phase> = d.iter().map(Phase::conj).collect();
        let r = MonomialTransform::diagonal(d, d_conj).apply(&m).unwrap();
        assert_eq!(r.census().unwrap().real_count, 10);
    }

    #[test]
    fn full_achievable_loops() {
        for n in [2usize, 3, 4, 6] {
            let table = achievable_counts(n).unwrap();
            for m in 0..=n * n {
                match with_real_count(n, m) {
                    Ok(matrix) => {
                        assert!(table.contains(&m), "unexpected success at n={n} m={m}");
                        assert!(matrix.is_chm_exact().unwrap());
                        assert_eq!(matrix.census().unwrap().real_count, m);
                    }
                    Err(ConstructionError::NotAchievable { count, order }) => {
                        assert!(!table.contains(&m));
                        assert_eq!((count, order), (m, n));
                    }
                    Err(e) => panic!("unexpected error at n={n} m={m}: {e}"),
                }
            }
        }
        assert!(matches!(with_real_count(5, 0), Err(ConstructionError::UnsupportedOrder(5))));
    }

    #[test]
    fn three_row_prefixes() {
        for k in 1..=4 {
            let b = three_row_prefix(k);
            assert!(b.rows_orthogonal_exact().unwrap(), "prefix {k}");
            assert_eq!(b.non_real_counts().unwrap(), vec![0, 2, 2], "prefix {k}");
        }
        let p1 = three_row_prefix(1);
        assert_eq!(
            p1.row(1),
            &[
                Phase::i(),
                Phase::minus_i(),
                Phase::one(),
                Phase::one(),
                Phase::minus_one(),
                Phase::minus_one()
            ]
        );
        assert_eq!(p1.conjugate(), three_row_prefix(2));
        assert_eq!(three_row_prefix(3).conjugate(), three_row_prefix(4));
    }

    #[test]
    fn recipe_search_matches_printed_examples() {
        let g = order6_max_real();
        let found = recipe_search(&g, 26, &[Phase::i()]).unwrap();
        let recipe = found.to_count_recipe(RecipeBase::MaxReal6).unwrap();
        assert_eq!(recipe.rows_i, vec![0]);
        assert!(recipe.rows_e8.is_empty() && recipe.cols_i.is_empty() && recipe.cols_e8.is_empty());

        let both = [Phase::i(), Phase::turn(1, 8)];
        let found24 = recipe_search(&g, 24, &both).unwrap().to_count_recipe(RecipeBase::MaxReal6).unwrap();
        assert_eq!((found24.rows_i.clone(), found24.cols_i.clone()), (vec![0], vec![1]));

        let found19 = recipe_search(&g, 19, &both).unwrap();
        assert_eq!(found19.transform().apply(&g).unwrap().census().unwrap().real_count, 19);
    }

    #[test]
    fn recipe_search_exhausts_for_23() {
        let g = order6_max_real();
        let both = [Phase::i(), Phase::turn(1, 8)];
        assert_eq!(
            recipe_search(&g, 23, &both),
            Err(ConstructionError::RecipeNotFound { target: 23 })
        );
    }

    #[test]
    fn shipped_table_round_trips_and_verifies() {
        let table = recipe_table();
        let text = format_recipe_table(table);
        assert_eq!(parse_recipe_table(&text).unwrap(), table.to_vec());
        for r in table {
            r.verify().unwrap();
        }
        // one recipe per achievable count and no extras
        for (order, base_count) in [(4usize, 13usize), (6, 27)] {
            let counts: Vec<usize> =
                table.iter().filter(|r| r.order() == order).map(|r| r.count).collect();
            assert_eq!(counts.len(), base_count);
            let expected: Vec<usize> = achievable_counts(order).unwrap().iter().copied().collect();
            assert_eq!(counts, expected);
        }
    }

    #[test]
    fn shipped_24_recipe_is_the_printed_one() {
        let r = recipe_table().iter().find(|r| r.order() == 6 && r.count == 24).unwrap();
        assert_eq!((r.rows_i.clone(), r.cols_i.clone()), (vec![0], vec![1]));
        assert!(r.rows_e8.is_empty() && r.cols_e8.is_empty());
    }

    #[test]
    fn maximal_counts_return_the_bases_unchanged() {
        assert_eq!(order4_with_count(16).unwrap(), real_hadamard4());
        assert_eq!(order6_with_count(30).unwrap(), order6_max_real());
    }

    #[test]
    fn witness_diagonals_all_quarter_turns() {
        let g = order6_max_real();
        for j in 0..6 {
            assert_eq!(g.get(j, j).classify().unwrap(), EntryClass::PurelyImaginary);
        }
    }
}
