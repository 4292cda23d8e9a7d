//! Two-dimensional standard sets (staircases).
//!
//! A staircase is stored by its column heights, weakly decreasing. Column `j`
//! holds the lattice points `(j, 0), ..., (j, h_j - 1)`, so the first
//! coordinate is the exponent of `x1` and the second the exponent of `x2`.
//! The row view is the conjugate partition and is computed on demand.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of N^2, read as the exponent of `x1^a1 * x2^a2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub a1: u32,
    pub a2: u32,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a1: 0, a2: 0 };

    pub const fn new(a1: u32, a2: u32) -> Self {
        LatticePoint { a1, a2 }
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(self, other: LatticePoint) -> bool {
        self.a1 <= other.a1 && self.a2 <= other.a2
    }

    pub fn degree(self) -> u32 {
        self.a1 + self.a2
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// Direction of a C4 sum: `First` stacks columns side by side, `Second`
/// stacks rows on top of each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    First,
    Second,
}

impl TryFrom<u8> for Direction {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Direction::First),
            2 => Ok(Direction::Second),
            other => Err(Error::InvalidArgument(format!(
                "C4 direction must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// A finite standard set in N^2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ColumnsRepr", into = "ColumnsRepr")]
pub struct StandardSet {
    columns: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ColumnsRepr {
    columns: Vec<i64>,
}

impl TryFrom<ColumnsRepr> for StandardSet {
    type Error = Error;

    fn try_from(repr: ColumnsRepr) -> Result<Self> {
        StandardSet::try_from_signed(&repr.columns)
    }
}

impl From<StandardSet> for ColumnsRepr {
    fn from(s: StandardSet) -> Self {
        ColumnsRepr {
            columns: s.columns.iter().map(|&h| i64::from(h)).collect(),
        }
    }
}

impl StandardSet {
    pub fn empty() -> Self {
        StandardSet::default()
    }

    /// Canonical constructor: zeros are dropped and the heights sorted
    /// weakly decreasing.
    pub fn from_columns<I: IntoIterator<Item = u32>>(heights: I) -> Self {
        let mut columns: Vec<u32> = heights.into_iter().filter(|&h| h > 0).collect();
        columns.sort_unstable_by(|a, b| b.cmp(a));
        StandardSet { columns }
    }

    /// Like [`StandardSet::from_columns`] but accepts signed input and
    /// rejects negative heights.
    pub fn try_from_signed(heights: &[i64]) -> Result<Self> {
        let mut cols = Vec::with_capacity(heights.len());
        for &h in heights {
            if h < 0 {
                return Err(Error::NegativeHeight(h));
            }
            let h = u32::try_from(h)
                .map_err(|_| Error::InvalidArgument(format!("column height {h} is too large")))?;
            cols.push(h);
        }
        Ok(StandardSet::from_columns(cols))
    }

    /// Builds the staircase whose rows (bottom to top) have the given widths.
    pub fn from_rows<I: IntoIterator<Item = u32>>(widths: I) -> Self {
        StandardSet::from_columns(widths).transpose()
    }

    pub fn single_column(height: u32) -> Self {
        StandardSet::from_columns([height])
    }

    pub fn single_row(width: u32) -> Self {
        StandardSet::from_rows([width])
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn cardinality(&self) -> u32 {
        self.columns.iter().sum()
    }

    /// Number of nonempty columns, `|p1(Δ)|`.
    pub fn width(&self) -> u32 {
        self.columns.len() as u32
    }

    /// Number of nonempty rows, `|p2(Δ)|`.
    pub fn height(&self) -> u32 {
        self.columns.first().copied().unwrap_or(0)
    }

    /// Column heights, left to right (weakly decreasing).
    pub fn cols(&self) -> &[u32] {
        &self.columns
    }

    /// Row widths, bottom to top (weakly decreasing).
    pub fn rows(&self) -> Vec<u32> {
        conjugate(&self.columns)
    }

    pub fn transpose(&self) -> Self {
        StandardSet {
            columns: conjugate(&self.columns),
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.columns.get(p.a1 as usize).is_some_and(|&h| p.a2 < h)
    }

    /// All lattice points, column by column.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, &h)| (0..h).map(move |i| LatticePoint::new(j as u32, i)))
    }

    /// Minimal generators of the N^2-module N^2 \ Δ, ordered by increasing
    /// first coordinate. The empty staircase has the single corner (0,0).
    pub fn outer_corners(&self) -> Vec<LatticePoint> {
        let mut corners = Vec::with_capacity(self.columns.len() + 1);
        let mut prev = u32::MAX;
        for (j, &h) in self.columns.iter().enumerate() {
            if h < prev {
                corners.push(LatticePoint::new(j as u32, h));
            }
            prev = h;
        }
        let w = self.width();
        // for the empty staircase `prev` is still u32::MAX and this pushes (0,0)
        if prev != 0 {
            corners.push(LatticePoint::new(w, 0));
        }
        corners
    }

    /// C4 sum: merge the column multisets (`First`) or the row multisets
    /// (`Second`).
    pub fn c4_sum(&self, other: &StandardSet, direction: Direction) -> StandardSet {
        match direction {
            Direction::First => {
                StandardSet::from_columns(self.columns.iter().chain(other.columns.iter()).copied())
            }
            Direction::Second => {
                StandardSet::from_rows(self.rows().into_iter().chain(other.rows()))
            }
        }
    }

    /// C4 sum of an arbitrary collection; the empty collection sums to the
    /// empty staircase.
    pub fn c4_sum_all<'a, I>(items: I, direction: Direction) -> StandardSet
    where
        I: IntoIterator<Item = &'a StandardSet>,
    {
        items
            .into_iter()
            .fold(StandardSet::empty(), |acc, s| acc.c4_sum(s, direction))
    }

    pub fn cell_dimensions(&self) -> CellDimensions {
        let n = self.cardinality();
        CellDimensions {
            lex_dim: n + self.height(),
            lin_dim: n,
            punc_dim: n - self.width(),
        }
    }

    /// Box diagram, top row first, one `#` per box.
    pub fn ascii_art(&self) -> String {
        if self.is_empty() {
            return ".\n".to_string();
        }
        let mut out = String::new();
        for width in self.rows().iter().rev() {
            out.extend(std::iter::repeat_n('#', *width as usize));
            out.push('\n');
        }
        out
    }

    /// Comma-separated column heights, e.g. `4,3,1`.
    pub fn label(&self) -> String {
        self.columns
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("staircase serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

impl fmt::Display for StandardSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.label())
    }
}

/// Conjugate of a weakly decreasing sequence of positive integers.
fn conjugate(parts: &[u32]) -> Vec<u32> {
    let Some(&first) = parts.first() else {
        return Vec::new();
    };
    (0..first)
        .map(|i| parts.iter().take_while(|&&p| p > i).count() as u32)
        .collect()
}

/// Dimensions of the three affine cells attached to a staircase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDimensions {
    pub lex_dim: u32,
    pub lin_dim: u32,
    pub punc_dim: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionFlavor {
    Lex,
    Lin,
    Punc,
}

impl CellDimensions {
    pub fn get(&self, flavor: DimensionFlavor) -> u32 {
        match flavor {
            DimensionFlavor::Lex => self.lex_dim,
            DimensionFlavor::Lin => self.lin_dim,
            DimensionFlavor::Punc => self.punc_dim,
        }
    }
}

/// All staircases of cardinality `n`, reverse-lexicographic on column
/// heights (the single column of height `n` comes first).
pub fn enumerate(n: u32) -> Vec<StandardSet> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<StandardSet>) {
        if remaining == 0 {
            out.push(StandardSet {
                columns: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Polynomial in one variable `q` with non-negative integer coefficients;
/// `coefficients[d]` is the coefficient of `q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    pub coefficients: Vec<u64>,
}

impl IntPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|&c| c != 0)
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| match (d, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".to_string(),
                (1, c) => format!("{c}*q"),
                (d, 1) => format!("q^{d}"),
                (d, c) => format!("{c}*q^{d}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `Σ_{Δ ∈ st_n} q^{dim}` for the chosen cell flavor.
pub fn dimension_polynomial(n: u32, flavor: DimensionFlavor) -> IntPolynomial {
    let mut coefficients = Vec::new();
    for s in enumerate(n) {
        let d = s.cell_dimensions().get(flavor) as usize;
        if coefficients.len() <= d {
            coefficients.resize(d + 1, 0);
        }
        coefficients[d] += 1;
    }
    IntPolynomial { coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute_transpose(s: &StandardSet) -> StandardSet {
        let points: BTreeSet<(u32, u32)> = s.points().map(|p| (p.a2, p.a1)).collect();
        let width = points.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        StandardSet::from_columns(
            (0..width).map(|j| points.iter().filter(|p| p.0 == j).count() as u32),
        )
    }

    #[test]
    fn from_columns_canonicalizes() {
        let s = StandardSet::from_columns([1, 2, 2]);
        assert_eq!(s.cols(), &[2, 2, 1]);
        let pts: Vec<_> = s.points().map(|p| (p.a1, p.a2)).collect();
        assert_eq!(pts, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]);
        assert!(StandardSet::from_columns([]).is_empty());
        assert_eq!(StandardSet::from_columns([0, 3, 0]).cols(), &[3]);
    }

    #[test]
    fn negative_height_rejected() {
        assert_eq!(
            StandardSet::try_from_signed(&[2, -1]),
            Err(Error::NegativeHeight(-1))
        );
    }

    #[test]
    fn stacked_sum_shape() {
        let s = StandardSet::from_columns([4, 3, 3, 3, 3, 1]);
        assert_eq!(s.rows(), vec![6, 5, 5, 1]);
        let t = StandardSet::from_columns([5, 5, 3, 3]);
        assert_eq!(t.rows(), vec![4, 4, 4, 2, 2]);
    }

    #[test]
    fn transpose_examples() {
        let s = StandardSet::from_columns([3, 2, 1]);
        assert_eq!(s.transpose(), s);
        assert_eq!(
            StandardSet::single_column(5).transpose().cols(),
            &[1, 1, 1, 1, 1]
        );
        let s = StandardSet::from_columns([3, 1, 1, 1]);
        assert_eq!(s.transpose(), brute_transpose(&s));
        assert_eq!(s.transpose().cols(), &[4, 1, 1]);
    }

    #[test]
    fn rows_and_cols() {
        let s = StandardSet::from_columns([2, 1]);
        assert_eq!(s.rows(), vec![2, 1]);
        assert_eq!(s.cols(), &[2, 1]);
        assert_eq!(StandardSet::single_column(4).rows(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn outer_corner_examples() {
        let p = |a, b| LatticePoint::new(a, b);
        assert_eq!(StandardSet::empty().outer_corners(), vec![p(0, 0)]);
        assert_eq!(
            StandardSet::single_column(4).outer_corners(),
            vec![p(0, 4), p(1, 0)]
        );
        assert_eq!(
            StandardSet::from_columns([2, 1]).outer_corners(),
            vec![p(0, 2), p(1, 1), p(2, 0)]
        );
    }

    #[test]
    fn c4_identity_and_cardinality() {
        let x = StandardSet::from_columns([3, 1]);
        for d in [Direction::First, Direction::Second] {
            assert_eq!(x.c4_sum(&StandardSet::empty(), d), x);
            assert_eq!(StandardSet::empty().c4_sum(&x, d), x);
        }
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate(0), vec![StandardSet::empty()]);
        let three: Vec<Vec<u32>> = enumerate(3).iter().map(|s| s.cols().to_vec()).collect();
        assert_eq!(three, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate(6).len(), 11);
    }

    #[test]
    fn cell_dimension_examples() {
        let d = |l, i, p| CellDimensions {
            lex_dim: l,
            lin_dim: i,
            punc_dim: p,
        };
        assert_eq!(StandardSet::single_row(6).cell_dimensions(), d(7, 6, 0));
        assert_eq!(StandardSet::single_column(6).cell_dimensions(), d(12, 6, 5));
        assert_eq!(
            StandardSet::from_columns([2, 1]).cell_dimensions(),
            d(5, 3, 1)
        );
    }

    #[test]
    fn dimension_polynomials() {
        let p0 = dimension_polynomial(0, DimensionFlavor::Lex);
        assert_eq!(p0.coefficients, vec![1]);
        let p2 = dimension_polynomial(2, DimensionFlavor::Punc);
        assert_eq!(p2.coefficients, vec![1, 1]);
        assert_eq!(p2.to_string(), "q + 1");
        let p6 = dimension_polynomial(6, DimensionFlavor::Lex);
        assert_eq!(p6.degree(), Some(12));
        assert_eq!(p6.eval_at_one(), 11);
    }

    #[test]
    fn json_roundtrip_sorts() {
        let s = StandardSet::from_json(r#"{"columns":[1,4,3]}"#).unwrap();
        assert_eq!(s.cols(), &[4, 3, 1]);
        assert_eq!(s.to_json(), r#"{"columns":[4,3,1]}"#);
        assert!(StandardSet::from_json(r#"{"columns":[-1]}"#).is_err());
    }

    #[test]
    fn ascii_art_draws_top_row_first() {
        assert_eq!(StandardSet::from_columns([2, 1]).ascii_art(), "#\n##\n");
    }
}
