//! Exact rational scalars and dense matrices.
//!
//! Everything downstream is a rank question, so there is no floating point
//! anywhere in the crate. Elimination always pivots on the first nonzero
//! entry of a column, which makes kernel and image bases reproducible.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A column vector.
pub type Vector = Vec<Rational>;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("not a rational literal: {0:?}")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let bad = || ParseRationalError::Syntax(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter: integers that fit in `i64` become JSON numbers, everything
/// else becomes a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(JsonRational(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating-point value {v} not accepted; write rationals as \"p/q\""
                )))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_rational(v).map(JsonRational).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected a {expected_rows}x{expected_cols} matrix, found {found_rows}x{found_cols}")]
pub struct ShapeError {
    pub expected_rows: usize,
    pub expected_cols: usize,
    pub found_rows: usize,
    pub found_cols: usize,
}

/// Dense row-major matrix over ℚ. Zero-row and zero-column shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds from nested rows. Panics on ragged input; an empty list gives 0×0.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r);
        }
        Self { rows: n, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// A single column.
    pub fn column(v: &[Rational]) -> Self {
        Self::new(v.len(), 1, v.to_vec())
    }

    /// A single row.
    pub fn row(v: &[Rational]) -> Self {
        Self::new(1, v.len(), v.to_vec())
    }

    /// The matrix whose columns are `vectors`, each of length `dim`.
    pub fn from_columns(dim: usize, vectors: &[Vector]) -> Self {
        Self::from_fn(dim, vectors.len(), |i, j| vectors[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_vector(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    /// Reinterprets a parsed matrix at an expected shape. A parsed `[]` is 0×0
    /// and is accepted for any shape with zero rows or zero columns.
    pub fn conform(self, rows: usize, cols: usize) -> Result<Self, ShapeError> {
        if self.shape() == (rows, cols) {
            return Ok(self);
        }
        if self.entries.is_empty() && rows * cols == 0 && (self.rows == 0 || self.rows == rows) {
            return Ok(Self::zeros(rows, cols));
        }
        Err(ShapeError {
            expected_rows: rows,
            expected_cols: cols,
            found_rows: self.rows,
            found_cols: self.cols,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Largest absolute entry; zero for empty matrices.
    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.rows, self.cols, self.entries.iter().map(|x| x * c).collect())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row_slice(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[a | b | ...]`. All blocks need the same row count.
    pub fn hstack(blocks: &[&RationalMatrix]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                entries.extend_from_slice(b.row_slice(i));
            }
        }
        Self { rows, cols, entries }
    }

    /// Vertical concatenation. All blocks need the same column count.
    pub fn vstack(blocks: &[&RationalMatrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            entries.extend_from_slice(&b.entries);
        }
        Self { rows, cols, entries }
    }

    /// Block matrix from a grid of blocks given row-major.
    pub fn block(grid: &[&[&RationalMatrix]]) -> Self {
        let rows: Vec<Self> = grid.iter().map(|r| Self::hstack(r)).collect();
        let refs: Vec<&Self> = rows.iter().collect();
        Self::vstack(&refs)
    }

    /// Kronecker product; basis index `(i, j)` of the product is `i * other_dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = &self[(r / other.rows, c / other.cols)];
            if a.is_zero() {
                return Rational::zero();
            }
            a * &other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let x = &m[(r, j)] * &f;
                    m[(i, j)] -= x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the original columns at the pivot positions.
    pub fn image_basis(&self) -> Vec<Vector> {
        self.rref().pivots.into_iter().map(|j| self.column_vector(j)).collect()
    }

    /// Some `x` with `self · x = b`, or `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length does not match row count");
        let aug = Self::hstack(&[self, &Self::column(b)]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Some `X` with `self · X = rhs`, column by column.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        let cols: Option<Vec<Vector>> =
            (0..rhs.cols).map(|j| self.solve(&rhs.column_vector(j))).collect();
        Some(Self::from_columns(self.cols, &cols?))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols || self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&Self::identity(self.rows))
    }
}

/// True when every vector of `a` lies in the span of `b` and vice versa.
pub fn same_span(dim: usize, a: &[Vector], b: &[Vector]) -> bool {
    let ma = RationalMatrix::from_columns(dim, a);
    let mb = RationalMatrix::from_columns(dim, b);
    let r = RationalMatrix::hstack(&[&ma, &mb]).rank();
    r == ma.rank() && r == mb.rank()
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        RationalMatrix::new(self.rows, self.cols, entries)
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        RationalMatrix::new(self.rows, self.cols, entries)
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix::new(self.rows, self.cols, self.entries.iter().map(|a| -a).collect())
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalMatrix {
            type Output = RationalMatrix;
            fn $f(self, rhs: RationalMatrix) -> RationalMatrix {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        -&self
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row_slice(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<JsonRational> =
                self.row_slice(i).iter().cloned().map(JsonRational).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<JsonRational>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(de::Error::custom("ragged matrix rows"));
        }
        Ok(Self::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::from_i64(&[&[1, 0], &[0, 0]]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(2, 2).rank(), 0);
        assert_eq!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::from_i64(&[&[1, 0]]).kernel_basis(), vec![v(&[0, 1])]);
        let omega = RationalMatrix::from_i64(&[&[0, -1, -1], &[1, 0, 0], &[1, 0, 0]]);
        assert_eq!(omega.kernel_basis(), vec![v(&[0, -1, 1])]);
    }

    #[test]
    fn image_examples() {
        assert!(RationalMatrix::zeros(3, 2).image_basis().is_empty());
        assert_eq!(
            RationalMatrix::identity(3).image_basis(),
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]
        );
        assert_eq!(RationalMatrix::from_i64(&[&[1], &[2]]).image_basis(), vec![v(&[1, 2])]);
    }

    #[test]
    fn degenerate_shapes() {
        let m = RationalMatrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
        let n = RationalMatrix::zeros(3, 0);
        assert!(n.kernel_basis().is_empty());
        assert_eq!((&n * &m).shape(), (3, 3));
        assert_eq!(n.solve(&v(&[0, 0, 0])), Some(vec![]));
        assert_eq!(n.solve(&v(&[0, 1, 0])), None);
    }

    #[test]
    fn solve_and_inverse() {
        let a = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&v(&[3, 2])).unwrap();
        assert_eq!(x, v(&[1, 1]));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_index_convention() {
        let a = RationalMatrix::from_i64(&[&[1, 2]]);
        let b = RationalMatrix::from_i64(&[&[1], &[3]]);
        assert_eq!(a.kron(&b), RationalMatrix::from_i64(&[&[1, 2], &[3, 6]]));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 1 / -2 ").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = RationalMatrix::from_rows(vec![vec![ratio(1, 2), int(-3)], vec![int(0), ratio(-5, 7)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2",-3],[0,"-5/7"]]"#);
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<RationalMatrix>("[[1.5]]").is_err());
        assert!(serde_json::from_str::<RationalMatrix>("[[1],[2,3]]").is_err());
    }

    #[test]
    fn conform_empty() {
        let parsed: RationalMatrix = serde_json::from_str("[]").unwrap();
        assert_eq!(parsed.clone().conform(0, 4).unwrap().shape(), (0, 4));
        assert!(parsed.conform(2, 2).is_err());
        let tall: RationalMatrix = serde_json::from_str("[[],[]]").unwrap();
        assert_eq!(tall.conform(2, 0).unwrap().shape(), (2, 0));
    }
}
