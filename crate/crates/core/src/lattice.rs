//! Exact integer linear algebra over ℤ.
//!
//! Everything here works with arbitrary-precision integers: lattice vectors,
//! integer matrices, the Smith and Hermite normal forms, saturations of
//! sublattices and the basis-extension test used for smoothness of cones.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A lattice element written in coordinates.
///
/// The derived ordering is lexicographic in the coordinates, which is the
/// order used for every canonical vector set in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of ℤ^dim.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The standard pairing of coordinate vectors.
    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, factor: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Exact division of every coordinate; the caller guarantees divisibility.
    pub fn div_exact(&self, divisor: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c / divisor).collect())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVector {
    fn index_mut(&mut self, i: usize) -> &mut BigInt {
        &mut self.0[i]
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(coords: Vec<i64>) -> Self {
        IntVector::from_i64s(&coords)
    }
}

impl From<&[i64]> for IntVector {
    fn from(coords: &[i64]) -> Self {
        IntVector::from_i64s(coords)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(coords: [i64; N]) -> Self {
        IntVector::from_i64s(&coords)
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Integers serialize as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise.
pub(crate) fn serialize_int<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&value.to_string()),
    }
}

/// Sequence form of [`serialize_int`].
pub(crate) fn serialize_ints<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        match v.to_i64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_ints(&self.0, s)
    }
}

/// Divides `v` by the gcd of its coordinates.
pub fn primitive_part(v: &IntVector) -> Result<IntVector> {
    if v.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero vector has no primitive part".into(),
        ));
    }
    Ok(v.div_exact(&v.content()))
}

/// Makes every vector primitive, sorts lexicographically and removes duplicates.
/// Zero vectors are dropped.
pub fn canonical_vector_set(vectors: impl IntoIterator<Item = IntVector>) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = vectors
        .into_iter()
        .filter(|v| !v.is_zero())
        .map(|v| {
            let g = v.content();
            v.div_exact(&g)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors of a common length `cols`.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols, "row {i} has the wrong length");
            for (j, c) in r.coords().iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntVector], rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vectors: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vectors, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimensions do not compose");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim());
        IntVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).0).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// The adjugate, so that `self · adj = det · I`.
    pub fn adjugate(&self) -> IntMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = BigInt::one();
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let mut minor = Self::zeros(n - 1, n - 1);
                for (mi, r) in (0..n).filter(|&r| r != i).enumerate() {
                    for (mj, c) in (0..n).filter(|&c| c != j).enumerate() {
                        minor[(mi, mj)] = self[(r, c)].clone();
                    }
                }
                let cofactor = minor.determinant();
                // adj = transpose of the cofactor matrix
                adj[(j, i)] = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
            }
        }
        adj
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self[(source, j)] * factor;
            self[(target, j)] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self[(i, source)] * factor;
            self[(i, target)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | …`, all nonnegative, zeros trailing.
///
/// The inverses of `U` and `V` are kept alongside because cokernel and
/// saturation computations need them.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `d₁, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Row/column operations applied to `A` and mirrored on `U`, `U⁻¹`, `V`, `V⁻¹`.
struct SmithWork {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row_multiple(target, source, factor);
        self.u.add_row_multiple(target, source, factor);
        self.u_inv.add_col_multiple(source, target, &-factor);
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col_multiple(target, source, factor);
        self.v.add_col_multiple(target, source, factor);
        self.v_inv.add_row_multiple(source, target, &-factor);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the smallest nonzero entry of the trailing submatrix.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in row `t` / column `t` beyond the pivot.
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut consider = |pos: (usize, usize), a: &IntMatrix| {
            let x = &a[pos];
            if !x.is_zero() && best.is_none_or(|b| x.abs() < a[b].abs()) {
                best = Some(pos);
            }
        };
        for i in t + 1..self.a.rows() {
            consider((i, t), &self.a);
        }
        for j in t + 1..self.a.cols() {
            consider((t, j), &self.a);
        }
        best
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }
}

/// Smith normal form by elementary row and column operations, always
/// pivoting on the entry of least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = SmithWork {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let Some(pos) = w.smallest_in_block(t) else {
            break;
        };
        w.move_to_pivot(t, pos);
        loop {
            let pivot = w.a[(t, t)].clone();
            for i in t + 1..rows {
                let q = w.a[(i, t)].div_floor(&pivot);
                w.add_row(i, t, &-q);
            }
            for j in t + 1..cols {
                let q = w.a[(t, j)].div_floor(&pivot);
                w.add_col(j, t, &-q);
            }
            if let Some(pos) = w.smallest_in_cross(t) {
                // a remainder survived; it is smaller than the pivot
                if pos.0 == t {
                    w.swap_cols(t, pos.1);
                } else {
                    w.swap_rows(t, pos.0);
                }
                continue;
            }
            // divisibility of the remaining block by the pivot
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    SmithDecomposition {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Row-style Hermite normal form of the lattice generated by `vectors`:
/// nonzero rows in echelon form, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Two vector sets generate the same lattice iff
/// their Hermite forms agree.
pub fn hermite_normal_form(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    let mut rows: Vec<IntVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    for v in &rows {
        assert_eq!(v.dim(), dim);
    }
    let mut pivot_row = 0;
    for col in 0..dim {
        loop {
            // smallest nonzero entry at or below pivot_row in this column
            let best = (pivot_row..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let pivot = rows[pivot_row][col].clone();
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&pivot);
                let sub = rows[pivot_row].scale(&q);
                rows[i] = &rows[i] - &sub;
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                rows[pivot_row] = -&rows[pivot_row];
            }
            let pivot = rows[pivot_row][col].clone();
            for i in 0..pivot_row {
                let q = rows[i][col].div_floor(&pivot);
                let sub = rows[pivot_row].scale(&q);
                rows[i] = &rows[i] - &sub;
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Dimension of the ℚ-span.
pub fn rank(vectors: &[IntVector], dim: usize) -> usize {
    hermite_normal_form(vectors, dim).len()
}

/// A unimodular change of coordinates adapted to a saturated sublattice.
///
/// The first `rank` rows of `basis` form a ℤ-basis of the saturation
/// `span_ℚ(vectors) ∩ ℤⁿ`; together all rows form a basis of ℤⁿ.
#[derive(Clone, Debug)]
pub struct SublatticeChart {
    basis: IntMatrix,
    coords: IntMatrix,
    rank: usize,
}

impl SublatticeChart {
    pub fn new(vectors: &[IntVector], dim: usize) -> Self {
        let a = IntMatrix::from_rows(vectors, dim);
        let snf = smith_normal_form(&a);
        SublatticeChart {
            rank: snf.rank(),
            basis: snf.v_inv,
            coords: snf.v,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// The basis vectors of the saturated sublattice.
    pub fn sublattice_basis(&self) -> Vec<IntVector> {
        (0..self.rank).map(|i| self.basis.row(i)).collect()
    }

    /// Full unimodular basis of ℤⁿ whose first `rank` rows span the sublattice.
    pub fn full_basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates in the sublattice basis, or `None` when `x` lies outside
    /// the ℚ-span.
    pub fn to_local(&self, x: &IntVector) -> Option<IntVector> {
        let all = self.coords.transpose().apply(x);
        if all.coords()[self.rank..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntVector(all.0[..self.rank].to_vec()))
    }

    pub fn from_local(&self, c: &IntVector) -> IntVector {
        assert_eq!(c.dim(), self.rank);
        let mut out = IntVector::zero(self.ambient_dim());
        for (i, ci) in c.coords().iter().enumerate() {
            out = &out + &self.basis.row(i).scale(ci);
        }
        out
    }
}

/// A ℤ-basis of the saturation of the lattice generated by `vectors`,
/// returned in Hermite normal form.
pub fn saturation_basis(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    let chart = SublatticeChart::new(vectors, dim);
    hermite_normal_form(&chart.sublattice_basis(), dim)
}

/// Whether `vectors` can be completed to a ℤ-basis of ℤⁿ. Linearly dependent
/// input gives `false`.
pub fn extends_to_basis(vectors: &[IntVector], dim: usize) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(vectors, dim));
    snf.rank() == vectors.len() && snf.diagonal().iter().all(One::is_one)
}

/// A ℤ-basis of `{x : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let det = m.determinant();
    if !m.is_square() || !det.abs().is_one() {
        return Err(Error::DegenerateInput(format!(
            "matrix {m} is not unimodular"
        )));
    }
    let adj = m.adjugate();
    let mut inv = adj.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            inv[(i, j)] = &adj[(i, j)] * &det;
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    fn check_smith(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U·A·V ≠ D for {a}");
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must trail: {diag:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain: {diag:?}");
            }
        }
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&v(&[2, 4])).unwrap(), v(&[1, 2]));
        assert_eq!(primitive_part(&v(&[3, -6, 9])).unwrap(), v(&[1, -2, 3]));
        assert!(matches!(
            primitive_part(&v(&[0, 0])),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn smith_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(smith_normal_form(&id).d, id);

        let a = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]));
        check_smith(&a);

        let a = IntMatrix::from_i64_rows(&[&[2]]);
        assert_eq!(smith_normal_form(&a).d, a);
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the result must be diag(1, 6)
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check_smith(&a);
    }

    #[test]
    fn smith_rectangular_and_empty() {
        check_smith(&IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        check_smith(&IntMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 0]]));
        check_smith(&IntMatrix::zeros(0, 3));
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation_basis(&[v(&[1, 0])], 2), vec![v(&[1, 0])]);
        assert_eq!(
            saturation_basis(&[v(&[1, 1]), v(&[-1, 1])], 2),
            vec![v(&[1, 0]), v(&[0, 1])]
        );
        assert!(saturation_basis(&[], 2).is_empty());
        // index-2 sublattice of ℤ² has trivial saturation index
        let snf = smith_normal_form(&IntMatrix::from_i64_rows(&[&[1, 1], &[-1, 1]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn extends_to_basis_examples() {
        assert!(extends_to_basis(&[v(&[1, 0]), v(&[1, 1])], 2));
        assert!(!extends_to_basis(&[v(&[1, 0]), v(&[1, 2])], 2));
        assert!(!extends_to_basis(&[v(&[2, 4])], 2));
        assert!(!extends_to_basis(&[v(&[1, 0]), v(&[2, 0])], 2));
        assert!(extends_to_basis(&[v(&[1, 2, 3])], 3));
    }

    #[test]
    fn chart_round_trip() {
        let chart = SublatticeChart::new(&[v(&[2, 2, 0]), v(&[0, 3, 3])], 3);
        assert_eq!(chart.rank(), 2);
        let x = v(&[1, 0, -1]);
        let local = chart.to_local(&x).unwrap();
        assert_eq!(chart.from_local(&local), x);
        assert!(chart.to_local(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(m.determinant(), BigInt::from(1));
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
        let m = IntMatrix::from_i64_rows(&[&[0, 2], &[3, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-6));
        assert_eq!(m.mul(&m.adjugate()), {
            let mut d = IntMatrix::identity(2);
            d[(0, 0)] = BigInt::from(-6);
            d[(1, 1)] = BigInt::from(-6);
            d
        });
        assert!(unimodular_inverse(&m).is_err());
    }

    #[test]
    fn kernel_basis() {
        let a = IntMatrix::from_i64_rows(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(a.apply(x).is_zero());
        }
        assert!(extends_to_basis(&k, 3));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-12i64..=12, r * c).prop_map(move |e| {
                let rows: Vec<IntVector> = e.chunks(c).map(IntVector::from_i64s).collect();
                IntMatrix::from_rows(&rows, c)
            })
        })
    }

    fn nonzero_vector() -> impl Strategy<Value = IntVector> {
        proptest::collection::vec(-30i64..=30, 1..5)
            .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
            .prop_map(IntVector::from)
    }

    proptest! {
        #[test]
        fn smith_decomposition_is_exact(a in small_matrix()) {
            check_smith(&a);
        }

        #[test]
        fn primitive_part_is_idempotent(x in nonzero_vector()) {
            let p = primitive_part(&x).unwrap();
            prop_assert!(p.is_primitive());
            prop_assert_eq!(primitive_part(&p).unwrap(), p.clone());
            // positive multiple
            let g = x.content();
            prop_assert_eq!(p.scale(&g), x);
        }

        #[test]
        fn saturation_is_idempotent(a in small_matrix()) {
            let rows = a.row_vectors();
            let sat = saturation_basis(&rows, a.cols());
            prop_assert_eq!(sat.len(), rank(&rows, a.cols()));
            let again = saturation_basis(&sat, a.cols());
            prop_assert_eq!(hermite_normal_form(&again, a.cols()), hermite_normal_form(&sat, a.cols()));
        }

        #[test]
        fn single_vector_extends_iff_primitive(x in nonzero_vector()) {
            prop_assert_eq!(extends_to_basis(std::slice::from_ref(&x), x.dim()), x.is_primitive());
        }
    }
}
