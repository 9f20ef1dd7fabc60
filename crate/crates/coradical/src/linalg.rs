//! Exact rational linear algebra: dense matrices, canonical subspaces, and
//! the kernel/sum/intersection operations the rest of the crate consumes.
//!
//! Scalars are arbitrary-precision rationals, so nothing here ever rounds.
//! Subspaces are stored as reduced row-echelon bases, which makes subspace
//! equality a plain entry-wise comparison.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar; always in lowest terms with positive denominator
/// (maintained by `num_rational`).
pub type Scalar = num_rational::BigRational;

/// Default policy cap on ambient dimensions. Dense exact arithmetic gets
/// expensive well before this; builders that accept external input enforce it.
pub const DEFAULT_DIM_CAP: usize = 512;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Rational scalar n/d.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational literal, either `"p/q"` or `"n"`.
pub fn parse_scalar(literal: &str) -> Result<Scalar> {
    let s = literal.trim();
    if let Some((_, den)) = s.split_once('/') {
        let d = BigInt::from_str(den.trim()).map_err(|e| Error::InvalidScalar {
            literal: literal.to_string(),
            reason: e.to_string(),
        })?;
        if d.is_zero() {
            return Err(Error::InvalidScalar {
                literal: literal.to_string(),
                reason: "zero denominator".to_string(),
            });
        }
    }
    Scalar::from_str(s).map_err(|e| Error::InvalidScalar {
        literal: literal.to_string(),
        reason: e.to_string(),
    })
}

/// Formats a scalar as `"p/q"`, or `"n"` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer entries.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| int(n)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    /// Horizontal concatenation; both operands must have equal row counts.
    pub fn hstack(&self, right: &Matrix) -> Result<Matrix> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: right.rows,
            });
        }
        let mut m = Matrix::zero(self.rows, self.cols + right.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..right.cols {
                *m.at_mut(i, self.cols + j) = right.at(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Vertical concatenation; both operands must have equal column counts.
    pub fn stack(&self, bottom: &Matrix) -> Result<Matrix> {
        if self.cols != bottom.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: bottom.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&bottom.entries);
        Ok(Matrix {
            rows: self.rows + bottom.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).rows
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced row-echelon basis. Rows are kept fully
/// reduced with pivots in strictly increasing column order, so reading the
/// rows out at any time yields the canonical RREF of everything inserted.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ambient: usize) -> Self {
        SpanBuilder {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` against the current rows, returning the remainder.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        v
    }

    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts a vector, returning `true` when it enlarges the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector/ambient dimension mismatch");
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[lead].is_zero() {
                continue;
            }
            let c = row[lead].clone();
            for (r, x) in row.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *r -= &c * x;
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: Matrix {
                rows: self.rows.len(),
                cols: self.ambient,
                entries: self.rows.into_iter().flatten().collect(),
            },
        }
    }
}

/// Reduced row-echelon form; zero rows are dropped, so the result has
/// exactly `rank` rows. The row space is preserved.
pub fn rref(m: &Matrix) -> Matrix {
    let mut sb = SpanBuilder::new(m.cols);
    for i in 0..m.rows {
        sb.insert(m.row(i));
    }
    sb.into_subspace().basis
}

/// Kernel of `m` as a subspace of the column coordinate space:
/// all `v` with `m·v = 0`.
pub fn kernel(m: &Matrix) -> Subspace {
    let r = rref(m);
    let pivots: Vec<usize> = (0..r.rows)
        .map(|i| {
            r.row(i)
                .iter()
                .position(|x| !x.is_zero())
                .expect("rref rows are nonzero")
        })
        .collect();
    let mut sb = SpanBuilder::new(m.cols);
    let mut next_pivot = 0;
    for col in 0..m.cols {
        if next_pivot < pivots.len() && pivots[next_pivot] == col {
            next_pivot += 1;
            continue;
        }
        // free column: back-substitute a basis vector
        let mut v = vec![Scalar::zero(); m.cols];
        v[col] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.at(i, col).clone();
        }
        sb.insert(&v);
    }
    sb.into_subspace()
}

/// Row-major flattening of a tensor index pair: `(i, j) -> i*d2 + j`.
pub fn tensor_flatten(i: usize, j: usize, d1: usize, d2: usize) -> Result<usize> {
    if i >= d1 {
        return Err(Error::IndexOutOfRange { index: i, dim: d1 });
    }
    if j >= d2 {
        return Err(Error::IndexOutOfRange { index: j, dim: d2 });
    }
    Ok(i * d2 + j)
}

/// A linear subspace of a coordinate space, stored as an RREF row basis.
///
/// The representation is canonical: two subspaces are equal as sets exactly
/// when their bases compare equal entry-wise, which is what `PartialEq` does.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let mut sb = SpanBuilder::new(ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            sb.insert(v);
        }
        Ok(sb.into_subspace())
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        Subspace {
            ambient: m.cols,
            basis: rref(m),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows == 0
    }

    /// The canonical RREF basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.basis.rows).map(|i| self.basis.row(i))
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows)
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("rref rows are nonzero")
            })
            .collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut sb = self.to_builder();
        for row in other.basis_rows() {
            sb.insert(row);
        }
        Ok(sb.into_subspace())
    }

    /// Set-theoretic intersection, via the kernel of the stacked-basis
    /// coefficient system: solutions of `alpha·A = beta·B` pulled back to `A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let p = self.dim();
        let q = other.dim();
        if p == 0 || q == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // columns: p coefficients for rows of self, q for rows of other
        let mut coeff = Matrix::zero(self.ambient, p + q);
        for (r, row) in self.basis_rows().enumerate() {
            for (c, x) in row.iter().enumerate() {
                *coeff.at_mut(c, r) = x.clone();
            }
        }
        for (r, row) in other.basis_rows().enumerate() {
            for (c, x) in row.iter().enumerate() {
                *coeff.at_mut(c, p + r) = -x.clone();
            }
        }
        let ker = kernel(&coeff);
        let mut sb = SpanBuilder::new(self.ambient);
        for sol in ker.basis_rows() {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (r, row) in self.basis_rows().enumerate() {
                if sol[r].is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *x += &sol[r] * b;
                    }
                }
            }
            sb.insert(&v);
        }
        Ok(sb.into_subspace())
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.to_builder().contains(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        let sb = self.to_builder();
        for row in other.basis_rows() {
            if !sb.contains(row) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_builder(&self) -> SpanBuilder {
        SpanBuilder {
            ambient: self.ambient,
            rows: self.basis.row_vecs(),
            pivots: self.pivots(),
        }
    }

    /// Standard basis vectors at the non-pivot columns: a deterministic
    /// complement of this subspace in the ambient space.
    pub fn standard_complement(&self) -> Vec<Vec<Scalar>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for c in 0..self.ambient {
            if !pivots.contains(&c) {
                let mut v = vec![Scalar::zero(); self.ambient];
                v[c] = Scalar::one();
                out.push(v);
            }
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

/// Checks that a vector is not identically zero.
pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Trait-free scalar predicates for downstream crates.
pub fn scalar_is_zero(s: &Scalar) -> bool {
    s.is_zero()
}

pub fn scalar_is_one(s: &Scalar) -> bool {
    s.is_one()
}

/// Scales `v` so its first nonzero entry is `1`; no-op on the zero vector.
pub fn normalize_leading(v: &mut [Scalar]) {
    if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
        let inv = v[lead].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &inv;
            }
        }
    }
}

/// Dot product of equal-length coordinate vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `a + c·b` in place.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Absolute value helper for pretty-printing tests.
pub fn scalar_abs(s: &Scalar) -> Scalar {
    s.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    fn vec_i(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn scalar_parse_and_format() {
        assert_eq!(parse_scalar("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-4/2").unwrap(), int(-2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert_eq!(format_scalar(&frac(1, 2)), "1/2");
        assert_eq!(format_scalar(&int(-3)), "-3");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(2);
        assert_eq!(rref(&id), id);
    }

    #[test]
    fn rref_drops_zero_rows() {
        let r = rref(&m(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, m(&[&[1, 2]]));
    }

    #[test]
    fn rref_swaps_and_normalizes() {
        let r = rref(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, Matrix::identity(2));
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = kernel(&Matrix::zero(2, 3));
        assert_eq!(k, Subspace::full(3));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel(&Matrix::identity(3));
        assert!(k.is_zero());
    }

    #[test]
    fn kernel_of_sum_row() {
        let k = kernel(&m(&[&[1, 1]]));
        assert_eq!(k, Subspace::span(2, &[vec_i(&[1, -1])]).unwrap());
    }

    #[test]
    fn sum_is_idempotent() {
        let x = Subspace::span(3, &[vec_i(&[1, 2, 3])]).unwrap();
        assert_eq!(x.sum(&x).unwrap(), x);
    }

    #[test]
    fn sum_of_axes() {
        let e1 = Subspace::span(3, &[vec_i(&[1, 0, 0])]).unwrap();
        let e2 = Subspace::span(3, &[vec_i(&[0, 1, 0])]).unwrap();
        let s = e1.sum(&e2).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&vec_i(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn sum_spans_plane() {
        let a = Subspace::span(2, &[vec_i(&[1, 1])]).unwrap();
        let b = Subspace::span(2, &[vec_i(&[1, -1])]).unwrap();
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
    }

    #[test]
    fn intersect_self_and_axes() {
        let x = Subspace::span(3, &[vec_i(&[1, 0, 1]), vec_i(&[0, 1, 0])]).unwrap();
        assert_eq!(x.intersect(&x).unwrap(), x);
        let e1 = Subspace::span(3, &[vec_i(&[1, 0, 0])]).unwrap();
        let e2 = Subspace::span(3, &[vec_i(&[0, 1, 0])]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn intersect_planes_in_dim3() {
        let a = Subspace::span(3, &[vec_i(&[1, 0, 0]), vec_i(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[vec_i(&[0, 1, 0]), vec_i(&[0, 0, 1])]).unwrap();
        let expected = Subspace::span(3, &[vec_i(&[0, 1, 0])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), expected);
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::span(3, &[vec_i(&[0, 1, 0])]).unwrap();
        assert!(s.contains(&vec_i(&[0, 0, 0])).unwrap());
        assert!(!s.contains(&vec_i(&[1, 0, 0])).unwrap());
        let t = Subspace::span(3, &[vec_i(&[1, 0, 1]), vec_i(&[0, 1, 1])]).unwrap();
        assert!(t.contains(&vec_i(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&vec_i(&[1, 2, 3])).is_err());
    }

    #[test]
    fn tensor_flatten_examples() {
        assert_eq!(tensor_flatten(0, 0, 3, 4).unwrap(), 0);
        assert_eq!(tensor_flatten(1, 0, 3, 4).unwrap(), 4);
        assert_eq!(tensor_flatten(2, 3, 3, 4).unwrap(), 11);
        assert!(tensor_flatten(3, 0, 3, 4).is_err());
        assert!(tensor_flatten(0, 4, 3, 4).is_err());
    }

    #[test]
    fn standard_complement_completes_basis() {
        let s = Subspace::span(4, &[vec_i(&[1, 2, 0, 0]), vec_i(&[0, 0, 1, 5])]).unwrap();
        let comp = s.standard_complement();
        assert_eq!(comp.len(), 2);
        let mut sb = s.to_builder();
        for v in &comp {
            assert!(sb.insert(v));
        }
        assert_eq!(sb.dim(), 4);
    }

    prop_compose! {
        fn small_matrix()(rows in 1usize..5, cols in 1usize..5)
            (entries in prop::collection::vec(-4i64..5, rows * cols),
             rows in Just(rows), cols in Just(cols))
            -> Matrix
        {
            Matrix {
                rows,
                cols,
                entries: entries.into_iter().map(int).collect(),
            }
        }
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(mat in small_matrix()) {
            let r = rref(&mat);
            prop_assert_eq!(rref(&r), r.clone());
        }

        #[test]
        fn rref_preserves_row_space(mat in small_matrix()) {
            let r = rref(&mat);
            let orig = Subspace::row_space(&mat);
            let reduced = Subspace::row_space(&r);
            prop_assert!(orig.contains_subspace(&reduced).unwrap());
            prop_assert!(reduced.contains_subspace(&orig).unwrap());
        }

        #[test]
        fn rank_nullity(mat in small_matrix()) {
            prop_assert_eq!(mat.rank() + kernel(&mat).dim(), mat.cols());
        }

        #[test]
        fn grassmann_dimension_formula(a in small_matrix(), b_entries in prop::collection::vec(-4i64..5, 16)) {
            let d = a.cols();
            let b = Matrix {
                rows: 16 / d.max(1),
                cols: d,
                entries: b_entries.into_iter().take((16 / d.max(1)) * d).map(int).collect(),
            };
            let sa = Subspace::row_space(&a);
            let sb = Subspace::row_space(&b);
            let sum = sa.sum(&sb).unwrap();
            let inter = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sum.dim() + inter.dim(), sa.dim() + sb.dim());
        }

        #[test]
        fn subspace_equality_is_canonical(mat in small_matrix(), perm_seed in 0u64..1000) {
            // re-span the same row space from scrambled generators
            let mut rows = mat.row_vecs();
            let n = rows.len();
            let mut s = perm_seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                rows.swap(i, (s as usize) % (i + 1));
            }
            // add a row combination to the first row
            if n >= 2 {
                let (first, rest) = rows.split_at_mut(1);
                axpy(&mut first[0], &int(3), &rest[0]);
            }
            let resp = Subspace::span(mat.cols(), &rows).unwrap();
            let orig = Subspace::row_space(&mat);
            let equal_as_sets = orig.contains_subspace(&resp).unwrap()
                && resp.contains_subspace(&orig).unwrap();
            prop_assert_eq!(equal_as_sets, orig == resp);
        }
    }
}
