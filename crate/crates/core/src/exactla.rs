//! Exact dense linear algebra over ℚ and 𝔽_p.
//!
//! Over ℚ every row is first cleared of denominators and the elimination runs
//! on integers with the fraction-free (Bareiss) update
//! `a_ij ← (p·a_ij − a_ic·a_rj) / p_prev`, whose divisions are exact because
//! every intermediate entry is a minor of the input. Gauss–Jordan form is
//! reached without ever forming a fraction; the single division per entry
//! happens at the end. Pivoting is deterministic: leftmost column first,
//! earliest row within it.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::polyring::{Monomial, Polynomial};

/// Largest polynomial matrix whose determinant is expanded symbolically.
pub const MAX_SYMBOLIC_DET: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
    row_labels: Option<Vec<Monomial>>,
    col_labels: Option<Vec<Monomial>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            if row.iter().any(|s| s.field() != field) {
                return Err(Error::MixedFields);
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            field,
            data,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular input")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len(), field);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn with_labels(mut self, rows: Vec<Monomial>, cols: Vec<Monomial>) -> Result<Self> {
        if rows.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rows.len(),
            });
        }
        if cols.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: cols.len(),
            });
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn row_labels(&self) -> Option<&[Monomial]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Monomial]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
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
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in &mut out.data {
            *a = &*a * c;
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).pivot_columns.len()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivot_columns: Vec<usize>,
    pub cols: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<Scalar>>,
    pub pivot_columns: Vec<usize>,
}

impl KernelResult {
    pub fn nullity(&self) -> usize {
        self.kernel_basis.len()
    }
}

pub fn rref(m: &Matrix) -> Rref {
    match m.field {
        FieldSpec::Rational => rref_rational(m),
        FieldSpec::Prime(p) => rref_prime(m, p),
    }
}

/// Clears the denominators of each row. Rows keep their span.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                let r = s.as_rational().expect("rational matrix");
                acc.lcm(r.denom())
            });
            row.iter()
                .map(|s| {
                    let r = s.as_rational().unwrap();
                    r.numer() * (&lcm / r.denom())
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Gauss–Jordan elimination in place. Returns the pivot
/// columns; on return every pivot row has the common value `d` at its pivot
/// and zeros in the other pivot columns, where `d` is the last pivot used.
fn bareiss_gauss_jordan(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == m {
            break;
        }
        let Some(pr) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let (before, rest) = a.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        let p = pivot_row[col].clone();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = std::mem::take(&mut row[col]);
            for j in 0..cols {
                if j == col {
                    continue;
                }
                let pj = &pivot_row[j];
                if row[j].is_zero() && (f.is_zero() || pj.is_zero()) {
                    continue;
                }
                let mut v = &p * &row[j];
                if !f.is_zero() && !pj.is_zero() {
                    v -= &f * pj;
                }
                row[j] = if prev.is_one() {
                    v
                } else {
                    debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                    v / &prev
                };
            }
        }
        prev = p;
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn rref_rational(m: &Matrix) -> Rref {
    let mut a = integer_rows(m);
    let pivots = bareiss_gauss_jordan(&mut a, m.cols);
    let rows = pivots
        .iter()
        .enumerate()
        .map(|(t, &c)| {
            let d = a[t][c].clone();
            a[t].iter()
                .map(|v| Scalar::Rational(BigRational::new(v.clone(), d.clone())))
                .collect()
        })
        .collect();
    Rref {
        rows,
        pivot_columns: pivots,
        cols: m.cols,
    }
}

fn prime_rows(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|s| match s {
                    Scalar::Prime { value, .. } => *value,
                    Scalar::Rational(_) => unreachable!("prime matrix"),
                })
                .collect()
        })
        .collect()
}

fn gauss_jordan_mod_p(a: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == m {
            break;
        }
        let Some(pr) = (r..m).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = FieldSpec::Prime(p).from_i64(a[r][col] as i64).inv().unwrap();
        let inv = match inv {
            Scalar::Prime { value, .. } => value,
            _ => unreachable!(),
        };
        for v in a[r].iter_mut() {
            *v = *v * inv % p;
        }
        let (before, rest) = a.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn rref_prime(m: &Matrix, p: u64) -> Rref {
    let mut a = prime_rows(m);
    let pivots = gauss_jordan_mod_p(&mut a, m.cols, p);
    let rows = a
        .into_iter()
        .take(pivots.len())
        .map(|row| {
            row.into_iter()
                .map(|value| Scalar::Prime { value, modulus: p })
                .collect()
        })
        .collect();
    Rref {
        rows,
        pivot_columns: pivots,
        cols: m.cols,
    }
}

/// Rank of the denominator-cleared integer matrix reduced modulo `p`.
/// Never exceeds the rank over ℚ, so a full value certifies full rank.
pub fn modular_rank(m: &Matrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = match m.field {
        FieldSpec::Rational => integer_rows(m)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        let r = v.mod_floor(&BigInt::from(p));
                        u64::try_from(r).unwrap()
                    })
                    .collect()
            })
            .collect(),
        FieldSpec::Prime(q) => {
            assert_eq!(p, q, "modular rank of a prime-field matrix needs the same modulus");
            prime_rows(m)
        }
    };
    gauss_jordan_mod_p(&mut a, m.cols, p).len()
}

pub fn rank_kernel(m: &Matrix) -> KernelResult {
    let r = rref(m);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &c in &r.pivot_columns {
            v[c] = true;
        }
        v
    };
    let kernel_basis = (0..m.cols)
        .filter(|&f| !pivot_set[f])
        .map(|f| {
            let mut v = vec![m.field.zero(); m.cols];
            v[f] = m.field.one();
            for (row, &c) in r.rows.iter().zip(&r.pivot_columns) {
                v[c] = -&row[f];
            }
            v
        })
        .collect();
    KernelResult {
        rank: r.pivot_columns.len(),
        kernel_basis,
        pivot_columns: r.pivot_columns,
    }
}

pub fn det_ff(m: &Matrix) -> Result<Scalar> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(m.field.one());
    }
    match m.field {
        FieldSpec::Rational => {
            let mut a = integer_rows(m);
            // integer_rows multiplied row i by the lcm of its denominators
            let mut scale = BigInt::one();
            for i in 0..n {
                let lcm = m.row(i).iter().fold(BigInt::one(), |acc, s| {
                    acc.lcm(s.as_rational().unwrap().denom())
                });
                scale *= lcm;
            }
            let mut sign = 1i32;
            let mut prev = BigInt::one();
            for k in 0..n {
                let Some(pr) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(m.field.zero());
                };
                if pr != k {
                    a.swap(pr, k);
                    sign = -sign;
                }
                for i in k + 1..n {
                    for j in k + 1..n {
                        let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                        a[i][j] = v / &prev;
                    }
                    a[i][k] = BigInt::zero();
                }
                prev = a[k][k].clone();
            }
            let det = if sign < 0 { -prev } else { prev };
            Ok(Scalar::Rational(BigRational::new(det, scale)))
        }
        FieldSpec::Prime(p) => {
            let mut a = prime_rows(m);
            let mut det = m.field.one();
            for k in 0..n {
                let Some(pr) = (k..n).find(|&i| a[i][k] != 0) else {
                    return Ok(m.field.zero());
                };
                if pr != k {
                    a.swap(pr, k);
                    det = -det;
                }
                let pivot = m.field.from_i64(a[k][k] as i64);
                let inv = match pivot.inv().unwrap() {
                    Scalar::Prime { value, .. } => value,
                    _ => unreachable!(),
                };
                det *= &pivot;
                for i in k + 1..n {
                    let f = a[i][k] * inv % p;
                    if f == 0 {
                        continue;
                    }
                    for j in k..n {
                        a[i][j] = (a[i][j] + p - f * a[k][j] % p) % p;
                    }
                }
            }
            Ok(det)
        }
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// successive rows, memoizing the minors on each column subset.
pub fn det_poly(entries: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = entries.len();
    if n > MAX_SYMBOLIC_DET {
        return Err(Error::TooLarge {
            what: "symbolic determinant",
            size: n,
            limit: MAX_SYMBOLIC_DET,
        });
    }
    for row in entries {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    let Some(first) = entries.first().and_then(|r| r.first()) else {
        return Err(Error::Precondition(
            "cannot infer the ring of an empty polynomial matrix".into(),
        ));
    };
    let (n_vars, field) = (first.n_vars(), first.field());
    for p in entries.iter().flatten() {
        if p.field() != field || p.n_vars() != n_vars {
            return Err(Error::MixedFields);
        }
    }
    // minors[mask] = det(rows 0..popcount(mask), columns in mask)
    let mut minors: HashMap<u32, Polynomial> = HashMap::new();
    minors.insert(0, Polynomial::one(n_vars, field));
    for r in 0..n {
        let mut next = HashMap::new();
        for (mask, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 || entries[r][j].is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << j);
                // position of column j among the columns of new_mask
                let idx = (new_mask & ((1 << j) - 1)).count_ones() as usize;
                let term = &entries[r][j] * minor;
                let term = if (r + idx) % 2 == 1 { -&term } else { term };
                next.entry(new_mask)
                    .and_modify(|acc: &mut Polynomial| *acc = &*acc + &term)
                    .or_insert(term);
            }
        }
        minors = next;
    }
    let full = (1u32 << n) - 1;
    Ok(minors
        .remove(&full)
        .unwrap_or_else(|| Polynomial::zero(n_vars, field)))
}

/// Coordinates of `v` in the span of `basis`, or `None` when outside it.
/// For a dependent family the free coordinates are set to zero.
pub fn coords_in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>> {
    let len = v.len();
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    let Some(field) = v.first().map(Scalar::field).or_else(|| {
        basis.first().and_then(|b| b.first()).map(Scalar::field)
    }) else {
        // zero-length vectors: every family spans the (only) zero vector
        return Ok(Some(Vec::new()));
    };
    let k = basis.len();
    let mut aug = Matrix::zeros(len, k + 1, field);
    for (j, b) in basis.iter().enumerate() {
        for (i, s) in b.iter().enumerate() {
            aug.set(i, j, s.clone());
        }
    }
    for (i, s) in v.iter().enumerate() {
        aug.set(i, k, s.clone());
    }
    let r = rref(&aug);
    if r.pivot_columns.last() == Some(&k) {
        return Ok(None);
    }
    let mut coords = vec![field.zero(); k];
    for (row, &c) in r.rows.iter().zip(&r.pivot_columns) {
        coords[c] = row[k].clone();
    }
    Ok(Some(coords))
}

/// `true` when every vector of `a` lies in the span of `b` and vice versa.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<bool> {
    for v in a {
        if coords_in_span(v, b)?.is_none() {
            return Ok(false);
        }
    }
    for v in b {
        if coords_in_span(v, a)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
