//! Dense matrices over the integers, with Hermite normal form, integer
//! kernels and integer solving.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ext_gcd;
use crate::error::{Error, Result};

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `v^T M`.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.rows, v.len(), "vector-matrix dimension mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn sum_of_squares(&self) -> BigInt {
        self.data.iter().map(|x| x * x).sum()
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.to_rows();
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
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rational inverse, `None` for singular matrices.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(piv, col);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..2 * n {
                        let t = &f * &a[col][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Integer inverse, `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let mut rows = Vec::with_capacity(self.rows);
        for r in inv {
            let mut row = Vec::with_capacity(r.len());
            for x in r {
                if !x.is_integer() {
                    return None;
                }
                row.push(x.to_integer());
            }
            rows.push(row);
        }
        IntMatrix::from_rows(rows).ok()
    }

    /// The matrix with columns `from..to`.
    pub fn columns(&self, from: usize, to: usize) -> IntMatrix {
        Self::from_fn(self.rows, to - from, |i, j| self.get(i, from + j).clone())
    }

    /// The submatrix made of the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    fn col_combine(&mut self, p: usize, q: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        // (col_p, col_q) <- (a col_p + b col_q, c col_p + d col_q)
        for i in 0..self.rows {
            let x = self.get(i, p).clone();
            let y = self.get(i, q).clone();
            self.set(i, p, a * &x + b * &y);
            self.set(i, q, c * &x + d * &y);
        }
    }

    fn col_axpy(&mut self, target: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            let idx = i * self.cols + target;
            self.data[idx] += v;
        }
    }

    fn col_neg(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl IntMatrix {
    /// JSON row-major array of integer rows.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| serde_json::Value::Array(self.row(i).iter().map(int_to_json).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Invalid("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Invalid("matrix row must be an array".into()))?
                    .iter()
                    .map(int_from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

/// An integer as an exact JSON number.
pub fn int_to_json(x: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(x.to_string().parse().expect("integer literal"))
}

pub fn int_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Invalid(format!("expected an integer, found {n}"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|_| Error::Invalid(format!("expected an integer, found {s:?}"))),
        other => Err(Error::Invalid(format!("expected an integer, found {other}"))),
    }
}

/// Column Hermite form `A U = H` with `U` unimodular.
///
/// `H` is in column echelon form: pivot `k` sits at `(pivot_rows[k], k)`, is
/// positive, and everything to its right in that row is zero. Columns
/// `rank..` of `H` vanish, so the matching columns of `U` span the integer
/// kernel of `A`.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pc = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..a.rows() {
        if pc == n {
            break;
        }
        for j in pc + 1..n {
            if h.get(i, j).is_zero() {
                continue;
            }
            let x = h.get(i, pc).clone();
            let y = h.get(i, j).clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let c = -(&y / &g);
            let d = &x / &g;
            // new col pc = s*col_pc + t*col_j, new col j = c*col_pc + d*col_j
            h.col_combine(pc, j, &s, &t, &c, &d);
            u.col_combine(pc, j, &s, &t, &c, &d);
        }
        if h.get(i, pc).is_zero() {
            continue;
        }
        if h.get(i, pc).is_negative() {
            h.col_neg(pc);
            u.col_neg(pc);
        }
        let p = h.get(i, pc).clone();
        for k in 0..pc {
            let q = -h.get(i, k).div_floor(&p);
            if !q.is_zero() {
                h.col_axpy(k, pc, &q);
                u.col_axpy(k, pc, &q);
            }
        }
        pivot_rows.push(i);
        pc += 1;
    }
    ColumnHermite {
        h,
        u,
        rank: pc,
        pivot_rows,
    }
}

/// A basis of the integer kernel `{x in Z^n : A x = 0}`, as matrix columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let ch = column_hermite(a);
    ch.u.columns(ch.rank, a.cols())
}

pub fn rank(a: &IntMatrix) -> usize {
    column_hermite(a).rank
}

/// Solves `A x = b` over the integers.
///
/// Returns a particular solution and a kernel basis (as columns), or `None`
/// when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<(Vec<BigInt>, IntMatrix)> {
    assert_eq!(a.rows(), b.len());
    let ch = column_hermite(a);
    let mut y = vec![BigInt::zero(); a.cols()];
    let mut k = 0;
    for i in 0..a.rows() {
        let partial: BigInt = (0..k).map(|c| ch.h.get(i, c) * &y[c]).sum();
        let rest = &b[i] - partial;
        if k < ch.rank && ch.pivot_rows[k] == i {
            let p = ch.h.get(i, k);
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() {
                return None;
            }
            y[k] = q;
            k += 1;
        } else if !rest.is_zero() {
            return None;
        }
    }
    let x = ch.u.mul_vec(&y);
    Some((x, ch.u.columns(ch.rank, a.cols())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(), BigInt::from(1));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).inverse().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
    }

    #[test]
    fn hermite_kernel_and_solve() {
        let a = m(&[&[1, 1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 3);
        for j in 0..3 {
            assert!(a.mul_vec(&k.column(j)).iter().all(|x| x.is_zero()));
        }
        let (x, _) = solve_integer(&a, &[BigInt::from(7)]).unwrap();
        assert_eq!(x.iter().sum::<BigInt>(), BigInt::from(7));
        assert!(solve_integer(&m(&[&[2, 4]]), &[BigInt::from(3)]).is_none());
        let ch = column_hermite(&m(&[&[4, 6], &[1, 2]]));
        assert_eq!(ch.rank, 2);
        assert_eq!(ch.h.get(0, 1), &BigInt::zero());
        assert_eq!(ch.u.det().abs(), BigInt::one());
    }
}
