//! Square matrices over `F_p`.
//!
//! Points of projective space are column vectors and a matrix acts on the
//! left, so row `j` of `M^i` gives the `j`-th coordinate of the image.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::poly::Poly;

/// Dense `dim x dim` matrix, row-major, entries reduced mod `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    dim: usize,
    entries: Vec<u32>,
}

impl Matrix {
    pub fn zero(field: &PrimeField, dim: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(field: &PrimeField, dim: usize) -> Matrix {
        let mut m = Matrix::zero(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing mod `p`.
    pub fn from_rows(field: &PrimeField, rows: &[Vec<i64>]) -> Result<Matrix> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Parameter("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Parameter(format!(
                    "row {} has {} entries, expected {dim}",
                    r + 1,
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&v| field.reduce_signed(v)));
        }
        Ok(Matrix {
            field: field.clone(),
            dim,
            entries,
        })
    }

    /// Builds a matrix from row-major residues.
    pub fn from_residues(field: &PrimeField, dim: usize, entries: Vec<u32>) -> Result<Matrix> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Parameter(format!(
                "{} entries do not form a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= field.modulus()) {
            return Err(Error::Parameter(format!(
                "entry {bad} not reduced mod {}",
                field.modulus()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            dim,
            entries,
        })
    }

    /// Parses `3,2,1;3,3,1;0,3,4`: rows separated by `;`, entries by `,`.
    pub fn parse(field: &PrimeField, text: &str) -> Result<Matrix> {
        let rows = text
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("bad matrix entry {s:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, &rows).map_err(|e| match e {
            Error::Parameter(msg) => Error::Parse(msg),
            other => other,
        })
    }

    /// The text format accepted by [`Matrix::parse`].
    pub fn to_text(&self) -> String {
        (0..self.dim)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at zero-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: u32) {
        self.entries[row * self.dim + col] = self.field.reduce(v as u64);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Parameter(format!(
                "matrices over F_{} and F_{}",
                self.field.modulus(),
                other.field.modulus()
            )));
        }
        if self.dim != other.dim {
            return Err(Error::Parameter(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = f.add(out[idx], f.mul(a, other.entries[k * n + j]));
                }
            }
        }
        Matrix {
            field: f.clone(),
            dim: n,
            entries: out,
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let f = &self.field;
        Ok(Matrix {
            field: f.clone(),
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = &self.field;
        let c = f.reduce(c as u64);
        Matrix {
            field: f.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `A^k` by square-and-multiply.
    pub fn pow(&self, mut k: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.dim {
            return Err(Error::Parameter(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.dim,
                self.dim
            )));
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.dim)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &x)| f.add(acc, f.mul(a, x)))
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> u32 {
        let f = &self.field;
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1 % f.modulus();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    /// Evaluates `g(A)` by Horner's rule.
    pub fn eval_poly(&self, g: &Poly) -> Matrix {
        let mut acc = Matrix::zero(&self.field, self.dim);
        for &c in g.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self);
            for i in 0..self.dim {
                let idx = i * self.dim + i;
                acc.entries[idx] = self.field.add(acc.entries[idx], c);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F_{}]({})", self.field.modulus(), self.to_text())
    }
}

/// `A * B` over `F_p`.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul(b)
}

/// `A^k`.
pub fn mat_pow(a: &Matrix, k: u64) -> Matrix {
    a.pow(k)
}

/// Companion matrix of a monic `f` of degree `m`: ones on the subdiagonal
/// and last column `(c_0, ..., c_{m-1})` where `T^m = sum c_j T^j mod f`.
///
/// Multiplication by `T` on `F_p[T]/(f)` in the basis `1, T, ..., T^{m-1}`.
/// For `T^p - T - c` the last column is `(c, 1, 0, ..., 0)` and the last
/// row is `(0, ..., 0, 1, 0)`.
pub fn companion(f: &Poly) -> Result<Matrix> {
    let m = match f.degree() {
        None | Some(0) => {
            return Err(Error::Parameter(format!(
                "companion matrix needs degree >= 1, got {f}"
            )))
        }
        Some(m) => m,
    };
    if !f.is_monic() {
        return Err(Error::Parameter(format!("{f} is not monic")));
    }
    let field = f.field();
    let mut out = Matrix::zero(field, m);
    for r in 1..m {
        out.entries[r * m + r - 1] = 1;
    }
    for r in 0..m {
        out.entries[r * m + m - 1] = field.neg(f.coeff(r));
    }
    Ok(out)
}

/// `det(T Id - A)` by Berkowitz's division-free algorithm.
pub fn char_poly(a: &Matrix) -> Poly {
    let f = a.field();
    let n = a.dim();
    // descending coefficients of the characteristic polynomial of the
    // leading r x r principal submatrix
    let mut v: Vec<u32> = vec![1];
    for r in 0..n {
        // A_{r+1} = [[B, col], [row, a_rr]] with B the leading r x r block
        let a_rr = a.get(r, r);
        let row: Vec<u32> = (0..r).map(|j| a.get(r, j)).collect();
        let mut col: Vec<u32> = (0..r).map(|i| a.get(i, r)).collect();
        // Toeplitz column: 1, -a_rr, -row.col, -row.B.col, ...
        let mut t = Vec::with_capacity(r + 2);
        t.push(1 % f.modulus());
        t.push(f.neg(a_rr));
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&col)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            t.push(f.neg(dot));
            col = (0..r)
                .map(|i| {
                    (0..r).fold(0, |acc, k| f.add(acc, f.mul(a.get(i, k), col[k])))
                })
                .collect();
        }
        // new v = T v, T lower-triangular Toeplitz of size (r+2) x (r+1)
        let mut next = vec![0u32; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &vj) in v.iter().enumerate().take(i + 1) {
                *slot = f.add(*slot, f.mul(t[i - j], vj));
            }
        }
        v = next;
    }
    v.reverse();
    Poly::from_residues(f, v)
}

/// Minimal polynomial: the lcm over the standard basis of the smallest
/// linear dependency in each Krylov sequence `e_k, A e_k, A^2 e_k, ...`.
pub fn min_poly(a: &Matrix) -> Poly {
    let field = a.field();
    let n = a.dim();
    let mut acc = Poly::one(field);
    for k in 0..n {
        let mut e = vec![0u32; n];
        e[k] = 1;
        acc = acc.lcm(&krylov_annihilator(a, e));
    }
    acc
}

/// Monic generator of the annihilator of `v` under `A`.
fn krylov_annihilator(a: &Matrix, v: Vec<u32>) -> Poly {
    let f = a.field();
    let n = a.dim();
    // echelon rows: (pivot column, vector, polynomial with vec = poly(A) v)
    let mut basis: Vec<(usize, Vec<u32>, Poly)> = Vec::new();
    let mut w = v;
    for j in 0..=n {
        let mut vec = w.clone();
        let mut comb = Poly::monomial(f, 1, j);
        for (piv, bvec, bpoly) in &basis {
            let c = vec[*piv];
            if c == 0 {
                continue;
            }
            for (x, &y) in vec.iter_mut().zip(bvec) {
                *x = f.sub(*x, f.mul(c, y));
            }
            comb = comb.sub(&bpoly.scale(c));
        }
        match vec.iter().position(|&x| x != 0) {
            None => return comb.monic(),
            Some(piv) => {
                let inv = f.inv(vec[piv]).expect("nonzero pivot");
                let vec: Vec<u32> = vec.iter().map(|&x| f.mul(x, inv)).collect();
                let comb = comb.scale(inv);
                // keep earlier rows reduced at the new pivot
                for (_, bvec, bpoly) in basis.iter_mut() {
                    let c = bvec[piv];
                    if c != 0 {
                        for (x, &y) in bvec.iter_mut().zip(&vec) {
                            *x = f.sub(*x, f.mul(c, y));
                        }
                        *bpoly = bpoly.sub(&comb.scale(c));
                    }
                }
                basis.push((piv, vec, comb));
            }
        }
        w = a.apply_unchecked(&w);
    }
    unreachable!("n + 1 Krylov vectors in dimension n are dependent")
}
