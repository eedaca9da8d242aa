//! Dense matrices over `F_p` and the row-reduction toolkit built on them.

use crate::scalars::{FieldSpec, Poly, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] mod {}", self.field.p())
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::ONE;
        }
        m
    }

    /// The matrix unit with a one at `(i, j)`.
    pub fn unit(field: FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        m.set(i, j, Scalar::ONE);
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { field, rows: rows.len(), cols, data: rows.concat() }
    }

    /// Convenience constructor reducing signed integers into the field.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| field.elem(v)).collect()).collect();
        Matrix::from_rows(field, &rows)
    }

    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    /// Columns given as vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Nonzero positions in row-major order.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, _)| (k / self.cols, k % self.cols))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&FieldSpec, Scalar, Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(&f, a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: Scalar, other: &Matrix) -> Matrix {
        self.zip(other, |f, a, b| f.add(a, f.mul(c, b)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Scalar::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Whether some power of the matrix vanishes.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        // The nilpotency index is at most n, so squaring until the exponent
        // passes n decides it.
        let mut x = self.clone();
        let mut e = 1usize;
        while e < self.rows {
            if x.is_zero() {
                return true;
            }
            x = x.mul(&x);
            e *= 2;
        }
        x.is_zero()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.support().all(|(r, c)| r <= c)
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.support().all(|(r, c)| r < c)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                out.set(a, b, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, row);
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = m.get(row, c);
                m.set(row, c, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// `row[dst] += c * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let v = self.field.add(self.get(dst, k), self.field.mul(c, self.get(src, k)));
            self.set(dst, k, v);
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.rows {
            let v = self.field.add(self.get(k, dst), self.field.mul(c, self.get(k, src)));
            self.set(k, dst, v);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: Scalar) {
        for k in 0..self.cols {
            let v = self.field.mul(c, self.get(r, k));
            self.set(r, k, v);
        }
    }

    pub fn scale_col(&mut self, col: usize, c: Scalar) {
        for k in 0..self.rows {
            let v = self.field.mul(c, self.get(k, col));
            self.set(k, col, v);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, in RREF-normal form.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::ZERO; self.cols];
                v[fc] = Scalar::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Scalar::ONE);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(red.select(&rows, &cols))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let f = self.field;
        let mut m = self.clone();
        let mut det = Scalar::ONE;
        for col in 0..m.cols {
            let Some(piv) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::ZERO;
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = f.neg(det);
            }
            let p = m.get(col, col);
            det = f.mul(det, p);
            let inv = f.inv(p);
            for r in col + 1..m.rows {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&r| !h.get(r, j).is_zero()) else {
                continue;
            };
            h.swap_rows(piv, j + 1);
            h.swap_cols(piv, j + 1);
            let inv = f.inv(h.get(j + 1, j));
            for r in j + 2..n {
                let u = f.mul(h.get(r, j), inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(u, h.get(j + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.get(rr, j + 1), f.mul(u, h.get(rr, r)));
                    h.set(rr, j + 1, v);
                }
            }
        }
        // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_i
        let mut polys: Vec<Poly> = vec![Poly::one()];
        let x = Poly::new(vec![Scalar::ZERO, Scalar::ONE]);
        for k in 0..n {
            let lin = x.sub(&f, &Poly::new(vec![h.get(k, k)]));
            let mut next = lin.mul(&f, &polys[k]);
            let mut prod = Scalar::ONE;
            for i in (0..k).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coeff = f.mul(h.get(i, k), prod);
                if !coeff.is_zero() {
                    next = next.sub(&f, &polys[i].mul(&f, &Poly::new(vec![coeff])));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// Incrementally maintained reduced echelon basis of a subspace of `F_p^n`.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot position.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, r));
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(r[pc]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&r) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(at, r);
        self.pivots.insert(at, pc);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&pc| v[pc]).collect();
        self.contains(v).then_some(coords)
    }
}
