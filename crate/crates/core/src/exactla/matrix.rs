//! Dense exact matrices under the row-vector convention: a matrix `m` acts
//! on row vectors by `x ↦ x·m`.

use std::fmt;

use num_rational::BigRational;

use super::field::{Arith, Elem, FieldSpec, FpArith, QArith};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Data {
    Rat(Vec<BigRational>),
    Mod(Vec<u32>),
}

/// A dense matrix over a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Data,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

macro_rules! dispatch {
    ($m:expr, |$ctx:ident, $v:ident| $body:expr) => {
        match &$m.data {
            Data::Rat($v) => {
                let $ctx = QArith;
                $body
            }
            Data::Mod($v) => {
                let $ctx = FpArith($m.field.modulus());
                $body
            }
        }
    };
}

macro_rules! dispatch2 {
    ($a:expr, $b:expr, |$ctx:ident, $x:ident, $y:ident| $body:expr) => {
        match (&$a.data, &$b.data) {
            (Data::Rat($x), Data::Rat($y)) => {
                let $ctx = QArith;
                $body
            }
            (Data::Mod($x), Data::Mod($y)) => {
                let $ctx = FpArith($a.field.modulus());
                $body
            }
            _ => panic!("mixed-field matrix operation"),
        }
    };
}

pub(crate) trait Wrap: Arith {
    fn wrap(self, v: Vec<Self::T>) -> Data;
}

impl Wrap for QArith {
    fn wrap(self, v: Vec<BigRational>) -> Data {
        Data::Rat(v)
    }
}

impl Wrap for FpArith {
    fn wrap(self, v: Vec<u32>) -> Data {
        Data::Mod(v)
    }
}

impl Matrix {
    fn with_data(field: FieldSpec, rows: usize, cols: usize, data: Data) -> Matrix {
        Matrix { rows, cols, field, data }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        let n = rows * cols;
        let data = match field {
            FieldSpec::Rational => Data::Rat(vec![QArith.zero(); n]),
            FieldSpec::Prime { .. } => Data::Mod(vec![0; n]),
        };
        Matrix::with_data(field, rows, cols, data)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                m.set(i, j, e);
            }
        }
        m
    }

    /// Builds a matrix from small integers (reduced into the field).
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix::from_fn(field, rows, cols, |i, j| field.from_i64(entries[i * cols + j]))
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone()))
    }

    /// A 1×n row vector.
    pub fn row_vector(field: FieldSpec, v: &[Elem]) -> Matrix {
        Matrix::from_fn(field, 1, v.len(), |_, j| v[j].clone())
    }

    /// Unit row vector `e_i` of length `n`.
    pub fn unit_row(field: FieldSpec, n: usize, i: usize) -> Matrix {
        let mut m = Matrix::zeros(field, 1, n);
        m.set(0, i, field.one());
        m
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

    pub fn get(&self, i: usize, j: usize) -> Elem {
        assert!(i < self.rows && j < self.cols);
        let k = i * self.cols + j;
        match &self.data {
            Data::Rat(v) => Elem::Rat(v[k].clone()),
            Data::Mod(v) => Elem::Mod(v[k]),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        assert!(i < self.rows && j < self.cols);
        let k = i * self.cols + j;
        match (&mut self.data, e) {
            (Data::Rat(v), Elem::Rat(q)) => v[k] = q,
            (Data::Mod(v), Elem::Mod(x)) => v[k] = x,
            _ => panic!("element from the wrong field"),
        }
    }

    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        let k = i * self.cols + j;
        dispatch!(self, |c, v| c.is_zero(&v[k]))
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(self, |c, v| v.iter().all(|x| c.is_zero(x)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    /// Row `i` as a list of elements.
    pub fn row_elems(&self, i: usize) -> Vec<Elem> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row_elems(i)).collect()
    }

    pub fn row(&self, i: usize) -> Matrix {
        self.select_rows(&[i])
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let cols = self.cols;
        let data = dispatch!(self, |c, v| {
            let mut out = Vec::with_capacity(idx.len() * cols);
            for &i in idx {
                out.extend_from_slice(&v[i * cols..(i + 1) * cols]);
            }
            c.wrap(out)
        });
        Matrix::with_data(self.field, idx.len(), cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let data = dispatch!(self, |c, v| {
            let mut out = Vec::with_capacity(idx.len() * rows);
            for i in 0..rows {
                for &j in idx {
                    out.push(v[i * cols + j].clone());
                }
            }
            c.wrap(out)
        });
        Matrix::with_data(self.field, rows, idx.len(), data)
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_rows(&idx)
    }

    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_cols(&idx)
    }

    pub fn transpose(&self) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let data = dispatch!(self, |c, v| {
            let mut out = Vec::with_capacity(rows * cols);
            for j in 0..cols {
                for i in 0..rows {
                    out.push(v[i * cols + j].clone());
                }
            }
            c.wrap(out)
        });
        Matrix::with_data(self.field, cols, rows, data)
    }

    /// Matrix product. Panics on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.field, other.field, "mixed-field matrix product");
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let data = dispatch2!(self, other, |c, a, b| {
            let mut out = vec![c.zero(); n * m];
            for i in 0..n {
                for l in 0..k {
                    let x = &a[i * k + l];
                    if c.is_zero(x) {
                        continue;
                    }
                    let row = &b[l * m..(l + 1) * m];
                    let dst = &mut out[i * m..(i + 1) * m];
                    for j in 0..m {
                        if !c.is_zero(&row[j]) {
                            c.mul_add(&mut dst[j], x, &row[j]);
                        }
                    }
                }
            }
            c.wrap(out)
        });
        Matrix::with_data(self.field, n, m, data)
    }

    /// Checked product for public entry points.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    fn zip(&self, other: &Matrix, sub: bool) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = dispatch2!(self, other, |c, a, b| {
            let out = a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| if sub { c.sub(x, y) } else { c.add(x, y) })
                .collect();
            c.wrap(out)
        });
        Matrix::with_data(self.field, self.rows, self.cols, data)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, true)
    }

    pub fn neg(&self) -> Matrix {
        let data = dispatch!(self, |c, v| c.wrap(v.iter().map(|x| c.neg(x)).collect()));
        Matrix::with_data(self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &Elem) -> Matrix {
        let data = dispatch!(self, |c, v| {
            let s = c.from_elem(s);
            c.wrap(v.iter().map(|x| c.mul(x, &s)).collect())
        });
        Matrix::with_data(self.field, self.rows, self.cols, data)
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Elem, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let field = self.field;
        match (&mut self.data, &other.data) {
            (Data::Rat(a), Data::Rat(b)) => {
                let s = QArith.from_elem(s);
                for (x, y) in a.iter_mut().zip(b) {
                    QArith.mul_add(x, &s, y);
                }
            }
            (Data::Mod(a), Data::Mod(b)) => {
                let c = FpArith(field.modulus());
                let s = c.from_elem(s);
                if s == 0 {
                    return;
                }
                for (x, y) in a.iter_mut().zip(b) {
                    c.mul_add(x, &s, y);
                }
            }
            _ => panic!("mixed-field matrix operation"),
        }
    }

    /// Linear combination `Σ coeffs[i] · mats[i]`.
    pub fn combination(field: FieldSpec, rows: usize, cols: usize, coeffs: &[Elem], mats: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if !field.is_zero(c) {
                out.add_scaled(c, m);
            }
        }
        out
    }

    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            out.set_block(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.set_block(0, c, p);
            c += p.cols;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, parts: &[&Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        let cols = self.cols;
        match (&mut self.data, &block.data) {
            (Data::Rat(a), Data::Rat(b)) => {
                for i in 0..block.rows {
                    a[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                        .clone_from_slice(&b[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Data::Mod(a), Data::Mod(b)) => {
                for i in 0..block.rows {
                    a[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                        .copy_from_slice(&b[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => panic!("mixed-field matrix operation"),
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let r: Vec<usize> = (r0..r0 + rows).collect();
        let c: Vec<usize> = (c0..c0 + cols).collect();
        self.select_rows(&r).select_cols(&c)
    }

    /// Kronecker product; index `(i1*r2 + i2, j1*c2 + j2)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let data = dispatch2!(self, other, |c, a, b| {
            let mut out = vec![c.zero(); r1 * r2 * c1 * c2];
            let cols = c1 * c2;
            for i1 in 0..r1 {
                for j1 in 0..c1 {
                    let x = &a[i1 * c1 + j1];
                    if c.is_zero(x) {
                        continue;
                    }
                    for i2 in 0..r2 {
                        for j2 in 0..c2 {
                            out[(i1 * r2 + i2) * cols + j1 * c2 + j2] = c.mul(x, &b[i2 * c2 + j2]);
                        }
                    }
                }
            }
            c.wrap(out)
        });
        Matrix::with_data(self.field, r1 * r2, c1 * c2, data)
    }

    /// Row-major flattening into a `1 × rows·cols` row vector.
    pub fn flatten(&self) -> Matrix {
        Matrix::with_data(self.field, 1, self.rows * self.cols, self.data.clone())
    }

    /// Inverse of [`Matrix::flatten`] applied to one row of a matrix.
    pub fn unflatten_row(&self, row: usize, rows: usize, cols: usize) -> Matrix {
        assert_eq!(self.cols, rows * cols);
        let mut r = self.row(row);
        r.rows = rows;
        r.cols = cols;
        r
    }

    pub fn trace(&self) -> Elem {
        assert!(self.is_square());
        let n = self.rows;
        dispatch!(self, |c, v| {
            let mut t = c.zero();
            for i in 0..n {
                t = c.add(&t, &v[i * n + i]);
            }
            c.to_elem(&t)
        })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
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

    /// Reduced row-echelon form with pivot columns and rank.
    pub fn rref(&self) -> Rref {
        let (rows, cols) = (self.rows, self.cols);
        let (data, pivots) = dispatch!(self, |c, v| {
            let mut w = v.clone();
            let piv = rref_in_place(c, &mut w, rows, cols);
            (c.wrap(w), piv)
        });
        let reduced = Matrix::with_data(self.field, rows, cols, data);
        let rank = pivots.len();
        Rref { reduced, pivot_cols: pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let r = self.rref();
        r.reduced.row_range(0, r.rank)
    }

    /// Basis (as rows) of the left kernel `{x : x·self = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        // left kernel of A = right nullspace of Aᵀ
        let t = self.transpose();
        let r = t.rref();
        let n = self.rows;
        let free: Vec<usize> = {
            let mut is_piv = vec![false; n];
            for &p in &r.pivot_cols {
                is_piv[p] = true;
            }
            (0..n).filter(|&j| !is_piv[j]).collect()
        };
        let mut out = Matrix::zeros(self.field, free.len(), n);
        let field = self.field;
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, field.one());
            for (row, &pc) in r.pivot_cols.iter().enumerate() {
                let e = r.reduced.get(row, fc);
                if !field.is_zero(&e) {
                    out.set(k, pc, field.neg(&e));
                }
            }
        }
        out
    }

    /// Solves `x·a = b` (row by row). `Ok(None)` when inconsistent.
    pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        if a.cols != b.cols {
            return Err(Error::Dimension(format!(
                "solve: a has {} columns, b has {}",
                a.cols, b.cols
            )));
        }
        // xA = B  <=>  Aᵀ xᵀ = Bᵀ; reduce [Aᵀ | Bᵀ]
        let at = a.transpose();
        let bt = b.transpose();
        let aug = Matrix::hstack(a.field, a.cols, &[&at, &bt]);
        let r = aug.rref();
        let n = a.rows;
        if r.pivot_cols.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(a.field, b.rows, n);
        for (row, &pc) in r.pivot_cols.iter().enumerate() {
            for k in 0..b.rows {
                x.set(k, pc, r.reduced.get(row, n + k));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        Matrix::solve(self, &Matrix::identity(self.field, n)).ok().flatten()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.rows == 0 || self.pow(self.rows as u64).is_zero()
    }

    /// Monic characteristic polynomial `det(x·I − self)`, coefficients from
    /// the constant term upwards.
    pub fn char_poly(&self) -> Vec<Elem> {
        assert!(self.is_square());
        let n = self.rows;
        dispatch!(self, |c, v| {
            let p = char_poly_hessenberg(c, v.clone(), n);
            p.iter().map(|x| c.to_elem(x)).collect()
        })
    }
}

fn rref_in_place<A: Arith>(c: A, w: &mut [A::T], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !c.is_zero(&w[i * cols + col])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                w.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = c.inv(&w[r * cols + col]);
        for j in col..cols {
            let x = &w[r * cols + j];
            if !c.is_zero(x) {
                w[r * cols + j] = c.mul(x, &inv);
            }
        }
        let pivot_row: Vec<A::T> = w[r * cols + col..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = w[i * cols + col].clone();
            if c.is_zero(&f) {
                continue;
            }
            let nf = c.neg(&f);
            for (off, x) in pivot_row.iter().enumerate() {
                if !c.is_zero(x) {
                    c.mul_add(&mut w[i * cols + col + off], &nf, x);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Hessenberg reduction followed by the standard recurrence.
fn char_poly_hessenberg<A: Arith>(c: A, mut h: Vec<A::T>, n: usize) -> Vec<A::T> {
    let at = |i: usize, j: usize| i * n + j;
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !c.is_zero(&h[at(i, m - 1)])) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                h.swap(at(i, j), at(m, j));
            }
            for j in 0..n {
                h.swap(at(j, i), at(j, m));
            }
        }
        let t = c.inv(&h[at(m, m - 1)]);
        for i in m + 1..n {
            let u = c.mul(&h[at(i, m - 1)], &t);
            if c.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let v = c.mul(&u, &h[at(m, j)]);
                h[at(i, j)] = c.sub(&h[at(i, j)], &v);
            }
            for j in 0..n {
                let v = c.mul(&u, &h[at(j, i)]);
                h[at(j, m)] = c.add(&h[at(j, m)], &v);
            }
        }
    }
    // p[k] is the char poly of the leading k×k block
    let mut p: Vec<Vec<A::T>> = vec![vec![c.one()]];
    for m in 0..n {
        // (x - h_mm) p_m
        let prev = &p[m];
        let mut next = vec![c.zero(); m + 2];
        for (k, a) in prev.iter().enumerate() {
            next[k + 1] = c.add(&next[k + 1], a);
            let t = c.mul(a, &h[at(m, m)]);
            next[k] = c.sub(&next[k], &t);
        }
        let mut prod = c.one();
        for i in (0..m).rev() {
            prod = c.mul(&prod, &h[at(i + 1, i)]);
            let coef = c.mul(&h[at(i, m)], &prod);
            if c.is_zero(&coef) {
                continue;
            }
            for (k, a) in p[i].iter().enumerate() {
                let t = c.mul(&coef, a);
                next[k] = c.sub(&next[k], &t);
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}", self.field, self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            write!(f, "[")?;
            for i in 0..self.rows {
                if i > 0 {
                    write!(f, "; ")?;
                }
                let row: Vec<String> = self.row_elems(i).iter().map(|e| e.to_string()).collect();
                write!(f, "{}", row.join(" "))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of `field^ambient` held as an RREF basis, so that coordinates
/// of a member can be read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(m: &Matrix) -> Subspace {
        let r = m.rref();
        Subspace { basis: r.reduced.row_range(0, r.rank), pivots: r.pivot_cols }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of rows of `v` (assumed to lie in the subspace).
    pub fn coords(&self, v: &Matrix) -> Matrix {
        v.select_cols(&self.pivots)
    }

    /// `v` minus its projection along the basis onto pivot coordinates;
    /// zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &Matrix) -> Matrix {
        let c = self.coords(v);
        v.sub(&c.mul(&self.basis))
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v`, or `None` if some row is outside the subspace.
    pub fn try_coords(&self, v: &Matrix) -> Option<Matrix> {
        if self.contains(v) {
            Some(self.coords(v))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(q(), 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(q(), 2, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivot_cols.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(q(), 2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 3).kernel_basis().rows(), 0);
        let z = Matrix::zeros(q(), 2, 3);
        assert_eq!(z.kernel_basis(), Matrix::identity(q(), 2));
        let m = Matrix::from_i64(f101(), 2, 2, &[1, 1, 1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&m).is_zero());
        // spans (1, -1)
        assert_eq!(k.get(0, 0), f101().neg(&k.get(0, 1)));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(q(), 2, 2, &[3, -1, 7, 5]);
        assert_eq!(Matrix::solve(&Matrix::identity(q(), 2), &b).unwrap(), Some(b.clone()));
        let z = Matrix::zeros(q(), 2, 2);
        let x = Matrix::solve(&z, &Matrix::zeros(q(), 1, 2)).unwrap().unwrap();
        assert!(x.is_zero());
        let a = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        let b = Matrix::from_i64(q(), 1, 2, &[1, 3]);
        assert_eq!(Matrix::solve(&a, &b).unwrap(), None);
        assert!(Matrix::solve(&a, &Matrix::zeros(q(), 1, 3)).is_err());
        assert!(Matrix::solve(&a, &Matrix::zeros(f101(), 1, 2)).is_err());
    }

    #[test]
    fn char_poly_of_companion() {
        // companion matrix of x^3 - 2x + 5
        let m = Matrix::from_i64(q(), 3, 3, &[0, 1, 0, 0, 0, 1, -5, 2, 0]);
        let p = m.char_poly();
        let expect: Vec<Elem> = [5, -2, 0, 1].iter().map(|&v| q().from_i64(v)).collect();
        assert_eq!(p, expect);
    }

    #[test]
    fn subspace_coordinates() {
        let m = Matrix::from_i64(q(), 2, 3, &[1, 1, 0, 0, 1, 1]);
        let s = Subspace::from_rows(&m);
        let v = Matrix::from_i64(q(), 1, 3, &[2, 5, 3]);
        let c = s.coords(&v);
        assert_eq!(c.mul(s.basis()), v);
        assert!(!s.contains(&Matrix::from_i64(q(), 1, 3, &[1, 0, 0])));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(-3i64..=3, r * c))
            })
        }

        fn leibniz_det(f: FieldSpec, m: &Matrix) -> Elem {
            fn perms(n: usize) -> Vec<Vec<usize>> {
                if n == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for p in perms(n - 1) {
                    for pos in 0..n {
                        let mut q = p.clone();
                        q.insert(pos, n - 1);
                        out.push(q);
                    }
                }
                out
            }
            let n = m.rows();
            let mut acc = f.zero();
            for p in perms(n) {
                let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let mut t = f.one();
                for (i, &j) in p.iter().enumerate() {
                    t = f.mul(&t, &m.get(i, j));
                }
                acc = if inversions % 2 == 0 { f.add(&acc, &t) } else { f.sub(&acc, &t) };
            }
            acc
        }

        proptest! {
            #[test]
            fn rref_is_idempotent_and_rank_nullity_holds((r, c, v) in small_matrix(5), prime in proptest::bool::ANY) {
                let f = if prime { FieldSpec::prime(7).unwrap() } else { FieldSpec::Rational };
                let m = Matrix::from_i64(f, r, c, &v);
                let once = m.rref();
                prop_assert_eq!(once.reduced.rref().reduced, once.reduced.clone());
                let k = m.kernel_basis();
                prop_assert_eq!(k.rows() + once.rank, r);
                prop_assert!(k.mul(&m).is_zero());
                prop_assert_eq!(k.rank(), k.rows());
                prop_assert_eq!(m.transpose().rank(), once.rank);
            }

            #[test]
            fn solve_recovers_consistent_systems((r, c, v) in small_matrix(4), x in proptest::collection::vec(-3i64..=3, 4)) {
                let f = FieldSpec::Rational;
                let a = Matrix::from_i64(f, r, c, &v);
                let x = Matrix::from_i64(f, 1, r, &x[..r]);
                let b = x.mul(&a);
                let y = Matrix::solve(&a, &b).unwrap().expect("consistent system");
                prop_assert_eq!(y.mul(&a), b);
            }

            #[test]
            fn char_poly_matches_determinant((n, v) in (1usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(-4i64..=4, n * n))), prime in proptest::bool::ANY) {
                let f = if prime { FieldSpec::prime(11).unwrap() } else { FieldSpec::Rational };
                let m = Matrix::from_i64(f, n, n, &v);
                let p = m.char_poly();
                prop_assert_eq!(p.len(), n + 1);
                let det = leibniz_det(f, &m);
                let c0 = if n % 2 == 0 { det } else { f.neg(&det) };
                prop_assert_eq!(p[0].clone(), c0);
                prop_assert_eq!(f.neg(&p[n - 1]), m.trace());
                // Cayley-Hamilton
                let mut acc = Matrix::zeros(f, n, n);
                for c in p.iter().rev() {
                    acc = acc.mul(&m).add(&Matrix::identity(f, n).scale(c));
                }
                prop_assert!(acc.is_zero());
            }

            #[test]
            fn inverse_roundtrip((n, v) in (1usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(-4i64..=4, n * n)))) {
                let f = FieldSpec::prime(101).unwrap();
                let m = Matrix::from_i64(f, n, n, &v);
                match m.inverse() {
                    Some(inv) => prop_assert!(m.mul(&inv).is_identity()),
                    None => prop_assert!(m.rank() < n),
                }
            }
        }
    }
}
