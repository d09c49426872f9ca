//! Exact integer and rational linear algebra.
//!
//! Scalars are arbitrary precision (`num-bigint` / `num-rational`). The matrix
//! routines here are the ones the rest of the crate leans on: row-style Hermite
//! normal form, Smith normal form, primitive kernel bases and affine solving.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self>
    where
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(l, j)];
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        Ok(out)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Matrix::from_rows(cols, &rows)
    }

    pub fn to_rat(&self) -> RatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect(),
        }
    }

    /// `self * v` for an integer column vector.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d.abs().is_one())
    }

    pub fn rank(&self) -> usize {
        fraction_free_rref(self).pivots.len()
    }
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += Rat::from_integer(x.clone()) * y;
        }
    }
    acc
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides out the content of a nonzero vector. Signs are preserved.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub(crate) fn make_primitive(v: &mut [Int]) {
    let g = content(v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational vector to a primitive integer vector pointing the same way.
pub fn rat_to_primitive(v: &[Rat]) -> Result<Vec<Int>> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

/// Row-style Hermite normal form `H = U * M` with `U` unimodular.
///
/// Pivots are positive and move strictly right; entries above a pivot lie in
/// `[0, pivot)`; zero rows collect at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            if h[(p, col)].is_zero() {
                h.swap_rows(p, i);
                u.swap_rows(p, i);
                continue;
            }
            let a = h[(p, col)].clone();
            let b = h[(i, col)].clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                add_row_multiple(&mut h, i, p, &-&q);
                add_row_multiple(&mut u, i, p, &-&q);
                continue;
            }
            let (g, s, t) = ext_gcd(&a, &b);
            let a_g = &a / &g;
            let b_g = &b / &g;
            combine_rows(&mut h, p, i, &s, &t, &-b_g.clone(), &a_g);
            combine_rows(&mut u, p, i, &s, &t, &-b_g, &a_g);
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            negate_row(&mut h, p);
            negate_row(&mut u, p);
        }
        let pivot = h[(p, col)].clone();
        for i in 0..p {
            let q = h[(i, col)].div_floor(&pivot);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, p, &-&q);
                add_row_multiple(&mut u, i, p, &-&q);
            }
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form `D = U * M * V` with `U`, `V` unimodular and
/// `d_1 | d_2 | ...`, all diagonal entries nonnegative.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    add_row_multiple(&mut d, i, t, &-&q);
                    add_row_multiple(&mut u, i, t, &-&q);
                }
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    add_col_multiple(&mut d, j, t, &-&q);
                    add_col_multiple(&mut v, j, t, &-&q);
                }
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match bad_row {
                Some(i) => {
                    add_row_multiple(&mut d, t, i, &Int::one());
                    add_row_multiple(&mut u, t, i, &Int::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    (d, u, v)
}

// row[target] += factor * row[source]
fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &Int) {
    for j in 0..m.cols() {
        let s = &m[(source, j)];
        if s.is_zero() {
            continue;
        }
        let add = factor * s;
        m[(target, j)] += add;
    }
}

fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &Int) {
    for i in 0..m.rows() {
        let s = &m[(i, source)];
        if s.is_zero() {
            continue;
        }
        let add = factor * s;
        m[(i, target)] += add;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let x = std::mem::take(&mut m[(i, j)]);
        m[(i, j)] = -x;
    }
}

// (row_a, row_b) <- (s*row_a + t*row_b, c*row_a + d*row_b)
fn combine_rows(m: &mut IntMatrix, a: usize, b: usize, s: &Int, t: &Int, c: &Int, d: &Int) {
    for j in 0..m.cols() {
        let x = m[(a, j)].clone();
        let y = m[(b, j)].clone();
        m[(a, j)] = s * &x + t * &y;
        m[(b, j)] = c * &x + d * &y;
    }
}

/// Reduced echelon form computed without fractions; every row is kept
/// primitive with a positive pivot, which makes the result a canonical basis
/// of the row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Int>>,
    pub pivots: Vec<usize>,
}

pub fn fraction_free_rref(m: &IntMatrix) -> Echelon {
    rref_rows(m.row_vecs(), m.cols())
}

pub(crate) fn rref_rows(mut rows: Vec<Vec<Int>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pi) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pi);
        make_primitive(&mut rows[r]);
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        let p = pivot_row[col].clone();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let e = other[col].clone();
            if e.is_zero() {
                continue;
            }
            let g = p.gcd(&e);
            let pf = &p / &g;
            let ef = &e / &g;
            for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                *x = &pf * &*x - &ef * y;
            }
            make_primitive(other);
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

/// Basis of the right kernel `{v : M v = 0}` as primitive integer vectors.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    let ech = fraction_free_rref(m);
    kernel_from_echelon(&ech, m.cols())
}

pub(crate) fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Vec<Vec<Int>> {
    let mut l = Int::one();
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        l = l.lcm(&row[c]);
    }
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Int::zero(); cols];
        v[f] = l.clone();
        for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
            if !row[f].is_zero() {
                v[c] = -(&l / &row[c]) * &row[f];
            }
        }
        make_primitive(&mut v);
        basis.push(v);
    }
    basis
}

/// Solution set of `A x = b`: a particular point plus a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

/// Solves `A x = b` over the rationals; `None` if inconsistent.
pub fn solve_affine(a: &RatMatrix, b: &[Rat]) -> Result<Option<AffineSolution>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let mut rows: Vec<Vec<Rat>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pi) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pi);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..=n {
                let sub = &f * &rows[r][j];
                rows[i][j] -= sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut particular = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rows[i][n].clone();
    }
    let mut kernel = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -rows[i][f].clone();
        }
        kernel.push(v);
    }
    Ok(Some(AffineSolution { particular, kernel }))
}
