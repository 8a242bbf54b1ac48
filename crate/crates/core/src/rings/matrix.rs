//! Dense matrices over an exact field, plus fraction-free determinants over Z[v, v^-1].

use num_bigint::BigInt;

use super::field::{Field, Ring};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, data: Vec<Vec<E>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: data.len(), cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![vec![e; cols]; rows] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        Matrix { rows, cols, data: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i][j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_vecs(&self) -> &[Vec<E>] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    pub fn map<G: Clone>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    /// Fallible entrywise map.
    pub fn try_map<G: Clone, X>(&self, f: impl Fn(&E) -> std::result::Result<G, X>) -> std::result::Result<Matrix<G>, X> {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(&f).collect::<std::result::Result<Vec<_>, X>>())
            .collect::<std::result::Result<Vec<_>, X>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.data[rows[i]][cols[j]].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.data.iter().flatten()
    }
}

pub fn zeros<F: Ring>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Ring>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn is_zero_matrix<F: Ring>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.iter().all(|e| f.is_zero(e))
}

pub fn mul<F: Ring>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a.data[i][k];
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = &b.data[k][j];
                if !f.is_zero(y) {
                    out.data[i][j] = f.add(&out.data[i][j], &f.mul(x, y));
                }
            }
        }
    }
    Ok(out)
}

pub fn mul_vec<F: Ring>(f: &F, a: &Matrix<F::Elem>, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.cols != x.len() {
        return Err(Error::DimensionMismatch(format!("{}x{} times vector of length {}", a.rows, a.cols, x.len())));
    }
    Ok(a.data
        .iter()
        .map(|r| r.iter().zip(x).fold(f.zero(), |acc, (p, q)| if f.is_zero(p) || f.is_zero(q) { acc } else { f.add(&acc, &f.mul(p, q)) }))
        .collect())
}

pub fn add<F: Ring>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| f.add(&a.data[i][j], &b.data[i][j]))
}

pub fn sub<F: Ring>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| f.sub(&a.data[i][j], &b.data[i][j]))
}

pub fn scale<F: Ring>(f: &F, a: &Matrix<F::Elem>, c: &F::Elem) -> Matrix<F::Elem> {
    a.map(|x| f.mul(x, c))
}

/// Reduced row echelon form with pivot bookkeeping.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rref: Matrix<E>,
    /// Pivot column of each nonzero row of `rref`.
    pub pivot_cols: Vec<usize>,
    /// Original index of the row that supplied each pivot.
    pub pivot_rows: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Gauss-Jordan elimination; pivots are taken in the first nonzero column,
/// from the first row (at or below the current position) that is nonzero there.
pub fn echelon<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.data.clone();
    let mut origin: Vec<usize> = (0..m.rows).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        origin.swap(r, p);
        let inv = f.inv(&a[r][c]).unwrap();
        for j in c..m.cols {
            if !f.is_zero(&a[r][j]) {
                a[r][j] = f.mul(&a[r][j], &inv);
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..m.cols {
                if !f.is_zero(&pivot_row[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let pivot_rows = origin[..r].to_vec();
    Echelon { rref: Matrix { rows: m.rows, cols: m.cols, data: a }, pivot_cols, pivot_rows }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    echelon(f, m).rank()
}

/// Kernel basis read off the reduced echelon form: one vector per free
/// column, with a 1 in that column.
pub fn kernel_from_echelon<F: Field>(f: &F, e: &Echelon<F::Elem>) -> Vec<Vec<F::Elem>> {
    let cols = e.rref.cols;
    let mut is_pivot = vec![false; cols];
    for &c in &e.pivot_cols {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (i, &pc) in e.pivot_cols.iter().enumerate() {
                v[pc] = f.neg(&e.rref.data[i][free]);
            }
            v
        })
        .collect()
}

pub fn rank_and_kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (usize, Vec<Vec<F::Elem>>) {
    let e = echelon(f, m);
    let k = kernel_from_echelon(f, &e);
    (e.rank(), k)
}

/// Solves `A X = B`; `None` if inconsistent. Free variables are set to zero.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Option<Matrix<F::Elem>>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!("solve with {} vs {} rows", a.rows, b.rows)));
    }
    let aug =
        Matrix::from_fn(a.rows, a.cols + b.cols, |i, j| if j < a.cols { a.data[i][j].clone() } else { b.data[i][j - a.cols].clone() });
    let e = echelon(f, &aug);
    if e.pivot_cols.iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    let mut x = zeros(f, a.cols, b.cols);
    for (i, &pc) in e.pivot_cols.iter().enumerate() {
        for j in 0..b.cols {
            x.data[pc][j] = e.rref.data[i][a.cols + j].clone();
        }
    }
    Ok(Some(x))
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !a.is_square() {
        return None;
    }
    let x = solve(f, a, &identity(f, a.rows)).ok()??;
    (rank(f, a) == a.rows).then_some(x)
}

/// Determinant by elimination over a field.
pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert!(m.is_square());
    let n = m.rows;
    let mut a = m.data.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[c][c]);
        let inv = f.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if f.is_zero(&a[i][c]) {
                continue;
            }
            let factor = f.mul(&a[i][c], &inv);
            for j in c..n {
                a[i][j] = f.sub(&a[i][j], &f.mul(&factor, &a[c][j]));
            }
        }
    }
    d
}

/// Determinant over Z[v, v^-1] by Bareiss fraction-free elimination.
pub fn det_fraction_free(m: &Matrix<LaurentPoly<BigInt>>) -> LaurentPoly<BigInt> {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a = m.data.clone();
    let mut sign_flip = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -&d
    } else {
        d
    }
}

/// A growing set of vectors kept in reduced echelon form, for incremental
/// rank tests (spinning).
#[derive(Clone, Debug)]
pub struct IncrementalBasis<E> {
    dim: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> IncrementalBasis<E> {
    pub fn new(dim: usize) -> Self {
        IncrementalBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current basis.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        w
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v` if it is independent of the current basis; returns whether it was added.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let mut w = self.reduce(f, v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).unwrap();
        for x in w.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// The basis rows (reduced, normalized) in insertion order.
    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` (assumed to lie in the span) with respect to `rows()`.
    pub fn coordinates(&self, v: &[E]) -> Vec<E> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::cyclotomic::CyclotomicField;
    use crate::rings::field::{rat_int, Rationals};
    use crate::rings::laurent::lp;
    use crate::rings::poly::QPoly;

    fn qm(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    #[test]
    fn rank_kernel_examples() {
        let f = Rationals;
        let (r, k) = rank_and_kernel(&f, &identity(&f, 3));
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = rank_and_kernel(&f, &qm(&[&[2, -2], &[-2, 2]]));
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![rat_int(1), rat_int(1)]]);
        let z = CyclotomicField::new(4);
        let m = Matrix::from_rows(2, vec![vec![QPoly::zero(), QPoly::from_ints(&[-18])], vec![QPoly::from_ints(&[-18]), QPoly::zero()]]);
        let (r, k) = rank_and_kernel(&z, &m);
        assert_eq!((r, k.len()), (2, 0));
    }

    #[test]
    fn pivot_rows_are_tracked() {
        let f = Rationals;
        let e = echelon(&f, &qm(&[&[0, 0, 1], &[0, 2, 0], &[0, 4, 0]]));
        assert_eq!(e.pivot_cols, vec![1, 2]);
        assert_eq!(e.pivot_rows, vec![1, 0]);
    }

    #[test]
    fn solve_and_inverse() {
        let f = Rationals;
        let a = qm(&[&[1, 2], &[3, 4]]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &inv).unwrap(), identity(&f, 2));
        assert_eq!(det(&f, &a), rat_int(-2));
        assert!(inverse(&f, &qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn bareiss_on_cellular_grams() {
        let t = lp(&[(1, 1), (-1, 1)]);
        let g_rp = Matrix::from_rows(2, vec![vec![t.scale(&2.into()), lp(&[(0, -2)])], vec![lp(&[(0, -2)]), t.scale(&2.into())]]);
        let expect = &(&t * &t).scale(&4.into()) - &lp(&[(0, 4)]);
        assert_eq!(det_fraction_free(&g_rp), expect);
        let g_r = Matrix::from_rows(2, vec![vec![t.scale(&18.into()), lp(&[(0, -18)])], vec![lp(&[(0, -18)]), t.scale(&6.into())]]);
        let expect = &(&t * &t).scale(&108.into()) - &lp(&[(0, 324)]);
        assert_eq!(det_fraction_free(&g_r), expect);
        let p = lp(&[(3, 2), (-1, 1)]);
        assert_eq!(det_fraction_free(&Matrix::from_rows(1, vec![vec![p.clone()]])), p);
    }
}
