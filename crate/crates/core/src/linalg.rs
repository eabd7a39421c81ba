//! Dense matrices over a field, with exact elimination routines.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{ExactField, Field, GaussRat, Rational, C};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub r: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

fn dim_err(what: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::DimensionMismatch(format!("{what}: {}x{} vs {}x{}", a.0, a.1, b.0, b.1))
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in width {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn diag(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    pub fn column_vector(v: &[F]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec() }
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| (self.get(i, j).clone() - self.get(j, i).clone()).is_zero()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| (self.get(i, j).clone() - self.get(j, i).conj()).is_zero()))
    }

    pub fn mul(&self, o: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != o.rows {
            return Err(dim_err("mul", self.shape(), o.shape()));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// Product that panics on shape mismatch; for internal use with known shapes.
    pub fn dot(&self, o: &Matrix<F>) -> Matrix<F> {
        self.mul(o).expect("matrix shapes")
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(dim_err("mul_vec", self.shape(), (v.len(), 1)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc + a.clone() * b.clone() })
            })
            .collect())
    }

    fn zip_with(&self, o: &Matrix<F>, what: &str, f: impl Fn(F, F) -> F) -> Result<Matrix<F>> {
        if self.shape() != o.shape() {
            return Err(dim_err(what, self.shape(), o.shape()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        })
    }

    pub fn add(&self, o: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(o, "add", |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(o, "sub", |a, b| a - b)
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg(&self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }

    pub fn hstack(parts: &[&Matrix<F>]) -> Result<Matrix<F>> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        Ok(Self::from_fn(rows, cols, |i, mut j| {
            for m in parts {
                if j < m.cols {
                    return m.get(i, j).clone();
                }
                j -= m.cols;
            }
            unreachable!()
        }))
    }

    pub fn vstack(parts: &[&Matrix<F>]) -> Result<Matrix<F>> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = Vec::new();
        for m in parts {
            data.extend(m.data.iter().cloned());
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        Ok(Matrix { rows, cols, data })
    }

    /// Block matrix from a grid of equally shaped rows of blocks.
    pub fn block(grid: &[Vec<&Matrix<F>>]) -> Result<Matrix<F>> {
        let rows: Vec<Matrix<F>> = grid.iter().map(|r| Self::hstack(r)).collect::<Result<_>>()?;
        Self::vstack(&rows.iter().collect::<Vec<_>>())
    }

    pub fn block_diag(parts: &[&Matrix<F>]) -> Matrix<F> {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<F> {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn submatrix(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Matrix<F> {
        let (r0, c0) = (r.start, c.start);
        Self::from_fn(r.len(), c.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn max_abs_diff(&self, o: &Matrix<F>, abs: impl Fn(&F) -> f64) -> f64 {
        self.data.iter().zip(&o.data).map(|(a, b)| abs(&(a.clone() - b.clone()))).fold(0.0, f64::max)
    }
}

impl<F: ExactField> Matrix<F> {
    /// Reduced row echelon form via Gauss–Jordan elimination.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let pv = m.get(row, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * pv.clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref { r: m, pivots, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix<F> {
        let rr = self.rref();
        rr.r.submatrix(0..rr.rank, 0..self.cols)
    }

    /// Columns form a basis of the kernel, one per free column, normalized to
    /// a unit entry at that free column.
    pub fn kernel(&self) -> Matrix<F> {
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, F::one());
            for (i, &p) in rr.pivots.iter().enumerate() {
                k.set(p, j, -rr.r.get(i, f).clone());
            }
        }
        k
    }

    /// Basis of the column space drawn from the original columns.
    pub fn column_space(&self) -> Matrix<F> {
        let rr = self.rref();
        self.select_cols(&rr.pivots)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n)]).ok()?;
        let rr = aug.rref();
        if rr.pivots.iter().take(n).copied().ne(0..n) || rr.rank < n {
            return None;
        }
        Some(rr.r.submatrix(0..n, n..2 * n))
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det of non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return Ok(F::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m.get(col, col).clone();
            det = det * piv.clone();
            let inv = piv.inv().expect("nonzero pivot");
            for i in col + 1..n {
                let f = m.get(i, col).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(col, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// A particular solution of `A x = b` with free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve_affine(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(dim_err("solve_affine", self.shape(), (b.len(), 1)));
        }
        let aug = Self::hstack(&[self, &Self::column_vector(b)])?;
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in rr.pivots.iter().enumerate() {
            x[p] = rr.r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Moore–Penrose pseudo-inverse via a full-rank factorization `M = F G`.
    pub fn pinv(&self) -> Matrix<F> {
        let rr = self.rref();
        if rr.rank == 0 {
            return Matrix::zeros(self.cols, self.rows);
        }
        let f = self.select_cols(&rr.pivots);
        let g = rr.r.submatrix(0..rr.rank, 0..self.cols);
        let fh = f.conj_transpose();
        let gh = g.conj_transpose();
        let ggh_inv = g.dot(&gh).inverse().expect("Gram matrix of independent rows");
        let fhf_inv = fh.dot(&f).inverse().expect("Gram matrix of independent columns");
        gh.dot(&ggh_inv).dot(&fhf_inv).dot(&fh)
    }
}

/// Exact positive semidefiniteness of a Hermitian matrix over ℚ(i), by
/// symmetric pivoting on positive diagonal entries.
pub fn is_psd_hermitian(m: &Matrix<C>) -> Result<bool> {
    if !m.is_hermitian() {
        return Err(Error::NotSymmetric);
    }
    Ok(psd_nullity(m).is_some())
}

/// Exact positive definiteness of a Hermitian matrix over ℚ(i).
pub fn is_pd_hermitian(m: &Matrix<C>) -> Result<bool> {
    if !m.is_hermitian() {
        return Err(Error::NotSymmetric);
    }
    Ok(psd_nullity(m) == Some(0))
}

/// Real symmetric positive semidefiniteness test.
pub fn is_psd(m: &Matrix<Rational>) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    is_psd_hermitian(&m.map(|x| GaussRat::real(x.clone())))
}

/// Nullity of a Hermitian PSD matrix, or `None` if it is not PSD.
fn psd_nullity(m: &Matrix<C>) -> Option<usize> {
    use num_traits::Signed;
    let mut a = m.clone();
    loop {
        let n = a.rows();
        if n == 0 {
            return Some(0);
        }
        if (0..n).any(|i| a.get(i, i).re.is_negative()) {
            return None;
        }
        let Some(p) = (0..n).find(|&i| !Field::is_zero(&a.get(i, i).re)) else {
            // Zero diagonal: semidefinite only if the block vanishes.
            return a.is_zero().then_some(n);
        };
        let inv = a.get(p, p).inv().expect("positive pivot");
        let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let col: Vec<C> = rest.iter().map(|&i| a.get(i, p).clone()).collect();
        a = Matrix::from_fn(rest.len(), rest.len(), |i, j| {
            a.get(rest[i], rest[j]).clone() - col[i].clone() * col[j].conj() * inv.clone()
        });
    }
}

/// Generalised Schur complement projection
/// `(Σmm − Σnm (Σnn+Δ)⁺ Σnmᵀ, μm − Σnm (Σnn+Δ)⁺ (μn − ν))`, where the first
/// `n` coordinates of `sigma` and `mu` are projected onto `(delta, nu)`.
/// Here `Σnm` denotes the block coupling the kept coordinates to the
/// projected ones.
pub fn schur_project<F: ExactField>(
    sigma: &Matrix<F>,
    n: usize,
    delta: &Matrix<F>,
    mu: &[F],
    nu: &[F],
) -> Result<(Matrix<F>, Vec<F>)> {
    let d = sigma.rows();
    if !sigma.is_square() || n > d || delta.shape() != (n, n) || mu.len() != d || nu.len() != n {
        return Err(Error::DimensionMismatch("schur_project block sizes".into()));
    }
    let s_nn = sigma.submatrix(0..n, 0..n);
    let s_mn = sigma.submatrix(n..d, 0..n);
    let s_mm = sigma.submatrix(n..d, n..d);
    let p = s_nn.add(delta)?.pinv();
    let gain = s_mn.dot(&p);
    let cov = s_mm.sub(&gain.dot(&s_mn.transpose()))?;
    let resid: Vec<F> = mu[..n].iter().zip(nu).map(|(a, b)| a.clone() - b.clone()).collect();
    let corr = gain.mul_vec(&resid)?;
    let mean = mu[n..].iter().zip(corr).map(|(a, b)| a.clone() - b).collect();
    Ok((cov, mean))
}

impl<F: Field> fmt::Display for Matrix<F> {
    /// Rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl<F: Field + FromStr<Err = Error>> Matrix<F> {
    /// Parses the `a,b;c,d` literal format. An empty string is the 0×0 matrix.
    pub fn parse_literal(s: &str) -> Result<Matrix<F>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        let rows: Vec<Vec<F>> = s
            .split(';')
            .map(|r| r.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<F>>>())
            .collect::<Result<_>>()?;
        let cols = rows[0].len();
        Matrix::from_rows(rows, cols)
    }
}

/// Convenience constructor for exact complex matrices from text literals.
pub fn cmat(s: &str) -> Matrix<C> {
    Matrix::parse_literal(s).expect("valid matrix literal")
}

pub fn cvec(s: &str) -> Vec<C> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    s.split(',').map(|x| x.trim().parse().expect("valid scalar")).collect()
}
