//! Affine relations between coordinate spaces, kept in canonical constraint form.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::ExactField;

/// An affine subspace of `F^(dom+cod)`; coordinates are `(inputs, outputs)`.
#[derive(Clone, PartialEq, Debug)]
pub struct AffineRelation<F> {
    dom: usize,
    cod: usize,
    body: Body<F>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Body<F> {
    Empty,
    /// `constraints · v = rhs`, with `constraints` in RREF and no zero rows.
    Affine { constraints: Matrix<F>, rhs: Vec<F> },
}

/// Eliminates the variables in `elim` from the system `s·v = a`, returning the
/// induced system on the remaining variables (in their original order), or
/// `None` if the system has no solution.
pub fn eliminate<F: ExactField>(s: &Matrix<F>, a: &[F], elim: &[usize]) -> Option<(Matrix<F>, Vec<F>)> {
    let n = s.cols();
    let keep: Vec<usize> = (0..n).filter(|j| !elim.contains(j)).collect();
    let order: Vec<usize> = elim.iter().chain(keep.iter()).copied().collect();
    let aug = Matrix::hstack(&[&s.select_cols(&order), &Matrix::column_vector(a)]).expect("row counts agree");
    let rr = aug.rref();
    if rr.pivots.last() == Some(&n) {
        return None;
    }
    let first = rr.pivots.iter().position(|&p| p >= elim.len()).unwrap_or(rr.rank);
    let rows: Vec<usize> = (first..rr.rank).collect();
    let sub = rr.r.select_rows(&rows);
    let cons = sub.submatrix(0..rows.len(), elim.len()..n);
    let rhs = sub.column(n);
    Some((cons, rhs))
}

impl<F: ExactField> AffineRelation<F> {
    /// The relation `{v : s·v = a}`, canonicalized.
    pub fn from_constraints(dom: usize, cod: usize, s: &Matrix<F>, a: &[F]) -> Result<Self> {
        if s.cols() != dom + cod || s.rows() != a.len() {
            return Err(Error::DimensionMismatch(format!(
                "constraints {}x{} with {} right-hand sides for a {dom}->{cod} relation",
                s.rows(),
                s.cols(),
                a.len()
            )));
        }
        let aug = Matrix::hstack(&[s, &Matrix::column_vector(a)])?;
        let rr = aug.rref();
        let w = dom + cod;
        if rr.pivots.last() == Some(&w) {
            return Ok(Self::empty(dom, cod));
        }
        let constraints = rr.r.submatrix(0..rr.rank, 0..w);
        let rhs = (0..rr.rank).map(|i| rr.r.get(i, w).clone()).collect();
        Ok(AffineRelation { dom, cod, body: Body::Affine { constraints, rhs } })
    }

    /// The relation `point + span(columns of basis)`.
    pub fn from_image(dom: usize, cod: usize, basis: &Matrix<F>, point: &[F]) -> Result<Self> {
        let w = dom + cod;
        if basis.rows() != w || point.len() != w {
            return Err(Error::DimensionMismatch("image basis does not match arity".into()));
        }
        let s = if basis.cols() == 0 { Matrix::identity(w) } else { basis.transpose().kernel().transpose() };
        let a = s.mul_vec(point)?;
        Self::from_constraints(dom, cod, &s, &a)
    }

    pub fn empty(dom: usize, cod: usize) -> Self {
        AffineRelation { dom, cod, body: Body::Empty }
    }

    /// Every pair is related.
    pub fn total(dom: usize, cod: usize) -> Self {
        let w = dom + cod;
        AffineRelation { dom, cod, body: Body::Affine { constraints: Matrix::zeros(0, w), rhs: vec![] } }
    }

    /// The state `0 → n` consisting of a single point.
    pub fn point(v: &[F]) -> Self {
        let n = v.len();
        Self::from_constraints(0, n, &Matrix::identity(n), v).expect("square system")
    }

    /// Graph of the affine map `x ↦ m·x + c`.
    pub fn graph(m: &Matrix<F>, c: &[F]) -> Result<Self> {
        let (cod, dom) = m.shape();
        if c.len() != cod {
            return Err(Error::DimensionMismatch("graph shift length".into()));
        }
        let s = Matrix::hstack(&[&m.neg(), &Matrix::identity(cod)])?;
        Self::from_constraints(dom, cod, &s, c)
    }

    pub fn identity(n: usize) -> Self {
        Self::graph(&Matrix::identity(n), &vec![F::zero(); n]).expect("square")
    }

    /// `n + m → m + n`, swapping the two blocks.
    pub fn symmetry(n: usize, m: usize) -> Self {
        let perm: Vec<usize> = (m..m + n).chain(0..m).collect();
        Self::permutation(&perm)
    }

    /// The relation sending input `i` to output `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let k = perm.len();
        let mut s = Matrix::zeros(k, 2 * k);
        for (i, &p) in perm.iter().enumerate() {
            s.set(i, i, F::one());
            s.set(i, k + p, -F::one());
        }
        Self::from_constraints(k, k, &s, &vec![F::zero(); k]).expect("square")
    }

    /// The plain diagonal `0 → 2n`, `{(v, v)}`.
    pub fn cup(n: usize) -> Self {
        Self::identity(n).reshape(0, 2 * n)
    }

    pub fn cap(n: usize) -> Self {
        Self::cup(n).converse()
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn width(&self) -> usize {
        self.dom + self.cod
    }

    pub fn body(&self) -> &Body<F> {
        &self.body
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.body, Body::Empty)
    }

    /// Constraint matrix and right-hand side, if nonempty.
    pub fn system(&self) -> Option<(&Matrix<F>, &[F])> {
        match &self.body {
            Body::Empty => None,
            Body::Affine { constraints, rhs } => Some((constraints, rhs)),
        }
    }

    /// Same subspace with the boundary moved: only `dom + cod` must be preserved.
    pub fn reshape(self, dom: usize, cod: usize) -> Self {
        assert_eq!(dom + cod, self.dom + self.cod, "reshape must preserve width");
        AffineRelation { dom, cod, body: self.body }
    }

    /// Columns spanning the linear part.
    pub fn linear_basis(&self) -> Option<Matrix<F>> {
        self.system().map(|(s, _)| if s.rows() == 0 { Matrix::identity(self.width()) } else { s.kernel() })
    }

    /// The least solution (free coordinates zero).
    pub fn particular_point(&self) -> Option<Vec<F>> {
        let (s, a) = self.system()?;
        let mut v = vec![F::zero(); self.width()];
        let rr_pivots: Vec<usize> = (0..s.rows()).map(|i| (0..s.cols()).find(|&j| !s.get(i, j).is_zero()).unwrap()).collect();
        for (i, p) in rr_pivots.into_iter().enumerate() {
            v[p] = a[i].clone();
        }
        Some(v)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        match self.system() {
            None => false,
            Some((s, a)) => s.mul_vec(v).map(|r| r.iter().zip(a).all(|(x, y)| (x.clone() - y.clone()).is_zero())).unwrap_or(false),
        }
    }

    /// Dimension of the subspace, or `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.system().map(|(s, _)| self.width() - s.rows())
    }

    /// Reorders coordinates: new coordinate `j` is old coordinate `order[j]`.
    pub fn reorder(&self, dom: usize, cod: usize, order: &[usize]) -> Result<Self> {
        if order.len() != self.width() || dom + cod != self.width() {
            return Err(Error::DimensionMismatch("reorder length".into()));
        }
        match self.system() {
            None => Ok(Self::empty(dom, cod)),
            Some((s, a)) => Self::from_constraints(dom, cod, &s.select_cols(order), a),
        }
    }

    pub fn converse(&self) -> Self {
        let order: Vec<usize> = (self.dom..self.width()).chain(0..self.dom).collect();
        self.reorder(self.cod, self.dom, &order).expect("permutation")
    }

    /// Relational composite `self ; other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cod != other.dom {
            return Err(Error::DimensionMismatch(format!(
                "compose {}->{} with {}->{}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        let (n, m, k) = (self.dom, self.cod, other.cod);
        let (Some((s1, a1)), Some((s2, a2))) = (self.system(), other.system()) else {
            return Ok(Self::empty(n, k));
        };
        // Variables (a, c, b); b is eliminated.
        let total = n + k + m;
        let mut s = Matrix::zeros(s1.rows() + s2.rows(), total);
        for i in 0..s1.rows() {
            for j in 0..n {
                s.set(i, j, s1.get(i, j).clone());
            }
            for j in 0..m {
                s.set(i, n + k + j, s1.get(i, n + j).clone());
            }
        }
        for i in 0..s2.rows() {
            let r = s1.rows() + i;
            for j in 0..m {
                s.set(r, n + k + j, s2.get(i, j).clone());
            }
            for j in 0..k {
                s.set(r, n + j, s2.get(i, m + j).clone());
            }
        }
        let a: Vec<F> = a1.iter().chain(a2).cloned().collect();
        let elim: Vec<usize> = (n + k..total).collect();
        match eliminate(&s, &a, &elim) {
            None => Ok(Self::empty(n, k)),
            Some((c, r)) => Self::from_constraints(n, k, &c, &r),
        }
    }

    /// Direct sum with coordinates `(in_self, in_other, out_self, out_other)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let dom = self.dom + other.dom;
        let cod = self.cod + other.cod;
        let (Some((s1, a1)), Some((s2, a2))) = (self.system(), other.system()) else {
            return Self::empty(dom, cod);
        };
        let joined = Matrix::block_diag(&[s1, s2]);
        // joined columns: (in1, out1, in2, out2) -> reorder to (in1, in2, out1, out2)
        let (n1, m1, n2) = (self.dom, self.cod, other.dom);
        let order: Vec<usize> = (0..n1)
            .chain(n1 + m1..n1 + m1 + n2)
            .chain(n1..n1 + m1)
            .chain(n1 + m1 + n2..joined.cols())
            .collect();
        let a: Vec<F> = a1.iter().chain(a2).cloned().collect();
        Self::from_constraints(dom, cod, &joined.select_cols(&order), &a).expect("block sizes")
    }

    /// Linear part (shift removed); empty stays empty.
    pub fn linear_part(&self) -> Self {
        match self.system() {
            None => self.clone(),
            Some((s, a)) => Self::from_constraints(self.dom, self.cod, s, &vec![F::zero(); a.len()]).expect("same shape"),
        }
    }

    /// Image form `(basis, point)`.
    pub fn image_form(&self) -> Option<(Matrix<F>, Vec<F>)> {
        Some((self.linear_basis()?, self.particular_point()?))
    }

    pub fn map_field<G: ExactField>(&self, f: impl Fn(&F) -> G) -> AffineRelation<G> {
        match self.system() {
            None => AffineRelation::empty(self.dom, self.cod),
            Some((s, a)) => {
                let a: Vec<G> = a.iter().map(&f).collect();
                AffineRelation::from_constraints(self.dom, self.cod, &s.map(&f), &a).expect("same shape")
            }
        }
    }
}

impl<F: ExactField> fmt::Display for AffineRelation<F> {
    /// `dom->cod: [constraints|rhs]` or `dom->cod: empty`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.system() {
            None => write!(f, "{}->{}: empty", self.dom, self.cod),
            Some((s, a)) => {
                let aug = Matrix::hstack(&[s, &Matrix::column_vector(a)]).expect("rows agree");
                write!(f, "{}->{}: [{}]", self.dom, self.cod, aug)
            }
        }
    }
}

/// Generators of the affine fragment, read on a single coordinate per wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaaKind {
    /// Copying: all legs equal.
    Grey,
    /// Summing: all legs add up to the phase.
    White,
}

/// Grey spiders are phase-free in this fragment; a nonzero phase is rejected.
pub fn gaa_generator<F: ExactField>(kind: GaaKind, dom: usize, cod: usize, phase: &F) -> Result<AffineRelation<F>> {
    let w = dom + cod;
    match kind {
        GaaKind::Grey => {
            if !phase.is_zero() {
                return Err(Error::UnknownKind("grey spider with affine phase".into()));
            }
            let rows = w.saturating_sub(1);
            let mut s = Matrix::zeros(rows, w);
            for i in 0..rows {
                s.set(i, i, F::one());
                s.set(i, i + 1, -F::one());
            }
            AffineRelation::from_constraints(dom, cod, &s, &vec![F::zero(); rows])
        }
        GaaKind::White => {
            let s = Matrix::from_fn(1, w, |_, _| F::one());
            AffineRelation::from_constraints(dom, cod, &s, std::slice::from_ref(phase))
        }
    }
}

/// Parses a generator kind name.
pub fn gaa_kind(name: &str) -> Result<GaaKind> {
    match name {
        "grey" | "Grey" | "ZSpider" => Ok(GaaKind::Grey),
        "white" | "White" | "XSpider" => Ok(GaaKind::White),
        other => Err(Error::UnknownKind(other.to_string())),
    }
}

/// Scalar multiplication `{(x, c·x)}`.
pub fn scalar_mult<F: ExactField>(c: &F) -> AffineRelation<F> {
    AffineRelation::graph(&Matrix::diag(std::slice::from_ref(c)), &[F::zero()]).expect("1x1")
}
