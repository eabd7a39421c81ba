//! Affine Lagrangian relations over ℚ(i).
//!
//! A relation `n → m` lives in coordinates `(z_in, x_in, z_out, x_out)`,
//! each block one entry per mode, and is Lagrangian for `ω_out − ω_in` where
//! `ω((z,x),(z',x')) = z·x' − x·z'`.

use std::fmt;

use crate::affine::AffineRelation;
use crate::error::{Error, Result};
use crate::linalg::{is_psd_hermitian, Matrix};
use crate::scalar::{CirclePoint, Field, GaussRat, Rational, C};

/// `Ωₙ = [[0, I], [−I, 0]]` in `(z, x)` ordering.
pub fn omega(n: usize) -> Matrix<C> {
    let i = Matrix::<C>::identity(n);
    let z = Matrix::<C>::zeros(n, n);
    Matrix::block(&[vec![&z, &i], vec![&i.neg(), &z]]).expect("square blocks")
}

/// Matrix of the form `ω_out − ω_in` on `(z_in, x_in, z_out, x_out)`.
pub fn twisted_omega(n_in: usize, n_out: usize) -> Matrix<C> {
    Matrix::block_diag(&[&omega(n_in).neg(), &omega(n_out)])
}

#[derive(Clone, PartialEq, Debug)]
pub struct LagRel {
    n_in: usize,
    n_out: usize,
    rel: AffineRelation<C>,
}

/// Whether a subspace of `C^(2n_in + 2n_out)` is empty or affine Lagrangian.
pub fn is_lagrangian(rel: &AffineRelation<C>) -> bool {
    if !rel.dom().is_multiple_of(2) || !rel.cod().is_multiple_of(2) {
        return false;
    }
    let Some(b) = rel.linear_basis() else {
        return true;
    };
    let (n_in, n_out) = (rel.dom() / 2, rel.cod() / 2);
    b.cols() == n_in + n_out && b.transpose().dot(&twisted_omega(n_in, n_out)).dot(&b).is_zero()
}

fn real(r: Rational) -> C {
    GaussRat::real(r)
}

fn cint(n: i64) -> C {
    C::int(n)
}

impl LagRel {
    /// Wraps an affine relation, checking the Lagrangian condition.
    pub fn new(rel: AffineRelation<C>) -> Result<Self> {
        if !is_lagrangian(&rel) {
            return Err(Error::NotLagrangian);
        }
        Ok(LagRel { n_in: rel.dom() / 2, n_out: rel.cod() / 2, rel })
    }

    pub fn from_constraints(n_in: usize, n_out: usize, s: &Matrix<C>, a: &[C]) -> Result<Self> {
        Self::new(AffineRelation::from_constraints(2 * n_in, 2 * n_out, s, a)?)
    }

    pub fn from_image(n_in: usize, n_out: usize, basis: &Matrix<C>, point: &[C]) -> Result<Self> {
        Self::new(AffineRelation::from_image(2 * n_in, 2 * n_out, basis, point)?)
    }

    /// Lifts a real relation.
    pub fn from_real(rel: &AffineRelation<Rational>) -> Result<Self> {
        Self::new(rel.map_field(|x| real(x.clone())))
    }

    pub fn empty(n_in: usize, n_out: usize) -> Self {
        LagRel { n_in, n_out, rel: AffineRelation::empty(2 * n_in, 2 * n_out) }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn relation(&self) -> &AffineRelation<C> {
        &self.rel
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    pub fn is_state(&self) -> bool {
        self.n_in == 0
    }

    pub fn identity(n: usize) -> Self {
        LagRel { n_in: n, n_out: n, rel: AffineRelation::identity(2 * n) }
    }

    /// Swap `n + m → m + n`.
    pub fn symmetry(n: usize, m: usize) -> Self {
        let mut perm = Vec::with_capacity(n + m);
        perm.extend(m..m + n);
        perm.extend(0..m);
        Self::permutation(&perm)
    }

    /// Sends input mode `i` to output mode `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let k = perm.len();
        let doubled: Vec<usize> = perm.iter().copied().chain(perm.iter().map(|p| p + k)).collect();
        LagRel { n_in: k, n_out: k, rel: AffineRelation::permutation(&doubled) }
    }

    /// Graph of the affine symplectomorphism `v ↦ S·v + c` on `(z, x)`.
    pub fn symplectic_graph(s: &Matrix<C>, c: &[C]) -> Result<Self> {
        if !s.is_square() || !s.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch("symplectic matrix must be 2n x 2n".into()));
        }
        if !is_symplectic(s) {
            return Err(Error::NotSymplectic);
        }
        let n = s.rows() / 2;
        Ok(LagRel { n_in: n, n_out: n, rel: AffineRelation::graph(s, c)? })
    }

    /// The compact-structure unit `0 → 2n`, `{(z, z, x, −x)}`.
    pub fn cup(n: usize) -> Self {
        Self::bending_state(n, false)
    }

    pub fn cap(n: usize) -> Self {
        Self::cup(n).converse()
    }

    /// The phase-free grey `0 → 2n` spider per mode, `{(z, −z, x, x)}`.
    pub fn grey_cup(n: usize) -> Self {
        Self::bending_state(n, true)
    }

    pub fn grey_cap(n: usize) -> Self {
        Self::grey_cup(n).converse()
    }

    /// Coordinates `(z_a, z_b, x_a, x_b)`; `negate_z` picks `z_b = −z_a, x_b = x_a`,
    /// otherwise `z_b = z_a, x_b = −x_a`.
    fn bending_state(n: usize, negate_z: bool) -> Self {
        let (sz, sx) = if negate_z { (cint(1), cint(-1)) } else { (cint(-1), cint(1)) };
        let mut s = Matrix::zeros(2 * n, 4 * n);
        for k in 0..n {
            s.set(k, k, cint(1));
            s.set(k, n + k, sz.clone());
            s.set(n + k, 2 * n + k, cint(1));
            s.set(n + k, 3 * n + k, sx.clone());
        }
        let rel = AffineRelation::from_constraints(0, 4 * n, &s, &vec![C::zero(); 2 * n]).expect("shape");
        LagRel { n_in: 0, n_out: 2 * n, rel }
    }

    pub fn converse(&self) -> Self {
        LagRel { n_in: self.n_out, n_out: self.n_in, rel: self.rel.converse() }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(LagRel { n_in: self.n_in, n_out: other.n_out, rel: self.rel.compose(&other.rel)? })
    }

    /// Monoidal product: modes of `self` come first in every block.
    pub fn tensor(&self, other: &Self) -> Self {
        let raw = self.rel.tensor(&other.rel);
        // raw coordinates: (zA, xA, zB, xB | z'A, x'A, z'B, x'B) -> (zA, zB, xA, xB | ...)
        let interleave = |a: usize, b: usize, off: usize| -> Vec<usize> {
            let mut v: Vec<usize> = (off..off + a).collect();
            v.extend(off + 2 * a..off + 2 * a + b);
            v.extend(off + a..off + 2 * a);
            v.extend(off + 2 * a + b..off + 2 * a + 2 * b);
            v
        };
        let mut order = interleave(self.n_in, other.n_in, 0);
        order.extend(interleave(self.n_out, other.n_out, 2 * (self.n_in + other.n_in)));
        let rel = raw.reorder(raw.dom(), raw.cod(), &order).expect("permutation");
        LagRel { n_in: self.n_in + other.n_in, n_out: self.n_out + other.n_out, rel }
    }

    pub fn tensor_all(parts: &[LagRel]) -> Self {
        parts.iter().fold(Self::identity(0), |acc, p| acc.tensor(p))
    }

    /// The state obtained by bending every input into an output with [`cup`]:
    /// outputs are `(bent inputs, outputs)`.
    ///
    /// [`cup`]: LagRel::cup
    pub fn name(&self) -> Self {
        let lhs = Self::cup(self.n_in);
        let rhs = Self::identity(self.n_in).tensor(self);
        lhs.compose(&rhs).expect("arity")
    }

    /// Inverse of [`name`](LagRel::name).
    pub fn unname(state: &Self, n_in: usize) -> Result<Self> {
        if !state.is_state() || state.n_out < n_in {
            return Err(Error::NotAState(state.n_in));
        }
        let n_out = state.n_out - n_in;
        let lhs = Self::identity(n_in).tensor(state);
        let rhs = Self::cap(n_in).tensor(&Self::identity(n_out));
        lhs.compose(&rhs)
    }

    /// Reduced canonical form of the bent state.
    pub fn ap_form(&self) -> Result<ApForm> {
        if !self.is_state() {
            return Err(Error::NotAState(self.n_in));
        }
        ApForm::of_state(self)
    }

    /// A real point of the relation, if one exists.
    pub fn real_point(&self) -> Option<Vec<Rational>> {
        let (s, a) = self.rel.system()?;
        let re = s.map(|x| x.re.clone());
        let im = s.map(|x| x.im.clone());
        let m = Matrix::vstack(&[&re, &im]).expect("cols");
        let rhs: Vec<Rational> = a.iter().map(|x| x.re.clone()).chain(a.iter().map(|x| x.im.clone())).collect();
        m.solve_affine(&rhs).ok().flatten()
    }

    pub fn has_real_point(&self) -> bool {
        self.real_point().is_some()
    }

    /// `{v + t : v ∈ self}`.
    pub fn translate(&self, t: &[C]) -> Result<Self> {
        let Some((s, a)) = self.rel.system() else {
            return Ok(self.clone());
        };
        let st = s.mul_vec(t)?;
        let rhs: Vec<C> = a.iter().zip(st).map(|(x, y)| x.clone() + y).collect();
        Self::from_constraints(self.n_in, self.n_out, s, &rhs)
    }

    /// Positivity, decided by two independent procedures that must agree.
    pub fn is_positive(&self) -> Result<bool> {
        let a = self.is_positive_ap()?;
        let b = self.is_positive_hermitian()?;
        if a != b {
            return Err(Error::InternalDisagreement(format!("positivity: AP test {a}, Hermitian test {b}")));
        }
        Ok(a)
    }

    /// Positivity via the AP invariant: `E` real, `Im φ ⪰ 0`, real shift.
    pub fn is_positive_ap(&self) -> Result<bool> {
        if self.is_empty() {
            return Ok(true);
        }
        if !self.has_real_point() {
            return Ok(false);
        }
        let ap = self.name().ap_form()?;
        if !ap.l.row_vecs().iter().flatten().all(|x| x.is_real()) {
            return Ok(false);
        }
        is_psd_hermitian(&ap.phi.map(|x| x.im_part()))
    }

    /// Positivity via the Hermitian form `i·ω(v̄, v)` restricted to the linear part.
    pub fn is_positive_hermitian(&self) -> Result<bool> {
        let Some(b) = self.rel.linear_basis() else {
            return Ok(true);
        };
        if !self.has_real_point() {
            return Ok(false);
        }
        let h = b.conj_transpose().dot(&twisted_omega(self.n_in, self.n_out)).dot(&b).scale(&C::i());
        is_psd_hermitian(&h)
    }

    /// Positive with purely imaginary `φ`; the empty relation qualifies.
    pub fn is_quasi_real(&self) -> Result<bool> {
        if self.is_empty() {
            return Ok(true);
        }
        if !self.is_positive()? {
            return Ok(false);
        }
        let ap = self.name().ap_form()?;
        Ok(ap.phi.row_vecs().iter().flatten().all(|x| x.re.is_zero()))
    }

    /// Canonical text for equality checks and reports.
    pub fn fingerprint(&self) -> String {
        self.rel.to_string()
    }

    /// Complex conjugate relation.
    pub fn conj(&self) -> Self {
        LagRel { n_in: self.n_in, n_out: self.n_out, rel: self.rel.map_field(|x| x.conj()) }
    }
}

impl fmt::Display for LagRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rel)
    }
}

/// Reduced canonical form of a nonempty Lagrangian state on `n` modes.
///
/// With `A` the ascending list of modes carrying a momentum pivot (`m = |A|`)
/// and `B` the rest, the state is
/// `{−z_A − L·z_B + φ·x_A = x⃗,  x_B − Lᵀ·x_A = μ⃗}`.
#[derive(Clone, PartialEq, Debug)]
pub struct ApForm {
    pub n: usize,
    pub pivots: Vec<usize>,
    pub l: Matrix<C>,
    pub phi: Matrix<C>,
    pub x: Vec<C>,
    pub mu: Vec<C>,
}

impl ApForm {
    fn of_state(state: &LagRel) -> Result<Self> {
        let n = state.n_out;
        let (s, a) = state.rel.system().ok_or(Error::EmptyRelation)?;
        let aug = Matrix::hstack(&[s, &Matrix::column_vector(a)])?;
        let rr = aug.rref();
        debug_assert_eq!(rr.rank, n);
        let pivots: Vec<usize> = rr.pivots.iter().copied().filter(|&p| p < n).collect();
        let m = pivots.len();
        let rest: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let xa: Vec<usize> = pivots.iter().map(|p| n + p).collect();
        let xb: Vec<usize> = rest.iter().map(|p| n + p).collect();
        let r = &rr.r;
        let top: Vec<usize> = (0..m).collect();
        let bottom: Vec<usize> = (m..n).collect();
        let rhs = r.column(2 * n);
        let rhs_top: Vec<C> = rhs[..m].to_vec();
        let rhs_bottom: Vec<C> = rhs[m..n].to_vec();

        // Bottom rows: x_B + X2a·x_A = r2 after normalizing the x_B block.
        let x2b = r.select_rows(&bottom).select_cols(&xb);
        let x2b_inv = x2b.inverse().ok_or(Error::NotLagrangian)?;
        let x2a = x2b_inv.dot(&r.select_rows(&bottom).select_cols(&xa));
        let mu = x2b_inv.mul_vec(&rhs_bottom)?;

        // Top rows: z_A + Z1b·z_B + X1a·x_A + X1b·x_B = r1; substitute x_B.
        let z1b = r.select_rows(&top).select_cols(&rest);
        let x1a = r.select_rows(&top).select_cols(&xa);
        let x1b = r.select_rows(&top).select_cols(&xb);
        let x1a_eff = x1a.sub(&x1b.dot(&x2a))?;
        let shift_top: Vec<C> = rhs_top.iter().zip(x1b.mul_vec(&mu)?).map(|(p, q)| p.clone() - q).collect();

        let l = z1b;
        let phi = x1a_eff.neg();
        let x: Vec<C> = shift_top.into_iter().map(|v| -v).collect();
        if l.sub(&x2a.transpose().neg())? != Matrix::zeros(m, n - m) || !phi.is_symmetric() {
            return Err(Error::NotLagrangian);
        }
        Ok(ApForm { n, pivots, l, phi, x, mu })
    }

    /// The complement of the pivot modes.
    pub fn free_modes(&self) -> Vec<usize> {
        (0..self.n).filter(|j| !self.pivots.contains(j)).collect()
    }

    /// The permutation listing pivot modes then the remaining ones.
    pub fn permutation(&self) -> Vec<usize> {
        self.pivots.iter().copied().chain(self.free_modes()).collect()
    }

    /// `E = [I, L]` in the mode order given by [`permutation`](ApForm::permutation).
    pub fn e_matrix(&self) -> Matrix<C> {
        let m = self.pivots.len();
        let mut e = Matrix::zeros(m, self.n);
        let rest = self.free_modes();
        for (i, &p) in self.pivots.iter().enumerate() {
            e.set(i, p, cint(1));
            for (j, &b) in rest.iter().enumerate() {
                e.set(i, b, self.l.get(i, j).clone());
            }
        }
        e
    }

    /// Rebuilds the state.
    pub fn to_relation(&self) -> Result<LagRel> {
        let n = self.n;
        let m = self.pivots.len();
        let rest = self.free_modes();
        let mut s = Matrix::zeros(n, 2 * n);
        let mut rhs = Vec::with_capacity(n);
        for i in 0..m {
            s.set(i, self.pivots[i], cint(-1));
            for (j, &b) in rest.iter().enumerate() {
                s.set(i, b, -self.l.get(i, j).clone());
            }
            for (j, &a) in self.pivots.iter().enumerate() {
                s.set(i, n + a, self.phi.get(i, j).clone());
            }
            rhs.push(self.x[i].clone());
        }
        for (k, &b) in rest.iter().enumerate() {
            let i = m + k;
            s.set(i, n + b, cint(1));
            for (j, &a) in self.pivots.iter().enumerate() {
                s.set(i, n + a, -self.l.get(j, k).clone());
            }
            rhs.push(self.mu[k].clone());
        }
        LagRel::from_constraints(0, n, &s, &rhs)
    }
}

impl fmt::Display for ApForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[C]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let l = if self.l.rows() == 0 || self.l.cols() == 0 { String::new() } else { self.l.to_string() };
        write!(
            f,
            "n={} perm=[{}] L=[{}] phi=[{}] x=[{}] mu=[{}]",
            self.n,
            self.permutation().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
            l,
            self.phi,
            list(&self.x),
            list(&self.mu)
        )
    }
}

/// `SᵀΩS = Ω`.
pub fn is_symplectic(s: &Matrix<C>) -> bool {
    if !s.is_square() || !s.rows().is_multiple_of(2) {
        return false;
    }
    let o = omega(s.rows() / 2);
    s.transpose().dot(&o).dot(s) == o
}

/// Block criterion for `[[A, B], [C, D]]`.
pub fn is_symplectic_blocks(s: &Matrix<C>) -> Result<bool> {
    if !s.is_square() || !s.rows().is_multiple_of(2) {
        return Err(Error::DimensionMismatch("symplectic check needs a 2n x 2n matrix".into()));
    }
    let n = s.rows() / 2;
    let a = s.submatrix(0..n, 0..n);
    let b = s.submatrix(0..n, n..2 * n);
    let c = s.submatrix(n..2 * n, 0..n);
    let d = s.submatrix(n..2 * n, n..2 * n);
    let (at, bt, ct) = (a.transpose(), b.transpose(), c.transpose());
    Ok(at.dot(&c) == ct.dot(&a)
        && bt.dot(&d) == d.transpose().dot(&b)
        && at.dot(&d).sub(&ct.dot(&b))? == Matrix::identity(n))
}

/// `diag(A, A⁻ᵀ)`.
pub fn symp_diag(a: &Matrix<C>) -> Result<Matrix<C>> {
    let inv = a.inverse().ok_or(Error::NotSymplectic)?;
    Ok(Matrix::block_diag(&[a, &inv.transpose()]))
}

/// `[[I, B], [0, I]]`, with `B` symmetric.
pub fn symp_upper(b: &Matrix<C>) -> Result<Matrix<C>> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = b.rows();
    let (i, z) = (Matrix::identity(n), Matrix::zeros(n, n));
    Matrix::block(&[vec![&i, b], vec![&z, &i]])
}

/// `[[I, 0], [B, I]]`, with `B` symmetric.
pub fn symp_lower(b: &Matrix<C>) -> Result<Matrix<C>> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = b.rows();
    let (i, z) = (Matrix::identity(n), Matrix::zeros(n, n));
    Matrix::block(&[vec![&i, &z], vec![b, &i]])
}

/// `ℛ(θ) = [[c, −s], [s, c]]` on one mode.
pub fn rotation(p: &CirclePoint) -> Matrix<C> {
    let (c, s) = (real(p.cos().clone()), real(p.sin().clone()));
    Matrix::from_rows(vec![vec![c.clone(), -s.clone()], vec![s, c]], 2).expect("2x2")
}

/// `𝒮(θ)`: the rotation applied to the two momenta and to the two positions.
pub fn rotation_pair(p: &CirclePoint) -> Matrix<C> {
    let r = rotation(p);
    Matrix::block_diag(&[&r, &r])
}

/// Symplectic rotation `[[C, −S], [S, C]]` from the parts of a unitary `C + iS`.
pub fn symplectic_rotation(c: &Matrix<C>, s: &Matrix<C>) -> Result<Matrix<C>> {
    let m = Matrix::block(&[vec![c, &s.neg()], vec![s, c]])?;
    if !is_symplectic(&m) || m.transpose().dot(&m) != Matrix::identity(m.rows()) {
        return Err(Error::NotSymplectic);
    }
    Ok(m)
}

/// Symplectic rotation built from a circle point on each of `n` modes.
pub fn symplectic_rotation_diag(points: &[CirclePoint]) -> Matrix<C> {
    let c = Matrix::diag(&points.iter().map(|p| real(p.cos().clone())).collect::<Vec<_>>());
    let s = Matrix::diag(&points.iter().map(|p| real(p.sin().clone())).collect::<Vec<_>>());
    symplectic_rotation(&c, &s).expect("diagonal unitary")
}

/// Grey spider `m → n` with phase `(a, b)`: every position equal and
/// `Σ z_in − Σ z_out + b·x = a`.
pub fn grey_spider(m: usize, n: usize, a: &C, b: &C) -> LagRel {
    let k = m + n;
    if k == 0 {
        return scalar_spider(a, b);
    }
    let mut s = Matrix::zeros(k, 2 * k);
    let mut rhs = vec![C::zero(); k];
    // Leg coordinates: z of leg j is column zcol(j), x is xcol(j).
    let zcol = |j: usize| if j < m { j } else { 2 * m + (j - m) };
    let xcol = |j: usize| if j < m { m + j } else { 2 * m + n + (j - m) };
    for j in 0..k - 1 {
        s.set(j, xcol(j), cint(1));
        s.set(j, xcol(j + 1), cint(-1));
    }
    for j in 0..k {
        s.set(k - 1, zcol(j), if j < m { cint(1) } else { cint(-1) });
    }
    s.set(k - 1, xcol(0), b.clone());
    rhs[k - 1] = a.clone();
    LagRel::from_constraints(m, n, &s, &rhs).expect("spider is Lagrangian")
}

/// White spider `m → n` with phase `(a, b)`: inputs carry momentum `z`,
/// outputs `−z`, and `Σ x_in + Σ x_out − b·z = a`.
pub fn white_spider(m: usize, n: usize, a: &C, b: &C) -> LagRel {
    let k = m + n;
    if k == 0 {
        return scalar_spider(a, b);
    }
    let mut s = Matrix::zeros(k, 2 * k);
    let mut rhs = vec![C::zero(); k];
    let zcol = |j: usize| if j < m { j } else { 2 * m + (j - m) };
    let xcol = |j: usize| if j < m { m + j } else { 2 * m + n + (j - m) };
    // Signed momentum: input legs carry z, output legs −z.
    let sign = |j: usize| if j < m { cint(1) } else { cint(-1) };
    for j in 0..k - 1 {
        s.set(j, zcol(j), sign(j));
        s.set(j, zcol(j + 1), -sign(j + 1));
    }
    for j in 0..k {
        s.set(k - 1, xcol(j), cint(1));
    }
    // z = sign(0)·z_leg0
    s.set(k - 1, zcol(0), -(b.clone() * sign(0)));
    rhs[k - 1] = a.clone();
    LagRel::from_constraints(m, n, &s, &rhs).expect("spider is Lagrangian")
}

/// A legless spider: `∃t. b·t = a`.
fn scalar_spider(a: &C, b: &C) -> LagRel {
    if b.is_zero() && !a.is_zero() {
        LagRel::empty(0, 0)
    } else {
        LagRel::identity(0)
    }
}

/// `(z, x) ↦ (x, −z)`.
pub fn fourier() -> LagRel {
    LagRel::symplectic_graph(&omega(1), &[C::zero(), C::zero()]).expect("symplectic")
}

/// `(z, x) ↦ (−x, z)`.
pub fn fourier_inv() -> LagRel {
    LagRel::symplectic_graph(&omega(1).neg(), &[C::zero(), C::zero()]).expect("symplectic")
}

/// `(z, x) ↦ (z/a, a·x)`; at `a = 0` the limit `{z_in = 0, x_out = 0}`.
pub fn squeeze(a: &C) -> LagRel {
    match a.inv() {
        Some(inv) => LagRel::symplectic_graph(&Matrix::diag(&[inv, a.clone()]), &[C::zero(), C::zero()]).expect("symplectic"),
        None => {
            let zero = C::zero();
            grey_spider(1, 0, &zero, &zero).tensor(&white_spider(0, 1, &zero, &zero))
        }
    }
}

/// `{z = i·x}`.
pub fn vacuum() -> LagRel {
    white_spider(0, 1, &C::zero(), &C::i())
}

/// Whether every entry is real.
pub fn is_real_matrix(m: &Matrix<C>) -> bool {
    m.row_vecs().iter().flatten().all(|x| x.is_real())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn c(n: i64) -> C {
        C::int(n)
    }

    fn zero() -> C {
        C::zero()
    }

    #[test]
    fn lagrangian_predicate() {
        assert!(is_lagrangian(LagRel::identity(1).relation()));
        assert!(!is_lagrangian(&AffineRelation::total(0, 4)));
        assert!(is_lagrangian(LagRel::cup(1).relation()));
        assert!(is_lagrangian(LagRel::grey_cup(2).relation()));
    }

    #[test]
    fn snake_equations() {
        for n in 1..3 {
            let snake = LagRel::identity(n).tensor(&LagRel::cup(n)).compose(&LagRel::cap(n).tensor(&LagRel::identity(n))).unwrap();
            assert_eq!(snake, LagRel::identity(n));
            let grey = LagRel::identity(n)
                .tensor(&LagRel::grey_cup(n))
                .compose(&LagRel::grey_cap(n).tensor(&LagRel::identity(n)))
                .unwrap();
            assert_eq!(grey, LagRel::identity(n));
        }
    }

    #[test]
    fn spider_basics() {
        assert_eq!(grey_spider(1, 1, &zero(), &zero()), LagRel::identity(1));
        assert_eq!(white_spider(1, 1, &zero(), &zero()), LagRel::symplectic_graph(&Matrix::identity(2).neg(), &[zero(), zero()]).unwrap());
        assert_eq!(LagRel::grey_cup(1), grey_spider(0, 2, &zero(), &zero()));
        assert_eq!(LagRel::cup(1), white_spider(0, 2, &zero(), &zero()));
        assert_eq!(fourier().compose(&fourier_inv()).unwrap(), LagRel::identity(1));
        assert_eq!(squeeze(&c(2)).compose(&squeeze(&C::frac(1, 2))).unwrap(), LagRel::identity(1));
        // Upper shear.
        let shear = LagRel::symplectic_graph(&symp_upper(&Matrix::diag(&[c(3)])).unwrap(), &[zero(), zero()]).unwrap();
        assert_eq!(grey_spider(1, 1, &zero(), &c(3)), shear);
    }

    #[test]
    fn ap_form_examples() {
        let r = C::real(q(5, 2));
        let delta = grey_spider(0, 1, &r, &zero());
        let ap = delta.ap_form().unwrap();
        assert_eq!(ap.x, vec![r]);
        assert_eq!(ap.to_relation().unwrap(), delta);
        let vac = vacuum().ap_form().unwrap();
        assert_eq!(vac.phi, Matrix::diag(&[C::i()]));
        assert!(LagRel::identity(1).ap_form().is_err());
        assert_eq!(LagRel::empty(0, 1).ap_form(), Err(Error::EmptyRelation));
    }

    #[test]
    fn positivity_examples() {
        assert!(vacuum().is_positive().unwrap());
        assert!(!vacuum().conj().is_positive().unwrap());
        assert!(LagRel::identity(2).is_positive().unwrap());
        assert!(grey_spider(1, 2, &c(1), &c(3)).is_positive().unwrap());
        assert!(vacuum().is_quasi_real().unwrap());
        assert!(!white_spider(1, 1, &zero(), &c(2)).is_quasi_real().unwrap());
        assert!(LagRel::empty(1, 1).is_quasi_real().unwrap());
        // Complex shift is not positive.
        assert!(!grey_spider(0, 1, &C::i(), &zero()).is_positive().unwrap());
    }

    #[test]
    fn symplectic_checks() {
        assert!(is_symplectic(&omega(1)));
        assert!(is_symplectic(&Matrix::diag(&[c(2), C::frac(1, 2)])));
        assert!(!is_symplectic(&Matrix::diag(&[c(2), c(2)])));
        let p = CirclePoint::new(q(3, 5), q(4, 5)).unwrap();
        for m in [rotation(&p), rotation_pair(&p)] {
            assert!(is_symplectic(&m));
            assert!(is_symplectic_blocks(&m).unwrap());
            assert_eq!(m.transpose().dot(&m), Matrix::identity(m.rows()));
        }
        assert_eq!(rotation(&CirclePoint::identity()), Matrix::identity(2));
        assert_eq!(rotation(&CirclePoint::new(qi(0), qi(1)).unwrap()), omega(1).neg());
    }

    #[test]
    fn name_round_trip() {
        let r = grey_spider(2, 1, &c(1), &c(2));
        let named = r.name();
        assert_eq!(named.n_out(), 3);
        assert_eq!(LagRel::unname(&named, 2).unwrap(), r);
    }
}
