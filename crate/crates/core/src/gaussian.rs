//! Classical and quantum Gaussian semantics and their embeddings into
//! Lagrangian relations.
//!
//! Phase-space vectors of a quantum state are read in the coordinates
//! `w = (z, −x)`, with `z` momenta and `x` positions; covariance matrices and
//! means below refer to those coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lagrangian::{is_real_matrix, is_symplectic, omega, LagRel};
use crate::linalg::{is_pd_hermitian, is_psd, is_psd_hermitian, schur_project, Matrix};
use crate::scalar::{rat_to_f64, Field, GaussRat, Rational, C};

fn lift(m: &Matrix<Rational>) -> Matrix<C> {
    m.map(|x| GaussRat::real(x.clone()))
}

fn lift_vec(v: &[Rational]) -> Vec<C> {
    v.iter().map(|x| GaussRat::real(x.clone())).collect()
}

fn real_part(m: &Matrix<C>) -> Matrix<Rational> {
    m.map(|x| x.re.clone())
}

fn imag_part(m: &Matrix<C>) -> Matrix<Rational> {
    m.map(|x| x.im.clone())
}

/// A Gaussian transformation `x ↦ A·x + ε`, `ε ~ 𝒩(Σ, μ)`.
#[derive(Clone, PartialEq, Debug)]
pub struct GaussMap {
    pub a: Matrix<Rational>,
    pub sigma: Matrix<Rational>,
    pub mu: Vec<Rational>,
}

impl GaussMap {
    pub fn new(a: Matrix<Rational>, sigma: Matrix<Rational>, mu: Vec<Rational>) -> Result<Self> {
        let m = a.rows();
        if sigma.shape() != (m, m) || mu.len() != m {
            return Err(Error::DimensionMismatch("Gaussian map blocks".into()));
        }
        if !is_psd(&sigma)? {
            return Err(Error::NotPositive);
        }
        Ok(GaussMap { a, sigma, mu })
    }

    pub fn identity(n: usize) -> Self {
        GaussMap { a: Matrix::identity(n), sigma: Matrix::zeros(n, n), mu: vec![Rational::zero(); n] }
    }

    /// The distribution `𝒩(Σ, μ)` as a map `0 → n`.
    pub fn state(sigma: Matrix<Rational>, mu: Vec<Rational>) -> Result<Self> {
        Self::new(Matrix::zeros(mu.len(), 0), sigma, mu)
    }

    pub fn dom(&self) -> usize {
        self.a.cols()
    }

    pub fn cod(&self) -> usize {
        self.a.rows()
    }

    /// `self` followed by `next`: `(BA, Δ + BΣBᵀ, ν + Bμ)`.
    pub fn then(&self, next: &GaussMap) -> Result<GaussMap> {
        if self.cod() != next.dom() {
            return Err(Error::DimensionMismatch(format!(
                "Gaussian maps {}->{} and {}->{}",
                self.dom(),
                self.cod(),
                next.dom(),
                next.cod()
            )));
        }
        let b = &next.a;
        let sigma = next.sigma.add(&b.dot(&self.sigma).dot(&b.transpose()))?;
        let shift = b.mul_vec(&self.mu)?;
        let mu = next.mu.iter().zip(shift).map(|(x, y)| x.clone() + y).collect();
        Ok(GaussMap { a: b.dot(&self.a), sigma, mu })
    }

    /// `{z_in = Aᵀ·z_out, x_out = A·x_in + μ − iΣ·z_out}`.
    pub fn to_gaussrel(&self) -> LagRel {
        let (n, m) = (self.dom(), self.cod());
        let w = 2 * n + 2 * m;
        let mut s = Matrix::zeros(n + m, w);
        let mut rhs = vec![C::zero(); n + m];
        for i in 0..n {
            s.set(i, i, C::one());
            for k in 0..m {
                s.set(i, 2 * n + k, -GaussRat::real(self.a.get(k, i).clone()));
            }
        }
        for k in 0..m {
            let r = n + k;
            s.set(r, 2 * n + m + k, C::one());
            for j in 0..n {
                s.set(r, n + j, -GaussRat::real(self.a.get(k, j).clone()));
            }
            for j in 0..m {
                s.set(r, 2 * n + j, GaussRat::new(Rational::zero(), self.sigma.get(k, j).clone()));
            }
            rhs[r] = GaussRat::real(self.mu[k].clone());
        }
        LagRel::from_constraints(n, m, &s, &rhs).expect("Gaussian maps embed as Lagrangian relations")
    }
}

/// A Gaussian on the quotient `ℝⁿ / D`.
///
/// `fibre` holds a basis of `D` as columns, with the transposed basis in
/// RREF. The quotient is coordinatized by the non-pivot coordinates `Q`
/// through `π(x) = x_Q − C·x_P`.
#[derive(Clone, PartialEq, Debug)]
pub struct ExtendedGaussian {
    pub n: usize,
    pub fibre: Matrix<Rational>,
    pub sigma: Matrix<Rational>,
    pub mu: Vec<Rational>,
}

impl ExtendedGaussian {
    /// Pivot coordinates of the fibre basis.
    pub fn fibre_pivots(&self) -> Vec<usize> {
        self.fibre.transpose().rref().pivots
    }

    /// The quotient map `π`, a `|Q| × n` matrix.
    pub fn quotient_map(&self) -> Matrix<Rational> {
        quotient_map(&self.fibre, self.n)
    }

    /// Reads the extended Gaussian of a quasi-real state. Momentum shifts
    /// along the fibre carry no probabilistic content and are dropped.
    pub fn from_state(state: &LagRel) -> Result<Self> {
        if !state.is_state() {
            return Err(Error::NotAState(state.n_in()));
        }
        if state.is_empty() || !state.is_quasi_real()? {
            return Err(Error::NotQuasiReal);
        }
        let n = state.n_out();
        let basis = state.relation().linear_basis().expect("nonempty");
        let bz = basis.submatrix(0..n, 0..basis.cols());
        // D is the annihilator of the momentum projection.
        let ann = bz.transpose().kernel();
        let rows = ann.transpose().row_space_basis();
        if !is_real_matrix(&rows) {
            return Err(Error::NotQuasiReal);
        }
        let fibre = real_part(&rows).transpose();
        // Remove the momentum shift along the fibre so the pushforward is nonempty.
        let point = state.real_point().ok_or(Error::NotQuasiReal)?;
        let z0: Vec<Rational> = point[..n].to_vec();
        let gram = fibre.transpose().dot(&fibre);
        let coef = match gram.inverse() {
            Some(g) => g.mul_vec(&fibre.transpose().mul_vec(&z0)?)?,
            None => vec![],
        };
        let along = fibre.mul_vec(&coef)?;
        let t: Vec<C> = along.iter().map(|x| -GaussRat::real(x.clone())).chain((0..n).map(|_| C::zero())).collect();
        let state = &state.translate(&t)?;
        let pi = quotient_map(&fibre, n);
        let pushed = state.compose(&GaussMap::new(pi.clone(), Matrix::zeros(pi.rows(), pi.rows()), vec![Rational::zero(); pi.rows()])?.to_gaussrel())?;
        let (sigma, mu) = read_gaussian_state(&pushed)?;
        Ok(ExtendedGaussian { n, fibre, sigma, mu })
    }

    /// The Gaussian relation: the quotient Gaussian pulled back along `π`.
    pub fn to_relation(&self) -> Result<LagRel> {
        let pi = self.quotient_map();
        let q = pi.rows();
        let state = GaussMap::state(self.sigma.clone(), self.mu.clone())?.to_gaussrel();
        let pull = GaussMap::new(pi, Matrix::zeros(q, q), vec![Rational::zero(); q])?.to_gaussrel().converse();
        state.compose(&pull)
    }
}

fn quotient_map(fibre: &Matrix<Rational>, n: usize) -> Matrix<Rational> {
    let rr = fibre.transpose().rref();
    let pivots = rr.pivots;
    let rest: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut pi = Matrix::zeros(rest.len(), n);
    for (i, &q) in rest.iter().enumerate() {
        pi.set(i, q, Rational::one());
        for (j, &p) in pivots.iter().enumerate() {
            pi.set(i, p, -fibre.get(q, j).clone());
        }
    }
    pi
}

/// Reads `(Σ, μ)` from a state of the form `{x + iΣ·z = μ}`.
pub fn read_gaussian_state(state: &LagRel) -> Result<(Matrix<Rational>, Vec<Rational>)> {
    let n = state.n_out();
    let (s, a) = state.relation().system().ok_or(Error::NotQuasiReal)?;
    // Order (x, z) so the positions pivot first.
    let order: Vec<usize> = (n..2 * n).chain(0..n).collect();
    let aug = Matrix::hstack(&[&s.select_cols(&order), &Matrix::column_vector(a)])?;
    let rr = aug.rref();
    if rr.pivots != (0..n).collect::<Vec<_>>() {
        return Err(Error::NotQuasiReal);
    }
    let block = rr.r.submatrix(0..n, n..2 * n);
    if !real_part(&block).is_zero() {
        return Err(Error::NotQuasiReal);
    }
    let sigma = imag_part(&block);
    let rhs = rr.r.column(2 * n);
    if rhs.iter().any(|x| !x.is_real()) || !sigma.is_symmetric() || !is_psd(&sigma)? {
        return Err(Error::NotQuasiReal);
    }
    Ok((sigma, rhs.into_iter().map(|x| x.re).collect()))
}

/// A pure Gaussian quantum state up to global phase.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PhaseMatrix {
    #[serde(with = "crate::io::cmatrix")]
    pub phi: Matrix<C>,
    /// `(s, t)`: momentum kick `s` and position centre `t`.
    #[serde(with = "crate::io::rvec")]
    pub displacement: Vec<Rational>,
}

impl PhaseMatrix {
    pub fn new(phi: Matrix<C>, displacement: Vec<Rational>) -> Result<Self> {
        let n = phi.rows();
        if !phi.is_square() || displacement.len() != 2 * n {
            return Err(Error::DimensionMismatch("phase matrix and displacement".into()));
        }
        if !phi.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !is_pd_hermitian(&lift(&imag_part(&phi)))? {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(PhaseMatrix { phi, displacement })
    }

    pub fn vacuum(n: usize) -> Self {
        PhaseMatrix { phi: Matrix::identity(n).scale(&C::i()), displacement: vec![Rational::zero(); 2 * n] }
    }

    pub fn modes(&self) -> usize {
        self.phi.rows()
    }

    fn s(&self) -> &[Rational] {
        &self.displacement[..self.modes()]
    }

    fn t(&self) -> &[Rational] {
        &self.displacement[self.modes()..]
    }

    /// `{z − Φ·x = s − Φ·t}`.
    pub fn state(&self) -> LagRel {
        let n = self.modes();
        let s = Matrix::hstack(&[&Matrix::identity(n), &self.phi.neg()]).expect("rows");
        let phit = self.phi.mul_vec(&lift_vec(self.t())).expect("len");
        let rhs: Vec<C> = lift_vec(self.s()).into_iter().zip(phit).map(|(a, b)| a - b).collect();
        LagRel::from_constraints(0, n, &s, &rhs).expect("phase matrices give Lagrangian states")
    }

    /// The projection onto this state, as a relation `n → 0`.
    pub fn effect(&self) -> LagRel {
        let conj = PhaseMatrix { phi: self.phi.conj(), displacement: self.displacement.clone() };
        // Built directly: the conjugate phase matrix is not a valid state.
        let n = self.modes();
        let s = Matrix::hstack(&[&Matrix::identity(n), &conj.phi.neg()]).expect("rows");
        let phit = conj.phi.mul_vec(&lift_vec(self.t())).expect("len");
        let rhs: Vec<C> = lift_vec(self.s()).into_iter().zip(phit).map(|(a, b)| a - b).collect();
        LagRel::from_constraints(0, n, &s, &rhs).expect("Lagrangian").converse()
    }

    /// Wigner covariance in `(z, −x)` coordinates.
    pub fn covariance(&self) -> Matrix<Rational> {
        phase_to_covariance(&self.phi).expect("valid phase matrix")
    }

    /// Wigner mean in `(z, −x)` coordinates: `(s, −t)`.
    pub fn mean(&self) -> Vec<Rational> {
        self.s().iter().cloned().chain(self.t().iter().map(|x| -x.clone())).collect()
    }

    /// Inverse of [`covariance`](Self::covariance) and [`mean`](Self::mean).
    pub fn from_wigner(sigma: &Matrix<Rational>, mean: &[Rational]) -> Result<Self> {
        let phi = covariance_to_phase(sigma)?;
        let n = phi.rows();
        if mean.len() != 2 * n {
            return Err(Error::DimensionMismatch("Wigner mean length".into()));
        }
        let disp = mean[..n].iter().cloned().chain(mean[n..].iter().map(|x| -x.clone())).collect();
        PhaseMatrix::new(phi, disp)
    }
}

/// `Σ = [[V + U V⁻¹ U, −U V⁻¹], [−V⁻¹ U, V⁻¹]]` with `Φ = U + iV`.
pub fn phase_to_covariance(phi: &Matrix<C>) -> Result<Matrix<Rational>> {
    if !phi.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let u = real_part(phi);
    let v = imag_part(phi);
    if !is_pd_hermitian(&lift(&v))? {
        return Err(Error::NotPositiveDefinite);
    }
    let vi = v.inverse().expect("positive definite");
    let a = v.add(&u.dot(&vi).dot(&u))?;
    let b = u.dot(&vi).neg();
    let c = vi.dot(&u).neg();
    Matrix::block(&[vec![&a, &b], vec![&c, &vi]])
}

/// `Φ = −B C⁻¹ + i C⁻¹` for `Δ = [[A, B], [Bᵀ, C]]` with `det Δ = 1` and
/// `Δ + iΩ ⪰ 0`.
pub fn covariance_to_phase(delta: &Matrix<Rational>) -> Result<Matrix<C>> {
    let bad = |why: &str| Error::NotAQuantumCovariance(why.to_string());
    if !delta.is_square() || !delta.rows().is_multiple_of(2) {
        return Err(bad("not a 2n x 2n matrix"));
    }
    if !delta.is_symmetric() {
        return Err(bad("not symmetric"));
    }
    if delta.det()? != Rational::one() {
        return Err(bad("determinant is not 1"));
    }
    let n = delta.rows() / 2;
    let herm = lift(delta).add(&omega(n).scale(&C::i()))?;
    if !is_psd_hermitian(&herm)? {
        return Err(bad("uncertainty principle violated"));
    }
    let b = delta.submatrix(0..n, n..2 * n);
    let c = delta.submatrix(n..2 * n, n..2 * n);
    let ci = c.inverse().ok_or_else(|| bad("singular position block"))?;
    let re = b.dot(&ci).neg();
    if !re.is_symmetric() {
        return Err(bad("real part not symmetric"));
    }
    Ok(Matrix::from_fn(n, n, |i, j| GaussRat::new(re.get(i, j).clone(), ci.get(i, j).clone())))
}

/// Reorders `(z_1..z_k, −x_1..−x_k)` coordinates so that the modes in `first`
/// come before the rest, each group as `(z, −x)`.
fn mode_major(k: usize, first: &[usize]) -> Vec<usize> {
    let rest: Vec<usize> = (0..k).filter(|m| !first.contains(m)).collect();
    let group = |ms: &[usize]| -> Vec<usize> { ms.iter().copied().chain(ms.iter().map(|m| m + k)).collect() };
    let mut v = group(first);
    v.extend(group(&rest));
    v
}

/// Projects the first `effect.modes()` modes of `state` onto `effect`,
/// returning the Wigner covariance and mean of the remaining modes.
pub fn qgauss_project(state: &PhaseMatrix, effect: &PhaseMatrix) -> Result<(Matrix<Rational>, Vec<Rational>)> {
    let k = state.modes();
    let n = effect.modes();
    if n > k {
        return Err(Error::DimensionMismatch("effect larger than state".into()));
    }
    let order = mode_major(k, &(0..n).collect::<Vec<_>>());
    let sigma = state.covariance().select_rows(&order).select_cols(&order);
    let mean = state.mean();
    let mu: Vec<Rational> = order.iter().map(|&i| mean[i].clone()).collect();
    schur_project(&sigma, 2 * n, &effect.covariance(), &mu, &effect.mean())
}

/// Graph of a Gaussian unitary, checking symplecticity.
pub fn qgauss_unitary(s: &Matrix<Rational>, shift: &[Rational]) -> Result<LagRel> {
    let sc = lift(s);
    if !is_symplectic(&sc) {
        return Err(Error::NotSymplectic);
    }
    LagRel::symplectic_graph(&sc, &lift_vec(shift))
}

/// Action of a unitary `v ↦ S·v + c` (on `(z, x)`) on Wigner data in
/// `(z, −x)` coordinates.
pub fn unitary_on_wigner(
    s: &Matrix<Rational>,
    shift: &[Rational],
    sigma: &Matrix<Rational>,
    mean: &[Rational],
) -> Result<(Matrix<Rational>, Vec<Rational>)> {
    let n = s.rows() / 2;
    let d = Matrix::diag(&(0..2 * n).map(|i| if i < n { Rational::one() } else { -Rational::one() }).collect::<Vec<_>>());
    let sw = d.dot(s).dot(&d);
    let cov = sw.dot(sigma).dot(&sw.transpose());
    let dc = d.mul_vec(shift)?;
    let mu = sw.mul_vec(mean)?.into_iter().zip(dc).map(|(a, b)| a + b).collect();
    Ok((cov, mu))
}

/// The doubling of a pure Gaussian state: its Wigner distribution as a
/// classical Gaussian state on `2n` variables.
pub fn double_state(state: &PhaseMatrix) -> Result<LagRel> {
    Ok(GaussMap::state(state.covariance(), state.mean())?.to_gaussrel())
}

/// Recovers the phase matrix and displacement of a Gaussian state
/// relation `{z = Φx + c}`, with `c = s − Φt`.
pub fn phase_of_state(state: &LagRel) -> Result<PhaseMatrix> {
    let ap = state.ap_form()?;
    let n = ap.n;
    if ap.pivots.len() != n {
        return Err(Error::NotPositiveDefinite);
    }
    let c: Vec<C> = ap.x.iter().map(|v| -v.clone()).collect();
    let u = real_part(&ap.phi);
    let v = imag_part(&ap.phi);
    let vi = v.inverse().ok_or(Error::NotPositiveDefinite)?;
    let im_c: Vec<Rational> = c.iter().map(|x| x.im.clone()).collect();
    let t: Vec<Rational> = vi.mul_vec(&im_c)?.into_iter().map(|x| -x).collect();
    let ut = u.mul_vec(&t)?;
    let s: Vec<Rational> = c.iter().zip(ut).map(|(x, y)| x.re.clone() + y).collect();
    PhaseMatrix::new(ap.phi.clone(), s.into_iter().chain(t).collect())
}

/// `exp(−(v−μ)ᵀΣ(v−μ)) / πⁿ` at `point`, all in `(z, −x)` coordinates.
pub fn wigner_density_at(state: &PhaseMatrix, point: &[f64]) -> Result<f64> {
    WignerDensity::new(state).at(point)
}

/// Float snapshot of a state's Wigner function for repeated evaluation.
#[derive(Clone, Debug)]
pub struct WignerDensity {
    sigma: Vec<Vec<f64>>,
    mean: Vec<f64>,
    norm: f64,
}

impl WignerDensity {
    pub fn new(state: &PhaseMatrix) -> Self {
        let sigma = state.covariance().row_vecs().iter().map(|r| r.iter().map(rat_to_f64).collect()).collect();
        let mean = state.mean().iter().map(rat_to_f64).collect();
        let norm = std::f64::consts::PI.powi(state.modes() as i32);
        WignerDensity { sigma, mean, norm }
    }

    pub fn at(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.mean.len() {
            return Err(Error::DimensionMismatch("Wigner point length".into()));
        }
        let d: Vec<f64> = point.iter().zip(&self.mean).map(|(p, m)| p - m).collect();
        let quad: f64 = self.sigma.iter().zip(&d).map(|(row, di)| di * row.iter().zip(&d).map(|(s, dj)| s * dj).sum::<f64>()).sum();
        Ok((-quad).exp() / self.norm)
    }
}
