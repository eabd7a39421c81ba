//! Seeded random generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use lagrel::lagrangian::{symp_diag, symp_lower, symp_upper};
use lagrel::scalar::{q, qi};
use lagrel::{Field, GaussMap, LagRel, Matrix, Rational, C};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn lift(m: &Matrix<Rational>) -> Matrix<C> {
    m.map(|x| C::real(x.clone()))
}

pub struct Gen {
    pub rng: ChaCha8Rng,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavour {
    /// Arbitrary complex Lagrangian state.
    Complex,
    /// Real `L`, real point, `Im φ ⪰ 0` of random rank.
    Positive,
    /// Positive with `Re φ = 0`.
    QuasiReal,
    /// Real `L` and point, `φ` with an arbitrary symmetric imaginary part.
    NearPositive,
}

/// A state in reduced AP form together with a point it passes through.
#[derive(Clone, Debug)]
pub struct StateData {
    pub n: usize,
    pub pivots: Vec<usize>,
    pub l: Matrix<C>,
    pub phi: Matrix<C>,
    pub point: Vec<C>,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn rat(&mut self) -> Rational {
        q(self.int(-5, 5), self.int(1, 4))
    }

    pub fn nonzero_rat(&mut self) -> Rational {
        loop {
            let r = self.rat();
            if !Field::is_zero(&r) {
                return r;
            }
        }
    }

    pub fn cplx(&mut self) -> C {
        C::new(self.rat(), self.rat())
    }

    pub fn rvec(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rat()).collect()
    }

    pub fn cvec(&mut self, n: usize) -> Vec<C> {
        (0..n).map(|_| self.cplx()).collect()
    }

    pub fn rmat(&mut self, r: usize, c: usize) -> Matrix<Rational> {
        Matrix::from_fn(r, c, |_, _| self.rat())
    }

    pub fn cmat(&mut self, r: usize, c: usize) -> Matrix<C> {
        Matrix::from_fn(r, c, |_, _| self.cplx())
    }

    pub fn sym(&mut self, n: usize) -> Matrix<Rational> {
        let m = self.rmat(n, n);
        Matrix::from_fn(n, n, |i, j| if i <= j { m.get(i, j).clone() } else { m.get(j, i).clone() })
    }

    /// A Gram matrix of `rank` random integer vectors.
    pub fn psd(&mut self, n: usize, rank: usize) -> Matrix<Rational> {
        let vs: Vec<Vec<Rational>> = (0..rank).map(|_| (0..n).map(|_| qi(self.int(-3, 3))).collect()).collect();
        Matrix::from_fn(n, n, |i, j| vs.iter().map(|v| &v[i] * &v[j]).sum())
    }

    /// Positive definite: a Gram matrix plus a positive diagonal.
    pub fn pd(&mut self, n: usize) -> Matrix<Rational> {
        let g = self.psd(n, n);
        let d: Vec<Rational> = (0..n).map(|_| q(self.int(1, 4), self.int(1, 3))).collect();
        g.add(&Matrix::diag(&d)).unwrap()
    }

    pub fn invertible<F: Field>(&mut self, n: usize, mut entry: impl FnMut(&mut Self) -> F) -> Matrix<F> {
        let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => entry(self),
            std::cmp::Ordering::Equal => F::one(),
            std::cmp::Ordering::Less => F::zero(),
        });
        let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => entry(self),
            std::cmp::Ordering::Equal => F::from_i64(self.int(1, 3) * if self.coin(0.5) { 1 } else { -1 }),
            std::cmp::Ordering::Greater => F::zero(),
        });
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        lower.dot(&upper).select_rows(&perm)
    }

    pub fn invertible_c(&mut self, n: usize) -> Matrix<C> {
        self.invertible(n, |g| g.cplx())
    }

    pub fn invertible_r(&mut self, n: usize) -> Matrix<Rational> {
        self.invertible(n, |g| g.rat())
    }

    /// A random real symplectic matrix on `n` modes, as a product of shears and a squeeze.
    pub fn symplectic(&mut self, n: usize) -> Matrix<C> {
        let a = lift(&self.invertible_r(n));
        let b1 = lift(&self.sym(n));
        let b2 = lift(&self.sym(n));
        symp_upper(&b1).unwrap().dot(&symp_diag(&a).unwrap()).dot(&symp_lower(&b2).unwrap())
    }

    pub fn subset(&mut self, n: usize) -> Vec<usize> {
        (0..n).filter(|_| self.coin(0.6)).collect()
    }

    pub fn state_data(&mut self, n: usize, flavour: Flavour) -> StateData {
        let pivots = self.subset(n);
        let m = pivots.len();
        let complex = flavour == Flavour::Complex;
        let free: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
        let l = if complex { self.cmat(m, n - m) } else { lift(&self.rmat(m, n - m)) };
        // Reduced form: a pivot row has no entry on an earlier free mode.
        let l = Matrix::from_fn(m, n - m, |r, c| if free[c] < pivots[r] { C::zero() } else { l.get(r, c).clone() });
        let re = self.sym(m);
        let im = match flavour {
            Flavour::Complex | Flavour::NearPositive => self.sym(m),
            Flavour::Positive | Flavour::QuasiReal => {
                let rank = self.int(0, m as i64) as usize;
                self.psd(m, rank)
            }
        };
        let re = if flavour == Flavour::QuasiReal { Matrix::zeros(m, m) } else { re };
        let phi = Matrix::from_fn(m, m, |i, j| C::new(re.get(i, j).clone(), im.get(i, j).clone()));
        let point = if complex { self.cvec(2 * n) } else { self.rvec(2 * n).into_iter().map(C::real).collect() };
        StateData { n, pivots, l, phi, point }
    }

    pub fn state(&mut self, n: usize, flavour: Flavour) -> LagRel {
        state_of(&self.state_data(n, flavour))
    }

    /// A relation `n_in → n_out` obtained by unbending a random state.
    pub fn relation(&mut self, n_in: usize, n_out: usize, flavour: Flavour) -> LagRel {
        LagRel::unname(&self.state(n_in + n_out, flavour), n_in).unwrap()
    }

    /// A Gaussian map `n → m` with covariance of random rank.
    pub fn gauss_map(&mut self, n: usize, m: usize) -> GaussMap {
        let rank = self.int(0, m as i64) as usize;
        let sigma = self.psd(m, rank);
        GaussMap::new(self.rmat(m, n), sigma, self.rvec(m)).unwrap()
    }
}

/// The constraint system `{−z_A − L·z_B + φ·x_A = x⃗, x_B − Lᵀ·x_A = μ⃗}` with
/// right-hand side chosen so that `data.point` lies on the state.
pub fn ap_system(data: &StateData) -> (Matrix<C>, Vec<C>) {
    let n = data.n;
    let a = &data.pivots;
    let b: Vec<usize> = (0..n).filter(|k| !a.contains(k)).collect();
    let mut s = Matrix::zeros(n, 2 * n);
    for (r, &i) in a.iter().enumerate() {
        s.set(r, i, -C::one());
        for (c, &j) in b.iter().enumerate() {
            s.set(r, j, -data.l.get(r, c).clone());
        }
        for (c, &k) in a.iter().enumerate() {
            s.set(r, n + k, data.phi.get(r, c).clone());
        }
    }
    for (c, &j) in b.iter().enumerate() {
        let r = a.len() + c;
        s.set(r, n + j, C::one());
        for (ri, &i) in a.iter().enumerate() {
            s.set(r, n + i, -data.l.get(ri, c).clone());
        }
    }
    let rhs = s.mul_vec(&data.point).unwrap();
    (s, rhs)
}

pub fn state_of(data: &StateData) -> LagRel {
    let (s, a) = ap_system(data);
    LagRel::from_constraints(0, data.n, &s, &a).unwrap()
}
