//! Diagrams for rotations, graph states and teleportation.

use super::synth::{attach_vacua, momentum_shift, position_shift, rational_gram_factors, Builder};
use super::{interpret, Calculus, Diagram, End, NodeKind};
use crate::error::{Error, Result};
use crate::lagrangian::LagRel;
use crate::linalg::Matrix;
use crate::numtheory::rational_squares;
use crate::scalar::{CirclePoint, Field, Rational, C};

fn rc(x: Rational) -> C {
    C::real(x)
}

/// `(z, x) ↦ (z, x + u·z)`.
pub fn lower_shear(u: C) -> Diagram {
    Diagram::white(1, 1, C::zero(), -u).compose(&Diagram::white(1, 1, C::zero(), C::zero())).expect("arity")
}

/// `(z, x) ↦ (z + b·x, x)`.
pub fn upper_shear(b: C) -> Diagram {
    Diagram::grey(1, 1, C::zero(), b)
}

/// Single-mode squeezing by `a` followed by the upper shear `b`.
pub fn squeeze_shear(a: C, b: C) -> Diagram {
    Diagram::squeeze(a).compose(&upper_shear(b)).expect("arity")
}

/// The rotation `[[c, −s], [s, c]]` on `(z, x)`.
pub fn rotation(p: &CirclePoint) -> Diagram {
    let (c, s) = (p.cos().clone(), p.sin().clone());
    match c.inv() {
        // Lower(s/c) · diag(c, 1/c) · Upper(−s/c)
        Some(ci) => {
            let t = &s * &ci;
            Diagram::chain(&[upper_shear(rc(-t.clone())), Diagram::squeeze(rc(ci)), lower_shear(rc(t))]).expect("arity")
        }
        None if s > Rational::from_integer(0.into()) => Diagram::fourier_inv(),
        None => Diagram::fourier(),
    }
}

/// `z_t ↦ z_t + k·z_s` with `x_s ↦ x_s − k·x_t`, on two wires.
pub fn momentum_add(target: usize, k: C) -> Diagram {
    let source = 1 - target;
    let mut b = Builder::new(2, 2);
    let g = b.grey(C::zero(), C::zero());
    let w = b.white(C::zero(), C::zero());
    let (gi, go, ge) = (b.port(g), b.port(g), b.port(g));
    let (wi, wo, we) = (b.port(w), b.port(w), b.port(w));
    b.edge(End::In(target), gi);
    b.edge(go, End::Out(target));
    b.edge(End::In(source), wi);
    b.edge(wo, End::Out(source));
    b.weighted(ge, -k, we);
    let d = b.finish();
    let fix = if source == 0 {
        Diagram::white(1, 1, C::zero(), C::zero()).tensor(&Diagram::wires(1))
    } else {
        Diagram::wires(1).tensor(&Diagram::white(1, 1, C::zero(), C::zero()))
    };
    d.compose(&fix).expect("arity")
}

/// `diag(R, R)` on `(z0, z1, x0, x1)`, the passive two-mode rotation.
pub fn pair_rotation(p: &CirclePoint) -> Diagram {
    let (c, s) = (p.cos().clone(), p.sin().clone());
    match c.inv() {
        Some(ci) => {
            let t = &s * &ci;
            let scale = Diagram::squeeze(rc(ci.clone())).tensor(&Diagram::squeeze(rc(c.clone())));
            Diagram::chain(&[momentum_add(0, rc(-t.clone())), scale, momentum_add(1, rc(t))]).expect("arity")
        }
        None => {
            let neg = Diagram::squeeze(rc(Rational::from_integer((-1).into())));
            let signs = if s > Rational::from_integer(0.into()) {
                neg.tensor(&Diagram::wires(1))
            } else {
                Diagram::wires(1).tensor(&neg)
            };
            Diagram::swap(1, 1).compose(&signs).expect("arity")
        }
    }
}

/// The graph state with complex adjacency `U + iV` as a diagram of the
/// quantum calculus: one grey spider per vertex, Fourier-weighted edges for
/// `U` and vacua for `V`.
pub fn import_graph_state(u: &Matrix<Rational>, v: &Matrix<Rational>) -> Result<Diagram> {
    let n = u.rows();
    if !u.is_square() || v.shape() != (n, n) {
        return Err(Error::DimensionMismatch("adjacency matrices must be square and of equal size".into()));
    }
    if !u.is_symmetric() || !v.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut b = Builder::new(0, n);
    let greys: Vec<usize> = (0..n).map(|i| b.grey(C::zero(), rc(u.get(i, i).clone()))).collect();
    for (i, &g) in greys.iter().enumerate() {
        let p = b.port(g);
        b.edge(p, End::Out(i));
    }
    for i in 0..n {
        for k in i + 1..n {
            let w = u.get(i, k);
            if !Field::is_zero(w) {
                let (gi, gk) = (b.port(greys[i]), b.port(greys[k]));
                let f = b.node(NodeKind::Fourier, (C::zero(), C::zero()), C::one());
                b.edge(gi, End::Port(f, 0));
                let inv = Rational::from_integer(1.into()) / w;
                b.boxed(End::Port(f, 1), NodeKind::Squeeze, rc(inv), gk);
            }
        }
    }
    for w in rational_gram_factors(v)? {
        attach_vacua(&mut b, &greys, &w);
    }
    Ok(b.finish())
}

/// EPR resource with position spread `eps`: `{z₁ + z₂ = 0, ε·z₁ = i(x₁ − x₂)}`.
pub fn bell_state_relation(eps: &Rational) -> LagRel {
    let (o, z) = (C::one(), C::zero());
    let s = Matrix::from_rows(vec![vec![o.clone(), o.clone(), z.clone(), z.clone()], vec![rc(eps.clone()), z.clone(), -C::i(), C::i()]], 4)
        .expect("shape");
    LagRel::from_constraints(0, 2, &s, &[C::zero(), C::zero()]).expect("Lagrangian")
}

pub fn bell_state(eps: &Rational) -> Result<Diagram> {
    if eps < &Rational::from_integer(0.into()) {
        return Err(Error::NegativeEpsilon);
    }
    if Field::is_zero(eps) {
        return Ok(Diagram::grey(0, 2, C::zero(), C::zero()));
    }
    let mut b = Builder::new(0, 2);
    let g = [b.grey(C::zero(), C::zero()), b.grey(C::zero(), C::zero())];
    for (k, &n) in g.iter().enumerate() {
        let p = b.port(n);
        b.edge(p, End::Out(k));
    }
    let inv = Rational::from_integer(1.into()) / eps;
    for a in rational_squares(&inv) {
        attach_vacua(&mut b, &g, &[a.clone(), -a]);
    }
    Ok(b.finish())
}

/// Joint homodyne outcome: `{x₁ − x₂ = a, z₁ + z₂ = b}`.
pub fn bell_effect_relation(a: &Rational, b: &Rational) -> LagRel {
    let (o, z) = (C::one(), C::zero());
    let s = Matrix::from_rows(vec![vec![z.clone(), z.clone(), o.clone(), -o.clone()], vec![o.clone(), o, z.clone(), z]], 4).expect("shape");
    LagRel::from_constraints(2, 0, &s, &[rc(a.clone()), rc(b.clone())]).expect("Lagrangian")
}

pub fn bell_effect(a: &Rational, b: &Rational) -> Diagram {
    position_shift(rc(-a.clone()))
        .tensor(&Diagram::wires(1))
        .compose(&Diagram::grey(2, 0, rc(b.clone()), C::zero()))
        .expect("arity")
}

/// Displacement undoing the outcome `(a, b)`.
pub fn correction(a: &Rational, b: &Rational) -> Diagram {
    momentum_shift(rc(b.clone())).compose(&position_shift(rc(a.clone()))).expect("arity")
}

#[derive(Clone, Debug)]
pub struct Teleportation {
    pub diagram: Diagram,
    /// Interpretation of `diagram`.
    pub channel: LagRel,
    /// The same protocol composed directly from relations.
    pub direct: LagRel,
}

/// Continuous-variable teleportation with resource spread `eps` and outcome `(a, b)`.
pub fn demo_teleportation(eps: &Rational, a: &Rational, b: &Rational) -> Result<Teleportation> {
    let prepare = Diagram::wires(1).tensor(&bell_state(eps)?);
    let measure = bell_effect(a, b).tensor(&Diagram::wires(1));
    let diagram = Diagram::chain(&[prepare, measure, correction(a, b)])?;
    let channel = interpret(&diagram, Calculus::Gqga)?;

    let shift = |t: [C; 2]| LagRel::symplectic_graph(&Matrix::identity(2), &t).expect("symplectic");
    let direct = LagRel::identity(1)
        .tensor(&bell_state_relation(eps))
        .compose(&bell_effect_relation(a, b).tensor(&LagRel::identity(1)))?
        .compose(&shift([rc(b.clone()), rc(a.clone())]))?;
    Ok(Teleportation { diagram, channel, direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::interpret;
    use crate::gaussian::{phase_of_state, GaussMap};
    use crate::lagrangian::{self as lag, is_symplectic, rotation_pair, symplectic_rotation_diag};
    use crate::scalar::{q, qi};

    fn points() -> Vec<CirclePoint> {
        vec![
            CirclePoint::from_tan_half(&q(1, 2)),
            CirclePoint::from_tan_half(&q(-3, 7)),
            CirclePoint::from_tan_half(&qi(1)),
            CirclePoint::from_tan_half(&qi(-1)),
            CirclePoint::identity(),
        ]
    }

    #[test]
    fn rotations() {
        for p in points() {
            let r = interpret(&rotation(&p), Calculus::Gqga).unwrap();
            assert_eq!(r, LagRel::symplectic_graph(&symplectic_rotation_diag(std::slice::from_ref(&p)), &[C::zero(), C::zero()]).unwrap());
            let pr = interpret(&pair_rotation(&p), Calculus::Gqga).unwrap();
            let s = rotation_pair(&p);
            assert!(is_symplectic(&s));
            assert_eq!(pr, LagRel::symplectic_graph(&s, &vec![C::zero(); 4]).unwrap());
        }
    }

    #[test]
    fn shears() {
        let b = C::frac(3, 2);
        let up = LagRel::symplectic_graph(&crate::linalg::cmat("1,3/2;0,1"), &[C::zero(), C::zero()]).unwrap();
        assert_eq!(interpret(&upper_shear(b.clone()), Calculus::Gqga).unwrap(), up);
        let low = LagRel::symplectic_graph(&crate::linalg::cmat("1,0;3/2,1"), &[C::zero(), C::zero()]).unwrap();
        assert_eq!(interpret(&lower_shear(b.clone()), Calculus::Gqga).unwrap(), low);
        let ss = interpret(&squeeze_shear(C::int(2), b.clone()), Calculus::Gqga).unwrap();
        assert_eq!(ss, lag::squeeze(&C::int(2)).compose(&up).unwrap());
    }

    #[test]
    fn graph_state_import() {
        let u = Matrix::from_rows(vec![vec![qi(1), q(1, 2), qi(0)], vec![q(1, 2), qi(0), qi(-2)], vec![qi(0), qi(-2), q(1, 3)]], 3).unwrap();
        let v = Matrix::from_rows(vec![vec![qi(2), qi(1), qi(0)], vec![qi(1), qi(3), qi(0)], vec![qi(0), qi(0), q(1, 5)]], 3).unwrap();
        let d = import_graph_state(&u, &v).unwrap();
        let st = interpret(&d, Calculus::Gqga).unwrap();
        let pm = phase_of_state(&st).unwrap();
        let expect = Matrix::from_fn(3, 3, |i, j| C::new(u.get(i, j).clone(), v.get(i, j).clone()));
        assert_eq!(pm.phi, expect);
    }

    #[test]
    fn teleportation_perfect_and_noisy() {
        for (a, b) in [(qi(0), qi(0)), (q(1, 2), qi(-3))] {
            let t = demo_teleportation(&qi(0), &a, &b).unwrap();
            assert_eq!(t.channel, LagRel::identity(1));
            assert_eq!(t.direct, LagRel::identity(1));
        }
        for eps in [q(1, 4), qi(1), qi(4), q(2, 3)] {
            let t = demo_teleportation(&eps, &qi(1), &qi(2)).unwrap();
            assert_eq!(t.channel, t.direct);
            assert!(t.channel.is_positive().unwrap());
            let noise = GaussMap::new(Matrix::identity(1), Matrix::diag(std::slice::from_ref(&eps)), vec![qi(0)]).unwrap();
            let zero_outcome = demo_teleportation(&eps, &qi(0), &qi(0)).unwrap();
            assert_eq!(zero_outcome.channel, noise.to_gaussrel());
        }
        assert!(matches!(demo_teleportation(&qi(-1), &qi(0), &qi(0)), Err(Error::NegativeEpsilon)));
    }

    #[test]
    fn bell_diagrams_match_relations() {
        for eps in [qi(0), q(1, 4), qi(3)] {
            assert_eq!(interpret(&bell_state(&eps).unwrap(), Calculus::Gqga).unwrap(), bell_state_relation(&eps));
        }
        let (a, b) = (q(2, 3), qi(-1));
        assert_eq!(interpret(&bell_effect(&a, &b), Calculus::Gqga).unwrap(), bell_effect_relation(&a, &b));
    }
}
