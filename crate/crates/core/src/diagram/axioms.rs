//! Equational presentations, checked for soundness against the semantics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::protocols::{pair_rotation, rotation};
use super::{interpret, interpret_gaa, Calculus, Diagram};
use crate::error::{Error, Result};
use crate::scalar::{CirclePoint, Field, Rational, C};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Scalar,
    NonZero,
    /// Number of legs, sampled from `0..=2`.
    Arity,
    Circle,
    /// A circle point with nonzero cosine.
    CircleNonZeroCos,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Scalar(C),
    Arity(usize),
    Circle(CirclePoint),
}

type Build = fn(&[Param]) -> Result<(Diagram, Diagram)>;

#[derive(Clone)]
pub struct Axiom {
    pub name: String,
    pub calculus: Calculus,
    pub params: Vec<ParamKind>,
    build: Build,
}

impl Axiom {
    fn new(name: &str, calculus: Calculus, params: &[ParamKind], build: Build) -> Self {
        Axiom { name: name.to_string(), calculus, params: params.to_vec(), build }
    }

    /// Both sides for the given parameters, after checking side conditions.
    pub fn instantiate(&self, params: &[Param]) -> Result<(Diagram, Diagram)> {
        if params.len() != self.params.len() {
            return Err(Error::SideConditionViolated(format!("{} expects {} parameters", self.name, self.params.len())));
        }
        let real = self.calculus != Calculus::Gsa;
        for (k, p) in self.params.iter().zip(params) {
            let ok = match (k, p) {
                (ParamKind::Scalar, Param::Scalar(c)) => !real || c.is_real(),
                (ParamKind::NonZero, Param::Scalar(c)) => (!real || c.is_real()) && !c.is_zero(),
                (ParamKind::Arity, Param::Arity(_)) => true,
                (ParamKind::Circle, Param::Circle(_)) => true,
                (ParamKind::CircleNonZeroCos, Param::Circle(p)) => !Field::is_zero(p.cos()),
                _ => false,
            };
            if !ok {
                return Err(Error::SideConditionViolated(format!("{}: parameter {p:?} is not {k:?}", self.name)));
            }
        }
        (self.build)(params)
    }

    /// Whether both sides denote the same relation.
    pub fn check(&self, params: &[Param]) -> Result<bool> {
        let (l, r) = self.instantiate(params)?;
        equal_in(&l, &r, self.calculus)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<Param> {
        let real = self.calculus != Calculus::Gsa;
        self.params.iter().map(|k| sample_param(*k, real, rng)).collect()
    }
}

/// Semantic equality of two diagrams in a calculus.
pub fn equal_in(l: &Diagram, r: &Diagram, calculus: Calculus) -> Result<bool> {
    if calculus == Calculus::Gaa {
        return Ok(interpret_gaa(l)? == interpret_gaa(r)?);
    }
    Ok(interpret(l, calculus)? == interpret(r, calculus)?)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

fn sample_param(kind: ParamKind, real: bool, rng: &mut ChaCha8Rng) -> Param {
    let scalar = |rng: &mut ChaCha8Rng| {
        let re = small_rational(rng);
        let im = if real { Rational::from_integer(0.into()) } else { small_rational(rng) };
        C::new(re, im)
    };
    match kind {
        ParamKind::Scalar => Param::Scalar(scalar(rng)),
        ParamKind::NonZero => loop {
            let c = scalar(rng);
            if !c.is_zero() {
                break Param::Scalar(c);
            }
        },
        ParamKind::Arity => Param::Arity(rng.gen_range(0..=2)),
        ParamKind::Circle => Param::Circle(CirclePoint::from_tan_half(&small_rational(rng))),
        ParamKind::CircleNonZeroCos => loop {
            let p = CirclePoint::from_tan_half(&small_rational(rng));
            if !Field::is_zero(p.cos()) {
                break Param::Circle(p);
            }
        },
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub name: String,
    pub calculus: Calculus,
    pub samples: usize,
    /// Parameters of the first failing instance, if any.
    pub counterexample: Option<Vec<Param>>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks every axiom of `calculus` on `samples` random instances.
pub fn check_all(calculus: Calculus, samples: usize, seed: u64) -> Result<Vec<AxiomReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    axioms(calculus)
        .iter()
        .map(|ax| {
            let mut counterexample = None;
            for _ in 0..samples {
                let ps = ax.sample(&mut rng);
                if !ax.check(&ps)? {
                    counterexample = Some(ps);
                    break;
                }
            }
            Ok(AxiomReport { name: ax.name.clone(), calculus, samples, counterexample })
        })
        .collect()
}

// Parameter accessors; instantiate has already checked the kinds.
fn s(p: &[Param], k: usize) -> C {
    match &p[k] {
        Param::Scalar(c) => c.clone(),
        _ => unreachable!("checked kind"),
    }
}

fn n(p: &[Param], k: usize) -> usize {
    match &p[k] {
        Param::Arity(a) => *a,
        _ => unreachable!("checked kind"),
    }
}

fn pt(p: &[Param], k: usize) -> CirclePoint {
    match &p[k] {
        Param::Circle(c) => c.clone(),
        _ => unreachable!("checked kind"),
    }
}

fn z() -> C {
    C::zero()
}

fn g(m: usize, n: usize, a: C, b: C) -> Diagram {
    Diagram::grey(m, n, a, b)
}

fn w(m: usize, n: usize, a: C, b: C) -> Diagram {
    Diagram::white(m, n, a, b)
}

fn id(n: usize) -> Diagram {
    Diagram::wires(n)
}

fn sq(c: C) -> Diagram {
    Diagram::squeeze(c)
}

fn seq(parts: &[Diagram]) -> Result<Diagram> {
    Diagram::chain(parts)
}

fn par(parts: &[Diagram]) -> Diagram {
    Diagram::tensor_all(parts)
}

fn pow(d: &Diagram, k: usize) -> Diagram {
    par(&vec![d.clone(); k])
}

fn antipode() -> Diagram {
    w(1, 1, z(), z())
}

/// The empty relation as a scalar diagram.
fn falsum() -> Diagram {
    w(0, 1, C::one(), z()).compose(&w(1, 0, z(), z())).expect("arity")
}

use ParamKind::{Arity, Circle, CircleNonZeroCos, NonZero, Scalar};

fn gsa_axioms(calc: Calculus) -> Vec<Axiom> {
    vec![
        Axiom::new("grey-fusion", calc, &[Arity, Arity, Scalar, Scalar, Scalar, Scalar], |p| {
            let l = g(n(p, 0), 1, s(p, 2), s(p, 3)).compose(&g(1, n(p, 1), s(p, 4), s(p, 5)))?;
            Ok((l, g(n(p, 0), n(p, 1), s(p, 2) + s(p, 4), s(p, 3) + s(p, 5))))
        }),
        Axiom::new("white-fusion", calc, &[Arity, Arity, Scalar, Scalar, Scalar, Scalar], |p| {
            let l = seq(&[w(n(p, 0), 1, s(p, 2), s(p, 3)), antipode(), w(1, n(p, 1), s(p, 4), s(p, 5))])?;
            Ok((l, w(n(p, 0), n(p, 1), s(p, 2) + s(p, 4), s(p, 3) + s(p, 5))))
        }),
        Axiom::new("grey-identity", calc, &[], |_| Ok((g(1, 1, z(), z()), id(1)))),
        Axiom::new("antipode-involution", calc, &[], |_| Ok((antipode().compose(&antipode())?, id(1)))),
        Axiom::new("colour-change", calc, &[Arity, Arity, Scalar, Scalar], |p| {
            let (m, k) = (n(p, 0), n(p, 1));
            let l = seq(&[pow(&Diagram::fourier(), m), g(m, k, s(p, 2), s(p, 3)), pow(&Diagram::fourier(), k)])?;
            Ok((l, w(m, k, s(p, 2), s(p, 3))))
        }),
        Axiom::new("fourier-inverse", calc, &[], |_| Ok((Diagram::fourier().compose(&Diagram::fourier_inv())?, id(1)))),
        Axiom::new("fourier-square", calc, &[], |_| Ok((Diagram::fourier().compose(&Diagram::fourier())?, antipode()))),
        Axiom::new("euler", calc, &[], |_| {
            let one = C::one;
            let r = seq(&[g(1, 1, z(), one()), w(1, 1, z(), one()), antipode(), g(1, 1, z(), one())])?;
            Ok((Diagram::fourier(), r))
        }),
        Axiom::new("bialgebra", calc, &[], |_| {
            let l = w(2, 1, z(), z()).compose(&g(1, 2, z(), z()))?;
            let r = seq(&[pow(&g(1, 2, z(), z()), 2), par(&[id(1), Diagram::swap(1, 1), id(1)]), pow(&w(2, 1, z(), z()), 2)])?;
            Ok((l, r))
        }),
        Axiom::new("copy", calc, &[Scalar], |p| {
            let st = w(0, 1, s(p, 0), z());
            Ok((st.compose(&g(1, 2, z(), z()))?, par(&[st.clone(), st])))
        }),
        Axiom::new("discard", calc, &[Scalar], |p| Ok((w(0, 1, s(p, 0), z()).compose(&g(1, 0, z(), z()))?, Diagram::empty()))),
        Axiom::new("cocopy", calc, &[Scalar], |p| {
            let l = g(0, 1, s(p, 0), z()).compose(&w(1, 2, z(), z()))?;
            let half = g(0, 1, -s(p, 0), z());
            Ok((l, par(&[half.clone(), half])))
        }),
        Axiom::new("codiscard", calc, &[Scalar], |p| Ok((g(0, 1, s(p, 0), z()).compose(&w(1, 0, z(), z()))?, Diagram::empty()))),
        Axiom::new("squeeze-compose", calc, &[NonZero, NonZero], |p| Ok((sq(s(p, 0)).compose(&sq(s(p, 1)))?, sq(s(p, 0) * s(p, 1))))),
        Axiom::new("squeeze-unit", calc, &[], |_| Ok((sq(C::one()), id(1)))),
        Axiom::new("squeeze-antipode", calc, &[], |_| Ok((sq(-C::one()), antipode()))),
        Axiom::new("squeeze-zero", calc, &[], |_| Ok((sq(z()), g(1, 0, z(), z()).compose(&w(0, 1, z(), z()))?))),
        Axiom::new("squeeze-copy", calc, &[Scalar], |p| {
            let l = sq(s(p, 0)).compose(&g(1, 2, z(), z()))?;
            let r = g(1, 2, z(), z()).compose(&pow(&sq(s(p, 0)), 2))?;
            Ok((l, r))
        }),
        Axiom::new("squeeze-grey-phase", calc, &[Scalar, Scalar, NonZero], |p| {
            let c = s(p, 2);
            let ci = c.inv().expect("nonzero");
            let r = g(0, 1, s(p, 0) * ci.clone(), s(p, 1) * ci.clone() * ci);
            Ok((g(0, 1, s(p, 0), s(p, 1)).compose(&sq(c))?, r))
        }),
        Axiom::new("squeeze-white-phase", calc, &[Scalar, Scalar, NonZero], |p| {
            let c = s(p, 2);
            let r = w(0, 1, s(p, 0) * c.clone(), s(p, 1) * c.clone() * c.clone());
            Ok((w(0, 1, s(p, 0), s(p, 1)).compose(&sq(c))?, r))
        }),
        Axiom::new("fourier-squeeze", calc, &[NonZero], |p| {
            let c = s(p, 0);
            let l = Diagram::fourier().compose(&sq(c.clone()))?;
            Ok((l, sq(c.inv().expect("nonzero")).compose(&Diagram::fourier())?))
        }),
        Axiom::new("hopf", calc, &[], |_| Ok((g(1, 2, z(), z()).compose(&w(2, 1, z(), z()))?, sq(C::int(-2))))),
        Axiom::new("legless", calc, &[Scalar], |p| Ok((g(0, 0, z(), s(p, 0)), Diagram::empty()))),
        Axiom::new("legless-false", calc, &[NonZero], |p| Ok((g(0, 0, s(p, 0), z()), falsum()))),
        Axiom::new("empty-absorbs", calc, &[Scalar, Scalar, Scalar, Scalar], |p| {
            Ok((par(&[falsum(), w(0, 1, s(p, 0), s(p, 1))]), par(&[falsum(), g(0, 1, s(p, 2), s(p, 3))])))
        }),
    ]
}

fn gaa_axioms(calc: Calculus) -> Vec<Axiom> {
    vec![
        Axiom::new("grey-fusion", calc, &[Arity, Arity], |p| {
            Ok((g(n(p, 0), 1, z(), z()).compose(&g(1, n(p, 1), z(), z()))?, g(n(p, 0), n(p, 1), z(), z())))
        }),
        Axiom::new("white-fusion", calc, &[Arity, Arity, Scalar, Scalar], |p| {
            let l = seq(&[w(n(p, 0), 1, s(p, 2), z()), antipode(), w(1, n(p, 1), s(p, 3), z())])?;
            Ok((l, w(n(p, 0), n(p, 1), s(p, 2) + s(p, 3), z())))
        }),
        Axiom::new("grey-identity", calc, &[], |_| Ok((g(1, 1, z(), z()), id(1)))),
        Axiom::new("antipode-involution", calc, &[], |_| Ok((antipode().compose(&antipode())?, id(1)))),
        Axiom::new("bialgebra", calc, &[], |_| {
            let l = w(2, 1, z(), z()).compose(&g(1, 2, z(), z()))?;
            let r = seq(&[pow(&g(1, 2, z(), z()), 2), par(&[id(1), Diagram::swap(1, 1), id(1)]), pow(&w(2, 1, z(), z()), 2)])?;
            Ok((l, r))
        }),
        Axiom::new("copy", calc, &[Scalar], |p| {
            let st = w(0, 1, s(p, 0), z());
            Ok((st.compose(&g(1, 2, z(), z()))?, par(&[st.clone(), st])))
        }),
        Axiom::new("discard", calc, &[Scalar], |p| Ok((w(0, 1, s(p, 0), z()).compose(&g(1, 0, z(), z()))?, Diagram::empty()))),
        Axiom::new("scalar-compose", calc, &[Scalar, Scalar], |p| Ok((sq(s(p, 0)).compose(&sq(s(p, 1)))?, sq(s(p, 0) * s(p, 1))))),
        Axiom::new("scalar-add", calc, &[Scalar, Scalar], |p| {
            let l = seq(&[g(1, 2, z(), z()), par(&[sq(s(p, 0)), sq(s(p, 1))]), w(2, 1, z(), z()), antipode()])?;
            Ok((l, sq(s(p, 0) + s(p, 1))))
        }),
        Axiom::new("scalar-zero", calc, &[], |_| Ok((sq(z()), g(1, 0, z(), z()).compose(&w(0, 1, z(), z()))?))),
        Axiom::new("scalar-unit", calc, &[], |_| Ok((sq(C::one()), id(1)))),
        Axiom::new("scalar-copy", calc, &[Scalar], |p| {
            Ok((sq(s(p, 0)).compose(&g(1, 2, z(), z()))?, g(1, 2, z(), z()).compose(&pow(&sq(s(p, 0)), 2))?))
        }),
        Axiom::new("scalar-add-through", calc, &[Scalar], |p| {
            Ok((w(2, 1, z(), z()).compose(&sq(s(p, 0)))?, pow(&sq(s(p, 0)), 2).compose(&w(2, 1, z(), z()))?))
        }),
        Axiom::new("scalar-inverse", calc, &[NonZero], |p| {
            let c = s(p, 0);
            Ok((sq(c.clone()).compose(&sq(c.inv().expect("nonzero")))?, id(1)))
        }),
        Axiom::new("scalar-affine", calc, &[Scalar, Scalar], |p| {
            Ok((w(0, 1, s(p, 0), z()).compose(&sq(s(p, 1)))?, w(0, 1, s(p, 0) * s(p, 1), z())))
        }),
        Axiom::new("antipode-scalar", calc, &[], |_| Ok((antipode(), sq(-C::one())))),
        Axiom::new("empty-absorbs", calc, &[Scalar, Scalar], |p| {
            Ok((par(&[falsum(), w(0, 1, s(p, 0), z())]), par(&[falsum(), w(0, 1, s(p, 1), z())])))
        }),
    ]
}

fn vac(k: usize) -> Diagram {
    pow(&Diagram::vacuum(), k)
}

fn vacuum_axioms(calc: Calculus) -> Vec<Axiom> {
    let mut v = vec![
        Axiom::new("vacuum-pair-rotation", calc, &[Circle], |p| Ok((vac(2).compose(&pair_rotation(&pt(p, 0)))?, vac(2)))),
        Axiom::new("vacuum-white-effect", calc, &[Scalar], |p| Ok((vac(1).compose(&w(1, 0, s(p, 0), z()))?, Diagram::empty()))),
        Axiom::new("vacuum-grey-effect", calc, &[Scalar], |p| Ok((vac(1).compose(&g(1, 0, s(p, 0), z()))?, Diagram::empty()))),
    ];
    if calc == Calculus::Gqga {
        v.extend([
            Axiom::new("vacuum-rotation", calc, &[CircleNonZeroCos], |p| Ok((vac(1).compose(&rotation(&pt(p, 0)))?, vac(1)))),
            Axiom::new("vacuum-fourier", calc, &[], |_| Ok((vac(1).compose(&Diagram::fourier())?, vac(1)))),
            Axiom::new("vacuum-spider-effect", calc, &[Scalar, Scalar], |p| {
                Ok((vac(1).compose(&g(1, 0, s(p, 0), s(p, 1)))?, Diagram::empty()))
            }),
            Axiom::new("vacuum-white-spider-effect", calc, &[Scalar, Scalar], |p| {
                Ok((vac(1).compose(&w(1, 0, s(p, 0), s(p, 1)))?, Diagram::empty()))
            }),
        ]);
    }
    v
}

/// The equations of a calculus.
pub fn axioms(calculus: Calculus) -> Vec<Axiom> {
    match calculus {
        Calculus::Gsa => gsa_axioms(Calculus::Gsa),
        Calculus::Gaa => gaa_axioms(Calculus::Gaa),
        Calculus::Gga => {
            let mut v = gaa_axioms(Calculus::Gga);
            v.extend(vacuum_axioms(Calculus::Gga));
            v
        }
        Calculus::Gqga => {
            let mut v = gsa_axioms(Calculus::Gqga);
            v.extend(vacuum_axioms(Calculus::Gqga));
            v
        }
    }
}

/// Grey fusion with the affine phases off by one; must be rejected.
pub fn mutated_fusion() -> Axiom {
    Axiom::new("mutated-grey-fusion", Calculus::Gsa, &[Scalar, Scalar, Scalar, Scalar], |p| {
        let l = g(1, 1, s(p, 0), s(p, 1)).compose(&g(1, 1, s(p, 2), s(p, 3)))?;
        Ok((l, g(1, 1, s(p, 0) + s(p, 2) + C::one(), s(p, 1) + s(p, 3))))
    })
}
