//! Linear optics with polarisation, translated to qumode diagrams.
//!
//! Optical wire `k` becomes the qumodes `2k` (horizontal) and `2k + 1`
//! (vertical).

use serde::{Deserialize, Serialize};

use super::protocols::{pair_rotation, rotation, squeeze_shear, upper_shear};
use super::{Diagram, End};
use crate::error::{Error, Result};
use crate::lagrangian::{self as lag, LagRel};
use crate::linalg::Matrix;
use crate::scalar::{CirclePoint, Field, Rational, C};

/// An angle given exactly as a rational point of the circle, or as a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    Exact(CirclePoint),
    Float(f64),
}

impl Angle {
    /// `tan:t` for the exact point with half-angle tangent `t`, `cs:c,s` for
    /// the exact point `(c, s)`, or radians.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(t) = s.strip_prefix("tan:") {
            let t: Rational = crate::io::parse_rational(t)?;
            return Ok(Angle::Exact(CirclePoint::from_tan_half(&t)));
        }
        if let Some(cs) = s.strip_prefix("cs:") {
            let (c, sn) = cs.split_once(',').ok_or_else(|| Error::Parse(format!("bad angle '{s}'")))?;
            let p = CirclePoint::new(crate::io::parse_rational(c)?, crate::io::parse_rational(sn)?)?;
            return Ok(Angle::Exact(p));
        }
        s.trim().parse::<f64>().map(Angle::Float).map_err(|_| Error::Parse(format!("bad angle '{s}'")))
    }

    pub fn cos_sin(&self) -> (f64, f64) {
        match self {
            Angle::Exact(p) => (crate::scalar::rat_to_f64(p.cos()), crate::scalar::rat_to_f64(p.sin())),
            Angle::Float(t) => (t.cos(), t.sin()),
        }
    }

    fn exact(&self) -> Result<&CirclePoint> {
        match self {
            Angle::Exact(p) => Ok(p),
            Angle::Float(_) => Err(Error::BackendMismatch("float angles have no exact diagram; use the float symplectic path".into())),
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Angle::Exact(p) => s.serialize_str(&format!("cs:{},{}", p.cos(), p.sin())),
            Angle::Float(t) => s.serialize_str(&t.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Angle::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum LovGate {
    PhaseShift { wire: usize, angle: Angle },
    WavePlate { wire: usize, angle: Angle },
    /// Mixes wires `wire` and `wire + 1`.
    BeamSplitter { wire: usize, angle: Angle },
    /// Exchanges the vertical modes of wires `wire` and `wire + 1`.
    PolarisingBeamSplitter { wire: usize },
    /// Inserts a fresh wire in the vacuum at position `wire`.
    VacuumState { wire: usize },
    /// Projects wire `wire` onto the vacuum and removes it.
    VacuumEffect { wire: usize },
    /// Squeezes the vertical mode.
    SqueezeVertical { wire: usize, factor: String },
    /// Shears the vertical mode.
    ShearVertical { wire: usize, factor: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LovCircuit {
    pub wires: usize,
    pub gates: Vec<LovGate>,
}

/// Wires permuted so that input `i` lands on output `perm[i]`.
pub fn permutation(perm: &[usize]) -> Diagram {
    let n = perm.len();
    let mut d = Diagram::wires(n);
    d.edges = (0..n).map(|i| (End::In(i), End::Out(perm[i]))).collect();
    d
}

/// `gadget` applied to `modes` of an `n`-mode register.
pub fn on_modes(n: usize, modes: &[usize], gadget: &Diagram) -> Result<Diagram> {
    let k = modes.len();
    if gadget.n_in() != k || gadget.n_out() != k || modes.iter().any(|&m| m >= n) {
        return Err(Error::DimensionMismatch("gadget does not fit the register".into()));
    }
    // Bring the targeted modes to the front.
    let mut front: Vec<usize> = modes.to_vec();
    front.extend((0..n).filter(|m| !modes.contains(m)));
    let mut perm = vec![0; n];
    for (pos, &m) in front.iter().enumerate() {
        perm[m] = pos;
    }
    let inv: Vec<usize> = front.clone();
    Diagram::chain(&[permutation(&perm), gadget.tensor(&Diagram::wires(n - k)), permutation(&inv)])
}

fn parse_real(s: &str) -> Result<C> {
    let v: C = s.parse()?;
    if !v.is_real() {
        return Err(Error::NotInFragment("optical parameters must be real".into()));
    }
    Ok(v)
}

/// The circuit as a diagram of the quantum calculus on `2·wires` qumodes.
pub fn lov_to_diagram(circuit: &LovCircuit) -> Result<Diagram> {
    let mut n = circuit.wires;
    let mut d = Diagram::wires(2 * n);
    let check = |w: usize, span: usize, n: usize| {
        if w + span > n {
            Err(Error::IllFormedDiagram(format!("gate on wire {w} outside {n} wires")))
        } else {
            Ok(())
        }
    };
    for g in &circuit.gates {
        let step = match g {
            LovGate::PhaseShift { wire, angle } => {
                check(*wire, 1, n)?;
                let r = rotation(angle.exact()?);
                on_modes(2 * n, &[2 * wire, 2 * wire + 1], &r.tensor(&r))?
            }
            LovGate::WavePlate { wire, angle } => {
                check(*wire, 1, n)?;
                on_modes(2 * n, &[2 * wire, 2 * wire + 1], &pair_rotation(angle.exact()?))?
            }
            LovGate::BeamSplitter { wire, angle } => {
                check(*wire, 2, n)?;
                let s = pair_rotation(angle.exact()?);
                let h = on_modes(2 * n, &[2 * wire, 2 * wire + 2], &s)?;
                let v = on_modes(2 * n, &[2 * wire + 1, 2 * wire + 3], &s)?;
                h.compose(&v)?
            }
            LovGate::PolarisingBeamSplitter { wire } => {
                check(*wire, 2, n)?;
                on_modes(2 * n, &[2 * wire + 1, 2 * wire + 3], &Diagram::swap(1, 1))?
            }
            LovGate::VacuumState { wire } => {
                check(*wire, 0, n)?;
                let pre = Diagram::wires(2 * wire);
                let post = Diagram::wires(2 * (n - wire));
                n += 1;
                Diagram::tensor_all(&[pre, Diagram::vacuum(), Diagram::vacuum(), post])
            }
            LovGate::VacuumEffect { wire } => {
                check(*wire, 1, n)?;
                let pre = Diagram::wires(2 * wire);
                let post = Diagram::wires(2 * (n - wire - 1));
                n -= 1;
                Diagram::tensor_all(&[pre, Diagram::vacuum_effect(), Diagram::vacuum_effect(), post])
            }
            LovGate::SqueezeVertical { wire, factor } => {
                check(*wire, 1, n)?;
                on_modes(2 * n, &[2 * wire + 1], &squeeze_shear(parse_real(factor)?, C::zero()))?
            }
            LovGate::ShearVertical { wire, factor } => {
                check(*wire, 1, n)?;
                on_modes(2 * n, &[2 * wire + 1], &upper_shear(parse_real(factor)?))?
            }
        };
        d = d.compose(&step)?;
    }
    Ok(d)
}

/// Symplectic matrix of a passive circuit in closed form, on `(z, x)` blocks.
pub fn lov_symplectic_exact(circuit: &LovCircuit) -> Result<Matrix<C>> {
    let m = 2 * circuit.wires;
    let mut total = Matrix::identity(2 * m);
    for g in &circuit.gates {
        let (pairs, point): (Vec<(usize, usize)>, Option<&CirclePoint>) = match g {
            LovGate::PhaseShift { wire, angle } => {
                let p = angle.exact()?;
                let r = lag::rotation(p);
                let mut s = Matrix::identity(2 * m);
                for q in [2 * wire, 2 * wire + 1] {
                    embed_single(&mut s, m, q, &r);
                }
                total = s.mul(&total)?;
                continue;
            }
            LovGate::WavePlate { wire, angle } => (vec![(2 * wire, 2 * wire + 1)], Some(angle.exact()?)),
            LovGate::BeamSplitter { wire, angle } => (vec![(2 * wire, 2 * wire + 2), (2 * wire + 1, 2 * wire + 3)], Some(angle.exact()?)),
            LovGate::PolarisingBeamSplitter { wire } => (vec![(2 * wire + 1, 2 * wire + 3)], None),
            _ => return Err(Error::NotSymplectic),
        };
        if pairs.iter().any(|&(_, b)| b >= m) {
            return Err(Error::IllFormedDiagram("gate outside the circuit".into()));
        }
        let r = match point {
            Some(p) => lag::rotation(p),
            None => crate::linalg::cmat("0,1;1,0"),
        };
        let mut s = Matrix::identity(2 * m);
        for &(a, b) in &pairs {
            for block in [0, m] {
                for (i, &ri) in [a, b].iter().enumerate() {
                    for (j, &cj) in [a, b].iter().enumerate() {
                        s.set(block + ri, block + cj, r.get(i, j).clone());
                    }
                }
            }
        }
        total = s.mul(&total)?;
    }
    Ok(total)
}

fn embed_single(s: &mut Matrix<C>, m: usize, q: usize, r: &Matrix<C>) {
    let idx = [q, m + q];
    for i in 0..2 {
        for j in 0..2 {
            s.set(idx[i], idx[j], r.get(i, j).clone());
        }
    }
}

type F64Mat = Vec<Vec<f64>>;

fn f_identity(n: usize) -> F64Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn f_mul(a: &F64Mat, b: &F64Mat) -> F64Mat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Two-mode gadget matrices on `(z_a, z_b, x_a, x_b)`, placed into the register.
fn f_embed(m: usize, modes: &[usize], g: &F64Mat) -> F64Mat {
    let k = modes.len();
    let mut s = f_identity(2 * m);
    let idx: Vec<usize> = modes.iter().copied().chain(modes.iter().map(|q| m + q)).collect();
    for i in 0..2 * k {
        for j in 0..2 * k {
            s[idx[i]][idx[j]] = g[i][j];
        }
    }
    s
}

/// The single-mode rotation as a product of its shear/squeeze gadgets.
fn f_rotation_gadgets(c: f64, s: f64) -> F64Mat {
    let upper = |b: f64| vec![vec![1.0, b], vec![0.0, 1.0]];
    let lower = |u: f64| vec![vec![1.0, 0.0], vec![u, 1.0]];
    let squeeze = |a: f64| vec![vec![1.0 / a, 0.0], vec![0.0, a]];
    if c.abs() >= 0.5 {
        let t = s / c;
        f_mul(&lower(t), &f_mul(&squeeze(1.0 / c), &upper(-t)))
    } else {
        // R(θ) = R(θ − π/2) · FourierInv
        let fi = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        f_mul(&f_rotation_gadgets(s, -c), &fi)
    }
}

/// `diag(R, R)` as a product of its momentum-add and squeeze gadgets.
fn f_pair_gadgets(c: f64, s: f64) -> F64Mat {
    // z_t += k·z_s, x_s −= k·x_t on (z0, z1, x0, x1)
    let madd = |t: usize, k: f64| {
        let mut g = f_identity(4);
        let src = 1 - t;
        g[t][src] = k;
        g[2 + src][2 + t] = -k;
        g
    };
    if c.abs() >= 0.5 {
        let t = s / c;
        let scale = vec![vec![c, 0.0, 0.0, 0.0], vec![0.0, 1.0 / c, 0.0, 0.0], vec![0.0, 0.0, 1.0 / c, 0.0], vec![0.0, 0.0, 0.0, c]];
        f_mul(&madd(1, t), &f_mul(&scale, &madd(0, -t)))
    } else {
        let quarter = vec![vec![0.0, -1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, -1.0], vec![0.0, 0.0, 1.0, 0.0]];
        f_mul(&f_pair_gadgets(s, -c), &quarter)
    }
}

/// Floating-point symplectic matrix of a passive circuit, evaluated through
/// the same gadget decompositions the diagram translation uses.
pub fn lov_symplectic_f64(circuit: &LovCircuit) -> Result<F64Mat> {
    let m = 2 * circuit.wires;
    let mut total = f_identity(2 * m);
    for g in &circuit.gates {
        let step = match g {
            LovGate::PhaseShift { wire, angle } => {
                let (c, s) = angle.cos_sin();
                let r = f_rotation_gadgets(c, s);
                f_mul(&f_embed(m, &[2 * wire], &r), &f_embed(m, &[2 * wire + 1], &r))
            }
            LovGate::WavePlate { wire, angle } => f_embed(m, &[2 * wire, 2 * wire + 1], &{
                let (c, s) = angle.cos_sin();
                f_pair_gadgets(c, s)
            }),
            LovGate::BeamSplitter { wire, angle } => {
                let (c, s) = angle.cos_sin();
                let p = f_pair_gadgets(c, s);
                f_mul(&f_embed(m, &[2 * wire, 2 * wire + 2], &p), &f_embed(m, &[2 * wire + 1, 2 * wire + 3], &p))
            }
            LovGate::PolarisingBeamSplitter { wire } => {
                let swap = vec![vec![0.0, 1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0, 0.0]];
                f_embed(m, &[2 * wire + 1, 2 * wire + 3], &swap)
            }
            _ => return Err(Error::NotSymplectic),
        };
        if step.len() != 2 * m {
            return Err(Error::IllFormedDiagram("gate outside the circuit".into()));
        }
        total = f_mul(&step, &total);
    }
    Ok(total)
}

/// Largest deviations `(|SᵀΩS − Ω|, |SᵀS − I|)`.
pub fn f64_unitarity_defects(s: &F64Mat) -> (f64, f64) {
    let n = s.len() / 2;
    let mut omega = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        omega[i][n + i] = 1.0;
        omega[n + i][i] = -1.0;
    }
    let st: F64Mat = (0..2 * n).map(|i| (0..2 * n).map(|j| s[j][i]).collect()).collect();
    let sym = f_mul(&st, &f_mul(&omega, s));
    let orth = f_mul(&st, s);
    let id = f_identity(2 * n);
    let dev = |a: &F64Mat, b: &F64Mat| a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    (dev(&sym, &omega), dev(&orth, &id))
}

/// Exact relation of a passive circuit, for comparison with the diagram.
pub fn lov_relation_exact(circuit: &LovCircuit) -> Result<LagRel> {
    let s = lov_symplectic_exact(circuit)?;
    LagRel::symplectic_graph(&s, &vec![C::zero(); s.rows()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{interpret, Calculus};
    use crate::lagrangian::is_symplectic;
    use crate::scalar::{q, qi};

    fn circuit(angle: impl Fn(usize) -> Angle) -> LovCircuit {
        LovCircuit {
            wires: 2,
            gates: vec![
                LovGate::PhaseShift { wire: 0, angle: angle(0) },
                LovGate::WavePlate { wire: 1, angle: angle(1) },
                LovGate::BeamSplitter { wire: 0, angle: angle(2) },
                LovGate::PolarisingBeamSplitter { wire: 0 },
                LovGate::PhaseShift { wire: 1, angle: angle(3) },
            ],
        }
    }

    #[test]
    fn exact_circuit_is_a_rotation() {
        let ts = [q(1, 2), qi(1), q(-2, 3), qi(3)];
        let c = circuit(|k| Angle::Exact(CirclePoint::from_tan_half(&ts[k])));
        let d = lov_to_diagram(&c).unwrap();
        let r = interpret(&d, Calculus::Gqga).unwrap();
        assert_eq!(r, lov_relation_exact(&c).unwrap());
        let s = lov_symplectic_exact(&c).unwrap();
        assert!(is_symplectic(&s));
        assert_eq!(s.transpose().mul(&s).unwrap(), Matrix::identity(8));
    }

    #[test]
    fn float_circuit_is_a_rotation() {
        let thetas = [0.3, std::f64::consts::FRAC_PI_2, 2.0, -1.2];
        let c = circuit(|k| Angle::Float(thetas[k]));
        let s = lov_symplectic_f64(&c).unwrap();
        let (a, b) = f64_unitarity_defects(&s);
        assert!(a < 1e-9 && b < 1e-9, "{a} {b}");
        assert!(matches!(lov_to_diagram(&c), Err(Error::BackendMismatch(_))));
        // The float path agrees with the exact one on rational points.
        let ts = [q(1, 2), qi(1), q(-2, 3), qi(3)];
        let ce = circuit(|k| Angle::Exact(CirclePoint::from_tan_half(&ts[k])));
        let sf = lov_symplectic_f64(&ce).unwrap();
        let se = lov_symplectic_exact(&ce).unwrap();
        for (i, row) in sf.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert!((v - crate::scalar::rat_to_f64(&se.get(i, j).re)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vacuum_in_and_out() {
        let c = LovCircuit {
            wires: 1,
            gates: vec![
                LovGate::VacuumState { wire: 1 },
                LovGate::BeamSplitter { wire: 0, angle: Angle::Exact(CirclePoint::from_tan_half(&q(1, 3))) },
                LovGate::VacuumEffect { wire: 1 },
            ],
        };
        let r = interpret(&lov_to_diagram(&c).unwrap(), Calculus::Gqga).unwrap();
        assert_eq!((r.n_in(), r.n_out()), (2, 2));
        assert!(r.is_positive().unwrap());
    }

    #[test]
    fn json() {
        let c = circuit(|k| if k == 0 { Angle::Float(0.25) } else { Angle::Exact(CirclePoint::from_tan_half(&q(1, 2))) });
        let text = serde_json::to_string(&c).unwrap();
        let back: LovCircuit = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
