//! Diagrams denoting a given relation, read off its reduced canonical form.

use super::{Calculus, Diagram, End, Node, NodeKind};
use crate::error::{Error, Result};
use crate::lagrangian::{is_real_matrix, LagRel};
use crate::linalg::Matrix;
use crate::numtheory::rational_squares;
use crate::scalar::{Field, Rational, C};

/// Incremental construction of a diagram with fresh ports per node.
pub(crate) struct Builder {
    pub d: Diagram,
    next_port: Vec<usize>,
}

impl Builder {
    pub fn new(n_in: usize, n_out: usize) -> Self {
        let mut d = Diagram::empty();
        d.input_names = (0..n_in).map(|k| format!("i{k}")).collect();
        d.output_names = (0..n_out).map(|k| format!("o{k}")).collect();
        Builder { d, next_port: vec![] }
    }

    pub fn node(&mut self, kind: NodeKind, phase: (C, C), param: C) -> usize {
        let id = self.d.nodes.len();
        self.d.nodes.push(Node { id: format!("n{id}"), kind, phase, param });
        self.next_port.push(0);
        id
    }

    pub fn grey(&mut self, a: C, b: C) -> usize {
        self.node(NodeKind::ZSpider, (a, b), C::one())
    }

    pub fn white(&mut self, a: C, b: C) -> usize {
        self.node(NodeKind::XSpider, (a, b), C::one())
    }

    /// A fresh port on a spider.
    pub fn port(&mut self, n: usize) -> End {
        let p = self.next_port[n];
        self.next_port[n] += 1;
        End::Port(n, p)
    }

    pub fn edge(&mut self, a: End, b: End) {
        self.d.edges.push((a, b));
    }

    /// Connects `from` to `to` through a box, input side at `from`.
    pub fn boxed(&mut self, from: End, kind: NodeKind, param: C, to: End) {
        let b = self.node(kind, (C::zero(), C::zero()), param);
        self.next_port[b] = 2;
        self.edge(from, End::Port(b, 0));
        self.edge(End::Port(b, 1), to);
    }

    /// `from` and `to` joined by a squeeze box, or a plain edge for factor one.
    pub fn weighted(&mut self, from: End, c: C, to: End) {
        if c.is_one() {
            self.edge(from, to);
        } else {
            self.boxed(from, NodeKind::Squeeze, c, to);
        }
    }

    pub fn vacuum(&mut self) -> End {
        let v = self.node(NodeKind::Vacuum, (C::zero(), C::zero()), C::one());
        self.next_port[v] = 1;
        End::Port(v, 0)
    }

    pub fn finish(self) -> Diagram {
        self.d
    }
}

/// `Σ_k w_k w_kᵀ = V` with rational vectors, for a real PSD `V`.
pub fn rational_gram_factors(v: &Matrix<Rational>) -> Result<Vec<Vec<Rational>>> {
    let n = v.rows();
    let mut rest = v.clone();
    let mut out = Vec::new();
    loop {
        let Some(p) = (0..n).find(|&i| !Field::is_zero(rest.get(i, i))) else {
            if !rest.is_zero() {
                return Err(Error::NotPositive);
            }
            return Ok(out);
        };
        let d = rest.get(p, p).clone();
        if d < Rational::from_integer(0.into()) {
            return Err(Error::NotPositive);
        }
        let l: Vec<Rational> = (0..n).map(|i| rest.get(i, p).clone() / &d).collect();
        rest = Matrix::from_fn(n, n, |i, j| rest.get(i, j).clone() - &d * &l[i] * &l[j]);
        for s in rational_squares(&d) {
            out.push(l.iter().map(|x| x * &s).collect());
        }
    }
}

/// Adds `i·w wᵀ` to the phase matrix of the grey spiders `targets`.
pub(crate) fn attach_vacua(b: &mut Builder, targets: &[usize], w: &[Rational]) {
    let support: Vec<usize> = (0..w.len()).filter(|&i| !Field::is_zero(&w[i])).collect();
    match support.as_slice() {
        [] => {}
        [i] => {
            // A vacuum through a squeeze by c adds i/c².
            let v = b.vacuum();
            let g = b.port(targets[*i]);
            let c = C::real(Rational::from_integer(1.into()) / &w[*i]);
            b.weighted(v, c, g);
        }
        _ => {
            let hub = b.white(C::zero(), C::zero());
            let v = b.vacuum();
            let hp = b.port(hub);
            b.edge(hp, v);
            for &i in &support {
                let g = b.port(targets[i]);
                let h = b.port(hub);
                b.weighted(g, C::real(w[i].clone()), h);
            }
        }
    }
}

fn empty_diagram(n_in: usize, n_out: usize) -> Diagram {
    let zero = C::zero;
    let falsum = Diagram::white(0, 1, C::one(), zero()).compose(&Diagram::white(1, 0, zero(), zero())).expect("arity");
    let mut parts = vec![falsum];
    parts.extend((0..n_in).map(|_| Diagram::grey(1, 0, zero(), zero())));
    parts.extend((0..n_out).map(|_| Diagram::grey(0, 1, zero(), zero())));
    Diagram::tensor_all(&parts)
}

fn synth_state(state: &LagRel, calculus: Calculus) -> Result<Diagram> {
    let n = state.n_out();
    if state.is_empty() {
        return Ok(empty_diagram(0, n));
    }
    // In the real calculi a complex shift is moved into output translations.
    let (state, shift) = if calculus == Calculus::Gsa {
        (state.clone(), vec![C::zero(); n])
    } else {
        let p = state.real_point().ok_or(Error::NotPositive)?;
        let x0: Vec<C> = p[n..].iter().cloned().map(C::real).collect();
        let t: Vec<C> = vec![C::zero(); n].into_iter().chain(x0.iter().map(|x| -x.clone())).collect();
        (state.translate(&t)?, x0)
    };
    let ap = state.ap_form()?;
    let m = ap.pivots.len();
    let rest = ap.free_modes();
    let real_calc = calculus != Calculus::Gsa;
    if real_calc && (!is_real_matrix(&ap.l) || ap.x.iter().chain(&ap.mu).any(|v| !v.is_real())) {
        return Err(Error::NotPositive);
    }
    let mut b = Builder::new(0, n);
    let mut mode_node = vec![0usize; n];
    let greys: Vec<usize> = (0..m)
        .map(|i| {
            let diag = ap.phi.get(i, i).clone();
            let sym = if real_calc { C::real(diag.re) } else { diag };
            b.grey(ap.x[i].clone(), sym)
        })
        .collect();
    for (i, &p) in ap.pivots.iter().enumerate() {
        mode_node[p] = greys[i];
    }
    let whites: Vec<usize> = (0..rest.len()).map(|j| b.white(ap.mu[j].clone(), C::zero())).collect();
    for (j, &p) in rest.iter().enumerate() {
        mode_node[p] = whites[j];
    }
    let out_ports: Vec<End> = mode_node.iter().map(|&v| b.port(v)).collect();
    for i in 0..m {
        for j in 0..rest.len() {
            let l = ap.l.get(i, j).clone();
            if !l.is_zero() {
                let (g, w) = (b.port(greys[i]), b.port(whites[j]));
                b.weighted(g, -l, w);
            }
        }
    }
    // Off-diagonal phases: a Fourier box followed by a squeeze by the inverse weight.
    for i in 0..m {
        for k in i + 1..m {
            let raw = ap.phi.get(i, k).clone();
            let u = if real_calc { C::real(raw.re) } else { raw };
            if let Some(inv) = u.inv() {
                let (gi, gk) = (b.port(greys[i]), b.port(greys[k]));
                let f = b.node(NodeKind::Fourier, (C::zero(), C::zero()), C::one());
                b.next_port[f] = 2;
                b.edge(gi, End::Port(f, 0));
                b.boxed(End::Port(f, 1), NodeKind::Squeeze, inv, gk);
            }
        }
    }
    if real_calc {
        let v = Matrix::from_fn(m, m, |i, j| ap.phi.get(i, j).im.clone());
        for w in rational_gram_factors(&v)? {
            attach_vacua(&mut b, &greys, &w);
        }
    }
    let mut d = b.finish();
    // Output wires, translated in position where the shift is nonzero.
    let mut tail = Vec::with_capacity(n);
    for (p, port) in out_ports.iter().enumerate() {
        d.edges.push((*port, End::Out(p)));
        tail.push(if shift[p].is_zero() { Diagram::wires(1) } else { position_shift(shift[p].clone()) });
    }
    if shift.iter().all(|s| s.is_zero()) {
        return Ok(d);
    }
    d.compose(&Diagram::tensor_all(&tail))
}

/// `(z, x) ↦ (z, x + t)`.
pub fn position_shift(t: C) -> Diagram {
    Diagram::white(1, 1, -t, C::zero()).compose(&Diagram::white(1, 1, C::zero(), C::zero())).expect("arity")
}

/// `(z, x) ↦ (z + s, x)`.
pub fn momentum_shift(s: C) -> Diagram {
    Diagram::grey(1, 1, -s, C::zero())
}

/// Turns the first `n_in` outputs of a named map back into inputs.
fn unbend(state: Diagram, n_in: usize) -> Diagram {
    let mut d = state;
    let n_out = d.n_out() - n_in;
    for k in 0..n_in {
        let pos = d.edges.iter().position(|&(a, b)| a == End::Out(k) || b == End::Out(k)).expect("boundary edge");
        let (a, b) = d.edges[pos];
        let other = if a == End::Out(k) { b } else { a };
        let node = d.nodes.len();
        d.nodes.push(Node::new(format!("n{node}"), NodeKind::XSpider));
        d.edges[pos] = (End::Port(node, 1), other);
        d.edges.push((End::In(k), End::Port(node, 0)));
    }
    // A bare wire between two bent inputs leaves `other` pointing at Out(k'); remap.
    for e in d.edges.iter_mut() {
        for end in [&mut e.0, &mut e.1] {
            if let End::Out(k) = *end {
                *end = if k >= n_in { End::Out(k - n_in) } else { End::Out(k) };
            }
        }
    }
    d.input_names = (0..n_in).map(|k| format!("i{k}")).collect();
    d.output_names = (0..n_out).map(|k| format!("o{k}")).collect();
    d
}

/// A diagram of `calculus` denoting `rel`.
///
/// The real calculi need a positive relation (quasi-real for `Gga`).
pub fn synthesize_normal_form(rel: &LagRel, calculus: Calculus) -> Result<Diagram> {
    match calculus {
        Calculus::Gaa => return Err(Error::NotInFragment("use the Gsa, Gga or Gqga calculus".into())),
        Calculus::Gqga if !rel.is_positive()? => return Err(Error::NotPositive),
        Calculus::Gga if !rel.is_quasi_real()? => return Err(Error::NotQuasiReal),
        _ => {}
    }
    if rel.is_empty() {
        return Ok(empty_diagram(rel.n_in(), rel.n_out()));
    }
    let d = synth_state(&rel.name(), calculus)?;
    Ok(unbend(d, rel.n_in()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::interpret;
    use crate::lagrangian as lag;
    use crate::linalg::cmat;
    use crate::scalar::{q, qi};

    fn c(n: i64) -> C {
        C::int(n)
    }

    fn roundtrip(r: &LagRel, calc: Calculus) {
        let d = synthesize_normal_form(r, calc).unwrap();
        d.check_fragment(calc).unwrap();
        assert_eq!(&interpret(&d, calc).unwrap(), r, "{}", d.to_json());
    }

    #[test]
    fn gram_factors() {
        let v = Matrix::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), q(2, 3)]], 2).unwrap();
        let f = rational_gram_factors(&v).unwrap();
        let sum: Matrix<Rational> = Matrix::from_fn(2, 2, |i, j| f.iter().map(|w| &w[i] * &w[j]).sum());
        let bad = Matrix::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), q(1, 3)]], 2).unwrap();
        assert!(matches!(rational_gram_factors(&bad), Err(Error::NotPositive)));
        assert_eq!(sum, v);
    }

    #[test]
    fn gsa_examples() {
        roundtrip(&lag::grey_spider(1, 2, &c(1), &C::new(qi(2), qi(3))), Calculus::Gsa);
        roundtrip(&lag::white_spider(2, 1, &c(-1), &c(2)), Calculus::Gsa);
        roundtrip(&lag::fourier(), Calculus::Gsa);
        roundtrip(&lag::squeeze(&c(0)), Calculus::Gsa);
        roundtrip(&LagRel::empty(1, 1), Calculus::Gsa);
        let s = cmat("1,2,0,1;0,1,1,0;0,0,1,0;0,0,-2,1");
        let g = LagRel::symplectic_graph(&s, &[c(1), c(0), C::i(), c(2)]).unwrap();
        roundtrip(&g, Calculus::Gsa);
    }

    #[test]
    fn positive_examples() {
        roundtrip(&lag::vacuum(), Calculus::Gga);
        roundtrip(&lag::vacuum(), Calculus::Gqga);
        roundtrip(&lag::grey_spider(0, 1, &c(3), &c(0)), Calculus::Gga);
        // Displaced, sheared two-mode state with a correlated imaginary part.
        let st = LagRel::from_constraints(
            0,
            2,
            &cmat("1,0,-2-3i,-1-i;0,1,-1-i,5-2i"),
            &[C::new(qi(1), qi(2)), c(-1)],
        )
        .unwrap();
        assert!(st.is_positive().unwrap());
        roundtrip(&st, Calculus::Gqga);
        let map = lag::squeeze(&c(2)).compose(&lag::grey_spider(1, 1, &c(0), &c(1))).unwrap();
        roundtrip(&map, Calculus::Gqga);
        roundtrip(&lag::fourier(), Calculus::Gqga);
        assert!(matches!(synthesize_normal_form(&lag::fourier(), Calculus::Gga), Err(Error::NotQuasiReal)));
        let bad = lag::grey_spider(0, 1, &c(0), &C::new(qi(0), qi(-1)));
        assert!(matches!(synthesize_normal_form(&bad, Calculus::Gqga), Err(Error::NotPositive)));
    }
}
