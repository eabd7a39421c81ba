//! Relational semantics of diagrams by variable elimination.
//!
//! Every node is read as a state on its legs, with inputs of boxes bent by the
//! grey cup. Edges are grey caps. Each leg carries `w` variables (`w = 2` for
//! `(z, x)`, `w = 1` for positions only) and all of them are eliminated.

use std::collections::HashMap;

use super::{Calculus, Diagram, End, NodeKind};
use crate::affine::{eliminate, gaa_generator, scalar_mult, AffineRelation, GaaKind};
use crate::error::{Error, Result};
use crate::lagrangian::{self as lag, LagRel};
use crate::linalg::Matrix;
use crate::scalar::{ExactField, Rational, C};

/// A linear system `Σ coeff·var = rhs` over named variables.
#[derive(Clone, Debug)]
struct Row<F> {
    terms: Vec<(usize, F)>,
    rhs: F,
}

struct Layout {
    w: usize,
    /// First leg index of every node.
    leg_base: Vec<usize>,
    /// Sorted ports of every node.
    ports: Vec<Vec<usize>>,
    n_legs: usize,
    n_in: usize,
    n_out: usize,
}

impl Layout {
    fn new(d: &Diagram, w: usize) -> Result<Self> {
        let ports = d.validate()?;
        let mut leg_base = Vec::with_capacity(ports.len());
        let mut n_legs = 0;
        for ps in &ports {
            leg_base.push(n_legs);
            n_legs += ps.len();
        }
        Ok(Layout { w, leg_base, ports, n_legs, n_in: d.n_in(), n_out: d.n_out() })
    }

    fn leg(&self, node: usize, port: usize) -> usize {
        self.leg_base[node] + self.ports[node].binary_search(&port).expect("validated port")
    }

    fn leg_var(&self, leg: usize, comp: usize) -> usize {
        leg * self.w + comp
    }

    /// Boundary variables follow the legs, ordered `(in comps..., out comps...)`
    /// with each component block running over the ports.
    fn boundary_var(&self, e: End, comp: usize) -> usize {
        let base = self.n_legs * self.w;
        match e {
            End::In(k) => base + comp * self.n_in + k,
            End::Out(k) => base + self.w * self.n_in + comp * self.n_out + k,
            End::Port(..) => unreachable!("not a boundary"),
        }
    }

    fn n_vars(&self) -> usize {
        (self.n_legs + self.n_in + self.n_out) * self.w
    }

    fn end_var(&self, e: End, comp: usize) -> usize {
        match e {
            End::Port(n, p) => self.leg_var(self.leg(n, p), comp),
            b => self.boundary_var(b, comp),
        }
    }

    fn edge_rows<F: ExactField>(&self, a: End, b: End) -> Vec<Row<F>> {
        let one = F::one;
        let minus = || F::zero() - F::one();
        // Momentum sign of each end's leg-equivalent: outputs are read negated.
        let zsign = |e: End| if matches!(e, End::Out(_)) { minus() } else { one() };
        let mut rows = Vec::new();
        if self.w == 2 {
            rows.push(Row { terms: vec![(self.end_var(a, 0), zsign(a)), (self.end_var(b, 0), zsign(b))], rhs: F::zero() });
        }
        let c = self.w - 1;
        rows.push(Row { terms: vec![(self.end_var(a, c), one()), (self.end_var(b, c), minus())], rhs: F::zero() });
        rows
    }

    /// Rows of a node state whose columns are `(comp 0 of legs, comp 1 of legs)`.
    fn node_rows<F: ExactField>(&self, node: usize, state: &AffineRelation<F>) -> Option<Vec<Row<F>>> {
        let k = self.ports[node].len();
        let (s, a) = state.system()?;
        let rows = (0..s.rows())
            .map(|r| Row {
                terms: (0..s.cols())
                    .filter(|&j| !s.get(r, j).is_zero())
                    .map(|j| (self.leg_var(self.leg_base[node] + j % k, j / k), s.get(r, j).clone()))
                    .collect(),
                rhs: a[r].clone(),
            })
            .collect();
        Some(rows)
    }
}

fn gsa_node_state(d: &Diagram, node: usize, degree: usize) -> LagRel {
    let n = &d.nodes[node];
    let bend = |b: LagRel| LagRel::grey_cup(1).compose(&LagRel::identity(1).tensor(&b)).expect("arity");
    match n.kind {
        NodeKind::ZSpider => lag::grey_spider(0, degree, &n.phase.0, &n.phase.1),
        NodeKind::XSpider => lag::white_spider(0, degree, &n.phase.0, &n.phase.1),
        NodeKind::Fourier => bend(lag::fourier()),
        NodeKind::FourierInv => bend(lag::fourier_inv()),
        NodeKind::Squeeze => bend(lag::squeeze(&n.param)),
        NodeKind::Vacuum => lag::vacuum(),
    }
}

fn gaa_node_state(d: &Diagram, node: usize, degree: usize) -> Result<AffineRelation<Rational>> {
    let n = &d.nodes[node];
    match n.kind {
        NodeKind::ZSpider => gaa_generator(GaaKind::Grey, 0, degree, &n.phase.0.re),
        NodeKind::XSpider => gaa_generator(GaaKind::White, 0, degree, &n.phase.0.re),
        NodeKind::Squeeze => Ok(scalar_mult(&n.param.re).reshape(0, 2)),
        k => Err(Error::NotInFragment(format!("{} has no affine reading", k.name()))),
    }
}

/// Dense system over the columns `cols` (variable ids), in that order.
fn dense<F: ExactField>(rows: &[Row<F>], cols: &[usize]) -> (Matrix<F>, Vec<F>) {
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let mut s: Matrix<F> = Matrix::zeros(rows.len(), cols.len());
    for (r, row) in rows.iter().enumerate() {
        for (v, c) in &row.terms {
            let j = pos[v];
            let cur = s.get(r, j).clone();
            s.set(r, j, cur + c.clone());
        }
    }
    (s, rows.iter().map(|r| r.rhs.clone()).collect())
}

fn to_rows<F: ExactField>(s: &Matrix<F>, a: &[F], cols: &[usize]) -> Vec<Row<F>> {
    (0..s.rows())
        .map(|r| Row {
            terms: (0..s.cols()).filter(|&j| !s.get(r, j).is_zero()).map(|j| (cols[j], s.get(r, j).clone())).collect(),
            rhs: a[r].clone(),
        })
        .collect()
}

/// The boundary system, or `None` for the empty relation.
fn solve<F: ExactField>(
    layout: &Layout,
    d: &Diagram,
    states: &[Option<Vec<Row<F>>>],
    order: Option<&[usize]>,
) -> Result<Option<(Matrix<F>, Vec<F>)>> {
    if states.iter().any(|s| s.is_none()) {
        return Ok(None);
    }
    let boundary: Vec<usize> = (layout.n_legs * layout.w..layout.n_vars()).collect();
    let node_rows = |n: usize| states[n].clone().expect("nonempty");
    let Some(order) = order else {
        let mut rows: Vec<Row<F>> = (0..d.nodes.len()).flat_map(node_rows).collect();
        for &(a, b) in &d.edges {
            rows.extend(layout.edge_rows(a, b));
        }
        let cols: Vec<usize> = (0..layout.n_vars()).collect();
        let (s, a) = dense(&rows, &cols);
        let elim: Vec<usize> = (0..layout.n_legs * layout.w).collect();
        return Ok(eliminate(&s, &a, &elim));
    };
    // Incremental contraction in the given edge order.
    let mut alive: Vec<usize> = vec![];
    let mut rows: Vec<Row<F>> = vec![];
    let mut added = vec![false; d.nodes.len()];
    let mut touch = |e: End, alive: &mut Vec<usize>, rows: &mut Vec<Row<F>>| {
        match e {
            End::Port(n, _) if !added[n] => {
                added[n] = true;
                let base = layout.leg_base[n];
                for leg in base..base + layout.ports[n].len() {
                    alive.extend((0..layout.w).map(|c| layout.leg_var(leg, c)));
                }
                rows.extend(node_rows(n));
            }
            End::In(_) | End::Out(_) => {
                for c in 0..layout.w {
                    let v = layout.boundary_var(e, c);
                    if !alive.contains(&v) {
                        alive.push(v);
                    }
                }
            }
            _ => {}
        }
    };
    for &i in order {
        let (a, b) = *d.edges.get(i).ok_or_else(|| Error::IllFormedDiagram(format!("edge index {i} out of range")))?;
        touch(a, &mut alive, &mut rows);
        touch(b, &mut alive, &mut rows);
        rows.extend(layout.edge_rows(a, b));
        let closed: Vec<usize> = [a, b]
            .iter()
            .filter(|e| matches!(e, End::Port(..)))
            .flat_map(|&e| (0..layout.w).map(move |c| layout.end_var(e, c)))
            .collect();
        let (s, rhs) = dense(&rows, &alive);
        let elim: Vec<usize> = closed.iter().map(|v| alive.iter().position(|x| x == v).expect("alive")).collect();
        let Some((s2, a2)) = eliminate(&s, &rhs, &elim) else {
            return Ok(None);
        };
        alive.retain(|v| !closed.contains(v));
        rows = to_rows(&s2, &a2, &alive);
    }
    for n in 0..d.nodes.len() {
        if !added[n] {
            if !layout.ports[n].is_empty() {
                return Err(Error::IllFormedDiagram("edge order does not cover every edge".into()));
            }
            rows.extend(node_rows(n));
        }
    }
    if alive.iter().any(|v| *v < layout.n_legs * layout.w) {
        return Err(Error::IllFormedDiagram("edge order does not cover every edge".into()));
    }
    let (s, a) = dense(&rows, &boundary);
    Ok(eliminate(&s, &a, &[]))
}

fn interpret_inner(d: &Diagram, calculus: Calculus, order: Option<&[usize]>) -> Result<LagRel> {
    if calculus == Calculus::Gaa {
        return Err(Error::NotInFragment("use interpret_gaa for the affine calculus".into()));
    }
    d.check_fragment(calculus)?;
    let layout = Layout::new(d, 2)?;
    let states: Vec<Option<Vec<Row<C>>>> = (0..d.nodes.len())
        .map(|n| {
            let st = gsa_node_state(d, n, layout.ports[n].len());
            layout.node_rows(n, st.relation())
        })
        .collect();
    match solve(&layout, d, &states, order)? {
        None => Ok(LagRel::empty(d.n_in(), d.n_out())),
        Some((s, a)) => LagRel::from_constraints(d.n_in(), d.n_out(), &s, &a),
    }
}

/// The relation denoted by a diagram, after checking it lies in `calculus`.
pub fn interpret(d: &Diagram, calculus: Calculus) -> Result<LagRel> {
    interpret_inner(d, calculus, None)
}

/// Same as [`interpret`] but contracting edges one at a time in `order`.
pub fn interpret_ordered(d: &Diagram, calculus: Calculus, order: &[usize]) -> Result<LagRel> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..d.edges.len()).collect::<Vec<_>>() {
        return Err(Error::IllFormedDiagram("edge order must be a permutation of the edges".into()));
    }
    interpret_inner(d, calculus, Some(order))
}

/// The affine relation on positions denoted by a diagram of the affine calculus.
pub fn interpret_gaa(d: &Diagram) -> Result<AffineRelation<Rational>> {
    d.check_fragment(Calculus::Gaa)?;
    let layout = Layout::new(d, 1)?;
    let states = (0..d.nodes.len())
        .map(|n| Ok(layout.node_rows(n, &gaa_node_state(d, n, layout.ports[n].len())?)))
        .collect::<Result<Vec<_>>>()?;
    match solve(&layout, d, &states, None)? {
        None => Ok(AffineRelation::empty(d.n_in(), d.n_out())),
        Some((s, a)) => AffineRelation::from_constraints(d.n_in(), d.n_out(), &s, &a),
    }
}
