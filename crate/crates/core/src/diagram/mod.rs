//! Undirected open graphs over the spider, box and vacuum generators.
//!
//! Spiders are flexsymmetric, so only the set of their ports matters. Boxes
//! are oriented: port 0 is the input and port 1 the output. A vacuum has a
//! single port 0.

pub mod axioms;
pub mod interpret;
pub mod lov;
pub mod protocols;
pub mod render;
pub mod synth;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, C};

pub use interpret::{interpret, interpret_gaa, interpret_ordered};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    /// Grey spider.
    ZSpider,
    /// White spider.
    XSpider,
    Fourier,
    FourierInv,
    Squeeze,
    Vacuum,
}

impl NodeKind {
    pub fn is_spider(self) -> bool {
        matches!(self, NodeKind::ZSpider | NodeKind::XSpider)
    }

    pub fn is_box(self) -> bool {
        matches!(self, NodeKind::Fourier | NodeKind::FourierInv | NodeKind::Squeeze)
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::ZSpider => "ZSpider",
            NodeKind::XSpider => "XSpider",
            NodeKind::Fourier => "Fourier",
            NodeKind::FourierInv => "FourierInv",
            NodeKind::Squeeze => "Squeeze",
            NodeKind::Vacuum => "Vacuum",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    /// `(affine, symplectic)`; meaningful for spiders only.
    pub phase: (C, C),
    /// Squeeze factor; meaningful for `Squeeze` only.
    pub param: C,
}

impl Node {
    pub fn new(id: impl Into<String>, kind: NodeKind) -> Self {
        Node { id: id.into(), kind, phase: (C::zero(), C::zero()), param: C::one() }
    }
}

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    In(usize),
    Out(usize),
    /// `(node index, port)`.
    Port(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<(End, End)>,
    pub input_names: Vec<String>,
    pub output_names: Vec<String>,
}

/// Which presentation a diagram is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Calculus {
    /// Affine relations, read on positions only.
    Gaa,
    /// Affine Lagrangian relations.
    Gsa,
    /// Gaussian relations.
    Gga,
    /// Positive affine Lagrangian relations.
    Gqga,
}

impl Calculus {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaa" => Ok(Calculus::Gaa),
            "gsa" => Ok(Calculus::Gsa),
            "gga" => Ok(Calculus::Gga),
            "gqga" => Ok(Calculus::Gqga),
            other => Err(Error::Parse(format!("unknown calculus {other}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Calculus::Gaa => "gaa",
            Calculus::Gsa => "gsa",
            Calculus::Gga => "gga",
            Calculus::Gqga => "gqga",
        }
    }

    pub fn all() -> [Calculus; 4] {
        [Calculus::Gsa, Calculus::Gaa, Calculus::Gga, Calculus::Gqga]
    }
}

fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{prefix}{k}")).collect()
}

impl Diagram {
    /// The empty diagram `0 → 0`.
    pub fn empty() -> Self {
        Self::with_boundary(0, 0)
    }

    fn with_boundary(n_in: usize, n_out: usize) -> Self {
        Diagram { nodes: vec![], edges: vec![], input_names: default_names("i", n_in), output_names: default_names("o", n_out) }
    }

    pub fn n_in(&self) -> usize {
        self.input_names.len()
    }

    pub fn n_out(&self) -> usize {
        self.output_names.len()
    }

    /// `n` parallel wires.
    pub fn wires(n: usize) -> Self {
        let mut d = Self::with_boundary(n, n);
        d.edges = (0..n).map(|k| (End::In(k), End::Out(k))).collect();
        d
    }

    /// Swaps a block of `n` wires past a block of `m`.
    pub fn swap(n: usize, m: usize) -> Self {
        let mut d = Self::with_boundary(n + m, n + m);
        d.edges = (0..n).map(|k| (End::In(k), End::Out(m + k))).chain((0..m).map(|k| (End::In(n + k), End::Out(k)))).collect();
        d
    }

    /// Bare `0 → 2` wire per mode, pairing output `k` with `n + k`.
    pub fn cup(n: usize) -> Self {
        let mut d = Self::with_boundary(0, 2 * n);
        d.edges = (0..n).map(|k| (End::Out(k), End::Out(n + k))).collect();
        d
    }

    pub fn cap(n: usize) -> Self {
        let mut d = Self::with_boundary(2 * n, 0);
        d.edges = (0..n).map(|k| (End::In(k), End::In(n + k))).collect();
        d
    }

    /// A single generator with its first `n_in` ports wired to inputs and the
    /// rest to outputs.
    pub fn generator(node: Node, n_in: usize, n_out: usize) -> Result<Self> {
        match node.kind {
            NodeKind::Vacuum if (n_in, n_out) != (0, 1) && (n_in, n_out) != (1, 0) => {
                return Err(Error::IllFormedDiagram("a vacuum has exactly one leg".into()))
            }
            k if k.is_box() && (n_in, n_out) != (1, 1) => return Err(Error::IllFormedDiagram("boxes are 1 -> 1".into())),
            _ => {}
        }
        let mut d = Self::with_boundary(n_in, n_out);
        d.nodes.push(Node { id: "n0".into(), ..node });
        d.edges = (0..n_in).map(|k| (End::In(k), End::Port(0, k))).chain((0..n_out).map(|k| (End::Port(0, n_in + k), End::Out(k)))).collect();
        Ok(d)
    }

    pub fn grey(n_in: usize, n_out: usize, a: C, b: C) -> Self {
        let node = Node { phase: (a, b), ..Node::new("n0", NodeKind::ZSpider) };
        Self::generator(node, n_in, n_out).expect("spider")
    }

    pub fn white(n_in: usize, n_out: usize, a: C, b: C) -> Self {
        let node = Node { phase: (a, b), ..Node::new("n0", NodeKind::XSpider) };
        Self::generator(node, n_in, n_out).expect("spider")
    }

    pub fn fourier() -> Self {
        Self::generator(Node::new("n0", NodeKind::Fourier), 1, 1).expect("box")
    }

    pub fn fourier_inv() -> Self {
        Self::generator(Node::new("n0", NodeKind::FourierInv), 1, 1).expect("box")
    }

    pub fn squeeze(c: C) -> Self {
        let node = Node { param: c, ..Node::new("n0", NodeKind::Squeeze) };
        Self::generator(node, 1, 1).expect("box")
    }

    pub fn vacuum() -> Self {
        Self::generator(Node::new("n0", NodeKind::Vacuum), 0, 1).expect("vacuum")
    }

    /// The vacuum as an effect `1 → 0`.
    pub fn vacuum_effect() -> Self {
        Self::generator(Node::new("n0", NodeKind::Vacuum), 1, 0).expect("vacuum")
    }

    /// Renames nodes `n0, n1, ...` and boundary ports `i*`/`o*`.
    pub fn renumbered(mut self) -> Self {
        for (k, n) in self.nodes.iter_mut().enumerate() {
            n.id = format!("n{k}");
        }
        self.input_names = default_names("i", self.n_in());
        self.output_names = default_names("o", self.n_out());
        self
    }

    /// Side by side: inputs and outputs of `self` first.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let off = self.nodes.len();
        let (ni, no) = (self.n_in(), self.n_out());
        let shift = |e: End| match e {
            End::In(k) => End::In(ni + k),
            End::Out(k) => End::Out(no + k),
            End::Port(n, p) => End::Port(off + n, p),
        };
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().cloned());
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (shift(a), shift(b))));
        Diagram { nodes, edges, input_names: vec![String::new(); ni + other.n_in()], output_names: vec![String::new(); no + other.n_out()] }
            .renumbered()
    }

    pub fn tensor_all(parts: &[Diagram]) -> Diagram {
        parts.iter().fold(Diagram::empty(), |acc, d| acc.tensor(d))
    }

    /// Sequential composite: outputs of `self` plugged into inputs of `other`.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram> {
        if self.n_out() != other.n_in() {
            return Err(Error::DimensionMismatch(format!(
                "compose diagrams {}->{} and {}->{}",
                self.n_in(),
                self.n_out(),
                other.n_in(),
                other.n_out()
            )));
        }
        let off = self.nodes.len();
        // Tag ends: left ends keep their meaning, right ends are shifted.
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Tag {
            L(End),
            R(End),
        }
        let mut adj: HashMap<Tag, Tag> = HashMap::new();
        for &(a, b) in &self.edges {
            adj.insert(Tag::L(a), Tag::L(b));
            adj.insert(Tag::L(b), Tag::L(a));
        }
        for &(a, b) in &other.edges {
            adj.insert(Tag::R(a), Tag::R(b));
            adj.insert(Tag::R(b), Tag::R(a));
        }
        // The seam joins left Out(k) with right In(k).
        let seam = |t: Tag| match t {
            Tag::L(End::Out(k)) => Some(Tag::R(End::In(k))),
            Tag::R(End::In(k)) => Some(Tag::L(End::Out(k))),
            _ => None,
        };
        let external = |t: Tag| -> Option<End> {
            match t {
                Tag::L(End::In(k)) => Some(End::In(k)),
                Tag::L(End::Port(n, p)) => Some(End::Port(n, p)),
                Tag::R(End::Out(k)) => Some(End::Out(k)),
                Tag::R(End::Port(n, p)) => Some(End::Port(off + n, p)),
                _ => None,
            }
        };
        let mut seen: HashSet<Tag> = HashSet::new();
        let mut edges = Vec::new();
        let starts: Vec<Tag> = self.edges.iter().flat_map(|&(a, b)| [Tag::L(a), Tag::L(b)]).chain(other.edges.iter().flat_map(|&(a, b)| [Tag::R(a), Tag::R(b)])).collect();
        for start in starts {
            if seen.contains(&start) || external(start).is_none() {
                continue;
            }
            // Walk from an external end through seam hops to the other external end.
            seen.insert(start);
            let mut cur = *adj.get(&start).ok_or_else(|| Error::IllFormedDiagram("dangling end".into()))?;
            loop {
                seen.insert(cur);
                if let Some(e) = external(cur) {
                    edges.push((external(start).expect("external"), e));
                    break;
                }
                let s = seam(cur).ok_or_else(|| Error::IllFormedDiagram("unresolved seam".into()))?;
                seen.insert(s);
                cur = *adj.get(&s).ok_or_else(|| Error::IllFormedDiagram("dangling seam".into()))?;
            }
        }
        // Closed loops made of seam hops alone denote the unit scalar and are dropped.
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().cloned());
        Ok(Diagram { nodes, edges, input_names: vec![String::new(); self.n_in()], output_names: vec![String::new(); other.n_out()] }
            .renumbered())
    }

    /// Left-to-right sequential composite of several diagrams.
    pub fn chain(parts: &[Diagram]) -> Result<Diagram> {
        let mut it = parts.iter();
        let first = it.next().cloned().unwrap_or_else(Diagram::empty);
        it.try_fold(first, |acc, d| acc.compose(d))
    }

    /// Degree of every node, checking port usage.
    pub fn validate(&self) -> Result<Vec<Vec<usize>>> {
        let bad = |m: String| Error::IllFormedDiagram(m);
        let mut ids = HashSet::new();
        for n in &self.nodes {
            if n.id.is_empty() || n.id.contains('.') || !ids.insert(n.id.as_str()) {
                return Err(bad(format!("invalid or duplicate node id '{}'", n.id)));
            }
        }
        let mut names = HashSet::new();
        for name in self.input_names.iter().chain(&self.output_names) {
            if name.is_empty() || name.contains('.') || ids.contains(name.as_str()) || !names.insert(name.as_str()) {
                return Err(bad(format!("invalid or duplicate boundary port '{name}'")));
            }
        }
        let mut ports: Vec<Vec<usize>> = vec![vec![]; self.nodes.len()];
        let mut used_in = vec![0usize; self.n_in()];
        let mut used_out = vec![0usize; self.n_out()];
        for &(a, b) in &self.edges {
            for e in [a, b] {
                match e {
                    End::In(k) if k < self.n_in() => used_in[k] += 1,
                    End::Out(k) if k < self.n_out() => used_out[k] += 1,
                    End::Port(n, p) if n < self.nodes.len() => ports[n].push(p),
                    _ => return Err(bad(format!("edge end {e:?} does not resolve"))),
                }
            }
        }
        if used_in.iter().chain(&used_out).any(|&u| u != 1) {
            return Err(bad("every boundary port must be used exactly once".into()));
        }
        for (n, ps) in ports.iter_mut().enumerate() {
            ps.sort_unstable();
            if ps.windows(2).any(|w| w[0] == w[1]) {
                return Err(bad(format!("port of node '{}' used twice", self.nodes[n].id)));
            }
            let kind = self.nodes[n].kind;
            let expected: Option<&[usize]> = match kind {
                k if k.is_box() => Some(&[0, 1]),
                NodeKind::Vacuum => Some(&[0]),
                _ => None,
            };
            if let Some(exp) = expected {
                if ps.as_slice() != exp {
                    return Err(bad(format!("{} node '{}' must use ports {exp:?}", kind.name(), self.nodes[n].id)));
                }
            }
        }
        Ok(ports)
    }

    /// Checks that every generator belongs to the calculus.
    pub fn check_fragment(&self, calculus: Calculus) -> Result<()> {
        for n in &self.nodes {
            let real_phase = n.phase.0.is_real() && n.phase.1.is_real();
            let reason = match (calculus, n.kind) {
                (Calculus::Gsa, NodeKind::Vacuum) => Some("vacuum is not a generator here"),
                (Calculus::Gsa, _) => None,
                (_, NodeKind::Squeeze) if !n.param.is_real() => Some("squeeze factor must be real"),
                (_, k) if k.is_spider() && !real_phase => Some("phases must be real"),
                (Calculus::Gaa | Calculus::Gga, NodeKind::Fourier | NodeKind::FourierInv) => Some("Fourier boxes are not generators here"),
                (Calculus::Gaa | Calculus::Gga, k) if k.is_spider() && !n.phase.1.is_zero() => Some("symplectic phases must vanish"),
                (Calculus::Gaa, NodeKind::ZSpider) if !n.phase.0.is_zero() => Some("grey spiders are phase-free"),
                (Calculus::Gaa, NodeKind::Vacuum) => Some("vacuum is not a generator here"),
                _ => None,
            };
            if let Some(r) = reason {
                return Err(Error::NotInFragment(format!("{} node '{}': {r}", n.kind.name(), n.id)));
            }
        }
        Ok(())
    }

    fn end_name(&self, e: End) -> String {
        match e {
            End::In(k) => self.input_names[k].clone(),
            End::Out(k) => self.output_names[k].clone(),
            End::Port(n, p) => format!("{}.{p}", self.nodes[n].id),
        }
    }

    /// Canonical JSON text.
    pub fn to_json(&self) -> String {
        let raw = RawDiagram {
            wires: format!("{}/{}", self.n_in(), self.n_out()),
            nodes: self
                .nodes
                .iter()
                .map(|n| RawNode {
                    id: n.id.clone(),
                    kind: n.kind,
                    phase: n.kind.is_spider().then(|| [n.phase.0.to_string(), n.phase.1.to_string()]),
                    param: (n.kind == NodeKind::Squeeze).then(|| n.param.to_string()),
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [self.end_name(a), self.end_name(b)]).collect(),
            inputs: self.input_names.clone(),
            outputs: self.output_names.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDiagram = serde_json::from_str(text)
            .map_err(crate::io::json_error)?;
        let (wi, wo) = raw
            .wires
            .split_once('/')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| Error::Parse(format!("wires must read 'n_in/n_out', got '{}'", raw.wires)))?;
        if wi != raw.inputs.len() || wo != raw.outputs.len() {
            return Err(Error::IllFormedDiagram("wires disagree with the boundary port lists".into()));
        }
        let mut nodes = Vec::with_capacity(raw.nodes.len());
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        for n in raw.nodes {
            let mut node = Node::new(n.id.clone(), n.kind);
            if let Some([a, b]) = n.phase {
                node.phase = (a.parse()?, b.parse()?);
            }
            if let Some(p) = n.param {
                node.param = p.parse()?;
            } else if n.kind == NodeKind::Squeeze {
                return Err(Error::IllFormedDiagram(format!("squeeze node '{}' needs a param", n.id)));
            }
            if index.insert(n.id.clone(), nodes.len()).is_some() {
                return Err(Error::IllFormedDiagram(format!("duplicate node id '{}'", n.id)));
            }
            nodes.push(node);
        }
        let resolve = |s: &str| -> Result<End> {
            if let Some(k) = raw.inputs.iter().position(|x| x == s) {
                return Ok(End::In(k));
            }
            if let Some(k) = raw.outputs.iter().position(|x| x == s) {
                return Ok(End::Out(k));
            }
            let (id, port) = s.rsplit_once('.').ok_or_else(|| Error::IllFormedDiagram(format!("unknown endpoint '{s}'")))?;
            let n = *index.get(id).ok_or_else(|| Error::IllFormedDiagram(format!("unknown node '{id}'")))?;
            let p = port.parse().map_err(|_| Error::IllFormedDiagram(format!("bad port in '{s}'")))?;
            Ok(End::Port(n, p))
        };
        let edges = raw.edges.iter().map(|[a, b]| Ok((resolve(a)?, resolve(b)?))).collect::<Result<Vec<_>>>()?;
        let d = Diagram { nodes, edges, input_names: raw.inputs, output_names: raw.outputs };
        d.validate()?;
        Ok(d)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    id: String,
    kind: NodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    wires: String,
    nodes: Vec<RawNode>,
    edges: Vec<[String; 2]>,
    inputs: Vec<String>,
    outputs: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let d = Diagram::grey(1, 2, C::int(1), C::frac(1, 2)).compose(&Diagram::squeeze(C::int(3)).tensor(&Diagram::fourier())).unwrap();
        let text = d.to_json();
        let back = Diagram::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn validation_errors() {
        let mut d = Diagram::fourier();
        d.edges.pop();
        assert!(matches!(d.validate(), Err(Error::IllFormedDiagram(_))));
        assert!(matches!(Diagram::from_json("{\"wires\": \"0/0\""), Err(Error::Parse(_))));
        let text = r#"{"wires":"1/1","nodes":[],"edges":[["a","zz.0"]],"inputs":["a"],"outputs":["b"]}"#;
        assert!(Diagram::from_json(text).is_err());
    }

    #[test]
    fn composition_shapes() {
        let d = Diagram::wires(2).compose(&Diagram::swap(1, 1)).unwrap();
        assert_eq!(d.edges.len(), 2);
        assert!(d.validate().is_ok());
        let loop_ = Diagram::cup(1).compose(&Diagram::cap(1)).unwrap();
        assert_eq!((loop_.n_in(), loop_.n_out(), loop_.edges.len()), (0, 0, 0));
        assert!(Diagram::wires(1).compose(&Diagram::wires(2)).is_err());
    }
}
