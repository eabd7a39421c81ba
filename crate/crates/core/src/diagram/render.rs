//! Graphviz and TikZ renderings.

use std::fmt::Write;

use super::{Diagram, End, Node, NodeKind};
use crate::scalar::Field;

fn label(n: &Node) -> String {
    match n.kind {
        k if k.is_spider() => {
            let (a, b) = &n.phase;
            if a.is_zero() && b.is_zero() {
                String::new()
            } else {
                format!("{a},{b}")
            }
        }
        NodeKind::Fourier => "F".into(),
        NodeKind::FourierInv => "F*".into(),
        NodeKind::Squeeze => n.param.to_string(),
        _ => "0".into(),
    }
}

fn end_ref(d: &Diagram, e: End) -> String {
    match e {
        End::In(k) => format!("\"{}\"", d.input_names[k]),
        End::Out(k) => format!("\"{}\"", d.output_names[k]),
        End::Port(n, _) => format!("\"{}\"", d.nodes[n].id),
    }
}

pub fn to_dot(d: &Diagram) -> String {
    let mut s = String::from("graph diagram {\n  rankdir=LR;\n");
    for name in &d.input_names {
        let _ = writeln!(s, "  \"{name}\" [shape=point, xlabel=\"{name}\"];");
    }
    for name in &d.output_names {
        let _ = writeln!(s, "  \"{name}\" [shape=point, xlabel=\"{name}\"];");
    }
    for n in &d.nodes {
        let (shape, fill) = match n.kind {
            NodeKind::ZSpider => ("circle", "grey"),
            NodeKind::XSpider => ("circle", "white"),
            NodeKind::Vacuum => ("triangle", "white"),
            _ => ("box", "white"),
        };
        let _ = writeln!(s, "  \"{}\" [shape={shape}, style=filled, fillcolor={fill}, label=\"{}\"];", n.id, label(n));
    }
    for &(a, b) in &d.edges {
        let _ = writeln!(s, "  {} -- {};", end_ref(d, a), end_ref(d, b));
    }
    s.push_str("}\n");
    s
}

pub fn to_tikz(d: &Diagram) -> String {
    let mut s = String::from("\\begin{tikzpicture}\n");
    let col = |k: usize, total: usize| k as f64 - (total as f64 - 1.0) / 2.0;
    for (k, name) in d.input_names.iter().enumerate() {
        let _ = writeln!(s, "  \\coordinate ({name}) at (0,{:.2});", col(k, d.n_in()));
    }
    for (k, n) in d.nodes.iter().enumerate() {
        let style = match n.kind {
            NodeKind::ZSpider => "draw, circle, fill=gray!50",
            NodeKind::XSpider => "draw, circle",
            NodeKind::Vacuum => "draw, regular polygon, regular polygon sides=3",
            _ => "draw, rectangle",
        };
        let _ = writeln!(s, "  \\node[{style}] ({}) at ({},{:.2}) {{${}$}};", n.id, 2 + k, col(k % 3, 3), label(n));
    }
    let x_out = d.nodes.len() + 3;
    for (k, name) in d.output_names.iter().enumerate() {
        let _ = writeln!(s, "  \\coordinate ({name}) at ({x_out},{:.2});", col(k, d.n_out()));
    }
    for &(a, b) in &d.edges {
        let name = |e: End| end_ref(d, e).trim_matches('"').to_string();
        let _ = writeln!(s, "  \\draw ({}) -- ({});", name(a), name(b));
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C;

    #[test]
    fn renders_every_edge() {
        let d = Diagram::grey(1, 2, C::int(1), C::int(0)).compose(&Diagram::fourier().tensor(&Diagram::wires(1))).unwrap();
        let dot = to_dot(&d);
        assert_eq!(dot.matches(" -- ").count(), d.edges.len());
        assert!(dot.starts_with("graph"));
        let tikz = to_tikz(&d);
        assert_eq!(tikz.matches("\\draw").count(), d.edges.len());
    }
}
