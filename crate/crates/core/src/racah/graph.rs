use std::fmt::{self, Write};

use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainNode {
    /// `𝓛_m`
    Left(usize),
    /// `𝓡_m`
    Right(usize),
}

impl fmt::Display for ChainNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainNode::Left(m) => write!(f, "L{m}"),
            ChainNode::Right(m) => write!(f, "R{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Consecutive left Casimirs; they commute.
    LeftLeft,
    /// Consecutive right Casimirs; they commute.
    RightRight,
    /// `𝓡_a` and `𝓛_b` with `b < a`; they commute.
    Cross,
    /// `𝓛_k` and `𝓡_k`, whose bracket is `2𝓕_k`.
    Hidden(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainEdge {
    pub from: ChainNode,
    pub to: ChainNode,
    pub kind: EdgeKind,
}

/// Nodes `𝓛_1..𝓛_{n-1}`, `𝓡_2..𝓡_n` in output order.
pub fn chain_graph_nodes(n: usize) -> Result<Vec<ChainNode>> {
    check_n(n)?;
    Ok((1..n).map(ChainNode::Left).chain((2..=n).map(ChainNode::Right)).collect())
}

/// Edges in output order: commuting pairs first, then one `𝓛_k - 𝓡_k` edge
/// per substructure.
pub fn chain_graph_edges(n: usize) -> Result<Vec<ChainEdge>> {
    check_n(n)?;
    let mut edges = Vec::new();
    for m in 1..n - 1 {
        edges.push(ChainEdge {
            from: ChainNode::Left(m),
            to: ChainNode::Left(m + 1),
            kind: EdgeKind::LeftLeft,
        });
    }
    for m in 2..n {
        edges.push(ChainEdge {
            from: ChainNode::Right(m),
            to: ChainNode::Right(m + 1),
            kind: EdgeKind::RightRight,
        });
    }
    for a in 2..=n {
        for b in 1..a {
            edges.push(ChainEdge {
                from: ChainNode::Right(a),
                to: ChainNode::Left(b),
                kind: EdgeKind::Cross,
            });
        }
    }
    for k in 2..n {
        edges.push(ChainEdge {
            from: ChainNode::Left(k),
            to: ChainNode::Right(k),
            kind: EdgeKind::Hidden(k),
        });
    }
    Ok(edges)
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(AlgebraError::BadIndices { indices: vec![n], n });
    }
    Ok(())
}

/// DOT text for the chain of substructures in dimension `n`. Dashed edges
/// join commuting Casimirs; the solid `𝓛_k - 𝓡_k` edges carry `𝓕_k`.
/// `𝓛_n = 𝓡_1` and the `C_k` are left out.
pub fn emit_chain_graph(n: usize) -> Result<String> {
    let nodes = chain_graph_nodes(n)?;
    let edges = chain_graph_edges(n)?;
    let mut out = String::new();
    let _ = writeln!(out, "digraph chain_n{n} {{");
    let _ = writeln!(out, "  node [shape=circle, style=filled, color=gray, fontcolor=white];");
    let _ = writeln!(out, "  edge [dir=none, penwidth=2];");
    for node in &nodes {
        let (fill, label) = match node {
            ChainNode::Left(m) => ("cyan", format!("𝓛{m}")),
            ChainNode::Right(m) => ("\"#ff9999\"", format!("𝓡{m}")),
        };
        let _ = writeln!(out, "  {node} [label=\"{label}\", fillcolor={fill}];");
    }
    for e in &edges {
        let attrs = match e.kind {
            EdgeKind::LeftLeft => "style=dashed, color=cyan".to_string(),
            EdgeKind::RightRight => "style=dashed, color=\"#ff9999\"".to_string(),
            EdgeKind::Cross => "style=dashed, color=black".to_string(),
            EdgeKind::Hidden(k) => format!("style=solid, color=gray40, label=\"𝓕{k}\""),
        };
        let _ = writeln!(out, "  {} -> {} [{attrs}];", e.from, e.to);
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dashed(n: usize) -> usize {
        chain_graph_edges(n).unwrap().iter().filter(|e| !matches!(e.kind, EdgeKind::Hidden(_))).count()
    }

    #[test]
    fn edge_counts_follow_figures() {
        assert_eq!(chain_graph_nodes(3).unwrap().len(), 4);
        assert_eq!(dashed(3), 5);
        assert_eq!(chain_graph_nodes(4).unwrap().len(), 6);
        assert_eq!(dashed(4), 10);
    }

    #[test]
    fn n3_graph_text() {
        let dot = emit_chain_graph(3).unwrap();
        assert!(dot.starts_with("digraph chain_n3 {\n"));
        assert!(dot.contains("  L1 -> L2 [style=dashed, color=cyan];\n"));
        assert!(dot.contains("  R3 -> L2 [style=dashed, color=black];\n"));
        assert!(dot.contains("  L2 -> R2 [style=solid, color=gray40, label=\"𝓕2\"];\n"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(dot, emit_chain_graph(3).unwrap());
    }

    #[test]
    fn small_n_rejected() {
        assert!(matches!(emit_chain_graph(2), Err(AlgebraError::BadIndices { .. })));
    }
}
