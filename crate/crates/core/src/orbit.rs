//! Bounded orbits under `Ω`, `Ω⁻¹`, `ν` and `τ`, with DOT and JSON output.

use std::fmt::{self, Write as _};

use log::warn;
use serde_json::{json, Value};

use crate::batch::{map, Exec};
use crate::error::{Error, Result};
use crate::frobenius::{ar_translate, cosyzygy, is_projective, nakayama_shift, syzygy};
use crate::rep::{dim_vector_label, is_indecomposable, is_isomorphic, Decision, IsoOutcome, Representation};
use crate::strings::recognize_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitOp {
    Omega,
    OmegaInv,
    Nu,
    Tau,
}

impl OrbitOp {
    pub const ALL: [OrbitOp; 4] = [OrbitOp::Omega, OrbitOp::OmegaInv, OrbitOp::Nu, OrbitOp::Tau];

    pub fn apply(self, m: &Representation) -> Result<Representation> {
        match self {
            OrbitOp::Omega => syzygy(m),
            OrbitOp::OmegaInv => cosyzygy(m),
            OrbitOp::Nu => Ok(nakayama_shift(m, 1)),
            OrbitOp::Tau => ar_translate(m),
        }
    }
}

impl fmt::Display for OrbitOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitOp::Omega => "Ω",
            OrbitOp::OmegaInv => "Ω⁻¹",
            OrbitOp::Nu => "ν",
            OrbitOp::Tau => "τ",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OrbitNode {
    pub module: Representation,
    /// Canonical string word when recognized, otherwise the dimension vector.
    pub label: String,
    /// Set when an isomorphism test against an earlier node was undecided.
    pub undecided: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub op: OrbitOp,
}

#[derive(Clone, Debug)]
pub struct OrbitGraph {
    pub nodes: Vec<OrbitNode>,
    pub edges: Vec<OrbitEdge>,
}

fn label_of(m: &Representation) -> Result<String> {
    Ok(match recognize_string(m)? {
        Some(w) => w.canonical().to_string(),
        None => dim_vector_label(m),
    })
}

impl OrbitGraph {
    pub fn edges_from(&self, node: usize) -> impl Iterator<Item = &OrbitEdge> {
        self.edges.iter().filter(move |e| e.from == node)
    }

    pub fn has_self_loop(&self, node: usize, op: OrbitOp) -> bool {
        self.edges.iter().any(|e| e.from == node && e.to == node && e.op == op)
    }

    /// Graphviz text. Nodes are numbered in discovery order; undecided nodes are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph orbit {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let style = if n.undecided { ", style=dashed" } else { "" };
            let _ = writeln!(out, "  n{i} [label={}{style}];", dot_quote(&n.label));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label={}];", e.from, e.to, dot_quote(&e.op.to_string()));
        }
        out.push_str("}\n");
        out
    }

    /// Adjacency lists keyed by node index.
    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let out: Vec<Value> = self
                    .edges_from(i)
                    .map(|e| json!({"op": e.op.to_string(), "to": e.to}))
                    .collect();
                json!({
                    "id": i,
                    "label": n.label,
                    "undecided": n.undecided,
                    "dims": crate::json::module_to_json(&n.module)["dims"].clone(),
                    "out": out,
                })
            })
            .collect();
        json!({ "nodes": nodes })
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Iso-classes reached from `m` by at most `radius` applications of
/// `Ω`, `Ω⁻¹`, `ν`, `τ`.
pub fn orbit_graph(m: &Representation, radius: usize) -> Result<OrbitGraph> {
    orbit_graph_with(Exec::default(), m, radius)
}

pub fn orbit_graph_with(exec: Exec, m: &Representation, radius: usize) -> Result<OrbitGraph> {
    if m.is_zero() || is_projective(m)? {
        return Err(Error::Projective("orbit graphs need a non-projective module".into()));
    }
    match is_indecomposable(m)? {
        Decision::Yes => {}
        Decision::No => return Err(Error::Precondition("orbit graphs need an indecomposable module".into())),
        Decision::Undecided(why) => warn!("orbit_graph: indecomposability undecided ({why})"),
    }
    let start = m.trimmed();
    let mut nodes = vec![OrbitNode {
        label: label_of(&start)?,
        module: start,
        undecided: false,
    }];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let jobs: Vec<(usize, OrbitOp)> = frontier
            .iter()
            .flat_map(|&i| OrbitOp::ALL.into_iter().map(move |op| (i, op)))
            .collect();
        let images = map(exec, &jobs, |&(i, op)| op.apply(&nodes[i].module).map(|x| x.trimmed()));
        let mut next = Vec::new();
        for ((from, op), image) in jobs.into_iter().zip(images) {
            let image = image?;
            let known = nodes.len();
            let to = find_or_insert(&mut nodes, image)?;
            if to >= known {
                next.push(to);
            }
            edges.push(OrbitEdge { from, to, op });
        }
        edges.sort();
        edges.dedup();
        frontier = next;
    }
    Ok(OrbitGraph { nodes, edges })
}

/// Index of the node isomorphic to `m`, adding it if none is.
fn find_or_insert(nodes: &mut Vec<OrbitNode>, m: Representation) -> Result<usize> {
    let dims = m.dim_vector();
    let mut undecided = false;
    for (i, n) in nodes.iter().enumerate() {
        if n.module.dim_vector() != dims {
            continue;
        }
        match is_isomorphic(&n.module, &m)? {
            IsoOutcome::Isomorphic(_) => return Ok(i),
            IsoOutcome::NotIsomorphic => {}
            IsoOutcome::Undecided => undecided = true,
        }
    }
    nodes.push(OrbitNode {
        label: label_of(&m)?,
        module: m,
        undecided,
    });
    Ok(nodes.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Vertex;
    use crate::rep::hom_dim;
    use crate::scalar::Field;
    use crate::strings::{parse_string, simple, string_module};

    const Q: Field = Field::Rationals;

    #[test]
    fn arrow_module_has_tau_loop() {
        let m = string_module(&parse_string("a0").unwrap(), Q);
        let g = orbit_graph(&m, 1).unwrap();
        assert!(g.has_self_loop(0, OrbitOp::Tau));
        assert!(g.to_dot().contains("n0 -> n0 [label=\"τ\"]"));
    }

    #[test]
    fn radius_zero_is_one_node() {
        let g = orbit_graph(&simple(Vertex::one(0), Q), 0).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(g.to_dot(), "digraph orbit {\n  n0 [label=\"1@0\"];\n}\n");
    }

    #[test]
    fn simple_has_omega_edge_towards_other_simple() {
        let s1 = simple(Vertex::one(0), Q);
        let g = orbit_graph(&s1, 1).unwrap();
        let e = g.edges_from(0).find(|e| e.op == OrbitOp::Omega).unwrap();
        let omega = &g.nodes[e.to].module;
        assert_eq!(hom_dim(omega, &simple(Vertex::two(0), Q)).unwrap(), 2);
    }

    #[test]
    fn rejects_projectives() {
        let p = crate::frobenius::indecomposable_projective(Vertex::one(0), Q);
        assert!(matches!(orbit_graph(&p, 1), Err(Error::Projective(_))));
    }

    #[test]
    fn deterministic_across_executors() {
        let m = string_module(&parse_string("A0^-1 B0").unwrap(), Q);
        let a = orbit_graph_with(Exec::Sequential, &m, 2).unwrap();
        let b = orbit_graph_with(Exec::Parallel, &m, 2).unwrap();
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_json(), b.to_json());
    }
}
