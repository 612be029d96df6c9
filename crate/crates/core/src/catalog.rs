//! Built-in graphs: the two Kuratowski graphs, the six cubic obstructions
//! for the projective plane that are studied on the torus, and for each
//! connected obstruction the subdivision of K33 the case analysis starts
//! from.
//!
//! Vertices 0..6 are always the K33 branch vertices with parts {0, 1, 2}
//! and {3, 4, 5}.

use std::fmt;

use serde::Serialize;

use crate::classify::Decoration;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const NAMES: [&str; 8] = ["K33", "K5", "E42", "F11", "F12", "F13", "F14", "G1"];

/// The connected obstructions that are rebuilt from a subdivided K33.
pub const EXTENDABLE: [&str; 5] = ["F11", "F12", "F13", "F14", "G1"];

const F11_EDGES: [(usize, usize); 18] = [
    (0, 4),
    (0, 5),
    (0, 6),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 11),
    (6, 7),
    (6, 9),
    (7, 8),
    (7, 10),
    (8, 9),
    (8, 11),
    (9, 10),
    (10, 11),
];

const F12_EDGES: [(usize, usize); 18] = [
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 5),
    (1, 6),
    (1, 8),
    (2, 4),
    (2, 7),
    (2, 10),
    (3, 6),
    (3, 7),
    (4, 9),
    (5, 11),
    (6, 11),
    (7, 9),
    (8, 9),
    (8, 10),
    (10, 11),
];

const F13_EDGES: [(usize, usize); 18] = [
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 5),
    (1, 6),
    (1, 8),
    (2, 4),
    (2, 7),
    (2, 10),
    (3, 6),
    (3, 7),
    (4, 9),
    (5, 11),
    (6, 10),
    (7, 8),
    (8, 9),
    (9, 11),
    (10, 11),
];

const F14_EDGES: [(usize, usize); 18] = [
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 3),
    (1, 6),
    (1, 9),
    (2, 3),
    (2, 7),
    (2, 8),
    (4, 6),
    (4, 7),
    (5, 8),
    (5, 9),
    (6, 10),
    (7, 11),
    (8, 10),
    (9, 11),
    (10, 11),
];

const G1_EDGES: [(usize, usize); 15] = [
    (0, 3),
    (0, 6),
    (0, 8),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (4, 7),
    (5, 9),
    (6, 7),
    (6, 9),
    (7, 8),
    (8, 9),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedInvariants {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub girth: usize,
    pub is_cubic: bool,
    pub components: usize,
    pub contains_k33: bool,
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: &'static str,
    pub graph: Graph,
    pub expected: ExpectedInvariants,
}

/// One invariant that did not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantMismatch {
    pub graph: String,
    pub invariant: &'static str,
    pub expected: String,
    pub observed: String,
}

impl fmt::Display for InvariantMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} expected {}, got {}", self.graph, self.invariant, self.expected, self.observed)
    }
}

impl NamedGraph {
    /// Every recorded invariant that the stored graph violates.
    pub fn check(&self) -> Result<Vec<InvariantMismatch>> {
        let g = &self.graph;
        let e = &self.expected;
        let girth = g.girth().ok().map_or("none".to_string(), |x| x.to_string());
        let observed = [
            ("vertex_count", e.vertex_count.to_string(), g.vertex_count().to_string()),
            ("edge_count", e.edge_count.to_string(), g.edge_count().to_string()),
            ("girth", e.girth.to_string(), girth),
            ("is_cubic", e.is_cubic.to_string(), g.is_cubic().to_string()),
            ("components", e.components.to_string(), g.components().len().to_string()),
            ("contains_k33", e.contains_k33.to_string(), g.contains_k33_subdivision()?.is_some().to_string()),
        ];
        Ok(observed
            .into_iter()
            .filter(|(_, x, y)| x != y)
            .map(|(invariant, expected, observed)| InvariantMismatch {
                graph: self.name.to_string(),
                invariant,
                expected,
                observed,
            })
            .collect())
    }
}

fn from_literal(edges: &[(usize, usize)], n: usize) -> Graph {
    Graph::new(n, edges.iter().copied()).expect("catalog literals are simple graphs")
}

fn canonical_name(name: &str) -> Result<&'static str> {
    NAMES.iter().copied().find(|n| n.eq_ignore_ascii_case(name)).ok_or_else(|| Error::Catalog(name.to_string()))
}

fn labels_for(name: &str) -> &'static [(usize, &'static str)] {
    match name {
        "F11" => &[
            (0, "x1"),
            (1, "x2"),
            (2, "x3"),
            (3, "y1"),
            (4, "y2"),
            (5, "y3"),
            (6, "1"),
            (7, "2"),
            (8, "3"),
            (9, "4"),
            (10, "5"),
            (11, "6"),
        ],
        "F12" => &[(6, "b"), (7, "c"), (8, "a"), (9, "c'"), (10, "a'"), (11, "b'")],
        "F13" => &[(6, "b"), (7, "c"), (8, "c'"), (9, "a"), (10, "b'"), (11, "a'")],
        "F14" => &[(6, "a"), (7, "b"), (8, "a'"), (9, "b'"), (10, "c"), (11, "c'")],
        "G1" => &[(6, "a"), (7, "b"), (8, "b'"), (9, "a'")],
        _ => &[],
    }
}

fn label(mut g: Graph, name: &str) -> Graph {
    for &(v, l) in labels_for(name) {
        if v < g.vertex_count() {
            g.set_label(v, l);
        }
    }
    g
}

/// A catalog graph by name (case-insensitive).
pub fn builtin(name: &str) -> Result<Graph> {
    let name = canonical_name(name)?;
    let g = match name {
        "K33" => Graph::complete_bipartite(3, 3),
        "K5" => Graph::complete(5),
        "E42" => Graph::complete_bipartite(3, 3).disjoint_union(&Graph::complete_bipartite(3, 3)),
        "F11" => from_literal(&F11_EDGES, 12),
        "F12" => from_literal(&F12_EDGES, 12),
        "F13" => from_literal(&F13_EDGES, 12),
        "F14" => from_literal(&F14_EDGES, 12),
        "G1" => from_literal(&G1_EDGES, 10),
        _ => unreachable!(),
    };
    Ok(label(g, name))
}

pub fn expected_invariants(name: &str) -> Result<ExpectedInvariants> {
    let name = canonical_name(name)?;
    let (v, e, girth, cubic, components, k33) = match name {
        "K33" => (6, 9, 4, true, 1, true),
        "K5" => (5, 10, 3, false, 1, false),
        "E42" => (12, 18, 4, true, 2, true),
        "F11" | "F12" => (12, 18, 4, true, 1, true),
        "F13" | "F14" => (12, 18, 5, true, 1, true),
        "G1" => (10, 15, 4, true, 1, true),
        _ => unreachable!(),
    };
    Ok(ExpectedInvariants { vertex_count: v, edge_count: e, girth, is_cubic: cubic, components, contains_k33: k33 })
}

pub fn named(name: &str) -> Result<NamedGraph> {
    let canonical = canonical_name(name)?;
    Ok(NamedGraph { name: canonical, graph: builtin(canonical)?, expected: expected_invariants(canonical)? })
}

pub fn catalog() -> Vec<NamedGraph> {
    NAMES.iter().map(|n| named(n).expect("catalog names resolve")).collect()
}

/// K33 with the edge 0-3 subdivided six times (vertices 6..=11, tagged
/// 1..6 along the path) and the chords 1-4, 2-5, 3-6 added.
pub fn construct_f11() -> Graph {
    let h = Graph::complete_bipartite(3, 3).subdivide(0, 3, 6).expect("K33 has edge 0-3");
    let g = [(6, 9), (7, 10), (8, 11)].iter().fold(h, |g, &(u, v)| g.with_edge(u, v).expect("chords are new"));
    label(g, "F11")
}

/// Take the 4-cycle 1-4-2-5 of K33, subdivide each of its edges once, join
/// the new vertices on opposite edges through one further vertex each and
/// connect those two.
pub fn construct_f14() -> Graph {
    let k = Graph::complete_bipartite(3, 3);
    let build = || -> Result<Graph> {
        let g = k.subdivide(1, 4, 1)?.subdivide(2, 4, 1)?.subdivide(2, 5, 1)?.subdivide(1, 5, 1)?;
        g.with_edge(6, 8)?.subdivide(6, 8, 1)?.with_edge(7, 9)?.subdivide(7, 9, 1)?.with_edge(10, 11)
    };
    label(build().expect("construction only touches existing edges"), "F14")
}

/// One stage of rebuilding a graph from its scaffold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    /// Add the edge `uv`.
    Edge(usize, usize),
    /// Add the edge `uv` and subdivide it `k` times; the new vertices are
    /// appended in order from `u`.
    Path(usize, usize, usize),
}

impl Step {
    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            Step::Edge(u, v) | Step::Path(u, v, _) => (u, v),
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            Step::Edge(u, v) => g.with_edge(u, v),
            Step::Path(u, v, k) => g.with_edge(u, v)?.subdivide(u, v, k),
        }
    }
}

/// The subdivision `H` of K33 fixed inside a catalog graph, together with
/// the steps that complete it.
#[derive(Clone, Debug)]
pub struct Scaffold {
    pub name: &'static str,
    pub h: Graph,
    pub steps: Vec<Step>,
    /// Decoration of the underlying K33 that the subdivision pattern of
    /// `H` encodes (on branch vertices 0..6).
    pub model_decoration: Decoration,
    /// The decorated K33 edge as a path in `H`, empty for a cycle.
    pub decorated_path: Vec<usize>,
}

impl Scaffold {
    pub fn target(&self) -> Graph {
        let g = self.steps.iter().fold(self.h.clone(), |g, s| s.apply(&g).expect("scaffold steps are valid"));
        label(g, self.name)
    }
}

pub fn scaffold(name: &str) -> Result<Scaffold> {
    let name = canonical_name(name)?;
    let k = Graph::complete_bipartite(3, 3);
    let twice_dashed =
        || -> Result<Graph> { k.subdivide(1, 3, 1)?.subdivide(2, 3, 1)?.subdivide(1, 4, 2)?.subdivide(2, 5, 2) };
    let (h, steps, decoration, path) = match name {
        "F11" => (
            k.subdivide(0, 3, 6)?,
            vec![Step::Edge(6, 9), Step::Edge(7, 10), Step::Edge(8, 11)],
            Decoration::Edge(0, 3),
            vec![0, 6, 7, 8, 9, 10, 11, 3],
        ),
        "F12" => (
            twice_dashed()?,
            vec![Step::Edge(6, 11), Step::Edge(7, 9), Step::Edge(8, 10)],
            Decoration::DirectedEdge(0, 3),
            vec![0, 3],
        ),
        "F13" => (
            twice_dashed()?,
            vec![Step::Edge(6, 10), Step::Edge(7, 8), Step::Edge(9, 11)],
            Decoration::DirectedEdge(0, 3),
            vec![0, 3],
        ),
        "F14" => (
            k.subdivide(1, 4, 1)?.subdivide(2, 4, 1)?.subdivide(2, 5, 1)?.subdivide(1, 5, 1)?,
            vec![Step::Path(6, 8, 1), Step::Path(7, 9, 1), Step::Edge(10, 11)],
            Decoration::Cycle(vec![1, 4, 2, 5]),
            vec![],
        ),
        "G1" => (
            k.subdivide(0, 4, 2)?.subdivide(0, 5, 2)?,
            vec![Step::Edge(6, 9), Step::Edge(7, 8)],
            Decoration::DirectedEdge(0, 3),
            vec![0, 3],
        ),
        other => return Err(Error::Unsupported(format!("{other} is not rebuilt from a subdivided K33"))),
    };
    Ok(Scaffold { name, h: label(h, name), steps, model_decoration: decoration, decorated_path: path })
}

/// The edge whose removal makes F12 and F13 homeomorphic.
pub fn aa_edge(name: &str) -> Option<(usize, usize)> {
    match name {
        "F12" => Some((8, 10)),
        "F13" => Some((9, 11)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in NAMES {
            assert_eq!(named(n).unwrap().name, n);
        }
        assert_eq!(named("f12").unwrap().name, "F12");
        assert!(matches!(builtin("F15"), Err(Error::Catalog(_))));
    }

    #[test]
    fn constructions_match_literals() {
        assert_eq!(construct_f11().edges(), builtin("F11").unwrap().edges());
        assert_eq!(construct_f14().edges(), builtin("F14").unwrap().edges());
        for n in EXTENDABLE {
            assert_eq!(scaffold(n).unwrap().target().edges(), builtin(n).unwrap().edges(), "{n}");
        }
    }

    #[test]
    fn scaffolds_suppress_to_k33() {
        let k = Graph::complete_bipartite(3, 3);
        for n in EXTENDABLE {
            let sc = scaffold(n).unwrap();
            assert!(sc.h.suppress_degree2().unwrap().is_isomorphic(&k).unwrap(), "{n}");
            assert_eq!(
                sc.h.vertex_count()
                    + sc.steps
                        .iter()
                        .map(|s| match s {
                            Step::Path(_, _, k) => *k,
                            _ => 0,
                        })
                        .sum::<usize>(),
                builtin(n).unwrap().vertex_count()
            );
        }
    }

    #[test]
    fn labels_are_attached() {
        let f11 = builtin("F11").unwrap();
        assert_eq!(f11.vertex_by_label("4"), Some(9));
        let f12 = builtin("F12").unwrap();
        let (a, b) = aa_edge("F12").unwrap();
        assert_eq!((f12.label(a), f12.label(b)), (Some("a"), Some("a'")));
        let f13 = builtin("F13").unwrap();
        let (a, b) = aa_edge("F13").unwrap();
        assert_eq!((f13.label(a), f13.label(b)), (Some("a"), Some("a'")));
    }
}
