//! Rotation systems as combinatorial maps.
//!
//! Darts are numbered from the sorted edge list: edge `k = (u, v)` with
//! `u < v` yields dart `2k` (from `u`) and dart `2k + 1` (from `v`), so the
//! edge involution is `d ^ 1`. `sigma` sends a dart to the next dart around
//! its tail vertex and faces are the orbits of `sigma ∘ alpha`.

use std::collections::BTreeMap;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::{check_permutation, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationMap {
    graph: Graph,
    sigma: Vec<usize>,
}

/// One face as the cyclic sequence of darts met along its boundary,
/// starting at the smallest dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<usize>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Tail vertices in walk order.
    pub fn vertices(&self, m: &RotationMap) -> Vec<usize> {
        self.darts.iter().map(|&d| m.tail(d)).collect()
    }
}

#[inline]
pub fn alpha(d: usize) -> usize {
    d ^ 1
}

impl RotationMap {
    /// Build a map from one cyclic neighbour order per vertex.
    pub fn from_rotations(graph: &Graph, rotations: &[Vec<usize>]) -> Result<RotationMap> {
        let n = graph.vertex_count();
        if rotations.len() != n {
            return domain(format!("expected {n} rotations, got {}", rotations.len()));
        }
        let mut sigma = vec![usize::MAX; 2 * graph.edge_count()];
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return domain(format!("rotation at vertex {v} is not a cyclic order of its neighbours"));
            }
            for i in 0..rot.len() {
                let d = dart_of(graph, v, rot[i]);
                sigma[d] = dart_of(graph, v, rot[(i + 1) % rot.len()]);
            }
        }
        Ok(RotationMap { graph: graph.clone(), sigma })
    }

    /// Map with every rotation in ascending neighbour order.
    pub fn ascending(graph: &Graph) -> RotationMap {
        let rotations: Vec<Vec<usize>> = (0..graph.vertex_count()).map(|v| graph.neighbors(v).to_vec()).collect();
        RotationMap::from_rotations(graph, &rotations).expect("neighbour lists are valid rotations")
    }

    pub(crate) fn from_sigma(graph: Graph, sigma: Vec<usize>) -> RotationMap {
        RotationMap { graph, sigma }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.sigma.len()];
        for (d, &s) in self.sigma.iter().enumerate() {
            inv[s] = d;
        }
        inv
    }

    /// Face permutation `sigma ∘ alpha`.
    #[inline]
    pub fn phi(&self, d: usize) -> usize {
        self.sigma[alpha(d)]
    }

    pub fn tail(&self, d: usize) -> usize {
        let (u, v) = self.graph.edges()[d / 2];
        if d & 1 == 0 {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(alpha(d))
    }

    /// Dart from `u` towards `v`.
    pub fn dart(&self, u: usize, v: usize) -> Option<usize> {
        self.graph.edge_index(u, v).map(|k| 2 * k + (u > v) as usize)
    }

    /// Cyclic neighbour orders, each starting at the smallest neighbour.
    pub fn rotations(&self) -> Vec<Vec<usize>> {
        (0..self.graph.vertex_count())
            .map(|v| {
                let Some(&first) = self.graph.neighbors(v).first() else {
                    return Vec::new();
                };
                let start = dart_of(&self.graph, v, first);
                let mut rot = vec![first];
                let mut d = self.sigma[start];
                while d != start {
                    rot.push(self.head(d));
                    d = self.sigma[d];
                }
                rot
            })
            .collect()
    }

    pub fn face_orbits(&self) -> Vec<FaceWalk> {
        let mut seen = vec![false; self.sigma.len()];
        let mut faces = Vec::new();
        for start in 0..self.sigma.len() {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.phi(d);
            }
            faces.push(FaceWalk { darts });
        }
        faces
    }

    /// For each dart, the index of its face in `face_orbits()`.
    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.sigma.len()];
        for (i, f) in self.face_orbits().iter().enumerate() {
            for &d in &f.darts {
                idx[d] = i;
            }
        }
        idx
    }

    pub fn face_count(&self) -> usize {
        self.face_orbits().len()
    }

    /// Sorted multiset of face lengths.
    pub fn face_signature(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.face_orbits().iter().map(FaceWalk::len).collect();
        s.sort_unstable();
        s
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    /// Genus of the orientable surface the map is cellularly embedded in.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.genus_sum())
    }

    /// Sum of the genera of the components; every component is taken to
    /// sit on its own closed surface.
    pub fn genus_sum(&self) -> usize {
        let g = &self.graph;
        let comps = g.components();
        let faces = self.face_orbits();
        let mut comp_of = vec![0; g.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut v_count = vec![0i64; comps.len()];
        let mut e_count = vec![0i64; comps.len()];
        let mut f_count = vec![0i64; comps.len()];
        for (i, c) in comps.iter().enumerate() {
            v_count[i] = c.len() as i64;
        }
        for &(u, _) in g.edges() {
            e_count[comp_of[u]] += 1;
        }
        for f in &faces {
            f_count[comp_of[self.tail(f.darts[0])]] += 1;
        }
        (0..comps.len())
            .map(|i| {
                // an isolated vertex bounds one face
                let f = f_count[i].max(1);
                let twice = 2 - v_count[i] + e_count[i] - f;
                debug_assert!(twice >= 0 && twice % 2 == 0);
                (twice / 2) as usize
            })
            .sum()
    }

    /// Reverse every rotation.
    pub fn mirror(&self) -> RotationMap {
        RotationMap { graph: self.graph.clone(), sigma: self.sigma_inverse() }
    }

    /// Restrict to a spanning subgraph `h` by deleting the darts of absent
    /// edges from the rotations.
    pub fn submap(&self, h: &Graph) -> Result<RotationMap> {
        if h.vertex_count() != self.graph.vertex_count() {
            return domain("subgraph must have the same vertex set");
        }
        if let Some(&(u, v)) = h.edges().iter().find(|&&(u, v)| !self.graph.has_edge(u, v)) {
            return domain(format!("({u}, {v}) is not an edge of the map's graph"));
        }
        let rotations: Vec<Vec<usize>> = self
            .rotations()
            .into_iter()
            .enumerate()
            .map(|(v, rot)| rot.into_iter().filter(|&w| h.has_edge(v, w)).collect())
            .collect();
        RotationMap::from_rotations(h, &rotations)
    }

    /// Rename vertex `v` to `perm[v]`, carrying the rotations along.
    pub fn relabel(&self, perm: &[usize]) -> Result<RotationMap> {
        check_permutation(perm, self.graph.vertex_count())?;
        let g = self.graph.relabel(perm)?;
        let old = self.rotations();
        let mut rotations = vec![Vec::new(); g.vertex_count()];
        for (v, rot) in old.into_iter().enumerate() {
            rotations[perm[v]] = rot.into_iter().map(|w| perm[w]).collect();
        }
        RotationMap::from_rotations(&g, &rotations)
    }

    /// Replace the underlying graph's vertex tags (structure must match).
    pub fn with_graph_labels(mut self, labelled: &Graph) -> RotationMap {
        debug_assert_eq!(labelled.edges(), self.graph.edges());
        self.graph = labelled.clone();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("maps always serialize")
    }

    pub fn from_json(text: &str) -> Result<RotationMap> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}

pub(crate) fn dart_of(g: &Graph, u: usize, v: usize) -> usize {
    let k = g.edge_index(u, v).expect("dart of a missing edge");
    2 * k + (u > v) as usize
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson { n: self.vertex_count(), edges: self.edges().iter().map(|&(u, v)| [u, v]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v))).map_err(de::Error::custom)
    }
}

/// Rotations keyed by vertex, emitted in numeric vertex order.
struct RotationTable<'a>(&'a [Vec<usize>]);

impl Serialize for RotationTable<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (v, rot) in self.0.iter().enumerate() {
            m.serialize_entry(&v.to_string(), rot)?;
        }
        m.end()
    }
}

impl Serialize for RotationMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            graph: &'a Graph,
            rotations: RotationTable<'a>,
        }
        let rotations = self.rotations();
        Out { graph: &self.graph, rotations: RotationTable(&rotations) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RotationMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<RotationMap, D::Error> {
        #[derive(Deserialize)]
        struct In {
            graph: Graph,
            rotations: BTreeMap<String, Vec<usize>>,
        }
        let raw = In::deserialize(d)?;
        let n = raw.graph.vertex_count();
        let mut rotations = vec![None; n];
        for (key, rot) in raw.rotations {
            let v: usize = key.parse().map_err(|_| de::Error::custom(format!("bad vertex key `{key}`")))?;
            if v >= n {
                return Err(de::Error::custom(format!("vertex {v} out of range")));
            }
            rotations[v] = Some(rot);
        }
        let rotations: Vec<Vec<usize>> = rotations
            .into_iter()
            .enumerate()
            .map(|(v, r)| match r {
                Some(r) => Ok(r),
                None if raw.graph.degree(v) == 0 => Ok(Vec::new()),
                None => Err(de::Error::custom(format!("missing rotation for vertex {v}"))),
            })
            .collect::<std::result::Result<_, D::Error>>()?;
        RotationMap::from_rotations(&raw.graph, &rotations).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K_{3,3} with every rotation ascending: a-side (0,1,2) sees (3,4,5),
    /// b-side sees (0,1,2).
    fn homogeneous_k33() -> RotationMap {
        RotationMap::ascending(&Graph::complete_bipartite(3, 3))
    }

    /// Independent face counter working on vertex pairs instead of darts.
    fn naive_face_lengths(g: &Graph, rotations: &[Vec<usize>]) -> Vec<usize> {
        let next = |v: usize, w: usize| {
            let r = &rotations[v];
            let i = r.iter().position(|&x| x == w).unwrap();
            r[(i + 1) % r.len()]
        };
        let mut used = std::collections::HashSet::new();
        let mut lens = Vec::new();
        for &(u, v) in g.edges() {
            for start in [(u, v), (v, u)] {
                if used.contains(&start) {
                    continue;
                }
                let mut len = 0;
                let mut cur = start;
                while used.insert(cur) {
                    len += 1;
                    let (a, b) = cur;
                    cur = (b, next(b, a));
                }
                lens.push(len);
            }
        }
        lens.sort_unstable();
        lens
    }

    #[test]
    fn rejects_non_neighbour_rotation() {
        let g = Graph::complete_bipartite(3, 3);
        let mut rots: Vec<Vec<usize>> = (0..6).map(|v| g.neighbors(v).to_vec()).collect();
        rots[0] = vec![3, 4, 1];
        assert!(RotationMap::from_rotations(&g, &rots).is_err());
        rots[0] = vec![3, 4];
        assert!(RotationMap::from_rotations(&g, &rots).is_err());
    }

    #[test]
    fn homogeneous_k33_has_three_hexagons() {
        let m = homogeneous_k33();
        assert_eq!(m.face_signature(), vec![6, 6, 6]);
        assert_eq!(m.genus().unwrap(), 1);
        let g = m.graph().clone();
        assert_eq!(naive_face_lengths(&g, &m.rotations()), vec![6, 6, 6]);
    }

    #[test]
    fn single_edge_and_cycle() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let m = RotationMap::ascending(&k2);
        assert_eq!(m.face_signature(), vec![2]);
        assert_eq!(m.genus().unwrap(), 0);
        let c4 = RotationMap::ascending(&Graph::cycle(4));
        assert_eq!(c4.face_signature(), vec![4, 4]);
        assert_eq!(c4.genus().unwrap(), 0);
        assert_eq!(RotationMap::ascending(&Graph::empty(1)).genus().unwrap(), 0);
    }

    #[test]
    fn k5_ascending_genus_matches_naive_trace() {
        let g = Graph::complete(5);
        let m = RotationMap::ascending(&g);
        let faces = naive_face_lengths(&g, &m.rotations());
        let expected = (2 - 5 + 10 - faces.len() as i64) / 2;
        assert_eq!(m.genus().unwrap() as i64, expected);
        assert_eq!(m.face_signature(), faces);
    }

    #[test]
    fn disconnected_genus_is_an_error() {
        let g = Graph::complete_bipartite(3, 3).disjoint_union(&Graph::complete_bipartite(3, 3));
        let m = RotationMap::ascending(&g);
        assert_eq!(m.genus(), Err(Error::Disconnected));
        assert_eq!(m.genus_sum(), 2);
    }

    #[test]
    fn mirror_is_an_involution_preserving_faces() {
        let m = homogeneous_k33();
        let mm = m.mirror();
        assert_eq!(mm.mirror(), m);
        assert_eq!(mm.face_signature(), m.face_signature());
        assert_eq!(mm.genus().unwrap(), m.genus().unwrap());
    }

    #[test]
    fn deleting_an_edge_merges_two_hexagons() {
        let m = homogeneous_k33();
        let h = m.graph().without_edge(0, 3).unwrap();
        let sub = m.submap(&h).unwrap();
        let expected = naive_face_lengths(&h, &sub.rotations());
        assert_eq!(expected, vec![6, 10]);
        assert_eq!(sub.face_signature(), expected);
        assert_eq!(m.submap(m.graph()).unwrap(), m);
        assert!(m.submap(&Graph::complete(6)).is_err());
    }

    #[test]
    fn json_round_trip_and_field_order() {
        let g = Graph::complete(5).subdivide(0, 1, 7).unwrap();
        let m = RotationMap::ascending(&g).mirror();
        let text = m.to_json();
        assert!(text.starts_with("{\"graph\":{\"n\":12,\"edges\":[[0,2]"));
        let keys: Vec<usize> = {
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            let idx = text.find("\"rotations\"").unwrap();
            let tail = &text[idx..];
            let mut keys = Vec::new();
            for i in 0..v["rotations"].as_object().unwrap().len() {
                keys.push((tail.find(&format!("\"{i}\":")).unwrap(), i));
            }
            keys.sort_unstable();
            keys.into_iter().map(|(_, i)| i).collect()
        };
        assert_eq!(keys, (0..12).collect::<Vec<_>>());
        assert_eq!(RotationMap::from_json(&text).unwrap(), m);
        assert!(RotationMap::from_json("{\"graph\":{\"n\":2,\"edges\":[[0,1]]},\"rotations\":{}}").is_err());
    }
}
