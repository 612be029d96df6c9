//! Edge insertion into faces of an embedded subgraph, and the replay of the
//! case analysis: start from every toroidal embedding of a fixed
//! subdivision `H` of K33 and add the missing edges in every possible way.

use serde::Serialize;

use crate::catalog::{scaffold, Step};
use crate::classify::{canonical_form, ClassTable, Decoration, EmbeddingClass};
use crate::enumerate::{RotationSpace, DEFAULT_BUDGET};
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::map::{alpha, RotationMap};

/// The angle at `tail(dart)` between `dart` and `sigma(dart)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceCorner {
    pub dart: usize,
}

impl FaceCorner {
    pub fn vertex(&self, m: &RotationMap) -> usize {
        m.tail(self.dart)
    }

    /// Face the corner opens into: the walk enters through `alpha(dart)`
    /// and leaves through `sigma(dart)`.
    pub fn face(&self, m: &RotationMap, face_index: &[usize]) -> usize {
        face_index[m.sigma()[self.dart]]
    }
}

fn corners_at(m: &RotationMap, v: usize) -> Vec<FaceCorner> {
    m.graph().neighbors(v).iter().map(|&w| FaceCorner { dart: m.dart(v, w).unwrap() }).collect()
}

/// All pairs of corners at `u` and `v` that open into a common face.
pub fn insertion_sites(m: &RotationMap, u: usize, v: usize) -> Vec<(FaceCorner, FaceCorner)> {
    if u == v || m.graph().has_edge(u, v) {
        return Vec::new();
    }
    let faces = m.face_index();
    let cv = corners_at(m, v);
    let mut out = Vec::new();
    for a in corners_at(m, u) {
        for &b in &cv {
            if a.face(m, &faces) == b.face(m, &faces) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Add the edge between the corners' vertices, drawn through their common
/// face. The face splits in two; every other face is untouched.
pub fn insert_edge(m: &RotationMap, site: (FaceCorner, FaceCorner)) -> Result<RotationMap> {
    let (a, b) = site;
    if a.dart >= m.dart_count() || b.dart >= m.dart_count() {
        return domain("corner refers to a missing dart");
    }
    let faces = m.face_index();
    if a.face(m, &faces) != b.face(m, &faces) {
        return domain("corners lie on different faces");
    }
    let (u, v) = (a.vertex(m), b.vertex(m));
    if u == v {
        return domain("both corners sit at the same vertex");
    }
    let g = m.graph().with_edge(u, v)?;
    let mut rotations = m.rotations();
    for (x, y, corner) in [(u, v, a), (v, u, b)] {
        let after = m.head(corner.dart);
        let rot = &mut rotations[x];
        let pos = rot.iter().position(|&w| w == after).unwrap();
        rot.insert(pos + 1, y);
    }
    let out = RotationMap::from_rotations(&g, &rotations)?;
    debug_assert_eq!(out.face_count(), m.face_count() + 1);
    Ok(out)
}

/// Replace edge `uv` by a path through `k` new vertices, numbered from the
/// current vertex count upwards starting next to `u`.
pub fn subdivide_edge(m: &RotationMap, u: usize, v: usize, k: usize) -> Result<RotationMap> {
    let g = m.graph().subdivide(u, v, k)?;
    let n = m.graph().vertex_count();
    let mut rotations = m.rotations();
    if k > 0 {
        for w in rotations[u].iter_mut().filter(|w| **w == v) {
            *w = n;
        }
        for w in rotations[v].iter_mut().filter(|w| **w == u) {
            *w = n + k - 1;
        }
        for i in 0..k {
            let prev = if i == 0 { u } else { n + i - 1 };
            let next = if i + 1 == k { v } else { n + i + 1 };
            rotations.push(vec![prev, next]);
        }
    }
    RotationMap::from_rotations(&g, &rotations)
}

/// Every way of carrying out `steps` in turn, each new edge drawn inside a
/// single face.
pub fn extend_steps(m: &RotationMap, steps: &[Step]) -> Result<Vec<RotationMap>> {
    let mut out = Vec::new();
    extend_rec(m, steps, &mut out)?;
    Ok(out)
}

fn extend_rec(m: &RotationMap, steps: &[Step], out: &mut Vec<RotationMap>) -> Result<()> {
    let Some((step, rest)) = steps.split_first() else {
        out.push(m.clone());
        return Ok(());
    };
    let (u, v) = step.endpoints();
    for site in insertion_sites(m, u, v) {
        let mut next = insert_edge(m, site)?;
        if let Step::Path(_, _, k) = *step {
            next = subdivide_edge(&next, u, v, k)?;
        }
        extend_rec(&next, rest, out)?;
    }
    Ok(())
}

/// All completions of `m` by the edges in `missing`, inserted in order.
pub fn extend_all(m: &RotationMap, missing: &[(usize, usize)]) -> Result<Vec<RotationMap>> {
    let steps: Vec<Step> = missing.iter().map(|&(u, v)| Step::Edge(u, v)).collect();
    extend_steps(m, &steps)
}

/// One toroidal class of the scaffold `H`, i.e. one case of the analysis.
#[derive(Clone, Debug)]
pub struct ReplayCase {
    pub representative: RotationMap,
    pub face_signature: Vec<usize>,
    pub labelled_count: u64,
    /// Completions of the representative, before any deduplication.
    pub completions: Vec<RotationMap>,
    /// Whether the decorated K33 edge or path lies on a single face walk.
    pub decoration_on_one_face: bool,
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub name: String,
    pub scaffold: Graph,
    pub cases: Vec<ReplayCase>,
    /// Completions over every labelled toroidal map of `H`.
    pub raw_completions: u64,
    pub classes: Vec<EmbeddingClass>,
}

/// Whether the two sides of `path` belong to the same face of `m`. Along
/// degree-2 vertices the faces on either side cannot change, so the first
/// edge decides.
fn path_on_one_face(m: &RotationMap, path: &[usize]) -> bool {
    let [u, v, ..] = path else {
        return false;
    };
    let Some(d) = m.dart(*u, *v) else {
        return false;
    };
    let faces = m.face_index();
    faces[d] == faces[alpha(d)]
}

/// Run the case analysis for one of the five connected obstructions.
pub fn replay(name: &str) -> Result<Replay> {
    let sc = scaffold(name)?;
    let target = sc.target();
    let space = RotationSpace::full(&sc.h, DEFAULT_BUDGET)?;
    let mut h_table = ClassTable::new(true);
    let mut table = ClassTable::new(true);
    let mut raw = 0u64;
    for i in 0..space.len() {
        let (m, _) = space.get(i);
        if m.genus_sum() != 1 {
            continue;
        }
        h_table.insert(i, &m, &Decoration::None, 1)?;
        for c in extend_steps(&m, &sc.steps)? {
            debug_assert_eq!(c.graph().edges(), target.edges());
            table.insert(raw, &c, &Decoration::None, 1)?;
            raw += 1;
        }
    }
    let mut cases = Vec::new();
    for class in h_table.into_classes() {
        let rep = class.representative;
        let completions = extend_steps(&rep, &sc.steps)?;
        cases.push(ReplayCase {
            decoration_on_one_face: path_on_one_face(&rep, &sc.decorated_path),
            face_signature: rep.face_signature(),
            labelled_count: class.labelled_count,
            representative: rep,
            completions,
        });
    }
    Ok(Replay { name: name.to_string(), scaffold: sc.h, cases, raw_completions: raw, classes: table.into_classes() })
}

pub fn replay_classification(name: &str) -> Result<Vec<EmbeddingClass>> {
    Ok(replay(name)?.classes)
}

/// Classes reached from one case, as canonical forms.
pub fn case_classes(case: &ReplayCase) -> Result<Vec<String>> {
    let mut forms: Vec<String> = case
        .completions
        .iter()
        .map(|c| canonical_form(c, &Decoration::None, true).map(|f| f.to_hex()))
        .collect::<Result<_>>()?;
    forms.sort();
    forms.dedup();
    Ok(forms)
}

/// A face drawn as a polygon, corners listed in walk order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polygon {
    pub vertices: Vec<usize>,
    pub labels: Vec<String>,
}

impl Polygon {
    pub fn sides(&self) -> usize {
        self.vertices.len()
    }
}

/// One polygon per face; gluing equal labels and equal sides rebuilds the
/// surface.
pub fn polygon_decomposition(m: &RotationMap) -> Vec<Polygon> {
    let g = m.graph();
    m.face_orbits()
        .iter()
        .map(|f| {
            let vertices = f.vertices(m);
            let labels = vertices.iter().map(|&v| g.display_label(v)).collect();
            Polygon { vertices, labels }
        })
        .collect()
}
