//! Equivalence of (decorated) embeddings.
//!
//! Two maps are equivalent when some dart bijection carries `alpha` to
//! `alpha` and `sigma` to `sigma` (or to `sigma⁻¹` for an
//! orientation-reversing equivalence) and maps marked darts onto marked
//! darts. The canonical form is the lexicographically smallest
//! breadth-first relabeling trace over all root darts and, when reflections
//! are allowed, over both orientations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::map::{alpha, RotationMap};

/// A highlighted substructure that equivalences must preserve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "vertices")]
pub enum Decoration {
    None,
    /// Oriented edge `(tail, head)`.
    DirectedEdge(usize, usize),
    Edge(usize, usize),
    /// Cycle through the listed vertices, preserved setwise.
    Cycle(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecorationKind {
    None,
    Edge,
    DirectedEdge,
    Cycle4,
}

impl FromStr for DecorationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(DecorationKind::None),
            "edge" => Ok(DecorationKind::Edge),
            "directed-edge" => Ok(DecorationKind::DirectedEdge),
            "cycle4" => Ok(DecorationKind::Cycle4),
            other => domain(format!("unknown decoration kind `{other}`")),
        }
    }
}

impl fmt::Display for DecorationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecorationKind::None => "none",
            DecorationKind::Edge => "edge",
            DecorationKind::DirectedEdge => "directed-edge",
            DecorationKind::Cycle4 => "cycle4",
        })
    }
}

impl Decoration {
    pub fn kind(&self) -> DecorationKind {
        match self {
            Decoration::None => DecorationKind::None,
            Decoration::DirectedEdge(..) => DecorationKind::DirectedEdge,
            Decoration::Edge(..) => DecorationKind::Edge,
            Decoration::Cycle(_) => DecorationKind::Cycle4,
        }
    }

    /// One flag per dart of `m`: is the dart part of the decoration?
    pub fn marked_darts(&self, m: &RotationMap) -> Result<Vec<bool>> {
        let mut marks = vec![false; m.dart_count()];
        let dart = |u: usize, v: usize| {
            m.dart(u, v).ok_or_else(|| Error::Domain(format!("decoration uses missing edge ({u}, {v})")))
        };
        match self {
            Decoration::None => {}
            Decoration::DirectedEdge(u, v) => marks[dart(*u, *v)?] = true,
            Decoration::Edge(u, v) => {
                let d = dart(*u, *v)?;
                marks[d] = true;
                marks[alpha(d)] = true;
            }
            Decoration::Cycle(vs) => {
                if vs.len() < 3 {
                    return domain("a cycle needs at least three vertices");
                }
                let mut sorted = vs.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return domain("cycle vertices must be distinct");
                }
                for i in 0..vs.len() {
                    let d = dart(vs[i], vs[(i + 1) % vs.len()])?;
                    marks[d] = true;
                    marks[alpha(d)] = true;
                }
            }
        }
        Ok(marks)
    }

    pub fn relabel(&self, perm: &[usize]) -> Decoration {
        match self {
            Decoration::None => Decoration::None,
            Decoration::DirectedEdge(u, v) => Decoration::DirectedEdge(perm[*u], perm[*v]),
            Decoration::Edge(u, v) => Decoration::Edge(perm[*u], perm[*v]),
            Decoration::Cycle(vs) => Decoration::Cycle(vs.iter().map(|&v| perm[v]).collect()),
        }
    }

    /// Every decoration of the given kind on the graph of `m`.
    pub fn all_of_kind(kind: DecorationKind, m: &RotationMap) -> Vec<Decoration> {
        let g = m.graph();
        match kind {
            DecorationKind::None => vec![Decoration::None],
            DecorationKind::Edge => g.edges().iter().map(|&(u, v)| Decoration::Edge(u, v)).collect(),
            DecorationKind::DirectedEdge => g
                .edges()
                .iter()
                .flat_map(|&(u, v)| [Decoration::DirectedEdge(u, v), Decoration::DirectedEdge(v, u)])
                .collect(),
            DecorationKind::Cycle4 => g.four_cycles().into_iter().map(|c| Decoration::Cycle(c.to_vec())).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Breadth-first relabeling trace from `root`: for each dart in label
/// order, the labels of its `alpha` and `sigma` images and its mark.
/// Returns `None` as soon as the trace is known to exceed `best`.
fn trace(sigma: &[usize], marks: &[bool], root: usize, best: Option<&[u8]>) -> Option<Vec<u8>> {
    let n = sigma.len();
    let mut label = vec![u16::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut out = Vec::with_capacity(2 + 5 * n);
    out.extend_from_slice(&(n as u16).to_be_bytes());
    let mut state = if best.is_some() { Ordering::Equal } else { Ordering::Less };
    label[root] = 0;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let start = out.len();
        let d = order[i];
        for next in [alpha(d), sigma[d]] {
            if label[next] == u16::MAX {
                label[next] = order.len() as u16;
                order.push(next);
            }
            out.extend_from_slice(&label[next].to_be_bytes());
        }
        out.push(marks[d] as u8);
        if state == Ordering::Equal {
            let best = best.unwrap();
            match out[start..].cmp(&best[start..out.len()]) {
                Ordering::Greater => return None,
                Ordering::Less => state = Ordering::Less,
                Ordering::Equal => {}
            }
        }
        i += 1;
    }
    Some(out)
}

pub fn canonical_form(m: &RotationMap, decoration: &Decoration, allow_reflection: bool) -> Result<CanonicalForm> {
    let marks = decoration.marked_darts(m)?;
    canonical_form_marked(m, &marks, allow_reflection)
}

pub(crate) fn canonical_form_marked(m: &RotationMap, marks: &[bool], allow_reflection: bool) -> Result<CanonicalForm> {
    if !m.is_connected() {
        return Err(Error::Disconnected);
    }
    if m.dart_count() > u16::MAX as usize {
        return Err(Error::Budget {
            what: "canonical form darts",
            needed: m.dart_count() as u128,
            limit: u16::MAX as u128,
        });
    }
    if m.dart_count() == 0 {
        return Ok(CanonicalForm(vec![0, 0]));
    }
    let forward = m.sigma().to_vec();
    let mut sigmas = vec![forward];
    if allow_reflection {
        sigmas.push(m.sigma_inverse());
    }
    let mut best: Option<Vec<u8>> = None;
    for sigma in &sigmas {
        for root in 0..m.dart_count() {
            if let Some(t) = trace(sigma, marks, root, best.as_deref()) {
                best = Some(t);
            }
        }
    }
    Ok(CanonicalForm(best.expect("at least one dart")))
}

pub fn are_equivalent(
    m1: &RotationMap,
    d1: &Decoration,
    m2: &RotationMap,
    d2: &Decoration,
    allow_reflection: bool,
) -> Result<bool> {
    Ok(canonical_form(m1, d1, allow_reflection)? == canonical_form(m2, d2, allow_reflection)?)
}

/// A dart bijection between two maps; `reflecting` isomorphisms carry
/// `sigma` to the inverse rotation of the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapIsomorphism {
    pub darts: Vec<usize>,
    pub reflecting: bool,
}

impl MapIsomorphism {
    /// Induced vertex map (source vertex → target vertex).
    pub fn vertex_map(&self, source: &RotationMap, target: &RotationMap) -> Vec<usize> {
        let mut vm: Vec<usize> = (0..source.graph().vertex_count()).collect();
        for (d, &e) in self.darts.iter().enumerate() {
            vm[source.tail(d)] = target.tail(e);
        }
        vm
    }

    /// Does the bijection conjugate the structure of `source` onto `target`?
    pub fn verify(&self, source: &RotationMap, target: &RotationMap) -> bool {
        let s2 = if self.reflecting { target.sigma_inverse() } else { target.sigma().to_vec() };
        self.darts.len() == source.dart_count()
            && (0..source.dart_count()).all(|d| {
                self.darts[alpha(d)] == alpha(self.darts[d]) && self.darts[source.sigma()[d]] == s2[self.darts[d]]
            })
    }

    pub fn compose(&self, then: &MapIsomorphism) -> MapIsomorphism {
        MapIsomorphism {
            darts: self.darts.iter().map(|&d| then.darts[d]).collect(),
            reflecting: self.reflecting != then.reflecting,
        }
    }

    pub fn inverse(&self) -> MapIsomorphism {
        let mut inv = vec![0; self.darts.len()];
        for (d, &e) in self.darts.iter().enumerate() {
            inv[e] = d;
        }
        MapIsomorphism { darts: inv, reflecting: self.reflecting }
    }
}

/// Direct search for isomorphisms: the image of dart 0 determines the whole
/// bijection on a connected map, so try every target dart.
fn search_isomorphisms(
    m1: &RotationMap,
    marks1: &[bool],
    m2: &RotationMap,
    marks2: &[bool],
    allow_reflection: bool,
    all: bool,
) -> Result<Vec<MapIsomorphism>> {
    if !m1.is_connected() || !m2.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = m1.dart_count();
    if n != m2.dart_count() || m1.graph().vertex_count() != m2.graph().vertex_count() {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![MapIsomorphism { darts: Vec::new(), reflecting: false }]);
    }
    let mut out = Vec::new();
    let mut options = vec![(false, m2.sigma().to_vec())];
    if allow_reflection {
        options.push((true, m2.sigma_inverse()));
    }
    for (reflecting, s2) in &options {
        for target in 0..n {
            let mut f = vec![usize::MAX; n];
            let mut used = vec![false; n];
            let mut stack = vec![(0usize, target)];
            let mut ok = true;
            while let Some((d, e)) = stack.pop() {
                if f[d] != usize::MAX {
                    if f[d] != e {
                        ok = false;
                        break;
                    }
                    continue;
                }
                if used[e] || marks1[d] != marks2[e] {
                    ok = false;
                    break;
                }
                f[d] = e;
                used[e] = true;
                stack.push((alpha(d), alpha(e)));
                stack.push((m1.sigma()[d], s2[e]));
            }
            // when sigma is an involution a bijection is found in both passes
            if ok && !(*reflecting && out.iter().any(|o: &MapIsomorphism| o.darts == f)) {
                out.push(MapIsomorphism { darts: f, reflecting: *reflecting });
                if !all {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

pub fn find_isomorphism(
    m1: &RotationMap,
    d1: &Decoration,
    m2: &RotationMap,
    d2: &Decoration,
    allow_reflection: bool,
) -> Result<Option<MapIsomorphism>> {
    let (k1, k2) = (d1.marked_darts(m1)?, d2.marked_darts(m2)?);
    Ok(search_isomorphisms(m1, &k1, m2, &k2, allow_reflection, false)?.pop())
}

/// Every isomorphism from `m1` onto `m2`.
pub fn isomorphisms(m1: &RotationMap, m2: &RotationMap, allow_reflection: bool) -> Result<Vec<MapIsomorphism>> {
    let (k1, k2) = (vec![false; m1.dart_count()], vec![false; m2.dart_count()]);
    search_isomorphisms(m1, &k1, m2, &k2, allow_reflection, true)
}

/// All self-isomorphisms of `m`, identity first.
pub fn symmetries(m: &RotationMap, allow_reflection: bool) -> Result<Vec<MapIsomorphism>> {
    let marks = vec![false; m.dart_count()];
    search_isomorphisms(m, &marks, m, &marks, allow_reflection, true)
}

/// Self-isomorphisms preserving a decoration.
pub fn decorated_symmetries(m: &RotationMap, d: &Decoration, allow_reflection: bool) -> Result<Vec<MapIsomorphism>> {
    let marks = d.marked_darts(m)?;
    search_isomorphisms(m, &marks, m, &marks, allow_reflection, true)
}

/// Partition `decorations` (indices into the slice) into orbits of the
/// symmetry group of `m`. Orbits are sorted by their smallest index.
pub fn decoration_orbits(
    m: &RotationMap,
    decorations: &[Decoration],
    allow_reflection: bool,
) -> Result<Vec<Vec<usize>>> {
    let keys: Vec<Vec<usize>> = decorations
        .iter()
        .map(|d| {
            let marks = d.marked_darts(m)?;
            Ok(marks.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
        })
        .collect::<Result<_>>()?;
    let index: HashMap<&Vec<usize>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let syms = symmetries(m, allow_reflection)?;
    let mut orbit_of = vec![usize::MAX; decorations.len()];
    let mut orbits = Vec::new();
    for i in 0..decorations.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        for s in &syms {
            let mut image: Vec<usize> = keys[i].iter().map(|&d| s.darts[d]).collect();
            image.sort_unstable();
            if let Some(&j) = index.get(&image) {
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Label-free statistics that equivalent maps share.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedInvariants {
    pub face_signature: Vec<usize>,
    /// One `(shorter, longer)` face-length pair per edge.
    pub face_links: Vec<(usize, usize)>,
    /// Per face: its length and the sorted lengths of the faces across
    /// each of its sides.
    pub face_profiles: Vec<(usize, Vec<usize>)>,
}

pub fn refined_invariants(m: &RotationMap) -> RefinedInvariants {
    let faces = m.face_orbits();
    let face_of = m.face_index();
    let len = |d: usize| faces[face_of[d]].len();
    let mut face_links: Vec<(usize, usize)> = (0..m.dart_count())
        .step_by(2)
        .map(|d| {
            let (a, b) = (len(d), len(alpha(d)));
            (a.min(b), a.max(b))
        })
        .collect();
    face_links.sort_unstable();
    let mut face_profiles: Vec<(usize, Vec<usize>)> = faces
        .iter()
        .map(|f| {
            let mut across: Vec<usize> = f.darts.iter().map(|&d| len(alpha(d))).collect();
            across.sort_unstable();
            (f.len(), across)
        })
        .collect();
    face_profiles.sort();
    RefinedInvariants { face_signature: m.face_signature(), face_links, face_profiles }
}

/// One equivalence class found by a classification run.
#[derive(Clone, Debug)]
pub struct EmbeddingClass {
    pub representative: RotationMap,
    pub decoration: Decoration,
    pub canonical: CanonicalForm,
    pub face_signature: Vec<usize>,
    pub labelled_count: u64,
}

#[derive(Clone, Debug)]
struct Entry {
    first: u64,
    representative: RotationMap,
    decoration: Decoration,
    count: u64,
}

/// Canonical-form dictionary for streaming classification. Merging is
/// associative and commutative; the representative of a class is the
/// member with the smallest ordinal.
#[derive(Clone, Debug, Default)]
pub struct ClassTable {
    allow_reflection: bool,
    entries: HashMap<CanonicalForm, Entry>,
    total: u64,
}

impl ClassTable {
    pub fn new(allow_reflection: bool) -> Self {
        ClassTable { allow_reflection, entries: HashMap::new(), total: 0 }
    }

    /// Record `weight` labelled embeddings equivalent to `(map, decoration)`.
    pub fn insert(&mut self, ordinal: u64, map: &RotationMap, decoration: &Decoration, weight: u64) -> Result<()> {
        let form = canonical_form(map, decoration, self.allow_reflection)?;
        self.total += weight;
        match self.entries.get_mut(&form) {
            Some(e) => {
                e.count += weight;
                if ordinal < e.first {
                    e.first = ordinal;
                    e.representative = map.clone();
                    e.decoration = decoration.clone();
                }
            }
            None => {
                self.entries.insert(
                    form,
                    Entry {
                        first: ordinal,
                        representative: map.clone(),
                        decoration: decoration.clone(),
                        count: weight,
                    },
                );
            }
        }
        Ok(())
    }

    pub fn merge(&mut self, other: ClassTable) {
        self.total += other.total;
        for (form, e) in other.entries {
            match self.entries.get_mut(&form) {
                Some(mine) => {
                    mine.count += e.count;
                    if e.first < mine.first {
                        mine.first = e.first;
                        mine.representative = e.representative;
                        mine.decoration = e.decoration;
                    }
                }
                None => {
                    self.entries.insert(form, e);
                }
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Classes ordered by canonical bytes.
    pub fn into_classes(self) -> Vec<EmbeddingClass> {
        let mut out: Vec<EmbeddingClass> = self
            .entries
            .into_iter()
            .map(|(canonical, e)| EmbeddingClass {
                face_signature: e.representative.face_signature(),
                representative: e.representative,
                decoration: e.decoration,
                canonical,
                labelled_count: e.count,
            })
            .collect();
        out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        out
    }
}

/// Partition decorated maps into equivalence classes.
pub fn classify<I>(maps: I, allow_reflection: bool) -> Result<Vec<EmbeddingClass>>
where
    I: IntoIterator<Item = (RotationMap, Decoration)>,
{
    let mut table = ClassTable::new(allow_reflection);
    for (i, (m, d)) in maps.into_iter().enumerate() {
        table.insert(i as u64, &m, &d, 1)?;
    }
    Ok(table.into_classes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k33() -> Graph {
        Graph::complete_bipartite(3, 3)
    }

    /// Find a genus-1 K33 map with faces [4, 4, 10] by walking all 64
    /// rotation systems.
    fn k33_with_signature(sig: &[usize]) -> RotationMap {
        let g = k33();
        for mask in 0..64u32 {
            let rots: Vec<Vec<usize>> = (0..6)
                .map(|v| {
                    let mut r = g.neighbors(v).to_vec();
                    if mask >> v & 1 == 1 {
                        r.swap(1, 2);
                    }
                    r
                })
                .collect();
            let m = RotationMap::from_rotations(&g, &rots).unwrap();
            if m.face_signature() == sig {
                return m;
            }
        }
        panic!("no K33 map with signature {sig:?}");
    }

    #[test]
    fn canonical_form_ignores_vertex_labels() {
        let m = k33_with_signature(&[4, 4, 10]);
        let perm = [4, 0, 5, 2, 1, 3];
        let r = m.relabel(&perm).unwrap();
        for refl in [false, true] {
            assert_eq!(
                canonical_form(&m, &Decoration::None, refl).unwrap(),
                canonical_form(&r, &Decoration::None, refl).unwrap()
            );
        }
        let d = Decoration::DirectedEdge(0, 3);
        assert!(are_equivalent(&m, &d, &r, &d.relabel(&perm), true).unwrap());
    }

    #[test]
    fn hexagonal_map_is_mirror_symmetric() {
        let m = k33_with_signature(&[6, 6, 6]);
        assert!(are_equivalent(&m, &Decoration::None, &m.mirror(), &Decoration::None, true).unwrap());
    }

    #[test]
    fn different_signatures_are_inequivalent() {
        let a = k33_with_signature(&[4, 4, 10]);
        let b = k33_with_signature(&[6, 6, 6]);
        assert!(!are_equivalent(&a, &Decoration::None, &b, &Decoration::None, true).unwrap());
        assert!(find_isomorphism(&a, &Decoration::None, &b, &Decoration::None, true).unwrap().is_none());
    }

    #[test]
    fn symmetry_group_orders() {
        let a = k33_with_signature(&[4, 4, 10]);
        assert_eq!(symmetries(&a, true).unwrap().len(), 4);
        let b = k33_with_signature(&[6, 6, 6]);
        let syms = symmetries(&b, true).unwrap();
        assert_eq!(syms.len(), 36);
        let images: std::collections::HashSet<usize> = syms.iter().map(|s| s.darts[0]).collect();
        assert_eq!(images.len(), 18);
        let k2 = RotationMap::ascending(&Graph::new(2, [(0, 1)]).unwrap());
        assert_eq!(symmetries(&k2, true).unwrap().len(), 2);
    }

    #[test]
    fn symmetries_form_a_group() {
        for sig in [[4, 4, 10], [6, 6, 6]] {
            let m = k33_with_signature(&sig);
            let syms = symmetries(&m, true).unwrap();
            let set: std::collections::HashSet<_> = syms.iter().cloned().collect();
            let preserving = syms.iter().filter(|s| !s.reflecting).count();
            assert!(preserving * 2 >= syms.len());
            for s in &syms {
                assert!(s.verify(&m, &m));
                assert!(set.contains(&s.inverse()));
                for t in &syms {
                    assert!(set.contains(&s.compose(t)));
                }
            }
        }
    }

    #[test]
    fn orbit_structure_on_k33_maps() {
        let a = k33_with_signature(&[4, 4, 10]);
        let sizes = |m: &RotationMap, kind| {
            let decs = Decoration::all_of_kind(kind, m);
            let mut s: Vec<usize> = decoration_orbits(m, &decs, true).unwrap().iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes(&a, DecorationKind::DirectedEdge), vec![2, 4, 4, 4, 4]);
        assert_eq!(sizes(&a, DecorationKind::Cycle4), vec![1, 2, 2, 4]);
        let b = k33_with_signature(&[6, 6, 6]);
        assert_eq!(sizes(&b, DecorationKind::DirectedEdge), vec![18]);
        assert_eq!(sizes(&b, DecorationKind::Cycle4), vec![9]);
    }

    #[test]
    fn decoration_validation() {
        let m = k33_with_signature(&[6, 6, 6]);
        assert!(Decoration::DirectedEdge(0, 1).marked_darts(&m).is_err());
        assert!(Decoration::Cycle(vec![0, 3, 0, 4]).marked_darts(&m).is_err());
        assert!(Decoration::Cycle(vec![0, 3, 4, 1]).marked_darts(&m).is_err());
        assert_eq!(Decoration::Cycle(vec![0, 3, 1, 4]).marked_darts(&m).unwrap().iter().filter(|&&b| b).count(), 8);
        assert_eq!("cycle4".parse::<DecorationKind>().unwrap(), DecorationKind::Cycle4);
        assert!("square".parse::<DecorationKind>().is_err());
    }

    #[test]
    fn refined_invariants_are_consistent() {
        let m = k33_with_signature(&[4, 4, 10]);
        let inv = refined_invariants(&m);
        assert_eq!(inv.face_signature, vec![4, 4, 10]);
        assert_eq!(inv.face_signature.iter().sum::<usize>(), 2 * m.graph().edge_count());
        assert_eq!(inv.face_links.len(), m.graph().edge_count());
        let r = m.relabel(&[5, 4, 3, 2, 1, 0]).unwrap().mirror();
        assert_eq!(refined_invariants(&r), inv);
    }

    #[test]
    fn class_table_merge_is_order_independent() {
        let a = k33_with_signature(&[4, 4, 10]);
        let b = k33_with_signature(&[6, 6, 6]);
        let items = [(0u64, a.clone()), (1, b.clone()), (2, a.mirror()), (3, b.mirror())];
        let mut one = ClassTable::new(true);
        for (i, m) in &items {
            one.insert(*i, m, &Decoration::None, 1).unwrap();
        }
        let mut left = ClassTable::new(true);
        let mut right = ClassTable::new(true);
        for (i, m) in items.iter().rev() {
            if i % 2 == 0 { &mut left } else { &mut right }.insert(*i, m, &Decoration::None, 1).unwrap();
        }
        right.merge(left);
        let x = one.into_classes();
        let y = right.into_classes();
        assert_eq!(x.len(), 2);
        for (p, q) in x.iter().zip(&y) {
            assert_eq!(p.canonical, q.canonical);
            assert_eq!(p.labelled_count, q.labelled_count);
            assert_eq!(p.representative, q.representative);
        }
    }
}
