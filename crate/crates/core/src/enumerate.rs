//! Exhaustive enumeration of rotation systems, genus computation and the
//! classification drivers built on top of them.
//!
//! The search space is the product over vertices of the cyclic orders of
//! each neighbourhood (`(deg - 1)!` per vertex), walked in mixed radix.
//! At one pivot vertex of maximum degree only one cyclic order per orbit of
//! (pivot stabilizer in Aut(G)) × (mirror) is visited, weighted by the orbit
//! size; both class membership and genus are invariant under those moves,
//! so labelled counts and the genus histogram stay exact.

use crate::clock::Stopwatch;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::classify::{ClassTable, Decoration, DecorationKind, EmbeddingClass};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{dart_of, RotationMap};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Pivot stabilizers larger than this are not used for pruning.
const STABILIZER_LIMIT: usize = 50_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub allow_reflection: bool,
    pub threads: usize,
    pub budget: u128,
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { allow_reflection: true, threads: 1, budget: DEFAULT_BUDGET, prune: true }
    }
}

impl SearchOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn unpruned(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn orientation_preserving(mut self) -> Self {
        self.allow_reflection = false;
        self
    }
}

/// `Π (deg(v) - 1)!` over all vertices.
pub fn rotation_system_count(g: &Graph) -> u128 {
    (0..g.vertex_count())
        .map(|v| (1..g.degree(v).max(1) as u128).product::<u128>())
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

fn check_budget(g: &Graph, budget: u128) -> Result<u128> {
    let count = rotation_system_count(g);
    if count > budget {
        return Err(Error::Budget { what: "rotation systems", needed: count, limit: budget });
    }
    Ok(count)
}

/// Cyclic orders of `nbrs` that start with the smallest element, in
/// lexicographic order.
fn cyclic_orders(nbrs: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = nbrs.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    let mut rest = rest.to_vec();
    rest.sort_unstable();
    permute(&mut rest, 0, &mut |p| {
        let mut o = vec![first];
        o.extend_from_slice(p);
        out.push(o);
    });
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Rotate a cyclic order so it starts at its smallest element.
fn normalize(order: &[usize]) -> Vec<usize> {
    let Some(pos) = order.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i) else {
        return Vec::new();
    };
    order[pos..].iter().chain(&order[..pos]).copied().collect()
}

/// Mixed-radix space of rotation systems with an optional reduced pivot.
#[derive(Clone, Debug)]
pub struct RotationSpace {
    graph: Graph,
    /// Per vertex, per admissible order: the `(dart, sigma(dart))` pairs.
    choices: Vec<Vec<Vec<(usize, usize)>>>,
    orders: Vec<Vec<Vec<usize>>>,
    /// Weight of each order at the pivot (all ones elsewhere).
    pivot: Option<(usize, Vec<u64>)>,
    size: u64,
}

impl RotationSpace {
    pub fn full(g: &Graph, budget: u128) -> Result<RotationSpace> {
        check_budget(g, budget)?;
        let orders: Vec<Vec<Vec<usize>>> = (0..g.vertex_count()).map(|v| cyclic_orders(g.neighbors(v))).collect();
        Ok(Self::from_orders(g, orders, None))
    }

    /// Space with the pivot reduced to orbit representatives.
    pub fn pruned(g: &Graph, budget: u128, allow_reflection: bool) -> Result<RotationSpace> {
        let full = Self::full(g, budget)?;
        if g.max_degree() < 3 {
            return Ok(full);
        }
        let pivot = (0..g.vertex_count()).max_by_key(|&v| (g.degree(v), usize::MAX - v)).unwrap();
        let Some(stabilizer) = g.stabilizer_up_to(pivot, STABILIZER_LIMIT) else {
            return Ok(full);
        };
        let all = &full.orders[pivot];
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            all.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut orbit_of = vec![usize::MAX; all.len()];
        let mut reps = Vec::new();
        let mut weights = Vec::new();
        for i in 0..all.len() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut size = 0;
            for perm in &stabilizer {
                let image: Vec<usize> = all[i].iter().map(|&w| perm[w]).collect();
                let mut images = vec![normalize(&image)];
                if allow_reflection {
                    let rev: Vec<usize> = image.iter().rev().copied().collect();
                    images.push(normalize(&rev));
                }
                for im in images {
                    let j = index[&im];
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = i;
                        size += 1;
                    }
                }
            }
            reps.push(all[i].clone());
            weights.push(size);
        }
        let mut orders = full.orders;
        orders[pivot] = reps;
        Ok(Self::from_orders(g, orders, Some((pivot, weights))))
    }

    fn from_orders(g: &Graph, orders: Vec<Vec<Vec<usize>>>, pivot: Option<(usize, Vec<u64>)>) -> RotationSpace {
        let choices = orders
            .iter()
            .enumerate()
            .map(|(v, list)| {
                list.iter()
                    .map(|o| (0..o.len()).map(|i| (dart_of(g, v, o[i]), dart_of(g, v, o[(i + 1) % o.len()]))).collect())
                    .collect()
            })
            .collect();
        let size = orders.iter().map(|o| o.len() as u64).product();
        RotationSpace { graph: g.clone(), choices, orders, pivot, size }
    }

    /// Number of points in the (possibly reduced) space.
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// The map at `index` together with its weight. The last vertex varies
    /// fastest.
    pub fn get(&self, index: u64) -> (RotationMap, u64) {
        let mut sigma = vec![0; 2 * self.graph.edge_count()];
        let mut rest = index;
        let mut weight = 1;
        for v in (0..self.choices.len()).rev() {
            let radix = self.choices[v].len() as u64;
            let digit = (rest % radix) as usize;
            rest /= radix;
            for &(d, s) in &self.choices[v][digit] {
                sigma[d] = s;
            }
            if let Some((p, w)) = &self.pivot {
                if *p == v {
                    weight = w[digit];
                }
            }
        }
        (RotationMap::from_sigma(self.graph.clone(), sigma), weight)
    }

    /// Cyclic order used at `v` by the point at `index`.
    pub fn order_at(&self, index: u64, v: usize) -> &[usize] {
        let mut rest = index;
        for u in (v + 1..self.orders.len()).rev() {
            rest /= self.orders[u].len() as u64;
        }
        &self.orders[v][(rest % self.orders[v].len() as u64) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = RotationMap> + '_ {
        (0..self.size).map(move |i| self.get(i).0)
    }

    fn chunks(&self, threads: usize) -> Vec<(u64, u64)> {
        let parts = if threads <= 1 { 1 } else { (threads * 4) as u64 };
        let step = self.size.div_ceil(parts).max(1);
        (0..parts).map(|k| (k * step, ((k + 1) * step).min(self.size))).filter(|(a, b)| a < b).collect()
    }
}

/// Every rotation system of `g` exactly once, in a fixed order.
pub fn enumerate_rotation_systems(g: &Graph, budget: u128) -> Result<impl Iterator<Item = RotationMap>> {
    let space = RotationSpace::full(g, budget)?;
    Ok((0..space.len()).map(move |i| space.get(i).0))
}

/// Result of scanning a rotation space: genus histogram plus the classes at
/// the target genus.
#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub graph: String,
    pub total: u128,
    pub examined: u64,
    pub genus_histogram: BTreeMap<usize, u64>,
    pub target_genus: usize,
    pub decoration: DecorationKind,
    pub classes: Vec<EmbeddingClass>,
    pub wall_time_ms: u128,
}

impl Serialize for EnumerationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ClassOut<'a> {
            signature: &'a [usize],
            labelled_count: u64,
            canonical: String,
            rotations: &'a RotationMap,
            #[serde(skip_serializing_if = "is_none")]
            decoration: &'a Decoration,
        }
        fn is_none(d: &&Decoration) -> bool {
            matches!(d, Decoration::None)
        }
        let classes: Vec<ClassOut> = self
            .classes
            .iter()
            .map(|c| ClassOut {
                signature: &c.face_signature,
                labelled_count: c.labelled_count,
                canonical: c.canonical.to_hex(),
                rotations: &c.representative,
                decoration: &c.decoration,
            })
            .collect();
        let histogram: BTreeMap<String, u64> = self.genus_histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let mut st = s.serialize_struct("EnumerationReport", 6)?;
        st.serialize_field("graph", &self.graph)?;
        st.serialize_field("total", &(self.total as u64))?;
        st.serialize_field("genus_histogram", &histogram)?;
        st.serialize_field("target_genus", &self.target_genus)?;
        st.serialize_field("decoration", &self.decoration)?;
        st.serialize_field("classes", &classes)?;
        st.end()
    }
}

struct Shard {
    histogram: BTreeMap<usize, u64>,
    table: ClassTable,
}

fn scan(
    space: &RotationSpace,
    range: (u64, u64),
    target_genus: usize,
    kind: DecorationKind,
    allow_reflection: bool,
    connected: bool,
) -> Result<Shard> {
    let mut histogram = BTreeMap::new();
    let mut table = ClassTable::new(allow_reflection);
    let mut decorations: Option<Vec<Decoration>> = None;
    for index in range.0..range.1 {
        let (m, weight) = space.get(index);
        let genus = m.genus_sum();
        *histogram.entry(genus).or_insert(0) += weight;
        if genus != target_genus {
            continue;
        }
        if !connected {
            return Err(Error::Unsupported(
                "classifying embeddings of disconnected graphs at an attainable genus".into(),
            ));
        }
        let decs = decorations.get_or_insert_with(|| Decoration::all_of_kind(kind, &m));
        for (j, d) in decs.iter().enumerate() {
            let ordinal = index * decs.len() as u64 + j as u64;
            table.insert(ordinal, &m, d, weight)?;
        }
    }
    Ok(Shard { histogram, table })
}

/// Scan all rotation systems of `g`, building the genus histogram and the
/// classes of `(map, decoration)` pairs at `target_genus`.
pub fn enumerate_classes(
    g: &Graph,
    name: &str,
    target_genus: usize,
    kind: DecorationKind,
    opts: &SearchOptions,
) -> Result<EnumerationReport> {
    let started = Stopwatch::start();
    let total = check_budget(g, opts.budget)?;
    let space = if opts.prune {
        RotationSpace::pruned(g, opts.budget, opts.allow_reflection)?
    } else {
        RotationSpace::full(g, opts.budget)?
    };
    let connected = g.is_connected();
    let chunks = space.chunks(opts.threads);
    let run = |range: &(u64, u64)| scan(&space, *range, target_genus, kind, opts.allow_reflection, connected);
    let shards: Vec<Result<Shard>> = if opts.threads <= 1 {
        chunks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
        pool.install(|| chunks.par_iter().map(run).collect())
    };
    let mut histogram = BTreeMap::new();
    let mut table = ClassTable::new(opts.allow_reflection);
    for shard in shards {
        let shard = shard?;
        for (k, v) in shard.histogram {
            *histogram.entry(k).or_insert(0) += v;
        }
        table.merge(shard.table);
    }
    Ok(EnumerationReport {
        graph: name.to_string(),
        total,
        examined: space.len(),
        genus_histogram: histogram,
        target_genus,
        decoration: kind,
        classes: table.into_classes(),
        wall_time_ms: started.elapsed_ms(),
    })
}

/// Inequivalent embeddings of `g` into the torus.
pub fn toroidal_classes(g: &Graph) -> Result<Vec<EmbeddingClass>> {
    toroidal_classes_with(g, &SearchOptions::default())
}

pub fn toroidal_classes_with(g: &Graph, opts: &SearchOptions) -> Result<Vec<EmbeddingClass>> {
    if !g.is_connected() {
        // no toroidal embedding to classify unless the genus allows one
        if genus_with(g, opts.budget)? > 1 {
            return Ok(Vec::new());
        }
        return Err(Error::Unsupported("toroidal classes of a disconnected graph".into()));
    }
    Ok(enumerate_classes(g, "", 1, DecorationKind::None, opts)?.classes)
}

/// Inequivalent toroidal embeddings carrying one decoration of `kind`.
pub fn decorated_classes(g: &Graph, kind: DecorationKind) -> Result<Vec<EmbeddingClass>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(enumerate_classes(g, "", 1, kind, &SearchOptions::default())?.classes)
}

/// Minimum-genus embedding found for each component.
#[derive(Clone, Debug)]
pub struct GenusWitness {
    pub genus: usize,
    /// `(component vertices, component genus)`.
    pub components: Vec<(Vec<usize>, usize)>,
    /// A rotation system of the whole graph realising `genus`.
    pub map: RotationMap,
}

/// Lower bound from Euler's formula with every face at least `girth` long.
fn euler_lower_bound(g: &Graph) -> usize {
    let Ok(girth) = g.girth() else {
        return 0;
    };
    let (v, e) = (g.vertex_count() as i64, g.edge_count() as i64);
    let max_faces = 2 * e / girth as i64;
    let twice = 2 - v + e - max_faces;
    if twice <= 0 {
        0
    } else {
        ((twice + 1) / 2) as usize
    }
}

fn connected_minimum(g: &Graph, budget: u128) -> Result<(usize, RotationMap)> {
    let bound = euler_lower_bound(g);
    let space = RotationSpace::full(g, budget)?;
    let mut best: Option<(usize, RotationMap)> = None;
    for i in 0..space.len() {
        let (m, _) = space.get(i);
        let genus = m.genus_sum();
        if best.as_ref().is_none_or(|(b, _)| genus < *b) {
            best = Some((genus, m));
            if genus <= bound {
                break;
            }
        }
    }
    Ok(best.expect("rotation space is never empty"))
}

/// Minimum genus, component by component (genus is additive over
/// components).
pub fn minimum_genus(g: &Graph, budget: u128) -> Result<GenusWitness> {
    let comps = g.components();
    for c in &comps {
        let (sub, _) = g.induced(c);
        check_budget(&sub, budget)?;
    }
    let mut rotations = vec![Vec::new(); g.vertex_count()];
    let mut components = Vec::new();
    let mut total = 0;
    for c in comps {
        let (sub, back) = g.induced(&c);
        let (genus, m) = connected_minimum(&sub, budget)?;
        for (i, rot) in m.rotations().into_iter().enumerate() {
            rotations[back[i]] = rot.into_iter().map(|w| back[w]).collect();
        }
        total += genus;
        components.push((c, genus));
    }
    let map = RotationMap::from_rotations(g, &rotations)?;
    Ok(GenusWitness { genus: total, components, map })
}

pub fn genus(g: &Graph) -> Result<usize> {
    genus_with(g, DEFAULT_BUDGET)
}

pub fn genus_with(g: &Graph, budget: u128) -> Result<usize> {
    Ok(minimum_genus(g, budget)?.genus)
}

pub fn embeds_in_torus(g: &Graph) -> Result<bool> {
    Ok(genus(g)? <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Graph {
        Graph::complete_bipartite(3, 3)
    }

    /// Genus histogram by brute force over explicit permutations and a
    /// vertex-pair face tracer, sharing nothing with the dart machinery.
    fn naive_histogram(g: &Graph) -> BTreeMap<usize, u64> {
        fn all_orders(nbrs: &[usize]) -> Vec<Vec<usize>> {
            if nbrs.len() <= 1 {
                return vec![nbrs.to_vec()];
            }
            let mut out = Vec::new();
            let (first, rest) = (nbrs[0], &nbrs[1..]);
            let mut perms = vec![vec![]];
            for &x in rest {
                let mut next = Vec::new();
                for p in &perms {
                    for i in 0..=p.len() {
                        let mut q: Vec<usize> = p.clone();
                        q.insert(i, x);
                        next.push(q);
                    }
                }
                perms = next;
            }
            for p in perms {
                let mut o = vec![first];
                o.extend(p);
                out.push(o);
            }
            out
        }
        let n = g.vertex_count();
        let per_vertex: Vec<Vec<Vec<usize>>> = (0..n).map(|v| all_orders(g.neighbors(v))).collect();
        let mut hist = BTreeMap::new();
        let mut idx = vec![0usize; n];
        loop {
            let rot: Vec<&Vec<usize>> = (0..n).map(|v| &per_vertex[v][idx[v]]).collect();
            let mut used = std::collections::HashSet::new();
            let mut faces = 0i64;
            for &(u, v) in g.edges() {
                for start in [(u, v), (v, u)] {
                    if used.contains(&start) {
                        continue;
                    }
                    faces += 1;
                    let mut cur = start;
                    while used.insert(cur) {
                        let (a, b) = cur;
                        let r = rot[b];
                        let i = r.iter().position(|&x| x == a).unwrap();
                        cur = (b, r[(i + 1) % r.len()]);
                    }
                }
            }
            let genus = (2 - n as i64 + g.edge_count() as i64 - faces) / 2;
            *hist.entry(genus as usize).or_insert(0) += 1;
            let mut v = 0;
            loop {
                if v == n {
                    return hist;
                }
                idx[v] += 1;
                if idx[v] < per_vertex[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
        }
    }

    #[test]
    fn rotation_system_counts() {
        assert_eq!(rotation_system_count(&k33()), 64);
        assert_eq!(rotation_system_count(&Graph::complete(5)), 7776);
        assert_eq!(enumerate_rotation_systems(&k33(), DEFAULT_BUDGET).unwrap().count(), 64);
        assert_eq!(enumerate_rotation_systems(&Graph::complete(5), DEFAULT_BUDGET).unwrap().count(), 7776);
        assert!(matches!(enumerate_rotation_systems(&Graph::complete(5), 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn enumeration_yields_distinct_systems() {
        let maps: Vec<RotationMap> = enumerate_rotation_systems(&k33(), DEFAULT_BUDGET).unwrap().collect();
        let set: std::collections::HashSet<Vec<Vec<usize>>> = maps.iter().map(|m| m.rotations()).collect();
        assert_eq!(set.len(), 64);
    }

    #[test]
    fn k33_histogram_matches_naive_tracer() {
        let g = k33();
        let report = enumerate_classes(&g, "K33", 1, DecorationKind::None, &SearchOptions::default()).unwrap();
        let naive = naive_histogram(&g);
        assert_eq!(report.genus_histogram, naive);
        assert_eq!(naive.get(&0), None);
        assert_eq!(naive.values().sum::<u64>(), 64);
    }

    #[test]
    fn pruned_and_unpruned_runs_agree() {
        for g in [k33(), Graph::complete(5), Graph::complete(4)] {
            for kind in [DecorationKind::None, DecorationKind::DirectedEdge] {
                let a = enumerate_classes(&g, "", 1, kind, &SearchOptions::default()).unwrap();
                let b = enumerate_classes(&g, "", 1, kind, &SearchOptions::default().unpruned()).unwrap();
                assert!(a.examined <= b.examined);
                assert_eq!(a.genus_histogram, b.genus_histogram);
                assert_eq!(a.classes.len(), b.classes.len());
                for (x, y) in a.classes.iter().zip(&b.classes) {
                    assert_eq!(x.canonical, y.canonical);
                    assert_eq!(x.labelled_count, y.labelled_count);
                }
            }
        }
    }

    #[test]
    fn k33_and_k5_class_counts() {
        let k = toroidal_classes(&k33()).unwrap();
        let sigs: Vec<Vec<usize>> = k.iter().map(|c| c.face_signature.clone()).collect();
        assert_eq!(k.len(), 2);
        assert!(sigs.contains(&vec![4, 4, 10]) && sigs.contains(&vec![6, 6, 6]));
        assert_eq!(toroidal_classes(&Graph::complete(5)).unwrap().len(), 6);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = Graph::complete(5);
        let one = enumerate_classes(&g, "", 1, DecorationKind::None, &SearchOptions::default()).unwrap();
        let many =
            enumerate_classes(&g, "", 1, DecorationKind::None, &SearchOptions::default().with_threads(4)).unwrap();
        assert_eq!(one.genus_histogram, many.genus_histogram);
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&many).unwrap());
    }

    #[test]
    fn genus_and_additivity() {
        assert_eq!(genus(&k33()).unwrap(), 1);
        assert_eq!(genus(&Graph::cycle(4)).unwrap(), 0);
        assert_eq!(genus(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(genus(&Graph::complete(5)).unwrap(), 1);
        let e = k33().disjoint_union(&k33());
        let w = minimum_genus(&e, DEFAULT_BUDGET).unwrap();
        assert_eq!(w.genus, 2);
        assert_eq!(w.map.genus_sum(), 2);
        assert_eq!(w.components.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1, 1]);
        assert!(!embeds_in_torus(&e).unwrap());
        assert!(embeds_in_torus(&Graph::empty(0)).unwrap());
        let mixed = k33().disjoint_union(&Graph::cycle(5));
        assert_eq!(genus(&mixed).unwrap(), genus(&k33()).unwrap() + genus(&Graph::cycle(5)).unwrap());
    }

    #[test]
    fn disconnected_toroidal_classes() {
        let e = k33().disjoint_union(&k33());
        assert!(toroidal_classes(&e).unwrap().is_empty());
        let mixed = k33().disjoint_union(&Graph::cycle(4));
        assert!(matches!(toroidal_classes(&mixed), Err(Error::Unsupported(_))));
    }

    #[test]
    fn order_at_reports_the_decoded_rotation() {
        let g = Graph::complete(4);
        let space = RotationSpace::full(&g, DEFAULT_BUDGET).unwrap();
        for i in 0..space.len() {
            let m = space.get(i).0;
            for v in 0..4 {
                assert_eq!(m.rotations()[v], space.order_at(i, v));
            }
        }
    }
}
