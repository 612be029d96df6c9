//! Simple undirected graphs on vertices `0..n`, plus the small amount of
//! graph theory the embedding code needs: subdivision and suppression,
//! girth, 4-cycles, exhaustive automorphism/isomorphism search and a
//! brute-force search for subdivisions of K_{3,3}.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{domain, Error, Result};

/// Upper bound on the vertex count accepted by the exhaustive searches
/// (automorphisms, isomorphism, K_{3,3} subdivisions).
pub const MAX_EXHAUSTIVE_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return domain(format!("self-loop at vertex {u}"));
            }
            if u >= n || v >= n {
                return domain(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return domain(format!("parallel edge ({}, {})", w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj, labels: vec![None; n] })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], labels: vec![None; n] }
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// K_{m,n} with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        let edges = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v)));
        Graph::new(m + n, edges).expect("complete bipartite graph is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Position of the edge `{u, v}` in the sorted edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_cubic(&self) -> bool {
        self.n > 0 && self.adj.iter().all(|a| a.len() == 3)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    /// The vertex's tag if it has one, its index otherwise.
    pub fn display_label(&self, v: usize) -> String {
        match &self.labels[v] {
            Some(s) => s.clone(),
            None => v.to_string(),
        }
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels[v] = Some(label.into());
    }

    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> Graph {
        for (v, s) in labels.iter().enumerate().take(self.n) {
            self.labels[v] = Some(s.as_ref().to_string());
        }
        self
    }

    pub fn clear_labels(&mut self) {
        self.labels = vec![None; self.n];
    }

    /// Vertex index carrying the given tag.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `vertices` (renumbered in the given order); the
    /// returned vector maps new indices back to old ones.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let mut g = Graph::new(vertices.len(), edges).expect("induced subgraph is simple");
        for (i, &v) in vertices.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
        }
        (g, vertices.to_vec())
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        let mut g = Graph::new(self.n + other.n, edges).expect("disjoint union is simple");
        g.labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        g
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let Some(k) = self.edge_index(u, v) else {
            return domain(format!("no edge ({u}, {v})"));
        };
        let mut edges = self.edges.clone();
        edges.remove(k);
        let mut g = Graph::new(self.n, edges)?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Append `extra` isolated vertices.
    pub fn with_vertices(&self, extra: usize) -> Graph {
        let mut g =
            Graph::new(self.n + extra, self.edges.iter().copied()).expect("adding vertices keeps the graph simple");
        g.labels[..self.n].clone_from_slice(&self.labels);
        g
    }

    /// Rename vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        let mut g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        for (label, &w) in self.labels.iter().zip(perm) {
            g.labels[w] = label.clone();
        }
        Ok(g)
    }

    /// Replace the edge `{u, v}` by a path `u, n, n+1, ..., n+k-1, v`.
    pub fn subdivide(&self, u: usize, v: usize, k: usize) -> Result<Graph> {
        if k == 0 {
            return domain("subdivision count must be at least 1");
        }
        let g = self.without_edge(u, v)?;
        let base = self.n;
        let mut path = vec![u];
        path.extend(base..base + k);
        path.push(v);
        let mut out = Graph::new(base + k, g.edges.iter().copied().chain(path.windows(2).map(|w| (w[0], w[1]))))?;
        out.labels[..base].clone_from_slice(&self.labels);
        Ok(out)
    }

    /// Replace every maximal path through degree-2 vertices by one edge.
    /// Surviving vertices keep their relative order and labels.
    pub fn suppress_degree2(&self) -> Result<Graph> {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) != 2).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut visited_inner = vec![false; self.n];
        let mut edges = Vec::new();
        for &s in &keep {
            for &first in &self.adj[s] {
                let (mut prev, mut cur) = (s, first);
                while self.degree(cur) == 2 {
                    visited_inner[cur] = true;
                    let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
                    prev = cur;
                    cur = next;
                }
                if cur == s {
                    return Err(Error::Unsupported(format!(
                        "suppressing degree-2 vertices creates a loop at vertex {s}"
                    )));
                }
                if s < cur {
                    edges.push((index[s], index[cur]));
                }
            }
        }
        if let Some(v) = (0..self.n).find(|&v| self.degree(v) == 2 && !visited_inner[v]) {
            return Err(Error::Unsupported(format!("vertex {v} lies on a cycle of degree-2 vertices")));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Unsupported("suppressing degree-2 vertices creates a multi-edge".into()));
        }
        let mut g = Graph::new(keep.len(), edges)?;
        for (i, &v) in keep.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
        }
        Ok(g)
    }

    /// Length of a shortest cycle.
    pub fn girth(&self) -> Result<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if 2 * dist[x] + 1 >= best {
                    break;
                }
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Err(Error::NoCycle)
        } else {
            Ok(best)
        }
    }

    /// Every 4-cycle once, as `[a, b, c, d]` with `a` the smallest vertex
    /// and `b < d`.
    pub fn four_cycles(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let nb: Vec<usize> = self.adj[a].iter().copied().filter(|&x| x > a).collect();
            for (i, &b) in nb.iter().enumerate() {
                for &d in &nb[i + 1..] {
                    for &c in &self.adj[b] {
                        if c > a && c != d && self.has_edge(c, d) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All automorphisms as vertex permutations (`perm[v]` is the image of
    /// `v`), identity first.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        check_exhaustive(self.n, "automorphism search")?;
        let mut out = IsoSearch::new(self, self).run(true);
        out.sort();
        Ok(out)
    }

    /// Automorphisms fixing `v`, or `None` if there are more than `limit`
    /// of them.
    pub(crate) fn stabilizer_up_to(&self, v: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
        if self.n > MAX_EXHAUSTIVE_VERTICES {
            return None;
        }
        let mut search = IsoSearch::new(self, self);
        search.fixed = Some(v);
        search.limit = limit;
        let out = search.run(true);
        (out.len() <= limit).then_some(out)
    }

    /// A vertex bijection `f` with `uv` an edge iff `f(u)f(v)` is one.
    pub fn isomorphism(&self, other: &Graph) -> Result<Option<Vec<usize>>> {
        check_exhaustive(self.n.max(other.n), "isomorphism search")?;
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return Ok(None);
        }
        Ok(IsoSearch::new(self, other).run(false).pop())
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        Ok(self.isomorphism(other)?.is_some())
    }

    /// Search for a subgraph homeomorphic to K_{3,3}.
    pub fn contains_k33_subdivision(&self) -> Result<Option<SubgraphModel>> {
        check_exhaustive(self.n, "K33 subdivision search")?;
        let big: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) >= 3).collect();
        if big.len() < 6 {
            return Ok(None);
        }
        for a in combinations(&big, 3) {
            let rest: Vec<usize> = big.iter().copied().filter(|v| !a.contains(v)).collect();
            for b in combinations(&rest, 3) {
                // each unordered bipartition once
                if b[0] < a[0] {
                    continue;
                }
                let branch = [a[0], a[1], a[2], b[0], b[1], b[2]];
                if let Some(paths) = self.link_branches(&branch) {
                    return Ok(Some(SubgraphModel { host: self.clone(), branch, paths }));
                }
            }
        }
        Ok(None)
    }

    fn link_branches(&self, branch: &[usize; 6]) -> Option<Vec<Vec<usize>>> {
        let mut blocked = vec![false; self.n];
        for &v in branch {
            blocked[v] = true;
        }
        let pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (branch[i], branch[j]))).collect();
        let mut paths = Vec::new();
        if self.link_rec(&pairs, &mut blocked, &mut paths) {
            Some(paths)
        } else {
            None
        }
    }

    fn link_rec(&self, pairs: &[(usize, usize)], blocked: &mut Vec<bool>, paths: &mut Vec<Vec<usize>>) -> bool {
        let Some(&(s, t)) = pairs.get(paths.len()) else {
            return true;
        };
        let mut path = vec![s];
        self.path_rec(s, t, pairs, blocked, &mut path, paths)
    }

    fn path_rec(
        &self,
        cur: usize,
        t: usize,
        pairs: &[(usize, usize)],
        blocked: &mut Vec<bool>,
        path: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
    ) -> bool {
        for &w in &self.adj[cur] {
            if w == t {
                path.push(t);
                paths.push(path.clone());
                if self.link_rec(pairs, blocked, paths) {
                    return true;
                }
                paths.pop();
                path.pop();
            } else if !blocked[w] {
                blocked[w] = true;
                path.push(w);
                if self.path_rec(w, t, pairs, blocked, path, paths) {
                    return true;
                }
                path.pop();
                blocked[w] = false;
            }
        }
        false
    }

    /// Plain-text form: `n m`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| err(format!("expected an integer, found `{t}`"))))
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(err(format!("expected two integers, found {}", nums.len())));
            }
            match header {
                None => header = Some((nums[0], nums[1])),
                Some((n, _)) => {
                    let (u, v) = (nums[0], nums[1]);
                    if u >= v {
                        return Err(err(format!("edge `{u} {v}` must satisfy u < v")));
                    }
                    if v >= n {
                        return Err(err(format!("vertex {v} out of range for n = {n}")));
                    }
                    edges.push((line_no, u, v));
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(Error::Parse { line: 1, message: "missing `n m` header".into() });
        };
        if edges.len() != m {
            let line = text.lines().count().max(1);
            return Err(Error::Parse { line, message: format!("header announces {m} edges, found {}", edges.len()) });
        }
        let mut seen = std::collections::HashSet::new();
        for &(line, u, v) in &edges {
            if !seen.insert((u, v)) {
                return Err(Error::Parse { line, message: format!("duplicate edge `{u} {v}`") });
            }
        }
        Graph::new(n, edges.into_iter().map(|(_, u, v)| (u, v)))
    }
}

/// A subgraph of `host` homeomorphic to K_{3,3}: branch vertices
/// `[a0, a1, a2, b0, b1, b2]` and one host path per model edge, ordered
/// `(a0,b0), (a0,b1), ..., (a2,b2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphModel {
    pub host: Graph,
    pub branch: [usize; 6],
    pub paths: Vec<Vec<usize>>,
}

impl SubgraphModel {
    /// The witness as a spanning subgraph of the host (same vertex ids).
    pub fn subgraph(&self) -> Graph {
        let edges = self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1])));
        Graph::new(self.host.vertex_count(), edges).expect("witness paths are simple")
    }

    /// Check that paths join the right branch vertices, use host edges and
    /// are internally disjoint.
    pub fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.host.vertex_count()];
        for &b in &self.branch {
            if std::mem::replace(&mut used[b], true) {
                return domain("branch vertices repeat");
            }
        }
        if self.paths.len() != 9 {
            return domain("a K33 model needs nine paths");
        }
        for (k, p) in self.paths.iter().enumerate() {
            let (i, j) = (k / 3, 3 + k % 3);
            if p.first() != Some(&self.branch[i]) || p.last() != Some(&self.branch[j]) {
                return domain(format!("path {k} has wrong endpoints"));
            }
            if p.windows(2).any(|w| !self.host.has_edge(w[0], w[1])) {
                return domain(format!("path {k} leaves the host graph"));
            }
            for &x in &p[1..p.len() - 1] {
                if std::mem::replace(&mut used[x], true) {
                    return domain(format!("path {k} is not internally disjoint"));
                }
            }
        }
        Ok(())
    }
}

fn check_exhaustive(n: usize, what: &'static str) -> Result<()> {
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::Budget { what, needed: n as u128, limit: MAX_EXHAUSTIVE_VERTICES as u128 });
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return domain(format!("permutation has length {}, expected {n}", perm.len()));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return domain("not a permutation");
        }
    }
    Ok(())
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Backtracking vertex matcher. Vertices of the source are placed in a
/// connectivity-first order so each new vertex is constrained by an
/// already-mapped neighbour whenever possible.
struct IsoSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    g_adj: Vec<bool>,
    h_adj: Vec<bool>,
    g_sig: Vec<Vec<usize>>,
    h_sig: Vec<Vec<usize>>,
    /// vertex that must map to itself
    fixed: Option<usize>,
    /// stop after this many results
    limit: usize,
}

impl<'a> IsoSearch<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        let matrix = |x: &Graph| {
            let mut m = vec![false; x.n * x.n];
            for &(u, v) in &x.edges {
                m[u * x.n + v] = true;
                m[v * x.n + u] = true;
            }
            m
        };
        // degree followed by sorted neighbour degrees
        let sig = |x: &Graph| {
            (0..x.n)
                .map(|v| {
                    let mut s: Vec<usize> = x.adj[v].iter().map(|&w| x.degree(w)).collect();
                    s.sort_unstable();
                    s.insert(0, x.degree(v));
                    s
                })
                .collect::<Vec<_>>()
        };
        let mut order = Vec::with_capacity(g.n);
        let mut placed = vec![false; g.n];
        while order.len() < g.n {
            let start = (0..g.n).filter(|&v| !placed[v]).max_by_key(|&v| (g.degree(v), usize::MAX - v)).unwrap();
            placed[start] = true;
            order.push(start);
            let mut i = order.len() - 1;
            while i < order.len() {
                for &w in &g.adj[order[i]] {
                    if !placed[w] {
                        placed[w] = true;
                        order.push(w);
                    }
                }
                i += 1;
            }
        }
        IsoSearch {
            g,
            h,
            order,
            g_adj: matrix(g),
            h_adj: matrix(h),
            g_sig: sig(g),
            h_sig: sig(h),
            fixed: None,
            limit: usize::MAX,
        }
    }

    fn run(&self, all: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.g.n != self.h.n {
            return out;
        }
        let mut g_sigs = self.g_sig.clone();
        let mut h_sigs = self.h_sig.clone();
        g_sigs.sort();
        h_sigs.sort();
        if g_sigs != h_sigs {
            return out;
        }
        let mut map = vec![usize::MAX; self.g.n];
        let mut used = vec![false; self.h.n];
        self.rec(0, &mut map, &mut used, all, &mut out);
        out
    }

    fn rec(&self, depth: usize, map: &mut [usize], used: &mut [bool], all: bool, out: &mut Vec<Vec<usize>>) -> bool {
        if depth == self.order.len() {
            out.push(map.to_vec());
            return !all || out.len() > self.limit;
        }
        let x = self.order[depth];
        let n = self.g.n;
        for y in 0..n {
            if used[y] || self.g_sig[x] != self.h_sig[y] {
                continue;
            }
            if self.fixed.is_some_and(|f| (f == x) != (f == y)) {
                continue;
            }
            let consistent =
                self.order[..depth].iter().all(|&x2| self.g_adj[x * n + x2] == self.h_adj[y * n + map[x2]]);
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let stop = self.rec(depth + 1, map, used, all, out);
            used[y] = false;
            map[x] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Graph {
        Graph::complete_bipartite(3, 3)
    }

    /// Orders of the automorphism group by trying every vertex bijection.
    fn brute_force_automorphism_count(g: &Graph) -> usize {
        fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
            let n = g.vertex_count();
            if perm.len() == n {
                let ok = g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]));
                return ok as usize;
            }
            let x = perm.len();
            let mut total = 0;
            for y in 0..n {
                if !used[y] && g.degree(y) == g.degree(x) {
                    used[y] = true;
                    perm.push(y);
                    total += rec(g, perm, used);
                    perm.pop();
                    used[y] = false;
                }
            }
            total
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.vertex_count()])
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn subdivide_counts_and_inverse() {
        let g = k33();
        let s = g.subdivide(0, 3, 1).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (7, 10));
        let s6 = g.subdivide(0, 3, 6).unwrap();
        assert_eq!((s6.vertex_count(), s6.edge_count()), (12, 15));
        assert_eq!(s6.suppress_degree2().unwrap(), g);
        assert_eq!(g.suppress_degree2().unwrap(), g);
        assert!(g.subdivide(0, 1, 1).is_err());
        assert!(g.subdivide(0, 3, 0).is_err());
    }

    #[test]
    fn suppress_rejects_cycles_and_multi_edges() {
        assert!(matches!(Graph::cycle(5).suppress_degree2(), Err(Error::Unsupported(_))));
        // theta graph: two degree-3 vertices joined by three paths
        let theta = Graph::new(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert!(matches!(theta.suppress_degree2(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(k33().girth().unwrap(), 4);
        assert_eq!(Graph::complete(5).girth().unwrap(), 3);
        assert_eq!(Graph::cycle(7).girth().unwrap(), 7);
        let tree = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.girth(), Err(Error::NoCycle));
    }

    #[test]
    fn four_cycle_counts() {
        assert_eq!(k33().four_cycles().len(), 9);
        // brute force: ordered 4-tuples forming a cycle, modulo rotation and reversal
        let k5 = Graph::complete(5);
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    for d in 0..5 {
                        let t = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
                        if distinct && (0..4).all(|i| k5.has_edge(t[i], t[(i + 1) % 4])) {
                            let mut edges: Vec<(usize, usize)> =
                                (0..4).map(|i| (t[i].min(t[(i + 1) % 4]), t[i].max(t[(i + 1) % 4]))).collect();
                            edges.sort_unstable();
                            seen.insert(edges);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 15);
        assert_eq!(k5.four_cycles().len(), seen.len());
        let tree = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(tree.four_cycles().is_empty());
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(k33().automorphisms().unwrap().len(), 72);
        assert_eq!(Graph::complete(5).automorphisms().unwrap().len(), 120);
        for g in [k33(), Graph::complete(5), Graph::cycle(6), k33().subdivide(0, 3, 2).unwrap()] {
            assert_eq!(g.automorphisms().unwrap().len(), brute_force_automorphism_count(&g));
        }
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = k33().subdivide(1, 4, 1).unwrap();
        let auts = g.automorphisms().unwrap();
        let set: std::collections::HashSet<_> = auts.iter().cloned().collect();
        let id: Vec<usize> = (0..g.vertex_count()).collect();
        assert!(set.contains(&id));
        for p in &auts {
            let mut inv = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            assert!(set.contains(&inv));
            for q in &auts {
                let comp: Vec<usize> = (0..p.len()).map(|i| p[q[i]]).collect();
                assert!(set.contains(&comp));
            }
        }
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let g = k33().subdivide(0, 4, 2).unwrap();
        let perm: Vec<usize> = (0..g.vertex_count()).rev().collect();
        let h = g.relabel(&perm).unwrap();
        let f = g.isomorphism(&h).unwrap().expect("isomorphic");
        for &(u, v) in g.edges() {
            assert!(h.has_edge(f[u], f[v]));
        }
        assert!(!Graph::complete(4).is_isomorphic(&Graph::cycle(4)).unwrap());
    }

    #[test]
    fn k33_subdivision_search() {
        assert!(Graph::complete(4).contains_k33_subdivision().unwrap().is_none());
        assert!(Graph::complete(5).contains_k33_subdivision().unwrap().is_none());
        let g = k33().subdivide(2, 5, 3).unwrap();
        let w = g.contains_k33_subdivision().unwrap().expect("witness");
        w.validate().unwrap();
        assert!(w.subgraph().suppress_degree2().unwrap().is_isomorphic(&k33()).unwrap());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let g = k33();
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        let with_comments = "# C4\n4 4\n0 1\n1 2\n# edge\n2 3\n0 3";
        assert_eq!(Graph::parse_text(with_comments).unwrap(), Graph::cycle(4));
        match Graph::parse_text("3 2\n0 1\n2 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Graph::parse_text("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse_text("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_text("3 2\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn exhaustive_searches_respect_budget() {
        let big = Graph::cycle(17);
        assert!(matches!(big.automorphisms(), Err(Error::Budget { .. })));
        assert!(matches!(big.contains_k33_subdivision(), Err(Error::Budget { .. })));
    }
}
