//! Directed multigraphs shared by the curve side and the quaternion side,
//! with JSON/DOT export and an exact isomorphism search.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeData;
use crate::orient::EdgePair;

/// Largest graph handed to `find_isomorphism`.
pub const ISO_VERTEX_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Canonical identity; vertices are kept sorted by key.
    pub key: String,
    pub label: String,
    pub conductors: Option<(u64, u64)>,
    pub lattice: Option<LatticeData>,
}

impl Vertex {
    pub fn plain(key: impl Into<String>) -> Vertex {
        let key = key.into();
        Vertex {
            label: key.clone(),
            key,
            conductors: None,
            lattice: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub mult: u32,
    pub class: Option<EdgePair>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub p: u64,
    pub ell: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_j: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    pub meta: GraphMeta,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(meta: GraphMeta) -> MultiGraph {
        MultiGraph {
            meta,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, v: Vertex) -> usize {
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    /// Adds `mult` parallel edges, merging with an existing edge of the same class.
    pub fn add_edge(&mut self, src: usize, dst: usize, mult: u32, class: Option<EdgePair>) {
        if let Some(e) = self
            .edges
            .iter_mut()
            .find(|e| e.src == src && e.dst == dst && e.class == class)
        {
            e.mult += mult;
        } else {
            self.edges.push(Edge {
                src,
                dst,
                mult,
                class,
            });
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Total directed edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.iter().map(|e| e.mult as u64).sum()
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.edges.iter().filter(|e| e.src == v).map(|e| e.mult as u64).sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        self.edges.iter().filter(|e| e.dst == v).map(|e| e.mult as u64).sum()
    }

    pub fn loops(&self, v: usize) -> u64 {
        self.edges
            .iter()
            .filter(|e| e.src == v && e.dst == v)
            .map(|e| e.mult as u64)
            .sum()
    }

    /// `a[s][t]` = number of directed edges from `s` to `t`.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut a = vec![vec![0u64; n]; n];
        for e in &self.edges {
            a[e.src][e.dst] += e.mult as u64;
        }
        a
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.key == key)
    }

    fn reachable(&self, start: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                let (from, to) = if forward { (e.src, e.dst) } else { (e.dst, e.src) };
                if from == v && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    /// Every vertex reaches every other along directed edges.
    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        self.reachable(0, true).iter().all(|&b| b) && self.reachable(0, false).iter().all(|&b| b)
    }

    /// Undirected simple view as `(u, v)` pairs with `u <= v`, one per pair of
    /// opposite directed edges.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.src.min(e.dst), e.src.max(e.dst)))
            .collect();
        pairs.sort();
        pairs.dedup();
        pairs
    }

    /// Connected with `|E| = |V| - 1` in the undirected view.
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        let und = self.undirected_edges();
        if und.len() + 1 != n || und.iter().any(|(a, b)| a == b) {
            return false;
        }
        let mut sym = self.clone();
        sym.edges = und
            .iter()
            .flat_map(|&(a, b)| {
                [
                    Edge { src: a, dst: b, mult: 1, class: None },
                    Edge { src: b, dst: a, mult: 1, class: None },
                ]
            })
            .collect();
        sym.is_strongly_connected()
    }

    /// Sorts vertices by key and edges by endpoints, remapping indices.
    pub fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].key.cmp(&self.vertices[b].key));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        self.vertices = order.iter().map(|&o| self.vertices[o].clone()).collect();
        for e in &mut self.edges {
            e.src = new_index[e.src];
            e.dst = new_index[e.dst];
        }
        self.edges.sort();
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value()?)?)
    }

    pub fn to_json_value(&self) -> Result<serde_json::Value> {
        let doc = GraphJson {
            meta: self.meta.clone(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    key: v.key.clone(),
                    label: v.label.clone(),
                    f_i: v.conductors.map(|c| c.0),
                    f_j: v.conductors.map(|c| c.1),
                    basis: v
                        .lattice
                        .as_ref()
                        .map(|l| l.basis.map(|r| r.map(|x| x.to_string()))),
                    den: v.lattice.as_ref().map(|l| l.den.to_string()),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    src: e.src,
                    dst: e.dst,
                    mult: e.mult,
                    class: e.class.map(|c| c.label()),
                })
                .collect(),
        };
        Ok(serde_json::to_value(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<MultiGraph> {
        let doc: GraphJson = serde_json::from_str(text)?;
        let parse = |s: &str| {
            s.parse::<i128>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        };
        let mut g = MultiGraph::new(doc.meta);
        for (pos, v) in doc.vertices.into_iter().enumerate() {
            if v.id != pos {
                return Err(Error::Parse("vertex ids must be 0..n in order".into()));
            }
            let lattice = match (v.basis, v.den) {
                (Some(b), Some(d)) => {
                    let mut basis = [[0i128; 4]; 4];
                    for (r, row) in b.iter().enumerate() {
                        for (c, x) in row.iter().enumerate() {
                            basis[r][c] = parse(x)?;
                        }
                    }
                    Some(LatticeData { basis, den: parse(&d)? })
                }
                (None, None) => None,
                _ => return Err(Error::Parse("basis and den must appear together".into())),
            };
            let conductors = match (v.f_i, v.f_j) {
                (Some(a), Some(b)) => Some((a, b)),
                (None, None) => None,
                _ => return Err(Error::Parse("f_i and f_j must appear together".into())),
            };
            g.add_vertex(Vertex {
                key: v.key,
                label: v.label,
                conductors,
                lattice,
            });
        }
        for e in doc.edges {
            if e.src >= g.vertices.len() || e.dst >= g.vertices.len() {
                return Err(Error::Parse("edge endpoint out of range".into()));
            }
            let class = e.class.as_deref().map(EdgePair::parse).transpose()?;
            g.edges.push(Edge {
                src: e.src,
                dst: e.dst,
                mult: e.mult,
                class,
            });
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let label = match v.conductors {
                Some((a, b)) => format!("({a},{b})"),
                None => v.label.clone(),
            };
            let _ = writeln!(s, "  v{id} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let mut attrs = Vec::new();
            if let Some(c) = e.class {
                attrs.push(format!("label=\"{}\"", c.label()));
            }
            if e.mult > 1 {
                attrs.push(format!("mult={}", e.mult));
                if e.class.is_none() {
                    attrs.push(format!("label=\"{}\"", e.mult));
                }
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            let _ = writeln!(s, "  v{} -> v{}{attrs};", e.src, e.dst);
        }
        s.push_str("}\n");
        s
    }

    pub fn write_file(&self, path: &Path, format: ExportFormat) -> Result<()> {
        let text = match format {
            ExportFormat::Json => self.to_json()?,
            ExportFormat::Dot => self.to_dot(),
        };
        std::fs::write(path, text)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(flatten)]
    meta: GraphMeta,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    key: String,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    f_i: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    f_j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    basis: Option<[[String; 4]; 4]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    den: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    src: usize,
    dst: usize,
    mult: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    class: Option<String>,
}

/// A vertex bijection `g -> h` preserving directed edge multiplicities, or the
/// reason none exists.
pub fn find_isomorphism(g: &MultiGraph, h: &MultiGraph) -> std::result::Result<Vec<usize>, String> {
    let n = g.vertex_count();
    if n != h.vertex_count() {
        return Err(format!("vertex counts differ: {n} vs {}", h.vertex_count()));
    }
    if n > ISO_VERTEX_CAP {
        return Err(format!("graphs exceed {ISO_VERTEX_CAP} vertices"));
    }
    let (ag, ah) = (g.adjacency(), h.adjacency());
    let sig = |gr: &MultiGraph, v: usize| (gr.out_degree(v), gr.in_degree(v), gr.loops(v));
    let sg: Vec<_> = (0..n).map(|v| sig(g, v)).collect();
    let sh: Vec<_> = (0..n).map(|v| sig(h, v)).collect();
    let count = |s: &[(u64, u64, u64)]| {
        let mut m = BTreeMap::new();
        for x in s {
            *m.entry(*x).or_insert(0) += 1;
        }
        m
    };
    if count(&sg) != count(&sh) {
        return Err("degree signatures (out, in, loops) differ".into());
    }
    // Rarest signatures first prunes the search fastest.
    let freq = count(&sg);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (freq[&sg[v]], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[usize],
        map: &mut [usize],
        used: &mut [bool],
        ag: &[Vec<u64>],
        ah: &[Vec<u64>],
        sg: &[(u64, u64, u64)],
        sh: &[(u64, u64, u64)],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for w in 0..map.len() {
            if used[w] || sg[v] != sh[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let mu = map[u];
                ag[v][u] == ah[w][mu] && ag[u][v] == ah[mu][w]
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(depth + 1, order, map, used, ag, ah, sg, sh) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    if extend(0, &order, &mut map, &mut used, &ag, &ah, &sg, &sh) {
        Ok(map)
    } else {
        Err("no bijection preserves the edge multiplicities".into())
    }
}

/// Checks that `map` is an isomorphism `g -> h`.
pub fn is_isomorphism(g: &MultiGraph, h: &MultiGraph, map: &[usize]) -> bool {
    let (ag, ah) = (g.adjacency(), h.adjacency());
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &w in map {
        if w >= n || std::mem::replace(&mut seen[w], true) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| ag[a][b] == ah[map[a]][map[b]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::{EdgeKind, EdgePair};

    fn cycle(n: usize, shift: usize) -> MultiGraph {
        let mut g = MultiGraph::new(GraphMeta::default());
        for i in 0..n {
            g.add_vertex(Vertex::plain(format!("v{i}")));
        }
        for i in 0..n {
            let (a, b) = ((i + shift) % n, (i + 1 + shift) % n);
            g.add_edge(a, b, 1 + (i == 0) as u32, None);
        }
        g
    }

    #[test]
    fn isomorphism_of_relabelled_graph() {
        let g = cycle(6, 0);
        let h = cycle(6, 2);
        let m = find_isomorphism(&g, &h).unwrap();
        assert!(is_isomorphism(&g, &h, &m));
        let mut k = cycle(6, 0);
        k.add_edge(0, 0, 1, None);
        assert!(find_isomorphism(&g, &k).is_err());
    }

    #[test]
    fn empty_graph_dot() {
        let g = MultiGraph::new(GraphMeta::default());
        assert_eq!(g.to_dot(), "digraph G {\n}\n");
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn json_round_trip() {
        let mut g = cycle(3, 0);
        g.vertices[1].conductors = Some((1, 3));
        g.vertices[1].lattice = Some(LatticeData {
            basis: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            den: 2,
        });
        g.edges[0].class = Some(EdgePair(EdgeKind::Horizontal, EdgeKind::Descending));
        g.canonicalize();
        let back = MultiGraph::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(g.to_dot().contains("label=\"HD\""));
    }

    #[test]
    fn tree_detection() {
        let mut g = MultiGraph::new(GraphMeta::default());
        for i in 0..4 {
            g.add_vertex(Vertex::plain(format!("{i}")));
        }
        for (a, b) in [(0, 1), (0, 2), (2, 3)] {
            g.add_edge(a, b, 1, None);
            g.add_edge(b, a, 1, None);
        }
        assert!(g.is_tree());
        g.add_edge(1, 3, 1, None);
        assert!(!g.is_tree());
    }
}
