//! Weighted graphs and the structural primitives used around a vertex:
//! spheres, girth, C4-freeness, punctured two-ball components.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex handle: position in the graph's sorted vertex list.
pub type Vertex = usize;

/// Choice of vertex measure `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Laplacian {
    /// `m_x = μ_x`, the sum of incident edge weights.
    Normalized,
    /// `m ≡ 1`.
    NonNormalized,
    /// Vertex measures supplied explicitly.
    Custom,
}

impl Laplacian {
    pub fn name(self) -> &'static str {
        match self {
            Laplacian::Normalized => "normalized",
            Laplacian::NonNormalized => "non-normalized",
            Laplacian::Custom => "custom",
        }
    }
}

impl fmt::Display for Laplacian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Laplacian {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(Laplacian::Normalized),
            "non-normalized" => Ok(Laplacian::NonNormalized),
            "custom" => Ok(Laplacian::Custom),
            other => Err(Error::Precondition(format!("unknown Laplacian preset `{other}`"))),
        }
    }
}

/// Compares identifiers so that embedded digit runs sort numerically
/// ("2" < "10", "v9" < "v10"). Falls back to byte order on ties.
pub fn compare_labels(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        while start < bytes.len() {
            let digit = bytes[start].is_ascii_digit();
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() == digit {
                end += 1;
            }
            out.push((digit, &s[start..end]));
            start = end;
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = match (da, db) {
            (true, true) => {
                let ta = sa.trim_start_matches('0');
                let tb = sb.trim_start_matches('0');
                ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
            }
            _ => sa.cmp(sb),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Finite simple undirected graph with positive edge weights and vertex
/// measures. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    /// Sorted by neighbor.
    adjacency: Vec<Vec<(Vertex, f64)>>,
    measure: Vec<f64>,
    preset: Laplacian,
}

/// Accumulates vertices, edges, and measures before validation.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: BTreeSet<String>,
    edges: Vec<(String, String, f64)>,
    measures: Vec<(String, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, label: impl Into<String>) -> &mut Self {
        self.vertices.insert(label.into());
        self
    }

    pub fn edge(&mut self, u: impl Into<String>, v: impl Into<String>, weight: f64) -> &mut Self {
        let (u, v) = (u.into(), v.into());
        self.vertices.insert(u.clone());
        self.vertices.insert(v.clone());
        self.edges.push((u, v, weight));
        self
    }

    pub fn measure(&mut self, u: impl Into<String>, m: f64) -> &mut Self {
        let u = u.into();
        self.vertices.insert(u.clone());
        self.measures.push((u, m));
        self
    }

    pub fn build(&self, preset: Laplacian) -> Result<WeightedGraph> {
        let mut labels: Vec<String> = self.vertices.iter().cloned().collect();
        labels.sort_by(|a, b| compare_labels(a, b));
        let index: HashMap<String, Vertex> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let n = labels.len();
        let mut adjacency: Vec<Vec<(Vertex, f64)>> = vec![Vec::new(); n];
        for (u, v, w) in &self.edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at `{u}`")));
            }
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge `{u}`-`{v}` has non-positive or non-finite weight {w}"
                )));
            }
            let (iu, iv) = (index[u], index[v]);
            if adjacency[iu].iter().any(|&(t, _)| t == iv) {
                return Err(Error::InvalidGraph(format!("parallel edge `{u}`-`{v}`")));
            }
            adjacency[iu].push((iv, *w));
            adjacency[iv].push((iu, *w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|&(v, _)| v);
        }

        let measure = match preset {
            Laplacian::Custom => {
                let mut measure = vec![f64::NAN; n];
                for (u, m) in &self.measures {
                    if !(m.is_finite() && *m > 0.0) {
                        return Err(Error::InvalidGraph(format!(
                            "vertex `{u}` has non-positive or non-finite measure {m}"
                        )));
                    }
                    measure[index[u]] = *m;
                }
                if let Some(i) = measure.iter().position(|m| m.is_nan()) {
                    return Err(Error::InvalidGraph(format!(
                        "custom preset requires a measure for every vertex; `{}` has none",
                        labels[i]
                    )));
                }
                measure
            }
            _ if !self.measures.is_empty() => {
                return Err(Error::InvalidGraph(format!(
                    "vertex measures are only allowed with the custom preset, not {preset}"
                )));
            }
            _ => derive_measure(&adjacency, preset),
        };
        Ok(WeightedGraph { labels, index, adjacency, measure, preset })
    }
}

fn derive_measure(adjacency: &[Vec<(Vertex, f64)>], preset: Laplacian) -> Vec<f64> {
    adjacency
        .iter()
        .map(|nbrs| match preset {
            Laplacian::Normalized if !nbrs.is_empty() => nbrs.iter().map(|(_, w)| w).sum(),
            // Isolated vertices keep measure 1 under every preset.
            _ => 1.0,
        })
        .collect()
}

/// Vertices at distance one and two from a center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallDecomposition {
    pub center: Vertex,
    pub s1: Vec<Vertex>,
    pub s2: Vec<Vertex>,
    /// Coordinate of each member of `s1` then `s2`.
    pub index: HashMap<Vertex, usize>,
}

impl BallDecomposition {
    pub fn len(&self) -> usize {
        self.s1.len() + self.s2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s1.is_empty()
    }

    /// Coordinates in order: `s1` followed by `s2`.
    pub fn coordinates(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.s1.iter().chain(&self.s2).copied()
    }
}

/// One connected component of the punctured two-ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BallComponent {
    /// Members in the first sphere.
    pub r: usize,
    /// Members in the second sphere.
    pub s: usize,
}

impl WeightedGraph {
    /// Unweighted graph on vertices labeled `"0".."n-1"`.
    pub fn unweighted(n: usize, edges: &[(Vertex, Vertex)], preset: Laplacian) -> Result<Self> {
        if preset == Laplacian::Custom {
            return Err(Error::Precondition("custom preset needs explicit measures".into()));
        }
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.vertex(i.to_string());
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(u.max(v).to_string()));
            }
            b.edge(u.to_string(), v.to_string(), 1.0);
        }
        b.build(preset)
    }

    /// Same graph and weights under another preset. Switching to `Custom`
    /// keeps the current measures.
    pub fn with_preset(&self, preset: Laplacian) -> WeightedGraph {
        let measure = match preset {
            Laplacian::Custom => self.measure.clone(),
            _ => derive_measure(&self.adjacency, preset),
        };
        WeightedGraph { measure, preset, ..self.clone() }
    }

    /// Multiplies every edge weight by `c > 0`; derived measures follow the preset.
    pub fn scale_weights(&self, c: f64) -> Result<WeightedGraph> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Precondition(format!("scale factor must be positive, got {c}")));
        }
        let adjacency: Vec<Vec<(Vertex, f64)>> = self
            .adjacency
            .iter()
            .map(|nbrs| nbrs.iter().map(|&(v, w)| (v, w * c)).collect())
            .collect();
        let measure = match self.preset {
            Laplacian::Custom => self.measure.clone(),
            p => derive_measure(&adjacency, p),
        };
        Ok(WeightedGraph { adjacency, measure, ..self.clone() })
    }

    /// Replaces the weight of the edge `u`-`v`.
    pub fn with_edge_weight(&self, u: Vertex, v: Vertex, weight: f64) -> Result<WeightedGraph> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidGraph(format!("non-positive weight {weight}")));
        }
        if !self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("no edge {u}-{v}")));
        }
        let mut g = self.clone();
        for (a, b) in [(u, v), (v, u)] {
            for e in &mut g.adjacency[a] {
                if e.0 == b {
                    e.1 = weight;
                }
            }
        }
        if g.preset != Laplacian::Custom {
            g.measure = derive_measure(&g.adjacency, g.preset);
        }
        Ok(g)
    }

    /// Replaces all vertex measures and switches to the custom preset.
    pub fn with_measures(&self, measure: Vec<f64>) -> Result<WeightedGraph> {
        if measure.len() != self.len() {
            return Err(Error::DimensionMismatch("one measure per vertex required".into()));
        }
        if let Some(m) = measure.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(Error::InvalidGraph(format!("non-positive measure {m}")));
        }
        Ok(WeightedGraph { measure, preset: Laplacian::Custom, ..self.clone() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn preset(&self) -> Laplacian {
        self.preset
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.len()
    }

    pub fn label(&self, x: Vertex) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub(crate) fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(x.to_string()))
        }
    }

    /// Neighbors of `x` with edge weights, sorted by neighbor.
    pub fn neighbors(&self, x: Vertex) -> &[(Vertex, f64)] {
        &self.adjacency[x]
    }

    pub fn neighbor_ids(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[x].iter().map(|&(v, _)| v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search_by_key(&v, |&(t, _)| t).is_ok()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<f64> {
        let nbrs = &self.adjacency[u];
        nbrs.binary_search_by_key(&v, |&(t, _)| t).ok().map(|i| nbrs[i].1)
    }

    /// Edges `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter().filter(move |&&(v, _)| v > u).map(move |&(v, w)| (u, v, w))
        })
    }

    pub fn measure(&self, x: Vertex) -> f64 {
        self.measure[x]
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges().all(|(_, _, w)| w == 1.0)
    }

    /// Number of incident edges.
    pub fn degree(&self, x: Vertex) -> usize {
        self.adjacency[x].len()
    }

    /// Sum of incident edge weights.
    pub fn mu(&self, x: Vertex) -> f64 {
        self.adjacency[x].iter().map(|&(_, w)| w).sum()
    }

    /// `D_x = μ_x / m_x`.
    pub fn weighted_degree(&self, x: Vertex) -> f64 {
        self.mu(x) / self.measure[x]
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|x| self.degree(x)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|x| self.degree(x)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        self.distances_from(0, None).iter().all(Option::is_some)
    }

    /// BFS distances from `source`, optionally ignoring one undirected edge.
    fn distances_from(&self, source: Vertex, skip: Option<(Vertex, Vertex)>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbor_ids(u) {
                if let Some((a, b)) = skip {
                    if (u, v) == (a, b) || (u, v) == (b, a) {
                        continue;
                    }
                }
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn ball_decomposition(&self, x: Vertex) -> Result<BallDecomposition> {
        self.check_vertex(x)?;
        let s1: Vec<Vertex> = self.neighbor_ids(x).collect();
        let mut s2 = BTreeSet::new();
        for &y in &s1 {
            for z in self.neighbor_ids(y) {
                if z != x && !self.has_edge(x, z) {
                    s2.insert(z);
                }
            }
        }
        let s2: Vec<Vertex> = s2.into_iter().collect();
        let index = s1.iter().chain(&s2).enumerate().map(|(i, &v)| (v, i)).collect();
        Ok(BallDecomposition { center: x, s1, s2, index })
    }

    /// Length of the shortest cycle through `x`, `None` when there is none.
    pub fn girth_at(&self, x: Vertex) -> Result<Option<usize>> {
        self.check_vertex(x)?;
        Ok(self
            .neighbor_ids(x)
            .filter_map(|u| self.distances_from(x, Some((x, u)))[u].map(|d| d + 1))
            .min())
    }

    /// Minimum cycle length, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        self.vertices().filter_map(|x| self.girth_at(x).unwrap()).min()
    }

    /// No two distinct vertices share two common neighbors.
    pub fn is_c4_free(&self) -> bool {
        let mut seen = HashMap::new();
        for w in self.vertices() {
            let nbrs = &self.adjacency[w];
            for (i, &(a, _)) in nbrs.iter().enumerate() {
                for &(b, _) in &nbrs[i + 1..] {
                    if seen.insert((a, b), w).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn has_triangle_through(&self, x: Vertex) -> Result<bool> {
        self.check_vertex(x)?;
        let nbrs = &self.adjacency[x];
        Ok(nbrs
            .iter()
            .enumerate()
            .any(|(i, &(a, _))| nbrs[i + 1..].iter().any(|&(b, _)| self.has_edge(a, b))))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.vertices().all(|x| !self.has_triangle_through(x).unwrap())
    }

    /// Components of the punctured two-ball around `x`, built from edges
    /// inside the first sphere and edges between the two spheres. Ordered
    /// by their first coordinate.
    pub fn punctured_ball_components(&self, x: Vertex) -> Result<Vec<BallComponent>> {
        let ball = self.ball_decomposition(x)?;
        let r1 = ball.s1.len();
        let total = ball.len();
        let mut comp = vec![usize::MAX; total];
        let mut out = Vec::new();
        for start in 0..total {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut counts = BallComponent { r: 0, s: 0 };
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                if i < r1 {
                    counts.r += 1;
                } else {
                    counts.s += 1;
                }
                let v = if i < r1 { ball.s1[i] } else { ball.s2[i - r1] };
                for w in self.neighbor_ids(v) {
                    let Some(&j) = ball.index.get(&w) else { continue };
                    // Edges inside the second sphere do not count.
                    if i >= r1 && j >= r1 {
                        continue;
                    }
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        stack.push(j);
                    }
                }
            }
            out.push(counts);
        }
        Ok(out)
    }

    /// Lengths `k >= k_min` of induced cycles, by exhaustive subset search.
    pub fn induced_cycle_lengths(&self, k_min: usize) -> Result<BTreeSet<usize>> {
        const MAX_VERTICES: usize = 20;
        let n = self.len();
        if n > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "induced cycle search is exhaustive and limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        let adj: Vec<u32> = self
            .vertices()
            .map(|x| self.neighbor_ids(x).fold(0u32, |acc, v| acc | (1 << v)))
            .collect();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1u32 << n) {
            let k = mask.count_ones() as usize;
            if k < k_min.max(3) || out.contains(&k) {
                continue;
            }
            let two_regular = (0..n)
                .filter(|&v| mask & (1 << v) != 0)
                .all(|v| (adj[v] & mask).count_ones() == 2);
            if !two_regular {
                continue;
            }
            // 2-regular and connected means a single cycle.
            let first = mask.trailing_zeros();
            let mut reached = 1u32 << first;
            let mut frontier = reached;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[v] & mask & !reached;
                reached |= new;
                frontier |= new;
            }
            if reached == mask {
                out.insert(k);
            }
        }
        Ok(out)
    }
}
