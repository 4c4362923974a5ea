//! Canonical graph6 strings for small unweighted graphs.
//!
//! Vertices are first split into classes by iterated degree refinement
//! (degree, then the multiset of neighbor classes, until stable). Classes
//! are ordered by their refinement signature, which depends only on the
//! isomorphism type. The canonical string is the lexicographically smallest
//! graph6 encoding among all orderings that list the classes in that order,
//! found by depth-first search with prefix pruning.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::io::encode_graph6;

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_MAX_N: usize = 10;

pub fn canonical_form(g: &WeightedGraph) -> Result<String> {
    if !g.is_unweighted() {
        return Err(Error::Precondition("canonical form needs an unweighted graph".into()));
    }
    if g.len() > CANON_MAX_N {
        return Err(Error::Precondition(format!(
            "canonical form is limited to {CANON_MAX_N} vertices, got {}",
            g.len()
        )));
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|x| g.neighbor_ids(x).fold(0, |acc, v| acc | (1 << v)))
        .collect();
    Ok(canonical_from_masks(&adj))
}

/// Canonical graph6 string of the graph with adjacency bitmasks `adj`.
pub(crate) fn canonical_from_masks(adj: &[u32]) -> String {
    let n = adj.len();
    let colors = refine(adj);
    let mut slots: Vec<u32> = colors.clone();
    slots.sort_unstable();

    let mut search = Search {
        adj,
        colors: &colors,
        slots: &slots,
        perm: Vec::with_capacity(n),
        used: 0,
        cols: Vec::with_capacity(n),
        best: None,
    };
    search.dfs(true);
    let best = search.best.expect("at least one ordering exists");
    let mut edges = Vec::new();
    for (j, &col) in best.iter().enumerate() {
        for i in 0..j {
            if col & (1 << (j - 1 - i)) != 0 {
                edges.push((i, j));
            }
        }
    }
    encode_graph6(n, &edges)
}

/// Stable vertex classes from iterated degree refinement.
fn refine(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut colors: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut classes = count_classes(&colors);
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> =
                    (0..n).filter(|&w| adj[v] & (1 << w) != 0).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u32)
            .collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    adj: &'a [u32],
    colors: &'a [u32],
    /// Class required at each position.
    slots: &'a [u32],
    perm: Vec<usize>,
    used: u32,
    /// Column `j` of the upper triangle, bit `j-1-i` set when positions `i, j` are adjacent.
    cols: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    /// `equal_prefix`: the placed columns coincide with the incumbent's.
    /// Returns whether the incumbent was replaced inside this subtree.
    fn dfs(&mut self, mut equal_prefix: bool) -> bool {
        let j = self.perm.len();
        if j == self.adj.len() {
            if self.best.is_none() || !equal_prefix {
                self.best = Some(self.cols.clone());
                return true;
            }
            return false;
        }
        let mut improved = false;
        for v in 0..self.adj.len() {
            if self.used & (1 << v) != 0 || self.colors[v] != self.slots[j] {
                continue;
            }
            let mut col = 0u32;
            for (i, &u) in self.perm.iter().enumerate() {
                if self.adj[u] & (1 << v) != 0 {
                    col |= 1 << (j - 1 - i);
                }
            }
            let child_equal = match &self.best {
                Some(best) if equal_prefix => {
                    if col > best[j] {
                        continue;
                    }
                    col == best[j]
                }
                Some(_) => false,
                None => true,
            };
            self.perm.push(v);
            self.used |= 1 << v;
            self.cols.push(col);
            if self.dfs(child_equal) {
                improved = true;
                equal_prefix = true;
            }
            self.cols.pop();
            self.used &= !(1 << v);
            self.perm.pop();
        }
        improved
    }
}
