//! Generators for the named graph families. Vertices are labeled
//! `"0".."n-1"` and every generator is deterministic.

use crate::error::{Error, Result};
use crate::graph::{Laplacian, Vertex, WeightedGraph};

fn build(n: usize, edges: &[(Vertex, Vertex)], preset: Laplacian) -> WeightedGraph {
    WeightedGraph::unweighted(n, edges, preset).expect("family generators produce valid graphs")
}

fn check_preset(preset: Laplacian) -> Result<()> {
    if preset == Laplacian::Custom {
        Err(Error::Precondition("family generators support normalized and non-normalized presets".into()))
    } else {
        Ok(())
    }
}

/// Path on `k >= 1` vertices.
pub fn path(k: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if k < 1 {
        return Err(Error::Precondition("path needs k >= 1".into()));
    }
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Ok(build(k, &edges, preset))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if n < 3 {
        return Err(Error::Precondition(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(build(n, &edges, preset))
}

/// Star with `n >= 2` vertices in total: center `0` joined to `n - 1` leaves.
pub fn star(n: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if n < 2 {
        return Err(Error::Precondition(format!("star needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Ok(build(n, &edges, preset))
}

pub fn complete(n: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if n < 1 {
        return Err(Error::Precondition("complete graph needs n >= 1".into()));
    }
    let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    Ok(build(n, &edges, preset))
}

/// `d`-dimensional hypercube; vertices adjacent when their indices differ in one bit.
pub fn hypercube(d: u32, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if !(1..=16).contains(&d) {
        return Err(Error::Precondition(format!("hypercube dimension must be in 1..=16, got {d}")));
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|&(u, w)| u < w))
        .collect();
    Ok(build(n, &edges, preset))
}

/// `K_{1,3}` (center `0`, leaves `1, 2, 3`) with `i` leaf-leaf edges added in
/// the order 1-2, 2-3, 1-3. `star3_plus(3)` is `K_4`.
pub fn star3_plus(i: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if !(1..=3).contains(&i) {
        return Err(Error::Precondition(format!("star3-plus takes i in 1..=3, got {i}")));
    }
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    edges.extend([(1, 2), (2, 3), (1, 3)].into_iter().take(i));
    Ok(build(4, &edges, preset))
}

/// `K_{1,3}` (center `0`, leaves `1, 2, 3`) with a pendant vertex `3 + j`
/// hung on leaf `j` for `j = 1..=i`: a tree with `i` legs of length two.
pub fn star3_subdivided(i: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if !(1..=3).contains(&i) {
        return Err(Error::Precondition(format!("star3-subdivided takes i in 1..=3, got {i}")));
    }
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    edges.extend((1..=i).map(|j| (j, 3 + j)));
    Ok(build(4 + i, &edges, preset))
}

/// Triangle `0, 1, 2` with pendant vertex `3` attached to `0`.
pub fn paw(preset: Laplacian) -> WeightedGraph {
    build(4, &[(0, 1), (0, 2), (1, 2), (0, 3)], preset)
}

/// `k` triangles sharing the center `0`; triangle `i` uses leaves `2i-1, 2i`.
pub fn friendship(k: usize, preset: Laplacian) -> Result<WeightedGraph> {
    check_preset(preset)?;
    if k < 1 {
        return Err(Error::Precondition("friendship graph needs k >= 1".into()));
    }
    let mut edges = Vec::with_capacity(3 * k);
    for i in 1..=k {
        let (a, b) = (2 * i - 1, 2 * i);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    Ok(build(2 * k + 1, &edges, preset))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i`-`i+5`.
pub fn petersen(preset: Laplacian) -> WeightedGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    build(10, &edges, preset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::canonical_form;

    const NN: Laplacian = Laplacian::NonNormalized;

    fn degrees(g: &WeightedGraph) -> Vec<usize> {
        let mut d: Vec<_> = g.vertices().map(|x| g.degree(x)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn basic_families() {
        let p1 = path(1, NN).unwrap();
        assert_eq!((p1.len(), p1.edge_count()), (1, 0));
        let c5 = cycle(5, NN).unwrap();
        assert_eq!((c5.len(), c5.edge_count(), c5.girth()), (5, 5, Some(5)));
        let s4 = star(4, NN).unwrap();
        assert_eq!(degrees(&s4), vec![3, 1, 1, 1]);
        let q3 = hypercube(3, NN).unwrap();
        assert_eq!((q3.len(), q3.edge_count()), (8, 12));
        assert!(q3.vertices().all(|x| q3.degree(x) == 3));
        assert!(cycle(2, NN).is_err());
        assert!(star(1, NN).is_err());
        assert!(path(0, NN).is_err());
        assert!(path(3, Laplacian::Custom).is_err());
    }

    #[test]
    fn star3_variants() {
        let s1 = star3_plus(1, NN).unwrap();
        assert_eq!((s1.len(), s1.edge_count()), (4, 4));
        let triangles = |g: &WeightedGraph| {
            let mut t = 0;
            for a in 0..4 {
                for b in a + 1..4 {
                    for c in b + 1..4 {
                        if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                            t += 1;
                        }
                    }
                }
            }
            t
        };
        assert_eq!(triangles(&s1), 1);
        let s2 = star3_plus(2, NN).unwrap();
        assert_eq!((s2.len(), s2.edge_count(), triangles(&s2)), (4, 5, 2));
        assert!(s2.has_edge(0, 2) && s2.has_edge(1, 2) && s2.has_edge(2, 3));
        assert_eq!(star3_plus(3, NN).unwrap(), complete(4, NN).unwrap());
        assert!(star3_plus(0, NN).is_err() && star3_plus(4, NN).is_err());

        assert!(s1.is_c4_free());
        assert!(!s2.is_c4_free());
        assert!(!star3_plus(3, NN).unwrap().is_c4_free());
    }

    #[test]
    fn paw_shape() {
        let p = paw(NN);
        assert_eq!(degrees(&p), vec![3, 2, 2, 1]);
        assert_eq!(p.girth(), Some(3));
        assert!(p.is_c4_free());
    }

    #[test]
    fn friendship_shape() {
        let f7 = friendship(7, NN).unwrap();
        assert_eq!((f7.len(), f7.degree(0)), (15, 14));
        let f2 = friendship(2, NN).unwrap();
        assert_eq!((f2.len(), f2.edge_count()), (5, 6));
        for k in 1..=20 {
            assert!(friendship(k, NN).unwrap().is_c4_free());
        }
    }

    #[test]
    fn generators_are_connected() {
        let mut all = vec![paw(NN), petersen(NN)];
        for k in 1..8 {
            all.push(path(k, NN).unwrap());
            all.push(star(k + 1, NN).unwrap());
            all.push(complete(k, NN).unwrap());
            all.push(friendship(k, NN).unwrap());
            all.push(cycle(k + 2, NN).unwrap());
            all.push(hypercube(k as u32, NN).unwrap());
        }
        for i in 1..=3 {
            all.push(star3_plus(i, NN).unwrap());
        }
        for g in &all {
            assert!(g.is_connected());
            assert!(g.is_unweighted());
        }
    }

    #[test]
    fn isomorphic_spot_checks() {
        assert_eq!(
            canonical_form(&friendship(1, NN).unwrap()).unwrap(),
            canonical_form(&cycle(3, NN).unwrap()).unwrap()
        );
        assert_eq!(
            canonical_form(&star3_plus(3, NN).unwrap()).unwrap(),
            canonical_form(&complete(4, NN).unwrap()).unwrap()
        );
        let p = petersen(NN);
        assert!(p.vertices().all(|x| p.degree(x) == 3));
        assert_eq!(p.girth(), Some(5));
    }

    #[test]
    fn subdivided_three_stars_are_trees() {
        for i in 1..=3 {
            let g = star3_subdivided(i, NN).unwrap();
            assert_eq!((g.len(), g.edge_count()), (4 + i, 3 + i));
            assert!(g.is_connected() && g.girth().is_none());
            assert_eq!(g.degree(0), 3);
        }
        assert!(star3_subdivided(0, NN).is_err());
        assert!(star3_subdivided(4, NN).is_err());
    }
}
