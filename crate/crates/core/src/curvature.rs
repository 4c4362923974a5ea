//! Bakry-Émery curvature `K(G, x; N)` at a vertex.
//!
//! With `f(x) = 0` fixed (all operators are invariant under adding a
//! constant), `Γ₂(f)(x)`, `Γ(f)(x)` and `Δf(x)` are quadratic and linear
//! forms in the values of `f` on the first and second spheres around `x`.
//! The curvature is the smallest eigenvalue of the pencil
//! `(Q₂ − (1/N)·δδᵀ, Γ)`. `Γ` only sees the first sphere, and the
//! second-sphere block of `Q₂` is a positive diagonal, so the second-sphere
//! coordinates are eliminated exactly by a Schur complement and the pencil
//! becomes an ordinary symmetric eigenproblem after diagonal congruence.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{BallDecomposition, Laplacian, Vertex, WeightedGraph};
use crate::linalg::{self, Matrix, SymMatrix};
use crate::operators::{gamma2_bochner_at, gamma_at, laplacian_at, VertexFunction};

/// Sign threshold used for "satisfies CD(0, ∞)" decisions: `K ≥ −1e-9`.
pub const CD_TOLERANCE: f64 = 1e-9;

/// Dimension parameter `N ∈ (0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dimension {
    Finite(f64),
    Infinite,
}

impl Dimension {
    pub fn finite(n: f64) -> Result<Self> {
        if n.is_finite() && n > 0.0 {
            Ok(Dimension::Finite(n))
        } else if n == f64::INFINITY {
            Ok(Dimension::Infinite)
        } else {
            Err(Error::InvalidDimension(n))
        }
    }

    /// `1/N`, zero for `N = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Dimension::Finite(n) => 1.0 / n,
            Dimension::Infinite => 0.0,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Dimension::Finite(n) => n,
            Dimension::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "∞" => Ok(Dimension::Infinite),
            other => {
                let n: f64 = other
                    .parse()
                    .map_err(|_| Error::Precondition(format!("invalid dimension `{other}`")))?;
                Dimension::finite(n)
            }
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(n) => s.serialize_f64(*n),
            Dimension::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Serializes finite values as numbers and infinities as `"inf"` / `"-inf"`.
pub fn serialize_extended<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else if *v < 0.0 {
        s.serialize_str("-inf")
    } else {
        s.serialize_str("nan")
    }
}

/// Quadratic and linear forms at a vertex, with `f(x) = 0`, in the
/// coordinates of a [`BallDecomposition`] (first sphere, then second).
#[derive(Debug, Clone)]
pub struct LocalForms {
    pub decomposition: BallDecomposition,
    /// `fᵀ·q2·f = Γ₂(f)(x)`.
    pub q2: SymMatrix,
    /// `Γ(f)(x) = Σ gamma1[i]·f_i²` over the first sphere; entries `μ_xy / 2m_x`.
    pub gamma1: Vec<f64>,
    /// `Δf(x) = delta_vec · f|S₁`; entries `μ_xy / m_x`.
    pub delta_vec: Vec<f64>,
}

impl LocalForms {
    fn r(&self) -> usize {
        self.decomposition.s1.len()
    }

    /// Coordinates of `f` (relative to `f(x)`) in this ball.
    pub fn coordinates_of(&self, f: &VertexFunction) -> Vec<f64> {
        let fx = f.get(self.decomposition.center);
        self.decomposition.coordinates().map(|v| f.get(v) - fx).collect()
    }
}

pub fn assemble_local_forms(g: &WeightedGraph, x: Vertex) -> Result<LocalForms> {
    let ball = g.ball_decomposition(x)?;
    if ball.is_empty() {
        return Err(Error::IsolatedVertex(g.label(x).to_string()));
    }
    let mx = g.measure(x);
    let dx = g.weighted_degree(x);
    let mut q2 = SymMatrix::zeros(ball.len());
    let mut gamma1 = Vec::with_capacity(ball.s1.len());
    let mut delta_vec = Vec::with_capacity(ball.s1.len());

    for (a, &y) in ball.s1.iter().enumerate() {
        let wxy = g.weight(x, y).expect("s1 holds neighbors");
        let my = g.measure(y);
        // |D²f|² with f(x) = 0: the squared term is (−2f(y) + f(z))².
        for &(z, wyz) in g.neighbors(y) {
            let c = 0.25 * wxy * wyz / (mx * my);
            q2.add(a, a, 4.0 * c);
            if z != x {
                let b = ball.index[&z];
                q2.add(b, b, c);
                q2.add(a, b, -2.0 * c);
            }
        }
        q2.add(a, a, -0.25 * wxy / mx * (dx + g.weighted_degree(y)));
        gamma1.push(0.5 * wxy / mx);
        delta_vec.push(wxy / mx);
    }
    for (a, &da) in delta_vec.iter().enumerate() {
        for (b, &db) in delta_vec.iter().enumerate().skip(a) {
            q2.add(a, b, 0.5 * da * db);
        }
    }
    Ok(LocalForms { decomposition: ball, q2, gamma1, delta_vec })
}

/// Curvature at a single vertex.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureResult {
    pub vertex: Vertex,
    /// `K(G, x; N)`; `+∞` at isolated vertices.
    #[serde(serialize_with = "serialize_extended")]
    pub k: f64,
    /// Minimizer of `(Γ₂ − (1/N)(Δ·)²)/Γ` on `B₂(x)`, scaled to `Γ(w)(x) = 1`,
    /// with `w(x) = 0`. Absent when `k` is infinite.
    pub witness: Option<VertexFunction>,
    pub dimension: Dimension,
    pub preset: Laplacian,
}

pub fn curvature(g: &WeightedGraph, x: Vertex, n: Dimension) -> Result<CurvatureResult> {
    let forms = match assemble_local_forms(g, x) {
        Ok(forms) => forms,
        Err(Error::IsolatedVertex(_)) => {
            return Ok(CurvatureResult {
                vertex: x,
                k: f64::INFINITY,
                witness: None,
                dimension: n,
                preset: g.preset(),
            })
        }
        Err(e) => return Err(e),
    };
    let (k, witness) = curvature_from_forms(&forms, n)?;
    Ok(CurvatureResult { vertex: x, k, witness: Some(witness), dimension: n, preset: g.preset() })
}

fn curvature_from_forms(forms: &LocalForms, n: Dimension) -> Result<(f64, VertexFunction)> {
    let r = forms.r();
    let s = forms.decomposition.s2.len();
    let inv_n = n.reciprocal();

    let mut a = forms.q2.submatrix(&(0..r).collect::<Vec<_>>());
    if inv_n != 0.0 {
        for i in 0..r {
            for j in i..r {
                a.add(i, j, -inv_n * forms.delta_vec[i] * forms.delta_vec[j]);
            }
        }
    }

    let mut b = Matrix::zeros(r, s);
    for i in 0..r {
        for j in 0..s {
            b.set(i, j, forms.q2.get(i, r + j));
        }
    }
    let d: Vec<f64> = (0..s).map(|j| forms.q2.get(r + j, r + j)).collect();
    for i in 0..s {
        for j in (i + 1)..s {
            if forms.q2.get(r + i, r + j) != 0.0 {
                return Err(Error::Precondition("second-sphere block of the Γ₂ form is not diagonal".into()));
            }
        }
    }
    let reduced = if s == 0 { a } else { linalg::schur_reduce(&a, &b, &d)? };
    let pencil = linalg::congruence_diag(&reduced, &forms.gamma1)?;
    let eig = linalg::eigen_sym(&pencil)?;

    // Undo the congruence, then lift to the second sphere by its minimizer −D⁻¹Bᵀu.
    let u: Vec<f64> = eig.vectors[0].iter().zip(&forms.gamma1).map(|(v, g)| v / g.sqrt()).collect();
    let lifted: Vec<f64> =
        (0..s).map(|j| -(0..r).map(|i| b.get(i, j) * u[i]).sum::<f64>() / d[j]).collect();
    Ok((eig.values[0], witness_function(forms, &u, &lifted)))
}

fn witness_function(forms: &LocalForms, s1_values: &[f64], s2_values: &[f64]) -> VertexFunction {
    let ball = &forms.decomposition;
    let mut w: VertexFunction = ball
        .s1
        .iter()
        .copied()
        .zip(s1_values.iter().copied())
        .chain(ball.s2.iter().copied().zip(s2_values.iter().copied()))
        .collect();
    w.set(ball.center, 0.0);
    w
}

/// Curvature for each dimension in `ns`, in order.
pub fn curvature_profile(g: &WeightedGraph, x: Vertex, ns: &[Dimension]) -> Result<Vec<CurvatureResult>> {
    let forms = match assemble_local_forms(g, x) {
        Ok(f) => Some(f),
        Err(Error::IsolatedVertex(_)) => None,
        Err(e) => return Err(e),
    };
    ns.iter()
        .map(|&n| match &forms {
            None => curvature(g, x, n),
            Some(forms) => {
                let (k, w) = curvature_from_forms(forms, n)?;
                Ok(CurvatureResult { vertex: x, k, witness: Some(w), dimension: n, preset: g.preset() })
            }
        })
        .collect()
}

/// Curvature at every vertex, in vertex order. Vertices are processed in parallel.
pub fn curvature_all(g: &WeightedGraph, n: Dimension) -> Result<Vec<CurvatureResult>> {
    g.vertices().into_par_iter().map(|x| curvature(g, x, n)).collect()
}

/// Outcome of a graph-wide `CD(K, N)` check.
#[derive(Debug, Clone, Serialize)]
pub struct CdReport {
    pub holds: bool,
    /// Minimum curvature over all vertices (`+∞` for edgeless graphs).
    #[serde(serialize_with = "serialize_extended")]
    pub min_k: f64,
    /// Vertex attaining `min_k` (first in vertex order), reported on failure.
    pub violating_vertex: Option<Vertex>,
    pub witness: Option<VertexFunction>,
}

pub fn check_cd(g: &WeightedGraph, k: f64, n: Dimension, tol: f64) -> Result<CdReport> {
    let results = curvature_all(g, n)?;
    let worst = results.iter().min_by(|a, b| a.k.total_cmp(&b.k));
    let min_k = worst.map_or(f64::INFINITY, |r| r.k);
    let holds = min_k >= k - tol;
    let (violating_vertex, witness) = match worst {
        Some(r) if !holds => (Some(r.vertex), r.witness.clone()),
        _ => (None, None),
    };
    Ok(CdReport { holds, min_k, violating_vertex, witness })
}

/// Result of the first-sphere-only `CD(0, ∞)` test for C4-free graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedCheck {
    pub holds: bool,
    #[serde(serialize_with = "serialize_extended")]
    pub min_eigenvalue: f64,
}

/// `CD(0, ∞)` at `x` for unweighted normalized C4-free graphs, using the form
///
/// ```text
/// Σ_{y,z∈S₁, y∼z} (d_x/d_y)(2f(y) − f(z))² + 4Σ_{y∈S₁} (d_x/d_y) f(y)²
///     + 2(Σ_y f(y))² − 2d_x Σ_y f(y)²
/// ```
///
/// obtained by setting `f(z) = 2f(y)` on each second-sphere vertex `z`,
/// which has a unique first-sphere neighbor `y` when the graph is C4-free.
pub fn reduced_c4free_check(g: &WeightedGraph, x: Vertex) -> Result<ReducedCheck> {
    g.check_vertex(x)?;
    if g.preset() != Laplacian::Normalized || !g.is_unweighted() {
        return Err(Error::Precondition("reduced check needs an unweighted normalized graph".into()));
    }
    if !g.is_c4_free() {
        return Err(Error::Precondition("reduced check needs a C4-free graph".into()));
    }
    let s1: Vec<Vertex> = g.neighbor_ids(x).collect();
    if s1.is_empty() {
        return Ok(ReducedCheck { holds: true, min_eigenvalue: f64::INFINITY });
    }
    let r = s1.len();
    let dx = r as f64;
    let mut q = SymMatrix::zeros(r);
    for (a, &y) in s1.iter().enumerate() {
        let ratio = dx / g.degree(y) as f64;
        for (b, &z) in s1.iter().enumerate() {
            if g.has_edge(y, z) {
                q.add(a, a, 4.0 * ratio);
                q.add(b, b, ratio);
                q.add(a, b, -2.0 * ratio);
            }
        }
        q.add(a, a, 4.0 * ratio - 2.0 * dx);
        for b in a..r {
            q.add(a, b, 2.0);
        }
    }
    let min_eigenvalue = linalg::min_eigenvalue(&q)?;
    Ok(ReducedCheck { holds: min_eigenvalue >= -CD_TOLERANCE, min_eigenvalue })
}

/// `(Γ₂(f)(x) − (1/N)(Δf(x))²) / Γ(f)(x)` through the pointwise operators;
/// `None` when `Γ(f)(x) < 1e-12`.
pub fn curvature_ratio(g: &WeightedGraph, f: &VertexFunction, x: Vertex, n: Dimension) -> Option<f64> {
    let (num, den) = ratio_parts(g, f, x, n);
    (den >= 1e-12).then(|| num / den)
}

fn ratio_parts(g: &WeightedGraph, f: &VertexFunction, x: Vertex, n: Dimension) -> (f64, f64) {
    let lap = laplacian_at(g, f, x);
    let num = gamma2_bochner_at(g, f, x) - n.reciprocal() * lap * lap;
    (num, gamma_at(g, f, f, x))
}

/// Upper bound on `K(G, x; N)` from random test functions, computed with the
/// pointwise operators only. Deterministic for a fixed seed.
pub fn curvature_upper_bound_by_sampling(
    g: &WeightedGraph,
    x: Vertex,
    n: Dimension,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    curvature_upper_bound_by_sampling_with(g, x, n, trials, seed, &[])
}

/// As [`curvature_upper_bound_by_sampling`], with extra caller-supplied
/// candidates considered alongside the random samples.
pub fn curvature_upper_bound_by_sampling_with(
    g: &WeightedGraph,
    x: Vertex,
    n: Dimension,
    trials: usize,
    seed: u64,
    extra: &[VertexFunction],
) -> Result<f64> {
    const REFINEMENT_PASSES: usize = 20;
    let ball = g.ball_decomposition(x)?;
    let coords: Vec<Vertex> = ball.coordinates().collect();
    if ball.is_empty() {
        return Ok(f64::INFINITY);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut best_f = None;
    for _ in 0..trials {
        let mut f = VertexFunction::new();
        for &v in &coords {
            f.set(v, rng.gen_range(-1.0..=1.0));
        }
        if let Some(ratio) = curvature_ratio(g, &f, x, n) {
            if ratio < best {
                best = ratio;
                best_f = Some(f);
            }
        }
    }
    let Some(mut f) = best_f else {
        return Ok(extra_min(g, x, n, extra, best));
    };

    // Coordinate descent: along one coordinate both parts are exact
    // quadratics, so the 1-D minimizer of their ratio has a closed form.
    for _ in 0..REFINEMENT_PASSES {
        for &v in &coords {
            let t0 = f.get(v);
            let at = |t: f64| {
                let mut h = f.clone();
                h.set(v, t);
                ratio_parts(g, &h, x, n)
            };
            let ((nm, dm), (n0, d0), (np, dp)) = (at(t0 - 1.0), at(t0), at(t0 + 1.0));
            let (a, b, c) = (n0, 0.5 * (np - nm), 0.5 * (np + nm) - n0);
            let (d, e, q) = (d0, 0.5 * (dp - dm), 0.5 * (dp + dm) - d0);
            // d/ds [(a + bs + cs²)/(d + es + qs²)] = 0
            let (qa, qb, qc) = (c * e - b * q, 2.0 * (c * d - a * q), b * d - a * e);
            let mut candidates = Vec::new();
            if qa.abs() > 1e-300 {
                let disc = qb * qb - 4.0 * qa * qc;
                if disc >= 0.0 {
                    let sq = disc.sqrt();
                    candidates.push((-qb + sq) / (2.0 * qa));
                    candidates.push((-qb - sq) / (2.0 * qa));
                }
            } else if qb.abs() > 1e-300 {
                candidates.push(-qc / qb);
            }
            for s in candidates.into_iter().filter(|s| s.is_finite()) {
                let mut h = f.clone();
                h.set(v, t0 + s);
                if let Some(ratio) = curvature_ratio(g, &h, x, n) {
                    if ratio < best {
                        best = ratio;
                        f = h;
                    }
                }
            }
        }
    }
    Ok(extra_min(g, x, n, extra, best))
}

fn extra_min(g: &WeightedGraph, x: Vertex, n: Dimension, extra: &[VertexFunction], best: f64) -> f64 {
    extra
        .iter()
        .filter_map(|f| curvature_ratio(g, f, x, n))
        .fold(best, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::operators::{gamma, gamma2_bochner, laplacian};
    use crate::random::random_weighted_graph;

    const NN: Laplacian = Laplacian::NonNormalized;
    const NORM: Laplacian = Laplacian::Normalized;
    const INF: Dimension = Dimension::Infinite;

    fn fin(n: f64) -> Dimension {
        Dimension::finite(n).unwrap()
    }

    #[test]
    fn dimension_parsing() {
        assert_eq!("inf".parse::<Dimension>().unwrap(), INF);
        assert_eq!("2.5".parse::<Dimension>().unwrap(), fin(2.5));
        assert!("0".parse::<Dimension>().is_err());
        assert!("-1".parse::<Dimension>().is_err());
        assert!("abc".parse::<Dimension>().is_err());
        assert_eq!(Dimension::finite(f64::INFINITY).unwrap(), INF);
        assert!(Dimension::finite(f64::NAN).is_err());
    }

    #[test]
    fn p2_local_forms() {
        let g = families::path(2, NN).unwrap();
        let forms = assemble_local_forms(&g, 0).unwrap();
        assert_eq!(forms.q2.to_rows(), vec![vec![1.0]]);
        assert_eq!(forms.gamma1, vec![0.5]);
        assert_eq!(forms.delta_vec, vec![1.0]);
    }

    #[test]
    fn friendship_center_has_no_second_sphere() {
        let g = families::friendship(2, NORM).unwrap();
        let forms = assemble_local_forms(&g, 0).unwrap();
        assert_eq!(forms.q2.order(), 4);
        assert!(forms.decomposition.s2.is_empty());
    }

    #[test]
    fn local_forms_agree_with_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut graphs = vec![families::cycle(3, NN).unwrap(), families::petersen(NORM)];
        for _ in 0..30 {
            graphs.push(random_weighted_graph(&mut rng, 9, 0.4, (0.1, 10.0), None));
        }
        for g in &graphs {
            for x in g.vertices().filter(|&x| g.degree(x) > 0) {
                let forms = assemble_local_forms(g, x).unwrap();
                let r = forms.decomposition.s1.len();
                for j in r..forms.q2.order() {
                    assert!(forms.q2.get(j, j) > 0.0);
                    for i in r..j {
                        assert_eq!(forms.q2.get(i, j), 0.0);
                    }
                }
                assert!(forms.gamma1.iter().all(|&v| v > 0.0));
                for _ in 0..50 {
                    let f: VertexFunction = forms
                        .decomposition
                        .coordinates()
                        .map(|v| (v, rng.gen_range(-3.0..3.0)))
                        .collect();
                    let coords = forms.coordinates_of(&f);
                    let q = forms.q2.quadratic_form(&coords);
                    let b = gamma2_bochner(g, &f, x).unwrap();
                    assert!((q - b).abs() <= 1e-9 * (1.0 + b.abs()), "{q} vs {b}");
                    let lap: f64 = forms.delta_vec.iter().zip(&coords).map(|(d, c)| d * c).sum();
                    let want = laplacian(g, &f, x).unwrap();
                    assert!((lap - want).abs() <= 1e-9 * (1.0 + want.abs()));
                    let gm: f64 = forms.gamma1.iter().zip(&coords).map(|(d, c)| d * c * c).sum();
                    let want = gamma(g, &f, &f, x).unwrap();
                    assert!((gm - want).abs() <= 1e-9 * (1.0 + want.abs()));
                }
            }
        }
    }

    #[test]
    fn p2_closed_form() {
        for preset in [NN, NORM] {
            let g = families::path(2, preset).unwrap();
            assert!((curvature(&g, 0, INF).unwrap().k - 2.0).abs() < 1e-12);
            for n in [1.0, 2.0, 5.0] {
                let k = curvature(&g, 1, fin(n)).unwrap().k;
                assert!((k - (2.0 - 2.0 / n)).abs() < 1e-12);
            }
            let prof: Vec<f64> = curvature_profile(&g, 0, &[fin(1.0), fin(2.0), INF])
                .unwrap()
                .iter()
                .map(|r| r.k)
                .collect();
            assert!(prof.iter().zip([0.0, 1.0, 2.0]).all(|(a, b)| (a - b).abs() < 1e-12));
            let single = curvature_profile(&g, 0, &[fin(3.0)]).unwrap();
            assert_eq!(single.len(), 1);
            assert_eq!(single[0].k, curvature(&g, 0, fin(3.0)).unwrap().k);
        }
    }

    #[test]
    fn friendship_center_negative_non_normalized() {
        let g = families::friendship(2, NN).unwrap();
        assert!(curvature(&g, 0, INF).unwrap().k < -CD_TOLERANCE);
        let bound = curvature_upper_bound_by_sampling(&g, 0, INF, 100_000, 1).unwrap();
        assert!(bound < 0.0);
    }

    #[test]
    fn cycle5_normalized_nonnegative() {
        let g = families::cycle(5, NORM).unwrap();
        for x in g.vertices() {
            assert!(curvature(&g, x, INF).unwrap().k >= -CD_TOLERANCE);
        }
    }

    #[test]
    fn isolated_vertex_is_infinite() {
        let g = families::path(1, NN).unwrap();
        let r = curvature(&g, 0, INF).unwrap();
        assert_eq!(r.k, f64::INFINITY);
        assert!(r.witness.is_none());
        assert!(matches!(assemble_local_forms(&g, 0), Err(Error::IsolatedVertex(_))));
        assert_eq!(curvature_upper_bound_by_sampling(&g, 0, INF, 10, 0).unwrap(), f64::INFINITY);
        let report = check_cd(&g, 0.0, INF, CD_TOLERANCE).unwrap();
        assert!(report.holds);
        assert_eq!(report.min_k, f64::INFINITY);
    }

    #[test]
    fn witness_attains_curvature() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let g = random_weighted_graph(&mut rng, 8, 0.45, (0.1, 10.0), None);
            for n in [fin(1.0), fin(3.0), INF] {
                for x in g.vertices() {
                    let r = curvature(&g, x, n).unwrap();
                    let Some(w) = &r.witness else { continue };
                    assert_eq!(w.get(x), 0.0);
                    let gm = gamma(&g, w, w, x).unwrap();
                    assert!((gm - 1.0).abs() <= 1e-9);
                    let lap = laplacian(&g, w, x).unwrap();
                    let slack = gamma2_bochner(&g, w, x).unwrap() - n.reciprocal() * lap * lap - r.k * gm;
                    assert!(slack.abs() <= 1e-8, "slack {slack}");
                }
            }
        }
    }

    #[test]
    fn check_cd_examples() {
        assert!(check_cd(&families::paw(NN), 0.0, INF, CD_TOLERANCE).unwrap().holds);
        assert!(check_cd(&families::star(4, NN).unwrap(), 0.0, INF, CD_TOLERANCE).unwrap().holds);
        let f8 = families::friendship(8, NORM).unwrap();
        let report = check_cd(&f8, 0.0, INF, CD_TOLERANCE).unwrap();
        assert!(!report.holds);
        let v = report.violating_vertex.unwrap();
        assert_eq!(f8.degree(v), 2);
        let w = report.witness.unwrap();
        let ratio = curvature_ratio(&f8, &w, v, INF).unwrap();
        assert!(ratio < 0.0);
        assert!(check_cd(&f8, -1e6, INF, CD_TOLERANCE).unwrap().holds);
    }

    #[test]
    fn reduced_check_examples() {
        let c3 = families::cycle(3, NORM).unwrap();
        assert!(reduced_c4free_check(&c3, 0).unwrap().holds);
        let c5 = families::cycle(5, NORM).unwrap();
        assert!(c5.vertices().all(|x| reduced_c4free_check(&c5, x).unwrap().holds));
        let f8 = families::friendship(8, NORM).unwrap();
        assert!(!reduced_c4free_check(&f8, 1).unwrap().holds);
        assert!(reduced_c4free_check(&families::cycle(4, NORM).unwrap(), 0).is_err());
        assert!(reduced_c4free_check(&families::cycle(5, NN).unwrap(), 0).is_err());
    }

    #[test]
    fn friendship_violation_shape_from_the_c4free_argument() {
        // At a degree-2 vertex x with neighbors y (high degree) and z (degree 2),
        // f(y) = 13, f(z) = 1, lifted by f = 2f(parent) on the second sphere,
        // violates CD(0, ∞) once the center degree reaches 16.
        let g = families::friendship(8, NORM).unwrap();
        let (x, y, z) = (1, 0, 2);
        let ball = g.ball_decomposition(x).unwrap();
        let mut f = VertexFunction::new();
        f.set(y, 13.0);
        f.set(z, 1.0);
        for &w in &ball.s2 {
            f.set(w, 26.0);
        }
        let gamma2 = gamma2_bochner(&g, &f, x).unwrap();
        assert!(gamma2 < 0.0);
    }

    #[test]
    fn sampling_examples() {
        let g = families::path(2, NN).unwrap();
        let b = curvature_upper_bound_by_sampling(&g, 0, INF, 1000, 3).unwrap();
        assert!((b - 2.0).abs() < 1e-12);
        let again = curvature_upper_bound_by_sampling(&g, 0, INF, 1000, 3).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn oracle_sandwich_and_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for i in 0..100 {
            let preset = if i % 2 == 0 { NN } else { NORM };
            let g = random_weighted_graph(&mut rng, 8, 0.45, (1.0, 1.0), Some(preset));
            for x in g.vertices() {
                let mut last = f64::NEG_INFINITY;
                for n in [fin(1.0), fin(2.0), fin(5.0), INF] {
                    let r = curvature(&g, x, n).unwrap();
                    assert!(r.k >= last - 1e-9);
                    last = r.k;
                    let bound = curvature_upper_bound_by_sampling(&g, x, n, 200, i).unwrap();
                    assert!(r.k <= bound + 1e-9);
                    if let Some(w) = &r.witness {
                        let with = curvature_upper_bound_by_sampling_with(&g, x, n, 200, i, std::slice::from_ref(w)).unwrap();
                        assert!((with - r.k).abs() <= 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let g = random_weighted_graph(&mut rng, 8, 0.5, (0.1, 10.0), Some(NN));
            let c = rng.gen_range(0.2..5.0);
            let scaled = g.scale_weights(c).unwrap();
            let gn = g.with_preset(NORM);
            let scaled_n = gn.scale_weights(c).unwrap();
            for x in g.vertices().filter(|&x| g.degree(x) > 0) {
                let k = curvature(&g, x, INF).unwrap().k;
                let ks = curvature(&scaled, x, INF).unwrap().k;
                assert!((ks - c * k).abs() <= 1e-9 * (1.0 + (c * k).abs()));
                for n in [fin(1.0), fin(4.0), INF] {
                    let a = curvature(&gn, x, n).unwrap().k;
                    let b = curvature(&scaled_n, x, n).unwrap().k;
                    assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
                }
            }
        }
    }

    #[test]
    fn regular_graph_correspondence() {
        let graphs = [
            families::cycle(5, NN).unwrap(),
            families::cycle(6, NN).unwrap(),
            families::complete(4, NN).unwrap(),
            families::complete(5, NN).unwrap(),
            families::hypercube(3, NN).unwrap(),
            families::petersen(NN),
        ];
        for g in &graphs {
            let d = g.degree(0) as f64;
            let gn = g.with_preset(NORM);
            for x in g.vertices() {
                let kn = curvature(&gn, x, INF).unwrap().k;
                let k = curvature(g, x, INF).unwrap().k;
                assert!((kn * d - k).abs() <= 1e-9, "{kn} * {d} vs {k}");
            }
        }
    }
}
