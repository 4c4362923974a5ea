//! Pointwise Laplacian, carré du champ `Γ`, and iterated `Γ₂`.
//!
//! `Γ₂` has two independent evaluation routes: straight from its definition
//! through `Δ` and `Γ`, and through the Bochner-type expansion. The
//! curvature module is validated against both.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Vertex, WeightedGraph};

/// Real function on the vertices; unlisted vertices evaluate to 0.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VertexFunction {
    values: BTreeMap<Vertex, f64>,
}

impl VertexFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// From a dense slice indexed by vertex.
    pub fn from_dense(values: &[f64]) -> Self {
        values.iter().copied().enumerate().collect()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> f64 {
        self.values.get(&v).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, v: Vertex, value: f64) {
        self.values.insert(v, value);
    }

    /// Explicitly listed entries in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, f64)> + '_ {
        self.values.iter().map(|(&v, &x)| (v, x))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        self.iter().map(|(v, x)| (v, f(x))).collect()
    }
}

impl FromIterator<(Vertex, f64)> for VertexFunction {
    fn from_iter<I: IntoIterator<Item = (Vertex, f64)>>(iter: I) -> Self {
        VertexFunction { values: iter.into_iter().collect() }
    }
}

pub(crate) fn laplacian_at(g: &WeightedGraph, f: &VertexFunction, x: Vertex) -> f64 {
    let fx = f.get(x);
    let s: f64 = g.neighbors(x).iter().map(|&(y, w)| w * (f.get(y) - fx)).sum();
    s / g.measure(x)
}

pub(crate) fn gamma_at(g: &WeightedGraph, f: &VertexFunction, h: &VertexFunction, x: Vertex) -> f64 {
    let (fx, hx) = (f.get(x), h.get(x));
    let s: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, w)| w * (f.get(y) - fx) * (h.get(y) - hx))
        .sum();
    s / (2.0 * g.measure(x))
}

pub(crate) fn gamma2_direct_at(g: &WeightedGraph, f: &VertexFunction, x: Vertex) -> f64 {
    // Δf and Γ(f) are needed on the closed neighborhood of x.
    let ball: Vec<Vertex> = std::iter::once(x).chain(g.neighbor_ids(x)).collect();
    let lap: VertexFunction = ball.iter().copied().map(|y| (y, laplacian_at(g, f, y))).collect();
    let gam: VertexFunction = ball.into_iter().map(|y| (y, gamma_at(g, f, f, y))).collect();
    let laplacian_of_gamma = laplacian_at(g, &gam, x);
    let mixed = gamma_at(g, f, &lap, x);
    0.5 * (laplacian_of_gamma - 2.0 * mixed)
}

pub(crate) fn gamma2_bochner_at(g: &WeightedGraph, f: &VertexFunction, x: Vertex) -> f64 {
    let mx = g.measure(x);
    let dx = g.weighted_degree(x);
    let fx = f.get(x);
    let mut hessian = 0.0;
    let mut degree_term = 0.0;
    for &(y, wxy) in g.neighbors(x) {
        let (fy, my) = (f.get(y), g.measure(y));
        // z runs over every neighbor of y, x included.
        for &(z, wyz) in g.neighbors(y) {
            let d2 = fx - 2.0 * fy + f.get(z);
            hessian += wxy * wyz / (mx * my) * d2 * d2;
        }
        let diff = fy - fx;
        degree_term += wxy / mx * (dx + g.weighted_degree(y)) * diff * diff;
    }
    let lap = laplacian_at(g, f, x);
    0.25 * hessian + 0.5 * lap * lap - 0.25 * degree_term
}

/// `Δf(x) = (1/m_x) Σ_{y∼x} μ_xy (f(y) − f(x))`.
pub fn laplacian(g: &WeightedGraph, f: &VertexFunction, x: Vertex) -> Result<f64> {
    g.check_vertex(x)?;
    Ok(laplacian_at(g, f, x))
}

/// `Γ(f, h)(x)`, evaluated as `(1/2m_x) Σ μ_xy (f(y)−f(x))(h(y)−h(x))`.
pub fn gamma(g: &WeightedGraph, f: &VertexFunction, h: &VertexFunction, x: Vertex) -> Result<f64> {
    g.check_vertex(x)?;
    Ok(gamma_at(g, f, h, x))
}

/// `Γ₂(f)(x) = ½[ΔΓ(f)(x) − 2Γ(f, Δf)(x)]`.
pub fn gamma2_direct(g: &WeightedGraph, f: &VertexFunction, x: Vertex) -> Result<f64> {
    g.check_vertex(x)?;
    Ok(gamma2_direct_at(g, f, x))
}

/// `Γ₂(f)(x)` through the Bochner-type identity
/// `¼|D²f|²(x) + ½(Δf(x))² − ¼ Σ_y (μ_xy/m_x)(D_x + D_y)(f(y) − f(x))²`.
pub fn gamma2_bochner(g: &WeightedGraph, f: &VertexFunction, x: Vertex) -> Result<f64> {
    g.check_vertex(x)?;
    Ok(gamma2_bochner_at(g, f, x))
}
