//! Random weighted graphs for property tests and the acceptance suite.

use rand::Rng;

use crate::graph::{GraphBuilder, Laplacian, WeightedGraph};

/// Graph on `1..=n_max` vertices with independent edges of probability `p`
/// and weights uniform in `weights`. With `preset = None` the preset is
/// drawn uniformly from all three; custom measures are drawn from `weights`.
pub fn random_weighted_graph<R: Rng>(
    rng: &mut R,
    n_max: usize,
    p: f64,
    weights: (f64, f64),
    preset: Option<Laplacian>,
) -> WeightedGraph {
    let n = rng.gen_range(1..=n_max.max(1));
    let draw = |rng: &mut R| {
        if weights.0 < weights.1 {
            rng.gen_range(weights.0..weights.1)
        } else {
            weights.0
        }
    };
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(i.to_string());
    }
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                let w = draw(rng);
                b.edge(i.to_string(), j.to_string(), w);
            }
        }
    }
    let preset = preset.unwrap_or_else(|| match rng.gen_range(0..3) {
        0 => Laplacian::Normalized,
        1 => Laplacian::NonNormalized,
        _ => Laplacian::Custom,
    });
    if preset == Laplacian::Custom {
        for i in 0..n {
            let m = draw(rng);
            b.measure(i.to_string(), m);
        }
    }
    b.build(preset).expect("random graphs are valid")
}
