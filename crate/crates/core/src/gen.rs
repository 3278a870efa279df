// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Seeded random instances for fuzzing.
//!
//! Instance `i` of seed `s` depends only on `(s, i)`, so runs can be split
//! across threads without changing what gets generated.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bee::BipartiteMultigraph;
use crate::multigraph::{AmalgamationSpec, ColoredMultigraph, Multigraph, VertexId};

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Bounds on generated detachment instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceLimits {
    pub max_vertices: usize,
    pub max_eta: u64,
    pub max_colors: usize,
    /// Total multiplicity of a vertex pair over all colors.
    pub max_mult: u64,
    /// Total loops at a vertex over all colors.
    pub max_loops: u64,
}

impl Default for InstanceLimits {
    fn default() -> Self {
        InstanceLimits {
            max_vertices: 6,
            max_eta: 4,
            max_colors: 4,
            max_mult: 6,
            max_loops: 8,
        }
    }
}

/// A random colored multigraph with amalgamation numbers satisfying the
/// detachment hypothesis (loops only where `η ≥ 2`). About a third of the
/// colors are built from closed walks topped up with loops so that their
/// degree over `η` is an even integer everywhere.
pub fn random_detachment_instance<R: Rng>(
    rng: &mut R,
    limits: &InstanceLimits,
) -> (ColoredMultigraph, AmalgamationSpec) {
    let n = rng.gen_range(1..=limits.max_vertices);
    let k = rng.gen_range(1..=limits.max_colors);
    let eta: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=limits.max_eta)).collect();
    let mut cg = ColoredMultigraph::new(n, k);
    let mut pair_budget = vec![vec![limits.max_mult; n]; n];
    let mut loop_budget: Vec<u64> = eta
        .iter()
        .map(|&e| if e >= 2 { limits.max_loops } else { 0 })
        .collect();

    for j in 0..k {
        if n >= 2 && rng.gen_bool(0.35) {
            let mut layer = Multigraph::new(n);
            for _ in 0..rng.gen_range(1..=3) {
                let mut walk = Multigraph::new(n);
                for (u, v) in random_closed_walk(rng, n) {
                    walk.add_edges(u, v, 1);
                }
                if walk
                    .edges()
                    .all(|(u, v, m)| layer.mult(u, v) + m <= pair_budget[u.0][v.0])
                {
                    layer.add_graph(&walk);
                }
            }
            for v in (0..n).map(VertexId) {
                let (d, e) = (layer.degree_unchecked(v), eta[v.0]);
                let short = (2 * e - d % (2 * e)) % (2 * e) / 2;
                if short <= loop_budget[v.0] {
                    layer.add_loops(v, short);
                    loop_budget[v.0] -= short;
                }
            }
            for (u, v, m) in layer.edges() {
                pair_budget[u.0][v.0] -= m;
                pair_budget[v.0][u.0] -= m;
            }
            *cg.layer_mut(j) = layer;
        } else {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        let m = rng.gen_range(0..=pair_budget[u][v].min(3));
                        cg.layer_mut(j).add_edges(VertexId(u), VertexId(v), m);
                        pair_budget[u][v] -= m;
                        pair_budget[v][u] -= m;
                    }
                }
                if loop_budget[u] > 0 && rng.gen_bool(0.5) {
                    let m = rng.gen_range(0..=loop_budget[u].min(4));
                    cg.layer_mut(j).add_loops(VertexId(u), m);
                    loop_budget[u] -= m;
                }
            }
        }
    }
    let eta = AmalgamationSpec::new(eta).expect("amalgamation numbers are positive");
    (cg, eta)
}

/// Edges of a closed walk with no loops, on at least two vertices.
fn random_closed_walk<R: Rng>(rng: &mut R, n: usize) -> Vec<(VertexId, VertexId)> {
    let len = rng.gen_range(2..=2 * n);
    let mut seq = vec![rng.gen_range(0..n)];
    while seq.len() < len {
        let last = *seq.last().expect("non-empty");
        let next = (last + rng.gen_range(1..n)) % n;
        if seq.len() + 1 == len && next == seq[0] && n > 2 {
            continue;
        }
        seq.push(next);
    }
    if seq[len - 1] == seq[0] {
        // only possible with two vertices and odd length; drop the last one
        seq.pop();
    }
    (0..seq.len())
        .map(|i| (VertexId(seq[i]), VertexId(seq[(i + 1) % seq.len()])))
        .collect()
}

/// A random bipartite multigraph and a color count.
pub fn random_bipartite<R: Rng>(
    rng: &mut R,
    max_side: usize,
    max_mult: u64,
    max_colors: usize,
) -> (BipartiteMultigraph, usize) {
    let left = rng.gen_range(1..=max_side);
    let right = rng.gen_range(1..=max_side);
    let mut g = BipartiteMultigraph::new(left, right);
    let density: f64 = rng.gen_range(0.2..0.9);
    for l in 0..left {
        for r in 0..right {
            if rng.gen_bool(density) {
                g.add_edges(l, r, rng.gen_range(1..=max_mult));
            }
        }
    }
    (g, rng.gen_range(1..=max_colors))
}

/// A random multigraph of even degree: closed walks plus loops.
pub fn random_even_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Multigraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = Multigraph::new(n);
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=4) {
            for (u, v) in random_closed_walk(rng, n) {
                g.add_edges(u, v, 1);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in order.iter().take(rng.gen_range(0..=n)) {
        g.add_loops(VertexId(v), rng.gen_range(1..=3));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_respect_limits() {
        let limits = InstanceLimits::default();
        for i in 0..200 {
            let (cg, eta) = random_detachment_instance(&mut rng_for(7, i), &limits);
            assert!(cg.vertex_count() <= 6 && cg.k() <= 4);
            eta.validate_for(&cg).unwrap();
            let u = cg.underlying();
            for v in u.vertices() {
                assert!(eta.get(v) <= 4);
                assert!(u.loops(v) <= 8);
            }
            assert!(u.edges().all(|(_, _, m)| m <= 6));
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let a = random_detachment_instance(&mut rng_for(3, 11), &InstanceLimits::default());
        let b = random_detachment_instance(&mut rng_for(3, 11), &InstanceLimits::default());
        assert_eq!(a, b);
    }

    #[test]
    fn even_graphs_are_even() {
        for i in 0..100 {
            let g = random_even_graph(&mut rng_for(1, i), 8);
            assert!(g.degrees().iter().all(|d| d % 2 == 0));
        }
    }
}
