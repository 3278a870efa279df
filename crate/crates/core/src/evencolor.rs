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

//! Evenly-equitable edge-colorings of even multigraphs.
//!
//! A `k`-edge-coloring is evenly-equitable when every color class has even
//! degree at every vertex and, at each vertex, any two color degrees differ
//! by zero or two.

use crate::bee::{konig_proper_coloring, BipartiteMultigraph};
use crate::error::{Error, Result};
use crate::multigraph::{ColoredMultigraph, Multigraph, VertexId};
use crate::trail::{Step, WalkGraph};

/// Closed walk through every edge of one component; a loop at `v` is the
/// step `(v, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCircuit {
    pub steps: Vec<(VertexId, VertexId)>,
}

impl EulerCircuit {
    /// Checks the walk is closed, consecutive, and uses exactly the edges of
    /// the component of `root` in `g`.
    pub fn is_valid_for(&self, g: &Multigraph, root: VertexId) -> bool {
        let steps = &self.steps;
        if steps.windows(2).any(|w| w[0].1 != w[1].0) {
            return false;
        }
        if let (Some(first), Some(last)) = (steps.first(), steps.last()) {
            if first.0 != last.1 {
                return false;
            }
        }
        let labels = g.component_labels();
        let comp = labels[root.0];
        let mut expected = Multigraph::new(g.vertex_count());
        for v in g.vertices().filter(|v| labels[v.0] == comp) {
            expected.add_loops(v, g.loops(v));
        }
        for (u, v, m) in g.edges() {
            if labels[u.0] == comp {
                expected.add_edges(u, v, m);
            }
        }
        let mut walked = Multigraph::new(g.vertex_count());
        for &(a, b) in steps {
            if !g.contains(a) || !g.contains(b) {
                return false;
            }
            if a == b {
                walked.add_loops(a, 1);
            } else {
                walked.add_edges(a, b, 1);
            }
        }
        walked == expected
    }
}

/// Expands `g` into an explicit edge list (loops included), pairs ascending.
fn explicit_edges(g: &Multigraph) -> Vec<(usize, usize)> {
    let mut ends = Vec::new();
    for v in g.vertices() {
        for _ in 0..g.loops(v) {
            ends.push((v.0, v.0));
        }
    }
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            ends.push((u.0, v.0));
        }
    }
    ends
}

fn check_even(g: &Multigraph, only: Option<&[bool]>) -> Result<()> {
    for v in g.vertices() {
        if only.is_some_and(|mask| !mask[v.0]) {
            continue;
        }
        let d = g.degree_unchecked(v);
        if d % 2 == 1 {
            return Err(Error::OddDegree {
                vertex: v,
                degree: d,
            });
        }
    }
    Ok(())
}

/// Euler circuit of the component containing `component_root`.
pub fn euler_circuit(g: &Multigraph, component_root: VertexId) -> Result<EulerCircuit> {
    if !g.contains(component_root) {
        return Err(Error::UnknownVertex(component_root));
    }
    let labels = g.component_labels();
    let mask: Vec<bool> = labels.iter().map(|&l| l == labels[component_root.0]).collect();
    check_even(g, Some(&mask))?;
    let ends = explicit_edges(g);
    let mut walker = WalkGraph::new(g.vertex_count(), &ends);
    let steps = walker
        .closed_walk(component_root.0)
        .into_iter()
        .map(|s| (VertexId(s.from), VertexId(s.to)))
        .collect();
    Ok(EulerCircuit { steps })
}

fn regular_degree(g: &Multigraph) -> Result<u64> {
    let degrees = g.degrees();
    let expected = degrees.first().copied().unwrap_or(0);
    if let Some((v, &d)) = degrees.iter().enumerate().find(|(_, &d)| d != expected) {
        return Err(Error::NotRegular {
            vertex: VertexId(v),
            degree: d,
            expected,
        });
    }
    Ok(expected)
}

/// Splits a loopless `2m`-regular graph into `m` spanning 2-regular
/// subgraphs: orient along Euler circuits, then properly `m`-color the
/// out/in bipartite graph; each color class is a perfect matching and hence
/// a 2-factor.
pub fn two_factorization(g: &Multigraph) -> Result<Vec<Multigraph>> {
    if let Some(v) = g.vertices().find(|&v| g.loops(v) > 0) {
        return Err(Error::UnexpectedLoops {
            vertex: v,
            loops: g.loops(v),
        });
    }
    let degree = regular_degree(g)?;
    check_even(g, None)?;
    let m = (degree / 2) as usize;
    if m == 0 {
        return Ok(Vec::new());
    }
    let n = g.vertex_count();
    let ends = explicit_edges(g);
    let mut walker = WalkGraph::new(n, &ends);
    let mut oriented = BipartiteMultigraph::new(n, n);
    for walk in walker.all_closed_walks() {
        for Step { from, to, .. } in walk {
            oriented.add_edges(from, to, 1);
        }
    }
    let coloring = konig_proper_coloring(&oriented, m)?;
    Ok((0..m)
        .map(|c| {
            let mut factor = Multigraph::new(n);
            for (from, to, mult) in coloring.class(c) {
                factor.add_edges(VertexId(from), VertexId(to), mult);
            }
            factor
        })
        .collect())
}

/// True when `cg` is an evenly-equitable coloring.
pub fn is_evenly_equitable(cg: &ColoredMultigraph) -> bool {
    cg.vertices().all(|v| {
        let degs: Vec<u64> = cg.layers().iter().map(|l| l.degree_unchecked(v)).collect();
        let max = degs.iter().max().copied().unwrap_or(0);
        let min = degs.iter().min().copied().unwrap_or(0);
        degs.iter().all(|d| d % 2 == 0) && max - min <= 2
    })
}

/// Evenly-equitable `k`-edge-coloring of an even graph.
///
/// Loopless regular graphs go through [`two_factorization`], dealing the
/// 2-factors round-robin. Everything else starts with a single class and
/// repeatedly recolors the union of the two most unequal classes at some
/// vertex along Euler circuits until the coloring is evenly-equitable.
pub fn evenly_equitable_coloring(g: &Multigraph, k: usize) -> Result<ColoredMultigraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    check_even(g, None)?;
    let n = g.vertex_count();

    if g.is_loopless() && n > 0 && regular_degree(g).is_ok_and(|d| d > 0) {
        let factors = two_factorization(g)?;
        let mut layers = vec![Multigraph::new(n); k];
        for (t, factor) in factors.iter().enumerate() {
            layers[t % k].add_graph(factor);
        }
        return ColoredMultigraph::from_layers(layers);
    }

    let mut layers = vec![Multigraph::new(n); k];
    layers[0] = g.clone();
    let mut cg = ColoredMultigraph::from_layers(layers)?;
    while let Some((i, j)) = find_uneven_pair(&cg) {
        rebalance_even_pair(&mut cg, i, j)?;
    }
    Ok(cg)
}

fn find_uneven_pair(cg: &ColoredMultigraph) -> Option<(usize, usize)> {
    for v in cg.vertices() {
        let degs: Vec<u64> = cg.layers().iter().map(|l| l.degree_unchecked(v)).collect();
        let (mut hi, mut lo) = (0, 0);
        for (c, &d) in degs.iter().enumerate() {
            if d > degs[hi] {
                hi = c;
            }
            if d < degs[lo] {
                lo = c;
            }
        }
        if degs[hi] - degs[lo] > 2 {
            return Some((hi, lo));
        }
    }
    None
}

/// Recolors classes `i ∪ j` so both stay even and differ by at most two at
/// every vertex.
///
/// Along a closed walk every visit of a vertex pairs two edge-ends there.
/// Colors alternate at every visit except one visit of each vertex with an
/// odd number of visits, where the color repeats. The number of such
/// vertices has the parity of the walk length, so the alternation closes up.
fn rebalance_even_pair(cg: &mut ColoredMultigraph, i: usize, j: usize) -> Result<()> {
    let n = cg.vertex_count();
    let mut union = cg.layer(i).clone();
    union.add_graph(cg.layer(j));
    let visits: Vec<u64> = union.degrees().iter().map(|d| d / 2).collect();
    let ends = explicit_edges(&union);
    let mut walker = WalkGraph::new(n, &ends);

    let mut new_i = Multigraph::new(n);
    let mut new_j = Multigraph::new(n);
    for walk in walker.all_closed_walks() {
        let mut repeated = vec![false; n];
        let mut is_i = true;
        for (t, step) in walk.iter().enumerate() {
            if t > 0 {
                let at = step.from;
                if visits[at] % 2 == 1 && !repeated[at] {
                    repeated[at] = true;
                } else {
                    is_i = !is_i;
                }
            }
            let target = if is_i { &mut new_i } else { &mut new_j };
            if step.from == step.to {
                target.add_loops(VertexId(step.from), 1);
            } else {
                target.add_edges(VertexId(step.from), VertexId(step.to), 1);
            }
        }
    }
    *cg.layer_mut(i) = new_i;
    *cg.layer_mut(j) = new_j;
    Ok(())
}
