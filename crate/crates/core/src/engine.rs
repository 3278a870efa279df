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

//! Loopless fair detachment of an edge-colored multigraph, one vertex at a
//! time.
//!
//! Each step picks the smallest vertex `y` with `η(y) ≥ 2` and splits off a
//! new vertex `v` with `η(v) = 1`:
//!
//! 1. Build a bipartite graph with one vertex `c_j` per color on one side
//!    and the neighbours of `y` plus a loop proxy `L` on the other. Every
//!    `j`-colored edge `y–u` becomes an edge `c_j–u`; every `j`-colored loop
//!    at `y` becomes two edges `c_j–L`.
//! 2. Color it balanced, equitable and equalized with `η(y)` colors and keep
//!    the first two classes.
//! 3. For every color whose per-vertex degree over `η` is an even integer
//!    everywhere, split `c_j` into degree-2 vertices, pairing parallel edges
//!    first and then edges that lead into the same component of the color
//!    class with `y` removed.
//! 4. Two-color the result balanced, equitable and equalized; the first
//!    class names the edges that move: `y–u` becomes `v–u`, and a loop at
//!    `y` becomes an edge `y–v`.

use std::collections::{BTreeMap, BTreeSet};

use crate::bee::{bee_coloring, BipartiteMultigraph};
use crate::error::{Error, Result};
use crate::multigraph::{AmalgamationSpec, ColoredMultigraph, DetachmentMap, VertexId};
use crate::verify;

/// A vertex on the neighbourhood side of the split bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WVertex {
    Neighbor(VertexId),
    LoopProxy,
}

/// Colors on the left (`c_0..c_{k-1}`), neighbours of `y` ascending and then
/// the loop proxy on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBipartite {
    pub y: VertexId,
    pub w_side: Vec<WVertex>,
    pub graph: BipartiteMultigraph,
}

impl SplitBipartite {
    pub fn loop_proxy(&self) -> usize {
        self.w_side.len() - 1
    }

    /// Same sides, different edges.
    fn with_graph(&self, graph: BipartiteMultigraph) -> Self {
        SplitBipartite {
            y: self.y,
            w_side: self.w_side.clone(),
            graph,
        }
    }
}

/// The split graph after refining qualifying color vertices into degree-2
/// vertices. `groups[j]` lists the left vertices standing for color `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedBipartite {
    pub groups: Vec<Vec<usize>>,
    pub split: Vec<bool>,
    pub owner: Vec<usize>,
    pub graph: BipartiteMultigraph,
}

/// Edge moves of one color during one step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColorMoves {
    /// `(u, count)`: `count` edges `y–u` re-attached to the new vertex.
    pub moved: Vec<(VertexId, u64)>,
    /// Loops at `y` turned into edges between `y` and the new vertex.
    pub loops_converted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveSet {
    pub per_color: Vec<ColorMoves>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub y: VertexId,
    pub new_vertex: VertexId,
    pub eta_before: u64,
    pub qualifying_colors: Vec<usize>,
    pub moves: MoveSet,
}

impl TraceStep {
    pub fn eta_after(&self) -> u64 {
        self.eta_before - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DetachmentTrace {
    pub steps: Vec<TraceStep>,
}

/// Outcome of [`detach_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detachment {
    pub graph: ColoredMultigraph,
    pub map: DetachmentMap,
    pub trace: DetachmentTrace,
}

/// Colors `j` for which `d_j(v)/η(v)` is an even integer at every vertex.
pub fn condition3_colors(cg: &ColoredMultigraph, eta: &AmalgamationSpec) -> BTreeSet<usize> {
    (0..cg.k())
        .filter(|&j| {
            let layer = cg.layer(j);
            cg.vertices().all(|v| {
                let d = layer.degree_unchecked(v);
                let e = eta.get(v);
                d % e == 0 && (d / e) % 2 == 0
            })
        })
        .collect()
}

pub fn build_split_bipartite(cg: &ColoredMultigraph, y: VertexId) -> Result<SplitBipartite> {
    if !cg.layer(0).contains(y) {
        return Err(Error::UnknownVertex(y));
    }
    let neighbours: Vec<VertexId> = cg.underlying().neighbors(y).map(|(u, _)| u).collect();
    let mut w_side: Vec<WVertex> = neighbours.iter().map(|&u| WVertex::Neighbor(u)).collect();
    w_side.push(WVertex::LoopProxy);
    let proxy = w_side.len() - 1;
    let mut graph = BipartiteMultigraph::new(cg.k(), w_side.len());
    for (j, layer) in cg.layers().iter().enumerate() {
        for (r, &u) in neighbours.iter().enumerate() {
            graph.add_edges(j, r, layer.mult(y, u));
        }
        graph.add_edges(j, proxy, 2 * layer.loops(y));
    }
    Ok(SplitBipartite { y, w_side, graph })
}

/// Splits each qualifying color vertex of `t` into degree-2 vertices.
///
/// `alpha` maps every qualifying color to `d_j(y)/η(y)`; `components` maps
/// it to component labels of its color class with `y` removed. Pairing takes
/// parallel edges to one right vertex first, then edges into one component
/// (components in ascending label order), then whatever remains, all in
/// ascending right-vertex order.
pub fn refine(
    t: &SplitBipartite,
    alpha: &BTreeMap<usize, u64>,
    components: &BTreeMap<usize, Vec<usize>>,
) -> Result<RefinedBipartite> {
    let k = t.graph.left_count();
    let right = t.graph.right_count();
    let mut rows: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut groups = vec![Vec::new(); k];
    let mut split = vec![false; k];
    let mut owner = Vec::new();

    for j in 0..k {
        let row: Vec<u64> = (0..right).map(|r| t.graph.mult(j, r)).collect();
        let Some(&a) = alpha.get(&j) else {
            groups[j].push(rows.len());
            owner.push(j);
            rows.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(r, &m)| (r, m as usize))
                    .collect(),
            );
            continue;
        };
        split[j] = true;
        let degree: u64 = row.iter().sum();
        if degree != 2 * a {
            return Err(Error::Internal(format!(
                "color {j} has degree {degree} in the two chosen classes, expected {}",
                2 * a
            )));
        }
        let labels = components.get(&j).ok_or_else(|| {
            Error::Internal(format!("missing component labels for color {j}"))
        })?;

        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut singles = Vec::new();
        for (r, &m) in row.iter().enumerate() {
            for _ in 0..m / 2 {
                pairs.push((r, r));
            }
            if m % 2 == 1 {
                singles.push(r);
            }
        }
        let mut by_component: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut rest = Vec::new();
        for r in singles {
            match t.w_side[r] {
                WVertex::Neighbor(u) => by_component.entry(labels[u.0]).or_default().push(r),
                WVertex::LoopProxy => rest.push(r),
            }
        }
        for members in by_component.into_values() {
            let mut chunks = members.chunks_exact(2);
            pairs.extend(chunks.by_ref().map(|c| (c[0], c[1])));
            rest.extend_from_slice(chunks.remainder());
        }
        rest.sort_unstable();
        pairs.extend(rest.chunks_exact(2).map(|c| (c[0], c[1])));

        for (r1, r2) in pairs {
            groups[j].push(rows.len());
            owner.push(j);
            rows.push(if r1 == r2 {
                vec![(r1, 2)]
            } else {
                vec![(r1, 1), (r2, 1)]
            });
        }
    }

    let mut graph = BipartiteMultigraph::new(rows.len(), right);
    for (x, row) in rows.iter().enumerate() {
        for &(r, m) in row {
            graph.add_edges(x, r, m as u64);
        }
    }
    Ok(RefinedBipartite {
        groups,
        split,
        owner,
        graph,
    })
}

/// One detachment step at `y`; returns the new graph, the updated
/// amalgamation numbers and the new vertex.
pub fn detach_step(
    cg: &ColoredMultigraph,
    eta: &AmalgamationSpec,
    y: VertexId,
) -> Result<(ColoredMultigraph, AmalgamationSpec, VertexId)> {
    let (next, eta_next, step) = detach_step_traced(cg, eta, y)?;
    Ok((next, eta_next, step.new_vertex))
}

/// [`detach_step`] that also reports the moved edges.
pub fn detach_step_traced(
    cg: &ColoredMultigraph,
    eta: &AmalgamationSpec,
    y: VertexId,
) -> Result<(ColoredMultigraph, AmalgamationSpec, TraceStep)> {
    if !cg.layer(0).contains(y) {
        return Err(Error::UnknownVertex(y));
    }
    if eta.len() != cg.vertex_count() {
        return Err(Error::Structural("amalgamation numbers do not match the graph".into()));
    }
    let eta_y = eta.get(y);
    if eta_y < 2 {
        return Err(Error::EtaTooSmall {
            vertex: y,
            eta: eta_y,
        });
    }

    let qualifying = condition3_colors(cg, eta);
    let b = build_split_bipartite(cg, y)?;
    let first = bee_coloring(&b.graph, eta_y as usize)?;
    let mut t_graph = BipartiteMultigraph::new(b.graph.left_count(), b.graph.right_count());
    for class in 0..2 {
        for (l, r, m) in first.class(class) {
            t_graph.add_edges(l, r, m);
        }
    }
    let t = b.with_graph(t_graph);

    let mut alpha = BTreeMap::new();
    let mut components = BTreeMap::new();
    for &j in &qualifying {
        let layer = cg.layer(j);
        alpha.insert(j, layer.degree_unchecked(y) / eta_y);
        components.insert(j, layer.component_labels_without(Some(y)));
    }
    let refined = refine(&t, &alpha, &components)?;
    let second = bee_coloring(&refined.graph, 2)?;

    let proxy = b.loop_proxy();
    let mut moved: Vec<BTreeMap<VertexId, u64>> = vec![BTreeMap::new(); cg.k()];
    let mut loops_converted = vec![0u64; cg.k()];
    for (x, r, m) in second.class(0) {
        let j = refined.owner[x];
        match b.w_side[r] {
            WVertex::Neighbor(u) => *moved[j].entry(u).or_insert(0) += m,
            WVertex::LoopProxy => {
                debug_assert_eq!(r, proxy);
                loops_converted[j] += m;
            }
        }
    }

    let mut next = cg.clone();
    let v = next.add_vertex();
    let mut moves = MoveSet::default();
    for j in 0..cg.k() {
        let layer = next.layer_mut(j);
        if loops_converted[j] > layer.loops(y) {
            return Err(Error::Internal(format!(
                "color {j}: {} loop(s) selected at {y}, only {} present",
                loops_converted[j],
                layer.loops(y)
            )));
        }
        for (&u, &m) in &moved[j] {
            layer.remove_edges(y, u, m)?;
            layer.add_edges(v, u, m);
        }
        layer.remove_loops(y, loops_converted[j])?;
        layer.add_edges(y, v, loops_converted[j]);
        moves.per_color.push(ColorMoves {
            moved: moved[j].iter().map(|(&u, &m)| (u, m)).collect(),
            loops_converted: loops_converted[j],
        });
    }

    let mut eta_next = eta.clone();
    eta_next.decrement(y);
    eta_next.push(1);
    let step = TraceStep {
        y,
        new_vertex: v,
        eta_before: eta_y,
        qualifying_colors: qualifying.into_iter().collect(),
        moves,
    };
    Ok((next, eta_next, step))
}

/// Intermediate state handed to a [`detach_all_observed`] observer after
/// every step.
pub struct StepView<'a> {
    pub before: &'a ColoredMultigraph,
    pub after: &'a ColoredMultigraph,
    pub eta_before: &'a AmalgamationSpec,
    pub eta_after: &'a AmalgamationSpec,
    pub map: &'a DetachmentMap,
    pub step: &'a TraceStep,
}

/// Detaches every vertex `w` into `η(w)` vertices.
pub fn detach_all(cg: &ColoredMultigraph, eta: &AmalgamationSpec) -> Result<Detachment> {
    detach_all_observed(cg, eta, |_| Ok(()))
}

/// [`detach_all`] calling `observe` after each step. Debug builds also check
/// the per-step balance relations and connectivity preservation.
pub fn detach_all_observed<F>(
    cg: &ColoredMultigraph,
    eta: &AmalgamationSpec,
    mut observe: F,
) -> Result<Detachment>
where
    F: FnMut(&StepView<'_>) -> Result<()>,
{
    eta.validate_for(cg)?;
    let mut graph = cg.clone();
    let mut numbers = eta.clone();
    let mut map = DetachmentMap::identity(cg.vertex_count());
    let mut trace = DetachmentTrace::default();

    while let Some(y) = graph.vertices().find(|&v| numbers.get(v) >= 2) {
        let (next, next_numbers, step) = detach_step_traced(&graph, &numbers, y)?;
        map.push(y);
        if cfg!(debug_assertions) {
            verify::assert_step_relations(&graph, &next, y, step.new_vertex, &numbers)
                .map_err(|w| Error::Internal(w.to_string()))?;
            verify::check_connectivity_step(&graph, &next, &numbers, &next_numbers)
                .map_err(|w| Error::Internal(w.to_string()))?;
        }
        observe(&StepView {
            before: &graph,
            after: &next,
            eta_before: &numbers,
            eta_after: &next_numbers,
            map: &map,
            step: &step,
        })?;
        graph = next;
        numbers = next_numbers;
        trace.steps.push(step);
    }
    map.check_against(eta)?;
    Ok(Detachment { graph, map, trace })
}
