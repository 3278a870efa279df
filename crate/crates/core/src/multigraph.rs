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

//! Loop-carrying multigraphs stored as exact multiplicity counts.
//!
//! Edges carry no identity: a graph is a vertex count, a loop count per
//! vertex and a symmetric multiplicity per unordered pair of distinct
//! vertices. A loop contributes two to the degree of its vertex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational used by every balance check.
pub type Rational = Ratio<i64>;

/// Dense vertex label. Vertices of a graph are `0..vertex_count`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

/// `x ≈ y`, i.e. `floor(y) <= x <= ceil(y)`.
pub fn approx(x: Rational, y: Rational) -> bool {
    y.floor() <= x && x <= y.ceil()
}

/// `x ≈ num/den` for an integer `x`.
pub fn approx_int(x: u64, num: u64, den: u64) -> bool {
    assert!(den > 0, "zero denominator");
    let lo = num / den;
    let hi = num.div_ceil(den);
    lo <= x && x <= hi
}

/// Builds the rational `num/den`.
pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(num as i64, den as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    loops: Vec<u64>,
    // symmetric: adj[u][v] == adj[v][u]; zero entries are never stored
    adj: Vec<BTreeMap<usize, u64>>,
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Multigraph {
            loops: vec![0; n],
            adj: vec![BTreeMap::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.loops.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.vertex_count()
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.loops.push(0);
        self.adj.push(BTreeMap::new());
        VertexId(self.loops.len() - 1)
    }

    pub fn loops(&self, v: VertexId) -> u64 {
        self.loops[v.0]
    }

    pub fn add_loops(&mut self, v: VertexId, count: u64) {
        self.loops[v.0] += count;
    }

    pub fn remove_loops(&mut self, v: VertexId, count: u64) -> Result<()> {
        self.check(v)?;
        let have = self.loops[v.0];
        if have < count {
            return Err(Error::Internal(format!(
                "removing {count} loop(s) from vertex {v} which has {have}"
            )));
        }
        self.loops[v.0] = have - count;
        Ok(())
    }

    /// `m(u, v)` for distinct `u`, `v`; zero when either is absent.
    pub fn mult(&self, u: VertexId, v: VertexId) -> u64 {
        if u == v || !self.contains(u) || !self.contains(v) {
            return 0;
        }
        self.adj[u.0].get(&v.0).copied().unwrap_or(0)
    }

    /// Adds `count` parallel edges between distinct vertices `u` and `v`.
    pub fn add_edges(&mut self, u: VertexId, v: VertexId, count: u64) {
        assert_ne!(u, v, "use add_loops for loops");
        if count == 0 {
            return;
        }
        *self.adj[u.0].entry(v.0).or_insert(0) += count;
        *self.adj[v.0].entry(u.0).or_insert(0) += count;
    }

    pub fn remove_edges(&mut self, u: VertexId, v: VertexId, count: u64) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if count == 0 {
            return Ok(());
        }
        let have = self.mult(u, v);
        if u == v || have < count {
            return Err(Error::Internal(format!(
                "removing {count} edge(s) between {u} and {v} which have {have}"
            )));
        }
        for (a, b) in [(u.0, v.0), (v.0, u.0)] {
            if have == count {
                self.adj[a].remove(&b);
            } else {
                self.adj[a].insert(b, have - count);
            }
        }
        Ok(())
    }

    /// Neighbours of `v` (never `v` itself) with their multiplicities, ascending.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u64)> + '_ {
        self.adj[v.0].iter().map(|(&u, &m)| (VertexId(u), m))
    }

    /// Every pair `(u, v, m)` with `u < v` and `m > 0`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| {
            row.range(u + 1..)
                .map(move |(&v, &m)| (VertexId(u), VertexId(v), m))
        })
    }

    /// Number of edges, each loop counted once.
    pub fn edge_count(&self) -> u64 {
        self.loops.iter().sum::<u64>() + self.edges().map(|(_, _, m)| m).sum::<u64>()
    }

    pub fn loop_count(&self) -> u64 {
        self.loops.iter().sum()
    }

    pub fn is_loopless(&self) -> bool {
        self.loops.iter().all(|&l| l == 0)
    }

    /// `d(v) = Σ_u m(u, v) + 2ℓ(v)`.
    pub fn degree(&self, v: VertexId) -> Result<u64> {
        self.check(v)?;
        Ok(self.degree_unchecked(v))
    }

    pub(crate) fn degree_unchecked(&self, v: VertexId) -> u64 {
        self.adj[v.0].values().sum::<u64>() + 2 * self.loops[v.0]
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.vertices().map(|v| self.degree_unchecked(v)).collect()
    }

    /// `m(A, B)`: edges joining a vertex of `a` to a vertex of `b`.
    pub fn multiplicity_sets(&self, a: &[VertexId], b: &[VertexId]) -> Result<u64> {
        let bset: BTreeSet<VertexId> = b.iter().copied().collect();
        for &v in a.iter().chain(b) {
            self.check(v)?;
        }
        if let Some(&v) = a.iter().find(|v| bset.contains(v)) {
            return Err(Error::OverlappingSets(v));
        }
        let aset: BTreeSet<VertexId> = a.iter().copied().collect();
        Ok(aset
            .iter()
            .map(|&u| {
                self.neighbors(u)
                    .filter(|(v, _)| bset.contains(v))
                    .map(|(_, m)| m)
                    .sum::<u64>()
            })
            .sum())
    }

    /// Component label of every vertex: the smallest vertex id in its
    /// component. Loops and parallel edges add no connectivity.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_without(None)
    }

    /// Component labels of the graph with `removed` deleted; the removed
    /// vertex gets `usize::MAX`.
    pub fn component_labels_without(&self, removed: Option<VertexId>) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX || Some(VertexId(s)) == removed {
                continue;
            }
            label[s] = s;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.adj[u].keys() {
                    if label[w] == usize::MAX && Some(VertexId(w)) != removed {
                        label[w] = s;
                        stack.push(w);
                    }
                }
            }
        }
        label
    }

    /// `ω(G)`, isolated vertices included.
    pub fn component_count(&self) -> usize {
        self.component_labels()
            .iter()
            .enumerate()
            .filter(|&(v, &l)| l == v)
            .count()
    }

    /// Handshake check: `Σ d(v) = 2|E|`, and adjacency symmetry.
    pub fn check_invariants(&self) -> Result<()> {
        for (u, row) in self.adj.iter().enumerate() {
            for (&v, &m) in row {
                if m == 0 || v == u || v >= self.vertex_count() {
                    return Err(Error::Internal(format!("bad adjacency entry {u}-{v}")));
                }
                if self.adj[v].get(&u) != Some(&m) {
                    return Err(Error::Internal(format!("asymmetric multiplicity {u}-{v}")));
                }
            }
        }
        let total: u64 = self.degrees().iter().sum();
        if total != 2 * self.edge_count() {
            return Err(Error::Internal("handshake identity fails".into()));
        }
        Ok(())
    }

    /// Entrywise sum of two graphs on the same vertex set.
    pub fn add_graph(&mut self, other: &Multigraph) {
        assert_eq!(self.vertex_count(), other.vertex_count());
        for v in other.vertices() {
            self.add_loops(v, other.loops(v));
        }
        for (u, v, m) in other.edges() {
            self.add_edges(u, v, m);
        }
    }
}

/// `k` color classes over one vertex set. Colors are indexed `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    layers: Vec<Multigraph>,
}

impl ColoredMultigraph {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k >= 1, "at least one color is required");
        ColoredMultigraph {
            layers: vec![Multigraph::new(n); k],
        }
    }

    pub fn from_layers(layers: Vec<Multigraph>) -> Result<Self> {
        let Some(first) = layers.first() else {
            return Err(Error::InvalidArgument("at least one color is required".into()));
        };
        let n = first.vertex_count();
        if layers.iter().any(|l| l.vertex_count() != n) {
            return Err(Error::Structural(
                "color classes have different vertex sets".into(),
            ));
        }
        Ok(ColoredMultigraph { layers })
    }

    pub fn k(&self) -> usize {
        self.layers.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.layers[0].vertex_count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn layer(&self, color: usize) -> &Multigraph {
        &self.layers[color]
    }

    pub fn layer_mut(&mut self, color: usize) -> &mut Multigraph {
        &mut self.layers[color]
    }

    pub fn layers(&self) -> &[Multigraph] {
        &self.layers
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let mut id = VertexId(0);
        for layer in &mut self.layers {
            id = layer.add_vertex();
        }
        id
    }

    /// Entrywise sum of the color classes.
    pub fn underlying(&self) -> Multigraph {
        let mut g = Multigraph::new(self.vertex_count());
        for layer in &self.layers {
            g.add_graph(layer);
        }
        g
    }

    pub fn edge_counts(&self) -> Vec<u64> {
        self.layers.iter().map(Multigraph::edge_count).collect()
    }
}

/// The number function `η` of an amalgamation: how many vertices each
/// vertex is split into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamationSpec {
    eta: Vec<u64>,
}

impl AmalgamationSpec {
    pub fn new(eta: Vec<u64>) -> Result<Self> {
        if let Some(v) = eta.iter().position(|&e| e == 0) {
            return Err(Error::EtaZero(VertexId(v)));
        }
        Ok(AmalgamationSpec { eta })
    }

    /// `η ≡ value` on `n` vertices.
    pub fn constant(n: usize, value: u64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.eta[v.0]
    }

    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.eta
    }

    /// Checks the vertex count and that `η(w) = 1` implies `ℓ(w) = 0`.
    pub fn validate_for(&self, g: &ColoredMultigraph) -> Result<()> {
        if self.eta.len() != g.vertex_count() {
            return Err(Error::Structural(format!(
                "amalgamation numbers given for {} vertices, graph has {}",
                self.eta.len(),
                g.vertex_count()
            )));
        }
        for v in g.vertices() {
            let loops: u64 = g.layers().iter().map(|l| l.loops(v)).sum();
            if self.get(v) == 1 && loops > 0 {
                return Err(Error::EtaGuard { vertex: v, loops });
            }
        }
        Ok(())
    }

    /// Number of single-vertex detachment steps, `Σ (η(v) − 1)`.
    pub fn steps(&self) -> u64 {
        self.eta.iter().map(|e| e - 1).sum()
    }

    pub(crate) fn push(&mut self, value: u64) {
        self.eta.push(value);
    }

    pub(crate) fn decrement(&mut self, v: VertexId) {
        self.eta[v.0] -= 1;
    }
}

/// Amalgamation function `ψ: V(G) → V(H)` together with its fibres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetachmentMap {
    psi: Vec<VertexId>,
    fibers: Vec<Vec<VertexId>>,
}

impl DetachmentMap {
    /// Builds the map from `ψ` given as a table indexed by `V(G)`.
    pub fn from_psi(psi: Vec<VertexId>, h_vertices: usize) -> Result<Self> {
        let mut fibers = vec![Vec::new(); h_vertices];
        for (u, &w) in psi.iter().enumerate() {
            if w.0 >= h_vertices {
                return Err(Error::Structural(format!(
                    "vertex {u} maps to {w}, outside the amalgamated graph"
                )));
            }
            fibers[w.0].push(VertexId(u));
        }
        if let Some(w) = fibers.iter().position(Vec::is_empty) {
            return Err(Error::Structural(format!("vertex {w} has an empty fibre")));
        }
        Ok(DetachmentMap { psi, fibers })
    }

    pub fn identity(n: usize) -> Self {
        DetachmentMap {
            psi: (0..n).map(VertexId).collect(),
            fibers: (0..n).map(|v| vec![VertexId(v)]).collect(),
        }
    }

    pub fn psi(&self, u: VertexId) -> VertexId {
        self.psi[u.0]
    }

    pub fn table(&self) -> &[VertexId] {
        &self.psi
    }

    /// `ψ^{-1}(w)`, ascending.
    pub fn fiber(&self, w: VertexId) -> &[VertexId] {
        &self.fibers[w.0]
    }

    pub fn fibers(&self) -> &[Vec<VertexId>] {
        &self.fibers
    }

    pub fn detached_count(&self) -> usize {
        self.psi.len()
    }

    /// Fibre sizes must equal `η`.
    pub fn check_against(&self, eta: &AmalgamationSpec) -> Result<()> {
        if eta.len() != self.fibers.len() {
            return Err(Error::Structural(format!(
                "map has {} fibres, amalgamation numbers cover {} vertices",
                self.fibers.len(),
                eta.len()
            )));
        }
        for (w, fiber) in self.fibers.iter().enumerate() {
            let e = eta.get(VertexId(w));
            if fiber.len() as u64 != e {
                return Err(Error::Structural(format!(
                    "fibre of vertex {w} has {} vertices, expected {e}",
                    fiber.len()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn push(&mut self, w: VertexId) -> VertexId {
        let u = VertexId(self.psi.len());
        self.psi.push(w);
        self.fibers[w.0].push(u);
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn degree_counts_loops_twice() {
        let mut g = Multigraph::new(3);
        assert_eq!(g.degree(v(0)).unwrap(), 0);
        g.add_loops(v(1), 3);
        assert_eq!(g.degree(v(1)).unwrap(), 6);
        g.add_loops(v(2), 2);
        g.add_edges(v(2), v(0), 5);
        assert_eq!(g.degree(v(2)).unwrap(), 9);
        assert_eq!(g.degree(v(7)), Err(Error::UnknownVertex(v(7))));
        g.check_invariants().unwrap();
    }

    #[test]
    fn multiplicity_between_sets() {
        let mut g = Multigraph::new(4);
        g.add_edges(v(0), v(1), 7);
        assert_eq!(g.multiplicity_sets(&[v(0)], &[v(1)]).unwrap(), 7);
        assert_eq!(g.multiplicity_sets(&[v(2)], &[v(3)]).unwrap(), 0);
        let mut h = Multigraph::new(3);
        h.add_edges(v(0), v(2), 2);
        h.add_edges(v(1), v(2), 3);
        assert_eq!(h.multiplicity_sets(&[v(0), v(1)], &[v(2)]).unwrap(), 5);
        assert_eq!(
            h.multiplicity_sets(&[v(0), v(1)], &[v(1)]),
            Err(Error::OverlappingSets(v(1)))
        );
    }

    #[test]
    fn components() {
        assert_eq!(Multigraph::new(4).component_count(), 4);
        let mut g = Multigraph::new(5);
        for i in 0..4 {
            g.add_edges(v(i), v((i + 1) % 4), 1);
        }
        assert_eq!(g.component_count(), 2);
        let mut l = Multigraph::new(1);
        l.add_loops(v(0), 5);
        assert_eq!(l.component_count(), 1);
        let labels = g.component_labels_without(Some(v(0)));
        assert_eq!(labels, vec![usize::MAX, 1, 1, 1, 4]);
    }

    #[test]
    fn approx_examples() {
        let y = Rational::new(7, 3);
        assert!(approx(Rational::from_integer(2), y));
        assert!(approx(Rational::from_integer(3), y));
        assert!(!approx(Rational::from_integer(4), y));
        assert!(!approx(Rational::from_integer(1), y));
        assert!(approx_int(2, 7, 3));
        assert!(approx_int(3, 7, 3));
        assert!(!approx_int(4, 7, 3));
        assert!(approx_int(2, 4, 2) && !approx_int(3, 4, 2));
    }

    #[test]
    fn remove_edges_drops_zero_entries() {
        let mut g = Multigraph::new(2);
        g.add_edges(v(0), v(1), 2);
        g.remove_edges(v(0), v(1), 2).unwrap();
        assert_eq!(g.neighbors(v(0)).count(), 0);
        assert!(g.remove_edges(v(0), v(1), 1).is_err());
        assert!(g.remove_loops(v(0), 1).is_err());
    }

    #[test]
    fn eta_guard() {
        let mut cg = ColoredMultigraph::new(2, 2);
        cg.layer_mut(1).add_loops(v(1), 1);
        let eta = AmalgamationSpec::new(vec![2, 1]).unwrap();
        assert_eq!(
            eta.validate_for(&cg),
            Err(Error::EtaGuard {
                vertex: v(1),
                loops: 1
            })
        );
        assert!(AmalgamationSpec::new(vec![1, 0]).is_err());
    }

    #[test]
    fn detachment_map_fibres() {
        let map = DetachmentMap::from_psi(vec![v(0), v(1), v(0), v(0)], 2).unwrap();
        assert_eq!(map.fiber(v(0)), &[v(0), v(2), v(3)]);
        let eta = AmalgamationSpec::new(vec![3, 1]).unwrap();
        map.check_against(&eta).unwrap();
        assert!(DetachmentMap::from_psi(vec![v(0)], 2).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (1usize..7).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0u64..4, n),
                proptest::collection::vec((0..n, 0..n, 1u64..5), 0..12),
            )
                .prop_map(|(n, loops, edges)| {
                    let mut g = Multigraph::new(n);
                    for (i, l) in loops.into_iter().enumerate() {
                        g.add_loops(VertexId(i), l);
                    }
                    for (a, b, m) in edges {
                        if a != b {
                            g.add_edges(VertexId(a), VertexId(b), m);
                        }
                    }
                    g
                })
        })
    }

    proptest! {
        #[test]
        fn handshake_holds(g in arb_graph()) {
            g.check_invariants().unwrap();
            let total: u64 = g.degrees().iter().sum();
            prop_assert_eq!(total, 2 * g.edge_count());
        }

        #[test]
        fn underlying_is_layer_sum(a in arb_graph(), seed in 0u64..1000) {
            let n = a.vertex_count();
            let mut b = Multigraph::new(n);
            for (u, v, m) in a.edges() {
                if (u.0 + v.0 + seed as usize) % 2 == 0 {
                    b.add_edges(u, v, m);
                }
            }
            let cg = ColoredMultigraph::from_layers(vec![a.clone(), b.clone()]).unwrap();
            let under = cg.underlying();
            for x in under.vertices() {
                prop_assert_eq!(under.degree(x).unwrap(), a.degree(x).unwrap() + b.degree(x).unwrap());
            }
            prop_assert_eq!(under.edge_count(), a.edge_count() + b.edge_count());
        }

        #[test]
        fn approx_matches_floor_ceil(x in -50i64..50, p in -200i64..200, q in 1i64..20) {
            let y = Rational::new(p, q);
            let lo = p.div_euclid(q);
            let hi = if p.rem_euclid(q) == 0 { lo } else { lo + 1 };
            prop_assert_eq!(approx(Rational::from_integer(x), y), lo <= x && x <= hi);
        }

        #[test]
        fn approx_is_transitive(a in -30i64..30, p in -90i64..90, q in 1i64..10, r in -90i64..90, s in 1i64..10) {
            let a = Rational::from_integer(a);
            let x = Rational::new(p, q);
            let y = Rational::new(r, s);
            if approx(a, x) && approx(x, y) {
                prop_assert!(approx(a, y));
            }
        }
    }
}
