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

//! Balanced, equitable and equalized edge-colorings of bipartite multigraphs.
//!
//! A `k`-edge-coloring is *balanced* when, between every pair of vertices,
//! the numbers of edges of any two colors differ by at most one;
//! *equitable* when the same holds for the edges at every vertex; and
//! *equalized* when the color classes differ in size by at most one.
//!
//! [`bee_coloring`] starts from a per-pair round-robin assignment, which is
//! already balanced and equalized, and then repeatedly rebalances the two
//! colors that are furthest apart at some vertex. Rebalancing recolors the
//! union of the two classes along Euler trails, so both colors end up within
//! one of each other at every vertex, every pair and globally. The sum of
//! squared per-vertex color counts drops with each rebalance, which bounds
//! the number of rounds.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::trail::WalkGraph;

/// Bipartite multigraph with sides `0..left` and `0..right`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteMultigraph {
    left: usize,
    right: usize,
    mult: BTreeMap<(usize, usize), u64>,
}

impl BipartiteMultigraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteMultigraph {
            left,
            right,
            mult: BTreeMap::new(),
        }
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn add_edges(&mut self, l: usize, r: usize, count: u64) {
        assert!(l < self.left && r < self.right, "vertex out of range");
        if count > 0 {
            *self.mult.entry((l, r)).or_insert(0) += count;
        }
    }

    pub fn mult(&self, l: usize, r: usize) -> u64 {
        self.mult.get(&(l, r)).copied().unwrap_or(0)
    }

    /// Non-zero pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.mult.iter().map(|(&(l, r), &m)| (l, r, m))
    }

    pub fn edge_count(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn left_degree(&self, l: usize) -> u64 {
        self.mult.range((l, 0)..(l + 1, 0)).map(|(_, &m)| m).sum()
    }

    pub fn right_degree(&self, r: usize) -> u64 {
        self.pairs().filter(|p| p.1 == r).map(|p| p.2).sum()
    }

    pub fn max_degree(&self) -> u64 {
        let mut deg_l = vec![0u64; self.left];
        let mut deg_r = vec![0u64; self.right];
        for (l, r, m) in self.pairs() {
            deg_l[l] += m;
            deg_r[r] += m;
        }
        deg_l.into_iter().chain(deg_r).max().unwrap_or(0)
    }
}

/// Per-pair, per-color edge counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteColoring {
    k: usize,
    left: usize,
    right: usize,
    counts: BTreeMap<(usize, usize), Vec<u64>>,
}

impl BipartiteColoring {
    fn empty(bg: &BipartiteMultigraph, k: usize) -> Self {
        BipartiteColoring {
            k,
            left: bg.left,
            right: bg.right,
            counts: bg.mult.keys().map(|&p| (p, vec![0; k])).collect(),
        }
    }

    /// Builds a coloring from explicit counts; every count vector must have
    /// length `k`.
    pub fn from_counts(
        k: usize,
        left: usize,
        right: usize,
        counts: BTreeMap<(usize, usize), Vec<u64>>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        for (&(l, r), c) in &counts {
            if c.len() != k || l >= left || r >= right {
                return Err(Error::Structural(format!("bad color counts at pair ({l}, {r})")));
            }
        }
        Ok(BipartiteColoring {
            k,
            left,
            right,
            counts,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges of color `c` between left `l` and right `r`.
    pub fn count(&self, l: usize, r: usize, c: usize) -> u64 {
        self.counts.get(&(l, r)).map_or(0, |v| v[c])
    }

    pub fn pair_counts(&self) -> impl Iterator<Item = ((usize, usize), &[u64])> + '_ {
        self.counts.iter().map(|(&p, v)| (p, v.as_slice()))
    }

    /// Edges of color `c` as `(left, right, multiplicity)`.
    pub fn class(&self, c: usize) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts
            .iter()
            .filter(move |(_, v)| v[c] > 0)
            .map(move |(&(l, r), v)| (l, r, v[c]))
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0; self.k];
        for v in self.counts.values() {
            for (s, &x) in sizes.iter_mut().zip(v) {
                *s += x;
            }
        }
        sizes
    }

    pub fn left_color_counts(&self, l: usize) -> Vec<u64> {
        let mut out = vec![0; self.k];
        for (_, v) in self.counts.range((l, 0)..(l + 1, 0)) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
        out
    }

    pub fn right_color_counts(&self, r: usize) -> Vec<u64> {
        let mut out = vec![0; self.k];
        for (_, v) in self.counts.iter().filter(|((_, rr), _)| *rr == r) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
        out
    }

    fn vertex_tables(&self) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
        let mut lt = vec![vec![0u64; self.k]; self.left];
        let mut rt = vec![vec![0u64; self.k]; self.right];
        for (&(l, r), v) in &self.counts {
            for c in 0..self.k {
                lt[l][c] += v[c];
                rt[r][c] += v[c];
            }
        }
        (lt, rt)
    }

    /// True when summing over colors gives back `bg` exactly.
    pub fn is_coloring_of(&self, bg: &BipartiteMultigraph) -> bool {
        let nonzero: BTreeMap<(usize, usize), u64> = self
            .counts
            .iter()
            .map(|(&p, v)| (p, v.iter().sum::<u64>()))
            .filter(|&(_, s)| s > 0)
            .collect();
        nonzero == bg.mult
    }
}

fn spread(counts: &[u64]) -> u64 {
    let max = counts.iter().max().copied().unwrap_or(0);
    let min = counts.iter().min().copied().unwrap_or(0);
    max - min
}

/// Lowest-index maximum and minimum colors, when they differ by two or more.
fn worst_pair(counts: &[u64]) -> Option<(usize, usize)> {
    if spread(counts) < 2 {
        return None;
    }
    let mut hi = 0;
    let mut lo = 0;
    for (c, &x) in counts.iter().enumerate() {
        if x > counts[hi] {
            hi = c;
        }
        if x < counts[lo] {
            lo = c;
        }
    }
    Some((hi, lo))
}

pub fn is_balanced(c: &BipartiteColoring) -> bool {
    c.counts.values().all(|v| spread(v) <= 1)
}

pub fn is_equitable(c: &BipartiteColoring) -> bool {
    let (lt, rt) = c.vertex_tables();
    lt.iter().chain(&rt).all(|v| spread(v) <= 1)
}

pub fn is_equalized(c: &BipartiteColoring) -> bool {
    spread(&c.class_sizes()) <= 1
}

/// Proper `k`-edge-coloring by alternating-path recoloring: at every vertex
/// each color appears at most once. Requires maximum degree at most `k`.
pub fn konig_proper_coloring(bg: &BipartiteMultigraph, k: usize) -> Result<BipartiteColoring> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let (deg_l, deg_r) = {
        let mut dl = vec![0u64; bg.left];
        let mut dr = vec![0u64; bg.right];
        for (l, r, m) in bg.pairs() {
            dl[l] += m;
            dr[r] += m;
        }
        (dl, dr)
    };
    for (side, degs) in [("left", &deg_l), ("right", &deg_r)] {
        if let Some((v, &d)) = degs.iter().enumerate().find(|(_, &d)| d > k as u64) {
            return Err(Error::DegreeExceedsColors {
                vertex: format!("{side} {v}"),
                degree: d,
                colors: k,
            });
        }
    }

    // partner tables: at_left[l][c] = right endpoint of the c-colored edge at l
    let mut at_left: Vec<Vec<Option<usize>>> = vec![vec![None; k]; bg.left];
    let mut at_right: Vec<Vec<Option<usize>>> = vec![vec![None; k]; bg.right];

    for (l, r, m) in bg.pairs() {
        for _ in 0..m {
            let a = (0..k).find(|&c| at_left[l][c].is_none()).expect("free color at left");
            let b = (0..k).find(|&c| at_right[r][c].is_none()).expect("free color at right");
            if at_right[r][a].is_some() {
                // a/b path from r; it never reaches l since a is free there
                let mut path = Vec::new();
                let mut on_right = true;
                let mut cur = r;
                let mut color = a;
                loop {
                    let next = if on_right {
                        at_right[cur][color]
                    } else {
                        at_left[cur][color]
                    };
                    let Some(next) = next else { break };
                    let (pl, pr) = if on_right { (next, cur) } else { (cur, next) };
                    path.push((pl, pr, color));
                    cur = next;
                    on_right = !on_right;
                    color = if color == a { b } else { a };
                }
                for &(pl, pr, c) in &path {
                    at_left[pl][c] = None;
                    at_right[pr][c] = None;
                }
                for &(pl, pr, c) in &path {
                    let flipped = if c == a { b } else { a };
                    at_left[pl][flipped] = Some(pr);
                    at_right[pr][flipped] = Some(pl);
                }
            }
            debug_assert!(at_left[l][a].is_none() && at_right[r][a].is_none());
            at_left[l][a] = Some(r);
            at_right[r][a] = Some(l);
        }
    }

    let mut out = BipartiteColoring::empty(bg, k);
    for (l, row) in at_left.iter().enumerate() {
        for (c, partner) in row.iter().enumerate() {
            if let Some(r) = partner {
                out.counts.get_mut(&(l, *r)).expect("edge present")[c] += 1;
            }
        }
    }
    Ok(out)
}

/// Balanced, equitable and equalized `k`-edge-coloring of `bg`.
pub fn bee_coloring(bg: &BipartiteMultigraph, k: usize) -> Result<BipartiteColoring> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mut col = BipartiteColoring::empty(bg, k);

    // per-pair round robin, with remainders continuing a global rotation
    let mut offset = 0usize;
    for (&(l, r), counts) in col.counts.iter_mut() {
        let m = bg.mult(l, r);
        let q = m / k as u64;
        let rem = (m % k as u64) as usize;
        for (c, slot) in counts.iter_mut().enumerate() {
            let shifted = (c + k - offset) % k;
            *slot = q + u64::from(shifted < rem);
        }
        offset = (offset + rem) % k;
    }

    while let Some((i, j)) = find_violation(&col) {
        rebalance_pair(&mut col, i, j);
    }
    Ok(col)
}

fn find_violation(col: &BipartiteColoring) -> Option<(usize, usize)> {
    let (lt, rt) = col.vertex_tables();
    lt.iter()
        .chain(&rt)
        .find_map(|v| worst_pair(v))
        .or_else(|| col.counts.values().find_map(|v| worst_pair(v)))
        .or_else(|| worst_pair(&col.class_sizes()))
}

/// Recolors the edges of colors `i` and `j` so that the two colors are
/// within one of each other at every vertex, every pair and overall.
fn rebalance_pair(col: &mut BipartiteColoring, i: usize, j: usize) {
    let left = col.left;
    let dummy = col.left + col.right;

    // parallel couples split evenly; one leftover edge per odd pair
    let mut ends = Vec::new();
    let mut owner = Vec::new();
    for (&(l, r), v) in col.counts.iter_mut() {
        let s = v[i] + v[j];
        v[i] = s / 2;
        v[j] = s / 2;
        if s % 2 == 1 {
            ends.push((l, left + r));
            owner.push((l, r));
        }
    }
    let real = ends.len();
    let mut degree = vec![0usize; dummy + 1];
    for &(a, b) in &ends {
        degree[a] += 1;
        degree[b] += 1;
    }
    for (x, &d) in degree.iter().enumerate().take(dummy) {
        if d % 2 == 1 {
            ends.push((x, dummy));
        }
    }

    let mut walker = WalkGraph::new(dummy + 1, &ends);
    let mut walks = Vec::new();
    if walker.has_unused_at(dummy) {
        walks.push(walker.closed_walk(dummy));
    }
    walks.extend(walker.all_closed_walks());

    let mut odd_start_is_i = true;
    for walk in walks {
        // segments of real edges between visits of the dummy vertex
        let mut segments: Vec<Vec<usize>> = vec![Vec::new()];
        for step in walk {
            if step.edge >= real {
                if !segments.last().expect("segment").is_empty() {
                    segments.push(Vec::new());
                }
            } else {
                segments.last_mut().expect("segment").push(step.edge);
            }
        }
        for seg in segments.into_iter().filter(|s| !s.is_empty()) {
            let mut color_is_i = true;
            if seg.len() % 2 == 1 {
                color_is_i = odd_start_is_i;
                odd_start_is_i = !odd_start_is_i;
            }
            for e in seg {
                let c = if color_is_i { i } else { j };
                col.counts.get_mut(&owner[e]).expect("pair present")[c] += 1;
                color_is_i = !color_is_i;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_three(c: &BipartiteColoring) -> bool {
        is_balanced(c) && is_equitable(c) && is_equalized(c)
    }

    fn is_proper(c: &BipartiteColoring) -> bool {
        let (lt, rt) = c.vertex_tables();
        lt.iter().chain(&rt).all(|v| v.iter().all(|&x| x <= 1))
    }

    #[test]
    fn konig_matching_and_bundle() {
        let mut bg = BipartiteMultigraph::new(3, 3);
        for i in 0..3 {
            bg.add_edges(i, i, 1);
        }
        let c = konig_proper_coloring(&bg, 1).unwrap();
        assert_eq!(c.class_sizes(), vec![3]);

        let mut bundle = BipartiteMultigraph::new(1, 1);
        bundle.add_edges(0, 0, 3);
        let c = konig_proper_coloring(&bundle, 3).unwrap();
        assert_eq!(c.pair_counts().next().unwrap().1, &[1, 1, 1]);
        assert!(matches!(
            konig_proper_coloring(&bundle, 2),
            Err(Error::DegreeExceedsColors { .. })
        ));
    }

    #[test]
    fn konig_forces_alternating_path() {
        // edges ordered so that the greedy choice collides
        let mut bg = BipartiteMultigraph::new(2, 2);
        bg.add_edges(0, 0, 1);
        bg.add_edges(0, 1, 1);
        bg.add_edges(1, 0, 1);
        bg.add_edges(1, 1, 1);
        let c = konig_proper_coloring(&bg, 2).unwrap();
        assert!(is_proper(&c) && c.is_coloring_of(&bg));
    }

    #[test]
    fn bee_bundle_and_star() {
        let mut bundle = BipartiteMultigraph::new(1, 1);
        bundle.add_edges(0, 0, 5);
        let c = bee_coloring(&bundle, 2).unwrap();
        let mut counts = c.pair_counts().next().unwrap().1.to_vec();
        counts.sort();
        assert_eq!(counts, vec![2, 3]);

        let mut star = BipartiteMultigraph::new(1, 6);
        for r in 0..6 {
            star.add_edges(0, r, 1);
        }
        let c = bee_coloring(&star, 3).unwrap();
        assert_eq!(c.left_color_counts(0), vec![2, 2, 2]);
    }

    /// Exhaustive search over all assignments of `k` colors to the edges.
    fn exists_bee_by_enumeration(bg: &BipartiteMultigraph, k: usize) -> bool {
        let edges: Vec<(usize, usize)> = bg
            .pairs()
            .flat_map(|(l, r, m)| std::iter::repeat_n((l, r), m as usize))
            .collect();
        let total = (k as u64).pow(edges.len() as u32);
        (0..total).any(|mut code| {
            let mut counts: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
            for &(l, r) in &edges {
                let c = (code % k as u64) as usize;
                code /= k as u64;
                counts.entry((l, r)).or_insert_with(|| vec![0; k])[c] += 1;
            }
            let col = BipartiteColoring::from_counts(k, bg.left, bg.right, counts).unwrap();
            all_three(&col)
        })
    }

    #[test]
    fn bee_small_instance_matches_enumeration() {
        let mut bg = BipartiteMultigraph::new(2, 2);
        bg.add_edges(0, 0, 3);
        bg.add_edges(0, 1, 1);
        bg.add_edges(1, 0, 2);
        assert!(exists_bee_by_enumeration(&bg, 2));
        let c = bee_coloring(&bg, 2).unwrap();
        assert!(all_three(&c));
        assert!(c.is_coloring_of(&bg));
        assert_eq!(c.class_sizes(), vec![3, 3]);
    }

    #[test]
    fn predicates_reject_bad_colorings() {
        let mut counts = BTreeMap::new();
        counts.insert((0, 0), vec![3, 1]);
        let c = BipartiteColoring::from_counts(2, 1, 1, counts).unwrap();
        assert!(!is_balanced(&c));
        assert!(!is_equitable(&c));
        assert!(!is_equalized(&c));

        let mut counts = BTreeMap::new();
        for r in 0..5 {
            counts.insert((0, r), if r < 4 { vec![1, 0] } else { vec![0, 1] });
        }
        let c = BipartiteColoring::from_counts(2, 1, 5, counts).unwrap();
        assert!(is_balanced(&c));
        assert!(!is_equitable(&c));

        let sizes = |s: &[u64]| {
            let mut counts = BTreeMap::new();
            for (r, &x) in s.iter().enumerate() {
                let mut v = vec![0; s.len()];
                v[r] = x;
                counts.insert((r, r), v);
            }
            BipartiteColoring::from_counts(s.len(), s.len(), s.len(), counts).unwrap()
        };
        assert!(is_equalized(&sizes(&[3, 2, 2])));
        assert!(!is_equalized(&sizes(&[4, 2, 1])));

        let mut counts = BTreeMap::new();
        counts.insert((0, 0), vec![1]);
        counts.insert((1, 1), vec![1]);
        assert!(all_three(
            &BipartiteColoring::from_counts(1, 2, 2, counts).unwrap()
        ));
    }

    #[test]
    fn more_colors_than_edges() {
        let mut bg = BipartiteMultigraph::new(2, 2);
        bg.add_edges(0, 1, 1);
        bg.add_edges(1, 0, 1);
        let c = bee_coloring(&bg, 5).unwrap();
        assert!(all_three(&c));
        assert_eq!(c.class_sizes().iter().filter(|&&s| s == 0).count(), 3);
    }

    fn arb_bipartite(max_side: usize, max_mult: u64) -> impl Strategy<Value = BipartiteMultigraph> {
        (1..=max_side, 1..=max_side).prop_flat_map(move |(l, r)| {
            proptest::collection::vec(0..=max_mult, l * r).prop_map(move |ms| {
                let mut bg = BipartiteMultigraph::new(l, r);
                for (idx, m) in ms.into_iter().enumerate() {
                    bg.add_edges(idx / r, idx % r, m);
                }
                bg
            })
        })
    }

    proptest! {
        #[test]
        fn bee_output_satisfies_all_predicates(bg in arb_bipartite(6, 6), k in 1usize..6) {
            let c = bee_coloring(&bg, k).unwrap();
            prop_assert!(c.is_coloring_of(&bg));
            prop_assert!(all_three(&c));
            let e = bg.edge_count();
            for s in c.class_sizes() {
                prop_assert!(s == e / k as u64 || s == e.div_ceil(k as u64));
            }
        }

        #[test]
        fn konig_is_proper(bg in arb_bipartite(5, 3)) {
            let k = bg.max_degree().max(1) as usize;
            let c = konig_proper_coloring(&bg, k).unwrap();
            prop_assert!(c.is_coloring_of(&bg));
            prop_assert!(is_proper(&c));
        }
    }
}
