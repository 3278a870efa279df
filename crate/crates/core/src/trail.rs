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

//! Hierholzer walks over explicit edge lists.

/// One traversal step: edge index and its orientation `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Step {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

/// Edge list with adjacency, consumed by closed walks.
pub(crate) struct WalkGraph {
    adj: Vec<Vec<(usize, usize)>>,
    used: Vec<bool>,
    cursor: Vec<usize>,
}

impl WalkGraph {
    pub fn new(nodes: usize, ends: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); nodes];
        for (e, &(a, b)) in ends.iter().enumerate() {
            adj[a].push((e, b));
            if a != b {
                adj[b].push((e, a));
            }
        }
        WalkGraph {
            used: vec![false; ends.len()],
            cursor: vec![0; nodes],
            adj,
        }
    }

    pub fn has_unused_at(&mut self, v: usize) -> bool {
        self.next_unused(v).is_some()
    }

    fn next_unused(&mut self, v: usize) -> Option<(usize, usize)> {
        while let Some(&(e, w)) = self.adj[v].get(self.cursor[v]) {
            if !self.used[e] {
                return Some((e, w));
            }
            self.cursor[v] += 1;
        }
        None
    }

    /// Closed walk from `start` through every unused edge reachable from it.
    /// Requires every reachable vertex to have even unused degree.
    pub fn closed_walk(&mut self, start: usize) -> Vec<Step> {
        let mut stack: Vec<(usize, Option<(usize, usize)>)> = vec![(start, None)];
        let mut out = Vec::new();
        while let Some(&(v, _)) = stack.last() {
            if let Some((e, w)) = self.next_unused(v) {
                self.used[e] = true;
                stack.push((w, Some((e, v))));
            } else {
                let (v, inc) = stack.pop().expect("non-empty stack");
                if let Some((e, from)) = inc {
                    out.push(Step { edge: e, from, to: v });
                }
            }
        }
        out.reverse();
        debug_assert!(out.windows(2).all(|w| w[0].to == w[1].from));
        out
    }

    /// Closed walks covering every edge, one per non-trivial component,
    /// each started at the smallest node of its component.
    pub fn all_closed_walks(&mut self) -> Vec<Vec<Step>> {
        let mut walks = Vec::new();
        for v in 0..self.adj.len() {
            if self.has_unused_at(v) {
                walks.push(self.closed_walk(v));
            }
        }
        walks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_covers_bowtie() {
        let ends = vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (4, 4)];
        let mut g = WalkGraph::new(5, &ends);
        let walks = g.all_closed_walks();
        assert_eq!(walks.len(), 1);
        let w = &walks[0];
        assert_eq!(w.len(), ends.len());
        assert_eq!(w[0].from, 0);
        assert_eq!(w.last().unwrap().to, 0);
        let mut seen: Vec<usize> = w.iter().map(|s| s.edge).collect();
        seen.sort();
        assert_eq!(seen, (0..ends.len()).collect::<Vec<_>>());
    }
}
