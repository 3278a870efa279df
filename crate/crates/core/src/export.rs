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

//! Graphviz DOT output. Display only.

use std::fmt::Write;

use crate::multigraph::ColoredMultigraph;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// One DOT edge per parallel edge, colored by class.
pub fn to_dot(cg: &ColoredMultigraph) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in cg.vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for (j, layer) in cg.layers().iter().enumerate() {
        let color = PALETTE[j % PALETTE.len()];
        for v in layer.vertices() {
            for _ in 0..layer.loops(v) {
                let _ = writeln!(s, "  {v} -- {v} [color=\"{color}\", label=\"{j}\"];");
            }
        }
        for (u, v, m) in layer.edges() {
            for _ in 0..m {
                let _ = writeln!(s, "  {u} -- {v} [color=\"{color}\", label=\"{j}\"];");
            }
        }
    }
    s.push_str("}\n");
    s
}
