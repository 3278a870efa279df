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

//! Versioned JSON interchange documents.
//!
//! Multiplicities are stored as counts, one record per vertex pair or loop
//! vertex. [`Document::to_text`] puts every record on its own line so that
//! documents diff cleanly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::engine::DetachmentTrace;
use crate::hamilton::{GddParams, HamDecomposition};
use crate::multigraph::{AmalgamationSpec, ColoredMultigraph, DetachmentMap, Multigraph, VertexId};

pub const VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0:?}, expected \"v1\"")]
    Version(String),
    #[error("invalid document: {0}")]
    Invalid(String),
}

type DocResult<T> = std::result::Result<T, DocumentError>;

fn invalid<T>(msg: impl Into<String>) -> DocResult<T> {
    Err(DocumentError::Invalid(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub color: usize,
    pub u: usize,
    pub v: usize,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopRecord {
    pub color: usize,
    pub v: usize,
    pub m: u64,
}

/// An uncolored edge record, used for decomposition hosts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub u: usize,
    pub v: usize,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaRecord {
    pub v: usize,
    pub eta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiRecord {
    pub u: usize,
    pub w: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub version: String,
    pub vertices: Vec<usize>,
    pub k: usize,
    pub edges: Vec<EdgeRecord>,
    pub loops: Vec<LoopRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<EtaRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<PsiRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GddRecord {
    pub sizes: Vec<u64>,
    pub lambda1: u64,
    pub lambda2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub version: String,
    pub vertices: Vec<usize>,
    pub host: Vec<PairRecord>,
    pub cycles: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<GddRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRecord {
    pub color: usize,
    pub u: usize,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub y: usize,
    pub new_vertex: usize,
    pub eta_before: u64,
    pub qualifying: Vec<usize>,
    pub moved: Vec<MoveRecord>,
    /// `(color, count)` loops at `y` turned into `y`–new-vertex edges.
    pub loops_converted: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub version: String,
    pub steps: Vec<StepRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Graph(GraphDocument),
    Decomposition(DecompositionDocument),
    Trace(TraceDocument),
}

impl Document {
    pub fn parse(text: &str) -> DocResult<Self> {
        let value: Value = serde_json::from_str(text)?;
        if let Some(v) = value.get("version").and_then(Value::as_str) {
            if v != VERSION {
                return Err(DocumentError::Version(v.to_string()));
            }
        }
        let doc: Document = serde_json::from_value(value)?;
        let version = match &doc {
            Document::Graph(g) => &g.version,
            Document::Decomposition(d) => &d.version,
            Document::Trace(t) => &t.version,
        };
        if version != VERSION {
            return Err(DocumentError::Version(version.clone()));
        }
        Ok(doc)
    }

    /// Pretty JSON with one record per line.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("documents always serialize");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if depth == 0 => {
            out.push_str("{\n");
            for (i, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(1));
                out.push_str(&serde_json::to_string(key).expect("string key"));
                out.push_str(": ");
                write_value(val, 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push('}');
        }
        Value::Array(items) if depth == 1 && items.iter().any(|x| x.is_object() || x.is_array()) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(2));
                out.push_str(&serde_json::to_string(item).expect("value"));
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(1));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("value")),
    }
}

fn check_vertices(vertices: &[usize]) -> DocResult<usize> {
    if vertices.iter().copied().ne(0..vertices.len()) {
        return invalid("vertices must be listed as 0, 1, …, n−1");
    }
    Ok(vertices.len())
}

fn check_vertex(v: usize, n: usize) -> DocResult<VertexId> {
    if v >= n {
        return invalid(format!("vertex {v} is not listed"));
    }
    Ok(VertexId(v))
}

impl GraphDocument {
    pub fn from_colored(
        cg: &ColoredMultigraph,
        eta: Option<&AmalgamationSpec>,
        psi: Option<&DetachmentMap>,
    ) -> Self {
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for (color, layer) in cg.layers().iter().enumerate() {
            for (u, v, m) in layer.edges() {
                edges.push(EdgeRecord {
                    color,
                    u: u.0,
                    v: v.0,
                    m,
                });
            }
            for v in layer.vertices() {
                let m = layer.loops(v);
                if m > 0 {
                    loops.push(LoopRecord { color, v: v.0, m });
                }
            }
        }
        GraphDocument {
            version: VERSION.to_string(),
            vertices: (0..cg.vertex_count()).collect(),
            k: cg.k(),
            edges,
            loops,
            eta: eta.map(|e| {
                e.values()
                    .iter()
                    .enumerate()
                    .map(|(v, &eta)| EtaRecord { v, eta })
                    .collect()
            }),
            psi: psi.map(|p| {
                p.table()
                    .iter()
                    .enumerate()
                    .map(|(u, w)| PsiRecord { u, w: w.0 })
                    .collect()
            }),
        }
    }

    pub fn to_colored(&self) -> DocResult<ColoredMultigraph> {
        let n = check_vertices(&self.vertices)?;
        if self.k == 0 {
            return invalid("at least one color is required");
        }
        let mut cg = ColoredMultigraph::new(n, self.k);
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            let (u, v) = (check_vertex(e.u, n)?, check_vertex(e.v, n)?);
            if u == v {
                return invalid(format!("edge record {}–{} is a loop", e.u, e.v));
            }
            if e.color >= self.k || e.m == 0 {
                return invalid(format!("bad edge record {e:?}"));
            }
            if !seen.insert((e.color, u.min(v), u.max(v))) {
                return invalid(format!("repeated edge record {e:?}"));
            }
            cg.layer_mut(e.color).add_edges(u, v, e.m);
        }
        let mut seen = BTreeSet::new();
        for l in &self.loops {
            let v = check_vertex(l.v, n)?;
            if l.color >= self.k || l.m == 0 || !seen.insert((l.color, v)) {
                return invalid(format!("bad or repeated loop record {l:?}"));
            }
            cg.layer_mut(l.color).add_loops(v, l.m);
        }
        Ok(cg)
    }

    pub fn eta_spec(&self) -> DocResult<Option<AmalgamationSpec>> {
        let Some(records) = &self.eta else {
            return Ok(None);
        };
        let n = self.vertices.len();
        let mut values = vec![None; n];
        for r in records {
            check_vertex(r.v, n)?;
            if values[r.v].replace(r.eta).is_some() {
                return invalid(format!("repeated eta record for vertex {}", r.v));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(v, e)| e.ok_or_else(|| DocumentError::Invalid(format!("no eta for vertex {v}"))))
            .collect::<DocResult<Vec<u64>>>()?;
        AmalgamationSpec::new(values)
            .map(Some)
            .map_err(|e| DocumentError::Invalid(e.to_string()))
    }

    /// `ψ` into a graph with `h_vertices` vertices.
    pub fn detachment_map(&self, h_vertices: usize) -> DocResult<Option<DetachmentMap>> {
        let Some(records) = &self.psi else {
            return Ok(None);
        };
        let n = self.vertices.len();
        let mut table = vec![None; n];
        for r in records {
            check_vertex(r.u, n)?;
            if table[r.u].replace(VertexId(r.w)).is_some() {
                return invalid(format!("repeated psi record for vertex {}", r.u));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(u, w)| w.ok_or_else(|| DocumentError::Invalid(format!("no psi for vertex {u}"))))
            .collect::<DocResult<Vec<_>>>()?;
        DetachmentMap::from_psi(table, h_vertices)
            .map(Some)
            .map_err(|e| DocumentError::Invalid(e.to_string()))
    }
}

impl DecompositionDocument {
    pub fn new(
        d: &HamDecomposition,
        params: Option<&GddParams>,
        parts: Option<&[Vec<VertexId>]>,
    ) -> Self {
        DecompositionDocument {
            version: VERSION.to_string(),
            vertices: (0..d.host.vertex_count()).collect(),
            host: d
                .host
                .edges()
                .map(|(u, v, m)| PairRecord { u: u.0, v: v.0, m })
                .collect(),
            cycles: d
                .cycles
                .iter()
                .map(|c| c.iter().map(|v| v.0).collect())
                .collect(),
            params: params.map(|p| GddRecord {
                sizes: p.sizes().to_vec(),
                lambda1: p.lambda1,
                lambda2: p.lambda2,
            }),
            parts: parts.map(|ps| ps.iter().map(|p| p.iter().map(|v| v.0).collect()).collect()),
        }
    }

    pub fn decomposition(&self) -> DocResult<HamDecomposition> {
        let n = check_vertices(&self.vertices)?;
        let mut host = Multigraph::new(n);
        let mut seen = BTreeSet::new();
        for r in &self.host {
            let (u, v) = (check_vertex(r.u, n)?, check_vertex(r.v, n)?);
            if u == v || r.m == 0 || !seen.insert((u.min(v), u.max(v))) {
                return invalid(format!("bad or repeated host record {r:?}"));
            }
            host.add_edges(u, v, r.m);
        }
        // cycles may name vertices outside the host; the checker reports that
        let cycles = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|&v| VertexId(v)).collect())
            .collect();
        Ok(HamDecomposition { host, cycles })
    }

    pub fn gdd(&self) -> DocResult<Option<(GddParams, Vec<Vec<VertexId>>)>> {
        match (&self.params, &self.parts) {
            (None, None) => Ok(None),
            (Some(p), Some(parts)) => {
                let params = GddParams::new(p.sizes.clone(), p.lambda1, p.lambda2)
                    .map_err(|e| DocumentError::Invalid(e.to_string()))?;
                let parts = parts
                    .iter()
                    .map(|p| p.iter().map(|&v| VertexId(v)).collect())
                    .collect();
                Ok(Some((params, parts)))
            }
            _ => invalid("params and parts must be given together"),
        }
    }
}

impl TraceDocument {
    pub fn new(trace: &DetachmentTrace) -> Self {
        let steps = trace
            .steps
            .iter()
            .map(|s| {
                let mut moved = Vec::new();
                let mut loops_converted = Vec::new();
                for (color, cm) in s.moves.per_color.iter().enumerate() {
                    for &(u, m) in &cm.moved {
                        moved.push(MoveRecord { color, u: u.0, m });
                    }
                    if cm.loops_converted > 0 {
                        loops_converted.push((color, cm.loops_converted));
                    }
                }
                StepRecord {
                    y: s.y.0,
                    new_vertex: s.new_vertex.0,
                    eta_before: s.eta_before,
                    qualifying: s.qualifying_colors.clone(),
                    moved,
                    loops_converted,
                }
            })
            .collect();
        TraceDocument {
            version: VERSION.to_string(),
            steps,
        }
    }
}
