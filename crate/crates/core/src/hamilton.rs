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

//! Hamiltonian decompositions of `λK_n` and of complete multipartite
//! multigraphs `K(a^(p); λ1, λ2)`, built by amalgamating the target graph,
//! coloring the small graph and detaching it back.

use std::fmt;

use crate::engine::detach_all;
use crate::error::{Error, Result};
use crate::evencolor::evenly_equitable_coloring;
use crate::multigraph::{AmalgamationSpec, ColoredMultigraph, Multigraph, VertexId};

/// Parts sizes (kept sorted) and the two multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GddParams {
    sizes: Vec<u64>,
    pub lambda1: u64,
    pub lambda2: u64,
}

impl GddParams {
    pub fn new(mut sizes: Vec<u64>, lambda1: u64, lambda2: u64) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidArgument("at least one part is required".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("part sizes must be positive".into()));
        }
        sizes.sort_unstable();
        Ok(GddParams {
            sizes,
            lambda1,
            lambda2,
        })
    }

    /// `p` parts of size `a`.
    pub fn uniform(p: usize, a: u64, lambda1: u64, lambda2: u64) -> Result<Self> {
        Self::new(vec![a; p], lambda1, lambda2)
    }

    pub fn p(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn vertex_count(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// The graph itself, parts laid out consecutively from vertex 0.
    pub fn build(&self) -> (Multigraph, Vec<Vec<VertexId>>) {
        let mut g = Multigraph::new(self.vertex_count() as usize);
        let mut parts = Vec::new();
        let mut next = 0;
        for &a in &self.sizes {
            parts.push((next..next + a as usize).map(VertexId).collect::<Vec<_>>());
            next += a as usize;
        }
        for (i, pi) in parts.iter().enumerate() {
            for (x, &u) in pi.iter().enumerate() {
                for &v in &pi[x + 1..] {
                    g.add_edges(u, v, self.lambda1);
                }
                for &v in parts[i + 1..].iter().flatten() {
                    g.add_edges(u, v, self.lambda2);
                }
            }
        }
        (g, parts)
    }
}

/// Spanning cycles (vertex sequences) partitioning the edges of `host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamDecomposition {
    pub host: Multigraph,
    pub cycles: Vec<Vec<VertexId>>,
}

/// Why a parameter set admits no Hamiltonian decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfeasibleReason {
    /// `p = 1` and `λ1(a−1)` odd.
    SinglePartParity,
    /// `λ2 = 0` with several parts.
    Disconnected,
    /// every part a singleton and `λ2(p−1)` odd.
    SingletonPartsParity,
    /// `λ1 = λ2` and `λ1(Σa−1)` odd.
    EqualMultiplicityParity,
    /// parts of different sizes.
    UnequalParts,
    /// `λ1(a−1) + λ2·a(p−1)` odd.
    OddDegree,
    /// `λ1 > λ2·a(p−1)`.
    TooManyPureEdges,
    /// `λ(n−1)` odd for `λK_n`.
    CompleteParity,
}

impl InfeasibleReason {
    pub fn label(self) -> &'static str {
        match self {
            InfeasibleReason::SinglePartParity => "trivial case (i)",
            InfeasibleReason::Disconnected => "trivial case (ii)",
            InfeasibleReason::SingletonPartsParity => "trivial case (iii)",
            InfeasibleReason::EqualMultiplicityParity => "trivial case (iv)",
            InfeasibleReason::UnequalParts => "condition (i)",
            InfeasibleReason::OddDegree => "condition (ii)",
            InfeasibleReason::TooManyPureEdges => "condition (iii)",
            InfeasibleReason::CompleteParity => "parity",
        }
    }

    fn explain(self) -> &'static str {
        match self {
            InfeasibleReason::SinglePartParity => "one part and λ1(a−1) is odd",
            InfeasibleReason::Disconnected => "λ2 = 0 with more than one part, graph is disconnected",
            InfeasibleReason::SingletonPartsParity => "all parts have size 1 and λ2(p−1) is odd",
            InfeasibleReason::EqualMultiplicityParity => "λ1 = λ2 and λ1(n−1) is odd",
            InfeasibleReason::UnequalParts => "part sizes are not all equal",
            InfeasibleReason::OddDegree => "λ1(a−1) + λ2·a(p−1) is odd",
            InfeasibleReason::TooManyPureEdges => "λ1 > λ2·a(p−1)",
            InfeasibleReason::CompleteParity => "λ(n−1) is odd",
        }
    }
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label(), self.explain())
    }
}

/// Every reason that applies, in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasibility {
    pub reasons: Vec<InfeasibleReason>,
}

impl Infeasibility {
    fn one(r: InfeasibleReason) -> Self {
        Infeasibility { reasons: vec![r] }
    }

    pub fn has(&self, r: InfeasibleReason) -> bool {
        self.reasons.contains(&r)
    }
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.reasons.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible { k: u64 },
    Infeasible(Infeasibility),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    /// The graph is `λK_n` for the given `λ`.
    Complete(u64),
    Detach,
}

fn classify(params: &GddParams) -> std::result::Result<(u64, Route), Infeasibility> {
    let (p, l1, l2) = (params.p() as u64, params.lambda1, params.lambda2);
    let sizes = params.sizes();
    let n = params.vertex_count();
    let parity = |lambda: u64, r: InfeasibleReason| {
        if (lambda * (n - 1)) % 2 == 1 {
            Err(Infeasibility::one(r))
        } else {
            Ok((lambda * (n - 1) / 2, Route::Complete(lambda)))
        }
    };
    if p == 1 {
        return parity(l1, InfeasibleReason::SinglePartParity);
    }
    if l2 == 0 {
        return Err(Infeasibility::one(InfeasibleReason::Disconnected));
    }
    if sizes.iter().all(|&a| a == 1) {
        return parity(l2, InfeasibleReason::SingletonPartsParity);
    }
    if l1 == l2 {
        return parity(l1, InfeasibleReason::EqualMultiplicityParity);
    }
    if sizes.first() != sizes.last() {
        return Err(Infeasibility::one(InfeasibleReason::UnequalParts));
    }
    let a = sizes[0];
    let degree = l1 * (a - 1) + l2 * a * (p - 1);
    let mut reasons = Vec::new();
    if degree % 2 == 1 {
        reasons.push(InfeasibleReason::OddDegree);
    }
    if l1 > l2 * a * (p - 1) {
        reasons.push(InfeasibleReason::TooManyPureEdges);
    }
    if reasons.is_empty() {
        Ok((degree / 2, Route::Detach))
    } else {
        Err(Infeasibility { reasons })
    }
}

/// Decides whether `K(a_1,…,a_p; λ1, λ2)` has a Hamiltonian decomposition
/// and, if so, how many cycles it has.
pub fn gdd_feasible(params: &GddParams) -> Feasibility {
    match classify(params) {
        Ok((k, _)) => Feasibility::Feasible { k },
        Err(i) => Feasibility::Infeasible(i),
    }
}

/// Zigzag construction for `K_n`, `n` odd: vertex `n−1` is the hub, the
/// rest sit on a ring and each cycle is a rotation of
/// `hub, 0, 1, −1, 2, −2, …`.
pub fn walecki_odd(n: usize) -> Result<HamDecomposition> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "the zigzag construction needs an odd n ≥ 3, got {n}"
        )));
    }
    let m = n - 1;
    let mut host = Multigraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            host.add_edges(VertexId(a), VertexId(b), 1);
        }
    }
    let cycles = (0..m / 2)
        .map(|i| {
            let mut c = vec![VertexId(m)];
            for t in 0..m {
                let step = t.div_ceil(2) as isize * if t % 2 == 1 { 1 } else { -1 };
                c.push(VertexId((i as isize + step).rem_euclid(m as isize) as usize));
            }
            c
        })
        .collect();
    Ok(HamDecomposition { host, cycles })
}

/// Reads the spanning cycle off a connected 2-regular color class: start at
/// the smallest vertex and always continue to the smallest unused
/// neighbour.
pub fn extract_cycle(g: &Multigraph) -> Result<Vec<VertexId>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Structural("a spanning cycle needs two vertices".into()));
    }
    for v in g.vertices() {
        if g.loops(v) > 0 {
            return Err(Error::UnexpectedLoops {
                vertex: v,
                loops: g.loops(v),
            });
        }
        if g.degree_unchecked(v) != 2 {
            return Err(Error::NotRegular {
                vertex: v,
                degree: g.degree_unchecked(v),
                expected: 2,
            });
        }
    }
    if g.component_count() != 1 {
        return Err(Error::Structural(format!(
            "color class has {} components",
            g.component_count()
        )));
    }
    let mut cycle = vec![VertexId(0)];
    let mut seen = vec![false; n];
    seen[0] = true;
    while cycle.len() < n {
        let cur = *cycle.last().expect("non-empty");
        let next = g
            .neighbors(cur)
            .map(|(u, _)| u)
            .find(|u| !seen[u.0])
            .ok_or_else(|| Error::Internal(format!("walk stuck at {cur}")))?;
        seen[next.0] = true;
        cycle.push(next);
    }
    Ok(cycle)
}

fn complete(n: usize, lambda: u64) -> Multigraph {
    let mut g = Multigraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            g.add_edges(VertexId(a), VertexId(b), lambda);
        }
    }
    g
}

/// `λ(n−1)/2` Hamiltonian cycles of `λK_n`: one vertex carrying
/// `λ·C(n,2)` loops, `n` loops per color, detached into `n` vertices.
pub fn ham_decompose_lambda_kn(n: usize, lambda: u64) -> Result<HamDecomposition> {
    if n < 2 || lambda < 1 {
        return Err(Error::InvalidArgument(format!(
            "need n ≥ 2 and λ ≥ 1, got n = {n}, λ = {lambda}"
        )));
    }
    let total = lambda * (n as u64 - 1);
    if total % 2 == 1 {
        return Err(Error::Infeasible(Infeasibility::one(
            InfeasibleReason::CompleteParity,
        )));
    }
    let k = (total / 2) as usize;
    let mut cg = ColoredMultigraph::new(1, k);
    for j in 0..k {
        cg.layer_mut(j).add_loops(VertexId(0), n as u64);
    }
    let eta = AmalgamationSpec::new(vec![n as u64])?;
    let d = detach_all(&cg, &eta)?;
    let cycles = d
        .graph
        .layers()
        .iter()
        .map(extract_cycle)
        .collect::<Result<Vec<_>>>()?;
    Ok(HamDecomposition {
        host: d.graph.underlying(),
        cycles,
    })
}

/// Decomposition of `K(a_1,…,a_p; λ1, λ2)` together with its parts.
pub fn ham_decompose_gdd(params: &GddParams) -> Result<(HamDecomposition, Vec<Vec<VertexId>>)> {
    let (k, route) = classify(params).map_err(Error::Infeasible)?;
    let n = params.vertex_count() as usize;
    if k == 0 {
        let (host, parts) = params.build();
        return Ok((
            HamDecomposition {
                host,
                cycles: Vec::new(),
            },
            parts,
        ));
    }
    if let Route::Complete(lambda) = route {
        // every part sits inside one λK_n; lay the parts out consecutively
        let d = ham_decompose_lambda_kn(n, lambda)?;
        let (_, parts) = params.build();
        return Ok((d, parts));
    }

    let (p, a) = (params.p(), params.sizes()[0]);
    let (l1, l2) = (params.lambda1, params.lambda2);
    let k = k as usize;
    let star = ham_decompose_lambda_kn(p, l2 * a * a)?;
    if star.cycles.len() < k {
        return Err(Error::Internal(format!(
            "{} cycles available for {k} colors",
            star.cycles.len()
        )));
    }
    let mut rest = complete(p, l2 * a * a);
    for w in 0..p {
        rest.add_loops(VertexId(w), l1 * a * (a - 1) / 2);
    }
    let mut cg = ColoredMultigraph::new(p, k);
    for (j, cycle) in star.cycles.iter().take(k).enumerate() {
        for i in 0..p {
            let (u, v) = (cycle[i], cycle[(i + 1) % p]);
            cg.layer_mut(j).add_edges(u, v, 1);
            rest.remove_edges(u, v, 1)?;
        }
    }
    let spread = evenly_equitable_coloring(&rest, k)?;
    for j in 0..k {
        cg.layer_mut(j).add_graph(spread.layer(j));
    }
    let eta = AmalgamationSpec::constant(p, a)?;
    let d = detach_all(&cg, &eta)?;
    let cycles = d
        .graph
        .layers()
        .iter()
        .map(extract_cycle)
        .collect::<Result<Vec<_>>>()?;
    Ok((
        HamDecomposition {
            host: d.graph.underlying(),
            cycles,
        },
        d.map.fibers().to_vec(),
    ))
}
