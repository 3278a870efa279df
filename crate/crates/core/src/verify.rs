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

//! Independent checkers for detachments, detachment steps and Hamiltonian
//! decompositions.
//!
//! Nothing here calls into the engine; every check recomputes its quantities
//! from the graphs it is handed, in exact arithmetic. Failures carry the
//! first counterexample in vertex/color order.

use std::fmt;

use crate::hamilton::{GddParams, HamDecomposition};
use crate::multigraph::{
    approx, approx_int, ratio, AmalgamationSpec, ColoredMultigraph, DetachmentMap, Multigraph,
    VertexId,
};
use crate::error::{Error, Result};

/// A failed check and its smallest counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub check: String,
    pub detail: String,
}

impl Witness {
    pub fn new(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Witness {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl std::error::Error for Witness {}

type Check = std::result::Result<(), Witness>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Loopless,
    Amalgamation,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::Loopless,
        Condition::Amalgamation,
        Condition::A1,
        Condition::A2,
        Condition::A3,
        Condition::A4,
        Condition::A5,
        Condition::A6,
        Condition::A7,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Loopless => "loopless",
            Condition::Amalgamation => "amalgamation",
            Condition::A1 => "A1",
            Condition::A2 => "A2",
            Condition::A3 => "A3",
            Condition::A4 => "A4",
            Condition::A5 => "A5",
            Condition::A6 => "A6",
            Condition::A7 => "A7",
        };
        f.pad(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub condition: Condition,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetachmentReport {
    pub verdicts: Vec<Verdict>,
}

impl DetachmentReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn verdict(&self, c: Condition) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.condition == c)
            .expect("every condition is reported")
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.verdicts.iter().find_map(|v| v.witness.as_ref())
    }
}

impl fmt::Display for DetachmentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            match &v.witness {
                None => writeln!(f, "{:<13} ok", v.condition)?,
                Some(w) => writeln!(f, "{:<13} FAIL {}", v.condition, w.detail)?,
            }
        }
        Ok(())
    }
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn fail(check: &str, detail: String) -> Check {
    Err(Witness::new(check, detail))
}

/// Colors of `h` whose degree over `η` is an even integer at every vertex.
pub fn qualifying_colors(h: &ColoredMultigraph, eta: &AmalgamationSpec) -> Vec<usize> {
    (0..h.k())
        .filter(|&j| {
            h.vertices().all(|w| {
                let d = h.layer(j).degree_unchecked(w);
                let e = eta.get(w);
                d % e == 0 && (d / e) % 2 == 0
            })
        })
        .collect()
}

/// Checks that `g` is a loopless `η`-detachment of `h` under `psi` and
/// reports each of A1–A7.
///
/// A7 is checked in the form that also holds when a qualifying color misses
/// a vertex entirely: every one of the `η(w)` copies of such a vertex is
/// isolated in that color, so
/// `ω(G(j)) = ω(H(j)) + Σ_{d_{H(j)}(w) = 0} (η(w) − 1)`.
/// When the color touches every vertex this is `ω(G(j)) = ω(H(j))`.
pub fn verify_detachment(
    h: &ColoredMultigraph,
    eta: &AmalgamationSpec,
    psi: &DetachmentMap,
    g: &ColoredMultigraph,
) -> Result<DetachmentReport> {
    if eta.len() != h.vertex_count() {
        return Err(Error::Structural(format!(
            "{} amalgamation numbers for {} vertices",
            eta.len(),
            h.vertex_count()
        )));
    }
    if psi.fibers().len() != h.vertex_count() || psi.detached_count() != g.vertex_count() {
        return Err(Error::Structural(format!(
            "map goes from {} to {} vertices, graphs have {} and {}",
            psi.detached_count(),
            psi.fibers().len(),
            g.vertex_count(),
            h.vertex_count()
        )));
    }
    if g.k() != h.k() {
        return Err(Error::Structural(format!(
            "color counts differ: {} and {}",
            h.k(),
            g.k()
        )));
    }
    psi.check_against(eta)?;

    let cx = Ctx { h, eta, psi, g };
    let verdicts = Condition::ALL
        .iter()
        .map(|&c| {
            let r = match c {
                Condition::Loopless => cx.loopless(),
                Condition::Amalgamation => cx.amalgamation(),
                Condition::A1 => cx.degrees(None),
                Condition::A2 => (0..h.k()).try_for_each(|j| cx.degrees(Some(j))),
                Condition::A3 => cx.intra(None),
                Condition::A4 => (0..h.k()).try_for_each(|j| cx.intra(Some(j))),
                Condition::A5 => cx.cross(None),
                Condition::A6 => (0..h.k()).try_for_each(|j| cx.cross(Some(j))),
                Condition::A7 => cx.components(),
            };
            Verdict {
                condition: c,
                witness: r.err(),
            }
        })
        .collect();
    Ok(DetachmentReport { verdicts })
}

struct Ctx<'a> {
    h: &'a ColoredMultigraph,
    eta: &'a AmalgamationSpec,
    psi: &'a DetachmentMap,
    g: &'a ColoredMultigraph,
}

impl Ctx<'_> {
    fn pick(cg: &ColoredMultigraph, color: Option<usize>) -> std::borrow::Cow<'_, Multigraph> {
        match color {
            Some(j) => std::borrow::Cow::Borrowed(cg.layer(j)),
            None => std::borrow::Cow::Owned(cg.underlying()),
        }
    }

    fn tag(check: &str, color: Option<usize>) -> String {
        match color {
            Some(j) => format!("{check} color {j}"),
            None => check.to_string(),
        }
    }

    fn loopless(&self) -> Check {
        for u in self.g.vertices() {
            for j in 0..self.g.k() {
                let l = self.g.layer(j).loops(u);
                if l > 0 {
                    return fail("loopless", format!("vertex {u} has {l} loop(s) of color {j}"));
                }
            }
        }
        Ok(())
    }

    /// Collapsing every fibre of `g` must give back `h`, color by color.
    fn amalgamation(&self) -> Check {
        for j in 0..self.h.k() {
            let mut back = Multigraph::new(self.h.vertex_count());
            let layer = self.g.layer(j);
            for u in self.g.vertices() {
                back.add_loops(self.psi.psi(u), layer.loops(u));
            }
            for (u, v, m) in layer.edges() {
                let (a, b) = (self.psi.psi(u), self.psi.psi(v));
                if a == b {
                    back.add_loops(a, m);
                } else {
                    back.add_edges(a, b, m);
                }
            }
            let orig = self.h.layer(j);
            for w in self.h.vertices() {
                if back.loops(w) != orig.loops(w) {
                    return fail(
                        "amalgamation",
                        format!(
                            "color {j}: vertex {w} collapses to {} loop(s), expected {}",
                            back.loops(w),
                            orig.loops(w)
                        ),
                    );
                }
                for z in self.h.vertices().filter(|&z| z > w) {
                    if back.mult(w, z) != orig.mult(w, z) {
                        return fail(
                            "amalgamation",
                            format!(
                                "color {j}: pair ({w},{z}) collapses to multiplicity {}, expected {}",
                                back.mult(w, z),
                                orig.mult(w, z)
                            ),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn degrees(&self, color: Option<usize>) -> Check {
        let (hl, gl) = (Self::pick(self.h, color), Self::pick(self.g, color));
        for w in self.h.vertices() {
            let (d, e) = (hl.degree_unchecked(w), self.eta.get(w));
            for &u in self.psi.fiber(w) {
                let du = gl.degree_unchecked(u);
                if !approx_int(du, d, e) {
                    return fail(
                        &Self::tag(if color.is_none() { "A1" } else { "A2" }, color),
                        format!("vertex {u} in fibre of {w}: degree {du}, expected ≈ {d}/{e}"),
                    );
                }
            }
        }
        Ok(())
    }

    fn intra(&self, color: Option<usize>) -> Check {
        let (hl, gl) = (Self::pick(self.h, color), Self::pick(self.g, color));
        for w in self.h.vertices() {
            let e = self.eta.get(w);
            if e < 2 {
                continue;
            }
            let (l, c) = (hl.loops(w), binom2(e));
            let fiber = self.psi.fiber(w);
            for (i, &u) in fiber.iter().enumerate() {
                for &v in &fiber[i + 1..] {
                    let m = gl.mult(u, v);
                    if !approx_int(m, l, c) {
                        return fail(
                            &Self::tag(if color.is_none() { "A3" } else { "A4" }, color),
                            format!("pair ({u},{v}) in fibre of {w}: multiplicity {m}, expected ≈ {l}/{c}"),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn cross(&self, color: Option<usize>) -> Check {
        let (hl, gl) = (Self::pick(self.h, color), Self::pick(self.g, color));
        for w in self.h.vertices() {
            for z in self.h.vertices().filter(|&z| z > w) {
                let (m, den) = (hl.mult(w, z), self.eta.get(w) * self.eta.get(z));
                for &u in self.psi.fiber(w) {
                    for &v in self.psi.fiber(z) {
                        let x = gl.mult(u, v);
                        if !approx_int(x, m, den) {
                            return fail(
                                &Self::tag(if color.is_none() { "A5" } else { "A6" }, color),
                                format!(
                                    "pair ({u},{v}) over ({w},{z}): multiplicity {x}, expected ≈ {m}/{den}"
                                ),
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn components(&self) -> Check {
        for j in qualifying_colors(self.h, self.eta) {
            let hl = self.h.layer(j);
            let isolated_copies: u64 = self
                .h
                .vertices()
                .filter(|&w| hl.degree_unchecked(w) == 0)
                .map(|w| self.eta.get(w) - 1)
                .sum();
            let expected = hl.component_count() as u64 + isolated_copies;
            let got = self.g.layer(j).component_count() as u64;
            if got != expected {
                return fail(
                    "A7",
                    format!(
                        "color {j}: {got} component(s), expected {expected} ({} before detaching)",
                        hl.component_count()
                    ),
                );
            }
        }
        Ok(())
    }
}

/// Checks the numeric relations between consecutive graphs of one
/// detachment step at `y` that created `v_new`: loops at `y` shrink by the
/// factor `(η−2)/η`, degrees and multiplicities at `y` scale by `(η−1)/η`,
/// and the new vertex receives about a `1/η` share of everything. Each
/// relation is checked for the whole graph and for every color.
pub fn assert_step_relations(
    before: &ColoredMultigraph,
    after: &ColoredMultigraph,
    y: VertexId,
    v_new: VertexId,
    eta_before: &AmalgamationSpec,
) -> Check {
    if after.vertex_count() != before.vertex_count() + 1 || v_new.0 != before.vertex_count() {
        return fail("step", format!("{v_new} is not the one new vertex"));
    }
    let e = eta_before.get(y);
    if e < 2 {
        return fail("step", format!("vertex {y} had amalgamation number {e}"));
    }
    let e1 = e - 1;
    let under = (before.underlying(), after.underlying());
    let mut layers: Vec<(Option<usize>, &Multigraph, &Multigraph)> =
        vec![(None, &under.0, &under.1)];
    for j in 0..before.k() {
        layers.push((Some(j), before.layer(j), after.layer(j)));
    }
    let neighbours: Vec<VertexId> = under.0.neighbors(y).map(|(v, _)| v).collect();

    for (color, hi, hn) in layers {
        let tag = |b: &str| match color {
            Some(j) => format!("{b} color {j}"),
            None => b.to_string(),
        };
        let (l, ln) = (hi.loops(y), hn.loops(y));
        if !approx_int(ln, l * (e1 - 1), e) {
            return fail(&tag("loops"), format!("{ln} loop(s) left at {y}, expected ≈ {l}·{}/{e}", e1 - 1));
        }
        let (d, dn, dv) = (hi.degree_unchecked(y), hn.degree_unchecked(y), hn.degree_unchecked(v_new));
        if !approx(ratio(dn, e1), ratio(d, e)) {
            return fail(&tag("degree (i)"), format!("d'({y})/{e1} = {dn}/{e1}, expected ≈ {d}/{e}"));
        }
        if !approx_int(dv, d, e) {
            return fail(&tag("degree (ii)"), format!("d'({v_new}) = {dv}, expected ≈ {d}/{e}"));
        }
        for &v in &neighbours {
            let (m, mn, mv) = (hi.mult(y, v), hn.mult(y, v), hn.mult(v_new, v));
            if !approx(ratio(mn, e1), ratio(m, e)) {
                return fail(
                    &tag("multiplicity (i)"),
                    format!("m'({y},{v})/{e1} = {mn}/{e1}, expected ≈ {m}/{e}"),
                );
            }
            if !approx_int(mv, m, e) {
                return fail(
                    &tag("multiplicity (ii)"),
                    format!("m'({v_new},{v}) = {mv}, expected ≈ {m}/{e}"),
                );
            }
        }
        let my = hn.mult(y, v_new);
        if !approx(ratio(my, e1), ratio(l, binom2(e))) {
            return fail(
                &tag("multiplicity (iii)"),
                format!("m'({y},{v_new})/{e1} = {my}/{e1}, expected ≈ {l}/{}", binom2(e)),
            );
        }
    }
    Ok(())
}

/// Per-step connectivity bookkeeping for qualifying colors: they stay
/// qualifying, and the component count only grows when the split vertex
/// carried no edge of that color (the new vertex is then isolated).
pub fn check_connectivity_step(
    before: &ColoredMultigraph,
    after: &ColoredMultigraph,
    eta_before: &AmalgamationSpec,
    eta_after: &AmalgamationSpec,
) -> Check {
    let now = qualifying_colors(after, eta_after);
    let y = before
        .vertices()
        .find(|&v| eta_after.get(v) + 1 == eta_before.get(v));
    for j in qualifying_colors(before, eta_before) {
        if !now.contains(&j) {
            return fail("qualifying", format!("color {j} stopped qualifying"));
        }
        let isolated = y.map_or(0, |y| (before.layer(j).degree_unchecked(y) == 0) as usize);
        let (w0, w1) = (
            before.layer(j).component_count(),
            after.layer(j).component_count(),
        );
        if w1 != w0 + isolated {
            return fail(
                "components",
                format!("color {j}: {w0} component(s) became {w1}"),
            );
        }
    }
    Ok(())
}

/// Replays the invariants that hold for every intermediate graph `h_i` of a
/// run on `h`: loops, degrees and multiplicities at the original vertices
/// stay in proportion to their remaining amalgamation numbers.
pub fn check_partial_detachment(
    h: &ColoredMultigraph,
    eta: &AmalgamationSpec,
    h_i: &ColoredMultigraph,
    eta_i: &AmalgamationSpec,
    map_i: &DetachmentMap,
) -> Check {
    let (hu, iu) = (h.underlying(), h_i.underlying());
    for w in h.vertices() {
        let (e, ei) = (eta.get(w), eta_i.get(w));
        if e >= 2 && ei >= 2 {
            let (l, li) = (hu.loops(w), iu.loops(w));
            if !approx(ratio(li, binom2(ei)), ratio(l, binom2(e))) {
                return fail("loops (i)", format!("vertex {w}: {li} loop(s) at η_i = {ei}"));
            }
        }
        let (d, di) = (hu.degree_unchecked(w), iu.degree_unchecked(w));
        if !approx(ratio(di, ei), ratio(d, e)) {
            return fail("degree (i)", format!("vertex {w}: degree {di} at η_i = {ei}"));
        }
        if e >= 2 {
            for &v in map_i.fiber(w).iter().filter(|&&v| v != w) {
                let m = iu.mult(w, v);
                if !approx(ratio(m, ei), ratio(hu.loops(w), binom2(e))) {
                    return fail("multiplicity (i)", format!("m({w},{v}) = {m} at η_i = {ei}"));
                }
            }
        }
        for z in h.vertices().filter(|&z| z > w) {
            let (m, mi) = (hu.mult(w, z), iu.mult(w, z));
            let zi = eta_i.get(z);
            if !approx(ratio(mi, ei * zi), ratio(m, e * eta.get(z))) {
                return fail("pair (i)", format!("m({w},{z}) = {mi} at η_i = ({ei},{zi})"));
            }
        }
    }
    Ok(())
}

/// Each cycle must be a spanning cycle of `host` (a pair of parallel edges
/// counts when there are two vertices) and the cycles must use every edge
/// of `host` exactly once.
pub fn verify_ham_decomposition(host: &Multigraph, d: &HamDecomposition) -> Check {
    let n = host.vertex_count();
    if let Some(v) = host.vertices().find(|&v| host.loops(v) > 0) {
        return fail("host", format!("vertex {v} carries a loop"));
    }
    let mut union = Multigraph::new(n);
    for (c, cycle) in d.cycles.iter().enumerate() {
        if cycle.len() != n || n < 2 {
            return fail(
                "spanning",
                format!("cycle {c} has {} vertices, graph has {n}", cycle.len()),
            );
        }
        let mut seen = vec![false; n];
        for &v in cycle {
            if v.0 >= n || std::mem::replace(&mut seen[v.0], true) {
                return fail("spanning", format!("cycle {c} repeats or leaves at vertex {v}"));
            }
        }
        for i in 0..n {
            union.add_edges(cycle[i], cycle[(i + 1) % n], 1);
        }
    }
    for u in host.vertices() {
        for v in host.vertices().filter(|&v| v > u) {
            if union.mult(u, v) != host.mult(u, v) {
                return fail(
                    "union",
                    format!(
                        "pair ({u},{v}) covered {} time(s), host multiplicity {}",
                        union.mult(u, v),
                        host.mult(u, v)
                    ),
                );
            }
        }
    }
    Ok(())
}

/// Whether `g` is the complete multipartite multigraph with the given parts,
/// `λ1` inside parts and `λ2` across.
pub fn is_gdd(g: &Multigraph, params: &GddParams, partition: &[Vec<VertexId>]) -> bool {
    let n = g.vertex_count();
    let mut part_of = vec![usize::MAX; n];
    for (p, part) in partition.iter().enumerate() {
        for &v in part {
            if v.0 >= n || part_of[v.0] != usize::MAX {
                return false;
            }
            part_of[v.0] = p;
        }
    }
    if part_of.contains(&usize::MAX) {
        return false;
    }
    let mut sizes: Vec<u64> = partition.iter().map(|p| p.len() as u64).collect();
    sizes.sort_unstable();
    if sizes != params.sizes() {
        return false;
    }
    g.is_loopless()
        && g.vertices().all(|u| {
            g.vertices().filter(|&v| v > u).all(|v| {
                let want = if part_of[u.0] == part_of[v.0] {
                    params.lambda1
                } else {
                    params.lambda2
                };
                g.mult(u, v) == want
            })
        })
}

/// Edges of one cycle split by whether they stay inside a part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeProfile {
    pub pure_per_part: Vec<u64>,
    pub mixed: u64,
}

pub fn cycle_edge_profile(cycle: &[VertexId], partition: &[Vec<VertexId>]) -> EdgeProfile {
    let mut part_of = std::collections::BTreeMap::new();
    for (p, part) in partition.iter().enumerate() {
        for &v in part {
            part_of.insert(v, p);
        }
    }
    let mut profile = EdgeProfile {
        pure_per_part: vec![0; partition.len()],
        mixed: 0,
    };
    let n = cycle.len();
    for i in 0..n {
        let (a, b) = (part_of[&cycle[i]], part_of[&cycle[(i + 1) % n]]);
        if a == b {
            profile.pure_per_part[a] += 1;
        } else {
            profile.mixed += 1;
        }
    }
    profile
}
