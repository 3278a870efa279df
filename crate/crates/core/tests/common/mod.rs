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

// Reference checkers written from the definitions, sharing nothing with the
// library beyond the graph accessors. Each returns the first problem found.

#![allow(dead_code)]

use amalgam::bee::{BipartiteColoring, BipartiteMultigraph};
use amalgam::{ColoredMultigraph, Multigraph, VertexId};

pub fn v(i: usize) -> VertexId {
    VertexId(i)
}

/// floor(num/den) <= x <= ceil(num/den)
fn near(x: u64, num: u64, den: u64) -> bool {
    x * den + den > num && x * den < num + den
}

fn components(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if g.mult(v(a), v(b)) > 0 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

fn degree(g: &Multigraph, x: usize) -> u64 {
    2 * g.loops(v(x))
        + (0..g.vertex_count())
            .filter(|&y| y != x)
            .map(|y| g.mult(v(x), v(y)))
            .sum::<u64>()
}

fn total(cg: &ColoredMultigraph) -> Multigraph {
    let n = cg.vertex_count();
    let mut t = Multigraph::new(n);
    for j in 0..cg.k() {
        let l = cg.layer(j);
        for a in 0..n {
            t.add_loops(v(a), l.loops(v(a)));
            for b in a + 1..n {
                t.add_edges(v(a), v(b), l.mult(v(a), v(b)));
            }
        }
    }
    t
}

/// Loopless η-detachment with every balance condition, overall and per
/// color, plus connectivity of evenly spread colors (copies of a vertex a
/// color never touches are isolated and counted as extra components).
pub fn check_detachment(
    h: &ColoredMultigraph,
    eta: &[u64],
    psi: &[usize],
    g: &ColoredMultigraph,
) -> Result<(), String> {
    let (nh, ng) = (h.vertex_count(), g.vertex_count());
    if psi.len() != ng || eta.len() != nh {
        return Err("size mismatch".into());
    }
    let mut fib = vec![Vec::new(); nh];
    for (u, &w) in psi.iter().enumerate() {
        fib[w].push(u);
    }
    for w in 0..nh {
        if fib[w].len() as u64 != eta[w] {
            return Err(format!("fibre of {w} has {} vertices", fib[w].len()));
        }
    }
    let mut views: Vec<(String, Multigraph, Multigraph)> =
        vec![("all".into(), total(h), total(g))];
    for j in 0..h.k() {
        views.push((format!("color {j}"), h.layer(j).clone(), g.layer(j).clone()));
    }
    for (name, hl, gl) in &views {
        // collapse g back onto h
        for w in 0..nh {
            let mut l = 0;
            for (i, &a) in fib[w].iter().enumerate() {
                l += gl.loops(v(a));
                for &b in &fib[w][i + 1..] {
                    l += gl.mult(v(a), v(b));
                }
            }
            if l != hl.loops(v(w)) {
                return Err(format!("{name}: fibre of {w} collapses to {l} loops"));
            }
            for z in w + 1..nh {
                let m: u64 = fib[w]
                    .iter()
                    .flat_map(|&a| fib[z].iter().map(move |&b| (a, b)))
                    .map(|(a, b)| gl.mult(v(a), v(b)))
                    .sum();
                if m != hl.mult(v(w), v(z)) {
                    return Err(format!("{name}: ({w},{z}) collapses to {m}"));
                }
            }
        }
        for u in 0..ng {
            if gl.loops(v(u)) > 0 {
                return Err(format!("{name}: loop at {u}"));
            }
        }
        for w in 0..nh {
            let e = eta[w];
            for &a in &fib[w] {
                if !near(degree(gl, a), degree(hl, w), e) {
                    return Err(format!("{name}: degree of {a} over {w}"));
                }
            }
            if e >= 2 {
                for (i, &a) in fib[w].iter().enumerate() {
                    for &b in &fib[w][i + 1..] {
                        if !near(gl.mult(v(a), v(b)), hl.loops(v(w)), e * (e - 1) / 2) {
                            return Err(format!("{name}: multiplicity ({a},{b}) inside {w}"));
                        }
                    }
                }
            }
            for z in w + 1..nh {
                for &a in &fib[w] {
                    for &b in &fib[z] {
                        if !near(gl.mult(v(a), v(b)), hl.mult(v(w), v(z)), e * eta[z]) {
                            return Err(format!("{name}: multiplicity ({a},{b}) over ({w},{z})"));
                        }
                    }
                }
            }
        }
    }
    for j in 0..h.k() {
        let hl = h.layer(j);
        let even = (0..nh).all(|w| {
            let d = degree(hl, w);
            d % eta[w] == 0 && (d / eta[w]) % 2 == 0
        });
        if !even {
            continue;
        }
        let extra: u64 = (0..nh)
            .filter(|&w| degree(hl, w) == 0)
            .map(|w| eta[w] - 1)
            .sum();
        let (a, b) = (components(hl) as u64, components(g.layer(j)) as u64);
        if b != a + extra {
            return Err(format!("color {j}: {a} components became {b}"));
        }
    }
    Ok(())
}

/// Every cycle visits every vertex once and the cycles use each host edge
/// exactly once.
pub fn check_ham(host: &Multigraph, cycles: &[Vec<VertexId>]) -> Result<(), String> {
    let n = host.vertex_count();
    let mut used = Multigraph::new(n);
    for (c, cyc) in cycles.iter().enumerate() {
        let mut s: Vec<usize> = cyc.iter().map(|x| x.0).collect();
        s.sort_unstable();
        if s != (0..n).collect::<Vec<_>>() || n < 2 {
            return Err(format!("cycle {c} is not spanning"));
        }
        for i in 0..n {
            used.add_edges(cyc[i], cyc[(i + 1) % n], 1);
        }
    }
    for a in 0..n {
        if host.loops(v(a)) > 0 {
            return Err("host has loops".into());
        }
        for b in a + 1..n {
            if used.mult(v(a), v(b)) != host.mult(v(a), v(b)) {
                return Err(format!("pair ({a},{b}) covered {} times", used.mult(v(a), v(b))));
            }
        }
    }
    Ok(())
}

/// Host is K(sizes; λ1, λ2) with the given parts.
pub fn check_gdd(
    host: &Multigraph,
    sizes: &[u64],
    l1: u64,
    l2: u64,
    parts: &[Vec<VertexId>],
) -> Result<(), String> {
    let n = host.vertex_count();
    let mut part = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        for x in p {
            if part[x.0] != usize::MAX {
                return Err(format!("{x} in two parts"));
            }
            part[x.0] = i;
        }
    }
    let mut got: Vec<u64> = parts.iter().map(|p| p.len() as u64).collect();
    let mut want = sizes.to_vec();
    got.sort_unstable();
    want.sort_unstable();
    if got != want || part.contains(&usize::MAX) {
        return Err("parts do not match sizes".into());
    }
    for a in 0..n {
        if host.loops(v(a)) > 0 {
            return Err("loop".into());
        }
        for b in a + 1..n {
            let m = if part[a] == part[b] { l1 } else { l2 };
            if host.mult(v(a), v(b)) != m {
                return Err(format!("({a},{b}) has multiplicity {}", host.mult(v(a), v(b))));
            }
        }
    }
    Ok(())
}

/// Exhaustive search: can the edges of `host` be split into spanning
/// cycles? Enumerates the cycles through vertex 0 along the remaining edges
/// and recurses.
pub fn brute_force_decomposable(host: &Multigraph) -> bool {
    let n = host.vertex_count();
    let mut rest = vec![vec![0u64; n]; n];
    for a in 0..n {
        if host.loops(v(a)) > 0 {
            return false;
        }
        for b in 0..n {
            if a != b {
                rest[a][b] = host.mult(v(a), v(b));
            }
        }
    }
    if n < 2 {
        return rest.iter().flatten().all(|&m| m == 0);
    }
    fn empty(rest: &[Vec<u64>]) -> bool {
        rest.iter().flatten().all(|&m| m == 0)
    }
    fn extend(rest: &mut Vec<Vec<u64>>, path: &mut Vec<usize>, n: usize) -> bool {
        let last = *path.last().unwrap();
        if path.len() == n {
            if rest[last][0] == 0 {
                return false;
            }
            rest[last][0] -= 1;
            rest[0][last] -= 1;
            let ok = empty(rest) || {
                let mut p = vec![0];
                extend(rest, &mut p, n)
            };
            rest[last][0] += 1;
            rest[0][last] += 1;
            return ok;
        }
        for next in 1..n {
            if path.contains(&next) || rest[last][next] == 0 {
                continue;
            }
            // with two vertices the closing edge is a second parallel edge
            rest[last][next] -= 1;
            rest[next][last] -= 1;
            path.push(next);
            let ok = extend(rest, path, n);
            path.pop();
            rest[last][next] += 1;
            rest[next][last] += 1;
            if ok {
                return true;
            }
        }
        false
    }
    empty(&rest) || extend(&mut rest, &mut vec![0], n)
}

/// Balanced (per pair), equitable (per vertex) and equalized (per class),
/// from the counts alone.
pub fn check_bee(bg: &BipartiteMultigraph, c: &BipartiteColoring, k: usize) -> Result<(), String> {
    let spread = |xs: &[u64]| xs.iter().max().unwrap() - xs.iter().min().unwrap();
    let mut left = vec![vec![0u64; k]; bg.left_count()];
    let mut right = vec![vec![0u64; k]; bg.right_count()];
    let mut class = vec![0u64; k];
    for l in 0..bg.left_count() {
        for r in 0..bg.right_count() {
            let counts: Vec<u64> = (0..k).map(|i| c.count(l, r, i)).collect();
            if counts.iter().sum::<u64>() != bg.mult(l, r) {
                return Err(format!("pair ({l},{r}) not fully colored"));
            }
            if spread(&counts) > 1 {
                return Err(format!("pair ({l},{r}) unbalanced: {counts:?}"));
            }
            for i in 0..k {
                left[l][i] += counts[i];
                right[r][i] += counts[i];
                class[i] += counts[i];
            }
        }
    }
    if let Some(l) = left.iter().position(|x| spread(x) > 1) {
        return Err(format!("left {l} not equitable: {:?}", left[l]));
    }
    if let Some(r) = right.iter().position(|x| spread(x) > 1) {
        return Err(format!("right {r} not equitable: {:?}", right[r]));
    }
    if spread(&class) > 1 {
        return Err(format!("classes not equalized: {class:?}"));
    }
    Ok(())
}

/// Color classes partition `g`, every class has even degree everywhere and
/// the class degrees at a vertex differ by at most two.
pub fn check_evenly_equitable(g: &Multigraph, cg: &ColoredMultigraph) -> Result<(), String> {
    let n = g.vertex_count();
    let t = total(cg);
    for a in 0..n {
        if t.loops(v(a)) != g.loops(v(a)) {
            return Err(format!("loops at {a} not partitioned"));
        }
        for b in a + 1..n {
            if t.mult(v(a), v(b)) != g.mult(v(a), v(b)) {
                return Err(format!("pair ({a},{b}) not partitioned"));
            }
        }
        let ds: Vec<u64> = (0..cg.k()).map(|j| degree(cg.layer(j), a)).collect();
        if ds.iter().any(|d| d % 2 == 1) {
            return Err(format!("odd class degree at {a}: {ds:?}"));
        }
        if ds.iter().max().unwrap() - ds.iter().min().unwrap() > 2 {
            return Err(format!("class degrees at {a} spread: {ds:?}"));
        }
    }
    Ok(())
}

pub fn complete(n: usize, lambda: u64) -> Multigraph {
    let mut g = Multigraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            g.add_edges(v(a), v(b), lambda);
        }
    }
    g
}
