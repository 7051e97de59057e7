//! Vertex-by-vertex placement with canonical-prefix pruning.
//!
//! A sequence of placed points is kept only if no grid symmetry maps it to a
//! lexicographically smaller sequence. Prefixes of such sequences have the same
//! property, and a symmetry that already maps the prefix to something larger
//! can never win later, so only the symmetries fixing the prefix (its
//! stabilizer) are consulted. Once the stabilizer is trivial no test is needed.
//!
//! In general position mode two simplices sharing a vertex cannot meet
//! anywhere else, so only vertex-disjoint edge/facet pairs are tested. Each
//! vertex still to be placed keeps a domain of admissible points: points that
//! would break general position are masked out, and an edge/facet pair prunes
//! the domain of its last vertex as soon as its other four are placed. A branch
//! dies when any domain runs empty. The next vertex is the one with the fewest
//! admissible points, ties going to the static order. Domains move along with
//! the configuration under a grid symmetry, so symmetric configurations place
//! their vertices in the same order and the prefix test stays exact.
//!
//! The other modes place vertices in the static order and run the generic
//! incremental checks.

use super::grid::{cross, dot, free_from_set, orient, sub, GpMasks, Lattice};
use super::kernel::{extension_ok, Topo};
use super::{par_subtrees, Control, Part, SearchConfig};
use crate::checker::RealizationMode;
use crate::complex::{Triangulation, Vertex};
use crate::geom::LatticePoint;

/// Greedy order: start at a vertex of maximum degree, then repeatedly take the
/// vertex with most placed neighbours, ties going to higher degree and then to
/// the lower index.
pub(crate) fn vertex_order(topo: &Topo) -> Vec<Vertex> {
    let n = topo.n;
    let deg: Vec<usize> = topo.nbrs.iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut seen = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (seen[v], deg[v], std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v as Vertex);
        for &u in &topo.nbrs[v] {
            seen[u as usize] += 1;
        }
    }
    order
}

struct Plan {
    n: usize,
    order: Vec<Vertex>,
    rank: Vec<usize>,
    /// vertex-disjoint edge/facet pairs `[a, b, x, y, z]` containing both
    /// vertices `v` and `u`, at `v * n + u`
    pair_checks: Vec<Vec<[u8; 5]>>,
}

impl Plan {
    fn new(topo: &Topo) -> Self {
        let n = topo.n;
        let order = vertex_order(topo);
        let mut rank = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            rank[v as usize] = k;
        }
        let mut pair_checks = vec![Vec::new(); n * n];
        for e in &topo.edges {
            for f in topo.facets.iter().filter(|f| !f.contains(&e[0]) && !f.contains(&e[1])) {
                let t = [e[0] as u8, e[1] as u8, f[0] as u8, f[1] as u8, f[2] as u8];
                for &v in &t {
                    for &u in &t {
                        if u != v {
                            pair_checks[v as usize * n + u as usize].push(t);
                        }
                    }
                }
            }
        }
        Plan { n, order, rank, pair_checks }
    }
}

/// Whether segment `ab` crosses triangle `xyz`, for five points no four of
/// which are coplanar.
#[inline]
fn crosses(a: [i64; 3], b: [i64; 3], x: [i64; 3], y: [i64; 3], z: [i64; 3]) -> bool {
    let nrm = cross(sub(y, x), sub(z, x));
    let da = dot(nrm, sub(a, x));
    let db = dot(nrm, sub(b, x));
    if (da > 0) == (db > 0) {
        return false;
    }
    let s1 = orient(a, b, x, y) > 0;
    let s2 = orient(a, b, y, z) > 0;
    let s3 = orient(a, b, z, x) > 0;
    s1 == s2 && s2 == s3
}

struct Walker<'a> {
    lat: &'a Lattice,
    plan: &'a Plan,
    topo: &'a Topo,
    ctl: &'a Control,
    mode: RealizationMode,
    gp: bool,
    masks: GpMasks,
    /// points excluded after `k` placements, `lat.words` per level
    blocked: Vec<u64>,
    /// general position only: after `k` placements, the admissible points of
    /// each vertex, `lat.words` per (level, vertex)
    domains: Vec<u64>,
    /// vertex and point placed at each depth
    order: Vec<Vertex>,
    pts: Vec<u32>,
    /// coordinates of each placed vertex
    vc: Vec<[i64; 3]>,
    at: Vec<Option<LatticePoint>>,
    /// non-identity symmetries fixing the first `k` points
    stab: Vec<Vec<u8>>,
    checks: Vec<[u8; 5]>,
    part: Part,
    local: u64,
    subtree: usize,
    collect: Option<(usize, Vec<Vec<u32>>)>,
}

impl<'a> Walker<'a> {
    fn new(lat: &'a Lattice, plan: &'a Plan, topo: &'a Topo, ctl: &'a Control, mode: RealizationMode) -> Self {
        let n = plan.n;
        let w = lat.words;
        let gp = mode == RealizationMode::GeneralPosition;
        let mut stab = vec![Vec::with_capacity(47); n + 1];
        stab[0] = (1..48).collect();
        let mut domains = Vec::new();
        if gp {
            domains = vec![0u64; (n + 1) * n * w];
            for u in 0..n {
                for i in 0..lat.len() {
                    domains[u * w + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Walker {
            lat,
            plan,
            topo,
            ctl,
            mode,
            gp,
            masks: GpMasks::new(lat),
            blocked: vec![0; (n + 1) * w],
            domains,
            order: plan.order.clone(),
            pts: vec![0; n],
            vc: vec![[0; 3]; n],
            at: vec![None; n],
            stab,
            checks: Vec::new(),
            part: Part::default(),
            local: 0,
            subtree: 0,
            collect: None,
        }
    }

    fn dom(&self, k: usize, u: usize) -> std::ops::Range<usize> {
        let w = self.lat.words;
        let at = (k * self.plan.n + u) * w;
        at..at + w
    }

    /// Vertex to place at depth `k`.
    fn choose(&self, k: usize) -> Vertex {
        if !self.gp {
            return self.plan.order[k];
        }
        (0..self.plan.n)
            .filter(|&u| self.at[u].is_none())
            .min_by_key(|&u| {
                let size: u32 = self.domains[self.dom(k, u)].iter().map(|w| w.count_ones()).sum();
                (size, self.plan.rank[u])
            })
            .unwrap() as Vertex
    }

    fn next_free(&self, k: usize, v: Vertex, from: u32) -> Option<u32> {
        let w = self.lat.words;
        let m = if self.gp { &self.domains[self.dom(k, v as usize)] } else { &self.blocked[k * w..(k + 1) * w] };
        free_from_set(m, from, self.lat.len(), self.gp).next()
    }

    fn sym_ok(&self, k: usize, c: u32) -> bool {
        self.stab[k].iter().all(|&h| self.lat.sym[h as usize][c as usize] >= c)
    }

    /// Generic check of the simplices completed by putting `v` on `c`. In
    /// general position mode the domains already encode it.
    fn fits(&mut self, v: Vertex, c: u32) -> bool {
        if self.gp {
            return true;
        }
        self.at[v as usize] = Some(self.lat.point(c));
        let ok = extension_ok(self.topo, &self.at, v, self.mode);
        self.at[v as usize] = None;
        ok
    }

    /// Places `v` on `c` at depth `k`. In general position mode this also
    /// narrows the domains of the other vertices and returns false when one
    /// becomes empty.
    fn place(&mut self, k: usize, v: Vertex, c: u32) -> bool {
        self.order[k] = v;
        self.pts[k] = c;
        self.vc[v as usize] = self.lat.pts[c as usize];
        self.at[v as usize] = Some(self.lat.point(c));
        let w = self.lat.words;
        let (lo, hi) = self.blocked.split_at_mut((k + 1) * w);
        let next = &mut hi[..w];
        next.copy_from_slice(&lo[k * w..]);
        if self.gp {
            self.masks.or_blocked(self.lat, &self.pts[..k], c, next);
        } else {
            next[c as usize / 64] |= 1 << (c % 64);
        }
        let (lo, hi) = self.stab.split_at_mut(k + 1);
        let sym = &self.lat.sym;
        hi[0].clear();
        hi[0].extend(lo[k].iter().copied().filter(|&h| sym[h as usize][c as usize] == c));
        !self.gp || self.narrow(k, v)
    }

    fn narrow(&mut self, k: usize, v: Vertex) -> bool {
        let n = self.plan.n;
        let w = self.lat.words;
        let blocked = (k + 1) * w..(k + 2) * w;
        for u in 0..n {
            if self.at[u].is_some() {
                continue;
            }
            let (src, dst) = (self.dom(k, u), self.dom(k + 1, u));
            let (lo, hi) = self.domains.split_at_mut(dst.start);
            let dom = &mut hi[..w];
            for ((d, s), b) in dom.iter_mut().zip(&lo[src]).zip(&self.blocked[blocked.clone()]) {
                *d = s & !b;
            }
            let at = &self.at;
            self.checks.clear();
            self.checks.extend(
                self.plan.pair_checks[v as usize * n + u]
                    .iter()
                    .filter(|t| t.iter().all(|&i| i as usize == u || at[i as usize].is_some())),
            );
            if !self.checks.is_empty() {
                let (vc, pts, checks) = (&self.vc, &self.lat.pts, &self.checks);
                for (wi, word) in dom.iter_mut().enumerate() {
                    let mut bits = *word;
                    while bits != 0 {
                        let b = bits.trailing_zeros();
                        bits &= bits - 1;
                        let q = pts[wi * 64 + b as usize];
                        let p = |i: u8| if i as usize == u { q } else { vc[i as usize] };
                        if checks.iter().any(|&[a, b, x, y, z]| crosses(p(a), p(b), p(x), p(y), p(z))) {
                            *word &= !(1u64 << b);
                        }
                    }
                }
            }
            if dom.iter().all(|&x| x == 0) {
                return false;
            }
        }
        true
    }

    fn unplace(&mut self, v: Vertex) {
        self.at[v as usize] = None;
    }

    fn leaf(&mut self) -> bool {
        let n = self.plan.n;
        self.part.stats.solutions += 48 / (self.stab[n].len() as u64 + 1);
        if self.part.witness.is_none() {
            self.part.witness = Some(self.at.iter().map(|p| p.unwrap()).collect());
            self.ctl.found(self.subtree);
        }
        self.ctl.stop_on_witness()
    }

    fn count_node(&mut self, depth: usize) {
        let st = &mut self.part.stats;
        st.nodes_expanded += 1;
        st.max_depth_reached = st.max_depth_reached.max(depth);
        if st.depth_profile.len() < depth {
            st.depth_profile.resize(depth, 0);
        }
        st.depth_profile[depth - 1] += 1;
    }

    /// Returns true when the search has to unwind.
    fn dfs(&mut self, k: usize) -> bool {
        if k == self.plan.n {
            return self.leaf();
        }
        if let Some((d, roots)) = &mut self.collect {
            if k == *d {
                roots.push(self.pts[..k].to_vec());
                return false;
            }
        }
        let v = self.choose(k);
        let mut from = 0;
        while let Some(c) = self.next_free(k, v, from) {
            from = c + 1;
            if !self.sym_ok(k, c) {
                self.part.stats.canonical_rejections += 1;
                continue;
            }
            if !self.fits(v, c) {
                self.part.stats.feasibility_prunes += 1;
                continue;
            }
            if !self.place(k, v, c) {
                self.unplace(v);
                self.part.stats.feasibility_prunes += 1;
                continue;
            }
            self.count_node(k + 1);
            let stop = self.ctl.tick(&mut self.local, self.subtree) || self.dfs(k + 1);
            self.unplace(v);
            if stop {
                return true;
            }
        }
        false
    }

    /// Re-enters the tree at a prefix found by an earlier walk.
    fn replay(&mut self, prefix: &[u32]) {
        for (k, &c) in prefix.iter().enumerate() {
            let v = self.choose(k);
            let ok = self.place(k, v, c);
            debug_assert!(ok);
        }
    }
}

pub(super) fn search(t: &Triangulation, lat: &Lattice, cfg: &SearchConfig, ctl: &Control) -> (Part, Vec<Part>) {
    let topo = Topo::new(t);
    let plan = Plan::new(&topo);
    let split = cfg.split_depth.min(plan.n - 1);

    let mut top = Walker::new(lat, &plan, &topo, ctl, cfg.mode);
    top.collect = Some((split, Vec::new()));
    let unwound = top.dfs(0);
    let roots = top.collect.take().unwrap().1;
    let mut head = std::mem::take(&mut top.part);
    head.complete = !unwound;
    if unwound {
        return (head, Vec::new());
    }

    let parts = par_subtrees(roots.len(), cfg.workers, |i| {
        let mut w = Walker::new(lat, &plan, &topo, ctl, cfg.mode);
        w.subtree = i;
        if ctl.cancelled(i) {
            return w.part;
        }
        w.replay(&roots[i]);
        let unwound = w.dfs(split);
        w.part.complete = !unwound;
        w.part
    });
    (head, parts)
}
