//! Isomorph-free enumeration of triangulated closed surfaces.
//!
//! Facet lists are grown vertex by vertex: once every facet containing vertex `v`
//! and a smaller vertex is known, the link of `v` is completed to a single cycle
//! using only larger vertices, after which `v` is never touched again. A finished
//! complex is kept only if its facet list equals its canonical label (orderly
//! generation), so every isomorphism class is produced exactly once.
//!
//! The canonical label is the lexicographically smallest sorted facet list over
//! all vertex relabelings. For a surface it always starts with a vertex of minimum
//! degree `d` whose link is labelled in the zigzag order
//! `[1,2,3],[1,2,4],[1,3,5],...,[1,d,d+1]`: a smaller degree wins at facet `d`,
//! and each of these facets is the smallest one available given the previous.
//! Generation therefore fixes the link of vertex 1 to this shape and requires
//! every other vertex to have degree at least `d`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::complex::{validate_closed_surface, Triangulation, Vertex};

/// Largest vertex count the generator supports.
pub const MAX_VERTICES: usize = 12;
const MAX_FACETS: usize = 2 * MAX_VERTICES * (MAX_VERTICES - 1) / 3 + 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnumerationConstraints {
    pub vertex_count: usize,
    pub chi: Option<i64>,
    pub orientable: Option<bool>,
}

impl EnumerationConstraints {
    pub fn new(vertex_count: usize) -> Self {
        EnumerationConstraints { vertex_count, chi: None, orientable: None }
    }

    pub fn with_chi(mut self, chi: i64) -> Self {
        self.chi = Some(chi);
        self
    }

    pub fn with_orientable(mut self, orientable: bool) -> Self {
        self.orientable = Some(orientable);
        self
    }

    /// Facet count forced by a fixed Euler characteristic: 2E = 3F and
    /// V − E + F = χ give F = 2(n − χ).
    pub fn facet_count(&self) -> Result<Option<usize>, EnumerateError> {
        let n = self.vertex_count;
        if !(4..=MAX_VERTICES).contains(&n) {
            return Err(EnumerateError::VertexCount(n));
        }
        let Some(chi) = self.chi else { return Ok(None) };
        let f = 2 * (n as i64 - chi);
        let e = 3 * (n as i64 - chi);
        let max_edges = (n * (n - 1) / 2) as i64;
        if f < 4 || e > max_edges || chi > 2 {
            return Err(EnumerateError::Inadmissible { n, chi });
        }
        if self.orientable == Some(true) && chi % 2 != 0 {
            return Err(EnumerateError::Inadmissible { n, chi });
        }
        Ok(Some(f as usize))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("vertex count {0} outside the supported range 4..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("no closed surface on {n} vertices has Euler characteristic {chi}")]
    Inadmissible { n: usize, chi: i64 },
}

// ---------------------------------------------------------------------------
// canonical labels

/// Packs a sorted facet into a key whose integer order is the lexicographic order.
#[inline]
fn key(mut f: [u8; 3]) -> u16 {
    if f[0] > f[1] {
        f.swap(0, 1);
    }
    if f[1] > f[2] {
        f.swap(1, 2);
    }
    if f[0] > f[1] {
        f.swap(0, 1);
    }
    (f[0] as u16) << 8 | (f[1] as u16) << 4 | f[2] as u16
}

fn unkey(k: u16) -> [u8; 3] {
    [(k >> 8) as u8, (k >> 4 & 0xf) as u8, (k & 0xf) as u8]
}

/// Link cycles of every vertex, or `None` if some link is not a single cycle.
fn link_cycles(n: usize, facets: &[[u8; 3]]) -> Option<Vec<Vec<u8>>> {
    let mut adj = vec![vec![Vec::<u8>::new(); n]; n];
    for f in facets {
        for i in 0..3 {
            let (w, a, b) = (f[i], f[(i + 1) % 3], f[(i + 2) % 3]);
            adj[w as usize][a as usize].push(b);
            adj[w as usize][b as usize].push(a);
        }
    }
    let mut cycles = Vec::with_capacity(n);
    for (w, nbrs) in adj.iter().enumerate() {
        let size = nbrs.iter().filter(|l| !l.is_empty()).count();
        if size < 3 || nbrs.iter().any(|l| !l.is_empty() && l.len() != 2) {
            return None;
        }
        let start = nbrs.iter().position(|l| !l.is_empty())? as u8;
        let mut cyc = vec![start];
        let (mut prev, mut cur) = (start, nbrs[start as usize][0]);
        while cur != start {
            cyc.push(cur);
            let nb = &nbrs[cur as usize];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        if cyc.len() != size {
            return None;
        }
        let _ = w;
        cycles.push(cyc);
    }
    Some(cycles)
}

/// Searches the relabelings that can realize the canonical form of a complex in
/// which every link is a cycle. With `stop_below = Some(cur)` it returns as soon as
/// a relabeling beats `cur`.
struct Canonizer<'a> {
    n: usize,
    facets: &'a [[u8; 3]],
    best: Vec<u16>,
    scratch: Vec<u16>,
    label: [u8; MAX_VERTICES],
    stop_below: Option<&'a [u16]>,
    beaten: bool,
}

impl<'a> Canonizer<'a> {
    fn new(n: usize, facets: &'a [[u8; 3]], stop_below: Option<&'a [u16]>) -> Self {
        Canonizer {
            n,
            facets,
            best: Vec::new(),
            scratch: Vec::with_capacity(facets.len()),
            label: [0; MAX_VERTICES],
            stop_below,
            beaten: false,
        }
    }

    fn run(&mut self, cycles: &[Vec<u8>]) {
        let min_deg = cycles.iter().map(Vec::len).min().unwrap();
        for (u, cyc) in cycles.iter().enumerate() {
            if cyc.len() != min_deg {
                continue;
            }
            let d = cyc.len();
            for start in 0..d {
                for dir in [1, d - 1] {
                    let mut assigned = [false; MAX_VERTICES];
                    self.label[u] = 0;
                    assigned[u] = true;
                    // walk outwards from the start alternately forward and backward
                    let (mut fwd, mut back) = (start, start);
                    for k in 1..=d {
                        let pos = if k == 1 {
                            start
                        } else if k % 2 == 0 {
                            fwd = (fwd + dir) % d;
                            fwd
                        } else {
                            back = (back + d - dir) % d;
                            back
                        };
                        let v = cyc[pos] as usize;
                        self.label[v] = k as u8;
                        assigned[v] = true;
                    }
                    let rest: Vec<usize> = (0..self.n).filter(|&v| !assigned[v]).collect();
                    self.permute_rest(&rest, d + 1, &mut vec![false; rest.len()]);
                    if self.beaten {
                        return;
                    }
                }
            }
        }
    }

    fn permute_rest(&mut self, rest: &[usize], next: usize, used: &mut Vec<bool>) {
        if next == self.n {
            self.evaluate();
            return;
        }
        for i in 0..rest.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            self.label[rest[i]] = next as u8;
            self.permute_rest(rest, next + 1, used);
            used[i] = false;
            if self.beaten {
                return;
            }
        }
    }

    fn evaluate(&mut self) {
        self.scratch.clear();
        let label = &self.label;
        self.scratch.extend(self.facets.iter().map(|f| key(f.map(|v| label[v as usize]))));
        self.scratch.sort_unstable();
        if let Some(cur) = self.stop_below {
            if self.scratch.as_slice() < cur {
                self.beaten = true;
            }
        } else if self.best.is_empty() || self.scratch < self.best {
            std::mem::swap(&mut self.best, &mut self.scratch);
        }
    }
}

fn to_small(t: &Triangulation) -> Vec<[u8; 3]> {
    t.facets().iter().map(|f| f.map(|v| v as u8)).collect()
}

fn brute_force_min(n: usize, facets: &[[u8; 3]]) -> Vec<u16> {
    fn rec(n: usize, facets: &[[u8; 3]], perm: &mut Vec<u8>, used: &mut [bool], best: &mut Vec<u16>) {
        if perm.len() == n {
            let mut keys: Vec<u16> = facets.iter().map(|f| key(f.map(|v| perm[v as usize]))).collect();
            keys.sort_unstable();
            if best.is_empty() || keys < *best {
                *best = keys;
            }
            return;
        }
        for l in 0..n {
            if !used[l] {
                used[l] = true;
                perm.push(l as u8);
                rec(n, facets, perm, used, best);
                perm.pop();
                used[l] = false;
            }
        }
    }
    let mut best = Vec::new();
    rec(n, facets, &mut Vec::new(), &mut vec![false; n], &mut best);
    best
}

/// Relabels `t` so that its sorted facet list is lexicographically minimal over
/// all vertex permutations; isomorphic complexes get identical labels.
///
/// When every vertex link is a cycle only relabelings that start at a
/// minimum-degree vertex with a zigzag-labelled link are tried, leaving at most
/// `(n − 1 − d)!` orders for the vertices outside that link. Other complexes fall
/// back to a full permutation sweep, which is only practical for small `n`.
pub fn canonical_label(t: &Triangulation) -> Triangulation {
    let n = t.vertex_count();
    assert!(n <= 16, "canonical labels are packed into 4-bit vertex ids");
    let facets = to_small(t);
    let keys = match link_cycles(n, &facets) {
        Some(cycles) if n <= MAX_VERTICES => {
            let mut c = Canonizer::new(n, &facets, None);
            c.run(&cycles);
            c.best
        }
        _ => brute_force_min(n, &facets),
    };
    let facets = keys.into_iter().map(|k| unkey(k).map(Vertex::from));
    let mut out = Triangulation::new(n, facets).expect("relabeling preserves validity");
    out.set_name(t.name().map(str::to_string));
    out
}

/// Whether the facet list `t` is already its own canonical label.
pub fn is_canonical(t: &Triangulation) -> bool {
    canonical_label(t).facets() == t.facets()
}

// ---------------------------------------------------------------------------
// generation

#[derive(Clone, Copy)]
struct State {
    n: u8,
    /// degree of vertex 0, the minimum over all vertices
    d: u8,
    nf: u8,
    facets: [[u8; 3]; MAX_FACETS],
    /// facets per edge
    ec: [[u8; MAX_VERTICES]; MAX_VERTICES],
    /// first facet on each edge, used for orientation constraints
    first: [[u8; MAX_VERTICES]; MAX_VERTICES],
    /// `pend[w][a]`: other end of the path in the link of `w` that ends at `a`
    pend: [[u8; MAX_VERTICES]; MAX_VERTICES],
    /// number of path components in the link of each vertex
    comps: [u8; MAX_VERTICES],
    deg: [u8; MAX_VERTICES],
    closed: u16,
    /// orientation union-find over facets: parent and parity to parent
    parent: [u8; MAX_FACETS],
    parity: [u8; MAX_FACETS],
}

struct Limits {
    target_f: Option<usize>,
    orientable: Option<bool>,
}

impl State {
    fn new(n: usize, d: usize) -> Self {
        State {
            n: n as u8,
            d: d as u8,
            nf: 0,
            facets: [[0; 3]; MAX_FACETS],
            ec: [[0; MAX_VERTICES]; MAX_VERTICES],
            first: [[0; MAX_VERTICES]; MAX_VERTICES],
            pend: [[0; MAX_VERTICES]; MAX_VERTICES],
            comps: [0; MAX_VERTICES],
            deg: [0; MAX_VERTICES],
            closed: 0,
            parent: [0; MAX_FACETS],
            parity: [0; MAX_FACETS],
        }
    }

    #[inline]
    fn is_closed(&self, v: u8) -> bool {
        self.closed >> v & 1 == 1
    }

    fn find(&mut self, mut x: u8) -> (u8, u8) {
        let mut par = 0;
        while self.parent[x as usize] != x {
            par ^= self.parity[x as usize];
            x = self.parent[x as usize];
        }
        (x, par)
    }

    /// Adds the link edge `{x, y}` to the link of `w`; false if the link can no
    /// longer become a single cycle of length at least `d`.
    fn link_add(&mut self, w: u8, x: u8, y: u8) -> bool {
        let (w, xu, yu) = (w as usize, x as usize, y as usize);
        let ex = self.ec[w][xu];
        let ey = self.ec[w][yu];
        match (ex, ey) {
            (0, 0) => {
                self.pend[w][xu] = y;
                self.pend[w][yu] = x;
                self.comps[w] += 1;
            }
            (1, 0) | (0, 1) => {
                let (end, fresh) = if ex == 1 { (xu, yu) } else { (yu, xu) };
                let other = self.pend[w][end];
                self.pend[w][other as usize] = fresh as u8;
                self.pend[w][fresh] = other;
            }
            (1, 1) => {
                if self.pend[w][xu] == y {
                    // closes a cycle: must be the whole link and long enough
                    if self.comps[w] != 1 || self.deg[w] + 1 < self.d {
                        return false;
                    }
                    self.comps[w] = 0;
                    self.closed |= 1 << w;
                } else {
                    let (ox, oy) = (self.pend[w][xu], self.pend[w][yu]);
                    self.pend[w][ox as usize] = oy;
                    self.pend[w][oy as usize] = ox;
                    self.comps[w] -= 1;
                }
            }
            _ => return false,
        }
        true
    }

    fn orient_edge(&mut self, f: u8, a: u8, b: u8, dir: u8) -> bool {
        let (au, bu) = (a as usize, b as usize);
        if self.ec[au][bu] == 0 {
            self.first[au][bu] = f << 1 | dir;
            return true;
        }
        let g = self.first[au][bu] >> 1;
        let gdir = self.first[au][bu] & 1;
        // neighbours traverse a shared edge in opposite directions, so the
        // facets' orientation signs differ exactly when the sorted orders agree
        let want = (dir == gdir) as u8;
        let (rf, pf) = self.find(f);
        let (rg, pg) = self.find(g);
        if rf == rg {
            return pf ^ pg == want;
        }
        self.parent[rf as usize] = rg;
        self.parity[rf as usize] = pf ^ pg ^ want;
        true
    }

    /// Adds the facet `{a, b, c}` (with `a < b < c`) if it keeps the partial
    /// complex extendable.
    fn add(&self, a: u8, b: u8, c: u8, lim: &Limits) -> Option<State> {
        let (au, bu, cu) = (a as usize, b as usize, c as usize);
        if self.ec[au][bu] >= 2 || self.ec[au][cu] >= 2 || self.ec[bu][cu] >= 2 {
            return None;
        }
        if self.is_closed(a) || self.is_closed(b) || self.is_closed(c) {
            return None;
        }
        if let Some(t) = lim.target_f {
            if self.nf as usize >= t {
                return None;
            }
        }
        let mut s = *self;
        if !(s.link_add(a, b, c) && s.link_add(b, a, c) && s.link_add(c, a, b)) {
            return None;
        }
        let f = s.nf;
        s.facets[f as usize] = [a, b, c];
        s.parent[f as usize] = f;
        s.parity[f as usize] = 0;
        if lim.orientable == Some(true) {
            // sorted order a→b→c: edges ab, bc forward, ac backward
            if !(s.orient_edge(f, a, b, 0) && s.orient_edge(f, b, c, 0) && s.orient_edge(f, a, c, 1)) {
                return None;
            }
        }
        s.nf += 1;
        for (x, y) in [(au, bu), (au, cu), (bu, cu)] {
            s.ec[x][y] += 1;
            s.ec[y][x] += 1;
        }
        s.deg[au] += 1;
        s.deg[bu] += 1;
        s.deg[cu] += 1;
        if let Some(t) = lim.target_f {
            let d = s.d;
            let mut need: usize = 0;
            for w in 0..s.n as usize {
                let lb = if s.closed >> w & 1 == 1 {
                    s.deg[w]
                } else if s.deg[w] == 0 {
                    d
                } else {
                    d.max(s.deg[w] + s.comps[w])
                };
                need += lb as usize;
            }
            if need > 3 * t {
                return None;
            }
        }
        Some(s)
    }
}

struct Generator<'a> {
    lim: Limits,
    out: &'a mut Vec<Vec<[u8; 3]>>,
    /// when set, states reaching this vertex are collected instead of expanded
    split_at: Option<u8>,
    roots: Vec<State>,
    nodes: usize,
}

impl Generator<'_> {
    fn vertex(&mut self, s: &State, v: u8) {
        self.nodes += 1;
        if self.split_at == Some(v) {
            self.roots.push(*s);
            return;
        }
        if v == s.n {
            self.leaf(s);
            return;
        }
        if s.is_closed(v) {
            return self.vertex(s, v + 1);
        }
        let vu = v as usize;
        if s.deg[vu] == 0 {
            // no facet yet: a brand new cycle through larger vertices, listed from
            // its smallest vertex `lo` towards the smaller of its two neighbours
            for lo in v + 1..s.n {
                for second in lo + 1..s.n {
                    if let Some(ns) = s.add(v, lo, second, &self.lim) {
                        self.extend(&ns, v, lo, second, Some((lo, second)));
                    }
                }
            }
            return;
        }
        let start = (v + 1..s.n).find(|&x| s.ec[vu][x as usize] == 1).expect("open link has endpoints");
        let end = s.pend[vu][start as usize];
        self.extend(s, v, start, end, None);
    }

    /// Grows the path in the link of `v` from `end` until it closes at `start`.
    fn extend(&mut self, s: &State, v: u8, start: u8, end: u8, fresh: Option<(u8, u8)>) {
        let vu = v as usize;
        for x in v + 1..s.n {
            if x == end || s.is_closed(x) {
                continue;
            }
            if let Some((lo, second)) = fresh {
                if x < lo || (x == lo && end < second) {
                    continue;
                }
            }
            let (a, b) = if end < x { (end, x) } else { (x, end) };
            match s.ec[vu][x as usize] {
                _ if x == start => {
                    if let Some(ns) = s.add(v, a, b, &self.lim) {
                        if ns.is_closed(v) {
                            self.vertex(&ns, v + 1);
                        }
                    }
                }
                1 => {
                    let far = s.pend[vu][x as usize];
                    if let Some(ns) = s.add(v, a, b, &self.lim) {
                        self.extend(&ns, v, start, far, fresh);
                    }
                }
                0 => {
                    if let Some(ns) = s.add(v, a, b, &self.lim) {
                        self.extend(&ns, v, start, x, fresh);
                    }
                }
                _ => {}
            }
        }
    }

    fn leaf(&mut self, s: &State) {
        let n = s.n as usize;
        let nf = s.nf as usize;
        if let Some(t) = self.lim.target_f {
            if nf != t {
                return;
            }
        }
        let facets = &s.facets[..nf];
        if !connected(n, facets) {
            return;
        }
        let mut keys: Vec<u16> = facets.iter().map(|&f| key(f)).collect();
        keys.sort_unstable();
        let cycles = link_cycles(n, facets).expect("generator closes every link");
        let mut c = Canonizer::new(n, facets, Some(&keys));
        c.run(&cycles);
        if c.beaten {
            return;
        }
        if let Some(o) = self.lim.orientable {
            let t = Triangulation::new(n, facets.iter().map(|f| f.map(Vertex::from))).expect("valid");
            if validate_closed_surface(&t).orientable != o {
                return;
            }
        }
        self.out.push(keys.into_iter().map(unkey).collect());
    }
}

fn connected(n: usize, facets: &[[u8; 3]]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for f in facets {
        for i in 1..3 {
            let (ra, rb) = (root(&mut comp, f[0] as usize), root(&mut comp, f[i] as usize));
            comp[ra] = rb;
        }
    }
    let r = root(&mut comp, 0);
    (0..n).all(|v| root(&mut comp, v) == r)
}

/// Link of vertex 0 in canonical form: `[0,1,2],[0,1,3],[0,2,4],...,[0,d−1,d]`.
fn zigzag_star(d: usize) -> Vec<[u8; 3]> {
    let d8 = d as u8;
    let mut f = vec![[0, 1, 2], [0, 1, 3]];
    for k in 2..d8 - 1 {
        f.push([0, k, k + 2]);
    }
    f.push([0, d8 - 1, d8]);
    f
}

/// Search statistics of an enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub nodes: usize,
    pub subtrees: usize,
}

/// Every isomorphism class of connected closed surfaces meeting the constraints,
/// each as its canonical label, in lexicographic order of facet lists.
pub fn enumerate_surfaces(c: &EnumerationConstraints) -> Result<Vec<Triangulation>, EnumerateError> {
    enumerate_surfaces_with(c, 1).map(|(v, _)| v)
}

/// As [`enumerate_surfaces`], splitting the search tree over `workers` threads.
/// The output does not depend on the worker count.
pub fn enumerate_surfaces_with(
    c: &EnumerationConstraints,
    workers: usize,
) -> Result<(Vec<Triangulation>, EnumerationStats), EnumerateError> {
    let target_f = c.facet_count()?;
    let n = c.vertex_count;
    let lim = || Limits { target_f, orientable: c.orientable };

    // subtrees: one per minimum degree and completed link of vertex 1
    let mut roots: Vec<State> = Vec::new();
    for d in 3..n {
        if let Some(t) = target_f {
            if n * d > 3 * t {
                continue;
            }
        }
        let mut s = State::new(n, d);
        let mut ok = true;
        for f in zigzag_star(d) {
            match s.add(f[0], f[1], f[2], &lim()) {
                Some(ns) => s = ns,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let mut sink = Vec::new();
            let mut g = Generator { lim: lim(), out: &mut sink, split_at: Some(2), roots: Vec::new(), nodes: 0 };
            g.vertex(&s, 1);
            roots.append(&mut g.roots);
        }
    }

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Vec<[u8; 3]>>> = Mutex::new(Vec::new());
    let total_nodes = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= roots.len() {
                    break;
                }
                let mut local = Vec::new();
                let mut g = Generator { lim: lim(), out: &mut local, split_at: None, roots: Vec::new(), nodes: 0 };
                g.vertex(&roots[i], 2);
                total_nodes.fetch_add(g.nodes, Ordering::Relaxed);
                results.lock().unwrap().extend(local);
            });
        }
    });
    let mut found = results.into_inner().unwrap();
    found.sort();
    let out = found
        .into_iter()
        .map(|fs| Triangulation::new(n, fs.into_iter().map(|f| f.map(Vertex::from))).expect("valid surface"))
        .collect();
    let stats = EnumerationStats { nodes: total_nodes.into_inner(), subtrees: roots.len() };
    Ok((out, stats))
}
