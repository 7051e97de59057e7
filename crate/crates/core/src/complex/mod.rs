//! Triangulated surfaces as pure simplicial 2-complexes.
//!
//! Vertices are stored as dense 0-based indices; the labels a complex was read
//! with are kept so output can restore them. Facets are kept canonical: each
//! triple sorted ascending and the list sorted lexicographically.

mod parse;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse_many, parse_triangulation, Format};

/// Internal vertex index.
pub type Vertex = u32;
/// A facet as a sorted triple of internal vertex indices.
pub type Facet = [Vertex; 3];
pub type Edge = [Vertex; 2];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty input")]
    Empty,
    #[error("parse error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex([u32; 3]),
    #[error("facet {0:?} occurs twice")]
    DuplicateFacet([u32; 3]),
    #[error("vertex label {0} is outside 1..={1}")]
    LabelOutOfRange(u32, u32),
    #[error("vertex label {0} is not used by any facet")]
    UnusedVertex(u32),
    #[error("vertex {0} does not exist")]
    UnknownVertex(Vertex),
    #[error("complex is not a closed connected surface")]
    NotClosed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    facets: Vec<Facet>,
    labels: Vec<u32>,
    name: Option<String>,
}

impl Triangulation {
    /// Builds a complex from internal 0-based facets on `n` vertices, labelled
    /// `1..=n`.
    pub fn new(n: usize, facets: impl IntoIterator<Item = [Vertex; 3]>) -> Result<Self, ComplexError> {
        let labels = (1..=n as u32).collect();
        Self::with_labels(facets.into_iter().collect(), labels)
    }

    /// Builds a complex from facets given in external 1-based labels.
    pub fn from_one_based(facets: &[[u32; 3]]) -> Result<Self, ComplexError> {
        let used: BTreeSet<u32> = facets.iter().flatten().copied().collect();
        if used.is_empty() {
            return Err(ComplexError::Empty);
        }
        let labels: Vec<u32> = used.into_iter().collect();
        let index: HashMap<u32, Vertex> = labels.iter().enumerate().map(|(i, &l)| (l, i as Vertex)).collect();
        for f in facets {
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(ComplexError::RepeatedVertex(*f));
            }
        }
        let internal = facets.iter().map(|f| f.map(|l| index[&l])).collect();
        Self::with_labels(internal, labels)
    }

    fn with_labels(mut facets: Vec<Facet>, labels: Vec<u32>) -> Result<Self, ComplexError> {
        let n = labels.len();
        if facets.is_empty() || n == 0 {
            return Err(ComplexError::Empty);
        }
        let ext = |f: &Facet| f.map(|v| labels.get(v as usize).copied().unwrap_or(v + 1));
        let mut used = vec![false; n];
        for f in facets.iter_mut() {
            if f.iter().any(|&v| v as usize >= n) {
                let bad = *f.iter().find(|&&v| v as usize >= n).unwrap();
                return Err(ComplexError::UnknownVertex(bad));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(ComplexError::RepeatedVertex(ext(f)));
            }
            f.sort_unstable();
            for &v in f.iter() {
                used[v as usize] = true;
            }
        }
        facets.sort_unstable();
        if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFacet(ext(&w[0])));
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(ComplexError::UnusedVertex(labels[v]));
        }
        Ok(Triangulation { n, facets, labels, name: None })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// External label of an internal vertex.
    pub fn label(&self, v: Vertex) -> u32 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Internal vertex carrying external label `l`.
    pub fn vertex_of_label(&self, l: u32) -> Option<Vertex> {
        self.labels.binary_search(&l).ok().map(|i| i as Vertex)
    }

    /// Facets in external labels.
    pub fn labeled_facets(&self) -> Vec<[u32; 3]> {
        self.facets.iter().map(|f| f.map(|v| self.label(v))).collect()
    }

    /// All edges with the number of facets containing each.
    pub fn edge_degrees(&self) -> BTreeMap<Edge, usize> {
        let mut m = BTreeMap::new();
        for f in &self.facets {
            for e in facet_edges(f) {
                *m.entry(e).or_insert(0) += 1;
            }
        }
        m
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_degrees().into_keys().collect()
    }

    /// Number of facets containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for f in &self.facets {
            for &v in f {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// Renames vertices by `perm` (internal `v` becomes `perm[v]`), keeping labels
    /// `1..=n`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Triangulation {
        let facets = self.facets.iter().map(|f| f.map(|v| perm[v as usize]));
        let mut t = Triangulation::new(self.n, facets).expect("relabeling preserves validity");
        t.name = self.name.clone();
        t
    }

    /// One-line `[[a,b,c],...]` form in external labels, prefixed with `name=` when
    /// the complex has a name.
    pub fn to_lex(&self) -> String {
        let body = self
            .labeled_facets()
            .iter()
            .map(|f| format!("[{},{},{}]", f[0], f[1], f[2]))
            .collect::<Vec<_>>()
            .join(",");
        match &self.name {
            Some(name) => format!("{name}=[{body}]"),
            None => format!("[{body}]"),
        }
    }

    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        for f in self.labeled_facets() {
            s.push_str(&format!("{} {} {}\n", f[0], f[1], f[2]));
        }
        s
    }

    /// JSON object form. Only valid for complexes labelled `1..=n`; others are
    /// written with their labels and `n` set to the largest label.
    pub fn to_json(&self) -> String {
        let n = *self.labels.last().unwrap_or(&0);
        serde_json::json!({ "n": n, "facets": self.labeled_facets() }).to_string()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lex())
    }
}

pub fn facet_edges(f: &Facet) -> [Edge; 3] {
    [[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]]
}

/// Why a vertex link fails to be a single cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkDefect {
    /// The link is a single path; its vertices are listed end to end.
    Path { vertices: Vec<Vertex> },
    /// Some link vertex has more than two link neighbours.
    Branching { at: Vertex },
    /// The link has several components.
    Disconnected { components: usize },
}

/// Combinatorial summary of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInfo {
    pub vertices: usize,
    pub edges: usize,
    pub facets: usize,
    pub chi: i64,
    pub closed: bool,
    pub connected: bool,
    /// Only meaningful when `closed`.
    pub orientable: bool,
    /// Handles (orientable) or cross-caps (non-orientable); only meaningful when
    /// `closed`.
    pub genus: u32,
    /// Edges not in exactly two facets, with their facet count.
    pub bad_edges: Vec<(Edge, usize)>,
    /// Vertices whose link is not a single cycle.
    pub singular_vertices: Vec<(Vertex, LinkDefect)>,
}

/// The link of `v` as a cycle of neighbours, or the reason it is not one.
///
/// The cycle starts at the smallest neighbour and continues towards the smaller of
/// its two link neighbours.
pub fn vertex_link(t: &Triangulation, v: Vertex) -> Result<Result<Vec<Vertex>, LinkDefect>, ComplexError> {
    if v as usize >= t.n {
        return Err(ComplexError::UnknownVertex(v));
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for f in t.facets.iter().filter(|f| f.contains(&v)) {
        let others: Vec<Vertex> = f.iter().copied().filter(|&u| u != v).collect();
        adj.entry(others[0]).or_default().push(others[1]);
        adj.entry(others[1]).or_default().push(others[0]);
    }
    if adj.is_empty() {
        return Err(ComplexError::UnknownVertex(v));
    }
    Ok(link_cycle(&adj))
}

fn link_cycle(adj: &BTreeMap<Vertex, Vec<Vertex>>) -> Result<Vec<Vertex>, LinkDefect> {
    if let Some((&at, _)) = adj.iter().find(|(_, nb)| nb.len() > 2) {
        return Err(LinkDefect::Branching { at });
    }
    // count components
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut components = 0;
    for &start in adj.keys() {
        if seen.insert(start) {
            components += 1;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &adj[&u] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
    }
    if components > 1 {
        return Err(LinkDefect::Disconnected { components });
    }
    let ends: Vec<Vertex> = adj.iter().filter(|(_, nb)| nb.len() == 1).map(|(&u, _)| u).collect();
    if !ends.is_empty() {
        return Err(LinkDefect::Path { vertices: walk(adj, ends[0], None) });
    }
    let start = *adj.keys().next().unwrap();
    let first = *adj[&start].iter().min().unwrap();
    Ok(walk(adj, start, Some(first)))
}

fn walk(adj: &BTreeMap<Vertex, Vec<Vertex>>, start: Vertex, first: Option<Vertex>) -> Vec<Vertex> {
    let mut out = vec![start];
    let mut prev = start;
    let mut cur = match first.or_else(|| adj[&start].first().copied()) {
        Some(c) => c,
        None => return out,
    };
    while cur != start {
        out.push(cur);
        let next = adj[&cur].iter().copied().find(|&w| w != prev);
        match next {
            Some(w) if out.len() <= adj.len() => {
                prev = cur;
                cur = w;
            }
            _ => break,
        }
    }
    out
}

/// Computes V, E, F, χ and the closedness verdict.
pub fn validate_closed_surface(t: &Triangulation) -> SurfaceInfo {
    let degrees = t.edge_degrees();
    let bad_edges: Vec<(Edge, usize)> = degrees.iter().filter(|(_, &c)| c != 2).map(|(e, &c)| (*e, c)).collect();
    let singular_vertices: Vec<(Vertex, LinkDefect)> = (0..t.n as Vertex)
        .filter_map(|v| match vertex_link(t, v) {
            Ok(Err(d)) => Some((v, d)),
            _ => None,
        })
        .collect();
    let connected = facets_connected(t);
    let (v, e, f) = (t.n, degrees.len(), t.facets.len());
    let chi = v as i64 - e as i64 + f as i64;
    let closed = bad_edges.is_empty() && singular_vertices.is_empty() && connected;
    let (orientable, genus) = if closed {
        let o = orient_facets(t).is_some();
        (o, genus_from(chi, o))
    } else {
        (false, 0)
    };
    SurfaceInfo {
        vertices: v,
        edges: e,
        facets: f,
        chi,
        closed,
        connected,
        orientable,
        genus,
        bad_edges,
        singular_vertices,
    }
}

fn genus_from(chi: i64, orientable: bool) -> u32 {
    if orientable {
        ((2 - chi) / 2) as u32
    } else {
        (2 - chi) as u32
    }
}

fn facets_connected(t: &Triangulation) -> bool {
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, f) in t.facets.iter().enumerate() {
        for e in facet_edges(f) {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut seen = vec![false; t.facets.len()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for e in facet_edges(&t.facets[i]) {
            for &j in &by_edge[&e] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
    }
    count == t.facets.len()
}

/// Direction in which the sorted facet `f`, oriented as `f[0] → f[1] → f[2]`,
/// traverses the edge `e`: +1 for `e[0] → e[1]`.
fn edge_direction(f: &Facet, e: &Edge) -> i8 {
    let pos = |v| f.iter().position(|&w| w == v).unwrap();
    let (i, j) = (pos(e[0]), pos(e[1]));
    if (i + 1) % 3 == j {
        1
    } else {
        -1
    }
}

/// A consistent orientation (+1 keeps the sorted order, −1 reverses it) for
/// every facet, or `None` when the surface is non-orientable.
pub(crate) fn orient_facets(t: &Triangulation) -> Option<Vec<i8>> {
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, f) in t.facets.iter().enumerate() {
        for e in facet_edges(f) {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut sign = vec![0i8; t.facets.len()];
    for root in 0..t.facets.len() {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let fi = t.facets[i];
            for e in facet_edges(&fi) {
                let di = sign[i] * edge_direction(&fi, &e);
                for &j in &by_edge[&e] {
                    if j == i {
                        continue;
                    }
                    // neighbours must traverse the edge the other way
                    let want = -di * edge_direction(&t.facets[j], &e);
                    if sign[j] == 0 {
                        sign[j] = want;
                        stack.push(j);
                    } else if sign[j] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(sign)
}

/// Facets with their corners reordered so that neighbouring facets induce
/// opposite directions on shared edges; None for non-orientable complexes.
pub fn oriented_facets(t: &Triangulation) -> Option<Vec<Facet>> {
    let sign = orient_facets(t)?;
    Some(t.facets.iter().zip(sign).map(|(f, s)| if s < 0 { [f[1], f[0], f[2]] } else { *f }).collect())
}

/// Orientability and genus of a closed surface.
pub fn orientability_and_genus(t: &Triangulation) -> Result<(bool, u32), ComplexError> {
    let info = validate_closed_surface(t);
    if !info.closed {
        return Err(ComplexError::NotClosed);
    }
    Ok((info.orientable, info.genus))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HeawoodError {
    #[error("no closed surface has Euler characteristic {0} > 2")]
    ChiTooLarge(i64),
    #[error("orientable surfaces have even Euler characteristic, got {0}")]
    OddOrientable(i64),
    #[error("non-orientable surfaces have Euler characteristic at most 1, got {0}")]
    NonOrientableSphere(i64),
}

/// Minimum vertex count of a triangulation of the closed surface with Euler
/// characteristic `chi` and the given orientability.
///
/// Evaluates `⌈(7 + √(49 − 24χ)) / 2⌉` with integer arithmetic only and adds one
/// vertex for the orientable surface of genus 2, the Klein bottle and the
/// non-orientable surface of genus 3.
pub fn heawood_bound(chi: i64, orientable: bool) -> Result<u32, HeawoodError> {
    if chi > 2 {
        return Err(HeawoodError::ChiTooLarge(chi));
    }
    if orientable && chi % 2 != 0 {
        return Err(HeawoodError::OddOrientable(chi));
    }
    if !orientable && chi > 1 {
        return Err(HeawoodError::NonOrientableSphere(chi));
    }
    let disc = 49 - 24 * chi;
    // smallest m with 2m - 7 >= sqrt(disc)
    let mut m: i64 = 4;
    while 2 * m - 7 < 0 || (2 * m - 7) * (2 * m - 7) < disc {
        m += 1;
    }
    let exceptional = matches!((chi, orientable), (-2, true) | (0, false) | (-1, false));
    Ok(m as u32 + exceptional as u32)
}

/// Facets and edges of `t` spanned by the vertex subset `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubcomplex {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Facet>,
    /// Every edge of `t` with both endpoints in the subset, including those that
    /// lie in no induced facet.
    pub edges: Vec<Edge>,
}

pub fn induced_subcomplex(t: &Triangulation, s: &[Vertex]) -> InducedSubcomplex {
    let mut member = vec![false; t.n];
    for &v in s {
        if (v as usize) < t.n {
            member[v as usize] = true;
        }
    }
    let inside = |v: &Vertex| member[*v as usize];
    let facets = t.facets.iter().filter(|f| f.iter().all(inside)).copied().collect();
    let edges = t.edges().into_iter().filter(|e| e.iter().all(inside)).collect();
    let mut vertices: Vec<Vertex> = s.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    InducedSubcomplex { vertices, facets, edges }
}

/// The 7-vertex torus with facets `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> Triangulation {
    let facets = (0..7u32).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
    Triangulation::new(7, facets).expect("valid torus")
}

/// Boundary of the tetrahedron.
pub fn tetrahedron() -> Triangulation {
    Triangulation::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid tetrahedron")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Edges counted directly from the facet rule, not via `edge_degrees`.
    fn brute_edges(t: &Triangulation) -> usize {
        let n = t.vertex_count() as u32;
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if t.facets().iter().any(|f| f.contains(&a) && f.contains(&b)) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn oriented_facets_cancel_on_edges() {
        for t in [tetrahedron(), torus7()] {
            let fs = oriented_facets(&t).unwrap();
            let mut directed = std::collections::BTreeSet::new();
            for f in &fs {
                for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                    assert!(directed.insert((a, b)), "edge {a}{b} traversed twice the same way");
                }
            }
            assert_eq!(directed.len(), 2 * t.edges().len());
        }
        assert!(oriented_facets(&rp2_6()).is_none());
    }

    fn rp2_6() -> Triangulation {
        Triangulation::from_one_based(&[
            [1, 2, 3],
            [1, 2, 4],
            [1, 3, 5],
            [1, 4, 6],
            [1, 5, 6],
            [2, 3, 6],
            [2, 4, 5],
            [2, 5, 6],
            [3, 4, 5],
            [3, 4, 6],
        ])
        .unwrap()
    }

    #[test]
    fn tetrahedron_is_a_sphere() {
        let info = validate_closed_surface(&tetrahedron());
        assert!(info.closed);
        assert_eq!((info.vertices, info.edges, info.facets, info.chi), (4, 6, 4, 2));
        assert_eq!(orientability_and_genus(&tetrahedron()).unwrap(), (true, 0));
    }

    #[test]
    fn open_tetrahedron_is_not_closed() {
        let t = Triangulation::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        let info = validate_closed_surface(&t);
        assert!(!info.closed);
        assert_eq!(info.bad_edges.iter().filter(|(_, c)| *c == 1).count(), 3);
        assert_eq!(orientability_and_genus(&t), Err(ComplexError::NotClosed));
    }

    #[test]
    fn torus_counts() {
        let t = torus7();
        assert_eq!(t.facets().len(), 14);
        let info = validate_closed_surface(&t);
        assert!(info.closed);
        assert_eq!(brute_edges(&t), 21);
        assert_eq!((info.vertices, info.edges, info.facets, info.chi), (7, 21, 14, 0));
        assert_eq!(orientability_and_genus(&t).unwrap(), (true, 1));
    }

    #[test]
    fn projective_plane_is_non_orientable() {
        let t = rp2_6();
        let info = validate_closed_surface(&t);
        assert!(info.closed, "{info:?}");
        assert_eq!(info.chi, 1);
        assert_eq!(orientability_and_genus(&t).unwrap(), (false, 1));
    }

    #[test]
    fn heawood_values() {
        assert_eq!(heawood_bound(2, true).unwrap(), 4);
        assert_eq!(heawood_bound(-2, true).unwrap(), 10);
        assert_eq!(heawood_bound(0, true).unwrap(), 7);
        assert_eq!(heawood_bound(0, false).unwrap(), 8);
        assert_eq!(heawood_bound(1, false).unwrap(), 6);
        assert_eq!(heawood_bound(-1, false).unwrap(), 9);
        assert_eq!(heawood_bound(3, true), Err(HeawoodError::ChiTooLarge(3)));
        assert_eq!(heawood_bound(-1, true), Err(HeawoodError::OddOrientable(-1)));
        assert_eq!(heawood_bound(2, false), Err(HeawoodError::NonOrientableSphere(2)));
    }

    #[test]
    fn heawood_monotone_in_chi() {
        for orientable in [true, false] {
            let valid: Vec<i64> = (-300..=2).filter(|&c| heawood_bound(c, orientable).is_ok()).collect();
            for w in valid.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                assert!(heawood_bound(lo, orientable).unwrap() >= heawood_bound(hi, orientable).unwrap());
            }
        }
    }

    #[test]
    fn links() {
        let t = tetrahedron();
        assert_eq!(vertex_link(&t, 0).unwrap().unwrap(), vec![1, 2, 3]);
        let torus = torus7();
        let link = vertex_link(&torus, 0).unwrap().unwrap();
        assert_eq!(link.len(), 6);
        let mut sorted = link.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3, 4, 5, 6]);
        let disk = Triangulation::from_one_based(&[[1, 2, 3], [1, 3, 4]]).unwrap();
        assert_eq!(
            vertex_link(&disk, 0).unwrap(),
            Err(LinkDefect::Path { vertices: vec![1, 2, 3] })
        );
        assert!(vertex_link(&disk, 9).is_err());
    }

    #[test]
    fn induced() {
        let t = tetrahedron();
        let all = induced_subcomplex(&t, &[0, 1, 2, 3]);
        assert_eq!(all.facets, t.facets());
        let one = induced_subcomplex(&t, &[0, 1, 2]);
        assert_eq!(one.facets, vec![[0, 1, 2]]);
        assert_eq!(one.edges, vec![[0, 1], [0, 2], [1, 2]]);

        let torus = torus7();
        let s = [0, 1, 2, 3];
        let sub = induced_subcomplex(&torus, &s);
        let brute: Vec<Facet> = torus.facets().iter().filter(|f| f.iter().all(|v| s.contains(v))).copied().collect();
        assert_eq!(sub.facets, brute);
        assert!(sub.facets.contains(&[0, 1, 3]));
    }

    #[test]
    fn rejects_bad_facet_lists() {
        assert_eq!(
            Triangulation::from_one_based(&[[1, 2, 3], [1, 2, 3]]),
            Err(ComplexError::DuplicateFacet([1, 2, 3]))
        );
        assert_eq!(
            Triangulation::from_one_based(&[[1, 1, 3]]),
            Err(ComplexError::RepeatedVertex([1, 1, 3]))
        );
        assert_eq!(Triangulation::from_one_based(&[]), Err(ComplexError::Empty));
    }

    #[test]
    fn disconnected_is_not_closed() {
        let t = Triangulation::new(
            8,
            [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [4, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 7]],
        )
        .unwrap();
        let info = validate_closed_surface(&t);
        assert!(!info.connected);
        assert!(!info.closed);
        assert_eq!(info.chi, 4);
    }
}
