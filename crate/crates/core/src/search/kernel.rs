//! Incremental checks for partially placed complexes.

use crate::checker::RealizationMode;
use crate::complex::{facet_edges, Edge, Facet, Triangulation, Vertex};
use crate::geom::{self, LatticePoint, Segment, SegmentIntersection, Triangle};

/// Adjacency of a closed surface in the shapes the engines need.
pub(crate) struct Topo {
    pub n: usize,
    pub facets: Vec<Facet>,
    pub edges: Vec<Edge>,
    pub nbrs: Vec<Vec<Vertex>>,
    /// facet indices around each vertex
    pub vfacets: Vec<Vec<usize>>,
    /// the two facets on each edge, aligned with `edges`
    pub edge_facets: Vec<[usize; 2]>,
}

impl Topo {
    pub fn new(t: &Triangulation) -> Self {
        let n = t.vertex_count();
        let facets = t.facets().to_vec();
        let edges = t.edges();
        let mut nbrs = vec![Vec::new(); n];
        for e in &edges {
            nbrs[e[0] as usize].push(e[1]);
            nbrs[e[1] as usize].push(e[0]);
        }
        let mut vfacets = vec![Vec::new(); n];
        let mut edge_facets = vec![[usize::MAX; 2]; edges.len()];
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                vfacets[v as usize].push(i);
            }
            for e in facet_edges(f) {
                let k = edges.binary_search(&e).unwrap();
                let slot = if edge_facets[k][0] == usize::MAX { 0 } else { 1 };
                edge_facets[k][slot] = i;
            }
        }
        Topo { n, facets, edges, nbrs, vfacets, edge_facets }
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> usize {
        self.edges.binary_search(&[a.min(b), a.max(b)]).unwrap()
    }
}

/// Checks the simplices completed by placing `v` against everything placed
/// before. `at[u]` is the point of `u` if placed; points must be pairwise
/// distinct.
pub(crate) fn extension_ok(topo: &Topo, at: &[Option<LatticePoint>], v: Vertex, mode: RealizationMode) -> bool {
    let placed = |u: Vertex| at[u as usize].is_some();
    let p = |u: Vertex| at[u as usize].unwrap();
    let full = |f: &Facet| f.iter().all(|&u| placed(u));
    let tri = |f: &Facet| Triangle::new(p(f[0]), p(f[1]), p(f[2]));

    let new_facets: Vec<usize> = topo.vfacets[v as usize].iter().copied().filter(|&i| full(&topo.facets[i])).collect();
    for &i in &new_facets {
        let f = &topo.facets[i];
        if geom::collinear_raw(&p(f[0]), &p(f[1]), &p(f[2])) {
            return false;
        }
    }
    let new_edges: Vec<Edge> =
        topo.nbrs[v as usize].iter().filter(|&&u| placed(u)).map(|&u| [v.min(u), v.max(u)]).collect();
    let placed_edges = || topo.edges.iter().filter(|e| placed(e[0]) && placed(e[1]));

    for e1 in &new_edges {
        let s1 = Segment::new(p(e1[0]), p(e1[1]));
        for e2 in placed_edges() {
            if e2 == e1 || (e2.contains(&v) && e2 < e1) {
                continue;
            }
            match geom::segment_segment_raw(&s1, &Segment::new(p(e2[0]), p(e2[1]))) {
                SegmentIntersection::CrossingPoint | SegmentIntersection::CollinearOverlap => return false,
                SegmentIntersection::Disjoint | SegmentIntersection::SharedEndpointOnly => {}
            }
        }
    }

    let edge_vs_facet = |e: &Edge, f: &Facet| -> bool {
        if f.contains(&e[0]) && f.contains(&e[1]) {
            return true;
        }
        let shared: Vec<LatticePoint> = e.iter().filter(|u| f.contains(u)).map(|&u| p(u)).collect();
        geom::segment_triangle_raw(&Segment::new(p(e[0]), p(e[1])), &tri(f), &shared).is_none()
    };
    for e in &new_edges {
        for f in topo.facets.iter().filter(|f| full(f)) {
            if !edge_vs_facet(e, f) {
                return false;
            }
        }
    }
    for &i in &new_facets {
        let f = &topo.facets[i];
        for e in placed_edges().filter(|e| !e.contains(&v)) {
            if !edge_vs_facet(e, f) {
                return false;
            }
        }
    }

    if mode >= RealizationMode::Proper {
        for &i in &new_facets {
            let f = &topo.facets[i];
            for e in facet_edges(f) {
                let [a, b] = topo.edge_facets[topo.edge_index(e[0], e[1])];
                let other = &topo.facets[if a == i { b } else { a }];
                if !full(other) {
                    continue;
                }
                let x = f.iter().find(|u| !e.contains(u)).unwrap();
                let y = other.iter().find(|u| !e.contains(u)).unwrap();
                if geom::orient3d_raw(&p(e[0]), &p(e[1]), &p(*x), &p(*y)).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
