//! Point sets first, vertex assignment second.
//!
//! Canonical point sets are grown one point at a time. A set of `s` points is
//! kept only if some `s` vertices can be mapped onto it so that the induced
//! subcomplex is placed without conflicts; this property passes to subsets, so
//! no realizable configuration is lost. Complete sets are then matched with
//! every vertex bijection.

use super::grid::{Lattice, SetWalker};
use super::kernel::{extension_ok, Topo};
use super::{par_subtrees, Control, Part, SearchConfig, SearchError};
use crate::checker::RealizationMode;
use crate::complex::{validate_closed_surface, Triangulation, Vertex};
use crate::geom::{general_position, GeneralPosition, LatticePoint};

/// Backtracking over injective maps from a point list to vertices.
struct Assigner<'a> {
    topo: &'a Topo,
    mode: RealizationMode,
    at: Vec<Option<LatticePoint>>,
}

impl<'a> Assigner<'a> {
    fn new(topo: &'a Topo, mode: RealizationMode) -> Self {
        Assigner { topo, mode, at: vec![None; topo.n] }
    }

    /// Calls `visit` for every valid assignment of `pts`; stops when it returns
    /// true and reports whether it did.
    fn run(&mut self, pts: &[LatticePoint], visit: &mut dyn FnMut(&[Option<LatticePoint>]) -> bool) -> bool {
        self.step(pts, 0, visit)
    }

    fn step(&mut self, pts: &[LatticePoint], j: usize, visit: &mut dyn FnMut(&[Option<LatticePoint>]) -> bool) -> bool {
        if j == pts.len() {
            return visit(&self.at);
        }
        for v in 0..self.topo.n {
            if self.at[v].is_some() {
                continue;
            }
            self.at[v] = Some(pts[j]);
            let stop = extension_ok(self.topo, &self.at, v as Vertex, self.mode) && self.step(pts, j + 1, visit);
            self.at[v] = None;
            if stop {
                return true;
            }
        }
        false
    }

    fn feasible(&mut self, pts: &[LatticePoint]) -> Option<Vec<(Vertex, LatticePoint)>> {
        let mut found = None;
        self.run(pts, &mut |at| {
            found = Some(at.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v as Vertex, p))).collect());
            true
        });
        found
    }
}

/// Whether some `|p|` vertices of `t` can be mapped bijectively onto `p` so
/// that the induced subcomplex has non-degenerate facets, pairwise compatible
/// facets, non-crossing edges and no edge meeting a facet improperly, with the
/// extra conditions of `mode`. Returns such a map.
pub fn subcomplex_feasible(
    p: &[LatticePoint],
    t: &Triangulation,
    mode: RealizationMode,
) -> Result<Option<Vec<(Vertex, LatticePoint)>>, SearchError> {
    if !validate_closed_surface(t).closed {
        return Err(SearchError::NotClosed);
    }
    if p.len() > t.vertex_count() {
        return Err(SearchError::TooManyPoints { got: p.len(), n: t.vertex_count() });
    }
    for q in p {
        q.check_bounds()?;
    }
    let mut sorted = p.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() < p.len() {
        return Ok(None);
    }
    if mode == RealizationMode::GeneralPosition && general_position(p).unwrap() != GeneralPosition::Ok {
        return Ok(None);
    }
    let topo = Topo::new(t);
    Ok(Assigner::new(&topo, mode).feasible(p))
}

struct Walker<'a> {
    sets: SetWalker<'a>,
    assign: Assigner<'a>,
    n: usize,
    ctl: &'a Control,
    part: Part,
    local: u64,
    subtree: usize,
    collect: Option<(usize, Vec<Vec<u32>>)>,
}

impl<'a> Walker<'a> {
    fn new(lat: &'a Lattice, topo: &'a Topo, ctl: &'a Control, mode: RealizationMode) -> Self {
        Walker {
            sets: SetWalker::new(lat, mode == RealizationMode::GeneralPosition, topo.n),
            assign: Assigner::new(topo, mode),
            n: topo.n,
            ctl,
            part: Part::default(),
            local: 0,
            subtree: 0,
            collect: None,
        }
    }

    /// Handles a complete set; returns true to unwind.
    fn complete_set(&mut self, stab: usize) -> bool {
        let pts = self.sets.points();
        let weight = 48 / stab as u64;
        let (ctl, subtree) = (self.ctl, self.subtree);
        let part = &mut self.part;
        self.assign.run(&pts, &mut |at| {
            part.stats.solutions += weight;
            if part.witness.is_none() {
                part.witness = Some(at.iter().map(|p| p.unwrap()).collect());
                ctl.found(subtree);
            }
            ctl.stop_on_witness()
        })
    }

    /// Explores the extensions of the current set; returns true to unwind.
    fn dfs(&mut self) -> bool {
        let s = self.sets.set.len();
        if let Some((d, roots)) = &mut self.collect {
            if s == *d {
                roots.push(self.sets.set.clone());
                return false;
            }
        }
        for q in self.sets.candidates() {
            let Some(stab) = self.sets.push(q) else {
                self.part.stats.canonical_rejections += 1;
                continue;
            };
            let stop = if s + 1 == self.n {
                self.count_node(s + 1);
                self.ctl.tick(&mut self.local, self.subtree) || self.complete_set(stab)
            } else if self.assign.feasible(&self.sets.points()).is_some() {
                self.count_node(s + 1);
                self.ctl.tick(&mut self.local, self.subtree) || self.dfs()
            } else {
                self.part.stats.feasibility_prunes += 1;
                false
            };
            self.sets.pop();
            if stop {
                return true;
            }
        }
        false
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
}

pub(super) fn search(t: &Triangulation, lat: &Lattice, cfg: &SearchConfig, ctl: &Control) -> (Part, Vec<Part>) {
    let topo = Topo::new(t);
    let n = topo.n;
    if n > lat.len() {
        let part = Part { complete: true, ..Part::default() };
        return (part, Vec::new());
    }
    let split = cfg.split_depth.min(n - 1);

    let mut top = Walker::new(lat, &topo, ctl, cfg.mode);
    top.collect = Some((split, Vec::new()));
    let unwound = top.dfs();
    let roots = top.collect.take().unwrap().1;
    let mut head = std::mem::take(&mut top.part);
    head.complete = !unwound;
    if unwound {
        return (head, Vec::new());
    }

    let parts = par_subtrees(roots.len(), cfg.workers, |i| {
        let mut w = Walker::new(lat, &topo, ctl, cfg.mode);
        w.subtree = i;
        if ctl.cancelled(i) {
            return w.part;
        }
        for &q in &roots[i] {
            w.sets.push(q).expect("root sets are canonical");
        }
        let unwound = w.dfs();
        w.part.complete = !unwound;
        w.part
    });
    (head, parts)
}
