//! Symmetry-reduced exhaustive search for realizations on integer grids.
//!
//! Two engines are provided. `fused` places the vertices one at a time in a
//! fixed order, trying grid points in lexicographic order, and discards point
//! sequences that are not the smallest in their orbit under the 48 grid
//! symmetries. `two_phase` first generates canonical point sets of increasing
//! size, keeping a set only while some induced subcomplex of the same size can
//! be placed on it, then assigns vertices to the complete sets.
//!
//! A first-witness run that ends without a witness has explored the whole
//! tree, so it is reported as [`SearchStatus::Unrealizable`] just like an
//! exhaust run. Runs stopped by a limit report [`SearchStatus::LimitReached`].

mod fused;
mod grid;
mod kernel;
mod two_phase;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checker::{check_realization, Embedding, RealizationMode};
use crate::complex::{validate_closed_surface, Triangulation};
use crate::geom::LatticePoint;

pub use grid::{
    canonical_point_set, generate_gp_sets, generate_point_sets, grid_symmetries, max_general_position_subset,
    stabilizer_size, GpMax, GridSpec, GridSymmetry, SEARCH_MAX_EXTENT,
};
pub use two_phase::subcomplex_feasible;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("triangulation is not a closed connected surface")]
    NotClosed,
    #[error("extent {0} is outside 0..=2^20")]
    BadExtent(i64),
    #[error("extent {0} is too large for the search (at most {SEARCH_MAX_EXTENT})")]
    GridTooLarge(i64),
    #[error("point {point} lies outside the grid of extent {extent}")]
    OutsideGrid { point: LatticePoint, extent: i64 },
    #[error("{got} points given but the triangulation has {n} vertices")]
    TooManyPoints { got: usize, n: usize },
    #[error("worker count must be positive")]
    NoWorkers,
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Fused,
    TwoPhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    /// Stop at the first realization.
    FirstWitness,
    /// Explore the whole tree, counting realizations.
    Exhaust,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "fused" => Ok(Strategy::Fused),
            "two_phase" => Ok(Strategy::TwoPhase),
            other => Err(format!("unknown strategy {other:?} (expected fused or two-phase)")),
        }
    }
}

impl std::str::FromStr for Goal {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "first_witness" | "first" => Ok(Goal::FirstWitness),
            "exhaust" => Ok(Goal::Exhaust),
            other => Err(format!("unknown goal {other:?} (expected first-witness or exhaust)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub mode: RealizationMode,
    pub strategy: Strategy,
    pub goal: Goal,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub workers: usize,
    /// With several workers, return the witness a single worker would find.
    pub deterministic: bool,
    /// Depth at which the tree is cut into subtrees for the workers.
    pub split_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: RealizationMode::GeneralPosition,
            strategy: Strategy::Fused,
            goal: Goal::FirstWitness,
            node_limit: None,
            time_limit: None,
            workers: 1,
            deterministic: true,
            split_depth: 2,
        }
    }
}

impl SearchConfig {
    pub fn new(mode: RealizationMode) -> Self {
        SearchConfig { mode, ..Default::default() }
    }

    pub fn strategy(mut self, s: Strategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn goal(mut self, g: Goal) -> Self {
        self.goal = g;
        self
    }

    pub fn workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    pub fn node_limit(mut self, n: Option<u64>) -> Self {
        self.node_limit = n;
        self
    }

    pub fn time_limit(mut self, t: Option<Duration>) -> Self {
        self.time_limit = t;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Realized,
    Unrealizable,
    LimitReached,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub canonical_rejections: u64,
    pub feasibility_prunes: u64,
    /// Largest number of vertices (fused) or points (two_phase) placed.
    pub max_depth_reached: usize,
    pub subtrees: usize,
    /// Nodes expanded at each depth, root excluded.
    pub depth_profile: Vec<u64>,
    /// Realizations found, each symmetry class weighted by its orbit size. Equal
    /// to the number of valid placements when the tree was exhausted.
    pub solutions: u64,
    /// Whole tree explored.
    pub complete: bool,
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes_expanded += o.nodes_expanded;
        self.canonical_rejections += o.canonical_rejections;
        self.feasibility_prunes += o.feasibility_prunes;
        self.max_depth_reached = self.max_depth_reached.max(o.max_depth_reached);
        self.solutions += o.solutions;
        if self.depth_profile.len() < o.depth_profile.len() {
            self.depth_profile.resize(o.depth_profile.len(), 0);
        }
        for (a, b) in self.depth_profile.iter_mut().zip(&o.depth_profile) {
            *a += b;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Embedding>,
    pub extent: i64,
    pub mode: RealizationMode,
    pub stats: SearchStats,
}

/// Shared state of one run: limits and the witness flag.
pub(crate) struct Control {
    start: Instant,
    node_limit: Option<u64>,
    time_limit: Option<Duration>,
    goal: Goal,
    deterministic: bool,
    nodes: AtomicU64,
    limit_hit: AtomicBool,
    /// smallest subtree index that produced a witness
    best: AtomicUsize,
}

const TICK: u64 = 256;

impl Control {
    fn new(cfg: &SearchConfig) -> Self {
        Control {
            start: Instant::now(),
            node_limit: cfg.node_limit,
            time_limit: cfg.time_limit,
            goal: cfg.goal,
            deterministic: cfg.deterministic,
            nodes: AtomicU64::new(0),
            limit_hit: AtomicBool::new(false),
            best: AtomicUsize::new(usize::MAX),
        }
    }

    /// Counts a node; returns true when the caller must unwind.
    #[inline]
    pub fn tick(&self, local: &mut u64, subtree: usize) -> bool {
        *local += 1;
        if !local.is_multiple_of(TICK) {
            return false;
        }
        let total = self.nodes.fetch_add(TICK, Ordering::Relaxed) + TICK;
        if self.node_limit.is_some_and(|l| total > l) || self.time_limit.is_some_and(|t| self.start.elapsed() > t) {
            self.limit_hit.store(true, Ordering::Relaxed);
        }
        self.cancelled(subtree)
    }

    /// Whether work on `subtree` is no longer needed.
    pub fn cancelled(&self, subtree: usize) -> bool {
        if self.limit_hit.load(Ordering::Relaxed) {
            return true;
        }
        if self.goal == Goal::Exhaust {
            return false;
        }
        let best = self.best.load(Ordering::Relaxed);
        if self.deterministic {
            best < subtree
        } else {
            best != usize::MAX
        }
    }

    pub fn found(&self, subtree: usize) {
        self.best.fetch_min(subtree, Ordering::Relaxed);
    }

    pub fn stop_on_witness(&self) -> bool {
        self.goal == Goal::FirstWitness
    }
}

/// Result of exploring one subtree (or the part of the tree above the cut).
#[derive(Default)]
pub(crate) struct Part {
    pub stats: SearchStats,
    /// point per vertex
    pub witness: Option<Vec<LatticePoint>>,
    /// false when unwound early
    pub complete: bool,
}

/// Runs `f` on subtrees `0..count` with `workers` threads; results in index order.
pub(crate) fn par_subtrees<F>(count: usize, workers: usize, f: F) -> Vec<Part>
where
    F: Fn(usize) -> Part + Sync,
{
    let workers = workers.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<Part>> = (0..count).map(|_| None).collect();
    let done: Vec<Vec<(usize, Part)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break;
                        }
                        mine.push((i, f(i)));
                    }
                    mine
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    for (i, p) in done.into_iter().flatten() {
        slots[i] = Some(p);
    }
    slots.into_iter().map(|p| p.unwrap()).collect()
}

/// Searches for a realization of `t` with all vertices in `g` at `cfg.mode`.
pub fn realize(t: &Triangulation, g: &GridSpec, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    if !validate_closed_surface(t).closed {
        return Err(SearchError::NotClosed);
    }
    if cfg.workers == 0 {
        return Err(SearchError::NoWorkers);
    }
    let lat = grid::Lattice::new(*g)?;
    let ctl = Control::new(cfg);
    let (top, parts) = match cfg.strategy {
        Strategy::Fused => fused::search(t, &lat, cfg, &ctl),
        Strategy::TwoPhase => two_phase::search(t, &lat, cfg, &ctl),
    };

    let mut stats = top.stats.clone();
    stats.subtrees = parts.len();
    let mut complete = top.complete;
    let mut witness = top.witness;
    for p in &parts {
        stats.absorb(&p.stats);
        complete &= p.complete;
        if witness.is_none() {
            witness = p.witness.clone();
        }
    }
    stats.complete = complete;
    stats.elapsed = ctl.start.elapsed();

    let witness = witness.map(Embedding::new);
    if let Some(w) = &witness {
        let report = check_realization(t, w, cfg.mode).expect("witness has one grid point per vertex");
        assert!(report.valid, "search produced an invalid witness: {:?}", report.violations);
    }
    let status = match (&witness, complete) {
        (Some(_), _) => SearchStatus::Realized,
        (None, true) => SearchStatus::Unrealizable,
        (None, false) => SearchStatus::LimitReached,
    };
    Ok(SearchOutcome { status, witness, extent: g.extent(), mode: cfg.mode, stats })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalExtent {
    /// Smallest extent with a realization, known only when every smaller
    /// extent was exhausted.
    pub minimal: Option<i64>,
    /// Smallest extent at which a realization was found.
    pub first_realized: Option<i64>,
    pub outcomes: Vec<SearchOutcome>,
}

/// Runs [`realize`] for extents `0..=e_max` until one succeeds.
pub fn minimal_extent(
    t: &Triangulation,
    mode: RealizationMode,
    e_max: i64,
    cfg: &SearchConfig,
) -> Result<MinimalExtent, SearchError> {
    let cfg = SearchConfig { mode, ..cfg.clone() };
    let mut outcomes = Vec::new();
    let mut all_exhausted = true;
    let mut first_realized = None;
    for e in 0..=e_max {
        let out = realize(t, &GridSpec::new(e)?, &cfg)?;
        let status = out.status;
        outcomes.push(out);
        match status {
            SearchStatus::Realized => {
                first_realized = Some(e);
                break;
            }
            SearchStatus::Unrealizable => {}
            SearchStatus::LimitReached => all_exhausted = false,
        }
    }
    Ok(MinimalExtent { minimal: first_realized.filter(|_| all_exhausted), first_realized, outcomes })
}
