//! Verification that vertex coordinates realize a triangulated surface.
//!
//! For a closed surface every edge and every vertex lies in some facet, so the
//! embedding is free of self-intersections exactly when every pair of facets
//! meets in their common face: the edge–edge and vertex–facet conditions follow
//! from the facet pairs. The check therefore runs over the `F·(F−1)/2` facet
//! pairs only.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{validate_closed_surface, Facet, Triangulation, Vertex};
use crate::geom::{self, Compatibility, Conflict, GeomError, LatticePoint, Triangle};

pub const DEFAULT_VIOLATION_CAP: usize = 100;

/// Strictness of a realization. `GeneralPosition` implies `Proper` implies `Any`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationMode {
    /// Straight edges, flat non-degenerate triangles, no self-intersections.
    Any,
    /// Additionally no two triangles sharing an edge are coplanar.
    Proper,
    /// Additionally no three vertices collinear and no four coplanar.
    GeneralPosition,
}

impl RealizationMode {
    pub const ALL: [RealizationMode; 3] = [RealizationMode::Any, RealizationMode::Proper, RealizationMode::GeneralPosition];

    pub fn as_str(&self) -> &'static str {
        match self {
            RealizationMode::Any => "any",
            RealizationMode::Proper => "proper",
            RealizationMode::GeneralPosition => "general-position",
        }
    }
}

impl fmt::Display for RealizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RealizationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "any" => Ok(RealizationMode::Any),
            "proper" => Ok(RealizationMode::Proper),
            "general-position" | "gp" | "generalposition" => Ok(RealizationMode::GeneralPosition),
            other => Err(format!("unknown mode {other:?} (expected any, proper or general-position)")),
        }
    }
}

/// Coordinates for every vertex of a triangulation, indexed by internal vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    coords: Vec<LatticePoint>,
}

impl Embedding {
    pub fn new(coords: Vec<LatticePoint>) -> Self {
        Embedding { coords }
    }

    /// Builds an embedding from coordinates keyed by external vertex label.
    pub fn from_labeled(t: &Triangulation, coords: &BTreeMap<u32, LatticePoint>) -> Result<Self, CheckError> {
        let mut out = Vec::with_capacity(t.vertex_count());
        for v in 0..t.vertex_count() as Vertex {
            let l = t.label(v);
            out.push(*coords.get(&l).ok_or(CheckError::MissingVertex(l))?);
        }
        if let Some(&l) = coords.keys().find(|l| t.vertex_of_label(**l).is_none()) {
            return Err(CheckError::UnknownVertex(l));
        }
        Ok(Embedding { coords: out })
    }

    /// Coordinates keyed by external label.
    pub fn to_labeled(&self, t: &Triangulation) -> BTreeMap<u32, LatticePoint> {
        self.coords.iter().enumerate().map(|(v, p)| (t.label(v as Vertex), *p)).collect()
    }

    pub fn point(&self, v: Vertex) -> LatticePoint {
        self.coords[v as usize]
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Applies `f` to every point.
    pub fn map(&self, f: impl Fn(LatticePoint) -> LatticePoint) -> Embedding {
        Embedding { coords: self.coords.iter().map(|&p| f(p)).collect() }
    }

    /// Largest coordinate used, or 0 for an empty embedding.
    pub fn extent(&self) -> i64 {
        self.coords.iter().flat_map(|p| p.coords()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("triangulation is not a closed connected surface")]
    NotClosed,
    #[error("embedding has {got} points for {expected} vertices")]
    WrongSize { expected: usize, got: usize },
    #[error("no coordinates for vertex {0}")]
    MissingVertex(u32),
    #[error("coordinates given for unknown vertex {0}")]
    UnknownVertex(u32),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One reason an embedding fails to be a realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicatePoint { vertices: [Vertex; 2] },
    DegenerateFace { facet: Facet },
    PairViolation { first: Facet, second: Facet, conflict: Conflict },
    CoplanarNeighbors { first: Facet, second: Facet },
    CollinearTriple { vertices: [Vertex; 3] },
    CoplanarQuad { vertices: [Vertex; 4] },
}

impl Violation {
    /// The weakest mode this violation rules out.
    pub fn level(&self) -> RealizationMode {
        match self {
            Violation::DuplicatePoint { .. } | Violation::DegenerateFace { .. } | Violation::PairViolation { .. } => {
                RealizationMode::Any
            }
            Violation::CoplanarNeighbors { .. } => RealizationMode::Proper,
            Violation::CollinearTriple { .. } | Violation::CoplanarQuad { .. } => RealizationMode::GeneralPosition,
        }
    }

    /// Human-readable description in external labels.
    pub fn describe(&self, t: &Triangulation) -> String {
        let l = |v: &Vertex| t.label(*v);
        let f = |f: &Facet| format!("[{},{},{}]", l(&f[0]), l(&f[1]), l(&f[2]));
        match self {
            Violation::DuplicatePoint { vertices: [a, b] } => format!("vertices {} and {} share a point", l(a), l(b)),
            Violation::DegenerateFace { facet } => format!("facet {} is degenerate", f(facet)),
            Violation::PairViolation { first, second, conflict } => {
                format!("facets {} and {}: {conflict}", f(first), f(second))
            }
            Violation::CoplanarNeighbors { first, second } => {
                format!("neighbouring facets {} and {} are coplanar", f(first), f(second))
            }
            Violation::CollinearTriple { vertices: [a, b, c] } => {
                format!("vertices {}, {}, {} are collinear", l(a), l(b), l(c))
            }
            Violation::CoplanarQuad { vertices: [a, b, c, d] } => {
                format!("vertices {}, {}, {}, {} are coplanar", l(a), l(b), l(c), l(d))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub valid: bool,
    pub mode_checked: RealizationMode,
    pub strongest_mode_satisfied: Option<RealizationMode>,
    /// Violations that matter for `mode_checked`, at most the configured cap.
    pub violations: Vec<Violation>,
    /// Number of violations per level (`any`, `proper`, `general-position`),
    /// not limited by the cap.
    pub counts: [usize; 3],
}

/// Checks `e` against `t` at `mode`, listing up to [`DEFAULT_VIOLATION_CAP`]
/// violations.
pub fn check_realization(t: &Triangulation, e: &Embedding, mode: RealizationMode) -> Result<CheckReport, CheckError> {
    check_realization_capped(t, e, mode, DEFAULT_VIOLATION_CAP)
}

pub fn check_realization_capped(
    t: &Triangulation,
    e: &Embedding,
    mode: RealizationMode,
    cap: usize,
) -> Result<CheckReport, CheckError> {
    if !validate_closed_surface(t).closed {
        return Err(CheckError::NotClosed);
    }
    if e.len() != t.vertex_count() {
        return Err(CheckError::WrongSize { expected: t.vertex_count(), got: e.len() });
    }
    for p in e.points() {
        p.check_bounds()?;
    }
    let all = collect_violations(t, e);
    let mut counts = [0usize; 3];
    for v in &all {
        counts[v.level() as usize] += 1;
    }
    let strongest = if counts[0] > 0 {
        None
    } else if counts[1] > 0 {
        Some(RealizationMode::Any)
    } else if counts[2] > 0 {
        Some(RealizationMode::Proper)
    } else {
        Some(RealizationMode::GeneralPosition)
    };
    let violations: Vec<Violation> = all.into_iter().filter(|v| v.level() <= mode).take(cap).collect();
    Ok(CheckReport {
        valid: strongest.is_some_and(|s| s >= mode),
        mode_checked: mode,
        strongest_mode_satisfied: strongest,
        violations,
        counts,
    })
}

/// The strongest mode at which `e` realizes `t`, or `None` when it is not a
/// realization at all.
pub fn strongest_mode(t: &Triangulation, e: &Embedding) -> Result<Option<RealizationMode>, CheckError> {
    check_realization_capped(t, e, RealizationMode::Any, 0).map(|r| r.strongest_mode_satisfied)
}

fn collect_violations(t: &Triangulation, e: &Embedding) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = t.vertex_count() as Vertex;
    let p = |v: Vertex| e.point(v);

    for a in 0..n {
        for b in a + 1..n {
            if p(a) == p(b) {
                out.push(Violation::DuplicatePoint { vertices: [a, b] });
            }
        }
    }

    let facets = t.facets();
    let degenerate: Vec<bool> = facets.iter().map(|f| geom::collinear_raw(&p(f[0]), &p(f[1]), &p(f[2]))).collect();
    for (f, _) in facets.iter().zip(&degenerate).filter(|(_, d)| **d) {
        out.push(Violation::DegenerateFace { facet: *f });
    }
    let tri = |f: &Facet| Triangle::new(p(f[0]), p(f[1]), p(f[2]));
    for i in 0..facets.len() {
        if degenerate[i] {
            continue;
        }
        for j in i + 1..facets.len() {
            if degenerate[j] {
                continue;
            }
            let (fi, fj) = (&facets[i], &facets[j]);
            let shared: Vec<LatticePoint> = fi.iter().filter(|v| fj.contains(v)).map(|&v| p(v)).collect();
            if let Compatibility::Violation(conflict) = geom::triangles_compatible_raw(&tri(fi), &tri(fj), &shared) {
                out.push(Violation::PairViolation { first: *fi, second: *fj, conflict });
            }
        }
    }

    let mut by_edge: BTreeMap<[Vertex; 2], Vec<Facet>> = BTreeMap::new();
    for f in facets {
        for e in crate::complex::facet_edges(f) {
            by_edge.entry(e).or_default().push(*f);
        }
    }
    for (edge, fs) in &by_edge {
        if let [f, g] = fs.as_slice() {
            let x = f.iter().find(|v| !edge.contains(v)).unwrap();
            let y = g.iter().find(|v| !edge.contains(v)).unwrap();
            if geom::orient3d_raw(&p(edge[0]), &p(edge[1]), &p(*x), &p(*y)).is_zero() {
                out.push(Violation::CoplanarNeighbors { first: *f, second: *g });
            }
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if geom::collinear_raw(&p(a), &p(b), &p(c)) {
                    out.push(Violation::CollinearTriple { vertices: [a, b, c] });
                    continue;
                }
                for d in c + 1..n {
                    if geom::orient3d_raw(&p(a), &p(b), &p(c), &p(d)).is_zero() {
                        out.push(Violation::CoplanarQuad { vertices: [a, b, c, d] });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tetrahedron;

    fn pts(c: &[[i64; 3]]) -> Embedding {
        Embedding::new(c.iter().map(|&c| LatticePoint::from_coords(c)).collect())
    }

    /// Two pyramids over the quadrilateral `0,1,2,3`, apexes 4 and 5.
    fn bipyramid() -> Triangulation {
        Triangulation::new(
            6,
            [
                [0, 1, 4],
                [1, 2, 4],
                [2, 3, 4],
                [0, 3, 4],
                [0, 1, 5],
                [1, 2, 5],
                [2, 3, 5],
                [0, 3, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_tetrahedron_is_general_position() {
        let e = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let r = check_realization(&tetrahedron(), &e, RealizationMode::GeneralPosition).unwrap();
        assert!(r.valid);
        assert!(r.violations.is_empty());
        assert_eq!(strongest_mode(&tetrahedron(), &e).unwrap(), Some(RealizationMode::GeneralPosition));
    }

    #[test]
    fn flat_tetrahedron_is_invalid() {
        let e = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let r = check_realization(&tetrahedron(), &e, RealizationMode::GeneralPosition).unwrap();
        assert!(!r.valid);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::CoplanarQuad { .. })));
        let pairs = r.violations.iter().filter(|v| matches!(v, Violation::PairViolation { .. })).count();
        assert_eq!(pairs, 4);
        assert_eq!(strongest_mode(&tetrahedron(), &e).unwrap(), None);
    }

    #[test]
    fn coplanar_hinge_is_any_but_not_proper() {
        // vertex 3 is lifted so that 4, the midpoint of 1 and 3, makes facets
        // [1,2,4] and [2,3,4] two halves of one flat triangle
        let t = bipyramid();
        let e = pts(&[[0, 0, 0], [2, 0, 0], [2, 2, 0], [0, 2, 4], [1, 1, 2], [1, 1, -2]]);
        let r = check_realization(&t, &e, RealizationMode::Any).unwrap();
        assert!(r.valid, "{:?}", r.violations);
        let proper = check_realization(&t, &e, RealizationMode::Proper).unwrap();
        assert!(!proper.valid);
        assert!(proper.violations.contains(&Violation::CoplanarNeighbors { first: [1, 2, 4], second: [2, 3, 4] }));
        assert_eq!(strongest_mode(&t, &e).unwrap(), Some(RealizationMode::Any));
    }

    #[test]
    fn crossing_facets_are_reported() {
        // lower apex pushed sideways out through the upper pyramid
        let t = bipyramid();
        let e = pts(&[[0, 0, 0], [4, 0, 0], [4, 4, 0], [0, 4, 0], [2, 2, 2], [6, 2, 1]]);
        let r = check_realization(&t, &e, RealizationMode::Any).unwrap();
        assert!(!r.valid);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::PairViolation { .. })), "{:?}", r.violations);
        assert_eq!(strongest_mode(&t, &e).unwrap(), None);
        let good = pts(&[[0, 0, 0], [4, 0, 0], [4, 4, 0], [0, 4, 0], [2, 2, 2], [2, 1, -3]]);
        assert_eq!(strongest_mode(&t, &good).unwrap(), Some(RealizationMode::Proper));
    }

    #[test]
    fn duplicate_point_is_a_violation() {
        let e = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0]]);
        let r = check_realization(&tetrahedron(), &e, RealizationMode::Any).unwrap();
        assert!(r.violations.contains(&Violation::DuplicatePoint { vertices: [2, 3] }));
        assert!(!r.valid);
    }

    #[test]
    fn errors() {
        let e = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(
            check_realization(&tetrahedron(), &e, RealizationMode::Any),
            Err(CheckError::WrongSize { expected: 4, got: 3 })
        );
        let open = Triangulation::new(4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let e4 = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(check_realization(&open, &e4, RealizationMode::Any), Err(CheckError::NotClosed));
        let mut labeled = BTreeMap::new();
        labeled.insert(1, LatticePoint::new(0, 0, 0));
        assert_eq!(Embedding::from_labeled(&tetrahedron(), &labeled), Err(CheckError::MissingVertex(2)));
    }

    #[test]
    fn violation_cap() {
        let e = pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let r = check_realization_capped(&tetrahedron(), &e, RealizationMode::GeneralPosition, 2).unwrap();
        assert_eq!(r.violations.len(), 2);
        assert!(r.counts.iter().sum::<usize>() > 2);
    }
}
