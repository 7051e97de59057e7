//! Exact integer predicates in three dimensions.
//!
//! Every predicate reduces to the sign of an integer determinant evaluated with
//! 128-bit intermediates. Intersection points are never constructed; callers get
//! classifications only.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible coordinate magnitude for the exact predicates.
pub const COORD_LIMIT: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("coordinate {0} exceeds the exactness bound of {COORD_LIMIT}")]
    OutOfBounds(i64),
    #[error("segment endpoints coincide at {0}")]
    DegenerateSegment(LatticePoint),
    #[error("triangle corners {0}, {1}, {2} are collinear or coincide")]
    DegenerateTriangle(LatticePoint, LatticePoint, LatticePoint),
    #[error("point {0} occurs more than once")]
    DuplicatePoint(LatticePoint),
    #[error("shared point {0} is not a common vertex of both simplices")]
    SharedMismatch(LatticePoint),
}

/// An integer point in three dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    pub fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_coords(c: [i64; 3]) -> Self {
        LatticePoint::new(c[0], c[1], c[2])
    }

    /// Checks that every coordinate is within [`COORD_LIMIT`].
    pub fn check_bounds(&self) -> Result<(), GeomError> {
        for c in self.coords() {
            if c.abs() > COORD_LIMIT {
                return Err(GeomError::OutOfBounds(c));
            }
        }
        Ok(())
    }

    fn sub(&self, o: &LatticePoint) -> [i128; 3] {
        [
            (self.x - o.x) as i128,
            (self.y - o.y) as i128,
            (self.z - o.z) as i128,
        ]
    }

    pub fn translate(&self, d: [i64; 3]) -> LatticePoint {
        LatticePoint::new(self.x + d[0], self.y + d[1], self.z + d[2])
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl From<[i64; 3]> for LatticePoint {
    fn from(c: [i64; 3]) -> Self {
        LatticePoint::from_coords(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn of(v: i128) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn value(self) -> i8 {
        self as i8
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A closed segment between two lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: LatticePoint,
    pub b: LatticePoint,
}

impl Segment {
    pub fn new(a: LatticePoint, b: LatticePoint) -> Self {
        Segment { a, b }
    }

    fn has_endpoint(&self, p: &LatticePoint) -> bool {
        self.a == *p || self.b == *p
    }
}

/// A closed triangle given by its three corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub corners: [LatticePoint; 3],
}

impl Triangle {
    pub fn new(p: LatticePoint, q: LatticePoint, r: LatticePoint) -> Self {
        Triangle { corners: [p, q, r] }
    }

    pub fn edges(&self) -> [Segment; 3] {
        let [p, q, r] = self.corners;
        [Segment::new(p, q), Segment::new(q, r), Segment::new(r, p)]
    }

    fn has_corner(&self, p: &LatticePoint) -> bool {
        self.corners.contains(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentIntersection {
    Disjoint,
    SharedEndpointOnly,
    CrossingPoint,
    CollinearOverlap,
}

/// How two simplices that should only meet in their common face actually meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conflict {
    /// A segment passes through the plane of a triangle at a point of the triangle.
    TransversalCrossing,
    /// Coplanar simplices overlap beyond their common face.
    CoplanarOverlap,
    /// A vertex that is not shared lies on the other simplex.
    TouchAtNonsharedPoint,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Conflict::TransversalCrossing => "transversal crossing",
            Conflict::CoplanarOverlap => "coplanar overlap",
            Conflict::TouchAtNonsharedPoint => "touch at non-shared point",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Compatibility {
    Compatible,
    Violation(Conflict),
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneralPosition {
    Ok,
    CollinearTriple { indices: [usize; 3] },
    CoplanarQuad { indices: [usize; 4] },
}

// ---------------------------------------------------------------------------
// raw predicates, no bound checks

#[inline]
fn det3(u: [i128; 3], v: [i128; 3], w: [i128; 3]) -> i128 {
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
}

#[inline]
fn cross(u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

#[inline]
pub(crate) fn orient3d_raw(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint, d: &LatticePoint) -> Sign {
    Sign::of(det3(b.sub(a), c.sub(a), d.sub(a)))
}

#[inline]
pub(crate) fn collinear_raw(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> bool {
    cross(b.sub(a), c.sub(a)) == [0, 0, 0]
}

/// Index of the coordinate axis along which `n` has the largest magnitude.
fn dominant_axis(n: [i128; 3]) -> usize {
    let mut k = 0;
    for i in 1..3 {
        if n[i].abs() > n[k].abs() {
            k = i;
        }
    }
    k
}

type P2 = [i128; 2];

fn project(p: &LatticePoint, drop: usize) -> P2 {
    let c = p.coords();
    [c[(drop + 1) % 3] as i128, c[(drop + 2) % 3] as i128]
}

#[inline]
fn orient2d(a: P2, b: P2, c: P2) -> Sign {
    Sign::of((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

/// `c` on the closed segment `ab`, given the three are collinear.
fn on_collinear_segment(a: P2, b: P2, c: P2) -> bool {
    a[0].min(b[0]) <= c[0] && c[0] <= a[0].max(b[0]) && a[1].min(b[1]) <= c[1] && c[1] <= a[1].max(b[1])
}

fn segments_meet_2d(a: P2, b: P2, c: P2, d: P2) -> bool {
    let d1 = orient2d(c, d, a);
    let d2 = orient2d(c, d, b);
    let d3 = orient2d(a, b, c);
    let d4 = orient2d(a, b, d);
    if d1 != Sign::Zero && d2 != Sign::Zero && d1 != d2 && d3 != Sign::Zero && d4 != Sign::Zero && d3 != d4 {
        return true;
    }
    (d1.is_zero() && on_collinear_segment(c, d, a))
        || (d2.is_zero() && on_collinear_segment(c, d, b))
        || (d3.is_zero() && on_collinear_segment(a, b, c))
        || (d4.is_zero() && on_collinear_segment(a, b, d))
}

fn point_in_triangle_2d(p: P2, t: [P2; 3]) -> bool {
    let s0 = orient2d(t[0], t[1], p);
    let s1 = orient2d(t[1], t[2], p);
    let s2 = orient2d(t[2], t[0], p);
    let has_neg = [s0, s1, s2].contains(&Sign::Negative);
    let has_pos = [s0, s1, s2].contains(&Sign::Positive);
    !(has_neg && has_pos)
}

fn triangle_normal(t: &Triangle) -> [i128; 3] {
    let [p, q, r] = &t.corners;
    cross(q.sub(p), r.sub(p))
}

/// Closed point-in-triangle for a point known to lie in the triangle's plane.
fn coplanar_point_in_triangle(x: &LatticePoint, t: &Triangle) -> bool {
    let k = dominant_axis(triangle_normal(t));
    let tp = t.corners.map(|c| project(&c, k));
    point_in_triangle_2d(project(x, k), tp)
}

pub(crate) fn segment_segment_raw(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let (a, b, c, d) = (&s1.a, &s1.b, &s2.a, &s2.b);
    if !orient3d_raw(a, b, c, d).is_zero() {
        return SegmentIntersection::Disjoint;
    }
    let ab = b.sub(a);
    let nc = cross(ab, c.sub(a));
    let nd = cross(ab, d.sub(a));
    if nc == [0, 0, 0] && nd == [0, 0, 0] {
        // all four on one line: compare parameter intervals along the dominant axis
        let k = dominant_axis(ab);
        let t = |p: &LatticePoint| p.coords()[k];
        let (lo1, hi1) = (t(a).min(t(b)), t(a).max(t(b)));
        let (lo2, hi2) = (t(c).min(t(d)), t(c).max(t(d)));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegmentIntersection::Disjoint,
            std::cmp::Ordering::Equal => SegmentIntersection::SharedEndpointOnly,
            std::cmp::Ordering::Less => SegmentIntersection::CollinearOverlap,
        };
    }
    let normal = if nc != [0, 0, 0] { nc } else { nd };
    let k = dominant_axis(normal);
    let (a2, b2, c2, d2) = (project(a, k), project(b, k), project(c, k), project(d, k));
    let o1 = orient2d(c2, d2, a2);
    let o2 = orient2d(c2, d2, b2);
    let o3 = orient2d(a2, b2, c2);
    let o4 = orient2d(a2, b2, d2);
    if (o1 == o2 && !o1.is_zero()) || (o3 == o4 && !o3.is_zero()) {
        return SegmentIntersection::Disjoint;
    }
    // the supporting lines are distinct, so the intersection is a single point
    let end_of_first = o1.is_zero() || o2.is_zero();
    let end_of_second = o3.is_zero() || o4.is_zero();
    if end_of_first && end_of_second {
        SegmentIntersection::SharedEndpointOnly
    } else {
        SegmentIntersection::CrossingPoint
    }
}

/// Core of [`segment_triangle`]; `shared` must already be validated.
pub(crate) fn segment_triangle_raw(seg: &Segment, tri: &Triangle, shared: &[LatticePoint]) -> Option<Conflict> {
    let [p, q, r] = &tri.corners;
    let (a, b) = (&seg.a, &seg.b);
    let oa = orient3d_raw(p, q, r, a);
    let ob = orient3d_raw(p, q, r, b);
    match (oa, ob) {
        (Sign::Zero, Sign::Zero) => coplanar_segment_triangle(seg, tri, shared),
        (Sign::Zero, _) | (_, Sign::Zero) => {
            let touching = if oa.is_zero() { a } else { b };
            if shared.contains(touching) || !coplanar_point_in_triangle(touching, tri) {
                None
            } else {
                Some(Conflict::TouchAtNonsharedPoint)
            }
        }
        _ if oa == ob => None,
        _ => {
            let s1 = orient3d_raw(a, b, p, q);
            let s2 = orient3d_raw(a, b, q, r);
            let s3 = orient3d_raw(a, b, r, p);
            let s = [s1, s2, s3];
            if s.contains(&Sign::Positive) && s.contains(&Sign::Negative) {
                None
            } else {
                Some(Conflict::TransversalCrossing)
            }
        }
    }
}

fn coplanar_segment_triangle(seg: &Segment, tri: &Triangle, shared: &[LatticePoint]) -> Option<Conflict> {
    let k = dominant_axis(triangle_normal(tri));
    let t2 = tri.corners.map(|c| project(&c, k));
    let (a2, b2) = (project(&seg.a, k), project(&seg.b, k));
    match shared.len() {
        0 => {
            let meets = point_in_triangle_2d(a2, t2)
                || point_in_triangle_2d(b2, t2)
                || (0..3).any(|i| segments_meet_2d(a2, b2, t2[i], t2[(i + 1) % 3]));
            meets.then_some(Conflict::CoplanarOverlap)
        }
        1 => {
            // the segment leaves the shared corner; it conflicts iff it heads into the
            // closed angle of the triangle at that corner
            let (apex, other) = if seg.a == shared[0] { (a2, b2) } else { (b2, a2) };
            let i = tri.corners.iter().position(|c| *c == shared[0]).expect("validated");
            let u = t2[(i + 1) % 3];
            let w = t2[(i + 2) % 3];
            let o = orient2d(apex, u, w);
            let in_cone = orient2d(apex, u, other) != -o && orient2d(apex, other, w) != -o;
            in_cone.then_some(Conflict::CoplanarOverlap)
        }
        _ => None,
    }
}

fn validate_segment(s: &Segment) -> Result<(), GeomError> {
    s.a.check_bounds()?;
    s.b.check_bounds()?;
    if s.a == s.b {
        return Err(GeomError::DegenerateSegment(s.a));
    }
    Ok(())
}

fn validate_triangle(t: &Triangle) -> Result<(), GeomError> {
    for c in &t.corners {
        c.check_bounds()?;
    }
    let [p, q, r] = &t.corners;
    if collinear_raw(p, q, r) {
        return Err(GeomError::DegenerateTriangle(*p, *q, *r));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// public, bound-checked API

/// Sign of `det[b − a; c − a; d − a]`; zero iff the four points are coplanar.
pub fn orient3d(a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint) -> Result<Sign, GeomError> {
    for p in [&a, &b, &c, &d] {
        p.check_bounds()?;
    }
    Ok(orient3d_raw(&a, &b, &c, &d))
}

pub fn collinear(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<bool, GeomError> {
    for p in [&a, &b, &c] {
        p.check_bounds()?;
    }
    Ok(collinear_raw(&a, &b, &c))
}

/// Classifies the intersection of two closed segments.
///
/// `SharedEndpointOnly` means the segments meet in exactly one point which is an
/// endpoint of both; a point that is interior to either one is a `CrossingPoint`.
pub fn segment_segment(s1: Segment, s2: Segment) -> Result<SegmentIntersection, GeomError> {
    validate_segment(&s1)?;
    validate_segment(&s2)?;
    Ok(segment_segment_raw(&s1, &s2))
}

/// Checks that a closed segment meets a closed triangle exactly in the convex hull
/// of `shared`, the vertices the two simplices have in common.
pub fn segment_triangle(seg: Segment, tri: Triangle, shared: &[LatticePoint]) -> Result<Option<Conflict>, GeomError> {
    validate_segment(&seg)?;
    validate_triangle(&tri)?;
    for s in shared {
        if !seg.has_endpoint(s) || !tri.has_corner(s) {
            return Err(GeomError::SharedMismatch(*s));
        }
    }
    let mut sh: Vec<LatticePoint> = shared.to_vec();
    sh.sort();
    sh.dedup();
    Ok(segment_triangle_raw(&seg, &tri, &sh))
}

/// Two closed triangles are compatible when they meet exactly in the convex hull
/// of their common corners.
///
/// Any extreme point of the intersection of two triangles lies on an edge of one
/// of them, so it is enough to test the six edges against the opposite triangle.
pub fn triangles_compatible(t1: Triangle, t2: Triangle, shared: &[LatticePoint]) -> Result<Compatibility, GeomError> {
    validate_triangle(&t1)?;
    validate_triangle(&t2)?;
    for s in shared {
        if !t1.has_corner(s) || !t2.has_corner(s) {
            return Err(GeomError::SharedMismatch(*s));
        }
    }
    Ok(triangles_compatible_raw(&t1, &t2, shared))
}

pub(crate) fn triangles_compatible_raw(t1: &Triangle, t2: &Triangle, shared: &[LatticePoint]) -> Compatibility {
    for (edge_owner, other) in [(t1, t2), (t2, t1)] {
        for e in edge_owner.edges() {
            let mut sh = [LatticePoint::new(0, 0, 0); 2];
            let mut n = 0;
            for s in shared {
                if e.has_endpoint(s) {
                    sh[n] = *s;
                    n += 1;
                }
            }
            if let Some(c) = segment_triangle_raw(&e, other, &sh[..n]) {
                return Compatibility::Violation(c);
            }
        }
    }
    Compatibility::Compatible
}

/// No three points collinear and no four coplanar.
///
/// On failure reports the lexicographically first offending index tuple, where a
/// triple precedes every quadruple that extends it.
pub fn general_position(points: &[LatticePoint]) -> Result<GeneralPosition, GeomError> {
    for p in points {
        p.check_bounds()?;
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(GeomError::DuplicatePoint(w[0]));
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear_raw(&points[i], &points[j], &points[k]) {
                    return Ok(GeneralPosition::CollinearTriple { indices: [i, j, k] });
                }
                for l in k + 1..n {
                    if orient3d_raw(&points[i], &points[j], &points[k], &points[l]).is_zero() {
                        return Ok(GeneralPosition::CoplanarQuad { indices: [i, j, k, l] });
                    }
                }
            }
        }
    }
    Ok(GeneralPosition::Ok)
}
