//! Test-only reference implementations shared by the integration tests.
//!
//! Everything here works on exact rationals and follows the textbook
//! definitions directly: intersections are computed as parameter intervals,
//! containment by barycentric coordinates. Nothing is borrowed from the crate.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use grid_realizer::geom::{LatticePoint, SegmentIntersection};

pub mod surfaces;

pub type Q = BigRational;
pub type V = [Q; 3];

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn v(p: &LatticePoint) -> V {
    let c = p.coords();
    [q(c[0]), q(c[1]), q(c[2])]
}

fn sub(a: &V, b: &V) -> V {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn add(a: &V, b: &V) -> V {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

fn scale(a: &V, t: &Q) -> V {
    [&a[0] * t, &a[1] * t, &a[2] * t]
}

fn dot(a: &V, b: &V) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross(a: &V, b: &V) -> V {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_zero(a: &V) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Determinant of the 4x4 homogeneous matrix with rows (p, 1), by Gaussian
/// elimination. Its sign equals the sign of det[b-a; c-a; d-a].
pub fn orient(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint, d: &LatticePoint) -> i8 {
    let mut m: Vec<Vec<Q>> = [a, b, c, d]
        .iter()
        .map(|p| {
            let mut r: Vec<Q> = v(p).to_vec();
            r.push(Q::one());
            r
        })
        .collect();
    let mut det = Q::one();
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| !m[r][col].is_zero()) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..4 {
            let f = &m[r][col] / &m[col][col];
            let pivot = m[col].clone();
            for (k, p) in pivot.iter().enumerate().skip(col) {
                m[r][k] -= &f * p;
            }
        }
    }
    // rows (p,1) in the order a,b,c,d give -det[b-a; c-a; d-a]
    let s = -det;
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

pub fn collinear(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> bool {
    let (a, b, c) = (v(a), v(b), v(c));
    is_zero(&cross(&sub(&b, &a), &sub(&c, &a)))
}

fn in_unit(t: &Q) -> bool {
    !t.is_negative() && *t <= Q::one()
}

/// Intersection of two closed segments.
pub fn segment_segment(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint, d: &LatticePoint) -> SegmentIntersection {
    let (a, b, c, d) = (v(a), v(b), v(c), v(d));
    let u = sub(&b, &a);
    let w = sub(&d, &c);
    let ac = sub(&c, &a);
    let n = cross(&u, &w);
    if !is_zero(&n) {
        if !dot(&ac, &n).is_zero() {
            return SegmentIntersection::Disjoint;
        }
        // a + t u = c + s w
        let nn = dot(&n, &n);
        let t = dot(&cross(&ac, &w), &n) / &nn;
        let s = dot(&cross(&ac, &u), &n) / &nn;
        if !in_unit(&t) || !in_unit(&s) {
            return SegmentIntersection::Disjoint;
        }
        let end = |x: &Q| x.is_zero() || x.is_one();
        return if end(&t) && end(&s) {
            SegmentIntersection::SharedEndpointOnly
        } else {
            SegmentIntersection::CrossingPoint
        };
    }
    if !is_zero(&cross(&ac, &u)) {
        return SegmentIntersection::Disjoint;
    }
    let uu = dot(&u, &u);
    let tc = dot(&ac, &u) / &uu;
    let td = dot(&sub(&d, &a), &u) / &uu;
    let lo = Q::zero().max(tc.clone().min(td.clone()));
    let hi = Q::one().min(tc.max(td));
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => SegmentIntersection::Disjoint,
        std::cmp::Ordering::Equal => SegmentIntersection::SharedEndpointOnly,
        std::cmp::Ordering::Less => SegmentIntersection::CollinearOverlap,
    }
}

/// Parameters t in [0,1] with a + t(b-a) in the closed triangle pqr, as an
/// interval, or None when the segment misses the triangle.
fn segment_triangle_interval(a: &V, b: &V, tri: &[V; 3]) -> Option<(Q, Q)> {
    let [p, r1, r2] = tri;
    let n = cross(&sub(r1, p), &sub(r2, p));
    let d = sub(b, a);
    let x = |t: &Q| add(a, &scale(&d, t));
    // barycentric coordinate of corner i, up to the positive factor n.n, for
    // points of the plane; affine in the point
    let lambda = |i: usize, y: &V| -> Q {
        let pj = &tri[(i + 1) % 3];
        let pk = &tri[(i + 2) % 3];
        dot(&n, &cross(&sub(pj, y), &sub(pk, y)))
    };
    let h0 = dot(&n, &sub(a, p));
    let hd = dot(&n, &d);
    if !hd.is_zero() {
        let t = -h0 / hd;
        if !in_unit(&t) {
            return None;
        }
        let y = x(&t);
        return (0..3).all(|i| !lambda(i, &y).is_negative()).then(|| (t.clone(), t));
    }
    if !h0.is_zero() {
        return None;
    }
    let (mut lo, mut hi) = (Q::zero(), Q::one());
    let (y0, y1) = (x(&Q::zero()), x(&Q::one()));
    for i in 0..3 {
        let alpha = lambda(i, &y0);
        let beta = lambda(i, &y1) - &alpha;
        // alpha + beta t >= 0
        if beta.is_zero() {
            if alpha.is_negative() {
                return None;
            }
        } else {
            let t = -&alpha / &beta;
            if beta.is_positive() {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn in_hull(x: &V, s: &[V]) -> bool {
    match s.len() {
        0 => false,
        1 => *x == s[0],
        2 => {
            let (e, f) = (sub(&s[1], &s[0]), sub(x, &s[0]));
            is_zero(&cross(&e, &f)) && !dot(&f, &e).is_negative() && dot(&f, &e) <= dot(&e, &e)
        }
        _ => panic!("distinct simplices share at most two points"),
    }
}

/// Whether the segment meets the triangle outside the hull of `shared`.
pub fn segment_triangle_conflict(a: &LatticePoint, b: &LatticePoint, tri: [&LatticePoint; 3], shared: &[LatticePoint]) -> bool {
    let (av, bv) = (v(a), v(b));
    let tv = [v(tri[0]), v(tri[1]), v(tri[2])];
    let Some((t0, t1)) = segment_triangle_interval(&av, &bv, &tv) else {
        return false;
    };
    let sh: Vec<V> = shared.iter().map(v).collect();
    let d = sub(&bv, &av);
    let y0 = add(&av, &scale(&d, &t0));
    let y1 = add(&av, &scale(&d, &t1));
    // both sets are convex, so comparing the two ends is enough
    !(in_hull(&y0, &sh) && in_hull(&y1, &sh))
}

/// Two triangles meet exactly in the hull of their common corners. The
/// intersection is convex and each of its extreme points lies on an edge of one
/// of the triangles, so the edges cover every way it can stick out.
pub fn triangles_compatible(t1: [&LatticePoint; 3], t2: [&LatticePoint; 3]) -> bool {
    let shared: Vec<LatticePoint> = t1.iter().filter(|p| t2.contains(p)).map(|p| **p).collect();
    for (x, y) in [(t1, t2), (t2, t1)] {
        for i in 0..3 {
            let (a, b) = (x[i], x[(i + 1) % 3]);
            let sh: Vec<LatticePoint> = shared.iter().filter(|s| *s == a || *s == b).copied().collect();
            if segment_triangle_conflict(a, b, y, &sh) {
                return false;
            }
        }
    }
    true
}

pub fn general_position(p: &[LatticePoint]) -> bool {
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(&p[i], &p[j], &p[k]) {
                    return false;
                }
                for l in k + 1..n {
                    if orient(&p[i], &p[j], &p[k], &p[l]) == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub type CubeMap = Box<dyn Fn([i64; 3]) -> [i64; 3]>;

/// All 48 symmetries of the cube {0..e}^3, as plain functions on coordinates.
pub fn cube_maps(e: i64) -> Vec<CubeMap> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<CubeMap> = Vec::new();
    for p in perms {
        for mask in 0..8u8 {
            out.push(Box::new(move |c: [i64; 3]| {
                let mut r = [0; 3];
                for i in 0..3 {
                    let x = c[p[i]];
                    r[i] = if mask >> i & 1 == 1 { e - x } else { x };
                }
                r
            }));
        }
    }
    out
}

/// Smallest sorted image of a point set under the cube symmetries.
pub fn orbit_min(set: &[LatticePoint], e: i64) -> Vec<LatticePoint> {
    cube_maps(e)
        .iter()
        .map(|f| {
            let mut img: Vec<LatticePoint> = set.iter().map(|p| LatticePoint::from_coords(f(p.coords()))).collect();
            img.sort();
            img
        })
        .min()
        .unwrap()
}

/// Number of symmetry classes of `s`-subsets of {0..e}^3 (in general position
/// when `gp`), by listing every subset.
pub fn brute_orbits(e: i64, s: usize, gp: bool) -> usize {
    let pts: Vec<LatticePoint> = (0..=e)
        .flat_map(|x| (0..=e).flat_map(move |y| (0..=e).map(move |z| LatticePoint::new(x, y, z))))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut idx: Vec<usize> = (0..s).collect();
    if s > pts.len() {
        return 0;
    }
    loop {
        let set: Vec<LatticePoint> = idx.iter().map(|&i| pts[i]).collect();
        if !gp || general_position(&set) {
            seen.insert(orbit_min(&set, e));
        }
        let mut i = s;
        while i > 0 && idx[i - 1] == pts.len() - s + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return seen.len();
        }
        idx[i - 1] += 1;
        for j in i..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub mod suites {
    use super::*;
    use grid_realizer::geom::{self, Segment, Triangle};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[derive(Default)]
    pub struct Tally {
        pub cases: u64,
        pub mismatches: Vec<String>,
    }

    impl Tally {
        fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
            self.cases += 1;
            if !ok && self.mismatches.len() < 20 {
                self.mismatches.push(what());
            }
        }
    }

    fn lp(c: [i64; 3]) -> LatticePoint {
        LatticePoint::from_coords(c)
    }

    fn common(a: &[LatticePoint], b: &[LatticePoint]) -> Vec<LatticePoint> {
        a.iter().filter(|p| b.contains(p)).copied().collect()
    }

    pub fn check_orient(t: &mut Tally, p: [LatticePoint; 4]) {
        let got = geom::orient3d(p[0], p[1], p[2], p[3]).unwrap().value();
        let want = orient(&p[0], &p[1], &p[2], &p[3]);
        t.check(got == want, || format!("orient3d {p:?}: {got} vs {want}"));
        let got = geom::collinear(p[0], p[1], p[2]).unwrap();
        let want = collinear(&p[0], &p[1], &p[2]);
        t.check(got == want, || format!("collinear {:?}: {got} vs {want}", &p[..3]));
    }

    pub fn check_segments(t: &mut Tally, s: [LatticePoint; 2], r: [LatticePoint; 2]) {
        if s[0] == s[1] || r[0] == r[1] {
            return;
        }
        let got = geom::segment_segment(Segment::new(s[0], s[1]), Segment::new(r[0], r[1])).unwrap();
        let want = segment_segment(&s[0], &s[1], &r[0], &r[1]);
        t.check(got == want, || format!("segment_segment {s:?} {r:?}: {got:?} vs {want:?}"));
    }

    pub fn check_segment_triangle(t: &mut Tally, s: [LatticePoint; 2], tri: [LatticePoint; 3]) {
        if s[0] == s[1] || collinear(&tri[0], &tri[1], &tri[2]) {
            return;
        }
        let shared = common(&s, &tri);
        if shared.len() == 2 {
            // the segment is an edge of the triangle
            return;
        }
        let got = geom::segment_triangle(Segment::new(s[0], s[1]), Triangle::new(tri[0], tri[1], tri[2]), &shared)
            .unwrap()
            .is_some();
        let want = segment_triangle_conflict(&s[0], &s[1], [&tri[0], &tri[1], &tri[2]], &shared);
        t.check(got == want, || format!("segment_triangle {s:?} {tri:?}: {got} vs {want}"));
    }

    pub fn check_triangles(t: &mut Tally, a: [LatticePoint; 3], b: [LatticePoint; 3]) {
        if collinear(&a[0], &a[1], &a[2]) || collinear(&b[0], &b[1], &b[2]) {
            return;
        }
        let shared = common(&a, &b);
        if shared.len() == 3 {
            return;
        }
        let got = geom::triangles_compatible(Triangle::new(a[0], a[1], a[2]), Triangle::new(b[0], b[1], b[2]), &shared)
            .unwrap()
            .is_compatible();
        let want = triangles_compatible([&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]]);
        t.check(got == want, || format!("triangles_compatible {a:?} {b:?}: {got} vs {want}"));
    }

    pub fn check_gp(t: &mut Tally, p: &[LatticePoint]) {
        let mut s = p.to_vec();
        s.sort();
        s.dedup();
        if s.len() < p.len() {
            return;
        }
        let got = geom::general_position(p).unwrap();
        let want = general_position(p);
        let witness_ok = match got {
            geom::GeneralPosition::Ok => true,
            geom::GeneralPosition::CollinearTriple { indices: [i, j, k] } => collinear(&p[i], &p[j], &p[k]),
            geom::GeneralPosition::CoplanarQuad { indices: [i, j, k, l] } => orient(&p[i], &p[j], &p[k], &p[l]) == 0,
        };
        t.check((got == geom::GeneralPosition::Ok) == want && witness_ok, || {
            format!("general_position {p:?}: {got:?} vs {want}")
        });
    }

    /// Random cases over several coordinate ranges: tiny boxes produce many
    /// degenerate configurations, wide ones exercise large magnitudes.
    pub fn random(seed: u64, rounds: u64) -> Tally {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut t = Tally::default();
        let lim = grid_realizer::geom::COORD_LIMIT;
        let ranges = [(0, 2), (-2, 2), (0, 4), (-lim, lim)];
        for r in 0..rounds {
            let (lo, hi) = ranges[(r % ranges.len() as u64) as usize];
            let mut pt = || lp([rng.gen_range(lo..=hi), rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)]);
            let p: [LatticePoint; 6] = std::array::from_fn(|_| pt());
            check_orient(&mut t, [p[0], p[1], p[2], p[3]]);
            check_segments(&mut t, [p[0], p[1]], [p[2], p[3]]);
            // share an endpoint
            check_segments(&mut t, [p[0], p[1]], [p[0], p[2]]);
            check_segment_triangle(&mut t, [p[3], p[4]], [p[0], p[1], p[2]]);
            check_segment_triangle(&mut t, [p[0], p[4]], [p[0], p[1], p[2]]);
            check_triangles(&mut t, [p[0], p[1], p[2]], [p[3], p[4], p[5]]);
            check_triangles(&mut t, [p[0], p[1], p[2]], [p[0], p[4], p[5]]);
            check_triangles(&mut t, [p[0], p[1], p[2]], [p[1], p[0], p[5]]);
            if r % 8 == 0 {
                check_gp(&mut t, &p);
            }
        }
        t
    }

    fn planar_grid() -> Vec<LatticePoint> {
        (0..3).flat_map(|x| (0..3).map(move |y| lp([x, y, 0]))).collect()
    }

    fn pairs(pts: &[LatticePoint]) -> Vec<[LatticePoint; 2]> {
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                out.push([pts[i], pts[j]]);
            }
        }
        out
    }

    fn triples(pts: &[LatticePoint]) -> Vec<[LatticePoint; 3]> {
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if !collinear(&pts[i], &pts[j], &pts[k]) {
                        out.push([pts[i], pts[j], pts[k]]);
                    }
                }
            }
        }
        out
    }

    /// Every segment and triangle pair on small point sets: a 3x3 planar grid
    /// (coplanar and collinear cases with every kind of shared corner), five
    /// points on a line, and the unit cube corners.
    pub fn corners() -> Tally {
        let mut t = Tally::default();
        let line: Vec<LatticePoint> = (0..5).map(|x| lp([x, 0, 0])).collect();
        let cube: Vec<LatticePoint> =
            (0..2).flat_map(|x| (0..2).flat_map(move |y| (0..2).map(move |z| lp([x, y, z])))).collect();
        let mut lifted = planar_grid();
        lifted.push(lp([1, 1, 1]));
        lifted.push(lp([1, 1, -1]));
        for pts in [planar_grid(), line, cube, lifted] {
            let segs = pairs(&pts);
            let tris = triples(&pts);
            for s in &segs {
                for r in &segs {
                    check_segments(&mut t, *s, *r);
                    check_segments(&mut t, *s, [r[1], r[0]]);
                }
                for tri in &tris {
                    check_segment_triangle(&mut t, *s, *tri);
                    check_segment_triangle(&mut t, [s[1], s[0]], *tri);
                }
            }
            for a in &tris {
                for b in &tris {
                    check_triangles(&mut t, *a, *b);
                }
            }
            for q in pts.windows(4) {
                check_orient(&mut t, [q[0], q[1], q[2], q[3]]);
            }
        }
        let lim = grid_realizer::geom::COORD_LIMIT;
        let far = [lp([-lim, -lim, -lim]), lp([lim, lim, lim]), lp([lim, -lim, lim]), lp([-lim, lim, lim]), lp([lim, lim, -lim])];
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    for d in 0..5 {
                        check_orient(&mut t, [far[a], far[b], far[c], far[d]]);
                    }
                }
            }
        }
        check_orient(&mut t, [lp([0, 0, 0]), lp([lim, 1, 0]), lp([lim - 1, 1, 0]), lp([0, 0, 1])]);
        check_segments(&mut t, [lp([-lim, -lim, -lim]), lp([lim, lim, lim])], [lp([-lim, lim, 0]), lp([lim, -lim, 0])]);
        check_gp(&mut t, &[lp([0, 0, 0]), lp([0, 1, 1]), lp([1, 0, 1]), lp([1, 1, 0]), lp([1, 1, 1])]);
        check_gp(&mut t, &planar_grid()[..4]);
        t
    }

    /// Every injective placement of the tetrahedron into {0,1}^3, checker
    /// verdicts at `Any` against pairwise reference compatibility of the facets.
    pub fn tetrahedron_placements() -> Tally {
        use grid_realizer::checker::{check_realization, Embedding, RealizationMode};
        use grid_realizer::complex::tetrahedron;
        let t = tetrahedron();
        let cube: Vec<LatticePoint> =
            (0..2).flat_map(|x| (0..2).flat_map(move |y| (0..2).map(move |z| lp([x, y, z])))).collect();
        let mut tally = Tally::default();
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    for d in 0..8 {
                        let idx = [a, b, c, d];
                        if (0..4).any(|i| (0..i).any(|j| idx[i] == idx[j])) {
                            continue;
                        }
                        let p: Vec<LatticePoint> = idx.iter().map(|&i| cube[i]).collect();
                        let fs = t.facets();
                        let tri = |k: usize| fs[k].map(|u| p[u as usize]);
                        let mut want = (0..4).all(|k| {
                            let f = tri(k);
                            !collinear(&f[0], &f[1], &f[2])
                        });
                        for i in 0..4 {
                            for j in 0..i {
                                let (x, y) = (tri(i), tri(j));
                                want &= triangles_compatible([&x[0], &x[1], &x[2]], [&y[0], &y[1], &y[2]]);
                            }
                        }
                        let r = check_realization(&t, &Embedding::new(p.clone()), RealizationMode::Any).unwrap();
                        tally.check(r.valid == want, || format!("placement {p:?}: checker {} reference {want}", r.valid));
                    }
                }
            }
        }
        tally
    }

    /// Canonical forms are constant on orbits and equal the smallest image.
    pub fn canonical_orbits(seed: u64, cases: u64) -> Tally {
        use grid_realizer::search::{canonical_point_set, GridSpec};
        let mut rng = StdRng::seed_from_u64(seed);
        let mut t = Tally::default();
        for _ in 0..cases {
            let e = rng.gen_range(1..=4);
            let g = GridSpec::new(e).unwrap();
            let size = rng.gen_range(1..=8);
            let mut set: Vec<LatticePoint> = Vec::new();
            while set.len() < size {
                let p = lp([rng.gen_range(0..=e), rng.gen_range(0..=e), rng.gen_range(0..=e)]);
                if !set.contains(&p) {
                    set.push(p);
                }
            }
            let maps = cube_maps(e);
            let h = &maps[rng.gen_range(0..maps.len())];
            let image: Vec<LatticePoint> = set.iter().map(|p| lp(h(p.coords()))).collect();
            let a = canonical_point_set(&set, &g).unwrap();
            let b = canonical_point_set(&image, &g).unwrap();
            let want = orbit_min(&set, e);
            t.check(a == b && a == want, || format!("canonical form of {set:?} at extent {e}"));
        }
        t
    }

    /// Generated general-position sets in {0,1}^3 against the orbit brute force.
    pub fn gp_sets_unit_cube() -> Tally {
        use grid_realizer::search::{generate_gp_sets, GridSpec};
        let g = GridSpec::new(1).unwrap();
        let mut t = Tally::default();
        for s in 0..=4 {
            let sets = generate_gp_sets(&g, s).unwrap();
            let want = brute_orbits(1, s, true);
            t.check(sets.len() == want, || format!("size {s}: {} sets, brute force {want}", sets.len()));
            for set in &sets {
                t.check(general_position(set) && orbit_min(set, 1) == *set, || format!("set {set:?} is not a canonical gp set"));
            }
        }
        t
    }

    /// Exhaust outcomes agree across strategies and worker counts.
    pub fn exhaust_agreement() -> Tally {
        use grid_realizer::checker::RealizationMode;
        use grid_realizer::complex::{tetrahedron, torus7};
        use grid_realizer::search::{realize, Goal, GridSpec, SearchConfig, Strategy};
        let mut t = Tally::default();
        let g = GridSpec::new(1).unwrap();
        for (name, tri) in [("tetrahedron", tetrahedron()), ("torus", torus7())] {
            for mode in RealizationMode::ALL {
                let mut seen = Vec::new();
                for strategy in [Strategy::Fused, Strategy::TwoPhase] {
                    for workers in [1, 4] {
                        let cfg = SearchConfig::new(mode).strategy(strategy).goal(Goal::Exhaust).workers(workers);
                        let o = realize(&tri, &g, &cfg).unwrap();
                        seen.push((o.status, o.stats.solutions, o.stats.complete));
                    }
                }
                t.check(seen.windows(2).all(|w| w[0] == w[1]) && seen[0].2, || format!("{name} {mode}: {seen:?}"));
            }
        }
        t
    }
}

/// Largest subset of {0..e}^3 in general position, over every subset.
pub fn brute_gp_max(e: i64) -> usize {
    let pts: Vec<LatticePoint> = (0..=e)
        .flat_map(|x| (0..=e).flat_map(move |y| (0..=e).map(move |z| LatticePoint::new(x, y, z))))
        .collect();
    assert!(pts.len() <= 20, "only small grids");
    let mut best = 0;
    for mask in 0u32..1 << pts.len() {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let set: Vec<LatticePoint> = (0..pts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
        if general_position(&set) {
            best = k;
        }
    }
    best
}
