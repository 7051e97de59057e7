//! Integer grids `{0..e}³`, their 48 symmetries and orderly generation of point
//! sets up to symmetry.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::geom::{LatticePoint, COORD_LIMIT};

/// The cube `{0, …, extent}³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    extent: i64,
}

impl GridSpec {
    pub fn new(extent: i64) -> Result<Self, SearchError> {
        if !(0..=COORD_LIMIT).contains(&extent) {
            return Err(SearchError::BadExtent(extent));
        }
        Ok(GridSpec { extent })
    }

    pub fn extent(&self) -> i64 {
        self.extent
    }

    /// Number of admissible values per axis.
    pub fn side(&self) -> i64 {
        self.extent + 1
    }

    pub fn point_count(&self) -> u64 {
        (self.side() as u64).pow(3)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.coords().iter().all(|c| (0..=self.extent).contains(c))
    }

    pub fn check(&self, p: &LatticePoint) -> Result<(), SearchError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(SearchError::OutsideGrid { point: *p, extent: self.extent })
        }
    }

    /// All grid points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> {
        let e = self.extent;
        (0..=e).flat_map(move |x| (0..=e).flat_map(move |y| (0..=e).map(move |z| LatticePoint::new(x, y, z))))
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{0..{}}}^3", self.extent)
    }
}

/// A signed axis permutation: coordinate `i` of the image is coordinate
/// `perm[i]` of the input, reflected to `e − x` when `flip[i]` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridSymmetry {
    pub perm: [u8; 3],
    pub flip: [bool; 3],
}

impl GridSymmetry {
    pub const IDENTITY: GridSymmetry = GridSymmetry { perm: [0, 1, 2], flip: [false; 3] };

    pub fn apply(&self, p: &LatticePoint, g: &GridSpec) -> LatticePoint {
        let c = p.coords();
        let mut out = [0; 3];
        for i in 0..3 {
            let v = c[self.perm[i] as usize];
            out[i] = if self.flip[i] { g.extent - v } else { v };
        }
        LatticePoint::from_coords(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GridSymmetry) -> GridSymmetry {
        let mut perm = [0; 3];
        let mut flip = [false; 3];
        for i in 0..3 {
            let j = self.perm[i] as usize;
            perm[i] = other.perm[j];
            flip[i] = self.flip[i] ^ other.flip[j];
        }
        GridSymmetry { perm, flip }
    }

    pub fn inverse(&self) -> GridSymmetry {
        let mut perm = [0; 3];
        let mut flip = [false; 3];
        for i in 0..3 {
            let j = self.perm[i] as usize;
            perm[j] = i as u8;
            flip[j] = self.flip[i];
        }
        GridSymmetry { perm, flip }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// The 48 symmetries of the cube, identity first.
pub fn grid_symmetries() -> Vec<GridSymmetry> {
    const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in PERMS {
        for mask in 0..8u8 {
            out.push(GridSymmetry { perm, flip: [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0] });
        }
    }
    out
}

/// The lexicographically smallest sorted image of `s` under the 48 symmetries.
/// Repeated points are collapsed.
pub fn canonical_point_set(s: &[LatticePoint], g: &GridSpec) -> Result<Vec<LatticePoint>, SearchError> {
    for p in s {
        g.check(p)?;
    }
    let mut best: Option<Vec<LatticePoint>> = None;
    for h in grid_symmetries() {
        let mut img: Vec<LatticePoint> = s.iter().map(|p| h.apply(p, g)).collect();
        img.sort();
        img.dedup();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    Ok(best.unwrap_or_default())
}

/// Number of symmetries fixing the set `s`.
pub fn stabilizer_size(s: &[LatticePoint], g: &GridSpec) -> usize {
    let mut base = s.to_vec();
    base.sort();
    base.dedup();
    grid_symmetries()
        .iter()
        .filter(|h| {
            let mut img: Vec<LatticePoint> = base.iter().map(|p| h.apply(p, g)).collect();
            img.sort();
            img == base
        })
        .count()
}

/// Largest extent the search engines accept; they index every grid point.
pub const SEARCH_MAX_EXTENT: i64 = 31;

/// A grid with indexed points, index order being lexicographic order.
pub(crate) struct Lattice {
    pub spec: GridSpec,
    pub pts: Vec<[i64; 3]>,
    /// `sym[h][i]`: index of the image of point `i` under symmetry `h`.
    pub sym: Vec<Vec<u32>>,
    pub words: usize,
}

impl Lattice {
    pub fn new(spec: GridSpec) -> Result<Self, SearchError> {
        if spec.extent > SEARCH_MAX_EXTENT {
            return Err(SearchError::GridTooLarge(spec.extent));
        }
        let pts: Vec<[i64; 3]> = spec.points().map(|p| p.coords()).collect();
        let lat = Lattice { spec, words: pts.len().div_ceil(64), pts, sym: Vec::new() };
        let sym = grid_symmetries()
            .iter()
            .map(|h| lat.pts.iter().map(|&c| lat.index(&h.apply(&LatticePoint::from_coords(c), &spec))).collect())
            .collect();
        Ok(Lattice { sym, ..lat })
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn index(&self, p: &LatticePoint) -> u32 {
        let s = self.spec.side();
        ((p.x * s + p.y) * s + p.z) as u32
    }

    pub fn point(&self, i: u32) -> LatticePoint {
        LatticePoint::from_coords(self.pts[i as usize])
    }

    /// Checks whether the sorted index set `set` is the smallest sorted image in
    /// its orbit. Returns the stabilizer size when it is.
    pub fn canonical_set(&self, set: &[u32], buf: &mut Vec<u32>) -> Option<usize> {
        let mut stab = 1;
        for h in &self.sym[1..] {
            buf.clear();
            buf.extend(set.iter().map(|&i| h[i as usize]));
            buf.sort_unstable();
            match buf.as_slice().cmp(set) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => stab += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        Some(stab)
    }
}

#[inline]
pub(crate) fn sub(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn cross(u: [i64; 3], v: [i64; 3]) -> [i64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

#[inline]
pub(crate) fn dot(u: [i64; 3], v: [i64; 3]) -> i64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// `det(b − a, c − a, d − a)`; exact in `i64` for coordinates up to
/// [`SEARCH_MAX_EXTENT`].
#[inline]
pub(crate) fn orient(a: [i64; 3], b: [i64; 3], c: [i64; 3], d: [i64; 3]) -> i64 {
    dot(cross(sub(b, a), sub(c, a)), sub(d, a))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Cached bitmasks of grid points on lines and planes through grid points.
pub(crate) struct GpMasks {
    words: usize,
    lines: HashMap<(u32, u32), Box<[u64]>>,
    planes: HashMap<[i64; 4], Box<[u64]>>,
    cached_words: usize,
}

const MASK_CACHE_WORDS: usize = 1 << 23;

impl GpMasks {
    pub fn new(lat: &Lattice) -> Self {
        GpMasks { words: lat.words, lines: HashMap::new(), planes: HashMap::new(), cached_words: 0 }
    }

    fn reserve(&mut self) {
        self.cached_words += self.words;
        if self.cached_words > MASK_CACHE_WORDS {
            self.lines.clear();
            self.planes.clear();
            self.cached_words = self.words;
        }
    }

    /// ORs into `out` every point collinear with `a` and `b`.
    pub fn or_line(&mut self, lat: &Lattice, a: u32, b: u32, out: &mut [u64]) {
        let key = (a.min(b), a.max(b));
        if !self.lines.contains_key(&key) {
            self.reserve();
            let (pa, d) = (lat.pts[a as usize], sub(lat.pts[b as usize], lat.pts[a as usize]));
            let mut m = vec![0u64; self.words].into_boxed_slice();
            for (i, &q) in lat.pts.iter().enumerate() {
                if cross(d, sub(q, pa)) == [0, 0, 0] {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            self.lines.insert(key, m);
        }
        or_into(out, &self.lines[&key]);
    }

    /// ORs into `out` every point coplanar with `a`, `b`, `c`, which must not be
    /// collinear.
    pub fn or_plane(&mut self, lat: &Lattice, a: u32, b: u32, c: u32, out: &mut [u64]) {
        let pa = lat.pts[a as usize];
        let mut n = cross(sub(lat.pts[b as usize], pa), sub(lat.pts[c as usize], pa));
        let g = gcd(gcd(n[0], n[1]), n[2]);
        debug_assert!(g != 0);
        n = [n[0] / g, n[1] / g, n[2] / g];
        if n.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
            n = [-n[0], -n[1], -n[2]];
        }
        let key = [n[0], n[1], n[2], dot(n, pa)];
        if !self.planes.contains_key(&key) {
            self.reserve();
            let mut m = vec![0u64; self.words].into_boxed_slice();
            for (i, &q) in lat.pts.iter().enumerate() {
                if dot(n, q) == key[3] {
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            self.planes.insert(key, m);
        }
        or_into(out, &self.planes[&key]);
    }

    /// ORs into `out` the point `q` and every point that would break general
    /// position together with `q` and the points `placed`.
    pub fn or_blocked(&mut self, lat: &Lattice, placed: &[u32], q: u32, out: &mut [u64]) {
        out[q as usize / 64] |= 1 << (q % 64);
        for (i, &a) in placed.iter().enumerate() {
            self.or_line(lat, a, q, out);
            for &b in &placed[..i] {
                self.or_plane(lat, b, a, q, out);
            }
        }
    }
}

#[inline]
pub(crate) fn or_into(out: &mut [u64], m: &[u64]) {
    for (o, w) in out.iter_mut().zip(m) {
        *o |= *w;
    }
}

/// Indices `>= from` below `len` whose bit in `m` is set when `set` is true,
/// clear otherwise, ascending.
pub(crate) fn free_from_set(m: &[u64], from: u32, len: usize, set: bool) -> impl Iterator<Item = u32> + '_ {
    let flip = if set { !0u64 } else { 0 };
    let len = len as u32;
    let mut w = (from / 64) as usize;
    let mut cur = if w < m.len() { !(m[w] ^ flip) & (!0u64 << (from % 64)) } else { 0 };
    std::iter::from_fn(move || loop {
        if cur != 0 {
            let i = w as u32 * 64 + cur.trailing_zeros();
            cur &= cur - 1;
            return (i < len).then_some(i);
        }
        w += 1;
        if w >= m.len() {
            return None;
        }
        cur = !(m[w] ^ flip);
    })
}

/// Orderly generation of point sets of one grid, one per symmetry orbit.
///
/// A set is canonical when its sorted index list is the smallest among its 48
/// images. Removing the largest point of a canonical set leaves a canonical
/// set: if some image of the smaller set were smaller, that image extended by
/// the image of the removed point would be smaller too. So extending canonical
/// sets by points above their maximum and keeping canonical results reaches
/// every orbit exactly once.
pub(crate) struct SetWalker<'a> {
    pub lat: &'a Lattice,
    pub gp: bool,
    masks: GpMasks,
    /// blocked points per size, `words` each
    blocked: Vec<u64>,
    pub set: Vec<u32>,
    buf: Vec<u32>,
}

impl<'a> SetWalker<'a> {
    pub fn new(lat: &'a Lattice, gp: bool, max_size: usize) -> Self {
        SetWalker {
            lat,
            gp,
            masks: GpMasks::new(lat),
            blocked: vec![0; (max_size + 1) * lat.words],
            set: Vec::with_capacity(max_size),
            buf: Vec::new(),
        }
    }

    fn level(&self, s: usize) -> &[u64] {
        &self.blocked[s * self.lat.words..(s + 1) * self.lat.words]
    }

    /// Candidates for extending the current set, ascending.
    pub fn candidates(&self) -> Vec<u32> {
        let from = self.set.last().map_or(0, |&m| m + 1);
        free_from_set(self.level(self.set.len()), from, self.lat.len(), false).collect()
    }

    /// Pushes `q` if the result is canonical, returning its stabilizer size.
    pub fn push(&mut self, q: u32) -> Option<usize> {
        self.set.push(q);
        let Some(stab) = self.lat.canonical_set(&self.set, &mut self.buf) else {
            self.set.pop();
            return None;
        };
        let s = self.set.len();
        let w = self.lat.words;
        let (lo, hi) = self.blocked.split_at_mut(s * w);
        let next = &mut hi[..w];
        next.copy_from_slice(&lo[(s - 1) * w..]);
        if self.gp {
            self.masks.or_blocked(self.lat, &self.set[..s - 1], q, next);
        } else {
            next[q as usize / 64] |= 1 << (q % 64);
        }
        Some(stab)
    }

    pub fn pop(&mut self) {
        self.set.pop();
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        self.set.iter().map(|&i| self.lat.point(i)).collect()
    }
}

/// Canonical representatives of all point sets of size `s`, pairwise distinct
/// and, when `general_position` is set, in general position. One set per
/// symmetry orbit, in lexicographic order.
pub fn generate_point_sets(g: &GridSpec, s: usize, general_position: bool) -> Result<Vec<Vec<LatticePoint>>, SearchError> {
    let lat = Lattice::new(*g)?;
    let mut out = Vec::new();
    let mut w = SetWalker::new(&lat, general_position, s);
    fn rec(w: &mut SetWalker, s: usize, out: &mut Vec<Vec<LatticePoint>>) {
        if w.set.len() == s {
            out.push(w.points());
            return;
        }
        for q in w.candidates() {
            if w.push(q).is_some() {
                rec(w, s, out);
                w.pop();
            }
        }
    }
    if s <= lat.len() {
        rec(&mut w, s, &mut out);
    }
    Ok(out)
}

/// [`generate_point_sets`] restricted to general position.
pub fn generate_gp_sets(g: &GridSpec, s: usize) -> Result<Vec<Vec<LatticePoint>>, SearchError> {
    generate_point_sets(g, s, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpMax {
    pub size: usize,
    pub witness: Vec<LatticePoint>,
    /// `size` is the true maximum.
    pub exhausted: bool,
    pub nodes: u64,
}

/// Largest subset of the grid in general position, by branch and bound over
/// canonical sets. With `limit`, the search stops at the first set of that
/// size; `exhausted` is then false unless no larger set can exist.
pub fn max_general_position_subset(g: &GridSpec, limit: Option<usize>) -> Result<GpMax, SearchError> {
    let lat = Lattice::new(*g)?;
    let cap = limit.unwrap_or(usize::MAX).min(lat.len());
    let mut w = SetWalker::new(&lat, true, cap);
    let mut best = GpMax { size: 0, witness: Vec::new(), exhausted: true, nodes: 0 };
    fn rec(w: &mut SetWalker, cap: usize, best: &mut GpMax) -> bool {
        best.nodes += 1;
        if w.set.len() > best.size {
            best.size = w.set.len();
            best.witness = w.points();
        }
        if w.set.len() == cap {
            return true;
        }
        let cands = w.candidates();
        for (i, &q) in cands.iter().enumerate() {
            if w.set.len() + cands.len() - i <= best.size {
                break;
            }
            if w.push(q).is_some() {
                let stop = rec(w, cap, best);
                w.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }
    let stopped = rec(&mut w, cap, &mut best);
    best.exhausted = !stopped || cap == lat.len();
    Ok(best)
}
