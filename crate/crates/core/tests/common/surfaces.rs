//! Brute-force surface enumeration.

use std::collections::BTreeSet;

use grid_realizer::complex::Triangulation;

pub type F = [usize; 3];

pub fn all_triangles(n: usize) -> Vec<F> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Closed connected surface using all `n` vertices: every edge in zero or two
/// facets, every vertex link one cycle, facets connected through edges.
pub fn is_surface(n: usize, fs: &[F]) -> bool {
    let mut deg = vec![vec![0u8; n]; n];
    for f in fs {
        for (a, b) in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
            deg[a][b] += 1;
        }
    }
    if deg.iter().flatten().any(|&d| d != 0 && d != 2) {
        return false;
    }
    for v in 0..n {
        // link edges of v
        let link: Vec<(usize, usize)> = fs
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| {
                let o: Vec<usize> = f.iter().copied().filter(|&u| u != v).collect();
                (o[0], o[1])
            })
            .collect();
        if link.len() < 3 {
            return false;
        }
        // walk the cycle from the first link edge
        let (start, mut cur) = link[0];
        let mut prev_edge = 0;
        let mut steps = 1;
        while cur != start {
            let Some(i) = (0..link.len()).find(|&i| i != prev_edge && (link[i].0 == cur || link[i].1 == cur)) else {
                return false;
            };
            cur = if link[i].0 == cur { link[i].1 } else { link[i].0 };
            prev_edge = i;
            steps += 1;
        }
        if steps != link.len() {
            return false;
        }
    }
    let mut seen = vec![false; fs.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..fs.len() {
            let common = fs[i].iter().filter(|u| fs[j].contains(u)).count();
            if !seen[j] && common == 2 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn image(fs: &[F], p: &[usize]) -> Vec<F> {
    let mut g: Vec<F> = fs
        .iter()
        .map(|f| {
            let mut h = [p[f[0]], p[f[1]], p[f[2]]];
            h.sort();
            h
        })
        .collect();
    g.sort();
    g
}

pub fn canon(fs: &[F], perms: &[Vec<usize>]) -> Vec<F> {
    perms.iter().map(|p| image(fs, p)).min().unwrap()
}

pub fn facets_of(t: &Triangulation) -> Vec<F> {
    t.facets().iter().map(|f| [f[0] as usize, f[1] as usize, f[2] as usize]).collect()
}

/// Isomorphism classes of surfaces on `n` vertices, from every facet subset.
pub fn brute_classes(n: usize) -> BTreeSet<Vec<F>> {
    let tris = all_triangles(n);
    let perms = permutations(n);
    let mut out = BTreeSet::new();
    for mask in 1u64..1 << tris.len() {
        let k = mask.count_ones() as usize;
        // 2E = 3F and every vertex has degree at least 3
        if !k.is_multiple_of(2) || k < n {
            continue;
        }
        let fs: Vec<F> = (0..tris.len()).filter(|&i| mask >> i & 1 == 1).map(|i| tris[i]).collect();
        if is_surface(n, &fs) {
            out.insert(canon(&fs, &perms));
        }
    }
    out
}

/// Number of labeled surfaces on {0..n-1}: grow from the smallest facet,
/// always closing the smallest open edge with a larger facet.
pub fn labeled_count(n: usize) -> u64 {
    fn rec(n: usize, tris: &[F], used: &mut Vec<bool>, fs: &mut Vec<F>, first: usize, count: &mut u64) {
        let mut deg = vec![vec![0u8; n]; n];
        for f in fs.iter() {
            for (a, b) in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
                deg[a][b] += 1;
            }
        }
        let open = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| deg[a][b] == 1);
        let Some((a, b)) = open else {
            if is_surface(n, fs) {
                *count += 1;
            }
            return;
        };
        for i in first + 1..tris.len() {
            let f = tris[i];
            if used[i] || !f.contains(&a) || !f.contains(&b) {
                continue;
            }
            let fits = [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])].iter().all(|&(x, y)| deg[x][y] < 2);
            if !fits {
                continue;
            }
            used[i] = true;
            fs.push(f);
            rec(n, tris, used, fs, first, count);
            fs.pop();
            used[i] = false;
        }
    }
    let tris = all_triangles(n);
    let mut count = 0;
    for first in 0..tris.len() {
        let mut used = vec![false; tris.len()];
        used[first] = true;
        let mut fs = vec![tris[first]];
        rec(n, &tris, &mut used, &mut fs, first, &mut count);
    }
    count
}

