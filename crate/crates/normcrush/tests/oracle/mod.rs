//! Reference computations written from scratch against the raw gluing table,
//! sharing no code with the library beyond the `Triangulation` accessors.

#![allow(dead_code)]

use normcrush::tri_core::Triangulation;
use std::collections::HashMap;

/// Quad type separating the vertex pair `{a, b}` from its complement.
fn quad_of_pair(a: usize, b: usize) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    if lo == 0 {
        hi - 1
    } else {
        // complement contains 0 and the one vertex outside {0, a, b}
        (1..4).find(|&v| v != lo && v != hi).unwrap() - 1
    }
}

/// Per-tetrahedron coordinate blocks with every entry at most `k` and at
/// most one nonzero quad.
fn local_choices(k: u64) -> Vec<[u64; 7]> {
    let mut out = Vec::new();
    for t in 0..(k + 1).pow(4) {
        let mut tri = [0u64; 4];
        let mut r = t;
        for x in tri.iter_mut() {
            *x = r % (k + 1);
            r /= k + 1;
        }
        let base = [tri[0], tri[1], tri[2], tri[3], 0, 0, 0];
        out.push(base);
        for q in 0..3 {
            for val in 1..=k {
                let mut b = base;
                b[4 + q] = val;
                out.push(b);
            }
        }
    }
    out
}

fn arc_count(block: &[u64; 7], face: usize, corner: usize) -> u64 {
    block[corner] + block[4 + quad_of_pair(face, corner)]
}

struct FacePair {
    a: usize,
    x: usize,
    b: usize,
    /// Image of each vertex of `a` in `b`.
    perm: [usize; 4],
}

fn face_pairs(t: &Triangulation) -> Vec<FacePair> {
    let mut out = Vec::new();
    for a in 0..t.tet_count() {
        for x in 0..4 {
            let Some(g) = t.gluing(a, x) else { continue };
            let perm: [usize; 4] = std::array::from_fn(|i| g.perm.apply(i));
            if (a, x) < (g.tet, perm[x]) {
                out.push(FacePair { a, x, b: g.tet, perm });
            }
        }
    }
    out
}

fn pair_matches(p: &FacePair, ba: &[u64; 7], bb: &[u64; 7]) -> bool {
    (0..4).filter(|&c| c != p.x).all(|c| arc_count(ba, p.x, c) == arc_count(bb, p.perm[p.x], p.perm[c]))
}

/// Counts admissible vectors by trying every combination of local blocks
/// and checking all matching equations only at the end.
pub fn exhaustive_count(t: &Triangulation, k: u64) -> u64 {
    let n = t.tet_count();
    let choices = local_choices(k);
    let pairs = face_pairs(t);
    let mut idx = vec![0usize; n];
    let mut count = 0;
    if n == 0 {
        return 1;
    }
    loop {
        let blocks: Vec<&[u64; 7]> = idx.iter().map(|&i| &choices[i]).collect();
        if pairs.iter().all(|p| pair_matches(p, blocks[p.a], blocks[p.b])) {
            count += 1;
        }
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < choices.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == n {
                return count;
            }
        }
    }
}

/// Same count by a transfer sweep over the tetrahedra, keeping for each
/// partially matched face pair the arc counts seen on its first side.
pub fn transfer_count(t: &Triangulation, k: u64) -> u64 {
    let n = t.tet_count();
    let choices = local_choices(k);
    let pairs = face_pairs(t);
    let open_after = |i: usize| -> Vec<usize> { (0..pairs.len()).filter(|&p| pairs[p].a <= i && i < pairs[p].b).collect() };
    let mut states: HashMap<Vec<[u64; 3]>, u64> = HashMap::new();
    states.insert(Vec::new(), 1);
    let mut open: Vec<usize> = Vec::new();
    for i in 0..n {
        let next_open = open_after(i);
        let mut next: HashMap<Vec<[u64; 3]>, u64> = HashMap::new();
        for (state, &ways) in &states {
            for block in &choices {
                let mut ok = true;
                for p in pairs.iter().filter(|p| p.a == i && p.b == i) {
                    ok &= pair_matches(p, block, block);
                }
                for (slot, &pi) in open.iter().enumerate() {
                    let p = &pairs[pi];
                    if p.b == i {
                        let others: Vec<usize> = (0..4).filter(|&c| c != p.x).collect();
                        for (j, &c) in others.iter().enumerate() {
                            ok &= state[slot][j] == arc_count(block, p.perm[p.x], p.perm[c]);
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let key: Vec<[u64; 3]> = next_open
                    .iter()
                    .map(|&pi| {
                        let p = &pairs[pi];
                        if p.a == i {
                            let others: Vec<usize> = (0..4).filter(|&c| c != p.x).collect();
                            [arc_count(block, p.x, others[0]), arc_count(block, p.x, others[1]), arc_count(block, p.x, others[2])]
                        } else {
                            state[open.iter().position(|&q| q == pi).unwrap()]
                        }
                    })
                    .collect();
                *next.entry(key).or_insert(0) += ways;
            }
        }
        states = next;
        open = next_open;
    }
    states.values().sum()
}

struct Dsu {
    parent: Vec<usize>,
    /// Orientation of each node relative to its parent.
    flip: Vec<bool>,
    /// Set when a class is glued to itself with reversed orientation.
    conflict: bool,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), flip: vec![false; n], conflict: false }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (r, f) = self.find(p);
        self.parent[x] = r;
        self.flip[x] ^= f;
        (r, self.flip[x])
    }

    fn union(&mut self, a: usize, b: usize, odd: bool) {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            if fa ^ fb != odd {
                self.conflict = true;
            }
            return;
        }
        self.parent[ra] = rb;
        self.flip[ra] = fa ^ fb ^ odd;
    }

    fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for (x, slot) in out.iter_mut().enumerate() {
            let (r, _) = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            *slot = id[r];
        }
        (out, next)
    }
}

/// Invariant factors (> 1) and rank of an integer matrix, by elementary
/// row and column operations in i128.
pub fn smith_i128(mut m: Vec<Vec<i128>>) -> (usize, Vec<u64>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut r0 = 0;
    while r0 < rows && r0 < cols {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in r0..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(r0, bi);
        for row in m.iter_mut() {
            row.swap(r0, bj);
        }
        let mut clean = true;
        let p = m[r0][r0];
        for i in r0 + 1..rows {
            let q = m[i][r0] / p;
            if q != 0 {
                for j in r0..cols {
                    m[i][j] = m[i][j].checked_sub(q.checked_mul(m[r0][j]).unwrap()).unwrap();
                }
            }
            clean &= m[i][r0] == 0;
        }
        for j in r0 + 1..cols {
            let q = m[r0][j] / p;
            if q != 0 {
                for i in r0..rows {
                    m[i][j] = m[i][j].checked_sub(q.checked_mul(m[i][r0]).unwrap()).unwrap();
                }
            }
            clean &= m[r0][j] == 0;
        }
        if clean {
            diag.push(p.unsigned_abs() as u64);
            r0 += 1;
        }
    }
    // normalise to a divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    let rank = diag.len();
    (rank, diag.into_iter().filter(|&d| d > 1).collect())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// First homology of the triangulation with every vertex truncated, from
/// the cellular chain complex of the truncated tetrahedra. `None` when some
/// edge is identified with itself in reverse.
pub fn truncated_h1(t: &Triangulation) -> Option<(usize, Vec<u64>)> {
    let n = t.tet_count();
    // 0-cells: point near vertex v on edge vw.
    let pt = |tet: usize, v: usize, w: usize| 12 * tet + 3 * v + if w < v { w } else { w - 1 };
    // 1-cells: 6 shortened edges then 12 truncation arcs per tetrahedron.
    let edges_per_tet = 18;
    let short = |tet: usize, a: usize, b: usize| {
        let (lo, hi) = (a.min(b), a.max(b));
        let e = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].iter().position(|&p| p == (lo, hi)).unwrap();
        edges_per_tet * tet + e
    };
    let arc = |tet: usize, v: usize, x: usize| edges_per_tet * tet + 6 + 3 * v + if x < v { x } else { x - 1 };
    let arc_ends = |v: usize, x: usize| {
        let w: Vec<usize> = (0..4).filter(|&w| w != v && w != x).collect();
        (w[0], w[1])
    };
    let mut points = Dsu::new(12 * n);
    let mut edges = Dsu::new(edges_per_tet * n);
    for tet in 0..n {
        for x in 0..4 {
            let Some(g) = t.gluing(tet, x) else { continue };
            let p = |i: usize| g.perm.apply(i);
            for v in (0..4).filter(|&v| v != x) {
                for w in (0..4).filter(|&w| w != x && w != v) {
                    points.union(pt(tet, v, w), pt(g.tet, p(v), p(w)), false);
                }
                let (w1, w2) = arc_ends(v, x);
                edges.union(arc(tet, v, x), arc(g.tet, p(v), p(x)), p(w1) > p(w2));
            }
            for a in (0..4).filter(|&a| a != x) {
                for b in (a + 1..4).filter(|&b| b != x) {
                    edges.union(short(tet, a, b), short(g.tet, p(a), p(b)), p(a) > p(b));
                }
            }
        }
    }
    if edges.conflict {
        return None;
    }
    let (point_class, n0) = points.classes();
    let (edge_class, n1) = edges.classes();
    let mut flips = vec![false; edges_per_tet * n];
    for (i, f) in flips.iter_mut().enumerate() {
        *f = edges.find(i).1;
    }
    // boundary of an edge class from any member, oriented as its root
    let mut d1 = vec![vec![0i128; n1]; n0];
    let mut seen = vec![false; n1];
    for tet in 0..n {
        let mut ends: Vec<(usize, usize, usize)> = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                ends.push((short(tet, a, b), pt(tet, a, b), pt(tet, b, a)));
            }
        }
        for v in 0..4 {
            for x in (0..4).filter(|&x| x != v) {
                let (w1, w2) = arc_ends(v, x);
                ends.push((arc(tet, v, x), pt(tet, v, w1), pt(tet, v, w2)));
            }
        }
        for (e, from, to) in ends {
            let c = edge_class[e];
            if seen[c] {
                continue;
            }
            seen[c] = true;
            let (from, to) = if flips[e] { (to, from) } else { (from, to) };
            d1[point_class[to]][c] += 1;
            d1[point_class[from]][c] -= 1;
        }
    }
    // 2-cells: one hexagon per face class and one triangle per corner.
    let mut cols: Vec<Vec<i128>> = Vec::new();
    let signed = |e: usize, forward: bool, col: &mut Vec<i128>| {
        let s = if forward ^ flips[e] { 1 } else { -1 };
        col[edge_class[e]] += s;
    };
    for tet in 0..n {
        for x in 0..4 {
            if let Some(g) = t.gluing(tet, x) {
                if (g.tet, g.perm.apply(x)) < (tet, x) {
                    continue;
                }
            }
            let vs: Vec<usize> = (0..4).filter(|&v| v != x).collect();
            let mut col = vec![0i128; n1];
            for i in 0..3 {
                let (a, b) = (vs[i], vs[(i + 1) % 3]);
                signed(short(tet, a, b), a < b, &mut col);
                let (w1, _) = arc_ends(b, x);
                let c = vs[(i + 2) % 3];
                signed(arc(tet, b, x), w1 == a && c != a, &mut col);
            }
            cols.push(col);
        }
        for v in 0..4 {
            let xs: Vec<usize> = (0..4).filter(|&x| x != v).collect();
            let mut col = vec![0i128; n1];
            // the triangle's boundary runs w0 -> w1 -> w2 -> w0 through the
            // arcs lying in the face opposite the missing vertex
            for i in 0..3 {
                let (wa, wb) = (xs[i], xs[(i + 1) % 3]);
                let x = xs[(i + 2) % 3];
                let (w1, _) = arc_ends(v, x);
                signed(arc(tet, v, x), w1 == wa && wb != wa, &mut col);
            }
            cols.push(col);
        }
    }
    let d2: Vec<Vec<i128>> = (0..n1).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let (rank1, _) = smith_i128(d1);
    let (rank2, torsion) = smith_i128(d2);
    Some((n1 - rank1 - rank2, torsion))
}

/// Euler characteristic of the normal surface by counting point classes on
/// edges, arc classes on faces and discs directly.
pub fn naive_surface_chi(t: &Triangulation, coords: &[u64]) -> i64 {
    let n = t.tet_count();
    let block = |tet: usize| -> [u64; 7] { std::array::from_fn(|i| coords[7 * tet + i]) };
    let on_edge = |tet: usize, a: usize, b: usize| -> usize {
        let bl = block(tet);
        let q = quad_of_pair(a, b);
        let crossing: u64 = (0..3).filter(|&k| k != q).map(|k| bl[4 + k]).sum();
        (bl[a] + bl[b] + crossing) as usize
    };
    let mut point_id: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut arc_id: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for tet in 0..n {
        for a in 0..4 {
            for b in a + 1..4 {
                for j in 0..on_edge(tet, a, b) {
                    let id = point_id.len();
                    point_id.insert((tet, a, b, j), id);
                }
            }
        }
        for x in 0..4 {
            for c in (0..4).filter(|&c| c != x) {
                for i in 0..arc_count(&block(tet), x, c) as usize {
                    let id = arc_id.len();
                    arc_id.insert((tet, x, c, i), id);
                }
            }
        }
    }
    let mut pts = Dsu::new(point_id.len());
    let mut arcs = Dsu::new(arc_id.len());
    for tet in 0..n {
        for x in 0..4 {
            let Some(g) = t.gluing(tet, x) else { continue };
            let p = |i: usize| g.perm.apply(i);
            for a in (0..4).filter(|&a| a != x) {
                for b in (a + 1..4).filter(|&b| b != x) {
                    let w = on_edge(tet, a, b);
                    for j in 0..w {
                        let other = if p(a) < p(b) { (g.tet, p(a), p(b), j) } else { (g.tet, p(b), p(a), w - 1 - j) };
                        pts.union(point_id[&(tet, a, b, j)], point_id[&other], false);
                    }
                }
            }
            for c in (0..4).filter(|&c| c != x) {
                for i in 0..arc_count(&block(tet), x, c) as usize {
                    arcs.union(arc_id[&(tet, x, c, i)], arc_id[&(g.tet, p(x), p(c), i)], false);
                }
            }
        }
    }
    let v = pts.classes().1 as i64;
    let e = arcs.classes().1 as i64;
    let f: u64 = coords.iter().sum();
    v - e + f as i64
}
