//! Generalized maps: a cellulation encoded by its flags and three
//! fixed-point-free involutions.
//!
//! A flag is a (vertex, edge, face) incidence triple with a chosen side.
//! `alpha[0]` moves to the other end of the edge, `alpha[1]` to the other
//! edge at the same corner, `alpha[2]` to the other face along the same edge
//! end. Vertices, edges and faces are the orbits of `<a1,a2>`, `<a0,a2>` and
//! `<a0,a1>`. Non-orientable surfaces need no extra data, which is why the
//! search uses this rather than signed rotation systems internally.

use std::cmp::Ordering;

use super::{Cellulation, Traversal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMap {
    alpha: Vec<[u32; 3]>,
}

/// Canonical code of a connected map plus the size of its automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: Box<[u8]>,
    pub automorphisms: usize,
}

/// Orbit labelling: `label[flag]` is the orbit index, orbits numbered in
/// order of their smallest flag.
#[derive(Clone, Debug)]
pub struct Orbits {
    pub label: Vec<usize>,
    pub count: usize,
}

impl Orbits {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count];
        for &l in &self.label {
            s[l] += 1;
        }
        s
    }
}

impl GMap {
    /// Wraps raw involutions, checking the G-map axioms.
    pub fn new(alpha: Vec<[u32; 3]>) -> Result<Self, String> {
        let n = alpha.len();
        for (d, a) in alpha.iter().enumerate() {
            for (i, &img) in a.iter().enumerate() {
                let img = img as usize;
                if img >= n {
                    return Err(format!("alpha{i}({d}) out of range"));
                }
                if img == d {
                    return Err(format!("alpha{i} fixes flag {d}"));
                }
                if alpha[img][i] as usize != d {
                    return Err(format!("alpha{i} is not an involution at {d}"));
                }
            }
            let a02 = alpha[a[0] as usize][2];
            let a20 = alpha[a[2] as usize][0];
            if a02 != a20 || a02 as usize == d {
                return Err(format!("alpha0 alpha2 is not a fixed-point-free involution at {d}"));
            }
        }
        Ok(Self { alpha })
    }

    pub(crate) fn from_raw(alpha: Vec<[u32; 3]>) -> Self {
        debug_assert!(Self::new(alpha.clone()).is_ok());
        Self { alpha }
    }

    /// Rebuilds the map from a canonical code.
    pub fn from_code(code: &[u8]) -> Self {
        let alpha = code
            .chunks_exact(3)
            .map(|c| [c[0] as u32, c[1] as u32, c[2] as u32])
            .collect();
        Self { alpha }
    }

    pub fn flag_count(&self) -> usize {
        self.alpha.len()
    }

    #[inline]
    pub fn a(&self, i: usize, d: usize) -> usize {
        self.alpha[d][i] as usize
    }

    /// Swaps the roles of vertices and faces.
    pub fn dual(&self) -> Self {
        Self {
            alpha: self.alpha.iter().map(|&[a0, a1, a2]| [a2, a1, a0]).collect(),
        }
    }

    pub fn orbits(&self, gens: &[usize]) -> Orbits {
        let n = self.alpha.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(d) = stack.pop() {
                for &i in gens {
                    let e = self.a(i, d);
                    if label[e] == usize::MAX {
                        label[e] = count;
                        stack.push(e);
                    }
                }
            }
            count += 1;
        }
        Orbits { label, count }
    }

    pub fn vertices(&self) -> Orbits {
        self.orbits(&[1, 2])
    }

    pub fn edges(&self) -> Orbits {
        self.orbits(&[0, 2])
    }

    pub fn faces(&self) -> Orbits {
        self.orbits(&[0, 1])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 4
    }

    pub fn face_count(&self) -> usize {
        self.faces().count
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn is_connected(&self) -> bool {
        self.alpha.is_empty() || self.orbits(&[0, 1, 2]).count == 1
    }

    /// Orientable iff every involution swaps the two colour classes of a
    /// proper two-colouring of the flags (checked per component).
    pub fn is_orientable(&self) -> bool {
        let n = self.alpha.len();
        let mut colour = vec![u8::MAX; n];
        let mut stack = Vec::new();
        for start in 0..n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            stack.push(start);
            while let Some(d) = stack.pop() {
                for i in 0..3 {
                    let e = self.a(i, d);
                    if colour[e] == u8::MAX {
                        colour[e] = 1 - colour[d];
                        stack.push(e);
                    } else if colour[e] == colour[d] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Canonical code over all rootings with the minimal local invariant.
    /// Requires a connected map with at most 255 flags.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.alpha.len();
        assert!(n <= 255, "canonical forms are limited to 255 flags");
        let vsize = self.vertices();
        let fsize = self.faces();
        let vs = vsize.sizes();
        let fs = fsize.sizes();
        let invariant = |d: usize| {
            (
                vs[vsize.label[d]],
                fs[fsize.label[d]],
                vs[vsize.label[self.a(0, d)]],
                fs[fsize.label[self.a(2, d)]],
            )
        };
        let min_inv = (0..n).map(invariant).min().expect("empty map");

        let mut best: Vec<u8> = Vec::new();
        let mut automorphisms = 0usize;
        let mut label = vec![u8::MAX; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut code: Vec<u8> = Vec::with_capacity(3 * n);
        for root in (0..n).filter(|&d| invariant(d) == min_inv) {
            label.fill(u8::MAX);
            order.clear();
            code.clear();
            label[root] = 0;
            order.push(root);
            let mut next = 1u8;
            let mut state = if best.is_empty() {
                Ordering::Less
            } else {
                Ordering::Equal
            };
            let mut idx = 0;
            let mut aborted = false;
            'bfs: while idx < order.len() {
                let d = order[idx];
                for i in 0..3 {
                    let e = self.a(i, d);
                    if label[e] == u8::MAX {
                        label[e] = next;
                        next += 1;
                        order.push(e);
                    }
                    let c = label[e];
                    if state == Ordering::Equal {
                        match c.cmp(&best[code.len()]) {
                            Ordering::Greater => {
                                aborted = true;
                                break 'bfs;
                            }
                            Ordering::Less => state = Ordering::Less,
                            Ordering::Equal => {}
                        }
                    }
                    code.push(c);
                }
                idx += 1;
            }
            if aborted {
                continue;
            }
            assert_eq!(order.len(), n, "canonical_form requires a connected map");
            if state == Ordering::Less {
                best.clone_from(&code);
                automorphisms = 1;
            } else {
                automorphisms += 1;
            }
        }
        CanonicalForm {
            code: best.into_boxed_slice(),
            automorphisms,
        }
    }

    /// One representative flag per corner, grouped by face. Corners are the
    /// `alpha1` orbits.
    pub fn corners_by_face(&self) -> Vec<Vec<usize>> {
        let faces = self.faces();
        let mut out = vec![Vec::new(); faces.count];
        for d in 0..self.alpha.len() {
            let e = self.a(1, d);
            if d < e {
                out[faces.label[d]].push(d);
            }
        }
        out
    }

    /// Adds an edge inside a face between the corners of flags `a` and `b`,
    /// splitting that face in two. Both flags must lie on the same face.
    pub fn insert_edge(&self, a: usize, b: usize) -> Self {
        let n = self.alpha.len() as u32;
        let (x, xp, y, yp) = (n, n + 1, n + 2, n + 3);
        let a1 = self.a(1, a);
        let same_corner = a == b || a1 == b;
        let before = self.face_count();
        for twisted in [false, true] {
            let mut alpha = self.alpha.clone();
            alpha.extend([[0, 0, xp], [0, 0, x], [0, 0, yp], [0, 0, y]]);
            let mut link = |p: u32, q: u32| {
                alpha[p as usize][1] = q;
                alpha[q as usize][1] = p;
            };
            if same_corner {
                link(a as u32, x);
                link(xp, y);
                link(yp, a1 as u32);
            } else {
                let b1 = self.a(1, b);
                link(a as u32, x);
                link(a1 as u32, xp);
                link(b as u32, y);
                link(b1 as u32, yp);
            }
            let (px, pxp) = if twisted { (yp, y) } else { (y, yp) };
            alpha[x as usize][0] = px;
            alpha[px as usize][0] = x;
            alpha[xp as usize][0] = pxp;
            alpha[pxp as usize][0] = xp;
            let map = Self { alpha };
            if map.face_count() == before + 1 {
                return map;
            }
        }
        unreachable!("corners {a} and {b} do not share a face")
    }

    /// Splits a vertex into two joined by a new edge; the corners of `a` and
    /// `b` (at the same vertex) mark where the rotation is cut.
    pub fn split_vertex(&self, a: usize, b: usize) -> Self {
        self.dual().insert_edge(a, b).dual()
    }

    /// One representative flag per corner, grouped by vertex.
    pub fn corners_by_vertex(&self) -> Vec<Vec<usize>> {
        self.dual().corners_by_face()
    }

    /// Removes the edge containing flag `d`. Only valid when the two sides of
    /// the edge lie in different faces (so the result is again cellular).
    pub fn delete_edge(&self, d: usize) -> Option<Self> {
        let faces = self.faces();
        if faces.label[d] == faces.label[self.a(2, d)] {
            return None;
        }
        let group = [d, self.a(0, d), self.a(2, d), self.a(0, self.a(2, d))];
        let mut alpha = self.alpha.clone();
        for &g in &group {
            let outer = self.a(1, g);
            if group.contains(&outer) {
                continue;
            }
            // Step across the removed edge end (possibly several times for
            // a loop) until we land on a surviving flag.
            let mut q = g;
            let target = loop {
                let r = self.a(1, self.a(2, q));
                if !group.contains(&r) {
                    break r;
                }
                q = r;
            };
            alpha[outer][1] = target as u32;
        }
        Some(Self::compact(alpha, &group))
    }

    /// Slides the end of an edge at flag `d` along the neighbouring edge on
    /// `d`'s side of the corner to that edge's far end. `None` when the
    /// neighbour is the edge itself or the move would change the surface.
    pub fn slide_edge_end(&self, d: usize) -> Option<Self> {
        let d2 = self.a(2, d);
        let group = [d, self.a(0, d), d2, self.a(0, d2)];
        let h = self.a(1, d);
        let k = self.a(1, d2);
        let h0 = self.a(0, h);
        let m = self.a(1, h0);
        let moved = [h, k, h0, m];
        if moved.iter().any(|x| group.contains(x)) || h0 == k || m == k {
            return None;
        }
        let mut alpha = self.alpha.clone();
        for (p, q) in [(h, k), (m, d), (h0, d2)] {
            alpha[p][1] = q as u32;
            alpha[q][1] = p as u32;
        }
        let map = Self::from_raw(alpha);
        (map.is_connected()
            && map.euler_characteristic() == self.euler_characteristic()
            && map.is_orientable() == self.is_orientable())
        .then_some(map)
    }

    /// Contracts the edge containing flag `d`; requires distinct endpoints.
    pub fn contract_edge(&self, d: usize) -> Option<Self> {
        self.dual().delete_edge(d).map(|m| m.dual())
    }

    fn compact(alpha: Vec<[u32; 3]>, removed: &[usize]) -> Self {
        let n = alpha.len();
        let mut remap = vec![u32::MAX; n];
        let mut next = 0u32;
        for (d, slot) in remap.iter_mut().enumerate() {
            if !removed.contains(&d) {
                *slot = next;
                next += 1;
            }
        }
        let alpha = alpha
            .iter()
            .enumerate()
            .filter(|(d, _)| !removed.contains(d))
            .map(|(_, a)| a.map(|x| remap[x as usize]))
            .collect();
        Self::from_raw(alpha)
    }

    /// Cellulation with orbit-order labels.
    pub fn to_cellulation(&self) -> Cellulation {
        let v = self.vertices();
        let e = self.edges();
        let f = self.faces();
        self.to_cellulation_labeled(&v, &e, &f)
    }

    /// Cellulation whose vertex, edge and face ids are the given orbit
    /// labels. Edge direction: tail at the end holding the edge's smallest
    /// flag.
    pub(crate) fn to_cellulation_labeled(&self, v: &Orbits, e: &Orbits, f: &Orbits) -> Cellulation {
        let n = self.alpha.len();
        let mut tail_flag = vec![usize::MAX; e.count];
        for d in 0..n {
            let slot = &mut tail_flag[e.label[d]];
            if *slot == usize::MAX {
                *slot = d;
            }
        }
        let in_tail = |d: usize| {
            let t = tail_flag[e.label[d]];
            d == t || d == self.a(2, t)
        };
        let edges = tail_flag
            .iter()
            .map(|&t| (v.label[t], v.label[self.a(0, t)]))
            .collect();
        let mut start = vec![usize::MAX; f.count];
        for d in 0..n {
            if start[f.label[d]] == usize::MAX {
                start[f.label[d]] = d;
            }
        }
        let faces = start
            .iter()
            .map(|&d0| {
                let mut walk = Vec::new();
                let mut d = d0;
                loop {
                    walk.push(Traversal {
                        edge: e.label[d],
                        forward: in_tail(d),
                    });
                    d = self.a(1, self.a(0, d));
                    if d == d0 {
                        break;
                    }
                }
                walk
            })
            .collect();
        Cellulation::new(v.count, edges, faces)
    }
}

/// Flag structure of a cellulation together with the cell each flag
/// belongs to.
pub(crate) struct FlagLayout {
    pub map: GMap,
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
    pub face: Vec<usize>,
}

/// Builds flags from face walks. Assumes every edge is traversed exactly
/// twice and walks are closed; `None` otherwise.
pub(crate) fn flags_of(c: &Cellulation) -> Option<FlagLayout> {
    // Flag (face, step, s): s = 0 at the traversal's start, 1 at its end.
    let mut offset = Vec::with_capacity(c.faces.len());
    let mut total = 0usize;
    for walk in &c.faces {
        offset.push(total);
        total += 2 * walk.len();
    }
    // Which edge end a flag sits on: false = edge tail, true = edge head.
    let mut uses: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.edges.len()];
    let mut alpha = vec![[u32::MAX; 3]; total];
    let mut vertex = vec![0; total];
    let mut edge = vec![0; total];
    let mut face = vec![0; total];
    for (fi, walk) in c.faces.iter().enumerate() {
        let len = walk.len();
        for (i, t) in walk.iter().enumerate() {
            let d0 = offset[fi] + 2 * i;
            let d1 = d0 + 1;
            let nxt = offset[fi] + 2 * ((i + 1) % len);
            alpha[d0][0] = d1 as u32;
            alpha[d1][0] = d0 as u32;
            alpha[d1][1] = nxt as u32;
            alpha[nxt][1] = d1 as u32;
            let (a, b) = *c.edges.get(t.edge)?;
            let (from, to) = if t.forward { (a, b) } else { (b, a) };
            vertex[d0] = from;
            vertex[d1] = to;
            edge[d0] = t.edge;
            edge[d1] = t.edge;
            face[d0] = fi;
            face[d1] = fi;
            uses[t.edge].push((d0, d1));
            // remember orientation through the pair order: (tail-end flag, head-end flag)
            if !t.forward {
                let last = uses[t.edge].last_mut().unwrap();
                *last = (d1, d0);
            }
        }
    }
    for u in &uses {
        if u.len() != 2 {
            return None;
        }
        let ((t0, h0), (t1, h1)) = (u[0], u[1]);
        alpha[t0][2] = t1 as u32;
        alpha[t1][2] = t0 as u32;
        alpha[h0][2] = h1 as u32;
        alpha[h1][2] = h0 as u32;
    }
    let map = GMap::new(alpha).ok()?;
    Some(FlagLayout {
        map,
        vertex,
        edge,
        face,
    })
}

impl FlagLayout {
    pub(crate) fn labels(labels: &[usize], count: usize) -> Orbits {
        Orbits {
            label: labels.to_vec(),
            count,
        }
    }
}
