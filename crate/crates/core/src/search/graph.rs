//! Canonical forms of small multigraphs with loops, by colour refinement
//! and individualization.

/// Adjacency counts of a multigraph; `adj[v][v]` counts loops at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    adj: Vec<Vec<u8>>,
}

impl Multigraph {
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![0u8; vertex_count]; vertex_count];
        for &(a, b) in edges {
            adj[a][b] += 1;
            if a != b {
                adj[b][a] += 1;
            }
        }
        Self { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Adjacency matrix, row-major, under the lexicographically smallest
    /// vertex order among all refinement leaves. Equal codes ⟺ isomorphic.
    pub fn canonical_code(&self) -> Vec<u8> {
        let n = self.adj.len();
        let colours = self.refine(vec![0; n]);
        let mut best: Option<Vec<u8>> = None;
        self.search(colours, &mut best);
        best.unwrap_or_default()
    }

    fn search(&self, colours: Vec<usize>, best: &mut Option<Vec<u8>>) {
        let n = self.adj.len();
        let mut size = vec![0usize; n];
        for &c in &colours {
            size[c] += 1;
        }
        // First non-singleton cell, by colour.
        let Some(cell) = (0..n).find(|&c| size[c] > 1) else {
            let mut order = vec![0; n];
            for (v, &c) in colours.iter().enumerate() {
                order[c] = v;
            }
            let code: Vec<u8> = order
                .iter()
                .flat_map(|&a| order.iter().map(move |&b| self.adj[a][b]))
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        };
        for v in (0..n).filter(|&v| colours[v] == cell) {
            // Individualize v: it keeps the cell's colour, the rest of the
            // cell moves up by one.
            let mut c = colours.clone();
            for (u, cu) in c.iter_mut().enumerate() {
                if *cu > cell || (*cu == cell && u != v) {
                    *cu += 1;
                }
            }
            let c = self.refine(c);
            self.search(c, best);
        }
    }

    /// Equitable refinement. Colours are renumbered `0..k` by sorted
    /// signature, so the result depends only on the isomorphism type of
    /// (graph, colouring).
    fn refine(&self, mut colours: Vec<usize>) -> Vec<usize> {
        let n = self.adj.len();
        loop {
            let mut sigs: Vec<(usize, Vec<(usize, u8)>, usize)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(usize, u8)> = (0..n)
                        .filter(|&u| self.adj[v][u] > 0)
                        .map(|u| (colours[u], self.adj[v][u]))
                        .collect();
                    s.push((usize::MAX, self.adj[v][v]));
                    s.sort_unstable();
                    (colours[v], s, v)
                })
                .collect();
            sigs.sort();
            let mut next = vec![0; n];
            let mut k = 0;
            for i in 0..n {
                if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                    k += 1;
                }
                next[sigs[i].2] = k;
            }
            let before = colours.iter().copied().max().map_or(0, |m| m + 1);
            let stable = k + 1 == before;
            colours = next;
            if stable {
                return colours;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distinguishes_small_graphs() {
        let path = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        let path2 = Multigraph::from_edges(3, &[(2, 0), (0, 1)]);
        let tri = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let theta = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let loops = Multigraph::from_edges(2, &[(0, 1), (0, 0), (1, 1)]);
        let lollipop = Multigraph::from_edges(2, &[(0, 1), (0, 0), (0, 0)]);
        assert_eq!(path.canonical_code(), path2.canonical_code());
        assert_ne!(path.canonical_code(), tri.canonical_code());
        assert_ne!(theta.canonical_code(), loops.canonical_code());
        assert_ne!(loops.canonical_code(), lollipop.canonical_code());
    }

    #[test]
    fn regular_graphs_need_individualization() {
        // Both 2-regular on six vertices.
        let c6 = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let tt = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_ne!(c6.canonical_code(), tt.canonical_code());
    }

    proptest! {
        #[test]
        fn relabeling_preserves_code(
            edges in proptest::collection::vec((0usize..6, 0usize..6), 1..10),
            perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let g = Multigraph::from_edges(6, &edges);
            let moved: Vec<_> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
            let h = Multigraph::from_edges(6, &moved);
            prop_assert_eq!(g.canonical_code(), h.canonical_code());
        }
    }
}
