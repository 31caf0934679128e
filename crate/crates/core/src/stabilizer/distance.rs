//! Minimum-weight logical operators of CSS codes whose check matrix has at
//! most two ones per column.
//!
//! Such a check matrix is the incidence matrix of a graph: one node per
//! check plus a spare node that absorbs columns of weight one (and carries
//! columns of weight zero as loops). Vectors in its kernel are then cycle
//! spaces of subgraphs. A vector is a nontrivial logical exactly when it
//! pairs to one with some co-logical `d_j`, so labelling column `c` with the
//! bit vector `(d_j[c])_j` turns the problem into finding the shortest
//! closed walk with nonzero total label, which is breadth-first search in
//! the `2^k`-fold cover.

use std::collections::VecDeque;

use crate::gf2::{Gf2Matrix, Gf2Vector};

pub(crate) struct VoltageGraph {
    nodes: usize,
    /// `adj[node]`: (column, other end, label).
    adj: Vec<Vec<(usize, usize, u64)>>,
    columns: usize,
    labels: usize,
}

impl VoltageGraph {
    /// `None` when some column of `checks` has weight above two.
    pub(crate) fn new(checks: &Gf2Matrix, cologicals: &[Gf2Vector]) -> Option<Self> {
        let n = checks.col_count();
        let m = checks.row_count();
        assert!(cologicals.len() < 64);
        let spare = m;
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (r, row) in checks.rows().iter().enumerate() {
            for c in row.support() {
                ends[c].push(r);
                if ends[c].len() > 2 {
                    return None;
                }
            }
        }
        let mut adj = vec![Vec::new(); m + 1];
        for (c, e) in ends.iter().enumerate() {
            let label = cologicals
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, d)| acc | (d.get(c) as u64) << j);
            let (a, b) = match e.as_slice() {
                [] => (spare, spare),
                [a] => (*a, spare),
                [a, b] => (*a, *b),
                _ => unreachable!(),
            };
            adj[a].push((c, b, label));
            if a != b {
                adj[b].push((c, a, label));
            }
        }
        Some(Self {
            nodes: m + 1,
            adj,
            columns: n,
            labels: cologicals.len(),
        })
    }

    /// For every nonzero label `s`, a shortest closed walk with total label
    /// `s`, as (length, support of the walk mod 2).
    pub(crate) fn shortest_by_label(&self) -> Vec<Option<(usize, Gf2Vector)>> {
        let classes = 1usize << self.labels;
        let mut best: Vec<Option<(usize, Gf2Vector)>> = vec![None; classes];
        let states = self.nodes * classes;
        let mut dist = vec![usize::MAX; states];
        let mut parent = vec![(usize::MAX, usize::MAX); states];
        let mut queue = VecDeque::new();
        let mut touched = Vec::new();
        for start in 0..self.nodes {
            if self.adj[start].is_empty() {
                continue;
            }
            for &s in &touched {
                dist[s] = usize::MAX;
            }
            touched.clear();
            let root = start * classes;
            dist[root] = 0;
            touched.push(root);
            queue.clear();
            queue.push_back(root);
            // Walks through `start` longer than every current best cannot help.
            let horizon = |best: &[Option<(usize, Gf2Vector)>]| {
                best[1..].iter().map(|b| b.as_ref().map_or(usize::MAX, |b| b.0)).max().unwrap_or(0)
            };
            let mut limit = horizon(&best);
            while let Some(state) = queue.pop_front() {
                let d = dist[state];
                if d >= limit {
                    break;
                }
                let (node, label) = (state / classes, state % classes);
                for &(col, other, l) in &self.adj[node] {
                    let next = other * classes + (label ^ l as usize);
                    if dist[next] != usize::MAX {
                        continue;
                    }
                    dist[next] = d + 1;
                    parent[next] = (state, col);
                    touched.push(next);
                    if other == start && next != root {
                        let s = next % classes;
                        if best[s].as_ref().is_none_or(|b| d + 1 < b.0) {
                            best[s] = Some((d + 1, self.walk(&parent, next, root)));
                            limit = horizon(&best);
                        }
                        continue;
                    }
                    queue.push_back(next);
                }
            }
        }
        best
    }

    fn walk(&self, parent: &[(usize, usize)], mut state: usize, root: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.columns);
        while state != root {
            let (prev, col) = parent[state];
            v.flip(col);
            state = prev;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_graph_distance() {
        // Checks of a 5-cycle repetition-style code: column c joins rows c
        // and c+1; the only co-logical is any single column.
        let n = 5;
        let rows: Vec<Gf2Vector> = (0..n).map(|r| Gf2Vector::from_indices(n, [r, (r + n - 1) % n])).collect();
        let checks = Gf2Matrix::from_rows(n, rows).unwrap();
        let d = Gf2Vector::from_indices(n, [0]);
        let g = VoltageGraph::new(&checks, &[d]).unwrap();
        let best = g.shortest_by_label();
        let (len, w) = best[1].clone().unwrap();
        assert_eq!(len, 5);
        assert_eq!(w, Gf2Vector::ones(n));
    }

    #[test]
    fn weight_three_columns_are_rejected() {
        let checks = Gf2Matrix::from_dense(&[&[1], &[1], &[1]]);
        assert!(VoltageGraph::new(&checks, &[]).is_none());
    }
}
