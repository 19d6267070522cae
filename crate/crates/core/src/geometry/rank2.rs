use std::collections::VecDeque;

use serde::Serialize;

/// `K_{q+1,q+1}` minus a perfect matching: vertex `i` on the left is joined to every
/// vertex `j ≠ i` on the right.
#[derive(Clone, Debug, Serialize)]
pub struct BipartiteGraph {
    pub side: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn build_rank2_bipartite(q: u32) -> BipartiteGraph {
    let side = q as usize + 1;
    let edges = (0..side).flat_map(|i| (0..side).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    BipartiteGraph { side, edges }
}

impl BipartiteGraph {
    /// Left vertices are `0..side`, right vertices `side..2·side`.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); 2 * self.side];
        for &(i, j) in &self.edges {
            adj[i].push(self.side + j);
            adj[self.side + j].push(i);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let g = build_rank2_bipartite(2);
        assert_eq!(g.edges.len(), 6);
        assert!(g.is_connected());
        let g = build_rank2_bipartite(5);
        assert!(g.is_connected() && g.degrees().iter().all(|&d| d == 5));
        assert!(!build_rank2_bipartite(1).is_connected());
    }
}
