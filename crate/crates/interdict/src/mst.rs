//! Minimum spanning tree weight via greedy sorted-edge union-find.

use crate::graph::{EdgeId, ExtendedWeight, WeightedGraph};

/// Union-find over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n], components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Weight of a minimum spanning tree; infinite iff the graph is
/// disconnected. Ties are broken by canonical edge order, so the witness
/// tree is deterministic.
pub fn mst_weight(g: &WeightedGraph) -> ExtendedWeight {
    mst(g).0
}

/// MST weight together with the chosen tree edges.
pub fn mst(g: &WeightedGraph) -> (ExtendedWeight, Vec<EdgeId>) {
    let n = g.vertex_count();
    if n == 0 {
        return (ExtendedWeight::Finite(0), Vec::new());
    }
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    // Edge ids are already sorted by endpoints, so a stable sort on weight
    // keeps the lexicographic tie-break.
    order.sort_by_key(|&i| g.edge(i).weight);
    let mut uf = UnionFind::new(n);
    let mut total = 0u64;
    let mut tree = Vec::new();
    for i in order {
        let e = g.edge(i);
        if uf.union(e.u as usize - 1, e.v as usize - 1) {
            total += e.weight;
            tree.push(i);
        }
    }
    if uf.components() > 1 {
        (ExtendedWeight::Infinity, tree)
    } else {
        tree.sort_unstable();
        (ExtendedWeight::Finite(total), tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    #[test]
    fn triangle_with_two_zero_edges_spans_for_free() {
        let g = WeightedGraph::new(3, vec![(1, 2, 0, 1), (1, 3, 0, 1), (2, 3, 1, 1)], None).unwrap();
        assert_eq!(mst_weight(&g), ExtendedWeight::Finite(0));
    }

    #[test]
    fn disconnected_graph_has_infinite_mst() {
        let g = WeightedGraph::unit(2, &[]).unwrap();
        assert_eq!(mst_weight(&g), ExtendedWeight::Infinity);
    }

    #[test]
    fn unit_path_weight() {
        let g = WeightedGraph::unit(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(mst_weight(&g), ExtendedWeight::Finite(2));
    }

    #[test]
    fn heavier_parallel_route_is_skipped() {
        let g = WeightedGraph::new(
            4,
            vec![(1, 2, 1, 1), (2, 3, 4, 1), (3, 4, 1, 1), (1, 4, 1, 1), (1, 3, 9, 1)],
            None,
        )
        .unwrap();
        assert_eq!(mst_weight(&g), ExtendedWeight::Finite(3));
    }
}
