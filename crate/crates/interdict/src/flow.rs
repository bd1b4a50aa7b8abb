//! Maximum s-t flow and global edge connectivity.

use std::collections::VecDeque;

use crate::graph::{EdgeId, FlowNetwork, WeightedGraph};

/// Residual arc store shared by the flow routines.
struct Residual {
    n: usize,
    // arcs come in pairs: 2k is forward, 2k+1 its reverse
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { n, head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, from: usize, to: usize, capacity: i64) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.cap.push(capacity);
        self.adj[from].push(id);
        self.head.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
        id
    }

    /// Edmonds-Karp: shortest augmenting paths until none remain.
    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut pred = vec![usize::MAX; self.n];
            let mut pred_arc = vec![usize::MAX; self.n];
            pred[s] = s;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                if x == t {
                    break;
                }
                for &a in &self.adj[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && pred[y] == usize::MAX {
                        pred[y] = x;
                        pred_arc[y] = a;
                        q.push_back(y);
                    }
                }
            }
            if pred[t] == usize::MAX {
                return total;
            }
            let mut push = i64::MAX;
            let mut x = t;
            while x != s {
                push = push.min(self.cap[pred_arc[x]]);
                x = pred[x];
            }
            let mut x = t;
            while x != s {
                let a = pred_arc[x];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                x = pred[x];
            }
            total += push;
        }
    }

    /// Vertices reachable from `s` in the residual graph.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &a in &self.adj[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Value of a maximum s-t flow under the arc capacities.
pub fn max_flow(net: &FlowNetwork) -> u64 {
    let mut r = Residual::new(net.vertex_count());
    for a in net.arcs() {
        r.add(a.from as usize - 1, a.to as usize - 1, a.capacity as i64);
    }
    r.max_flow(net.source() as usize - 1, net.sink() as usize - 1) as u64
}

/// Global edge connectivity with a witness cut.
///
/// Returns `None` when no edge set can disconnect the graph (fewer than
/// two vertices). A disconnected input yields `Some((0, []))`. Otherwise
/// the smallest `d` such that removing some `d` edges disconnects the
/// graph, together with such a set, found by `n-1` unit-capacity max-flow
/// calls against a fixed root.
pub fn edge_connectivity(g: &WeightedGraph) -> Option<(usize, Vec<EdgeId>)> {
    let n = g.vertex_count();
    if n <= 1 {
        return None;
    }
    if crate::graph::component_count(g) > 1 {
        return Some((0, Vec::new()));
    }
    let mut best: Option<(usize, Vec<EdgeId>)> = None;
    for sink in 1..n {
        let mut r = Residual::new(n);
        for e in g.edges() {
            // one unit of capacity each way
            r.add(e.u as usize - 1, e.v as usize - 1, 1);
            r.add(e.v as usize - 1, e.u as usize - 1, 1);
        }
        let value = r.max_flow(0, sink) as usize;
        if best.as_ref().is_some_and(|(d, _)| *d <= value) {
            continue;
        }
        let seen = r.reachable(0);
        let witness: Vec<EdgeId> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| seen[e.u as usize - 1] != seen[e.v as usize - 1])
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(witness.len(), value);
        best = Some((value, witness));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{component_count, FlowNetwork, WeightedGraph};

    #[test]
    fn single_path_carries_one_unit() {
        let net = FlowNetwork::new(3, vec![(1, 2, 1, 0), (2, 3, 1, 0)], 1, 3).unwrap();
        assert_eq!(max_flow(&net), 1);
    }

    #[test]
    fn disjoint_paths_add_up() {
        let net = FlowNetwork::new(
            4,
            vec![(1, 2, 1, 0), (2, 4, 1, 0), (1, 3, 1, 0), (3, 4, 1, 0)],
            1,
            4,
        )
        .unwrap();
        assert_eq!(max_flow(&net), 2);
    }

    #[test]
    fn bottleneck_limits_flow() {
        let net = FlowNetwork::new(
            4,
            vec![(1, 2, 5, 0), (2, 3, 2, 0), (3, 4, 5, 0)],
            1,
            4,
        )
        .unwrap();
        assert_eq!(max_flow(&net), 2);
    }

    #[test]
    fn cycle_connectivity_is_two() {
        let g = WeightedGraph::unit(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let (d, witness) = edge_connectivity(&g).unwrap();
        assert_eq!(d, 2);
        assert!(component_count(&g.without_edges(&witness)) > 1);
    }

    #[test]
    fn tree_connectivity_is_one() {
        let g = WeightedGraph::unit(4, &[(1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(edge_connectivity(&g).unwrap().0, 1);
    }

    #[test]
    fn complete_four_connectivity_is_three() {
        let g = WeightedGraph::unit(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(edge_connectivity(&g).unwrap().0, 3);
    }

    #[test]
    fn disconnected_input_reports_zero() {
        let g = WeightedGraph::unit(3, &[(1, 2)]).unwrap();
        assert_eq!(edge_connectivity(&g), Some((0, vec![])));
    }

    #[test]
    fn single_vertex_cannot_be_disconnected() {
        let g = WeightedGraph::unit(1, &[]).unwrap();
        assert_eq!(edge_connectivity(&g), None);
    }
}
